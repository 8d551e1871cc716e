//! Kernel derivations of the helper theorems used by the type checker.

use super::terms::*;
use crate::kernel::build::{self, inst, BuildError};
use crate::kernel::{ProofTree, Sequent, Theory};
use crate::lfol::{logic::*, Expr, Sort};

pub(super) fn sv(n: &str) -> Expr {
    Expr::schematic(n, Sort::Ind)
}

pub(super) fn sfam(n: &str) -> Expr {
    Expr::schematic(n, Sort::family())
}

type Derived = Result<(Sequent, ProofTree), BuildError>;

/// `?a = ?b |- ?b = ?a`
pub fn eq_sym(t: &Theory) -> Derived {
    let (a, b) = (sv("a"), sv("b"));
    let refl = build::by_axiom(t, "eq_refl", inst([("X", a.clone())]))?;
    let ctx = Expr::lam_with("z", Sort::Ind, |z| eq(z, a.clone()));
    let p = build::right_subst_eq(refl, a.clone(), b.clone(), ctx);
    Ok((Sequent::new([eq(a.clone(), b.clone())], [eq(b, a)]), p))
}

/// `?A = ?B, ?t in ?A |- ?t in ?B`
pub fn conversion(_: &Theory) -> Derived {
    let (a, b, x) = (sv("A"), sv("B"), sv("t"));
    let hyp = build::hypothesis(mem(x.clone(), a.clone()));
    let xc = x.clone();
    let ctx = Expr::lam_with("z", Sort::Ind, |z| mem(xc, z));
    let p = build::right_subst_eq(hyp, a.clone(), b.clone(), ctx);
    Ok((
        Sequent::new([eq(a.clone(), b.clone()), mem(x.clone(), a)], [mem(x, b)]),
        p,
    ))
}

/// `subset(?A, ?B), ?t in ?A |- ?t in ?B`
pub fn subset_elim(t: &Theory) -> Derived {
    let (a, b, x) = (sv("A"), sv("B"), sv("t"));
    let def = build::by_axiom(t, "def.subset", inst([("a", a.clone()), ("b", b.clone())]))?;
    let all = build::iff_mp(def, build::hypothesis(subset(a.clone(), b.clone())))?;
    let imp = build::forall_elim(all, x.clone())?;
    let p = build::mp(imp, build::hypothesis(mem(x.clone(), a.clone())))?;
    Ok((
        Sequent::new([subset(a.clone(), b.clone()), mem(x.clone(), a)], [mem(x, b)]),
        p,
    ))
}

/// `|- subset(?A, ?A)`
pub fn subset_refl(t: &Theory) -> Derived {
    let a = sv("A");
    let x = Expr::var("x");
    let body = Expr::lam_with("x", Sort::Ind, |y| implies(mem(y.clone(), a.clone()), mem(y, a.clone())));
    let hyp = build::hypothesis(mem(x.clone(), a.clone()));
    let imp = build::right_implies(hyp, mem(x.clone(), a.clone()), mem(x, a.clone()));
    let all = build::right_forall(imp, body, "x");
    let def = build::by_axiom(t, "def.subset", inst([("a", a.clone()), ("b", a.clone())]))?;
    let p = build::iff_mpr(def, all)?;
    Ok((Sequent::goal(subset(a.clone(), a)), p))
}

/// `subset(?A, ?B), subset(?B, ?C) |- subset(?A, ?C)`
pub fn subset_trans(t: &Theory) -> Derived {
    let (a, b, c) = (sv("A"), sv("B"), sv("C"));
    let x = Expr::var("x");
    let step = |from: &Expr, to: &Expr| {
        build::by_theorem(
            t,
            "SubsetElim",
            inst([("A", from.clone()), ("B", to.clone()), ("t", x.clone())]),
        )
    };
    let ab = step(&a, &b)?;
    let bc = step(&b, &c)?;
    let chain = build::cut(ab, bc, mem(x.clone(), b.clone()));
    let imp = build::right_implies(chain, mem(x.clone(), a.clone()), mem(x.clone(), c.clone()));
    let body = Expr::lam_with("x", Sort::Ind, |y| implies(mem(y.clone(), a.clone()), mem(y, c.clone())));
    let all = build::right_forall(imp, body, "x");
    let def = build::by_axiom(t, "def.subset", inst([("a", a.clone()), ("b", c.clone())]))?;
    let p = build::iff_mpr(def, all)?;
    Ok((
        Sequent::new([subset(a.clone(), b.clone()), subset(b, c.clone())], [subset(a, c)]),
        p,
    ))
}

fn universe_pred(x: &Expr) -> Expr {
    let x = x.clone();
    Expr::lam_with("U", Sort::Ind, |u| and(mem(x, u.clone()), is_universe(u)))
}

/// `|- ?x in universeOf(?x) /\ isUniverse(universeOf(?x))`
pub fn universe_of_spec(t: &Theory) -> Derived {
    let x = sv("x");
    let u = Expr::var("u");
    let pred = universe_pred(&x);
    let xc = x.clone();
    let groth = Expr::lam_with("U", Sort::Ind, |v| and(mem(xc, v.clone()), is_grothendieck(v)));

    let lemma = build::by_theorem(t, "GrothendieckImpliesIsUniverse", inst([("U", u.clone())]))?;
    let both = build::right_and(
        build::hypothesis(mem(x.clone(), u.clone())),
        lemma,
        mem(x.clone(), u.clone()),
        is_universe(u.clone()),
    );
    let ex = build::right_exists(both, pred.clone(), u.clone());
    let opened = build::left_and(ex, mem(x.clone(), u.clone()), is_grothendieck(u.clone()));
    let closed = build::left_exists(opened, groth.clone(), "u");
    let tarski = build::by_axiom(t, "tarski", inst([("X", x.clone())]))?;
    let exists_universe = build::cut(tarski, closed, exists_of(groth));
    let chosen = build::epsilon_intro(exists_universe, pred.clone());

    let eps_term = eps_of(pred);
    let def = build::by_axiom(t, "def.universeOf", inst([("x", x.clone())]))?;
    let flip = build::by_theorem(
        t,
        "EqSym",
        inst([("a", universe_of(x.clone())), ("b", eps_term.clone())]),
    )?;
    let eq_rev = build::cut(def, flip, eq(universe_of(x.clone()), eps_term.clone()));
    let xc = x.clone();
    let ctx = Expr::lam_with("z", Sort::Ind, |z| and(mem(xc, z.clone()), is_universe(z)));
    let rewritten = build::right_subst_eq(chosen, eps_term.clone(), universe_of(x.clone()), ctx);
    let p = build::cut(eq_rev, rewritten, eq(eps_term, universe_of(x.clone())));
    let goal = and(mem(x.clone(), universe_of(x.clone())), is_universe(universe_of(x)));
    Ok((Sequent::goal(goal), p))
}

/// `|- ?x in universeOf(?x)`
pub fn universe_of_contains(t: &Theory) -> Derived {
    let x = sv("x");
    let spec = build::by_theorem(t, "UniverseOfSpec", inst([("x", x.clone())]))?;
    let p = build::and_elim_left(spec)?;
    Ok((Sequent::goal(mem(x.clone(), universe_of(x))), p))
}

/// `|- isUniverse(universeOf(?x))`
pub fn universe_of_is_universe(t: &Theory) -> Derived {
    let x = sv("x");
    let spec = build::by_theorem(t, "UniverseOfSpec", inst([("x", x.clone())]))?;
    let p = build::and_elim_right(spec)?;
    Ok((Sequent::goal(is_universe(universe_of(x))), p))
}

/// `isUniverse(?U), ?x in ?U |- subset(?x, ?U)`
pub fn universe_transitive(t: &Theory) -> Derived {
    let (u, x) = (sv("U"), sv("x"));
    let def = build::by_axiom(t, "def.isUniverse", inst([("U", u.clone())]))?;
    let clauses = build::iff_mp(def, build::hypothesis(is_universe(u.clone())))?;
    let first_two = build::and_elim_left(clauses)?;
    let first = build::and_elim_left(first_two)?;
    let imp = build::forall_elim(first, x.clone())?;
    let parts = build::mp(imp, build::hypothesis(mem(x.clone(), u.clone())))?;
    let p = build::and_elim_left(build::and_elim_left(parts)?)?;
    Ok((
        Sequent::new([is_universe(u.clone()), mem(x.clone(), u.clone())], [subset(x, u)]),
        p,
    ))
}

/// `|- subset(?x, universeOf(?x))`
pub fn universe_cumulative(t: &Theory) -> Derived {
    let x = sv("x");
    let ux = universe_of(x.clone());
    let trans = build::by_theorem(
        t,
        "UniverseTransitive",
        inst([("U", ux.clone()), ("x", x.clone())]),
    )?;
    let is_u = build::by_theorem(t, "UniverseOfIsUniverse", inst([("x", x.clone())]))?;
    let contains = build::by_theorem(t, "UniverseOfContains", inst([("x", x.clone())]))?;
    let p = build::cut(is_u, trans, is_universe(ux.clone()));
    let p = build::cut(contains, p, mem(x.clone(), ux.clone()));
    Ok((Sequent::goal(subset(x, ux)), p))
}

/// `isUniverse(?U) |- ?U in universeOf(?U)`
pub fn t_sort(t: &Theory) -> Derived {
    let u = sv("U");
    let contains = build::by_theorem(t, "UniverseOfContains", inst([("x", u.clone())]))?;
    let goal = Sequent::new([is_universe(u.clone())], [mem(u.clone(), universe_of(u))]);
    Ok((goal.clone(), build::weaken_to(contains, &goal)))
}

/// `subset(?U1, ?U3), subset(?U2, ?U3), isUniverse(?U3), ?T1 in ?U1,
///  forall x. x in ?T1 ==> ?T2(x) in ?U2 |- Pi(?T1, ?T2) in ?U3`
pub fn t_form(t: &Theory) -> Derived {
    let (u1, u2, u3, t1) = (sv("U1"), sv("U2"), sv("U3"), sv("T1"));
    let t2 = sfam("T2");
    let x = Expr::var("x");
    let fam_in = |u: &Expr| {
        let (t1, t2, u) = (t1.clone(), t2.clone(), u.clone());
        forall_in("x", t1, move |y| mem(Expr::app(t2, y), u))
    };
    let hyp_family = fam_in(&u2);

    let closure = build::by_theorem(
        t,
        "UniversePiClosure",
        inst([("U", u3.clone()), ("T1", t1.clone()), ("L", t2.clone())]),
    )?;
    let dom = build::by_theorem(
        t,
        "SubsetElim",
        inst([("A", u1.clone()), ("B", u3.clone()), ("t", t1.clone())]),
    )?;
    let p = build::cut(dom, closure, mem(t1.clone(), u3.clone()));

    let t2x = Expr::app(t2.clone(), x.clone());
    let inst_x = build::forall_elim(build::hypothesis(hyp_family.clone()), x.clone())?;
    let in_u2 = build::mp(inst_x, build::hypothesis(mem(x.clone(), t1.clone())))?;
    let lift = build::by_theorem(
        t,
        "SubsetElim",
        inst([("A", u2.clone()), ("B", u3.clone()), ("t", t2x.clone())]),
    )?;
    let in_u3 = build::cut(in_u2, lift, mem(t2x.clone(), u2.clone()));
    let imp = build::right_implies(in_u3, mem(x.clone(), t1.clone()), mem(t2x, u3.clone()));
    let family_u3 = fam_in(&u3);
    let body = as_forall(&family_u3).expect("universal").clone();
    let all = build::right_forall(imp, body, "x");
    let p = build::cut(all, p, family_u3);

    let goal = Sequent::new(
        [
            subset(u1.clone(), u3.clone()),
            subset(u2.clone(), u3.clone()),
            is_universe(u3.clone()),
            mem(t1.clone(), u1),
            hyp_family,
        ],
        [mem(pi(t1, t2), u3)],
    );
    Ok((goal, p))
}

/// Derivations in registration order: `(name, derivation)`.
pub fn derivations() -> Vec<(&'static str, fn(&Theory) -> Derived)> {
    vec![
        ("EqSym", eq_sym),
        ("Conversion", conversion),
        ("SubsetElim", subset_elim),
        ("SubsetRefl", subset_refl),
        ("SubsetTrans", subset_trans),
        ("UniverseOfSpec", universe_of_spec),
        ("UniverseOfContains", universe_of_contains),
        ("UniverseOfIsUniverse", universe_of_is_universe),
        ("UniverseTransitive", universe_transitive),
        ("UniverseCumulative", universe_cumulative),
        ("T_sort", t_sort),
        ("T_form", t_form),
    ]
}
