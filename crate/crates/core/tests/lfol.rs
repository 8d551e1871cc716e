mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use settype::lfol::{alpha_eq, beta_normalize, is_beta_normal, logic, sort_of, Expr, LfolError, Signature, Sort};
use settype::set_theory::bootstrap;
use settype::syntax::{parse_expr_in, print_expr, Scope};

fn term(seed: u64, size: u32, prop: bool) -> Expr {
    common::random_term(&mut ChaCha8Rng::seed_from_u64(seed), size, 0, prop)
}

#[test]
fn sort_of_membership() {
    let sig = Signature::logical();
    let mem = sig.constant("in").unwrap();
    assert_eq!(
        sort_of(&mem, &sig).unwrap(),
        Sort::curried(&[Sort::Ind, Sort::Ind], Sort::Prop)
    );
}

#[test]
fn sort_of_identity_and_quantifier() {
    let sig = Signature::logical();
    let id = Expr::lam("x", Sort::Ind, Expr::bound(0));
    assert_eq!(sort_of(&id, &sig).unwrap(), Sort::family());
    let all = logic::forall_of(Expr::lam("x", Sort::Ind, logic::top()));
    assert_eq!(sort_of(&all, &sig).unwrap(), Sort::Prop);
}

#[test]
fn sort_errors() {
    let sig = Signature::logical();
    let bad = Expr::app(logic::top(), Expr::var("a"));
    assert!(matches!(sort_of(&bad, &sig), Err(LfolError::NotAFunction(_))));
    let wrong_arg = logic::not(Expr::var("a"));
    assert!(matches!(sort_of(&wrong_arg, &sig), Err(LfolError::SortMismatch { .. })));
    let unknown = Expr::constant("mystery", Sort::Ind);
    assert!(matches!(sort_of(&unknown, &sig), Err(LfolError::UnknownConstant(n)) if n == "mystery"));
}

#[test]
fn signature_rejects_redeclaration() {
    let mut sig = Signature::logical();
    assert!(matches!(sig.declare("in", Sort::Prop), Err(LfolError::DuplicateConstant(_))));
}

#[test]
fn substitute_examples() {
    let f = Expr::free("f", Sort::family());
    let x = Expr::var("x");
    let c = Expr::var("c");
    let e = Expr::app(f.clone(), x.clone());
    assert_eq!(e.substitute(&x, &c).unwrap(), Expr::app(f, c));

    // The replacement mentions a free `y`; the binder also named `y` must not capture it.
    let y = Expr::var("y");
    let under = Expr::lam("y", Sort::Ind, logic::mem(Expr::bound(0), x.clone()));
    let replaced = under.substitute(&x, &y).unwrap();
    let want = Expr::lam("w", Sort::Ind, logic::mem(Expr::bound(0), y.clone()));
    assert!(alpha_eq(&replaced, &want));
    assert!(replaced.occurs_free("y"));
    assert!(!alpha_eq(&replaced, &Expr::lam("y", Sort::Ind, logic::mem(Expr::bound(0), Expr::bound(0)))));

    let mis = Expr::var("x").substitute(&x, &logic::top());
    assert!(matches!(mis, Err(LfolError::SortMismatch { .. })));
}

#[test]
fn schema_instantiation_then_normalize() {
    let p = Expr::schematic("P", Sort::predicate());
    let t = Expr::var("t");
    let a = Expr::var("A");
    let e = Expr::app(p.clone(), t.clone());
    let pred = Expr::lam("x", Sort::Ind, logic::mem(Expr::bound(0), a.clone()));
    let out = beta_normalize(&e.substitute(&p, &pred).unwrap());
    assert_eq!(out, logic::mem(t, a));
}

#[test]
fn beta_examples() {
    let c = Expr::var("c");
    let id = Expr::lam("x", Sort::Ind, Expr::bound(0));
    assert_eq!(beta_normalize(&Expr::app(id, c.clone())), c);
    assert_eq!(beta_normalize(&c), c);
    let k = Expr::lam("x", Sort::Ind, Expr::lam("y", Sort::Ind, Expr::bound(1)));
    let a = Expr::var("a");
    let b = Expr::var("b");
    assert_eq!(beta_normalize(&Expr::apps(k, [a.clone(), b])), a);
}

#[test]
fn alpha_examples() {
    let a = Expr::var("A");
    assert!(alpha_eq(
        &Expr::lam("x", Sort::Ind, Expr::bound(0)),
        &Expr::lam("x", Sort::Ind, Expr::bound(0))
    ));
    assert!(alpha_eq(
        &Expr::lam("x", Sort::Ind, logic::mem(Expr::bound(0), a.clone())),
        &Expr::lam("y", Sort::Ind, logic::mem(Expr::bound(0), a))
    ));
    assert!(!alpha_eq(
        &Expr::lam("x", Sort::Ind, Expr::bound(0)),
        &Expr::lam("x", Sort::Ind, Expr::var("c"))
    ));
}

#[test]
fn eta_is_not_admitted() {
    let f = Expr::free("f", Sort::family());
    let expanded = Expr::lam("x", Sort::Ind, Expr::app(f.clone(), Expr::bound(0)));
    assert!(!alpha_eq(&beta_normalize(&expanded), &f));
}

fn round_trip_scope(sig: &Signature) -> Scope<'_> {
    let mut scope = Scope::new(sig);
    for v in ["a", "b", "c"] {
        scope.vars.insert(v.to_string(), Sort::Ind);
    }
    scope.vars.insert("f".to_string(), Sort::family());
    scope
}

proptest! {
    #[test]
    fn normalization_preserves_sort(seed in any::<u64>(), size in 0u32..5, prop in any::<bool>()) {
        let e = term(seed, size, prop);
        prop_assert_eq!(beta_normalize(&e).sort().unwrap(), e.sort().unwrap());
    }

    #[test]
    fn normalization_is_idempotent(seed in any::<u64>(), size in 0u32..5, prop in any::<bool>()) {
        let once = beta_normalize(&term(seed, size, prop));
        prop_assert!(is_beta_normal(&once));
        prop_assert_eq!(beta_normalize(&once), once);
    }

    #[test]
    fn substitution_commutes_with_normalization(seed in any::<u64>(), rseed in any::<u64>(), size in 0u32..5) {
        let e = term(seed, size, true);
        let r = term(rseed, 2, false);
        let x = Expr::var("a");
        let lhs = beta_normalize(&e.substitute(&x, &r).unwrap());
        let rhs = beta_normalize(&beta_normalize(&e).substitute(&x, &r).unwrap());
        prop_assert!(alpha_eq(&lhs, &rhs));
    }

    #[test]
    fn alpha_eq_is_an_equivalence(s1 in 0u64..40, s2 in 0u64..40, s3 in 0u64..40) {
        let (a, b, c) = (term(s1, 1, false), term(s2, 1, false), term(s3, 1, false));
        prop_assert!(alpha_eq(&a, &a));
        prop_assert_eq!(alpha_eq(&a, &b), alpha_eq(&b, &a));
        if alpha_eq(&a, &b) && alpha_eq(&b, &c) {
            prop_assert!(alpha_eq(&a, &c));
        }
    }

    #[test]
    fn binder_names_are_invisible(seed in any::<u64>(), size in 0u32..5) {
        let e = term(seed, size, true);
        let renamed = rename_binders(&e);
        prop_assert!(alpha_eq(&e, &renamed));
        prop_assert_eq!(e, renamed);
    }

    #[test]
    fn printing_round_trips(seed in any::<u64>(), size in 0u32..5, prop in any::<bool>()) {
        let th = bootstrap();
        let scope = round_trip_scope(th.signature());
        let e = term(seed, size, prop);
        let printed = print_expr(&e);
        let (back, _) = parse_expr_in(&printed, &scope).map_err(|err| TestCaseError::fail(format!("{printed}: {err}")))?;
        prop_assert!(alpha_eq(&e, &back), "{} reparsed differently", printed);
    }
}

fn rename_binders(e: &Expr) -> Expr {
    use settype::lfol::Node;
    match e.node() {
        Node::App(f, a) => Expr::app(rename_binders(f), rename_binders(a)),
        Node::Lam(h, s, b) => Expr::lam(&format!("{h}_renamed"), s.clone(), rename_binders(b)),
        _ => e.clone(),
    }
}
