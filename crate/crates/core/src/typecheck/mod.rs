//! Bidirectional type checking that produces kernel proofs of membership and
//! inclusion judgments.

mod context;

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

pub use context::{Assumption, Context, Judgment, JudgmentKind};

use crate::embedding::{self, as_abs, as_app, as_pi, get_universe, level_join, EmbedError, UniverseLevel};
use crate::kernel::build::{self, inst, BuildError};
use crate::kernel::{ProofTree, Sequent, Theory};
use crate::lfol::{alpha_eq, beta_normalize, logic, sym, Expr, Node, Sort, Symbol};
use crate::set_theory::terms::{is_universe, subset as subset_of};

/// Maximum number of context inclusions chained in one subset proof.
pub const INCLUSION_DEPTH: usize = 8;

#[derive(Debug, Clone, Error)]
pub enum TypeError {
    #[error("{} is checked against {}, which is not a dependent product", crate::syntax::print_expr(.term), crate::syntax::print_expr(.ty))]
    NotAProductType { term: Expr, ty: Expr },
    #[error("domains differ: {} and {}", crate::syntax::print_expr(.expected), crate::syntax::print_expr(.found))]
    DomainMismatch { expected: Expr, found: Expr },
    #[error("argument {} does not check against domain {}: {source}", crate::syntax::print_expr(.arg), crate::syntax::print_expr(.domain))]
    DomainCheckFailure {
        arg: Expr,
        domain: Expr,
        #[source]
        source: Box<TypeError>,
    },
    #[error("cannot show {} <= {}; tried {tried:?}", crate::syntax::print_expr(.sub), crate::syntax::print_expr(.sup))]
    SubsetFailure {
        sub: Expr,
        sup: Expr,
        tried: Vec<&'static str>,
    },
    #[error("no type can be inferred for {}", crate::syntax::print_expr(.0))]
    InferFailure(Expr),
    #[error("no universe is available for the atom {}", crate::syntax::print_expr(.0))]
    UnboundAtomWithoutUniverse(Expr),
    #[error("{} is used as a universe without an isUniverse assumption", crate::syntax::print_expr(.0))]
    MissingUniverse(Expr),
    #[error("the family {} has a type depending on its argument: {}", crate::syntax::print_expr(.family), crate::syntax::print_expr(.ty))]
    DependentUniverse { family: Expr, ty: Expr },
    #[error("malformed judgment: {0}")]
    Malformed(String),
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error(transparent)]
    Build(#[from] BuildError),
}

impl TypeError {
    /// Short machine-readable tag for the error kind.
    pub fn reason(&self) -> &'static str {
        match self {
            TypeError::NotAProductType { .. } => "NotAProductType",
            TypeError::DomainMismatch { .. } => "DomainMismatch",
            TypeError::DomainCheckFailure { .. } => "DomainCheckFailure",
            TypeError::SubsetFailure { .. } => "SubsetFailure",
            TypeError::InferFailure(_) => "InferFailure",
            TypeError::UnboundAtomWithoutUniverse(_) => "UnboundAtomWithoutUniverse",
            TypeError::MissingUniverse(_) => "MissingUniverse",
            TypeError::DependentUniverse { .. } => "DependentUniverse",
            TypeError::Malformed(_) => "Malformed",
            TypeError::Embed(EmbedError::BaseMismatch { .. }) => "BaseMismatch",
            TypeError::Embed(_) => "LemmaError",
            TypeError::Build(_) => "BuildError",
        }
    }
}

type Result<T> = std::result::Result<T, TypeError>;

/// Outcome of inference: the proof, the inferred type and its level when
/// the type is a universe expression.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub proof: ProofTree,
    pub inferred: Expr,
    pub level: Option<UniverseLevel>,
}

/// Cut `phi`, proved by `proof`, from the left of `target`. When an earlier
/// cut already removed `phi` (equal pivots), `target` is returned unchanged.
fn discharge(proof: ProofTree, target: ProofTree, phi: Expr) -> ProofTree {
    if target.conclusion.left.iter().any(|f| alpha_eq(f, &phi)) {
        build::cut(proof, target, phi)
    } else {
        target
    }
}

/// True iff the two domains are alpha-equal after beta-normalization.
pub fn domains_coincide(d: &Expr, d2: &Expr) -> bool {
    alpha_eq(&beta_normalize(d), &beta_normalize(d2))
}

/// Proof of `ctx |- goal` for a membership or inclusion judgment.
pub fn prove(theory: &Theory, j: &Judgment) -> Result<ProofTree> {
    let mut tc = Typechecker::for_judgment(theory, j);
    let p = match j.kind {
        JudgmentKind::Membership => tc.check(&j.context, &j.subject, &j.ty)?,
        JudgmentKind::Inclusion => tc.subset(&j.context, &j.subject, &j.ty)?,
    };
    Ok(build::weaken_to(p, &j.sequent()))
}

/// Proof of `ctx |- e in ty`.
pub fn check(theory: &Theory, ctx: &Context, e: &Expr, ty: &Expr) -> Result<ProofTree> {
    prove(theory, &Judgment::membership(ctx.clone(), e.clone(), ty.clone()))
}

/// Inferred type of `e` with a proof of `ctx |- e in T`.
pub fn infer(theory: &Theory, ctx: &Context, e: &Expr) -> Result<(Expr, ProofTree)> {
    let r = infer_full(theory, ctx, e)?;
    Ok((r.inferred, r.proof))
}

pub fn infer_full(theory: &Theory, ctx: &Context, e: &Expr) -> Result<CheckResult> {
    let probe = Judgment::membership(ctx.clone(), e.clone(), e.clone());
    let mut tc = Typechecker::for_judgment(theory, &probe);
    let (ty, p) = tc.infer(ctx, e)?;
    let goal = Sequent::new(ctx.formulas(), [logic::mem(e.clone(), ty.clone())]);
    let level = UniverseLevel::of(&ty);
    Ok(CheckResult {
        proof: build::weaken_to(p, &goal),
        level: (level.height > 0).then_some(level),
        inferred: ty,
    })
}

/// Proof of `ctx |- subset(t1, t2)`.
pub fn subset(theory: &Theory, ctx: &Context, t1: &Expr, t2: &Expr) -> Result<ProofTree> {
    prove(theory, &Judgment::inclusion(ctx.clone(), t1.clone(), t2.clone()))
}

/// The proof-producing checker. Fresh names are drawn deterministically,
/// avoiding every name seen in the judgment and every name issued before.
pub struct Typechecker<'t> {
    theory: &'t Theory,
    used: BTreeSet<Symbol>,
}

impl<'t> Typechecker<'t> {
    pub fn for_judgment(theory: &'t Theory, j: &Judgment) -> Typechecker<'t> {
        let mut used: BTreeSet<Symbol> = theory.signature().iter().map(|(n, _)| n.clone()).collect();
        for f in j.context.formulas().iter().chain([&j.subject, &j.ty]) {
            used.extend(f.free_vars());
        }
        Typechecker { theory, used }
    }

    fn fresh(&mut self, hint: &str) -> Symbol {
        let base: String = {
            let h = hint.trim_start_matches('\u{1}');
            let h = h.split('#').next().unwrap_or("");
            if h.is_empty() || h == "_" { "x".to_string() } else { h.to_string() }
        };
        let mut candidate = base.clone();
        let mut i = 1;
        while self.used.contains(candidate.as_str()) {
            candidate = format!("{base}_{i}");
            i += 1;
        }
        let s = sym(&candidate);
        self.used.insert(s.clone());
        s
    }

    fn lemma(&self, name: &str, pairs: &[(&str, Expr)]) -> Result<ProofTree> {
        Ok(embedding::lemma_instance(self.theory, name, inst(pairs.iter().cloned()))?)
    }

    /// Open `family` at a fresh variable: `(x, nf(family x))`.
    fn open(&mut self, family: &Expr) -> (Symbol, Expr) {
        let hint = family.as_lam().map(|(h, _, _)| h.to_string()).unwrap_or_default();
        let x = self.fresh(&hint);
        let body = beta_normalize(&Expr::app(family.clone(), Expr::var(&x)));
        (x, body)
    }

    /// From `D, x in dom |- phi(x)` derive `D |- forall x. x in dom ==> phi(x)`.
    fn generalize(&self, p: ProofTree, x: &Symbol, dom: &Expr, phi: Expr) -> (ProofTree, Expr) {
        let xv = Expr::var(x);
        let hyp = logic::mem(xv, dom.clone());
        let imp_formula = logic::implies(hyp.clone(), phi.clone());
        let body = imp_formula.bind_free(x, Sort::Ind);
        let imp = build::right_implies(p, hyp, phi);
        let all = build::right_forall(imp, body.clone(), x);
        (all, logic::forall_of(body))
    }

    pub fn check(&mut self, ctx: &Context, e: &Expr, expected: &Expr) -> Result<ProofTree> {
        if let Some((d, body)) = as_abs(e) {
            let Some((d2, l2)) = as_pi(expected) else {
                return Err(TypeError::NotAProductType {
                    term: e.clone(),
                    ty: expected.clone(),
                });
            };
            if !domains_coincide(d, d2) {
                return Err(TypeError::DomainMismatch {
                    expected: d2.clone(),
                    found: d.clone(),
                });
            }
            let (x, bx) = self.open(body);
            let lx = beta_normalize(&Expr::app(l2.clone(), Expr::var(&x)));
            let inner = ctx.with(Assumption::Member(Expr::var(&x), d.clone()));
            let p = self.check(&inner, &bx, &lx)?;
            return self.abs_intro(p, &x, d, body, l2, bx, lx);
        }
        let (inferred, p) = self.infer(ctx, e)?;
        if alpha_eq(&inferred, expected) {
            return Ok(p);
        }
        let q = self.subset(ctx, &inferred, expected)?;
        let elim = self.lemma(
            "SubsetElim",
            &[("A", inferred.clone()), ("B", expected.clone()), ("t", e.clone())],
        )?;
        let r = discharge(q, elim, subset_of(inferred.clone(), expected.clone()));
        Ok(discharge(p, r, logic::mem(e.clone(), inferred)))
    }

    /// Conclude `abs(d)(body) in Pi(d)(family)` from a proof of `body(x) in family(x)`.
    #[allow(clippy::too_many_arguments)]
    fn abs_intro(
        &self,
        p: ProofTree,
        x: &Symbol,
        d: &Expr,
        body: &Expr,
        family: &Expr,
        bx: Expr,
        lx: Expr,
    ) -> Result<ProofTree> {
        let (all, hyp) = self.generalize(p, x, d, logic::mem(bx, lx));
        let lemma = self.lemma(
            "T_abs",
            &[("T1", d.clone()), ("B", body.clone()), ("L", family.clone())],
        )?;
        Ok(discharge(all, lemma, hyp))
    }

    pub fn infer(&mut self, ctx: &Context, e: &Expr) -> Result<(Expr, ProofTree)> {
        if let Some((f, arg)) = as_app(e) {
            let (fty, pf) = self.infer(ctx, f)?;
            let Some((dom, fam)) = as_pi(&fty) else {
                return Err(TypeError::NotAProductType {
                    term: f.clone(),
                    ty: fty.clone(),
                });
            };
            let (dom, fam) = (dom.clone(), fam.clone());
            let parg = self.check(ctx, arg, &dom).map_err(|source| TypeError::DomainCheckFailure {
                arg: arg.clone(),
                domain: dom.clone(),
                source: Box::new(source),
            })?;
            let ty = beta_normalize(&Expr::app(fam.clone(), arg.clone()));
            let lemma = self.lemma(
                "T_app",
                &[("f", f.clone()), ("u", arg.clone()), ("T1", dom.clone()), ("L", fam.clone())],
            )?;
            let p = discharge(pf, lemma, logic::mem(f.clone(), fty.clone()));
            let p = discharge(parg, p, logic::mem(arg.clone(), dom));
            return Ok((ty, p));
        }
        if let Some((d, body)) = as_abs(e) {
            let (x, bx) = self.open(body);
            let inner = ctx.with(Assumption::Member(Expr::var(&x), d.clone()));
            let (bty, pb) = self.infer(&inner, &bx)?;
            let family = bty.bind_free(&x, Sort::Ind);
            let ty = embedding::mk_pi(d.clone(), family.clone())?;
            let p = self.abs_intro(pb, &x, d, body, &family, bx, bty)?;
            return Ok((ty, p));
        }
        if let Some((t1, fam)) = as_pi(e) {
            return self.infer_pi(ctx, t1, fam);
        }
        if let Some(ty) = ctx.lookup_member(e) {
            return Ok((ty.clone(), build::hypothesis(logic::mem(e.clone(), ty.clone()))));
        }
        let level = UniverseLevel::of(e);
        if level.height > 0 || ctx.has_universe(e) {
            let is_u = self.universe_proof(ctx, e)?;
            let sort = self.lemma("T_sort", &[("U", e.clone())])?;
            let ty = get_universe(1, e.clone());
            return Ok((ty, discharge(is_u, sort, is_universe(e.clone()))));
        }
        if is_atom(e) {
            let contains = self
                .lemma("UniverseOfContains", &[("x", e.clone())])
                .map_err(|_| TypeError::UnboundAtomWithoutUniverse(e.clone()))?;
            return Ok((get_universe(1, e.clone()), contains));
        }
        Err(TypeError::InferFailure(e.clone()))
    }

    /// Proof of `isUniverse(u)`, from the context or because `u = universeOf(v)`.
    fn universe_proof(&self, ctx: &Context, u: &Expr) -> Result<ProofTree> {
        if ctx.has_universe(u) {
            return Ok(build::hypothesis(is_universe(u.clone())));
        }
        match u.const_app(crate::set_theory::names::UNIVERSE_OF, 1) {
            Some(args) => self.lemma("UniverseOfIsUniverse", &[("x", args[0].clone())]),
            None => Err(TypeError::MissingUniverse(u.clone())),
        }
    }

    fn infer_pi(&mut self, ctx: &Context, t1: &Expr, fam: &Expr) -> Result<(Expr, ProofTree)> {
        let (u1, p1) = self.infer(ctx, t1)?;
        let (x, body) = self.open(fam);
        let inner = ctx.with(Assumption::Member(Expr::var(&x), t1.clone()));
        let (u2, p2) = self.infer(&inner, &body)?;
        if u2.occurs_free(&x) {
            return Err(TypeError::DependentUniverse {
                family: fam.clone(),
                ty: u2,
            });
        }
        let joined = level_join(&UniverseLevel::of(&u1), &UniverseLevel::of(&u2))?;
        let u3 = joined.denotation();
        let (fam_proof, fam_hyp) = self.generalize(p2, &x, t1, logic::mem(body, u2.clone()));
        let form = self.lemma(
            "T_form",
            &[
                ("U1", u1.clone()),
                ("U2", u2.clone()),
                ("U3", u3.clone()),
                ("T1", t1.clone()),
                ("T2", fam.clone()),
            ],
        )?;
        let s1 = self.cumulative(&u1, &u3)?;
        let s2 = self.cumulative(&u2, &u3)?;
        let is_u = self.universe_proof(ctx, &u3)?;
        let mut p = discharge(fam_proof, form, fam_hyp);
        p = discharge(p1, p, logic::mem(t1.clone(), u1.clone()));
        p = discharge(s1, p, subset_of(u1.clone(), u3.clone()));
        p = discharge(s2, p, subset_of(u2, u3.clone()));
        p = discharge(is_u, p, is_universe(u3.clone()));
        Ok((u3, p))
    }

    /// `subset(a, b)` for `a = universeOf^m(c)`, `b = universeOf^n(c)`, `m <= n`.
    fn cumulative(&self, a: &Expr, b: &Expr) -> Result<ProofTree> {
        let (la, lb) = (UniverseLevel::of(a), UniverseLevel::of(b));
        if !alpha_eq(&la.base, &lb.base) || la.height > lb.height {
            return Err(TypeError::SubsetFailure {
                sub: a.clone(),
                sup: b.clone(),
                tried: vec!["cumulativity"],
            });
        }
        if la.height == lb.height {
            return self.lemma("SubsetRefl", &[("A", a.clone())]);
        }
        let mut steps = Vec::new();
        let mut chain = vec![a.clone()];
        for h in la.height..lb.height {
            let x = get_universe(h, la.base.clone());
            steps.push(self.lemma("UniverseCumulative", &[("x", x)])?);
            chain.push(get_universe(h + 1, la.base.clone()));
        }
        self.transitive(chain, steps)
    }

    /// Glue proofs of `chain[i] <= chain[i+1]` into `chain[0] <= chain[last]`.
    fn transitive(&self, chain: Vec<Expr>, steps: Vec<ProofTree>) -> Result<ProofTree> {
        let mut steps = steps.into_iter();
        let mut acc = steps.next().expect("at least one step");
        for (i, step) in steps.enumerate() {
            let (first, mid, next) = (&chain[0], &chain[i + 1], &chain[i + 2]);
            let trans = self.lemma(
                "SubsetTrans",
                &[("A", first.clone()), ("B", mid.clone()), ("C", next.clone())],
            )?;
            let t = discharge(step, trans, subset_of(mid.clone(), next.clone()));
            acc = discharge(acc, t, subset_of(first.clone(), mid.clone()));
        }
        Ok(acc)
    }

    pub fn subset(&mut self, ctx: &Context, t1: &Expr, t2: &Expr) -> Result<ProofTree> {
        let mut tried = vec!["context"];
        if let Some(path) = inclusion_path(ctx, t1, t2) {
            let steps = path
                .windows(2)
                .map(|w| build::hypothesis(subset_of(w[0].clone(), w[1].clone())))
                .collect();
            return self.transitive(path, steps);
        }
        tried.push("reflexivity");
        if alpha_eq(t1, t2) {
            return self.lemma("SubsetRefl", &[("A", t1.clone())]);
        }
        tried.push("cumulativity");
        let (l1, l2) = (UniverseLevel::of(t1), UniverseLevel::of(t2));
        if alpha_eq(&l1.base, &l2.base) && l1.height < l2.height {
            return self.cumulative(t1, t2);
        }
        tried.push("covariance");
        if let (Some((d, l)), Some((d2, lb))) = (as_pi(t1), as_pi(t2)) {
            if domains_coincide(d, d2) {
                let (x, lx) = self.open(l);
                let lbx = beta_normalize(&Expr::app(lb.clone(), Expr::var(&x)));
                let inner = ctx.with(Assumption::Member(Expr::var(&x), d.clone()));
                let q = self.subset(&inner, &lx, &lbx)?;
                let (all, hyp) = self.generalize(q, &x, d, subset_of(lx, lbx));
                let lemma = self.lemma(
                    "PiSubtyping",
                    &[("T1", d.clone()), ("T1b", d2.clone()), ("L", l.clone()), ("Lb", lb.clone())],
                )?;
                let refl = build::by_axiom(self.theory, "eq_refl", inst([("X", d.clone())]))?;
                let p = discharge(all, lemma, hyp);
                return Ok(discharge(refl, p, logic::eq(d.clone(), d2.clone())));
            }
        }
        Err(TypeError::SubsetFailure {
            sub: t1.clone(),
            sup: t2.clone(),
            tried,
        })
    }
}

fn is_atom(e: &Expr) -> bool {
    matches!(e.node(), Node::Free(_, Sort::Ind) | Node::Const(_, Sort::Ind))
}

/// Shortest chain `t1 <= .. <= t2` through context inclusions, most recent first.
fn inclusion_path(ctx: &Context, t1: &Expr, t2: &Expr) -> Option<Vec<Expr>> {
    let edges: Vec<(&Expr, &Expr)> = ctx.inclusions().collect();
    let mut queue = VecDeque::from([vec![t1.clone()]]);
    let mut seen = vec![t1.clone()];
    while let Some(path) = queue.pop_front() {
        if path.len() > INCLUSION_DEPTH {
            continue;
        }
        let last = path.last().expect("non-empty path");
        for (a, b) in &edges {
            if !alpha_eq(a, last) {
                continue;
            }
            let mut next = path.clone();
            next.push((*b).clone());
            if alpha_eq(b, t2) {
                return Some(next);
            }
            if seen.iter().any(|s| alpha_eq(s, b)) {
                continue;
            }
            seen.push((*b).clone());
            queue.push_back(next);
        }
    }
    None
}
