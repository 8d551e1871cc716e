//! Untrusted helpers that assemble proof trees with the conclusions the
//! checker expects. Everything here is re-validated by [`super::check_proof`].

use thiserror::Error;

use super::sequent::{minus, union, with};
use super::{Instantiation, ProofTree, Rule, Sequent, Theory};
use crate::lfol::{beta_normalize, logic, sym, Expr, Sort};

#[derive(Debug, Clone, Error)]
pub enum BuildError {
    #[error("no axiom or theorem named `{0}`")]
    UnknownName(String),
    #[error("unexpected proof shape: {0}")]
    Shape(String),
}

fn node(rule: Rule, left: Vec<Expr>, right: Vec<Expr>, premises: Vec<ProofTree>) -> ProofTree {
    ProofTree::new(rule, Sequent::new(left, right), premises)
}

fn inst_of(body: &Expr, t: &Expr) -> Expr {
    beta_normalize(&Expr::app(body.clone(), t.clone()))
}

/// `phi |- phi`
pub fn hypothesis(phi: Expr) -> ProofTree {
    node(Rule::Hypothesis { phi: phi.clone() }, vec![phi.clone()], vec![phi], vec![])
}

/// `left, phi |- phi`
pub fn hypothesis_in(left: &[Expr], phi: Expr) -> ProofTree {
    node(
        Rule::Hypothesis { phi: phi.clone() },
        with(left, &[&phi]),
        vec![phi],
        vec![],
    )
}

pub fn weaken(p: ProofTree, left: &[Expr], right: &[Expr]) -> ProofTree {
    let l = union(&p.conclusion.left, left);
    let r = union(&p.conclusion.right, right);
    node(Rule::Weakening, l, r, vec![p])
}

/// Weaken to exactly `target`; returns `p` itself when nothing changes.
pub fn weaken_to(p: ProofTree, target: &Sequent) -> ProofTree {
    if p.conclusion.same_as(target) {
        return p;
    }
    ProofTree::new(Rule::Weakening, target.clone(), vec![p])
}

pub fn restate(p: ProofTree, target: Sequent) -> ProofTree {
    ProofTree::new(Rule::Restate, target, vec![p])
}

pub fn cut(p0: ProofTree, p1: ProofTree, phi: Expr) -> ProofTree {
    let l = union(&p0.conclusion.left, &minus(&p1.conclusion.left, &[&phi]));
    let r = union(&minus(&p0.conclusion.right, &[&phi]), &p1.conclusion.right);
    node(Rule::Cut { phi }, l, r, vec![p0, p1])
}

pub fn left_and(p: ProofTree, phi: Expr, psi: Expr) -> ProofTree {
    let both = logic::and(phi.clone(), psi.clone());
    let l = with(&minus(&p.conclusion.left, &[&phi, &psi]), &[&both]);
    let r = p.conclusion.right.clone();
    node(Rule::LeftAnd { phi, psi }, l, r, vec![p])
}

pub fn right_and(p0: ProofTree, p1: ProofTree, phi: Expr, psi: Expr) -> ProofTree {
    let both = logic::and(phi.clone(), psi.clone());
    let l = union(&p0.conclusion.left, &p1.conclusion.left);
    let r = with(
        &union(&minus(&p0.conclusion.right, &[&phi]), &minus(&p1.conclusion.right, &[&psi])),
        &[&both],
    );
    node(Rule::RightAnd { phi, psi }, l, r, vec![p0, p1])
}

pub fn left_or(p0: ProofTree, p1: ProofTree, phi: Expr, psi: Expr) -> ProofTree {
    let either = logic::or(phi.clone(), psi.clone());
    let l = with(
        &union(&minus(&p0.conclusion.left, &[&phi]), &minus(&p1.conclusion.left, &[&psi])),
        &[&either],
    );
    let r = union(&p0.conclusion.right, &p1.conclusion.right);
    node(Rule::LeftOr { phi, psi }, l, r, vec![p0, p1])
}

pub fn right_or(p: ProofTree, phi: Expr, psi: Expr) -> ProofTree {
    let either = logic::or(phi.clone(), psi.clone());
    let l = p.conclusion.left.clone();
    let r = with(&minus(&p.conclusion.right, &[&phi, &psi]), &[&either]);
    node(Rule::RightOr { phi, psi }, l, r, vec![p])
}

pub fn left_implies(p0: ProofTree, p1: ProofTree, phi: Expr, psi: Expr) -> ProofTree {
    let imp = logic::implies(phi.clone(), psi.clone());
    let l = with(&union(&p0.conclusion.left, &minus(&p1.conclusion.left, &[&psi])), &[&imp]);
    let r = union(&minus(&p0.conclusion.right, &[&phi]), &p1.conclusion.right);
    node(Rule::LeftImplies { phi, psi }, l, r, vec![p0, p1])
}

pub fn right_implies(p: ProofTree, phi: Expr, psi: Expr) -> ProofTree {
    let imp = logic::implies(phi.clone(), psi.clone());
    let l = minus(&p.conclusion.left, &[&phi]);
    let r = with(&minus(&p.conclusion.right, &[&psi]), &[&imp]);
    node(Rule::RightImplies { phi, psi }, l, r, vec![p])
}

pub fn left_iff(p: ProofTree, phi: Expr, psi: Expr) -> ProofTree {
    let fwd = logic::implies(phi.clone(), psi.clone());
    let bwd = logic::implies(psi.clone(), phi.clone());
    let iff = logic::iff(phi.clone(), psi.clone());
    let l = with(&minus(&p.conclusion.left, &[&fwd, &bwd]), &[&iff]);
    let r = p.conclusion.right.clone();
    node(Rule::LeftIff { phi, psi }, l, r, vec![p])
}

pub fn right_iff(p0: ProofTree, p1: ProofTree, phi: Expr, psi: Expr) -> ProofTree {
    let fwd = logic::implies(phi.clone(), psi.clone());
    let bwd = logic::implies(psi.clone(), phi.clone());
    let iff = logic::iff(phi.clone(), psi.clone());
    let l = union(&p0.conclusion.left, &p1.conclusion.left);
    let r = with(
        &union(&minus(&p0.conclusion.right, &[&fwd]), &minus(&p1.conclusion.right, &[&bwd])),
        &[&iff],
    );
    node(Rule::RightIff { phi, psi }, l, r, vec![p0, p1])
}

pub fn left_not(p: ProofTree, phi: Expr) -> ProofTree {
    let l = with(&p.conclusion.left, &[&logic::not(phi.clone())]);
    let r = minus(&p.conclusion.right, &[&phi]);
    node(Rule::LeftNot { phi }, l, r, vec![p])
}

pub fn right_not(p: ProofTree, phi: Expr) -> ProofTree {
    let l = minus(&p.conclusion.left, &[&phi]);
    let r = with(&p.conclusion.right, &[&logic::not(phi.clone())]);
    node(Rule::RightNot { phi }, l, r, vec![p])
}

pub fn left_forall(p: ProofTree, body: Expr, term: Expr) -> ProofTree {
    let inst = inst_of(&body, &term);
    let all = logic::forall_of(body.clone());
    let l = with(&minus(&p.conclusion.left, &[&inst]), &[&all]);
    let r = p.conclusion.right.clone();
    node(Rule::LeftForall { body, term }, l, r, vec![p])
}

pub fn right_forall(p: ProofTree, body: Expr, eigen: &str) -> ProofTree {
    let inst = inst_of(&body, &Expr::var(eigen));
    let all = logic::forall_of(body.clone());
    let l = p.conclusion.left.clone();
    let r = with(&minus(&p.conclusion.right, &[&inst]), &[&all]);
    node(Rule::RightForall { body, eigen: sym(eigen) }, l, r, vec![p])
}

pub fn left_exists(p: ProofTree, body: Expr, eigen: &str) -> ProofTree {
    let inst = inst_of(&body, &Expr::var(eigen));
    let ex = logic::exists_of(body.clone());
    let l = with(&minus(&p.conclusion.left, &[&inst]), &[&ex]);
    let r = p.conclusion.right.clone();
    node(Rule::LeftExists { body, eigen: sym(eigen) }, l, r, vec![p])
}

pub fn right_exists(p: ProofTree, body: Expr, term: Expr) -> ProofTree {
    let inst = inst_of(&body, &term);
    let ex = logic::exists_of(body.clone());
    let l = p.conclusion.left.clone();
    let r = with(&minus(&p.conclusion.right, &[&inst]), &[&ex]);
    node(Rule::RightExists { body, term }, l, r, vec![p])
}

pub fn left_subst_eq(p: ProofTree, lhs: Expr, rhs: Expr, ctx: Expr) -> ProofTree {
    let from = inst_of(&ctx, &lhs);
    let to = inst_of(&ctx, &rhs);
    let eq = logic::eq(lhs.clone(), rhs.clone());
    let l = with(&minus(&p.conclusion.left, &[&from]), &[&eq, &to]);
    let r = p.conclusion.right.clone();
    node(Rule::LeftSubstEq { lhs, rhs, ctx }, l, r, vec![p])
}

pub fn right_subst_eq(p: ProofTree, lhs: Expr, rhs: Expr, ctx: Expr) -> ProofTree {
    let from = inst_of(&ctx, &lhs);
    let to = inst_of(&ctx, &rhs);
    let eq = logic::eq(lhs.clone(), rhs.clone());
    let l = with(&p.conclusion.left, &[&eq]);
    let r = with(&minus(&p.conclusion.right, &[&from]), &[&to]);
    node(Rule::RightSubstEq { lhs, rhs, ctx }, l, r, vec![p])
}

pub fn epsilon_intro(p: ProofTree, body: Expr) -> ProofTree {
    let ex = logic::exists_of(body.clone());
    let chosen = inst_of(&body, &logic::eps_of(body.clone()));
    let l = p.conclusion.left.clone();
    let r = with(&minus(&p.conclusion.right, &[&ex]), &[&chosen]);
    node(Rule::EpsilonIntro { body }, l, r, vec![p])
}

pub fn inst_schema(p: ProofTree, inst: Instantiation) -> ProofTree {
    let target = p.conclusion.instantiate(&inst);
    ProofTree::new(Rule::InstSchema { inst }, target, vec![p])
}

pub fn by_axiom(theory: &Theory, name: &str, inst: Instantiation) -> Result<ProofTree, BuildError> {
    let schema = theory
        .axiom(name)
        .ok_or_else(|| BuildError::UnknownName(name.to_string()))?;
    let target = schema.sequent.instantiate(&inst);
    Ok(ProofTree::new(Rule::ByAxiom { name: sym(name), inst }, target, vec![]))
}

pub fn by_theorem(theory: &Theory, name: &str, inst: Instantiation) -> Result<ProofTree, BuildError> {
    let entry = theory
        .theorem(name)
        .ok_or_else(|| BuildError::UnknownName(name.to_string()))?;
    let target = entry.schema.sequent.instantiate(&inst);
    Ok(ProofTree::new(Rule::ByTheorem { name: sym(name), inst }, target, vec![]))
}

/// Build an instantiation from `(name, expr)` pairs.
pub fn inst<'a>(pairs: impl IntoIterator<Item = (&'a str, Expr)>) -> Instantiation {
    pairs.into_iter().map(|(n, e)| (sym(n), e)).collect()
}

fn sole_right(p: &ProofTree) -> Result<&Expr, BuildError> {
    match p.conclusion.right.as_slice() {
        [phi] => Ok(phi),
        other => Err(BuildError::Shape(format!(
            "expected one formula on the right, found {}",
            other.len()
        ))),
    }
}

/// From `G |- phi ==> psi` and `D |- phi` derive `G, D |- psi`.
pub fn mp(imp: ProofTree, arg: ProofTree) -> Result<ProofTree, BuildError> {
    let f = sole_right(&imp)?.clone();
    let (phi, psi) = logic::as_implies(&f)
        .map(|(a, b)| (a.clone(), b.clone()))
        .ok_or_else(|| BuildError::Shape("expected an implication".into()))?;
    let step = left_implies(arg, hypothesis(psi.clone()), phi, psi);
    Ok(cut(imp, step, f))
}

/// From `G |- forall body` derive `G |- body(t)`.
pub fn forall_elim(p: ProofTree, term: Expr) -> Result<ProofTree, BuildError> {
    let f = sole_right(&p)?.clone();
    let body = logic::as_forall(&f)
        .cloned()
        .ok_or_else(|| BuildError::Shape("expected a universal formula".into()))?;
    let step = left_forall(hypothesis(inst_of(&body, &term)), body, term);
    Ok(cut(p, step, f))
}

fn and_parts(p: &ProofTree) -> Result<(Expr, Expr, Expr), BuildError> {
    let f = sole_right(p)?.clone();
    let (a, b) = logic::as_and(&f)
        .map(|(a, b)| (a.clone(), b.clone()))
        .ok_or_else(|| BuildError::Shape("expected a conjunction".into()))?;
    Ok((f, a, b))
}

pub fn and_elim_left(p: ProofTree) -> Result<ProofTree, BuildError> {
    let (f, a, b) = and_parts(&p)?;
    let step = left_and(hypothesis_in(&[b.clone()], a.clone()), a, b);
    Ok(cut(p, step, f))
}

pub fn and_elim_right(p: ProofTree) -> Result<ProofTree, BuildError> {
    let (f, a, b) = and_parts(&p)?;
    let step = left_and(hypothesis_in(&[a.clone()], b.clone()), a, b);
    Ok(cut(p, step, f))
}

fn iff_parts(p: &ProofTree) -> Result<(Expr, Expr, Expr), BuildError> {
    let f = sole_right(p)?.clone();
    let (a, b) = logic::as_binary(&f, logic::IFF)
        .map(|(a, b)| (a.clone(), b.clone()))
        .ok_or_else(|| BuildError::Shape("expected a biconditional".into()))?;
    Ok((f, a, b))
}

/// From `G |- phi <=> psi` derive `G |- phi ==> psi`.
pub fn iff_forward(p: ProofTree) -> Result<ProofTree, BuildError> {
    let (f, a, b) = iff_parts(&p)?;
    let imp = logic::implies(a.clone(), b.clone());
    let step = left_iff(hypothesis(imp), a, b);
    Ok(cut(p, step, f))
}

/// From `G |- phi <=> psi` derive `G |- psi ==> phi`.
pub fn iff_backward(p: ProofTree) -> Result<ProofTree, BuildError> {
    let (f, a, b) = iff_parts(&p)?;
    let imp = logic::implies(b.clone(), a.clone());
    let step = left_iff(hypothesis(imp), a, b);
    Ok(cut(p, step, f))
}

/// From `G |- phi <=> psi` and `D |- phi` derive `G, D |- psi`.
pub fn iff_mp(iff: ProofTree, arg: ProofTree) -> Result<ProofTree, BuildError> {
    mp(iff_forward(iff)?, arg)
}

/// From `G |- phi <=> psi` and `D |- psi` derive `G, D |- phi`.
pub fn iff_mpr(iff: ProofTree, arg: ProofTree) -> Result<ProofTree, BuildError> {
    mp(iff_backward(iff)?, arg)
}

/// From `G |- a = b` and a proof `refl` of `|- a = a` derive `G |- b = a`.
pub fn eq_symm(p: ProofTree, refl: ProofTree) -> Result<ProofTree, BuildError> {
    let f = sole_right(&p)?.clone();
    let (a, b) = logic::as_eq(&f)
        .map(|(a, b)| (a.clone(), b.clone()))
        .ok_or_else(|| BuildError::Shape("expected an equation".into()))?;
    // ctx(z) := z = a
    let a_c = a.clone();
    let ctx = Expr::lam_with("z", Sort::Ind, |z| logic::eq(z, a_c));
    let step = right_subst_eq(refl, a, b, ctx);
    Ok(cut(p, step, f))
}
