//! The trusted proof checker.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::sequent::{minus, set_eq, subset, union, with};
use super::{Instantiation, ProofTree, Rule, RuleTag, Sequent, Theory};
use crate::lfol::{beta_normalize, is_beta_normal, logic, Expr, Sort, Symbol};

/// Position of a node: premise indices from the root.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NodePath(pub Vec<usize>);

impl NodePath {
    fn child(&self, i: usize) -> NodePath {
        let mut v = self.0.clone();
        v.push(i);
        NodePath(v)
    }
}

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root")?;
        for i in &self.0 {
            write!(f, ".{i}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Error)]
pub enum ProofError {
    #[error("{rule} at {path}: {detail}")]
    RuleViolation {
        path: NodePath,
        rule: RuleTag,
        detail: String,
    },
    #[error("unknown axiom or theorem `{name}` at {path}")]
    UnknownTheorem { path: NodePath, name: String },
    #[error("sort error at {path}: {detail}")]
    SortMismatch { path: NodePath, detail: String },
    #[error("formula at {path} is not beta-normal: {formula}")]
    NonNormalFormula { path: NodePath, formula: String },
}

impl ProofError {
    pub fn path(&self) -> &NodePath {
        match self {
            ProofError::RuleViolation { path, .. }
            | ProofError::UnknownTheorem { path, .. }
            | ProofError::SortMismatch { path, .. }
            | ProofError::NonNormalFormula { path, .. } => path,
        }
    }
}

/// A sequent that has passed [`check_proof`]. Only the checker builds these.
#[derive(Clone, Debug)]
pub struct ValidatedTheorem {
    sequent: Sequent,
}

impl ValidatedTheorem {
    pub fn sequent(&self) -> &Sequent {
        &self.sequent
    }
}

/// Check every node of `tree` against `theory`.
pub fn check_proof(tree: &ProofTree, theory: &Theory) -> Result<ValidatedTheorem, ProofError> {
    let mut checker = Checker { theory };
    checker.node(tree, &NodePath::default())?;
    Ok(ValidatedTheorem {
        sequent: tree.conclusion.clone(),
    })
}

struct Checker<'a> {
    theory: &'a Theory,
}

impl Checker<'_> {
    fn sort_err(&self, path: &NodePath, detail: String) -> ProofError {
        ProofError::SortMismatch {
            path: path.clone(),
            detail,
        }
    }

    fn expect_sort(&self, e: &Expr, want: &Sort, path: &NodePath, what: &str) -> Result<(), ProofError> {
        if !e.is_closed() {
            return Err(self.sort_err(path, format!("{what} has loose bound variables")));
        }
        let s = self
            .theory
            .signature()
            .sort_of(e)
            .map_err(|err| self.sort_err(path, format!("{what}: {err}")))?;
        if &s != want {
            return Err(self.sort_err(path, format!("{what} has sort {s}, expected {want}")));
        }
        Ok(())
    }

    fn formula(&self, e: &Expr, path: &NodePath) -> Result<(), ProofError> {
        self.expect_sort(e, &Sort::Prop, path, "formula")?;
        if !is_beta_normal(e) {
            return Err(ProofError::NonNormalFormula {
                path: path.clone(),
                formula: format!("{e:?}"),
            });
        }
        Ok(())
    }

    fn check_inst(
        &self,
        inst: &Instantiation,
        schematics: &BTreeMap<Symbol, Sort>,
        path: &NodePath,
    ) -> Result<(), ProofError> {
        for (name, replacement) in inst {
            let sort = schematics
                .get(name)
                .ok_or_else(|| self.sort_err(path, format!("?{name} is not a schematic symbol of the schema")))?;
            self.expect_sort(replacement, sort, path, &format!("replacement for ?{name}"))?;
        }
        Ok(())
    }

    fn node(&mut self, node: &ProofTree, path: &NodePath) -> Result<(), ProofError> {
        let tag = node.rule.tag();
        if node.premises.len() != tag.premise_count() {
            return Err(ProofError::RuleViolation {
                path: path.clone(),
                rule: tag,
                detail: format!(
                    "expects {} premises, found {}",
                    tag.premise_count(),
                    node.premises.len()
                ),
            });
        }
        for f in node.conclusion.formulas() {
            self.formula(f, path)?;
        }
        self.rule(node, path).map_err(|e| match e {
            Violation::Detail(detail) => ProofError::RuleViolation {
                path: path.clone(),
                rule: tag,
                detail,
            },
            Violation::Error(e) => e,
        })?;
        for (i, p) in node.premises.iter().enumerate() {
            self.node(p, &path.child(i))?;
        }
        Ok(())
    }

    fn rule(&self, node: &ProofTree, path: &NodePath) -> Result<(), Violation> {
        let c = &node.conclusion;
        let p: Vec<&Sequent> = node.premises.iter().map(|p| &p.conclusion).collect();
        let ind = Sort::Ind;
        let pred = Sort::predicate();
        match &node.rule {
            Rule::Hypothesis { phi } => {
                need(c.left.contains(phi) && c.right.contains(phi), "pivot must occur on both sides")
            }
            Rule::Weakening => need(
                subset(&p[0].left, &c.left) && subset(&p[0].right, &c.right),
                "conclusion must contain the premise",
            ),
            Rule::Restate => {
                let n = p[0].normalized();
                need(n.same_as(&c.normalized()), "conclusion is not alpha-beta equivalent to premise")
            }
            Rule::Cut { phi } => {
                self.formula(phi, path)?;
                need(p[0].right.contains(phi), "pivot missing from the right of the first premise")?;
                need(p[1].left.contains(phi), "pivot missing from the left of the second premise")?;
                expect(
                    c,
                    union(&p[0].left, &minus(&p[1].left, &[phi])),
                    union(&minus(&p[0].right, &[phi]), &p[1].right),
                )
            }
            Rule::LeftAnd { phi, psi } => {
                let both = logic::and(phi.clone(), psi.clone());
                need(p[0].left.contains(phi) && p[0].left.contains(psi), "conjuncts missing from premise")?;
                expect(c, with(&minus(&p[0].left, &[phi, psi]), &[&both]), p[0].right.clone())
            }
            Rule::RightAnd { phi, psi } => {
                let both = logic::and(phi.clone(), psi.clone());
                need(p[0].right.contains(phi), "left conjunct missing")?;
                need(p[1].right.contains(psi), "right conjunct missing")?;
                expect(
                    c,
                    union(&p[0].left, &p[1].left),
                    with(&union(&minus(&p[0].right, &[phi]), &minus(&p[1].right, &[psi])), &[&both]),
                )
            }
            Rule::LeftOr { phi, psi } => {
                let either = logic::or(phi.clone(), psi.clone());
                need(p[0].left.contains(phi) && p[1].left.contains(psi), "disjuncts missing")?;
                expect(
                    c,
                    with(&union(&minus(&p[0].left, &[phi]), &minus(&p[1].left, &[psi])), &[&either]),
                    union(&p[0].right, &p[1].right),
                )
            }
            Rule::RightOr { phi, psi } => {
                let either = logic::or(phi.clone(), psi.clone());
                need(p[0].right.contains(phi) && p[0].right.contains(psi), "disjuncts missing")?;
                expect(c, p[0].left.clone(), with(&minus(&p[0].right, &[phi, psi]), &[&either]))
            }
            Rule::LeftImplies { phi, psi } => {
                let imp = logic::implies(phi.clone(), psi.clone());
                need(p[0].right.contains(phi), "antecedent missing from first premise")?;
                need(p[1].left.contains(psi), "consequent missing from second premise")?;
                expect(
                    c,
                    with(&union(&p[0].left, &minus(&p[1].left, &[psi])), &[&imp]),
                    union(&minus(&p[0].right, &[phi]), &p[1].right),
                )
            }
            Rule::RightImplies { phi, psi } => {
                let imp = logic::implies(phi.clone(), psi.clone());
                need(p[0].right.contains(psi), "consequent missing from premise")?;
                expect(c, minus(&p[0].left, &[phi]), with(&minus(&p[0].right, &[psi]), &[&imp]))
            }
            Rule::LeftIff { phi, psi } => {
                let fwd = logic::implies(phi.clone(), psi.clone());
                let bwd = logic::implies(psi.clone(), phi.clone());
                let iff = logic::iff(phi.clone(), psi.clone());
                need(p[0].left.contains(&fwd) || p[0].left.contains(&bwd), "no implication to merge")?;
                expect(c, with(&minus(&p[0].left, &[&fwd, &bwd]), &[&iff]), p[0].right.clone())
            }
            Rule::RightIff { phi, psi } => {
                let fwd = logic::implies(phi.clone(), psi.clone());
                let bwd = logic::implies(psi.clone(), phi.clone());
                let iff = logic::iff(phi.clone(), psi.clone());
                need(p[0].right.contains(&fwd) && p[1].right.contains(&bwd), "implications missing")?;
                expect(
                    c,
                    union(&p[0].left, &p[1].left),
                    with(&union(&minus(&p[0].right, &[&fwd]), &minus(&p[1].right, &[&bwd])), &[&iff]),
                )
            }
            Rule::LeftNot { phi } => {
                need(p[0].right.contains(phi), "negated formula missing from the right")?;
                expect(c, with(&p[0].left, &[&logic::not(phi.clone())]), minus(&p[0].right, &[phi]))
            }
            Rule::RightNot { phi } => {
                need(p[0].left.contains(phi), "negated formula missing from the left")?;
                expect(c, minus(&p[0].left, &[phi]), with(&p[0].right, &[&logic::not(phi.clone())]))
            }
            Rule::LeftForall { body, term } => {
                self.expect_sort(body, &pred, path, "quantifier body")?;
                self.expect_sort(term, &ind, path, "witness")?;
                let inst = beta_normalize(&Expr::app(body.clone(), term.clone()));
                let all = logic::forall_of(body.clone());
                need(p[0].left.contains(&inst), "instance missing from the left of the premise")?;
                expect(c, with(&minus(&p[0].left, &[&inst]), &[&all]), p[0].right.clone())
            }
            Rule::RightForall { body, eigen } => {
                self.expect_sort(body, &pred, path, "quantifier body")?;
                let inst = beta_normalize(&Expr::app(body.clone(), Expr::var(eigen)));
                let all = logic::forall_of(body.clone());
                need(p[0].right.contains(&inst), "instance missing from the right of the premise")?;
                need(!c.occurs_free(eigen), "eigenvariable occurs in the conclusion")?;
                expect(c, p[0].left.clone(), with(&minus(&p[0].right, &[&inst]), &[&all]))
            }
            Rule::LeftExists { body, eigen } => {
                self.expect_sort(body, &pred, path, "quantifier body")?;
                let inst = beta_normalize(&Expr::app(body.clone(), Expr::var(eigen)));
                let ex = logic::exists_of(body.clone());
                need(p[0].left.contains(&inst), "instance missing from the left of the premise")?;
                need(!c.occurs_free(eigen), "eigenvariable occurs in the conclusion")?;
                expect(c, with(&minus(&p[0].left, &[&inst]), &[&ex]), p[0].right.clone())
            }
            Rule::RightExists { body, term } => {
                self.expect_sort(body, &pred, path, "quantifier body")?;
                self.expect_sort(term, &ind, path, "witness")?;
                let inst = beta_normalize(&Expr::app(body.clone(), term.clone()));
                let ex = logic::exists_of(body.clone());
                need(p[0].right.contains(&inst), "instance missing from the right of the premise")?;
                expect(c, p[0].left.clone(), with(&minus(&p[0].right, &[&inst]), &[&ex]))
            }
            Rule::LeftSubstEq { lhs, rhs, ctx } => {
                self.expect_sort(lhs, &ind, path, "left side of the equation")?;
                self.expect_sort(rhs, &ind, path, "right side of the equation")?;
                self.expect_sort(ctx, &pred, path, "substitution context")?;
                let at = |t: &Expr| beta_normalize(&Expr::app(ctx.clone(), t.clone()));
                let (from, to) = (at(lhs), at(rhs));
                let eq = logic::eq(lhs.clone(), rhs.clone());
                need(p[0].left.contains(&from), "context instance missing from the left")?;
                expect(c, with(&minus(&p[0].left, &[&from]), &[&eq, &to]), p[0].right.clone())
            }
            Rule::RightSubstEq { lhs, rhs, ctx } => {
                self.expect_sort(lhs, &ind, path, "left side of the equation")?;
                self.expect_sort(rhs, &ind, path, "right side of the equation")?;
                self.expect_sort(ctx, &pred, path, "substitution context")?;
                let at = |t: &Expr| beta_normalize(&Expr::app(ctx.clone(), t.clone()));
                let (from, to) = (at(lhs), at(rhs));
                let eq = logic::eq(lhs.clone(), rhs.clone());
                need(p[0].right.contains(&from), "context instance missing from the right")?;
                expect(c, with(&p[0].left, &[&eq]), with(&minus(&p[0].right, &[&from]), &[&to]))
            }
            Rule::EpsilonIntro { body } => {
                self.expect_sort(body, &pred, path, "epsilon body")?;
                let ex = logic::exists_of(body.clone());
                let chosen = beta_normalize(&Expr::app(body.clone(), logic::eps_of(body.clone())));
                need(p[0].right.contains(&ex), "existential missing from the right of the premise")?;
                expect(c, p[0].left.clone(), with(&minus(&p[0].right, &[&ex]), &[&chosen]))
            }
            Rule::InstSchema { inst } => {
                let mut schematics = BTreeMap::new();
                for f in p[0].formulas() {
                    schematics.extend(f.schematics());
                }
                self.check_inst(inst, &schematics, path)?;
                let target = p[0].instantiate(inst);
                expect(c, target.left, target.right)
            }
            Rule::ByAxiom { name, inst } | Rule::ByTheorem { name, inst } => {
                let schema = match &node.rule {
                    Rule::ByAxiom { .. } => self.theory.axiom(name),
                    _ => self.theory.theorem(name).map(|t| &t.schema),
                }
                .ok_or_else(|| {
                    Violation::Error(ProofError::UnknownTheorem {
                        path: path.clone(),
                        name: name.to_string(),
                    })
                })?;
                self.check_inst(inst, &schema.schematics, path)?;
                let target = schema.sequent.instantiate(inst);
                expect(c, target.left, target.right)
            }
        }
    }
}

enum Violation {
    Detail(String),
    Error(ProofError),
}

impl From<ProofError> for Violation {
    fn from(e: ProofError) -> Self {
        Violation::Error(e)
    }
}

fn need(cond: bool, msg: &str) -> Result<(), Violation> {
    if cond {
        Ok(())
    } else {
        Err(Violation::Detail(msg.to_string()))
    }
}

fn expect(c: &Sequent, left: Vec<Expr>, right: Vec<Expr>) -> Result<(), Violation> {
    need(set_eq(&c.left, &left), "left side of the conclusion does not match")?;
    need(set_eq(&c.right, &right), "right side of the conclusion does not match")
}
