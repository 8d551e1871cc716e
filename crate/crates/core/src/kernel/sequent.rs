use crate::lfol::{beta_normalize, Expr, Symbol};
use std::collections::BTreeMap;

/// `left |- right`. Sides are compared as sets: order and repetition are
/// irrelevant for validity.
#[derive(Clone, Debug, Default)]
pub struct Sequent {
    pub left: Vec<Expr>,
    pub right: Vec<Expr>,
}

impl Sequent {
    pub fn new(left: impl IntoIterator<Item = Expr>, right: impl IntoIterator<Item = Expr>) -> Sequent {
        Sequent {
            left: dedup(left),
            right: dedup(right),
        }
    }

    /// `|- phi`
    pub fn goal(phi: Expr) -> Sequent {
        Sequent::new([], [phi])
    }

    pub fn same_as(&self, other: &Sequent) -> bool {
        set_eq(&self.left, &other.left) && set_eq(&self.right, &other.right)
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Expr> {
        self.left.iter().chain(self.right.iter())
    }

    pub fn instantiate(&self, inst: &BTreeMap<Symbol, Expr>) -> Sequent {
        let f = |e: &Expr| beta_normalize(&e.instantiate_schematics(inst));
        Sequent::new(self.left.iter().map(f), self.right.iter().map(f))
    }

    pub fn normalized(&self) -> Sequent {
        Sequent::new(
            self.left.iter().map(beta_normalize),
            self.right.iter().map(beta_normalize),
        )
    }

    pub fn occurs_free(&self, name: &str) -> bool {
        self.formulas().any(|f| f.occurs_free(name))
    }
}

pub(crate) fn dedup(items: impl IntoIterator<Item = Expr>) -> Vec<Expr> {
    let mut out: Vec<Expr> = Vec::new();
    for e in items {
        if !out.contains(&e) {
            out.push(e);
        }
    }
    out
}

pub(crate) fn set_eq(a: &[Expr], b: &[Expr]) -> bool {
    a.iter().all(|x| b.contains(x)) && b.iter().all(|x| a.contains(x))
}

pub(crate) fn subset(a: &[Expr], b: &[Expr]) -> bool {
    a.iter().all(|x| b.contains(x))
}

pub(crate) fn union(a: &[Expr], b: &[Expr]) -> Vec<Expr> {
    dedup(a.iter().chain(b.iter()).cloned())
}

pub(crate) fn minus(a: &[Expr], remove: &[&Expr]) -> Vec<Expr> {
    a.iter().filter(|x| !remove.contains(x)).cloned().collect()
}

pub(crate) fn with(a: &[Expr], extra: &[&Expr]) -> Vec<Expr> {
    dedup(a.iter().cloned().chain(extra.iter().map(|e| (*e).clone())))
}
