use crate::kernel::Sequent;
use crate::lfol::{alpha_eq, logic, Expr};
use crate::set_theory::{names, terms};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Assumption {
    /// `x in T`
    Member(Expr, Expr),
    /// `isUniverse(U)`
    Universe(Expr),
    /// `A <= B`
    Inclusion(Expr, Expr),
}

impl Assumption {
    pub fn formula(&self) -> Expr {
        match self {
            Assumption::Member(x, t) => logic::mem(x.clone(), t.clone()),
            Assumption::Universe(u) => terms::is_universe(u.clone()),
            Assumption::Inclusion(a, b) => terms::subset(a.clone(), b.clone()),
        }
    }

    pub fn from_formula(f: &Expr) -> Option<Assumption> {
        if let Some((x, t)) = logic::as_mem(f) {
            return Some(Assumption::Member(x.clone(), t.clone()));
        }
        if let Some(a) = f.const_app(names::IS_UNIVERSE, 1) {
            return Some(Assumption::Universe(a[0].clone()));
        }
        f.const_app(names::SUBSET, 2)
            .map(|a| Assumption::Inclusion(a[0].clone(), a[1].clone()))
    }
}

/// Ordered typing assumptions; later entries shadow earlier ones on lookup.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Context {
    items: Vec<Assumption>,
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    pub fn from_assumptions(items: impl IntoIterator<Item = Assumption>) -> Context {
        Context {
            items: items.into_iter().collect(),
        }
    }

    pub fn push(&mut self, a: Assumption) {
        self.items.push(a);
    }

    /// A copy extended with `a`.
    pub fn with(&self, a: Assumption) -> Context {
        let mut c = self.clone();
        c.push(a);
        c
    }

    pub fn assumptions(&self) -> &[Assumption] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn formulas(&self) -> Vec<Expr> {
        self.items.iter().map(Assumption::formula).collect()
    }

    /// Type from the most recent membership assumption on `e`.
    pub fn lookup_member(&self, e: &Expr) -> Option<&Expr> {
        self.items.iter().rev().find_map(|a| match a {
            Assumption::Member(x, t) if alpha_eq(x, e) => Some(t),
            _ => None,
        })
    }

    pub fn has_universe(&self, u: &Expr) -> bool {
        self.items
            .iter()
            .any(|a| matches!(a, Assumption::Universe(v) if alpha_eq(u, v)))
    }

    /// Inclusion assumptions, most recent first.
    pub fn inclusions(&self) -> impl Iterator<Item = (&Expr, &Expr)> {
        self.items.iter().rev().filter_map(|a| match a {
            Assumption::Inclusion(x, y) => Some((x, y)),
            _ => None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JudgmentKind {
    Membership,
    Inclusion,
}

/// `context |- subject in ty` or `context |- subject <= ty`.
#[derive(Clone, Debug)]
pub struct Judgment {
    pub context: Context,
    pub subject: Expr,
    pub ty: Expr,
    pub kind: JudgmentKind,
}

impl Judgment {
    pub fn membership(context: Context, subject: Expr, ty: Expr) -> Judgment {
        Judgment {
            context,
            subject,
            ty,
            kind: JudgmentKind::Membership,
        }
    }

    pub fn inclusion(context: Context, subject: Expr, ty: Expr) -> Judgment {
        Judgment {
            context,
            subject,
            ty,
            kind: JudgmentKind::Inclusion,
        }
    }

    pub fn goal(&self) -> Expr {
        match self.kind {
            JudgmentKind::Membership => logic::mem(self.subject.clone(), self.ty.clone()),
            JudgmentKind::Inclusion => terms::subset(self.subject.clone(), self.ty.clone()),
        }
    }

    pub fn sequent(&self) -> Sequent {
        Sequent::new(self.context.formulas(), [self.goal()])
    }
}
