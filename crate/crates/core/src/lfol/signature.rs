use std::collections::BTreeMap;

use super::{sym, Expr, LfolError, Node, Sort, Symbol};

/// Declared constants and their sorts.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Signature {
    constants: BTreeMap<Symbol, Sort>,
}

impl Signature {
    pub fn empty() -> Signature {
        Signature::default()
    }

    /// Membership, equality, the connectives, the quantifiers and epsilon.
    pub fn logical() -> Signature {
        let mut sig = Signature::empty();
        for (name, sort) in logic::primitive_sorts() {
            sig.declare(name, sort).expect("primitive constants are distinct");
        }
        sig
    }

    pub fn declare(&mut self, name: &str, sort: Sort) -> Result<(), LfolError> {
        if self.constants.contains_key(name) {
            return Err(LfolError::DuplicateConstant(name.to_string()));
        }
        self.constants.insert(sym(name), sort);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Sort> {
        self.constants.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.constants.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &Sort)> {
        self.constants.iter()
    }

    /// `Expr` for a declared constant.
    pub fn constant(&self, name: &str) -> Result<Expr, LfolError> {
        let sort = self
            .get(name)
            .ok_or_else(|| LfolError::UnknownConstant(name.to_string()))?;
        Ok(Expr::constant(name, sort.clone()))
    }

    /// Check that every constant of `e` is declared with the sort it carries,
    /// then compute the sort of `e`.
    pub fn sort_of(&self, e: &Expr) -> Result<Sort, LfolError> {
        self.check_constants(e)?;
        e.sort()
    }

    fn check_constants(&self, e: &Expr) -> Result<(), LfolError> {
        match e.node() {
            Node::Const(n, s) => match self.get(n) {
                None => Err(LfolError::UnknownConstant(n.to_string())),
                Some(decl) if decl != s => Err(LfolError::SortMismatch {
                    expected: decl.clone(),
                    found: s.clone(),
                    context: format!("constant {n}"),
                }),
                Some(_) => Ok(()),
            },
            Node::App(f, a) => {
                self.check_constants(f)?;
                self.check_constants(a)
            }
            Node::Lam(_, _, b) => self.check_constants(b),
            _ => Ok(()),
        }
    }
}

/// Primitive logical vocabulary and constructors for formulas.
pub mod logic {
    use super::*;

    pub const IN: &str = "in";
    pub const EQ: &str = "=";
    pub const FORALL: &str = "forall";
    pub const EXISTS: &str = "exists";
    pub const EPS: &str = "eps";
    pub const AND: &str = "and";
    pub const OR: &str = "or";
    pub const IMPLIES: &str = "implies";
    pub const IFF: &str = "iff";
    pub const NOT: &str = "not";
    pub const TOP: &str = "true";
    pub const BOT: &str = "false";

    pub fn primitive_sorts() -> Vec<(&'static str, Sort)> {
        let rel = Sort::curried(&[Sort::Ind, Sort::Ind], Sort::Prop);
        let quant = Sort::arrow(Sort::predicate(), Sort::Prop);
        let bin = Sort::curried(&[Sort::Prop, Sort::Prop], Sort::Prop);
        vec![
            (IN, rel.clone()),
            (EQ, rel),
            (FORALL, quant.clone()),
            (EXISTS, quant),
            (EPS, Sort::arrow(Sort::predicate(), Sort::Ind)),
            (AND, bin.clone()),
            (OR, bin.clone()),
            (IMPLIES, bin.clone()),
            (IFF, bin),
            (NOT, Sort::arrow(Sort::Prop, Sort::Prop)),
            (TOP, Sort::Prop),
            (BOT, Sort::Prop),
        ]
    }

    pub fn is_primitive(name: &str) -> bool {
        primitive_sorts().iter().any(|(n, _)| *n == name)
    }

    fn prim(name: &str) -> Expr {
        let sort = primitive_sorts()
            .into_iter()
            .find(|(n, _)| *n == name)
            .map(|(_, s)| s)
            .expect("primitive");
        Expr::constant(name, sort)
    }

    fn bin(name: &str, a: Expr, b: Expr) -> Expr {
        Expr::apps(prim(name), [a, b])
    }

    pub fn mem(a: Expr, b: Expr) -> Expr {
        bin(IN, a, b)
    }
    pub fn eq(a: Expr, b: Expr) -> Expr {
        bin(EQ, a, b)
    }
    pub fn and(a: Expr, b: Expr) -> Expr {
        bin(AND, a, b)
    }
    pub fn or(a: Expr, b: Expr) -> Expr {
        bin(OR, a, b)
    }
    pub fn implies(a: Expr, b: Expr) -> Expr {
        bin(IMPLIES, a, b)
    }
    pub fn iff(a: Expr, b: Expr) -> Expr {
        bin(IFF, a, b)
    }
    pub fn not(a: Expr) -> Expr {
        Expr::app(prim(NOT), a)
    }
    pub fn top() -> Expr {
        prim(TOP)
    }
    pub fn bot() -> Expr {
        prim(BOT)
    }

    /// Conjunction of a non-empty list, nested to the left.
    pub fn and_all(parts: impl IntoIterator<Item = Expr>) -> Expr {
        let mut it = parts.into_iter();
        let first = it.next().expect("non-empty conjunction");
        it.fold(first, and)
    }

    /// `forall` applied to a predicate (usually a lambda).
    pub fn forall_of(pred: Expr) -> Expr {
        Expr::app(prim(FORALL), pred)
    }
    pub fn exists_of(pred: Expr) -> Expr {
        Expr::app(prim(EXISTS), pred)
    }
    pub fn eps_of(pred: Expr) -> Expr {
        Expr::app(prim(EPS), pred)
    }

    pub fn forall(hint: &str, body: impl FnOnce(Expr) -> Expr) -> Expr {
        forall_of(Expr::lam_with(hint, Sort::Ind, body))
    }
    pub fn exists(hint: &str, body: impl FnOnce(Expr) -> Expr) -> Expr {
        exists_of(Expr::lam_with(hint, Sort::Ind, body))
    }
    pub fn eps(hint: &str, body: impl FnOnce(Expr) -> Expr) -> Expr {
        eps_of(Expr::lam_with(hint, Sort::Ind, body))
    }

    /// `forall x. x in set ==> body(x)`
    pub fn forall_in(hint: &str, set: Expr, body: impl FnOnce(Expr) -> Expr) -> Expr {
        forall(hint, |x| implies(mem(x.clone(), set), body(x)))
    }

    pub fn as_binary<'a>(e: &'a Expr, name: &str) -> Option<(&'a Expr, &'a Expr)> {
        e.const_app(name, 2).map(|a| (a[0], a[1]))
    }
    pub fn as_unary<'a>(e: &'a Expr, name: &str) -> Option<&'a Expr> {
        e.const_app(name, 1).map(|a| a[0])
    }
    pub fn as_mem(e: &Expr) -> Option<(&Expr, &Expr)> {
        as_binary(e, IN)
    }
    pub fn as_eq(e: &Expr) -> Option<(&Expr, &Expr)> {
        as_binary(e, EQ)
    }
    pub fn as_and(e: &Expr) -> Option<(&Expr, &Expr)> {
        as_binary(e, AND)
    }
    pub fn as_implies(e: &Expr) -> Option<(&Expr, &Expr)> {
        as_binary(e, IMPLIES)
    }
    pub fn as_forall(e: &Expr) -> Option<&Expr> {
        as_unary(e, FORALL)
    }
    pub fn as_exists(e: &Expr) -> Option<&Expr> {
        as_unary(e, EXISTS)
    }
}
