//! Names, sorts and constructors for the set-theoretic vocabulary.

use crate::lfol::{logic, Expr, Sort};

pub mod names {
    pub const EMPTY: &str = "empty";
    pub const PAIR: &str = "pair";
    pub const UNION: &str = "union";
    pub const POWER: &str = "power";
    pub const SUBSET: &str = "subset";
    pub const SINGLETON: &str = "singleton";
    pub const OPAIR: &str = "opair";
    pub const SEP: &str = "sep";
    pub const IMAGE: &str = "image";
    pub const PROD: &str = "prod";
    pub const EXU: &str = "exu";
    pub const IS_FUNC: &str = "isFunc";
    pub const RANGE: &str = "range";
    pub const FNSPACE: &str = "fnspace";
    pub const IS_GROTHENDIECK: &str = "isGrothendieck";
    pub const IS_UNIVERSE: &str = "isUniverse";
    pub const UNIVERSE_OF: &str = "universeOf";
    pub const ABS: &str = "abs";
    pub const APP: &str = "app";
    pub const PI: &str = "Pi";
}

use names::*;

fn ind(n: usize) -> Vec<Sort> {
    vec![Sort::Ind; n]
}

/// Parameter sorts and result sort of every set-theoretic constant.
pub fn constant_sort(name: &str) -> Option<(Vec<Sort>, Sort)> {
    let (params, result) = match name {
        EMPTY => (vec![], Sort::Ind),
        PAIR | OPAIR | PROD | FNSPACE | APP => (ind(2), Sort::Ind),
        UNION | POWER | SINGLETON | RANGE | UNIVERSE_OF => (ind(1), Sort::Ind),
        SUBSET | IS_FUNC => (ind(2), Sort::Prop),
        SEP => (vec![Sort::Ind, Sort::predicate()], Sort::Ind),
        IMAGE | ABS | PI => (vec![Sort::Ind, Sort::family()], Sort::Ind),
        EXU => (vec![Sort::predicate()], Sort::Prop),
        IS_GROTHENDIECK | IS_UNIVERSE => (ind(1), Sort::Prop),
        _ => return None,
    };
    Some((params, result))
}

pub fn constant(name: &str) -> Expr {
    let (params, result) = constant_sort(name).expect("set-theoretic constant");
    Expr::constant(name, Sort::curried(&params, result))
}

fn c(name: &str, args: impl IntoIterator<Item = Expr>) -> Expr {
    Expr::apps(constant(name), args)
}

pub fn empty() -> Expr {
    constant(EMPTY)
}
pub fn pair(a: Expr, b: Expr) -> Expr {
    c(PAIR, [a, b])
}
pub fn union(a: Expr) -> Expr {
    c(UNION, [a])
}
pub fn power(a: Expr) -> Expr {
    c(POWER, [a])
}
pub fn subset(a: Expr, b: Expr) -> Expr {
    c(SUBSET, [a, b])
}
pub fn singleton(a: Expr) -> Expr {
    c(SINGLETON, [a])
}
pub fn opair(a: Expr, b: Expr) -> Expr {
    c(OPAIR, [a, b])
}
/// `{ x in a | p(x) }`, `p : Ind -> Prop`.
pub fn sep(a: Expr, p: Expr) -> Expr {
    c(SEP, [a, p])
}
/// `{ f(x) | x in a }`, `f : Ind -> Ind`.
pub fn image(a: Expr, f: Expr) -> Expr {
    c(IMAGE, [a, f])
}
pub fn prod(a: Expr, b: Expr) -> Expr {
    c(PROD, [a, b])
}
pub fn exu(p: Expr) -> Expr {
    c(EXU, [p])
}
pub fn is_func(f: Expr, t: Expr) -> Expr {
    c(IS_FUNC, [f, t])
}
pub fn range(f: Expr) -> Expr {
    c(RANGE, [f])
}
pub fn fnspace(a: Expr, b: Expr) -> Expr {
    c(FNSPACE, [a, b])
}
pub fn is_grothendieck(u: Expr) -> Expr {
    c(IS_GROTHENDIECK, [u])
}
pub fn is_universe(u: Expr) -> Expr {
    c(IS_UNIVERSE, [u])
}
pub fn universe_of(x: Expr) -> Expr {
    c(UNIVERSE_OF, [x])
}
pub fn abs(t: Expr, l: Expr) -> Expr {
    c(ABS, [t, l])
}
pub fn app(t: Expr, u: Expr) -> Expr {
    c(APP, [t, u])
}
pub fn pi(t: Expr, l: Expr) -> Expr {
    c(PI, [t, l])
}

/// `forall x. x in set ==> forall y. y in set ==> body(x, y)`
pub(crate) fn forall_in2(set: &Expr, body: impl FnOnce(Expr, Expr) -> Expr) -> Expr {
    let s = set.clone();
    logic::forall_in("x", set.clone(), move |x| logic::forall_in("y", s, move |y| body(x, y)))
}
