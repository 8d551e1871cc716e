//! Dependent products, abstraction and application as sets, universe levels,
//! and access to the typing lemmas as instantiable theorem schemas.

use std::fmt;

use thiserror::Error;

use crate::kernel::{build, Instantiation, ProofTree, Theory};
use crate::lfol::{alpha_eq, beta_normalize, Expr, LfolError, Sort};
use crate::set_theory::{names, terms, unfold_definition};

#[derive(Debug, Clone, Error)]
pub enum EmbedError {
    #[error("sort mismatch for {what}: expected {expected}, found {found}")]
    SortMismatch {
        what: &'static str,
        expected: Sort,
        found: Sort,
    },
    #[error("unknown lemma `{0}`")]
    UnknownLemma(String),
    #[error("instantiation of `{lemma}` leaves ?{missing} unbound")]
    PartialInstantiation { lemma: String, missing: String },
    #[error("instantiation of `{lemma}` binds ?{name}, which the schema does not use")]
    ExtraBinding { lemma: String, name: String },
    #[error("universe levels over different bases: {} and {}", crate::syntax::print_expr(.left), crate::syntax::print_expr(.right))]
    BaseMismatch { left: Expr, right: Expr },
    #[error(transparent)]
    Lfol(#[from] LfolError),
}

/// The typing lemmas, in the order they are documented.
pub const LEMMAS: [&str; 12] = [
    "BetaThm",
    "T_abs",
    "T_app",
    "Conversion",
    "GrothendieckImpliesIsUniverse",
    "UniversePiClosure",
    "T_sort",
    "T_form",
    "PiSubtyping",
    "UniverseOfContains",
    "UniverseOfIsUniverse",
    "UniverseCumulative",
];

fn expect_sort(what: &'static str, e: &Expr, expected: Sort) -> Result<(), EmbedError> {
    let found = e.sort()?;
    if found != expected {
        return Err(EmbedError::SortMismatch { what, expected, found });
    }
    Ok(())
}

/// `abs(T)(L)`: the graph `{ <x, L(x)> | x in T }`.
pub fn mk_abs(t: Expr, l: Expr) -> Result<Expr, EmbedError> {
    expect_sort("abs domain", &t, Sort::Ind)?;
    expect_sort("abs body", &l, Sort::family())?;
    Ok(terms::abs(t, beta_normalize(&l)))
}

/// `app(t)(u)`: `eps y. <u, y> in t`.
pub fn mk_app(t: Expr, u: Expr) -> Result<Expr, EmbedError> {
    expect_sort("applied term", &t, Sort::Ind)?;
    expect_sort("argument", &u, Sort::Ind)?;
    Ok(terms::app(t, u))
}

/// `Pi(T1)(L)`: functional relations on `T1` whose value at `x` lies in `L(x)`.
pub fn mk_pi(t1: Expr, l: Expr) -> Result<Expr, EmbedError> {
    expect_sort("product domain", &t1, Sort::Ind)?;
    expect_sort("product family", &l, Sort::family())?;
    Ok(terms::pi(t1, beta_normalize(&l)))
}

/// `A ->: B`, the product over a constant family.
pub fn mk_arrow(a: Expr, b: Expr) -> Result<Expr, EmbedError> {
    expect_sort("arrow codomain", &b, Sort::Ind)?;
    mk_pi(a, constant_family(b))
}

/// `\_. b`
pub fn constant_family(b: Expr) -> Expr {
    Expr::lam("_", Sort::Ind, b.lift(1, 0))
}

/// `(T1, L)` when `e` is `Pi(T1)(L)`.
pub fn as_pi(e: &Expr) -> Option<(&Expr, &Expr)> {
    e.const_app(names::PI, 2).map(|a| (a[0], a[1]))
}

/// `(T, L)` when `e` is `abs(T)(L)`.
pub fn as_abs(e: &Expr) -> Option<(&Expr, &Expr)> {
    e.const_app(names::ABS, 2).map(|a| (a[0], a[1]))
}

/// `(t, u)` when `e` is `app(t)(u)`.
pub fn as_app(e: &Expr) -> Option<(&Expr, &Expr)> {
    e.const_app(names::APP, 2).map(|a| (a[0], a[1]))
}

/// The body of a constant family, if the family ignores its argument.
pub fn as_constant_family(l: &Expr) -> Option<Expr> {
    let (_, _, body) = l.as_lam()?;
    let marker = Expr::free("\u{1}probe", Sort::Ind);
    let opened = body.instantiate(&marker);
    (!opened.occurs_free("\u{1}probe")).then_some(opened)
}

/// Replace each definition of `abs`, `app` and `Pi` by its literal set-theoretic form.
pub fn unfold_encodings(theory: &Theory, e: &Expr) -> Expr {
    let mut out = e.clone();
    for n in [names::PI, names::ABS, names::APP] {
        if let Ok(next) = unfold_definition(theory, n, &out) {
            out = next;
        }
    }
    out
}

/// `universeOf^n(base)`
pub fn get_universe(n: u32, base: Expr) -> Expr {
    (0..n).fold(base, |acc, _| terms::universe_of(acc))
}

/// `universeOf^height(base)`, tracked at the meta level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniverseLevel {
    pub base: Expr,
    pub height: u32,
}

impl UniverseLevel {
    pub fn new(base: Expr, height: u32) -> UniverseLevel {
        UniverseLevel { base, height }
    }

    /// Peel `universeOf` applications off `e`.
    pub fn of(e: &Expr) -> UniverseLevel {
        let mut base = e.clone();
        let mut height = 0;
        while let Some(inner) = base.const_app(names::UNIVERSE_OF, 1).map(|a| a[0].clone()) {
            base = inner;
            height += 1;
        }
        UniverseLevel { base, height }
    }

    pub fn denotation(&self) -> Expr {
        get_universe(self.height, self.base.clone())
    }

    pub fn succ(&self) -> UniverseLevel {
        UniverseLevel::new(self.base.clone(), self.height + 1)
    }
}

impl fmt::Display for UniverseLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{:?}, {}>", self.base, self.height)
    }
}

/// `universeOf^m(b) join universeOf^n(b) = universeOf^max(m,n)(b)`.
pub fn level_join(a: &UniverseLevel, b: &UniverseLevel) -> Result<UniverseLevel, EmbedError> {
    if !alpha_eq(&a.base, &b.base) {
        return Err(EmbedError::BaseMismatch {
            left: a.base.clone(),
            right: b.base.clone(),
        });
    }
    Ok(UniverseLevel::new(a.base.clone(), a.height.max(b.height)))
}

/// A `ByTheorem` leaf for `name` under a total, sort-preserving instantiation.
pub fn lemma_instance(theory: &Theory, name: &str, inst: Instantiation) -> Result<ProofTree, EmbedError> {
    let entry = theory
        .theorem(name)
        .ok_or_else(|| EmbedError::UnknownLemma(name.to_string()))?;
    for (var, sort) in &entry.schema.schematics {
        let Some(e) = inst.get(var) else {
            return Err(EmbedError::PartialInstantiation {
                lemma: name.to_string(),
                missing: var.to_string(),
            });
        };
        let found = theory.signature().sort_of(e)?;
        if &found != sort {
            return Err(EmbedError::SortMismatch {
                what: "lemma instantiation",
                expected: sort.clone(),
                found,
            });
        }
    }
    if let Some(extra) = inst.keys().find(|k| !entry.schema.schematics.contains_key(*k)) {
        return Err(EmbedError::ExtraBinding {
            lemma: name.to_string(),
            name: extra.to_string(),
        });
    }
    build::by_theorem(theory, name, inst).map_err(|_| EmbedError::UnknownLemma(name.to_string()))
}
