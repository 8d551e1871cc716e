//! Simply-sorted lambda terms over `Ind` and `Prop`, the object language every
//! other layer is written in.

mod expr;
mod normalize;
mod signature;
mod sort;

pub use expr::{sym, Expr, Node, Symbol};
pub use normalize::{alpha_eq, beta_normalize, is_beta_normal};
pub use signature::{logic, Signature};
pub use sort::Sort;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LfolError {
    #[error("sort mismatch in {context}: expected {expected}, found {found}")]
    SortMismatch {
        expected: Sort,
        found: Sort,
        context: String,
    },
    #[error("applying a term of non-arrow sort {0}")]
    NotAFunction(Sort),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("constant `{0}` declared twice")]
    DuplicateConstant(String),
    #[error("loose bound index {0}")]
    LooseBound(u32),
    #[error("only free variables and schematic symbols can be substituted")]
    NotSubstitutable,
}

/// Sort of `e` against `sig`.
pub fn sort_of(e: &Expr, sig: &Signature) -> Result<Sort, LfolError> {
    sig.sort_of(e)
}
