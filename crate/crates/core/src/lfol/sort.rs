use std::fmt;
use std::sync::Arc;

/// Simple sorts of the term language: individuals, propositions and arrows.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sort {
    Ind,
    Prop,
    Arrow(Arc<Sort>, Arc<Sort>),
}

impl Sort {
    pub fn arrow(from: Sort, to: Sort) -> Sort {
        Sort::Arrow(Arc::new(from), Arc::new(to))
    }

    /// Right-nested arrow `a1 -> a2 -> ... -> result`.
    pub fn curried(args: &[Sort], result: Sort) -> Sort {
        args.iter()
            .rev()
            .fold(result, |acc, s| Sort::arrow(s.clone(), acc))
    }

    /// `Ind -> Ind`, the sort of type families.
    pub fn family() -> Sort {
        Sort::arrow(Sort::Ind, Sort::Ind)
    }

    /// `Ind -> Prop`, the sort of predicates.
    pub fn predicate() -> Sort {
        Sort::arrow(Sort::Ind, Sort::Prop)
    }

    pub fn is_arrow(&self) -> bool {
        matches!(self, Sort::Arrow(..))
    }

    pub fn split_arrow(&self) -> Option<(&Sort, &Sort)> {
        match self {
            Sort::Arrow(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Number of arguments a symbol of this sort takes before reaching a base sort.
    pub fn arity(&self) -> usize {
        match self {
            Sort::Arrow(_, b) => 1 + b.arity(),
            _ => 0,
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Ind => write!(f, "Ind"),
            Sort::Prop => write!(f, "Prop"),
            Sort::Arrow(a, b) => {
                if a.is_arrow() {
                    write!(f, "({a}) -> {b}")
                } else {
                    write!(f, "{a} -> {b}")
                }
            }
        }
    }
}
