//! Hereditarily finite sets as a finite model: an evaluator for terms of the
//! set-theoretic vocabulary and a bounded counterexample search for schemas.

mod eval;
mod falsify;
mod hf;

pub use eval::{eval, DefinableMap, EvalConfig, EvalError, Evaluator, Func, HfEnv, Value};
pub use falsify::{
    contravariance_claim, falsify, is_set_only, run_suite, Bounds, Counterexample, FalsifyError, SuiteEntry,
    SuiteReport, LIMITATION,
};
pub use hf::{enumerate_hf, HfSet};
