//! Sequent-calculus proof checker and the theory registry it checks against.

pub mod build;
mod check;
mod proof;
mod sequent;
mod theory;

pub use build::BuildError;
pub use check::{check_proof, NodePath, ProofError, ValidatedTheorem};
pub use proof::{Instantiation, ProofTree, Rule, RuleTag};
pub use sequent::Sequent;
pub use theory::{Definition, Justification, Schema, TheoremEntry, TheoremSource, Theory, TheoryError};
