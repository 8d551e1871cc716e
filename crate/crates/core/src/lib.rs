pub mod kernel;
pub mod lfol;
pub mod oracle;
pub mod cli;
pub mod embedding;
pub mod set_theory;
pub mod syntax;
pub mod typecheck;
