//! Type-check the composition of `f : A -> B` with the polymorphic identity,
//! then hand the proof to the kernel on its own.
//!
//! `cargo run --example polymorphic_composition`

use settype::kernel::check_proof;
use settype::set_theory::bootstrap;
use settype::syntax::{print_sequent, JudgmentFile};
use settype::typecheck::prove;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let theory = bootstrap();
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/comp.judg"))?;
    let file = JudgmentFile::parse(&src, &theory)?;
    let judgment = file.judgment().ok_or("comp.judg has no goal")?;

    let proof = prove(&theory, &judgment)?;
    let theorem = check_proof(&proof, &theory)?;
    println!("proved   {}", print_sequent(theorem.sequent()));
    println!("nodes    {}", proof.node_count());
    let mut lemmas = proof.theorems_used();
    lemmas.sort();
    lemmas.dedup();
    println!("lemmas   {}", lemmas.join(", "));
    Ok(())
}
