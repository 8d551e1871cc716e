//! Write a proof to the line-oriented proof format, read it back and check the
//! copy against a theory reloaded from its own text dump.
//!
//! `cargo run --example proof_files`

use settype::kernel::check_proof;
use settype::set_theory::bootstrap;
use settype::syntax::{parse_theory_file, print_sequent, read_proof, write_proof, write_theory_file, JudgmentFile};
use settype::typecheck::prove;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let theory = bootstrap();
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/application.judg"))?;
    let judgment = JudgmentFile::parse(&src, &theory)?.judgment().ok_or("no goal")?;
    let proof = prove(&theory, &judgment)?;

    let text = write_proof(&proof);
    println!("{} lines of proof; first three:", text.lines().count());
    for line in text.lines().take(3) {
        println!("  {line}");
    }

    let reloaded = parse_theory_file(&write_theory_file(&theory))?;
    let copy = read_proof(&text, reloaded.signature())?;
    let thm = check_proof(&copy, &reloaded)?;
    println!("verified {}", print_sequent(thm.sequent()));
    Ok(())
}
