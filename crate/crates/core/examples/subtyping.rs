//! Inclusion between products: covariant in the codomain, invariant in the
//! domain.
//!
//! `cargo run --example subtyping`

use settype::set_theory::bootstrap;
use settype::syntax::JudgmentFile;
use settype::typecheck::prove;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let theory = bootstrap();
    for name in ["covariance", "inclusion", "cumulative", "contravariance"] {
        let path = format!("{}/examples/{name}.judg", env!("CARGO_MANIFEST_DIR"));
        let file = JudgmentFile::parse(&std::fs::read_to_string(path)?, &theory)?;
        let judgment = file.judgment().ok_or("no goal")?;
        match prove(&theory, &judgment) {
            Ok(p) => {
                let mut lemmas = p.theorems_used();
                lemmas.sort();
                lemmas.dedup();
                println!("{name:15} proved with {}", lemmas.join(", "));
            }
            Err(e) => println!("{name:15} rejected: {} ({e})", e.reason()),
        }
    }
    Ok(())
}
