//! Search hereditarily finite sets for counterexamples to the set-only lemmas
//! and to full contravariance of dependent products.
//!
//! `cargo run --release --example oracle_lemmas`

use settype::oracle::{contravariance_claim, enumerate_hf, falsify, run_suite, Bounds};
use settype::set_theory::bootstrap;

fn main() {
    let theory = bootstrap();
    let bounds = Bounds::default();
    println!("{} sets within {bounds}", enumerate_hf(bounds.max_rank, bounds.max_card).len());

    let report = run_suite(&theory, bounds);
    println!("{report}");

    if let Ok(Some(c)) = falsify(&contravariance_claim(), bounds) {
        println!("\ncontravariance fails at: {c}");
    }
}
