//! Build a small sequent-calculus proof by hand and watch the kernel accept
//! it, then reject a tampered copy with the path of the bad node.
//!
//! `cargo run --example kernel_basics`

use settype::kernel::{build, check_proof, Rule};
use settype::lfol::{logic, Expr};
use settype::set_theory::bootstrap;
use settype::syntax::print_sequent;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let theory = bootstrap();
    let (a, b) = (Expr::var("a"), Expr::var("b"));
    let p = logic::mem(a.clone(), b.clone());
    let q = logic::mem(b, a);

    // p, q |- p /\ q
    let left = build::weaken(build::hypothesis(p.clone()), &[q.clone()], &[]);
    let right = build::weaken(build::hypothesis(q.clone()), &[p.clone()], &[]);
    let both = build::right_and(left, right, p.clone(), q.clone());
    // p /\ q |- p /\ q, then |- p /\ q => p /\ q
    let unpacked = build::left_and(both, p.clone(), q.clone());
    let done = build::right_implies(unpacked, logic::and(p.clone(), q.clone()), logic::and(p.clone(), q));

    let thm = check_proof(&done, &theory)?;
    println!("accepted {}", print_sequent(thm.sequent()));

    let mut bad = done.clone();
    let mut node = &mut bad;
    while !node.premises.is_empty() {
        node = &mut node.premises[0];
    }
    node.rule = Rule::Hypothesis { phi: logic::bot() };
    match check_proof(&bad, &theory) {
        Ok(_) => println!("tampered proof accepted (unexpected)"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
