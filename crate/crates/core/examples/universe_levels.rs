//! Universe levels: joins, and the level inferred for a function space.
//!
//! `cargo run --example universe_levels`

use settype::embedding::{get_universe, level_join, mk_arrow, UniverseLevel};
use settype::lfol::Expr;
use settype::set_theory::bootstrap;
use settype::syntax::print_expr;
use settype::typecheck::{infer, subset, Assumption, Context};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let theory = bootstrap();
    let typ = Expr::var("Typ");

    let j = level_join(&UniverseLevel::new(typ.clone(), 2), &UniverseLevel::new(typ.clone(), 4))?;
    println!("join of levels 2 and 4: {}", print_expr(&j.denotation()));

    let ctx = Context::from_assumptions([
        Assumption::Universe(typ.clone()),
        Assumption::Member(Expr::var("A"), get_universe(1, typ.clone())),
        Assumption::Member(Expr::var("B"), get_universe(3, typ.clone())),
    ]);
    let arrow = mk_arrow(Expr::var("A"), Expr::var("B"))?;
    let (ty, proof) = infer(&theory, &ctx, &arrow)?;
    println!("{} : {}  ({} nodes)", print_expr(&arrow), print_expr(&ty), proof.node_count());

    let lift = subset(&theory, &ctx, &get_universe(1, typ.clone()), &get_universe(4, typ))?;
    println!("cumulativity 1 <= 4 uses {}", lift.theorems_used().join(", "));
    Ok(())
}
