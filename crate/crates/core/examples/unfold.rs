//! Folded encodings against their literal set-theoretic form, and what the
//! finite model makes of them.
//!
//! `cargo run --example unfold`

use settype::embedding::{mk_abs, mk_app, unfold_encodings};
use settype::lfol::{beta_normalize, Expr};
use settype::oracle::{eval, DefinableMap, HfEnv, HfSet};
use settype::set_theory::{bootstrap, unfold_all};
use settype::syntax::print_expr;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let theory = bootstrap();
    let power = DefinableMap::Power.to_expr();
    let graph = mk_abs(Expr::var("T"), power.clone())?;
    let applied = mk_app(graph.clone(), Expr::var("t"))?;

    println!("folded     {}", print_expr(&applied));
    println!("encodings  {}", print_expr(&unfold_encodings(&theory, &applied)));
    println!("primitive  {} symbols", print_expr(&unfold_all(&theory, &applied)).len());

    let t = HfSet::pair(HfSet::empty(), HfSet::singleton(HfSet::empty()));
    let env = HfEnv::new().with_set("T", t.clone()).with_set("t", HfSet::empty());
    println!("T = {t}");
    println!("abs(T)(power)     = {:?}", eval(&graph, &env, 3)?);
    println!("app(abs(T), {{}})  = {:?}", eval(&applied, &env, 3)?);
    println!("power({{}})        = {:?}", eval(&beta_normalize(&Expr::app(power, Expr::var("t"))), &env, 3)?);
    Ok(())
}
