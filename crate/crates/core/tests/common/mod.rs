#![allow(dead_code)]

use std::path::PathBuf;

use rand::Rng;
use settype::lfol::{logic, Expr, Sort};
use settype::set_theory::terms;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples")
}

pub fn corpus_file(name: &str) -> PathBuf {
    corpus_dir().join(format!("{name}.judg"))
}

pub fn read_corpus(name: &str) -> String {
    std::fs::read_to_string(corpus_file(name)).unwrap()
}

/// Judgments the checker proves.
pub const POSITIVE: [&str; 11] = [
    "comp",
    "identity",
    "dependent",
    "formation",
    "cumulative",
    "covariance",
    "universe",
    "inclusion",
    "application",
    "polymorphic_formation",
    "lookup",
];

/// Judgments the checker rejects, with the expected reason tag.
pub const NEGATIVE: [(&str, &str); 4] = [
    ("illtyped", "DomainCheckFailure"),
    ("contravariance", "SubsetFailure"),
    ("not_a_product", "NotAProductType"),
    ("domain_mismatch", "DomainMismatch"),
];

/// Every `.judg` file in the corpus, sorted by name.
pub fn all_corpus() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.extension()? == "judg").then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    names
}

/// A random well-sorted term of sort `Ind` (or `Prop` when `prop`) with
/// `depth` enclosing `Ind` binders. Free symbols: `a`, `b`, `c : Ind` and
/// `f : Ind -> Ind`.
pub fn random_term(rng: &mut impl Rng, size: u32, depth: u32, prop: bool) -> Expr {
    if prop {
        return match rng.gen_range(0..if size == 0 { 1 } else { 5 }) {
            0 => logic::mem(random_term(rng, 0, depth, false), random_term(rng, 0, depth, false)),
            1 => logic::and(random_term(rng, size - 1, depth, true), random_term(rng, size - 1, depth, true)),
            2 => logic::implies(random_term(rng, size - 1, depth, true), random_term(rng, size - 1, depth, true)),
            3 => logic::forall_of(Expr::lam("x", Sort::Ind, random_term(rng, size - 1, depth + 1, true))),
            _ => logic::eq(random_term(rng, size - 1, depth, false), random_term(rng, size - 1, depth, false)),
        };
    }
    let leaves = 3 + depth;
    if size == 0 {
        let i = rng.gen_range(0..leaves);
        return if i < 3 {
            Expr::var(["a", "b", "c"][i as usize])
        } else {
            Expr::bound(i - 3)
        };
    }
    match rng.gen_range(0..6) {
        0 => random_term(rng, 0, depth, false),
        1 => Expr::app(Expr::free("f", Sort::family()), random_term(rng, size - 1, depth, false)),
        2 => terms::pair(random_term(rng, size - 1, depth, false), random_term(rng, size - 1, depth, false)),
        3 => Expr::app(
            Expr::lam("y", Sort::Ind, random_term(rng, size - 1, depth + 1, false)),
            random_term(rng, size - 1, depth, false),
        ),
        4 => terms::power(random_term(rng, size - 1, depth, false)),
        _ => logic::eps_of(Expr::lam("z", Sort::Ind, random_term(rng, size - 1, depth + 1, true))),
    }
}
