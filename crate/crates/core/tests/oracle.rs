mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use settype::embedding::{mk_abs, mk_app, mk_arrow};
use settype::kernel::Sequent;
use settype::lfol::{beta_normalize, logic, Expr, Sort};
use settype::oracle::{
    contravariance_claim, enumerate_hf, eval, falsify, run_suite, Bounds, DefinableMap, EvalError, FalsifyError,
    HfEnv, HfSet, LIMITATION,
};
use settype::set_theory::{bootstrap, terms};

fn v(n: &str) -> Expr {
    Expr::var(n)
}

fn set_of(e: &Expr, env: &HfEnv) -> HfSet {
    eval(e, env, 3).unwrap().as_set().cloned().unwrap()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of HF sets of rank <= r with at most c elements at every level,
/// computed by the closed form: level r picks at most c of level r - 1.
fn count(r: u32, c: usize) -> usize {
    (0..r).fold(1, |n, _| (0..=c.min(n)).map(|k| binomial(n, k)).sum())
}

#[test]
fn membership_in_singleton() {
    let e = logic::mem(terms::empty(), terms::singleton(terms::empty()));
    assert_eq!(eval(&e, &HfEnv::new(), 3).unwrap().as_bool(), Some(true));
}

#[test]
fn beta_example_over_two_elements() {
    let env = HfEnv::new()
        .with_set("T", HfSet::ordinal(2))
        .with_set("t", HfSet::singleton(HfSet::empty()));
    let id = Expr::lam("x", Sort::Ind, Expr::bound(0));
    let lhs = mk_app(mk_abs(v("T"), id.clone()).unwrap(), v("t")).unwrap();
    let rhs = Expr::app(id, v("t"));
    assert_eq!(set_of(&lhs, &env), set_of(&rhs, &env));
    assert_eq!(set_of(&lhs, &env).to_string(), "{{}}");
}

#[test]
fn only_the_empty_set_satisfies_is_universe() {
    // The clauses of isUniverse all quantify over members, so the empty set
    // satisfies them vacuously. Every other set of rank <= 3 fails power closure.
    let universes: Vec<HfSet> = enumerate_hf(3, 4)
        .into_iter()
        .filter(|u| {
            let env = HfEnv::new().with_set("U", u.clone());
            eval(&terms::is_universe(v("U")), &env, 3).unwrap().as_bool().unwrap()
        })
        .collect();
    assert_eq!(universes, vec![HfSet::empty()]);
}

#[test]
fn enumeration_examples() {
    assert_eq!(enumerate_hf(0, 3), vec![HfSet::empty()]);
    assert_eq!(enumerate_hf(1, 1), vec![HfSet::empty(), HfSet::singleton(HfSet::empty())]);
    // Rank 2 by hand: {}, {{}}, {{{}}}, {{}, {{}}}.
    let two: Vec<String> = enumerate_hf(2, 4).iter().map(|s| s.to_string()).collect();
    assert_eq!(two, ["{}", "{{}}", "{{{}}}", "{{}, {{}}}"]);
    assert_eq!(enumerate_hf(3, 4).len(), 16);
}

#[test]
fn enumeration_counts_match_closed_form() {
    for r in 0..=4 {
        for c in 0..=4 {
            if r == 4 && c > 2 {
                continue;
            }
            assert_eq!(enumerate_hf(r, c).len(), count(r, c), "rank {r}, card {c}");
        }
    }
}

#[test]
fn enumeration_is_canonical_and_bounded() {
    let all = enumerate_hf(3, 3);
    assert!(all.windows(2).all(|w| w[0] < w[1]));
    assert!(all.iter().all(|s| s.rank() <= 3 && s.card() <= 3));
    assert!(all.windows(2).all(|w| (w[0].rank(), w[0].card()) <= (w[1].rank(), w[1].card())));
}

#[test]
fn unbound_symbols_are_reported() {
    let err = eval(&v("nope"), &HfEnv::new(), 2).unwrap_err();
    assert!(matches!(err, EvalError::UnboundSymbol(ref n) if n == "nope"), "{err}");
}

#[test]
fn typing_lemmas_have_no_counterexample() {
    let th = bootstrap();
    for name in ["T_app", "T_abs", "PiSubtyping", "BetaThm"] {
        let schema = &th.theorem(name).unwrap().schema.sequent;
        let found = falsify(schema, Bounds::default()).unwrap();
        assert!(found.is_none(), "{name}: {}", found.unwrap());
    }
}

#[test]
fn contravariance_is_refuted() {
    let c = falsify(&contravariance_claim(), Bounds::default()).unwrap().expect("a counterexample");
    let got: Vec<(String, String)> = c.env.bindings();
    let want = [("A", "{{}}"), ("A'", "{}"), ("B", "{{}}"), ("B'", "{{}}")];
    assert_eq!(got, want.map(|(a, b)| (a.to_string(), b.to_string())));
    let text = c.to_string();
    assert!(text.contains("A' = {}"));
    assert!(text.contains(LIMITATION));
}

#[test]
fn universe_schemas_are_unsupported() {
    let th = bootstrap();
    let schema = &th.theorem("T_sort").unwrap().schema.sequent;
    assert!(matches!(falsify(schema, Bounds::default()), Err(FalsifyError::UnsupportedSchema(_))));
}

#[test]
fn suite_passes_and_reports_its_limits() {
    let report = run_suite(&bootstrap(), Bounds::default());
    assert!(report.passed(), "{report}");
    assert!(report.entries.iter().any(|e| e.name == "full contravariance" && e.refutable));
    assert!(report.to_string().ends_with(LIMITATION));
}

#[test]
fn wrong_claims_are_found() {
    let (a, b) = (Expr::schematic("A", Sort::Ind), Expr::schematic("B", Sort::Ind));
    let claim = Sequent::new([terms::subset(a.clone(), b.clone())], [terms::subset(b, a)]);
    assert!(falsify(&claim, Bounds::default()).unwrap().is_some());
}

#[test]
fn kuratowski_pairs_are_injective() {
    let sets = enumerate_hf(2, 4);
    let env = |a: &HfSet, b: &HfSet| HfEnv::new().with_set("a", a.clone()).with_set("b", b.clone());
    let pair = terms::opair(v("a"), v("b"));
    let mut seen = std::collections::BTreeMap::new();
    for a in &sets {
        for b in &sets {
            let p = set_of(&pair, &env(a, b));
            assert_eq!(p, HfSet::opair(a.clone(), b.clone()));
            assert_eq!(p.as_opair(), Some((a.clone(), b.clone())));
            if let Some(prev) = seen.insert(p, (a.clone(), b.clone())) {
                panic!("{prev:?} and ({a}, {b}) share a pair");
            }
        }
    }
    assert_eq!(seen.len(), sets.len() * sets.len());
}

#[test]
fn function_space_cardinality() {
    let sets = enumerate_hf(2, 4);
    for a in &sets {
        for b in &sets {
            let env = HfEnv::new().with_set("A", a.clone()).with_set("B", b.clone());
            let pi = set_of(&mk_arrow(v("A"), v("B")).unwrap(), &env);
            assert_eq!(pi.card(), b.card().pow(a.card() as u32), "A = {a}, B = {b}");
        }
    }
}

#[test]
fn definable_maps_agree_with_their_terms() {
    for m in DefinableMap::ALL {
        for x in enumerate_hf(2, 4) {
            let env = HfEnv::new().with_set("x", x.clone());
            let e = Expr::app(m.to_expr(), v("x"));
            assert_eq!(set_of(&e, &env), m.apply(&x).unwrap(), "{} at {x}", m.name());
        }
    }
}

fn env_for(seeds: [usize; 4]) -> HfEnv {
    let sets = enumerate_hf(2, 4);
    HfEnv::new()
        .with_set("a", sets[seeds[0] % 4].clone())
        .with_set("b", sets[seeds[1] % 4].clone())
        .with_set("c", sets[seeds[2] % 4].clone())
        .with_map("f", DefinableMap::ALL[seeds[3] % DefinableMap::ALL.len()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn evaluation_respects_beta(seed in any::<u64>(), size in 0u32..4, prop in any::<bool>(), s in any::<[usize; 4]>()) {
        let e = common::random_term(&mut ChaCha8Rng::seed_from_u64(seed), size, 0, prop);
        let env = env_for(s);
        let direct = eval(&e, &env, 2);
        let normal = eval(&beta_normalize(&e), &env, 2);
        match (direct, normal) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
            (Err(x), Err(y)) => prop_assert_eq!(x.to_string(), y.to_string()),
            (x, y) => prop_assert!(false, "{:?} vs {:?}", x.err(), y.err()),
        }
    }

    #[test]
    fn epsilon_is_deterministic(seed in any::<u64>(), size in 0u32..3, s in any::<[usize; 4]>()) {
        let body = common::random_term(&mut ChaCha8Rng::seed_from_u64(seed), size, 1, true);
        let e = logic::eps_of(Expr::lam("z", Sort::Ind, body));
        let env = env_for(s);
        let first = eval(&e, &env, 2).map_err(|e| e.to_string());
        let second = eval(&e, &env, 2).map_err(|e| e.to_string());
        prop_assert_eq!(first, second);
    }
}
