mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use settype::kernel::build::{self, inst};
use settype::kernel::{
    check_proof, Justification, NodePath, ProofError, ProofTree, Rule, RuleTag, Sequent, TheoremSource, Theory,
    TheoryError,
};
use settype::lfol::{logic, Expr, Signature, Sort};
use settype::set_theory::bootstrap;

fn p() -> Expr {
    logic::mem(Expr::var("a"), Expr::var("b"))
}

fn q() -> Expr {
    logic::mem(Expr::var("b"), Expr::var("c"))
}

fn small_theory() -> Theory {
    Theory::new(Signature::logical())
        .register_axiom("ax_p", Sequent::goal(p()))
        .unwrap()
        .register_axiom("ax_pq", Sequent::new([p()], [q()]))
        .unwrap()
}

fn violation(err: &ProofError) -> (RuleTag, Vec<usize>) {
    match err {
        ProofError::RuleViolation { rule, path, .. } => (*rule, path.0.clone()),
        other => panic!("expected a rule violation, got {other}"),
    }
}

#[test]
fn hypothesis_is_valid() {
    let th = small_theory();
    let v = check_proof(&build::hypothesis(p()), &th).unwrap();
    assert!(v.sequent().same_as(&Sequent::new([p()], [p()])));
}

#[test]
fn cut_is_valid() {
    let th = small_theory();
    let left = build::by_axiom(&th, "ax_p", inst([])).unwrap();
    let right = build::by_axiom(&th, "ax_pq", inst([])).unwrap();
    let v = check_proof(&build::cut(left, right, p()), &th).unwrap();
    assert!(v.sequent().same_as(&Sequent::goal(q())));
}

#[test]
fn cut_pivot_must_occur_in_right_premise() {
    let th = small_theory();
    let left = build::by_axiom(&th, "ax_p", inst([])).unwrap();
    let right = build::hypothesis(q());
    let tree = ProofTree::new(Rule::Cut { phi: p() }, Sequent::new([q()], [q()]), vec![left, right]);
    let err = check_proof(&tree, &th).unwrap_err();
    assert_eq!(violation(&err), (RuleTag::Cut, vec![]));
}

#[test]
fn errors_name_the_failing_node() {
    let th = small_theory();
    let bad_leaf = ProofTree::new(Rule::Hypothesis { phi: p() }, Sequent::new([p()], [q()]), vec![]);
    let tree = build::weaken(bad_leaf, &[q()], &[]);
    let err = check_proof(&tree, &th).unwrap_err();
    assert_eq!(violation(&err), (RuleTag::Hypothesis, vec![0]));
    assert_eq!(err.path(), &NodePath(vec![0]));
    assert_eq!(err.path().to_string(), "root.0");
}

#[test]
fn propositional_rules() {
    let th = small_theory();
    let (a, b) = (p(), q());
    let conj = build::left_and(build::hypothesis_in(&[b.clone()], a.clone()), a.clone(), b.clone());
    check_proof(&conj, &th).unwrap();
    let intro = build::right_and(build::hypothesis(a.clone()), build::hypothesis(b.clone()), a.clone(), b.clone());
    let v = check_proof(&intro, &th).unwrap();
    assert!(v.sequent().same_as(&Sequent::new([a.clone(), b.clone()], [logic::and(a.clone(), b.clone())])));
    let imp = build::right_implies(build::hypothesis(a.clone()), a.clone(), a.clone());
    let v = check_proof(&imp, &th).unwrap();
    assert!(v.sequent().same_as(&Sequent::goal(logic::implies(a.clone(), a.clone()))));
    let mp = build::mp(imp, build::by_axiom(&th, "ax_p", inst([])).unwrap()).unwrap();
    check_proof(&mp, &th).unwrap();
    let one = build::hypothesis(a.clone());
    let missing = build::right_or(one.clone(), a.clone(), b.clone());
    assert_eq!(violation(&check_proof(&missing, &th).unwrap_err()).0, RuleTag::RightOr);
    let or = build::right_or(build::weaken(one, &[], &[b.clone()]), a.clone(), b.clone());
    check_proof(&or, &th).unwrap();
    let lem = build::right_not(build::hypothesis(a.clone()), a.clone());
    let v = check_proof(&build::right_or(lem, a.clone(), logic::not(a.clone())), &th).unwrap();
    assert!(v.sequent().same_as(&Sequent::goal(logic::or(a.clone(), logic::not(a)))));
}

#[test]
fn quantifier_rules() {
    let th = small_theory();
    let body = Expr::lam("x", Sort::Ind, logic::mem(Expr::bound(0), Expr::var("b")));
    let inst_e = logic::mem(Expr::var("e"), Expr::var("b"));
    let all = logic::forall_of(body.clone());
    let elim = build::left_forall(build::hypothesis(inst_e.clone()), body.clone(), Expr::var("e"));
    let v = check_proof(&elim, &th).unwrap();
    assert!(v.sequent().same_as(&Sequent::new([all.clone()], [inst_e.clone()])));
    let intro = build::right_forall(elim, body.clone(), "e");
    let v = check_proof(&intro, &th).unwrap();
    assert!(v.sequent().same_as(&Sequent::new([all.clone()], [all.clone()])));

    let ex = build::right_exists(build::hypothesis(inst_e.clone()), body.clone(), Expr::var("e"));
    check_proof(&ex, &th).unwrap();
    let eps = build::epsilon_intro(build::left_exists(ex, body.clone(), "e"), body.clone());
    let v = check_proof(&eps, &th).unwrap();
    let chosen = logic::mem(logic::eps_of(body.clone()), Expr::var("b"));
    assert!(v.sequent().same_as(&Sequent::new([logic::exists_of(body)], [chosen])));
}

#[test]
fn eigenvariable_must_be_fresh() {
    let th = small_theory();
    let body = Expr::lam("x", Sort::Ind, logic::mem(Expr::bound(0), Expr::var("b")));
    let hyp = build::hypothesis(logic::mem(Expr::var("e"), Expr::var("b")));
    let err = check_proof(&build::right_forall(hyp.clone(), body.clone(), "e"), &th).unwrap_err();
    assert_eq!(violation(&err).0, RuleTag::RightForall);
    let err = check_proof(&build::left_exists(hyp, body, "e"), &th).unwrap_err();
    assert_eq!(violation(&err).0, RuleTag::LeftExists);
}

#[test]
fn equality_substitution() {
    let th = small_theory();
    let ctx = Expr::lam("z", Sort::Ind, logic::mem(Expr::bound(0), Expr::var("c")));
    let from = logic::mem(Expr::var("a"), Expr::var("c"));
    let to = logic::mem(Expr::var("b"), Expr::var("c"));
    let step = build::right_subst_eq(build::hypothesis(from.clone()), Expr::var("a"), Expr::var("b"), ctx);
    let v = check_proof(&step, &th).unwrap();
    let eq = logic::eq(Expr::var("a"), Expr::var("b"));
    assert!(v.sequent().same_as(&Sequent::new([from, eq], [to])));
}

#[test]
fn restate_accepts_beta_variants_only() {
    let th = small_theory();
    let hyp = build::hypothesis(p());
    let redex = Expr::app(
        Expr::lam("x", Sort::Ind, logic::mem(Expr::bound(0), Expr::var("b"))),
        Expr::var("a"),
    );
    // Conclusions must be beta-normal, so the redex is rejected outright.
    let bad = build::restate(hyp.clone(), Sequent::new([redex], [p()]));
    assert!(check_proof(&bad, &th).is_err());
    let other = build::restate(hyp, Sequent::new([q()], [p()]));
    assert_eq!(violation(&check_proof(&other, &th).unwrap_err()).0, RuleTag::Restate);
}

#[test]
fn unknown_theorem_is_reported() {
    let th = small_theory();
    let leaf = ProofTree::new(
        Rule::ByTheorem {
            name: settype::lfol::sym("nope"),
            inst: inst([]),
        },
        Sequent::goal(p()),
        vec![],
    );
    assert!(matches!(check_proof(&leaf, &th), Err(ProofError::UnknownTheorem { .. })));
}

#[test]
fn register_axiom_errors() {
    let th = small_theory();
    assert!(matches!(
        th.register_axiom("ax_p", Sequent::goal(q())),
        Err(TheoryError::DuplicateName(n)) if n == "ax_p"
    ));
    let ind_on_left = Sequent::new([Expr::var("a")], [p()]);
    assert!(matches!(
        th.register_axiom("bad", ind_on_left),
        Err(TheoryError::SortMismatch { .. })
    ));
}

#[test]
fn register_theorem_variants() {
    let th = small_theory();
    let left = build::by_axiom(&th, "ax_p", inst([])).unwrap();
    let right = build::by_axiom(&th, "ax_pq", inst([])).unwrap();
    let proof = build::cut(left, right, p());
    let th2 = th
        .register_theorem("q_holds", Sequent::goal(q()), TheoremSource::Proof(proof.clone()))
        .unwrap();
    assert_eq!(th2.theorem("q_holds").unwrap().justification, Justification::KernelProved);

    let e = th
        .register_theorem("wrong", Sequent::goal(p()), TheoremSource::Proof(proof))
        .unwrap_err();
    assert!(matches!(e, TheoryError::ConclusionMismatch { .. }), "{e}");

    let boot = bootstrap();
    match &boot.theorem("T_app").unwrap().justification {
        Justification::RegisteredLemma { citation } => assert!(citation.contains("app(f)(u)")),
        other => panic!("T_app is {other:?}"),
    }
}

#[test]
fn checking_is_deterministic() {
    let th = small_theory();
    let left = build::by_axiom(&th, "ax_p", inst([])).unwrap();
    let tree = build::cut(left, build::hypothesis(q()), p());
    let a = check_proof(&tree, &th).map_err(|e| e.to_string());
    let b = check_proof(&tree, &th).map_err(|e| e.to_string());
    assert_eq!(format!("{a:?}"), format!("{b:?}"));
}

fn closed_ind(seed: u64) -> Expr {
    common::random_term(&mut ChaCha8Rng::seed_from_u64(seed), 2, 0, false)
}

fn family(seed: u64) -> Expr {
    let body = common::random_term(&mut ChaCha8Rng::seed_from_u64(seed), 2, 1, false);
    Expr::lam("x", Sort::Ind, body)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn instantiating_a_validated_schema_stays_valid(s1 in any::<u64>(), s2 in any::<u64>()) {
        let th = bootstrap();
        let (x, y) = (Expr::schematic("X", Sort::Ind), Expr::schematic("Y", Sort::Ind));
        let schema = build::hypothesis(logic::mem(x, y));
        check_proof(&schema, &th).unwrap();
        let leaf = build::inst_schema(schema, inst([("X", closed_ind(s1)), ("Y", closed_ind(s2))]));
        let r = check_proof(&leaf, &th);
        prop_assert!(r.is_ok(), "{:?}", r.err());
    }

    #[test]
    fn registered_lemma_leaves_check(s in any::<[u64; 4]>()) {
        let th = bootstrap();
        let i = inst([("f", closed_ind(s[0])), ("u", closed_ind(s[1])), ("T1", closed_ind(s[2])), ("L", family(s[3]))]);
        let leaf = build::by_theorem(&th, "T_app", i).unwrap();
        prop_assert!(check_proof(&leaf, &th).is_ok());
    }
}
