//! Acceptance criteria, one line per criterion. Run with `cargo test --test acceptance`.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use settype::embedding::{get_universe, level_join, mk_abs, mk_app, mk_arrow, mk_pi, UniverseLevel};
use settype::kernel::{check_proof, ProofTree, Rule, Theory};
use settype::lfol::{alpha_eq, logic, sym, Expr, Node, Sort};
use settype::oracle::{contravariance_claim, enumerate_hf, eval, falsify, Bounds, DefinableMap, HfEnv, HfSet};
use settype::set_theory::{bootstrap, terms};
use settype::syntax::{read_proof, write_proof, JudgmentFile};
use settype::typecheck::{infer_full, prove, Assumption, Context};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn v(n: &str) -> Expr {
    Expr::var(n)
}

fn set_value(e: &Expr, env: &HfEnv) -> Result<HfSet, String> {
    let value = eval(e, env, 3).map_err(|e| e.to_string())?;
    value.as_set().cloned().ok_or_else(|| "not a set".to_string())
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["settype"];
    argv.extend_from_slice(args);
    let code = settype::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned())
}

fn composition(th: &Theory) -> Outcome {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let prf = dir.path().join("comp.prf");
    let file = common::corpus_file("comp");
    let (code, _) = run_cli(&["check", file.to_str().unwrap(), "--emit-proof", prf.to_str().unwrap()]);
    if code != 0 {
        return outcome(false, format!("check exited {code}"));
    }
    let (code, _) = run_cli(&["verify", prf.to_str().unwrap(), "--theory", "bootstrap"]);
    let elapsed = start.elapsed();
    if code != 0 {
        return outcome(false, format!("verify exited {code}"));
    }
    let proof = read_proof(&std::fs::read_to_string(&prf).unwrap(), th.signature()).unwrap();
    let used = proof.theorems_used();
    let missing: Vec<&str> = ["T_app", "T_abs", "UniverseCumulative"]
        .into_iter()
        .filter(|l| !used.contains(l))
        .collect();
    let step = terms::subset(get_universe(3, v("Typ")), get_universe(5, v("Typ")));
    let mut chain = false;
    proof.walk(&mut |n| chain |= n.conclusion.right.iter().any(|f| alpha_eq(f, &step)));
    let fast = elapsed < Duration::from_secs(5);
    outcome(
        missing.is_empty() && chain && fast,
        format!(
            "{} nodes, missing lemmas {missing:?}, Typ3 <= Typ5 step {}, {} (limit 5s)",
            proof.node_count(),
            if chain { "present" } else { "absent" },
            secs(elapsed)
        ),
    )
}

fn beta_exhaustive() -> Outcome {
    let start = Instant::now();
    let sets = enumerate_hf(3, 4);
    let mut cases = 0;
    let mut failures = Vec::new();
    for t in &sets {
        for m in DefinableMap::ALL {
            let lhs = mk_app(mk_abs(v("T"), m.to_expr()).unwrap(), v("t")).unwrap();
            let rhs = Expr::app(m.to_expr(), v("t"));
            for x in t.elems() {
                let env = HfEnv::new().with_set("T", t.clone()).with_set("t", x.clone());
                cases += 1;
                match (set_value(&lhs, &env), set_value(&rhs, &env)) {
                    (Ok(a), Ok(b)) if a == b => {}
                    (a, b) => failures.push(format!("T = {t}, L = {}, t = {x}: {a:?} vs {b:?}", m.name())),
                }
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty() && elapsed < Duration::from_secs(60),
        format!(
            "{cases} cases over {} sets, {} mismatches{}, {} (limit 60s)",
            sets.len(),
            failures.len(),
            failures.first().map(|f| format!(" (first: {f})")).unwrap_or_default(),
            secs(elapsed)
        ),
    )
}

fn typing_lemmas(th: &Theory) -> Outcome {
    let bounds = Bounds::default();
    let mut notes = Vec::new();
    let mut ok = true;
    for name in ["T_abs", "T_app"] {
        match falsify(&th.theorem(name).unwrap().schema.sequent, bounds) {
            Ok(None) => notes.push(format!("{name}: no counterexample")),
            Ok(Some(c)) => {
                ok = false;
                notes.push(format!("{name}: {c}"));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("{name}: {e}"));
            }
        }
    }
    // The same statements, read directly off the evaluated sets: for bodies B and
    // families L with B(x) in L(x) on all of T1, the graph lies in the product,
    // and every member of the product sends u in T1 into L(u).
    let mut checked = 0;
    let mut bad = 0;
    let mut premise_held = 0;
    for t1 in enumerate_hf(3, 4) {
        let env = HfEnv::new().with_set("T1", t1.clone());
        for l in DefinableMap::ALL {
            let pi = mk_pi(v("T1"), l.to_expr()).unwrap();
            for body in DefinableMap::ALL {
                let premise = t1
                    .elems()
                    .iter()
                    .all(|x| matches!((body.apply(x), l.apply(x)), (Ok(y), Ok(ly)) if ly.contains(&y)));
                if !premise {
                    continue;
                }
                premise_held += 1;
                let abs = mk_abs(v("T1"), body.to_expr()).unwrap();
                let member = eval(&logic::mem(abs, pi.clone()), &env, 3).ok().and_then(|r| r.as_bool());
                checked += 1;
                if member != Some(true) {
                    bad += 1;
                }
            }
            let Ok(funcs) = set_value(&pi, &env) else {
                bad += 1;
                continue;
            };
            for f in funcs.elems() {
                for u in t1.elems() {
                    let env = HfEnv::new().with_set("f", f.clone()).with_set("u", u.clone());
                    let got = set_value(&mk_app(v("f"), v("u")).unwrap(), &env);
                    let want = l.apply(u).map_err(|e| e.to_string());
                    checked += 1;
                    match (got, want) {
                        (Ok(y), Ok(ty)) if ty.contains(&y) => {}
                        _ => bad += 1,
                    }
                }
            }
        }
    }
    ok &= premise_held > 0;
    ok &= bad == 0;
    notes.push(format!("{checked} direct evaluations ({premise_held} body/family pairs meet the premise), {bad} failures"));
    outcome(ok, notes.join("; "))
}

fn pi_subtyping(th: &Theory) -> Outcome {
    let bounds = Bounds::default();
    let positive = falsify(&th.theorem("PiSubtyping").unwrap().schema.sequent, bounds);
    let contra = falsify(&contravariance_claim(), bounds);
    let pos_ok = matches!(positive, Ok(None));
    let (contra_ok, witness) = match &contra {
        Ok(Some(c)) => (
            true,
            c.env
                .bindings()
                .into_iter()
                .map(|(k, v)| format!("{k} = {v}"))
                .collect::<Vec<_>>()
                .join(", "),
        ),
        Ok(None) => (false, "none found".to_string()),
        Err(e) => (false, e.to_string()),
    };
    let pos_note = match positive {
        Ok(None) => "no counterexample".to_string(),
        Ok(Some(c)) => c.to_string(),
        Err(e) => e.to_string(),
    };
    outcome(
        pos_ok && contra_ok,
        format!("PiSubtyping: {pos_note}; contravariance counterexample: {witness}"),
    )
}

/// Types over the base atoms: atoms and arrows.
#[derive(Clone, PartialEq)]
enum Ty {
    Atom(&'static str),
    Arrow(Box<Ty>, Box<Ty>),
}

impl Ty {
    fn surface(&self) -> String {
        match self {
            Ty::Atom(a) => a.to_string(),
            Ty::Arrow(a, b) => format!("({} ->: {})", a.surface(), b.surface()),
        }
    }
}

fn atom(a: &'static str) -> Ty {
    Ty::Atom(a)
}

fn arrow(a: Ty, b: Ty) -> Ty {
    Ty::Arrow(Box::new(a), Box::new(b))
}

const ATOMS: [&str; 3] = ["A", "B", "C"];

fn random_ty(rng: &mut ChaCha8Rng, depth: u32) -> Ty {
    if depth == 0 || rng.gen_bool(0.6) {
        atom(ATOMS[rng.gen_range(0..3)])
    } else {
        arrow(random_ty(rng, depth - 1), random_ty(rng, depth - 1))
    }
}

/// Variables available everywhere, with their types.
fn globals() -> Vec<(&'static str, Ty)> {
    vec![
        ("a", atom("A")),
        ("b", atom("B")),
        ("c", atom("C")),
        ("f", arrow(atom("A"), atom("B"))),
        ("g", arrow(atom("B"), atom("C"))),
        ("h", arrow(atom("C"), atom("A"))),
    ]
}

struct Gen {
    rng: ChaCha8Rng,
    fresh: usize,
}

impl Gen {
    fn name(&mut self) -> String {
        self.fresh += 1;
        format!("x{}", self.fresh)
    }

    /// A term of type `ty` with nesting depth at most `depth`.
    fn term(&mut self, ty: &Ty, depth: u32, env: &[(String, Ty)]) -> String {
        let vars: Vec<&String> = env.iter().filter(|(_, t)| t == ty).map(|(n, _)| n).collect();
        let choice = if depth == 0 { 0 } else { self.rng.gen_range(0..4) };
        match choice {
            1 | 2 if depth > 0 => {
                // Application of a function whose codomain is `ty`.
                let funs: Vec<(String, Ty)> = env
                    .iter()
                    .filter_map(|(n, t)| match t {
                        Ty::Arrow(d, c) if **c == *ty => Some((n.clone(), (**d).clone())),
                        _ => None,
                    })
                    .collect();
                if let Some((fname, dom)) = funs.choose(&mut self.rng).cloned() {
                    let arg = self.term(&dom, depth - 1, env);
                    return format!("{fname}({arg})");
                }
                let dom = random_ty(&mut self.rng, 0);
                let x = self.name();
                let mut inner = env.to_vec();
                inner.push((x.clone(), dom.clone()));
                let body = self.term(ty, depth - 1, &inner);
                let arg = self.term(&dom, depth - 1, env);
                format!("fun({x} :: {}, {body})({arg})", dom.surface())
            }
            3 if matches!(ty, Ty::Arrow(..)) => self.lambda(ty, depth, env),
            _ => match (vars.choose(&mut self.rng), ty) {
                (Some(n), _) => n.to_string(),
                (None, Ty::Arrow(..)) => self.lambda(ty, depth, env),
                (None, Ty::Atom(_)) => {
                    let funs: Vec<(String, Ty)> = env
                        .iter()
                        .filter_map(|(n, t)| match t {
                            Ty::Arrow(d, c) if **c == *ty => Some((n.clone(), (**d).clone())),
                            _ => None,
                        })
                        .collect();
                    let (fname, dom) = funs[0].clone();
                    format!("{fname}({})", self.term(&dom, depth.saturating_sub(1), env))
                }
            },
        }
    }

    fn lambda(&mut self, ty: &Ty, depth: u32, env: &[(String, Ty)]) -> String {
        let Ty::Arrow(d, c) = ty else { unreachable!() };
        let x = self.name();
        let mut inner = env.to_vec();
        inner.push((x.clone(), (**d).clone()));
        let body = self.term(c, depth.saturating_sub(1), &inner);
        format!("fun({x} :: {}, {body})", d.surface())
    }
}

fn source(goal: &str) -> String {
    let mut src = String::from("var Typ, A, B, C, a, b, c, f, g, h\ncontext {\n  isUniverse(Typ),\n");
    for t in ATOMS {
        src.push_str(&format!("  {t} in Typ,\n"));
    }
    for (n, t) in globals() {
        src.push_str(&format!("  {n} in {},\n", t.surface()));
    }
    src.push_str(&format!("}}\ngoal {goal}\n"));
    src
}

fn env() -> Vec<(String, Ty)> {
    globals().into_iter().map(|(n, t)| (n.to_string(), t)).collect()
}

fn fuzz(th: &Theory) -> Outcome {
    let mut gen = Gen {
        rng: ChaCha8Rng::seed_from_u64(7),
        fresh: 0,
    };
    let mut good = 0;
    let mut first_bad = None;
    for i in 0..500 {
        let ty = random_ty(&mut gen.rng, 2);
        let term = gen.term(&ty, 4, &env());
        let src = source(&format!("{term} in {}", ty.surface()));
        let result = JudgmentFile::parse(&src, th)
            .map_err(|e| e.to_string())
            .and_then(|f| {
                let j = f.judgment().unwrap();
                let p = prove(th, &j).map_err(|e| e.to_string())?;
                let v = check_proof(&p, th).map_err(|e| e.to_string())?;
                if v.sequent().same_as(&j.sequent()) {
                    Ok(())
                } else {
                    Err("conclusion differs from the judgment".to_string())
                }
            });
        match result {
            Ok(()) => good += 1,
            Err(e) if first_bad.is_none() => first_bad = Some(format!("#{i} {term}: {e}")),
            Err(_) => {}
        }
    }

    let mut rejected = 0;
    let mut reasons: BTreeMap<&'static str, usize> = BTreeMap::new();
    let mut first_accepted = None;
    for i in 0..100 {
        // A function applied to an argument from a different type.
        let (fname, dom, cod) = match i % 3 {
            0 => ("f", atom("A"), atom("B")),
            1 => ("g", atom("B"), atom("C")),
            _ => ("h", atom("C"), atom("A")),
        };
        let wrong = loop {
            let t = random_ty(&mut gen.rng, 1);
            if t != dom {
                break t;
            }
        };
        let arg = gen.term(&wrong, 2, &env());
        let app = format!("{fname}({arg})");
        let (term, ty) = match gen.rng.gen_range(0..3) {
            0 => (app, cod),
            1 => {
                let x = gen.name();
                (format!("fun({x} :: A, {app})"), arrow(atom("A"), cod))
            }
            _ => {
                let outer = globals()
                    .into_iter()
                    .find(|(_, t)| matches!(t, Ty::Arrow(d, _) if **d == cod))
                    .unwrap();
                let Ty::Arrow(_, res) = outer.1 else { unreachable!() };
                (format!("{}({app})", outer.0), *res)
            }
        };
        let src = source(&format!("{term} in {}", ty.surface()));
        let file = JudgmentFile::parse(&src, th).expect("generated files parse");
        match prove(th, &file.judgment().unwrap()) {
            Err(e) => {
                rejected += 1;
                *reasons.entry(e.reason()).or_default() += 1;
            }
            Ok(_) if first_accepted.is_none() => first_accepted = Some(term),
            Ok(_) => {}
        }
    }
    let mut detail = format!("well-typed {good}/500 proved and kernel-checked; ill-typed {rejected}/100 rejected {reasons:?}");
    if let Some(b) = first_bad {
        detail.push_str(&format!("; first failure {b}"));
    }
    if let Some(a) = first_accepted {
        detail.push_str(&format!("; accepted ill-typed {a}"));
    }
    outcome(good == 500 && rejected == 100, detail)
}

/// Closed subterms of the proof's formulas and payloads, grouped by sort.
fn term_pool(tree: &ProofTree) -> BTreeMap<String, Vec<Expr>> {
    fn visit(e: &Expr, out: &mut BTreeMap<String, Vec<Expr>>) {
        if e.is_closed() {
            if let Ok(s) = e.sort() {
                let bucket = out.entry(s.to_string()).or_default();
                if bucket.len() < 400 && !bucket.iter().any(|x| x == e) {
                    bucket.push(e.clone());
                }
            }
        }
        match e.node() {
            Node::App(f, a) => {
                visit(f, out);
                visit(a, out);
            }
            Node::Lam(_, _, b) => visit(b, out),
            _ => {}
        }
    }
    let mut out = BTreeMap::new();
    tree.walk(&mut |n| {
        for f in n.conclusion.formulas() {
            visit(f, &mut out);
        }
    });
    out.entry(Sort::Ind.to_string()).or_default().push(v("stranger"));
    out
}

fn payload_paths(tree: &ProofTree) -> Vec<Vec<usize>> {
    fn go(t: &ProofTree, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let has_payload = match &t.rule {
            Rule::Weakening | Rule::Restate => false,
            Rule::ByAxiom { .. } | Rule::ByTheorem { .. } | Rule::InstSchema { .. } => true,
            _ => true,
        };
        if has_payload {
            out.push(path.clone());
        }
        for (i, p) in t.premises.iter().enumerate() {
            path.push(i);
            go(p, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    go(tree, &mut Vec::new(), &mut out);
    out
}

fn node_mut<'a>(tree: &'a mut ProofTree, path: &[usize]) -> &'a mut ProofTree {
    path.iter().fold(tree, |t, &i| &mut t.premises[i])
}

struct Mutator<'a> {
    rng: ChaCha8Rng,
    pool: BTreeMap<String, Vec<Expr>>,
    names: Vec<String>,
    theory: &'a Theory,
}

impl Mutator<'_> {
    fn other(&mut self, e: &Expr) -> Expr {
        let key = e.sort().map(|s| s.to_string()).unwrap_or_default();
        let candidates: Vec<Expr> = self
            .pool
            .get(&key)
            .map(|b| b.iter().filter(|x| !alpha_eq(x, e)).cloned().collect())
            .unwrap_or_default();
        match candidates.choose(&mut self.rng) {
            Some(x) => x.clone(),
            None if key == "Prop" => logic::bot(),
            None => Expr::free("stranger", e.sort().unwrap()),
        }
    }

    fn mutate(&mut self, rule: &mut Rule) {
        let pick = self.rng.gen_range(0..2usize);
        match rule {
            Rule::Hypothesis { phi } | Rule::Cut { phi } | Rule::LeftNot { phi } | Rule::RightNot { phi } => {
                *phi = self.other(phi)
            }
            Rule::LeftAnd { phi, psi }
            | Rule::RightAnd { phi, psi }
            | Rule::LeftOr { phi, psi }
            | Rule::RightOr { phi, psi }
            | Rule::LeftImplies { phi, psi }
            | Rule::RightImplies { phi, psi }
            | Rule::LeftIff { phi, psi }
            | Rule::RightIff { phi, psi } => {
                if pick == 0 {
                    *phi = self.other(phi)
                } else {
                    *psi = self.other(psi)
                }
            }
            Rule::LeftForall { body, term } | Rule::RightExists { body, term } => {
                if pick == 0 {
                    *body = self.other(body)
                } else {
                    *term = self.other(term)
                }
            }
            Rule::RightForall { body, eigen } | Rule::LeftExists { body, eigen } => {
                if pick == 0 {
                    *body = self.other(body)
                } else {
                    let names: Vec<&String> = self.names.iter().filter(|n| ***n != **eigen).collect();
                    *eigen = sym(names.choose(&mut self.rng).unwrap());
                }
            }
            Rule::LeftSubstEq { lhs, rhs, ctx } | Rule::RightSubstEq { lhs, rhs, ctx } => {
                match self.rng.gen_range(0..3) {
                    0 => *lhs = self.other(lhs),
                    1 => *rhs = self.other(rhs),
                    _ => *ctx = self.other(ctx),
                }
            }
            Rule::EpsilonIntro { body } => *body = self.other(body),
            Rule::ByAxiom { name, inst } | Rule::ByTheorem { name, inst } if pick == 1 || inst.is_empty() => {
                let is_axiom = matches!(rule_kind(name, self.theory), Some(true));
                let names: Vec<String> = if is_axiom {
                    self.theory.axioms().map(|(n, _)| n.to_string()).collect()
                } else {
                    self.theory.theorems().map(|(n, _)| n.to_string()).collect()
                };
                let others: Vec<&String> = names.iter().filter(|n| **n != **name).collect();
                *name = sym(others.choose(&mut self.rng).unwrap());
            }
            Rule::ByAxiom { inst, .. } | Rule::ByTheorem { inst, .. } | Rule::InstSchema { inst } => {
                let keys: Vec<_> = inst.keys().cloned().collect();
                if let Some(k) = keys.choose(&mut self.rng) {
                    let old = inst[k].clone();
                    inst.insert(k.clone(), self.other(&old));
                }
            }
            Rule::Weakening | Rule::Restate => {}
        }
    }
}

/// `Some(true)` for axioms, `Some(false)` for theorems.
fn rule_kind(name: &str, theory: &Theory) -> Option<bool> {
    if theory.axiom(name).is_some() {
        Some(true)
    } else {
        theory.theorem(name).map(|_| false)
    }
}

fn free_names(tree: &ProofTree) -> Vec<String> {
    let mut names = std::collections::BTreeSet::new();
    tree.walk(&mut |n| {
        for f in n.conclusion.formulas() {
            names.extend(f.free_vars().into_iter().map(|s| s.to_string()));
        }
    });
    let mut out: Vec<String> = names.into_iter().collect();
    out.push("fresh_eigen".to_string());
    out
}

fn mutation(th: &Theory) -> Outcome {
    let mut total = 0;
    let mut rejected = 0;
    let mut reverify_failures = 0;
    let mut accepted_examples = Vec::new();
    for (k, name) in common::POSITIVE.iter().take(10).enumerate() {
        let file = JudgmentFile::parse(&common::read_corpus(name), th).unwrap();
        let golden = prove(th, &file.judgment().unwrap()).unwrap();
        check_proof(&golden, th).unwrap();
        let paths = payload_paths(&golden);
        let mut m = Mutator {
            rng: ChaCha8Rng::seed_from_u64(1000 + k as u64),
            pool: term_pool(&golden),
            names: free_names(&golden),
            theory: th,
        };
        for _ in 0..200 {
            let path = paths.choose(&mut m.rng).unwrap().clone();
            let mut mutant = golden.clone();
            m.mutate(&mut node_mut(&mut mutant, &path).rule);
            total += 1;
            match check_proof(&mutant, th) {
                Err(_) => rejected += 1,
                Ok(_) => {
                    let text = write_proof(&mutant);
                    let again = read_proof(&text, th.signature())
                        .map_err(|e| e.to_string())
                        .and_then(|t| check_proof(&t, th).map_err(|e| e.to_string()));
                    if again.is_err() {
                        reverify_failures += 1;
                    }
                    if accepted_examples.len() < 3 {
                        accepted_examples.push(format!("{name} at {path:?}"));
                    }
                }
            }
        }
    }
    let rate = rejected as f64 / total as f64;
    outcome(
        rate >= 0.99 && reverify_failures == 0,
        format!(
            "{rejected}/{total} rejected ({:.2}%, limit 99%), {} accepted, {reverify_failures} failed re-verification{}",
            rate * 100.0,
            total - rejected,
            if accepted_examples.is_empty() {
                String::new()
            } else {
                format!(" (accepted: {})", accepted_examples.join(", "))
            }
        ),
    )
}

fn universe_levels(th: &Theory) -> Outcome {
    let typ = v("Typ");
    let mut bad = Vec::new();
    for m in 0..=6u32 {
        for n in 0..=6u32 {
            let a = UniverseLevel::new(typ.clone(), m);
            let b = UniverseLevel::new(typ.clone(), n);
            match level_join(&a, &b) {
                Ok(j) if j == UniverseLevel::new(typ.clone(), m.max(n))
                    && j.denotation() == get_universe(m.max(n), typ.clone()) => {}
                other => bad.push(format!("join({m}, {n}) = {other:?}")),
            }
            // The checker's formation rule lands at the same level.
            let ctx = Context::from_assumptions([
                Assumption::Universe(typ.clone()),
                Assumption::Member(v("A"), get_universe(m, typ.clone())),
                Assumption::Member(v("B"), get_universe(n, typ.clone())),
            ]);
            let pi = mk_arrow(v("A"), v("B")).unwrap();
            match infer_full(th, &ctx, &pi) {
                Ok(r) if alpha_eq(&r.inferred, &get_universe(m.max(n), typ.clone()))
                    && check_proof(&r.proof, th).is_ok() => {}
                Ok(r) => bad.push(format!("A ->: B at ({m}, {n}) inferred {:?}", r.inferred)),
                Err(e) => bad.push(format!("A ->: B at ({m}, {n}): {e}")),
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "49 pairs, join and formation inference; {} mismatches{}",
            bad.len(),
            bad.first().map(|b| format!(" (first: {b})")).unwrap_or_default()
        ),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut differing = Vec::new();
    let names = common::all_corpus();
    for name in &names {
        let file = common::corpus_file(name);
        let mut runs = Vec::new();
        for round in 0..2 {
            let prf = dir.path().join(format!("{name}.{round}.prf"));
            let (code, out) = run_cli(&["check", file.to_str().unwrap(), "--emit-proof", prf.to_str().unwrap()]);
            let out = out.replace(prf.to_str().unwrap(), "PROOF");
            runs.push((code, out, std::fs::read(&prf).ok()));
        }
        if runs[0] != runs[1] {
            differing.push(name.clone());
        }
    }
    outcome(
        differing.is_empty(),
        format!("{} corpus files checked twice, differing: {differing:?}", names.len()),
    )
}

fn main() {
    let th = bootstrap();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("composition end to end", Box::new(|| composition(&th))),
        ("beta-reduction, oracle-exhaustive", Box::new(beta_exhaustive)),
        ("T_abs and T_app, oracle-exhaustive", Box::new(|| typing_lemmas(&th))),
        ("Pi subtyping and contravariance", Box::new(|| pi_subtyping(&th))),
        ("soundness fuzz", Box::new(|| fuzz(&th))),
        ("kernel mutation suite", Box::new(|| mutation(&th))),
        ("universe bookkeeping", Box::new(|| universe_levels(&th))),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let o = run();
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("{tag} {name}: {} [{}]", o.detail, secs(start.elapsed()));
        if !o.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
