use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::eval::{DefinableMap, EvalConfig, EvalError, Evaluator, HfEnv};
use super::hf::{enumerate_hf, HfSet};
use crate::embedding::mk_arrow;
use crate::kernel::{Sequent, Theory};
use crate::lfol::{logic, Expr, Node, Sort, Symbol};
use crate::set_theory::{names, terms};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FalsifyError {
    #[error("unsupported schema: {0}")]
    UnsupportedSchema(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Search bounds: variables range over sets of rank at most `max_rank` whose
/// members, hereditarily, have at most `max_card` elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_rank: u32,
    pub max_card: usize,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds {
            max_rank: 3,
            max_card: 4,
        }
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank <= {}, cardinality <= {}", self.max_rank, self.max_card)
    }
}

/// What every report says about the reach of a bounded search.
pub const LIMITATION: &str = "finite search only: variables and unguarded quantifiers range over bounded \
     hereditarily finite sets, so the absence of a counterexample is not a proof";

/// Bindings under which every hypothesis holds and every conclusion fails.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub env: HfEnv,
    pub bounds: Bounds,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .env
            .bindings()
            .into_iter()
            .map(|(k, v)| format!("{k} = {v}"))
            .collect();
        write!(f, "counterexample ({}): {}", self.bounds, parts.join(", "))?;
        write!(f, "\nnote: {LIMITATION}")
    }
}

#[derive(Clone, Copy, PartialEq)]
enum VarKind {
    Set,
    Map,
}

struct Search<'a> {
    schema: &'a Sequent,
    vars: Vec<(Symbol, VarKind)>,
    /// Free symbols of each hypothesis.
    hyp_vars: Vec<Vec<Symbol>>,
    domain: Vec<HfSet>,
    config: EvalConfig,
}

fn symbols(e: &Expr, out: &mut BTreeMap<Symbol, Sort>) {
    match e.node() {
        Node::Free(n, s) | Node::Schematic(n, s) => {
            out.insert(n.clone(), s.clone());
        }
        Node::App(f, a) => {
            symbols(f, out);
            symbols(a, out);
        }
        Node::Lam(_, _, b) => symbols(b, out),
        _ => {}
    }
}

fn symbol_list(e: &Expr) -> Vec<Symbol> {
    let mut m = BTreeMap::new();
    symbols(e, &mut m);
    m.into_keys().collect()
}

/// Search for a counterexample to `schema`. Candidates for each variable are
/// tried in canonical order, so the result is the least one in that order.
pub fn falsify(schema: &Sequent, bounds: Bounds) -> Result<Option<Counterexample>, FalsifyError> {
    for n in [names::IS_UNIVERSE, names::IS_GROTHENDIECK, names::UNIVERSE_OF] {
        if schema.formulas().any(|f| f.mentions_const(n)) {
            return Err(FalsifyError::UnsupportedSchema(format!("mentions {n}")));
        }
    }
    let mut all = BTreeMap::new();
    for f in schema.formulas() {
        symbols(f, &mut all);
    }
    let mut vars = Vec::new();
    for (name, sort) in all {
        let kind = if sort == Sort::Ind {
            VarKind::Set
        } else if sort == Sort::family() {
            VarKind::Map
        } else {
            return Err(FalsifyError::UnsupportedSchema(format!(
                "`{name}` has sort {sort}, outside sets and definable maps"
            )));
        };
        vars.push((name, kind));
    }
    let search = Search {
        schema,
        hyp_vars: schema.left.iter().map(symbol_list).collect(),
        vars,
        domain: enumerate_hf(bounds.max_rank, bounds.max_card),
        config: EvalConfig::new(bounds.max_rank),
    };
    let found = search.run(&mut HfEnv::new(), &mut Vec::new())?;
    Ok(found.map(|env| Counterexample { env, bounds }))
}

impl Search<'_> {
    fn evaluator<'e>(&self, env: &'e HfEnv) -> Evaluator<'e> {
        Evaluator::new(env, self.config)
    }

    fn ready(&self, syms: &[Symbol], bound: &[Symbol]) -> bool {
        syms.iter().all(|s| bound.contains(s))
    }

    /// Hypotheses that just became decidable are all true.
    fn consistent(&self, env: &HfEnv, bound: &[Symbol], newest: &Symbol) -> Result<bool, EvalError> {
        let ev = self.evaluator(env);
        for (h, syms) in self.schema.left.iter().zip(&self.hyp_vars) {
            if syms.contains(newest) && self.ready(syms, bound) && !ev.eval_bool(h)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Candidates for `v` from a hypothesis `v in S` or `v = S` whose `S` is already determined.
    fn generator(&self, v: &Symbol, env: &HfEnv, bound: &[Symbol]) -> Result<Option<Vec<HfSet>>, EvalError> {
        let is_v = |e: &Expr| matches!(e.node(), Node::Free(n, _) | Node::Schematic(n, _) if n == v);
        for h in &self.schema.left {
            let pick = if let Some((x, s)) = logic::as_mem(h) {
                is_v(x).then_some((s, true))
            } else if let Some((a, b)) = logic::as_eq(h) {
                if is_v(a) {
                    Some((b, false))
                } else if is_v(b) {
                    Some((a, false))
                } else {
                    None
                }
            } else {
                None
            };
            if let Some((s, member)) = pick {
                if self.ready(&symbol_list(s), bound) {
                    let set = self.evaluator(env).eval_set(s)?;
                    return Ok(Some(if member { set.elems().to_vec() } else { vec![set] }));
                }
            }
        }
        Ok(None)
    }

    fn run(&self, env: &mut HfEnv, bound: &mut Vec<Symbol>) -> Result<Option<HfEnv>, EvalError> {
        let unbound: Vec<&(Symbol, VarKind)> = self.vars.iter().filter(|(n, _)| !bound.contains(n)).collect();
        let Some(&&(ref first, first_kind)) = unbound.first() else {
            let ev = self.evaluator(env);
            for c in &self.schema.right {
                if ev.eval_bool(c)? {
                    return Ok(None);
                }
            }
            return Ok(Some(env.clone()));
        };
        if first_kind == VarKind::Map {
            for m in DefinableMap::ALL {
                env.bind_map(first, m);
                if let Some(hit) = self.step(env, bound, first)? {
                    return Ok(Some(hit));
                }
            }
            return Ok(None);
        }
        let mut choice = None;
        for (v, kind) in &unbound {
            if *kind == VarKind::Set {
                if let Some(cands) = self.generator(v, env, bound)? {
                    choice = Some((v.clone(), cands));
                    break;
                }
            }
        }
        let (v, cands) = match choice {
            Some(c) => c,
            None => {
                let (v, _) = unbound
                    .iter()
                    .find(|(_, k)| *k == VarKind::Set)
                    .expect("set variable remains");
                (v.clone(), self.domain.clone())
            }
        };
        for c in cands {
            env.bind_set(&v, c);
            if let Some(hit) = self.step(env, bound, &v)? {
                return Ok(Some(hit));
            }
        }
        Ok(None)
    }

    fn step(&self, env: &mut HfEnv, bound: &mut Vec<Symbol>, v: &Symbol) -> Result<Option<HfEnv>, EvalError> {
        bound.push(v.clone());
        let out = if self.consistent(env, bound, v)? {
            self.run(env, bound)
        } else {
            Ok(None)
        };
        bound.pop();
        out
    }
}

/// `A' <= A, B <= B' |- (A -> B) <= (A' -> B')`, which fails for set-theoretic products.
pub fn contravariance_claim() -> Sequent {
    let v = |n: &str| Expr::schematic(n, Sort::Ind);
    let (a, ap, b, bp) = (v("A"), v("A'"), v("B"), v("B'"));
    let arrow = |x: &Expr, y: &Expr| mk_arrow(x.clone(), y.clone()).expect("Ind-sorted");
    Sequent::new(
        [terms::subset(ap.clone(), a.clone()), terms::subset(b.clone(), bp.clone())],
        [terms::subset(arrow(&a, &b), arrow(&ap, &bp))],
    )
}

/// True for schemas the oracle can search: no universe vocabulary and only
/// set or family schematics.
pub fn is_set_only(schema: &Sequent) -> bool {
    let uses_universes = [names::IS_UNIVERSE, names::IS_GROTHENDIECK, names::UNIVERSE_OF]
        .iter()
        .any(|n| schema.formulas().any(|f| f.mentions_const(n)));
    let mut syms = BTreeMap::new();
    for f in schema.formulas() {
        symbols(f, &mut syms);
    }
    !uses_universes && syms.values().all(|s| *s == Sort::Ind || *s == Sort::family())
}

pub struct SuiteEntry {
    pub name: String,
    /// Whether a counterexample is the expected outcome.
    pub refutable: bool,
    pub outcome: Result<Option<Counterexample>, FalsifyError>,
}

impl SuiteEntry {
    pub fn passed(&self) -> bool {
        matches!(&self.outcome, Ok(found) if found.is_some() == self.refutable)
    }
}

pub struct SuiteReport {
    pub bounds: Bounds,
    pub entries: Vec<SuiteEntry>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(SuiteEntry::passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "oracle suite ({})", self.bounds)?;
        for e in &self.entries {
            let status = if e.passed() { "ok" } else { "FAIL" };
            let detail = match &e.outcome {
                Ok(None) => "no counterexample".to_string(),
                Ok(Some(c)) => c.to_string().lines().next().unwrap_or_default().to_string(),
                Err(err) => err.to_string(),
            };
            let expect = if e.refutable { " (expected refutable)" } else { "" };
            writeln!(f, "  {status:4} {}{expect}: {detail}", e.name)?;
        }
        write!(f, "note: {LIMITATION}")
    }
}

/// Falsify every set-only theorem of `theory`, then the contravariance claim.
pub fn run_suite(theory: &Theory, bounds: Bounds) -> SuiteReport {
    let mut entries: Vec<SuiteEntry> = theory
        .theorems()
        .filter(|(_, t)| is_set_only(&t.schema.sequent))
        .map(|(name, t)| SuiteEntry {
            name: name.to_string(),
            refutable: false,
            outcome: falsify(&t.schema.sequent, bounds),
        })
        .collect();
    entries.push(SuiteEntry {
        name: "full contravariance".to_string(),
        refutable: true,
        outcome: falsify(&contravariance_claim(), bounds),
    });
    SuiteReport { bounds, entries }
}
