use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::hf::{enumerate_hf, HfSet};
use crate::lfol::{logic, Expr, Node, Sort, Symbol};
use crate::set_theory::{names, terms};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("no value for `{0}`")]
    UnboundSymbol(String),
    #[error("constructed a set of rank {rank}, above the safety rank {bound}")]
    RankBoundExceeded { rank: u32, bound: u32 },
    #[error("{0} is too large to enumerate")]
    TooLarge(String),
    #[error("expected {expected}, got {found}")]
    Mistyped { expected: &'static str, found: String },
    #[error("loose bound variable {0}")]
    LooseBound(u32),
}

/// The fixed family of maps that family-sorted symbols range over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DefinableMap {
    Identity,
    ConstEmpty,
    Power,
    PairWithEmpty,
    Union,
}

impl DefinableMap {
    pub const ALL: [DefinableMap; 5] = [
        DefinableMap::Identity,
        DefinableMap::ConstEmpty,
        DefinableMap::Power,
        DefinableMap::PairWithEmpty,
        DefinableMap::Union,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DefinableMap::Identity => "identity",
            DefinableMap::ConstEmpty => "const-empty",
            DefinableMap::Power => "power",
            DefinableMap::PairWithEmpty => "pair-with-empty",
            DefinableMap::Union => "union",
        }
    }

    pub fn apply(self, x: &HfSet) -> Result<HfSet, EvalError> {
        Ok(match self {
            DefinableMap::Identity => x.clone(),
            DefinableMap::ConstEmpty => HfSet::empty(),
            DefinableMap::Power => x
                .power(POWER_BITS)
                .ok_or_else(|| EvalError::TooLarge(format!("power({x})")))?,
            DefinableMap::PairWithEmpty => HfSet::pair(x.clone(), HfSet::empty()),
            DefinableMap::Union => x.union(),
        })
    }

    /// The map as a closed term of sort `Ind -> Ind`.
    pub fn to_expr(self) -> Expr {
        Expr::lam_with("x", Sort::Ind, |x| match self {
            DefinableMap::Identity => x,
            DefinableMap::ConstEmpty => terms::empty(),
            DefinableMap::Power => terms::power(x),
            DefinableMap::PairWithEmpty => terms::pair(x, terms::empty()),
            DefinableMap::Union => terms::union(x),
        })
    }
}

impl fmt::Display for DefinableMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

const POWER_BITS: usize = 12;

/// Values for the free symbols of a term.
#[derive(Clone, Debug, Default)]
pub struct HfEnv {
    sets: BTreeMap<Symbol, HfSet>,
    maps: BTreeMap<Symbol, DefinableMap>,
}

impl HfEnv {
    pub fn new() -> HfEnv {
        HfEnv::default()
    }

    pub fn bind_set(&mut self, name: &str, s: HfSet) -> &mut HfEnv {
        self.sets.insert(Arc::from(name), s);
        self
    }

    pub fn bind_map(&mut self, name: &str, m: DefinableMap) -> &mut HfEnv {
        self.maps.insert(Arc::from(name), m);
        self
    }

    pub fn with_set(mut self, name: &str, s: HfSet) -> HfEnv {
        self.bind_set(name, s);
        self
    }

    pub fn with_map(mut self, name: &str, m: DefinableMap) -> HfEnv {
        self.bind_map(name, m);
        self
    }

    pub fn set(&self, name: &str) -> Option<&HfSet> {
        self.sets.get(name)
    }

    pub fn map(&self, name: &str) -> Option<DefinableMap> {
        self.maps.get(name).copied()
    }

    /// Bindings in name order, rendered in canonical notation.
    pub fn bindings(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = self
            .sets
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .chain(self.maps.iter().map(|(k, m)| (k.to_string(), m.name().to_string())))
            .collect();
        out.sort();
        out
    }
}

#[derive(Clone)]
pub enum Value {
    Set(HfSet),
    Bool(bool),
    Fun(Arc<Func>),
}

pub enum Func {
    Closure { body: Expr, stack: Vec<Value> },
    Partial { name: Symbol, args: Vec<Value> },
    Map(DefinableMap),
}

impl Value {
    pub fn as_set(&self) -> Option<&HfSet> {
        match self {
            Value::Set(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Value::Bool(b) => Some(*b),
            _ => None,
        }
    }

    fn describe(&self) -> String {
        match self {
            Value::Set(s) => s.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Fun(_) => "a function".to_string(),
        }
    }

    fn set(self) -> Result<HfSet, EvalError> {
        match self {
            Value::Set(s) => Ok(s),
            v => Err(EvalError::Mistyped {
                expected: "a set",
                found: v.describe(),
            }),
        }
    }

    fn bool(self) -> Result<bool, EvalError> {
        match self {
            Value::Bool(b) => Ok(b),
            v => Err(EvalError::Mistyped {
                expected: "a truth value",
                found: v.describe(),
            }),
        }
    }
}

impl PartialEq for Value {
    fn eq(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Set(a), Value::Set(b)) => a == b,
            (Value::Bool(a), Value::Bool(b)) => a == b,
            _ => false,
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EvalConfig {
    /// Unguarded quantifiers and `eps` range over sets of at most this rank.
    pub rank_bound: u32,
    /// Any constructed set of higher rank aborts evaluation.
    pub safety_rank: u32,
    /// Largest product of choices enumerated for `Pi` and `fnspace`.
    pub max_functions: usize,
}

impl EvalConfig {
    pub fn new(rank_bound: u32) -> EvalConfig {
        EvalConfig {
            rank_bound,
            safety_rank: 16,
            max_functions: 1 << 16,
        }
    }
}

/// Evaluate `e` with unguarded quantifiers bounded by `rank_bound`.
pub fn eval(e: &Expr, env: &HfEnv, rank_bound: u32) -> Result<Value, EvalError> {
    Evaluator::new(env, EvalConfig::new(rank_bound)).eval(e)
}

pub struct Evaluator<'a> {
    env: &'a HfEnv,
    config: EvalConfig,
    domain: OnceCell<Vec<HfSet>>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Quant {
    Forall,
    Exists,
    Eps,
}

impl<'a> Evaluator<'a> {
    pub fn new(env: &'a HfEnv, config: EvalConfig) -> Evaluator<'a> {
        Evaluator {
            env,
            config,
            domain: OnceCell::new(),
        }
    }

    pub fn eval(&self, e: &Expr) -> Result<Value, EvalError> {
        self.value(e, &mut Vec::new())
    }

    pub fn eval_set(&self, e: &Expr) -> Result<HfSet, EvalError> {
        self.eval(e)?.set()
    }

    pub fn eval_bool(&self, e: &Expr) -> Result<bool, EvalError> {
        self.eval(e)?.bool()
    }

    /// The quantifier domain.
    pub fn domain(&self) -> Result<&[HfSet], EvalError> {
        if self.config.rank_bound > 4 {
            return Err(EvalError::TooLarge(format!(
                "the domain of rank {}",
                self.config.rank_bound
            )));
        }
        Ok(self
            .domain
            .get_or_init(|| enumerate_hf(self.config.rank_bound, usize::MAX)))
    }

    fn checked(&self, s: HfSet) -> Result<Value, EvalError> {
        if s.rank() > self.config.safety_rank {
            return Err(EvalError::RankBoundExceeded {
                rank: s.rank(),
                bound: self.config.safety_rank,
            });
        }
        Ok(Value::Set(s))
    }

    fn lookup(&self, name: &Symbol) -> Result<Value, EvalError> {
        if let Some(s) = self.env.set(name) {
            return Ok(Value::Set(s.clone()));
        }
        if let Some(m) = self.env.map(name) {
            return Ok(Value::Fun(Arc::new(Func::Map(m))));
        }
        Err(EvalError::UnboundSymbol(name.to_string()))
    }

    fn value(&self, e: &Expr, stack: &mut Vec<Value>) -> Result<Value, EvalError> {
        match e.node() {
            Node::Bound(i) => {
                let i = *i as usize;
                stack
                    .len()
                    .checked_sub(i + 1)
                    .map(|k| stack[k].clone())
                    .ok_or(EvalError::LooseBound(i as u32))
            }
            Node::Free(n, _) | Node::Schematic(n, _) => self.lookup(n),
            Node::Const(n, _) => match arity(n) {
                Some(0) => self.builtin(n, Vec::new()),
                Some(_) => Ok(Value::Fun(Arc::new(Func::Partial {
                    name: n.clone(),
                    args: Vec::new(),
                }))),
                None => self.lookup(n),
            },
            Node::Lam(_, _, body) => Ok(Value::Fun(Arc::new(Func::Closure {
                body: body.clone(),
                stack: stack.clone(),
            }))),
            Node::App(..) => self.application(e, stack),
        }
    }

    fn application(&self, e: &Expr, stack: &mut Vec<Value>) -> Result<Value, EvalError> {
        let (head, args) = e.spine();
        if let Some(name) = head.as_const() {
            if let Some(n) = arity(name).filter(|n| *n == args.len()) {
                if let Some(v) = self.special(name, &args, stack)? {
                    return Ok(v);
                }
                let vals = args
                    .iter()
                    .map(|a| self.value(a, stack))
                    .collect::<Result<Vec<_>, _>>()?;
                debug_assert_eq!(vals.len(), n);
                return self.builtin(name, vals);
            }
        }
        let mut f = self.value(head, stack)?;
        for a in args {
            let v = self.value(a, stack)?;
            f = self.apply(&f, v)?;
        }
        Ok(f)
    }

    /// Constructs evaluated on their syntax: guarded quantifiers, short-circuit
    /// connectives and membership in function spaces.
    fn special(&self, name: &str, args: &[&Expr], stack: &mut Vec<Value>) -> Result<Option<Value>, EvalError> {
        use crate::lfol::logic::*;
        let q = match name {
            FORALL => Some(Quant::Forall),
            EXISTS => Some(Quant::Exists),
            EPS => Some(Quant::Eps),
            _ => None,
        };
        if let Some(q) = q {
            if let Some((_, _, body)) = args[0].as_lam() {
                return self.guarded(q, body, stack);
            }
            return Ok(None);
        }
        match name {
            AND | OR | IMPLIES => {
                let a = self.value(args[0], stack)?.bool()?;
                let short = match name {
                    AND => (!a).then_some(false),
                    OR => a.then_some(true),
                    _ => (!a).then_some(true),
                };
                if let Some(b) = short {
                    return Ok(Some(Value::Bool(b)));
                }
                Ok(Some(Value::Bool(self.value(args[1], stack)?.bool()?)))
            }
            IN => {
                let rhs = args[1];
                if let Some(p) = rhs.const_app(names::PI, 2) {
                    let f = self.value(args[0], stack)?.set()?;
                    let t1 = self.value(p[0], stack)?.set()?;
                    let fam = self.value(p[1], stack)?;
                    return Ok(Some(Value::Bool(self.pi_member(&f, &t1, &fam)?)));
                }
                if let Some(p) = rhs.const_app(names::FNSPACE, 2) {
                    let f = self.value(args[0], stack)?.set()?;
                    let a = self.value(p[0], stack)?.set()?;
                    let b = self.value(p[1], stack)?.set()?;
                    return Ok(Some(Value::Bool(fnspace_member(&f, &a, &b))));
                }
                Ok(None)
            }
            _ => Ok(None),
        }
    }

    /// A quantifier over `\x. body`; if the body is guarded by `x in S` with
    /// `S` independent of `x`, only the members of `S` are visited.
    fn guarded(&self, q: Quant, body: &Expr, stack: &mut Vec<Value>) -> Result<Option<Value>, EvalError> {
        let guard = match q {
            Quant::Forall => logic::as_implies(body),
            _ => logic::as_and(body),
        };
        let guard = guard.and_then(|(g, rest)| {
            let (x, s) = logic::as_mem(g)?;
            (matches!(x.node(), Node::Bound(0)) && !s.has_loose_bound(0)).then_some((s, rest))
        });
        let (candidates, test) = match guard {
            Some((s, rest)) => {
                stack.push(Value::Bool(false));
                let set = self.value(s, stack);
                stack.pop();
                (set?.set()?.elems().to_vec(), rest)
            }
            None => (self.domain()?.to_vec(), body),
        };
        let mut hit = None;
        for c in candidates {
            stack.push(Value::Set(c.clone()));
            let r = self.value(test, stack);
            stack.pop();
            let b = r?.bool()?;
            match q {
                Quant::Forall if !b => return Ok(Some(Value::Bool(false))),
                Quant::Exists if b => return Ok(Some(Value::Bool(true))),
                Quant::Eps if b => {
                    hit = Some(c);
                    break;
                }
                _ => {}
            }
        }
        Ok(Some(match q {
            Quant::Forall => Value::Bool(true),
            Quant::Exists => Value::Bool(false),
            Quant::Eps => Value::Set(hit.unwrap_or_else(HfSet::empty)),
        }))
    }

    pub fn apply(&self, f: &Value, arg: Value) -> Result<Value, EvalError> {
        let Value::Fun(func) = f else {
            return Err(EvalError::Mistyped {
                expected: "a function",
                found: f.describe(),
            });
        };
        match &**func {
            Func::Closure { body, stack } => {
                let mut stack = stack.clone();
                stack.push(arg);
                self.value(body, &mut stack)
            }
            Func::Map(m) => self.checked(m.apply(&arg.set()?)?),
            Func::Partial { name, args } => {
                let mut args = args.clone();
                args.push(arg);
                if Some(args.len()) == arity(name) {
                    self.builtin(name, args)
                } else {
                    Ok(Value::Fun(Arc::new(Func::Partial {
                        name: name.clone(),
                        args,
                    })))
                }
            }
        }
    }

    fn apply_set(&self, f: &Value, x: &HfSet) -> Result<HfSet, EvalError> {
        self.apply(f, Value::Set(x.clone()))?.set()
    }

    fn apply_bool(&self, f: &Value, x: &HfSet) -> Result<bool, EvalError> {
        self.apply(f, Value::Set(x.clone()))?.bool()
    }

    fn quantify(&self, q: Quant, p: &Value) -> Result<Value, EvalError> {
        let dom = self.domain()?;
        for c in dom {
            let b = self.apply_bool(p, c)?;
            match q {
                Quant::Forall if !b => return Ok(Value::Bool(false)),
                Quant::Exists if b => return Ok(Value::Bool(true)),
                Quant::Eps if b => return Ok(Value::Set(c.clone())),
                _ => {}
            }
        }
        Ok(match q {
            Quant::Forall => Value::Bool(true),
            Quant::Exists => Value::Bool(false),
            Quant::Eps => Value::Set(HfSet::empty()),
        })
    }

    fn builtin(&self, name: &str, args: Vec<Value>) -> Result<Value, EvalError> {
        use crate::lfol::logic::*;
        use names::*;
        let mut it = args.into_iter();
        let mut next = || it.next().expect("arity checked");
        let b = Value::Bool;
        match name {
            TOP => Ok(b(true)),
            BOT => Ok(b(false)),
            NOT => Ok(b(!next().bool()?)),
            AND | OR | IMPLIES | IFF => {
                let (x, y) = (next().bool()?, next().bool()?);
                Ok(b(match name {
                    AND => x && y,
                    OR => x || y,
                    IMPLIES => !x || y,
                    _ => x == y,
                }))
            }
            IN => {
                let x = next().set()?;
                Ok(b(next().set()?.contains(&x)))
            }
            EQ => Ok(b(next().set()? == next().set()?)),
            FORALL => self.quantify(Quant::Forall, &next()),
            EXISTS => self.quantify(Quant::Exists, &next()),
            EPS => self.quantify(Quant::Eps, &next()),
            EMPTY => Ok(Value::Set(HfSet::empty())),
            PAIR => {
                let x = next().set()?;
                self.checked(HfSet::pair(x, next().set()?))
            }
            UNION => Ok(Value::Set(next().set()?.union())),
            POWER => {
                let x = next().set()?;
                let p = x
                    .power(POWER_BITS)
                    .ok_or_else(|| EvalError::TooLarge(format!("power({x})")))?;
                self.checked(p)
            }
            SUBSET => {
                let x = next().set()?;
                Ok(b(x.is_subset(&next().set()?)))
            }
            SINGLETON => self.checked(HfSet::singleton(next().set()?)),
            OPAIR => {
                let x = next().set()?;
                self.checked(HfSet::opair(x, next().set()?))
            }
            SEP => {
                let a = next().set()?;
                let p = next();
                let mut err = None;
                let out = a.filter(|x| match self.apply_bool(&p, x) {
                    Ok(v) => v,
                    Err(e) => {
                        err.get_or_insert(e);
                        false
                    }
                });
                err.map_or(Ok(Value::Set(out)), Err)
            }
            IMAGE => {
                let a = next().set()?;
                let f = next();
                let img = a
                    .elems()
                    .iter()
                    .map(|x| self.apply_set(&f, x))
                    .collect::<Result<Vec<_>, _>>()?;
                self.checked(HfSet::from_elems(img))
            }
            PROD => {
                let (a, c) = (next().set()?, next().set()?);
                if a.card().saturating_mul(c.card()) > self.config.max_functions {
                    return Err(EvalError::TooLarge(format!("prod({a}, {c})")));
                }
                let pairs = a
                    .elems()
                    .iter()
                    .flat_map(|x| c.elems().iter().map(move |y| HfSet::opair(x.clone(), y.clone())));
                self.checked(HfSet::from_elems(pairs))
            }
            EXU => {
                let p = next();
                let mut count = 0;
                for c in self.domain()? {
                    if self.apply_bool(&p, c)? {
                        count += 1;
                        if count > 1 {
                            break;
                        }
                    }
                }
                Ok(b(count == 1))
            }
            IS_FUNC => {
                let f = next().set()?;
                Ok(b(is_func(&f, &next().set()?)))
            }
            RANGE => Ok(Value::Set(range(&next().set()?))),
            FNSPACE => {
                let (a, c) = (next().set()?, next().set()?);
                let choices = vec![c; a.card()];
                self.checked(self.functions(&a, &choices)?)
            }
            IS_GROTHENDIECK => Ok(b(self.is_grothendieck(&next().set()?)?)),
            IS_UNIVERSE => Ok(b(is_universe(&next().set()?))),
            UNIVERSE_OF => {
                let x = next().set()?;
                let hit = self
                    .domain()?
                    .iter()
                    .find(|u| u.contains(&x) && is_universe(u))
                    .cloned();
                Ok(Value::Set(hit.unwrap_or_else(HfSet::empty)))
            }
            ABS => {
                let t = next().set()?;
                let l = next();
                let graph = t
                    .elems()
                    .iter()
                    .map(|x| Ok(HfSet::opair(x.clone(), self.apply_set(&l, x)?)))
                    .collect::<Result<Vec<_>, EvalError>>()?;
                self.checked(HfSet::from_elems(graph))
            }
            APP => {
                let t = next().set()?;
                Ok(Value::Set(apply_graph(&t, &next().set()?)))
            }
            PI => {
                let t1 = next().set()?;
                let l = next();
                let choices = t1
                    .elems()
                    .iter()
                    .map(|x| self.apply_set(&l, x))
                    .collect::<Result<Vec<_>, _>>()?;
                self.checked(self.functions(&t1, &choices)?)
            }
            other => Err(EvalError::UnboundSymbol(other.to_string())),
        }
    }

    /// Every graph choosing, for the i-th member of `dom`, an element of `choices[i]`.
    fn functions(&self, dom: &HfSet, choices: &[HfSet]) -> Result<HfSet, EvalError> {
        let total = choices
            .iter()
            .try_fold(1usize, |acc, c| acc.checked_mul(c.card()))
            .filter(|n| *n <= self.config.max_functions)
            .ok_or_else(|| EvalError::TooLarge(format!("the function space on {dom}")))?;
        let mut out = Vec::with_capacity(total);
        let mut pick = vec![0usize; choices.len()];
        if total > 0 {
            loop {
                out.push(HfSet::from_elems(
                    dom.elems()
                        .iter()
                        .zip(&pick)
                        .zip(choices)
                        .map(|((x, &i), c)| HfSet::opair(x.clone(), c.elems()[i].clone())),
                ));
                let mut k = 0;
                while k < pick.len() {
                    pick[k] += 1;
                    if pick[k] < choices[k].card() {
                        break;
                    }
                    pick[k] = 0;
                    k += 1;
                }
                if k == pick.len() {
                    break;
                }
            }
        }
        Ok(HfSet::from_elems(out))
    }

    /// `f in Pi(T1)(L)`, decided from the defining property without building the product.
    fn pi_member(&self, f: &HfSet, t1: &HfSet, fam: &Value) -> Result<bool, EvalError> {
        if !graph_on(f, t1) {
            return Ok(false);
        }
        for x in t1.elems() {
            if !self.apply_set(fam, x)?.contains(&apply_graph(f, x)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn is_grothendieck(&self, u: &HfSet) -> Result<bool, EvalError> {
        if !basic_closure(u) || !u.elems().iter().all(|y| power_in(y, u)) {
            return Ok(false);
        }
        for a in u.elems() {
            let choices = vec![u.clone(); a.card()];
            for g in self.functions(a, &choices)?.elems() {
                if !u.contains(&range(g)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn arity(name: &str) -> Option<usize> {
    if let Some((params, _)) = terms::constant_sort(name) {
        return Some(params.len());
    }
    use crate::lfol::logic::*;
    Some(match name {
        TOP | BOT => 0,
        NOT | FORALL | EXISTS | EPS => 1,
        IN | EQ | AND | OR | IMPLIES | IFF => 2,
        _ => return None,
    })
}

/// Least `y` with `<u, y>` in `t`, or the empty set.
fn apply_graph(t: &HfSet, u: &HfSet) -> HfSet {
    t.elems()
        .iter()
        .filter_map(HfSet::as_opair)
        .filter(|(x, _)| x == u)
        .map(|(_, y)| y)
        .min()
        .unwrap_or_else(HfSet::empty)
}

fn range(f: &HfSet) -> HfSet {
    HfSet::from_elems(f.elems().iter().filter_map(HfSet::as_opair).map(|(_, y)| y))
}

fn is_func(f: &HfSet, t: &HfSet) -> bool {
    t.elems().iter().all(|x| {
        f.elems()
            .iter()
            .filter_map(HfSet::as_opair)
            .filter(|(a, _)| a == x)
            .count()
            == 1
    })
}

/// `f` is a set of pairs with first components in `t`, one for each member of `t`.
fn graph_on(f: &HfSet, t: &HfSet) -> bool {
    f.elems()
        .iter()
        .all(|p| p.as_opair().is_some_and(|(x, _)| t.contains(&x)))
        && is_func(f, t)
}

fn fnspace_member(f: &HfSet, a: &HfSet, b: &HfSet) -> bool {
    graph_on(f, a) && range(f).is_subset(b)
}

fn power_in(x: &HfSet, u: &HfSet) -> bool {
    x.power(POWER_BITS).is_some_and(|p| u.contains(&p))
}

/// Transitivity, pairing and union closure.
fn basic_closure(u: &HfSet) -> bool {
    let e = u.elems();
    e.iter().all(|x| x.is_subset(u) && u.contains(&x.union()))
        && e.iter()
            .all(|x| e.iter().all(|y| u.contains(&HfSet::pair(x.clone(), y.clone()))))
}

fn is_universe(u: &HfSet) -> bool {
    basic_closure(u)
        && u.elems().iter().all(|x| power_in(x, u))
        && u.elems().iter().all(|a| {
            u.elems()
                .iter()
                .all(|f| !fnspace_member(f, a, u) || u.contains(&range(f)))
        })
}
