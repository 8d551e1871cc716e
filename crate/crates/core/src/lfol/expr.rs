use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use super::{LfolError, Sort};

pub type Symbol = Arc<str>;

pub fn sym(s: &str) -> Symbol {
    Arc::from(s)
}

/// A simply-sorted lambda term.
///
/// Bound variables are de Bruijn indices, so alpha-equivalent terms are
/// structurally equal. The binder name on [`Node::Lam`] is only a printing
/// hint and is ignored by equality and hashing.
#[derive(Clone)]
pub struct Expr(Arc<Inner>);

struct Inner {
    node: Node,
    /// Smallest `n` such that every bound index is `< depth + n`.
    loose: u32,
    hash: u64,
}

#[derive(Clone)]
pub enum Node {
    Bound(u32),
    Free(Symbol, Sort),
    Const(Symbol, Sort),
    Schematic(Symbol, Sort),
    App(Expr, Expr),
    Lam(Symbol, Sort, Expr),
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        use Node::*;
        match (self, other) {
            (Bound(a), Bound(b)) => a == b,
            (Free(a, s), Free(b, t)) | (Const(a, s), Const(b, t)) | (Schematic(a, s), Schematic(b, t)) => {
                a == b && s == t
            }
            (App(f, a), App(g, b)) => f == g && a == b,
            (Lam(_, s, a), Lam(_, t, b)) => s == t && a == b,
            _ => false,
        }
    }
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.hash == other.0.hash && self.0.node == other.0.node)
    }
}

impl Eq for Expr {}

impl Hash for Expr {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

fn structural_hash(node: &Node) -> u64 {
    let mut h = DefaultHasher::new();
    match node {
        Node::Bound(i) => (0u8, i).hash(&mut h),
        Node::Free(n, s) => (1u8, n, s).hash(&mut h),
        Node::Const(n, s) => (2u8, n, s).hash(&mut h),
        Node::Schematic(n, s) => (3u8, n, s).hash(&mut h),
        Node::App(f, a) => (4u8, f.0.hash, a.0.hash).hash(&mut h),
        Node::Lam(_, s, b) => (5u8, s, b.0.hash).hash(&mut h),
    }
    h.finish()
}

static PLACEHOLDER: AtomicU64 = AtomicU64::new(0);

impl Expr {
    fn mk(node: Node) -> Expr {
        let loose = match &node {
            Node::Bound(i) => i + 1,
            Node::App(f, a) => f.0.loose.max(a.0.loose),
            Node::Lam(_, _, b) => b.0.loose.saturating_sub(1),
            _ => 0,
        };
        let hash = structural_hash(&node);
        Expr(Arc::new(Inner { node, loose, hash }))
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    pub fn bound(index: u32) -> Expr {
        Expr::mk(Node::Bound(index))
    }

    pub fn free(name: &str, sort: Sort) -> Expr {
        Expr::mk(Node::Free(sym(name), sort))
    }

    /// A free individual variable.
    pub fn var(name: &str) -> Expr {
        Expr::free(name, Sort::Ind)
    }

    pub fn constant(name: &str, sort: Sort) -> Expr {
        Expr::mk(Node::Const(sym(name), sort))
    }

    pub fn schematic(name: &str, sort: Sort) -> Expr {
        Expr::mk(Node::Schematic(sym(name), sort))
    }

    pub fn app(f: Expr, a: Expr) -> Expr {
        Expr::mk(Node::App(f, a))
    }

    pub fn apps(f: Expr, args: impl IntoIterator<Item = Expr>) -> Expr {
        args.into_iter().fold(f, Expr::app)
    }

    pub fn lam(hint: &str, sort: Sort, body: Expr) -> Expr {
        Expr::mk(Node::Lam(sym(hint), sort, body))
    }

    /// Build `λhint. body(x)` by handing the closure a placeholder variable
    /// that is abstracted afterwards.
    pub fn lam_with(hint: &str, sort: Sort, body: impl FnOnce(Expr) -> Expr) -> Expr {
        let n = PLACEHOLDER.fetch_add(1, Ordering::Relaxed);
        let name = format!("\u{1}{hint}#{n}");
        let x = Expr::free(&name, sort.clone());
        let b = body(x);
        Expr::lam(hint, sort, b.abstract_free(&name))
    }

    /// `λname. self`, binding the free variable `name`.
    pub fn bind_free(&self, name: &str, sort: Sort) -> Expr {
        Expr::lam(name, sort, self.abstract_free(name))
    }

    pub fn loose_bound(&self) -> u32 {
        self.0.loose
    }

    /// Whether bound index `idx` (relative to this term) occurs loose.
    pub fn has_loose_bound(&self, idx: u32) -> bool {
        if self.0.loose <= idx {
            return false;
        }
        match self.node() {
            Node::Bound(i) => *i == idx,
            Node::App(f, a) => f.has_loose_bound(idx) || a.has_loose_bound(idx),
            Node::Lam(_, _, b) => b.has_loose_bound(idx + 1),
            _ => false,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.0.loose == 0
    }

    pub fn ptr_eq(&self, other: &Expr) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn as_free(&self) -> Option<(&Symbol, &Sort)> {
        match self.node() {
            Node::Free(n, s) => Some((n, s)),
            _ => None,
        }
    }

    pub fn as_const(&self) -> Option<&str> {
        match self.node() {
            Node::Const(n, _) => Some(n),
            _ => None,
        }
    }

    pub fn as_app(&self) -> Option<(&Expr, &Expr)> {
        match self.node() {
            Node::App(f, a) => Some((f, a)),
            _ => None,
        }
    }

    pub fn as_lam(&self) -> Option<(&Symbol, &Sort, &Expr)> {
        match self.node() {
            Node::Lam(h, s, b) => Some((h, s, b)),
            _ => None,
        }
    }

    /// Head and arguments of an application spine.
    pub fn spine(&self) -> (&Expr, Vec<&Expr>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Node::App(f, a) = cur.node() {
            args.push(a);
            cur = f;
        }
        args.reverse();
        (cur, args)
    }

    /// If `self` is the constant `name` applied to exactly `n` arguments, return them.
    pub fn const_app(&self, name: &str, n: usize) -> Option<Vec<&Expr>> {
        let (head, args) = self.spine();
        match head.node() {
            Node::Const(c, _) if &**c == name && args.len() == n => Some(args),
            _ => None,
        }
    }

    /// Increase loose bound indices `>= cutoff` by `by`.
    pub(crate) fn lift(&self, by: u32, cutoff: u32) -> Expr {
        if by == 0 || self.0.loose <= cutoff {
            return self.clone();
        }
        match self.node() {
            Node::Bound(i) if *i >= cutoff => Expr::bound(i + by),
            Node::App(f, a) => Expr::app(f.lift(by, cutoff), a.lift(by, cutoff)),
            Node::Lam(h, s, b) => Expr::mk(Node::Lam(h.clone(), s.clone(), b.lift(by, cutoff + 1))),
            _ => self.clone(),
        }
    }

    fn subst_bound(&self, depth: u32, arg: &Expr) -> Expr {
        if self.0.loose <= depth {
            return self.clone();
        }
        match self.node() {
            Node::Bound(i) => {
                if *i == depth {
                    arg.lift(depth, 0)
                } else if *i > depth {
                    Expr::bound(i - 1)
                } else {
                    self.clone()
                }
            }
            Node::App(f, a) => Expr::app(f.subst_bound(depth, arg), a.subst_bound(depth, arg)),
            Node::Lam(h, s, b) => Expr::mk(Node::Lam(h.clone(), s.clone(), b.subst_bound(depth + 1, arg))),
            _ => self.clone(),
        }
    }

    /// Open a binder body: replace bound index 0 with `arg`.
    pub fn instantiate(&self, arg: &Expr) -> Expr {
        self.subst_bound(0, arg)
    }

    /// Apply a lambda to an argument without further normalization.
    /// Non-lambdas produce an application node.
    pub fn apply_lam(&self, arg: &Expr) -> Expr {
        match self.node() {
            Node::Lam(_, _, body) => body.instantiate(arg),
            _ => Expr::app(self.clone(), arg.clone()),
        }
    }

    /// Replace the free variable `name` with a bound index at the current depth.
    pub fn abstract_free(&self, name: &str) -> Expr {
        self.abstract_at(name, 0)
    }

    fn abstract_at(&self, name: &str, depth: u32) -> Expr {
        match self.node() {
            Node::Free(n, _) if &**n == name => Expr::bound(depth),
            Node::App(f, a) => {
                let (f2, a2) = (f.abstract_at(name, depth), a.abstract_at(name, depth));
                if f2.ptr_eq(f) && a2.ptr_eq(a) {
                    self.clone()
                } else {
                    Expr::app(f2, a2)
                }
            }
            Node::Lam(h, s, b) => {
                let b2 = b.abstract_at(name, depth + 1);
                if b2.ptr_eq(b) {
                    self.clone()
                } else {
                    Expr::mk(Node::Lam(h.clone(), s.clone(), b2))
                }
            }
            _ => self.clone(),
        }
    }

    fn replace_leaves(&self, depth: u32, f: &dyn Fn(&Node) -> Option<Expr>) -> Expr {
        match self.node() {
            Node::App(g, a) => {
                let (g2, a2) = (g.replace_leaves(depth, f), a.replace_leaves(depth, f));
                if g2.ptr_eq(g) && a2.ptr_eq(a) {
                    self.clone()
                } else {
                    Expr::app(g2, a2)
                }
            }
            Node::Lam(h, s, b) => {
                let b2 = b.replace_leaves(depth + 1, f);
                if b2.ptr_eq(b) {
                    self.clone()
                } else {
                    Expr::mk(Node::Lam(h.clone(), s.clone(), b2))
                }
            }
            leaf => match f(leaf) {
                Some(r) => r.lift(depth, 0),
                None => self.clone(),
            },
        }
    }

    /// Capture-avoiding substitution of a free variable or schematic symbol.
    ///
    /// Loose bound indices in `replacement` are shifted when the substitution
    /// passes under a binder, so they keep pointing at the same enclosing binder.
    pub fn substitute(&self, target: &Expr, replacement: &Expr) -> Result<Expr, LfolError> {
        let (name, sort, schematic) = match target.node() {
            Node::Free(n, s) => (n.clone(), s.clone(), false),
            Node::Schematic(n, s) => (n.clone(), s.clone(), true),
            _ => return Err(LfolError::NotSubstitutable),
        };
        let found = replacement.sort()?;
        if found != sort {
            return Err(LfolError::SortMismatch {
                expected: sort,
                found,
                context: format!("substituting for {name}"),
            });
        }
        Ok(self.replace_leaves(0, &|leaf| match leaf {
            Node::Free(n, s) if !schematic && *n == name && *s == sort => Some(replacement.clone()),
            Node::Schematic(n, s) if schematic && *n == name && *s == sort => Some(replacement.clone()),
            _ => None,
        }))
    }

    /// Replace constants for which `f` returns a closed expression.
    pub fn replace_consts(&self, f: &dyn Fn(&str, &Sort) -> Option<Expr>) -> Expr {
        self.replace_leaves(0, &|leaf| match leaf {
            Node::Const(n, s) => f(n, s),
            _ => None,
        })
    }

    /// Simultaneous replacement of schematic symbols, by name. No normalization.
    pub fn instantiate_schematics(&self, map: &BTreeMap<Symbol, Expr>) -> Expr {
        if map.is_empty() {
            return self.clone();
        }
        self.replace_leaves(0, &|leaf| match leaf {
            Node::Schematic(n, _) => map.get(n).cloned(),
            _ => None,
        })
    }

    fn visit(&self, f: &mut dyn FnMut(&Expr)) {
        f(self);
        match self.node() {
            Node::App(g, a) => {
                g.visit(f);
                a.visit(f);
            }
            Node::Lam(_, _, b) => b.visit(f),
            _ => {}
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.visit(&mut |e| {
            if let Node::Free(n, _) = e.node() {
                out.insert(n.clone());
            }
        });
        out
    }

    pub fn occurs_free(&self, name: &str) -> bool {
        let mut hit = false;
        self.visit(&mut |e| {
            if let Node::Free(n, _) = e.node() {
                hit |= &**n == name;
            }
        });
        hit
    }

    pub fn schematics(&self) -> BTreeMap<Symbol, Sort> {
        let mut out = BTreeMap::new();
        self.visit(&mut |e| {
            if let Node::Schematic(n, s) = e.node() {
                out.insert(n.clone(), s.clone());
            }
        });
        out
    }

    pub fn constants(&self) -> BTreeMap<Symbol, Sort> {
        let mut out = BTreeMap::new();
        self.visit(&mut |e| {
            if let Node::Const(n, s) = e.node() {
                out.insert(n.clone(), s.clone());
            }
        });
        out
    }

    pub fn mentions_const(&self, name: &str) -> bool {
        let mut hit = false;
        self.visit(&mut |e| {
            if let Node::Const(n, _) = e.node() {
                hit |= &**n == name;
            }
        });
        hit
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    /// Sort of a closed expression, trusting the sorts carried by symbols.
    pub fn sort(&self) -> Result<Sort, LfolError> {
        self.sort_in(&mut Vec::new())
    }

    pub(crate) fn sort_in(&self, binders: &mut Vec<Sort>) -> Result<Sort, LfolError> {
        match self.node() {
            Node::Bound(i) => {
                let i = *i as usize;
                if i < binders.len() {
                    Ok(binders[binders.len() - 1 - i].clone())
                } else {
                    Err(LfolError::LooseBound(i as u32))
                }
            }
            Node::Free(_, s) | Node::Const(_, s) | Node::Schematic(_, s) => Ok(s.clone()),
            Node::App(f, a) => {
                let fs = f.sort_in(binders)?;
                let as_ = a.sort_in(binders)?;
                match fs {
                    Sort::Arrow(from, to) => {
                        if *from == as_ {
                            Ok((*to).clone())
                        } else {
                            Err(LfolError::SortMismatch {
                                expected: (*from).clone(),
                                found: as_,
                                context: "application argument".into(),
                            })
                        }
                    }
                    other => Err(LfolError::NotAFunction(other)),
                }
            }
            Node::Lam(_, s, b) => {
                binders.push(s.clone());
                let r = b.sort_in(binders);
                binders.pop();
                Ok(Sort::arrow(s.clone(), r?))
            }
        }
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Bound(i) => write!(f, "#{i}"),
            Node::Free(n, _) => write!(f, "{n}"),
            Node::Const(n, _) => write!(f, "{n}"),
            Node::Schematic(n, _) => write!(f, "?{n}"),
            Node::App(g, a) => write!(f, "({g:?} {a:?})"),
            Node::Lam(h, _, b) => write!(f, "(\\{h}. {b:?})"),
        }
    }
}
