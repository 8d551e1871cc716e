use std::collections::BTreeSet;

use super::lexer::is_identifier;
use crate::embedding::UniverseLevel;
use crate::kernel::Sequent;
use crate::lfol::{logic::*, Expr, Node, Sort};
use crate::set_theory::names;

const RESERVED: &[&str] = &[
    "in", "forall", "exists", "eps", "fun", "Pi", "getUniverse", "Ind", "Prop", "def", "var", "context", "goal",
    "schematic", "axiom", "lemma",
];

pub fn print_sort(s: &Sort) -> String {
    match s.split_arrow() {
        Some((a, b)) if a.is_arrow() => format!("({}) -> {}", print_sort(a), print_sort(b)),
        Some((a, b)) => format!("{} -> {}", print_sort(a), print_sort(b)),
        None if *s == Sort::Ind => "Ind".to_string(),
        None => "Prop".to_string(),
    }
}

/// Surface syntax for a closed term; the parser reads it back to an alpha-equal term.
pub fn print_expr(e: &Expr) -> String {
    let mut avoid: BTreeSet<String> = RESERVED.iter().map(|s| s.to_string()).collect();
    avoid.extend(e.free_vars().iter().map(|s| s.to_string()));
    avoid.extend(e.constants().keys().map(|s| s.to_string()));
    Printer { avoid }.go(e, &mut Vec::new(), 0)
}

pub fn print_sequent(s: &Sequent) -> String {
    let side = |fs: &[Expr]| fs.iter().map(print_expr).collect::<Vec<_>>().join(", ");
    match (s.left.is_empty(), s.right.is_empty()) {
        (true, _) => format!("|- {}", side(&s.right)),
        (false, true) => format!("{} |-", side(&s.left)),
        _ => format!("{} |- {}", side(&s.left), side(&s.right)),
    }
}

struct Printer {
    avoid: BTreeSet<String>,
}

const BINDER: u8 = 0;
const IFF_P: u8 = 1;
const IMPLIES_P: u8 = 2;
const OR_P: u8 = 3;
const AND_P: u8 = 4;
const NOT_P: u8 = 5;
const REL: u8 = 6;
const ARROW: u8 = 7;
const ATOM: u8 = 8;

fn paren(s: String, own: u8, ctx: u8) -> String {
    if own < ctx {
        format!("({s})")
    } else {
        s
    }
}

impl Printer {
    fn fresh(&self, hint: &str, names: &[String]) -> String {
        let base = if is_identifier(hint) && hint != "_" {
            hint.to_string()
        } else {
            "x".to_string()
        };
        let taken = |n: &str| self.avoid.contains(n) || names.iter().any(|m| m == n);
        if !taken(&base) {
            return base;
        }
        (1..).map(|i| format!("{base}{i}")).find(|n| !taken(n)).expect("unbounded")
    }

    /// `(name, body)` printed under a fresh binder.
    fn bind(&self, hint: &str, body: &Expr, names: &mut Vec<String>, prec: u8) -> (String, String) {
        let n = self.fresh(hint, names);
        names.push(n.clone());
        let b = self.go(body, names, prec);
        names.pop();
        (n, b)
    }

    fn call(&self, head: String, args: &[&Expr], names: &mut Vec<String>) -> String {
        let args: Vec<String> = args.iter().map(|a| self.go(a, names, BINDER)).collect();
        format!("{head}({})", args.join(", "))
    }

    fn go(&self, e: &Expr, names: &mut Vec<String>, ctx: u8) -> String {
        match e.node() {
            Node::Bound(i) => match names.len().checked_sub(*i as usize + 1) {
                Some(k) => names[k].clone(),
                None => format!("#{i}"),
            },
            Node::Free(n, _) => n.to_string(),
            Node::Schematic(n, _) => format!("?{n}"),
            Node::Const(n, _) => const_name(n),
            Node::Lam(hint, sort, body) => {
                let (n, b) = self.bind(hint, body, names, BINDER);
                let ann = if *sort == Sort::Ind {
                    String::new()
                } else {
                    format!(" : {}", print_sort(sort))
                };
                paren(format!("\\{n}{ann}. {b}"), BINDER, ctx)
            }
            Node::App(..) => self.application(e, names, ctx),
        }
    }

    fn application(&self, e: &Expr, names: &mut Vec<String>, ctx: u8) -> String {
        let (head, args) = e.spine();
        let Some(c) = head.as_const() else {
            let h = self.go(head, names, ATOM);
            return self.call(h, &args, names);
        };
        let infix = |op: &str, own: u8, lp: u8, rp: u8, names: &mut Vec<String>| {
            let l = self.go(args[0], names, lp);
            let r = self.go(args[1], names, rp);
            paren(format!("{l} {op} {r}"), own, ctx)
        };
        match (c, args.len()) {
            (FORALL | EXISTS | EPS, 1) if args[0].as_lam().is_some_and(|(_, s, _)| *s == Sort::Ind) => {
                let (hint, _, body) = args[0].as_lam().expect("checked");
                let (n, b) = self.bind(hint, body, names, BINDER);
                paren(format!("{c} {n}. {b}"), BINDER, ctx)
            }
            (IFF, 2) => infix("<=>", IFF_P, IMPLIES_P, IFF_P, names),
            (IMPLIES, 2) => infix("==>", IMPLIES_P, OR_P, IMPLIES_P, names),
            (OR, 2) => infix("\\/", OR_P, OR_P, AND_P, names),
            (AND, 2) => infix("/\\", AND_P, AND_P, NOT_P, names),
            (NOT, 1) => paren(format!("~{}", self.go(args[0], names, NOT_P)), NOT_P, ctx),
            (IN, 2) => infix("in", REL, ARROW, ARROW, names),
            (EQ, 2) => infix("=", REL, ARROW, ARROW, names),
            (names::SUBSET, 2) => infix("<=", REL, ARROW, ARROW, names),
            (names::ABS | names::PI, 2) if args[1].as_lam().is_some_and(|(_, s, _)| *s == Sort::Ind) => {
                let (hint, _, body) = args[1].as_lam().expect("checked");
                if c == names::PI && !body.has_loose_bound(0) {
                    let lowered = body.instantiate(&Expr::free("_", Sort::Ind));
                    let l = self.go(args[0], names, ATOM);
                    let r = self.go(&lowered, names, ARROW);
                    return paren(format!("{l} ->: {r}"), ARROW, ctx);
                }
                let dom = self.go(args[0], names, BINDER);
                let (n, b) = self.bind(hint, body, names, BINDER);
                let kw = if c == names::PI { "Pi" } else { "fun" };
                format!("{kw}({n} :: {dom}, {b})")
            }
            (names::UNIVERSE_OF, 1) => {
                let level = UniverseLevel::of(e);
                if level.height == 1 {
                    return self.call(const_name(c), &args, names);
                }
                format!("getUniverse({}, {})", level.height, self.go(&level.base, names, BINDER))
            }
            (names::APP, 2) => {
                let mut chain = vec![args[1]];
                let mut f = args[0];
                while let Some(a) = f.const_app(names::APP, 2) {
                    chain.push(a[1]);
                    f = a[0];
                }
                chain.reverse();
                let h = self.go(f, names, ATOM);
                self.call(h, &chain, names)
            }
            (_, 0) => const_name(c),
            _ => self.call(const_name(c), &args, names),
        }
    }
}

fn const_name(n: &str) -> String {
    if is_identifier(n) && !matches!(n, "fun" | "forall" | "exists" | "eps") {
        n.to_string()
    } else {
        format!("@{n}")
    }
}
