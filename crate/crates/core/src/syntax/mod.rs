//! Surface syntax: terms, judgment files (`.judg`), proof files (`.prf`) and
//! theory files.

mod elab;
mod lexer;
mod parser;
mod print;
mod proof_file;
mod theory_file;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub use elab::Scope;
pub use lexer::{is_identifier, Pos};
pub use parser::{Ast, AstKind, BinOp, Binder};
pub use print::{print_expr, print_sequent, print_sort};
pub use proof_file::{read_proof, write_proof};
pub use theory_file::{parse_theory_file, write_theory_file};

use crate::kernel::{Sequent, Theory, TheoryError};
use crate::lfol::{beta_normalize, Expr, Signature, Sort};
use crate::typecheck::{Assumption, Context, Judgment};
use lexer::{tokenize, Tok};
use parser::Parser;

#[derive(Debug, Clone, Error)]
pub enum SyntaxError {
    #[error("{pos}: expected {expected}, found {found}")]
    Parse { pos: Pos, expected: String, found: String },
    #[error("{pos}: cyclic definition {}", cycle.join(" -> "))]
    CyclicDefinition { cycle: Vec<String>, pos: Pos },
    #[error("{pos}: unbound identifier `{name}`")]
    UnboundIdentifier { name: String, pos: Pos },
    #[error("{pos}: {detail}")]
    Sort { pos: Pos, detail: String },
    #[error("{pos}: `{name}` is declared twice")]
    Duplicate { name: String, pos: Pos },
    #[error("{pos}: {detail}")]
    Malformed { pos: Pos, detail: String },
    #[error(transparent)]
    Theory(#[from] TheoryError),
}

impl SyntaxError {
    pub(crate) fn parse(pos: Pos, expected: &str, found: &str) -> SyntaxError {
        SyntaxError::Parse {
            pos,
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    /// Stable tag for machine-readable reports.
    pub fn reason(&self) -> &'static str {
        match self {
            SyntaxError::Parse { .. } => "ParseError",
            SyntaxError::CyclicDefinition { .. } => "CyclicDefinition",
            SyntaxError::UnboundIdentifier { .. } => "UnboundIdentifier",
            SyntaxError::Sort { .. } => "SortError",
            SyntaxError::Duplicate { .. } => "DuplicateDeclaration",
            SyntaxError::Malformed { .. } => "Malformed",
            SyntaxError::Theory(_) => "TheoryError",
        }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

fn finish(p: &Parser) -> Result<(), SyntaxError> {
    if p.at_eof() {
        Ok(())
    } else {
        Err(p.error("end of input"))
    }
}

pub fn parse_ast(src: &str) -> Result<Ast, SyntaxError> {
    let mut p = Parser::new(tokenize(src)?);
    let e = p.expr()?;
    finish(&p)?;
    Ok(e)
}

/// Parse a closed term; unknown identifiers become `Ind` free variables.
pub fn parse_expr(src: &str, signature: &Signature) -> Result<Expr, SyntaxError> {
    let mut scope = Scope::new(signature);
    scope.implicit_free = true;
    Ok(scope.term(&parse_ast(src)?)?.0)
}

/// Parse a closed term against `scope`.
pub fn parse_expr_in(src: &str, scope: &Scope) -> Result<(Expr, Sort), SyntaxError> {
    scope.term(&parse_ast(src)?)
}

/// `left |- right`, either side possibly empty.
pub(crate) fn sequent(p: &mut Parser, scope: &Scope) -> Result<Sequent, SyntaxError> {
    let prop = Sort::Prop;
    let side = |p: &mut Parser, stop: &dyn Fn(&Tok) -> bool| -> Result<Vec<Expr>, SyntaxError> {
        let mut out = Vec::new();
        if stop(p.peek()) {
            return Ok(out);
        }
        loop {
            let ast = p.expr()?;
            out.push(scope.term_of(&ast, &prop)?);
            if !p.eat(&Tok::Comma) {
                return Ok(out);
            }
        }
    };
    let left = side(p, &|t| *t == Tok::Turnstile)?;
    p.expect(&Tok::Turnstile, "`,` or `|-`")?;
    let right = side(p, &|t| matches!(t, Tok::Bar | Tok::Eof))?;
    Ok(Sequent::new(left, right))
}

pub fn parse_sequent(src: &str, signature: &Signature) -> Result<Sequent, SyntaxError> {
    let mut scope = Scope::new(signature);
    scope.implicit_free = true;
    let mut p = Parser::new(tokenize(src)?);
    let s = sequent(&mut p, &scope)?;
    finish(&p)?;
    Ok(s)
}

/// A parsed `.judg` file with definitions expanded.
#[derive(Clone, Debug)]
pub struct JudgmentFile {
    pub definitions: Vec<(String, Expr)>,
    pub vars: Vec<(String, Sort)>,
    pub context: Vec<Expr>,
    pub goal: Expr,
}

impl JudgmentFile {
    /// Parse against the signature of `theory`. Grammar:
    /// `def NAME = EXPR`, `var X, Y [: SORT]`, `context { EXPR, ... }`, `goal EXPR`.
    pub fn parse(src: &str, theory: &Theory) -> Result<JudgmentFile, SyntaxError> {
        let mut p = Parser::new(tokenize(src)?);
        let mut scope = Scope::new(theory.signature());
        let mut vars = Vec::new();
        let mut context_asts = Vec::new();
        let mut goal_ast = None;
        let mut defs = 0;
        while !p.at_eof() {
            let pos = p.pos();
            if p.eat_word("def") {
                let name = p.ident("a definition name")?;
                if scope.has_def(&name) || scope.vars.contains_key(&name) {
                    return Err(SyntaxError::Duplicate { name, pos });
                }
                p.expect(&Tok::Eq, "`=`")?;
                scope.add_def(&name, p.expr()?, defs);
                defs += 1;
            } else if p.eat_word("var") {
                let mut names = vec![(p.ident("a variable name")?, p.pos())];
                while p.eat(&Tok::Comma) {
                    names.push((p.ident("a variable name")?, p.pos()));
                }
                let sort = if p.eat(&Tok::Colon) { p.sort()? } else { Sort::Ind };
                for (n, npos) in names {
                    if scope.vars.contains_key(&n) || scope.has_def(&n) {
                        return Err(SyntaxError::Duplicate { name: n, pos: npos });
                    }
                    scope.vars.insert(n.clone(), sort.clone());
                    vars.push((n, sort.clone()));
                }
            } else if p.eat_word("context") {
                p.expect(&Tok::LBrace, "`{`")?;
                while !p.eat(&Tok::RBrace) {
                    context_asts.push(p.expr()?);
                    if !p.eat(&Tok::Comma) {
                        p.expect(&Tok::RBrace, "`,` or `}`")?;
                        break;
                    }
                }
            } else if p.eat_word("goal") {
                if goal_ast.is_some() {
                    return Err(SyntaxError::Duplicate {
                        name: "goal".into(),
                        pos,
                    });
                }
                goal_ast = Some(p.expr()?);
            } else {
                return Err(p.error("`def`, `var`, `context` or `goal`"));
            }
        }
        let goal_ast = goal_ast.ok_or_else(|| SyntaxError::Malformed {
            pos: p.pos(),
            detail: "missing `goal`".into(),
        })?;
        let definitions = scope.definitions()?;
        let mut context = Vec::new();
        for a in &context_asts {
            let f = scope.term_of(a, &Sort::Prop)?;
            if Assumption::from_formula(&f).is_none() {
                return Err(SyntaxError::Malformed {
                    pos: a.pos,
                    detail: "context entries are memberships, inclusions or isUniverse".into(),
                });
            }
            context.push(f);
        }
        let goal = scope.term_of(&goal_ast, &Sort::Prop)?;
        let file = JudgmentFile {
            definitions,
            vars,
            context,
            goal,
        };
        if file.judgment().is_none() {
            return Err(SyntaxError::Malformed {
                pos: goal_ast.pos,
                detail: "the goal must be a membership `e in T` or an inclusion `A <= B`".into(),
            });
        }
        Ok(file)
    }

    pub fn judgment(&self) -> Option<Judgment> {
        let context = Context::from_assumptions(
            self.context
                .iter()
                .map(|f| Assumption::from_formula(f).expect("validated on parse")),
        );
        match Assumption::from_formula(&self.goal)? {
            Assumption::Member(x, t) => Some(Judgment::membership(context, x, t)),
            Assumption::Inclusion(a, b) => Some(Judgment::inclusion(context, a, b)),
            Assumption::Universe(_) => None,
        }
    }

    /// Every term beta-normalized.
    pub fn normalized(&self) -> JudgmentFile {
        JudgmentFile {
            definitions: self
                .definitions
                .iter()
                .map(|(n, e)| (n.clone(), beta_normalize(e)))
                .collect(),
            vars: self.vars.clone(),
            context: self.context.iter().map(beta_normalize).collect(),
            goal: beta_normalize(&self.goal),
        }
    }

    /// Print with definitions expanded in the context and goal.
    pub fn print(&self) -> String {
        let mut out = String::new();
        let mut by_sort: BTreeMap<String, Vec<&str>> = BTreeMap::new();
        let mut order = Vec::new();
        for (n, s) in &self.vars {
            let key = print_sort(s);
            if !by_sort.contains_key(&key) {
                order.push(key.clone());
            }
            by_sort.entry(key).or_default().push(n);
        }
        for key in order {
            let names = by_sort[&key].join(", ");
            if key == "Ind" {
                out.push_str(&format!("var {names}\n"));
            } else {
                out.push_str(&format!("var {names} : {key}\n"));
            }
        }
        for (n, e) in &self.definitions {
            out.push_str(&format!("def {n} = {}\n", print_expr(e)));
        }
        out.push_str("context {\n");
        for f in &self.context {
            out.push_str(&format!("  {},\n", print_expr(f)));
        }
        out.push_str("}\n");
        out.push_str(&format!("goal {}\n", print_expr(&self.goal)));
        out
    }
}
