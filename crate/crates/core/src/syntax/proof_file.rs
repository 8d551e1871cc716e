use std::collections::BTreeMap;
use std::fmt::Write;

use super::elab::Scope;
use super::lexer::{tokenize_line, Tok};
use super::parser::Parser;
use super::print::{print_expr, print_sequent, print_sort};
use super::{sequent, SyntaxError};
use crate::kernel::{Instantiation, ProofTree, Rule, RuleTag};
use crate::lfol::{sym, Expr, Node, Signature, Sort, Symbol};

fn collect(e: &Expr, frees: &mut BTreeMap<Symbol, Sort>, schems: &mut BTreeMap<Symbol, Sort>) {
    match e.node() {
        Node::Free(n, s) => {
            frees.entry(n.clone()).or_insert_with(|| s.clone());
        }
        Node::Schematic(n, s) => {
            schems.entry(n.clone()).or_insert_with(|| s.clone());
        }
        Node::App(f, a) => {
            collect(f, frees, schems);
            collect(a, frees, schems);
        }
        Node::Lam(_, _, b) => collect(b, frees, schems),
        _ => {}
    }
}

/// Payload fields of a rule, as `(key, term)` pairs.
fn payload(rule: &Rule) -> Vec<(String, Expr)> {
    let kv = |k: &str, e: &Expr| (k.to_string(), e.clone());
    let inst_fields = |inst: &Instantiation| inst.iter().map(|(k, v)| (format!("?{k}"), v.clone())).collect();
    match rule {
        Rule::Hypothesis { phi } | Rule::Cut { phi } | Rule::LeftNot { phi } | Rule::RightNot { phi } => {
            vec![kv("phi", phi)]
        }
        Rule::Weakening | Rule::Restate => vec![],
        Rule::InstSchema { inst } | Rule::ByAxiom { inst, .. } | Rule::ByTheorem { inst, .. } => inst_fields(inst),
        Rule::LeftAnd { phi, psi }
        | Rule::RightAnd { phi, psi }
        | Rule::LeftOr { phi, psi }
        | Rule::RightOr { phi, psi }
        | Rule::LeftImplies { phi, psi }
        | Rule::RightImplies { phi, psi }
        | Rule::LeftIff { phi, psi }
        | Rule::RightIff { phi, psi } => vec![kv("phi", phi), kv("psi", psi)],
        Rule::LeftForall { body, term } | Rule::RightExists { body, term } => vec![kv("body", body), kv("term", term)],
        Rule::RightForall { body, eigen } | Rule::LeftExists { body, eigen } => {
            vec![kv("body", body), kv("eigen", &Expr::free(eigen, Sort::Ind))]
        }
        Rule::LeftSubstEq { lhs, rhs, ctx } | Rule::RightSubstEq { lhs, rhs, ctx } => {
            vec![kv("lhs", lhs), kv("rhs", rhs), kv("ctx", ctx)]
        }
        Rule::EpsilonIntro { body } => vec![kv("body", body)],
    }
}

/// Serialize a proof, one node per line, premises before conclusions.
///
/// Node lines read `RULE [name] | SEQUENT | PREMISES | key := term; ...`, where
/// PREMISES lists the indices of earlier node lines or is `-`.
pub fn write_proof(tree: &ProofTree) -> String {
    let mut frees = BTreeMap::new();
    let mut schems = BTreeMap::new();
    tree.walk(&mut |n| {
        for f in n.conclusion.formulas() {
            collect(f, &mut frees, &mut schems);
        }
        for (_, e) in payload(&n.rule) {
            collect(&e, &mut frees, &mut schems);
        }
    });
    let mut out = String::from("# settype proof\n");
    for (n, s) in schems.iter().filter(|(_, s)| **s != Sort::Ind) {
        let _ = writeln!(out, "schematic ?{n} : {}", print_sort(s));
    }
    for (n, s) in frees.iter().filter(|(_, s)| **s != Sort::Ind) {
        let _ = writeln!(out, "var {n} : {}", print_sort(s));
    }
    let mut next = 0;
    emit(tree, &mut out, &mut next);
    out
}

fn emit(t: &ProofTree, out: &mut String, next: &mut usize) -> usize {
    let idx: Vec<String> = t.premises.iter().map(|p| emit(p, out, next).to_string()).collect();
    let name = match &t.rule {
        Rule::ByAxiom { name, .. } | Rule::ByTheorem { name, .. } => format!(" [{name}]"),
        _ => String::new(),
    };
    let premises = if idx.is_empty() { "-".to_string() } else { idx.join(" ") };
    let fields: Vec<String> = payload(&t.rule)
        .into_iter()
        .map(|(k, e)| format!("{k} := {}", print_expr(&e)))
        .collect();
    let _ = writeln!(
        out,
        "{}{name} | {} | {premises} | {}",
        t.rule.tag(),
        print_sequent(&t.conclusion),
        fields.join("; ")
    );
    *next += 1;
    *next - 1
}

/// Parse a proof written by [`write_proof`]; the last node line is the root.
pub fn read_proof(src: &str, signature: &Signature) -> Result<ProofTree, SyntaxError> {
    let mut scope = Scope::new(signature);
    scope.implicit_free = true;
    let mut nodes: Vec<Option<ProofTree>> = Vec::new();
    let mut last_pos = None;
    for (i, line) in src.lines().enumerate() {
        let mut p = Parser::new(tokenize_line(line, i + 1)?);
        if p.at_eof() {
            continue;
        }
        if p.eat_word("schematic") {
            let Tok::Schematic(n) = p.bump() else {
                return Err(p.error("a schematic name"));
            };
            p.expect(&Tok::Colon, "`:`")?;
            scope.schematics.insert(n, p.sort()?);
            continue;
        }
        if p.eat_word("var") {
            let n = p.ident("a variable name")?;
            p.expect(&Tok::Colon, "`:`")?;
            scope.vars.insert(n, p.sort()?);
            continue;
        }
        last_pos = Some(p.pos());
        let node = node_line(&mut p, &scope, &mut nodes)?;
        nodes.push(Some(node));
    }
    let pos = last_pos.ok_or_else(|| SyntaxError::Malformed {
        pos: super::Pos { line: 1, col: 1 },
        detail: "no proof nodes".into(),
    })?;
    let root = nodes.pop().flatten().expect("pushed");
    if let Some(i) = nodes.iter().position(Option::is_some) {
        return Err(SyntaxError::Malformed {
            pos,
            detail: format!("node {i} is not used by the root"),
        });
    }
    Ok(root)
}

fn node_line(p: &mut Parser, scope: &Scope, nodes: &mut [Option<ProofTree>]) -> Result<ProofTree, SyntaxError> {
    let pos = p.pos();
    let tag: RuleTag = p
        .ident("a rule name")?
        .parse()
        .map_err(|e: String| SyntaxError::Malformed { pos, detail: e })?;
    let mut name = None;
    if p.eat(&Tok::LBracket) {
        let mut n = String::new();
        loop {
            match p.bump() {
                Tok::RBracket => break,
                Tok::Ident(s) => n.push_str(&s),
                Tok::Dot => n.push('.'),
                _ => return Err(p.error("a theorem name")),
            }
        }
        name = Some(sym(&n));
    }
    p.expect(&Tok::Bar, "`|`")?;
    let conclusion = sequent(p, scope)?;
    p.expect(&Tok::Bar, "`|`")?;
    let mut premises = Vec::new();
    if !p.eat(&Tok::Dash) {
        while let Tok::Num(k) = p.peek().clone() {
            let kpos = p.pos();
            p.bump();
            let taken = nodes.get_mut(k as usize).and_then(Option::take);
            premises.push(taken.ok_or_else(|| SyntaxError::Malformed {
                pos: kpos,
                detail: format!("premise {k} is not an earlier, unused node"),
            })?);
        }
    }
    p.expect(&Tok::Bar, "`|`")?;
    let mut fields: BTreeMap<String, (Expr, super::Pos)> = BTreeMap::new();
    let mut inst = Instantiation::new();
    while !p.at_eof() {
        let fpos = p.pos();
        let key = match p.bump() {
            Tok::Ident(k) => k,
            Tok::Schematic(k) => format!("?{k}"),
            _ => return Err(SyntaxError::parse(fpos, "a field name", "something else")),
        };
        p.expect(&Tok::Assign, "`:=`")?;
        let ast = p.expr()?;
        let (e, _) = scope.term(&ast)?;
        if let Some(s) = key.strip_prefix('?') {
            inst.insert(sym(s), e);
        } else {
            fields.insert(key, (e, fpos));
        }
        if !p.eat(&Tok::Semi) {
            break;
        }
    }
    if !p.at_eof() {
        return Err(p.error("`;` or end of line"));
    }
    let mut field = |k: &str| {
        fields.remove(k).map(|(e, _)| e).ok_or_else(|| SyntaxError::Malformed {
            pos,
            detail: format!("{tag} needs a `{k}` field"),
        })
    };
    let eigen = |e: Expr| match e.as_free() {
        Some((n, _)) => Ok(n.clone()),
        None => Err(SyntaxError::Malformed {
            pos,
            detail: "eigen must be a variable name".into(),
        }),
    };
    let need_name = || {
        name.clone().ok_or_else(|| SyntaxError::Malformed {
            pos,
            detail: format!("{tag} needs a `[name]`"),
        })
    };
    let rule = match tag {
        RuleTag::Hypothesis => Rule::Hypothesis { phi: field("phi")? },
        RuleTag::Cut => Rule::Cut { phi: field("phi")? },
        RuleTag::Weakening => Rule::Weakening,
        RuleTag::Restate => Rule::Restate,
        RuleTag::InstSchema => Rule::InstSchema { inst },
        RuleTag::LeftNot => Rule::LeftNot { phi: field("phi")? },
        RuleTag::RightNot => Rule::RightNot { phi: field("phi")? },
        RuleTag::LeftAnd => Rule::LeftAnd { phi: field("phi")?, psi: field("psi")? },
        RuleTag::RightAnd => Rule::RightAnd { phi: field("phi")?, psi: field("psi")? },
        RuleTag::LeftOr => Rule::LeftOr { phi: field("phi")?, psi: field("psi")? },
        RuleTag::RightOr => Rule::RightOr { phi: field("phi")?, psi: field("psi")? },
        RuleTag::LeftImplies => Rule::LeftImplies { phi: field("phi")?, psi: field("psi")? },
        RuleTag::RightImplies => Rule::RightImplies { phi: field("phi")?, psi: field("psi")? },
        RuleTag::LeftIff => Rule::LeftIff { phi: field("phi")?, psi: field("psi")? },
        RuleTag::RightIff => Rule::RightIff { phi: field("phi")?, psi: field("psi")? },
        RuleTag::LeftForall => Rule::LeftForall { body: field("body")?, term: field("term")? },
        RuleTag::RightExists => Rule::RightExists { body: field("body")?, term: field("term")? },
        RuleTag::RightForall => Rule::RightForall { body: field("body")?, eigen: eigen(field("eigen")?)? },
        RuleTag::LeftExists => Rule::LeftExists { body: field("body")?, eigen: eigen(field("eigen")?)? },
        RuleTag::LeftSubstEq => Rule::LeftSubstEq {
            lhs: field("lhs")?,
            rhs: field("rhs")?,
            ctx: field("ctx")?,
        },
        RuleTag::RightSubstEq => Rule::RightSubstEq {
            lhs: field("lhs")?,
            rhs: field("rhs")?,
            ctx: field("ctx")?,
        },
        RuleTag::EpsilonIntro => Rule::EpsilonIntro { body: field("body")? },
        RuleTag::ByAxiom => Rule::ByAxiom { name: need_name()?, inst },
        RuleTag::ByTheorem => Rule::ByTheorem { name: need_name()?, inst },
    };
    if let Some(k) = fields.keys().next() {
        return Err(SyntaxError::Malformed {
            pos: fields[k].1,
            detail: format!("unexpected field `{k}` for {tag}"),
        });
    }
    Ok(ProofTree::new(rule, conclusion, premises))
}
