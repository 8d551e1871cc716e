use std::collections::BTreeMap;
use std::fmt::Write;

use super::elab::Scope;
use super::lexer::{tokenize_line, Tok};
use super::parser::Parser;
use super::print::{print_sequent, print_sort};
use super::{sequent, SyntaxError};
use crate::kernel::{Justification, Sequent, TheoremSource, Theory};
use crate::lfol::{Sort, Symbol};
use crate::set_theory::{add_derived, definitional_theory};

/// Read a theory file on top of the built-in definitions, then register every
/// kernel-derived helper whose ingredients the file provides.
///
/// Lines: `schematic ?X : SORT`, `axiom NAME : SEQUENT`,
/// `lemma NAME "CITATION" : SEQUENT`; `#` starts a comment.
pub fn parse_theory_file(src: &str) -> Result<Theory, SyntaxError> {
    let mut theory = definitional_theory();
    let mut schematics = BTreeMap::new();
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
            schematics.insert(n, p.sort()?);
        } else if p.eat_word("axiom") {
            let name = p.ident("an axiom name")?;
            p.expect(&Tok::Colon, "`:`")?;
            let seq = statement(&mut p, &theory, &schematics)?;
            theory = theory.register_axiom(&name, seq)?;
        } else if p.eat_word("lemma") {
            let name = p.ident("a lemma name")?;
            let Tok::Str(citation) = p.bump() else {
                return Err(p.error("a quoted citation"));
            };
            p.expect(&Tok::Colon, "`:`")?;
            let seq = statement(&mut p, &theory, &schematics)?;
            theory = theory.register_theorem(&name, seq, TheoremSource::RegisteredLemma(citation))?;
        } else {
            return Err(p.error("`schematic`, `axiom` or `lemma`"));
        }
    }
    Ok(add_derived(theory).0)
}

fn statement(p: &mut Parser, theory: &Theory, schematics: &BTreeMap<String, Sort>) -> Result<Sequent, SyntaxError> {
    let mut scope = Scope::new(theory.signature());
    scope.schematics = schematics.clone();
    let s = sequent(p, &scope)?;
    if !p.at_eof() {
        return Err(p.error("end of line"));
    }
    Ok(s)
}

/// The axioms and registered lemmas of `theory` in theory-file form.
/// Defining axioms and kernel-proved theorems are omitted: they are rebuilt on load.
pub fn write_theory_file(theory: &Theory) -> String {
    let mut out = String::new();
    let mut declared: BTreeMap<Symbol, Sort> = BTreeMap::new();
    let mut declare = |out: &mut String, schematics: &BTreeMap<Symbol, Sort>| {
        for (n, s) in schematics {
            let current = declared.get(n).cloned().unwrap_or(Sort::Ind);
            if current != *s {
                let _ = writeln!(out, "schematic ?{n} : {}", print_sort(s));
                declared.insert(n.clone(), s.clone());
            }
        }
    };
    let defining: Vec<String> = theory.definitions().map(|d| d.axiom_name()).collect();
    for (name, schema) in theory.axioms() {
        if defining.iter().any(|d| **d == **name) {
            continue;
        }
        declare(&mut out, &schema.schematics);
        let _ = writeln!(out, "axiom {name} : {}", print_sequent(&schema.sequent));
    }
    for (name, entry) in theory.theorems() {
        if let Justification::RegisteredLemma { citation } = &entry.justification {
            declare(&mut out, &entry.schema.schematics);
            let cite = citation.replace('\\', "\\\\").replace('"', "\\\"");
            let _ = writeln!(out, "lemma {name} \"{cite}\" : {}", print_sequent(&entry.schema.sequent));
        }
    }
    out
}
