use std::cell::RefCell;
use std::collections::BTreeMap;

use super::lexer::Pos;
use super::parser::{Ast, AstKind, BinOp, Binder};
use super::SyntaxError;
use crate::embedding::{constant_family, get_universe};
use crate::lfol::{logic, Expr, Signature, Sort};
use crate::set_theory::terms;

/// Name resolution for surface terms: bound variables, then declared
/// variables, then definitions, then constants of the signature.
pub struct Scope<'a> {
    pub signature: &'a Signature,
    pub vars: BTreeMap<String, Sort>,
    pub schematics: BTreeMap<String, Sort>,
    /// Unknown identifiers become `Ind` free variables instead of errors.
    pub implicit_free: bool,
    defs: BTreeMap<String, (Ast, usize)>,
    expanded: RefCell<BTreeMap<String, (Expr, Sort)>>,
    in_progress: RefCell<Vec<String>>,
}

impl<'a> Scope<'a> {
    pub fn new(signature: &'a Signature) -> Scope<'a> {
        Scope {
            signature,
            vars: BTreeMap::new(),
            schematics: BTreeMap::new(),
            implicit_free: false,
            defs: BTreeMap::new(),
            expanded: RefCell::new(BTreeMap::new()),
            in_progress: RefCell::new(Vec::new()),
        }
    }

    /// Add a definition; `order` records its position in the source.
    pub fn add_def(&mut self, name: &str, body: Ast, order: usize) {
        self.defs.insert(name.to_string(), (body, order));
    }

    pub fn has_def(&self, name: &str) -> bool {
        self.defs.contains_key(name)
    }

    /// Elaborated definitions in source order.
    pub fn definitions(&self) -> Result<Vec<(String, Expr)>, SyntaxError> {
        let mut names: Vec<(&String, usize)> = self.defs.iter().map(|(k, (_, o))| (k, *o)).collect();
        names.sort_by_key(|(_, o)| *o);
        names
            .into_iter()
            .map(|(n, _)| Ok((n.clone(), self.definition(n, self.defs[n].0.pos)?.0)))
            .collect()
    }

    fn definition(&self, name: &str, pos: Pos) -> Result<(Expr, Sort), SyntaxError> {
        if let Some(v) = self.expanded.borrow().get(name) {
            return Ok(v.clone());
        }
        if let Some(i) = self.in_progress.borrow().iter().position(|n| n == name) {
            let mut cycle = self.in_progress.borrow()[i..].to_vec();
            cycle.push(name.to_string());
            return Err(SyntaxError::CyclicDefinition { cycle, pos });
        }
        self.in_progress.borrow_mut().push(name.to_string());
        let out = self.elab(&self.defs[name].0, &mut Vec::new());
        self.in_progress.borrow_mut().pop();
        let v = out?;
        self.expanded.borrow_mut().insert(name.to_string(), v.clone());
        Ok(v)
    }

    /// Elaborate a closed term.
    pub fn term(&self, ast: &Ast) -> Result<(Expr, Sort), SyntaxError> {
        self.elab(ast, &mut Vec::new())
    }

    /// Elaborate a closed term of sort `want`.
    pub fn term_of(&self, ast: &Ast, want: &Sort) -> Result<Expr, SyntaxError> {
        let (e, s) = self.term(ast)?;
        expect(ast.pos, &s, want, "term")?;
        Ok(e)
    }

    fn resolve(&self, name: &str, pos: Pos, bound: &[(String, Sort)]) -> Result<(Expr, Sort), SyntaxError> {
        if let Some(i) = bound.iter().rev().position(|(n, _)| n == name) {
            let sort = bound[bound.len() - 1 - i].1.clone();
            return Ok((Expr::bound(i as u32), sort));
        }
        if let Some(s) = self.vars.get(name) {
            return Ok((Expr::free(name, s.clone()), s.clone()));
        }
        if self.defs.contains_key(name) {
            return self.definition(name, pos);
        }
        if let Some(s) = self.signature.get(name) {
            return Ok((Expr::constant(name, s.clone()), s.clone()));
        }
        if self.implicit_free {
            return Ok((Expr::free(name, Sort::Ind), Sort::Ind));
        }
        Err(SyntaxError::UnboundIdentifier {
            name: name.to_string(),
            pos,
        })
    }

    fn sub(&self, ast: &Ast, bound: &mut Vec<(String, Sort)>, want: &Sort, what: &str) -> Result<Expr, SyntaxError> {
        let (e, s) = self.elab(ast, bound)?;
        expect(ast.pos, &s, want, what)?;
        Ok(e)
    }

    fn under(
        &self,
        var: &str,
        sort: Sort,
        ast: &Ast,
        bound: &mut Vec<(String, Sort)>,
    ) -> Result<(Expr, Sort), SyntaxError> {
        bound.push((var.to_string(), sort));
        let out = self.elab(ast, bound);
        bound.pop();
        out
    }

    fn elab(&self, ast: &Ast, bound: &mut Vec<(String, Sort)>) -> Result<(Expr, Sort), SyntaxError> {
        let pos = ast.pos;
        let ind = Sort::Ind;
        Ok(match &ast.kind {
            AstKind::Ident(n) => self.resolve(n, pos, bound)?,
            AstKind::Schematic(n) => {
                let s = self.schematics.get(n).cloned().unwrap_or(Sort::Ind);
                (Expr::schematic(n, s.clone()), s)
            }
            AstKind::Raw(n) => {
                let s = self
                    .signature
                    .get(n)
                    .cloned()
                    .ok_or_else(|| SyntaxError::UnboundIdentifier {
                        name: format!("@{n}"),
                        pos,
                    })?;
                (Expr::constant(n, s.clone()), s)
            }
            AstKind::Call(head, args) => {
                let (mut f, mut fs) = self.elab(head, bound)?;
                for a in args {
                    let (x, xs) = self.elab(a, bound)?;
                    match fs.split_arrow().map(|(d, r)| (d.clone(), r.clone())) {
                        Some((dom, res)) => {
                            expect(a.pos, &xs, &dom, "argument")?;
                            f = Expr::app(f, x);
                            fs = res;
                        }
                        None if fs == Sort::Ind => {
                            expect(a.pos, &xs, &ind, "argument of a set-valued function")?;
                            f = terms::app(f, x);
                        }
                        None => {
                            return Err(SyntaxError::Sort {
                                pos,
                                detail: "a proposition cannot be applied".to_string(),
                            })
                        }
                    }
                }
                (f, fs)
            }
            AstKind::Quant(q, var, body) => {
                let (b, bs) = self.under(var, ind.clone(), body, bound)?;
                expect(body.pos, &bs, &Sort::Prop, "quantifier body")?;
                let pred = Expr::lam(var, ind.clone(), b);
                match q {
                    Binder::Forall => (logic::forall_of(pred), Sort::Prop),
                    Binder::Exists => (logic::exists_of(pred), Sort::Prop),
                    Binder::Eps => (logic::eps_of(pred), ind),
                }
            }
            AstKind::Lambda(var, sort, body) => {
                let s = sort.clone().unwrap_or(Sort::Ind);
                let (b, bs) = self.under(var, s.clone(), body, bound)?;
                (Expr::lam(var, s.clone(), b), Sort::arrow(s, bs))
            }
            AstKind::Fun(var, dom, body) | AstKind::Pi(var, dom, body) => {
                let d = self.sub(dom, bound, &ind, "domain")?;
                let (b, bs) = self.under(var, ind.clone(), body, bound)?;
                expect(body.pos, &bs, &ind, "body")?;
                let fam = Expr::lam(var, ind.clone(), b);
                let e = if matches!(ast.kind, AstKind::Fun(..)) {
                    terms::abs(d, fam)
                } else {
                    terms::pi(d, fam)
                };
                (e, ind)
            }
            AstKind::Arrow(a, b) => {
                let a = self.sub(a, bound, &ind, "arrow domain")?;
                let b = self.sub(b, bound, &ind, "arrow codomain")?;
                (terms::pi(a, constant_family(b)), ind)
            }
            AstKind::GetUniverse(n, b) => (get_universe(*n, self.sub(b, bound, &ind, "universe base")?), ind),
            AstKind::Not(a) => (logic::not(self.sub(a, bound, &Sort::Prop, "negation")?), Sort::Prop),
            AstKind::Bin(op, a, b) => {
                let (arg, what) = match op {
                    BinOp::In | BinOp::Subset | BinOp::Eq => (ind.clone(), "set operand"),
                    _ => (Sort::Prop, "logical operand"),
                };
                let x = self.sub(a, bound, &arg, what)?;
                let y = self.sub(b, bound, &arg, what)?;
                let e = match op {
                    BinOp::Iff => logic::iff(x, y),
                    BinOp::Implies => logic::implies(x, y),
                    BinOp::Or => logic::or(x, y),
                    BinOp::And => logic::and(x, y),
                    BinOp::In => logic::mem(x, y),
                    BinOp::Subset => terms::subset(x, y),
                    BinOp::Eq => logic::eq(x, y),
                };
                (e, Sort::Prop)
            }
        })
    }
}

fn expect(pos: Pos, found: &Sort, want: &Sort, what: &str) -> Result<(), SyntaxError> {
    if found == want {
        Ok(())
    } else {
        Err(SyntaxError::Sort {
            pos,
            detail: format!("{what} has sort {found}, expected {want}"),
        })
    }
}
