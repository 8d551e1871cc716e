use super::lexer::{Pos, Tok, Token};
use super::SyntaxError;
use crate::lfol::Sort;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Binder {
    Forall,
    Exists,
    Eps,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Iff,
    Implies,
    Or,
    And,
    In,
    Subset,
    Eq,
}

/// Surface syntax tree with source positions.
#[derive(Clone, Debug)]
pub struct Ast {
    pub kind: AstKind,
    pub pos: Pos,
}

#[derive(Clone, Debug)]
pub enum AstKind {
    Ident(String),
    Schematic(String),
    Raw(String),
    Call(Box<Ast>, Vec<Ast>),
    Quant(Binder, String, Box<Ast>),
    Lambda(String, Option<Sort>, Box<Ast>),
    /// `fun(x :: T, e)`
    Fun(String, Box<Ast>, Box<Ast>),
    /// `Pi(x :: T, B)`
    Pi(String, Box<Ast>, Box<Ast>),
    Arrow(Box<Ast>, Box<Ast>),
    GetUniverse(u32, Box<Ast>),
    Bin(BinOp, Box<Ast>, Box<Ast>),
    Not(Box<Ast>),
}

pub struct Parser {
    toks: Vec<Token>,
    at: usize,
}

impl Parser {
    pub fn new(toks: Vec<Token>) -> Parser {
        Parser { toks, at: 0 }
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    pub fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.at + k).min(self.toks.len() - 1)].tok
    }

    pub fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    pub fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].tok.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    pub fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    pub fn error(&self, expected: &str) -> SyntaxError {
        SyntaxError::parse(self.pos(), expected, &self.peek().describe())
    }

    pub fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, t: &Tok, expected: &str) -> Result<(), SyntaxError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    pub fn ident(&mut self, expected: &str) -> Result<String, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.error(expected)),
        }
    }

    /// The keyword `word`, lexed as an identifier.
    pub fn eat_word(&mut self, word: &str) -> bool {
        if matches!(self.peek(), Tok::Ident(s) if s == word) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn sort(&mut self) -> Result<Sort, SyntaxError> {
        let lhs = if self.eat(&Tok::LParen) {
            let s = self.sort()?;
            self.expect(&Tok::RParen, "`)`")?;
            s
        } else if self.eat_word("Ind") {
            Sort::Ind
        } else if self.eat_word("Prop") {
            Sort::Prop
        } else {
            return Err(self.error("a sort (`Ind`, `Prop` or an arrow)"));
        };
        if self.eat(&Tok::SortArrow) {
            return Ok(Sort::arrow(lhs, self.sort()?));
        }
        Ok(lhs)
    }

    pub fn expr(&mut self) -> Result<Ast, SyntaxError> {
        let pos = self.pos();
        let q = match self.peek() {
            Tok::Forall => Some(Binder::Forall),
            Tok::Exists => Some(Binder::Exists),
            Tok::Eps => Some(Binder::Eps),
            _ => None,
        };
        if let Some(q) = q {
            if *self.peek_at(1) != Tok::LParen {
                self.bump();
                let var = self.ident("a bound variable name")?;
                self.expect(&Tok::Dot, "`.` after the bound variable")?;
                let body = self.expr()?;
                return Ok(Ast {
                    kind: AstKind::Quant(q, var, Box::new(body)),
                    pos,
                });
            }
        }
        if self.eat(&Tok::Backslash) {
            let var = self.ident("a bound variable name")?;
            let sort = if self.eat(&Tok::Colon) { Some(self.sort()?) } else { None };
            self.expect(&Tok::Dot, "`.` after the bound variable")?;
            let body = self.expr()?;
            return Ok(Ast {
                kind: AstKind::Lambda(var, sort, Box::new(body)),
                pos,
            });
        }
        self.iff()
    }

    fn bin(op: BinOp, a: Ast, b: Ast) -> Ast {
        let pos = a.pos;
        Ast {
            kind: AstKind::Bin(op, Box::new(a), Box::new(b)),
            pos,
        }
    }

    /// Operand of a binary operator: a binder may appear only as the last operand.
    fn operand(&mut self, next: fn(&mut Parser) -> Result<Ast, SyntaxError>) -> Result<Ast, SyntaxError> {
        let binder = matches!(self.peek(), Tok::Backslash)
            || matches!(self.peek(), Tok::Forall | Tok::Exists | Tok::Eps) && *self.peek_at(1) != Tok::LParen;
        if binder {
            self.expr()
        } else {
            next(self)
        }
    }

    fn iff(&mut self) -> Result<Ast, SyntaxError> {
        let lhs = self.implies()?;
        if self.eat(&Tok::Iff) {
            let rhs = self.operand(Parser::iff)?;
            return Ok(Self::bin(BinOp::Iff, lhs, rhs));
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Ast, SyntaxError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.operand(Parser::implies)?;
            return Ok(Self::bin(BinOp::Implies, lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Ast, SyntaxError> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            let rhs = self.operand(Parser::and)?;
            lhs = Self::bin(BinOp::Or, lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Ast, SyntaxError> {
        let mut lhs = self.not()?;
        while self.eat(&Tok::And) {
            let rhs = self.operand(Parser::not)?;
            lhs = Self::bin(BinOp::And, lhs, rhs);
        }
        Ok(lhs)
    }

    fn not(&mut self) -> Result<Ast, SyntaxError> {
        let pos = self.pos();
        if self.eat(&Tok::Not) {
            let inner = self.operand(Parser::not)?;
            return Ok(Ast {
                kind: AstKind::Not(Box::new(inner)),
                pos,
            });
        }
        self.relation()
    }

    fn relation(&mut self) -> Result<Ast, SyntaxError> {
        let lhs = self.arrow()?;
        let op = match self.peek() {
            Tok::In => BinOp::In,
            Tok::Subset => BinOp::Subset,
            Tok::Eq => BinOp::Eq,
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.arrow()?;
        if matches!(self.peek(), Tok::In | Tok::Subset | Tok::Eq) {
            return Err(self.error("parentheses around a chained relation"));
        }
        Ok(Self::bin(op, lhs, rhs))
    }

    fn arrow(&mut self) -> Result<Ast, SyntaxError> {
        let lhs = self.postfix()?;
        if self.eat(&Tok::PiArrow) {
            let rhs = self.arrow()?;
            let pos = lhs.pos;
            return Ok(Ast {
                kind: AstKind::Arrow(Box::new(lhs), Box::new(rhs)),
                pos,
            });
        }
        Ok(lhs)
    }

    fn postfix(&mut self) -> Result<Ast, SyntaxError> {
        let mut head = self.atom()?;
        while *self.peek() == Tok::LParen {
            self.bump();
            let args = self.args()?;
            let pos = head.pos;
            head = Ast {
                kind: AstKind::Call(Box::new(head), args),
                pos,
            };
        }
        Ok(head)
    }

    /// Comma-separated expressions up to and including `)`.
    fn args(&mut self) -> Result<Vec<Ast>, SyntaxError> {
        let mut args = vec![self.expr()?];
        while self.eat(&Tok::Comma) {
            args.push(self.expr()?);
        }
        self.expect(&Tok::RParen, "`,` or `)`")?;
        Ok(args)
    }

    fn typed_binder(&mut self) -> Result<(String, Ast, Ast), SyntaxError> {
        self.expect(&Tok::LParen, "`(`")?;
        let var = self.ident("a bound variable name")?;
        self.expect(&Tok::DoubleColon, "`::` (a single `:` is not a typing)")?;
        let dom = self.expr()?;
        self.expect(&Tok::Comma, "`,`")?;
        let body = self.expr()?;
        self.expect(&Tok::RParen, "`)`")?;
        Ok((var, dom, body))
    }

    fn atom(&mut self) -> Result<Ast, SyntaxError> {
        let pos = self.pos();
        let kind = match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                return Ok(e);
            }
            Tok::Ident(name) if name == "fun" => {
                self.bump();
                let (v, d, b) = self.typed_binder()?;
                AstKind::Fun(v, Box::new(d), Box::new(b))
            }
            Tok::Ident(name)
                if name == "Pi" && *self.peek_at(1) == Tok::LParen && *self.peek_at(3) == Tok::DoubleColon =>
            {
                self.bump();
                let (v, d, b) = self.typed_binder()?;
                AstKind::Pi(v, Box::new(d), Box::new(b))
            }
            Tok::Ident(name) if name == "getUniverse" => {
                self.bump();
                self.expect(&Tok::LParen, "`(`")?;
                let Tok::Num(n) = self.peek().clone() else {
                    return Err(self.error("a universe level (natural number)"));
                };
                self.bump();
                self.expect(&Tok::Comma, "`,`")?;
                let b = self.expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                AstKind::GetUniverse(n, Box::new(b))
            }
            Tok::Ident(name) => {
                self.bump();
                AstKind::Ident(name)
            }
            Tok::Schematic(name) => {
                self.bump();
                AstKind::Schematic(name)
            }
            Tok::Raw(name) => {
                self.bump();
                AstKind::Raw(name)
            }
            Tok::Forall | Tok::Exists | Tok::Eps => {
                let name = match self.bump() {
                    Tok::Forall => "forall",
                    Tok::Exists => "exists",
                    _ => "eps",
                };
                AstKind::Raw(name.to_string())
            }
            _ => return Err(self.error("an expression")),
        };
        Ok(Ast { kind, pos })
    }
}
