use super::SyntaxError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    /// `?name`
    Schematic(String),
    /// `@name`: a constant referenced by name, bypassing infix sugar.
    Raw(String),
    Num(u32),
    Str(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Dot,
    Colon,
    DoubleColon,
    Assign,
    Backslash,
    Iff,
    Implies,
    Or,
    And,
    Not,
    In,
    Subset,
    Eq,
    PiArrow,
    SortArrow,
    Turnstile,
    Bar,
    Dash,
    Forall,
    Exists,
    Eps,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Schematic(s) => format!("`?{s}`"),
            Tok::Raw(s) => format!("`@{s}`"),
            Tok::Num(n) => format!("number {n}"),
            Tok::Str(_) => "string literal".to_string(),
            Tok::Eof => "end of input".to_string(),
            t => format!("`{}`", t.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Dot => ".",
            Tok::Colon => ":",
            Tok::DoubleColon => "::",
            Tok::Assign => ":=",
            Tok::Backslash => "\\",
            Tok::Iff => "<=>",
            Tok::Implies => "==>",
            Tok::Or => "\\/",
            Tok::And => "/\\",
            Tok::Not => "~",
            Tok::In => "in",
            Tok::Subset => "<=",
            Tok::Eq => "=",
            Tok::PiArrow => "->:",
            Tok::SortArrow => "->",
            Tok::Turnstile => "|-",
            Tok::Bar => "|",
            Tok::Dash => "-",
            Tok::Forall => "forall",
            Tok::Exists => "exists",
            Tok::Eps => "eps",
            _ => "?",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

fn ident_start(c: char) -> bool {
    c.is_alphabetic() && !is_alias(c) || c == '_'
}

fn ident_char(c: char) -> bool {
    (c.is_alphanumeric() && !is_alias(c)) || c == '_' || c == '\''
}

fn is_alias(c: char) -> bool {
    matches!(c, 'λ' | 'ε' | 'Π')
}

const SYMBOLS: &[(&str, Tok)] = &[
    ("<=>", Tok::Iff),
    ("==>", Tok::Implies),
    ("->:", Tok::PiArrow),
    ("::", Tok::DoubleColon),
    (":=", Tok::Assign),
    ("\\/", Tok::Or),
    ("/\\", Tok::And),
    ("<=", Tok::Subset),
    ("->", Tok::SortArrow),
    ("|-", Tok::Turnstile),
    ("(", Tok::LParen),
    (")", Tok::RParen),
    ("{", Tok::LBrace),
    ("}", Tok::RBrace),
    ("[", Tok::LBracket),
    ("]", Tok::RBracket),
    (",", Tok::Comma),
    (";", Tok::Semi),
    (".", Tok::Dot),
    (":", Tok::Colon),
    ("\\", Tok::Backslash),
    ("~", Tok::Not),
    ("=", Tok::Eq),
    ("|", Tok::Bar),
    ("-", Tok::Dash),
    ("⇔", Tok::Iff),
    ("⇒", Tok::Implies),
    ("∨", Tok::Or),
    ("∧", Tok::And),
    ("¬", Tok::Not),
    ("∈", Tok::In),
    ("⊆", Tok::Subset),
    ("→", Tok::SortArrow),
    ("⊢", Tok::Turnstile),
    ("∀", Tok::Forall),
    ("∃", Tok::Exists),
    ("ε", Tok::Eps),
    ("λ", Tok::Backslash),
];

/// Operators usable after `@`.
const RAW_OPERATORS: &[(&str, &str)] = &[("=", "="), ("in", "in")];

pub fn tokenize(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, n: usize| {
        for k in 0..n {
            if chars[*i + k] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        }
        *i += n;
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, 1);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col, 1);
            }
            continue;
        }
        let pos = Pos { line, col };
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        if c == 'Π' {
            out.push(Token {
                tok: Tok::Ident("Pi".into()),
                pos,
            });
            advance(&mut i, &mut line, &mut col, 1);
            continue;
        }
        if c == '?' || c == '@' || ident_start(c) {
            let start = if ident_start(c) { i } else { i + 1 };
            let mut j = start;
            while j < chars.len() && ident_char(chars[j]) {
                j += 1;
            }
            let word: String = chars[start..j].iter().collect();
            let tok = match c {
                '?' if !word.is_empty() => Tok::Schematic(word),
                '@' => {
                    let op = RAW_OPERATORS
                        .iter()
                        .find(|(s, _)| word.is_empty() && chars[start..].starts_with(&s.chars().collect::<Vec<_>>()));
                    if let Some((s, name)) = op {
                        j = start + s.chars().count();
                        Tok::Raw(name.to_string())
                    } else if word.is_empty() {
                        return Err(SyntaxError::parse(pos, "a name after `@`", "`@`"));
                    } else {
                        Tok::Raw(word)
                    }
                }
                '?' => return Err(SyntaxError::parse(pos, "a name after `?`", "`?`")),
                _ => match word.as_str() {
                    "in" => Tok::In,
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    "eps" => Tok::Eps,
                    _ => Tok::Ident(word),
                },
            };
            out.push(Token { tok, pos });
            let n = j - i;
            advance(&mut i, &mut line, &mut col, n);
            continue;
        }
        if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let text: String = chars[i..j].iter().collect();
            let n = text
                .parse()
                .map_err(|_| SyntaxError::parse(pos, "a small natural number", &text))?;
            out.push(Token { tok: Tok::Num(n), pos });
            let n = j - i;
            advance(&mut i, &mut line, &mut col, n);
            continue;
        }
        if c == '"' {
            let mut j = i + 1;
            let mut s = String::new();
            while j < chars.len() && chars[j] != '"' {
                if chars[j] == '\\' && j + 1 < chars.len() {
                    j += 1;
                }
                s.push(chars[j]);
                j += 1;
            }
            if j >= chars.len() {
                return Err(SyntaxError::parse(pos, "a closing `\"`", "end of input"));
            }
            out.push(Token { tok: Tok::Str(s), pos });
            let n = j + 1 - i;
            advance(&mut i, &mut line, &mut col, n);
            continue;
        }
        let Some((sym, tok)) = SYMBOLS.iter().find(|(s, _)| rest.starts_with(s)) else {
            return Err(SyntaxError::parse(pos, "a token", &format!("`{c}`")));
        };
        out.push(Token { tok: tok.clone(), pos });
        advance(&mut i, &mut line, &mut col, sym.chars().count());
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, col },
    });
    Ok(out)
}

/// Tokenize one line of a line-oriented file.
pub fn tokenize_line(src: &str, line: usize) -> Result<Vec<Token>, SyntaxError> {
    let shift = |mut p: Pos| {
        p.line = line;
        p
    };
    let toks = tokenize(src).map_err(|e| match e {
        SyntaxError::Parse { pos, expected, found } => SyntaxError::Parse {
            pos: shift(pos),
            expected,
            found,
        },
        other => other,
    })?;
    Ok(toks
        .into_iter()
        .map(|t| Token {
            pos: shift(t.pos),
            tok: t.tok,
        })
        .collect())
}

/// Whether `s` lexes as a single plain identifier.
pub fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(ident_start)
        && cs.all(ident_char)
        && !matches!(s, "in" | "forall" | "exists" | "eps" | "fun")
}
