//! S-expression DSL for formulas and definitions.
//!
//! ```text
//! <f> ::= (indep <v>) | (sub <v> <v>) | (card <v> <p> <q>) | (matroid)
//!       | (not <f>) | (and <f> <f>+) | (or <f> <f>+) | (imp <f> <f>)
//!       | (iff <f> <f>) | (ex <v> <f>) | (all <v> <f>)
//!       | (eq <v> <v>) | (neq <v> <v>) | (nsub <v> <v>)
//!       | (call <name> <v>*)
//! ```
//!
//! Definition files are a sequence of `(def <name> (<v>*) <f>)`. Comments
//! run from `;` to the end of the line. Variable and definition names are
//! ASCII identifiers. The sugar forms (`or`, `imp`, `iff`, `all`, `eq`,
//! `neq`, `nsub`) are expanded during parsing, so a parsed tree contains
//! only the core connectives.

use super::{DefId, Logic, LogicError, NodeId};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("{pos}: {msg}")]
    Syntax { pos: Pos, msg: String },
    #[error("{pos}: {source}")]
    Logic { pos: Pos, source: LogicError },
}

fn syntax(pos: Pos, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        msg: msg.into(),
    }
}

#[derive(Debug, Clone)]
enum Sexp {
    Atom(String, Pos),
    List(Vec<Sexp>, Pos),
}

impl Sexp {
    fn pos(&self) -> Pos {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        loop {
            match self.chars.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some(';') => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                _ => return,
            }
        }
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '\'' || c == '*' || c == '.'
}

fn read_sexp(lx: &mut Lexer) -> Result<Sexp, ParseError> {
    lx.skip_trivia();
    let pos = lx.pos();
    match lx.chars.peek() {
        None => Err(syntax(pos, "unexpected end of input")),
        Some('(') => {
            lx.bump();
            let mut items = Vec::new();
            loop {
                lx.skip_trivia();
                match lx.chars.peek() {
                    None => return Err(syntax(lx.pos(), "unclosed parenthesis")),
                    Some(')') => {
                        lx.bump();
                        return Ok(Sexp::List(items, pos));
                    }
                    _ => items.push(read_sexp(lx)?),
                }
            }
        }
        Some(')') => Err(syntax(pos, "unexpected )")),
        Some(_) => {
            let mut s = String::new();
            while let Some(&c) = lx.chars.peek() {
                if is_ident_char(c) {
                    s.push(c);
                    lx.bump();
                } else {
                    break;
                }
            }
            if s.is_empty() {
                Err(syntax(pos, format!("unexpected character {:?}", lx.chars.peek())))
            } else {
                Ok(Sexp::Atom(s, pos))
            }
        }
    }
}

fn read_all(text: &str) -> Result<Vec<Sexp>, ParseError> {
    let mut lx = Lexer::new(text);
    let mut out = Vec::new();
    loop {
        lx.skip_trivia();
        if lx.chars.peek().is_none() {
            return Ok(out);
        }
        out.push(read_sexp(&mut lx)?);
    }
}

fn expect_atom<'s>(sx: &'s Sexp, what: &str) -> Result<(&'s str, Pos), ParseError> {
    match sx {
        Sexp::Atom(s, p) => Ok((s, *p)),
        Sexp::List(_, p) => Err(syntax(*p, format!("expected {}, found a list", what))),
    }
}

fn parse_u32(sx: &Sexp) -> Result<u32, ParseError> {
    let (s, p) = expect_atom(sx, "a non-negative integer")?;
    s.parse::<u32>()
        .map_err(|_| syntax(p, format!("expected a non-negative integer, found {:?}", s)))
}

const KEYWORDS: &[&str] = &[
    "indep", "sub", "card", "matroid", "not", "and", "or", "imp", "iff", "ex", "all", "eq",
    "neq", "nsub", "call", "def",
];

fn parse_var(lg: &mut Logic, sx: &Sexp) -> Result<super::VarId, ParseError> {
    let (s, p) = expect_atom(sx, "a variable")?;
    if KEYWORDS.contains(&s) {
        return Err(syntax(p, format!("{:?} is a reserved word", s)));
    }
    Ok(lg.var(s))
}

fn lower(lg: &mut Logic, sx: &Sexp) -> Result<NodeId, ParseError> {
    let (items, pos) = match sx {
        Sexp::Atom(s, p) => {
            return Err(syntax(*p, format!("expected a formula, found atom {:?}", s)))
        }
        Sexp::List(items, p) => (items, *p),
    };
    if items.is_empty() {
        return Err(syntax(pos, "empty form"));
    }
    let (head, hpos) = expect_atom(&items[0], "a form head")?;
    let arity = |want: usize| -> Result<(), ParseError> {
        if items.len() - 1 != want {
            Err(syntax(
                hpos,
                format!("{} expects {} arguments, found {}", head, want, items.len() - 1),
            ))
        } else {
            Ok(())
        }
    };
    let le = |e: LogicError| ParseError::Logic {
        pos: hpos,
        source: e,
    };
    match head {
        "indep" => {
            arity(1)?;
            let v = parse_var(lg, &items[1])?;
            Ok(lg.indep(v))
        }
        "sub" => {
            arity(2)?;
            let a = parse_var(lg, &items[1])?;
            let b = parse_var(lg, &items[2])?;
            Ok(lg.sub(a, b))
        }
        "card" => {
            arity(3)?;
            let v = parse_var(lg, &items[1])?;
            let p = parse_u32(&items[2])?;
            let q = parse_u32(&items[3])?;
            lg.card(v, p, q).map_err(le)
        }
        "matroid" => {
            arity(0)?;
            Ok(lg.matroid_atom())
        }
        "not" => {
            arity(1)?;
            let x = lower(lg, &items[1])?;
            Ok(lg.not(x))
        }
        "and" | "or" => {
            if items.len() < 3 {
                return Err(syntax(hpos, format!("{} expects at least 2 arguments", head)));
            }
            let mut acc = lower(lg, &items[1])?;
            for it in &items[2..] {
                let x = lower(lg, it)?;
                acc = if head == "and" {
                    lg.and(acc, x)
                } else {
                    lg.or(acc, x)
                };
            }
            Ok(acc)
        }
        "imp" => {
            arity(2)?;
            let a = lower(lg, &items[1])?;
            let b = lower(lg, &items[2])?;
            Ok(lg.imp(a, b))
        }
        "iff" => {
            arity(2)?;
            let a = lower(lg, &items[1])?;
            let b = lower(lg, &items[2])?;
            Ok(lg.iff(a, b))
        }
        "ex" | "all" => {
            arity(2)?;
            let v = parse_var(lg, &items[1])?;
            let body = lower(lg, &items[2])?;
            if head == "ex" {
                lg.exists(v, body).map_err(le)
            } else {
                lg.forall(v, body).map_err(le)
            }
        }
        "eq" | "neq" | "nsub" => {
            arity(2)?;
            let a = parse_var(lg, &items[1])?;
            let b = parse_var(lg, &items[2])?;
            Ok(match head {
                "eq" => lg.eq(a, b),
                "neq" => lg.neq(a, b),
                _ => lg.nsub(a, b),
            })
        }
        "call" => {
            if items.len() < 2 {
                return Err(syntax(hpos, "call expects a definition name"));
            }
            let (name, npos) = expect_atom(&items[1], "a definition name")?;
            let mut args = Vec::new();
            for it in &items[2..] {
                args.push(parse_var(lg, it)?);
            }
            lg.call_named(name, args).map_err(|e| ParseError::Logic {
                pos: npos,
                source: e,
            })
        }
        "def" => Err(syntax(hpos, "definitions are not allowed inside a formula")),
        other => Err(syntax(hpos, format!("unknown form {:?}", other))),
    }
}

fn lower_def(lg: &mut Logic, sx: &Sexp) -> Result<DefId, ParseError> {
    let (items, pos) = match sx {
        Sexp::List(items, p) => (items, *p),
        Sexp::Atom(_, p) => return Err(syntax(*p, "expected (def ...)")),
    };
    if items.len() != 4 {
        return Err(syntax(pos, "def expects (def <name> (<params>) <body>)"));
    }
    let (head, hpos) = expect_atom(&items[0], "def")?;
    if head != "def" {
        return Err(syntax(hpos, "expected (def ...)"));
    }
    let (name, npos) = expect_atom(&items[1], "a definition name")?;
    let params = match &items[2] {
        Sexp::List(ps, _) => ps
            .iter()
            .map(|p| parse_var(lg, p))
            .collect::<Result<Vec<_>, _>>()?,
        Sexp::Atom(_, p) => return Err(syntax(*p, "expected a parameter list")),
    };
    let body = lower(lg, &items[3])?;
    lg.define(name, params, body).map_err(|e| ParseError::Logic {
        pos: npos,
        source: e,
    })
}

/// Parses a single formula. The text may begin with `(def ...)` forms,
/// which are added to the table; exactly one formula must follow them.
pub fn parse_formula(lg: &mut Logic, text: &str) -> Result<NodeId, ParseError> {
    let sexps = read_all(text)?;
    let mut formula = None;
    for sx in &sexps {
        let is_def = matches!(sx, Sexp::List(items, _)
            if matches!(items.first(), Some(Sexp::Atom(h, _)) if h == "def"));
        if is_def {
            if formula.is_some() {
                return Err(syntax(sx.pos(), "definitions must precede the formula"));
            }
            lower_def(lg, sx)?;
        } else {
            if formula.is_some() {
                return Err(syntax(sx.pos(), "expected exactly one formula"));
            }
            formula = Some(lower(lg, sx)?);
        }
    }
    formula.ok_or_else(|| {
        syntax(
            Pos { line: 1, col: 1 },
            "expected a formula, found only definitions",
        )
    })
}

/// Parses a sequence of `(def ...)` forms.
pub fn parse_defs(lg: &mut Logic, text: &str) -> Result<Vec<DefId>, ParseError> {
    let sexps = read_all(text)?;
    sexps.iter().map(|sx| lower_def(lg, sx)).collect()
}

#[cfg(test)]
mod tests {
    use super::super::{satisfies, Formula, Interpretation, Logic};
    use crate::setsystem::{ElementSet, Matroid};

    #[test]
    fn parses_core_forms() {
        let mut lg = Logic::new();
        let f = super::parse_formula(&mut lg, "(card X 1 2)").unwrap();
        assert!(matches!(lg.node(f), Formula::Card(_, 1, 2)));
        assert!(super::parse_formula(&mut lg, "(card X 2 2)").is_err());
        assert!(super::parse_formula(&mut lg, "(bogus X)").is_err());
        assert!(super::parse_formula(&mut lg, "(indep X").is_err());
        assert!(super::parse_formula(&mut lg, "(call Nope X)").is_err());
    }

    #[test]
    fn desugars_universal_implication() {
        // (all X (imp (sub X X) (indep X))) is ¬∃X¬(...) after expansion
        let mut lg = Logic::new();
        let f = super::parse_formula(&mut lg, "(all X (imp (sub X X) (indep X)))").unwrap();
        let Formula::Not(inner) = lg.node(f) else {
            panic!("expected the for-all expansion to start with a negation")
        };
        assert!(matches!(lg.node(*inner), Formula::Exists(..)));
        assert!(lg.free_vars(f).is_empty());

        // semantics: every subset independent — true on U_{2,2}, false on U_{1,2}
        let th = Interpretation::new();
        let free = Matroid::uniform(2, 2);
        let u12 = Matroid::uniform(1, 2);
        assert!(satisfies(&lg, free.as_set_system(), &th, f).unwrap());
        assert!(!satisfies(&lg, u12.as_set_system(), &th, f).unwrap());
    }

    #[test]
    fn defs_and_comments() {
        let mut lg = Logic::new();
        let text = "; comment\n(def Both (X Y) (and (indep X) (indep Y))) ; trailing\n";
        let ids = super::parse_defs(&mut lg, text).unwrap();
        assert_eq!(ids.len(), 1);
        let f = super::parse_formula(&mut lg, "(call Both A B)").unwrap();
        let m = Matroid::uniform(1, 2);
        let a = lg.var("A");
        let b = lg.var("B");
        let th = Interpretation::new()
            .bind(a, ElementSet::singleton(0))
            .bind(b, ElementSet::singleton(1));
        assert!(satisfies(&lg, m.as_set_system(), &th, f).unwrap());
        // arity mismatch is reported
        assert!(super::parse_formula(&mut lg, "(call Both A)").is_err());
    }
}
