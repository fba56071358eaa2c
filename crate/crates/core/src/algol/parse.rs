//! Concrete syntax.
//!
//! ```text
//! term  ::= expr [";" term]
//! expr  ::= "new" x ":=" expr "in" term | "\" x ":" type "." term
//!         | "if" term "then" term "else" expr | x ":=" expr | app
//! app   ::= atom atom*
//! atom  ::= skip | T | F | n | x | "!" x | "zero(" term ")"
//!         | "pi1(" term ")" | "pi2(" term ")" | "<" term "," term ">" | "(" term ")"
//! type  ::= prod ["->" type]       prod ::= base ["*" prod]
//! base  ::= Unit | Bool | Nat | "(" type ")"
//! ```
//!
//! `#` starts a comment running to the end of the line.

use thiserror::Error;

use super::syntax::{Term, ValueType};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    Sym(&'static str),
}

const SYMBOLS: [&str; 13] = [
    ":=", "->", ":", ";", "!", "\\", ".", "(", ")", "<", ">", ",", "*",
];
const KEYWORDS: [&str; 14] = [
    "new", "in", "if", "then", "else", "skip", "T", "F", "zero", "pi1", "pi2", "Unit", "Bool",
    "Nat",
];

struct Lexed {
    toks: Vec<(Tok, usize, usize)>,
    end: (usize, usize),
}

fn lex(src: &str) -> Result<Lexed, ParseError> {
    let mut toks = Vec::new();
    let (mut line, mut col) = (1, 1);
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = (line, col);
        if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let text: String = chars[i..j].iter().collect();
            let n = text.parse().map_err(|_| ParseError {
                line,
                col,
                msg: format!("number {text} is too large"),
            })?;
            toks.push((Tok::Num(n), start.0, start.1));
            col += j - i;
            i = j;
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len()
                && (chars[j].is_alphanumeric() || chars[j] == '_' || chars[j] == '\'')
            {
                j += 1;
            }
            toks.push((Tok::Ident(chars[i..j].iter().collect()), start.0, start.1));
            col += j - i;
            i = j;
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
        let Some(sym) = SYMBOLS.iter().find(|s| rest.starts_with(**s)) else {
            return Err(ParseError {
                line,
                col,
                msg: format!("unexpected character {c:?}"),
            });
        };
        toks.push((Tok::Sym(sym), start.0, start.1));
        col += sym.len();
        i += sym.len();
    }
    Ok(Lexed {
        toks,
        end: (line, col),
    })
}

struct Parser {
    lexed: Lexed,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.lexed.toks.get(self.at).map(|t| &t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        let (line, col) = self
            .lexed
            .toks
            .get(self.at)
            .map_or(self.lexed.end, |t| (t.1, t.2));
        Err(ParseError {
            line,
            col,
            msg: msg.into(),
        })
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(t)) if *t == s)
    }

    fn is_kw(&self, k: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(t)) if t == k)
    }

    fn sym(&mut self, s: &str) -> Result<(), ParseError> {
        if self.is_sym(s) {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected `{s}`"))
        }
    }

    fn kw(&mut self, k: &str) -> Result<(), ParseError> {
        if self.is_kw(k) {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected `{k}`"))
        }
    }

    fn name(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(x)) if !KEYWORDS.contains(&x.as_str()) => {
                let x = x.clone();
                self.at += 1;
                Ok(x)
            }
            _ => self.err("expected a name"),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let first = self.expr()?;
        if self.is_sym(";") {
            self.at += 1;
            let rest = self.term()?;
            return Ok(Term::Seq(Box::new(first), Box::new(rest)));
        }
        Ok(first)
    }

    fn expr(&mut self) -> Result<Term, ParseError> {
        if self.is_kw("new") {
            self.at += 1;
            let x = self.name()?;
            self.sym(":=")?;
            let m = self.expr()?;
            self.kw("in")?;
            let n = self.term()?;
            return Ok(Term::New(x, Box::new(m), Box::new(n)));
        }
        if self.is_sym("\\") {
            self.at += 1;
            let x = self.name()?;
            self.sym(":")?;
            let t = self.ty()?;
            self.sym(".")?;
            let b = self.term()?;
            return Ok(Term::Lam(x, t, Box::new(b)));
        }
        if self.is_kw("if") {
            self.at += 1;
            let c = self.term()?;
            self.kw("then")?;
            let a = self.term()?;
            self.kw("else")?;
            let b = self.expr()?;
            return Ok(Term::If(Box::new(c), Box::new(a), Box::new(b)));
        }
        if let (Some(Tok::Ident(x)), Some((Tok::Sym(":="), ..))) =
            (self.peek(), self.lexed.toks.get(self.at + 1))
        {
            if !KEYWORDS.contains(&x.as_str()) {
                let x = x.clone();
                self.at += 2;
                let m = self.expr()?;
                return Ok(Term::Assign(x, Box::new(m)));
            }
        }
        self.app()
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Some(Tok::Num(_)) => true,
            Some(Tok::Ident(x)) => {
                !KEYWORDS.contains(&x.as_str())
                    || ["skip", "T", "F", "zero", "pi1", "pi2"].contains(&x.as_str())
            }
            Some(Tok::Sym(s)) => ["!", "(", "<"].contains(s),
            None => false,
        }
    }

    fn app(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom()?;
        while self.starts_atom() {
            let a = self.atom()?;
            t = Term::App(Box::new(t), Box::new(a));
        }
        Ok(t)
    }

    fn parenthesised(&mut self) -> Result<Term, ParseError> {
        self.sym("(")?;
        let t = self.term()?;
        self.sym(")")?;
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(Term::Nat(n))
            }
            Some(Tok::Ident(x)) => match x.as_str() {
                "skip" => {
                    self.at += 1;
                    Ok(Term::Skip)
                }
                "T" | "F" => {
                    self.at += 1;
                    Ok(Term::Bool(x == "T"))
                }
                "zero" => {
                    self.at += 1;
                    Ok(Term::Zero(Box::new(self.parenthesised()?)))
                }
                "pi1" | "pi2" => {
                    self.at += 1;
                    let i = if x == "pi1" { 1 } else { 2 };
                    Ok(Term::Proj(i, Box::new(self.parenthesised()?)))
                }
                _ => Ok(Term::Var(self.name()?)),
            },
            Some(Tok::Sym("!")) => {
                self.at += 1;
                Ok(Term::Deref(self.name()?))
            }
            Some(Tok::Sym("(")) => self.parenthesised(),
            Some(Tok::Sym("<")) => {
                self.at += 1;
                let a = self.term()?;
                self.sym(",")?;
                let b = self.term()?;
                self.sym(">")?;
                Ok(Term::Pair(Box::new(a), Box::new(b)))
            }
            _ => self.err("expected a term"),
        }
    }

    fn ty(&mut self) -> Result<ValueType, ParseError> {
        let a = self.prod_ty()?;
        if self.is_sym("->") {
            self.at += 1;
            let b = self.ty()?;
            return Ok(ValueType::arrow(a, b));
        }
        Ok(a)
    }

    fn prod_ty(&mut self) -> Result<ValueType, ParseError> {
        let a = self.base_ty()?;
        if self.is_sym("*") {
            self.at += 1;
            let b = self.prod_ty()?;
            return Ok(ValueType::prod(a, b));
        }
        Ok(a)
    }

    fn base_ty(&mut self) -> Result<ValueType, ParseError> {
        if self.is_sym("(") {
            self.at += 1;
            let t = self.ty()?;
            self.sym(")")?;
            return Ok(t);
        }
        for (k, t) in [
            ("Unit", ValueType::Unit),
            ("Bool", ValueType::Bool),
            ("Nat", ValueType::Nat),
        ] {
            if self.is_kw(k) {
                self.at += 1;
                return Ok(t);
            }
        }
        self.err("expected a type")
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.at < self.lexed.toks.len() {
            return self.err("unexpected trailing input");
        }
        Ok(())
    }
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser {
        lexed: lex(src)?,
        at: 0,
    };
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_type(src: &str) -> Result<ValueType, ParseError> {
    let mut p = Parser {
        lexed: lex(src)?,
        at: 0,
    };
    let t = p.ty()?;
    p.finish()?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::super::syntax::*;
    use super::*;

    #[test]
    fn parses_examples() {
        let t = parse_term("new x := 0 in new y := (x := 5) in !x").unwrap();
        assert_eq!(
            t,
            new(
                "x",
                Term::Nat(0),
                new("y", assign("x", Term::Nat(5)), deref("x"))
            )
        );
        let t = parse_term("x := 1; !x").unwrap();
        assert_eq!(t, seq(assign("x", Term::Nat(1)), deref("x")));
        let t = parse_term("(\\f:Nat -> Nat. f (f 1)) (\\x:Nat. x)").unwrap();
        let nn = ValueType::arrow(ValueType::Nat, ValueType::Nat);
        assert_eq!(
            t,
            app(
                lam("f", nn, app(var("f"), app(var("f"), Term::Nat(1)))),
                lam("x", ValueType::Nat, var("x"))
            )
        );
        let t = parse_term("if zero(!x) then T else F # comment\n").unwrap();
        assert_eq!(
            t,
            ite(zero(deref("x")), Term::Bool(true), Term::Bool(false))
        );
        assert_eq!(
            parse_type("Nat * Bool -> Unit").unwrap().to_string(),
            "Nat * Bool -> Unit"
        );
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_term("new x := in 3").unwrap_err();
        assert_eq!((e.line, e.col), (1, 10));
        let e = parse_term("if T then 1").unwrap_err();
        assert_eq!((e.line, e.col), (1, 12));
        assert!(parse_term("1 2 )").is_err());
        assert!(parse_term("x $").is_err());
    }
}
