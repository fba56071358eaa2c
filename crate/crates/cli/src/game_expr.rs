//! Game expressions on the command line.
//!
//! ```text
//! expr   = tensor ["-o" expr]          linear arrow, right associative
//! tensor = prefix {("*" | "&") prefix}  tensor and product, left associative
//! prefix = "~" prefix | "!" N prefix | atom
//! atom   = Bool | Two | Unit | Nat(N) | @path | "(" expr ")"
//! ```
//!
//! `@path` reads a game file.

use anyhow::{anyhow, bail, Context, Result};
use cgw::game::{bool_game, game_two, nat_game, parse_game_file, Game};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    File(String),
    Num(usize),
    Sym(&'static str),
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if src[i..].starts_with("-o") {
            it.next();
            it.next();
            out.push(Tok::Sym("-o"));
        } else if let Some(s) = ["*", "&", "~", "!", "(", ")"]
            .into_iter()
            .find(|s| src[i..].starts_with(s))
        {
            it.next();
            out.push(Tok::Sym(s));
        } else if c == '@' {
            it.next();
            let mut path = String::new();
            while let Some(&(_, c)) = it.peek() {
                if c.is_whitespace() || c == ')' {
                    break;
                }
                path.push(c);
                it.next();
            }
            out.push(Tok::File(path));
        } else if c.is_ascii_digit() {
            let mut n = String::new();
            while let Some(&(_, c)) = it.peek().filter(|(_, c)| c.is_ascii_digit()) {
                n.push(c);
                it.next();
            }
            out.push(Tok::Num(n.parse()?));
        } else if c.is_alphabetic() {
            let mut w = String::new();
            while let Some(&(_, c)) = it.peek().filter(|(_, c)| c.is_alphanumeric()) {
                w.push(c);
                it.next();
            }
            out.push(Tok::Word(w));
        } else {
            bail!("unexpected '{c}' in game expression");
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eat(&mut self, s: &'static str) -> bool {
        if self.peek() == Some(&Tok::Sym(s)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Game> {
        let a = self.tensor()?;
        if self.eat("-o") {
            return Ok(a.loli(&self.expr()?));
        }
        Ok(a)
    }

    fn tensor(&mut self) -> Result<Game> {
        let mut a = self.prefix()?;
        loop {
            if self.eat("*") {
                a = a.tensor(&self.prefix()?);
            } else if self.eat("&") {
                a = a.product(&self.prefix()?)?;
            } else {
                return Ok(a);
            }
        }
    }

    fn prefix(&mut self) -> Result<Game> {
        if self.eat("~") {
            return Ok(self.prefix()?.dual());
        }
        if self.eat("!") {
            let Some(Tok::Num(k)) = self.next() else {
                bail!("expected a copy count after '!'")
            };
            return Ok(self.prefix()?.bang(k)?);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Game> {
        match self.next() {
            Some(Tok::Sym("(")) => {
                let g = self.expr()?;
                if !self.eat(")") {
                    bail!("expected ')'");
                }
                Ok(g)
            }
            Some(Tok::File(path)) => {
                let text = std::fs::read_to_string(&path)
                    .with_context(|| format!("reading game file {path}"))?;
                let spec = parse_game_file(&text).with_context(|| format!("in {path}"))?;
                Ok(Game::build(&spec)?)
            }
            Some(Tok::Word(w)) => match w.as_str() {
                "Bool" => Ok(bool_game()),
                "Two" => Ok(game_two()),
                "Unit" => Ok(Game::unit()),
                "Nat" => {
                    let ok = self.eat("(");
                    let n = self.next();
                    match (ok, n, self.eat(")")) {
                        (true, Some(Tok::Num(n)), true) => Ok(nat_game(n as u32)),
                        _ => bail!("expected Nat(N)"),
                    }
                }
                _ => bail!("unknown game '{w}'"),
            },
            Some(t) => bail!("unexpected {t:?} in game expression"),
            None => bail!("game expression ends early"),
        }
    }
}

pub fn parse_game(src: &str) -> Result<Game> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let g = p
        .expr()
        .with_context(|| format!("game expression `{src}`"))?;
    if p.pos < p.toks.len() {
        return Err(anyhow!("trailing input in game expression `{src}`"));
    }
    Ok(g)
}
