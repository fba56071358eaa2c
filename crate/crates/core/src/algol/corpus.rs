//! Sample programs with their expected values.

use super::eval::Store;
use thiserror::Error;

use super::parse::{parse_term, ParseError};
use super::syntax::Term;

#[derive(Copy, Clone, Debug)]
pub struct Program {
    pub name: &'static str,
    pub source: &'static str,
    /// Initial store, as `(reference, value)` sources.
    pub store: &'static [(&'static str, &'static str)],
    /// The value the program evaluates to, as printed.
    pub value: &'static str,
    /// The store after evaluation.
    pub after: &'static [(&'static str, &'static str)],
}

impl Program {
    pub fn initial_store(&self) -> Result<Store, ParseError> {
        let mut s = Store::new();
        for (x, v) in self.store {
            s.insert(x.to_string(), parse_term(v)?);
        }
        Ok(s)
    }

    pub fn final_store(&self) -> Result<Store, ParseError> {
        let mut s = Store::new();
        for (x, v) in self.after {
            s.insert(x.to_string(), parse_term(v)?);
        }
        Ok(s)
    }

    pub fn sample(&self) -> Result<Sample, ParseError> {
        Ok(Sample {
            name: self.name.to_string(),
            term: parse_term(self.source)?,
            store: self.initial_store()?,
        })
    }
}

const fn p(name: &'static str, source: &'static str, value: &'static str) -> Program {
    Program {
        name,
        source,
        store: &[],
        value,
        after: &[],
    }
}

type Cells = &'static [(&'static str, &'static str)];

const fn ps(
    name: &'static str,
    store: Cells,
    source: &'static str,
    value: &'static str,
    after: Cells,
) -> Program {
    Program {
        name,
        source,
        store,
        value,
        after,
    }
}

/// A program with its initial store, as read from a corpus file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub name: String,
    pub term: Term,
    pub store: Store,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("corpus line {line}: {message}")]
pub struct CorpusError {
    pub line: usize,
    pub message: String,
}

/// Reads one program per line: `name | source | x := V | ...`, where the
/// trailing fields give the initial store. `#` starts a comment line.
pub fn parse_corpus(text: &str) -> Result<Vec<Sample>, CorpusError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |message: String| CorpusError {
            line: i + 1,
            message,
        };
        let mut fields = line.split('|').map(str::trim);
        let name = fields.next().unwrap_or_default();
        let source = fields
            .next()
            .ok_or_else(|| bad("expected `name | source`".into()))?;
        if name.is_empty() {
            return Err(bad("empty program name".into()));
        }
        let term = parse_term(source).map_err(|e| bad(e.to_string()))?;
        let mut store = Store::new();
        for cell in fields {
            let (x, v) = cell
                .split_once(":=")
                .ok_or_else(|| bad(format!("expected `x := V`, found `{cell}`")))?;
            let v = parse_term(v.trim()).map_err(|e| bad(e.to_string()))?;
            store.insert(x.trim().to_string(), v);
        }
        out.push(Sample {
            name: name.to_string(),
            term,
            store,
        });
    }
    Ok(out)
}

pub const CORPUS: [Program; 25] = [
    p("nat", "3", "3"),
    p("nat-max", "8", "8"),
    p("bool", "F", "F"),
    p("skip", "skip", "skip"),
    p("if", "if T then 1 else 2", "1"),
    p("zero-true", "if zero(0) then 4 else 5", "4"),
    p("zero-false", "zero(3)", "F"),
    p("beta", "(\\x:Nat. x) 6", "6"),
    p("twice", "(\\f:Nat -> Nat. f (f 2)) (\\x:Nat. x)", "2"),
    p("thunk", "(\\b:Bool. if b then 1 else 0) (zero(0))", "1"),
    p("shadow", "(\\x:Nat. (\\x:Nat. x) 2) 1", "2"),
    p("curried", "(\\y:Bool. \\x:Nat. y) T", "\\x:Nat. T"),
    p("identity", "\\x:Nat. x", "\\x:Nat. x"),
    p("pair", "pi1(<4, T>)", "4"),
    p("pair-fun", "pi2(<T, \\x:Nat. zero(x)>) 0", "T"),
    p(
        "cond-fun",
        "(if zero(1) then \\x:Nat. 1 else \\x:Nat. x) 4",
        "4",
    ),
    p("new", "new x := 4 in !x", "4"),
    p("assign", "new x := 0 in new y := (x := 5) in !x", "5"),
    p(
        "assign-twice",
        "new x := 1 in new u := (x := 2; x := 7) in !x",
        "7",
    ),
    p(
        "cond-store",
        "new x := 0 in new u := (if zero(!x) then x := 6 else skip) in !x",
        "6",
    ),
    p(
        "copy-cell",
        "new x := 2 in new y := 0 in new u := (y := !x) in !y",
        "2",
    ),
    p(
        "scoped",
        "new x := 1 in new r := (new z := 8 in x := !z) in !x",
        "8",
    ),
    p(
        "arg-reads",
        "new x := 3 in (\\n:Nat. if zero(n) then 0 else n) (!x)",
        "3",
    ),
    ps(
        "store-write",
        &[("x", "2")],
        "new u := (x := 5) in !x",
        "5",
        &[("x", "5")],
    ),
    ps(
        "store-fun",
        &[("f", "\\x:Nat. zero(x)"), ("x", "0")],
        "(!f) (!x)",
        "T",
        &[("f", "\\x:Nat. zero(x)"), ("x", "0")],
    ),
];

#[cfg(test)]
mod tests {
    use super::super::eval::eval;
    use super::*;

    #[test]
    fn corpus_file() {
        let text = "# comment\nw | new u := (x := 5) in !x | x := 2\n\nid | \\y:Nat. y\n";
        let got = parse_corpus(text).unwrap();
        assert_eq!(got.len(), 2);
        assert_eq!(got[0].store["x"], Term::Nat(2));
        assert_eq!(got[1].term.to_string(), "\\y:Nat. y");
        assert_eq!(parse_corpus("a | 1 | x = 2").unwrap_err().line, 1);
        assert_eq!(parse_corpus("\nb").unwrap_err().line, 2);
    }

    #[test]
    fn corpus_evaluates_as_recorded() {
        for prog in CORPUS {
            let t = parse_term(prog.source).unwrap();
            let out = eval(&t, &prog.initial_store().unwrap(), 10_000).unwrap();
            assert_eq!(out.value.to_string(), prog.value, "{}", prog.name);
            assert_eq!(out.store, prog.final_store().unwrap(), "{}", prog.name);
        }
    }
}
