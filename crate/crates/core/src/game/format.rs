//! Line-oriented game files.
//!
//! ```text
//! # comments start with '#'
//! [game]
//! Bool
//! [positions]
//! root asked true false
//! [root]
//! root
//! [edges]
//! # id src dst label polarity k+ k- [ask|answer|neutral]
//! q root asked q - 0 1
//! V asked true V + 0 0
//! [path_payoffs]
//! # edge ids = k+ k-, or @position = k+ k- for an empty path
//! q V = 0 0
//! ```

use thiserror::Error;

use super::{EdgeSpec, GameSpec, MoveKind, PathSpec, Payoff, Polarity};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        message: message.into(),
    }
}

#[derive(Copy, Clone, PartialEq)]
enum Section {
    None,
    Game,
    Positions,
    Root,
    Edges,
    Paths,
}

fn parse_nat(tok: &str, line: usize) -> Result<u32, FormatError> {
    tok.parse()
        .map_err(|_| err(line, format!("expected a natural number, found '{tok}'")))
}

pub fn parse_game_file(text: &str) -> Result<GameSpec, FormatError> {
    let mut spec = GameSpec::default();
    let mut section = Section::None;
    let mut seen_root = false;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('[') {
            section = match line {
                "[game]" => Section::Game,
                "[positions]" => Section::Positions,
                "[root]" => Section::Root,
                "[edges]" => Section::Edges,
                "[path_payoffs]" => Section::Paths,
                other => return Err(err(ln, format!("unknown section {other}"))),
            };
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match section {
            Section::None => return Err(err(ln, "content before the first section")),
            Section::Game => spec.name = line.to_string(),
            Section::Positions => spec.positions.extend(toks.iter().map(|t| t.to_string())),
            Section::Root => {
                if seen_root || toks.len() != 1 {
                    return Err(err(ln, "exactly one root expected"));
                }
                spec.root = toks[0].to_string();
                seen_root = true;
            }
            Section::Edges => {
                if toks.len() != 7 && toks.len() != 8 {
                    return Err(err(
                        ln,
                        "edge lines have the form: id src dst label +|- k+ k- [kind]",
                    ));
                }
                let polarity = match toks[4] {
                    "+" | "+1" => Polarity::Player,
                    "-" | "-1" => Polarity::Opponent,
                    p => return Err(err(ln, format!("bad polarity '{p}'"))),
                };
                let kind = match toks.get(7) {
                    None => None,
                    Some(k) => Some(
                        MoveKind::from_keyword(k)
                            .ok_or_else(|| err(ln, format!("unknown move kind '{k}'")))?,
                    ),
                };
                spec.edges.push(EdgeSpec {
                    id: toks[0].to_string(),
                    src: toks[1].to_string(),
                    dst: toks[2].to_string(),
                    label: toks[3].to_string(),
                    polarity,
                    payoff: Payoff::new(parse_nat(toks[5], ln)?, parse_nat(toks[6], ln)?),
                    kind,
                });
            }
            Section::Paths => {
                let eq = toks
                    .iter()
                    .position(|t| *t == "=")
                    .ok_or_else(|| err(ln, "missing '='"))?;
                if toks.len() != eq + 3 || eq == 0 {
                    return Err(err(
                        ln,
                        "path payoff lines have the form: e1 e2 ... = k+ k-",
                    ));
                }
                let value = Payoff::new(parse_nat(toks[eq + 1], ln)?, parse_nat(toks[eq + 2], ln)?);
                let path = match toks[0].strip_prefix('@') {
                    Some(pos) if eq == 1 => PathSpec::Empty(pos.to_string()),
                    Some(_) => {
                        return Err(err(ln, "an empty-path entry names exactly one position"))
                    }
                    None => PathSpec::Edges(toks[..eq].iter().map(|t| t.to_string()).collect()),
                };
                spec.path_payoffs.push((path, value));
            }
        }
    }
    if !seen_root {
        return Err(err(text.lines().count(), "missing [root] section"));
    }
    Ok(spec)
}

pub fn print_game_file(spec: &GameSpec) -> String {
    let mut out = String::new();
    out.push_str("[game]\n");
    out.push_str(&spec.name);
    out.push_str("\n[positions]\n");
    out.push_str(&spec.positions.join(" "));
    out.push_str("\n[root]\n");
    out.push_str(&spec.root);
    out.push_str("\n[edges]\n");
    for e in &spec.edges {
        out.push_str(&format!(
            "{} {} {} {} {} {} {}",
            e.id, e.src, e.dst, e.label, e.polarity, e.payoff.plus, e.payoff.minus
        ));
        if let Some(k) = e.kind {
            out.push(' ');
            out.push_str(k.keyword());
        }
        out.push('\n');
    }
    if !spec.path_payoffs.is_empty() {
        out.push_str("[path_payoffs]\n");
        for (path, v) in &spec.path_payoffs {
            match path {
                PathSpec::Empty(p) => out.push_str(&format!("@{p}")),
                PathSpec::Edges(es) => out.push_str(&es.join(" ")),
            }
            out.push_str(&format!(" = {} {}\n", v.plus, v.minus));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{bool_game, nat_game, Arena};

    #[test]
    fn round_trip_catalog() {
        for g in [bool_game(), nat_game(2)] {
            let spec = g.arena().unwrap().to_spec();
            let text = print_game_file(&spec);
            assert_eq!(parse_game_file(&text).unwrap(), spec);
            assert_eq!(
                &Arena::build(&parse_game_file(&text).unwrap()).unwrap(),
                g.arena().unwrap()
            );
        }
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_game_file("[game]\nx\n[edges]\nq a b\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(parse_game_file("[bogus]\n").is_err());
        assert!(parse_game_file("[game]\nx\n").is_err());
    }

    #[test]
    fn empty_path_entries() {
        let text = "[positions]\nr\n[root]\nr\n[path_payoffs]\n@r = 1 0\n";
        let spec = parse_game_file(text).unwrap();
        assert_eq!(
            spec.path_payoffs,
            vec![(PathSpec::Empty("r".into()), Payoff::new(1, 0))]
        );
        assert_eq!(parse_game_file(&print_game_file(&spec)).unwrap(), spec);
    }
}
