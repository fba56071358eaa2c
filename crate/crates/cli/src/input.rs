//! Strategy files.
//!
//! ```text
//! # either a game
//! game (Bool -o Bool) -o Bool
//! # or an arrow A → B, played on A* ⊗ B
//! from Bool
//! to Bool
//! q@1 q@0 V@0 V@1
//! ```
//!
//! Every other line is a play, as space-separated move names.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use cgw::game::Game;
use cgw::strategy::Strategy;

use crate::game_expr::parse_game;

#[derive(Debug)]
pub struct Loaded {
    pub strategy: Strategy,
    pub from: Option<Game>,
    pub to: Option<Game>,
    /// The header expressions, as written.
    pub from_src: String,
    pub to_src: String,
}

impl Loaded {
    pub fn arrow(&self) -> Result<(Game, Game)> {
        match (&self.from, &self.to) {
            (Some(a), Some(b)) => Ok((a.clone(), b.clone())),
            _ => Err(anyhow!("the strategy file needs `from` and `to` headers")),
        }
    }
}

pub fn read_strategy(path: &Path) -> Result<Loaded> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_strategy(&text).with_context(|| format!("in {}", path.display()))
}

pub fn parse_strategy(text: &str) -> Result<Loaded> {
    let (mut game, mut from, mut to) = (None, None, None);
    let (mut from_src, mut to_src) = (String::new(), String::new());
    // Headers become blank lines so that play line numbers stay right.
    let mut body = String::new();
    for line in text.lines() {
        let t = line.trim();
        let header = ["game ", "from ", "to "]
            .into_iter()
            .find(|h| t.starts_with(h));
        match header {
            Some(h) => {
                let src = t[h.len()..].trim();
                let g = parse_game(src)?;
                match h {
                    "game " => game = Some(g),
                    "from " => (from, from_src) = (Some(g), src.to_string()),
                    _ => (to, to_src) = (Some(g), src.to_string()),
                }
                body.push('\n');
            }
            None => {
                body.push_str(line);
                body.push('\n');
            }
        }
    }
    let g = match (&game, &from, &to) {
        (Some(g), None, None) => g.clone(),
        (None, Some(a), Some(b)) => a.dual().tensor(b),
        _ => bail!("expected a `game` header, or `from` and `to` headers"),
    };
    let strategy = Strategy::from_text(g, &body)?;
    Ok(Loaded {
        strategy,
        from,
        to,
        from_src,
        to_src,
    })
}

/// The file for `σ : A → B`, given the expressions for `A` and `B`.
pub fn write_strategy(a: &str, b: &str, sigma: &Strategy) -> String {
    format!("from {a}\nto {b}\n{}", sigma.to_text())
}
