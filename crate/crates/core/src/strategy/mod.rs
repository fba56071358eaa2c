//! Strategies as finite sets of plays.

mod compose;
mod winning;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::game::{Game, GameError, Move, Polarity};
use crate::lazy::{materialize, Copycat, OnOverflow, StepError};

pub use compose::{
    compose, compose_by_hiding, interactions, unique_witness, witnesses, Component, Interaction,
};
pub use winning::{
    bracketing_violations, interact_two, is_well_bracketed, is_winning, Bracketing,
    WinningViolation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrategyError {
    #[error("strategy games do not match the composition")]
    GameMismatch,
    #[error("play is not in the composite: no witness")]
    NoWitness,
    #[error("{0} distinct witnesses")]
    Ambiguous(usize),
    #[error(transparent)]
    Step(#[from] StepError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A strategy on a game: the set of plays it allows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strategy {
    game: Game,
    plays: BTreeSet<Vec<Move>>,
}

impl Strategy {
    pub fn new(game: Game, plays: BTreeSet<Vec<Move>>) -> Strategy {
        Strategy { game, plays }
    }

    /// `⊥ = {ε}`.
    pub fn bottom(game: Game) -> Strategy {
        Strategy::new(game, BTreeSet::from([Vec::new()]))
    }

    /// Builds from move names; every listed play is added with its even
    /// prefixes.
    pub fn from_names(game: Game, plays: &[&str]) -> Result<Strategy, GameError> {
        let mut set = BTreeSet::from([Vec::new()]);
        for p in plays {
            let moves = p
                .split_whitespace()
                .map(|m| game.parse_move(m))
                .collect::<Result<Vec<_>, _>>()?;
            for i in (0..=moves.len()).step_by(2) {
                set.insert(moves[..i].to_vec());
            }
            set.insert(moves);
        }
        Ok(Strategy::new(game, set))
    }

    pub fn game(&self) -> &Game {
        &self.game
    }

    pub fn plays(&self) -> &BTreeSet<Vec<Move>> {
        &self.plays
    }

    pub fn contains(&self, play: &[Move]) -> bool {
        self.plays.contains(play)
    }

    pub fn len(&self) -> usize {
        self.plays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plays.is_empty()
    }

    /// Same plays on another game with the same atoms.
    pub fn with_game(&self, game: Game) -> Strategy {
        Strategy::new(game, self.plays.clone())
    }

    /// Every prefix of every play.
    pub fn prefixes(&self) -> HashSet<Vec<Move>> {
        let mut out = HashSet::new();
        for p in &self.plays {
            for i in 0..=p.len() {
                out.insert(p[..i].to_vec());
            }
        }
        out
    }

    /// Plays renumbered through `map` (old atom → new atom) onto `game`.
    pub fn transport(&self, game: Game, map: &[usize]) -> Strategy {
        let plays = self
            .plays
            .iter()
            .map(|p| {
                p.iter()
                    .map(|m| Move::new(map[m.atom()], m.edge()))
                    .collect()
            })
            .collect();
        Strategy::new(game, plays)
    }

    /// Positions reached by the plays.
    pub fn positions(&self) -> BTreeSet<crate::game::Position> {
        self.plays
            .iter()
            .map(|p| {
                self.game
                    .walk(&self.game.root(), p)
                    .expect("play of the game")
            })
            .collect()
    }

    /// One line per play, in canonical order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.plays {
            out.push_str(&self.game.format_moves(p));
            out.push('\n');
        }
        out
    }

    /// Reads one play per line, in the syntax of [`Strategy::to_text`].
    /// Blank lines and `#` comments are skipped.
    pub fn from_text(game: Game, text: &str) -> Result<Strategy, StrategyError> {
        let mut plays = BTreeSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let play = if line == "ε" {
                Vec::new()
            } else {
                line.split_whitespace()
                    .map(|m| game.parse_move(m))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| StrategyError::Parse {
                        line: i + 1,
                        message: e.to_string(),
                    })?
            };
            plays.insert(play);
        }
        Ok(Strategy::new(game, plays))
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self
            .plays
            .iter()
            .map(|p| self.game.format_moves(p))
            .collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

/// The copycat strategy on `A* ⊗ A`.
pub fn copycat(a: &Game) -> Strategy {
    let g = a.dual().tensor(a);
    materialize(
        &g,
        &*Copycat::identity(a.atom_count()),
        g.max_play_len(),
        OnOverflow::Fail,
    )
    .expect("copycat answers within the game")
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Clause {
    MissingEmpty,
    NotAPlay,
    OddLength,
    NotAlternating,
    StartsWithPlayer,
    NotPrefixClosed,
    Nondeterministic,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::MissingEmpty => "missing-empty-play",
            Clause::NotAPlay => "not-a-play",
            Clause::OddLength => "odd-length",
            Clause::NotAlternating => "not-alternating",
            Clause::StartsWithPlayer => "starts-with-player",
            Clause::NotPrefixClosed => "not-even-prefix-closed",
            Clause::Nondeterministic => "nondeterministic",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyViolation {
    pub clause: Clause,
    pub play: Vec<Move>,
    /// The conflicting play for [`Clause::Nondeterministic`].
    pub other: Option<Vec<Move>>,
}

pub fn validate_strategy(sigma: &Strategy) -> Vec<StrategyViolation> {
    let g = sigma.game();
    let mut out = Vec::new();
    let mut push = |clause, play: &[Move], other: Option<Vec<Move>>| {
        out.push(StrategyViolation {
            clause,
            play: play.to_vec(),
            other,
        })
    };
    if !sigma.contains(&[]) {
        push(Clause::MissingEmpty, &[], None);
    }
    for p in sigma.plays() {
        if !g.is_play(p) {
            push(Clause::NotAPlay, p, None);
            continue;
        }
        if p.len() % 2 == 1 {
            push(Clause::OddLength, p, None);
        }
        if !g.is_alternating(p) {
            push(Clause::NotAlternating, p, None);
        }
        if p.first()
            .is_some_and(|&m| g.polarity(m) == Polarity::Player)
        {
            push(Clause::StartsWithPlayer, p, None);
        }
        if p.len() >= 2 && !sigma.contains(&p[..p.len() - 2]) {
            push(Clause::NotPrefixClosed, p, None);
        }
    }
    // Plays sharing everything but the last move.
    let plays: Vec<&Vec<Move>> = sigma
        .plays()
        .iter()
        .filter(|p| !p.is_empty() && p.len() % 2 == 0)
        .collect();
    for (i, p) in plays.iter().enumerate() {
        for q in &plays[i + 1..] {
            if p.len() == q.len() && p[..p.len() - 1] == q[..q.len() - 1] {
                push(Clause::Nondeterministic, p, Some(q.to_vec()));
            }
        }
    }
    out
}
