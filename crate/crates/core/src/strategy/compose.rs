//! Interactions, composition and witnesses.
//!
//! For `σ` on `A* ⊗ B` and `τ` on `B* ⊗ C`, an interaction is a sequence
//! `u` of moves of `A`, `B` and `C` whose projection on `A,B` is a play of
//! `σ`, whose projection on `B,C` is a play of `τ`, and whose projection
//! on `A,C` is an alternating play of `A* ⊗ C`. The composite `σ;τ` hides
//! the `B` moves.

use std::collections::{BTreeSet, HashSet};

use super::{Strategy, StrategyError};
use crate::game::{Game, Move, Position};
use crate::lazy::{materialize, Compose, OnOverflow, Table};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    A,
    B,
    C,
}

/// A move sequence over the three games. Each move is numbered in its own
/// component's atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interaction {
    pub moves: Vec<(Component, Move)>,
}

#[derive(Copy, Clone)]
struct Widths {
    a: usize,
    b: usize,
}

impl Widths {
    fn ab(self, (c, m): (Component, Move)) -> Option<Move> {
        match c {
            Component::A => Some(m),
            Component::B => Some(m.shifted(self.a as isize)),
            Component::C => None,
        }
    }

    fn bc(self, (c, m): (Component, Move)) -> Option<Move> {
        match c {
            Component::A => None,
            Component::B => Some(m),
            Component::C => Some(m.shifted(self.b as isize)),
        }
    }

    fn ac(self, (c, m): (Component, Move)) -> Option<Move> {
        match c {
            Component::A => Some(m),
            Component::B => None,
            Component::C => Some(m.shifted(self.a as isize)),
        }
    }
}

impl Interaction {
    fn project(&self, f: impl Fn((Component, Move)) -> Option<Move>) -> Vec<Move> {
        self.moves.iter().filter_map(|&cm| f(cm)).collect()
    }

    pub fn on_ab(&self, a: &Game, b: &Game) -> Vec<Move> {
        let w = Widths {
            a: a.atom_count(),
            b: b.atom_count(),
        };
        self.project(|cm| w.ab(cm))
    }

    pub fn on_bc(&self, a: &Game, b: &Game) -> Vec<Move> {
        let w = Widths {
            a: a.atom_count(),
            b: b.atom_count(),
        };
        self.project(|cm| w.bc(cm))
    }

    /// The hidden play on `A* ⊗ C`.
    pub fn on_ac(&self, a: &Game, b: &Game) -> Vec<Move> {
        let w = Widths {
            a: a.atom_count(),
            b: b.atom_count(),
        };
        self.project(|cm| w.ac(cm))
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn is_prefix_of(&self, other: &Interaction) -> bool {
        other.moves.starts_with(&self.moves)
    }
}

fn check_games(
    a: &Game,
    b: &Game,
    c: &Game,
    sigma: &Strategy,
    tau: &Strategy,
) -> Result<(Game, Game, Game), StrategyError> {
    let ab = a.dual().tensor(b);
    let bc = b.dual().tensor(c);
    if sigma.game().atoms() != ab.atoms() || tau.game().atoms() != bc.atoms() {
        return Err(StrategyError::GameMismatch);
    }
    Ok((sigma.game().clone(), tau.game().clone(), a.dual().tensor(c)))
}

struct Search<'a> {
    w: Widths,
    games: (Game, Game, Game),
    sigma: &'a Strategy,
    tau: &'a Strategy,
    pre_sigma: HashSet<Vec<Move>>,
    pre_tau: HashSet<Vec<Move>>,
    /// When set, only interactions hiding to this play are kept.
    target: Option<&'a [Move]>,
}

struct Cursor {
    u: Vec<(Component, Move)>,
    ab: Vec<Move>,
    bc: Vec<Move>,
    ac: Vec<Move>,
    pab: Position,
    pbc: Position,
    pac: Position,
}

impl Search<'_> {
    fn run(&self) -> Vec<Interaction> {
        let (gab, gbc, gac) = &self.games;
        let mut cur = Cursor {
            u: Vec::new(),
            ab: Vec::new(),
            bc: Vec::new(),
            ac: Vec::new(),
            pab: gab.root(),
            pbc: gbc.root(),
            pac: gac.root(),
        };
        let mut found = Vec::new();
        self.step(&mut cur, &mut found);
        found
    }

    fn step(&self, cur: &mut Cursor, found: &mut Vec<Interaction>) {
        let (gab, gbc, gac) = (&self.games.0, &self.games.1, &self.games.2);
        if self.sigma.contains(&cur.ab)
            && self.tau.contains(&cur.bc)
            && gac.is_alternating(&cur.ac)
            && self.target.is_none_or(|t| t == cur.ac.as_slice())
        {
            found.push(Interaction {
                moves: cur.u.clone(),
            });
        }
        let mut candidates = Vec::new();
        for m in gab.moves_from(&cur.pab) {
            if m.atom() < self.w.a {
                candidates.push((Component::A, m));
            } else {
                candidates.push((Component::B, m.shifted(-(self.w.a as isize))));
            }
        }
        for m in gbc.moves_from(&cur.pbc) {
            if m.atom() >= self.w.b {
                candidates.push((Component::C, m.shifted(-(self.w.b as isize))));
            }
        }
        for cm in candidates {
            let mab = self.w.ab(cm);
            let mbc = self.w.bc(cm);
            let mac = self.w.ac(cm);
            if let Some(m) = mab {
                cur.ab.push(m);
                let ok = self.pre_sigma.contains(&cur.ab);
                cur.ab.pop();
                if !ok {
                    continue;
                }
            }
            if let Some(m) = mbc {
                if !gbc.is_legal(&cur.pbc, m) {
                    continue;
                }
                cur.bc.push(m);
                let ok = self.pre_tau.contains(&cur.bc);
                cur.bc.pop();
                if !ok {
                    continue;
                }
            }
            if let Some(m) = mac {
                if !gac.is_legal(&cur.pac, m) {
                    continue;
                }
                if let Some(t) = self.target {
                    if t.get(cur.ac.len()) != Some(&m) {
                        continue;
                    }
                }
            }
            let saved = (cur.pab.clone(), cur.pbc.clone(), cur.pac.clone());
            if let Some(m) = mab {
                cur.pab = gab.apply(&cur.pab, m).unwrap();
                cur.ab.push(m);
            }
            if let Some(m) = mbc {
                cur.pbc = gbc.apply(&cur.pbc, m).unwrap();
                cur.bc.push(m);
            }
            if let Some(m) = mac {
                cur.pac = gac.apply(&cur.pac, m).unwrap();
                cur.ac.push(m);
            }
            cur.u.push(cm);
            self.step(cur, found);
            cur.u.pop();
            if mab.is_some() {
                cur.ab.pop();
            }
            if mbc.is_some() {
                cur.bc.pop();
            }
            if mac.is_some() {
                cur.ac.pop();
            }
            (cur.pab, cur.pbc, cur.pac) = saved;
        }
    }
}

fn search<'a>(
    a: &Game,
    b: &Game,
    c: &Game,
    sigma: &'a Strategy,
    tau: &'a Strategy,
    target: Option<&'a [Move]>,
) -> Result<Vec<Interaction>, StrategyError> {
    let games = check_games(a, b, c, sigma, tau)?;
    let s = Search {
        w: Widths {
            a: a.atom_count(),
            b: b.atom_count(),
        },
        games,
        sigma,
        tau,
        pre_sigma: sigma.prefixes(),
        pre_tau: tau.prefixes(),
        target,
    };
    let mut found = s.run();
    found.sort();
    Ok(found)
}

/// Every interaction of `σ` and `τ`, by exhaustive search.
pub fn interactions(
    a: &Game,
    b: &Game,
    c: &Game,
    sigma: &Strategy,
    tau: &Strategy,
) -> Result<Vec<Interaction>, StrategyError> {
    search(a, b, c, sigma, tau, None)
}

/// The interactions hiding to exactly `s`.
pub fn witnesses(
    a: &Game,
    b: &Game,
    c: &Game,
    sigma: &Strategy,
    tau: &Strategy,
    s: &[Move],
) -> Result<Vec<Interaction>, StrategyError> {
    search(a, b, c, sigma, tau, Some(s))
}

pub fn unique_witness(
    a: &Game,
    b: &Game,
    c: &Game,
    sigma: &Strategy,
    tau: &Strategy,
    s: &[Move],
) -> Result<Interaction, StrategyError> {
    let mut found = witnesses(a, b, c, sigma, tau, s)?;
    match found.len() {
        0 => Err(StrategyError::NoWitness),
        1 => Ok(found.pop().unwrap()),
        n => Err(StrategyError::Ambiguous(n)),
    }
}

/// `σ;τ` on `A* ⊗ C`, computed by running both strategies against each
/// other move by move.
pub fn compose(
    a: &Game,
    b: &Game,
    c: &Game,
    sigma: &Strategy,
    tau: &Strategy,
) -> Result<Strategy, StrategyError> {
    let (_, _, gac) = check_games(a, b, c, sigma, tau)?;
    let beh = Compose::new(
        Table::shared(sigma),
        Table::shared(tau),
        a.atom_count(),
        b.atom_count(),
    );
    Ok(materialize(
        &gac,
        &beh,
        gac.max_play_len(),
        OnOverflow::Fail,
    )?)
}

/// `σ;τ` as the literal hiding of all interactions.
pub fn compose_by_hiding(
    a: &Game,
    b: &Game,
    c: &Game,
    sigma: &Strategy,
    tau: &Strategy,
) -> Result<Strategy, StrategyError> {
    let gac = a.dual().tensor(c);
    let plays: BTreeSet<Vec<Move>> = interactions(a, b, c, sigma, tau)?
        .iter()
        .map(|u| u.on_ac(a, b))
        .collect();
    Ok(Strategy::new(gac, plays))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::bool_game;
    use crate::strategy::{copycat, validate_strategy};

    #[test]
    fn bottoms_interact_trivially() {
        let b = bool_game();
        let s = Strategy::bottom(b.dual().tensor(&b));
        let u = interactions(&b, &b, &b, &s, &s).unwrap();
        assert_eq!(u, vec![Interaction { moves: vec![] }]);
    }

    #[test]
    fn copycat_composes_to_copycat() {
        let b = bool_game();
        let cc = copycat(&b);
        let comp = compose(&b, &b, &b, &cc, &cc).unwrap();
        assert_eq!(comp, cc);
        assert_eq!(compose_by_hiding(&b, &b, &b, &cc, &cc).unwrap(), cc);
        assert!(validate_strategy(&comp).is_empty());
        for s in comp.plays() {
            let w = unique_witness(&b, &b, &b, &cc, &cc, s).unwrap();
            assert_eq!(w.on_ac(&b, &b), *s);
            assert_eq!(w.len(), s.len() + s.len() / 2);
        }
    }

    #[test]
    fn mismatch_detected() {
        let b = bool_game();
        let cc = copycat(&b);
        assert_eq!(
            compose(&b, &Game::unit(), &b, &cc, &cc),
            Err(StrategyError::GameMismatch)
        );
    }
}
