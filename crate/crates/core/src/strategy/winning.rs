//! The winning condition and well-bracketing.

use std::collections::BTreeSet;

use super::{Strategy, StrategyError};
use crate::game::{Game, Move, Payoff, Polarity};

/// A path played by a strategy whose payoff breaks `κ⁺ = 0 ⇒ κ⁻ = 0`:
/// `prefix` and `prefix · segment` are both plays of the strategy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WinningViolation {
    pub prefix: Vec<Move>,
    pub segment: Vec<Move>,
    pub payoff: Payoff,
}

/// Checks every path the strategy plays: each nonempty `t` with `s` and
/// `s · t` both in `σ`. An empty result means winning.
pub fn is_winning(sigma: &Strategy) -> Vec<WinningViolation> {
    let g = sigma.game();
    let mut out = Vec::new();
    for play in sigma.plays() {
        let mut at = g.root();
        for cut in 0..play.len() {
            if cut > 0 {
                at = g.apply(&at, play[cut - 1]).expect("play of the game");
            }
            if !sigma.contains(&play[..cut]) {
                continue;
            }
            let segment = &play[cut..];
            let payoff = g.payoff(&at, segment);
            if !payoff.player_safe() {
                out.push(WinningViolation {
                    prefix: play[..cut].to_vec(),
                    segment: segment.to_vec(),
                    payoff,
                });
            }
        }
    }
    out
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Bracketing {
    Player,
    Opponent,
    Both,
}

/// Even-length segments `(start, end)` of `s` that break well-bracketing
/// in the given mode.
pub fn bracketing_violations(game: &Game, s: &[Move], mode: Bracketing) -> Vec<(usize, usize)> {
    let mut positions = vec![game.root()];
    for &m in s {
        let next = game
            .apply(positions.last().unwrap(), m)
            .expect("play of the game");
        positions.push(next);
    }
    let mut out = Vec::new();
    for start in 0..s.len() {
        for end in (start + 2..=s.len()).step_by(2) {
            let last = game.polarity(s[end - 1]);
            let k = game.payoff(&positions[start], &s[start..end]);
            let bad = match last {
                Polarity::Player => mode != Bracketing::Opponent && !k.player_safe(),
                Polarity::Opponent => mode != Bracketing::Player && !k.opponent_safe(),
            };
            if bad {
                out.push((start, end));
            }
        }
    }
    out
}

pub fn is_well_bracketed(game: &Game, s: &[Move], mode: Bracketing) -> bool {
    bracketing_violations(game, s, mode).is_empty()
}

/// `σ ⋈ τ = {ε} ∪ { s·m | s·m ∈ σ, o·s ∈ τ }` for `σ` on `A` and `τ` on
/// `A* ⊗ 𝟚`, where `o` is the move of `𝟚`.
pub fn interact_two(
    sigma: &Strategy,
    tau: &Strategy,
) -> Result<BTreeSet<Vec<Move>>, StrategyError> {
    let a = sigma.game();
    let n = a.atom_count();
    let expected = a.dual().tensor(&crate::game::game_two());
    if tau.game().atoms() != expected.atoms() {
        return Err(StrategyError::GameMismatch);
    }
    let o = Move::new(n, 0);
    let mut out = BTreeSet::from([Vec::new()]);
    for play in sigma.plays() {
        let Some((&m, s)) = play.split_last() else {
            continue;
        };
        if a.polarity(m) != Polarity::Player {
            continue;
        }
        let mut witness = vec![o];
        witness.extend_from_slice(s);
        if tau.contains(&witness) {
            out.insert(play.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{bool_game, game_two};

    /// `(B ⊸ B) ⊸ B` with atoms B1, B2*, B3.
    fn bbb() -> Game {
        let b = bool_game();
        b.loli(&b).loli(&b)
    }

    fn play(g: &Game, s: &str) -> Vec<Move> {
        s.split_whitespace()
            .map(|m| g.parse_move(m).unwrap())
            .collect()
    }

    #[test]
    fn early_answer_is_losing() {
        let g = bbb();
        let sigma = Strategy::from_names(g.clone(), &["q@2 q@1 q@0 V@2"]).unwrap();
        assert!(crate::strategy::validate_strategy(&sigma).is_empty());
        let bad = is_winning(&sigma);
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].segment, play(&g, "q@0 V@2"));
        assert_eq!(bad[0].payoff, Payoff::new(0, 1));
        assert_eq!(g.payoff(&g.root(), &play(&g, "q@2 q@1")), Payoff::new(1, 1));
    }

    #[test]
    fn bracketing_examples() {
        let g = bbb();
        assert!(is_well_bracketed(&g, &[], Bracketing::Both));
        assert!(is_well_bracketed(
            &g,
            &play(&g, "q@2 q@1 q@0 V@0 V@1 V@2"),
            Bracketing::Both
        ));
        assert!(!is_well_bracketed(
            &g,
            &play(&g, "q@2 q@1 q@0 V@2"),
            Bracketing::Player
        ));
    }

    #[test]
    fn answering_is_winning() {
        let b = bool_game();
        assert!(is_winning(&Strategy::from_names(b.clone(), &["q V"]).unwrap()).is_empty());
        assert!(is_winning(&Strategy::bottom(b)).is_empty());
    }

    #[test]
    fn interaction_with_two() {
        let b = bool_game();
        let sigma = Strategy::from_names(b.clone(), &["q V"]).unwrap();
        let g2 = b.dual().tensor(&game_two());
        let tau = Strategy::from_names(g2, &["o@1 q@0"]).unwrap();
        let out = interact_two(&sigma, &tau).unwrap();
        assert_eq!(out, BTreeSet::from([vec![], play(&b, "q V")]));
        let silent = interact_two(&Strategy::bottom(b.clone()), &tau).unwrap();
        assert_eq!(silent, BTreeSet::from([vec![]]));
    }
}
