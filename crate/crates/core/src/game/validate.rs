use std::fmt;

use super::{Game, Move, Polarity, Position};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Norm,
    Compatibility,
    SuffixDomination,
    SubAdditivity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Norm => "norm",
            Axiom::Compatibility => "compatibility",
            Axiom::SuffixDomination => "suffix-domination",
            Axiom::SubAdditivity => "sub-additivity",
        })
    }
}

/// A failed axiom instance: the path `prefix · suffix` from `source`.
/// Norm and compatibility witnesses only use `prefix`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PayoffViolation {
    pub axiom: Axiom,
    pub source: Position,
    pub prefix: Vec<Move>,
    pub suffix: Vec<Move>,
}

impl PayoffViolation {
    pub fn describe(&self, game: &Game) -> String {
        match self.axiom {
            Axiom::Norm => format!("norm at {}", game.position_name(&self.source)),
            Axiom::Compatibility => format!("compatibility on {}", game.format_moves(&self.prefix)),
            _ => format!(
                "{} on ({}) ; ({}) from {}",
                self.axiom,
                game.format_moves(&self.prefix),
                game.format_moves(&self.suffix),
                game.position_name(&self.source)
            ),
        }
    }
}

/// Checks the four payoff axioms on every path from every reachable
/// position and every way of splitting it. An empty report means valid.
pub fn validate_payoff(game: &Game) -> Vec<PayoffViolation> {
    let mut out = Vec::new();
    for x in game.reachable_positions() {
        if !game.payoff(&x, &[]).is_zero() {
            out.push(PayoffViolation {
                axiom: Axiom::Norm,
                source: x.clone(),
                prefix: Vec::new(),
                suffix: Vec::new(),
            });
        }
        for m in game.moves_from(&x) {
            let k = game.payoff(&x, &[m]);
            let ok = match game.polarity(m) {
                Polarity::Opponent => k.plus == 0,
                Polarity::Player => k.minus == 0,
            };
            if !ok {
                out.push(PayoffViolation {
                    axiom: Axiom::Compatibility,
                    source: x.clone(),
                    prefix: vec![m],
                    suffix: Vec::new(),
                });
            }
        }
        for u in game.enumerate_paths(&x, usize::MAX) {
            let whole = game.payoff(&x, &u);
            let mut mid = x.clone();
            for cut in 0..=u.len() {
                if cut > 0 {
                    mid = game.apply(&mid, u[cut - 1]).expect("enumerated path");
                }
                let (s, t) = u.split_at(cut);
                let ks = game.payoff(&x, s);
                let kt = game.payoff(&mid, t);
                let witness = |axiom| PayoffViolation {
                    axiom,
                    source: x.clone(),
                    prefix: s.to_vec(),
                    suffix: t.to_vec(),
                };
                if !kt.le(whole) {
                    out.push(witness(Axiom::SuffixDomination));
                }
                if !whole.le(ks + kt) {
                    out.push(witness(Axiom::SubAdditivity));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{bool_game, game_two, nat_game, GameSpec, Payoff};

    fn base() -> GameSpec {
        GameSpec::new("T", &["r", "a", "b"], "r")
            .edge("q", "r", "a", Polarity::Opponent, Payoff::new(0, 1))
            .edge("V", "a", "b", Polarity::Player, Payoff::ZERO)
    }

    #[test]
    fn catalog_is_valid() {
        for g in [bool_game(), game_two(), nat_game(8)] {
            assert!(validate_payoff(&g).is_empty());
        }
    }

    #[test]
    fn norm_violation() {
        let g = Game::build(&base().empty_payoff("a", Payoff::new(1, 0))).unwrap();
        let r = validate_payoff(&g);
        assert!(r
            .iter()
            .any(|v| v.axiom == Axiom::Norm && g.position_name(&v.source) == "a"));
    }

    #[test]
    fn sub_additivity_violation() {
        let g = Game::build(&base().path_payoff(&["q", "V"], Payoff::new(0, 2))).unwrap();
        let r = validate_payoff(&g);
        let names: Vec<(Axiom, String, String)> = r
            .iter()
            .map(|v| {
                (
                    v.axiom,
                    g.format_moves(&v.prefix),
                    g.format_moves(&v.suffix),
                )
            })
            .collect();
        assert!(names.contains(&(Axiom::SubAdditivity, "q".into(), "V".into())));
    }
}
