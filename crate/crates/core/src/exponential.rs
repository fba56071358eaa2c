//! The exponential `!A`, truncated at `k` copies, with its comonoid
//! structure.

use std::sync::Arc;

use thiserror::Error;

use crate::game::{Game, GameError};
use crate::lazy::{materialize_upto, Factor, OnOverflow, Port, Share, StepError, Table};
use crate::monoidal::{symmetry, MonoidalError, Morphism};
use crate::strategy::Strategy;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExpError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Monoidal(#[from] MonoidalError),
    #[error(transparent)]
    Step(#[from] StepError),
}

/// `!A` truncated at `copies` copies. Copy `c` of the base occupies atoms
/// `c·w .. (c+1)·w` where `w` is the base width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BangGame {
    pub base: Game,
    pub copies: usize,
    pub game: Game,
}

pub fn bang(a: &Game, copies: usize) -> Result<BangGame, ExpError> {
    Ok(BangGame {
        base: a.clone(),
        copies,
        game: a.bang(copies)?,
    })
}

impl BangGame {
    pub fn width(&self) -> usize {
        self.base.atom_count()
    }

    fn factor(&self) -> Factor {
        Factor::bang(self.width(), self.copies)
    }
}

/// `!A → 1`.
pub fn counit(b: &BangGame) -> Morphism {
    Morphism::bottom(&b.game, &Game::unit())
}

/// `!A → A`, copycat between the first copy and `A`.
pub fn dereliction(b: &BangGame) -> Morphism {
    Morphism::new(
        b.game.clone(),
        b.base.clone(),
        Share::shared(vec![b.factor()], vec![Port::single(0)]),
    )
}

/// `!A → !A ⊗ !A`. Each copy opened on the right-hand side is bound to the
/// least source copy not yet in use, so the source stays in prefix form
/// whatever order the two sides are opened in.
pub fn comult(b: &BangGame) -> Morphism {
    let ports = vec![Port::bang(0, b.copies), Port::bang(0, b.copies)];
    Morphism::new(
        b.game.clone(),
        b.game.tensor(&b.game),
        Share::shared(vec![b.factor()], ports),
    )
}

/// A comultiplication that refuses to let the right-hand side open first.
/// It is a valid strategy but not cocommutative.
pub fn lopsided_comult(b: &BangGame, max_len: usize) -> Result<Morphism, ExpError> {
    let d = comult(b);
    let g = d.game();
    let full = materialize_upto(&g, &*d.beh, max_len, OnOverflow::Prune)?;
    let right_starts = 2 * b.width() * b.copies;
    let plays = full
        .plays()
        .iter()
        .filter(|p| p.first().is_none_or(|m| m.atom() < right_starts))
        .cloned()
        .collect();
    let s = Strategy::new(g, plays);
    Ok(Morphism::new(d.src, d.dst, Table::shared(&s)))
}

pub struct ComonoidStructure {
    pub bang: BangGame,
    pub counit: Morphism,
    pub comult: Morphism,
    pub dereliction: Morphism,
}

impl ComonoidStructure {
    pub fn new(b: BangGame) -> ComonoidStructure {
        ComonoidStructure {
            counit: counit(&b),
            comult: comult(&b),
            dereliction: dereliction(&b),
            bang: b,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawCheck {
    pub law: &'static str,
    pub passed: bool,
    /// Number of plays on the left-hand side.
    pub plays: usize,
    pub witness: Option<String>,
}

fn same(
    law: &'static str,
    lhs: &Morphism,
    rhs: &Morphism,
    max_len: usize,
) -> Result<LawCheck, ExpError> {
    let l = materialize_upto(&lhs.game(), &*lhs.beh, max_len, OnOverflow::Prune)?;
    let r = materialize_upto(&rhs.game(), &*rhs.beh, max_len, OnOverflow::Prune)?;
    let witness = l
        .plays()
        .symmetric_difference(r.plays())
        .next()
        .map(|p| l.game().format_moves(p));
    Ok(LawCheck {
        law,
        passed: witness.is_none(),
        plays: l.len(),
        witness,
    })
}

/// Counit laws, coassociativity and cocommutativity, compared on plays of
/// length at most `max_len`. Moves that would need more than `k` copies
/// are left unanswered on both sides.
pub fn comonoid_law_check(
    s: &ComonoidStructure,
    max_len: usize,
) -> Result<Vec<LawCheck>, ExpError> {
    let b = &s.bang.game;
    let id = Morphism::identity(b);
    let d = &s.comult;
    let mut out = Vec::new();
    let left_unit = d.then(&s.counit.tensor(&id))?;
    out.push(same(
        "counit-left",
        &left_unit.retype(b.clone(), b.clone())?,
        &id,
        max_len,
    )?);
    let right_unit = d.then(&id.tensor(&s.counit))?;
    out.push(same(
        "counit-right",
        &right_unit.retype(b.clone(), b.clone())?,
        &id,
        max_len,
    )?);
    let lhs = d.then(&d.tensor(&id))?;
    let rhs = d.then(&id.tensor(d))?;
    out.push(same("coassociativity", &lhs, &rhs, max_len)?);
    let swapped = d.then(&symmetry(b, b))?;
    out.push(same("cocommutativity", &swapped, d, max_len)?);
    Ok(out)
}

/// Cocommutativity alone, for an arbitrary candidate comultiplication.
pub fn cocommutativity(d: &Morphism, max_len: usize) -> Result<LawCheck, ExpError> {
    let b = &d.src;
    let swapped = d.then(&symmetry(b, b))?;
    same("cocommutativity", &swapped, d, max_len)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Negativity {
    /// `M` has no initial player move.
    Negative,
    /// `M` is not negative and `d ; swap ≠ d`, witnessed by a play.
    Fails { witness: String },
    /// `M` is not negative but this `d` happens to be symmetric.
    Symmetric,
}

/// A comonoid `M → M ⊗ M` on a game with an initial player move cannot
/// be cocommutative unless it never moves: its first answer must pick a
/// side.
pub fn check_comonoid_negative(m: &Game, d: &Morphism) -> Result<Negativity, ExpError> {
    if m.is_negative() {
        return Ok(Negativity::Negative);
    }
    let swapped = d.then(&symmetry(m, m))?;
    let l = d.strategy()?;
    let r = swapped.strategy()?;
    Ok(match l.plays().symmetric_difference(r.plays()).next() {
        Some(p) => Negativity::Fails {
            witness: l.game().format_moves(p),
        },
        None => Negativity::Symmetric,
    })
}

/// The comultiplication on `A*` that sends the opening move to the left.
pub fn left_leaning_diagonal(m: &Game) -> Result<Morphism, ExpError> {
    let n = m.atom_count();
    let g = m.dual().tensor(&m.tensor(m));
    let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, n + i)).collect();
    let cc = crate::lazy::Copycat::new(3 * n, &pairs);
    let s = crate::lazy::materialize(&g, &cc, g.max_play_len(), OnOverflow::Fail)?;
    Ok(Morphism::new(
        m.clone(),
        m.tensor(m),
        Arc::new(Table::new(&s)),
    ))
}

/// `bang(A, k)` embeds in `bang(A, k + 1)`: every play of the smaller game
/// is a play of the larger one with the same payoff, and every position
/// pads to a reachable position.
pub fn embedding_check(a: &Game, k: usize) -> Result<bool, ExpError> {
    let small = a.bang(k)?;
    let big = a.bang(k + 1)?;
    let w = a.atom_count();
    let plays = small.enumerate_paths(&small.root(), small.max_play_len());
    let ok_plays = plays
        .iter()
        .all(|p| big.is_play(p) && big.payoff(&big.root(), p) == small.payoff(&small.root(), p));
    let reach: std::collections::BTreeSet<_> = big.reachable_positions().into_iter().collect();
    let root = big.root();
    let ok_positions = small.reachable_positions().into_iter().all(|p| {
        let mut v = p.0.clone();
        v.extend_from_slice(&root.0[k * w..]);
        reach.contains(&crate::game::Position(v))
    });
    Ok(ok_plays && ok_positions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{bool_game, Move};
    use crate::strategy::copycat;

    #[test]
    fn bang_bool_two() {
        let b = bang(&bool_game(), 2).unwrap();
        assert_eq!(b.game.reachable_positions().len(), 13);
        let q = |a| Move::new(a, 0);
        assert!(!b.game.is_play(&[q(1)]));
        assert!(b.game.is_play(&[q(0), q(1)]));
        assert!(bang(&bool_game().dual(), 2).is_err());
        assert!(bang(&bool_game(), 0).is_err());
    }

    #[test]
    fn structure_maps() {
        let b = bang(&bool_game(), 1).unwrap();
        assert_eq!(counit(&b).strategy().unwrap().len(), 1);
        let d = dereliction(&b).strategy().unwrap();
        assert_eq!(d.plays(), copycat(&bool_game()).plays());
    }

    #[test]
    fn second_opening_uses_next_source() {
        let b = bang(&bool_game(), 2).unwrap();
        let d = comult(&b);
        let s = materialize_upto(&d.game(), &*d.beh, 8, OnOverflow::Prune).unwrap();
        let q = |a| Move::new(a, 0);
        // Atoms: source 0,1; left 2,3; right 4,5.
        assert!(s.contains(&[q(2), q(0), Move::new(0, 1), Move::new(2, 1), q(4), q(1)]));
        assert!(s.contains(&[q(4), q(0)]));
    }

    #[test]
    fn laws_hold() {
        for k in 1..=2 {
            let s = ComonoidStructure::new(bang(&bool_game(), k).unwrap());
            for c in comonoid_law_check(&s, 8).unwrap() {
                assert!(c.passed, "k={k} {c:?}");
            }
        }
    }

    #[test]
    fn lopsided_is_not_cocommutative() {
        let b = bang(&bool_game(), 2).unwrap();
        let d = lopsided_comult(&b, 8).unwrap();
        let c = cocommutativity(&d, 8).unwrap();
        assert!(!c.passed);
        assert!(c.witness.is_some());
    }

    #[test]
    fn negativity() {
        let b = bool_game();
        let d = left_leaning_diagonal(&b.dual()).unwrap();
        assert!(matches!(
            check_comonoid_negative(&b.dual(), &d).unwrap(),
            Negativity::Fails { .. }
        ));
        let d = left_leaning_diagonal(&b).unwrap();
        assert_eq!(
            check_comonoid_negative(&b, &d).unwrap(),
            Negativity::Negative
        );
        let u = Game::unit();
        assert_eq!(
            check_comonoid_negative(&u, &Morphism::bottom(&u, &u)).unwrap(),
            Negativity::Negative
        );
    }

    #[test]
    fn embeddings() {
        for k in 1..=2 {
            assert!(embedding_check(&bool_game(), k).unwrap());
        }
    }
}
