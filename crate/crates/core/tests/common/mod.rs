//! Brute-force oracles shared by the integration tests. They only use the
//! game's legality and the strategies' play sets.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use cgw::game::{Game, Move};
use cgw::strategy::Strategy;

/// Copycat on `A* ⊗ A`, by its definition: alternating plays opened by
/// Opponent whose even prefixes project to the same moves on both sides.
pub fn copycat_oracle(a: &Game) -> BTreeSet<Vec<Move>> {
    let n = a.atom_count() as u32;
    let g = a.dual().tensor(a);
    let side = |t: &[Move], right: bool| -> Vec<(u32, u32)> {
        t.iter()
            .filter(|m| (m.atom >= n) == right)
            .map(|m| (m.atom % n, m.edge))
            .collect()
    };
    g.enumerate_paths(&g.root(), g.max_play_len())
        .into_iter()
        .filter(|p| p.len() % 2 == 0)
        .filter(|p| g.is_alternating(p))
        .filter(|p| {
            p.first()
                .is_none_or(|&m| g.polarity(m) == cgw::game::Polarity::Opponent)
        })
        .filter(|p| {
            (0..=p.len())
                .step_by(2)
                .all(|i| side(&p[..i], false) == side(&p[..i], true))
        })
        .collect()
}

fn shift(m: Move, by: u32) -> Move {
    Move {
        atom: m.atom + by,
        edge: m.edge,
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Part {
    A,
    B,
    C,
}

/// All interactions of `σ` on `A* ⊗ B` and `τ` on `B* ⊗ C` whose visible
/// part is exactly `s`, by depth-first search over tagged moves.
pub fn witnesses_oracle(
    na: usize,
    nb: usize,
    sigma: &Strategy,
    tau: &Strategy,
    s: &[Move],
) -> Vec<Vec<(Part, Move)>> {
    let ps = sigma.prefixes();
    let pt = tau.prefixes();
    let (na, nb) = (na as u32, nb as u32);
    let mut out = Vec::new();
    // `u` with its three projections.
    fn go(
        u: &mut Vec<(Part, Move)>,
        ab: &mut Vec<Move>,
        bc: &mut Vec<Move>,
        ac: &mut Vec<Move>,
        cx: &Ctx,
        out: &mut Vec<Vec<(Part, Move)>>,
    ) {
        if ac.len() == cx.s.len() && cx.sigma.contains(ab) && cx.tau.contains(bc) {
            out.push(u.clone());
        }
        // Candidate moves: next visible move of `s`, or any hidden move.
        let mut cands: Vec<(Part, Move)> = Vec::new();
        if let Some(&m) = cx.s.get(ac.len()) {
            if m.atom < cx.na {
                cands.push((Part::A, m));
            } else {
                cands.push((
                    Part::C,
                    Move {
                        atom: m.atom - cx.na,
                        edge: m.edge,
                    },
                ));
            }
        }
        for &m in &cx.b_moves {
            cands.push((Part::B, m));
        }
        for (part, m) in cands {
            let (in_ab, in_bc) = match part {
                Part::A => (Some(m), None),
                Part::B => (Some(shift(m, cx.na)), Some(m)),
                Part::C => (None, Some(shift(m, cx.nb))),
            };
            if let Some(x) = in_ab {
                ab.push(x);
                if !cx.ps.contains(ab.as_slice()) {
                    ab.pop();
                    continue;
                }
            }
            if let Some(y) = in_bc {
                bc.push(y);
                if !cx.pt.contains(bc.as_slice()) {
                    bc.pop();
                    if in_ab.is_some() {
                        ab.pop();
                    }
                    continue;
                }
            }
            if part != Part::B {
                ac.push(cx.s[ac.len()]);
            }
            u.push((part, m));
            go(u, ab, bc, ac, cx, out);
            u.pop();
            if part != Part::B {
                ac.pop();
            }
            if in_ab.is_some() {
                ab.pop();
            }
            if in_bc.is_some() {
                bc.pop();
            }
        }
    }
    struct Ctx<'a> {
        s: &'a [Move],
        sigma: &'a Strategy,
        tau: &'a Strategy,
        ps: HashSet<Vec<Move>>,
        pt: HashSet<Vec<Move>>,
        na: u32,
        nb: u32,
        b_moves: Vec<Move>,
    }
    // Every move of B that occurs in σ, in B-local numbering.
    let b_moves: BTreeSet<Move> = sigma
        .plays()
        .iter()
        .flatten()
        .filter(|m| m.atom >= na)
        .map(|m| Move {
            atom: m.atom - na,
            edge: m.edge,
        })
        .collect();
    let cx = Ctx {
        s,
        sigma,
        tau,
        ps,
        pt,
        na,
        nb,
        b_moves: b_moves.into_iter().collect(),
    };
    go(
        &mut Vec::new(),
        &mut Vec::new(),
        &mut Vec::new(),
        &mut Vec::new(),
        &cx,
        &mut out,
    );
    out
}

/// `Tr(R)` by enumerating the traced set: `a ~ b` iff `(x,a) R (x,b)` for
/// some `x`. Relations are bit masks over `(x, a) × (x', b)` in row-major
/// order with `|X| = nx`, `|A| = na`, `|B| = nb`.
pub fn trace_oracle(mask: u64, nx: usize, na: usize, nb: usize) -> BTreeSet<(usize, usize)> {
    let cols = nx * nb;
    let bit = |x: usize, a: usize, y: usize, b: usize| {
        mask >> ((x * na + a) * cols + (y * nb + b)) & 1 == 1
    };
    let mut out = BTreeSet::new();
    for a in 0..na {
        for b in 0..nb {
            if (0..nx).any(|x| bit(x, a, x, b)) {
                out.insert((a, b));
            }
        }
    }
    out
}

/// Every triple `(|X|, |A|, |B|)` with `|X × A|, |X × B| ≤ 4`.
pub fn trace_shapes() -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for nx in 1..=4 {
        for na in 1..=4 {
            for nb in 1..=4 {
                if nx * na <= 4 && nx * nb <= 4 {
                    out.push((nx, na, nb));
                }
            }
        }
    }
    out
}
