//! Asynchronous games: homotopy of paths, independence, innocence,
//! positional strategies and their collapse to relations.

mod relation;

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

pub use relation::{rel_compose, rel_tensor, rel_trace, Relation, RelationError};

use crate::game::{Game, Move, Position};
use crate::lazy::StepError;
use crate::monoidal::{trace, MonoidalError, Morphism};
use crate::strategy::{compose, is_winning, Strategy, StrategyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AsyncError {
    #[error("not a path from the given source: {0}")]
    NotAPath(String),
    #[error("label '{label}' occurs twice on the path {path}")]
    RepeatedLabel { label: String, path: String },
    #[error("strategy is not winning ({0} violations)")]
    NotWinning(usize),
    #[error("strategy is not positional")]
    NotPositional,
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error(transparent)]
    Step(#[from] StepError),
    #[error(transparent)]
    Monoidal(#[from] MonoidalError),
    #[error(transparent)]
    Relation(#[from] RelationError),
}

/// A game with a labelling of its moves. By default a move is labelled by
/// its own name, which can never repeat along a path.
#[derive(Clone, Debug)]
pub struct AsyncGame {
    pub game: Game,
    labels: Option<BTreeMap<Move, String>>,
}

impl AsyncGame {
    pub fn new(game: Game) -> AsyncGame {
        AsyncGame { game, labels: None }
    }

    /// Moves missing from `labels` keep their name.
    pub fn with_labels(
        game: Game,
        labels: BTreeMap<Move, String>,
    ) -> Result<AsyncGame, AsyncError> {
        let g = AsyncGame {
            game,
            labels: Some(labels),
        };
        if let Some((label, path)) = g.repeated_label() {
            return Err(AsyncError::RepeatedLabel {
                label,
                path: g.game.format_moves(&path),
            });
        }
        Ok(g)
    }

    pub fn label(&self, m: Move) -> String {
        self.labels
            .as_ref()
            .and_then(|l| l.get(&m).cloned())
            .unwrap_or_else(|| self.game.move_name(m))
    }

    /// A play carrying the same label twice, if any. Every path is a
    /// suffix of a play, so plays suffice.
    pub fn repeated_label(&self) -> Option<(String, Vec<Move>)> {
        let g = &self.game;
        for p in g.enumerate_paths(&g.root(), g.max_play_len()) {
            let mut seen = HashSet::new();
            for &m in &p {
                let l = self.label(m);
                if !seen.insert(l.clone()) {
                    return Some((l, p));
                }
            }
        }
        None
    }
}

fn check_path(g: &Game, from: &Position, s: &[Move]) -> Result<(), AsyncError> {
    if g.is_path(from, s) {
        Ok(())
    } else {
        Err(AsyncError::NotAPath(g.format_moves(s)))
    }
}

/// Every path reachable from `s` by swapping adjacent moves, as long as the
/// result stays a path from `from`.
pub fn homotopy_class(g: &Game, from: &Position, s: &[Move]) -> BTreeSet<Vec<Move>> {
    let mut seen = BTreeSet::from([s.to_vec()]);
    let mut queue = VecDeque::from([s.to_vec()]);
    while let Some(t) = queue.pop_front() {
        for i in 0..t.len().saturating_sub(1) {
            if t[i].atom() == t[i + 1].atom() {
                continue;
            }
            let mut u = t.clone();
            u.swap(i, i + 1);
            if !seen.contains(&u) && g.is_path(from, &u) {
                seen.insert(u.clone());
                queue.push_back(u);
            }
        }
    }
    seen
}

pub fn homotopic(g: &Game, from: &Position, s1: &[Move], s2: &[Move]) -> Result<bool, AsyncError> {
    check_path(g, from, s1)?;
    check_path(g, from, s2)?;
    let mut a = s1.to_vec();
    let mut b = s2.to_vec();
    a.sort();
    b.sort();
    if a != b {
        return Ok(false);
    }
    Ok(homotopy_class(g, from, s1).contains(s2))
}

/// `m I s`: `m` can be inserted at every split of `s`.
pub fn independent(g: &Game, from: &Position, m: Move, s: &[Move]) -> bool {
    (0..=s.len()).all(|i| {
        let mut t = Vec::with_capacity(s.len() + 1);
        t.extend_from_slice(&s[..i]);
        t.push(m);
        t.extend_from_slice(&s[i..]);
        g.is_path(from, &t)
    })
}

/// `s I t`: every move of `s` is independent of `t`, all from `from`.
pub fn independent_paths(g: &Game, from: &Position, s: &[Move], t: &[Move]) -> bool {
    s.iter().all(|&m| independent(g, from, m, t))
}

/// For every split of sampled homotopic pairs `s1 ∼ s1'` (plays) and
/// `s2 ∼ s2'` (paths from their endpoint), `s1·s2 ∼ s1'·s2'`. Returns the
/// failing quadruples.
pub fn concat_respects_homotopy(g: &Game, max_len: usize) -> Vec<[Vec<Move>; 4]> {
    let root = g.root();
    let mut out = Vec::new();
    let mut done = HashSet::new();
    for s1 in g.enumerate_paths(&root, max_len) {
        let c1 = homotopy_class(g, &root, &s1);
        if !done.insert(c1.iter().next().cloned().unwrap_or_default()) {
            continue;
        }
        let mid = g.walk(&root, &s1).unwrap();
        let mut seen2 = HashSet::new();
        for s2 in g.enumerate_paths(&mid, max_len - s1.len()) {
            let c2 = homotopy_class(g, &mid, &s2);
            if !seen2.insert(c2.iter().next().cloned().unwrap_or_default()) {
                continue;
            }
            let whole: Vec<Move> = s1.iter().chain(&s2).copied().collect();
            let target = homotopy_class(g, &root, &whole);
            for a in &c1 {
                for b in &c2 {
                    let other: Vec<Move> = a.iter().chain(b).copied().collect();
                    if !target.contains(&other) {
                        out.push([s1.clone(), a.clone(), s2.clone(), b.clone()]);
                    }
                }
            }
        }
    }
    out
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Consistency {
    Backward,
    Forward,
}

impl fmt::Display for Consistency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Consistency::Backward => "backward",
            Consistency::Forward => "forward",
        })
    }
}

/// A tile `s1 · m1 · n1` against `s1 · m2 · n2` that fails to close.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnocenceViolation {
    pub kind: Consistency,
    pub s1: Vec<Move>,
    pub moves: [Move; 4],
    pub reason: &'static str,
}

impl InnocenceViolation {
    pub fn describe(&self, g: &Game) -> String {
        let [m1, n1, m2, n2] = self.moves;
        format!(
            "{} after {}: m1={} n1={} m2={} n2={}: {}",
            self.kind,
            g.format_moves(&self.s1),
            g.move_name(m1),
            g.move_name(n1),
            g.move_name(m2),
            g.move_name(n2),
            self.reason
        )
    }
}

struct Tile<'a> {
    g: &'a Game,
    v: Position,
    m1: Move,
    n1: Move,
    m2: Move,
    n2: Move,
}

impl Tile<'_> {
    fn premises(&self) -> bool {
        let g = self.g;
        independent(g, &self.v, self.m1, &[self.m2])
            && g.apply(&self.v, self.m1)
                .is_some_and(|w| independent(g, &w, self.n1, &[self.m2]))
    }

    /// The independence conclusions, or the reason they fail.
    fn conclusions(&self) -> Result<(), &'static str> {
        let g = self.g;
        let after_m2 = g.apply(&self.v, self.m2);
        if !after_m2.is_some_and(|w| independent(g, &w, self.m1, &[self.n2])) {
            return Err("m1 and n2 are not independent");
        }
        let after_both = g.walk(&self.v, &[self.m1, self.m2]);
        if !after_both.is_some_and(|w| independent(g, &w, self.n1, &[self.n2])) {
            return Err("n1 and n2 are not independent");
        }
        Ok(())
    }
}

/// Backward and forward consistency. The strategy must be winning.
pub fn is_innocent(sigma: &Strategy) -> Result<Vec<InnocenceViolation>, AsyncError> {
    let bad = is_winning(sigma);
    if !bad.is_empty() {
        return Err(AsyncError::NotWinning(bad.len()));
    }
    let g = sigma.game();
    let mut out = Vec::new();
    for p in sigma.plays() {
        let mut v = g.root();
        for i in (0..p.len()).step_by(2) {
            if i + 4 <= p.len() {
                let tile = Tile {
                    g,
                    v: v.clone(),
                    m1: p[i],
                    n1: p[i + 1],
                    m2: p[i + 2],
                    n2: p[i + 3],
                };
                if tile.premises() {
                    let mut swapped = p[..i].to_vec();
                    swapped.extend_from_slice(&[p[i + 2], p[i + 3], p[i], p[i + 1]]);
                    swapped.extend_from_slice(&p[i + 4..]);
                    let verdict = tile.conclusions().and_then(|()| {
                        if sigma.contains(&swapped) {
                            Ok(())
                        } else {
                            Err("permuted play is not in the strategy")
                        }
                    });
                    if let Err(reason) = verdict {
                        out.push(InnocenceViolation {
                            kind: Consistency::Backward,
                            s1: p[..i].to_vec(),
                            moves: [p[i], p[i + 1], p[i + 2], p[i + 3]],
                            reason,
                        });
                    }
                }
            }
            v = g
                .walk(&v, &p[i..(i + 2).min(p.len())])
                .expect("play of the game");
        }
    }
    // Forward: two one-step extensions of the same play.
    let mut next: BTreeMap<&[Move], Vec<(Move, Move)>> = BTreeMap::new();
    for p in sigma.plays() {
        if p.len() >= 2 {
            let n = p.len();
            next.entry(&p[..n - 2])
                .or_default()
                .push((p[n - 2], p[n - 1]));
        }
    }
    for (s1, exts) in &next {
        let v = g.walk(&g.root(), s1).expect("play of the game");
        for &(m1, n1) in exts {
            for &(m2, n2) in exts {
                if m1 == m2 {
                    continue;
                }
                let tile = Tile {
                    g,
                    v: v.clone(),
                    m1,
                    n1,
                    m2,
                    n2,
                };
                if !tile.premises() {
                    continue;
                }
                let mut joined = s1.to_vec();
                joined.extend_from_slice(&[m1, n1, m2, n2]);
                let verdict = tile.conclusions().and_then(|()| {
                    if sigma.contains(&joined) {
                        Ok(())
                    } else {
                        Err("joined play is not in the strategy")
                    }
                });
                if let Err(reason) = verdict {
                    out.push(InnocenceViolation {
                        kind: Consistency::Forward,
                        s1: s1.to_vec(),
                        moves: [m1, n1, m2, n2],
                        reason,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// `s1 ∼ s2` are plays of `σ`, `s1 · t ∈ σ` but `s2 · t ∉ σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionalViolation {
    pub s1: Vec<Move>,
    pub s2: Vec<Move>,
    pub t: Vec<Move>,
}

fn futures(sigma: &Strategy, s: &[Move]) -> BTreeSet<Vec<Move>> {
    sigma
        .plays()
        .range(s.to_vec()..)
        .take_while(|p| p.starts_with(s))
        .map(|p| p[s.len()..].to_vec())
        .collect()
}

pub fn is_positional(sigma: &Strategy) -> Vec<PositionalViolation> {
    let g = sigma.game();
    let root = g.root();
    // Homotopic plays share their endpoint and their projection on every
    // atom, so only plays agreeing on both need comparing. Homotopy itself
    // is decided only when the futures differ.
    type Key = (Position, Vec<Vec<Move>>);
    let mut groups: BTreeMap<Key, Vec<&Vec<Move>>> = BTreeMap::new();
    for p in sigma.plays() {
        let mut proj = vec![Vec::new(); g.atom_count()];
        for &m in p {
            proj[m.atom()].push(m);
        }
        let end = g.walk(&root, p).expect("play of the game");
        groups.entry((end, proj)).or_default().push(p);
    }
    let mut out = Vec::new();
    for group in groups.values().filter(|g| g.len() > 1) {
        let fut: Vec<BTreeSet<Vec<Move>>> = group.iter().map(|p| futures(sigma, p)).collect();
        if fut.windows(2).all(|w| w[0] == w[1]) {
            continue;
        }
        let mut classes: Vec<(BTreeSet<Vec<Move>>, usize)> = Vec::new();
        for (i, &p) in group.iter().enumerate() {
            let Some((_, first)) = classes.iter().find(|(c, _)| c.contains(p)) else {
                classes.push((homotopy_class(g, &root, p), i));
                continue;
            };
            let (f0, f) = (&fut[*first], &fut[i]);
            for t in f0.symmetric_difference(f) {
                let (a, b) = if f0.contains(t) {
                    (group[*first], p)
                } else {
                    (p, group[*first])
                };
                out.push(PositionalViolation {
                    s1: a.clone(),
                    s2: b.clone(),
                    t: t.clone(),
                });
            }
        }
    }
    out
}

/// `σ•`: the positions reached by the plays of `σ`.
pub fn positions_of(sigma: &Strategy) -> BTreeSet<Position> {
    sigma.positions()
}

fn reachable(g: &Game) -> BTreeSet<Position> {
    g.reachable_positions().into_iter().collect()
}

/// `σ•` for `σ` on `A* ⊗ B`, read as a relation between positions of `A`
/// and positions of `B`.
pub fn position_relation(
    sigma: &Strategy,
    a: &Game,
    b: &Game,
) -> Result<Relation<Position, Position>, AsyncError> {
    let na = a.atom_count();
    let n = na + b.atom_count();
    let pairs = positions_of(sigma)
        .into_iter()
        .map(|p| (p.slice(0, na), p.slice(na, n)))
        .collect();
    Ok(Relation::new(reachable(a), reachable(b), pairs)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorialityReport {
    pub law: &'static str,
    pub passed: bool,
    pub lhs: usize,
    pub rhs: usize,
}

fn report<A: Ord, B: Ord>(
    law: &'static str,
    l: &Relation<A, B>,
    r: &Relation<A, B>,
) -> FunctorialityReport {
    FunctorialityReport {
        law,
        passed: l.pairs == r.pairs,
        lhs: l.pairs.len(),
        rhs: r.pairs.len(),
    }
}

/// `(σ;τ)• = σ•;τ•` for positional `σ` on `A* ⊗ B` and `τ` on `B* ⊗ C`.
pub fn compose_functoriality(
    a: &Game,
    b: &Game,
    c: &Game,
    sigma: &Strategy,
    tau: &Strategy,
) -> Result<FunctorialityReport, AsyncError> {
    if !is_positional(sigma).is_empty() || !is_positional(tau).is_empty() {
        return Err(AsyncError::NotPositional);
    }
    let st = compose(a, b, c, sigma, tau)?;
    let lhs = position_relation(&st, a, c)?;
    let rhs = rel_compose(
        &position_relation(sigma, a, b)?,
        &position_relation(tau, b, c)?,
    )?;
    Ok(report("compose", &lhs, &rhs))
}

/// `(σ⊗τ)• = σ•⊗τ•` for positional `σ : A → B` and `τ : C → D`.
pub fn tensor_functoriality(
    sigma: &Morphism,
    tau: &Morphism,
) -> Result<FunctorialityReport, AsyncError> {
    let s = sigma.strategy()?;
    let t = tau.strategy()?;
    if !is_positional(&s).is_empty() || !is_positional(&t).is_empty() {
        return Err(AsyncError::NotPositional);
    }
    let st = sigma.tensor(tau).strategy()?;
    let (na, nb, nc, nd) = (
        sigma.src.atom_count(),
        sigma.dst.atom_count(),
        tau.src.atom_count(),
        tau.dst.atom_count(),
    );
    // Layout [A*, C*, B, D].
    let (ac, acb) = (na + nc, na + nc + nb);
    let pairs = positions_of(&st)
        .into_iter()
        .map(|p| {
            (
                (p.slice(0, na), p.slice(na, ac)),
                (p.slice(ac, acb), p.slice(acb, acb + nd)),
            )
        })
        .collect();
    let rhs = rel_tensor(
        &position_relation(&s, &sigma.src, &sigma.dst)?,
        &position_relation(&t, &tau.src, &tau.dst)?,
    );
    let lhs = Relation::new(rhs.domain.clone(), rhs.codomain.clone(), pairs)?;
    Ok(report("tensor", &lhs, &rhs))
}

/// Experimental: compares `Tr(f)•` with the relational trace of `f•`.
/// This is not expected to hold in general.
pub fn trace_positions(
    f: &Morphism,
    x: &Game,
    a: &Game,
    b: &Game,
) -> Result<FunctorialityReport, AsyncError> {
    let t = trace(f, x, a, b)?;
    let lhs = position_relation(&t.strategy()?, a, b)?;
    let s = f.strategy()?;
    let (nx, na, nb) = (x.atom_count(), a.atom_count(), b.atom_count());
    let pairs = positions_of(&s)
        .into_iter()
        .map(|p| {
            (
                (p.slice(0, nx), p.slice(nx, nx + na)),
                (
                    p.slice(nx + na, 2 * nx + na),
                    p.slice(2 * nx + na, 2 * nx + na + nb),
                ),
            )
        })
        .collect();
    let xs = reachable(x);
    let dom = xs
        .iter()
        .flat_map(|p| reachable(a).into_iter().map(move |q| (p.clone(), q)))
        .collect();
    let cod = xs
        .iter()
        .flat_map(|p| reachable(b).into_iter().map(move |q| (p.clone(), q)))
        .collect();
    let rhs = rel_trace(&Relation::new(dom, cod, pairs)?);
    Ok(report("trace", &lhs, &rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::bool_game;
    use crate::strategy::copycat;

    fn play(g: &Game, s: &str) -> Vec<Move> {
        s.split_whitespace()
            .map(|m| g.parse_move(m).unwrap())
            .collect()
    }

    #[test]
    fn homotopy_basics() {
        let b = bool_game();
        let bb = b.tensor(&b);
        let r = bb.root();
        assert!(homotopic(&bb, &r, &play(&bb, "q@0 q@1"), &play(&bb, "q@1 q@0")).unwrap());
        assert!(homotopic(
            &bb,
            &r,
            &play(&bb, "q@0 V@0 q@1"),
            &play(&bb, "q@1 q@0 V@0")
        )
        .unwrap());
        assert!(homotopic(&b, &b.root(), &play(&b, "q V"), &play(&b, "V q")).is_err());
        assert!(concat_respects_homotopy(&bb, 4).is_empty());
    }

    #[test]
    fn independence() {
        let b = bool_game();
        let bb = b.tensor(&b);
        let r = bb.root();
        assert!(independent(
            &bb,
            &r,
            bb.parse_move("q@0").unwrap(),
            &play(&bb, "q@1")
        ));
        assert!(!independent(
            &b,
            &b.root(),
            b.parse_move("q").unwrap(),
            &play(&b, "q")
        ));
        assert!(independent_paths(&bb, &r, &[], &play(&bb, "q@1")));
    }

    #[test]
    fn copycat_is_innocent() {
        let b = bool_game();
        let cc = copycat(&b.tensor(&b));
        assert!(is_innocent(&cc).unwrap().is_empty());
        assert!(is_positional(&cc).is_empty());
        assert!(is_innocent(&Strategy::bottom(b.clone()))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn order_sensitive_strategy() {
        let b = bool_game();
        let bb = b.tensor(&b);
        let s = Strategy::from_names(
            bb.clone(),
            &["q@0 V@0", "q@1 V@1", "q@0 V@0 q@1 F@1", "q@1 V@1 q@0 V@0"],
        )
        .unwrap();
        let bad = is_innocent(&s).unwrap();
        assert!(bad.iter().any(|v| v.kind == Consistency::Forward));
    }

    #[test]
    fn history_sensitive_strategy() {
        let b = bool_game();
        let g = b.tensor(&b).tensor(&b);
        let s = Strategy::from_names(g, &["q@0 V@0 q@1 V@1 q@2 V@2", "q@1 V@1 q@0 V@0 q@2 F@2"])
            .unwrap();
        let bad = is_positional(&s);
        assert_eq!(bad.len(), 2);
        assert_eq!(bad[0].t.len(), 2);
    }

    #[test]
    fn answer_positions() {
        let b = bool_game();
        let s = Strategy::from_names(b.clone(), &["q V"]).unwrap();
        assert_eq!(positions_of(&s).len(), 2);
        assert_eq!(
            positions_of(&Strategy::bottom(b.clone())),
            BTreeSet::from([b.root()])
        );
    }

    #[test]
    fn functoriality_of_copycat() {
        let b = bool_game();
        let cc = copycat(&b);
        let r = compose_functoriality(&b, &b, &b, &cc, &cc).unwrap();
        assert!(r.passed, "{r:?}");
        let id = Morphism::identity(&b);
        assert!(tensor_functoriality(&id, &id).unwrap().passed);
    }

    #[test]
    fn repeated_labels_rejected() {
        let b = bool_game();
        let q = b.parse_move("q").unwrap();
        let v = b.parse_move("V").unwrap();
        let labels = BTreeMap::from([(q, "x".to_string()), (v, "x".to_string())]);
        assert!(AsyncGame::with_labels(b.clone(), labels).is_err());
        assert!(AsyncGame::new(b).repeated_label().is_none());
    }
}
