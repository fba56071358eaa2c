//! Strategies as response functions.
//!
//! A [`Behaviour`] answers opponent moves one at a time, threading an
//! explicit [`State`]. Composition, tensor and the exponential structure
//! maps are combinators over behaviours, so a composite is only ever
//! explored along the plays that are actually asked for. [`materialize`]
//! turns a behaviour into a finite play set by letting the opponent try
//! every legal move.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::game::{Game, Move, Polarity};
use crate::strategy::Strategy;

/// Bound on internal moves exchanged while computing one response.
pub const STEP_CAP: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum State {
    Nil,
    Trail(Vec<Move>),
    Nums(Vec<u32>),
    Tuple(Vec<State>),
    Tagged(u32, Box<State>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StepError {
    #[error("more than {0} copies of an exponential were needed")]
    Overflow(usize),
    #[error("internal interaction exceeded {0} steps")]
    Diverged(usize),
    #[error("illegal response after {0}")]
    Illegal(String),
    #[error("play length bound {0} reached while moves were still being answered")]
    Truncated(usize),
}

pub trait Behaviour: Send + Sync + fmt::Debug {
    fn init(&self) -> State;

    /// The player's answer to `opp`, or `None` when it stops.
    fn respond(&self, state: &State, opp: Move) -> Result<Option<(Move, State)>, StepError>;
}

pub type Beh = Arc<dyn Behaviour>;

/// Lookup table built from an extensional strategy.
#[derive(Debug)]
pub struct Table {
    next: HashMap<Vec<Move>, Move>,
}

impl Table {
    pub fn new(strategy: &Strategy) -> Table {
        let mut next = HashMap::new();
        for p in strategy.plays() {
            if !p.is_empty() {
                next.insert(p[..p.len() - 1].to_vec(), p[p.len() - 1]);
            }
        }
        Table { next }
    }

    pub fn shared(strategy: &Strategy) -> Beh {
        Arc::new(Table::new(strategy))
    }
}

impl Behaviour for Table {
    fn init(&self) -> State {
        State::Trail(Vec::new())
    }

    fn respond(&self, state: &State, opp: Move) -> Result<Option<(Move, State)>, StepError> {
        let State::Trail(t) = state else {
            unreachable!("table state")
        };
        let mut t = t.clone();
        t.push(opp);
        Ok(self.next.get(&t).map(|&r| {
            t.push(r);
            (r, State::Trail(t))
        }))
    }
}

/// The empty strategy `⊥`.
#[derive(Debug)]
pub struct Silent;

impl Behaviour for Silent {
    fn init(&self) -> State {
        State::Nil
    }

    fn respond(&self, _: &State, _: Move) -> Result<Option<(Move, State)>, StepError> {
        Ok(None)
    }
}

pub fn silent() -> Beh {
    Arc::new(Silent)
}

/// Copies every move to its partner atom. Atoms without a partner are
/// never answered.
#[derive(Debug)]
pub struct Copycat {
    partner: Vec<Option<u32>>,
}

impl Copycat {
    pub fn new(atoms: usize, pairs: &[(usize, usize)]) -> Copycat {
        let mut partner = vec![None; atoms];
        for &(a, b) in pairs {
            partner[a] = Some(b as u32);
            partner[b] = Some(a as u32);
        }
        Copycat { partner }
    }

    /// Identity on `n` atoms laid out as `[A*, A]`.
    pub fn identity(n: usize) -> Beh {
        Arc::new(Copycat::new(
            2 * n,
            &(0..n).map(|i| (i, n + i)).collect::<Vec<_>>(),
        ))
    }
}

impl Behaviour for Copycat {
    fn init(&self) -> State {
        State::Nil
    }

    fn respond(&self, _: &State, opp: Move) -> Result<Option<(Move, State)>, StepError> {
        Ok(self.partner[opp.atom()].map(|p| {
            (
                Move {
                    atom: p,
                    edge: opp.edge,
                },
                State::Nil,
            )
        }))
    }
}

/// Side-by-side behaviours, each seeing its own atoms renumbered.
#[derive(Debug)]
pub struct Parallel {
    parts: Vec<(Beh, Vec<u32>)>,
    owner: Vec<Option<(u32, u32)>>,
}

impl Parallel {
    /// `parts[i].1[local] = global` atom index.
    pub fn new(atoms: usize, parts: Vec<(Beh, Vec<u32>)>) -> Parallel {
        let mut owner = vec![None; atoms];
        for (i, (_, map)) in parts.iter().enumerate() {
            for (local, &global) in map.iter().enumerate() {
                assert!(
                    owner[global as usize].is_none(),
                    "atom {global} owned twice"
                );
                owner[global as usize] = Some((i as u32, local as u32));
            }
        }
        Parallel { parts, owner }
    }
}

impl Behaviour for Parallel {
    fn init(&self) -> State {
        State::Tuple(self.parts.iter().map(|(b, _)| b.init()).collect())
    }

    fn respond(&self, state: &State, opp: Move) -> Result<Option<(Move, State)>, StepError> {
        let State::Tuple(states) = state else {
            unreachable!("parallel state")
        };
        let Some((part, local)) = self.owner[opp.atom()] else {
            return Ok(None);
        };
        let (beh, map) = &self.parts[part as usize];
        let inner = Move {
            atom: local,
            edge: opp.edge,
        };
        Ok(beh.respond(&states[part as usize], inner)?.map(|(r, s)| {
            let mut states = states.clone();
            states[part as usize] = s;
            (
                Move {
                    atom: map[r.atom()],
                    edge: r.edge,
                },
                State::Tuple(states),
            )
        }))
    }
}

/// Renumbers the atoms of one behaviour.
pub fn relabel(beh: Beh, map: Vec<u32>) -> Beh {
    let n = map.iter().max().map_or(0, |&m| m as usize + 1);
    Arc::new(Parallel::new(n, vec![(beh, map)]))
}

/// `f ; g` with `f` on `[A, B]` and `g` on `[B, C]`, seen on `[A, C]`.
#[derive(Debug)]
pub struct Compose {
    f: Beh,
    g: Beh,
    na: u32,
    nb: u32,
}

impl Compose {
    pub fn new(f: Beh, g: Beh, na: usize, nb: usize) -> Compose {
        Compose {
            f,
            g,
            na: na as u32,
            nb: nb as u32,
        }
    }
}

impl Behaviour for Compose {
    fn init(&self) -> State {
        State::Tuple(vec![self.f.init(), self.g.init()])
    }

    fn respond(&self, state: &State, opp: Move) -> Result<Option<(Move, State)>, StepError> {
        let State::Tuple(st) = state else {
            unreachable!("compose state")
        };
        let (mut sf, mut sg) = (st[0].clone(), st[1].clone());
        // `pending` is addressed to f when `to_f`, to g otherwise, in that
        // behaviour's own numbering.
        let mut to_f = opp.atom < self.na;
        let mut pending = if to_f {
            opp
        } else {
            Move {
                atom: opp.atom - self.na + self.nb,
                edge: opp.edge,
            }
        };
        for _ in 0..STEP_CAP {
            if to_f {
                let Some((r, s)) = self.f.respond(&sf, pending)? else {
                    return Ok(None);
                };
                sf = s;
                if r.atom < self.na {
                    return Ok(Some((r, State::Tuple(vec![sf, sg]))));
                }
                pending = Move {
                    atom: r.atom - self.na,
                    edge: r.edge,
                };
                to_f = false;
            } else {
                let Some((r, s)) = self.g.respond(&sg, pending)? else {
                    return Ok(None);
                };
                sg = s;
                if r.atom >= self.nb {
                    let out = Move {
                        atom: r.atom - self.nb + self.na,
                        edge: r.edge,
                    };
                    return Ok(Some((out, State::Tuple(vec![sf, sg]))));
                }
                pending = Move {
                    atom: r.atom + self.na,
                    edge: r.edge,
                };
                to_f = true;
            }
        }
        Err(StepError::Diverged(STEP_CAP))
    }
}

/// A tensor factor of a context: `copies` copies of a `width`-atom game,
/// or a single linear use when `copies` is `None`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub width: usize,
    pub copies: Option<usize>,
}

impl Factor {
    pub fn bang(width: usize, copies: usize) -> Factor {
        Factor {
            width,
            copies: Some(copies),
        }
    }

    pub fn linear(width: usize) -> Factor {
        Factor {
            width,
            copies: None,
        }
    }

    pub fn atoms(self) -> usize {
        self.width * self.copies.unwrap_or(1)
    }

    fn slots(self) -> usize {
        self.copies.unwrap_or(1)
    }
}

/// One output of a [`Share`]: a view on input factor `source`, either as
/// `copies` copies or as a single copy (dereliction, or a linear factor).
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Port {
    pub source: usize,
    pub copies: Option<usize>,
}

impl Port {
    pub fn bang(source: usize, copies: usize) -> Port {
        Port {
            source,
            copies: Some(copies),
        }
    }

    pub fn single(source: usize) -> Port {
        Port {
            source,
            copies: None,
        }
    }
}

/// Structural routing from a tensor of factors to a tensor of ports.
///
/// Every copy opened on the output side is bound to the least unused copy
/// of its source factor, so sources are always opened in order whatever
/// the order in which outputs are opened. Duplication, discarding,
/// permutation and dereliction are all instances. Running out of source
/// copies is an [`StepError::Overflow`].
#[derive(Debug)]
pub struct Share {
    inputs: Vec<Factor>,
    ports: Vec<Port>,
    src_atoms: usize,
    input_offset: Vec<usize>,
    port_offset: Vec<usize>,
    slot_offset: Vec<usize>,
}

impl Share {
    pub fn new(inputs: Vec<Factor>, ports: Vec<Port>) -> Share {
        let mut input_offset = Vec::new();
        let mut at = 0;
        for f in &inputs {
            input_offset.push(at);
            at += f.atoms();
        }
        let src_atoms = at;
        let mut port_offset = Vec::new();
        let mut slot_offset = Vec::new();
        let mut slots = inputs.len();
        for p in &ports {
            let f = inputs[p.source];
            assert!(
                f.copies.is_some() || p.copies.is_none(),
                "linear factor used as a bang"
            );
            port_offset.push(at);
            slot_offset.push(slots);
            let n = p.copies.unwrap_or(1);
            at += f.width * n;
            slots += n;
        }
        for (j, f) in inputs.iter().enumerate() {
            if f.copies.is_none() {
                assert!(
                    ports.iter().filter(|p| p.source == j).count() <= 1,
                    "linear factor used twice"
                );
            }
        }
        Share {
            inputs,
            ports,
            src_atoms,
            input_offset,
            port_offset,
            slot_offset,
        }
    }

    pub fn shared(inputs: Vec<Factor>, ports: Vec<Port>) -> Beh {
        Arc::new(Share::new(inputs, ports))
    }
}

impl Behaviour for Share {
    fn init(&self) -> State {
        let slots = self.inputs.len()
            + self
                .ports
                .iter()
                .map(|p| p.copies.unwrap_or(1))
                .sum::<usize>();
        State::Nums(vec![0; slots])
    }

    fn respond(&self, state: &State, opp: Move) -> Result<Option<(Move, State)>, StepError> {
        let State::Nums(table) = state else {
            unreachable!("share state")
        };
        let a = opp.atom();
        if a >= self.src_atoms {
            let p = self.port_offset.partition_point(|&o| o <= a) - 1;
            let port = self.ports[p];
            let f = self.inputs[port.source];
            let rel = a - self.port_offset[p];
            let (copy, local) = (rel / f.width, rel % f.width);
            let slot = self.slot_offset[p] + copy;
            let mut table = table.clone();
            if table[slot] == 0 {
                let used = table[port.source] as usize;
                if used >= f.slots() {
                    return Err(StepError::Overflow(f.slots()));
                }
                table[port.source] += 1;
                table[slot] = used as u32 + 1;
            }
            let src_copy = table[slot] as usize - 1;
            let atom = self.input_offset[port.source] + src_copy * f.width + local;
            Ok(Some((Move::new(atom, opp.edge()), State::Nums(table))))
        } else {
            let j = self.input_offset.partition_point(|&o| o <= a) - 1;
            let f = self.inputs[j];
            let rel = a - self.input_offset[j];
            let (copy, local) = (rel / f.width, rel % f.width);
            for (p, port) in self.ports.iter().enumerate() {
                if port.source != j {
                    continue;
                }
                for c in 0..port.copies.unwrap_or(1) {
                    if table[self.slot_offset[p] + c] as usize == copy + 1 {
                        let atom = self.port_offset[p] + c * f.width + local;
                        return Ok(Some((Move::new(atom, opp.edge()), state.clone())));
                    }
                }
            }
            Ok(None)
        }
    }
}

/// How [`materialize`] treats a [`StepError::Overflow`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum OnOverflow {
    Fail,
    /// The overflowing move is simply not answered.
    Prune,
}

/// Every play of length at most `max_len` obtained by letting the opponent
/// try each legal move against `beh`. Responses are checked for legality.
/// A response that would exceed `max_len` is reported as
/// [`StepError::Truncated`].
pub fn materialize(
    game: &Game,
    beh: &dyn Behaviour,
    max_len: usize,
    overflow: OnOverflow,
) -> Result<Strategy, StepError> {
    run(
        game,
        beh,
        Limits {
            max_len,
            overflow,
            cut: false,
        },
    )
}

/// Like [`materialize`], but plays longer than `max_len` are silently
/// left out: the result is the restriction of the strategy to `max_len`.
pub fn materialize_upto(
    game: &Game,
    beh: &dyn Behaviour,
    max_len: usize,
    overflow: OnOverflow,
) -> Result<Strategy, StepError> {
    run(
        game,
        beh,
        Limits {
            max_len,
            overflow,
            cut: true,
        },
    )
}

#[derive(Copy, Clone)]
struct Limits {
    max_len: usize,
    overflow: OnOverflow,
    cut: bool,
}

fn run(game: &Game, beh: &dyn Behaviour, lim: Limits) -> Result<Strategy, StepError> {
    let mut plays = BTreeSet::new();
    let mut path = Vec::new();
    explore(
        game,
        beh,
        &game.root(),
        beh.init(),
        lim,
        &mut path,
        &mut plays,
    )?;
    Ok(Strategy::new(game.clone(), plays))
}

fn explore(
    game: &Game,
    beh: &dyn Behaviour,
    pos: &crate::game::Position,
    state: State,
    lim: Limits,
    path: &mut Vec<Move>,
    plays: &mut BTreeSet<Vec<Move>>,
) -> Result<(), StepError> {
    plays.insert(path.clone());
    for m in game.moves_from(pos) {
        if game.polarity(m) != Polarity::Opponent {
            continue;
        }
        let reply = match beh.respond(&state, m) {
            Ok(r) => r,
            Err(StepError::Overflow(_)) if lim.overflow == OnOverflow::Prune => None,
            Err(e) => return Err(e),
        };
        let Some((r, next_state)) = reply else {
            continue;
        };
        if path.len() + 2 > lim.max_len {
            if lim.cut {
                continue;
            }
            return Err(StepError::Truncated(lim.max_len));
        }
        let mid = game.apply(pos, m).unwrap();
        let legal = game.polarity(r) == Polarity::Player && game.is_legal(&mid, r);
        path.push(m);
        if !legal {
            path.push(r);
            return Err(StepError::Illegal(game.format_moves(path)));
        }
        let next = game.apply(&mid, r).unwrap();
        path.push(r);
        explore(game, beh, &next, next_state, lim, path, plays)?;
        path.truncate(path.len() - 2);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::bool_game;

    #[test]
    fn copycat_bool() {
        let b = bool_game();
        let g = b.dual().tensor(&b);
        let s = materialize(&g, &*Copycat::identity(1), 8, OnOverflow::Fail).unwrap();
        let names: Vec<String> = s.plays().iter().map(|p| g.format_moves(p)).collect();
        assert_eq!(
            names,
            ["ε", "q@1 q@0", "q@1 q@0 V@0 V@1", "q@1 q@0 F@0 F@1"]
        );
    }

    #[test]
    fn truncation_is_loud() {
        let b = bool_game();
        let g = b.dual().tensor(&b);
        assert_eq!(
            materialize(&g, &*Copycat::identity(1), 2, OnOverflow::Fail),
            Err(StepError::Truncated(2))
        );
    }

    #[test]
    fn share_renormalises_opening_order() {
        // !B (2 copies) to !B ⊗ !B: whichever output opens first gets copy 0.
        let b = bool_game();
        let bang = b.bang(2).unwrap();
        let g = bang.dual().tensor(&bang.tensor(&bang));
        let share = Share::new(
            vec![Factor::bang(1, 2)],
            vec![Port::bang(0, 2), Port::bang(0, 2)],
        );
        let s = materialize(&g, &share, 8, OnOverflow::Prune).unwrap();
        let q = |a| Move::new(a, 0);
        assert!(s.contains(&[q(4), q(0)]));
        assert!(s.contains(&[q(2), q(0)]));
        assert!(!s.contains(&[q(4), q(1)]));
        assert!(s.contains(&[q(4), q(0), q(2), q(1)]));
        // A third opening has nothing left to use.
        assert!(s.plays().iter().all(|p| p.len() <= 8));
        assert!(materialize(&g, &share, 12, OnOverflow::Fail).is_err());
    }
}
