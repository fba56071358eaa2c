//! Finite payoff Conway games.
//!
//! A [`Game`] is a sequence of *atoms* (base arenas, possibly dualised)
//! arranged by a constraint tree. Positions are vectors holding one arena
//! position per atom; a [`Move`] names an atom and one of its arena edges.
//! Tensor products concatenate atoms, so the graph of `A ⊗ B` is never
//! materialised unless asked for. Negation, the cartesian product and the
//! truncated exponential add local constraints on which moves are legal.

mod arena;
mod catalog;
mod format;
mod payoff;
mod validate;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use arena::{Arena, ArenaEdge, EdgeSpec, GameSpec, MoveKind, PathKey, PathSpec};
pub use catalog::{bool_game, game_two, nat_game, unit_game};
pub use format::{parse_game_file, print_game_file, FormatError};
pub use payoff::{Payoff, Polarity};
pub use validate::{validate_payoff, Axiom, PayoffViolation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("duplicate position '{0}'")]
    DuplicatePosition(String),
    #[error("duplicate edge '{0}'")]
    DuplicateEdge(String),
    #[error("root '{0}' is not a listed position")]
    UnknownRoot(String),
    #[error("edge '{edge}' refers to unknown position '{endpoint}'")]
    DanglingEdge { edge: String, endpoint: String },
    #[error("graph has a cycle through '{0}'")]
    Cyclic(String),
    #[error("position '{0}' is unreachable from the root")]
    Unreachable(String),
    #[error("payoff override '{0}' is not a path of the game")]
    BadOverride(String),
    #[error("game is not negative: it has an initial player move")]
    NotNegative,
    #[error("game is not a composite of the given components")]
    NotComposite,
    #[error("path source mismatch")]
    SourceMismatch,
    #[error("not a path of the game: {0}")]
    NotAPath(String),
    #[error("unknown move '{0}'")]
    UnknownMove(String),
    #[error("an exponential needs at least one copy")]
    NoCopies,
}

/// A move: an edge of one atom's arena. Moves do not depend on the
/// position they are played from; legality does.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    pub atom: u32,
    pub edge: u32,
}

impl Move {
    pub fn new(atom: usize, edge: usize) -> Move {
        Move {
            atom: atom as u32,
            edge: edge as u32,
        }
    }

    pub fn atom(self) -> usize {
        self.atom as usize
    }

    pub fn edge(self) -> usize {
        self.edge as usize
    }

    /// Same edge, atom shifted by `offset`.
    pub fn shifted(self, offset: isize) -> Move {
        Move {
            atom: (self.atom as isize + offset) as u32,
            edge: self.edge,
        }
    }
}

/// A position: one arena position per atom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position(pub Vec<u32>);

impl Position {
    pub fn at(&self, atom: usize) -> usize {
        self.0[atom] as usize
    }

    /// Restriction to the atoms `lo..hi`.
    pub fn slice(&self, lo: usize, hi: usize) -> Position {
        Position(self.0[lo..hi].to_vec())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub arena: Arc<Arena>,
    /// Odd number of dualisations.
    pub flipped: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Node {
    lo: usize,
    hi: usize,
    kind: NodeKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum NodeKind {
    Leaf,
    Tensor(Vec<Node>),
    /// Initial moves of this polarity are removed.
    Neg {
        inner: Box<Node>,
        forbid: Polarity,
    },
    /// Disjoint union with merged roots.
    With(Box<Node>, Box<Node>),
    /// Copies of one game; a fresh copy may only be opened once every
    /// earlier copy is open.
    Bang(Vec<Node>),
}

impl Node {
    fn unit() -> Node {
        Node {
            lo: 0,
            hi: 0,
            kind: NodeKind::Tensor(Vec::new()),
        }
    }

    fn shifted(&self, offset: usize) -> Node {
        let kind = match &self.kind {
            NodeKind::Leaf => NodeKind::Leaf,
            NodeKind::Tensor(cs) => {
                NodeKind::Tensor(cs.iter().map(|c| c.shifted(offset)).collect())
            }
            NodeKind::Neg { inner, forbid } => NodeKind::Neg {
                inner: Box::new(inner.shifted(offset)),
                forbid: *forbid,
            },
            NodeKind::With(a, b) => {
                NodeKind::With(Box::new(a.shifted(offset)), Box::new(b.shifted(offset)))
            }
            NodeKind::Bang(cs) => NodeKind::Bang(cs.iter().map(|c| c.shifted(offset)).collect()),
        };
        Node {
            lo: self.lo + offset,
            hi: self.hi + offset,
            kind,
        }
    }

    fn dualised(&self) -> Node {
        let kind = match &self.kind {
            NodeKind::Leaf => NodeKind::Leaf,
            NodeKind::Tensor(cs) => NodeKind::Tensor(cs.iter().map(Node::dualised).collect()),
            NodeKind::Neg { inner, forbid } => NodeKind::Neg {
                inner: Box::new(inner.dualised()),
                forbid: forbid.flip(),
            },
            NodeKind::With(a, b) => NodeKind::With(Box::new(a.dualised()), Box::new(b.dualised())),
            NodeKind::Bang(cs) => NodeKind::Bang(cs.iter().map(Node::dualised).collect()),
        };
        Node {
            lo: self.lo,
            hi: self.hi,
            kind,
        }
    }

    fn contains(&self, atom: usize) -> bool {
        self.lo <= atom && atom < self.hi
    }
}

/// Which component of a binary composite.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A finite payoff Conway game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Game {
    atoms: Vec<Atom>,
    shape: Node,
}

impl Game {
    /// Validates a description and wraps the arena as a one-atom game.
    pub fn build(spec: &GameSpec) -> Result<Game, GameError> {
        Ok(Game::from_arena(Arena::build(spec)?))
    }

    pub fn from_arena(arena: Arena) -> Game {
        Game {
            atoms: vec![Atom {
                arena: Arc::new(arena),
                flipped: false,
            }],
            shape: Node {
                lo: 0,
                hi: 1,
                kind: NodeKind::Leaf,
            },
        }
    }

    /// The tensor unit: one position, no moves.
    pub fn unit() -> Game {
        Game {
            atoms: Vec::new(),
            shape: Node::unit(),
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_unit(&self) -> bool {
        self.atoms.is_empty()
    }

    /// The single arena of a one-atom, undualised game.
    pub fn arena(&self) -> Option<&Arena> {
        match (self.atoms.as_slice(), &self.shape.kind) {
            ([a], NodeKind::Leaf) if !a.flipped => Some(&a.arena),
            _ => None,
        }
    }

    pub fn dual(&self) -> Game {
        Game {
            atoms: self
                .atoms
                .iter()
                .map(|a| Atom {
                    arena: a.arena.clone(),
                    flipped: !a.flipped,
                })
                .collect(),
            shape: self.shape.dualised(),
        }
    }

    /// n-ary tensor. Units vanish and nested tensors are flattened, so the
    /// unitors and associators are identities on the nose.
    pub fn tensor_all(parts: &[&Game]) -> Game {
        let mut atoms = Vec::new();
        let mut children = Vec::new();
        for g in parts {
            let offset = atoms.len();
            atoms.extend(g.atoms.iter().cloned());
            if g.is_unit() {
                continue;
            }
            let node = g.shape.shifted(offset);
            match node.kind {
                NodeKind::Tensor(cs) => children.extend(cs),
                _ => children.push(node),
            }
        }
        let shape = match children.len() {
            0 => Node::unit(),
            1 => children.pop().unwrap(),
            _ => Node {
                lo: 0,
                hi: atoms.len(),
                kind: NodeKind::Tensor(children),
            },
        };
        Game { atoms, shape }
    }

    pub fn tensor(&self, other: &Game) -> Game {
        Game::tensor_all(&[self, other])
    }

    /// Removes initial player moves. Already-negative games are returned
    /// unchanged, which makes `neg` idempotent.
    pub fn neg(&self) -> Game {
        if self.is_negative() {
            return self.clone();
        }
        let shape = Node {
            lo: 0,
            hi: self.atoms.len(),
            kind: NodeKind::Neg {
                inner: Box::new(self.shape.clone()),
                forbid: Polarity::Player,
            },
        };
        let g = Game {
            atoms: self.atoms.clone(),
            shape,
        };
        if g.moves_from(&g.root()).is_empty() {
            Game::unit()
        } else {
            g
        }
    }

    /// Cartesian product of negative games.
    pub fn product(&self, other: &Game) -> Result<Game, GameError> {
        if !self.is_negative() || !other.is_negative() {
            return Err(GameError::NotNegative);
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        if self.is_unit() {
            return Ok(other.clone());
        }
        let n = self.atoms.len();
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        let shape = Node {
            lo: 0,
            hi: atoms.len(),
            kind: NodeKind::With(
                Box::new(self.shape.clone()),
                Box::new(other.shape.shifted(n)),
            ),
        };
        Ok(Game { atoms, shape })
    }

    /// `A ⊸ B = Neg(A* ⊗ B)`.
    pub fn loli(&self, other: &Game) -> Game {
        self.dual().tensor(other).neg()
    }

    /// `copies` copies of a negative game under the prefix discipline.
    pub fn bang(&self, copies: usize) -> Result<Game, GameError> {
        if !self.is_negative() {
            return Err(GameError::NotNegative);
        }
        if copies == 0 {
            return Err(GameError::NoCopies);
        }
        if self.is_unit() {
            return Ok(Game::unit());
        }
        let n = self.atoms.len();
        let mut atoms = Vec::with_capacity(n * copies);
        let mut children = Vec::with_capacity(copies);
        for c in 0..copies {
            atoms.extend(self.atoms.iter().cloned());
            children.push(self.shape.shifted(c * n));
        }
        Ok(Game {
            atoms,
            shape: Node {
                lo: 0,
                hi: n * copies,
                kind: NodeKind::Bang(children),
            },
        })
    }

    /// `(copies, atoms per copy)` when the whole game is a bang.
    pub fn bang_layout(&self) -> Option<(usize, usize)> {
        match &self.shape.kind {
            NodeKind::Bang(cs) if !cs.is_empty() => Some((cs.len(), cs[0].hi - cs[0].lo)),
            _ => None,
        }
    }

    /// One copy of a bang game, as a game in its own right.
    pub fn bang_base(&self) -> Option<Game> {
        match &self.shape.kind {
            NodeKind::Bang(cs) if !cs.is_empty() => {
                let n = cs[0].hi - cs[0].lo;
                Some(Game {
                    atoms: self.atoms[..n].to_vec(),
                    shape: cs[0].clone(),
                })
            }
            _ => None,
        }
    }

    /// Top-level tensor factors (a non-tensor game is its own factor).
    pub fn factors(&self) -> Vec<Game> {
        match &self.shape.kind {
            NodeKind::Tensor(cs) => cs.iter().map(|c| self.subgame(c)).collect(),
            _ if self.is_unit() => Vec::new(),
            _ => vec![self.clone()],
        }
    }

    /// The two components of a cartesian product.
    pub fn with_components(&self) -> Option<(Game, Game)> {
        match &self.shape.kind {
            NodeKind::With(a, b) => Some((self.subgame(a), self.subgame(b))),
            _ => None,
        }
    }

    fn subgame(&self, node: &Node) -> Game {
        let offset = node.lo;
        Game {
            atoms: self.atoms[node.lo..node.hi].to_vec(),
            shape: unshift(node, offset),
        }
    }

    pub fn root(&self) -> Position {
        Position(self.atoms.iter().map(|a| a.arena.root() as u32).collect())
    }

    pub fn polarity(&self, mv: Move) -> Polarity {
        let atom = &self.atoms[mv.atom()];
        atom.arena.edge(mv.edge()).polarity.flip_if(atom.flipped)
    }

    fn all_root(&self, pos: &Position, lo: usize, hi: usize) -> bool {
        (lo..hi).all(|a| pos.at(a) == self.atoms[a].arena.root())
    }

    fn allowed(&self, node: &Node, pos: &Position, mv: Move, pol: Polarity) -> bool {
        match &node.kind {
            NodeKind::Leaf => true,
            NodeKind::Tensor(cs) => cs
                .iter()
                .find(|c| c.contains(mv.atom()))
                .is_some_and(|c| self.allowed(c, pos, mv, pol)),
            NodeKind::Neg { inner, forbid } => {
                !(pol == *forbid && self.all_root(pos, node.lo, node.hi))
                    && self.allowed(inner, pos, mv, pol)
            }
            NodeKind::With(a, b) => {
                let (this, other) = if a.contains(mv.atom()) {
                    (a, b)
                } else {
                    (b, a)
                };
                self.all_root(pos, other.lo, other.hi) && self.allowed(this, pos, mv, pol)
            }
            NodeKind::Bang(cs) => {
                let Some(c) = cs.iter().position(|c| c.contains(mv.atom())) else {
                    return false;
                };
                let copy = &cs[c];
                if c > 0 && self.all_root(pos, copy.lo, copy.hi) {
                    let prev = &cs[c - 1];
                    if self.all_root(pos, prev.lo, prev.hi) {
                        return false;
                    }
                }
                self.allowed(copy, pos, mv, pol)
            }
        }
    }

    /// Whether `mv` can be played from `pos`.
    pub fn is_legal(&self, pos: &Position, mv: Move) -> bool {
        let Some(atom) = self.atoms.get(mv.atom()) else {
            return false;
        };
        let Some(edge) = atom.arena.edges().get(mv.edge()) else {
            return false;
        };
        edge.src == pos.at(mv.atom()) && self.allowed(&self.shape, pos, mv, self.polarity(mv))
    }

    /// Plays `mv` from `pos`, or `None` if it is illegal there.
    pub fn apply(&self, pos: &Position, mv: Move) -> Option<Position> {
        if !self.is_legal(pos, mv) {
            return None;
        }
        let mut next = pos.clone();
        next.0[mv.atom()] = self.atoms[mv.atom()].arena.edge(mv.edge()).dst as u32;
        Some(next)
    }

    /// Legal moves from `pos` in canonical (atom, edge) order.
    pub fn moves_from(&self, pos: &Position) -> Vec<Move> {
        let mut out = Vec::new();
        for (a, atom) in self.atoms.iter().enumerate() {
            for &e in atom.arena.outgoing(pos.at(a)) {
                let mv = Move::new(a, e);
                if self.allowed(&self.shape, pos, mv, self.polarity(mv)) {
                    out.push(mv);
                }
            }
        }
        out
    }

    /// Endpoint of `moves` played from `from`, if they form a path.
    pub fn walk(&self, from: &Position, moves: &[Move]) -> Option<Position> {
        let mut pos = from.clone();
        for &m in moves {
            pos = self.apply(&pos, m)?;
        }
        Some(pos)
    }

    pub fn is_path(&self, from: &Position, moves: &[Move]) -> bool {
        self.walk(from, moves).is_some()
    }

    pub fn is_play(&self, moves: &[Move]) -> bool {
        self.is_path(&self.root(), moves)
    }

    pub fn is_alternating(&self, moves: &[Move]) -> bool {
        moves
            .windows(2)
            .all(|w| self.polarity(w[0]) != self.polarity(w[1]))
    }

    /// Payoff of the path `moves` from `from`: the sum over atoms of the
    /// atom payoff of the projected path, swapped on dualised atoms.
    pub fn payoff(&self, from: &Position, moves: &[Move]) -> Payoff {
        let mut per_atom: Vec<Vec<usize>> = vec![Vec::new(); self.atoms.len()];
        for m in moves {
            per_atom[m.atom()].push(m.edge());
        }
        let mut total = Payoff::ZERO;
        for (a, edges) in per_atom.iter().enumerate() {
            let atom = &self.atoms[a];
            total = total + atom.arena.payoff(from.at(a), edges).swap_if(atom.flipped);
        }
        total
    }

    /// All paths of length ≤ `max_len` from `from`, in lexicographic order.
    pub fn enumerate_paths(&self, from: &Position, max_len: usize) -> Vec<Vec<Move>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.enumerate_into(from, max_len, &mut path, &mut out);
        out
    }

    fn enumerate_into(
        &self,
        at: &Position,
        max_len: usize,
        path: &mut Vec<Move>,
        out: &mut Vec<Vec<Move>>,
    ) {
        out.push(path.clone());
        if path.len() == max_len {
            return;
        }
        for m in self.moves_from(at) {
            let next = self.apply(at, m).expect("listed move is legal");
            path.push(m);
            self.enumerate_into(&next, max_len, path, out);
            path.pop();
        }
    }

    /// Positions reachable from the root, in BFS order.
    pub fn reachable_positions(&self) -> Vec<Position> {
        let root = self.root();
        let mut seen = BTreeSet::from([root.clone()]);
        let mut order = vec![root.clone()];
        let mut queue = VecDeque::from([root]);
        while let Some(p) = queue.pop_front() {
            for m in self.moves_from(&p) {
                let q = self.apply(&p, m).unwrap();
                if seen.insert(q.clone()) {
                    order.push(q.clone());
                    queue.push_back(q);
                }
            }
        }
        order
    }

    /// Length of the longest play.
    pub fn max_play_len(&self) -> usize {
        fn depth(g: &Game, p: &Position, memo: &mut HashMap<Position, usize>) -> usize {
            if let Some(&d) = memo.get(p) {
                return d;
            }
            let d = g
                .moves_from(p)
                .into_iter()
                .map(|m| 1 + depth(g, &g.apply(p, m).unwrap(), memo))
                .max()
                .unwrap_or(0);
            memo.insert(p.clone(), d);
            d
        }
        depth(self, &self.root(), &mut HashMap::new())
    }

    /// No initial move has polarity +1.
    pub fn is_negative(&self) -> bool {
        let root = self.root();
        self.moves_from(&root)
            .into_iter()
            .all(|m| self.polarity(m) == Polarity::Opponent)
    }

    /// Subsequence of `moves` lying in one component of `self`, which must
    /// be `left ⊗ right` or `left & right`.
    pub fn project_path(
        &self,
        left: &Game,
        right: &Game,
        moves: &[Move],
        side: Side,
    ) -> Result<Vec<Move>, GameError> {
        let composite =
            *self == left.tensor(right) || left.product(right).is_ok_and(|p| p == *self);
        if !composite {
            return Err(GameError::NotComposite);
        }
        let n = left.atom_count();
        Ok(match side {
            Side::Left => moves.iter().copied().filter(|m| m.atom() < n).collect(),
            Side::Right => moves
                .iter()
                .filter(|m| m.atom() >= n)
                .map(|m| m.shifted(-(n as isize)))
                .collect(),
        })
    }

    /// Printable name of a move: the edge id, suffixed with `@atom` when the
    /// game has several atoms.
    pub fn move_name(&self, mv: Move) -> String {
        let id = &self.atoms[mv.atom()].arena.edge(mv.edge()).id;
        if self.atoms.len() == 1 {
            id.clone()
        } else {
            format!("{id}@{}", mv.atom)
        }
    }

    pub fn parse_move(&self, name: &str) -> Result<Move, GameError> {
        let (id, atom) = match name.rsplit_once('@') {
            Some((id, a)) => (
                id,
                a.parse::<usize>()
                    .map_err(|_| GameError::UnknownMove(name.into()))?,
            ),
            None if self.atoms.len() == 1 => (name, 0),
            None => return Err(GameError::UnknownMove(name.into())),
        };
        let arena = &self
            .atoms
            .get(atom)
            .ok_or_else(|| GameError::UnknownMove(name.into()))?
            .arena;
        let edge = arena
            .edge_index(id)
            .ok_or_else(|| GameError::UnknownMove(name.into()))?;
        Ok(Move::new(atom, edge))
    }

    /// Space-separated move names; `ε` is the empty sequence.
    pub fn parse_moves(&self, text: &str) -> Result<Vec<Move>, GameError> {
        if text.trim() == "ε" {
            return Ok(Vec::new());
        }
        text.split_whitespace()
            .map(|m| self.parse_move(m))
            .collect()
    }

    pub fn format_moves(&self, moves: &[Move]) -> String {
        if moves.is_empty() {
            return "ε".to_string();
        }
        moves
            .iter()
            .map(|&m| self.move_name(m))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn position_name(&self, pos: &Position) -> String {
        let names: Vec<&str> = self
            .atoms
            .iter()
            .enumerate()
            .map(|(a, atom)| atom.arena.positions()[pos.at(a)].as_str())
            .collect();
        if names.len() == 1 {
            names[0].to_string()
        } else {
            format!("({})", names.join(","))
        }
    }

    /// Flat arena with the same reachable graph and payoffs.
    pub fn materialize(&self, name: &str) -> Arena {
        let positions = self.reachable_positions();
        let index: BTreeMap<&Position, usize> =
            positions.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut spec = GameSpec {
            name: name.to_string(),
            positions: positions.iter().map(|p| format!("p{}", index[p])).collect(),
            root: "p0".to_string(),
            ..GameSpec::default()
        };
        let mut edge_ids = HashMap::new();
        for p in &positions {
            for m in self.moves_from(p) {
                let q = self.apply(p, m).unwrap();
                let id = format!("e{}", spec.edges.len());
                edge_ids.insert((index[p], m), id.clone());
                spec.edges.push(EdgeSpec {
                    id,
                    src: format!("p{}", index[p]),
                    dst: format!("p{}", index[&q]),
                    label: self.move_name(m),
                    polarity: self.polarity(m),
                    payoff: self.payoff(p, &[m]),
                    kind: Some(MoveKind::Neutral),
                });
            }
        }
        // Every path payoff is recorded explicitly.
        for p in &positions {
            for path in self.enumerate_paths(p, usize::MAX) {
                let value = self.payoff(p, &path);
                if path.is_empty() {
                    spec.path_payoffs
                        .push((PathSpec::Empty(format!("p{}", index[p])), value));
                    continue;
                }
                let mut at = p.clone();
                let mut ids = Vec::with_capacity(path.len());
                for &m in &path {
                    ids.push(edge_ids[&(index[&at], m)].clone());
                    at = self.apply(&at, m).unwrap();
                }
                spec.path_payoffs.push((PathSpec::Edges(ids), value));
            }
        }
        Arena::build(&spec).expect("materialised graph is a valid arena")
    }

    /// Order-preserving isomorphism: same reachable graph (moves matched in
    /// canonical order) with equal polarities and path payoffs.
    pub fn same_arena(&self, other: &Game) -> bool {
        fn walk(g: &Game, h: &Game, p: &Position, q: &Position, depth_guard: usize) -> bool {
            if g.payoff(p, &[]) != h.payoff(q, &[]) {
                return false;
            }
            let (ms, ns) = (g.moves_from(p), h.moves_from(q));
            if ms.len() != ns.len() || depth_guard == 0 {
                return ms.len() == ns.len();
            }
            ms.iter().zip(&ns).all(|(&m, &n)| {
                g.polarity(m) == h.polarity(n)
                    && g.payoff(p, &[m]) == h.payoff(q, &[n])
                    && walk(
                        g,
                        h,
                        &g.apply(p, m).unwrap(),
                        &h.apply(q, n).unwrap(),
                        depth_guard - 1,
                    )
            })
        }
        if !walk(self, other, &self.root(), &other.root(), 64) {
            return false;
        }
        // Path payoffs from the root pin down the rest of the table on the
        // games used here; compare them along matched plays.
        let a = self.enumerate_paths(&self.root(), usize::MAX);
        let b = other.enumerate_paths(&other.root(), usize::MAX);
        a.len() == b.len()
            && a.iter().zip(&b).all(|(s, t)| {
                s.len() == t.len() && self.payoff(&self.root(), s) == other.payoff(&other.root(), t)
            })
    }
}

fn unshift(node: &Node, offset: usize) -> Node {
    let kind = match &node.kind {
        NodeKind::Leaf => NodeKind::Leaf,
        NodeKind::Tensor(cs) => NodeKind::Tensor(cs.iter().map(|c| unshift(c, offset)).collect()),
        NodeKind::Neg { inner, forbid } => NodeKind::Neg {
            inner: Box::new(unshift(inner, offset)),
            forbid: *forbid,
        },
        NodeKind::With(a, b) => {
            NodeKind::With(Box::new(unshift(a, offset)), Box::new(unshift(b, offset)))
        }
        NodeKind::Bang(cs) => NodeKind::Bang(cs.iter().map(|c| unshift(c, offset)).collect()),
    };
    Node {
        lo: node.lo - offset,
        hi: node.hi - offset,
        kind,
    }
}

impl fmt::Display for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(g: &Game, n: &Node, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match &n.kind {
                NodeKind::Leaf => {
                    let a = &g.atoms[n.lo];
                    write!(f, "{}{}", a.arena.name(), if a.flipped { "*" } else { "" })
                }
                NodeKind::Tensor(cs) if cs.is_empty() => f.write_str("1"),
                NodeKind::Tensor(cs) => {
                    f.write_str("(")?;
                    for (i, c) in cs.iter().enumerate() {
                        if i > 0 {
                            f.write_str(" ⊗ ")?;
                        }
                        go(g, c, f)?;
                    }
                    f.write_str(")")
                }
                NodeKind::Neg { inner, forbid } => {
                    write!(
                        f,
                        "Neg{}",
                        if *forbid == Polarity::Player { "" } else { "*" }
                    )?;
                    go(g, inner, f)
                }
                NodeKind::With(a, b) => {
                    f.write_str("(")?;
                    go(g, a, f)?;
                    f.write_str(" & ")?;
                    go(g, b, f)?;
                    f.write_str(")")
                }
                NodeKind::Bang(cs) => {
                    write!(f, "!{}", cs.len())?;
                    go(g, &cs[0], f)
                }
            }
        }
        go(self, &self.shape, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Game {
        bool_game()
    }

    #[test]
    fn bool_spec_builds() {
        let g = b();
        assert_eq!(g.arena().unwrap().positions().len(), 4);
        assert!(g.is_negative());
    }

    #[test]
    fn unit_has_no_moves() {
        let u = unit_game();
        assert!(u.moves_from(&u.root()).is_empty());
        assert_eq!(u.reachable_positions().len(), 1);
    }

    #[test]
    fn dangling_edge_rejected() {
        let spec = GameSpec::new("bad", &["s"], "s").edge(
            "q",
            "s",
            "missing",
            Polarity::Opponent,
            Payoff::new(0, 1),
        );
        assert!(matches!(
            Game::build(&spec),
            Err(GameError::DanglingEdge { .. })
        ));
    }

    #[test]
    fn cycle_and_unreachable_rejected() {
        let cyc = GameSpec::new("c", &["s", "a", "b"], "s")
            .edge("x", "s", "a", Polarity::Opponent, Payoff::ZERO)
            .edge("y", "a", "b", Polarity::Player, Payoff::ZERO)
            .edge("z", "b", "a", Polarity::Opponent, Payoff::ZERO);
        assert!(matches!(Game::build(&cyc), Err(GameError::Cyclic(_))));
        let unr = GameSpec::new("u", &["s", "a"], "s");
        assert_eq!(Game::build(&unr), Err(GameError::Unreachable("a".into())));
    }

    #[test]
    fn dual_flips_polarity_and_payoff() {
        let d = b().dual();
        let q = d.moves_from(&d.root())[0];
        assert_eq!(d.polarity(q), Polarity::Player);
        assert_eq!(d.payoff(&d.root(), &[q]), Payoff::new(1, 0));
        assert_eq!(d.dual(), b());
        assert_eq!(unit_game().dual(), unit_game());
    }

    #[test]
    fn tensor_laws() {
        let a = b();
        assert_eq!(a.tensor(&unit_game()), a);
        let bb = a.tensor(&a);
        assert_eq!(bb.reachable_positions().len(), 16);
        let ql = Move::new(0, 0);
        let qr = Move::new(1, 0);
        assert_eq!(bb.payoff(&bb.root(), &[ql, qr]), Payoff::new(0, 2));
    }

    #[test]
    fn neg_examples() {
        assert_eq!(b().neg(), b());
        assert!(b().dual().neg().same_arena(&unit_game()));
        let n = b().dual().tensor(&b()).neg();
        assert_eq!(n.neg(), n);
    }

    #[test]
    fn product_examples() {
        let p = b().product(&b()).unwrap();
        assert_eq!(p.moves_from(&p.root()).len(), 2);
        assert_eq!(b().product(&unit_game()).unwrap(), b());
        assert_eq!(b().dual().product(&b()), Err(GameError::NotNegative));
        // After one component starts, the other is closed.
        let after = p.apply(&p.root(), Move::new(0, 0)).unwrap();
        assert!(p.moves_from(&after).iter().all(|m| m.atom == 0));
    }

    #[test]
    fn loli_examples() {
        assert!(unit_game().loli(&b()).same_arena(&b().neg()));
        let bb = b().loli(&b());
        let init = bb.moves_from(&bb.root());
        assert_eq!(init, vec![Move::new(1, 0)]);
        let q1 = Move::new(0, 0);
        let q2 = Move::new(1, 0);
        let v1 = Move::new(0, 1);
        let v2 = Move::new(1, 1);
        let play = [q2, q1, v1, v2];
        assert!(bb.is_play(&play));
        assert!(bb.is_alternating(&play));
    }

    #[test]
    fn projections() {
        let a = b();
        let bb = a.tensor(&a);
        let ql = Move::new(0, 0);
        let qr = Move::new(1, 0);
        assert_eq!(
            bb.project_path(&a, &a, &[ql, qr], Side::Left).unwrap(),
            vec![ql]
        );
        assert_eq!(
            bb.project_path(&a, &a, &[ql, qr], Side::Right).unwrap(),
            vec![Move::new(0, 0)]
        );
        assert!(bb.project_path(&a, &a, &[], Side::Left).unwrap().is_empty());
        assert_eq!(
            a.project_path(&a, &a, &[], Side::Left),
            Err(GameError::NotComposite)
        );
    }

    #[test]
    fn enumerate_bool() {
        let g = b();
        assert_eq!(g.enumerate_paths(&g.root(), 0), vec![Vec::<Move>::new()]);
        let names: Vec<String> = g
            .enumerate_paths(&g.root(), 2)
            .iter()
            .map(|p| g.format_moves(p))
            .collect();
        assert_eq!(names, ["ε", "q", "q V", "q F"]);
    }
}
