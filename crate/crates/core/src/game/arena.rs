//! Base arenas: finite rooted DAGs with polarity-labelled edges and a
//! payoff table defined on every path.

use std::collections::{BTreeMap, HashMap, VecDeque};

use super::payoff::{Payoff, Polarity};
use super::GameError;

/// How an edge contributes to the default path payoff.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum MoveKind {
    /// Opens questions: its payoff pair is added to the pending counts.
    Ask,
    /// Closes the most recent pending question of the other player.
    Answer,
    /// Contributes nothing.
    Neutral,
}

impl MoveKind {
    pub fn keyword(self) -> &'static str {
        match self {
            MoveKind::Ask => "ask",
            MoveKind::Answer => "answer",
            MoveKind::Neutral => "neutral",
        }
    }

    pub fn from_keyword(s: &str) -> Option<MoveKind> {
        match s {
            "ask" => Some(MoveKind::Ask),
            "answer" => Some(MoveKind::Answer),
            "neutral" => Some(MoveKind::Neutral),
            _ => None,
        }
    }

    /// Kind assumed when a description does not name one.
    pub fn default_for(payoff: Payoff) -> MoveKind {
        if payoff.is_zero() {
            MoveKind::Answer
        } else {
            MoveKind::Ask
        }
    }
}

/// One edge of a game description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSpec {
    pub id: String,
    pub src: String,
    pub dst: String,
    pub label: String,
    pub polarity: Polarity,
    pub payoff: Payoff,
    pub kind: Option<MoveKind>,
}

/// A path named in a description, used for payoff overrides.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PathSpec {
    /// The empty path at a position.
    Empty(String),
    /// A non-empty edge sequence.
    Edges(Vec<String>),
}

/// Textual description of an arena, as read from a game file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GameSpec {
    pub name: String,
    pub positions: Vec<String>,
    pub root: String,
    pub edges: Vec<EdgeSpec>,
    pub path_payoffs: Vec<(PathSpec, Payoff)>,
}

impl GameSpec {
    pub fn new(name: &str, positions: &[&str], root: &str) -> GameSpec {
        GameSpec {
            name: name.to_string(),
            positions: positions.iter().map(|p| p.to_string()).collect(),
            root: root.to_string(),
            edges: Vec::new(),
            path_payoffs: Vec::new(),
        }
    }

    /// Adds an edge whose label equals its id.
    pub fn edge(
        mut self,
        id: &str,
        src: &str,
        dst: &str,
        polarity: Polarity,
        payoff: Payoff,
    ) -> Self {
        self.edges.push(EdgeSpec {
            id: id.to_string(),
            src: src.to_string(),
            dst: dst.to_string(),
            label: id.to_string(),
            polarity,
            payoff,
            kind: None,
        });
        self
    }

    pub fn edge_kind(
        mut self,
        id: &str,
        src: &str,
        dst: &str,
        polarity: Polarity,
        payoff: Payoff,
        kind: MoveKind,
    ) -> Self {
        self = self.edge(id, src, dst, polarity, payoff);
        self.edges.last_mut().unwrap().kind = Some(kind);
        self
    }

    pub fn path_payoff(mut self, edges: &[&str], payoff: Payoff) -> Self {
        self.path_payoffs.push((
            PathSpec::Edges(edges.iter().map(|e| e.to_string()).collect()),
            payoff,
        ));
        self
    }

    pub fn empty_payoff(mut self, position: &str, payoff: Payoff) -> Self {
        self.path_payoffs
            .push((PathSpec::Empty(position.to_string()), payoff));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArenaEdge {
    pub id: String,
    pub src: usize,
    pub dst: usize,
    pub label: String,
    pub polarity: Polarity,
    pub payoff: Payoff,
    pub kind: MoveKind,
    explicit_kind: bool,
}

/// Key of the payoff table: a source position and an edge sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathKey {
    pub source: usize,
    pub edges: Vec<usize>,
}

/// A validated finite arena with its fully materialised payoff table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arena {
    name: String,
    positions: Vec<String>,
    root: usize,
    edges: Vec<ArenaEdge>,
    outgoing: Vec<Vec<usize>>,
    overrides: BTreeMap<PathKey, Payoff>,
    table: BTreeMap<PathKey, Payoff>,
}

impl Arena {
    pub fn build(spec: &GameSpec) -> Result<Arena, GameError> {
        let mut index = HashMap::new();
        for (i, p) in spec.positions.iter().enumerate() {
            if index.insert(p.clone(), i).is_some() {
                return Err(GameError::DuplicatePosition(p.clone()));
            }
        }
        let root = *index
            .get(&spec.root)
            .ok_or_else(|| GameError::UnknownRoot(spec.root.clone()))?;

        let mut edge_index = HashMap::new();
        let mut edges = Vec::with_capacity(spec.edges.len());
        let mut outgoing = vec![Vec::new(); spec.positions.len()];
        for (i, e) in spec.edges.iter().enumerate() {
            if edge_index.insert(e.id.clone(), i).is_some() {
                return Err(GameError::DuplicateEdge(e.id.clone()));
            }
            let src = *index.get(&e.src).ok_or_else(|| GameError::DanglingEdge {
                edge: e.id.clone(),
                endpoint: e.src.clone(),
            })?;
            let dst = *index.get(&e.dst).ok_or_else(|| GameError::DanglingEdge {
                edge: e.id.clone(),
                endpoint: e.dst.clone(),
            })?;
            outgoing[src].push(i);
            edges.push(ArenaEdge {
                id: e.id.clone(),
                src,
                dst,
                label: e.label.clone(),
                polarity: e.polarity,
                payoff: e.payoff,
                kind: e.kind.unwrap_or_else(|| MoveKind::default_for(e.payoff)),
                explicit_kind: e.kind.is_some_and(|k| k != MoveKind::default_for(e.payoff)),
            });
        }

        check_acyclic(&spec.positions, &edges, &outgoing)?;

        let mut seen = vec![false; spec.positions.len()];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(p) = queue.pop_front() {
            for &e in &outgoing[p] {
                let d = edges[e].dst;
                if !seen[d] {
                    seen[d] = true;
                    queue.push_back(d);
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(GameError::Unreachable(spec.positions[i].clone()));
        }

        let mut overrides = BTreeMap::new();
        for (path, payoff) in &spec.path_payoffs {
            let key = match path {
                PathSpec::Empty(p) => PathKey {
                    source: *index
                        .get(p)
                        .ok_or_else(|| GameError::BadOverride(format!("@{p}")))?,
                    edges: Vec::new(),
                },
                PathSpec::Edges(ids) => {
                    let mut seq = Vec::with_capacity(ids.len());
                    for id in ids {
                        seq.push(
                            *edge_index
                                .get(id)
                                .ok_or_else(|| GameError::BadOverride(ids.join(" ")))?,
                        );
                    }
                    if seq.is_empty() || seq.windows(2).any(|w| edges[w[0]].dst != edges[w[1]].src)
                    {
                        return Err(GameError::BadOverride(ids.join(" ")));
                    }
                    PathKey {
                        source: edges[seq[0]].src,
                        edges: seq,
                    }
                }
            };
            overrides.insert(key, *payoff);
        }

        let mut arena = Arena {
            name: spec.name.clone(),
            positions: spec.positions.clone(),
            root,
            edges,
            outgoing,
            overrides,
            table: BTreeMap::new(),
        };
        arena.table = arena.materialize_table();
        Ok(arena)
    }

    fn materialize_table(&self) -> BTreeMap<PathKey, Payoff> {
        let mut table = BTreeMap::new();
        for source in 0..self.positions.len() {
            let mut stack = vec![(source, Vec::new())];
            while let Some((at, path)) = stack.pop() {
                let key = PathKey {
                    source,
                    edges: path,
                };
                let value = self
                    .overrides
                    .get(&key)
                    .copied()
                    .unwrap_or_else(|| self.default_payoff(&key.edges));
                for &e in self.outgoing[at].iter().rev() {
                    let mut next = key.edges.clone();
                    next.push(e);
                    stack.push((self.edges[e].dst, next));
                }
                table.insert(key, value);
            }
        }
        table
    }

    /// Pending-question count of an edge sequence, ignoring overrides.
    pub fn default_payoff(&self, path: &[usize]) -> Payoff {
        let mut pending = Payoff::ZERO;
        for &e in path {
            let edge = &self.edges[e];
            match edge.kind {
                MoveKind::Ask => pending = pending + edge.payoff,
                MoveKind::Answer => match edge.polarity {
                    Polarity::Player => pending.minus = pending.minus.saturating_sub(1),
                    Polarity::Opponent => pending.plus = pending.plus.saturating_sub(1),
                },
                MoveKind::Neutral => {}
            }
        }
        pending
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn positions(&self) -> &[String] {
        &self.positions
    }

    pub fn edges(&self) -> &[ArenaEdge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &ArenaEdge {
        &self.edges[e]
    }

    pub fn outgoing(&self, position: usize) -> &[usize] {
        &self.outgoing[position]
    }

    pub fn position_index(&self, name: &str) -> Option<usize> {
        self.positions.iter().position(|p| p == name)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    /// Payoff of the path `edges` starting at `source`.
    pub fn payoff(&self, source: usize, edges: &[usize]) -> Payoff {
        let key = PathKey {
            source: if edges.is_empty() {
                source
            } else {
                self.edges[edges[0]].src
            },
            edges: edges.to_vec(),
        };
        self.table
            .get(&key)
            .copied()
            .unwrap_or_else(|| self.default_payoff(edges))
    }

    pub fn table(&self) -> &BTreeMap<PathKey, Payoff> {
        &self.table
    }

    /// Converts back to a description; `Arena::build` of the result is `self`.
    pub fn to_spec(&self) -> GameSpec {
        GameSpec {
            name: self.name.clone(),
            positions: self.positions.clone(),
            root: self.positions[self.root].clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec {
                    id: e.id.clone(),
                    src: self.positions[e.src].clone(),
                    dst: self.positions[e.dst].clone(),
                    label: e.label.clone(),
                    polarity: e.polarity,
                    payoff: e.payoff,
                    kind: e.explicit_kind.then_some(e.kind),
                })
                .collect(),
            path_payoffs: self
                .overrides
                .iter()
                .map(|(k, v)| {
                    let path = if k.edges.is_empty() {
                        PathSpec::Empty(self.positions[k.source].clone())
                    } else {
                        PathSpec::Edges(k.edges.iter().map(|&e| self.edges[e].id.clone()).collect())
                    };
                    (path, *v)
                })
                .collect(),
        }
    }
}

fn check_acyclic(
    positions: &[String],
    edges: &[ArenaEdge],
    outgoing: &[Vec<usize>],
) -> Result<(), GameError> {
    // Kahn's algorithm; anything left over sits on a cycle.
    let mut indegree = vec![0usize; positions.len()];
    for e in edges {
        indegree[e.dst] += 1;
    }
    let mut queue: VecDeque<usize> = (0..positions.len()).filter(|&p| indegree[p] == 0).collect();
    let mut visited = 0;
    while let Some(p) = queue.pop_front() {
        visited += 1;
        for &e in &outgoing[p] {
            let d = edges[e].dst;
            indegree[d] -= 1;
            if indegree[d] == 0 {
                queue.push_back(d);
            }
        }
    }
    if visited == positions.len() {
        Ok(())
    } else {
        let stuck = (0..positions.len()).find(|&p| indegree[p] > 0).unwrap();
        Err(GameError::Cyclic(positions[stuck].clone()))
    }
}
