//! Seeded generators for small games and strategies.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::game::{Game, GameSpec, Move, Payoff, Polarity, Position};
use crate::strategy::Strategy;

pub type Seeded = ChaCha8Rng;

pub fn rng(seed: u64) -> Seeded {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rooted DAG with at most `max_positions` positions (at least two) and
/// no path longer than `max_depth`. Every position is reachable.
pub fn random_game(rng: &mut Seeded, name: &str, max_positions: usize, max_depth: usize) -> Game {
    let n = rng.gen_range(2..=max_positions.max(2));
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut spec = GameSpec::new(name, &refs, "p0");
    // Depth of each position; position i > 0 hangs below an earlier one
    // that still has room.
    let mut depth = vec![0usize; n];
    let mut edges = BTreeSet::new();
    for i in 1..n {
        let parents: Vec<usize> = (0..i).filter(|&p| depth[p] < max_depth).collect();
        let p = *parents.choose(rng).unwrap_or(&0);
        depth[i] = depth[p] + 1;
        edges.insert((p, i));
    }
    // A few extra forward edges that keep the depth bound.
    for _ in 0..rng.gen_range(0..=2) {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a < b && depth[a] < depth[b] {
            edges.insert((a, b));
        }
    }
    for (k, &(a, b)) in edges.iter().enumerate() {
        // Mostly alternating by depth, so that games have long plays.
        let natural = if depth[a] % 2 == 0 {
            Polarity::Opponent
        } else {
            Polarity::Player
        };
        let polarity = natural.flip_if(rng.gen_bool(0.2));
        let payoff = match (polarity, rng.gen_range(0..3)) {
            (_, 0) => Payoff::ZERO,
            (Polarity::Opponent, _) => Payoff::new(0, 1),
            (Polarity::Player, _) => Payoff::new(1, 0),
        };
        spec = spec.edge(&format!("e{k}"), &names[a], &names[b], polarity, payoff);
    }
    Game::build(&spec).expect("generated graph is a valid arena")
}

/// A random deterministic strategy: each opponent move is answered with
/// probability `answer`, by a uniformly chosen legal player move. At most
/// `cap` plays are produced.
pub fn random_strategy(rng: &mut Seeded, game: &Game, answer: f64, cap: usize) -> Strategy {
    let mut plays = BTreeSet::new();
    let mut path = Vec::new();
    grow(rng, game, &game.root(), answer, cap, &mut path, &mut plays);
    Strategy::new(game.clone(), plays)
}

fn grow(
    rng: &mut Seeded,
    game: &Game,
    at: &Position,
    answer: f64,
    cap: usize,
    path: &mut Vec<Move>,
    plays: &mut BTreeSet<Vec<Move>>,
) {
    plays.insert(path.clone());
    for m in game.moves_from(at) {
        if game.polarity(m) != Polarity::Opponent || plays.len() >= cap || !rng.gen_bool(answer) {
            continue;
        }
        let mid = game.apply(at, m).unwrap();
        let replies: Vec<Move> = game
            .moves_from(&mid)
            .into_iter()
            .filter(|&r| game.polarity(r) == Polarity::Player)
            .collect();
        let Some(&r) = replies.choose(rng) else {
            continue;
        };
        let next = game.apply(&mid, r).unwrap();
        path.push(m);
        path.push(r);
        grow(rng, game, &next, answer, cap, path, plays);
        path.truncate(path.len() - 2);
    }
}
