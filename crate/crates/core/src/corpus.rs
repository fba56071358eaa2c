//! Bundled strategies for the law checks: composable triples and winning
//! pairs over small games, generated from a seed.

use crate::game::{bool_game, game_two, nat_game, Game};
use crate::random::{random_game, random_strategy, rng, Seeded};
use crate::strategy::{copycat, is_winning, Strategy};

use rand::Rng;

/// Strategies `σ : A → B`, `τ : B → C`, `υ : C → D`, each on `X* ⊗ Y`.
#[derive(Clone, Debug)]
pub struct Triple {
    pub games: [Game; 4],
    pub sigma: Strategy,
    pub tau: Strategy,
    pub upsilon: Strategy,
}

/// `σ : A → B` and `τ : B → C`.
#[derive(Clone, Debug)]
pub struct Pair {
    pub games: [Game; 3],
    pub sigma: Strategy,
    pub tau: Strategy,
}

pub const MAX_POSITIONS: usize = 6;
const DEPTH: usize = 3;

fn pick_game(rng: &mut Seeded, name: &str) -> Game {
    match rng.gen_range(0..6) {
        0 => bool_game(),
        1 => game_two(),
        2 => nat_game(2),
        _ => random_game(rng, name, MAX_POSITIONS, DEPTH),
    }
}

fn arrow(rng: &mut Seeded, a: &Game, b: &Game) -> Strategy {
    if a == b && rng.gen_bool(0.25) {
        return copycat(a);
    }
    random_strategy(rng, &a.dual().tensor(b), 0.8, 200)
}

/// Named strategies `Bool → Bool`.
pub fn bool_arrows() -> Vec<(&'static str, Strategy)> {
    let b = bool_game();
    let g = b.dual().tensor(&b);
    let named = |plays: &[&str]| Strategy::from_names(g.clone(), plays).expect("static plays");
    vec![
        ("id", copycat(&b)),
        ("not", named(&["q@1 q@0 V@0 F@1", "q@1 q@0 F@0 V@1"])),
        ("true", named(&["q@1 V@1"])),
        (
            "strict-true",
            named(&["q@1 q@0 V@0 V@1", "q@1 q@0 F@0 V@1"]),
        ),
        ("only-true", named(&["q@1 q@0 V@0 V@1"])),
        ("bottom", Strategy::bottom(g.clone())),
    ]
}

/// Six fixed triples of [`bool_arrows`], followed by `count`
/// random triples.
pub fn triples(seed: u64, count: usize) -> Vec<Triple> {
    let b = bool_game();
    let arrows = bool_arrows();
    let mut out: Vec<Triple> = [
        (1, 1, 3),
        (2, 1, 0),
        (4, 1, 1),
        (0, 4, 2),
        (3, 5, 1),
        (1, 3, 4),
    ]
    .iter()
    .map(|&(i, j, k)| Triple {
        games: [b.clone(), b.clone(), b.clone(), b.clone()],
        sigma: arrows[i].1.clone(),
        tau: arrows[j].1.clone(),
        upsilon: arrows[k].1.clone(),
    })
    .collect();
    let mut r = rng(seed);
    out.extend((0..count).map(|_| {
        let a = pick_game(&mut r, "A");
        let b = if r.gen_bool(0.3) {
            a.clone()
        } else {
            pick_game(&mut r, "B")
        };
        let c = pick_game(&mut r, "C");
        let d = if r.gen_bool(0.3) {
            c.clone()
        } else {
            pick_game(&mut r, "D")
        };
        Triple {
            sigma: arrow(&mut r, &a, &b),
            tau: arrow(&mut r, &b, &c),
            upsilon: arrow(&mut r, &c, &d),
            games: [a, b, c, d],
        }
    }));
    out
}

fn winning_arrow(rng: &mut Seeded, a: &Game, b: &Game) -> Strategy {
    for _ in 0..50 {
        let s = arrow(rng, a, b);
        if is_winning(&s).is_empty() {
            return s;
        }
    }
    Strategy::bottom(a.dual().tensor(b))
}

/// Composable pairs of winning strategies. Candidates are drawn at random
/// and kept when winning; the empty strategy is the fallback.
pub fn winning_pairs(seed: u64, count: usize) -> Vec<Pair> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let a = pick_game(&mut r, "A");
            let b = if r.gen_bool(0.4) {
                a.clone()
            } else {
                pick_game(&mut r, "B")
            };
            let c = pick_game(&mut r, "C");
            Pair {
                sigma: winning_arrow(&mut r, &a, &b),
                tau: winning_arrow(&mut r, &b, &c),
                games: [a, b, c],
            }
        })
        .collect()
}

/// Winning `σ` on `A` with winning `τ` on `A* ⊗ 𝟚`.
pub fn duels(seed: u64, count: usize) -> Vec<(Strategy, Strategy)> {
    let mut r = rng(seed);
    let two = game_two();
    (0..count)
        .map(|_| {
            let a = pick_game(&mut r, "A");
            let mut sigma = Strategy::bottom(a.clone());
            for _ in 0..50 {
                let s = random_strategy(&mut r, &a, 0.9, 200);
                if is_winning(&s).is_empty() {
                    sigma = s;
                    break;
                }
            }
            let tau = winning_arrow(&mut r, &a, &two);
            (sigma, tau)
        })
        .collect()
}
