//! Morphisms `A → B` as strategies on `A* ⊗ B`, with the compact-closed
//! structure: composition, tensor, symmetry, currying and the trace.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::game::{Game, Move};
use crate::lazy::{
    materialize, relabel, silent, Beh, Compose, Copycat, OnOverflow, Parallel, StepError, Table,
};
use crate::random::{random_game, random_strategy, Seeded};
use crate::strategy::{Strategy, StrategyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidalError {
    #[error("games do not match: {0}")]
    Shape(String),
    #[error("{0} is not negative")]
    NotNegative(String),
    #[error(transparent)]
    Step(#[from] StepError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error("more than {0} strategies to enumerate")]
    TooMany(usize),
}

/// A morphism `src → dst`: a behaviour on `src* ⊗ dst`, whose atoms are
/// those of `src` followed by those of `dst`.
#[derive(Clone)]
pub struct Morphism {
    pub src: Game,
    pub dst: Game,
    pub beh: Beh,
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism({} → {})", self.src, self.dst)
    }
}

fn same_atoms(a: &Game, b: &Game) -> bool {
    a.atoms() == b.atoms()
}

impl Morphism {
    pub fn new(src: Game, dst: Game, beh: Beh) -> Morphism {
        Morphism { src, dst, beh }
    }

    pub fn from_strategy(
        src: Game,
        dst: Game,
        sigma: &Strategy,
    ) -> Result<Morphism, MonoidalError> {
        let g = src.dual().tensor(&dst);
        if !same_atoms(&g, sigma.game()) {
            return Err(MonoidalError::Shape(format!("strategy is not on {g}")));
        }
        Ok(Morphism::new(src, dst, Table::shared(sigma)))
    }

    pub fn game(&self) -> Game {
        self.src.dual().tensor(&self.dst)
    }

    pub fn identity(a: &Game) -> Morphism {
        Morphism::new(a.clone(), a.clone(), Copycat::identity(a.atom_count()))
    }

    /// `⊥ : A → B`.
    pub fn bottom(src: &Game, dst: &Game) -> Morphism {
        Morphism::new(src.clone(), dst.clone(), silent())
    }

    /// `self ; g`.
    pub fn then(&self, g: &Morphism) -> Result<Morphism, MonoidalError> {
        if !same_atoms(&self.dst, &g.src) {
            return Err(MonoidalError::Shape(format!("{} vs {}", self.dst, g.src)));
        }
        let beh = Compose::new(
            self.beh.clone(),
            g.beh.clone(),
            self.src.atom_count(),
            self.dst.atom_count(),
        );
        Ok(Morphism::new(
            self.src.clone(),
            g.dst.clone(),
            Arc::new(beh),
        ))
    }

    /// `self ⊗ g : A ⊗ C → B ⊗ D`.
    pub fn tensor(&self, g: &Morphism) -> Morphism {
        let (a, b, c, d) = (
            self.src.atom_count(),
            self.dst.atom_count(),
            g.src.atom_count(),
            g.dst.atom_count(),
        );
        // Layout [A*, C*, B, D].
        let f_map: Vec<u32> = (0..a)
            .chain((a + c)..(a + c + b))
            .map(|i| i as u32)
            .collect();
        let g_map: Vec<u32> = (a..a + c)
            .chain((a + c + b)..(a + c + b + d))
            .map(|i| i as u32)
            .collect();
        let beh = Parallel::new(
            a + b + c + d,
            vec![(self.beh.clone(), f_map), (g.beh.clone(), g_map)],
        );
        Morphism::new(
            self.src.tensor(&g.src),
            self.dst.tensor(&g.dst),
            Arc::new(beh),
        )
    }

    /// Same behaviour seen on other games with the same atoms.
    pub fn retype(&self, src: Game, dst: Game) -> Result<Morphism, MonoidalError> {
        if !same_atoms(&self.game(), &src.dual().tensor(&dst)) {
            return Err(MonoidalError::Shape(format!(
                "cannot retype to {src} → {dst}"
            )));
        }
        Ok(Morphism::new(src, dst, self.beh.clone()))
    }

    /// Plays up to `max_len`; overflow fails.
    pub fn plays(&self, max_len: usize) -> Result<Strategy, StepError> {
        materialize(&self.game(), &*self.beh, max_len, OnOverflow::Fail)
    }

    /// All plays of the morphism.
    pub fn strategy(&self) -> Result<Strategy, StepError> {
        let g = self.game();
        materialize(&g, &*self.beh, g.max_play_len(), OnOverflow::Fail)
    }
}

/// The permutation `⊗ factors → ⊗ factors[order[0]] ⊗ factors[order[1]] ⊗ …`.
pub fn permutation(factors: &[Game], order: &[usize]) -> Morphism {
    let src = Game::tensor_all(&factors.iter().collect::<Vec<_>>());
    let dst = Game::tensor_all(&order.iter().map(|&i| &factors[i]).collect::<Vec<_>>());
    let mut offset = Vec::new();
    let mut at = 0;
    for f in factors {
        offset.push(at);
        at += f.atom_count();
    }
    let n = at;
    let mut pairs = Vec::new();
    let mut out = n;
    for &i in order {
        for k in 0..factors[i].atom_count() {
            pairs.push((offset[i] + k, out));
            out += 1;
        }
    }
    Morphism::new(src, dst, Arc::new(Copycat::new(2 * n, &pairs)))
}

/// `A ⊗ B → B ⊗ A`.
pub fn symmetry(a: &Game, b: &Game) -> Morphism {
    permutation(&[a.clone(), b.clone()], &[1, 0])
}

/// From `f : A ⊗ B → C` to `B → A* ⊗ C`.
pub fn curry(f: &Morphism, a: &Game, b: &Game) -> Result<Morphism, MonoidalError> {
    if !same_atoms(&f.src, &a.tensor(b)) {
        return Err(MonoidalError::Shape(format!("{} is not {a} ⊗ {b}", f.src)));
    }
    let (na, nb, nc) = (a.atom_count(), b.atom_count(), f.dst.atom_count());
    // [A*, B*, C] to [B*, A*, C].
    let map: Vec<u32> = (0..na)
        .map(|i| nb + i)
        .chain(0..nb)
        .chain((na + nb)..(na + nb + nc))
        .map(|i| i as u32)
        .collect();
    Ok(Morphism::new(
        b.clone(),
        a.dual().tensor(&f.dst),
        relabel(f.beh.clone(), map),
    ))
}

/// From `g : B → A* ⊗ C` back to `A ⊗ B → C`.
pub fn uncurry(g: &Morphism, a: &Game, c: &Game) -> Result<Morphism, MonoidalError> {
    if !same_atoms(&g.dst, &a.dual().tensor(c)) {
        return Err(MonoidalError::Shape(format!(
            "{} is not {}* ⊗ {c}",
            g.dst, a
        )));
    }
    let (na, nb, nc) = (a.atom_count(), g.src.atom_count(), c.atom_count());
    // [B*, A*, C] to [A*, B*, C].
    let map: Vec<u32> = (0..nb)
        .map(|i| na + i)
        .chain(0..na)
        .chain((na + nb)..(na + nb + nc))
        .map(|i| i as u32)
        .collect();
    Ok(Morphism::new(
        a.tensor(&g.src),
        c.clone(),
        relabel(g.beh.clone(), map),
    ))
}

/// `Tr_X(f) : A → B` for `f : X ⊗ A → X ⊗ B`, as the composite of the
/// copycat `1 → X* ⊗ X` with `f` rearranged into `X* ⊗ X → A* ⊗ B`.
pub fn trace(f: &Morphism, x: &Game, a: &Game, b: &Game) -> Result<Morphism, MonoidalError> {
    if !same_atoms(&f.src, &x.tensor(a)) || !same_atoms(&f.dst, &x.tensor(b)) {
        return Err(MonoidalError::Shape(format!(
            "{f:?} is not {x} ⊗ {a} → {x} ⊗ {b}"
        )));
    }
    let (nx, na, nb) = (x.atom_count(), a.atom_count(), b.atom_count());
    let unit = Game::unit();
    let xx = x.dual().tensor(x);
    let eta = Morphism::new(unit.clone(), xx.clone(), Copycat::identity(nx));
    // f on [X_in*, A*, X_out, B]; the rearranged f on [X_out, X_in*, A*, B].
    let map: Vec<u32> = (0..nx)
        .map(|i| nx + i)
        .chain((0..na).map(|i| 2 * nx + i))
        .chain(0..nx)
        .chain((0..nb).map(|i| 2 * nx + na + i))
        .map(|i| i as u32)
        .collect();
    let hat = Morphism::new(xx, a.dual().tensor(b), relabel(f.beh.clone(), map));
    let point = eta.then(&hat)?;
    Ok(Morphism::new(a.clone(), b.clone(), point.beh))
}

/// Outcome of one axiom instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub instance: usize,
    pub passed: bool,
    pub detail: String,
}

fn compare(
    axiom: &'static str,
    instance: usize,
    lhs: &Morphism,
    rhs: &Morphism,
) -> Result<AxiomCheck, MonoidalError> {
    let l = lhs.strategy()?;
    let r = rhs.strategy()?;
    let passed = l.plays() == r.plays();
    let detail = if passed {
        format!("{} plays", l.len())
    } else {
        let diff = l
            .plays()
            .symmetric_difference(r.plays())
            .next()
            .cloned()
            .unwrap_or_default();
        format!("differ on {}", l.game().format_moves(&diff))
    };
    Ok(AxiomCheck {
        axiom,
        instance,
        passed,
        detail,
    })
}

fn rand_morphism(rng: &mut Seeded, src: &Game, dst: &Game) -> Morphism {
    let g = src.dual().tensor(dst);
    let s = random_strategy(rng, &g, 0.85, 400);
    Morphism::from_strategy(src.clone(), dst.clone(), &s).expect("generated on the right game")
}

/// Limits for generated games.
#[derive(Copy, Clone, Debug)]
pub struct GenLimits {
    pub positions: usize,
    pub depth: usize,
}

impl Default for GenLimits {
    fn default() -> GenLimits {
        GenLimits {
            positions: 6,
            depth: 2,
        }
    }
}

/// Yanking, strength, naturality and sliding on one random instance.
pub fn trace_axioms_instance(
    rng: &mut Seeded,
    instance: usize,
    lim: GenLimits,
) -> Result<Vec<AxiomCheck>, MonoidalError> {
    let mut gen = |name: &str| random_game(rng, name, lim.positions, lim.depth);
    let (x, y, a, b, a2, b2, c, d) = (
        gen("X"),
        gen("Y"),
        gen("A"),
        gen("B"),
        gen("A'"),
        gen("B'"),
        gen("C"),
        gen("D"),
    );
    let mut out = Vec::new();

    // Yanking: Tr_X(c_{X,X}) = 1_X.
    let yank = trace(&symmetry(&x, &x), &x, &x, &x)?;
    out.push(compare(
        "yanking",
        instance,
        &yank,
        &Morphism::identity(&x),
    )?);

    let xa = x.tensor(&a);
    let xb = x.tensor(&b);
    let f = rand_morphism(rng, &xa, &xb);

    // Strength: Tr_X(f ⊗ g) = Tr_X(f) ⊗ g.
    let g = rand_morphism(rng, &c, &d);
    let lhs = trace(&f.tensor(&g), &x, &a.tensor(&c), &b.tensor(&d))?;
    let rhs = trace(&f, &x, &a, &b)?.tensor(&g);
    out.push(compare("strength", instance, &lhs, &rhs)?);

    // Naturality: Tr_X((1 ⊗ g) ; f ; (1 ⊗ h)) = g ; Tr_X(f) ; h.
    let g = rand_morphism(rng, &a2, &a);
    let h = rand_morphism(rng, &b, &b2);
    let id_x = Morphism::identity(&x);
    let inner = id_x.tensor(&g).then(&f)?.then(&id_x.tensor(&h))?;
    let lhs = trace(&inner, &x, &a2, &b2)?;
    let rhs = g.then(&trace(&f, &x, &a, &b)?)?.then(&h)?;
    out.push(compare("naturality", instance, &lhs, &rhs)?);

    // Sliding: Tr_X(f ; (g ⊗ 1_B)) = Tr_Y((g ⊗ 1_A) ; f) for f : X⊗A → Y⊗B.
    let f = rand_morphism(rng, &xa, &y.tensor(&b));
    let g = rand_morphism(rng, &y, &x);
    let lhs = trace(&f.then(&g.tensor(&Morphism::identity(&b)))?, &x, &a, &b)?;
    let rhs = trace(&g.tensor(&Morphism::identity(&a)).then(&f)?, &y, &a, &b)?;
    out.push(compare("sliding", instance, &lhs, &rhs)?);
    Ok(out)
}

/// Runs `count` random instances from `seed`.
pub fn trace_axiom_suite(
    seed: u64,
    count: usize,
    lim: GenLimits,
) -> Result<Vec<AxiomCheck>, MonoidalError> {
    let mut rng = crate::random::rng(seed);
    let mut out = Vec::new();
    for i in 0..count {
        out.extend(trace_axioms_instance(&mut rng, i, lim)?);
    }
    Ok(out)
}

/// All strategies on `game` whose plays have length at most `max_len`.
/// Fails with [`MonoidalError::TooMany`] past `cap`.
pub fn all_strategies(
    game: &Game,
    max_len: usize,
    cap: usize,
) -> Result<Vec<Strategy>, MonoidalError> {
    fn at(
        game: &Game,
        pos: &crate::game::Position,
        path: &[Move],
        max_len: usize,
        cap: usize,
    ) -> Result<Vec<Vec<Vec<Move>>>, MonoidalError> {
        // Each result is the set of plays strictly extending `path`.
        let mut acc: Vec<Vec<Vec<Move>>> = vec![Vec::new()];
        if path.len() + 2 > max_len {
            return Ok(acc);
        }
        for m in game.moves_from(pos) {
            if game.polarity(m) != crate::game::Polarity::Opponent {
                continue;
            }
            let mid = game.apply(pos, m).unwrap();
            let mut options: Vec<Vec<Vec<Move>>> = vec![Vec::new()];
            for r in game.moves_from(&mid) {
                if game.polarity(r) != crate::game::Polarity::Player {
                    continue;
                }
                let mut p = path.to_vec();
                p.push(m);
                p.push(r);
                let next = game.apply(&mid, r).unwrap();
                for mut rest in at(game, &next, &p, max_len, cap)? {
                    rest.push(p.clone());
                    options.push(rest);
                }
            }
            let mut combined = Vec::new();
            for base in &acc {
                for opt in &options {
                    let mut c = base.clone();
                    c.extend(opt.iter().cloned());
                    combined.push(c);
                    if combined.len() > cap {
                        return Err(MonoidalError::TooMany(cap));
                    }
                }
            }
            acc = combined;
        }
        Ok(acc)
    }
    let sets = at(game, &game.root(), &[], max_len, cap)?;
    Ok(sets
        .into_iter()
        .map(|mut plays| {
            plays.push(Vec::new());
            Strategy::new(game.clone(), plays.into_iter().collect())
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionReport {
    /// Strategies `U(A) → B`.
    pub left: usize,
    /// Strategies `A → Neg(B)`.
    pub right: usize,
    /// The canonical map is a bijection that round-trips.
    pub bijective: bool,
}

/// Compares `Hom(U A, B)` with `Hom(A, Neg B)` up to `max_len`. The
/// canonical map keeps the plays and changes the game.
pub fn neg_adjunction_check(
    a: &Game,
    b: &Game,
    max_len: usize,
) -> Result<AdjunctionReport, MonoidalError> {
    if !a.is_negative() {
        return Err(MonoidalError::NotNegative(a.to_string()));
    }
    let lg = a.dual().tensor(b);
    let rg = a.dual().tensor(&b.neg());
    let left = all_strategies(&lg, max_len, 200_000)?;
    let right = all_strategies(&rg, max_len, 200_000)?;
    let right_set: std::collections::BTreeSet<_> =
        right.iter().map(|s| s.plays().clone()).collect();
    let mut bijective = left.len() == right.len();
    for s in &left {
        let there = s.plays().iter().all(|p| rg.is_play(p));
        bijective &= there && right_set.contains(s.plays());
    }
    Ok(AdjunctionReport {
        left: left.len(),
        right: right.len(),
        bijective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{bool_game, game_two};
    use crate::strategy::copycat;

    #[test]
    fn yanking_on_bool_is_copycat() {
        let b = bool_game();
        let t = trace(&symmetry(&b, &b), &b, &b, &b).unwrap();
        assert_eq!(t.strategy().unwrap(), copycat(&b));
    }

    #[test]
    fn trace_over_unit_is_identity() {
        let b = bool_game();
        let s = Strategy::from_names(b.dual().tensor(&b), &["q@1 q@0 V@0 F@1"]).unwrap();
        let f = Morphism::from_strategy(b.clone(), b.clone(), &s).unwrap();
        let t = trace(&f, &Game::unit(), &b, &b).unwrap();
        assert_eq!(t.strategy().unwrap(), s);
    }

    #[test]
    fn feedback_loop_is_silent() {
        // f : X ⊗ 1 → X ⊗ 1 on X = 𝟚 answers the opponent move on the output
        // X by the player move on the input X*; the loop never reaches 1.
        let x = game_two();
        let g = x.dual().tensor(&x);
        let s = Strategy::from_names(g, &["o@1 o@0"]).unwrap();
        let f = Morphism::from_strategy(x.clone(), x.clone(), &s).unwrap();
        let t = trace(&f, &x, &Game::unit(), &Game::unit()).unwrap();
        assert_eq!(t.strategy().unwrap().plays().len(), 1);
    }

    #[test]
    fn curry_round_trip() {
        let b = bool_game();
        let bb = b.tensor(&b);
        let f = Morphism::from_strategy(
            bb.clone(),
            b.clone(),
            &Strategy::from_names(bb.dual().tensor(&b), &["q@2 q@1 V@1 V@2"]).unwrap(),
        )
        .unwrap();
        let c = curry(&f, &b, &b).unwrap();
        let back = uncurry(&c, &b, &b).unwrap();
        assert_eq!(back.strategy().unwrap(), f.strategy().unwrap());
        let cs = c.strategy().unwrap();
        assert!(cs.contains(&[
            Move::new(2, 0),
            Move::new(0, 0),
            Move::new(0, 1),
            Move::new(2, 1)
        ]));
    }

    #[test]
    fn sliding_and_friends_small() {
        let checks = trace_axiom_suite(
            11,
            3,
            GenLimits {
                positions: 4,
                depth: 2,
            },
        )
        .unwrap();
        assert_eq!(checks.len(), 12);
        for c in checks {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn adjunction_examples() {
        let b = bool_game();
        let r = neg_adjunction_check(&b, &b, 4).unwrap();
        assert!(r.bijective);
        let r = neg_adjunction_check(&b, &b.dual(), 4).unwrap();
        assert_eq!((r.left, r.right, r.bijective), (1, 1, true));
        let r = neg_adjunction_check(&Game::unit(), &b, 2).unwrap();
        assert_eq!(r.left, 3);
        assert!(neg_adjunction_check(&b.dual(), &b, 2).is_err());
    }
}
