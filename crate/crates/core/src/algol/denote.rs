//! Store-passing interpretation into lazy strategies.
//!
//! A term `Γ; Δ ⊢ M : A` in which the references `T ⊆ Δ` may be written
//! is interpreted as a behaviour on
//!
//! ```text
//!   [ !⟦C₁⟧ … !⟦Cₙ⟧ ]*  ⊗  [ !⟦Bⱼ⟧ for j ∈ T ]  ⊗  ⟦A⟧
//! ```
//!
//! where `C₁ … Cₙ` lists Γ and Δ together in binding order. Every
//! exponential carries `k` copies. A reference cell is the exponential
//! of its contents; the output cells hold the store after `M`. Cells that
//! `M` never writes are passed through by copycat, and `new` is the trace
//! over its cell composed with the counit on the traced input.
//!
//! Terms outside the supported fragment are rejected with
//! [`DenoteError::Unsupported`]: abstraction bodies and pair components
//! must not mention references, and the function, argument, condition and
//! non-`Unit` initialisers must not write any.

use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::game::{bool_game, nat_game, Game, GameError, Move};
use crate::lazy::{
    materialize_upto, Beh, Behaviour, Compose, Copycat, Factor, OnOverflow, Parallel, Port, Share,
    State, StepError, Table,
};
use crate::monoidal::{trace, MonoidalError, Morphism};
use crate::strategy::Strategy;

use super::syntax::{fresh, Term, ValueType};
use super::types::{type_of, Env, TypeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DenoteError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("outside the interpreted fragment: {0}")]
    Unsupported(String),
    #[error("literal {0} exceeds the bound {1}")]
    NatTooLarge(u64, u32),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Monoidal(#[from] MonoidalError),
    #[error(transparent)]
    Step(#[from] StepError),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct DenoteConfig {
    /// Copies `k` in every exponential.
    pub copies: usize,
    pub nat_max: u32,
}

impl Default for DenoteConfig {
    fn default() -> Self {
        DenoteConfig {
            copies: 2,
            nat_max: 8,
        }
    }
}

/// `⟦A⟧`.
pub fn game_of(t: &ValueType, cfg: DenoteConfig) -> Result<Game, DenoteError> {
    Ok(match t {
        ValueType::Unit => Game::unit(),
        ValueType::Bool => bool_game(),
        ValueType::Nat => nat_game(cfg.nat_max),
        ValueType::Prod(a, b) => game_of(a, cfg)?.product(&game_of(b, cfg)?)?,
        ValueType::Arrow(a, b) => game_of(a, cfg)?.bang(cfg.copies)?.loli(&game_of(b, cfg)?),
    })
}

#[derive(Clone, Debug)]
struct Slot {
    name: String,
    ty: ValueType,
    is_ref: bool,
    bang: Game,
    width: usize,
}

struct Interp {
    cfg: DenoteConfig,
}

fn span(start: usize, len: usize) -> impl Iterator<Item = u32> {
    (start..start + len).map(|i| i as u32)
}

fn compose(f: Beh, g: Beh, na: usize, nb: usize) -> Beh {
    Arc::new(Compose::new(f, g, na, nb))
}

impl Interp {
    fn k(&self) -> usize {
        self.cfg.copies
    }

    fn slot(&self, name: &str, ty: &ValueType, is_ref: bool) -> Result<Slot, DenoteError> {
        let base = game_of(ty, self.cfg)?;
        Ok(Slot {
            name: name.to_string(),
            ty: ty.clone(),
            is_ref,
            width: base.atom_count(),
            bang: base.bang(self.k())?,
        })
    }

    fn env(ctx: &[Slot]) -> Env {
        let mut env = Env::default();
        for s in ctx {
            let entry = (s.name.clone(), s.ty.clone());
            if s.is_ref {
                env.delta.push(entry);
            } else {
                env.gamma.push(entry);
            }
        }
        env
    }

    fn type_in(ctx: &[Slot], t: &Term) -> Result<ValueType, DenoteError> {
        Ok(type_of(&Self::env(ctx), t)?)
    }

    fn width_of(&self, t: &ValueType) -> Result<usize, DenoteError> {
        Ok(game_of(t, self.cfg)?.atom_count())
    }

    /// Atoms of each slot's exponential.
    fn atoms(&self, s: &Slot) -> usize {
        s.width * self.k()
    }

    fn total(&self, ctx: &[Slot]) -> usize {
        ctx.iter().map(|s| self.atoms(s)).sum()
    }

    fn offsets(&self, ctx: &[Slot]) -> Vec<usize> {
        let mut at = 0;
        ctx.iter()
            .map(|s| {
                let o = at;
                at += self.atoms(s);
                o
            })
            .collect()
    }

    fn factors(&self, ctx: &[Slot]) -> Vec<Factor> {
        ctx.iter()
            .map(|s| Factor::bang(s.width, self.k()))
            .collect()
    }

    fn all_ports(&self, ctx: &[Slot]) -> Vec<Port> {
        (0..ctx.len()).map(|j| Port::bang(j, self.k())).collect()
    }

    fn share(&self, ctx: &[Slot], ports: Vec<Port>) -> Beh {
        Share::shared(self.factors(ctx), ports)
    }

    /// Slot bound to a free name of the term, innermost first.
    fn resolve(ctx: &[Slot], x: &str) -> Option<usize> {
        ctx.iter().rposition(|s| s.name == x)
    }

    fn written(ctx: &[Slot], t: &Term) -> BTreeSet<usize> {
        t.assigned()
            .iter()
            .filter_map(|x| Self::resolve(ctx, x))
            .collect()
    }

    fn mentions_refs(ctx: &[Slot], t: &Term) -> bool {
        t.free_names()
            .iter()
            .any(|x| Self::resolve(ctx, x).is_some_and(|j| ctx[j].is_ref))
    }

    fn out_atoms(&self, ctx: &[Slot], threaded: &[usize]) -> usize {
        threaded.iter().map(|&j| self.atoms(&ctx[j])).sum()
    }

    fn den(&self, ctx: &[Slot], threaded: &[usize], t: &Term) -> Result<Beh, DenoteError> {
        let written = Self::written(ctx, t);
        if let Some(j) = written.iter().find(|j| !threaded.contains(j)) {
            return Err(DenoteError::Unsupported(format!(
                "{t} writes {} where it may only be read",
                ctx[*j].name
            )));
        }
        if written.is_empty() && !threaded.is_empty() {
            let ro = self.den(ctx, &[], t)?;
            return self.pass_through(ctx, threaded, t, ro);
        }
        match t {
            Term::Skip => Ok(self.constant(ctx, &Game::unit(), &[])?),
            Term::Bool(b) => Ok(self.constant(
                ctx,
                &bool_game(),
                &[Move::new(0, 0), Move::new(0, if *b { 1 } else { 2 })],
            )?),
            Term::Nat(n) => {
                if *n > self.cfg.nat_max as u64 {
                    return Err(DenoteError::NatTooLarge(*n, self.cfg.nat_max));
                }
                let g = nat_game(self.cfg.nat_max);
                Ok(self.constant(ctx, &g, &[Move::new(0, 0), Move::new(0, *n as usize + 1)])?)
            }
            Term::Var(x) | Term::Deref(x) => {
                let j = Self::resolve(ctx, x).ok_or_else(|| TypeError::Unbound(x.clone()))?;
                Ok(self.share(ctx, vec![Port::single(j)]))
            }
            Term::Lam(x, a, body) => {
                if Self::mentions_refs(ctx, t) {
                    return Err(DenoteError::Unsupported(format!(
                        "abstraction {t} mentions a reference"
                    )));
                }
                let mut inner = ctx.to_vec();
                inner.push(self.slot(x, a, false)?);
                // [Γ*, (!A)*, B] is already the layout of Γ → !A ⊸ B.
                self.den(&inner, &[], body)
            }
            Term::App(m, n) => self.app(ctx, m, n),
            Term::Pair(a, b) => {
                if Self::mentions_refs(ctx, t) {
                    return Err(DenoteError::Unsupported(format!(
                        "pair {t} mentions a reference"
                    )));
                }
                self.pair(ctx, a, b)
            }
            Term::Proj(i, m) => self.proj(ctx, threaded, *i, m),
            Term::Zero(m) => self.zero(ctx, threaded, m),
            Term::If(c, a, b) => self.cond(ctx, threaded, c, a, b),
            Term::Seq(m, n) => {
                let mut avoid = n.all_names();
                avoid.extend(ctx.iter().map(|s| s.name.clone()));
                let u = fresh("u", &avoid);
                self.new_cell(ctx, threaded, &u, m, n)
            }
            Term::New(x, m, n) => self.new_cell(ctx, threaded, x, m, n),
            Term::Assign(x, m) => self.assign(ctx, threaded, x, m),
        }
    }

    /// A read-only behaviour on `[C*, A]` extended with copycat on the
    /// threaded cells.
    fn pass_through(
        &self,
        ctx: &[Slot],
        threaded: &[usize],
        t: &Term,
        ro: Beh,
    ) -> Result<Beh, DenoteError> {
        let f = self.total(ctx);
        let to = self.out_atoms(ctx, threaded);
        let r = self.width_of(&Self::type_in(ctx, t)?)?;
        let mut ports = self.all_ports(ctx);
        ports.extend(threaded.iter().map(|&j| Port::bang(j, self.k())));
        let fan = self.share(ctx, ports);
        let ro_map: Vec<u32> = span(0, f).chain(span(f + 2 * to, r)).collect();
        let id_map: Vec<u32> = span(f, 2 * to).collect();
        let wiring = Arc::new(Parallel::new(
            f + 2 * to + r,
            vec![(ro, ro_map), (Copycat::identity(to), id_map)],
        ));
        Ok(compose(fan, wiring, f, f + to))
    }

    /// A closed play set on `⟦A⟧` that ignores the context.
    fn constant(&self, ctx: &[Slot], g: &Game, play: &[Move]) -> Result<Beh, DenoteError> {
        let f = self.total(ctx);
        let mut plays = BTreeSet::new();
        for n in (0..=play.len()).step_by(2) {
            plays.insert(play[..n].to_vec());
        }
        let s = Strategy::new(g.clone(), plays);
        let map: Vec<u32> = span(f, g.atom_count()).collect();
        Ok(Arc::new(Parallel::new(
            f + g.atom_count(),
            vec![(Table::shared(&s), map)],
        )))
    }

    fn app(&self, ctx: &[Slot], m: &Term, n: &Term) -> Result<Beh, DenoteError> {
        let ValueType::Arrow(a, b) = Self::type_in(ctx, m)? else {
            unreachable!("typed application")
        };
        let (k, f) = (self.k(), self.total(ctx));
        let (wa, wb) = (self.width_of(&a)?, self.width_of(&b)?);
        let ka = k * wa;
        let instances = if wa == 0 { 0 } else { k };
        let mut ports = self.all_ports(ctx);
        for _ in 0..instances {
            ports.extend(self.all_ports(ctx));
        }
        let fan = self.share(ctx, ports);
        // [C_M, C_N × instances] → [!A ⊸ B, !A]
        let src = f * (1 + instances);
        let mut parts = vec![(
            self.den(ctx, &[], m)?,
            span(0, f).chain(span(src, ka + wb)).collect::<Vec<_>>(),
        )];
        if instances > 0 {
            let arg = self.den(ctx, &[], n)?;
            for i in 0..instances {
                let map = span(f * (1 + i), f)
                    .chain(span(src + ka + wb + i * wa, wa))
                    .collect();
                parts.push((arg.clone(), map));
            }
        }
        let body = Arc::new(Parallel::new(src + 2 * ka + wb, parts));
        // [(!A ⊸ B)*, (!A)*] → [B]
        let mut pairs: Vec<(usize, usize)> = (0..ka).map(|i| (i, ka + wb + i)).collect();
        pairs.extend((0..wb).map(|i| (ka + i, 2 * ka + wb + i)));
        let eval = Arc::new(Copycat::new(2 * ka + 2 * wb, &pairs));
        let inner = compose(fan, body, f, src);
        Ok(compose(inner, eval, f, 2 * ka + wb))
    }

    fn pair(&self, ctx: &[Slot], a: &Term, b: &Term) -> Result<Beh, DenoteError> {
        let f = self.total(ctx);
        let r1 = self.width_of(&Self::type_in(ctx, a)?)?;
        let r2 = self.width_of(&Self::type_in(ctx, b)?)?;
        let mut ports = self.all_ports(ctx);
        ports.extend(self.all_ports(ctx));
        let fan = self.share(ctx, ports);
        let parts = vec![
            (
                self.den(ctx, &[], a)?,
                span(0, f).chain(span(2 * f, r1)).collect(),
            ),
            (
                self.den(ctx, &[], b)?,
                span(f, f).chain(span(2 * f + r1, r2)).collect(),
            ),
        ];
        let both = Arc::new(Parallel::new(2 * f + r1 + r2, parts));
        Ok(compose(fan, both, f, 2 * f))
    }

    fn proj(&self, ctx: &[Slot], threaded: &[usize], i: u8, m: &Term) -> Result<Beh, DenoteError> {
        let ValueType::Prod(a, b) = Self::type_in(ctx, m)? else {
            unreachable!("typed projection")
        };
        let f = self.total(ctx);
        let to = self.out_atoms(ctx, threaded);
        let (r1, r2) = (self.width_of(&a)?, self.width_of(&b)?);
        let inner = self.den(ctx, threaded, m)?;
        let mid = to + r1 + r2;
        let (lo, len) = if i == 1 { (to, r1) } else { (to + r1, r2) };
        let mut pairs: Vec<(usize, usize)> = (0..to).map(|t| (t, mid + t)).collect();
        pairs.extend((0..len).map(|x| (lo + x, mid + to + x)));
        let pick = Arc::new(Copycat::new(mid + to + len, &pairs));
        Ok(compose(inner, pick, f, mid))
    }

    fn zero(&self, ctx: &[Slot], threaded: &[usize], m: &Term) -> Result<Beh, DenoteError> {
        let f = self.total(ctx);
        let to = self.out_atoms(ctx, threaded);
        let inner = self.den(ctx, threaded, m)?;
        let nat = nat_game(self.cfg.nat_max);
        let g = nat.dual().tensor(&bool_game());
        let (q, v, ff) = (0, 1, 2);
        let mut plays = BTreeSet::from([vec![], vec![Move::new(1, q), Move::new(0, q)]]);
        for n in 0..=self.cfg.nat_max as usize {
            let answer = if n == 0 { v } else { ff };
            plays.insert(vec![
                Move::new(1, q),
                Move::new(0, q),
                Move::new(0, n + 1),
                Move::new(1, answer),
            ]);
        }
        let test = Table::shared(&Strategy::new(g, plays));
        let parts = vec![
            (
                Copycat::identity(to),
                span(0, to).chain(span(to + 1, to)).collect(),
            ),
            (test, vec![to as u32, (2 * to + 1) as u32]),
        ];
        let wiring = Arc::new(Parallel::new(2 * to + 2, parts));
        Ok(compose(inner, wiring, f, to + 1))
    }

    fn cond(
        &self,
        ctx: &[Slot],
        threaded: &[usize],
        c: &Term,
        a: &Term,
        b: &Term,
    ) -> Result<Beh, DenoteError> {
        if !Self::written(ctx, c).is_empty() {
            return Err(DenoteError::Unsupported(format!(
                "condition {c} writes a reference"
            )));
        }
        let (k, f) = (self.k(), self.total(ctx));
        let to = self.out_atoms(ctx, threaded);
        let r = self.width_of(&Self::type_in(ctx, a)?)?;
        let block = to + r;
        let mut ports = Vec::new();
        for _ in 0..k + 2 {
            ports.extend(self.all_ports(ctx));
        }
        let fan = self.share(ctx, ports);
        let src = f * (k + 2);
        let test = self.den(ctx, &[], c)?;
        let mut parts: Vec<(Beh, Vec<u32>)> = (0..k)
            .map(|i| {
                (
                    test.clone(),
                    span(i * f, f).chain(span(src + i, 1)).collect(),
                )
            })
            .collect();
        parts.push((
            self.den(ctx, threaded, a)?,
            span(k * f, f).chain(span(src + k, block)).collect(),
        ));
        parts.push((
            self.den(ctx, threaded, b)?,
            span((k + 1) * f, f)
                .chain(span(src + k + block, block))
                .collect(),
        ));
        let body = Arc::new(Parallel::new(src + k + 2 * block, parts));
        let mut sessions = Vec::new();
        let mut at = 0;
        for (g, &j) in threaded.iter().enumerate() {
            for _ in 0..k {
                sessions.push((at, ctx[j].width, g));
                at += ctx[j].width;
            }
        }
        sessions.push((at, r, threaded.len()));
        let select = Arc::new(Select::new(k, block, sessions));
        Ok(compose(
            compose(fan, body, f, src),
            select,
            f,
            k + 2 * block,
        ))
    }

    fn new_cell(
        &self,
        ctx: &[Slot],
        threaded: &[usize],
        x: &str,
        m: &Term,
        n: &Term,
    ) -> Result<Beh, DenoteError> {
        let a = Self::type_in(ctx, m)?;
        let (k, f) = (self.k(), self.total(ctx));
        let to = self.out_atoms(ctx, threaded);
        let cell = self.slot(x, &a, true)?;
        let kx = self.atoms(&cell);
        let mut inner = ctx.to_vec();
        inner.push(cell.clone());
        let mut inner_threaded = threaded.to_vec();
        inner_threaded.push(ctx.len());
        let r = self.width_of(&Self::type_in(&inner, n)?)?;
        let body = self.den(&inner, &inner_threaded, n)?;

        if kx == 0 {
            // A `Unit` cell: the initialiser runs once, linearly, and its
            // store becomes the body's.
            let init = self.den(ctx, threaded, m)?;
            let offs = self.offsets(ctx);
            let rest: Vec<usize> = (0..ctx.len()).filter(|j| !threaded.contains(j)).collect();
            let rest_atoms: usize = rest.iter().map(|&j| self.atoms(&ctx[j])).sum();
            let mut ports = self.all_ports(ctx);
            ports.extend(rest.iter().map(|&j| Port::bang(j, k)));
            let fan = self.share(ctx, ports);
            let to_slots = |js: &[usize]| -> Vec<u32> {
                js.iter()
                    .flat_map(|&j| span(f + rest_atoms + offs[j], self.atoms(&ctx[j])))
                    .collect()
            };
            let init_map: Vec<u32> = span(0, f).chain(to_slots(threaded)).collect();
            let rest_map: Vec<u32> = span(f, rest_atoms).chain(to_slots(&rest)).collect();
            let wiring = Arc::new(Parallel::new(
                f + rest_atoms + f,
                vec![(init, init_map), (Copycat::identity(rest_atoms), rest_map)],
            ));
            return Ok(compose(compose(fan, wiring, f, f + rest_atoms), body, f, f));
        }

        if !Self::written(ctx, m).is_empty() {
            return Err(DenoteError::Unsupported(format!(
                "initialiser {m} of type {a} writes a reference"
            )));
        }
        let init = self.den(ctx, &[], m)?;
        let wa = cell.width;
        let mut ports = Vec::new();
        for _ in 0..k + 1 {
            ports.extend(self.all_ports(ctx));
        }
        let fan = self.share(ctx, ports);
        let src = f * (k + 1);
        let mut parts: Vec<(Beh, Vec<u32>)> = (0..k)
            .map(|i| {
                (
                    init.clone(),
                    span(i * f, f).chain(span(src + f + i * wa, wa)).collect(),
                )
            })
            .collect();
        parts.push((
            Copycat::identity(f),
            span(k * f, f).chain(span(src, f)).collect(),
        ));
        let promoted = Arc::new(Parallel::new(src + f + kx, parts));
        // [C*, T, x, A]
        let whole = compose(compose(fan, promoted, f, src), body, f, f + kx);
        // Rearranged as [x_in*, C*, x_out, T, A] for the trace; x_in is
        // never opened, which is the counit on the old cell.
        let map: Vec<u32> = span(kx, f)
            .chain(span(kx + f + kx, to))
            .chain(span(kx + f, kx))
            .chain(span(kx + f + kx + to, r))
            .collect();
        let xg = &cell.bang;
        let cg = Game::tensor_all(&ctx.iter().map(|s| &s.bang).collect::<Vec<_>>());
        let tg = Game::tensor_all(&threaded.iter().map(|&j| &ctx[j].bang).collect::<Vec<_>>());
        let rg = game_of(&Self::type_in(&inner, n)?, self.cfg)?;
        let out = tg.tensor(&rg);
        let looped = Morphism::new(
            xg.tensor(&cg),
            xg.tensor(&out),
            crate::lazy::relabel(whole, map),
        );
        Ok(trace(&looped, xg, &cg, &out)?.beh)
    }

    fn assign(
        &self,
        ctx: &[Slot],
        threaded: &[usize],
        x: &str,
        m: &Term,
    ) -> Result<Beh, DenoteError> {
        let j = Self::resolve(ctx, x).ok_or_else(|| TypeError::Unbound(x.to_string()))?;
        let cell = &ctx[j];
        if cell.width == 0 {
            // `!⟦Unit⟧` has no moves: the assignment is just its effects.
            return self.den(ctx, threaded, m);
        }
        if !Self::written(ctx, m).is_empty() {
            return Err(DenoteError::Unsupported(format!(
                "assigned value {m} writes a reference"
            )));
        }
        let (k, f) = (self.k(), self.total(ctx));
        let wa = cell.width;
        let init = self.den(ctx, &[], m)?;
        let rest: Vec<usize> = threaded.iter().copied().filter(|&i| i != j).collect();
        let rest_atoms: usize = rest.iter().map(|&i| self.atoms(&ctx[i])).sum();
        let mut ports = Vec::new();
        for _ in 0..k {
            ports.extend(self.all_ports(ctx));
        }
        ports.extend(rest.iter().map(|&i| Port::bang(i, k)));
        let fan = self.share(ctx, ports);
        let src = k * f + rest_atoms;
        // Offsets of each threaded cell in the output.
        let mut out_at = std::collections::BTreeMap::new();
        let mut at = src;
        for &i in threaded {
            out_at.insert(i, at);
            at += self.atoms(&ctx[i]);
        }
        let mut parts: Vec<(Beh, Vec<u32>)> = (0..k)
            .map(|c| {
                (
                    init.clone(),
                    span(c * f, f)
                        .chain(span(out_at[&j] + c * wa, wa))
                        .collect(),
                )
            })
            .collect();
        if rest_atoms > 0 {
            let map = span(k * f, rest_atoms)
                .chain(
                    rest.iter()
                        .flat_map(|&i| span(out_at[&i], self.atoms(&ctx[i]))),
                )
                .collect();
            parts.push((Copycat::identity(rest_atoms), map));
        }
        let to = self.out_atoms(ctx, threaded);
        let wiring = Arc::new(Parallel::new(src + to, parts));
        Ok(compose(fan, wiring, f, src))
    }
}

/// Routes each output session through one copy of a boolean test.
///
/// Atoms are `[!Bool*, O₁*, O₂*, O]`, where the three `O` blocks have the
/// same session layout. When the opponent opens a session in `O`, a fresh
/// copy of the test is asked; its answer binds the session to the next
/// unused session of the same group in `O₁` (true) or `O₂` (false), after
/// which moves are copied.
#[derive(Debug)]
struct Select {
    copies: usize,
    block: usize,
    /// `(offset, width, group)`, sorted by offset, no empty widths.
    sessions: Vec<(usize, usize, usize)>,
    groups: usize,
}

const UNOPENED: u32 = 0;
const WAITING: u32 = 1;
const BOUND: u32 = 2;

impl Select {
    fn new(copies: usize, block: usize, sessions: Vec<(usize, usize, usize)>) -> Select {
        let groups = sessions.iter().map(|s| s.2 + 1).max().unwrap_or(0);
        let sessions = sessions.into_iter().filter(|s| s.1 > 0).collect();
        Select {
            copies,
            block,
            sessions,
            groups,
        }
    }

    fn session_at(&self, local: usize) -> usize {
        self.sessions.partition_point(|s| s.0 <= local) - 1
    }

    // State layout: [tests used, per session (status, index, pending atom,
    // pending edge), per branch and group the sessions used].
    fn field(&self, s: usize, i: usize) -> usize {
        1 + 4 * s + i
    }

    fn used(&self, branch: usize, group: usize) -> usize {
        1 + 4 * self.sessions.len() + branch * self.groups + group
    }
}

impl Behaviour for Select {
    fn init(&self) -> State {
        State::Nums(vec![0; 1 + 4 * self.sessions.len() + 2 * self.groups])
    }

    fn respond(&self, state: &State, opp: Move) -> Result<Option<(Move, State)>, StepError> {
        let State::Nums(st) = state else {
            unreachable!("select state")
        };
        let mut st = st.clone();
        let a = opp.atom();
        let branch_start = |b: usize| self.copies + b * self.block;
        let out_start = self.copies + 2 * self.block;
        if a < self.copies {
            let b = match opp.edge {
                1 => 0,
                2 => 1,
                _ => return Ok(None),
            };
            let Some(s) = (0..self.sessions.len())
                .find(|&s| st[self.field(s, 0)] == WAITING && st[self.field(s, 1)] as usize == a)
            else {
                return Ok(None);
            };
            let group = self.sessions[s].2;
            let nth = st[self.used(b, group)] as usize;
            let Some(target) = self
                .sessions
                .iter()
                .enumerate()
                .filter(|(_, x)| x.2 == group)
                .nth(nth)
                .map(|(i, _)| i)
            else {
                return Err(StepError::Overflow(self.copies));
            };
            st[self.used(b, group)] += 1;
            st[self.field(s, 0)] = BOUND + b as u32;
            st[self.field(s, 1)] = target as u32;
            let atom = branch_start(b) + self.sessions[target].0 + st[self.field(s, 2)] as usize;
            let edge = st[self.field(s, 3)] as usize;
            return Ok(Some((Move::new(atom, edge), State::Nums(st))));
        }
        if a < out_start {
            let b = (a - self.copies) / self.block;
            let local = a - branch_start(b);
            let inner = self.session_at(local);
            let Some(s) = (0..self.sessions.len()).find(|&s| {
                st[self.field(s, 0)] == BOUND + b as u32 && st[self.field(s, 1)] as usize == inner
            }) else {
                return Ok(None);
            };
            let atom = out_start + self.sessions[s].0 + local - self.sessions[inner].0;
            return Ok(Some((Move::new(atom, opp.edge()), State::Nums(st))));
        }
        let local = a - out_start;
        let s = self.session_at(local);
        let rel = local - self.sessions[s].0;
        match st[self.field(s, 0)] {
            UNOPENED => {
                let i = st[0] as usize;
                if i >= self.copies {
                    return Err(StepError::Overflow(self.copies));
                }
                st[0] += 1;
                st[self.field(s, 0)] = WAITING;
                st[self.field(s, 1)] = i as u32;
                st[self.field(s, 2)] = rel as u32;
                st[self.field(s, 3)] = opp.edge;
                Ok(Some((Move::new(i, 0), State::Nums(st))))
            }
            WAITING => Ok(None),
            bound => {
                let b = (bound - BOUND) as usize;
                let target = st[self.field(s, 1)] as usize;
                let atom = branch_start(b) + self.sessions[target].0 + rel;
                Ok(Some((Move::new(atom, opp.edge()), State::Nums(st))))
            }
        }
    }
}

/// `⟦M⟧` for a closed term, as a behaviour on `⟦A⟧`.
pub fn denote_behaviour(t: &Term, cfg: DenoteConfig) -> Result<(Game, Beh), DenoteError> {
    let ty = super::types::type_closed(t)?;
    let interp = Interp { cfg };
    let beh = interp.den(&[], &[], t)?;
    Ok((game_of(&ty, cfg)?, beh))
}

/// The plays of `⟦M⟧` of length at most `max_len`. Needing more than `k`
/// copies anywhere is an error, never a silent truncation.
pub fn denote(t: &Term, cfg: DenoteConfig, max_len: usize) -> Result<Strategy, DenoteError> {
    let (g, beh) = denote_behaviour(t, cfg)?;
    Ok(materialize_upto(&g, &*beh, max_len, OnOverflow::Fail)?)
}

#[cfg(test)]
mod tests {
    use super::super::parse::parse_term;
    use super::*;

    fn plays(src: &str) -> Vec<String> {
        let s = denote(&parse_term(src).unwrap(), DenoteConfig::default(), 12).unwrap();
        s.plays().iter().map(|p| s.game().format_moves(p)).collect()
    }

    fn value(src: &str) -> String {
        let p = plays(src);
        p.last().unwrap().clone()
    }

    #[test]
    fn constants_and_state() {
        assert_eq!(value("3"), "q 3");
        assert_eq!(value("new x := 0 in new y := (x := 5) in !x"), "q 5");
        assert_eq!(value("new x := 4 in !x"), "q 4");
        assert_eq!(value("if zero(0) then T else F"), "q V");
    }

    #[test]
    fn functions() {
        assert_eq!(value("(\\x:Nat. x) 7"), "q 7");
        assert_eq!(value("(\\f:Nat -> Nat. f (f 2)) (\\x:Nat. x)"), "q 2");
        assert_eq!(value("pi2(<1, F>)"), "q F");
    }

    #[test]
    fn conditional_store() {
        let src = "new x := 0 in new u := (if zero(!x) then x := 6 else skip) in !x";
        assert_eq!(value(src), "q 6");
    }

    #[test]
    fn fragment_limits() {
        let t = parse_term("new x := 0 in new f := (\\u:Unit. !x) in 1").unwrap();
        assert!(matches!(
            denote(&t, DenoteConfig::default(), 12),
            Err(DenoteError::Unsupported(_))
        ));
        let t = parse_term("9").unwrap();
        assert!(matches!(
            denote(&t, DenoteConfig::default(), 12),
            Err(DenoteError::NatTooLarge(9, 8))
        ));
    }
}
