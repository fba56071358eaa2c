//! TracedAlgol: a call-by-name language with local references, run both
//! by a big-step evaluator and through its strategy interpretation.

pub mod corpus;
pub mod denote;
pub mod eval;
pub mod parse;
pub mod syntax;
pub mod types;

use thiserror::Error;

use crate::lazy::StepError;
use crate::strategy::Strategy;

pub use denote::{denote, game_of, DenoteConfig, DenoteError};
pub use eval::{eval, EvalError, Outcome, Store};
pub use parse::{parse_term, parse_type, ParseError};
pub use syntax::{Term, Type, ValueType};

use syntax::{app, ite, lam, new, pair, proj, zero};
pub use types::{type_closed, type_of, Env, TypeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgolError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("type error: {0}")]
    Type(#[from] TypeError),
    #[error("evaluation: {0}")]
    Eval(#[from] EvalError),
    #[error("interpretation: {0}")]
    Denote(#[from] DenoteError),
}

impl AlgolError {
    /// Running out of fuel or of exponential copies, as opposed to a
    /// semantic failure.
    pub fn is_resource_bound(&self) -> bool {
        matches!(
            self,
            AlgolError::Eval(EvalError::OutOfFuel(_))
                | AlgolError::Denote(DenoteError::Step(
                    StepError::Overflow(_) | StepError::Diverged(_) | StepError::Truncated(_)
                ))
        )
    }
}

/// `new x₁ := V₁ in … new xₙ := Vₙ in M`, in store order.
pub fn with_store(store: &Store, t: &Term) -> Term {
    store.iter().rev().fold(t.clone(), |body, (x, v)| {
        Term::New(x.clone(), Box::new(v.clone()), Box::new(body))
    })
}

/// Types of the store's cells, each value typed with no free names.
pub fn store_env(store: &Store) -> Result<Env, TypeError> {
    let mut delta = Vec::new();
    for (x, v) in store {
        delta.push((x.clone(), type_closed(v)?));
    }
    Ok(Env::with_refs(delta))
}

#[derive(Clone, Debug)]
pub struct CorrectionReport {
    pub outcome: Outcome,
    pub ty: ValueType,
    pub lhs: Strategy,
    pub rhs: Strategy,
    /// A play in exactly one of the two sides.
    pub witness: Option<String>,
}

impl CorrectionReport {
    pub fn agrees(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub denote: DenoteConfig,
    pub max_len: usize,
    pub fuel: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            denote: DenoteConfig::default(),
            max_len: 12,
            fuel: 100_000,
        }
    }
}

/// If `(M, σ) ⇓ (V, σ')` then `⟦new σ in M⟧ = ⟦new σ' in V⟧`, compared on
/// plays of length at most `max_len`.
pub fn correction_check(
    t: &Term,
    store: &Store,
    cfg: CheckConfig,
) -> Result<CorrectionReport, AlgolError> {
    let env = store_env(store)?;
    let ty = type_of(&env, t)?;
    let outcome = eval(t, store, cfg.fuel)?;
    let lhs = denote(&with_store(store, t), cfg.denote, cfg.max_len)?;
    let rhs = denote(
        &with_store(&outcome.store, &outcome.value),
        cfg.denote,
        cfg.max_len,
    )?;
    let witness = lhs
        .plays()
        .symmetric_difference(rhs.plays())
        .next()
        .map(|p| lhs.game().format_moves(p));
    Ok(CorrectionReport {
        outcome,
        ty,
        lhs,
        rhs,
        witness,
    })
}

/// Sample closed values of a type, used as arguments by [`observations`].
pub fn sample_values(ty: &ValueType) -> Vec<Term> {
    match ty {
        ValueType::Unit => vec![Term::Skip],
        ValueType::Bool => vec![Term::Bool(true), Term::Bool(false)],
        ValueType::Nat => vec![Term::Nat(0), Term::Nat(2)],
        ValueType::Arrow(a, b) => sample_values(b)
            .into_iter()
            .map(|v| lam("a'", (**a).clone(), v))
            .collect(),
        ValueType::Prod(a, b) => {
            let (xs, ys) = (sample_values(a), sample_values(b));
            xs.iter()
                .flat_map(|x| ys.iter().map(|y| pair(x.clone(), y.clone())))
                .collect()
        }
    }
}

/// The fixed family of ground observations of `t : ty`: zero tests and
/// conditionals at ground type, application to sample arguments at arrow
/// type and projections at product type.
pub fn observations(t: &Term, ty: &ValueType) -> Vec<Term> {
    match ty {
        ValueType::Unit => vec![new("u'", t.clone(), Term::Nat(1))],
        ValueType::Bool => vec![t.clone(), ite(t.clone(), Term::Nat(1), Term::Nat(0))],
        ValueType::Nat => vec![t.clone(), zero(t.clone())],
        ValueType::Arrow(a, b) => sample_values(a)
            .into_iter()
            .flat_map(|v| observations(&app(t.clone(), v), b))
            .collect(),
        ValueType::Prod(a, b) => {
            let mut out = observations(&proj(1, t.clone()), a);
            out.extend(observations(&proj(2, t.clone()), b));
            out
        }
    }
}

/// The outcome of comparing two closed terms of the same type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationReport {
    pub same_denotation: bool,
    /// Observations run on both terms.
    pub observed: usize,
    /// An observation whose results differ, with both values.
    pub mismatch: Option<(Term, Term, Term)>,
}

/// If `⟦m⟧ = ⟦n⟧` then every observation of `m` and `n` evaluates to the
/// same value. Only the contexts of [`observations`] are tried.
pub fn equational_check(
    m: &Term,
    n: &Term,
    cfg: CheckConfig,
) -> Result<EquationReport, AlgolError> {
    let ty = type_closed(m)?;
    let ty_n = type_closed(n)?;
    if ty != ty_n {
        return Err(TypeError::Mismatch {
            term: n.to_string(),
            expected: ty.to_string(),
            found: ty_n,
        }
        .into());
    }
    let same =
        denote(m, cfg.denote, cfg.max_len)?.plays() == denote(n, cfg.denote, cfg.max_len)?.plays();
    let mut report = EquationReport {
        same_denotation: same,
        observed: 0,
        mismatch: None,
    };
    if !same {
        return Ok(report);
    }
    for (cm, cn) in observations(m, &ty).into_iter().zip(observations(n, &ty)) {
        let vm = eval(&cm, &Store::new(), cfg.fuel)?.value;
        let vn = eval(&cn, &Store::new(), cfg.fuel)?.value;
        report.observed += 1;
        if vm != vn && report.mismatch.is_none() {
            report.mismatch = Some((cm, vm, vn));
        }
    }
    Ok(report)
}
