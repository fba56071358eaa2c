//! Call-by-name big-step evaluation `(M, σ) ⇓ (V, σ')` with fuel.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::syntax::{fresh, Term};

pub type Store = BTreeMap<String, Term>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("evaluation ran out of fuel after {0} steps")]
    OutOfFuel(u64),
    #[error("reference {0} is not in the store")]
    Dangling(String),
    #[error("stuck: {0}")]
    Stuck(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub value: Term,
    pub store: Store,
    /// Rule applications used.
    pub steps: u64,
}

struct Machine {
    fuel: u64,
    steps: u64,
}

pub fn eval(t: &Term, store: &Store, fuel: u64) -> Result<Outcome, EvalError> {
    let mut m = Machine { fuel, steps: 0 };
    let (value, store) = m.run(t, store.clone())?;
    Ok(Outcome {
        value,
        store,
        steps: m.steps,
    })
}

fn stuck<T>(what: &str, t: &Term) -> Result<T, EvalError> {
    Err(EvalError::Stuck(format!("{what}: {t}")))
}

impl Machine {
    fn run(&mut self, t: &Term, store: Store) -> Result<(Term, Store), EvalError> {
        if self.steps >= self.fuel {
            return Err(EvalError::OutOfFuel(self.steps));
        }
        self.steps += 1;
        match t {
            _ if t.is_canonical() => Ok((t.clone(), store)),
            Term::App(m, n) => match self.run(m, store)? {
                (Term::Lam(x, _, body), s) => self.run(&body.subst(&x, n), s),
                (v, _) => stuck("application of a non-function", &v),
            },
            Term::If(c, a, b) => match self.run(c, store)? {
                (Term::Bool(true), s) => self.run(a, s),
                (Term::Bool(false), s) => self.run(b, s),
                (v, _) => stuck("condition is not a boolean", &v),
            },
            Term::Seq(m, n) => match self.run(m, store)? {
                (Term::Skip, s) => self.run(n, s),
                (v, _) => stuck("sequenced term is not skip", &v),
            },
            Term::Zero(m) => match self.run(m, store)? {
                (Term::Nat(k), s) => Ok((Term::Bool(k == 0), s)),
                (v, _) => stuck("zero test of a non-number", &v),
            },
            Term::Proj(i, m) => match self.run(m, store)? {
                (Term::Pair(a, b), s) => self.run(if *i == 1 { &a } else { &b }, s),
                (v, _) => stuck("projection of a non-pair", &v),
            },
            Term::Assign(x, m) => {
                let (v, mut s) = self.run(m, store)?;
                if !s.contains_key(x) {
                    return Err(EvalError::Dangling(x.clone()));
                }
                s.insert(x.clone(), v);
                Ok((Term::Skip, s))
            }
            Term::Deref(x) => match store.get(x) {
                Some(v) => Ok((v.clone(), store)),
                None => Err(EvalError::Dangling(x.clone())),
            },
            Term::New(x, m, n) => {
                let (v, mut s) = self.run(m, store)?;
                // A cell of the same name may already be live when a `new`
                // is evaluated inside a substituted body; the inner one is
                // renamed so that the outer cell survives.
                let (x, n) = if s.contains_key(x) {
                    let mut avoid: BTreeSet<String> = s.keys().cloned().collect();
                    avoid.extend(n.all_names());
                    for stored in s.values() {
                        avoid.extend(stored.all_names());
                    }
                    let y = fresh(x, &avoid);
                    let renamed = n.rename(x, &y);
                    (y, renamed)
                } else {
                    (x.clone(), (**n).clone())
                };
                s.insert(x.clone(), v);
                let (w, mut s) = self.run(&n, s)?;
                s.remove(&x);
                Ok((w, s))
            }
            _ => stuck("no rule applies", t),
        }
    }
}
