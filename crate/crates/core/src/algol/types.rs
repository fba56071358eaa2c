//! Typing judgments `Γ; Δ ⊢ M : A`.

use thiserror::Error;

use super::syntax::{Term, ValueType};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TypeError {
    #[error("unbound name {0}")]
    Unbound(String),
    #[error("{0} is a reference; read it with !{0}")]
    RefAsValue(String),
    #[error("{0} is not a reference")]
    NotRef(String),
    #[error("{0} is already bound")]
    Rebound(String),
    #[error("in {term}: expected {expected}, found {found}")]
    Mismatch {
        term: String,
        expected: String,
        found: ValueType,
    },
}

/// `Γ` holds variables, `Δ` references. Later entries shadow earlier
/// ones in `Γ`; names in `Δ` are never rebound.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Env {
    pub gamma: Vec<(String, ValueType)>,
    pub delta: Vec<(String, ValueType)>,
}

impl Env {
    pub fn with_refs(delta: Vec<(String, ValueType)>) -> Env {
        Env {
            gamma: Vec::new(),
            delta,
        }
    }

    fn var(&self, x: &str) -> Option<&ValueType> {
        self.gamma
            .iter()
            .rev()
            .find(|(y, _)| y == x)
            .map(|(_, t)| t)
    }

    fn reference(&self, x: &str) -> Option<&ValueType> {
        self.delta
            .iter()
            .rev()
            .find(|(y, _)| y == x)
            .map(|(_, t)| t)
    }
}

fn expect(term: &Term, expected: &ValueType, found: ValueType) -> Result<(), TypeError> {
    if &found == expected {
        Ok(())
    } else {
        Err(TypeError::Mismatch {
            term: term.to_string(),
            expected: expected.to_string(),
            found,
        })
    }
}

pub fn type_of(env: &Env, t: &Term) -> Result<ValueType, TypeError> {
    match t {
        Term::Skip => Ok(ValueType::Unit),
        Term::Bool(_) => Ok(ValueType::Bool),
        Term::Nat(_) => Ok(ValueType::Nat),
        Term::Var(x) => match env.var(x) {
            Some(ty) => Ok(ty.clone()),
            None if env.reference(x).is_some() => Err(TypeError::RefAsValue(x.clone())),
            None => Err(TypeError::Unbound(x.clone())),
        },
        Term::Lam(x, a, body) => {
            if env.reference(x).is_some() {
                return Err(TypeError::Rebound(x.clone()));
            }
            let mut inner = env.clone();
            inner.gamma.push((x.clone(), a.clone()));
            let b = type_of(&inner, body)?;
            Ok(ValueType::arrow(a.clone(), b))
        }
        Term::App(m, n) => match type_of(env, m)? {
            ValueType::Arrow(a, b) => {
                expect(n, &a, type_of(env, n)?)?;
                Ok(*b)
            }
            other => Err(TypeError::Mismatch {
                term: m.to_string(),
                expected: "a function".into(),
                found: other,
            }),
        },
        Term::Assign(x, m) => {
            let a = reference(env, x)?;
            expect(m, &a, type_of(env, m)?)?;
            Ok(ValueType::Unit)
        }
        Term::Deref(x) => reference(env, x),
        Term::New(x, m, n) => {
            if env.reference(x).is_some() || env.var(x).is_some() {
                return Err(TypeError::Rebound(x.clone()));
            }
            let a = type_of(env, m)?;
            let mut inner = env.clone();
            inner.delta.push((x.clone(), a));
            type_of(&inner, n)
        }
        Term::Zero(m) => {
            expect(m, &ValueType::Nat, type_of(env, m)?)?;
            Ok(ValueType::Bool)
        }
        Term::If(c, a, b) => {
            expect(c, &ValueType::Bool, type_of(env, c)?)?;
            let ta = type_of(env, a)?;
            expect(b, &ta, type_of(env, b)?)?;
            Ok(ta)
        }
        Term::Pair(a, b) => Ok(ValueType::prod(type_of(env, a)?, type_of(env, b)?)),
        Term::Proj(i, m) => match type_of(env, m)? {
            ValueType::Prod(a, b) => Ok(if *i == 1 { *a } else { *b }),
            other => Err(TypeError::Mismatch {
                term: m.to_string(),
                expected: "a pair".into(),
                found: other,
            }),
        },
        Term::Seq(m, n) => {
            expect(m, &ValueType::Unit, type_of(env, m)?)?;
            expect(n, &ValueType::Unit, type_of(env, n)?)?;
            Ok(ValueType::Unit)
        }
    }
}

fn reference(env: &Env, x: &str) -> Result<ValueType, TypeError> {
    match env.reference(x) {
        Some(t) if env.var(x).is_none() => Ok(t.clone()),
        _ if env.var(x).is_some() => Err(TypeError::NotRef(x.to_string())),
        _ => Err(TypeError::Unbound(x.to_string())),
    }
}

/// The type of a closed term.
pub fn type_closed(t: &Term) -> Result<ValueType, TypeError> {
    type_of(&Env::default(), t)
}

#[cfg(test)]
mod tests {
    use super::super::parse::parse_term;
    use super::*;

    fn ty(s: &str) -> Result<ValueType, TypeError> {
        type_closed(&parse_term(s).unwrap())
    }

    #[test]
    fn judgments() {
        assert_eq!(
            ty("new x := 0 in new u := (x := 1) in !x").unwrap(),
            ValueType::Nat
        );
        assert!(matches!(
            ty("new x := 0 in x := 1; !x"),
            Err(TypeError::Mismatch { .. })
        ));
        assert_eq!(
            ty("\\x:Bool. x").unwrap(),
            ValueType::arrow(ValueType::Bool, ValueType::Bool)
        );
        assert_eq!(ty("pi2(<1, T>)").unwrap(), ValueType::Bool);
        assert!(matches!(
            ty("new x := 0 in x"),
            Err(TypeError::RefAsValue(_))
        ));
        assert!(matches!(ty("\\x:Nat. x := 1"), Err(TypeError::NotRef(_))));
        assert!(matches!(
            ty("if 1 then T else F"),
            Err(TypeError::Mismatch { .. })
        ));
        assert!(matches!(
            ty("new x := 0 in new x := 1 in !x"),
            Err(TypeError::Rebound(_))
        ));
        assert!(matches!(ty("1; skip"), Err(TypeError::Mismatch { .. })));
        assert!(matches!(ty("y"), Err(TypeError::Unbound(_))));
    }
}
