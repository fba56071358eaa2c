//! Finite relations: the relational model that positional strategies
//! collapse to.

use std::collections::BTreeSet;
use std::fmt::Debug;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelationError {
    #[error("pair {0} lies outside the domain or codomain")]
    OutOfRange(String),
    #[error("codomain of the first relation differs from the domain of the second")]
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation<A: Ord, B: Ord> {
    pub domain: BTreeSet<A>,
    pub codomain: BTreeSet<B>,
    pub pairs: BTreeSet<(A, B)>,
}

impl<A: Ord + Clone + Debug, B: Ord + Clone + Debug> Relation<A, B> {
    pub fn new(
        domain: BTreeSet<A>,
        codomain: BTreeSet<B>,
        pairs: BTreeSet<(A, B)>,
    ) -> Result<Self, RelationError> {
        if let Some(p) = pairs
            .iter()
            .find(|(a, b)| !domain.contains(a) || !codomain.contains(b))
        {
            return Err(RelationError::OutOfRange(format!("{p:?}")));
        }
        Ok(Relation {
            domain,
            codomain,
            pairs,
        })
    }

    pub fn contains(&self, a: &A, b: &B) -> bool {
        self.pairs.contains(&(a.clone(), b.clone()))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

impl<A: Ord + Clone + Debug> Relation<A, A> {
    pub fn identity(set: BTreeSet<A>) -> Self {
        let pairs = set.iter().map(|a| (a.clone(), a.clone())).collect();
        Relation {
            domain: set.clone(),
            codomain: set,
            pairs,
        }
    }
}

/// `R ; S`.
pub fn rel_compose<A, B, C>(
    r: &Relation<A, B>,
    s: &Relation<B, C>,
) -> Result<Relation<A, C>, RelationError>
where
    A: Ord + Clone,
    B: Ord + Clone,
    C: Ord + Clone,
{
    if r.codomain != s.domain {
        return Err(RelationError::Mismatch);
    }
    let mut pairs = BTreeSet::new();
    for (a, b) in &r.pairs {
        for (b2, c) in &s.pairs {
            if b2 == b {
                pairs.insert((a.clone(), c.clone()));
            }
        }
    }
    Ok(Relation {
        domain: r.domain.clone(),
        codomain: s.codomain.clone(),
        pairs,
    })
}

fn product<X: Ord + Clone, Y: Ord + Clone>(x: &BTreeSet<X>, y: &BTreeSet<Y>) -> BTreeSet<(X, Y)> {
    x.iter()
        .flat_map(|a| y.iter().map(move |b| (a.clone(), b.clone())))
        .collect()
}

/// `R ⊗ S`, relating `(a, c)` to `(b, d)` when `a R b` and `c S d`.
#[allow(clippy::type_complexity)]
pub fn rel_tensor<A, B, C, D>(r: &Relation<A, B>, s: &Relation<C, D>) -> Relation<(A, C), (B, D)>
where
    A: Ord + Clone,
    B: Ord + Clone,
    C: Ord + Clone,
    D: Ord + Clone,
{
    let mut pairs = BTreeSet::new();
    for (a, b) in &r.pairs {
        for (c, d) in &s.pairs {
            pairs.insert(((a.clone(), c.clone()), (b.clone(), d.clone())));
        }
    }
    Relation {
        domain: product(&r.domain, &s.domain),
        codomain: product(&r.codomain, &s.codomain),
        pairs,
    }
}

/// `a (Tr R) b` iff `(x, a) R (x, b)` for some `x`.
pub fn rel_trace<X, A, B>(r: &Relation<(X, A), (X, B)>) -> Relation<A, B>
where
    X: Ord + Clone,
    A: Ord + Clone,
    B: Ord + Clone,
{
    let domain = r.domain.iter().map(|(_, a)| a.clone()).collect();
    let codomain = r.codomain.iter().map(|(_, b)| b.clone()).collect();
    let pairs = r
        .pairs
        .iter()
        .filter(|((x, _), (y, _))| x == y)
        .map(|((_, a), (_, b))| (a.clone(), b.clone()))
        .collect();
    Relation {
        domain,
        codomain,
        pairs,
    }
}
