//! Terms and types, with printing, free names and substitution.

use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ValueType {
    Unit,
    Bool,
    Nat,
    Arrow(Box<ValueType>, Box<ValueType>),
    Prod(Box<ValueType>, Box<ValueType>),
}

impl ValueType {
    pub fn arrow(a: ValueType, b: ValueType) -> ValueType {
        ValueType::Arrow(Box::new(a), Box::new(b))
    }

    pub fn prod(a: ValueType, b: ValueType) -> ValueType {
        ValueType::Prod(Box::new(a), Box::new(b))
    }
}

/// `α ::= A | Ref A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    Val(ValueType),
    Ref(ValueType),
}

impl fmt::Display for ValueType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &ValueType, level: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t {
                ValueType::Unit => f.write_str("Unit"),
                ValueType::Bool => f.write_str("Bool"),
                ValueType::Nat => f.write_str("Nat"),
                ValueType::Prod(a, b) => {
                    if level > 1 {
                        f.write_str("(")?;
                    }
                    go(a, 2, f)?;
                    f.write_str(" * ")?;
                    go(b, 1, f)?;
                    if level > 1 {
                        f.write_str(")")?;
                    }
                    Ok(())
                }
                ValueType::Arrow(a, b) => {
                    if level > 0 {
                        f.write_str("(")?;
                    }
                    go(a, 1, f)?;
                    f.write_str(" -> ")?;
                    go(b, 0, f)?;
                    if level > 0 {
                        f.write_str(")")?;
                    }
                    Ok(())
                }
            }
        }
        go(self, 0, f)
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Val(t) => write!(f, "{t}"),
            Type::Ref(t) => match t {
                ValueType::Arrow(..) | ValueType::Prod(..) => write!(f, "Ref ({t})"),
                _ => write!(f, "Ref {t}"),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Skip,
    Bool(bool),
    Nat(u64),
    Var(String),
    Lam(String, ValueType, Box<Term>),
    App(Box<Term>, Box<Term>),
    Assign(String, Box<Term>),
    Deref(String),
    New(String, Box<Term>, Box<Term>),
    Zero(Box<Term>),
    If(Box<Term>, Box<Term>, Box<Term>),
    Pair(Box<Term>, Box<Term>),
    /// `π₁` or `π₂`.
    Proj(u8, Box<Term>),
    Seq(Box<Term>, Box<Term>),
}

pub fn var(x: &str) -> Term {
    Term::Var(x.to_string())
}

pub fn lam(x: &str, t: ValueType, body: Term) -> Term {
    Term::Lam(x.to_string(), t, Box::new(body))
}

pub fn app(m: Term, n: Term) -> Term {
    Term::App(Box::new(m), Box::new(n))
}

pub fn assign(x: &str, m: Term) -> Term {
    Term::Assign(x.to_string(), Box::new(m))
}

pub fn deref(x: &str) -> Term {
    Term::Deref(x.to_string())
}

pub fn new(x: &str, m: Term, n: Term) -> Term {
    Term::New(x.to_string(), Box::new(m), Box::new(n))
}

pub fn zero(m: Term) -> Term {
    Term::Zero(Box::new(m))
}

pub fn ite(c: Term, a: Term, b: Term) -> Term {
    Term::If(Box::new(c), Box::new(a), Box::new(b))
}

pub fn pair(a: Term, b: Term) -> Term {
    Term::Pair(Box::new(a), Box::new(b))
}

pub fn proj(i: u8, m: Term) -> Term {
    Term::Proj(i, Box::new(m))
}

pub fn seq(m: Term, n: Term) -> Term {
    Term::Seq(Box::new(m), Box::new(n))
}

impl Term {
    /// `V ::= n | b | x | skip | λx.M | ⟨M, N⟩`. Abstractions and pairs are
    /// canonical whatever their bodies.
    pub fn is_canonical(&self) -> bool {
        matches!(
            self,
            Term::Skip
                | Term::Bool(_)
                | Term::Nat(_)
                | Term::Var(_)
                | Term::Lam(..)
                | Term::Pair(..)
        )
    }

    /// Variables and references occurring free.
    pub fn free_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let mut note = |x: &String, bound: &Vec<String>| {
            if !bound.contains(x) {
                out.insert(x.clone());
            }
        };
        match self {
            Term::Skip | Term::Bool(_) | Term::Nat(_) => {}
            Term::Var(x) | Term::Deref(x) => note(x, bound),
            Term::Assign(x, m) => {
                note(x, bound);
                m.collect_free(bound, out);
            }
            Term::Lam(x, _, b) => {
                bound.push(x.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
            Term::New(x, m, n) => {
                m.collect_free(bound, out);
                bound.push(x.clone());
                n.collect_free(bound, out);
                bound.pop();
            }
            Term::App(a, b) | Term::Pair(a, b) | Term::Seq(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Term::If(c, a, b) => {
                c.collect_free(bound, out);
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Term::Zero(m) | Term::Proj(_, m) => m.collect_free(bound, out),
        }
    }

    /// References assigned and not bound inside the term.
    pub fn assigned(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        match self {
            Term::Skip | Term::Bool(_) | Term::Nat(_) | Term::Var(_) | Term::Deref(_) => {}
            Term::Assign(x, m) => {
                out.insert(x.clone());
                out.extend(m.assigned());
            }
            Term::Lam(x, _, b) => {
                out.extend(b.assigned());
                out.remove(x);
            }
            Term::New(x, m, n) => {
                let mut inner = n.assigned();
                inner.remove(x);
                out.extend(m.assigned());
                out.extend(inner);
            }
            Term::App(a, b) | Term::Pair(a, b) | Term::Seq(a, b) => {
                out.extend(a.assigned());
                out.extend(b.assigned());
            }
            Term::If(c, a, b) => {
                out.extend(c.assigned());
                out.extend(a.assigned());
                out.extend(b.assigned());
            }
            Term::Zero(m) | Term::Proj(_, m) => out.extend(m.assigned()),
        }
        out
    }

    /// Every name occurring in the term, bound or free.
    pub fn all_names(&self) -> BTreeSet<String> {
        let mut out = self.free_names();
        self.collect_binders(&mut out);
        out
    }

    fn collect_binders(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Lam(x, _, b) => {
                out.insert(x.clone());
                b.collect_binders(out);
            }
            Term::New(x, m, n) => {
                out.insert(x.clone());
                m.collect_binders(out);
                n.collect_binders(out);
            }
            Term::Assign(_, m) | Term::Zero(m) | Term::Proj(_, m) => m.collect_binders(out),
            Term::App(a, b) | Term::Pair(a, b) | Term::Seq(a, b) => {
                a.collect_binders(out);
                b.collect_binders(out);
            }
            Term::If(c, a, b) => {
                c.collect_binders(out);
                a.collect_binders(out);
                b.collect_binders(out);
            }
            _ => {}
        }
    }

    /// Renames the free occurrences of `x`, as a variable or a reference.
    pub fn rename(&self, x: &str, y: &str) -> Term {
        self.subst_with(x, &Term::Var(y.to_string()), Some(y))
    }

    /// `self[n/x]`, avoiding capture by renaming binders.
    pub fn subst(&self, x: &str, n: &Term) -> Term {
        self.subst_with(x, n, None)
    }

    fn subst_with(&self, x: &str, n: &Term, rename_to: Option<&str>) -> Term {
        let go = |t: &Term| t.subst_with(x, n, rename_to);
        match self {
            Term::Skip | Term::Bool(_) | Term::Nat(_) => self.clone(),
            Term::Var(y) if y == x => n.clone(),
            Term::Var(_) => self.clone(),
            Term::Deref(y) if y == x => match rename_to {
                Some(z) => Term::Deref(z.to_string()),
                None => self.clone(),
            },
            Term::Deref(_) => self.clone(),
            Term::Assign(y, m) => {
                let target = match rename_to {
                    Some(z) if y == x => z.to_string(),
                    _ => y.clone(),
                };
                Term::Assign(target, Box::new(go(m)))
            }
            Term::Lam(y, t, b) => {
                if y == x {
                    return self.clone();
                }
                let (y2, b2) = self.freshen(y, b, x, n);
                Term::Lam(y2, t.clone(), Box::new(b2.subst_with(x, n, rename_to)))
            }
            Term::New(y, m, b) => {
                let m2 = go(m);
                if y == x {
                    return Term::New(y.clone(), Box::new(m2), b.clone());
                }
                let (y2, b2) = self.freshen(y, b, x, n);
                Term::New(y2, Box::new(m2), Box::new(b2.subst_with(x, n, rename_to)))
            }
            Term::App(a, b) => Term::App(Box::new(go(a)), Box::new(go(b))),
            Term::Pair(a, b) => Term::Pair(Box::new(go(a)), Box::new(go(b))),
            Term::Seq(a, b) => Term::Seq(Box::new(go(a)), Box::new(go(b))),
            Term::If(c, a, b) => Term::If(Box::new(go(c)), Box::new(go(a)), Box::new(go(b))),
            Term::Zero(m) => Term::Zero(Box::new(go(m))),
            Term::Proj(i, m) => Term::Proj(*i, Box::new(go(m))),
        }
    }

    /// Renames binder `y` over `body` when it would capture a free name of
    /// `n` (and `x` actually occurs in `body`).
    fn freshen(&self, y: &str, body: &Term, x: &str, n: &Term) -> (String, Term) {
        let fv_n = n.free_names();
        if !fv_n.contains(y) || !body.free_names().contains(x) {
            return (y.to_string(), body.clone());
        }
        let mut avoid = body.all_names();
        avoid.extend(fv_n);
        avoid.insert(x.to_string());
        let z = fresh(y, &avoid);
        let renamed = body.rename(y, &z);
        (z, renamed)
    }
}

/// `base'1`, `base'2`, … the first one not in `avoid`.
pub fn fresh(base: &str, avoid: &BTreeSet<String>) -> String {
    let stem = base.split('\'').next().unwrap_or(base);
    (1..)
        .map(|i| format!("{stem}'{i}"))
        .find(|c| !avoid.contains(c))
        .expect("unbounded supply")
}

impl Term {
    /// `new`, `λ`, `if` and assignments of those extend as far right as
    /// possible.
    fn open_ended(&self) -> bool {
        match self {
            Term::New(..) | Term::Lam(..) | Term::If(..) => true,
            Term::Assign(_, m) => m.open_ended(),
            _ => false,
        }
    }

    fn fmt_level(&self, level: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // 0: sequence, 1: expression, 2: application, 3: atom.
        let own = match self {
            Term::Seq(..) => 0,
            Term::New(..) | Term::Lam(..) | Term::If(..) | Term::Assign(..) => 1,
            Term::App(..) => 2,
            _ => 3,
        };
        if own < level {
            f.write_str("(")?;
            self.fmt_level(0, f)?;
            return f.write_str(")");
        }
        match self {
            Term::Skip => f.write_str("skip"),
            Term::Bool(true) => f.write_str("T"),
            Term::Bool(false) => f.write_str("F"),
            Term::Nat(n) => write!(f, "{n}"),
            Term::Var(x) => f.write_str(x),
            Term::Deref(x) => write!(f, "!{x}"),
            Term::Zero(m) => {
                f.write_str("zero(")?;
                m.fmt_level(0, f)?;
                f.write_str(")")
            }
            Term::Proj(i, m) => {
                write!(f, "pi{i}(")?;
                m.fmt_level(0, f)?;
                f.write_str(")")
            }
            Term::Pair(a, b) => {
                f.write_str("<")?;
                a.fmt_level(0, f)?;
                f.write_str(", ")?;
                b.fmt_level(0, f)?;
                f.write_str(">")
            }
            Term::App(a, b) => {
                a.fmt_level(2, f)?;
                f.write_str(" ")?;
                b.fmt_level(3, f)
            }
            Term::Assign(x, m) => {
                write!(f, "{x} := ")?;
                m.fmt_level(1, f)
            }
            Term::Lam(x, t, b) => {
                write!(f, "\\{x}:{t}. ")?;
                b.fmt_level(0, f)
            }
            Term::New(x, m, n) => {
                write!(f, "new {x} := ")?;
                m.fmt_level(1, f)?;
                f.write_str(" in ")?;
                n.fmt_level(0, f)
            }
            Term::If(c, a, b) => {
                f.write_str("if ")?;
                c.fmt_level(0, f)?;
                f.write_str(" then ")?;
                a.fmt_level(0, f)?;
                f.write_str(" else ")?;
                b.fmt_level(1, f)
            }
            Term::Seq(a, b) => {
                if a.open_ended() || matches!(**a, Term::Seq(..)) {
                    f.write_str("(")?;
                    a.fmt_level(0, f)?;
                    f.write_str(")")?;
                } else {
                    a.fmt_level(1, f)?;
                }
                f.write_str("; ")?;
                b.fmt_level(0, f)
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_level(0, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_avoids_capture() {
        // (λy. x)[y/x] must not capture.
        let t = lam("y", ValueType::Nat, var("x"));
        let s = t.subst("x", &var("y"));
        match s {
            Term::Lam(z, _, b) => {
                assert_ne!(z, "y");
                assert_eq!(*b, var("y"));
            }
            _ => panic!(),
        }
        // new y := 0 in !y + x  with x := !y
        let t = new("y", Term::Nat(0), seq(assign("y", Term::Nat(1)), var("x")));
        let s = t.subst("x", &deref("y"));
        let Term::New(z, _, body) = s else { panic!() };
        assert_ne!(z, "y");
        assert_eq!(*body, seq(assign(&z, Term::Nat(1)), deref("y")));
    }

    #[test]
    fn assigned_refs() {
        let t = new(
            "y",
            Term::Nat(0),
            seq(assign("y", Term::Nat(1)), assign("x", deref("y"))),
        );
        assert_eq!(t.assigned(), BTreeSet::from(["x".to_string()]));
    }

    #[test]
    fn printing() {
        let t = seq(new("x", Term::Nat(1), deref("x")), Term::Skip);
        assert_eq!(t.to_string(), "(new x := 1 in !x); skip");
        let t = app(
            lam(
                "x",
                ValueType::arrow(ValueType::Nat, ValueType::Nat),
                var("x"),
            ),
            Term::Nat(3),
        );
        assert_eq!(t.to_string(), "(\\x:Nat -> Nat. x) 3");
        assert_eq!(
            ValueType::arrow(
                ValueType::arrow(ValueType::Nat, ValueType::Bool),
                ValueType::Unit
            )
            .to_string(),
            "(Nat -> Bool) -> Unit"
        );
    }
}
