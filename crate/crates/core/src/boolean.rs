//! Boolean combinations over an arbitrary atom type.
//!
//! The same shape serves derived relations (atoms are relation symbols),
//! block bodies (atoms are bound relations), normal-form sentence trees
//! (atoms are blocks) and ground propositional formulas.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bool<T> {
    Atom(T),
    Not(Box<Bool<T>>),
    And(Box<Bool<T>>, Box<Bool<T>>),
    Or(Box<Bool<T>>, Box<Bool<T>>),
}

impl<T> Bool<T> {
    pub fn atom(t: T) -> Self {
        Bool::Atom(t)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(inner: Bool<T>) -> Self {
        Bool::Not(Box::new(inner))
    }

    pub fn and(l: Bool<T>, r: Bool<T>) -> Self {
        Bool::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Bool<T>, r: Bool<T>) -> Self {
        Bool::Or(Box::new(l), Box::new(r))
    }

    /// Left-nested conjunction; `None` for an empty input.
    pub fn conjunction<I: IntoIterator<Item = Bool<T>>>(items: I) -> Option<Self> {
        items.into_iter().reduce(Bool::and)
    }

    /// Left-nested disjunction; `None` for an empty input.
    pub fn disjunction<I: IntoIterator<Item = Bool<T>>>(items: I) -> Option<Self> {
        items.into_iter().reduce(Bool::or)
    }

    pub fn eval<F: FnMut(&T) -> bool>(&self, f: &mut F) -> bool {
        match self {
            Bool::Atom(t) => f(t),
            Bool::Not(x) => !x.eval(f),
            Bool::And(l, r) => l.eval(f) && r.eval(f),
            Bool::Or(l, r) => l.eval(f) || r.eval(f),
        }
    }

    /// Atoms in left-to-right order, with repetitions.
    pub fn atoms(&self) -> Vec<&T> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a T>) {
        match self {
            Bool::Atom(t) => out.push(t),
            Bool::Not(x) => x.collect_atoms(out),
            Bool::And(l, r) | Bool::Or(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: &mut F) -> Bool<U> {
        match self {
            Bool::Atom(t) => Bool::Atom(f(t)),
            Bool::Not(x) => Bool::not(x.map(f)),
            Bool::And(l, r) => Bool::and(l.map(f), r.map(f)),
            Bool::Or(l, r) => Bool::or(l.map(f), r.map(f)),
        }
    }

    pub fn try_map<U, E, F: FnMut(&T) -> Result<U, E>>(&self, f: &mut F) -> Result<Bool<U>, E> {
        Ok(match self {
            Bool::Atom(t) => Bool::Atom(f(t)?),
            Bool::Not(x) => Bool::not(x.try_map(f)?),
            Bool::And(l, r) => Bool::and(l.try_map(f)?, r.try_map(f)?),
            Bool::Or(l, r) => Bool::or(l.try_map(f)?, r.try_map(f)?),
        })
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Bool::Atom(_) => 1,
            Bool::Not(x) => 1 + x.size(),
            Bool::And(l, r) | Bool::Or(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Whether the tree contains a conjunction, a disjunction, a negation.
    pub fn connectives(&self) -> (bool, bool, bool) {
        match self {
            Bool::Atom(_) => (false, false, false),
            Bool::Not(x) => {
                let (a, o, _) = x.connectives();
                (a, o, true)
            }
            Bool::And(l, r) | Bool::Or(l, r) => {
                let (la, lo, ln) = l.connectives();
                let (ra, ro, rn) = r.connectives();
                let is_and = matches!(self, Bool::And(..));
                (la || ra || is_and, lo || ro || !is_and, ln || rn)
            }
        }
    }
}

impl<T: fmt::Display> fmt::Display for Bool<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bool::Atom(t) => write!(f, "{t}"),
            Bool::Not(x) => write!(f, "(~{x})"),
            Bool::And(l, r) => write!(f, "({l} & {r})"),
            Bool::Or(l, r) => write!(f, "({l} | {r})"),
        }
    }
}
