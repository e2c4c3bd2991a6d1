//! Formulas in the argument/binding syntax.
//!
//! A relation atom `r` is evaluated on the current values of its arguments;
//! the binding `(a, v) φ` copies the value of variable `v` into argument `a`
//! before evaluating `φ`.

mod normal;
mod parse;

use std::collections::BTreeSet;
use std::fmt;

use crate::model::{LanguageSignature, Symbol};

pub use normal::{
    classify_fragment, rename_apart, to_binding_normal_form, BindPrefix, Block, BoundRelation, DerivedRelation,
    FragmentClass, NormalFormError, NormalFormSentence, QuantPrefix,
};
pub use parse::{parse_formula, parse_formula_with, ParseError, ParseErrorKind, ParseOptions};
pub(crate) use parse::{Lexer, Tok, Token};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quantifier {
    Exists,
    Forall,
}

impl Quantifier {
    pub fn dual(self) -> Self {
        match self {
            Quantifier::Exists => Quantifier::Forall,
            Quantifier::Forall => Quantifier::Exists,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Quantifier::Exists => "exists",
            Quantifier::Forall => "forall",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Rel(Symbol),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Quant(Quantifier, Symbol, Box<Formula>),
    /// `(argument, variable) body`
    Bind(Symbol, Symbol, Box<Formula>),
}

impl Formula {
    pub fn rel(r: Symbol) -> Self {
        Formula::Rel(r)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn exists(v: Symbol, body: Formula) -> Self {
        Formula::Quant(Quantifier::Exists, v, Box::new(body))
    }

    pub fn forall(v: Symbol, body: Formula) -> Self {
        Formula::Quant(Quantifier::Forall, v, Box::new(body))
    }

    pub fn bind(argument: Symbol, variable: Symbol, body: Formula) -> Self {
        Formula::Bind(argument, variable, Box::new(body))
    }

    /// Wraps `body` in the bindings `pairs`, first pair outermost.
    pub fn bind_all<'a, I>(pairs: I, body: Formula) -> Self
    where
        I: IntoIterator<Item = (&'a Symbol, &'a Symbol)>,
        I::IntoIter: DoubleEndedIterator,
    {
        pairs.into_iter().rev().fold(body, |acc, (a, v)| Formula::bind(a.clone(), v.clone(), acc))
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Rel(_) => 1,
            Formula::Not(x) | Formula::Quant(_, _, x) | Formula::Bind(_, _, x) => 1 + x.size(),
            Formula::And(l, r) | Formula::Or(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Nesting depth of quantifiers.
    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::Rel(_) => 0,
            Formula::Not(x) | Formula::Bind(_, _, x) => x.quantifier_depth(),
            Formula::Quant(_, _, x) => 1 + x.quantifier_depth(),
            Formula::And(l, r) | Formula::Or(l, r) => l.quantifier_depth().max(r.quantifier_depth()),
        }
    }

    /// Relation symbols occurring in the formula.
    pub fn relations(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Rel(r) = f {
                out.insert(r.clone());
            }
        });
        out
    }

    fn visit<F: FnMut(&Formula)>(&self, f: &mut F) {
        f(self);
        match self {
            Formula::Rel(_) => {}
            Formula::Not(x) | Formula::Quant(_, _, x) | Formula::Bind(_, _, x) => x.visit(f),
            Formula::And(l, r) | Formula::Or(l, r) => {
                l.visit(f);
                r.visit(f);
            }
        }
    }

    /// Canonical, fully parenthesized text; parses back to the same tree.
    pub fn print(&self) -> String {
        self.to_string()
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, open: bool) -> fmt::Result {
        match self {
            Formula::Rel(r) => write!(f, "{r}"),
            Formula::Not(x) => {
                f.write_str("(~")?;
                x.write(f, false)?;
                f.write_str(")")
            }
            Formula::And(l, r) | Formula::Or(l, r) => {
                let op = if matches!(self, Formula::And(..)) { " & " } else { " | " };
                f.write_str("(")?;
                l.write(f, false)?;
                f.write_str(op)?;
                r.write(f, false)?;
                f.write_str(")")
            }
            Formula::Quant(q, v, x) => {
                if !open {
                    f.write_str("(")?;
                }
                write!(f, "{} {v}. ", q.keyword())?;
                x.write(f, true)?;
                if !open {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Formula::Bind(a, v, x) => {
                write!(f, "(({a}, {v}) ")?;
                x.write(f, false)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, true)
    }
}

/// Canonical text of a formula.
pub fn print_formula(phi: &Formula) -> String {
    phi.to_string()
}

/// Free arguments and variables of `phi`.
///
/// Relation atoms contribute their argument sets; a binding `(a, v)` removes
/// `a` and adds `v` only when `a` is free below it. Relations unknown to `sig`
/// contribute nothing.
pub fn free_placeholders(phi: &Formula, sig: &LanguageSignature) -> BTreeSet<Symbol> {
    match phi {
        Formula::Rel(r) => sig.args_of(r).cloned().unwrap_or_default(),
        Formula::Not(x) => free_placeholders(x, sig),
        Formula::And(l, r) | Formula::Or(l, r) => {
            let mut out = free_placeholders(l, sig);
            out.extend(free_placeholders(r, sig));
            out
        }
        Formula::Quant(_, v, x) => {
            let mut out = free_placeholders(x, sig);
            out.remove(v);
            out
        }
        Formula::Bind(a, v, x) => {
            let mut out = free_placeholders(x, sig);
            if out.remove(a) {
                out.insert(v.clone());
            }
            out
        }
    }
}

/// Free arguments `ar(φ)`.
pub fn free_arguments(phi: &Formula, sig: &LanguageSignature) -> BTreeSet<Symbol> {
    free_placeholders(phi, sig).into_iter().filter(|p| sig.is_argument(p)).collect()
}

/// Free variables `var(φ)`.
pub fn free_variables(phi: &Formula, sig: &LanguageSignature) -> BTreeSet<Symbol> {
    free_placeholders(phi, sig).into_iter().filter(|p| !sig.is_argument(p)).collect()
}

pub fn is_sentence(phi: &Formula, sig: &LanguageSignature) -> bool {
    free_placeholders(phi, sig).is_empty()
}
