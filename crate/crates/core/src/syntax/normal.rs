//! Binding normal form: a Boolean tree of blocks `℘ ψ`, where each block body
//! `ψ` is a Boolean tree of bound derived relations `♭ r̂`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use super::{free_placeholders, Formula, Quantifier};
use crate::boolean::Bool;
use crate::model::{LanguageSignature, Symbol};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum NormalFormError {
    #[error("not a sentence: free placeholders {}", crate::model::join(.0))]
    NotASentence(Vec<Symbol>),
    #[error("unknown relation `{0}`")]
    UnknownRelation(Symbol),
    #[error("derived relation mixes argument sets: `{0}` does not range over {{{args}}}", args = crate::model::join(.1))]
    MixedArguments(Symbol, Vec<Symbol>),
    #[error("quantification prefix repeats variable `{0}`")]
    RepeatedVariable(Symbol),
}

/// A quantification prefix `℘`; each variable occurs at most once.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuantPrefix(Vec<(Quantifier, Symbol)>);

impl QuantPrefix {
    pub fn new(items: Vec<(Quantifier, Symbol)>) -> Result<Self, NormalFormError> {
        let mut seen = BTreeSet::new();
        for (_, v) in &items {
            if !seen.insert(v.clone()) {
                return Err(NormalFormError::RepeatedVariable(v.clone()));
            }
        }
        Ok(Self(items))
    }

    /// Builds a prefix from `("exists" | "forall", name)` pairs. Panics on bad input.
    pub fn from_literals(items: &[(&str, &str)]) -> Self {
        let items = items
            .iter()
            .map(|(q, v)| {
                let q = match *q {
                    "exists" | "E" => Quantifier::Exists,
                    "forall" | "A" => Quantifier::Forall,
                    other => panic!("unknown quantifier {other}"),
                };
                (q, crate::model::sym(v))
            })
            .collect();
        Self::new(items).expect("valid quantification prefix")
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Quantifier, Symbol)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn variables(&self) -> BTreeSet<Symbol> {
        self.0.iter().map(|(_, v)| v.clone()).collect()
    }

    /// Variables in prefix order.
    pub fn ordered_variables(&self) -> Vec<Symbol> {
        self.0.iter().map(|(_, v)| v.clone()).collect()
    }

    pub fn quantifier_of(&self, v: &Symbol) -> Option<Quantifier> {
        self.0.iter().find(|(_, w)| w == v).map(|(q, _)| *q)
    }

    pub fn position(&self, v: &Symbol) -> Option<usize> {
        self.0.iter().position(|(_, w)| w == v)
    }

    /// `∃(℘)` in prefix order.
    pub fn existentials(&self) -> Vec<Symbol> {
        self.of_kind(Quantifier::Exists)
    }

    /// `∀(℘)` in prefix order.
    pub fn universals(&self) -> Vec<Symbol> {
        self.of_kind(Quantifier::Forall)
    }

    fn of_kind(&self, q: Quantifier) -> Vec<Symbol> {
        self.0.iter().filter(|(k, _)| *k == q).map(|(_, v)| v.clone()).collect()
    }

    /// `Dep℘(v)`: the universal variables preceding `v`.
    pub fn dependencies(&self, v: &Symbol) -> Vec<Symbol> {
        let Some(i) = self.position(v) else { return Vec::new() };
        self.0[..i].iter().filter(|(q, _)| *q == Quantifier::Forall).map(|(_, w)| w.clone()).collect()
    }

    /// `u ⇝℘ e`: `u` universal, `e` existential, and `u` occurs before `e`.
    pub fn depends(&self, u: &Symbol, e: &Symbol) -> bool {
        match (self.position(u), self.position(e)) {
            (Some(i), Some(j)) => i < j && self.0[i].0 == Quantifier::Forall && self.0[j].0 == Quantifier::Exists,
            _ => false,
        }
    }

    pub fn rename(&self, map: &BTreeMap<Symbol, Symbol>) -> Self {
        Self(self.0.iter().map(|(q, v)| (*q, map.get(v).cloned().unwrap_or_else(|| v.clone()))).collect())
    }

    pub fn wrap(&self, body: Formula) -> Formula {
        self.0.iter().rev().fold(body, |acc, (q, v)| Formula::Quant(*q, v.clone(), Box::new(acc)))
    }
}

impl fmt::Display for QuantPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (q, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{} {v}.", q.keyword())?;
        }
        Ok(())
    }
}

/// A binding prefix `♭`, kept as a map from arguments to variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BindPrefix(BTreeMap<Symbol, Symbol>);

impl BindPrefix {
    pub fn new(map: BTreeMap<Symbol, Symbol>) -> Self {
        Self(map)
    }

    /// Panics on invalid symbols or a repeated argument.
    pub fn from_literals(pairs: &[(&str, &str)]) -> Self {
        let mut map = BTreeMap::new();
        for (a, v) in pairs {
            let prev = map.insert(crate::model::sym(a), crate::model::sym(v));
            assert!(prev.is_none(), "argument {a} bound twice");
        }
        Self(map)
    }

    pub fn get(&self, a: &Symbol) -> Option<&Symbol> {
        self.0.get(a)
    }

    pub fn arguments(&self) -> BTreeSet<Symbol> {
        self.0.keys().cloned().collect()
    }

    pub fn variables(&self) -> BTreeSet<Symbol> {
        self.0.values().cloned().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &Symbol)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn restrict(&self, args: &BTreeSet<Symbol>) -> Self {
        Self(self.0.iter().filter(|(a, _)| args.contains(*a)).map(|(a, v)| (a.clone(), v.clone())).collect())
    }

    pub fn rename(&self, map: &BTreeMap<Symbol, Symbol>) -> Self {
        Self(self.0.iter().map(|(a, v)| (a.clone(), map.get(v).cloned().unwrap_or_else(|| v.clone()))).collect())
    }

    pub fn wrap(&self, body: Formula) -> Formula {
        Formula::bind_all(self.0.iter(), body)
    }
}

impl fmt::Display for BindPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, v) in &self.0 {
            write!(f, "({a}, {v})")?;
        }
        Ok(())
    }
}

/// A Boolean combination of relations that all range over `arguments`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DerivedRelation {
    pub expr: Bool<Symbol>,
    pub arguments: BTreeSet<Symbol>,
}

impl DerivedRelation {
    pub fn new(expr: Bool<Symbol>, sig: &LanguageSignature) -> Result<Self, NormalFormError> {
        let mut arguments: Option<BTreeSet<Symbol>> = None;
        for r in expr.atoms() {
            let args = sig.args_of(r).ok_or_else(|| NormalFormError::UnknownRelation(r.clone()))?;
            match &arguments {
                None => arguments = Some(args.clone()),
                Some(prev) if prev != args => {
                    return Err(NormalFormError::MixedArguments(r.clone(), prev.iter().cloned().collect()))
                }
                _ => {}
            }
        }
        let arguments = arguments.expect("a Boolean tree has at least one atom");
        Ok(Self { expr, arguments })
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.expr.atoms().into_iter().cloned().collect()
    }

    pub fn to_formula(&self) -> Formula {
        bool_to_formula(&self.expr, &mut |r| Formula::rel(r.clone()))
    }
}

impl fmt::Display for DerivedRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expr)
    }
}

/// A pair `♭ r̂`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundRelation {
    pub binding: BindPrefix,
    pub relation: DerivedRelation,
}

impl BoundRelation {
    pub fn to_formula(&self) -> Formula {
        self.binding.wrap(self.relation.to_formula())
    }
}

impl fmt::Display for BoundRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.binding, self.relation)
    }
}

/// A leaf `℘ ψ` of the normal-form tree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block {
    pub prefix: QuantPrefix,
    pub body: Bool<BoundRelation>,
}

impl Block {
    /// The single bound relation of a one-binding block.
    pub fn single(&self) -> Option<&BoundRelation> {
        match &self.body {
            Bool::Atom(b) => Some(b),
            _ => None,
        }
    }

    pub fn to_formula(&self) -> Formula {
        self.prefix.wrap(bool_to_formula(&self.body, &mut BoundRelation::to_formula))
    }

    pub fn class(&self) -> FragmentClass {
        match self.body.connectives() {
            _ if matches!(self.body, Bool::Atom(_)) => FragmentClass::OB,
            (true, false, _) => FragmentClass::CB,
            (false, true, _) => FragmentClass::DB,
            _ => FragmentClass::BB,
        }
    }

    fn rename(&self, map: &BTreeMap<Symbol, Symbol>) -> Self {
        Self {
            prefix: self.prefix.rename(map),
            body: self
                .body
                .map(&mut |b| BoundRelation { binding: b.binding.rename(map), relation: b.relation.clone() }),
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.prefix, self.body)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalFormSentence {
    pub tree: Bool<Block>,
}

impl NormalFormSentence {
    /// Leaves in left-to-right order, with repetitions.
    pub fn blocks(&self) -> Vec<&Block> {
        self.tree.atoms()
    }

    pub fn to_formula(&self) -> Formula {
        bool_to_formula(&self.tree, &mut Block::to_formula)
    }
}

impl fmt::Display for NormalFormSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FragmentClass {
    OB,
    CB,
    DB,
    BB,
}

impl FragmentClass {
    /// Least class containing both.
    pub fn join(self, other: Self) -> Self {
        use FragmentClass::*;
        match (self, other) {
            (OB, x) | (x, OB) => x,
            (x, y) if x == y => x,
            _ => BB,
        }
    }

    pub fn contains(self, other: Self) -> bool {
        self.join(other) == self
    }

    pub fn name(self) -> &'static str {
        match self {
            FragmentClass::OB => "OB",
            FragmentClass::CB => "CB",
            FragmentClass::DB => "DB",
            FragmentClass::BB => "BB",
        }
    }
}

impl fmt::Display for FragmentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn classify_fragment(nf: &NormalFormSentence) -> FragmentClass {
    nf.blocks().into_iter().fold(FragmentClass::OB, |acc, b| acc.join(b.class()))
}

fn bool_to_formula<T, F: FnMut(&T) -> Formula>(b: &Bool<T>, leaf: &mut F) -> Formula {
    match b {
        Bool::Atom(t) => leaf(t),
        Bool::Not(x) => Formula::not(bool_to_formula(x, leaf)),
        Bool::And(l, r) => Formula::and(bool_to_formula(l, leaf), bool_to_formula(r, leaf)),
        Bool::Or(l, r) => Formula::or(bool_to_formula(l, leaf), bool_to_formula(r, leaf)),
    }
}

/// Negation normal form over the binding syntax.
#[derive(Clone, Debug)]
enum Nnf {
    Lit(bool, Symbol),
    And(Box<Nnf>, Box<Nnf>),
    Or(Box<Nnf>, Box<Nnf>),
    Quant(Quantifier, Symbol, Box<Nnf>),
    Bind(Symbol, Symbol, Box<Nnf>),
}

fn to_nnf(f: &Formula, negated: bool) -> Nnf {
    match f {
        Formula::Rel(r) => Nnf::Lit(!negated, r.clone()),
        Formula::Not(x) => to_nnf(x, !negated),
        Formula::And(l, r) | Formula::Or(l, r) => {
            let (l, r) = (Box::new(to_nnf(l, negated)), Box::new(to_nnf(r, negated)));
            if matches!(f, Formula::And(..)) != negated {
                Nnf::And(l, r)
            } else {
                Nnf::Or(l, r)
            }
        }
        Formula::Quant(q, v, x) => {
            let q = if negated { q.dual() } else { *q };
            Nnf::Quant(q, v.clone(), Box::new(to_nnf(x, negated)))
        }
        Formula::Bind(a, v, x) => Nnf::Bind(a.clone(), v.clone(), Box::new(to_nnf(x, negated))),
    }
}

/// Drops quantifiers whose variable is unused and bindings whose argument is
/// not free below; returns the stripped node with its free placeholders.
fn strip_node(n: Nnf, sig: &LanguageSignature) -> (Nnf, BTreeSet<Symbol>) {
    match n {
        Nnf::Lit(pos, r) => {
            let free = sig.args_of(&r).cloned().unwrap_or_default();
            (Nnf::Lit(pos, r), free)
        }
        Nnf::And(l, r) => {
            let ((l, mut fl), (r, fr)) = (strip_node(*l, sig), strip_node(*r, sig));
            fl.extend(fr);
            (Nnf::And(Box::new(l), Box::new(r)), fl)
        }
        Nnf::Or(l, r) => {
            let ((l, mut fl), (r, fr)) = (strip_node(*l, sig), strip_node(*r, sig));
            fl.extend(fr);
            (Nnf::Or(Box::new(l), Box::new(r)), fl)
        }
        Nnf::Quant(q, v, x) => {
            let (x, mut free) = strip_node(*x, sig);
            if free.remove(&v) {
                (Nnf::Quant(q, v, Box::new(x)), free)
            } else {
                (x, free)
            }
        }
        Nnf::Bind(a, v, x) => {
            let (x, mut free) = strip_node(*x, sig);
            if free.remove(&a) {
                free.insert(v.clone());
                (Nnf::Bind(a, v, Box::new(x)), free)
            } else {
                (x, free)
            }
        }
    }
}

/// Chooses a variable stem that cannot collide with signature symbols.
fn variable_stem(sig: &LanguageSignature) -> &'static str {
    const STEMS: &[&str] = &["x", "v", "u", "w", "var"];
    let clashes = |stem: &str| {
        sig.arguments().iter().chain(sig.relations().iter()).any(|s| {
            s.as_str()
                .strip_prefix(stem)
                .is_some_and(|rest| !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()))
        })
    };
    STEMS.iter().copied().find(|s| !clashes(s)).unwrap_or("var_")
}

struct Renamer {
    stem: &'static str,
    next: usize,
}

impl Renamer {
    fn fresh(&mut self) -> Symbol {
        let s = Symbol::new(&format!("{}{}", self.stem, self.next)).expect("generated names are valid");
        self.next += 1;
        s
    }

    fn rename(&mut self, n: Nnf, scope: &BTreeMap<Symbol, Symbol>) -> Nnf {
        match n {
            Nnf::Lit(..) => n,
            Nnf::And(l, r) => {
                let l = self.rename(*l, scope);
                Nnf::And(Box::new(l), Box::new(self.rename(*r, scope)))
            }
            Nnf::Or(l, r) => {
                let l = self.rename(*l, scope);
                Nnf::Or(Box::new(l), Box::new(self.rename(*r, scope)))
            }
            Nnf::Quant(q, v, x) => {
                let fresh = self.fresh();
                let mut inner = scope.clone();
                inner.insert(v, fresh.clone());
                Nnf::Quant(q, fresh, Box::new(self.rename(*x, &inner)))
            }
            Nnf::Bind(a, v, x) => {
                let v = scope.get(&v).cloned().unwrap_or(v);
                Nnf::Bind(a, v, Box::new(self.rename(*x, scope)))
            }
        }
    }
}

/// Removes all quantifiers, collecting them in left-to-right pre-order.
fn matrix(n: Nnf, prefix: &mut Vec<(Quantifier, Symbol)>) -> Nnf {
    match n {
        Nnf::Lit(..) => n,
        Nnf::Quant(q, v, x) => {
            prefix.push((q, v));
            matrix(*x, prefix)
        }
        Nnf::And(l, r) => {
            let l = matrix(*l, prefix);
            Nnf::And(Box::new(l), Box::new(matrix(*r, prefix)))
        }
        Nnf::Or(l, r) => {
            let l = matrix(*l, prefix);
            Nnf::Or(Box::new(l), Box::new(matrix(*r, prefix)))
        }
        Nnf::Bind(a, v, x) => Nnf::Bind(a, v, Box::new(matrix(*x, prefix))),
    }
}

/// Pushes bindings down to the literals; inner bindings override outer ones.
fn push_bindings(
    n: &Nnf,
    scope: &BTreeMap<Symbol, Symbol>,
    sig: &LanguageSignature,
) -> Result<Bool<BoundRelation>, NormalFormError> {
    Ok(match n {
        Nnf::Lit(pos, r) => {
            let args = sig.args_of(r).ok_or_else(|| NormalFormError::UnknownRelation(r.clone()))?;
            let binding = BindPrefix(scope.clone()).restrict(args);
            if binding.len() != args.len() {
                let missing = args.iter().filter(|a| binding.get(a).is_none()).cloned().collect();
                return Err(NormalFormError::NotASentence(missing));
            }
            let atom = Bool::atom(r.clone());
            let expr = if *pos { atom } else { Bool::not(atom) };
            Bool::atom(BoundRelation { binding, relation: DerivedRelation { expr, arguments: args.clone() } })
        }
        Nnf::And(l, r) => Bool::and(push_bindings(l, scope, sig)?, push_bindings(r, scope, sig)?),
        Nnf::Or(l, r) => Bool::or(push_bindings(l, scope, sig)?, push_bindings(r, scope, sig)?),
        Nnf::Bind(a, v, x) => {
            let mut inner = scope.clone();
            inner.insert(a.clone(), v.clone());
            push_bindings(x, &inner, sig)?
        }
        Nnf::Quant(..) => unreachable!("quantifiers are removed before bindings are pushed"),
    })
}

/// Merges sibling bound relations sharing a binding prefix into one derived
/// relation, across maximal chains of the same connective.
fn group(b: Bool<BoundRelation>) -> Bool<BoundRelation> {
    let is_and = match &b {
        Bool::And(..) => true,
        Bool::Or(..) => false,
        _ => return b,
    };
    let mut chain = Vec::new();
    flatten(b, is_and, &mut chain);
    let mut merged: Vec<Bool<BoundRelation>> = Vec::new();
    for child in chain.into_iter().map(group) {
        if let Bool::Atom(br) = &child {
            let slot = merged.iter_mut().find(|m| matches!(m, Bool::Atom(o) if o.binding == br.binding));
            if let Some(Bool::Atom(o)) = slot {
                let (l, r) = (o.relation.expr.clone(), br.relation.expr.clone());
                o.relation.expr = if is_and { Bool::and(l, r) } else { Bool::or(l, r) };
                continue;
            }
        }
        merged.push(child);
    }
    let join = if is_and { Bool::conjunction } else { Bool::disjunction };
    join(merged).expect("chains are non-empty")
}

fn flatten(b: Bool<BoundRelation>, is_and: bool, out: &mut Vec<Bool<BoundRelation>>) {
    match b {
        Bool::And(l, r) if is_and => {
            flatten(*l, is_and, out);
            flatten(*r, is_and, out);
        }
        Bool::Or(l, r) if !is_and => {
            flatten(*l, is_and, out);
            flatten(*r, is_and, out);
        }
        other => out.push(other),
    }
}

fn split_blocks(n: Nnf, sig: &LanguageSignature) -> Result<Bool<Block>, NormalFormError> {
    Ok(match n {
        Nnf::And(l, r) => Bool::and(split_blocks(*l, sig)?, split_blocks(*r, sig)?),
        Nnf::Or(l, r) => Bool::or(split_blocks(*l, sig)?, split_blocks(*r, sig)?),
        Nnf::Quant(..) => {
            let mut prefix = Vec::new();
            let m = matrix(n, &mut prefix);
            let body = group(push_bindings(&m, &BTreeMap::new(), sig)?);
            Bool::Atom(Block { prefix: QuantPrefix(prefix), body })
        }
        Nnf::Lit(_, r) => {
            let free = sig.args_of(&r).map(|a| a.iter().cloned().collect()).unwrap_or_default();
            return Err(NormalFormError::NotASentence(free));
        }
        Nnf::Bind(_, v, _) => return Err(NormalFormError::NotASentence(vec![v])),
    })
}

/// Converts a sentence into binding normal form.
///
/// Bound variables are renamed to `x0, x1, …` in prefix order; quantifiers of
/// each block are listed in left-to-right order of their original position.
pub fn to_binding_normal_form(phi: &Formula, sig: &LanguageSignature) -> Result<NormalFormSentence, NormalFormError> {
    for r in phi.relations() {
        if !sig.is_relation(&r) {
            return Err(NormalFormError::UnknownRelation(r));
        }
    }
    let free = free_placeholders(phi, sig);
    if !free.is_empty() {
        return Err(NormalFormError::NotASentence(free.into_iter().collect()));
    }
    let (n, _) = strip_node(to_nnf(phi, false), sig);
    let n = Renamer { stem: variable_stem(sig), next: 0 }.rename(n, &BTreeMap::new());
    Ok(NormalFormSentence { tree: split_blocks(n, sig)? })
}

/// Renames the variables of every leaf occurrence apart, sequentially across
/// leaves, so distinct leaves carry distinct schemas.
pub fn rename_apart(nf: &NormalFormSentence, sig: &LanguageSignature) -> NormalFormSentence {
    let mut renamer = Renamer { stem: variable_stem(sig), next: 0 };
    let tree = nf.tree.map(&mut |block: &Block| {
        let map: BTreeMap<Symbol, Symbol> =
            block.prefix.ordered_variables().into_iter().map(|v| (v, renamer.fresh())).collect();
        block.rename(&map)
    });
    NormalFormSentence { tree }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::sym;
    use crate::syntax::parse_formula;

    fn sig() -> LanguageSignature {
        LanguageSignature::from_literals(&["a", "b"], &[("q", &["a", "b"]), ("r", &["a", "b"]), ("s", &["a"])])
    }

    fn nf(text: &str, sig: &LanguageSignature) -> NormalFormSentence {
        to_binding_normal_form(&parse_formula(text, sig).unwrap(), sig).unwrap()
    }

    #[test]
    fn normalizes_phi1() {
        let s = sig();
        let got = nf("exists x. forall y. exists z. ((a,x)(b,y)(q | ~s) & (a,y)(b,z) r)", &s);
        let expected =
            parse_formula("exists x0. forall x1. exists x2. (((a,x0)(b,x1) q | (a,x0) ~s) & (a,x1)(b,x2) r)", &s)
                .unwrap();
        assert_eq!(got.to_formula(), expected);
        assert_eq!(classify_fragment(&got), FragmentClass::BB);
    }

    #[test]
    fn normalizes_transitivity() {
        let s = LanguageSignature::from_literals(&["1", "2"], &[("r", &["1", "2"])]);
        let got = nf("forall x. forall y. forall z. ((~(1,x)(2,y) r | ~(1,y)(2,z) r) | (1,x)(2,z) r)", &s);
        let expected = parse_formula(
            "forall x0. forall x1. forall x2. (((1,x0)(2,x1) ~r | (1,x1)(2,x2) ~r) | (1,x0)(2,x2) r)",
            &s,
        )
        .unwrap();
        assert_eq!(got.to_formula(), expected);
        assert_eq!(classify_fragment(&got), FragmentClass::DB);
    }

    #[test]
    fn normal_ob_sentence_is_a_fixed_point() {
        let s = sig();
        let once = nf("forall y. exists z. (a,y)(b,z) (q & ~r)", &s);
        let twice = to_binding_normal_form(&once.to_formula(), &s).unwrap();
        assert_eq!(once, twice);
        assert_eq!(classify_fragment(&once), FragmentClass::OB);
    }

    #[test]
    fn groups_bindings_and_pushes_negation() {
        let s = sig();
        let got = nf("~exists x. (a,x)(b,x) (q | r)", &s);
        let expected = parse_formula("forall x0. (a,x0)(b,x0) (~q & ~r)", &s).unwrap();
        assert_eq!(got.to_formula(), expected);
    }

    #[test]
    fn strips_vacuous_quantifiers_and_bindings() {
        let s = sig();
        let got = nf("forall x. exists y. forall z. (b,z)(a,x) s", &s);
        let expected = parse_formula("forall x0. (a,x0) s", &s).unwrap();
        assert_eq!(got.to_formula(), expected);
        let got = nf("forall x. forall y. (a,y)(a,x) s", &s);
        assert_eq!(got.to_formula(), parse_formula("forall x0. (a,x0) s", &s).unwrap());
    }

    #[test]
    fn rejects_non_sentences() {
        let s = sig();
        let f = parse_formula("exists x. (a,x) r", &s).unwrap();
        assert_eq!(to_binding_normal_form(&f, &s), Err(NormalFormError::NotASentence(vec![sym("b")])));
    }

    #[test]
    fn classifies_infinity_axiom_as_db() {
        let s = LanguageSignature::from_literals(&["a", "b"], &[("r", &["a", "b"])]);
        let irr = "forall x. (a,x)(b,x) ~r";
        assert_eq!(classify_fragment(&nf(irr, &s)), FragmentClass::OB);
        let all = format!(
            "({irr}) & (forall x. exists y. (a,x)(b,y) r) & \
             (forall x. forall y. forall z. ((a,x)(b,y) ~r | (a,y)(b,z) ~r | (a,x)(b,z) r))"
        );
        assert_eq!(classify_fragment(&nf(&all, &s)), FragmentClass::DB);
    }

    #[test]
    fn fragment_join() {
        use FragmentClass::*;
        assert_eq!(CB.join(DB), BB);
        assert_eq!(OB.join(CB), CB);
        assert!(BB.contains(DB));
        assert!(!CB.contains(DB));
    }

    #[test]
    fn rename_apart_separates_leaves() {
        let s = LanguageSignature::from_literals(&["a"], &[("q", &["a"])]);
        let f = NormalFormSentence {
            tree: Bool::and(
                Bool::atom(nf("forall x. (a,x) q", &s).blocks()[0].clone()),
                Bool::atom(nf("forall x. (a,x) ~q", &s).blocks()[0].clone()),
            ),
        };
        let blocks = f.blocks();
        assert_eq!(blocks[0].prefix, blocks[1].prefix);
        let apart = rename_apart(&f, &s);
        let expected = parse_formula("(forall x0. (a,x0) q) & (forall x1. (a,x1) ~q)", &s).unwrap();
        assert_eq!(apart.to_formula(), expected);
    }

    #[test]
    fn avoids_variable_names_used_by_the_signature() {
        let s = LanguageSignature::from_literals(&["x0"], &[("q", &["x0"])]);
        let got = nf("forall y. (x0,y) q", &s);
        assert_eq!(got.blocks()[0].prefix.ordered_variables(), vec![sym("v0")]);
    }
}
