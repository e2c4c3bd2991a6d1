//! Signatures, relational structures, assignments and tuple functions.
//!
//! Relations here are not positional: every relation carries a named set of
//! arguments, and its interpretation is a set of tuple functions from those
//! arguments to domain elements. Every collection iterates in lexicographic
//! symbol order, so anything computed by enumeration is reproducible.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

/// An interned name: argument, relation, variable or domain element.
///
/// Names match `[A-Za-z0-9_][A-Za-z0-9_']*`. Leading digits are allowed so that
/// numeric arguments (`1`, `2`) and numeric domains (`0`, `1`) read naturally.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

fn interner() -> &'static Mutex<HashSet<Arc<str>>> {
    static INTERNER: OnceLock<Mutex<HashSet<Arc<str>>>> = OnceLock::new();
    INTERNER.get_or_init(|| Mutex::new(HashSet::new()))
}

pub(crate) fn is_symbol_text(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphanumeric() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl Symbol {
    pub fn new(name: &str) -> Result<Self, ModelError> {
        if !is_symbol_text(name) {
            return Err(ModelError::InvalidSymbol(name.to_string()));
        }
        let mut table = interner().lock().unwrap_or_else(|e| e.into_inner());
        if let Some(existing) = table.get(name) {
            return Ok(Symbol(existing.clone()));
        }
        let shared: Arc<str> = Arc::from(name);
        table.insert(shared.clone());
        Ok(Symbol(shared))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

/// Builds a symbol from a literal name.
///
/// Panics if `name` is not a valid symbol; meant for literals in code and tests.
pub fn sym(name: &str) -> Symbol {
    Symbol::new(name).unwrap_or_else(|_| panic!("invalid symbol literal {name:?}"))
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::borrow::Borrow<str> for Symbol {
    fn borrow(&self) -> &str {
        &self.0
    }
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("invalid symbol {0:?}")]
    InvalidSymbol(String),
    #[error("cannot restrict: placeholders {} are not in the assignment domain", join(.0))]
    RestrictOutsideDomain(Vec<Symbol>),
    #[error("invalid signature: {}", join(.0))]
    InvalidSignature(Vec<SignatureViolation>),
    #[error("invalid structure: {}", join(.0))]
    InvalidStructure(Vec<StructureViolation>),
    #[error("structure enumeration needs {0} membership bits, more than the supported 63")]
    TooManyStructures(usize),
}

pub(crate) fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", ")
}

/// A partial map from placeholders (arguments and variables) to values.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment(BTreeMap<Symbol, Symbol>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (Symbol, Symbol)>,
    {
        Assignment(pairs.into_iter().collect())
    }

    pub fn get(&self, placeholder: &Symbol) -> Option<&Symbol> {
        self.0.get(placeholder)
    }

    pub fn contains(&self, placeholder: &Symbol) -> bool {
        self.0.contains_key(placeholder)
    }

    pub fn domain(&self) -> BTreeSet<Symbol> {
        self.0.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &Symbol)> {
        self.0.iter()
    }

    /// `χ[P ↦ d]`: a copy agreeing with `self` off `placeholders` and equal to
    /// `value` on each of them.
    pub fn extend<'a, I>(&self, placeholders: I, value: &Symbol) -> Self
    where
        I: IntoIterator<Item = &'a Symbol>,
    {
        let mut next = self.0.clone();
        for p in placeholders {
            next.insert(p.clone(), value.clone());
        }
        Assignment(next)
    }

    /// Single-placeholder extension `χ[p ↦ d]`.
    pub fn with(&self, placeholder: &Symbol, value: &Symbol) -> Self {
        self.extend(std::iter::once(placeholder), value)
    }

    /// `χ|P`; fails if some placeholder of `placeholders` is unassigned.
    pub fn restrict<'a, I>(&self, placeholders: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = &'a Symbol>,
    {
        let mut out = BTreeMap::new();
        let mut missing = Vec::new();
        for p in placeholders {
            match self.0.get(p) {
                Some(v) => {
                    out.insert(p.clone(), v.clone());
                }
                None => missing.push(p.clone()),
            }
        }
        if missing.is_empty() {
            Ok(Assignment(out))
        } else {
            Err(ModelError::RestrictOutsideDomain(missing))
        }
    }

    /// Union of two assignments; `None` if they disagree on a shared key.
    pub fn merge(&self, other: &Assignment) -> Option<Assignment> {
        let mut out = self.0.clone();
        for (k, v) in &other.0 {
            match out.get(k) {
                Some(existing) if existing != v => return None,
                _ => {
                    out.insert(k.clone(), v.clone());
                }
            }
        }
        Some(Assignment(out))
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}={v}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromIterator<(Symbol, Symbol)> for Assignment {
    fn from_iter<T: IntoIterator<Item = (Symbol, Symbol)>>(iter: T) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

/// A tuple function: one element of a relation's interpretation, mapping
/// exactly the relation's arguments to domain elements.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TupleFunction(Assignment);

impl TupleFunction {
    pub fn from_pairs<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (Symbol, Symbol)>,
    {
        TupleFunction(Assignment::from_pairs(pairs))
    }

    pub fn support(&self) -> BTreeSet<Symbol> {
        self.0.domain()
    }

    pub fn get(&self, argument: &Symbol) -> Option<&Symbol> {
        self.0.get(argument)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &Symbol)> {
        self.0.iter()
    }

    pub fn as_assignment(&self) -> &Assignment {
        &self.0
    }
}

impl From<Assignment> for TupleFunction {
    fn from(value: Assignment) -> Self {
        TupleFunction(value)
    }
}

impl From<TupleFunction> for Assignment {
    fn from(value: TupleFunction) -> Self {
        value.0
    }
}

impl fmt::Display for TupleFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for TupleFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignatureViolation {
    NoArguments,
    NoRelations,
    ArgumentIsRelation(Symbol),
    MissingArgumentSet(Symbol),
    EmptyArgumentSet(Symbol),
    UnknownArgument { relation: Symbol, argument: Symbol },
    UndeclaredRelation(Symbol),
}

impl fmt::Display for SignatureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NoArguments => write!(f, "no arguments declared"),
            Self::NoRelations => write!(f, "no relations declared"),
            Self::ArgumentIsRelation(s) => write!(f, "{s}: name used both as argument and relation"),
            Self::MissingArgumentSet(r) => write!(f, "{r}: relation has no argument set"),
            Self::EmptyArgumentSet(r) => write!(f, "{r}: empty argument set"),
            Self::UnknownArgument { relation, argument } => {
                write!(f, "{relation}: unknown argument {argument}")
            }
            Self::UndeclaredRelation(r) => write!(f, "{r}: argument set given for undeclared relation"),
        }
    }
}

/// Argument names, relation names, and the argument function `ar`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanguageSignature {
    arguments: BTreeSet<Symbol>,
    relations: BTreeSet<Symbol>,
    arg_fun: BTreeMap<Symbol, BTreeSet<Symbol>>,
}

impl LanguageSignature {
    /// Builds and validates a signature from its relations' argument sets.
    pub fn new<A, R>(arguments: A, relations: R) -> Result<Self, ModelError>
    where
        A: IntoIterator<Item = Symbol>,
        R: IntoIterator<Item = (Symbol, BTreeSet<Symbol>)>,
    {
        let arg_fun: BTreeMap<_, _> = relations.into_iter().collect();
        let sig = Self::from_parts(arguments.into_iter().collect(), arg_fun.keys().cloned().collect(), arg_fun);
        validate_signature(&sig).map_err(ModelError::InvalidSignature)?;
        Ok(sig)
    }

    /// Convenience constructor from string literals; panics on invalid input.
    pub fn from_literals(arguments: &[&str], relations: &[(&str, &[&str])]) -> Self {
        Self::new(
            arguments.iter().map(|a| sym(a)),
            relations.iter().map(|(r, args)| (sym(r), args.iter().map(|a| sym(a)).collect())),
        )
        .unwrap_or_else(|e| panic!("{e}"))
    }

    /// Assembles a signature without checking it; see [`validate_signature`].
    pub fn from_parts(
        arguments: BTreeSet<Symbol>,
        relations: BTreeSet<Symbol>,
        arg_fun: BTreeMap<Symbol, BTreeSet<Symbol>>,
    ) -> Self {
        LanguageSignature { arguments, relations, arg_fun }
    }

    pub fn arguments(&self) -> &BTreeSet<Symbol> {
        &self.arguments
    }

    pub fn relations(&self) -> &BTreeSet<Symbol> {
        &self.relations
    }

    pub fn is_argument(&self, s: &Symbol) -> bool {
        self.arguments.contains(s)
    }

    pub fn is_relation(&self, s: &Symbol) -> bool {
        self.relations.contains(s)
    }

    /// `ar(r)`, if `r` is a relation of the signature.
    pub fn args_of(&self, relation: &Symbol) -> Option<&BTreeSet<Symbol>> {
        self.arg_fun.get(relation)
    }

    /// Relations whose argument set is exactly `arguments`.
    pub fn relations_over(&self, arguments: &BTreeSet<Symbol>) -> Vec<Symbol> {
        self.arg_fun.iter().filter(|(_, a)| *a == arguments).map(|(r, _)| r.clone()).collect()
    }

    /// The distinct argument sets used by some relation.
    pub fn argument_sets(&self) -> BTreeSet<BTreeSet<Symbol>> {
        self.arg_fun.values().cloned().collect()
    }
}

/// Checks the signature invariants, naming every offending symbol.
pub fn validate_signature(sig: &LanguageSignature) -> Result<(), Vec<SignatureViolation>> {
    let mut out = Vec::new();
    if sig.arguments.is_empty() {
        out.push(SignatureViolation::NoArguments);
    }
    if sig.relations.is_empty() {
        out.push(SignatureViolation::NoRelations);
    }
    for s in sig.arguments.intersection(&sig.relations) {
        out.push(SignatureViolation::ArgumentIsRelation(s.clone()));
    }
    for r in &sig.relations {
        match sig.arg_fun.get(r) {
            None => out.push(SignatureViolation::MissingArgumentSet(r.clone())),
            Some(args) if args.is_empty() => out.push(SignatureViolation::EmptyArgumentSet(r.clone())),
            Some(args) => {
                for a in args {
                    if !sig.arguments.contains(a) {
                        out.push(SignatureViolation::UnknownArgument { relation: r.clone(), argument: a.clone() });
                    }
                }
            }
        }
    }
    for r in sig.arg_fun.keys() {
        if !sig.relations.contains(r) {
            out.push(SignatureViolation::UndeclaredRelation(r.clone()));
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureViolation {
    EmptyDomain,
    UnknownRelation(Symbol),
    MissingRelation(Symbol),
    SupportMismatch { relation: Symbol, tuple: TupleFunction },
    ValueOutsideDomain { relation: Symbol, argument: Symbol, value: Symbol },
}

impl fmt::Display for StructureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EmptyDomain => write!(f, "empty domain"),
            Self::UnknownRelation(r) => write!(f, "{r}: unknown relation"),
            Self::MissingRelation(r) => write!(f, "{r}: relation has no interpretation"),
            Self::SupportMismatch { relation, tuple } => {
                write!(f, "{relation}: support mismatch in tuple {tuple}")
            }
            Self::ValueOutsideDomain { relation, argument, value } => {
                write!(f, "{relation}: value {value} of argument {argument} is outside the domain")
            }
        }
    }
}

/// A finite relational structure over a signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationalStructure {
    signature: LanguageSignature,
    domain: BTreeSet<Symbol>,
    relations: BTreeMap<Symbol, BTreeSet<TupleFunction>>,
}

/// A tuple written as `(argument, element)` literal pairs.
pub type LiteralTuple<'a> = &'a [(&'a str, &'a str)];

impl RelationalStructure {
    /// Builds and validates a structure. Relations missing from `relations`
    /// are interpreted as empty.
    pub fn new<D, R>(signature: &LanguageSignature, domain: D, relations: R) -> Result<Self, ModelError>
    where
        D: IntoIterator<Item = Symbol>,
        R: IntoIterator<Item = (Symbol, BTreeSet<TupleFunction>)>,
    {
        let mut rels: BTreeMap<_, _> = relations.into_iter().collect();
        for r in signature.relations() {
            rels.entry(r.clone()).or_default();
        }
        let out = Self::from_parts(signature.clone(), domain.into_iter().collect(), rels);
        validate_structure(signature, &out).map_err(ModelError::InvalidStructure)?;
        Ok(out)
    }

    /// Literal constructor: `relations` lists, per relation, tuples as
    /// `(argument, element)` pairs. Panics on invalid input.
    pub fn from_literals(
        signature: &LanguageSignature,
        domain: &[&str],
        relations: &[(&str, &[LiteralTuple])],
    ) -> Self {
        let rels = relations.iter().map(|(r, tuples)| {
            let set =
                tuples.iter().map(|t| TupleFunction::from_pairs(t.iter().map(|(a, d)| (sym(a), sym(d))))).collect();
            (sym(r), set)
        });
        Self::new(signature, domain.iter().map(|d| sym(d)), rels).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Assembles a structure without checking it; see [`validate_structure`].
    pub fn from_parts(
        signature: LanguageSignature,
        domain: BTreeSet<Symbol>,
        relations: BTreeMap<Symbol, BTreeSet<TupleFunction>>,
    ) -> Self {
        RelationalStructure { signature, domain, relations }
    }

    pub fn signature(&self) -> &LanguageSignature {
        &self.signature
    }

    pub fn domain(&self) -> &BTreeSet<Symbol> {
        &self.domain
    }

    /// The order `|D|`.
    pub fn order(&self) -> usize {
        self.domain.len()
    }

    pub fn interpretation(&self, relation: &Symbol) -> Option<&BTreeSet<TupleFunction>> {
        self.relations.get(relation)
    }

    pub fn relations(&self) -> &BTreeMap<Symbol, BTreeSet<TupleFunction>> {
        &self.relations
    }

    pub fn contains(&self, relation: &Symbol, tuple: &TupleFunction) -> bool {
        self.relations.get(relation).is_some_and(|set| set.contains(tuple))
    }
}

/// Checks a structure against `sig`, collecting every violation.
pub fn validate_structure(
    sig: &LanguageSignature,
    structure: &RelationalStructure,
) -> Result<(), Vec<StructureViolation>> {
    let mut out = Vec::new();
    if structure.domain.is_empty() {
        out.push(StructureViolation::EmptyDomain);
    }
    for r in sig.relations() {
        if !structure.relations.contains_key(r) {
            out.push(StructureViolation::MissingRelation(r.clone()));
        }
    }
    for (r, tuples) in &structure.relations {
        let Some(args) = sig.args_of(r) else {
            out.push(StructureViolation::UnknownRelation(r.clone()));
            continue;
        };
        for t in tuples {
            if &t.support() != args {
                out.push(StructureViolation::SupportMismatch { relation: r.clone(), tuple: t.clone() });
            }
            for (a, d) in t.iter() {
                if !structure.domain.contains(d) {
                    out.push(StructureViolation::ValueOutsideDomain {
                        relation: r.clone(),
                        argument: a.clone(),
                        value: d.clone(),
                    });
                }
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// Canonical element names `e0, e1, …` used by bounded search.
pub fn canonical_domain(order: usize) -> Vec<Symbol> {
    (0..order).map(|i| sym(&format!("e{i}"))).collect()
}

/// All assignments with domain exactly `placeholders` and values in `carrier`,
/// in lexicographic order.
pub fn all_assignments(placeholders: &[Symbol], carrier: &[Symbol]) -> Vec<Assignment> {
    let mut out = vec![Assignment::new()];
    for p in placeholders {
        let mut next = Vec::with_capacity(out.len() * carrier.len());
        for chi in &out {
            for d in carrier {
                next.push(chi.with(p, d));
            }
        }
        out = next;
    }
    out
}

/// Every structure of exactly `order` elements over `sig`, on the canonical
/// domain. Fails if the number of membership bits exceeds 63.
pub fn enumerate_structures(
    sig: &LanguageSignature,
    order: usize,
) -> Result<impl Iterator<Item = RelationalStructure> + '_, ModelError> {
    let domain = canonical_domain(order);
    let mut slots: Vec<(Symbol, TupleFunction)> = Vec::new();
    for r in sig.relations() {
        let args: Vec<Symbol> = sig.args_of(r).into_iter().flatten().cloned().collect();
        for chi in all_assignments(&args, &domain) {
            slots.push((r.clone(), chi.into()));
        }
    }
    if slots.len() > 63 {
        return Err(ModelError::TooManyStructures(slots.len()));
    }
    let total: u64 = 1u64 << slots.len();
    let domain_set: BTreeSet<Symbol> = domain.into_iter().collect();
    Ok((0..total).map(move |mask| {
        let mut rels: BTreeMap<Symbol, BTreeSet<TupleFunction>> =
            sig.relations().iter().map(|r| (r.clone(), BTreeSet::new())).collect();
        for (i, (r, t)) in slots.iter().enumerate() {
            if mask >> i & 1 == 1 {
                rels.entry(r.clone()).or_default().insert(t.clone());
            }
        }
        RelationalStructure::from_parts(sig.clone(), domain_set.clone(), rels)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn running_signature() -> LanguageSignature {
        LanguageSignature::from_literals(&["a", "b"], &[("q", &["a", "b"]), ("r", &["a", "b"]), ("s", &["a"])])
    }

    fn set(items: &[&str]) -> BTreeSet<Symbol> {
        items.iter().map(|s| sym(s)).collect()
    }

    #[test]
    fn running_signature_is_valid() {
        assert!(validate_signature(&running_signature()).is_ok());
    }

    #[test]
    fn empty_argument_set_is_reported() {
        let sig = LanguageSignature::from_parts(
            set(&["a"]),
            set(&["p"]),
            [(sym("p"), BTreeSet::new())].into_iter().collect(),
        );
        let v = validate_signature(&sig).unwrap_err();
        assert_eq!(v, vec![SignatureViolation::EmptyArgumentSet(sym("p"))]);
        assert!(v[0].to_string().contains("empty argument set"));
    }

    #[test]
    fn unknown_argument_is_reported() {
        let sig = LanguageSignature::from_parts(
            set(&["a", "b"]),
            set(&["q"]),
            [(sym("q"), set(&["c"]))].into_iter().collect(),
        );
        let v = validate_signature(&sig).unwrap_err();
        assert!(v[0].to_string().contains("unknown argument"));
        assert!(v[0].to_string().contains('c'));
    }

    #[test]
    fn running_structure_is_valid() {
        let sig = running_signature();
        let s = RelationalStructure::from_literals(
            &sig,
            &["0", "1"],
            &[
                ("q", &[&[("a", "0"), ("b", "0")], &[("a", "0"), ("b", "1")]]),
                ("r", &[&[("a", "0"), ("b", "0")], &[("a", "1"), ("b", "1")]]),
                ("s", &[&[("a", "1")]]),
            ],
        );
        assert_eq!(s.order(), 2);
        assert!(validate_structure(&sig, &s).is_ok());
    }

    #[test]
    fn empty_domain_and_support_mismatch() {
        let sig = running_signature();
        let mut rels: BTreeMap<Symbol, BTreeSet<TupleFunction>> =
            sig.relations().iter().map(|r| (r.clone(), BTreeSet::new())).collect();
        let s = RelationalStructure::from_parts(sig.clone(), BTreeSet::new(), rels.clone());
        assert_eq!(validate_structure(&sig, &s).unwrap_err(), vec![StructureViolation::EmptyDomain]);

        rels.get_mut(&sym("q")).unwrap().insert(TupleFunction::from_pairs([(sym("a"), sym("0"))]));
        let s = RelationalStructure::from_parts(sig.clone(), set(&["0"]), rels);
        let v = validate_structure(&sig, &s).unwrap_err();
        assert!(v[0].to_string().contains("support mismatch"));
    }

    #[test]
    fn empty_interpretations_are_accepted() {
        let sig = running_signature();
        let s = RelationalStructure::new(&sig, [sym("d")], []).unwrap();
        assert!(s.interpretation(&sym("q")).unwrap().is_empty());
    }

    #[test]
    fn extend_examples() {
        let zero = sym("0");
        let e = Assignment::new().extend(&[sym("a"), sym("b")], &zero);
        assert_eq!(e, Assignment::from_pairs([(sym("a"), sym("0")), (sym("b"), sym("0"))]));

        let chi = Assignment::from_pairs([(sym("x"), sym("1"))]);
        let e = chi.extend(&[sym("a")], &zero);
        assert_eq!(e, Assignment::from_pairs([(sym("x"), sym("1")), (sym("a"), sym("0"))]));
        assert_eq!(chi.len(), 1);

        let chi = Assignment::from_pairs([(sym("a"), sym("1"))]);
        assert_eq!(chi.extend(&[sym("a")], &zero), Assignment::from_pairs([(sym("a"), zero.clone())]));
    }

    #[test]
    fn restrict_examples() {
        let chi = Assignment::from_pairs([(sym("a"), sym("0")), (sym("b"), sym("1")), (sym("x"), sym("0"))]);
        assert_eq!(
            chi.restrict(&[sym("a"), sym("b")]).unwrap(),
            Assignment::from_pairs([(sym("a"), sym("0")), (sym("b"), sym("1"))])
        );
        assert!(chi.restrict(&[]).unwrap().is_empty());
        let small = Assignment::from_pairs([(sym("a"), sym("0"))]);
        assert!(small.restrict(&[sym("a"), sym("b")]).is_err());
    }

    #[test]
    fn symbols_reject_bad_names() {
        assert!(Symbol::new("").is_err());
        assert!(Symbol::new("a-b").is_err());
        assert!(Symbol::new("x'").is_ok());
        assert!(Symbol::new("1").is_ok());
    }

    #[test]
    fn structure_enumeration_counts() {
        let sig = LanguageSignature::from_literals(&["a", "b"], &[("r", &["a", "b"])]);
        assert_eq!(enumerate_structures(&sig, 1).unwrap().count(), 2);
        assert_eq!(enumerate_structures(&sig, 2).unwrap().count(), 16);
    }

    fn names() -> impl Strategy<Value = Vec<String>> {
        prop::collection::vec("[a-e]", 0..5)
    }

    proptest! {
        #[test]
        fn extend_then_restrict_is_identity_on_disjoint(keys in names(), extra in names()) {
            let chi: Assignment = keys.iter().map(|k| (sym(&format!("k{k}")), sym("v"))).collect();
            let fresh: Vec<Symbol> = extra.iter().map(|k| sym(&format!("z{k}"))).collect();
            let ext = chi.extend(&fresh, &sym("w"));
            prop_assert_eq!(ext.restrict(&chi.domain()).unwrap(), chi);
        }

        #[test]
        fn restrict_is_idempotent(keys in names(), pick in names()) {
            let chi: Assignment = keys.iter().map(|k| (sym(k), sym(&format!("d{k}")))).collect();
            let p: BTreeSet<Symbol> = pick.iter().map(|k| sym(k)).filter(|k| chi.contains(k)).collect();
            let once = chi.restrict(&p).unwrap();
            prop_assert_eq!(once.restrict(&p).unwrap(), once.clone());
            prop_assert_eq!(once.domain(), p);
        }

        #[test]
        fn tuple_assignment_round_trip(keys in names()) {
            let chi: Assignment = keys.iter().map(|k| (sym(k), sym("0"))).collect();
            let t = TupleFunction::from(chi.clone());
            prop_assert_eq!(Assignment::from(t), chi);
        }
    }
}
