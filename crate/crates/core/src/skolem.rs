//! Finite Skolem maps, schemas, coupling maps and entanglement.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigUint;
use rand::Rng;
use thiserror::Error;

use crate::model::{all_assignments, Assignment, RelationalStructure, Symbol, TupleFunction};
use crate::semantics::{evaluate, EvalError};
use crate::syntax::{BindPrefix, Block, DerivedRelation, Formula, QuantPrefix, Quantifier};

/// Default bound on the number of Skolem maps an enumeration may produce.
pub const DEFAULT_MAP_CAP: u64 = 1_000_000;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SkolemError {
    #[error("table not total: no entry for {0}")]
    TableNotTotal(Assignment),
    #[error("carrier mismatch: map carrier differs from the structure domain")]
    CarrierMismatch,
    #[error("domain mismatch between coupling map, formula function or schema set")]
    DomainMismatch,
    #[error("argument-set mismatch: schema {0} does not range over {{{args}}}", args = crate::model::join(.1))]
    ArgumentMismatch(Schema, Vec<Symbol>),
    #[error("schema variables differ: prefix binds {{{p}}}, binding uses {{{b}}}", p = crate::model::join(.0), b = crate::model::join(.1))]
    VariableMismatch(Vec<Symbol>, Vec<Symbol>),
    #[error("derived relation ranges over {{{r}}} but the binding over {{{b}}}", r = crate::model::join(.0), b = crate::model::join(.1))]
    RelationArguments(Vec<Symbol>, Vec<Symbol>),
    #[error("Skolem map prefix {found} does not match schema prefix {expected}")]
    PrefixMismatch { expected: QuantPrefix, found: QuantPrefix },
    #[error("{count} Skolem maps exceed the cap of {cap}")]
    TooManyMaps { count: BigUint, cap: u64 },
    #[error("empty carrier")]
    EmptyCarrier,
    #[error("block is not a single bound relation")]
    NotOneBinding,
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// A quantification prefix paired with a binding prefix over the same
/// variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Schema {
    pub prefix: QuantPrefix,
    pub binding: BindPrefix,
}

impl Schema {
    pub fn new(prefix: QuantPrefix, binding: BindPrefix) -> Result<Self, SkolemError> {
        let (p, b) = (prefix.variables(), binding.variables());
        if p != b {
            return Err(SkolemError::VariableMismatch(p.into_iter().collect(), b.into_iter().collect()));
        }
        Ok(Self { prefix, binding })
    }

    /// Schema and derived relation of a one-binding block.
    pub fn from_block(block: &Block) -> Result<(Self, DerivedRelation), SkolemError> {
        let br = block.single().ok_or(SkolemError::NotOneBinding)?;
        let schema = Self::new(block.prefix.clone(), br.binding.clone())?;
        Ok((schema, br.relation.clone()))
    }

    /// `ar(σ)`.
    pub fn arguments(&self) -> BTreeSet<Symbol> {
        self.binding.arguments()
    }

    pub fn variable_of(&self, a: &Symbol) -> Option<&Symbol> {
        self.binding.get(a)
    }

    /// Whether argument `a` is bound to an existential variable.
    pub fn is_existential(&self, a: &Symbol) -> bool {
        self.binding.get(a).and_then(|v| self.prefix.quantifier_of(v)).is_some_and(|q| q == Quantifier::Exists)
    }

    /// `∃(σ)`.
    pub fn existential_arguments(&self) -> BTreeSet<Symbol> {
        self.arguments().into_iter().filter(|a| self.is_existential(a)).collect()
    }

    /// `∀(σ)`.
    pub fn universal_arguments(&self) -> BTreeSet<Symbol> {
        self.arguments().into_iter().filter(|a| !self.is_existential(a)).collect()
    }

    /// `a1 ≈σ a2`: both arguments are bound to the same variable.
    pub fn collapses(&self, a1: &Symbol, a2: &Symbol) -> bool {
        matches!((self.binding.get(a1), self.binding.get(a2)), (Some(x), Some(y)) if x == y)
    }

    /// `a1 ⇝σ a2`: the universal variable of `a1` precedes the existential
    /// variable of `a2`.
    pub fn depends(&self, a1: &Symbol, a2: &Symbol) -> bool {
        match (self.binding.get(a1), self.binding.get(a2)) {
            (Some(x), Some(y)) => self.prefix.depends(x, y),
            _ => false,
        }
    }

    /// `℘ ♭ body` as a formula.
    pub fn apply(&self, body: Formula) -> Formula {
        self.prefix.wrap(self.binding.wrap(body))
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.prefix, self.binding)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkolemViolation {
    /// The output changes the value of a universal variable.
    Identity { input: Assignment, variable: Symbol },
    /// Two inputs agreeing on `Dep(v)` yield different values of `v`.
    Dependence { first: Assignment, second: Assignment, variable: Symbol },
}

impl fmt::Display for SkolemViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Identity { input, variable } => {
                write!(f, "output for {input} changes universal variable {variable}")
            }
            Self::Dependence { first, second, variable } => {
                write!(f, "inputs {first} and {second} agree on the dependencies of {variable} but differ on it")
            }
        }
    }
}

/// A Skolem map as an explicit table from assignments over `∀(℘)` to
/// assignments over `var(℘)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkolemMap {
    pub prefix: QuantPrefix,
    pub carrier: Vec<Symbol>,
    pub table: BTreeMap<Assignment, Assignment>,
}

impl SkolemMap {
    /// Tabulates `choose(χ, v)` for every universal input `χ` and existential
    /// `v`. The result is valid whenever `choose` reads only `Dep(v)`.
    pub fn from_fn<F>(prefix: &QuantPrefix, carrier: &[Symbol], mut choose: F) -> Self
    where
        F: FnMut(&Assignment, &Symbol) -> Symbol,
    {
        let existentials = prefix.existentials();
        let table = all_assignments(&prefix.universals(), carrier)
            .into_iter()
            .map(|chi| {
                let mut out = chi.clone();
                for v in &existentials {
                    out = out.with(v, &choose(&chi, v));
                }
                (chi, out)
            })
            .collect();
        Self { prefix: prefix.clone(), carrier: carrier.to_vec(), table }
    }

    pub fn apply(&self, chi: &Assignment) -> Option<&Assignment> {
        self.table.get(chi)
    }

    /// `rng(θ)`, deduplicated.
    pub fn range(&self) -> BTreeSet<&Assignment> {
        self.table.values().collect()
    }
}

/// Checks both Skolem-map conditions; a missing table entry is an error.
pub fn validate_skolem_map(theta: &SkolemMap) -> Result<Vec<SkolemViolation>, SkolemError> {
    let universals = theta.prefix.universals();
    let inputs = all_assignments(&universals, &theta.carrier);
    for chi in &inputs {
        if !theta.table.contains_key(chi) {
            return Err(SkolemError::TableNotTotal(chi.clone()));
        }
    }
    let mut out = Vec::new();
    for chi in &inputs {
        let image = &theta.table[chi];
        for u in &universals {
            if image.get(u) != chi.get(u) {
                out.push(SkolemViolation::Identity { input: chi.clone(), variable: u.clone() });
            }
        }
    }
    for v in theta.prefix.existentials() {
        let dep = theta.prefix.dependencies(&v);
        let mut seen: BTreeMap<Assignment, (&Assignment, Option<&Symbol>)> = BTreeMap::new();
        for chi in &inputs {
            let key = chi.restrict(&dep).expect("inputs assign every universal");
            let value = theta.table[chi].get(&v);
            match seen.get(&key) {
                Some((first, prev)) if *prev != value => out.push(SkolemViolation::Dependence {
                    first: (*first).clone(),
                    second: chi.clone(),
                    variable: v.clone(),
                }),
                Some(_) => {}
                None => {
                    seen.insert(key, (chi, value));
                }
            }
        }
    }
    Ok(out)
}

fn same_carrier(carrier: &[Symbol], str: &RelationalStructure) -> bool {
    carrier.len() == str.order() && carrier.iter().all(|d| str.domain().contains(d))
}

/// `str, χ, θ ⊨ ψ`: `ψ` holds under every extension of `χ` by an output of `θ`.
pub fn skolem_satisfies(
    str: &RelationalStructure,
    chi: &Assignment,
    theta: &SkolemMap,
    psi: &Formula,
) -> Result<bool, SkolemError> {
    if !same_carrier(&theta.carrier, str) {
        return Err(SkolemError::CarrierMismatch);
    }
    for out in theta.range() {
        let Some(ext) = chi.merge(out) else { continue };
        if !evaluate(str, &ext, psi)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `∏_{v ∈ ∃(℘)} |C|^(|C|^|Dep(v)|)`.
pub fn skolem_map_count(prefix: &QuantPrefix, carrier_size: usize) -> BigUint {
    let c = BigUint::from(carrier_size);
    prefix
        .existentials()
        .iter()
        .map(|v| {
            let inputs = c.pow(prefix.dependencies(v).len() as u32);
            let exp = u32::try_from(&inputs).unwrap_or(u32::MAX);
            c.pow(exp)
        })
        .product()
}

/// Every Skolem map for `prefix` over `carrier`, each exactly once.
pub fn enumerate_skolem_maps(
    prefix: &QuantPrefix,
    carrier: &[Symbol],
    cap: u64,
) -> Result<impl Iterator<Item = SkolemMap>, SkolemError> {
    if carrier.is_empty() {
        return Err(SkolemError::EmptyCarrier);
    }
    let count = skolem_map_count(prefix, carrier.len());
    if count > BigUint::from(cap) {
        return Err(SkolemError::TooManyMaps { count, cap });
    }
    let total = u64::try_from(&count).expect("bounded by cap");
    let prefix = prefix.clone();
    let carrier = carrier.to_vec();
    // Per existential: its dependency list and the number of inputs.
    let plan: Vec<(Symbol, Vec<Symbol>, usize)> = prefix
        .existentials()
        .into_iter()
        .map(|v| {
            let dep = prefix.dependencies(&v);
            let inputs = carrier.len().pow(dep.len() as u32);
            (v, dep, inputs)
        })
        .collect();
    Ok((0..total).map(move |mut code| {
        let n = carrier.len() as u64;
        let mut choices: Vec<Vec<usize>> = Vec::with_capacity(plan.len());
        for (_, _, inputs) in &plan {
            let mut table = Vec::with_capacity(*inputs);
            for _ in 0..*inputs {
                table.push((code % n) as usize);
                code /= n;
            }
            choices.push(table);
        }
        let position = |d: &Symbol| carrier.iter().position(|e| e == d).expect("values from carrier");
        SkolemMap::from_fn(&prefix, &carrier, |chi, v| {
            let i = plan.iter().position(|(w, _, _)| w == v).expect("existential");
            let index = plan[i]
                .1
                .iter()
                .fold(0usize, |acc, u| acc * carrier.len() + position(chi.get(u).expect("universal assigned")));
            carrier[choices[i][index]].clone()
        })
    }))
}

/// A Skolem map drawing every independent existential choice uniformly.
pub fn random_skolem_map<R: Rng>(prefix: &QuantPrefix, carrier: &[Symbol], rng: &mut R) -> SkolemMap {
    let mut memo: BTreeMap<(Symbol, Assignment), Symbol> = BTreeMap::new();
    SkolemMap::from_fn(prefix, carrier, |chi, v| {
        let key = chi.restrict(&prefix.dependencies(v)).expect("universal input");
        memo.entry((v.clone(), key)).or_insert_with(|| carrier[rng.gen_range(0..carrier.len())].clone()).clone()
    })
}

/// One Skolem map per schema, over a common carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CouplingMap {
    carrier: Vec<Symbol>,
    maps: BTreeMap<Schema, SkolemMap>,
}

impl CouplingMap {
    pub fn new(carrier: Vec<Symbol>, maps: BTreeMap<Schema, SkolemMap>) -> Result<Self, SkolemError> {
        for (schema, theta) in &maps {
            if theta.prefix != schema.prefix {
                return Err(SkolemError::PrefixMismatch {
                    expected: schema.prefix.clone(),
                    found: theta.prefix.clone(),
                });
            }
            if theta.carrier != carrier {
                return Err(SkolemError::CarrierMismatch);
            }
        }
        Ok(Self { carrier, maps })
    }

    pub fn carrier(&self) -> &[Symbol] {
        &self.carrier
    }

    pub fn get(&self, schema: &Schema) -> Option<&SkolemMap> {
        self.maps.get(schema)
    }

    pub fn schemas(&self) -> BTreeSet<&Schema> {
        self.maps.keys().collect()
    }

    pub fn random<R: Rng>(schemas: &[Schema], carrier: &[Symbol], rng: &mut R) -> Self {
        let maps = schemas.iter().map(|s| (s.clone(), random_skolem_map(&s.prefix, carrier, rng))).collect();
        Self { carrier: carrier.to_vec(), maps }
    }
}

/// A derived relation per schema, ranging over the schema's arguments.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormulaFunction {
    entries: BTreeMap<Schema, DerivedRelation>,
}

impl FormulaFunction {
    pub fn new(entries: BTreeMap<Schema, DerivedRelation>) -> Result<Self, SkolemError> {
        for (schema, rel) in &entries {
            if rel.arguments != schema.arguments() {
                return Err(SkolemError::RelationArguments(
                    rel.arguments.iter().cloned().collect(),
                    schema.arguments().into_iter().collect(),
                ));
            }
        }
        Ok(Self { entries })
    }

    pub fn get(&self, schema: &Schema) -> Option<&DerivedRelation> {
        self.entries.get(schema)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Schema, &DerivedRelation)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn schemas(&self) -> Vec<&Schema> {
        self.entries.keys().collect()
    }
}

/// `str ⊨ f` given `γ`: each schema's bound relation is Skolem-satisfied.
pub fn coupling_satisfies(
    str: &RelationalStructure,
    gamma: &CouplingMap,
    f: &FormulaFunction,
) -> Result<bool, SkolemError> {
    if gamma.maps.keys().ne(f.entries.keys()) {
        return Err(SkolemError::DomainMismatch);
    }
    for (schema, rel) in f.iter() {
        let theta = &gamma.maps[schema];
        let psi = schema.binding.wrap(rel.to_formula());
        if !skolem_satisfies(str, &Assignment::new(), theta, &psi)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn shared_arguments(schemas: &[&Schema], sub: &BTreeSet<Symbol>) -> Result<(), SkolemError> {
    let Some(first) = schemas.first() else { return Ok(()) };
    let args = first.arguments();
    for s in schemas {
        if s.arguments() != args || !sub.is_subset(&args) {
            return Err(SkolemError::ArgumentMismatch((*s).clone(), args.iter().cloned().collect()));
        }
    }
    Ok(())
}

/// Tuple functions over `args` realized simultaneously by every schema of
/// `schemas` under `gamma`.
pub fn entanglement_set(
    gamma: &CouplingMap,
    schemas: &[&Schema],
    args: &BTreeSet<Symbol>,
) -> Result<BTreeSet<TupleFunction>, SkolemError> {
    shared_arguments(schemas, args)?;
    let arg_list: Vec<Symbol> = args.iter().cloned().collect();
    let mut acc: BTreeSet<TupleFunction> =
        all_assignments(&arg_list, &gamma.carrier).into_iter().map(TupleFunction::from).collect();
    for s in schemas {
        let theta = gamma.get(s).ok_or(SkolemError::DomainMismatch)?;
        let image: BTreeSet<TupleFunction> = theta
            .range()
            .into_iter()
            .map(|chi| {
                TupleFunction::from_pairs(arg_list.iter().map(|a| {
                    let v = s.variable_of(a).expect("argument of schema");
                    (a.clone(), chi.get(v).expect("output assigns every variable").clone())
                }))
            })
            .collect();
        acc.retain(|t| image.contains(t));
        if acc.is_empty() {
            break;
        }
    }
    Ok(acc)
}

/// A schema subset with an argument subset.
pub type Restriction = (Vec<Schema>, BTreeSet<Symbol>);

/// Pairs `(S′, A′)` on which `gamma2` is entangled but `gamma1` is not.
pub fn preorder_violations(
    gamma2: &CouplingMap,
    gamma1: &CouplingMap,
    schemas: &[Schema],
) -> Result<Vec<Restriction>, SkolemError> {
    let wanted: BTreeSet<&Schema> = schemas.iter().collect();
    if gamma1.schemas() != wanted || gamma2.schemas() != wanted {
        return Err(SkolemError::DomainMismatch);
    }
    let groups = schemas.iter().into_group_map_by(|s| s.arguments());
    let mut out = Vec::new();
    for (args, group) in groups.iter().sorted_by_key(|(a, _)| (*a).clone()) {
        let arg_list: Vec<&Symbol> = args.iter().collect();
        for k in 1..=group.len() {
            for sub in group.iter().copied().combinations(k) {
                for m in 0..=arg_list.len() {
                    for sub_args in arg_list.iter().copied().combinations(m) {
                        let sub_args: BTreeSet<Symbol> = sub_args.into_iter().cloned().collect();
                        let e2 = entanglement_set(gamma2, &sub, &sub_args)?;
                        if !e2.is_empty() && entanglement_set(gamma1, &sub, &sub_args)?.is_empty() {
                            out.push((sub.iter().map(|s| (*s).clone()).collect(), sub_args));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `γ2 ⊑ γ1`: `γ1` is entangled wherever `γ2` is.
pub fn preorder_leq(gamma2: &CouplingMap, gamma1: &CouplingMap, schemas: &[Schema]) -> Result<bool, SkolemError> {
    Ok(preorder_violations(gamma2, gamma1, schemas)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{canonical_domain, sym, LanguageSignature};
    use crate::syntax::parse_formula;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn carrier() -> Vec<Symbol> {
        vec![sym("0"), sym("1")]
    }

    fn flip(d: &Symbol) -> Symbol {
        if d.as_str() == "0" {
            sym("1")
        } else {
            sym("0")
        }
    }

    fn exyz() -> QuantPrefix {
        QuantPrefix::from_literals(&[("exists", "x"), ("forall", "y"), ("exists", "z")])
    }

    #[test]
    fn validates_running_map() {
        let ok = SkolemMap::from_fn(&exyz(), &carrier(), |chi, v| {
            if v.as_str() == "x" {
                sym("0")
            } else {
                chi.get(&sym("y")).unwrap().clone()
            }
        });
        assert_eq!(validate_skolem_map(&ok), Ok(vec![]));

        let bad = SkolemMap::from_fn(&exyz(), &carrier(), |chi, _| chi.get(&sym("y")).unwrap().clone());
        let violations = validate_skolem_map(&bad).unwrap();
        assert!(violations
            .iter()
            .any(|v| matches!(v, SkolemViolation::Dependence { variable, .. } if variable.as_str() == "x")));

        let mut broken = ok.clone();
        let key = Assignment::from_pairs([(sym("y"), sym("0"))]);
        let out = broken.table[&key].with(&sym("y"), &sym("1"));
        broken.table.insert(key, out);
        assert!(matches!(validate_skolem_map(&broken).unwrap()[0], SkolemViolation::Identity { .. }));

        let mut partial = ok;
        partial.table.remove(&Assignment::from_pairs([(sym("y"), sym("1"))]));
        assert!(matches!(validate_skolem_map(&partial), Err(SkolemError::TableNotTotal(_))));
    }

    #[test]
    fn skolem_satisfaction_on_running_structure() {
        let sig =
            LanguageSignature::from_literals(&["a", "b"], &[("q", &["a", "b"]), ("r", &["a", "b"]), ("s", &["a"])]);
        let m = RelationalStructure::from_literals(
            &sig,
            &["0", "1"],
            &[
                ("q", &[&[("a", "0"), ("b", "0")], &[("a", "0"), ("b", "1")]]),
                ("r", &[&[("a", "0"), ("b", "0")], &[("a", "1"), ("b", "1")]]),
                ("s", &[&[("a", "1")]]),
            ],
        );
        let psi = parse_formula("(a,x)(b,y)(q | ~s) & (a,y)(b,z) r", &sig).unwrap();
        let good = SkolemMap::from_fn(&exyz(), &carrier(), |chi, v| {
            if v.as_str() == "x" {
                sym("0")
            } else {
                chi.get(&sym("y")).unwrap().clone()
            }
        });
        assert_eq!(skolem_satisfies(&m, &Assignment::new(), &good, &psi), Ok(true));
        let bad = SkolemMap::from_fn(&exyz(), &carrier(), |chi, v| {
            if v.as_str() == "x" {
                sym("0")
            } else {
                flip(chi.get(&sym("y")).unwrap())
            }
        });
        assert_eq!(skolem_satisfies(&m, &Assignment::new(), &bad, &psi), Ok(false));
        let taut = parse_formula("(a,x)(b,y)(q | ~q)", &sig).unwrap();
        for theta in enumerate_skolem_maps(&exyz(), &carrier(), DEFAULT_MAP_CAP).unwrap() {
            assert_eq!(skolem_satisfies(&m, &Assignment::new(), &theta, &taut), Ok(true));
        }
        let other = SkolemMap::from_fn(&exyz(), &canonical_domain(2), |_, _| sym("e0"));
        assert_eq!(skolem_satisfies(&m, &Assignment::new(), &other, &psi), Err(SkolemError::CarrierMismatch));
    }

    #[test]
    fn enumeration_counts() {
        let c = carrier();
        let count = |p: QuantPrefix| enumerate_skolem_maps(&p, &c, DEFAULT_MAP_CAP).unwrap().count();
        assert_eq!(count(QuantPrefix::from_literals(&[("exists", "x")])), 2);
        assert_eq!(count(QuantPrefix::from_literals(&[("forall", "y")])), 1);
        assert_eq!(count(QuantPrefix::from_literals(&[("forall", "y"), ("exists", "z")])), 4);
        // ∃x∀y∃z over 3 elements: 3 · 3^3.
        let three = canonical_domain(3);
        let maps: Vec<SkolemMap> = enumerate_skolem_maps(&exyz(), &three, DEFAULT_MAP_CAP).unwrap().collect();
        assert_eq!(maps.len(), 81);
        for m in &maps {
            assert_eq!(validate_skolem_map(m), Ok(vec![]));
        }
        let distinct: BTreeSet<_> = maps.iter().map(|m| m.table.clone()).collect();
        assert_eq!(distinct.len(), 81);
        let deep = QuantPrefix::from_literals(&[("forall", "x"), ("forall", "y"), ("exists", "z")]);
        assert!(matches!(
            enumerate_skolem_maps(&deep, &canonical_domain(4), DEFAULT_MAP_CAP),
            Err(SkolemError::TooManyMaps { .. })
        ));
    }

    #[test]
    fn random_maps_are_valid_and_seeded() {
        let p = QuantPrefix::from_literals(&[("forall", "x"), ("exists", "y"), ("forall", "z"), ("exists", "w")]);
        let c = canonical_domain(3);
        let a = random_skolem_map(&p, &c, &mut ChaCha8Rng::seed_from_u64(7));
        let b = random_skolem_map(&p, &c, &mut ChaCha8Rng::seed_from_u64(7));
        assert_eq!(a, b);
        assert_eq!(validate_skolem_map(&a), Ok(vec![]));
    }

    #[test]
    fn schema_relations() {
        let s = Schema::new(
            QuantPrefix::from_literals(&[("forall", "x"), ("exists", "y")]),
            BindPrefix::from_literals(&[("a", "x"), ("b", "y"), ("c", "x")]),
        )
        .unwrap();
        let (a, b, c) = (sym("a"), sym("b"), sym("c"));
        assert_eq!(s.existential_arguments(), [b.clone()].into());
        assert_eq!(s.universal_arguments(), [a.clone(), c.clone()].into());
        assert!(s.depends(&a, &b) && s.depends(&c, &b) && !s.depends(&b, &a));
        assert!(s.collapses(&a, &c) && !s.collapses(&a, &b));
        assert!(Schema::new(QuantPrefix::from_literals(&[("forall", "x")]), BindPrefix::from_literals(&[("a", "y")]))
            .is_err());
    }
}
