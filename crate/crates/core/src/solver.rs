//! Satisfiability of one-binding sentences, bounded model search, the
//! finite-model bound and propositional interpolants.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::boolean::Bool;
use crate::model::{
    all_assignments, canonical_domain, Assignment, LanguageSignature, RelationalStructure, Symbol, TupleFunction,
};
use crate::overlap::is_overlapping;
use crate::prop::{self, Cnf};
use crate::semantics::holds;
use crate::skolem::{FormulaFunction, Schema, SkolemError};
use crate::syntax::{
    classify_fragment, free_placeholders, rename_apart, Block, DerivedRelation, Formula, FragmentClass,
    NormalFormSentence, Quantifier,
};

/// Default bound on the number of ground nodes built by [`find_model_bounded`].
pub const DEFAULT_GROUND_CAP: usize = 5_000_000;

/// Default bound on `(n·k)!` accepted by [`compute_fmp_bound`].
pub const DEFAULT_EXPONENT_CAP: u64 = 1 << 24;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("fragment not OB: sentence is {0}")]
    NotOneBinding(FragmentClass),
    #[error("duplicate schema {0} in formula function")]
    DuplicateSchema(Schema),
    #[error("not a sentence: free placeholders {}", crate::model::join(.0))]
    NotASentence(Vec<Symbol>),
    #[error("grounding at order {order} exceeds {cap} nodes")]
    GroundingTooLarge { order: usize, cap: usize },
    #[error("exponent (n·k)! = {0} exceeds the cap of {1}")]
    ExponentTooLarge(String, u64),
    #[error("bound parameters must be positive")]
    NonPositive,
    #[error("not an implication: the left relation does not entail the right one")]
    NotAnImplication,
    #[error("derived relations range over different argument sets")]
    ArgumentMismatch,
    #[error(transparent)]
    Skolem(#[from] SkolemError),
}

/// The leaves of a sentence (deduplicated, first occurrence order) and its
/// tree over leaf indices.
pub fn leaf_tree(nf: &NormalFormSentence) -> (Vec<Block>, Bool<usize>) {
    let mut leaves: Vec<Block> = Vec::new();
    let tree = nf.tree.map(&mut |b: &Block| match leaves.iter().position(|l| l == b) {
        Some(i) => i,
        None => {
            leaves.push(b.clone());
            leaves.len() - 1
        }
    });
    (leaves, tree)
}

/// Leaf subsets that make the tree true when exactly their members are true,
/// in non-decreasing cardinality and lexicographic order.
pub fn witnesses(tree: &Bool<usize>, leaves: usize) -> impl Iterator<Item = BTreeSet<usize>> + '_ {
    (0..=leaves)
        .flat_map(move |k| (0..leaves).combinations(k))
        .map(|c| c.into_iter().collect::<BTreeSet<usize>>())
        .filter(move |f| tree.eval(&mut |i| f.contains(i)))
}

/// Map from each leaf's schema to its derived relation.
pub fn build_formula_function(leaves: &[&Block]) -> Result<FormulaFunction, SolverError> {
    let mut entries = BTreeMap::new();
    for b in leaves {
        let (schema, rel) = Schema::from_block(b)?;
        if entries.insert(schema.clone(), rel).is_some() {
            return Err(SolverError::DuplicateSchema(schema));
        }
    }
    Ok(FormulaFunction::new(entries)?)
}

/// Whether the conjunction of `rels` is propositionally satisfiable.
pub fn bool_sat(rels: &[&DerivedRelation]) -> bool {
    let exprs: Vec<&Bool<Symbol>> = rels.iter().map(|r| &r.expr).collect();
    prop::sat(&exprs).is_some()
}

/// An overlapping schema set whose derived relations are inconsistent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conflict {
    pub args: BTreeSet<Symbol>,
    pub schemas: Vec<Schema>,
    pub relations: Vec<DerivedRelation>,
}

impl Conflict {
    pub fn conjunction(&self) -> Bool<Symbol> {
        Bool::conjunction(self.relations.iter().map(|r| r.expr.clone())).expect("conflicts are non-empty")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Sat { witness: Vec<Block> },
    Unsat { refutations: Vec<(Vec<Block>, Conflict)> },
}

impl Verdict {
    pub fn is_sat(&self) -> bool {
        matches!(self, Verdict::Sat { .. })
    }

    pub fn certificate(&self) -> Certificate {
        let leaves = |bs: &[Block]| bs.iter().map(|b| b.to_formula().to_string()).collect();
        match self {
            Verdict::Sat { witness } => {
                Certificate { verdict: "sat", witness: Some(WitnessJson { leaves: leaves(witness) }), witnesses: None }
            }
            Verdict::Unsat { refutations } => Certificate {
                verdict: "unsat",
                witness: None,
                witnesses: Some(
                    refutations
                        .iter()
                        .map(|(bs, c)| RefutationJson {
                            leaves: leaves(bs),
                            conflict: ConflictJson {
                                args: c.args.iter().map(|a| a.to_string()).collect(),
                                schemas: c.schemas.iter().map(|s| s.to_string()).collect(),
                                conjunction: c.conjunction().to_string(),
                            },
                        })
                        .collect(),
                ),
            },
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_sat() { "SAT" } else { "UNSAT" })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<RefutationJson>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessJson {
    pub leaves: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RefutationJson {
    pub leaves: Vec<String>,
    pub conflict: ConflictJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConflictJson {
    pub args: Vec<String>,
    pub schemas: Vec<String>,
    pub conjunction: String,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SolveOptions {
    /// Worker threads for the witness loop; `0` or `1` runs sequentially.
    pub jobs: usize,
}

/// First overlapping, propositionally inconsistent schema set of `f`,
/// scanning argument sets in order and schema subsets by cardinality.
pub fn find_conflict(f: &FormulaFunction) -> Result<Option<Conflict>, SolverError> {
    let groups = f.iter().into_group_map_by(|(s, _)| s.arguments());
    for args in groups.keys().sorted() {
        let group = &groups[args];
        for k in 1..=group.len() {
            for sub in group.iter().combinations(k) {
                let schemas: Vec<&Schema> = sub.iter().map(|(s, _)| *s).collect();
                let rels: Vec<&DerivedRelation> = sub.iter().map(|(_, r)| *r).collect();
                if !bool_sat(&rels) && is_overlapping(&schemas, args)? {
                    return Ok(Some(Conflict {
                        args: args.clone(),
                        schemas: schemas.into_iter().cloned().collect(),
                        relations: rels.into_iter().cloned().collect(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Decides satisfiability of a one-binding sentence.
pub fn decide_sat(nf: &NormalFormSentence, sig: &LanguageSignature) -> Result<Verdict, SolverError> {
    decide_sat_with(nf, sig, SolveOptions::default())
}

pub fn decide_sat_with(
    nf: &NormalFormSentence,
    sig: &LanguageSignature,
    options: SolveOptions,
) -> Result<Verdict, SolverError> {
    let class = classify_fragment(nf);
    if class != FragmentClass::OB {
        return Err(SolverError::NotOneBinding(class));
    }
    let apart = rename_apart(nf, sig);
    let (leaves, tree) = leaf_tree(&apart);
    let check = |w: &BTreeSet<usize>| -> Result<(Vec<Block>, Option<Conflict>), SolverError> {
        let blocks: Vec<&Block> = w.iter().map(|i| &leaves[*i]).collect();
        let f = build_formula_function(&blocks)?;
        Ok((blocks.into_iter().cloned().collect(), find_conflict(&f)?))
    };
    let mut refutations = Vec::new();
    if options.jobs > 1 {
        let all: Vec<BTreeSet<usize>> = witnesses(&tree, leaves.len()).collect();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(options.jobs).build().expect("thread pool");
        let results: Vec<_> = pool.install(|| all.par_iter().map(check).collect());
        for r in results {
            match r? {
                (blocks, None) => return Ok(Verdict::Sat { witness: blocks }),
                (blocks, Some(c)) => refutations.push((blocks, c)),
            }
        }
    } else {
        for w in witnesses(&tree, leaves.len()) {
            match check(&w)? {
                (blocks, None) => return Ok(Verdict::Sat { witness: blocks }),
                (blocks, Some(c)) => refutations.push((blocks, c)),
            }
        }
    }
    Ok(Verdict::Unsat { refutations })
}

struct Grounder<'a> {
    sig: &'a LanguageSignature,
    domain: &'a [Symbol],
    atoms: HashMap<(Symbol, TupleFunction), usize>,
    nodes: usize,
    cap: usize,
}

impl Grounder<'_> {
    fn ground(&mut self, phi: &Formula, chi: &Assignment) -> Option<Bool<usize>> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return None;
        }
        Some(match phi {
            Formula::Rel(r) => {
                let args = self.sig.args_of(r).expect("relation of signature");
                let t = TupleFunction::from(chi.restrict(args).expect("sentence grounding"));
                Bool::atom(self.atoms[&(r.clone(), t)])
            }
            Formula::Not(x) => Bool::not(self.ground(x, chi)?),
            Formula::And(l, r) => Bool::and(self.ground(l, chi)?, self.ground(r, chi)?),
            Formula::Or(l, r) => Bool::or(self.ground(l, chi)?, self.ground(r, chi)?),
            Formula::Quant(q, v, x) => {
                let mut parts = Vec::with_capacity(self.domain.len());
                for d in self.domain {
                    parts.push(self.ground(x, &chi.with(v, d))?);
                }
                match q {
                    Quantifier::Exists => Bool::disjunction(parts),
                    Quantifier::Forall => Bool::conjunction(parts),
                }
                .expect("non-empty domain")
            }
            Formula::Bind(a, v, x) => {
                let d = chi.get(v).expect("sentence grounding").clone();
                self.ground(x, &chi.with(a, &d))?
            }
        })
    }
}

/// Searches orders `1..=max_order` for a model of `phi`, grounding the
/// sentence over the canonical domain and solving the result propositionally.
pub fn find_model_bounded(
    phi: &Formula,
    sig: &LanguageSignature,
    max_order: usize,
    ground_cap: usize,
) -> Result<Option<RelationalStructure>, SolverError> {
    let free = free_placeholders(phi, sig);
    if !free.is_empty() {
        return Err(SolverError::NotASentence(free.into_iter().collect()));
    }
    for order in 1..=max_order {
        let domain = canonical_domain(order);
        let mut slots: Vec<(Symbol, TupleFunction)> = Vec::new();
        for r in sig.relations() {
            let args: Vec<Symbol> = sig.args_of(r).into_iter().flatten().cloned().collect();
            for chi in all_assignments(&args, &domain) {
                slots.push((r.clone(), chi.into()));
            }
        }
        let atoms = slots.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let mut g = Grounder { sig, domain: &domain, atoms, nodes: 0, cap: ground_cap };
        let ground =
            g.ground(phi, &Assignment::new()).ok_or(SolverError::GroundingTooLarge { order, cap: ground_cap })?;
        let mut cnf = Cnf::new(slots.len());
        cnf.assert(&ground);
        if let Some(values) = cnf.solve() {
            let mut rels: BTreeMap<Symbol, BTreeSet<TupleFunction>> =
                sig.relations().iter().map(|r| (r.clone(), BTreeSet::new())).collect();
            for ((r, t), on) in slots.into_iter().zip(values) {
                if on {
                    rels.entry(r).or_default().insert(t);
                }
            }
            let model = RelationalStructure::from_parts(sig.clone(), domain.into_iter().collect(), rels);
            debug_assert_eq!(holds(&model, phi), Ok(true));
            return Ok(Some(model));
        }
    }
    Ok(None)
}

pub fn find_model_bounded_nf(
    nf: &NormalFormSentence,
    sig: &LanguageSignature,
    max_order: usize,
) -> Result<Option<RelationalStructure>, SolverError> {
    find_model_bounded(&nf.to_formula(), sig, max_order, DEFAULT_GROUND_CAP)
}

/// `n·h·2^((n·k)!)`.
pub fn compute_fmp_bound(n: u64, h: u64, k: u64, exponent_cap: u64) -> Result<BigUint, SolverError> {
    if n == 0 || h == 0 || k == 0 {
        return Err(SolverError::NonPositive);
    }
    let nk = BigUint::from(n) * BigUint::from(k);
    let mut fact = BigUint::from(1u32);
    let mut i = BigUint::from(2u32);
    while i <= nk {
        fact *= &i;
        if fact > BigUint::from(exponent_cap) {
            return Err(SolverError::ExponentTooLarge(format!("({nk})!"), exponent_cap));
        }
        i += 1u32;
    }
    let exp = u64::try_from(&fact).expect("bounded by cap");
    Ok(BigUint::from(n) * BigUint::from(h) * (BigUint::from(1u32) << exp))
}

/// A propositional interpolant; constant only when no symbol is shared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Interpolant {
    Relation(DerivedRelation),
    Constant(bool),
}

impl Interpolant {
    pub fn symbols(&self) -> BTreeSet<Symbol> {
        match self {
            Interpolant::Relation(r) => r.symbols(),
            Interpolant::Constant(_) => BTreeSet::new(),
        }
    }

    pub fn eval(&self, value: &mut dyn FnMut(&Symbol) -> bool) -> bool {
        match self {
            Interpolant::Relation(r) => r.expr.eval(&mut |s| value(s)),
            Interpolant::Constant(b) => *b,
        }
    }
}

impl fmt::Display for Interpolant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interpolant::Relation(r) => write!(f, "{r}"),
            Interpolant::Constant(b) => write!(f, "{b}"),
        }
    }
}

/// Projects the symbols of `left` not occurring in `right` existentially.
pub fn basic_interpolant(left: &DerivedRelation, right: &DerivedRelation) -> Result<Interpolant, SolverError> {
    if left.arguments != right.arguments {
        return Err(SolverError::ArgumentMismatch);
    }
    if prop::sat(&[&left.expr, &Bool::not(right.expr.clone())]).is_some() {
        return Err(SolverError::NotAnImplication);
    }
    let shared: Vec<Symbol> = left.symbols().intersection(&right.symbols()).cloned().collect();
    let private: Vec<Symbol> = left.symbols().into_iter().filter(|s| !shared.contains(s)).collect();
    if shared.is_empty() {
        return Ok(Interpolant::Constant(prop::sat(&[&left.expr]).is_some()));
    }
    let mut minterms = Vec::new();
    for mask in 0u64..(1u64 << shared.len()) {
        let fixed = |s: &Symbol| shared.iter().position(|t| t == s).map(|i| mask >> i & 1 == 1);
        let consistent = (0u64..(1u64 << private.len())).any(|pm| {
            left.expr.eval(&mut |s| {
                fixed(s).unwrap_or_else(|| pm >> private.iter().position(|t| t == s).expect("symbol of left") & 1 == 1)
            })
        });
        if consistent {
            let lits = shared.iter().enumerate().map(|(i, s)| {
                if mask >> i & 1 == 1 {
                    Bool::atom(s.clone())
                } else {
                    Bool::not(Bool::atom(s.clone()))
                }
            });
            minterms.push(Bool::conjunction(lits).expect("shared is non-empty"));
        }
    }
    let expr = Bool::disjunction(minterms).unwrap_or_else(|| {
        let q = Bool::atom(shared[0].clone());
        Bool::and(q.clone(), Bool::not(q))
    });
    Ok(Interpolant::Relation(DerivedRelation { expr, arguments: left.arguments.clone() }))
}
