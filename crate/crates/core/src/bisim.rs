//! One-binding bisimulation between finite structures and search for
//! distinguishing one-binding sentences.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use thiserror::Error;

use crate::model::{all_assignments, Assignment, LanguageSignature, RelationalStructure, Symbol, TupleFunction};
use crate::semantics::{holds, EvalError};
use crate::syntax::{Formula, Quantifier};

/// Default bound on the number of sentences enumerated by
/// [`find_distinguishing_sentence`].
pub const DEFAULT_SENTENCE_CAP: usize = 1_000_000;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum BisimError {
    #[error("structures are over different signatures")]
    SignatureMismatch,
    #[error("sentence enumeration exceeds {0} sentences")]
    TooManySentences(usize),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

type Pair = (Assignment, Assignment);

/// Pairs of same-domain assignments, grouped by their argument set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BisimRelation {
    pub pairs: BTreeMap<BTreeSet<Symbol>, BTreeSet<Pair>>,
    left: BTreeMap<BTreeSet<Symbol>, Vec<Assignment>>,
    right: BTreeMap<BTreeSet<Symbol>, Vec<Assignment>>,
}

impl BisimRelation {
    pub fn contains(&self, chi1: &Assignment, chi2: &Assignment) -> bool {
        self.pairs.get(&chi1.domain()).is_some_and(|set| set.contains(&(chi1.clone(), chi2.clone())))
    }

    pub fn len(&self) -> usize {
        self.pairs.values().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// First assignment of either structure without a partner, tagged with
    /// the structure it belongs to (1 or 2).
    pub fn unmatched(&self) -> Option<(u8, Assignment)> {
        for (args, all) in &self.left {
            let set = &self.pairs[args];
            if let Some(chi) = all.iter().find(|c| !set.iter().any(|(l, _)| l == *c)) {
                return Some((1, chi.clone()));
            }
        }
        for (args, all) in &self.right {
            let set = &self.pairs[args];
            if let Some(chi) = all.iter().find(|c| !set.iter().any(|(_, r)| r == *c)) {
                return Some((2, chi.clone()));
            }
        }
        None
    }

    /// Left- and right-total on every argument set.
    pub fn is_total(&self) -> bool {
        self.unmatched().is_none()
    }
}

fn subsets(items: &[Symbol]) -> Vec<BTreeSet<Symbol>> {
    (0..=items.len()).flat_map(|k| items.iter().cloned().combinations(k)).map(|c| c.into_iter().collect()).collect()
}

fn relations_agree(
    str1: &RelationalStructure,
    str2: &RelationalStructure,
    args: &BTreeSet<Symbol>,
    pair: &Pair,
) -> bool {
    str1.signature().relations_over(args).iter().all(|r| {
        let t1 = TupleFunction::from(pair.0.clone());
        let t2 = TupleFunction::from(pair.1.clone());
        str1.contains(r, &t1) == str2.contains(r, &t2)
    })
}

/// The largest relation closed under forth, back and relation agreement.
pub fn greatest_bisimulation(
    str1: &RelationalStructure,
    str2: &RelationalStructure,
) -> Result<BisimRelation, BisimError> {
    if str1.signature() != str2.signature() {
        return Err(BisimError::SignatureMismatch);
    }
    let sig = str1.signature();
    let args: Vec<Symbol> = sig.arguments().iter().cloned().collect();
    let d1: Vec<Symbol> = str1.domain().iter().cloned().collect();
    let d2: Vec<Symbol> = str2.domain().iter().cloned().collect();
    let all_sets = subsets(&args);
    let mut left = BTreeMap::new();
    let mut right = BTreeMap::new();
    let mut pairs: BTreeMap<BTreeSet<Symbol>, BTreeSet<Pair>> = BTreeMap::new();
    for a in &all_sets {
        let list: Vec<Symbol> = a.iter().cloned().collect();
        let l = all_assignments(&list, &d1);
        let r = all_assignments(&list, &d2);
        let set = l
            .iter()
            .cartesian_product(r.iter())
            .map(|(x, y)| (x.clone(), y.clone()))
            .filter(|p| relations_agree(str1, str2, a, p))
            .collect();
        pairs.insert(a.clone(), set);
        left.insert(a.clone(), l);
        right.insert(a.clone(), r);
    }
    loop {
        let mut removed = Vec::new();
        for a in &all_sets {
            let rest: Vec<Symbol> = args.iter().filter(|x| !a.contains(*x)).cloned().collect();
            let extensions: Vec<BTreeSet<Symbol>> = subsets(&rest).into_iter().filter(|s| !s.is_empty()).collect();
            for pair in &pairs[a] {
                let survives = extensions.iter().all(|ext| {
                    let target: BTreeSet<Symbol> = a.union(ext).cloned().collect();
                    let z = &pairs[&target];
                    let linked =
                        |e1: &Symbol, e2: &Symbol| z.contains(&(pair.0.extend(ext, e1), pair.1.extend(ext, e2)));
                    d1.iter().all(|e1| d2.iter().any(|e2| linked(e1, e2)))
                        && d2.iter().all(|e2| d1.iter().any(|e1| linked(e1, e2)))
                });
                if !survives {
                    removed.push((a.clone(), pair.clone()));
                }
            }
        }
        if removed.is_empty() {
            break;
        }
        for (a, p) in removed {
            pairs.get_mut(&a).expect("group exists").remove(&p);
        }
    }
    Ok(BisimRelation { pairs, left, right })
}

pub fn are_bisimilar(str1: &RelationalStructure, str2: &RelationalStructure) -> Result<bool, BisimError> {
    Ok(greatest_bisimulation(str1, str2)?.is_total())
}

fn variable_names(count: usize, sig: &LanguageSignature) -> Vec<Symbol> {
    const NICE: &[&str] = &["x", "y", "z", "w", "u", "v"];
    let taken = |s: &str| sig.arguments().iter().chain(sig.relations()).any(|t| t.as_str() == s);
    if count <= NICE.len() && NICE[..count].iter().all(|n| !taken(n)) {
        return NICE[..count].iter().map(|n| crate::model::sym(n)).collect();
    }
    (0..).map(|i| format!("x{i}")).filter(|n| !taken(n)).take(count).map(|n| crate::model::sym(&n)).collect()
}

/// Canonical one-binding sentences `℘ ♭ r̂` with `1..=depth` quantifiers
/// and derived relations of at most `max_atoms` (1 or 2) literals.
///
/// Every quantified variable is used by the binding; variables within a run
/// of equal quantifiers first appear in order, which removes alpha-variants.
pub fn enumerate_ob_sentences(
    sig: &LanguageSignature,
    depth: usize,
    max_atoms: usize,
    cap: usize,
) -> Result<Vec<Formula>, BisimError> {
    let mut out = Vec::new();
    for k in 1..=depth {
        let vars = variable_names(k, sig);
        for pattern in 0..(1usize << k) {
            // Bit set means ∃; position 0 is most significant.
            let quants: Vec<Quantifier> = (0..k)
                .map(|i| if pattern >> (k - 1 - i) & 1 == 1 { Quantifier::Exists } else { Quantifier::Forall })
                .collect();
            for args in sig.argument_sets() {
                let arg_list: Vec<Symbol> = args.iter().cloned().collect();
                if arg_list.len() < k {
                    continue;
                }
                let literals = literal_relations(sig, &args, max_atoms);
                for choice in (0..arg_list.len()).map(|_| 0..k).multi_cartesian_product() {
                    if !canonical_binding(&choice, &quants) {
                        continue;
                    }
                    let body = |rel: &Formula| {
                        let bound = arg_list
                            .iter()
                            .zip(&choice)
                            .rev()
                            .fold(rel.clone(), |acc, (a, i)| Formula::bind(a.clone(), vars[*i].clone(), acc));
                        quants
                            .iter()
                            .zip(&vars)
                            .rev()
                            .fold(bound, |acc, (q, v)| Formula::Quant(*q, v.clone(), Box::new(acc)))
                    };
                    for rel in &literals {
                        out.push(body(rel));
                        if out.len() > cap {
                            return Err(BisimError::TooManySentences(cap));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Surjective onto all variables, with first occurrences increasing inside
/// every run of equal quantifiers.
fn canonical_binding(choice: &[usize], quants: &[Quantifier]) -> bool {
    let k = quants.len();
    let mut first = vec![usize::MAX; k];
    for (pos, v) in choice.iter().enumerate() {
        if first[*v] == usize::MAX {
            first[*v] = pos;
        }
    }
    if first.contains(&usize::MAX) {
        return false;
    }
    (1..k).all(|i| quants[i] != quants[i - 1] || first[i - 1] < first[i])
}

fn literal_relations(sig: &LanguageSignature, args: &BTreeSet<Symbol>, max_atoms: usize) -> Vec<Formula> {
    let lits: Vec<Formula> = sig
        .relations_over(args)
        .into_iter()
        .flat_map(|r| [Formula::rel(r.clone()), Formula::not(Formula::rel(r))])
        .collect();
    let mut out = lits.clone();
    if max_atoms >= 2 {
        for (i, l) in lits.iter().enumerate() {
            for r in &lits[i + 1..] {
                out.push(Formula::and(l.clone(), r.clone()));
                out.push(Formula::or(l.clone(), r.clone()));
            }
        }
    }
    out
}

/// The first enumerated one-binding sentence whose truth differs on the two
/// structures.
pub fn find_distinguishing_sentence(
    str1: &RelationalStructure,
    str2: &RelationalStructure,
    depth: usize,
) -> Result<Option<Formula>, BisimError> {
    if str1.signature() != str2.signature() {
        return Err(BisimError::SignatureMismatch);
    }
    for phi in enumerate_ob_sentences(str1.signature(), depth, 2, DEFAULT_SENTENCE_CAP)? {
        if holds(str1, &phi)? != holds(str2, &phi)? {
            return Ok(Some(phi));
        }
    }
    Ok(None)
}
