//! Seeded samplers for signatures, sentences and derived relations.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::boolean::Bool;
use crate::model::{sym, LanguageSignature, Symbol};
use crate::syntax::{free_placeholders, DerivedRelation, Formula, Quantifier};

/// A signature with arguments drawn from `a, b, c, …` and relations from
/// `q, r, s, …`; every relation gets a random non-empty argument set.
pub fn random_signature<R: Rng>(rng: &mut R, max_arguments: usize, max_relations: usize) -> LanguageSignature {
    const ARGS: &[&str] = &["a", "b", "c", "d", "e", "f"];
    const RELS: &[&str] = &["q", "r", "s", "t", "p", "o"];
    let n_args = rng.gen_range(1..=max_arguments.clamp(1, ARGS.len()));
    let n_rels = rng.gen_range(1..=max_relations.clamp(1, RELS.len()));
    let args: Vec<Symbol> = ARGS[..n_args].iter().map(|a| sym(a)).collect();
    let rels = RELS[..n_rels].iter().map(|r| {
        let mut set = BTreeSet::new();
        while set.is_empty() {
            set = args.iter().filter(|_| rng.gen_bool(0.6)).cloned().collect();
        }
        (sym(r), set)
    });
    LanguageSignature::new(args.clone(), rels).expect("generated signature is valid")
}

fn quantifier<R: Rng>(rng: &mut R) -> Quantifier {
    if rng.gen_bool(0.5) {
        Quantifier::Exists
    } else {
        Quantifier::Forall
    }
}

/// A Boolean combination of `atoms` with at most `max_atoms` leaves.
pub fn random_bool<R: Rng, T: Clone>(rng: &mut R, atoms: &[T], max_atoms: usize) -> Bool<T> {
    let leaves = rng.gen_range(1..=max_atoms.max(1));
    random_bool_sized(rng, atoms, leaves)
}

fn random_bool_sized<R: Rng, T: Clone>(rng: &mut R, atoms: &[T], leaves: usize) -> Bool<T> {
    let node = if leaves == 1 {
        Bool::atom(atoms.choose(rng).expect("non-empty alphabet").clone())
    } else {
        let left = rng.gen_range(1..leaves);
        let l = random_bool_sized(rng, atoms, left);
        let r = random_bool_sized(rng, atoms, leaves - left);
        if rng.gen_bool(0.5) {
            Bool::and(l, r)
        } else {
            Bool::or(l, r)
        }
    };
    if rng.gen_bool(0.3) {
        Bool::not(node)
    } else {
        node
    }
}

fn bool_formula(b: &Bool<Symbol>) -> Formula {
    match b {
        Bool::Atom(r) => Formula::rel(r.clone()),
        Bool::Not(x) => Formula::not(bool_formula(x)),
        Bool::And(l, r) => Formula::and(bool_formula(l), bool_formula(r)),
        Bool::Or(l, r) => Formula::or(bool_formula(l), bool_formula(r)),
    }
}

/// A one-binding sentence: a ∧/∨ tree of `1..=max_leaves` blocks, each with
/// at most `max_vars` variables, a surjective binding and a derived relation
/// of up to three literals.
pub fn random_ob_sentence<R: Rng>(rng: &mut R, sig: &LanguageSignature, max_leaves: usize, max_vars: usize) -> Formula {
    let n = rng.gen_range(1..=max_leaves.max(1));
    let mut blocks: Vec<Formula> = (0..n).map(|_| random_block(rng, sig, max_vars)).collect();
    while blocks.len() > 1 {
        let i = rng.gen_range(0..blocks.len() - 1);
        let l = blocks.remove(i);
        let r = blocks.remove(i);
        blocks.insert(i, if rng.gen_bool(0.5) { Formula::and(l, r) } else { Formula::or(l, r) });
    }
    blocks.pop().expect("one block left")
}

fn random_block<R: Rng>(rng: &mut R, sig: &LanguageSignature, max_vars: usize) -> Formula {
    let sets: Vec<BTreeSet<Symbol>> = sig.argument_sets().into_iter().collect();
    let args: Vec<Symbol> = sets.choose(rng).expect("signature has relations").iter().cloned().collect();
    let k = rng.gen_range(1..=max_vars.clamp(1, args.len()));
    let vars: Vec<Symbol> = (0..k).map(|i| sym(&format!("v{i}"))).collect();
    // Surjective binding: a shuffled prefix covers every variable once.
    let mut targets: Vec<usize> = (0..k).collect();
    targets.extend((k..args.len()).map(|_| rng.gen_range(0..k)));
    targets.shuffle(rng);
    let rels = sig.relations_over(&args.iter().cloned().collect());
    let body = bool_formula(&random_bool(rng, &rels, 3));
    let bound =
        args.iter().zip(&targets).rev().fold(body, |acc, (a, i)| Formula::bind(a.clone(), vars[*i].clone(), acc));
    vars.iter().rev().fold(bound, |acc, v| Formula::Quant(quantifier(rng), v.clone(), Box::new(acc)))
}

/// An arbitrary sentence: a random formula over variables `x, y, z`, closed
/// by binding its free arguments and quantifying its free variables and any
/// variable a binding reads outside a quantifier's scope.
pub fn random_sentence<R: Rng>(rng: &mut R, sig: &LanguageSignature, depth: usize) -> Formula {
    let vars: Vec<Symbol> = ["x", "y", "z"].iter().map(|v| sym(v)).collect();
    let rels: Vec<Symbol> = sig.relations().iter().cloned().collect();
    let args: Vec<Symbol> = sig.arguments().iter().cloned().collect();
    let mut phi = random_formula(rng, &rels, &args, &vars, depth);
    let free = free_placeholders(&phi, sig);
    for a in free.iter().filter(|p| sig.is_argument(p)) {
        phi = Formula::bind(a.clone(), vars.choose(rng).expect("variables").clone(), phi);
    }
    let mut open = free_placeholders(&phi, sig);
    unscoped_binding_variables(&phi, &mut Vec::new(), &mut open);
    for v in open {
        phi = Formula::Quant(quantifier(rng), v, Box::new(phi));
    }
    phi
}

/// Variables read by a binding outside the scope of any quantifier on them.
/// Such a binding may be vacuous, yet evaluating it needs a value.
fn unscoped_binding_variables(phi: &Formula, scope: &mut Vec<Symbol>, out: &mut BTreeSet<Symbol>) {
    match phi {
        Formula::Rel(_) => {}
        Formula::Not(x) => unscoped_binding_variables(x, scope, out),
        Formula::And(l, r) | Formula::Or(l, r) => {
            unscoped_binding_variables(l, scope, out);
            unscoped_binding_variables(r, scope, out);
        }
        Formula::Quant(_, v, x) => {
            scope.push(v.clone());
            unscoped_binding_variables(x, scope, out);
            scope.pop();
        }
        Formula::Bind(_, v, x) => {
            if !scope.contains(v) {
                out.insert(v.clone());
            }
            unscoped_binding_variables(x, scope, out);
        }
    }
}

fn random_formula<R: Rng>(rng: &mut R, rels: &[Symbol], args: &[Symbol], vars: &[Symbol], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return Formula::rel(rels.choose(rng).expect("relations").clone());
    }
    let next = |rng: &mut R| random_formula(rng, rels, args, vars, depth - 1);
    match rng.gen_range(0..6) {
        0 => Formula::not(next(rng)),
        1 => Formula::and(next(rng), next(rng)),
        2 => Formula::or(next(rng), next(rng)),
        3 | 4 => {
            let v = vars.choose(rng).expect("variables").clone();
            Formula::Quant(quantifier(rng), v, Box::new(next(rng)))
        }
        _ => {
            let a = args.choose(rng).expect("arguments").clone();
            let v = vars.choose(rng).expect("variables").clone();
            Formula::bind(a, v, next(rng))
        }
    }
}

/// A pair `(r̂1, r̂2)` with `r̂1 ⟹ r̂2`, `r̂1` over `left` and `r̂2` over
/// `right`, found by rejection sampling. All symbols must be relations of
/// `sig` over one argument set. `None` after `attempts` misses.
pub fn random_implication<R: Rng>(
    rng: &mut R,
    sig: &LanguageSignature,
    left: &[Symbol],
    right: &[Symbol],
    max_atoms: usize,
    attempts: usize,
) -> Option<(DerivedRelation, DerivedRelation)> {
    for _ in 0..attempts {
        let l = random_bool(rng, left, max_atoms);
        let r = random_bool(rng, right, max_atoms);
        let counter = Bool::and(l.clone(), Bool::not(r.clone()));
        if crate::prop::sat(&[&counter]).is_none() {
            let l = DerivedRelation::new(l, sig).expect("relations share an argument set");
            let r = DerivedRelation::new(r, sig).expect("relations share an argument set");
            return Some((l, r));
        }
    }
    None
}
