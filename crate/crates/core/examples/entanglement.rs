//! Random coupling maps and their entanglement sets.
//!
//! cargo run --example entanglement -- [seed]

use std::collections::BTreeSet;

use bindform::model::{canonical_domain, sym, Symbol};
use bindform::skolem::{entanglement_set, CouplingMap, Schema};
use bindform::syntax::{BindPrefix, QuantPrefix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn schema(prefix: &[(&str, &str)], binding: &[(&str, &str)]) -> Schema {
    Schema::new(QuantPrefix::from_literals(prefix), BindPrefix::from_literals(binding)).expect("valid schema")
}

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xyz = [("a", "x"), ("b", "y"), ("c", "z")];
    let overlapping = [
        schema(&[("forall", "x"), ("exists", "y"), ("forall", "z")], &xyz),
        schema(&[("forall", "y"), ("exists", "z"), ("forall", "x")], &xyz),
        schema(&[("forall", "x"), ("forall", "y"), ("forall", "z")], &xyz),
    ];
    let cyclic = [
        overlapping[0].clone(),
        overlapping[1].clone(),
        schema(&[("forall", "z"), ("exists", "x"), ("forall", "y")], &xyz),
    ];
    let args: BTreeSet<Symbol> = ["a", "b", "c"].iter().map(|a| sym(a)).collect();
    for (name, set) in [("overlapping", &overlapping), ("cyclic", &cyclic)] {
        let refs: Vec<&Schema> = set.iter().collect();
        let mut empty = 0;
        for _ in 0..100 {
            let gamma = CouplingMap::random(set, &canonical_domain(2), &mut rng);
            if entanglement_set(&gamma, &refs, &args).expect("shared arguments").is_empty() {
                empty += 1;
            }
        }
        println!("{name}: {empty}/100 random coupling maps untangled");
    }
}
