//! Skolem maps as explicit tables: counting, enumerating, validating and
//! using them to witness a quantified sentence.
//!
//! cargo run --example skolem_maps

use bindform::model::{sym, Assignment, LanguageSignature, RelationalStructure};
use bindform::semantics::holds;
use bindform::skolem::{
    enumerate_skolem_maps, skolem_map_count, skolem_satisfies, validate_skolem_map, DEFAULT_MAP_CAP,
};
use bindform::syntax::{parse_formula, BindPrefix, QuantPrefix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let prefix = QuantPrefix::from_literals(&[("forall", "x"), ("exists", "y"), ("forall", "z"), ("exists", "w")]);
    for n in 1..=3 {
        println!("maps for `{prefix}` over {n} elements: {}", skolem_map_count(&prefix, n));
    }

    let sig = LanguageSignature::from_literals(&["a", "b"], &[("r", &["a", "b"])]);
    let m = RelationalStructure::from_literals(
        &sig,
        &["0", "1"],
        &[("r", &[&[("a", "0"), ("b", "1")], &[("a", "1"), ("b", "0")]])],
    );
    let prefix = QuantPrefix::from_literals(&[("forall", "x"), ("exists", "y")]);
    let matrix = BindPrefix::from_literals(&[("a", "x"), ("b", "y")]).wrap(parse_formula("r", &sig)?);
    println!("sentence `{}` holds: {}", prefix.wrap(matrix.clone()), holds(&m, &prefix.wrap(matrix.clone()))?);

    let carrier = vec![sym("0"), sym("1")];
    for theta in enumerate_skolem_maps(&prefix, &carrier, DEFAULT_MAP_CAP)? {
        let ok = skolem_satisfies(&m, &Assignment::new(), &theta, &matrix)?;
        let table: Vec<String> = theta.table.iter().map(|(i, o)| format!("{i} -> {o}")).collect();
        println!("  {}  valid: {}  witnesses: {ok}", table.join("; "), validate_skolem_map(&theta)?.is_empty());
    }
    Ok(())
}
