//! Bounded finite-model search, including a sentence with only infinite
//! models.
//!
//! cargo run --example find_model

use bindform::format::{parse_signature, write_structure};
use bindform::semantics::holds;
use bindform::solver::{find_model_bounded, DEFAULT_GROUND_CAP};
use bindform::syntax::parse_formula;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let abc = parse_signature(include_str!("data/abc.sig"))?;
    for (name, text) in [("phi2", include_str!("data/phi2.fol")), ("phi3", include_str!("data/phi3.fol"))] {
        let phi = parse_formula(text, &abc)?;
        match find_model_bounded(&phi, &abc, 2, DEFAULT_GROUND_CAP)? {
            Some(m) => {
                println!("{name}: model of order {} (holds: {})\n{}", m.order(), holds(&m, &phi)?, write_structure(&m))
            }
            None => println!("{name}: no model up to order 2"),
        }
    }

    let edge = parse_signature(include_str!("data/edge.sig"))?;
    let infinity = parse_formula(include_str!("data/infinity.fol"), &edge)?;
    let found = find_model_bounded(&infinity, &edge, 4, DEFAULT_GROUND_CAP)?;
    println!("irreflexive serial transitive r: model up to order 4? {}", found.is_some());
    Ok(())
}
