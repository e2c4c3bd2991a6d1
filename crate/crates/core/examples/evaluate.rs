//! Evaluate formulas of the running example on a structure read from disk.
//!
//! cargo run --example evaluate

use bindform::format::{parse_assignment, parse_signature, parse_structure};
use bindform::semantics::{evaluate, holds};
use bindform::syntax::{free_placeholders, parse_formula};

const SIG: &str = include_str!("data/running.sig");
const STR: &str = include_str!("data/running.str");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sig = parse_signature(SIG)?;
    let m = parse_structure(STR, &sig)?;

    let phi1 = parse_formula(include_str!("data/running.fol"), &sig)?;
    println!("{phi1}");
    println!("  free: {:?}, holds: {}", free_placeholders(&phi1, &sig), holds(&m, &phi1)?);

    for (text, chi) in
        [("exists x. (a,x) r", "x=0, b=1"), ("(a,x) forall y. (b,y) r", "x=0"), ("(a,x) forall y. (b,y) q", "x=0")]
    {
        let phi = parse_formula(text, &sig)?;
        let chi = parse_assignment(chi)?;
        println!("{phi}");
        println!("  free: {:?}, under {chi}: {}", free_placeholders(&phi, &sig), evaluate(&m, &chi, &phi)?);
    }
    Ok(())
}
