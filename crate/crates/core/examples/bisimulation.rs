//! Greatest bisimulations and distinguishing sentences.
//!
//! cargo run --example bisimulation

use bindform::bisim::{find_distinguishing_sentence, greatest_bisimulation};
use bindform::format::{parse_signature, parse_structure};
use bindform::semantics::holds;
use bindform::syntax::parse_formula;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sig = parse_signature(include_str!("data/edge.sig"))?;
    let load = |text: &str| parse_structure(text, &sig);
    let (r1, r2) = (load(include_str!("data/r1.str"))?, load(include_str!("data/r2.str"))?);
    let (r3, r4) = (load(include_str!("data/r3.str"))?, load(include_str!("data/r4.str"))?);

    for (name, a, b) in [("R1/R2", &r1, &r2), ("R3/R4", &r3, &r4)] {
        let z = greatest_bisimulation(a, b)?;
        println!("{name}: {} pairs, total: {}", z.len(), z.is_total());
        if let Some(phi) = find_distinguishing_sentence(a, b, 2)? {
            println!("  separated by {phi}");
        }
    }

    let cb =
        parse_formula("exists x. exists y. exists z. exists w. ((a,x)(b,y) r & (a,z)(b,w) r & (a,x)(b,w) ~r)", &sig)?;
    println!("conjunctive sentence on R1: {}, on R2: {}", holds(&r1, &cb)?, holds(&r2, &cb)?);
    Ok(())
}
