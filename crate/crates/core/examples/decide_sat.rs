//! Decide the one-binding sentences of the corpus and print certificates.
//!
//! cargo run --example decide_sat

use bindform::format::parse_signature;
use bindform::solver::decide_sat;
use bindform::syntax::{parse_formula, to_binding_normal_form};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sig = parse_signature(include_str!("data/abc.sig"))?;
    let corpus = [
        ("phi1", include_str!("data/phi1.fol")),
        ("phi2", include_str!("data/phi2.fol")),
        ("phi3", include_str!("data/phi3.fol")),
        ("phi4", include_str!("data/phi4.fol")),
    ];
    for (name, text) in corpus {
        let nf = to_binding_normal_form(&parse_formula(text, &sig)?, &sig)?;
        let verdict = decide_sat(&nf, &sig)?;
        println!("{name}: {verdict}");
        if !verdict.is_sat() {
            println!("{}", serde_json::to_string_pretty(&verdict.certificate())?);
        }
    }
    Ok(())
}
