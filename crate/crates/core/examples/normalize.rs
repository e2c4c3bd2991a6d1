//! Binding normal form and fragment classification.
//!
//! cargo run --example normalize

use bindform::model::LanguageSignature;
use bindform::syntax::{classify_fragment, parse_formula, to_binding_normal_form};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sig = LanguageSignature::from_literals(&["a", "b"], &[("q", &["a", "b"]), ("r", &["a", "b"]), ("s", &["a"])]);
    let inputs = [
        "forall x. (a,x)(b,x) (q & ~q)",
        "~(exists x. forall y. (a,x)(b,y) (q -> r))",
        "exists x. forall y. exists z. ((a,x)(b,y)(q | ~s) & (a,y)(b,z) r)",
        "forall x. forall y. forall z. ((a,x)(b,y) ~r | (a,y)(b,z) ~r | (a,x)(b,z) r)",
        "exists x. forall y. (a,x)(b,y)(q & ~r) & exists z. (b,z) forall w. (a,w) r",
    ];
    for text in inputs {
        let phi = parse_formula(text, &sig)?;
        let nf = to_binding_normal_form(&phi, &sig)?;
        println!("{text}");
        println!("  {}  [{}]", nf.to_formula(), classify_fragment(&nf).name());
    }
    Ok(())
}
