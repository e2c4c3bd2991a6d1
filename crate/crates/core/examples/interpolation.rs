//! Propositional interpolants between derived relations, and the finite
//! model bound.
//!
//! cargo run --example interpolation

use bindform::format::{parse_derived_relation, parse_signature};
use bindform::solver::{basic_interpolant, compute_fmp_bound, DEFAULT_EXPONENT_CAP};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sig = parse_signature(include_str!("data/props.sig"))?;
    for (left, right) in [("p & q", "q | r"), ("p & ~p", "r"), ("p & (q | r)", "q | r | ~p"), ("q & r", "q")] {
        let l = parse_derived_relation(left, &sig)?;
        let r = parse_derived_relation(right, &sig)?;
        println!("{left}  =>  {}  =>  {right}", basic_interpolant(&l, &r)?);
    }

    for (n, h, k) in [(1, 1, 1), (1, 2, 2), (2, 3, 2), (3, 1, 3)] {
        match compute_fmp_bound(n, h, k, DEFAULT_EXPONENT_CAP) {
            Ok(b) => println!("bound(n={n}, h={h}, k={k}) has {} decimal digits", b.to_string().len()),
            Err(e) => println!("bound(n={n}, h={h}, k={k}): {e}"),
        }
    }
    Ok(())
}
