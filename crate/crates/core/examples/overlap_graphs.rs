//! Collapsing and dependence graphs of the corpus schemas, as DOT.
//!
//! cargo run --example overlap_graphs

use std::collections::BTreeSet;

use bindform::model::{sym, Symbol};
use bindform::overlap::{build_collapsing_graph, build_dependence_graph, overlap_failure};
use bindform::skolem::Schema;
use bindform::syntax::{BindPrefix, QuantPrefix};

fn schema(prefix: &[(&str, &str)], binding: &[(&str, &str)]) -> Schema {
    Schema::new(QuantPrefix::from_literals(prefix), BindPrefix::from_literals(binding)).expect("valid schema")
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let xyz = [("a", "x"), ("b", "y"), ("c", "z")];
    let s1 = schema(&[("forall", "x"), ("exists", "y"), ("forall", "z")], &xyz);
    let s2 = schema(&[("forall", "y"), ("exists", "z"), ("forall", "x")], &xyz);
    let thirds = [
        ("phi1", schema(&[("forall", "x"), ("forall", "y"), ("forall", "z")], &xyz)),
        ("phi2", schema(&[("forall", "x"), ("forall", "y")], &[("a", "x"), ("b", "y"), ("c", "y")])),
        ("phi3", schema(&[("forall", "z"), ("exists", "x"), ("forall", "y")], &xyz)),
        ("phi4", schema(&[("exists", "z"), ("forall", "x"), ("forall", "y")], &xyz)),
    ];
    let args: BTreeSet<Symbol> = ["a", "b", "c"].iter().map(|a| sym(a)).collect();
    for (name, s3) in &thirds {
        let set = [&s1, &s2, s3];
        println!("// {name}: {:?}", overlap_failure(&set, &args)?);
        println!("{}", build_collapsing_graph(&set, &args)?.to_dot());
        println!("{}", build_dependence_graph(&set, &args)?.to_dot());
    }
    Ok(())
}
