//! Cross-checks between the decision procedure, the model finder, the
//! normalizer and the evaluator on seeded random inputs.

use bindform::model::{enumerate_structures, sym, LanguageSignature, Symbol};
use bindform::random::{random_ob_sentence, random_sentence, random_signature};
use bindform::semantics::{holds, holds_nf};
use bindform::skolem::{entanglement_set, CouplingMap, Schema, SkolemMap};
use bindform::solver::{decide_sat, decide_sat_with, find_model_bounded, SolveOptions, Verdict, DEFAULT_GROUND_CAP};
use bindform::syntax::{
    classify_fragment, parse_formula, print_formula, to_binding_normal_form, BindPrefix, FragmentClass, QuantPrefix,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn normal_form_preserves_truth_on_many_seeds() {
    for seed in 100..110 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sig = random_signature(&mut rng, 3, 2);
        let structures: Vec<_> = (1..=2).flat_map(|n| enumerate_structures(&sig, n).unwrap()).collect();
        for _ in 0..30 {
            let phi = random_sentence(&mut rng, &sig, 5);
            let nf = to_binding_normal_form(&phi, &sig).unwrap();
            let again = to_binding_normal_form(&nf.to_formula(), &sig).unwrap();
            assert_eq!(again, nf, "normal form is not a fixed point for {phi}");
            for m in &structures {
                assert_eq!(holds(m, &phi), holds_nf(m, &nf), "{phi} on {m:?}");
            }
        }
    }
}

#[test]
fn printed_formulas_parse_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let sig = random_signature(&mut rng, 3, 3);
        let phi = random_sentence(&mut rng, &sig, 6);
        assert_eq!(parse_formula(&print_formula(&phi), &sig).unwrap(), phi);
    }
}

#[test]
fn decision_agrees_with_small_model_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..150 {
        let sig = random_signature(&mut rng, 3, 2);
        let phi = random_ob_sentence(&mut rng, &sig, 3, 3);
        let nf = to_binding_normal_form(&phi, &sig).unwrap();
        assert_eq!(classify_fragment(&nf), FragmentClass::OB);
        let verdict = decide_sat(&nf, &sig).unwrap();
        let model = find_model_bounded(&phi, &sig, 3, DEFAULT_GROUND_CAP).unwrap();
        if let Some(m) = &model {
            assert_eq!(holds(m, &phi), Ok(true));
            assert!(verdict.is_sat(), "{phi} has a model of order {} but was refuted", m.order());
        }
        if let Verdict::Unsat { refutations } = &verdict {
            assert!(!refutations.is_empty());
            assert!(model.is_none());
        }
        let parallel = decide_sat_with(&nf, &sig, SolveOptions { jobs: 3 }).unwrap();
        assert_eq!(parallel, verdict);
    }
}

fn schema(prefix: &[(&str, &str)], binding: &[(&str, &str)]) -> Schema {
    Schema::new(QuantPrefix::from_literals(prefix), BindPrefix::from_literals(binding)).unwrap()
}

const XYZ: &[(&str, &str)] = &[("a", "x"), ("b", "y"), ("c", "z")];

#[test]
fn untangled_maps_for_the_non_overlapping_variants() {
    let carrier = vec![sym("0"), sym("1")];
    let abc = ["a", "b", "c"].iter().map(|a| sym(a)).collect();
    let flip = |d: &Symbol| if d.as_str() == "0" { sym("1") } else { sym("0") };
    let s1 = schema(&[("forall", "x"), ("exists", "y"), ("forall", "z")], XYZ);
    let s2 = schema(&[("forall", "y"), ("exists", "z"), ("forall", "x")], XYZ);

    // Third variant: y copies x, z copies y, x differs from z.
    let s3 = schema(&[("forall", "z"), ("exists", "x"), ("forall", "y")], XYZ);
    let t1 = SkolemMap::from_fn(&s1.prefix, &carrier, |chi, _| chi.get(&sym("x")).unwrap().clone());
    let t2 = SkolemMap::from_fn(&s2.prefix, &carrier, |chi, _| chi.get(&sym("y")).unwrap().clone());
    let t3 = SkolemMap::from_fn(&s3.prefix, &carrier, |chi, _| flip(chi.get(&sym("z")).unwrap()));
    let gamma =
        CouplingMap::new(carrier.clone(), [(s1.clone(), t1), (s2.clone(), t2), (s3.clone(), t3)].into_iter().collect())
            .unwrap();
    assert!(entanglement_set(&gamma, &[&s1, &s2, &s3], &abc).unwrap().is_empty());

    // Fourth variant: the two existential choices of c disagree.
    let s4 = schema(&[("exists", "z"), ("forall", "x"), ("forall", "y")], XYZ);
    let t2 = SkolemMap::from_fn(&s2.prefix, &carrier, |_, _| sym("0"));
    let t4 = SkolemMap::from_fn(&s4.prefix, &carrier, |_, _| sym("1"));
    let gamma = CouplingMap::new(carrier, [(s2.clone(), t2), (s4.clone(), t4)].into_iter().collect()).unwrap();
    assert!(entanglement_set(&gamma, &[&s2, &s4], &abc).unwrap().is_empty());
}

#[test]
fn infinity_axiom_has_no_small_model() {
    let sig = LanguageSignature::from_literals(&["a", "b"], &[("r", &["a", "b"])]);
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/infinity.fol")).unwrap();
    let phi = parse_formula(&text, &sig).unwrap();
    assert_eq!(find_model_bounded(&phi, &sig, 5, DEFAULT_GROUND_CAP).unwrap(), None);
    // Dropping irreflexivity admits a one-element loop.
    let relaxed = text.replacen("(forall x. (a,x)(b,x) ~r)\n&", "", 1);
    let phi = parse_formula(&relaxed, &sig).unwrap();
    assert_eq!(find_model_bounded(&phi, &sig, 5, DEFAULT_GROUND_CAP).unwrap().map(|m| m.order()), Some(1));
}
