//! Truth of formulas in finite relational structures under an assignment.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::model::{Assignment, RelationalStructure, Symbol, TupleFunction};
use crate::syntax::{free_placeholders, Formula, NormalFormSentence};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("unbound placeholder(s): {}", crate::model::join(.0))]
    UnboundPlaceholder(Vec<Symbol>),
    #[error("variable unassigned at binding: `{0}`")]
    VariableUnassigned(Symbol),
    #[error("value `{value}` of `{placeholder}` is outside the domain")]
    ValueOutsideDomain { placeholder: Symbol, value: Symbol },
    #[error("not a sentence: free placeholders {}", crate::model::join(.0))]
    NotASentence(Vec<Symbol>),
    #[error("unknown relation `{0}`")]
    UnknownRelation(Symbol),
}

/// `str, χ ⊨ φ`.
pub fn evaluate(str: &RelationalStructure, chi: &Assignment, phi: &Formula) -> Result<bool, EvalError> {
    let sig = str.signature();
    for r in phi.relations() {
        if !sig.is_relation(&r) {
            return Err(EvalError::UnknownRelation(r));
        }
    }
    let missing: Vec<Symbol> = free_placeholders(phi, sig).into_iter().filter(|p| !chi.contains(p)).collect();
    if !missing.is_empty() {
        return Err(EvalError::UnboundPlaceholder(missing));
    }
    for (p, d) in chi.iter() {
        if !str.domain().contains(d) {
            return Err(EvalError::ValueOutsideDomain { placeholder: p.clone(), value: d.clone() });
        }
    }
    eval(str, chi, phi)
}

fn eval(str: &RelationalStructure, chi: &Assignment, phi: &Formula) -> Result<bool, EvalError> {
    Ok(match phi {
        Formula::Rel(r) => {
            let args = str.signature().args_of(r).ok_or_else(|| EvalError::UnknownRelation(r.clone()))?;
            let t = chi.restrict(args).map_err(|_| {
                EvalError::UnboundPlaceholder(args.iter().filter(|a| !chi.contains(a)).cloned().collect())
            })?;
            str.contains(r, &TupleFunction::from(t))
        }
        Formula::Not(x) => !eval(str, chi, x)?,
        Formula::And(l, r) => eval(str, chi, l)? && eval(str, chi, r)?,
        Formula::Or(l, r) => eval(str, chi, l)? || eval(str, chi, r)?,
        Formula::Quant(q, v, x) => {
            let exists = matches!(q, crate::syntax::Quantifier::Exists);
            for d in str.domain() {
                if eval(str, &chi.with(v, d), x)? == exists {
                    return Ok(exists);
                }
            }
            !exists
        }
        Formula::Bind(a, v, x) => {
            let d = chi.get(v).ok_or_else(|| EvalError::VariableUnassigned(v.clone()))?;
            eval(str, &chi.with(a, d), x)?
        }
    })
}

/// `str ⊨ φ` for a sentence.
pub fn holds(str: &RelationalStructure, phi: &Formula) -> Result<bool, EvalError> {
    let free: BTreeSet<Symbol> = free_placeholders(phi, str.signature());
    if !free.is_empty() {
        return Err(EvalError::NotASentence(free.into_iter().collect()));
    }
    evaluate(str, &Assignment::new(), phi)
}

pub fn holds_nf(str: &RelationalStructure, nf: &NormalFormSentence) -> Result<bool, EvalError> {
    holds(str, &nf.to_formula())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{enumerate_structures, sym, LanguageSignature};
    use crate::syntax::parse_formula;
    use proptest::prelude::*;

    fn sig() -> LanguageSignature {
        LanguageSignature::from_literals(&["a", "b"], &[("q", &["a", "b"]), ("r", &["a", "b"]), ("s", &["a"])])
    }

    fn running_structure() -> RelationalStructure {
        RelationalStructure::from_literals(
            &sig(),
            &["0", "1"],
            &[
                ("q", &[&[("a", "0"), ("b", "0")], &[("a", "0"), ("b", "1")]]),
                ("r", &[&[("a", "0"), ("b", "0")], &[("a", "1"), ("b", "1")]]),
                ("s", &[&[("a", "1")]]),
            ],
        )
    }

    fn f(text: &str) -> Formula {
        parse_formula(text, &sig()).unwrap()
    }

    fn asg(pairs: &[(&str, &str)]) -> Assignment {
        Assignment::from_pairs(pairs.iter().map(|(p, d)| (sym(p), sym(d))))
    }

    #[test]
    fn running_examples() {
        let m = running_structure();
        let phi1 = f("exists x. forall y. exists z. ((a,x)(b,y)(q | ~s) & (a,y)(b,z) r)");
        assert_eq!(holds(&m, &phi1), Ok(true));
        let phi2 = f("exists x. (a,x) r");
        assert_eq!(evaluate(&m, &asg(&[("x", "0"), ("b", "1")]), &phi2), Ok(true));
        let phi3_r = f("(a,x) forall y. (b,y) r");
        assert_eq!(evaluate(&m, &asg(&[("x", "0")]), &phi3_r), Ok(false));
        // The q-variant holds: both (0,0) and (0,1) are in q.
        let phi3_q = f("(a,x) forall y. (b,y) q");
        assert_eq!(evaluate(&m, &asg(&[("x", "0")]), &phi3_q), Ok(true));
    }

    #[test]
    fn single_point_structure() {
        let s = LanguageSignature::from_literals(&["a", "b"], &[("r", &["a", "b"])]);
        let r3 = RelationalStructure::from_literals(&s, &["0"], &[("r", &[&[("a", "0"), ("b", "0")]])]);
        let phi = parse_formula("forall x. forall y. (a,x)(b,y) r", &s).unwrap();
        assert_eq!(holds(&r3, &phi), Ok(true));
    }

    #[test]
    fn contradiction_never_holds() {
        let s = sig();
        let phi = f("forall x. (a,x)(b,x) (q & ~q)");
        for m in enumerate_structures(&s, 1).unwrap() {
            assert_eq!(holds(&m, &phi), Ok(false));
        }
    }

    #[test]
    fn errors() {
        let m = running_structure();
        let phi2 = f("exists x. (a,x) r");
        assert_eq!(holds(&m, &phi2), Err(EvalError::NotASentence(vec![sym("b")])));
        assert_eq!(evaluate(&m, &Assignment::new(), &phi2), Err(EvalError::UnboundPlaceholder(vec![sym("b")])));
        // A vacuous binding of an unassigned variable is reached at run time.
        let vac = f("(b,y) s");
        assert_eq!(evaluate(&m, &asg(&[("a", "0")]), &vac), Err(EvalError::VariableUnassigned(sym("y"))));
        assert!(matches!(evaluate(&m, &asg(&[("a", "7")]), &f("s")), Err(EvalError::ValueOutsideDomain { .. })));
    }

    fn small_formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![Just("q"), Just("r"), Just("s")].prop_map(|r| Formula::rel(sym(r)));
        leaf.prop_recursive(4, 24, 2, |inner| {
            let var = prop_oneof![Just("x"), Just("y")].prop_map(sym);
            let arg = prop_oneof![Just("a"), Just("b")].prop_map(sym);
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
                (var.clone(), inner.clone()).prop_map(|(v, x)| Formula::exists(v, x)),
                (var.clone(), inner.clone()).prop_map(|(v, x)| Formula::forall(v, x)),
                (arg, var, inner).prop_map(|(a, v, x)| Formula::bind(a, v, x)),
            ]
        })
    }

    fn full_assignment(x: &str, y: &str, a: &str, b: &str) -> Assignment {
        asg(&[("x", x), ("y", y), ("a", a), ("b", b)])
    }

    proptest! {
        #[test]
        fn negation_duality_and_binding_idempotence(phi in small_formula(), bits in 0u8..16) {
            let m = running_structure();
            let d = |i: u8| if bits >> i & 1 == 1 { "1" } else { "0" };
            let chi = full_assignment(d(0), d(1), d(2), d(3));
            let v = evaluate(&m, &chi, &phi).unwrap();
            prop_assert_eq!(evaluate(&m, &chi, &Formula::not(phi.clone())).unwrap(), !v);
            let x = sym("x");
            let dual = Formula::not(Formula::exists(x.clone(), Formula::not(phi.clone())));
            prop_assert_eq!(
                evaluate(&m, &chi, &Formula::forall(x.clone(), phi.clone())).unwrap(),
                evaluate(&m, &chi, &dual).unwrap()
            );
            let once = Formula::bind(sym("a"), x.clone(), phi.clone());
            let twice = Formula::bind(sym("a"), x.clone(), once.clone());
            prop_assert_eq!(evaluate(&m, &chi, &once).unwrap(), evaluate(&m, &chi, &twice).unwrap());
        }

        #[test]
        fn locality(phi in small_formula(), bits in 0u8..16, flips in 0u8..16) {
            let m = running_structure();
            let s = sig();
            let free = free_placeholders(&phi, &s);
            let d = |b: u8, i: u8| if b >> i & 1 == 1 { "1" } else { "0" };
            let chi = full_assignment(d(bits, 0), d(bits, 1), d(bits, 2), d(bits, 3));
            let names = ["x", "y", "a", "b"];
            let perturbed: Assignment = names
                .iter()
                .enumerate()
                .map(|(i, n)| {
                    let keep = free.contains(&sym(n)) || flips >> i & 1 == 0;
                    let orig = chi.get(&sym(n)).unwrap().clone();
                    let other = if orig == sym("0") { sym("1") } else { sym("0") };
                    (sym(n), if keep { orig } else { other })
                })
                .collect();
            prop_assert_eq!(evaluate(&m, &chi, &phi).unwrap(), evaluate(&m, &perturbed, &phi).unwrap());
        }
    }
}
