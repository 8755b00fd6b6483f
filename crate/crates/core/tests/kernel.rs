use std::sync::Arc;

use truthkernel::arithmetization::{numeral_u64, omega_truth_of, quote};
use truthkernel::kernel::{
    check, CheckError, PremiseGenerator, Proof, SchemaId, StepCombinator, TheoryConfig,
};
use truthkernel::parse::parse_formula;
use truthkernel::script::Derivation;
use truthkernel::syntax::{Formula, Term, Var};
use truthkernel::theorems::m1_derivation;

fn axiom(schema: SchemaId, text: &str) -> Arc<Proof> {
    Arc::new(Proof::Axiom { schema, instance: parse_formula(text).unwrap() })
}

fn gamma() -> TheoryConfig {
    TheoryConfig::GAMMA
}

#[test]
fn modus_ponens_needs_matching_antecedent() {
    let minor = axiom(SchemaId::Eq1, "0 = 0");
    let major = axiom(SchemaId::Prop1, "#1 = #1 -> (0 = 0 -> #1 = #1)");
    let p = Arc::new(Proof::Mp { minor, major });
    let err = check(&p, &gamma()).unwrap_err();
    assert!(
        matches!(err, CheckError::Node { ref node, rule: "modus ponens", .. } if node == "root"),
        "{err}"
    );
}

#[test]
fn axiom_must_match_its_schema() {
    let p = axiom(SchemaId::Prop1, "0 = 0");
    let err = check(&p, &gamma()).unwrap_err().to_string();
    assert!(err.contains("PROP1"), "{err}");
    assert!(err.contains("EQ1"), "nearest schema hint missing: {err}");
}

#[test]
fn errors_locate_the_failing_node() {
    let good = axiom(SchemaId::Eq1, "0 = 0");
    let bad = axiom(SchemaId::Eq1, "0 = #1");
    let p = Arc::new(Proof::Gen { var: Var::X, premise: Arc::new(Proof::Mp { minor: good, major: bad }) });
    match check(&p, &gamma()).unwrap_err() {
        CheckError::Node { node, .. } => assert_eq!(node, "root/0/1"),
        e => panic!("{e}"),
    }
}

#[test]
fn sigma_has_no_cons() {
    let f = "T(quote(~0 = 0)) -> ~T(quote(0 = 0))";
    assert!(check(&axiom(SchemaId::Cons, f), &gamma()).is_ok());
    let err = check(&axiom(SchemaId::Cons, f), &TheoryConfig::SIGMA).unwrap_err();
    assert!(err.to_string().contains("CONS"), "{err}");
}

#[test]
fn tintro_requires_a_sentence() {
    let open = axiom(SchemaId::Eq1, "x = x");
    assert!(check(&open, &gamma()).is_ok());
    let p = Arc::new(Proof::TIntro { premise: open });
    assert!(check(&p, &gamma()).is_err());
    let closed = Arc::new(Proof::TIntro { premise: axiom(SchemaId::Eq1, "0 = 0") });
    let thm = check(&closed, &gamma()).unwrap();
    assert_eq!(*thm.formula(), Formula::tr(quote(&parse_formula("0 = 0").unwrap())));
}

fn m1_of_refl() -> Arc<Proof> {
    m1_derivation(&Derivation::axiom(SchemaId::Eq1, parse_formula("0 = 0").unwrap())).unwrap().proof().clone()
}

#[test]
fn omega_counts_and_samples() {
    let p = m1_of_refl();
    let thm = check(&p, &gamma()).unwrap();
    assert_eq!(thm.omega_count(), 1);
    assert_eq!(thm.samples_checked(), 8);
    let thm = check(&p, &gamma().with_samples(16)).unwrap();
    assert_eq!(thm.samples_checked(), 16);

    // M1 applied to its own conclusion nests one omega-rule inside another.
    let inner = Derivation::from_proof(&truthkernel::tactics::Pf {
        proof: p.clone(),
        formula: thm.formula().clone(),
    });
    let nested = m1_derivation(&inner).unwrap();
    let thm2 = check(nested.proof(), &gamma()).unwrap();
    assert_eq!(thm2.omega_count(), 2);
    assert_eq!(*thm2.formula(), omega_truth_of(thm.formula()));
}

#[test]
fn omega_limit_is_enforced() {
    let p = m1_of_refl();
    let err = check(&p, &gamma().with_max_omega(Some(0))).unwrap_err();
    assert_eq!(err, CheckError::OmegaLimit { found: 1, max: 0 });
    assert!(check(&p, &gamma().with_max_omega(Some(1))).is_ok());
}

#[test]
fn omega_base_must_prove_first_instance() {
    let family = parse_formula("y = y").unwrap();
    let base = axiom(SchemaId::Eq1, "#1 = #1");
    let g = PremiseGenerator { var: Var::Y, family: family.clone(), base, steps: vec![] };
    let p = Arc::new(Proof::Omega { generator: Arc::new(g), conclusion: Formula::forall(Var::Y, family) });
    match check(&p, &gamma()).unwrap_err() {
        CheckError::Sample { sample, .. } => assert_eq!(sample, 0),
        e => panic!("{e}"),
    }
}

#[test]
fn omega_steps_must_reach_each_instance() {
    // T(0) is provable from 0 = 0 only at k = 0; T-introduction does not
    // produce T(k̄) for later k.
    let family = parse_formula("y = y").unwrap();
    let base = axiom(SchemaId::Eq1, "0 = 0");
    let g = PremiseGenerator {
        var: Var::Y,
        family: family.clone(),
        base,
        steps: vec![StepCombinator::ApplyTIntro],
    };
    let p = Arc::new(Proof::Omega { generator: Arc::new(g), conclusion: Formula::forall(Var::Y, family) });
    match check(&p, &gamma()).unwrap_err() {
        CheckError::Sample { sample, .. } => assert_eq!(sample, 1),
        e => panic!("{e}"),
    }
}

#[test]
fn omega_conclusion_must_match_family() {
    let d = m1_of_refl();
    let Proof::Omega { generator, .. } = &*d else { panic!("m1 ends in the omega-rule") };
    let wrong = Formula::forall(Var::Y, Formula::eq(Term::Var(Var::Y), numeral_u64(0)));
    let p = Arc::new(Proof::Omega { generator: generator.clone(), conclusion: wrong });
    assert!(check(&p, &gamma()).is_err());
}

#[test]
fn shared_subproofs_count_with_multiplicity() {
    let a = axiom(SchemaId::Eq1, "0 = 0");
    let imp = axiom(SchemaId::Prop1, "0 = 0 -> (0 = 0 -> 0 = 0)");
    let step = Arc::new(Proof::Mp { minor: a.clone(), major: imp });
    let p = Arc::new(Proof::Mp { minor: a, major: step });
    let thm = check(&p, &gamma()).unwrap();
    assert_eq!(thm.proof_size(), 5);
    assert!(thm.is_finitary());
}
