use truthkernel::arithmetization::{omega_truth, omega_truth_of, quote};
use truthkernel::kernel::{SchemaId, TheoryConfig};
use truthkernel::parse::parse_formula;
use truthkernel::script::Derivation;
use truthkernel::syntax::{Formula, Term};
use truthkernel::theorems::{self, OmegaTruth, ProvabilityPredicate, Session, TrivialPredicate};

#[test]
fn m1_m2_m3_have_expected_shapes() {
    let mut s = Session::new(TheoryConfig::GAMMA);
    let phi = parse_formula("0 = 0").unwrap();
    let psi = parse_formula("~(0 = S(0))").unwrap();
    let thm = Derivation::axiom(SchemaId::Eq1, phi.clone());
    let p1 = theorems::m1(&mut s, &thm).unwrap();
    assert_eq!(*p1.theorem.formula(), omega_truth_of(&phi));
    assert_eq!(p1.theorem.omega_count(), 1);

    let p2 = theorems::m2(&mut s, &phi, &psi).unwrap();
    let imp = Formula::imp(phi.clone(), psi.clone());
    let want = Formula::imp(omega_truth_of(&imp), Formula::imp(omega_truth_of(&phi), omega_truth_of(&psi)));
    assert_eq!(*p2.theorem.formula(), want);
    assert_eq!(p2.theorem.omega_count(), 1);

    let p3 = theorems::m3(&mut s, &phi).unwrap();
    let tw = omega_truth_of(&phi);
    assert_eq!(*p3.theorem.formula(), Formula::imp(tw.clone(), omega_truth(&quote(&tw))));
    assert_eq!(p3.theorem.omega_count(), 1);
}

#[test]
fn loeb_for_trivial_predicate() {
    let mut s = Session::new(TheoryConfig::GAMMA);
    let phi = parse_formula("0 = 0").unwrap();
    let pp = TrivialPredicate;
    let premise = Derivation::taut_mp(
        &[&Derivation::axiom(SchemaId::Eq1, phi.clone())],
        Formula::imp(pp.of(&phi), phi.clone()),
    )
    .unwrap();
    let p = theorems::loeb(&mut s, &pp, &phi, &premise).unwrap();
    assert_eq!(*p.theorem.formula(), phi);
    let f = theorems::formalized_loeb(&mut s, &pp, &phi).unwrap();
    assert_eq!(f.theorem.omega_count(), 0);
}

#[test]
fn formalized_loeb_for_omega_truth() {
    let mut s = Session::new(TheoryConfig::GAMMA);
    let phi = parse_formula("0 = S(0)").unwrap();
    let pp = OmegaTruth;
    let f = theorems::formalized_loeb(&mut s, &pp, &phi).unwrap();
    let refl = Formula::imp(pp.of(&phi), phi.clone());
    assert_eq!(*f.theorem.formula(), Formula::imp(pp.of(&refl), pp.of(&phi)));
}

#[test]
fn mcgee_refutes_gamma() {
    let run = theorems::mcgee_original(&TheoryConfig::GAMMA).unwrap();
    let r = &run.refutation;
    assert_eq!(*r.negative().formula(), Formula::not(r.positive().formula().clone()));
    assert_eq!(r.positive().omega_count(), 1);
    assert_eq!(r.negative().omega_count(), 0);
    assert_eq!(r.narrative().len(), 8);
}

#[test]
fn mcgee_via_loeb_refutes_gamma() {
    let run = theorems::mcgee_via_loeb(&TheoryConfig::GAMMA).unwrap();
    let r = &run.refutation;
    assert_eq!(*r.positive().formula(), parse_formula("0 = S(0)").unwrap());
    assert_eq!(r.negative().omega_count(), 0);
    assert_eq!(r.positive().omega_count(), 2);
}

#[test]
fn sigma_lacks_truth_schemas() {
    let err = theorems::mcgee_original(&TheoryConfig::SIGMA).unwrap_err();
    assert_eq!(err.missing_schema(), Some(SchemaId::Cons));
    let err = theorems::mcgee_via_loeb(&TheoryConfig::SIGMA).unwrap_err();
    assert_eq!(err.missing_schema(), Some(SchemaId::Cons));
    assert!(err.to_string().contains("CONS"));
}

#[test]
fn witness_is_finitary() {
    let w = theorems::omega_witness(&TheoryConfig::GAMMA, 4).unwrap();
    assert_eq!(w.negation.theorem.omega_count(), 0);
    assert_eq!(w.instances.len(), 4);
    for p in &w.instances {
        assert!(p.theorem.is_finitary());
    }
}

#[test]
fn derivability_and_loeb_suites_check_under_sigma() {
    let mut s = Session::new(TheoryConfig::SIGMA);
    for (label, d) in theorems::derivability_suite().unwrap().iter().chain(&theorems::loeb_suite().unwrap()) {
        let thm = s.check(d).unwrap_or_else(|e| panic!("{label}: {e}"));
        assert_eq!(thm.formula(), d.formula(), "{label}");
    }
}

#[test]
fn loeb_on_a_theorem_returns_it() {
    let mut s = Session::new(TheoryConfig::SIGMA);
    let phi = parse_formula("S(0) + S(0) = #2").unwrap();
    let proof = Derivation::eval(truthkernel::parse::parse_term("S(0) + S(0)").unwrap()).unwrap();
    assert_eq!(*proof.formula(), phi);
    let premise = Derivation::taut_mp(&[&proof], Formula::imp(OmegaTruth.of(&phi), phi.clone())).unwrap();
    let p = theorems::loeb(&mut s, &OmegaTruth, &phi, &premise).unwrap();
    assert_eq!(*p.theorem.formula(), phi);
    assert_eq!(p.theorem.omega_count(), 2);
}

#[test]
fn loeb_rejects_wrong_premise() {
    let phi = parse_formula("0 = 0").unwrap();
    let premise = Derivation::axiom(SchemaId::Eq1, phi.clone());
    let err = theorems::loeb_derivation(&OmegaTruth, &phi, &premise).unwrap_err();
    assert!(matches!(err, theorems::TheoremError::WrongPremise { .. }));
}

#[test]
fn witness_with_no_instances() {
    let w = theorems::omega_witness(&TheoryConfig::GAMMA, 0).unwrap();
    assert!(w.instances.is_empty());
    assert!(w.negation.theorem.is_finitary());
    assert!(theorems::omega_witness(&TheoryConfig::SIGMA, 2).is_err());
}

#[test]
fn witness_instances_match_iterated_codes() {
    use num_bigint::BigUint;
    use truthkernel::arithmetization::{decode_formula, iter_fn, value, Code};
    let w = theorems::omega_witness(&TheoryConfig::GAMMA, 3).unwrap();
    for (n, p) in w.instances.iter().enumerate() {
        let Formula::Tr(t) = p.theorem.formula() else { panic!("instance is a T-atom") };
        let Term::App(_, args) = t else { panic!("iter term") };
        let c = Code(value(&args[1]).unwrap());
        // iter_fn(n + 1, c) codes T(iter(n̄, c̄)), which is the instance itself.
        let decoded = decode_formula(&iter_fn(&BigUint::from(n as u64 + 1), &c)).unwrap();
        assert_eq!(decoded, *p.theorem.formula());
    }
}
