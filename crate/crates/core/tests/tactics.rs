use num_bigint::BigUint;
use truthkernel::arithmetization::{numeral, omega_truth_of, quote, value};
use truthkernel::kernel::{check, CheckedTheorem, TheoryConfig};
use truthkernel::parse::{parse_formula, parse_term};
use truthkernel::syntax::{Formula, Term, Var};
use truthkernel::tactics::{self, Pf};

fn checked(p: &Pf) -> CheckedTheorem {
    let thm = check(&p.proof, &TheoryConfig::GAMMA).unwrap_or_else(|e| panic!("{e}"));
    assert_eq!(*thm.formula(), p.formula);
    thm
}

#[test]
fn propositional_lemmas_check() {
    let a = parse_formula("0 = 0").unwrap();
    let b = parse_formula("T(#3)").unwrap();
    let c = parse_formula("forall x. x = x").unwrap();
    for p in [
        tactics::id(&a),
        tactics::dn_elim(&a),
        tactics::dn_intro(&a),
        tactics::efq(&a, &b),
        tactics::contra(&a, &b),
        tactics::contrapos(&a, &b),
        tactics::neg_imp(&a, &b),
        tactics::cases(&a, &b),
        tactics::and_intro(&a, &b),
        tactics::and_elim_l(&a, &b),
        tactics::and_elim_r(&a, &b),
        tactics::syl(&a, &b, &c),
    ] {
        let thm = checked(&p);
        assert_eq!(thm.omega_count(), 0);
    }
}

#[test]
fn taut_proves_and_rejects() {
    for text in [
        "(T(0) -> T(1)) -> (~T(1) -> ~T(0))",
        "T(0) | ~T(0)",
        "((T(0) -> T(1)) -> T(0)) -> T(0)",
        "(T(0) & T(1)) <-> (T(1) & T(0))",
        "~(T(0) & ~T(0))",
    ] {
        let f = parse_formula(text).unwrap();
        checked(&tactics::taut(&f).unwrap());
    }
    let err = tactics::taut(&parse_formula("T(0) -> T(1)").unwrap()).unwrap_err();
    assert!(err.to_string().contains("falsified"), "{err}");
}

#[test]
fn eval_closed_matches_value() {
    for text in [
        "S(S(0)) + #5",
        "#7 * #6",
        "#4 * 0",
        "#4 + 0",
        "iter(0, #9)",
        "iter(#3, quote(0 = 0))",
        "sub(quote(x = S(x)), #0, #12)",
    ] {
        let t = parse_term(text).unwrap();
        let p = tactics::eval_closed(&t).unwrap();
        checked(&p);
        let n = value(&t).unwrap();
        assert_eq!(p.formula, Formula::eq(t.clone(), numeral(&n)), "{text}");
    }
}

#[test]
fn a1_and_a2_check() {
    let phi = parse_formula("0 = 0").unwrap();
    let tw = omega_truth_of(&phi);
    let a1 = tactics::derive_a1(&phi).unwrap();
    assert_eq!(a1.formula, Formula::imp(tw.clone(), Formula::tr(quote(&tw))));
    checked(&a1);
    let a2 = tactics::derive_a2(&phi).unwrap();
    assert_eq!(a2.formula, Formula::imp(tw, Formula::tr(quote(&phi))));
    checked(&a2);
}

#[test]
fn diagonal_lemma_checks() {
    let phi = Formula::not(truthkernel::arithmetization::omega_truth(&Term::Var(Var::V)));
    let d = tactics::diagonal_lemma(&phi, Var::V).unwrap();
    let expected = Formula::iff(d.gamma.clone(), phi.substitute(Var::V, &quote(&d.gamma)));
    assert_eq!(d.equivalence_proof.formula, expected);
    checked(&d.equivalence_proof);
}

#[test]
fn rewrite_under_binder() {
    let phi = parse_formula("forall x. ~(x = #2 + #2)").unwrap();
    let eq = tactics::eval_closed(&parse_term("#2 + #2").unwrap()).unwrap();
    let r = tactics::rewrite_eq(&eq, &phi, &[0, 0, 1]).unwrap();
    checked(&r);
    let (_, rhs) = r.formula.as_iff().unwrap();
    assert_eq!(*rhs, parse_formula("forall x. ~(x = #4)").unwrap());
    let big = BigUint::from(4u32);
    assert_eq!(rhs.term_at(&[0, 0, 1]), Some(&numeral(&big)));
}
