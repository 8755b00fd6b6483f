//! Derived facts about truth iteration, and the diagonal lemma.

use num_bigint::BigUint;

use crate::arithmetization::{
    diagonal_sentence, iter_step_code, numeral, numeral_u64, omega_truth, quote, self_application, sub_value,
};
use crate::kernel::SchemaId;
use crate::syntax::{Formula, Term, Var};

use super::equality::{cong_path, eval_closed, rewrite_eq, trans};
use super::prop::{iff_refl, iff_trans, syl_pf};
use super::{mp, Pf, TacticError};

fn sentence_code(phi: &Formula) -> Result<Term, TacticError> {
    if !phi.is_sentence() {
        return Err(TacticError::NotSentence(phi.to_string()));
    }
    Ok(quote(phi))
}

/// `T^ω⌜φ⌝ -> T⌜T^ω⌜φ⌝⌝` for a sentence `φ`, by unfolding one step of
/// truth iteration under the quantifier and closing with UINF.
pub fn derive_a1(phi: &Formula) -> Result<Pf, TacticError> {
    let c = sentence_code(phi)?;
    let tw = omega_truth(&c);
    let y = Var::Y;
    let x = Var::X;
    let chi = Formula::tr(Term::iter(Term::Var(y), c.clone()));
    let sx = Term::succ(Term::Var(x));
    let at_sx = Formula::tr(Term::iter(sx.clone(), c.clone()));
    let q1 = Pf::axiom(SchemaId::Quant1, Formula::imp(tw.clone(), at_sx.clone()));

    let k0 = numeral(&iter_step_code().0);
    let z_bar = numeral_u64(u64::from(Var::Z.0));
    let y_bar = numeral_u64(u64::from(y.0));
    let inner = Term::sub(k0, z_bar, c.clone());
    let unfolded = Term::sub(inner.clone(), y_bar.clone(), Term::Var(x));
    let step =
        Pf::axiom(SchemaId::CompIterStep, Formula::eq(Term::iter(sx.clone(), c.clone()), unfolded.clone()));
    let code = crate::arithmetization::value(&c)?;
    let chi_code = sub_value(&iter_step_code().0, &BigUint::from(Var::Z.0), &code)?;
    let inner_eq = Pf::axiom(SchemaId::CompSub, Formula::eq(inner, numeral(&chi_code)));
    debug_assert_eq!(numeral(&chi_code), quote(&chi));
    let lifted = cong_path(&inner_eq, &unfolded, &[0])?;
    let iter_eq = trans(&step, &lifted)?;
    let dot = Term::sub(quote(&chi), y_bar, Term::Var(x));
    let to_dot = Pf::axiom(
        SchemaId::Eq3,
        Formula::imp(iter_eq.formula.clone(), Formula::imp(at_sx, Formula::tr(dot.clone()))),
    );
    let s7 = syl_pf(&q1, &mp(&iter_eq, &to_dot))?;
    let generalized = Pf::gen(x, &s7);
    let all_dot = Formula::forall(x, Formula::tr(dot));
    let q2 = Pf::axiom(
        SchemaId::Quant2,
        Formula::imp(generalized.formula.clone(), Formula::imp(tw.clone(), all_dot.clone())),
    );
    let to_all = mp(&generalized, &q2);
    let uinf = Pf::axiom(SchemaId::UInf, Formula::imp(all_dot, Formula::tr(quote(&tw))));
    syl_pf(&to_all, &uinf)
}

/// `T^ω⌜φ⌝ -> T⌜φ⌝` for a sentence `φ`: instantiate at zero.
pub fn derive_a2(phi: &Formula) -> Result<Pf, TacticError> {
    let c = sentence_code(phi)?;
    let tw = omega_truth(&c);
    let at0 = Term::iter(Term::Zero, c.clone());
    let q1 = Pf::axiom(SchemaId::Quant1, Formula::imp(tw, Formula::tr(at0.clone())));
    let e = Pf::axiom(SchemaId::CompIter0, Formula::eq(at0.clone(), c.clone()));
    let tr = Pf::axiom(
        SchemaId::Eq3,
        Formula::imp(e.formula.clone(), Formula::imp(Formula::tr(at0), Formula::tr(c))),
    );
    syl_pf(&q1, &mp(&e, &tr))
}

/// A diagonal sentence together with a proof of `γ <-> φ(⌜γ⌝)`.
#[derive(Debug, Clone)]
pub struct DiagonalResult {
    pub var: Var,
    pub theta: Formula,
    pub gamma: Formula,
    pub equivalence_proof: Pf,
}

/// For `φ` with at most `v` free, builds `γ` and proves `γ <-> φ(⌜γ⌝)` by
/// evaluating the diagonal term and rewriting each occurrence.
pub fn diagonal_lemma(phi: &Formula, v: Var) -> Result<DiagonalResult, TacticError> {
    let ds = diagonal_sentence(phi, v)?;
    let applied = self_application(quote(&ds.theta), v);
    let eq = eval_closed(&applied)?;
    let mut cur = ds.gamma.clone();
    let mut acc: Option<Pf> = None;
    for path in phi.free_occurrences(v) {
        let r = rewrite_eq(&eq, &cur, &path)?;
        cur = r.formula.as_iff().expect("rewrite yields a biconditional").1.clone();
        acc = Some(match acc {
            Some(a) => iff_trans(&a, &r)?,
            None => r,
        });
    }
    let expected = phi.substitute(v, &quote(&ds.gamma));
    if cur != expected {
        return Err(TacticError::Shape(format!("diagonal rewriting reached {cur}, expected {expected}")));
    }
    let equivalence_proof = acc.unwrap_or_else(|| iff_refl(&ds.gamma));
    Ok(DiagonalResult { var: v, theta: ds.theta, gamma: ds.gamma, equivalence_proof })
}
