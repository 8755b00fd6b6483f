//! The step combinators of premise generators.

use crate::arithmetization::quote;
use crate::kernel::{schema::find_instance, SchemaId, StepCombinator};
use crate::syntax::{Formula, Term};

use super::equality::convert_by_eval;
use super::prop::{syl_pf, taut};
use super::{mp, Pf, TacticError};

/// Applies one combinator to a proof of the current family member. `target`
/// is the next family member; `lemma` is the checked lemma the combinator
/// carries, if any.
pub fn apply_step(
    step: &StepCombinator,
    cur: &Pf,
    target: &Formula,
    lemma: Option<&Pf>,
) -> Result<Pf, TacticError> {
    let need_lemma = || TacticError::Shape("combinator is missing its lemma".into());
    match step {
        StepCombinator::ApplyTIntro => Pf::tintro(cur),
        StepCombinator::LiftImp(k) => lift_imp(cur, *k),
        StepCombinator::RewriteEval(path) => {
            convert_by_eval(cur, &rewrite_target(cur, target, path)?, std::slice::from_ref(path))
        }
        StepCombinator::ChainWith(_) => syl_pf(lemma.ok_or_else(need_lemma)?, cur),
        StepCombinator::Instantiate(_) => instantiate(lemma.ok_or_else(need_lemma)?, cur),
    }
}

/// The current formula with the subterm at `path` taken from `target`.
fn rewrite_target(cur: &Pf, target: &Formula, path: &[usize]) -> Result<Formula, TacticError> {
    let bad = |f: &Formula| TacticError::BadPosition { path: path.to_vec(), formula: f.to_string() };
    let t = target.term_at(path).ok_or_else(|| bad(target))?;
    cur.formula.replace_term_at(path, t.clone()).ok_or_else(|| bad(&cur.formula))
}

/// From `A1 -> ... -> Ak -> B`, `T⌜A1⌝ -> ... -> T⌜Ak⌝ -> T⌜B⌝`.
fn lift_imp(cur: &Pf, k: usize) -> Result<Pf, TacticError> {
    if k == 0 {
        return Pf::tintro(cur);
    }
    let mut parts = Vec::with_capacity(k);
    let mut rest = &cur.formula;
    for _ in 0..k {
        let (a, b) = rest
            .as_imp()
            .ok_or_else(|| TacticError::Shape(format!("{} has fewer than {k} antecedents", cur.formula)))?;
        parts.push((a.clone(), b.clone()));
        rest = b;
    }
    let t = |f: &Formula| Formula::tr(quote(f));
    let timp = |a: &Formula, b: &Formula| {
        let ab = Formula::imp(a.clone(), b.clone());
        Pf::axiom(SchemaId::TImp, Formula::imp(t(&ab), Formula::imp(t(a), t(b))))
    };
    let lifted = Pf::tintro(cur)?;
    let (a1, r1) = &parts[0];
    let mut acc = mp(&lifted, &timp(a1, r1));
    for (j, (aj, rj)) in parts.iter().enumerate().skip(1) {
        let ax = timp(aj, rj);
        let mut goal = Formula::imp(t(aj), t(rj));
        for (a, _) in parts[..j].iter().rev() {
            goal = Formula::imp(t(a), goal);
        }
        let glue = taut(&Formula::imp(acc.formula.clone(), Formula::imp(ax.formula.clone(), goal)))?;
        acc = mp(&ax, &mp(&acc, &glue));
    }
    Ok(acc)
}

/// From `forall w. (A -> B)` and `A[w := t]`, `B[w := t]`.
fn instantiate(lemma: &Pf, cur: &Pf) -> Result<Pf, TacticError> {
    let Formula::Forall(w, body) = &lemma.formula else {
        return Err(TacticError::Shape(format!("{} is not universal", lemma.formula)));
    };
    let (a, _) = body
        .as_imp()
        .ok_or_else(|| TacticError::Shape(format!("{} is not a universal implication", lemma.formula)))?;
    let t = if a.has_free(*w) {
        find_instance(a, *w, &cur.formula)
            .ok_or_else(|| TacticError::Shape(format!("{} is not an instance of {a}", cur.formula)))?
    } else {
        Term::Var(*w)
    };
    let inst = Pf::axiom(SchemaId::Quant1, Formula::imp(lemma.formula.clone(), body.substitute(*w, &t)));
    Pf::mp(cur, &mp(lemma, &inst))
}
