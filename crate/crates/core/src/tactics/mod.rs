//! Proof construction. Nothing here is trusted: every proof built by these
//! functions is an ordinary [`Proof`] tree that the kernel re-checks.

mod equality;
mod prop;
mod steps;
mod truth;

use std::sync::Arc;

use crate::arithmetization::{quote, DecodeError, DiagonalError, EvalError};
use crate::kernel::{omega_apply, PremiseGenerator, Proof, SchemaId};
use crate::syntax::{Formula, Var};

pub use equality::{cong_path, convert_by_eval, eval_closed, refl, rewrite_eq, sym, trans};
pub use prop::{
    and_elim_l, and_elim_r, and_intro, cases, contra, contrapos, dn_elim, dn_intro, efq, id, iff_elim_l,
    iff_elim_r, iff_intro, iff_mp, iff_refl, iff_sym, iff_trans, neg_imp, syl, syl_pf, taut, taut_mp,
};
pub use steps::apply_step;
pub use truth::{derive_a1, derive_a2, diagonal_lemma, DiagonalResult};

#[derive(Debug, Clone, thiserror::Error)]
pub enum TacticError {
    #[error("modus ponens mismatch: {minor} does not match the antecedent of {major}")]
    MpMismatch { minor: String, major: String },
    #[error("not a tautology; falsified when {0}")]
    NotTautology(String),
    #[error("too many propositional atoms ({0}) for a truth-table proof")]
    TooManyAtoms(usize),
    #[error("term {0} is not closed")]
    Open(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error(transparent)]
    Diagonal(#[from] DiagonalError),
    #[error("{0} is not a sentence")]
    NotSentence(String),
    #[error("no term at position {path:?} of {formula}")]
    BadPosition { path: Vec<usize>, formula: String },
    #[error("{left} and {right} have different values")]
    ValueMismatch { left: String, right: String },
    #[error("{0}")]
    Shape(String),
}

/// A proof together with the formula it is meant to prove.
#[derive(Debug, Clone)]
pub struct Pf {
    pub proof: Arc<Proof>,
    pub formula: Formula,
}

impl Pf {
    pub(crate) fn from_parts(proof: Arc<Proof>, formula: Formula) -> Pf {
        Pf { proof, formula }
    }

    /// An axiom node. Whether the instance is valid is left to the checker.
    pub fn axiom(schema: SchemaId, instance: Formula) -> Pf {
        Pf { proof: Arc::new(Proof::Axiom { schema, instance: instance.clone() }), formula: instance }
    }

    pub fn mp(minor: &Pf, major: &Pf) -> Result<Pf, TacticError> {
        match major.formula.as_imp() {
            Some((a, b)) if *a == minor.formula => Ok(Pf {
                proof: Arc::new(Proof::Mp { minor: minor.proof.clone(), major: major.proof.clone() }),
                formula: b.clone(),
            }),
            _ => Err(TacticError::MpMismatch {
                minor: minor.formula.to_string(),
                major: major.formula.to_string(),
            }),
        }
    }

    pub fn gen(var: Var, premise: &Pf) -> Pf {
        Pf {
            proof: Arc::new(Proof::Gen { var, premise: premise.proof.clone() }),
            formula: Formula::forall(var, premise.formula.clone()),
        }
    }

    pub fn tintro(premise: &Pf) -> Result<Pf, TacticError> {
        if !premise.formula.is_sentence() {
            return Err(TacticError::NotSentence(premise.formula.to_string()));
        }
        Ok(Pf {
            proof: Arc::new(Proof::TIntro { premise: premise.proof.clone() }),
            formula: Formula::tr(quote(&premise.formula)),
        })
    }

    pub fn omega(generator: PremiseGenerator) -> Pf {
        let proof = omega_apply(generator);
        let formula = match &proof {
            Proof::Omega { conclusion, .. } => conclusion.clone(),
            _ => unreachable!(),
        };
        Pf { proof: Arc::new(proof), formula }
    }
}

/// Modus ponens on a closed lemma that is known to fit.
pub(crate) fn mp(minor: &Pf, major: &Pf) -> Pf {
    Pf::mp(minor, major).expect("lemma shapes agree")
}
