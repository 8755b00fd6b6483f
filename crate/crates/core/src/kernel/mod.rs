//! The trusted core: theory configurations, proof objects, and the checker.
//!
//! A [`CheckedTheorem`] can only be obtained from [`check`] or a
//! [`Checker`], so holding one means the formula was derived in the stated
//! theory.

mod checker;
pub mod schema;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::syntax::{Formula, Var};

pub use checker::{check, CheckError, Checker};
pub use schema::{matches, matching_schemas, nearest_miss, Miss, SchemaId};

/// Which axiom groups a theory has, and how the omega-rule is checked.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TheoryConfig {
    pub has_cons: bool,
    pub has_timp: bool,
    pub has_uinf: bool,
    pub q_axioms: bool,
    pub computation_axioms: bool,
    /// Number of premises generated and checked for every omega-rule node.
    pub omega_samples: usize,
    /// Reject proofs whose omega count exceeds this bound.
    pub max_omega_count: Option<u32>,
}

pub const DEFAULT_OMEGA_SAMPLES: usize = 8;

impl TheoryConfig {
    /// Q plus computation axioms plus CONS, TIMP and UINF.
    pub const GAMMA: TheoryConfig = TheoryConfig {
        has_cons: true,
        has_timp: true,
        has_uinf: true,
        q_axioms: true,
        computation_axioms: true,
        omega_samples: DEFAULT_OMEGA_SAMPLES,
        max_omega_count: None,
    };

    /// Like [`TheoryConfig::GAMMA`] but without CONS.
    pub const SIGMA: TheoryConfig = TheoryConfig {
        has_cons: false,
        has_timp: true,
        has_uinf: true,
        q_axioms: true,
        computation_axioms: true,
        omega_samples: DEFAULT_OMEGA_SAMPLES,
        max_omega_count: None,
    };

    pub fn gamma() -> TheoryConfig {
        TheoryConfig::GAMMA
    }

    pub fn sigma() -> TheoryConfig {
        TheoryConfig::SIGMA
    }

    pub fn from_name(name: &str) -> Option<TheoryConfig> {
        match name.to_ascii_lowercase().as_str() {
            "gamma" => Some(TheoryConfig::GAMMA),
            "sigma" => Some(TheoryConfig::SIGMA),
            _ => None,
        }
    }

    pub fn with_samples(mut self, samples: usize) -> TheoryConfig {
        self.omega_samples = samples;
        self
    }

    pub fn with_max_omega(mut self, max: Option<u32>) -> TheoryConfig {
        self.max_omega_count = max;
        self
    }

    /// `gamma`, `sigma`, or `custom`, judged by the axiom groups only.
    pub fn name(&self) -> &'static str {
        let base = self.q_axioms && self.computation_axioms && self.has_timp && self.has_uinf;
        match (base, self.has_cons) {
            (true, true) => "gamma",
            (true, false) => "sigma",
            _ => "custom",
        }
    }

    pub fn is_active(&self, schema: SchemaId) -> bool {
        match schema {
            SchemaId::Cons => self.has_cons,
            SchemaId::TImp => self.has_timp,
            SchemaId::UInf => self.has_uinf,
            s if s.is_q_schema() => self.q_axioms,
            s if s.is_computation_schema() => self.computation_axioms,
            _ => true,
        }
    }
}

impl fmt::Display for TheoryConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A proof tree. Subproofs are shared through `Arc`, and the checker caches
/// results per node, so a lemma used many times is checked once.
#[derive(Debug)]
pub enum Proof {
    Axiom {
        schema: SchemaId,
        instance: Formula,
    },
    /// From `minor: A` and `major: A -> B` infer `B`.
    Mp {
        minor: Arc<Proof>,
        major: Arc<Proof>,
    },
    Gen {
        var: Var,
        premise: Arc<Proof>,
    },
    /// From a proof of the sentence `φ` infer `T⌜φ⌝`.
    TIntro {
        premise: Arc<Proof>,
    },
    /// From the premises produced by the generator infer `forall var. family`.
    Omega {
        generator: Arc<PremiseGenerator>,
        conclusion: Formula,
    },
}

impl Proof {
    pub fn rule_name(&self) -> &'static str {
        match self {
            Proof::Axiom { .. } => "axiom",
            Proof::Mp { .. } => "modus ponens",
            Proof::Gen { .. } => "generalization",
            Proof::TIntro { .. } => "T-introduction",
            Proof::Omega { .. } => "omega-rule",
        }
    }
}

/// A uniform description of the premises `family(0̄), family(1̄), ...`: a
/// proof of the first and a fixed list of step combinators that turns a
/// proof of `family(k̄)` into one of `family(k+1)`.
#[derive(Debug)]
pub struct PremiseGenerator {
    pub var: Var,
    pub family: Formula,
    pub base: Arc<Proof>,
    pub steps: Vec<StepCombinator>,
}

impl PremiseGenerator {
    pub fn instance(&self, k: u64) -> Formula {
        self.family.substitute(self.var, &crate::arithmetization::numeral_u64(k))
    }
}

#[derive(Debug, Clone)]
pub enum StepCombinator {
    /// `φ` to `T⌜φ⌝`.
    ApplyTIntro,
    /// `A1 -> ... -> Ak -> B` to `T⌜A1⌝ -> ... -> T⌜Ak⌝ -> T⌜B⌝`, via
    /// T-introduction and `k` TIMP instances.
    LiftImp(usize),
    /// Replace the closed subterm at the path by the one the next family
    /// member has there, after proving both evaluate to the same number.
    RewriteEval(Vec<usize>),
    /// With a lemma `X -> Y`, turn `Y -> Z` into `X -> Z`.
    ChainWith(Arc<Proof>),
    /// With a lemma `forall w. (A -> B)`, turn `A[w := t]` into `B[w := t]`.
    Instantiate(Arc<Proof>),
}

impl StepCombinator {
    pub fn lemma(&self) -> Option<&Arc<Proof>> {
        match self {
            StepCombinator::ChainWith(p) | StepCombinator::Instantiate(p) => Some(p),
            _ => None,
        }
    }
}

/// Wraps a generator into an omega-rule node concluding `forall var. family`.
pub fn omega_apply(generator: PremiseGenerator) -> Proof {
    let conclusion = Formula::forall(generator.var, generator.family.clone());
    Proof::Omega { generator: Arc::new(generator), conclusion }
}

/// A formula together with the evidence that it was checked.
#[derive(Debug, Clone)]
pub struct CheckedTheorem {
    formula: Formula,
    theory: TheoryConfig,
    omega_count: u32,
    samples_checked: u64,
    proof_size: u64,
    proof: Arc<Proof>,
}

impl CheckedTheorem {
    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn theory(&self) -> &TheoryConfig {
        &self.theory
    }

    /// Length of the longest chain of nested omega-rule applications.
    pub fn omega_count(&self) -> u32 {
        self.omega_count
    }

    pub fn samples_checked(&self) -> u64 {
        self.samples_checked
    }

    /// Number of nodes in the proof tree, counting shared subproofs once per use.
    pub fn proof_size(&self) -> u64 {
        self.proof_size
    }

    pub fn proof(&self) -> &Arc<Proof> {
        &self.proof
    }

    pub fn is_finitary(&self) -> bool {
        self.omega_count == 0
    }

    pub fn certificate(&self) -> Certificate {
        Certificate {
            formula: self.formula.to_string(),
            theory: self.theory.name().to_string(),
            omega_count: self.omega_count,
            samples_checked: self.samples_checked,
            proof_size: self.proof_size,
        }
    }
}

/// The serializable summary of a [`CheckedTheorem`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub formula: String,
    pub theory: String,
    pub omega_count: u32,
    pub samples_checked: u64,
    pub proof_size: u64,
}

/// One labelled line of a derivation, as reported alongside a refutation.
#[derive(Debug, Clone)]
pub struct NarrativeLine {
    pub label: String,
    pub formula: Formula,
    pub omega_count: Option<u32>,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum RefutationError {
    #[error("the negative theorem {negative} is not the negation of {positive}")]
    NotNegation { positive: String, negative: String },
    #[error("the theorems were checked in different theories ({0} and {1})")]
    TheoryMismatch(String, String),
}

/// Checked proofs of some `φ` and of `~φ` in the same theory.
#[derive(Debug, Clone)]
pub struct Refutation {
    positive: CheckedTheorem,
    negative: CheckedTheorem,
    narrative: Vec<NarrativeLine>,
}

impl Refutation {
    pub fn new(
        positive: CheckedTheorem,
        negative: CheckedTheorem,
        narrative: Vec<NarrativeLine>,
    ) -> Result<Refutation, RefutationError> {
        if *negative.formula() != Formula::not(positive.formula().clone()) {
            return Err(RefutationError::NotNegation {
                positive: positive.formula().to_string(),
                negative: negative.formula().to_string(),
            });
        }
        if positive.theory().name() != negative.theory().name() {
            return Err(RefutationError::TheoryMismatch(
                positive.theory().name().into(),
                negative.theory().name().into(),
            ));
        }
        Ok(Refutation { positive, negative, narrative })
    }

    pub fn positive(&self) -> &CheckedTheorem {
        &self.positive
    }

    pub fn negative(&self) -> &CheckedTheorem {
        &self.negative
    }

    pub fn narrative(&self) -> &[NarrativeLine] {
        &self.narrative
    }
}
