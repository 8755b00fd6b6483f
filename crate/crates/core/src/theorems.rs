//! The bundled derivations: the omega-versions of the derivability
//! conditions, Löb's theorem for an abstract provability predicate, and the
//! two refutations of theories with CONS.

use crate::arithmetization::{numeral_u64, omega_truth, omega_truth_of, quote};
use crate::kernel::{
    CheckError, CheckedTheorem, Checker, NarrativeLine, Refutation, RefutationError, SchemaId, TheoryConfig,
};
use crate::script::{Derivation, Expander, ScriptError, ScriptFile, ScriptTheorem, StepSpec};
use crate::syntax::{Formula, Term, Var};

#[derive(Debug, Clone, thiserror::Error)]
pub enum TheoremError {
    #[error("theory {theory} lacks the schema {schema}, which this derivation needs")]
    MissingSchema { schema: SchemaId, theory: String },
    #[error("{0} is not a sentence")]
    NotSentence(String),
    #[error("theorem {label} proves {proved}, but claims {claimed}")]
    ClaimMismatch { label: String, claimed: String, proved: String },
    #[error("premise proves {found}, expected {expected}")]
    WrongPremise { found: String, expected: String },
    #[error(transparent)]
    Script(#[from] ScriptError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Refutation(#[from] RefutationError),
}

impl TheoremError {
    /// The missing schema, for configuration errors.
    pub fn missing_schema(&self) -> Option<SchemaId> {
        match self {
            TheoremError::MissingSchema { schema, .. } => Some(*schema),
            _ => None,
        }
    }
}

/// A checker bound to one theory, reused across the derivations of a run so
/// shared lemmas are checked once.
pub struct Session {
    checker: Checker,
}

impl Session {
    pub fn new(config: TheoryConfig) -> Session {
        Session { checker: Checker::new(config) }
    }

    pub fn config(&self) -> &TheoryConfig {
        self.checker.config()
    }

    pub fn check(&mut self, d: &Derivation) -> Result<CheckedTheorem, TheoremError> {
        Ok(self.checker.check(d.proof())?)
    }

    pub fn check_proof(
        &mut self,
        proof: &std::sync::Arc<crate::kernel::Proof>,
    ) -> Result<CheckedTheorem, TheoremError> {
        Ok(self.checker.check(proof)?)
    }

    pub fn prove(&mut self, d: Derivation) -> Result<Proved, TheoremError> {
        let theorem = self.check(&d)?;
        Ok(Proved { derivation: d, theorem })
    }

    /// Expands and checks every theorem of a parsed script file, in order.
    pub fn check_file(&mut self, file: &ScriptFile) -> Result<Vec<(String, CheckedTheorem)>, TheoremError> {
        let mut expander = Expander::new();
        let mut out = Vec::new();
        for t in &file.theorems {
            let pf = expander.expand(&t.script)?;
            let thm = self.checker.check(&pf.proof)?;
            if let Some(claim) = &t.claim {
                if claim != thm.formula() {
                    return Err(TheoremError::ClaimMismatch {
                        label: t.label.clone(),
                        claimed: claim.to_string(),
                        proved: thm.formula().to_string(),
                    });
                }
            }
            out.push((t.label.clone(), thm));
        }
        Ok(out)
    }

    fn require(&self, schemas: &[SchemaId]) -> Result<(), TheoremError> {
        for s in schemas {
            if !self.config().is_active(*s) {
                return Err(TheoremError::MissingSchema {
                    schema: *s,
                    theory: self.config().name().to_string(),
                });
            }
        }
        Ok(())
    }
}

/// A derivation and the kernel's verdict on it.
#[derive(Debug, Clone)]
pub struct Proved {
    pub derivation: Derivation,
    pub theorem: CheckedTheorem,
}

impl Proved {
    pub fn script_theorem(&self, label: &str) -> ScriptTheorem {
        ScriptTheorem {
            label: label.to_string(),
            script: self.derivation.script().clone(),
            claim: Some(self.theorem.formula().clone()),
        }
    }
}

fn sentence(phi: &Formula) -> Result<(), TheoremError> {
    if phi.is_sentence() {
        Ok(())
    } else {
        Err(TheoremError::NotSentence(phi.to_string()))
    }
}

fn imp(a: &Formula, b: &Formula) -> Formula {
    Formula::imp(a.clone(), b.clone())
}

fn not(a: &Formula) -> Formula {
    Formula::not(a.clone())
}

/// A predicate `P` with the three Löb derivability conditions, given as
/// proof constructors.
pub trait ProvabilityPredicate {
    fn name(&self) -> &str;

    /// `P(t)`.
    fn apply(&self, t: &Term) -> Formula;

    /// `P⌜φ⌝`.
    fn of(&self, phi: &Formula) -> Formula {
        self.apply(&quote(phi))
    }

    /// D1: from a derivation of `φ`, one of `P⌜φ⌝`.
    fn d1(&self, thm: &Derivation) -> Result<Derivation, TheoremError>;

    /// D2: `P⌜φ -> ψ⌝ -> (P⌜φ⌝ -> P⌜ψ⌝)`.
    fn d2(&self, phi: &Formula, psi: &Formula) -> Result<Derivation, TheoremError>;

    /// D3: `P⌜φ⌝ -> P⌜P⌜φ⌝⌝`.
    fn d3(&self, phi: &Formula) -> Result<Derivation, TheoremError>;
}

/// `T^ω` with the derivability conditions M1, M2, M3.
#[derive(Debug, Clone, Copy, Default)]
pub struct OmegaTruth;

impl ProvabilityPredicate for OmegaTruth {
    fn name(&self) -> &str {
        "T^omega"
    }

    fn apply(&self, t: &Term) -> Formula {
        omega_truth(t)
    }

    fn d1(&self, thm: &Derivation) -> Result<Derivation, TheoremError> {
        m1_derivation(thm)
    }

    fn d2(&self, phi: &Formula, psi: &Formula) -> Result<Derivation, TheoremError> {
        m2_derivation(phi, psi)
    }

    fn d3(&self, phi: &Formula) -> Result<Derivation, TheoremError> {
        m3_derivation(phi)
    }
}

/// `P(t) := 0 = 0`. Satisfies the derivability conditions trivially; useful
/// for testing the generic Löb constructions.
#[derive(Debug, Clone, Copy, Default)]
pub struct TrivialPredicate;

impl ProvabilityPredicate for TrivialPredicate {
    fn name(&self) -> &str {
        "0 = 0"
    }

    fn apply(&self, _t: &Term) -> Formula {
        Formula::eq(Term::Zero, Term::Zero)
    }

    fn d1(&self, _thm: &Derivation) -> Result<Derivation, TheoremError> {
        Ok(Derivation::axiom(SchemaId::Eq1, Formula::eq(Term::Zero, Term::Zero)))
    }

    fn d2(&self, _phi: &Formula, _psi: &Formula) -> Result<Derivation, TheoremError> {
        let t = Formula::eq(Term::Zero, Term::Zero);
        Ok(Derivation::axiom(SchemaId::Prop1, imp(&t, &imp(&t, &t))))
    }

    fn d3(&self, _phi: &Formula) -> Result<Derivation, TheoremError> {
        let t = Formula::eq(Term::Zero, Term::Zero);
        Ok(Derivation::taut(imp(&t, &t))?)
    }
}

fn iter_at(y: Term, c: &Term) -> Formula {
    Formula::tr(Term::iter(y, c.clone()))
}

/// M1: from `φ`, `T^ω⌜φ⌝`. The premises `T(iter(n̄, ⌜φ⌝))` start from
/// T-introduction and each step is one more T-introduction followed by
/// evaluation of the iteration term.
pub fn m1_derivation(thm: &Derivation) -> Result<Derivation, TheoremError> {
    let phi = thm.formula();
    sentence(phi)?;
    let c = quote(phi);
    let family = iter_at(Term::Var(Var::Y), &c);
    let first = iter_at(Term::Zero, &c);
    let base = Derivation::convert(&Derivation::tintro(thm)?, first, vec![vec![0]])?;
    Ok(Derivation::omega(Var::Y, family, &base, vec![StepSpec::TIntro, StepSpec::RewriteEval(vec![0])]))
}

/// M2: `T^ω⌜φ -> ψ⌝ -> (T^ω⌜φ⌝ -> T^ω⌜ψ⌝)`. The omega-rule is applied to the
/// lifted T-Imp instances, then the quantifiers are distributed.
pub fn m2_derivation(phi: &Formula, psi: &Formula) -> Result<Derivation, TheoremError> {
    sentence(phi)?;
    sentence(psi)?;
    let a = quote(&imp(phi, psi));
    let b = quote(phi);
    let c = quote(psi);
    let y = || Term::Var(Var::Y);
    let family = imp(&iter_at(y(), &a), &imp(&iter_at(y(), &b), &iter_at(y(), &c)));
    let timp = Derivation::axiom(
        SchemaId::TImp,
        imp(&Formula::tr(a.clone()), &imp(&Formula::tr(b.clone()), &Formula::tr(c.clone()))),
    );
    let first = family.substitute(Var::Y, &Term::Zero);
    let paths = vec![vec![0, 0], vec![1, 0, 0], vec![1, 1, 0]];
    let base = Derivation::convert(&timp, first, paths.clone())?;
    let mut steps = vec![StepSpec::LiftImp(2)];
    steps.extend(paths.into_iter().map(StepSpec::RewriteEval));
    let all = Derivation::omega(Var::Y, family.clone(), &base, steps);

    let (twa, twb, twc) = (omega_truth(&a), omega_truth(&b), omega_truth(&c));
    let inst = Derivation::mp(&all, &Derivation::axiom(SchemaId::Quant1, imp(all.formula(), &family)))?;
    let qa = Derivation::axiom(SchemaId::Quant1, imp(&twa, &iter_at(y(), &a)));
    let qb = Derivation::axiom(SchemaId::Quant1, imp(&twb, &iter_at(y(), &b)));
    let matrix = imp(&twa, &imp(&twb, &iter_at(y(), &c)));
    let open = Derivation::taut_mp(&[&inst, &qa, &qb], matrix)?;
    let closed = Derivation::gen(Var::Y, &open);
    let inner = imp(&twb, &iter_at(y(), &c));
    let all_inner = Formula::forall(Var::Y, inner.clone());
    let d1 = Derivation::mp(
        &closed,
        &Derivation::axiom(SchemaId::Quant2, imp(closed.formula(), &imp(&twa, &all_inner))),
    )?;
    let q2 = Derivation::axiom(SchemaId::Quant2, imp(&all_inner, &imp(&twb, &twc)));
    Ok(Derivation::taut_mp(&[&d1, &q2], imp(&twa, &imp(&twb, &twc)))?)
}

/// M3: `T^ω⌜φ⌝ -> T^ω⌜T^ω⌜φ⌝⌝`, by iterating A1 under the omega-rule.
pub fn m3_derivation(phi: &Formula) -> Result<Derivation, TheoremError> {
    sentence(phi)?;
    let tw = omega_truth_of(phi);
    let d = quote(&tw);
    let family = imp(&tw, &iter_at(Term::Var(Var::Y), &d));
    let a1 = Derivation::a1(phi.clone())?;
    let first = family.substitute(Var::Y, &Term::Zero);
    let base = Derivation::convert(&a1, first, vec![vec![1, 0]])?;
    let all = Derivation::omega(
        Var::Y,
        family.clone(),
        &base,
        vec![StepSpec::LiftImp(1), StepSpec::Chain(a1), StepSpec::RewriteEval(vec![1, 0])],
    );
    let goal = imp(&tw, &omega_truth(&d));
    let q2 = Derivation::axiom(SchemaId::Quant2, imp(all.formula(), &goal));
    Ok(Derivation::mp(&all, &q2)?)
}

pub fn m1(session: &mut Session, thm: &Derivation) -> Result<Proved, TheoremError> {
    session.prove(m1_derivation(thm)?)
}

pub fn m2(session: &mut Session, phi: &Formula, psi: &Formula) -> Result<Proved, TheoremError> {
    session.prove(m2_derivation(phi, psi)?)
}

pub fn m3(session: &mut Session, phi: &Formula) -> Result<Proved, TheoremError> {
    session.prove(m3_derivation(phi)?)
}

/// The common first half of both Löb derivations: the diagonal sentence `ψ`
/// with `ψ <-> (P⌜ψ⌝ -> φ)` and a proof of `P⌜ψ⌝ -> P⌜φ⌝`.
struct LoebCore {
    fixed_point: Derivation,
    p_psi_to_p_phi: Derivation,
    psi: Formula,
}

fn loeb_core(pp: &dyn ProvabilityPredicate, phi: &Formula) -> Result<LoebCore, TheoremError> {
    sentence(phi)?;
    let v = Var::V;
    let template = imp(&pp.apply(&Term::Var(v)), phi);
    let fixed_point = Derivation::diag(template, v)?;
    let (psi, rhs) = fixed_point.formula().as_iff().expect("diagonal lemma proves a biconditional");
    let (psi, rhs) = (psi.clone(), rhs.clone());
    let p_psi = pp.of(&psi);
    let p_phi = pp.of(phi);
    let unfold = Derivation::taut_mp(&[&fixed_point], imp(&psi, &rhs))?;
    let boxed = pp.d1(&unfold)?;
    let dist = pp.d2(&psi, &rhs)?;
    let step4 = Derivation::mp(&boxed, &dist)?;
    let dist2 = pp.d2(&p_psi, phi)?;
    let iter = pp.d3(&psi)?;
    let p_psi_to_p_phi = Derivation::taut_mp(&[&step4, &dist2, &iter], imp(&p_psi, &p_phi))?;
    Ok(LoebCore { fixed_point, p_psi_to_p_phi, psi })
}

/// L1 as a derivation: from `P⌜φ⌝ -> φ`, `φ`.
pub fn loeb_derivation(
    pp: &dyn ProvabilityPredicate,
    phi: &Formula,
    premise: &Derivation,
) -> Result<Derivation, TheoremError> {
    let expected = imp(&pp.of(phi), phi);
    if *premise.formula() != expected {
        return Err(TheoremError::WrongPremise {
            found: premise.formula().to_string(),
            expected: expected.to_string(),
        });
    }
    let core = loeb_core(pp, phi)?;
    let p_psi = pp.of(&core.psi);
    let p_psi_to_phi = Derivation::taut_mp(&[&core.p_psi_to_p_phi, premise], imp(&p_psi, phi))?;
    let psi = Derivation::taut_mp(&[&core.fixed_point, &p_psi_to_phi], core.psi.clone())?;
    let boxed_psi = pp.d1(&psi)?;
    Ok(Derivation::mp(&boxed_psi, &p_psi_to_phi)?)
}

/// L2 as a derivation: `P⌜P⌜φ⌝ -> φ⌝ -> P⌜φ⌝`.
pub fn formalized_loeb_derivation(
    pp: &dyn ProvabilityPredicate,
    phi: &Formula,
) -> Result<Derivation, TheoremError> {
    let core = loeb_core(pp, phi)?;
    let reflection = imp(&pp.of(phi), phi);
    let refl_to_psi =
        Derivation::taut_mp(&[&core.p_psi_to_p_phi, &core.fixed_point], imp(&reflection, &core.psi))?;
    let boxed = pp.d1(&refl_to_psi)?;
    let dist = pp.d2(&reflection, &core.psi)?;
    let lifted = Derivation::mp(&boxed, &dist)?;
    Ok(Derivation::taut_mp(&[&lifted, &core.p_psi_to_p_phi], imp(&pp.of(&reflection), &pp.of(phi)))?)
}

pub fn loeb(
    session: &mut Session,
    pp: &dyn ProvabilityPredicate,
    phi: &Formula,
    premise: &Derivation,
) -> Result<Proved, TheoremError> {
    session.prove(loeb_derivation(pp, phi, premise)?)
}

pub fn formalized_loeb(
    session: &mut Session,
    pp: &dyn ProvabilityPredicate,
    phi: &Formula,
) -> Result<Proved, TheoremError> {
    session.prove(formalized_loeb_derivation(pp, phi)?)
}

/// A refutation with the derivations of both sides.
#[derive(Debug, Clone)]
pub struct RefutationRun {
    pub refutation: Refutation,
    pub positive: Derivation,
    pub negative: Derivation,
}

impl RefutationRun {
    pub fn script_theorems(&self) -> Vec<ScriptTheorem> {
        let entry = |label: &str, d: &Derivation| ScriptTheorem {
            label: label.to_string(),
            script: d.script().clone(),
            claim: Some(d.formula().clone()),
        };
        vec![entry("positive", &self.positive), entry("negative", &self.negative)]
    }
}

const TRUTH_SCHEMAS: [SchemaId; 3] = [SchemaId::Cons, SchemaId::TImp, SchemaId::UInf];

/// The diagonal sentence `γ <-> ~T^ω⌜γ⌝` and lines 1 to 7 of the original
/// argument, ending in `~T^ω⌜γ⌝` (line 6) and `γ` (line 7).
struct McGeeLines {
    gamma: Formula,
    lines: Vec<Derivation>,
}

fn mcgee_lines() -> Result<McGeeLines, TheoremError> {
    let v = Var::V;
    let l1 = Derivation::diag(Formula::not(omega_truth(&Term::Var(v))), v)?;
    let (gamma, neg) = l1.formula().as_iff().expect("diagonal lemma proves a biconditional");
    let (gamma, neg) = (gamma.clone(), neg.clone());
    let tw = omega_truth_of(&gamma);
    let t = |f: &Formula| Formula::tr(quote(f));

    let lift = |from: &Formula, to: &Formula| -> Result<Derivation, TheoremError> {
        let inner = Derivation::taut_mp(&[&l1], imp(from, to))?;
        let boxed = Derivation::tintro(&inner)?;
        let timp = Derivation::axiom(SchemaId::TImp, imp(boxed.formula(), &imp(&t(from), &t(to))));
        Ok(Derivation::mp(&boxed, &timp)?)
    };
    let fwd = lift(&gamma, &neg)?;
    let bwd = lift(&neg, &gamma)?;
    let l2 = Derivation::taut_mp(&[&fwd, &bwd], Formula::iff(t(&gamma), t(&neg)))?;
    let cons = Derivation::axiom(SchemaId::Cons, imp(&t(&neg), &not(&t(&tw))));
    let l3 = Derivation::taut_mp(&[&l2, &cons], imp(&t(&gamma), &not(&t(&tw))))?;
    let a1 = Derivation::a1(gamma.clone())?;
    let l4 = Derivation::taut_mp(&[&l3, &a1], imp(&t(&gamma), &neg))?;
    let l5 = Derivation::a2(gamma.clone())?;
    let l6 = Derivation::taut_mp(&[&l4, &l5], neg.clone())?;
    let l7 = Derivation::taut_mp(&[&l1, &l6], gamma.clone())?;
    Ok(McGeeLines { gamma, lines: vec![l1, l2, l3, l4, l5, l6, l7] })
}

/// The original argument: lines 1 to 7 are finitary, and the omega-rule
/// applied to the T-introductions of line 7 yields `T^ω⌜γ⌝`, against line 6.
pub fn mcgee_original(config: &TheoryConfig) -> Result<RefutationRun, TheoremError> {
    let mut session = Session::new(config.clone());
    session.require(&TRUTH_SCHEMAS)?;
    let McGeeLines { lines, .. } = mcgee_lines()?;
    let mut narrative = Vec::new();
    for (i, d) in lines.iter().enumerate() {
        let thm = session.check(d)?;
        narrative.push(NarrativeLine {
            label: format!("line {}", i + 1),
            formula: thm.formula().clone(),
            omega_count: Some(thm.omega_count()),
        });
    }
    let positive = m1_derivation(&lines[6])?;
    let pos_thm = session.check(&positive)?;
    narrative.push(NarrativeLine {
        label: "omega-rule on T-Intro of line 7".into(),
        formula: pos_thm.formula().clone(),
        omega_count: Some(pos_thm.omega_count()),
    });
    let negative = lines[5].clone();
    let neg_thm = session.check(&negative)?;
    Ok(RefutationRun { refutation: Refutation::new(pos_thm, neg_thm, narrative)?, positive, negative })
}

/// The alternative argument: CONS gives `T^ω⌜0 = 1⌝ -> 0 = 1`, Löb's theorem
/// for `T^ω` turns it into `0 = 1`, and Q refutes that.
pub fn mcgee_via_loeb(config: &TheoryConfig) -> Result<RefutationRun, TheoremError> {
    let mut session = Session::new(config.clone());
    session.require(&TRUTH_SCHEMAS)?;
    let one = numeral_u64(1);
    let falsum = Formula::eq(Term::Zero, one);
    let not_falsum = Derivation::axiom(SchemaId::Q2, not(&falsum));
    let boxed = Derivation::tintro(&not_falsum)?;
    let t = |f: &Formula| Formula::tr(quote(f));
    let cons = Derivation::axiom(SchemaId::Cons, imp(boxed.formula(), &not(&t(&falsum))));
    let not_true = Derivation::mp(&boxed, &cons)?;
    let a2 = Derivation::a2(falsum.clone())?;
    let tw = omega_truth_of(&falsum);
    let consistent = Derivation::taut_mp(&[&a2, &not_true], not(&tw))?;
    let reflection = Derivation::taut_mp(&[&consistent], imp(&tw, &falsum))?;

    let mut narrative = Vec::new();
    let mut note =
        |label: &str, d: &Derivation, session: &mut Session| -> Result<CheckedTheorem, TheoremError> {
            let thm = session.check(d)?;
            narrative.push(NarrativeLine {
                label: label.into(),
                formula: thm.formula().clone(),
                omega_count: Some(thm.omega_count()),
            });
            Ok(thm)
        };
    let neg_thm = note("Q2", &not_falsum, &mut session)?;
    note("T-Intro", &boxed, &mut session)?;
    note("CONS", &not_true, &mut session)?;
    note("A2", &consistent, &mut session)?;
    note("reflection premise", &reflection, &mut session)?;
    let positive = loeb_derivation(&OmegaTruth, &falsum, &reflection)?;
    let pos_thm = note("Loeb (L1) for T^omega", &positive, &mut session)?;
    Ok(RefutationRun {
        refutation: Refutation::new(pos_thm, neg_thm, narrative)?,
        positive,
        negative: not_falsum,
    })
}

/// Finitary evidence of omega-inconsistency: `~forall x. ψ(x)` and `ψ(n̄)`
/// for `n < k`, where `ψ(x) := T(iter(x, ⌜γ⌝))`.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub var: Var,
    pub family: Formula,
    pub negation: Proved,
    pub instances: Vec<Proved>,
}

pub fn omega_witness(config: &TheoryConfig, k: u64) -> Result<WitnessReport, TheoremError> {
    let mut session = Session::new(config.clone());
    session.require(&TRUTH_SCHEMAS)?;
    let McGeeLines { gamma, lines } = mcgee_lines()?;
    let c = quote(&gamma);
    let x = Var::X;
    let family = iter_at(Term::Var(x), &c);
    let all_x = Formula::forall(x, family.clone());
    let all_y = omega_truth(&c);
    let at_y = iter_at(Term::Var(Var::Y), &c);
    let inst = Derivation::axiom(SchemaId::Quant1, imp(&all_x, &at_y));
    let gen = Derivation::gen(Var::Y, &inst);
    let q2 = Derivation::axiom(SchemaId::Quant2, imp(gen.formula(), &imp(&all_x, &all_y)));
    let rename = Derivation::mp(&gen, &q2)?;
    let negation = Derivation::taut_mp(&[&rename, &lines[5]], not(&all_x))?;
    let negation = session.prove(negation)?;

    let mut instances = Vec::new();
    let mut prev = lines[6].clone();
    for n in 0..k {
        let target = family.substitute(x, &numeral_u64(n));
        let d = Derivation::convert(&Derivation::tintro(&prev)?, target, vec![vec![0]])?;
        instances.push(session.prove(d.clone())?);
        prev = d;
    }
    Ok(WitnessReport { var: x, family, negation, instances })
}

/// A bundled script: file name, the theory it is checked under, and its
/// labelled theorems.
#[derive(Debug, Clone)]
pub struct Bundle {
    pub name: &'static str,
    pub theory: TheoryConfig,
    pub theorems: Vec<ScriptTheorem>,
}

impl Bundle {
    pub fn file_name(&self) -> String {
        format!("{}.tks", self.name)
    }

    pub fn render(&self) -> String {
        crate::script::write_script(&self.theory, &self.theorems)
    }
}

fn labelled(label: &str, d: &Derivation) -> ScriptTheorem {
    ScriptTheorem { label: label.to_string(), script: d.script().clone(), claim: Some(d.formula().clone()) }
}

/// M1 to M3 with A1 and A2, none of which use CONS.
pub fn derivability_suite() -> Result<Vec<(&'static str, Derivation)>, TheoremError> {
    let zero_eq = Formula::eq(Term::Zero, Term::Zero);
    let falsum = Formula::eq(Term::Zero, numeral_u64(1));
    let refl = Derivation::axiom(SchemaId::Eq1, zero_eq.clone());
    Ok(vec![
        ("m1", m1_derivation(&refl)?),
        ("m2", m2_derivation(&zero_eq, &falsum)?),
        ("m3", m3_derivation(&zero_eq)?),
        ("A1", Derivation::a1(falsum.clone())?),
        ("A2", Derivation::a2(falsum)?),
    ])
}

/// L1 for `T^ω` on the theorem `0 = 0`, and L2 for `T^ω` on `0 = 1`.
pub fn loeb_suite() -> Result<Vec<(&'static str, Derivation)>, TheoremError> {
    let zero_eq = Formula::eq(Term::Zero, Term::Zero);
    let falsum = Formula::eq(Term::Zero, numeral_u64(1));
    let refl = Derivation::axiom(SchemaId::Eq1, zero_eq.clone());
    let premise = Derivation::taut_mp(&[&refl], imp(&OmegaTruth.of(&zero_eq), &zero_eq))?;
    Ok(vec![
        ("loeb", loeb_derivation(&OmegaTruth, &zero_eq, &premise)?),
        ("formalized-loeb", formalized_loeb_derivation(&OmegaTruth, &falsum)?),
    ])
}

/// Every bundled derivation, grouped by script file.
pub fn bundles() -> Result<Vec<Bundle>, TheoremError> {
    let suite = |ds: Vec<(&str, Derivation)>| -> Vec<ScriptTheorem> {
        ds.iter().map(|(l, d)| labelled(l, d)).collect()
    };
    let derivability = suite(derivability_suite()?);
    let loeb = suite(loeb_suite()?);

    let gamma = TheoryConfig::GAMMA;
    let witness = omega_witness(&gamma, 3)?;
    let mut witness_theorems = vec![witness.negation.script_theorem("negation")];
    for (n, p) in witness.instances.iter().enumerate() {
        witness_theorems.push(p.script_theorem(&format!("instance-{n}")));
    }

    Ok(vec![
        Bundle { name: "derivability", theory: TheoryConfig::SIGMA, theorems: derivability },
        Bundle { name: "loeb", theory: TheoryConfig::SIGMA, theorems: loeb },
        Bundle { name: "mcgee", theory: gamma.clone(), theorems: mcgee_original(&gamma)?.script_theorems() },
        Bundle {
            name: "mcgee-via-loeb",
            theory: gamma.clone(),
            theorems: mcgee_via_loeb(&gamma)?.script_theorems(),
        },
        Bundle { name: "witness", theory: gamma, theorems: witness_theorems },
    ])
}
