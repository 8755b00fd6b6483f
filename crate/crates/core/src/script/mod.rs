//! Proof scripts: kernel proof forms plus tactic macros, with an expander
//! that turns them into kernel proofs.
//!
//! A [`Derivation`] pairs a script node with its expansion, so theorem
//! constructors build scripts and proofs in one pass and the script can be
//! written out and re-checked later.

mod text;

use std::collections::HashMap;
use std::sync::Arc;

use crate::kernel::{PremiseGenerator, Proof, SchemaId, StepCombinator};
use crate::syntax::{Formula, Term, Var};
use crate::tactics::{self, Pf, TacticError};

pub use text::{parse_script, write_script, ScriptFile, ScriptTheorem};

pub type Path = Vec<usize>;

#[derive(Debug)]
pub enum Script {
    Axiom(SchemaId, Formula),
    Mp(Arc<Script>, Arc<Script>),
    Gen(Var, Arc<Script>),
    TIntro(Arc<Script>),
    Omega {
        var: Var,
        family: Formula,
        base: Arc<Script>,
        steps: Vec<ScriptStep>,
    },
    Taut(Formula),
    Eval(Term),
    A1(Formula),
    A2(Formula),
    /// `γ <-> φ(⌜γ⌝)` for the diagonal sentence of `φ` in `v`.
    Diag(Formula, Var),
    /// `φ <-> φ[path := t]` from a proof of `s = t`.
    Rewrite {
        eq: Arc<Script>,
        formula: Formula,
        path: Path,
    },
    /// A proof of `target` from one of a formula differing at the paths by
    /// closed subterms of equal value.
    Convert {
        proof: Arc<Script>,
        target: Formula,
        paths: Vec<Path>,
    },
}

#[derive(Debug, Clone)]
pub enum ScriptStep {
    TIntro,
    LiftImp(usize),
    RewriteEval(Path),
    Chain(Arc<Script>),
    Instantiate(Arc<Script>),
}

impl ScriptStep {
    fn lemma(&self) -> Option<&Arc<Script>> {
        match self {
            ScriptStep::Chain(s) | ScriptStep::Instantiate(s) => Some(s),
            _ => None,
        }
    }
}

impl Script {
    /// Direct sub-scripts, in the order they are expanded.
    pub fn children(&self) -> Vec<&Arc<Script>> {
        match self {
            Script::Mp(a, b) => vec![a, b],
            Script::Gen(_, a) | Script::TIntro(a) => vec![a],
            Script::Omega { base, steps, .. } => {
                let mut v = vec![base];
                v.extend(steps.iter().filter_map(ScriptStep::lemma));
                v
            }
            Script::Rewrite { eq, .. } => vec![eq],
            Script::Convert { proof, .. } => vec![proof],
            _ => vec![],
        }
    }

    /// Converts a kernel proof into the equivalent script of kernel forms.
    pub fn from_proof(proof: &Arc<Proof>) -> Arc<Script> {
        fn go(p: &Arc<Proof>, memo: &mut HashMap<usize, Arc<Script>>) -> Arc<Script> {
            let key = Arc::as_ptr(p) as usize;
            if let Some(s) = memo.get(&key) {
                return s.clone();
            }
            let s = Arc::new(match &**p {
                Proof::Axiom { schema, instance } => Script::Axiom(*schema, instance.clone()),
                Proof::Mp { minor, major } => Script::Mp(go(minor, memo), go(major, memo)),
                Proof::Gen { var, premise } => Script::Gen(*var, go(premise, memo)),
                Proof::TIntro { premise } => Script::TIntro(go(premise, memo)),
                Proof::Omega { generator, .. } => Script::Omega {
                    var: generator.var,
                    family: generator.family.clone(),
                    base: go(&generator.base, memo),
                    steps: generator
                        .steps
                        .iter()
                        .map(|s| match s {
                            StepCombinator::ApplyTIntro => ScriptStep::TIntro,
                            StepCombinator::LiftImp(k) => ScriptStep::LiftImp(*k),
                            StepCombinator::RewriteEval(p) => ScriptStep::RewriteEval(p.clone()),
                            StepCombinator::ChainWith(l) => ScriptStep::Chain(go(l, memo)),
                            StepCombinator::Instantiate(l) => ScriptStep::Instantiate(go(l, memo)),
                        })
                        .collect(),
                },
            });
            memo.insert(key, s.clone());
            s
        }
        go(proof, &mut HashMap::new())
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum ScriptError {
    #[error("script syntax error at line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("expansion failed in {form}: {source}")]
    Expand { form: &'static str, source: TacticError },
}

fn form_name(s: &Script) -> &'static str {
    match s {
        Script::Axiom(..) => "axiom",
        Script::Mp(..) => "mp",
        Script::Gen(..) => "gen",
        Script::TIntro(..) => "tintro",
        Script::Omega { .. } => "omega",
        Script::Taut(..) => "taut",
        Script::Eval(..) => "eval",
        Script::A1(..) => "A1",
        Script::A2(..) => "A2",
        Script::Diag(..) => "diag",
        Script::Rewrite { .. } => "rewrite",
        Script::Convert { .. } => "convert",
    }
}

/// Expands one node, given the expansions of its children.
fn expand_node(s: &Script, child: &dyn Fn(&Arc<Script>) -> Pf) -> Result<Pf, ScriptError> {
    let r = match s {
        Script::Axiom(schema, f) => Ok(Pf::axiom(*schema, f.clone())),
        Script::Mp(a, b) => Pf::mp(&child(a), &child(b)),
        Script::Gen(v, a) => Ok(Pf::gen(*v, &child(a))),
        Script::TIntro(a) => Pf::tintro(&child(a)),
        Script::Omega { var, family, base, steps } => Ok(Pf::omega(PremiseGenerator {
            var: *var,
            family: family.clone(),
            base: child(base).proof,
            steps: steps
                .iter()
                .map(|st| match st {
                    ScriptStep::TIntro => StepCombinator::ApplyTIntro,
                    ScriptStep::LiftImp(k) => StepCombinator::LiftImp(*k),
                    ScriptStep::RewriteEval(p) => StepCombinator::RewriteEval(p.clone()),
                    ScriptStep::Chain(l) => StepCombinator::ChainWith(child(l).proof),
                    ScriptStep::Instantiate(l) => StepCombinator::Instantiate(child(l).proof),
                })
                .collect(),
        })),
        Script::Taut(f) => tactics::taut(f),
        Script::Eval(t) => tactics::eval_closed(t),
        Script::A1(f) => tactics::derive_a1(f),
        Script::A2(f) => tactics::derive_a2(f),
        Script::Diag(f, v) => tactics::diagonal_lemma(f, *v).map(|d| d.equivalence_proof),
        Script::Rewrite { eq, formula, path } => tactics::rewrite_eq(&child(eq), formula, path),
        Script::Convert { proof, target, paths } => tactics::convert_by_eval(&child(proof), target, paths),
    };
    r.map_err(|source| ScriptError::Expand { form: form_name(s), source })
}

/// Expands parsed scripts, sharing the expansion of nodes referenced more
/// than once.
#[derive(Default)]
pub struct Expander {
    memo: HashMap<usize, (Arc<Script>, Pf)>,
}

impl Expander {
    pub fn new() -> Expander {
        Expander::default()
    }

    pub fn expand(&mut self, root: &Arc<Script>) -> Result<Pf, ScriptError> {
        // Post-order without recursion, so deep scripts cannot exhaust the stack.
        let mut stack: Vec<(Arc<Script>, bool)> = vec![(root.clone(), false)];
        while let Some((node, ready)) = stack.pop() {
            let key = Arc::as_ptr(&node) as usize;
            if self.memo.contains_key(&key) {
                continue;
            }
            if ready {
                let memo = &self.memo;
                let pf = expand_node(&node, &|c| memo[&(Arc::as_ptr(c) as usize)].1.clone())?;
                self.memo.insert(key, (node, pf));
            } else {
                stack.push((node.clone(), true));
                for c in node.children().into_iter().rev() {
                    stack.push((c.clone(), false));
                }
            }
        }
        Ok(self.memo[&(Arc::as_ptr(root) as usize)].1.clone())
    }
}

/// A script node together with its expansion.
#[derive(Debug, Clone)]
pub struct Derivation {
    script: Arc<Script>,
    pf: Pf,
}

impl Derivation {
    fn build(node: Script, children: &[&Derivation]) -> Result<Derivation, ScriptError> {
        let lookup = |c: &Arc<Script>| {
            children
                .iter()
                .find(|d| Arc::ptr_eq(&d.script, c))
                .map(|d| d.pf.clone())
                .expect("child derivation supplied")
        };
        let pf = expand_node(&node, &lookup)?;
        Ok(Derivation { script: Arc::new(node), pf })
    }

    /// Wraps an already built kernel proof.
    pub fn from_proof(pf: &Pf) -> Derivation {
        Derivation { script: Script::from_proof(&pf.proof), pf: pf.clone() }
    }

    pub fn script(&self) -> &Arc<Script> {
        &self.script
    }

    pub fn pf(&self) -> &Pf {
        &self.pf
    }

    pub fn proof(&self) -> &Arc<Proof> {
        &self.pf.proof
    }

    pub fn formula(&self) -> &Formula {
        &self.pf.formula
    }

    pub fn axiom(schema: SchemaId, f: Formula) -> Derivation {
        Derivation::build(Script::Axiom(schema, f), &[]).expect("axiom nodes always expand")
    }

    pub fn mp(minor: &Derivation, major: &Derivation) -> Result<Derivation, ScriptError> {
        Derivation::build(Script::Mp(minor.script.clone(), major.script.clone()), &[minor, major])
    }

    pub fn gen(v: Var, p: &Derivation) -> Derivation {
        Derivation::build(Script::Gen(v, p.script.clone()), &[p]).expect("generalization always expands")
    }

    pub fn tintro(p: &Derivation) -> Result<Derivation, ScriptError> {
        Derivation::build(Script::TIntro(p.script.clone()), &[p])
    }

    pub fn omega(var: Var, family: Formula, base: &Derivation, steps: Vec<StepSpec>) -> Derivation {
        let mut children = vec![base];
        let script_steps = steps
            .iter()
            .map(|s| match s {
                StepSpec::TIntro => ScriptStep::TIntro,
                StepSpec::LiftImp(k) => ScriptStep::LiftImp(*k),
                StepSpec::RewriteEval(p) => ScriptStep::RewriteEval(p.clone()),
                StepSpec::Chain(d) => ScriptStep::Chain(d.script.clone()),
                StepSpec::Instantiate(d) => ScriptStep::Instantiate(d.script.clone()),
            })
            .collect();
        for s in &steps {
            if let StepSpec::Chain(d) | StepSpec::Instantiate(d) = s {
                children.push(d);
            }
        }
        Derivation::build(
            Script::Omega { var, family, base: base.script.clone(), steps: script_steps },
            &children,
        )
        .expect("omega nodes always expand")
    }

    pub fn taut(f: Formula) -> Result<Derivation, ScriptError> {
        Derivation::build(Script::Taut(f), &[])
    }

    pub fn eval(t: Term) -> Result<Derivation, ScriptError> {
        Derivation::build(Script::Eval(t), &[])
    }

    pub fn a1(f: Formula) -> Result<Derivation, ScriptError> {
        Derivation::build(Script::A1(f), &[])
    }

    pub fn a2(f: Formula) -> Result<Derivation, ScriptError> {
        Derivation::build(Script::A2(f), &[])
    }

    pub fn diag(f: Formula, v: Var) -> Result<Derivation, ScriptError> {
        Derivation::build(Script::Diag(f, v), &[])
    }

    pub fn rewrite(eq: &Derivation, formula: Formula, path: Path) -> Result<Derivation, ScriptError> {
        Derivation::build(Script::Rewrite { eq: eq.script.clone(), formula, path }, &[eq])
    }

    pub fn convert(p: &Derivation, target: Formula, paths: Vec<Path>) -> Result<Derivation, ScriptError> {
        Derivation::build(Script::Convert { proof: p.script.clone(), target, paths }, &[p])
    }

    /// `conclusion` from the premises by a propositional tautology.
    pub fn taut_mp(premises: &[&Derivation], conclusion: Formula) -> Result<Derivation, ScriptError> {
        let goal = premises.iter().rev().fold(conclusion, |acc, p| Formula::imp(p.formula().clone(), acc));
        let mut d = Derivation::taut(goal)?;
        for p in premises {
            d = Derivation::mp(p, &d)?;
        }
        Ok(d)
    }
}

/// A step combinator whose lemma, if any, is a derivation.
#[derive(Debug, Clone)]
pub enum StepSpec {
    TIntro,
    LiftImp(usize),
    RewriteEval(Path),
    Chain(Derivation),
    Instantiate(Derivation),
}
