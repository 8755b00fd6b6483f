use std::collections::HashMap;
use std::sync::Arc;

use crate::arithmetization::numeral_u64;
use crate::syntax::Formula;
use crate::tactics::{apply_step, Pf};

use super::schema::{matches, matching_schemas, nearest_miss};
use super::{CheckedTheorem, PremiseGenerator, Proof, TheoryConfig};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error("{rule} at node {node}: {reason}")]
    Node { node: String, rule: &'static str, reason: String },
    #[error("omega-rule at node {node}: premise {sample} failed: {reason}")]
    Sample { node: String, sample: u64, reason: String },
    #[error("omega count {found} exceeds the configured maximum {max}")]
    OmegaLimit { found: u32, max: u32 },
}

impl CheckError {
    fn node(path: &[usize], rule: &'static str, reason: impl Into<String>) -> CheckError {
        CheckError::Node { node: render_path(path), rule, reason: reason.into() }
    }
}

fn render_path(path: &[usize]) -> String {
    let mut s = String::from("root");
    for i in path {
        s.push('/');
        s.push_str(&i.to_string());
    }
    s
}

#[derive(Clone)]
struct NodeInfo {
    formula: Formula,
    omega: u32,
    size: u64,
    samples: u64,
}

/// A proof checker for one theory. Results are cached per proof node, so
/// checking many proofs that share lemmas is cheap.
pub struct Checker {
    config: TheoryConfig,
    // Keyed by node address; the stored `Arc` keeps the address from being reused.
    memo: HashMap<usize, (Arc<Proof>, NodeInfo)>,
}

impl Checker {
    pub fn new(config: TheoryConfig) -> Checker {
        Checker { config, memo: HashMap::new() }
    }

    pub fn config(&self) -> &TheoryConfig {
        &self.config
    }

    pub fn cached_nodes(&self) -> usize {
        self.memo.len()
    }

    pub fn check(&mut self, proof: &Arc<Proof>) -> Result<CheckedTheorem, CheckError> {
        let info = self.node(proof, &mut Vec::new())?;
        if let Some(max) = self.config.max_omega_count {
            if info.omega > max {
                return Err(CheckError::OmegaLimit { found: info.omega, max });
            }
        }
        Ok(CheckedTheorem {
            formula: info.formula,
            theory: self.config.clone(),
            omega_count: info.omega,
            samples_checked: info.samples,
            proof_size: info.size,
            proof: proof.clone(),
        })
    }

    fn node(&mut self, proof: &Arc<Proof>, path: &mut Vec<usize>) -> Result<NodeInfo, CheckError> {
        let key = Arc::as_ptr(proof) as usize;
        if let Some((_, info)) = self.memo.get(&key) {
            return Ok(info.clone());
        }
        let info = self.compute(proof, path)?;
        self.memo.insert(key, (proof.clone(), info.clone()));
        Ok(info)
    }

    fn child(&mut self, proof: &Arc<Proof>, path: &mut Vec<usize>, i: usize) -> Result<NodeInfo, CheckError> {
        path.push(i);
        let r = self.node(proof, path);
        path.pop();
        r
    }

    fn compute(&mut self, proof: &Arc<Proof>, path: &mut Vec<usize>) -> Result<NodeInfo, CheckError> {
        let rule = proof.rule_name();
        match &**proof {
            Proof::Axiom { schema, instance } => {
                if !self.config.is_active(*schema) {
                    return Err(CheckError::node(
                        path,
                        rule,
                        format!("schema {schema} is not part of theory {}", self.config.name()),
                    ));
                }
                if let Err(m) = matches(*schema, instance) {
                    let hint = match matching_schemas(instance).first() {
                        Some(other) => format!("; it is an instance of {other}"),
                        None => match nearest_miss(instance) {
                            (near, _) if near == *schema => String::new(),
                            (near, miss) => format!("; nearest schema is {near} ({})", miss.reason),
                        },
                    };
                    return Err(CheckError::node(
                        path,
                        rule,
                        format!("not an instance of {schema}: {}{hint}", m.reason),
                    ));
                }
                Ok(NodeInfo { formula: instance.clone(), omega: 0, size: 1, samples: 0 })
            }
            Proof::Mp { minor, major } => {
                let a = self.child(minor, path, 0)?;
                let b = self.child(major, path, 1)?;
                let Some((ante, cons)) = b.formula.as_imp() else {
                    return Err(CheckError::node(
                        path,
                        rule,
                        format!("major premise {} is not an implication", b.formula),
                    ));
                };
                if *ante != a.formula {
                    return Err(CheckError::node(
                        path,
                        rule,
                        format!("minor premise {} does not match antecedent {}", a.formula, ante),
                    ));
                }
                Ok(NodeInfo {
                    formula: cons.clone(),
                    omega: a.omega.max(b.omega),
                    size: 1u64.saturating_add(a.size).saturating_add(b.size),
                    samples: a.samples.saturating_add(b.samples),
                })
            }
            Proof::Gen { var, premise } => {
                let p = self.child(premise, path, 0)?;
                Ok(NodeInfo {
                    formula: Formula::forall(*var, p.formula),
                    size: p.size.saturating_add(1),
                    ..p
                })
            }
            Proof::TIntro { premise } => {
                let p = self.child(premise, path, 0)?;
                if !p.formula.is_sentence() {
                    return Err(CheckError::node(path, rule, format!("{} is not a sentence", p.formula)));
                }
                let formula = Formula::tr(crate::arithmetization::quote(&p.formula));
                Ok(NodeInfo { formula, size: p.size.saturating_add(1), ..p })
            }
            Proof::Omega { generator, conclusion } => {
                let expected = Formula::forall(generator.var, generator.family.clone());
                if *conclusion != expected {
                    return Err(CheckError::node(
                        path,
                        rule,
                        format!("conclusion {conclusion} is not the generalization {expected} of the family"),
                    ));
                }
                let info = self.validate_generator(generator, path)?;
                let omega = info.omega.saturating_add(1);
                if let Some(max) = self.config.max_omega_count {
                    if omega > max {
                        return Err(CheckError::OmegaLimit { found: omega, max });
                    }
                }
                Ok(NodeInfo {
                    formula: expected,
                    omega,
                    size: info.size.saturating_add(1),
                    samples: info.samples,
                })
            }
        }
    }

    /// Checks the generator on the first `omega_samples + 1` family members.
    /// The returned info aggregates the base and lemmas.
    fn validate_generator(
        &mut self,
        g: &PremiseGenerator,
        path: &mut Vec<usize>,
    ) -> Result<NodeInfo, CheckError> {
        let node = render_path(path);
        let stray: Vec<String> =
            g.family.free_vars().into_iter().filter(|v| *v != g.var).map(|v| v.name()).collect();
        if !stray.is_empty() {
            return Err(CheckError::node(
                path,
                "omega-rule",
                format!("family has free variables besides {}: {}", g.var, stray.join(", ")),
            ));
        }
        let base = self.child(&g.base, path, 0)?;
        let first = g.instance(0);
        if base.formula != first {
            return Err(CheckError::Sample {
                node,
                sample: 0,
                reason: format!("base proves {}, expected {}", base.formula, first),
            });
        }
        let mut agg = base.clone();
        let mut lemmas = Vec::with_capacity(g.steps.len());
        for (i, step) in g.steps.iter().enumerate() {
            match step.lemma() {
                Some(l) => {
                    let info = self.child(l, path, i + 1)?;
                    agg.omega = agg.omega.max(info.omega);
                    agg.size = agg.size.saturating_add(info.size);
                    agg.samples = agg.samples.saturating_add(info.samples);
                    lemmas.push(Some(Pf::from_parts(l.clone(), info.formula)));
                }
                None => lemmas.push(None),
            }
        }
        let mut current = Pf::from_parts(g.base.clone(), base.formula);
        let samples = self.config.omega_samples as u64;
        for k in 1..=samples {
            let target = g.family.substitute(g.var, &numeral_u64(k));
            for (step, lemma) in g.steps.iter().zip(&lemmas) {
                current = apply_step(step, &current, &target, lemma.as_ref()).map_err(|e| {
                    CheckError::Sample { node: node.clone(), sample: k, reason: e.to_string() }
                })?;
            }
            let proof = current.proof.clone();
            let info = self.node(&proof, &mut Vec::new()).map_err(|e| CheckError::Sample {
                node: node.clone(),
                sample: k,
                reason: e.to_string(),
            })?;
            if info.formula != target {
                return Err(CheckError::Sample {
                    node,
                    sample: k,
                    reason: format!("steps produced {}, expected {}", info.formula, target),
                });
            }
            current = Pf::from_parts(proof, info.formula);
        }
        agg.samples = agg.samples.saturating_add(samples);
        Ok(agg)
    }
}

/// Checks a proof against a theory with a fresh cache.
pub fn check(proof: &Arc<Proof>, config: &TheoryConfig) -> Result<CheckedTheorem, CheckError> {
    Checker::new(config.clone()).check(proof)
}
