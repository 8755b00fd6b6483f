//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the output.

use std::collections::{BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use truthkernel::arithmetization::{
    decode, decode_formula, encode, encode_formula_code, numeral, numeral_u64, quote, sub_fn, value, Code,
};
use truthkernel::kernel::{check, Checker, PremiseGenerator, Proof, SchemaId, StepCombinator, TheoryConfig};
use truthkernel::parse::parse_formula;
use truthkernel::script::Expander;
use truthkernel::syntax::{Expr, Formula, Term, Var};
use truthkernel::tactics;
use truthkernel::theorems::{bundles, Session};

type Outcome = Result<String, String>;
type Criterion = Box<dyn FnOnce(&mut ChaCha8Rng) -> Outcome>;

/// Name, theory, proof and conclusion of a bundled theorem.
type Bundled = (String, TheoryConfig, Arc<Proof>, Formula);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn cli(args: &[&str]) -> (u8, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let status = truthkernel_cli::run(args, &mut out, &mut err);
    (status, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let (status, out, err) = cli(args);
    ensure!(status == 0, "{args:?} exited {status}: {err}");
    serde_json::from_str(&out).map_err(|e| format!("{args:?}: bad JSON: {e}"))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let v = cli_json(&["demo", "mcgee", "--theory", "gamma", "--json"])?;
    let elapsed = start.elapsed();
    let narrative = v["narrative"].as_array().ok_or("no narrative")?;
    for n in 1..=7 {
        let line = narrative
            .iter()
            .find(|l| l["label"] == format!("line {n}"))
            .ok_or(format!("line {n} missing"))?;
        ensure!(line["omega_count"] == 0, "line {n} has omega_count {}", line["omega_count"]);
    }
    ensure!(v["negative"]["omega_count"] == 0, "negative side not finitary");
    ensure!(v["positive"]["omega_count"] == 1, "positive omega_count {}", v["positive"]["omega_count"]);
    let pos = v["positive"]["formula"].as_str().unwrap_or_default();
    ensure!(pos.starts_with("forall y. T(iter(y, #"), "positive side is {pos}");
    ensure!(v["negative"]["formula"] == format!("~{pos}"), "sides are not contradictory");
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    Ok(format!("lines 1-7 finitary, T^omega(gamma) at omega_count 1, {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let v = cli_json(&["demo", "witness", "--samples", "5", "--json"])?;
    ensure!(v["negation"]["omega_count"] == 0, "negation uses the omega-rule");
    let neg = v["negation"]["formula"].as_str().unwrap_or_default();
    let family = v["family"].as_str().unwrap_or_default();
    ensure!(neg == format!("~forall x. {family}"), "negation {neg} does not match family {family}");
    let instances = v["instances"].as_array().ok_or("no instances")?;
    ensure!(instances.len() == 5, "{} instances", instances.len());
    let psi = parse_formula(family).map_err(|e| e.to_string())?;
    for (n, c) in instances.iter().enumerate() {
        ensure!(c["omega_count"] == 0, "instance {n} uses the omega-rule");
        let expected = psi.substitute(Var::X, &numeral_u64(n as u64)).to_string();
        ensure!(c["formula"] == expected, "instance {n} is {}", c["formula"]);
    }
    Ok("~forall x. psi(x) and psi(0..4), all omega_count 0".into())
}

fn criterion_3() -> Outcome {
    let derivability = cli_json(&["demo", "derivability", "--theory", "sigma", "--json"])?;
    let loeb = cli_json(&["demo", "loeb", "--theory", "sigma", "--json"])?;
    let mut labels = Vec::new();
    for entry in derivability.as_array().into_iter().flatten().chain(loeb.as_array().into_iter().flatten()) {
        ensure!(entry["certificate"]["theory"] == "sigma", "{} not checked in sigma", entry["label"]);
        labels.push(entry["label"].as_str().unwrap_or_default().to_string());
    }
    for want in ["m1", "m2", "m3", "A1", "A2", "formalized-loeb"] {
        ensure!(labels.iter().any(|l| l == want), "{want} missing under sigma");
    }
    for demo in ["mcgee", "mcgee-via-loeb"] {
        let (status, _, err) = cli(&["demo", demo, "--theory", "sigma"]);
        ensure!(status == 1, "{demo} under sigma exited {status}");
        ensure!(err.contains("CONS"), "{demo} under sigma: {err}");
    }
    Ok("m1 m2 m3 A1 A2 formalized-loeb check in sigma; both McGee demos fail on CONS".into())
}

fn criterion_4() -> Outcome {
    let v = cli_json(&["demo", "mcgee-via-loeb", "--theory", "gamma", "--json"])?;
    ensure!(v["positive"]["formula"] == "0 = #1", "positive side is {}", v["positive"]["formula"]);
    ensure!(v["negative"]["formula"] == "~0 = #1", "negative side is {}", v["negative"]["formula"]);
    let count = v["positive"]["omega_count"].as_u64().ok_or("no omega_count")?;
    ensure!(count <= 3, "omega_count {count}");
    Ok(format!("refutation of 0 = 1 via L1, omega_count {count}"))
}

fn random_term(rng: &mut ChaCha8Rng, depth: u32) -> Term {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..3) {
            0 => Term::Var(Var(rng.gen_range(0..8))),
            1 => Term::Zero,
            _ => numeral_u64(rng.gen_range(0..1000)),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..5) {
        0 => Term::succ(random_term(rng, d)),
        1 => Term::add(random_term(rng, d), random_term(rng, d)),
        2 => Term::mul(random_term(rng, d), random_term(rng, d)),
        3 => Term::iter(random_term(rng, d), random_term(rng, d)),
        _ => Term::sub(random_term(rng, d), random_term(rng, d), random_term(rng, d)),
    }
}

fn random_formula(rng: &mut ChaCha8Rng, depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.5) {
            Formula::eq(random_term(rng, 3), random_term(rng, 3))
        } else {
            Formula::tr(random_term(rng, 3))
        };
    }
    match rng.gen_range(0..3) {
        0 => Formula::not(random_formula(rng, depth - 1)),
        1 => Formula::imp(random_formula(rng, depth - 1), random_formula(rng, depth - 1)),
        _ => Formula::forall(Var(rng.gen_range(0..8)), random_formula(rng, depth - 1)),
    }
}

fn criterion_5a(rng: &mut ChaCha8Rng) -> Outcome {
    let mut seen: HashMap<Code, Expr> = HashMap::new();
    for i in 0..10_000 {
        let e =
            if i % 2 == 0 { Expr::Formula(random_formula(rng, 5)) } else { Expr::Term(random_term(rng, 5)) };
        let c = encode(&e);
        let back = decode(&c).map_err(|err| format!("{e}: {err}"))?;
        ensure!(back == e, "round trip changed {e} into {back}");
        if let Some(prev) = seen.insert(c, e.clone()) {
            ensure!(prev == e, "{prev} and {e} share a code");
        }
    }
    Ok(format!("10000 round trips, {} distinct codes for distinct expressions", seen.len()))
}

fn criterion_5b(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..500 {
        let f = random_formula(rng, 4);
        let v = Var(rng.gen_range(0..8));
        let n = BigUint::from(rng.gen_range(0u64..100_000));
        let direct = sub_fn(&encode_formula_code(&f), v, &n).map_err(|e| e.to_string())?;
        let oracle = encode_formula_code(&f.substitute(v, &numeral(&n)));
        ensure!(direct == oracle, "sub_fn disagrees on {f}, {v}, {n}");
    }
    Ok("500 triples agree".into())
}

fn atoms() -> Vec<Formula> {
    (0..4).map(|i| Formula::tr(numeral_u64(i))).collect()
}

fn truth(f: &Formula, row: u32) -> bool {
    match f {
        Formula::Tr(t) => {
            let i = truthkernel::arithmetization::as_numeral(t).expect("atom index");
            row >> u32::try_from(i).expect("small atom") & 1 == 1
        }
        Formula::Not(a) => !truth(a, row),
        Formula::Imp(a, b) => !truth(a, row) || truth(b, row),
        other => panic!("not propositional: {other}"),
    }
}

/// All formulas over four atoms with at most `n` connectives.
fn formulas_up_to(n: usize) -> Vec<Formula> {
    let mut by_size: Vec<Vec<Formula>> = vec![atoms()];
    for size in 1..=n {
        let mut layer: Vec<Formula> = by_size[size - 1].iter().cloned().map(Formula::not).collect();
        for left in 0..size {
            let right = size - 1 - left;
            for a in &by_size[left] {
                for b in &by_size[right] {
                    layer.push(Formula::imp(a.clone(), b.clone()));
                }
            }
        }
        by_size.push(layer);
    }
    by_size.into_iter().flatten().collect()
}

fn random_prop(rng: &mut ChaCha8Rng, depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return atoms().choose(rng).expect("atoms").clone();
    }
    match rng.gen_range(0..4) {
        0 => Formula::not(random_prop(rng, depth - 1)),
        1 => Formula::imp(random_prop(rng, depth - 1), random_prop(rng, depth - 1)),
        2 => Formula::and(random_prop(rng, depth - 1), random_prop(rng, depth - 1)),
        _ => Formula::iff(random_prop(rng, depth - 1), random_prop(rng, depth - 1)),
    }
}

fn criterion_5c(rng: &mut ChaCha8Rng) -> Outcome {
    let mut cases = formulas_up_to(3);
    let exhaustive = cases.len();
    cases.extend((0..500).map(|_| random_prop(rng, 5)));
    let mut tautologies = 0;
    for f in &cases {
        let oracle = (0..16).all(|row| truth(f, row));
        match tactics::taut(f) {
            Ok(p) => {
                ensure!(oracle, "taut proved the non-tautology {f}");
                let thm = check(&p.proof, &TheoryConfig::SIGMA).map_err(|e| format!("{f}: {e}"))?;
                ensure!(thm.formula() == f, "taut proved {} instead of {f}", thm.formula());
                tautologies += 1;
            }
            Err(e) => ensure!(!oracle, "taut failed on the tautology {f}: {e}"),
        }
    }
    Ok(format!(
        "{} formulas ({exhaustive} exhaustive), {tautologies} tautologies proved and checked",
        cases.len()
    ))
}

fn oracle_value(t: &Term) -> BigUint {
    match t {
        Term::Zero => BigUint::from(0u32),
        Term::Succ(a) => oracle_value(a) + 1u32,
        Term::Add(a, b) => oracle_value(a) + oracle_value(b),
        Term::Mul(a, b) => oracle_value(a) * oracle_value(b),
        other => panic!("oracle covers S, +, * only: {other}"),
    }
}

fn random_closed(rng: &mut ChaCha8Rng, depth: u32) -> Term {
    if depth == 0 || rng.gen_bool(0.3) {
        return numeral_u64(rng.gen_range(0..50));
    }
    match rng.gen_range(0..3) {
        0 => Term::succ(random_closed(rng, depth - 1)),
        1 => Term::add(random_closed(rng, depth - 1), random_closed(rng, depth - 1)),
        _ => Term::mul(random_closed(rng, depth - 1), random_closed(rng, depth - 1)),
    }
}

fn criterion_5d(rng: &mut ChaCha8Rng) -> Outcome {
    let sentences = ["0 = 0", "T(#7)", "forall x. ~x = S(x)", "x = #3"].map(|s| parse_formula(s).unwrap());
    for i in 0..200 {
        // Three families, each with an oracle independent of the evaluator.
        let (t, oracle) = match i % 4 {
            0 => {
                let f = sentences.choose(rng).expect("sentences").clone();
                let n = rng.gen_range(0..4u64);
                let t = Term::iter(numeral_u64(n), quote(&f));
                // iter(k+1, c) codes T(iter(k̄, c)).
                let expected = match n {
                    0 => f.clone(),
                    _ => Formula::tr(Term::iter(numeral_u64(n - 1), quote(&f))),
                };
                (t, encode_formula_code(&expected).0)
            }
            1 => {
                let f = sentences.choose(rng).expect("sentences").clone();
                let n = rng.gen_range(0..1000u64);
                let t = Term::sub(quote(&f), numeral_u64(u64::from(Var::X.0)), numeral_u64(n));
                (t, encode_formula_code(&f.substitute(Var::X, &numeral_u64(n))).0)
            }
            _ => {
                let t = random_closed(rng, 4);
                let n = oracle_value(&t);
                (t, n)
            }
        };
        let p = tactics::eval_closed(&t).map_err(|e| format!("{t}: {e}"))?;
        let thm = check(&p.proof, &TheoryConfig::SIGMA).map_err(|e| format!("{t}: {e}"))?;
        ensure!(
            *thm.formula() == Formula::eq(t.clone(), numeral(&oracle)),
            "eval_closed({t}) concluded {}",
            thm.formula()
        );
        ensure!(value(&t).map_err(|e| e.to_string())? == oracle, "value({t}) disagrees");
        if i % 4 == 0 {
            ensure!(decode_formula(&Code(oracle)).is_ok(), "iter value does not decode");
        }
    }
    Ok("200 closed terms (arithmetic, sub, iter) match independent oracles".into())
}

fn children(p: &Proof) -> Vec<Arc<Proof>> {
    match p {
        Proof::Axiom { .. } => vec![],
        Proof::Mp { minor, major } => vec![minor.clone(), major.clone()],
        Proof::Gen { premise, .. } | Proof::TIntro { premise } => vec![premise.clone()],
        Proof::Omega { generator, .. } => std::iter::once(generator.base.clone())
            .chain(generator.steps.iter().filter_map(|s| s.lemma().cloned()))
            .collect(),
    }
}

fn replace_child(p: &Proof, i: usize, new: Arc<Proof>) -> Proof {
    match p {
        Proof::Mp { minor, major } => {
            if i == 0 {
                Proof::Mp { minor: new, major: major.clone() }
            } else {
                Proof::Mp { minor: minor.clone(), major: new }
            }
        }
        Proof::Gen { var, .. } => Proof::Gen { var: *var, premise: new },
        Proof::TIntro { .. } => Proof::TIntro { premise: new },
        Proof::Omega { generator, conclusion } => {
            let mut g = clone_generator(generator);
            if i == 0 {
                g.base = new;
            } else {
                let mut seen = 0;
                for s in &mut g.steps {
                    if s.lemma().is_some() {
                        seen += 1;
                        if seen == i {
                            *s = match s {
                                StepCombinator::ChainWith(_) => StepCombinator::ChainWith(new.clone()),
                                _ => StepCombinator::Instantiate(new.clone()),
                            };
                        }
                    }
                }
            }
            Proof::Omega { generator: Arc::new(g), conclusion: conclusion.clone() }
        }
        Proof::Axiom { .. } => unreachable!("axioms have no children"),
    }
}

fn clone_generator(g: &PremiseGenerator) -> PremiseGenerator {
    PremiseGenerator { var: g.var, family: g.family.clone(), base: g.base.clone(), steps: g.steps.clone() }
}

fn term_paths(f: &Formula) -> Vec<Vec<usize>> {
    fn in_term(t: &Term, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(path.clone());
        for i in 0..t.arity() {
            path.push(i);
            in_term(t.child(i).expect("in range"), path, out);
            path.pop();
        }
    }
    fn walk(f: &Formula, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        match f {
            Formula::Eq(a, b) => {
                for (i, t) in [a, b].into_iter().enumerate() {
                    path.push(i);
                    in_term(t, path, out);
                    path.pop();
                }
            }
            Formula::Tr(a) => {
                path.push(0);
                in_term(a, path, out);
                path.pop();
            }
            Formula::Not(a) | Formula::Forall(_, a) => {
                path.push(0);
                walk(a, path, out);
                path.pop();
            }
            Formula::Imp(a, b) => {
                for (i, g) in [a, b].into_iter().enumerate() {
                    path.push(i);
                    walk(g, path, out);
                    path.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    walk(f, &mut Vec::new(), &mut out);
    out
}

fn mutate_formula(f: &Formula, rng: &mut ChaCha8Rng) -> Formula {
    let paths = term_paths(f);
    match rng.gen_range(0..3) {
        0 if !paths.is_empty() => {
            let p = paths.choose(rng).expect("nonempty");
            let t = f.term_at(p).expect("valid path").clone();
            f.replace_term_at(p, Term::succ(t)).expect("valid path")
        }
        1 => match f {
            Formula::Imp(a, b) if a != b => Formula::imp((**b).clone(), (**a).clone()),
            Formula::Not(a) => (**a).clone(),
            _ => Formula::not(f.clone()),
        },
        _ => Formula::not(f.clone()),
    }
}

fn other_var(v: Var, rng: &mut ChaCha8Rng) -> Var {
    let w = Var(rng.gen_range(0..7));
    if w == v {
        Var(7)
    } else {
        w
    }
}

/// A proof node that differs from `p`.
fn mutate_node(p: &Proof, rng: &mut ChaCha8Rng) -> Proof {
    match p {
        Proof::Axiom { schema, instance } => {
            if rng.gen_bool(0.3) {
                let others: Vec<SchemaId> = SchemaId::ALL.iter().copied().filter(|s| s != schema).collect();
                Proof::Axiom { schema: *others.choose(rng).expect("others"), instance: instance.clone() }
            } else {
                Proof::Axiom { schema: *schema, instance: mutate_formula(instance, rng) }
            }
        }
        Proof::Mp { minor, major } => {
            if rng.gen_bool(0.5) {
                Proof::Mp { minor: major.clone(), major: minor.clone() }
            } else {
                // Drop the inference and keep one premise.
                let keep = if rng.gen_bool(0.5) { minor } else { major };
                shallow_clone(keep)
            }
        }
        Proof::Gen { var, premise } => {
            if rng.gen_bool(0.5) {
                Proof::Gen { var: other_var(*var, rng), premise: premise.clone() }
            } else {
                shallow_clone(premise)
            }
        }
        Proof::TIntro { premise } => {
            if rng.gen_bool(0.5) {
                shallow_clone(premise)
            } else {
                Proof::TIntro { premise: Arc::new(Proof::TIntro { premise: premise.clone() }) }
            }
        }
        Proof::Omega { generator, conclusion } => {
            let mut g = clone_generator(generator);
            let mut conclusion = conclusion.clone();
            match rng.gen_range(0..4) {
                0 => g.family = mutate_formula(&g.family, rng),
                1 if !g.steps.is_empty() => {
                    let i = rng.gen_range(0..g.steps.len());
                    g.steps.remove(i);
                }
                2 => conclusion = mutate_formula(&conclusion, rng),
                _ => g.var = other_var(g.var, rng),
            }
            Proof::Omega { generator: Arc::new(g), conclusion }
        }
    }
}

fn shallow_clone(p: &Proof) -> Proof {
    match p {
        Proof::Axiom { schema, instance } => Proof::Axiom { schema: *schema, instance: instance.clone() },
        Proof::Mp { minor, major } => Proof::Mp { minor: minor.clone(), major: major.clone() },
        Proof::Gen { var, premise } => Proof::Gen { var: *var, premise: premise.clone() },
        Proof::TIntro { premise } => Proof::TIntro { premise: premise.clone() },
        Proof::Omega { generator, conclusion } => {
            Proof::Omega { generator: generator.clone(), conclusion: conclusion.clone() }
        }
    }
}

fn mutate(root: &Arc<Proof>, rng: &mut ChaCha8Rng) -> Arc<Proof> {
    // Walk to a leaf, then mutate a node at a uniformly chosen depth.
    let mut trail = vec![(root.clone(), usize::MAX)];
    loop {
        let kids = children(&trail.last().expect("nonempty").0);
        if kids.is_empty() {
            break;
        }
        let i = rng.gen_range(0..kids.len());
        trail.push((kids[i].clone(), i));
    }
    let depth = rng.gen_range(0..trail.len());
    trail.truncate(depth + 1);
    let (target, mut index) = trail.pop().expect("nonempty");
    let mut node = Arc::new(mutate_node(&target, rng));
    while let Some((parent, parent_index)) = trail.pop() {
        node = Arc::new(replace_child(&parent, index, node));
        index = parent_index;
    }
    node
}

fn bundled_proofs() -> Result<Vec<Bundled>, String> {
    let mut out = Vec::new();
    for b in bundles().map_err(|e| e.to_string())? {
        let mut expander = Expander::new();
        for t in &b.theorems {
            let pf = expander.expand(&t.script).map_err(|e| e.to_string())?;
            out.push((format!("{}:{}", b.name, t.label), b.theory.clone(), pf.proof, pf.formula));
        }
    }
    Ok(out)
}

fn criterion_6(rng: &mut ChaCha8Rng) -> Outcome {
    let proofs = bundled_proofs()?;
    let mut checkers: HashMap<&'static str, Checker> = HashMap::new();
    let (mut rejected, mut changed) = (0, 0);
    for i in 0..1000 {
        let (name, theory, root, formula) = &proofs[i % proofs.len()];
        let checker = checkers.entry(theory.name()).or_insert_with(|| Checker::new(theory.clone()));
        let mutant = mutate(root, rng);
        match checker.check(&mutant) {
            Err(_) => rejected += 1,
            Ok(thm) => {
                ensure!(
                    thm.formula() != formula,
                    "mutation {i} of {name} accepted with the original conclusion"
                );
                changed += 1;
            }
        }
    }
    Ok(format!(
        "1000 mutations: {rejected} rejected, {changed} accepted with a different conclusion, 0 silent"
    ))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut generators = BTreeSet::new();
    for samples in [8, 16] {
        for b in bundles().map_err(|e| e.to_string())? {
            let mut session = Session::new(b.theory.clone().with_samples(samples));
            let file = truthkernel::script::parse_script(&b.render()).map_err(|e| e.to_string())?;
            for (label, thm) in
                session.check_file(&file).map_err(|e| format!("{} at {samples}: {e}", b.name))?
            {
                if thm.omega_count() > 0 {
                    ensure!(
                        thm.samples_checked() >= samples as u64,
                        "{label}: {} samples",
                        thm.samples_checked()
                    );
                    generators.insert(format!("{}:{label}", b.name));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!(
        "{} theorems with omega-rule nodes validate at 8 and 16 samples, {elapsed:.2?}",
        generators.len()
    ))
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7275_7468);
    let criteria: Vec<(&str, Criterion)> = vec![
        ("1 demo mcgee under gamma", Box::new(|_| criterion_1())),
        ("2 demo witness --samples 5", Box::new(|_| criterion_2())),
        ("3 sigma: derivability conditions check, McGee needs CONS", Box::new(|_| criterion_3())),
        ("4 demo mcgee-via-loeb", Box::new(|_| criterion_4())),
        ("5a encode/decode round trip and injectivity", Box::new(criterion_5a)),
        ("5b sub_fn against substitute-then-encode", Box::new(criterion_5b)),
        ("5c taut against truth tables", Box::new(criterion_5c)),
        ("5d eval_closed against independent evaluators", Box::new(criterion_5d)),
        ("6 mutation fuzzing", Box::new(criterion_6)),
        ("7 generator sampling at 8 and 16", Box::new(|_| criterion_7())),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| run(&mut rng))).unwrap_or_else(|p| {
            Err(format!(
                "panicked: {:?}",
                p.downcast_ref::<String>().map(String::as_str).or(p.downcast_ref::<&str>().copied())
            ))
        });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{elapsed:.2?}]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail} [{elapsed:.2?}]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
