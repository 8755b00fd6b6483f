//! Command-line front end: checking proof scripts, running the bundled
//! demos, and inspecting codes and diagonal sentences.
//!
//! Exit status is 0 on success, 1 when a proof fails to check or a theorem
//! cannot be built, and 2 for usage, I/O and syntax errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;

use truthkernel::arithmetization::{decode, diagonal_sentence, encode, value, Code};
use truthkernel::kernel::{Certificate, CheckedTheorem, TheoryConfig};
use truthkernel::parse::{parse_formula, parse_term, ParseError};
use truthkernel::script::{parse_script, write_script, Derivation, ScriptError, ScriptFile};
use truthkernel::syntax::{Expr, Var};
use truthkernel::theorems::{self, Session, TheoremError};

const WORKER_STACK: usize = 256 << 20;

#[derive(Parser, Debug)]
#[command(name = "truthkernel", version, about = "Proof checker for truth theories over Q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args, Debug, Clone)]
struct Options {
    /// Theory to check against; `check` defaults to the script's header.
    #[arg(long, global = true, value_parser = ["gamma", "sigma"])]
    theory: Option<String>,
    /// Premises sampled per omega-rule node; for `demo witness`, the number of instances.
    #[arg(long, global = true, default_value_t = truthkernel::kernel::DEFAULT_OMEGA_SAMPLES)]
    samples: usize,
    /// Largest accepted omega count: a number or `unlimited`.
    #[arg(long, global = true, value_parser = parse_limit)]
    max_omega: Option<Limit>,
    #[arg(long, global = true)]
    json: bool,
    /// Print nothing on success.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Debug, Clone, Copy)]
struct Limit(Option<u32>);

fn parse_limit(s: &str) -> Result<Limit, String> {
    if s.eq_ignore_ascii_case("unlimited") {
        return Ok(Limit(None));
    }
    s.parse().map(|n| Limit(Some(n))).map_err(|_| format!("expected a number or `unlimited`, got {s}"))
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and check proof scripts, printing a certificate per theorem.
    Check {
        #[arg(required = true)]
        scripts: Vec<PathBuf>,
    },
    /// Build and check one of the bundled derivations.
    Demo { which: Demo },
    /// Print the code of a formula (or term) in decimal and hexadecimal.
    Code { expr: String },
    /// Decode a natural (decimal, or hexadecimal with `0x`).
    Decode { code: String },
    /// Diagonalize a formula in the given variable and check the equivalence.
    Diag { formula: String, var: String },
    /// Evaluate a closed term and emit its evaluation proof.
    Eval { term: String },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Demo {
    Mcgee,
    McgeeViaLoeb,
    Loeb,
    Witness,
    Derivability,
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Check(String),
}

impl Failure {
    fn status(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Usage(_) | Failure::Parse(_) => 2,
        }
    }
}

impl From<TheoremError> for Failure {
    fn from(e: TheoremError) -> Failure {
        match e {
            TheoremError::Script(ScriptError::Syntax { .. }) => Failure::Usage(e.to_string()),
            e => Failure::Check(e.to_string()),
        }
    }
}

impl From<ScriptError> for Failure {
    fn from(e: ScriptError) -> Failure {
        Failure::from(TheoremError::from(e))
    }
}

/// Runs the command line `args` (without the program name), writing results
/// to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<S: AsRef<str>>(args: &[S], out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let argv = std::iter::once("truthkernel").chain(args.iter().map(|a| a.as_ref()));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ =
                if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return status;
        }
    };
    let mut sink = Output { out, quiet: cli.opts.quiet };
    match execute(&cli, &mut sink, err) {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.status()
        }
    }
}

struct Output<'a> {
    out: &'a mut dyn Write,
    quiet: bool,
}

impl Output<'_> {
    fn line(&mut self, text: impl AsRef<str>) {
        if !self.quiet {
            let _ = writeln!(self.out, "{}", text.as_ref());
        }
    }

    fn json(&mut self, value: &impl Serialize) {
        if !self.quiet {
            let text = serde_json::to_string_pretty(value).expect("serializable output");
            let _ = writeln!(self.out, "{text}");
        }
    }
}

fn config(opts: &Options, header: Option<&TheoryConfig>) -> TheoryConfig {
    let base = match &opts.theory {
        Some(name) => TheoryConfig::from_name(name).expect("validated by clap"),
        None => header.cloned().unwrap_or(TheoryConfig::GAMMA),
    };
    let base = base.with_samples(opts.samples);
    match opts.max_omega {
        Some(Limit(max)) => base.with_max_omega(max),
        None => base,
    }
}

fn execute(cli: &Cli, out: &mut Output, err: &mut dyn Write) -> Result<u8, Failure> {
    let opts = &cli.opts;
    match &cli.command {
        Command::Check { scripts } => check_scripts(scripts, opts, out, err),
        Command::Demo { which } => demo(*which, opts, out).map(|()| 0),
        Command::Code { expr } => code(expr, opts, out).map(|()| 0),
        Command::Decode { code } => decode_cmd(code, opts, out).map(|()| 0),
        Command::Diag { formula, var } => diag(formula, var, opts, out).map(|()| 0),
        Command::Eval { term } => eval(term, opts, out).map(|()| 0),
    }
}

fn cert_text(c: &Certificate) -> String {
    format!(
        "theory {}, omega_count {}, samples_checked {}, proof_size {}",
        c.theory, c.omega_count, c.samples_checked, c.proof_size
    )
}

fn print_theorem(out: &mut Output, label: &str, thm: &CheckedTheorem) {
    let c = thm.certificate();
    out.line(format!("{label}: {}", c.formula));
    out.line(format!("  {}", cert_text(&c)));
}

#[derive(Serialize)]
struct Labelled {
    label: String,
    certificate: Certificate,
}

fn labelled(label: &str, thm: &CheckedTheorem) -> Labelled {
    Labelled { label: label.to_string(), certificate: thm.certificate() }
}

type CheckOutcome = Result<Vec<(String, CheckedTheorem)>, TheoremError>;

fn check_scripts(
    paths: &[PathBuf],
    opts: &Options,
    out: &mut Output,
    err: &mut dyn Write,
) -> Result<u8, Failure> {
    let mut files: Vec<ScriptFile> = Vec::new();
    for p in paths {
        let text = std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
        let file = parse_script(&text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
        files.push(file);
    }
    // Scripts are independent, so each gets its own checker and thread.
    let outcomes: Vec<CheckOutcome> = std::thread::scope(|scope| {
        let handles: Vec<_> = files
            .iter()
            .map(|file| {
                let cfg = config(opts, file.theory.as_ref());
                std::thread::Builder::new()
                    .stack_size(WORKER_STACK)
                    .spawn_scoped(scope, move || Session::new(cfg).check_file(file))
                    .expect("spawn checker thread")
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("checker thread panicked")).collect()
    });

    let mut status = 0;
    let mut report = Vec::new();
    for (path, outcome) in paths.iter().zip(outcomes) {
        match outcome {
            Ok(theorems) => {
                if opts.json {
                    for (label, thm) in &theorems {
                        report.push(json!({
                            "script": path.display().to_string(),
                            "label": label,
                            "certificate": thm.certificate(),
                        }));
                    }
                } else {
                    out.line(format!("{}: ok", path.display()));
                    for (label, thm) in &theorems {
                        print_theorem(out, label, thm);
                    }
                }
            }
            Err(e) => {
                let _ = writeln!(err, "{}: {e}", path.display());
                status = 1;
            }
        }
    }
    if opts.json {
        out.json(&report);
    }
    Ok(status)
}

fn demo(which: Demo, opts: &Options, out: &mut Output) -> Result<(), Failure> {
    let cfg = config(opts, None);
    match which {
        Demo::Mcgee | Demo::McgeeViaLoeb => {
            let run = match which {
                Demo::Mcgee => theorems::mcgee_original(&cfg)?,
                _ => theorems::mcgee_via_loeb(&cfg)?,
            };
            let r = &run.refutation;
            if opts.json {
                let narrative: Vec<_> = r
                    .narrative()
                    .iter()
                    .map(|l| json!({"label": l.label, "formula": l.formula.to_string(), "omega_count": l.omega_count}))
                    .collect();
                out.json(&json!({
                    "theory": cfg.name(),
                    "narrative": narrative,
                    "positive": r.positive().certificate(),
                    "negative": r.negative().certificate(),
                }));
            } else {
                out.line(format!("Refutation in theory {}", cfg.name()));
                for l in r.narrative() {
                    let count = l.omega_count.map(|n| format!(" [omega_count {n}]")).unwrap_or_default();
                    out.line(format!("  {}{count}: {}", l.label, l.formula));
                }
                print_theorem(out, "positive", r.positive());
                print_theorem(out, "negative", r.negative());
            }
        }
        Demo::Witness => {
            let w = theorems::omega_witness(&cfg, opts.samples as u64)?;
            if opts.json {
                let instances: Vec<_> = w.instances.iter().map(|p| p.theorem.certificate()).collect();
                out.json(&json!({
                    "theory": cfg.name(),
                    "var": w.var.name(),
                    "family": w.family.to_string(),
                    "negation": w.negation.theorem.certificate(),
                    "instances": instances,
                }));
            } else {
                out.line(format!("family psi(x) := {}", w.family));
                print_theorem(out, "negation", &w.negation.theorem);
                for (n, p) in w.instances.iter().enumerate() {
                    print_theorem(out, &format!("instance {n}"), &p.theorem);
                }
            }
        }
        Demo::Loeb | Demo::Derivability => {
            let suite = match which {
                Demo::Loeb => theorems::loeb_suite()?,
                _ => theorems::derivability_suite()?,
            };
            let mut session = Session::new(cfg);
            let mut report = Vec::new();
            for (label, d) in &suite {
                let thm = session.check(d)?;
                if opts.json {
                    report.push(labelled(label, &thm));
                } else {
                    print_theorem(out, label, &thm);
                }
            }
            if opts.json {
                out.json(&report);
            }
        }
    }
    Ok(())
}

fn parse_expr(text: &str) -> Result<Expr, Failure> {
    match parse_formula(text) {
        Ok(f) => Ok(Expr::Formula(f)),
        Err(fe) => parse_term(text).map(Expr::Term).map_err(|_| Failure::Parse(fe)),
    }
}

fn code(text: &str, opts: &Options, out: &mut Output) -> Result<(), Failure> {
    let e = parse_expr(text)?;
    let c = encode(&e);
    if opts.json {
        out.json(&json!({
            "expr": expr_text(&e),
            "decimal": c.to_string(),
            "hex": format!("0x{}", c.to_hex()),
            "bits": c.bits(),
        }));
    } else {
        out.line(format!("decimal {c}"));
        out.line(format!("hex     0x{}", c.to_hex()));
    }
    Ok(())
}

fn expr_text(e: &Expr) -> String {
    match e {
        Expr::Term(t) => t.to_string(),
        Expr::Formula(f) => f.to_string(),
    }
}

fn decode_cmd(text: &str, opts: &Options, out: &mut Output) -> Result<(), Failure> {
    let n = parse_natural(text).ok_or_else(|| Failure::Usage(format!("not a natural number: {text}")))?;
    let e = decode(&Code(n)).map_err(|e| Failure::Check(e.to_string()))?;
    let kind = match e {
        Expr::Term(_) => "term",
        Expr::Formula(_) => "formula",
    };
    if opts.json {
        out.json(&json!({"kind": kind, "expr": expr_text(&e)}));
    } else {
        out.line(format!("{kind} {}", expr_text(&e)));
    }
    Ok(())
}

fn diag(text: &str, var: &str, opts: &Options, out: &mut Output) -> Result<(), Failure> {
    let phi = parse_formula(text)?;
    let v = Var::from_name(var).ok_or_else(|| Failure::Usage(format!("{var} is not a variable")))?;
    let d = diagonal_sentence(&phi, v).map_err(|e| Failure::Check(e.to_string()))?;
    let proof = Derivation::diag(phi, v)?;
    let thm = Session::new(config(opts, None)).check(&proof)?;
    if opts.json {
        out.json(&json!({
            "theta": d.theta.to_string(),
            "gamma": d.gamma.to_string(),
            "equivalence": thm.certificate(),
        }));
    } else {
        out.line(format!("theta: {}", d.theta));
        out.line(format!("gamma: {}", d.gamma));
        print_theorem(out, "equivalence", &thm);
    }
    Ok(())
}

fn eval(text: &str, opts: &Options, out: &mut Output) -> Result<(), Failure> {
    let t = parse_term(text)?;
    let n = value(&t).map_err(|e| Failure::Check(e.to_string()))?;
    let cfg = config(opts, None);
    let proof = Derivation::eval(t)?;
    let thm = Session::new(cfg.clone()).check(&proof)?;
    let theorem = truthkernel::script::ScriptTheorem {
        label: "eval".into(),
        script: proof.script().clone(),
        claim: Some(thm.formula().clone()),
    };
    let script = write_script(&cfg, &[theorem]);
    if opts.json {
        out.json(&json!({
            "value": n.to_string(),
            "certificate": thm.certificate(),
            "script": script,
        }));
    } else {
        out.line(format!("value {n}"));
        print_theorem(out, "eval", &thm);
        out.line(script.trim_end());
    }
    Ok(())
}

/// Decimal, or hexadecimal with a `0x` prefix.
fn parse_natural(s: &str) -> Option<BigUint> {
    let s = s.trim();
    match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => BigUint::parse_bytes(hex.as_bytes(), 16),
        None => BigUint::parse_bytes(s.as_bytes(), 10),
    }
}
