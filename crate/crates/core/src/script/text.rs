//! Reading and writing the S-expression script format.
//!
//! ```text
//! file     := form*
//! form     := (theory gamma|sigma)
//!           | (def NAME proof)
//!           | (theorem LABEL proof ["formula"])
//!           | proof
//! proof    := NAME
//!           | (axiom SCHEMA "formula")
//!           | (mp proof proof)              ; minor premise first
//!           | (gen VAR proof)
//!           | (tintro proof)
//!           | (omega (family VAR "formula") (base proof) (step comb*))
//!           | (taut "formula") | (eval "term")
//!           | (A1 "formula") | (A2 "formula") | (diag "formula" VAR)
//!           | (rewrite proof "formula" path)
//!           | (convert proof "formula" path*)
//! comb     := (tintro) | (lift-imp N) | (rewrite-eval path)
//!           | (chain proof) | (instantiate proof)
//! path     := (at N*)
//! ```
//!
//! `;` starts a comment that runs to the end of the line. A bare proof at the
//! top level is a theorem with a generated label.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::kernel::{SchemaId, TheoryConfig};
use crate::parse::{parse_formula, parse_term};
use crate::syntax::{Formula, Var};

use super::{Path, Script, ScriptError, ScriptStep};

#[derive(Debug, Clone)]
enum Sexp {
    Atom(String, usize),
    Str(String, usize),
    List(Vec<Sexp>, usize),
}

impl Sexp {
    fn line(&self) -> usize {
        match self {
            Sexp::Atom(_, l) | Sexp::Str(_, l) | Sexp::List(_, l) => *l,
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> ScriptError {
    ScriptError::Syntax { line, message: message.into() }
}

fn read_sexps(text: &str) -> Result<Vec<Sexp>, ScriptError> {
    let mut stack: Vec<(Vec<Sexp>, usize)> = vec![(Vec::new(), 1)];
    let mut line = 1;
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '\n' => line += 1,
            c if c.is_whitespace() => {}
            ';' => {
                for c in chars.by_ref() {
                    if c == '\n' {
                        line += 1;
                        break;
                    }
                }
            }
            '(' => stack.push((Vec::new(), line)),
            ')' => {
                let (items, start) = stack.pop().expect("stack is never empty");
                let Some(parent) = stack.last_mut() else {
                    return Err(syntax(line, "unbalanced ')'"));
                };
                parent.0.push(Sexp::List(items, start));
            }
            '"' => {
                let start = line;
                let mut s = String::new();
                loop {
                    match chars.next() {
                        None => return Err(syntax(start, "unterminated string")),
                        Some('"') => break,
                        Some('\\') => match chars.next() {
                            Some(e) => s.push(e),
                            None => return Err(syntax(start, "unterminated string")),
                        },
                        Some(c) => {
                            if c == '\n' {
                                line += 1;
                            }
                            s.push(c);
                        }
                    }
                }
                stack.last_mut().expect("stack is never empty").0.push(Sexp::Str(s, start));
            }
            _ => {
                let mut s = String::from(c);
                while let Some(&n) = chars.peek() {
                    if n.is_whitespace() || matches!(n, '(' | ')' | '"' | ';') {
                        break;
                    }
                    s.push(n);
                    chars.next();
                }
                stack.last_mut().expect("stack is never empty").0.push(Sexp::Atom(s, line));
            }
        }
        if stack.is_empty() {
            return Err(syntax(line, "unbalanced ')'"));
        }
    }
    if stack.len() != 1 {
        return Err(syntax(stack.last().map_or(line, |s| s.1), "unclosed '('"));
    }
    Ok(stack.pop().expect("top level").0)
}

/// A labelled theorem of a script file, optionally with the formula it claims.
#[derive(Debug, Clone)]
pub struct ScriptTheorem {
    pub label: String,
    pub script: Arc<Script>,
    pub claim: Option<Formula>,
}

#[derive(Debug, Clone, Default)]
pub struct ScriptFile {
    /// The theory named by the `(theory ..)` header, if any.
    pub theory: Option<TheoryConfig>,
    pub theorems: Vec<ScriptTheorem>,
}

struct Reader {
    defs: HashMap<String, Arc<Script>>,
}

impl Reader {
    fn atom<'a>(&self, s: &'a Sexp, what: &str) -> Result<&'a str, ScriptError> {
        match s {
            Sexp::Atom(a, _) => Ok(a),
            _ => Err(syntax(s.line(), format!("expected {what}"))),
        }
    }

    fn string<'a>(&self, s: &'a Sexp, what: &str) -> Result<&'a str, ScriptError> {
        match s {
            Sexp::Str(a, _) => Ok(a),
            _ => Err(syntax(s.line(), format!("expected {what} as a quoted string"))),
        }
    }

    fn formula(&self, s: &Sexp) -> Result<Formula, ScriptError> {
        let text = self.string(s, "a formula")?;
        parse_formula(text).map_err(|e| syntax(s.line(), format!("in formula: {e}")))
    }

    fn var(&self, s: &Sexp) -> Result<Var, ScriptError> {
        let name = self.atom(s, "a variable")?;
        Var::from_name(name).ok_or_else(|| syntax(s.line(), format!("{name} is not a variable")))
    }

    fn number(&self, s: &Sexp) -> Result<usize, ScriptError> {
        let a = self.atom(s, "a number")?;
        a.parse().map_err(|_| syntax(s.line(), format!("{a} is not a number")))
    }

    fn path(&self, s: &Sexp) -> Result<Path, ScriptError> {
        match s {
            Sexp::List(items, _) if matches!(items.first(), Some(Sexp::Atom(h, _)) if h == "at") => {
                items[1..].iter().map(|i| self.number(i)).collect()
            }
            _ => Err(syntax(s.line(), "expected a path (at ...)")),
        }
    }

    fn arity(&self, items: &[Sexp], n: usize, line: usize, head: &str) -> Result<(), ScriptError> {
        if items.len() != n + 1 {
            return Err(syntax(line, format!("{head} expects {n} arguments, found {}", items.len() - 1)));
        }
        Ok(())
    }

    fn proof(&self, s: &Sexp) -> Result<Arc<Script>, ScriptError> {
        let (items, line) = match s {
            Sexp::Atom(name, line) => {
                return self
                    .defs
                    .get(name)
                    .cloned()
                    .ok_or_else(|| syntax(*line, format!("undefined name {name}")));
            }
            Sexp::Str(_, line) => return Err(syntax(*line, "expected a proof, found a string")),
            Sexp::List(items, line) => (items, *line),
        };
        let head = match items.first() {
            Some(h) => self.atom(h, "a form name")?,
            None => return Err(syntax(line, "empty form")),
        };
        let node = match head {
            "axiom" => {
                self.arity(items, 2, line, head)?;
                let name = self.atom(&items[1], "a schema name")?;
                let schema = SchemaId::from_name(name)
                    .ok_or_else(|| syntax(line, format!("unknown schema {name}")))?;
                Script::Axiom(schema, self.formula(&items[2])?)
            }
            "mp" => {
                self.arity(items, 2, line, head)?;
                Script::Mp(self.proof(&items[1])?, self.proof(&items[2])?)
            }
            "gen" => {
                self.arity(items, 2, line, head)?;
                Script::Gen(self.var(&items[1])?, self.proof(&items[2])?)
            }
            "tintro" => {
                self.arity(items, 1, line, head)?;
                Script::TIntro(self.proof(&items[1])?)
            }
            "omega" => self.omega(items, line)?,
            "taut" => {
                self.arity(items, 1, line, head)?;
                Script::Taut(self.formula(&items[1])?)
            }
            "eval" => {
                self.arity(items, 1, line, head)?;
                let text = self.string(&items[1], "a term")?;
                let t = parse_term(text).map_err(|e| syntax(line, format!("in term: {e}")))?;
                Script::Eval(t)
            }
            "A1" => {
                self.arity(items, 1, line, head)?;
                Script::A1(self.formula(&items[1])?)
            }
            "A2" => {
                self.arity(items, 1, line, head)?;
                Script::A2(self.formula(&items[1])?)
            }
            "diag" => {
                self.arity(items, 2, line, head)?;
                Script::Diag(self.formula(&items[1])?, self.var(&items[2])?)
            }
            "rewrite" => {
                self.arity(items, 3, line, head)?;
                Script::Rewrite {
                    eq: self.proof(&items[1])?,
                    formula: self.formula(&items[2])?,
                    path: self.path(&items[3])?,
                }
            }
            "convert" => {
                if items.len() < 3 {
                    return Err(syntax(line, "convert expects a proof and a target formula"));
                }
                Script::Convert {
                    proof: self.proof(&items[1])?,
                    target: self.formula(&items[2])?,
                    paths: items[3..].iter().map(|p| self.path(p)).collect::<Result<_, _>>()?,
                }
            }
            other => return Err(syntax(line, format!("unknown form {other}"))),
        };
        Ok(Arc::new(node))
    }

    fn section<'a>(&self, s: &'a Sexp, name: &str) -> Result<&'a [Sexp], ScriptError> {
        match s {
            Sexp::List(items, _) if matches!(items.first(), Some(Sexp::Atom(h, _)) if h == name) => {
                Ok(&items[1..])
            }
            _ => Err(syntax(s.line(), format!("expected ({name} ...)"))),
        }
    }

    fn omega(&self, items: &[Sexp], line: usize) -> Result<Script, ScriptError> {
        if items.len() != 4 {
            return Err(syntax(line, "omega expects (family ..), (base ..) and (step ..)"));
        }
        let family = self.section(&items[1], "family")?;
        if family.len() != 2 {
            return Err(syntax(items[1].line(), "family expects a variable and a formula"));
        }
        let base = self.section(&items[2], "base")?;
        if base.len() != 1 {
            return Err(syntax(items[2].line(), "base expects one proof"));
        }
        let steps = self.section(&items[3], "step")?;
        Ok(Script::Omega {
            var: self.var(&family[0])?,
            family: self.formula(&family[1])?,
            base: self.proof(&base[0])?,
            steps: steps.iter().map(|s| self.step(s)).collect::<Result<_, _>>()?,
        })
    }

    fn step(&self, s: &Sexp) -> Result<ScriptStep, ScriptError> {
        let Sexp::List(items, line) = s else {
            return Err(syntax(s.line(), "expected a step combinator"));
        };
        let head = match items.first() {
            Some(h) => self.atom(h, "a combinator name")?,
            None => return Err(syntax(*line, "empty combinator")),
        };
        Ok(match head {
            "tintro" => {
                self.arity(items, 0, *line, head)?;
                ScriptStep::TIntro
            }
            "lift-imp" => {
                self.arity(items, 1, *line, head)?;
                ScriptStep::LiftImp(self.number(&items[1])?)
            }
            "rewrite-eval" => {
                self.arity(items, 1, *line, head)?;
                ScriptStep::RewriteEval(self.path(&items[1])?)
            }
            "chain" => {
                self.arity(items, 1, *line, head)?;
                ScriptStep::Chain(self.proof(&items[1])?)
            }
            "instantiate" => {
                self.arity(items, 1, *line, head)?;
                ScriptStep::Instantiate(self.proof(&items[1])?)
            }
            other => return Err(syntax(*line, format!("unknown combinator {other}"))),
        })
    }
}

pub fn parse_script(text: &str) -> Result<ScriptFile, ScriptError> {
    let mut reader = Reader { defs: HashMap::new() };
    let mut file = ScriptFile::default();
    for form in read_sexps(text)? {
        let line = form.line();
        let head = match &form {
            Sexp::List(items, _) => match items.first() {
                Some(Sexp::Atom(h, _)) => Some(h.as_str()),
                _ => None,
            },
            _ => None,
        };
        let Sexp::List(items, _) = &form else {
            return Err(syntax(line, "expected a form"));
        };
        match head {
            Some("theory") => {
                reader.arity(items, 1, line, "theory")?;
                let name = reader.atom(&items[1], "a theory name")?;
                let config = TheoryConfig::from_name(name)
                    .ok_or_else(|| syntax(line, format!("unknown theory {name}")))?;
                file.theory = Some(config);
            }
            Some("def") => {
                reader.arity(items, 2, line, "def")?;
                let name = reader.atom(&items[1], "a name")?.to_string();
                let p = reader.proof(&items[2])?;
                reader.defs.insert(name, p);
            }
            Some("theorem") => {
                if !(3..=4).contains(&items.len()) {
                    return Err(syntax(line, "theorem expects a label, a proof and an optional formula"));
                }
                let label = match &items[1] {
                    Sexp::Atom(a, _) | Sexp::Str(a, _) => a.clone(),
                    _ => return Err(syntax(line, "expected a theorem label")),
                };
                let script = reader.proof(&items[2])?;
                let claim = items.get(3).map(|f| reader.formula(f)).transpose()?;
                file.theorems.push(ScriptTheorem { label, script, claim });
            }
            _ => {
                let script = reader.proof(&form)?;
                let label = format!("theorem-{}", file.theorems.len() + 1);
                file.theorems.push(ScriptTheorem { label, script, claim: None });
            }
        }
    }
    Ok(file)
}

struct Writer {
    names: HashMap<usize, String>,
    out: String,
}

fn key(s: &Arc<Script>) -> usize {
    Arc::as_ptr(s) as usize
}

fn path_text(p: &[usize]) -> String {
    let mut s = String::from("(at");
    for i in p {
        write!(s, " {i}").expect("writing to a string");
    }
    s.push(')');
    s
}

impl Writer {
    fn expr(&mut self, s: &Arc<Script>, indent: usize) {
        if let Some(name) = self.names.get(&key(s)) {
            self.out.push_str(name);
            return;
        }
        self.node(s, indent);
    }

    fn child(&mut self, s: &Arc<Script>, indent: usize) {
        self.out.push('\n');
        self.out.push_str(&" ".repeat(indent));
        self.expr(s, indent);
    }

    fn node(&mut self, s: &Arc<Script>, indent: usize) {
        let inner = indent + 2;
        match &**s {
            Script::Axiom(schema, f) => write!(self.out, "(axiom {schema} \"{f}\")").expect("string"),
            Script::Mp(a, b) => {
                self.out.push_str("(mp");
                self.child(a, inner);
                self.child(b, inner);
                self.out.push(')');
            }
            Script::Gen(v, a) => {
                write!(self.out, "(gen {v}").expect("string");
                self.child(a, inner);
                self.out.push(')');
            }
            Script::TIntro(a) => {
                self.out.push_str("(tintro");
                self.child(a, inner);
                self.out.push(')');
            }
            Script::Omega { var, family, base, steps } => {
                write!(self.out, "(omega (family {var} \"{family}\")").expect("string");
                self.out.push('\n');
                self.out.push_str(&" ".repeat(inner));
                self.out.push_str("(base");
                self.child(base, inner + 2);
                self.out.push(')');
                self.out.push('\n');
                self.out.push_str(&" ".repeat(inner));
                self.out.push_str("(step");
                for st in steps {
                    self.out.push('\n');
                    self.out.push_str(&" ".repeat(inner + 2));
                    match st {
                        ScriptStep::TIntro => self.out.push_str("(tintro)"),
                        ScriptStep::LiftImp(k) => write!(self.out, "(lift-imp {k})").expect("string"),
                        ScriptStep::RewriteEval(p) => {
                            write!(self.out, "(rewrite-eval {})", path_text(p)).expect("string")
                        }
                        ScriptStep::Chain(l) => {
                            self.out.push_str("(chain");
                            self.child(l, inner + 4);
                            self.out.push(')');
                        }
                        ScriptStep::Instantiate(l) => {
                            self.out.push_str("(instantiate");
                            self.child(l, inner + 4);
                            self.out.push(')');
                        }
                    }
                }
                self.out.push_str("))");
            }
            Script::Taut(f) => write!(self.out, "(taut \"{f}\")").expect("string"),
            Script::Eval(t) => write!(self.out, "(eval \"{t}\")").expect("string"),
            Script::A1(f) => write!(self.out, "(A1 \"{f}\")").expect("string"),
            Script::A2(f) => write!(self.out, "(A2 \"{f}\")").expect("string"),
            Script::Diag(f, v) => write!(self.out, "(diag \"{f}\" {v})").expect("string"),
            Script::Rewrite { eq, formula, path } => {
                self.out.push_str("(rewrite");
                self.child(eq, inner);
                write!(self.out, "\n{}\"{formula}\" {})", " ".repeat(inner), path_text(path))
                    .expect("string");
            }
            Script::Convert { proof, target, paths } => {
                self.out.push_str("(convert");
                self.child(proof, inner);
                write!(self.out, "\n{}\"{target}\"", " ".repeat(inner)).expect("string");
                for p in paths {
                    write!(self.out, " {}", path_text(p)).expect("string");
                }
                self.out.push(')');
            }
        }
    }
}

/// Renders scripts in the format read by [`parse_script`]. Nodes used more
/// than once become `def`s, so shared lemmas are written and expanded once.
pub fn write_script(theory: &TheoryConfig, theorems: &[ScriptTheorem]) -> String {
    let mut refs: HashMap<usize, usize> = HashMap::new();
    let mut order: Vec<Arc<Script>> = Vec::new();
    // Iterative post-order over the DAG, counting references.
    let mut stack: Vec<(Arc<Script>, bool)> = Vec::new();
    for t in theorems.iter().rev() {
        stack.push((t.script.clone(), false));
    }
    let mut seen: HashMap<usize, ()> = HashMap::new();
    for t in theorems {
        *refs.entry(key(&t.script)).or_default() += 1;
    }
    while let Some((node, done)) = stack.pop() {
        if done {
            order.push(node);
            continue;
        }
        if seen.insert(key(&node), ()).is_some() {
            continue;
        }
        stack.push((node.clone(), true));
        for c in node.children().into_iter().rev() {
            *refs.entry(key(c)).or_default() += 1;
            stack.push((c.clone(), false));
        }
    }
    let mut w = Writer { names: HashMap::new(), out: String::new() };
    writeln!(w.out, "(theory {})", theory.name()).expect("string");
    let mut n = 0;
    for node in &order {
        let shared = refs.get(&key(node)).copied().unwrap_or(0) > 1;
        if shared && !matches!(&**node, Script::Axiom(..)) {
            n += 1;
            let name = format!("p{n}");
            w.out.push_str(&format!("\n(def {name}\n  "));
            w.node(node, 2);
            w.out.push_str(")\n");
            w.names.insert(key(node), name);
        }
    }
    for t in theorems {
        write!(w.out, "\n(theorem {}\n  ", t.label).expect("string");
        w.expr(&t.script, 2);
        if let Some(c) = &t.claim {
            write!(w.out, "\n  \"{c}\"").expect("string");
        }
        w.out.push_str(")\n");
    }
    w.out
}
