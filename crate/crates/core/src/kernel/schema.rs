//! Axiom schemas and their recognizers.
//!
//! Each recognizer either accepts a formula as an instance or reports how far
//! the match got, which is used to point at the nearest schema when a claimed
//! axiom is rejected.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arithmetization::{
    as_numeral, decode_formula, encode_formula_code, iter_step_code, numeral, numeral_u64, sub_value, Code,
};
use crate::syntax::{FnSymbol, Formula, Term, Var};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SchemaId {
    Prop1,
    Prop2,
    Prop3,
    Quant1,
    Quant2,
    Eq1,
    Eq2,
    Eq3,
    Q1,
    Q2,
    Q3,
    Q4,
    Q5,
    Q6,
    Q7,
    Cons,
    TImp,
    UInf,
    CompSub,
    CompIter0,
    CompIterStep,
    CompSucc,
}

impl SchemaId {
    pub const ALL: [SchemaId; 22] = [
        SchemaId::Prop1,
        SchemaId::Prop2,
        SchemaId::Prop3,
        SchemaId::Quant1,
        SchemaId::Quant2,
        SchemaId::Eq1,
        SchemaId::Eq2,
        SchemaId::Eq3,
        SchemaId::Q1,
        SchemaId::Q2,
        SchemaId::Q3,
        SchemaId::Q4,
        SchemaId::Q5,
        SchemaId::Q6,
        SchemaId::Q7,
        SchemaId::Cons,
        SchemaId::TImp,
        SchemaId::UInf,
        SchemaId::CompSub,
        SchemaId::CompIter0,
        SchemaId::CompIterStep,
        SchemaId::CompSucc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemaId::Prop1 => "PROP1",
            SchemaId::Prop2 => "PROP2",
            SchemaId::Prop3 => "PROP3",
            SchemaId::Quant1 => "QUANT1",
            SchemaId::Quant2 => "QUANT2",
            SchemaId::Eq1 => "EQ1",
            SchemaId::Eq2 => "EQ2",
            SchemaId::Eq3 => "EQ3",
            SchemaId::Q1 => "Q1",
            SchemaId::Q2 => "Q2",
            SchemaId::Q3 => "Q3",
            SchemaId::Q4 => "Q4",
            SchemaId::Q5 => "Q5",
            SchemaId::Q6 => "Q6",
            SchemaId::Q7 => "Q7",
            SchemaId::Cons => "CONS",
            SchemaId::TImp => "TIMP",
            SchemaId::UInf => "UINF",
            SchemaId::CompSub => "COMP_SUB",
            SchemaId::CompIter0 => "COMP_ITER0",
            SchemaId::CompIterStep => "COMP_ITER_STEP",
            SchemaId::CompSucc => "COMP_SUCC",
        }
    }

    pub fn from_name(name: &str) -> Option<SchemaId> {
        SchemaId::ALL.iter().copied().find(|s| s.name().eq_ignore_ascii_case(name))
    }

    pub fn is_truth_schema(self) -> bool {
        matches!(self, SchemaId::Cons | SchemaId::TImp | SchemaId::UInf)
    }

    pub fn is_computation_schema(self) -> bool {
        matches!(self, SchemaId::CompSub | SchemaId::CompIter0 | SchemaId::CompIterStep | SchemaId::CompSucc)
    }

    pub fn is_q_schema(self) -> bool {
        matches!(
            self,
            SchemaId::Q1
                | SchemaId::Q2
                | SchemaId::Q3
                | SchemaId::Q4
                | SchemaId::Q5
                | SchemaId::Q6
                | SchemaId::Q7
        )
    }
}

impl fmt::Display for SchemaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A failed match. `depth` counts how many structural checks passed first.
#[derive(Debug, Clone)]
pub struct Miss {
    pub depth: u8,
    pub reason: String,
}

fn miss<T>(depth: u8, reason: impl Into<String>) -> Result<T, Miss> {
    Err(Miss { depth, reason: reason.into() })
}

type Match = Result<(), Miss>;

fn imp(f: &Formula) -> Option<(&Formula, &Formula)> {
    f.as_imp()
}

fn not(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::Not(a) => Some(a),
        _ => None,
    }
}

fn eq(f: &Formula) -> Option<(&Term, &Term)> {
    f.as_eq()
}

fn app(t: &Term, sym: FnSymbol) -> Option<&[Term]> {
    match t {
        Term::App(s, args) if *s == sym => Some(args),
        _ => None,
    }
}

fn succ(t: &Term) -> Option<&Term> {
    match t {
        Term::Succ(a) => Some(a),
        _ => None,
    }
}

/// Tests whether `f` is an instance of `schema`.
pub fn matches(schema: SchemaId, f: &Formula) -> Match {
    match schema {
        SchemaId::Prop1 => prop1(f),
        SchemaId::Prop2 => prop2(f),
        SchemaId::Prop3 => prop3(f),
        SchemaId::Quant1 => quant1(f),
        SchemaId::Quant2 => quant2(f),
        SchemaId::Eq1 => eq1(f),
        SchemaId::Eq2 => eq2(f),
        SchemaId::Eq3 => eq3(f),
        SchemaId::Q1 => q1(f),
        SchemaId::Q2 => q2(f),
        SchemaId::Q3 => q3(f),
        SchemaId::Q4 => q4(f),
        SchemaId::Q5 => q5(f),
        SchemaId::Q6 => q6(f),
        SchemaId::Q7 => q7(f),
        SchemaId::Cons => cons(f),
        SchemaId::TImp => timp(f),
        SchemaId::UInf => uinf(f),
        SchemaId::CompSub => comp_sub(f),
        SchemaId::CompIter0 => comp_iter0(f),
        SchemaId::CompIterStep => comp_iter_step(f),
        SchemaId::CompSucc => comp_succ(f),
    }
}

/// Every schema the formula instantiates, ignoring which ones a theory enables.
pub fn matching_schemas(f: &Formula) -> Vec<SchemaId> {
    SchemaId::ALL.iter().copied().filter(|s| matches(*s, f).is_ok()).collect()
}

/// The schema whose recognizer got furthest before failing, with its reason.
pub fn nearest_miss(f: &Formula) -> (SchemaId, Miss) {
    let mut best: Option<(SchemaId, Miss)> = None;
    for s in SchemaId::ALL {
        if let Err(m) = matches(s, f) {
            if best.as_ref().is_none_or(|(_, b)| m.depth > b.depth) {
                best = Some((s, m));
            }
        }
    }
    best.expect("at least one schema fails")
}

// A -> (B -> A)
fn prop1(f: &Formula) -> Match {
    let Some((a, rest)) = imp(f) else { return miss(0, "not an implication") };
    let Some((_, a2)) = imp(rest) else { return miss(1, "consequent is not an implication") };
    if a != a2 {
        return miss(2, "innermost consequent differs from the antecedent");
    }
    Ok(())
}

// (A -> (B -> C)) -> ((A -> B) -> (A -> C))
fn prop2(f: &Formula) -> Match {
    let Some((l, r)) = imp(f) else { return miss(0, "not an implication") };
    let Some((a, bc)) = imp(l) else { return miss(1, "antecedent is not an implication") };
    let Some((b, c)) = imp(bc) else { return miss(1, "antecedent has the wrong shape") };
    let Some((ab, ac)) = imp(r) else { return miss(2, "consequent is not an implication") };
    let Some((a2, b2)) = imp(ab) else { return miss(2, "consequent has the wrong shape") };
    let Some((a3, c2)) = imp(ac) else { return miss(2, "consequent has the wrong shape") };
    if a != a2 || a != a3 {
        return miss(3, "the three occurrences of A differ");
    }
    if b != b2 {
        return miss(4, "the two occurrences of B differ");
    }
    if c != c2 {
        return miss(4, "the two occurrences of C differ");
    }
    Ok(())
}

// (~C -> ~B) -> ((~C -> B) -> C)
fn prop3(f: &Formula) -> Match {
    let Some((l, r)) = imp(f) else { return miss(0, "not an implication") };
    let Some((nc, nb)) = imp(l) else { return miss(1, "antecedent is not an implication") };
    let (Some(c), Some(b)) = (not(nc), not(nb)) else {
        return miss(1, "antecedent is not of the form ~C -> ~B");
    };
    let Some((ncb, c3)) = imp(r) else { return miss(2, "consequent is not an implication") };
    let Some((nc2, b2)) = imp(ncb) else { return miss(2, "consequent has the wrong shape") };
    let Some(c2) = not(nc2) else { return miss(2, "consequent has the wrong shape") };
    if c != c2 || c != c3 {
        return miss(3, "the occurrences of C differ");
    }
    if b != b2 {
        return miss(3, "the occurrences of B differ");
    }
    Ok(())
}

/// Finds the term `t` with `pattern[x := t] == target`, by walking both in
/// parallel to the first free occurrence of `x`. Agreement elsewhere is not
/// checked here; callers re-substitute and compare.
pub(crate) fn find_instance(pattern: &Formula, x: Var, target: &Formula) -> Option<Term> {
    fn in_term(p: &Term, x: Var, t: &Term) -> Option<Term> {
        match (p, t) {
            (Term::Var(v), _) if *v == x => Some(t.clone()),
            (Term::Succ(a), Term::Succ(b)) => in_term(a, x, b),
            (Term::Add(a1, a2), Term::Add(b1, b2)) | (Term::Mul(a1, a2), Term::Mul(b1, b2)) => {
                in_term(a1, x, b1).or_else(|| in_term(a2, x, b2))
            }
            (Term::App(s1, a), Term::App(s2, b)) if s1 == s2 => {
                a.iter().zip(b.iter()).find_map(|(a, b)| in_term(a, x, b))
            }
            _ => None,
        }
    }
    match (pattern, target) {
        (Formula::Eq(a1, a2), Formula::Eq(b1, b2)) => in_term(a1, x, b1).or_else(|| in_term(a2, x, b2)),
        (Formula::Tr(a), Formula::Tr(b)) => in_term(a, x, b),
        (Formula::Not(a), Formula::Not(b)) => find_instance(a, x, b),
        (Formula::Imp(a1, a2), Formula::Imp(b1, b2)) => {
            find_instance(a1, x, b1).or_else(|| find_instance(a2, x, b2))
        }
        (Formula::Forall(v, a), Formula::Forall(_, b)) if *v != x => find_instance(a, x, b),
        _ => None,
    }
}

// forall x. A -> A[x := t]
fn quant1(f: &Formula) -> Match {
    let Some((l, r)) = imp(f) else { return miss(0, "not an implication") };
    let Formula::Forall(x, a) = l else { return miss(1, "antecedent is not universal") };
    let t = if a.has_free(*x) {
        match find_instance(a, *x, r) {
            Some(t) => t,
            None => return miss(2, "consequent is not an instance of the quantified body"),
        }
    } else {
        Term::Var(*x)
    };
    if a.substitute(*x, &t) != *r {
        return miss(3, "consequent is not an instance of the quantified body");
    }
    Ok(())
}

// forall x. (A -> B) -> (A -> forall x. B), x not free in A
fn quant2(f: &Formula) -> Match {
    let Some((l, r)) = imp(f) else { return miss(0, "not an implication") };
    let Formula::Forall(x, ab) = l else { return miss(1, "antecedent is not universal") };
    let Some((a, b)) = imp(ab) else { return miss(1, "quantified body is not an implication") };
    let Some((a2, fb)) = imp(r) else { return miss(2, "consequent is not an implication") };
    let Formula::Forall(x2, b2) = fb else {
        return miss(2, "consequent is not of the form A -> forall x. B");
    };
    if x != x2 || a != a2 || *b != **b2 {
        return miss(3, "the two sides do not agree");
    }
    if a.has_free(*x) {
        return miss(4, format!("{x} occurs free in the antecedent"));
    }
    Ok(())
}

// t = t
fn eq1(f: &Formula) -> Match {
    let Some((a, b)) = eq(f) else { return miss(0, "not an equation") };
    if a != b {
        return miss(1, "the two sides differ");
    }
    Ok(())
}

fn same_head(a: &Term, b: &Term) -> bool {
    match (a, b) {
        (Term::Succ(_), Term::Succ(_)) | (Term::Add(..), Term::Add(..)) | (Term::Mul(..), Term::Mul(..)) => {
            true
        }
        (Term::App(s, _), Term::App(r, _)) => s == r,
        _ => false,
    }
}

// s = t -> F(.., s, ..) = F(.., t, ..)
fn eq2(f: &Formula) -> Match {
    let Some((l, r)) = imp(f) else { return miss(0, "not an implication") };
    let Some((s, t)) = eq(l) else { return miss(1, "antecedent is not an equation") };
    let Some((lhs, rhs)) = eq(r) else { return miss(1, "consequent is not an equation") };
    if !same_head(lhs, rhs) {
        return miss(2, "consequent sides do not share a function symbol");
    }
    let n = lhs.arity();
    let differing: Vec<usize> = (0..n).filter(|i| lhs.child(*i) != rhs.child(*i)).collect();
    match differing.as_slice() {
        [i] => {
            if lhs.child(*i) == Some(s) && rhs.child(*i) == Some(t) {
                Ok(())
            } else {
                miss(3, "the differing arguments are not the two sides of the antecedent")
            }
        }
        [] => {
            if s == t && (0..n).any(|i| lhs.child(i) == Some(s)) {
                Ok(())
            } else {
                miss(3, "no argument position carries the antecedent")
            }
        }
        _ => miss(3, "more than one argument position differs"),
    }
}

// s = t -> (s = r -> t = r), s = t -> (r = s -> r = t), s = t -> (T(s) -> T(t))
fn eq3(f: &Formula) -> Match {
    let Some((l, r)) = imp(f) else { return miss(0, "not an implication") };
    let Some((s, t)) = eq(l) else { return miss(1, "antecedent is not an equation") };
    let Some((p, q)) = imp(r) else { return miss(1, "consequent is not an implication") };
    if s == t {
        return miss(2, "the equated terms are identical");
    }
    let ok = match (p, q) {
        (Formula::Eq(p1, p2), Formula::Eq(q1, q2)) => {
            (p1 == s && q1 == t && p2 == q2) || (p2 == s && q2 == t && p1 == q1)
        }
        (Formula::Tr(a), Formula::Tr(b)) => a == s && b == t,
        _ => false,
    };
    if !ok {
        return miss(3, "consequent does not replace one occurrence of the left side by the right");
    }
    Ok(())
}

// S(a) = S(b) -> a = b
fn q1(f: &Formula) -> Match {
    let Some((l, r)) = imp(f) else { return miss(0, "not an implication") };
    let Some((sa, sb)) = eq(l) else { return miss(1, "antecedent is not an equation") };
    let (Some(a), Some(b)) = (succ(sa), succ(sb)) else {
        return miss(1, "antecedent is not an equation between successors");
    };
    let Some((a2, b2)) = eq(r) else { return miss(2, "consequent is not an equation") };
    if a != a2 || b != b2 {
        return miss(3, "consequent does not strip the successors");
    }
    Ok(())
}

// ~(0 = S(a))
fn q2(f: &Formula) -> Match {
    let Some(e) = not(f) else { return miss(0, "not a negation") };
    let Some((z, s)) = eq(e) else { return miss(1, "negated formula is not an equation") };
    if *z != Term::Zero || succ(s).is_none() {
        return miss(2, "negated equation is not of the form 0 = S(a)");
    }
    Ok(())
}

// ~(a = 0) -> exists y. a = S(y), y not in a
fn q3(f: &Formula) -> Match {
    let Some((l, r)) = imp(f) else { return miss(0, "not an implication") };
    let Some((a, z)) = not(l).and_then(eq) else { return miss(1, "antecedent is not ~(a = 0)") };
    if *z != Term::Zero {
        return miss(1, "antecedent is not ~(a = 0)");
    }
    let Some(Formula::Forall(y, body)) = not(r) else {
        return miss(2, "consequent is not existential");
    };
    let Some((a2, sy)) = not(body).and_then(eq) else {
        return miss(2, "consequent is not of the form exists y. a = S(y)");
    };
    if a != a2 || succ(sy) != Some(&Term::Var(*y)) {
        return miss(3, "consequent is not of the form exists y. a = S(y)");
    }
    if a.has_free(*y) {
        return miss(4, format!("{y} occurs in the term"));
    }
    Ok(())
}

// a + 0 = a
fn q4(f: &Formula) -> Match {
    let Some((l, r)) = eq(f) else { return miss(0, "not an equation") };
    let Term::Add(a, z) = l else { return miss(1, "left side is not a sum") };
    if **z != Term::Zero || **a != *r {
        return miss(2, "not of the form a + 0 = a");
    }
    Ok(())
}

// a + S(b) = S(a + b)
fn q5(f: &Formula) -> Match {
    let Some((l, r)) = eq(f) else { return miss(0, "not an equation") };
    let Term::Add(a, sb) = l else { return miss(1, "left side is not a sum") };
    let Some(b) = succ(sb) else { return miss(1, "left side is not of the form a + S(b)") };
    let Some(Term::Add(a2, b2)) = succ(r) else { return miss(2, "right side is not S(a + b)") };
    if a != a2 || *b != **b2 {
        return miss(3, "right side is not S(a + b)");
    }
    Ok(())
}

// a * 0 = 0
fn q6(f: &Formula) -> Match {
    let Some((l, r)) = eq(f) else { return miss(0, "not an equation") };
    let Term::Mul(_, z) = l else { return miss(1, "left side is not a product") };
    if **z != Term::Zero || *r != Term::Zero {
        return miss(2, "not of the form a * 0 = 0");
    }
    Ok(())
}

// a * S(b) = a * b + a
fn q7(f: &Formula) -> Match {
    let Some((l, r)) = eq(f) else { return miss(0, "not an equation") };
    let Term::Mul(a, sb) = l else { return miss(1, "left side is not a product") };
    let Some(b) = succ(sb) else { return miss(1, "left side is not of the form a * S(b)") };
    let Term::Add(ab, a3) = r else { return miss(2, "right side is not a sum") };
    let Term::Mul(a2, b2) = &**ab else { return miss(2, "right side is not a * b + a") };
    if a != a2 || a != a3 || *b != **b2 {
        return miss(3, "right side is not a * b + a");
    }
    Ok(())
}

fn sentence_code(t: &Term, depth: u8, what: &str) -> Result<Formula, Miss> {
    let Some(n) = as_numeral(t) else {
        return miss(depth, format!("{what} is not a numeral"));
    };
    match decode_formula(&Code(n)) {
        Ok(f) if f.is_sentence() => Ok(f),
        Ok(_) => miss(depth, format!("{what} codes a formula that is not a sentence")),
        Err(e) => miss(depth, format!("{what} is not the code of a formula: {e}")),
    }
}

fn is_code_of(t: &Term, f: &Formula) -> bool {
    as_numeral(t).is_some_and(|n| n == encode_formula_code(f).0)
}

// T⌜~φ⌝ -> ~T⌜φ⌝
fn cons(f: &Formula) -> Match {
    let Some((l, r)) = imp(f) else { return miss(0, "not an implication") };
    let Formula::Tr(a) = l else { return miss(1, "antecedent is not a truth ascription") };
    let Some(Formula::Tr(b)) = not(r) else { return miss(1, "consequent is not a negated truth ascription") };
    let phi = sentence_code(a, 2, "antecedent argument")?;
    let Some(inner) = not(&phi) else { return miss(2, "antecedent does not code a negation") };
    if !is_code_of(b, inner) {
        return miss(3, "consequent does not name the negated sentence");
    }
    Ok(())
}

// T⌜φ -> ψ⌝ -> (T⌜φ⌝ -> T⌜ψ⌝)
fn timp(f: &Formula) -> Match {
    let Some((l, r)) = imp(f) else { return miss(0, "not an implication") };
    let Formula::Tr(a) = l else { return miss(1, "antecedent is not a truth ascription") };
    let Some((Formula::Tr(b), Formula::Tr(c))) = imp(r) else {
        return miss(1, "consequent is not of the form T(s) -> T(t)");
    };
    let code = sentence_code(a, 2, "antecedent argument")?;
    let Some((phi, psi)) = code.as_imp() else { return miss(2, "antecedent does not code an implication") };
    if !is_code_of(b, phi) || !is_code_of(c, psi) {
        return miss(3, "consequent does not name the two sides of the coded implication");
    }
    Ok(())
}

// forall x. T(sub(⌜φ⌝, v̄, x)) -> T⌜forall v. φ⌝
fn uinf(f: &Formula) -> Match {
    let Some((l, r)) = imp(f) else { return miss(0, "not an implication") };
    let Formula::Forall(x, body) = l else { return miss(1, "antecedent is not universal") };
    let Formula::Tr(dot) = &**body else { return miss(1, "antecedent is not a universal truth ascription") };
    let Some(args) = app(dot, FnSymbol::Sub) else { return miss(2, "truth ascription is not of a dot term") };
    if args[2] != Term::Var(*x) {
        return miss(2, "dot term is not taken at the quantified variable");
    }
    let Formula::Tr(c) = r else { return miss(2, "consequent is not a truth ascription") };
    let Some(code) = as_numeral(&args[0]) else { return miss(3, "dot term does not start with a numeral") };
    let phi = match decode_formula(&Code(code)) {
        Ok(phi) => phi,
        Err(e) => return miss(3, format!("dot term does not name a formula: {e}")),
    };
    let Some(v) = as_numeral(&args[1]).and_then(|v| v.to_u32()).map(Var) else {
        return miss(3, "dot term does not name a variable");
    };
    if phi.free_vars().iter().any(|w| *w != v) {
        return miss(4, format!("named formula has free variables other than {v}"));
    }
    if !is_code_of(c, &Formula::forall(v, phi)) {
        return miss(4, "consequent does not name the universal closure");
    }
    Ok(())
}

fn closed_numeral(t: &Term, depth: u8, what: &str) -> Result<BigUint, Miss> {
    match as_numeral(t) {
        Some(n) => Ok(n),
        None => miss(depth, format!("{what} is not a numeral")),
    }
}

// sub(c̄, v̄, n̄) = k̄
fn comp_sub(f: &Formula) -> Match {
    let Some((l, r)) = eq(f) else { return miss(0, "not an equation") };
    let Some(args) = app(l, FnSymbol::Sub) else { return miss(1, "left side is not sub(..)") };
    let c = closed_numeral(&args[0], 2, "first argument")?;
    let v = closed_numeral(&args[1], 2, "second argument")?;
    let n = closed_numeral(&args[2], 2, "third argument")?;
    let k = closed_numeral(r, 2, "right side")?;
    match sub_value(&c, &v, &n) {
        Ok(expected) if expected == k => Ok(()),
        Ok(_) => miss(3, "right side is not the value of the substitution"),
        Err(e) => miss(3, format!("first argument is not the code of a formula: {e}")),
    }
}

// iter(0, t) = t
fn comp_iter0(f: &Formula) -> Match {
    let Some((l, r)) = eq(f) else { return miss(0, "not an equation") };
    let Some(args) = app(l, FnSymbol::Iter) else { return miss(1, "left side is not iter(..)") };
    if args[0] != Term::Zero {
        return miss(2, "iteration count is not 0");
    }
    if args[1] != *r {
        return miss(3, "right side is not the iterated term");
    }
    Ok(())
}

// iter(S(s), t) = sub(sub(⌜T(iter(y, z))⌝, z̄, t), ȳ, s)
fn comp_iter_step(f: &Formula) -> Match {
    let Some((l, r)) = eq(f) else { return miss(0, "not an equation") };
    let Some(args) = app(l, FnSymbol::Iter) else { return miss(1, "left side is not iter(..)") };
    let Some(s) = succ(&args[0]) else { return miss(2, "iteration count is not a successor") };
    let t = &args[1];
    let Some(outer) = app(r, FnSymbol::Sub) else { return miss(2, "right side is not sub(..)") };
    let Some(inner) = app(&outer[0], FnSymbol::Sub) else {
        return miss(3, "right side is not a nested sub(..)");
    };
    if as_numeral(&inner[0]).as_ref() != Some(&iter_step_code().0)
        || inner[1] != numeral_u64(u64::from(Var::Z.0))
        || outer[1] != numeral_u64(u64::from(Var::Y.0))
    {
        return miss(4, "right side does not use the iteration template");
    }
    if inner[2] != *t || outer[2] != *s {
        return miss(4, "right side does not carry the arguments of iter");
    }
    Ok(())
}

// closed S/+/* applied to numerals equals the numeral of the result
fn comp_succ(f: &Formula) -> Match {
    let Some((l, r)) = eq(f) else { return miss(0, "not an equation") };
    let result = closed_numeral(r, 1, "right side")?;
    let expected = match l {
        Term::Succ(a) => closed_numeral(a, 2, "argument")? + 1u32,
        Term::Add(a, b) | Term::Mul(a, b) => {
            let x = closed_numeral(a, 2, "first argument")?;
            let y = closed_numeral(b, 2, "second argument")?;
            if y.is_zero() {
                return miss(2, "second argument is 0");
            }
            if matches!(l, Term::Add(..)) {
                x + y
            } else {
                x * y
            }
        }
        _ => return miss(1, "left side is not S, + or * of numerals"),
    };
    if *l == numeral(&expected) {
        return miss(3, "left side is already the numeral");
    }
    if expected != result {
        return miss(3, "right side is not the value of the left side");
    }
    Ok(())
}
