//! Propositional reasoning in the three-axiom Hilbert system: hypothetical
//! derivations with a deduction-theorem discharge, a small lemma library, and
//! a tautology prover.

use std::collections::HashMap;
use std::sync::Arc;

use crate::kernel::{Proof, SchemaId};
use crate::syntax::Formula;

use super::{mp, Pf, TacticError};

// ---------------------------------------------------------------------------
// Hypothetical derivations

struct HDeriv {
    node: HNode,
    formula: Formula,
    hyps: Vec<Formula>,
}

enum HNode {
    Hyp,
    Closed(Arc<Proof>),
    Mp(H, H),
}

type H = Arc<HDeriv>;

fn hyp(f: &Formula) -> H {
    Arc::new(HDeriv { node: HNode::Hyp, formula: f.clone(), hyps: vec![f.clone()] })
}

fn closed(p: &Pf) -> H {
    Arc::new(HDeriv { node: HNode::Closed(p.proof.clone()), formula: p.formula.clone(), hyps: vec![] })
}

fn hmp(minor: &H, major: &H) -> H {
    let (a, b) = major.formula.as_imp().expect("major premise is an implication");
    debug_assert!(*a == minor.formula);
    let mut hyps = minor.hyps.clone();
    for h in &major.hyps {
        if !hyps.contains(h) {
            hyps.push(h.clone());
        }
    }
    Arc::new(HDeriv { node: HNode::Mp(minor.clone(), major.clone()), formula: b.clone(), hyps })
}

/// Deduction theorem: from a derivation of `B` under `h`, one of `h -> B`
/// without `h`.
fn discharge(h: &Formula, d: &H) -> H {
    fn go(h: &Formula, d: &H, memo: &mut HashMap<usize, H>) -> H {
        let key = Arc::as_ptr(d) as usize;
        if let Some(r) = memo.get(&key) {
            return r.clone();
        }
        let r = if !d.hyps.contains(h) {
            hmp(d, &closed(&prop1(&d.formula, h)))
        } else {
            match &d.node {
                HNode::Hyp => closed(&id(h)),
                HNode::Closed(_) => unreachable!("closed derivations have no hypotheses"),
                HNode::Mp(a, b) => {
                    let ga = go(h, a, memo);
                    let gb = go(h, b, memo);
                    let (x, y) = b.formula.as_imp().expect("major premise is an implication");
                    let p2 = closed(&prop2(h, x, y));
                    hmp(&ga, &hmp(&gb, &p2))
                }
            }
        };
        memo.insert(key, r.clone());
        r
    }
    go(h, d, &mut HashMap::new())
}

fn discharge_all(hyps: &[&Formula], d: &H) -> H {
    hyps.iter().rev().fold(d.clone(), |acc, h| discharge(h, &acc))
}

fn to_pf(d: &H) -> Pf {
    fn go(d: &H, memo: &mut HashMap<usize, Pf>) -> Pf {
        let key = Arc::as_ptr(d) as usize;
        if let Some(p) = memo.get(&key) {
            return p.clone();
        }
        let p = match &d.node {
            HNode::Hyp => panic!("undischarged hypothesis {}", d.formula),
            HNode::Closed(p) => Pf::from_parts(p.clone(), d.formula.clone()),
            HNode::Mp(a, b) => mp(&go(a, memo), &go(b, memo)),
        };
        memo.insert(key, p.clone());
        p
    }
    assert!(d.hyps.is_empty(), "derivation still depends on hypotheses");
    go(d, &mut HashMap::new())
}

// ---------------------------------------------------------------------------
// Axioms and lemmas

fn imp(a: &Formula, b: &Formula) -> Formula {
    Formula::imp(a.clone(), b.clone())
}

fn neg(a: &Formula) -> Formula {
    Formula::not(a.clone())
}

/// `A -> (B -> A)`
pub(crate) fn prop1(a: &Formula, b: &Formula) -> Pf {
    Pf::axiom(SchemaId::Prop1, imp(a, &imp(b, a)))
}

/// `(A -> (B -> C)) -> ((A -> B) -> (A -> C))`
pub(crate) fn prop2(a: &Formula, b: &Formula, c: &Formula) -> Pf {
    Pf::axiom(SchemaId::Prop2, imp(&imp(a, &imp(b, c)), &imp(&imp(a, b), &imp(a, c))))
}

/// `(~C -> ~B) -> ((~C -> B) -> C)`
pub(crate) fn prop3(b: &Formula, c: &Formula) -> Pf {
    Pf::axiom(SchemaId::Prop3, imp(&imp(&neg(c), &neg(b)), &imp(&imp(&neg(c), b), c)))
}

/// `A -> A`
pub fn id(a: &Formula) -> Pf {
    let aa = imp(a, a);
    let m = mp(&prop1(a, &aa), &prop2(a, &aa, a));
    mp(&prop1(a, a), &m)
}

/// `~~B -> B`
pub fn dn_elim(b: &Formula) -> Pf {
    let nb = neg(b);
    let nnb = neg(&nb);
    let h = hyp(&nnb);
    let s1 = hmp(&h, &closed(&prop1(&nnb, &nb)));
    let s2 = hmp(&s1, &closed(&prop3(&nb, b)));
    let s3 = hmp(&closed(&id(&nb)), &s2);
    to_pf(&discharge(&nnb, &s3))
}

/// `B -> ~~B`
pub fn dn_intro(b: &Formula) -> Pf {
    let nb = neg(b);
    let nnb = neg(&nb);
    let nnnb = neg(&nnb);
    let m = mp(&dn_elim(&nb), &prop3(b, &nnb));
    let h = hyp(b);
    let s = hmp(&h, &closed(&prop1(b, &nnnb)));
    let r = hmp(&s, &closed(&m));
    to_pf(&discharge(b, &r))
}

/// `~B -> (B -> C)`
pub fn efq(b: &Formula, c: &Formula) -> Pf {
    let nb = neg(b);
    let nc = neg(c);
    let hb = hyp(b);
    let hnb = hyp(&nb);
    let k1 = hmp(&hb, &closed(&prop1(b, &nc)));
    let k2 = hmp(&hnb, &closed(&prop1(&nb, &nc)));
    let r = hmp(&k1, &hmp(&k2, &closed(&prop3(b, c))));
    to_pf(&discharge_all(&[&nb, b], &r))
}

/// `(~C -> ~B) -> (B -> C)`
pub fn contra(b: &Formula, c: &Formula) -> Pf {
    let h1 = imp(&neg(c), &neg(b));
    let s = hmp(&hyp(&h1), &closed(&prop3(b, c)));
    let t = hmp(&hyp(b), &closed(&prop1(b, &neg(c))));
    let r = hmp(&t, &s);
    to_pf(&discharge_all(&[&h1, b], &r))
}

/// `(A -> B) -> (~B -> ~A)`
pub fn contrapos(a: &Formula, b: &Formula) -> Pf {
    let ab = imp(a, b);
    let nna = neg(&neg(a));
    let x = hmp(&hyp(&nna), &closed(&dn_elim(a)));
    let y = hmp(&x, &hyp(&ab));
    let z = hmp(&y, &closed(&dn_intro(b)));
    let inner = discharge(&nna, &z);
    let r = hmp(&inner, &closed(&contra(&neg(b), &neg(a))));
    to_pf(&discharge(&ab, &r))
}

/// `B -> (~C -> ~(B -> C))`
pub fn neg_imp(b: &Formula, c: &Formula) -> Pf {
    let bc = imp(b, c);
    let x = hmp(&hyp(b), &hyp(&bc));
    let inner = discharge(&bc, &x);
    let r = hmp(&inner, &closed(&contrapos(&bc, c)));
    to_pf(&discharge(b, &r))
}

/// `(B -> C) -> ((~B -> C) -> C)`
pub fn cases(b: &Formula, c: &Formula) -> Pf {
    let bc = imp(b, c);
    let nb = neg(b);
    let nbc = imp(&nb, c);
    let x = hmp(&hyp(&bc), &closed(&contrapos(b, c)));
    let y = hmp(&hyp(&nbc), &closed(&contrapos(&nb, c)));
    let a3 = closed(&prop3(&nb, c));
    let r = hmp(&x, &hmp(&y, &a3));
    to_pf(&discharge_all(&[&bc, &nbc], &r))
}

/// `X -> (Y -> X & Y)`
pub fn and_intro(x: &Formula, y: &Formula) -> Pf {
    let ny = neg(y);
    let nny = hmp(&hyp(y), &closed(&dn_intro(y)));
    let s = hmp(&hyp(x), &closed(&neg_imp(x, &ny)));
    let r = hmp(&nny, &s);
    to_pf(&discharge_all(&[x, y], &r))
}

/// `X & Y -> X`
pub fn and_elim_l(x: &Formula, y: &Formula) -> Pf {
    let xny = imp(x, &neg(y));
    let m = mp(&efq(x, &neg(y)), &contrapos(&neg(x), &xny));
    let conj = neg(&xny);
    let r = hmp(&hmp(&hyp(&conj), &closed(&m)), &closed(&dn_elim(x)));
    to_pf(&discharge(&conj, &r))
}

/// `X & Y -> Y`
pub fn and_elim_r(x: &Formula, y: &Formula) -> Pf {
    let ny = neg(y);
    let xny = imp(x, &ny);
    let m = mp(&prop1(&ny, x), &contrapos(&ny, &xny));
    let conj = neg(&xny);
    let r = hmp(&hmp(&hyp(&conj), &closed(&m)), &closed(&dn_elim(y)));
    to_pf(&discharge(&conj, &r))
}

/// `(A -> B) -> ((B -> C) -> (A -> C))`
pub fn syl(a: &Formula, b: &Formula, c: &Formula) -> Pf {
    let ab = imp(a, b);
    let bc = imp(b, c);
    let r = hmp(&hmp(&hyp(a), &hyp(&ab)), &hyp(&bc));
    to_pf(&discharge_all(&[&ab, &bc, a], &r))
}

/// `(B -> C) -> ((A -> B) -> (A -> C))`
pub(crate) fn syl_r(a: &Formula, b: &Formula, c: &Formula) -> Pf {
    let ab = imp(a, b);
    let bc = imp(b, c);
    let r = hmp(&hmp(&hyp(a), &hyp(&ab)), &hyp(&bc));
    to_pf(&discharge_all(&[&bc, &ab, a], &r))
}

fn split_imp(p: &Pf) -> Result<(Formula, Formula), TacticError> {
    p.formula
        .as_imp()
        .map(|(a, b)| (a.clone(), b.clone()))
        .ok_or_else(|| TacticError::Shape(format!("{} is not an implication", p.formula)))
}

fn split_iff(p: &Pf) -> Result<(Formula, Formula), TacticError> {
    p.formula
        .as_iff()
        .map(|(a, b)| (a.clone(), b.clone()))
        .ok_or_else(|| TacticError::Shape(format!("{} is not a biconditional", p.formula)))
}

/// From `A -> B` and `B -> C`, `A -> C`.
pub fn syl_pf(p: &Pf, q: &Pf) -> Result<Pf, TacticError> {
    let (a, b) = split_imp(p)?;
    let (b2, c) = split_imp(q)?;
    if b != b2 {
        return Err(TacticError::Shape(format!("cannot chain {} with {}", p.formula, q.formula)));
    }
    Ok(mp(q, &mp(p, &syl(&a, &b, &c))))
}

pub fn iff_intro(fwd: &Pf, bwd: &Pf) -> Result<Pf, TacticError> {
    let (a, b) = split_imp(fwd)?;
    let (b2, a2) = split_imp(bwd)?;
    if a != a2 || b != b2 {
        return Err(TacticError::Shape(format!(
            "{} and {} are not converse implications",
            fwd.formula, bwd.formula
        )));
    }
    Ok(mp(bwd, &mp(fwd, &and_intro(&fwd.formula, &bwd.formula))))
}

pub fn iff_elim_l(p: &Pf) -> Result<Pf, TacticError> {
    let (a, b) = split_iff(p)?;
    Ok(mp(p, &and_elim_l(&imp(&a, &b), &imp(&b, &a))))
}

pub fn iff_elim_r(p: &Pf) -> Result<Pf, TacticError> {
    let (a, b) = split_iff(p)?;
    Ok(mp(p, &and_elim_r(&imp(&a, &b), &imp(&b, &a))))
}

pub fn iff_refl(a: &Formula) -> Pf {
    let i = id(a);
    iff_intro(&i, &i).expect("identity is its own converse")
}

pub fn iff_sym(p: &Pf) -> Result<Pf, TacticError> {
    iff_intro(&iff_elim_r(p)?, &iff_elim_l(p)?)
}

pub fn iff_trans(p: &Pf, q: &Pf) -> Result<Pf, TacticError> {
    let fwd = syl_pf(&iff_elim_l(p)?, &iff_elim_l(q)?)?;
    let bwd = syl_pf(&iff_elim_r(q)?, &iff_elim_r(p)?)?;
    iff_intro(&fwd, &bwd)
}

/// From `A <-> B` and `A`, `B`.
pub fn iff_mp(p: &Pf, a: &Pf) -> Result<Pf, TacticError> {
    Pf::mp(a, &iff_elim_l(p)?)
}

// ---------------------------------------------------------------------------
// Tautologies

const MAX_ATOMS: usize = 20;
const CLOSURE_LIMIT: usize = 256;

fn collect_atoms(f: &Formula, out: &mut Vec<Formula>) {
    match f {
        Formula::Not(a) => collect_atoms(a, out),
        Formula::Imp(a, b) => {
            collect_atoms(a, out);
            collect_atoms(b, out);
        }
        _ => {
            if !out.contains(f) {
                out.push(f.clone());
            }
        }
    }
}

fn truth(f: &Formula, atoms: &[Formula], assign: &[bool]) -> bool {
    match f {
        Formula::Not(a) => !truth(a, atoms, assign),
        Formula::Imp(a, b) => !truth(a, atoms, assign) || truth(b, atoms, assign),
        _ => assign[atoms.iter().position(|x| x == f).expect("atom collected")],
    }
}

/// Proves a propositional tautology, treating equations, truth ascriptions
/// and universal formulas as atoms. Non-tautologies are rejected with a
/// falsifying assignment.
pub fn taut(phi: &Formula) -> Result<Pf, TacticError> {
    if let Some(p) = mp_closure(phi) {
        return Ok(p);
    }
    let mut atoms = Vec::new();
    collect_atoms(phi, &mut atoms);
    if atoms.len() > MAX_ATOMS {
        return Err(TacticError::TooManyAtoms(atoms.len()));
    }
    let n = atoms.len();
    for row in 0u64..(1u64 << n) {
        let assign: Vec<bool> = (0..n).map(|i| row >> (n - 1 - i) & 1 == 1).collect();
        if !truth(phi, &atoms, &assign) {
            let desc: Vec<String> = atoms
                .iter()
                .zip(&assign)
                .map(|(a, v)| format!("{a} is {}", if *v { "true" } else { "false" }))
                .collect();
            return Err(TacticError::NotTautology(desc.join(", ")));
        }
    }
    let d = kalmar(phi, &atoms, &mut Vec::new());
    Ok(to_pf(&d))
}

/// Proves `conclusion` from the premises, provided
/// `P1 -> ... -> Pn -> conclusion` is a tautology.
pub fn taut_mp(premises: &[&Pf], conclusion: &Formula) -> Result<Pf, TacticError> {
    let goal = premises.iter().rev().fold(conclusion.clone(), |acc, p| imp(&p.formula, &acc));
    let mut pf = taut(&goal)?;
    for p in premises {
        pf = mp(p, &pf);
    }
    Ok(pf)
}

/// Fast path for tautologies that follow from their antecedents by modus
/// ponens and conjunction elimination alone.
fn mp_closure(phi: &Formula) -> Option<Pf> {
    let mut hyps = Vec::new();
    let mut goal = phi;
    while let Some((a, b)) = goal.as_imp() {
        hyps.push(a);
        goal = b;
    }
    let mut known: Vec<H> = Vec::new();
    for h in &hyps {
        if !known.iter().any(|k| k.formula == **h) {
            known.push(hyp(h));
        }
    }
    let found = loop {
        if let Some(k) = known.iter().find(|k| k.formula == *goal) {
            break k.clone();
        }
        let before = known.len();
        for j in 0..before {
            let kj = known[j].clone();
            if let Some((a, b)) = kj.formula.as_imp() {
                if !known.iter().any(|k| k.formula == *b) {
                    if let Some(ki) = known.iter().find(|k| k.formula == *a).cloned() {
                        known.push(hmp(&ki, &kj));
                    }
                }
            }
            if let Formula::Not(inner) = &kj.formula {
                if let Some((x, Formula::Not(y))) = inner.as_imp() {
                    if !known.iter().any(|k| k.formula == *x) {
                        known.push(hmp(&kj, &closed(&and_elim_l(x, y))));
                    }
                    if !known.iter().any(|k| k.formula == **y) {
                        known.push(hmp(&kj, &closed(&and_elim_r(x, y))));
                    }
                }
            }
        }
        if known.len() == before || known.len() > CLOSURE_LIMIT {
            return None;
        }
    };
    Some(to_pf(&discharge_all(&hyps, &found)))
}

/// Kalmár's completeness argument: prove `phi` under every assignment to the
/// atoms and eliminate the atoms one at a time by cases.
fn kalmar(phi: &Formula, atoms: &[Formula], assign: &mut Vec<bool>) -> H {
    let i = assign.len();
    if i == atoms.len() {
        let (d, v) = row(phi, atoms, assign);
        debug_assert!(v);
        return d;
    }
    assign.push(true);
    let d1 = kalmar(phi, atoms, assign);
    assign.pop();
    assign.push(false);
    let d0 = kalmar(phi, atoms, assign);
    assign.pop();
    let p = &atoms[i];
    let t = discharge(p, &d1);
    let f = discharge(&neg(p), &d0);
    hmp(&f, &hmp(&t, &closed(&cases(p, phi))))
}

/// Derives `f` or `~f`, whichever holds under the assignment, from the
/// corresponding atom literals.
fn row(f: &Formula, atoms: &[Formula], assign: &[bool]) -> (H, bool) {
    match f {
        Formula::Not(c) => {
            let (d, v) = row(c, atoms, assign);
            if v {
                (hmp(&d, &closed(&dn_intro(c))), false)
            } else {
                (d, true)
            }
        }
        Formula::Imp(c, e) => {
            let (dc, vc) = row(c, atoms, assign);
            if !vc {
                return (hmp(&dc, &closed(&efq(c, e))), true);
            }
            let (de, ve) = row(e, atoms, assign);
            if ve {
                (hmp(&de, &closed(&prop1(e, c))), true)
            } else {
                (hmp(&de, &hmp(&dc, &closed(&neg_imp(c, e)))), false)
            }
        }
        _ => {
            let i = atoms.iter().position(|a| a == f).expect("atom collected");
            if assign[i] {
                (hyp(f), true)
            } else {
                (hyp(&neg(f)), false)
            }
        }
    }
}
