//! Equational reasoning and evaluation of closed terms by the computation
//! axioms.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arithmetization::{as_numeral, iter_step_code, numeral, numeral_u64, sub_value, value};
use crate::kernel::SchemaId;
use crate::syntax::{FnSymbol, Formula, Term, Var};

use super::prop::{contrapos, iff_intro, syl, syl_r};
use super::{mp, Pf, TacticError};

fn split_eq(p: &Pf) -> Result<(Term, Term), TacticError> {
    p.formula
        .as_eq()
        .map(|(a, b)| (a.clone(), b.clone()))
        .ok_or_else(|| TacticError::Shape(format!("{} is not an equation", p.formula)))
}

/// `t = t`
pub fn refl(t: &Term) -> Pf {
    Pf::axiom(SchemaId::Eq1, Formula::eq(t.clone(), t.clone()))
}

/// From `s = t`, `t = s`.
pub fn sym(p: &Pf) -> Result<Pf, TacticError> {
    let (s, t) = split_eq(p)?;
    if s == t {
        return Ok(p.clone());
    }
    // s = t -> (s = s -> t = s)
    let ax = Pf::axiom(
        SchemaId::Eq3,
        Formula::imp(
            p.formula.clone(),
            Formula::imp(Formula::eq(s.clone(), s.clone()), Formula::eq(t, s.clone())),
        ),
    );
    Ok(mp(&refl(&s), &mp(p, &ax)))
}

/// From `a = b` and `b = c`, `a = c`.
pub fn trans(p: &Pf, q: &Pf) -> Result<Pf, TacticError> {
    let (a, b) = split_eq(p)?;
    let (b2, c) = split_eq(q)?;
    if b != b2 {
        return Err(TacticError::Shape(format!("cannot chain {} with {}", p.formula, q.formula)));
    }
    if a == b {
        return Ok(q.clone());
    }
    if b == c {
        return Ok(p.clone());
    }
    // b = a -> (b = c -> a = c)
    let ba = sym(p)?;
    let ax = Pf::axiom(
        SchemaId::Eq3,
        Formula::imp(ba.formula.clone(), Formula::imp(q.formula.clone(), Formula::eq(a, c))),
    );
    Ok(mp(q, &mp(&ba, &ax)))
}

/// From `s = t` and a term `u` whose argument `i` is `s`, `u = u[i := t]`.
fn cong_arg(p: &Pf, u: &Term, i: usize) -> Result<Pf, TacticError> {
    let (s, t) = split_eq(p)?;
    if u.child(i) != Some(&s) {
        return Err(TacticError::Shape(format!("argument {i} of {u} is not {s}")));
    }
    let v = u.with_child(i, t).expect("position exists");
    let ax = Pf::axiom(SchemaId::Eq2, Formula::imp(p.formula.clone(), Formula::eq(u.clone(), v)));
    Ok(mp(p, &ax))
}

/// From `s = t` with `s` at `path` in `u`, `u = u[path := t]`.
pub fn cong_path(p: &Pf, u: &Term, path: &[usize]) -> Result<Pf, TacticError> {
    let Some((&i, rest)) = path.split_first() else {
        let (s, _) = split_eq(p)?;
        if *u != s {
            return Err(TacticError::Shape(format!("{u} is not {s}")));
        }
        return Ok(p.clone());
    };
    let c = u.child(i).ok_or_else(|| TacticError::Shape(format!("{u} has no argument {i}")))?;
    let inner = cong_path(p, c, rest)?;
    if split_eq(&inner)?.0 == split_eq(&inner)?.1 {
        return Ok(refl(u));
    }
    cong_arg(&inner, u, i)
}

/// Proves `t = n̄` for a closed term `t` with value `n`, using only the
/// computation axioms, Q4, Q6 and equality reasoning.
pub fn eval_closed(t: &Term) -> Result<Pf, TacticError> {
    if !t.is_closed() {
        return Err(TacticError::Open(t.to_string()));
    }
    Ok(eval(t)?.0)
}

fn eval(t: &Term) -> Result<(Pf, BigUint), TacticError> {
    if let Some(n) = as_numeral(t) {
        return Ok((refl(t), n));
    }
    match t {
        Term::Var(_) => Err(TacticError::Open(t.to_string())),
        Term::Zero => unreachable!("0 is a numeral"),
        Term::Succ(_) | Term::Add(..) | Term::Mul(..) => {
            let (head_pf, head, vals) = reduce_args(t)?;
            let n = match t {
                Term::Succ(_) => &vals[0] + 1u32,
                Term::Add(..) => &vals[0] + &vals[1],
                _ => &vals[0] * &vals[1],
            };
            let result = numeral(&n);
            if head == result {
                return Ok((head_pf, n));
            }
            let eq = Formula::eq(head.clone(), result);
            let schema = match (&head, vals.get(1).is_some_and(|v| v.is_zero())) {
                (Term::Add(..), true) => SchemaId::Q4,
                (Term::Mul(..), true) => SchemaId::Q6,
                _ => SchemaId::CompSucc,
            };
            Ok((trans(&head_pf, &Pf::axiom(schema, eq))?, n))
        }
        Term::App(FnSymbol::Iter, _) => {
            let (head_pf, head, vals) = reduce_args(t)?;
            let (n, c) = (&vals[0], &vals[1]);
            let c_term = numeral(c);
            if n.is_zero() {
                let ax = Pf::axiom(SchemaId::CompIter0, Formula::eq(head, c_term));
                return Ok((trans(&head_pf, &ax)?, c.clone()));
            }
            let m = n - BigUint::one();
            let m_term = numeral(&m);
            let succ_m = Term::succ(m_term.clone());
            // iter(n̄, c̄) = iter(S(m̄), c̄)
            let mut pf = head_pf;
            let mut cur = head;
            if succ_m != numeral(n) {
                let back = sym(&Pf::axiom(SchemaId::CompSucc, Formula::eq(succ_m.clone(), numeral(n))))?;
                let step = cong_arg(&back, &cur, 0)?;
                cur = split_eq(&step)?.1;
                pf = trans(&pf, &step)?;
            }
            let k0 = numeral(&iter_step_code().0);
            let z = numeral_u64(u64::from(Var::Z.0));
            let y = numeral_u64(u64::from(Var::Y.0));
            let inner = Term::sub(k0.clone(), z.clone(), c_term.clone());
            let unfolded = Term::sub(inner.clone(), y.clone(), m_term.clone());
            let step = Pf::axiom(SchemaId::CompIterStep, Formula::eq(cur, unfolded.clone()));
            pf = trans(&pf, &step)?;
            let k1 = sub_value(&iter_step_code().0, &BigUint::from(Var::Z.0), c)?;
            let inner_eq = Pf::axiom(SchemaId::CompSub, Formula::eq(inner, numeral(&k1)));
            let lifted = cong_arg(&inner_eq, &unfolded, 0)?;
            pf = trans(&pf, &lifted)?;
            let r = sub_value(&k1, &BigUint::from(Var::Y.0), &m)?;
            let outer =
                Pf::axiom(SchemaId::CompSub, Formula::eq(Term::sub(numeral(&k1), y, m_term), numeral(&r)));
            Ok((trans(&pf, &outer)?, r))
        }
        Term::App(FnSymbol::Sub, _) => {
            let (head_pf, head, vals) = reduce_args(t)?;
            let r = sub_value(&vals[0], &vals[1], &vals[2])?;
            let ax = Pf::axiom(SchemaId::CompSub, Formula::eq(head, numeral(&r)));
            Ok((trans(&head_pf, &ax)?, r))
        }
    }
}

/// Evaluates the arguments of `t` and rewrites them to numerals:
/// `t = F(n̄1, ..)`, the right side, and the argument values.
fn reduce_args(t: &Term) -> Result<(Pf, Term, Vec<BigUint>), TacticError> {
    let mut pf = refl(t);
    let mut cur = t.clone();
    let mut vals = Vec::with_capacity(t.arity());
    for i in 0..t.arity() {
        let arg = cur.child(i).expect("in range").clone();
        let (e, n) = eval(&arg)?;
        vals.push(n);
        if split_eq(&e)?.0 == split_eq(&e)?.1 {
            continue;
        }
        let step = cong_arg(&e, &cur, i)?;
        cur = split_eq(&step)?.1;
        pf = trans(&pf, &step)?;
    }
    Ok((pf, cur, vals))
}

/// Forward and backward implications between `phi` and `phi` with the
/// occurrence of `s` at `path` replaced by `t`, given `p: s = t`.
fn rewrite_pair(p: &Pf, phi: &Formula, path: &[usize]) -> Result<(Pf, Pf, Formula), TacticError> {
    let bad = || TacticError::BadPosition { path: path.to_vec(), formula: phi.to_string() };
    let (&i, rest) = path.split_first().ok_or_else(bad)?;
    match phi {
        Formula::Eq(a, b) => {
            let (side, other) = match i {
                0 => (a, b),
                1 => (b, a),
                _ => return Err(bad()),
            };
            let q = cong_path(p, side, rest)?;
            let (_, new_side) = split_eq(&q)?;
            let make = |x: &Term| {
                if i == 0 {
                    Formula::eq(x.clone(), other.clone())
                } else {
                    Formula::eq(other.clone(), x.clone())
                }
            };
            let new_phi = make(&new_side);
            let back = sym(&q)?;
            let fwd = mp(
                &q,
                &Pf::axiom(
                    SchemaId::Eq3,
                    Formula::imp(q.formula.clone(), Formula::imp(phi.clone(), new_phi.clone())),
                ),
            );
            let bwd = mp(
                &back,
                &Pf::axiom(
                    SchemaId::Eq3,
                    Formula::imp(back.formula.clone(), Formula::imp(new_phi.clone(), phi.clone())),
                ),
            );
            Ok((fwd, bwd, new_phi))
        }
        Formula::Tr(a) => {
            if i != 0 {
                return Err(bad());
            }
            let q = cong_path(p, a, rest)?;
            let (_, new_a) = split_eq(&q)?;
            let new_phi = Formula::tr(new_a);
            let back = sym(&q)?;
            let fwd = mp(
                &q,
                &Pf::axiom(
                    SchemaId::Eq3,
                    Formula::imp(q.formula.clone(), Formula::imp(phi.clone(), new_phi.clone())),
                ),
            );
            let bwd = mp(
                &back,
                &Pf::axiom(
                    SchemaId::Eq3,
                    Formula::imp(back.formula.clone(), Formula::imp(new_phi.clone(), phi.clone())),
                ),
            );
            Ok((fwd, bwd, new_phi))
        }
        Formula::Not(g) => {
            if i != 0 {
                return Err(bad());
            }
            let (f, b, g2) = rewrite_pair(p, g, rest)?;
            let fwd = mp(&b, &contrapos(&g2, g));
            let bwd = mp(&f, &contrapos(g, &g2));
            Ok((fwd, bwd, Formula::not(g2)))
        }
        Formula::Imp(g, h) => match i {
            0 => {
                let (f, b, g2) = rewrite_pair(p, g, rest)?;
                let fwd = mp(&b, &syl(&g2, g, h));
                let bwd = mp(&f, &syl(g, &g2, h));
                Ok((fwd, bwd, Formula::imp(g2, (**h).clone())))
            }
            1 => {
                let (f, b, h2) = rewrite_pair(p, h, rest)?;
                let fwd = mp(&f, &syl_r(g, h, &h2));
                let bwd = mp(&b, &syl_r(g, &h2, h));
                Ok((fwd, bwd, Formula::imp((**g).clone(), h2)))
            }
            _ => Err(bad()),
        },
        Formula::Forall(x, g) => {
            if i != 0 {
                return Err(bad());
            }
            let (f, b, g2) = rewrite_pair(p, g, rest)?;
            let fwd = forall_mono(*x, &f)?;
            let bwd = forall_mono(*x, &b)?;
            Ok((fwd, bwd, Formula::forall(*x, g2)))
        }
    }
}

/// From `A -> B`, `forall x. A -> forall x. B`.
pub(crate) fn forall_mono(x: Var, p: &Pf) -> Result<Pf, TacticError> {
    let (a, b) = p
        .formula
        .as_imp()
        .ok_or_else(|| TacticError::Shape(format!("{} is not an implication", p.formula)))?;
    let all_a = Formula::forall(x, a.clone());
    let inst = Pf::axiom(SchemaId::Quant1, Formula::imp(all_a.clone(), a.clone()));
    let chained = mp(p, &mp(&inst, &syl(&all_a, a, b)));
    let generalized = Pf::gen(x, &chained);
    let q2 = Pf::axiom(
        SchemaId::Quant2,
        Formula::imp(generalized.formula.clone(), Formula::imp(all_a, Formula::forall(x, b.clone()))),
    );
    Ok(mp(&generalized, &q2))
}

/// Given `p: s = t` and the position of an occurrence of `s` in `phi`,
/// proves `phi <-> phi[path := t]`. Terms substituted under a binder must
/// not mention it; this holds for the closed terms the tactics use.
pub fn rewrite_eq(p: &Pf, phi: &Formula, path: &[usize]) -> Result<Pf, TacticError> {
    let (s, t) = split_eq(p)?;
    if phi.term_at(path) != Some(&s) {
        return Err(TacticError::BadPosition { path: path.to_vec(), formula: phi.to_string() });
    }
    if s == t {
        return Ok(super::prop::iff_refl(phi));
    }
    let (fwd, bwd, _) = rewrite_pair(p, phi, path)?;
    iff_intro(&fwd, &bwd)
}

/// Turns a proof of `chi` into one of `target`, where the two differ only in
/// closed subterms at the given paths that evaluate to the same number.
pub fn convert_by_eval(pf: &Pf, target: &Formula, paths: &[Vec<usize>]) -> Result<Pf, TacticError> {
    let mut cur = pf.clone();
    for path in paths {
        let bad = |f: &Formula| TacticError::BadPosition { path: path.clone(), formula: f.to_string() };
        let s = cur.formula.term_at(path).ok_or_else(|| bad(&cur.formula))?.clone();
        let t = target.term_at(path).ok_or_else(|| bad(target))?.clone();
        if s == t {
            continue;
        }
        let (es, vs) = eval_checked(&s)?;
        let (et, vt) = eval_checked(&t)?;
        if vs != vt {
            return Err(TacticError::ValueMismatch { left: s.to_string(), right: t.to_string() });
        }
        let eq = trans(&es, &sym(&et)?)?;
        let (fwd, _, _) = rewrite_pair(&eq, &cur.formula, path)?;
        cur = mp(&cur, &fwd);
    }
    if cur.formula != *target {
        return Err(TacticError::Shape(format!("conversion reached {}, not {}", cur.formula, target)));
    }
    Ok(cur)
}

fn eval_checked(t: &Term) -> Result<(Pf, BigUint), TacticError> {
    if !t.is_closed() {
        return Err(TacticError::Open(t.to_string()));
    }
    let r = eval(t)?;
    debug_assert_eq!(Some(&r.1), value(t).ok().as_ref());
    Ok(r)
}
