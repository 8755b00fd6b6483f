//! Gödel coding, compact numerals and the meta-level functions behind the
//! designated symbols.
//!
//! Codes are a prefix-free byte serialization of the syntax tree read as a
//! big-endian natural. Canonical numerals are serialized as their value, so
//! a code's bit length stays linear in the size of the expression even when
//! names of names are nested.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::syntax::{Expr, FnSymbol, Formula, Term, Var};

/// Gödel number of a term or formula.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Code(pub BigUint);

impl Code {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        format!("{:x}", self.0)
    }

    pub fn bits(&self) -> u64 {
        self.0.bits()
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<BigUint> for Code {
    fn from(n: BigUint) -> Self {
        Code(n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecodeError {
    #[error("truncated code at byte {0}")]
    Truncated(usize),
    #[error("unknown tag {tag} at byte {at}")]
    UnknownTag { tag: u8, at: usize },
    #[error("{0} trailing bytes after the expression")]
    Trailing(usize),
    #[error("variable index out of range at byte {0}")]
    VarRange(usize),
    #[error("code is not in canonical form")]
    NonCanonical,
    #[error("code denotes a term, not a formula")]
    NotAFormula,
    #[error("code denotes a formula, not a term")]
    NotATerm,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("term is not closed: variable {0} occurs free")]
    Open(Var),
    #[error("sub applied to a value that is not the code of a formula: {0}")]
    BadSubArgument(DecodeError),
}

const T_VAR: u8 = 1;
const T_SUCC: u8 = 3;
const T_ADD: u8 = 4;
const T_MUL: u8 = 5;
const T_ITER: u8 = 6;
const T_SUB: u8 = 7;
const T_NUM: u8 = 8;
const F_EQ: u8 = 16;
const F_TR: u8 = 17;
const F_NOT: u8 = 18;
const F_IMP: u8 = 19;
const F_FORALL: u8 = 20;

fn two() -> &'static Term {
    static TWO: OnceLock<Term> = OnceLock::new();
    TWO.get_or_init(|| Term::succ(Term::succ(Term::Zero)))
}

/// Compact numeral: `0`, `S(0)`, `S(S(0))` below three, otherwise
/// `2 * q` or `S(2 * q)` with `q = n / 2`. Size is logarithmic in `n`.
pub fn numeral(n: &BigUint) -> Term {
    let two_big = BigUint::from(2u8);
    let mut shift = n.bits().saturating_sub(2);
    if (n >> shift) > two_big {
        shift += 1;
    }
    let top = (n >> shift).to_u8().expect("at most two");
    let mut t = Term::Zero;
    for _ in 0..top {
        t = Term::succ(t);
    }
    for i in (0..shift).rev() {
        t = Term::mul(two().clone(), t);
        if n.bit(i) {
            t = Term::succ(t);
        }
    }
    t
}

pub fn numeral_u64(n: u64) -> Term {
    numeral(&BigUint::from(n))
}

fn is_two(t: &Term) -> bool {
    matches!(t, Term::Succ(a) if matches!(&**a, Term::Succ(b) if **b == Term::Zero))
}

/// Recognizes terms that are exactly `numeral(n)` and returns `n`.
pub fn as_numeral(t: &Term) -> Option<BigUint> {
    // low bits, peeled from the outside in
    let mut bits: Vec<bool> = Vec::new();
    let mut cur = t;
    let base: u8 = loop {
        match cur {
            Term::Zero => break 0,
            Term::Succ(inner) => match &**inner {
                Term::Zero => break 1,
                Term::Succ(z) if **z == Term::Zero => break 2,
                Term::Mul(a, q) if is_two(a) => {
                    if **q == Term::Zero {
                        return None;
                    }
                    bits.push(true);
                    cur = q;
                }
                _ => return None,
            },
            Term::Mul(a, q) if is_two(a) => {
                let small = match &**q {
                    Term::Zero => true,
                    Term::Succ(z) => **z == Term::Zero,
                    _ => false,
                };
                if small {
                    return None;
                }
                bits.push(false);
                cur = q;
            }
            _ => return None,
        }
    };
    let mut n = BigUint::from(base);
    for bit in bits.iter().rev() {
        n <<= 1u32;
        if *bit {
            n += 1u32;
        }
    }
    Some(n)
}

fn push_varint(out: &mut Vec<u8>, mut n: u64) {
    loop {
        let byte = (n & 0x7f) as u8;
        n >>= 7;
        if n == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

fn encode_term(t: &Term, out: &mut Vec<u8>) {
    if let Some(n) = as_numeral(t) {
        out.push(T_NUM);
        let bytes = if n.is_zero() { Vec::new() } else { n.to_bytes_be() };
        push_varint(out, bytes.len() as u64);
        out.extend_from_slice(&bytes);
        return;
    }
    match t {
        Term::Var(v) => {
            out.push(T_VAR);
            push_varint(out, u64::from(v.0));
        }
        Term::Zero => unreachable!("zero is a numeral"),
        Term::Succ(a) => {
            out.push(T_SUCC);
            encode_term(a, out);
        }
        Term::Add(a, b) | Term::Mul(a, b) => {
            out.push(if matches!(t, Term::Add(..)) { T_ADD } else { T_MUL });
            encode_term(a, out);
            encode_term(b, out);
        }
        Term::App(sym, args) => {
            out.push(match sym {
                FnSymbol::Iter => T_ITER,
                FnSymbol::Sub => T_SUB,
            });
            args.iter().for_each(|a| encode_term(a, out));
        }
    }
}

fn encode_formula(f: &Formula, out: &mut Vec<u8>) {
    match f {
        Formula::Eq(a, b) => {
            out.push(F_EQ);
            encode_term(a, out);
            encode_term(b, out);
        }
        Formula::Tr(a) => {
            out.push(F_TR);
            encode_term(a, out);
        }
        Formula::Not(a) => {
            out.push(F_NOT);
            encode_formula(a, out);
        }
        Formula::Imp(a, b) => {
            out.push(F_IMP);
            encode_formula(a, out);
            encode_formula(b, out);
        }
        Formula::Forall(v, a) => {
            out.push(F_FORALL);
            push_varint(out, u64::from(v.0));
            encode_formula(a, out);
        }
    }
}

pub fn encode_bytes(e: &Expr) -> Vec<u8> {
    let mut out = Vec::new();
    match e {
        Expr::Term(t) => encode_term(t, &mut out),
        Expr::Formula(f) => encode_formula(f, &mut out),
    }
    out
}

pub fn encode(e: &Expr) -> Code {
    Code(BigUint::from_bytes_be(&encode_bytes(e)))
}

pub fn encode_formula_code(f: &Formula) -> Code {
    let mut out = Vec::new();
    encode_formula(f, &mut out);
    Code(BigUint::from_bytes_be(&out))
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn byte(&mut self) -> Result<u8, DecodeError> {
        let b = *self.bytes.get(self.pos).ok_or(DecodeError::Truncated(self.pos))?;
        self.pos += 1;
        Ok(b)
    }

    fn varint(&mut self) -> Result<u64, DecodeError> {
        let start = self.pos;
        let mut n: u64 = 0;
        for shift in (0..64).step_by(7) {
            let b = self.byte()?;
            n |= u64::from(b & 0x7f) << shift;
            if b & 0x80 == 0 {
                return Ok(n);
            }
        }
        Err(DecodeError::VarRange(start))
    }

    fn var(&mut self) -> Result<Var, DecodeError> {
        let at = self.pos;
        let n = self.varint()?;
        u32::try_from(n).map(Var).map_err(|_| DecodeError::VarRange(at))
    }

    fn term(&mut self) -> Result<Term, DecodeError> {
        let at = self.pos;
        let tag = self.byte()?;
        Ok(match tag {
            T_VAR => Term::Var(self.var()?),
            T_SUCC => Term::succ(self.term()?),
            T_ADD => Term::add(self.term()?, self.term()?),
            T_MUL => Term::mul(self.term()?, self.term()?),
            T_ITER => Term::iter(self.term()?, self.term()?),
            T_SUB => Term::sub(self.term()?, self.term()?, self.term()?),
            T_NUM => {
                let len = self.varint()? as usize;
                let end = self.pos.checked_add(len).ok_or(DecodeError::Truncated(self.pos))?;
                let slice = self.bytes.get(self.pos..end).ok_or(DecodeError::Truncated(self.pos))?;
                self.pos = end;
                numeral(&BigUint::from_bytes_be(slice))
            }
            _ => return Err(DecodeError::UnknownTag { tag, at }),
        })
    }

    fn formula(&mut self) -> Result<Formula, DecodeError> {
        let at = self.pos;
        let tag = self.byte()?;
        Ok(match tag {
            F_EQ => Formula::eq(self.term()?, self.term()?),
            F_TR => Formula::tr(self.term()?),
            F_NOT => Formula::not(self.formula()?),
            F_IMP => Formula::imp(self.formula()?, self.formula()?),
            F_FORALL => {
                let v = self.var()?;
                Formula::forall(v, self.formula()?)
            }
            _ => return Err(DecodeError::UnknownTag { tag, at }),
        })
    }
}

/// Inverse of [`encode`]. Anything outside the image of `encode` is rejected.
pub fn decode(c: &Code) -> Result<Expr, DecodeError> {
    let bytes = c.0.to_bytes_be();
    let first = bytes[0];
    let mut r = Reader { bytes: &bytes, pos: 0 };
    let e =
        if (F_EQ..=F_FORALL).contains(&first) { Expr::Formula(r.formula()?) } else { Expr::Term(r.term()?) };
    if r.pos != bytes.len() {
        return Err(DecodeError::Trailing(bytes.len() - r.pos));
    }
    if encode_bytes(&e) != bytes {
        return Err(DecodeError::NonCanonical);
    }
    Ok(e)
}

pub fn decode_formula(c: &Code) -> Result<Formula, DecodeError> {
    match decode(c)? {
        Expr::Formula(f) => Ok(f),
        Expr::Term(_) => Err(DecodeError::NotAFormula),
    }
}

/// `⌜e⌝`: the numeral of the code of `e`.
pub fn name_of(e: &Expr) -> Term {
    numeral(&encode(e).0)
}

pub fn quote(f: &Formula) -> Term {
    numeral(&encode_formula_code(f).0)
}

/// Meta-level substitution on codes: the code of `φ(n̄)` from the code of `φ`.
pub fn sub_fn(c: &Code, v: Var, n: &BigUint) -> Result<Code, DecodeError> {
    let phi = decode_formula(c)?;
    Ok(encode_formula_code(&phi.substitute(v, &numeral(n))))
}

/// `sub` on raw values, as the standard interpretation of the symbol. A
/// variable index beyond `u32` cannot occur, so the formula is unchanged.
pub fn sub_value(c: &BigUint, v: &BigUint, n: &BigUint) -> Result<BigUint, DecodeError> {
    let code = Code(c.clone());
    match v.to_u32() {
        Some(v) => sub_fn(&code, Var(v), n).map(|c| c.0),
        None => decode_formula(&code).map(|_| c.clone()),
    }
}

/// `T(iter(y, z))`, the template stepped by `iter`.
pub fn iter_step_template() -> Formula {
    Formula::tr(Term::iter(Term::Var(Var::Y), Term::Var(Var::Z)))
}

/// Code of [`iter_step_template`].
pub fn iter_step_code() -> &'static Code {
    static K0: OnceLock<Code> = OnceLock::new();
    K0.get_or_init(|| encode_formula_code(&iter_step_template()))
}

/// Truth iteration: `iter_fn(0, c) = c` and `iter_fn(n + 1, c)` is the code
/// of `T(iter(n̄, c̄))`, obtained by two substitutions into the step template.
pub fn iter_fn(n: &BigUint, c: &Code) -> Code {
    if n.is_zero() {
        return c.clone();
    }
    let m = n - BigUint::one();
    let inner = sub_fn(iter_step_code(), Var::Z, &c.0).expect("template is a formula");
    sub_fn(&inner, Var::Y, &m).expect("template instance is a formula")
}

/// Value of a closed term under the standard interpretation.
pub fn value(t: &Term) -> Result<BigUint, EvalError> {
    if let Some(n) = as_numeral(t) {
        return Ok(n);
    }
    Ok(match t {
        Term::Var(v) => return Err(EvalError::Open(*v)),
        Term::Zero => BigUint::zero(),
        Term::Succ(a) => value(a)? + 1u32,
        Term::Add(a, b) => value(a)? + value(b)?,
        Term::Mul(a, b) => value(a)? * value(b)?,
        Term::App(FnSymbol::Iter, args) => {
            let n = value(&args[0])?;
            let c = value(&args[1])?;
            iter_fn(&n, &Code(c)).0
        }
        Term::App(FnSymbol::Sub, args) => {
            let c = value(&args[0])?;
            let v = value(&args[1])?;
            let n = value(&args[2])?;
            sub_value(&c, &v, &n).map_err(EvalError::BadSubArgument)?
        }
    })
}

/// `T^ω t := forall y. T(iter(y, t))`, with `y` renamed if it occurs in `t`.
pub fn omega_truth(t: &Term) -> Formula {
    let y = if t.has_free(Var::Y) { crate::syntax::fresh_var(&t.free_vars()) } else { Var::Y };
    Formula::forall(y, Formula::tr(Term::iter(Term::Var(y), t.clone())))
}

/// `T^ω⌜φ⌝`.
pub fn omega_truth_of(phi: &Formula) -> Formula {
    omega_truth(&quote(phi))
}

/// The dot term `⌜φ(ẋ)⌝ := sub(⌜φ⌝, v̄, x)`.
pub fn dot_term(phi: &Formula, v: Var, x: Var) -> Term {
    Term::sub(quote(phi), numeral_u64(u64::from(v.0)), Term::Var(x))
}

/// `sub(t, v̄, t)`: the diagonal function applied to `t`.
pub fn self_application(t: Term, v: Var) -> Term {
    Term::sub(t.clone(), numeral_u64(u64::from(v.0)), t)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("diagonalization needs a formula whose only free variable is {var}; found {found:?}")]
pub struct DiagonalError {
    pub var: Var,
    pub found: Vec<Var>,
}

/// The two formulas of a diagonalization, without the equivalence proof.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalSentence {
    pub var: Var,
    /// `φ(sub(v, v̄, v))`, free only in `v`.
    pub theta: Formula,
    /// `θ(⌜θ⌝)`, a sentence.
    pub gamma: Formula,
}

pub fn diagonal_sentence(phi: &Formula, v: Var) -> Result<DiagonalSentence, DiagonalError> {
    let fv = phi.free_vars();
    if fv.iter().any(|w| *w != v) {
        return Err(DiagonalError { var: v, found: fv.into_iter().collect() });
    }
    let theta = phi.substitute(v, &self_application(Term::Var(v), v));
    let gamma = theta.substitute(v, &quote(&theta));
    Ok(DiagonalSentence { var: v, theta, gamma })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_formula;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn small_numerals() {
        assert_eq!(numeral(&big(0)), Term::Zero);
        assert_eq!(numeral(&big(1)), Term::succ(Term::Zero));
        assert_eq!(numeral(&big(2)), two().clone());
        assert_eq!(numeral(&big(3)), Term::succ(Term::mul(two().clone(), Term::succ(Term::Zero))));
    }

    #[test]
    fn numeral_recognition_is_exact() {
        for n in 0..300u64 {
            assert_eq!(as_numeral(&numeral(&big(n))), Some(big(n)));
        }
        // value 3, but not the canonical shape
        let three = Term::succ(two().clone());
        assert_eq!(as_numeral(&three), None);
        assert_eq!(as_numeral(&Term::mul(two().clone(), Term::succ(Term::Zero))), None);
        assert_eq!(as_numeral(&Term::succ(Term::mul(two().clone(), Term::Zero))), None);
    }

    #[test]
    fn numeral_size_is_logarithmic() {
        let n = BigUint::one() << 1000u32;
        assert!(numeral(&n).size() < 4 * 1001);
    }

    #[test]
    fn round_trip_and_injective() {
        let a = Formula::eq(Term::Zero, Term::Zero);
        let b = Formula::tr(Term::Zero);
        let ca = encode(&a.clone().into());
        assert_eq!(decode(&ca).unwrap(), Expr::Formula(a));
        assert_ne!(ca, encode(&b.into()));
    }

    #[test]
    fn decode_rejects_garbage() {
        assert!(decode(&Code(big(0))).is_err());
        assert!(decode(&Code(big(0xff))).is_err());
        // structural zero is never produced by encode: tag 3 (S) around an
        // explicit numeral 0 is fine, but a trailing byte is not
        let mut bytes = encode_bytes(&Expr::Formula(Formula::eq(Term::Zero, Term::Zero)));
        bytes.push(0);
        assert_eq!(decode(&Code(BigUint::from_bytes_be(&bytes))), Err(DecodeError::Trailing(1)));
        // S(#2) written as numeral 3 would be a different tree: S(2) must stay S(2)
        let s2 = Term::succ(two().clone());
        let code = encode(&Expr::Term(s2.clone()));
        assert_eq!(decode(&code).unwrap(), Expr::Term(s2));
    }

    #[test]
    fn sub_fn_substitutes() {
        let phi = Formula::tr(Term::Var(Var::V));
        let c = encode_formula_code(&phi);
        let got = sub_fn(&c, Var::V, &big(3)).unwrap();
        assert_eq!(got, encode_formula_code(&Formula::tr(numeral(&big(3)))));
        let closed = Formula::eq(Term::Zero, Term::Zero);
        let c = encode_formula_code(&closed);
        assert_eq!(sub_fn(&c, Var::V, &big(7)).unwrap(), c);
        let term_code = encode(&Expr::Term(Term::Zero));
        assert_eq!(sub_fn(&term_code, Var::V, &big(1)), Err(DecodeError::NotAFormula));
    }

    #[test]
    fn iter_fn_base_and_step() {
        let phi = Formula::eq(Term::Zero, Term::Zero);
        let c = encode_formula_code(&phi);
        assert_eq!(iter_fn(&big(0), &c), c);
        let one = decode_formula(&iter_fn(&big(1), &c)).unwrap();
        assert_eq!(one, Formula::tr(Term::iter(Term::Zero, quote(&phi))));
        for n in 1..6u64 {
            let direct = Formula::tr(Term::iter(numeral(&big(n - 1)), numeral(&c.0)));
            assert_eq!(iter_fn(&big(n), &c), encode_formula_code(&direct));
        }
    }

    #[test]
    fn omega_truth_renames_when_needed() {
        let f = omega_truth(&Term::Var(Var::X));
        assert_eq!(f.to_string(), "forall y. T(iter(y, x))");
        let g = omega_truth(&Term::Var(Var::Y));
        assert_eq!(g.free_vars().into_iter().collect::<Vec<_>>(), vec![Var::Y]);
    }

    #[test]
    fn dot_term_evaluates_to_instance_codes() {
        let phi = Formula::tr(Term::Var(Var::V));
        let d = dot_term(&phi, Var::V, Var::X);
        assert_eq!(d.free_vars().into_iter().collect::<Vec<_>>(), vec![Var::X]);
        for n in 0..3u64 {
            let at = d.substitute(Var::X, &numeral(&big(n)));
            let expected = encode_formula_code(&Formula::tr(numeral(&big(n))));
            assert_eq!(value(&at).unwrap(), expected.0);
        }
    }

    #[test]
    fn diagonal_sentence_shapes() {
        let phi = parse_formula("~forall y. T(iter(y, v))").unwrap();
        let d = diagonal_sentence(&phi, Var::V).unwrap();
        assert!(d.gamma.is_sentence());
        assert_eq!(d.gamma, d.theta.substitute(Var::V, &quote(&d.theta)));
        let bad = parse_formula("x = v").unwrap();
        assert!(diagonal_sentence(&bad, Var::V).is_err());
    }

    #[test]
    fn value_of_arithmetic() {
        let t = crate::parse::parse_term("S(#3) * (#2 + 0)").unwrap();
        assert_eq!(value(&t).unwrap(), big(8));
        assert!(matches!(value(&Term::Var(Var::X)), Err(EvalError::Open(_))));
    }
}
