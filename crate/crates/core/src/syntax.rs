//! Abstract syntax of the arithmetical language extended with the unary
//! truth predicate `T` and the two designated function symbols `iter` and
//! `sub`.
//!
//! Only `=`, `T`, `~`, `->` and `forall` are primitive. The usual
//! abbreviations are expanded by the smart constructors below and by the
//! parser, so the kernel never sees them.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::arithmetization::as_numeral;

/// A named variable. Indices are plain naturals; the first six have the
/// conventional names `x y z u v w`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(pub u32);

const VAR_NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];

impl Var {
    pub const X: Var = Var(0);
    pub const Y: Var = Var(1);
    pub const Z: Var = Var(2);
    pub const U: Var = Var(3);
    pub const V: Var = Var(4);
    pub const W: Var = Var(5);

    pub fn name(self) -> String {
        match VAR_NAMES.get(self.0 as usize) {
            Some(n) => (*n).to_string(),
            None => format!("v{}", self.0),
        }
    }

    /// Inverse of [`Var::name`]. `v7` style names are accepted for any index.
    pub fn from_name(name: &str) -> Option<Var> {
        if let Some(i) = VAR_NAMES.iter().position(|n| *n == name) {
            return Some(Var(i as u32));
        }
        let digits = name.strip_prefix('v')?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        if digits.len() > 1 && digits.starts_with('0') {
            return None;
        }
        digits.parse().ok().map(Var)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// The designated function symbols. `iter` represents the truth-iteration
/// function, `sub` the substitution function behind dot-notation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FnSymbol {
    Iter,
    Sub,
}

impl FnSymbol {
    pub fn arity(self) -> usize {
        match self {
            FnSymbol::Iter => 2,
            FnSymbol::Sub => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FnSymbol::Iter => "iter",
            FnSymbol::Sub => "sub",
        }
    }

    pub fn from_name(name: &str) -> Option<FnSymbol> {
        match name {
            "iter" => Some(FnSymbol::Iter),
            "sub" => Some(FnSymbol::Sub),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{symbol} expects {expected} arguments, found {found}")]
pub struct ArityError {
    pub symbol: &'static str,
    pub expected: usize,
    pub found: usize,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Var(Var),
    Zero,
    Succ(Arc<Term>),
    Add(Arc<Term>, Arc<Term>),
    Mul(Arc<Term>, Arc<Term>),
    /// Application of a designated symbol. The argument count always equals
    /// the symbol's arity; use [`Term::app`] to build one from untrusted input.
    App(FnSymbol, Arc<[Term]>),
}

impl Term {
    pub fn var(v: Var) -> Term {
        Term::Var(v)
    }

    pub fn succ(t: Term) -> Term {
        Term::Succ(Arc::new(t))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Arc::new(a), Arc::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Arc::new(a), Arc::new(b))
    }

    pub fn app(symbol: FnSymbol, args: Vec<Term>) -> Result<Term, ArityError> {
        if args.len() != symbol.arity() {
            return Err(ArityError { symbol: symbol.name(), expected: symbol.arity(), found: args.len() });
        }
        Ok(Term::App(symbol, args.into()))
    }

    pub fn iter(n: Term, c: Term) -> Term {
        Term::App(FnSymbol::Iter, vec![n, c].into())
    }

    pub fn sub(c: Term, v: Term, n: Term) -> Term {
        Term::App(FnSymbol::Sub, vec![c, v, n].into())
    }

    pub fn child(&self, i: usize) -> Option<&Term> {
        match (self, i) {
            (Term::Succ(a), 0) => Some(a),
            (Term::Add(a, _), 0) | (Term::Mul(a, _), 0) => Some(a),
            (Term::Add(_, b), 1) | (Term::Mul(_, b), 1) => Some(b),
            (Term::App(_, args), i) => args.get(i),
            _ => None,
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Term::Var(_) | Term::Zero => 0,
            Term::Succ(_) => 1,
            Term::Add(..) | Term::Mul(..) => 2,
            Term::App(_, args) => args.len(),
        }
    }

    /// Same head, child `i` replaced.
    pub fn with_child(&self, i: usize, new: Term) -> Option<Term> {
        Some(match (self, i) {
            (Term::Succ(_), 0) => Term::succ(new),
            (Term::Add(_, b), 0) => Term::Add(Arc::new(new), b.clone()),
            (Term::Add(a, _), 1) => Term::Add(a.clone(), Arc::new(new)),
            (Term::Mul(_, b), 0) => Term::Mul(Arc::new(new), b.clone()),
            (Term::Mul(a, _), 1) => Term::Mul(a.clone(), Arc::new(new)),
            (Term::App(sym, args), i) if i < args.len() => {
                let mut args = args.to_vec();
                args[i] = new;
                Term::App(*sym, args.into())
            }
            _ => return None,
        })
    }

    pub fn term_at(&self, path: &[usize]) -> Option<&Term> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => self.child(i)?.term_at(rest),
        }
    }

    pub fn replace_at(&self, path: &[usize], new: Term) -> Option<Term> {
        match path.split_first() {
            None => Some(new),
            Some((&i, rest)) => {
                let child = self.child(i)?.replace_at(rest, new)?;
                self.with_child(i, child)
            }
        }
    }

    pub fn has_free(&self, v: Var) -> bool {
        match self {
            Term::Var(w) => *w == v,
            Term::Zero => false,
            Term::Succ(a) => a.has_free(v),
            Term::Add(a, b) | Term::Mul(a, b) => a.has_free(v) || b.has_free(v),
            Term::App(_, args) => args.iter().any(|a| a.has_free(v)),
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Zero => true,
            Term::Succ(a) => a.is_closed(),
            Term::Add(a, b) | Term::Mul(a, b) => a.is_closed() && b.is_closed(),
            Term::App(_, args) => args.iter().all(Term::is_closed),
        }
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(w) => {
                out.insert(*w);
            }
            Term::Zero => {}
            Term::Succ(a) => a.collect_vars(out),
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn substitute(&self, v: Var, t: &Term) -> Term {
        self.subst_opt(v, t).unwrap_or_else(|| self.clone())
    }

    /// `None` when nothing changed, so unchanged subtrees stay shared.
    fn subst_opt(&self, v: Var, t: &Term) -> Option<Term> {
        match self {
            Term::Var(w) if *w == v => Some(t.clone()),
            Term::Var(_) | Term::Zero => None,
            Term::Succ(a) => a.subst_opt(v, t).map(Term::succ),
            Term::Add(a, b) | Term::Mul(a, b) => {
                let (na, nb) = (a.subst_opt(v, t), b.subst_opt(v, t));
                if na.is_none() && nb.is_none() {
                    return None;
                }
                let na = na.map(Arc::new).unwrap_or_else(|| a.clone());
                let nb = nb.map(Arc::new).unwrap_or_else(|| b.clone());
                Some(match self {
                    Term::Add(..) => Term::Add(na, nb),
                    _ => Term::Mul(na, nb),
                })
            }
            Term::App(sym, args) => {
                let new: Vec<Option<Term>> = args.iter().map(|a| a.subst_opt(v, t)).collect();
                if new.iter().all(Option::is_none) {
                    return None;
                }
                let args: Vec<Term> = new
                    .into_iter()
                    .zip(args.iter())
                    .map(|(n, old)| n.unwrap_or_else(|| old.clone()))
                    .collect();
                Some(Term::App(*sym, args.into()))
            }
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Zero => 1,
            Term::Succ(a) => 1 + a.size(),
            Term::Add(a, b) | Term::Mul(a, b) => 1 + a.size() + b.size(),
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Formula {
    Eq(Term, Term),
    Tr(Term),
    Not(Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
    Forall(Var, Arc<Formula>),
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn tr(t: Term) -> Formula {
        Formula::Tr(t)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Arc::new(f))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Arc::new(a), Arc::new(b))
    }

    pub fn forall(v: Var, body: Formula) -> Formula {
        Formula::Forall(v, Arc::new(body))
    }

    /// `a & b` as `~(a -> ~b)`.
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::not(Formula::imp(a, Formula::not(b)))
    }

    /// `a | b` as `~a -> b`.
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::imp(Formula::not(a), b)
    }

    /// `a <-> b` as `(a -> b) & (b -> a)`.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    pub fn exists(v: Var, body: Formula) -> Formula {
        Formula::not(Formula::forall(v, Formula::not(body)))
    }

    /// Splits `(a -> b) & (b -> a)` back into `(a, b)`.
    pub fn as_iff(&self) -> Option<(&Formula, &Formula)> {
        let Formula::Not(inner) = self else { return None };
        let Formula::Imp(l, r) = &**inner else { return None };
        let Formula::Imp(a, b) = &**l else { return None };
        let Formula::Not(r) = &**r else { return None };
        let Formula::Imp(b2, a2) = &**r else { return None };
        (a == a2 && b == b2).then_some((&**a, &**b))
    }

    pub fn as_imp(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Imp(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_eq(&self) -> Option<(&Term, &Term)> {
        match self {
            Formula::Eq(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn has_free(&self, v: Var) -> bool {
        match self {
            Formula::Eq(a, b) => a.has_free(v) || b.has_free(v),
            Formula::Tr(a) => a.has_free(v),
            Formula::Not(a) => a.has_free(v),
            Formula::Imp(a, b) => a.has_free(v) || b.has_free(v),
            Formula::Forall(w, a) => *w != v && a.has_free(v),
        }
    }

    pub fn collect_free_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Eq(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Tr(a) => a.collect_vars(out),
            Formula::Not(a) => a.collect_free_vars(out),
            Formula::Imp(a, b) => {
                a.collect_free_vars(out);
                b.collect_free_vars(out);
            }
            Formula::Forall(w, a) => {
                let mut inner = BTreeSet::new();
                a.collect_free_vars(&mut inner);
                inner.remove(w);
                out.extend(inner);
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free_vars(&mut out);
        out
    }

    pub fn is_sentence(&self) -> bool {
        match self {
            Formula::Eq(a, b) => a.is_closed() && b.is_closed(),
            Formula::Tr(a) => a.is_closed(),
            Formula::Not(a) => a.is_sentence(),
            Formula::Imp(a, b) => a.is_sentence() && b.is_sentence(),
            Formula::Forall(..) => self.free_vars().is_empty(),
        }
    }

    /// Capture-avoiding substitution of `t` for the free occurrences of `v`.
    /// A binder that would capture a variable of `t` is renamed to the
    /// smallest index free in neither the body nor `t`.
    pub fn substitute(&self, v: Var, t: &Term) -> Formula {
        self.subst_opt(v, t).unwrap_or_else(|| self.clone())
    }

    fn subst_opt(&self, v: Var, t: &Term) -> Option<Formula> {
        match self {
            Formula::Eq(a, b) => {
                let (na, nb) = (a.subst_opt(v, t), b.subst_opt(v, t));
                if na.is_none() && nb.is_none() {
                    return None;
                }
                Some(Formula::Eq(na.unwrap_or_else(|| a.clone()), nb.unwrap_or_else(|| b.clone())))
            }
            Formula::Tr(a) => a.subst_opt(v, t).map(Formula::Tr),
            Formula::Not(a) => a.subst_opt(v, t).map(Formula::not),
            Formula::Imp(a, b) => {
                let (na, nb) = (a.subst_opt(v, t), b.subst_opt(v, t));
                if na.is_none() && nb.is_none() {
                    return None;
                }
                let na = na.map(Arc::new).unwrap_or_else(|| a.clone());
                let nb = nb.map(Arc::new).unwrap_or_else(|| b.clone());
                Some(Formula::Imp(na, nb))
            }
            Formula::Forall(w, body) => {
                if *w == v || !body.has_free(v) {
                    return None;
                }
                if t.has_free(*w) {
                    let mut avoid = body.free_vars();
                    t.collect_vars(&mut avoid);
                    avoid.insert(v);
                    let fresh = fresh_var(&avoid);
                    let renamed = body.substitute(*w, &Term::Var(fresh));
                    Some(Formula::forall(fresh, renamed.substitute(v, t)))
                } else {
                    body.subst_opt(v, t).map(|b| Formula::forall(*w, b))
                }
            }
        }
    }

    pub fn term_at(&self, path: &[usize]) -> Option<&Term> {
        let (&i, rest) = path.split_first()?;
        match (self, i) {
            (Formula::Eq(a, _), 0) | (Formula::Tr(a), 0) => a.term_at(rest),
            (Formula::Eq(_, b), 1) => b.term_at(rest),
            (Formula::Not(a), 0) | (Formula::Forall(_, a), 0) | (Formula::Imp(a, _), 0) => a.term_at(rest),
            (Formula::Imp(_, b), 1) => b.term_at(rest),
            _ => None,
        }
    }

    /// Replaces the term occurrence addressed by `path`. Binders along the
    /// path are left alone; the caller decides whether capture matters.
    pub fn replace_term_at(&self, path: &[usize], new: Term) -> Option<Formula> {
        let (&i, rest) = path.split_first()?;
        Some(match (self, i) {
            (Formula::Eq(a, b), 0) => Formula::Eq(a.replace_at(rest, new)?, b.clone()),
            (Formula::Eq(a, b), 1) => Formula::Eq(a.clone(), b.replace_at(rest, new)?),
            (Formula::Tr(a), 0) => Formula::Tr(a.replace_at(rest, new)?),
            (Formula::Not(a), 0) => Formula::not(a.replace_term_at(rest, new)?),
            (Formula::Imp(a, b), 0) => Formula::Imp(Arc::new(a.replace_term_at(rest, new)?), b.clone()),
            (Formula::Imp(a, b), 1) => Formula::Imp(a.clone(), Arc::new(b.replace_term_at(rest, new)?)),
            (Formula::Forall(v, a), 0) => Formula::forall(*v, a.replace_term_at(rest, new)?),
            _ => return None,
        })
    }

    /// Paths of every free occurrence of `v`, in left-to-right order.
    pub fn free_occurrences(&self, v: Var) -> Vec<Vec<usize>> {
        fn term_occ(t: &Term, v: Var, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if let Term::Var(w) = t {
                if *w == v {
                    out.push(prefix.clone());
                }
                return;
            }
            for i in 0..t.arity() {
                prefix.push(i);
                term_occ(t.child(i).expect("child within arity"), v, prefix, out);
                prefix.pop();
            }
        }
        fn go(f: &Formula, v: Var, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            match f {
                Formula::Eq(a, b) => {
                    for (i, t) in [a, b].into_iter().enumerate() {
                        prefix.push(i);
                        term_occ(t, v, prefix, out);
                        prefix.pop();
                    }
                }
                Formula::Tr(a) => {
                    prefix.push(0);
                    term_occ(a, v, prefix, out);
                    prefix.pop();
                }
                Formula::Not(a) => {
                    prefix.push(0);
                    go(a, v, prefix, out);
                    prefix.pop();
                }
                Formula::Imp(a, b) => {
                    for (i, g) in [a, b].into_iter().enumerate() {
                        prefix.push(i);
                        go(g, v, prefix, out);
                        prefix.pop();
                    }
                }
                Formula::Forall(w, a) => {
                    if *w != v {
                        prefix.push(0);
                        go(a, v, prefix, out);
                        prefix.pop();
                    }
                }
            }
        }
        let mut out = Vec::new();
        go(self, v, &mut Vec::new(), &mut out);
        out
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Eq(a, b) => 1 + a.size() + b.size(),
            Formula::Tr(a) => 1 + a.size(),
            Formula::Not(a) | Formula::Forall(_, a) => 1 + a.size(),
            Formula::Imp(a, b) => 1 + a.size() + b.size(),
        }
    }
}

pub(crate) fn fresh_var(avoid: &BTreeSet<Var>) -> Var {
    let mut i = 0;
    while avoid.contains(&Var(i)) {
        i += 1;
    }
    Var(i)
}

/// Either kind of expression; codes may denote both.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Expr {
    Term(Term),
    Formula(Formula),
}

impl Expr {
    pub fn free_vars(&self) -> BTreeSet<Var> {
        match self {
            Expr::Term(t) => t.free_vars(),
            Expr::Formula(f) => f.free_vars(),
        }
    }
}

impl From<Term> for Expr {
    fn from(t: Term) -> Self {
        Expr::Term(t)
    }
}

impl From<Formula> for Expr {
    fn from(f: Formula) -> Self {
        Expr::Formula(f)
    }
}

// Printing. Precedence levels: `+` = 1, `*` = 2, atoms = 3.
fn fmt_term(t: &Term, level: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if let Some(n) = as_numeral(t) {
        return if n == num_bigint::BigUint::default() { f.write_str("0") } else { write!(f, "#{n}") };
    }
    match t {
        Term::Var(v) => write!(f, "{v}"),
        Term::Zero => f.write_str("0"),
        Term::Succ(a) => {
            f.write_str("S(")?;
            fmt_term(a, 0, f)?;
            f.write_str(")")
        }
        Term::Add(a, b) | Term::Mul(a, b) => {
            let (own, op) = if matches!(t, Term::Add(..)) { (1, " + ") } else { (2, " * ") };
            let paren = level > own;
            if paren {
                f.write_str("(")?;
            }
            fmt_term(a, own, f)?;
            f.write_str(op)?;
            fmt_term(b, own + 1, f)?;
            if paren {
                f.write_str(")")?;
            }
            Ok(())
        }
        Term::App(sym, args) => {
            write!(f, "{}(", sym.name())?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                fmt_term(a, 0, f)?;
            }
            f.write_str(")")
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_term(self, 0, f)
    }
}

/// True when the printed form ends in a quantifier body, which would
/// swallow anything written after it.
fn ends_open(f: &Formula) -> bool {
    match f {
        Formula::Forall(..) => true,
        Formula::Not(a) => !matches!(**a, Formula::Imp(..)) && ends_open(a),
        _ => false,
    }
}

fn as_and(phi: &Formula) -> Option<(&Formula, &Formula)> {
    let Formula::Not(inner) = phi else { return None };
    let Formula::Imp(a, nb) = &**inner else { return None };
    let Formula::Not(b) = &**nb else { return None };
    Some((a, b))
}

fn fmt_operand(phi: &Formula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match phi {
        Formula::Eq(..) | Formula::Tr(..) => fmt_formula(phi, 1, f),
        _ => {
            f.write_str("(")?;
            fmt_formula(phi, 0, f)?;
            f.write_str(")")
        }
    }
}

// `<->` and `&` print as sugar; `op` is None for any other formula.
fn fmt_sugar(phi: &Formula, f: &mut fmt::Formatter<'_>) -> Option<fmt::Result> {
    let (op, a, b) = match (phi.as_iff(), as_and(phi)) {
        (Some((a, b)), _) => (" <-> ", a, b),
        (None, Some((a, b))) => (" & ", a, b),
        _ => return None,
    };
    Some(fmt_operand(a, f).and_then(|()| f.write_str(op)).and_then(|()| fmt_operand(b, f)))
}

// Levels: 0 = implication, 1 = prefix operators.
fn fmt_formula(phi: &Formula, level: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if as_and(phi).is_some() {
        f.write_str("(")?;
        fmt_sugar(phi, f).expect("conjunction shape")?;
        return f.write_str(")");
    }
    match phi {
        Formula::Eq(a, b) => write!(f, "{a} = {b}"),
        Formula::Tr(a) => write!(f, "T({a})"),
        Formula::Not(a) => {
            f.write_str("~")?;
            fmt_formula(a, 1, f)
        }
        Formula::Forall(v, a) => {
            write!(f, "forall {v}. ")?;
            fmt_formula(a, 0, f)
        }
        Formula::Imp(a, b) => {
            if level > 0 {
                f.write_str("(")?;
            }
            if matches!(**a, Formula::Imp(..)) || ends_open(a) {
                f.write_str("(")?;
                fmt_formula(a, 0, f)?;
                f.write_str(")")?;
            } else {
                fmt_formula(a, 1, f)?;
            }
            f.write_str(" -> ")?;
            fmt_formula(b, 0, f)?;
            if level > 0 {
                f.write_str(")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_sugar(self, f).unwrap_or_else(|| fmt_formula(self, 0, f))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Term(t) => t.fmt(f),
            Expr::Formula(p) => p.fmt(f),
        }
    }
}

pub fn pretty_print(e: &Expr) -> String {
    e.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> Term {
        Term::Var(Var(i))
    }

    #[test]
    fn var_names_round_trip() {
        for i in 0..40 {
            assert_eq!(Var::from_name(&Var(i).name()), Some(Var(i)));
        }
        assert_eq!(Var::from_name("v"), Some(Var::V));
        assert_eq!(Var::from_name("v03"), None);
        assert_eq!(Var::from_name("q"), None);
    }

    #[test]
    fn substitution_of_bound_variable_is_identity() {
        let phi = Formula::forall(Var::V, Formula::eq(v(4), v(4)));
        assert_eq!(phi.substitute(Var::V, &Term::Zero), phi);
    }

    #[test]
    fn substitution_renames_capturing_binder() {
        // forall w. v = w  with v := w
        let phi = Formula::forall(Var::W, Formula::eq(v(4), v(5)));
        let out = phi.substitute(Var::V, &v(5));
        let Formula::Forall(bound, body) = &out else { panic!("shape") };
        assert_ne!(*bound, Var::W);
        assert_eq!(out.free_vars(), BTreeSet::from([Var::W]));
        assert_eq!(**body, Formula::eq(v(5), Term::Var(*bound)));
        // smallest index outside {v, w} is x
        assert_eq!(*bound, Var::X);
    }

    #[test]
    fn paths_address_terms() {
        let phi = Formula::imp(
            Formula::tr(Term::iter(v(0), Term::Zero)),
            Formula::forall(Var::Y, Formula::eq(v(1), v(0))),
        );
        assert_eq!(phi.term_at(&[0, 0, 1]), Some(&Term::Zero));
        assert_eq!(phi.term_at(&[1, 0, 1]), Some(&v(0)));
        assert_eq!(phi.term_at(&[2]), None);
        let occ = phi.free_occurrences(Var::X);
        assert_eq!(occ, vec![vec![0, 0, 0], vec![1, 0, 1]]);
        let replaced = phi.replace_term_at(&[1, 0, 1], Term::Zero).unwrap();
        assert_eq!(replaced.free_occurrences(Var::X), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn iff_recognized() {
        let a = Formula::eq(Term::Zero, Term::Zero);
        let b = Formula::tr(Term::Zero);
        let iff = Formula::iff(a.clone(), b.clone());
        assert_eq!(iff.as_iff(), Some((&a, &b)));
        assert_eq!(a.as_iff(), None);
    }

    #[test]
    fn printing_parenthesizes_open_binders() {
        let all = Formula::forall(Var::X, Formula::eq(v(0), v(0)));
        let phi = Formula::imp(Formula::not(all.clone()), Formula::tr(Term::Zero));
        assert_eq!(phi.to_string(), "(~forall x. x = x) -> T(0)");
        let psi = Formula::not(Formula::imp(all, Formula::tr(Term::Zero)));
        assert_eq!(psi.to_string(), "~((forall x. x = x) -> T(0))");
        let t = Term::mul(Term::add(v(0), v(1)), Term::add(v(2), v(3)));
        assert_eq!(t.to_string(), "(x + y) * (z + u)");
    }

    #[test]
    fn app_checks_arity() {
        assert!(Term::app(FnSymbol::Iter, vec![Term::Zero]).is_err());
        assert!(Term::app(FnSymbol::Sub, vec![Term::Zero, Term::Zero, Term::Zero]).is_ok());
    }
}
