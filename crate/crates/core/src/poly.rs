//! Exact rationals and dense-exponent multivariate polynomials.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::{self, Write as _};
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Bit length of numerator plus denominator; used to pick cheap pivots.
pub(crate) fn bit_size(q: &Rational) -> u64 {
    q.numer().bits() + q.denom().bits()
}

/// Degree or order with the `-inf` sentinel for the zero element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Ordered list of variable names. The main ring is `(t, x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ring {
    names: &'static [&'static str],
}

impl Ring {
    pub const TXY: Ring = Ring {
        names: &["t", "x", "y"],
    };

    pub const fn new(names: &'static [&'static str]) -> Self {
        Ring { names }
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &'static [&'static str] {
        self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| *n == name)
            .ok_or_else(|| Error::UnknownVariable(name.into()))
    }
}

/// Exponent vector. Ordered graded-lexicographically, the first variable being
/// the most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u32; 4]>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(SmallVec::from_elem(0, arity))
    }

    pub fn new(exponents: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exponents))
    }

    pub fn var(arity: usize, index: usize) -> Self {
        let mut m = Self::one(arity);
        m.0[index] = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of the given arity with total degree `<= max_degree`,
/// in ascending graded-lex order.
pub fn monomials_up_to(arity: usize, max_degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        let mut current = SmallVec::<[u32; 4]>::from_elem(0, arity);
        compositions(d, 0, &mut current, &mut out);
    }
    out.sort();
    out
}

fn compositions(rest: u32, slot: usize, current: &mut SmallVec<[u32; 4]>, out: &mut Vec<Monomial>) {
    if slot + 1 == current.len() {
        current[slot] = rest;
        out.push(Monomial(current.clone()));
        return;
    }
    if current.is_empty() {
        if rest == 0 {
            out.push(Monomial(current.clone()));
        }
        return;
    }
    for e in 0..=rest {
        current[slot] = e;
        compositions(rest - e, slot + 1, current, out);
    }
    current[slot] = 0;
}

/// Polynomial with rational coefficients. Zero coefficients are never stored,
/// so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(ring: Ring) -> Self {
        Poly {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: Ring, c: Rational) -> Self {
        Self::term(ring, Monomial::one(ring.arity()), c)
    }

    pub fn term(ring: Ring, monomial: Monomial, c: Rational) -> Self {
        assert_eq!(monomial.0.len(), ring.arity(), "monomial arity");
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(monomial, c);
        }
        p
    }

    pub fn var(ring: Ring, index: usize) -> Self {
        Self::term(ring, Monomial::var(ring.arity(), index), Rational::one())
    }

    pub fn var_named(ring: Ring, name: &str) -> Result<Self> {
        Ok(Self::var(ring, ring.index_of(name)?))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(ring: Ring, terms: I) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.0.len(), ring.arity(), "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() == 0)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.ring.arity()))
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Degree in a single variable; `-inf` for zero.
    pub fn degree_in(&self, index: usize) -> Degree {
        self.terms
            .keys()
            .map(|m| m.0[index])
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Poly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let mut out = Poly::zero(self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ring);
        }
        Poly {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by a monomial with coefficient `c`.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ring);
        }
        Poly {
            ring: self.ring,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.ring);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to the variable at `index`.
    pub fn diff(&self, index: usize) -> Poly {
        let mut out = Poly::zero(self.ring);
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[index] -= 1;
            out.add_term(dm, c * int(i64::from(e)));
        }
        out
    }

    pub fn diff_var(&self, name: &str) -> Result<Poly> {
        Ok(self.diff(self.ring.index_of(name)?))
    }

    /// Composes with one polynomial per variable. The result lives in the ring
    /// of the assignments.
    pub fn subst(&self, assignments: &[Poly]) -> Result<Poly> {
        if assignments.len() != self.ring.arity() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.arity(),
                found: assignments.len(),
            });
        }
        let target = match assignments.first() {
            Some(p) => p.ring,
            None => self.ring,
        };
        if assignments.iter().any(|p| p.ring != target) {
            return Err(Error::RingMismatch);
        }
        // Cache powers of each assignment.
        let mut powers: Vec<Vec<Poly>> = assignments
            .iter()
            .map(|a| alloc::vec![Poly::one(target), a.clone()])
            .collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (slot, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[slot];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &assignments[slot];
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
            }
            for (mm, cc) in term.terms {
                out.add_term(mm, cc);
            }
        }
        Ok(out)
    }

    /// Substitution by variable name; variables without an assignment are kept.
    pub fn subst_named(&self, assignments: &[(&str, Poly)]) -> Result<Poly> {
        let mut full: Vec<Poly> = (0..self.ring.arity()).map(|i| Poly::var(self.ring, i)).collect();
        for (name, p) in assignments {
            if p.ring != self.ring {
                return Err(Error::RingMismatch);
            }
            full[self.ring.index_of(name)?] = p.clone();
        }
        self.subst(&full)
    }

    /// Canonical text without spaces around `+`/`-`.
    pub fn to_compact_string(&self) -> String {
        let mut s = String::new();
        self.write_terms(&mut s, true).expect("writing to a String");
        s
    }

    pub(crate) fn write_terms<W: fmt::Write>(&self, w: &mut W, compact: bool) -> fmt::Result {
        let mut tw = TermWriter::new(w, compact);
        for (m, c) in self.terms.iter().rev() {
            tw.term(c, &factor_string(self.ring.names(), m.exponents()))?;
        }
        tw.finish()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_terms(f, false)
    }
}

/// `name^e` factors joined by `*`; empty for the unit monomial.
pub(crate) fn factor_string(names: &[&str], exponents: &[u32]) -> String {
    let mut s = String::new();
    for (name, &e) in names.iter().zip(exponents) {
        if e == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('*');
        }
        s.push_str(name);
        if e > 1 {
            let _ = write!(s, "^{e}");
        }
    }
    s
}

/// Writes a signed sum `c1*f1 + c2*f2 - ...` in the canonical style shared by
/// every printable type. Prints `0` for an empty sum.
pub(crate) struct TermWriter<'a, W: fmt::Write> {
    w: &'a mut W,
    compact: bool,
    first: bool,
}

impl<'a, W: fmt::Write> TermWriter<'a, W> {
    pub(crate) fn new(w: &'a mut W, compact: bool) -> Self {
        TermWriter {
            w,
            compact,
            first: true,
        }
    }

    pub(crate) fn sign(&mut self, negative: bool) -> fmt::Result {
        match (self.first, negative, self.compact) {
            (true, true, _) => self.w.write_char('-')?,
            (true, false, _) => {}
            (false, true, false) => self.w.write_str(" - ")?,
            (false, false, false) => self.w.write_str(" + ")?,
            (false, true, true) => self.w.write_char('-')?,
            (false, false, true) => self.w.write_char('+')?,
        }
        self.first = false;
        Ok(())
    }

    pub(crate) fn term(&mut self, c: &Rational, factors: &str) -> fmt::Result {
        self.sign(c.is_negative())?;
        let a = c.abs();
        if factors.is_empty() {
            write!(self.w, "{a}")
        } else if a.is_one() {
            self.w.write_str(factors)
        } else {
            write!(self.w, "{a}*{factors}")
        }
    }

    /// Writes an already signed chunk such as `-3*x*Dx` or `(x+y)*Dy`.
    pub(crate) fn raw(&mut self, negative: bool, body: &str) -> fmt::Result {
        self.sign(negative)?;
        self.w.write_str(body)
    }

    pub(crate) fn finish(self) -> fmt::Result {
        if self.first {
            self.w.write_char('0')?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            /// Panics on a ring mismatch; use the `try_` variant to get an error.
            fn $method(self, rhs: &Poly) -> Poly {
                self.$try(rhs).expect("ring mismatch")
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use alloc::string::ToString;

    fn p(s: &str) -> Poly {
        parse_poly(s, Ring::TXY).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p("x + t") * &p("x - t"), p("x^2 - t^2"));
        assert_eq!(&p("3*t*x^2 - x") + &Poly::zero(Ring::TXY), p("3*t*x^2 - x"));
        assert_eq!(&p("3*t*x - 3*y") * &p("x"), p("3*t*x^2 - 3*x*y"));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        const AB: Ring = Ring::new(&["a", "b"]);
        let a = Poly::var(AB, 0);
        assert_eq!(a.try_add(&p("x")), Err(Error::RingMismatch));
        assert_eq!(a.try_mul(&p("x")), Err(Error::RingMismatch));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("t*x^2").diff_var("x").unwrap(), p("2*t*x"));
        assert!(p("x^2 + 2*t").diff_var("y").unwrap().is_zero());
        assert_eq!(p("3*t^2 + 3*t*x^2 - 3*x*y").diff_var("t").unwrap(), p("6*t + 3*x^2"));
        assert_eq!(p("x").diff_var("z"), Err(Error::UnknownVariable("z".into())));
    }

    #[test]
    fn substitution_examples() {
        let lam = rat(5, 7);
        let shifted = &p("x") + &p("t").scale(&(int(2) * &lam));
        assert_eq!(p("x").subst_named(&[("x", shifted.clone())]).unwrap(), shifted);
        assert_eq!(p("y - t*x").subst(&[p("t"), p("x"), p("y")]).unwrap(), p("y - t*x"));
        assert_eq!(
            p("x^2").subst_named(&[("x", p("x + t"))]).unwrap(),
            p("x^2 + 2*t*x + t^2")
        );
    }

    #[test]
    fn canonical_text() {
        assert_eq!(p("-3*x*y + 3*t*x^2").to_string(), "3*t*x^2 - 3*x*y");
        assert_eq!(p("2*t + x^2").to_string(), "x^2 + 2*t");
        assert_eq!(p("1/2*t^2*x - 1").to_string(), "1/2*t^2*x - 1");
        assert_eq!(Poly::zero(Ring::TXY).to_string(), "0");
        assert_eq!(p("4*x^3 + 27*y").to_compact_string(), "4*x^3+27*y");
    }

    #[test]
    fn zero_has_negative_infinite_degree() {
        assert_eq!(Poly::zero(Ring::TXY).degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(p("t*x^2 + y").degree(), Degree::Finite(3));
    }

    #[test]
    fn monomial_enumeration_counts() {
        // C(d + 3, 3) monomials of degree <= d in three variables.
        assert_eq!(monomials_up_to(3, 0).len(), 1);
        assert_eq!(monomials_up_to(3, 2).len(), 10);
        assert_eq!(monomials_up_to(3, 8).len(), 165);
        assert_eq!(monomials_up_to(4, 5).len(), 126);
        let ms = monomials_up_to(3, 3);
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
    }
}
