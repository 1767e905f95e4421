//! The algebra generated by the recursion operators `P3, P2, P1, P0`.
//!
//! The defining relations are `[P3, P0] = 3`, `[P1, P2] = 1`, and all other
//! generator pairs commute. Elements are stored in the normal-ordered basis
//! `P3^i3 * P2^i2 * P1^i1 * P0^i0`. Because the relations split into two
//! independent Weyl pairs, `(P3, P0)` and `(P2, P1)`, a product of two basis
//! monomials only needs two pair reorderings, each with a closed form.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::{factor_string, int, Degree, Rational, TermWriter};

mod basis;
mod closure;
mod generic;
mod named;

pub use basis::{
    basis_deg, basis_ord, basis_ord_labels, center_dimension_up_to, centralizer_check, dim_layer_closed,
    dim_ord_closed, dim_ord_sum, grading_decompose, BasisLabel,
};
pub use closure::{lie_closure, lie_closure_with, paper_generators, ClosureProgress, ClosureReport};
pub use generic::{from_w2, to_w2, GenMonomial, GenWeylElem};
pub use named::{casimir, NamedElement};

/// Printed names of the generators in normal order.
pub const GENERATOR_NAMES: [&str; 4] = ["P3", "P2", "P1", "P0"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    P3,
    P2,
    P1,
    P0,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::P3, Generator::P2, Generator::P1, Generator::P0];

    /// Slot in the exponent array `[i3, i2, i1, i0]`.
    pub fn slot(self) -> usize {
        match self {
            Generator::P3 => 0,
            Generator::P2 => 1,
            Generator::P1 => 2,
            Generator::P0 => 3,
        }
    }

    pub fn name(self) -> &'static str {
        GENERATOR_NAMES[self.slot()]
    }
}

/// Exponents `[i3, i2, i1, i0]` of `P3^i3 P2^i2 P1^i1 P0^i0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PMonomial(pub [u32; 4]);

impl PMonomial {
    pub const ONE: PMonomial = PMonomial([0; 4]);

    pub fn new(i3: u32, i2: u32, i1: u32, i0: u32) -> Self {
        PMonomial([i3, i2, i1, i0])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Grading weight `i3 + i2 - i1 - i0`.
    pub fn weight(&self) -> i64 {
        let [i3, i2, i1, i0] = self.0.map(i64::from);
        i3 + i2 - i1 - i0
    }

    /// All monomials of degree `<= n`, ascending graded-lex.
    pub fn up_to_degree(n: u32) -> Vec<PMonomial> {
        let mut out = Vec::new();
        for d in 0..=n {
            out.extend(Self::of_degree(d));
        }
        out
    }

    /// All monomials of degree exactly `d`, ascending lex.
    pub fn of_degree(d: u32) -> Vec<PMonomial> {
        let mut out = Vec::new();
        for i3 in 0..=d {
            for i2 in 0..=d - i3 {
                for i1 in 0..=d - i3 - i2 {
                    out.push(PMonomial([i3, i2, i1, d - i3 - i2 - i1]));
                }
            }
        }
        out.sort();
        out
    }
}

impl Ord for PMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for PMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// One term `coeff * A^a_exp * B^b_exp` of a pair reordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairTerm {
    pub a_exp: u32,
    pub b_exp: u32,
    pub coeff: Rational,
}

/// Normal-orders `B^b_exp * A^a_exp` into `A`-before-`B` form, where
/// `[A, B] = c` is central:
///
/// `B^b A^a = sum_k k! C(b,k) C(a,k) (-c)^k A^(a-k) B^(b-k)`.
pub fn pair_reorder(b_exp: u32, a_exp: u32, c: &Rational) -> Vec<PairTerm> {
    if c.is_zero() {
        return alloc::vec![PairTerm {
            a_exp,
            b_exp,
            coeff: Rational::one(),
        }];
    }
    let neg_c = -c;
    let mut out = Vec::new();
    // k! C(b,k) C(a,k) built incrementally:
    // ratio from k to k+1 is (b-k)(a-k)/(k+1).
    let mut comb = BigInt::one();
    let mut power = Rational::one();
    for k in 0..=a_exp.min(b_exp) {
        out.push(PairTerm {
            a_exp: a_exp - k,
            b_exp: b_exp - k,
            coeff: Rational::from_integer(comb.clone()) * &power,
        });
        comb = comb * BigInt::from(b_exp - k) * BigInt::from(a_exp - k) / BigInt::from(k + 1);
        power *= &neg_c;
    }
    out
}

/// Element of the recursion-operator algebra in normal-ordered form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeylElem {
    terms: BTreeMap<PMonomial, Rational>,
}

impl WeylElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        Self::monomial(PMonomial::ONE, c)
    }

    pub fn monomial(m: PMonomial, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn generator(g: Generator) -> Self {
        let mut exps = [0; 4];
        exps[g.slot()] = 1;
        Self::monomial(PMonomial(exps), Rational::one())
    }

    pub fn p3() -> Self {
        Self::generator(Generator::P3)
    }
    pub fn p2() -> Self {
        Self::generator(Generator::P2)
    }
    pub fn p1() -> Self {
        Self::generator(Generator::P1)
    }
    pub fn p0() -> Self {
        Self::generator(Generator::P0)
    }

    pub fn from_terms<I: IntoIterator<Item = (PMonomial, Rational)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub(crate) fn add_term(&mut self, m: PMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&PMonomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn term_map(&self) -> &BTreeMap<PMonomial, Rational> {
        &self.terms
    }

    pub fn coeff(&self, m: &PMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|m| *m == PMonomial::ONE)
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(PMonomial::degree)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn scale(&self, c: &Rational) -> WeylElem {
        if c.is_zero() {
            return WeylElem::zero();
        }
        WeylElem {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// `[self, other] = self * other - other * self`.
    pub fn commutator(&self, other: &WeylElem) -> WeylElem {
        &(self * other) - &(other * self)
    }

    pub fn pow(&self, k: u32) -> WeylElem {
        let mut acc = WeylElem::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Product of two basis monomials.
    pub fn monomial_product(a: &PMonomial, b: &PMonomial) -> WeylElem {
        let [i3, i2, i1, i0] = a.0;
        let [j3, j2, j1, j0] = b.0;
        let outer = pair_reorder(i0, j3, &int(3));
        let inner = pair_reorder(i1, j2, &int(-1));
        let mut out = WeylElem::zero();
        for o in &outer {
            for n in &inner {
                let m = PMonomial([i3 + o.a_exp, i2 + n.a_exp, n.b_exp + j1, o.b_exp + j0]);
                out.add_term(m, &o.coeff * &n.coeff);
            }
        }
        out
    }

    fn mul_impl(&self, other: &WeylElem) -> WeylElem {
        let mut out = WeylElem::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                for (m, k) in Self::monomial_product(ma, mb).terms {
                    out.add_term(m, k * &c);
                }
            }
        }
        out
    }

    /// Sparse coefficient vector keyed by basis monomial.
    pub fn to_vector(&self) -> BTreeMap<PMonomial, Rational> {
        self.terms.clone()
    }
}

impl fmt::Display for WeylElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut tw = TermWriter::new(f, false);
        for (m, c) in self.terms.iter().rev() {
            tw.term(c, &factor_string(&GENERATOR_NAMES, &m.0))?;
        }
        tw.finish()
    }
}

macro_rules! weyl_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&WeylElem> for &WeylElem {
            type Output = WeylElem;
            fn $method(self, rhs: &WeylElem) -> WeylElem {
                let f: fn(&WeylElem, &WeylElem) -> WeylElem = $body;
                f(self, rhs)
            }
        }
        impl $trait<WeylElem> for WeylElem {
            type Output = WeylElem;
            fn $method(self, rhs: WeylElem) -> WeylElem {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&WeylElem> for WeylElem {
            type Output = WeylElem;
            fn $method(self, rhs: &WeylElem) -> WeylElem {
                (&self).$method(rhs)
            }
        }
    };
}

weyl_binop!(Add, add, |a, b| {
    let mut out = a.clone();
    for (m, c) in &b.terms {
        out.add_term(*m, c.clone());
    }
    out
});
weyl_binop!(Sub, sub, |a, b| {
    let mut out = a.clone();
    for (m, c) in &b.terms {
        out.add_term(*m, -c);
    }
    out
});
weyl_binop!(Mul, mul, WeylElem::mul_impl);

impl Neg for &WeylElem {
    type Output = WeylElem;
    fn neg(self) -> WeylElem {
        self.scale(&-Rational::one())
    }
}

impl Neg for WeylElem {
    type Output = WeylElem;
    fn neg(self) -> WeylElem {
        -&self
    }
}
