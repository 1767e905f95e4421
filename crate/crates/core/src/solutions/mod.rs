//! Exp-polynomial solutions `sum e^q_i p_i`, polynomial solution bases, the
//! point-symmetry action on the `gamma = 0` stratum, the determining-equation
//! solver and finite-dimensional kernel checks.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::diffop::{generator_ops, op_f, DiffOp};
use crate::linalg::MatrixQ;
use crate::poly::{factor_string, int, Monomial, Poly, Rational, Ring, TermWriter};
use crate::weyl::Generator;

mod determining;
mod group;
mod kernel;

pub use determining::{solve_determining, solve_determining_with, DeterminingReport};
pub use group::{group_act, GroupParams};
pub use kernel::{
    kernel_power_check, polynomial_factor_kernel_check, restricted_matrix, FactorKernelReport, KernelPowerReport,
    RestrictedOp,
};

const RING: Ring = Ring::TXY;

/// Finite sum `sum_i e^(q_i) * p_i`, keyed by exponent. Exponents that differ
/// by a nonzero constant are kept apart, since `e^c` is not rational.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExpPoly {
    summands: BTreeMap<Poly, Poly>,
}

impl ExpPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one(RING))
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::summand(Poly::zero(RING), p)
    }

    pub fn exp(q: Poly) -> Self {
        Self::summand(q, Poly::one(RING))
    }

    pub fn summand(q: Poly, p: Poly) -> Self {
        let mut out = Self::zero();
        out.add_summand(q, p);
        out
    }

    fn add_summand(&mut self, q: Poly, p: Poly) {
        if p.is_zero() {
            return;
        }
        let sum = match self.summands.remove(&q) {
            Some(old) => &old + &p,
            None => p,
        };
        if !sum.is_zero() {
            self.summands.insert(q, sum);
        }
    }

    /// `(exponent, prefactor)` pairs; the pure polynomial part comes first.
    pub fn summands(&self) -> impl Iterator<Item = (&Poly, &Poly)> {
        self.summands.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    /// The polynomial this is, when there is no exponential factor.
    pub fn as_poly(&self) -> Option<Poly> {
        match self.summands.len() {
            0 => Some(Poly::zero(RING)),
            1 => self.summands.get(&Poly::zero(RING)).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (q, p) in &self.summands {
            out.add_summand(q.clone(), p.scale(c));
        }
        out
    }

    pub fn pow(&self, k: u32) -> ExpPoly {
        let mut acc = ExpPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Applies a differential operator using `D_v(e^q f) = e^q (f_v + q_v f)`.
    pub fn apply_op(&self, a: &DiffOp) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (q, p) in &self.summands {
            let grads = [q.diff(0), q.diff(1), q.diff(2)];
            let mut cache: BTreeMap<[u32; 3], Poly> = BTreeMap::new();
            let mut total = Poly::zero(RING);
            for (d, c) in a.terms() {
                let f = shifted_derivative(p, &grads, d.0, &mut cache);
                total = &total + &(c * &f);
            }
            out.add_summand(q.clone(), total);
        }
        out
    }

    /// `F u`; zero exactly when `u` solves the equation.
    pub fn residual(&self) -> ExpPoly {
        self.apply_op(&op_f())
    }

    /// Largest total degree over all prefactors.
    pub fn prefactor_degree(&self) -> crate::Degree {
        self.summands
            .values()
            .map(Poly::degree)
            .max()
            .unwrap_or(crate::Degree::NegInfinity)
    }
}

/// `(D + grad q)^alpha p`, memoized over multi-indices.
fn shifted_derivative(p: &Poly, grads: &[Poly; 3], alpha: [u32; 3], cache: &mut BTreeMap<[u32; 3], Poly>) -> Poly {
    if alpha == [0, 0, 0] {
        return p.clone();
    }
    if let Some(v) = cache.get(&alpha) {
        return v.clone();
    }
    let var = alpha.iter().position(|&k| k > 0).expect("nonzero index");
    let mut lower = alpha;
    lower[var] -= 1;
    let f = shifted_derivative(p, grads, lower, cache);
    let v = &f.diff(var) + &(&grads[var] * &f);
    cache.insert(alpha, v.clone());
    v
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut tw = TermWriter::new(f, false);
        for (q, p) in &self.summands {
            if q.is_zero() {
                for (m, c) in p.terms().rev() {
                    tw.term(c, &factor_string(RING.names(), m.exponents()))?;
                }
            } else if *p == Poly::one(RING) {
                tw.raw(false, &alloc::format!("exp({})", q.to_compact_string()))?;
            } else {
                tw.raw(
                    false,
                    &alloc::format!("exp({})*({})", q.to_compact_string(), p.to_compact_string()),
                )?;
            }
        }
        tw.finish()
    }
}

impl Add for &ExpPoly {
    type Output = ExpPoly;
    fn add(self, rhs: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        for (q, p) in &rhs.summands {
            out.add_summand(q.clone(), p.clone());
        }
        out
    }
}

impl Sub for &ExpPoly {
    type Output = ExpPoly;
    fn sub(self, rhs: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        for (q, p) in &rhs.summands {
            out.add_summand(q.clone(), -p);
        }
        out
    }
}

impl Mul for &ExpPoly {
    type Output = ExpPoly;
    fn mul(self, rhs: &ExpPoly) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (qa, pa) in &self.summands {
            for (qb, pb) in &rhs.summands {
                out.add_summand(qa + qb, pa * pb);
            }
        }
        out
    }
}

impl Neg for &ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        self.scale(&int(-1))
    }
}

/// `(P3)^k (P2)^l 1` as a polynomial.
pub fn recursion_image(k: u32, l: u32) -> Poly {
    let ops = generator_ops();
    let mut u = Poly::one(RING);
    for _ in 0..l {
        u = ops[Generator::P2.slot()].apply_poly(&u);
    }
    for _ in 0..k {
        u = ops[Generator::P3.slot()].apply_poly(&u);
    }
    u
}

/// `(P3)^k (P2)^l 1` for `0 <= k + l <= n`, ordered by `k + l` then `k`.
pub fn poly_solution_basis(n: u32) -> Vec<ExpPoly> {
    let ops = generator_ops();
    let p3 = &ops[Generator::P3.slot()];
    let p2 = &ops[Generator::P2.slot()];
    let mut p2_powers = alloc::vec![Poly::one(RING)];
    for l in 1..=n as usize {
        let next = p2.apply_poly(&p2_powers[l - 1]);
        p2_powers.push(next);
    }
    let mut grid: BTreeMap<(u32, u32), Poly> = BTreeMap::new();
    let mut out = Vec::new();
    for s in 0..=n {
        for k in 0..=s {
            let l = s - k;
            let u = if k == 0 {
                p2_powers[l as usize].clone()
            } else {
                p3.apply_poly(&grid[&(k - 1, l)])
            };
            grid.insert((k, l), u.clone());
            out.push(ExpPoly::from_poly(u));
        }
    }
    out
}

/// Basis of the polynomial solutions of total degree `<= d`, read off the
/// exact nullspace of `F` on the monomials.
pub fn brute_force_solutions(d: u32) -> Vec<Poly> {
    let monomials = crate::poly::monomials_up_to(RING.arity(), d);
    let f = op_f();
    let images: Vec<Poly> = monomials
        .iter()
        .map(|m| f.apply_poly(&Poly::term(RING, m.clone(), Rational::one())))
        .collect();
    let mat = poly_columns(&images);
    mat.nullspace().into_iter().map(|v| combine(&monomials, &v)).collect()
}

fn combine(monomials: &[Monomial], v: &[Rational]) -> Poly {
    Poly::from_terms(
        RING,
        monomials
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

/// Coefficient matrix whose columns are the given polynomials.
pub(crate) fn poly_columns(polys: &[Poly]) -> MatrixQ {
    let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in polys {
        for (m, _) in p.terms() {
            let next = rows.len();
            rows.entry(m.clone()).or_insert(next);
        }
    }
    let mut mat = MatrixQ::zeros(rows.len(), polys.len());
    for (j, p) in polys.iter().enumerate() {
        for (m, c) in p.terms() {
            mat.set(rows[m], j, c.clone());
        }
    }
    mat
}

/// Linear combination `sum v_j p_j`.
pub(crate) fn combine_polys(polys: &[Poly], v: &[Rational]) -> Poly {
    let mut out = Poly::zero(RING);
    for (p, c) in polys.iter().zip(v) {
        if !c.is_zero() {
            out = &out + &p.scale(c);
        }
    }
    out
}

/// `t^(r+1)/(r+1) * (P3)^i (P2)^j 1`, a solution of `F u = t^r (P3)^i (P2)^j 1`.
pub fn particular_inhom(i: u32, j: u32, r: u32) -> ExpPoly {
    let t = Poly::var(RING, 0).pow(r + 1);
    let c = Rational::new(1.into(), (r + 1).into());
    ExpPoly::from_poly((&t * &recursion_image(i, j)).scale(&c))
}
