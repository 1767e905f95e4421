use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::diffop::{generator_ops, DiffOp};
use crate::linalg::{rank_of_vectors, MatrixQ};
use crate::poly::{Degree, Monomial, Poly, Rational};
use crate::weyl::Generator;
use crate::{Error, Result};

use super::{brute_force_solutions, combine_polys, poly_columns, ExpPoly};

/// An operator written as a matrix between two finite families of exp-polynomials.
#[derive(Clone, Debug)]
pub struct RestrictedOp {
    pub source: Vec<ExpPoly>,
    pub target: Vec<ExpPoly>,
    /// Column `j` holds the target coordinates of the image of `source[j]`.
    pub matrix: MatrixQ,
}

type Key = (Poly, Monomial);

fn flatten(u: &ExpPoly) -> BTreeMap<Key, Rational> {
    let mut out = BTreeMap::new();
    for (q, p) in u.summands() {
        for (m, c) in p.terms() {
            out.insert((q.clone(), m.clone()), c.clone());
        }
    }
    out
}

/// Coordinates of `a` applied to each source element in the target family.
pub fn restricted_matrix(a: &DiffOp, source: &[ExpPoly], target: &[ExpPoly]) -> Result<RestrictedOp> {
    let flat_target: Vec<BTreeMap<Key, Rational>> = target.iter().map(flatten).collect();
    let images: Vec<BTreeMap<Key, Rational>> = source.iter().map(|u| flatten(&u.apply_op(a))).collect();
    let mut keys: BTreeMap<Key, usize> = BTreeMap::new();
    for v in flat_target.iter().chain(&images) {
        for k in v.keys() {
            let next = keys.len();
            keys.entry(k.clone()).or_insert(next);
        }
    }
    let dense = |v: &BTreeMap<Key, Rational>| {
        let mut out = alloc::vec![Rational::zero(); keys.len()];
        for (k, c) in v {
            out[keys[k]] = c.clone();
        }
        out
    };
    let tgt_cols: Vec<Vec<Rational>> = flat_target.iter().map(dense).collect();
    let tgt = MatrixQ::from_columns(keys.len(), &tgt_cols)?;
    if tgt.rank() != target.len() {
        return Err(Error::DependentBasis);
    }
    let mut matrix = MatrixQ::zeros(target.len(), source.len());
    for (j, image) in images.iter().enumerate() {
        let coords = tgt.solve(&dense(image))?.ok_or(Error::OutsideSpan { index: j })?;
        for (i, c) in coords.into_iter().enumerate() {
            matrix.set(i, j, c);
        }
    }
    Ok(RestrictedOp {
        source: source.to_vec(),
        target: target.to_vec(),
        matrix,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelPowerReport {
    pub a: Generator,
    pub b: Generator,
    pub r: u32,
    pub n: u32,
    /// Degree raised by one application of `b` to a kernel element.
    pub degree_shift: u32,
    /// `dim(ker A ∩ S_{N - d i})` for `i = 0..r`.
    pub piece_dims: Vec<usize>,
    /// `dim(ker A^r ∩ S_N)`.
    pub power_kernel_dim: usize,
    /// `B^i K_i ⊆ ker A^r ∩ S_N` for every `i`.
    pub containment: bool,
    /// The images `B^i K_i` are independent.
    pub direct: bool,
    pub dimensions_match: bool,
}

impl KernelPowerReport {
    pub fn pass(&self) -> bool {
        self.containment && self.direct && self.dimensions_match
    }
}

/// Kernel of `op` on the span of `basis`, as polynomials.
fn kernel_on(op: &DiffOp, basis: &[Poly]) -> Vec<Poly> {
    if basis.is_empty() {
        return Vec::new();
    }
    let images: Vec<Poly> = basis.iter().map(|u| op.apply_poly(u)).collect();
    if images.iter().all(Poly::is_zero) {
        return basis.to_vec();
    }
    poly_columns(&images)
        .nullspace()
        .into_iter()
        .map(|v| combine_polys(basis, &v))
        .collect()
}

fn solutions_up_to(degree: i64) -> Vec<Poly> {
    if degree < 0 {
        return Vec::new();
    }
    brute_force_solutions(degree as u32)
}

/// Checks `ker A^r = ⊕_{i<r} B^i ker A` on polynomial solutions of total
/// degree `<= n`, where `[A, B]` is a nonzero constant.
pub fn kernel_power_check(a: Generator, b: Generator, r: u32, n: u32) -> Result<KernelPowerReport> {
    let degree_shift = match (a, b) {
        (Generator::P0, Generator::P3) => 2,
        (Generator::P1, Generator::P2) => 1,
        _ => {
            return Err(Error::InvalidPair(format!(
                "[{}, {}] is not a nonzero constant",
                a.name(),
                b.name()
            )))
        }
    };
    if r == 0 {
        return Err(Error::InvalidParameters("r must be at least 1".into()));
    }
    let ops = generator_ops();
    let a_op = &ops[a.slot()];
    let b_op = &ops[b.slot()];
    let a_pow = a_op.pow(r);

    let full = solutions_up_to(i64::from(n));
    let power_kernel = kernel_on(&a_pow, &full);

    let mut piece_dims = Vec::new();
    let mut images: Vec<Poly> = Vec::new();
    let mut containment = true;
    for i in 0..r {
        let bound = i64::from(n) - i64::from(degree_shift * i);
        let piece = kernel_on(a_op, &solutions_up_to(bound));
        piece_dims.push(piece.len());
        for v in piece {
            let mut w = v;
            for _ in 0..i {
                w = b_op.apply_poly(&w);
            }
            let in_kernel = a_pow.apply_poly(&w).is_zero();
            let in_range = w.degree() <= Degree::Finite(n);
            containment &= in_kernel && in_range;
            images.push(w);
        }
    }
    let total: usize = piece_dims.iter().sum();
    let direct = images.is_empty() || poly_columns(&images).rank() == total;
    Ok(KernelPowerReport {
        a,
        b,
        r,
        n,
        degree_shift,
        piece_dims,
        power_kernel_dim: power_kernel.len(),
        containment,
        direct,
        dimensions_match: power_kernel.len() == total,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorKernelReport {
    /// `dim ker P(A)`.
    pub total_dim: usize,
    /// `dim ker (A - lambda_i)^k_i`, one per root.
    pub factor_dims: Vec<usize>,
    /// Every factor kernel lies in `ker P(A)`.
    pub contained: bool,
    /// The factor kernels are independent.
    pub direct: bool,
    pub dimensions_match: bool,
}

impl FactorKernelReport {
    pub fn pass(&self) -> bool {
        self.contained && self.direct && self.dimensions_match
    }
}

/// Checks `ker P(A) = ⊕ ker (A - lambda_i)^k_i` for `P = prod (x - lambda_i)^k_i`
/// with distinct roots.
pub fn polynomial_factor_kernel_check(a: &RestrictedOp, roots: &[(Rational, u32)]) -> Result<FactorKernelReport> {
    let m = &a.matrix;
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let dim = m.rows();
    let mut p_of_a = MatrixQ::identity(dim);
    let mut kernels = Vec::new();
    for (lambda, k) in roots {
        let factor = m.shift(lambda)?.pow(*k)?;
        p_of_a = p_of_a.mul(&factor)?;
        kernels.push(factor.nullspace());
    }
    let total = p_of_a.nullspace();
    let mut contained = true;
    let mut all: Vec<Vec<Rational>> = Vec::new();
    for ker in &kernels {
        for v in ker {
            contained &= p_of_a.mul_vec(v)?.iter().all(Zero::is_zero);
            all.push(v.clone());
        }
    }
    let factor_dims: Vec<usize> = kernels.iter().map(Vec::len).collect();
    let sum: usize = factor_dims.iter().sum();
    let direct = all.is_empty() || rank_of_vectors(dim, &all)? == sum;
    Ok(FactorKernelReport {
        total_dim: total.len(),
        factor_dims,
        contained,
        direct,
        dimensions_match: total.len() == sum,
    })
}
