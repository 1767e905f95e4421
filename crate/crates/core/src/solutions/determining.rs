use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::diffop::op_f;
use crate::linalg::MatrixQ;
use crate::poly::{int, Monomial, Poly, Rational, Ring};

const RING: Ring = Ring::TXY;

/// Coefficient `eta^{kl}` paired with a monomial in `(t, x, y)`.
type RowKey = ((u32, u32), Monomial);

/// Solution space of the determining system
/// `F eta^{kl} - (k+1) eta^{k+1,l-1} - 2 d_x eta^{k-1,l} = 0`, `k + l <= n + 1`,
/// for polynomial coefficients `eta^{kl}` (`k + l <= n`) of degree `<= degree_cap`.
#[derive(Clone, Debug)]
pub struct DeterminingReport {
    pub n: u32,
    pub degree_cap: u32,
    pub dimension: usize,
    /// Each characteristic as its nonzero coefficients `((k, l), eta^{kl})`.
    pub basis: Vec<Vec<((u32, u32), Poly)>>,
    pub unknowns: usize,
    pub blocks: usize,
    /// The progress callback stopped the solve; `dimension` is a lower bound.
    pub interrupted: bool,
}

impl DeterminingReport {
    pub fn default_cap(n: u32) -> u32 {
        4 * n
    }
}

/// Monomials `t^a x^b y^c` with `2a + b + 3c = weight` and degree `<= cap`.
fn monomials_of_weight(weight: i64, cap: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if weight < 0 {
        return out;
    }
    let w = weight as u32;
    for c in 0..=w / 3 {
        for a in 0..=(w - 3 * c) / 2 {
            let b = w - 3 * c - 2 * a;
            if a + b + c <= cap {
                out.push(Monomial::new(&[a, b, c]));
            }
        }
    }
    out
}

pub fn solve_determining(n: u32, degree_cap: u32) -> DeterminingReport {
    solve_determining_with(n, degree_cap, |_, _| true)
}

/// With weights `t:2, x:1, y:3`, a monomial of weight `W` in `eta^{kl}` only
/// meets monomials in the same block `w = W - k - 3l`, so every block is
/// solved separately. `keep_going(done, total)` is polled between blocks.
pub fn solve_determining_with<F>(n: u32, degree_cap: u32, mut keep_going: F) -> DeterminingReport
where
    F: FnMut(usize, usize) -> bool,
{
    let f = op_f();
    let pairs: Vec<(u32, u32)> = (0..=n).flat_map(|s| (0..=s).map(move |k| (k, s - k))).collect();
    let lo = -3 * i64::from(n);
    let hi = 3 * i64::from(degree_cap);
    let total_blocks = (hi - lo + 1) as usize;
    let mut basis = Vec::new();
    let mut unknowns = 0;
    let mut interrupted = false;
    let mut blocks = 0;
    for w in lo..=hi {
        if !keep_going(blocks, total_blocks) {
            interrupted = true;
            break;
        }
        blocks += 1;
        let mut cols: Vec<((u32, u32), Monomial)> = Vec::new();
        for &(k, l) in &pairs {
            for m in monomials_of_weight(w + i64::from(k) + 3 * i64::from(l), degree_cap) {
                cols.push(((k, l), m));
            }
        }
        if cols.is_empty() {
            continue;
        }
        unknowns += cols.len();
        let mut rows: BTreeMap<RowKey, usize> = BTreeMap::new();
        let mut entries: Vec<Vec<(usize, Rational)>> = Vec::with_capacity(cols.len());
        for ((k, l), m) in &cols {
            let (k, l) = (*k, *l);
            let unit = Poly::term(RING, m.clone(), Rational::one());
            let mut col: Vec<(RowKey, Rational)> = Vec::new();
            for (mono, c) in f.apply_poly(&unit).terms() {
                col.push((((k, l), mono.clone()), c.clone()));
            }
            if k >= 1 {
                col.push((((k - 1, l + 1), m.clone()), -int(i64::from(k))));
            }
            for (mono, c) in unit.diff(1).terms() {
                col.push((((k + 1, l), mono.clone()), c * int(-2)));
            }
            let mut placed = Vec::with_capacity(col.len());
            for (key, c) in col {
                let next = rows.len();
                let r = *rows.entry(key).or_insert(next);
                placed.push((r, c));
            }
            entries.push(placed);
        }
        let mut mat = MatrixQ::zeros(rows.len(), cols.len());
        for (j, col) in entries.iter().enumerate() {
            for (r, c) in col {
                let v = mat.get(*r, j) + c;
                mat.set(*r, j, v);
            }
        }
        for v in mat.nullspace() {
            let mut eta: BTreeMap<(u32, u32), Poly> = BTreeMap::new();
            for (((k, l), m), c) in cols.iter().zip(&v) {
                if c.is_zero() {
                    continue;
                }
                let e = eta.entry((*k, *l)).or_insert_with(|| Poly::zero(RING));
                *e = &*e + &Poly::term(RING, m.clone(), c.clone());
            }
            basis.push(eta.into_iter().collect());
        }
    }
    DeterminingReport {
        n,
        degree_cap,
        dimension: basis.len(),
        basis,
        unknowns,
        blocks,
        interrupted,
    }
}
