use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::linalg::MatrixQ;

use super::{casimir, PMonomial, WeylElem};

/// Label `C^m * monomial` of an order-basis element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisLabel {
    pub casimir_power: u32,
    pub monomial: PMonomial,
}

/// All monomials of degree `<= n`, ascending graded-lex.
pub fn basis_deg(n: u32) -> Vec<PMonomial> {
    PMonomial::up_to_degree(n)
}

/// Labels of the order-`<= n` basis: plain monomials of degree `<= n`, then
/// `C^m * m'` with `m >= 1` and `deg m' + 3m = n`.
pub fn basis_ord_labels(n: u32) -> Vec<BasisLabel> {
    let mut out: Vec<BasisLabel> = basis_deg(n)
        .into_iter()
        .map(|monomial| BasisLabel {
            casimir_power: 0,
            monomial,
        })
        .collect();
    for m in 1..=n / 3 {
        out.extend(PMonomial::of_degree(n - 3 * m).into_iter().map(|monomial| BasisLabel {
            casimir_power: m,
            monomial,
        }));
    }
    out
}

/// The order-`<= n` basis expanded to normal form.
pub fn basis_ord(n: u32) -> Vec<WeylElem> {
    let c = casimir();
    let mut powers = alloc::vec![WeylElem::one()];
    for _ in 0..n / 3 {
        let next = powers.last().map(|p| p * &c).unwrap_or_else(WeylElem::one);
        powers.push(next);
    }
    basis_ord_labels(n)
        .into_iter()
        .map(|l| {
            let mono = WeylElem::monomial(l.monomial, crate::poly::int(1));
            if l.casimir_power == 0 {
                mono
            } else {
                &powers[l.casimir_power as usize] * &mono
            }
        })
        .collect()
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Closed form of the dimension of the order-`<= n` subspace.
pub fn dim_ord_closed(n: u64) -> u64 {
    match n % 3 {
        1 => (n + 2) * (n + 2) * (n * n + 4 * n + 5) / 18,
        _ => (n + 1) * (n + 3) * (n * n + 4 * n + 6) / 18,
    }
}

/// Closed form of `dim(order <= n) - dim(order <= n-1)`.
pub fn dim_layer_closed(n: u64) -> u64 {
    match n % 3 {
        0 => (2 * n + 3) * (n * n + 3 * n + 3) / 9,
        1 => (n + 2) * (2 * n * n + 5 * n + 5) / 9,
        _ => (n + 1) * (2 * n * n + 7 * n + 8) / 9,
    }
}

/// Sum form `sum_k C(k+3,3) + sum_{k=1}^{n/3} C(n-3(k-1), 3)`.
pub fn dim_ord_sum(n: u64) -> u64 {
    let monomials: u64 = (0..=n).map(|k| binom(k + 3, 3)).sum();
    let casimir_part: u64 = (1..=n / 3).map(|k| binom(n - 3 * (k - 1), 3)).sum();
    monomials + casimir_part
}

/// Splits `a` by the grading weight of its monomials.
pub fn grading_decompose(a: &WeylElem) -> BTreeMap<i64, WeylElem> {
    let mut out: BTreeMap<i64, WeylElem> = BTreeMap::new();
    for (m, c) in a.terms() {
        out.entry(m.weight()).or_default().add_term(*m, c.clone());
    }
    out
}

pub fn centralizer_check(a: &WeylElem, b: &WeylElem) -> bool {
    a.commutator(b).is_zero()
}

/// Dimension of the space of elements of degree `<= d` commuting with all
/// four generators.
pub fn center_dimension_up_to(d: u32) -> usize {
    let unknowns = basis_deg(d);
    let gens = [WeylElem::p3(), WeylElem::p2(), WeylElem::p1(), WeylElem::p0()];
    let mut rows: BTreeMap<(usize, PMonomial), Vec<(usize, crate::Rational)>> = BTreeMap::new();
    for (j, m) in unknowns.iter().enumerate() {
        let e = WeylElem::monomial(*m, crate::poly::int(1));
        for (g_index, g) in gens.iter().enumerate() {
            for (out, c) in e.commutator(g).terms() {
                rows.entry((g_index, *out)).or_default().push((j, c.clone()));
            }
        }
    }
    let mut mat = MatrixQ::zeros(rows.len(), unknowns.len());
    for (r, entries) in rows.values().enumerate() {
        for (j, c) in entries {
            mat.set(r, *j, c.clone());
        }
    }
    unknowns.len() - mat.rank()
}
