use alloc::vec::Vec;

use crate::linalg::EchelonBasis;
use crate::poly::{int, Degree};

use super::{PMonomial, WeylElem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureProgress {
    pub iteration: usize,
    pub dimension: usize,
    pub dropped: usize,
}

#[derive(Clone, Debug)]
pub struct ClosureReport {
    /// Spanning elements in discovery order; linearly independent.
    pub basis: Vec<WeylElem>,
    pub dropped: usize,
    pub iterations: usize,
    /// No new element appeared in the last round.
    pub saturated: bool,
    /// The progress callback asked to stop.
    pub interrupted: bool,
    /// `dim(span ∩ span{1, P0, P1, P2, P3})`.
    pub low_degree_dimension: usize,
}

impl ClosureReport {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// `P3*P0 + 5*P2*P1` and `(P3^3 + P0^2 + 1)*(P2^3 + P1^2 + 1)`.
pub fn paper_generators() -> [WeylElem; 2] {
    let (p3, p2, p1, p0) = (WeylElem::p3(), WeylElem::p2(), WeylElem::p1(), WeylElem::p0());
    let one = WeylElem::one();
    let first = &(&p3 * &p0) + &(&p2 * &p1).scale(&int(5));
    let left = &(&p3.pow(3) + &p0.pow(2)) + &one;
    let right = &(&p2.pow(3) + &p1.pow(2)) + &one;
    [first, &left * &right]
}

pub fn lie_closure(gens: &[WeylElem], degree_cap: u32, iter_cap: usize) -> ClosureReport {
    lie_closure_with(gens, degree_cap, iter_cap, |_| true)
}

/// Closes the span of `gens` under commutators, dropping anything of degree
/// above `degree_cap`. Each round brackets the previous round's new elements
/// against everything found so far. `keep_going` is polled between brackets.
pub fn lie_closure_with<F>(gens: &[WeylElem], degree_cap: u32, iter_cap: usize, mut keep_going: F) -> ClosureReport
where
    F: FnMut(&ClosureProgress) -> bool,
{
    let mut span: EchelonBasis<PMonomial> = EchelonBasis::new();
    let mut basis: Vec<WeylElem> = Vec::new();
    let mut dropped = 0;
    let within_cap = |e: &WeylElem| e.degree() <= Degree::Finite(degree_cap);

    for g in gens {
        if !within_cap(g) {
            dropped += 1;
        } else if span.insert(g.to_vector()) {
            basis.push(g.clone());
        }
    }

    let mut frontier_start = 0;
    let mut iterations = 0;
    let mut saturated = false;
    let mut interrupted = false;
    'rounds: while iterations < iter_cap {
        let frontier_end = basis.len();
        if frontier_start == frontier_end {
            saturated = true;
            break;
        }
        iterations += 1;
        for f in frontier_start..frontier_end {
            for e in 0..frontier_end {
                if e >= frontier_start && e >= f {
                    continue;
                }
                let progress = ClosureProgress {
                    iteration: iterations,
                    dimension: basis.len(),
                    dropped,
                };
                if !keep_going(&progress) {
                    interrupted = true;
                    break 'rounds;
                }
                let bracket = basis[e].commutator(&basis[f]);
                if bracket.is_zero() {
                    continue;
                }
                if !within_cap(&bracket) {
                    dropped += 1;
                } else if span.insert(bracket.to_vector()) {
                    basis.push(bracket);
                }
            }
        }
        frontier_start = frontier_end;
    }
    if !interrupted && frontier_start == basis.len() {
        saturated = true;
    }

    let mut widened = span.clone();
    let low = [
        PMonomial::ONE,
        PMonomial::new(0, 0, 0, 1),
        PMonomial::new(0, 0, 1, 0),
        PMonomial::new(0, 1, 0, 0),
        PMonomial::new(1, 0, 0, 0),
    ];
    let grown = low
        .iter()
        .filter(|m| widened.insert(WeylElem::monomial(**m, int(1)).to_vector()))
        .count();

    ClosureReport {
        basis,
        dropped,
        iterations,
        saturated,
        interrupted,
        low_degree_dimension: low.len() - grown,
    }
}
