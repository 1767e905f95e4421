#![allow(dead_code)]

use kolmo_core::poly::rat;
use kolmo_core::weyl::{PMonomial, WeylElem};
use kolmo_core::{Monomial, Poly, Rational, Ring};
use proptest::prelude::*;

pub const TXY: Ring = Ring::TXY;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    prop_oneof![(1i64..=5, 1i64..=3), (-5i64..=-1, 1i64..=3)].prop_map(|(n, d)| rat(n, d))
}

fn monomial_txy(max_degree: u32) -> impl Strategy<Value = Monomial> {
    (0..=max_degree, 0..=max_degree, 0..=max_degree)
        .prop_filter("degree", move |(a, b, c)| a + b + c <= max_degree)
        .prop_map(|(a, b, c)| Monomial::new(&[a, b, c]))
}

/// Polynomials in `(t, x, y)` with at most `max_terms` terms of degree `<= max_degree`.
pub fn poly_txy(max_degree: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((monomial_txy(max_degree), small_rational()), 0..=max_terms)
        .prop_map(|terms| Poly::from_terms(TXY, terms))
}

pub fn pmonomial(max_degree: u32) -> impl Strategy<Value = PMonomial> {
    prop::array::uniform4(0..=max_degree)
        .prop_filter("degree", move |e| e.iter().sum::<u32>() <= max_degree)
        .prop_map(PMonomial)
}

/// Elements of the recursion-operator algebra of degree `<= max_degree`.
pub fn weyl_elem(max_degree: u32, max_terms: usize) -> impl Strategy<Value = WeylElem> {
    prop::collection::vec((pmonomial(max_degree), small_rational()), 0..=max_terms).prop_map(WeylElem::from_terms)
}

/// A single term of weight `w(m)`, so the element is homogeneous.
pub fn homogeneous(max_degree: u32, max_terms: usize) -> impl Strategy<Value = WeylElem> {
    (
        pmonomial(max_degree),
        prop::collection::vec((pmonomial(max_degree), nonzero_rational()), 0..=max_terms),
    )
        .prop_map(|(lead, rest)| {
            let w = lead.weight();
            let terms = core::iter::once((lead, rat(1, 1))).chain(rest.into_iter().filter(|(m, _)| m.weight() == w));
            WeylElem::from_terms(terms)
        })
}
