mod common;

use std::collections::BTreeMap;

use common::{homogeneous, weyl_elem};
use kolmo_core::linalg::rank_of_vectors;
use kolmo_core::poly::{int, rat};
use kolmo_core::weyl::{
    basis_deg, basis_ord, basis_ord_labels, dim_layer_closed, dim_ord_closed, dim_ord_sum, from_w2, grading_decompose,
    to_w2, GenMonomial, GenWeylElem, Generator, PMonomial, WeylElem,
};
use kolmo_core::Rational;
use num_traits::Zero;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn product_is_associative(a in weyl_elem(4, 3), b in weyl_elem(4, 3), c in weyl_elem(4, 3)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn w2_is_a_unital_isomorphism(a in weyl_elem(4, 4), b in weyl_elem(4, 4)) {
        prop_assert_eq!(from_w2(&to_w2(&a)).unwrap(), a.clone());
        prop_assert_eq!(to_w2(&(&a * &b)), to_w2(&a).try_mul(&to_w2(&b)).unwrap());
        prop_assert_eq!(to_w2(&(&a + &b)), to_w2(&a).try_add(&to_w2(&b)).unwrap());
        prop_assert_eq!(to_w2(&WeylElem::one()), GenWeylElem::one(2));
    }

    #[test]
    fn grading_is_additive(a in homogeneous(3, 3), b in homogeneous(3, 3)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let wa = *grading_decompose(&a).keys().next().unwrap();
        let wb = *grading_decompose(&b).keys().next().unwrap();
        let parts = grading_decompose(&(&a * &b));
        prop_assert!(parts.keys().all(|w| *w == wa + wb), "{:?}", parts.keys().collect::<Vec<_>>());
    }

    #[test]
    fn grading_parts_sum_back(a in weyl_elem(4, 6)) {
        let sum = grading_decompose(&a).values().fold(WeylElem::zero(), |acc, p| &acc + p);
        prop_assert_eq!(sum, a);
    }
}

#[test]
fn presentation_relations() {
    let g = |x: Generator| WeylElem::generator(x);
    use Generator::*;
    assert_eq!(g(P3).commutator(&g(P0)), WeylElem::scalar(int(3)));
    assert_eq!(g(P1).commutator(&g(P2)), WeylElem::scalar(int(1)));
    for (a, b) in [(P3, P2), (P3, P1), (P2, P0), (P1, P0)] {
        assert!(g(a).commutator(&g(b)).is_zero(), "{a:?} {b:?}");
    }
}

fn binom(n: u32, k: u32) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * i64::from(n - i) / i64::from(i + 1))
}

fn factorial(n: u32) -> i64 {
    (1..=i64::from(n)).product()
}

/// `sum_nu nu! (C(k', nu) C(l, nu) - C(k, nu) C(l', nu)) q^(k+k'-nu) p^(l+l'-nu)`.
fn closed_commutator(k: &[u32], l: &[u32], k2: &[u32], l2: &[u32]) -> GenWeylElem {
    let n = k.len();
    let mut out = GenWeylElem::zero(n);
    let bound: Vec<u32> = (0..n).map(|i| k[i].min(l2[i]).max(k2[i].min(l[i]))).collect();
    let mut nu = vec![0u32; n];
    loop {
        let mut c1 = 1i64;
        let mut c2 = 1i64;
        let mut fact = 1i64;
        for i in 0..n {
            c1 *= binom(k2[i], nu[i]) * binom(l[i], nu[i]);
            c2 *= binom(k[i], nu[i]) * binom(l2[i], nu[i]);
            fact *= factorial(nu[i]);
        }
        let c = fact * (c1 - c2);
        if c != 0 {
            let q: Vec<u32> = (0..n).map(|i| k[i] + k2[i] - nu[i]).collect();
            let p: Vec<u32> = (0..n).map(|i| l[i] + l2[i] - nu[i]).collect();
            out = out
                .try_add(&GenWeylElem::monomial(GenMonomial::new(&q, &p), int(c)))
                .unwrap();
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            nu[i] += 1;
            if nu[i] <= bound[i] {
                break;
            }
            nu[i] = 0;
            i += 1;
        }
    }
}

fn multiindices(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| (0..=max).map(move |e| [v.clone(), vec![e]].concat()))
            .collect();
    }
    out
}

#[test]
fn generic_commutators_match_closed_formula() {
    for n in 1..=2usize {
        let idx = multiindices(n, 3);
        let mono = |q: &[u32], p: &[u32]| GenWeylElem::monomial(GenMonomial::new(q, p), int(1));
        let mut checked = 0;
        for k in &idx {
            for l in &idx {
                let a = mono(k, l);
                for k2 in &idx {
                    for l2 in &idx {
                        let b = mono(k2, l2);
                        assert_eq!(
                            a.commutator(&b).unwrap(),
                            closed_commutator(k, l, k2, l2),
                            "{k:?} {l:?} {k2:?} {l2:?}"
                        );
                        checked += 1;
                    }
                }
            }
        }
        assert_eq!(checked, 4usize.pow(4 * n as u32));
    }
}

fn permutations(items: &[Generator]) -> Vec<Vec<Generator>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn coefficient_rank(elems: &[WeylElem]) -> usize {
    let mut keys: BTreeMap<PMonomial, usize> = BTreeMap::new();
    for e in elems {
        for (m, _) in e.terms() {
            let next = keys.len();
            keys.entry(*m).or_insert(next);
        }
    }
    let vectors: Vec<Vec<Rational>> = elems
        .iter()
        .map(|e| {
            let mut v = vec![Rational::zero(); keys.len()];
            for (m, c) in e.terms() {
                v[keys[m]] = c.clone();
            }
            v
        })
        .collect();
    rank_of_vectors(keys.len(), &vectors).unwrap()
}

#[test]
fn every_generator_ordering_gives_a_basis() {
    let orders = permutations(&Generator::ALL);
    assert_eq!(orders.len(), 24);
    for order in orders {
        let reordered: Vec<WeylElem> = basis_deg(4)
            .iter()
            .map(|m| {
                order.iter().fold(WeylElem::one(), |acc, g| {
                    &acc * &WeylElem::generator(*g).pow(m.0[g.slot()])
                })
            })
            .collect();
        for d in 0..=4u32 {
            let upto: Vec<WeylElem> = reordered
                .iter()
                .filter(|e| e.degree().finite().unwrap_or(0) <= d)
                .cloned()
                .collect();
            assert_eq!(upto.len(), basis_deg(d).len());
            assert_eq!(coefficient_rank(&upto), upto.len(), "{order:?} degree {d}");
        }
    }
}

#[test]
fn dimension_formulas() {
    let spot = [1u64, 5, 15, 36, 74];
    for n in 0..=12u64 {
        let closed = dim_ord_closed(n);
        assert_eq!(closed, dim_ord_sum(n), "n = {n}");
        assert_eq!(basis_ord_labels(n as u32).len() as u64, closed, "n = {n}");
        if n > 0 {
            assert_eq!(closed - dim_ord_closed(n - 1), dim_layer_closed(n), "n = {n}");
        } else {
            assert_eq!(dim_layer_closed(0), 1);
        }
        if let Some(s) = spot.get(n as usize) {
            assert_eq!(closed, *s);
        }
    }
}

#[test]
fn ordered_bases_are_independent() {
    for n in 0..=8u32 {
        let basis = basis_ord(n);
        assert_eq!(basis.len() as u64, dim_ord_closed(u64::from(n)));
        assert_eq!(coefficient_rank(&basis), basis.len(), "n = {n}");
    }
}

#[test]
fn weight_spot_values() {
    assert_eq!(PMonomial::new(1, 0, 0, 0).weight(), 1);
    assert_eq!(PMonomial::new(0, 1, 0, 0).weight(), 1);
    assert_eq!(PMonomial::new(0, 0, 1, 0).weight(), -1);
    assert_eq!(PMonomial::new(1, 0, 3, 0).weight(), -2);
    assert_eq!(
        grading_decompose(&WeylElem::from_terms([(PMonomial::new(1, 0, 0, 1), rat(1, 3))])).len(),
        1
    );
}
