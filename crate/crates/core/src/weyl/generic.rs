use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::poly::{int, rat, Rational, TermWriter};
use crate::{Error, Result};

use super::{pair_reorder, PMonomial, WeylElem};

type Multi = SmallVec<[u32; 2]>;

/// Basis monomial `q^kappa * p^lambda` of `W(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenMonomial {
    pub q: Multi,
    pub p: Multi,
}

impl GenMonomial {
    pub fn new(q: &[u32], p: &[u32]) -> Self {
        GenMonomial {
            q: SmallVec::from_slice(q),
            p: SmallVec::from_slice(p),
        }
    }

    pub fn one(n: usize) -> Self {
        GenMonomial {
            q: SmallVec::from_elem(0, n),
            p: SmallVec::from_elem(0, n),
        }
    }

    pub fn degree(&self) -> u32 {
        self.q.iter().chain(self.p.iter()).sum()
    }
}

impl Ord for GenMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.q.cmp(&other.q))
            .then_with(|| self.p.cmp(&other.p))
    }
}

impl PartialOrd for GenMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of the Weyl algebra `W(n)` with `[p_i, q_j] = delta_ij`, stored
/// in the `q`-before-`p` basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenWeylElem {
    n: usize,
    terms: BTreeMap<GenMonomial, Rational>,
}

impl GenWeylElem {
    pub fn zero(n: usize) -> Self {
        GenWeylElem {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(GenMonomial::one(n), Rational::one())
    }

    pub fn monomial(m: GenMonomial, c: Rational) -> Self {
        let mut e = Self::zero(m.q.len());
        e.add_term(m, c);
        e
    }

    pub fn q(n: usize, i: usize) -> Self {
        let mut m = GenMonomial::one(n);
        m.q[i] = 1;
        Self::monomial(m, Rational::one())
    }

    pub fn p(n: usize, i: usize) -> Self {
        let mut m = GenMonomial::one(n);
        m.p[i] = 1;
        Self::monomial(m, Rational::one())
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&GenMonomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &GenMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: GenMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn check_rank(&self, other: &GenWeylElem) -> Result<()> {
        if self.n != other.n {
            return Err(Error::RankMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rational) -> GenWeylElem {
        let mut out = GenWeylElem::zero(self.n);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn try_add(&self, other: &GenWeylElem) -> Result<GenWeylElem> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &GenWeylElem) -> Result<GenWeylElem> {
        self.try_add(&other.scale(&int(-1)))
    }

    pub fn try_mul(&self, other: &GenWeylElem) -> Result<GenWeylElem> {
        self.check_rank(other)?;
        let mut out = GenWeylElem::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                for (m, k) in monomial_product(ma, mb) {
                    out.add_term(m, k * &c);
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &GenWeylElem) -> Result<GenWeylElem> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    pub fn pow(&self, k: u32) -> GenWeylElem {
        let mut acc = GenWeylElem::one(self.n);
        for _ in 0..k {
            acc = acc.try_mul(self).expect("same rank");
        }
        acc
    }
}

/// `q^k p^l * q^k' p^l'`: each `p_i^l_i q_i^k'_i` is reordered independently.
fn monomial_product(a: &GenMonomial, b: &GenMonomial) -> Vec<(GenMonomial, Rational)> {
    let mut acc: Vec<(GenMonomial, Rational)> = alloc::vec![(
        GenMonomial {
            q: a.q.clone(),
            p: b.p.clone(),
        },
        Rational::one(),
    )];
    let minus_one = int(-1);
    for i in 0..a.q.len() {
        let pieces = pair_reorder(a.p[i], b.q[i], &minus_one);
        let mut next = Vec::with_capacity(acc.len() * pieces.len());
        for (m, c) in &acc {
            for piece in &pieces {
                let mut m = m.clone();
                m.q[i] += piece.a_exp;
                m.p[i] += piece.b_exp;
                next.push((m, c * &piece.coeff));
            }
        }
        acc = next;
    }
    acc
}

impl fmt::Display for GenWeylElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.n)
            .map(|i| format!("q{i}"))
            .chain((1..=self.n).map(|i| format!("p{i}")))
            .collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut tw = TermWriter::new(f, false);
        for (m, c) in self.terms.iter().rev() {
            let exps: Vec<u32> = m.q.iter().chain(m.p.iter()).copied().collect();
            tw.term(c, &crate::poly::factor_string(&names, &exps))?;
        }
        tw.finish()
    }
}

/// Isomorphism onto `W(2)`: `P3 -> 3*p1`, `P2 -> q2`, `P1 -> p2`, `P0 -> q1`.
pub fn to_w2(a: &WeylElem) -> GenWeylElem {
    let mut out = GenWeylElem::zero(2);
    for (m, c) in a.terms() {
        let [i3, i2, i1, i0] = m.0;
        let factors = [
            GenMonomial::new(&[0, 0], &[i3, 0]),
            GenMonomial::new(&[0, i2], &[0, 0]),
            GenMonomial::new(&[0, 0], &[0, i1]),
            GenMonomial::new(&[i0, 0], &[0, 0]),
        ];
        let mut prod = GenWeylElem::one(2);
        for fm in factors {
            prod = prod
                .try_mul(&GenWeylElem::monomial(fm, Rational::one()))
                .expect("rank 2");
        }
        let scale = c * Rational::from_integer(3.into()).pow(i3 as i32);
        out = out.try_add(&prod.scale(&scale)).expect("rank 2");
    }
    out
}

/// Inverse of [`to_w2`].
pub fn from_w2(g: &GenWeylElem) -> Result<WeylElem> {
    if g.rank() != 2 {
        return Err(Error::RankMismatch {
            left: g.rank(),
            right: 2,
        });
    }
    let mut out = WeylElem::zero();
    for (m, c) in g.terms() {
        let (k1, k2, l1, l2) = (m.q[0], m.q[1], m.p[0], m.p[1]);
        let factors = [
            PMonomial::new(0, 0, 0, k1),
            PMonomial::new(0, k2, 0, 0),
            PMonomial::new(l1, 0, 0, 0),
            PMonomial::new(0, 0, l2, 0),
        ];
        let mut prod = WeylElem::one();
        for fm in factors {
            prod = &prod * &WeylElem::monomial(fm, Rational::one());
        }
        let scale = c * rat(1, 3).pow(l1 as i32);
        out = &out + &prod.scale(&scale);
    }
    Ok(out)
}
