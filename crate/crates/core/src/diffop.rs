//! Linear differential operators `sum c_abc(t,x,y) Dt^a Dx^b Dy^c` with
//! polynomial coefficients, the realization of the recursion-operator algebra,
//! the equation operator `F = Dt + x*Dy - Dx^2` and the Lie symmetry table.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_traits::One;

use crate::linalg::MatrixQ;
use crate::poly::{factor_string, int, monomials_up_to, Degree, Monomial, Poly, Rational, Ring, TermWriter};
use crate::weyl::{PMonomial, WeylElem};

const RING: Ring = Ring::TXY;
const DERIV_NAMES: [&str; 3] = ["Dt", "Dx", "Dy"];

/// Derivative multi-index `(a, b, c)` of `Dt^a Dx^b Dy^c`, graded-lex ordered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Deriv(pub [u32; 3]);

impl Deriv {
    pub const ID: Deriv = Deriv([0; 3]);

    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Deriv {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order().cmp(&other.order()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Deriv {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn binom(n: u32, k: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * int(i64::from(n - i)) / int(i64::from(i + 1));
    }
    acc
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DiffOp {
    terms: BTreeMap<Deriv, Poly>,
}

impl DiffOp {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::scalar(Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        Self::multiplication(Poly::constant(RING, c))
    }

    pub fn multiplication(p: Poly) -> Self {
        Self::term(Deriv::ID, p)
    }

    pub fn term(d: Deriv, p: Poly) -> Self {
        let mut out = Self::zero();
        out.add_term(d, p);
        out
    }

    pub fn dt() -> Self {
        Self::term(Deriv([1, 0, 0]), Poly::one(RING))
    }

    pub fn dx() -> Self {
        Self::term(Deriv([0, 1, 0]), Poly::one(RING))
    }

    pub fn dy() -> Self {
        Self::term(Deriv([0, 0, 1]), Poly::one(RING))
    }

    pub fn from_terms<I: IntoIterator<Item = (Deriv, Poly)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (d, p) in terms {
            out.add_term(d, p);
        }
        out
    }

    fn add_term(&mut self, d: Deriv, p: Poly) {
        if p.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&d) {
            Some(old) => &old + &p,
            None => p,
        };
        if !sum.is_zero() {
            self.terms.insert(d, sum);
        }
    }

    /// Terms in ascending graded-lex order of the derivative index.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Deriv, &Poly)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, d: &Deriv) -> Poly {
        self.terms.get(d).cloned().unwrap_or_else(|| Poly::zero(RING))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> Degree {
        self.terms
            .keys()
            .map(Deriv::order)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Highest power of `Dt` present, if any.
    pub fn dt_order(&self) -> Option<u32> {
        self.terms.keys().map(|d| d.0[0]).max()
    }

    pub fn scale(&self, c: &Rational) -> DiffOp {
        DiffOp::from_terms(self.terms.iter().map(|(d, p)| (*d, p.scale(c))))
    }

    /// `p * self` (left multiplication by a function).
    pub fn mul_poly(&self, p: &Poly) -> DiffOp {
        DiffOp::from_terms(self.terms.iter().map(|(d, c)| (*d, p * c)))
    }

    /// `D^alpha(p)` for a derivative index.
    fn diff_poly(p: &Poly, d: &Deriv) -> Poly {
        let mut out = p.clone();
        for (var, &k) in d.0.iter().enumerate() {
            for _ in 0..k {
                if out.is_zero() {
                    return out;
                }
                out = out.diff(var);
            }
        }
        out
    }

    /// `self ∘ other` by the Leibniz rule
    /// `D^a ∘ b = sum_{g <= a} C(a, g) D^g(b) D^(a-g)`.
    pub fn compose(&self, other: &DiffOp) -> DiffOp {
        let mut out = DiffOp::zero();
        for (da, a) in &self.terms {
            for (db, b) in &other.terms {
                let [a0, a1, a2] = da.0;
                for g0 in 0..=a0 {
                    for g1 in 0..=a1 {
                        for g2 in 0..=a2 {
                            let g = Deriv([g0, g1, g2]);
                            let db_g = Self::diff_poly(b, &g);
                            if db_g.is_zero() {
                                continue;
                            }
                            let c = binom(a0, g0) * binom(a1, g1) * binom(a2, g2);
                            let d = Deriv([a0 - g0 + db.0[0], a1 - g1 + db.0[1], a2 - g2 + db.0[2]]);
                            out.add_term(d, (a * &db_g).scale(&c));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &DiffOp) -> DiffOp {
        &self.compose(other) - &other.compose(self)
    }

    pub fn pow(&self, k: u32) -> DiffOp {
        let mut acc = DiffOp::identity();
        for _ in 0..k {
            acc = acc.compose(self);
        }
        acc
    }

    pub fn apply_poly(&self, u: &Poly) -> Poly {
        let mut out = Poly::zero(RING);
        for (d, c) in &self.terms {
            let du = Self::diff_poly(u, d);
            if !du.is_zero() {
                out = &out + &(c * &du);
            }
        }
        out
    }

    /// Terms of order strictly greater than `n`.
    pub fn part_above_order(&self, n: u32) -> DiffOp {
        DiffOp::from_terms(
            self.terms
                .iter()
                .filter(|(d, _)| d.order() > n)
                .map(|(d, p)| (*d, p.clone())),
        )
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut tw = TermWriter::new(f, false);
        for (d, p) in self.terms.iter().rev() {
            let ds = factor_string(&DERIV_NAMES, &d.0);
            if ds.is_empty() {
                for (m, c) in p.terms().rev() {
                    tw.term(c, &factor_string(RING.names(), m.exponents()))?;
                }
            } else if p.num_terms() == 1 {
                let (m, c) = p.terms().next().expect("one term");
                let ms = factor_string(RING.names(), m.exponents());
                if ms.is_empty() {
                    tw.term(c, &ds)?;
                } else {
                    tw.term(c, &alloc::format!("{ms}*{ds}"))?;
                }
            } else {
                tw.raw(false, &alloc::format!("({})*{ds}", p.to_compact_string()))?;
            }
        }
        tw.finish()
    }
}

impl Add for &DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (d, p) in &rhs.terms {
            out.add_term(*d, p.clone());
        }
        out
    }
}

impl Sub for &DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (d, p) in &rhs.terms {
            out.add_term(*d, -p);
        }
        out
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        self.scale(&int(-1))
    }
}

fn poly(s: &str) -> Poly {
    crate::parse::parse_poly(s, RING).expect("built-in polynomial")
}

fn op(parts: &[([u32; 3], &str)]) -> DiffOp {
    DiffOp::from_terms(parts.iter().map(|(d, p)| (Deriv(*d), poly(p))))
}

/// The generator realizations `P3, P2, P1, P0`, in slot order.
pub fn generator_ops() -> [DiffOp; 4] {
    [
        op(&[([0, 1, 0], "3*t^2"), ([0, 0, 1], "t^3"), ([0, 0, 0], "3*t*x - 3*y")]),
        op(&[([0, 1, 0], "2*t"), ([0, 0, 1], "t^2"), ([0, 0, 0], "x")]),
        op(&[([0, 1, 0], "1"), ([0, 0, 1], "t")]),
        op(&[([0, 0, 1], "1")]),
    ]
}

/// Caches generator powers so monomials realize by a fixed number of compositions.
pub struct Realizer {
    gens: [DiffOp; 4],
    powers: [Vec<DiffOp>; 4],
}

impl Default for Realizer {
    fn default() -> Self {
        Realizer {
            gens: generator_ops(),
            powers: Default::default(),
        }
    }
}

impl Realizer {
    pub fn new() -> Self {
        Self::default()
    }

    fn power(&mut self, slot: usize, k: u32) -> DiffOp {
        let cache = &mut self.powers[slot];
        if cache.is_empty() {
            cache.push(DiffOp::identity());
        }
        while cache.len() <= k as usize {
            let next = cache.last().expect("nonempty").compose(&self.gens[slot]);
            cache.push(next);
        }
        cache[k as usize].clone()
    }

    pub fn monomial(&mut self, m: &PMonomial) -> DiffOp {
        let mut acc = DiffOp::identity();
        for slot in 0..4 {
            if m.0[slot] > 0 {
                acc = acc.compose(&self.power(slot, m.0[slot]));
            }
        }
        acc
    }

    pub fn realize(&mut self, a: &WeylElem) -> DiffOp {
        let mut out = DiffOp::zero();
        for (m, c) in a.terms() {
            out = &out + &self.monomial(m).scale(c);
        }
        out
    }
}

/// The differential operator an algebra element stands for.
pub fn realize(a: &WeylElem) -> DiffOp {
    Realizer::new().realize(a)
}

/// `F = Dt + x*Dy - Dx^2`.
pub fn op_f() -> DiffOp {
    op(&[([1, 0, 0], "1"), ([0, 0, 1], "x"), ([0, 2, 0], "-1")])
}

pub fn commutes_with_f(a: &DiffOp) -> bool {
    op_f().commutator(a).is_zero()
}

/// Right division by `F`: returns `(G, R)` with `A = G∘F + R` and `R` free of `Dt`.
pub fn divide_by_f(a: &DiffOp) -> (DiffOp, DiffOp) {
    let f = op_f();
    let mut rem = a.clone();
    let mut quot = DiffOp::zero();
    loop {
        let Some((d, c)) = rem
            .terms
            .iter()
            .filter(|(d, _)| d.0[0] > 0)
            .max_by_key(|(d, _)| (d.0[0], **d))
            .map(|(d, c)| (*d, c.clone()))
        else {
            return (quot, rem);
        };
        let g = DiffOp::term(Deriv([d.0[0] - 1, d.0[1], d.0[2]]), c);
        rem = &rem - &g.compose(&f);
        quot = &quot + &g;
    }
}

/// Representative of `A` modulo the right ideal generated by `F` with no `Dt`.
pub fn reduce_mod_f(a: &DiffOp) -> DiffOp {
    divide_by_f(a).1
}

/// Basis of the essential Lie symmetry algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LieOp {
    Pt,
    D,
    K,
    P3,
    P2,
    P1,
    P0,
    I,
}

impl LieOp {
    pub const ALL: [LieOp; 8] = [
        LieOp::Pt,
        LieOp::D,
        LieOp::K,
        LieOp::P3,
        LieOp::P2,
        LieOp::P1,
        LieOp::P0,
        LieOp::I,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LieOp::Pt => "Pt",
            LieOp::D => "D",
            LieOp::K => "K",
            LieOp::P3 => "P3",
            LieOp::P2 => "P2",
            LieOp::P1 => "P1",
            LieOp::P0 => "P0",
            LieOp::I => "I",
        }
    }

    /// Operator form; `I` acts as `-1`.
    pub fn realize(self) -> DiffOp {
        let [p3, p2, p1, p0] = generator_ops();
        match self {
            LieOp::Pt => DiffOp::dt(),
            LieOp::D => op(&[
                ([1, 0, 0], "2*t"),
                ([0, 1, 0], "x"),
                ([0, 0, 1], "3*y"),
                ([0, 0, 0], "2"),
            ]),
            LieOp::K => op(&[
                ([1, 0, 0], "t^2"),
                ([0, 1, 0], "t*x + 3*y"),
                ([0, 0, 1], "3*t*y"),
                ([0, 0, 0], "x^2 + 2*t"),
            ]),
            LieOp::P3 => p3,
            LieOp::P2 => p2,
            LieOp::P1 => p1,
            LieOp::P0 => p0,
            LieOp::I => DiffOp::scalar(int(-1)),
        }
    }
}

impl fmt::Display for LieOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `[a, b] = sum c_i e_i`.
pub type Bracket = (LieOp, LieOp, Vec<(i64, LieOp)>);

/// Nonzero brackets, one per unordered pair.
pub fn structure_table() -> Vec<Bracket> {
    use LieOp::*;
    alloc::vec![
        (Pt, D, alloc::vec![(2, Pt)]),
        (Pt, K, alloc::vec![(1, D)]),
        (D, K, alloc::vec![(2, K)]),
        (Pt, P3, alloc::vec![(3, P2)]),
        (Pt, P2, alloc::vec![(2, P1)]),
        (Pt, P1, alloc::vec![(1, P0)]),
        (D, P3, alloc::vec![(3, P3)]),
        (D, P2, alloc::vec![(1, P2)]),
        (D, P1, alloc::vec![(-1, P1)]),
        (D, P0, alloc::vec![(-3, P0)]),
        (K, P2, alloc::vec![(-1, P3)]),
        (K, P1, alloc::vec![(-2, P2)]),
        (K, P0, alloc::vec![(-3, P1)]),
        (P1, P2, alloc::vec![(-1, I)]),
        (P0, P3, alloc::vec![(3, I)]),
    ]
}

/// Table value of `[a, b]` as a formal combination.
pub fn table_bracket(a: LieOp, b: LieOp) -> Vec<(i64, LieOp)> {
    for (x, y, rhs) in structure_table() {
        if (x, y) == (a, b) {
            return rhs;
        }
        if (y, x) == (a, b) {
            return rhs.into_iter().map(|(c, e)| (-c, e)).collect();
        }
    }
    Vec::new()
}

#[derive(Clone, Debug)]
pub struct BracketCheck {
    pub left: LieOp,
    pub right: LieOp,
    pub expected: Vec<(i64, LieOp)>,
    pub actual: DiffOp,
    pub pass: bool,
}

/// Checks all 64 ordered brackets of the realized operators against the table.
pub fn structure_constants_check() -> Vec<BracketCheck> {
    let mut out = Vec::new();
    for a in LieOp::ALL {
        for b in LieOp::ALL {
            let actual = a.realize().commutator(&b.realize());
            let expected = table_bracket(a, b);
            let mut want = DiffOp::zero();
            for (c, e) in &expected {
                want = &want + &e.realize().scale(&int(*c));
            }
            out.push(BracketCheck {
                left: a,
                right: b,
                pass: actual == want,
                expected,
                actual,
            });
        }
    }
    out
}

/// Renders a formal combination such as `2*Pt` or `-I`.
pub fn format_combination(terms: &[(i64, LieOp)]) -> String {
    let mut s = String::new();
    {
        let mut tw = TermWriter::new(&mut s, false);
        for (c, e) in terms {
            let _ = tw.term(&int(*c), e.name());
        }
        let _ = tw.finish();
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderOracle {
    pub n: u32,
    /// Degree bound of the enumerated monomials, `n + floor(n/3)`.
    pub degree_bound: u32,
    pub candidates: usize,
    pub dimension: usize,
}

/// Dimension of the elements of degree `<= n + floor(n/3)` whose
/// realization has order `<= n`, by exact nullspace of the high-order parts.
pub fn order_oracle(n: u32) -> OrderOracle {
    let degree_bound = n + n / 3;
    let monomials = PMonomial::up_to_degree(degree_bound);
    let mut realizer = Realizer::new();
    let mut rows: BTreeMap<(Deriv, Monomial), usize> = BTreeMap::new();
    let mut columns: Vec<Vec<((Deriv, Monomial), Rational)>> = Vec::with_capacity(monomials.len());
    for m in &monomials {
        let high = realizer.monomial(m).part_above_order(n);
        let mut col = Vec::new();
        for (d, p) in high.terms() {
            for (mono, c) in p.terms() {
                let key = (*d, mono.clone());
                let next = rows.len();
                rows.entry(key.clone()).or_insert(next);
                col.push((key, c.clone()));
            }
        }
        columns.push(col);
    }
    let mut mat = MatrixQ::zeros(rows.len(), monomials.len());
    for (j, col) in columns.iter().enumerate() {
        for (key, c) in col {
            mat.set(rows[key], j, c.clone());
        }
    }
    let rank = mat.rank();
    OrderOracle {
        n,
        degree_bound,
        candidates: monomials.len(),
        dimension: monomials.len() - rank,
    }
}

/// Every polynomial `t^a x^b y^c` of total degree `<= d`, ascending.
pub fn coefficient_monomials(d: u32) -> Vec<Monomial> {
    monomials_up_to(RING.arity(), d)
}
