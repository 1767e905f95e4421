use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::poly::{int, Poly, Rational, Ring};
use crate::{Error, Result};

use super::ExpPoly;

const RING: Ring = Ring::TXY;

/// A point symmetry with `gamma = 0` (so `delta = 1/alpha`). `exp_shift` is a
/// constant added to every exponent; composing two transformations produces one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupParams {
    pub alpha: Rational,
    pub beta: Rational,
    pub sigma: Rational,
    /// `[lambda0, lambda1, lambda2, lambda3]`.
    pub lambda: [Rational; 4],
    pub exp_shift: Rational,
}

impl Default for GroupParams {
    fn default() -> Self {
        Self::identity()
    }
}

impl GroupParams {
    pub fn identity() -> Self {
        GroupParams {
            alpha: Rational::one(),
            beta: Rational::zero(),
            sigma: Rational::one(),
            lambda: [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()],
            exp_shift: Rational::zero(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.alpha.is_zero() {
            return Err(Error::InvalidParameters("alpha must be nonzero".into()));
        }
        if self.sigma.is_zero() {
            return Err(Error::InvalidParameters("sigma must be nonzero".into()));
        }
        Ok(())
    }

    /// Arguments `(T, X, Y)` substituted into the seed:
    /// `alpha^2 t + alpha beta`, `alpha x^`, `alpha^3 y^`.
    pub fn arguments(&self) -> [Poly; 3] {
        let [l0, l1, l2, l3] = &self.lambda;
        let t = Poly::var(RING, 0);
        let x = Poly::var(RING, 1);
        let y = Poly::var(RING, 2);
        let a = &self.alpha;
        let c = |q: &Rational| Poly::constant(RING, q.clone());
        let t2 = t.pow(2);
        let t3 = t.pow(3);
        let x_hat = &(&(&x + &t2.scale(&(l3 * int(3)))) + &t.scale(&(l2 * int(2)))) + &c(l1);
        let y_hat = &(&(&(&y + &t3.scale(l3)) + &t2.scale(l2)) + &t.scale(l1)) + &c(l0);
        [
            &t.scale(&(a * a)) + &c(&(a * &self.beta)),
            x_hat.scale(a),
            y_hat.scale(&(a * a * a)),
        ]
    }

    /// `lambda2 x - 3 lambda3 (y - t x) + 3 lambda3^2 t^3 + 3 lambda3 lambda2 t^2 + lambda2^2 t`.
    pub fn exponent(&self) -> Poly {
        let l2 = &self.lambda[2];
        let l3 = &self.lambda[3];
        let t = Poly::var(RING, 0);
        let x = Poly::var(RING, 1);
        let y = Poly::var(RING, 2);
        let y_minus_tx = &y - &(&t * &x);
        let parts = [
            x.scale(l2),
            y_minus_tx.scale(&(l3 * int(-3))),
            t.pow(3).scale(&(l3 * l3 * int(3))),
            t.pow(2).scale(&(l3 * l2 * int(3))),
            t.scale(&(l2 * l2)),
        ];
        parts.iter().fold(Poly::zero(RING), |acc, p| &acc + p)
    }

    /// `g` with `act(g.compose(h), u) = act(g, act(h, u))`.
    pub fn compose(&self, inner: &GroupParams) -> Result<GroupParams> {
        self.validate()?;
        inner.validate()?;
        let outer_args = self.arguments();
        let composed: Vec<Poly> = inner
            .arguments()
            .iter()
            .map(|p| p.subst(&outer_args))
            .collect::<Result<_>>()?;
        let alpha = &inner.alpha * &self.alpha;
        let t = |p: &Poly, k: u32| p.coeff(&crate::Monomial::new(&[k, 0, 0]));
        let beta = t(&composed[0], 0) / &alpha;
        let x_scale = alpha.recip();
        let y_scale = (&alpha * &alpha * &alpha).recip();
        let lambda3 = t(&composed[1], 2) * &x_scale / int(3);
        let lambda2 = t(&composed[1], 1) * &x_scale / int(2);
        let lambda1 = t(&composed[1], 0) * &x_scale;
        let lambda0 = t(&composed[2], 0) * &y_scale;
        let mut g = GroupParams {
            alpha,
            beta,
            sigma: &self.sigma * &inner.sigma,
            lambda: [lambda0, lambda1, lambda2, lambda3],
            exp_shift: Rational::zero(),
        };
        if g.arguments().as_slice() != composed.as_slice() {
            return Err(Error::InvalidParameters(
                "composition left the gamma = 0 stratum".into(),
            ));
        }
        let shift = &(&(&self.exponent() + &inner.exponent().subst(&outer_args)?) - &g.exponent())
            + &Poly::constant(RING, &self.exp_shift + &inner.exp_shift);
        if !shift.is_constant() {
            return Err(Error::InvalidParameters("exponent shift is not constant".into()));
        }
        g.exp_shift = shift.constant_term();
        Ok(g)
    }
}

/// `sigma^-1 alpha^2 e^(E + shift) h(T, X, Y)` for the transformation `g`.
pub fn group_act(g: &GroupParams, h: &ExpPoly) -> Result<ExpPoly> {
    g.validate()?;
    let args = g.arguments();
    let e = &g.exponent() + &Poly::constant(RING, g.exp_shift.clone());
    let factor = &g.alpha * &g.alpha / &g.sigma;
    let mut out = ExpPoly::zero();
    for (q, p) in h.summands() {
        let q2 = &q.subst(&args)? + &e;
        let p2 = p.subst(&args)?.scale(&factor);
        out = &out + &ExpPoly::summand(q2, p2);
    }
    Ok(out)
}
