//! JSON mirrors of the core value types.
//!
//! Rationals are strings `"num/den"` (denominator omitted when it is 1).
//! Term lists follow the ascending canonical order of the underlying maps.

use kolmo_core::diffop::DiffOp;
use kolmo_core::solutions::ExpPoly;
use kolmo_core::weyl::WeylElem;
use kolmo_core::{Poly, Rational};
use serde_json::{json, Value};

pub fn rational(q: &Rational) -> Value {
    Value::String(q.to_string())
}

pub fn poly(p: &Poly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(m, c)| json!({ "coeff": rational(c), "exp": m.exponents() }))
        .collect();
    json!({ "terms": terms })
}

pub fn weyl(a: &WeylElem) -> Value {
    let terms: Vec<Value> = a
        .terms()
        .map(|(m, c)| json!({ "coeff": rational(c), "exp": m.0 }))
        .collect();
    json!({ "terms": terms })
}

pub fn diffop(a: &DiffOp) -> Value {
    let terms: Vec<Value> = a
        .terms()
        .map(|(d, p)| json!({ "deriv": d.0, "coeff": poly(p) }))
        .collect();
    json!({ "terms": terms })
}

pub fn expoly(u: &ExpPoly) -> Value {
    let summands: Vec<Value> = u
        .summands()
        .map(|(q, p)| json!({ "exp_poly": poly(q), "prefactor": poly(p) }))
        .collect();
    json!({ "summands": summands })
}

#[cfg(test)]
mod tests {
    use super::*;
    use kolmo_core::parse::{parse_expoly, parse_weyl};

    #[test]
    fn weyl_shape() {
        let v = weyl(&parse_weyl("P1*P2").unwrap());
        assert_eq!(
            v.to_string(),
            r#"{"terms":[{"coeff":"1","exp":[0,0,0,0]},{"coeff":"1","exp":[0,1,1,0]}]}"#
        );
    }

    #[test]
    fn rationals_are_strings() {
        let v = weyl(&parse_weyl("1/3*P3*P0").unwrap());
        assert_eq!(v["terms"][0]["coeff"], "1/3");
    }

    #[test]
    fn expoly_shape() {
        let v = expoly(&parse_expoly("exp(x)*(y) + t").unwrap());
        assert_eq!(v["summands"].as_array().unwrap().len(), 2);
        assert_eq!(v["summands"][0]["exp_poly"]["terms"].as_array().unwrap().len(), 0);
    }
}
