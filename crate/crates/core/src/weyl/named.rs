use core::fmt;

use crate::poly::{int, rat, Rational};

use super::{PMonomial, WeylElem};

/// Distinguished elements of the algebra, each built from generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NamedElement {
    /// `P1^2 - P2*P0`, realized as `Dx^2 - x*Dy`.
    HatPt,
    /// `P2*P1 - P3*P0 + 2`.
    HatD,
    /// `P2^2 - P3*P1`.
    HatK,
    Casimir,
    /// `1/3*P3*P0 - P2*P1`; `ad` of it scales each monomial by minus its weight.
    SGrading,
    H1s11,
    H2s11,
    Hs12,
    Hs14,
    Ss14,
}

impl NamedElement {
    pub const ALL: [NamedElement; 10] = [
        NamedElement::HatPt,
        NamedElement::HatD,
        NamedElement::HatK,
        NamedElement::Casimir,
        NamedElement::SGrading,
        NamedElement::H1s11,
        NamedElement::H2s11,
        NamedElement::Hs12,
        NamedElement::Hs14,
        NamedElement::Ss14,
    ];

    /// Identifier used by the expression grammar.
    pub fn ident(self) -> &'static str {
        match self {
            NamedElement::HatPt => "hatPt",
            NamedElement::HatD => "hatD",
            NamedElement::HatK => "hatK",
            NamedElement::Casimir => "C",
            NamedElement::SGrading => "S",
            NamedElement::H1s11 => "H1",
            NamedElement::H2s11 => "H2",
            NamedElement::Hs12 => "Hs12",
            NamedElement::Hs14 => "Hs14",
            NamedElement::Ss14 => "Ss14",
        }
    }

    pub fn from_ident(s: &str) -> Option<NamedElement> {
        Self::ALL.into_iter().find(|e| e.ident() == s)
    }

    pub fn expand(self) -> WeylElem {
        let (p3, p2, p1, p0) = (WeylElem::p3(), WeylElem::p2(), WeylElem::p1(), WeylElem::p0());
        match self {
            NamedElement::HatPt => &p1.pow(2) - &(&p2 * &p0),
            NamedElement::HatD => &(&(&p2 * &p1) - &(&p3 * &p0)) + &WeylElem::scalar(int(2)),
            NamedElement::HatK => &p2.pow(2) - &(&p3 * &p1),
            NamedElement::Casimir => casimir(),
            NamedElement::SGrading => &(&p3 * &p0).scale(&rat(1, 3)) - &(&p2 * &p1),
            NamedElement::H1s11 => &p1 - &p0.pow(2).scale(&rat(1, 6)),
            NamedElement::H2s11 => &(&p2 + &p0.pow(3).scale(&rat(2, 27))) - &(&p1 * &p0).scale(&rat(2, 3)),
            NamedElement::Hs12 => {
                &(&(&p3 * &p0.pow(2)) - &(&(&p2 * &p1) * &p0).scale(&int(3))) + &p1.pow(3).scale(&int(2))
            }
            NamedElement::Hs14 => {
                &(&(&p3.pow(2) + &(&p3 * &p1).scale(&int(3))) + &(&p2 * &p0).scale(&int(3))) + &p0.pow(2)
            }
            NamedElement::Ss14 => ss14(),
        }
    }
}

impl fmt::Display for NamedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.ident())
    }
}

/// `hatD^2 - 2*(hatK*hatPt + hatPt*hatK)`.
pub fn casimir() -> WeylElem {
    let pt = NamedElement::HatPt.expand();
    let d = NamedElement::HatD.expand();
    let k = NamedElement::HatK.expand();
    &d.pow(2) - &(&(&k * &pt) + &(&pt * &k)).scale(&int(2))
}

fn ss14() -> WeylElem {
    // Every product below is already written in normal order.
    const TERMS: [(i64, [u32; 4]); 15] = [
        (1, [3, 0, 0, 1]),
        (-3, [2, 1, 1, 0]),
        (2, [1, 3, 0, 0]),
        (3, [1, 2, 0, 1]),
        (-6, [1, 1, 2, 0]),
        (-3, [1, 0, 2, 1]),
        (-1, [1, 0, 0, 3]),
        (3, [0, 3, 1, 0]),
        (6, [0, 2, 1, 1]),
        (-3, [0, 1, 3, 0]),
        (3, [0, 1, 1, 2]),
        (-2, [0, 0, 3, 1]),
        (-4, [2, 0, 0, 0]),
        (8, [0, 0, 0, 2]),
        (12, [0, 1, 0, 1]),
    ];
    WeylElem::from_terms(
        TERMS
            .iter()
            .map(|&(c, e)| (PMonomial(e), Rational::from_integer(c.into()))),
    )
}
