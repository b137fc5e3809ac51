//! The coordinate ring `R = C[t, t^-1, u | u^2 = t^3 - 2b t^2 + t]`.
//!
//! Elements are stored on the basis `{t^n, t^n u}`; coefficients live in the
//! polynomial ring over `b` (and the other parameters), so the curve modulus
//! stays symbolic throughout.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::poly::{CoeffPoly, Symbol};
use crate::scalar::Scalar;

/// Which half of the `Z/2` grading a basis monomial sits in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    Plain,
    U,
}

impl Sector {
    pub fn parity(self) -> u8 {
        match self {
            Sector::Plain => 0,
            Sector::U => 1,
        }
    }
}

/// A basis monomial `t^n` or `t^n u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RingMonomial {
    pub n: i64,
    pub sector: Sector,
}

impl RingMonomial {
    pub fn t(n: i64) -> Self {
        RingMonomial {
            n,
            sector: Sector::Plain,
        }
    }

    pub fn tu(n: i64) -> Self {
        RingMonomial {
            n,
            sector: Sector::U,
        }
    }
}

impl fmt::Display for RingMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sector {
            Sector::Plain => write!(f, "t^{}", self.n),
            Sector::U => write!(f, "u t^{}", self.n),
        }
    }
}

/// The cubic `t^3 - 2b t^2 + t` that `u^2` rewrites to, as `(shift, coeff)`.
pub fn curve_terms<S: Scalar>() -> [(i64, CoeffPoly<S>); 3] {
    [
        (3, CoeffPoly::one()),
        (2, CoeffPoly::symbol(Symbol::B).scale_int(-2)),
        (1, CoeffPoly::one()),
    ]
}

#[derive(Clone, PartialEq, Eq)]
pub struct RingElement<S: Scalar> {
    terms: BTreeMap<RingMonomial, CoeffPoly<S>>,
}

impl<S: Scalar> Default for RingElement<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> RingElement<S> {
    pub fn zero() -> Self {
        RingElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::t(0)
    }

    pub fn monomial(m: RingMonomial, c: CoeffPoly<S>) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn t(n: i64) -> Self {
        Self::monomial(RingMonomial::t(n), CoeffPoly::one())
    }

    pub fn tu(n: i64) -> Self {
        Self::monomial(RingMonomial::tu(n), CoeffPoly::one())
    }

    pub fn u() -> Self {
        Self::tu(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RingMonomial, &CoeffPoly<S>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: RingMonomial) -> CoeffPoly<S> {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: RingMonomial, c: CoeffPoly<S>) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_default();
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &CoeffPoly<S>) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    /// Product in `R`, rewriting `u*u` via the curve.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                let n = ma.n + mb.n;
                match (ma.sector, mb.sector) {
                    (Sector::Plain, Sector::Plain) => out.add_term(RingMonomial::t(n), c),
                    (Sector::Plain, Sector::U) | (Sector::U, Sector::Plain) => {
                        out.add_term(RingMonomial::tu(n), c)
                    }
                    (Sector::U, Sector::U) => {
                        for (shift, k) in curve_terms::<S>() {
                            out.add_term(RingMonomial::t(n + shift), &c * &k);
                        }
                    }
                }
            }
        }
        out
    }

    /// The automorphism `t -> t^-1`, `u -> t^-2 u`.
    pub fn tau(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let image = match m.sector {
                Sector::Plain => RingMonomial::t(-m.n),
                Sector::U => RingMonomial::tu(-m.n - 2),
            };
            out.add_term(image, c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

impl<S: Scalar> fmt::Display for RingElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({c})*{m}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<S: Scalar> fmt::Debug for RingElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement({self})")
    }
}

impl<S: Scalar> Add<&RingElement<S>> for &RingElement<S> {
    type Output = RingElement<S>;
    fn add(self, rhs: &RingElement<S>) -> RingElement<S> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<S: Scalar> Sub<&RingElement<S>> for &RingElement<S> {
    type Output = RingElement<S>;
    fn sub(self, rhs: &RingElement<S>) -> RingElement<S> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl<S: Scalar> Neg for &RingElement<S> {
    type Output = RingElement<S>;
    fn neg(self) -> RingElement<S> {
        self.scale(&CoeffPoly::int(-1))
    }
}

impl<S: Scalar> Mul<&RingElement<S>> for &RingElement<S> {
    type Output = RingElement<S>;
    fn mul(self, rhs: &RingElement<S>) -> RingElement<S> {
        RingElement::mul(self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Poly, Ring};

    fn b() -> Poly {
        Poly::symbol(Symbol::B)
    }

    fn cubic_in(t: &Ring) -> Ring {
        let t2 = t.mul(t);
        let t3 = t2.mul(t);
        &(&t3 - &t2.scale(&b().scale_int(2))) + t
    }

    #[test]
    fn t_times_inverse() {
        assert_eq!(Ring::t(1).mul(&Ring::t(-1)), Ring::one());
    }

    #[test]
    fn u_squared() {
        assert_eq!(Ring::u().mul(&Ring::u()), cubic_in(&Ring::t(1)));
    }

    #[test]
    fn tinv_u_times_u() {
        let got = Ring::tu(-1).mul(&Ring::u());
        let want = &(&Ring::t(2) - &Ring::t(1).scale(&b().scale_int(2))) + &Ring::one();
        assert_eq!(got, want);
    }

    #[test]
    fn tau_examples() {
        assert_eq!(Ring::t(1).tau(), Ring::t(-1));
        assert_eq!(Ring::t(1).tau().tau(), Ring::t(1));
        let tu = Ring::u().tau();
        let lhs = &tu.mul(&tu) - &cubic_in(&Ring::t(1).tau());
        assert!(lhs.is_zero());
    }
}
