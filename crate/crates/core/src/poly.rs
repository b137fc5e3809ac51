//! Sparse multivariate polynomials over a closed symbol set.
//!
//! This is the universal coefficient ring: every structure constant, module
//! parameter and central scalar in the crate is a [`CoeffPoly`]. The ring is
//! a polynomial ring, not a fraction field; divisions only ever happen by
//! scalars.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const NSYM: usize = 7;

/// The closed-world symbol set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// Curve modulus.
    B,
    /// Level of the central element `1_0`.
    Chi0,
    Lambda,
    Mu,
    Nu,
    Kappa,
    /// Independent Heisenberg level, only used by split-level calibration.
    Ell,
}

impl Symbol {
    pub const ALL: [Symbol; NSYM] = [
        Symbol::B,
        Symbol::Chi0,
        Symbol::Lambda,
        Symbol::Mu,
        Symbol::Nu,
        Symbol::Kappa,
        Symbol::Ell,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::B => "b",
            Symbol::Chi0 => "chi0",
            Symbol::Lambda => "lambda",
            Symbol::Mu => "mu",
            Symbol::Nu => "nu",
            Symbol::Kappa => "kappa",
            Symbol::Ell => "ell",
        }
    }

    pub fn from_name(name: &str) -> Result<Symbol> {
        let n = name.trim();
        Symbol::ALL
            .into_iter()
            .find(|s| s.name() == n)
            .or(match n {
                "χ0" | "χ₀" | "chi_0" => Some(Symbol::Chi0),
                "λ" => Some(Symbol::Lambda),
                "μ" => Some(Symbol::Mu),
                "ν" => Some(Symbol::Nu),
                "κ" | "ϰ" => Some(Symbol::Kappa),
                _ => None,
            })
            .ok_or_else(|| Error::UnknownSymbol(n.to_string()))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector indexed by [`Symbol::index`].
pub type Exponents = [u16; NSYM];

fn grlex_desc(a: &Exponents, b: &Exponents) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoeffPoly<S: Scalar> {
    terms: BTreeMap<Exponents, S>,
}

impl<S: Scalar> Default for CoeffPoly<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> CoeffPoly<S> {
    pub fn zero() -> Self {
        CoeffPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0; NSYM], c);
        }
        CoeffPoly { terms }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(S::from_int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::constant(S::ratio(n, d))
    }

    pub fn symbol(s: Symbol) -> Self {
        let mut e = [0; NSYM];
        e[s.index()] = 1;
        Self::monomial(e, S::one())
    }

    pub fn monomial(exps: Exponents, c: S) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        CoeffPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &S)> {
        self.terms.iter()
    }

    /// The value when the polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<S> {
        match self.terms.len() {
            0 => Some(S::zero()),
            1 => self.terms.get(&[0; NSYM]).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, s: Symbol) -> u16 {
        self.terms
            .keys()
            .map(|e| e[s.index()])
            .max()
            .unwrap_or(0)
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        Symbol::ALL
            .into_iter()
            .filter(|s| self.degree_in(*s) > 0)
            .collect()
    }

    fn insert_add(&mut self, e: Exponents, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let nv = v.clone() + c;
                if nv.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = nv;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        CoeffPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (*e, v.clone() * c.clone()))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&S::from_int(n))
    }

    /// Exact division by a nonzero scalar.
    pub fn div_scalar(&self, c: &S) -> Self {
        assert!(!c.is_zero(), "division of a polynomial by zero");
        self.scale(&(S::one() / c.clone()))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes the bound symbols; unbound symbols stay symbolic.
    pub fn specialize(&self, bindings: &[(Symbol, S)]) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut ne = *e;
            let mut nc = c.clone();
            for (s, v) in bindings {
                let k = ne[s.index()];
                for _ in 0..k {
                    nc = nc * v.clone();
                }
                ne[s.index()] = 0;
            }
            out.insert_add(ne, nc);
        }
        out
    }

    /// Replaces a symbol with a polynomial.
    pub fn substitute(&self, s: Symbol, value: &Self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let k = e[s.index()];
            let mut rest = *e;
            rest[s.index()] = 0;
            let term = Self::monomial(rest, c.clone()) * value.pow(k as u32);
            out += &term;
        }
        out
    }

    /// Exact quotient by another polynomial when it is a constant multiple.
    /// Returns `None` when `self` is not a scalar multiple of `other`.
    pub fn scalar_ratio(&self, other: &Self) -> Option<S> {
        let (e0, c0) = other.terms.iter().next()?;
        let a = self.terms.get(e0).cloned().unwrap_or_else(S::zero);
        let r = a / c0.clone();
        if other.scale(&r) == *self {
            Some(r)
        } else {
            None
        }
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> CoeffPoly<T> {
        let mut out = CoeffPoly::zero();
        for (e, c) in &self.terms {
            out.insert_add(*e, f(c));
        }
        out
    }

    /// Evaluates with every symbol bound.
    pub fn eval(&self, values: &[S; NSYM]) -> S {
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = t * values[i].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Terms in graded-lexicographic order, highest first.
    pub fn sorted_terms(&self) -> Vec<(&Exponents, &S)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_desc(a.0, b.0));
        v
    }
}

fn render_monomial(e: &Exponents) -> String {
    let mut parts = Vec::new();
    for s in Symbol::ALL {
        match e[s.index()] {
            0 => {}
            1 => parts.push(s.name().to_string()),
            k => parts.push(format!("{}^{}", s.name(), k)),
        }
    }
    parts.join("*")
}

impl<S: Scalar> fmt::Display for CoeffPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let (mag, composite) = c.render_abs();
            let mono = render_monomial(e);
            if mono.is_empty() {
                f.write_str(&mag)?;
            } else if mag == "1" {
                f.write_str(&mono)?;
            } else if composite {
                write!(f, "({mag})*{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for CoeffPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoeffPoly({self})")
    }
}

impl<S: Scalar> From<S> for CoeffPoly<S> {
    fn from(c: S) -> Self {
        Self::constant(c)
    }
}

impl<S: Scalar> AddAssign<&CoeffPoly<S>> for CoeffPoly<S> {
    fn add_assign(&mut self, rhs: &CoeffPoly<S>) {
        for (e, c) in &rhs.terms {
            self.insert_add(*e, c.clone());
        }
    }
}

impl<S: Scalar> SubAssign<&CoeffPoly<S>> for CoeffPoly<S> {
    fn sub_assign(&mut self, rhs: &CoeffPoly<S>) {
        for (e, c) in &rhs.terms {
            self.insert_add(*e, -c.clone());
        }
    }
}

impl<S: Scalar> Add<&CoeffPoly<S>> for &CoeffPoly<S> {
    type Output = CoeffPoly<S>;
    fn add(self, rhs: &CoeffPoly<S>) -> CoeffPoly<S> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<S: Scalar> Sub<&CoeffPoly<S>> for &CoeffPoly<S> {
    type Output = CoeffPoly<S>;
    fn sub(self, rhs: &CoeffPoly<S>) -> CoeffPoly<S> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<S: Scalar> Mul<&CoeffPoly<S>> for &CoeffPoly<S> {
    type Output = CoeffPoly<S>;
    fn mul(self, rhs: &CoeffPoly<S>) -> CoeffPoly<S> {
        let mut out = CoeffPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = *ea;
                for i in 0..NSYM {
                    e[i] += eb[i];
                }
                out.insert_add(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<S: Scalar> Neg for &CoeffPoly<S> {
    type Output = CoeffPoly<S>;
    fn neg(self) -> CoeffPoly<S> {
        CoeffPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr<CoeffPoly<S>> for CoeffPoly<S> {
            type Output = CoeffPoly<S>;
            fn $m(self, rhs: CoeffPoly<S>) -> CoeffPoly<S> {
                (&self).$m(&rhs)
            }
        }
        impl<S: Scalar> $tr<&CoeffPoly<S>> for CoeffPoly<S> {
            type Output = CoeffPoly<S>;
            fn $m(self, rhs: &CoeffPoly<S>) -> CoeffPoly<S> {
                (&self).$m(rhs)
            }
        }
        impl<S: Scalar> $tr<CoeffPoly<S>> for &CoeffPoly<S> {
            type Output = CoeffPoly<S>;
            fn $m(self, rhs: CoeffPoly<S>) -> CoeffPoly<S> {
                self.$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<S: Scalar> Neg for CoeffPoly<S> {
    type Output = CoeffPoly<S>;
    fn neg(self) -> CoeffPoly<S> {
        -&self
    }
}

impl<S: Scalar> std::iter::Sum for CoeffPoly<S> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        let mut acc = Self::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Poly, Rational};

    fn b() -> Poly {
        Poly::symbol(Symbol::B)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn additive_inverse() {
        assert!((b() + -b()).is_zero());
    }

    #[test]
    fn hand_expansion() {
        let lhs = (b() - Poly::one()) * (b().scale_int(2) - Poly::one());
        let rhs = b().pow(2).scale_int(2) - b().scale_int(3) + Poly::one();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_string(), "2*b^2 - 3*b + 1");
    }

    #[test]
    fn scale_p3() {
        let p = b().pow(2).scale_int(32) - b().scale_int(48) + Poly::int(11);
        let s = p.scale(&q(1, 35));
        assert_eq!(s.to_string(), "(32/35)*b^2 - (48/35)*b + 11/35");
    }

    #[test]
    fn rendering_example() {
        let p = (b() - Poly::one()).scale(&q(4, 5));
        assert_eq!(p.to_string(), "(4/5)*b - 4/5");
        assert_eq!(Poly::zero().to_string(), "0");
        let m = b() * Poly::symbol(Symbol::Chi0) - Poly::symbol(Symbol::Lambda);
        assert_eq!(m.to_string(), "b*chi0 - lambda");
    }

    #[test]
    fn specialize_examples() {
        let p = (b() - Poly::one()).scale(&q(4, 5));
        assert!(p.specialize(&[(Symbol::B, q(1, 1))]).is_zero());
        let c = Poly::symbol(Symbol::Chi0) * b();
        assert_eq!(c.specialize(&[(Symbol::Chi0, q(2, 1))]), b().scale_int(2));
        let p3 = b().pow(2).scale_int(32) - b().scale_int(48) + Poly::int(11);
        assert_eq!(p3.specialize(&[(Symbol::B, q(1, 1))]), Poly::int(-5));
    }

    #[test]
    fn unknown_symbol_rejected() {
        assert!(Symbol::from_name("z").is_err());
        assert_eq!(Symbol::from_name("χ0").unwrap(), Symbol::Chi0);
    }

    #[test]
    fn float_instantiation() {
        let p: CoeffPoly<f64> = CoeffPoly::symbol(Symbol::B).scale(&0.5) + CoeffPoly::constant(1.0);
        let mut v = [0.0; NSYM];
        v[Symbol::B.index()] = 4.0;
        assert_eq!(p.eval(&v), 3.0);
    }

    #[test]
    fn substitute_and_ratio() {
        let p = b().pow(2);
        let s = p.substitute(Symbol::B, &(b() + Poly::one()));
        assert_eq!(s, b().pow(2) + b().scale_int(2) + Poly::one());
        assert_eq!(s.scale_int(3).scalar_ratio(&s), Some(q(3, 1)));
        assert_eq!(b().scalar_ratio(&s), None);
    }
}
