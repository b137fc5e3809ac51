//! Polynomial Fock states and the oscillator representations `rho_0`, `rho_1`.
//!
//! A state is a finite sum of monomials in the variables `x_n`, `x1_n`
//! (`n ∈ Z`) and `y_{-m}`, `y1_{-m}` (`m >= 1`), each tensored with one of
//! the basis vectors `v0`, `v1` of the two-dimensional space `V`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::CoeffPoly;
use crate::scalar::Scalar;

/// A Fock-space variable, carrying its own (signed) index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X(i64),
    X1(i64),
    /// `y_n`, `n <= -1`.
    Y(i64),
    /// `y1_n`, `n <= -1`.
    Y1(i64),
}

impl Var {
    pub fn index(self) -> i64 {
        match self {
            Var::X(n) | Var::X1(n) | Var::Y(n) | Var::Y1(n) => n,
        }
    }

    pub fn is_x(self) -> bool {
        matches!(self, Var::X(_) | Var::X1(_))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(n) => write!(f, "x_{n}"),
            Var::X1(n) => write!(f, "x1_{n}"),
            Var::Y(n) => write!(f, "y_{n}"),
            Var::Y1(n) => write!(f, "y1_{n}"),
        }
    }
}

/// Variable multiset: variable to positive exponent.
pub type Monomial = BTreeMap<Var, u32>;

pub fn render_monomial(m: &Monomial) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter()
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

#[derive(Clone, PartialEq, Eq)]
pub struct FockState<S: Scalar> {
    terms: BTreeMap<(Monomial, u8), CoeffPoly<S>>,
}

impl<S: Scalar> Default for FockState<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> FockState<S> {
    pub fn zero() -> Self {
        FockState { terms: BTreeMap::new() }
    }

    /// `1 ⊗ v_i`.
    pub fn vacuum(v: u8) -> Self {
        Self::term(Monomial::new(), v, CoeffPoly::one())
    }

    pub fn term(m: Monomial, v: u8, c: CoeffPoly<S>) -> Self {
        let mut s = Self::zero();
        s.add_term(m, v, c);
        s
    }

    /// Monomial built from a list of variables (repeats allowed).
    pub fn from_vars(vars: &[Var], v: u8, c: CoeffPoly<S>) -> Self {
        let mut m = Monomial::new();
        for var in vars {
            *m.entry(*var).or_insert(0) += 1;
        }
        Self::term(m, v, c)
    }

    pub fn add_term(&mut self, m: Monomial, v: u8, c: CoeffPoly<S>) {
        assert!(v < 2, "V is two dimensional");
        if c.is_zero() {
            return;
        }
        let key = (m, v);
        match self.terms.get_mut(&key) {
            Some(e) => {
                *e += &c;
                if e.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u8, &CoeffPoly<S>)> {
        self.terms.iter().map(|((m, v), c)| (m, *v, c))
    }

    pub fn scale(&self, c: &CoeffPoly<S>) -> Self {
        let mut out = Self::zero();
        if c.is_zero() {
            return out;
        }
        for ((m, v), k) in &self.terms {
            out.add_term(m.clone(), *v, k * c);
        }
        out
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&CoeffPoly::int(n))
    }

    /// Multiplication by a variable.
    pub fn mul_var(&self, var: Var) -> Self {
        let mut out = Self::zero();
        for ((m, v), c) in &self.terms {
            let mut m = m.clone();
            *m.entry(var).or_insert(0) += 1;
            out.add_term(m, *v, c.clone());
        }
        out
    }

    /// Partial derivative by a variable.
    pub fn diff_var(&self, var: Var) -> Self {
        let mut out = Self::zero();
        for ((m, v), c) in &self.terms {
            let Some(&e) = m.get(&var) else { continue };
            let mut m = m.clone();
            if e == 1 {
                m.remove(&var);
            } else {
                m.insert(var, e - 1);
            }
            out.add_term(m, *v, c.scale_int(e as i64));
        }
        out
    }

    /// Applies a 2×2 matrix on the `V` factor: `v_j -> Σ_i mat[i][j] v_i`.
    pub fn apply_v(&self, mat: &[[CoeffPoly<S>; 2]; 2]) -> Self {
        let mut out = Self::zero();
        for ((m, v), c) in &self.terms {
            for (i, row) in mat.iter().enumerate() {
                out.add_term(m.clone(), i as u8, c * &row[*v as usize]);
            }
        }
        out
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|(m, _)| m.keys().copied()).collect()
    }

    /// Largest `|index|` of any variable, 0 for scalars.
    pub fn index_span(&self) -> i64 {
        self.variables().iter().map(|v| v.index().abs()).max().unwrap_or(0)
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|(m, _)| m.values().sum()).max().unwrap_or(0)
    }

    pub fn map_coeffs(&self, f: impl Fn(&CoeffPoly<S>) -> CoeffPoly<S>) -> Self {
        let mut out = Self::zero();
        for ((m, v), c) in &self.terms {
            out.add_term(m.clone(), *v, f(c));
        }
        out
    }

    /// The component along `v`.
    pub fn v_component(&self, v: u8) -> Self {
        let mut out = Self::zero();
        for ((m, w), c) in &self.terms {
            if *w == v {
                out.add_term(m.clone(), v, c.clone());
            }
        }
        out
    }

    /// The same polynomial parts, all moved to `v`.
    pub fn with_v(&self, v: u8) -> Self {
        let mut out = Self::zero();
        for ((m, _), c) in &self.terms {
            out.add_term(m.clone(), v, c.clone());
        }
        out
    }

    /// Drops every term containing a `y` variable.
    pub fn y_degree_zero(&self) -> Self {
        let mut out = Self::zero();
        for ((m, v), c) in &self.terms {
            if m.keys().all(|var| var.is_x()) {
                out.add_term(m.clone(), *v, c.clone());
            }
        }
        out
    }

    pub fn ensure_x_sector(&self) -> Result<()> {
        if let Some(var) = self.variables().into_iter().find(|v| !v.is_x()) {
            return Err(Error::NotXSector(format!("variable {var}")));
        }
        if self.terms.keys().any(|(_, v)| *v != 0) {
            return Err(Error::NotXSector("component along v1".into()));
        }
        Ok(())
    }

    /// If `self = c * other` for a coefficient `c`, returns it.
    pub fn ratio_to(&self, other: &Self) -> Option<CoeffPoly<S>> {
        if self.is_zero() {
            return Some(CoeffPoly::zero());
        }
        let (key, lead) = other.terms.iter().next()?;
        let mine = self.terms.get(key)?;
        let c = divide_exact(mine, lead)?;
        (other.scale(&c) == *self).then_some(c)
    }
}

/// Exact quotient of coefficient polynomials when the divisor is a single
/// term dividing every term of the dividend.
fn divide_exact<S: Scalar>(num: &CoeffPoly<S>, den: &CoeffPoly<S>) -> Option<CoeffPoly<S>> {
    if let Some(c) = den.as_constant() {
        return (!c.is_zero()).then(|| num.div_scalar(&c));
    }
    let mut dterms = den.terms();
    let (dexp, dc) = dterms.next()?;
    if dterms.next().is_some() {
        return None;
    }
    let mut out = CoeffPoly::zero();
    for (e, c) in num.terms() {
        let mut q = *e;
        for (qi, di) in q.iter_mut().zip(dexp.iter()) {
            *qi = qi.checked_sub(*di)?;
        }
        out += &CoeffPoly::monomial(q, c.clone() / dc.clone());
    }
    Some(out)
}

impl<S: Scalar> fmt::Display for FockState<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((m, v), c)| format!("({c})*{}*v{v}", render_monomial(m)))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<S: Scalar> fmt::Debug for FockState<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FockState({self})")
    }
}

impl<S: Scalar> Add<&FockState<S>> for &FockState<S> {
    type Output = FockState<S>;
    fn add(self, rhs: &FockState<S>) -> FockState<S> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<S: Scalar> std::ops::AddAssign<&FockState<S>> for FockState<S> {
    fn add_assign(&mut self, rhs: &FockState<S>) {
        for ((m, v), c) in &rhs.terms {
            self.add_term(m.clone(), *v, c.clone());
        }
    }
}

impl<S: Scalar> Sub<&FockState<S>> for &FockState<S> {
    type Output = FockState<S>;
    fn sub(self, rhs: &FockState<S>) -> FockState<S> {
        let mut out = self.clone();
        for ((m, v), c) in &rhs.terms {
            out.add_term(m.clone(), *v, -c);
        }
        out
    }
}

impl<S: Scalar> Neg for &FockState<S> {
    type Output = FockState<S>;
    fn neg(self) -> FockState<S> {
        self.scale_int(-1)
    }
}

/// Oscillator generators `a`, `a*`, `a1`, `a1*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Osc {
    A,
    AStar,
    A1,
    A1Star,
}

impl Osc {
    pub const ALL: [Osc; 4] = [Osc::A, Osc::AStar, Osc::A1, Osc::A1Star];

    fn var(self, n: i64) -> Var {
        match self {
            Osc::A | Osc::AStar => Var::X(n),
            Osc::A1 | Osc::A1Star => Var::X1(n),
        }
    }

    pub fn is_star(self) -> bool {
        matches!(self, Osc::AStar | Osc::A1Star)
    }

    /// The partner `c` with `[self_n, c_m] = δ(n+m) id`.
    pub fn dual(self) -> Osc {
        match self {
            Osc::A => Osc::AStar,
            Osc::AStar => Osc::A,
            Osc::A1 => Osc::A1Star,
            Osc::A1Star => Osc::A1,
        }
    }
}

impl fmt::Display for Osc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Osc::A => "a",
            Osc::AStar => "a*",
            Osc::A1 => "a1",
            Osc::A1Star => "a1*",
        })
    }
}

/// How an oscillator mode acts in `rho_r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OscAction {
    /// Multiplication by the variable.
    Mul(Var),
    /// `sign * ∂/∂var`.
    Diff(Var, i64),
}

pub fn osc_action(gen: Osc, m: i64, r: u8) -> OscAction {
    match (gen.is_star(), r) {
        (false, 0) if m >= 0 => OscAction::Diff(gen.var(m), 1),
        (false, _) => OscAction::Mul(gen.var(m)),
        (true, 0) if m <= 0 => OscAction::Mul(gen.var(-m)),
        (true, _) => OscAction::Diff(gen.var(-m), -1),
    }
}

pub fn osc_apply<S: Scalar>(gen: Osc, m: i64, s: &FockState<S>, r: u8) -> FockState<S> {
    match osc_action(gen, m, r) {
        OscAction::Mul(v) => s.mul_var(v),
        OscAction::Diff(v, sign) => s.diff_var(v).scale_int(sign),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type F = FockState<Rational>;

    fn sample() -> F {
        let mut s = F::from_vars(&[Var::X(3), Var::X(-3), Var::X1(0)], 0, CoeffPoly::int(2));
        s += &F::from_vars(&[Var::X(3), Var::X(3)], 1, CoeffPoly::int(-1));
        s += &F::from_vars(&[Var::X(-3), Var::X1(2)], 0, CoeffPoly::ratio(1, 3));
        s
    }

    #[test]
    fn vacuum_rules() {
        let vac = F::vacuum(0);
        assert!(osc_apply(Osc::A, 2, &vac, 0).is_zero());
        assert_eq!(osc_apply(Osc::A, -1, &vac, 0), F::from_vars(&[Var::X(-1)], 0, CoeffPoly::one()));
        for m in -5..=5 {
            assert!(osc_apply(Osc::AStar, m, &vac, 1).is_zero());
            assert!(osc_apply(Osc::A1Star, m, &vac, 1).is_zero());
        }
    }

    #[test]
    fn canonical_commutator_r0() {
        let s = sample();
        let lhs = &osc_apply(Osc::A, 3, &osc_apply(Osc::AStar, -3, &s, 0), 0)
            - &osc_apply(Osc::AStar, -3, &osc_apply(Osc::A, 3, &s, 0), 0);
        assert_eq!(lhs, s);
    }

    #[test]
    fn commutation_relations_both_r() {
        let s = sample();
        for r in [0, 1] {
            for g in Osc::ALL {
                for h in Osc::ALL {
                    for n in -4..=4 {
                        for m in -4..=4 {
                            let lhs = &osc_apply(g, n, &osc_apply(h, m, &s, r), r)
                                - &osc_apply(h, m, &osc_apply(g, n, &s, r), r);
                            let want = if h == g.dual() && n + m == 0 {
                                if g.is_star() { -&s } else { s.clone() }
                            } else {
                                F::zero()
                            };
                            assert_eq!(lhs, want, "r={r} [{g}_{n}, {h}_{m}]");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ratio_detects_scalar_multiples() {
        let s = sample();
        let c = CoeffPoly::symbol(crate::Symbol::Chi0).scale_int(-3);
        assert_eq!(s.scale(&c).ratio_to(&s), Some(c));
        assert_eq!(s.mul_var(Var::X(0)).ratio_to(&s), None);
    }
}
