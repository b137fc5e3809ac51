//! Pollaczek polynomials `p_k(b)`, `q_k(b)`.
//!
//! They are defined by `[t^(k-2) u dt] = p_k w+ + q_k w-` and, per the
//! classical description, satisfy the three-term recursion
//!
//! ```text
//! (k+γ) P_k = 2[(k+λ+α+γ-1) b + β] P_{k-1} - (k+2λ+γ-2) P_{k-2}
//! ```
//!
//! with `λ = -1/2, α = 0, β = -1, γ = 1/2`. This module computes the
//! recursion for arbitrary parameters and checks it against the
//! differential oracle and the generating-function ODEs.

pub mod numeric;

use std::any::{Any, TypeId};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use crate::differential::reduce_fdg;
use crate::poly::{CoeffPoly, Symbol};
use crate::ring::RingElement;
use crate::scalar::Scalar;

/// The four parameters `(λ, α, β, γ)` of the recursion.
#[derive(Debug, Clone, PartialEq)]
pub struct PollaczekParams<S: Scalar> {
    pub lambda: S,
    pub alpha: S,
    pub beta: S,
    pub gamma: S,
}

impl<S: Scalar> PollaczekParams<S> {
    /// `λ = -1/2, α = 0, β = -1, γ = 1/2` as printed for this curve.
    pub fn printed() -> Self {
        PollaczekParams {
            lambda: S::ratio(-1, 2),
            alpha: S::zero(),
            beta: S::from_int(-1),
            gamma: S::ratio(1, 2),
        }
    }

    /// The parameters read off the Kähler relation
    /// `(2k+1) a_k = 4b(k-1) a_{k-1} - (2k-5) a_{k-2}`, i.e. `β = 0`.
    pub fn kahler() -> Self {
        PollaczekParams {
            beta: S::zero(),
            ..Self::printed()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PollaczekPair<S: Scalar> {
    pub k: usize,
    pub p: CoeffPoly<S>,
    pub q: CoeffPoly<S>,
}

impl<S: Scalar> PollaczekPair<S> {
    /// `deg p <= max(k-1, 0)` and, for `k >= 1`, `deg q <= max(k-2, 0)`.
    pub fn degree_bounds_hold(&self) -> bool {
        let k = self.k as i64;
        let dp = self.p.degree_in(Symbol::B) as i64;
        let dq = self.q.degree_in(Symbol::B) as i64;
        let others_absent = self.p.symbols().iter().chain(self.q.symbols().iter()).all(|s| *s == Symbol::B);
        others_absent && dp <= (k - 1).max(0) && (k == 0 || dq <= (k - 2).max(0))
    }
}

/// One step of the recursion for both sequences, given `P_{k-1}, P_{k-2}`.
fn step<S: Scalar>(
    params: &PollaczekParams<S>,
    k: usize,
    prev: &CoeffPoly<S>,
    prev2: &CoeffPoly<S>,
) -> CoeffPoly<S> {
    let kk = S::from_usize(k).unwrap();
    let b = CoeffPoly::<S>::symbol(Symbol::B);
    let lin = &b.scale(&(kk.clone() + params.lambda.clone() + params.alpha.clone() + params.gamma.clone() - S::one()))
        + &CoeffPoly::constant(params.beta.clone());
    let mid = &lin.scale_int(2) * prev;
    let tail = prev2.scale(&(kk.clone() + params.lambda.clone() + params.lambda.clone() + params.gamma.clone() - S::from_int(2)));
    // k + γ > 0 for γ = 1/2
    (&mid - &tail).div_scalar(&(kk + params.gamma.clone()))
}

/// `(p_k, q_k)` for `k = 0..=kmax` with initial data `p = (0, 1)`, `q = (1, 0)`.
pub fn pollaczek_sequence<S: Scalar>(params: &PollaczekParams<S>, kmax: usize) -> Vec<PollaczekPair<S>> {
    let mut out: Vec<PollaczekPair<S>> = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        let (p, q) = match k {
            0 => (CoeffPoly::zero(), CoeffPoly::one()),
            1 => (CoeffPoly::one(), CoeffPoly::zero()),
            _ => {
                let (a, b) = (&out[k - 1], &out[k - 2]);
                (step(params, k, &a.p, &b.p), step(params, k, &a.q, &b.q))
            }
        };
        out.push(PollaczekPair { k, p, q });
    }
    out
}

fn memo() -> &'static Mutex<HashMap<TypeId, Box<dyn Any + Send>>> {
    static MEMO: OnceLock<Mutex<HashMap<TypeId, Box<dyn Any + Send>>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `(p_k, q_k)` from the printed parameters, memoized.
pub fn pollaczek_pq<S: Scalar>(k: usize) -> PollaczekPair<S> {
    let mut guard = memo().lock().expect("pollaczek memo poisoned");
    let slot = guard
        .entry(TypeId::of::<S>())
        .or_insert_with(|| Box::new(Vec::<PollaczekPair<S>>::new()));
    let table = slot.downcast_mut::<Vec<PollaczekPair<S>>>().unwrap();
    if table.len() <= k {
        let params = PollaczekParams::printed();
        while table.len() <= k {
            let n = table.len();
            let pair = match n {
                0 | 1 => pollaczek_sequence(&params, 1).swap_remove(n),
                _ => PollaczekPair {
                    k: n,
                    p: step(&params, n, &table[n - 1].p, &table[n - 2].p),
                    q: step(&params, n, &table[n - 1].q, &table[n - 2].q),
                },
            };
            table.push(pair);
        }
    }
    table[k].clone()
}

/// `(p_k, q_k)` as computed by the differential oracle: the class of
/// `t^(k-2) u dt`. Defined for every integer `k`.
pub fn oracle_pq<S: Scalar>(k: i64) -> (CoeffPoly<S>, CoeffPoly<S>) {
    let c = reduce_fdg(&RingElement::<S>::tu(k - 2), &RingElement::t(1));
    (c.cplus, c.cminus)
}

#[derive(Debug, Clone, Serialize)]
pub struct CrosscheckRow {
    pub k: usize,
    pub p: String,
    pub q: String,
    pub oracle_p: String,
    pub oracle_q: String,
    pub agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiscrepancyReport {
    pub rows: Vec<CrosscheckRow>,
    pub first_divergent: Option<usize>,
    pub verdict: String,
}

/// Compares the printed recursion with the oracle for `k = 0..=kmax`.
pub fn crosscheck_oracle<S: Scalar>(kmax: usize) -> DiscrepancyReport {
    let rows: Vec<CrosscheckRow> = (0..=kmax)
        .map(|k| {
            let pair = pollaczek_pq::<S>(k);
            let (op, oq) = oracle_pq::<S>(k as i64);
            CrosscheckRow {
                k,
                agree: pair.p == op && pair.q == oq,
                p: pair.p.to_string(),
                q: pair.q.to_string(),
                oracle_p: op.to_string(),
                oracle_q: oq.to_string(),
            }
        })
        .collect();
    let first_divergent = rows.iter().find(|r| !r.agree).map(|r| r.k);
    let verdict = match first_divergent {
        None => "agree".to_string(),
        Some(k) => format!(
            "diverge from k={k}: recursion gives ({}, {}), oracle gives ({}, {})",
            rows[k].p, rows[k].q, rows[k].oracle_p, rows[k].oracle_q
        ),
    };
    DiscrepancyReport {
        rows,
        first_divergent,
        verdict,
    }
}

/// Truncated power series in `x` with polynomial coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesPoly<S: Scalar> {
    pub order: usize,
    pub coeffs: Vec<CoeffPoly<S>>,
}

impl<S: Scalar> SeriesPoly<S> {
    pub fn zero(order: usize) -> Self {
        SeriesPoly {
            order,
            coeffs: vec![CoeffPoly::zero(); order + 1],
        }
    }

    pub fn from_coeffs(order: usize, mut coeffs: Vec<CoeffPoly<S>>) -> Self {
        coeffs.resize(order + 1, CoeffPoly::zero());
        SeriesPoly { order, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn derivative(&self) -> Self {
        let mut out = Self::zero(self.order);
        for n in 1..=self.order {
            out.coeffs[n - 1] = self.coeffs[n].scale_int(n as i64);
        }
        // top coefficient would need a_{order+1}; left at zero
        out
    }

    /// Multiplies by the polynomial `Σ poly[i] x^i`, truncating at `order`.
    pub fn mul_xpoly(&self, poly: &[CoeffPoly<S>]) -> Self {
        let mut out = Self::zero(self.order);
        for (i, c) in poly.iter().enumerate() {
            for n in 0..=self.order {
                if n + i > self.order {
                    break;
                }
                let t = &self.coeffs[n] * c;
                out.coeffs[n + i] += &t;
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        SeriesPoly {
            order: self.order,
            coeffs,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        SeriesPoly {
            order: self.order,
            coeffs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GenFn {
    P,
    Q,
}

/// Sign of the constant term of the cubic `x(x^2 - 2bx ± 1)` in the ODE.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CubicSign {
    /// `x(x^2 - 2bx - 1)` as displayed.
    Printed,
    /// `x(x^2 - 2bx + 1)`, matching the curve.
    Flipped,
}

/// Residual of the generating-function ODE through order `n`, with the
/// series built from the recursion under the same parameters:
///
/// ```text
/// x(x^2 - 2bx ± 1) F' + [(2λ+γ)x^2 - 2x((λ+α+γ)b + β) + γ] F - rhs
/// ```
///
/// where `rhs = γ` for `Q` and `(1+γ) x` for `P`.
pub fn gf_ode_residual<S: Scalar>(
    which: GenFn,
    n: usize,
    params: &PollaczekParams<S>,
    cubic: CubicSign,
) -> SeriesPoly<S> {
    assert!(n >= 2, "ODE residual needs order >= 2");
    let seq = pollaczek_sequence(params, n + 1);
    let coeffs: Vec<CoeffPoly<S>> = seq
        .iter()
        .map(|pair| match which {
            GenFn::P => pair.p.clone(),
            GenFn::Q => pair.q.clone(),
        })
        .collect();
    // carry one extra coefficient so F' is exact through x^n
    let series = SeriesPoly::from_coeffs(n + 1, coeffs);
    let b = CoeffPoly::<S>::symbol(Symbol::B);
    let c1 = match cubic {
        CubicSign::Printed => CoeffPoly::int(-1),
        CubicSign::Flipped => CoeffPoly::one(),
    };
    let cubic_poly = vec![CoeffPoly::zero(), c1, b.scale_int(-2), CoeffPoly::one()];
    let lam = params.lambda.clone();
    let gam = params.gamma.clone();
    let lin = &b.scale(&(lam.clone() + params.alpha.clone() + gam.clone())) + &CoeffPoly::constant(params.beta.clone());
    let bracket = vec![
        CoeffPoly::constant(gam.clone()),
        lin.scale_int(-2),
        CoeffPoly::constant(lam.clone() + lam + gam.clone()),
    ];
    let lhs = series
        .derivative()
        .mul_xpoly(&cubic_poly)
        .add(&series.mul_xpoly(&bracket));
    let mut rhs = SeriesPoly::zero(n + 1);
    match which {
        GenFn::Q => rhs.coeffs[0] = CoeffPoly::constant(gam),
        GenFn::P => rhs.coeffs[1] = CoeffPoly::constant(S::one() + gam),
    }
    let full = lhs.sub(&rhs);
    SeriesPoly::from_coeffs(n, full.coeffs[..=n].to_vec())
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
    fn initial_conditions() {
        let p0 = pollaczek_pq::<Rational>(0);
        let p1 = pollaczek_pq::<Rational>(1);
        assert_eq!((p0.p, p0.q), (Poly::zero(), Poly::one()));
        assert_eq!((p1.p, p1.q), (Poly::one(), Poly::zero()));
    }

    #[test]
    fn printed_values_k2_k3() {
        let p2 = pollaczek_pq::<Rational>(2);
        assert_eq!(p2.p, (b() - Poly::one()).scale(&q(4, 5)));
        assert_eq!(p2.q, Poly::ratio(1, 5));
        let p3 = pollaczek_pq::<Rational>(3);
        assert_eq!(
            p3.p,
            (b().pow(2).scale_int(32) - b().scale_int(48) + Poly::int(11)).scale(&q(1, 35))
        );
        assert_eq!(p3.q, (b().scale_int(2) - Poly::one()).scale(&q(4, 35)));
    }

    #[test]
    fn determinant_is_one_over_35() {
        let p2 = pollaczek_pq::<Rational>(2);
        let p3 = pollaczek_pq::<Rational>(3);
        let det = &p2.p * &p3.q - &p3.p * &p2.q;
        assert_eq!(det, Poly::ratio(1, 35));
    }

    #[test]
    fn memo_matches_direct_sequence() {
        let seq = pollaczek_sequence(&PollaczekParams::<Rational>::printed(), 20);
        for pair in &seq {
            assert_eq!(&pollaczek_pq::<Rational>(pair.k), pair);
        }
    }

    #[test]
    fn degree_bounds() {
        for pair in pollaczek_sequence(&PollaczekParams::<Rational>::printed(), 32) {
            assert!(pair.degree_bounds_hold(), "k={}", pair.k);
        }
    }

    #[test]
    fn kahler_parameters_reproduce_oracle() {
        let seq = pollaczek_sequence(&PollaczekParams::<Rational>::kahler(), 12);
        for pair in seq {
            let (op, oq) = oracle_pq::<Rational>(pair.k as i64);
            assert_eq!((pair.p, pair.q), (op, oq));
        }
    }

    #[test]
    fn crosscheck_reports_first_divergence() {
        let rep = crosscheck_oracle::<Rational>(10);
        assert_eq!(rep.rows.len(), 11);
        assert!(rep.rows[0].agree && rep.rows[1].agree);
        assert_eq!(rep.first_divergent, Some(2));
        assert_eq!(rep.rows[2].oracle_p, "(4/5)*b");
        assert_eq!(rep.rows[2].p, "(4/5)*b - 4/5");
    }

    #[test]
    fn ode_residuals() {
        let printed = PollaczekParams::<Rational>::printed();
        let kahler = PollaczekParams::<Rational>::kahler();
        // order-0 coefficient is γ q0 - γ = 0 in every configuration
        for cubic in [CubicSign::Printed, CubicSign::Flipped] {
            let r = gf_ode_residual(GenFn::Q, 6, &printed, cubic);
            assert!(r.coeffs[0].is_zero());
        }
        // with the curve's cubic and β = 0 both equations hold exactly
        assert!(gf_ode_residual(GenFn::Q, 10, &kahler, CubicSign::Flipped).is_zero());
        assert!(gf_ode_residual(GenFn::P, 10, &kahler, CubicSign::Flipped).is_zero());
        // the displayed cubic leaves -2n F_n behind
        let r = gf_ode_residual(GenFn::Q, 6, &kahler, CubicSign::Printed);
        let seq = pollaczek_sequence(&kahler, 6);
        for n in 0..=6 {
            assert_eq!(r.coeffs[n], seq[n].q.scale_int(-2 * n as i64));
        }
        // with β = -1 and the curve's cubic only the x^1 coefficient of Q fails
        let r = gf_ode_residual(GenFn::Q, 8, &printed, CubicSign::Flipped);
        assert_eq!(r.coeffs[1], Poly::int(2));
        assert!(r.coeffs.iter().enumerate().all(|(i, c)| i == 1 || c.is_zero()));
        assert!(gf_ode_residual(GenFn::P, 8, &printed, CubicSign::Flipped).is_zero());
    }
}
