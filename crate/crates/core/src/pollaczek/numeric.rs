//! Floating-point spot check of the closed-form generating functions.
//!
//! The only floating-point code in the crate. With `α± = b ± sqrt(b^2-1)`
//! and `A± = λ ∓ (αb+β)/sqrt(b^2-1)`,
//!
//! ```text
//! Q(x) = ∫_0^x γ ξ^(γ-1) (ξ-α+)^(A+ - 1) (ξ-α-)^(A- - 1) dξ
//!        / (x^γ (x-α+)^A+ (x-α-)^A-)
//! ```
//!
//! and analogously for `P`. Substituting `ξ = x s^(1/γ)` removes the
//! endpoint singularity; the integrand is then evaluated in complex
//! arithmetic so `|b| < 1` works too.

use num_complex::Complex64;
use serde::Serialize;

use super::{pollaczek_sequence, GenFn, PollaczekParams};
use crate::poly::{Symbol, NSYM};
use crate::scalar::rational_to_f64;
use crate::Rational;

#[derive(Debug, Clone, Serialize)]
pub struct FloatReport {
    pub which: GenFn,
    pub x0: f64,
    pub b0: f64,
    pub series_order: usize,
    pub series_value: f64,
    pub quadrature_value: f64,
    pub abs_diff: f64,
    pub tol: f64,
    pub within_tol: bool,
    pub quadrature_converged: bool,
    pub note: String,
}

fn series_value(which: GenFn, params: &PollaczekParams<Rational>, order: usize, x0: f64, b0: f64) -> f64 {
    let mut at = [0.0; NSYM];
    at[Symbol::B.index()] = b0;
    pollaczek_sequence(params, order)
        .iter()
        .enumerate()
        .map(|(n, pair)| {
            let c = match which {
                GenFn::P => &pair.p,
                GenFn::Q => &pair.q,
            };
            c.map_coeffs(rational_to_f64).eval(&at) * x0.powi(n as i32)
        })
        .sum()
}

struct Integrand {
    which: GenFn,
    x: f64,
    b: f64,
    gamma: f64,
    a_plus: Complex64,
    a_minus: Complex64,
    root_plus: Complex64,
    root_minus: Complex64,
}

impl Integrand {
    fn at(&self, s: f64) -> f64 {
        let xi = self.x * s.powf(1.0 / self.gamma);
        let x = Complex64::new(self.x, 0.0);
        let xic = Complex64::new(xi, 0.0);
        let r1 = ((self.root_plus - xic) / (self.root_plus - x)).powc(self.a_plus);
        let r2 = ((self.root_minus - xic) / (self.root_minus - x)).powc(self.a_minus);
        let val = r1 * r2 / (xi * xi - 2.0 * self.b * xi + 1.0);
        let weight = match self.which {
            GenFn::Q => 1.0,
            GenFn::P => (1.0 + self.gamma) / self.gamma * self.x * s.powf(1.0 / self.gamma),
        };
        val.re * weight
    }
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> (f64, bool) {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * eps {
        return (left + right + delta / 15.0, true);
    }
    if depth == 0 {
        return (left + right, false);
    }
    let (l, okl) = adaptive(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1);
    let (r, okr) = adaptive(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
    (l + r, okl && okr)
}

/// Compares the truncated recursion series against quadrature of the
/// closed form at `(x0, b0)`. Non-convergence is reported, never fatal.
pub fn numeric_gf_spotcheck(
    which: GenFn,
    params: &PollaczekParams<Rational>,
    x0: &Rational,
    b0: &Rational,
    order: usize,
    tol: f64,
) -> FloatReport {
    let x = rational_to_f64(x0);
    let b = rational_to_f64(b0);
    let lambda = rational_to_f64(&params.lambda);
    let alpha = rational_to_f64(&params.alpha);
    let beta = rational_to_f64(&params.beta);
    let gamma = rational_to_f64(&params.gamma);
    let series = series_value(which, params, order, x, b);

    let mut note = String::new();
    if x.abs() >= 0.25 {
        note.push_str("|x0| >= 1/4 is outside the supported range; ");
    }
    if (b * b - 1.0).abs() < 1e-12 {
        note.push_str("b0^2 = 1 makes the roots collide; ");
        return FloatReport {
            which,
            x0: x,
            b0: b,
            series_order: order,
            series_value: series,
            quadrature_value: f64::NAN,
            abs_diff: f64::NAN,
            tol,
            within_tol: false,
            quadrature_converged: false,
            note,
        };
    }
    let disc = Complex64::new(b * b - 1.0, 0.0).sqrt();
    let shift = Complex64::new(alpha * b + beta, 0.0) / disc;
    let integrand = Integrand {
        which,
        x,
        b,
        gamma,
        a_plus: Complex64::new(lambda, 0.0) - shift,
        a_minus: Complex64::new(lambda, 0.0) + shift,
        root_plus: Complex64::new(b, 0.0) + disc,
        root_minus: Complex64::new(b, 0.0) - disc,
    };
    let (quad, converged) = if x == 0.0 {
        let v = match which {
            GenFn::Q => 1.0,
            GenFn::P => 0.0,
        };
        (v, true)
    } else {
        let f = |s: f64| integrand.at(s);
        let (fa, fm, fb) = (f(0.0), f(0.5), f(1.0));
        let whole = simpson(0.0, 1.0, fa, fm, fb);
        adaptive(&f, 0.0, 1.0, fa, fm, fb, whole, 1e-13, 40)
    };
    if !converged {
        note.push_str("quadrature did not reach its error target; ");
    }
    let abs_diff = (series - quad).abs();
    FloatReport {
        which,
        x0: x,
        b0: b,
        series_order: order,
        series_value: series,
        quadrature_value: quad,
        abs_diff,
        tol,
        within_tol: abs_diff <= tol,
        quadrature_converged: converged,
        note: note.trim_end_matches("; ").to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_rational;

    #[test]
    fn origin_is_one_for_q() {
        let p = PollaczekParams::printed();
        let r = numeric_gf_spotcheck(GenFn::Q, &p, &parse_rational("0").unwrap(), &parse_rational("2").unwrap(), 10, 1e-12);
        assert_eq!(r.series_value, 1.0);
        assert_eq!(r.quadrature_value, 1.0);
    }

    #[test]
    fn kahler_series_matches_closed_form() {
        let p = PollaczekParams::kahler();
        let x = parse_rational("1/10").unwrap();
        let b = parse_rational("2").unwrap();
        for which in [GenFn::Q, GenFn::P] {
            let r = numeric_gf_spotcheck(which, &p, &x, &b, 40, 1e-6);
            assert!(r.within_tol, "{r:?}");
        }
    }

    #[test]
    fn truncation_error_shrinks_with_order() {
        let p = PollaczekParams::kahler();
        let x = parse_rational("1/10").unwrap();
        let b = parse_rational("2").unwrap();
        let lo = numeric_gf_spotcheck(GenFn::Q, &p, &x, &b, 10, 1e-6);
        let hi = numeric_gf_spotcheck(GenFn::Q, &p, &x, &b, 40, 1e-6);
        assert!(hi.abs_diff <= lo.abs_diff);
    }
}
