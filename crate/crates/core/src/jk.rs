//! The Jakobsen–Kac realization of the induced module `M(φ)` on
//! `C[x_n, x1_n]`, and its comparison with the `r = 1` free-field module.
//!
//! Ring monomials and polynomial variables are matched by `t^n ↔ x_n`,
//! `t^n u ↔ x1_n`. Operators come in two forms: the generic one, built from
//! the ring's structure constants, and the literal elliptic formulas, whose
//! coefficients in the `u·u` products are selectable through [`JkVariant`].

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Sl2;
use crate::error::{Error, Result};
use crate::fock::{FockState, Var};
use crate::heisenberg::{heis_apply, HeisGen, HeisVariant, ModuleParams};
use crate::poly::{CoeffPoly, Symbol};
use crate::realization::{Realization, ThetaGen};
use crate::report::{CaseRecord, Check, Verdict};
use crate::ring::{RingElement, RingMonomial, Sector};
use crate::scalar::{parse_rational, Scalar};

/// A finitely supported linear functional on the ring. On a commutative
/// ring every linear functional is a trace.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TraceFunctional<S: Scalar> {
    values: BTreeMap<RingMonomial, S>,
}

impl<S: Scalar> TraceFunctional<S> {
    pub fn zero() -> Self {
        TraceFunctional { values: BTreeMap::new() }
    }

    pub fn set(&mut self, m: RingMonomial, v: S) {
        if v.is_zero() {
            self.values.remove(&m);
        } else {
            self.values.insert(m, v);
        }
    }

    pub fn at(&self, m: RingMonomial) -> CoeffPoly<S> {
        self.values.get(&m).map_or_else(CoeffPoly::zero, |v| CoeffPoly::constant(v.clone()))
    }

    pub fn eval(&self, r: &RingElement<S>) -> CoeffPoly<S> {
        r.terms().map(|(m, c)| c * &self.at(*m)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = (&RingMonomial, &S)> {
        self.values.iter()
    }
}

impl TraceFunctional<crate::Rational> {
    /// Parses `{"t^0": "1", "u t^-1": "2/3"}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: BTreeMap<String, String> =
            serde_json::from_str(text).map_err(|e| Error::Invalid(format!("trace functional: {e}")))?;
        let mut out = Self::zero();
        for (k, v) in raw {
            out.set(parse_monomial(&k)?, parse_rational(&v)?);
        }
        Ok(out)
    }
}

impl<S: Scalar> fmt::Display for TraceFunctional<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|(m, v)| format!("φ({m}) = {}", CoeffPoly::constant(v.clone())))
            .collect();
        if parts.is_empty() {
            f.write_str("φ = 0")
        } else {
            f.write_str(&parts.join(", "))
        }
    }
}

/// Parses `t^n` or `u t^n` (also `t^n u`).
pub fn parse_monomial(text: &str) -> Result<RingMonomial> {
    let bad = || Error::Invalid(format!("ring monomial `{text}`"));
    let mut sector = Sector::Plain;
    let mut n = 0;
    let mut seen_t = false;
    for part in text.split_whitespace() {
        if part == "u" {
            sector = Sector::U;
        } else if let Some(e) = part.strip_prefix("t^") {
            n = e.parse().map_err(|_| bad())?;
            seen_t = true;
        } else if part == "t" {
            n = 1;
            seen_t = true;
        } else {
            return Err(bad());
        }
    }
    if !seen_t && sector == Sector::Plain {
        return Err(bad());
    }
    Ok(RingMonomial { n, sector })
}

fn var_of(m: RingMonomial) -> Var {
    match m.sector {
        Sector::Plain => Var::X(m.n),
        Sector::U => Var::X1(m.n),
    }
}

fn mono_of(v: Var) -> Option<RingMonomial> {
    match v {
        Var::X(n) => Some(RingMonomial::t(n)),
        Var::X1(n) => Some(RingMonomial::tu(n)),
        _ => None,
    }
}

/// How `t^a u · t^c u` is expanded in the literal formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UuRule {
    /// `t^{a+c} (t^2 - 2b t + 1)`, the index pattern as displayed.
    Printed,
    /// `t^{a+c} (t^3 - 2b t^2 + t)`, the curve.
    Curve,
}

/// Middle coefficient of the `u·u` product inside `ρ(t^m u h)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HCoeff {
    /// `-2`
    Printed,
    /// `-2b`
    Curve,
}

/// The `φ(t^{m+p} ·)∂_{x1_p}` factor of `ρ(t^m u e)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PhiTerm {
    /// `t^2 - 2b t - 1`
    Printed,
    /// `t (t^2 - 2b t + 1)`
    Curve,
}

/// One configuration of the literal elliptic formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct JkVariant {
    pub h_coeff: HCoeff,
    pub phi_term: PhiTerm,
    pub uu: UuRule,
}

impl JkVariant {
    pub fn all() -> Vec<JkVariant> {
        let mut out = Vec::new();
        for h_coeff in [HCoeff::Printed, HCoeff::Curve] {
            for phi_term in [PhiTerm::Printed, PhiTerm::Curve] {
                for uu in [UuRule::Printed, UuRule::Curve] {
                    out.push(JkVariant { h_coeff, phi_term, uu });
                }
            }
        }
        out
    }

    pub fn as_printed() -> Self {
        JkVariant {
            h_coeff: HCoeff::Printed,
            phi_term: PhiTerm::Printed,
            uu: UuRule::Printed,
        }
    }

    pub fn corrected() -> Self {
        JkVariant {
            h_coeff: HCoeff::Curve,
            phi_term: PhiTerm::Curve,
            uu: UuRule::Curve,
        }
    }
}

impl fmt::Display for JkVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = match self.h_coeff {
            HCoeff::Printed => "-2",
            HCoeff::Curve => "-2b",
        };
        let phi = match self.phi_term {
            PhiTerm::Printed => "t^2-2bt-1",
            PhiTerm::Curve => "t(t^2-2bt+1)",
        };
        let uu = match self.uu {
            UuRule::Printed => "t^2-2bt+1",
            UuRule::Curve => "t^3-2bt^2+t",
        };
        write!(f, "uh-coeff={h}; ue-phi={phi}; uu={uu}")
    }
}

/// Which formulas an operator uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum JkForm {
    /// Structure constants of the ring itself.
    Generic,
    Literal(JkVariant),
}

impl fmt::Display for JkForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JkForm::Generic => f.write_str("generic"),
            JkForm::Literal(v) => write!(f, "literal[{v}]"),
        }
    }
}

/// `ρ(X ⊗ m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JkOperator {
    pub x: Sl2,
    pub mono: RingMonomial,
    pub form: JkForm,
}

impl JkOperator {
    pub fn generic(x: Sl2, mono: RingMonomial) -> Self {
        JkOperator { x, mono, form: JkForm::Generic }
    }
}

/// `t^a u · t^c u` in the literal convention, with the given middle coefficient.
fn uu_terms<S: Scalar>(total: i64, rule: UuRule, middle: &CoeffPoly<S>) -> [(i64, CoeffPoly<S>); 3] {
    let base = match rule {
        UuRule::Printed => total,
        UuRule::Curve => total + 1,
    };
    [(base + 2, CoeffPoly::one()), (base + 1, middle.clone()), (base, CoeffPoly::one())]
}

fn minus_two_b<S: Scalar>() -> CoeffPoly<S> {
    CoeffPoly::symbol(Symbol::B).scale_int(-2)
}

/// Product of two ring monomials under `form`, as a ring element.
fn product<S: Scalar>(a: RingMonomial, c: RingMonomial, form: JkForm, middle: &CoeffPoly<S>) -> RingElement<S> {
    match form {
        JkForm::Generic => RingElement::monomial(a, CoeffPoly::one()).mul(&RingElement::monomial(c, CoeffPoly::one())),
        JkForm::Literal(v) => {
            let n = a.n + c.n;
            match (a.sector, c.sector) {
                (Sector::Plain, Sector::Plain) => RingElement::t(n),
                (Sector::U, Sector::U) => {
                    let mut out = RingElement::zero();
                    for (k, coeff) in uu_terms(n, v.uu, middle) {
                        out.add_term(RingMonomial::t(k), coeff);
                    }
                    out
                }
                _ => RingElement::tu(n),
            }
        }
    }
}

/// `Σ c_γ x_γ · ∂_α s` for `a · a_α = Σ c_γ a_γ`.
fn transport<S: Scalar>(prod: &RingElement<S>, ds: &FockState<S>) -> FockState<S> {
    let mut out = FockState::zero();
    for (g, c) in prod.terms() {
        out += &ds.mul_var(var_of(*g)).scale(c);
    }
    out
}

fn x_vars<S: Scalar>(s: &FockState<S>) -> Vec<(Var, RingMonomial)> {
    s.variables().into_iter().filter_map(|v| mono_of(v).map(|m| (v, m))).collect()
}

fn jk_apply_unchecked<S: Scalar>(op: &JkOperator, s: &FockState<S>, phi: &TraceFunctional<S>) -> FockState<S> {
    let a = op.mono;
    let vars = x_vars(s);
    match op.x {
        Sl2::F => s.mul_var(var_of(a)),
        Sl2::H => {
            let middle = match op.form {
                JkForm::Literal(JkVariant { h_coeff: HCoeff::Printed, .. }) => CoeffPoly::int(-2),
                _ => minus_two_b(),
            };
            let mut out = s.scale(&phi.at(a));
            for (v, m) in &vars {
                let ds = s.diff_var(*v);
                out += &transport(&product(a, *m, op.form, &middle), &ds).scale_int(-2);
            }
            out
        }
        Sl2::E => {
            let middle = minus_two_b();
            let mut out = FockState::zero();
            for (v, m) in &vars {
                let ds = s.diff_var(*v);
                if ds.is_zero() {
                    continue;
                }
                let first = product(a, *m, op.form, &middle);
                let weight = match (op.form, a.sector, m.sector) {
                    (JkForm::Literal(JkVariant { phi_term: PhiTerm::Printed, .. }), Sector::U, Sector::U) => {
                        let n = a.n + m.n;
                        &(&phi.at(RingMonomial::t(n + 2)) + &(&minus_two_b() * &phi.at(RingMonomial::t(n + 1))))
                            - &phi.at(RingMonomial::t(n))
                    }
                    (JkForm::Literal(JkVariant { phi_term: PhiTerm::Curve, .. }), Sector::U, Sector::U) => {
                        let n = a.n + m.n;
                        let mut r = RingElement::zero();
                        for (k, c) in uu_terms(n, UuRule::Curve, &minus_two_b()) {
                            r.add_term(RingMonomial::t(k), c);
                        }
                        phi.eval(&r)
                    }
                    _ => phi.eval(&first),
                };
                out += &ds.scale(&weight);
                for (w, mw) in &vars {
                    let dds = ds.diff_var(*w);
                    if dds.is_zero() {
                        continue;
                    }
                    let mut triple = RingElement::zero();
                    for (g, c) in first.terms() {
                        triple = &triple + &product(*g, *mw, op.form, &middle).scale(c);
                    }
                    out = &out - &transport(&triple, &dds);
                }
            }
            out
        }
    }
}

/// Applies `ρ(X ⊗ m)` to an x-sector state.
pub fn jk_apply<S: Scalar>(op: &JkOperator, s: &FockState<S>, phi: &TraceFunctional<S>) -> Result<FockState<S>> {
    s.ensure_x_sector()?;
    Ok(jk_apply_unchecked(op, s, phi))
}

/// Ring monomials `t^n`, `t^n u` with `|n| <= window`.
pub fn ring_monomials(window: i64) -> Vec<RingMonomial> {
    (-window..=window).flat_map(|n| [RingMonomial::t(n), RingMonomial::tu(n)]).collect()
}

/// `[ρ(X⊗f), ρ(Y⊗g)] s = ρ([X,Y]⊗fg) s` over all generator pairs and
/// monomials `|n| <= window`, with `fg` taken in the ring itself.
pub fn jk_relation_check<S: Scalar>(
    form: JkForm,
    window: i64,
    phi: &TraceFunctional<S>,
    states: &[FockState<S>],
) -> Check {
    let monos = ring_monomials(window);
    let mut cases = Vec::new();
    for (i, x) in Sl2::ALL.iter().enumerate() {
        for y in &Sl2::ALL[i..] {
            for f in &monos {
                for g in &monos {
                    cases.push((*x, *y, *f, *g));
                }
            }
        }
    }
    let results: Vec<Vec<Option<CaseRecord>>> = cases
        .par_iter()
        .map(|&(x, y, f, g)| {
            let opx = JkOperator { x, mono: f, form };
            let opy = JkOperator { x: y, mono: g, form };
            let fg = RingElement::monomial(f, CoeffPoly::one()).mul(&RingElement::monomial(g, CoeffPoly::one()));
            states
                .iter()
                .map(|s| {
                    let lhs = &jk_apply_unchecked(&opx, &jk_apply_unchecked(&opy, s, phi), phi)
                        - &jk_apply_unchecked(&opy, &jk_apply_unchecked(&opx, s, phi), phi);
                    let mut rhs = FockState::zero();
                    if let Some((c, z)) = x.bracket(y) {
                        for (m, k) in fg.terms() {
                            let op = JkOperator { x: z, mono: *m, form };
                            rhs += &jk_apply_unchecked(&op, s, phi).scale(&k.scale_int(c));
                        }
                    }
                    (lhs != rhs).then(|| {
                        CaseRecord::new(
                            format!("[ρ({x}⊗{f}), ρ({y}⊗{g})] on {s}"),
                            rhs.to_string(),
                            lhs.to_string(),
                            Verdict::Fail,
                        )
                    })
                })
                .collect()
        })
        .collect();
    let mut check = Check::new(format!("Jakobsen–Kac relations, {form}, {phi}"), form == JkForm::Generic);
    for rec in results.into_iter().flatten() {
        match rec {
            Some(r) => check.record(r),
            None => check.ok(),
        }
    }
    check
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariantOutcome {
    pub variant: String,
    pub closes: bool,
    pub check: Check,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JkRelationReport {
    pub window: i64,
    pub phi: String,
    pub generic: Check,
    pub variants: Vec<VariantOutcome>,
    /// Literal configurations that close.
    pub closing: Vec<String>,
}

/// Runs the relation sweep for the generic form and all eight literal
/// configurations.
pub fn jk_variant_sweep<S: Scalar>(window: i64, phi: &TraceFunctional<S>, states: &[FockState<S>]) -> JkRelationReport {
    let generic = jk_relation_check(JkForm::Generic, window, phi, states);
    let variants: Vec<VariantOutcome> = JkVariant::all()
        .into_iter()
        .map(|v| {
            let check = jk_relation_check(JkForm::Literal(v), window, phi, states);
            VariantOutcome {
                variant: v.to_string(),
                closes: check.passed(),
                check,
            }
        })
        .collect();
    let closing = variants.iter().filter(|v| v.closes).map(|v| v.variant.clone()).collect();
    JkRelationReport {
        window,
        phi: phi.to_string(),
        generic,
        variants,
        closing,
    }
}

/// The element `(±e, ±h, ±f)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SignCharacter {
    pub e: i8,
    pub h: i8,
    pub f: i8,
}

impl SignCharacter {
    pub fn all() -> Vec<SignCharacter> {
        let mut out = Vec::new();
        for e in [1, -1] {
            for h in [1, -1] {
                for f in [1, -1] {
                    out.push(SignCharacter { e, h, f });
                }
            }
        }
        out
    }

    pub fn sign(&self, x: Sl2) -> i8 {
        match x {
            Sl2::E => self.e,
            Sl2::H => self.h,
            Sl2::F => self.f,
        }
    }

    /// Whether `X ↦ sign(X) X` preserves the bracket.
    pub fn is_automorphism(&self) -> bool {
        Sl2::ALL.iter().all(|x| {
            Sl2::ALL.iter().all(|y| match x.bracket(*y) {
                Some((_, z)) => self.sign(*x) * self.sign(*y) == self.sign(z),
                None => true,
            })
        })
    }
}

impl fmt::Display for SignCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |v: i8, n: &str| if v < 0 { format!("-{n}") } else { n.to_string() };
        write!(f, "(e->{}, h->{}, f->{})", s(self.e, "e"), s(self.h, "h"), s(self.f, "f"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorSign {
    pub generator: Sl2,
    /// `Some(±1)` when `θ̄ = ±ρ` on every tested case.
    pub sign: Option<i8>,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CaseRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentComparison {
    pub v: u8,
    pub generators: Vec<GeneratorSign>,
    pub matching: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub window: i64,
    pub quotient_invariance: Check,
    pub components: Vec<ComponentComparison>,
    /// Characters that match on every `V` component.
    pub matching: Vec<String>,
    pub automorphisms: Vec<String>,
    pub found: bool,
}

/// The `r = 1` module with `χ0 = λ = 0` and `B1_{-1} = 0`.
pub fn quotient_params<S: Scalar>() -> ModuleParams<S> {
    ModuleParams::new(1, HeisVariant::Original).quotient()
}

/// Every Heisenberg mode with `|n| <= window` maps states of positive
/// `y`-degree to states of positive `y`-degree (or zero).
pub fn quotient_invariance<S: Scalar>(window: i64, states: &[FockState<S>]) -> Check {
    let p = quotient_params::<S>();
    let mut check = Check::new("y-degree >= 1 span is invariant in the quotient", true);
    for g in [HeisGen::B, HeisGen::B1] {
        for n in -window..=window {
            for s in states {
                let out = heis_apply(g, n, s, &p).expect("Heisenberg modes are total");
                let leak = out.y_degree_zero();
                if leak.is_zero() {
                    check.ok();
                } else {
                    check.record(CaseRecord::new(format!("ρ({g:?}_{n}) on {s}"), "no y-degree-0 part", leak.to_string(), Verdict::Fail));
                }
            }
        }
    }
    check
}

fn theta_gen(x: Sl2, sector: Sector) -> ThetaGen {
    match (x, sector) {
        (Sl2::E, Sector::Plain) => ThetaGen::E,
        (Sl2::H, Sector::Plain) => ThetaGen::H,
        (Sl2::F, Sector::Plain) => ThetaGen::F,
        (Sl2::E, Sector::U) => ThetaGen::E1,
        (Sl2::H, Sector::U) => ThetaGen::H1,
        (Sl2::F, Sector::U) => ThetaGen::F1,
    }
}

/// Compares the `y`-degree-0 quotient of the `r = 1` realization with the
/// generic Jakobsen–Kac operators at `φ = 0`, and searches for a sign
/// character relating them.
pub fn jk_compare<S: Scalar>(window: i64, x_states: &[FockState<S>], y_states: &[FockState<S>]) -> Result<ComparisonReport> {
    for s in x_states {
        s.ensure_x_sector()?;
    }
    let theta = Realization::new(quotient_params::<S>());
    let phi = TraceFunctional::zero();
    let mut components = Vec::new();
    for v in [0u8, 1] {
        let mut generators = Vec::new();
        for x in Sl2::ALL {
            let cases: Vec<(RingMonomial, &FockState<S>)> =
                ring_monomials(window).into_iter().flat_map(|m| x_states.iter().map(move |s| (m, s))).collect();
            let outcomes: Vec<Result<(FockState<S>, FockState<S>, String)>> = cases
                .par_iter()
                .map(|&(m, s)| {
                    let sv = s.with_v(v);
                    let got = theta.apply(theta_gen(x, m.sector), m.n, &sv)?.y_degree_zero().with_v(0);
                    let rho = jk_apply_unchecked(&JkOperator::generic(x, m), s, &phi);
                    Ok((got, rho, format!("θ̄({x}⊗{m}) on {sv}")))
                })
                .collect();
            let mut plus = true;
            let mut minus = true;
            let mut counterexample = None;
            for o in outcomes {
                let (got, rho, label) = o?;
                let p = got == rho;
                let n = got == -&rho;
                if !(p || n) && counterexample.is_none() {
                    counterexample = Some(CaseRecord::new(label.clone(), format!("±({rho})"), got.to_string(), Verdict::Fail));
                }
                plus &= p;
                minus &= n;
            }
            let sign = match (plus, minus) {
                (true, _) => Some(1),
                (false, true) => Some(-1),
                _ => None,
            };
            if plus && minus {
                counterexample = None;
            }
            generators.push(GeneratorSign {
                generator: x,
                sign,
                cases: cases.len(),
                counterexample,
            });
        }
        let matching = SignCharacter::all()
            .into_iter()
            .filter(|c| generators.iter().all(|g| g.sign == Some(c.sign(g.generator))))
            .map(|c| c.to_string())
            .collect();
        components.push(ComponentComparison { v, generators, matching });
    }
    let matching: Vec<String> = components[0]
        .matching
        .iter()
        .filter(|c| components[1].matching.contains(c))
        .cloned()
        .collect();
    let automorphisms = SignCharacter::all().into_iter().filter(|c| c.is_automorphism()).map(|c| c.to_string()).collect();
    let quotient_invariance = quotient_invariance(2 * window.max(2), y_states);
    Ok(ComparisonReport {
        window,
        found: !matching.is_empty() && quotient_invariance.passed(),
        quotient_invariance,
        components,
        matching,
        automorphisms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type F = FockState<Rational>;

    #[test]
    fn f_is_multiplication() {
        let op = JkOperator::generic(Sl2::F, RingMonomial::t(2));
        assert_eq!(jk_apply(&op, &F::vacuum(0), &TraceFunctional::zero()).unwrap(), F::from_vars(&[Var::X(2)], 0, CoeffPoly::one()));
    }

    #[test]
    fn h_counts_degree() {
        let op = JkOperator::generic(Sl2::H, RingMonomial::t(0));
        let s = F::from_vars(&[Var::X(5)], 0, CoeffPoly::one());
        assert_eq!(jk_apply(&op, &s, &TraceFunctional::zero()).unwrap(), s.scale_int(-2));
    }

    #[test]
    fn e_double_derivative() {
        let op = JkOperator::generic(Sl2::E, RingMonomial::t(0));
        let s = F::from_vars(&[Var::X(1), Var::X(-1)], 0, CoeffPoly::one());
        let want = F::from_vars(&[Var::X(0)], 0, CoeffPoly::int(-2));
        assert_eq!(jk_apply(&op, &s, &TraceFunctional::zero()).unwrap(), want);
    }

    #[test]
    fn corrected_literal_equals_generic() {
        let mut phi = TraceFunctional::zero();
        phi.set(RingMonomial::t(1), Rational::from_int(2));
        phi.set(RingMonomial::tu(-1), Rational::ratio(2, 3));
        phi.set(RingMonomial::t(4), Rational::from_int(-1));
        let s = &F::from_vars(&[Var::X(1), Var::X1(-1)], 0, CoeffPoly::int(3)) + &F::from_vars(&[Var::X1(0), Var::X1(2)], 0, CoeffPoly::one());
        for x in Sl2::ALL {
            for m in ring_monomials(2) {
                let g = jk_apply(&JkOperator::generic(x, m), &s, &phi).unwrap();
                let l = jk_apply(&JkOperator { x, mono: m, form: JkForm::Literal(JkVariant::corrected()) }, &s, &phi).unwrap();
                assert_eq!(g, l, "{x} {m}");
            }
        }
    }

    #[test]
    fn y_sector_rejected() {
        let s = F::from_vars(&[Var::Y(-1)], 0, CoeffPoly::one());
        assert!(jk_apply(&JkOperator::generic(Sl2::F, RingMonomial::t(0)), &s, &TraceFunctional::zero()).is_err());
    }

    #[test]
    fn phi_json() {
        let phi = TraceFunctional::<Rational>::from_json(r#"{"t^0": "1", "u t^-1": "2/3"}"#).unwrap();
        assert_eq!(phi.at(RingMonomial::tu(-1)), CoeffPoly::ratio(2, 3));
        assert_eq!(phi.at(RingMonomial::t(0)), CoeffPoly::one());
        assert!(TraceFunctional::<Rational>::from_json(r#"{"v^2": "1"}"#).is_err());
    }

    #[test]
    fn sign_characters() {
        let autos: Vec<_> = SignCharacter::all().into_iter().filter(|c| c.is_automorphism()).collect();
        assert_eq!(autos.len(), 2);
        assert!(autos.contains(&SignCharacter { e: -1, h: 1, f: -1 }));
    }

    #[test]
    fn small_sweep_closes_for_generic() {
        let states = vec![F::vacuum(0), F::from_vars(&[Var::X(1), Var::X1(0)], 0, CoeffPoly::one())];
        let mut phi = TraceFunctional::zero();
        phi.set(RingMonomial::t(0), Rational::from_int(1));
        assert!(jk_relation_check(JkForm::Generic, 1, &phi, &states).passed());
    }
}
