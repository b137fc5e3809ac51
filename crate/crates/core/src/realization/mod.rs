//! The free-field realization `θ`: mode extraction, finiteness analysis,
//! relation sweeps and central calibration.

pub mod expr;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{bracket_basis, ConstantsSource, LieBasis, Sl2};
use crate::differential::DifferentialClass;
use crate::error::{Error, Result};
use crate::fock::{osc_action, osc_apply, FockState, OscAction, Var};
use crate::heisenberg::{heis_annihilator_modes, heis_apply, heis_mode_class, HeisGen, HeisVariant, ModeClass, ModuleParams};
use crate::poly::CoeffPoly;
use crate::report::{CaseRecord, Check, Verdict};
use crate::ring::{RingMonomial, Sector};
use crate::scalar::Scalar;

pub use expr::{build_theta, Field, FieldExpr, NormTerm, ThetaGen};

/// The set of modes on which a field acts by pure multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CreationRange {
    Empty,
    /// Inclusive bounds; `None` means unbounded on that side.
    Interval { lo: Option<i64>, hi: Option<i64> },
}

impl CreationRange {
    fn unbounded_above(self) -> bool {
        matches!(self, CreationRange::Interval { hi: None, .. })
    }

    fn unbounded_below(self) -> bool {
        matches!(self, CreationRange::Interval { lo: None, .. })
    }

    fn render(self) -> String {
        match self {
            CreationRange::Empty => "∅".into(),
            CreationRange::Interval { lo, hi } => {
                let l = lo.map_or("-∞".to_string(), |v| v.to_string());
                let h = hi.map_or("+∞".to_string(), |v| v.to_string());
                format!("[{l}, {h}]")
            }
        }
    }
}

pub fn field_class<S: Scalar>(f: Field, n: i64, p: &ModuleParams<S>) -> ModeClass {
    if let Some(g) = f.as_osc() {
        return match osc_action(g, n, p.r) {
            OscAction::Mul(_) => ModeClass::Creation,
            OscAction::Diff(..) => ModeClass::Annihilation,
        };
    }
    heis_mode_class(p.variant, f.as_heis().unwrap(), n)
}

pub fn creation_range(f: Field, r: u8, variant: HeisVariant) -> CreationRange {
    use CreationRange::*;
    let twisted_b = variant != HeisVariant::Original;
    let twisted_b1 = variant == HeisVariant::SigmaTwistedB;
    match f {
        Field::Alpha | Field::Alpha1 if r == 0 => Interval { lo: None, hi: Some(-1) },
        Field::Alpha | Field::Alpha1 => Interval { lo: None, hi: None },
        Field::AlphaStar | Field::Alpha1Star if r == 0 => Interval { lo: None, hi: Some(0) },
        Field::AlphaStar | Field::Alpha1Star => Empty,
        Field::Beta if twisted_b => Interval { lo: None, hi: Some(-1) },
        Field::Beta => Interval { lo: Some(1), hi: None },
        Field::Beta1 if twisted_b1 => Interval { lo: Some(0), hi: None },
        Field::Beta1 => Interval { lo: None, hi: Some(-2) },
    }
}

fn in_range(n: i64, r: CreationRange) -> bool {
    match r {
        CreationRange::Empty => false,
        CreationRange::Interval { lo, hi } => lo.is_none_or(|l| n >= l) && hi.is_none_or(|h| n <= h),
    }
}

/// Modes of `f` that are not creation modes and may act nontrivially on a
/// state with the given variables.
fn finite_candidates<S: Scalar>(f: Field, vars: &BTreeSet<Var>, p: &ModuleParams<S>) -> BTreeSet<i64> {
    let mut out = BTreeSet::new();
    if let Some(g) = f.as_osc() {
        for v in vars {
            for n in [v.index(), -v.index()] {
                if let OscAction::Diff(w, _) = osc_action(g, n, p.r) {
                    if w == *v {
                        out.insert(n);
                    }
                }
            }
        }
    } else {
        let g = f.as_heis().unwrap();
        for v in vars {
            out.extend(heis_annihilator_modes(p.variant, g, *v));
        }
        out.insert(match g {
            HeisGen::B => 0,
            _ => -1,
        });
    }
    out
}

fn apply_mode<S: Scalar>(f: Field, n: i64, s: &FockState<S>, p: &ModuleParams<S>) -> FockState<S> {
    match (f.as_osc(), f.as_heis()) {
        (Some(g), _) => osc_apply(g, n, s, p.r),
        (_, Some(g)) => heis_apply(g, n, s, p).expect("Heisenberg mode coverage is total"),
        _ => unreachable!(),
    }
}

/// `x (x - 1) ... (x - d + 1)`.
fn falling(x: i64, d: u32) -> i64 {
    (0..d as i64).map(|i| x - i).product()
}

/// Evaluates one index tuple: annihilators first, then Heisenberg and
/// diagonal factors, then creators.
fn apply_tuple<S: Scalar>(term: &NormTerm<S>, modes: &[i64], s: &FockState<S>, p: &ModuleParams<S>) -> FockState<S> {
    let mut weight = 1i64;
    for ((f, d), n) in term.factors.iter().zip(modes) {
        weight *= falling(-n - f.weight(), *d);
    }
    if weight == 0 {
        return FockState::zero();
    }
    let classes: Vec<ModeClass> = term.factors.iter().zip(modes).map(|((f, _), n)| field_class(*f, *n, p)).collect();
    let mut state = s.clone();
    for stage in [ModeClass::Annihilation, ModeClass::Diagonal, ModeClass::Creation] {
        for (((f, _), n), c) in term.factors.iter().zip(modes).zip(&classes) {
            if *c == stage {
                state = apply_mode(*f, *n, &state, p);
                if state.is_zero() {
                    return state;
                }
            }
        }
    }
    state.scale(&term.coeff.scale_int(weight))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermVerdict {
    pub term: String,
    pub creation_ranges: Vec<String>,
    pub finite: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FinitenessVerdict {
    pub label: String,
    pub r: u8,
    pub variant: HeisVariant,
    pub finite: bool,
    pub terms: Vec<TermVerdict>,
}

impl FinitenessVerdict {
    pub fn witness(&self) -> Option<&str> {
        self.terms.iter().find_map(|t| t.witness.as_deref())
    }
}

/// A monomial has finitely many contributing index tuples for every state
/// and every target mode unless two distinct factors can create without
/// bound in opposite directions.
pub fn analyze_terms<S: Scalar>(label: &str, terms: &[NormTerm<S>], r: u8, variant: HeisVariant) -> FinitenessVerdict {
    let mut out = Vec::new();
    for t in terms {
        let ranges: Vec<CreationRange> = t.factors.iter().map(|(f, _)| creation_range(*f, r, variant)).collect();
        let mut witness = None;
        'search: for (i, ri) in ranges.iter().enumerate() {
            for (j, rj) in ranges.iter().enumerate() {
                if i != j && ri.unbounded_above() && rj.unbounded_below() {
                    let (fi, fj) = (t.factors[i].0, t.factors[j].0);
                    witness = Some(format!(
                        "{}: {fi} creates on {} and {fj} creates on {}; modes (n, N - n) with n -> +∞ all act by multiplication",
                        t.label(),
                        ri.render(),
                        rj.render()
                    ));
                    break 'search;
                }
            }
        }
        out.push(TermVerdict {
            term: t.label(),
            creation_ranges: ranges.iter().map(|r| r.render()).collect(),
            finite: witness.is_none(),
            witness,
        });
    }
    FinitenessVerdict {
        label: label.to_string(),
        r,
        variant,
        finite: out.iter().all(|t| t.finite),
        terms: out,
    }
}

pub fn analyze_finiteness<S: Scalar>(expr: &FieldExpr<S>, params: &ModuleParams<S>) -> FinitenessVerdict {
    analyze_terms(&expr.to_string(), &expr.lower(), params.r, params.variant)
}

/// Sums `term_k` over the contributing index tuples, enumerated from the
/// state's annihilator candidates with the creation modes solved for.
fn term_apply<S: Scalar>(term: &NormTerm<S>, k: i64, s: &FockState<S>, p: &ModuleParams<S>) -> FockState<S> {
    let total = term.mode_total(k);
    let vars = s.variables();
    let finite: Vec<Vec<i64>> = term.factors.iter().map(|(f, _)| finite_candidates(*f, &vars, p).into_iter().collect()).collect();
    let ranges: Vec<CreationRange> = term.factors.iter().map(|(f, _)| creation_range(*f, p.r, p.variant)).collect();
    let mut out = FockState::zero();
    let mut modes = vec![0i64; term.factors.len()];
    let mut creators = Vec::new();
    choose_finite(term, s, p, &finite, &ranges, 0, total, &mut modes, &mut creators, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn choose_finite<S: Scalar>(
    term: &NormTerm<S>,
    s: &FockState<S>,
    p: &ModuleParams<S>,
    finite: &[Vec<i64>],
    ranges: &[CreationRange],
    i: usize,
    remaining: i64,
    modes: &mut Vec<i64>,
    creators: &mut Vec<usize>,
    out: &mut FockState<S>,
) {
    if i == modes.len() {
        fill_creators(term, s, p, ranges, creators, 0, remaining, modes, out);
        return;
    }
    for &n in &finite[i] {
        modes[i] = n;
        choose_finite(term, s, p, finite, ranges, i + 1, remaining - n, modes, creators, out);
    }
    if ranges[i] != CreationRange::Empty {
        creators.push(i);
        choose_finite(term, s, p, finite, ranges, i + 1, remaining, modes, creators, out);
        creators.pop();
    }
}

#[allow(clippy::too_many_arguments)]
fn fill_creators<S: Scalar>(
    term: &NormTerm<S>,
    s: &FockState<S>,
    p: &ModuleParams<S>,
    ranges: &[CreationRange],
    creators: &[usize],
    j: usize,
    remaining: i64,
    modes: &mut Vec<i64>,
    out: &mut FockState<S>,
) {
    if j + 1 >= creators.len() {
        if let Some(&last) = creators.get(j) {
            if !in_range(remaining, ranges[last]) {
                return;
            }
            modes[last] = remaining;
        } else if remaining != 0 {
            return;
        }
        *out += &apply_tuple(term, modes, s, p);
        return;
    }
    let rest = &creators[j + 1..];
    let idx = creators[j];
    let CreationRange::Interval { lo, hi } = ranges[idx] else { return };
    let rest_hi: Option<i64> = rest.iter().map(|&r| bound(ranges[r], true)).sum();
    let rest_lo: Option<i64> = rest.iter().map(|&r| bound(ranges[r], false)).sum();
    let lower = max_opt(lo, rest_hi.map(|h| remaining - h));
    let upper = min_opt(hi, rest_lo.map(|l| remaining - l));
    let (Some(lower), Some(upper)) = (lower, upper) else {
        panic!("infinite creation family in {}", term.label());
    };
    for n in lower..=upper {
        modes[idx] = n;
        fill_creators(term, s, p, ranges, creators, j + 1, remaining - n, modes, out);
    }
}

fn bound(r: CreationRange, upper: bool) -> Option<i64> {
    match r {
        CreationRange::Empty => None,
        CreationRange::Interval { lo, hi } => {
            if upper {
                hi
            } else {
                lo
            }
        }
    }
}

fn max_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Mode `k` (coefficient of `z^{-k-1}`) of a lowered expression applied to `s`.
pub fn terms_apply<S: Scalar>(
    label: &str,
    terms: &[NormTerm<S>],
    k: i64,
    s: &FockState<S>,
    p: &ModuleParams<S>,
) -> Result<FockState<S>> {
    let verdict = analyze_terms(label, terms, p.r, p.variant);
    if !verdict.finite {
        return Err(Error::InfiniteModeSum(verdict.witness().unwrap_or_default().to_string()));
    }
    let mut out = FockState::zero();
    for t in terms {
        out += &term_apply(t, k, s, p);
    }
    Ok(out)
}

pub fn mode_apply<S: Scalar>(expr: &FieldExpr<S>, k: i64, s: &FockState<S>, p: &ModuleParams<S>) -> Result<FockState<S>> {
    terms_apply(&expr.to_string(), &expr.lower(), k, s, p)
}

/// Box bound for [`naive_mode_apply`] large enough to contain every
/// contributing tuple of a finite expression.
pub fn naive_window<S: Scalar>(terms: &[NormTerm<S>], k: i64, s: &FockState<S>) -> i64 {
    let shift = terms.iter().map(|t| t.shift.abs()).max().unwrap_or(0);
    let arity = terms.iter().map(|t| t.factors.len() as i64).max().unwrap_or(1);
    k.abs() + shift + 4 + arity * (s.index_span() + 3)
}

/// Sums over every index tuple in `[-window, window]^r` with the right
/// total, without any pruning.
pub fn naive_mode_apply<S: Scalar>(
    terms: &[NormTerm<S>],
    k: i64,
    s: &FockState<S>,
    p: &ModuleParams<S>,
    window: i64,
) -> FockState<S> {
    let mut out = FockState::zero();
    for t in terms {
        let total = t.mode_total(k);
        let r = t.factors.len();
        let mut modes = vec![-window; r];
        if r == 0 {
            continue;
        }
        loop {
            let partial: i64 = modes[..r - 1].iter().sum();
            let last = total - partial;
            if last.abs() <= window {
                modes[r - 1] = last;
                out += &apply_tuple(t, &modes, s, p);
            }
            let mut i = 0;
            while i + 1 < r {
                modes[i] += 1;
                if modes[i] <= window {
                    break;
                }
                modes[i] = -window;
                i += 1;
            }
            if i + 1 >= r {
                break;
            }
        }
    }
    out
}

/// `θ` with its images lowered once.
#[derive(Debug, Clone)]
pub struct Realization<S: Scalar> {
    pub params: ModuleParams<S>,
    terms: BTreeMap<ThetaGen, Vec<NormTerm<S>>>,
}

impl<S: Scalar> Realization<S> {
    pub fn new(params: ModuleParams<S>) -> Self {
        let terms = ThetaGen::ALL.into_iter().map(|g| (g, build_theta(g, &params.chi0).lower())).collect();
        Realization { params, terms }
    }

    pub fn terms(&self, g: ThetaGen) -> &[NormTerm<S>] {
        &self.terms[&g]
    }

    pub fn finiteness(&self, g: ThetaGen) -> FinitenessVerdict {
        analyze_terms(&format!("θ({g})"), self.terms(g), self.params.r, self.params.variant)
    }

    pub fn apply(&self, g: ThetaGen, k: i64, s: &FockState<S>) -> Result<FockState<S>> {
        terms_apply(&format!("θ({g})"), self.terms(g), k, s, &self.params)
    }

    /// `θ` of a loop-algebra element's body.
    pub fn apply_lie(&self, b: LieBasis, s: &FockState<S>) -> Result<FockState<S>> {
        let (g, k) = theta_gen_of(b);
        self.apply(g, k, s)
    }
}

pub fn lie_basis_of(g: ThetaGen, m: i64) -> LieBasis {
    match g {
        ThetaGen::E => LieBasis::t(Sl2::E, m),
        ThetaGen::F => LieBasis::t(Sl2::F, m),
        ThetaGen::H => LieBasis::t(Sl2::H, m),
        ThetaGen::E1 => LieBasis::tu(Sl2::E, m),
        ThetaGen::F1 => LieBasis::tu(Sl2::F, m),
        ThetaGen::H1 => LieBasis::tu(Sl2::H, m),
    }
}

pub fn theta_gen_of(b: LieBasis) -> (ThetaGen, i64) {
    let RingMonomial { n, sector } = b.mono;
    let g = match (b.x, sector) {
        (Sl2::E, Sector::Plain) => ThetaGen::E,
        (Sl2::F, Sector::Plain) => ThetaGen::F,
        (Sl2::H, Sector::Plain) => ThetaGen::H,
        (Sl2::E, Sector::U) => ThetaGen::E1,
        (Sl2::F, Sector::U) => ThetaGen::F1,
        (Sl2::H, Sector::U) => ThetaGen::H1,
    };
    (g, n)
}

/// One measured central scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurement<S: Scalar> {
    pub x: ThetaGen,
    pub y: ThetaGen,
    pub m: i64,
    pub n: i64,
    pub scalar: CoeffPoly<S>,
    pub center: DifferentialClass<S>,
}

impl<S: Scalar> Measurement<S> {
    pub fn label(&self) -> String {
        format!("[{}_{}, {}_{}]", self.x, self.m, self.y, self.n)
    }
}

#[derive(Debug, Clone)]
pub struct RelationReport<S: Scalar> {
    pub check: Check,
    pub measurements: Vec<Measurement<S>>,
}

/// Residual `[θ(X_m), θ(Y_n)] s - θ([X_m, Y_n]_body) s` on every state;
/// it must be a common scalar multiple of `s`, which is recorded.
pub fn relation_check<S: Scalar>(
    theta: &Realization<S>,
    x: ThetaGen,
    y: ThetaGen,
    window: i64,
    states: &[FockState<S>],
) -> RelationReport<S> {
    let cases: Vec<(i64, i64)> = (-window..=window).flat_map(|m| (-window..=window).map(move |n| (m, n))).collect();
    let results: Vec<(Option<CaseRecord>, Option<Measurement<S>>)> = cases
        .par_iter()
        .map(|&(m, n)| relation_case(theta, x, y, m, n, states))
        .collect();
    let mut check = Check::new(format!("θ relation [{x}, {y}]"), true);
    let mut measurements = Vec::new();
    for (rec, meas) in results {
        match rec {
            Some(r) => check.record(r),
            None => check.ok(),
        }
        measurements.extend(meas);
    }
    RelationReport { check, measurements }
}

fn relation_case<S: Scalar>(
    theta: &Realization<S>,
    x: ThetaGen,
    y: ThetaGen,
    m: i64,
    n: i64,
    states: &[FockState<S>],
) -> (Option<CaseRecord>, Option<Measurement<S>>) {
    let label = format!("[{x}_{m}, {y}_{n}]");
    let br = bracket_basis::<S>(lie_basis_of(x, m), lie_basis_of(y, n), ConstantsSource::Oracle);
    let mut scalar: Option<CoeffPoly<S>> = None;
    for (i, s) in states.iter().enumerate() {
        let residual = (|| -> Result<FockState<S>> {
            let xy = theta.apply(x, m, &theta.apply(y, n, s)?)?;
            let yx = theta.apply(y, n, &theta.apply(x, m, s)?)?;
            let mut res = &xy - &yx;
            for (b, c) in br.body() {
                res = &res - &theta.apply_lie(*b, s)?.scale(c);
            }
            Ok(res)
        })();
        let residual = match residual {
            Ok(r) => r,
            Err(e) => return (Some(CaseRecord::new(label, "finite mode sums", e.to_string(), Verdict::Fail)), None),
        };
        match residual.ratio_to(s) {
            Some(c) => match &scalar {
                None => scalar = Some(c),
                Some(prev) if *prev == c => {}
                Some(prev) => {
                    let rec = CaseRecord::new(
                        format!("{label} on state #{i} = {s}"),
                        format!("({prev}) times the state"),
                        format!("({c}) times the state"),
                        Verdict::Fail,
                    );
                    return (Some(rec), None);
                }
            },
            None => {
                let rec = CaseRecord::new(
                    format!("{label} on state #{i} = {s}"),
                    "a scalar multiple of the state",
                    residual.to_string(),
                    Verdict::Fail,
                );
                return (Some(rec), None);
            }
        }
    }
    let meas = Measurement {
        x,
        y,
        m,
        n,
        scalar: scalar.unwrap_or_default(),
        center: br.center.clone(),
    };
    (None, Some(meas))
}

/// The 21 unordered generator pairs.
pub fn generator_pairs() -> Vec<(ThetaGen, ThetaGen)> {
    let gens = ThetaGen::ALL;
    let mut out = Vec::new();
    for i in 0..gens.len() {
        for j in i..gens.len() {
            out.push((gens[i], gens[j]));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assignment {
    pub w0: Option<String>,
    pub wplus: Option<String>,
    pub wminus: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Conflict {
    pub first: String,
    pub first_implies: String,
    pub second: String,
    pub second_implies: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CalibrationReport {
    pub r: u8,
    pub variant: HeisVariant,
    pub split_level: bool,
    pub equations: usize,
    pub consistent: bool,
    pub assignment: Assignment,
    /// A smallest inconsistent set: two relations implying different images.
    pub conflicts: Vec<Conflict>,
    pub notes: Vec<String>,
}

/// Quotient `num / den` when `den` is a single term dividing `num`.
fn exact_div<S: Scalar>(num: &CoeffPoly<S>, den: &CoeffPoly<S>) -> Option<CoeffPoly<S>> {
    let mut dt = den.terms();
    let (de, dc) = dt.next()?;
    if dt.next().is_some() || dc.is_zero() {
        return None;
    }
    let mut out = CoeffPoly::zero();
    for (e, c) in num.terms() {
        let mut q = *e;
        for (qi, di) in q.iter_mut().zip(de.iter()) {
            *qi = qi.checked_sub(*di)?;
        }
        out += &CoeffPoly::monomial(q, c.clone() / dc.clone());
    }
    Some(out)
}

/// Solves `c0 W0 + c+ W+ + c- W- = measured` for the images `c0, c±` of
/// `w0, w±`, across all measurements simultaneously.
pub fn calibrate_center<S: Scalar>(
    r: u8,
    variant: HeisVariant,
    split_level: bool,
    measurements: &[Measurement<S>],
) -> CalibrationReport {
    let coords = |m: &Measurement<S>| [m.center.c0.clone(), m.center.cplus.clone(), m.center.cminus.clone()];
    let mut values: [Option<(CoeffPoly<S>, String)>; 3] = [None, None, None];
    let mut conflicts = Vec::new();
    let mut seen = BTreeSet::new();
    for meas in measurements {
        let w = coords(meas);
        let nonzero: Vec<usize> = (0..3).filter(|&i| !w[i].is_zero()).collect();
        if let [u] = nonzero.as_slice() {
            let Some(v) = exact_div(&meas.scalar, &w[*u]) else { continue };
            match &values[*u] {
                None => values[*u] = Some((v, meas.label())),
                Some((prev, who)) if *prev != v => {
                    if seen.insert((meas.x, meas.y)) {
                        conflicts.push(Conflict {
                            first: who.clone(),
                            first_implies: format!("{} -> {prev}", ["w0", "w+", "w-"][*u]),
                            second: meas.label(),
                            second_implies: format!("{} -> {v}", ["w0", "w+", "w-"][*u]),
                        });
                    }
                }
                _ => {}
            }
        }
    }
    let mut notes = Vec::new();
    if conflicts.is_empty() {
        for meas in measurements {
            let w = coords(meas);
            let mut predicted = CoeffPoly::<S>::zero();
            let mut known = true;
            for i in 0..3 {
                if w[i].is_zero() {
                    continue;
                }
                match &values[i] {
                    Some((v, _)) => predicted += &(v * &w[i]),
                    None => known = false,
                }
            }
            if !known {
                if meas.scalar.is_zero() {
                    continue;
                }
                notes.push(format!("{} involves an undetermined image", meas.label()));
                continue;
            }
            if predicted != meas.scalar {
                conflicts.push(Conflict {
                    first: "fitted images".into(),
                    first_implies: format!("{} = {predicted}", meas.label()),
                    second: meas.label(),
                    second_implies: format!("measured {}", meas.scalar),
                });
                break;
            }
        }
    }
    let render = |v: &Option<(CoeffPoly<S>, String)>| v.as_ref().map(|(p, _)| p.to_string());
    CalibrationReport {
        r,
        variant,
        split_level,
        equations: measurements.len(),
        consistent: conflicts.is_empty(),
        assignment: Assignment {
            w0: render(&values[0]),
            wplus: render(&values[1]),
            wminus: render(&values[2]),
        },
        conflicts,
        notes,
    }
}

/// Same-class soundness: two modes that are both creators or both
/// annihilators commute, so their order inside a monomial is immaterial.
pub fn same_class_commutation<S: Scalar>(params: &ModuleParams<S>, window: i64, states: &[FockState<S>]) -> Check {
    use Field::*;
    let fields = [Alpha, AlphaStar, Alpha1, Alpha1Star, Beta, Beta1];
    let mut check = Check::new(format!("same-class modes commute (r={}, {})", params.r, params.variant), true);
    for (i, f) in fields.iter().enumerate() {
        for g in &fields[i..] {
            if f.as_heis().is_some() && g.as_heis().is_some() {
                continue;
            }
            for m in -window..=window {
                for n in -window..=window {
                    let (cf, cg) = (field_class(*f, m, params), field_class(*g, n, params));
                    if cf != cg || cf == ModeClass::Diagonal {
                        continue;
                    }
                    for s in states {
                        let a = apply_mode(*f, m, &apply_mode(*g, n, s, params), params);
                        let b = apply_mode(*g, n, &apply_mode(*f, m, s, params), params);
                        if a == b {
                            check.ok();
                        } else {
                            check.record(CaseRecord::compare(format!("[{f}_{m}, {g}_{n}] on {s}"), "0", (&a - &b).to_string()));
                        }
                    }
                }
            }
        }
    }
    check
}

/// Degree of a monomial under the grading for which every creation or
/// annihilation mode `n` of `α, α1, α*, α1*, β` shifts degree by `n`.
fn degree<S: Scalar>(mono: &crate::fock::Monomial, p: &ModuleParams<S>) -> i64 {
    mono.iter()
        .map(|(v, e)| {
            let d = match *v {
                Var::X(j) | Var::X1(j) if p.r == 0 => -j.abs(),
                Var::X(j) | Var::X1(j) => j,
                Var::Y(j) if p.variant == HeisVariant::Original => -j,
                Var::Y(j) => j,
                Var::Y1(j) if p.variant == HeisVariant::SigmaTwistedB => -j - 2,
                Var::Y1(j) => j,
            };
            d * *e as i64
        })
        .sum()
}

/// Every output monomial of mode `k` of a monomial with total weight offset
/// `σ = 1 + shift - Σ(weight + derivatives)` shifts the degree by `k + σ`.
/// Terms containing `β1` only satisfy this up to an offset in `{0,1,2,3}`.
pub fn grading_check<S: Scalar>(theta: &Realization<S>, window: i64, states: &[FockState<S>]) -> Check {
    let p = &theta.params;
    let mut check = Check::new(format!("degree grading (r={}, {})", p.r, p.variant), true);
    for g in ThetaGen::ALL {
        for t in theta.terms(g) {
            let sigma = t.mode_total(0);
            let quasi = t.factors.iter().any(|(f, _)| *f == Field::Beta1);
            for k in -window..=window {
                for s in states {
                    let Ok(out) = terms_apply("", std::slice::from_ref(t), k, s, p) else { continue };
                    let ok = s.terms().count() != 1 || {
                        let (m_in, _, _) = s.terms().next().unwrap();
                        let base = degree(m_in, p);
                        out.terms().all(|(m_out, _, _)| {
                            let shift = degree(m_out, p) - base - k - sigma;
                            if quasi {
                                (0..=3).contains(&shift)
                            } else {
                                shift == 0
                            }
                        })
                    };
                    if ok {
                        check.ok();
                    } else {
                        check.record(CaseRecord::new(
                            format!("θ({g}) term {} mode {k} on {s}", t.label()),
                            format!("degree shift {k} + {sigma}"),
                            out.to_string(),
                            Verdict::Fail,
                        ));
                    }
                }
            }
        }
    }
    check
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Symbol;
    use crate::Rational;

    type F = FockState<Rational>;

    fn chi0() -> CoeffPoly<Rational> {
        CoeffPoly::symbol(Symbol::Chi0)
    }

    #[test]
    fn creation_ranges_match_classes() {
        for r in [0, 1] {
            for v in HeisVariant::ALL {
                let p = ModuleParams::<Rational>::new(r, v);
                for f in [Field::Alpha, Field::AlphaStar, Field::Alpha1, Field::Alpha1Star, Field::Beta, Field::Beta1] {
                    let range = creation_range(f, r, v);
                    for n in -20..=20 {
                        assert_eq!(field_class(f, n, &p) == ModeClass::Creation, in_range(n, range), "{f} {n} r={r} {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn f_mode_on_vacuum_r0() {
        let theta = Realization::new(ModuleParams::<Rational>::default_for(0));
        let got = theta.apply(ThetaGen::F, -1, &F::vacuum(0)).unwrap();
        assert_eq!(got, F::from_vars(&[Var::X(-1)], 0, CoeffPoly::int(-1)));
    }

    #[test]
    fn h0_on_vacuum_mixed() {
        let p = ModuleParams::<Rational>::default_for(0);
        let theta = Realization::new(p.clone());
        let got = theta.apply(ThetaGen::H, 0, &F::vacuum(0)).unwrap();
        assert_eq!(got, F::vacuum(0).scale(&p.lambda));
    }

    #[test]
    fn finiteness_witnesses() {
        for g in ThetaGen::ALL {
            let theta = Realization::new(ModuleParams::<Rational>::new(1, HeisVariant::Original));
            assert!(theta.finiteness(g).finite, "{g}");
        }
        let orig = Realization::new(ModuleParams::<Rational>::new(0, HeisVariant::Original));
        let v = orig.finiteness(ThetaGen::E);
        assert!(!v.finite);
        assert!(v.witness().unwrap().contains("β"));
        let mixed = Realization::new(ModuleParams::<Rational>::new(0, HeisVariant::Mixed));
        for g in ThetaGen::ALL {
            assert!(mixed.finiteness(g).finite, "{g}");
        }
        let twisted = Realization::new(ModuleParams::<Rational>::new(0, HeisVariant::SigmaTwistedB));
        assert!(!twisted.finiteness(ThetaGen::E).finite);
    }

    #[test]
    fn infinite_sum_is_an_error() {
        let orig = Realization::new(ModuleParams::<Rational>::new(0, HeisVariant::Original));
        assert!(matches!(orig.apply(ThetaGen::E, 0, &F::vacuum(0)), Err(Error::InfiniteModeSum(_))));
    }

    #[test]
    fn engine_matches_naive_enumeration() {
        let s = {
            let mut s = F::from_vars(&[Var::X(-1), Var::X1(2)], 0, CoeffPoly::int(2));
            s += &F::from_vars(&[Var::X(1), Var::Y(-2), Var::Y1(-2)], 1, CoeffPoly::int(-1));
            s
        };
        for (r, v) in [(1, HeisVariant::Original), (0, HeisVariant::Mixed)] {
            let theta = Realization::new(ModuleParams::<Rational>::new(r, v));
            for g in ThetaGen::ALL {
                for k in -2..=2 {
                    let fast = theta.apply(g, k, &s).unwrap();
                    let w = naive_window(theta.terms(g), k, &s);
                    let slow = naive_mode_apply(theta.terms(g), k, &s, &theta.params, w);
                    assert_eq!(fast, slow, "r={r} {g}_{k}");
                }
            }
        }
    }

    #[test]
    fn f_modes_commute_with_f1_modes() {
        let theta = Realization::new(ModuleParams::<Rational>::new(1, HeisVariant::Original));
        let states = vec![F::vacuum(0), F::from_vars(&[Var::X(1)], 0, chi0())];
        let rep = relation_check(&theta, ThetaGen::F, ThetaGen::F1, 2, &states);
        assert!(rep.check.passed());
        assert!(rep.measurements.iter().all(|m| m.scalar.is_zero()));
    }
}
