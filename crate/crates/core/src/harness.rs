//! Configuration, state sampling and orchestration of every verification
//! suite, with deterministic JSON reports.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{self, ConstantsSource};
use crate::error::{Error, Result};
use crate::fock::{FockState, Var};
use crate::heisenberg::{self, HeisVariant, ModuleParams};
use crate::jk::{self, TraceFunctional};
use crate::pollaczek::{self, numeric, CubicSign, GenFn, PollaczekParams};
use crate::poly::{CoeffPoly, Symbol};
use crate::realization::{self, Realization, ThetaGen};
use crate::report::{CaseRecord, Check, Verdict};
use crate::ring::RingMonomial;
use crate::scalar::{parse_rational, render_rational, Scalar};
use crate::{soundness, Rational};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

type Poly = CoeffPoly<Rational>;
type State = FockState<Rational>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Pollaczek,
    Cocycle,
    Jacobi,
    Grading,
    Borel,
    Heisenberg,
    Twodim,
    Realize,
    Calibrate,
    Jk,
    JkCompare,
    All,
}

impl Suite {
    pub const EACH: [Suite; 11] = [
        Suite::Pollaczek,
        Suite::Cocycle,
        Suite::Jacobi,
        Suite::Grading,
        Suite::Borel,
        Suite::Heisenberg,
        Suite::Twodim,
        Suite::Realize,
        Suite::Calibrate,
        Suite::Jk,
        Suite::JkCompare,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Pollaczek => "pollaczek",
            Suite::Cocycle => "cocycle",
            Suite::Jacobi => "jacobi",
            Suite::Grading => "grading",
            Suite::Borel => "borel",
            Suite::Heisenberg => "heisenberg",
            Suite::Twodim => "twodim",
            Suite::Realize => "realize",
            Suite::Calibrate => "calibrate",
            Suite::Jk => "jk",
            Suite::JkCompare => "jk-compare",
            Suite::All => "all",
        }
    }

    pub fn default_window(self) -> i64 {
        match self {
            Suite::Pollaczek => 12,
            Suite::Heisenberg => 8,
            Suite::Realize | Suite::Calibrate | Suite::Jk | Suite::JkCompare => 3,
            _ => 4,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite `{s}`")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HarnessConfig {
    /// Overrides every suite's default window when set.
    pub window: Option<i64>,
    pub windows: BTreeMap<Suite, i64>,
    pub degree: u32,
    pub index_window: i64,
    /// Random monomials per sample, on top of the two vacua.
    pub states: usize,
    pub r: u8,
    pub variant: Option<HeisVariant>,
    pub constants: ConstantsSource,
    pub bindings: BTreeMap<Symbol, Rational>,
    pub split_level: bool,
    pub phi: Option<TraceFunctional<Rational>>,
    pub seed: u64,
    /// Worker threads; does not influence any report.
    pub threads: Option<usize>,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            window: None,
            windows: BTreeMap::new(),
            degree: 2,
            index_window: 3,
            states: 6,
            r: 1,
            variant: None,
            constants: ConstantsSource::Oracle,
            bindings: BTreeMap::new(),
            split_level: false,
            phi: None,
            seed: 2008,
            threads: None,
        }
    }
}

fn parse_int<T: FromStr>(line: usize, key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Config {
        line,
        message: format!("`{key}` expects an integer, got `{v}`"),
    })
}

impl HarnessConfig {
    pub fn window_for(&self, suite: Suite) -> i64 {
        self.windows
            .get(&suite)
            .copied()
            .or(self.window)
            .unwrap_or_else(|| suite.default_window())
    }

    /// Reads `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = HarnessConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(Error::Config {
                    line,
                    message: format!("expected `key = value`, got `{content}`"),
                });
            };
            cfg.set(line, key.trim(), value.trim())?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn set(&mut self, line: usize, key: &str, value: &str) -> Result<()> {
        let err = |message: String| Error::Config { line, message };
        match key {
            "window" => self.window = Some(parse_int(line, key, value)?),
            "degree" => self.degree = parse_int(line, key, value)?,
            "index_window" => self.index_window = parse_int(line, key, value)?,
            "states" => self.states = parse_int(line, key, value)?,
            "seed" => self.seed = parse_int(line, key, value)?,
            "threads" => self.threads = Some(parse_int(line, key, value)?),
            "r" => {
                self.r = match value {
                    "0" => 0,
                    "1" => 1,
                    _ => return Err(err(format!("`r` must be 0 or 1, got `{value}`"))),
                }
            }
            "variant" => {
                self.variant =
                    Some(HeisVariant::from_name(value).ok_or_else(|| err(format!("unknown variant `{value}`")))?)
            }
            "constants" => {
                self.constants = match value {
                    "paper" => ConstantsSource::Paper,
                    "oracle" => ConstantsSource::Oracle,
                    _ => return Err(err(format!("`constants` must be paper or oracle, got `{value}`"))),
                }
            }
            "split_level" => {
                self.split_level = match value {
                    "true" | "1" | "yes" => true,
                    "false" | "0" | "no" => false,
                    _ => return Err(err(format!("`split_level` expects a boolean, got `{value}`"))),
                }
            }
            "phi" => self.phi = Some(TraceFunctional::from_json(value).map_err(|e| err(e.to_string()))?),
            _ => {
                if let Some(suite) = key.strip_prefix("window.") {
                    let suite: Suite = suite.parse().map_err(|e: Error| err(e.to_string()))?;
                    self.windows.insert(suite, parse_int(line, key, value)?);
                } else if let Some(sym) = key.strip_prefix("bind.") {
                    let sym = Symbol::from_name(sym).map_err(|e| err(e.to_string()))?;
                    if sym == Symbol::B {
                        return Err(err("the curve modulus b is always symbolic".into()));
                    }
                    let v = parse_rational(value).map_err(|e| err(e.to_string()))?;
                    self.bindings.insert(sym, v);
                } else {
                    return Err(err(format!("unknown key `{key}`")));
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config { line: 0, message: m.to_string() });
        if self.window.is_some_and(|w| w < 1) || self.windows.values().any(|w| *w < 1) {
            return bad("windows must be at least 1");
        }
        if self.degree < 1 || self.index_window < 1 {
            return bad("degree and index_window must be at least 1");
        }
        if self.threads == Some(0) {
            return bad("threads must be at least 1");
        }
        Ok(())
    }

    pub fn variant_for(&self, suite: Suite) -> HeisVariant {
        self.variant.unwrap_or(match suite {
            Suite::Heisenberg => HeisVariant::Original,
            _ if self.r == 0 => HeisVariant::Mixed,
            _ => HeisVariant::Original,
        })
    }

    pub fn module_params(&self, suite: Suite) -> ModuleParams<Rational> {
        let mut p = ModuleParams::new(self.r, self.variant_for(suite));
        if self.split_level {
            p = p.split_level();
        }
        for (sym, v) in &self.bindings {
            let c = Poly::constant(v.clone());
            match sym {
                Symbol::Chi0 => {
                    if !self.split_level {
                        p.level = c.clone();
                    }
                    p.chi0 = c;
                }
                Symbol::Ell => p.level = c,
                Symbol::Lambda => p.lambda = c,
                Symbol::Mu => p.mu = c,
                Symbol::Nu => p.nu = c,
                Symbol::Kappa => p.kappa = c,
                Symbol::B => {}
            }
        }
        p
    }

    fn echo(&self) -> Value {
        let windows: BTreeMap<&str, i64> = Suite::EACH.iter().map(|s| (s.name(), self.window_for(*s))).collect();
        let bindings: BTreeMap<&str, String> =
            self.bindings.iter().map(|(k, v)| (k.name(), render_rational(v))).collect();
        json!({
            "windows": windows,
            "degree": self.degree,
            "index_window": self.index_window,
            "states": self.states,
            "r": self.r,
            "variant": self.variant.map(|v| v.name()),
            "constants": self.constants,
            "bindings": bindings,
            "split_level": self.split_level,
            "phi": self.phi.as_ref().map(|p| p.to_string()),
            "seed": self.seed,
        })
    }
}

/// Which variables sampled states may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sectors {
    /// `x`, `x1`, `y`, `y1` and both `V` components.
    Full,
    /// `x`, `x1` only, `V` component 0.
    XOnly,
    /// At least one `y` or `y1` in every random monomial.
    YPositive,
}

/// Deterministic sample: `vacuum_0`, `vacuum_1` (or just `vacuum_0` for
/// x-only samples) followed by `count` random monomials with coefficients
/// in `{-3..3} \ {0}`.
pub fn sample_states(seed: u64, count: usize, degree: u32, index_window: i64, sectors: Sectors) -> Vec<State> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![State::vacuum(0)];
    if sectors != Sectors::XOnly {
        out.push(State::vacuum(1));
    }
    let w = index_window;
    let draw_x = |rng: &mut ChaCha8Rng| {
        let j = rng.gen_range(-w..=w);
        if rng.gen_bool(0.5) {
            Var::X(j)
        } else {
            Var::X1(j)
        }
    };
    let draw_y = |rng: &mut ChaCha8Rng| {
        let k = rng.gen_range(1..=w);
        if rng.gen_bool(0.5) {
            Var::Y(-k)
        } else {
            Var::Y1(-k)
        }
    };
    for _ in 0..count {
        let lo = if sectors == Sectors::YPositive { 1 } else { 0 };
        let d = rng.gen_range(lo..=degree);
        let mut vars = Vec::new();
        for i in 0..d {
            let v = match sectors {
                Sectors::XOnly => draw_x(&mut rng),
                Sectors::YPositive if i == 0 => draw_y(&mut rng),
                _ => {
                    if rng.gen_bool(0.5) {
                        draw_x(&mut rng)
                    } else {
                        draw_y(&mut rng)
                    }
                }
            };
            vars.push(v);
        }
        let v = if sectors == Sectors::XOnly { 0 } else { rng.gen_range(0..2u8) };
        let mut c = rng.gen_range(1..=3i64);
        if rng.gen_bool(0.5) {
            c = -c;
        }
        out.push(State::from_vars(&vars, v, Poly::int(c)));
    }
    out
}

/// A random finitely supported functional with three nonzero values.
pub fn sample_phi(seed: u64, window: i64) -> TraceFunctional<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_f00d);
    let mut phi = TraceFunctional::zero();
    for _ in 0..3 {
        let n = rng.gen_range(-window..=window);
        let m = if rng.gen_bool(0.5) { RingMonomial::t(n) } else { RingMonomial::tu(n) };
        let num = rng.gen_range(1..=5i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let den = rng.gen_range(1..=3i64);
        phi.set(m, Rational::ratio(num, den));
    }
    phi
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Section {
    pub suite: Suite,
    pub checks: Vec<Check>,
    /// Measurements and certificates of report-only analyses.
    pub data: BTreeMap<String, Value>,
}

impl Section {
    fn new(suite: Suite) -> Self {
        Section {
            suite,
            checks: Vec::new(),
            data: BTreeMap::new(),
        }
    }

    fn data(&mut self, key: &str, v: impl Serialize) {
        self.data.insert(key.to_string(), serde_json::to_value(v).expect("report data serializes"));
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub checks: usize,
    pub cases: usize,
    pub failures: usize,
    /// Asserted checks that failed.
    pub blocking: Vec<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub suite: Suite,
    pub config: Value,
    pub sections: Vec<Section>,
    pub summary: Summary,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// One machine-parsable line.
    pub fn summary_line(&self) -> String {
        let s = &self.summary;
        format!(
            "SUMMARY suite={} checks={} cases={} failures={} blocking={} status={}",
            self.suite,
            s.checks,
            s.cases,
            s.failures,
            s.blocking.len(),
            if s.passed { "PASS" } else { "FAIL" }
        )
    }

    pub fn exit_code(&self) -> i32 {
        if self.summary.passed {
            0
        } else {
            1
        }
    }
}

/// Runs a suite inside a thread pool of the configured width
/// (`ELLIPTICA_THREADS` wins over the config).
pub fn run_suite(suite: Suite, cfg: &HarnessConfig) -> Result<ReportDocument> {
    cfg.validate()?;
    let threads = std::env::var("ELLIPTICA_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|n| *n > 0)
        .or(cfg.threads);
    match threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
            pool.install(|| run_suite_here(suite, cfg))
        }
        None => run_suite_here(suite, cfg),
    }
}

fn run_suite_here(suite: Suite, cfg: &HarnessConfig) -> Result<ReportDocument> {
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let mut sections = Vec::new();
    for s in suites {
        sections.push(run_section(s, cfg)?);
    }
    let checks: Vec<&Check> = sections.iter().flat_map(|s| &s.checks).collect();
    let blocking: Vec<String> = sections
        .iter()
        .flat_map(|s| s.checks.iter().filter(|c| c.blocking()).map(move |c| format!("{}: {}", s.suite, c.name)))
        .collect();
    let summary = Summary {
        checks: checks.len(),
        cases: checks.iter().map(|c| c.cases).sum(),
        failures: checks.iter().map(|c| c.failures).sum(),
        passed: blocking.is_empty(),
        blocking,
    };
    Ok(ReportDocument {
        tool: "elliptica".into(),
        version: VERSION.into(),
        suite,
        config: cfg.echo(),
        sections,
        summary,
    })
}

fn run_section(suite: Suite, cfg: &HarnessConfig) -> Result<Section> {
    let w = cfg.window_for(suite);
    let mut sec = Section::new(suite);
    match suite {
        Suite::Pollaczek => pollaczek_suite(&mut sec, w),
        Suite::Cocycle => {
            sec.checks.push(soundness::confluence(w));
            sec.checks.push(soundness::leibniz(w));
            sec.checks.push(soundness::tau_negation(w));
            sec.checks.push(soundness::cocycle(w));
        }
        Suite::Jacobi => {
            sec.checks.push(algebra::skew_symmetry::<Rational>(w, ConstantsSource::Oracle));
            for source in [ConstantsSource::Oracle, ConstantsSource::Paper] {
                let rep = algebra::jacobi_check::<Rational>(w, source);
                let asserted = source == ConstantsSource::Oracle;
                let mut c = Check::new(format!("Jacobi identity ({source:?} constants)"), asserted);
                c.cases = rep.triples;
                c.failures = rep.failures;
                if let Some(f) = &rep.minimal_failure {
                    c.records.push(CaseRecord::new(
                        serde_json::to_string(f).expect("serializes"),
                        "0",
                        "nonzero residual",
                        if asserted { Verdict::Fail } else { Verdict::Info },
                    ));
                }
                sec.data(&format!("jacobi_{source:?}").to_lowercase(), &rep);
                sec.checks.push(c);
            }
        }
        Suite::Grading => {
            for source in [ConstantsSource::Oracle, ConstantsSource::Paper] {
                let mut c = algebra::grading_check::<Rational>(w, source);
                c.asserted = source == ConstantsSource::Oracle || cfg.constants == ConstantsSource::Paper;
                sec.checks.push(c);
            }
        }
        Suite::Borel => sec.checks.extend(algebra::borel_check::<Rational>(w, cfg.constants)),
        Suite::Heisenberg => {
            sec.checks.extend(algebra::heisenberg_relations::<Rational>(w.min(6)));
            let p = cfg.module_params(suite);
            let states = sample_states(cfg.seed, cfg.states, cfg.degree.max(3), cfg.index_window, Sectors::Full);
            sec.checks.push(heisenberg::heis_relation_check(w, &p, &states));
        }
        Suite::Twodim => {
            let v = heisenberg::twodim_constraints::<Rational>();
            let mut c = Check::new("two-dimensional constraints force chi+ = chi- = 0", true);
            c.record(CaseRecord::compare("p2 q3 - p3 q2", "1/35", v.determinant.clone()));
            c.record(CaseRecord::compare("solution dimension", "0", v.solution_dimension.to_string()));
            sec.checks.push(c);
            sec.data("constraints", &v);
            let control = heisenberg::twodim_constraints_truncated::<Rational>();
            let mut c = Check::new("control: p_k = q_k = 0 for k >= 3 leaves a line", true);
            c.record(CaseRecord::compare("solution dimension", "1", control.solution_dimension.to_string()));
            sec.checks.push(c);
            sec.data("control", &control);
        }
        Suite::Realize => realize_suite(&mut sec, cfg, w)?,
        Suite::Calibrate => calibrate_suite(&mut sec, cfg, w),
        Suite::Jk => {
            let states = sample_states(cfg.seed, cfg.states, cfg.degree, cfg.index_window, Sectors::XOnly);
            let random_phi = cfg.phi.clone().unwrap_or_else(|| sample_phi(cfg.seed, w));
            for (label, phi) in [("phi_zero", TraceFunctional::zero()), ("phi_sample", random_phi)] {
                let rep = jk::jk_variant_sweep(w, &phi, &states);
                let mut closes = Check::new(format!("some literal configuration closes ({phi})"), true);
                closes.record(CaseRecord::new(
                    "closing configurations",
                    "at least one",
                    rep.closing.join(" | "),
                    if rep.closing.is_empty() { Verdict::Fail } else { Verdict::Pass },
                ));
                sec.checks.push(rep.generic.clone());
                sec.checks.push(closes);
                for v in &rep.variants {
                    sec.checks.push(v.check.clone());
                }
                sec.data(label, json!({ "phi": rep.phi, "closing": rep.closing }));
            }
        }
        Suite::JkCompare => {
            let xs = sample_states(cfg.seed, cfg.states, cfg.degree, cfg.index_window, Sectors::XOnly);
            let ys = sample_states(cfg.seed.wrapping_add(1), cfg.states, cfg.degree, cfg.index_window, Sectors::YPositive);
            let ys: Vec<State> = ys.into_iter().filter(|s| !s.y_degree_zero().eq(s)).collect();
            let rep = jk::jk_compare(w, &xs, &ys)?;
            let mut c = Check::new("quotient matches Jakobsen–Kac up to a sign character", true);
            c.record(CaseRecord::new(
                "matching sign characters",
                "(e->-e, h->h, f->-f)",
                rep.matching.join(" | "),
                if rep.found { Verdict::Pass } else { Verdict::Fail },
            ));
            sec.checks.push(rep.quotient_invariance.clone());
            sec.checks.push(c);
            sec.data("comparison", &rep);
        }
        Suite::All => unreachable!("expanded by the caller"),
    }
    Ok(sec)
}

fn printed_pq(k: usize) -> (Poly, Poly) {
    let b = Poly::symbol(Symbol::B);
    let q = |n, d| Rational::ratio(n, d);
    match k {
        0 => (Poly::zero(), Poly::one()),
        1 => (Poly::one(), Poly::zero()),
        2 => ((&b - &Poly::one()).scale(&q(4, 5)), Poly::ratio(1, 5)),
        3 => (
            (&(&b.pow(2).scale_int(32) - &b.scale_int(48)) + &Poly::int(11)).scale(&q(1, 35)),
            (&b.scale_int(2) - &Poly::one()).scale(&q(4, 35)),
        ),
        _ => unreachable!(),
    }
}

fn pollaczek_suite(sec: &mut Section, w: i64) {
    let kmax = w.max(3) as usize;
    let mut printed = Check::new("recursion reproduces p0..p3, q0..q3", true);
    for k in 0..=3 {
        let pair = pollaczek::pollaczek_pq::<Rational>(k);
        let (p, q) = printed_pq(k);
        printed.record(CaseRecord::compare(format!("p_{k}"), p.to_string(), pair.p.to_string()));
        printed.record(CaseRecord::compare(format!("q_{k}"), q.to_string(), pair.q.to_string()));
    }
    sec.checks.push(printed);
    let seq = pollaczek::pollaczek_sequence(&PollaczekParams::<Rational>::printed(), kmax);
    sec.checks.push(Check::sweep("degree bounds", true, &seq, |pair| {
        (!pair.degree_bounds_hold())
            .then(|| CaseRecord::new(format!("k={}", pair.k), "deg p <= k-1, deg q <= k-2", format!("p={}, q={}", pair.p, pair.q), Verdict::Fail))
    }));
    let kahler = pollaczek::pollaczek_sequence(&PollaczekParams::<Rational>::kahler(), kmax);
    sec.checks.push(Check::sweep("beta = 0 recursion equals the differential reducer", true, &kahler, |pair| {
        let (op, oq) = pollaczek::oracle_pq::<Rational>(pair.k as i64);
        (pair.p != op || pair.q != oq).then(|| {
            CaseRecord::new(format!("k={}", pair.k), format!("({op}, {oq})"), format!("({}, {})", pair.p, pair.q), Verdict::Fail)
        })
    }));
    let sym = Check::sweep("reducer constants are symmetric in k", true, 0..=kmax as i64, |k| {
        let a = pollaczek::oracle_pq::<Rational>(k);
        let b = pollaczek::oracle_pq::<Rational>(-k);
        (a != b).then(|| CaseRecord::new(format!("k={k}"), format!("{a:?}"), format!("{b:?}"), Verdict::Fail))
    });
    sec.checks.push(sym);
    sec.data("crosscheck", pollaczek::crosscheck_oracle::<Rational>(kmax));

    let mut ode = BTreeMap::new();
    for (pname, params) in [("printed", PollaczekParams::<Rational>::printed()), ("beta0", PollaczekParams::kahler())] {
        for (cname, cubic) in [("printed_cubic", CubicSign::Printed), ("curve_cubic", CubicSign::Flipped)] {
            for which in [GenFn::P, GenFn::Q] {
                let r = pollaczek::gf_ode_residual(which, kmax.max(4), &params, cubic);
                let nonzero: BTreeMap<String, String> = r
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (format!("x^{i}"), c.to_string()))
                    .collect();
                ode.insert(format!("{which:?}/{pname}/{cname}"), json!({ "zero": nonzero.is_empty(), "nonzero": nonzero }));
            }
        }
    }
    sec.data("ode_residuals", ode);
    let spot: Vec<_> = [GenFn::P, GenFn::Q]
        .into_iter()
        .map(|which| {
            numeric::numeric_gf_spotcheck(
                which,
                &PollaczekParams::kahler(),
                &Rational::ratio(1, 10),
                &Rational::ratio(1, 3),
                40,
                1e-9,
            )
        })
        .collect();
    sec.data("numeric_spotcheck", spot);
}

/// Pairs whose relations are asserted at `r = 0` on the mixed module.
fn r0_asserted(x: ThetaGen, y: ThetaGen) -> bool {
    use ThetaGen::*;
    let nilpotent = |g: ThetaGen| matches!(g, F | F1) || matches!(g, E | E1);
    let same_side = matches!((x, y), (F | F1, F | F1) | (E | E1, E | E1));
    (nilpotent(x) && nilpotent(y) && same_side) || matches!((x, y), (F, H) | (H, F))
}

fn realize_suite(sec: &mut Section, cfg: &HarnessConfig, w: i64) -> Result<()> {
    let p = cfg.module_params(Suite::Realize);
    let theta = Realization::new(p.clone());
    let finiteness: Vec<_> = ThetaGen::ALL.iter().map(|g| theta.finiteness(*g)).collect();
    let all_finite = finiteness.iter().all(|v| v.finite);
    sec.data("finiteness", &finiteness);
    let states = sample_states(cfg.seed, cfg.states, cfg.degree, cfg.index_window, Sectors::Full);
    for (x, y) in realization::generator_pairs() {
        let mut c = realization::relation_check(&theta, x, y, w, &states).check;
        c.asserted = all_finite && (p.r == 1 || (p.variant == HeisVariant::Mixed && r0_asserted(x, y)));
        sec.checks.push(c);
    }
    let mut same = realization::same_class_commutation(&p, w + 2, &states);
    same.asserted = true;
    sec.checks.push(same);
    if all_finite {
        sec.checks.push(realization::grading_check(&theta, w, &states));
        sec.checks.push(engine_equivalence(cfg.seed, 60, &[p])?);
    }
    Ok(())
}

fn calibrate_suite(sec: &mut Section, cfg: &HarnessConfig, w: i64) {
    let states = sample_states(cfg.seed, cfg.states, cfg.degree, cfg.index_window, Sectors::Full);
    let mut reports = Vec::new();
    for split in [false, true] {
        let mut p = cfg.module_params(Suite::Calibrate);
        if split && !cfg.split_level {
            p = p.split_level();
        }
        let theta = Realization::new(p.clone());
        let mut measurements = Vec::new();
        let mut excluded = Vec::new();
        for (x, y) in realization::generator_pairs() {
            let rep = realization::relation_check(&theta, x, y, w, &states);
            if !rep.check.passed() {
                excluded.push(format!("[{x}, {y}]"));
            }
            measurements.extend(rep.measurements);
        }
        let mut cal = realization::calibrate_center(p.r, p.variant, split || cfg.split_level, &measurements);
        if !excluded.is_empty() {
            cal.notes.push(format!("pairs with non-scalar residuals contribute only their scalar cases: {}", excluded.join(", ")));
        }
        let mut c = Check::new(format!("central calibration (split level: {})", cal.split_level), false);
        c.info(CaseRecord::new(
            format!("r={}, {}", cal.r, cal.variant),
            "a consistent image of w0, w+, w-",
            if cal.consistent {
                format!("w0 -> {:?}, w+ -> {:?}, w- -> {:?}", cal.assignment.w0, cal.assignment.wplus, cal.assignment.wminus)
            } else {
                format!("{} conflicting pairs", cal.conflicts.len())
            },
            Verdict::Info,
        ));
        c.cases = cal.equations;
        sec.checks.push(c);
        reports.push(cal);
    }
    sec.data("calibration", reports);
}

/// `mode_apply` against the unpruned enumerator on random `(θ(g), k, s)`,
/// each also recomputed on a widened box.
pub fn engine_equivalence(seed: u64, cases: usize, params: &[ModuleParams<Rational>]) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xe9e9);
    let states = sample_states(seed.wrapping_add(7), 24, 2, 3, Sectors::Full);
    let thetas: Vec<Realization<Rational>> = params.iter().cloned().map(Realization::new).collect();
    let mut check = Check::new("mode engine equals unpruned enumeration", true);
    for _ in 0..cases {
        let theta = &thetas[rng.gen_range(0..thetas.len())];
        let g = ThetaGen::ALL[rng.gen_range(0..6)];
        let k = rng.gen_range(-3..=3);
        let s = &states[rng.gen_range(0..states.len())];
        let fast = theta.apply(g, k, s)?;
        let w = realization::naive_window(theta.terms(g), k, s);
        let slow = realization::naive_mode_apply(theta.terms(g), k, s, &theta.params, w);
        let wider = realization::naive_mode_apply(theta.terms(g), k, s, &theta.params, w + 3);
        let label = format!("θ({g})_{k} on {s} (r={}, {})", theta.params.r, theta.params.variant);
        if fast == slow && slow == wider {
            check.ok();
        } else {
            check.record(CaseRecord::new(label, slow.to_string(), fast.to_string(), Verdict::Fail));
        }
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic_and_bounded() {
        let a = sample_states(9, 12, 2, 3, Sectors::Full);
        let b = sample_states(9, 12, 2, 3, Sectors::Full);
        assert_eq!(a, b);
        assert_eq!(a.len(), 14);
        assert_eq!(a[0], State::vacuum(0));
        assert_eq!(a[1], State::vacuum(1));
        for s in &a {
            assert!(s.max_degree() <= 2);
            assert!(s.index_span() <= 3);
        }
        let one = sample_states(1, 1, 2, 3, Sectors::Full);
        assert_eq!(one.len(), 3);
    }

    #[test]
    fn x_only_samples_are_x_sector() {
        for s in sample_states(4, 20, 3, 2, Sectors::XOnly) {
            s.ensure_x_sector().unwrap();
        }
    }

    #[test]
    fn config_parse() {
        let cfg = HarnessConfig::parse("# comment\nwindow = 2\nwindow.jk = 1\nr = 0\nvariant = mixed\nbind.chi0 = 3/2\nseed=5\n").unwrap();
        assert_eq!(cfg.window_for(Suite::Jacobi), 2);
        assert_eq!(cfg.window_for(Suite::Jk), 1);
        assert_eq!(cfg.r, 0);
        assert_eq!(cfg.seed, 5);
        assert_eq!(cfg.module_params(Suite::Realize).chi0, Poly::ratio(3, 2));
    }

    #[test]
    fn config_errors_carry_lines() {
        let e = HarnessConfig::parse("seed = 1\nr = 2\n").unwrap_err();
        assert_eq!(e, Error::Config { line: 2, message: "`r` must be 0 or 1, got `2`".into() });
        assert!(matches!(HarnessConfig::parse("bogus = 1"), Err(Error::Config { line: 1, .. })));
        assert!(matches!(HarnessConfig::parse("\n\nnonsense"), Err(Error::Config { line: 3, .. })));
        assert!(matches!(HarnessConfig::parse("bind.zeta = 1"), Err(Error::Config { line: 1, .. })));
    }

    #[test]
    fn twodim_suite_reports_determinant() {
        let doc = run_suite(Suite::Twodim, &HarnessConfig::default()).unwrap();
        assert!(doc.summary.passed);
        assert!(doc.to_json().contains("1/35"));
        assert!(doc.summary_line().starts_with("SUMMARY suite=twodim"));
    }
}
