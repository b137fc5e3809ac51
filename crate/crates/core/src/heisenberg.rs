//! The elliptic Heisenberg module `M = C[y_{-n}, y1_{-m}] ⊗ V` and its
//! twisted variants.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fock::{FockState, Var};
use crate::poly::{CoeffPoly, Symbol};
use crate::pollaczek::pollaczek_pq;
use crate::report::{CaseRecord, Check};
use crate::scalar::Scalar;

/// Which module the Heisenberg currents act on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HeisVariant {
    /// The operators as listed, `b_n -> rho(b_n)`, `b1_n -> rho(b1_n)`.
    Original,
    /// Both sectors pulled back along `-sigma`:
    /// `b_n -> rho(b_{-n})`, `b1_n -> rho(b1_{-n-2})`.
    SigmaTwistedB,
    /// `b` from the twisted module, `b1` from the original one.
    Mixed,
}

impl HeisVariant {
    pub const ALL: [HeisVariant; 3] = [HeisVariant::Original, HeisVariant::SigmaTwistedB, HeisVariant::Mixed];

    pub fn name(self) -> &'static str {
        match self {
            HeisVariant::Original => "original",
            HeisVariant::SigmaTwistedB => "sigma_twisted_b",
            HeisVariant::Mixed => "mixed",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.name() == s)
    }

    fn twists_b(self) -> bool {
        !matches!(self, HeisVariant::Original)
    }

    fn twists_b1(self) -> bool {
        matches!(self, HeisVariant::SigmaTwistedB)
    }

    /// Mode of the untwisted operator that realizes mode `m` of `gen`.
    pub fn source_mode(self, gen: HeisGen, m: i64) -> i64 {
        match gen {
            HeisGen::B if self.twists_b() => -m,
            HeisGen::B1 if self.twists_b1() => -m - 2,
            _ => m,
        }
    }

    /// Sign of the level seen by each sector: `(b, b1)`.
    pub fn level_signs(self) -> (i64, i64) {
        (
            if self.twists_b() { -1 } else { 1 },
            if self.twists_b1() { -1 } else { 1 },
        )
    }
}

impl fmt::Display for HeisVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HeisGen {
    B,
    B1,
    One0,
    OnePlus,
    OneMinus,
}

impl fmt::Display for HeisGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HeisGen::B => "b",
            HeisGen::B1 => "b1",
            HeisGen::One0 => "1_0",
            HeisGen::OnePlus => "1_+",
            HeisGen::OneMinus => "1_-",
        })
    }
}

/// A 2×2 matrix on `V`; `m[i][j]` is the `v_i` coefficient of the image of `v_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VEndo<S: Scalar> {
    pub m: [[CoeffPoly<S>; 2]; 2],
}

impl<S: Scalar> VEndo<S> {
    /// `B1_{-1}`: `v0 -> mu v0 + nu v1`, `v1 -> kappa v0 + mu v1`.
    pub fn b1_minus_one(mu: &CoeffPoly<S>, nu: &CoeffPoly<S>, kappa: &CoeffPoly<S>) -> Self {
        VEndo {
            m: [[mu.clone(), kappa.clone()], [nu.clone(), mu.clone()]],
        }
    }

    pub fn det(&self) -> CoeffPoly<S> {
        &(&self.m[0][0] * &self.m[1][1]) - &(&self.m[0][1] * &self.m[1][0])
    }

    pub fn apply(&self, s: &FockState<S>) -> FockState<S> {
        s.apply_v(&self.m)
    }
}

/// Parameters of the module and of the oscillator representation it is
/// paired with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleParams<S: Scalar> {
    pub r: u8,
    pub variant: HeisVariant,
    /// Coefficient of the `∂ a*` terms in the realization.
    pub chi0: CoeffPoly<S>,
    /// Level of the Heisenberg module. Equal to `chi0` unless split.
    pub level: CoeffPoly<S>,
    pub lambda: CoeffPoly<S>,
    pub mu: CoeffPoly<S>,
    pub nu: CoeffPoly<S>,
    pub kappa: CoeffPoly<S>,
}

impl<S: Scalar> ModuleParams<S> {
    /// Symbolic `chi0`, `lambda`; `mu = 1/3`, `nu = 2`, `kappa = -1/2`.
    pub fn new(r: u8, variant: HeisVariant) -> Self {
        let chi0 = CoeffPoly::symbol(Symbol::Chi0);
        ModuleParams {
            r,
            variant,
            level: chi0.clone(),
            chi0,
            lambda: CoeffPoly::symbol(Symbol::Lambda),
            mu: CoeffPoly::ratio(1, 3),
            nu: CoeffPoly::int(2),
            kappa: CoeffPoly::ratio(-1, 2),
        }
    }

    /// Default variant for `r`: `mixed` for `r = 0`, `original` for `r = 1`.
    pub fn default_for(r: u8) -> Self {
        let variant = if r == 0 { HeisVariant::Mixed } else { HeisVariant::Original };
        Self::new(r, variant)
    }

    pub fn symbolic_v(mut self) -> Self {
        self.mu = CoeffPoly::symbol(Symbol::Mu);
        self.nu = CoeffPoly::symbol(Symbol::Nu);
        self.kappa = CoeffPoly::symbol(Symbol::Kappa);
        self
    }

    /// Gives the Heisenberg module its own level symbol `ell`.
    pub fn split_level(mut self) -> Self {
        self.level = CoeffPoly::symbol(Symbol::Ell);
        self
    }

    /// `chi0 = lambda = 0` and `B1_{-1} = 0`.
    pub fn quotient(mut self) -> Self {
        let z = CoeffPoly::zero();
        self.chi0 = z.clone();
        self.level = z.clone();
        self.lambda = z.clone();
        self.mu = z.clone();
        self.nu = z.clone();
        self.kappa = z;
        self
    }

    pub fn b1_endo(&self) -> VEndo<S> {
        VEndo::b1_minus_one(&self.mu, &self.nu, &self.kappa)
    }
}

/// Creation/annihilation type of a single mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeClass {
    /// Pure multiplication; nonzero on every state.
    Creation,
    /// Pure differentiation; zero on the vacuum.
    Annihilation,
    /// A scalar or a mixture; a single mode, so never part of an infinite family.
    Diagonal,
}

/// Classification of the untwisted operator `rho(gen_m)`.
fn untwisted_class(gen: HeisGen, m: i64) -> ModeClass {
    match gen {
        HeisGen::B if m > 0 => ModeClass::Creation,
        HeisGen::B if m < 0 => ModeClass::Annihilation,
        HeisGen::B1 if m <= -2 => ModeClass::Creation,
        HeisGen::B1 if m >= 0 => ModeClass::Annihilation,
        _ => ModeClass::Diagonal,
    }
}

pub fn heis_mode_class(variant: HeisVariant, gen: HeisGen, m: i64) -> ModeClass {
    untwisted_class(gen, variant.source_mode(gen, m))
}

/// Modes of `gen` acting as annihilators that can be nonzero on a state
/// containing `var`.
pub fn heis_annihilator_modes(variant: HeisVariant, gen: HeisGen, var: Var) -> Vec<i64> {
    let untwisted: Vec<i64> = match (gen, var) {
        (HeisGen::B, Var::Y(j)) => vec![j],
        (HeisGen::B1, Var::Y1(j)) => [-j - 1, -j - 2, -j - 3].into_iter().filter(|k| *k >= 0).collect(),
        _ => vec![],
    };
    untwisted
        .into_iter()
        .map(|k| match gen {
            HeisGen::B if variant.twists_b() => -k,
            HeisGen::B1 if variant.twists_b1() => -k - 2,
            _ => k,
        })
        .collect()
}

fn apply_untwisted<S: Scalar>(gen: HeisGen, m: i64, s: &FockState<S>, p: &ModuleParams<S>) -> FockState<S> {
    let level = &p.level;
    match gen {
        HeisGen::B if m > 0 => s.mul_var(Var::Y(-m)).scale_int(-1),
        HeisGen::B if m < 0 => s.diff_var(Var::Y(m)).scale(&level.scale_int(2 * m)),
        HeisGen::B => s.scale(&p.lambda),
        HeisGen::B1 if m <= -2 => s.mul_var(Var::Y1(m)),
        HeisGen::B1 if m == -1 => {
            let mut out = s.mul_var(Var::Y1(-1));
            out += &s.diff_var(Var::Y1(-2)).scale(&-level);
            out += &p.b1_endo().apply(s);
            out
        }
        HeisGen::B1 => {
            let k = m;
            let b = CoeffPoly::<S>::symbol(Symbol::B);
            let mut out = s.diff_var(Var::Y1(-k - 1)).scale_int(2 * k + 1);
            out += &s.diff_var(Var::Y1(-k - 2)).scale(&b.scale_int(-4 * (k + 1)));
            out += &s.diff_var(Var::Y1(-k - 3)).scale_int(2 * k + 3);
            out.scale(&-level)
        }
        HeisGen::One0 => s.scale(level),
        HeisGen::OnePlus | HeisGen::OneMinus => FockState::zero(),
    }
}

/// Applies `rho(gen_m)` for the chosen variant. Mode coverage is total for
/// every variant; the `Result` reports coverage gaps should a clause table
/// ever be narrowed.
pub fn heis_apply<S: Scalar>(gen: HeisGen, m: i64, s: &FockState<S>, params: &ModuleParams<S>) -> Result<FockState<S>> {
    Ok(apply_untwisted(gen, params.variant.source_mode(gen, m), s, params))
}

/// Central value of `[gen_m, gen'_n]` predicted by the defining relations,
/// with `1_0 -> level` and `1_± -> 0`, adjusted for twisted sectors.
pub fn expected_commutator<S: Scalar>(g: HeisGen, m: i64, h: HeisGen, n: i64, p: &ModuleParams<S>) -> CoeffPoly<S> {
    let (sb, sb1) = p.variant.level_signs();
    match (g, h) {
        (HeisGen::B, HeisGen::B) if m + n == 0 => p.level.scale_int(2 * n * sb),
        (HeisGen::B1, HeisGen::B1) => {
            let s = m + n + 2;
            let mut c = CoeffPoly::<S>::zero();
            if s == -1 || s == 1 {
                c += &CoeffPoly::int(n - m);
            }
            if s == 0 {
                c += &CoeffPoly::symbol(Symbol::B).scale_int(-2 * (n - m));
            }
            &c * &p.level.scale_int(sb1)
        }
        _ => CoeffPoly::zero(),
    }
}

/// `rho([g, h]) = [rho g, rho h]` on all generator pairs with modes in
/// `[-window, window]`, applied to each sample state.
pub fn heis_relation_check<S: Scalar>(window: i64, params: &ModuleParams<S>, states: &[FockState<S>]) -> Check {
    let gens = [HeisGen::B, HeisGen::B1];
    let mut check = Check::new(format!("Heisenberg relations ({})", params.variant), true);
    for g in gens {
        for h in gens {
            for m in -window..=window {
                for n in -window..=window {
                    let want_c = expected_commutator(g, m, h, n, params);
                    for (i, s) in states.iter().enumerate() {
                        let gh = apply_untwisted(h, params.variant.source_mode(h, n), s, params);
                        let gh = apply_untwisted(g, params.variant.source_mode(g, m), &gh, params);
                        let hg = apply_untwisted(g, params.variant.source_mode(g, m), s, params);
                        let hg = apply_untwisted(h, params.variant.source_mode(h, n), &hg, params);
                        let got = &gh - &hg;
                        let want = s.scale(&want_c);
                        if got == want {
                            check.ok();
                        } else {
                            check.record(CaseRecord::compare(
                                format!("[{g}_{m}, {h}_{n}] on state #{i} = {s}"),
                                want.to_string(),
                                got.to_string(),
                            ));
                        }
                    }
                }
            }
        }
    }
    check
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstraintRow {
    pub m: i64,
    pub n: i64,
    pub k: usize,
    /// Coefficients of `(chi_+, chi_-)`, the common factor `2n` removed.
    pub coeffs: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstraintVerdict {
    pub rows: Vec<ConstraintRow>,
    pub determinant: String,
    pub rank: usize,
    pub solution_dimension: usize,
    /// Basis of the solution space, as `(chi_+, chi_-)` pairs.
    pub solution_basis: Vec<[String; 2]>,
}

impl ConstraintVerdict {
    pub fn forces_zero(&self) -> bool {
        self.solution_dimension == 0
    }
}

/// Linear conditions on `(chi_+, chi_-)` from `[b1_m, b_n]` acting on `V`.
/// `pq` supplies `(p_k, q_k)`.
pub fn twodim_constraints_with<S: Scalar>(pq: impl Fn(usize) -> (CoeffPoly<S>, CoeffPoly<S>)) -> ConstraintVerdict {
    let pairs = [(0i64, 1i64), (0, 2), (1, 1), (1, 2)];
    let mut rows = Vec::new();
    let mut mat = Vec::new();
    for (m, n) in pairs {
        let k = (m + n + 1) as usize;
        let (p, q) = pq(k);
        rows.push(ConstraintRow {
            m,
            n,
            k,
            coeffs: [p.to_string(), q.to_string()],
        });
        mat.push((p, q));
    }
    let (p2, q2) = pq(2);
    let (p3, q3) = pq(3);
    let determinant = &(&p2 * &q3) - &(&p3 * &q2);
    let mut rank = 0;
    for i in 0..mat.len() {
        if !mat[i].0.is_zero() || !mat[i].1.is_zero() {
            rank = rank.max(1);
        }
        for j in i + 1..mat.len() {
            let minor = &(&mat[i].0 * &mat[j].1) - &(&mat[j].0 * &mat[i].1);
            if !minor.is_zero() {
                rank = 2;
            }
        }
    }
    let solution_basis = match rank {
        2 => vec![],
        1 => {
            let (p, q) = mat.iter().find(|(p, q)| !p.is_zero() || !q.is_zero()).unwrap();
            vec![[(-q).to_string(), p.to_string()]]
        }
        _ => vec![["1".into(), "0".into()], ["0".into(), "1".into()]],
    };
    ConstraintVerdict {
        rows,
        determinant: determinant.to_string(),
        rank,
        solution_dimension: 2 - rank,
        solution_basis,
    }
}

/// [`twodim_constraints_with`] using the Pollaczek recursion.
pub fn twodim_constraints<S: Scalar>() -> ConstraintVerdict {
    twodim_constraints_with(|k| {
        let pair = pollaczek_pq::<S>(k);
        (pair.p, pair.q)
    })
}

/// Control run with `p_k = q_k = 0` for `k >= 3`.
pub fn twodim_constraints_truncated<S: Scalar>() -> ConstraintVerdict {
    twodim_constraints_with(|k| {
        if k >= 3 {
            (CoeffPoly::zero(), CoeffPoly::zero())
        } else {
            let pair = pollaczek_pq::<S>(k);
            (pair.p, pair.q)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Poly, Rational};

    type F = FockState<Rational>;

    fn params(v: HeisVariant) -> ModuleParams<Rational> {
        ModuleParams::new(1, v)
    }

    fn chi0() -> Poly {
        Poly::symbol(Symbol::Chi0)
    }

    #[test]
    fn listed_examples() {
        let p = params(HeisVariant::Original);
        let vac = F::vacuum(0);
        assert_eq!(
            heis_apply(HeisGen::B, 3, &vac, &p).unwrap(),
            F::from_vars(&[Var::Y(-3)], 0, Poly::int(-1))
        );
        let s = F::from_vars(&[Var::Y(-2)], 0, Poly::one());
        assert_eq!(heis_apply(HeisGen::B, -2, &s, &p).unwrap(), vac.scale(&chi0().scale_int(-4)));
        let mut want = F::from_vars(&[Var::Y1(-1)], 0, Poly::one());
        want += &vac.scale(&p.mu);
        want += &F::vacuum(1).scale(&p.nu);
        assert_eq!(heis_apply(HeisGen::B1, -1, &vac, &p).unwrap(), want);
        let t = params(HeisVariant::SigmaTwistedB);
        assert_eq!(
            heis_apply(HeisGen::B, -3, &vac, &t).unwrap(),
            F::from_vars(&[Var::Y(-3)], 0, Poly::int(-1))
        );
    }

    #[test]
    fn commutator_examples() {
        let p = params(HeisVariant::Original);
        assert_eq!(expected_commutator(HeisGen::B, 1, HeisGen::B, -1, &p), chi0().scale_int(-2));
        assert_eq!(expected_commutator(HeisGen::B1, -1, HeisGen::B1, 0, &p), chi0());
    }

    #[test]
    fn relations_hold_for_every_variant() {
        let states = vec![
            F::vacuum(0),
            F::vacuum(1),
            F::from_vars(&[Var::Y(-1), Var::Y1(-2), Var::Y1(-3)], 0, Poly::int(2)),
            F::from_vars(&[Var::Y(-2), Var::Y(-2), Var::Y1(-1)], 1, Poly::int(-3)),
        ];
        for v in HeisVariant::ALL {
            let c = heis_relation_check(4, &params(v), &states);
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn twodim_constraints_force_zero() {
        let v = twodim_constraints::<Rational>();
        assert_eq!(v.determinant, "1/35");
        assert!(v.forces_zero());
        let control = twodim_constraints_truncated::<Rational>();
        assert_eq!(control.solution_dimension, 1);
    }

    #[test]
    fn irreducibility_probe() {
        let p = params(HeisVariant::Original).symbolic_v();
        let det = p.b1_endo().det();
        let mu2 = &p.mu * &p.mu;
        assert_eq!(&mu2 - &det, &p.kappa * &p.nu);
    }
}
