//! Classes of Kähler differentials modulo exact forms.
//!
//! `Omega^1_R / dR` is three dimensional with basis
//! `w0 = t^-1 dt`, `w+ = t^-1 u dt`, `w- = t^-2 u dt`. The reducer below
//! computes the class of `f dg` from nothing but exactness of `d(t^n)`,
//! `d(t^n u)` and the Kähler relation `2u du = (3t^2 - 4bt + 1) dt`; it never
//! looks at the Pollaczek recursion, so it can serve as an oracle for it.

use std::any::{Any, TypeId};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{CoeffPoly, Symbol};
use crate::ring::{curve_terms, RingElement, Sector};
use crate::scalar::Scalar;

/// Coordinates of a class on `(w0, w+, w-)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct DifferentialClass<S: Scalar> {
    pub c0: CoeffPoly<S>,
    pub cplus: CoeffPoly<S>,
    pub cminus: CoeffPoly<S>,
}

impl<S: Scalar> DifferentialClass<S> {
    pub fn zero() -> Self {
        DifferentialClass {
            c0: CoeffPoly::zero(),
            cplus: CoeffPoly::zero(),
            cminus: CoeffPoly::zero(),
        }
    }

    pub fn new(c0: CoeffPoly<S>, cplus: CoeffPoly<S>, cminus: CoeffPoly<S>) -> Self {
        DifferentialClass { c0, cplus, cminus }
    }

    pub fn w0() -> Self {
        Self::new(CoeffPoly::one(), CoeffPoly::zero(), CoeffPoly::zero())
    }

    pub fn wplus() -> Self {
        Self::new(CoeffPoly::zero(), CoeffPoly::one(), CoeffPoly::zero())
    }

    pub fn wminus() -> Self {
        Self::new(CoeffPoly::zero(), CoeffPoly::zero(), CoeffPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.cplus.is_zero() && self.cminus.is_zero()
    }

    pub fn scale(&self, c: &CoeffPoly<S>) -> Self {
        Self::new(&self.c0 * c, &self.cplus * c, &self.cminus * c)
    }

    /// Parity in the `Z/2` grading, `None` when the class mixes both.
    pub fn parity(&self) -> Option<u8> {
        let even = !self.c0.is_zero();
        let odd = !self.cplus.is_zero() || !self.cminus.is_zero();
        match (even, odd) {
            (true, true) => None,
            (false, true) => Some(1),
            _ => Some(0),
        }
    }
}

impl<S: Scalar> fmt::Display for DifferentialClass<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        write!(
            f,
            "({})*w0 + ({})*w+ + ({})*w-",
            self.c0, self.cplus, self.cminus
        )
    }
}

impl<S: Scalar> fmt::Debug for DifferentialClass<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DifferentialClass({self})")
    }
}

impl<S: Scalar> Add<&DifferentialClass<S>> for &DifferentialClass<S> {
    type Output = DifferentialClass<S>;
    fn add(self, rhs: &DifferentialClass<S>) -> DifferentialClass<S> {
        DifferentialClass::new(
            &self.c0 + &rhs.c0,
            &self.cplus + &rhs.cplus,
            &self.cminus + &rhs.cminus,
        )
    }
}

impl<S: Scalar> Sub<&DifferentialClass<S>> for &DifferentialClass<S> {
    type Output = DifferentialClass<S>;
    fn sub(self, rhs: &DifferentialClass<S>) -> DifferentialClass<S> {
        DifferentialClass::new(
            &self.c0 - &rhs.c0,
            &self.cplus - &rhs.cplus,
            &self.cminus - &rhs.cminus,
        )
    }
}

impl<S: Scalar> Neg for &DifferentialClass<S> {
    type Output = DifferentialClass<S>;
    fn neg(self) -> DifferentialClass<S> {
        DifferentialClass::new(-&self.c0, -&self.cplus, -&self.cminus)
    }
}

/// Elementary one-forms the reducer works with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Form {
    /// `t^n dt`
    TDt(i64),
    /// `t^n u dt`
    TUDt(i64),
    /// `t^n du`
    TDu(i64),
    /// `t^n u du`
    TUDu(i64),
    /// `t^n u^2 dt`
    TU2Dt(i64),
    /// `t^n u^2 du`
    TU2Du(i64),
}

/// Order in which pending forms are rewritten.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WorkOrder {
    Ascending,
    Descending,
    Shuffled(u64),
}

/// How `t^n u du` is eliminated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UduRule {
    /// `u du = (3t^2 - 4bt + 1) dt / 2`
    Kahler,
    /// `t^n u du = d(t^n u^2 / 2) - (n/2) t^(n-1) u^2 dt`
    Leibniz,
}

/// How the classes `a_n = [t^n u dt]` are pushed onto `w+`, `w-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassRule {
    /// Rewrite `a_n` one relation at a time inside the work list.
    Stepwise,
    /// Look `a_n` up in a table pre-filled over `[lo, hi]` (grown on demand).
    Table { lo: i64, hi: i64 },
    /// Use the process-wide memo behind [`u_class_coords`].
    Shared,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionStrategy {
    pub order: WorkOrder,
    pub udu: UduRule,
    pub classes: ClassRule,
}

impl Default for ReductionStrategy {
    fn default() -> Self {
        ReductionStrategy {
            order: WorkOrder::Ascending,
            udu: UduRule::Kahler,
            classes: ClassRule::Shared,
        }
    }
}

/// Rewrites `t^n u^2 du` through the curve and `t^n du` through exactness of
/// `d(t^n u)`, leaving only `t^k u dt` forms.
fn push_udt_rewrites<S: Scalar>(forms: &mut BTreeMap<Form, CoeffPoly<S>>) {
    loop {
        let next = forms
            .keys()
            .find(|f| matches!(f, Form::TU2Du(_) | Form::TDu(_)))
            .copied();
        let Some(form) = next else { break };
        let c = forms.remove(&form).unwrap();
        match form {
            Form::TU2Du(n) => {
                for (shift, k) in curve_terms::<S>() {
                    add_form(forms, Form::TDu(n + shift), &c * &k);
                }
            }
            Form::TDu(n) => add_form(forms, Form::TUDt(n - 1), c.scale_int(-n)),
            _ => unreachable!(),
        }
    }
}

fn add_form<S: Scalar>(forms: &mut BTreeMap<Form, CoeffPoly<S>>, f: Form, c: CoeffPoly<S>) {
    if c.is_zero() {
        return;
    }
    let e = forms.entry(f).or_default();
    *e += &c;
    if e.is_zero() {
        forms.remove(&f);
    }
}

/// The linear relation among `a_{m-1}, a_m, a_{m+1}` obtained by multiplying
/// `2u du - (3t^2 - 4bt + 1) dt = 0` with `t^(m-1) u`. Returned as
/// coefficients keyed by the class index.
pub fn kahler_relation<S: Scalar>(m: i64) -> BTreeMap<i64, CoeffPoly<S>> {
    let b = CoeffPoly::<S>::symbol(Symbol::B);
    let mut forms: BTreeMap<Form, CoeffPoly<S>> = BTreeMap::new();
    add_form(&mut forms, Form::TU2Du(m - 1), CoeffPoly::int(2));
    add_form(&mut forms, Form::TUDt(m + 1), CoeffPoly::int(-3));
    add_form(&mut forms, Form::TUDt(m), b.scale_int(4));
    add_form(&mut forms, Form::TUDt(m - 1), CoeffPoly::int(-1));
    push_udt_rewrites(&mut forms);
    forms
        .into_iter()
        .map(|(f, c)| match f {
            Form::TUDt(n) => (n, c),
            other => unreachable!("unexpected residual form {other:?}"),
        })
        .collect()
}

/// Expresses `a_n` through its two neighbours towards the base `{-2, -1}`.
fn class_step<S: Scalar>(n: i64) -> Vec<(i64, CoeffPoly<S>)> {
    debug_assert!(n >= 0 || n <= -3);
    let (m, target) = if n >= 0 { (n - 1, n) } else { (n + 1, n) };
    let rel = kahler_relation::<S>(m);
    let lead = rel
        .get(&target)
        .and_then(|c| c.as_constant())
        .filter(|c| !c.is_zero())
        .expect("leading coefficient of the Kähler relation is a nonzero integer");
    rel.into_iter()
        .filter(|(k, _)| *k != target)
        .map(|(k, c)| (k, (-c).div_scalar(&lead)))
        .collect()
}

type PairTable<S> = BTreeMap<i64, (CoeffPoly<S>, CoeffPoly<S>)>;

/// The `(w+, w-)` coordinates of `a_k` for all `k` in `lo..=hi`, built from
/// the base outward.
fn fill_table<S: Scalar>(table: &mut PairTable<S>, lo: i64, hi: i64) {
    if table.is_empty() {
        table.insert(-1, (CoeffPoly::one(), CoeffPoly::zero()));
        table.insert(-2, (CoeffPoly::zero(), CoeffPoly::one()));
    }
    let mut top = *table.keys().next_back().unwrap();
    while top < hi {
        let n = top + 1;
        let entry = combine(table, &class_step::<S>(n));
        table.insert(n, entry);
        top = n;
    }
    let mut bottom = *table.keys().next().unwrap();
    while bottom > lo {
        let n = bottom - 1;
        let entry = combine(table, &class_step::<S>(n));
        table.insert(n, entry);
        bottom = n;
    }
}

fn combine<S: Scalar>(
    table: &PairTable<S>,
    step: &[(i64, CoeffPoly<S>)],
) -> (CoeffPoly<S>, CoeffPoly<S>) {
    let mut p = CoeffPoly::zero();
    let mut q = CoeffPoly::zero();
    for (k, c) in step {
        let (pk, qk) = &table[k];
        p += &(pk * c);
        q += &(qk * c);
    }
    (p, q)
}

fn shared_tables() -> &'static Mutex<HashMap<TypeId, Box<dyn Any + Send>>> {
    static TABLES: OnceLock<Mutex<HashMap<TypeId, Box<dyn Any + Send>>>> = OnceLock::new();
    TABLES.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `(w+, w-)` coordinates of `[t^n u dt]`, memoized process-wide.
pub fn u_class_coords<S: Scalar>(n: i64) -> (CoeffPoly<S>, CoeffPoly<S>) {
    let mut guard = shared_tables().lock().expect("class table poisoned");
    let slot = guard
        .entry(TypeId::of::<S>())
        .or_insert_with(|| Box::new(PairTable::<S>::new()));
    let table = slot
        .downcast_mut::<PairTable<S>>()
        .expect("table keyed by its own type");
    if !table.contains_key(&n) {
        fill_table(table, n.min(-2), n.max(-1));
    }
    table[&n].clone()
}

/// Class of `t^n u dt`.
pub fn u_class<S: Scalar>(n: i64) -> DifferentialClass<S> {
    let (p, q) = u_class_coords::<S>(n);
    DifferentialClass::new(CoeffPoly::zero(), p, q)
}

fn expand_fdg<S: Scalar>(f: &RingElement<S>, g: &RingElement<S>) -> BTreeMap<Form, CoeffPoly<S>> {
    let mut forms = BTreeMap::new();
    for (mf, cf) in f.terms() {
        for (mg, cg) in g.terms() {
            let c = cf * cg;
            let n = mf.n + mg.n;
            let dn = c.scale_int(mg.n);
            match (mf.sector, mg.sector) {
                (Sector::Plain, Sector::Plain) => add_form(&mut forms, Form::TDt(n - 1), dn),
                (Sector::U, Sector::Plain) => add_form(&mut forms, Form::TUDt(n - 1), dn),
                (Sector::Plain, Sector::U) => {
                    add_form(&mut forms, Form::TUDt(n - 1), dn);
                    add_form(&mut forms, Form::TDu(n), c);
                }
                (Sector::U, Sector::U) => {
                    add_form(&mut forms, Form::TU2Dt(n - 1), dn);
                    add_form(&mut forms, Form::TUDu(n), c);
                }
            }
        }
    }
    forms
}

/// Class of `f dg` in `Omega^1_R / dR` using the default strategy.
pub fn reduce_fdg<S: Scalar>(f: &RingElement<S>, g: &RingElement<S>) -> DifferentialClass<S> {
    reduce_fdg_with(f, g, &ReductionStrategy::default())
}

/// The 2-cocycle `w(f, g) = [f dg]` of the universal central extension.
pub fn omega_pairing<S: Scalar>(f: &RingElement<S>, g: &RingElement<S>) -> DifferentialClass<S> {
    reduce_fdg(f, g)
}

pub fn reduce_fdg_with<S: Scalar>(
    f: &RingElement<S>,
    g: &RingElement<S>,
    strategy: &ReductionStrategy,
) -> DifferentialClass<S> {
    let mut forms = expand_fdg(f, g);
    let mut out = DifferentialClass::zero();
    let mut rng = match strategy.order {
        WorkOrder::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut local_table = PairTable::<S>::new();
    if let ClassRule::Table { lo, hi } = strategy.classes {
        fill_table(&mut local_table, lo.min(-2), hi.max(-1));
    }
    let b = CoeffPoly::<S>::symbol(Symbol::B);

    while !forms.is_empty() {
        let form = match (strategy.order, rng.as_mut()) {
            (WorkOrder::Descending, _) => *forms.keys().next_back().unwrap(),
            (WorkOrder::Shuffled(_), Some(r)) => {
                let i = r.gen_range(0..forms.len());
                *forms.keys().nth(i).unwrap()
            }
            _ => *forms.keys().next().unwrap(),
        };
        let c = forms.remove(&form).unwrap();
        match form {
            Form::TDt(n) => {
                if n == -1 {
                    out.c0 += &c;
                }
            }
            Form::TU2Dt(n) => {
                for (shift, k) in curve_terms::<S>() {
                    add_form(&mut forms, Form::TDt(n + shift), &c * &k);
                }
            }
            Form::TU2Du(n) => {
                for (shift, k) in curve_terms::<S>() {
                    add_form(&mut forms, Form::TDu(n + shift), &c * &k);
                }
            }
            Form::TDu(n) => add_form(&mut forms, Form::TUDt(n - 1), c.scale_int(-n)),
            Form::TUDu(n) => match strategy.udu {
                UduRule::Kahler => {
                    let half = c.div_scalar(&S::from_int(2));
                    add_form(&mut forms, Form::TDt(n + 2), half.scale_int(3));
                    add_form(&mut forms, Form::TDt(n + 1), &half * &b.scale_int(-4));
                    add_form(&mut forms, Form::TDt(n), half);
                }
                UduRule::Leibniz => {
                    let k = c.scale(&S::ratio(-n, 2));
                    add_form(&mut forms, Form::TU2Dt(n - 1), k);
                }
            },
            Form::TUDt(-1) => out.cplus += &c,
            Form::TUDt(-2) => out.cminus += &c,
            Form::TUDt(n) => match strategy.classes {
                ClassRule::Stepwise => {
                    for (k, coeff) in class_step::<S>(n) {
                        add_form(&mut forms, Form::TUDt(k), &c * &coeff);
                    }
                }
                ClassRule::Table { .. } => {
                    if !local_table.contains_key(&n) {
                        fill_table(&mut local_table, n.min(-2), n.max(-1));
                    }
                    let (p, q) = &local_table[&n];
                    out.cplus += &(&c * p);
                    out.cminus += &(&c * q);
                }
                ClassRule::Shared => {
                    let (p, q) = u_class_coords::<S>(n);
                    out.cplus += &(&c * &p);
                    out.cminus += &(&c * &q);
                }
            },
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Class, Poly, Ring};

    fn b() -> Poly {
        Poly::symbol(Symbol::B)
    }

    #[test]
    fn basis_examples() {
        assert!(reduce_fdg(&Ring::one(), &Ring::t(1)).is_zero());
        assert_eq!(reduce_fdg(&Ring::t(-1), &Ring::t(1)), Class::w0());
        assert_eq!(reduce_fdg(&Ring::tu(-2), &Ring::t(1)), Class::wminus());
        assert_eq!(reduce_fdg(&Ring::tu(-1), &Ring::t(1)), Class::wplus());
    }

    #[test]
    fn relation_coefficients_match_hand_derivation() {
        // -(2m+7) a_{m+1} + 4b(m+2) a_m - (2m+1) a_{m-1} = 0
        for m in -6..6 {
            let rel = kahler_relation::<crate::Rational>(m);
            let at = |k: i64| rel.get(&k).cloned().unwrap_or_default();
            assert_eq!(at(m + 1), Poly::int(-(2 * m + 7)));
            assert_eq!(at(m), b().scale_int(4 * (m + 2)));
            assert_eq!(at(m - 1), Poly::int(-(2 * m + 1)));
        }
    }

    #[test]
    fn u_dt_class_from_oracle() {
        // a_0 = (4b w+ + w-)/5 under the exactness relations.
        let got = reduce_fdg(&Ring::u(), &Ring::t(1));
        let want = Class::new(Poly::zero(), b().scale(&crate::Rational::new(4.into(), 5.into())), Poly::ratio(1, 5));
        assert_eq!(got, want);
    }

    #[test]
    fn pairing_examples() {
        for i in -4..=4 {
            for j in -4..=4 {
                let got = omega_pairing(&Ring::t(i), &Ring::t(j));
                let want = if i + j == 0 { Class::w0().scale(&Poly::int(j)) } else { Class::zero() };
                assert_eq!(got, want, "i={i} j={j}");
            }
        }
        assert_eq!(omega_pairing(&Ring::t(1), &Ring::t(-1)), Class::w0().scale(&Poly::int(-1)));
        for g in [Ring::t(3), Ring::tu(-2), Ring::tu(4), Ring::one()] {
            assert!(omega_pairing(&Ring::one(), &g).is_zero());
        }
    }

    #[test]
    fn strategies_agree_on_uu() {
        let f = Ring::tu(3);
        let g = Ring::tu(-7);
        let base = reduce_fdg(&f, &g);
        for order in [WorkOrder::Ascending, WorkOrder::Descending, WorkOrder::Shuffled(7)] {
            for udu in [UduRule::Kahler, UduRule::Leibniz] {
                for classes in [ClassRule::Stepwise, ClassRule::Table { lo: -20, hi: 20 }] {
                    let s = ReductionStrategy { order, udu, classes };
                    assert_eq!(reduce_fdg_with(&f, &g, &s), base, "{s:?}");
                }
            }
        }
    }
}
