//! Free-field expressions and their lowering to normal-ordered monomials.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::fock::Osc;
use crate::heisenberg::HeisGen;
use crate::poly::{CoeffPoly, Symbol};
use crate::scalar::Scalar;

/// The six free fields. `α`, `α1`, `β`, `β1` carry `z^{-n-1}` with their
/// `n`-th mode, `α*`, `α1*` carry `z^{-n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Field {
    Alpha,
    AlphaStar,
    Alpha1,
    Alpha1Star,
    Beta,
    Beta1,
}

impl Field {
    /// Conformal weight: the `z` exponent of mode `n` is `-n - weight`.
    pub fn weight(self) -> i64 {
        match self {
            Field::AlphaStar | Field::Alpha1Star => 0,
            _ => 1,
        }
    }

    pub fn as_osc(self) -> Option<Osc> {
        match self {
            Field::Alpha => Some(Osc::A),
            Field::AlphaStar => Some(Osc::AStar),
            Field::Alpha1 => Some(Osc::A1),
            Field::Alpha1Star => Some(Osc::A1Star),
            _ => None,
        }
    }

    pub fn as_heis(self) -> Option<HeisGen> {
        match self {
            Field::Beta => Some(HeisGen::B),
            Field::Beta1 => Some(HeisGen::B1),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Field::Alpha => "α",
            Field::AlphaStar => "α*",
            Field::Alpha1 => "α1",
            Field::Alpha1Star => "α1*",
            Field::Beta => "β",
            Field::Beta1 => "β1",
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Laurent polynomial in `z`, as `(exponent, coefficient)` pairs.
pub type ZPoly<S> = Vec<(i64, CoeffPoly<S>)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldExpr<S: Scalar> {
    Gen(Field),
    /// `:left right:`; chains nest to the right.
    NormProd(Box<FieldExpr<S>>, Box<FieldExpr<S>>),
    ZPolyMul(ZPoly<S>, Box<FieldExpr<S>>),
    Dz(Box<FieldExpr<S>>),
    Scale(CoeffPoly<S>, Box<FieldExpr<S>>),
    Sum(Vec<FieldExpr<S>>),
}

impl<S: Scalar> FieldExpr<S> {
    pub fn gen(f: Field) -> Self {
        FieldExpr::Gen(f)
    }

    /// Right-nested normal-ordered product of the given factors.
    pub fn norm(factors: Vec<FieldExpr<S>>) -> Self {
        let mut it = factors.into_iter().rev();
        let mut acc = it.next().expect("normal product needs a factor");
        for f in it {
            acc = FieldExpr::NormProd(Box::new(f), Box::new(acc));
        }
        acc
    }

    pub fn norm_fields(fields: &[Field]) -> Self {
        Self::norm(fields.iter().map(|f| FieldExpr::Gen(*f)).collect())
    }

    pub fn zmul(p: ZPoly<S>, e: FieldExpr<S>) -> Self {
        FieldExpr::ZPolyMul(p, Box::new(e))
    }

    pub fn dz(e: FieldExpr<S>) -> Self {
        FieldExpr::Dz(Box::new(e))
    }

    pub fn scale(c: CoeffPoly<S>, e: FieldExpr<S>) -> Self {
        FieldExpr::Scale(c, Box::new(e))
    }

    pub fn lower(&self) -> Vec<NormTerm<S>> {
        let mut acc = BTreeMap::new();
        for t in lower_raw(self) {
            let key = (t.shift, t.factors.clone());
            let e = acc.entry(key).or_insert_with(CoeffPoly::zero);
            *e += &t.coeff;
        }
        acc.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((shift, factors), coeff)| NormTerm { coeff, shift, factors })
            .collect()
    }
}

impl<S: Scalar> fmt::Display for FieldExpr<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldExpr::Gen(g) => write!(f, "{g}"),
            FieldExpr::NormProd(a, b) => write!(f, ":{a} {b}:"),
            FieldExpr::ZPolyMul(p, e) => write!(f, "[{}]·{e}", render_zpoly(p)),
            FieldExpr::Dz(e) => write!(f, "∂({e})"),
            FieldExpr::Scale(c, e) => write!(f, "({c})·{e}"),
            FieldExpr::Sum(items) => {
                let parts: Vec<String> = items.iter().map(|e| e.to_string()).collect();
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

pub fn render_zpoly<S: Scalar>(p: &ZPoly<S>) -> String {
    let parts: Vec<String> = p.iter().map(|(e, c)| format!("({c})z^{e}")).collect();
    parts.join(" + ")
}

/// `coeff · z^shift · Π ∂^d F` with the factors normal ordered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormTerm<S: Scalar> {
    pub coeff: CoeffPoly<S>,
    pub shift: i64,
    /// `(field, derivative order)`, sorted.
    pub factors: Vec<(Field, u32)>,
}

impl<S: Scalar> NormTerm<S> {
    /// `Σ n_i` required for the coefficient of `z^{-k-1}`.
    pub fn mode_total(&self, k: i64) -> i64 {
        let w: i64 = self.factors.iter().map(|(f, d)| f.weight() + *d as i64).sum();
        k + 1 + self.shift - w
    }

    pub fn label(&self) -> String {
        let fs: Vec<String> = self
            .factors
            .iter()
            .map(|(f, d)| match d {
                0 => f.to_string(),
                1 => format!("∂{f}"),
                _ => format!("∂^{d}{f}"),
            })
            .collect();
        format!("({})·z^{}·:{}:", self.coeff, self.shift, fs.join(" "))
    }
}

fn lower_raw<S: Scalar>(e: &FieldExpr<S>) -> Vec<NormTerm<S>> {
    match e {
        FieldExpr::Gen(g) => vec![NormTerm {
            coeff: CoeffPoly::one(),
            shift: 0,
            factors: vec![(*g, 0)],
        }],
        FieldExpr::Scale(c, inner) => lower_raw(inner)
            .into_iter()
            .map(|mut t| {
                t.coeff = &t.coeff * c;
                t
            })
            .collect(),
        FieldExpr::ZPolyMul(p, inner) => {
            let terms = lower_raw(inner);
            let mut out = Vec::new();
            for (j, c) in p {
                for t in &terms {
                    out.push(NormTerm {
                        coeff: &t.coeff * c,
                        shift: t.shift + j,
                        factors: t.factors.clone(),
                    });
                }
            }
            out
        }
        FieldExpr::Sum(items) => items.iter().flat_map(lower_raw).collect(),
        FieldExpr::NormProd(a, b) => {
            let (ta, tb) = (lower_raw(a), lower_raw(b));
            let mut out = Vec::new();
            for x in &ta {
                for y in &tb {
                    let mut factors = x.factors.clone();
                    factors.extend(y.factors.iter().copied());
                    factors.sort();
                    out.push(NormTerm {
                        coeff: &x.coeff * &y.coeff,
                        shift: x.shift + y.shift,
                        factors,
                    });
                }
            }
            out
        }
        FieldExpr::Dz(inner) => {
            let mut out = Vec::new();
            for t in lower_raw(inner) {
                if t.shift != 0 {
                    out.push(NormTerm {
                        coeff: t.coeff.scale_int(t.shift),
                        shift: t.shift - 1,
                        factors: t.factors.clone(),
                    });
                }
                for i in 0..t.factors.len() {
                    let mut factors = t.factors.clone();
                    factors[i].1 += 1;
                    factors.sort();
                    out.push(NormTerm {
                        coeff: t.coeff.clone(),
                        shift: t.shift,
                        factors,
                    });
                }
            }
            out
        }
    }
}

/// Generators of the loop algebra realized by `θ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ThetaGen {
    E,
    F,
    H,
    E1,
    F1,
    H1,
}

impl ThetaGen {
    pub const ALL: [ThetaGen; 6] = [ThetaGen::F, ThetaGen::F1, ThetaGen::H, ThetaGen::H1, ThetaGen::E, ThetaGen::E1];

    pub fn name(self) -> &'static str {
        match self {
            ThetaGen::E => "e",
            ThetaGen::F => "f",
            ThetaGen::H => "h",
            ThetaGen::E1 => "e1",
            ThetaGen::F1 => "f1",
            ThetaGen::H1 => "h1",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|g| g.name() == s)
    }
}

impl fmt::Display for ThetaGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `z(1 - 2bz + z^2)`.
pub fn curve_zpoly<S: Scalar>() -> ZPoly<S> {
    vec![
        (1, CoeffPoly::one()),
        (2, CoeffPoly::symbol(Symbol::B).scale_int(-2)),
        (3, CoeffPoly::one()),
    ]
}

/// `∂_z [z(1 - 2bz + z^2)] = 1 - 4bz + 3z^2`.
fn curve_zpoly_derivative<S: Scalar>() -> ZPoly<S> {
    vec![
        (0, CoeffPoly::one()),
        (1, CoeffPoly::symbol(Symbol::B).scale_int(-4)),
        (2, CoeffPoly::int(3)),
    ]
}

/// The image `θ(x(z))` of a generating current. `chi0` is the coefficient
/// of the derivative terms.
pub fn build_theta<S: Scalar>(gen: ThetaGen, chi0: &CoeffPoly<S>) -> FieldExpr<S> {
    use Field::*;
    use FieldExpr as X;
    let two = || CoeffPoly::int(2);
    match gen {
        ThetaGen::F => X::scale(CoeffPoly::int(-1), X::gen(Alpha)),
        ThetaGen::F1 => X::scale(CoeffPoly::int(-1), X::gen(Alpha1)),
        ThetaGen::H => X::Sum(vec![
            X::scale(two(), X::norm_fields(&[Alpha, AlphaStar])),
            X::scale(two(), X::norm_fields(&[Alpha1, Alpha1Star])),
            X::gen(Beta),
        ]),
        ThetaGen::H1 => X::Sum(vec![
            X::scale(two(), X::norm_fields(&[Alpha1, AlphaStar])),
            X::scale(two(), X::zmul(curve_zpoly(), X::norm_fields(&[Alpha, Alpha1Star]))),
            X::gen(Beta1),
        ]),
        ThetaGen::E => X::Sum(vec![
            X::norm_fields(&[Alpha, AlphaStar, AlphaStar]),
            X::zmul(curve_zpoly(), X::norm_fields(&[Alpha, Alpha1Star, Alpha1Star])),
            X::scale(two(), X::norm_fields(&[Alpha1, AlphaStar, Alpha1Star])),
            X::norm_fields(&[Beta, AlphaStar]),
            X::norm_fields(&[Beta1, Alpha1Star]),
            X::scale(chi0.clone(), X::dz(X::gen(AlphaStar))),
        ]),
        ThetaGen::E1 => X::Sum(vec![
            X::norm_fields(&[Alpha1, AlphaStar, AlphaStar]),
            X::zmul(
                curve_zpoly(),
                X::Sum(vec![
                    X::norm_fields(&[Alpha1, Alpha1Star, Alpha1Star]),
                    X::scale(two(), X::norm_fields(&[Alpha, AlphaStar, Alpha1Star])),
                ]),
            ),
            X::norm_fields(&[Beta1, AlphaStar]),
            X::zmul(curve_zpoly(), X::norm_fields(&[Beta, Alpha1Star])),
            X::scale(chi0.clone(), X::zmul(curve_zpoly(), X::dz(X::gen(Alpha1Star)))),
            X::scale(
                chi0.div_scalar(&S::from_int(2)),
                X::zmul(curve_zpoly_derivative(), X::gen(Alpha1Star)),
            ),
        ]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn chi0() -> CoeffPoly<Rational> {
        CoeffPoly::symbol(Symbol::Chi0)
    }

    #[test]
    fn f_and_h_shapes() {
        assert_eq!(
            build_theta(ThetaGen::F, &chi0()),
            FieldExpr::Scale(CoeffPoly::int(-1), Box::new(FieldExpr::Gen(Field::Alpha)))
        );
        let h = build_theta(ThetaGen::H, &chi0());
        let FieldExpr::Sum(items) = &h else { panic!("h is a sum") };
        assert_eq!(items.len(), 3);
        assert_eq!(items[2], FieldExpr::Gen(Field::Beta));
    }

    #[test]
    fn derivative_uses_leibniz() {
        let e: FieldExpr<Rational> = FieldExpr::dz(FieldExpr::zmul(vec![(2, CoeffPoly::one())], FieldExpr::gen(Field::Alpha)));
        let terms = e.lower();
        assert_eq!(terms.len(), 2);
        assert!(terms.iter().any(|t| t.shift == 1 && t.coeff == CoeffPoly::int(2) && t.factors == vec![(Field::Alpha, 0)]));
        assert!(terms.iter().any(|t| t.shift == 2 && t.factors == vec![(Field::Alpha, 1)]));
    }

    #[test]
    fn e1_has_curve_factor_and_chi0_terms() {
        let terms = build_theta(ThetaGen::E1, &chi0()).lower();
        let chi_terms: Vec<_> = terms.iter().filter(|t| t.coeff.degree_in(Symbol::Chi0) > 0).collect();
        assert_eq!(chi_terms.len(), 6);
        assert!(terms.iter().any(|t| t.shift == 3 && t.factors == vec![(Field::Alpha1, 0), (Field::Alpha1Star, 0), (Field::Alpha1Star, 0)]));
    }
}
