//! Self-consistency sweeps for the differential reducer.

use rayon::prelude::*;

use crate::differential::{reduce_fdg, reduce_fdg_with, ClassRule, ReductionStrategy, UduRule, WorkOrder};
use crate::report::{CaseRecord, Check};
use crate::ring::RingMonomial;
use crate::{Class, Ring};

/// All basis monomials `t^n`, `t^n u` with `|n| <= window`.
pub fn monomials(window: i64) -> Vec<RingMonomial> {
    (-window..=window)
        .flat_map(|n| [RingMonomial::t(n), RingMonomial::tu(n)])
        .collect()
}

fn elem(m: RingMonomial) -> Ring {
    Ring::monomial(m, crate::Poly::one())
}

fn strategies() -> Vec<(String, ReductionStrategy)> {
    let mut out = Vec::new();
    let orders = [WorkOrder::Ascending, WorkOrder::Descending, WorkOrder::Shuffled(7), WorkOrder::Shuffled(1234)];
    let classes = [
        ClassRule::Shared,
        ClassRule::Stepwise,
        ClassRule::Table { lo: -2, hi: -1 },
        ClassRule::Table { lo: -9, hi: 9 },
    ];
    for order in orders {
        for udu in [UduRule::Kahler, UduRule::Leibniz] {
            for cls in classes {
                let s = ReductionStrategy { order, udu, classes: cls };
                out.push((format!("{order:?}/{udu:?}/{cls:?}"), s));
            }
        }
    }
    out
}

/// Every reduction strategy gives the same class for every basis pair.
pub fn confluence(window: i64) -> Check {
    let mons = monomials(window);
    let strategies = strategies();
    let pairs: Vec<(RingMonomial, RingMonomial)> =
        mons.iter().flat_map(|a| mons.iter().map(move |b| (*a, *b))).collect();
    let outcomes: Vec<Option<CaseRecord>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let (f, g) = (elem(a), elem(b));
            let reference = reduce_fdg(&f, &g);
            strategies.iter().find_map(|(name, s)| {
                let got = reduce_fdg_with(&f, &g, s);
                (got != reference).then(|| {
                    CaseRecord::compare(format!("({a}) d({b}) via {name}"), reference.to_string(), got.to_string())
                })
            })
        })
        .collect();
    Check::sweep("oracle confluence", true, outcomes, |o| o)
}

/// `[f d(gh)] = [fg dh] + [fh dg]` on basis triples.
pub fn leibniz(window: i64) -> Check {
    triple_sweep("Leibniz rule", window, |f, g, h| {
        let lhs = reduce_fdg(f, &g.mul(h));
        let rhs = &reduce_fdg(&f.mul(g), h) + &reduce_fdg(&f.mul(h), g);
        (lhs, rhs)
    })
}

/// `w(fg, h) + w(gh, f) + w(hf, g) = 0` on basis triples.
pub fn cocycle(window: i64) -> Check {
    triple_sweep("cocycle identity", window, |f, g, h| {
        let sum = &(&reduce_fdg(&f.mul(g), h) + &reduce_fdg(&g.mul(h), f)) + &reduce_fdg(&h.mul(f), g);
        (sum, Class::zero())
    })
}

fn triple_sweep(name: &str, window: i64, f: impl Fn(&Ring, &Ring, &Ring) -> (Class, Class) + Sync) -> Check {
    let mons = monomials(window);
    let mut triples: Vec<[RingMonomial; 3]> = Vec::new();
    for a in &mons {
        for b in &mons {
            for c in &mons {
                triples.push([*a, *b, *c]);
            }
        }
    }
    let outcomes: Vec<Option<CaseRecord>> = triples
        .par_iter()
        .map(|[a, b, c]| {
            let (lhs, rhs) = f(&elem(*a), &elem(*b), &elem(*c));
            (lhs != rhs).then(|| CaseRecord::compare(format!("({a}, {b}, {c})"), rhs.to_string(), lhs.to_string()))
        })
        .collect();
    Check::sweep(name, true, outcomes, |o| o)
}

/// `tau` acts on classes as minus the identity.
pub fn tau_negation(window: i64) -> Check {
    let mons = monomials(window);
    let pairs: Vec<(RingMonomial, RingMonomial)> =
        mons.iter().flat_map(|a| mons.iter().map(move |b| (*a, *b))).collect();
    let outcomes: Vec<Option<CaseRecord>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let (f, g) = (elem(a), elem(b));
            let want = -&reduce_fdg(&f, &g);
            let got = reduce_fdg(&f.tau(), &g.tau());
            (got != want).then(|| CaseRecord::compare(format!("tau on ({a}) d({b})"), want.to_string(), got.to_string()))
        })
        .collect();
    Check::sweep("tau acts as -1", true, outcomes, |o| o)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_windows_pass() {
        for check in [confluence(2), leibniz(2), cocycle(2), tau_negation(3)] {
            assert!(check.passed(), "{check:?}");
            assert!(check.cases > 0);
        }
    }
}
