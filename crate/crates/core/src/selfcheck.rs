//! Exhaustive consistency checks over a bounded sweep of types.
//!
//! Each check recomputes a quantity along an independent route (brute force,
//! closed form, duality) and records disagreements.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bounds::{alpha_0, alpha_j, alpha_l, alpha_m, alpha_max};
use crate::error::Result;
use crate::flips::{enumerate_flip_decompositions, interior_walls, verify_codim_theorem, FlipOptions};
use crate::homological::{chi, large_alpha_fiber_dim, moduli_dimension, stable_bundle_moduli_dim};
use crate::model::{dualize, FactorType, Genus, TripleType};
use crate::rational::{Extended, Rational};
use crate::walls::{chambers, default_window, enumerate_critical_values, integer_genericity, is_critical};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sweep {
    pub max_rank_sum: i64,
    pub max_abs_degree: i64,
    pub genera: Vec<i64>,
}

impl Default for Sweep {
    fn default() -> Self {
        Sweep {
            max_rank_sum: 6,
            max_abs_degree: 6,
            genera: vec![2, 3],
        }
    }
}

impl Sweep {
    pub fn types(&self) -> impl Iterator<Item = TripleType> + '_ {
        let d = self.max_abs_degree;
        (1..self.max_rank_sum).flat_map(move |n1| {
            (1..=self.max_rank_sum - n1).flat_map(move |n2| {
                (-d..=d).flat_map(move |d1| {
                    (-d..=d).map(move |d2| TripleType::new(n1, n2, d1, d2).expect("positive ranks"))
                })
            })
        })
    }

    /// Types with `α_m ≥ 0`, for which the parameter window is nonempty.
    pub fn windowed_types(&self) -> impl Iterator<Item = TripleType> + '_ {
        self.types().filter(|t| !alpha_m(t).is_negative())
    }

    fn genera(&self) -> Vec<Genus> {
        self.genera.iter().filter_map(|&g| Genus::new(g).ok()).collect()
    }
}

const MAX_SAMPLES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// The first few failures, rendered.
    pub samples: Vec<String>,
}

impl CheckResult {
    fn new(name: &str) -> Self {
        CheckResult {
            name: name.to_string(),
            cases: 0,
            failures: 0,
            samples: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.samples.len() < MAX_SAMPLES {
                self.samples.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Critical values in `[lo, hi]` by scanning every rank pair and every `s′`
/// with `|s′| ≤ (M·|den| + (n₁′+n₂′)|d₁+d₂|)/(n₁+n₂)`, `M = max(|lo|, |hi|)`.
pub fn naive_walls(t: &TripleType, lo: &Rational, hi: &Rational) -> BTreeSet<Rational> {
    let m = lo.abs().max(hi.abs());
    let total = t.total_degree().abs();
    let mut out = BTreeSet::new();
    for a in 0..=t.n1() {
        for b in 0..=t.n2() {
            let den = a * t.n2() - t.n1() * b;
            if (a, b) == (0, 0) || den == 0 {
                continue;
            }
            let bound = (&m * den.abs() + (a + b) * total) / t.total_rank();
            let bound = bound.ceil().try_into().unwrap_or(i64::MAX);
            for s in -bound..=bound {
                let alpha = Rational::new(t.total_rank() * s - (a + b) * t.total_degree(), den);
                if alpha >= *lo && alpha <= *hi {
                    out.insert(alpha);
                }
            }
        }
    }
    out
}

pub fn check_wall_oracle(sweep: &Sweep) -> Result<CheckResult> {
    let mut res = CheckResult::new("wall enumeration matches brute force");
    for t in sweep.windowed_types() {
        let (lo, hi) = default_window(&t)?;
        let fast: BTreeSet<_> = enumerate_critical_values(&t, &lo, &hi)?
            .into_iter()
            .map(|c| c.alpha_c)
            .collect();
        let slow = naive_walls(&t, &lo, &hi);
        res.record(fast == slow, || format!("{t}: {fast:?} vs {slow:?}"));
    }
    Ok(res)
}

pub fn check_integer_genericity(sweep: &Sweep) -> Result<CheckResult> {
    let mut res = CheckResult::new("gcd criterion implies integer is not a wall");
    for t in sweep.windowed_types() {
        let (lo, hi) = default_window(&t)?;
        let (lo, hi) = (lo.ceil(), hi.floor());
        let (Ok(lo), Ok(hi)) = (i64::try_from(lo), i64::try_from(hi)) else {
            continue;
        };
        for m in lo..=hi {
            if integer_genericity(&t, m) {
                let w = is_critical(&t, &Rational::from(m));
                res.record(w.is_none(), || format!("{t}: m={m} witnessed by {w:?}"));
            }
        }
    }
    Ok(res)
}

pub fn check_dimension_identity(sweep: &Sweep, genera: &[i64]) -> CheckResult {
    let mut res = CheckResult::new("1 - chi(T,T) equals the dimension formula");
    for t in sweep.types() {
        for g in genera.iter().filter_map(|&g| Genus::new(g).ok()) {
            let f = t.as_factor();
            let lhs = 1 - chi(&f, &f, g);
            let rhs = moduli_dimension(&t, g);
            res.record(lhs == rhs, || format!("{t} g={}: {lhs} vs {rhs}", g.get()));
        }
    }
    res
}

/// Every componentwise split `t = t′ + t″` into nonzero factors.
pub fn splits(t: &TripleType, max_abs_degree: i64) -> Vec<(FactorType, FactorType)> {
    let mut out = Vec::new();
    let d = max_abs_degree;
    for a in 0..=t.n1() {
        for b in 0..=t.n2() {
            if (a, b) == (0, 0) || (a, b) == (t.n1(), t.n2()) {
                continue;
            }
            for x in -d..=d {
                for y in -d..=d {
                    let Ok(s) = FactorType::new(a, b, x, y) else { continue };
                    let Ok(q) = FactorType::new(t.n1() - a, t.n2() - b, t.d1() - x, t.d2() - y)
                    else {
                        continue;
                    };
                    out.push((s, q));
                }
            }
        }
    }
    out
}

pub fn check_chi_additivity(sweep: &Sweep, genera: &[i64]) -> CheckResult {
    let mut res = CheckResult::new("chi is additive over splits");
    for t in sweep.types() {
        let f = t.as_factor();
        for g in genera.iter().filter_map(|&g| Genus::new(g).ok()) {
            let whole = chi(&f, &f, g);
            for (s, q) in splits(&t, sweep.max_abs_degree) {
                let parts = chi(&s, &s, g) + chi(&q, &q, g) + chi(&q, &s, g) + chi(&s, &q, g);
                res.record(whole == parts, || format!("{t} = {s} + {q}, g={}", g.get()));
            }
        }
    }
    res
}

pub fn check_large_alpha_bookkeeping(sweep: &Sweep, genera: &[i64]) -> Result<CheckResult> {
    let mut res = CheckResult::new("large-alpha fibration dimension count closes");
    for t in sweep.types().filter(|t| t.n1() > t.n2() && t.mu1() > t.mu2()) {
        for g in genera.iter().filter_map(|&g| Genus::new(g).ok()) {
            let n = large_alpha_fiber_dim(&t, g)?;
            let base = stable_bundle_moduli_dim(t.n1() - t.n2(), t.d1() - t.d2(), g)
                + stable_bundle_moduli_dim(t.n2(), t.d2(), g);
            let dim = moduli_dimension(&t, g);
            res.record(dim == base + n, || format!("{t} g={}: {dim} vs {base}+{n}", g.get()));
        }
    }
    Ok(res)
}

pub fn check_codim_theorem(sweep: &Sweep) -> Result<CheckResult> {
    let mut res = CheckResult::new("flip loci have codimension at least g-1");
    for g in sweep.genera() {
        for t in sweep.windowed_types() {
            let rep = verify_codim_theorem(&t, g)?;
            res.cases += rep.decompositions_checked.saturating_sub(rep.violations.len());
            for v in rep.violations {
                res.record(false, || {
                    format!(
                        "{t} g={} wall {}: sub {} quot {} ({:?}), -chi(sub,quot)={}, -chi(quot,sub)={}",
                        g.get(),
                        v.alpha_c,
                        v.decomposition.sub,
                        v.decomposition.quot,
                        v.decomposition.side,
                        v.neg_chi_sub_quot,
                        v.neg_chi_quot_sub
                    )
                });
            }
        }
    }
    Ok(res)
}

/// Dual of a factor, `(n₁, n₂, d₁, d₂) ↦ (n₂, n₁, −d₂, −d₁)`.
fn dual_factor(f: &FactorType) -> FactorType {
    f.dual()
}

pub fn check_duality(sweep: &Sweep) -> Result<CheckResult> {
    let mut res = CheckResult::new("duality preserves walls, chambers, dimensions and flips");
    let genera = sweep.genera();
    for t in sweep.windowed_types() {
        let d = dualize(&t);
        let (lo, hi) = default_window(&t)?;
        let w1 = enumerate_critical_values(&t, &lo, &hi)?;
        let w2 = enumerate_critical_values(&d, &lo, &hi)?;
        let v1: Vec<_> = w1.iter().map(|c| &c.alpha_c).collect();
        let v2: Vec<_> = w2.iter().map(|c| &c.alpha_c).collect();
        res.record(v1 == v2, || format!("{t}: wall sets differ"));
        res.record(chambers(&t)? == chambers(&d)?, || format!("{t}: chambers differ"));
        for &g in &genera {
            res.record(moduli_dimension(&t, g) == moduli_dimension(&d, g), || {
                format!("{t}: dimension differs")
            });
            for wall in interior_walls(&t)? {
                let a = enumerate_flip_decompositions(&t, &wall.alpha_c, g, FlipOptions::default())?;
                let b = enumerate_flip_decompositions(&d, &wall.alpha_c, g, FlipOptions::default())?;
                for (from, to) in [(&a, &b), (&b, &a)] {
                    let mapped: BTreeSet<_> = from
                        .plus_side
                        .iter()
                        .map(|x| (dual_factor(&x.sub), dual_factor(&x.quot)))
                        .collect();
                    let target: BTreeSet<_> = to.minus_side.iter().map(|x| (x.sub, x.quot)).collect();
                    res.record(mapped == target, || {
                        format!("{t} g={} wall {}: plus/minus lists do not exchange", g.get(), wall.alpha_c)
                    });
                }
            }
        }
    }
    Ok(res)
}

pub fn check_thresholds(sweep: &Sweep) -> Result<CheckResult> {
    let mut res = CheckResult::new("threshold algebra");
    for t in sweep.types() {
        if t.n1() >= t.n2() {
            if t.mu1() > t.mu2() {
                for j in 1..t.n2() {
                    res.record(alpha_j(&t, j - 1)? > alpha_j(&t, j)?, || {
                        format!("{t}: alpha_j not decreasing at j={j}")
                    });
                }
            }
            let a0 = alpha_0(&t)?;
            let am = alpha_m(&t);
            if !am.is_negative() {
                res.record(a0 >= am, || format!("{t}: alpha_0 < alpha_m"));
                res.record((a0 == am) == (am.is_zero() || t.n2() == 1), || {
                    format!("{t}: alpha_0 = alpha_m equality case")
                });
            }
            if t.equal_ranks() {
                res.record(a0 == Rational::from(t.d1() - t.d2()), || {
                    format!("{t}: alpha_0 != d1 - d2")
                });
            }
            if t.n1() > t.n2() && am.is_positive() && t.n2() > 1 {
                res.record(a0 > am && Extended::Finite(a0.clone()) < alpha_max(&t), || {
                    format!("{t}: alpha_0 not strictly inside the window")
                });
            }
        }
        if t.equal_ranks() && t.n1() == 2 {
            res.record(alpha_l(&t)? == Rational::from(t.d1() - t.d2()), || {
                format!("{t}: alpha_L != d1 - d2")
            });
        }
    }
    Ok(res)
}

/// Run every check. Genera for the identity checks are `sweep.genera`.
pub fn run_all(sweep: &Sweep) -> Result<Vec<CheckResult>> {
    Ok(vec![
        check_wall_oracle(sweep)?,
        check_integer_genericity(sweep)?,
        check_dimension_identity(sweep, &sweep.genera),
        check_chi_additivity(sweep, &sweep.genera),
        check_large_alpha_bookkeeping(sweep, &sweep.genera)?,
        check_codim_theorem(sweep)?,
        check_duality(sweep)?,
        check_thresholds(sweep)?,
    ])
}
