//! Named thresholds on the stability parameter.
//!
//! `α_m` and `α_M` bound the range where stable triples can exist. The
//! remaining thresholds (`α_j`, `α₀`, `α_t`, `α_e`) are only defined for
//! `n₁ ≥ n₂`; callers working with `n₁ < n₂` dualize first. `α_L` is the
//! stabilization threshold for equal ranks.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::model::TripleType;
use crate::rational::{Extended, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    AlphaMMin,
    AlphaMMax,
    Alpha0,
    AlphaJ(u32),
    AlphaT,
    AlphaE,
    AlphaL,
}

/// A threshold value tagged with its kind. Only `AlphaMMax` may be infinite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaBound {
    pub kind: BoundKind,
    pub value: Extended<Rational>,
}

impl AlphaBound {
    fn finite(kind: BoundKind, value: Rational) -> Self {
        AlphaBound {
            kind,
            value: Extended::Finite(value),
        }
    }
}

/// `α_m = μ₁ − μ₂`.
pub fn alpha_m(t: &TripleType) -> Rational {
    t.mu1() - t.mu2()
}

/// `α_M = (1 + (n₁+n₂)/|n₁−n₂|)(μ₁ − μ₂)`, infinite for equal ranks.
pub fn alpha_max(t: &TripleType) -> Extended<Rational> {
    let diff = (t.n1() - t.n2()).abs();
    if diff == 0 {
        return Extended::Infinity;
    }
    let factor = Rational::one() + Rational::new(t.total_rank(), diff);
    Extended::Finite(factor * alpha_m(t))
}

fn require_n1_ge_n2(t: &TripleType, what: &str) -> Result<()> {
    if t.n1() < t.n2() {
        return Err(domain(format!(
            "{what} needs n1 >= n2, got {t}; dualize the type first"
        )));
    }
    Ok(())
}

fn require_n1_gt_n2(t: &TripleType, what: &str) -> Result<()> {
    if t.n1() <= t.n2() {
        return Err(domain(format!("{what} needs n1 > n2, got {t}")));
    }
    Ok(())
}

/// `α_j = 2n₁n₂(μ₁−μ₂) / (n₂(n₁−n₂) + (j+1)(n₁+n₂))` for `0 ≤ j < n₂`.
pub fn alpha_j(t: &TripleType, j: i64) -> Result<Rational> {
    require_n1_ge_n2(t, "alpha_j")?;
    if j < 0 || j >= t.n2() {
        return Err(domain(format!(
            "alpha_j index {j} outside [0, {}) for {t}",
            t.n2()
        )));
    }
    let (n1, n2) = (t.n1(), t.n2());
    let den = n2 * (n1 - n2) + (j + 1) * (n1 + n2);
    Ok(Rational::new(2 * n1 * n2, den) * alpha_m(t))
}

/// `α₀`, the `j = 0` member of the `α_j` family.
pub fn alpha_0(t: &TripleType) -> Result<Rational> {
    alpha_j(t, 0)
}

/// `α_t = α_M − (n₁+n₂)/(n₂(n₁−n₂))`. May fall below `α_m`.
pub fn alpha_t(t: &TripleType) -> Result<Rational> {
    require_n1_gt_n2(t, "alpha_t")?;
    let big = alpha_max(t)
        .finite()
        .cloned()
        .expect("alpha_M is finite for distinct ranks");
    Ok(big - Rational::new(t.total_rank(), t.n2() * (t.n1() - t.n2())))
}

/// `α_e = max{α_m, α₀, α_t}`.
pub fn alpha_e(t: &TripleType) -> Result<Rational> {
    require_n1_gt_n2(t, "alpha_e")?;
    Ok(alpha_m(t).max(alpha_0(t)?).max(alpha_t(t)?))
}

/// `α_L = n(n−1)(μ₁−μ₂)` for `n₁ = n₂ = n`.
pub fn alpha_l(t: &TripleType) -> Result<Rational> {
    if !t.equal_ranks() {
        return Err(domain(format!("alpha_L needs n1 = n2, got {t}")));
    }
    let n = t.n1();
    Ok(alpha_m(t) * (n * (n - 1)))
}

/// Every threshold defined for `t`, in a fixed order.
pub fn all_bounds(t: &TripleType) -> Vec<AlphaBound> {
    let mut out = vec![
        AlphaBound::finite(BoundKind::AlphaMMin, alpha_m(t)),
        AlphaBound {
            kind: BoundKind::AlphaMMax,
            value: alpha_max(t),
        },
    ];
    if t.n1() >= t.n2() {
        for j in 0..t.n2() {
            let v = alpha_j(t, j).expect("index in range");
            let kind = if j == 0 {
                BoundKind::Alpha0
            } else {
                BoundKind::AlphaJ(j as u32)
            };
            out.push(AlphaBound::finite(kind, v));
        }
    }
    if t.n1() > t.n2() {
        out.push(AlphaBound::finite(BoundKind::AlphaT, alpha_t(t).unwrap()));
        out.push(AlphaBound::finite(BoundKind::AlphaE, alpha_e(t).unwrap()));
    }
    if t.equal_ranks() {
        out.push(AlphaBound::finite(BoundKind::AlphaL, alpha_l(t).unwrap()));
    }
    out
}
