//! Euler characteristics of the extension complex, moduli dimensions and the
//! large-`α` birational models.
//!
//! [`chi`] is asymmetric: the first argument is the **quotient** `T″` and
//! the second the **subobject** `T′`, matching `χ(T″, T′)`, which governs
//! `Ext¹(T″, T′)`, the space of extensions `0 → T′ → T → T″ → 0`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::model::{FactorType, Genus, TripleType};

/// `χ(T″, T′)` with `tq = T″` (quotient) and `ts = T′` (sub):
///
/// ```text
/// (1−g)(n₁″n₁′ + n₂″n₂′ − n₂″n₁′)
///   + n₁″d₁′ − n₁′d₁″ + n₂″d₂′ − n₂′d₂″ − n₂″d₁′ + n₁′d₂″
/// ```
pub fn chi(tq: &FactorType, ts: &FactorType, g: Genus) -> i64 {
    let (a1, a2, e1, e2) = (tq.n1(), tq.n2(), tq.d1(), tq.d2());
    let (b1, b2, f1, f2) = (ts.n1(), ts.n2(), ts.d1(), ts.d2());
    (1 - g.get()) * (a1 * b1 + a2 * b2 - a2 * b1) + a1 * f1 - b1 * e1 + a2 * f2 - b2 * e2
        - a2 * f1
        + b1 * e2
}

/// `dim Ext¹(T″, T′) = h⁰ − χ(T″, T′)` when the second hypercohomology
/// vanishes. `h0` is asserted by the caller: 0 for non-isomorphic stable
/// triples of equal `α`-slope, 1 for isomorphic stable ones.
pub fn ext1_dim_under_vanishing(
    tq: &FactorType,
    ts: &FactorType,
    g: Genus,
    h0: u32,
) -> Result<i64> {
    let v = i64::from(h0) - chi(tq, ts, g);
    if v < 0 {
        return Err(Error::InconsistentHypotheses(format!(
            "h0 - chi = {v} < 0 for quotient {tq}, sub {ts}, g = {}",
            g.get()
        )));
    }
    Ok(v)
}

/// `(g−1)(n₁² + n₂² − n₁n₂) − n₁d₂ + n₂d₁ + 1`, the dimension of the
/// stable locus wherever it is smooth.
pub fn moduli_dimension(t: &TripleType, g: Genus) -> i64 {
    let (n1, n2, d1, d2) = (t.n1(), t.n2(), t.d1(), t.d2());
    (g.get() - 1) * (n1 * n1 + n2 * n2 - n1 * n2) - n1 * d2 + n2 * d1 + 1
}

/// `n²(g−1) + 1`, the dimension of stable bundles of rank `n` (any degree).
pub fn stable_bundle_moduli_dim(n: i64, _d: i64, g: Genus) -> i64 {
    n * n * (g.get() - 1) + 1
}

/// Fiber dimension `N` of the large-`α` projective fibration.
///
/// * `n₁ > n₂`: `n₂d₁ − n₁d₂ + n₂(n₁−n₂)(g−1) − 1`
/// * `n₁ < n₂`: `n₂d₁ − n₁d₂ + n₁(n₂−n₁)(g−1) − 1`
/// * `n₁ = n₂ = n`: `n(d₁−d₂) − 1`
pub fn large_alpha_fiber_dim(t: &TripleType, g: Genus) -> Result<i64> {
    let (n1, n2, d1, d2) = (t.n1(), t.n2(), t.d1(), t.d2());
    let gm1 = g.get() - 1;
    if n1 == n2 {
        if d1 <= d2 {
            return Err(domain(format!("large-alpha regime needs d1 > d2 for {t}")));
        }
        return Ok(n1 * (d1 - d2) - 1);
    }
    if t.mu1() <= t.mu2() {
        return Err(domain(format!("large-alpha regime needs mu1 > mu2 for {t}")));
    }
    let base = n2 * d1 - n1 * d2 - 1;
    Ok(if n1 > n2 {
        base + n2 * (n1 - n2) * gm1
    } else {
        base + n1 * (n2 - n1) * gm1
    })
}

/// The competing fiber formula with coefficient `n₁(n₁−n₂)` for `n₁ > n₂`:
/// `n₂d₁ − n₁d₂ + n₁(n₁−n₂)(g−1) − 1`. It does not close the dimension
/// count; kept only so reports can show both values.
pub fn fiber_dim_n1_coefficient(t: &TripleType, g: Genus) -> Result<i64> {
    let (n1, n2, d1, d2) = (t.n1(), t.n2(), t.d1(), t.d2());
    if n1 <= n2 {
        return Err(domain(format!("needs n1 > n2, got {t}")));
    }
    Ok(n2 * d1 - n1 * d2 + n1 * (n1 - n2) * (g.get() - 1) - 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelCase {
    EqualRanks,
    N1Greater,
    N1Less,
    EndpointAlphaM,
    EndpointAlphaMax,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseFactor {
    StableBundles { rank: i64, degree: i64, dim: i64 },
    PolystableBundles { rank: i64, degree: i64, dim: i64 },
    SymmetricPower { degree: i64, dim: i64 },
}

impl BaseFactor {
    pub fn dim(&self) -> i64 {
        match self {
            BaseFactor::StableBundles { dim, .. }
            | BaseFactor::PolystableBundles { dim, .. }
            | BaseFactor::SymmetricPower { dim, .. } => *dim,
        }
    }

    fn stable(rank: i64, degree: i64, g: Genus) -> Self {
        BaseFactor::StableBundles {
            rank,
            degree,
            dim: stable_bundle_moduli_dim(rank, degree, g),
        }
    }

    fn polystable(rank: i64, degree: i64, g: Genus) -> Self {
        BaseFactor::PolystableBundles {
            rank,
            degree,
            dim: stable_bundle_moduli_dim(rank, degree, g),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Consistency {
    Consistent,
    /// `gap = accounting_dim − total_dim`.
    Inconsistent { gap: i64 },
    NotApplicable,
}

/// A birational model: a product of bundle moduli (and symmetric products),
/// possibly with a projective fibration on top.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelDescriptor {
    pub case: ModelCase,
    pub base_factors: Vec<BaseFactor>,
    /// `N` of a `ℙᴺ`-fibration; `None` when the model is the base itself.
    pub fiber_dim: Option<i64>,
    /// Dimension of the moduli space the model describes.
    pub total_dim: i64,
    /// Sum of base dimensions plus the fiber dimension.
    pub accounting_dim: i64,
    pub consistency: Consistency,
}

impl ModelDescriptor {
    fn new(case: ModelCase, base_factors: Vec<BaseFactor>, fiber_dim: Option<i64>, total_dim: i64) -> Self {
        let accounting_dim =
            base_factors.iter().map(BaseFactor::dim).sum::<i64>() + fiber_dim.unwrap_or(0);
        let consistency = if accounting_dim == total_dim {
            Consistency::Consistent
        } else {
            Consistency::Inconsistent {
                gap: accounting_dim - total_dim,
            }
        };
        ModelDescriptor {
            case,
            base_factors,
            fiber_dim,
            total_dim,
            accounting_dim,
            consistency,
        }
    }
}

/// `N_{α_m} ≅ M(n₁,d₁) × M(n₂,d₂)`: zero map, polystable bundles.
pub fn alpha_m_model(t: &TripleType, g: Genus) -> ModelDescriptor {
    let base = vec![
        BaseFactor::polystable(t.n1(), t.d1(), g),
        BaseFactor::polystable(t.n2(), t.d2(), g),
    ];
    let total = base.iter().map(BaseFactor::dim).sum();
    let mut m = ModelDescriptor::new(ModelCase::EndpointAlphaM, base, None, total);
    m.consistency = Consistency::NotApplicable;
    m
}

/// The moduli at the upper endpoint: `M(n₂,d₂) × M(n₁−n₂,d₁−d₂)` for
/// `n₁ > n₂`, `M(n₁,d₁) × M(n₂−n₁,d₂−d₁)` for `n₁ < n₂`, and `M(n,d)` for
/// `(n,n,d,d)`, where the moduli do not depend on `α > 0`. `None` for other
/// equal-rank types, which have no finite upper endpoint.
pub fn alpha_max_model(t: &TripleType, g: Genus) -> Option<ModelDescriptor> {
    let (n1, n2, d1, d2) = (t.n1(), t.n2(), t.d1(), t.d2());
    let base = if n1 > n2 {
        vec![BaseFactor::polystable(n2, d2, g), BaseFactor::polystable(n1 - n2, d1 - d2, g)]
    } else if n1 < n2 {
        vec![BaseFactor::polystable(n1, d1, g), BaseFactor::polystable(n2 - n1, d2 - d1, g)]
    } else if d1 == d2 {
        vec![BaseFactor::polystable(n1, d1, g)]
    } else {
        return None;
    };
    if n1 == n2 {
        return Some(ModelDescriptor::new(
            ModelCase::EndpointAlphaMax,
            base,
            None,
            moduli_dimension(t, g),
        ));
    }
    let total = base.iter().map(BaseFactor::dim).sum();
    let mut m = ModelDescriptor::new(ModelCase::EndpointAlphaMax, base, None, total);
    m.consistency = Consistency::NotApplicable;
    Some(m)
}

/// The birational model of the moduli for large `α` (just below `α_M`, or
/// beyond the stabilization threshold for equal ranks). `total_dim` is the
/// moduli dimension formula; `consistency` compares it to the fibration
/// accounting.
pub fn large_alpha_model(t: &TripleType, g: Genus) -> Result<ModelDescriptor> {
    let (n1, n2, d1, d2) = (t.n1(), t.n2(), t.d1(), t.d2());
    if t.mu1() < t.mu2() {
        return Err(domain(format!("large-alpha model needs mu1 >= mu2, got {t}")));
    }
    let total = moduli_dimension(t, g);
    if n1 == n2 {
        if d1 == d2 {
            return Ok(alpha_max_model(t, g).expect("collapse case"));
        }
        let base = vec![
            BaseFactor::stable(n1, d2, g),
            BaseFactor::SymmetricPower {
                degree: d1 - d2,
                dim: d1 - d2,
            },
        ];
        let fiber = large_alpha_fiber_dim(t, g)?;
        return Ok(ModelDescriptor::new(ModelCase::EqualRanks, base, Some(fiber), total));
    }
    if t.mu1() == t.mu2() {
        return Ok(alpha_m_model(t, g));
    }
    let fiber = large_alpha_fiber_dim(t, g)?;
    let (case, base) = if n1 > n2 {
        (
            ModelCase::N1Greater,
            vec![BaseFactor::stable(n1 - n2, d1 - d2, g), BaseFactor::stable(n2, d2, g)],
        )
    } else {
        (
            ModelCase::N1Less,
            vec![BaseFactor::stable(n2 - n1, d2 - d1, g), BaseFactor::stable(n1, d1, g)],
        )
    };
    Ok(ModelDescriptor::new(case, base, Some(fiber), total))
}
