//! `U(p,q)`-Higgs bundles and their associated triples.
//!
//! A `U(p,q)`-Higgs bundle is `(V, W, β, γ)` with `rk V = p`, `rk W = q`,
//! `deg V = a`, `deg W = b`, and Higgs field components `β: W → V ⊗ K`,
//! `γ: V → W ⊗ K`. When `γ = 0` the data `E₁ = V ⊗ K`, `E₂ = W`, `φ = β`
//! form a triple, polystable for `α = 2g − 2`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::model::{Genus, TripleType};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HiggsInvariants {
    p: i64,
    q: i64,
    a: i64,
    b: i64,
    g: Genus,
}

impl HiggsInvariants {
    pub fn new(p: i64, q: i64, a: i64, b: i64, g: Genus) -> Result<Self> {
        if p < 1 || q < 1 {
            return Err(domain(format!("Higgs ranks must be positive, got p={p}, q={q}")));
        }
        Ok(HiggsInvariants { p, q, a, b, g })
    }

    pub fn p(&self) -> i64 {
        self.p
    }
    pub fn q(&self) -> i64 {
        self.q
    }
    pub fn a(&self) -> i64 {
        self.a
    }
    pub fn b(&self) -> i64 {
        self.b
    }
    pub fn genus(&self) -> Genus {
        self.g
    }

    /// `(aq − bp)/(p + q)`.
    pub fn toledo(&self) -> Rational {
        Rational::new(self.a * self.q - self.b * self.p, self.p + self.q)
    }
}

/// Which Higgs field component vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Vanishing {
    GammaZero,
    /// Mirror of `GammaZero` with `(V, a, p)` and `(W, b, q)` exchanged.
    BetaZero,
}

/// `|(aq − bp)/(p + q)| ≤ min(p, q)(g − 1)`, with margin `rhs − lhs`.
pub fn milnor_wood_ok(h: &HiggsInvariants) -> (bool, Rational) {
    let lhs = h.toledo().abs();
    let rhs = Rational::from(h.p.min(h.q) * (h.g.get() - 1));
    let margin = rhs - lhs;
    (!margin.is_negative(), margin)
}

/// The triple type and parameter `α = 2g − 2` attached to `h`.
///
/// `GammaZero`: `(p, q, a + p(2g−2), b)`. `BetaZero`: `(q, p, b + q(2g−2), a)`.
pub fn higgs_to_triple(h: &HiggsInvariants, vanishing: Vanishing) -> (TripleType, Rational) {
    let k = h.g.canonical_degree();
    let t = match vanishing {
        Vanishing::GammaZero => TripleType::new(h.p, h.q, h.a + h.p * k, h.b),
        Vanishing::BetaZero => TripleType::new(h.q, h.p, h.b + h.q * k, h.a),
    }
    .expect("ranks are positive");
    (t, Rational::from(k))
}
