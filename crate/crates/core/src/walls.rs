//! Critical values of `α` and the chambers between them.
//!
//! A value `α` is critical for `t` when some rank pair `(n₁′, n₂′)` with
//! `0 ≤ n_i′ ≤ n_i`, `(n₁′, n₂′) ≠ (0, 0)`, `n₁′n₂ ≠ n₁n₂′` and some integer
//! `s′` satisfy
//!
//! ```text
//! α = ((n₁+n₂)s′ − (n₁′+n₂′)(d₁+d₂)) / (n₁′n₂ − n₁n₂′).
//! ```
//!
//! For a fixed rank pair this is affine in `s′`, so the walls in a bounded
//! window are found by solving two inequalities for `s′`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bounds::{alpha_l, alpha_m, alpha_max};
use crate::error::{domain, Result};
use crate::lattice::IntRange;
use crate::model::TripleType;
use crate::rational::{gcd, Extended, Rational};

/// Rank pair and total degree `s′ = d₁′ + d₂′` of a subtriple producing a wall.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Witness {
    pub n1p: i64,
    pub n2p: i64,
    pub s_prime: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalValue {
    pub alpha_c: Rational,
    pub witnesses: Vec<Witness>,
}

/// The open interval `(lower, upper)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chamber {
    pub lower: Rational,
    pub upper: Extended<Rational>,
}

impl Chamber {
    pub fn contains(&self, alpha: &Rational) -> bool {
        *alpha > self.lower
            && match &self.upper {
                Extended::Finite(u) => alpha < u,
                Extended::Infinity => true,
            }
    }

    /// A rational strictly inside the chamber.
    pub fn sample(&self) -> Rational {
        match &self.upper {
            Extended::Finite(u) => (&self.lower + u) / 2,
            Extended::Infinity => &self.lower + 1,
        }
    }

    /// Whether the chamber reaches above `x`.
    pub fn extends_above(&self, x: &Rational) -> bool {
        match &self.upper {
            Extended::Finite(u) => u > x,
            Extended::Infinity => true,
        }
    }
}

/// Rank pairs that can witness a wall, with the nonzero denominator
/// `n₁′n₂ − n₁n₂′`.
pub(crate) fn rank_pairs(t: &TripleType) -> impl Iterator<Item = (i64, i64, i64)> + '_ {
    (0..=t.n1()).flat_map(move |a| {
        (0..=t.n2()).filter_map(move |b| {
            let den = a * t.n2() - t.n1() * b;
            ((a, b) != (0, 0) && den != 0).then_some((a, b, den))
        })
    })
}

/// The wall produced by a witness.
pub fn wall_of(t: &TripleType, w: &Witness) -> Result<Rational> {
    let den = w.n1p * t.n2() - t.n1() * w.n2p;
    if den == 0
        || (w.n1p, w.n2p) == (0, 0)
        || !(0..=t.n1()).contains(&w.n1p)
        || !(0..=t.n2()).contains(&w.n2p)
    {
        return Err(domain(format!("inadmissible witness {w:?} for {t}")));
    }
    Ok(Rational::new(
        t.total_rank() * w.s_prime - (w.n1p + w.n2p) * t.total_degree(),
        den,
    ))
}

/// All critical values in `[window_lo, window_hi]`, ascending, with complete
/// witness lists.
pub fn enumerate_critical_values(
    t: &TripleType,
    window_lo: &Rational,
    window_hi: &Rational,
) -> Result<Vec<CriticalValue>> {
    if window_lo > window_hi {
        return Err(domain(format!(
            "inverted window [{window_lo}, {window_hi}]"
        )));
    }
    let am = alpha_m(t);
    if *window_lo < am {
        return Err(domain(format!(
            "window start {window_lo} lies below alpha_m = {am} for {t}"
        )));
    }
    let mut found: BTreeMap<Rational, Vec<Witness>> = BTreeMap::new();
    for (a, b, den) in rank_pairs(t) {
        // α(s) = k·s + c
        let k = Rational::new(t.total_rank(), den);
        let c = Rational::new(-(a + b) * t.total_degree(), den);
        let range = IntRange::all()
            .ge_zero(&k, &(&c - window_lo))
            .le_zero(&k, &(&c - window_hi));
        let Some(iter) = range.iter() else {
            return Err(domain("window too large to enumerate"));
        };
        for s in iter {
            let alpha = &k * s + &c;
            found.entry(alpha).or_default().push(Witness {
                n1p: a,
                n2p: b,
                s_prime: s,
            });
        }
    }
    Ok(found
        .into_iter()
        .map(|(alpha_c, mut witnesses)| {
            witnesses.sort();
            CriticalValue { alpha_c, witnesses }
        })
        .collect())
}

/// A witness making `alpha` critical, if any. `None` below `α_m`. Rank
/// pairs are tried by increasing `n₁′ + n₂′`, then increasing `n₂′`.
pub fn is_critical(t: &TripleType, alpha: &Rational) -> Option<Witness> {
    if *alpha < alpha_m(t) {
        return None;
    }
    let mut pairs: Vec<_> = rank_pairs(t).collect();
    pairs.sort_by_key(|&(a, b, _)| (a + b, b));
    pairs.into_iter().find_map(|(a, b, den)| {
        let s = (alpha * den + (a + b) * t.total_degree()) / t.total_rank();
        s.to_i64().map(|s_prime| Witness {
            n1p: a,
            n2p: b,
            s_prime,
        })
    })
}

/// `GCD(n₁+n₂, d₁+d₂ − m·n₁) = 1`. When true the integer `m` is not a
/// critical value.
pub fn integer_genericity(t: &TripleType, m: i64) -> bool {
    gcd(t.total_rank(), t.total_degree() - m * t.n1()) == 1
}

/// False when `GCD(n₂, n₁+n₂, d₁+d₂) = 1`, which rules out strictly
/// semistable triples at every `α`; true means such triples are not excluded.
pub fn alpha_independent_possible(t: &TripleType) -> bool {
    gcd(gcd(t.n2(), t.total_rank()), t.total_degree()) != 1
}

/// The enumeration window: `[α_m, α_M]` for distinct ranks and
/// `[α_m, max(α_m, α_L)]` for equal ranks. Needs `α_m ≥ 0`.
pub fn default_window(t: &TripleType) -> Result<(Rational, Rational)> {
    let am = alpha_m(t);
    if am.is_negative() {
        return Err(domain(format!(
            "alpha_m = {am} < 0 for {t}; no alpha-semistable triples of this type"
        )));
    }
    let hi = match alpha_max(t) {
        Extended::Finite(v) => v,
        Extended::Infinity => alpha_l(t)?.max(am.clone()),
    };
    Ok((am, hi))
}

/// Window used when walls above the stabilization threshold are requested:
/// `[α_m, max(α_L, α_m) + n₁ + n₂]` for equal ranks, the default otherwise.
pub fn extended_window(t: &TripleType, hi: Option<Rational>) -> Result<(Rational, Rational)> {
    let (lo, default_hi) = default_window(t)?;
    if !t.equal_ranks() {
        return Ok((lo, hi.unwrap_or(default_hi)));
    }
    let hi = hi.unwrap_or_else(|| default_hi + t.total_rank());
    Ok((lo, hi))
}

/// Chambers cut from `(lower, upper)` by the given walls; walls outside the
/// open interval are ignored.
pub fn chambers_between(
    lower: &Rational,
    upper: &Extended<Rational>,
    walls: &[CriticalValue],
) -> Vec<Chamber> {
    if let Extended::Finite(u) = upper {
        if u <= lower {
            return Vec::new();
        }
    }
    let probe = Chamber {
        lower: lower.clone(),
        upper: upper.clone(),
    };
    let mut cuts: Vec<Rational> = walls
        .iter()
        .map(|w| w.alpha_c.clone())
        .filter(|a| probe.contains(a))
        .collect();
    cuts.sort();
    cuts.dedup();
    let mut out = Vec::with_capacity(cuts.len() + 1);
    let mut lo = lower.clone();
    for c in cuts {
        out.push(Chamber {
            lower: lo,
            upper: Extended::Finite(c.clone()),
        });
        lo = c;
    }
    out.push(Chamber {
        lower: lo,
        upper: upper.clone(),
    });
    out
}

/// Chamber decomposition of `(α_m, α_M)`. For equal ranks the walls up to
/// `α_L` cut `(α_m, +∞)`; the last chamber is unbounded since the moduli are
/// constant beyond `α_L`.
pub fn chambers(t: &TripleType) -> Result<Vec<Chamber>> {
    let (lo, hi) = default_window(t)?;
    let walls = enumerate_critical_values(t, &lo, &hi)?;
    Ok(chambers_between(&lo, &alpha_max(t), &walls))
}
