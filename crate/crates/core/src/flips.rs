//! Flip loci at a wall.
//!
//! At an interior critical value `α_c`, the triples that become stable or
//! unstable are extensions `0 → T′ → T → T″ → 0` with `μ_{α_c}(T′) =
//! μ_{α_c}(T″)`. The side of the wall is decided by comparing
//! `λ′ = n₂′/(n₁′+n₂′)` with `λ″ = n₂″/(n₁″+n₂″)`: `λ′ < λ″` gives triples
//! stable just above `α_c` (`Plus`), `λ′ > λ″` those stable just below
//! (`Minus`). Each admissible split yields dimension counts for the locus of
//! such extensions and a lower bound on its codimension.

use serde::{Deserialize, Serialize};

use crate::bounds::{alpha_m, alpha_max};
use crate::error::{domain, Result};
use crate::homological::{chi, moduli_dimension};
use crate::lattice::IntRange;
use crate::model::{FactorType, Genus, TripleType};
use crate::rational::{Extended, Rational};
use crate::walls::{
    default_window, enumerate_critical_values, is_critical, CriticalValue, Witness,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipDecomposition {
    pub sub: FactorType,
    pub quot: FactorType,
    pub side: Side,
    /// `−χ(T″, T′) − 1`: projective dimension of the extension space.
    pub fiber_dim: i64,
    /// `1 − χ(T′,T′) − χ(T″,T″) − χ(T″,T′)`.
    pub stratum_dim: i64,
    /// `−χ(T′, T″)`.
    pub codim_bound: i64,
    pub ambient_dim: i64,
}

impl FlipDecomposition {
    fn new(t: &TripleType, sub: FactorType, quot: FactorType, side: Side, g: Genus) -> Self {
        let chi_qs = chi(&quot, &sub, g);
        let chi_sq = chi(&sub, &quot, g);
        let stratum_dim = 1 - chi(&sub, &sub, g) - chi(&quot, &quot, g) - chi_qs;
        let ambient_dim = moduli_dimension(t, g);
        let codim_bound = -chi_sq;
        debug_assert_eq!(codim_bound, ambient_dim - stratum_dim);
        FlipDecomposition {
            sub,
            quot,
            side,
            fiber_dim: -chi_qs - 1,
            stratum_dim,
            codim_bound,
            ambient_dim,
        }
    }

    fn sort_key(&self) -> (i64, i64, i64) {
        (self.sub.n1(), self.sub.n2(), self.sub.d1())
    }

    /// `(n₁′, n₂′, d₁′ + d₂′)` as a wall witness.
    pub fn witness(&self) -> Witness {
        Witness {
            n1p: self.sub.n1(),
            n2p: self.sub.n2(),
            s_prime: self.sub.total_degree(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscardReason {
    /// `fiber_dim < 0` where the dimension count is valid.
    NegativeFiber,
    /// A factor fails the stricter non-emptiness test.
    EmptyFactorModuli,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discarded {
    pub decomposition: FlipDecomposition,
    pub reason: DiscardReason,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallAnalysis {
    pub wall: CriticalValue,
    pub plus_side: Vec<FlipDecomposition>,
    pub minus_side: Vec<FlipDecomposition>,
    /// Minimum `codim_bound` over both sides; infinite when both are empty.
    pub min_codim: Extended<i64>,
    pub plus_min_codim: Extended<i64>,
    pub minus_min_codim: Extended<i64>,
    pub discarded: Vec<Discarded>,
}

impl WallAnalysis {
    pub fn decompositions(&self) -> impl Iterator<Item = &FlipDecomposition> {
        self.plus_side.iter().chain(self.minus_side.iter())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipOptions {
    /// Drop splits whose factors have empty stable moduli at `α_c^±`
    /// according to the nonemptiness range of the factor's own type.
    pub strict_nonempty: bool,
}

/// Lower bound on `μ₁ − μ₂` for a factor of ranks `(a, b)` to admit
/// `α_c`-semistable triples: `0` for equal ranks, otherwise the value that
/// puts `α_c` at the factor's upper threshold.
fn min_slope_gap(a: i64, b: i64, alpha_c: &Rational) -> Rational {
    let diff = (a - b).abs();
    if diff == 0 {
        Rational::zero()
    } else {
        alpha_c * Rational::new(diff, diff + a + b)
    }
    .max(Rational::zero())
}

/// Restrict `x` to `lower ≤ u·x + v ≤ α_c`, where `u·x + v` is a factor's
/// `μ₁ − μ₂` as a function of `x = d₁′`.
fn constrain_gap(range: IntRange, u: &Rational, v: &Rational, lower: &Rational, alpha_c: &Rational) -> IntRange {
    range
        .ge_zero(u, &(v - lower))
        .le_zero(u, &(v - alpha_c))
}

/// Whether a factor with both ranks positive passes the numerical
/// nonemptiness test on the given side of `α_c`.
fn factor_nonempty(f: &FactorType, alpha_c: &Rational, side: Side, g: Genus) -> bool {
    let Some(t) = f.as_triple() else {
        return true;
    };
    let am = alpha_m(&t);
    let big = alpha_max(&t);
    let two_g = Rational::from(g.canonical_degree());
    match side {
        Side::Plus => {
            am <= *alpha_c && Extended::Finite(alpha_c.clone()) < big && *alpha_c >= two_g
        }
        Side::Minus => {
            am < *alpha_c && Extended::Finite(alpha_c.clone()) <= big && *alpha_c > two_g
        }
    }
}

/// All splits `t = sub + quot` with equal `α_c`-slope, distinct `λ` and
/// numerically admissible factors, sorted by `(n₁′, n₂′, d₁′)`.
pub fn enumerate_flip_decompositions(
    t: &TripleType,
    alpha_c: &Rational,
    g: Genus,
    opts: FlipOptions,
) -> Result<WallAnalysis> {
    let am = alpha_m(t);
    let big = alpha_max(t);
    if *alpha_c == am {
        return Err(domain(format!(
            "alpha_c = {alpha_c} is the lower endpoint alpha_m; every stable triple just above it \
             is unstable below, so the flip locus is the whole moduli space"
        )));
    }
    if Extended::Finite(alpha_c.clone()) == big {
        return Err(domain(format!(
            "alpha_c = {alpha_c} is the upper endpoint alpha_M; the flip locus just below it is \
             the whole moduli space"
        )));
    }
    if *alpha_c < am || Extended::Finite(alpha_c.clone()) > big {
        return Err(domain(format!(
            "alpha_c = {alpha_c} lies outside ({am}, {big}) for {t}"
        )));
    }
    if is_critical(t, alpha_c).is_none() {
        return Err(domain(format!("alpha_c = {alpha_c} is not a critical value of {t}")));
    }
    let wall = enumerate_critical_values(t, alpha_c, alpha_c)?
        .pop()
        .expect("critical value has witnesses");

    let (n1, n2, d1, d2) = (t.n1(), t.n2(), t.d1(), t.d2());
    let target = t.as_factor().alpha_slope(alpha_c);
    let two_g = Rational::from(g.canonical_degree());
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    let mut discarded = Vec::new();

    for a in 0..=n1 {
        for b in 0..=n2 {
            if (a, b) == (0, 0) || (a, b) == (n1, n2) {
                continue;
            }
            let (qa, qb) = (n1 - a, n2 - b);
            let lam_s = Rational::new(b, a + b);
            let lam_q = Rational::new(qb, qa + qb);
            let side = match lam_s.cmp(&lam_q) {
                std::cmp::Ordering::Less => Side::Plus,
                std::cmp::Ordering::Greater => Side::Minus,
                std::cmp::Ordering::Equal => continue,
            };
            // equal slope fixes s′ = d₁′ + d₂′
            let Some(s) = (&target * (a + b) - alpha_c * b).to_i64() else {
                continue;
            };
            // x = d₁′; sub = (a, b, x, s − x); quot = (qa, qb, d₁ − x, d₂ − s + x)
            let one = Rational::one();
            let mut range = IntRange::all();
            let pin = |r: IntRange, value: i64| {
                r.ge_zero(&one, &Rational::from(-value))
                    .le_zero(&one, &Rational::from(-value))
            };
            if a == 0 {
                range = pin(range, 0);
            }
            if b == 0 {
                range = pin(range, s);
            }
            if qa == 0 {
                range = pin(range, d1);
            }
            if qb == 0 {
                range = pin(range, s - d2);
            }
            if a > 0 && b > 0 {
                // μ₁′ − μ₂′ = x(1/a + 1/b) − s/b
                let u = Rational::new(1, a) + Rational::new(1, b);
                let v = Rational::new(-s, b);
                range = constrain_gap(range, &u, &v, &min_slope_gap(a, b, alpha_c), alpha_c);
            }
            if qa > 0 && qb > 0 {
                // μ₁″ − μ₂″ = −x(1/qa + 1/qb) + d₁/qa − (d₂ − s)/qb
                let u = -(Rational::new(1, qa) + Rational::new(1, qb));
                let v = Rational::new(d1, qa) - Rational::new(d2 - s, qb);
                range = constrain_gap(range, &u, &v, &min_slope_gap(qa, qb, alpha_c), alpha_c);
            }
            let Some(xs) = range.iter() else {
                return Err(domain(format!(
                    "unbounded degree range for split ({a},{b}) of {t}"
                )));
            };
            for x in xs {
                let sub = FactorType::new(a, b, x, s - x)?;
                let quot = FactorType::new(qa, qb, d1 - x, d2 - s + x)?;
                let dec = FlipDecomposition::new(t, sub, quot, side, g);
                if opts.strict_nonempty
                    && !(factor_nonempty(&sub, alpha_c, side, g)
                        && factor_nonempty(&quot, alpha_c, side, g))
                {
                    discarded.push(Discarded {
                        decomposition: dec,
                        reason: DiscardReason::EmptyFactorModuli,
                    });
                    continue;
                }
                let counts_valid =
                    *alpha_c > two_g || (*alpha_c == two_g && side == Side::Plus);
                if counts_valid && dec.fiber_dim < 0 {
                    discarded.push(Discarded {
                        decomposition: dec,
                        reason: DiscardReason::NegativeFiber,
                    });
                    continue;
                }
                match side {
                    Side::Plus => plus.push(dec),
                    Side::Minus => minus.push(dec),
                }
            }
        }
    }
    plus.sort_by_key(FlipDecomposition::sort_key);
    minus.sort_by_key(FlipDecomposition::sort_key);
    discarded.sort_by_key(|d| d.decomposition.sort_key());
    let min_of = |list: &[FlipDecomposition]| {
        list.iter()
            .map(|d| d.codim_bound)
            .min()
            .map_or(Extended::Infinity, Extended::Finite)
    };
    let plus_min_codim = min_of(&plus);
    let minus_min_codim = min_of(&minus);
    let min_codim = plus_min_codim.clone().min(minus_min_codim.clone());
    Ok(WallAnalysis {
        wall,
        plus_min_codim,
        minus_min_codim,
        plus_side: plus,
        minus_side: minus,
        min_codim,
        discarded,
    })
}

/// Interior walls of the default window, i.e. those strictly above `α_m`
/// and strictly below `α_M`.
pub fn interior_walls(t: &TripleType) -> Result<Vec<CriticalValue>> {
    let (lo, hi) = default_window(t)?;
    let big = alpha_max(t);
    Ok(enumerate_critical_values(t, &lo, &hi)?
        .into_iter()
        .filter(|w| w.alpha_c > lo && Extended::Finite(w.alpha_c.clone()) < big)
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodimViolation {
    pub alpha_c: Rational,
    pub decomposition: FlipDecomposition,
    /// `−χ(T′, T″)`.
    pub neg_chi_sub_quot: i64,
    /// `−χ(T″, T′)`.
    pub neg_chi_quot_sub: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodimReport {
    pub genus: Genus,
    pub walls_checked: usize,
    pub decompositions_checked: usize,
    pub violations: Vec<CodimViolation>,
}

impl CodimReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `−χ(T′,T″) ≥ g−1` and `−χ(T″,T′) ≥ g−1` for every enumerated
/// decomposition at every interior wall `α_c > 2g−2`, and for the `Plus`
/// side at `α_c = 2g−2`.
pub fn verify_codim_theorem(t: &TripleType, g: Genus) -> Result<CodimReport> {
    verify_codim_theorem_with(t, g, FlipOptions::default())
}

pub fn verify_codim_theorem_with(t: &TripleType, g: Genus, opts: FlipOptions) -> Result<CodimReport> {
    let two_g = Rational::from(g.canonical_degree());
    let bound = g.get() - 1;
    let mut report = CodimReport {
        genus: g,
        walls_checked: 0,
        decompositions_checked: 0,
        violations: Vec::new(),
    };
    for wall in interior_walls(t)? {
        if wall.alpha_c < two_g {
            continue;
        }
        let analysis = enumerate_flip_decompositions(t, &wall.alpha_c, g, opts)?;
        report.walls_checked += 1;
        for dec in analysis.decompositions() {
            if wall.alpha_c == two_g && dec.side == Side::Minus {
                continue;
            }
            report.decompositions_checked += 1;
            let sq = -chi(&dec.sub, &dec.quot, g);
            let qs = -chi(&dec.quot, &dec.sub, g);
            if sq < bound || qs < bound {
                report.violations.push(CodimViolation {
                    alpha_c: wall.alpha_c.clone(),
                    decomposition: dec.clone(),
                    neg_chi_sub_quot: sq,
                    neg_chi_quot_sub: qs,
                });
            }
        }
    }
    Ok(report)
}
