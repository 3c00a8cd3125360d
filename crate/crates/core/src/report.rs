//! Per-type summary report and its serializations.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::bounds::{all_bounds, alpha_m, alpha_max, AlphaBound};
use crate::error::Result;
use crate::flips::{
    enumerate_flip_decompositions, verify_codim_theorem_with, CodimReport, FlipOptions,
    WallAnalysis,
};
use crate::homological::{
    alpha_m_model, alpha_max_model, fiber_dim_n1_coefficient, large_alpha_fiber_dim,
    large_alpha_model, moduli_dimension, Consistency, ModelDescriptor,
};
use crate::model::{dualize, Genus, TripleType};
use crate::rational::{Extended, Rational};
use crate::walls::{
    alpha_independent_possible, chambers_between, default_window, enumerate_critical_values,
    extended_window, integer_genericity, Chamber, CriticalValue,
};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReportOptions {
    pub flips: FlipOptions,
    /// Equal ranks only: also list walls above the stabilization threshold.
    pub beyond_stabilization: bool,
    /// Upper end of the window when `beyond_stabilization` is set.
    pub window_hi: Option<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    /// Hypotheses of the nonemptiness/irreducibility results hold.
    Asserted,
    /// No known result covers this case; nothing is claimed.
    NotCovered,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberReport {
    pub chamber: Chamber,
    /// `(g−1)(n₁² + n₂² − n₁n₂) − n₁d₂ + n₂d₁ + 1`.
    pub dimension: i64,
    /// The chamber meets `[2g−2, ∞)`, where the stable locus is smooth of
    /// the stated dimension.
    pub smooth: bool,
    /// Stable locus nonempty and irreducible throughout the chamber.
    pub nonempty_irreducible: Claim,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub lo: Rational,
    pub hi: Rational,
    pub beyond_stabilization: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndpointModels {
    pub alpha_m: ModelDescriptor,
    /// Absent for equal ranks with `d₁ ≠ d₂`.
    pub alpha_max: Option<ModelDescriptor>,
}

/// `α > α_m`, `α ≥ 2g−2`, `α < α_M`, written as one interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableRange {
    pub lower: Rational,
    pub lower_inclusive: bool,
    pub upper: Extended<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremFlags {
    /// Moduli at `α_m` nonempty and irreducible (always).
    pub alpha_m_nonempty_irreducible: Claim,
    /// Moduli at `α_M` nonempty and irreducible (distinct ranks).
    pub alpha_max_nonempty_irreducible: Claim,
    /// Where the stable locus is nonempty, irreducible and smooth; `None`
    /// when `max(α_m, 2g−2) ≥ α_M`.
    pub stable_range: Option<StableRange>,
    /// `GCD(n₂, n₁+n₂, d₁+d₂) = 1`.
    pub gcd_condition: bool,
    /// Whole moduli (not only the stable locus) irreducible at generic `α`
    /// with `α_m < 2g−2 ≤ α < α_M`.
    pub full_moduli_irreducible_generic: Claim,
    /// `GCD(n₁+n₂, d₁+d₂ − (2g−2)n₁) = 1`, so `2g−2` is not a wall.
    pub canonical_degree_generic: bool,
}

/// Places where two published formulas disagree; reported, not resolved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KnownInconsistency {
    /// Large-`α` fiber dimension: the adopted coefficient `n₂(n₁−n₂)` closes
    /// the dimension count; the alternative `n₁(n₁−n₂)` does not. Computed
    /// on the dual type when `n₁ < n₂`.
    FiberCoefficient { adopted: i64, alternative: i64 },
    /// Equal ranks: base plus fiber exceeds the dimension formula by `d−1`.
    EqualRankAccountingGap {
        formula_dim: i64,
        accounting_dim: i64,
        gap: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportInput {
    pub triple: TripleType,
    pub genus: Genus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeReport {
    pub input: ReportInput,
    pub bounds: Vec<AlphaBound>,
    /// For `n₁ < n₂`, the thresholds of the dual type.
    pub dual_bounds: Option<Vec<AlphaBound>>,
    pub window: Window,
    pub walls: Vec<CriticalValue>,
    pub chambers: Vec<ChamberReport>,
    pub wall_analyses: Vec<WallAnalysis>,
    pub endpoint_models: EndpointModels,
    pub large_alpha: ModelDescriptor,
    pub theorem_flags: TheoremFlags,
    pub known_inconsistencies: Vec<KnownInconsistency>,
    pub codim_check: CodimReport,
}

impl TypeReport {
    /// No internal check failed.
    pub fn consistent(&self) -> bool {
        self.codim_check.passed()
    }
}

fn theorem_flags(t: &TripleType, g: Genus) -> TheoremFlags {
    let am = alpha_m(t);
    let big = alpha_max(t);
    let two_g = Rational::from(g.canonical_degree());
    let lower = am.clone().max(two_g.clone());
    let stable_range = (Extended::Finite(lower.clone()) < big).then(|| StableRange {
        lower_inclusive: two_g > am,
        lower,
        upper: big.clone(),
    });
    let gcd_condition = !alpha_independent_possible(t);
    let full = if !t.equal_ranks()
        && gcd_condition
        && am < two_g
        && Extended::Finite(two_g.clone()) < big
    {
        Claim::Asserted
    } else {
        Claim::NotCovered
    };
    TheoremFlags {
        alpha_m_nonempty_irreducible: Claim::Asserted,
        alpha_max_nonempty_irreducible: if t.equal_ranks() {
            Claim::NotCovered
        } else {
            Claim::Asserted
        },
        stable_range,
        gcd_condition,
        full_moduli_irreducible_generic: full,
        canonical_degree_generic: integer_genericity(t, g.canonical_degree()),
    }
}

fn known_inconsistencies(t: &TripleType, g: Genus, large: &ModelDescriptor) -> Vec<KnownInconsistency> {
    let mut out = Vec::new();
    if !t.equal_ranks() && t.mu1() > t.mu2() {
        let oriented = if t.n1() > t.n2() { *t } else { dualize(t) };
        let adopted = large_alpha_fiber_dim(&oriented, g).expect("regime checked");
        let alternative = fiber_dim_n1_coefficient(&oriented, g).expect("n1 > n2");
        out.push(KnownInconsistency::FiberCoefficient {
            adopted,
            alternative,
        });
    }
    if let Consistency::Inconsistent { gap } = large.consistency {
        out.push(KnownInconsistency::EqualRankAccountingGap {
            formula_dim: large.total_dim,
            accounting_dim: large.accounting_dim,
            gap,
        });
    }
    out
}

/// Assemble the full report for `t` at genus `g`.
pub fn build_report(t: &TripleType, g: Genus, opts: &ReportOptions) -> Result<TypeReport> {
    let (lo, hi) = if opts.beyond_stabilization {
        extended_window(t, opts.window_hi.clone())?
    } else {
        default_window(t)?
    };
    let walls = enumerate_critical_values(t, &lo, &hi)?;
    let big = alpha_max(t);
    let dim = moduli_dimension(t, g);
    let two_g = Rational::from(g.canonical_degree());
    let chambers = chambers_between(&lo, &big, &walls)
        .into_iter()
        .map(|chamber| {
            let covered = chamber.extends_above(&two_g);
            ChamberReport {
                chamber,
                dimension: dim,
                smooth: covered,
                nonempty_irreducible: if covered {
                    Claim::Asserted
                } else {
                    Claim::NotCovered
                },
            }
        })
        .collect();
    let mut wall_analyses = Vec::new();
    for w in &walls {
        if w.alpha_c > lo && Extended::Finite(w.alpha_c.clone()) < big {
            wall_analyses.push(enumerate_flip_decompositions(t, &w.alpha_c, g, opts.flips)?);
        }
    }
    let large_alpha = large_alpha_model(t, g)?;
    let known = known_inconsistencies(t, g, &large_alpha);
    Ok(TypeReport {
        input: ReportInput { triple: *t, genus: g },
        bounds: all_bounds(t),
        dual_bounds: (t.n1() < t.n2()).then(|| all_bounds(&dualize(t))),
        window: Window {
            lo,
            hi,
            beyond_stabilization: opts.beyond_stabilization,
        },
        walls,
        chambers,
        wall_analyses,
        endpoint_models: EndpointModels {
            alpha_m: alpha_m_model(t, g),
            alpha_max: alpha_max_model(t, g),
        },
        large_alpha,
        theorem_flags: theorem_flags(t, g),
        known_inconsistencies: known,
        codim_check: verify_codim_theorem_with(t, g, opts.flips)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    CsvWalls,
    PlotData,
}

impl std::str::FromStr for Format {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv_walls" | "csv-walls" => Ok(Format::CsvWalls),
            "plotdata" => Ok(Format::PlotData),
            _ => Err(crate::error::Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

fn write_extended_f64(w: &mut impl Write, v: &Extended<Rational>) -> std::io::Result<()> {
    match v {
        Extended::Finite(r) => write!(w, "{}", r.to_f64()),
        Extended::Infinity => write!(w, "inf"),
    }
}

/// Serialize `report`. JSON is the complete report; `CsvWalls` has one row
/// `num,den,witness_count,min_codim` per wall (`min_codim` blank at window
/// endpoints, `inf` when no decomposition survives); `PlotData` is a
/// two-point step per chamber with lossy decimal `α`.
pub fn emit(report: &TypeReport, format: Format, mut w: impl Write) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, report)?;
            writeln!(w)?;
        }
        Format::CsvWalls => {
            for wall in &report.walls {
                let codim = report
                    .wall_analyses
                    .iter()
                    .find(|a| a.wall.alpha_c == wall.alpha_c)
                    .map(|a| match a.min_codim {
                        Extended::Finite(c) => c.to_string(),
                        Extended::Infinity => "inf".to_string(),
                    })
                    .unwrap_or_default();
                writeln!(
                    w,
                    "{},{},{},{}",
                    wall.alpha_c.numer(),
                    wall.alpha_c.denom(),
                    wall.witnesses.len(),
                    codim
                )?;
            }
        }
        Format::PlotData => {
            writeln!(w, "# lossy: alpha values are decimal approximations")?;
            writeln!(w, "# alpha dimension")?;
            for c in &report.chambers {
                writeln!(w, "{} {}", c.chamber.lower.to_f64(), c.dimension)?;
                write_extended_f64(&mut w, &c.chamber.upper)?;
                writeln!(w, " {}", c.dimension)?;
            }
        }
    }
    Ok(())
}

pub fn parse_json(r: impl Read) -> Result<TypeReport> {
    Ok(serde_json::from_reader(r)?)
}
