//! `triples`: wall-and-chamber computations for moduli of holomorphic triples.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use triples_core::bounds::all_bounds;
use triples_core::flips::{enumerate_flip_decompositions, interior_walls, FlipOptions};
use triples_core::higgs::{higgs_to_triple, milnor_wood_ok};
use triples_core::homological::moduli_dimension;
use triples_core::report::{build_report, emit, Format, ReportOptions};
use triples_core::selfcheck::{run_all, Sweep};
use triples_core::walls::{chambers_between, default_window, enumerate_critical_values, extended_window};
use triples_core::{
    bounds, Error, Genus, HiggsInvariants, Rational, TripleType, Vanishing,
};

const EXIT_DOMAIN: u8 = 2;
const EXIT_INCONSISTENT: u8 = 3;

#[derive(Parser)]
#[command(name = "triples", version, about = "Exact wall-and-chamber data for moduli of holomorphic triples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct TypeArgs {
    /// Rank of E1.
    #[arg(long)]
    n1: i64,
    /// Rank of E2.
    #[arg(long)]
    n2: i64,
    /// Degree of E1.
    #[arg(long, allow_hyphen_values = true)]
    d1: i64,
    /// Degree of E2.
    #[arg(long, allow_hyphen_values = true)]
    d2: i64,
    /// Genus of the curve (at least 2).
    #[arg(long, default_value_t = 2)]
    genus: i64,
}

impl TypeArgs {
    fn parse(&self) -> Result<(TripleType, Genus), Error> {
        Ok((
            TripleType::new(self.n1, self.n2, self.d1, self.d2)?,
            Genus::new(self.genus)?,
        ))
    }
}

#[derive(Args, Clone, Default)]
struct WindowArgs {
    /// Lower end of the alpha window, as `p/q`.
    #[arg(long, allow_hyphen_values = true)]
    window_lo: Option<Rational>,
    /// Upper end of the alpha window, as `p/q`.
    #[arg(long, allow_hyphen_values = true)]
    window_hi: Option<Rational>,
    /// Equal ranks: include walls above the stabilization threshold.
    #[arg(long)]
    beyond_stabilization: bool,
}

impl WindowArgs {
    fn resolve(&self, t: &TripleType) -> Result<(Rational, Rational), Error> {
        let (lo, hi) = if self.beyond_stabilization {
            extended_window(t, self.window_hi.clone())?
        } else {
            let (lo, hi) = default_window(t)?;
            (lo, self.window_hi.clone().unwrap_or(hi))
        };
        Ok((self.window_lo.clone().unwrap_or(lo), hi))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
    #[value(name = "csv_walls")]
    CsvWalls,
    Plotdata,
}

#[derive(Clone, Copy, ValueEnum)]
enum VanishingArg {
    GammaZero,
    BetaZero,
}

#[derive(Subcommand)]
enum Command {
    /// Named alpha thresholds.
    Bounds {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Critical values in a window.
    Walls {
        #[command(flatten)]
        ty: TypeArgs,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Chamber decomposition with per-chamber dimension.
    Chambers {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        beyond_stabilization: bool,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Flip decompositions at one wall, or at every interior wall.
    Flips {
        #[command(flatten)]
        ty: TypeArgs,
        /// The wall, as `p/q`.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<Rational>,
        /// Drop splits whose factors have empty moduli.
        #[arg(long)]
        strict_nonempty: bool,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Full report.
    Report {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        strict_nonempty: bool,
        #[arg(long)]
        beyond_stabilization: bool,
        #[arg(long, allow_hyphen_values = true)]
        window_hi: Option<Rational>,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        format: OutFormat,
    },
    /// U(p,q)-Higgs invariants: Milnor-Wood check and associated triple.
    Higgs {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, default_value_t = 2)]
        genus: i64,
        #[arg(long, value_enum, default_value_t = VanishingArg::GammaZero)]
        vanishing: VanishingArg,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Run the consistency checks over a bounded sweep of types.
    Selfcheck {
        #[arg(long, default_value_t = 4)]
        max_rank_sum: i64,
        #[arg(long, default_value_t = 4)]
        max_abs_degree: i64,
        /// Genera to check; repeatable.
        #[arg(long = "genus", default_values_t = vec![2, 3])]
        genera: Vec<i64>,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
}

enum Outcome {
    Ok,
    Inconsistent,
}

fn json_line(out: &mut impl Write, value: &impl serde::Serialize) -> Result<(), Error> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn unsupported(format: OutFormat, cmd: &str) -> Error {
    let name = format.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    Error::Domain(format!("format {name} is not available for `{cmd}`"))
}

fn run(cli: Cli, out: &mut impl Write) -> Result<Outcome, Error> {
    match cli.command {
        Command::Bounds { ty, format } => {
            let (t, _) = ty.parse()?;
            let b = all_bounds(&t);
            match format {
                OutFormat::Json => json_line(out, &b)?,
                OutFormat::Text => {
                    for x in &b {
                        writeln!(out, "{:?}\t{}", x.kind, x.value)?;
                    }
                    if t.n1() < t.n2() {
                        writeln!(out, "# n1 < n2: thresholds of the dual type")?;
                        for x in all_bounds(&triples_core::model::dualize(&t)) {
                            writeln!(out, "dual {:?}\t{}", x.kind, x.value)?;
                        }
                    }
                }
                f => return Err(unsupported(f, "bounds")),
            }
        }
        Command::Walls { ty, window, format } => {
            let (t, _) = ty.parse()?;
            let (lo, hi) = window.resolve(&t)?;
            let walls = enumerate_critical_values(&t, &lo, &hi)?;
            match format {
                OutFormat::Json => json_line(out, &walls)?,
                OutFormat::Text => {
                    for w in &walls {
                        let wit: Vec<_> = w
                            .witnesses
                            .iter()
                            .map(|x| format!("({},{},{})", x.n1p, x.n2p, x.s_prime))
                            .collect();
                        writeln!(out, "{}\t{}", w.alpha_c, wit.join(" "))?;
                    }
                }
                OutFormat::CsvWalls => {
                    for w in &walls {
                        writeln!(out, "{},{},{},", w.alpha_c.numer(), w.alpha_c.denom(), w.witnesses.len())?;
                    }
                }
                f => return Err(unsupported(f, "walls")),
            }
        }
        Command::Chambers {
            ty,
            beyond_stabilization,
            format,
        } => {
            let (t, g) = ty.parse()?;
            let window = WindowArgs {
                beyond_stabilization,
                ..WindowArgs::default()
            };
            let (lo, hi) = window.resolve(&t)?;
            let walls = enumerate_critical_values(&t, &lo, &hi)?;
            let ch = chambers_between(&lo, &bounds::alpha_max(&t), &walls);
            let dim = moduli_dimension(&t, g);
            match format {
                OutFormat::Json => json_line(out, &ch)?,
                OutFormat::Text => {
                    for c in &ch {
                        writeln!(out, "({}, {})\tdim {}", c.lower, c.upper, dim)?;
                    }
                }
                f => return Err(unsupported(f, "chambers")),
            }
        }
        Command::Flips {
            ty,
            alpha,
            strict_nonempty,
            format,
        } => {
            let (t, g) = ty.parse()?;
            let opts = FlipOptions { strict_nonempty };
            let targets = match alpha {
                Some(a) => vec![a],
                None => interior_walls(&t)?.into_iter().map(|w| w.alpha_c).collect(),
            };
            let analyses = targets
                .iter()
                .map(|a| enumerate_flip_decompositions(&t, a, g, opts))
                .collect::<Result<Vec<_>, _>>()?;
            match format {
                OutFormat::Json => json_line(out, &analyses)?,
                OutFormat::Text => {
                    for wa in &analyses {
                        writeln!(out, "wall {}\tmin codim {}", wa.wall.alpha_c, wa.min_codim)?;
                        for d in wa.decompositions() {
                            writeln!(
                                out,
                                "  {:?}\tsub {}\tquot {}\tfiber {}\tstratum {}\tcodim {}\tambient {}",
                                d.side, d.sub, d.quot, d.fiber_dim, d.stratum_dim, d.codim_bound, d.ambient_dim
                            )?;
                        }
                        for d in &wa.discarded {
                            writeln!(
                                out,
                                "  discarded ({:?})\tsub {}\tquot {}",
                                d.reason, d.decomposition.sub, d.decomposition.quot
                            )?;
                        }
                    }
                }
                f => return Err(unsupported(f, "flips")),
            }
        }
        Command::Report {
            ty,
            strict_nonempty,
            beyond_stabilization,
            window_hi,
            format,
        } => {
            let (t, g) = ty.parse()?;
            let opts = ReportOptions {
                flips: FlipOptions { strict_nonempty },
                beyond_stabilization,
                window_hi,
            };
            let report = build_report(&t, g, &opts)?;
            let fmt = match format {
                OutFormat::Json => Format::Json,
                OutFormat::CsvWalls => Format::CsvWalls,
                OutFormat::Plotdata => Format::PlotData,
                f => return Err(unsupported(f, "report")),
            };
            emit(&report, fmt, &mut *out)?;
            if !report.consistent() {
                return Ok(Outcome::Inconsistent);
            }
        }
        Command::Higgs {
            p,
            q,
            a,
            b,
            genus,
            vanishing,
            format,
        } => {
            let h = HiggsInvariants::new(p, q, a, b, Genus::new(genus)?)?;
            let (ok, margin) = milnor_wood_ok(&h);
            let v = match vanishing {
                VanishingArg::GammaZero => Vanishing::GammaZero,
                VanishingArg::BetaZero => Vanishing::BetaZero,
            };
            let (t, alpha) = higgs_to_triple(&h, v);
            let dim = moduli_dimension(&t, h.genus());
            let mirror = v == Vanishing::BetaZero;
            match format {
                OutFormat::Json => json_line(
                    out,
                    &serde_json::json!({
                        "milnor_wood_ok": ok,
                        "margin": margin,
                        "triple": t,
                        "alpha": alpha,
                        "dimension": dim,
                        "mirror_construction": mirror,
                    }),
                )?,
                OutFormat::Text => {
                    writeln!(out, "milnor-wood\t{}\tmargin {}", if ok { "ok" } else { "violated" }, margin)?;
                    writeln!(out, "triple\t{t}\talpha {alpha}")?;
                    writeln!(out, "dimension\t{dim}")?;
                    if mirror {
                        writeln!(out, "note\tbeta = 0 assignment is the mirror of the gamma = 0 case")?;
                    }
                }
                f => return Err(unsupported(f, "higgs")),
            }
        }
        Command::Selfcheck {
            max_rank_sum,
            max_abs_degree,
            genera,
            format,
        } => {
            let sweep = Sweep {
                max_rank_sum,
                max_abs_degree,
                genera,
            };
            let results = run_all(&sweep)?;
            match format {
                OutFormat::Json => json_line(out, &results)?,
                OutFormat::Text => {
                    for r in &results {
                        let status = if r.passed() { "PASS" } else { "FAIL" };
                        writeln!(out, "{status}\t{}\t{} cases, {} failures", r.name, r.cases, r.failures)?;
                        for s in &r.samples {
                            writeln!(out, "\t{s}")?;
                        }
                    }
                }
                f => return Err(unsupported(f, "selfcheck")),
            }
            if results.iter().any(|r| !r.passed()) {
                return Ok(Outcome::Inconsistent);
            }
        }
    }
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Inconsistent) => {
            let _ = out.flush();
            eprintln!("triples: internal consistency check failed");
            ExitCode::from(EXIT_INCONSISTENT)
        }
        Err(e) => {
            let _ = out.flush();
            eprintln!("triples: {e}");
            ExitCode::from(EXIT_DOMAIN)
        }
    }
}
