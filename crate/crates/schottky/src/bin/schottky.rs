//! Command-line front end: every subcommand reads flags, dispatches into
//! the library, and emits a machine-readable JSON report (default) or a
//! human-readable table. Exit codes: 0 success, 2 validation error with a
//! single-line `error[CODE]: ...` diagnostic on stderr, 3 for an
//! inconclusive Schottky test (so calibration scripts can branch on it).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use schottky::degrees;
use schottky::io::{
    self, BoundReportFile, DegreeReportFile, JetFile, KpReportFile, NullstellensatzFile,
    PeriodMatrixFile, RankReportFile, RelationReportFile,
};
use schottky::kp;
use schottky::theta::{self, PeriodMatrix, TruncationPolicy};
use schottky::{Error, Result};

const SAMPLE_SPREAD: f64 = 0.5;

#[derive(Parser)]
#[command(
    name = "schottky",
    version,
    about = "Theta constants, a KP-based Schottky test, and exact degree formulas"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Exact degree table (level index, intersection numbers, degrees, ratios)
    Degrees {
        #[arg(long)]
        g: u32,
        #[arg(long, value_enum, default_value_t = OutputMode::Json)]
        output: OutputMode,
    },
    /// Explicit upper bound for the Jacobian-locus degree
    Bound {
        #[arg(long)]
        g: u32,
        /// Weil-Petersson volume constant as `p/q` or `p`
        #[arg(long)]
        c: String,
        #[arg(long, value_enum, default_value_t = OutputMode::Json)]
        output: OutputMode,
    },
    /// Effective-Nullstellensatz problem sizes K and L
    NssSizes {
        #[arg(long)]
        g: u32,
        #[arg(long, value_enum, default_value_t = OutputMode::Json)]
        output: OutputMode,
    },
    /// Evaluate theta constants and their derivatives at a period matrix
    ThetaEval {
        #[arg(long)]
        g: Option<usize>,
        /// Period matrix JSON file; sampled from --seed when absent
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Truncation tolerance (absolute tail bound per component)
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value_t = OutputMode::Json)]
        output: OutputMode,
    },
    /// KP-based Schottky test (exit 3 when inconclusive)
    KpTest {
        #[arg(long)]
        g: Option<usize>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long = "n-starts")]
        n_starts: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputMode::Json)]
        output: OutputMode,
    },
    /// Rank of the matrix of theta constants and first derivatives
    RankTest {
        #[arg(long)]
        g: Option<usize>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value_t = OutputMode::Json)]
        output: OutputMode,
    },
    /// Evaluate a homogeneous polynomial at sampled normalized theta vectors
    RelationTest {
        #[arg(long)]
        g: usize,
        /// Polynomial JSON file ({"monomials": [{"exps": [...], "coef": [re, im]}]})
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 16)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutputMode::Json)]
        output: OutputMode,
    },
    /// Emit a deterministically sampled period matrix
    Sample {
        #[arg(long)]
        g: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutputMode::Json)]
        output: OutputMode,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            if err.use_stderr() {
                let first = err.to_string();
                let line = first.lines().next().unwrap_or("invalid arguments");
                eprintln!("error[BAD_ARGS]: {line}");
                return ExitCode::from(2);
            }
            // --help / --version go to stdout with success
            print!("{err}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error[{}]: {}", err.code(), err);
            ExitCode::from(2)
        }
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::BadInput(format!("cannot read {}: {e}", path.display())))
}

/// Period matrix from `--input` when given, otherwise sampled from the seed.
fn resolve_matrix(g: Option<usize>, input: &Option<PathBuf>, seed: u64) -> Result<PeriodMatrix> {
    match input {
        Some(path) => {
            let pm = io::read_period_matrix(&read_file(path)?)?;
            if let Some(g) = g {
                if g != pm.genus() {
                    return Err(Error::BadInput(format!(
                        "--g {g} conflicts with the input file's genus {}",
                        pm.genus()
                    )));
                }
            }
            Ok(pm)
        }
        None => {
            let g = g.ok_or_else(|| Error::BadInput("--g is required without --input".into()))?;
            theta::sample_siegel(g, seed, SAMPLE_SPREAD)
        }
    }
}

fn policy_with(tol: Option<f64>) -> TruncationPolicy {
    match tol {
        Some(tol) => TruncationPolicy::with_tol(tol),
        None => TruncationPolicy::default(),
    }
}

fn rational_str(r: &degrees::ExactRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn opt_rational_str(r: &Option<degrees::ExactRational>) -> String {
    r.as_ref().map_or_else(|| "absent".into(), rational_str)
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Degrees { g, output } => {
            let report = degrees::degree_report(g)?;
            match output {
                OutputMode::Json => {
                    println!(
                        "{}",
                        io::to_json_string(&DegreeReportFile::from_report(&report))
                    );
                }
                OutputMode::Table => {
                    println!("genus                     {}", report.g);
                    println!("level index               {}", report.level_index);
                    println!(
                        "lambda top (A_g)          {}",
                        rational_str(&report.lambda_top_ag)
                    );
                    println!(
                        "deg Th(A_g)               {}",
                        rational_str(&report.deg_th_ag)
                    );
                    println!(
                        "deg Th(J_g)               {}",
                        opt_rational_str(&report.deg_th_jg)
                    );
                    println!(
                        "implied lambda top (M_g)  {}",
                        opt_rational_str(&report.implied_lambda_top_mg)
                    );
                    println!(
                        "deg ratio J/A             {}",
                        opt_rational_str(&report.ratio_j_over_a)
                    );
                    println!(
                        "reducible-locus ratio     {}",
                        opt_rational_str(&report.reducible_ratio)
                    );
                }
            }
            Ok(0)
        }
        Command::Bound { g, c, output } => {
            let c = degrees::parse_rational(&c)?;
            let report = degrees::degree_bound(g, &c)?;
            match output {
                OutputMode::Json => {
                    println!(
                        "{}",
                        io::to_json_string(&BoundReportFile::from_report(&report))
                    );
                }
                OutputMode::Table => {
                    println!("genus         {}", report.g);
                    println!("c             {}", rational_str(&report.c_input));
                    println!("C = 125c/64   {}", rational_str(&report.big_c));
                    println!("lambda bound  {}", rational_str(&report.lambda_bound));
                    println!("degree bound  {}", rational_str(&report.degree_bound));
                }
            }
            Ok(0)
        }
        Command::NssSizes { g, output } => {
            if g < 1 {
                return Err(Error::BadInput("genus must be at least 1".into()));
            }
            let sizes = degrees::nullstellensatz_sizes(g);
            match output {
                OutputMode::Json => {
                    println!(
                        "{}",
                        io::to_json_string(&NullstellensatzFile::from_sizes(&sizes))
                    );
                }
                OutputMode::Table => {
                    println!("genus       {}", sizes.g);
                    println!("equations   M = {}", sizes.m);
                    println!("variables   N = {}", sizes.n_vars);
                    println!("degree      d = {}", sizes.d);
                    println!("unknowns    K = {}", sizes.k);
                    println!("conditions  L = {}", sizes.l);
                }
            }
            Ok(0)
        }
        Command::ThetaEval {
            g,
            input,
            seed,
            tol,
            output,
        } => {
            let pm = resolve_matrix(g, &input, seed)?;
            let jet = theta::theta_jet(&pm, &policy_with(tol))?;
            match output {
                OutputMode::Json => {
                    println!("{}", io::to_json_string(&JetFile::from_jet(&jet)));
                }
                OutputMode::Table => {
                    println!("genus      {}", jet.genus());
                    println!("radius     {}", jet.radius_used());
                    println!("tail bound {:.3e}", jet.tail_bound());
                    for b in 0..jet.num_characteristics() {
                        let v = jet.value(b);
                        let gnorm = kp::residual_norm(jet.grad_row(b));
                        println!(
                            "char {b:3}  theta = {:+.12e} {:+.12e} i   |grad| = {:.6e}",
                            v.re, v.im, gnorm
                        );
                    }
                }
            }
            Ok(0)
        }
        Command::KpTest {
            g,
            input,
            seed,
            tol,
            n_starts,
            output,
        } => {
            let pm = resolve_matrix(g, &input, seed)?;
            let jet = theta::theta_jet(&pm, &policy_with(tol))?;
            let mut config = kp::SolverConfig {
                seed,
                ..kp::SolverConfig::default()
            };
            if let Some(n) = n_starts {
                config.n_starts = n;
            }
            let report = kp::strict_min(&jet, &config)?;
            match output {
                OutputMode::Json => {
                    println!(
                        "{}",
                        io::to_json_string(&KpReportFile::from_report(&report))
                    );
                }
                OutputMode::Table => {
                    println!("decision          {}", report.decision.as_str());
                    println!(
                        "strict residual   {:.6e} (/scale {:.6e})",
                        report.strict_residual,
                        report.strict_residual / report.scale
                    );
                    println!(
                        "relaxed residual  {:.6e} (/scale {:.6e})",
                        report.relaxed_residual,
                        report.relaxed_residual / report.scale
                    );
                    println!("scale             {:.6e}", report.scale);
                    println!("sasaki rank       {}", report.sasaki_rank);
                }
            }
            if report.decision == kp::Decision::Inconclusive {
                Ok(3)
            } else {
                Ok(0)
            }
        }
        Command::RankTest {
            g,
            input,
            seed,
            tol,
            output,
        } => {
            let pm = resolve_matrix(g, &input, seed)?;
            let jet = theta::theta_jet(&pm, &policy_with(tol))?;
            let matrix = kp::sasaki_matrix(&jet);
            let rank_tol = kp::default_rank_tol(jet.genus());
            let (rank, singular_values) = kp::rank_test(&matrix, rank_tol);
            let report = RankReportFile {
                g: jet.genus(),
                rows: matrix.nrows(),
                cols: matrix.ncols(),
                rank,
                tol: rank_tol,
                singular_values,
            };
            match output {
                OutputMode::Json => println!("{}", io::to_json_string(&report)),
                OutputMode::Table => {
                    println!("matrix      {} x {}", report.rows, report.cols);
                    println!(
                        "rank        {} (cutoff {:.3e} of sigma_max)",
                        report.rank, report.tol
                    );
                    let sv: Vec<String> = report
                        .singular_values
                        .iter()
                        .map(|s| format!("{s:.6e}"))
                        .collect();
                    println!("sigma       {}", sv.join("  "));
                }
            }
            Ok(0)
        }
        Command::RelationTest {
            g,
            input,
            samples,
            seed,
            output,
        } => {
            let poly = io::read_polynomial(&read_file(&input)?)?;
            let max_abs = kp::relation_test(&poly, g, samples, seed)?;
            let report = RelationReportFile {
                g,
                n_samples: samples,
                seed,
                degree: poly.degree().unwrap_or(0),
                max_abs,
            };
            match output {
                OutputMode::Json => println!("{}", io::to_json_string(&report)),
                OutputMode::Table => {
                    println!("genus     {}", report.g);
                    println!("samples   {}", report.n_samples);
                    println!("degree    {}", report.degree);
                    println!("max |P|   {:.6e}", report.max_abs);
                }
            }
            Ok(0)
        }
        Command::Sample { g, seed, output } => {
            let pm = theta::sample_siegel(g, seed, SAMPLE_SPREAD)?;
            let file = PeriodMatrixFile::from_matrix(&pm);
            match output {
                OutputMode::Json => println!("{}", io::to_json_string(&file)),
                OutputMode::Table => {
                    println!("genus {g}, seed {seed}, spread {SAMPLE_SPREAD}");
                    for i in 0..g {
                        let row: Vec<String> = (0..g)
                            .map(|j| {
                                let z = pm.entry(i, j);
                                format!("{:+.6} {:+.6}i", z.re, z.im)
                            })
                            .collect();
                        println!("  [{}]", row.join(", "));
                    }
                }
            }
            Ok(0)
        }
    }
}
