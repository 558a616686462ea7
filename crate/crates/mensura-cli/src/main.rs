//! `mensura` command-line interface: parse set expressions, dispatch to the
//! library, and print plain-text or JSON reports.
//!
//! Exit codes: 0 on success, 1 on a domain error (unbounded target, depth
//! cap, hypothesis violation, …), 2 on a parse error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use mensura::{
    convergence_demo, diag_unindex, disjointify_prefix, epsilon_cover, eval_expr,
    finite_subcover, measure_sum, parse_expr, parse_interval_literal, stage_with_cap,
    ConvergenceMode, Cover, ExtReal, Family, FnSeq, Interval, IntervalSet, Rational,
    DEFAULT_DEPTH_CAP,
};

#[derive(Parser)]
#[command(name = "mensura", version, about = "Exact interval-set algebra and outer-measure toolkit")]
struct Cli {
    /// Emit a machine-readable JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact measure of a set expression.
    Measure { expr: String },
    /// Canonical disjoint form of a set expression.
    Normalize { expr: String },
    /// Epsilon-inflation open cover of a bounded set, with verification.
    Cover {
        expr: String,
        /// Positive rational inflation budget, e.g. 1/2.
        #[arg(long)]
        eps: String,
    },
    /// Greedy finite subcover of a closed bounded interval.
    Subcover {
        /// Expression evaluating to a single closed bounded interval.
        expr: String,
        /// Bounded open interval literal; repeat to build the cover list.
        #[arg(long = "with", value_name = "INTERVAL", required = true)]
        with: Vec<String>,
    },
    /// Middle-thirds construction at a given depth.
    Cantor {
        #[arg(long)]
        depth: u32,
        /// Depth cap guarding the exponential part count.
        #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
        cap: u32,
    },
    /// Diagonal disjointification prefix of a built-in sequence family.
    Disjointify {
        /// One of: unit-steps, cantor-complement, harmonic-gaps, constant-unit.
        #[arg(long)]
        family: String,
        /// Number of diagonal entries to enumerate.
        #[arg(long)]
        depth: u64,
    },
    /// Convergence demonstration for a registered function family.
    Converge {
        /// One of: power-n, exp-decay, compound-decay, tent-moving.
        #[arg(long)]
        family: String,
        /// One of: bct, mct, dct.
        #[arg(long)]
        mode: String,
        #[arg(long = "n-max")]
        n_max: u32,
        /// Midpoint quadrature cells.
        #[arg(long = "quad", default_value_t = 10_000)]
        quad: usize,
        /// Truncation point for dominated convergence (defaults to the
        /// dominator's tail budget).
        #[arg(long = "trunc")]
        trunc: Option<f64>,
        /// Also write the table as CSV (columns n,integral,limit,gap).
        #[arg(long = "csv")]
        csv: Option<PathBuf>,
    },
}

struct AppError {
    code: u8,
    message: String,
}

impl AppError {
    fn domain(message: impl Into<String>) -> AppError {
        AppError {
            code: 1,
            message: message.into(),
        }
    }

    fn parse(input: &str, err: impl std::fmt::Display) -> AppError {
        AppError {
            code: 2,
            message: format!("in {input:?}: {err}"),
        }
    }
}

#[derive(Serialize)]
struct Report<T: Serialize> {
    command: &'static str,
    input: String,
    result: T,
    exact: bool,
}

fn emit<T: Serialize>(json: bool, report: Report<T>, plain: String) {
    if json {
        println!(
            "{}",
            serde_json::to_string(&report).expect("report serialization cannot fail")
        );
    } else {
        println!("{plain}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn eval_input(expr: &str) -> Result<IntervalSet, AppError> {
    let ast = parse_expr(expr).map_err(|e| AppError::parse(expr, e))?;
    Ok(eval_expr(&ast))
}

fn intervals_as_strings(parts: &[Interval]) -> Vec<String> {
    parts.iter().map(|p| p.to_string()).collect()
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Measure { expr } => {
            let set = eval_input(&expr)?;
            let measure = set.measure();
            #[derive(Serialize)]
            struct R {
                measure: String,
            }
            emit(
                cli.json,
                Report {
                    command: "measure",
                    input: expr,
                    result: R {
                        measure: measure.to_string(),
                    },
                    exact: true,
                },
                measure.to_string(),
            );
        }
        Command::Normalize { expr } => {
            let set = eval_input(&expr)?;
            #[derive(Serialize)]
            struct R {
                parts: Vec<String>,
                measure: String,
            }
            emit(
                cli.json,
                Report {
                    command: "normalize",
                    input: expr,
                    result: R {
                        parts: intervals_as_strings(set.parts()),
                        measure: set.measure().to_string(),
                    },
                    exact: true,
                },
                set.to_string(),
            );
        }
        Command::Cover { expr, eps } => {
            let set = eval_input(&expr)?;
            let eps_value = parse_positive_rational(&eps)?;
            let cover = epsilon_cover(&set, &eps_value).map_err(|e| AppError::domain(e.to_string()))?;
            let report = mensura::verify_cover(&cover);
            #[derive(Serialize)]
            struct R {
                intervals: Vec<String>,
                covers: bool,
                total: String,
                excess: Option<String>,
            }
            let mut plain = String::new();
            let _ = writeln!(plain, "cover: {}", cover.intervals().iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", "));
            let _ = writeln!(plain, "covers: {}", report.covers);
            let _ = write!(plain, "total: {}", report.total);
            if let Some(x) = &report.excess {
                let _ = write!(plain, "\nexcess: {x}");
            }
            emit(
                cli.json,
                Report {
                    command: "cover",
                    input: format!("{expr} eps={eps}"),
                    result: R {
                        intervals: intervals_as_strings(cover.intervals()),
                        covers: report.covers,
                        total: report.total.to_string(),
                        excess: report.excess.as_ref().map(|x| x.to_string()),
                    },
                    exact: true,
                },
                plain,
            );
        }
        Command::Subcover { expr, with } => {
            let set = eval_input(&expr)?;
            let [target] = set.parts() else {
                return Err(AppError::domain(
                    "subcover target must evaluate to a single closed bounded interval",
                ));
            };
            let mut cover_list = Vec::with_capacity(with.len());
            for text in &with {
                cover_list.push(
                    parse_interval_literal(text).map_err(|e| AppError::parse(text, e))?,
                );
            }
            let cover = Cover::new(cover_list, set.clone())
                .map_err(|e| AppError::domain(e.to_string()))?;
            let chosen = finite_subcover(target, &cover)
                .map_err(|e| AppError::domain(e.to_string()))?;
            let total = measure_sum(chosen.iter().map(|i| i.length()));
            let target_length = target.length();
            #[derive(Serialize)]
            struct R {
                chosen: Vec<String>,
                total: String,
                target_length: String,
                bound_holds: bool,
            }
            let plain = format!(
                "chosen: {}\ntotal: {} >= target length {}",
                chosen.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", "),
                total,
                target_length,
            );
            emit(
                cli.json,
                Report {
                    command: "subcover",
                    input: expr,
                    result: R {
                        chosen: intervals_as_strings(&chosen),
                        total: total.to_string(),
                        bound_holds: total >= target_length,
                        target_length: target_length.to_string(),
                    },
                    exact: true,
                },
                plain,
            );
        }
        Command::Cantor { depth, cap } => {
            let stage = stage_with_cap(depth, cap).map_err(|e| AppError::domain(e.to_string()))?;
            #[derive(Serialize)]
            struct R {
                depth: u32,
                remaining_parts: usize,
                removed_parts: usize,
                remaining_measure: String,
                removed_measure: String,
            }
            let r = R {
                depth,
                remaining_parts: stage.remaining.part_count(),
                removed_parts: stage.removed.part_count(),
                remaining_measure: stage.remaining.measure().to_string(),
                removed_measure: stage.removed.measure().to_string(),
            };
            let plain = format!(
                "depth {}: {} remaining parts (measure {}), {} removed parts (measure {})",
                r.depth, r.remaining_parts, r.remaining_measure, r.removed_parts, r.removed_measure,
            );
            emit(
                cli.json,
                Report {
                    command: "cantor",
                    input: format!("depth={depth}"),
                    result: r,
                    exact: true,
                },
                plain,
            );
        }
        Command::Disjointify { family, depth } => {
            let fam = Family::from_name(&family)
                .ok_or_else(|| AppError::domain(format!("unknown family {family:?}")))?;
            let rows_needed = (1..=depth).map(|m| diag_unindex(m).row).max().unwrap_or(0);
            if fam == Family::CantorComplement && rows_needed > 20 {
                return Err(AppError::domain(format!(
                    "depth {depth} needs {rows_needed} removal stages; stay at or below depth {}",
                    (20 * 21) / 2,
                )));
            }
            let entries = disjointify_prefix(&fam.seq(), depth);
            let lengths: Vec<String> = entries.iter().map(|e| e.length().to_string()).collect();
            let total = measure_sum(entries.iter().map(|e| e.length()));
            #[derive(Serialize)]
            struct R {
                family: String,
                entries: Vec<String>,
                lengths: Vec<String>,
                total_length: String,
                rows_consumed: u64,
            }
            let mut plain = String::new();
            for (k, e) in entries.iter().enumerate() {
                let _ = writeln!(plain, "K{} = {}", k + 1, e);
            }
            let _ = write!(plain, "total length: {total}");
            emit(
                cli.json,
                Report {
                    command: "disjointify",
                    input: format!("family={family} depth={depth}"),
                    result: R {
                        family: fam.name().to_string(),
                        entries: intervals_as_strings(&entries),
                        lengths,
                        total_length: total.to_string(),
                        rows_consumed: rows_needed,
                    },
                    exact: true,
                },
                plain,
            );
        }
        Command::Converge {
            family,
            mode,
            n_max,
            quad,
            trunc,
            csv,
        } => {
            let seq = FnSeq::registry(&family)
                .ok_or_else(|| AppError::domain(format!("unknown family {family:?}")))?;
            let mode = ConvergenceMode::from_name(&mode)
                .ok_or_else(|| AppError::domain(format!("unknown mode {mode:?}")))?;
            if n_max < seq.first_index() {
                return Err(AppError::domain(format!(
                    "family {family} starts at n = {}",
                    seq.first_index()
                )));
            }
            let table = convergence_demo(&seq, mode, n_max, quad, trunc)
                .map_err(|e| AppError::domain(e.to_string()))?;
            if let Some(path) = &csv {
                let mut out = String::from("n,integral,limit,gap\n");
                for row in &table.rows {
                    let _ = writeln!(
                        out,
                        "{},{},{},{}",
                        row.n, row.integral_estimate, row.limit_estimate, row.gap
                    );
                }
                std::fs::write(path, out)
                    .map_err(|e| AppError::domain(format!("cannot write {}: {e}", path.display())))?;
            }
            #[derive(Serialize)]
            struct Row {
                n: u32,
                integral: f64,
                limit: f64,
                gap: f64,
            }
            #[derive(Serialize)]
            struct Trunc {
                k: f64,
                tail_bound: f64,
            }
            #[derive(Serialize)]
            struct R {
                family: String,
                mode: String,
                tolerance: f64,
                rows: Vec<Row>,
                gap_shrank: bool,
                within_tolerance: bool,
                truncation: Option<Trunc>,
            }
            let mut plain = String::new();
            let _ = writeln!(plain, "n        integral        limit          gap");
            for row in &table.rows {
                let _ = writeln!(
                    plain,
                    "{:<8} {:<15.9} {:<14.9} {:.9}",
                    row.n, row.integral_estimate, row.limit_estimate, row.gap
                );
            }
            if let Some(t) = &table.truncation {
                let _ = writeln!(plain, "truncated at K = {} (tail bound {:.6})", t.k, t.tail_bound);
            }
            let _ = write!(
                plain,
                "gap shrank: {}; within tolerance {}: {}",
                table.gap_shrank, table.tolerance, table.within_tolerance
            );
            emit(
                cli.json,
                Report {
                    command: "converge",
                    input: format!("family={family} mode={mode} n-max={n_max}"),
                    result: R {
                        family: seq.name.to_string(),
                        mode: mode.to_string(),
                        tolerance: table.tolerance,
                        rows: table
                            .rows
                            .iter()
                            .map(|r| Row {
                                n: r.n,
                                integral: r.integral_estimate,
                                limit: r.limit_estimate,
                                gap: r.gap,
                            })
                            .collect(),
                        gap_shrank: table.gap_shrank,
                        within_tolerance: table.within_tolerance,
                        truncation: table
                            .truncation
                            .map(|t| Trunc {
                                k: t.k,
                                tail_bound: t.tail_bound,
                            }),
                    },
                    exact: false,
                },
                plain,
            );
        }
    }
    Ok(())
}

fn parse_positive_rational(text: &str) -> Result<Rational, AppError> {
    match text.parse::<ExtReal>() {
        Ok(ExtReal::Finite(q)) if q > Rational::from_integer(0.into()) => Ok(q),
        Ok(_) => Err(AppError::domain(format!(
            "eps must be a positive rational, got {text:?}"
        ))),
        Err(e) => Err(AppError::domain(format!("invalid eps {text:?}: {e}"))),
    }
}
