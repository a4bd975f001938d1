use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use rayon::prelude::*;
use serde::Serialize;

use wzd_core::graphcore::{self, ExportFormat};
use wzd_core::joinfile::{self, JoinInput};
use wzd_core::oracle::{self, Status, VerificationReport, VerifyOptions};
use wzd_core::spectra::{self, SpectrumMultiset};
use wzd_core::Error;

use crate::{Cli, Command, Format, NRange};

const JOIN_CHECK_TOL: f64 = oracle::NUMERIC_MATCH_TOL;

/// What a command produced: text for stdout plus the exit status.
enum Outcome {
    Ok(String),
    Failed(String),
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Input(_)
            | Error::UnknownFormat(_)
            | Error::Contract(_)
            | Error::Domain { .. } => CliError::Usage(e.to_string()),
            other => CliError::Core(other),
        }
    }
}

pub fn run(cli: &Cli) -> ExitCode {
    let result = match &cli.command {
        Command::Spectrum { n } => cmd_spectrum(*n, cli.format),
        Command::Graph { n, classes } => cmd_graph(*n, cli.format, *classes),
        Command::Verify { range } => return cmd_verify(*range, cli),
        Command::Table { range } => cmd_table(*range, cli),
        Command::Join { file, check } => cmd_join(file, *check, cli.format),
    };
    let mut stdout = io::stdout().lock();
    match result {
        Ok(Outcome::Ok(text)) => {
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Ok(Outcome::Failed(text)) => {
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => 2,
                CliError::Core(_) => 1,
            })
        }
    }
}

fn unsupported(format: Format, command: &str) -> CliError {
    CliError::Usage(format!("format {format:?} is not supported by `{command}`").to_lowercase())
}

fn cmd_spectrum(n: u64, format: Format) -> Result<Outcome, CliError> {
    let spectrum = SpectrumMultiset::Exact(spectra::wzd_spectrum_closed_form(n)?);
    let text = match format {
        Format::Json => format!("{}\n", spectrum.to_json(Some(n))),
        Format::Text if spectrum.order() == 0 => {
            format!("n = {n}: no zero-divisors; spectrum empty\n")
        }
        Format::Text => format!(
            "Laplacian spectrum of WΓ(Z_{n}), {} vertices\n{spectrum}",
            spectrum.order()
        ),
        other => return Err(unsupported(other, "spectrum")),
    };
    Ok(Outcome::Ok(text))
}

fn cmd_graph(n: u64, format: Format, classes: bool) -> Result<Outcome, CliError> {
    let graph = graphcore::build_structural_wzd(n)?;
    let partition = graphcore::divisor_classes(n)?;
    let listing = partition.to_string();
    let text = match format {
        Format::Text => {
            let mut out = format!(
                "WΓ(Z_{n}): {} vertices, {} edges\n",
                graph.order(),
                graph.edge_count()
            );
            if classes {
                out.push_str("divisor classes:\n");
                for line in listing.lines() {
                    let _ = writeln!(out, "  {line}");
                }
                out.push_str("adjacency:\n");
            }
            for (i, nbrs) in graph.neighbors().iter().enumerate() {
                let labels: Vec<String> = nbrs
                    .iter()
                    .map(|&j| graph.labels()[j].to_string())
                    .collect();
                let _ = writeln!(out, "  {}: {}", graph.labels()[i], labels.join(" "));
            }
            out
        }
        Format::Json => {
            let body = graphcore::export_graph(&graph, ExportFormat::Json);
            if classes {
                let graph_value: serde_json::Value =
                    serde_json::from_str(&body).expect("exported graph is valid json");
                #[derive(Serialize)]
                struct Doc<'a> {
                    graph: serde_json::Value,
                    classes: &'a [graphcore::DivisorClass],
                }
                let doc = Doc {
                    graph: graph_value,
                    classes: &partition.classes,
                };
                format!("{}\n", serde_json::to_string(&doc).expect("serializable"))
            } else {
                format!("{body}\n")
            }
        }
        Format::Dot | Format::Csv => {
            let (fmt, comment) = if format == Format::Dot {
                (ExportFormat::Dot, "// ")
            } else {
                (ExportFormat::Csv, "# ")
            };
            let mut out = String::new();
            if classes {
                for line in listing.lines() {
                    let _ = writeln!(out, "{comment}{line}");
                }
            }
            out.push_str(&graphcore::export_graph(&graph, fmt));
            out
        }
    };
    Ok(Outcome::Ok(text))
}

fn verify_options(cli: &Cli) -> VerifyOptions {
    VerifyOptions {
        integrality_tol: cli.tol,
        max_order: cli.max_order,
        ..VerifyOptions::default()
    }
}

/// Evaluates `f` over the range on a pool of `jobs` threads, handing results
/// to `emit` in ascending `n`.
fn sweep<T: Send>(
    range: NRange,
    jobs: u16,
    f: impl Fn(u64) -> T + Sync,
    mut emit: impl FnMut(u64, T),
) -> Result<(), CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs as usize)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let chunk = (jobs as u64) * 4;
    let mut lo = range.lo;
    while lo <= range.hi {
        let hi = range.hi.min(lo.saturating_add(chunk - 1));
        let results: Vec<(u64, T)> =
            pool.install(|| (lo..=hi).into_par_iter().map(|n| (n, f(n))).collect());
        for (n, r) in results {
            emit(n, r);
        }
        if hi == u64::MAX {
            break;
        }
        lo = hi + 1;
    }
    Ok(())
}

fn cmd_verify(range: NRange, cli: &Cli) -> ExitCode {
    if !matches!(cli.format, Format::Text | Format::Json) {
        eprintln!("error: {}", unsupported(cli.format, "verify"));
        return ExitCode::from(2);
    }
    let opts = verify_options(cli);
    let json = cli.format == Format::Json;
    let (mut pass, mut degenerate, mut fail) = (0u64, 0u64, 0u64);
    let mut stdout = io::stdout().lock();
    let result = sweep(
        range,
        cli.jobs,
        |n| oracle::verify_spectrum(n, &opts),
        |n, report: Result<VerificationReport, Error>| {
            let line = match report {
                Ok(r) => {
                    match r.status {
                        Status::Pass => pass += 1,
                        Status::DegenerateEmpty => degenerate += 1,
                        Status::Fail => fail += 1,
                    }
                    if json {
                        r.to_json()
                    } else {
                        r.to_string()
                    }
                }
                Err(e) => {
                    fail += 1;
                    if json {
                        serde_json::json!({"n": n, "status": "FAIL", "error": e.to_string()})
                            .to_string()
                    } else {
                        format!("{n} FAIL error: {e}")
                    }
                }
            };
            let _ = writeln!(stdout, "{line}");
        },
    );
    if let Err(e) = result {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let total = pass + degenerate + fail;
    let summary = if json {
        serde_json::json!({"summary": {"checked": total, "pass": pass, "degenerate": degenerate, "fail": fail}})
            .to_string()
    } else {
        format!("summary: {total} checked, {pass} pass, {degenerate} degenerate, {fail} fail")
    };
    let _ = writeln!(stdout, "{summary}");
    if fail == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

#[derive(Debug, Serialize)]
struct TableRow {
    n: u64,
    vertices: usize,
    edges: usize,
    eigenvalues: Vec<u64>,
    multiplicities: Vec<usize>,
    algebraic_connectivity: Option<u64>,
    spectral_radius: Option<u64>,
    integral: bool,
}

fn table_row(n: u64, tol: f64) -> Result<TableRow, Error> {
    let closed = spectra::wzd_spectrum_closed_form(n)?;
    let graph = graphcore::build_structural_wzd(n)?;
    let numeric = oracle::symmetric_eigenvalues(&oracle::laplacian_matrix(&graph).to_f64_rows())?;
    let (integral, _) = oracle::integrality_check(&numeric, tol)?;
    Ok(TableRow {
        n,
        vertices: graph.order(),
        edges: graph.edge_count(),
        eigenvalues: closed.entries().map(|(v, _)| v).collect(),
        multiplicities: closed.entries().map(|(_, m)| m).collect(),
        algebraic_connectivity: closed.algebraic_connectivity().ok(),
        spectral_radius: closed.spectral_radius().ok(),
        integral,
    })
}

fn join_bar<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join("|")
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn cmd_table(range: NRange, cli: &Cli) -> Result<Outcome, CliError> {
    let mut rows = Vec::new();
    let mut err = None;
    sweep(
        range,
        cli.jobs,
        |n| table_row(n, cli.tol),
        |_, r| match r {
            Ok(row) => rows.push(row),
            Err(e) => {
                err.get_or_insert(e);
            }
        },
    )?;
    if let Some(e) = err {
        return Err(e.into());
    }
    let text = match cli.format {
        Format::Csv => {
            let mut out = String::from(
                "n,vertices,edges,eigenvalues,multiplicities,algebraic_connectivity,spectral_radius,integral\n",
            );
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    r.n,
                    r.vertices,
                    r.edges,
                    join_bar(&r.eigenvalues),
                    join_bar(&r.multiplicities),
                    opt(r.algebraic_connectivity),
                    opt(r.spectral_radius),
                    r.integral
                );
            }
            out
        }
        Format::Json => format!("{}\n", serde_json::to_string(&rows).expect("serializable")),
        Format::Text => {
            let mut out = format!(
                "{:>6} {:>8} {:>8} {:>6} {:>6} {:>8}  spectrum\n",
                "n", "vertices", "edges", "mu", "lambda", "integral"
            );
            for r in &rows {
                let spectrum: Vec<String> = r
                    .eigenvalues
                    .iter()
                    .zip(&r.multiplicities)
                    .map(|(v, m)| format!("{v}^{m}"))
                    .collect();
                let line = format!(
                    "{:>6} {:>8} {:>8} {:>6} {:>6} {:>8}  {}",
                    r.n,
                    r.vertices,
                    r.edges,
                    opt(r.algebraic_connectivity),
                    opt(r.spectral_radius),
                    r.integral,
                    spectrum.join(" ")
                );
                let _ = writeln!(out, "{}", line.trim_end());
            }
            out
        }
        other => return Err(unsupported(other, "table")),
    };
    Ok(Outcome::Ok(text))
}

fn cmd_join(path: &std::path::Path, check: bool, format: Format) -> Result<Outcome, CliError> {
    if !matches!(format, Format::Text | Format::Json) {
        return Err(unsupported(format, "join"));
    }
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let input = JoinInput::parse(&text)?;
    let spectrum = input.spectrum()?;
    let mut out = match format {
        Format::Json => format!("{}\n", spectrum.to_json(input.n)),
        _ => format!(
            "Laplacian spectrum of the join, {} vertices\n{spectrum}",
            spectrum.order()
        ),
    };
    if !check {
        return Ok(Outcome::Ok(out));
    }
    let result = joinfile::check_join(&input, JOIN_CHECK_TOL)?;
    let verdict = format!(
        "check: {} (max deviation {:.3e} over {} eigenvalues)",
        if result.matches { "PASS" } else { "FAIL" },
        result.max_deviation,
        result.numeric.len()
    );
    if format == Format::Json {
        eprintln!("{verdict}");
    } else {
        let _ = writeln!(out, "{verdict}");
    }
    Ok(if result.matches {
        Outcome::Ok(out)
    } else {
        Outcome::Failed(out)
    })
}
