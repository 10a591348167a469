use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use d5count::a4_wong::{
    count_a4_tuples, square_disc_tuples, verify_identity_numeric, verify_identity_symbolic, verify_identity_with,
    IdentityConstants,
};
use d5count::enumerator::{
    count_table, count_triples, emit_plot_data, half_decade_grid, loglog_fit, read_csv, write_csv,
};
use d5count::galois_map::{
    find_d5_quintics, forward_detailed, inverse, normalize_trace_zero, quadratic_resolvent, subfield_witness,
    verify_subfield, Scaling,
};
use d5count::{BoxConfig, CountRow, FitResult, QuinticPoly, Triple};

/// Counting and converting norm-equation triples of dihedral quintic fields.
#[derive(Parser, Debug)]
#[command(name = "d5count", version)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Opts {
    /// Constant in the box |A| <= cA X^(1/4).
    #[arg(long = "ca", global = true, default_value_t = 1.0)]
    c_a: f64,
    /// Constant in the box |B| <= cB X^(3/8).
    #[arg(long = "cb", global = true, default_value_t = 1.0)]
    c_b: f64,
    /// Constant in the bound C <= cC X^(3/4).
    #[arg(long = "cc", global = true, default_value_t = 1.0)]
    c_c: f64,
    /// Working precision in bits for root finding.
    #[arg(long, global = true, default_value_t = 128)]
    precision: u32,
    /// Worker threads for counting (default: available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Directory with oracle_counts.csv; count and table results at the
    /// listed X values are checked against it (constants 1 only).
    #[arg(long, global = true, env = "D5_GOLDEN_DIR")]
    golden_dir: Option<PathBuf>,
    /// Print the elapsed time to standard error.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Plot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Grid {
    /// floor(10^(k/2)) for k = 2, 3, ...
    HalfDecades,
}

#[derive(Args, Debug)]
struct TableSource {
    /// Read an X,count table instead of computing one.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Largest X of the computed half-decade table.
    #[arg(long, default_value_t = 1_000_000)]
    max: u64,
    /// Number of trailing rows used by the fit.
    #[arg(long, default_value_t = 4)]
    last: usize,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Count triples for one discriminant bound.
    Count {
        #[arg(long)]
        x: u64,
    },
    /// Count triples along a grid of bounds.
    Table {
        #[arg(long, value_enum, default_value_t = Grid::HalfDecades)]
        grid: Grid,
        #[arg(long)]
        max: u64,
    },
    /// Least-squares fit of ln(count) against ln(X) over the last rows.
    Fit {
        #[command(flatten)]
        src: TableSource,
    },
    /// (ln X, ln count) pairs and the fitted line, for plotting.
    Plotdata {
        #[command(flatten)]
        src: TableSource,
    },
    /// Triple of a trace-zero D5 quintic given as [c4,c3,c2,c1,c0].
    Forward {
        #[arg(long, allow_hyphen_values = true)]
        poly: QuinticPoly,
        /// Replace the input by 5^5 f((t - c4)/5) first.
        #[arg(long)]
        normalize: bool,
    },
    /// Quintic of a triple given as "A=a+b*phi; B=c+d*phi; C=n".
    Inverse {
        #[arg(long, allow_hyphen_values = true)]
        triple: Triple,
    },
    /// Check the quadratic-subfield witness for a D5 quintic.
    Subfield {
        #[arg(long, allow_hyphen_values = true)]
        poly: QuinticPoly,
    },
    /// Brute-force search for trace-zero D5 quintics.
    Search {
        #[arg(long, default_value_t = 30)]
        max_coeff: i64,
        #[arg(long, default_value_t = 5)]
        limit: usize,
    },
    /// The A4 quartic identity over Q(sqrt-3).
    A4 {
        #[command(subcommand)]
        cmd: A4Cmd,
    },
}

#[derive(Subcommand, Debug)]
enum A4Cmd {
    /// Prove the identity symbolically and check it on sample tuples.
    Verify {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Count (a2, a3, a4) with |a2| <= X^(1/3), |a3| <= X^(1/2),
    /// |a4| <= X^(2/3) and nonzero square discriminant.
    ///
    /// Every such quartic is counted, reducible or not and whatever its
    /// Galois group, so this is not a count of A4 fields.
    Count {
        #[arg(long)]
        x: u64,
    },
}

/// Result of a verb: the text to emit and whether the check it performed
/// (if any) succeeded.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

/// Errors caused by the invocation rather than by the mathematics.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli);
    if cli.opts.timing {
        eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(out) => {
            if let Err(e) = emit(&cli.opts, &out.text) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn emit(opts: &Opts, text: &str) -> Result<()> {
    match &opts.output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn workers(opts: &Opts) -> usize {
    opts.workers.unwrap_or(0)
}

fn box_template(opts: &Opts) -> BoxConfig {
    BoxConfig {
        c_a: opts.c_a,
        c_b: opts.c_b,
        c_c: opts.c_c,
        x: 1,
    }
}

/// Settings that determine the output; the worker count is left out since
/// it never changes a result.
fn config_echo(opts: &Opts, command: &str, extra: Value) -> Value {
    let mut v = json!({
        "command": command,
        "cA": opts.c_a,
        "cB": opts.c_b,
        "cC": opts.c_c,
        "precision": opts.precision,
    });
    if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
        m.extend(e);
    }
    v
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn render_rows(opts: &Opts, command: &str, extra: Value, rows: &[CountRow]) -> String {
    match opts.format {
        Format::Csv => write_csv(rows),
        Format::Plot => emit_plot_data(rows, None),
        Format::Json => json_text(&json!({ "config": config_echo(opts, command, extra), "rows": rows })),
    }
}

/// Compares rows with the golden table when a golden directory is set.
fn check_golden(opts: &Opts, rows: &[CountRow]) -> Result<bool> {
    let Some(dir) = &opts.golden_dir else {
        return Ok(true);
    };
    if (opts.c_a, opts.c_b, opts.c_c) != (1.0, 1.0, 1.0) {
        return Err(Usage("golden counts exist only for constants 1".into()).into());
    }
    let golden = read_table(&dir.join("oracle_counts.csv"))?;
    let mut ok = true;
    for r in rows {
        if let Some(g) = golden.iter().find(|g| g.x == r.x) {
            if g.count != r.count {
                eprintln!("golden mismatch at X={}: expected {}, got {}", r.x, g.count, r.count);
                ok = false;
            }
        }
    }
    Ok(ok)
}

fn read_table(path: &Path) -> Result<Vec<CountRow>> {
    let text = std::fs::read_to_string(path).map_err(|e| Usage(format!("reading {}: {e}", path.display())))?;
    read_csv(&text).map_err(|e| Usage(format!("{}: {e}", path.display())).into())
}

fn table_rows(opts: &Opts, src: &TableSource) -> Result<Vec<CountRow>> {
    match &src.input {
        Some(p) => read_table(p),
        None => Ok(count_table(
            &half_decade_grid(2, src.max),
            &box_template(opts),
            workers(opts),
        )?),
    }
}

fn fit_text(opts: &Opts, src: &TableSource, rows: &[CountRow], fit: &FitResult) -> String {
    match opts.format {
        Format::Csv => format!("slope,intercept\n{:.6},{:.6}\n", fit.slope, fit.intercept),
        Format::Plot => emit_plot_data(rows, Some(fit)),
        Format::Json => {
            let extra = json!({ "last": src.last, "input": src.input, "max": src.input.is_none().then_some(src.max) });
            json_text(&json!({ "config": config_echo(opts, "fit", extra), "rows": rows, "fit": fit }))
        }
    }
}

fn triple_json(t: &Triple) -> Value {
    json!({ "A": t.a.to_string(), "B": t.b.to_string(), "C": t.c.to_string() })
}

fn run(cli: &Cli) -> Result<Outcome> {
    let opts = &cli.opts;
    if opts.precision < 64 {
        return Err(Usage("--precision must be at least 64".into()).into());
    }
    match &cli.cmd {
        Cmd::Count { x } => {
            let cfg = box_template(opts).with_x(*x);
            let rows = vec![CountRow {
                x: *x,
                count: count_triples(&cfg, workers(opts))?,
            }];
            let ok = check_golden(opts, &rows)?;
            Ok(Outcome {
                text: render_rows(opts, "count", json!({ "X": x }), &rows),
                ok,
            })
        }
        Cmd::Table {
            grid: Grid::HalfDecades,
            max,
        } => {
            let grid = half_decade_grid(2, *max);
            if grid.is_empty() {
                return Err(Usage(format!("--max {max} is below the first grid point 10")).into());
            }
            let rows = count_table(&grid, &box_template(opts), workers(opts))?;
            let ok = check_golden(opts, &rows)?;
            let extra = json!({ "grid": "half-decades", "max": max });
            Ok(Outcome {
                text: render_rows(opts, "table", extra, &rows),
                ok,
            })
        }
        Cmd::Fit { src } => {
            let rows = table_rows(opts, src)?;
            let fit = loglog_fit(&rows, src.last)?;
            Ok(Outcome::ok(fit_text(opts, src, &rows, &fit)))
        }
        Cmd::Plotdata { src } => {
            let rows = table_rows(opts, src)?;
            let fit = loglog_fit(&rows, src.last).ok();
            Ok(Outcome::ok(emit_plot_data(&rows, fit.as_ref())))
        }
        Cmd::Forward { poly, normalize } => {
            let f = if *normalize {
                normalize_trace_zero(poly, Scaling::Always)
            } else {
                poly.clone()
            };
            let r = forward_detailed(&f, opts.precision)?;
            let text = match opts.format {
                Format::Json => json_text(&json!({
                    "config": config_echo(opts, "forward", json!({ "poly": poly.to_string() })),
                    "poly": f.to_string(),
                    "triple": triple_json(&r.triple),
                    "ordering": r.ordering,
                    "bits": r.bits,
                })),
                _ => format!("{}\n", r.triple),
            };
            Ok(Outcome::ok(text))
        }
        Cmd::Inverse { triple } => {
            let g = inverse(triple, opts.precision)?;
            let text = match opts.format {
                Format::Json => json_text(&json!({
                    "config": config_echo(opts, "inverse", json!({ "triple": triple.to_string() })),
                    "poly": g.as_ref().map(|g| g.to_string()),
                })),
                _ => g.as_ref().map_or_else(|| "none\n".to_string(), |g| format!("{g}\n")),
            };
            if g.is_none() {
                eprintln!("no quintic corresponds to {triple}");
            }
            Ok(Outcome { text, ok: g.is_some() })
        }
        Cmd::Subfield { poly } => {
            let t = forward_detailed(poly, opts.precision)?.triple;
            let w = subfield_witness(&t)?;
            let theta2 = quadratic_resolvent(poly, opts.precision)?;
            let holds = verify_subfield(&t, poly, opts.precision)?;
            let text = match opts.format {
                Format::Json => json_text(&json!({
                    "config": config_echo(opts, "subfield", json!({ "poly": poly.to_string() })),
                    "triple": triple_json(&t),
                    "witness": w.to_string(),
                    "theta_squared": theta2.to_string(),
                    "holds": holds,
                })),
                _ => format!("triple: {t}\nwitness: {w}\ntheta^2: {theta2}\nholds: {holds}\n"),
            };
            Ok(Outcome { text, ok: holds })
        }
        Cmd::Search { max_coeff, limit } => {
            let found = find_d5_quintics(*max_coeff, *limit);
            let mut text = String::new();
            let mut items = Vec::new();
            for f in &found {
                let t = forward_detailed(f, opts.precision)?.triple;
                let _ = writeln!(text, "{f}\t{t}");
                items.push(json!({ "poly": f.to_string(), "triple": triple_json(&t) }));
            }
            if opts.format == Format::Json {
                let extra = json!({ "max_coeff": max_coeff, "limit": limit });
                text = json_text(&json!({ "config": config_echo(opts, "search", extra), "quintics": items }));
            }
            Ok(Outcome::ok(text))
        }
        Cmd::A4 {
            cmd: A4Cmd::Verify { samples },
        } => {
            let symbolic = verify_identity_symbolic();
            let perturbed = !verify_identity_with(&IdentityConstants {
                k: 47,
                ..IdentityConstants::default()
            });
            let tuples = square_disc_tuples(60, *samples);
            let passed = tuples
                .iter()
                .filter(|t| verify_identity_numeric(t).unwrap_or(false))
                .count();
            let ok = symbolic && perturbed && passed == tuples.len() && tuples.len() == *samples;
            let text = match opts.format {
                Format::Json => json_text(&json!({
                    "config": config_echo(opts, "a4 verify", json!({ "samples": samples })),
                    "symbolic_residual_zero": symbolic,
                    "perturbed_residual_nonzero": perturbed,
                    "numeric_passed": passed,
                    "numeric_total": tuples.len(),
                    "ok": ok,
                })),
                _ => format!(
                    "symbolic residual zero: {symbolic}\nperturbed identity rejected: {perturbed}\nnumeric: {passed}/{} tuples\nresult: {}\n",
                    tuples.len(),
                    if ok { "ok" } else { "FAILED" }
                ),
            };
            Ok(Outcome { text, ok })
        }
        Cmd::A4 {
            cmd: A4Cmd::Count { x },
        } => {
            let n = count_a4_tuples(*x, workers(opts)).map_err(|e| anyhow!(Usage(e.to_string())))?;
            let rows = [CountRow { x: *x, count: n }];
            Ok(Outcome::ok(render_rows(opts, "a4 count", json!({ "X": x }), &rows)))
        }
    }
}
