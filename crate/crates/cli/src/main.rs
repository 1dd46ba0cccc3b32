//! `affine-cells`: the affine matrix ball construction on rectangular cells
//! from the command line.
//!
//! Shapes are written `LxM`: `m` rows of length `l`, so `2x3` is `(2,2,2)`
//! and `3x2` is `(3,3)`.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use affine_cells::ambc::{fiber_size, phi_rect};
use affine_cells::budget::default_budget;
use affine_cells::cells::{shape_of, RectCell};
use affine_cells::components::{
    orbit_rep_pair, pairs_equivalent, psi_rect, rel_pos_rep, rel_pos_triple, theta, theta_big,
    ComponentLabel, RevReading,
};
use affine_cells::knuth::{default_class_budget, dot_file_name, left_knuth_class};
use affine_cells::n2::{n2_tables, phi_n2};
use affine_cells::verify::{run, Suite, VerifyOptions};
use affine_cells::{AffinePermutation, AmbcTriple, Partition, RectShape};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

const SCHEMA: &str = "affine-cells/1";

#[derive(Parser)]
#[command(name = "affine-cells", version, about = "Affine matrix ball construction on rectangular two-sided cells")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The triple (P, Q, rho) of a cell element.
    Ambc {
        window: AffinePermutation,
        /// Inferred from the Greene shape when omitted.
        #[arg(long)]
        shape: Option<RectShape>,
    },
    /// The cell element of a triple, through the component pair it labels.
    Psi {
        triple: AmbcTriple,
        /// Largest alpha scanned when recovering |c| = m alpha + beta.
        #[arg(long)]
        alpha_max: Option<i64>,
    },
    /// The Greene shape of a window.
    Shape { window: AffinePermutation },
    /// The fundamental box of a rectangle.
    Fbox {
        shape: RectShape,
        /// Print every window, not just the count.
        #[arg(long)]
        list: bool,
    },
    /// The left Knuth class of a window.
    KnuthClass {
        window: AffinePermutation,
        /// Write Graphviz output (to `lkc_LxM.dot` unless `--output` is given).
        #[arg(long)]
        dot: bool,
        /// DOT destination; `-` for stdout.
        #[arg(long, requires = "dot")]
        output: Option<PathBuf>,
    },
    /// The relative position of two components `w:[..];c:(..)` or `[..]:(..)`.
    Relpos {
        #[arg(long)]
        c1: ComponentLabel,
        #[arg(long)]
        c2: ComponentLabel,
    },
    /// theta of one component, or Theta of a pair given with --c1 and --c2.
    Theta {
        #[arg(conflicts_with_all = ["c1", "c2"], required_unless_present_all = ["c1", "c2"])]
        label: Option<ComponentLabel>,
        #[arg(long, requires = "c2")]
        c1: Option<ComponentLabel>,
        #[arg(long, requires = "c1")]
        c2: Option<ComponentLabel>,
        #[arg(long, value_enum, default_value_t = Reading::TupleReverse)]
        reading: Reading,
    },
    /// Whether two component pairs have the same relative position.
    Equiv {
        #[arg(long)]
        c1: ComponentLabel,
        #[arg(long)]
        c2: ComponentLabel,
        #[arg(long)]
        d1: ComponentLabel,
        #[arg(long)]
        d2: ComponentLabel,
    },
    /// The closed-form tables for n = 2.
    N2 {
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        k_min: i64,
        #[arg(long, default_value_t = 5, allow_negative_numbers = true)]
        k_max: i64,
    },
    /// Run verification suites.
    Verify {
        #[arg(default_value = "all")]
        suite: Suite,
        /// Repeatable; defaults to 2x2, 3x2 and 2x3.
        #[arg(long)]
        shape: Vec<RectShape>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random elements per shape in sampled checks.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Entrywise bound on c in pair sweeps; 2m when omitted.
        #[arg(long)]
        pair_bound: Option<i64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Reading {
    TupleReverse,
    SortedDescending,
}

impl From<Reading> for RevReading {
    fn from(r: Reading) -> Self {
        match r {
            Reading::TupleReverse => RevReading::TupleReverse,
            Reading::SortedDescending => RevReading::SortedDescending,
        }
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Domain(#[from] affine_cells::Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

/// What a command prints: a JSON document and its plain-text rendering.
struct Output {
    json: Value,
    text: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok((out, ok)) => {
            emit(&out, cli.json);
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.json {
                let code = if matches!(e, CliError::Usage(_)) { "usage" } else { "domain" };
                println!("{}", json!({ "schema": SCHEMA, "error": e.to_string(), "kind": code }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(if matches!(e, CliError::Usage(_)) { 2 } else { 1 })
        }
    }
}

/// A closed pipe is not an error worth reporting.
fn emit(out: &Output, as_json: bool) {
    let body = if as_json {
        let mut doc = out.json.clone();
        doc["schema"] = json!(SCHEMA);
        serde_json::to_string_pretty(&doc).expect("values serialize")
    } else {
        out.text.trim_end().to_string()
    };
    let _ = writeln!(std::io::stdout().lock(), "{body}");
}

fn cell_for(shape: RectShape) -> Result<RectCell, CliError> {
    Ok(RectCell::new(shape, default_budget())?)
}

/// `l^m` from the Greene shape, if it is a rectangle.
fn rect_of(p: &Partition) -> Option<RectShape> {
    let parts = p.parts();
    let l = *parts.first()?;
    parts.iter().all(|&x| x == l).then_some(RectShape { l, m: parts.len() })
}

/// `m` is the number of coordinates of `c`, `l = n / m`.
fn shape_of_labels(labels: &[&ComponentLabel]) -> Result<RectShape, CliError> {
    let first = labels[0];
    let (n, m) = (first.w.n(), first.c.len());
    if m == 0 || n % m != 0 {
        return Err(CliError::Usage(format!("label {first} has {m} coordinates, which does not divide n = {n}")));
    }
    if let Some(bad) = labels.iter().find(|x| x.w.n() != n || x.c.len() != m) {
        return Err(CliError::Usage(format!("labels {first} and {bad} have different shapes")));
    }
    Ok(RectShape::new(n / m, m)?)
}

fn execute(command: Command) -> Result<(Output, bool), CliError> {
    let out = match command {
        Command::Ambc { window, shape } => ambc(&window, shape)?,
        Command::Psi { triple, alpha_max } => {
            let p = triple.p().shape();
            let shape = rect_of(&p).ok_or_else(|| CliError::Usage(format!("shape {p} is not a rectangle")))?;
            let x = psi_rect(&cell_for(shape)?, &triple, alpha_max)?;
            Output {
                json: json!({ "command": "psi", "shape": shape.to_string(), "triple": triple, "window": x }),
                text: x.to_string(),
            }
        }
        Command::Shape { window } => {
            let p = shape_of(&window)?;
            let rect = rect_of(&p).map(|s| s.to_string());
            Output {
                json: json!({ "command": "shape", "window": window, "partition": p, "rectangle": rect }),
                text: p.to_string(),
            }
        }
        Command::Fbox { shape, list } => {
            let cell = cell_for(shape)?;
            let mut text = format!("{} elements\n", cell.fbox().len());
            if list {
                cell.fbox().iter().for_each(|w| text.push_str(&format!("{w}\n")));
            }
            Output {
                json: json!({
                    "command": "fbox",
                    "shape": shape.to_string(),
                    "size": cell.fbox().len(),
                    "elements": list.then(|| cell.fbox().to_vec()),
                }),
                text,
            }
        }
        Command::KnuthClass { window, dot, output } => knuth_class(&window, dot, output)?,
        Command::Relpos { c1, c2 } => {
            let shape = shape_of_labels(&[&c1, &c2])?;
            let cell = cell_for(shape)?;
            let rep = orbit_rep_pair(&cell, &c1, &c2)?;
            let x = rel_pos_rep(&cell, &rep)?;
            let triple = rel_pos_triple(&cell, &rep)?;
            Output {
                json: json!({
                    "command": "relpos",
                    "shape": shape.to_string(),
                    "c1": c1,
                    "c2": c2,
                    "representative": rep,
                    "window": x,
                    "triple": triple,
                }),
                text: format!("{x}\n{triple}"),
            }
        }
        Command::Theta { label, c1, c2, reading } => match (label, c1, c2) {
            (Some(label), _, _) => {
                let shape = shape_of_labels(&[&label])?;
                let t = theta(&cell_for(shape)?, &label)?;
                Output {
                    json: json!({ "command": "theta", "shape": shape.to_string(), "label": label, "tabloid": t }),
                    text: t.to_string(),
                }
            }
            (None, Some(c1), Some(c2)) => {
                let shape = shape_of_labels(&[&c1, &c2])?;
                let cell = cell_for(shape)?;
                let rep = orbit_rep_pair(&cell, &c1, &c2)?;
                let t = theta_big(&cell, &rep, reading.into())?;
                Output {
                    json: json!({
                        "command": "theta",
                        "shape": shape.to_string(),
                        "c1": c1,
                        "c2": c2,
                        "representative": rep,
                        "triple": t,
                    }),
                    text: t.to_string(),
                }
            }
            _ => return Err(CliError::Usage("theta needs a label or both --c1 and --c2".into())),
        },
        Command::Equiv { c1, c2, d1, d2 } => {
            let shape = shape_of_labels(&[&c1, &c2, &d1, &d2])?;
            let same = pairs_equivalent(&cell_for(shape)?, &c1, &c2, &d1, &d2)?;
            Output {
                json: json!({ "command": "equiv", "shape": shape.to_string(), "equivalent": same }),
                text: same.to_string(),
            }
        }
        Command::N2 { k_min, k_max } => {
            if k_min > k_max {
                return Err(CliError::Usage(format!("empty range {k_min}..={k_max}")));
            }
            let fixture = n2_tables(k_min..=k_max);
            let mut text = String::new();
            for r in &fixture.phi_rows {
                text.push_str(&format!("{:?} k={} {} -> {}\n", r.family, r.k, r.window, r.triple));
            }
            for r in &fixture.pair_rows {
                text.push_str(&format!("C{} C{}: r = {} Theta = {}\n", r.first, r.second, r.rel_pos, r.theta));
            }
            Output {
                json: json!({ "command": "n2", "fixture": fixture }),
                text,
            }
        }
        Command::Verify { suite, shape, seed, samples, pair_bound } => {
            let mut opts = VerifyOptions {
                seed,
                samples,
                pair_bound,
                ..VerifyOptions::default()
            };
            if !shape.is_empty() {
                opts.shapes = shape;
            }
            let reports = run(suite, &opts)?;
            let ok = reports.iter().all(|r| r.ok());
            let text = reports.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n");
            let out = Output {
                json: json!({ "command": "verify", "suite": suite.name(), "ok": ok, "reports": reports }),
                text,
            };
            return Ok((out, ok));
        }
    };
    Ok((out, true))
}

fn ambc(window: &AffinePermutation, shape: Option<RectShape>) -> Result<Output, CliError> {
    let shape = match shape {
        Some(s) => s,
        None => {
            let p = shape_of(window)?;
            rect_of(&p).ok_or_else(|| affine_cells::Error::NotInCell(window.to_string(), format!("{p}, not a rectangle")))?
        }
    };
    if window.n() != shape.n() {
        return Err(CliError::Usage(format!("{window} has period {}, shape {shape} needs {}", window.n(), shape.n())));
    }
    // n = 2 has its own closed form; the general machinery needs n >= 3.
    let (triple, fiber) = if shape.n() == 2 {
        if shape != (RectShape { l: 1, m: 2 }) {
            return Err(affine_cells::Error::NotInCell(window.to_string(), shape.partition().to_string()).into());
        }
        (phi_n2(window)?, 1)
    } else {
        let cell = cell_for(shape)?;
        (phi_rect(&cell, window)?, fiber_size(&cell, window)?)
    };
    Ok(Output {
        json: json!({
            "command": "ambc",
            "shape": shape.to_string(),
            "window": window,
            "triple": triple,
            "fiber_size": fiber,
        }),
        text: triple.to_string(),
    })
}

fn knuth_class(window: &AffinePermutation, dot: bool, output: Option<PathBuf>) -> Result<Output, CliError> {
    let rect = rect_of(&shape_of(window)?);
    let budget = rect.map_or_else(default_budget, default_class_budget);
    let graph = left_knuth_class(window, budget)?;
    let mut text = format!("{} vertices, {} edges\n", graph.len(), graph.edges.len());
    let mut written = None;
    if dot {
        let name = rect.map_or_else(|| "lkc.dot".to_string(), dot_file_name);
        let rendered = graph.to_dot(name.trim_end_matches(".dot"));
        match output {
            Some(p) if p.as_os_str() == "-" => text.push_str(&rendered),
            other => {
                let path = other.unwrap_or_else(|| PathBuf::from(&name));
                std::fs::write(&path, &rendered)?;
                text.push_str(&format!("wrote {}\n", path.display()));
                written = Some(path.display().to_string());
            }
        }
    } else {
        graph.vertices.iter().for_each(|w| text.push_str(&format!("{w}\n")));
    }
    Ok(Output {
        json: json!({
            "command": "knuth-class",
            "root": window,
            "vertices": graph.vertices,
            "edges": graph.edges,
            "dot_file": written,
        }),
        text,
    })
}
