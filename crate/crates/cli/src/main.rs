use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use desitter_core::report::{SweepRow, SWEEP_HEADER};
use desitter_core::{
    apply_word, classify_discriminant, classify_form, enumerate_classes, pythagorean_of_rational,
    rational_of_word, reduce, word_of_rational, DiscriminantReport, Error as CoreError, Form,
    GeneratorWord, PythagoreanTriple, SignedFraction,
};
use desitter_render::{render_scene, Model, SceneSpec, Seam};
use rayon::prelude::*;
use serde_json::json;

const DEFAULT_MAX_DELTA: i64 = 1_000_000;

#[derive(Parser)]
#[command(
    name = "desitter",
    version,
    about = "Classify integer binary quadratic forms m x^2 + n y^2 + k xy"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Classes of forms with one discriminant.
    #[command(allow_negative_numbers = true)]
    Classify { delta: i64 },

    /// One CSV row per class for every discriminant in a closed range.
    #[command(allow_negative_numbers = true)]
    Sweep {
        min: i64,
        max: i64,
        /// Spread discriminants over a thread pool; output is unchanged.
        #[arg(long)]
        parallel: bool,
    },

    /// Reduce a form into the fundamental domain, with a replayable word.
    #[command(allow_negative_numbers = true)]
    Reduce { m: i64, n: i64, k: i64 },

    /// Apply a word in A, B, a (inverse of A), b (inverse of B), R to a form.
    #[command(allow_negative_numbers = true)]
    Orbit {
        m: i64,
        n: i64,
        k: i64,
        #[arg(long)]
        word: String,
    },

    /// Move between a positive word, a rational and its Pythagorean triple.
    #[command(allow_negative_numbers = true)]
    Farey {
        #[arg(allow_hyphen_values = true)]
        query: String,
    },

    /// SVG picture of a model with the orbits of one discriminant.
    #[command(allow_negative_numbers = true)]
    Render {
        delta: i64,
        #[arg(long, value_enum, default_value = "cylinder")]
        model: ModelArg,
        #[arg(long, default_value_t = 2)]
        max_generation: u32,
        #[arg(long, default_value_t = 800)]
        size: u32,
        #[arg(long, value_enum, default_value = "zero")]
        seam: SeamArg,
        #[arg(long, default_value_t = 64)]
        orbit_bound: i64,
        /// Necklace length through each fundamental-domain point, 0 for none.
        #[arg(long, default_value_t = 0)]
        necklace: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Disc,
    Cylinder,
    Eclipse,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeamArg {
    Zero,
    MinusHalfPi,
}

/// Failure with its exit status: 1 usage, 2 bounds, 3 I/O.
enum Failure {
    Usage(anyhow::Error),
    Bound(anyhow::Error),
    Io(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Bound(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn error(&self) -> &anyhow::Error {
        match self {
            Failure::Usage(e) | Failure::Bound(e) | Failure::Io(e) => e,
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Overflow => Failure::Bound(e.into()),
            other => Failure::Usage(other.into()),
        }
    }
}

impl From<desitter_render::RenderError> for Failure {
    fn from(e: desitter_render::RenderError) -> Self {
        match e {
            desitter_render::RenderError::Core(c) => c.into(),
            other => Failure::Usage(other.into()),
        }
    }
}

type Outcome<T = ()> = std::result::Result<T, Failure>;

fn max_delta() -> Outcome<i64> {
    match std::env::var("DESITTER_MAX_DELTA") {
        Ok(v) => v.trim().parse::<i64>().map_err(|_| {
            Failure::Usage(anyhow!("DESITTER_MAX_DELTA must be an integer, got {v:?}"))
        }),
        Err(_) => Ok(DEFAULT_MAX_DELTA),
    }
}

fn check_bound(delta: i64) -> Outcome {
    let bound = max_delta()?;
    if delta.unsigned_abs() > bound.unsigned_abs() {
        return Err(Failure::Bound(anyhow!(
            "|discriminant| {delta} exceeds the bound {bound}"
        )));
    }
    Ok(())
}

fn emit(out: &Option<PathBuf>, text: &str) -> Outcome {
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::Io),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .context("writing standard output")
                .map_err(Failure::Io)
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn csv_rows(rows: &[SweepRow]) -> Outcome<String> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| Failure::Io(e.into()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Io(anyhow!("{e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn csv_table(header: &[&str], records: &[Vec<String>]) -> Outcome<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(|e| Failure::Io(e.into()))?;
    for r in records {
        w.write_record(r).map_err(|e| Failure::Io(e.into()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Io(anyhow!("{e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn header_line() -> String {
    format!("{}\n", SWEEP_HEADER.join(","))
}

fn report_text(r: &DiscriminantReport) -> String {
    let mut s = format!("discriminant {} ({})", r.discriminant, r.kind);
    match &r.note {
        Some(note) => s.push_str(&format!(": {note}\n")),
        None => {
            s.push_str(&format!(": {} classes\n", r.classes.len()));
            for (i, c) in r.classes.iter().enumerate() {
                s.push_str(&format!(
                    "  {i}  {}  {}  points={}  tA={} tB={}  word={}  {}\n",
                    c.representative,
                    c.kind,
                    c.cycle_or_chain.len(),
                    c.t_a,
                    c.t_b,
                    if c.word.is_empty() { "-" } else { &c.word },
                    c.symmetry
                ));
            }
        }
    }
    s
}

fn classify_cmd(delta: i64, format: Format, out: &Option<PathBuf>) -> Outcome {
    check_bound(delta)?;
    let report = DiscriminantReport::build(delta)?;
    let text = match format {
        Format::Json => to_json(&report),
        Format::Csv => header_line() + &csv_rows(&report.rows())?,
        Format::Text => report_text(&report),
    };
    emit(out, &text)
}

/// Reports for each discriminant, in ascending order whatever the schedule.
fn sweep_reports(min: i64, max: i64, parallel: bool) -> Outcome<Vec<DiscriminantReport>> {
    let build = |d: i64| DiscriminantReport::build(d).map_err(Failure::from);
    if parallel {
        (min..=max).into_par_iter().map(build).collect()
    } else {
        (min..=max).map(build).collect()
    }
}

fn sweep_cmd(min: i64, max: i64, parallel: bool, format: Format, out: &Option<PathBuf>) -> Outcome {
    if min > max {
        return Err(Failure::Usage(anyhow!("empty range: {min} > {max}")));
    }
    check_bound(min)?;
    check_bound(max)?;
    let reports = sweep_reports(min, max, parallel)?;
    let text = match format {
        Format::Json => to_json(&reports),
        Format::Text => reports.iter().map(report_text).collect(),
        Format::Csv => {
            let chunks: Vec<Outcome<String>> = if parallel {
                reports.par_iter().map(|r| csv_rows(&r.rows())).collect()
            } else {
                reports.iter().map(|r| csv_rows(&r.rows())).collect()
            };
            let mut s = header_line();
            for chunk in chunks {
                s.push_str(&chunk?);
            }
            let with_forms = reports.iter().filter(|r| !r.classes.is_empty()).count();
            let classes: usize = reports.iter().map(|r| r.classes.len()).sum();
            s.push_str(&format!(
                "# summary: discriminants={} with_finite_classes={} classes={}\n",
                reports.len(),
                with_forms,
                classes
            ));
            s
        }
    };
    emit(out, &text)
}

fn kds_json(f: Form) -> Outcome<serde_json::Value> {
    let p = f.to_kds()?;
    Ok(json!({ "K": p.k, "D": p.d, "S": p.s }))
}

fn reduce_cmd(f: Form, format: Format, out: &Option<PathBuf>) -> Outcome {
    check_bound(f.discriminant()?)?;
    let (g, word) = reduce(f)?;
    debug_assert_eq!(apply_word(f, &word).ok(), Some(g));
    let label = classify_form(g)?;
    let text =
        match format {
            Format::Json => to_json(&json!({
                "input": f,
                "reduced": g,
                "label": label,
                "word": word.to_string(),
                "discriminant": f.discriminant()?,
            })),
            Format::Csv => csv_table(
                &[
                    "m",
                    "n",
                    "k",
                    "reduced_m",
                    "reduced_n",
                    "reduced_k",
                    "label",
                    "word",
                ],
                &[vec![
                    f.m.to_string(),
                    f.n.to_string(),
                    f.k.to_string(),
                    g.m.to_string(),
                    g.n.to_string(),
                    g.k.to_string(),
                    label.to_string(),
                    word.to_string(),
                ]],
            )?,
            Format::Text => {
                format!(
            "{f} reduces to {g} in {label}\nword {} (apply with: orbit {} {} {} --word {})\n",
            if word.is_empty() { "-".to_string() } else { word.to_string() },
            f.m,
            f.n,
            f.k,
            word
        )
            }
        };
    emit(out, &text)
}

fn orbit_cmd(f: Form, word: &str, format: Format, out: &Option<PathBuf>) -> Outcome {
    check_bound(f.discriminant()?)?;
    let w: GeneratorWord = word.parse()?;
    let g = apply_word(f, &w)?;
    let (p, q) = (f.to_kds()?, g.to_kds()?);
    let text = match format {
        Format::Json => to_json(&json!({
            "input": f,
            "word": w.to_string(),
            "image": g,
            "input_kds": kds_json(f)?,
            "image_kds": kds_json(g)?,
        })),
        Format::Csv => csv_table(
            &["m", "n", "k", "K", "D", "S"],
            &[
                [f.m, f.n, f.k, p.k, p.d, p.s]
                    .iter()
                    .map(i64::to_string)
                    .collect(),
                [g.m, g.n, g.k, q.k, q.d, q.s]
                    .iter()
                    .map(i64::to_string)
                    .collect(),
            ],
        )?,
        Format::Text => format!("{w} {f} = {g}\n(m, n, k) = {g}\n{q}\n"),
    };
    emit(out, &text)
}

fn farey_cmd(query: &str, format: Format, out: &Option<PathBuf>) -> Outcome {
    let q = query.trim();
    let is_word = !q.is_empty() && q.chars().all(|c| c == 'A' || c == 'B');
    let (signed, word) = if is_word {
        let w: GeneratorWord = q.parse()?;
        let x = rational_of_word(&w)?;
        (
            SignedFraction {
                fraction: x,
                mirrored: false,
            },
            w,
        )
    } else {
        let x: SignedFraction = q.parse()?;
        (x, word_of_rational(x.fraction)?)
    };
    let base = pythagorean_of_rational(signed.fraction)?;
    // x -> -1/x turns the triple by a half-turn about the S axis
    let triple = if signed.mirrored {
        PythagoreanTriple::new(-base.k, -base.d, base.s)?
    } else {
        base
    };
    let generation = word.len() + 1;
    let text =
        match format {
            Format::Json => to_json(&json!({
                "fraction": signed.to_string(),
                "word": word.to_string(),
                "mirrored": signed.mirrored,
                "generation": generation,
                "triple": { "K": triple.k, "D": triple.d, "S": triple.s },
            })),
            Format::Csv => csv_table(
                &["fraction", "word", "mirrored", "generation", "K", "D", "S"],
                &[vec![
                    signed.to_string(),
                    word.to_string(),
                    signed.mirrored.to_string(),
                    generation.to_string(),
                    triple.k.to_string(),
                    triple.d.to_string(),
                    triple.s.to_string(),
                ]],
            )?,
            Format::Text => format!(
            "fraction {signed}\nword {}{}\ngeneration {generation}\ntriple (K={}, D={}, S={})\n",
            if word.is_empty() { "-".to_string() } else { word.to_string() },
            if signed.mirrored { " (mirrored by x -> -1/x)" } else { "" },
            triple.k,
            triple.d,
            triple.s
        ),
        };
    emit(out, &text)
}

#[allow(clippy::too_many_arguments)]
fn render_cmd(
    delta: i64,
    model: ModelArg,
    max_generation: u32,
    size: u32,
    seam: SeamArg,
    orbit_bound: i64,
    necklace: usize,
    out: &Option<PathBuf>,
) -> Outcome {
    check_bound(delta)?;
    let model = match model {
        ModelArg::Disc => Model::Disc,
        ModelArg::Cylinder => Model::Cylinder,
        ModelArg::Eclipse => Model::Eclipse,
    };
    let mut spec = SceneSpec::new(delta, model);
    spec.max_generation = max_generation;
    spec.size = size;
    spec.seam = match seam {
        SeamArg::Zero => Seam::Zero,
        SeamArg::MinusHalfPi => Seam::MinusHalfPi,
    };
    spec.orbit_bound = orbit_bound;
    spec.necklace_len = necklace;
    spec.validate()?;
    let classes = enumerate_classes(classify_discriminant(delta))?;
    let svg = render_scene(&spec, classes.classes())?;
    emit(out, &svg)
}

fn run(cli: Cli) -> Outcome {
    let out = &cli.out;
    match cli.command {
        Command::Classify { delta } => classify_cmd(delta, cli.format.unwrap_or(Format::Text), out),
        Command::Sweep { min, max, parallel } => {
            sweep_cmd(min, max, parallel, cli.format.unwrap_or(Format::Csv), out)
        }
        Command::Reduce { m, n, k } => {
            reduce_cmd(Form::new(m, n, k), cli.format.unwrap_or(Format::Text), out)
        }
        Command::Orbit { m, n, k, word } => orbit_cmd(
            Form::new(m, n, k),
            &word,
            cli.format.unwrap_or(Format::Text),
            out,
        ),
        Command::Farey { query } => farey_cmd(&query, cli.format.unwrap_or(Format::Text), out),
        Command::Render {
            delta,
            model,
            max_generation,
            size,
            seam,
            orbit_bound,
            necklace,
        } => render_cmd(
            delta,
            model,
            max_generation,
            size,
            seam,
            orbit_bound,
            necklace,
            out,
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {:#}", failure.error());
            ExitCode::from(failure.code())
        }
    }
}
