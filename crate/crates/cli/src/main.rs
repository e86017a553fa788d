use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use veech_core::expansion::{
    classify, matrix_json, orbit_json, parse_word, word_matrix, DirectionK, OrbitResult, DEFAULT_MAX_STEPS,
};
use veech_core::expr::parse_element;
use veech_core::flow::{central_point_search, render_svg, SearchConfig, SearchStatus, DEFAULT_DEPTH, DEFAULT_MAX_CROSSINGS};
use veech_core::model::{dump_model, HeptagonModel, MatK, StaircaseModel};
use veech_core::survey::{run_survey, write_survey, OutputFormat, SurveyConfig};
use veech_core::witness::{reproduce_witness, Kind};
use veech_core::{make_field, Error, ExtContext, FieldElement};

/// Default directory for survey output when --out is not given.
const OUT_DIR_VAR: &str = "VEECH_OUT_DIR";

#[derive(Parser)]
#[command(name = "veech", version, about = "Exact direction classification on double odd-gon surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal polynomial, degree and embedding of a = 2cos(π/N)
    Field {
        n: u32,
        #[arg(long)]
        json: bool,
    },
    /// Staircase model data; fails if any model invariant does not hold
    Model {
        n: u32,
        #[arg(long)]
        json: bool,
    },
    /// Classify the direction (X, Y), both expressions in a
    Classify {
        n: u32,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
        #[arg(long)]
        json: bool,
    },
    /// Product of sector matrices for a comma-separated word
    Stabilizer {
        n: u32,
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Recompute the heptagon witness matrix and compare with reference values
    VerifyPaper {
        #[arg(long)]
        json: bool,
    },
    /// Search for hyperbolic separatrices through the heptagon centers
    CentralPoint {
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_CROSSINGS)]
        max_crossings: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Classify every direction (1, r) and (r, 1) with r of height at most H
    Survey {
        n: u32,
        #[arg(long, default_value_t = 1)]
        height: u32,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
        /// Output file; defaults to a file in $VEECH_OUT_DIR or the current directory
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Exit status for a failure from the core library.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::InvalidOrder(_)
        | Error::ZeroDirection
        | Error::IndexOutOfRange { .. }
        | Error::InvalidArgument(_)
        | Error::NotHeptagon(_) => 3,
        Error::Io { .. } => 1,
        _ => 4,
    }
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(&e),
            msg: e.to_string(),
        }
    }
}

fn invariant(msg: impl Into<String>) -> Failure {
    Failure { code: 4, msg: msg.into() }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn mat_text(m: &MatK) -> String {
    format!("[[{}, {}], [{}, {}]]", m.m11, m.m12, m.m21, m.m22)
}

fn list<T: Display>(xs: &[T]) -> String {
    let inner: Vec<String> = xs.iter().map(T::to_string).collect();
    format!("[{}]", inner.join(", "))
}

fn field(n: u32, as_json: bool) -> Result<(), Failure> {
    let k = make_field(n)?;
    let a = FieldElement::generator(&k);
    let (lo, hi) = k.embedding();
    if as_json {
        print_json(&json!({
            "N": n,
            "minpoly": k.minpoly_string(),
            "degree": k.degree(),
            "a": a.approx(20),
            "isolating_interval": [lo.to_string(), hi.to_string()],
        }));
    } else {
        println!("N = {n}");
        println!("minpoly: {}", k.minpoly_string());
        println!("degree: {}", k.degree());
        println!("a = 2cos(pi/{n}) ~ {}", a.approx(20));
        println!("isolating interval: [{lo}, {hi}]");
    }
    Ok(())
}

fn model(n: u32, as_json: bool) -> Result<(), Failure> {
    let k = make_field(n)?;
    let dump = dump_model(&StaircaseModel::new(&k));
    if as_json {
        print_json(&serde_json::to_value(&dump).expect("model dump serializes"));
    } else {
        println!("N = {n}");
        for (i, u) in dump.u.iter().enumerate() {
            println!("u_{i} = {u}");
        }
        for (i, [x, y]) in dump.diagonals.iter().enumerate() {
            println!("D_{i} = ({x}, {y})");
        }
        for (i, [[a, b], [c, d]]) in dump.sectors.iter().enumerate() {
            println!("M_{i} = [[{a}, {b}], [{c}, {d}]]");
        }
        for c in &dump.cylinders {
            println!(
                "{} cylinder {:?}: circumference {}, height {}, modulus {}",
                c.axis, c.members, c.circumference, c.height, c.modulus
            );
        }
        for v in &dump.vertex_classes {
            println!("vertex class: {} corners, angle {} pi", v.corners, v.angle_over_pi);
        }
        for c in &dump.invariants {
            println!("[{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
        }
    }
    match dump.invariants.iter().find(|c| !c.passed) {
        Some(c) => Err(invariant(format!("model invariant {} failed: {}", c.name, c.detail))),
        None => Ok(()),
    }
}

fn classify_cmd(n: u32, x: &str, y: &str, max_steps: usize, as_json: bool) -> Result<(), Failure> {
    let k = make_field(n)?;
    let x = parse_element(x, &k)?;
    let y = parse_element(y, &k)?;
    let d = DirectionK::new(&x, &y)?;
    let r = classify(&d, &StaircaseModel::new(&k), max_steps);
    if as_json {
        let mut v = orbit_json(&d.x(), &d.y(), &r);
        v["rotated"] = json!(d.was_rotated());
        print_json(&v);
        return Ok(());
    }
    println!("direction: ({}, {})", d.x(), d.y());
    if d.was_rotated() {
        println!("note: input rotated by a quarter turn into the first quadrant");
    }
    println!("class: {}", r.class_name());
    match &r {
        OrbitResult::Parabolic { word, terminal, .. } => {
            println!("word: {}", list(word));
            println!("terminal: {}", terminal.name());
        }
        OrbitResult::Hyperbolic {
            preperiod,
            period,
            periodic_direction,
            stabilizer,
            eigenvalue,
            input_stabilizer,
            ..
        } => {
            println!("preperiod: {}", list(preperiod));
            println!("period: {}", list(period));
            println!("periodic direction: ({}, {})", periodic_direction.x(), periodic_direction.y());
            println!("stabilizer: {}", mat_text(stabilizer));
            println!("trace: {}", stabilizer.trace());
            println!("eigenvalue: {eigenvalue}");
            println!("stabilizer of input: {}", mat_text(input_stabilizer));
        }
        OrbitResult::Unresolved { last_direction, .. } => {
            println!("last direction: ({}, {})", last_direction.x(), last_direction.y());
        }
    }
    println!("steps: {}", r.steps());
    Ok(())
}

fn stabilizer(n: u32, word: &str, as_json: bool) -> Result<(), Failure> {
    let k = make_field(n)?;
    let w = parse_word(word)?;
    let m = word_matrix(&w, &StaircaseModel::new(&k))?;
    let trace = m.trace();
    let det = m.det();
    let four = FieldElement::from_int(&k, 4);
    let disc = &(&trace * &trace) - &four;
    let kind = match disc.signum() {
        1 => "hyperbolic",
        0 => "parabolic",
        _ => "elliptic",
    };
    if !det.is_one() {
        return Err(invariant(format!("product has determinant {det}")));
    }
    if as_json {
        print_json(&json!({
            "N": n,
            "word": w,
            "matrix": matrix_json(&m),
            "trace": trace.to_string(),
            "det": det.to_string(),
            "type": kind,
            "hyperbolic": kind == "hyperbolic",
        }));
    } else {
        println!("matrix: {}", mat_text(&m));
        println!("trace: {trace} ~ {:.12}", trace.to_f64());
        println!("det: {det}");
        println!("type: {kind}");
    }
    Ok(())
}

fn verify(as_json: bool) -> Result<(), Failure> {
    let r = reproduce_witness()?;
    if as_json {
        print_json(&r.to_json());
    } else {
        for i in &r.items {
            let tag = match (i.kind, i.passed) {
                (Kind::Check, true) => "check ok",
                (Kind::Check, false) => "check FAILED",
                (Kind::Finding, true) => "finding: agrees",
                (Kind::Finding, false) => "finding: differs",
            };
            println!("[{tag}] {}: {}", i.name, i.detail);
        }
    }
    if r.checks_pass() {
        Ok(())
    } else {
        Err(invariant("a recomputation check failed"))
    }
}

fn central_point(depth: usize, max_crossings: usize, svg: Option<PathBuf>, as_json: bool) -> Result<(), Failure> {
    let cfg = SearchConfig {
        depth,
        max_crossings,
        ..SearchConfig::default()
    };
    let searches = central_point_search(&cfg)?;
    if as_json {
        print_json(&Value::Array(searches.iter().map(|s| s.to_json()).collect()));
    } else {
        for s in &searches {
            println!("{}: {} after {} candidates", s.label, s.status.name(), s.examined);
            if let Some(r) = &s.report {
                let d = &r.candidate.direction;
                println!("  staircase direction: ({}, {})", d.x(), d.y());
                println!("  source: {}", r.candidate.source.describe());
                println!("  heptagon direction: ({}, {})", r.heptagon_direction.x, r.heptagon_direction.y);
                if let OrbitResult::Hyperbolic {
                    input_stabilizer,
                    eigenvalue,
                    ..
                } = &r.classification
                {
                    println!("  stabilizer: {}", mat_text(input_stabilizer));
                    println!("  trace: {}", input_stabilizer.trace());
                    println!("  eigenvalue: {eigenvalue}");
                }
                println!("  separatrix orientation: {}", r.orientation.sign());
                println!("  singular hit after {} crossings", r.trace.crossings);
            }
        }
    }
    if let Some(path) = svg {
        let hept = HeptagonModel::new(&ExtContext::new(&make_field(7)?))?;
        let traces: Vec<_> = searches.iter().filter_map(|s| s.report.as_ref().map(|r| &r.trace)).collect();
        std::fs::write(&path, render_svg(hept.surface(), &traces)).map_err(|e| Failure {
            code: 1,
            msg: format!("cannot write {}: {e}", path.display()),
        })?;
    }
    if searches.iter().any(|s| s.status == SearchStatus::Certified) {
        Ok(())
    } else {
        // an exhausted search is a result, reported above
        eprintln!("no certified separatrix within depth {depth}");
        Ok(())
    }
}

fn survey(n: u32, height: u32, max_steps: usize, out: Option<PathBuf>, format: Format) -> Result<(), Failure> {
    let (fmt, ext) = match format {
        Format::Csv => (OutputFormat::Csv, "csv"),
        Format::Json => (OutputFormat::Json, "json"),
    };
    let path = out.unwrap_or_else(|| {
        let dir = std::env::var_os(OUT_DIR_VAR).map(PathBuf::from).unwrap_or_default();
        dir.join(format!("survey_n{n}_h{height}.{ext}"))
    });
    let outcome = run_survey(&SurveyConfig::new(n, height).with_max_steps(max_steps))?;
    write_survey(&outcome, &path, fmt)?;
    let s = &outcome.stats;
    println!(
        "N={n} H={height}: {} directions, {} parabolic ({} vertical), {} hyperbolic, {} unresolved",
        s.total, s.parabolic, s.parabolic_vertical, s.hyperbolic, s.unresolved
    );
    println!("wrote {}", path.display());
    if s.certificate_failures > 0 {
        return Err(invariant(format!("{} certificates failed to replay", s.certificate_failures)));
    }
    Ok(())
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Field { n, json } => field(n, json),
        Command::Model { n, json } => model(n, json),
        Command::Classify {
            n,
            x,
            y,
            max_steps,
            json,
        } => classify_cmd(n, &x, &y, max_steps, json),
        Command::Stabilizer { n, word, json } => stabilizer(n, &word, json),
        Command::VerifyPaper { json } => verify(json),
        Command::CentralPoint {
            depth,
            max_crossings,
            svg,
            json,
        } => central_point(depth, max_crossings, svg, json),
        Command::Survey {
            n,
            height,
            max_steps,
            out,
            format,
        } => survey(n, height, max_steps, out, format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
