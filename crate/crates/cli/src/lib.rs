//! Command-line front-end. Every subcommand is a thin adapter over
//! `arrowhead_core`; [`run`] is the whole program minus process exit.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage error.

use arrowhead_core::bijection::{self, s_to_w, w_to_s};
use arrowhead_core::curves::{
    self, er_expand_capped, level_for_length, nr_expand_capped, CurveString, Method, DEFAULT_TILE_CAP,
};
use arrowhead_core::enumerate::{self, EnumerateOptions};
use arrowhead_core::lsystem::{self, er_rules, format_word, nr_rules, LSystem};
use arrowhead_core::paths::{self, trivial_w};
use arrowhead_core::render::{render_curve, render_gasket, RenderSpec};
use arrowhead_core::{parse_digits, Error, PathKind, PathString};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Orders whose Hamiltonian count needs `--deep`.
const DEEP_H_ORDER: usize = 9;

#[derive(Debug, Parser)]
#[command(name = "arrowhead", version, about = "Generalized Sierpinski arrowhead curves")]
pub struct Cli {
    /// Emit newline-delimited JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    /// Upper bound on T_n^k for curve expansion and rendering.
    #[arg(long, global = true, default_value_t = DEFAULT_TILE_CAP as u64)]
    size_guard: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enumerate or count H-, W- or S-paths of an order.
    Enumerate(EnumerateArgs),
    /// Convert between a W-path and its S-path.
    Transform(TransformArgs),
    /// Print the zig-zag W-path of an order.
    TrivialW(OrderArg),
    /// Expand a generator to a level-k curve.
    Curve(CurveArgs),
    /// Check a level-k curve string.
    Verify(VerifyArgs),
    /// Export L-system rules for a W-path generator.
    Lsystem(LsystemArgs),
    /// Render a curve file to SVG.
    Render(RenderArgs),
    /// Print the Hausdorff dimension log_n(T_n).
    Dimension(OrderArg),
    /// Print and cross-check the transformation tables.
    Tables(TablesArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    H,
    W,
    S,
}

impl From<KindArg> for PathKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::H => PathKind::H,
            KindArg::W => PathKind::W,
            KindArg::S => PathKind::S,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Er,
    Nr,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Er => Method::EdgeRewriting,
            MethodArg::Nr => Method::NodeRewriting,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DirectionArg {
    W2s,
    S2w,
}

#[derive(Debug, Args)]
struct OrderArg {
    #[arg(long)]
    order: usize,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    order: usize,
    /// Count without materializing paths.
    #[arg(long)]
    count_only: bool,
    /// Allow long-running Hamiltonian counts (order 9 and up).
    #[arg(long)]
    deep: bool,
    /// Write the JSONL path stream here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Prefix depth at which the search is split into tasks.
    #[arg(long, default_value_t = 3)]
    split_depth: usize,
}

#[derive(Debug, Args)]
struct TransformArgs {
    #[arg(long, value_enum)]
    direction: DirectionArg,
    #[arg(long)]
    path: String,
    #[arg(long)]
    order: usize,
}

#[derive(Debug, Args)]
struct CurveArgs {
    #[arg(long, value_enum)]
    method: MethodArg,
    #[arg(long)]
    order: usize,
    #[arg(long)]
    level: u32,
    /// S-path (ER) or W-path (NR) digits; the other kind is converted.
    #[arg(long)]
    generator: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    method: MethodArg,
    #[arg(long)]
    order: usize,
    #[arg(long)]
    level: u32,
    #[arg(long)]
    path: String,
}

#[derive(Debug, Args)]
struct LsystemArgs {
    #[arg(long)]
    generator: String,
    #[arg(long)]
    order: usize,
    #[arg(long, value_enum)]
    method: MethodArg,
}

#[derive(Debug, Args)]
struct RenderArgs {
    /// Curve file: a digit string, or a JSON record with a "digits" field.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    order: usize,
    #[arg(long)]
    level: u32,
    /// Draw the dark tiles of F_n(k) under the curve.
    #[arg(long)]
    overlay: bool,
    #[arg(long)]
    out: PathBuf,
    /// Pixels per tile side.
    #[arg(long, default_value_t = 40.0)]
    scale: f64,
    #[arg(long, default_value_t = 10.0)]
    margin: f64,
    #[arg(long, default_value_t = 2.0)]
    stroke_width: f64,
}

#[derive(Debug, Args)]
struct TablesArgs {
    /// Exit with status 1 unless both tables agree with the turn rules.
    #[arg(long)]
    check: bool,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Invalid { message: String, index: Option<usize> },
}

impl Failure {
    fn invalid(message: impl Into<String>, index: Option<usize>) -> Self {
        Failure::Invalid { message: message.into(), index }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let index = match &e {
            Error::InvalidDigit { index, .. } | Error::BlockedPair { index, .. } => Some(*index),
            _ => None,
        };
        match e {
            Error::DegenerateOrder(_) | Error::OrderOutOfRange { .. } | Error::InvalidRenderSpec(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Invalid { message: e.to_string(), index },
        }
    }
}

impl From<paths::Violation> for Failure {
    fn from(v: paths::Violation) -> Self {
        Failure::Invalid { message: v.reason, index: Some(v.index) }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::invalid(format!("I/O error: {e}"), None)
    }
}

type CmdResult = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let json = cli.json;
    match dispatch(&cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Invalid { message, index }) => {
            if json {
                let _ = writeln!(out, "{}", json!({ "ok": false, "error": message, "index": index }));
            } else {
                match index {
                    Some(i) => {
                        let _ = writeln!(err, "invalid: {message} (index {i})");
                    }
                    None => {
                        let _ = writeln!(err, "invalid: {message}");
                    }
                }
            }
            EXIT_INVALID
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut (dyn Write + Send)) -> CmdResult {
    let cap = u128::from(cli.size_guard);
    match &cli.command {
        Command::Enumerate(a) => cmd_enumerate(a, cli.json, out, err),
        Command::Transform(a) => cmd_transform(a, cli.json, out),
        Command::TrivialW(a) => {
            let w = trivial_w(a.order)?;
            if cli.json {
                writeln!(out, "{}", w.to_record().to_json_line())?;
            } else {
                writeln!(out, "{w}")?;
            }
            Ok(())
        }
        Command::Curve(a) => cmd_curve(a, cap, cli.json, out),
        Command::Verify(a) => cmd_verify(a, cap, cli.json, out),
        Command::Lsystem(a) => cmd_lsystem(a, cli.json, out),
        Command::Render(a) => cmd_render(a, cap, cli.json, out),
        Command::Dimension(a) => {
            if a.order < 2 {
                return Err(Error::DegenerateOrder(a.order).into());
            }
            let d = curves::hausdorff_dimension(a.order);
            if cli.json {
                writeln!(out, "{}", json!({ "n": a.order, "dimension": d }))?;
            } else {
                writeln!(out, "{d:.15}")?;
            }
            Ok(())
        }
        Command::Tables(a) => cmd_tables(a, cli.json, out),
    }
}

fn check_order(order: usize) -> CmdResult {
    if order < 2 {
        return Err(Error::DegenerateOrder(order).into());
    }
    Ok(())
}

fn cmd_enumerate(a: &EnumerateArgs, json: bool, out: &mut dyn Write, err: &mut (dyn Write + Send)) -> CmdResult {
    let kind = PathKind::from(a.kind);
    if !(enumerate::MIN_ORDER..=enumerate::MAX_ORDER).contains(&a.order) {
        return Err(Failure::Usage(format!(
            "--order must be within {}..={}",
            enumerate::MIN_ORDER,
            enumerate::MAX_ORDER
        )));
    }
    if kind == PathKind::H && a.order >= DEEP_H_ORDER {
        if !a.deep {
            return Err(Failure::Usage(format!(
                "H-paths of order {} take minutes to hours; pass --deep",
                a.order
            )));
        }
        if !a.count_only {
            return Err(Failure::Usage("--deep runs must use --count-only".into()));
        }
    }
    if a.count_only && a.out.is_some() {
        return Err(Failure::Usage("--out has no effect with --count-only".into()));
    }
    let opts = EnumerateOptions { workers: a.workers, split_depth: a.split_depth };

    let report = if a.count_only {
        if a.deep {
            let err = std::sync::Mutex::new(&mut *err);
            enumerate::count_with_progress(kind, a.order, &opts, |done, total| {
                if done % 8 == 0 || done == total {
                    let mut e = err.lock().unwrap();
                    let _ = writeln!(e, "progress: {done}/{total} tasks");
                }
            })?
        } else {
            enumerate::count(kind, a.order, &opts)?
        }
    } else {
        let mut sink: Box<dyn Write + '_> = match &a.out {
            Some(path) => Box::new(BufWriter::new(fs::File::create(path)?)),
            None => Box::new(&mut *out),
        };
        let mut io_error = None;
        let report = enumerate::enumerate(kind, a.order, &opts, |p| {
            if io_error.is_none() {
                if let Err(e) = writeln!(sink, "{}", p.to_record().to_json_line()) {
                    io_error = Some(e);
                }
            }
        })?;
        if let Some(e) = io_error {
            return Err(e.into());
        }
        sink.flush()?;
        report
    };

    let summary = report.summary();
    if a.count_only && !json {
        writeln!(out, "{}", summary.count)?;
    } else {
        writeln!(out, "{}", serde_json::to_string(&summary).expect("summary serializes"))?;
    }
    if summary.unverified {
        writeln!(err, "note: no published count for order {}; result is unverified", a.order)?;
    }
    Ok(())
}

fn cmd_transform(a: &TransformArgs, json: bool, out: &mut dyn Write) -> CmdResult {
    check_order(a.order)?;
    let digits = parse_digits(&a.path)?;
    let (from, to) = match a.direction {
        DirectionArg::W2s => (PathKind::W, PathKind::S),
        DirectionArg::S2w => (PathKind::S, PathKind::W),
    };
    paths::check(from, &digits, a.order)?;
    let input = PathString::new(from, a.order, digits)?;
    let output = match to {
        PathKind::S => w_to_s(&input)?,
        _ => s_to_w(&input)?,
    };
    if json {
        let direction = match a.direction {
            DirectionArg::W2s => "w2s",
            DirectionArg::S2w => "s2w",
        };
        writeln!(
            out,
            "{}",
            json!({ "direction": direction, "n": a.order, "input": input.to_string(), "output": output.to_string() })
        )?;
    } else {
        writeln!(out, "{output}")?;
    }
    Ok(())
}

/// Accepts either generator kind and returns the one `method` expands.
fn generator_for(method: Method, order: usize, text: &str) -> Result<PathString, Failure> {
    let digits = parse_digits(text)?;
    let w_len = PathKind::W.digit_count(order);
    let kind = if digits.len() == w_len { PathKind::W } else { PathKind::S };
    paths::check(kind, &digits, order)?;
    let g = PathString::new(kind, order, digits)?;
    Ok(match (method, kind) {
        (Method::EdgeRewriting, PathKind::W) => w_to_s(&g)?,
        (Method::NodeRewriting, PathKind::S) => s_to_w(&g)?,
        _ => g,
    })
}

fn cmd_curve(a: &CurveArgs, cap: u128, json: bool, out: &mut dyn Write) -> CmdResult {
    check_order(a.order)?;
    let method = Method::from(a.method);
    let g = generator_for(method, a.order, &a.generator)?;
    let curve = match method {
        Method::EdgeRewriting => er_expand_capped(&g, a.level, cap)?,
        Method::NodeRewriting => nr_expand_capped(&g, a.level, cap)?,
    };
    let text = if json {
        json!({ "n": a.order, "method": method, "level": a.level, "digits": curve.to_string() }).to_string()
    } else {
        curve.to_string()
    };
    match &a.out {
        Some(path) => fs::write(path, format!("{text}\n"))?,
        None => writeln!(out, "{text}")?,
    }
    Ok(())
}

fn cmd_verify(a: &VerifyArgs, cap: u128, json: bool, out: &mut dyn Write) -> CmdResult {
    check_order(a.order)?;
    guard(a.order, a.level, cap)?;
    let curve = CurveString::from_digits(a.method.into(), a.order, a.level, parse_digits(&a.path)?)?;
    let report = curves::verify(&curve)?;
    if json {
        let mut v = serde_json::to_value(&report).expect("report serializes");
        v["ok"] = json!(true);
        writeln!(out, "{v}")?;
    } else {
        writeln!(
            out,
            "ok: {} curve of order {} level {} ({} edges, {} dark tiles)",
            report.method, report.order, report.level, report.edges, report.tiles
        )?;
    }
    Ok(())
}

fn guard(order: usize, level: u32, cap: u128) -> CmdResult {
    match curves::tile_count(order, level) {
        Some(t) if t <= cap => Ok(()),
        t => Err(Error::SizeGuard { tiles: t.unwrap_or(u128::MAX), cap }.into()),
    }
}

fn system_json(method: Method, sys: &LSystem) -> serde_json::Value {
    let productions: serde_json::Map<String, serde_json::Value> = sys
        .productions
        .iter()
        .map(|(v, w)| (v.as_char().to_string(), json!(format_word(w))))
        .collect();
    json!({
        "method": method,
        "axiom": format_word(&sys.axiom),
        "angle": sys.angle_degrees,
        "productions": productions,
    })
}

fn cmd_lsystem(a: &LsystemArgs, json: bool, out: &mut dyn Write) -> CmdResult {
    check_order(a.order)?;
    let digits = parse_digits(&a.generator)?;
    paths::check(PathKind::W, &digits, a.order)?;
    let w = PathString::new(PathKind::W, a.order, digits)?;
    let er = er_rules(&w)?;
    let method = Method::from(a.method);
    let sys = match method {
        Method::EdgeRewriting => er.system().clone(),
        Method::NodeRewriting => nr_rules(&er),
    };
    if json {
        writeln!(out, "{}", system_json(method, &sys))?;
    } else {
        write!(out, "{}", sys.to_text())?;
    }
    Ok(())
}

fn read_curve_digits(path: &Path) -> Result<String, Failure> {
    let text = fs::read_to_string(path)?;
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| Failure::invalid(format!("{} is empty", path.display()), None))?;
    if line.starts_with('{') {
        let v: serde_json::Value =
            serde_json::from_str(line).map_err(|e| Failure::invalid(format!("bad JSON record: {e}"), None))?;
        return v["digits"]
            .as_str()
            .map(str::to_string)
            .ok_or_else(|| Failure::invalid("JSON record has no \"digits\" string", None));
    }
    Ok(line.to_string())
}

fn cmd_render(a: &RenderArgs, cap: u128, json: bool, out: &mut dyn Write) -> CmdResult {
    check_order(a.order)?;
    guard(a.order, a.level, cap)?;
    let spec = RenderSpec {
        scale: a.scale,
        margin: a.margin,
        stroke_width: a.stroke_width,
        tile_cap: cap,
        ..RenderSpec::default()
    };
    spec.validate()?;
    let digits = parse_digits(&read_curve_digits(&a.input)?)?;
    let method = [Method::EdgeRewriting, Method::NodeRewriting]
        .into_iter()
        .find(|&m| level_for_length(m, a.order, digits.len()) == Some(a.level))
        .ok_or_else(|| {
            Failure::invalid(
                format!("{} digits is not an ER or NR curve of order {} level {}", digits.len(), a.order, a.level),
                None,
            )
        })?;
    let curve = CurveString::from_digits(method, a.order, a.level, digits)?;
    let polyline = curve.polyline();
    let svg = if a.overlay {
        let gasket = curves::gasket_tiles_capped(a.order, a.level, cap)?;
        render_gasket(&gasket, Some(&polyline), &spec)?
    } else {
        render_curve(&polyline, &spec)?
    };
    fs::write(&a.out, svg)?;
    if json {
        writeln!(
            out,
            "{}",
            json!({ "ok": true, "method": method, "vertices": polyline.len(), "out": a.out.display().to_string() })
        )?;
    } else {
        writeln!(out, "wrote {} ({method}, {} vertices)", a.out.display(), polyline.len())?;
    }
    Ok(())
}

fn cmd_tables(a: &TablesArgs, json: bool, out: &mut dyn Write) -> CmdResult {
    use arrowhead_core::bijection::Cell;
    use arrowhead_core::Direction;
    let checks = [("w-to-s", bijection::self_check()), ("groups", lsystem::self_check())];
    if json {
        for (name, r) in &checks {
            writeln!(out, "{}", json!({ "table": name, "ok": r.is_ok(), "error": r.as_ref().err() }))?;
        }
    } else {
        writeln!(out, "W -> S (row a, column b):")?;
        for a in Direction::ALL {
            let row: Vec<String> = Direction::ALL
                .iter()
                .map(|&b| match bijection::transition(a, b) {
                    Cell::Value(d) => d.to_string(),
                    Cell::Blocked => "#".into(),
                })
                .collect();
            writeln!(out, "  {a}: {}", row.join(" "))?;
        }
        writeln!(out, "W -> L-system groups (row a, column b):")?;
        for a in Direction::ALL {
            let row: Vec<String> = Direction::ALL
                .iter()
                .map(|&b| match lsystem::group(a, b) {
                    Cell::Value(g) => format!("{g:<3}"),
                    Cell::Blocked => "#  ".into(),
                })
                .collect();
            writeln!(out, "  {a}: {}", row.join(" ").trim_end())?;
        }
        for (name, r) in &checks {
            match r {
                Ok(()) => writeln!(out, "{name}: ok")?,
                Err(e) => writeln!(out, "{name}: MISMATCH {e}")?,
            }
        }
    }
    if a.check {
        if let Some((name, Err(e))) = checks.iter().find(|(_, r)| r.is_err()) {
            return Err(Failure::invalid(format!("{name}: {e}"), None));
        }
    }
    Ok(())
}
