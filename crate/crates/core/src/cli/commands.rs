use std::collections::BTreeSet;
use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::json;

use super::render::{csv_header, csv_line, json_line, Cell};
use super::{
    Command, Format, Kind, ParamArgs, SeriesArgs, SourceArg, TableArgs, TermArgs, VerifyArgs, EXIT_OK, EXIT_USAGE,
    EXIT_VERIFY_FAILED,
};
use crate::arith::Rational;
use crate::error::Error;
use crate::identities::{grid_preset, run_suite, SuiteConfig, GRID_PRESETS};
use crate::matrix_seq::{fib_matrix_closed, lucas_matrix_closed, lucas_matrix_rec, matrix_term, MatrixKind, Source};
use crate::report::SuiteReport;
use crate::sequences::{SeqParams, SeqTable};
use crate::series::{infinite_inverse_series, lucas_generating_series, InverseSumForm};

pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError { code: EXIT_USAGE, message: format!("write failed: {e}") }
    }
}

type CliResult<T> = Result<T, CliError>;

pub fn dispatch(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    match cmd {
        Command::Term(args) => term(args, out, err),
        Command::Table(args) => table(args, out, err),
        Command::Verify(args) => verify(args, out),
        Command::Series(args) => series(args, out),
    }
}

fn parse_params(args: &ParamArgs) -> CliResult<SeqParams> {
    let parse = |name: &str, s: &str| {
        s.parse::<Rational>()
            .map_err(|_| CliError::usage(format!("invalid value for {name}: {s:?} (expected \"p/q\" or an integer)")))
    };
    Ok(SeqParams::new(parse("a", &args.a)?, parse("b", &args.b)?)?)
}

fn route_of(source: SourceArg) -> Option<Source> {
    match source {
        SourceArg::Rec => Some(Source::Recurrence),
        SourceArg::Closed => Some(Source::ClosedForm),
        SourceArg::Binet => Some(Source::Binet),
        SourceArg::All => None,
    }
}

fn route_name(source: Source) -> &'static str {
    match source {
        Source::Recurrence => "rec",
        Source::ClosedForm => "closed",
        Source::Binet => "binet",
    }
}

const ROUTES: [Source; 3] = [Source::Recurrence, Source::ClosedForm, Source::Binet];

/// Scalars are read off the matrices for the closed and Binet routes:
/// `q_n` is the (2,1) entry of `F_n`, `l_n` the (1,2) entry of `L_n`.
fn evaluate(table: &SeqTable, kind: Kind, n: i64, source: Source) -> crate::Result<Cell> {
    let p = table.params();
    let cell = match (kind, source) {
        (Kind::Fib, Source::Recurrence) => Cell::Scalar(table.q(n)),
        (Kind::Lucas, Source::Recurrence) => Cell::Scalar(table.l(n)),
        (Kind::Fib, Source::ClosedForm) => Cell::Scalar(fib_matrix_closed(table, n).e21),
        (Kind::Lucas, Source::ClosedForm) => Cell::Scalar(lucas_matrix_closed(table, n).e12),
        (Kind::Fib, Source::Binet) => Cell::Scalar(matrix_term(p, MatrixKind::Fib, n, source)?.matrix.e21),
        (Kind::Lucas, Source::Binet) => Cell::Scalar(matrix_term(p, MatrixKind::Lucas, n, source)?.matrix.e12),
        (Kind::FibMatrix, Source::ClosedForm) => Cell::Matrix(fib_matrix_closed(table, n)),
        (Kind::LucasMatrix, Source::ClosedForm) => Cell::Matrix(lucas_matrix_closed(table, n)),
        (Kind::FibMatrix, _) => Cell::Matrix(matrix_term(p, MatrixKind::Fib, n, source)?.matrix),
        (Kind::LucasMatrix, _) => Cell::Matrix(matrix_term(p, MatrixKind::Lucas, n, source)?.matrix),
    };
    Ok(cell)
}

/// Every route at one index. Routes that are undefined there (Binet at
/// `ab = -4`, recurrence or Binet at a negative index for matrices) come
/// back as `Err` with the reason.
fn all_routes(table: &SeqTable, kind: Kind, n: i64) -> Vec<(Source, Result<Cell, String>)> {
    ROUTES.iter().map(|&s| (s, evaluate(table, kind, n, s).map_err(|e| e.to_string()))).collect()
}

struct Agreement {
    value: Option<Cell>,
    agree: bool,
    skipped: Vec<String>,
}

fn agreement(routes: &[(Source, Result<Cell, String>)]) -> Agreement {
    let ok: Vec<&Cell> = routes.iter().filter_map(|(_, r)| r.as_ref().ok()).collect();
    let skipped = routes
        .iter()
        .filter_map(|(s, r)| r.as_ref().err().map(|e| format!("{} skipped: {e}", route_name(*s))))
        .collect();
    Agreement { value: ok.first().map(|c| (*c).clone()), agree: ok.windows(2).all(|w| w[0] == w[1]), skipped }
}

fn term(args: &TermArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let p = parse_params(&args.params)?;
    let table = SeqTable::new(p);
    let n = args.n;
    let Some(source) = route_of(args.source) else {
        return term_all(&table, args, out, err);
    };
    let cell = evaluate(&table, args.kind, n, source)?;
    match args.format {
        Format::Plain => writeln!(out, "{}", cell.plain())?,
        Format::Json => write!(out, "{}", json_line(&cell.to_json()))?,
        Format::Csv => {
            writeln!(out, "{}", csv_header(args.kind.is_matrix()))?;
            write!(out, "{}", csv_line(std::iter::once(n.to_string()).chain(cell.csv_fields())))?;
        }
    }
    Ok(EXIT_OK)
}

fn term_all(table: &SeqTable, args: &TermArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let n = args.n;
    let routes = all_routes(table, args.kind, n);
    let summary = agreement(&routes);
    if summary.value.is_none() {
        return Err(CliError::usage(summary.skipped.join("; ")));
    }
    for note in &summary.skipped {
        writeln!(err, "note: {note}")?;
    }
    match args.format {
        Format::Plain => {
            for (s, r) in &routes {
                if let Ok(c) = r {
                    writeln!(out, "{}: {}", route_name(*s), c.plain())?;
                }
            }
            writeln!(out, "agree: {}", summary.agree)?;
        }
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("index".into(), json!(n));
            for (s, r) in &routes {
                obj.insert(route_name(*s).into(), r.as_ref().map(Cell::to_json).unwrap_or(serde_json::Value::Null));
            }
            obj.insert("agree".into(), json!(summary.agree));
            write!(out, "{}", json_line(&serde_json::Value::Object(obj)))?;
        }
        Format::Csv => {
            let header = if args.kind.is_matrix() { "index,route,e11,e12,e21,e22" } else { "index,route,value" };
            writeln!(out, "{header}")?;
            for (s, r) in &routes {
                if let Ok(c) = r {
                    let fields = [n.to_string(), route_name(*s).to_string()].into_iter().chain(c.csv_fields());
                    write!(out, "{}", csv_line(fields))?;
                }
            }
        }
    }
    Ok(if summary.agree { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn table(args: &TableArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let p = parse_params(&args.params)?;
    if args.n_max < args.n {
        return Err(CliError::usage(format!("n-max ({}) must be >= n ({})", args.n_max, args.n)));
    }
    let table = SeqTable::new(p);
    let mut rows = Vec::new();
    let mut disagreements = Vec::new();
    let mut notes = BTreeSet::new();
    for n in args.n..=args.n_max {
        let cell = match route_of(args.source) {
            Some(source) => evaluate(&table, args.kind, n, source)?,
            None => {
                let summary = agreement(&all_routes(&table, args.kind, n));
                notes.extend(summary.skipped.into_iter().map(|s| strip_index(&s)));
                if !summary.agree {
                    disagreements.push(n);
                }
                summary.value.ok_or_else(|| CliError::usage(format!("no route is defined at index {n}")))?
            }
        };
        rows.push((n, cell));
    }
    for note in &notes {
        writeln!(err, "note: {note}")?;
    }
    match args.format {
        Format::Csv => {
            writeln!(out, "{}", csv_header(args.kind.is_matrix()))?;
            for (n, cell) in &rows {
                write!(out, "{}", csv_line(std::iter::once(n.to_string()).chain(cell.csv_fields())))?;
            }
        }
        Format::Json => {
            let arr: Vec<_> = rows.iter().map(|(n, c)| json!({"index": n, "value": c.to_json()})).collect();
            write!(out, "{}", json_line(&json!(arr)))?;
        }
        Format::Plain => {
            for (n, cell) in &rows {
                writeln!(out, "{n} {}", cell.plain())?;
            }
        }
    }
    if disagreements.is_empty() {
        Ok(EXIT_OK)
    } else {
        writeln!(err, "routes disagree at indices {disagreements:?}")?;
        Ok(EXIT_VERIFY_FAILED)
    }
}

/// Skip reasons repeat per row with only the index changing; keep the part
/// before any index detail so each distinct reason is reported once.
fn strip_index(note: &str) -> String {
    match note.find(", got") {
        Some(i) => note[..i].to_string(),
        None => note.to_string(),
    }
}

fn verify(args: &VerifyArgs, out: &mut dyn Write) -> CliResult<i32> {
    if args.order == Some(0) {
        return Err(CliError::usage("order must be >= 1"));
    }
    let (name, grid) = match &args.grid {
        Some(g) => {
            let grid = grid_preset(g).ok_or_else(|| {
                CliError::usage(format!("unknown grid {g:?}; available: {}", GRID_PRESETS.join(", ")))
            })?;
            (g.clone(), grid)
        }
        None => {
            let p = parse_params(&args.params)?;
            (format!("a={},b={}", p.a, p.b), vec![p])
        }
    };
    let mut cfg = SuiteConfig::new(name, args.n_max);
    if let Some(order) = args.order {
        cfg.series_order = order;
    }
    let mut report = run_suite(&grid, &cfg)?;
    if args.timestamps {
        report.generated_at_unix = Some(SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0));
    }
    match args.format {
        Format::Json => writeln!(out, "{}", report.to_json_pretty())?,
        Format::Plain => write_summary(&report, out)?,
        Format::Csv => return Err(CliError::usage("verify prints json or plain")),
    }
    Ok(super::verify_exit_code(&report))
}

fn write_summary(report: &SuiteReport, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "suite: {}", report.suite)?;
    writeln!(out, "parameter pairs: {}", report.params.len())?;
    writeln!(out, "checks run: {}", report.checks_run)?;
    writeln!(out, "failures: {}", report.failures.len())?;
    for f in &report.failures {
        writeln!(out, "  FAIL {} indices={:?} a={} b={}", f.name, f.indices, f.params.a, f.params.b)?;
    }
    writeln!(out, "skipped: {}", report.skipped.len())?;
    for s in &report.skipped {
        writeln!(out, "  skip {}: {}", s.name, s.reason)?;
    }
    writeln!(out, "expected failures: {}", report.expected_failures.len())?;
    for e in &report.expected_failures {
        writeln!(out, "  {} ({} occurrences); corrected: {}", e.name, e.occurrences, e.corrected)?;
    }
    if let Some(t) = report.generated_at_unix {
        writeln!(out, "generated at (unix): {t}")?;
    }
    Ok(())
}

fn series(args: &SeriesArgs, out: &mut dyn Write) -> CliResult<i32> {
    if args.order == 0 {
        return Err(CliError::usage("order must be >= 1"));
    }
    let p = parse_params(&args.params)?;
    let gf = lucas_generating_series(&p, args.order)?;
    let inv = infinite_inverse_series(&p, args.order, InverseSumForm::Corrected)?;
    let rows: Vec<_> = (0..args.order)
        .map(|k| {
            let rec = lucas_matrix_rec(&p, k as u64);
            let (g, t) = (gf.coeffs()[k].clone(), &inv.coeffs()[k]);
            let (m, im) = (g == rec, *t == rec);
            (k, g, rec, m, im)
        })
        .collect();
    match args.format {
        Format::Plain => {
            for (k, g, _, m, im) in &rows {
                writeln!(out, "{k} {g} match={m} inverse_match={im}")?;
            }
        }
        Format::Csv => {
            writeln!(out, "k,g11,g12,g21,g22,l11,l12,l21,l22,match,inverse_match")?;
            for (k, g, rec, m, im) in &rows {
                let fields = std::iter::once(k.to_string())
                    .chain(g.entries().map(|e| e.to_string()))
                    .chain(rec.entries().map(|e| e.to_string()))
                    .chain([m.to_string(), im.to_string()]);
                write!(out, "{}", csv_line(fields))?;
            }
        }
        Format::Json => {
            let arr: Vec<_> = rows
                .iter()
                .map(|(k, g, rec, m, im)| json!({"k": k, "coefficient": g, "recurrence": rec, "match": m, "inverse_match": im}))
                .collect();
            write!(out, "{}", json_line(&json!(arr)))?;
        }
    }
    let clean = rows.iter().all(|r| r.3 && r.4);
    Ok(if clean { EXIT_OK } else { EXIT_VERIFY_FAILED })
}
