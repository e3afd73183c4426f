//! `kdyck`: exact counts and series for raised k-Dyck paths, oracle
//! cross-checks and catalogue table regeneration.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use kdyck::bounded::{
    bounded_count, bounded_series, max_height_count, max_height_series, BoundedQuery,
};
use kdyck::filters::{
    minheight_count, minheight_count_with_route, minheight_series, returns_count,
    returns_count_with_route, returns_series,
};
use kdyck::oeis::tables::{cited_ids, leading_terms, regenerate_table, CellOutcome, TableId};
use kdyck::oeis::{match_sequence, MatchConfig, MatchReport, OeisClient, OeisId, Source};
use kdyck::oracle::{enumerate_with_limit, oracle_count, PathFilter, DEFAULT_ENUMERATION_LIMIT};
use kdyck::shape::{count, count_closed, count_recurrence, k2_count, shape_series, Method};
use kdyck::{Error, ExactInt, PathClassQuery, Shape, TruncatedSeries, K};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_LIMIT: u8 = 3;
const EXIT_UNAVAILABLE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "kdyck",
    version,
    about = "Exact enumeration of raised k-Dyck paths"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of paths with n down steps.
    Count(CountArgs),
    /// Coefficients 0..=terms of a generating function.
    Series(SeriesArgs),
    /// Regenerate a catalogue table and compare each cell with OEIS data.
    Table(TableArgs),
    /// Compare one generated sequence with an OEIS entry.
    Verify(VerifyArgs),
    /// Sweep a grid and check every formula against the DP oracle.
    Xcheck(XcheckArgs),
    /// Download (or, offline, look up) an OEIS b-file.
    Fetch(FetchArgs),
}

#[derive(Args)]
struct ShapeArgs {
    #[arg(long)]
    k: u32,
    #[arg(long, default_value_t = 0)]
    alpha: usize,
    #[arg(long, default_value_t = 0)]
    beta: usize,
}

#[derive(Args)]
#[group(multiple = false)]
struct FilterArgs {
    /// Exactly this many down steps landing on the ground.
    #[arg(long)]
    returns: Option<usize>,
    /// Lowest point exactly at this height.
    #[arg(long)]
    min_height: Option<usize>,
    /// Highest point exactly at this height.
    #[arg(long)]
    max_height: Option<usize>,
    /// Never above this height.
    #[arg(long)]
    bounded: Option<usize>,
}

impl FilterArgs {
    fn filter(&self) -> Option<Filter> {
        self.returns
            .map(Filter::Returns)
            .or(self.min_height.map(Filter::MinHeight))
            .or(self.max_height.map(Filter::MaxHeight))
            .or(self.bounded.map(Filter::Bounded))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CliMethod {
    /// Cheapest closed-form route.
    Closed,
    Recurrence,
    /// Coefficient extraction from the generating function.
    Series,
    /// Exhaustive path enumeration (bounded by --limit).
    Oracle,
    /// Lattice dynamic programming.
    Dp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    filter: FilterArgs,
    #[arg(long, value_enum, default_value_t = CliMethod::Closed)]
    method: CliMethod,
    /// Largest class the oracle method will enumerate.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
    limit: u64,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Args)]
struct SeriesArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    #[arg(long)]
    terms: usize,
    #[command(flatten)]
    filter: FilterArgs,
    #[arg(long, value_enum, default_value_t = CliMethod::Series)]
    method: CliMethod,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
    limit: u64,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Args)]
struct MatchArgs {
    #[arg(long, default_value_t = MatchConfig::default().max_shift)]
    max_shift: usize,
    #[arg(long, default_value_t = MatchConfig::default().min_overlap)]
    min_overlap: usize,
}

impl MatchArgs {
    fn config(&self) -> MatchConfig {
        MatchConfig {
            max_shift: self.max_shift,
            min_overlap: self.min_overlap,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Markdown,
    Csv,
}

#[derive(Args)]
struct TableArgs {
    /// 1-3: shape grids for k = 2, 3, 4; 4: bounded height at shape (0,0).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=4))]
    id: u32,
    #[arg(long, default_value_t = 16)]
    terms: usize,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = TableFormat::Markdown)]
    format: TableFormat,
    /// Worker threads for cell evaluation (0 = one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Use only the cache and the bundled snapshot.
    #[arg(long)]
    offline: bool,
    #[command(flatten)]
    matching: MatchArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    oeis: String,
    #[command(flatten)]
    shape: ShapeArgs,
    /// Compare the height-bounded series instead.
    #[arg(long)]
    bounded: Option<usize>,
    #[arg(long, default_value_t = 16)]
    terms: usize,
    #[arg(long)]
    offline: bool,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
    #[command(flatten)]
    matching: MatchArgs,
}

#[derive(Args)]
struct XcheckArgs {
    #[arg(long)]
    k_max: u32,
    #[arg(long)]
    shape_max: usize,
    #[arg(long)]
    n_max: usize,
}

#[derive(Args)]
struct FetchArgs {
    #[arg(long)]
    id: String,
    #[arg(long)]
    offline: bool,
    /// Terms to print.
    #[arg(long, default_value_t = 20)]
    terms: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
enum Filter {
    Returns(usize),
    MinHeight(usize),
    MaxHeight(usize),
    Bounded(usize),
}

impl Filter {
    fn oracle(self) -> PathFilter {
        match self {
            Filter::Returns(r) => PathFilter::returns(r),
            Filter::MinHeight(m) => PathFilter::min_height(m),
            Filter::MaxHeight(m) => PathFilter::max_height(m),
            Filter::Bounded(m) => PathFilter::ceiling(m),
        }
    }
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
struct QueryEcho {
    k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    terms: Option<usize>,
    alpha: usize,
    beta: usize,
    filter: Option<Filter>,
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
struct OutputRecord {
    query: QueryEcho,
    method: String,
    values: Vec<String>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidK(_)
            | Error::InvalidId(_)
            | Error::Precondition(_)
            | Error::OrderMismatch { .. } => EXIT_USAGE,
            Error::ResourceLimit { .. } => EXIT_LIMIT,
            Error::Unavailable(_) | Error::Fetch { .. } => EXIT_UNAVAILABLE,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn count_one(
    q: &PathClassQuery,
    filter: Option<Filter>,
    method: CliMethod,
    limit: u64,
) -> Result<(ExactInt, String), Failure> {
    let (k, n, s) = (q.k, q.n, q.shape);
    let out = match (method, filter) {
        (CliMethod::Closed, None) => {
            let (v, m) = count(q, Method::Auto)?;
            (v, m.name().to_string())
        }
        (CliMethod::Closed, Some(Filter::Returns(r))) => {
            let (v, route) = returns_count_with_route(k, n, s, r);
            (v, route.name().to_string())
        }
        (CliMethod::Closed, Some(Filter::MinHeight(m))) => {
            let (v, route) = minheight_count_with_route(k, n, s, m);
            (v, route.name().to_string())
        }
        (CliMethod::Closed, Some(Filter::Bounded(m))) => {
            (bounded_count(&BoundedQuery::new(*q, m)), "bounded".into())
        }
        (CliMethod::Closed, Some(Filter::MaxHeight(m))) => (
            max_height_count(&BoundedQuery::new(*q, m)),
            "max-height".into(),
        ),
        (CliMethod::Recurrence, None) => (count_recurrence(q), "recurrence".into()),
        (CliMethod::Recurrence, Some(Filter::MinHeight(m))) => {
            // lowest point at m: shift down by m, minus those that never touch 0
            let at = |d: usize| {
                s.lowered(d)
                    .map(|t| count_recurrence(&PathClassQuery::new(k, n, t)))
                    .unwrap_or_default()
            };
            (at(m) - at(m + 1), "recurrence".into())
        }
        (CliMethod::Recurrence, Some(_)) => {
            return Err(usage(
                "--method recurrence supports no filter or --min-height only",
            ));
        }
        (CliMethod::Series, f) => (select_series(k, s, f, n).coeff(n).clone(), "series".into()),
        (CliMethod::Oracle, f) => {
            let pf = f.map_or_else(PathFilter::none, Filter::oracle);
            let listed = enumerate_with_limit(q, &pf, limit)?.count();
            (ExactInt::from(listed), "oracle".into())
        }
        (CliMethod::Dp, f) => {
            let pf = f.map_or_else(PathFilter::none, Filter::oracle);
            (oracle_count(q, &pf), "dp".into())
        }
    };
    Ok(out)
}

fn select_series(k: K, s: Shape, filter: Option<Filter>, order: usize) -> TruncatedSeries {
    match filter {
        None => shape_series(k, s, order),
        Some(Filter::Returns(r)) => returns_series(k, s, r, order),
        Some(Filter::MinHeight(m)) => minheight_series(k, s, m, order),
        Some(Filter::MaxHeight(m)) => max_height_series(k, s, m, order),
        Some(Filter::Bounded(m)) => bounded_series(k, s, m, order),
    }
}

fn render(record: &OutputRecord, first_index: usize, format: Format) -> String {
    match format {
        Format::Plain => format!("{}\n", record.values.join(",")),
        Format::Json => format!(
            "{}\n",
            serde_json::to_string(record).expect("record serializes")
        ),
        Format::Csv => {
            let mut out = String::from("n,value\n");
            for (i, v) in record.values.iter().enumerate() {
                let _ = writeln!(out, "{},{v}", first_index + i);
            }
            out
        }
    }
}

fn cmd_count(a: CountArgs) -> CmdResult {
    let k = K::new(a.shape.k)?;
    let q = PathClassQuery::new(k, a.n, Shape::new(a.shape.alpha, a.shape.beta));
    let filter = a.filter.filter();
    let (v, method) = count_one(&q, filter, a.method, a.limit)?;
    let record = OutputRecord {
        query: QueryEcho {
            k: k.get(),
            n: Some(a.n),
            terms: None,
            alpha: a.shape.alpha,
            beta: a.shape.beta,
            filter,
        },
        method,
        values: vec![v.to_string()],
    };
    print!("{}", render(&record, a.n, a.format));
    Ok(ExitCode::SUCCESS)
}

fn cmd_series(a: SeriesArgs) -> CmdResult {
    let k = K::new(a.shape.k)?;
    let s = Shape::new(a.shape.alpha, a.shape.beta);
    let filter = a.filter.filter();
    let values: Vec<ExactInt> = match a.method {
        CliMethod::Series => select_series(k, s, filter, a.terms).into_coeffs(),
        m => (0..=a.terms)
            .map(|n| count_one(&PathClassQuery::new(k, n, s), filter, m, a.limit).map(|(v, _)| v))
            .collect::<Result<_, _>>()?,
    };
    let method = match a.method {
        CliMethod::Closed => "closed",
        CliMethod::Recurrence => "recurrence",
        CliMethod::Series => "series",
        CliMethod::Oracle => "oracle",
        CliMethod::Dp => "dp",
    };
    let record = OutputRecord {
        query: QueryEcho {
            k: k.get(),
            n: None,
            terms: Some(a.terms),
            alpha: s.alpha,
            beta: s.beta,
            filter,
        },
        method: method.into(),
        values: values.iter().map(|v| v.to_string()).collect(),
    };
    print!("{}", render(&record, 0, a.format));
    Ok(ExitCode::SUCCESS)
}

fn cmd_table(a: TableArgs) -> CmdResult {
    let table = TableId::from_number(a.id)?;
    let client = OeisClient::new(a.offline);
    let source = client.prefetch(&cited_ids(table));
    let report = regenerate_table(table, a.terms, &source, &a.matching.config(), a.jobs)?;
    let body = match a.format {
        TableFormat::Markdown => report.to_markdown(),
        TableFormat::Csv => report.to_csv(),
    };
    match &a.out {
        Some(path) => fs::write(path, &body).map_err(Error::from)?,
        None => print!("{body}"),
    }
    let (mut matched, mut mismatched, mut unavailable) = (0, 0, 0);
    for c in &report.cells {
        match &c.outcome {
            CellOutcome::NoAssertion => {}
            CellOutcome::Unavailable(_) => unavailable += 1,
            o => {
                if o.report().is_some_and(|r| r.matched) {
                    matched += 1;
                } else {
                    mismatched += 1;
                }
            }
        }
    }
    eprintln!(
        "table {}: {matched} matched, {mismatched} mismatched, {unavailable} unavailable",
        a.id
    );
    Ok(if mismatched > 0 {
        ExitCode::from(EXIT_MISMATCH)
    } else {
        ExitCode::SUCCESS
    })
}

#[derive(Serialize)]
struct VerifyRecord<'a> {
    id: &'a str,
    source: &'a str,
    matched: bool,
    shift: i64,
    dropped_prefix: usize,
    overlap_length: usize,
    index_offset: i64,
    generated: Vec<String>,
}

fn source_name(s: Source) -> &'static str {
    match s {
        Source::Snapshot => "snapshot",
        Source::Fetched => "fetched",
    }
}

fn cmd_verify(a: VerifyArgs) -> CmdResult {
    let id = OeisId::parse(&a.oeis)?;
    let k = K::new(a.shape.k)?;
    if a.terms == 0 {
        return Err(usage("--terms must be positive"));
    }
    let generated = leading_terms(
        k,
        Shape::new(a.shape.alpha, a.shape.beta),
        a.bounded,
        a.terms,
    );
    let client = OeisClient::new(a.offline);
    let target = client.fetch(&id).or_else(|e| match e {
        Error::Fetch { .. } => client.local(&id),
        e => Err(e),
    })?;
    let r: MatchReport = match_sequence(&generated, &target, &a.matching.config());
    match a.format {
        Format::Json => {
            let rec = VerifyRecord {
                id: id.as_str(),
                source: source_name(target.source),
                matched: r.matched,
                shift: r.shift,
                dropped_prefix: r.dropped_prefix,
                overlap_length: r.overlap_length,
                index_offset: r.index_offset,
                generated: generated.iter().map(|v| v.to_string()).collect(),
            };
            println!(
                "{}",
                serde_json::to_string(&rec).expect("record serializes")
            );
        }
        _ => println!(
            "{id} {} shift={} dropped_prefix={} overlap={} index_offset={} source={}",
            if r.matched { "matched" } else { "not matched" },
            r.shift,
            r.dropped_prefix,
            r.overlap_length,
            r.index_offset,
            source_name(target.source),
        ),
    }
    Ok(if r.matched {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_MISMATCH)
    })
}

fn cmd_xcheck(a: XcheckArgs) -> CmdResult {
    if a.k_max < 2 {
        return Err(usage("--k-max must be at least 2"));
    }
    let mut checks = 0u64;
    for kv in 2..=a.k_max {
        let k = K::new(kv)?;
        for alpha in 0..=a.shape_max {
            for beta in 0..=a.shape_max {
                let s = Shape::new(alpha, beta);
                for n in 0..=a.n_max {
                    let q = PathClassQuery::new(k, n, s);
                    let mut cases: Vec<(String, ExactInt, PathFilter)> = vec![
                        ("closed".into(), count_closed(&q), PathFilter::none()),
                        (
                            "dispatch".into(),
                            count(&q, Method::Auto)?.0,
                            PathFilter::none(),
                        ),
                        (
                            "recurrence".into(),
                            count_recurrence(&q),
                            PathFilter::none(),
                        ),
                        (
                            "series".into(),
                            shape_series(k, s, n).coeff(n).clone(),
                            PathFilter::none(),
                        ),
                    ];
                    if kv == 2 {
                        cases.push(("k2".into(), k2_count(n, s), PathFilter::none()));
                    }
                    for m in 0..=alpha.min(beta) {
                        cases.push((
                            format!("min-height={m}"),
                            minheight_count(k, n, s, m),
                            PathFilter::min_height(m),
                        ));
                    }
                    for r in 0..=n {
                        cases.push((
                            format!("returns={r}"),
                            returns_count(k, n, s, r),
                            PathFilter::returns(r),
                        ));
                    }
                    for m in alpha.max(beta)..=a.shape_max + 2 {
                        let bq = BoundedQuery::new(q, m);
                        cases.push((
                            format!("bounded={m}"),
                            bounded_count(&bq),
                            PathFilter::ceiling(m),
                        ));
                        cases.push((
                            format!("max-height={m}"),
                            max_height_count(&bq),
                            PathFilter::max_height(m),
                        ));
                    }
                    for (what, formula, pf) in cases {
                        checks += 1;
                        let oracle = oracle_count(&q, &pf);
                        if formula != oracle {
                            println!(
                                "counterexample: {what} {q}: formula {formula}, oracle {oracle}"
                            );
                            return Ok(ExitCode::from(EXIT_MISMATCH));
                        }
                    }
                }
            }
        }
    }
    println!("xcheck: {checks} checks agree with the oracle");
    Ok(ExitCode::SUCCESS)
}

fn cmd_fetch(a: FetchArgs) -> CmdResult {
    let id = OeisId::parse(&a.id)?;
    let seq = OeisClient::new(a.offline).fetch(&id)?;
    let shown: Vec<String> = seq
        .terms
        .iter()
        .take(a.terms)
        .map(|t| t.to_string())
        .collect();
    println!(
        "{id} source={} terms={}: {}",
        source_name(seq.source),
        seq.terms.len(),
        shown.join(",")
    );
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Count(a) => cmd_count(a),
        Command::Series(a) => cmd_series(a),
        Command::Table(a) => cmd_table(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Xcheck(a) => cmd_xcheck(a),
        Command::Fetch(a) => cmd_fetch(a),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("kdyck: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
