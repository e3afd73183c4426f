//! The four catalogue comparison tables: shape grids for k = 2, 3, 4 and
//! the bounded-height grid for shape (0,0).

use std::fmt::{self, Write as _};

use num_traits::Zero;
use rayon::prelude::*;

use crate::bounded::bounded_series;
use crate::error::{Error, Result};
use crate::series::{ExactInt, K};
use crate::shape::{shape_series, Shape};

use super::matcher::match_terms;
use super::{MatchConfig, MatchReport, OeisId, SequenceSource, Source};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableId {
    K2,
    K3,
    K4,
    Bounded,
}

impl TableId {
    pub fn from_number(n: u32) -> Result<Self> {
        match n {
            1 => Ok(TableId::K2),
            2 => Ok(TableId::K3),
            3 => Ok(TableId::K4),
            4 => Ok(TableId::Bounded),
            _ => Err(Error::Precondition(format!(
                "table id must be 1..4, got {n}"
            ))),
        }
    }

    pub fn number(self) -> u32 {
        match self {
            TableId::K2 => 1,
            TableId::K3 => 2,
            TableId::K4 => 3,
            TableId::Bounded => 4,
        }
    }

    pub fn all() -> [TableId; 4] {
        [TableId::K2, TableId::K3, TableId::K4, TableId::Bounded]
    }
}

/// Closed-form patterns that appear in place of A-numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Literal {
    /// Plain `1`: the sequence 1,0,0,0,...
    Unit,
    /// `{b^n}`; `{1}` is `Powers(1)`.
    Powers(u32),
}

impl Literal {
    pub fn label(self) -> String {
        match self {
            Literal::Unit => "1".into(),
            Literal::Powers(1) => "{1}".into(),
            Literal::Powers(b) => format!("{{{b}^n}}"),
        }
    }

    pub fn terms(self, len: usize) -> Vec<ExactInt> {
        match self {
            Literal::Unit => (0..len).map(|i| ExactInt::from(u8::from(i == 0))).collect(),
            Literal::Powers(b) => {
                let mut out = Vec::with_capacity(len);
                let mut cur = ExactInt::from(1);
                for _ in 0..len {
                    out.push(cur.clone());
                    cur *= b;
                }
                out
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellEntry {
    Dash,
    Oeis(OeisId),
    Literal(Literal),
}

impl CellEntry {
    pub fn label(&self) -> String {
        match self {
            CellEntry::Dash => "--".into(),
            CellEntry::Oeis(id) => id.to_string(),
            CellEntry::Literal(l) => l.label(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellDef {
    pub row: usize,
    pub col: usize,
    pub k: K,
    pub shape: Shape,
    /// Ceiling for the bounded-height table.
    pub ceiling: Option<usize>,
    pub entry: CellEntry,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellOutcome {
    NoAssertion,
    Unavailable(OeisId),
    Compared {
        id: OeisId,
        source: Source,
        report: MatchReport,
    },
    Literal {
        literal: Literal,
        report: MatchReport,
    },
}

impl CellOutcome {
    pub fn report(&self) -> Option<&MatchReport> {
        match self {
            CellOutcome::Compared { report, .. } | CellOutcome::Literal { report, .. } => {
                Some(report)
            }
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellResult {
    pub def: CellDef,
    /// Coefficients starting at the first nonzero one.
    pub generated: Vec<ExactInt>,
    pub outcome: CellOutcome,
}

#[derive(Clone, Debug)]
pub struct TableReport {
    pub table: TableId,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub cells: Vec<CellResult>,
}

fn id(s: &str) -> CellEntry {
    CellEntry::Oeis(OeisId::parse(s).expect("table ids are well formed"))
}

fn parse_cell(s: &str) -> CellEntry {
    match s {
        "--" => CellEntry::Dash,
        "1" => CellEntry::Literal(Literal::Unit),
        "{1}" => CellEntry::Literal(Literal::Powers(1)),
        "{2^n}" => CellEntry::Literal(Literal::Powers(2)),
        "{3^n}" => CellEntry::Literal(Literal::Powers(3)),
        "{4^n}" => CellEntry::Literal(Literal::Powers(4)),
        other => id(other),
    }
}

const TABLE_K2: [[&str; 8]; 8] = [
    [
        "A000108", "A000108", "A000245", "A002057", "A000340", "A003517", "A000588", "A003518",
    ],
    [
        "A000108", "A000108", "A000245", "A002057", "A000340", "A003517", "A000588", "A003518",
    ],
    [
        "A000245", "A000245", "A026012", "A026016", "A026013", "A026017", "A026014", "A026018",
    ],
    [
        "A002057", "A002057", "A026016", "A026029", "A026026", "A026030", "A026027", "A026031",
    ],
    [
        "A000340", "A000340", "A026013", "A026026", "--", "--", "--", "--",
    ],
    [
        "A003517", "A003517", "A026017", "A026030", "--", "--", "--", "--",
    ],
    [
        "A000588", "A000588", "A026014", "A026027", "--", "--", "--", "--",
    ],
    [
        "A003518", "A003518", "A026018", "A026031", "--", "--", "--", "--",
    ],
];

const TABLE_K3: [[&str; 6]; 6] = [
    [
        "A001764", "A006013", "A001764", "A006629", "A102893", "A006630",
    ],
    [
        "A001764", "A006013", "A001764", "A006629", "A102893", "A006630",
    ],
    [
        "A001764", "A006013", "A001764", "A006629", "A102893", "A006630",
    ],
    ["A334680", "--", "A334680", "--", "--", "--"],
    ["A336945", "A030983", "A336945", "--", "--", "--"],
    ["A334976", "A334977", "A334976", "--", "--", "--"],
];

const TABLE_K4: [[&str; 6]; 6] = [
    [
        "A002293", "A069271", "A006632", "A002293", "A196678", "A006633",
    ],
    [
        "A002293", "A069271", "A006632", "A002293", "A196678", "A006633",
    ],
    [
        "A002293", "A069271", "A006632", "A002293", "A196678", "A006633",
    ],
    [
        "A002293", "A069271", "A006632", "A002293", "A196678", "A006633",
    ],
    ["A334682", "--", "--", "A334682", "--", "--"],
    ["--", "A334608", "--", "--", "--", "--"],
];

/// Rows M = 0..=12, columns k = 2, 3, 4.
const TABLE_BOUNDED: [[&str; 3]; 13] = [
    ["1", "1", "1"],
    ["{1}", "1", "1"],
    ["{2^n}", "{1}", "1"],
    ["A001519", "{2^n}", "{1}"],
    ["A124302", "{3^n}", "{2^n}"],
    ["A080937", "A001835", "{3^n}"],
    ["A024175", "A081704", "{4^n}"],
    ["A080938", "A083881", "A004253"],
    ["A033191", "--", "--"],
    ["A211216", "--", "A261399"],
    ["--", "--", "A143648"],
    ["--", "--", "--"],
    ["--", "--", "--"],
];

fn shape_grid<const C: usize>(k: u32, grid: &[[&str; C]]) -> Vec<CellDef> {
    let k = K::new(k).expect("table k is valid");
    let mut out = Vec::new();
    for (alpha, row) in grid.iter().enumerate() {
        for (beta, cell) in row.iter().enumerate() {
            out.push(CellDef {
                row: alpha,
                col: beta,
                k,
                shape: Shape::new(alpha, beta),
                ceiling: None,
                entry: parse_cell(cell),
            });
        }
    }
    out
}

/// Every cell of a table, row-major, exactly as catalogued.
pub fn table_cells(table: TableId) -> Vec<CellDef> {
    match table {
        TableId::K2 => shape_grid(2, &TABLE_K2),
        TableId::K3 => shape_grid(3, &TABLE_K3),
        TableId::K4 => shape_grid(4, &TABLE_K4),
        TableId::Bounded => {
            let mut out = Vec::new();
            for (m, row) in TABLE_BOUNDED.iter().enumerate() {
                for (col, cell) in row.iter().enumerate() {
                    out.push(CellDef {
                        row: m,
                        col,
                        k: K::new(col as u32 + 2).unwrap(),
                        shape: Shape::new(0, 0),
                        ceiling: Some(m),
                        entry: parse_cell(cell),
                    });
                }
            }
            out
        }
    }
}

fn labels(table: TableId) -> (Vec<String>, Vec<String>) {
    let (rows, cols) = match table {
        TableId::K2 => (8, 8),
        TableId::K3 | TableId::K4 => (6, 6),
        TableId::Bounded => (13, 3),
    };
    match table {
        TableId::Bounded => (
            (0..rows).map(|m| format!("M={m}")).collect(),
            (0..cols).map(|c| format!("k={}", c + 2)).collect(),
        ),
        _ => (
            (0..rows).map(|a| format!("alpha={a}")).collect(),
            (0..cols).map(|b| format!("beta={b}")).collect(),
        ),
    }
}

/// A-numbers a table cites, sorted and deduplicated.
pub fn cited_ids(table: TableId) -> Vec<OeisId> {
    let mut ids: Vec<OeisId> = table_cells(table)
        .into_iter()
        .filter_map(|c| match c.entry {
            CellEntry::Oeis(id) => Some(id),
            _ => None,
        })
        .collect();
    ids.sort();
    ids.dedup();
    ids
}

/// `terms` coefficients of the shape series (or of its bounded version
/// when `ceiling` is set), starting at the first nonzero coefficient.
/// Shape classes are empty below `n = ceil((α-β)/(k-1))`, which is at most
/// α, so α extra coefficients always suffice.
pub fn leading_terms(k: K, shape: Shape, ceiling: Option<usize>, terms: usize) -> Vec<ExactInt> {
    let order = (terms + shape.alpha).saturating_sub(1);
    let s = match ceiling {
        Some(m) => bounded_series(k, shape, m, order),
        None => shape_series(k, shape, order),
    };
    let start = s.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0);
    s.coeffs()[start..].iter().take(terms).cloned().collect()
}

pub fn generate_cell(def: &CellDef, terms: usize) -> Vec<ExactInt> {
    leading_terms(def.k, def.shape, def.ceiling, terms)
}

fn evaluate(
    def: &CellDef,
    terms: usize,
    source: &dyn SequenceSource,
    config: &MatchConfig,
) -> CellResult {
    let generated = generate_cell(def, terms);
    let outcome = match &def.entry {
        CellEntry::Dash => CellOutcome::NoAssertion,
        CellEntry::Oeis(id) => match source.lookup(id) {
            None => CellOutcome::Unavailable(id.clone()),
            Some(seq) => CellOutcome::Compared {
                id: id.clone(),
                source: seq.source,
                report: match_terms(&generated, &seq.terms, config),
            },
        },
        CellEntry::Literal(Literal::Unit) => {
            let matched = generated == Literal::Unit.terms(terms);
            CellOutcome::Literal {
                literal: Literal::Unit,
                report: MatchReport {
                    matched,
                    overlap_length: if matched { terms } else { 0 },
                    ..MatchReport::unmatched()
                },
            }
        }
        CellEntry::Literal(l) => CellOutcome::Literal {
            literal: *l,
            report: match_terms(&generated, &l.terms(terms + config.max_shift), config),
        },
    };
    CellResult {
        def: def.clone(),
        generated,
        outcome,
    }
}

/// Regenerates every cell with `terms` coefficients and compares it against
/// `source`. Cells are evaluated on a pool of `jobs` threads (0 = rayon's
/// default); output order is always row-major.
pub fn regenerate_table(
    table: TableId,
    terms: usize,
    source: &dyn SequenceSource,
    config: &MatchConfig,
    jobs: usize,
) -> Result<TableReport> {
    if terms == 0 {
        return Err(Error::Precondition("terms must be positive".into()));
    }
    let defs = table_cells(table);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    let cells = pool.install(|| {
        defs.par_iter()
            .map(|d| evaluate(d, terms, source, config))
            .collect::<Vec<_>>()
    });
    let (row_labels, col_labels) = labels(table);
    Ok(TableReport {
        table,
        row_labels,
        col_labels,
        cells,
    })
}

fn annotate(cell: &CellResult) -> String {
    let label = cell.def.entry.label();
    match &cell.outcome {
        CellOutcome::NoAssertion => label,
        CellOutcome::Unavailable(_) => format!("{label} unavailable"),
        CellOutcome::Compared { report, .. } | CellOutcome::Literal { report, .. } => {
            if report.matched {
                format!(
                    "{label} ok shift={} overlap={}",
                    report.shift, report.overlap_length
                )
            } else {
                format!("{label} MISMATCH")
            }
        }
    }
}

impl TableReport {
    pub fn cell(&self, row: usize, col: usize) -> Option<&CellResult> {
        self.cells
            .iter()
            .find(|c| c.def.row == row && c.def.col == col)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "| | {} |", self.col_labels.join(" | "));
        let _ = writeln!(out, "|---|{}", "---|".repeat(self.col_labels.len()));
        for (r, label) in self.row_labels.iter().enumerate() {
            let row: Vec<String> = self
                .cells
                .iter()
                .filter(|c| c.def.row == r)
                .map(annotate)
                .collect();
            let _ = writeln!(out, "| {label} | {} |", row.join(" | "));
        }
        out
    }

    /// One line per cell: coordinates, catalogued entry, outcome, terms.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("row,col,k,alpha,beta,ceiling,entry,status,shift,overlap,terms\n");
        for c in &self.cells {
            let d = &c.def;
            let (status, shift, overlap) = match &c.outcome {
                CellOutcome::NoAssertion => ("none", String::new(), String::new()),
                CellOutcome::Unavailable(_) => ("unavailable", String::new(), String::new()),
                CellOutcome::Compared { report, .. } | CellOutcome::Literal { report, .. } => (
                    if report.matched {
                        "matched"
                    } else {
                        "mismatch"
                    },
                    report.shift.to_string(),
                    report.overlap_length.to_string(),
                ),
            };
            let terms: Vec<String> = c.generated.iter().map(|t| t.to_string()).collect();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},\"{}\"",
                d.row,
                d.col,
                d.k,
                d.shape.alpha,
                d.shape.beta,
                d.ceiling.map(|m| m.to_string()).unwrap_or_default(),
                d.entry.label(),
                status,
                shift,
                overlap,
                terms.join(" "),
            );
        }
        out
    }
}

impl fmt::Display for TableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_markdown())
    }
}
