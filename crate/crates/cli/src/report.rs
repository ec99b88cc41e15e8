//! Machine-readable results. Every collection is a `Vec` or ordered by name,
//! so a fixed document always serializes to the same bytes.

use std::fmt::Write as _;

use hhx_core::hochschild::{ComplexMetadata, SquareReport, SquareVerdict};
use hhx_core::{SparseMatrix, ValidationReport};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct ResultReport {
    pub tool: String,
    pub field: String,
    /// Set over a prime field: dimensions may depend on the characteristic
    /// and only rational results are authoritative.
    pub advisory: bool,
    pub outputs: Vec<Output>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Output {
    Validate(ValidationOutput),
    Homology(HomologyTable),
    Induced(InducedMaps),
    Square(SquareOutput),
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationOutput {
    pub passed: bool,
    pub reports: Vec<ValidationReport>,
}

/// Sparse matrix with exact entries as fraction strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String)>,
}

impl From<&SparseMatrix> for MatrixJson {
    fn from(m: &SparseMatrix) -> Self {
        MatrixJson {
            rows: m.nrows(),
            cols: m.ncols(),
            entries: m.entries().iter().map(|(r, c, x)| (*r, *c, x.to_string())).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyRow {
    pub n: usize,
    pub dim: usize,
    pub chain_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyTable {
    pub space: String,
    pub algebra: String,
    pub module: String,
    pub rows: Vec<HomologyRow>,
    /// Chain dimensions through the truncation.
    pub chain_dims: Vec<usize>,
    pub metadata: ComplexMetadata,
}

/// Basis of one homology group: the chain basis labels and representative
/// cycles as columns in that basis.
#[derive(Clone, Debug, Serialize)]
pub struct HomologyBasis {
    pub dim: usize,
    pub chain_basis: Vec<String>,
    pub representatives: MatrixJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct InducedDegree {
    pub n: usize,
    pub source: HomologyBasis,
    pub target: HomologyBasis,
    pub matrix: MatrixJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain: Option<MatrixJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InducedMaps {
    pub measuring: String,
    pub t: String,
    pub t_coordinates: Vec<String>,
    pub space: String,
    pub source_metadata: ComplexMetadata,
    pub target_metadata: ComplexMetadata,
    pub degrees: Vec<InducedDegree>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologySquareOutput {
    pub n: usize,
    /// `equal`, `unequal` or `undefined`.
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<MatrixJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<MatrixJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FirstDifference {
    pub row: usize,
    pub col: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainSquareOutput {
    pub degree: usize,
    pub differing_entries: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_difference: Option<FirstDifference>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SquareOutput {
    pub map: String,
    pub measuring: String,
    pub t: String,
    pub source: String,
    pub target: String,
    pub normalized: bool,
    pub passed: bool,
    /// Validation failures of the inputs; the square is still evaluated.
    pub invalid_inputs: Vec<ValidationReport>,
    pub homology: Vec<HomologySquareOutput>,
    pub chain: Vec<ChainSquareOutput>,
}

impl SquareOutput {
    pub fn new(map: &str, measuring: &str, t: &str, normalized: bool, invalid: Vec<ValidationReport>, r: &SquareReport) -> Self {
        let homology = r
            .homology
            .iter()
            .map(|h| {
                let (verdict, reason) = match &h.verdict {
                    SquareVerdict::Equal => ("equal", None),
                    SquareVerdict::Unequal => ("unequal", None),
                    SquareVerdict::Undefined(why) => ("undefined", Some(why.clone())),
                };
                let show = h.verdict != SquareVerdict::Equal;
                HomologySquareOutput {
                    n: h.degree,
                    verdict: verdict.into(),
                    reason,
                    lhs: h.lhs.as_ref().filter(|_| show).map(MatrixJson::from),
                    rhs: h.rhs.as_ref().filter(|_| show).map(MatrixJson::from),
                }
            })
            .collect();
        let chain = r
            .chain
            .iter()
            .map(|c| ChainSquareOutput {
                degree: c.degree,
                differing_entries: c.differences,
                first_difference: c.first_difference.as_ref().map(|(row, col, l, rhs)| FirstDifference {
                    row: *row,
                    col: *col,
                    lhs: l.to_string(),
                    rhs: rhs.to_string(),
                }),
            })
            .collect();
        SquareOutput {
            map: map.into(),
            measuring: measuring.into(),
            t: t.into(),
            source: r.source.clone(),
            target: r.target.clone(),
            normalized,
            passed: r.passed() && invalid.is_empty(),
            invalid_inputs: invalid,
            homology,
            chain,
        }
    }
}

impl Output {
    /// Does this output count as success for the exit status?
    pub fn passed(&self) -> bool {
        match self {
            Output::Validate(v) => v.passed,
            Output::Square(s) => s.passed,
            Output::Homology(_) | Output::Induced(_) => true,
        }
    }
}

impl ResultReport {
    pub fn passed(&self) -> bool {
        self.outputs.iter().all(Output::passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    /// Human-readable tables.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if self.advisory {
            let _ = writeln!(out, "note: field {} is advisory; rational results are authoritative\n", self.field);
        }
        for (i, o) in self.outputs.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            match o {
                Output::Validate(v) => render_validation(&mut out, v),
                Output::Homology(h) => render_homology(&mut out, h),
                Output::Induced(m) => render_induced(&mut out, m),
                Output::Square(s) => render_square(&mut out, s),
            }
        }
        out
    }
}

fn render_validation(out: &mut String, v: &ValidationOutput) {
    for r in &v.reports {
        let _ = writeln!(out, "{r}");
    }
    let failed = v.reports.iter().filter(|r| !r.passed()).count();
    let _ = writeln!(out, "validation: {} objects, {} failed", v.reports.len(), failed);
}

fn render_homology(out: &mut String, h: &HomologyTable) {
    let mode = if h.metadata.normalized { "normalized" } else { "unnormalized" };
    let _ = writeln!(
        out,
        "HH^{}_n({}, {})  [{}; {mode}; truncation {}; model {}]",
        h.space, h.algebra, h.module, h.metadata.field, h.metadata.truncation, h.metadata.model
    );
    let _ = writeln!(out, "  {:>3}  {:>6}  {:>9}", "n", "dim", "chain dim");
    for r in &h.rows {
        let _ = writeln!(out, "  {:>3}  {:>6}  {:>9}", r.n, r.dim, r.chain_dim);
    }
}

fn render_matrix(out: &mut String, m: &MatrixJson, indent: &str) {
    if m.rows == 0 || m.cols == 0 {
        let _ = writeln!(out, "{indent}({}x{} empty)", m.rows, m.cols);
        return;
    }
    let mut cells = vec![vec!["0".to_string(); m.cols]; m.rows];
    for (r, c, x) in &m.entries {
        cells[*r][*c] = x.clone();
    }
    let width = cells.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
    for row in cells {
        let row: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
        let _ = writeln!(out, "{indent}[{}]", row.join(" "));
    }
}

fn combination(column: usize, m: &MatrixJson, labels: &[String]) -> String {
    let terms: Vec<String> = m
        .entries
        .iter()
        .filter(|(_, c, _)| *c == column)
        .map(|(r, _, x)| if x == "1" { labels[*r].clone() } else { format!("{x}*{}", labels[*r]) })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn render_basis(out: &mut String, side: &str, b: &HomologyBasis) {
    let _ = writeln!(out, "    {side} basis ({}):", b.dim);
    for j in 0..b.dim {
        let _ = writeln!(out, "      [{j}] {}", combination(j, &b.representatives, &b.chain_basis));
    }
}

fn render_induced(out: &mut String, m: &InducedMaps) {
    let mode = if m.source_metadata.normalized { "normalized" } else { "unnormalized" };
    let _ = writeln!(out, "{}^{}({}) on homology  [{mode}]", m.measuring, m.space, m.t);
    for d in &m.degrees {
        let _ = writeln!(out, "  n = {}: {}x{} matrix", d.n, d.matrix.rows, d.matrix.cols);
        render_basis(out, "source", &d.source);
        render_basis(out, "target", &d.target);
        render_matrix(out, &d.matrix, "    ");
        if let Some(c) = &d.chain {
            let _ = writeln!(out, "    chain level ({}x{}):", c.rows, c.cols);
            render_matrix(out, c, "      ");
        }
    }
}

fn render_square(out: &mut String, s: &SquareOutput) {
    let mode = if s.normalized { "normalized" } else { "unnormalized" };
    let _ = writeln!(out, "square for {}: {} → {}, {}({})  [{mode}]", s.map, s.source, s.target, s.measuring, s.t);
    for r in &s.invalid_inputs {
        let _ = writeln!(out, "  invalid input: {r}");
    }
    for h in &s.homology {
        match &h.reason {
            Some(why) => {
                let _ = writeln!(out, "  HH_{}: {} ({why})", h.n, h.verdict);
            }
            None => {
                let _ = writeln!(out, "  HH_{}: {}", h.n, h.verdict);
            }
        }
        if let (Some(l), Some(r)) = (&h.lhs, &h.rhs) {
            let _ = writeln!(out, "    HH(g)∘φ^Y(t):");
            render_matrix(out, l, "      ");
            let _ = writeln!(out, "    φ^Z(t)∘HH(g):");
            render_matrix(out, r, "      ");
        }
    }
    for c in &s.chain {
        match &c.first_difference {
            None => {
                let _ = writeln!(out, "  chain degree {}: equal", c.degree);
            }
            Some(d) => {
                let _ = writeln!(
                    out,
                    "  chain degree {}: {} entries differ, first at ({}, {}): {} vs {}",
                    c.degree, c.differing_entries, d.row, d.col, d.lhs, d.rhs
                );
            }
        }
    }
    let _ = writeln!(out, "verdict: {}", if s.passed { "PASS" } else { "FAIL" });
}
