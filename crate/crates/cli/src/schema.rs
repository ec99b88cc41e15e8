//! The JSON workspace document.
//!
//! Scalars are strings (`"3/2"`, `"-1"`), never JSON numbers, so values stay
//! exact. Structure constants are sparse arrays `[i, j, k, "coeff"]`; absent
//! entries are zero.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// `[i, j, k, "coeff"]`.
pub type Entry = (usize, usize, usize, String);
/// `[k, "coeff"]`.
pub type VectorEntry = (usize, String);

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceDocument {
    /// `"rational"` or `"prime:p"`.
    pub field: String,
    /// Default truncation for built-in simplicial sets.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub algebras: BTreeMap<String, AlgebraSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub coalgebras: BTreeMap<String, CoalgebraSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub comodules: BTreeMap<String, ComoduleSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub measurings: BTreeMap<String, MeasuringSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub comodule_measurings: BTreeMap<String, ComoduleMeasuringSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub simplicial_sets: BTreeMap<String, SimplicialSetSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub simplicial_maps: BTreeMap<String, SimplicialMapSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub requests: Vec<Request>,
}

/// Either `builtin` (`"truncated:n"`, `"split:n"`, `"square_zero:n"`,
/// `"ground"`) or the explicit `basis`, `unit` and `mult` tables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<VectorEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mult: Option<Vec<Entry>>,
}

/// `regular: true`, or `basis` with `action` entries `[i, j, l, α]` meaning
/// `e_i·m_j` has `α` on `m_l`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub algebra: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub regular: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Entry>>,
}

/// Either `builtin` (`"divided_powers:r"`, `"set_like:g,h,…"`) or `basis`,
/// `coproduct` entries `[s, i, j, c]` and `counit`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoalgebraSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coproduct: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<Vec<VectorEntry>>,
}

/// `regular: true`, or `basis` with `coaction` entries `[t, i, u, c]` meaning
/// `ρ(t)` has `c` on `c_i ⊗ t_u`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComoduleSpec {
    pub coalgebra: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub regular: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coaction: Option<Vec<Entry>>,
}

/// `table` entries `[s, a, b, c]`: `ψ(c_s)(a_a)` has `c` on `b_b`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasuringSpec {
    pub coalgebra: String,
    pub source: String,
    pub target: String,
    pub table: Vec<Entry>,
}

/// `regular: true` (the measuring acting on the regular modules through the
/// regular comodule), or `comodule`, `source`, `target` and `table` entries
/// `[t, m, n, c]`: `φ(t)(m_m)` has `c` on `n_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComoduleMeasuringSpec {
    pub measuring: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub regular: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comodule: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Entry>>,
}

/// Either `builtin` (`"point"`, `"circle"`, `"sphere:d"`, `"wedge(X,Y)"`,
/// `"product(X,Y)"`) with an optional `truncation`, or explicit `sizes`,
/// `faces[k][i]` and `degeneracies[k][j]` tables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialSetSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    /// Display name; defaults to the built-in name or the table key.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sizes: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degeneracies: Option<Vec<Vec<Vec<usize>>>>,
}

/// `kind` is `"identity"` or `"collapse"` (needs `source`), `"project1"` or
/// `"project2"` (needs `left` and `right`, the source is their product), or
/// `"explicit"` (needs `source`, `target` and `components[k]`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialMapSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<Vec<usize>>>,
}

/// A computation to run with `hhx run`. `command` is one of `validate`,
/// `homology`, `induced` or `square`; the other fields mirror the command
/// line flags of that subcommand.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Request {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measuring: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalized: Option<bool>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub chain: bool,
}

pub fn parse_document(text: &str) -> Result<WorkspaceDocument, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse { line: e.line(), column: e.column(), message: e.to_string() })
}

pub fn read_document(path: &std::path::Path) -> Result<WorkspaceDocument, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_document(&text)
}

pub fn to_json(doc: &WorkspaceDocument) -> String {
    serde_json::to_string_pretty(doc).expect("documents always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_error_has_position() {
        let err = parse_document("{\n  \"field\": \"rational\",\n  \"truncation\": 3,\n}").unwrap_err();
        match err {
            CliError::Parse { line, column, .. } => assert_eq!((line, column), (4, 1)),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(matches!(parse_document(r#"{"field":"rational","algebra":{}}"#), Err(CliError::Parse { .. })));
    }

    #[test]
    fn scalars_must_be_strings() {
        let doc = r#"{"field":"rational","algebras":{"A":{"basis":["1"],"unit":[[0,1]],"mult":[]}}}"#;
        assert!(matches!(parse_document(doc), Err(CliError::Parse { .. })));
    }
}
