//! The subcommands, as functions from a document to a [`ResultReport`].

use std::sync::Arc;

use hhx_core::hochschild::{
    homology_map_with, measuring_chain_map, verify_theorem_square, ChainComplex, LodayModule,
};
use hhx_core::{Field, FiniteModule, PointedSimplicialSet, ValidationReport};

use crate::error::{CliError, EXIT_FAILURE};
use crate::report::*;
use crate::schema::{Request, WorkspaceDocument};
use crate::texpr::parse_texpr;
use crate::workspace::{ResolveOptions, Workspace};

/// Global flags shared by all subcommands.
#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub field: Option<Field>,
    pub normalized: bool,
    pub truncation: Option<usize>,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { field: None, normalized: true, truncation: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Homology { space: String, algebra: String, module: Option<String>, n_max: usize, normalized: Option<bool> },
    Induced { measuring: String, t: String, space: String, n_max: usize, chain: bool, normalized: Option<bool> },
    Square { map: String, measuring: String, t: String, n_max: usize, normalized: Option<bool> },
}

/// Truncation a validate run uses for built-in sets when nothing else is given.
pub const VALIDATE_TRUNCATION: usize = 3;

impl Command {
    fn needed_truncation(&self) -> usize {
        match self {
            Command::Validate => VALIDATE_TRUNCATION,
            Command::Homology { n_max, .. } | Command::Induced { n_max, .. } | Command::Square { n_max, .. } => n_max + 1,
        }
    }

    pub fn from_request(r: &Request) -> Result<Self, CliError> {
        let need = |v: &Option<String>, key: &str| {
            v.clone().ok_or_else(|| CliError::Usage(format!("`{}` request needs `{key}`", r.command)))
        };
        let n_max = || r.n_max.ok_or_else(|| CliError::Usage(format!("`{}` request needs `n_max`", r.command)));
        Ok(match r.command.as_str() {
            "validate" => Command::Validate,
            "homology" => Command::Homology {
                space: need(&r.space, "space")?,
                algebra: need(&r.algebra, "algebra")?,
                module: r.module.clone(),
                n_max: n_max()?,
                normalized: r.normalized,
            },
            "induced" => Command::Induced {
                measuring: need(&r.measuring, "measuring")?,
                t: need(&r.t, "t")?,
                space: need(&r.space, "space")?,
                n_max: n_max()?,
                chain: r.chain,
                normalized: r.normalized,
            },
            "square" => Command::Square {
                map: need(&r.map, "map")?,
                measuring: need(&r.measuring, "measuring")?,
                t: need(&r.t, "t")?,
                n_max: n_max()?,
                normalized: r.normalized,
            },
            other => return Err(CliError::Usage(format!("unknown request command `{other}`"))),
        })
    }
}

/// The report and the exit status it implies.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: ResultReport,
    pub exit_code: i32,
}

/// Resolves `doc`, validates every object, then runs `commands` in order.
///
/// Homology and induced maps need a valid workspace; on a validation failure
/// the run stops with the failing reports. A square is evaluated even for
/// invalid inputs so that broken data shows up as a concrete mismatch.
pub fn execute(doc: &WorkspaceDocument, commands: &[Command], settings: &Settings) -> Result<Outcome, CliError> {
    let opts = ResolveOptions {
        field: settings.field,
        truncation: settings.truncation,
        default_truncation: commands.iter().map(Command::needed_truncation).max().unwrap_or(VALIDATE_TRUNCATION),
    };
    let ws = Workspace::resolve(doc, &opts)?;
    let reports = ws.validate_all();
    let invalid: Vec<ValidationReport> = reports.iter().filter(|r| !r.passed()).cloned().collect();
    let mut outputs = Vec::new();
    for command in commands {
        let normalized = |n: &Option<bool>| n.unwrap_or(settings.normalized);
        match command {
            Command::Validate => {
                outputs.push(Output::Validate(ValidationOutput { passed: invalid.is_empty(), reports: reports.clone() }));
            }
            Command::Homology { .. } | Command::Induced { .. } if !invalid.is_empty() => {
                outputs.push(Output::Validate(ValidationOutput { passed: false, reports: invalid.clone() }));
                break;
            }
            Command::Homology { space, algebra, module, n_max, normalized: n } => {
                outputs.push(Output::Homology(homology(&ws, space, algebra, module.as_deref(), *n_max, normalized(n))?));
            }
            Command::Induced { measuring, t, space, n_max, chain, normalized: n } => {
                outputs.push(Output::Induced(induced(&ws, measuring, t, space, *n_max, *chain, normalized(n))?));
            }
            Command::Square { map, measuring, t, n_max, normalized: n } => {
                outputs.push(square(&ws, map, measuring, t, *n_max, normalized(n), &invalid)?);
            }
        }
    }
    let report = ResultReport {
        tool: format!("hhx {}", env!("CARGO_PKG_VERSION")),
        field: ws.field.to_string(),
        advisory: !ws.field.is_rational(),
        outputs,
    };
    let exit_code = if report.passed() { 0 } else { EXIT_FAILURE };
    Ok(Outcome { report, exit_code })
}

fn check_depth(y: &PointedSimplicialSet, space: &str, n_max: usize) -> Result<(), CliError> {
    if n_max + 1 > y.truncation() {
        return Err(CliError::TruncationTooShallow { space: space.into(), requested: n_max, truncation: y.truncation() });
    }
    Ok(())
}

fn homology(
    ws: &Workspace,
    space: &str,
    algebra: &str,
    module: Option<&str>,
    n_max: usize,
    normalized: bool,
) -> Result<HomologyTable, CliError> {
    let from = "homology request";
    let y = ws.simplicial_set(space, from)?;
    let a = ws.algebra(algebra, from)?;
    let m = match module {
        Some(name) => ws.module(name, from)?.clone(),
        None => Arc::new(FiniteModule::regular(a.clone())),
    };
    check_depth(y, space, n_max)?;
    let c = ChainComplex::new(LodayModule::new(a.clone(), m)?, y.clone(), normalized)?;
    let rows = (0..=n_max)
        .map(|n| Ok(HomologyRow { n, dim: c.homology(n)?.dimension(), chain_dim: c.dim(n) }))
        .collect::<Result<_, CliError>>()?;
    Ok(HomologyTable {
        space: space.into(),
        algebra: algebra.into(),
        module: module.unwrap_or(algebra).into(),
        rows,
        chain_dims: c.dims().to_vec(),
        metadata: c.metadata(),
    })
}

fn induced(
    ws: &Workspace,
    measuring: &str,
    t_expr: &str,
    space: &str,
    n_max: usize,
    chain: bool,
    normalized: bool,
) -> Result<InducedMaps, CliError> {
    let from = "induced request";
    let phi = ws.comodule_measuring(measuring, from)?;
    let t = parse_texpr(t_expr, phi.comodule().basis(), ws.field)?;
    let y = ws.simplicial_set(space, from)?;
    check_depth(y, space, n_max)?;
    let la = LodayModule::new(phi.measuring().source().clone(), phi.source().clone())?;
    let lb = LodayModule::new(phi.measuring().target().clone(), phi.target().clone())?;
    let src = Arc::new(ChainComplex::new(la, y.clone(), normalized)?);
    let dst = Arc::new(ChainComplex::new(lb, y.clone(), normalized)?);
    let cm = measuring_chain_map(&phi, &t, src.clone(), dst.clone())?;
    let mut degrees = Vec::new();
    for n in 0..=n_max {
        let (hs, ht) = (src.homology(n)?, dst.homology(n)?);
        let matrix = homology_map_with(&cm, n, &hs, &ht)?;
        degrees.push(InducedDegree {
            n,
            source: HomologyBasis {
                dim: hs.dimension(),
                chain_basis: src.chain_basis_labels(n),
                representatives: hs.representatives().into(),
            },
            target: HomologyBasis {
                dim: ht.dimension(),
                chain_basis: dst.chain_basis_labels(n),
                representatives: ht.representatives().into(),
            },
            matrix: (&matrix).into(),
            chain: chain.then(|| cm.component(n).into()),
        });
    }
    Ok(InducedMaps {
        measuring: measuring.into(),
        t: t_expr.into(),
        t_coordinates: t.iter().map(ToString::to_string).collect(),
        space: space.into(),
        source_metadata: src.metadata(),
        target_metadata: dst.metadata(),
        degrees,
    })
}

fn square(
    ws: &Workspace,
    map: &str,
    measuring: &str,
    t_expr: &str,
    n_max: usize,
    normalized: bool,
    invalid: &[ValidationReport],
) -> Result<Output, CliError> {
    let from = "square request";
    let g = ws.simplicial_map(map, from)?;
    let phi = ws.comodule_measuring(measuring, from)?;
    let t = parse_texpr(t_expr, phi.comodule().basis(), ws.field)?;
    check_depth(g.source(), map, n_max)?;
    let degrees: Vec<usize> = (0..=n_max).collect();
    match verify_theorem_square(g, &phi, &t, &degrees, normalized) {
        Ok(r) => Ok(Output::Square(SquareOutput::new(map, measuring, t_expr, normalized, invalid.to_vec(), &r))),
        // a non-simplicial map has no induced chain map; its validation report is the answer
        Err(_) if !invalid.is_empty() => {
            Ok(Output::Validate(ValidationOutput { passed: false, reports: invalid.to_vec() }))
        }
        Err(e) => Err(e.into()),
    }
}

/// Bundled example with the primitive-element measuring on the dual numbers.
pub const DUAL_NUMBERS: &str = include_str!("../data/dual-numbers.hhx.json");
/// The same example with one comodule measuring coefficient doubled.
pub const CORRUPTED_PHI: &str = include_str!("../data/corrupted-phi.hhx.json");

/// Runs the requests stored in the document.
pub fn run_requests(doc: &WorkspaceDocument, settings: &Settings) -> Result<Outcome, CliError> {
    if doc.requests.is_empty() {
        return Err(CliError::Usage("the document has no requests".into()));
    }
    let commands = doc.requests.iter().map(Command::from_request).collect::<Result<Vec<_>, _>>()?;
    execute(doc, &commands, settings)
}
