//! Resolution of a [`WorkspaceDocument`] into core objects, and the way back.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use hhx_core::simplicial::{builtin, validate_simplicial_map, validate_simplicial_set};
use hhx_core::{
    ComoduleMeasuring, Field, FiniteAlgebra, FiniteCoalgebra, FiniteComodule, FiniteModule, Measuring, MeasuringError,
    PointedSimplicialSet, Scalar, SimplicialMap, ValidationReport,
};

use crate::error::CliError;
use crate::schema::*;

/// Overrides applied while resolving.
#[derive(Clone, Copy, Debug, Default)]
pub struct ResolveOptions {
    /// Replaces the document's field.
    pub field: Option<Field>,
    /// Truncation for built-in simplicial sets, ahead of anything in the document.
    pub truncation: Option<usize>,
    /// Truncation for built-in simplicial sets when neither the flag nor the
    /// document gives one.
    pub default_truncation: usize,
}

type Table<T> = BTreeMap<String, Arc<T>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Workspace {
    pub field: Field,
    pub algebras: Table<FiniteAlgebra>,
    pub modules: Table<FiniteModule>,
    pub coalgebras: Table<FiniteCoalgebra>,
    pub comodules: Table<FiniteComodule>,
    pub measurings: Table<Measuring>,
    pub comodule_measurings: Table<ComoduleMeasuring>,
    pub simplicial_sets: Table<PointedSimplicialSet>,
    pub simplicial_maps: Table<SimplicialMap>,
    pub requests: Vec<Request>,
    /// Objects whose construction already violates a law; they are reported
    /// by [`Workspace::validate_all`] and cannot be used.
    pub rejected: Vec<ValidationReport>,
    /// Coalgebras that some measuring uses, so cocommutativity is required.
    measured: BTreeSet<String>,
}

fn lookup<'a, T>(table: &'a Table<T>, kind: &'static str, name: &str, from: &str) -> Result<&'a Arc<T>, CliError> {
    table.get(name).ok_or_else(|| CliError::UnresolvedReference { kind, name: name.to_string(), from: from.to_string() })
}

fn scalar(field: Field, text: &str, what: &'static str, name: &str) -> Result<Scalar, CliError> {
    field.parse_scalar(text).map_err(|e| CliError::invalid(what, name, e))
}

fn entries(
    field: Field,
    table: &[Entry],
    what: &'static str,
    name: &str,
) -> Result<Vec<(usize, usize, usize, Scalar)>, CliError> {
    table.iter().map(|(i, j, k, c)| Ok((*i, *j, *k, scalar(field, c, what, name)?))).collect()
}

fn vector_entries(field: Field, v: &[VectorEntry], what: &'static str, name: &str) -> Result<Vec<(usize, Scalar)>, CliError> {
    v.iter().map(|(k, c)| Ok((*k, scalar(field, c, what, name)?))).collect()
}

fn required<'a, T>(value: &'a Option<T>, field: &str, what: &'static str, name: &str) -> Result<&'a T, CliError> {
    value.as_ref().ok_or_else(|| CliError::invalid(what, name, format!("missing `{field}`")))
}

fn builtin_size(spec: &str, prefix: &str, what: &'static str, name: &str) -> Result<usize, CliError> {
    spec.strip_prefix(prefix)
        .and_then(|n| n.trim().parse::<usize>().ok())
        .ok_or_else(|| CliError::invalid(what, name, format!("bad built-in `{spec}`")))
}

fn resolve_algebra(field: Field, name: &str, spec: &AlgebraSpec) -> Result<FiniteAlgebra, CliError> {
    let what = "algebra";
    if let Some(b) = &spec.builtin {
        if spec.basis.is_some() || spec.unit.is_some() || spec.mult.is_some() {
            return Err(CliError::invalid(what, name, "`builtin` excludes explicit tables"));
        }
        let positive = |prefix| match builtin_size(b, prefix, what, name)? {
            0 => Err(CliError::invalid(what, name, "dimension must be positive")),
            n => Ok(n),
        };
        return match b.as_str() {
            "ground" => Ok(FiniteAlgebra::ground(field)),
            s if s.starts_with("truncated:") => Ok(FiniteAlgebra::truncated_polynomial(field, positive("truncated:")?)),
            s if s.starts_with("split:") => Ok(FiniteAlgebra::split(field, positive("split:")?)),
            s if s.starts_with("square_zero:") => {
                Ok(FiniteAlgebra::square_zero(field, builtin_size(s, "square_zero:", what, name)?))
            }
            _ => Err(CliError::invalid(what, name, format!("unknown built-in `{b}`"))),
        };
    }
    let basis = required(&spec.basis, "basis", what, name)?.clone();
    let unit = vector_entries(field, required(&spec.unit, "unit", what, name)?, what, name)?;
    let mult = entries(field, required(&spec.mult, "mult", what, name)?, what, name)?;
    FiniteAlgebra::new(field, basis, mult, unit).map_err(|e| CliError::invalid(what, name, e))
}

fn resolve_coalgebra(field: Field, name: &str, spec: &CoalgebraSpec) -> Result<FiniteCoalgebra, CliError> {
    let what = "coalgebra";
    if let Some(b) = &spec.builtin {
        if spec.basis.is_some() || spec.coproduct.is_some() || spec.counit.is_some() {
            return Err(CliError::invalid(what, name, "`builtin` excludes explicit tables"));
        }
        if let Some(names) = b.strip_prefix("set_like:") {
            let names: Vec<&str> = names.split(',').map(str::trim).collect();
            if names.iter().any(|n| n.is_empty()) {
                return Err(CliError::invalid(what, name, "empty basis name"));
            }
            let distinct: BTreeSet<&&str> = names.iter().collect();
            if distinct.len() != names.len() {
                return Err(CliError::invalid(what, name, "duplicate basis name"));
            }
            return Ok(FiniteCoalgebra::set_like(field, &names));
        }
        return Ok(FiniteCoalgebra::divided_powers(field, builtin_size(b, "divided_powers:", what, name)?));
    }
    let basis = required(&spec.basis, "basis", what, name)?.clone();
    let coproduct = entries(field, required(&spec.coproduct, "coproduct", what, name)?, what, name)?;
    let counit = vector_entries(field, required(&spec.counit, "counit", what, name)?, what, name)?;
    FiniteCoalgebra::new(field, basis, coproduct, counit).map_err(|e| CliError::invalid(what, name, e))
}

fn resolve_simplicial_set(
    name: &str,
    spec: &SimplicialSetSpec,
    doc_truncation: Option<usize>,
    opts: &ResolveOptions,
) -> Result<PointedSimplicialSet, CliError> {
    let what = "simplicial set";
    let y = if let Some(b) = &spec.builtin {
        if spec.sizes.is_some() || spec.faces.is_some() || spec.degeneracies.is_some() {
            return Err(CliError::invalid(what, name, "`builtin` excludes explicit tables"));
        }
        let n = opts.truncation.or(spec.truncation).or(doc_truncation).unwrap_or(opts.default_truncation);
        builtin(b, n).map_err(|e| CliError::invalid(what, name, e))?
    } else {
        let sizes = required(&spec.sizes, "sizes", what, name)?.clone();
        let faces = required(&spec.faces, "faces", what, name)?.clone();
        let degeneracies = required(&spec.degeneracies, "degeneracies", what, name)?.clone();
        let y = PointedSimplicialSet::new(name, sizes, faces, degeneracies).map_err(|e| CliError::invalid(what, name, e))?;
        if let Some(n) = spec.truncation.filter(|&n| n != y.truncation()) {
            return Err(CliError::invalid(what, name, format!("`truncation` {n} disagrees with the tables")));
        }
        y
    };
    let display = spec.name.clone().unwrap_or_else(|| y.name().to_string());
    let model = spec.model.clone().unwrap_or_else(|| y.model().to_string());
    Ok(y.renamed(display).with_model(model))
}

impl Workspace {
    pub fn resolve(doc: &WorkspaceDocument, opts: &ResolveOptions) -> Result<Self, CliError> {
        let field = match opts.field {
            Some(f) => f,
            None => doc.field.parse().map_err(|e| CliError::invalid("field", &doc.field, e))?,
        };
        let mut ws = Workspace {
            field,
            algebras: BTreeMap::new(),
            modules: BTreeMap::new(),
            coalgebras: BTreeMap::new(),
            comodules: BTreeMap::new(),
            measurings: BTreeMap::new(),
            comodule_measurings: BTreeMap::new(),
            simplicial_sets: BTreeMap::new(),
            simplicial_maps: BTreeMap::new(),
            requests: doc.requests.clone(),
            rejected: Vec::new(),
            measured: BTreeSet::new(),
        };

        for (name, spec) in &doc.algebras {
            ws.algebras.insert(name.clone(), Arc::new(resolve_algebra(field, name, spec)?));
        }
        for (name, spec) in &doc.modules {
            let from = format!("module `{name}`");
            let a = lookup(&ws.algebras, "algebra", &spec.algebra, &from)?.clone();
            let m = if spec.regular {
                if spec.basis.is_some() || spec.action.is_some() {
                    return Err(CliError::invalid("module", name, "`regular` excludes explicit tables"));
                }
                FiniteModule::regular(a)
            } else {
                let basis = required(&spec.basis, "basis", "module", name)?.clone();
                let action = entries(field, required(&spec.action, "action", "module", name)?, "module", name)?;
                FiniteModule::new(a, basis, action).map_err(|e| CliError::invalid("module", name, e))?
            };
            ws.modules.insert(name.clone(), Arc::new(m));
        }
        for (name, spec) in &doc.coalgebras {
            ws.coalgebras.insert(name.clone(), Arc::new(resolve_coalgebra(field, name, spec)?));
        }
        for (name, spec) in &doc.comodules {
            let from = format!("comodule `{name}`");
            let c = lookup(&ws.coalgebras, "coalgebra", &spec.coalgebra, &from)?.clone();
            let d = if spec.regular {
                if spec.basis.is_some() || spec.coaction.is_some() {
                    return Err(CliError::invalid("comodule", name, "`regular` excludes explicit tables"));
                }
                FiniteComodule::regular(c)
            } else {
                let basis = required(&spec.basis, "basis", "comodule", name)?.clone();
                let coaction = entries(field, required(&spec.coaction, "coaction", "comodule", name)?, "comodule", name)?;
                FiniteComodule::new(c, basis, coaction).map_err(|e| CliError::invalid("comodule", name, e))?
            };
            ws.comodules.insert(name.clone(), Arc::new(d));
        }

        let mut rejected_measurings = BTreeSet::new();
        for (name, spec) in &doc.measurings {
            let from = format!("measuring `{name}`");
            let c = lookup(&ws.coalgebras, "coalgebra", &spec.coalgebra, &from)?.clone();
            let a = lookup(&ws.algebras, "algebra", &spec.source, &from)?.clone();
            let b = lookup(&ws.algebras, "algebra", &spec.target, &from)?.clone();
            ws.measured.insert(spec.coalgebra.clone());
            let table = entries(field, &spec.table, "measuring", name)?;
            match Measuring::new(c, a, b, table) {
                Ok(m) => {
                    ws.measurings.insert(name.clone(), Arc::new(m));
                }
                Err(MeasuringError::NotCocommutative(s, i, j)) => {
                    let mut r = ValidationReport::new(format!("measuring {name}"));
                    r.fail(
                        "coalgebra is cocommutative",
                        vec![s, i, j],
                        format!("coalgebra `{}` is not cocommutative", spec.coalgebra),
                    );
                    ws.rejected.push(r);
                    rejected_measurings.insert(name.clone());
                }
                Err(e) => return Err(CliError::invalid("measuring", name, e)),
            }
        }
        for (name, spec) in &doc.comodule_measurings {
            let what = "comodule measuring";
            if rejected_measurings.contains(&spec.measuring) {
                let mut r = ValidationReport::new(format!("comodule measuring {name}"));
                r.fail("underlying measuring", vec![], format!("measuring `{}` was rejected", spec.measuring));
                ws.rejected.push(r);
                continue;
            }
            let from = format!("comodule measuring `{name}`");
            let psi = lookup(&ws.measurings, "measuring", &spec.measuring, &from)?.clone();
            let phi = if spec.regular {
                if spec.comodule.is_some() || spec.source.is_some() || spec.target.is_some() || spec.table.is_some() {
                    return Err(CliError::invalid(what, name, "`regular` excludes explicit tables"));
                }
                ComoduleMeasuring::regular(psi)
            } else {
                let d = lookup(&ws.comodules, "comodule", required(&spec.comodule, "comodule", what, name)?, &from)?;
                let m = lookup(&ws.modules, "module", required(&spec.source, "source", what, name)?, &from)?;
                let n = lookup(&ws.modules, "module", required(&spec.target, "target", what, name)?, &from)?;
                let table = entries(field, required(&spec.table, "table", what, name)?, what, name)?;
                ComoduleMeasuring::new(psi, d.clone(), m.clone(), n.clone(), table)
                    .map_err(|e| CliError::invalid(what, name, e))?
            };
            ws.comodule_measurings.insert(name.clone(), Arc::new(phi));
        }

        for (name, spec) in &doc.simplicial_sets {
            let y = resolve_simplicial_set(name, spec, doc.truncation, opts)?;
            ws.simplicial_sets.insert(name.clone(), Arc::new(y));
        }
        for (name, spec) in &doc.simplicial_maps {
            let what = "simplicial map";
            let from = format!("simplicial map `{name}`");
            let set = |field: &Option<String>, key: &str| -> Result<Arc<PointedSimplicialSet>, CliError> {
                Ok(lookup(&ws.simplicial_sets, "simplicial set", required(field, key, what, name)?, &from)?.clone())
            };
            let g = match spec.kind.as_str() {
                "identity" => SimplicialMap::identity(set(&spec.source, "source")?),
                "collapse" => SimplicialMap::collapse(set(&spec.source, "source")?),
                "project1" | "project2" => {
                    let factor = usize::from(spec.kind == "project2");
                    SimplicialMap::projection(set(&spec.left, "left")?, set(&spec.right, "right")?, factor)
                        .map_err(|e| CliError::invalid(what, name, e))?
                }
                "explicit" => {
                    let components = required(&spec.components, "components", what, name)?.clone();
                    SimplicialMap::new(set(&spec.source, "source")?, set(&spec.target, "target")?, components)
                        .map_err(|e| CliError::invalid(what, name, e))?
                }
                other => return Err(CliError::invalid(what, name, format!("unknown kind `{other}`"))),
            };
            ws.simplicial_maps.insert(name.clone(), Arc::new(g));
        }
        Ok(ws)
    }

    /// Runs every validator, table by table in name order, followed by the
    /// objects rejected during resolution.
    pub fn validate_all(&self) -> Vec<ValidationReport> {
        let mut out = Vec::new();
        for (name, a) in &self.algebras {
            out.push(a.validate().with_subject(format!("algebra {name}")));
        }
        for (name, m) in &self.modules {
            out.push(m.validate().with_subject(format!("module {name}")));
        }
        for (name, c) in &self.coalgebras {
            out.push(c.validate(self.measured.contains(name)).with_subject(format!("coalgebra {name}")));
        }
        for (name, d) in &self.comodules {
            out.push(d.validate().with_subject(format!("comodule {name}")));
        }
        for (name, m) in &self.measurings {
            out.push(m.validate().with_subject(format!("measuring {name}")));
        }
        for (name, m) in &self.comodule_measurings {
            out.push(m.validate().with_subject(format!("comodule measuring {name}")));
        }
        for (name, y) in &self.simplicial_sets {
            out.push(validate_simplicial_set(y).with_subject(format!("simplicial set {name}")));
        }
        for (name, g) in &self.simplicial_maps {
            out.push(validate_simplicial_map(g).with_subject(format!("simplicial map {name}")));
        }
        out.extend(self.rejected.iter().cloned());
        out
    }

    pub fn algebra(&self, name: &str, from: &str) -> Result<&Arc<FiniteAlgebra>, CliError> {
        lookup(&self.algebras, "algebra", name, from)
    }

    pub fn module(&self, name: &str, from: &str) -> Result<&Arc<FiniteModule>, CliError> {
        lookup(&self.modules, "module", name, from)
    }

    pub fn simplicial_set(&self, name: &str, from: &str) -> Result<&Arc<PointedSimplicialSet>, CliError> {
        lookup(&self.simplicial_sets, "simplicial set", name, from)
    }

    pub fn simplicial_map(&self, name: &str, from: &str) -> Result<&Arc<SimplicialMap>, CliError> {
        lookup(&self.simplicial_maps, "simplicial map", name, from)
    }

    /// A comodule measuring by name; a plain measuring acts through its
    /// regular comodule measuring.
    pub fn comodule_measuring(&self, name: &str, from: &str) -> Result<Arc<ComoduleMeasuring>, CliError> {
        if let Some(phi) = self.comodule_measurings.get(name) {
            return Ok(phi.clone());
        }
        let psi = lookup(&self.measurings, "measuring", name, from)?;
        Ok(Arc::new(ComoduleMeasuring::regular(psi.clone())))
    }

    /// Explicit tables for every object. Objects referenced but not named in
    /// the workspace (the point under a collapse map, a regular comodule) are
    /// added under `<owner>.<role>` keys.
    pub fn to_document(&self) -> WorkspaceDocument {
        let mut reg = self.clone();
        for (name, phi) in &self.comodule_measurings {
            ensure(&mut reg.measurings, phi.measuring(), name, "measuring");
            ensure(&mut reg.comodules, phi.comodule(), name, "comodule");
            ensure(&mut reg.modules, phi.source(), name, "source");
            ensure(&mut reg.modules, phi.target(), name, "target");
        }
        for (name, psi) in reg.measurings.clone() {
            ensure(&mut reg.coalgebras, psi.coalgebra(), &name, "coalgebra");
            ensure(&mut reg.algebras, psi.source(), &name, "source");
            ensure(&mut reg.algebras, psi.target(), &name, "target");
        }
        for (name, m) in reg.modules.clone() {
            ensure(&mut reg.algebras, m.algebra(), &name, "algebra");
        }
        for (name, d) in reg.comodules.clone() {
            ensure(&mut reg.coalgebras, d.coalgebra(), &name, "coalgebra");
        }
        for (name, g) in &self.simplicial_maps {
            ensure(&mut reg.simplicial_sets, g.source(), name, "source");
            ensure(&mut reg.simplicial_sets, g.target(), name, "target");
        }

        let strs = |v: &[(usize, usize, usize, Scalar)]| -> Vec<Entry> {
            v.iter().map(|(i, j, k, c)| (*i, *j, *k, c.to_string())).collect()
        };
        let vec_entries = |v: &[(usize, Scalar)]| -> Vec<VectorEntry> { v.iter().map(|(k, c)| (*k, c.to_string())).collect() };

        let mut doc = WorkspaceDocument { field: self.field.to_string(), requests: self.requests.clone(), ..Default::default() };
        for (name, a) in &reg.algebras {
            doc.algebras.insert(
                name.clone(),
                AlgebraSpec {
                    builtin: None,
                    basis: Some(a.basis().to_vec()),
                    unit: Some(vec_entries(a.unit())),
                    mult: Some(strs(&a.structure_constants())),
                },
            );
        }
        for (name, m) in &reg.modules {
            doc.modules.insert(
                name.clone(),
                ModuleSpec {
                    algebra: name_of(&reg.algebras, m.algebra()),
                    regular: false,
                    basis: Some(m.basis().to_vec()),
                    action: Some(strs(&m.structure_constants())),
                },
            );
        }
        for (name, c) in &reg.coalgebras {
            doc.coalgebras.insert(
                name.clone(),
                CoalgebraSpec {
                    builtin: None,
                    basis: Some(c.basis().to_vec()),
                    coproduct: Some(strs(&c.structure_constants())),
                    counit: Some(vec_entries(c.counit())),
                },
            );
        }
        for (name, d) in &reg.comodules {
            doc.comodules.insert(
                name.clone(),
                ComoduleSpec {
                    coalgebra: name_of(&reg.coalgebras, d.coalgebra()),
                    regular: false,
                    basis: Some(d.basis().to_vec()),
                    coaction: Some(strs(&d.structure_constants())),
                },
            );
        }
        for (name, psi) in &reg.measurings {
            doc.measurings.insert(
                name.clone(),
                MeasuringSpec {
                    coalgebra: name_of(&reg.coalgebras, psi.coalgebra()),
                    source: name_of(&reg.algebras, psi.source()),
                    target: name_of(&reg.algebras, psi.target()),
                    table: strs(&psi.table()),
                },
            );
        }
        for (name, phi) in &reg.comodule_measurings {
            doc.comodule_measurings.insert(
                name.clone(),
                ComoduleMeasuringSpec {
                    measuring: name_of(&reg.measurings, phi.measuring()),
                    regular: false,
                    comodule: Some(name_of(&reg.comodules, phi.comodule())),
                    source: Some(name_of(&reg.modules, phi.source())),
                    target: Some(name_of(&reg.modules, phi.target())),
                    table: Some(strs(&phi.table())),
                },
            );
        }
        for (name, y) in &reg.simplicial_sets {
            let n = y.truncation();
            doc.simplicial_sets.insert(
                name.clone(),
                SimplicialSetSpec {
                    name: Some(y.name().to_string()),
                    model: Some(y.model().to_string()),
                    sizes: Some(y.sizes().to_vec()),
                    faces: Some(
                        (0..=n)
                            .map(|k| if k == 0 { vec![] } else { (0..=k).map(|i| y.face_table(k, i).to_vec()).collect() })
                            .collect(),
                    ),
                    degeneracies: Some(
                        (0..n).map(|k| (0..=k).map(|j| y.degeneracy_table(k, j).to_vec()).collect()).collect(),
                    ),
                    ..Default::default()
                },
            );
        }
        for (name, g) in &reg.simplicial_maps {
            doc.simplicial_maps.insert(
                name.clone(),
                SimplicialMapSpec {
                    kind: "explicit".into(),
                    source: Some(name_of(&reg.simplicial_sets, g.source())),
                    target: Some(name_of(&reg.simplicial_sets, g.target())),
                    components: Some((0..g.source().sizes().len()).map(|k| g.component_table(k).to_vec()).collect()),
                    ..Default::default()
                },
            );
        }
        doc
    }
}

fn find<T: PartialEq>(table: &Table<T>, x: &Arc<T>) -> Option<String> {
    table
        .iter()
        .find(|(_, v)| Arc::ptr_eq(v, x))
        .or_else(|| table.iter().find(|(_, v)| v.as_ref() == x.as_ref()))
        .map(|(k, _)| k.clone())
}

fn ensure<T: PartialEq>(table: &mut Table<T>, x: &Arc<T>, owner: &str, role: &str) {
    if find(table, x).is_none() {
        table.insert(format!("{owner}.{role}"), x.clone());
    }
}

fn name_of<T: PartialEq>(table: &Table<T>, x: &Arc<T>) -> String {
    find(table, x).expect("registered by to_document")
}
