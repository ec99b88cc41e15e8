use std::fmt;
use std::sync::Arc;

use crate::exactlin::{LinAlgError, Scalar, SparseMatrix};
use crate::measuring::ComoduleMeasuring;
use crate::simplicial::SimplicialMap;

use super::chainmap::{homology_map_with, measuring_chain_map_unchecked, simplicial_chain_map, ChainMap};
use super::complex::ChainComplex;
use super::loday::{loday_map, LodayModule};
use super::HochschildError;

/// Outcome of comparing the two composites on `H_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareVerdict {
    Equal,
    Unequal,
    /// One of the maps does not send cycles to cycles in this degree.
    Undefined(String),
}

#[derive(Clone, Debug)]
pub struct HomologySquare {
    pub degree: usize,
    pub verdict: SquareVerdict,
    /// `HH^g(B, N) ∘ φ^Y(t)`.
    pub lhs: Option<SparseMatrix>,
    /// `φ^Z(t) ∘ HH^g(A, M)`.
    pub rhs: Option<SparseMatrix>,
}

/// First differing entry `(row, col, lhs, rhs)` of a chain-level comparison.
pub type Difference = (usize, usize, Scalar, Scalar);

#[derive(Clone, Debug)]
pub struct ChainSquare {
    pub degree: usize,
    pub differences: usize,
    pub first_difference: Option<Difference>,
}

impl ChainSquare {
    pub fn equal(&self) -> bool {
        self.differences == 0
    }
}

/// Both levels of the naturality square for `g: Y → Z` and `L^φ(t)`.
#[derive(Clone, Debug)]
pub struct SquareReport {
    pub source: String,
    pub target: String,
    pub homology: Vec<HomologySquare>,
    /// Unnormalized spaces, every degree of the truncation.
    pub chain: Vec<ChainSquare>,
}

impl SquareReport {
    pub fn homology_equal(&self) -> bool {
        self.homology.iter().all(|h| h.verdict == SquareVerdict::Equal)
    }

    pub fn chain_equal(&self) -> bool {
        self.chain.iter().all(ChainSquare::equal)
    }

    pub fn passed(&self) -> bool {
        self.homology_equal() && self.chain_equal()
    }
}

impl fmt::Display for SquareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "square for {} → {}", self.source, self.target)?;
        for h in &self.homology {
            match &h.verdict {
                SquareVerdict::Equal => writeln!(f, "  HH_{}: equal", h.degree)?,
                SquareVerdict::Unequal => writeln!(f, "  HH_{}: UNEQUAL", h.degree)?,
                SquareVerdict::Undefined(why) => writeln!(f, "  HH_{}: undefined ({why})", h.degree)?,
            }
        }
        for c in &self.chain {
            match &c.first_difference {
                None => writeln!(f, "  chain degree {}: equal", c.degree)?,
                Some((r, col, l, rhs)) => writeln!(
                    f,
                    "  chain degree {}: {} entries differ, first at ({r}, {col}): {l} vs {rhs}",
                    c.degree, c.differences
                )?,
            }
        }
        write!(f, "verdict: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

fn homology_composite(
    first: &ChainMap,
    second: &ChainMap,
    n: usize,
) -> Result<Result<SparseMatrix, String>, HochschildError> {
    let h0 = first.source().homology(n)?;
    let h1 = first.target().homology(n)?;
    let h2 = second.target().homology(n)?;
    let lift = |r: Result<SparseMatrix, HochschildError>| match r {
        Ok(m) => Ok(Ok(m)),
        Err(HochschildError::LinAlg(LinAlgError::NotAChainMapAtThisDegree)) => Ok(Err(format!("a map in the square sends a degree-{n} cycle off the cycles"))),
        Err(e) => Err(e),
    };
    let a = match lift(homology_map_with(first, n, &h0, &h1))? {
        Ok(m) => m,
        Err(why) => return Ok(Err(why)),
    };
    let b = match lift(homology_map_with(second, n, &h1, &h2))? {
        Ok(m) => m,
        Err(why) => return Ok(Err(why)),
    };
    Ok(Ok(&b * &a))
}

fn compare(degree: usize, lhs: &SparseMatrix, rhs: &SparseMatrix) -> ChainSquare {
    let diff = lhs.sub(rhs).expect("composites share a shape");
    let first_difference = diff.entries().first().map(|(r, c, _)| (*r, *c, lhs.get(*r, *c), rhs.get(*r, *c)));
    ChainSquare { degree, differences: diff.nnz(), first_difference }
}

/// Checks `HH^g(B, N) ∘ φ^Y(t) = φ^Z(t) ∘ HH^g(A, M)` on each requested
/// degree, and `L(g) ∘ L^φ(t) = L^φ(t) ∘ L(g)` on unnormalized chains in every
/// degree of the truncation.
///
/// `φ` is not required to pass validation; its chain maps are built without
/// checks so that broken data produces a failing report rather than an error.
pub fn verify_theorem_square(
    g: &SimplicialMap,
    phi: &ComoduleMeasuring,
    t: &[Scalar],
    degrees: &[usize],
    normalized: bool,
) -> Result<SquareReport, HochschildError> {
    let la = LodayModule::new(phi.measuring().source().clone(), phi.source().clone())?;
    let lb = LodayModule::new(phi.measuring().target().clone(), phi.target().clone())?;
    let (y, z) = (g.source().clone(), g.target().clone());
    for &n in degrees {
        if n + 1 > y.truncation() {
            return Err(HochschildError::TruncationTooShallow { requested: n, truncation: y.truncation() });
        }
    }

    let build = |l: &LodayModule, s: &Arc<_>| ChainComplex::new(l.clone(), Arc::clone(s), normalized).map(Arc::new);
    let (ya, yb, za, zb) = (build(&la, &y)?, build(&lb, &y)?, build(&la, &z)?, build(&lb, &z)?);
    let phi_y = measuring_chain_map_unchecked(phi, t, ya.clone(), yb.clone())?;
    let phi_z = measuring_chain_map_unchecked(phi, t, za.clone(), zb.clone())?;
    let g_a = simplicial_chain_map(g, ya, za)?;
    let g_b = simplicial_chain_map(g, yb, zb)?;

    let mut homology = Vec::new();
    for &n in degrees {
        let lhs = homology_composite(&phi_y, &g_b, n)?;
        let rhs = homology_composite(&g_a, &phi_z, n)?;
        let (verdict, lhs, rhs) = match (lhs, rhs) {
            (Ok(l), Ok(r)) => (if l == r { SquareVerdict::Equal } else { SquareVerdict::Unequal }, Some(l), Some(r)),
            (l, r) => {
                let why = l.as_ref().err().or(r.as_ref().err()).cloned().unwrap_or_default();
                (SquareVerdict::Undefined(why), l.ok(), r.ok())
            }
        };
        homology.push(HomologySquare { degree: n, verdict, lhs, rhs });
    }

    let chain = (0..=y.truncation())
        .map(|k| -> Result<ChainSquare, HochschildError> {
            let gk = g.component(k);
            let (ly, lz) = (y.level(k).rank(), z.level(k).rank());
            let lhs = &loday_map(&lb, &gk) * &phi.multilinear_operator(t, ly)?;
            let rhs = &phi.multilinear_operator(t, lz)? * &loday_map(&la, &gk);
            Ok(compare(k, &lhs, &rhs))
        })
        .collect::<Result<_, _>>()?;

    Ok(SquareReport { source: y.name().to_string(), target: z.name().to_string(), homology, chain })
}
