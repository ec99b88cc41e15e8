//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. All algebraic comparisons are exact; the
//! only tolerances are the runtime limits pinned below.

#[path = "acceptance/generator.rs"]
mod generator;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use hhx_cli::commands::{CORRUPTED_PHI, DUAL_NUMBERS};
use hhx_cli::report::Output;
use hhx_cli::{execute, parse_document, Command, ResolveOptions, Settings, Workspace};
use hhx_core::algstruct::{FiniteAlgebra, FiniteModule};
use hhx_core::exactlin::rank;
use hhx_core::hochschild::{homology_map, loday_map, measuring_chain_map, verify_theorem_square, ChainComplex, LodayModule};
use hhx_core::simplicial::{builtin, circle, point, relabel};
use hhx_core::{ComoduleMeasuring, Field, Measuring, PointedMap, PointedSet, SimplicialMap, SparseMatrix};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Criterion 1: circle homology of the dual numbers at truncation 4.
const CIRCLE_RUNTIME_LIMIT: Duration = Duration::from_secs(10);
/// Criterion 3: circle homology of ℚ × ℚ at truncation 5.
const SEPARABLE_RUNTIME_LIMIT: Duration = Duration::from_secs(30);
/// Criterion 5.
const RANDOM_MEASURINGS: usize = 100;
const SEED: u64 = 0x5e_ed0f_4cce;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn q() -> Field {
    Field::rational()
}

fn dual() -> Arc<FiniteAlgebra> {
    Arc::new(FiniteAlgebra::truncated_polynomial(q(), 2))
}

fn dims(c: &ChainComplex, n_max: usize) -> Vec<usize> {
    (0..=n_max).map(|n| c.homology(n).unwrap().dimension()).collect()
}

fn complex(l: &LodayModule, spec: &str, n: usize, normalized: bool) -> ChainComplex {
    ChainComplex::new(l.clone(), Arc::new(builtin(spec, n).unwrap()), normalized).unwrap()
}

fn ensure(ok: bool, detail: String) -> Verdict {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Classical Hochschild homology `HH_n(A, A)` from the cyclic bar complex
/// `A^{⊗(n+1)}`, with dense `BigRational` elimination.
mod bar_oracle {
    use super::*;

    type Q = BigRational;

    pub fn dims(algebra: &FiniteAlgebra, top: usize) -> Vec<usize> {
        let d = algebra.dim();
        let mut mult = vec![vec![vec![Q::zero(); d]; d]; d];
        for (i, j, k, c) in algebra.structure_constants() {
            mult[i][j][k] = c.as_rational().unwrap().clone();
        }
        let ranks: Vec<usize> = (0..=top + 1).map(|n| if n == 0 { 0 } else { dense_rank(differential(&mult, d, n)) }).collect();
        (0..=top).map(|n| d.pow(n as u32 + 1) - ranks[n] - ranks[n + 1]).collect()
    }

    fn digits(mut x: usize, d: usize, len: usize) -> Vec<usize> {
        let mut out = vec![0; len];
        for slot in (0..len).rev() {
            out[slot] = x % d;
            x /= d;
        }
        out
    }

    fn number(t: &[usize], d: usize) -> usize {
        t.iter().fold(0, |acc, &x| acc * d + x)
    }

    /// `b(a_0 ⊗ … ⊗ a_n) = Σ_{i<n} (−1)^i … a_i a_{i+1} … + (−1)^n a_n a_0 ⊗ a_1 ⊗ … ⊗ a_{n−1}`.
    fn differential(mult: &[Vec<Vec<Q>>], d: usize, n: usize) -> Vec<Vec<Q>> {
        let (rows, cols) = (d.pow(n as u32), d.pow(n as u32 + 1));
        let mut m = vec![vec![Q::zero(); cols]; rows];
        for col in 0..cols {
            let t = digits(col, d, n + 1);
            for i in 0..=n {
                let sign = if i % 2 == 0 { Q::one() } else { -Q::one() };
                let (x, y) = if i < n { (t[i], t[i + 1]) } else { (t[n], t[0]) };
                for (k, c) in mult[x][y].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let out: Vec<usize> = if i < n {
                        t[..i].iter().copied().chain([k]).chain(t[i + 2..].iter().copied()).collect()
                    } else {
                        [k].into_iter().chain(t[1..n].iter().copied()).collect()
                    };
                    m[number(&out, d)][col] += &sign * c;
                }
            }
        }
        m
    }

    fn dense_rank(mut m: Vec<Vec<Q>>) -> usize {
        let cols = m.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, p);
            for i in r + 1..m.len() {
                if !m[i][c].is_zero() {
                    let f = &m[i][c] / &m[r][c];
                    let pivot = m[r].clone();
                    for (x, y) in m[i].iter_mut().zip(&pivot) {
                        *x -= &f * y;
                    }
                }
            }
            r += 1;
        }
        r
    }
}

fn circle_recovery() -> Verdict {
    let oracle = bar_oracle::dims(&dual(), 2);
    let start = Instant::now();
    let l = LodayModule::regular(dual()).unwrap();
    let norm = dims(&complex(&l, "circle", 4, true), 2);
    let unnorm = dims(&complex(&l, "circle", 4, false), 2);
    let elapsed = start.elapsed();
    ensure(
        oracle == vec![2, 1, 1] && norm == oracle && unnorm == oracle && elapsed < CIRCLE_RUNTIME_LIMIT,
        format!("oracle {oracle:?}, normalized {norm:?}, unnormalized {unnorm:?}, {elapsed:.2?} (limit {CIRCLE_RUNTIME_LIMIT:?})"),
    )
}

fn point_collapse() -> Verdict {
    let f = q();
    let trunc3 = Arc::new(FiniteAlgebra::truncated_polynomial(f, 3));
    let split = Arc::new(FiniteAlgebra::split(f, 2));
    let augmentation = Arc::new(FiniteModule::new(trunc3.clone(), vec!["k".into()], vec![(0, 0, 0, f.one())]).unwrap());
    let pairs = [
        ("ℚ[x]/(x²)", LodayModule::regular(dual()).unwrap()),
        ("ℚ×ℚ", LodayModule::regular(split).unwrap()),
        ("ℚ[x]/(x³) on k", LodayModule::new(trunc3, augmentation).unwrap()),
    ];
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, l) in pairs {
        let m = l.module().dim();
        for normalized in [true, false] {
            let got = dims(&ChainComplex::new(l.clone(), Arc::new(point(4)), normalized).unwrap(), 3);
            ok &= got == vec![m, 0, 0, 0];
            if normalized {
                lines.push(format!("{name}: {got:?}"));
            }
        }
    }
    ensure(ok, lines.join("; "))
}

fn separable_vanishing() -> Verdict {
    let split = FiniteAlgebra::split(q(), 2);
    let oracle = bar_oracle::dims(&split, 3);
    let start = Instant::now();
    let l = LodayModule::regular(Arc::new(split)).unwrap();
    let got = dims(&complex(&l, "circle", 5, true), 3);
    let elapsed = start.elapsed();
    ensure(
        got[1..] == [0, 0, 0] && got == oracle && elapsed < SEPARABLE_RUNTIME_LIMIT,
        format!("HH_0..3 = {got:?}, oracle {oracle:?}, {elapsed:.2?} (limit {SEPARABLE_RUNTIME_LIMIT:?})"),
    )
}

fn square_zero_differentials() -> Verdict {
    let f = q();
    let trunc2 = dual();
    let augmentation = Arc::new(FiniteModule::new(trunc2.clone(), vec!["k".into()], vec![(0, 0, 0, f.one())]).unwrap());
    let modules = [
        LodayModule::regular(Arc::new(FiniteAlgebra::ground(f))).unwrap(),
        LodayModule::regular(trunc2.clone()).unwrap(),
        LodayModule::regular(Arc::new(FiniteAlgebra::split(f, 2))).unwrap(),
        LodayModule::new(trunc2, augmentation).unwrap(),
    ];
    let spaces = [
        ("point", 4),
        ("circle", 4),
        ("sphere:2", 4),
        ("wedge(circle,circle)", 4),
        ("product(circle,circle)", 3),
    ];
    let mut checked = 0;
    for (spec, n) in spaces {
        for l in &modules {
            for normalized in [true, false] {
                let c = complex(l, spec, n, normalized);
                for k in 2..=n {
                    if !(c.differential(k - 1) * c.differential(k)).is_zero() {
                        return Err(format!("∂∘∂ ≠ 0 on {spec} at degree {k}, normalized = {normalized}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} compositions vanish over 5 spaces, 4 coefficient pairs, both complexes"))
}

fn pointed_maps(k: usize, l: usize) -> Vec<PointedMap> {
    (0..(l + 1).pow(k as u32))
        .map(|mut code| {
            let mut values = vec![0];
            for _ in 0..k {
                values.push(code % (l + 1));
                code /= l + 1;
            }
            PointedMap::new(PointedSet::standard(l), values).unwrap()
        })
        .collect()
}

fn random_measurings_natural() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let maps: Vec<(usize, usize, PointedMap)> = (0..=3)
        .flat_map(|k| (0..=3).flat_map(move |l| pointed_maps(k, l).into_iter().map(move |f| (k, l, f))))
        .collect();
    let mut squares = 0;
    for trial in 0..RANDOM_MEASURINGS {
        let phi = generator::random_comodule_measuring(&mut rng, q());
        if !(phi.measuring().validate().passed() && phi.validate().passed()) {
            return Err(format!("generated measuring {trial} fails validation"));
        }
        let la = LodayModule::new(phi.measuring().source().clone(), phi.source().clone()).unwrap();
        let lb = LodayModule::new(phi.measuring().target().clone(), phi.target().clone()).unwrap();
        let t = generator::random_element(&mut rng, q(), phi.comodule().dim());
        let ops: Vec<SparseMatrix> = (0..=3).map(|k| phi.multilinear_operator(&t, k).unwrap()).collect();
        for (k, l, f) in &maps {
            if &loday_map(&lb, f) * &ops[*k] != &ops[*l] * &loday_map(&la, f) {
                return Err(format!("measuring {trial}: square for {:?} does not commute", f.values()));
            }
            squares += 1;
        }
        for normalized in [true, false] {
            let y = Arc::new(circle(3));
            let src = Arc::new(ChainComplex::new(la.clone(), y.clone(), normalized).unwrap());
            let dst = Arc::new(ChainComplex::new(lb.clone(), y, normalized).unwrap());
            if let Err(e) = measuring_chain_map(&phi, &t, src, dst) {
                return Err(format!("measuring {trial}: {e}"));
            }
        }
    }
    Ok(format!("{RANDOM_MEASURINGS} measurings, {squares} Γ-squares commute, chain maps on circle(3) in both complexes"))
}

fn run_square(doc: &str, t: &str) -> hhx_cli::report::SquareOutput {
    let cmd = Command::Square { map: "collapse".into(), measuring: "phi".into(), t: t.into(), n_max: 1, normalized: None };
    let out = execute(&parse_document(doc).unwrap(), &[cmd], &Settings::default()).unwrap();
    match out.report.outputs.into_iter().next() {
        Some(Output::Square(s)) => s,
        other => panic!("expected a square, got {other:?}"),
    }
}

fn theorem_square() -> Verdict {
    let mut lines = Vec::new();
    for t in ["d", "g", "2*g - d"] {
        let s = run_square(DUAL_NUMBERS, t);
        let verdicts: Vec<&str> = s.homology.iter().map(|h| h.verdict.as_str()).collect();
        if !s.passed || verdicts != ["equal", "equal"] {
            return Err(format!("t = {t}: HH_0, HH_1 {verdicts:?}"));
        }
        lines.push(format!("t = {t}: equal on HH_0, HH_1"));
    }
    let bad = run_square(CORRUPTED_PHI, "d");
    let differing: usize = bad.chain.iter().map(|c| c.differing_entries).sum();
    let verdicts: Vec<&str> = bad.homology.iter().map(|h| h.verdict.as_str()).collect();
    lines.push(format!("corrupted φ: HH {verdicts:?}, {differing} differing chain entries"));
    ensure(!bad.passed && differing > 0, lines.join("; "))
}

fn dold_kan() -> Verdict {
    let l = LodayModule::regular(dual()).unwrap();
    let mut lines = Vec::new();
    for spec in ["circle", "sphere:2"] {
        let n = dims(&complex(&l, spec, 3, true), 2);
        let u = dims(&complex(&l, spec, 3, false), 2);
        if n != u {
            return Err(format!("{spec}: normalized {n:?} vs unnormalized {u:?}"));
        }
        lines.push(format!("{spec}: {n:?}"));
    }
    Ok(lines.join("; "))
}

fn group_like_functoriality() -> Verdict {
    let f = q();
    let trunc3 = Arc::new(FiniteAlgebra::truncated_polynomial(f, 3));
    // x ↦ 2x on ℚ[x]/(x²); x ↦ 2x + x² on ℚ[x]/(x³)
    let autos = [
        (dual(), SparseMatrix::from_i64_rows(f, &[&[1, 0], &[0, 2]])),
        (trunc3.clone(), SparseMatrix::from_i64_rows(f, &[&[1, 0, 0], &[0, 2, 0], &[0, 1, 4]])),
    ];
    let induced = |a: &Arc<FiniteAlgebra>, map: SparseMatrix| -> Vec<SparseMatrix> {
        let psi = Measuring::from_algebra_map(a.clone(), a.clone(), map).unwrap();
        let phi = ComoduleMeasuring::regular(Arc::new(psi));
        let l = LodayModule::regular(a.clone()).unwrap();
        let c = Arc::new(ChainComplex::new(l, Arc::new(circle(3)), true).unwrap());
        let cm = measuring_chain_map(&phi, &[f.one()], c.clone(), c).unwrap();
        (0..=2).map(|n| homology_map(&cm, n).unwrap()).collect()
    };
    let mut ok = true;
    for (a, map) in autos {
        for h in induced(&a, map) {
            ok &= h.nrows() == h.ncols() && rank(&h) == h.ncols();
        }
    }
    for a in [dual(), trunc3] {
        for h in induced(&a, SparseMatrix::identity(f, a.dim())) {
            ok &= h.is_identity();
        }
    }
    ensure(ok, "automorphisms invertible and identities identity on HH_0..2 of the circle".into())
}

fn phi_from(doc: &str) -> Arc<ComoduleMeasuring> {
    let opts = ResolveOptions { default_truncation: 3, ..Default::default() };
    let ws = Workspace::resolve(&parse_document(doc).unwrap(), &opts).unwrap();
    ws.comodule_measuring("phi", "acceptance").unwrap()
}

fn enumeration_invariance() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let y = circle(3);
    let l = LodayModule::regular(dual()).unwrap();
    let (good, bad) = (phi_from(DUAL_NUMBERS), phi_from(CORRUPTED_PHI));
    let t = [q().zero(), q().one()];
    let verdict = |y: &Arc<_>, phi: &ComoduleMeasuring| {
        verify_theorem_square(&SimplicialMap::collapse(Arc::clone(y)), phi, &t, &[0, 1], true).unwrap().passed()
    };
    let base = Arc::new(y.clone());
    let expected = (
        dims(&ChainComplex::new(l.clone(), base.clone(), true).unwrap(), 2),
        verdict(&base, &good),
        verdict(&base, &bad),
    );
    for _ in 0..5 {
        let perms: Vec<Vec<usize>> = y
            .sizes()
            .iter()
            .map(|&n| {
                let mut tail: Vec<usize> = (1..n).collect();
                tail.shuffle(&mut rng);
                std::iter::once(0).chain(tail).collect()
            })
            .collect();
        let z = Arc::new(relabel(&y, &perms).unwrap());
        for normalized in [true, false] {
            let got = dims(&ChainComplex::new(l.clone(), z.clone(), normalized).unwrap(), 2);
            if got != expected.0 {
                return Err(format!("relabeling {perms:?} changes dims to {got:?}"));
            }
        }
        if (verdict(&z, &good), verdict(&z, &bad)) != (expected.1, expected.2) {
            return Err(format!("relabeling {perms:?} changes the square verdict"));
        }
    }
    Ok(format!(
        "5 relabelings: dims {:?}, square verdicts (bundled, corrupted) = ({}, {})",
        expected.0, expected.1, expected.2
    ))
}

fn characteristic_two() -> Verdict {
    let f2 = Field::prime(2).unwrap();
    let l = LodayModule::regular(Arc::new(FiniteAlgebra::truncated_polynomial(f2, 2))).unwrap();
    let c = ChainComplex::new(l, Arc::new(circle(3)), true).map_err(|e| e.to_string())?;
    let got = (0..=2).map(|n| c.homology(n).map(|h| h.dimension())).collect::<Result<Vec<_>, _>>();
    got.map(|d| format!("advisory: HH_0..2 over 𝔽₂ = {d:?}")).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("classical recovery on the circle", circle_recovery),
        ("point collapse", point_collapse),
        ("separable vanishing", separable_vanishing),
        ("square-zero differentials", square_zero_differentials),
        ("measuring naturality on Γ", random_measurings_natural),
        ("naturality square for collapse", theorem_square),
        ("Dold–Kan agreement", dold_kan),
        ("group-like functoriality", group_like_functoriality),
        ("enumeration invariance", enumeration_invariance),
        ("characteristic 2 smoke test", characteristic_two),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let (tag, detail) = match verdict {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2}. {name} ({elapsed:.2?}): {detail}", i + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
