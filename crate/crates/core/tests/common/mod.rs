//! Random measurings built from group-like and primitive generators.
//!
//! A family of algebra maps `Φ: A → B[t]/(t^{r+1})` gives a measuring from
//! the divided-power coalgebra `d_0, …, d_r` by reading off `t`-coefficients;
//! several independent `Φ` at `r = 0` give a set-like coalgebra.

#![allow(dead_code)]

use std::sync::Arc;

use hhx_core::algstruct::{FiniteAlgebra, FiniteCoalgebra};
use hhx_core::exactlin::vector::{self, SparseVec};
use hhx_core::{ComoduleMeasuring, Field, Measuring, Scalar};
use rand::Rng;

/// Element of `B[t]/(t^{r+1})` as one coefficient vector per power of `t`.
type Series = Vec<SparseVec>;

fn series_mul(b: &FiniteAlgebra, p: &Series, q: &Series) -> Series {
    let r = p.len();
    let mut out = vec![Vec::new(); r];
    for i in 0..r {
        for j in 0..r - i {
            let prod = b.multiply(&p[i], &q[j]);
            out[i + j] = vector::add_scaled(&out[i + j], &b.field().one(), &prod);
        }
    }
    out
}

pub enum Source {
    Truncated(usize),
    SquareZero(usize),
}

impl Source {
    pub fn algebra(&self, f: Field) -> FiniteAlgebra {
        match self {
            Source::Truncated(n) => FiniteAlgebra::truncated_polynomial(f, *n),
            Source::SquareZero(n) => FiniteAlgebra::square_zero(f, *n),
        }
    }
}

fn random_nilpotent<R: Rng>(rng: &mut R, b: &FiniteAlgebra) -> SparseVec {
    let f = b.field();
    // basis element 0 of the built-in local algebras is the unit; the rest span the maximal ideal
    let terms = (1..b.dim()).map(|i| (i, f.from_i64(rng.gen_range(-2..=2)))).collect();
    vector::from_terms(terms)
}

/// `Φ` on the basis of `A`, determined by random images of the generators.
fn random_phi<R: Rng>(rng: &mut R, source: &Source, b: &FiniteAlgebra, r: usize) -> Vec<Series> {
    let one: Series = std::iter::once(b.unit().clone()).chain((0..r).map(|_| Vec::new())).collect();
    let gens: Vec<Series> = match source {
        Source::Truncated(_) => vec![(0..=r).map(|_| random_nilpotent(rng, b)).collect()],
        Source::SquareZero(n) => (0..*n).map(|_| (0..=r).map(|_| random_nilpotent(rng, b)).collect()).collect(),
    };
    match source {
        Source::Truncated(n) => {
            let mut out = vec![one];
            for _ in 1..*n {
                let next = series_mul(b, out.last().unwrap(), &gens[0]);
                out.push(next);
            }
            out
        }
        Source::SquareZero(_) => std::iter::once(one).chain(gens).collect(),
    }
}

/// The target is `ℚ[x]/(x²)`, whose maximal ideal squares to zero, so every
/// choice of generator images gives an algebra map.
pub fn random_measuring<R: Rng>(rng: &mut R, f: Field) -> Measuring {
    let source = match rng.gen_range(0..4) {
        0 => Source::Truncated(2),
        1 => Source::Truncated(3),
        2 => Source::SquareZero(2),
        _ => Source::Truncated(1),
    };
    let a = Arc::new(source.algebra(f));
    let b = Arc::new(FiniteAlgebra::truncated_polynomial(f, 2));
    let mut table = Vec::new();
    let coalgebra = if rng.gen_bool(0.5) {
        let r = rng.gen_range(1..=2);
        let phi = random_phi(rng, &source, &b, r);
        for (ai, series) in phi.iter().enumerate() {
            for (n, coeffs) in series.iter().enumerate() {
                for (bi, c) in coeffs {
                    table.push((n, ai, *bi, c.clone()));
                }
            }
        }
        FiniteCoalgebra::divided_powers(f, r)
    } else {
        let count = rng.gen_range(1..=2);
        for s in 0..count {
            let phi = random_phi(rng, &source, &b, 0);
            for (ai, series) in phi.iter().enumerate() {
                for (bi, c) in &series[0] {
                    table.push((s, ai, *bi, c.clone()));
                }
            }
        }
        let names: Vec<String> = (0..count).map(|s| format!("g{s}")).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        FiniteCoalgebra::set_like(f, &names)
    };
    Measuring::new(Arc::new(coalgebra), a, b, table).expect("generated measuring is well-formed")
}

pub fn random_element<R: Rng>(rng: &mut R, f: Field, dim: usize) -> Vec<Scalar> {
    (0..dim).map(|_| f.from_i64(rng.gen_range(-3..=3))).collect()
}

pub fn random_comodule_measuring<R: Rng>(rng: &mut R, f: Field) -> ComoduleMeasuring {
    ComoduleMeasuring::regular(Arc::new(random_measuring(rng, f)))
}
