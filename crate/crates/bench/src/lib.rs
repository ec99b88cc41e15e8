//! Shared fixtures for the criterion benchmarks.

use std::sync::Arc;

use hhx_core::algstruct::{FiniteAlgebra, FiniteCoalgebra};
use hhx_core::hochschild::LodayModule;
use hhx_core::{ComoduleMeasuring, Field, Measuring, SparseMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn q() -> Field {
    Field::rational()
}

/// `ℚ[x]/(x^n)` acting on itself.
pub fn truncated(n: usize) -> LodayModule {
    LodayModule::regular(Arc::new(FiniteAlgebra::truncated_polynomial(q(), n))).unwrap()
}

/// The measuring from `span{g, d}` on `ℚ[x]/(x²) → ℚ` with `ψ(g)` the
/// augmentation and `ψ(d)` the derivative at zero, on regular modules.
pub fn primitive_measuring() -> ComoduleMeasuring {
    let f = q();
    let c = Arc::new(FiniteCoalgebra::divided_powers(f, 1));
    let a = Arc::new(FiniteAlgebra::truncated_polynomial(f, 2));
    let b = Arc::new(FiniteAlgebra::ground(f));
    let psi = Measuring::new(c, a, b, vec![(0, 0, 0, f.one()), (1, 1, 0, f.one())]).unwrap();
    ComoduleMeasuring::regular(Arc::new(psi))
}

/// A `rows × cols` matrix with roughly `density` of its entries drawn from
/// small nonzero integers.
pub fn random_matrix(rows: usize, cols: usize, density: f64, seed: u64) -> SparseMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = q();
    let mut triplets = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if rng.gen_bool(density) {
                let v = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
                triplets.push((r, c, f.from_i64(v)));
            }
        }
    }
    SparseMatrix::from_triplets(f, rows, cols, triplets).unwrap()
}
