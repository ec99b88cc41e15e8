//! Classical Hochschild homology `HH_n(A, M)` from the cyclic bar complex
//! `M ⊗ A^{⊗n}`, computed with a hand-rolled dense rank over `BigRational`,
//! compared with the circle model.

use std::sync::Arc;

use hhx_core::algstruct::{FiniteAlgebra, FiniteModule};
use hhx_core::hochschild::{ChainComplex, LodayModule};
use hhx_core::simplicial::circle;
use hhx_core::Field;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

type Q = BigRational;

/// Dense structure constants: `mult[i][j][k]` and `act[i][m][l]`.
struct Tables {
    a: usize,
    m: usize,
    mult: Vec<Vec<Vec<Q>>>,
    act: Vec<Vec<Vec<Q>>>,
}

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn tables(algebra: &FiniteAlgebra, module: &FiniteModule) -> Tables {
    let (a, m) = (algebra.dim(), module.dim());
    let mut mult = vec![vec![vec![Q::zero(); a]; a]; a];
    for (i, j, k, c) in algebra.structure_constants() {
        mult[i][j][k] = c.as_rational().unwrap().clone();
    }
    let mut act = vec![vec![vec![Q::zero(); m]; m]; a];
    for (i, mm, l, c) in module.structure_constants() {
        act[i][mm][l] = c.as_rational().unwrap().clone();
    }
    Tables { a, m, mult, act }
}

fn index(t: &Tables, tuple: &[usize]) -> usize {
    tuple[1..].iter().fold(tuple[0], |acc, &x| acc * t.a + x)
}

fn tuples(t: &Tables, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for slot in 0..=n {
        let width = if slot == 0 { t.m } else { t.a };
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..width).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// `b(m ⊗ a_1 ⊗ … ⊗ a_n) = m a_1 ⊗ … + Σ_{0<i<n} (−1)^i … ⊗ a_i a_{i+1} ⊗ …
/// + (−1)^n a_n m ⊗ a_1 ⊗ … ⊗ a_{n−1}` as a dense matrix.
fn bar_differential(t: &Tables, n: usize) -> Vec<Vec<Q>> {
    let rows = t.m * t.a.pow(n as u32 - 1);
    let cols = t.m * t.a.pow(n as u32);
    let mut d = vec![vec![Q::zero(); cols]; rows];
    for tuple in tuples(t, n) {
        let col = index(t, &tuple);
        let sign = |i: usize| if i.is_multiple_of(2) { q(1) } else { q(-1) };
        // i = 0: m·a_1
        for l in 0..t.m {
            let c = &t.act[tuple[1]][tuple[0]][l];
            if !c.is_zero() {
                let mut out = vec![l];
                out.extend_from_slice(&tuple[2..]);
                d[index(t, &out)][col] += c;
            }
        }
        for i in 1..n {
            for k in 0..t.a {
                let c = &t.mult[tuple[i]][tuple[i + 1]][k];
                if !c.is_zero() {
                    let mut out = tuple[..i].to_vec();
                    out.push(k);
                    out.extend_from_slice(&tuple[i + 2..]);
                    d[index(t, &out)][col] += sign(i) * c;
                }
            }
        }
        for l in 0..t.m {
            let c = &t.act[tuple[n]][tuple[0]][l];
            if !c.is_zero() {
                let mut out = vec![l];
                out.extend_from_slice(&tuple[1..n]);
                d[index(t, &out)][col] += sign(n) * c;
            }
        }
    }
    d
}

fn dense_rank(mut m: Vec<Vec<Q>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = Q::one() / &m[rank][c];
        let pivot: Vec<Q> = m[rank].iter().map(|x| x * &inv).collect();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        m[rank] = pivot;
        rank += 1;
    }
    rank
}

fn classical_dims(algebra: &FiniteAlgebra, module: &FiniteModule, top: usize) -> Vec<usize> {
    let t = tables(algebra, module);
    let ranks: Vec<usize> = (0..=top + 1).map(|n| if n == 0 { 0 } else { dense_rank(bar_differential(&t, n)) }).collect();
    (0..=top).map(|n| t.m * t.a.pow(n as u32) - ranks[n] - ranks[n + 1]).collect()
}

fn circle_dims(algebra: Arc<FiniteAlgebra>, module: Arc<FiniteModule>, top: usize, normalized: bool) -> Vec<usize> {
    let l = LodayModule::new(algebra, module).unwrap();
    let c = ChainComplex::new(l, Arc::new(circle(top + 1)), normalized).unwrap();
    (0..=top).map(|n| c.homology(n).unwrap().dimension()).collect()
}

fn check(algebra: FiniteAlgebra, module: impl FnOnce(Arc<FiniteAlgebra>) -> FiniteModule, top: usize) -> Vec<usize> {
    let algebra = Arc::new(algebra);
    let module = Arc::new(module(algebra.clone()));
    let expected = classical_dims(&algebra, &module, top);
    for normalized in [false, true] {
        assert_eq!(circle_dims(algebra.clone(), module.clone(), top, normalized), expected, "normalized = {normalized}");
    }
    expected
}

#[test]
fn dual_numbers() {
    let dims = check(FiniteAlgebra::truncated_polynomial(Field::rational(), 2), FiniteModule::regular, 2);
    assert_eq!(dims, vec![2, 1, 1]);
}

#[test]
fn separable_vanishing() {
    let dims = check(FiniteAlgebra::split(Field::rational(), 2), FiniteModule::regular, 3);
    assert_eq!(dims, vec![2, 0, 0, 0]);
}

#[test]
fn cubic_truncation() {
    check(FiniteAlgebra::truncated_polynomial(Field::rational(), 3), FiniteModule::regular, 2);
}

#[test]
fn square_zero_extension() {
    check(FiniteAlgebra::square_zero(Field::rational(), 2), FiniteModule::regular, 2);
}

#[test]
fn augmentation_coefficients() {
    let f = Field::rational();
    let dims = check(
        FiniteAlgebra::truncated_polynomial(f, 2),
        |a| FiniteModule::new(a, vec!["k".into()], vec![(0, 0, 0, f.one())]).unwrap(),
        3,
    );
    // Tor over the dual numbers with trivial coefficients: one class per degree
    assert_eq!(dims, vec![1, 1, 1, 1]);
}
