//! Gaussian elimination over exact fields.
//!
//! Column by column, the pivot is the candidate row whose entry in that
//! column has the smallest height (ties go to the earliest row). Both the
//! sparse and the dense paths end in reduced row echelon form, which is
//! unique for a given row space, so they agree exactly.

use std::collections::BTreeMap;

use super::vector::{self, SparseVec};
use super::{Field, Scalar};

/// Matrices strictly below this size in both dimensions take the dense path.
pub const DENSE_CUTOFF: usize = 64;

/// Reduced row echelon form of a row space.
///
/// Rows are ordered by pivot column, each pivot coefficient is one, and every
/// pivot column is zero in all other rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    field: Field,
    width: usize,
    pivots: Vec<usize>,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<u32>>,
}

impl Echelon {
    pub fn new(field: Field, width: usize, rows: Vec<SparseVec>) -> Self {
        if rows.len() < DENSE_CUTOFF && width < DENSE_CUTOFF {
            Self::dense(field, width, rows)
        } else {
            Self::sparse(field, width, rows)
        }
    }

    pub fn sparse(field: Field, width: usize, rows: Vec<SparseVec>) -> Self {
        let mut upper = forward_sparse(rows);
        // back substitution: clear each pivot column from earlier rows
        for k in (0..upper.len()).rev() {
            let (pivot, row) = upper[k].clone();
            for (_, earlier) in upper[..k].iter_mut() {
                if let Some(c) = vector::get(earlier, pivot).cloned() {
                    *earlier = vector::add_scaled(earlier, &-c, &row);
                }
            }
        }
        Self::assemble(field, width, upper)
    }

    pub fn dense(field: Field, width: usize, rows: Vec<SparseVec>) -> Self {
        let mut m: Vec<Vec<Scalar>> =
            rows.iter().map(|r| vector::to_dense(field, r, width)).collect();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..width {
            if next == m.len() {
                break;
            }
            let Some(best) = (next..m.len())
                .filter(|&r| !m[r][col].is_zero())
                .min_by_key(|&r| (m[r][col].height(), r))
            else {
                continue;
            };
            m.swap(next, best);
            let inv = m[next][col].inv().expect("nonzero pivot");
            for v in m[next].iter_mut() {
                *v = &*v * &inv;
            }
            let pivot_row = m[next].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r == next || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *v = &*v - &(&factor * p);
                    }
                }
            }
            pivots.push(col);
            next += 1;
        }
        let upper = pivots
            .iter()
            .enumerate()
            .map(|(r, &p)| (p, vector::from_dense(&m[r])))
            .collect();
        Self::assemble(field, width, upper)
    }

    fn assemble(field: Field, width: usize, upper: Vec<(usize, SparseVec)>) -> Self {
        let mut pivot_row = vec![None; width];
        let (pivots, rows): (Vec<usize>, Vec<SparseVec>) = upper.into_iter().unzip();
        for (r, &p) in pivots.iter().enumerate() {
            pivot_row[p] = Some(r as u32);
        }
        Echelon { field, width, pivots, rows, pivot_row }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Columns without a pivot, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.width).filter(|&c| !self.is_pivot(c)).collect()
    }

    /// Normal form of `v` modulo the row space: the residual has zeros in
    /// every pivot column.
    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let mut out: SparseVec = v.to_vec();
        for (c, coeff) in v {
            if let Some(r) = self.pivot_row[*c] {
                out = vector::add_scaled(&out, &-coeff, &self.rows[r as usize]);
            }
        }
        out
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Basis of the null space of the row space (vectors `x` with `row·x = 0`
    /// for every row), one vector per free column in ascending order.
    pub fn null_space(&self) -> Vec<SparseVec> {
        let free = self.free_columns();
        let mut slot = vec![usize::MAX; self.width];
        for (k, &f) in free.iter().enumerate() {
            slot[f] = k;
        }
        let mut terms: Vec<Vec<(usize, Scalar)>> =
            free.iter().map(|&f| vec![(f, self.field.one())]).collect();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            for (c, v) in row {
                if *c != p {
                    terms[slot[*c]].push((p, -v));
                }
            }
        }
        terms.into_iter().map(vector::from_terms).collect()
    }
}

/// Forward elimination only; returns `(pivot column, row)` in pivot order,
/// rows normalized to a leading one.
pub(crate) fn forward_sparse(rows: Vec<SparseVec>) -> Vec<(usize, SparseVec)> {
    let mut buckets: BTreeMap<usize, Vec<SparseVec>> = BTreeMap::new();
    for row in rows {
        if let Some(&(lead, _)) = row.first() {
            buckets.entry(lead).or_default().push(row);
        }
    }
    let mut out = Vec::new();
    while let Some((col, mut bucket)) = buckets.pop_first() {
        let best = (0..bucket.len())
            .min_by_key(|&i| (bucket[i][0].1.height(), i))
            .expect("buckets are never empty");
        let pivot = bucket.swap_remove(best);
        let inv = pivot[0].1.inv().expect("leading entries are nonzero");
        let pivot = vector::scale(&pivot, &inv);
        for row in bucket {
            let factor = -&row[0].1;
            let reduced = vector::add_scaled(&row, &factor, &pivot);
            if let Some(&(lead, _)) = reduced.first() {
                buckets.entry(lead).or_default().push(reduced);
            }
        }
        out.push((col, pivot));
    }
    out
}

/// An echelon basis grown one vector at a time, tracking for each stored row
/// its expression in caller-supplied tag coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct TaggedEchelon {
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
}

impl TaggedEchelon {
    pub fn new() -> Self {
        TaggedEchelon { rows: BTreeMap::new() }
    }

    /// Reduces `(v, tag)` by the stored rows. Returns the residual pair.
    pub fn reduce(&self, v: &[(usize, Scalar)], tag: &[(usize, Scalar)]) -> (SparseVec, SparseVec) {
        let mut v = v.to_vec();
        let mut tag = tag.to_vec();
        let mut floor = 0;
        loop {
            let hit = v
                .iter()
                .find(|(c, _)| *c >= floor && self.rows.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((c, x)) = hit else { break };
            let (row, row_tag) = &self.rows[&c];
            v = vector::add_scaled(&v, &-&x, row);
            tag = vector::add_scaled(&tag, &-&x, row_tag);
            floor = c + 1;
        }
        (v, tag)
    }

    /// Inserts `(v, tag)`; returns false if `v` was already in the span.
    pub fn insert(&mut self, v: &[(usize, Scalar)], tag: &[(usize, Scalar)]) -> bool {
        let (v, tag) = self.reduce(v, tag);
        let Some((lead, x)) = v.first().cloned() else {
            return false;
        };
        let inv = x.inv().expect("nonzero lead");
        self.rows.insert(lead, (vector::scale(&v, &inv), vector::scale(&tag, &inv)));
        true
    }
}
