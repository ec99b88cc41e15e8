//! Sparse coordinate vectors: `(index, coefficient)` pairs sorted by index,
//! with no stored zeros.

use super::{Field, Scalar};

pub type SparseVec = Vec<(usize, Scalar)>;

/// `a + factor * b`.
pub fn add_scaled(a: &[(usize, Scalar)], factor: &Scalar, b: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = factor * &b[j].1;
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = &a[i].1 + &(factor * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(v: &[(usize, Scalar)], factor: &Scalar) -> SparseVec {
    if factor.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, c)| (*i, c * factor)).collect()
}

pub fn get(v: &[(usize, Scalar)], index: usize) -> Option<&Scalar> {
    v.binary_search_by_key(&index, |(i, _)| *i).ok().map(|pos| &v[pos].1)
}

/// Collects unsorted terms, summing duplicates and dropping zeros.
pub fn from_terms(mut terms: Vec<(usize, Scalar)>) -> SparseVec {
    terms.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec = Vec::with_capacity(terms.len());
    for (i, c) in terms {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = &*acc + &c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

pub fn from_dense(values: &[Scalar]) -> SparseVec {
    values
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn to_dense(field: Field, v: &[(usize, Scalar)], len: usize) -> Vec<Scalar> {
    let mut out = vec![field.zero(); len];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

pub fn unit(field: Field, index: usize) -> SparseVec {
    vec![(index, field.one())]
}

/// Kronecker product of coordinate vectors with the left factor slowest.
pub fn kron(a: &[(usize, Scalar)], b: &[(usize, Scalar)], b_len: usize) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a {
        for (j, y) in b {
            out.push((i * b_len + j, x * y));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_cancels() {
        let q = Field::rational();
        let a = vec![(0, q.one()), (2, q.from_i64(3))];
        let b = vec![(1, q.one()), (2, q.from_i64(1))];
        let r = add_scaled(&a, &q.from_i64(-3), &b);
        assert_eq!(r, vec![(0, q.one()), (1, q.from_i64(-3))]);
    }

    #[test]
    fn terms_are_combined() {
        let q = Field::rational();
        let v = from_terms(vec![(3, q.one()), (1, q.one()), (3, q.from_i64(-1))]);
        assert_eq!(v, vec![(1, q.one())]);
    }
}
