use std::collections::BTreeMap;

use crate::exactlin::{Field, Scalar, SparseMatrix};

/// Which leg an iterated coproduct re-expands at each step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bracketing {
    /// `Δ^{(k)} = (Δ ⊗ id^{⊗(k−2)}) ∘ Δ^{(k−1)}`
    Left,
    /// `Δ^{(k)} = (id^{⊗(k−2)} ⊗ Δ) ∘ Δ^{(k−1)}`
    Right,
}

/// A linear map from a based space into a tensor product of based spaces,
/// stored per input basis vector as multi-index terms.
///
/// Terms are sorted by multi-index (lexicographic, first leg slowest) and
/// nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiLegMap {
    field: Field,
    legs: Vec<usize>,
    images: Vec<Vec<(Vec<usize>, Scalar)>>,
}

impl MultiLegMap {
    pub fn identity(field: Field, dim: usize) -> Self {
        MultiLegMap {
            field,
            legs: vec![dim],
            images: (0..dim).map(|s| vec![(vec![s], field.one())]).collect(),
        }
    }

    pub(crate) fn from_images(field: Field, legs: Vec<usize>, images: Vec<Vec<(Vec<usize>, Scalar)>>) -> Self {
        let images = images.into_iter().map(combine).collect();
        MultiLegMap { field, legs, images }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Dimension of each tensor leg.
    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    pub fn input_dim(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, s: usize) -> &[(Vec<usize>, Scalar)] {
        &self.images[s]
    }

    /// Image of a general input vector.
    pub fn apply(&self, v: &[(usize, Scalar)]) -> Vec<(Vec<usize>, Scalar)> {
        let terms = v
            .iter()
            .flat_map(|(s, x)| self.images[*s].iter().map(move |(idx, c)| (idx.clone(), x * c)))
            .collect();
        combine(terms)
    }

    /// Replaces leg `leg` by the legs `new_legs`, mapping each basis index of
    /// the old leg to multi-index terms over the new legs via `expand`.
    pub(crate) fn expand_leg<F>(&self, leg: usize, new_legs: &[usize], expand: F) -> Self
    where
        F: Fn(usize) -> Vec<(Vec<usize>, Scalar)>,
    {
        let images = self
            .images
            .iter()
            .map(|terms| {
                let mut out = Vec::new();
                for (idx, c) in terms {
                    for (replacement, x) in expand(idx[leg]) {
                        debug_assert_eq!(replacement.len(), new_legs.len());
                        let mut new_idx = idx[..leg].to_vec();
                        new_idx.extend(replacement);
                        new_idx.extend_from_slice(&idx[leg + 1..]);
                        out.push((new_idx, c * &x));
                    }
                }
                combine(out)
            })
            .collect();
        let mut legs = self.legs[..leg].to_vec();
        legs.extend_from_slice(new_legs);
        legs.extend_from_slice(&self.legs[leg + 1..]);
        MultiLegMap { field: self.field, legs, images }
    }

    /// Contracts leg `leg` against the functional `weights` (index → scalar).
    pub fn contract_leg(&self, leg: usize, weights: &[(usize, Scalar)]) -> Self {
        let images = self
            .images
            .iter()
            .map(|terms| {
                let mut out = Vec::new();
                for (idx, c) in terms {
                    if let Some(w) = crate::exactlin::vector::get(weights, idx[leg]) {
                        let mut new_idx = idx.clone();
                        new_idx.remove(leg);
                        out.push((new_idx, c * w));
                    }
                }
                combine(out)
            })
            .collect();
        let mut legs = self.legs.clone();
        legs.remove(leg);
        MultiLegMap { field: self.field, legs, images }
    }

    /// Reorders legs: output leg `i` is input leg `order[i]`.
    pub fn permute_legs(&self, order: &[usize]) -> Self {
        let images = self
            .images
            .iter()
            .map(|terms| combine(terms.iter().map(|(idx, c)| (order.iter().map(|&o| idx[o]).collect(), c.clone())).collect()))
            .collect();
        let legs = order.iter().map(|&o| self.legs[o]).collect();
        MultiLegMap { field: self.field, legs, images }
    }

    /// Flattens to a matrix with the tensor multi-index as the row index
    /// (first leg slowest).
    pub fn to_matrix(&self) -> SparseMatrix {
        let rows: usize = self.legs.iter().product();
        let columns: Vec<_> = self
            .images
            .iter()
            .map(|terms| terms.iter().map(|(idx, c)| (flatten(idx, &self.legs), c.clone())).collect())
            .collect();
        SparseMatrix::from_columns(self.field, rows, &columns)
    }
}

pub fn flatten(idx: &[usize], dims: &[usize]) -> usize {
    idx.iter().zip(dims).fold(0, |acc, (i, d)| acc * d + i)
}

fn combine(terms: Vec<(Vec<usize>, Scalar)>) -> Vec<(Vec<usize>, Scalar)> {
    let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
    for (idx, c) in terms {
        match acc.get_mut(&idx) {
            Some(v) => *v = &*v + &c,
            None => {
                acc.insert(idx, c);
            }
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}
