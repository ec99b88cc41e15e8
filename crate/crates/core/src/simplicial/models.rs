use std::collections::HashMap;

use itertools::Itertools;

use super::{PointedSimplicialSet, SimplicialError};

/// Assembles a simplicial set from closures giving `d_i` and `s_j` on each
/// level. Only used for models that are correct by construction.
fn assemble(
    name: String,
    sizes: Vec<usize>,
    face: impl Fn(usize, usize, usize) -> usize,
    degeneracy: impl Fn(usize, usize, usize) -> usize,
) -> PointedSimplicialSet {
    let n = sizes.len() - 1;
    let faces = (0..=n)
        .map(|k| {
            if k == 0 {
                Vec::new()
            } else {
                (0..=k).map(|i| (0..sizes[k]).map(|x| face(k, i, x)).collect()).collect()
            }
        })
        .collect();
    let degeneracies = (0..n)
        .map(|k| (0..=k).map(|j| (0..sizes[k]).map(|x| degeneracy(k, j, x)).collect()).collect())
        .collect();
    PointedSimplicialSet::new(name, sizes, faces, degeneracies).expect("model tables are well-shaped")
}

/// Every level a singleton.
pub fn point(truncation: usize) -> PointedSimplicialSet {
    assemble("point".into(), vec![1; truncation + 1], |_, _, _| 0, |_, _, _| 0)
        .with_model("terminal simplicial set: every level is {*}")
}

/// `Δ¹/∂Δ¹`. Level `k` is `{0, …, k}`; element `j ≥ 1` is the monotone map
/// `[k] → [1]` whose first `j` values are `0`, and both constant maps are the
/// basepoint.
pub fn circle(truncation: usize) -> PointedSimplicialSet {
    let sizes = (0..=truncation).map(|k| k + 1).collect();
    let face = |k: usize, i: usize, j: usize| {
        if j == 0 {
            return 0;
        }
        let j = j - usize::from(i < j);
        // j = 0 or j = k are the constant maps on level k − 1
        if j == 0 || j == k {
            0
        } else {
            j
        }
    };
    let degeneracy = |_k: usize, i: usize, j: usize| if j == 0 { 0 } else { j + usize::from(i < j) };
    assemble("circle".into(), sizes, face, degeneracy)
        .with_model("Δ¹/∂Δ¹; element j ≥ 1 of level k is the monotone map [k]→[1] with j zeros")
}

/// `Δ^d/∂Δ^d` with its single nondegenerate `d`-cell `σ`. For `k ≥ d`, the
/// non-basepoint `k`-simplices are the monotone surjections `η: [k] → [d]`,
/// that is the degeneracies `s_J σ`, where `J ⊂ {0, …, k−1}` with `|J| = k − d`
/// holds the positions `x` with `η(x) = η(x+1)`. They are numbered from `1` in
/// lexicographic order of `J`. Faces that stop being surjective land on the
/// basepoint.
pub fn sphere(d: usize, truncation: usize) -> Result<PointedSimplicialSet, SimplicialError> {
    if d < 1 || truncation < d {
        return Err(SimplicialError::InvalidDimension { d, truncation });
    }
    let levels: Vec<Vec<Vec<usize>>> = (0..=truncation)
        .map(|k| {
            if k < d {
                return Vec::new();
            }
            (0..k)
                .combinations(k - d)
                .map(|repeats| {
                    let mut eta = vec![0];
                    for x in 0..k {
                        let step = usize::from(!repeats.contains(&x));
                        eta.push(eta[x] + step);
                    }
                    eta
                })
                .collect()
        })
        .collect();
    let index: Vec<HashMap<&[usize], usize>> = levels
        .iter()
        .map(|level| level.iter().enumerate().map(|(i, eta)| (eta.as_slice(), i + 1)).collect())
        .collect();
    let sizes = levels.iter().map(|l| l.len() + 1).collect();
    let lookup = |k: usize, eta: &[usize]| -> usize {
        let surjective =
            eta.first() == Some(&0) && eta.last() == Some(&d) && eta.windows(2).all(|w| w[1] - w[0] <= 1);
        if surjective {
            index[k][eta]
        } else {
            0
        }
    };
    let face = |k: usize, i: usize, x: usize| {
        if x == 0 {
            return 0;
        }
        let mut eta = levels[k][x - 1].clone();
        eta.remove(i);
        lookup(k - 1, &eta)
    };
    let degeneracy = |k: usize, j: usize, x: usize| {
        if x == 0 {
            return 0;
        }
        let mut eta = levels[k][x - 1].clone();
        eta.insert(j, eta[j]);
        lookup(k + 1, &eta)
    };
    Ok(assemble(format!("sphere:{d}"), sizes, face, degeneracy).with_model(format!(
        "Δ^{d}/∂Δ^{d}; non-basepoint k-simplices are surjections [k]→[{d}] ordered by their degeneracy index sets"
    )))
}

fn check_truncations(y: &PointedSimplicialSet, z: &PointedSimplicialSet) -> Result<usize, SimplicialError> {
    if y.truncation() != z.truncation() {
        return Err(SimplicialError::TruncationMismatch(y.truncation(), z.truncation()));
    }
    Ok(y.truncation())
}

/// `Y ∨ Z`: level `k` lists `Y_k` first, then the non-basepoint simplices of
/// `Z_k`.
pub fn wedge(y: &PointedSimplicialSet, z: &PointedSimplicialSet) -> Result<PointedSimplicialSet, SimplicialError> {
    check_truncations(y, z)?;
    let sizes = y.sizes.iter().zip(&z.sizes).map(|(a, b)| a + b - 1).collect();
    let lift = |k: usize, v: usize| if v == 0 { 0 } else { v + y.sizes[k] - 1 };
    let split = |k: usize, x: usize| -> Result<usize, usize> {
        if x < y.sizes[k] {
            Ok(x)
        } else {
            Err(x + 1 - y.sizes[k])
        }
    };
    let face = |k: usize, i: usize, x: usize| match split(k, x) {
        Ok(a) => y.faces[k][i][a],
        Err(b) => lift(k - 1, z.faces[k][i][b]),
    };
    let degeneracy = |k: usize, j: usize, x: usize| match split(k, x) {
        Ok(a) => y.degeneracies[k][j][a],
        Err(b) => lift(k + 1, z.degeneracies[k][j][b]),
    };
    let name = format!("wedge({},{})", y.name, z.name);
    Ok(assemble(name, sizes, face, degeneracy).with_model(format!("wedge of [{}] and [{}]", y.model, z.model)))
}

/// `Y × Z` with `(a, b) ↦ a·|Z_k| + b`.
pub fn product(y: &PointedSimplicialSet, z: &PointedSimplicialSet) -> Result<PointedSimplicialSet, SimplicialError> {
    check_truncations(y, z)?;
    let sizes = y.sizes.iter().zip(&z.sizes).map(|(a, b)| a * b).collect();
    let face = |k: usize, i: usize, x: usize| {
        let (a, b) = (x / z.sizes[k], x % z.sizes[k]);
        y.faces[k][i][a] * z.sizes[k - 1] + z.faces[k][i][b]
    };
    let degeneracy = |k: usize, j: usize, x: usize| {
        let (a, b) = (x / z.sizes[k], x % z.sizes[k]);
        y.degeneracies[k][j][a] * z.sizes[k + 1] + z.degeneracies[k][j][b]
    };
    let name = format!("product({},{})", y.name, z.name);
    Ok(assemble(name, sizes, face, degeneracy).with_model(format!("product of [{}] and [{}]", y.model, z.model)))
}

/// Renames simplex `x` of level `k` to `perms[k][x]`. Each `perms[k]` must be
/// a permutation fixing `0`.
pub fn relabel(y: &PointedSimplicialSet, perms: &[Vec<usize>]) -> Result<PointedSimplicialSet, SimplicialError> {
    if perms.len() != y.sizes.len() {
        return Err(SimplicialError::Malformed(format!("need {} permutations, got {}", y.sizes.len(), perms.len())));
    }
    let mut inverse = Vec::with_capacity(perms.len());
    for (k, p) in perms.iter().enumerate() {
        let mut inv = vec![usize::MAX; p.len()];
        if p.len() != y.sizes[k] || p.first() != Some(&0) {
            return Err(SimplicialError::Malformed(format!("level {k} relabeling is not a pointed bijection")));
        }
        for (x, &v) in p.iter().enumerate() {
            if v >= p.len() || inv[v] != usize::MAX {
                return Err(SimplicialError::Malformed(format!("level {k} relabeling is not a pointed bijection")));
            }
            inv[v] = x;
        }
        inverse.push(inv);
    }
    let face = |k: usize, i: usize, x: usize| perms[k - 1][y.faces[k][i][inverse[k][x]]];
    let degeneracy = |k: usize, j: usize, x: usize| perms[k + 1][y.degeneracies[k][j][inverse[k][x]]];
    Ok(assemble(y.name.clone(), y.sizes.clone(), face, degeneracy)
        .with_model(format!("{} (relabeled)", y.model)))
}

/// Parses `point`, `circle`, `sphere:d`, `wedge(X,Y)` and `product(X,Y)`.
pub fn builtin(spec: &str, truncation: usize) -> Result<PointedSimplicialSet, SimplicialError> {
    let spec = spec.trim();
    let unknown = || SimplicialError::UnknownBuiltin(spec.to_string());
    match spec {
        "point" => return Ok(point(truncation)),
        "circle" => return Ok(circle(truncation)),
        _ => {}
    }
    if let Some(d) = spec.strip_prefix("sphere:") {
        let d = d.trim().parse().map_err(|_| unknown())?;
        return sphere(d, truncation);
    }
    for (prefix, op) in [("wedge(", wedge as fn(&_, &_) -> _), ("product(", product as fn(&_, &_) -> _)] {
        if let Some(inner) = spec.strip_prefix(prefix).and_then(|r| r.strip_suffix(')')) {
            let mut depth = 0usize;
            let mut split = None;
            for (pos, ch) in inner.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => depth = depth.checked_sub(1).ok_or_else(unknown)?,
                    ',' if depth == 0 => {
                        split = Some(pos);
                        break;
                    }
                    _ => {}
                }
            }
            let pos = split.ok_or_else(unknown)?;
            let left = builtin(&inner[..pos], truncation)?;
            let right = builtin(&inner[pos + 1..], truncation)?;
            return op(&left, &right);
        }
    }
    Err(unknown())
}
