use ffpoly::{Gf, Mat};
use serde::Serialize;

use crate::{GgError, GgpInput};

/// A cyclic operator with characteristic polynomial `P` together with a
/// nondegenerate symmetric form it preserves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrthRealization {
    pub p: u32,
    #[serde(serialize_with = "ser_mat")]
    pub gram: Mat,
    #[serde(serialize_with = "ser_mat")]
    pub op: Mat,
    /// Dimension of the space of invariant symmetric forms.
    pub solution_dim: usize,
    pub certified: bool,
}

fn ser_mat<S: serde::Serializer>(m: &Mat, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(m.row_vecs())
}

const MAX_SCAN: u64 = 1 << 20;

/// Basis of `{B = Bᵀ : Cᵀ B C = B}`.
fn invariant_forms(f: &Gf, c: &Mat) -> Vec<Mat> {
    let n = c.rows;
    let idx: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut eqs = Mat::zeros(n * n, idx.len());
    for r in 0..n {
        for s in 0..n {
            let row = r * n + s;
            for (u, &(i, j)) in idx.iter().enumerate() {
                // coefficient of b_ij in (CᵀBC − B)_{rs}
                let mut v = f.mul(c.get(i, r), c.get(j, s));
                if i != j {
                    v = f.add(v, f.mul(c.get(j, r), c.get(i, s)));
                }
                if (i, j) == (r.min(s), r.max(s)) {
                    v = f.sub(v, 1);
                }
                eqs.set(row, u, v);
            }
        }
    }
    let ker = eqs.kernel(f);
    (0..ker.rows)
        .map(|k| {
            let mut b = Mat::zeros(n, n);
            for (u, &(i, j)) in idx.iter().enumerate() {
                b.set(i, j, ker.get(k, u));
                b.set(j, i, ker.get(k, u));
            }
            b
        })
        .collect()
}

fn certify(f: &Gf, op: &Mat, b: &Mat) -> bool {
    op.transpose().mul(f, b).mul(f, op) == *b && b.det(f) != 0
}

/// Nondegenerate invariant forms found by scanning combinations of the
/// solution basis; at most one per square class of the determinant.
pub fn realize_orthogonal_classes(input: &GgpInput) -> Result<Vec<OrthRealization>, GgError> {
    let f = &*input.f;
    let op = Mat::companion(f, &input.poly);
    let basis = invariant_forms(f, &op);
    let s = basis.len();
    let p = f.q() as u64;
    let total = p.checked_pow(s as u32).filter(|&t| t <= MAX_SCAN).ok_or_else(|| {
        GgError::ResourceLimit(format!("{s}-dimensional space of invariant forms"))
    })?;
    let n = op.rows;
    let mut found: Vec<(bool, OrthRealization)> = Vec::new();
    for t in 1..total {
        let mut b = Mat::zeros(n, n);
        let mut rest = t;
        for bm in &basis {
            let cf = (rest % p) as u32;
            rest /= p;
            if cf != 0 {
                b = b.add(f, &bm.scale(f, cf));
            }
        }
        let d = b.det(f);
        if d == 0 {
            continue;
        }
        let class = f.is_square(d);
        if found.iter().any(|(c, _)| *c == class) {
            continue;
        }
        let certified = certify(f, &op, &b);
        found.push((class, OrthRealization { p: f.p(), gram: b, op: op.clone(), solution_dim: s, certified }));
        if found.len() == 2 {
            break;
        }
    }
    if found.is_empty() {
        return Err(GgError::RealizationFailure { solution_dim: s });
    }
    Ok(found.into_iter().map(|(_, r)| r).collect())
}

/// The first nondegenerate invariant form in scan order.
pub fn realize_orthogonal(input: &GgpInput) -> Result<OrthRealization, GgError> {
    Ok(realize_orthogonal_classes(input)?.remove(0))
}
