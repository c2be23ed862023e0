use ffpoly::{Fq, Gf, Mat};

use crate::{BilinearSpace, Budget, FormKind, QsError, Subspace};

pub(crate) fn combinations(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < d - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, d, &mut Vec::new(), &mut out);
    out
}

/// Solve `A x = b`; returns a particular solution and a kernel basis.
fn solve_affine(f: &Gf, a: &Mat, b: &[Fq]) -> Option<(Vec<Fq>, Vec<Vec<Fq>>)> {
    let nv = a.cols;
    if a.rows == 0 {
        let kernel = (0..nv)
            .map(|i| {
                let mut e = vec![0; nv];
                e[i] = 1;
                e
            })
            .collect();
        return Some((vec![0; nv], kernel));
    }
    let mut aug = Mat::zeros(a.rows, nv + 1);
    for i in 0..a.rows {
        for j in 0..nv {
            aug.set(i, j, a.get(i, j));
        }
        aug.set(i, nv, b[i]);
    }
    let (r, piv) = aug.rref(f);
    if piv.contains(&nv) {
        return None;
    }
    let mut x0 = vec![0; nv];
    for (i, &pc) in piv.iter().enumerate() {
        x0[pc] = r.get(i, nv);
    }
    let free: Vec<usize> = (0..nv).filter(|c| !piv.contains(c)).collect();
    let mut kernel = Vec::new();
    for &fc in &free {
        let mut v = vec![0; nv];
        v[fc] = 1;
        for (i, &pc) in piv.iter().enumerate() {
            v[pc] = f.neg(r.get(i, fc));
        }
        kernel.push(v);
    }
    Some((x0, kernel))
}

/// Calls `visit` on the RREF basis of every totally isotropic subspace of
/// dimension `d`, in ascending pivot-set order. Stops early when `visit`
/// returns `false`.
pub fn enumerate_subspaces_with<F>(v: &BilinearSpace, d: usize, budget: &Budget, mut visit: F) -> Result<(), QsError>
where
    F: FnMut(&Mat) -> bool,
{
    budget.check_field(v.f())?;
    let n = v.dim();
    if d > n {
        return Ok(());
    }
    if d == 0 {
        visit(&Mat::zeros(0, n));
        return Ok(());
    }
    let f = v.f();
    let symmetric = v.kind == FormKind::Symmetric;
    for pivots in combinations(n, d) {
        let mut rows: Vec<Vec<Fq>> = Vec::with_capacity(d);
        let mut go_on = true;
        rec_rows(v, f, &pivots, &mut rows, symmetric, &mut |m| {
            go_on = visit(m);
            go_on
        });
        if !go_on {
            break;
        }
    }
    Ok(())
}

fn rec_rows(
    v: &BilinearSpace,
    f: &Gf,
    pivots: &[usize],
    rows: &mut Vec<Vec<Fq>>,
    symmetric: bool,
    visit: &mut dyn FnMut(&Mat) -> bool,
) -> bool {
    let i = rows.len();
    if i == pivots.len() {
        return visit(&Mat::from_rows(rows));
    }
    let n = v.dim();
    let c = pivots[i];
    let free: Vec<usize> = (c + 1..n).filter(|t| !pivots.contains(t)).collect();
    // Orthogonality to the earlier rows is linear in the free entries.
    let gr: Vec<Vec<Fq>> = rows.iter().map(|r| v.gram.mul_vec(f, r)).collect();
    let mut a = Mat::zeros(i, free.len());
    let mut b = vec![0; i];
    for (j, g) in gr.iter().enumerate() {
        for (t, &col) in free.iter().enumerate() {
            a.set(j, t, g[col]);
        }
        b[j] = f.neg(g[c]);
    }
    let Some((x0, kernel)) = solve_affine(f, &a, &b) else { return true };
    let q = f.q() as u64;
    let total = q.pow(kernel.len() as u32);
    let mut coef = vec![0u32; kernel.len()];
    for _ in 0..total {
        let mut x = x0.clone();
        for (cf, kv) in coef.iter().zip(&kernel) {
            if *cf == 0 {
                continue;
            }
            for (xi, &ki) in x.iter_mut().zip(kv) {
                *xi = f.add(*xi, f.mul(*cf, ki));
            }
        }
        let mut row = vec![0; n];
        row[c] = 1;
        for (t, &col) in free.iter().enumerate() {
            row[col] = x[t];
        }
        if !symmetric || v.pair(&row, &row) == 0 {
            rows.push(row);
            let cont = rec_rows(v, f, pivots, rows, symmetric, visit);
            rows.pop();
            if !cont {
                return false;
            }
        }
        // Next coefficient vector in base q.
        for cf in coef.iter_mut() {
            *cf += 1;
            if *cf < f.q() {
                break;
            }
            *cf = 0;
        }
    }
    true
}

/// All totally isotropic subspaces of dimension `d`, sorted.
pub fn enumerate_isotropic_subspaces(v: &BilinearSpace, d: usize, budget: &Budget) -> Result<Vec<Subspace>, QsError> {
    let mut out = Vec::new();
    let mut over = false;
    enumerate_subspaces_with(v, d, budget, |m| {
        if out.len() >= budget.max_subspaces {
            over = true;
            return false;
        }
        out.push(Subspace { basis: m.clone() });
        true
    })?;
    if over {
        return Err(QsError::ResourceLimit(format!(
            "more than {} subspaces",
            budget.max_subspaces
        )));
    }
    out.sort();
    Ok(out)
}

pub fn count_isotropic_subspaces(v: &BilinearSpace, d: usize, budget: &Budget) -> Result<u64, QsError> {
    let mut n = 0u64;
    enumerate_subspaces_with(v, d, budget, |_| {
        n += 1;
        true
    })?;
    Ok(n)
}

/// Number of Lagrangians `W′` with `W ∩ W′ = 0` in a 4-dimensional split
/// quadratic space.
pub fn complementary_lagrangians(v: &BilinearSpace, w: &Subspace, budget: &Budget) -> Result<u64, QsError> {
    if v.kind != FormKind::Symmetric {
        return Err(QsError::InvalidKind);
    }
    if v.dim() != 4 || !v.is_nondegenerate() {
        return Err(QsError::InvalidInput("ambient must be a nondegenerate 4-dim space".into()));
    }
    if w.dim() != 2 || w.ambient_dim() != 4 || !v.is_totally_isotropic(w) {
        return Err(QsError::InvalidInput("W is not a Lagrangian".into()));
    }
    let f = v.f();
    let mut n = 0;
    enumerate_subspaces_with(v, 2, budget, |m| {
        let s = Subspace { basis: m.clone() };
        if s.intersect(f, w).dim() == 0 {
            n += 1;
        }
        true
    })?;
    Ok(n)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(4, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn hyperbolic_plane_lines() {
        let f = Arc::new(Gf::prime(3).unwrap());
        let h = BilinearSpace::hyperbolic_sum(f.clone(), 1, &[]);
        let lines = enumerate_isotropic_subspaces(&h, 1, &Budget::default()).unwrap();
        let want = vec![
            Subspace { basis: Mat::from_rows(&[vec![0, 1]]) },
            Subspace { basis: Mat::from_rows(&[vec![1, 0]]) },
        ];
        assert_eq!(lines, want);
    }
}
