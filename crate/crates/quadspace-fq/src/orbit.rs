use std::collections::{HashMap, VecDeque};

use ffpoly::{Fq, Mat};

use crate::enumerate::enumerate_isotropic_subspaces;
use crate::{BilinearSpace, Budget, FormKind, QsError, Subspace};

/// Reflection in the anisotropic vector `v`, acting on rows.
fn reflection(sp: &BilinearSpace, v: &[Fq]) -> Mat {
    let f = sp.f();
    let n = sp.dim();
    let c = f.div(f.from_int(2), sp.pair(v, v));
    let gv = sp.gram.mul_vec(f, v);
    let mut r = Mat::identity(n);
    for i in 0..n {
        for j in 0..n {
            let x = f.sub(r.get(i, j), f.mul(c, f.mul(gv[i], v[j])));
            r.set(i, j, x);
        }
    }
    r
}

/// Projective representatives (first nonzero coordinate 1) of the
/// anisotropic vectors.
fn anisotropic_points(sp: &BilinearSpace) -> Vec<Vec<Fq>> {
    let f = sp.f();
    let n = sp.dim();
    let q = f.q() as u64;
    let mut out = Vec::new();
    for lead in 0..n {
        let tail = n - lead - 1;
        for code in 0..q.pow(tail as u32) {
            let mut v = vec![0; n];
            v[lead] = 1;
            let mut c = code;
            for t in 0..tail {
                v[lead + 1 + t] = (c % q) as Fq;
                c /= q;
            }
            if sp.pair(&v, &v) != 0 {
                out.push(v);
            }
        }
    }
    out
}

/// Whether the group generated by products of two reflections acts
/// transitively on the `d`-dimensional totally isotropic subspaces.
pub fn so_orbit_transitive(sp: &BilinearSpace, d: usize, budget: &Budget) -> Result<bool, QsError> {
    if sp.kind != FormKind::Symmetric {
        return Err(QsError::InvalidKind);
    }
    if !sp.is_nondegenerate() {
        return Err(QsError::InvalidInput("degenerate form".into()));
    }
    let f = sp.f();
    let subs = enumerate_isotropic_subspaces(sp, d, budget)?;
    if subs.len() <= 1 {
        return Ok(true);
    }
    let pts = anisotropic_points(sp);
    let work = (subs.len() as u64) * (pts.len() as u64);
    if work > 50 * budget.max_subspaces as u64 {
        return Err(QsError::ResourceLimit(format!("orbit closure needs {work} steps")));
    }
    let r0 = reflection(sp, &pts[0]);
    let gens: Vec<Mat> = pts.iter().skip(1).map(|v| r0.mul(f, &reflection(sp, v))).collect();
    let index: HashMap<&Subspace, usize> = subs.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut seen = vec![false; subs.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    let mut reached = 1;
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let img = subs[i].image_rows(f, g);
            let j = *index.get(&img).expect("isometries preserve isotropy");
            if !seen[j] {
                seen[j] = true;
                reached += 1;
                queue.push_back(j);
            }
        }
    }
    Ok(reached == subs.len())
}
