use std::sync::Arc;

use ffpoly::{factor, Fq, Gf, Mat};
use quadspace_fq::{invariant_subspaces, BilinearSpace, Subspace};
use serde::Serialize;

use crate::{GgError, GgpInput, OrthRealization};

/// Fixed points of `ḡ` on `{L Lagrangian : rk(L ∩ Φ̄L) = m}` over the
/// splitting field of `P`.
#[derive(Debug, Clone)]
pub struct DlOracle {
    pub field: Arc<Gf>,
    pub points: Vec<Subspace>,
}

impl DlOracle {
    pub fn count(&self) -> usize {
        self.points.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointMultiplicity {
    pub lambda: Fq,
    pub c: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultOracle {
    pub per_point: Vec<PointMultiplicity>,
    pub total: u64,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn splitting_degree(input: &GgpInput) -> Result<u32, GgError> {
    let fz = factor(&input.f, &input.poly)?;
    Ok(fz.factors.iter().fold(1, |acc, (g, _)| acc / gcd(acc, g.deg()) * g.deg()) as u32)
}

pub fn oracle_dl_fixed_points(input: &GgpInput, real: &OrthRealization) -> Result<DlOracle, GgError> {
    let d = splitting_degree(input)?;
    if d > 6 {
        return Err(GgError::ResourceLimit(format!("splitting field of degree {d}")));
    }
    let big = Arc::new(Gf::new(input.p(), d)?);
    let n = real.op.rows;
    let m = n / 2 - 1;
    let sp = BilinearSpace::symmetric(big.clone(), real.gram.clone())?;
    let points = invariant_subspaces(&big, &real.op, Some(m + 1))?
        .into_iter()
        .filter(|l| sp.is_totally_isotropic(l) && l.intersect(&big, &l.frob(&big)).dim() == m)
        .collect();
    Ok(DlOracle { field: big, points })
}

fn shifted(f: &Gf, op: &Mat, lambda: Fq) -> Mat {
    let mut a = op.clone();
    for i in 0..a.rows {
        a.set(i, i, f.sub(a.get(i, i), lambda));
    }
    a
}

/// For each fixed point `L₀`: the eigenvalue `λ` of `ḡ` on `Φ̄L₀/(L₀∩Φ̄L₀)`
/// and the size of the Jordan block of `ḡ|Φ̄L₀` at `λ`.
pub fn oracle_multiplicity(input: &GgpInput, real: &OrthRealization, dl: &DlOracle) -> Result<MultOracle, GgError> {
    let f = &*dl.field;
    let roots: Vec<Fq> = f.elements().filter(|&a| input.poly.eval(f, a) == 0).collect();
    let mut per_point = Vec::new();
    for l in &dl.points {
        let phi = l.frob(f);
        let lp = l.intersect(f, &phi);
        let lam: Vec<Fq> = roots
            .iter()
            .copied()
            .filter(|&lam| {
                let a = shifted(f, &real.op, lam);
                phi.basis.row_vecs().iter().all(|x| lp.contains_vec(f, &a.mul_vec(f, x)))
            })
            .collect();
        let [lambda] = lam[..] else {
            return Err(GgError::InternalInvariantViolation(format!(
                "{} eigenvalues on a one-dimensional quotient",
                lam.len()
            )));
        };
        let a = shifted(f, &real.op, lambda);
        let mut pw = Mat::identity(a.rows);
        let mut prev = 0;
        let mut c = 0;
        loop {
            pw = pw.mul(f, &a);
            let w = phi.intersect(f, &Subspace { basis: pw.kernel(f) }).dim();
            if w == prev {
                break;
            }
            prev = w;
            c += 1;
        }
        if input.p() <= c {
            return Err(GgError::Unsupported(format!("p = {} ≤ c = {c}", input.p())));
        }
        per_point.push(PointMultiplicity { lambda, c });
    }
    let total = per_point.iter().map(|x| x.c as u64).sum();
    Ok(MultOracle { per_point, total })
}
