use ffpoly::{factor, Gf, Mat, Poly};
use serde::{Deserialize, Serialize};

use crate::{QsError, Subspace};

/// Kernel chain `ker Q(M)^a`, `a = 0..=m`, of one primary component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimaryComponent {
    pub factor: Poly,
    pub multiplicity: u32,
    pub chain: Vec<Subspace>,
}

/// Primary chains of a cyclic operator acting on column vectors.
pub fn primary_chains(f: &Gf, m: &Mat) -> Result<Vec<PrimaryComponent>, QsError> {
    if !m.is_square() || m.rows == 0 {
        return Err(QsError::InvalidInput("operator must be a nonempty square matrix".into()));
    }
    let n = m.rows;
    let cp = m.charpoly(f);
    if m.minpoly(f).deg() != n {
        return Err(QsError::UnsupportedInput(
            "operator is not cyclic (minimal polynomial is a proper divisor of the characteristic polynomial)".into(),
        ));
    }
    let fz = factor(f, &cp)?;
    let mut out = Vec::new();
    for (q, mult) in fz.factors {
        let qm = m.eval_poly(f, &q);
        let mut pw = Mat::identity(n);
        let mut chain = vec![Subspace::zero(n)];
        for a in 1..=mult {
            pw = pw.mul(f, &qm);
            let k = Subspace { basis: pw.kernel(f) };
            debug_assert_eq!(k.dim(), a as usize * q.deg());
            chain.push(k);
        }
        out.push(PrimaryComponent { factor: q, multiplicity: mult, chain });
    }
    Ok(out)
}

/// All `M`-invariant subspaces (of dimension `d` if given), sorted.
pub fn invariant_subspaces(f: &Gf, m: &Mat, d: Option<usize>) -> Result<Vec<Subspace>, QsError> {
    let comps = primary_chains(f, m)?;
    let n = m.rows;
    let mut out = Vec::new();
    let mut choice = vec![0u32; comps.len()];
    loop {
        let dim: usize = comps.iter().zip(&choice).map(|(c, &a)| a as usize * c.factor.deg()).sum();
        if d.is_none_or(|d| d == dim) {
            let mut s = Subspace::zero(n);
            for (c, &a) in comps.iter().zip(&choice) {
                s = s.sum(f, &c.chain[a as usize]);
            }
            out.push(s);
        }
        let mut i = 0;
        loop {
            if i == comps.len() {
                out.sort();
                return Ok(out);
            }
            choice[i] += 1;
            if choice[i] <= comps[i].multiplicity {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinct_eigenvalues() {
        let f = Gf::prime(3).unwrap();
        let p = Poly::from_ints(&f, &[-1, 1]).mul(&f, &Poly::from_ints(&f, &[-2, 1]));
        let c = Mat::companion(&f, &p);
        assert_eq!(invariant_subspaces(&f, &c, Some(1)).unwrap().len(), 2);
        assert_eq!(invariant_subspaces(&f, &c, None).unwrap().len(), 4);
    }

    #[test]
    fn single_primary_chain() {
        let f = Gf::prime(3).unwrap();
        let q = Poly::from_ints(&f, &[1, 0, 1]);
        let c = Mat::companion(&f, &q.pow(&f, 3));
        let all = invariant_subspaces(&f, &c, None).unwrap();
        let mut dims: Vec<usize> = all.iter().map(|s| s.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![0, 2, 4, 6]);
        assert!(invariant_subspaces(&f, &c, Some(3)).unwrap().is_empty());
    }

    #[test]
    fn non_cyclic_rejected() {
        let f = Gf::prime(3).unwrap();
        assert!(matches!(
            invariant_subspaces(&f, &Mat::identity(2), None),
            Err(QsError::UnsupportedInput(_))
        ));
    }
}
