//! Factorization by trial division and the split of irreducible factors
//! into self-reciprocal ones and reciprocal pairs.

use serde::{Deserialize, Serialize};

use crate::field::Gf;
use crate::poly::{is_irreducible, monic_of_degree, reciprocal, Poly};
use crate::FfError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub input: Poly,
    /// Sorted by the polynomial order; multiplicities ≥ 1.
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn product(&self, f: &Gf) -> Poly {
        self.factors
            .iter()
            .fold(Poly::one(), |acc, (g, m)| acc.mul(f, &g.pow(f, *m)))
    }
    pub fn multiplicity(&self, g: &Poly) -> u32 {
        self.factors
            .iter()
            .find(|(h, _)| h == g)
            .map_or(0, |(_, m)| *m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NsrClass {
    /// The smaller of the pair in the polynomial order.
    pub rep: Poly,
    pub partner: Poly,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrPartition {
    pub sr: Vec<(Poly, u32)>,
    pub nsr_classes: Vec<NsrClass>,
}

/// Monic irreducibles of degree `d`, ascending.
pub fn enumerate_irreducibles(f: &Gf, d: usize) -> Result<Vec<Poly>, FfError> {
    if !(1..=6).contains(&d) {
        return Err(FfError::InvalidInput(format!("degree {d} outside 1..=6")));
    }
    if (f.q() as u64).checked_pow(d as u32).is_none_or(|n| n > 1 << 24) {
        return Err(FfError::ResourceLimit(format!("{}^{d} candidates", f.q())));
    }
    Ok(monic_of_degree(f, d).filter(|g| is_irreducible(f, g)).collect())
}

fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut r = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            r = -r;
        }
        d += 1;
    }
    if n > 1 {
        r = -r;
    }
    r
}

/// Number of monic irreducibles of degree `d` over `F_q`.
pub fn necklace_count(q: u64, d: u64) -> u64 {
    let s: i128 = (1..=d)
        .filter(|e| d.is_multiple_of(*e))
        .map(|e| mobius(e) as i128 * (q as i128).pow((d / e) as u32))
        .sum();
    (s / d as i128) as u64
}

/// Complete factorization of a polynomial of degree ≥ 1.
///
/// Linear factors are found by evaluation; higher degrees by dividing out
/// every monic candidate of each degree in increasing order, so that any
/// candidate that divides is irreducible.
pub fn factor(f: &Gf, poly: &Poly) -> Result<Factorization, FfError> {
    if poly.degree().is_none_or(|d| d == 0) {
        return Err(FfError::InvalidInput("factor needs degree ≥ 1".into()));
    }
    let input = poly.clone();
    let mut rest = poly.monic(f);
    let mut factors = Vec::new();
    let take = |rest: &mut Poly, g: Poly, factors: &mut Vec<(Poly, u32)>| {
        let mut m = 0;
        while let Some(q) = rest.div_exact(f, &g) {
            *rest = q;
            m += 1;
        }
        if m > 0 {
            factors.push((g, m));
        }
    };
    for a in f.elements() {
        if rest.deg() < 1 {
            break;
        }
        if rest.eval(f, a) == 0 {
            take(&mut rest, Poly::linear(f, a), &mut factors);
        }
    }
    let mut d = 2;
    while 2 * d <= rest.deg() {
        if (f.q() as u64).checked_pow(d as u32).is_none_or(|n| n > 1 << 24) {
            return Err(FfError::ResourceLimit(format!(
                "trial division by degree-{d} polynomials over F_{}",
                f.q()
            )));
        }
        for g in monic_of_degree(f, d) {
            if 2 * d > rest.deg() {
                break;
            }
            if g.divides(f, &rest) {
                take(&mut rest, g, &mut factors);
            }
        }
        d += 1;
    }
    if rest.deg() >= 1 {
        factors.push((rest, 1));
    }
    factors.sort();
    let mut fz = Factorization { input, factors };
    // Non-monic inputs keep their leading coefficient out of the factor list.
    if !fz.input.is_monic() {
        fz.input = fz.input.monic(f);
    }
    Ok(fz)
}

pub fn sr_partition(f: &Gf, fz: &Factorization) -> Result<SrPartition, FfError> {
    if fz.input.constant() == 0 {
        return Err(FfError::InvalidInput("zero constant term".into()));
    }
    if reciprocal(f, &fz.input)? != fz.input {
        return Err(FfError::InvalidInput("input is not self-reciprocal".into()));
    }
    let mut sr = Vec::new();
    let mut nsr_classes: Vec<NsrClass> = Vec::new();
    for (g, m) in &fz.factors {
        let r = reciprocal(f, g)?;
        if &r == g {
            sr.push((g.clone(), *m));
            continue;
        }
        let mr = fz.multiplicity(&r);
        if mr != *m {
            return Err(FfError::InvalidInput(format!(
                "factor {} has multiplicity {m} but its reciprocal has {mr}",
                g.pretty()
            )));
        }
        if g < &r {
            nsr_classes.push(NsrClass { rep: g.clone(), partner: r, multiplicity: *m });
        }
    }
    nsr_classes.sort_by(|a, b| a.rep.cmp(&b.rep));
    Ok(SrPartition { sr, nsr_classes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3(c: &[i64]) -> Poly {
        Poly::from_ints(&Gf::prime(3).unwrap(), c)
    }

    #[test]
    fn factor_examples() {
        let f = Gf::prime(3).unwrap();
        let q = p3(&[1, 0, 1]);
        let fz = factor(&f, &q.pow(&f, 3)).unwrap();
        assert_eq!(fz.factors, vec![(q, 3)]);
        let fz = factor(&f, &p3(&[-1, 0, 1])).unwrap();
        assert_eq!(fz.factors, vec![(p3(&[1, 1]), 1), (p3(&[2, 1]), 1)]);
        let r = p3(&[1, 2, 0, 1]);
        assert_eq!(factor(&f, &r).unwrap().factors, vec![(r, 1)]);
    }

    #[test]
    fn partition_examples() {
        let f = Gf::prime(3).unwrap();
        let a = p3(&[1, 0, 1]);
        let b = p3(&[2, 1, 1]);
        let c = p3(&[2, 2, 1]);
        let prod = a.mul(&f, &b).mul(&f, &c);
        let part = sr_partition(&f, &factor(&f, &prod).unwrap()).unwrap();
        assert_eq!(part.sr, vec![(a.clone(), 1)]);
        assert_eq!(part.nsr_classes, vec![NsrClass { rep: b.clone(), partner: c, multiplicity: 1 }]);
        let sq = p3(&[1, 1]).pow(&f, 2);
        let part = sr_partition(&f, &factor(&f, &sq).unwrap()).unwrap();
        assert_eq!(part.sr, vec![(p3(&[1, 1]), 2)]);
        assert!(sr_partition(&f, &factor(&f, &b).unwrap()).is_err());
    }

    #[test]
    fn small_irreducible_counts() {
        let f = Gf::prime(3).unwrap();
        assert_eq!(enumerate_irreducibles(&f, 1).unwrap(), vec![p3(&[0, 1]), p3(&[1, 1]), p3(&[2, 1])]);
        assert_eq!(enumerate_irreducibles(&f, 2).unwrap().len(), 3);
        assert_eq!(enumerate_irreducibles(&f, 3).unwrap().len(), 8);
        assert!(enumerate_irreducibles(&f, 7).is_err());
    }
}
