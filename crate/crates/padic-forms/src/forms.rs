use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::PfError;

/// Diagonal quadratic form over `Q_p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PadicDiagForm {
    pub p: u32,
    #[serde(serialize_with = "ser_rats")]
    pub entries: Vec<BigRational>,
    /// Index of the distinguished vector `y₁`, if any.
    pub y1: Option<usize>,
}

fn ser_rats<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    let strs: Vec<String> = v.iter().map(|r| r.to_string()).collect();
    strs.serialize(s)
}

/// Square classes of `Q_p^×` for odd `p`, with `u` a fixed nonresidue unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DiscClass {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "u")]
    U,
    #[serde(rename = "p")]
    P,
    #[serde(rename = "up")]
    UP,
}

impl DiscClass {
    fn of(val_odd: bool, unit_square: bool) -> Self {
        match (val_odd, unit_square) {
            (false, true) => DiscClass::One,
            (false, false) => DiscClass::U,
            (true, true) => DiscClass::P,
            (true, false) => DiscClass::UP,
        }
    }
}

fn check_p(p: u32) -> Result<(), PfError> {
    if p == 2 {
        return Err(PfError::Unsupported("p = 2".into()));
    }
    if !ffpoly::is_prime(p as u64) {
        return Err(PfError::InvalidInput(format!("{p} is not an odd prime")));
    }
    Ok(())
}

fn vint(n: &BigInt, p: u32) -> (i64, BigInt) {
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while (&n % &pb).is_zero() {
        n /= &pb;
        v += 1;
    }
    (v, n)
}

/// `v_p(x)` for nonzero `x`.
pub fn valuation(x: &BigRational, p: u32) -> i64 {
    vint(x.numer(), p).0 - vint(x.denom(), p).0
}

/// Legendre symbol of an integer modulo an odd prime; 0 when divisible.
pub fn legendre(a: &BigInt, p: u32) -> i32 {
    let r = ((a % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
    let r = r.to_u64().unwrap();
    if r == 0 {
        return 0;
    }
    let e = (p as u64 - 1) / 2;
    let mut acc = 1u64;
    let mut b = r;
    let mut k = e;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * b % p as u64;
        }
        b = b * b % p as u64;
        k >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

/// Valuation and Legendre symbol of the unit part.
fn split(x: &BigRational, p: u32) -> (i64, i32) {
    let (vn, un) = vint(x.numer(), p);
    let (vd, ud) = vint(x.denom(), p);
    (vn - vd, legendre(&un, p) * legendre(&ud, p))
}

pub fn hilbert_symbol(a: &BigRational, b: &BigRational, p: u32) -> Result<i32, PfError> {
    check_p(p)?;
    if a.is_zero() || b.is_zero() {
        return Err(PfError::InvalidInput("Hilbert symbol of zero".into()));
    }
    let (alpha, la) = split(a, p);
    let (beta, lb) = split(b, p);
    let mut s = 1;
    if (alpha * beta).rem_euclid(2) == 1 && p % 4 == 3 {
        s = -s;
    }
    if beta.rem_euclid(2) == 1 {
        s *= la;
    }
    if alpha.rem_euclid(2) == 1 {
        s *= lb;
    }
    Ok(s)
}

/// Hasse invariant `∏_{i<j}(a_i,a_j)_p` and discriminant square class.
pub fn hasse_discriminant(form: &PadicDiagForm) -> Result<(i32, DiscClass), PfError> {
    let p = form.p;
    check_p(p)?;
    if form.entries.iter().any(|a| a.is_zero()) {
        return Err(PfError::InvalidInput("zero diagonal entry".into()));
    }
    let mut h = 1;
    for i in 0..form.entries.len() {
        for j in i + 1..form.entries.len() {
            h *= hilbert_symbol(&form.entries[i], &form.entries[j], p)?;
        }
    }
    let d = form.entries.iter().fold(BigRational::one(), |acc, a| acc * a);
    let (v, l) = split(&d, p);
    Ok((h, DiscClass::of(v.rem_euclid(2) == 1, l == 1)))
}

/// Positive quadratic nonresidues below `p`, ascending.
pub fn nonresidues(p: u32) -> Vec<i64> {
    (1..p as i64).filter(|&a| legendre(&BigInt::from(a), p) == -1).collect()
}

/// `L^Φ = diag(p, −ε²p, −1, ε², −1, ε²)` with `y₁` at index 0 and its
/// complement `L^{Φ,π}`, for `ε²` the smallest positive nonresidue.
pub fn standard_spaces(p: u32) -> Result<(PadicDiagForm, PadicDiagForm), PfError> {
    check_p(p)?;
    standard_spaces_with(p, nonresidues(p)[0])
}

pub fn standard_spaces_with(p: u32, eps2: i64) -> Result<(PadicDiagForm, PadicDiagForm), PfError> {
    check_p(p)?;
    if legendre(&BigInt::from(eps2), p) != -1 {
        return Err(PfError::InvalidInput(format!("{eps2} is not a nonresidue mod {p}")));
    }
    let r = |n: i64| BigRational::from_integer(BigInt::from(n));
    let pi = p as i64;
    let full = vec![r(pi), r(-eps2 * pi), r(-1), r(eps2), r(-1), r(eps2)];
    let lphi = PadicDiagForm { p, entries: full.clone(), y1: Some(0) };
    let lpi = PadicDiagForm { p, entries: full[1..].to_vec(), y1: None };
    Ok((lphi, lpi))
}

impl PadicDiagForm {
    pub fn new(p: u32, entries: Vec<BigRational>) -> Result<Self, PfError> {
        check_p(p)?;
        if entries.iter().any(|a| a.is_zero()) {
            return Err(PfError::InvalidInput("zero diagonal entry".into()));
        }
        Ok(PadicDiagForm { p, entries, y1: None })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn scaled(&self, c: &BigRational) -> PadicDiagForm {
        PadicDiagForm { p: self.p, entries: self.entries.iter().map(|a| a * c).collect(), y1: self.y1 }
    }

    /// Integer Gram matrix, if every entry is an integer.
    pub fn integer_gram(&self) -> Option<Vec<Vec<i64>>> {
        let n = self.dim();
        let mut g = vec![vec![0; n]; n];
        for (i, a) in self.entries.iter().enumerate() {
            if !a.is_integer() || a.abs() > BigRational::from_integer(BigInt::from(i64::MAX)) {
                return None;
            }
            g[i][i] = a.to_integer().to_i64()?;
        }
        Some(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn symbols() {
        assert_eq!(hilbert_symbol(&q(2, 1), &q(5, 7), 3).unwrap(), 1);
        assert_eq!(hilbert_symbol(&q(3, 1), &q(2, 1), 3).unwrap(), -1);
        assert_eq!(hilbert_symbol(&q(3, 1), &q(3, 1), 3).unwrap(), -1);
        assert_eq!(hilbert_symbol(&q(5, 1), &q(5, 1), 5).unwrap(), 1);
        assert_eq!(hilbert_symbol(&q(1, 3), &q(2, 1), 3).unwrap(), -1);
        assert!(matches!(hilbert_symbol(&q(1, 1), &q(1, 1), 2), Err(PfError::Unsupported(_))));
    }

    #[test]
    fn hyperbolic_plane() {
        let f = PadicDiagForm::new(7, vec![q(1, 1), q(-1, 1)]).unwrap();
        let (h, d) = hasse_discriminant(&f).unwrap();
        assert_eq!(h, 1);
        // −1 is a nonresidue mod 7.
        assert_eq!(d, DiscClass::U);
    }

    #[test]
    fn standard_p3() {
        let (lphi, lpi) = standard_spaces(3).unwrap();
        let want: Vec<BigRational> = [3, -6, -1, 2, -1, 2].iter().map(|&n| q(n, 1)).collect();
        assert_eq!(lphi.entries, want);
        assert_eq!(lphi.y1, Some(0));
        assert_eq!(lpi.dim(), 5);
    }
}
