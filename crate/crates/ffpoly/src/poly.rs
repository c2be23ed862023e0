//! Dense univariate polynomials over a [`Gf`].

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::field::{Fq, Gf};
use crate::FfError;

/// Coefficients from the constant term upward, no trailing zeros.
///
/// Ordering is by degree, then by the coefficient tuple read from the
/// constant term upward.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly {
    c: Vec<Fq>,
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c.len().cmp(&other.c.len()).then_with(|| self.c.cmp(&other.c))
    }
}
impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Poly {
    pub fn new(mut c: Vec<Fq>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { c }
    }
    pub fn zero() -> Self {
        Poly { c: vec![] }
    }
    pub fn one() -> Self {
        Poly { c: vec![1] }
    }
    /// `T - a`.
    pub fn linear(f: &Gf, a: Fq) -> Self {
        Poly::new(vec![f.neg(a), 1])
    }
    /// The monomial `T^n`.
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![0; n + 1];
        c[n] = 1;
        Poly { c }
    }
    /// Reduce signed integer coefficients into the prime field of `f`.
    pub fn from_ints(f: &Gf, c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| f.from_int(x)).collect())
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.c
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    /// Degree; the zero polynomial has degree `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    /// Degree with zero mapped to 0; for callers that have excluded zero.
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }
    pub fn lead(&self) -> Fq {
        *self.c.last().unwrap_or(&0)
    }
    pub fn coeff(&self, i: usize) -> Fq {
        self.c.get(i).copied().unwrap_or(0)
    }
    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }
    pub fn constant(&self) -> Fq {
        self.coeff(0)
    }

    pub fn add(&self, f: &Gf, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect())
    }
    pub fn sub(&self, f: &Gf, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect())
    }
    pub fn scale(&self, f: &Gf, s: Fq) -> Poly {
        Poly::new(self.c.iter().map(|&x| f.mul(x, s)).collect())
    }
    pub fn mul(&self, f: &Gf, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }
    pub fn pow(&self, f: &Gf, e: u32) -> Poly {
        let mut r = Poly::one();
        for _ in 0..e {
            r = r.mul(f, self);
        }
        r
    }
    pub fn monic(&self, f: &Gf) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f, f.inv(self.lead()))
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, f: &Gf, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.c.len() - 1;
        if self.c.len() < d.c.len() {
            return (Poly::zero(), self.clone());
        }
        let inv = f.inv(d.lead());
        let mut r = self.c.clone();
        let mut q = vec![0; self.c.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(r[i], inv);
            if c == 0 {
                continue;
            }
            q[i - dd] = c;
            for j in 0..=dd {
                r[i - dd + j] = f.sub(r[i - dd + j], f.mul(c, d.c[j]));
            }
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }
    pub fn rem(&self, f: &Gf, d: &Poly) -> Poly {
        self.divrem(f, d).1
    }
    /// Exact quotient when `d` divides `self`.
    pub fn div_exact(&self, f: &Gf, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(f, d);
        r.is_zero().then_some(q)
    }
    pub fn divides(&self, f: &Gf, o: &Poly) -> bool {
        o.rem(f, self).is_zero()
    }

    pub fn gcd(&self, f: &Gf, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn eval(&self, f: &Gf, x: Fq) -> Fq {
        self.c.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self^e mod m`.
    pub fn powmod(&self, f: &Gf, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(f, m);
        let mut r = Poly::one().rem(f, m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(f, &base).rem(f, m);
            }
            base = base.mul(f, &base).rem(f, m);
            e >>= 1;
        }
        r
    }

    pub fn derivative(&self, f: &Gf) -> Poly {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
                .collect(),
        )
    }

    /// Apply the Frobenius to every coefficient.
    pub fn frob(&self, f: &Gf) -> Poly {
        Poly::new(self.c.iter().map(|&c| f.frob(c)).collect())
    }

    /// Re-read the coefficients (all in the prime field) inside another
    /// field of the same characteristic.
    pub fn lift_to(&self, big: &Gf) -> Poly {
        debug_assert!(self.c.iter().all(|&c| c < big.p()));
        self.clone()
    }
    pub fn in_prime_field(&self, f: &Gf) -> bool {
        self.c.iter().all(|&c| f.in_prime_field(c))
    }

    /// Human-readable form such as `T^2+2T+1`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.c.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}T"),
                _ => format!("{coef}T^{i}"),
            });
        }
        terms.join("+")
    }
}

/// Monic normalization of `T^{deg R} R(1/T)`.
pub fn reciprocal(f: &Gf, r: &Poly) -> Result<Poly, FfError> {
    if r.is_zero() || r.constant() == 0 {
        return Err(FfError::InvalidInput(
            "reciprocal needs a nonzero constant term".into(),
        ));
    }
    let mut c = r.coeffs().to_vec();
    c.reverse();
    Ok(Poly::new(c).monic(f))
}

pub fn is_self_reciprocal(f: &Gf, r: &Poly) -> bool {
    r.is_monic() && reciprocal(f, r).is_ok_and(|s| &s == r)
}

/// All monic polynomials of degree `d` in ascending order.
pub fn monic_of_degree(f: &Gf, d: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = f.q() as u64;
    let count = q.pow(d as u32);
    (0..count).map(move |mut n| {
        let mut c = vec![0; d + 1];
        for i in (0..d).rev() {
            c[i] = (n % q) as Fq;
            n /= q;
        }
        c[d] = 1;
        Poly::new(c)
    })
}

/// Ben-Or test: no irreducible factor of degree ≤ deg/2.
pub fn is_irreducible(f: &Gf, g: &Poly) -> bool {
    let Some(d) = g.degree() else { return false };
    if d == 0 {
        return false;
    }
    let g = g.monic(f);
    let t = Poly::monomial(1);
    let mut x = t.clone();
    for _ in 1..=d / 2 {
        x = x.powmod(f, f.q() as u64, &g);
        if g.gcd(f, &x.sub(f, &t)).deg() > 0 {
            return false;
        }
    }
    true
}
