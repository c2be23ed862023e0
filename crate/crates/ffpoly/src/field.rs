//! Finite fields `F_q`, `q = p^k`, with log/antilog tables.
//!
//! Elements are plain `u32` codes: the base-`p` digits of a code are the
//! coefficients (constant term first) of the representing polynomial modulo
//! the defining modulus. Codes below `p` are exactly the prime field.

use serde::{Deserialize, Serialize};

use crate::FfError;

/// Element of some [`Gf`]; meaningless without its field.
pub type Fq = u32;

/// Upper bound on the field size accepted by [`Gf::new`].
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldDesc {
    pub p: u32,
    pub k: u32,
    /// Monic, constant term first, length `k + 1`.
    pub modulus: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Debug)]
pub struct Gf {
    desc: FieldDesc,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_tab: Option<Vec<u32>>,
    neg_tab: Vec<u32>,
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.desc == other.desc
    }
}
impl Eq for Gf {}

// Digit-level arithmetic used while the tables do not exist yet.
fn digits(mut a: u32, p: u32, k: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(k as usize);
    for _ in 0..k {
        d.push(a % p);
        a /= p;
    }
    d
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

fn slow_mul(a: u32, b: u32, p: u32, modulus: &[u32]) -> u32 {
    let k = modulus.len() - 1;
    let da = digits(a, p, k as u32);
    let db = digits(b, p, k as u32);
    let mut prod = vec![0u64; 2 * k.max(1)];
    for i in 0..k {
        for j in 0..k {
            prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p as u64;
        }
    }
    for i in (k..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..k {
            let sub = c * modulus[j] as u64 % p as u64;
            prod[i - k + j] = (prod[i - k + j] + p as u64 - sub) % p as u64;
        }
    }
    let out: Vec<u32> = prod[..k].iter().map(|&x| x as u32).collect();
    undigits(&out, p)
}

// Exhaustive divisor search over F_p: no monic factor of degree 1..=k/2.
fn prime_poly_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    if k <= 1 {
        return k == 1;
    }
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g: Vec<u32> = digits(code as u32, p, d as u32);
            g.push(1);
            if prime_poly_divides(&g, f, p) {
                return false;
            }
        }
    }
    true
}

fn prime_poly_divides(g: &[u32], f: &[u32], p: u32) -> bool {
    let mut r: Vec<u64> = f.iter().map(|&x| x as u64).collect();
    let dg = g.len() - 1;
    let p = p as u64;
    for i in (dg..r.len()).rev() {
        let c = r[i] % p;
        if c == 0 {
            continue;
        }
        for j in 0..=dg {
            r[i - dg + j] = (r[i - dg + j] + p * p - c * g[j] as u64) % p;
        }
    }
    r[..dg].iter().all(|&x| x % p == 0)
}

impl FieldDesc {
    /// `F_{p^k}` with the smallest monic irreducible modulus in the
    /// (degree, coefficients low-to-high) order.
    pub fn new(p: u32, k: u32) -> Result<Self, FfError> {
        if p == 2 || !is_prime(p as u64) {
            return Err(FfError::InvalidInput(format!("{p} is not an odd prime")));
        }
        if k == 0 {
            return Err(FfError::InvalidInput("extension degree must be ≥ 1".into()));
        }
        if (p as u64).checked_pow(k).is_none_or(|q| q > MAX_FIELD_SIZE) {
            return Err(FfError::ResourceLimit(format!("field of size {p}^{k}")));
        }
        let count = (p as u64).pow(k);
        for n in 0..count {
            // c0 is the most significant position of the order.
            let mut f = vec![0u32; k as usize + 1];
            let mut m = n;
            for i in (0..k as usize).rev() {
                f[i] = (m % p as u64) as u32;
                m /= p as u64;
            }
            f[k as usize] = 1;
            if prime_poly_irreducible(&f, p) {
                return Ok(FieldDesc { p, k, modulus: f });
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self, FfError> {
        if p == 2 || !is_prime(p as u64) {
            return Err(FfError::InvalidInput(format!("{p} is not an odd prime")));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(FfError::InvalidInput("modulus must be monic with coefficients in [0,p)".into()));
        }
        if !prime_poly_irreducible(&modulus, p) {
            return Err(FfError::InvalidInput("modulus is reducible".into()));
        }
        Ok(FieldDesc { p, k: modulus.len() as u32 - 1, modulus })
    }
}

impl Gf {
    pub fn new(p: u32, k: u32) -> Result<Self, FfError> {
        Ok(Self::from_desc(FieldDesc::new(p, k)?))
    }

    pub fn prime(p: u32) -> Result<Self, FfError> {
        Self::new(p, 1)
    }

    pub fn from_desc(desc: FieldDesc) -> Self {
        let p = desc.p;
        let k = desc.k;
        let q = p.pow(k);
        let order = q - 1;
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; q as usize];
        'search: for g in 1..q {
            let mut x = 1u32;
            for i in 0..order {
                exp[i as usize] = x;
                x = slow_mul(x, g, p, &desc.modulus);
                if x == 1 && i + 1 < order {
                    continue 'search;
                }
            }
            break;
        }
        for i in 0..order as usize {
            exp[i + order as usize] = exp[i];
            log[exp[i] as usize] = i as u32;
        }
        let neg_tab: Vec<u32> = (0..q)
            .map(|a| undigits(&digits(a, p, k).iter().map(|&d| (p - d) % p).collect::<Vec<_>>(), p))
            .collect();
        let mut gf = Gf { desc, q, exp, log, add_tab: None, neg_tab };
        if q <= 729 {
            let mut tab = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    tab[(a * q + b) as usize] = gf.add_digits(a, b);
                }
            }
            gf.add_tab = Some(tab);
        }
        gf
    }

    pub fn desc(&self) -> &FieldDesc {
        &self.desc
    }
    pub fn p(&self) -> u32 {
        self.desc.p
    }
    pub fn k(&self) -> u32 {
        self.desc.k
    }
    pub fn q(&self) -> u32 {
        self.q
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let p = self.desc.p;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.desc.k {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        match &self.add_tab {
            Some(t) => t[(a * self.q + b) as usize],
            None => self.add_digits(a, b),
        }
    }
    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        self.neg_tab[a as usize]
    }
    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }
    /// Panics on zero.
    #[inline]
    pub fn inv(&self, a: Fq) -> Fq {
        assert!(a != 0, "inverse of zero");
        let order = self.q - 1;
        self.exp[((order - self.log[a as usize]) % order) as usize]
    }
    #[inline]
    pub fn div(&self, a: Fq, b: Fq) -> Fq {
        self.mul(a, self.inv(b))
    }
    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.q - 1) as u64;
        self.exp[(self.log[a as usize] as u64 * (e % order) % order) as usize]
    }
    /// The `p`-power Frobenius.
    pub fn frob(&self, a: Fq) -> Fq {
        self.pow(a, self.desc.p as u64)
    }
    pub fn frob_n(&self, a: Fq, n: u32) -> Fq {
        let mut x = a;
        for _ in 0..n % self.desc.k {
            x = self.frob(x);
        }
        x
    }
    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Fq {
        n.rem_euclid(self.desc.p as i64) as u32
    }
    /// Integer representative in `(-p/2, p/2]` of a prime-field element.
    pub fn to_signed(&self, a: Fq) -> Option<i64> {
        let p = self.desc.p as i64;
        (a < self.desc.p).then(|| {
            let a = a as i64;
            if a > p / 2 {
                a - p
            } else {
                a
            }
        })
    }
    pub fn is_square(&self, a: Fq) -> bool {
        a == 0 || self.log[a as usize].is_multiple_of(2)
    }
    /// Some square root, if one exists.
    pub fn sqrt(&self, a: Fq) -> Option<Fq> {
        if a == 0 {
            return Some(0);
        }
        let l = self.log[a as usize];
        l.is_multiple_of(2).then(|| self.exp[(l / 2) as usize])
    }
    /// A generator of the multiplicative group (fixed by construction).
    pub fn generator(&self) -> Fq {
        self.exp[1 % (self.q as usize - 1).max(1)]
    }
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        0..self.q
    }
    pub fn in_prime_field(&self, a: Fq) -> bool {
        a < self.desc.p
    }
    /// Order of a nonzero element.
    pub fn order(&self, a: Fq) -> u32 {
        let n = self.q - 1;
        let l = self.log[a as usize];
        n / gcd(n, l)
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_moduli() {
        assert_eq!(FieldDesc::new(3, 1).unwrap().modulus, vec![0, 1]);
        assert_eq!(FieldDesc::new(3, 2).unwrap().modulus, vec![1, 0, 1]);
        assert_eq!(FieldDesc::new(5, 2).unwrap().modulus, vec![1, 1, 1]);
        assert!(FieldDesc::new(2, 3).is_err());
        assert!(FieldDesc::new(9, 1).is_err());
    }

    #[test]
    fn field_axioms_small() {
        for (p, k) in [(3, 1), (3, 2), (5, 1), (3, 3), (7, 2)] {
            let f = Gf::new(p, k).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), slow_mul(a, b, p, &f.desc.modulus));
                    assert_eq!(f.add(a, b), f.add(b, a));
                }
            }
            // Frobenius is additive and fixes exactly F_p.
            for a in f.elements() {
                assert_eq!(f.frob(a) == a, f.in_prime_field(a));
                assert_eq!(f.frob_n(a, k), a);
            }
        }
    }

    #[test]
    fn squares_are_half() {
        let f = Gf::new(3, 2).unwrap();
        let sq = f.elements().filter(|&a| a != 0 && f.is_square(a)).count();
        assert_eq!(sq, 4);
        assert!(f.is_square(2), "every element of F_3 is a square in F_9");
    }
}
