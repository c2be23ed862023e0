//! Full-rank `Z_p`-lattices in `Q_p^n`, stored as a scale exponent and a
//! canonical row Hermite normal form.
//!
//! A lattice `L = p^{-scale} · span(hnf)` where `hnf` is upper triangular
//! with pivots `p^{k_j}`, entries above a pivot reduced into `[0, p^{k_j})`,
//! and `scale` minimal. Since `p^{Σk}·Z_p^n ⊆ span(hnf)`, every computation
//! runs modulo a known power of `p` on `i128`.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use ffpoly::Gf;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use quadspace_fq::FormKind;
use serde::Serialize;

use crate::PfError;

const MOD_LIMIT: i128 = 1 << 62;

/// Ambient `Q_p^n` with an integral nondegenerate Gram matrix.
#[derive(Debug, Clone)]
pub struct Ambient {
    pub p: u32,
    pub gram: Vec<Vec<i64>>,
    pub kind: FormKind,
    /// Scalar applied to `p·B` on `Λ/Λ^∨`.
    pub omega_scale: i64,
    pub fp: Arc<Gf>,
    adj: Vec<Vec<i128>>,
    det_val: u32,
}

impl PartialEq for Ambient {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p && self.gram == o.gram
    }
}

pub(crate) fn ppow(p: u32, k: u32) -> Result<i128, PfError> {
    (p as i128)
        .checked_pow(k)
        .filter(|&m| m <= MOD_LIMIT)
        .ok_or_else(|| PfError::ResourceLimit(format!("{p}^{k} exceeds the working modulus")))
}

pub(crate) fn vp(mut x: i128, p: u32) -> u32 {
    debug_assert!(x != 0);
    let p = p as i128;
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

fn modinv(a: i128, m: i128) -> i128 {
    let (mut r0, mut r1) = (a.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(m)
}

fn det_big(m: &[Vec<BigInt>]) -> BigInt {
    // Bareiss fraction-free elimination.
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn adjugate_big(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = m.len();
    let mut adj = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<BigInt>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c].clone()).collect())
                .collect();
            let d = det_big(&minor);
            adj[i][j] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    adj
}

fn vp_big(x: &BigInt, p: u32) -> u32 {
    let pb = BigInt::from(p);
    let mut x = x.clone();
    let mut v = 0;
    while (&x % &pb).is_zero() {
        x /= &pb;
        v += 1;
    }
    v
}

impl Ambient {
    pub fn new(p: u32, gram: Vec<Vec<i64>>) -> Result<Arc<Self>, PfError> {
        if p == 2 {
            return Err(PfError::Unsupported("p = 2".into()));
        }
        if !ffpoly::is_prime(p as u64) {
            return Err(PfError::InvalidInput(format!("{p} is not prime")));
        }
        let n = gram.len();
        if n == 0 || gram.iter().any(|r| r.len() != n) {
            return Err(PfError::InvalidInput("Gram matrix must be square and nonempty".into()));
        }
        let sym = (0..n).all(|i| (0..n).all(|j| gram[i][j] == gram[j][i]));
        let alt = (0..n).all(|i| gram[i][i] == 0 && (0..n).all(|j| gram[i][j] == -gram[j][i]));
        let kind = if sym {
            FormKind::Symmetric
        } else if alt {
            FormKind::Alternating
        } else {
            return Err(PfError::InvalidInput("Gram matrix neither symmetric nor alternating".into()));
        };
        let big: Vec<Vec<BigInt>> = gram.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let det = det_big(&big);
        if det.is_zero() {
            return Err(PfError::InvalidInput("degenerate ambient form".into()));
        }
        let adj = adjugate_big(&big)
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.to_i128().unwrap()).collect())
            .collect();
        let fp = Arc::new(Gf::prime(p).map_err(|e| PfError::InvalidInput(e.to_string()))?);
        Ok(Arc::new(Ambient { p, gram, kind, omega_scale: 1, fp, adj, det_val: vp_big(&det, p) }))
    }

    pub fn with_omega_scale(p: u32, gram: Vec<Vec<i64>>, omega_scale: i64) -> Result<Arc<Self>, PfError> {
        let a = Ambient::new(p, gram)?;
        let mut a = Arc::try_unwrap(a).unwrap();
        a.omega_scale = omega_scale;
        Ok(Arc::new(a))
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    /// `u G vᵀ` for integer vectors.
    pub fn pair_big(&self, u: &[i128], v: &[i128]) -> BigInt {
        let n = self.dim();
        let mut s = BigInt::zero();
        for i in 0..n {
            if u[i] == 0 {
                continue;
            }
            let mut t = BigInt::zero();
            for j in 0..n {
                if self.gram[i][j] != 0 && v[j] != 0 {
                    t += BigInt::from(self.gram[i][j]) * BigInt::from(v[j]);
                }
            }
            s += t * BigInt::from(u[i]);
        }
        s
    }
}

/// Canonical HNF of `span(rows) + p^e·Z_p^n`. Returns rows and pivot
/// exponents.
fn hnf_mod(p: u32, n: usize, rows: &[Vec<i128>], e: u32) -> Result<(Vec<Vec<i128>>, Vec<u32>), PfError> {
    let m = ppow(p, e)?;
    let md = |x: i128| x.rem_euclid(m);
    let mut pool: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| md(x)).collect::<Vec<_>>())
        .filter(|r: &Vec<i128>| r.iter().any(|&x| x != 0))
        .collect();
    let mut out: Vec<Vec<i128>> = Vec::with_capacity(n);
    let mut ks = Vec::with_capacity(n);
    for j in 0..n {
        let best = pool
            .iter()
            .enumerate()
            .filter(|(_, r)| r[j] != 0)
            .min_by_key(|(i, r)| (vp(r[j], p), *i))
            .map(|(i, _)| i);
        let Some(bi) = best else {
            let mut r = vec![0; n];
            r[j] = m;
            out.push(r);
            ks.push(e);
            continue;
        };
        let mut r = pool.remove(bi);
        let v = vp(r[j], p);
        let pv = (p as i128).pow(v);
        let ui = modinv(r[j] / pv, m);
        for x in r.iter_mut().skip(j) {
            *x = md(*x * ui);
        }
        debug_assert_eq!(r[j], pv);
        for o in pool.iter_mut() {
            if o[j] != 0 {
                let c = o[j] / pv;
                for t in j..n {
                    o[t] = md(o[t] - c * r[t]);
                }
            }
        }
        if v > 0 {
            let s = (p as i128).pow(e - v);
            let extra: Vec<i128> = r.iter().map(|&x| md(x * s)).collect();
            if extra.iter().any(|&x| x != 0) {
                pool.push(extra);
            }
        }
        pool.retain(|o| o.iter().any(|&x| x != 0));
        out.push(r);
        ks.push(v);
    }
    for j in 1..n {
        let pj = out[j][j];
        for i in 0..j {
            let q = out[i][j].div_euclid(pj);
            if q != 0 {
                let (lo, hi) = out.split_at_mut(j);
                for t in j..n {
                    lo[i][t] -= q * hi[0][t];
                    if t > j {
                        lo[i][t] = md(lo[i][t]);
                    }
                }
            }
        }
    }
    Ok((out, ks))
}

/// Full-rank lattice `p^{-scale}·span(hnf)` in an ambient space.
#[derive(Debug, Clone)]
pub struct PLattice {
    pub amb: Arc<Ambient>,
    pub scale: i32,
    pub hnf: Vec<Vec<i128>>,
    ks: Vec<u32>,
}

impl PartialEq for PLattice {
    fn eq(&self, o: &Self) -> bool {
        self.scale == o.scale && self.hnf == o.hnf
    }
}
impl Eq for PLattice {}
impl Hash for PLattice {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.scale.hash(h);
        self.hnf.hash(h);
    }
}
impl PartialOrd for PLattice {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for PLattice {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.scale, &self.hnf).cmp(&(o.scale, &o.hnf))
    }
}

#[derive(Serialize)]
struct LatticeJson {
    scale: i32,
    hnf: Vec<Vec<i64>>,
}

impl Serialize for PLattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LatticeJson { scale: self.scale, hnf: self.hnf.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect() }
            .serialize(s)
    }
}

impl PLattice {
    /// Canonical lattice of `p^{-scale}·span(rows) `, given that
    /// `p^e·Z_p^n ⊆ span(rows)`.
    pub(crate) fn build(amb: &Arc<Ambient>, scale: i32, rows: &[Vec<i128>], e: u32) -> Result<Self, PfError> {
        let p = amb.p;
        let n = amb.dim();
        let (mut hnf, mut ks) = hnf_mod(p, n, rows, e)?;
        let g = hnf.iter().flatten().filter(|&&x| x != 0).map(|&x| vp(x, p)).min().unwrap_or(0);
        if g > 0 {
            let pg = (p as i128).pow(g);
            for x in hnf.iter_mut().flatten() {
                *x /= pg;
            }
            for k in ks.iter_mut() {
                *k -= g;
            }
        }
        Ok(PLattice { amb: amb.clone(), scale: scale - g as i32, hnf, ks })
    }

    /// Lattice spanned by `p^{-scale}·rows` for `n` independent integer rows.
    pub fn from_int_rows(amb: &Arc<Ambient>, scale: i32, rows: &[Vec<i128>]) -> Result<Self, PfError> {
        let n = amb.dim();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(PfError::InvalidInput(format!("need {n} rows of length {n}")));
        }
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let d = det_big(&big);
        if d.is_zero() {
            return Err(PfError::InvalidInput("basis is not invertible".into()));
        }
        Self::build(amb, scale, rows, vp_big(&d, amb.p))
    }

    /// Lattice with the given rational basis (denominators powers of `p`).
    pub fn from_rational(amb: &Arc<Ambient>, rows: &[Vec<BigRational>]) -> Result<Self, PfError> {
        let p = amb.p;
        let mut s = 0u32;
        for x in rows.iter().flatten() {
            let (v, rest) = {
                let d = x.denom();
                let v = vp_big(d, p);
                (v, d / BigInt::from(p).pow(v))
            };
            if !rest.abs().is_one() {
                return Err(PfError::InvalidInput(format!("denominator of {x} is not a power of {p}")));
            }
            s = s.max(v);
        }
        let ps = BigRational::from_integer(BigInt::from(p).pow(s));
        let ints: Option<Vec<Vec<i128>>> =
            rows.iter().map(|r| r.iter().map(|x| (x * &ps).to_integer().to_i128()).collect()).collect();
        let ints = ints.ok_or_else(|| PfError::ResourceLimit("basis entries too large".into()))?;
        Self::from_int_rows(amb, s as i32, &ints)
    }

    /// `Z_p^n` itself.
    pub fn standard(amb: &Arc<Ambient>) -> Self {
        let n = amb.dim();
        let rows: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
        Self::build(amb, 0, &rows, 0).unwrap()
    }

    pub fn p(&self) -> u32 {
        self.amb.p
    }

    pub fn dim(&self) -> usize {
        self.amb.dim()
    }

    pub fn pivot_exponents(&self) -> &[u32] {
        &self.ks
    }

    fn kdet(&self) -> u32 {
        self.ks.iter().sum()
    }

    /// `v_p` of the determinant of a basis.
    pub fn det_valuation(&self) -> i64 {
        self.kdet() as i64 - self.dim() as i64 * self.scale as i64
    }

    /// `p^k · L`.
    pub fn scaled(&self, k: i32) -> Self {
        let mut l = self.clone();
        l.scale -= k;
        l
    }

    /// HNF rows multiplied by `p^d`.
    fn rows_times(&self, d: u32) -> Result<Vec<Vec<i128>>, PfError> {
        let s = ppow(self.p(), d)?;
        Ok(self.hnf.iter().map(|r| r.iter().map(|&x| x * s).collect()).collect())
    }

    /// `L + p^{-gscale}·span(gens)`.
    pub fn add_generators(&self, gscale: i32, gens: &[Vec<i128>]) -> Result<Self, PfError> {
        let e = self.scale.max(gscale);
        let ds = (e - self.scale) as u32;
        let mut rows = self.rows_times(ds)?;
        let gm = ppow(self.p(), (e - gscale) as u32)?;
        let m = ppow(self.p(), self.kdet() + self.dim() as u32 * ds)?;
        for g in gens {
            rows.push(g.iter().map(|&x| (x.rem_euclid(m) * gm).rem_euclid(m)).collect());
        }
        Self::build(&self.amb, e, &rows, self.kdet() + self.dim() as u32 * ds)
    }

    pub fn sum(&self, o: &PLattice) -> Result<Self, PfError> {
        self.add_generators(o.scale, &o.hnf)
    }

    pub fn dual(&self) -> Result<Self, PfError> {
        let n = self.dim();
        let p = self.p();
        let k = self.kdet();
        // X = p^K · H^{-1}, upper triangular.
        let pk = (p as i128).checked_pow(k).ok_or_else(|| PfError::ResourceLimit("dual".into()))?;
        let mut x = vec![vec![0i128; n]; n];
        for c in 0..n {
            x[c][c] = pk / self.hnf[c][c];
            for i in (0..c).rev() {
                let mut s: i128 = 0;
                for l in i + 1..=c {
                    s = s
                        .checked_add(self.hnf[i][l].checked_mul(x[l][c]).ok_or_else(overflow)?)
                        .ok_or_else(overflow)?;
                }
                debug_assert_eq!(s % self.hnf[i][i], 0);
                x[i][c] = -s / self.hnf[i][i];
            }
        }
        let e = k + self.amb.det_val;
        let m = ppow(p, e)?;
        let mut r = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s: i128 = 0;
                for l in 0..n {
                    s = (s + (x[l][i].rem_euclid(m) * self.amb.adj[l][j].rem_euclid(m)).rem_euclid(m)).rem_euclid(m);
                }
                r[i][j] = s;
            }
        }
        Self::build(&self.amb, e as i32 - self.scale, &r, e)
    }

    pub fn intersect(&self, o: &PLattice) -> Result<Self, PfError> {
        self.dual()?.sum(&o.dual()?)?.dual()
    }

    /// Whether `p^{-vscale}·v` lies in the lattice.
    pub fn contains_vec(&self, vscale: i32, v: &[i128]) -> Result<bool, PfError> {
        let p = self.p();
        let n = self.dim();
        let d = self.scale - vscale;
        let (rows, ks, v): (Vec<Vec<i128>>, Vec<u32>, Vec<i128>) = if d >= 0 {
            let s = ppow(p, d as u32)?;
            (self.hnf.clone(), self.ks.clone(), v.iter().map(|&x| x * s).collect())
        } else {
            let up = (-d) as u32;
            (self.rows_times(up)?, self.ks.iter().map(|k| k + up).collect(), v.to_vec())
        };
        let m = ppow(p, ks.iter().sum())?;
        let mut r: Vec<i128> = v.iter().map(|&x| x.rem_euclid(m)).collect();
        for j in 0..n {
            let pj = (p as i128).pow(ks[j]);
            if r[j] % pj != 0 {
                return Ok(false);
            }
            let c = r[j] / pj;
            for t in j..n {
                r[t] = (r[t] - c * rows[j][t].rem_euclid(m)).rem_euclid(m);
            }
        }
        Ok(true)
    }

    /// Whether `o ⊆ self`.
    pub fn contains(&self, o: &PLattice) -> Result<bool, PfError> {
        for r in &o.hnf {
            if !self.contains_vec(o.scale, r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coordinates modulo `p` of `p^{-vscale}·v ∈ L` in the HNF basis.
    pub fn coords_mod_p(&self, vscale: i32, v: &[i128]) -> Result<Vec<u32>, PfError> {
        let p = self.p();
        let n = self.dim();
        let d = self.scale - vscale;
        let (rows, ks, v): (Vec<Vec<i128>>, Vec<u32>, Vec<i128>) = if d >= 0 {
            let s = ppow(p, d as u32)?;
            (self.hnf.clone(), self.ks.clone(), v.iter().map(|&x| x * s).collect())
        } else {
            let up = (-d) as u32;
            (self.rows_times(up)?, self.ks.iter().map(|k| k + up).collect(), v.to_vec())
        };
        let m = ppow(p, 1 + ks.iter().sum::<u32>())?;
        let mut r: Vec<i128> = v.iter().map(|&x| x.rem_euclid(m)).collect();
        let mut out = vec![0u32; n];
        for j in 0..n {
            let pj = (p as i128).pow(ks[j]);
            if r[j] % pj != 0 {
                return Err(PfError::InvalidInput("vector is not in the lattice".into()));
            }
            let c = r[j] / pj;
            out[j] = c.rem_euclid(p as i128) as u32;
            for t in j..n {
                r[t] = (r[t] - c * rows[j][t].rem_euclid(m)).rem_euclid(m);
            }
        }
        Ok(out)
    }

    /// Length of `o/self` when `self ⊆ o`.
    pub fn index_in(&self, o: &PLattice) -> Result<Option<u32>, PfError> {
        if !o.contains(self)? {
            return Ok(None);
        }
        Ok(Some((self.det_valuation() - o.det_valuation()) as u32))
    }

    /// Basis as exact rationals.
    pub fn basis_rational(&self) -> Vec<Vec<BigRational>> {
        let p = BigInt::from(self.p());
        let f = if self.scale >= 0 {
            BigRational::new(BigInt::one(), p.pow(self.scale as u32))
        } else {
            BigRational::from_integer(p.pow((-self.scale) as u32))
        };
        self.hnf
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x)) * &f).collect())
            .collect()
    }

    /// Gram entries `B(b_i, b_j)` of the HNF basis, times `p^{2·scale}`.
    pub fn gram_scaled(&self) -> Vec<Vec<BigInt>> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.amb.pair_big(&self.hnf[i], &self.hnf[j])).collect()).collect()
    }
}

fn overflow() -> PfError {
    PfError::ResourceLimit("integer overflow in lattice arithmetic".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amb(p: u32, d: &[i64]) -> Arc<Ambient> {
        let n = d.len();
        Ambient::new(p, (0..n).map(|i| (0..n).map(|j| if i == j { d[i] } else { 0 }).collect()).collect()).unwrap()
    }

    #[test]
    fn canonical_form() {
        let a = amb(3, &[1, 1]);
        let l = PLattice::from_int_rows(&a, 0, &[vec![3, 1], vec![0, 3]]).unwrap();
        let l2 = PLattice::from_int_rows(&a, 0, &[vec![3, 4], vec![3, 1]]).unwrap();
        assert_eq!(l, l2);
        assert_eq!(l.hnf, vec![vec![3, 1], vec![0, 3]]);
        let l3 = PLattice::from_int_rows(&a, 0, &[vec![3, 0], vec![0, 3]]).unwrap();
        assert_eq!(l3.scale, -1);
        assert_eq!(l3.hnf, vec![vec![1, 0], vec![0, 1]]);
        // Units like 2 and 1/2 generate the same lattice.
        let l4 = PLattice::from_int_rows(&a, 0, &[vec![2, 0], vec![0, 5]]).unwrap();
        assert_eq!(l4, PLattice::standard(&a));
    }

    #[test]
    fn duality() {
        let a = amb(3, &[1, 1]);
        let z = PLattice::standard(&a);
        assert_eq!(z.dual().unwrap(), z);
        let b = amb(3, &[3, 1]);
        let z = PLattice::standard(&b);
        let d = z.dual().unwrap();
        assert_eq!(d.scale, 1);
        assert_eq!(d.hnf, vec![vec![1, 0], vec![0, 3]]);
        assert_eq!(d.dual().unwrap(), z);
        assert!(d.contains(&z).unwrap());
        assert_eq!(z.index_in(&d).unwrap(), Some(1));
    }

    #[test]
    fn meet_and_join() {
        let a = amb(5, &[1, 2, 3]);
        let x = PLattice::from_int_rows(&a, 0, &[vec![1, 0, 0], vec![0, 5, 0], vec![0, 0, 5]]).unwrap();
        let y = PLattice::from_int_rows(&a, 0, &[vec![5, 0, 0], vec![0, 1, 0], vec![0, 0, 5]]).unwrap();
        let s = x.sum(&y).unwrap();
        let i = x.intersect(&y).unwrap();
        assert_eq!(s, PLattice::from_int_rows(&a, 0, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 5]]).unwrap());
        assert_eq!(i, PLattice::from_int_rows(&a, 0, &[vec![5, 0, 0], vec![0, 5, 0], vec![0, 0, 5]]).unwrap());
    }
}
