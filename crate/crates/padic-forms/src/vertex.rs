use std::sync::Arc;

use ffpoly::{Fq, Mat};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use quadspace_fq::{enumerate_isotropic_subspaces, BilinearSpace, Budget, Subspace};
use serde::{Deserialize, Serialize};

use crate::forms::nonresidues;
use crate::lattice::{ppow, Ambient, PLattice};
use crate::PfError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

/// A lattice with `pΛ ⊆ Λ^∨ ⊆ Λ` and its two quotient spaces.
#[derive(Debug, Clone)]
pub struct VertexLatticeInfo {
    pub lattice: PLattice,
    pub dual: PLattice,
    pub typ: u32,
    /// `Λ/Λ^∨` with `c·p·B mod p`.
    pub omega0: BilinearSpace,
    /// `Λ^∨/pΛ` with `B mod p`.
    pub omega0p: BilinearSpace,
    /// HNF rows of `Λ` lifting the basis of `omega0`.
    omega0_reps: Vec<Vec<i128>>,
    /// HNF rows of `Λ^∨` lifting the basis of `omega0p`.
    omega0p_reps: Vec<Vec<i128>>,
}

/// `diag(−ε²p, −1, ε², −1, ε²)` with the form `−ε²pB` on `Λ/Λ^∨`.
pub fn lphi_pi_ambient(p: u32) -> Result<Arc<Ambient>, PfError> {
    let e = first_nonresidue(p)?;
    let d = [-e * p as i64, -1, e, -1, e];
    Ambient::with_omega_scale(p, diag(&d), -e)
}

/// `diag(p, −ε²p, −1, ε², −1, ε²)`, `y₁` first.
pub fn lphi_ambient(p: u32) -> Result<Arc<Ambient>, PfError> {
    let e = first_nonresidue(p)?;
    let d = [p as i64, -e * p as i64, -1, e, -1, e];
    Ambient::with_omega_scale(p, diag(&d), -e)
}

fn first_nonresidue(p: u32) -> Result<i64, PfError> {
    if p == 2 {
        return Err(PfError::Unsupported("p = 2".into()));
    }
    if !ffpoly::is_prime(p as u64) {
        return Err(PfError::InvalidInput(format!("{p} is not prime")));
    }
    Ok(nonresidues(p)[0])
}

fn diag(d: &[i64]) -> Vec<Vec<i64>> {
    let n = d.len();
    (0..n).map(|i| (0..n).map(|j| if i == j { d[i] } else { 0 }).collect()).collect()
}

/// Reps in `big` of a basis of `big/small` (given `p·big ⊆ small ⊆ big`).
fn quotient_reps(big: &PLattice, small: &PLattice) -> Result<Vec<Vec<i128>>, PfError> {
    let f = big.amb.fp.clone();
    let rows: Vec<Vec<Fq>> =
        small.hnf.iter().map(|r| big.coords_mod_p(small.scale, r)).collect::<Result<_, _>>()?;
    let (_, piv) = Mat::from_rows(&rows).rref(&f);
    Ok((0..big.dim()).filter(|i| !piv.contains(i)).map(|i| big.hnf[i].clone()).collect())
}

/// `c · p^t · B(p^{-s}a, p^{-s}b) mod p` on the given reps.
fn form_mod_p(amb: &Ambient, s: i32, t: i32, c: i64, reps: &[Vec<i128>]) -> Result<Mat, PfError> {
    let p = BigInt::from(amb.p);
    let k = reps.len();
    let shift = t - 2 * s;
    let mut m = Mat::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let mut v = amb.pair_big(&reps[i], &reps[j]) * BigInt::from(c);
            if shift >= 0 {
                v *= p.pow(shift as u32);
            } else {
                let d = p.pow((-shift) as u32);
                if !(&v % &d).is_zero() {
                    return Err(PfError::InvalidInput("form is not integral on the quotient".into()));
                }
                v /= d;
            }
            let r = ((v % &p) + &p) % &p;
            m.set(i, j, r.to_u32().unwrap());
        }
    }
    Ok(m)
}

fn make_space(amb: &Ambient, gram: Mat) -> Result<BilinearSpace, PfError> {
    let kind = amb.kind;
    Ok(BilinearSpace::new(amb.fp.clone(), gram, kind)?)
}

/// Classifies `Λ`; `None` when `pΛ ⊆ Λ^∨ ⊆ Λ` fails.
pub fn vertex_classify(l: &PLattice) -> Result<Option<VertexLatticeInfo>, PfError> {
    let dual = l.dual()?;
    if !l.contains(&dual)? || !dual.contains(&l.scaled(1))? {
        return Ok(None);
    }
    let typ = (dual.det_valuation() - l.det_valuation()) as u32;
    let amb = &l.amb;
    let omega0_reps = quotient_reps(l, &dual)?;
    let omega0p_reps = quotient_reps(&dual, &l.scaled(1))?;
    let g0 = form_mod_p(amb, l.scale, 1, amb.omega_scale, &omega0_reps)?;
    let g1 = form_mod_p(amb, dual.scale, 0, 1, &omega0p_reps)?;
    Ok(Some(VertexLatticeInfo {
        lattice: l.clone(),
        dual,
        typ,
        omega0: make_space(amb, g0)?,
        omega0p: make_space(amb, g1)?,
        omega0_reps,
        omega0p_reps,
    }))
}

fn lift(reps: &[Vec<i128>], w: &Subspace) -> Vec<Vec<i128>> {
    let n = reps.first().map_or(0, |r| r.len());
    w.basis
        .row_vecs()
        .iter()
        .map(|c| {
            let mut v = vec![0i128; n];
            for (ci, r) in c.iter().zip(reps) {
                if *ci != 0 {
                    for (x, y) in v.iter_mut().zip(r) {
                        *x += *ci as i128 * y;
                    }
                }
            }
            v
        })
        .collect()
}

impl VertexLatticeInfo {
    /// Vertex lattices `Λ′ ⊋ Λ` (up) or `Λ′ ⊊ Λ` (down) of type `target`,
    /// sorted.
    pub fn neighbors(&self, dir: Direction, target: u32, budget: &Budget) -> Result<Vec<PLattice>, PfError> {
        let t = self.typ;
        let n = self.lattice.dim() as u32;
        let d = match dir {
            Direction::Up if target > t && target <= n && (target - t).is_multiple_of(2) => (target - t) / 2,
            Direction::Down if target < t && (t - target).is_multiple_of(2) => (t - target) / 2,
            _ => return Ok(Vec::new()),
        };
        let mut out = Vec::new();
        match dir {
            Direction::Up => {
                for w in enumerate_isotropic_subspaces(&self.omega0p, d as usize, budget)? {
                    let gens = lift(&self.omega0p_reps, &w);
                    out.push(self.lattice.add_generators(self.dual.scale + 1, &gens)?);
                }
            }
            Direction::Down => {
                for w in enumerate_isotropic_subspaces(&self.omega0, d as usize, budget)? {
                    let gens = lift(&self.omega0_reps, &self.omega0.perp(&w));
                    out.push(self.dual.add_generators(self.lattice.scale, &gens)?);
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Vertex lattices `Λ′ ⊋ Λ` of the largest possible type.
    pub fn maximal_up(&self, budget: &Budget) -> Result<Vec<PLattice>, PfError> {
        let top = self.typ + 2 * self.omega0p.witt_decompose()?.witt_index as u32;
        self.neighbors(Direction::Up, top, budget)
    }
}

/// Hyperbolic basis `(a, b, c, d)` of `Z_p^4 ⊂ L^{Φ,π}` modulo `p²`, with
/// `B(a,d) ≡ B(b,c) ≡ 1` and all other pairings `≡ 0`.
fn hyperbolic_mod_p2(amb: &Ambient) -> Result<[Vec<i128>; 4], PfError> {
    let p = amb.p as i128;
    let m = p * p;
    let g: Vec<i128> = (1..5).map(|i| amb.gram[i][i] as i128).collect();
    let b = |u: &[i128], v: &[i128]| (0..4).map(|i| g[i] * u[i] * v[i]).sum::<i128>().rem_euclid(m);
    let inv = |a: i128| -> i128 {
        let a = a.rem_euclid(m);
        (1..m).find(|x| (a * x).rem_euclid(m) == 1).expect("unit")
    };
    // Isotropic mod p² vector in the span of `basis`, nonzero mod p.
    let isotropic = |basis: &[Vec<i128>]| -> Option<Vec<i128>> {
        let k = basis.len();
        let total = (p as u64).pow(k as u32);
        for code in 1..total {
            let mut c = code;
            let mut x = vec![0i128; 4];
            for bv in basis {
                let ci = (c % p as u64) as i128;
                c /= p as u64;
                for t in 0..4 {
                    x[t] += ci * bv[t];
                }
            }
            if b(&x, &x) % p != 0 {
                continue;
            }
            // Correct by p·y with 2B(x,y) ≡ −Q(x)/p (mod p).
            let q = b(&x, &x) / p;
            let y = basis.iter().find(|bv| b(&x, bv) % p != 0)?;
            let s = (-q * inv(2 * b(&x, y))).rem_euclid(p);
            let z: Vec<i128> = (0..4).map(|t| (x[t] + p * s * y[t]).rem_euclid(m)).collect();
            debug_assert_eq!(b(&z, &z), 0);
            return Some(z);
        }
        None
    };
    let hyperbolic_pair = |basis: &[Vec<i128>]| -> Option<(Vec<i128>, Vec<i128>)> {
        let a = isotropic(basis)?;
        let y = basis.iter().find(|bv| b(&a, bv) % p != 0)?;
        let k = inv(b(&a, y));
        let y: Vec<i128> = y.iter().map(|&t| (t * k).rem_euclid(m)).collect();
        let h = (b(&y, &y) * inv(2)).rem_euclid(m);
        let d: Vec<i128> = (0..4).map(|t| (y[t] - h * a[t]).rem_euclid(m)).collect();
        Some((a, d))
    };
    let e: Vec<Vec<i128>> = (0..4).map(|i| (0..4).map(|j| (i == j) as i128).collect()).collect();
    let (a, d) = hyperbolic_pair(&e).ok_or_else(|| PfError::InvalidInput("no isotropic vector".into()))?;
    let mut comp = Vec::new();
    let fp = &amb.fp;
    for v in &e {
        let w: Vec<i128> = (0..4).map(|t| (v[t] - b(v, &d) * a[t] - b(v, &a) * d[t]).rem_euclid(m)).collect();
        let mut rows: Vec<Vec<Fq>> = comp
            .iter()
            .map(|c: &Vec<i128>| c.iter().map(|&x| (x % p) as Fq).collect())
            .collect();
        rows.push(w.iter().map(|&x| (x % p) as Fq).collect());
        if Mat::from_rows(&rows).rank(fp) == rows.len() {
            comp.push(w);
        }
        if comp.len() == 2 {
            break;
        }
    }
    let (bb, cc) = hyperbolic_pair(&comp).ok_or_else(|| PfError::InvalidInput("complement is anisotropic".into()))?;
    Ok([a, bb, cc, d])
}

/// Vertex lattices of types 1, 3, 5 built from a basis `w₁, …, w₅` with
/// `w₁ = y₂/p` and `w₂…w₅` a `p⁻¹`-scaled hyperbolic basis of `⟨y₃…y₆⟩`:
/// `⟨w₁,w₂,w₃,pw₄,pw₅⟩`, `⟨w₁,…,w₄,pw₅⟩`, `⟨w₁,…,w₅⟩`.
pub fn vertex_witnesses(amb: &Arc<Ambient>) -> Result<[PLattice; 3], PfError> {
    if amb.dim() != 5 {
        return Err(PfError::InvalidInput("witnesses live in the 5-dim space".into()));
    }
    let p = amb.p as i128;
    let [a, b, c, d] = hyperbolic_mod_p2(amb)?;
    let emb = |v: &[i128], k: i128| -> Vec<i128> {
        let mut out = vec![0i128; 5];
        for t in 0..4 {
            out[t + 1] = v[t] * k;
        }
        out
    };
    // Scale 1 throughout: w₂ = a/p, w₅ = d.
    let w1: Vec<i128> = vec![1, 0, 0, 0, 0];
    let mk = |k4: i128, k5: i128| -> Result<PLattice, PfError> {
        let rows = vec![w1.clone(), emb(&a, 1), emb(&b, 1), emb(&c, p * k4), emb(&d, p * k5)];
        PLattice::from_int_rows(amb, 1, &rows)
    };
    Ok([mk(p, p)?, mk(1, p)?, mk(1, 1)?])
}

/// `Λ ↦ Λ ⊕ p⁻¹y₁Z_p` into the 6-dim space.
pub fn phi(l: &PLattice, amb6: &Arc<Ambient>) -> Result<PLattice, PfError> {
    let e = l.scale.max(1);
    let k = ppow(l.p(), (e - l.scale) as u32)?;
    let mut rows = vec![{
        let mut r = vec![0i128; 6];
        r[0] = ppow(l.p(), (e - 1) as u32)?;
        r
    }];
    for h in &l.hnf {
        let mut r = vec![0i128];
        r.extend(h.iter().map(|&x| x * k));
        rows.push(r);
    }
    PLattice::from_int_rows(amb6, e, &rows)
}

/// `Λ̃ ↦ Λ̃ ∩ ⟨y₂, …, y₆⟩`.
pub fn psi(l: &PLattice, amb5: &Arc<Ambient>) -> Result<PLattice, PfError> {
    let rows: Vec<Vec<i128>> = l.hnf[1..].iter().map(|r| r[1..].to_vec()).collect();
    if rows.iter().any(|r| r.len() != 5) {
        return Err(PfError::InvalidInput("psi expects a 6-dim lattice".into()));
    }
    PLattice::from_int_rows(amb5, l.scale, &rows)
}
