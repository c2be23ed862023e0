//! Bilinear spaces over finite fields of odd characteristic.
//!
//! Vectors are rows; a [`Subspace`] is the row space of a matrix kept in
//! reduced row echelon form.

use std::sync::Arc;

use ffpoly::{FfError, Fq, Gf, Mat};
use serde::{Deserialize, Serialize};

mod enumerate;
mod invariant;
mod orbit;

pub use enumerate::{
    complementary_lagrangians, count_isotropic_subspaces, enumerate_isotropic_subspaces,
    enumerate_subspaces_with,
};
pub use invariant::{invariant_subspaces, primary_chains, PrimaryComponent};
pub use orbit::so_orbit_transitive;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QsError {
    #[error("operation needs a symmetric form")]
    InvalidKind,
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported input: {0}")]
    UnsupportedInput(String),
}

impl From<FfError> for QsError {
    fn from(e: FfError) -> Self {
        match e {
            FfError::InvalidInput(s) => QsError::InvalidInput(s),
            FfError::ResourceLimit(s) => QsError::ResourceLimit(s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Symmetric,
    Alternating,
}

/// Caps on enumeration sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_subspaces: usize,
    pub max_field: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_subspaces: 1_000_000, max_field: 81 }
    }
}

impl Budget {
    pub fn check_field(&self, f: &Gf) -> Result<(), QsError> {
        if f.q() > self.max_field {
            return Err(QsError::ResourceLimit(format!(
                "field size {} exceeds {}",
                f.q(),
                self.max_field
            )));
        }
        Ok(())
    }
}

pub const MAX_DIM: usize = 12;

#[derive(Debug, Clone)]
pub struct BilinearSpace {
    pub field: Arc<Gf>,
    pub gram: Mat,
    pub kind: FormKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subspace {
    /// RREF, no zero rows.
    pub basis: Mat,
}

impl Subspace {
    pub fn new(f: &Gf, rows: &Mat) -> Self {
        Subspace { basis: rows.rref(f).0 }
    }
    pub fn zero(n: usize) -> Self {
        Subspace { basis: Mat::zeros(0, n) }
    }
    pub fn full(n: usize) -> Self {
        Subspace { basis: Mat::identity(n) }
    }
    pub fn dim(&self) -> usize {
        self.basis.rows
    }
    pub fn ambient_dim(&self) -> usize {
        self.basis.cols
    }
    pub fn sum(&self, f: &Gf, o: &Subspace) -> Subspace {
        Subspace { basis: ffpoly::span_sum(f, &self.basis, &o.basis) }
    }
    pub fn intersect(&self, f: &Gf, o: &Subspace) -> Subspace {
        Subspace { basis: ffpoly::span_intersection(f, &self.basis, &o.basis) }
    }
    pub fn contains(&self, f: &Gf, o: &Subspace) -> bool {
        ffpoly::span_contains(f, &self.basis, &o.basis)
    }
    pub fn contains_vec(&self, f: &Gf, v: &[Fq]) -> bool {
        ffpoly::span_contains(f, &self.basis, &Mat::from_rows(&[v.to_vec()]))
    }
    /// Image under `x ↦ x·A` (row convention).
    pub fn image_rows(&self, f: &Gf, a: &Mat) -> Subspace {
        Subspace::new(f, &self.basis.mul(f, a))
    }
    /// Image under `x ↦ A·x` for column vectors stored as rows.
    pub fn image_cols(&self, f: &Gf, a: &Mat) -> Subspace {
        Subspace::new(f, &self.basis.mul(f, &a.transpose()))
    }
    /// Coordinatewise Frobenius.
    pub fn frob(&self, f: &Gf) -> Subspace {
        Subspace::new(f, &self.basis.frob(f))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittDecomposition {
    pub radical_dim: usize,
    pub witt_index: usize,
    /// Diagonal Gram of the anisotropic kernel, dimension ≤ 2.
    pub anisotropic_gram: Mat,
    /// Rows are the new basis: radical, then hyperbolic pairs, then the
    /// anisotropic part.
    pub basis: Mat,
}

impl WittDecomposition {
    /// The block form `0_r ⊕ H^w ⊕ A` in the returned basis.
    pub fn block_form(&self) -> Mat {
        let h = Mat::from_rows(&[vec![0, 1], vec![1, 0]]);
        let mut m = Mat::zeros(self.radical_dim, self.radical_dim);
        for _ in 0..self.witt_index {
            m = m.direct_sum(&h);
        }
        m.direct_sum(&self.anisotropic_gram)
    }
}

impl BilinearSpace {
    pub fn new(field: Arc<Gf>, gram: Mat, kind: FormKind) -> Result<Self, QsError> {
        if !gram.is_square() || gram.rows > MAX_DIM {
            return Err(QsError::InvalidInput(format!(
                "gram must be square of size ≤ {MAX_DIM}"
            )));
        }
        let n = gram.rows;
        let f = &field;
        for i in 0..n {
            for j in 0..n {
                let ok = match kind {
                    FormKind::Symmetric => gram.get(i, j) == gram.get(j, i),
                    FormKind::Alternating => gram.get(i, j) == f.neg(gram.get(j, i)),
                };
                if !ok {
                    return Err(QsError::InvalidInput(format!("gram is not {kind:?}")));
                }
            }
            if kind == FormKind::Alternating && gram.get(i, i) != 0 {
                return Err(QsError::InvalidInput("alternating gram with nonzero diagonal".into()));
            }
        }
        Ok(BilinearSpace { field, gram, kind })
    }
    pub fn symmetric(field: Arc<Gf>, gram: Mat) -> Result<Self, QsError> {
        Self::new(field, gram, FormKind::Symmetric)
    }
    pub fn alternating(field: Arc<Gf>, gram: Mat) -> Result<Self, QsError> {
        Self::new(field, gram, FormKind::Alternating)
    }
    /// `H^{⊕t} ⊕ diag(tail)`.
    pub fn hyperbolic_sum(field: Arc<Gf>, t: usize, tail: &[Fq]) -> Self {
        let h = Mat::from_rows(&[vec![0, 1], vec![1, 0]]);
        let mut g = Mat::zeros(0, 0);
        for _ in 0..t {
            g = g.direct_sum(&h);
        }
        g = g.direct_sum(&Mat::diag(tail));
        BilinearSpace { field, gram: g, kind: FormKind::Symmetric }
    }
    /// Standard symplectic space of dimension `2t`.
    pub fn symplectic(field: Arc<Gf>, t: usize) -> Self {
        let mut g = Mat::zeros(2 * t, 2 * t);
        let m1 = field.neg(1);
        for i in 0..t {
            g.set(2 * i, 2 * i + 1, 1);
            g.set(2 * i + 1, 2 * i, m1);
        }
        BilinearSpace { field, gram: g, kind: FormKind::Alternating }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows
    }
    pub fn f(&self) -> &Gf {
        &self.field
    }
    pub fn pair(&self, u: &[Fq], v: &[Fq]) -> Fq {
        self.gram.pair(&self.field, u, v)
    }
    pub fn is_nondegenerate(&self) -> bool {
        self.gram.det(&self.field) != 0
    }
    pub fn radical(&self) -> Subspace {
        Subspace { basis: self.gram.kernel(&self.field) }
    }
    /// `{v : B(v, W) = 0}`.
    pub fn perp(&self, w: &Subspace) -> Subspace {
        if w.dim() == 0 {
            return Subspace::full(self.dim());
        }
        let m = w.basis.mul(&self.field, &self.gram);
        Subspace { basis: m.kernel(&self.field) }
    }
    pub fn is_totally_isotropic(&self, w: &Subspace) -> bool {
        let f = &self.field;
        let m = w.basis.mul(f, &self.gram).mul(f, &w.basis.transpose());
        m.is_zero()
    }
    /// Gram of the restriction to the row space of `rows`.
    pub fn restrict_gram(&self, rows: &Mat) -> Mat {
        let f = &self.field;
        rows.mul(f, &self.gram).mul(f, &rows.transpose())
    }
    /// Same form over a larger field of the same characteristic.
    pub fn base_change(&self, big: Arc<Gf>) -> BilinearSpace {
        assert_eq!(big.p(), self.field.p());
        assert!(self.gram.data.iter().all(|&x| x < self.field.p()), "gram not over the prime field");
        BilinearSpace { field: big, gram: self.gram.clone(), kind: self.kind }
    }
    /// Square class of the determinant: `Some(true)` for a nonzero square.
    pub fn det_is_square(&self) -> Option<bool> {
        let d = self.gram.det(&self.field);
        (d != 0).then(|| self.field.is_square(d))
    }

    pub fn witt_decompose(&self) -> Result<WittDecomposition, QsError> {
        if self.kind != FormKind::Symmetric {
            return Err(QsError::InvalidKind);
        }
        let f = &*self.field;
        let n = self.dim();
        let rad = self.radical();
        // Complement of the radical: extend its basis by standard vectors.
        let mut comp: Vec<Vec<Fq>> = Vec::new();
        let mut span = rad.basis.clone();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            let cand = span.stack(&Mat::from_rows(&[e.clone()]));
            if cand.rank(f) > span.rank(f) {
                span = cand;
                comp.push(e);
            }
        }
        let mut pairs: Vec<(Vec<Fq>, Vec<Fq>)> = Vec::new();
        let mut rest = comp;
        loop {
            let diag = orthogonal_basis(self, &rest);
            match find_isotropic(self, &diag) {
                None => {
                    rest = diag;
                    break;
                }
                Some(v) => {
                    let w0 = rest
                        .iter()
                        .find(|u| self.pair(&v, u) != 0)
                        .expect("nondegenerate part")
                        .clone();
                    let s = f.inv(self.pair(&v, &w0));
                    let w1: Vec<Fq> = w0.iter().map(|&x| f.mul(x, s)).collect();
                    // w = w1 − (B(w1,w1)/2)·v is isotropic with B(v,w) = 1.
                    let half = f.div(self.pair(&w1, &w1), f.from_int(2));
                    let w: Vec<Fq> = w1.iter().zip(&v).map(|(&a, &b)| f.sub(a, f.mul(half, b))).collect();
                    let hp = Subspace::new(f, &Mat::from_rows(&[v.clone(), w.clone()]));
                    let perp = self.perp(&hp);
                    let within = Subspace::new(f, &Mat::from_rows(&rest)).intersect(f, &perp);
                    pairs.push((v, w));
                    rest = within.basis.row_vecs();
                }
            }
        }
        let mut basis_rows: Vec<Vec<Fq>> = rad.basis.row_vecs();
        for (v, w) in &pairs {
            basis_rows.push(v.clone());
            basis_rows.push(w.clone());
        }
        basis_rows.extend(rest.iter().cloned());
        let aniso = Mat::diag(&rest.iter().map(|v| self.pair(v, v)).collect::<Vec<_>>());
        let basis = if basis_rows.is_empty() { Mat::zeros(0, n) } else { Mat::from_rows(&basis_rows) };
        Ok(WittDecomposition {
            radical_dim: rad.dim(),
            witt_index: pairs.len(),
            anisotropic_gram: aniso,
            basis,
        })
    }
}

/// Orthogonal basis of the span of `rows` (nondegenerate restriction).
fn orthogonal_basis(v: &BilinearSpace, rows: &[Vec<Fq>]) -> Vec<Vec<Fq>> {
    let f = &*v.field;
    let mut work: Vec<Vec<Fq>> = rows.to_vec();
    let mut out = Vec::new();
    while !work.is_empty() {
        // Pick an anisotropic vector: some basis vector, or a sum of two.
        let mut pick = work.iter().position(|u| v.pair(u, u) != 0);
        if pick.is_none() {
            'outer: for i in 0..work.len() {
                for j in i + 1..work.len() {
                    if v.pair(&work[i], &work[j]) != 0 {
                        let s: Vec<Fq> = work[i].iter().zip(&work[j]).map(|(&a, &b)| f.add(a, b)).collect();
                        work[i] = s;
                        pick = Some(i);
                        break 'outer;
                    }
                }
            }
        }
        let Some(i) = pick else {
            // Totally isotropic remainder cannot occur for a nondegenerate span.
            out.extend(work);
            break;
        };
        let u = work.remove(i);
        let quu = v.pair(&u, &u);
        for w in work.iter_mut() {
            let c = f.div(v.pair(w, &u), quu);
            for (x, &y) in w.iter_mut().zip(&u) {
                *x = f.sub(*x, f.mul(c, y));
            }
        }
        out.push(u);
    }
    out
}

/// Nonzero isotropic vector in the span of an orthogonal basis, if any.
fn find_isotropic(v: &BilinearSpace, diag: &[Vec<Fq>]) -> Option<Vec<Fq>> {
    let f = &*v.field;
    let a: Vec<Fq> = diag.iter().map(|u| v.pair(u, u)).collect();
    let comb = |c: &[Fq]| -> Vec<Fq> {
        let mut out = vec![0; v.dim()];
        for (ci, u) in c.iter().zip(diag) {
            for (o, &x) in out.iter_mut().zip(u) {
                *o = f.add(*o, f.mul(*ci, x));
            }
        }
        out
    };
    match diag.len() {
        0 | 1 => None,
        2 => {
            let r = f.neg(f.div(a[1], a[0]));
            f.sqrt(r).map(|x| comb(&[x, 1]))
        }
        _ => {
            // a0 x² + a1 y² + a2 = 0 has a solution over every finite field.
            for y in f.elements() {
                let r = f.neg(f.div(f.add(f.mul(a[1], f.mul(y, y)), a[2]), a[0]));
                if let Some(x) = f.sqrt(r) {
                    let mut c = vec![0; diag.len()];
                    c[0] = x;
                    c[1] = y;
                    c[2] = 1;
                    return Some(comb(&c));
                }
            }
            unreachable!("ternary forms over finite fields are isotropic")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Arc<Gf> {
        Arc::new(Gf::prime(3).unwrap())
    }

    fn check(v: &BilinearSpace) -> WittDecomposition {
        let w = v.witt_decompose().unwrap();
        assert_eq!(w.radical_dim + 2 * w.witt_index + w.anisotropic_gram.rows, v.dim());
        assert_eq!(v.restrict_gram(&w.basis), w.block_form());
        w
    }

    #[test]
    fn witt_examples() {
        let f = f3();
        let v = BilinearSpace::symmetric(f.clone(), Mat::from_ints(&f, &[vec![1, 0], vec![0, -1]])).unwrap();
        let w = check(&v);
        assert_eq!((w.radical_dim, w.witt_index, w.anisotropic_gram.rows), (0, 1, 0));
        let v = BilinearSpace::symmetric(f.clone(), Mat::diag(&[1, 1])).unwrap();
        let w = check(&v);
        assert_eq!((w.witt_index, w.anisotropic_gram.rows), (0, 2));
        let v = BilinearSpace::symmetric(f.clone(), Mat::diag(&[1; 5])).unwrap();
        let w = check(&v);
        assert_eq!((w.witt_index, w.anisotropic_gram.rows), (2, 1));
        let v = BilinearSpace::symmetric(f.clone(), Mat::diag(&[1, 0, 2])).unwrap();
        let w = check(&v);
        assert_eq!((w.radical_dim, w.witt_index), (1, 1));
        let alt = BilinearSpace::symplectic(f, 1);
        assert_eq!(alt.witt_decompose(), Err(QsError::InvalidKind));
    }

    #[test]
    fn rejects_bad_grams() {
        let f = f3();
        assert!(BilinearSpace::symmetric(f.clone(), Mat::from_ints(&f, &[vec![0, 1], vec![2, 0]])).is_err());
        assert!(BilinearSpace::alternating(f.clone(), Mat::diag(&[1, 0])).is_err());
        assert!(BilinearSpace::symmetric(f, Mat::identity(13)).is_err());
    }
}
