//! Dense matrices over a [`Gf`] and row-space utilities.
//!
//! Subspaces are handled as row spaces in reduced row echelon form, which is
//! unique, so two subspaces are equal exactly when their RREF bases are.

use serde::{Deserialize, Serialize};

use crate::field::{Fq, Gf};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Fq>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }
    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }
    pub fn from_rows(rows: &[Vec<Fq>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Mat { rows: r, cols: c, data }
    }
    /// Entries given as signed integers, reduced into the prime field.
    pub fn from_ints(f: &Gf, rows: &[Vec<i64>]) -> Self {
        let rows: Vec<Vec<Fq>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| f.from_int(x)).collect())
            .collect();
        Mat::from_rows(&rows)
    }
    pub fn diag(entries: &[Fq]) -> Self {
        let mut m = Mat::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }
    /// Block diagonal sum.
    pub fn direct_sum(&self, o: &Mat) -> Mat {
        let mut m = Mat::zeros(self.rows + o.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
        }
        for i in 0..o.rows {
            for j in 0..o.cols {
                m.set(self.rows + i, self.cols + j, o.get(i, j));
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[Fq] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn row_vecs(&self) -> Vec<Vec<Fq>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }
    pub fn mul(&self, f: &Gf, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut m = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let v = f.add(m.get(i, j), f.mul(a, o.get(l, j)));
                    m.set(i, j, v);
                }
            }
        }
        m
    }
    pub fn add(&self, f: &Gf, o: &Mat) -> Mat {
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| f.add(a, b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }
    pub fn scale(&self, f: &Gf, s: Fq) -> Mat {
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }
    /// `v · self` for a row vector `v`.
    pub fn vec_mul(&self, f: &Gf, v: &[Fq]) -> Vec<Fq> {
        let mut out = vec![0; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(a, self.get(i, j)));
            }
        }
        out
    }
    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, f: &Gf, v: &[Fq]) -> Vec<Fq> {
        (0..self.rows)
            .map(|i| dot(f, self.row(i), v))
            .collect()
    }
    /// Bilinear pairing `u · self · vᵀ`.
    pub fn pair(&self, f: &Gf, u: &[Fq], v: &[Fq]) -> Fq {
        dot(f, &self.vec_mul(f, u), v)
    }
    pub fn frob(&self, f: &Gf) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.frob(a)).collect() }
    }
    /// Submatrix of the given rows.
    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat::from_rows(&idx.iter().map(|&i| self.row(i).to_vec()).collect::<Vec<_>>())
    }
    pub fn stack(&self, o: &Mat) -> Mat {
        if self.rows == 0 {
            return o.clone();
        }
        if o.rows == 0 {
            return self.clone();
        }
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        Mat { rows: self.rows + o.rows, cols: self.cols, data }
    }

    /// Reduced row echelon form with zero rows dropped, and the pivot columns.
    pub fn rref(&self, f: &Gf) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in 0..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let a = m.get(i, c);
                if a == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(a, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        (m, pivots)
    }
    pub fn rank(&self, f: &Gf) -> usize {
        self.rref(f).1.len()
    }
    pub fn det(&self, f: &Gf) -> Fq {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m.get(i, c) != 0) else { return 0 };
            if pr != c {
                for j in 0..n {
                    m.data.swap(pr * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let piv = m.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv);
            for i in c + 1..n {
                let a = f.mul(m.get(i, c), inv);
                if a == 0 {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), f.mul(a, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }
    pub fn inverse(&self, f: &Gf) -> Option<Mat> {
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, piv) = aug.rref(f);
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }
    /// Basis (as rows, in RREF) of `{x : self · x = 0}`.
    pub fn kernel(&self, f: &Gf) -> Mat {
        let (r, piv) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let mut basis = Vec::new();
        for &fc in &free {
            let mut v = vec![0; self.cols];
            v[fc] = 1;
            for (i, &pc) in piv.iter().enumerate() {
                v[pc] = f.neg(r.get(i, fc));
            }
            basis.push(v);
        }
        if basis.is_empty() {
            return Mat::zeros(0, self.cols);
        }
        Mat::from_rows(&basis).rref(f).0
    }
    /// Basis of `{x : x · self = 0}` as rows.
    pub fn left_kernel(&self, f: &Gf) -> Mat {
        self.transpose().kernel(f)
    }

    /// `poly(self)` by Horner's rule.
    pub fn eval_poly(&self, f: &Gf, poly: &Poly) -> Mat {
        let n = self.rows;
        let mut acc = Mat::zeros(n, n);
        for &c in poly.coeffs().iter().rev() {
            acc = acc.mul(f, self);
            for i in 0..n {
                let v = f.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Characteristic polynomial `det(T·I − self)`, via the minimal
    /// polynomials of Krylov blocks (exact over any field).
    pub fn charpoly(&self, f: &Gf) -> Poly {
        assert!(self.is_square());
        let n = self.rows;
        // Upper Hessenberg reduction by similarity, then the usual recurrence.
        let mut h = self.clone();
        for c in 0..n.saturating_sub(2) {
            let Some(pr) = (c + 1..n).find(|&i| h.get(i, c) != 0) else { continue };
            if pr != c + 1 {
                let r = c + 1;
                for j in 0..n {
                    h.data.swap(pr * n + j, r * n + j);
                }
                for i in 0..n {
                    h.data.swap(i * n + pr, i * n + r);
                }
            }
            let piv = h.get(c + 1, c);
            let inv = f.inv(piv);
            for i in c + 2..n {
                let a = f.mul(h.get(i, c), inv);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = f.sub(h.get(i, j), f.mul(a, h.get(c + 1, j)));
                    h.set(i, j, v);
                }
                for r in 0..n {
                    let v = f.add(h.get(r, c + 1), f.mul(a, h.get(r, i)));
                    h.set(r, c + 1, v);
                }
            }
        }
        let mut ps: Vec<Poly> = vec![Poly::one()];
        for m in 0..n {
            let t_minus = Poly::new(vec![f.neg(h.get(m, m)), 1]);
            let mut pm = t_minus.mul(f, &ps[m]);
            let mut prod = 1;
            for i in (0..m).rev() {
                prod = f.mul(prod, h.get(i + 1, i));
                let coef = f.mul(prod, h.get(i, m));
                pm = pm.sub(f, &ps[i].scale(f, coef));
            }
            ps.push(pm);
        }
        ps.pop().unwrap()
    }

    /// Minimal polynomial: lcm of the annihilators of the standard basis.
    pub fn minpoly(&self, f: &Gf) -> Poly {
        let n = self.rows;
        let mut acc = Poly::one();
        for e in 0..n {
            let mut v = vec![0; n];
            v[e] = 1;
            let ann = self.local_minpoly(f, &v);
            let g = acc.gcd(f, &ann);
            acc = acc.mul(f, &ann).div_exact(f, &g).unwrap().monic(f);
        }
        acc
    }
    fn local_minpoly(&self, f: &Gf, v: &[Fq]) -> Poly {
        let n = self.rows;
        let mut krylov: Vec<Vec<Fq>> = vec![v.to_vec()];
        loop {
            let next = self.mul_vec(f, krylov.last().unwrap());
            let k = krylov.len();
            // Solve next = Σ c_i krylov[i] if possible.
            let mut aug = Mat::zeros(n, k + 1);
            for (i, col) in krylov.iter().enumerate() {
                for r in 0..n {
                    aug.set(r, i, col[r]);
                }
            }
            for r in 0..n {
                aug.set(r, k, next[r]);
            }
            let (rr, piv) = aug.rref(f);
            if !piv.contains(&k) {
                let mut c = vec![0; k + 1];
                for (i, &pc) in piv.iter().enumerate() {
                    c[pc] = f.neg(rr.get(i, k));
                }
                c[k] = 1;
                return Poly::new(c);
            }
            krylov.push(next);
        }
    }

    /// Companion matrix of a monic polynomial, acting on columns:
    /// `e_i ↦ e_{i+1}`, `e_{n-1} ↦ −Σ c_i e_i`.
    pub fn companion(f: &Gf, poly: &Poly) -> Mat {
        let n = poly.deg();
        let mut m = Mat::zeros(n, n);
        for i in 1..n {
            m.set(i, i - 1, 1);
        }
        for i in 0..n {
            m.set(i, n - 1, f.neg(poly.coeff(i)));
        }
        m
    }
}

pub fn dot(f: &Gf, a: &[Fq], b: &[Fq]) -> Fq {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// RREF basis of the sum of two row spaces.
pub fn span_sum(f: &Gf, a: &Mat, b: &Mat) -> Mat {
    a.stack(b).rref(f).0
}

/// RREF basis of the intersection of two row spaces in `F^n`.
pub fn span_intersection(f: &Gf, a: &Mat, b: &Mat) -> Mat {
    let n = a.cols.max(b.cols);
    if a.rows == 0 || b.rows == 0 {
        return Mat::zeros(0, n);
    }
    // x·A = y·B  ⇔  (x, −y) · [A; B] = 0.
    let stacked = a.stack(&b.scale(f, f.neg(1)));
    let k = stacked.left_kernel(f);
    let mut rows = Vec::new();
    for i in 0..k.rows {
        let x = &k.row(i)[..a.rows];
        rows.push(a.vec_mul(f, x));
    }
    if rows.is_empty() {
        return Mat::zeros(0, n);
    }
    Mat::from_rows(&rows).rref(f).0
}

/// Whether every row of `a` lies in the row space of `b`.
pub fn span_contains(f: &Gf, b: &Mat, a: &Mat) -> bool {
    if a.rows == 0 {
        return true;
    }
    b.stack(a).rank(f) == b.rank(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_companion() {
        let f = Gf::new(3, 2).unwrap();
        let p = Poly::new(vec![2, 5, 0, 7, 1]);
        let c = Mat::companion(&f, &p);
        assert_eq!(c.charpoly(&f), p);
        assert_eq!(c.minpoly(&f), p);
        assert!(c.eval_poly(&f, &p).is_zero());
    }

    #[test]
    fn charpoly_matches_det() {
        let f = Gf::prime(5).unwrap();
        let m = Mat::from_ints(&f, &[vec![1, 2, 0], vec![3, 4, 1], vec![0, 2, 2]]);
        let cp = m.charpoly(&f);
        for t in f.elements() {
            let mut tm = m.scale(&f, f.neg(1));
            for i in 0..3 {
                let v = f.add(tm.get(i, i), t);
                tm.set(i, i, v);
            }
            assert_eq!(cp.eval(&f, t), tm.det(&f));
        }
    }

    #[test]
    fn intersection_and_kernel() {
        let f = Gf::prime(3).unwrap();
        let a = Mat::from_ints(&f, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let b = Mat::from_ints(&f, &[vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(span_intersection(&f, &a, &b), Mat::from_ints(&f, &[vec![0, 1, 0]]));
        let m = Mat::from_ints(&f, &[vec![1, 1, 1]]);
        assert_eq!(m.kernel(&f).rows, 2);
        let inv = Mat::from_ints(&f, &[vec![1, 1], vec![0, 1]]).inverse(&f).unwrap();
        assert_eq!(inv, Mat::from_ints(&f, &[vec![1, 2], vec![0, 1]]));
    }
}
