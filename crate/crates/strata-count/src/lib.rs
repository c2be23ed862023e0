//! Point counts over `F_{p^k}` for the closed Deligne–Lusztig varieties
//! `S_{Ω₀}`, their Fermat and Klingen surface models, the comparison with
//! a nonsplit even orthogonal space, and the singular locus of the local
//! model.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use ffpoly::{FfError, Fq, Gf, Mat};
use quadspace_fq::{enumerate_isotropic_subspaces, enumerate_subspaces_with, BilinearSpace, Budget, QsError, Subspace};
use serde::Serialize;

pub mod hypersurface;

pub use hypersurface::{
    common_zeros, count_hypersurface, fermat_count, fermat_polynomial, klingen_count, klingen_polynomial,
    local_model_singular, HomPoly, Term,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
}

impl From<QsError> for ScError {
    fn from(e: QsError) -> Self {
        match e {
            QsError::ResourceLimit(s) => ScError::ResourceLimit(s),
            other => ScError::InvalidInput(other.to_string()),
        }
    }
}

impl From<FfError> for ScError {
    fn from(e: FfError) -> Self {
        ScError::from(QsError::from(e))
    }
}

fn field(p: u32, k: u32, budget: &Budget) -> Result<Arc<Gf>, ScError> {
    if k == 0 {
        return Err(ScError::InvalidInput("k must be positive".into()));
    }
    let f = Gf::new(p, k)?;
    budget.check_field(&f)?;
    Ok(Arc::new(f))
}

/// `Ω₀` of dimension `2m+1` over `F_p` in an elementary basis:
/// `[e_i, e_{2m+2-i}] = 1` for `i ≠ m+1` and `[e_{m+1}, e_{m+1}] = 1`.
pub fn omega0(m: usize, p: u32) -> Result<BilinearSpace, ScError> {
    let f = Arc::new(Gf::prime(p)?);
    let n = 2 * m + 1;
    let mut g = Mat::zeros(n, n);
    for i in 0..n {
        g.set(i, n - 1 - i, 1);
    }
    Ok(BilinearSpace::symmetric(f, g)?)
}

/// Stratum of an `m`-dimensional totally isotropic `L` over `F_{p^k}`:
/// `None` when `rk(L ∩ σL) < m − 1`, else the number of steps before
/// `L ⊇ L∩σL ⊇ L∩σL∩σ²L ⊇ …` stabilizes.
pub fn stratum_index(f: &Gf, l: &Subspace) -> Option<u32> {
    let m = l.dim();
    if l.intersect(f, &l.frob(f)).dim() + 1 < m {
        return None;
    }
    let mut cur = l.clone();
    let mut r = 0;
    loop {
        let next = cur.intersect(f, &cur.frob(f));
        if next == cur {
            return Some(r);
        }
        cur = next;
        r += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumReport {
    pub m: usize,
    pub p: u32,
    pub k: u32,
    pub strata: BTreeMap<u32, u64>,
    pub total: u64,
    /// Maximal isotropic subspaces outside `S`.
    pub excluded: u64,
}

/// All `F_{p^k}`-points of `S_{Ω₀}` with their stratum index.
pub fn s_points(m: usize, p: u32, k: u32, budget: &Budget) -> Result<(Vec<(Subspace, u32)>, u64), ScError> {
    if m > 2 {
        return Err(ScError::InvalidInput("m must be at most 2".into()));
    }
    let f = field(p, k, budget)?;
    let sp = omega0(m, p)?.base_change(f.clone());
    let mut pts = Vec::new();
    let mut excluded = 0;
    let mut over = false;
    enumerate_subspaces_with(&sp, m, budget, |basis| {
        if pts.len() + excluded as usize >= budget.max_subspaces {
            over = true;
            return false;
        }
        let l = Subspace { basis: basis.clone() };
        match stratum_index(&f, &l) {
            Some(i) => pts.push((l, i)),
            None => excluded += 1,
        }
        true
    })?;
    if over {
        return Err(ScError::ResourceLimit(format!("more than {} subspaces", budget.max_subspaces)));
    }
    Ok((pts, excluded))
}

pub fn count_s(m: usize, p: u32, k: u32, budget: &Budget) -> Result<StratumReport, ScError> {
    let (pts, excluded) = s_points(m, p, k, budget)?;
    let mut strata: BTreeMap<u32, u64> = (0..=m as u32).map(|i| (i, 0)).collect();
    for (_, i) in &pts {
        *strata.entry(*i).or_default() += 1;
    }
    Ok(StratumReport { m, p, k, total: pts.len() as u64, strata, excluded })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvenComponent {
    /// `dim(L ∩ L_ref) mod 2`.
    pub label: u32,
    pub lagrangians: u64,
    /// Those with `rk(L ∩ Φ̄L) = m`.
    pub in_model: u64,
    pub images: u64,
    pub injective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvenModelReport {
    pub m: usize,
    pub p: u32,
    /// `Q(ω)` as an integer mod p.
    pub omega_norm: u32,
    pub components: Vec<EvenComponent>,
    /// Every `q(L)` is an isotropic `m`-space of `ω^⊥` lying in `S_{Ω₀}`.
    pub lands_in_s: bool,
    pub s_total: u64,
    pub ok: bool,
}

/// Nonsplit `H ⊕ ⟨1⟩ ⊕ ⟨−ε⟩` over `F_p` with `ω = e₄`.
fn nonsplit_four(p: u32) -> Result<(BilinearSpace, Vec<Fq>), ScError> {
    let f = Arc::new(Gf::prime(p)?);
    let eps = (2..p).find(|&a| !f.is_square(a)).expect("odd p has a nonresidue");
    let g = Mat::from_ints(&f, &[vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, -(eps as i64)]]);
    let sp = BilinearSpace::symmetric(f, g)?;
    let omega = vec![0, 0, 0, 1];
    if sp.pair(&omega, &omega) == 0 {
        return Err(ScError::InvalidInput("ω must be anisotropic".into()));
    }
    if sp.witt_decompose()?.witt_index != 1 {
        return Err(ScError::InvalidInput("ambient must be nonsplit".into()));
    }
    Ok((sp, omega))
}

/// Reflection `x ↦ x − 2[x,ω]/[ω,ω]·ω` as a right-multiplication matrix.
fn reflection(f: &Gf, gram: &Mat, omega: &[Fq]) -> Mat {
    let n = omega.len();
    let gw = gram.mul_vec(f, omega);
    let c = f.div(f.from_int(2), gram.pair(f, omega, omega));
    let mut r = Mat::identity(n);
    for i in 0..n {
        for j in 0..n {
            r.set(i, j, f.sub(r.get(i, j), f.mul(c, f.mul(gw[i], omega[j]))));
        }
    }
    r
}

/// Compares the Lagrangians of the nonsplit 4-space over `F_{p²}` lying in
/// the even model with `S_{Ω₀}` for `Ω₀ = ω^⊥`, through `q(L) = L ∩ π̄(L)`.
pub fn even_model_check(m: usize, p: u32, budget: &Budget) -> Result<EvenModelReport, ScError> {
    if m != 1 {
        return Err(ScError::InvalidInput("only m = 1 is supported".into()));
    }
    let (base, omega) = nonsplit_four(p)?;
    let f = field(p, 2, budget)?;
    let sp = base.base_change(f.clone());
    let refl = reflection(&f, &sp.gram, &omega);
    let lags = enumerate_isotropic_subspaces(&sp, 2, budget)?;
    let omega_perp = sp.perp(&Subspace::new(&f, &Mat::from_rows(std::slice::from_ref(&omega))));
    let lref = lags.first().ok_or_else(|| ScError::InvalidInput("no Lagrangians found".into()))?.clone();
    let mut comps: BTreeMap<u32, (u64, u64, BTreeSet<Subspace>, bool)> = BTreeMap::new();
    let mut lands = true;
    for l in &lags {
        let label = (l.intersect(&f, &lref).dim() % 2) as u32;
        let e = comps.entry(label).or_insert((0, 0, BTreeSet::new(), true));
        e.0 += 1;
        if l.intersect(&f, &l.frob(&f)).dim() != m {
            continue;
        }
        e.1 += 1;
        let ql = l.intersect(&f, &l.image_rows(&f, &refl));
        let good = ql.dim() == m
            && sp.is_totally_isotropic(&ql)
            && omega_perp.contains(&f, &ql)
            && ql.intersect(&f, &ql.frob(&f)).dim() + 1 >= m;
        lands &= good;
        if !e.2.insert(ql) {
            e.3 = false;
        }
    }
    let s_total = count_s(m, p, 2, budget)?.total;
    let components: Vec<EvenComponent> = comps
        .into_iter()
        .map(|(label, (n, inm, imgs, inj))| EvenComponent {
            label,
            lagrangians: n,
            in_model: inm,
            images: imgs.len() as u64,
            injective: inj,
        })
        .collect();
    let ok = lands && components.len() == 2 && components.iter().all(|c| c.injective && c.images == s_total);
    Ok(EvenModelReport { m, p, omega_norm: base.pair(&omega, &omega), components, lands_in_s: lands, s_total, ok })
}
