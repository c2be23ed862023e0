//! Intersection numbers `⟨Δ, gΔ⟩` of GGP cycles for minuscule `g`, read
//! off the reduced characteristic polynomial `P` of `ḡ`, with brute-force
//! fixed-point and Jordan-block oracles.
//!
//! Polynomials are coefficient lists over `F_p`, constant term first.

use std::sync::Arc;

use ffpoly::{factor, is_prime, reciprocal, sr_partition, FfError, Gf, Poly};
use quadspace_fq::QsError;
use rayon::prelude::*;
use serde::Serialize;

pub mod oracle;
pub mod realize;

pub use oracle::{oracle_dl_fixed_points, oracle_multiplicity, splitting_degree, DlOracle, MultOracle, PointMultiplicity};
pub use realize::{realize_orthogonal, realize_orthogonal_classes, OrthRealization};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GgError {
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("degree {0} is odd")]
    OddDegree(usize),
    #[error("degree {0} is not one of 2, 4, 6")]
    DegreeOutOfRange(usize),
    #[error("constant term is zero")]
    ZeroConstant,
    #[error("polynomial is not self-reciprocal (its reciprocal is {0})")]
    NotSelfReciprocal(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no nondegenerate invariant symmetric form (solution space of dimension {solution_dim})")]
    RealizationFailure { solution_dim: usize },
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

impl From<FfError> for GgError {
    fn from(e: FfError) -> Self {
        match e {
            FfError::ResourceLimit(s) => GgError::ResourceLimit(s),
            FfError::InvalidInput(s) => GgError::InvalidInput(s),
        }
    }
}

impl From<QsError> for GgError {
    fn from(e: QsError) -> Self {
        match e {
            QsError::ResourceLimit(s) => GgError::ResourceLimit(s),
            QsError::UnsupportedInput(s) => GgError::Unsupported(s),
            other => GgError::InvalidInput(other.to_string()),
        }
    }
}

/// A validated polynomial `P` of degree 2, 4 or 6 over `F_p`.
#[derive(Debug, Clone)]
pub struct GgpInput {
    pub f: Arc<Gf>,
    pub poly: Poly,
}

impl GgpInput {
    pub fn p(&self) -> u32 {
        self.f.p()
    }
    pub fn degree(&self) -> usize {
        self.poly.deg()
    }
    pub fn coeffs(&self) -> Vec<u32> {
        self.poly.coeffs().to_vec()
    }
}

pub fn validate(p: u32, coeffs: &[i64]) -> Result<GgpInput, GgError> {
    if p == 2 || !is_prime(p as u64) {
        return Err(GgError::InvalidInput(format!("{p} is not an odd prime")));
    }
    let f = Arc::new(Gf::prime(p)?);
    let poly = Poly::from_ints(&f, coeffs);
    validate_poly(f, poly)
}

pub fn validate_poly(f: Arc<Gf>, poly: Poly) -> Result<GgpInput, GgError> {
    if poly.is_zero() || !poly.is_monic() {
        return Err(GgError::NotMonic);
    }
    let d = poly.deg();
    if d % 2 == 1 {
        return Err(GgError::OddDegree(d));
    }
    if !matches!(d, 2 | 4 | 6) {
        return Err(GgError::DegreeOutOfRange(d));
    }
    if poly.constant() == 0 {
        return Err(GgError::ZeroConstant);
    }
    let r = reciprocal(&f, &poly)?;
    if r != poly {
        return Err(GgError::NotSelfReciprocal(r.pretty()));
    }
    Ok(GgpInput { f, poly })
}

/// Self-reciprocal irreducible factors of odd multiplicity.
pub fn odd_sr_factors(input: &GgpInput) -> Result<Vec<(Poly, u32)>, GgError> {
    let fz = factor(&input.f, &input.poly)?;
    let part = sr_partition(&input.f, &fz)?;
    Ok(part.sr.into_iter().filter(|(_, m)| m % 2 == 1).collect())
}

/// `Q_g` and `m(Q_g)` when exactly one self-reciprocal factor has odd
/// multiplicity.
pub fn find_qg(input: &GgpInput) -> Result<Option<(Poly, u32)>, GgError> {
    let mut odd = odd_sr_factors(input)?;
    Ok(if odd.len() == 1 { odd.pop() } else { None })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedForm {
    pub fixed_count: u64,
    pub c_value: u32,
    pub multiplicity: u64,
}

pub fn closed_form(input: &GgpInput) -> Result<ClosedForm, GgError> {
    let Some((q, m)) = find_qg(input)? else {
        return Ok(ClosedForm { fixed_count: 0, c_value: 0, multiplicity: 0 });
    };
    let fz = factor(&input.f, &input.poly)?;
    let part = sr_partition(&input.f, &fz)?;
    let prod: u64 = part.nsr_classes.iter().map(|c| 1 + c.multiplicity as u64).product();
    let fixed_count = q.deg() as u64 * prod;
    let c_value = m.div_ceil(2);
    if c_value > 2 {
        return Err(GgError::InternalInvariantViolation(format!("c = {c_value} exceeds 2")));
    }
    Ok(ClosedForm { fixed_count, c_value, multiplicity: fixed_count * c_value as u64 })
}

/// `#{R monic : P = R·Q·R*}` by search over divisors of `P/Q`.
pub fn beta_count(input: &GgpInput, q: &Poly) -> Result<u64, GgError> {
    let f = &*input.f;
    let rest = input
        .poly
        .div_exact(f, q)
        .ok_or_else(|| GgError::InvalidInput(format!("{} does not divide P", q.pretty())))?;
    if !ffpoly::is_self_reciprocal(f, q) {
        return Err(GgError::InvalidInput(format!("{} is not self-reciprocal", q.pretty())));
    }
    if rest.deg() == 0 {
        return Ok(1);
    }
    let fz = factor(f, &rest)?;
    let mut count = 0;
    let mut e = vec![0u32; fz.factors.len()];
    loop {
        let r = fz.factors.iter().zip(&e).fold(Poly::one(), |acc, ((g, _), &k)| acc.mul(f, &g.pow(f, k)));
        if 2 * r.deg() == rest.deg() && r.mul(f, &reciprocal(f, &r)?) == rest {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == e.len() {
                return Ok(count);
            }
            e[i] += 1;
            if e[i] <= fz.factors[i].1 {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Oracles {
    pub beta: u64,
    pub dl: Option<u64>,
    pub mult: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GgpReport {
    pub p: u32,
    #[serde(rename = "P")]
    pub poly: Vec<u32>,
    #[serde(rename = "Qg")]
    pub qg: Option<Vec<u32>>,
    pub fixed: u64,
    pub c: u32,
    pub multiplicity: u64,
    pub oracles: Oracles,
    pub agree: bool,
}

/// Closed form plus every oracle that applies. The DL and multiplicity
/// oracles are `None` when no invariant form exists or the Jordan-block
/// hypothesis `p > c` fails.
pub fn evaluate(input: &GgpInput) -> Result<GgpReport, GgError> {
    let cf = closed_form(input)?;
    let qg = find_qg(input)?;
    let beta = match &qg {
        Some((q, _)) => beta_count(input, q)?,
        None => 0,
    };
    let mut agree = match &qg {
        Some((q, _)) => cf.fixed_count == q.deg() as u64 * beta,
        None => cf.fixed_count == 0,
    };
    let (mut dl, mut mult) = (None, None);
    match realize_orthogonal(input) {
        Ok(real) => {
            agree &= real.certified;
            let d = oracle_dl_fixed_points(input, &real)?;
            dl = Some(d.count() as u64);
            agree &= d.count() as u64 == cf.fixed_count;
            match oracle_multiplicity(input, &real, &d) {
                Ok(mo) => {
                    agree &= mo.total == cf.multiplicity && mo.per_point.iter().all(|x| x.c == cf.c_value);
                    mult = Some(mo.total);
                }
                Err(GgError::Unsupported(_)) => {}
                Err(e) => return Err(e),
            }
        }
        Err(GgError::RealizationFailure { .. }) => {}
        Err(e) => return Err(e),
    }
    Ok(GgpReport {
        p: input.p(),
        poly: input.coeffs(),
        qg: qg.map(|(q, _)| q.coeffs().to_vec()),
        fixed: cf.fixed_count,
        c: cf.c_value,
        multiplicity: cf.multiplicity,
        oracles: Oracles { beta, dl, mult },
        agree,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogFailure {
    #[serde(rename = "P")]
    pub poly: Vec<u32>,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Catalog {
    pub p: u32,
    pub degrees: Vec<usize>,
    pub entries: Vec<GgpReport>,
    pub failures: Vec<CatalogFailure>,
    pub all_agree: bool,
}

/// Every valid input of the given degrees over `F_p`, in the order of
/// `monic_of_degree`.
pub fn valid_inputs(p: u32, degrees: &[usize]) -> Result<Vec<GgpInput>, GgError> {
    if !matches!(p, 3 | 5) {
        return Err(GgError::InvalidInput("catalog needs p ∈ {3, 5}".into()));
    }
    let f = Arc::new(Gf::prime(p)?);
    let mut out = Vec::new();
    for &d in degrees {
        for poly in ffpoly::monic_of_degree(&f, d) {
            if let Ok(i) = validate_poly(f.clone(), poly) {
                out.push(i);
            }
        }
    }
    Ok(out)
}

pub fn catalog(p: u32, degrees: &[usize]) -> Result<Catalog, GgError> {
    let inputs = valid_inputs(p, degrees)?;
    let results: Vec<Result<GgpReport, CatalogFailure>> = inputs
        .par_iter()
        .map(|i| evaluate(i).map_err(|e| CatalogFailure { poly: i.coeffs(), error: e.to_string() }))
        .collect();
    let mut entries = Vec::new();
    let mut failures = Vec::new();
    for r in results {
        match r {
            Ok(e) => entries.push(e),
            Err(e) => failures.push(e),
        }
    }
    let all_agree = entries.iter().all(|e| e.agree);
    Ok(Catalog { p, degrees: degrees.to_vec(), entries, failures, all_agree })
}
