//! Homogeneous polynomials with integer coefficients and their projective
//! zero sets over `F_{p^k}`.

use ffpoly::{Fq, Gf};
use quadspace_fq::Budget;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ScError;

pub const MAX_VARS: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coef: i64,
    pub exps: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomPoly {
    pub nvars: usize,
    pub terms: Vec<Term>,
}

impl HomPoly {
    pub fn new(nvars: usize, terms: Vec<Term>) -> Result<Self, ScError> {
        if nvars == 0 || nvars > MAX_VARS {
            return Err(ScError::InvalidInput(format!("between 1 and {MAX_VARS} variables required")));
        }
        let terms: Vec<Term> = terms.into_iter().filter(|t| t.coef != 0).collect();
        if terms.iter().any(|t| t.exps.len() != nvars) {
            return Err(ScError::InvalidInput("exponent vector length differs from nvars".into()));
        }
        let degs: Vec<u32> = terms.iter().map(|t| t.exps.iter().sum()).collect();
        if degs.windows(2).any(|w| w[0] != w[1]) {
            return Err(ScError::InvalidInput("polynomial is not homogeneous".into()));
        }
        Ok(HomPoly { nvars, terms })
    }

    pub fn zero(nvars: usize) -> Result<Self, ScError> {
        Self::new(nvars, Vec::new())
    }

    /// Sum of `x_i^e` over all variables.
    pub fn power_sum(nvars: usize, e: u32) -> Result<Self, ScError> {
        let terms = (0..nvars)
            .map(|i| {
                let mut exps = vec![0; nvars];
                exps[i] = e;
                Term { coef: 1, exps }
            })
            .collect();
        Self::new(nvars, terms)
    }

    /// Parses expressions like `x0^4 + 2*x1*x3 - x2^2`; variables are
    /// `x0 … x{nvars-1}`.
    pub fn parse(s: &str, nvars: usize) -> Result<Self, ScError> {
        let bad = |m: &str| ScError::InvalidInput(format!("cannot parse polynomial {s:?}: {m}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() || compact == "0" {
            return Self::zero(nvars);
        }
        let mut pieces: Vec<(i64, &str)> = Vec::new();
        let mut start = 0;
        let mut sign = 1;
        let bytes = compact.as_bytes();
        for i in 0..=bytes.len() {
            if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && i > 0 && bytes[i - 1] != b'^') {
                if i > start {
                    pieces.push((sign, &compact[start..i]));
                } else if i > 0 {
                    return Err(bad("empty term"));
                }
                if i < bytes.len() {
                    sign = if bytes[i] == b'-' { -1 } else { 1 };
                }
                start = i + 1;
            } else if i == 0 && (bytes[0] == b'+' || bytes[0] == b'-') {
                sign = if bytes[0] == b'-' { -1 } else { 1 };
                start = 1;
            }
        }
        let mut terms = Vec::new();
        for (sg, body) in pieces {
            let mut coef = sg;
            let mut exps = vec![0u32; nvars];
            for factor in body.split('*') {
                if let Some(rest) = factor.strip_prefix('x') {
                    let (idx, e) = match rest.split_once('^') {
                        Some((a, b)) => (a, b.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                        None => (rest, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| bad("bad variable index"))?;
                    if idx >= nvars {
                        return Err(bad("variable index out of range"));
                    }
                    exps[idx] += e;
                } else {
                    let c: i64 = factor.parse().map_err(|_| bad("bad coefficient"))?;
                    coef = coef.checked_mul(c).ok_or_else(|| bad("coefficient overflow"))?;
                }
            }
            terms.push(Term { coef, exps });
        }
        Self::new(nvars, terms)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.exps.iter().sum())
    }

    /// Formal partial derivative, coefficients kept over `Z`.
    pub fn derivative(&self, i: usize) -> HomPoly {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.exps[i] > 0)
            .map(|t| {
                let mut exps = t.exps.clone();
                exps[i] -= 1;
                Term { coef: t.coef * t.exps[i] as i64, exps }
            })
            .collect();
        HomPoly { nvars: self.nvars, terms }
    }

    pub fn eval(&self, f: &Gf, x: &[Fq]) -> Fq {
        let mut acc = 0;
        for t in &self.terms {
            let mut v = f.from_int(t.coef);
            for (&xi, &e) in x.iter().zip(&t.exps) {
                if v == 0 {
                    break;
                }
                if e > 0 {
                    v = f.mul(v, f.pow(xi, e as u64));
                }
            }
            acc = f.add(acc, v);
        }
        acc
    }
}

fn point(q: u64, n: usize, lead: usize, mut t: u64) -> Vec<Fq> {
    let mut x = vec![0; n];
    x[lead] = 1;
    for xi in x.iter_mut().skip(lead + 1) {
        *xi = (t % q) as Fq;
        t /= q;
    }
    x
}

fn field(p: u32, k: u32, budget: &Budget) -> Result<Gf, ScError> {
    let f = Gf::new(p, k)?;
    budget.check_field(&f)?;
    Ok(f)
}

/// Projective points of `P^{n-1}(F_q)` accepted by `visit`, normalized so
/// the first nonzero coordinate is 1, in enumeration order.
fn scan<T: Send>(f: &Gf, n: usize, visit: impl Fn(&[Fq]) -> Option<T> + Sync) -> Vec<T> {
    let q = f.q() as u64;
    let mut out = Vec::new();
    for lead in 0..n {
        let total = q.pow((n - 1 - lead) as u32);
        let part: Vec<T> = (0..total).into_par_iter().filter_map(|t| visit(&point(q, n, lead, t))).collect();
        out.extend(part);
    }
    out
}

/// Number of projective zeros of `poly` over `F_{p^k}`.
pub fn count_hypersurface(poly: &HomPoly, p: u32, k: u32, budget: &Budget) -> Result<u64, ScError> {
    let f = field(p, k, budget)?;
    let hits = scan(&f, poly.nvars, |x| (poly.eval(&f, x) == 0).then_some(()));
    Ok(hits.len() as u64)
}

/// Common projective zeros of several forms, as normalized coordinates.
pub fn common_zeros(polys: &[HomPoly], p: u32, k: u32, budget: &Budget) -> Result<Vec<Vec<Fq>>, ScError> {
    let Some(first) = polys.first() else { return Err(ScError::InvalidInput("no polynomials".into())) };
    if polys.iter().any(|g| g.nvars != first.nvars) {
        return Err(ScError::InvalidInput("polynomials in different numbers of variables".into()));
    }
    let f = field(p, k, budget)?;
    Ok(scan(&f, first.nvars, |x| polys.iter().all(|g| g.eval(&f, x) == 0).then(|| x.to_vec())))
}

pub fn fermat_polynomial(p: u32) -> HomPoly {
    HomPoly::power_sum(4, p + 1).expect("valid")
}

/// `x₀x₃^p − x₀^p x₃ + x₁x₂^p − x₁^p x₂`.
pub fn klingen_polynomial(p: u32) -> HomPoly {
    let t = |coef: i64, exps: [u32; 4]| Term { coef, exps: exps.to_vec() };
    HomPoly::new(4, vec![t(1, [1, 0, 0, p]), t(-1, [p, 0, 0, 1]), t(1, [0, 1, p, 0]), t(-1, [0, p, 1, 0])]).expect("valid")
}

pub fn fermat_count(p: u32, k: u32, budget: &Budget) -> Result<u64, ScError> {
    count_hypersurface(&fermat_polynomial(p), p, k, budget)
}

pub fn klingen_count(p: u32, k: u32, budget: &Budget) -> Result<u64, ScError> {
    count_hypersurface(&klingen_polynomial(p), p, k, budget)
}

/// Singular points of the special fiber `x₁x₄ + x₂x₃ = 0` in `P⁴`.
pub fn local_model_singular(p: u32, k: u32, budget: &Budget) -> Result<Vec<Vec<Fq>>, ScError> {
    let t = |exps: [u32; 5]| Term { coef: 1, exps: exps.to_vec() };
    let g = HomPoly::new(5, vec![t([1, 0, 0, 1, 0]), t([0, 1, 1, 0, 0])])?;
    let mut system = vec![g.clone()];
    system.extend((0..5).map(|i| g.derivative(i)));
    let mut pts = common_zeros(&system, p, k, budget)?;
    pts.sort();
    Ok(pts)
}
