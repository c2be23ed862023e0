use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use ffpoly::Gf;
use padic_forms::vertex::lphi_pi_ambient;
use padic_forms::{vertex_witnesses, vrt_ball, PLattice, TypedGraph, VrtBall};
use quadspace_fq::{
    complementary_lagrangians, count_isotropic_subspaces, enumerate_isotropic_subspaces, BilinearSpace, Budget,
};
use serde::Serialize;
use serde_json::{json, Value};
use sp_building::{building_ball, standard_v0, typed_iso_check, vertex_of, BBall, IsoOutcome};
use strata_count::{
    count_hypersurface, count_s, even_model_check, fermat_count, klingen_count, local_model_singular, HomPoly,
};

use crate::{CliError, Command, RunConfig};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub name: String,
    pub formula: u64,
    /// One enumerated value per instance.
    pub enumerated: Vec<u64>,
    pub agree: bool,
}

fn row(name: impl Into<String>, formula: u64, enumerated: Vec<u64>) -> CountRow {
    let agree = !enumerated.is_empty() && enumerated.iter().all(|&e| e == formula);
    CountRow { name: name.into(), formula, enumerated, agree }
}

/// Isotropic counts in `H^t ⊕ ⟨1⟩`, `H^2` and `H` over `F_p`.
pub fn quad_table(p: u32, budget: &Budget) -> Result<Vec<CountRow>, CliError> {
    if p == 2 {
        return Err(CliError::Invalid("odd p only".into()));
    }
    let f = Arc::new(Gf::prime(p)?);
    let q = p as u64;
    let mut rows = Vec::new();
    for t in 1..=2usize {
        let v = BilinearSpace::hyperbolic_sum(f.clone(), t, &[1]);
        let want = (0..2 * t as u32).map(|i| q.pow(i)).sum();
        rows.push(row(format!("isotropic lines in H^{t}+<1>"), want, vec![count_isotropic_subspaces(&v, 1, budget)?]));
    }
    let v = BilinearSpace::hyperbolic_sum(f.clone(), 2, &[1]);
    rows.push(row("maximal isotropics in H^2+<1>", (q + 1) * (q * q + 1), vec![count_isotropic_subspaces(&v, 2, budget)?]));
    let h2 = BilinearSpace::hyperbolic_sum(f.clone(), 2, &[]);
    rows.push(row("maximal isotropics in H^2", 2 * (q + 1), vec![count_isotropic_subspaces(&h2, 2, budget)?]));
    let h = BilinearSpace::hyperbolic_sum(f, 1, &[]);
    rows.push(row("isotropic lines in H", 2, vec![count_isotropic_subspaces(&h, 1, budget)?]));
    let lags = enumerate_isotropic_subspaces(&h2, 2, budget)?;
    let comp = lags.iter().map(|w| complementary_lagrangians(&h2, w, budget)).collect::<Result<_, _>>()?;
    rows.push(row("complementary Lagrangians in H^2", q, comp));
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BallSummary {
    pub vertices: usize,
    pub edges: usize,
    pub types: BTreeMap<u32, usize>,
    pub graph: TypedGraph,
    pub distance: Vec<u32>,
}

fn summary(g: &TypedGraph, distance: &[u32]) -> BallSummary {
    let mut types = BTreeMap::new();
    for &t in &g.types {
        *types.entry(t).or_insert(0) += 1;
    }
    BallSummary { vertices: g.len(), edges: g.edges.len(), types, graph: g.clone(), distance: distance.to_vec() }
}

/// Distinct `(hs neighbors, nsp neighbors)` pairs over interior vertices,
/// split by whether the vertex is non-special.
pub fn degree_profile(g: &TypedGraph, distance: &[u32], radius: u32, nsp: u32) -> BTreeMap<&'static str, BTreeSet<(usize, usize)>> {
    let adj = g.adjacency();
    let mut out: BTreeMap<&str, BTreeSet<(usize, usize)>> = BTreeMap::new();
    for v in 0..g.len() {
        if distance[v] >= radius {
            continue;
        }
        let n_nsp = adj[v].iter().filter(|&&w| g.types[w] == nsp).count();
        let key = if g.types[v] == nsp { "nsp" } else { "hs" };
        out.entry(key).or_default().insert((adj[v].len() - n_nsp, n_nsp));
    }
    out
}

pub fn expected_profile(p: u32) -> BTreeMap<&'static str, BTreeSet<(usize, usize)>> {
    let q = p as usize;
    let big = (q + 1) * (q * q + 1);
    BTreeMap::from([("hs", BTreeSet::from([(big, big)])), ("nsp", BTreeSet::from([(2 * (q + 1), 0)]))])
}

/// Checks that `map` is a bijection sending building type 2 to type 1,
/// other types to 5, and edges onto edges.
pub fn mapping_is_isomorphism(b: &TypedGraph, v: &TypedGraph, map: &[usize]) -> bool {
    if map.len() != b.len() || b.len() != v.len() || b.edges.len() != v.edges.len() {
        return false;
    }
    let image: BTreeSet<usize> = map.iter().copied().collect();
    if image.len() != map.len() || image.iter().any(|&x| x >= v.len()) {
        return false;
    }
    let types_ok = (0..b.len()).all(|i| v.types[map[i]] == if b.types[i] == 2 { 1 } else { 5 });
    types_ok && b.edges.iter().all(|e| v.has_edge(map[e.a], map[e.b]))
}

pub fn balls(p: u32, r: u32, budget: &Budget) -> Result<(BBall, VrtBall), CliError> {
    let amb = standard_v0(p)?;
    let v0 = vertex_of(&PLattice::standard(&amb))?;
    let bb = building_ball(&v0, r, budget)?;
    let center = vertex_witnesses(&lphi_pi_ambient(p)?)?[2].clone();
    let vb = vrt_ball(&center, r, budget)?;
    Ok((bb, vb))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Correspondence {
    pub p: u32,
    pub radius: u32,
    pub building: BallSummary,
    pub vrt: BallSummary,
    pub building_degrees: BTreeMap<&'static str, BTreeSet<(usize, usize)>>,
    pub vrt_degrees: BTreeMap<&'static str, BTreeSet<(usize, usize)>>,
    pub degrees_ok: bool,
    pub verdict: &'static str,
    /// `mapping[b]` is the vertex-lattice vertex matched to building vertex `b`.
    pub mapping: Option<Vec<usize>>,
    pub failure: Option<String>,
    pub mapping_checked: bool,
}

pub fn correspondence(p: u32, r: u32, budget: &Budget) -> Result<Correspondence, CliError> {
    let (bb, vb) = balls(p, r, budget)?;
    let building_degrees = degree_profile(&bb.graph, &bb.distance, r, 2);
    let vrt_degrees = degree_profile(&vb.graph, &vb.distance, r, 1);
    let want = expected_profile(p);
    let fits = |d: &BTreeMap<&str, BTreeSet<(usize, usize)>>| d.contains_key("hs") && d.iter().all(|(k, v)| want.get(k) == Some(v));
    let degrees_ok = fits(&building_degrees) && fits(&vrt_degrees);
    let (mapping, failure) = match typed_iso_check(&bb.graph, &vb.graph) {
        IsoOutcome::Mapping(m) => (Some(m), None),
        IsoOutcome::Failure(s) => (None, Some(s)),
    };
    let mapping_checked = mapping.as_ref().is_some_and(|m| mapping_is_isomorphism(&bb.graph, &vb.graph, m));
    Ok(Correspondence {
        p,
        radius: r,
        building: summary(&bb.graph, &bb.distance),
        vrt: summary(&vb.graph, &vb.distance),
        building_degrees,
        vrt_degrees,
        degrees_ok,
        verdict: if mapping_checked { "isomorphic" } else { "not isomorphic" },
        mapping,
        failure,
        mapping_checked,
    })
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

/// The `result` part of a report and whether its checks pass.
pub fn execute(cfg: &RunConfig) -> Result<(Value, bool), CliError> {
    let (p, k, b) = (cfg.p, cfg.k, &cfg.budget);
    Ok(match &cfg.command {
        Command::QuadCounts => {
            let rows = quad_table(p, b)?;
            let ok = rows.iter().all(|r| r.agree);
            (json!({ "p": p, "rows": rows }), ok)
        }
        Command::Vrt | Command::Building => {
            let c = correspondence(p, cfg.radius, b)?;
            let ok = c.mapping_checked && c.degrees_ok;
            (to_value(&c), ok)
        }
        Command::StrataS { m } => (to_value(&count_s(*m, p, k, b)?), true),
        Command::StrataFermat => (json!({ "p": p, "k": k, "count": fermat_count(p, k, b)? }), true),
        Command::StrataKlingen => (json!({ "p": p, "k": k, "count": klingen_count(p, k, b)? }), true),
        Command::StrataLocalModel => {
            let pts = local_model_singular(p, k, b)?;
            (json!({ "p": p, "k": k, "singular_points": pts }), true)
        }
        Command::StrataEven { m } => {
            let r = even_model_check(*m, p, b)?;
            let ok = r.ok;
            (to_value(&r), ok)
        }
        Command::StrataHypersurface { expr, nvars } => {
            let poly = HomPoly::parse(expr, *nvars)?;
            let count = count_hypersurface(&poly, p, k, b)?;
            (json!({ "p": p, "k": k, "polynomial": poly, "count": count }), true)
        }
        Command::GgpReport { poly } => {
            let input = ggp_intersect::validate(p, poly)?;
            let r = ggp_intersect::evaluate(&input)?;
            let ok = r.agree;
            (to_value(&r), ok)
        }
        Command::GgpCatalog { degrees } => {
            if let Some(d) = degrees.iter().find(|d| !matches!(d, 2 | 4 | 6)) {
                return Err(CliError::Invalid(format!("degree {d} is not one of 2, 4, 6")));
            }
            let c = ggp_intersect::catalog(p, degrees)?;
            let ok = c.all_agree && c.failures.is_empty();
            (to_value(&c), ok)
        }
        Command::VerifyAll => {
            let r = crate::verify_all(b);
            let ok = r.all_pass;
            (to_value(&r), ok)
        }
    })
}
