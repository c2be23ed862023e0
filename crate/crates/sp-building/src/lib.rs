//! The building of `PGSp₄(Q_p)` realised on lattices of a 4-dimensional
//! symplectic space, its order on vertices and hyperspecial edges, and a
//! typed-graph comparison with the vertex-lattice complex.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use padic_forms::{vertex_classify, Ambient, Direction, GraphEdge, PLattice, PfError, TypedGraph};
use quadspace_fq::Budget;
use rayon::prelude::*;
use serde::Serialize;

pub mod iso;
pub mod order;

pub use iso::{typed_iso_check, IsoOutcome};
pub use order::{d_value, intersection_pattern, ve_elements, ve_order, Pattern, VEElement, VeOrder};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SbError {
    #[error("lattice does not define a vertex: {0}")]
    NotAVertex(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
}

impl From<PfError> for SbError {
    fn from(e: PfError) -> Self {
        match e {
            PfError::ResourceLimit(s) => SbError::ResourceLimit(s),
            other => SbError::InvalidInput(other.to_string()),
        }
    }
}

/// `V₀ = Q_p^4` with Gram `J₄`.
pub fn standard_v0(p: u32) -> Result<Arc<Ambient>, SbError> {
    let j = vec![vec![0, 0, 0, 1], vec![0, 0, 1, 0], vec![0, -1, 0, 0], vec![-1, 0, 0, 0]];
    Ok(Ambient::new(p, j)?)
}

/// A vertex `[T] ∪ [T^∨]`, stored through its unique representative `T`
/// with `pT ⊆ T^∨ ⊆ T`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SpVertex {
    pub rep: PLattice,
    pub dual: PLattice,
    #[serde(rename = "type")]
    pub typ: u32,
}

impl SpVertex {
    pub fn is_hyperspecial(&self) -> bool {
        self.typ != 2
    }

    /// Representatives of the homothety classes making up the vertex.
    pub fn lattices(&self) -> Vec<PLattice> {
        if self.is_hyperspecial() {
            vec![self.rep.clone()]
        } else {
            vec![self.rep.clone(), self.dual.clone()]
        }
    }
}

fn try_rep(t: &PLattice) -> Result<Option<SpVertex>, SbError> {
    Ok(vertex_classify(t)?.map(|i| SpVertex { rep: i.lattice, dual: i.dual, typ: i.typ }))
}

/// The vertex whose class set contains `T`.
pub fn vertex_of(t: &PLattice) -> Result<SpVertex, SbError> {
    let cands = [t.clone(), t.dual()?];
    for c in &cands {
        // det valuation of a representative is −type/2 ∈ {0, −1, −2}
        let v = c.det_valuation();
        let n = c.dim() as i64;
        for target in [0i64, -1, -2] {
            if (target - v) % n == 0 {
                let s = c.scaled(((target - v) / n) as i32);
                if let Some(x) = try_rep(&s)? {
                    return Ok(x);
                }
            }
        }
    }
    Err(SbError::NotAVertex("no rescaling of T or T^∨ satisfies pT ⊆ T^∨ ⊆ T".into()))
}

/// All vertices adjacent to `v`, sorted.
pub fn sp_neighbors(v: &SpVertex, budget: &Budget) -> Result<Vec<SpVertex>, SbError> {
    if v.rep.p() > 5 {
        return Err(SbError::ResourceLimit("neighbor enumeration needs p ≤ 5".into()));
    }
    let info = vertex_classify(&v.rep)?.ok_or_else(|| SbError::NotAVertex("stale representative".into()))?;
    let mut out = Vec::new();
    for t in [0, 2, 4] {
        let (dir, ok) = match t.cmp(&v.typ) {
            std::cmp::Ordering::Greater => (Direction::Up, true),
            std::cmp::Ordering::Less => (Direction::Down, true),
            std::cmp::Ordering::Equal => (Direction::Up, false),
        };
        if !ok {
            continue;
        }
        for l in info.neighbors(dir, t, budget)? {
            out.push(try_rep(&l)?.expect("neighbors are vertex representatives"));
        }
    }
    out.sort();
    Ok(out)
}

/// Ball of the building around a vertex; edges are all adjacencies
/// between ball vertices.
#[derive(Debug, Clone, Serialize)]
pub struct BBall {
    pub graph: TypedGraph,
    pub vertices: Vec<SpVertex>,
    pub distance: Vec<u32>,
    pub triangles: Vec<[usize; 3]>,
    pub radius: u32,
}

pub fn building_ball(center: &SpVertex, r: u32, budget: &Budget) -> Result<BBall, SbError> {
    if !(1..=2).contains(&r) {
        return Err(SbError::InvalidInput("radius must be 1 or 2".into()));
    }
    let mut ids: HashMap<SpVertex, usize> = HashMap::from([(center.clone(), 0)]);
    let mut vertices = vec![center.clone()];
    let mut distance = vec![0];
    let mut edges: BTreeMap<(usize, usize), ()> = BTreeMap::new();
    let mut frontier = vec![0usize];
    for level in 0..=r {
        let lists: Vec<Vec<SpVertex>> = frontier
            .par_iter()
            .map(|&v| sp_neighbors(&vertices[v], budget))
            .collect::<Result<_, _>>()?;
        let mut next = Vec::new();
        for (&v, list) in frontier.iter().zip(lists) {
            for w in list {
                let wi = match ids.get(&w) {
                    Some(&wi) => wi,
                    None if level < r => {
                        let wi = vertices.len();
                        if wi >= budget.max_subspaces {
                            return Err(SbError::ResourceLimit(format!("ball exceeds {wi} vertices")));
                        }
                        ids.insert(w.clone(), wi);
                        vertices.push(w);
                        distance.push(level + 1);
                        next.push(wi);
                        wi
                    }
                    None => continue,
                };
                edges.insert((v.min(wi), v.max(wi)), ());
            }
        }
        frontier = next;
    }
    let types = vertices.iter().map(|v| v.typ).collect();
    let graph = TypedGraph::new(
        types,
        edges.into_keys().map(|(a, b)| GraphEdge { a, b, label_type: None }).collect(),
    );
    let triangles = graph.triangles();
    Ok(BBall { graph, vertices, distance, triangles, radius: r })
}
