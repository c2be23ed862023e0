use std::collections::{BTreeMap, HashMap};

use quadspace_fq::Budget;
use rayon::prelude::*;
use serde::Serialize;

use crate::graph::{GraphEdge, TypedGraph};
use crate::lattice::PLattice;
use crate::vertex::{vertex_classify, Direction};
use crate::PfError;

/// Ball of the complex on `Vrt(1) ⊔ Vrt(5)` around a type-5 lattice.
#[derive(Debug, Clone, Serialize)]
pub struct VrtBall {
    pub graph: TypedGraph,
    pub lattices: Vec<PLattice>,
    /// Type-3 lattice `Λ∩Λ′` of each hs–hs edge, parallel to `graph.edges`.
    pub edge_labels: Vec<Option<PLattice>>,
    pub distance: Vec<u32>,
    pub radius: u32,
}

type Nbrs = Vec<(PLattice, Option<PLattice>)>;

/// Neighbors of a type-1 or type-5 vertex in the complex, with the
/// type-3 label for hs–hs edges.
pub fn vrt_neighbors(l: &PLattice, budget: &Budget) -> Result<Nbrs, PfError> {
    let info = vertex_classify(l)?.ok_or_else(|| PfError::InvalidInput("not a vertex lattice".into()))?;
    let mut out = Vec::new();
    match info.typ {
        1 => {
            for m in info.neighbors(Direction::Up, 5, budget)? {
                out.push((m, None));
            }
        }
        5 => {
            for m in info.neighbors(Direction::Down, 1, budget)? {
                out.push((m, None));
            }
            for m3 in info.neighbors(Direction::Down, 3, budget)? {
                let i3 = vertex_classify(&m3)?.expect("down-neighbors are vertex lattices");
                for m5 in i3.neighbors(Direction::Up, 5, budget)? {
                    if &m5 != l {
                        out.push((m5, Some(m3.clone())));
                    }
                }
            }
        }
        t => return Err(PfError::InvalidInput(format!("vertex of type {t} is not in the complex"))),
    }
    Ok(out)
}

pub fn vrt_ball(center: &PLattice, r: u32, budget: &Budget) -> Result<VrtBall, PfError> {
    if !(1..=2).contains(&r) {
        return Err(PfError::InvalidInput("radius must be 1 or 2".into()));
    }
    if r == 2 && center.p() > 5 {
        return Err(PfError::ResourceLimit("radius 2 needs p ≤ 5".into()));
    }
    match vertex_classify(center)? {
        Some(i) if i.typ == 5 => {}
        _ => return Err(PfError::InvalidInput("center must be a type-5 vertex lattice".into())),
    }
    let mut ids: HashMap<PLattice, usize> = HashMap::from([(center.clone(), 0)]);
    let mut lattices = vec![center.clone()];
    let mut distance = vec![0u32];
    let mut types = vec![5u32];
    let mut edges: BTreeMap<(usize, usize), Option<PLattice>> = BTreeMap::new();
    let mut frontier = vec![0usize];
    for level in 0..=r {
        let lists: Vec<Nbrs> = frontier
            .par_iter()
            .map(|&v| vrt_neighbors(&lattices[v], budget))
            .collect::<Result<_, _>>()?;
        let mut next = Vec::new();
        for (&v, list) in frontier.iter().zip(lists) {
            for (m, label) in list {
                let w = match ids.get(&m) {
                    Some(&w) => w,
                    None if level < r => {
                        let w = lattices.len();
                        if w >= budget.max_subspaces {
                            return Err(PfError::ResourceLimit(format!("ball exceeds {w} vertices")));
                        }
                        ids.insert(m.clone(), w);
                        lattices.push(m);
                        distance.push(level + 1);
                        types.push(if types[v] == 5 && label.is_none() { 1 } else { 5 });
                        next.push(w);
                        w
                    }
                    None => continue,
                };
                edges.insert((v.min(w), v.max(w)), label);
            }
        }
        frontier = next;
    }
    let mut graph_edges = Vec::new();
    let mut edge_labels = Vec::new();
    for ((a, b), label) in edges {
        graph_edges.push(GraphEdge { a, b, label_type: label.as_ref().map(|_| 3) });
        edge_labels.push(label);
    }
    let graph = TypedGraph::new(types, graph_edges);
    Ok(VrtBall { graph, lattices, edge_labels, distance, radius: r })
}
