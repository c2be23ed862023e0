//! Typed graph isomorphism by individualization and color refinement on
//! the disjoint union of the two graphs.

use std::collections::BTreeMap;

use padic_forms::TypedGraph;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoOutcome {
    /// `map[b] = v` for every building-ball vertex `b`.
    Mapping(Vec<usize>),
    Failure(String),
}

/// Type of a building vertex on the vertex-lattice side.
fn vrt_type(t: u32) -> u32 {
    if t == 2 {
        1
    } else {
        5
    }
}

struct Union {
    adj: Vec<Vec<usize>>,
    n1: usize,
    dist: Vec<u32>,
}

fn refine(u: &Union, colors: &mut Vec<u32>) {
    let mut count = distinct(colors);
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..colors.len())
            .map(|v| {
                let mut nb: Vec<u32> = u.adj[v].iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut ids: BTreeMap<&(u32, Vec<u32>), u32> = BTreeMap::new();
        for s in &sigs {
            ids.insert(s, 0);
        }
        for (i, v) in ids.values_mut().enumerate() {
            *v = i as u32;
        }
        for (c, s) in colors.iter_mut().zip(&sigs) {
            *c = ids[s];
        }
        let n = ids.len();
        if n == count {
            return;
        }
        count = n;
    }
}

fn distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// First color whose class sizes differ between the halves.
fn imbalance(colors: &[u32], n1: usize) -> Option<(u32, usize, usize)> {
    let mut cnt: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
    for (v, &c) in colors.iter().enumerate() {
        let e = cnt.entry(c).or_default();
        if v < n1 {
            e.0 += 1;
        } else {
            e.1 += 1;
        }
    }
    cnt.into_iter().find(|(_, (a, b))| a != b).map(|(c, (a, b))| (c, a, b))
}

fn search(u: &Union, mut colors: Vec<u32>, bb: &TypedGraph, vb: &TypedGraph) -> Option<Vec<usize>> {
    refine(u, &mut colors);
    if imbalance(&colors, u.n1).is_some() {
        return None;
    }
    let mut classes: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for v in 0..u.n1 {
        classes.entry(colors[v]).or_default().push(v);
    }
    // cells near the center first; far cells are pinned down by refinement
    let cell = classes.iter().filter(|(_, vs)| vs.len() > 1).min_by_key(|(c, vs)| (u.dist[vs[0]], vs.len(), **c));
    let Some((&c, vs)) = cell else {
        let mut by_color = vec![usize::MAX; colors.len()];
        for v in u.n1..colors.len() {
            by_color[colors[v] as usize] = v - u.n1;
        }
        let map: Vec<usize> = (0..u.n1).map(|v| by_color[colors[v] as usize]).collect();
        return is_isomorphism(bb, vb, &map).then_some(map);
    };
    let v = vs[0];
    let fresh = colors.len() as u32 + 1;
    for w in u.n1..colors.len() {
        if colors[w] == c {
            let mut c2 = colors.clone();
            c2[v] = fresh;
            c2[w] = fresh;
            if let Some(m) = search(u, c2, bb, vb) {
                return Some(m);
            }
        }
    }
    None
}

fn is_isomorphism(bb: &TypedGraph, vb: &TypedGraph, map: &[usize]) -> bool {
    if bb.len() != vb.len() || bb.edges.len() != vb.edges.len() {
        return false;
    }
    let mut seen = vec![false; vb.len()];
    for (b, &v) in map.iter().enumerate() {
        if v >= vb.len() || seen[v] || vrt_type(bb.types[b]) != vb.types[v] {
            return false;
        }
        seen[v] = true;
    }
    bb.edges.iter().all(|e| vb.has_edge(map[e.a], map[e.b]))
}

/// `(type, degree) ↦ count` summary used in failure certificates.
fn degree_profile(g: &TypedGraph, ty: impl Fn(u32) -> u32) -> BTreeMap<(u32, usize), usize> {
    let adj = g.adjacency();
    let mut m = BTreeMap::new();
    for v in 0..g.len() {
        *m.entry((ty(g.types[v]), adj[v].len())).or_insert(0) += 1;
    }
    m
}

/// Type-respecting isomorphism from a building ball (types 0, 2, 4) to a
/// vertex-lattice ball (types 5, 1, 5) sending center 0 to center 0.
pub fn typed_iso_check(bb: &TypedGraph, vb: &TypedGraph) -> IsoOutcome {
    let n1 = bb.len();
    if n1 != vb.len() {
        return IsoOutcome::Failure(format!("vertex counts differ: {} vs {}", n1, vb.len()));
    }
    if bb.edges.len() != vb.edges.len() {
        return IsoOutcome::Failure(format!("edge counts differ: {} vs {}", bb.edges.len(), vb.edges.len()));
    }
    let (pb, pv) = (degree_profile(bb, vrt_type), degree_profile(vb, |t| t));
    if pb != pv {
        let diff = pb
            .keys()
            .chain(pv.keys())
            .find(|k| pb.get(k) != pv.get(k))
            .copied()
            .unwrap();
        return IsoOutcome::Failure(format!(
            "degree profiles differ at (type {}, degree {}): {} vs {}",
            diff.0,
            diff.1,
            pb.get(&diff).copied().unwrap_or(0),
            pv.get(&diff).copied().unwrap_or(0)
        ));
    }
    let mut adj = bb.adjacency();
    for mut l in vb.adjacency() {
        for w in l.iter_mut() {
            *w += n1;
        }
        adj.push(l);
    }
    let mut dist = bb.distances(0);
    dist.extend(vb.distances(0));
    let u = Union { adj, n1, dist };
    let mut colors: Vec<u32> = bb.types.iter().map(|&t| vrt_type(t)).chain(vb.types.iter().copied()).collect();
    colors[0] = 6;
    colors[n1] = 6;
    let mut probe = colors.clone();
    refine(&u, &mut probe);
    if let Some((c, a, b)) = imbalance(&probe, n1) {
        return IsoOutcome::Failure(format!("refined color class {c} has {a} vs {b} vertices"));
    }
    match search(&u, colors, bb, vb) {
        Some(m) => IsoOutcome::Mapping(m),
        None => IsoOutcome::Failure("search exhausted without an isomorphism".into()),
    }
}
