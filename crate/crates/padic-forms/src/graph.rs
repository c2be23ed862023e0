use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GraphEdge {
    pub a: usize,
    pub b: usize,
    pub label_type: Option<u32>,
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    id: usize,
    #[serde(rename = "type")]
    typ: u32,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<VertexJson>,
    edges: Vec<GraphEdge>,
}

/// Undirected graph with a type per vertex and an optional label type per
/// edge. Edges are stored with `a < b`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TypedGraph {
    pub types: Vec<u32>,
    pub edges: Vec<GraphEdge>,
}

impl Serialize for TypedGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphJson {
            vertices: self.types.iter().enumerate().map(|(id, &typ)| VertexJson { id, typ }).collect(),
            edges: self.edges.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TypedGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let g = GraphJson::deserialize(d)?;
        let mut types = vec![0; g.vertices.len()];
        for v in g.vertices {
            if v.id >= types.len() {
                return Err(serde::de::Error::custom("vertex ids must be 0..n"));
            }
            types[v.id] = v.typ;
        }
        Ok(TypedGraph::new(types, g.edges))
    }
}

impl TypedGraph {
    pub fn new(types: Vec<u32>, edges: Vec<GraphEdge>) -> Self {
        let set: BTreeSet<GraphEdge> = edges
            .into_iter()
            .map(|e| if e.a < e.b { e } else { GraphEdge { a: e.b, b: e.a, ..e } })
            .collect();
        TypedGraph { types, edges: set.into_iter().collect() }
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.len()];
        for e in &self.edges {
            adj[e.a].push(e.b);
            adj[e.b].push(e.a);
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
        }
        adj
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.edges.binary_search_by(|e| (e.a, e.b).cmp(&(a, b))).is_ok()
    }

    /// BFS distances from `v`; `u32::MAX` when unreachable.
    pub fn distances(&self, v: usize) -> Vec<u32> {
        let adj = self.adjacency();
        let mut d = vec![u32::MAX; self.len()];
        d[v] = 0;
        let mut q = VecDeque::from([v]);
        while let Some(x) = q.pop_front() {
            for &y in &adj[x] {
                if d[y] == u32::MAX {
                    d[y] = d[x] + 1;
                    q.push_back(y);
                }
            }
        }
        d
    }

    pub fn is_connected(&self) -> bool {
        self.is_empty() || self.distances(0).iter().all(|&d| d != u32::MAX)
    }

    /// Mutually adjacent triples `a < b < c`.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let adj = self.adjacency();
        let mut out = Vec::new();
        for e in &self.edges {
            let (a, b) = (e.a, e.b);
            let (la, lb) = (&adj[a], &adj[b]);
            let (mut i, mut j) = (0, 0);
            while i < la.len() && j < lb.len() {
                match la[i].cmp(&lb[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        if la[i] > b {
                            out.push([a, b, la[i]]);
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
        out
    }

    pub fn without_edge(&self, idx: usize) -> TypedGraph {
        let mut g = self.clone();
        g.edges.remove(idx);
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: usize, b: usize) -> GraphEdge {
        GraphEdge { a, b, label_type: None }
    }

    #[test]
    fn basic() {
        let g = TypedGraph::new(vec![0, 1, 2, 3], vec![e(1, 0), e(1, 2), e(0, 2), e(2, 3)]);
        assert_eq!(g.triangles(), vec![[0, 1, 2]]);
        assert_eq!(g.distances(0), vec![0, 1, 1, 2]);
        assert!(g.has_edge(2, 1));
        let s = serde_json::to_string(&g).unwrap();
        let back: TypedGraph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(s.starts_with(r#"{"vertices":[{"id":0,"type":0}"#));
    }
}
