use serde::Serialize;

use crate::BBall;

/// Element of `VE = Vtx^hs ⊔ Vtx^nsp ⊔ Edg^hs`, by ball vertex ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum VEElement {
    HsVertex { id: usize },
    NspVertex { id: usize },
    HsEdge { a: usize, b: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VeOrder {
    Less,
    Greater,
    Incomparable,
    Equal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pattern {
    EdgeStratum,
    PointStratum,
    Empty,
}

/// Dimension of the closed stratum attached to an element.
pub fn d_value(x: &VEElement) -> u32 {
    match x {
        VEElement::HsVertex { .. } => 2,
        VEElement::HsEdge { .. } => 1,
        VEElement::NspVertex { .. } => 0,
    }
}

pub fn ve_elements(ball: &BBall) -> Vec<VEElement> {
    let g = &ball.graph;
    let mut out: Vec<VEElement> = (0..g.len())
        .map(|id| if g.types[id] == 2 { VEElement::NspVertex { id } } else { VEElement::HsVertex { id } })
        .collect();
    for e in &g.edges {
        if g.types[e.a] != 2 && g.types[e.b] != 2 {
            out.push(VEElement::HsEdge { a: e.a, b: e.b });
        }
    }
    out
}

fn less(ball: &BBall, x: &VEElement, y: &VEElement) -> bool {
    let g = &ball.graph;
    match (*x, *y) {
        (VEElement::NspVertex { id: z }, VEElement::HsVertex { id: h }) => g.has_edge(z, h),
        (VEElement::NspVertex { id: z }, VEElement::HsEdge { a, b }) => g.has_edge(z, a) && g.has_edge(z, b),
        (VEElement::HsEdge { a, b }, VEElement::HsVertex { id: h }) => h == a || h == b,
        _ => false,
    }
}

pub fn ve_order(ball: &BBall, x: &VEElement, y: &VEElement) -> VeOrder {
    if x == y {
        VeOrder::Equal
    } else if less(ball, x, y) {
        VeOrder::Less
    } else if less(ball, y, x) {
        VeOrder::Greater
    } else {
        VeOrder::Incomparable
    }
}

/// How the closed strata of two distinct hyperspecial vertices meet.
pub fn intersection_pattern(ball: &BBall, x: usize, y: usize) -> Pattern {
    let g = &ball.graph;
    if x == y || g.types[x] == 2 || g.types[y] == 2 {
        return Pattern::Empty;
    }
    if g.has_edge(x, y) {
        return Pattern::EdgeStratum;
    }
    let adj = g.adjacency();
    let common = adj[x].iter().filter(|&&z| g.types[z] == 2 && adj[y].binary_search(&z).is_ok()).count();
    if common == 1 {
        Pattern::PointStratum
    } else {
        Pattern::Empty
    }
}
