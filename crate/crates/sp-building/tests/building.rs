use padic_forms::vertex::lphi_pi_ambient;
use padic_forms::{vertex_witnesses, vrt_ball, PLattice};
use quadspace_fq::Budget;
use sp_building::*;

fn lat(p: u32, scale: i32, rows: &[[i128; 4]]) -> PLattice {
    let amb = standard_v0(p).unwrap();
    PLattice::from_int_rows(&amb, scale, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

#[test]
fn standard_vertices() {
    let amb = standard_v0(3).unwrap();
    let t0 = PLattice::standard(&amb);
    assert_eq!(t0.dual().unwrap(), t0);
    let v0 = vertex_of(&t0).unwrap();
    assert_eq!(v0.typ, 0);
    assert_eq!(vertex_of(&t0.scaled(1)).unwrap(), v0);
    assert_eq!(vertex_of(&t0.scaled(-3)).unwrap(), v0);
    let t1 = lat(3, 0, &[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 3]]);
    let v1 = vertex_of(&t1).unwrap();
    assert_eq!(v1.typ, 2);
    assert_eq!(v1.rep, t1.dual().unwrap());
    assert!(v1.lattices().contains(&t1));
    assert_eq!(vertex_of(&t1.scaled(2)).unwrap(), v1);
    let t4 = lat(3, 0, &[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 3, 0], [0, 0, 0, 3]]);
    let v4 = vertex_of(&t4).unwrap();
    assert_eq!(v4.typ, 4);
    assert_eq!(v4.dual, v4.rep.scaled(1));
    let odd = lat(3, 0, &[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 9]]);
    assert!(matches!(vertex_of(&odd), Err(SbError::NotAVertex(_))));
}

#[test]
fn neighbor_counts() {
    for p in [3u32, 5] {
        let q = p as usize;
        let amb = standard_v0(p).unwrap();
        let v0 = vertex_of(&PLattice::standard(&amb)).unwrap();
        let b = Budget::default();
        let n = sp_neighbors(&v0, &b).unwrap();
        let c = |t: u32| n.iter().filter(|v| v.typ == t).count();
        let big = (q + 1) * (q * q + 1);
        assert_eq!((c(2), c(4)), (big, big));
        let nsp = n.iter().find(|v| v.typ == 2).unwrap();
        let m = sp_neighbors(nsp, &b).unwrap();
        assert_eq!(m.iter().filter(|v| v.is_hyperspecial()).count(), 2 * (q + 1));
        assert!(m.contains(&v0));
        let hs4 = n.iter().find(|v| v.typ == 4).unwrap();
        let m = sp_neighbors(hs4, &b).unwrap();
        assert_eq!(m.len(), 2 * big);
    }
}

fn balls(p: u32, r: u32) -> (BBall, padic_forms::VrtBall) {
    let b = Budget::default();
    let amb = standard_v0(p).unwrap();
    let v0 = vertex_of(&PLattice::standard(&amb)).unwrap();
    let bb = building_ball(&v0, r, &b).unwrap();
    let c = vertex_witnesses(&lphi_pi_ambient(p).unwrap()).unwrap()[2].clone();
    let vb = vrt_ball(&c, r, &b).unwrap();
    (bb, vb)
}

#[test]
fn radius_one_isomorphism() {
    for p in [3u32, 5] {
        let (bb, vb) = balls(p, 1);
        let IsoOutcome::Mapping(m) = typed_iso_check(&bb.graph, &vb.graph) else { panic!("no mapping for p = {p}") };
        assert_eq!(m[0], 0);
        for t in &bb.triangles {
            let mut ts: Vec<u32> = t.iter().map(|&v| bb.graph.types[v]).collect();
            ts.sort();
            assert_eq!(ts, vec![0, 2, 4]);
        }
        let cut = bb.graph.without_edge(0);
        assert!(matches!(typed_iso_check(&cut, &vb.graph), IsoOutcome::Failure(_)));
    }
}

#[test]
fn radius_two_p3() {
    let (bb, vb) = balls(3, 2);
    let g = &bb.graph;
    assert!(matches!(typed_iso_check(g, &vb.graph), IsoOutcome::Mapping(_)));
    let adj = g.adjacency();
    for v in 0..g.len() {
        if bb.distance[v] < 2 {
            let hs = adj[v].iter().filter(|&&w| g.types[w] != 2).count();
            let nsp = adj[v].len() - hs;
            if g.types[v] == 2 {
                assert_eq!((hs, nsp), (8, 0));
            } else {
                assert_eq!((hs, nsp), (40, 40));
            }
        }
    }
    for t in &bb.triangles {
        let mut ts: Vec<u32> = t.iter().map(|&v| g.types[v]).collect();
        ts.sort();
        assert_eq!(ts, vec![0, 2, 4]);
    }
    let mut tally = std::collections::BTreeMap::new();
    for y in 1..g.len() {
        if g.types[y] != 2 {
            *tally.entry(format!("{:?}", intersection_pattern(&bb, 0, y))).or_insert(0) += 1;
        }
    }
    assert_eq!(tally.get("EdgeStratum"), Some(&40));
    assert_eq!(tally.get("PointStratum"), Some(&120));
    let els = ve_elements(&bb);
    let sub: Vec<VEElement> = els
        .iter()
        .copied()
        .filter(|e| match e {
            VEElement::HsVertex { id } | VEElement::NspVertex { id } => bb.distance[*id] <= 1,
            VEElement::HsEdge { a, b } => bb.distance[*a] <= 1 && bb.distance[*b] <= 1,
        })
        .collect();
    for x in &sub {
        assert_eq!(ve_order(&bb, x, x), VeOrder::Equal);
        for y in &sub {
            let o = ve_order(&bb, x, y);
            let r = ve_order(&bb, y, x);
            match o {
                VeOrder::Less => assert_eq!(r, VeOrder::Greater),
                VeOrder::Greater => assert_eq!(r, VeOrder::Less),
                _ => {}
            }
            if o == VeOrder::Less {
                assert!(d_value(x) < d_value(y));
                for z in &sub {
                    if ve_order(&bb, y, z) == VeOrder::Less {
                        assert_eq!(ve_order(&bb, x, z), VeOrder::Less);
                    }
                }
            }
        }
    }
}
