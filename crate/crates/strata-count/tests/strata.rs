use std::collections::BTreeSet;

use ffpoly::Gf;
use proptest::prelude::*;
use quadspace_fq::{Budget, Subspace};
use strata_count::*;

fn b() -> Budget {
    Budget::default()
}

#[test]
fn s_counts_and_partition() {
    let r = count_s(2, 3, 1, &b()).unwrap();
    assert_eq!((r.total, r.strata[&0], r.excluded), (40, 40, 0));
    assert_eq!(count_s(0, 3, 1, &b()).unwrap().strata[&0], 1);
    for (p, k) in [(3u32, 1u32), (3, 2), (3, 3), (5, 1), (5, 2)] {
        let q = p.pow(k) as u64;
        let r1 = count_s(1, p, k, &b()).unwrap();
        assert_eq!(r1.total, q + 1);
        assert_eq!((r1.strata[&0], r1.strata[&1]), (p as u64 + 1, q - p as u64));
        for r in [r1, count_s(2, p, k, &b()).unwrap()] {
            assert_eq!(r.strata.values().sum::<u64>(), r.total);
            assert!(r.strata.keys().all(|&i| i as usize <= r.m));
        }
    }
    for p in [3u64, 5] {
        assert_eq!(count_s(2, p as u32, 2, &b()).unwrap().total, (p * p + 1) * (p * p * p + 1));
    }
    let json = serde_json::to_value(count_s(1, 3, 2, &b()).unwrap()).unwrap();
    assert_eq!(json["strata"]["1"], 6);
    assert_eq!(json["total"], 10);
}

/// Stable index of `L ⊆ L+σL ⊆ …`.
fn sum_chain_index(f: &Gf, l: &Subspace) -> u32 {
    let mut cur = l.clone();
    let mut r = 0;
    loop {
        let next = cur.sum(f, &cur.frob(f));
        if next == cur {
            return r;
        }
        cur = next;
        r += 1;
    }
}

#[test]
fn stratum_chains_and_rational_points() {
    for m in [1usize, 2] {
        let (pts, _) = s_points(m, 3, 2, &b()).unwrap();
        let f = Gf::new(3, 2).unwrap();
        for (l, i) in &pts {
            assert_eq!(sum_chain_index(&f, l), *i);
        }
        let big: BTreeSet<Subspace> = pts.into_iter().map(|(l, _)| l).collect();
        let (small, _) = s_points(m, 3, 1, &b()).unwrap();
        for (l, i) in small {
            assert_eq!(i, 0);
            assert!(big.contains(&l));
        }
    }
    // beyond k = 2 the sum chain can outgrow m
    let f = Gf::new(3, 3).unwrap();
    let (pts, _) = s_points(1, 3, 3, &b()).unwrap();
    assert!(pts.iter().any(|(l, i)| *i == 1 && sum_chain_index(&f, l) == 2));
}

#[test]
fn surface_models() {
    assert_eq!(fermat_count(3, 1, &b()).unwrap(), 16);
    assert_eq!(fermat_count(3, 2, &b()).unwrap(), 280);
    assert_eq!(fermat_count(5, 1, &b()).unwrap(), 36);
    assert_eq!(klingen_count(3, 1, &b()).unwrap(), 40);
    for (p, k) in [(3u32, 1u32), (3, 2), (3, 3), (5, 1), (5, 2)] {
        assert_eq!(klingen_count(p, k, &b()).unwrap(), count_s(2, p, k, &b()).unwrap().total, "p={p} k={k}");
    }
}

#[test]
fn hypersurface_examples() {
    let quad = HomPoly::parse("x0^2 + x1^2 + x2^2 + x3^2", 4).unwrap();
    assert_eq!(count_hypersurface(&quad, 3, 1, &b()).unwrap(), 16);
    let planes = HomPoly::parse("x0*x1", 4).unwrap();
    assert_eq!(count_hypersurface(&planes, 3, 1, &b()).unwrap(), 13 + 13 - 4);
    assert_eq!(count_hypersurface(&HomPoly::zero(4).unwrap(), 3, 1, &b()).unwrap(), 40);
    assert!(HomPoly::parse("x0^2 + x1", 2).is_err());
    assert!(count_hypersurface(&quad, 3, 5, &b()).is_err());
    assert_eq!(HomPoly::parse("-x0^3*x1 + 2*x1^4 - x0*x1^3", 2).unwrap().terms.len(), 3);
}

#[test]
fn local_model_point() {
    for (p, k) in [(3u32, 1u32), (3, 2), (5, 1), (5, 2)] {
        assert_eq!(local_model_singular(p, k, &b()).unwrap(), vec![vec![0, 0, 0, 0, 1]]);
    }
}

#[test]
fn even_model() {
    let r = even_model_check(1, 3, &b()).unwrap();
    assert!(r.ok && r.lands_in_s);
    assert_eq!(r.s_total, count_s(1, 3, 2, &b()).unwrap().total);
    assert_eq!(r.components.iter().map(|c| (c.label, c.in_model, c.images)).collect::<Vec<_>>(), vec![(0, 10, 10), (1, 10, 10)]);
    assert!(even_model_check(2, 3, &b()).is_err());
}

fn affine_oracle(poly: &HomPoly, q: u32, f: &Gf) -> u64 {
    let n = poly.nvars;
    let mut zeros = 0u64;
    for t in 0..(q as u64).pow(n as u32) {
        let x: Vec<u32> = (0..n).map(|i| ((t / (q as u64).pow(i as u32)) % q as u64) as u32).collect();
        if poly.eval(f, &x) == 0 {
            zeros += 1;
        }
    }
    (zeros - 1) / (q as u64 - 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn projective_count_matches_affine(coefs in proptest::collection::vec(-2i64..3, 10), k in 1u32..3) {
        let mut terms = Vec::new();
        let mut idx = 0;
        for a in 0..=3u32 {
            for c in 0..=(3 - a) {
                let bb = 3 - a - c;
                if idx < coefs.len() {
                    terms.push(Term { coef: coefs[idx], exps: vec![a, c, bb] });
                }
                idx += 1;
            }
        }
        let poly = HomPoly::new(3, terms).unwrap();
        let f = Gf::new(3, k).unwrap();
        prop_assert_eq!(count_hypersurface(&poly, 3, k, &b()).unwrap(), affine_oracle(&poly, f.q(), &f));
    }
}
