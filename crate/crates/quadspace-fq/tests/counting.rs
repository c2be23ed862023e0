use std::collections::BTreeSet;
use std::sync::Arc;

use ffpoly::{enumerate_irreducibles, Fq, Gf, Mat, Poly};
use proptest::prelude::*;
use quadspace_fq::*;

fn field(p: u32, k: u32) -> Arc<Gf> {
    Arc::new(Gf::new(p, k).unwrap())
}

/// Closed formula for totally singular `d`-spaces in a nondegenerate
/// quadratic space: `sign` is 0 for odd dimension, ±1 for the even types.
fn formula(q: u64, n: usize, sign: i32, d: usize) -> u64 {
    let m = (n / 2) as u32;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    let q = q as u128;
    for i in 0..d as u32 {
        if i >= m {
            return 0;
        }
        let f = match sign {
            0 => q.pow(2 * (m - i)) - 1,
            1 => (q.pow(m - i) - 1) * (q.pow(m - i - 1) + 1),
            _ => (q.pow(m - i) + 1) * (q.pow(m - i - 1) - 1),
        };
        num *= f;
        den *= q.pow(i + 1) - 1;
    }
    (num / den) as u64
}

/// Every `d`-dimensional subspace, no pruning.
fn all_subspaces(f: &Gf, n: usize, d: usize) -> Vec<Mat> {
    let mut out = Vec::new();
    let q = f.q() as u64;
    let pivsets: Vec<Vec<usize>> = (0u32..(1 << n))
        .filter(|m| m.count_ones() as usize == d)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    for piv in pivsets {
        let slots: Vec<(usize, usize)> = (0..d)
            .flat_map(|r| (piv[r] + 1..n).filter(|c| !piv.contains(c)).map(move |c| (r, c)))
            .collect();
        for code in 0..q.pow(slots.len() as u32) {
            let mut m = Mat::zeros(d, n);
            for (r, &c) in piv.iter().enumerate() {
                m.set(r, c, 1);
            }
            let mut x = code;
            for &(r, c) in &slots {
                m.set(r, c, (x % q) as Fq);
                x /= q;
            }
            out.push(m);
        }
    }
    out
}

#[test]
fn counting_lemma_table() {
    let b = Budget::default();
    for p in [3u32, 5] {
        let f = field(p, 1);
        let q = p as u64;
        for t in 1..=2 {
            let v = BilinearSpace::hyperbolic_sum(f.clone(), t, &[1]);
            let want: u64 = (0..2 * t as u32).map(|i| q.pow(i)).sum();
            assert_eq!(count_isotropic_subspaces(&v, 1, &b).unwrap(), want);
        }
        let v = BilinearSpace::hyperbolic_sum(f.clone(), 2, &[1]);
        assert_eq!(count_isotropic_subspaces(&v, 2, &b).unwrap(), (q + 1) * (q * q + 1));
        assert!(enumerate_isotropic_subspaces(&v, 3, &b).unwrap().is_empty());
        let h2 = BilinearSpace::hyperbolic_sum(f.clone(), 2, &[]);
        assert_eq!(count_isotropic_subspaces(&h2, 2, &b).unwrap(), 2 * (q + 1));
        let h = BilinearSpace::hyperbolic_sum(f.clone(), 1, &[]);
        assert_eq!(count_isotropic_subspaces(&h, 1, &b).unwrap(), 2);
        let lag = enumerate_isotropic_subspaces(&h2, 2, &b).unwrap();
        for w in &lag {
            assert_eq!(complementary_lagrangians(&h2, w, &b).unwrap(), q);
        }
    }
    let f = field(3, 1);
    assert_eq!(count_isotropic_subspaces(&BilinearSpace::hyperbolic_sum(f.clone(), 1, &[1]), 1, &b).unwrap(), 4);
    assert_eq!(count_isotropic_subspaces(&BilinearSpace::hyperbolic_sum(f, 2, &[1]), 2, &b).unwrap(), 40);
}

#[test]
fn enumeration_matches_formula_and_rescan() {
    let b = Budget::default();
    for (p, k) in [(3, 1), (5, 1), (3, 2)] {
        let f = field(p, k);
        let q = f.q() as u64;
        let nonsq = f.elements().find(|&x| !f.is_square(x)).unwrap();
        for n in 1..=5usize {
            for minus in [false, true] {
                if n % 2 == 1 && minus {
                    continue;
                }
                let t = if n % 2 == 0 && minus { n / 2 - 1 } else { n / 2 };
                let tail: Vec<Fq> = match (n % 2, minus) {
                    (1, _) => vec![1],
                    (0, false) => vec![],
                    _ => vec![1, f.neg(nonsq)],
                };
                let v = BilinearSpace::hyperbolic_sum(f.clone(), t, &tail);
                let sign = if n % 2 == 1 { 0 } else if minus { -1 } else { 1 };
                for d in 0..=n / 2 + 1 {
                    let list = enumerate_isotropic_subspaces(&v, d, &b).unwrap();
                    if d > 0 {
                        assert_eq!(list.len() as u64, formula(q, n, sign, d), "q={q} n={n} sign={sign} d={d}");
                    }
                    if q.pow((d * (n - d)) as u32) <= 20000 {
                        let rescan: BTreeSet<Mat> = all_subspaces(&f, n, d)
                            .into_iter()
                            .filter(|m| v.is_totally_isotropic(&Subspace { basis: m.clone() }))
                            .collect();
                        let got: BTreeSet<Mat> = list.iter().map(|s| s.basis.clone()).collect();
                        assert_eq!(got, rescan);
                    }
                    for s in &list {
                        assert!(v.is_totally_isotropic(s));
                        assert_eq!(s.basis.rref(&f).0, s.basis);
                    }
                }
            }
        }
    }
}

#[test]
fn symplectic_lagrangians_and_lines() {
    let b = Budget::default();
    let f = field(3, 1);
    let v = BilinearSpace::symplectic(f, 2);
    assert_eq!(count_isotropic_subspaces(&v, 1, &b).unwrap(), 40);
    assert_eq!(count_isotropic_subspaces(&v, 2, &b).unwrap(), 40);
}

#[test]
fn transitivity_examples() {
    let b = Budget::default();
    for p in [3, 5] {
        let f = field(p, 1);
        assert!(so_orbit_transitive(&BilinearSpace::hyperbolic_sum(f.clone(), 1, &[1]), 1, &b).unwrap());
        assert!(so_orbit_transitive(&BilinearSpace::hyperbolic_sum(f.clone(), 2, &[1]), 2, &b).unwrap());
        assert!(so_orbit_transitive(&BilinearSpace::hyperbolic_sum(f.clone(), 2, &[1]), 1, &b).unwrap());
    }
}

#[test]
fn budget_is_enforced() {
    let f = field(3, 1);
    let v = BilinearSpace::hyperbolic_sum(f, 2, &[1]);
    let tight = Budget { max_subspaces: 10, ..Budget::default() };
    assert!(matches!(enumerate_isotropic_subspaces(&v, 2, &tight), Err(QsError::ResourceLimit(_))));
    let big = field(3, 5);
    let w = BilinearSpace::hyperbolic_sum(big, 1, &[]);
    assert!(matches!(count_isotropic_subspaces(&w, 1, &Budget::default()), Err(QsError::ResourceLimit(_))));
}

#[test]
fn split_sextic_over_f729() {
    let base = Gf::prime(3).unwrap();
    let sextic = enumerate_irreducibles(&base, 6).unwrap()[0].clone();
    let big = Gf::new(3, 6).unwrap();
    let c = Mat::companion(&big, &sextic.lift_to(&big));
    let subs = invariant_subspaces(&big, &c, Some(3)).unwrap();
    assert_eq!(subs.len(), 20);
    for s in &subs {
        assert_eq!(s.image_cols(&big, &c), *s);
    }
}

fn random_cyclic(f: &Gf, factors: &[(Poly, u32)]) -> Mat {
    let p = factors.iter().fold(Poly::one(), |a, (g, m)| a.mul(f, &g.pow(f, *m)));
    Mat::companion(f, &p)
}

proptest! {
    #[test]
    fn witt_congruence(entries in proptest::collection::vec(0u32..5, 21), n in 1usize..=6) {
        let f = field(5, 1);
        let mut g = Mat::zeros(n, n);
        let mut it = entries.iter();
        for i in 0..n {
            for j in i..n {
                let x = *it.next().unwrap();
                g.set(i, j, x);
                g.set(j, i, x);
            }
        }
        let v = BilinearSpace::symmetric(f.clone(), g).unwrap();
        let w = v.witt_decompose().unwrap();
        prop_assert_eq!(w.radical_dim + 2 * w.witt_index + w.anisotropic_gram.rows, n);
        prop_assert!(w.anisotropic_gram.rows <= 2);
        prop_assert_eq!(w.basis.rank(&f), n);
        prop_assert_eq!(v.restrict_gram(&w.basis), w.block_form());
    }

    #[test]
    fn invariant_count_is_product(idx in proptest::collection::vec((0usize..11, 1u32..3), 1..3)) {
        let f = Gf::prime(3).unwrap();
        let pool: Vec<Poly> = (1..=2).flat_map(|d| enumerate_irreducibles(&f, d).unwrap()).collect();
        let mut chosen: Vec<(Poly, u32)> = Vec::new();
        for (i, m) in idx {
            let g = pool[i % pool.len()].clone();
            if let Some(e) = chosen.iter_mut().find(|(h, _)| *h == g) {
                e.1 += m;
            } else {
                chosen.push((g, m));
            }
        }
        let c = random_cyclic(&f, &chosen);
        let all = invariant_subspaces(&f, &c, None).unwrap();
        let want: usize = chosen.iter().map(|(_, m)| *m as usize + 1).product();
        prop_assert_eq!(all.len(), want);
        for s in &all {
            prop_assert!(s.contains(&f, &s.image_cols(&f, &c)));
        }
    }
}
