use std::collections::BTreeSet;

use ffpoly::*;
use proptest::prelude::*;

fn sieve_irreducibles(f: &Gf, d: usize) -> BTreeSet<Poly> {
    // Everything of degree d minus all products of two monic factors of
    // positive degree.
    let all: BTreeSet<Poly> = monic_of_degree(f, d).collect();
    let mut reducible = BTreeSet::new();
    for a in 1..d {
        for x in monic_of_degree(f, a) {
            for y in monic_of_degree(f, d - a) {
                reducible.insert(x.mul(f, &y));
            }
        }
    }
    all.difference(&reducible).cloned().collect()
}

#[test]
fn irreducibles_match_sieve_and_necklace() {
    for (p, k, dmax) in [(3, 1, 5), (5, 1, 4), (7, 1, 3), (3, 2, 3)] {
        let f = Gf::new(p, k).unwrap();
        for d in 1..=dmax {
            let list = enumerate_irreducibles(&f, d).unwrap();
            assert_eq!(list.len() as u64, necklace_count(f.q() as u64, d as u64), "q={} d={d}", f.q());
            let set: BTreeSet<Poly> = list.iter().cloned().collect();
            assert_eq!(set, sieve_irreducibles(&f, d));
            let mut sorted = list.clone();
            sorted.sort();
            assert_eq!(sorted, list);
        }
    }
}

#[test]
fn irreducibles_have_no_roots_in_proper_subextensions() {
    let p = 3;
    for d in 2..=3 {
        let base = Gf::prime(p).unwrap();
        for g in enumerate_irreducibles(&base, d).unwrap() {
            for e in 1..d {
                let big = Gf::new(p, e as u32).unwrap();
                let g = g.lift_to(&big);
                assert!(big.elements().all(|x| g.eval(&big, x) != 0));
            }
        }
    }
}

#[test]
fn necklace_values() {
    assert_eq!(necklace_count(3, 2), 3);
    assert_eq!(necklace_count(3, 3), 8);
    assert_eq!(necklace_count(3, 6), 116);
    assert_eq!(necklace_count(5, 4), 150);
}

fn poly_strategy(p: u32, maxdeg: usize) -> impl Strategy<Value = Vec<u32>> {
    (1..=maxdeg).prop_flat_map(move |d| proptest::collection::vec(0..p, d)).prop_map(|mut c| {
        c.push(1);
        c
    })
}

proptest! {
    #[test]
    fn reciprocal_is_involutive(c in poly_strategy(5, 7), c0 in 1u32..5) {
        let f = Gf::prime(5).unwrap();
        let mut c = c;
        c[0] = c0;
        let r = Poly::new(c);
        let rr = reciprocal(&f, &reciprocal(&f, &r).unwrap()).unwrap();
        prop_assert_eq!(rr, r);
    }

    #[test]
    fn factorization_reproduces_input(c in poly_strategy(3, 9)) {
        let f = Gf::prime(3).unwrap();
        let g = Poly::new(c);
        let fz = factor(&f, &g).unwrap();
        prop_assert_eq!(fz.product(&f), g);
        for (h, m) in &fz.factors {
            prop_assert!(*m >= 1);
            prop_assert!(is_irreducible(&f, h));
        }
        let distinct: BTreeSet<_> = fz.factors.iter().map(|(h, _)| h.clone()).collect();
        prop_assert_eq!(distinct.len(), fz.factors.len());
    }

    #[test]
    fn factorization_over_extension(c in poly_strategy(9, 5)) {
        let f = Gf::new(3, 2).unwrap();
        let g = Poly::new(c);
        let fz = factor(&f, &g).unwrap();
        prop_assert_eq!(fz.product(&f), g);
    }

    /// P self-reciprocal iff its factor multiset is closed under R ↦ R*.
    #[test]
    fn self_reciprocal_iff_closed(idx in proptest::collection::vec(0usize..20, 1..4)) {
        let f = Gf::prime(3).unwrap();
        let mut pool: Vec<Poly> = (1..=3).flat_map(|d| enumerate_irreducibles(&f, d).unwrap()).collect();
        pool.retain(|g| g.constant() != 0);
        let mut prod = Poly::one();
        for &i in &idx {
            prod = prod.mul(&f, &pool[i % pool.len()]);
        }
        let fz = factor(&f, &prod).unwrap();
        let closed = fz.factors.iter().all(|(g, m)| fz.multiplicity(&reciprocal(&f, g).unwrap()) == *m);
        prop_assert_eq!(closed, is_self_reciprocal(&f, &prod));
        // A product with every reciprocal partner appended is always closed.
        let mut sym = prod.clone();
        for &i in &idx {
            sym = sym.mul(&f, &reciprocal(&f, &pool[i % pool.len()]).unwrap());
        }
        prop_assert!(is_self_reciprocal(&f, &sym));
        prop_assert!(sr_partition(&f, &factor(&f, &sym).unwrap()).is_ok());
    }
}

#[test]
fn json_shapes() {
    let d = FieldDesc::new(3, 2).unwrap();
    assert_eq!(serde_json::to_string(&d).unwrap(), r#"{"p":3,"k":2,"modulus":[1,0,1]}"#);
    let f = Gf::prime(3).unwrap();
    assert_eq!(serde_json::to_string(&Poly::from_ints(&f, &[1, 2, 0, 1])).unwrap(), "[1,2,0,1]");
}
