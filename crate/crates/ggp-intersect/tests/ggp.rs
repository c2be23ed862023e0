use ffpoly::{Gf, Poly};
use ggp_intersect::*;

fn poly3(c: &[i64]) -> Poly {
    Poly::from_ints(&Gf::prime(3).unwrap(), c)
}

fn input3(p: &Poly) -> GgpInput {
    let c: Vec<i64> = p.coeffs().iter().map(|&x| x as i64).collect();
    validate(3, &c).unwrap()
}

fn fixtures() -> Vec<(Poly, (u64, u32, u64))> {
    let f = Gf::prime(3).unwrap();
    let q = poly3(&[1, 0, 1]);
    let a = poly3(&[2, 1, 1]);
    let b = poly3(&[2, 2, 1]);
    let r = poly3(&[1, 2, 0, 1]);
    let rs = ffpoly::reciprocal(&f, &r).unwrap();
    vec![
        (q.pow(&f, 3), (2, 2, 4)),
        (q.mul(&f, &a).mul(&f, &b), (4, 1, 4)),
        (r.mul(&f, &rs), (0, 0, 0)),
    ]
}

#[test]
fn validation() {
    assert!(validate(3, &[1, 0, 0, 0, 0, 0, 1]).is_ok());
    assert!(matches!(validate(3, &[2, 1, 1]), Err(GgError::NotSelfReciprocal(_))));
    assert_eq!(validate(3, &[1, 2, 0, 1]).unwrap_err(), GgError::OddDegree(3));
    assert_eq!(validate(3, &[0, 0, 1]).unwrap_err(), GgError::ZeroConstant);
    assert_eq!(validate(3, &[1, 0, 0, 0, 0, 0, 0, 0, 1]).unwrap_err(), GgError::DegreeOutOfRange(8));
    assert_eq!(validate(3, &[1, 0, 2]).unwrap_err(), GgError::NotMonic);
    assert!(validate(4, &[1, 0, 1]).is_err());
}

#[test]
fn closed_forms_and_oracles() {
    for (p, want) in fixtures() {
        let i = input3(&p);
        let cf = closed_form(&i).unwrap();
        assert_eq!((cf.fixed_count, cf.c_value, cf.multiplicity), want, "{}", p.pretty());
        let real = realize_orthogonal(&i).unwrap();
        assert!(real.certified);
        let dl = oracle_dl_fixed_points(&i, &real).unwrap();
        assert_eq!(dl.count() as u64, want.0);
        let mo = oracle_multiplicity(&i, &real, &dl).unwrap();
        assert_eq!(mo.total, want.2);
        assert!(mo.per_point.iter().all(|x| x.c == want.1));
    }
    let q = poly3(&[1, 0, 1]);
    assert_eq!(find_qg(&input3(&q.pow(&Gf::prime(3).unwrap(), 3))).unwrap(), Some((q.clone(), 3)));
    let pair = poly3(&[2, 1, 1]).mul(&Gf::prime(3).unwrap(), &poly3(&[2, 2, 1]));
    assert_eq!(find_qg(&input3(&pair)).unwrap(), None);
}

#[test]
fn beta_examples() {
    let f = Gf::prime(3).unwrap();
    let q = poly3(&[1, 0, 1]);
    let cube = input3(&q.pow(&f, 3));
    assert_eq!(beta_count(&cube, &q).unwrap(), 1);
    assert_eq!(beta_count(&cube, &q.pow(&f, 3)).unwrap(), 1);
    let mixed = input3(&q.mul(&f, &poly3(&[2, 1, 1])).mul(&f, &poly3(&[2, 2, 1])));
    assert_eq!(beta_count(&mixed, &q).unwrap(), 2);
    assert!(beta_count(&cube, &poly3(&[1, 1])).is_err());
}

#[test]
fn irreducible_sextic() {
    let f = Gf::prime(3).unwrap();
    let sextic = ffpoly::enumerate_irreducibles(&f, 6)
        .unwrap()
        .into_iter()
        .find(|g| ffpoly::is_self_reciprocal(&f, g))
        .unwrap();
    let i = input3(&sextic);
    let real = realize_orthogonal(&i).unwrap();
    let dl = oracle_dl_fixed_points(&i, &real).unwrap();
    let mo = oracle_multiplicity(&i, &real, &dl).unwrap();
    assert_eq!((dl.count(), mo.total), (6, 6));
    assert!(mo.per_point.iter().all(|x| x.c == 1));
    assert_eq!(closed_form(&i).unwrap().multiplicity, 6);
}

#[test]
fn several_odd_factors_have_no_fixed_points() {
    let f = Gf::prime(3).unwrap();
    let phi5 = poly3(&[1, 1, 1, 1, 1]);
    for p in [poly3(&[-1, 0, 1]), poly3(&[1, 0, 1]).mul(&f, &phi5)] {
        let i = input3(&p);
        assert!(odd_sr_factors(&i).unwrap().len() >= 2);
        assert_eq!(find_qg(&i).unwrap(), None);
        let real = realize_orthogonal(&i).unwrap();
        assert_eq!(oracle_dl_fixed_points(&i, &real).unwrap().count(), 0);
    }
}

#[test]
fn unrealizable_input() {
    let i = validate(3, &[1, 2, 1]).unwrap();
    assert!(matches!(realize_orthogonal(&i), Err(GgError::RealizationFailure { .. })));
    let r = evaluate(&i).unwrap();
    assert_eq!((r.oracles.dl, r.oracles.mult), (None, None));
}

#[test]
fn oracle_independent_of_form_class() {
    let mut compared = 0;
    for p in [3, 5] {
        for i in valid_inputs(p, &[2, 4, 6]).unwrap() {
            let Ok(reals) = realize_orthogonal_classes(&i) else { continue };
            if reals.len() < 2 {
                continue;
            }
            let counts: Vec<usize> = reals.iter().map(|r| oracle_dl_fixed_points(&i, r).unwrap().count()).collect();
            assert_eq!(counts[0], counts[1], "{:?}", i.coeffs());
            compared += 1;
        }
    }
    assert!(compared > 0);
}

#[test]
fn catalogs_agree() {
    for p in [3, 5] {
        let c = catalog(p, &[2, 4, 6]).unwrap();
        assert!(c.failures.is_empty());
        assert!(c.all_agree);
        for e in &c.entries {
            if e.fixed == 0 {
                assert!(e.qg.is_none());
            } else {
                assert_eq!(e.c as u64 * e.fixed, e.multiplicity);
            }
        }
    }
    let c = catalog(3, &[2]).unwrap();
    assert_eq!(c.entries.iter().map(|e| e.poly.clone()).collect::<Vec<_>>(), vec![vec![1, 0, 1], vec![1, 1, 1], vec![1, 2, 1], vec![2, 0, 1]]);
    let cube = catalog(3, &[6]).unwrap().entries.into_iter().find(|e| e.poly == vec![1, 0, 0, 0, 0, 0, 1]).unwrap();
    let json = serde_json::to_string(&cube).unwrap();
    assert!(json.starts_with("{\"p\":3,\"P\":[1,0,0,0,0,0,1],\"Qg\":"));
}
