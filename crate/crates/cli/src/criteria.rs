//! The acceptance suite. Reports carry no timings so that repeated runs
//! serialize identically.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::sync::Arc;

use ffpoly::{reciprocal, Gf, Poly};
use num_bigint::BigInt;
use num_rational::BigRational;
use padic_forms::vertex::lphi_pi_ambient;
use padic_forms::{
    hasse_discriminant, nonresidues, standard_spaces, vertex_classify, vertex_witnesses, DiscClass, Direction,
    PadicDiagForm,
};
use padic_forms::PLattice;
use quadspace_fq::Budget;
use sp_building::{sp_neighbors, standard_v0, vertex_of};
use serde::{Deserialize, Serialize};
use strata_count::{count_s, even_model_check, fermat_count, klingen_count, local_model_singular};

use crate::commands::{correspondence, expected_profile, quad_table};
use crate::CliError;

pub const NAMES: [&str; 10] = [
    "counting lemma",
    "vertex-lattice incidence",
    "invariants of the type-5 space",
    "building correspondence",
    "stratification counts",
    "Fermat fixtures",
    "local model singular locus",
    "GGP catalog",
    "even-model comparison",
    "determinism",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub pass: bool,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl CriterionResult {
    pub fn ledger_line(&self) -> String {
        let mut s = format!("{} criterion {:>2}: {} ({} checks)", if self.pass { "PASS" } else { "FAIL" }, self.id, self.name, self.checks);
        if let Some(f) = self.failures.first() {
            s.push_str(&format!(": {f}"));
            if self.failures.len() > 1 {
                s.push_str(&format!(" (+{} more)", self.failures.len() - 1));
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub criteria: Vec<CriterionResult>,
    pub all_pass: bool,
}

#[derive(Default)]
struct Checker {
    checks: usize,
    failures: Vec<String>,
}

impl Checker {
    fn eq<T: PartialEq + Debug>(&mut self, what: impl AsRef<str>, got: T, want: T) {
        self.checks += 1;
        if got != want {
            self.failures.push(format!("{}: got {got:?}, want {want:?}", what.as_ref()));
        }
    }

    fn truth(&mut self, what: impl AsRef<str>, ok: bool) {
        self.checks += 1;
        if !ok {
            self.failures.push(what.as_ref().to_string());
        }
    }

    fn finish(self, id: u32) -> CriterionResult {
        CriterionResult {
            id,
            name: NAMES[id as usize - 1].to_string(),
            pass: self.failures.is_empty(),
            checks: self.checks,
            failures: self.failures,
        }
    }
}

fn counting(c: &mut Checker, b: &Budget) -> Result<(), CliError> {
    for p in [3, 5] {
        for r in quad_table(p, b)? {
            c.truth(format!("p = {p}: {} = {} but enumeration gives {:?}", r.name, r.formula, r.enumerated), r.agree);
        }
    }
    Ok(())
}

fn incidence(c: &mut Checker, b: &Budget) -> Result<(), CliError> {
    let p = 3;
    let amb = lphi_pi_ambient(p)?;
    let ws = vertex_witnesses(&amb)?;
    let mut seen = BTreeMap::new();
    for w in &ws {
        let info = vertex_classify(w)?.ok_or_else(|| CliError::Mismatch("witness is not a vertex lattice".into()))?;
        for (dir, t) in [(Direction::Up, 5), (Direction::Down, 1), (Direction::Down, 3)] {
            let ls = info.neighbors(dir, t, b)?;
            let good = ls.iter().all(|l| matches!(vertex_classify(l), Ok(Some(i)) if i.typ == t));
            c.truth(format!("neighbors of a type-{} lattice are vertex lattices of type {t}", info.typ), good);
            if !ls.is_empty() {
                seen.insert((info.typ, t), ls.len());
            }
        }
    }
    for ((from, to), want) in [((1, 5), 8), ((3, 5), 2), ((3, 1), 4), ((5, 1), 40), ((5, 3), 40)] {
        c.eq(format!("type {from} -> type {to} neighbors"), seen.get(&(from, to)).copied(), Some(want));
    }
    let l5 = &ws[2];
    let i5 = vertex_classify(l5)?.expect("type-5 witness");
    for (t, want) in [(3u32, 1usize), (1, p as usize)] {
        let lt = i5.neighbors(Direction::Down, t, b)?[0].clone();
        let it = vertex_classify(&lt)?.expect("neighbor is a vertex lattice");
        let mut n = 0;
        for l in it.neighbors(Direction::Up, 5, b)? {
            if l.intersect(l5)? == lt {
                n += 1;
            }
        }
        c.eq(format!("type-5 lattices meeting the center in a type-{t} lattice"), n, want);
    }
    Ok(())
}

fn class_of(p: u32, x: BigRational) -> Result<DiscClass, CliError> {
    Ok(hasse_discriminant(&PadicDiagForm::new(p, vec![x])?)?.1)
}

fn invariants(c: &mut Checker) -> Result<(), CliError> {
    for p in [3u32, 5, 7] {
        let (_, lpi) = standard_spaces(p)?;
        let eps2 = BigInt::from(nonresidues(p)[0]);
        let pb = BigInt::from(p);
        let (h, d) = hasse_discriminant(&lpi)?;
        c.eq(format!("p = {p}: Hasse invariant"), h, 1);
        c.eq(format!("p = {p}: discriminant class"), d, class_of(p, BigRational::from_integer(-&eps2 * &pb))?);
        let scaled = lpi.scaled(&BigRational::new(BigInt::from(1), &eps2 * &pb));
        let (hs, ds) = hasse_discriminant(&scaled)?;
        c.eq(format!("p = {p}: Hasse invariant after scaling by 1/(p eps^2)"), hs, 1);
        c.eq(format!("p = {p}: discriminant class after scaling by 1/(p eps^2)"), ds, DiscClass::One);
    }
    Ok(())
}

fn building(c: &mut Checker, b: &Budget) -> Result<(), CliError> {
    for (p, r) in [(3, 1), (5, 1), (3, 2)] {
        let x = correspondence(p, r, b)?;
        c.truth(format!("p = {p}, r = {r}: isomorphism found and verified"), x.mapping_checked);
        let mut want = expected_profile(p);
        if r == 1 {
            want.remove("nsp");
        }
        c.eq(format!("p = {p}, r = {r}: building degrees"), &x.building_degrees, &want);
        c.eq(format!("p = {p}, r = {r}: vertex-lattice degrees"), &x.vrt_degrees, &want);
        c.truth(format!("p = {p}, r = {r}: degree profile in the report"), x.degrees_ok);
    }
    for p in [3u32, 5] {
        let q = p as usize;
        let v0 = vertex_of(&PLattice::standard(&standard_v0(p)?))?;
        let n = sp_neighbors(&v0, b)?;
        let nsp = n.iter().find(|v| !v.is_hyperspecial()).ok_or_else(|| CliError::Mismatch("no nsp neighbor".into()))?;
        let m = sp_neighbors(nsp, b)?;
        c.eq(format!("p = {p}: hs neighbors of an nsp vertex"), m.iter().filter(|v| v.is_hyperspecial()).count(), 2 * (q + 1));
        c.eq(format!("p = {p}: nsp neighbors of an nsp vertex"), m.iter().filter(|v| !v.is_hyperspecial()).count(), 0);
    }
    Ok(())
}

fn stratification(c: &mut Checker, b: &Budget) -> Result<(), CliError> {
    let s = count_s(2, 3, 1, b)?;
    c.eq("count_S(2,3,1) total", s.total, 40);
    c.eq("count_S(2,3,1) closed stratum", s.strata.get(&0).copied(), Some(40));
    for k in [1, 2] {
        c.eq(format!("Klingen count vs count_S(2,3,{k})"), klingen_count(3, k, b)?, count_s(2, 3, k, b)?.total);
    }
    c.eq("count_S(1,3,2) total", count_s(1, 3, 2, b)?.total, 10);
    Ok(())
}

fn fermat(c: &mut Checker, b: &Budget) -> Result<(), CliError> {
    c.eq("fermat_count(3,1)", fermat_count(3, 1, b)?, 16);
    c.eq("fermat_count(3,2)", fermat_count(3, 2, b)?, 280);
    Ok(())
}

fn local_model(c: &mut Checker, b: &Budget) -> Result<(), CliError> {
    for p in [3, 5] {
        for k in [1, 2] {
            c.eq(format!("singular points for p = {p}, k = {k}"), local_model_singular(p, k, b)?, vec![vec![0, 0, 0, 0, 1]]);
        }
    }
    Ok(())
}

fn fixture(c: &mut Checker, name: &str, f: &Gf, poly: &Poly, want: (u64, u64)) -> Result<(), CliError> {
    let input = ggp_intersect::validate_poly(Arc::new(f.clone()), poly.clone())?;
    let r = ggp_intersect::evaluate(&input)?;
    c.eq(format!("{name}: (fixed, multiplicity)"), (r.fixed, r.multiplicity), want);
    c.eq(format!("{name}: oracles"), (r.oracles.dl, r.oracles.mult), (Some(want.0), Some(want.1)));
    c.truth(format!("{name}: closed form and oracles agree"), r.agree);
    Ok(())
}

fn ggp(c: &mut Checker) -> Result<(), CliError> {
    let cat = ggp_intersect::catalog(3, &[2, 4, 6])?;
    c.eq("catalog failures", cat.failures.len(), 0);
    for e in &cat.entries {
        let tag = format!("P = {:?}", e.poly);
        let qdeg = e.qg.as_ref().map_or(0, |q| q.len() as u64 - 1);
        c.eq(format!("{tag}: fixed = deg Q_g * beta"), e.fixed, qdeg * e.oracles.beta);
        c.truth(format!("{tag}: c = {} exceeds 2", e.c), e.c <= 2);
        c.truth(format!("{tag}: entry disagrees with an oracle"), e.agree);
        if let Some(dl) = e.oracles.dl {
            c.eq(format!("{tag}: fixed-point oracle"), dl, e.fixed);
            c.eq(format!("{tag}: multiplicity oracle"), e.oracles.mult, Some(e.multiplicity));
        }
    }
    c.truth("some catalog entries are realizable", cat.entries.iter().any(|e| e.oracles.dl.is_some()));
    let f = Gf::prime(3)?;
    let t2 = |a: i64, b: i64| Poly::from_ints(&f, &[b, a, 1]);
    let one = t2(0, 1);
    fixture(c, "(T^2+1)^3", &f, &one.pow(&f, 3), (2, 4))?;
    fixture(c, "(T^2+1)(T^2+T+2)(T^2+2T+2)", &f, &one.mul(&f, &t2(1, 2)).mul(&f, &t2(2, 2)), (4, 4))?;
    let r = Poly::from_ints(&f, &[1, 2, 0, 1]);
    fixture(c, "R R* with R = T^3+2T+1", &f, &r.mul(&f, &reciprocal(&f, &r)?), (0, 0))?;
    Ok(())
}

fn even_model(c: &mut Checker, b: &Budget) -> Result<(), CliError> {
    let r = even_model_check(1, 3, b)?;
    let s = count_s(1, 3, 2, b)?.total;
    c.truth("even model report is consistent", r.ok);
    c.truth("every q(L) lies in S", r.lands_in_s);
    c.eq("S total in the report", r.s_total, s);
    c.truth("two components", r.components.len() == 2);
    for comp in &r.components {
        c.truth(format!("q is injective on component {}", comp.label), comp.injective);
        c.eq(format!("images of component {}", comp.label), comp.images, s);
    }
    Ok(())
}

/// Criteria 1 to 9; 10 needs a first run, see [`determinism`].
pub fn run_criterion(id: u32, budget: &Budget) -> CriterionResult {
    let mut c = Checker::default();
    let res = match id {
        1 => counting(&mut c, budget),
        2 => incidence(&mut c, budget),
        3 => invariants(&mut c),
        4 => building(&mut c, budget),
        5 => stratification(&mut c, budget),
        6 => fermat(&mut c, budget),
        7 => local_model(&mut c, budget),
        8 => ggp(&mut c),
        9 => even_model(&mut c, budget),
        _ => Err(CliError::Invalid(format!("no criterion {id}"))),
    };
    if let Err(e) = res {
        c.checks += 1;
        c.failures.push(format!("error: {e}"));
    }
    c.finish(id)
}

/// Reruns criteria 1 to 9 and compares the serialized results with `first`.
pub fn determinism(first: &[CriterionResult], budget: &Budget) -> CriterionResult {
    let again: Vec<CriterionResult> = (1..=9).map(|i| run_criterion(i, budget)).collect();
    let a = serde_json::to_string(first).expect("serializes");
    let b = serde_json::to_string(&again).expect("serializes");
    let mut c = Checker::default();
    c.truth("second run serializes to the same bytes", a == b);
    c.finish(10)
}

pub fn verify_all(budget: &Budget) -> VerifyReport {
    let mut criteria: Vec<CriterionResult> = (1..=9).map(|i| run_criterion(i, budget)).collect();
    let d = determinism(&criteria, budget);
    criteria.push(d);
    let all_pass = criteria.iter().all(|c| c.pass);
    VerifyReport { criteria, all_pass }
}
