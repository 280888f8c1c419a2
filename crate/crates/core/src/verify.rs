//! Deterministic property suites with JSON reports.

use serde::Serialize;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::oracle::{convolution_oracle, OracleContext};
use crate::algebra::{
    adjoint, all_generators, identity, is_partial_isometry, is_projection, multiply, random_element, random_generator,
    tile_angle, z, z_commutation_check, AlgebraElement, Generator,
};
use crate::error::{Error, Result};
use crate::geometry::patch::{iterate, label_angle_of};
use crate::geometry::rule::{discover_rule, frozen_rule, is_primitive, pinwheel_rule, verify_rule};
use crate::geometry::tile::Label;
use crate::geometry::{adjacency_census, find_decompositions, prototiles};
use crate::hull::separation_epsilon;
use crate::ktheory::{nonsplit_certificate, nonsplit_certificate_for, KGroup, LimitElement, System};
use crate::numerics::{Angle, ExactComplex, QRoot5, Rational};
use crate::tower::{
    check_cover, norm_estimate, phi, phi_general, psi, psi_hom_check, psi_hom_check_with, simplicity_stage,
    PsiConvention,
};

pub const SUITES: [&str; 4] = ["geometry", "algebra", "tower", "ktheory"];

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub pass: bool,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn check(name: &str, body: impl FnOnce() -> Result<(bool, String)>) -> Check {
    match body() {
        Ok((pass, detail)) => Check { name: name.into(), pass, detail },
        Err(e) => Check { name: name.into(), pass: false, detail: format!("error: {e}") },
    }
}

fn suite(name: &str, checks: Vec<Check>) -> SuiteReport {
    SuiteReport { suite: name.into(), pass: checks.iter().all(|c| c.pass), checks }
}

pub fn run(name: &str) -> Result<Report> {
    let names: Vec<&str> = match name {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        other => return Err(Error::Precondition(format!("unknown suite '{other}'"))),
    };
    let suites: Vec<SuiteReport> = names
        .into_iter()
        .map(|s| match s {
            "geometry" => geometry(),
            "algebra" => algebra(),
            "tower" => tower(),
            _ => ktheory(),
        })
        .collect();
    Ok(Report { suite: name.into(), pass: suites.iter().all(|s| s.pass), suites })
}

fn matrix_power(n: usize) -> [[u64; 2]; 2] {
    let a = pinwheel_rule().matrix();
    let mut m = [[1, 0], [0, 1]];
    for _ in 0..n {
        let mut next = [[0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                next[i][j] = (0..2).map(|l| m[i][l] * a[l][j]).sum();
            }
        }
        m = next;
    }
    m
}

pub fn geometry() -> SuiteReport {
    let mut checks = vec![
        check("decompositions", || {
            let counts: Vec<usize> = prototiles().iter().map(|p| find_decompositions(p).len()).collect();
            let same = discover_rule()? == frozen_rule();
            Ok((counts.iter().all(|&c| c >= 1) && same, format!("candidates per proto {counts:?}; frozen rule matches: {same}")))
        }),
        check("rule_clauses", || {
            let r = verify_rule(pinwheel_rule());
            let m = pinwheel_rule().matrix();
            Ok((r.all_pass() && m == [[2, 3], [3, 2]], format!("matrix {m:?}; {}", serde_json::to_string(&r)?)))
        }),
        check("primitivity", || {
            let k = is_primitive(pinwheel_rule(), 4)?;
            Ok((k == Some(1), format!("first positive power {k:?}")))
        }),
    ];
    checks.push(check("patch_counts", || {
        let mut ok = true;
        let mut detail = Vec::new();
        for n in 0..=6 {
            let p = iterate(0, n)?;
            let want = 5usize.pow(n as u32);
            let m = matrix_power(n);
            let types = p.type_counts();
            let good = p.len() == want
                && p.total_area() == QRoot5::int(want as i64)
                && p.overlaps().is_empty()
                && types == [m[0][0] as usize, m[1][0] as usize];
            ok &= good;
            detail.push(format!("N={n}: {} tiles {types:?}", p.len()));
        }
        Ok((ok, detail.join("; ")))
    }));
    checks.push(check("central_rotation", || {
        let bad: Vec<usize> = (0..=8)
            .filter(|&n| label_angle_of(pinwheel_rule(), 0, &vec![3; n]) != Angle::new(n as i64, 0))
            .collect();
        Ok((bad.is_empty(), format!("angle of 3^N is (N,0) for N <= 8; failures {bad:?}")))
    }));
    checks.push(check("flc_census", || {
        let c5 = adjacency_census(&iterate(0, 5)?)?.len();
        let c6 = adjacency_census(&iterate(0, 6)?)?.len();
        Ok((c5 == c6, format!("classes at N=5: {c5}, N=6: {c6}")))
    }));
    checks.push(check("separation", || {
        let eps = separation_epsilon();
        let want = QRoot5::new(Rational::ZERO, Rational::new(2, 15));
        let p = iterate(0, 3)?;
        let pts: Vec<_> = p.tiles.iter().map(|(_, t)| t.puncture().clone()).collect();
        let eps2 = eps.square();
        let mut closest = None::<QRoot5>;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let d = (&pts[i] - &pts[j]).norm_sqr();
                if closest.as_ref().is_none_or(|c| d < *c) {
                    closest = Some(d);
                }
            }
        }
        let closest = closest.unwrap();
        Ok((eps == want && closest >= eps2, format!("epsilon {eps}; closest squared distance in N=3 patch {closest}")))
    }));
    suite("geometry", checks)
}

/// Every product of level-1 generators with `k ∈ {−1, 0, 1, 2}` against the oracle.
pub fn oracle_level_one() -> Result<(usize, usize)> {
    let ctx = OracleContext::new(&iterate(0, 2)?, 1)?;
    let gens: Vec<AlgebraElement> = all_generators(1, -1..=2).into_iter().map(AlgebraElement::generator).collect();
    let mut bad = 0;
    let mut count = 0;
    for a in &gens {
        for b in &gens {
            count += 1;
            if convolution_oracle(a, b, &ctx)? != multiply(a, b)? {
                bad += 1;
            }
        }
    }
    Ok((count, bad))
}

pub fn oracle_level_two(draws: usize, seed: u64) -> Result<(usize, usize)> {
    let ctx = OracleContext::new(&iterate(0, 3)?, 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for _ in 0..draws {
        let a = random_element(&mut rng, 2, 3, (-2, 2));
        let b = random_element(&mut rng, 2, 3, (-2, 2));
        if convolution_oracle(&a, &b, &ctx)? != multiply(&a, &b)? {
            bad += 1;
        }
    }
    Ok((draws, bad))
}

fn gen_el(g: &Generator) -> AlgebraElement {
    AlgebraElement::generator(g.clone())
}

/// One randomized instance of the relation suite; returns the names of
/// failed relations.
pub fn lemma_case<R: Rng>(rng: &mut R) -> Result<Vec<&'static str>> {
    let n = rng.gen_range(0..=3);
    let mut failed = Vec::new();
    let g1 = random_generator(rng, n, (-3, 3));
    let ph = |a: Angle| a.unit_phase();
    let ang = |p: u8, l: &Label| tile_angle(p, l);
    // Matched and unmatched right factors.
    let mut g2 = random_generator(rng, n, (-3, 3));
    g2.proto = g1.proto;
    g2.row = g1.col.clone();
    let mut other = random_generator(rng, n, (-3, 3));
    other.proto = 1 - g1.proto;
    if !multiply(&gen_el(&g1), &gen_el(&other))?.is_zero() {
        failed.push("zero_across_protos");
    }
    let mut miss = random_generator(rng, n, (-3, 3));
    miss.proto = g1.proto;
    if miss.row != g1.col && !multiply(&gen_el(&g1), &gen_el(&miss))?.is_zero() {
        failed.push("zero_on_mismatch");
    }
    let prod = multiply(&gen_el(&g1), &gen_el(&g2))?;
    let want = AlgebraElement::term(
        ph((ang(g1.proto, &g1.col) - ang(g1.proto, &g1.row)).scale(g2.k)),
        Generator { level: n, proto: g1.proto, row: g1.row.clone(), col: g2.col.clone(), k: g1.k + g2.k },
    );
    if prod != want {
        failed.push("phase_product");
    }
    let e = Generator { k: 0, ..g1.clone() };
    let e2 = Generator { k: 0, ..g2.clone() };
    if adjoint(&gen_el(&e)) != gen_el(&Generator { row: e.col.clone(), col: e.row.clone(), ..e.clone() }) {
        failed.push("adjoint_swaps");
    }
    if multiply(&gen_el(&e), &gen_el(&e2))? != gen_el(&Generator { col: e2.col.clone(), ..e.clone() }) {
        failed.push("matrix_units");
    }
    let zz = z(n);
    let lhs = multiply(&zz, &gen_el(&e))?;
    let rhs = multiply(&gen_el(&e), &zz)?.scale(&ph(ang(e.proto, &e.row) - ang(e.proto, &e.col)));
    if lhs != rhs || z_commutation_check(&g1).is_err() {
        failed.push("z_commutation");
    }
    if !is_partial_isometry(&gen_el(&g1)) {
        failed.push("partial_isometry");
    }
    let diag = Generator { col: g1.row.clone(), k: 0, ..g1.clone() };
    if !is_projection(&gen_el(&diag)) {
        failed.push("projection");
    }
    let a = random_element(rng, n, 4, (-2, 2));
    let id = identity(n);
    if multiply(&id, &a)? != a || multiply(&a, &id)? != a {
        failed.push("identity");
    }
    let b = random_element(rng, n, 3, (-2, 2));
    if adjoint(&multiply(&a, &b)?) != multiply(&adjoint(&b), &adjoint(&a))? {
        failed.push("adjoint_reverses");
    }
    Ok(failed)
}

pub fn lemma_suite(cases: usize, seed: u64) -> Result<(usize, Vec<String>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..cases {
        for f in lemma_case(&mut rng)? {
            failures.push(format!("case {i}: {f}"));
        }
    }
    Ok((cases, failures))
}

pub fn algebra() -> SuiteReport {
    let checks = vec![
        check("oracle_level1_all_pairs", || {
            let (n, bad) = oracle_level_one()?;
            Ok((bad == 0, format!("{n} products, {bad} disagreements")))
        }),
        check("oracle_level2_random", || {
            let (n, bad) = oracle_level_two(500, 42)?;
            Ok((bad == 0, format!("{n} products, {bad} disagreements")))
        }),
        check("relations", || {
            let (n, f) = lemma_suite(1000, 7)?;
            Ok((f.is_empty(), format!("{n} cases, failures {f:?}")))
        }),
    ];
    suite("algebra", checks)
}

pub fn tower() -> SuiteReport {
    let mut checks = vec![check("psi_hom_level1_all_pairs", || {
        let gens: Vec<AlgebraElement> = all_generators(1, -1..=2).into_iter().map(AlgebraElement::generator).collect();
        let mut bad = 0;
        for a in &gens {
            for b in &gens {
                bad += usize::from(!psi_hom_check(a, b)?);
            }
        }
        Ok((bad == 0, format!("{} pairs, {bad} failures", gens.len() * gens.len())))
    })];
    checks.push(check("psi_hom_level2_random", || {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut bad = 0;
        for _ in 0..500 {
            let a = random_element(&mut rng, 2, 4, (-3, 3));
            let b = random_element(&mut rng, 2, 4, (-3, 3));
            bad += usize::from(!psi_hom_check(&a, &b)?);
        }
        Ok((bad == 0, format!("500 pairs, {bad} failures")))
    }));
    checks.push(check("psi_literal_exponent_control", || {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut caught = 0;
        for _ in 0..100 {
            let a = random_element(&mut rng, 1, 3, (-2, 2));
            let b = random_element(&mut rng, 1, 3, (-2, 2));
            caught += usize::from(!psi_hom_check_with(&a, &b, PsiConvention::Literal)?);
        }
        Ok((caught > 0, format!("literal exponent rejected on {caught} of 100 pairs")))
    }));
    checks.push(check("phi_homomorphism", || {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut bad = 0;
        for i in 0..500 {
            let n = i % 3;
            let a = random_element(&mut rng, n, 4, (-2, 2));
            let b = random_element(&mut rng, n, 4, (-2, 2));
            let ok = phi(&multiply(&a, &b)?) == multiply(&phi(&a), &phi(&b))? && phi(&adjoint(&a)) == adjoint(&phi(&a));
            bad += usize::from(!ok);
        }
        let unital = (0..=3).all(|n| phi(&identity(n)) == identity(n + 1));
        Ok((bad == 0 && unital, format!("500 pairs, {bad} failures; unital {unital}")))
    }));
    checks.push(check("phi_general_form", || {
        let mut ok = true;
        for n in 0..=2 {
            let mut sum = AlgebraElement::zero(n);
            for (i, g) in all_generators(n, [0]).into_iter().enumerate() {
                sum.add_term(g, ExactComplex::int(i as i64 + 1, 0));
            }
            ok &= phi_general(&sum)? == phi(&sum);
        }
        Ok((ok, "index sets from the rule reproduce the closed form at levels 0..2".into()))
    }));
    checks.push(check("psi_phi_compatibility", || {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let mut bad = 0;
        for i in 0..200 {
            let n = i % 3;
            let a = random_element(&mut rng, n, 4, (-2, 2));
            let b = random_element(&mut rng, n, 4, (-2, 2));
            let lhs = psi(&phi(&a)).mul(&psi(&phi(&b)))?;
            bad += usize::from(lhs != psi(&phi(&multiply(&a, &b)?)));
        }
        Ok((bad == 0, format!("200 pairs, {bad} failures")))
    }));
    checks.push(check("norms", || {
        let g = AlgebraElement::generator(Generator::parse(2, 0, "3", "5")?);
        let (lo, hi) = norm_estimate(&psi(&g));
        let zz = z(0);
        let (clo, chi) = norm_estimate(&psi(&zz.add(&adjoint(&zz))?));
        let ok = lo >= 1.0 - 1e-9 && hi <= 1.0 + 1e-6 && (clo - 2.0).abs() <= 1e-6 && (chi - 2.0).abs() <= 1e-6;
        Ok((ok, format!("generator [{lo:.12}, {hi:.12}]; z+z* at level 0 [{clo:.12}, {chi:.12}]")))
    }));
    checks.push(check("simplicity", || {
        let g = Generator::parse(0, 0, "3", "5")?;
        let tenth = simplicity_stage(&Rational::ZERO, &Rational::new(1, 10), &g)?;
        let full = simplicity_stage(&Rational::ZERO, &Rational::ONE, &g)?;
        let ok = tenth.m % 2 == 0 && tenth.m <= 40 && check_cover(&tenth) && full.m == 2 && check_cover(&full);
        Ok((ok, format!("arc 1/10: M = {}; full circle: M = {}", tenth.m, full.m)))
    }));
    suite("tower", checks)
}

pub fn ktheory() -> SuiteReport {
    let g = KGroup::default();
    let mut checks = vec![check("invariants_exhaustive", || {
        // Pushing to stage 4 decides equality for every element below it.
        use std::collections::HashMap;
        let mut by_class: HashMap<[num_bigint::BigInt; 2], String> = HashMap::new();
        let mut by_inv: HashMap<String, [num_bigint::BigInt; 2]> = HashMap::new();
        let mut bad = 0;
        let mut count = 0;
        for n in 0..=4 {
            for v1 in -20..=20 {
                for v2 in -20..=20 {
                    count += 1;
                    let x = LimitElement::new(n, v1, v2);
                    let key = g.push(&x, 4).v;
                    let inv = g.invariants(&x);
                    let inv_s = inv.to_string();
                    let parity_ok = {
                        let num: num_bigint::BigInt = inv.q.num.parse().unwrap();
                        let r: num_bigint::BigInt = inv.r.parse().unwrap();
                        ((num - r) % 2u8) == num_bigint::BigInt::from(0)
                    };
                    if by_class.entry(key.clone()).or_insert_with(|| inv_s.clone()) != &inv_s
                        || by_inv.entry(inv_s).or_insert_with(|| key.clone()) != &key
                        || !parity_ok
                    {
                        bad += 1;
                    }
                }
            }
        }
        Ok((bad == 0, format!("{count} elements, {} classes, {bad} violations", by_class.len())))
    })];
    checks.push(check("eigen_functionals", || {
        let s = System::pinwheel();
        Ok((s.functionals_are_eigen() && s.det() == -5, "(1,1)A = 5(1,1), (1,-1)A = -(1,-1), det A = -5".into()))
    }));
    checks.push(check("group_axioms", || {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut el = || LimitElement::new(rng.gen_range(0..5), rng.gen_range(-50..50), rng.gen_range(-50..50));
        let mut bad = 0;
        for _ in 0..300 {
            let (a, b, c) = (el(), el(), el());
            let ok = g.equal(&g.add(&g.add(&a, &b), &c), &g.add(&a, &g.add(&b, &c)))
                && g.equal(&g.add(&a, &b), &g.add(&b, &a))
                && g.add(&a, &g.neg(&a)) == LimitElement::zero()
                && g.canonical(&g.canonical(&a)) == g.canonical(&a);
            bad += usize::from(!ok);
        }
        Ok((bad == 0, format!("300 triples, {bad} failures")))
    }));
    checks.push(check("quotient_denominators", || {
        let ok = (0..=8).all(|n| {
            let q = g.quotient_map(&LimitElement::new(n, 1, 0));
            q.num == "1" && q.exp == n
        });
        Ok((ok, "class N:(1,0) maps to 1/5^N for N <= 8".into()))
    }));
    checks.push(check("nonsplit", || {
        let r = nonsplit_certificate(15625)?;
        let r1 = nonsplit_certificate(1)?;
        let d = nonsplit_certificate_for(System::diagonal(), 15625)?;
        let ok = r.nonsplit && r.depth == 7 && r1.nonsplit && r1.depth == 1 && !d.nonsplit;
        Ok((
            ok,
            format!(
                "bound 5^6: depth {}, {} candidates, nonsplit {}; bound 1: depth {}; diagonal control section r = {:?}",
                r.depth, r.candidates_checked, r.nonsplit, r1.depth, d.section
            ),
        ))
    }));
    suite("ktheory", checks)
}
