//! End-to-end acceptance runs. Each test prints one line:
//! `criterion NN PASS|FAIL name: detail (elapsed)`.
//! Use `cargo test --test acceptance -- --nocapture --test-threads 1` to see them in order.

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use pinwheel::algebra::{adjoint, all_generators, identity, multiply, random_element, z, AlgebraElement, Generator};
use pinwheel::geometry::patch::label_angle_of;
use pinwheel::geometry::{adjacency_census, find_decompositions, iterate, pinwheel_rule, prototiles, verify_rule};
use pinwheel::hull::separation_epsilon;
use pinwheel::ktheory::{nonsplit_certificate, nonsplit_certificate_for, KGroup, LimitElement, System};
use pinwheel::numerics::{Angle, ExactComplex, QRoot5, Rational};
use pinwheel::tower::{
    check_cover, index_set, norm_estimate, phi, phi_general, psi, psi_hom_check, simplicity_stage, Inclusion,
};
use pinwheel::verify;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn report(n: u32, name: &str, pass: bool, detail: String, elapsed: Duration) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("criterion {n:02} {tag} {name}: {detail} ({:.2}s)", elapsed.as_secs_f64());
    assert!(pass, "criterion {n} ({name}) failed: {detail}");
}

fn limit(elapsed: Duration, secs: u64) -> bool {
    elapsed < Duration::from_secs(secs)
}

#[test]
fn criterion_01_decomposition_discovery() {
    let t = Instant::now();
    let counts: Vec<usize> = prototiles().iter().map(|p| find_decompositions(p).len()).collect();
    let found = t.elapsed();
    let rule = pinwheel_rule();
    let clauses = verify_rule(rule);
    let matrix = rule.matrix();
    let centre = rule.child(0, 3);
    let central_ok = centre.proto == 0 && centre.angle() == Angle::new(1, 0);
    let pass = limit(found, 60) && counts.iter().all(|&c| c > 0) && clauses.all_pass() && matrix == [[2, 3], [3, 2]] && central_ok;
    report(
        1,
        "decomposition discovery",
        pass,
        format!("candidates {counts:?} in {:.2}s; clauses pass {}; matrix {matrix:?}; central child R_theta(p0) {central_ok}", found.as_secs_f64(), clauses.all_pass()),
        t.elapsed(),
    );
}

#[test]
fn criterion_02_patch_counts() {
    let t = Instant::now();
    let mut pass = iterate(0, 2).map(|p| p.len() == 25).unwrap_or(false);
    let mut m = [[1u64, 0], [0, 1]];
    let mut detail = Vec::new();
    for n in 0..=6usize {
        let p = iterate(0, n).expect("level within limit");
        let want = 5usize.pow(n as u32);
        let ok = p.len() == want
            && p.total_area() == QRoot5::int(want as i64)
            && p.overlaps().is_empty()
            && p.type_counts() == [m[0][0] as usize, m[1][0] as usize];
        pass &= ok;
        detail.push(format!("N={n}:{}{:?}", p.len(), p.type_counts()));
        m = [[2 * m[0][0] + 3 * m[1][0], 2 * m[0][1] + 3 * m[1][1]], [3 * m[0][0] + 2 * m[1][0], 3 * m[0][1] + 2 * m[1][1]]];
    }
    let elapsed = t.elapsed();
    report(2, "patch counts and exactness", pass && limit(elapsed, 30), detail.join(" "), elapsed);
}

#[test]
fn criterion_03_central_rotation() {
    let t = Instant::now();
    let bad: Vec<usize> =
        (0..=8).filter(|&n| label_angle_of(pinwheel_rule(), 0, &vec![3; n]) != Angle::new(n as i64, 0)).collect();
    report(3, "central tile rotation", bad.is_empty(), format!("3^N at angle (N,0) for N <= 8, failures {bad:?}"), t.elapsed());
}

#[test]
fn criterion_04_oracle_equivalence() {
    let t = Instant::now();
    let (n1, bad1) = verify::oracle_level_one().expect("oracle context");
    let (n2, bad2) = verify::oracle_level_two(500, 2024).expect("oracle context");
    let elapsed = t.elapsed();
    let pass = n1 == 200 * 200 && bad1 == 0 && n2 == 500 && bad2 == 0 && limit(elapsed, 60);
    report(4, "algebra oracle", pass, format!("level 1: {n1} products, {bad1} bad; level 2: {n2} products, {bad2} bad"), elapsed);
}

#[test]
fn criterion_05_relations() {
    let t = Instant::now();
    let (n, failures) = verify::lemma_suite(1000, 99).expect("suite runs");
    report(5, "relation suite", failures.is_empty() && n == 1000, format!("{n} cases, failures {failures:?}"), t.elapsed());
}

#[test]
fn criterion_06_tower() {
    let t = Instant::now();
    let gens: Vec<AlgebraElement> = all_generators(1, -1..=2).into_iter().map(AlgebraElement::generator).collect();
    let mut psi_bad = 0;
    for a in &gens {
        for b in &gens {
            psi_bad += usize::from(!psi_hom_check(a, b).unwrap());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for _ in 0..500 {
        let a = random_element(&mut rng, 2, 4, (-3, 3));
        let b = random_element(&mut rng, 2, 4, (-3, 3));
        psi_bad += usize::from(!psi_hom_check(&a, &b).unwrap());
    }
    let mut phi_bad = 0;
    for i in 0..500 {
        let n = i % 3;
        let a = random_element(&mut rng, n, 4, (-2, 2));
        let b = random_element(&mut rng, n, 4, (-2, 2));
        let mult = phi(&multiply(&a, &b).unwrap()) == multiply(&phi(&a), &phi(&b)).unwrap();
        phi_bad += usize::from(!mult || phi(&adjoint(&a)) != adjoint(&phi(&a)));
    }
    let unital = (0..=3).all(|n| phi(&identity(n)) == identity(n + 1));

    let inc = |v: &[(u8, u8)]| v.iter().map(|&(proto, digit)| Inclusion { proto, digit }).collect::<BTreeSet<_>>();
    let closed = [inc(&[(0, 3), (0, 4), (1, 1), (1, 2), (1, 5)]), inc(&[(0, 1), (0, 2), (0, 5), (1, 3), (1, 4)])];
    let sets_ok = (0..2u8).all(|p| index_set(p).into_iter().collect::<BTreeSet<_>>() == closed[p as usize]);
    let mut general_ok = true;
    for n in 0..=2 {
        let mut sum = AlgebraElement::zero(n);
        for (i, g) in all_generators(n, [-1, 0, 2]).into_iter().enumerate() {
            sum.add_term(g, ExactComplex::int(i as i64 % 7 - 3, 1));
        }
        general_ok &= phi_general(&sum).unwrap() == phi(&sum);
    }

    let mut compat_bad = 0;
    for i in 0..200 {
        let n = i % 3;
        let a = random_element(&mut rng, n, 4, (-2, 2));
        let b = random_element(&mut rng, n, 4, (-2, 2));
        let lhs = psi(&phi(&a)).mul(&psi(&phi(&b))).unwrap();
        compat_bad += usize::from(lhs != psi(&phi(&multiply(&a, &b).unwrap())));
    }
    let pass = psi_bad == 0 && phi_bad == 0 && unital && sets_ok && general_ok && compat_bad == 0;
    report(
        6,
        "tower maps",
        pass,
        format!("psi failures {psi_bad}/40500; phi failures {phi_bad}/500, unital {unital}; index sets {sets_ok}; general form {general_ok}; psi-phi failures {compat_bad}/200"),
        t.elapsed(),
    );
}

#[test]
fn criterion_07_norms() {
    let t = Instant::now();
    let g = AlgebraElement::generator(Generator::parse(1, 0, "35", "21").unwrap());
    let (lo, hi) = norm_estimate(&psi(&g));
    let zz = z(0);
    let (clo, chi) = norm_estimate(&psi(&zz.add(&adjoint(&zz)).unwrap()));
    let pass = lo >= 1.0 - 1e-9 && hi <= 1.0 + 1e-6 && (clo - 2.0).abs() <= 1e-6 && (chi - 2.0).abs() <= 1e-6;
    report(7, "norm estimates", pass, format!("generator [{lo:.12}, {hi:.12}]; z+z* [{clo:.12}, {chi:.12}]"), t.elapsed());
}

#[test]
fn criterion_08_simplicity() {
    let t = Instant::now();
    let g = Generator::parse(0, 0, "", "").unwrap();
    let tenth = simplicity_stage(&Rational::ZERO, &Rational::new(1, 10), &g).unwrap();
    let tenth_ok = tenth.m.is_multiple_of(2) && tenth.m <= 40 && check_cover(&tenth);
    let elapsed = t.elapsed();
    let full = simplicity_stage(&Rational::ZERO, &Rational::ONE, &g).unwrap();
    let pass = tenth_ok && limit(elapsed, 5) && full.m == 2 && check_cover(&full);
    report(
        8,
        "simplicity cover",
        pass,
        format!("arc 1/10: M = {} in {:.3}s, cover checked {}; full circle: M = {}", tenth.m, elapsed.as_secs_f64(), check_cover(&tenth), full.m),
        t.elapsed(),
    );
}

#[test]
fn criterion_09_ktheory() {
    let t = Instant::now();
    let g = KGroup::default();
    let mut classes: HashMap<[BigInt; 2], String> = HashMap::new();
    let mut by_inv: HashMap<String, [BigInt; 2]> = HashMap::new();
    let mut violations = 0;
    for n in 0..=4 {
        for v1 in -20..=20 {
            for v2 in -20..=20 {
                let x = LimitElement::new(n, v1, v2);
                let key = g.push(&x, 4).v;
                let inv = g.invariants(&x).to_string();
                let clash = classes.entry(key.clone()).or_insert_with(|| inv.clone()) != &inv
                    || by_inv.entry(inv).or_insert_with(|| key.clone()) != &key;
                violations += usize::from(clash);
            }
        }
    }
    let eigen = System::pinwheel().functionals_are_eigen();
    let cert = nonsplit_certificate(5i64.pow(6)).unwrap();
    let control = nonsplit_certificate_for(System::diagonal(), 5i64.pow(6)).unwrap();
    let quotient_ok = (0..=8).all(|n| {
        let q = g.quotient_map(&LimitElement::new(n, 1, 0));
        q.num == "1" && q.exp == n
    });
    let pass = violations == 0 && eigen && cert.nonsplit && !control.nonsplit && control.section.is_some() && quotient_ok;
    report(
        9,
        "K-theory",
        pass,
        format!(
            "{} classes, {violations} violations; eigen {eigen}; nonsplit {} (depth {}); diagonal section {:?}; denominators {quotient_ok}",
            classes.len(),
            cert.nonsplit,
            cert.depth,
            control.section
        ),
        t.elapsed(),
    );
}

#[test]
fn criterion_10_flc_census() {
    let t = Instant::now();
    let c5 = adjacency_census(&iterate(0, 5).unwrap()).unwrap().len();
    let c6 = adjacency_census(&iterate(0, 6).unwrap()).unwrap().len();
    let elapsed = t.elapsed();
    report(10, "FLC census", c5 == c6 && limit(elapsed, 120), format!("classes N=5: {c5}, N=6: {c6}"), elapsed);
}

#[test]
fn criterion_11_separation() {
    let t = Instant::now();
    let eps = separation_epsilon();
    let want = QRoot5::new(Rational::ZERO, Rational::new(2, 15));
    let p = iterate(0, 3).unwrap();
    let pts: Vec<_> = p.tiles.iter().map(|(_, t)| t.puncture().clone()).collect();
    let eps2 = eps.square();
    let too_close = (0..pts.len())
        .flat_map(|i| (i + 1..pts.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| (&pts[i] - &pts[j]).norm_sqr() < eps2)
        .count();
    report(11, "separation constant", eps == want && too_close == 0, format!("epsilon {eps}; pairs closer than epsilon {too_close}"), t.elapsed());
}

#[test]
fn criterion_12_determinism() {
    let t = Instant::now();
    let a = verify::run("all").unwrap().to_json();
    let b = verify::run("all").unwrap().to_json();
    report(12, "deterministic reports", a == b, format!("{} bytes, identical {}", a.len(), a == b), t.elapsed());
}
