use num_bigint::{BigInt, Sign};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pinwheel::algebra::{adjoint, multiply, random_element};
use pinwheel::geometry::patch::substitute_tile;
use pinwheel::geometry::{iterate, pinwheel_rule, Tile};
use pinwheel::hull::{rotation_factor, u_membership, v_compose, v_invert, v_range, v_source, ClopenV, Membership, PointedPatch};
use pinwheel::ktheory::{KGroup, LimitElement};
use pinwheel::numerics::{Angle, ExactComplex, QRoot5, Rational, RigidMotion, Vec2};

fn sgn(x: &BigInt) -> i32 {
    match x.sign() {
        Sign::Plus => 1,
        Sign::Minus => -1,
        Sign::NoSign => 0,
    }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-1000i64..1000, 1i64..200).prop_map(|(n, d)| Rational::new(n, d))
}

fn big_rational() -> impl Strategy<Value = Rational> {
    (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| Rational::new(n, d))
}

fn qroot5() -> impl Strategy<Value = QRoot5> {
    (rational(), rational()).prop_map(|(a, b)| QRoot5::new(a, b))
}

fn complex() -> impl Strategy<Value = ExactComplex> {
    (qroot5(), qroot5()).prop_map(|(re, im)| ExactComplex::new(re, im))
}

fn angle() -> impl Strategy<Value = Angle> {
    (-40i64..=40, 0i64..4).prop_map(|(k, q)| Angle::new(k, q))
}

fn motion() -> impl Strategy<Value = RigidMotion> {
    (angle(), qroot5(), qroot5()).prop_map(|(a, x, y)| RigidMotion::new(a, Vec2::new(x, y)))
}

proptest! {
    #[test]
    fn rational_field(a in big_rational(), b in big_rational(), c in big_rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Rational::ZERO);
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
        prop_assert_eq!((&a + &b).to_big(), a.to_big() + b.to_big());
        prop_assert_eq!((&a * &b).to_big(), a.to_big() * b.to_big());
    }

    #[test]
    fn qroot5_field(a in qroot5(), b in qroot5(), c in qroot5()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip().unwrap(), QRoot5::ONE);
        }
        prop_assert_eq!((&a * &b).norm(), &a.norm() * &b.norm());
    }

    #[test]
    fn qroot5_sign_matches_high_precision(a in big_rational(), b in big_rational()) {
        // sign(a + b√5) from integers: compare a² with 5b² under the signs.
        let x = QRoot5::new(a.clone(), b.clone());
        let (an, ad, bn, bd) = (a.numer(), a.denom(), b.numer(), b.denom());
        // a + b√5 has the sign of A + B√5 with A = an·bd, B = bn·ad (denominators positive).
        let big_a = &an * &bd;
        let big_b = &bn * &ad;
        let five_b2 = &big_b * &big_b * 5u8;
        let a2 = &big_a * &big_a;
        let sa = sgn(&big_a);
        let sb = sgn(&big_b);
        let want = if sa == 0 { sb } else if sb == 0 || sa == sb || a2 > five_b2 { sa } else { sb };
        prop_assert_eq!(x.sign(), want);
        let f = x.to_f64();
        if f.abs() > 1e-6 * (a.to_f64().abs() + b.to_f64().abs()) {
            prop_assert_eq!(x.sign(), if f > 0.0 { 1 } else { -1 });
        }
    }

    #[test]
    fn complex_field(a in complex(), b in complex(), c in complex()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a * &b).norm_sqr(), &a.norm_sqr() * &b.norm_sqr());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip().unwrap(), ExactComplex::ONE);
        }
    }

    #[test]
    fn angle_is_a_homomorphism(a in angle(), b in angle()) {
        prop_assert_eq!((a + b).unit_phase(), &a.unit_phase() * &b.unit_phase());
        prop_assert_eq!((-a).unit_phase(), a.unit_phase().conj());
        prop_assert_eq!(a.unit_phase().norm_sqr(), QRoot5::ONE);
        let (c, s) = a.cos_sin();
        prop_assert_eq!(Angle::from_unit(&c, &s), Some(a));
        let sum = (a + b).to_radians() - a.to_radians() - b.to_radians();
        let turns = sum / std::f64::consts::TAU;
        prop_assert!((turns - turns.round()).abs() < 1e-9);
    }

    #[test]
    fn motions_form_a_group(g in motion(), h in motion(), p in (qroot5(), qroot5())) {
        let p = Vec2::new(p.0, p.1);
        prop_assert_eq!(g.compose(&h).apply(&p), g.apply(&h.apply(&p)));
        prop_assert_eq!(g.inverse().apply(&g.apply(&p)), p.clone());
        prop_assert_eq!(g.compose(&g.inverse()), RigidMotion::identity());
    }

    #[test]
    fn substitution_is_equivariant(g in motion(), proto in 0u8..2) {
        // ω(γ·t) = (λγλ⁻¹)·ω(t): same rotation, translation scaled by √5.
        let t = Tile::new(proto, RigidMotion::identity());
        let lhs = substitute_tile(pinwheel_rule(), &t.moved(&g));
        let conj = g.scale_translation(&QRoot5::new(Rational::ZERO, Rational::ONE));
        let rhs = substitute_tile(pinwheel_rule(), &t).map(|c| c.moved(&conj));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn groupoid_axioms(i in 0usize..25, j in 0usize..25, k in 0usize..25) {
        let p = iterate(0, 2).unwrap();
        let l = |n: usize| p.tiles[n].0.to_string();
        let v = ClopenV::new(&p, &l(i), &l(j)).unwrap();
        let w = ClopenV::new(&p, &l(j), &l(k)).unwrap();
        prop_assert_eq!(v_invert(&v_invert(&v)), v.clone());
        prop_assert_eq!(v_range(&v_invert(&v)), v_source(&v));
        let unit = v_compose(&v, &v_invert(&v)).unwrap();
        prop_assert!(unit.is_diagonal());
        prop_assert_eq!(v_range(&unit), v_range(&v));
        let vw = v_compose(&v, &w).unwrap();
        prop_assert_eq!(v_range(&vw), v_range(&v));
        prop_assert_eq!(v_source(&vw), v_source(&w));
    }

    #[test]
    fn membership_is_rotation_equivariant(i in 0usize..25, a in angle()) {
        let p = iterate(0, 2).unwrap();
        let u = PointedPatch::from_patch(&p, &p.tiles[i].0).unwrap();
        prop_assert_eq!(u_membership(&u, &u.rotated(a)), Membership::Member(a));
        let (b, s) = rotation_factor(&u.rotated(a));
        prop_assert_eq!(b, u.origin_tile().angle() + a);
        prop_assert_eq!(s.origin_tile().angle(), Angle::ZERO);
    }

    #[test]
    fn algebra_is_associative_and_starred(seed in any::<u64>(), level in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_element(&mut rng, level, 3, (-2, 2));
        let b = random_element(&mut rng, level, 3, (-2, 2));
        let c = random_element(&mut rng, level, 3, (-2, 2));
        let ab_c = multiply(&multiply(&a, &b).unwrap(), &c).unwrap();
        let a_bc = multiply(&a, &multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert_eq!(adjoint(&adjoint(&a)), a.clone());
        prop_assert_eq!(adjoint(&multiply(&a, &b).unwrap()), multiply(&adjoint(&b), &adjoint(&a)).unwrap());
    }

    #[test]
    fn k_group_axioms(
        x in (0u32..6, -500i64..500, -500i64..500),
        y in (0u32..6, -500i64..500, -500i64..500),
        z in (0u32..6, -500i64..500, -500i64..500),
    ) {
        let g = KGroup::default();
        let (x, y, z) = (LimitElement::new(x.0, x.1, x.2), LimitElement::new(y.0, y.1, y.2), LimitElement::new(z.0, z.1, z.2));
        prop_assert!(g.equal(&g.add(&g.add(&x, &y), &z), &g.add(&x, &g.add(&y, &z))));
        prop_assert!(g.equal(&g.add(&x, &y), &g.add(&y, &x)));
        prop_assert!(g.equal(&g.add(&x, &LimitElement::zero()), &x));
        prop_assert!(g.equal(&g.add(&x, &g.neg(&x)), &LimitElement::zero()));
        prop_assert!(g.equal(&g.push(&x, x.stage + 3), &x));
        prop_assert_eq!(g.equal(&x, &y), g.invariants(&x) == g.invariants(&y));
        let parsed: LimitElement = g.canonical(&x).to_string().parse().unwrap();
        prop_assert_eq!(parsed, g.canonical(&x));
    }
}

#[test]
fn rotations_are_distinct_in_range() {
    let mut seen = std::collections::HashSet::new();
    for k in -40..=40 {
        for q in 0..4 {
            let m = Angle::new(k, q).rotation_matrix();
            assert!(seen.insert(format!("{m:?}")), "repeated rotation matrix at ({k},{q})");
        }
    }
}
