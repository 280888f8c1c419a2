use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::predicates::Triangle;
use crate::numerics::{QRoot5, RigidMotion, Vec2};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProtoTile {
    pub id: u8,
    /// Counter-clockwise.
    pub vertices: Triangle,
    pub puncture: Vec2,
}

/// The (1, 2, √5) right triangle and its mirror image, barycenters at the origin.
pub fn default_prototiles() -> (ProtoTile, ProtoTile) {
    let r = |n: i64| QRoot5::rat(n, 3);
    let p0 = ProtoTile {
        id: 0,
        vertices: [Vec2::new(r(-4), r(-1)), Vec2::new(r(2), r(-1)), Vec2::new(r(2), r(2))],
        puncture: Vec2::ZERO,
    };
    let p1 = ProtoTile {
        id: 1,
        vertices: [Vec2::new(r(-4), r(1)), Vec2::new(r(2), r(-2)), Vec2::new(r(2), r(1))],
        puncture: Vec2::ZERO,
    };
    (p0, p1)
}

pub fn prototiles() -> &'static [ProtoTile; 2] {
    static P: OnceLock<[ProtoTile; 2]> = OnceLock::new();
    P.get_or_init(|| {
        let (a, b) = default_prototiles();
        [a, b]
    })
}

/// Reflection across the x-axis, which exchanges the two protos.
pub fn mirror(p: &Vec2) -> Vec2 {
    Vec2::new(p.x.clone(), -&p.y)
}

/// The mirror conjugate of a placed tile.
pub fn mirror_pose(proto: u8, pose: &RigidMotion) -> (u8, RigidMotion) {
    (1 - proto, RigidMotion::new(-pose.angle, mirror(&pose.translation)))
}

/// Minimum exact distance from the puncture to an edge line.
pub fn puncture_clearance(p: &ProtoTile) -> QRoot5 {
    (0..3)
        .map(|i| {
            let a = &p.vertices[i];
            let b = &p.vertices[(i + 1) % 3];
            let d = b - a;
            // |cross| / |d|, with |d| ∈ {1, 2, √5}
            let c = d.cross(&(&p.puncture - a)).abs();
            let len = d.norm_sqr().sqrt_exact().expect("edge length in Q(√5)");
            &c / &len
        })
        .min()
        .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::predicates::{area, orient, side_lengths_sqr, strictly_in_triangle};

    #[test]
    fn shape() {
        for p in prototiles() {
            let mut s = side_lengths_sqr(&p.vertices).to_vec();
            s.sort();
            assert_eq!(s, vec![QRoot5::int(1), QRoot5::int(4), QRoot5::int(5)]);
            assert_eq!(area(&p.vertices), QRoot5::ONE);
            assert_eq!(orient(&p.vertices[0], &p.vertices[1], &p.vertices[2]), 1);
            assert!(strictly_in_triangle(&p.puncture, &p.vertices));
        }
    }

    #[test]
    fn mirror_relation() {
        let [p0, p1] = prototiles();
        let mut m: Vec<_> = p0.vertices.iter().map(mirror).collect();
        m.sort();
        let mut v = p1.vertices.to_vec();
        v.sort();
        assert_eq!(m, v);
    }

    #[test]
    fn clearance() {
        let [p0, p1] = prototiles();
        let expect = QRoot5::from_parts(0, 1, 2, 15);
        assert_eq!(puncture_clearance(p0), expect);
        assert_eq!(puncture_clearance(p1), expect);
        assert!((expect.to_f64() - 2.0 / (3.0 * 5f64.sqrt())).abs() < 1e-15);
    }
}
