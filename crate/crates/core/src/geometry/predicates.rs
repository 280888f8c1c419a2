//! Exact planar predicates over Q(√5).

use std::cmp::Ordering;

use crate::numerics::{QRoot5, Vec2};

pub type Triangle = [Vec2; 3];

/// Sign of the turn `a → b → c`.
pub fn orient(a: &Vec2, b: &Vec2, c: &Vec2) -> i32 {
    (b - a).cross(&(c - a)).sign()
}

pub fn signed_area2(poly: &[Vec2]) -> QRoot5 {
    let mut acc = QRoot5::ZERO;
    for i in 0..poly.len() {
        let j = (i + 1) % poly.len();
        acc = &acc + &poly[i].cross(&poly[j]);
    }
    acc
}

pub fn area(poly: &[Vec2]) -> QRoot5 {
    signed_area2(poly).scale(&crate::numerics::Rational::new(1, 2)).abs()
}

/// Closed containment in a counter-clockwise triangle.
pub fn in_triangle(p: &Vec2, t: &Triangle) -> bool {
    (0..3).all(|i| orient(&t[i], &t[(i + 1) % 3], p) >= 0)
}

pub fn strictly_in_triangle(p: &Vec2, t: &Triangle) -> bool {
    (0..3).all(|i| orient(&t[i], &t[(i + 1) % 3], p) > 0)
}

/// Whether `p` lies on the open segment `(a, b)`.
pub fn on_open_segment(p: &Vec2, a: &Vec2, b: &Vec2) -> bool {
    if orient(a, b, p) != 0 {
        return false;
    }
    let d = b - a;
    let s = (p - a).dot(&d);
    s.sign() > 0 && s < d.norm_sqr()
}

/// Interior-disjointness of two counter-clockwise triangles by separating axes.
pub fn interiors_disjoint(s: &Triangle, t: &Triangle) -> bool {
    fn separates(a: &Triangle, b: &Triangle) -> bool {
        (0..3).any(|i| {
            let (p, q) = (&a[i], &a[(i + 1) % 3]);
            b.iter().all(|v| orient(p, q, v) <= 0)
        })
    }
    separates(s, t) || separates(t, s)
}

/// Clips `subject` to the closed left half-plane of the directed line `a → b`.
fn clip(subject: &[Vec2], a: &Vec2, b: &Vec2) -> Vec<Vec2> {
    let mut out = Vec::with_capacity(subject.len() + 1);
    let d = b - a;
    let side = |p: &Vec2| d.cross(&(p - a));
    for i in 0..subject.len() {
        let p = &subject[i];
        let q = &subject[(i + 1) % subject.len()];
        let sp = side(p);
        let sq = side(q);
        if sp.sign() >= 0 {
            out.push(p.clone());
        }
        if sp.sign() * sq.sign() < 0 {
            let t = &sp / &(&sp - &sq);
            out.push(p + &(q - p).scale(&t));
        }
    }
    out
}

/// Exact area of the intersection of two convex counter-clockwise polygons.
pub fn intersection_area(s: &[Vec2], t: &[Vec2]) -> QRoot5 {
    let mut poly = s.to_vec();
    for i in 0..t.len() {
        if poly.len() < 3 {
            return QRoot5::ZERO;
        }
        poly = clip(&poly, &t[i], &t[(i + 1) % t.len()]);
    }
    if poly.len() < 3 {
        QRoot5::ZERO
    } else {
        area(&poly)
    }
}

/// Squared side lengths in vertex order: `|v1 − v0|², |v2 − v1|², |v0 − v2|²`.
pub fn side_lengths_sqr(t: &Triangle) -> [QRoot5; 3] {
    [(&t[1] - &t[0]).norm_sqr(), (&t[2] - &t[1]).norm_sqr(), (&t[0] - &t[2]).norm_sqr()]
}

fn half(d: &Vec2) -> u8 {
    if d.y.sign() > 0 || (d.y.sign() == 0 && d.x.sign() > 0) {
        0
    } else {
        1
    }
}

/// Orders nonzero directions by polar angle in `[0, 2π)`.
pub fn direction_cmp(a: &Vec2, b: &Vec2) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&a.cross(b).sign()))
}

pub fn same_direction(a: &Vec2, b: &Vec2) -> bool {
    a.cross(b).sign() == 0 && a.dot(b).sign() > 0
}
