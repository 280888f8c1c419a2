//! Backtracking search for dissections of the inflated proto-tile.
//!
//! The uncovered region is tracked implicitly: at every vertex of the
//! region or of a placed tile we compute the exact set of free directions.
//! The free corner of smallest angle is filled first; any tile covering it
//! must have a vertex there with an edge along the corner's first ray.

use std::cmp::Ordering;

use super::predicates::{
    direction_cmp, in_triangle, interiors_disjoint, on_open_segment, same_direction,
    strictly_in_triangle, Triangle,
};
use super::prototile::{prototiles, ProtoTile};
use super::tile::Tile;
use crate::numerics::{Angle, ExactComplex, QRoot5, RigidMotion, Vec2};

/// The √5-inflation of a proto-tile.
pub fn inflated(p: &ProtoTile) -> Triangle {
    p.vertices.clone().map(|v| v.scale(&QRoot5::SQRT5))
}

/// Every dissection of `λ·proto` into congruent copies of the two protos.
pub fn find_decompositions(proto: &ProtoTile) -> Vec<Vec<Tile>> {
    let region = inflated(proto);
    let n = 5;
    let mut out = Vec::new();
    let mut placed: Vec<(Tile, Triangle)> = Vec::new();
    backtrack(&region, n, &mut placed, &mut out);
    for d in &mut out {
        d.sort_by_key(tile_key);
    }
    out.sort_by(|a, b| {
        let ka: Vec<_> = a.iter().map(tile_key).collect();
        let kb: Vec<_> = b.iter().map(tile_key).collect();
        ka.cmp(&kb)
    });
    out.dedup();
    out
}

fn tile_key(t: &Tile) -> (u8, Angle, Vec2) {
    (t.proto, t.pose.angle, t.pose.translation.clone())
}

fn backtrack(region: &Triangle, n: usize, placed: &mut Vec<(Tile, Triangle)>, out: &mut Vec<Vec<Tile>>) {
    if placed.len() == n {
        out.push(placed.iter().map(|(t, _)| t.clone()).collect());
        return;
    }
    let Some((corner, start, end)) = smallest_free_corner(region, placed) else {
        return;
    };
    for (tile, tri) in placements(&corner, &start, &end) {
        if !tri.iter().all(|v| in_triangle(v, region)) {
            continue;
        }
        if !placed.iter().all(|(_, o)| interiors_disjoint(o, &tri)) {
            continue;
        }
        placed.push((tile, tri));
        backtrack(region, n, placed, out);
        placed.pop();
    }
}

/// A closed angular sector at a point, from `start` counter-clockwise to `end`.
enum Blocked {
    Sector(Vec2, Vec2),
    HalfPlane(Vec2),
    All,
}

fn relation(p: &Vec2, tri: &Triangle) -> Option<Blocked> {
    for i in 0..3 {
        if &tri[i] == p {
            let next = &tri[(i + 1) % 3] - p;
            let prev = &tri[(i + 2) % 3] - p;
            return Some(Blocked::Sector(next, prev));
        }
    }
    for i in 0..3 {
        let (a, b) = (&tri[i], &tri[(i + 1) % 3]);
        if on_open_segment(p, a, b) {
            return Some(Blocked::HalfPlane(b - a));
        }
    }
    if strictly_in_triangle(p, tri) {
        Some(Blocked::All)
    } else {
        None
    }
}

fn strictly_inside(b: &Blocked, r: &Vec2) -> bool {
    match b {
        Blocked::Sector(s, e) => s.cross(r).sign() > 0 && r.cross(e).sign() > 0,
        Blocked::HalfPlane(s) => s.cross(r).sign() > 0,
        Blocked::All => true,
    }
}

fn boundary(b: &Blocked) -> Vec<Vec2> {
    match b {
        Blocked::Sector(s, e) => vec![s.clone(), e.clone()],
        Blocked::HalfPlane(s) => vec![s.clone(), -s],
        Blocked::All => vec![],
    }
}

/// Some direction strictly inside the counter-clockwise arc `a → b`.
fn interior_direction(a: &Vec2, b: &Vec2) -> Vec2 {
    if same_direction(a, b) {
        return -a;
    }
    match a.cross(b).sign() {
        1 => a + b,
        -1 => -&(a + b),
        _ => Vec2::new(-&a.y, a.x.clone()),
    }
}

/// Free sectors at `p`: directions inside the region and outside every tile.
fn free_sectors(p: &Vec2, region: &Triangle, placed: &[(Tile, Triangle)]) -> Vec<(Vec2, Vec2)> {
    let Some(reg) = relation(p, region) else {
        return vec![];
    };
    let blocks: Vec<Blocked> = placed.iter().filter_map(|(_, t)| relation(p, t)).collect();
    if blocks.iter().any(|b| matches!(b, Blocked::All)) {
        return vec![];
    }
    let mut dirs: Vec<Vec2> = boundary(&reg);
    for b in &blocks {
        dirs.extend(boundary(b));
    }
    dirs.sort_by(direction_cmp);
    dirs.dedup_by(|a, b| same_direction(a, b));
    if dirs.is_empty() {
        return vec![];
    }
    let m = dirs.len();
    let free: Vec<bool> = (0..m)
        .map(|i| {
            let r = interior_direction(&dirs[i], &dirs[(i + 1) % m]);
            strictly_inside(&reg, &r) && !blocks.iter().any(|b| strictly_inside(b, &r))
        })
        .collect();
    if free.iter().all(|&f| f) {
        return vec![];
    }
    // Merge runs of free elementary arcs, starting after a blocked one.
    let first = free.iter().position(|&f| !f).unwrap();
    let mut out = Vec::new();
    let mut run_start: Option<usize> = None;
    for s in 1..=m {
        let i = (first + s) % m;
        if free[i] {
            run_start.get_or_insert(i);
        } else if let Some(st) = run_start.take() {
            out.push((dirs[st].clone(), dirs[i].clone()));
        }
    }
    out
}

/// Compares the angles of two convex sectors; `Less` means `x` is sharper.
fn sector_cmp(x: &(Vec2, Vec2), y: &(Vec2, Vec2)) -> Ordering {
    // Larger cosine is the smaller angle. cos = dot / sqrt(n).
    let (dx, nx) = (x.0.dot(&x.1), &x.0.norm_sqr() * &x.1.norm_sqr());
    let (dy, ny) = (y.0.dot(&y.1), &y.0.norm_sqr() * &y.1.norm_sqr());
    let (sx, sy) = (dx.sign(), dy.sign());
    if sx != sy {
        return sy.cmp(&sx);
    }
    let lhs = &dx.square() * &ny;
    let rhs = &dy.square() * &nx;
    let c = lhs.cmp(&rhs);
    if sx >= 0 {
        c.reverse()
    } else {
        c
    }
}

fn smallest_free_corner(region: &Triangle, placed: &[(Tile, Triangle)]) -> Option<(Vec2, Vec2, Vec2)> {
    let mut points: Vec<Vec2> = region.to_vec();
    for (_, t) in placed {
        points.extend(t.iter().cloned());
    }
    points.sort();
    points.dedup();
    let mut best: Option<(Vec2, Vec2, Vec2)> = None;
    for p in &points {
        for (s, e) in free_sectors(p, region, placed) {
            if s.cross(&e).sign() <= 0 {
                continue;
            }
            let better = match &best {
                None => true,
                Some((_, bs, be)) => sector_cmp(&(s.clone(), e.clone()), &(bs.clone(), be.clone())) == Ordering::Less,
            };
            if better {
                best = Some((p.clone(), s, e));
            }
        }
    }
    best
}

/// All tile placements with a vertex at `corner` and an edge along `start`.
fn placements(corner: &Vec2, start: &Vec2, _end: &Vec2) -> Vec<(Tile, Triangle)> {
    let mut out = Vec::new();
    for proto in prototiles() {
        for i in 0..3 {
            let v = &proto.vertices[i];
            let e = &proto.vertices[(i + 1) % 3] - v;
            let Some(angle) = rotation_onto(&e, start) else {
                continue;
            };
            let t = corner - &v.rotate(angle);
            let tile = Tile::new(proto.id, RigidMotion::new(angle, t));
            let tri = tile.vertices();
            out.push((tile, tri));
        }
    }
    out
}

/// The lattice rotation taking the direction of `from` to that of `to`.
pub fn rotation_onto(from: &Vec2, to: &Vec2) -> Option<Angle> {
    let f = ExactComplex::new(from.x.clone(), from.y.clone());
    let t = ExactComplex::new(to.x.clone(), to.y.clone());
    let prod = &t * &f.conj();
    let n = (&from.norm_sqr() * &to.norm_sqr()).sqrt_exact()?;
    let inv = n.recip().ok()?;
    let u = prod.scale(&inv);
    Angle::from_unit(&u.re, &u.im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::predicates::area;

    #[test]
    fn rotation_onto_lattice() {
        let a = Angle::new(3, 1);
        let v = Vec2::ints(2, 1);
        assert_eq!(rotation_onto(&v, &v.rotate(a).scale(&QRoot5::int(7))), Some(a));
        assert_eq!(rotation_onto(&Vec2::ints(1, 0), &Vec2::ints(1, 1)), None);
    }

    #[test]
    fn decompositions_tile_the_region() {
        for p in prototiles() {
            let ds = find_decompositions(p);
            assert!(!ds.is_empty());
            let region = inflated(p);
            for d in &ds {
                assert_eq!(d.len(), 5);
                let total = d.iter().fold(QRoot5::ZERO, |acc, t| &acc + &area(&t.vertices()));
                assert_eq!(total, area(&region));
            }
        }
    }
}
