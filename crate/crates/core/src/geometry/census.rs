//! Edge-adjacency classes of tile pairs modulo Γ.

use std::collections::BTreeMap;

use serde::Serialize;

use super::patch::{candidate_pairs, Patch};
use super::predicates::{orient, Triangle};
use super::tile::Tile;
use crate::error::{Error, Result};
use crate::numerics::{Angle, Vec2};

/// `(first proto, second proto, relative pose of the second in the first's frame)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AdjacencyClass {
    pub first: u8,
    pub second: u8,
    pub angle: Angle,
    pub offset: Vec2,
}

fn class_of(a: &Tile, b: &Tile) -> AdjacencyClass {
    let rel = a.pose.inverse().compose(&b.pose);
    AdjacencyClass { first: a.proto, second: b.proto, angle: rel.angle, offset: rel.translation }
}

/// The pair-class, independent of which tile is listed first.
pub fn canonical_class(a: &Tile, b: &Tile) -> AdjacencyClass {
    class_of(a, b).min(class_of(b, a))
}

/// Whether two triangles share a boundary segment of positive length.
pub fn share_edge(s: &Triangle, t: &Triangle) -> bool {
    for i in 0..3 {
        let (a0, a1) = (&s[i], &s[(i + 1) % 3]);
        let d = a1 - a0;
        let len = d.norm_sqr();
        for j in 0..3 {
            let (b0, b1) = (&t[j], &t[(j + 1) % 3]);
            if orient(a0, a1, b0) != 0 || orient(a0, a1, b1) != 0 {
                continue;
            }
            let u = (b0 - a0).dot(&d);
            let v = (b1 - a0).dot(&d);
            let (lo, hi) = if u < v { (u, v) } else { (v, u) };
            let lo = lo.max(crate::numerics::QRoot5::ZERO);
            let hi = hi.min(len.clone());
            if lo < hi {
                return true;
            }
        }
    }
    false
}

pub fn adjacency_census(patch: &Patch) -> Result<BTreeMap<AdjacencyClass, usize>> {
    if patch.level == 0 {
        return Err(Error::Precondition("the census needs a patch of level at least 1".into()));
    }
    let tris = patch.triangles();
    let mut out = BTreeMap::new();
    for (i, j) in candidate_pairs(&tris) {
        if share_edge(&tris[i], &tris[j]) {
            *out.entry(canonical_class(&patch.tiles[i].1, &patch.tiles[j].1)).or_insert(0) += 1;
        }
    }
    Ok(out)
}
