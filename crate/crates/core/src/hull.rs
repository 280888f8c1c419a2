//! Finite stand-ins for points of the punctured hull and its groupoid.
//!
//! A hull point is represented by a finite patch with a tile punctured at the
//! origin. Queries that need tiles beyond the represented region come back
//! as [`Membership::Undecidable`] rather than a guess.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::geometry::patch::Patch;
use crate::geometry::predicates::{in_triangle, interiors_disjoint, Triangle};
use crate::geometry::prototile::{prototiles, puncture_clearance};
use crate::geometry::tile::{Label, Tile};
use crate::error::{Error, Result};
use crate::numerics::{Angle, QRoot5, RigidMotion, Vec2};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedPatch {
    pub tiles: Vec<(Label, Tile)>,
    pub origin: usize,
}

impl PointedPatch {
    /// `P − x(t)` for the tile `t` of `tiles` at index `origin`.
    pub fn new(tiles: Vec<(Label, Tile)>, origin: usize) -> Result<Self> {
        let x = tiles
            .get(origin)
            .ok_or_else(|| Error::Precondition(format!("origin index {origin} out of range")))?
            .1
            .puncture()
            .clone();
        let shift = RigidMotion::translation(-&x);
        let tiles = tiles.into_iter().map(|(l, t)| (l, t.moved(&shift))).collect();
        Ok(PointedPatch { tiles, origin })
    }

    pub fn from_patch(p: &Patch, origin: &Label) -> Result<Self> {
        let i = p
            .tiles
            .binary_search_by(|(l, _)| l.cmp(origin))
            .map_err(|_| Error::InvalidLabel(format!("{origin} is not a tile of the patch")))?;
        Self::new(p.tiles.clone(), i)
    }

    pub fn origin_tile(&self) -> &Tile {
        &self.tiles[self.origin].1
    }

    pub fn origin_label(&self) -> &Label {
        &self.tiles[self.origin].0
    }

    /// Rotation about the origin, which keeps the origin tile punctured there.
    pub fn rotated(&self, a: Angle) -> PointedPatch {
        let g = RigidMotion::rotation(a);
        PointedPatch {
            tiles: self.tiles.iter().map(|(l, t)| (l.clone(), t.moved(&g))).collect(),
            origin: self.origin,
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct J<'a> {
            origin_label: &'a Label,
            tiles: Vec<(&'a Label, &'a Tile)>,
        }
        serde_json::to_string(&J {
            origin_label: self.origin_label(),
            tiles: self.tiles.iter().map(|(l, t)| (l, t)).collect(),
        })
        .expect("pointed patch serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct J {
            origin_label: Label,
            tiles: Vec<(Label, Tile)>,
        }
        let j: J = serde_json::from_str(s)?;
        let origin = j
            .tiles
            .iter()
            .position(|(l, _)| l == &j.origin_label)
            .ok_or_else(|| Error::InvalidLabel(j.origin_label.to_string()))?;
        if !j.tiles[origin].1.puncture().norm_sqr().is_zero() {
            return Err(Error::Precondition("origin tile is not punctured at the origin".into()));
        }
        Ok(PointedPatch { tiles: j.tiles, origin })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Member(Angle),
    NotMember(String),
    Undecidable(String),
}

/// Whether some rotation carries `U`'s patch into the candidate hull point.
pub fn u_membership(u: &PointedPatch, cand: &PointedPatch) -> Membership {
    let (o, c) = (u.origin_tile(), cand.origin_tile());
    if o.proto != c.proto {
        return Membership::NotMember(format!("origin tiles have types {} and {}", o.proto, c.proto));
    }
    // The rotated origin tile must coincide with the candidate's origin tile.
    let a = c.angle() - o.angle();
    let by_puncture: HashMap<&Vec2, &Tile> = cand.tiles.iter().map(|(_, t)| (t.puncture(), t)).collect();
    let cand_tris: Vec<Triangle> = cand.tiles.iter().map(|(_, t)| t.vertices()).collect();
    let g = RigidMotion::rotation(a);
    for (l, t) in &u.tiles {
        let r = t.moved(&g);
        match by_puncture.get(r.puncture()) {
            Some(&found) if *found == r => continue,
            Some(_) => return Membership::NotMember(format!("tile {l} disagrees with the candidate")),
            None => {}
        }
        // The rotated tile's puncture is interior to it; landing in a different
        // candidate tile means the two overlap.
        if cand_tris.iter().any(|tri| in_triangle(r.puncture(), tri)) {
            return Membership::NotMember(format!("tile {l} overlaps a candidate tile"));
        }
        return Membership::Undecidable(format!("tile {l} lies outside the candidate patch"));
    }
    Membership::Member(a)
}

/// The cylinder-pair set `V(P, t, t′)`; `from` and `to` index into `patch`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClopenV {
    pub patch: Vec<(Label, Tile)>,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Incompatible {
    TileMismatch(String),
    PatchConflict(String),
}

impl ClopenV {
    pub fn new(patch: &Patch, from: &str, to: &str) -> Result<Self> {
        let find = |s: &str| -> Result<usize> {
            let l: Label = s.parse()?;
            patch
                .tiles
                .binary_search_by(|(k, _)| k.cmp(&l))
                .map_err(|_| Error::InvalidLabel(format!("{s} is not a tile of the patch")))
        };
        Ok(ClopenV { patch: patch.tiles.clone(), from: find(from)?, to: find(to)? })
    }

    pub fn is_diagonal(&self) -> bool {
        self.from == self.to
    }
}

pub fn v_range(v: &ClopenV) -> PointedPatch {
    PointedPatch::new(v.patch.clone(), v.from).expect("index in range")
}

pub fn v_source(v: &ClopenV) -> PointedPatch {
    PointedPatch::new(v.patch.clone(), v.to).expect("index in range")
}

pub fn v_invert(v: &ClopenV) -> ClopenV {
    ClopenV { patch: v.patch.clone(), from: v.to, to: v.from }
}

/// `V(P₁, t₁, t₁′) ∘ V(P₂, t₂, t₂′)`, with both patches in one frame.
pub fn v_compose(v1: &ClopenV, v2: &ClopenV) -> std::result::Result<ClopenV, Incompatible> {
    let mid1 = &v1.patch[v1.to].1;
    let mid2 = &v2.patch[v2.from].1;
    if mid1 != mid2 {
        return Err(Incompatible::TileMismatch(format!(
            "{} and {} are different placed tiles",
            v1.patch[v1.to].0, v2.patch[v2.from].0
        )));
    }
    let mut tiles = v1.patch.clone();
    let mut index: HashMap<Vec2, usize> =
        tiles.iter().enumerate().map(|(i, (_, t))| (t.puncture().clone(), i)).collect();
    let mut map2 = Vec::with_capacity(v2.patch.len());
    for (l, t) in &v2.patch {
        match index.get(t.puncture()) {
            Some(&i) if &tiles[i].1 == t => map2.push(i),
            Some(&i) => {
                return Err(Incompatible::PatchConflict(format!("{l} and {} share a puncture", tiles[i].0)));
            }
            None => {
                let tri = t.vertices();
                if let Some((k, _)) = tiles.iter().find(|(_, s)| !interiors_disjoint(&s.vertices(), &tri)) {
                    return Err(Incompatible::PatchConflict(format!("{l} overlaps {k}")));
                }
                index.insert(t.puncture().clone(), tiles.len());
                map2.push(tiles.len());
                tiles.push((l.clone(), t.clone()));
            }
        }
    }
    Ok(ClopenV { patch: tiles, from: v1.from, to: map2[v2.to] })
}

/// `(∠T(0), R_{−∠T(0)}(T))`.
pub fn rotation_factor(t: &PointedPatch) -> (Angle, PointedPatch) {
    let a = t.origin_tile().angle();
    (a, t.rotated(-a))
}

/// Translations shorter than this cannot move one puncture onto another.
pub fn separation_epsilon() -> QRoot5 {
    prototiles().iter().map(puncture_clearance).min().unwrap()
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistanceEstimate {
    pub epsilon: f64,
    pub g1: RigidMotion,
    pub g2: RigidMotion,
}

fn dist_to_triangle(t: &Triangle) -> f64 {
    if in_triangle(&Vec2::ZERO, t) {
        return 0.0;
    }
    let p: Vec<(f64, f64)> = t.iter().map(|v| v.to_f64()).collect();
    (0..3)
        .map(|i| {
            let (a, b) = (p[i], p[(i + 1) % 3]);
            let (dx, dy) = (b.0 - a.0, b.1 - a.1);
            let s = (-(a.0 * dx + a.1 * dy) / (dx * dx + dy * dy)).clamp(0.0, 1.0);
            (a.0 + s * dx).hypot(a.1 + s * dy)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Radius of the largest open ball about the origin met by the same tiles in both.
fn agreement_radius(a: &[Tile], b: &[Tile]) -> f64 {
    let ka: HashMap<&Tile, ()> = a.iter().map(|t| (t, ())).collect();
    let kb: HashMap<&Tile, ()> = b.iter().map(|t| (t, ())).collect();
    a.iter()
        .filter(|t| !kb.contains_key(t))
        .chain(b.iter().filter(|t| !ka.contains_key(t)))
        .map(|t| dist_to_triangle(&t.vertices()))
        .fold(f64::INFINITY, f64::min)
}

/// An upper bound for the tiling distance, over tile-matching alignments.
///
/// Assumes both patches cover the ball of radius `1/ε` for the returned `ε`.
pub fn tiling_distance_estimate(t1: &PointedPatch, t2: &PointedPatch) -> DistanceEstimate {
    let id = RigidMotion::identity();
    let mut align = vec![(id.clone(), id.clone())];
    let (o1, o2) = (t1.origin_tile(), t2.origin_tile());
    for (_, s) in &t2.tiles {
        if s.proto == o1.proto {
            align.push((id.clone(), o1.pose.compose(&s.pose.inverse())));
        }
    }
    for (_, s) in &t1.tiles {
        if s.proto == o2.proto {
            align.push((o2.pose.compose(&s.pose.inverse()), id.clone()));
        }
    }
    let mut best = DistanceEstimate { epsilon: 1.0, g1: id.clone(), g2: id };
    for (g1, g2) in align {
        let motion = g1.gamma_distance().max(g2.gamma_distance());
        if motion >= best.epsilon {
            continue;
        }
        let a: Vec<Tile> = t1.tiles.iter().map(|(_, t)| t.moved(&g1)).collect();
        let b: Vec<Tile> = t2.tiles.iter().map(|(_, t)| t.moved(&g2)).collect();
        let rho = agreement_radius(&a, &b);
        let eps = motion.max(1.0 / rho);
        if eps < best.epsilon {
            best = DistanceEstimate { epsilon: eps, g1, g2 };
        }
    }
    best
}
