//! Labeled patches `ω^N(p_i)`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::predicates::{area, interiors_disjoint, intersection_area, Triangle};
use super::rule::{pinwheel_rule, SubstitutionRule};
use super::tile::{Label, Tile};
use crate::error::{Error, Result};
use crate::numerics::{Angle, QRoot5, RigidMotion, Vec2};

pub const DEFAULT_MAX_LEVEL: usize = 10;

/// The level guard, `PINWHEEL_MAX_LEVEL` when set.
pub fn max_level() -> usize {
    std::env::var("PINWHEEL_MAX_LEVEL")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_LEVEL)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Patch {
    pub level: usize,
    pub root: u8,
    /// Sorted by label.
    pub tiles: Vec<(Label, Tile)>,
}

/// The children of `t` under one substitution, by digit.
pub fn substitute_tile(rule: &SubstitutionRule, t: &Tile) -> [Tile; 5] {
    std::array::from_fn(|i| child_of(rule, t, i as u8 + 1))
}

fn child_of(rule: &SubstitutionRule, t: &Tile, digit: u8) -> Tile {
    let c = rule.child(t.proto, digit);
    let pose = RigidMotion::new(
        t.pose.angle + c.pose.angle,
        &c.pose.translation.rotate(t.pose.angle) + &t.pose.translation.scale(&QRoot5::SQRT5),
    );
    Tile::new(c.proto, pose)
}

impl Patch {
    pub fn proto(root: u8) -> Patch {
        Patch { level: 0, root, tiles: vec![(Label::empty(), Tile::new(root, RigidMotion::identity()))] }
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn get(&self, label: &Label) -> Option<&Tile> {
        self.tiles.binary_search_by(|(l, _)| l.cmp(label)).ok().map(|i| &self.tiles[i].1)
    }

    pub fn substitute_with(&self, rule: &SubstitutionRule) -> Patch {
        let mut tiles = Vec::with_capacity(self.tiles.len() * 5);
        for (l, t) in &self.tiles {
            for (i, c) in substitute_tile(rule, t).into_iter().enumerate() {
                tiles.push((l.child(i as u8 + 1), c));
            }
        }
        Patch { level: self.level + 1, root: self.root, tiles }
    }

    pub fn substitute(&self) -> Patch {
        self.substitute_with(pinwheel_rule())
    }

    pub fn moved(&self, g: &RigidMotion) -> Patch {
        Patch {
            level: self.level,
            root: self.root,
            tiles: self.tiles.iter().map(|(l, t)| (l.clone(), t.moved(g))).collect(),
        }
    }

    /// `[count of p_0, count of p_1]`.
    pub fn type_counts(&self) -> [usize; 2] {
        let mut c = [0; 2];
        for (_, t) in &self.tiles {
            c[t.proto as usize] += 1;
        }
        c
    }

    pub fn total_area(&self) -> QRoot5 {
        self.tiles.iter().fold(QRoot5::ZERO, |acc, (_, t)| &acc + &area(&t.vertices()))
    }

    pub fn triangles(&self) -> Vec<Triangle> {
        self.tiles.iter().map(|(_, t)| t.vertices()).collect()
    }

    /// Pairs whose interiors overlap, each with its exact overlap area.
    pub fn overlaps(&self) -> Vec<(Label, Label, QRoot5)> {
        let tris = self.triangles();
        candidate_pairs(&tris)
            .into_iter()
            .filter(|&(i, j)| !interiors_disjoint(&tris[i], &tris[j]))
            .map(|(i, j)| {
                (self.tiles[i].0.clone(), self.tiles[j].0.clone(), intersection_area(&tris[i], &tris[j]))
            })
            .collect()
    }
}

pub fn iterate_with(rule: &SubstitutionRule, proto: u8, n: usize, limit: usize) -> Result<Patch> {
    if n > limit {
        return Err(Error::ResourceLimit(format!(
            "level {n} exceeds the guard of {limit} (5^{n} tiles); set PINWHEEL_MAX_LEVEL to override"
        )));
    }
    let mut p = Patch::proto(proto);
    for _ in 0..n {
        p = p.substitute_with(rule);
    }
    Ok(p)
}

/// `ω^N(p_proto)` with the pinwheel rule.
pub fn iterate(proto: u8, n: usize) -> Result<Patch> {
    iterate_with(pinwheel_rule(), proto, n, max_level())
}

/// The tile with `label` in `ω^N(p_proto)`, without building the patch.
pub fn label_tile_with(rule: &SubstitutionRule, proto: u8, label: &Label) -> Tile {
    let mut t = Tile::new(proto, RigidMotion::identity());
    for &d in label.digits() {
        t = child_of(rule, &t, d);
    }
    t
}

pub fn label_tile(proto: u8, label: &Label) -> Tile {
    label_tile_with(pinwheel_rule(), proto, label)
}

pub fn label_angle(proto: u8, label: &str) -> Result<Angle> {
    Ok(label_tile(proto, &label.parse()?).angle())
}

pub fn label_puncture(proto: u8, label: &str) -> Result<Vec2> {
    Ok(label_tile(proto, &label.parse()?).puncture().clone())
}

/// The angle of the tile with `label` in `ω^N(p_proto)`.
pub fn label_angle_of(rule: &SubstitutionRule, proto: u8, label: &[u8]) -> Angle {
    let mut p = proto;
    let mut a = Angle::ZERO;
    for &d in label {
        let c = rule.child(p, d);
        a = a + c.pose.angle;
        p = c.proto;
    }
    a
}

/// The proto type of the tile with `label` in `ω^N(p_proto)`.
pub fn label_type(rule: &SubstitutionRule, proto: u8, label: &[u8]) -> u8 {
    label.iter().fold(proto, |p, &d| rule.child(p, d).proto)
}

fn bbox(t: &Triangle) -> [f64; 4] {
    let pts: Vec<(f64, f64)> = t.iter().map(|v| v.to_f64()).collect();
    let xs = pts.iter().map(|p| p.0);
    let ys = pts.iter().map(|p| p.1);
    [
        xs.clone().fold(f64::INFINITY, f64::min),
        ys.clone().fold(f64::INFINITY, f64::min),
        xs.fold(f64::NEG_INFINITY, f64::max),
        ys.fold(f64::NEG_INFINITY, f64::max),
    ]
}

/// Index pairs `i < j` whose float bounding boxes come within a small slack.
/// The exact predicates run only on these.
pub fn candidate_pairs(tris: &[Triangle]) -> Vec<(usize, usize)> {
    const CELL: f64 = 2.5;
    const SLACK: f64 = 1e-6;
    let boxes: Vec<[f64; 4]> = tris.iter().map(bbox).collect();
    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    let cell = |v: f64| (v / CELL).floor() as i64;
    for (i, b) in boxes.iter().enumerate() {
        for cx in cell(b[0] - SLACK)..=cell(b[2] + SLACK) {
            for cy in cell(b[1] - SLACK)..=cell(b[3] + SLACK) {
                grid.entry((cx, cy)).or_default().push(i);
            }
        }
    }
    let mut pairs = Vec::new();
    for members in grid.values() {
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                let (bi, bj) = (&boxes[i], &boxes[j]);
                if bi[0] <= bj[2] + SLACK && bj[0] <= bi[2] + SLACK && bi[1] <= bj[3] + SLACK && bj[1] <= bi[3] + SLACK
                {
                    pairs.push((i.min(j), i.max(j)));
                }
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

#[derive(Serialize, Deserialize)]
struct TileJson {
    label: Label,
    proto: u8,
    angle: Angle,
    tx: QRoot5,
    ty: QRoot5,
}

#[derive(Serialize, Deserialize)]
struct PatchJson {
    level: usize,
    root: u8,
    tiles: Vec<TileJson>,
}

impl Patch {
    pub fn to_json(&self) -> String {
        let j = PatchJson {
            level: self.level,
            root: self.root,
            tiles: self
                .tiles
                .iter()
                .map(|(l, t)| TileJson {
                    label: l.clone(),
                    proto: t.proto,
                    angle: t.angle(),
                    tx: t.pose.translation.x.clone(),
                    ty: t.pose.translation.y.clone(),
                })
                .collect(),
        };
        serde_json::to_string(&j).expect("patch serializes")
    }

    pub fn from_json(s: &str) -> Result<Patch> {
        let j: PatchJson = serde_json::from_str(s)?;
        if j.root > 1 {
            return Err(Error::Precondition(format!("root {} is not a proto id", j.root)));
        }
        let mut tiles = Vec::with_capacity(j.tiles.len());
        for t in j.tiles {
            if t.proto > 1 || t.angle.q > 3 {
                return Err(Error::Precondition(format!("tile {} has an invalid proto or angle", t.label)));
            }
            tiles.push((t.label, Tile::new(t.proto, RigidMotion::new(t.angle, Vec2::new(t.tx, t.ty)))));
        }
        tiles.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(Patch { level: j.level, root: j.root, tiles })
    }
}
