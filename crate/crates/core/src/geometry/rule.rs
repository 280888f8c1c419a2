//! The substitution rule: five placed children per proto-tile.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::predicates::{area, intersection_area, orient, side_lengths_sqr, strictly_in_triangle};
use super::prototile::{mirror_pose, prototiles};
use super::search::{find_decompositions, inflated};
use super::tile::Tile;
use crate::error::{Error, Result};
use crate::numerics::{Angle, QRoot5};

/// `children[p][d - 1]` is the child with digit `d` of `λ·p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubstitutionRule {
    pub children: [Vec<Tile>; 2],
}

/// `(child proto, angle)` for digits 1..5 of each parent.
pub fn angle_table(parent: u8) -> [(u8, Angle); 5] {
    let t = [
        (1, Angle::new(1, 0)),
        (1, Angle::new(1, 0)),
        (0, Angle::new(1, 0)),
        (0, Angle::new(1, 2)),
        (1, Angle::new(1, 1)),
    ];
    if parent == 0 {
        t
    } else {
        t.map(|(p, a)| (1 - p, -a))
    }
}

impl SubstitutionRule {
    pub fn child(&self, parent: u8, digit: u8) -> &Tile {
        &self.children[parent as usize][digit as usize - 1]
    }

    /// `m[i][j]` counts children of type `i` in `ω(p_j)`.
    pub fn matrix(&self) -> [[u64; 2]; 2] {
        let mut m = [[0; 2]; 2];
        for (j, kids) in self.children.iter().enumerate() {
            for c in kids {
                m[c.proto as usize][j] += 1;
            }
        }
        m
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("rule serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let r: SubstitutionRule = serde_json::from_str(s)?;
        if r.children.iter().any(|c| c.len() != 5) {
            return Err(Error::Precondition("each proto needs exactly 5 children".into()));
        }
        Ok(r)
    }
}

fn pick(cands: &[Vec<Tile>], parent: u8) -> Result<Vec<Tile>> {
    let table = angle_table(parent);
    let matching: Vec<&Vec<Tile>> = cands
        .iter()
        .filter(|d| {
            let mut have: Vec<(u8, Angle)> = d.iter().map(|t| (t.proto, t.angle())).collect();
            let mut want = table.to_vec();
            have.sort();
            want.sort();
            have == want
        })
        .collect();
    match matching.len() {
        0 => Err(Error::NoMatchingDecomposition(format!(
            "none of {} candidates for p_{parent} has the required type and angle census",
            cands.len()
        ))),
        1 => Ok(matching[0].clone()),
        n => Err(Error::NoMatchingDecomposition(format!("{n} candidates for p_{parent} match; expected one"))),
    }
}

/// Orders the children of `λ·p_0` by digit.
fn assign_digits(kids: &[Tile]) -> Vec<Tile> {
    let table = angle_table(0);
    let find = |d: usize| kids.iter().find(|t| (t.proto, t.angle()) == table[d]).unwrap().clone();
    let mut pair: Vec<Tile> = kids.iter().filter(|t| (t.proto, t.angle()) == table[0]).cloned().collect();
    pair.sort_by(|a, b| a.puncture().cmp(b.puncture()));
    vec![pair[0].clone(), pair[1].clone(), find(2), find(3), find(4)]
}

/// Chooses the pinwheel rule among searched candidates.
pub fn select_rule(cands0: &[Vec<Tile>], cands1: &[Vec<Tile>]) -> Result<SubstitutionRule> {
    let kids0 = assign_digits(&pick(cands0, 0)?);
    let kids1: Vec<Tile> = kids0
        .iter()
        .map(|t| {
            let (p, g) = mirror_pose(t.proto, &t.pose);
            Tile::new(p, g)
        })
        .collect();
    let found = cands1.iter().any(|d| {
        let mut a = d.clone();
        let mut b = kids1.clone();
        let key = |t: &Tile| (t.proto, t.angle(), t.puncture().clone());
        a.sort_by_key(key);
        b.sort_by_key(key);
        a == b
    });
    if !found {
        return Err(Error::NoMatchingDecomposition(
            "the mirror image of the p_0 dissection is not among the p_1 candidates".into(),
        ));
    }
    Ok(SubstitutionRule { children: [kids0, kids1] })
}

pub fn discover_rule() -> Result<SubstitutionRule> {
    let [p0, p1] = prototiles();
    select_rule(&find_decompositions(p0), &find_decompositions(p1))
}

/// The discovered pinwheel rule, computed once.
pub fn pinwheel_rule() -> &'static SubstitutionRule {
    static RULE: OnceLock<SubstitutionRule> = OnceLock::new();
    RULE.get_or_init(|| discover_rule().expect("pinwheel rule discovery"))
}

/// The rule as frozen in the shipped data file.
pub fn frozen_rule() -> SubstitutionRule {
    SubstitutionRule::from_json(include_str!("../../data/pinwheel_rule.json")).expect("frozen rule parses")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub pass: bool,
    pub detail: String,
}

impl Clause {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Clause { pass, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleReport {
    pub congruence: Clause,
    pub disjointness: Clause,
    pub area: Clause,
    pub matrix: Clause,
    pub angle_table: Clause,
}

impl RuleReport {
    pub fn all_pass(&self) -> bool {
        [&self.congruence, &self.disjointness, &self.area, &self.matrix, &self.angle_table]
            .iter()
            .all(|c| c.pass)
    }
}

pub fn verify_rule(rule: &SubstitutionRule) -> RuleReport {
    let protos = prototiles();
    let mut congruent = true;
    let mut disjoint = true;
    let mut area_ok = true;
    let mut notes = Vec::new();
    for (pi, kids) in rule.children.iter().enumerate() {
        let region = inflated(&protos[pi]);
        let tris: Vec<_> = kids.iter().map(|t| t.vertices()).collect();
        for (d, (t, tri)) in kids.iter().zip(&tris).enumerate() {
            // Orientation-preserving congruence: same counter-clockwise side
            // sequence as the proto, up to a cyclic shift.
            let want = side_lengths_sqr(&protos[t.proto as usize].vertices);
            let have = side_lengths_sqr(tri);
            let ccw = orient(&tri[0], &tri[1], &tri[2]) > 0;
            let cyc = (0..3).any(|s| (0..3).all(|i| have[i] == want[(i + s) % 3]));
            if !(ccw && cyc && area(tri) == QRoot5::ONE) {
                congruent = false;
                notes.push(format!("p_{pi} child {} not congruent to p_{}", d + 1, t.proto));
            }
        }
        for i in 0..5 {
            for j in i + 1..5 {
                let a = intersection_area(&tris[i], &tris[j]);
                if !a.is_zero() {
                    disjoint = false;
                    notes.push(format!("p_{pi} children {} and {} overlap with area {a}", i + 1, j + 1));
                }
            }
        }
        let inside = tris.iter().fold(QRoot5::ZERO, |acc, t| &acc + &intersection_area(t, &region));
        if inside != area(&region) || area(&region) != QRoot5::int(5) {
            area_ok = false;
            notes.push(format!("p_{pi} children cover area {inside} of 5"));
        }
    }
    let m = rule.matrix();
    let matrix_ok = m == [[2, 3], [3, 2]];
    let mut table_ok = true;
    for p in 0..2u8 {
        for (d, want) in angle_table(p).iter().enumerate() {
            let t = &rule.children[p as usize][d];
            if (t.proto, t.angle()) != *want {
                table_ok = false;
                notes.push(format!("p_{p} digit {} is {:?}, expected {:?}", d + 1, (t.proto, t.angle()), want));
            }
        }
        // The digit-3 child is central: it contains the parent's puncture.
        let c = rule.child(p, 3).vertices();
        if !strictly_in_triangle(&protos[p as usize].puncture, &c) {
            table_ok = false;
            notes.push(format!("p_{p} digit 3 is not central"));
        }
        let (a, b) = (rule.child(p, 1).puncture(), rule.child(p, 2).puncture());
        let ordered = if p == 0 { a < b } else { a.x < b.x || (a.x == b.x && a.y > b.y) };
        if !ordered {
            table_ok = false;
            notes.push(format!("p_{p} digits 1 and 2 are out of order"));
        }
    }
    let detail = |ok: bool, what: &str| if ok { "ok".to_string() } else { format!("{what}: {}", notes.join("; ")) };
    RuleReport {
        congruence: Clause::new(congruent, detail(congruent, "congruence")),
        disjointness: Clause::new(disjoint, detail(disjoint, "overlap")),
        area: Clause::new(area_ok, detail(area_ok, "coverage")),
        matrix: Clause::new(matrix_ok, if matrix_ok { "ok".into() } else { format!("matrix {m:?}") }),
        angle_table: Clause::new(table_ok, detail(table_ok, "angle table")),
    }
}

/// Smallest `k ≤ k_max` with every proto type inside every `ω^k(p_j)`.
pub fn is_primitive(rule: &SubstitutionRule, k_max: u32) -> Result<Option<u32>> {
    if k_max == 0 {
        return Err(Error::Precondition("k_max must be at least 1".into()));
    }
    let m = rule.matrix();
    let step = |a: [[bool; 2]; 2]| {
        let mut r = [[false; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                r[i][j] = (0..2).any(|l| m[i][l] > 0 && a[l][j]);
            }
        }
        r
    };
    let mut reach = [[true, false], [false, true]];
    for k in 1..=k_max {
        reach = step(reach);
        if reach.iter().flatten().all(|&b| b) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}
