use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::predicates::Triangle;
use super::prototile::prototiles;
use crate::error::{Error, Result};
use crate::numerics::{Angle, RigidMotion, Vec2};

/// A congruent copy `pose(p_proto)` of a proto-tile.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tile {
    pub proto: u8,
    pub pose: RigidMotion,
}

impl Tile {
    pub fn new(proto: u8, pose: RigidMotion) -> Self {
        Tile { proto, pose }
    }

    pub fn angle(&self) -> Angle {
        self.pose.angle
    }

    /// Protos are punctured at the origin, so the puncture is the translation.
    pub fn puncture(&self) -> &Vec2 {
        &self.pose.translation
    }

    pub fn vertices(&self) -> Triangle {
        let p = &prototiles()[self.proto as usize];
        [
            self.pose.apply(&p.vertices[0]),
            self.pose.apply(&p.vertices[1]),
            self.pose.apply(&p.vertices[2]),
        ]
    }

    pub fn moved(&self, g: &RigidMotion) -> Tile {
        Tile { proto: self.proto, pose: g.compose(&self.pose) }
    }
}

/// Digits over `1..=5`, coarsest first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Label(pub Vec<u8>);

impl Label {
    pub fn empty() -> Self {
        Label(Vec::new())
    }

    pub fn new(digits: Vec<u8>) -> Result<Self> {
        if let Some(&d) = digits.iter().find(|&&d| !(1..=5).contains(&d)) {
            return Err(Error::InvalidDigit(char::from_digit(d as u32, 36).unwrap_or('?')));
        }
        Ok(Label(digits))
    }

    pub fn repeat(digit: u8, n: usize) -> Self {
        Label(vec![digit; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    /// `self` followed by `d` as the new finest digit.
    pub fn child(&self, d: u8) -> Label {
        let mut v = self.0.clone();
        v.push(d);
        Label(v)
    }

    /// `d` as the new coarsest digit followed by `self`.
    pub fn prefixed(&self, d: u8) -> Label {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(d);
        v.extend_from_slice(&self.0);
        Label(v)
    }

    /// All labels of length `n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Label> {
        let mut out = vec![Label::empty()];
        for _ in 0..n {
            out = out.iter().flat_map(|l| (1..=5).map(move |d| l.child(d))).collect();
        }
        out
    }
}

impl FromStr for Label {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut v = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c.to_digit(10) {
                Some(d @ 1..=5) => v.push(d as u8),
                _ => return Err(Error::InvalidDigit(c)),
            }
        }
        Ok(Label(v))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
