//! Points of the plane and the group of orientation-preserving isometries.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::angle::Angle;
use super::qroot5::QRoot5;

#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: QRoot5,
    pub y: QRoot5,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: QRoot5::ZERO, y: QRoot5::ZERO };

    pub fn new(x: QRoot5, y: QRoot5) -> Self {
        Vec2 { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Vec2 { x: QRoot5::int(x), y: QRoot5::int(y) }
    }

    pub fn scale(&self, s: &QRoot5) -> Self {
        Vec2 { x: &self.x * s, y: &self.y * s }
    }

    pub fn dot(&self, o: &Vec2) -> QRoot5 {
        &(&self.x * &o.x) + &(&self.y * &o.y)
    }

    /// z-component of the cross product.
    pub fn cross(&self, o: &Vec2) -> QRoot5 {
        &(&self.x * &o.y) - &(&self.y * &o.x)
    }

    pub fn norm_sqr(&self) -> QRoot5 {
        self.dot(self)
    }

    pub fn rotate(&self, a: Angle) -> Vec2 {
        if a == Angle::ZERO {
            return self.clone();
        }
        let (c, s) = a.cos_sin();
        Vec2 {
            x: &(&c * &self.x) - &(&s * &self.y),
            y: &(&s * &self.x) + &(&c * &self.y),
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl<'a> Add<&'a Vec2> for &'a Vec2 {
    type Output = Vec2;
    fn add(self, o: &Vec2) -> Vec2 {
        Vec2 { x: &self.x + &o.x, y: &self.y + &o.y }
    }
}

impl<'a> Sub<&'a Vec2> for &'a Vec2 {
    type Output = Vec2;
    fn sub(self, o: &Vec2) -> Vec2 {
        Vec2 { x: &self.x - &o.x, y: &self.y - &o.y }
    }
}

impl Neg for &Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2 { x: -&self.x, y: -&self.y }
    }
}

impl fmt::Debug for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.x, self.y)
    }
}

/// `p ↦ R_angle(p) + translation`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct RigidMotion {
    pub angle: Angle,
    pub translation: Vec2,
}

impl RigidMotion {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(angle: Angle, translation: Vec2) -> Self {
        RigidMotion { angle, translation }
    }

    pub fn rotation(angle: Angle) -> Self {
        RigidMotion { angle, translation: Vec2::ZERO }
    }

    pub fn translation(t: Vec2) -> Self {
        RigidMotion { angle: Angle::ZERO, translation: t }
    }

    pub fn apply(&self, p: &Vec2) -> Vec2 {
        &p.rotate(self.angle) + &self.translation
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &RigidMotion) -> RigidMotion {
        RigidMotion {
            angle: self.angle + other.angle,
            translation: &other.translation.rotate(self.angle) + &self.translation,
        }
    }

    pub fn inverse(&self) -> RigidMotion {
        let a = -self.angle;
        RigidMotion { angle: a, translation: -&self.translation.rotate(a) }
    }

    /// Conjugation by the homothety `p ↦ s·p`: `p ↦ R p + s·t`.
    pub fn scale_translation(&self, s: &QRoot5) -> RigidMotion {
        RigidMotion { angle: self.angle, translation: self.translation.scale(s) }
    }

    /// Distance to the identity: `|t| + ‖R − I‖_F`.
    pub fn gamma_distance(&self) -> f64 {
        let (tx, ty) = self.translation.to_f64();
        let a = self.angle.to_radians();
        // ‖R − I‖_F² = 2(1 − cos a)² + 2 sin² a = 4 − 4 cos a = 8 sin²(a/2)
        let frob = 2.0 * std::f64::consts::SQRT_2 * (a / 2.0).sin().abs();
        tx.hypot(ty) + frob
    }
}

impl fmt::Debug for RigidMotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Motion{{{:?}, {:?}}}", self.angle, self.translation)
    }
}
