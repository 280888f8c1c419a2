//! The orientation lattice `kθ + q·π/2` with θ = arctan(1/2).

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::complex::ExactComplex;
use super::qroot5::QRoot5;
use super::rational::Rational;

/// θ = arctan(1/2) as a float.
pub fn theta_f64() -> f64 {
    0.5f64.atan()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Angle {
    pub k: i64,
    pub q: u8,
}

impl Angle {
    pub const ZERO: Angle = Angle { k: 0, q: 0 };
    pub const THETA: Angle = Angle { k: 1, q: 0 };
    pub const QUARTER: Angle = Angle { k: 0, q: 1 };
    pub const HALF: Angle = Angle { k: 0, q: 2 };

    pub fn new(k: i64, q: i64) -> Self {
        Angle { k, q: q.rem_euclid(4) as u8 }
    }

    pub fn scale(self, n: i64) -> Self {
        Angle::new(self.k * n, self.q as i64 * n)
    }

    pub fn to_radians(self) -> f64 {
        self.k as f64 * theta_f64() + self.q as f64 * std::f64::consts::FRAC_PI_2
    }

    /// `e^{iα}`, exact.
    pub fn unit_phase(self) -> ExactComplex {
        let base = theta_power(self.k);
        match self.q {
            0 => base,
            1 => ExactComplex::new(-&base.im, base.re),
            2 => -base,
            _ => ExactComplex::new(base.im, -&base.re),
        }
    }

    /// `[[cos, −sin], [sin, cos]]` as `(cos, sin)`.
    pub fn cos_sin(self) -> (QRoot5, QRoot5) {
        let p = self.unit_phase();
        (p.re, p.im)
    }

    pub fn rotation_matrix(self) -> [[QRoot5; 2]; 2] {
        let (c, s) = self.cos_sin();
        [[c.clone(), -&s], [s, c]]
    }

    /// Recovers the lattice angle of a unit vector `(c, s)`, if it is one.
    pub fn from_unit(c: &QRoot5, s: &QRoot5) -> Option<Angle> {
        let w = ExactComplex::new(c.clone(), s.clone());
        if w.norm_sqr() != QRoot5::ONE {
            return None;
        }
        // w = g / √5^n with g a Gaussian integer of norm 5^n; the least such n
        // is |k| since (2+i)^n is never divisible by 5.
        let mut scaled = w;
        for n in 0..=400i64 {
            if let Some((gr, gi)) = gaussian_integer(&scaled) {
                for sign in [1i64, -1] {
                    if n == 0 && sign == -1 {
                        continue;
                    }
                    let k = sign * n;
                    let rest = ExactComplex::new(
                        QRoot5::from_rational(Rational::from(gr.clone())),
                        QRoot5::from_rational(Rational::from(gi.clone())),
                    );
                    let den = gaussian_pow(sign, n);
                    if let Some(q) = unit_quotient(&rest, &den) {
                        return Some(Angle::new(k, q));
                    }
                }
                return None;
            }
            scaled = scaled.scale(&QRoot5::SQRT5);
        }
        None
    }
}

fn gaussian_integer(z: &ExactComplex) -> Option<(BigInt, BigInt)> {
    if z.re.is_rational() && z.im.is_rational() && z.re.a.is_integer() && z.im.a.is_integer() {
        Some((z.re.a.numer(), z.im.a.numer()))
    } else {
        None
    }
}

/// `(2 + sign·i)^n` over the integers.
fn gaussian_pow(sign: i64, n: i64) -> (BigInt, BigInt) {
    let mut re = BigInt::one();
    let mut im = BigInt::zero();
    for _ in 0..n {
        let r = &re * 2 - &im * sign;
        let i = &im * 2 + &re * sign;
        re = r;
        im = i;
    }
    (re, im)
}

fn unit_quotient(z: &ExactComplex, den: &(BigInt, BigInt)) -> Option<i64> {
    let (zr, zi) = (z.re.a.numer(), z.im.a.numer());
    let (dr, di) = den;
    // z · conj(den) = unit · |den|²
    let nr = &zr * dr + &zi * di;
    let ni = &zi * dr - &zr * di;
    let n = dr * dr + di * di;
    let units = [(1, 0), (0, 1), (-1, 0), (0, -1)];
    units
        .iter()
        .position(|&(ur, ui)| nr == &n * ur && ni == &n * ui)
        .map(|q| q as i64)
}

const CACHE: i64 = 96;

fn theta_power(k: i64) -> ExactComplex {
    static TABLE: OnceLock<Vec<ExactComplex>> = OnceLock::new();
    let table = TABLE.get_or_init(|| (0..=CACHE).map(theta_power_uncached).collect());
    if k.abs() <= CACHE {
        let p = &table[k.unsigned_abs() as usize];
        if k < 0 {
            p.conj()
        } else {
            p.clone()
        }
    } else if k < 0 {
        theta_power_uncached(-k).conj()
    } else {
        theta_power_uncached(k)
    }
}

/// `((2+i)/√5)^k` for `k ≥ 0`.
fn theta_power_uncached(k: i64) -> ExactComplex {
    let (re, im) = gaussian_pow(1, k);
    let g = ExactComplex::new(
        QRoot5::from_rational(Rational::from(re)),
        QRoot5::from_rational(Rational::from(im)),
    );
    let half = k / 2;
    let five_pow = Rational::from(num_traits::pow(BigInt::from(5), half as usize));
    let mut s = QRoot5::from_rational(five_pow.recip().unwrap());
    if k % 2 == 1 {
        // 1/√5 = √5/5
        s = &s * &QRoot5::from_parts(0, 1, 1, 5);
    }
    g.scale(&s)
}

impl Add for Angle {
    type Output = Angle;
    fn add(self, rhs: Angle) -> Angle {
        Angle::new(self.k + rhs.k, self.q as i64 + rhs.q as i64)
    }
}

impl Sub for Angle {
    type Output = Angle;
    fn sub(self, rhs: Angle) -> Angle {
        self + (-rhs)
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        Angle::new(-self.k, -(self.q as i64))
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.q)
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_and_reduce() {
        assert_eq!(Angle::new(1, 0) + Angle::new(1, 0), Angle::new(2, 0));
        assert_eq!(Angle::new(1, 1) + Angle::new(-1, 3), Angle::ZERO);
        assert_eq!(-Angle::new(2, 1), Angle::new(-2, 3));
    }

    #[test]
    fn matrices() {
        let id = Angle::ZERO.rotation_matrix();
        assert_eq!(id, [[QRoot5::ONE, QRoot5::ZERO], [QRoot5::ZERO, QRoot5::ONE]]);
        let quarter = Angle::QUARTER.rotation_matrix();
        assert_eq!(quarter, [[QRoot5::ZERO, QRoot5::int(-1)], [QRoot5::ONE, QRoot5::ZERO]]);
        let two = Angle::new(2, 0).rotation_matrix();
        assert_eq!(two[0][0], QRoot5::rat(3, 5));
        assert_eq!(two[0][1], QRoot5::rat(-4, 5));
        assert_eq!(two[1][0], QRoot5::rat(4, 5));
        let t = Angle::THETA.rotation_matrix();
        assert_eq!(t[0][0], QRoot5::from_parts(0, 1, 2, 5));
        assert_eq!(t[1][0], QRoot5::from_parts(0, 1, 1, 5));
        assert!((t[0][0].to_f64() - theta_f64().cos()).abs() < 1e-12);
        assert!((t[1][0].to_f64() - theta_f64().sin()).abs() < 1e-12);
    }

    #[test]
    fn phases() {
        assert_eq!(Angle::ZERO.unit_phase(), ExactComplex::ONE);
        assert_eq!(Angle::HALF.unit_phase(), ExactComplex::int(-1, 0));
        let p = Angle::THETA.unit_phase();
        assert_eq!(p.norm_sqr(), QRoot5::ONE);
        assert_eq!(p.re, QRoot5::from_parts(0, 1, 2, 5));
    }

    #[test]
    fn from_unit_inverts_phase() {
        for k in -30..=30 {
            for q in 0..4 {
                let a = Angle::new(k, q);
                let (c, s) = a.cos_sin();
                assert_eq!(Angle::from_unit(&c, &s), Some(a));
            }
        }
        assert_eq!(Angle::from_unit(&QRoot5::rat(3, 5), &QRoot5::rat(-4, 5)), Some(Angle::new(-2, 0)));
        assert_eq!(Angle::from_unit(&QRoot5::rat(1, 2), &QRoot5::rat(1, 2)), None);
    }

    #[test]
    fn beyond_cache() {
        let a = Angle::new(CACHE + 3, 1);
        let b = Angle::new(-(CACHE + 1), 2);
        assert_eq!((a + b).unit_phase(), &a.unit_phase() * &b.unit_phase());
    }
}
