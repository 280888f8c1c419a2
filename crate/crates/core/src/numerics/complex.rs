//! Complex numbers with Q(√5) parts.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::qroot5::QRoot5;
use super::rational::Rational;
use crate::error::Result;

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ExactComplex {
    pub re: QRoot5,
    pub im: QRoot5,
}

impl ExactComplex {
    pub const ZERO: ExactComplex = ExactComplex { re: QRoot5::ZERO, im: QRoot5::ZERO };
    pub const ONE: ExactComplex = ExactComplex { re: QRoot5::ONE, im: QRoot5::ZERO };
    pub const I: ExactComplex = ExactComplex { re: QRoot5::ZERO, im: QRoot5::ONE };

    pub fn new(re: QRoot5, im: QRoot5) -> Self {
        ExactComplex { re, im }
    }

    pub fn real(re: QRoot5) -> Self {
        ExactComplex { re, im: QRoot5::ZERO }
    }

    pub fn int(re: i64, im: i64) -> Self {
        ExactComplex { re: QRoot5::int(re), im: QRoot5::int(im) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ExactComplex { re: self.re.clone(), im: -&self.im }
    }

    /// `|z|²`, exact.
    pub fn norm_sqr(&self) -> QRoot5 {
        &self.re.square() + &self.im.square()
    }

    pub fn scale(&self, s: &QRoot5) -> Self {
        ExactComplex { re: &self.re * s, im: &self.im * s }
    }

    pub fn scale_rat(&self, s: &Rational) -> Self {
        ExactComplex { re: self.re.scale(s), im: self.im.scale(s) }
    }

    pub fn recip(&self) -> Result<Self> {
        let n = self.norm_sqr().recip()?;
        Ok(self.conj().scale(&n))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::ONE;
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        let (re, im) = self.to_f64();
        num_complex::Complex64::new(re, im)
    }
}

impl<'a> Add<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn add(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn sub(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: &ExactComplex) -> ExactComplex {
        if self.im.is_zero() {
            return rhs.scale(&self.re);
        }
        if rhs.im.is_zero() {
            return self.scale(&rhs.re);
        }
        ExactComplex {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Neg for &ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex { re: -&self.re, im: -&self.im }
    }
}

impl Neg for ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<ExactComplex> for ExactComplex {
            type Output = ExactComplex;
            fn $m(self, rhs: ExactComplex) -> ExactComplex { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a ExactComplex> for ExactComplex {
            type Output = ExactComplex;
            fn $m(self, rhs: &ExactComplex) -> ExactComplex { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.re, self.im)
    }
}

impl fmt::Debug for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared() {
        assert_eq!(&ExactComplex::I * &ExactComplex::I, ExactComplex::int(-1, 0));
    }

    #[test]
    fn recip_round_trip() {
        let z = ExactComplex::new(QRoot5::from_parts(1, 2, 1, 3), QRoot5::int(-2));
        assert_eq!(&z * &z.recip().unwrap(), ExactComplex::ONE);
        assert!(ExactComplex::ZERO.recip().is_err());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let z = ExactComplex::int(2, 1);
        assert_eq!(z.pow(2), ExactComplex::int(3, 4));
        assert_eq!(z.pow(0), ExactComplex::ONE);
        assert_eq!(z.pow(5), &z.pow(2) * &z.pow(3));
    }
}
