//! The real quadratic field Q(√5).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::Rational;
use crate::error::{Error, Result};

/// The number `a + b√5`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QRoot5 {
    pub a: Rational,
    pub b: Rational,
}

impl QRoot5 {
    pub const ZERO: QRoot5 = QRoot5 { a: Rational::ZERO, b: Rational::ZERO };
    pub const ONE: QRoot5 = QRoot5 { a: Rational::ONE, b: Rational::ZERO };
    pub const SQRT5: QRoot5 = QRoot5 { a: Rational::ZERO, b: Rational::ONE };

    pub fn new(a: Rational, b: Rational) -> Self {
        QRoot5 { a, b }
    }

    pub fn int(n: i64) -> Self {
        QRoot5 { a: Rational::from_integer(n), b: Rational::ZERO }
    }

    pub fn rat(num: i64, den: i64) -> Self {
        QRoot5 { a: Rational::new(num, den), b: Rational::ZERO }
    }

    /// `(an/ad) + (bn/bd)√5`
    pub fn from_parts(an: i64, ad: i64, bn: i64, bd: i64) -> Self {
        QRoot5 { a: Rational::new(an, ad), b: Rational::new(bn, bd) }
    }

    pub fn from_rational(a: Rational) -> Self {
        QRoot5 { a, b: Rational::ZERO }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a − b√5`.
    pub fn conj(&self) -> Self {
        QRoot5 { a: self.a.clone(), b: -&self.b }
    }

    /// Field norm `a² − 5b²`.
    pub fn norm(&self) -> Rational {
        &(&self.a * &self.a) - &(&Rational::from_integer(5) * &(&self.b * &self.b))
    }

    pub fn sign(&self) -> i32 {
        let sa = self.a.signum();
        let sb = self.b.signum();
        if sa == 0 {
            return sb;
        }
        if sb == 0 || sa == sb {
            return sa;
        }
        // Opposite signs: whichever of a² and 5b² is larger wins.
        let a2 = &self.a * &self.a;
        let b2 = &Rational::from_integer(5) * &(&self.b * &self.b);
        match a2.cmp(&b2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.conj();
        Ok(QRoot5 { a: &c.a / &n, b: &c.b / &n })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QRoot5 { a: &self.a * r, b: &self.b * r }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Square root inside Q(√5), if one exists.
    pub fn sqrt_exact(&self) -> Option<Self> {
        match self.sign() {
            -1 => return None,
            0 => return Some(Self::ZERO),
            _ => {}
        }
        // (x + y√5)² = (x² + 5y²) + 2xy√5. With N = a² − 5b² = (x² − 5y²)²,
        // x² = (a ± √N)/2.
        let n = self.norm();
        let rn = n.sqrt_exact()?;
        let half = Rational::new(1, 2);
        for s in [&rn, &-&rn] {
            let x2 = &(&self.a + s) * &half;
            if let Some(x) = x2.sqrt_exact() {
                let cand = if x.is_zero() {
                    let y = (&self.a / &Rational::from_integer(5)).sqrt_exact()?;
                    QRoot5 { a: Rational::ZERO, b: y }
                } else {
                    let y = &self.b / &(&Rational::from_integer(2) * &x);
                    QRoot5 { a: x, b: y }
                };
                let cand = cand.abs();
                if &cand.square() == self {
                    return Some(cand);
                }
            }
        }
        None
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * 5f64.sqrt()
    }
}

impl Ord for QRoot5 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign().cmp(&0)
    }
}

impl PartialOrd for QRoot5 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a QRoot5> for &'a QRoot5 {
    type Output = QRoot5;
    fn add(self, rhs: &QRoot5) -> QRoot5 {
        QRoot5 { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl<'a> Sub<&'a QRoot5> for &'a QRoot5 {
    type Output = QRoot5;
    fn sub(self, rhs: &QRoot5) -> QRoot5 {
        QRoot5 { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl<'a> Mul<&'a QRoot5> for &'a QRoot5 {
    type Output = QRoot5;
    fn mul(self, rhs: &QRoot5) -> QRoot5 {
        if self.b.is_zero() && rhs.b.is_zero() {
            return QRoot5::from_rational(&self.a * &rhs.a);
        }
        let five = Rational::from_integer(5);
        QRoot5 {
            a: &(&self.a * &rhs.a) + &(&five * &(&self.b * &rhs.b)),
            b: &(&self.a * &rhs.b) + &(&self.b * &rhs.a),
        }
    }
}

impl<'a> Div<&'a QRoot5> for &'a QRoot5 {
    type Output = QRoot5;
    fn div(self, rhs: &QRoot5) -> QRoot5 {
        self.checked_div(rhs).expect("QRoot5 division by zero")
    }
}

impl Neg for &QRoot5 {
    type Output = QRoot5;
    fn neg(self) -> QRoot5 {
        QRoot5 { a: -&self.a, b: -&self.b }
    }
}

impl Neg for QRoot5 {
    type Output = QRoot5;
    fn neg(self) -> QRoot5 {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<QRoot5> for QRoot5 {
            type Output = QRoot5;
            fn $m(self, rhs: QRoot5) -> QRoot5 { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a QRoot5> for QRoot5 {
            type Output = QRoot5;
            fn $m(self, rhs: &QRoot5) -> QRoot5 { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Display for QRoot5 {
    /// Formats as `a+b r5`, the same shape the expression parser reads.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = &self.b;
        if b.signum() < 0 {
            write!(f, "{}-{}r5", self.a, -b)
        } else {
            write!(f, "{}+{}r5", self.a, b)
        }
    }
}

impl fmt::Debug for QRoot5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    an: String,
    ad: String,
    bn: String,
    bd: String,
}

impl Serialize for QRoot5 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            an: self.a.numer().to_string(),
            ad: self.a.denom().to_string(),
            bn: self.b.numer().to_string(),
            bd: self.b.denom().to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QRoot5 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        let a: Rational = format!("{}/{}", w.an, w.ad).parse().map_err(D::Error::custom)?;
        let b: Rational = format!("{}/{}", w.bn, w.bd).parse().map_err(D::Error::custom)?;
        Ok(QRoot5 { a, b })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_arithmetic() {
        let one = QRoot5::ONE;
        let r5 = QRoot5::SQRT5;
        assert_eq!(&one + &r5, QRoot5::from_parts(1, 1, 1, 1));
        assert_eq!(&r5 * &r5, QRoot5::int(5));
        let x = QRoot5::from_parts(2, 1, 1, 1);
        let inv = x.recip().unwrap();
        assert_eq!(inv, QRoot5::from_parts(-2, 1, 1, 1));
        assert_eq!(&inv * &x, QRoot5::ONE);
        assert!(matches!(QRoot5::ZERO.recip(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn sign_cases() {
        assert_eq!(QRoot5::ZERO.sign(), 0);
        assert_eq!(QRoot5::from_parts(-2, 1, 1, 1).sign(), 1);
        assert_eq!(QRoot5::from_parts(9, 1, -4, 1).sign(), 1);
        assert_eq!(QRoot5::from_parts(-9, 1, 4, 1).sign(), -1);
        assert_eq!(QRoot5::from_parts(3, 1, -2, 1).sign(), -1);
    }

    #[test]
    fn exact_roots() {
        let x = QRoot5::from_parts(3, 2, 1, 2); // golden ratio squared
        let r = x.sqrt_exact().unwrap();
        assert_eq!(r, QRoot5::from_parts(1, 2, 1, 2));
        assert_eq!(QRoot5::int(5).sqrt_exact(), Some(QRoot5::SQRT5));
        assert_eq!(QRoot5::rat(4, 5).sqrt_exact(), Some(QRoot5::from_parts(0, 1, 2, 5)));
        assert_eq!(QRoot5::int(2).sqrt_exact(), None);
        assert_eq!(QRoot5::int(-4).sqrt_exact(), None);
    }

    #[test]
    fn json_shape() {
        let x = QRoot5::from_parts(-3, 4, 2, 15);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"an":"-3","ad":"4","bn":"2","bd":"15"}"#);
        let y: QRoot5 = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }
}
