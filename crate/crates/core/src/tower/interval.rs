//! Outward-rounded rational intervals on a 2^-128 grid.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::sync::OnceLock;

pub const PRECISION_BITS: u32 = 128;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn scale() -> BigInt {
    BigInt::one() << PRECISION_BITS
}

fn round_down(x: &BigRational) -> BigRational {
    let s = scale();
    BigRational::new((x * BigRational::from_integer(s.clone())).floor().to_integer(), s)
}

fn round_up(x: &BigRational) -> BigRational {
    let s = scale();
    BigRational::new((x * BigRational::from_integer(s.clone())).ceil().to_integer(), s)
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo: round_down(&lo), hi: round_up(&hi) }
    }

    pub fn point(x: BigRational) -> Self {
        Self::new(x.clone(), x)
    }

    pub fn int(n: i64) -> Self {
        Self::point(BigRational::from_integer(n.into()))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Self::new(lo, hi)
    }

    pub fn scale(&self, n: i64) -> Self {
        self.mul(&Self::int(n))
    }

    /// Panics if `o` contains zero.
    pub fn div(&self, o: &Self) -> Self {
        assert!(o.lo.is_positive() || o.hi.is_negative(), "division by an interval containing 0");
        let inv = Interval { lo: o.hi.recip(), hi: o.lo.recip() };
        let inv = if inv.lo <= inv.hi { inv } else { Interval { lo: inv.hi, hi: inv.lo } };
        self.mul(&Self::new(inv.lo, inv.hi))
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// The fractional part, if the interval lies within one unit cell.
    pub fn frac(&self) -> Option<Self> {
        let f = self.lo.floor();
        if self.hi.floor() != f && self.hi != &f + BigRational::one() {
            return None;
        }
        Some(Interval { lo: &self.lo - &f, hi: &self.hi - &f })
    }

    pub fn mid_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        ((&self.lo + &self.hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }
}

/// arctan(1/n) enclosed by two consecutive partial sums of its alternating series.
fn arctan_inv(n: i64, terms: usize) -> Interval {
    let x = BigRational::new(BigInt::one(), BigInt::from(n));
    let x2 = &x * &x;
    let mut pow = x.clone();
    let mut sum = BigRational::zero();
    let mut prev = BigRational::zero();
    for j in 0..terms {
        prev = sum.clone();
        let t = &pow / BigRational::from_integer(BigInt::from(2 * j as i64 + 1));
        if j.is_even() {
            sum += t;
        } else {
            sum -= t;
        }
        pow = &pow * &x2;
    }
    let (lo, hi) = if prev < sum { (prev, sum) } else { (sum, prev) };
    Interval::new(lo, hi)
}

/// θ = arctan(1/2).
pub fn theta() -> &'static Interval {
    static T: OnceLock<Interval> = OnceLock::new();
    T.get_or_init(|| arctan_inv(2, 80))
}

/// π by Machin's formula.
pub fn pi() -> &'static Interval {
    static P: OnceLock<Interval> = OnceLock::new();
    P.get_or_init(|| arctan_inv(5, 70).scale(16).sub(&arctan_inv(239, 30).scale(4)))
}

/// θ/2π, the rotation angle in turns.
pub fn theta_turns() -> &'static Interval {
    static T: OnceLock<Interval> = OnceLock::new();
    T.get_or_init(|| theta().div(&pi().scale(2)))
}
