//! The inductive limit `Z² → Z² → …` along a fixed integer matrix.
//!
//! For the pinwheel matrix `A = [[2,3],[3,2]]` the row vectors `(1,1)` and
//! `(1,−1)` are left eigenvectors with eigenvalues 5 and −1. They give the
//! complete invariant `(q, r) = ((v1+v2)/5^N, (−1)^N (v1−v2))` of a class
//! `(N, v)`, whose image is the set of pairs with `num(q) ≡ r (mod 2)`.
//! The same group serves as `K_0` and `K_1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// A stationary system with two left eigenvectors, one for an eigenvalue
/// `base > 1` and one for an eigenvalue `±1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct System {
    pub matrix: [[i64; 2]; 2],
    pub base: i64,
    pub f_q: [i64; 2],
    pub unit: i64,
    pub f_r: [i64; 2],
}

impl System {
    pub fn pinwheel() -> Self {
        System { matrix: [[2, 3], [3, 2]], base: 5, f_q: [1, 1], unit: -1, f_r: [1, -1] }
    }

    /// `diag(5, 1)`, whose limit is `Z[1/5] ⊕ Z`.
    pub fn diagonal() -> Self {
        System { matrix: [[5, 0], [0, 1]], base: 5, f_q: [1, 0], unit: 1, f_r: [0, 1] }
    }

    pub fn det(&self) -> i64 {
        let m = self.matrix;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn apply(&self, v: &[BigInt; 2]) -> [BigInt; 2] {
        let m = self.matrix;
        [&v[0] * m[0][0] + &v[1] * m[0][1], &v[0] * m[1][0] + &v[1] * m[1][1]]
    }

    /// `A^{-1} v` when it is integral.
    pub fn pull_back(&self, v: &[BigInt; 2]) -> Option<[BigInt; 2]> {
        let m = self.matrix;
        let d = BigInt::from(self.det());
        let a = &v[0] * m[1][1] - &v[1] * m[0][1];
        let b = &v[1] * m[0][0] - &v[0] * m[1][0];
        if (&a % &d).is_zero() && (&b % &d).is_zero() {
            Some([a / &d, b / &d])
        } else {
            None
        }
    }

    /// `f·A = λ·f` for both functionals.
    pub fn functionals_are_eigen(&self) -> bool {
        let m = self.matrix;
        let check = |f: [i64; 2], lam: i64| {
            (0..2).all(|j| f[0] * m[0][j] + f[1] * m[1][j] == lam * f[j])
        };
        check(self.f_q, self.base) && check(self.f_r, self.unit)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LimitElement {
    pub stage: u32,
    pub v: [BigInt; 2],
}

impl LimitElement {
    pub fn new(stage: u32, v1: i64, v2: i64) -> Self {
        LimitElement { stage, v: [v1.into(), v2.into()] }
    }

    pub fn zero() -> Self {
        Self::new(0, 0, 0)
    }
}

impl fmt::Display for LimitElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:({},{})", self.stage, self.v[0], self.v[1])
    }
}

impl FromStr for LimitElement {
    type Err = Error;

    /// `N:(v1,v2)`.
    fn from_str(s: &str) -> Result<Self> {
        let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.into() };
        let s = s.trim();
        let colon = s.find(':').ok_or_else(|| err(0, "expected 'N:(v1,v2)'"))?;
        let stage: u32 = s[..colon].trim().parse().map_err(|_| err(0, "invalid stage"))?;
        let rest = s[colon + 1..].trim();
        let off = s.len() - rest.len();
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| err(off, "expected '(v1,v2)'"))?;
        let (a, b) = inner.split_once(',').ok_or_else(|| err(off + 1, "expected ','"))?;
        let v1: BigInt = a.trim().parse().map_err(|_| err(off + 1, "invalid integer"))?;
        let v2: BigInt = b.trim().parse().map_err(|_| err(off + 2 + a.len(), "invalid integer"))?;
        Ok(LimitElement { stage, v: [v1, v2] })
    }
}

/// An element `num / base^exp` of `Z[1/base]`, reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Z5Frac {
    pub num: String,
    pub exp: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct InvariantPair {
    pub q: Z5Frac,
    pub r: String,
}

impl fmt::Display for InvariantPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.exp == 0 {
            write!(f, "q={} r={}", self.q.num, self.r)
        } else {
            write!(f, "q={}/5^{} r={}", self.q.num, self.q.exp, self.r)
        }
    }
}

/// Raw invariants with the numerator at the element's own stage.
fn raw(sys: &System, x: &LimitElement) -> (BigInt, u32, BigInt) {
    let dot = |f: [i64; 2]| &x.v[0] * f[0] + &x.v[1] * f[1];
    let mut r = dot(sys.f_r);
    if sys.unit == -1 && x.stage % 2 == 1 {
        r = -r;
    }
    (dot(sys.f_q), x.stage, r)
}

fn reduce(mut num: BigInt, mut exp: u32, base: i64) -> (BigInt, u32) {
    let b = BigInt::from(base);
    while exp > 0 && (&num % &b).is_zero() {
        num /= &b;
        exp -= 1;
    }
    if num.is_zero() {
        exp = 0;
    }
    (num, exp)
}

pub struct KGroup {
    pub sys: System,
}

impl Default for KGroup {
    fn default() -> Self {
        KGroup { sys: System::pinwheel() }
    }
}

impl KGroup {
    pub fn new(sys: System) -> Self {
        KGroup { sys }
    }

    pub fn push(&self, x: &LimitElement, stage: u32) -> LimitElement {
        let mut v = x.v.clone();
        for _ in x.stage..stage {
            v = self.sys.apply(&v);
        }
        LimitElement { stage: stage.max(x.stage), v }
    }

    /// The representative at the least stage.
    pub fn canonical(&self, x: &LimitElement) -> LimitElement {
        let mut cur = x.clone();
        while cur.stage > 0 {
            match self.sys.pull_back(&cur.v) {
                Some(v) => cur = LimitElement { stage: cur.stage - 1, v },
                None => break,
            }
        }
        cur
    }

    pub fn equal(&self, x: &LimitElement, y: &LimitElement) -> bool {
        let m = x.stage.max(y.stage);
        self.push(x, m).v == self.push(y, m).v
    }

    pub fn add(&self, x: &LimitElement, y: &LimitElement) -> LimitElement {
        let m = x.stage.max(y.stage);
        let (a, b) = (self.push(x, m), self.push(y, m));
        self.canonical(&LimitElement { stage: m, v: [&a.v[0] + &b.v[0], &a.v[1] + &b.v[1]] })
    }

    pub fn neg(&self, x: &LimitElement) -> LimitElement {
        self.canonical(&LimitElement { stage: x.stage, v: [-&x.v[0], -&x.v[1]] })
    }

    pub fn invariants(&self, x: &LimitElement) -> InvariantPair {
        let (num, exp, r) = raw(&self.sys, x);
        let (num, exp) = reduce(num, exp, self.sys.base);
        InvariantPair { q: Z5Frac { num: num.to_string(), exp }, r: r.to_string() }
    }

    pub fn quotient_map(&self, x: &LimitElement) -> Z5Frac {
        self.invariants(x).q
    }

    pub fn kernel_test(&self, x: &LimitElement) -> bool {
        self.quotient_map(x).num == "0"
    }

    /// A class with invariants `(num/base^exp, r)`, if the pair is in the image.
    pub fn preimage(&self, num: &BigInt, exp: u32, r: &BigInt) -> Option<LimitElement> {
        let s = &self.sys;
        let rr = if s.unit == -1 && exp % 2 == 1 { -r } else { r.clone() };
        // Solve [f_q; f_r] v = (num, rr).
        let det = s.f_q[0] * s.f_r[1] - s.f_q[1] * s.f_r[0];
        let a = num * s.f_r[1] - &rr * s.f_q[1];
        let b = &rr * s.f_q[0] - num * s.f_r[0];
        let d = BigInt::from(det);
        if !(&a % &d).is_zero() || !(&b % &d).is_zero() {
            return None;
        }
        Some(LimitElement { stage: exp, v: [a / &d, b / &d] })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Candidate {
    pub m: i64,
    /// The first stage with no class of invariants `(1/5^N, m/5^N)`.
    pub fails_at: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitReport {
    pub bound: i64,
    pub depth: u32,
    /// True when no candidate section survives.
    pub nonsplit: bool,
    /// `r`-invariant of `s(1)` for a section valid up to `depth`, if one exists.
    pub section: Option<i64>,
    pub candidates_checked: usize,
    pub worst: Option<Candidate>,
}

/// Looks for a section `s` of the quotient map.
///
/// `s(1/5^N)` must be a class with `q = 1/5^N` and `5^N·r(s(1/5^N)) = r(s(1)) = m`,
/// so every stage `N ≤ depth` needs the pair `(1/5^N, m/5^N)` in the image.
/// Depth is the first `N` with `5^N > bound`.
pub fn nonsplit_certificate_for(sys: System, bound: i64) -> Result<SplitReport> {
    if bound < 1 {
        return Err(Error::Precondition("bound must be at least 1".into()));
    }
    let g = KGroup::new(sys);
    let base = BigInt::from(g.sys.base);
    let mut depth = 0u32;
    while base.pow(depth) <= BigInt::from(bound) {
        depth += 1;
    }
    let one = BigInt::one();
    let mut section = None;
    let mut worst: Option<Candidate> = None;
    let mut checked = 0;
    for m in -bound..=bound {
        checked += 1;
        let mb = BigInt::from(m);
        let mut fails_at = None;
        let mut prev: Option<LimitElement> = None;
        for n in 0..=depth {
            let scale = base.pow(n);
            let (r, rem) = mb.div_rem(&scale);
            let here = if rem.is_zero() { g.preimage(&one, n, &r) } else { None };
            let Some(here) = here else {
                fails_at = Some(n);
                break;
            };
            // 5·s(1/5^N) = s(1/5^{N-1}).
            if let Some(p) = &prev {
                let five = (0..g.sys.base).fold(LimitElement::zero(), |acc, _| g.add(&acc, &here));
                if !g.equal(&five, p) {
                    fails_at = Some(n);
                    break;
                }
            }
            prev = Some(here);
        }
        match fails_at {
            None => {
                section.get_or_insert(m);
            }
            Some(n) => {
                if worst.as_ref().is_none_or(|w| w.fails_at.unwrap_or(0) < n) {
                    worst = Some(Candidate { m, fails_at: Some(n) });
                }
            }
        }
    }
    Ok(SplitReport { bound, depth, nonsplit: section.is_none(), section, candidates_checked: checked, worst })
}

pub fn nonsplit_certificate(bound: i64) -> Result<SplitReport> {
    nonsplit_certificate_for(System::pinwheel(), bound)
}
