//! Arc coverings for the simplicity argument.
//!
//! Positions on the circle are measured in turns. For a generator in block
//! `p` at level `N`, the image under `φ_{N,N+M}` has the entry at
//! `(s·l, s·m)` in block `q` whenever the prefix `s` leads from `q` to a
//! copy of `p`; that entry is the original one rotated by the angle `δ` of
//! the copy, so it is nonzero on `U − δ`. Two families of prefixes are used:
//!
//! * `2^{2a} 3^{M−2a}` from `q = p`, with `δ = (M−2a)θ`;
//! * `2^{2a} 3^{M−2−2a} 3 1` from `q = 1 − p`, with `δ = −(M−2a)θ`.

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::interval::{theta_turns, Interval};
use crate::algebra::{tile_angle, AlgebraElement, Generator};
use crate::error::{Error, Result};
use crate::geometry::patch::label_type;
use crate::geometry::rule::pinwheel_rule;
use crate::geometry::tile::Label;
use crate::numerics::{Angle, Rational};

pub const MAX_STAGE: usize = 400;

/// `−δ/2π` in turns, reduced to `[0, 1]`.
fn neg_turns(delta: Angle) -> Result<Interval> {
    let t = theta_turns().scale(-delta.k).sub(&Interval::point(BigRational::new((delta.q as i64).into(), 4.into())));
    t.frac().ok_or_else(|| Error::Precondition(format!("cannot place the shift {delta} on the circle")))
}

fn big(r: &Rational) -> BigRational {
    r.to_big()
}

#[derive(Clone, Debug)]
pub struct Arc {
    pub block: u8,
    pub family: String,
    pub prefix: Label,
    pub shift: Angle,
    /// Start of `U − δ` relative to the start of `U`, in turns.
    pub offset: Interval,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub m: usize,
    pub generator: Generator,
    pub start: Rational,
    pub length: Rational,
    pub arcs: Vec<Arc>,
    /// Upper bound of the widest gap between consecutive arc starts, per block.
    pub max_gap: [BigRational; 2],
}

fn family_a(a: usize, m: usize) -> (String, Label) {
    let mut d = vec![2; 2 * a];
    d.extend(std::iter::repeat_n(3, m - 2 * a));
    (format!("2^{} 3^{} l", 2 * a, m - 2 * a), Label(d))
}

fn family_b(a: usize, m: usize) -> (String, Label) {
    let mut d = vec![2; 2 * a];
    d.extend(std::iter::repeat_n(3, m - 2 - 2 * a));
    d.extend([3, 1]);
    (format!("2^{} 3^{} 31 l", 2 * a, m - 2 - 2 * a), Label(d))
}

/// Push one generator through `φ` along `prefix`, keeping only that branch.
fn branch(g: &Generator, q: u8, prefix: &Label) -> Result<Option<Generator>> {
    let mut cur = AlgebraElement::generator(g.clone());
    for i in (0..prefix.len()).rev() {
        let next = super::phi(&cur);
        let want = &prefix.digits()[i..];
        cur = AlgebraElement::zero(next.level);
        for (h, c) in next.terms {
            if h.row.digits().starts_with(want) && label_type(pinwheel_rule(), q, &prefix.digits()[..i]) == h.proto {
                cur.add_term(h, c);
            }
        }
    }
    Ok(cur.terms.into_keys().next())
}

fn arcs_for(g: &Generator, m: usize) -> Result<Vec<Arc>> {
    let rule = pinwheel_rule();
    let p = g.proto;
    let mut specs = Vec::new();
    for a in 0..=m / 2 {
        specs.push((p, family_a(a, m)));
    }
    for a in 0..m / 2 {
        specs.push((1 - p, family_b(a, m)));
    }
    let base = tile_angle(p, &g.row);
    let mut out = Vec::new();
    for (q, (family, prefix)) in specs {
        if label_type(rule, q, prefix.digits()) != p {
            return Err(Error::Precondition(format!("family {family} does not lead from p{q} to p{p}")));
        }
        let row = Label([prefix.digits(), g.row.digits()].concat());
        let shift = tile_angle(q, &row) - base;
        if m <= 12 {
            // Short prefixes: confirm the entry really appears in φ^M(g).
            let h = branch(g, q, &prefix)?;
            if h.as_ref().map(|h| (&h.row, h.proto)) != Some((&row, q)) {
                return Err(Error::Precondition(format!("family {family} is missing from the image")));
            }
        }
        out.push(Arc { block: q, family, prefix, shift, offset: neg_turns(shift)? });
    }
    Ok(out)
}

/// Upper bound of the widest gap between consecutive starts, or `None` if the
/// bound is not below `length` (a lone arc covers only when it is the whole circle).
fn covers(offsets: &[&Interval], length: &BigRational) -> Option<BigRational> {
    if offsets.len() == 1 {
        return (*length >= BigRational::one()).then(BigRational::one);
    }
    let mut pts: Vec<&Interval> = offsets.to_vec();
    pts.sort_by(|a, b| a.lo.cmp(&b.lo));
    let mut worst = BigRational::zero();
    for i in 0..pts.len() {
        let gap = if i + 1 < pts.len() {
            &pts[i + 1].hi - &pts[i].lo
        } else {
            &pts[0].hi + BigRational::one() - &pts[i].lo
        };
        if gap >= *length {
            return None;
        }
        worst = worst.max(gap);
    }
    Some(worst)
}

/// The smallest even `M` whose label families cover the circle in both blocks.
pub fn simplicity_stage(start: &Rational, length: &Rational, g: &Generator) -> Result<Certificate> {
    if length.signum() <= 0 || *length > Rational::ONE {
        return Err(Error::DegenerateArc(format!("arc length {length} is not in (0, 1]")));
    }
    let len = big(length);
    for m in (2..=MAX_STAGE).step_by(2) {
        let arcs = arcs_for(g, m)?;
        let gaps: Vec<Option<BigRational>> = (0..2u8)
            .map(|b| covers(&arcs.iter().filter(|a| a.block == b).map(|a| &a.offset).collect::<Vec<_>>(), &len))
            .collect();
        if let [Some(g0), Some(g1)] = &gaps[..] {
            return Ok(Certificate {
                m,
                generator: g.clone(),
                start: start.clone(),
                length: length.clone(),
                arcs,
                max_gap: [g0.clone(), g1.clone()],
            });
        }
    }
    Err(Error::ResourceLimit(format!("no cover found up to M = {MAX_STAGE}")))
}

/// Checks a certificate from its shifts alone: each arc's certainly-covered
/// part is swept and the union must reach all the way round, in both blocks.
pub fn check_cover(cert: &Certificate) -> bool {
    let len = big(&cert.length);
    (0..2u8).all(|b| {
        let mut pieces: Vec<(BigRational, BigRational)> = Vec::new();
        for arc in cert.arcs.iter().filter(|a| a.block == b) {
            let Ok(o) = neg_turns(arc.shift) else { return false };
            let (s, e) = (o.hi.clone(), &o.lo + &len);
            if e <= s {
                continue;
            }
            pieces.push((&s - BigRational::one(), &e - BigRational::one()));
            pieces.push((s, e));
        }
        if len >= BigRational::one() && !pieces.is_empty() {
            return true;
        }
        pieces.sort();
        let mut reach = BigRational::zero();
        for (s, e) in pieces {
            if s > reach {
                return false;
            }
            if e > reach {
                reach = e;
            }
        }
        reach >= BigRational::one()
    })
}

#[derive(Serialize)]
struct ArcJson {
    block: u8,
    family: String,
    shift: String,
    lo: f64,
    hi: f64,
}

#[derive(Serialize)]
struct CertJson {
    #[serde(rename = "M")]
    m: usize,
    generator: String,
    arc_start: String,
    arc_length: String,
    arcs: Vec<ArcJson>,
    families: Vec<String>,
    max_gap_upper: [f64; 2],
}

impl Certificate {
    /// Arcs are given in turns, `lo` reduced to `[0, 1)`.
    pub fn to_json(&self) -> String {
        let start = big(&self.start);
        let len = big(&self.length);
        let arcs = self
            .arcs
            .iter()
            .map(|a| {
                let lo = Interval::point(&start + &a.offset.lo).frac().map(|i| i.mid_f64()).unwrap_or(f64::NAN);
                ArcJson {
                    block: a.block,
                    family: a.family.clone(),
                    shift: a.shift.to_string(),
                    lo,
                    hi: lo + len.to_f64().unwrap_or(f64::NAN),
                }
            })
            .collect();
        let j = CertJson {
            m: self.m,
            generator: self.generator.to_string(),
            arc_start: self.start.to_string(),
            arc_length: self.length.to_string(),
            arcs,
            families: self.arcs.iter().map(|a| format!("p{}: {}", a.block, a.family)).collect(),
            max_gap_upper: [self.max_gap[0].to_f64().unwrap_or(f64::NAN), self.max_gap[1].to_f64().unwrap_or(f64::NAN)],
        };
        serde_json::to_string_pretty(&j).expect("certificate serializes")
    }
}

#[derive(Clone, Debug)]
pub struct OrbitGaps {
    /// Positions of `2kθ`, `k = 0..count`, sorted, in turns.
    pub positions: Vec<Interval>,
    /// `gaps[i]` runs from `positions[i]` to the next position around the circle.
    pub gaps: Vec<Interval>,
}

impl OrbitGaps {
    pub fn gaps_radians(&self) -> Vec<f64> {
        self.gaps.iter().map(|g| g.mid_f64() * std::f64::consts::TAU).collect()
    }

    pub fn max_gap_upper(&self) -> BigRational {
        self.gaps.iter().map(|g| g.hi.clone()).max().unwrap_or_else(BigRational::one)
    }
}

pub fn rotation_orbit_gaps(count: usize) -> Result<OrbitGaps> {
    if count == 0 {
        return Err(Error::Precondition("count must be at least 1".into()));
    }
    let two_theta = theta_turns().scale(2);
    let mut positions: Vec<Interval> = (0..count as i64)
        .map(|k| {
            two_theta.scale(k).frac().ok_or_else(|| Error::Precondition(format!("cannot reduce 2·{k}θ")))
        })
        .collect::<Result<_>>()?;
    positions.sort_by(|a, b| a.lo.cmp(&b.lo));
    if count == 1 {
        return Ok(OrbitGaps { positions, gaps: vec![Interval::int(1)] });
    }
    let one = Interval::int(1);
    let gaps = (0..count)
        .map(|i| {
            if i + 1 < count {
                positions[i + 1].sub(&positions[i])
            } else {
                positions[0].add(&one).sub(&positions[i])
            }
        })
        .collect();
    Ok(OrbitGaps { positions, gaps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen() -> Generator {
        Generator::parse(0, 0, "3", "5").unwrap()
    }

    #[test]
    fn full_circle() {
        let c = simplicity_stage(&Rational::ZERO, &Rational::ONE, &gen()).unwrap();
        assert_eq!(c.m, 2);
        assert!(check_cover(&c));
    }

    #[test]
    fn tenth_of_the_circle() {
        let c = simplicity_stage(&Rational::ZERO, &Rational::new(1, 10), &gen()).unwrap();
        assert!(c.m.is_multiple_of(2) && c.m <= 40, "M = {}", c.m);
        assert!(check_cover(&c));
        // The binding block has M/2 arcs, so the plain orbit-gap scan predicts M.
        let want = (1..).find(|&n| rotation_orbit_gaps(n).unwrap().max_gap_upper() < big(&Rational::new(1, 10))).unwrap();
        assert_eq!(c.m, 2 * want);
    }

    #[test]
    fn degenerate() {
        assert!(matches!(simplicity_stage(&Rational::ZERO, &Rational::ZERO, &gen()), Err(Error::DegenerateArc(_))));
        assert!(matches!(simplicity_stage(&Rational::ZERO, &Rational::new(3, 2), &gen()), Err(Error::DegenerateArc(_))));
    }

    #[test]
    fn monotone_in_length() {
        let mut last = 0;
        for den in [1, 2, 3, 5, 8, 13] {
            let c = simplicity_stage(&Rational::new(1, 7), &Rational::new(1, den), &gen()).unwrap();
            assert!(c.m >= last);
            last = c.m;
        }
    }

    #[test]
    fn tampered_certificate_fails() {
        let mut c = simplicity_stage(&Rational::ZERO, &Rational::new(1, 5), &gen()).unwrap();
        assert!(check_cover(&c));
        let first = c.arcs.iter().position(|a| a.block == 1).unwrap();
        let keep = c.arcs[first].clone();
        c.arcs.retain(|a| a.block == 0);
        c.arcs.push(keep);
        assert!(!check_cover(&c));
    }

    #[test]
    fn orbit() {
        let g1 = rotation_orbit_gaps(1).unwrap();
        assert_eq!(g1.gaps, vec![Interval::int(1)]);
        let g2 = rotation_orbit_gaps(2).unwrap().gaps_radians();
        assert!((g2[0] - 0.92729522).abs() < 1e-8);
        assert!((g2[1] - (std::f64::consts::TAU - 0.92729522)).abs() < 1e-8);
        let mut last = rotation_orbit_gaps(1).unwrap().max_gap_upper();
        for n in 2..40 {
            let now = rotation_orbit_gaps(n).unwrap().max_gap_upper();
            assert!(now <= last);
            last = now;
        }
    }

    #[test]
    fn p1_generators() {
        let g = Generator::parse(2, 1, "41", "25").unwrap();
        let c = simplicity_stage(&Rational::ZERO, &Rational::new(1, 4), &g).unwrap();
        assert!(check_cover(&c));
        assert!(c.arcs.iter().any(|a| a.block == 0) && c.arcs.iter().any(|a| a.block == 1));
    }
}
