//! Matrix pictures of the finite levels and the inclusions between them.

pub mod interval;
pub mod norm;
pub mod simplicity;

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{tile_angle, AlgebraElement, Generator};
use crate::error::{Error, Result};
use crate::geometry::patch::{iterate, label_tile};
use crate::geometry::rule::pinwheel_rule;
use crate::geometry::tile::Label;
use crate::numerics::{ExactComplex, QRoot5};

pub use norm::norm_estimate;
pub use simplicity::{check_cover, rotation_orbit_gaps, simplicity_stage, Arc, Certificate, OrbitGaps};

/// Upper bound on the number of terms `phi_chain` will produce.
pub const MAX_CHAIN_TERMS: usize = 390_625;

/// A Laurent polynomial in `u = e^{2πix}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laurent(pub BTreeMap<i64, ExactComplex>);

impl Laurent {
    pub fn monomial(k: i64, c: ExactComplex) -> Self {
        let mut l = Laurent::default();
        l.add_term(k, c);
        l
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, k: i64, c: ExactComplex) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(k).or_default();
        *e = &*e + &c;
        if e.is_zero() {
            self.0.remove(&k);
        }
    }

    pub fn add_assign(&mut self, o: &Laurent) {
        for (k, c) in &o.0 {
            self.add_term(*k, c.clone());
        }
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        let mut out = Laurent::default();
        for (k1, c1) in &self.0 {
            for (k2, c2) in &o.0 {
                out.add_term(k1 + k2, c1 * c2);
            }
        }
        out
    }

    /// The pointwise conjugate on the circle.
    pub fn conj(&self) -> Laurent {
        Laurent(self.0.iter().map(|(k, c)| (-k, c.conj())).collect())
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        self.0
            .iter()
            .map(|(k, c)| c.to_c64() * Complex64::from_polar(1.0, std::f64::consts::TAU * (*k as f64) * x))
            .sum()
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        Some((*self.0.keys().next()?, *self.0.keys().next_back()?))
    }
}

/// Two square blocks of size `5^N`, stored sparsely with 0-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFunction {
    pub level: usize,
    pub blocks: [BTreeMap<(usize, usize), Laurent>; 2],
}

impl MatrixFunction {
    pub fn zero(level: usize) -> Self {
        MatrixFunction { level, blocks: [BTreeMap::new(), BTreeMap::new()] }
    }

    pub fn size(&self) -> usize {
        5usize.pow(self.level as u32)
    }

    /// Entry at 1-based `(row, col)` of block `p`.
    pub fn entry(&self, p: u8, row: usize, col: usize) -> Laurent {
        self.blocks[p as usize].get(&(row - 1, col - 1)).cloned().unwrap_or_default()
    }

    fn add_entry(&mut self, p: u8, r: usize, c: usize, v: &Laurent) {
        let e = self.blocks[p as usize].entry((r, c)).or_default();
        e.add_assign(v);
        if e.is_zero() {
            self.blocks[p as usize].remove(&(r, c));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_empty())
    }

    pub fn mul(&self, o: &MatrixFunction) -> Result<MatrixFunction> {
        if self.level != o.level {
            return Err(Error::LevelMismatch(self.level, o.level));
        }
        let mut out = MatrixFunction::zero(self.level);
        for p in 0..2u8 {
            let mut by_row: BTreeMap<usize, Vec<(usize, &Laurent)>> = BTreeMap::new();
            for ((r, c), v) in &o.blocks[p as usize] {
                by_row.entry(*r).or_default().push((*c, v));
            }
            for ((r, mid), u) in &self.blocks[p as usize] {
                for (c, v) in by_row.get(mid).into_iter().flatten() {
                    out.add_entry(p, *r, *c, &u.mul(v));
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> MatrixFunction {
        let mut out = MatrixFunction::zero(self.level);
        for p in 0..2 {
            for ((r, c), v) in &self.blocks[p] {
                out.blocks[p].insert((*c, *r), v.conj());
            }
        }
        out
    }

    /// Smallest and largest power of `u` over all entries.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let ranges = self.blocks.iter().flat_map(|b| b.values()).filter_map(|l| l.degree_range());
        ranges.fold(None, |acc, (lo, hi)| match acc {
            None => Some((lo, hi)),
            Some((a, b)) => Some((a.min(lo), b.max(hi))),
        })
    }

    /// Dense JSON: `{"level", "blocks": [[[{coeffs: [...]}, ...], ...], ...]}`.
    pub fn to_json(&self) -> Result<String> {
        if self.level > 3 {
            return Err(Error::ResourceLimit(format!("dense output of level {} is too large", self.level)));
        }
        let n = self.size();
        let blocks: Vec<Vec<Vec<EntryJson>>> = (0..2)
            .map(|p| {
                (0..n)
                    .map(|r| {
                        (0..n)
                            .map(|c| EntryJson {
                                coeffs: self.blocks[p]
                                    .get(&(r, c))
                                    .map(|l| {
                                        l.0.iter()
                                            .map(|(k, v)| CoeffJson { k: *k, re: v.re.clone(), im: v.im.clone() })
                                            .collect()
                                    })
                                    .unwrap_or_default(),
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(serde_json::to_string(&MatrixJson { level: self.level, blocks })?)
    }

    pub fn from_json(s: &str) -> Result<MatrixFunction> {
        let j: MatrixJson = serde_json::from_str(s)?;
        let mut out = MatrixFunction::zero(j.level);
        let n = out.size();
        if j.blocks.len() != 2 {
            return Err(Error::Precondition("expected two blocks".into()));
        }
        for (p, b) in j.blocks.into_iter().enumerate() {
            if b.len() != n || b.iter().any(|r| r.len() != n) {
                return Err(Error::Precondition(format!("block {p} is not {n}x{n}")));
            }
            for (r, row) in b.into_iter().enumerate() {
                for (c, e) in row.into_iter().enumerate() {
                    let mut l = Laurent::default();
                    for t in e.coeffs {
                        l.add_term(t.k, ExactComplex::new(t.re, t.im));
                    }
                    if !l.is_zero() {
                        out.blocks[p].insert((r, c), l);
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct CoeffJson {
    k: i64,
    re: QRoot5,
    im: QRoot5,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    coeffs: Vec<CoeffJson>,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    level: usize,
    blocks: Vec<Vec<Vec<EntryJson>>>,
}

/// `1 + Σ 5^{N−j}(l_j − 1)`.
pub fn row_index(label: &Label) -> usize {
    1 + label.digits().iter().fold(0, |acc, &d| acc * 5 + (d as usize - 1))
}

/// How the `z^k` factor enters a matrix entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsiConvention {
    /// `e^{ik(∠t + 2πx)}`.
    Multiplicative,
    /// `e^{i(∠t + 2πkx)}`, wrong for `k ∉ {0, 1}`; kept as a negative control.
    Literal,
}

pub fn psi(a: &AlgebraElement) -> MatrixFunction {
    psi_with(a, PsiConvention::Multiplicative)
}

pub fn psi_with(a: &AlgebraElement, conv: PsiConvention) -> MatrixFunction {
    let mut out = MatrixFunction::zero(a.level);
    for (g, c) in &a.terms {
        let ang = tile_angle(g.proto, &g.row);
        let phase = match conv {
            PsiConvention::Multiplicative => ang.scale(g.k),
            PsiConvention::Literal => ang,
        }
        .unit_phase();
        let v = Laurent::monomial(g.k, c * &phase);
        out.add_entry(g.proto, row_index(&g.row) - 1, row_index(&g.col) - 1, &v);
    }
    out
}

pub fn psi_hom_check(a: &AlgebraElement, b: &AlgebraElement) -> Result<bool> {
    psi_hom_check_with(a, b, PsiConvention::Multiplicative)
}

pub fn psi_hom_check_with(a: &AlgebraElement, b: &AlgebraElement, conv: PsiConvention) -> Result<bool> {
    let ab = crate::algebra::multiply(a, b)?;
    let prod = psi_with(a, conv).mul(&psi_with(b, conv))?;
    Ok(psi_with(&ab, conv) == prod && psi_with(&crate::algebra::adjoint(a), conv) == psi_with(a, conv).adjoint())
}

/// The inclusion of level `N` into level `N + 1`: a level-`N` supertile of
/// type `p` is child `d` of a level-`(N+1)` supertile, so its labels gain
/// `d` as a new leading digit.
pub fn phi(a: &AlgebraElement) -> AlgebraElement {
    let rule = pinwheel_rule();
    let mut out = AlgebraElement::zero(a.level + 1);
    for (g, c) in &a.terms {
        for q in 0..2u8 {
            for d in 1..=5u8 {
                if rule.child(q, d).proto != g.proto {
                    continue;
                }
                let h = Generator { level: a.level + 1, proto: q, row: g.row.prefixed(d), col: g.col.prefixed(d), k: g.k };
                out.add_term(h, c.clone());
            }
        }
    }
    out
}

/// One entry of the index set `I(p)`: the tile `digit` of `ω(proto)` is a copy of `p`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Inclusion {
    pub proto: u8,
    pub digit: u8,
}

/// `I(p)` read off the substitution rule.
pub fn index_set(p: u8) -> Vec<Inclusion> {
    let rule = pinwheel_rule();
    let mut out = Vec::new();
    for q in 0..2u8 {
        for d in 1..=5u8 {
            if rule.child(q, d).proto == p {
                out.push(Inclusion { proto: q, digit: d });
            }
        }
    }
    out
}

/// The inclusion computed geometrically: each tile of `ω^N(p)` is carried
/// into `ω^{N+1}(q)` by the pose of its parent, and its new label is found
/// by puncture lookup.
pub fn phi_general(a: &AlgebraElement) -> Result<AlgebraElement> {
    let n = a.level;
    let rule = pinwheel_rule();
    let big = [iterate(0, n + 1)?, iterate(1, n + 1)?];
    let lookup: [BTreeMap<_, Label>; 2] = std::array::from_fn(|q| {
        big[q].tiles.iter().map(|(l, t)| (t.puncture().clone(), l.clone())).collect()
    });
    let lam_n = (0..n).fold(QRoot5::ONE, |acc, _| &acc * &QRoot5::SQRT5);
    let image = |inc: &Inclusion, p: u8, l: &Label| -> Result<Label> {
        let pose = &rule.child(inc.proto, inc.digit).pose;
        let y = label_tile(p, l).puncture().rotate(pose.angle);
        let y = &y + &pose.translation.scale(&lam_n);
        lookup[inc.proto as usize]
            .get(&y)
            .cloned()
            .ok_or_else(|| Error::Precondition(format!("tile {l} of type {p} has no image in child {}", inc.digit)))
    };
    let mut out = AlgebraElement::zero(n + 1);
    for (g, c) in &a.terms {
        for inc in index_set(g.proto) {
            let h = Generator {
                level: n + 1,
                proto: inc.proto,
                row: image(&inc, g.proto, &g.row)?,
                col: image(&inc, g.proto, &g.col)?,
                k: g.k,
            };
            out.add_term(h, c.clone());
        }
    }
    Ok(out)
}

/// `φ_{N,M}`.
pub fn phi_chain(a: &AlgebraElement, m: usize) -> Result<AlgebraElement> {
    if m < a.level {
        return Err(Error::Precondition(format!("target level {m} is below {}", a.level)));
    }
    let steps = (m - a.level) as u32;
    let count = 5usize.checked_pow(steps).and_then(|f| f.checked_mul(a.len()));
    if count.is_none_or(|c| c > MAX_CHAIN_TERMS) {
        return Err(Error::ResourceLimit(format!("phi_chain would produce more than {MAX_CHAIN_TERMS} terms")));
    }
    let mut out = a.clone();
    for _ in 0..steps {
        out = phi(&out);
    }
    Ok(out)
}

/// Values of the entries at a point, for display.
pub fn eval_entry(m: &MatrixFunction, p: u8, row: usize, col: usize, x: f64) -> Complex64 {
    m.entry(p, row, col).eval(x)
}
