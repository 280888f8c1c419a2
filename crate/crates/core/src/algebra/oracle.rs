//! Pointwise evaluation of algebra elements on a finite piece of the groupoid.
//!
//! The context is `R_α(ω^M(p))`. Its punctures are hull points, and two of
//! them are related when they lie in the same level-`N` supertile. Products
//! are computed by the convolution sum over those points, and the result is
//! read back into generator coordinates by sampling several rotations `α`.
//! Nothing here uses the generator relations, so it serves as a check on
//! [`super::multiply`].

use std::collections::{BTreeMap, HashMap};

use super::{tile_angle, AlgebraElement, Generator};
use crate::error::{Error, Result};
use crate::geometry::patch::{label_tile_with, label_type, Patch};
use crate::geometry::rule::pinwheel_rule;
use crate::geometry::tile::Label;
use crate::numerics::{Angle, ExactComplex, RigidMotion, Vec2};

struct Supertile {
    proto: u8,
    /// Angle of each context tile, keyed by the finest `N` digits of its label.
    angles: HashMap<Label, Angle>,
}

/// A context patch cut into level-`N` supertiles.
pub struct OracleContext {
    level: usize,
    supertiles: Vec<Supertile>,
}

impl OracleContext {
    pub fn new(context: &Patch, level: usize) -> Result<Self> {
        if context.level < level + 1 {
            return Err(Error::ContextTooSmall(format!(
                "level-{level} elements need a context of level at least {}, got {}",
                level + 1,
                context.level
            )));
        }
        let cut = context.level - level;
        let mut groups: BTreeMap<&[u8], Supertile> = BTreeMap::new();
        for (l, t) in &context.tiles {
            let (pre, suf) = l.digits().split_at(cut);
            groups
                .entry(pre)
                .or_insert_with(|| Supertile {
                    proto: label_type(pinwheel_rule(), context.root, pre),
                    angles: HashMap::new(),
                })
                .angles
                .insert(Label(suf.to_vec()), t.angle());
        }
        Ok(OracleContext { level, supertiles: groups.into_values().collect() })
    }

    fn has_type(&self, p: u8) -> bool {
        self.supertiles.iter().any(|s| s.proto == p)
    }
}

type Pointwise = HashMap<(Label, Label), ExactComplex>;

/// Values of `a` on pairs of points in one supertile, at rotation `alpha`.
fn evaluate(a: &AlgebraElement, st: &Supertile, alpha: Angle) -> Pointwise {
    let mut out: Pointwise = HashMap::new();
    for (g, c) in &a.terms {
        if g.proto != st.proto {
            continue;
        }
        let ang = alpha + st.angles[&g.row];
        let v = c * &ang.scale(g.k).unit_phase();
        let e = out.entry((g.row.clone(), g.col.clone())).or_default();
        *e = &*e + &v;
    }
    out
}

fn convolve(f: &Pointwise, g: &Pointwise) -> Pointwise {
    let mut by_row: HashMap<&Label, Vec<(&Label, &ExactComplex)>> = HashMap::new();
    for ((r, c), v) in g {
        by_row.entry(r).or_default().push((c, v));
    }
    let mut out: Pointwise = HashMap::new();
    for ((x, mid), u) in f {
        if let Some(row) = by_row.get(mid) {
            for (y, v) in row {
                let e = out.entry((x.clone(), (*y).clone())).or_default();
                *e = &*e + &(u * *v);
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Monomial coefficients of the polynomial of degree `< nodes.len()` through
/// the points, by Newton divided differences.
fn interpolate(nodes: &[ExactComplex], values: &[ExactComplex]) -> Result<Vec<ExactComplex>> {
    let n = nodes.len();
    let mut dd = values.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let den = (&nodes[i] - &nodes[i - j]).recip()?;
            dd[i] = &(&dd[i] - &dd[i - 1]) * &den;
        }
    }
    // Horner on the Newton form.
    let mut poly = vec![ExactComplex::ZERO; n];
    for i in (0..n).rev() {
        // poly = poly * (w - nodes[i]) + dd[i]
        let mut next = vec![ExactComplex::ZERO; n];
        for d in 0..n {
            if poly[d].is_zero() {
                continue;
            }
            if d + 1 < n {
                next[d + 1] = &next[d + 1] + &poly[d];
            }
            next[d] = &next[d] - &(&poly[d] * &nodes[i]);
        }
        next[0] = &next[0] + &dd[i];
        poly = next;
    }
    Ok(poly)
}

fn k_range(a: &AlgebraElement) -> Option<(i64, i64)> {
    let lo = a.terms.keys().map(|g| g.k).min()?;
    let hi = a.terms.keys().map(|g| g.k).max()?;
    Some((lo, hi))
}

/// The product `a·b` computed pointwise on the context and read back.
pub fn convolution_oracle(a: &AlgebraElement, b: &AlgebraElement, ctx: &OracleContext) -> Result<AlgebraElement> {
    if a.level != b.level {
        return Err(Error::LevelMismatch(a.level, b.level));
    }
    if a.level != ctx.level {
        return Err(Error::LevelMismatch(ctx.level, a.level));
    }
    let mut out = AlgebraElement::zero(a.level);
    let (Some((alo, ahi)), Some((blo, bhi))) = (k_range(a), k_range(b)) else {
        return Ok(out);
    };
    for p in 0..2u8 {
        let used = a.terms.keys().chain(b.terms.keys()).any(|g| g.proto == p);
        if used && !ctx.has_type(p) {
            return Err(Error::ContextTooSmall(format!("no supertile of type {p} in the context")));
        }
    }
    let (kmin, kmax) = (alo + blo, ahi + bhi);
    let width = (kmax - kmin + 1) as usize;
    // One extra rotation confirms the read-back.
    let alphas: Vec<Angle> = (0..=width as i64).map(|j| Angle::new(j, 0)).collect();
    let mut found: [Option<BTreeMap<Generator, ExactComplex>>; 2] = [None, None];
    for st in &ctx.supertiles {
        let samples: Vec<Pointwise> =
            alphas.iter().map(|&al| convolve(&evaluate(a, st, al), &evaluate(b, st, al))).collect();
        let mut keys: Vec<&(Label, Label)> = samples.iter().flat_map(|s| s.keys()).collect();
        keys.sort();
        keys.dedup();
        let mut terms = BTreeMap::new();
        for key in keys {
            let (x, y) = key;
            // h(α) = Σ c_k w^k with w = e^{i(α + ∠x)}.
            let w: Vec<ExactComplex> = alphas.iter().map(|&al| (al + st.angles[x]).unit_phase()).collect();
            let h: Vec<ExactComplex> = samples.iter().map(|s| s.get(key).cloned().unwrap_or_default()).collect();
            let shifted: Vec<ExactComplex> = w.iter().zip(&h).map(|(wj, hj)| hj * &inv_pow(wj, kmin)).collect();
            let coeffs = interpolate(&w[..width], &shifted[..width])?;
            // The spare sample must agree.
            let mut check = ExactComplex::ZERO;
            for c in coeffs.iter().rev() {
                check = &(&check * &w[width]) + c;
            }
            if check != shifted[width] {
                return Err(Error::Precondition(format!("read-back of ({x},{y}) is inconsistent")));
            }
            for (i, c) in coeffs.into_iter().enumerate() {
                if !c.is_zero() {
                    let g = Generator { level: a.level, proto: st.proto, row: x.clone(), col: y.clone(), k: kmin + i as i64 };
                    terms.insert(g, c);
                }
            }
        }
        match &found[st.proto as usize] {
            None => found[st.proto as usize] = Some(terms),
            Some(prev) if *prev == terms => {}
            Some(_) => {
                return Err(Error::Precondition("supertiles of the same type disagree".into()));
            }
        }
    }
    for terms in found.into_iter().flatten() {
        for (g, c) in terms {
            out.add_term(g, c);
        }
    }
    Ok(out)
}

/// `w^{−k}` for a unit complex `w`.
fn inv_pow(w: &ExactComplex, k: i64) -> ExactComplex {
    if k >= 0 {
        w.conj().pow(k as u32)
    } else {
        w.pow((-k) as u32)
    }
}

/// The induced representation on functions of the context's punctures.
///
/// Returns the image vector and the number of translated punctures that fell
/// outside the context and were dropped.
pub fn induced_action(
    a: &AlgebraElement,
    xi: &BTreeMap<Label, ExactComplex>,
    context: &Patch,
    alpha: Angle,
) -> Result<(BTreeMap<Label, ExactComplex>, usize)> {
    let n = a.level;
    let m = context.tiles.first().map(|(l, _)| l.len()).unwrap_or(context.level);
    if m < n {
        return Err(Error::ContextTooSmall(format!("context labels have length {m} < {n}")));
    }
    let rule = pinwheel_rule();
    let by_puncture: HashMap<&Vec2, &Label> = context.tiles.iter().map(|(l, t)| (t.puncture(), l)).collect();
    let mut out: BTreeMap<Label, ExactComplex> = BTreeMap::new();
    let mut lost = 0;
    for (l, t) in &context.tiles {
        let (pre, suf) = l.digits().split_at(m - n);
        let p = label_type(rule, context.root, pre);
        let row = Label(suf.to_vec());
        for (g, c) in a.terms.range(term_range(n, p, &row)) {
            // The supertile is R_β(ω^N(p)) up to translation.
            let beta = t.angle() - tile_angle(p, &row);
            let from = label_tile_with(rule, p, &g.row);
            let to = label_tile_with(rule, p, &g.col);
            let step = RigidMotion::rotation(beta).apply(&(to.puncture() - from.puncture()));
            let y = t.puncture() + &step;
            let Some(&target) = by_puncture.get(&y) else {
                lost += 1;
                continue;
            };
            let Some(v) = xi.get(target) else { continue };
            let val = &(c * &(alpha + t.angle()).scale(g.k).unit_phase()) * v;
            let e = out.entry(l.clone()).or_default();
            *e = &*e + &val;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok((out, lost))
}

fn term_range(level: usize, proto: u8, row: &Label) -> std::ops::RangeInclusive<Generator> {
    let lo = Generator { level, proto, row: row.clone(), col: Label::empty(), k: i64::MIN };
    let hi = Generator { level, proto, row: row.clone(), col: Label(vec![6; level + 1]), k: i64::MAX };
    lo..=hi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{adjoint, all_generators, identity, multiply, random_element};
    use crate::geometry::patch::iterate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn interpolation_recovers_coefficients() {
        let nodes: Vec<ExactComplex> = (0..4).map(|j| Angle::new(j, 0).unit_phase()).collect();
        let coeffs = [ExactComplex::int(1, 2), ExactComplex::ZERO, ExactComplex::int(-3, 0), ExactComplex::I];
        let values: Vec<ExactComplex> = nodes
            .iter()
            .map(|w| coeffs.iter().rev().fold(ExactComplex::ZERO, |acc, c| &(&acc * w) + c))
            .collect();
        assert_eq!(interpolate(&nodes, &values).unwrap(), coeffs.to_vec());
    }

    #[test]
    fn level_one_products_match() {
        let ctx = OracleContext::new(&iterate(0, 2).unwrap(), 1).unwrap();
        let gens = all_generators(1, [-1, 2]);
        for a in gens.iter().step_by(7) {
            for b in gens.iter().step_by(3) {
                let a = AlgebraElement::generator(a.clone());
                let b = AlgebraElement::generator(b.clone());
                assert_eq!(convolution_oracle(&a, &b, &ctx).unwrap(), multiply(&a, &b).unwrap());
            }
        }
    }

    #[test]
    fn identity_and_context_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_element(&mut rng, 1, 4, (-2, 2));
        let c3 = OracleContext::new(&iterate(0, 3).unwrap(), 1).unwrap();
        let c4 = OracleContext::new(&iterate(1, 4).unwrap(), 1).unwrap();
        assert_eq!(convolution_oracle(&a, &identity(1), &c3).unwrap(), a);
        let b = random_element(&mut rng, 1, 4, (-2, 2));
        assert_eq!(convolution_oracle(&a, &b, &c3).unwrap(), convolution_oracle(&a, &b, &c4).unwrap());
        assert!(matches!(OracleContext::new(&iterate(0, 1).unwrap(), 1), Err(Error::ContextTooSmall(_))));
    }

    #[test]
    fn action_is_a_representation() {
        let ctx = iterate(0, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let xi: BTreeMap<Label, ExactComplex> =
            ctx.tiles.iter().step_by(4).map(|(l, _)| (l.clone(), ExactComplex::int(1, (l.0[2] as i64) - 3))).collect();
        let alpha = Angle::new(3, 1);
        let (id, lost) = induced_action(&identity(2), &xi, &ctx, alpha).unwrap();
        assert_eq!((id, lost), (xi.clone(), 0));
        for _ in 0..10 {
            let a = random_element(&mut rng, 2, 4, (-2, 2));
            let b = random_element(&mut rng, 2, 4, (-2, 2));
            let ab = multiply(&a, &b).unwrap();
            let (lhs, _) = induced_action(&ab, &xi, &ctx, alpha).unwrap();
            let (bx, _) = induced_action(&b, &xi, &ctx, alpha).unwrap();
            let (rhs, _) = induced_action(&a, &bx, &ctx, alpha).unwrap();
            assert_eq!(lhs, rhs);
        }
        // g g* fixes a delta at a matching puncture.
        let g = AlgebraElement::generator(Generator::parse(2, 0, "35", "41").unwrap());
        let gg = multiply(&g, &adjoint(&g)).unwrap();
        let target = ctx.tiles.iter().find(|(l, _)| {
            l.0[1..] == [3, 5] && label_type(pinwheel_rule(), 0, &l.0[..1]) == 0
        });
        let (l, _) = target.unwrap();
        let delta = BTreeMap::from([(l.clone(), ExactComplex::ONE)]);
        assert_eq!(induced_action(&gg, &delta, &ctx, alpha).unwrap().0, delta);
    }

    #[test]
    fn dropped_punctures_are_counted() {
        let mut ctx = iterate(0, 2).unwrap();
        ctx.tiles.retain(|(l, _)| l.0[1] != 5);
        let g = AlgebraElement::generator(Generator::parse(0, 1, "3", "5").unwrap());
        let xi = BTreeMap::new();
        let (_, lost) = induced_action(&g, &xi, &ctx, Angle::ZERO).unwrap();
        assert_eq!(lost, 3);
    }
}
