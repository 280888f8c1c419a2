//! The *-algebra spanned by `z^k · e_N(p, l, m)`.
//!
//! `z^k · e_N(p, l, m)` is the function on the groupoid supported on pairs
//! `(T, T′)` where `T` sits at tile `l` of a level-`N` supertile of type `p`
//! and `T′` is the same tiling recentred at tile `m`; its value is
//! `e^{ik∠T(0)}`.

pub mod expr;
pub mod oracle;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::patch::label_angle_of;
use crate::geometry::rule::pinwheel_rule;
use crate::geometry::tile::Label;
use crate::numerics::{Angle, ExactComplex, QRoot5};

/// `z^k · e_level(proto, row, col)`. Ordered by `(level, proto, row, col, k)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub level: usize,
    pub proto: u8,
    pub row: Label,
    pub col: Label,
    pub k: i64,
}

impl Generator {
    pub fn new(k: i64, level: usize, proto: u8, row: Label, col: Label) -> Result<Self> {
        if proto > 1 {
            return Err(Error::Precondition(format!("proto {proto} is not 0 or 1")));
        }
        for l in [&row, &col] {
            if l.len() != level {
                return Err(Error::InvalidLabel(format!("label {l} has length {}, expected {level}", l.len())));
            }
        }
        Ok(Generator { level, proto, row, col, k })
    }

    /// Shorthand for tests and examples: `e("35")` style labels.
    pub fn parse(k: i64, proto: u8, row: &str, col: &str) -> Result<Self> {
        let row: Label = row.parse()?;
        let col: Label = col.parse()?;
        Self::new(k, row.len(), proto, row, col)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k != 0 {
            write!(f, "z^{}*", self.k)?;
        }
        write!(f, "e[{}]({};{},{})", self.level, self.proto, self.row, self.col)
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The angle `∠t_l` of tile `l` in `ω^N(p)`.
pub fn tile_angle(proto: u8, label: &Label) -> Angle {
    label_angle_of(pinwheel_rule(), proto, label.digits())
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    pub level: usize,
    pub terms: BTreeMap<Generator, ExactComplex>,
}

impl AlgebraElement {
    pub fn zero(level: usize) -> Self {
        AlgebraElement { level, terms: BTreeMap::new() }
    }

    pub fn generator(g: Generator) -> Self {
        Self::term(ExactComplex::ONE, g)
    }

    pub fn term(c: ExactComplex, g: Generator) -> Self {
        let mut e = Self::zero(g.level);
        e.add_term(g, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, g: Generator, c: ExactComplex) {
        debug_assert_eq!(g.level, self.level);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_levels(self, other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&ExactComplex::int(-1, 0)))
    }

    pub fn scale(&self, s: &ExactComplex) -> Self {
        let mut out = Self::zero(self.level);
        for (g, c) in &self.terms {
            out.add_term(g.clone(), c * s);
        }
        out
    }
}

fn check_levels(a: &AlgebraElement, b: &AlgebraElement) -> Result<()> {
    if a.level != b.level {
        Err(Error::LevelMismatch(a.level, b.level))
    } else {
        Ok(())
    }
}

/// Σ over both protos and all labels of `e_N(p, l, l)`.
pub fn identity(level: usize) -> AlgebraElement {
    let mut e = AlgebraElement::zero(level);
    for p in 0..2 {
        for l in Label::all(level) {
            e.add_term(Generator { level, proto: p, row: l.clone(), col: l, k: 0 }, ExactComplex::ONE);
        }
    }
    e
}

/// The unitary `z` at level `N`: `Σ z^1 · e_N(p, l, l)`.
pub fn z(level: usize) -> AlgebraElement {
    let mut e = AlgebraElement::zero(level);
    for p in 0..2 {
        for l in Label::all(level) {
            e.add_term(Generator { level, proto: p, row: l.clone(), col: l, k: 1 }, ExactComplex::ONE);
        }
    }
    e
}

/// The adjoint of `z`.
pub fn z_star(level: usize) -> AlgebraElement {
    adjoint(&z(level))
}

/// The product, by the relations of the generators.
pub fn multiply(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    check_levels(a, b)?;
    let mut by_row: HashMap<(u8, &Label), Vec<(&Generator, &ExactComplex)>> = HashMap::new();
    for (g, c) in &b.terms {
        by_row.entry((g.proto, &g.row)).or_default().push((g, c));
    }
    let mut out = AlgebraElement::zero(a.level);
    for (g1, c1) in &a.terms {
        let Some(right) = by_row.get(&(g1.proto, &g1.col)) else {
            continue;
        };
        let d = tile_angle(g1.proto, &g1.col) - tile_angle(g1.proto, &g1.row);
        for (g2, c2) in right {
            let phase = d.scale(g2.k).unit_phase();
            let g = Generator {
                level: a.level,
                proto: g1.proto,
                row: g1.row.clone(),
                col: g2.col.clone(),
                k: g1.k + g2.k,
            };
            out.add_term(g, &(c1 * *c2) * &phase);
        }
    }
    Ok(out)
}

/// `(c z^k e(l, m))* = c̄ · e^{ik(∠m − ∠l)} · z^{−k} e(m, l)`.
pub fn adjoint(a: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero(a.level);
    for (g, c) in &a.terms {
        let d = tile_angle(g.proto, &g.col) - tile_angle(g.proto, &g.row);
        let phase = d.scale(g.k).unit_phase();
        let h = Generator { level: g.level, proto: g.proto, row: g.col.clone(), col: g.row.clone(), k: -g.k };
        out.add_term(h, &c.conj() * &phase);
    }
    out
}

pub fn is_projection(a: &AlgebraElement) -> bool {
    multiply(a, a).map(|sq| &sq == a).unwrap_or(false) && &adjoint(a) == a
}

pub fn is_partial_isometry(a: &AlgebraElement) -> bool {
    let s = adjoint(a);
    multiply(a, &s).and_then(|x| multiply(&x, a)).map(|x| &x == a).unwrap_or(false)
}

/// The phase `e^{i(∠row − ∠col)}` with `z·g = phase · g·z`, checked symbolically.
pub fn z_commutation_check(g: &Generator) -> Result<ExactComplex> {
    let phase = (tile_angle(g.proto, &g.row) - tile_angle(g.proto, &g.col)).unit_phase();
    let e = AlgebraElement::generator(g.clone());
    let zz = z(g.level);
    let left = multiply(&zz, &e)?;
    let right = multiply(&e, &zz)?.scale(&phase);
    if left != right {
        return Err(Error::Precondition(format!("commutation fails for {g}")));
    }
    Ok(phase)
}

/// Every generator of a level with `k` in the given range.
pub fn all_generators(level: usize, ks: impl IntoIterator<Item = i64> + Clone) -> Vec<Generator> {
    let labels = Label::all(level);
    let mut out = Vec::new();
    for p in 0..2 {
        for r in &labels {
            for c in &labels {
                for k in ks.clone() {
                    out.push(Generator { level, proto: p, row: r.clone(), col: c.clone(), k });
                }
            }
        }
    }
    out
}

/// A fixed pool of exact coefficients for randomized checks.
pub fn coefficient_pool() -> Vec<ExactComplex> {
    vec![
        ExactComplex::ONE,
        ExactComplex::int(-1, 0),
        ExactComplex::I,
        ExactComplex::int(2, -3),
        ExactComplex::new(QRoot5::from_parts(1, 2, 1, 1), QRoot5::ZERO),
        ExactComplex::new(QRoot5::from_parts(0, 1, -2, 3), QRoot5::from_parts(1, 5, 0, 1)),
        ExactComplex::new(QRoot5::rat(-3, 4), QRoot5::from_parts(1, 1, 1, 2)),
    ]
}

pub fn random_generator<R: Rng>(rng: &mut R, level: usize, k_range: (i64, i64)) -> Generator {
    let label = |rng: &mut R| Label((0..level).map(|_| rng.gen_range(1..=5)).collect());
    Generator {
        level,
        proto: rng.gen_range(0..2),
        row: label(rng),
        col: label(rng),
        k: rng.gen_range(k_range.0..=k_range.1),
    }
}

/// A random element with `1..=max_terms` terms.
pub fn random_element<R: Rng>(rng: &mut R, level: usize, max_terms: usize, k_range: (i64, i64)) -> AlgebraElement {
    let pool = coefficient_pool();
    let mut e = AlgebraElement::zero(level);
    let n = rng.gen_range(1..=max_terms);
    for _ in 0..n {
        let g = random_generator(rng, level, k_range);
        e.add_term(g, pool[rng.gen_range(0..pool.len())].clone());
    }
    e
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&expr::print(self))
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn g(k: i64, p: u8, r: &str, c: &str) -> AlgebraElement {
        AlgebraElement::generator(Generator::parse(k, p, r, c).unwrap())
    }

    #[test]
    fn zero_products() {
        assert!(multiply(&g(0, 0, "3", "5"), &g(0, 1, "1", "2")).unwrap().is_zero());
        assert!(multiply(&g(0, 0, "3", "5"), &g(0, 0, "4", "4")).unwrap().is_zero());
        assert!(matches!(multiply(&g(0, 0, "3", "5"), &g(0, 0, "33", "34")), Err(Error::LevelMismatch(1, 2))));
    }

    #[test]
    fn phase_product() {
        let p = multiply(&g(1, 0, "3", "4"), &g(1, 0, "4", "5")).unwrap();
        assert_eq!(p, g(2, 0, "3", "5").scale(&ExactComplex::int(-1, 0)));
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(adjoint(&g(0, 0, "3", "5")), g(0, 0, "5", "3"));
        let x = g(2, 0, "3", "5");
        assert_eq!(multiply(&x, &adjoint(&x)).unwrap(), g(0, 0, "3", "3"));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let a = random_element(&mut rng, 2, 5, (-2, 2));
            assert_eq!(adjoint(&adjoint(&a)), a);
        }
    }

    #[test]
    fn identities() {
        assert_eq!(identity(0).len(), 2);
        assert_eq!(identity(1).len(), 10);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 0..=3 {
            let a = random_element(&mut rng, n, 4, (-2, 2));
            assert_eq!(multiply(&identity(n), &a).unwrap(), a);
            assert_eq!(multiply(&a, &identity(n)).unwrap(), a);
        }
    }

    #[test]
    fn commutation_phases() {
        let ph = |r: &str, c: &str| z_commutation_check(&Generator::parse(0, 0, r, c).unwrap()).unwrap();
        assert_eq!(ph("3", "3"), ExactComplex::ONE);
        assert_eq!(ph("3", "4"), ExactComplex::int(-1, 0));
        // ∠t_3 − ∠t_5 = (1,0) − (1,1) = (0,3)
        assert_eq!(ph("3", "5"), Angle::new(0, 3).unit_phase());
        assert_eq!(ph("3", "5"), ExactComplex::int(0, -1));
    }

    #[test]
    fn projections() {
        assert!(is_projection(&g(0, 1, "24", "24")));
        assert!(is_partial_isometry(&g(3, 0, "1", "5")));
        assert!(!is_projection(&g(0, 0, "1", "2").add(&g(0, 0, "2", "1")).unwrap()));
    }
}
