//! Float bounds on `sup_x ‖ψ(a)(x)‖`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::MatrixFunction;

pub const DEFAULT_GRID: usize = 1024;
const POWER_TOL: f64 = 1e-12;
const POWER_MAX_ITERS: usize = 5000;
const SLACK: f64 = 1e-10;
/// Target for the relative Bernstein correction.
const REL_CORRECTION: f64 = 1e-7;

struct Sparse {
    n: usize,
    entries: Vec<(usize, usize, Complex64)>,
}

impl Sparse {
    fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.n];
        for &(r, c, a) in &self.entries {
            out[r] += a * v[c];
        }
        out
    }

    fn apply_adjoint(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.n];
        for &(r, c, a) in &self.entries {
            out[c] += a.conj() * v[r];
        }
        out
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest singular value by power iteration on `A*A`.
fn top_singular(a: &Sparse) -> f64 {
    if a.entries.is_empty() {
        return 0.0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut v: Vec<Complex64> = (0..a.n).map(|_| Complex64::new(rng.gen_range(0.5..1.5), rng.gen_range(-0.5..0.5))).collect();
    let s = norm(&v);
    v.iter_mut().for_each(|z| *z /= s);
    let mut sigma = 0.0f64;
    for _ in 0..POWER_MAX_ITERS {
        let w = a.apply(&v);
        let next = norm(&w);
        let mut u = a.apply_adjoint(&w);
        let s = norm(&u);
        if s == 0.0 {
            return next;
        }
        u.iter_mut().for_each(|z| *z /= s);
        v = u;
        let done = (next - sigma).abs() <= POWER_TOL * next.max(1.0);
        sigma = sigma.max(next);
        if done {
            break;
        }
    }
    sigma
}

/// `(lower, upper)` for the norm of `m`, with at least `grid` sample points.
///
/// For unit vectors `v, w` the function `x ↦ Re⟨w, u^{-c} M(x) v⟩` is a real
/// trigonometric polynomial of degree `d`, so by Bernstein's inequality its
/// maximum exceeds its value at the nearest grid point by a factor of at most
/// `1/(1 − π²d²/(2n²))`.
pub fn norm_estimate_with(m: &MatrixFunction, grid: usize) -> (f64, f64) {
    let Some((kmin, kmax)) = m.degree_range() else {
        return (0.0, 0.0);
    };
    let d = ((kmax - kmin) as f64 / 2.0).ceil();
    let n = if d == 0.0 {
        1
    } else {
        grid.max((std::f64::consts::PI * d / (2.0 * REL_CORRECTION).sqrt()).ceil() as usize)
    };
    // Only rows and columns that carry entries matter.
    let blocks: Vec<(BTreeMap<usize, usize>, Vec<((usize, usize), &super::Laurent)>)> = m
        .blocks
        .iter()
        .map(|b| {
            let mut idx = BTreeMap::new();
            for (r, c) in b.keys() {
                let len = idx.len();
                idx.entry(*r).or_insert(len);
                let len = idx.len();
                idx.entry(*c).or_insert(len);
            }
            (idx, b.iter().map(|(k, v)| (*k, v)).collect())
        })
        .collect();
    let mut lower = 0.0f64;
    for j in 0..n {
        let x = j as f64 / n as f64;
        for (idx, entries) in &blocks {
            if entries.is_empty() {
                continue;
            }
            let s = Sparse {
                n: idx.len(),
                entries: entries.iter().map(|((r, c), l)| (idx[r], idx[c], l.eval(x))).collect(),
            };
            lower = lower.max(top_singular(&s));
        }
    }
    if d == 0.0 {
        return (lower, lower + SLACK);
    }
    let h = std::f64::consts::PI * d / n as f64;
    (lower, (lower + SLACK) / (1.0 - h * h / 2.0))
}

pub fn norm_estimate(m: &MatrixFunction) -> (f64, f64) {
    norm_estimate_with(m, DEFAULT_GRID)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{adjoint, z, AlgebraElement, Generator};
    use crate::numerics::ExactComplex;
    use crate::tower::psi;

    #[test]
    fn generators_have_norm_one() {
        for (k, p, r, c) in [(0, 0, "3", "5"), (3, 1, "12", "44"), (-2, 0, "", "")] {
            let g = AlgebraElement::generator(Generator::parse(k, p, r, c).unwrap());
            let (lo, hi) = norm_estimate(&psi(&g));
            assert!(lo >= 1.0 - 1e-9 && hi <= 1.0 + 1e-6, "{lo} {hi}");
        }
    }

    #[test]
    fn cosine() {
        let zz = z(0);
        let s = zz.add(&adjoint(&zz)).unwrap();
        let (lo, hi) = norm_estimate(&psi(&s));
        assert!((lo - 2.0).abs() < 1e-6 && (hi - 2.0).abs() < 1e-6, "{lo} {hi}");
        assert!(lo <= 2.0 + 1e-12 && hi >= 2.0);
    }

    #[test]
    fn zero_and_scaling() {
        assert_eq!(norm_estimate(&psi(&AlgebraElement::zero(2))), (0.0, 0.0));
        let g = AlgebraElement::term(ExactComplex::int(3, 4), Generator::parse(1, 0, "1", "2").unwrap());
        let (lo, hi) = norm_estimate(&psi(&g));
        assert!((lo - 5.0).abs() < 1e-9 && hi >= 5.0);
    }
}
