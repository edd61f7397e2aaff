//! Numeric evaluation at a generic complex `A`: the normalized basis
//! `ND_a = D_a / ⟨D_a, D_a⟩^{1/2}` and its one-step recursion.
//!
//! Everything floating-point lives here; the rest of the crate is exact.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bases::{d_element, enumerate_sequences, ColorSequence};
use crate::diagram::{enumerate_diagrams, PlanarDiagram};
use crate::error::{Result, TlError};
use crate::gram::diagram_loop_matrix;
use crate::recoupling::gamma;
use crate::ring::{delta, quantum_delta_rf, RatFunc};
use crate::tlcat::{tl_bend, tl_compose, tl_unbend, TLElement};

/// Closeness to a root of unity below which a point is rejected.
pub const GENERIC_TOLERANCE: f64 = 1e-6;
/// Roots of unity of order `4r` for `r <= GENERIC_ORDER` are checked.
pub const GENERIC_ORDER: u32 = 64;
/// Smallest acceptable `|⟨D_a, D_a⟩(A)|`.
pub const NORM_FLOOR: f64 = 1e-12;

/// True when `A ≠ 0` and `|A^{4r} - 1| > 1e-6` for every `r <= 64`.
pub fn is_generic(a: Complex64) -> bool {
    a.norm() > GENERIC_TOLERANCE
        && (1..=GENERIC_ORDER).all(|r| (a.powu(4 * r) - 1.0).norm() > GENERIC_TOLERANCE)
}

/// Reproducible generic points with modulus in `[0.8, 1.25]`.
pub fn generic_points(count: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let r: f64 = rng.gen_range(0.8..1.25);
        let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let a = Complex64::from_polar(r, t);
        if is_generic(a) {
            out.push(a);
        }
    }
    out
}

/// `TL_n` evaluated at a fixed `A`, in diagram coordinates.
#[derive(Clone, Debug)]
pub struct NumericTL {
    n: usize,
    a: Complex64,
    basis: Vec<PlanarDiagram>,
    gram: Vec<Vec<Complex64>>,
}

impl NumericTL {
    pub fn new(n: usize, a: Complex64) -> Result<Self> {
        if !is_generic(a) {
            return Err(TlError::Degenerate(format!("A = {a} is zero or near a root of unity")));
        }
        let d = delta().eval_complex(a)?;
        let gram = diagram_loop_matrix(n)
            .into_iter()
            .map(|row| row.into_iter().map(|l| d.powu(l as u32)).collect())
            .collect();
        Ok(NumericTL {
            n,
            a,
            basis: enumerate_diagrams(n),
            gram,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn scalar(&self, c: &RatFunc) -> Result<Complex64> {
        c.eval_complex(self.a)
    }

    /// Coordinates of an exact element of `TL_n`.
    pub fn eval(&self, x: &TLElement) -> Result<Vec<Complex64>> {
        if x.signature() != (self.n, self.n) {
            return Err(TlError::SignatureMismatch {
                expected: format!("({0},{0})", self.n),
                got: format!("{:?}", x.signature()),
            });
        }
        self.basis.iter().map(|d| x.coeff(d).eval_complex(self.a)).collect()
    }

    /// The loop-convention pairing, bilinear in both arguments.
    pub fn pair(&self, x: &[Complex64], y: &[Complex64]) -> Complex64 {
        x.iter()
            .zip(&self.gram)
            .map(|(xi, row)| xi * row.iter().zip(y).map(|(g, yj)| g * yj).sum::<Complex64>())
            .sum()
    }

    /// `x / ⟨x, x⟩^{1/2}` with the principal square root.
    pub fn normalize(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        let nn = self.pair(x, x);
        if nn.norm() < NORM_FLOOR {
            return Err(TlError::Degenerate(format!("vanishing norm at A = {}", self.a)));
        }
        let s = nn.sqrt();
        Ok(x.iter().map(|v| v / s).collect())
    }

    pub fn nd(&self, seq: &ColorSequence) -> Result<Vec<Complex64>> {
        self.normalize(&self.eval(&*d_element(seq)?)?)
    }
}

/// `e_i` acting on the disk picture of `x ∈ TL_n`: bend `x` to `2n` points,
/// cap points `i, i+1` with a cup below, and bend back. `1 <= i <= 2n - 1`.
pub fn disk_action(i: usize, x: &TLElement) -> Result<TLElement> {
    let n = x.m();
    if x.k() != n || i == 0 || i >= 2 * n {
        return Err(TlError::InvalidIndex {
            index: i,
            range: format!("1..={} on TL_{n}", (2 * n).saturating_sub(1)),
        });
    }
    let disk = tl_unbend(x)?;
    tl_bend(&tl_compose(&disk, &TLElement::e(2 * n, i)?)?)
}

fn check_valley(seq: &ColorSequence, i: usize) -> Result<(ColorSequence, usize)> {
    let a = seq.augmented();
    if i == 0 || i + 1 >= a.len() || a[i] + 1 != a[i - 1] || a[i] + 1 != a[i + 1] {
        return Err(TlError::InvalidSequence(format!(
            "position {i} of {seq} is not a valley"
        )));
    }
    let mut raised = seq.entries().to_vec();
    raised[i - 1] += 2;
    Ok((ColorSequence::new(raised)?, a[i]))
}

/// Exact check of `D_{a'} = e_i·D_a - (Δ_{a_i}/Δ_{a_i+1}) D_a` at a valley
/// `a_{i-1} = a_i + 1 = a_{i+1}`, where `a'` raises `a_i` by 2.
pub fn valley_identity(seq: &ColorSequence, i: usize) -> Result<bool> {
    let (raised, c) = check_valley(seq, i)?;
    let d = d_element(seq)?;
    let ratio = &quantum_delta_rf(c as u32) / &quantum_delta_rf(c as u32 + 1);
    let rhs = disk_action(i, &d)?.checked_sub(&d.scale(&ratio))?;
    Ok(*d_element(&raised)? == rhs)
}

#[derive(Clone, Debug, Serialize)]
pub struct StepReport {
    pub sequence: ColorSequence,
    pub raised: ColorSequence,
    pub i: usize,
    /// Distance between `ND_{a'}` and the normalized recursion, up to a
    /// global sign from the square-root branch.
    pub residual: f64,
    pub symbolic_identity: bool,
}

/// Evaluates both sides of
/// `ND_{a'} = (e_i - Δ_{a_i}/Δ_{a_i+1}) ND_a · (Γ(a_{i-1},a_i) / Γ(a'_i,a_{i+1}))^{1/2}`
/// at `A` and reports the Euclidean residual in diagram coordinates.
pub fn nd_step_check(seq: &ColorSequence, i: usize, a: Complex64) -> Result<StepReport> {
    let (raised, c) = check_valley(seq, i)?;
    let num = NumericTL::new(seq.n(), a)?;
    let nd = num.nd(seq)?;
    let lhs = num.nd(&raised)?;

    let aug = seq.augmented();
    let ratio = num.scalar(&(&quantum_delta_rf(c as u32) / &quantum_delta_rf(c as u32 + 1)))?;
    let g = &gamma(aug[i - 1], c) / &gamma(c + 2, aug[i + 1]);
    let factor = num.scalar(&g)?.sqrt();

    let basis_images: Vec<Vec<Complex64>> = num
        .basis
        .iter()
        .map(|d| num.eval(&disk_action(i, &TLElement::from_diagram(d.clone()))?))
        .collect::<Result<_>>()?;
    let mut rhs = vec![Complex64::new(0.0, 0.0); nd.len()];
    for (coef, img) in nd.iter().zip(&basis_images) {
        for (r, v) in rhs.iter_mut().zip(img) {
            *r += coef * v;
        }
    }
    for (r, v) in rhs.iter_mut().zip(&nd) {
        *r = (*r - ratio * v) * factor;
    }
    let dist = |s: f64| -> f64 {
        lhs.iter()
            .zip(&rhs)
            .map(|(x, y)| (x - y * s).norm_sqr())
            .sum::<f64>()
            .sqrt()
    };
    Ok(StepReport {
        sequence: seq.clone(),
        raised,
        i,
        residual: dist(1.0).min(dist(-1.0)),
        symbolic_identity: valley_identity(seq, i)?,
    })
}

/// Gram matrix of `{ND_a}` at `A`, rows in [`enumerate_sequences`] order.
pub fn nd_gram_numeric(n: usize, a: Complex64) -> Result<Vec<Vec<Complex64>>> {
    let num = NumericTL::new(n, a)?;
    let nds = enumerate_sequences(n)
        .iter()
        .map(|s| num.nd(s))
        .collect::<Result<Vec<_>>>()?;
    Ok(nds
        .iter()
        .map(|x| nds.iter().map(|y| num.pair(x, y)).collect())
        .collect())
}

/// Max-entry distance from the identity.
pub fn identity_deviation(m: &[Vec<Complex64>]) -> f64 {
    m.iter()
        .enumerate()
        .flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(move |(j, v)| (v - if i == j { 1.0 } else { 0.0 }).norm())
        })
        .fold(0.0, f64::max)
}

/// Every valley position of `seq` (1-based).
pub fn valleys(seq: &ColorSequence) -> Vec<usize> {
    let a = seq.augmented();
    (1..a.len() - 1)
        .filter(|&i| a[i] + 1 == a[i - 1] && a[i] + 1 == a[i + 1])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> ColorSequence {
        s.parse().unwrap()
    }

    #[test]
    fn generic_sampling() {
        let pts = generic_points(5, 7);
        assert_eq!(pts, generic_points(5, 7));
        assert!(pts.iter().all(|&a| is_generic(a)));
        assert!(!is_generic(Complex64::new(1.0, 0.0)));
        assert!(!is_generic(Complex64::from_polar(1.0, std::f64::consts::PI / 6.0)));
        assert!(!is_generic(Complex64::new(0.0, 0.0)));
        assert!(NumericTL::new(2, Complex64::new(0.0, 1.0)).is_err());
    }

    #[test]
    fn gram_is_identity_examples() {
        let g = nd_gram_numeric(1, Complex64::new(1.3, 0.2)).unwrap();
        assert!(identity_deviation(&g) < 1e-12);
        let g = nd_gram_numeric(2, Complex64::new(1.2, 0.0)).unwrap();
        assert_eq!(g.len(), 2);
        assert!(identity_deviation(&g) < 1e-10);
        let g = nd_gram_numeric(3, Complex64::new(0.8, 0.3)).unwrap();
        assert_eq!(g.len(), 5);
        assert!(identity_deviation(&g) < 1e-9);
    }

    #[test]
    fn gram_is_identity_at_sampled_points() {
        for a in generic_points(5, 2024) {
            for n in 1..=4 {
                let dev = identity_deviation(&nd_gram_numeric(n, a).unwrap());
                assert!(dev < 1e-9, "n = {n}, A = {a}, deviation {dev}");
            }
        }
    }

    #[test]
    fn disk_action_on_diagrams_is_diagrammatic() {
        for n in 1..=3 {
            for d in enumerate_diagrams(n) {
                for i in 1..2 * n {
                    let img = disk_action(i, &TLElement::from_diagram(d.clone())).unwrap();
                    assert_eq!(img.len(), 1);
                    let (_, c) = img.terms().next().unwrap();
                    assert!(c.is_one() || *c == RatFunc::from_poly(delta()));
                }
            }
        }
        assert!(disk_action(0, &TLElement::identity(2)).is_err());
        assert!(disk_action(4, &TLElement::identity(2)).is_err());
    }

    #[test]
    fn valley_identity_all_small() {
        let mut count = 0;
        for n in 1..=4 {
            for s in enumerate_sequences(n) {
                for i in valleys(&s) {
                    assert!(valley_identity(&s, i).unwrap(), "{s} at {i}");
                    count += 1;
                }
            }
        }
        assert!(count > 0);
    }

    #[test]
    fn step_examples() {
        let a = Complex64::new(1.2, 0.0);
        let r = nd_step_check(&seq("1,0,1"), 2, a).unwrap();
        assert_eq!(r.raised, seq("1,2,1"));
        assert!(r.symbolic_identity);
        assert!(r.residual < 1e-9, "{}", r.residual);
        let r = nd_step_check(&seq("1,0,1,2,1"), 2, a).unwrap();
        assert!(r.residual < 1e-9, "{}", r.residual);
        assert!(nd_step_check(&seq("1,2,1"), 2, a).is_err());
        assert!(nd_step_check(&seq("1,0,1"), 1, a).is_err());
    }

    #[test]
    fn step_residuals_small_everywhere() {
        for a in generic_points(3, 11) {
            for n in 2..=4 {
                for s in enumerate_sequences(n) {
                    for i in valleys(&s) {
                        let r = nd_step_check(&s, i, a).unwrap();
                        assert!(r.residual < 1e-8, "{s} at {i}, A = {a}: {}", r.residual);
                    }
                }
            }
        }
    }

    #[test]
    fn initial_element_has_unit_norm() {
        for n in 1..=4 {
            let s = ColorSequence::new((0..2 * n - 1).map(|j| (j + 1) % 2).collect()).unwrap();
            let num = NumericTL::new(n, Complex64::new(1.1, -0.4)).unwrap();
            let u = num.nd(&s).unwrap();
            assert!((num.pair(&u, &u) - 1.0).norm() < 1e-12);
        }
    }
}
