//! Evaluation at rational and complex points, and exact root-of-unity tests.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{IntPoly, LaurentPoly, RatFunc};
use crate::error::{Result, TlError};

/// Relative size below which a complex denominator counts as vanishing.
pub const POLE_TOLERANCE: f64 = 1e-12;

fn pow_rational(x: &BigRational, e: i64) -> BigRational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

impl LaurentPoly {
    /// Exact value at a nonzero rational point.
    pub fn eval_rational(&self, x: &BigRational) -> Result<BigRational> {
        if x.is_zero() {
            return Err(TlError::EvaluationAtZero);
        }
        let mut acc = BigRational::zero();
        for (e, c) in self.terms() {
            acc += pow_rational(x, *e) * BigRational::from_integer(c.clone());
        }
        Ok(acc)
    }

    /// Double-precision value at a nonzero complex point.
    ///
    /// Each term is evaluated as `c * exp(e * log x)`, so the absolute error is
    /// roughly `f64::EPSILON` times the sum of `|c| |x|^e`. Use
    /// [`LaurentPoly::eval_gaussian`] when exactness matters.
    pub fn eval_complex(&self, x: Complex64) -> Result<Complex64> {
        if x == Complex64::zero() {
            return Err(TlError::EvaluationAtZero);
        }
        Ok(self
            .terms()
            .iter()
            .map(|(e, c)| x.powi(*e as i32) * c.to_f64().unwrap_or(f64::NAN))
            .sum())
    }

    /// Sum of `|c| |x|^e`, the scale against which complex results are judged.
    pub fn magnitude_bound(&self, x: Complex64) -> f64 {
        let r = x.norm();
        self.terms()
            .iter()
            .map(|(e, c)| c.to_f64().unwrap_or(f64::INFINITY).abs() * r.powi(*e as i32))
            .sum()
    }

    /// Exact value at a nonzero Gaussian-rational point; the extended
    /// precision counterpart of [`LaurentPoly::eval_complex`].
    pub fn eval_gaussian(&self, x: &Complex<BigRational>) -> Result<Complex<BigRational>> {
        if x.re.is_zero() && x.im.is_zero() {
            return Err(TlError::EvaluationAtZero);
        }
        let inv = {
            let n = &x.re * &x.re + &x.im * &x.im;
            Complex::new(&x.re / &n, -&x.im / &n)
        };
        let mut acc = Complex::new(BigRational::zero(), BigRational::zero());
        for (e, c) in self.terms() {
            let base = if *e < 0 { inv.clone() } else { x.clone() };
            let mut p = Complex::new(BigRational::one(), BigRational::zero());
            for _ in 0..e.unsigned_abs() {
                p *= base.clone();
            }
            let c = BigRational::from_integer(c.clone());
            acc += Complex::new(p.re * &c, p.im * &c);
        }
        Ok(acc)
    }
}

impl RatFunc {
    pub fn eval_rational(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den().eval_rational(x)?;
        if d.is_zero() {
            return Err(TlError::Pole);
        }
        Ok(self.num().eval_rational(x)? / d)
    }

    /// Complex value; a pole is reported when `|den(x)|` is below
    /// [`POLE_TOLERANCE`] relative to the denominator's magnitude bound.
    pub fn eval_complex(&self, x: Complex64) -> Result<Complex64> {
        let d = self.den().eval_complex(x)?;
        if d.norm() <= POLE_TOLERANCE * self.den().magnitude_bound(x) {
            return Err(TlError::Pole);
        }
        Ok(self.num().eval_complex(x)? / d)
    }

    pub fn eval_gaussian(&self, x: &Complex<BigRational>) -> Result<Complex<BigRational>> {
        let d = self.den().eval_gaussian(x)?;
        if d.re.is_zero() && d.im.is_zero() {
            return Err(TlError::Pole);
        }
        let n = self.num().eval_gaussian(x)?;
        let norm = &d.re * &d.re + &d.im * &d.im;
        let dinv = Complex::new(&d.re / &norm, -&d.im / &norm);
        Ok(n * dinv)
    }
}

/// The cyclotomic polynomial `Φ_m(x)`, from `x^m - 1 = ∏_{d | m} Φ_d(x)`.
pub fn cyclotomic(m: usize) -> IntPoly {
    assert!(m >= 1);
    let mut p = &IntPoly::monomial(BigInt::one(), m) - &IntPoly::one();
    for d in 1..m {
        if m % d == 0 {
            p = p.exact_div(&cyclotomic(d)).expect("cyclotomic factors divide x^m - 1");
        }
    }
    p
}

/// Whether `p` vanishes at a primitive `m`-th root of unity.
///
/// Exact: `Φ_m` is irreducible over `Q`, so vanishing at one primitive root
/// is equivalent to `Φ_m | p`, checked by remainder.
pub fn vanishes_at_primitive_root(p: &LaurentPoly, m: usize) -> bool {
    if p.is_zero() {
        return true;
    }
    let (q, _) = p.to_int_poly(1);
    q.rem_monic(&cyclotomic(m)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{delta, quantum_delta};
    use std::f64::consts::PI;

    #[test]
    fn delta_values() {
        let one = BigRational::one();
        assert_eq!(delta().eval_rational(&one).unwrap(), BigRational::from_integer((-2).into()));
        let z = Complex64::from_polar(1.0, PI / 4.0);
        assert!(delta().eval_complex(z).unwrap().norm() < 1e-12);
        let w = Complex64::new(0.3, -1.7);
        assert_eq!(quantum_delta(0).eval_complex(w).unwrap(), Complex64::one());
    }

    #[test]
    fn zero_point_and_pole() {
        assert!(matches!(
            delta().eval_rational(&BigRational::zero()),
            Err(TlError::EvaluationAtZero)
        ));
        let r = RatFunc::new(LaurentPoly::one(), delta()).unwrap();
        let z = Complex64::from_polar(1.0, PI / 4.0);
        assert!(matches!(r.eval_complex(z), Err(TlError::Pole)));
        // A = 1 + i gives A^4 = -4, away from the poles of 1/δ
        let g = Complex::new(BigRational::one(), BigRational::one());
        assert!(r.eval_gaussian(&g).is_ok());
    }

    #[test]
    fn gaussian_matches_double() {
        let d3 = quantum_delta(3);
        let g = Complex::new(
            BigRational::new(3.into(), 5.into()),
            BigRational::new((-4).into(), 7.into()),
        );
        let exact = d3.eval_gaussian(&g).unwrap();
        let approx = d3.eval_complex(Complex64::new(0.6, -4.0 / 7.0)).unwrap();
        assert!((exact.re.to_f64().unwrap() - approx.re).abs() < 1e-9);
        assert!((exact.im.to_f64().unwrap() - approx.im).abs() < 1e-9);
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), IntPoly::from_i64s(&[-1, 1]));
        assert_eq!(cyclotomic(4), IntPoly::from_i64s(&[1, 0, 1]));
        assert_eq!(cyclotomic(12), IntPoly::from_i64s(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn delta_vanishes_at_primitive_eighth_root() {
        // A^2 = ±i kills -A^2 - A^-2
        assert!(vanishes_at_primitive_root(&delta(), 8));
        assert!(!vanishes_at_primitive_root(&delta(), 12));
        // Δ_2 vanishes when A^4 is a primitive cube root of unity
        assert!(vanishes_at_primitive_root(&quantum_delta(2), 12));
    }
}
