//! Exact arithmetic in `Z[A, A^-1]` and its fraction field.

mod eval;
mod laurent;
mod poly;
mod ratfunc;
mod serde_impl;

pub use eval::{cyclotomic, vanishes_at_primitive_root};
pub use laurent::LaurentPoly;
pub use poly::IntPoly;
pub use ratfunc::RatFunc;

/// The loop value `δ = -A^2 - A^-2`.
pub fn delta() -> LaurentPoly {
    LaurentPoly::from_terms([(2, -1), (-2, -1)])
}

/// The quantum dimension `Δ_k = (-1)^k (A^{2(k+1)} - A^{-2(k+1)}) / (A^2 - A^-2)`.
///
/// The quotient is computed by exact division.
pub fn quantum_delta(k: u32) -> LaurentPoly {
    let e = 2 * (k as i64 + 1);
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let num = LaurentPoly::from_terms([(e, sign), (-e, -sign)]);
    let den = LaurentPoly::from_terms([(2, 1), (-2, -1)]);
    num.exact_div(&den).expect("A^2 - A^-2 divides A^2m - A^-2m")
}

/// `Δ_k` as a fraction, convenient for coefficient arithmetic.
pub fn quantum_delta_rf(k: u32) -> RatFunc {
    RatFunc::from_poly(quantum_delta(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn lp(ts: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(ts.iter().copied())
    }

    #[test]
    fn quantum_delta_small_values() {
        assert_eq!(quantum_delta(0), LaurentPoly::one());
        assert_eq!(quantum_delta(1), delta());
        assert_eq!(quantum_delta(2), lp(&[(4, 1), (0, 1), (-4, 1)]));
        assert_eq!(quantum_delta(3), lp(&[(6, -1), (2, -1), (-2, -1), (-6, -1)]));
    }

    #[test]
    fn chebyshev_recurrence() {
        let d = delta();
        let mut prev = LaurentPoly::zero();
        let mut cur = LaurentPoly::one();
        for k in 1..=50u32 {
            let next = &(&d * &cur) - &prev;
            assert_eq!(quantum_delta(k), next, "k = {k}");
            prev = cur;
            cur = next;
        }
    }

    #[test]
    fn quantum_delta_at_one() {
        let one = BigRational::from_integer(BigInt::from(1));
        for k in 0..=50u32 {
            let expected = if k % 2 == 0 { k as i64 + 1 } else { -(k as i64 + 1) };
            assert_eq!(
                quantum_delta(k).eval_rational(&one).unwrap(),
                BigRational::from_integer(expected.into())
            );
        }
    }
}
