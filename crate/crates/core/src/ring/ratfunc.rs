use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::Signed;

use super::laurent::LaurentPoly;
use crate::error::{Result, TlError};

/// A reduced quotient of Laurent polynomials, i.e. an element of the
/// fraction field of `Z[A, A^-1]`.
///
/// Canonical form: `den` is an ordinary polynomial with nonzero constant term
/// and positive leading coefficient, and `gcd(num, den)` is a unit. Two
/// canonical fractions are equal iff they are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        RatFunc {
            num,
            den: LaurentPoly::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        RatFunc::from_poly(LaurentPoly::constant(c))
    }

    /// Canonicalizes `num / den`.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(TlError::ZeroDenominator);
        }
        Ok(RatFunc::reduce(num, den))
    }

    /// Like [`RatFunc::new`] for callers that already know `den != 0`.
    pub(crate) fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc::zero();
        }
        let low = den.low_exp().unwrap();
        let (mut num, mut den) = if low != 0 {
            (num.shift(-low), den.shift(-low))
        } else {
            (num, den)
        };
        if !den.is_one() {
            let g = if den.is_monomial() {
                LaurentPoly::constant(num.content().gcd(den.lead().unwrap()))
            } else {
                num.gcd(&den)
            };
            if !g.is_one() {
                num = num.exact_div(&g).expect("gcd divides numerator");
                den = den.exact_div(&g).expect("gcd divides denominator");
            }
            if den.lead().unwrap().is_negative() {
                num = -num;
                den = -den;
            }
        }
        RatFunc { num, den }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The numerator when the denominator is trivial.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, k: u32) -> RatFunc {
        RatFunc {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        if rhs.is_zero() {
            return Err(TlError::ZeroDenominator);
        }
        Ok(RatFunc::reduce(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> RatFunc {
        RatFunc::reduce(&self.num * p, self.den.clone())
    }

    /// `a/b = c/d` iff `a d = c b`.
    pub fn cross_eq(&self, other: &RatFunc) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return RatFunc::from_poly(&self.num + &rhs.num);
            }
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a = rhs.den.exact_div(&g).unwrap();
        let b = self.den.exact_div(&g).unwrap();
        RatFunc::reduce(&self.num * &a + &rhs.num * &b, &self.den * &a)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        RatFunc::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero; use [`RatFunc::checked_div`] for a `Result`.
impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::quantum_delta;
    use proptest::prelude::*;

    fn lp(ts: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(ts.iter().copied())
    }

    #[test]
    fn common_factor_cancels() {
        let d1 = quantum_delta(1);
        let d2 = quantum_delta(2);
        let r = RatFunc::new(&d2 * &d1, d1).unwrap();
        assert_eq!(r, RatFunc::from_poly(d2));
    }

    #[test]
    fn quotient_reduces_to_polynomial() {
        let r = RatFunc::new(lp(&[(4, 1), (-4, -1)]), lp(&[(2, 1), (-2, -1)])).unwrap();
        assert_eq!(r, RatFunc::from_poly(lp(&[(2, 1), (-2, 1)])));
    }

    #[test]
    fn constant_over_monomial_normalizes() {
        let r = RatFunc::new(LaurentPoly::one(), lp(&[(2, 2)])).unwrap();
        assert_eq!(r.den(), &LaurentPoly::constant(2));
        assert_eq!(r.num(), &lp(&[(-2, 1)]));
        let neg = RatFunc::new(LaurentPoly::one(), lp(&[(0, -1), (1, 1)])).unwrap();
        assert!(neg.den().lead().unwrap() > &0.into());
        assert_eq!(neg.den().low_exp(), Some(0));
    }

    #[test]
    fn zero_denominator_is_an_error() {
        assert!(matches!(
            RatFunc::new(LaurentPoly::one(), LaurentPoly::zero()),
            Err(TlError::ZeroDenominator)
        ));
    }

    fn arb() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i64..4, -5i64..5), 0..4).prop_map(|v| LaurentPoly::from_terms(v))
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent_and_cancels(a in arb(), b in arb(), c in arb()) {
            prop_assume!(!b.is_zero() && !c.is_zero());
            let r = RatFunc::new(a.clone(), b.clone()).unwrap();
            prop_assert_eq!(&RatFunc::new(r.num().clone(), r.den().clone()).unwrap(), &r);
            prop_assert_eq!(&RatFunc::new(&a * &c, &b * &c).unwrap(), &r);
            prop_assert!(r.den().low_exp() == Some(0));
            prop_assert!(r.den().lead().unwrap() > &0.into());
        }

        #[test]
        fn equality_matches_cross_multiplication(a in arb(), b in arb(), c in arb(), d in arb()) {
            prop_assume!(!b.is_zero() && !d.is_zero());
            let x = RatFunc::new(a, b).unwrap();
            let y = RatFunc::new(c, d).unwrap();
            prop_assert_eq!(x == y, x.cross_eq(&y));
        }

        #[test]
        fn field_operations(a in arb(), b in arb(), c in arb(), d in arb()) {
            prop_assume!(!b.is_zero() && !d.is_zero());
            let x = RatFunc::new(a, b).unwrap();
            let y = RatFunc::new(c, d).unwrap();
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !y.is_zero() {
                prop_assert_eq!(&(&x * &y) / &y, x.clone());
            }
        }
    }
}
