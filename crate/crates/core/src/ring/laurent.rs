use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::IntPoly;

/// An element of `Z[A, A^-1]`.
///
/// Terms are kept sorted by exponent with no zero coefficients, so derived
/// equality and hashing are structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i64, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let c = c.into();
        if c.is_zero() {
            LaurentPoly::zero()
        } else {
            LaurentPoly { terms: vec![(e, c)] }
        }
    }

    /// The variable `A`.
    pub fn var() -> Self {
        LaurentPoly::monomial(1, 1)
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs;
    /// repeated exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut v: Vec<(i64, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i64, BigInt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        LaurentPoly { terms: out }
    }

    pub fn terms(&self) -> &[(i64, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn low_exp(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    pub fn high_exp(&self) -> Option<i64> {
        self.terms.last().map(|t| t.0)
    }

    /// Coefficient of the highest power of `A`.
    pub fn lead(&self) -> Option<&BigInt> {
        self.terms.last().map(|t| &t.1)
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        match self.terms.binary_search_by_key(&e, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// True when the polynomial is `c * A^e`.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Multiplies by `A^e`.
    pub fn shift(&self, e: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(x, c)| (x + e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn content(&self) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |g, t| g.gcd(&t.1))
    }

    /// `A ↦ A^-1`.
    pub fn bar(&self) -> Self {
        let mut terms: Vec<_> = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        terms.reverse();
        LaurentPoly { terms }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = LaurentPoly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Ordinary polynomial `self * A^-low`, its exponent stride and `low`.
    ///
    /// The stride `s` is the gcd of the exponent gaps, so the returned
    /// [`IntPoly`] is in the variable `A^s`.
    pub(crate) fn to_int_poly(&self, stride: i64) -> (IntPoly, i64) {
        let Some(low) = self.low_exp() else {
            return (IntPoly::zero(), 0);
        };
        let high = self.high_exp().unwrap();
        let len = ((high - low) / stride) as usize + 1;
        let mut coeffs = vec![BigInt::zero(); len];
        for (e, c) in &self.terms {
            coeffs[((e - low) / stride) as usize] = c.clone();
        }
        (IntPoly::from_coeffs(coeffs), low)
    }

    pub(crate) fn from_int_poly(p: &IntPoly, stride: i64, low: i64) -> Self {
        LaurentPoly {
            terms: p
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (low + i as i64 * stride, c.clone()))
                .collect(),
        }
    }

    /// gcd of the gaps between exponents (0 for a monomial or zero).
    pub(crate) fn exponent_stride(&self) -> i64 {
        let Some(low) = self.low_exp() else { return 0 };
        self.terms.iter().fold(0i64, |g, t| g.gcd(&(t.0 - low)))
    }

    /// Exact quotient in `Z[A, A^-1]`, or `None` when `rhs` does not divide `self`.
    pub fn exact_div(&self, rhs: &LaurentPoly) -> Option<LaurentPoly> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        if rhs.is_monomial() {
            let (re, rc) = &rhs.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (e, c) in &self.terms {
                let (q, r) = c.div_rem(rc);
                if !r.is_zero() {
                    return None;
                }
                terms.push((e - re, q));
            }
            return Some(LaurentPoly { terms });
        }
        let stride = self.exponent_stride().gcd(&rhs.exponent_stride());
        let stride = if stride == 0 { 1 } else { stride };
        let (a, la) = self.to_int_poly(stride);
        let (b, lb) = rhs.to_int_poly(stride);
        // `b` has a nonzero constant term, so it divides `a * A^k` iff it divides `a`.
        let q = a.exact_div(&b)?;
        Some(LaurentPoly::from_int_poly(&q, stride, la - lb))
    }

    /// Greatest common divisor up to units, returned as an ordinary
    /// polynomial (lowest exponent 0) with positive leading coefficient.
    pub fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() && other.is_zero() {
            return LaurentPoly::zero();
        }
        if self.is_zero() || other.is_zero() {
            let x = if self.is_zero() { other } else { self };
            let x = x.shift(-x.low_exp().unwrap());
            return if x.lead().unwrap().is_negative() { -x } else { x };
        }
        if self.is_monomial() || other.is_monomial() {
            return LaurentPoly::constant(self.content().gcd(&other.content()));
        }
        let stride = self.exponent_stride().gcd(&other.exponent_stride());
        let (a, _) = self.to_int_poly(stride);
        let (b, _) = other.to_int_poly(stride);
        LaurentPoly::from_int_poly(&a.gcd(&b), stride, 0)
    }

    /// Substitutes a polynomial for the variable of an [`IntPoly`].
    pub fn compose_int_poly(p: &IntPoly, x: &LaurentPoly) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        for c in p.coeffs().iter().rev() {
            acc = &acc * x;
            acc += &LaurentPoly::constant(c.clone());
        }
        acc
    }

    fn merge(&self, rhs: &LaurentPoly, negate: bool) -> LaurentPoly {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < rhs.terms.len() {
            let ord = match (self.terms.get(i), rhs.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (e, c) = &rhs.terms[j];
                    out.push((*e, if negate { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let (e, a) = &self.terms[i];
                    let b = &rhs.terms[j].1;
                    let c = if negate { a - b } else { a + b };
                    if !c.is_zero() {
                        out.push((*e, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        LaurentPoly { terms: out }
    }

    fn mul_impl(&self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if self.is_monomial() || rhs.is_monomial() {
            let (mono, other) = if self.is_monomial() { (self, rhs) } else { (rhs, self) };
            let (me, mc) = &mono.terms[0];
            return LaurentPoly {
                terms: other.terms.iter().map(|(e, c)| (e + me, c * mc)).collect(),
            };
        }
        let stride = self.exponent_stride().gcd(&rhs.exponent_stride());
        let low = self.low_exp().unwrap() + rhs.low_exp().unwrap();
        let high = self.high_exp().unwrap() + rhs.high_exp().unwrap();
        let mut buf = vec![BigInt::zero(); ((high - low) / stride) as usize + 1];
        let (la, lb) = (self.low_exp().unwrap(), rhs.low_exp().unwrap());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                buf[((ea - la + eb - lb) / stride) as usize] += ca * cb;
            }
        }
        LaurentPoly {
            terms: buf
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (low + i as i64 * stride, c))
                .collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for t in &mut self.terms {
            t.1 = -std::mem::take(&mut t.1);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, true)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_impl(rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = rhs.clone();
            return;
        }
        // In-place fast path when the exponent supports coincide.
        if self.terms.len() == rhs.terms.len()
            && self.terms.iter().zip(&rhs.terms).all(|(a, b)| a.0 == b.0)
        {
            for (a, b) in self.terms.iter_mut().zip(&rhs.terms) {
                a.1 += &b.1;
            }
            self.terms.retain(|t| !t.1.is_zero());
            return;
        }
        *self = self.merge(rhs, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.merge(rhs, true);
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest power first, e.g. `-A^2 - A^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "A")?,
                (1, false) => write!(f, "{mag}*A")?,
                (_, true) => write!(f, "A^{e}")?,
                (_, false) => write!(f, "{mag}*A^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(ts: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(ts.iter().copied())
    }

    #[test]
    fn from_terms_merges_and_drops_zeros() {
        let p = lp(&[(2, 1), (-2, 3), (2, -1), (0, 5)]);
        assert_eq!(p.terms(), &[(-2, BigInt::from(3)), (0, BigInt::from(5))]);
    }

    #[test]
    fn exact_div_laurent() {
        // (A^4 - A^-4) / (A^2 - A^-2) = A^2 + A^-2
        let num = lp(&[(4, 1), (-4, -1)]);
        let den = lp(&[(2, 1), (-2, -1)]);
        assert_eq!(num.exact_div(&den), Some(lp(&[(2, 1), (-2, 1)])));
        assert_eq!(den.exact_div(&num), None);
    }

    #[test]
    fn display_orders_high_to_low() {
        assert_eq!(lp(&[(2, -1), (-2, -1)]).to_string(), "-A^2 - A^-2");
        assert_eq!(lp(&[(0, 3), (1, 1)]).to_string(), "A + 3");
    }

    #[test]
    fn gcd_ignores_monomial_units() {
        let a = lp(&[(3, 1), (5, 1)]); // A^3 (1 + A^2)
        let b = lp(&[(-2, 1), (2, -1)]); // A^-2 (1 - A^4) = A^-2 (1 - A^2)(1 + A^2)
        assert_eq!(a.gcd(&b), lp(&[(0, 1), (2, 1)]));
    }

    fn arb() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i64..6, -9i64..9), 0..5).prop_map(|v| LaurentPoly::from_terms(v))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb(), b in arb(), c in arb()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            prop_assert!(a.terms().iter().all(|t| !t.1.is_zero()));
        }

        #[test]
        fn exact_div_inverts_mul(a in arb(), b in arb()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).exact_div(&b), Some(a));
        }

        #[test]
        fn add_assign_matches_add(a in arb(), b in arb()) {
            let mut x = a.clone();
            x += &b;
            prop_assert_eq!(x, &a + &b);
        }
    }
}
