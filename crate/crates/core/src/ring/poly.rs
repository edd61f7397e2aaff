//! Dense univariate polynomials over the integers.
//!
//! Used for the GCD machinery behind [`super::RatFunc`] and as the coefficient
//! ring for determinants computed in the loop variable `d = δ`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Polynomial `c[0] + c[1] x + ... + c[n] x^n`, stored without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::from_coeffs(vec![c])
    }

    /// `c * x^e`.
    pub fn monomial(c: BigInt, e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = c;
        IntPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        IntPoly::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Largest absolute coefficient.
    pub fn max_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Non-negative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.lead().is_some_and(Signed::is_negative) {
            c = -c;
        }
        if c.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x / &c).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Divides every coefficient by `c`; the caller guarantees exactness.
    pub fn div_scalar_exact(&self, c: &BigInt) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x / c).collect(),
        }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `self(x^k)`.
    pub fn inflate(&self, k: usize) -> IntPoly {
        if k <= 1 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        IntPoly { coeffs }
    }

    /// Exact quotient in `Z[x]`, or `None` if `rhs` does not divide `self`.
    pub fn exact_div(&self, rhs: &IntPoly) -> Option<IntPoly> {
        let rd = rhs.degree()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let sd = self.degree().unwrap();
        if sd < rd {
            return None;
        }
        if rd == 0 {
            let c = &rhs.coeffs[0];
            let mut out = Vec::with_capacity(self.coeffs.len());
            for x in &self.coeffs {
                let (q, r) = x.div_rem(c);
                if !r.is_zero() {
                    return None;
                }
                out.push(q);
            }
            return Some(IntPoly { coeffs: out });
        }
        let lead = rhs.lead().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); sd - rd + 1];
        for i in (0..=sd - rd).rev() {
            let top = &rem[i + rd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in rhs.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    rem[i + j] -= &q * c;
                }
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::from_coeffs(quot))
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(&self, modulus: &IntPoly) -> IntPoly {
        let md = modulus.degree().expect("modulus must be nonzero");
        assert!(modulus.lead().unwrap().is_one(), "modulus must be monic");
        let mut rem = self.coeffs.clone();
        while rem.len() > md {
            let top = rem.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = rem.len() - md;
            for (j, c) in modulus.coeffs[..md].iter().enumerate() {
                if !c.is_zero() {
                    rem[shift + j] -= &top * c;
                }
            }
        }
        IntPoly::from_coeffs(rem)
    }

    /// Pseudo-remainder: `lead(rhs)^e * self mod rhs` for some `e >= 0`.
    fn pseudo_rem(&self, rhs: &IntPoly) -> IntPoly {
        let rd = rhs.degree().expect("pseudo-remainder by zero");
        let lead = rhs.lead().unwrap();
        let mut rem = self.coeffs.clone();
        while rem.len() > rd {
            let top = rem.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = rem.len() - rd;
            for c in rem.iter_mut() {
                *c *= lead;
            }
            for (j, c) in rhs.coeffs[..rd].iter().enumerate() {
                if !c.is_zero() {
                    rem[shift + j] -= &top * c;
                }
            }
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        IntPoly::from_coeffs(rem)
    }

    /// Greatest common divisor with positive leading coefficient.
    ///
    /// Tries the heuristic (evaluation/interpolation) GCD first and falls
    /// back to the primitive polynomial remainder sequence.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return normalize_sign(other.clone());
        }
        if other.is_zero() {
            return normalize_sign(self.clone());
        }
        let (da, db) = (self.degree().unwrap(), other.degree().unwrap());
        if da == 0 || db == 0 {
            return IntPoly::constant(self.content().gcd(&other.content()));
        }
        heuristic_gcd(self, other).unwrap_or_else(|| self.gcd_prs(other))
    }

    /// GCD by the primitive polynomial remainder sequence.
    pub fn gcd_prs(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return normalize_sign(other.clone());
        }
        if other.is_zero() {
            return normalize_sign(self.clone());
        }
        let c = self.content().gcd(&other.content());
        let (mut p, mut q) = (self.primitive_part(), other.primitive_part());
        if p.degree() < q.degree() {
            std::mem::swap(&mut p, &mut q);
        }
        while !q.is_zero() {
            let r = p.pseudo_rem(&q);
            p = q;
            q = r.primitive_part();
        }
        p.primitive_part().scale(&c)
    }
}

fn normalize_sign(p: IntPoly) -> IntPoly {
    if p.lead().is_some_and(Signed::is_negative) {
        -p
    } else {
        p
    }
}

/// Symmetric base-`xi` digits of `h`, read as polynomial coefficients.
fn xi_adic(mut h: BigInt, xi: &BigInt) -> IntPoly {
    let half = xi >> 1usize;
    let mut coeffs = Vec::new();
    while !h.is_zero() {
        let mut r = h.mod_floor(xi);
        if r > half {
            r -= xi;
        }
        h = (h - &r) / xi;
        coeffs.push(r);
    }
    IntPoly::from_coeffs(coeffs)
}

fn heuristic_gcd(a: &IntPoly, b: &IntPoly) -> Option<IntPoly> {
    let (ca, cb) = (a.content(), b.content());
    let c = ca.gcd(&cb);
    let a = a.div_scalar_exact(&ca);
    let b = b.div_scalar_exact(&cb);
    let max_deg = a.degree()?.max(b.degree()?);
    let mut xi: BigInt = a.max_norm().min(b.max_norm()) * 2 + 29;
    for _ in 0..6 {
        if xi.bits() as usize * (max_deg + 1) > 400_000 {
            return None;
        }
        let g = a.eval(&xi).gcd(&b.eval(&xi));
        if !g.is_zero() {
            let cand = xi_adic(g, &xi).primitive_part();
            if !cand.is_zero() && a.exact_div(&cand).is_some() && b.exact_div(&cand).is_some() {
                return Some(cand.scale(&c));
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -self.clone()
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{e}")?,
                (_, false) => write!(f, "{mag}*x^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> IntPoly {
        IntPoly::from_i64s(cs)
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x - 1)(x + 2) and (x - 1)(x^2 + 1)
        let a = &p(&[-1, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[1, 0, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(a.gcd_prs(&b), p(&[-1, 1]));
    }

    #[test]
    fn gcd_keeps_integer_content() {
        let a = p(&[6, 6]);
        let b = p(&[4, 0, -4]);
        assert_eq!(a.gcd(&b), p(&[2, 2]));
    }

    #[test]
    fn exact_div_detects_remainder() {
        assert_eq!(p(&[-1, 0, 1]).exact_div(&p(&[1, 1])), Some(p(&[-1, 1])));
        assert_eq!(p(&[1, 0, 1]).exact_div(&p(&[1, 1])), None);
        assert_eq!(p(&[3, 3]).exact_div(&p(&[2])), None);
    }

    #[test]
    fn rem_monic_cyclotomic() {
        // x^4 mod (x^2 + 1) = 1
        assert_eq!(p(&[0, 0, 0, 0, 1]).rem_monic(&p(&[1, 0, 1])), p(&[1]));
    }

    fn arb_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-20i64..20, 0..6).prop_map(|v| IntPoly::from_i64s(&v))
    }

    proptest! {
        #[test]
        fn heuristic_gcd_agrees_with_prs(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            let x = &a * &c;
            let y = &b * &c;
            let g = x.gcd(&y);
            prop_assert_eq!(&g, &x.gcd_prs(&y));
            if !g.is_zero() {
                prop_assert!(x.exact_div(&g).is_some());
                prop_assert!(y.exact_div(&g).is_some());
            }
        }
    }
}
