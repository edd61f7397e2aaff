//! Exact determinants of monomial matrices `[x^{e_ij}]` over `Z[x]`, by
//! evaluation and elimination modulo word-sized primes, interpolation, and
//! Chinese remaindering against a rigorous coefficient bound.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::ring::IntPoly;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for b in BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes below `2^62`.
fn primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c = (1u64 << 62) - 1;
    while out.len() < count {
        if is_prime_u64(c) {
            out.push(c);
        }
        c -= 2;
    }
    out
}

/// `b * w mod p` with the precomputed `w' = floor(w 2^64 / p)`; `p < 2^63`.
#[inline]
fn shoup(b: u64, w: u64, w_pre: u64, p: u64) -> u64 {
    let q = ((w_pre as u128 * b as u128) >> 64) as u64;
    let r = w.wrapping_mul(b).wrapping_sub(q.wrapping_mul(p));
    if r >= p {
        r - p
    } else {
        r
    }
}

/// Determinant of a row-major `n × n` matrix over `Z/p`, destroying it.
fn det_mod(a: &mut [u64], n: usize, p: u64) -> u64 {
    let mut det = 1u64;
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| a[r * n + c] != 0) else {
            return 0;
        };
        if r != c {
            for j in c..n {
                a.swap(r * n + j, c * n + j);
            }
            det = p - det;
        }
        let pivot = a[c * n + c];
        det = mul_mod(det, pivot, p);
        let inv = inv_mod(pivot, p);
        let (upper, lower) = a.split_at_mut((c + 1) * n);
        let prow = &upper[c * n..(c + 1) * n];
        for row in lower.chunks_exact_mut(n) {
            if row[c] == 0 {
                continue;
            }
            let f = p - mul_mod(row[c], inv, p);
            let f_pre = (((f as u128) << 64) / p as u128) as u64;
            for j in c + 1..n {
                let t = row[j] + shoup(prow[j], f, f_pre, p);
                row[j] = if t >= p { t - p } else { t };
            }
        }
    }
    det
}

/// Coefficients of the polynomial through `(i, values[i])`, `i = 0..len`.
fn interpolate_mod(values: &[u64], p: u64) -> Vec<u64> {
    let m = values.len();
    let mut dd = values.to_vec();
    for level in 1..m {
        let inv = inv_mod(level as u64, p);
        for i in (level..m).rev() {
            dd[i] = mul_mod((dd[i] + p - dd[i - 1]) % p, inv, p);
        }
    }
    // Horner on the Newton form: c(x) = dd[m-1]; c = c (x - i) + dd[i].
    let mut coeffs = vec![0u64; m];
    coeffs[0] = dd[m - 1];
    let mut len = 1;
    for i in (0..m - 1).rev() {
        let shift = i as u64 % p;
        for j in (0..len).rev() {
            let cj = coeffs[j];
            coeffs[j + 1] = (coeffs[j + 1] + cj) % p;
            coeffs[j] = mul_mod(cj, p - shift, p);
        }
        coeffs[0] = (coeffs[0] + dd[i]) % p;
        len += 1;
    }
    coeffs
}

/// `det [x^{e_ij}]` as an integer polynomial in `x`.
pub fn monomial_det(exps: &[Vec<usize>]) -> IntPoly {
    let n = exps.len();
    if n == 0 {
        return IntPoly::one();
    }
    assert!(exps.iter().all(|r| r.len() == n), "square matrix");
    let shifts: Vec<usize> = exps.iter().map(|r| *r.iter().min().unwrap()).collect();
    let reduced: Vec<Vec<usize>> = exps
        .iter()
        .zip(&shifts)
        .map(|(r, s)| r.iter().map(|e| e - s).collect())
        .collect();
    let degree: usize = reduced.iter().map(|r| *r.iter().max().unwrap()).sum();
    let max_e = reduced.iter().flatten().copied().max().unwrap();

    // Each coefficient is a signed count of permutations, so |c| <= n!.
    let bound_bits: f64 = (2..=n).map(|i| (i as f64).log2()).sum::<f64>() + 2.0;
    let count = (bound_bits / 61.0).ceil() as usize + 1;

    let mut acc: Vec<BigInt> = vec![BigInt::zero(); degree + 1];
    let mut modulus = BigInt::one();
    let mut mat = vec![0u64; n * n];
    let mut pows = vec![0u64; max_e + 1];
    for p in primes(count) {
        let values: Vec<u64> = (0..=degree as u64)
            .map(|t| {
                pows[0] = 1;
                for e in 1..=max_e {
                    pows[e] = mul_mod(pows[e - 1], t, p);
                }
                for (i, row) in reduced.iter().enumerate() {
                    for (j, &e) in row.iter().enumerate() {
                        mat[i * n + j] = pows[e];
                    }
                }
                det_mod(&mut mat, n, p)
            })
            .collect();
        let residues = interpolate_mod(&values, p);
        let m_mod_p = (&modulus % BigInt::from(p)).to_u64_digits().1.first().copied().unwrap_or(0);
        let m_inv = inv_mod(m_mod_p, p);
        for (x, &r) in acc.iter_mut().zip(&residues) {
            let x_mod_p = (&*x % BigInt::from(p)).to_u64_digits().1.first().copied().unwrap_or(0);
            let t = mul_mod((r + p - x_mod_p) % p, m_inv, p);
            *x += &modulus * BigInt::from(t);
        }
        modulus *= BigInt::from(p);
    }
    let half = &modulus >> 1;
    let coeffs: Vec<BigInt> = acc
        .into_iter()
        .map(|x| if x > half { x - &modulus } else { x })
        .collect();
    let mut out = vec![BigInt::zero(); shifts.iter().sum::<usize>()];
    out.extend(coeffs);
    IntPoly::from_coeffs(out)
}
