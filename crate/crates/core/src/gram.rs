//! Gram matrices of the trace pairing, their determinants, the closed-form
//! product over quantum dimensions, and root-of-unity degeneracy scans.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bases::{d_element, enumerate_sequences, pair_closed_form};
use crate::diagram::{closure_loops, compose_unchecked, enumerate_diagrams, mirror_diagram};
use crate::dyck::{binomial, catalan, downstep_census};
use crate::error::{Result, TlError};
use crate::linalg::bareiss_det;
use crate::modular::monomial_det;
use crate::ring::{delta, quantum_delta, vanishes_at_primitive_root, LaurentPoly, RatFunc};
use crate::tlcat::{tl_pair, Convention};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    Diagram,
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    Orthogonal,
    Closed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum GramMatrix {
    Diagram(Vec<Vec<LaurentPoly>>),
    D(Vec<Vec<RatFunc>>),
}

impl GramMatrix {
    pub fn size(&self) -> usize {
        match self {
            GramMatrix::Diagram(m) => m.len(),
            GramMatrix::D(m) => m.len(),
        }
    }

    /// Entries as fractions, whatever the basis.
    pub fn to_ratfunc(&self) -> Vec<Vec<RatFunc>> {
        match self {
            GramMatrix::Diagram(m) => m
                .iter()
                .map(|r| r.iter().map(|p| RatFunc::from_poly(p.clone())).collect())
                .collect(),
            GramMatrix::D(m) => m.clone(),
        }
    }
}

fn extra_loops(convention: Convention) -> usize {
    match convention {
        Convention::Loops => 0,
        Convention::LoopsPlusOne => 1,
    }
}

/// Loop counts of the pairing pictures `⟨b_r, b_c⟩` over the diagram basis.
pub fn diagram_loop_matrix(n: usize) -> Vec<Vec<usize>> {
    let basis = enumerate_diagrams(n);
    let mirrored: Vec<_> = basis.iter().map(mirror_diagram).collect();
    basis
        .iter()
        .map(|a| {
            mirrored
                .iter()
                .map(|b| {
                    let (c, l) = compose_unchecked(a, b);
                    l + closure_loops(&c).expect("square")
                })
                .collect()
        })
        .collect()
}

pub fn gram_matrix(n: usize, basis: Basis, convention: Convention) -> Result<GramMatrix> {
    match basis {
        Basis::Diagram => {
            let d = delta();
            let extra = extra_loops(convention) as u32;
            Ok(GramMatrix::Diagram(
                diagram_loop_matrix(n)
                    .into_iter()
                    .map(|row| row.into_iter().map(|l| d.pow(l as u32 + extra)).collect())
                    .collect(),
            ))
        }
        Basis::D => {
            let ds = enumerate_sequences(n)
                .iter()
                .map(d_element)
                .collect::<Result<Vec<_>>>()?;
            let mut m = vec![vec![RatFunc::zero(); ds.len()]; ds.len()];
            for i in 0..ds.len() {
                for j in i..ds.len() {
                    let v = tl_pair(&ds[i], &ds[j], convention)?;
                    m[j][i] = v.clone();
                    m[i][j] = v;
                }
            }
            Ok(GramMatrix::D(m))
        }
    }
}

/// Exact determinant by fraction-free elimination.
pub fn det_exact(m: &GramMatrix) -> Result<RatFunc> {
    match m {
        GramMatrix::Diagram(rows) => Ok(RatFunc::from_poly(bareiss_det(rows)?)),
        GramMatrix::D(rows) => bareiss_det(rows),
    }
}

/// Determinant of the diagram-basis Gram matrix. Entries are powers of `δ`,
/// so the determinant is computed in `Z[d]` (see [`monomial_det`]) and
/// `d = -A^2 - A^-2` is substituted last.
pub fn det_diagram_basis(n: usize, convention: Convention) -> Result<LaurentPoly> {
    let extra = extra_loops(convention);
    let exps: Vec<Vec<usize>> = diagram_loop_matrix(n)
        .into_iter()
        .map(|row| row.into_iter().map(|l| l + extra).collect())
        .collect();
    Ok(LaurentPoly::compose_int_poly(&monomial_det(&exps), &delta()))
}

/// `α_k = C(2n, n-k) - C(2n, n-k-1)`.
pub fn alpha_closed(n: usize, k: usize) -> u128 {
    assert!(1 <= k && k <= n, "1 <= k <= n");
    binomial(2 * n, n - k) - if k < n { binomial(2 * n, n - k - 1) } else { 0 }
}

/// `α_k` as the number of level-`k` down-steps over all Dyck paths of length `2n`.
pub fn alpha_census(n: usize, k: usize) -> u128 {
    downstep_census(n, k) as u128
}

/// Exponents `e_k = α_k - α_{k+1}` of `det = ∏ Δ_k^{e_k}` (loop convention).
/// From `n = 8` on, `e_1` is negative.
pub fn telescoped_exponents(n: usize) -> Vec<i64> {
    (1..=n)
        .map(|k| {
            let next = if k < n { alpha_closed(n, k + 1) } else { 0 };
            alpha_closed(n, k) as i64 - next as i64
        })
        .collect()
}

/// `∏_k (Δ_k / Δ_{k-1})^{α_k}` in telescoped polynomial form; under
/// [`Convention::LoopsPlusOne`] an extra factor `Δ_1^{C_n}`.
pub fn det_closed_form(n: usize, convention: Convention) -> LaurentPoly {
    let mut num = LaurentPoly::one();
    let mut den = LaurentPoly::one();
    for (k, e) in telescoped_exponents(n).into_iter().enumerate() {
        let f = quantum_delta(k as u32 + 1).pow(e.unsigned_abs() as u32);
        if e >= 0 {
            num = &num * &f;
        } else {
            den = &den * &f;
        }
    }
    let mut acc = num.exact_div(&den).expect("closed form is a polynomial");
    if convention == Convention::LoopsPlusOne {
        acc = &acc * &quantum_delta(1).pow(catalan(n) as u32);
    }
    acc
}

/// The product of the diagonal `D`-basis pairings.
pub fn det_via_orthogonal(n: usize) -> Result<RatFunc> {
    let mut acc = RatFunc::one();
    for a in enumerate_sequences(n) {
        acc = &acc * &pair_closed_form(a.entries(), a.entries())?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum DetValue {
    Poly(LaurentPoly),
    Frac(RatFunc),
}

impl From<RatFunc> for DetValue {
    fn from(r: RatFunc) -> Self {
        match r.as_poly() {
            Some(p) => DetValue::Poly(p.clone()),
            None => DetValue::Frac(r),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GramReport {
    pub n: usize,
    pub basis: Basis,
    pub convention: Convention,
    pub det: DetValue,
    pub method: Method,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Computes `det(G_n)` by the chosen method and compares it with the
/// closed form under the same convention.
pub fn gram_report(n: usize, basis: Basis, convention: Convention, method: Method) -> Result<GramReport> {
    let det: RatFunc = match method {
        Method::Exact => match basis {
            Basis::Diagram => RatFunc::from_poly(det_diagram_basis(n, convention)?),
            Basis::D => det_exact(&gram_matrix(n, basis, convention)?)?,
        },
        Method::Orthogonal => {
            let base = det_via_orthogonal(n)?;
            match convention {
                Convention::Loops => base,
                Convention::LoopsPlusOne => &base * &RatFunc::from_poly(delta().pow(catalan(n) as u32)),
            }
        }
        Method::Closed => RatFunc::from_poly(det_closed_form(n, convention)),
    };
    let matches = det == RatFunc::from_poly(det_closed_form(n, convention));
    Ok(GramReport {
        n,
        basis,
        convention,
        det: det.into(),
        method,
        matches,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootStatus {
    Zero,
    Nonzero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootScanEntry {
    pub r: usize,
    pub status: RootStatus,
    pub witness: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootScanReport {
    pub n: usize,
    pub entries: Vec<RootScanEntry>,
}

/// Threshold on `|det(ζ)|` for the floating-point cross-check.
pub const ROOT_SCAN_TOLERANCE: f64 = 1e-8;

/// Threshold below which a floating-point `Δ_k(ζ)` counts as a zero.
const FACTOR_ZERO: f64 = 1e-12;

/// Order of vanishing of `det(G_n)` at a primitive `4r`-th root of unity.
/// Each `Δ_k` has a simple zero there exactly when `r | k + 1`.
pub fn vanishing_order(n: usize, r: usize) -> i64 {
    telescoped_exponents(n)
        .into_iter()
        .enumerate()
        .filter(|(k, _)| (k + 2) % r == 0)
        .map(|(_, e)| e)
        .sum()
}

/// `|det(ζ)|` at `ζ = e^{iπ/(2r)}`, evaluated factor by factor from the
/// closed form in floating point; expanding the product first would lose all
/// precision. Factors that vanish numerically contribute to an order count
/// instead of being raised to a power, so negative exponents stay finite.
pub fn det_modulus_at_root(n: usize, r: usize) -> f64 {
    let z = Complex64::from_polar(1.0, PI / (2.0 * r as f64));
    let mut order = 0i64;
    let mut log_mod = 0.0f64;
    for (k, e) in telescoped_exponents(n).into_iter().enumerate() {
        let v = quantum_delta(k as u32 + 1).eval_complex(z).expect("nonzero point").norm();
        if v < FACTOR_ZERO {
            order += e;
        } else {
            log_mod += e as f64 * v.ln();
        }
    }
    match order.cmp(&0) {
        std::cmp::Ordering::Greater => 0.0,
        std::cmp::Ordering::Less => f64::INFINITY,
        std::cmp::Ordering::Equal => log_mod.exp(),
    }
}

/// For `r = 2..=r_max`, whether `det(G_n)` vanishes at a primitive `4r`-th
/// root of unity. Status comes from the order of vanishing; while every
/// `e_k` is positive this is the criterion `r | k + 1` for some `k <= n`.
/// The witness is the least such `k` with `e_k > 0`. Cross-checked exactly
/// (cyclotomic remainder of the expanded determinant) and numerically
/// (tolerance [`ROOT_SCAN_TOLERANCE`]).
pub fn root_scan(n: usize, r_max: usize) -> Result<RootScanReport> {
    if n == 0 || r_max < 2 {
        return Err(TlError::InvalidIndex {
            index: r_max,
            range: "n >= 1 and r_max >= 2".into(),
        });
    }
    let det = det_closed_form(n, Convention::Loops);
    let mut entries = Vec::new();
    for r in 2..=r_max {
        let zero = vanishing_order(n, r) > 0;
        let exps = telescoped_exponents(n);
        let witness = if zero {
            (1..=n).find(|&k| (k + 1) % r == 0 && exps[k - 1] > 0)
        } else {
            None
        };
        let status = if zero { RootStatus::Zero } else { RootStatus::Nonzero };
        let exact = vanishes_at_primitive_root(&det, 4 * r);
        let numeric = det_modulus_at_root(n, r) < ROOT_SCAN_TOLERANCE;
        if exact != zero || numeric != zero {
            return Err(TlError::Verification(format!(
                "root scan disagreement at n = {n}, r = {r}: order criterion {zero}, cyclotomic {exact}, numeric {numeric}"
            )));
        }
        entries.push(RootScanEntry { r, status, witness });
    }
    Ok(RootScanReport { n, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dpow(k: u32) -> LaurentPoly {
        delta().pow(k)
    }

    #[test]
    fn monomial_route_matches_elimination_in_d() {
        use crate::ring::IntPoly;
        use num_bigint::BigInt;
        for n in 1..=5 {
            let rows: Vec<Vec<IntPoly>> = diagram_loop_matrix(n)
                .into_iter()
                .map(|r| r.into_iter().map(|l| IntPoly::monomial(BigInt::from(1), l)).collect())
                .collect();
            let in_d = bareiss_det(&rows).unwrap();
            assert_eq!(
                det_diagram_basis(n, Convention::Loops).unwrap(),
                LaurentPoly::compose_int_poly(&in_d, &delta()),
                "n = {n}"
            );
        }
    }

    #[test]
    fn small_gram_matrices() {
        let g1 = gram_matrix(1, Basis::Diagram, Convention::Loops).unwrap();
        assert_eq!(g1, GramMatrix::Diagram(vec![vec![delta()]]));
        let g2 = gram_matrix(2, Basis::Diagram, Convention::Loops).unwrap();
        assert_eq!(
            g2,
            GramMatrix::Diagram(vec![vec![dpow(2), dpow(1)], vec![dpow(1), dpow(2)]])
        );
        let gd = gram_matrix(2, Basis::D, Convention::Loops).unwrap();
        let z = RatFunc::zero();
        assert_eq!(
            gd,
            GramMatrix::D(vec![
                vec![RatFunc::from_poly(quantum_delta(2)), z.clone()],
                vec![z, RatFunc::from_poly(dpow(2))]
            ])
        );
    }

    #[test]
    fn loop_matrix_entries_in_range() {
        for n in 1..=5 {
            for row in diagram_loop_matrix(n) {
                assert!(row.iter().all(|&l| (1..=n).contains(&l)));
            }
        }
    }

    #[test]
    fn determinants_small() {
        let g2 = gram_matrix(2, Basis::Diagram, Convention::Loops).unwrap();
        let expected = &dpow(4) - &dpow(2);
        assert_eq!(det_exact(&g2).unwrap(), RatFunc::from_poly(expected.clone()));
        assert_eq!(det_diagram_basis(2, Convention::Loops).unwrap(), expected);
        let gd = gram_matrix(2, Basis::D, Convention::Loops).unwrap();
        assert_eq!(
            det_exact(&gd).unwrap(),
            RatFunc::from_poly(&dpow(2) * &quantum_delta(2))
        );
    }

    #[test]
    fn alphas() {
        assert_eq!((alpha_closed(2, 1), alpha_closed(2, 2)), (3, 1));
        assert_eq!((1..=3).map(|k| alpha_closed(3, k)).collect::<Vec<_>>(), vec![9, 5, 1]);
        assert_eq!(alpha_closed(1, 1), 1);
        for n in 1..=10 {
            for k in 1..=n {
                assert_eq!(alpha_closed(n, k), alpha_census(n, k));
            }
            assert_eq!(alpha_closed(n, n), 1);
        }
        assert_eq!(telescoped_exponents(3), vec![4, 4, 1]);
        assert_eq!(telescoped_exponents(5), vec![15, 40, 26, 8, 1]);
        for n in 1..=6 {
            assert!(telescoped_exponents(n).iter().all(|&e| e > 0));
        }
        assert_eq!(telescoped_exponents(7)[0], 0);
        assert!(telescoped_exponents(8)[0] < 0);
        let sum: i64 = (1..=9).map(|n| telescoped_exponents(n).iter().sum::<i64>()).sum();
        assert_eq!(sum, (1..=9).map(|n| alpha_closed(n, 1) as i64).sum::<i64>());
    }

    #[test]
    fn divisibility_criterion_matches_order_for_small_n() {
        for n in 1..=7 {
            for r in 2..=20 {
                let criterion = (1..=n).any(|k| (k + 1) % r == 0);
                assert_eq!(vanishing_order(n, r) > 0, criterion, "n = {n}, r = {r}");
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(det_closed_form(1, Convention::Loops), delta());
        assert_eq!(det_closed_form(1, Convention::LoopsPlusOne), dpow(2));
        assert_eq!(det_closed_form(2, Convention::Loops), &dpow(4) - &dpow(2));
        let d = |k| quantum_delta(k);
        assert_eq!(
            det_closed_form(3, Convention::Loops),
            &(&d(1).pow(4) * &d(2).pow(4)) * &d(3)
        );
    }

    #[test]
    fn main_equivalence_small() {
        for n in 1..=4 {
            let closed = det_closed_form(n, Convention::Loops);
            assert_eq!(det_diagram_basis(n, Convention::Loops).unwrap(), closed, "n = {n}");
            assert_eq!(det_via_orthogonal(n).unwrap(), RatFunc::from_poly(closed.clone()));
            let bridge = det_diagram_basis(n, Convention::LoopsPlusOne).unwrap();
            assert_eq!(bridge, &closed * &dpow(catalan(n) as u32));
            assert_eq!(bridge, det_closed_form(n, Convention::LoopsPlusOne));
        }
        for n in 1..=3 {
            let gd = gram_matrix(n, Basis::D, Convention::Loops).unwrap();
            assert_eq!(det_exact(&gd).unwrap(), RatFunc::from_poly(det_closed_form(n, Convention::Loops)));
        }
    }

    #[test]
    fn report_shape() {
        let r = gram_report(2, Basis::Diagram, Convention::Loops, Method::Exact).unwrap();
        assert!(r.matches);
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["match"], true);
        assert_eq!(j["basis"], "diagram");
        assert_eq!(j["det"]["var"], "A");
    }

    #[test]
    fn root_scan_examples() {
        let rep = root_scan(2, 4).unwrap();
        let status: Vec<(usize, RootStatus, Option<usize>)> =
            rep.entries.iter().map(|e| (e.r, e.status, e.witness)).collect();
        assert_eq!(
            status,
            vec![
                (2, RootStatus::Zero, Some(1)),
                (3, RootStatus::Zero, Some(2)),
                (4, RootStatus::Nonzero, None)
            ]
        );
        for n in 1..=4 {
            let rep = root_scan(n, 12).unwrap();
            assert_eq!(rep.entries.iter().find(|e| e.r == n + 1).unwrap().status, RootStatus::Zero);
        }
        assert!(root_scan(2, 1).is_err());
    }
}
