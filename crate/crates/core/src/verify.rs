//! The end-to-end checks, one per acceptance criterion, runnable from the
//! command line or from the test suite.

use std::time::Instant;

use serde::Serialize;

use crate::bases::{
    b_element, change_of_basis, d_element, enumerate_sequences, expand_in_d_basis, pair_closed_form,
    reconstruct,
};
use crate::diagram::{enumerate_diagrams, PlanarDiagram};
use crate::dyck::{bijection_check, catalan};
use crate::error::Result;
use crate::gram::{alpha_census, alpha_closed, det_closed_form, det_diagram_basis, det_via_orthogonal, root_scan, RootStatus};
use crate::jw::jw_verify;
use crate::ortho::{generic_points, identity_deviation, nd_gram_numeric, nd_step_check, valley_identity, valleys};
use crate::recoupling::{admissible, bubble_residual, fusion_residual, theta};
use crate::ring::{delta, quantum_delta_rf, RatFunc};
use crate::tlcat::{tl_pair, Convention, TLElement};

/// Seed for the generic points used by the orthonormality check.
pub const ORTHO_SEED: u64 = 20_100_918;

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Upper bound applied to every size parameter.
    pub nmax: usize,
    /// Include the 132 × 132 determinant.
    pub long: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { nmax: 10, long: false }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub millis: u128,
}

pub const CRITERIA: [&str; 11] = [
    "dimension",
    "jones-wenzl",
    "recoupling",
    "caterpillar pairing",
    "triangular change of basis",
    "gram determinant",
    "exponents",
    "dyck bijection",
    "root-of-unity degeneracy",
    "normalized basis",
    "expansion of generators",
];

type Check = Result<(bool, String)>;

fn fail_on<T: std::fmt::Display>(bad: Option<T>, ok: String) -> (bool, String) {
    match bad {
        Some(b) => (false, format!("failed at {b}")),
        None => (true, ok),
    }
}

fn dimension(o: &VerifyOptions) -> Check {
    let top = o.nmax.min(10);
    let bad = (1..=top).find(|&n| {
        let c = catalan(n) as usize;
        enumerate_diagrams(n).len() != c || enumerate_sequences(n).len() != c
    });
    Ok(fail_on(bad.map(|n| format!("n = {n}")), format!("C_n for n = 1..{top}")))
}

fn jones_wenzl(o: &VerifyOptions) -> Check {
    let top = o.nmax.min(8);
    let bad = (1..=top).find(|&k| !jw_verify(k).passed());
    Ok(fail_on(bad.map(|k| format!("k = {k}")), format!("f_k for k = 1..{top}")))
}

fn recoupling(o: &VerifyOptions) -> Check {
    let top = o.nmax.min(6);
    for n in 1..=top {
        if theta(n, n + 1, 1)? != quantum_delta_rf(n as u32 + 1) || theta(n, n - 1, 1)? != quantum_delta_rf(n as u32) {
            return Ok((false, format!("theta at n = {n}")));
        }
    }
    let c3 = o.nmax.min(3);
    for a in 0..=c3 {
        for b in 0..=c3 {
            if !fusion_residual(a, b)?.is_zero() {
                return Ok((false, format!("fusion ({a},{b})")));
            }
            for c in 0..=c3 {
                for d in 0..=c3 {
                    if admissible(a, b, c) && admissible(d, b, c) && !bubble_residual(a, b, c, d)?.is_zero() {
                        return Ok((false, format!("bubble ({a},{b},{c},{d})")));
                    }
                }
            }
        }
    }
    let c4 = o.nmax.min(4);
    for a in 0..=c4 {
        for b in 0..=c4 {
            for c in 0..=c4 {
                if !admissible(a, b, c) {
                    continue;
                }
                let t = theta(a, b, c)?;
                for (x, y, z) in [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                    if theta(x, y, z)? != t {
                        return Ok((false, format!("theta symmetry ({a},{b},{c})")));
                    }
                }
            }
        }
    }
    Ok((true, format!("theta n <= {top}, bubbles and fusion colors <= {c3}, symmetry colors <= {c4}")))
}

fn caterpillar_pairing(o: &VerifyOptions) -> Check {
    let mut pairs = 0;
    for n in 1..=o.nmax.min(5) {
        let all = enumerate_sequences(n);
        for a in &all {
            let da = d_element(a)?;
            let others: Vec<_> = if n <= 4 { all.iter().collect() } else { vec![a] };
            for b in others {
                let lhs = tl_pair(&da, &*d_element(b)?, Convention::Loops)?;
                if lhs != pair_closed_form(a.entries(), b.entries())? {
                    return Ok((false, format!("<D_{a}, D_{b}>")));
                }
                pairs += 1;
            }
        }
    }
    Ok((true, format!("{pairs} pairings")))
}

fn change_of_basis_battery(o: &VerifyOptions) -> Check {
    let top = o.nmax.min(5);
    for n in 1..=top {
        let order = enumerate_sequences(n);
        let ds = order.iter().map(d_element).collect::<Result<Vec<_>>>()?;
        for (r, a) in order.iter().enumerate() {
            let b = TLElement::from_diagram(b_element(a)?);
            for (c, d) in ds.iter().enumerate() {
                let v = tl_pair(&b, d, Convention::Loops)?;
                if c < r && !v.is_zero() {
                    return Ok((false, format!("<B_{a}, D_{}> should vanish", order[c])));
                }
                if c == r && v != tl_pair(d, d, Convention::Loops)? {
                    return Ok((false, format!("<B_{a}, D_{a}> differs from <D_{a}, D_{a}>")));
                }
            }
        }
        if !change_of_basis(n)?.is_unit_upper_triangular() {
            return Ok((false, format!("triangularity at n = {n}")));
        }
        let mut bs: Vec<PlanarDiagram> = order.iter().map(b_element).collect::<Result<_>>()?;
        bs.sort();
        if bs != enumerate_diagrams(n) {
            return Ok((false, format!("B set at n = {n}")));
        }
    }
    Ok((true, format!("n = 1..{top}")))
}

fn gram_determinant(o: &VerifyOptions) -> Check {
    let mut top = o.nmax.min(5);
    if o.long && o.nmax >= 6 {
        top = 6;
    }
    for n in 1..=top {
        let closed = det_closed_form(n, Convention::Loops);
        if det_diagram_basis(n, Convention::Loops)? != closed {
            return Ok((false, format!("exact determinant at n = {n}")));
        }
        if det_via_orthogonal(n)? != RatFunc::from_poly(closed.clone()) {
            return Ok((false, format!("orthogonal product at n = {n}")));
        }
        if n <= 4 {
            let bridged = &closed * &delta().pow(catalan(n) as u32);
            if det_diagram_basis(n, Convention::LoopsPlusOne)? != bridged {
                return Ok((false, format!("convention bridge at n = {n}")));
            }
        }
    }
    Ok((true, format!("n = 1..{top}, bridge n <= {}", top.min(4))))
}

fn exponents(o: &VerifyOptions) -> Check {
    let top = o.nmax.min(10);
    let bad = (1..=top).flat_map(|n| (1..=n).map(move |k| (n, k))).find(|&(n, k)| alpha_closed(n, k) != alpha_census(n, k));
    Ok(fail_on(bad.map(|(n, k)| format!("n = {n}, k = {k}")), format!("n = 1..{top}")))
}

fn dyck_bijection(o: &VerifyOptions) -> Check {
    let top = o.nmax.min(8);
    let mut pairs = 0;
    for n in 1..=top {
        for k in 1..=n {
            let rep = bijection_check(n, k)?;
            if !rep.passed() || rep.pairs as u128 != alpha_closed(n, k) {
                return Ok((false, format!("n = {n}, k = {k}")));
            }
            pairs += rep.pairs;
        }
    }
    Ok((true, format!("{pairs} pairs over 1 <= k <= n <= {top}")))
}

fn root_degeneracy(o: &VerifyOptions) -> Check {
    let top = o.nmax.min(5);
    for n in 1..=top {
        let rep = root_scan(n, 12)?;
        for e in &rep.entries {
            let criterion = (1..=n).any(|k| (k + 1) % e.r == 0);
            if (e.status == RootStatus::Zero) != criterion {
                return Ok((false, format!("n = {n}, r = {}", e.r)));
            }
        }
        if n < 12 && rep.entries[n - 1].status != RootStatus::Zero {
            return Ok((false, format!("no zero at r = n + 1 for n = {n}")));
        }
    }
    Ok((true, format!("n = 1..{top}, r = 2..12")))
}

fn normalized_basis(o: &VerifyOptions) -> Check {
    let top = o.nmax.min(4);
    let points = generic_points(5, ORTHO_SEED);
    let mut worst_gram = 0.0f64;
    let mut worst_step = 0.0f64;
    for n in 1..=top {
        for &a in &points {
            worst_gram = worst_gram.max(identity_deviation(&nd_gram_numeric(n, a)?));
        }
        for s in enumerate_sequences(n) {
            for i in valleys(&s) {
                if !valley_identity(&s, i)? {
                    return Ok((false, format!("valley identity {s} at {i}")));
                }
                for &a in &points {
                    worst_step = worst_step.max(nd_step_check(&s, i, a)?.residual);
                }
            }
        }
    }
    let ok = worst_gram < 1e-9 && worst_step < 1e-9;
    Ok((ok, format!("n = 1..{top}, max gram deviation {worst_gram:.1e}, max step residual {worst_step:.1e}")))
}

fn generator_expansion(o: &VerifyOptions) -> Check {
    let top = o.nmax.min(5);
    for n in 1..=top {
        let mut targets = vec![TLElement::identity(n)];
        for i in 1..n {
            targets.push(TLElement::e(n, i)?);
        }
        for x in targets {
            if reconstruct(n, &expand_in_d_basis(&x)?)? != x {
                return Ok((false, format!("n = {n}: {x}")));
            }
        }
    }
    Ok((true, format!("1 and e_i for n = 1..{top}")))
}

/// Runs criterion `id` (1-based).
pub fn run_criterion(id: usize, opts: &VerifyOptions) -> CriterionResult {
    let start = Instant::now();
    let outcome = match id {
        1 => dimension(opts),
        2 => jones_wenzl(opts),
        3 => recoupling(opts),
        4 => caterpillar_pairing(opts),
        5 => change_of_basis_battery(opts),
        6 => gram_determinant(opts),
        7 => exponents(opts),
        8 => dyck_bijection(opts),
        9 => root_degeneracy(opts),
        10 => normalized_basis(opts),
        11 => generator_expansion(opts),
        _ => panic!("criterion ids run from 1 to {}", CRITERIA.len()),
    };
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionResult {
        id,
        name: CRITERIA[id - 1],
        passed,
        detail,
        millis: start.elapsed().as_millis(),
    }
}

pub fn run_all(opts: &VerifyOptions) -> Vec<CriterionResult> {
    (1..=CRITERIA.len()).map(|id| run_criterion(id, opts)).collect()
}
