//! Jones-Wenzl projectors `f_k ∈ TL_k`.

use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::diagram::PlanarDiagram;
use crate::ring::{quantum_delta, quantum_delta_rf, RatFunc};
use crate::tlcat::{tl_compose, tl_tensor, tl_trace, TLElement};

static CACHE: OnceLock<Mutex<Vec<Arc<TLElement>>>> = OnceLock::new();

/// The projector `f_k`, built by the Wenzl recursion
/// `f_k = F - (Δ_{k-2}/Δ_{k-1}) F e_{k-1} F` with `F = f_{k-1} ⊗ 1`.
///
/// Results are cached; concurrent callers block until the value exists, so
/// each projector is computed once.
pub fn jones_wenzl(k: usize) -> Arc<TLElement> {
    let cache = CACHE.get_or_init(|| Mutex::new(vec![Arc::new(TLElement::identity(0))]));
    let mut v = cache.lock().unwrap_or_else(|e| e.into_inner());
    while v.len() <= k {
        let j = v.len();
        let next = wenzl_step(&v[j - 1], j);
        v.push(Arc::new(next));
    }
    v[k].clone()
}

fn wenzl_step(prev: &TLElement, k: usize) -> TLElement {
    let f = tl_tensor(prev, &TLElement::identity(1));
    if k == 1 {
        return f;
    }
    let e = TLElement::e(k, k - 1).expect("k >= 2");
    let fe = tl_compose(&f, &e).expect("signatures agree");
    let fef = tl_compose(&fe, &f).expect("signatures agree");
    let ratio = &quantum_delta_rf(k as u32 - 2) / &quantum_delta_rf(k as u32 - 1);
    &f - &fef.scale(&ratio)
}

#[derive(Clone, Debug, Serialize)]
pub struct JwReport {
    pub k: usize,
    pub terms: usize,
    /// `f e_i = e_i f = 0` for every generator.
    pub annihilation: bool,
    pub idempotent: bool,
    /// The identity diagram has coefficient 1.
    pub unit_coefficient: bool,
    /// `tr(f_k) = Δ_k`.
    pub trace: bool,
    pub trace_value: RatFunc,
}

impl JwReport {
    pub fn passed(&self) -> bool {
        self.annihilation && self.idempotent && self.unit_coefficient && self.trace
    }
}

/// Checks the defining properties of `f_k` exactly.
pub fn jw_verify(k: usize) -> JwReport {
    let f = jones_wenzl(k);
    let annihilation = (1..k).all(|i| {
        let e = TLElement::e(k, i).unwrap();
        tl_compose(&f, &e).unwrap().is_zero() && tl_compose(&e, &f).unwrap().is_zero()
    });
    let idempotent = tl_compose(&f, &f).unwrap() == *f;
    let unit_coefficient = f.coeff(&PlanarDiagram::identity(k)).is_one();
    let trace_value = tl_trace(&f).unwrap();
    let trace = trace_value == RatFunc::from_poly(quantum_delta(k as u32));
    JwReport {
        k,
        terms: f.len(),
        annihilation,
        idempotent,
        unit_coefficient,
        trace,
        trace_value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::enumerate_diagrams;
    use crate::linalg::solve;
    use crate::ring::delta;
    use crate::tlcat::tl_mirror;

    fn rf(k: u32) -> RatFunc {
        quantum_delta_rf(k)
    }

    #[test]
    fn low_projectors() {
        assert_eq!(*jones_wenzl(0), TLElement::identity(0));
        assert_eq!(*jones_wenzl(1), TLElement::identity(1));
        let dinv = RatFunc::from_poly(delta()).inv().unwrap();
        let f2 = &TLElement::identity(2) - &TLElement::e(2, 1).unwrap().scale(&dinv);
        assert_eq!(*jones_wenzl(2), f2);
    }

    #[test]
    fn third_projector_coefficients() {
        let f3 = jones_wenzl(3);
        let e1 = PlanarDiagram::e(3, 1).unwrap();
        let e2 = PlanarDiagram::e(3, 2).unwrap();
        let (e1e2, _) = crate::diagram::compose_diagrams(&e1, &e2).unwrap();
        let (e2e1, _) = crate::diagram::compose_diagrams(&e2, &e1).unwrap();
        let side = -(&rf(1) / &rf(2));
        let corner = &RatFunc::one() / &rf(2);
        assert_eq!(f3.len(), 5);
        assert!(f3.coeff(&PlanarDiagram::identity(3)).is_one());
        assert_eq!(f3.coeff(&e1), side);
        assert_eq!(f3.coeff(&e2), side);
        assert_eq!(f3.coeff(&e1e2), corner);
        assert_eq!(f3.coeff(&e2e1), corner);
    }

    #[test]
    fn verify_small() {
        for k in 1..=5 {
            let r = jw_verify(k);
            assert!(r.passed(), "{r:?}");
        }
        assert_eq!(jw_verify(1).trace_value, RatFunc::from_poly(delta()));
    }

    #[test]
    fn mirror_symmetric() {
        for k in 0..=6 {
            let f = jones_wenzl(k);
            assert_eq!(tl_mirror(&f), *f);
        }
    }

    /// Solves `f e_i = 0`, identity coefficient 1, directly as a linear system
    /// in the diagram coordinates.
    fn solve_axioms(k: usize) -> TLElement {
        let basis = enumerate_diagrams(k);
        let id = PlanarDiagram::identity(k);
        let unknowns: Vec<&PlanarDiagram> = basis.iter().filter(|d| **d != id).collect();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for i in 1..k {
            let e = TLElement::e(k, i).unwrap();
            let images: Vec<TLElement> = basis
                .iter()
                .map(|d| tl_compose(&TLElement::from_diagram(d.clone()), &e).unwrap())
                .collect();
            for target in &basis {
                let mut row = Vec::new();
                let mut constant = RatFunc::zero();
                for (d, img) in basis.iter().zip(&images) {
                    let c = img.coeff(target);
                    if *d == id {
                        constant = -c;
                    } else {
                        row.push(c);
                    }
                }
                rows.push(row);
                rhs.push(constant);
            }
        }
        let x = solve(&rows, &rhs).unwrap();
        let mut terms = vec![(id, RatFunc::one())];
        terms.extend(unknowns.into_iter().cloned().zip(x));
        TLElement::from_terms(k, k, terms).unwrap()
    }

    #[test]
    fn axioms_determine_the_projector() {
        for k in 1..=4 {
            assert_eq!(solve_axioms(k), *jones_wenzl(k), "k = {k}");
        }
    }

    #[test]
    fn concurrent_lookups_agree() {
        let handles: Vec<_> = (0..4).map(|_| std::thread::spawn(|| jones_wenzl(5))).collect();
        let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(results.windows(2).all(|w| w[0] == w[1]));
    }
}
