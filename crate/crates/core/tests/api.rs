use proptest::prelude::*;

use tl_core::bases::{d_element, enumerate_sequences, pair_closed_form, ColorSequence};
use tl_core::diagram::{enumerate_diagrams, PlanarDiagram};
use tl_core::gram::{alpha_closed, det_closed_form, det_diagram_basis, det_via_orthogonal, telescoped_exponents};
use tl_core::jw::jones_wenzl;
use tl_core::tlcat::{tl_compose, tl_pair, Convention, TLElement};
use tl_core::{delta, quantum_delta, LaurentPoly, RatFunc};

#[test]
fn elements_round_trip_through_json() {
    let f = jones_wenzl(3);
    let text = serde_json::to_string(&*f).unwrap();
    let back: TLElement = serde_json::from_str(&text).unwrap();
    assert_eq!(back, *f);
    let p: LaurentPoly = serde_json::from_str(&serde_json::to_string(&delta()).unwrap()).unwrap();
    assert_eq!(p, delta());
}

#[test]
fn projectors_absorb_lower_ones() {
    for k in 2..=5 {
        let f = jones_wenzl(k);
        let lower = tl_core::tlcat::tl_tensor(&jones_wenzl(k - 1), &TLElement::identity(1));
        assert_eq!(tl_compose(&lower, &f).unwrap(), *f);
    }
}

#[test]
fn determinant_routes_agree() {
    for n in 1..=5 {
        let closed = det_closed_form(n, Convention::Loops);
        assert_eq!(det_diagram_basis(n, Convention::Loops).unwrap(), closed);
        assert_eq!(det_via_orthogonal(n).unwrap(), RatFunc::from_poly(closed));
    }
}

#[test]
fn degree_of_determinant() {
    // The leading term comes from the diagonal: every diagram paired with
    // itself closes into n loops, and δ has degree 2 in A.
    for n in 1..=5 {
        let det = det_closed_form(n, Convention::Loops);
        let size = enumerate_diagrams(n).len() as i64;
        assert_eq!(det.high_exp(), Some(2 * n as i64 * size));
        assert_eq!(det.low_exp(), Some(-2 * n as i64 * size));
        let from_exponents: i64 = telescoped_exponents(n)
            .iter()
            .enumerate()
            .map(|(k, e)| e * 2 * (k as i64 + 1))
            .sum();
        assert_eq!(from_exponents, 2 * n as i64 * size);
    }
}

#[test]
fn alpha_one_is_a_ballot_number() {
    assert_eq!((1..=6).map(|n| alpha_closed(n, 1)).collect::<Vec<_>>(), vec![1, 3, 9, 28, 90, 297]);
}

fn arb_sequence(n: usize) -> impl Strategy<Value = ColorSequence> {
    let all = enumerate_sequences(n);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn caterpillar_pairing_is_diagonal(a in arb_sequence(3), b in arb_sequence(3)) {
        let v = tl_pair(&*d_element(&a).unwrap(), &*d_element(&b).unwrap(), Convention::Loops).unwrap();
        prop_assert_eq!(v.is_zero(), a != b);
        prop_assert_eq!(v, pair_closed_form(a.entries(), b.entries()).unwrap());
    }

    #[test]
    fn pairing_is_symmetric(i in 0usize..14, j in 0usize..14) {
        let ds = enumerate_diagrams(4);
        let x = TLElement::from_diagram(ds[i].clone());
        let y = TLElement::from_diagram(ds[j].clone());
        prop_assert_eq!(
            tl_pair(&x, &y, Convention::Loops).unwrap(),
            tl_pair(&y, &x, Convention::Loops).unwrap()
        );
    }

    #[test]
    fn plus_one_convention_scales_by_delta(i in 0usize..5, j in 0usize..5) {
        let ds = enumerate_diagrams(3);
        let x = TLElement::from_diagram(ds[i].clone());
        let y = TLElement::from_diagram(ds[j].clone());
        let plain = tl_pair(&x, &y, Convention::Loops).unwrap();
        let plus = tl_pair(&x, &y, Convention::LoopsPlusOne).unwrap();
        prop_assert_eq!(plus, &plain * &RatFunc::from_poly(delta()));
    }
}

#[test]
fn trace_of_identity_is_a_power_of_delta() {
    for n in 0..=4u32 {
        let tr = tl_core::tlcat::tl_trace(&TLElement::identity(n as usize)).unwrap();
        assert_eq!(tr, RatFunc::from_poly(delta().pow(n)));
    }
    assert_eq!(quantum_delta(1), delta());
    assert_eq!(PlanarDiagram::identity(2).through_strands(), 2);
}
