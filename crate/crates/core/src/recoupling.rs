//! Admissible colorings, trivalent vertices and the Θ / Γ coefficients.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::diagram::PlanarDiagram;
use crate::error::{Result, TlError};
use crate::jw::jones_wenzl;
use crate::ring::{quantum_delta_rf, RatFunc};
use crate::tlcat::{tl_compose, tl_mirror, tl_pair, tl_tensor, Convention, TLElement};

/// `a + b + c` even and the triangle inequalities.
pub fn admissible(a: usize, b: usize, c: usize) -> bool {
    (a + b + c) % 2 == 0 && a <= b + c && b <= c + a && c <= a + b
}

fn check(a: usize, b: usize, c: usize) -> Result<()> {
    if admissible(a, b, c) {
        Ok(())
    } else {
        Err(TlError::Inadmissible(a, b, c))
    }
}

type VertexCache = Mutex<HashMap<(usize, usize, usize), Arc<TLElement>>>;
static VERTICES: OnceLock<VertexCache> = OnceLock::new();

/// The trivalent vertex in `Hom(c, a + b)`: `f_c`, then `i = (a+b-c)/2`
/// nested cups between `a - i` and `b - i` through-strands, then `f_a ⊗ f_b`.
pub fn vertex(c: usize, a: usize, b: usize) -> Result<Arc<TLElement>> {
    check(a, b, c)?;
    let cache = VERTICES.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(&(c, a, b)) {
        return Ok(v.clone());
    }
    let i = (a + b - c) / 2;
    let middle = crate::diagram::tensor_diagrams(
        &crate::diagram::tensor_diagrams(&PlanarDiagram::identity(a - i), &PlanarDiagram::nested_cups(i)),
        &PlanarDiagram::identity(b - i),
    );
    let lower = tl_compose(&jones_wenzl(c), &TLElement::from_diagram(middle))?;
    let v = Arc::new(tl_compose(&lower, &tl_tensor(&jones_wenzl(a), &jones_wenzl(b)))?);
    cache
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .insert((c, a, b), v.clone());
    Ok(v)
}

/// The theta network: a vertex glued to its mirror image and closed up.
pub fn theta(a: usize, b: usize, c: usize) -> Result<RatFunc> {
    let v = vertex(c, a, b)?;
    tl_pair(&v, &v, Convention::Loops)
}

/// `Γ(b, a) = Θ(a, b, 1) / Δ_a`, in closed form.
pub fn gamma(b: usize, a: usize) -> RatFunc {
    if a == b + 1 {
        RatFunc::one()
    } else if a + 1 == b {
        &quantum_delta_rf(a as u32 + 1) / &quantum_delta_rf(a as u32)
    } else {
        RatFunc::zero()
    }
}

/// `vertex(a,b,c)` followed by the mirror of `vertex(d,b,c)`, minus the
/// predicted multiple `δ_{ad} Θ(a,b,c)/Δ_a` of `f_a`.
pub fn bubble_residual(a: usize, b: usize, c: usize, d: usize) -> Result<TLElement> {
    let lower = vertex(a, b, c)?;
    let upper = tl_mirror(&*vertex(d, b, c)?);
    let bubble = tl_compose(&lower, &upper)?;
    if a != d {
        return Ok(bubble);
    }
    let coeff = &theta(a, b, c)? / &quantum_delta_rf(a as u32);
    bubble.checked_sub(&jones_wenzl(a).scale(&coeff))
}

/// `f_a ⊗ f_b - Σ_j (Δ_j / Θ(a,b,j)) · mirror(vertex(j,a,b)) then vertex(j,a,b)`.
pub fn fusion_residual(a: usize, b: usize) -> Result<TLElement> {
    let mut acc = tl_tensor(&jones_wenzl(a), &jones_wenzl(b));
    let lo = a.abs_diff(b);
    for j in (lo..=a + b).step_by(2) {
        let v = vertex(j, a, b)?;
        let channel = tl_compose(&tl_mirror(&v), &v)?;
        let coeff = &quantum_delta_rf(j as u32) / &theta(a, b, j)?;
        acc = acc.checked_sub(&channel.scale(&coeff))?;
    }
    Ok(acc)
}
