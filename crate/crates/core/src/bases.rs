//! Color sequences, the caterpillar basis `D_a`, the diagrams `B_a`, and the
//! triangular change of basis between them.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::diagram::{End, PlanarDiagram};
use crate::error::{Result, TlError};
use crate::recoupling::{gamma, vertex};
use crate::ring::{quantum_delta_rf, RatFunc};
use crate::tlcat::{bend_diagram, tl_bend, tl_compose, tl_pair, tl_tensor, Convention, TLElement};

/// A sequence `(a_1, ..., a_{2n-1})` with `a_1 = a_{2n-1} = 1`, unit steps
/// and nonnegative entries. Padding with `a_0 = a_{2n} = 0` gives a Dyck path.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct ColorSequence(Vec<usize>);

impl TryFrom<Vec<usize>> for ColorSequence {
    type Error = TlError;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        ColorSequence::new(v)
    }
}

impl From<ColorSequence> for Vec<usize> {
    fn from(s: ColorSequence) -> Self {
        s.0
    }
}

impl ColorSequence {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let bad = |why: &str| Err(TlError::InvalidSequence(format!("{entries:?}: {why}")));
        if entries.len() % 2 == 0 {
            return bad("length must be odd");
        }
        if entries[0] != 1 || entries[entries.len() - 1] != 1 {
            return bad("must start and end with 1");
        }
        if entries.windows(2).any(|w| w[0].abs_diff(w[1]) != 1) {
            return bad("consecutive entries must differ by 1");
        }
        Ok(ColorSequence(entries))
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len().div_ceil(2)
    }

    /// Heights `(0, a_1, ..., a_{2n-1}, 0)`.
    pub fn augmented(&self) -> Vec<usize> {
        let mut h = Vec::with_capacity(self.0.len() + 2);
        h.push(0);
        h.extend_from_slice(&self.0);
        h.push(0);
        h
    }
}

impl fmt::Display for ColorSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for ColorSequence {
    type Err = TlError;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let entries: std::result::Result<Vec<usize>, _> = t.split(',').map(|x| x.trim().parse()).collect();
        match entries {
            Ok(v) => ColorSequence::new(v),
            Err(_) => Err(TlError::InvalidSequence(s.to_string())),
        }
    }
}

/// All of the index set for `TL_n`, in descending lexicographic order.
pub fn enumerate_sequences(n: usize) -> Vec<ColorSequence> {
    fn walk(len: usize, cur: &mut Vec<usize>, out: &mut Vec<ColorSequence>) {
        let last = *cur.last().unwrap();
        let left = len - cur.len();
        if left == 0 {
            if last == 1 {
                out.push(ColorSequence(cur.clone()));
            }
            return;
        }
        // Highest first; must be able to come back down to 1.
        for next in [last + 1, last.wrapping_sub(1)] {
            if next == usize::MAX || next > left {
                continue;
            }
            cur.push(next);
            walk(len, cur, out);
            cur.pop();
        }
    }
    if n == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    walk(2 * n - 1, &mut vec![1], &mut out);
    out
}

type ElementCache = Mutex<HashMap<ColorSequence, Arc<TLElement>>>;
static D_CACHE: OnceLock<ElementCache> = OnceLock::new();

/// The caterpillar element `D_a`: a chain of color-1 legs fused along the
/// edges colored `a_1, ..., a_{2n-1}`, built in `Hom(0, 2n)` and bent into
/// `TL_n`.
pub fn d_element(seq: &ColorSequence) -> Result<Arc<TLElement>> {
    let cache = D_CACHE.get_or_init(Default::default);
    if let Some(x) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(seq) {
        return Ok(x.clone());
    }
    let a = seq.entries();
    let mut w = TLElement::from_diagram(PlanarDiagram::cup());
    for j in 1..a.len() {
        let step = tl_tensor(&TLElement::identity(j), &*vertex(a[j - 1], 1, a[j])?);
        w = tl_compose(&w, &step)?;
    }
    let d = Arc::new(tl_bend(&w)?);
    cache
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .insert(seq.clone(), d.clone());
    Ok(d)
}

/// The diagram `B_a`: legs `1..2n` of a disk, matched by the up and down
/// steps of the padded sequence, then bent into `TL_n`.
pub fn b_element(seq: &ColorSequence) -> Result<PlanarDiagram> {
    let h = seq.augmented();
    let legs = h.len() - 1;
    let mut arcs = Vec::with_capacity(legs / 2);
    let mut open = Vec::new();
    for j in 1..=legs {
        if h[j] > h[j - 1] {
            open.push(j);
        } else {
            let i = open.pop().expect("heights never go negative");
            arcs.push((End::T(i), End::T(j)));
        }
    }
    bend_diagram(&PlanarDiagram::from_pairs(0, legs, &arcs)?)
}

/// The closed form `δ_{ab} Γ(a_1,a_2) ... Γ(a_{2n-2},a_{2n-1}) Δ_{a_{2n-1}}`
/// of `⟨D_a, D_b⟩`, for arbitrary unit-step sequences of equal length.
pub fn pair_closed_form(a: &[usize], b: &[usize]) -> Result<RatFunc> {
    if a.len() != b.len() {
        return Err(TlError::InvalidSequence(format!(
            "length mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    if a.is_empty() {
        return Err(TlError::InvalidSequence("empty sequence".into()));
    }
    if a != b {
        return Ok(RatFunc::zero());
    }
    let mut v = quantum_delta_rf(a[a.len() - 1] as u32);
    for w in a.windows(2) {
        v = &v * &gamma(w[0], w[1]);
    }
    Ok(v)
}

/// `U[r][c]` is the coefficient of `D_{order[c]}` in `B_{order[r]}`.
#[derive(Clone, Debug, Serialize)]
pub struct ChangeOfBasis {
    pub order: Vec<ColorSequence>,
    pub matrix: Vec<Vec<RatFunc>>,
}

impl ChangeOfBasis {
    pub fn is_unit_upper_triangular(&self) -> bool {
        self.matrix.iter().enumerate().all(|(i, row)| {
            row[i].is_one() && row[..i].iter().all(RatFunc::is_zero)
        })
    }
}

/// Expresses every `B_a` in the `D` basis and checks that the result is unit
/// upper triangular and reconstructs `B_a` exactly.
pub fn change_of_basis(n: usize) -> Result<ChangeOfBasis> {
    let order = enumerate_sequences(n);
    let ds = order.iter().map(d_element).collect::<Result<Vec<_>>>()?;
    let norms = order
        .iter()
        .map(|a| pair_closed_form(a.entries(), a.entries()))
        .collect::<Result<Vec<_>>>()?;
    let mut matrix = Vec::with_capacity(order.len());
    for (r, a) in order.iter().enumerate() {
        let b = TLElement::from_diagram(b_element(a)?);
        let row = ds
            .iter()
            .zip(&norms)
            .map(|(d, nrm)| Ok(&tl_pair(&b, d, Convention::Loops)? / nrm))
            .collect::<Result<Vec<_>>>()?;
        if reconstruct_from(n, &ds, &row)? != b {
            return Err(TlError::Verification(format!("B_{a} is not reconstructed (row {r})")));
        }
        matrix.push(row);
    }
    let cob = ChangeOfBasis { order, matrix };
    if !cob.is_unit_upper_triangular() {
        return Err(TlError::Verification(format!(
            "change of basis for n = {n} is not unit upper triangular"
        )));
    }
    Ok(cob)
}

fn reconstruct_from(n: usize, ds: &[Arc<TLElement>], coeffs: &[RatFunc]) -> Result<TLElement> {
    let mut acc = TLElement::zero(n, n);
    for (d, c) in ds.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.checked_add(&d.scale(c))?;
        }
    }
    Ok(acc)
}

/// Coordinates of `x ∈ TL_n` in the `D` basis, `c_b = ⟨x, D_b⟩ / ⟨D_b, D_b⟩`,
/// listed in basis order with zero coordinates omitted.
pub fn expand_in_d_basis(x: &TLElement) -> Result<Vec<(ColorSequence, RatFunc)>> {
    let (m, k) = x.signature();
    if m != k {
        return Err(TlError::SignatureMismatch {
            expected: "a square element".into(),
            got: format!("({m},{k})"),
        });
    }
    let mut out = Vec::new();
    for b in enumerate_sequences(m) {
        let d = d_element(&b)?;
        let c = &tl_pair(x, &d, Convention::Loops)? / &pair_closed_form(b.entries(), b.entries())?;
        if !c.is_zero() {
            out.push((b, c));
        }
    }
    Ok(out)
}

/// `Σ c_b D_b`.
pub fn reconstruct(n: usize, coeffs: &[(ColorSequence, RatFunc)]) -> Result<TLElement> {
    let ds = coeffs.iter().map(|(b, _)| d_element(b)).collect::<Result<Vec<_>>>()?;
    let cs: Vec<RatFunc> = coeffs.iter().map(|(_, c)| c.clone()).collect();
    reconstruct_from(n, &ds, &cs)
}

/// Legs of `B_a` as seen in the disk, before bending; exposed for rendering.
pub fn b_disk_diagram(seq: &ColorSequence) -> Result<PlanarDiagram> {
    let b = b_element(seq)?;
    crate::tlcat::unbend_diagram(&b)
}
