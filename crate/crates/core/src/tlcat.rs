//! Formal combinations of planar diagrams with rational-function coefficients
//! and the Temperley-Lieb category operations on them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::diagram::{closure_loops, compose_unchecked, mirror_diagram, tensor_diagrams, PlanarDiagram};
use crate::error::{Result, TlError};
use crate::ring::{delta, LaurentPoly, RatFunc};

/// Which scalar a closed pairing picture is assigned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// `δ^loops`.
    Loops,
    /// `δ^(loops + 1)`.
    LoopsPlusOne,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ElementRepr", into = "ElementRepr")]
pub struct TLElement {
    m: usize,
    k: usize,
    terms: BTreeMap<PlanarDiagram, RatFunc>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    diagram: PlanarDiagram,
    coeff: RatFunc,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    m: usize,
    k: usize,
    terms: Vec<TermRepr>,
}

impl TryFrom<ElementRepr> for TLElement {
    type Error = TlError;
    fn try_from(r: ElementRepr) -> Result<Self> {
        TLElement::from_terms(r.m, r.k, r.terms.into_iter().map(|t| (t.diagram, t.coeff)))
    }
}

impl From<TLElement> for ElementRepr {
    fn from(x: TLElement) -> Self {
        ElementRepr {
            m: x.m,
            k: x.k,
            terms: x
                .terms
                .into_iter()
                .map(|(diagram, coeff)| TermRepr { diagram, coeff })
                .collect(),
        }
    }
}

fn mismatch(expected: String, got: (usize, usize)) -> TlError {
    TlError::SignatureMismatch {
        expected,
        got: format!("({},{})", got.0, got.1),
    }
}

impl TLElement {
    pub fn zero(m: usize, k: usize) -> Self {
        TLElement { m, k, terms: BTreeMap::new() }
    }

    pub fn from_diagram(d: PlanarDiagram) -> Self {
        Self::from_scaled_diagram(d, RatFunc::one())
    }

    pub fn from_scaled_diagram(d: PlanarDiagram, c: RatFunc) -> Self {
        let (m, k) = d.signature();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(d, c);
        }
        TLElement { m, k, terms }
    }

    /// Sums the given terms; every diagram must have signature `(m, k)`.
    pub fn from_terms<I>(m: usize, k: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PlanarDiagram, RatFunc)>,
    {
        let mut x = TLElement::zero(m, k);
        for (d, c) in terms {
            if d.signature() != (m, k) {
                return Err(mismatch(format!("({m},{k})"), d.signature()));
            }
            x.add_term(d, &c);
        }
        Ok(x)
    }

    /// The scalar `c` as an element of `Hom(0, 0)`.
    pub fn scalar(c: RatFunc) -> Self {
        Self::from_scaled_diagram(PlanarDiagram::empty(), c)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagram(PlanarDiagram::identity(n))
    }

    pub fn e(n: usize, i: usize) -> Result<Self> {
        Ok(Self::from_diagram(PlanarDiagram::e(n, i)?))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.m, self.k)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PlanarDiagram, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, d: &PlanarDiagram) -> RatFunc {
        self.terms.get(d).cloned().unwrap_or_else(RatFunc::zero)
    }

    fn add_term(&mut self, d: PlanarDiagram, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&d) {
            Some(v) => {
                let s = &*v + c;
                if s.is_zero() {
                    self.terms.remove(&d);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(d, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &RatFunc) -> TLElement {
        if c.is_zero() {
            return TLElement::zero(self.m, self.k);
        }
        TLElement {
            m: self.m,
            k: self.k,
            terms: self.terms.iter().map(|(d, v)| (d.clone(), v * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &TLElement) -> Result<TLElement> {
        if self.signature() != other.signature() {
            return Err(mismatch(format!("({},{})", self.m, self.k), other.signature()));
        }
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &TLElement) -> Result<TLElement> {
        self.checked_add(&-other)
    }

    /// Applies a coefficient-preserving bijection to the diagrams.
    fn map_diagrams(&self, m: usize, k: usize, f: impl Fn(&PlanarDiagram) -> PlanarDiagram) -> TLElement {
        TLElement {
            m,
            k,
            terms: self.terms.iter().map(|(d, c)| (f(d), c.clone())).collect(),
        }
    }

    /// Writes every coefficient over one common denominator.
    fn over_common_den(&self) -> (LaurentPoly, Vec<(&PlanarDiagram, LaurentPoly)>) {
        let mut dens: Vec<&LaurentPoly> = Vec::new();
        for c in self.terms.values() {
            if !c.den().is_one() && !dens.contains(&c.den()) {
                dens.push(c.den());
            }
        }
        let mut den = LaurentPoly::one();
        for d in &dens {
            if den.exact_div(d).is_none() {
                let g = den.gcd(d);
                den = &den * &d.exact_div(&g).expect("gcd divides");
            }
        }
        let mut cofactors: HashMap<&LaurentPoly, LaurentPoly> = HashMap::new();
        for d in dens {
            cofactors.insert(d, den.exact_div(d).expect("lcm is a multiple"));
        }
        let terms = self
            .terms
            .iter()
            .map(|(d, c)| {
                let n = if c.den().is_one() {
                    c.num() * &den
                } else {
                    c.num() * &cofactors[c.den()]
                };
                (d, n)
            })
            .collect();
        (den, terms)
    }
}

fn delta_powers(max: usize) -> Vec<LaurentPoly> {
    let d = delta();
    let mut v = vec![LaurentPoly::one()];
    for i in 1..=max {
        let next = &v[i - 1] * &d;
        v.push(next);
    }
    v
}

fn weigh(buckets: &[LaurentPoly], dpow: &[LaurentPoly]) -> LaurentPoly {
    let mut s = LaurentPoly::zero();
    for (l, b) in buckets.iter().enumerate() {
        if !b.is_zero() {
            s += &(b * &dpow[l]);
        }
    }
    s
}

fn bucket_add(buckets: &mut Vec<LaurentPoly>, l: usize, v: &LaurentPoly) {
    if buckets.len() <= l {
        buckets.resize(l + 1, LaurentPoly::zero());
    }
    buckets[l] += v;
}

/// `x` followed by `y`: the diagrams of `y` are stacked on top of those of `x`.
pub fn tl_compose(x: &TLElement, y: &TLElement) -> Result<TLElement> {
    if x.k != y.m {
        return Err(mismatch(format!("({}, _)", x.k), y.signature()));
    }
    let (m, k) = (x.m, y.k);
    if x.is_zero() || y.is_zero() {
        return Ok(TLElement::zero(m, k));
    }
    let (dx, tx) = x.over_common_den();
    let (dy, ty) = y.over_common_den();
    let dpow = delta_powers(x.k / 2);

    // Summing the (many) inner terms before multiplying by the outer
    // numerator keeps cancellation cheap when one side is a projector.
    let inner_is_y = ty.len() >= tx.len();
    let (outer, inner) = if inner_is_y { (&tx, &ty) } else { (&ty, &tx) };
    let mut acc: HashMap<PlanarDiagram, LaurentPoly> = HashMap::new();
    let mut groups: HashMap<PlanarDiagram, Vec<LaurentPoly>> = HashMap::new();
    for (od, on) in outer {
        groups.clear();
        for (id, inum) in inner {
            let (d, l) = if inner_is_y {
                compose_unchecked(od, id)
            } else {
                compose_unchecked(id, od)
            };
            bucket_add(groups.entry(d).or_default(), l, inum);
        }
        for (d, b) in groups.drain() {
            let s = weigh(&b, &dpow);
            if !s.is_zero() {
                *acc.entry(d).or_default() += &(on * &s);
            }
        }
    }
    let den = &dx * &dy;
    let terms = acc
        .into_iter()
        .filter(|(_, n)| !n.is_zero())
        .map(|(d, n)| (d, RatFunc::reduce(n, den.clone())))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    Ok(TLElement { m, k, terms })
}

/// Side-by-side juxtaposition, extended bilinearly.
pub fn tl_tensor(x: &TLElement, y: &TLElement) -> TLElement {
    let mut out = TLElement::zero(x.m + y.m, x.k + y.k);
    for (a, ca) in &x.terms {
        for (b, cb) in &y.terms {
            out.add_term(tensor_diagrams(a, b), &(ca * cb));
        }
    }
    out
}

pub fn tl_mirror(x: &TLElement) -> TLElement {
    x.map_diagrams(x.k, x.m, mirror_diagram)
}

/// `Σ c_d δ^{closure loops of d}`.
pub fn tl_trace(x: &TLElement) -> Result<RatFunc> {
    if x.m != x.k {
        return Err(mismatch("a square element".into(), x.signature()));
    }
    let (den, terms) = x.over_common_den();
    let dpow = delta_powers(x.m);
    let mut buckets = Vec::new();
    for (d, n) in &terms {
        bucket_add(&mut buckets, closure_loops(d)?, n);
    }
    Ok(RatFunc::reduce(weigh(&buckets, &dpow), den))
}

/// The trace pairing `⟨s, r⟩ = tr(s ∘ mirror(r))` under the given convention.
pub fn tl_pair(s: &TLElement, r: &TLElement, convention: Convention) -> Result<RatFunc> {
    if s.signature() != r.signature() {
        return Err(mismatch(format!("({},{})", s.m, s.k), r.signature()));
    }
    if s.is_zero() || r.is_zero() {
        return Ok(RatFunc::zero());
    }
    let (ds, ts) = s.over_common_den();
    let (dr, tr) = r.over_common_den();
    let mirrored: Vec<(PlanarDiagram, &LaurentPoly)> = tr.iter().map(|(d, n)| (mirror_diagram(d), n)).collect();
    let dpow = delta_powers(s.m + s.k);
    let mut total = LaurentPoly::zero();
    let mut buckets = Vec::new();
    for (a, na) in &ts {
        buckets.clear();
        for (b, nb) in &mirrored {
            let (c, l) = compose_unchecked(a, b);
            bucket_add(&mut buckets, l + closure_loops(&c)?, nb);
        }
        let w = weigh(&buckets, &dpow);
        if !w.is_zero() {
            total += &(na * &w);
        }
    }
    if convention == Convention::LoopsPlusOne {
        total = &total * &delta();
    }
    Ok(RatFunc::reduce(total, &ds * &dr))
}

/// Bends a diagram in `Hom(0, 2n)` into `Hom(n, n)`: point `j <= n` becomes
/// top `j` and point `n + j` becomes bottom `n + 1 - j`.
pub fn bend_diagram(d: &PlanarDiagram) -> Result<PlanarDiagram> {
    if d.m() != 0 || d.k() % 2 == 1 {
        return Err(mismatch("(0, 2n)".into(), d.signature()));
    }
    let n = d.k() / 2;
    let lower = tensor_diagrams(d, &PlanarDiagram::identity(n));
    let upper = tensor_diagrams(&PlanarDiagram::identity(n), &PlanarDiagram::nested_caps(n));
    let (out, loops) = compose_unchecked(&lower, &upper);
    debug_assert_eq!(loops, 0);
    Ok(out)
}

/// Inverse of [`bend_diagram`].
pub fn unbend_diagram(d: &PlanarDiagram) -> Result<PlanarDiagram> {
    if d.m() != d.k() {
        return Err(mismatch("a square diagram".into(), d.signature()));
    }
    let n = d.m();
    let upper = tensor_diagrams(d, &PlanarDiagram::identity(n));
    let (out, loops) = compose_unchecked(&PlanarDiagram::nested_cups(n), &upper);
    debug_assert_eq!(loops, 0);
    Ok(out)
}

pub fn tl_bend(x: &TLElement) -> Result<TLElement> {
    if x.m != 0 || x.k % 2 == 1 {
        return Err(TlError::Parity(format!(
            "bending needs signature (0, 2n), got ({},{})",
            x.m, x.k
        )));
    }
    let n = x.k / 2;
    Ok(x.map_diagrams(n, n, |d| bend_diagram(d).expect("signature checked")))
}

pub fn tl_unbend(x: &TLElement) -> Result<TLElement> {
    if x.m != x.k {
        return Err(mismatch("a square element".into(), x.signature()));
    }
    Ok(x.map_diagrams(0, 2 * x.m, |d| unbend_diagram(d).expect("signature checked")))
}

impl Neg for &TLElement {
    type Output = TLElement;
    fn neg(self) -> TLElement {
        TLElement {
            m: self.m,
            k: self.k,
            terms: self.terms.iter().map(|(d, c)| (d.clone(), -c)).collect(),
        }
    }
}

/// Panics on signature mismatch; see [`TLElement::checked_add`].
impl Add for &TLElement {
    type Output = TLElement;
    fn add(self, rhs: &TLElement) -> TLElement {
        self.checked_add(rhs).expect("signature mismatch in addition")
    }
}

impl Sub for &TLElement {
    type Output = TLElement;
    fn sub(self, rhs: &TLElement) -> TLElement {
        self.checked_sub(rhs).expect("signature mismatch in subtraction")
    }
}

impl fmt::Display for TLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 in ({},{})", self.m, self.k);
        }
        let parts: Vec<String> = self.terms.iter().map(|(d, c)| format!("[{c}] {d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
