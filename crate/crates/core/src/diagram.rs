//! Planar non-crossing diagrams between `m` bottom and `k` top points.
//!
//! Boundary points are numbered circularly: bottom points `0..m` from left to
//! right, then top points from right to left. The top point `j` (counted from
//! the left, 0-based) therefore has index `m + k - 1 - j`. In this numbering a
//! perfect matching is planar exactly when its arcs are properly nested.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, TlError};

/// A boundary point labelled as in pictures: `B(j)` / `T(j)` with `j` counted
/// from 1 at the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum End {
    B(usize),
    T(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "DiagramRepr", into = "DiagramRepr")]
pub struct PlanarDiagram {
    m: usize,
    k: usize,
    mat: Vec<u16>,
}

#[derive(Serialize, Deserialize)]
struct DiagramRepr {
    m: usize,
    k: usize,
    #[serde(rename = "match")]
    mat: Vec<usize>,
}

impl TryFrom<DiagramRepr> for PlanarDiagram {
    type Error = TlError;
    fn try_from(r: DiagramRepr) -> Result<Self> {
        PlanarDiagram::new(r.m, r.k, r.mat)
    }
}

impl From<PlanarDiagram> for DiagramRepr {
    fn from(d: PlanarDiagram) -> Self {
        DiagramRepr {
            m: d.m,
            k: d.k,
            mat: d.mat.iter().map(|&x| x as usize).collect(),
        }
    }
}

fn is_nested(mat: &[u16]) -> bool {
    let mut stack = Vec::with_capacity(mat.len() / 2);
    for (p, &q) in mat.iter().enumerate() {
        let q = q as usize;
        if q > p {
            stack.push(p);
        } else if stack.pop() != Some(q) {
            return false;
        }
    }
    stack.is_empty()
}

impl PlanarDiagram {
    /// Validates a matching given in circular indices.
    pub fn new(m: usize, k: usize, mat: Vec<usize>) -> Result<Self> {
        let n = m + k;
        if mat.len() != n {
            return Err(TlError::InvalidDiagram(format!(
                "matching has {} entries for {} points",
                mat.len(),
                n
            )));
        }
        if n % 2 == 1 {
            return Err(TlError::InvalidDiagram(format!("odd number of points {n}")));
        }
        if n > u16::MAX as usize {
            return Err(TlError::InvalidDiagram("too many points".into()));
        }
        for (p, &q) in mat.iter().enumerate() {
            if q >= n || q == p || mat[q] != p {
                return Err(TlError::InvalidDiagram(format!(
                    "not a fixed-point-free involution at point {p}"
                )));
            }
        }
        let mat: Vec<u16> = mat.into_iter().map(|q| q as u16).collect();
        if !is_nested(&mat) {
            return Err(TlError::InvalidDiagram("arcs cross".into()));
        }
        Ok(PlanarDiagram { m, k, mat })
    }

    /// Builds a diagram from arcs between labelled boundary points.
    pub fn from_pairs(m: usize, k: usize, pairs: &[(End, End)]) -> Result<Self> {
        let mut mat = vec![usize::MAX; m + k];
        for &(x, y) in pairs {
            let p = Self::index_of(m, k, x)?;
            let q = Self::index_of(m, k, y)?;
            if mat[p] != usize::MAX || mat[q] != usize::MAX {
                return Err(TlError::InvalidDiagram("point used twice".into()));
            }
            mat[p] = q;
            mat[q] = p;
        }
        if mat.contains(&usize::MAX) {
            return Err(TlError::InvalidDiagram("unmatched point".into()));
        }
        PlanarDiagram::new(m, k, mat)
    }

    fn index_of(m: usize, k: usize, e: End) -> Result<usize> {
        match e {
            End::B(j) if (1..=m).contains(&j) => Ok(j - 1),
            End::T(j) if (1..=k).contains(&j) => Ok(m + k - j),
            End::B(j) | End::T(j) => Err(TlError::InvalidIndex {
                index: j,
                range: format!("boundary of a ({m},{k}) diagram"),
            }),
        }
    }

    fn end_of(&self, p: usize) -> End {
        if p < self.m {
            End::B(p + 1)
        } else {
            End::T(self.m + self.k - p)
        }
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

    /// Partner of circular index `p`.
    pub fn partner(&self, p: usize) -> usize {
        self.mat[p] as usize
    }

    pub fn matching(&self) -> Vec<usize> {
        self.mat.iter().map(|&q| q as usize).collect()
    }

    /// Arcs as labelled pairs, each listed once from its smaller index.
    pub fn pairs(&self) -> Vec<(End, End)> {
        (0..self.mat.len())
            .filter(|&p| self.partner(p) > p)
            .map(|p| (self.end_of(p), self.end_of(self.partner(p))))
            .collect()
    }

    /// Number of strands joining the bottom to the top.
    pub fn through_strands(&self) -> usize {
        (0..self.m).filter(|&p| self.partner(p) >= self.m).count()
    }

    /// The empty diagram in `Hom(0, 0)`.
    pub fn empty() -> Self {
        PlanarDiagram { m: 0, k: 0, mat: vec![] }
    }

    pub fn identity(n: usize) -> Self {
        let mat = (0..2 * n).map(|p| (2 * n - 1 - p) as u16).collect();
        PlanarDiagram { m: n, k: n, mat }
    }

    /// The generator `e_i` of `TL_n`, `1 <= i <= n - 1`.
    pub fn e(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(TlError::InvalidIndex {
                index: i,
                range: format!("1..={}", n.saturating_sub(1)),
            });
        }
        Ok(tensor_diagrams(
            &tensor_diagrams(&Self::identity(i - 1), &tensor_diagrams(&Self::cup(), &Self::cap())),
            &Self::identity(n - i - 1),
        ))
    }

    /// The cup in `Hom(0, 2)`.
    pub fn cup() -> Self {
        PlanarDiagram { m: 0, k: 2, mat: vec![1, 0] }
    }

    /// The cap in `Hom(2, 0)`.
    pub fn cap() -> Self {
        PlanarDiagram { m: 2, k: 0, mat: vec![1, 0] }
    }

    /// `n` nested caps in `Hom(2n, 0)`: bottom `j` pairs with bottom `2n+1-j`.
    pub fn nested_caps(n: usize) -> Self {
        let mat = (0..2 * n).map(|p| (2 * n - 1 - p) as u16).collect();
        PlanarDiagram { m: 2 * n, k: 0, mat }
    }

    /// `n` nested cups in `Hom(0, 2n)`.
    pub fn nested_cups(n: usize) -> Self {
        mirror_diagram(&Self::nested_caps(n))
    }

    /// ASCII rendering: the top row then the bottom row, read left to right.
    /// Arcs within a row are brackets and through-strands are `|`.
    pub fn render_ascii(&self) -> String {
        let glyph = |p: usize, bottom: bool| -> char {
            let q = self.partner(p);
            let same_row = (q < self.m) == bottom;
            if !same_row {
                '|'
            } else if (q > p) == bottom {
                '('
            } else {
                ')'
            }
        };
        let n = self.m + self.k;
        let top: String = (0..self.k).map(|j| glyph(n - 1 - j, false)).collect();
        let bottom: String = (0..self.m).map(|j| glyph(j, true)).collect();
        let row = |s: String| if s.is_empty() { ".".to_string() } else { s };
        format!("{}\n{}", row(top), row(bottom))
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .pairs()
            .iter()
            .map(|(x, y)| format!("{}-{}", end_label(*x), end_label(*y)))
            .collect();
        write!(f, "({},{})[{}]", self.m, self.k, pairs.join(" "))
    }
}

fn end_label(e: End) -> String {
    match e {
        End::B(j) => format!("b{j}"),
        End::T(j) => format!("t{j}"),
    }
}

fn noncrossing_matchings(n: usize) -> Vec<Vec<u16>> {
    fn fill(lo: usize, hi: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>, rest: &mut Vec<(usize, usize)>) {
        if lo >= hi {
            match rest.pop() {
                None => out.push(cur.clone()),
                Some((a, b)) => {
                    fill(a, b, cur, out, rest);
                    rest.push((a, b));
                }
            }
            return;
        }
        let mut q = lo + 1;
        while q < hi {
            cur[lo] = q as u16;
            cur[q] = lo as u16;
            rest.push((q + 1, hi));
            fill(lo + 1, q, cur, out, rest);
            rest.pop();
            q += 2;
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![0u16; n];
    fill(0, n, &mut cur, &mut out, &mut Vec::new());
    out
}

/// All planar diagrams in `Hom(m, k)`, sorted.
pub fn enumerate_hom(m: usize, k: usize) -> Vec<PlanarDiagram> {
    if (m + k) % 2 == 1 {
        return vec![];
    }
    let mut v: Vec<PlanarDiagram> = noncrossing_matchings(m + k)
        .into_iter()
        .map(|mat| PlanarDiagram { m, k, mat })
        .collect();
    v.sort();
    v
}

/// The diagram basis of `TL_n`, in lexicographic order of the matching.
pub fn enumerate_diagrams(n: usize) -> Vec<PlanarDiagram> {
    enumerate_hom(n, n)
}

/// Stacks `upper` on top of `lower`, returning the reduced diagram and the
/// number of closed loops removed.
pub fn compose_diagrams(lower: &PlanarDiagram, upper: &PlanarDiagram) -> Result<(PlanarDiagram, usize)> {
    if lower.k != upper.m {
        return Err(TlError::SignatureMismatch {
            expected: format!("upper with {} bottom points", lower.k),
            got: format!("({},{})", upper.m, upper.k),
        });
    }
    Ok(compose_unchecked(lower, upper))
}

pub(crate) fn compose_unchecked(lower: &PlanarDiagram, upper: &PlanarDiagram) -> (PlanarDiagram, usize) {
    let (m1, k1) = (lower.m, lower.k);
    let k2 = upper.k;
    let top1 = (m1 + k1).saturating_sub(1);
    let n = m1 + k2;
    let mut mat = vec![0u16; n];
    let mut done = vec![false; n];
    let mut seen = vec![false; k1];

    // Leaves `lower` at its top point `t` and follows the strand to the outside.
    let run = |mut t: usize, seen: &mut Vec<bool>| -> usize {
        loop {
            seen[t] = true;
            let u = upper.mat[t] as usize;
            if u >= k1 {
                return u - k1 + m1;
            }
            seen[u] = true;
            let q = lower.mat[top1 - u] as usize;
            if q < m1 {
                return q;
            }
            t = top1 - q;
        }
    };

    for p in 0..m1 {
        if done[p] {
            continue;
        }
        let q = lower.mat[p] as usize;
        let end = if q < m1 { q } else { run(top1 - q, &mut seen) };
        mat[p] = end as u16;
        mat[end] = p as u16;
        done[end] = true;
    }
    for u in k1..k1 + k2 {
        let v = upper.mat[u] as usize;
        let p = u - k1 + m1;
        if v >= k1 {
            mat[p] = (v - k1 + m1) as u16;
        } else if !seen[v] {
            let end = run_from_upper(lower, upper, v, &mut seen);
            mat[p] = end as u16;
            mat[end] = p as u16;
        }
    }

    let mut loops = 0;
    for t in 0..k1 {
        if !seen[t] {
            loops += 1;
            let mut cur = t;
            while !seen[cur] {
                seen[cur] = true;
                let a = upper.mat[cur] as usize;
                seen[a] = true;
                let b = lower.mat[top1 - a] as usize;
                cur = top1 - b;
            }
        }
    }
    (PlanarDiagram { m: m1, k: k2, mat }, loops)
}

/// Enters `lower` from `upper` at middle point `v` and follows to the outside.
/// Only reached when the strand cannot end on the bottom of `lower`, which
/// would have been seen from that side already.
fn run_from_upper(lower: &PlanarDiagram, upper: &PlanarDiagram, mut v: usize, seen: &mut [bool]) -> usize {
    let (m1, k1) = (lower.m, lower.k);
    let top1 = (m1 + k1).saturating_sub(1);
    loop {
        seen[v] = true;
        let q = lower.mat[top1 - v] as usize;
        debug_assert!(q >= m1, "strands to the bottom are traced from below");
        let t = top1 - q;
        seen[t] = true;
        let u = upper.mat[t] as usize;
        if u >= k1 {
            return u - k1 + m1;
        }
        v = u;
    }
}

/// Side-by-side juxtaposition, `left` first on both edges.
pub fn tensor_diagrams(left: &PlanarDiagram, right: &PlanarDiagram) -> PlanarDiagram {
    let (m1, k1, m2, k2) = (left.m, left.k, right.m, right.k);
    let (m, k) = (m1 + m2, k1 + k2);
    let last = (m + k).saturating_sub(1);
    let from_left = |p: usize| if p < m1 { p } else { last - (m1 + k1 - 1 - p) };
    let from_right = |p: usize| if p < m2 { m1 + p } else { last - (k1 + m2 + k2 - 1 - p) };
    let mut mat = vec![0u16; m + k];
    for p in 0..m1 + k1 {
        mat[from_left(p)] = from_left(left.mat[p] as usize) as u16;
    }
    for p in 0..m2 + k2 {
        mat[from_right(p)] = from_right(right.mat[p] as usize) as u16;
    }
    PlanarDiagram { m, k, mat }
}

/// Top-bottom reflection.
pub fn mirror_diagram(d: &PlanarDiagram) -> PlanarDiagram {
    let (m, k) = (d.m, d.k);
    let last = (m + k).saturating_sub(1);
    // bottom j -> top j, top j -> bottom j; this reverses the circular order
    let f = |p: usize| last - p;
    let mut mat = vec![0u16; m + k];
    for p in 0..m + k {
        mat[f(p)] = f(d.mat[p] as usize) as u16;
    }
    PlanarDiagram { m: k, k: m, mat }
}

/// Loops in the trace closure, where top `j` is joined to bottom `j` around
/// the side.
pub fn closure_loops(d: &PlanarDiagram) -> Result<usize> {
    if d.m != d.k {
        return Err(TlError::SignatureMismatch {
            expected: "a square diagram".into(),
            got: format!("({},{})", d.m, d.k),
        });
    }
    let last = 2 * d.m;
    let mut seen = vec![false; last];
    let mut loops = 0;
    for p in 0..last {
        if !seen[p] {
            loops += 1;
            let mut cur = p;
            while !seen[cur] {
                seen[cur] = true;
                let q = d.mat[cur] as usize;
                seen[q] = true;
                cur = last - 1 - q;
            }
        }
    }
    Ok(loops)
}
