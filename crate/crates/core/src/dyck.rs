//! Dyck paths, their counts, and the cut-reflect correspondence between paths
//! ending at height `2k` and marked level-`k` down-steps of closed paths.

use std::fmt;

use serde::Serialize;

use crate::bases::ColorSequence;
use crate::error::{Result, TlError};

/// A lattice path with unit steps from height 0 that never goes negative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DyckPath {
    heights: Vec<usize>,
}

impl DyckPath {
    pub fn from_heights(heights: Vec<usize>) -> Result<Self> {
        if heights.first() != Some(&0) {
            return Err(TlError::InvalidPath("must start at height 0".into()));
        }
        if heights.windows(2).any(|w| w[0].abs_diff(w[1]) != 1) {
            return Err(TlError::InvalidPath(format!("{heights:?} has a non-unit step")));
        }
        Ok(DyckPath { heights })
    }

    fn from_steps_signed(steps: &[i8]) -> Result<Self> {
        let mut h: Vec<usize> = Vec::with_capacity(steps.len() + 1);
        h.push(0);
        for &s in steps {
            let last = *h.last().unwrap();
            if s < 0 && last == 0 {
                return Err(TlError::InvalidPath("goes below the axis".into()));
            }
            h.push(if s > 0 { last + 1 } else { last - 1 });
        }
        Ok(DyckPath { heights: h })
    }

    /// Parses a word in `U` and `D`.
    pub fn from_word(word: &str) -> Result<Self> {
        let steps = word
            .chars()
            .map(|c| match c {
                'U' | 'u' => Ok(1),
                'D' | 'd' => Ok(-1),
                _ => Err(TlError::InvalidPath(format!("bad step {c:?}"))),
            })
            .collect::<Result<Vec<i8>>>()?;
        Self::from_steps_signed(&steps)
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    pub fn len(&self) -> usize {
        self.heights.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn end(&self) -> usize {
        *self.heights.last().unwrap()
    }

    pub fn word(&self) -> String {
        self.heights
            .windows(2)
            .map(|w| if w[1] > w[0] { 'U' } else { 'D' })
            .collect()
    }

    fn steps(&self) -> Vec<i8> {
        self.heights.windows(2).map(|w| if w[1] > w[0] { 1 } else { -1 }).collect()
    }

    /// Keeps the steps up to index `i` and appends the remaining steps in
    /// reverse order with directions flipped.
    fn reflect_after(&self, i: usize) -> Result<DyckPath> {
        let s = self.steps();
        let mut out: Vec<i8> = s[..i].to_vec();
        out.extend(s[i..].iter().rev().map(|x| -x));
        Self::from_steps_signed(&out)
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

pub fn path_from_sequence(seq: &ColorSequence) -> DyckPath {
    DyckPath {
        heights: seq.augmented(),
    }
}

pub fn sequence_from_path(p: &DyckPath) -> Result<ColorSequence> {
    let h = p.heights();
    if p.len() < 2 || p.len() % 2 == 1 || p.end() != 0 {
        return Err(TlError::InvalidPath(format!("{p} is not a closed path of even length")));
    }
    ColorSequence::new(h[1..h.len() - 1].to_vec())
}

/// `C(n, k)`; panics on `u128` overflow.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c.checked_mul((n - i) as u128).expect("binomial overflow") / (i as u128 + 1);
    }
    c
}

pub fn catalan(n: usize) -> u128 {
    binomial(2 * n, n) / (n as u128 + 1)
}

fn check_endpoint(a: usize, b: usize) -> Result<()> {
    if (a + b) % 2 == 1 {
        return Err(TlError::Parity(format!("({a},{b}) has odd coordinate sum")));
    }
    Ok(())
}

/// Number of Dyck paths from `(0,0)` to `(a,b)`, by the reflection principle.
pub fn dyck_count(a: usize, b: usize) -> Result<u128> {
    check_endpoint(a, b)?;
    if b > a {
        return Ok(0);
    }
    let j = (a - b) / 2;
    Ok(binomial(a, j) - if j == 0 { 0 } else { binomial(a, j - 1) })
}

/// All Dyck paths from `(0,0)` to `(a,b)`, in lexicographic order of heights.
pub fn enumerate_dyck(a: usize, b: usize) -> Result<Vec<DyckPath>> {
    check_endpoint(a, b)?;
    fn go(a: usize, b: usize, h: &mut Vec<usize>, out: &mut Vec<DyckPath>) {
        let cur = *h.last().unwrap();
        let left = a + 1 - h.len();
        if left == 0 {
            if cur == b {
                out.push(DyckPath { heights: h.clone() });
            }
            return;
        }
        for next in [cur.wrapping_sub(1), cur + 1] {
            if next == usize::MAX || next.abs_diff(b) > left - 1 {
                continue;
            }
            h.push(next);
            go(a, b, h, out);
            h.pop();
        }
    }
    let mut out = Vec::new();
    go(a, b, &mut vec![0], &mut out);
    Ok(out)
}

/// Maps a path ending at `(2n, 2k)` to a closed path with a marked level-`k`
/// down-step: cut at the last up-crossing of level `k`, reflect the tail.
pub fn phi_map(p: &DyckPath) -> Result<(DyckPath, usize)> {
    let h = p.heights();
    let l = p.len();
    if l % 2 == 1 || p.end() % 2 == 1 || p.end() == 0 {
        return Err(TlError::InvalidPath(format!("{p} does not end at (2n, 2k) with k >= 1")));
    }
    let k = p.end() / 2;
    let i = (1..l)
        .rev()
        .find(|&i| h[i] == k && h[i - 1] == k - 1 && h[i + 1] == k + 1)
        .ok_or_else(|| TlError::InvalidPath(format!("{p} never crosses level {k} upward")))?;
    let q = p.reflect_after(i)?;
    let hq = q.heights();
    let j = (i..l)
        .find(|&j| hq[j] == k && hq[j + 1] == k - 1)
        .ok_or_else(|| TlError::InvalidPath(format!("{q} has no level-{k} down-step after {i}")))?;
    Ok((q, j))
}

/// Inverse of [`phi_map`]: `(p, i)` with `h_i = k`, `h_{i+1} = k - 1`.
pub fn psi_map(p: &DyckPath, i: usize) -> Result<DyckPath> {
    let h = p.heights();
    let l = p.len();
    if p.end() != 0 || i >= l || h[i] == 0 || h[i + 1] + 1 != h[i] {
        return Err(TlError::InvalidPath(format!("({p}, {i}) is not a marked down-step")));
    }
    let k = h[i];
    let j = (1..=i)
        .rev()
        .find(|&j| h[j] == k && h[j - 1] == k - 1)
        .ok_or_else(|| TlError::InvalidPath(format!("{p} never reaches level {k} from below before {i}")))?;
    p.reflect_after(j)
}

/// Marked down-steps `(path, i)` with `h_i = k`, `h_{i+1} = k - 1` over all
/// closed paths of length `2n`, including the final step.
pub fn marked_downsteps(n: usize, k: usize) -> Vec<(DyckPath, usize)> {
    let mut out = Vec::new();
    for p in enumerate_dyck(2 * n, 0).expect("even endpoint") {
        for i in 0..2 * n {
            if p.heights[i] == k && p.heights[i + 1] + 1 == k {
                out.push((p.clone(), i));
            }
        }
    }
    out
}

pub fn downstep_census(n: usize, k: usize) -> usize {
    marked_downsteps(n, k).len()
}

#[derive(Clone, Debug, Serialize)]
pub struct BijectionReport {
    pub n: usize,
    pub k: usize,
    pub paths: usize,
    pub pairs: usize,
    pub expected: u128,
    /// `psi(phi(p)) = p` for every path ending at `(2n, 2k)`.
    pub psi_after_phi: bool,
    /// `phi(psi(x)) = x` for every marked down-step.
    pub phi_after_psi: bool,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.psi_after_phi
            && self.phi_after_psi
            && self.paths as u128 == self.expected
            && self.pairs as u128 == self.expected
    }
}

/// Exhaustively checks that `phi_map` and `psi_map` are inverse bijections.
pub fn bijection_check(n: usize, k: usize) -> Result<BijectionReport> {
    if k == 0 || k > n {
        return Err(TlError::InvalidIndex {
            index: k,
            range: format!("1..={n}"),
        });
    }
    let paths = enumerate_dyck(2 * n, 2 * k)?;
    let pairs = marked_downsteps(n, k);
    let psi_after_phi = paths.iter().all(|p| {
        phi_map(p)
            .and_then(|(q, i)| psi_map(&q, i))
            .is_ok_and(|back| back == *p)
    });
    let phi_after_psi = pairs.iter().all(|(q, i)| {
        psi_map(q, *i)
            .and_then(|p| phi_map(&p))
            .is_ok_and(|back| back == (q.clone(), *i))
    });
    Ok(BijectionReport {
        n,
        k,
        paths: paths.len(),
        pairs: pairs.len(),
        expected: dyck_count(2 * n, 2 * k)?,
        psi_after_phi,
        phi_after_psi,
    })
}
