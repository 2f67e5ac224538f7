use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector `(i_1, ..., i_k)` of a partial derivative or a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

/// Which multi-indices [`enumerate`] produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Enumeration {
    /// Only indices with `|I| = t`.
    ExactOrder,
    /// All indices with `|I| <= t`.
    UpToOrder,
}

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zero(k: usize) -> Self {
        MultiIndex(vec![0; k])
    }

    pub fn unit(k: usize, j: usize) -> Self {
        let mut e = vec![0; k];
        e[j] = 1;
        MultiIndex(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `|I|`.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, j: usize) -> u32 {
        self.0[j]
    }

    /// `I + e_j`.
    pub fn raised(&self, j: usize) -> Self {
        let mut e = self.0.clone();
        e[j] += 1;
        MultiIndex(e)
    }

    /// `I - e_j`, or `None` when `i_j = 0`.
    pub fn lowered(&self, j: usize) -> Option<Self> {
        if self.0[j] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[j] -= 1;
        Some(MultiIndex(e))
    }

    /// Componentwise sum.
    pub fn sum(&self, other: &MultiIndex) -> Self {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Index of the last nonzero entry.
    pub fn last_nonzero(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e != 0)
    }

    /// `I! = i_1! ... i_k!`.
    pub fn factorial(&self) -> u64 {
        self.0.iter().map(|&e| (1..=e as u64).product::<u64>()).product()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Multi-indices of `k` entries in graded order: by `|I|` ascending, and
/// within one grade lexicographically with larger leading exponents first,
/// e.g. `(2,0), (1,1), (0,2)`.
pub fn enumerate(k: usize, t: u32, mode: Enumeration) -> Vec<MultiIndex> {
    assert!(k >= 1, "multi-indices need at least one variable");
    let grades = match mode {
        Enumeration::ExactOrder => t..=t,
        Enumeration::UpToOrder => 0..=t,
    };
    let mut out = Vec::new();
    let mut scratch = vec![0u32; k];
    for grade in grades {
        fill_grade(&mut scratch, 0, grade, &mut out);
    }
    out
}

fn fill_grade(scratch: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
    if pos + 1 == scratch.len() {
        scratch[pos] = remaining;
        out.push(MultiIndex(scratch.to_vec()));
        return;
    }
    for e in (0..=remaining).rev() {
        scratch[pos] = e;
        fill_grade(scratch, pos + 1, remaining - e, out);
    }
}

/// Binomial coefficient as `usize`.
pub fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of multi-indices of `k` entries with `|I| = t`.
pub fn count_exact(k: usize, t: u32) -> usize {
    binomial(k - 1 + t as usize, t as usize)
}

/// Number of multi-indices of `k` entries with `|I| <= t`.
pub fn count_up_to(k: usize, t: u32) -> usize {
    binomial(k + t as usize, t as usize)
}
