//! Integer partitions and r-tuples of partitions.
//!
//! Canonical order everywhere is reverse lexicographic: `(3) > (2,1) > (1,1,1)`,
//! and for tuples the componentwise lexicographic order, again reversed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::Error;

/// A weakly decreasing list of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Row length `λ_i`, 1-indexed; zero past the last row.
    pub fn row(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// Number of parts equal to `k`.
    pub fn multiplicity(&self, k: usize) -> usize {
        self.0.iter().filter(|&&p| p == k).count()
    }

    pub fn with_part(&self, k: usize) -> Partition {
        let mut v = self.0.clone();
        let pos = v.iter().position(|&p| p < k).unwrap_or(v.len());
        v.insert(pos, k);
        Partition(v)
    }

    /// Removes one part equal to `k`, if present.
    pub fn without_part(&self, k: usize) -> Option<Partition> {
        let pos = self.0.iter().position(|&p| p == k)?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some(Partition(v))
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.0.first().copied().unwrap_or(0);
        Partition((1..=w).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }

    /// `λ ≥ μ` in dominance order; false for different sizes.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (mut a, mut b) = (0usize, 0usize);
        for i in 0..self.len().max(other.len()) {
            a += self.row(i + 1);
            b += other.row(i + 1);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Boxes `(i, j)`, 1-indexed, row by row.
    pub fn boxes(&self) -> Vec<(usize, usize)> {
        self.0.iter().enumerate().flat_map(|(i, &r)| (1..=r).map(move |j| (i + 1, j))).collect()
    }

    /// `(arm, leg, content)` of a box.
    pub fn hook_data(&self, i: usize, j: usize) -> Result<(usize, usize, i64), Error> {
        if i == 0 || j == 0 || j > self.row(i) {
            return Err(Error::OutOfRange(format!("box ({i},{j}) not in {self}")));
        }
        let arm = self.row(i) - j;
        let leg = self.conjugate().row(j) - i;
        Ok((arm, leg, j as i64 - i as i64))
    }

    /// `z_λ = ∏ k^{m_k} m_k!`.
    pub fn z(&self) -> u128 {
        let mut acc: u128 = 1;
        let mut k = 0;
        while k < self.0.len() {
            let p = self.0[k];
            let mut m = 0;
            while k < self.0.len() && self.0[k] == p {
                m += 1;
                k += 1;
                acc *= (p as u128) * m as u128;
            }
        }
        acc
    }

    /// Number of standard Young tableaux by the hook length formula.
    pub fn standard_tableaux(&self) -> u128 {
        let n = self.size() as u128;
        let fact: u128 = (1..=n).product();
        let hooks: u128 = self
            .boxes()
            .iter()
            .map(|&(i, j)| {
                let (a, l, _) = self.hook_data(i, j).unwrap();
                (a + l + 1) as u128
            })
            .product();
        fact / hooks
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl From<&[usize]> for Partition {
    fn from(v: &[usize]) -> Self {
        Partition::new(v.to_vec())
    }
}

impl<const N: usize> From<[usize; N]> for Partition {
    fn from(v: [usize; N]) -> Self {
        Partition::new(v.to_vec())
    }
}

/// All partitions of `n`, reverse lexicographic.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            rec(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// An r-tuple of partitions, the basis label of the r-fold Fock space.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiPartition(pub Vec<Partition>);

impl MultiPartition {
    pub fn vacuum(r: usize) -> Self {
        MultiPartition(vec![Partition::empty(); r])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(Partition::size).sum()
    }

    pub fn component(&self, i: usize) -> &Partition {
        &self.0[i]
    }

    pub fn replace(&self, i: usize, p: Partition) -> MultiPartition {
        let mut v = self.0.clone();
        v[i] = p;
        MultiPartition(v)
    }
}

impl fmt::Debug for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "⊗")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// All r-tuples of total size `n`, in canonical order: componentwise
/// lexicographic, reversed.
pub fn multipartitions_of(n: usize, r: usize) -> Vec<MultiPartition> {
    fn rec(n: usize, r: usize, prefix: &mut Vec<Partition>, out: &mut Vec<MultiPartition>) {
        if r == 1 {
            for p in partitions_of(n) {
                prefix.push(p);
                out.push(MultiPartition(prefix.clone()));
                prefix.pop();
            }
            return;
        }
        for k in (0..=n).rev() {
            for p in partitions_of(k) {
                prefix.push(p);
                rec(n - k, r - 1, prefix, out);
                prefix.pop();
            }
        }
    }
    assert!(r >= 1, "rank must be positive");
    let mut out = Vec::new();
    rec(n, r, &mut Vec::new(), &mut out);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}
