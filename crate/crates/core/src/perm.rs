//! Permutations of `0..n` in one-line notation.
//!
//! Composition is "right factor first": `compose(p, q)(i) = p(q(i))`.
//! Letters are 0-indexed everywhere in code; [`CycleDecomposition`]'s
//! `Display` is the only place they are shifted to 1-indexed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize("a permutation needs at least one letter".into()));
        }
        Ok(Permutation {
            images: (0..n).collect(),
        })
    }

    /// Builds a permutation from one-line notation, checking it is a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidSize("a permutation needs at least one letter".into()));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {x} out of range for {n} letters"
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!("image {x} repeated")));
            }
        }
        Ok(Permutation { images })
    }

    /// The transposition swapping letters `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        let mut p = Permutation::identity(n)?;
        if a >= n || b >= n {
            return Err(Error::InvalidPermutation(format!(
                "transposition ({a} {b}) out of range for {n} letters"
            )));
        }
        p.images.swap(a, b);
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, letter: usize) -> usize {
        self.images[letter]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: `other` is applied first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// Right-multiplies in place by the transposition of `a` and `b`.
    pub(crate) fn swap_positions(&mut self, a: usize, b: usize) {
        self.images.swap(a, b);
    }

    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        // Scanning starts in increasing order, so every cycle begins at its
        // minimum and cycles come out sorted by minimum.
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            cycles.push(cycle);
        }
        CycleDecomposition { n, cycles }
    }

    /// Cycle lengths, largest first.
    pub fn cycle_type(&self) -> Partition {
        let mut lengths = self.cycle_lengths();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_sorted_unchecked(lengths)
    }

    /// Number of cycles, fixed points included.
    pub fn num_cycles(&self) -> usize {
        count_cycles(&self.images, &mut vec![false; self.n()])
    }

    fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x];
            }
            lengths.push(len);
        }
        lengths
    }

    /// Position of this permutation in lexicographic order of one-line
    /// notation (Lehmer code). Only meaningful while `n!` fits in a `usize`.
    pub fn lex_rank(&self) -> usize {
        lex_rank(&self.images)
    }
}

pub(crate) fn lex_rank(images: &[usize]) -> usize {
    let n = images.len();
    let mut rank = 0usize;
    for i in 0..n {
        let smaller_later = images[i + 1..].iter().filter(|&&x| x < images[i]).count();
        rank = rank * (n - i) + smaller_later;
    }
    rank
}

/// Cycle count of a one-line image slice, using `seen` as scratch.
pub(crate) fn count_cycles(images: &[usize], seen: &mut [bool]) -> usize {
    seen.iter_mut().for_each(|s| *s = false);
    let mut cycles = 0;
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = images[x];
        }
    }
    cycles
}

/// Writes the cycle lengths of `images` into `out`, largest first.
pub(crate) fn cycle_type_into(images: &[usize], seen: &mut [bool], out: &mut Vec<usize>) {
    seen.iter_mut().for_each(|s| *s = false);
    out.clear();
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            len += 1;
            x = images[x];
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

/// Disjoint cycles in canonical form: each cycle starts at its smallest
/// letter, cycles are sorted by that letter, fixed points are 1-cycles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleDecomposition {
    n: usize,
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    /// Canonicalizes arbitrary disjoint cycles covering `0..n` exactly once.
    pub fn from_cycles(n: usize, cycles: Vec<Vec<usize>>) -> Result<Self> {
        let mut images = vec![usize::MAX; n];
        for cycle in &cycles {
            if cycle.is_empty() {
                return Err(Error::InvalidPermutation("empty cycle".into()));
            }
            for (j, &x) in cycle.iter().enumerate() {
                let next = cycle[(j + 1) % cycle.len()];
                if x >= n || next >= n || images[x] != usize::MAX {
                    return Err(Error::InvalidPermutation(format!(
                        "letter {x} repeated or out of range"
                    )));
                }
                images[x] = next;
            }
        }
        if images.contains(&usize::MAX) {
            return Err(Error::InvalidPermutation("cycles do not cover every letter".into()));
        }
        Ok(Permutation::from_images(images)?.cycle_decomposition())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn to_permutation(&self) -> Permutation {
        let mut images = vec![0; self.n];
        for cycle in &self.cycles {
            for (j, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(j + 1) % cycle.len()];
            }
        }
        Permutation { images }
    }

    /// Cycles shifted to 1-indexed letters.
    pub fn one_indexed(&self) -> Vec<Vec<usize>> {
        self.cycles
            .iter()
            .map(|c| c.iter().map(|&x| x + 1).collect())
            .collect()
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in &self.cycles {
            write!(f, "(")?;
            for (j, x) in cycle.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Every permutation of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> AllPermutations {
    AllPermutations {
        next: (0..n).collect::<Vec<_>>().into(),
    }
}

pub struct AllPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        if current.is_empty() {
            return None;
        }
        let mut succ = current.clone();
        if next_lexicographic(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation { images: current })
    }
}

fn next_lexicographic(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    #[test]
    fn identity_cases() {
        assert_eq!(Permutation::identity(3).unwrap().images(), &[0, 1, 2]);
        assert_eq!(Permutation::identity(1).unwrap().images(), &[0]);
        assert_eq!(Permutation::identity(5).unwrap().num_cycles(), 5);
        assert!(matches!(Permutation::identity(0), Err(Error::InvalidSize(_))));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_images(vec![]).is_err());
    }

    #[test]
    fn compose_adjacent_transpositions() {
        let t01 = Permutation::transposition(3, 0, 1).unwrap();
        let t12 = Permutation::transposition(3, 1, 2).unwrap();
        // t12 first: 0 -> 0 -> 1, 1 -> 2 -> 2, 2 -> 1 -> 0.
        let c = t01.compose(&t12).unwrap();
        assert_eq!(c.images(), &[1, 2, 0]);
        assert_eq!(c.num_cycles(), 1);
    }

    #[test]
    fn compose_rejects_mismatch() {
        let a = Permutation::identity(3).unwrap();
        let b = Permutation::identity(4).unwrap();
        assert!(matches!(
            a.compose(&b),
            Err(Error::SizeMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn decomposition_examples() {
        let id = Permutation::identity(4).unwrap().cycle_decomposition();
        assert_eq!(id.cycles(), &[vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(
            perm(&[1, 0, 3, 2]).cycle_decomposition().cycles(),
            &[vec![0, 1], vec![2, 3]]
        );
        assert_eq!(perm(&[1, 2, 0]).cycle_decomposition().cycles(), &[vec![0, 1, 2]]);
        assert_eq!(perm(&[1, 2, 0, 4, 3]).cycle_decomposition().to_string(), "(1 2 3)(4 5)");
    }

    #[test]
    fn cycle_type_and_count_examples() {
        assert_eq!(Permutation::identity(4).unwrap().cycle_type().parts(), &[1, 1, 1, 1]);
        assert_eq!(perm(&[1, 0, 3, 2]).cycle_type().parts(), &[2, 2]);
        assert_eq!(perm(&[1, 2, 0, 3]).cycle_type().parts(), &[3, 1]);
        assert_eq!(Permutation::identity(6).unwrap().num_cycles(), 6);
        assert_eq!(perm(&[1, 2, 0]).num_cycles(), 1);
        assert_eq!(perm(&[1, 0, 3, 2]).num_cycles(), 2);
    }

    #[test]
    fn from_cycles_canonicalizes() {
        let d = CycleDecomposition::from_cycles(5, vec![vec![4, 3], vec![2, 0, 1]]).unwrap();
        assert_eq!(d.cycles(), &[vec![0, 1, 2], vec![3, 4]]);
        assert!(CycleDecomposition::from_cycles(3, vec![vec![0, 1]]).is_err());
        assert!(CycleDecomposition::from_cycles(3, vec![vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn enumeration_counts_and_ranks() {
        for n in 1..=6 {
            let all: Vec<_> = all_permutations(n).collect();
            let expected: usize = (1..=n).product();
            assert_eq!(all.len(), expected);
            for (r, p) in all.iter().enumerate() {
                assert_eq!(p.lex_rank(), r);
            }
        }
    }

    #[test]
    fn exhaustive_round_trip_and_type_invariants() {
        for n in 1..=6 {
            for p in all_permutations(n) {
                let d = p.cycle_decomposition();
                assert_eq!(d.to_permutation(), p);
                let t = p.cycle_type();
                assert_eq!(t.n(), n);
                assert_eq!(t.len(), p.num_cycles());
                assert_eq!(d.len(), p.num_cycles());
                assert!(p.compose(&p.inverse()).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn exhaustive_conjugation_invariance() {
        for n in 1..=5 {
            let all: Vec<_> = all_permutations(n).collect();
            for p in &all {
                for g in &all {
                    let conj = g.compose(p).unwrap().compose(&g.inverse()).unwrap();
                    assert_eq!(conj.num_cycles(), p.num_cycles());
                }
            }
        }
    }
}
