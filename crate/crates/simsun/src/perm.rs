//! Permutations in one-line notation, their elementary statistics, and the
//! structural decompositions used by the bijections.
//!
//! Values and positions are 1-based throughout; insertion gaps are 0-based
//! (gap `g` means "after the first `g` entries"). The empty permutation is a
//! first-class value and serializes as the literal `e`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `{1, …, n}` in one-line notation. `n = 0` is allowed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    entries: Vec<u32>,
}

/// Statistics of a permutation: descent positions (1-based), inversion count,
/// left-to-right minima and right-to-left maxima (values, in position order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statistics {
    pub descent_positions: Vec<usize>,
    pub inversions: u64,
    pub left_to_right_minima: Vec<u32>,
    pub right_to_left_maxima: Vec<u32>,
}

impl Permutation {
    /// Builds a permutation from its one-line notation, validating that the
    /// entries are exactly `{1, …, n}`.
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n];
        for &v in &entries {
            if v == 0 || v as usize > n || seen[v as usize - 1] {
                return Err(Error::InvalidWord(format!(
                    "entries must be a permutation of 1..{n}"
                )));
            }
            seen[v as usize - 1] = true;
        }
        Ok(Permutation { entries })
    }

    pub fn empty() -> Self {
        Permutation { entries: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            entries: (1..=n as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// 1-based position of a value; panics if the value is not present.
    pub fn position_of(&self, value: u32) -> usize {
        self.entries.iter().position(|&v| v == value).unwrap() + 1
    }

    /// Inserts `n + 1` at gap `g` (0-based, `0 ≤ g ≤ n`), producing a
    /// permutation one longer.
    pub fn insert_max(&self, gap: usize) -> Permutation {
        debug_assert!(gap <= self.len());
        let mut entries = Vec::with_capacity(self.len() + 1);
        entries.extend_from_slice(&self.entries[..gap]);
        entries.push(self.len() as u32 + 1);
        entries.extend_from_slice(&self.entries[gap..]);
        Permutation { entries }
    }

    /// Removes the maximum entry and returns the shorter permutation.
    pub fn delete_max(&self) -> Result<Permutation> {
        if self.is_empty() {
            return Err(Error::EmptyPermutation);
        }
        let n = self.len() as u32;
        let entries = self.entries.iter().copied().filter(|&v| v != n).collect();
        Ok(Permutation { entries })
    }

    /// The group inverse: `q` with `q[p_i] = i`.
    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.len()];
        for (i, &v) in self.entries.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Permutation { entries: inv }
    }

    /// Reverses the one-line notation.
    pub fn reverse(&self) -> Permutation {
        let entries = self.entries.iter().rev().copied().collect();
        Permutation { entries }
    }

    /// Replaces each entry `v` by `n + 1 − v`.
    pub fn complement(&self) -> Permutation {
        let n = self.len() as u32;
        let entries = self.entries.iter().map(|&v| n + 1 - v).collect();
        Permutation { entries }
    }
}

/// Order-isomorphic relabeling of a word with distinct entries onto `{1..k}`.
pub fn reduce(word: &[u32]) -> Result<Permutation> {
    let mut sorted: Vec<u32> = word.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidWord("duplicate entries".into()));
    }
    let entries = word
        .iter()
        .map(|v| sorted.binary_search(v).unwrap() as u32 + 1)
        .collect();
    Ok(Permutation { entries })
}

/// Removes the entry `1` and reduces (shifts every other entry down by one).
pub fn delete_smallest(p: &Permutation) -> Result<Permutation> {
    if p.is_empty() {
        return Err(Error::EmptyPermutation);
    }
    let entries = p
        .entries
        .iter()
        .filter(|&&v| v != 1)
        .map(|&v| v - 1)
        .collect();
    Ok(Permutation { entries })
}

/// Computes descents, inversions, left-to-right minima and right-to-left
/// maxima in one pass each.
pub fn statistics(p: &Permutation) -> Statistics {
    let e = &p.entries;
    let descent_positions = (0..e.len().saturating_sub(1))
        .filter(|&i| e[i] > e[i + 1])
        .map(|i| i + 1)
        .collect();

    let mut inversions = 0u64;
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            if e[i] > e[j] {
                inversions += 1;
            }
        }
    }

    let mut left_to_right_minima = Vec::new();
    let mut min = u32::MAX;
    for &v in e {
        if v < min {
            min = v;
            left_to_right_minima.push(v);
        }
    }

    let mut right_to_left_maxima = Vec::new();
    let mut max = 0u32;
    for &v in e.iter().rev() {
        if v > max {
            max = v;
            right_to_left_maxima.push(v);
        }
    }
    right_to_left_maxima.reverse();

    Statistics {
        descent_positions,
        inversions,
        left_to_right_minima,
        right_to_left_maxima,
    }
}

/// Splits `p = σ n τ` at the maximum entry, returning the raw (unreduced)
/// words left and right of `n`.
pub fn decompose_at_max(p: &Permutation) -> Result<(Vec<u32>, Vec<u32>)> {
    if p.is_empty() {
        return Err(Error::EmptyPermutation);
    }
    let pos = p.position_of(p.len() as u32);
    Ok((p.entries[..pos - 1].to_vec(), p.entries[pos..].to_vec()))
}

/// The finest factorization `p = w₁ w₂ … w_m` where every block's value set
/// is an interval and blocks carry increasing values. Blocks are raw words.
pub fn split_min_components(p: &Permutation) -> Vec<Vec<u32>> {
    let mut blocks = Vec::new();
    let mut start = 0usize;
    let mut max = 0u32;
    for (i, &v) in p.entries.iter().enumerate() {
        max = max.max(v);
        if max as usize == i + 1 {
            blocks.push(p.entries[start..=i].to_vec());
            start = i + 1;
        }
    }
    blocks
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "e");
        }
        let mut first = true;
        for v in &self.entries {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(Permutation::empty());
        }
        let entries: Vec<u32> = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u32>()
                    .map_err(|_| Error::ParseError(format!("bad entry `{tok}`")))
            })
            .collect::<Result<_>>()?;
        Permutation::new(entries).map_err(|_| {
            Error::ParseError(format!("`{s}` is not a permutation of 1..n"))
        })
    }
}

/// Convenience constructor for tests and fixtures: parses one-line notation.
pub fn perm(s: &str) -> Permutation {
    s.parse().expect("valid permutation literal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(&[7, 5, 6]).unwrap(), perm("3 1 2"));
        assert_eq!(reduce(&[]).unwrap(), Permutation::empty());
        // an already-reduced word is a fixed point
        let w = [10, 8, 9, 7, 11, 4, 3, 5, 6, 12, 1, 2];
        assert_eq!(reduce(&w).unwrap().entries(), &w);
        assert!(matches!(reduce(&[2, 2]), Err(Error::InvalidWord(_))));
    }

    #[test]
    fn delete_smallest_examples() {
        assert_eq!(delete_smallest(&perm("3 1 2")).unwrap(), perm("2 1"));
        assert_eq!(delete_smallest(&perm("1")).unwrap(), Permutation::empty());
        assert_eq!(delete_smallest(&perm("2 3 4 1")).unwrap(), perm("1 2 3"));
        assert!(matches!(
            delete_smallest(&Permutation::empty()),
            Err(Error::EmptyPermutation)
        ));
    }

    #[test]
    fn statistics_examples() {
        let s = statistics(&perm("4 1 3 2 5"));
        assert_eq!(s.descent_positions, vec![1, 3]);
        assert_eq!(s.inversions, 4);
        assert_eq!(s.left_to_right_minima, vec![4, 1]);
        assert_eq!(s.right_to_left_maxima, vec![5]);

        let id = statistics(&perm("1 2 3 4 5"));
        assert!(id.descent_positions.is_empty());
        assert_eq!(id.inversions, 0);

        let s = statistics(&perm("7 5 6 8 2 3 4 1"));
        assert_eq!(s.left_to_right_minima, vec![7, 5, 2, 1]);
    }

    #[test]
    fn decompose_at_max_examples() {
        let (sigma, tau) = decompose_at_max(&perm("7 5 6 8 2 3 4 1")).unwrap();
        assert_eq!(sigma, vec![7, 5, 6]);
        assert_eq!(tau, vec![2, 3, 4, 1]);

        assert_eq!(decompose_at_max(&perm("1")).unwrap(), (vec![], vec![]));
        assert_eq!(
            decompose_at_max(&perm("3 1 2")).unwrap(),
            (vec![], vec![1, 2])
        );
        assert!(decompose_at_max(&Permutation::empty()).is_err());
    }

    #[test]
    fn split_min_components_examples() {
        assert_eq!(
            split_min_components(&perm("4 1 3 2 8 5 6 7")),
            vec![vec![4, 1, 3, 2], vec![8, 5, 6, 7]]
        );
        assert_eq!(
            split_min_components(&perm("1 2 3")),
            vec![vec![1], vec![2], vec![3]]
        );
        assert_eq!(split_min_components(&perm("2 1")), vec![vec![2, 1]]);
        assert!(split_min_components(&Permutation::empty()).is_empty());
    }

    #[test]
    fn decompose_then_reinsert_is_identity() {
        for p in crate::census::all_permutations(6) {
            let (sigma, tau) = decompose_at_max(&p).unwrap();
            let mut w = sigma.clone();
            w.push(p.len() as u32);
            w.extend_from_slice(&tau);
            assert_eq!(Permutation::new(w).unwrap(), p);
        }
    }

    #[test]
    fn split_blocks_are_increasing_intervals() {
        for p in crate::census::all_permutations(6) {
            let blocks = split_min_components(&p);
            let mut concat = Vec::new();
            let mut next = 1u32;
            for b in &blocks {
                let mut vals: Vec<u32> = b.clone();
                vals.sort_unstable();
                // each block's value set is the next interval of values
                assert_eq!(vals, (next..next + b.len() as u32).collect::<Vec<_>>());
                next += b.len() as u32;
                concat.extend_from_slice(b);
            }
            assert_eq!(concat, p.entries());
        }
    }

    #[test]
    fn inversions_match_merge_free_double_loop() {
        // cross-check the double loop against a descent-sum-by-value count
        for p in crate::census::all_permutations(7) {
            let inv = statistics(&p).inversions;
            let mut alt = 0u64;
            for v in 1..=p.len() as u32 {
                let pos = p.position_of(v);
                alt += p.entries()[..pos - 1].iter().filter(|&&x| x > v).count() as u64;
            }
            assert_eq!(inv, alt);
        }
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent(word in proptest::collection::vec(1u32..1000, 0..10)) {
            let mut w = word.clone();
            w.sort_unstable();
            w.dedup();
            // shuffle deterministically by reversing alternate halves
            let distinct: Vec<u32> = w.iter().rev().copied().collect();
            let once = reduce(&distinct).unwrap();
            let twice = reduce(once.entries()).unwrap();
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn display_parse_round_trip(n in 0usize..10, seed in 0u64..1000) {
            let mut entries: Vec<u32> = (1..=n as u32).collect();
            // cheap deterministic shuffle
            let mut s = seed;
            for i in (1..entries.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                entries.swap(i, (s % (i as u64 + 1)) as usize);
            }
            let p = Permutation::new(entries).unwrap();
            let back: Permutation = p.to_string().parse().unwrap();
            prop_assert_eq!(p, back);
        }
    }
}
