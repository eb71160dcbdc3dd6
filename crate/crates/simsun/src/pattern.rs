//! Classical and vincular (generalized) pattern containment.
//!
//! A vincular pattern is a permutation together with a set of adjacency
//! constraints: `adjacent_pairs` contains `i` when positions `i` and `i + 1`
//! of an occurrence must be consecutive in the host. The concrete syntax is
//! dash-based: `"3-2-1"` is the classical pattern, `"32-1"` constrains the
//! first two positions, and `"321"` (no dashes) constrains all of them.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VincularPattern {
    pattern: Permutation,
    adjacent_pairs: Vec<usize>, // sorted, 1-based, ⊆ {1..k−1}
}

impl VincularPattern {
    pub fn new(pattern: Permutation, mut adjacent_pairs: Vec<usize>) -> Result<Self> {
        adjacent_pairs.sort_unstable();
        adjacent_pairs.dedup();
        if adjacent_pairs
            .iter()
            .any(|&i| i == 0 || i >= pattern.len().max(1))
        {
            return Err(Error::ParseError(
                "adjacency indices must lie in 1..k-1".into(),
            ));
        }
        Ok(VincularPattern {
            pattern,
            adjacent_pairs,
        })
    }

    /// A classical pattern (no adjacency constraints).
    pub fn classical(pattern: Permutation) -> Self {
        VincularPattern {
            pattern,
            adjacent_pairs: Vec::new(),
        }
    }

    pub fn pattern(&self) -> &Permutation {
        &self.pattern
    }

    pub fn adjacent_pairs(&self) -> &[usize] {
        &self.adjacent_pairs
    }

    pub fn is_classical(&self) -> bool {
        self.adjacent_pairs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.pattern.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pattern.is_empty()
    }
}

/// Parses dash syntax: digits `1..9`, with undashed neighbors adjacency-bound.
pub fn parse_pattern(s: &str) -> Result<VincularPattern> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::ParseError("empty pattern".into()));
    }
    let mut digits = Vec::new();
    let mut adjacent = Vec::new();
    let mut dash_before = true; // treat the start as dashed: no constraint
    for c in s.chars() {
        match c {
            '-' => {
                if dash_before {
                    return Err(Error::ParseError(format!("misplaced dash in `{s}`")));
                }
                dash_before = true;
            }
            '1'..='9' => {
                if !dash_before && !digits.is_empty() {
                    adjacent.push(digits.len());
                }
                digits.push(c.to_digit(10).unwrap());
                dash_before = false;
            }
            _ => {
                return Err(Error::ParseError(format!(
                    "unexpected character `{c}` in pattern `{s}`"
                )));
            }
        }
    }
    if dash_before {
        return Err(Error::ParseError(format!("trailing dash in `{s}`")));
    }
    let pattern = Permutation::new(digits)
        .map_err(|_| Error::ParseError(format!("`{s}` digits are not a permutation")))?;
    VincularPattern::new(pattern, adjacent)
}

/// Parses a comma-separated list of patterns.
pub fn parse_pattern_set(s: &str) -> Result<Vec<VincularPattern>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_pattern).collect()
}

impl FromStr for VincularPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pattern(s)
    }
}

impl fmt::Display for VincularPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.pattern.entries().iter().enumerate() {
            if i > 0 && !self.adjacent_pairs.contains(&i) {
                write!(f, "-")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Tests whether `host` contains an occurrence of `pat`.
pub fn contains(host: &Permutation, pat: &VincularPattern) -> bool {
    if pat.is_empty() {
        return true;
    }
    if pat.len() > host.len() {
        return false;
    }
    search(host.entries(), pat, 0, &mut Vec::with_capacity(pat.len()))
}

/// Backtracking over index choices; `chosen` holds the host indices picked so
/// far for pattern positions `1..=chosen.len()`.
fn search(host: &[u32], pat: &VincularPattern, start: usize, chosen: &mut Vec<usize>) -> bool {
    let j = chosen.len(); // next pattern position, 0-based
    if j == pat.len() {
        return true;
    }
    let must_be_adjacent = j > 0 && pat.adjacent_pairs().contains(&j);
    let lo = if j == 0 { start } else { chosen[j - 1] + 1 };
    let hi = if must_be_adjacent { lo + 1 } else { host.len() };
    for i in lo..hi.min(host.len()) {
        if order_compatible(host, pat, chosen, i) {
            chosen.push(i);
            if search(host, pat, 0, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Checks that assigning host index `i` to the next pattern position keeps
/// the partial occurrence order-isomorphic to the pattern.
fn order_compatible(host: &[u32], pat: &VincularPattern, chosen: &[usize], i: usize) -> bool {
    let j = chosen.len();
    let pj = pat.pattern().entries()[j];
    for (k, &ik) in chosen.iter().enumerate() {
        let pk = pat.pattern().entries()[k];
        if (pk < pj) != (host[ik] < host[i]) {
            return false;
        }
    }
    true
}

/// Tests whether `host` contains an occurrence of `pat` whose last index is
/// the final position of `host`. Used for incremental pruning.
pub fn contains_ending_at_last(host: &[u32], pat: &VincularPattern) -> bool {
    if pat.is_empty() {
        return true;
    }
    if pat.len() > host.len() {
        return false;
    }
    let last = host.len() - 1;
    let mut chosen = Vec::with_capacity(pat.len());
    search_pinned(host, pat, last, &mut chosen)
}

fn search_pinned(host: &[u32], pat: &VincularPattern, last: usize, chosen: &mut Vec<usize>) -> bool {
    let j = chosen.len();
    if j == pat.len() - 1 {
        let must_be_adjacent = j > 0 && pat.adjacent_pairs().contains(&j);
        if must_be_adjacent && (j == 0 || chosen[j - 1] + 1 != last) {
            return false;
        }
        if j > 0 && chosen[j - 1] >= last {
            return false;
        }
        return order_compatible(host, pat, chosen, last);
    }
    let must_be_adjacent = j > 0 && pat.adjacent_pairs().contains(&j);
    let lo = if j == 0 { 0 } else { chosen[j - 1] + 1 };
    let hi = if must_be_adjacent { lo + 1 } else { last };
    for i in lo..hi.min(last) {
        if order_compatible(host, pat, chosen, i) {
            chosen.push(i);
            if search_pinned(host, pat, last, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// True iff `host` contains none of the patterns.
pub fn avoids_all(host: &Permutation, pats: &[VincularPattern]) -> bool {
    pats.iter().all(|p| !contains(host, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perm;

    fn pat(s: &str) -> VincularPattern {
        parse_pattern(s).unwrap()
    }

    #[test]
    fn parse_dash_syntax() {
        let p = pat("32-1");
        assert_eq!(p.pattern(), &perm("3 2 1"));
        assert_eq!(p.adjacent_pairs(), &[1]);

        let p = pat("3-2-1");
        assert_eq!(p.pattern(), &perm("3 2 1"));
        assert!(p.adjacent_pairs().is_empty());

        let p = pat("321");
        assert_eq!(p.pattern(), &perm("3 2 1"));
        assert_eq!(p.adjacent_pairs(), &[1, 2]);

        assert!(parse_pattern("3--1").is_err());
        assert!(parse_pattern("-21").is_err());
        assert!(parse_pattern("21-").is_err());
        assert!(parse_pattern("11").is_err());
        assert!(parse_pattern("1x2").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["32-1", "3-2-1", "321", "1-3-2", "1"] {
            assert_eq!(pat(s).to_string(), s);
        }
    }

    #[test]
    fn contains_examples() {
        assert!(contains(&perm("4 1 3 2 5"), &pat("1-3-2")));
        assert!(contains(&perm("3 2 4 1 5"), &pat("3-2-1")));
        assert!(!contains(&perm("1 2 3 4 5"), &pat("2-1")));
    }

    #[test]
    fn avoids_all_examples() {
        let six: Vec<_> = ["1-2-3", "1-3-2", "2-1-3", "2-3-1", "3-1-2", "3-2-1"]
            .iter()
            .map(|s| pat(s))
            .collect();
        assert!(!avoids_all(&perm("4 1 3 5 2"), &six));
        assert!(avoids_all(&Permutation::empty(), &six));
        assert!(!avoids_all(&perm("3 1 2"), &[pat("3-1-2")]));
    }

    #[test]
    fn vincular_adjacency_is_respected() {
        // 2 4 1 3: (2,1) is a descent but not adjacent; (4,1) is adjacent
        let host = perm("2 4 1 3");
        assert!(contains(&host, &pat("2-1")));
        assert!(contains(&host, &pat("21")));
        // 2 3 1: no adjacent ascent-then-anything matching 12 with both adjacent? (2,3) is
        let host = perm("2 3 1");
        assert!(contains(&host, &pat("12")));
        // 1 3 2 has no adjacent ascending pair followed adjacently by a smaller value
        assert!(!contains(&perm("1 3 2"), &pat("123")));
        assert!(contains(&perm("1 2 3"), &pat("123")));
    }

    #[test]
    fn adjacency_monotonicity_small_exhaustive() {
        // adding adjacency constraints can only remove occurrences
        let classical = ["1-2-3", "1-3-2", "2-1-3", "2-3-1", "3-1-2", "3-2-1"];
        for base in classical {
            let digits: Vec<char> = base.chars().filter(|c| c.is_ascii_digit()).collect();
            let variants: Vec<VincularPattern> = [
                format!("{}-{}-{}", digits[0], digits[1], digits[2]),
                format!("{}{}-{}", digits[0], digits[1], digits[2]),
                format!("{}-{}{}", digits[0], digits[1], digits[2]),
                format!("{}{}{}", digits[0], digits[1], digits[2]),
            ]
            .iter()
            .map(|s| pat(s))
            .collect();
            for n in 0..=7 {
                for host in crate::census::all_permutations(n) {
                    let c: Vec<bool> = variants.iter().map(|v| contains(&host, v)).collect();
                    // {1} ⊆ {1,2}, {2} ⊆ {1,2}, ∅ ⊆ everything
                    assert!(!c[3] || (c[1] && c[2]));
                    assert!(!c[1] || c[0]);
                    assert!(!c[2] || c[0]);
                }
            }
        }
    }

    #[test]
    fn contains_ending_at_last_matches_full_search() {
        let pats = ["1-2-3", "32-1", "321", "2-1", "12"];
        for n in 0..=6 {
            for host in crate::census::all_permutations(n) {
                for ps in pats {
                    let p = pat(ps);
                    let full = contains(&host, &p);
                    // host contains p iff some prefix has an occurrence ending at its last index
                    let any_prefix = (1..=n)
                        .any(|m| contains_ending_at_last(&host.entries()[..m], &p));
                    assert_eq!(full, any_prefix, "host {host} pat {ps}");
                }
            }
        }
    }
}
