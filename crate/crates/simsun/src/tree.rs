//! The simsun predicate, fertility positions, the insertion generating tree
//! and its pattern-filtered subtrees, and succession-rule verification.
//!
//! A permutation is simsun when, for every `k`, the subword of its `k`
//! smallest values has no three consecutive decreasing entries. Deleting the
//! maximum preserves the property, so the class is generated by a tree whose
//! level-`n` nodes are the simsun permutations of length `n` and whose edges
//! insert `n + 1` at the fertility gaps.

use std::fmt;

use crate::error::{Error, Result};
use crate::pattern::{avoids_all, VincularPattern};
use crate::perm::Permutation;

/// True iff every restriction of `p` to its `k` smallest values is free of
/// double descents.
pub fn is_simsun(p: &Permutation) -> bool {
    let n = p.len();
    if n < 3 {
        return true;
    }
    // peel values n, n−1, …, 4 off a working copy, checking each restriction
    let mut w: Vec<u32> = p.entries().to_vec();
    let mut k = n as u32;
    loop {
        if w.windows(3).any(|t| t[0] > t[1] && t[1] > t[2]) {
            return false;
        }
        if k == 3 {
            return true;
        }
        let pos = w.iter().position(|&v| v == k).unwrap();
        w.remove(pos);
        k -= 1;
    }
}

/// The subword of the `k` smallest values, which is itself a permutation of
/// `{1..k}`.
pub fn restriction(p: &Permutation, k: usize) -> Result<Permutation> {
    if k > p.len() {
        return Err(Error::InvalidK { k, n: p.len() });
    }
    let entries: Vec<u32> = p
        .entries()
        .iter()
        .copied()
        .filter(|&v| v as usize <= k)
        .collect();
    Ok(Permutation::new(entries).expect("restriction is a permutation"))
}

/// Membership test for the pattern-filtered simsun class.
pub fn in_class(p: &Permutation, pats: &[VincularPattern]) -> bool {
    is_simsun(p) && avoids_all(p, pats)
}

/// Gaps `g ∈ {0..n}` where inserting `n + 1` keeps the permutation simsun
/// and avoiding `pats`. Insert-and-test is the authoritative mechanism.
pub fn fertility_gaps(p: &Permutation, pats: &[VincularPattern]) -> Result<Vec<usize>> {
    if !in_class(p, pats) {
        return Err(Error::NotInTree(p.to_string()));
    }
    Ok(fertility_gaps_unchecked(p, pats))
}

pub(crate) fn fertility_gaps_unchecked(p: &Permutation, pats: &[VincularPattern]) -> Vec<usize> {
    (0..=p.len())
        .filter(|&g| in_class(&p.insert_max(g), pats))
        .collect()
}

/// Fertility gaps of the unfiltered tree, by the direct rule: every gap
/// except those immediately preceding a descent.
pub(crate) fn fertility_gaps_plain(p: &Permutation) -> Vec<usize> {
    let e = p.entries();
    (0..=e.len())
        .filter(|&g| g + 1 >= e.len() || e[g] <= e[g + 1])
        .collect()
}

/// All members of the filtered class at length `n`, generated by the tree and
/// returned in lexicographic order.
pub fn tree_level(n: usize, pats: &[VincularPattern]) -> Vec<Permutation> {
    let mut level = vec![Permutation::empty()];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &level {
            for g in child_gaps(p, pats) {
                next.push(p.insert_max(g));
            }
        }
        level = next;
    }
    level.sort();
    level
}

/// Counts the tree's level-`n` nodes without materializing the level.
pub fn tree_count(n: usize, pats: &[VincularPattern]) -> u64 {
    fn walk(p: &Permutation, depth: usize, pats: &[VincularPattern]) -> u64 {
        if depth == 0 {
            return 1;
        }
        child_gaps(p, pats)
            .into_iter()
            .map(|g| walk(&p.insert_max(g), depth - 1, pats))
            .sum()
    }
    walk(&Permutation::empty(), n, pats)
}

fn child_gaps(p: &Permutation, pats: &[VincularPattern]) -> Vec<usize> {
    if p.is_empty() {
        // the length-1 permutation is admissible unless a length-1 pattern bars it
        return if in_class(&Permutation::identity(1), pats) {
            vec![0]
        } else {
            vec![]
        };
    }
    if pats.is_empty() {
        fertility_gaps_plain(p)
    } else {
        fertility_gaps_unchecked(p, pats)
    }
}

/// Succession-rule label for the colored rules of the 132-filtered tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TreeLabel {
    Plain(usize),
    Tilde(usize),
    Hat(usize),
}

impl fmt::Display for TreeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeLabel::Plain(k) => write!(f, "({k})"),
            TreeLabel::Tilde(k) => write!(f, "({k})~"),
            TreeLabel::Hat(k) => write!(f, "({k})^"),
        }
    }
}

/// Label of a node of the 132-filtered tree: the fertility count `k`,
/// colored plain when `p₁ < p₂` or `n = 1`, tilde when `p₁ = n > 1`, and hat
/// when `p₂ < p₁ < n`.
pub fn label_132(p: &Permutation) -> Result<TreeLabel> {
    if p.is_empty() {
        // the colored labeling starts at the length-1 node
        return Err(Error::NotInTree(p.to_string()));
    }
    let pats = [crate::pattern::parse_pattern("1-3-2").unwrap()];
    let k = fertility_gaps(p, &pats)
        .map_err(|_| Error::NotInTree(p.to_string()))?
        .len();
    let e = p.entries();
    let n = p.len() as u32;
    if p.len() == 1 || (p.len() >= 2 && e[0] < e[1]) {
        Ok(TreeLabel::Plain(k))
    } else if e[0] == n {
        Ok(TreeLabel::Tilde(k))
    } else {
        Ok(TreeLabel::Hat(k))
    }
}

/// Label of a node of the 213-filtered tree: its number of fertility gaps.
pub fn label_213(p: &Permutation) -> Result<usize> {
    let pats = [crate::pattern::parse_pattern("2-1-3").unwrap()];
    Ok(fertility_gaps(p, &pats)
        .map_err(|_| Error::NotInTree(p.to_string()))?
        .len())
}

/// The labeled generating trees whose succession rules are verified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreeId {
    /// Colored rules on the 132-avoiding subtree, rooted at the length-1 node.
    T132,
    /// `(k) → (1)(2)…(k−1)(k+1)` on the 213-avoiding subtree, rooted at the
    /// empty permutation with label `(1)`.
    T213,
    /// Same rule shape on the 231-avoiding subtree.
    T231,
    /// Constant branching: the two rightmost gaps are the fertile ones.
    T312,
    /// `(1) → (2)`, `(2) → (1)(2)` on the {132, 213}-avoiding subtree.
    T132And213,
}

impl TreeId {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "t132" | "132" => Ok(TreeId::T132),
            "t213" | "213" => Ok(TreeId::T213),
            "t231" | "231" => Ok(TreeId::T231),
            "t312" | "312" => Ok(TreeId::T312),
            "t132-213" | "132-213" | "t132&213" => Ok(TreeId::T132And213),
            _ => Err(Error::ParseError(format!("unknown tree id `{s}`"))),
        }
    }

    fn patterns(self) -> Vec<VincularPattern> {
        let parse = |s: &str| crate::pattern::parse_pattern(s).unwrap();
        match self {
            TreeId::T132 => vec![parse("1-3-2")],
            TreeId::T213 => vec![parse("2-1-3")],
            TreeId::T231 => vec![parse("2-3-1")],
            TreeId::T312 => vec![parse("3-1-2")],
            TreeId::T132And213 => vec![parse("1-3-2"), parse("2-1-3")],
        }
    }
}

/// Outcome of a succession-rule sweep; `violations` is expected to be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuccessionReport {
    pub tree: String,
    pub nodes_checked: usize,
    pub violations: Vec<String>,
}

impl SuccessionReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that, for every node up to level `n_max`, the multiset of children
/// labels equals the succession rule's right-hand side.
pub fn verify_succession(n_max: usize, tree: TreeId) -> SuccessionReport {
    let pats = tree.patterns();
    let mut report = SuccessionReport {
        tree: format!("{tree:?}"),
        nodes_checked: 0,
        violations: Vec::new(),
    };

    // level 0 is the empty permutation; the 132 tree is rooted one level up
    let mut level = vec![Permutation::empty()];
    for depth in 0..n_max {
        let mut next = Vec::new();
        for p in &level {
            let children: Vec<Permutation> = child_gaps(p, &pats)
                .into_iter()
                .map(|g| p.insert_max(g))
                .collect();
            check_node(tree, p, &children, &mut report);
            next.extend(children);
        }
        level = next;
        if level.is_empty() && depth + 1 < n_max {
            break; // tree died out (e.g. heavy filters); nothing left to check
        }
    }
    report
}

fn check_node(
    tree: TreeId,
    p: &Permutation,
    children: &[Permutation],
    report: &mut SuccessionReport,
) {
    match tree {
        TreeId::T132 => {
            if p.is_empty() {
                return; // rule is rooted at the length-1 permutation
            }
            report.nodes_checked += 1;
            let label = label_132(p).expect("tree node is in class");
            let mut expected: Vec<TreeLabel> = match label {
                TreeLabel::Plain(k) => std::iter::once(TreeLabel::Tilde(k))
                    .chain((2..=k).rev().map(TreeLabel::Plain))
                    .collect(),
                TreeLabel::Tilde(k) => std::iter::once(TreeLabel::Plain(k + 1))
                    .chain((1..k).rev().map(TreeLabel::Hat))
                    .collect(),
                TreeLabel::Hat(k) => (1..=k).rev().map(TreeLabel::Hat).collect(),
            };
            let mut got: Vec<TreeLabel> = children
                .iter()
                .map(|c| label_132(c).expect("child is in class"))
                .collect();
            expected.sort();
            got.sort();
            if expected != got {
                report.violations.push(format!(
                    "node {p} with label {label}: children {} expected {}",
                    fmt_labels(&got),
                    fmt_labels(&expected)
                ));
            }
        }
        TreeId::T213 | TreeId::T231 => {
            report.nodes_checked += 1;
            let pats = tree.patterns();
            let count_label =
                |q: &Permutation| fertility_gaps_unchecked(q, &pats).len();
            let k = count_label(p);
            let mut expected: Vec<usize> = (1..k).collect();
            expected.push(k + 1);
            let mut got: Vec<usize> = children.iter().map(count_label).collect();
            got.sort_unstable();
            if expected != got {
                report.violations.push(format!(
                    "node {p} with label ({k}): children {got:?} expected {expected:?}"
                ));
            }
        }
        TreeId::T312 => {
            if p.is_empty() {
                return;
            }
            report.nodes_checked += 1;
            let pats = tree.patterns();
            let gaps = fertility_gaps_unchecked(p, &pats);
            let n = p.len();
            if gaps != vec![n - 1, n] {
                report.violations.push(format!(
                    "node {p}: fertile gaps {gaps:?}, expected the last two [{}, {}]",
                    n - 1,
                    n
                ));
            }
        }
        TreeId::T132And213 => {
            report.nodes_checked += 1;
            let pats = tree.patterns();
            let count_label =
                |q: &Permutation| fertility_gaps_unchecked(q, &pats).len();
            let k = count_label(p);
            let expected: Vec<usize> = match k {
                1 => vec![2],
                2 => vec![1, 2],
                other => {
                    report
                        .violations
                        .push(format!("node {p}: label ({other}) outside the rule"));
                    return;
                }
            };
            let mut got: Vec<usize> = children.iter().map(count_label).collect();
            got.sort_unstable();
            if expected != got {
                report.violations.push(format!(
                    "node {p} with label ({k}): children {got:?} expected {expected:?}"
                ));
            }
        }
    }
}

fn fmt_labels(labels: &[TreeLabel]) -> String {
    let strs: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
    strs.join(" ")
}
