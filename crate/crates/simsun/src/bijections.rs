//! The bijections between restricted simsun permutations, Dyck/Motzkin paths,
//! and admissible integer sequences, each with its inverse.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::paths::{LatticePath, PathClass, Step};
use crate::pattern::{contains, parse_pattern, VincularPattern};
use crate::perm::{decompose_at_max, reduce, Permutation};
use crate::tree::in_class;

// ---------------------------------------------------------------------------
// Krattenthaler-style staircase bijections Sₙ(σ) ↔ 𝔇ₙ
// ---------------------------------------------------------------------------

/// The four corner conventions of the staircase bijection, named by the
/// pattern their domain avoids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KrarKind {
    K132,
    K231,
    K312,
    K213,
}

impl KrarKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "132" | "krar132" => Ok(KrarKind::K132),
            "231" | "krar231" => Ok(KrarKind::K231),
            "312" | "krar312" => Ok(KrarKind::K312),
            "213" | "krar213" => Ok(KrarKind::K213),
            _ => Err(Error::ParseError(format!("unknown krar kind `{s}`"))),
        }
    }

    fn avoided(self) -> VincularPattern {
        let s = match self {
            KrarKind::K132 => "1-3-2",
            KrarKind::K231 => "2-3-1",
            KrarKind::K312 => "3-1-2",
            KrarKind::K213 => "2-1-3",
        };
        parse_pattern(s).unwrap()
    }
}

/// Maps a `σ`-avoiding permutation to a Dyck path of the same semilength.
pub fn krar(p: &Permutation, kind: KrarKind) -> Result<LatticePath> {
    let pat = kind.avoided();
    if contains(p, &pat) {
        return Err(Error::NotAvoiding(pat.to_string()));
    }
    Ok(match kind {
        KrarKind::K132 => krar132(p),
        KrarKind::K231 => mirror(&krar132(&p.reverse())),
        KrarKind::K312 => krar132(&p.complement()),
        KrarKind::K213 => mirror(&krar132(&p.reverse().complement())),
    })
}

pub fn krar_inverse(path: &LatticePath, kind: KrarKind) -> Result<Permutation> {
    if !path.is_dyck() {
        return Err(Error::InvalidPath("expected a Dyck path".into()));
    }
    Ok(match kind {
        KrarKind::K132 => krar132_inverse(path),
        KrarKind::K231 => krar132_inverse(&mirror(path)).reverse(),
        KrarKind::K312 => krar132_inverse(path).complement(),
        KrarKind::K213 => krar132_inverse(&mirror(path)).complement().reverse(),
    })
}

/// The 132 staircase: in the cross array of `p` (column `i`, row `p_i`), the
/// path of south (`U`) and east (`D`) steps from the upper-left corner that
/// keeps every cross strictly to its east while hugging the anti-diagonal.
/// At row band `y` the path's east offset is `min{position of value r : r ≤ y} − 1`.
fn krar132(p: &Permutation) -> LatticePath {
    let n = p.len();
    let mut pos = vec![0usize; n + 1];
    for (i, &v) in p.entries().iter().enumerate() {
        pos[v as usize] = i + 1;
    }
    let mut steps = Vec::with_capacity(2 * n);
    // prefix minima of positions by value; band y’s offset, top band first
    let mut offsets = vec![0usize; n + 1];
    let mut run = usize::MAX;
    for y in 1..=n {
        run = run.min(pos[y]);
        offsets[y] = run - 1;
    }
    let mut x = 0usize;
    for y in (1..=n).rev() {
        for _ in x..offsets[y] {
            steps.push(Step::D);
        }
        steps.push(Step::U);
        x = offsets[y];
    }
    for _ in x..n {
        steps.push(Step::D);
    }
    LatticePath::new(steps)
}

/// Inverse staircase: recover the offsets from the `U` steps, then place a
/// cross in each row at the leftmost unused column east of the path.
fn krar132_inverse(path: &LatticePath) -> Permutation {
    let n = path.semilength();
    let mut offsets = vec![0usize; n + 1];
    let mut d = 0usize;
    let mut k = 0usize;
    for s in path.steps() {
        match s {
            Step::U => {
                k += 1;
                offsets[n - k + 1] = d;
            }
            Step::D => d += 1,
            Step::H => unreachable!("checked Dyck"),
        }
    }
    let mut used = vec![false; n + 2];
    let mut entries = vec![0u32; n];
    for r in 1..=n {
        let mut col = offsets[r] + 1;
        while used[col] {
            col += 1;
        }
        used[col] = true;
        entries[col - 1] = r as u32;
    }
    Permutation::new(entries).expect("staircase inverse yields a permutation")
}

/// Reverses the step word and swaps `U ↔ D` (the left-right mirror of a Dyck
/// path).
pub fn mirror(path: &LatticePath) -> LatticePath {
    let steps = path
        .steps()
        .iter()
        .rev()
        .map(|s| match s {
            Step::U => Step::D,
            Step::D => Step::U,
            Step::H => Step::H,
        })
        .collect();
    LatticePath::new(steps)
}

// ---------------------------------------------------------------------------
// φ : RSₙ(132) ↔ D¹ₙ
// ---------------------------------------------------------------------------

fn pats_132() -> [VincularPattern; 1] {
    [parse_pattern("1-3-2").unwrap()]
}

fn pats_213() -> [VincularPattern; 1] {
    [parse_pattern("2-1-3").unwrap()]
}

fn pats_231() -> [VincularPattern; 1] {
    [parse_pattern("2-3-1").unwrap()]
}

/// Recursive bijection from 132-avoiding simsun permutations to Dyck paths
/// with no `UUU` and no `DDD`.
pub fn phi(p: &Permutation) -> Result<LatticePath> {
    if !in_class(p, &pats_132()) {
        return Err(Error::NotInDomain("expected a 132-avoiding simsun permutation".into()));
    }
    Ok(phi_rec(p))
}

fn phi_rec(p: &Permutation) -> LatticePath {
    use Step::{D, U};
    if p.is_empty() {
        return LatticePath::empty();
    }
    let (sigma, tau) = decompose_at_max(p).expect("nonempty");
    if tau.is_empty() {
        // p = σ n  →  UD φ(σ)
        let rest = phi_rec(&reduce(&sigma).unwrap());
        LatticePath::new([U, D].into_iter().chain(rest.steps().iter().copied()).collect())
    } else if sigma.is_empty() {
        // p = n τ  →  UUDD φ(red(τ₂ …))
        let rest = phi_rec(&reduce(&tau[1..]).unwrap());
        LatticePath::new(
            [U, U, D, D]
                .into_iter()
                .chain(rest.steps().iter().copied())
                .collect(),
        )
    } else {
        // p = σ n τ  →  UUD φ(red₁(σ)) UDD φ(red(τ₂ …))
        let left = phi_rec(&reduce_without_min(&sigma));
        let right = phi_rec(&reduce(&tau[1..]).unwrap());
        let mut steps = vec![U, U, D];
        steps.extend_from_slice(left.steps());
        steps.extend_from_slice(&[U, D, D]);
        steps.extend_from_slice(right.steps());
        LatticePath::new(steps)
    }
}

/// Removes the smallest entry of a word and reduces the rest.
fn reduce_without_min(word: &[u32]) -> Permutation {
    let min = *word.iter().min().expect("nonempty word");
    let rest: Vec<u32> = word.iter().copied().filter(|&v| v != min).collect();
    reduce(&rest).unwrap()
}

pub fn phi_inverse(path: &LatticePath) -> Result<Permutation> {
    if !PathClass::D1.contains(path) {
        return Err(Error::InvalidPath(
            "expected a Dyck path with no UUU and no DDD".into(),
        ));
    }
    Ok(phi_inv_rec(path.steps()))
}

/// Parses the unique factorization `UDQ` / `UUDDQ` / `UUDQUDDQ'` of a
/// nonempty `D¹` path and rebuilds the permutation.
fn phi_inv_rec(s: &[Step]) -> Permutation {
    use Step::{D, U};
    if s.is_empty() {
        return Permutation::empty();
    }
    if s[..2] == [U, D] {
        let q = phi_inv_rec(&s[2..]);
        let n = q.len() as u32 + 1;
        let mut entries = q.entries().to_vec();
        entries.push(n);
        return Permutation::new(entries).unwrap();
    }
    if s.len() >= 4 && s[..4] == [U, U, D, D] {
        let rho = phi_inv_rec(&s[4..]);
        let tau = expand_front(&rho);
        let n = rho.len() as u32 + 2;
        let mut entries = vec![n];
        entries.extend_from_slice(&tau);
        return Permutation::new(entries).unwrap();
    }
    // UUD Q UDD Q': after UUD the walk sits at height 1; the separator's final
    // D is the first return to the axis
    debug_assert_eq!(&s[..4], &[U, U, D, U]);
    let mut h = 1i64;
    let mut t = s.len();
    for (i, step) in s.iter().enumerate().skip(3) {
        h += if *step == U { 1 } else { -1 };
        if h == 0 {
            t = i;
            break;
        }
    }
    debug_assert_eq!(&s[t - 2..=t], &[U, D, D]);
    let alpha = phi_inv_rec(&s[3..t - 2]);
    let sigma_red = expand_min(&alpha);
    let rho = phi_inv_rec(&s[t + 1..]);
    let tau = expand_front(&rho);
    let shift = tau.len() as u32;
    let mut entries: Vec<u32> = sigma_red.iter().map(|&v| v + shift).collect();
    let n = sigma_red.len() as u32 + shift + 1;
    entries.push(n);
    entries.extend_from_slice(&tau);
    Permutation::new(entries).unwrap()
}

/// Rebuilds `τ` from `red(τ₂ …)`: prepend a copy of the first entry and bump
/// every old entry at or above it.
fn expand_front(rho: &Permutation) -> Vec<u32> {
    if rho.is_empty() {
        return vec![1];
    }
    let first = rho.entries()[0];
    let mut out = vec![first];
    out.extend(rho.entries().iter().map(|&v| if v >= first { v + 1 } else { v }));
    out
}

/// Rebuilds `red(σ)` from `red₁(σ)`: shift everything up and insert `1`
/// immediately before the smallest entry.
fn expand_min(alpha: &Permutation) -> Vec<u32> {
    if alpha.is_empty() {
        return vec![1];
    }
    let min_pos = alpha.position_of(1) - 1;
    let mut out: Vec<u32> = alpha.entries().iter().map(|&v| v + 1).collect();
    out.insert(min_pos, 1);
    out
}

// ---------------------------------------------------------------------------
// θ : RSₙ(132) → D²ₙ₊₂ via first/last run padding of D′ₙ
// ---------------------------------------------------------------------------

/// Adds a `U` to the first and last ascents and a `D` to the first and last
/// descents (the single ascent and descent take two each when the path has
/// one peak; the empty path becomes `UUDD`).
pub fn pad_first_last(path: &LatticePath) -> LatticePath {
    use Step::{D, U};
    if path.is_empty() {
        return LatticePath::new(vec![U, U, D, D]);
    }
    let mut runs = path.runs();
    let asc: Vec<usize> = (0..runs.len()).filter(|&i| runs[i].0 == U).collect();
    let desc: Vec<usize> = (0..runs.len()).filter(|&i| runs[i].0 == D).collect();
    runs[*asc.first().unwrap()].1 += 1;
    runs[*asc.last().unwrap()].1 += 1;
    runs[*desc.first().unwrap()].1 += 1;
    runs[*desc.last().unwrap()].1 += 1;
    rebuild(&runs)
}

/// Inverse of [`pad_first_last`] on peak-form paths.
pub fn unpad_first_last(path: &LatticePath) -> Result<LatticePath> {
    use Step::{D, U};
    if path.steps() == [U, U, D, D] {
        return Ok(LatticePath::empty());
    }
    let mut runs = path.runs();
    let asc: Vec<usize> = (0..runs.len()).filter(|&i| runs[i].0 == U).collect();
    let desc: Vec<usize> = (0..runs.len()).filter(|&i| runs[i].0 == D).collect();
    if asc.is_empty() {
        return Err(Error::InvalidPath("nothing to unpad".into()));
    }
    for idx in [*asc.first().unwrap(), *asc.last().unwrap(), *desc.first().unwrap(), *desc.last().unwrap()] {
        if runs[idx].1 == 0 {
            return Err(Error::InvalidPath("run too short to unpad".into()));
        }
        runs[idx].1 -= 1;
    }
    Ok(rebuild(&runs))
}

fn rebuild(runs: &[(Step, usize)]) -> LatticePath {
    let mut steps = Vec::new();
    for &(s, n) in runs {
        steps.extend(std::iter::repeat_n(s, n));
    }
    LatticePath::new(steps)
}

/// Nonrecursive bijection RSₙ(132) → D²ₙ₊₂: the 132 staircase path followed
/// by first/last run padding.
pub fn theta(p: &Permutation) -> Result<LatticePath> {
    if !in_class(p, &pats_132()) {
        return Err(Error::NotInDomain("expected a 132-avoiding simsun permutation".into()));
    }
    let d = krar(p, KrarKind::K132)?;
    debug_assert!(PathClass::Dprime.contains(&d));
    Ok(pad_first_last(&d))
}

pub fn theta_inverse(path: &LatticePath) -> Result<Permutation> {
    if !PathClass::D2.contains(path) {
        return Err(Error::InvalidPath(
            "expected a Dyck path with every peak inside a UUDD".into(),
        ));
    }
    let d = unpad_first_last(path)?;
    krar_inverse(&d, KrarKind::K132)
}

// ---------------------------------------------------------------------------
// Admissible sequences Aₙ
// ---------------------------------------------------------------------------

/// A sequence `(a₁, …, aₙ)` with `a₁ = 1` and each later term either the
/// previous term plus one or any smaller nonnegative value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdmissibleSequence {
    values: Vec<u32>,
}

impl AdmissibleSequence {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        if let Some(&first) = values.first() {
            if first != 1 {
                return Err(Error::InvalidSequence("first term must be 1".into()));
            }
        }
        for w in values.windows(2) {
            if w[1] != w[0] + 1 && w[1] >= w[0] {
                return Err(Error::InvalidSequence(format!(
                    "term {} cannot follow {}",
                    w[1], w[0]
                )));
            }
        }
        Ok(AdmissibleSequence { values })
    }

    pub fn empty() -> Self {
        AdmissibleSequence { values: Vec::new() }
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl fmt::Display for AdmissibleSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "e");
        }
        let strs: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl FromStr for AdmissibleSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(AdmissibleSequence::empty());
        }
        let values = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::ParseError(format!("bad term `{tok}`")))
            })
            .collect::<Result<Vec<u32>>>()?;
        AdmissibleSequence::new(values)
    }
}

/// All admissible sequences of length `n`.
pub fn enumerate_adm(n: usize) -> Vec<AdmissibleSequence> {
    fn extend(values: &mut Vec<u32>, n: usize, out: &mut Vec<AdmissibleSequence>) {
        if values.len() == n {
            out.push(AdmissibleSequence {
                values: values.clone(),
            });
            return;
        }
        let last = *values.last().unwrap();
        for next in (0..last).chain(std::iter::once(last + 1)) {
            values.push(next);
            extend(values, n, out);
            values.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(AdmissibleSequence::empty());
    } else {
        extend(&mut vec![1], n, &mut out);
    }
    out
}

// ---------------------------------------------------------------------------
// 𝔐ₙ ↔ Aₙ (vertex labeling)
// ---------------------------------------------------------------------------

/// Labels each vertex of a Motzkin path with the number of steps shared with
/// the greedy `H`/`D` path from that vertex to the end that never rises above
/// the path; the labels, last one dropped, read right to left give `Aₙ`.
pub fn motzkin_to_adm(m: &LatticePath) -> Result<AdmissibleSequence> {
    if !m.is_motzkin() {
        return Err(Error::InvalidPath("expected a Motzkin path".into()));
    }
    let n = m.len();
    let h = m.heights();
    let mut values = vec![0u32; n];
    for j in 0..n {
        let mut g = h[j];
        let mut common = 0u32;
        for t in j..n {
            let g2 = g.min(h[t + 1]);
            if g == h[t] && g2 == h[t + 1] {
                common += 1;
            }
            g = g2;
        }
        values[n - j - 1] = common;
    }
    AdmissibleSequence::new(values)
}

/// Redraws the Motzkin path from its label sequence, left to right.
pub fn adm_to_motzkin(a: &AdmissibleSequence) -> Result<LatticePath> {
    let n = a.len();
    if n == 0 {
        return Ok(LatticePath::empty());
    }
    // aᵢ with the dropped rightmost label a₀ = 0 restored
    let label = |i: usize| -> u32 {
        if i == 0 {
            0
        } else {
            a.values()[i - 1]
        }
    };
    let mut steps = Vec::with_capacity(n);
    let mut height = 0usize;
    let mut last_label_at = vec![0u32; n + 1];
    last_label_at[0] = label(n); // the start vertex
    for j in 1..=n {
        let cur = label(n - j + 1);
        let dest = label(n - j);
        let step = if cur < dest {
            Step::U
        } else if height > 0 && dest == last_label_at[height - 1] {
            Step::D
        } else {
            Step::H
        };
        match step {
            Step::U => height += 1,
            Step::D => height -= 1,
            Step::H => {}
        }
        last_label_at[height] = dest;
        steps.push(step);
    }
    let path = LatticePath::new(steps);
    if !path.is_motzkin() {
        return Err(Error::InvalidSequence(
            "sequence does not describe a Motzkin path".into(),
        ));
    }
    Ok(path)
}

// ---------------------------------------------------------------------------
// Aₙ ↔ RSₙ(213) (tree-path insertion)
// ---------------------------------------------------------------------------

/// Inserts `1, 2, …, n` left to right, placing `i` with `aᵢ` earlier entries
/// on its left, or rightmost when `aᵢ` exceeds the number of entries so far.
pub fn adm_to_perm213(a: &AdmissibleSequence) -> Result<Permutation> {
    let mut entries: Vec<u32> = Vec::with_capacity(a.len());
    for (idx, &ai) in a.values().iter().enumerate() {
        let i = idx + 1;
        let gap = if ai as usize > i - 1 { i - 1 } else { ai as usize };
        entries.insert(gap, i as u32);
    }
    let p = Permutation::new(entries).expect("insertion builds a permutation");
    debug_assert!(in_class(&p, &pats_213()));
    Ok(p)
}

/// Reads the insertion history back off the permutation.
pub fn perm213_to_adm(p: &Permutation) -> Result<AdmissibleSequence> {
    if !in_class(p, &pats_213()) {
        return Err(Error::NotInDomain("expected a 213-avoiding simsun permutation".into()));
    }
    let n = p.len();
    let mut values = vec![0u32; n];
    for i in 1..=n {
        let pos = p.position_of(i as u32);
        let smaller_left = p.entries()[..pos - 1].iter().filter(|&&v| v < i as u32).count();
        let smaller_right = p.entries()[pos..].iter().filter(|&&v| v < i as u32).count();
        if smaller_right == 0 {
            // i was inserted rightmost: the plus-one step
            values[i - 1] = if i == 1 { 1 } else { values[i - 2] + 1 };
        } else {
            values[i - 1] = smaller_left as u32;
        }
    }
    AdmissibleSequence::new(values)
}

// ---------------------------------------------------------------------------
// Callan's map: DUD-free Dyck (semilength n + 1) ↔ 𝔐ₙ
// ---------------------------------------------------------------------------

/// Marks each `D` preceded by a `U` and each `U` not preceded by a `D`, turns
/// each unmarked `D` with a marked matching `U` into `H`, and deletes the
/// marked steps.
pub fn callan(d: &LatticePath) -> Result<LatticePath> {
    if !d.is_dyck() {
        return Err(Error::InvalidPath("expected a Dyck path".into()));
    }
    if d.count_factor(&[Step::D, Step::U, Step::D]) > 0 {
        return Err(Error::InvalidPath("path contains a DUD".into()));
    }
    let s = d.steps();
    let mut marked = vec![false; s.len()];
    for i in 0..s.len() {
        match s[i] {
            Step::U => marked[i] = i == 0 || s[i - 1] != Step::D,
            Step::D => marked[i] = i > 0 && s[i - 1] == Step::U,
            Step::H => unreachable!(),
        }
    }
    let mut stack = Vec::new();
    let mut matching = vec![usize::MAX; s.len()];
    for i in 0..s.len() {
        match s[i] {
            Step::U => stack.push(i),
            Step::D => matching[i] = stack.pop().expect("balanced"),
            Step::H => unreachable!(),
        }
    }
    let mut out = Vec::new();
    for i in 0..s.len() {
        if marked[i] {
            continue;
        }
        match s[i] {
            Step::U => out.push(Step::U),
            Step::D => out.push(if marked[matching[i]] { Step::H } else { Step::D }),
            Step::H => unreachable!(),
        }
    }
    Ok(LatticePath::new(out))
}

/// Inverse of [`callan`]: rebuilds the run structure right to left.
///
/// Writing the Dyck path as `U^{a₁} D^{b₁} … U^{a_r} D^{b_r}`, the image is
/// `G₁ U G₂ U … U G_r` where `|G_i| = b_i − 1` and the `D` symbols of `G_i`
/// sit at the heights of the valleys still visible from descent `i`. Reading
/// the groups from the right, those heights reconstruct every valley, hence
/// every run length.
pub fn callan_inverse(m: &LatticePath) -> Result<LatticePath> {
    if !m.is_motzkin() {
        return Err(Error::InvalidPath("expected a Motzkin path".into()));
    }
    // split into groups of {D, H} around the U steps
    let mut groups: Vec<Vec<Step>> = vec![Vec::new()];
    for &s in m.steps() {
        match s {
            Step::U => groups.push(Vec::new()),
            other => groups.last_mut().unwrap().push(other),
        }
    }
    let r = groups.len();
    let b: Vec<i64> = groups.iter().map(|g| g.len() as i64 + 1).collect();
    let mut a = vec![0i64; r];
    let mut stack: Vec<i64> = Vec::new(); // valley heights, ascending
    let mut v_next = 0i64; // valley closing the current descent run
    for i in (0..r).rev() {
        let h = v_next + b[i];
        if i == r - 1 {
            stack.clear();
        } else {
            match stack.pop() {
                Some(top) if top == v_next => {}
                _ => {
                    return Err(Error::InvalidPath(
                        "not in the image of the DUD-free map".into(),
                    ))
                }
            }
        }
        let mut inserted = Vec::new();
        for (idx, sym) in groups[i].iter().enumerate() {
            if *sym == Step::D {
                inserted.push(h - (idx as i64 + 2));
            }
        }
        stack.extend(inserted.into_iter().rev());
        let v_prev = if i == 0 {
            0
        } else {
            *stack
                .last()
                .ok_or_else(|| Error::InvalidPath("not in the image of the DUD-free map".into()))?
        };
        a[i] = h - v_prev;
        v_next = v_prev;
    }
    if !stack.is_empty() || a[0] < 1 || a.iter().skip(1).any(|&x| x < 2) {
        return Err(Error::InvalidPath(
            "not in the image of the DUD-free map".into(),
        ));
    }
    let mut steps = Vec::new();
    for i in 0..r {
        steps.extend(std::iter::repeat_n(Step::U, a[i] as usize));
        steps.extend(std::iter::repeat_n(Step::D, b[i] as usize));
    }
    Ok(LatticePath::new(steps))
}

// ---------------------------------------------------------------------------
// RSₙ(213) ↔ 𝔐ₙ via the staircase, last-run padding, and Callan's map
// ---------------------------------------------------------------------------

/// Adds a `U` to the last ascent and a `D` to the last descent.
pub fn pad_last(path: &LatticePath) -> Result<LatticePath> {
    use Step::{D, U};
    let mut runs = path.runs();
    let last_asc = runs.iter().rposition(|r| r.0 == U);
    let last_desc = runs.iter().rposition(|r| r.0 == D);
    match (last_asc, last_desc) {
        (Some(a), Some(d)) => {
            runs[a].1 += 1;
            runs[d].1 += 1;
            Ok(rebuild(&runs))
        }
        _ => Err(Error::InvalidPath("path has no ascent or no descent".into())),
    }
}

/// Inverse of [`pad_last`]: the padded runs have length at least 2.
pub fn unpad_last(path: &LatticePath) -> Result<LatticePath> {
    use Step::{D, U};
    let mut runs = path.runs();
    let last_asc = runs.iter().rposition(|r| r.0 == U);
    let last_desc = runs.iter().rposition(|r| r.0 == D);
    match (last_asc, last_desc) {
        (Some(a), Some(d)) if runs[a].1 >= 2 && runs[d].1 >= 2 => {
            runs[a].1 -= 1;
            runs[d].1 -= 1;
            Ok(rebuild(&runs))
        }
        _ => Err(Error::InvalidPath("nothing to unpad".into())),
    }
}

/// The pipeline RSₙ(213) → 𝔐ₙ: staircase path (DUD-free except possibly at
/// the last peak), pad the last runs to kill that exception, then Callan.
pub fn rs213_to_motzkin(p: &Permutation) -> Result<LatticePath> {
    if !in_class(p, &pats_213()) {
        return Err(Error::NotInDomain("expected a 213-avoiding simsun permutation".into()));
    }
    if p.is_empty() {
        return Ok(LatticePath::empty());
    }
    let d = krar(p, KrarKind::K213)?;
    debug_assert!(PathClass::DudFreeExceptLastPeak.contains(&d));
    let padded = pad_last(&d)?;
    callan(&padded)
}

pub fn rs213_from_motzkin(m: &LatticePath) -> Result<Permutation> {
    if !m.is_motzkin() {
        return Err(Error::InvalidPath("expected a Motzkin path".into()));
    }
    if m.is_empty() {
        return Ok(Permutation::empty());
    }
    let padded = callan_inverse(m)?;
    let d = unpad_last(&padded)?;
    krar_inverse(&d, KrarKind::K213)
}

// ---------------------------------------------------------------------------
// ψ : RSₙ(231) ↔ 𝔐ₙ
// ---------------------------------------------------------------------------

/// Chunking description: cut the UUU-free staircase path into `UUD`, `UD`,
/// and `D` pieces, greedily left to right, and substitute `U`, `H`, `D`.
pub fn psi(p: &Permutation) -> Result<LatticePath> {
    if !in_class(p, &pats_231()) {
        return Err(Error::NotInDomain("expected a 231-avoiding simsun permutation".into()));
    }
    let d = krar(p, KrarKind::K231)?;
    debug_assert_eq!(d.count_factor(&[Step::U, Step::U, Step::U]), 0);
    let s = d.steps();
    let mut out = Vec::new();
    let mut i = 0;
    while i < s.len() {
        if s[i] == Step::D {
            out.push(Step::D);
            i += 1;
        } else if i + 1 < s.len() && s[i + 1] == Step::U {
            debug_assert_eq!(s[i + 2], Step::D, "UUU-free ascent of length 2");
            out.push(Step::U);
            i += 3;
        } else {
            debug_assert_eq!(s[i + 1], Step::D);
            out.push(Step::H);
            i += 2;
        }
    }
    Ok(LatticePath::new(out))
}

/// Recursive description of the same map: `1 ↦ H`, blocks concatenate, and
/// `n 1 σ ↦ U ψ(red σ) D`. Equality with [`psi`] is verified exhaustively.
pub fn psi_recursive(p: &Permutation) -> Result<LatticePath> {
    if !in_class(p, &pats_231()) {
        return Err(Error::NotInDomain("expected a 231-avoiding simsun permutation".into()));
    }
    Ok(psi_rec(p))
}

fn psi_rec(p: &Permutation) -> LatticePath {
    if p.is_empty() {
        return LatticePath::empty();
    }
    if p.len() == 1 {
        return LatticePath::new(vec![Step::H]);
    }
    let blocks = crate::perm::split_min_components(p);
    if blocks.len() > 1 {
        let mut out = LatticePath::empty();
        for b in blocks {
            out = out.concat(&psi_rec(&reduce(&b).unwrap()));
        }
        return out;
    }
    // indecomposable: p = n 1 σ
    let e = p.entries();
    debug_assert_eq!(e[0], p.len() as u32);
    debug_assert_eq!(e[1], 1);
    let inner = psi_rec(&reduce(&e[2..]).unwrap());
    let mut steps = vec![Step::U];
    steps.extend_from_slice(inner.steps());
    steps.push(Step::D);
    LatticePath::new(steps)
}

pub fn psi_inverse(m: &LatticePath) -> Result<Permutation> {
    if !m.is_motzkin() {
        return Err(Error::InvalidPath("expected a Motzkin path".into()));
    }
    Ok(psi_inv_rec(m.steps()))
}

fn psi_inv_rec(s: &[Step]) -> Permutation {
    // split into minimal blocks returning to the axis; earlier blocks take
    // smaller values
    let mut entries: Vec<u32> = Vec::new();
    let mut start = 0usize;
    let mut h = 0i64;
    for (i, step) in s.iter().enumerate() {
        h += match step {
            Step::U => 1,
            Step::D => -1,
            Step::H => 0,
        };
        if h == 0 {
            let block = &s[start..=i];
            let shift = entries.len() as u32;
            let part = if block == [Step::H] {
                Permutation::identity(1)
            } else {
                // U m' D
                let inner = psi_inv_rec(&block[1..block.len() - 1]);
                let n = inner.len() as u32 + 2;
                let mut e = vec![n, 1];
                e.extend(inner.entries().iter().map(|&v| v + 1));
                Permutation::new(e).unwrap()
            };
            entries.extend(part.entries().iter().map(|&v| v + shift));
            start = i + 1;
        }
    }
    Permutation::new(entries).expect("blocks reassemble a permutation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::path;
    use crate::perm::perm;

    #[test]
    fn krar132_small_cases() {
        assert_eq!(krar(&perm("2 1"), KrarKind::K132).unwrap(), path("UDUD"));
        assert_eq!(krar(&perm("1 2"), KrarKind::K132).unwrap(), path("UUDD"));
        for kind in [KrarKind::K132, KrarKind::K231, KrarKind::K312, KrarKind::K213] {
            assert_eq!(krar(&perm("1"), kind).unwrap(), path("UD"));
        }
        assert_eq!(krar_inverse(&path("UD"), KrarKind::K132).unwrap(), perm("1"));
        assert_eq!(krar_inverse(&path("UDUD"), KrarKind::K132).unwrap(), perm("2 1"));
        assert!(krar(&perm("1 3 2"), KrarKind::K132).is_err());
    }

    #[test]
    fn krar132_staircase_of_wide_example() {
        // recomputed from the cross-array construction by hand
        let p = perm("10 8 9 7 11 4 3 5 6 12 1 2");
        let d = krar(&p, KrarKind::K132).unwrap();
        assert_eq!(d, path("UUUDUUDDUDDUUUDUDDDDUUDD"));
        // peaks sit at the left-to-right minima
        let stats = crate::paths::path_stats(&d);
        let lr = crate::perm::statistics(&p).left_to_right_minima;
        assert_eq!(stats.peaks, lr.len());
        assert_eq!(krar_inverse(&d, KrarKind::K132).unwrap(), p);
    }

    #[test]
    fn four_conventions_share_a_wide_example_path() {
        // these four length-12 avoiders all sit on the same staircase path,
        // one per corner convention
        let cases = [
            (KrarKind::K132, "10 8 9 7 11 4 3 5 6 12 1 2"),
            (KrarKind::K231, "10 5 1 3 2 4 9 8 6 7 12 11"),
            (KrarKind::K312, "3 5 4 6 2 9 10 8 7 1 12 11"),
            (KrarKind::K213, "3 8 12 10 11 9 4 5 7 6 1 2"),
        ];
        let expected = path("UUUDUUDDUDDUUUDUDDDDUUDD");
        for (kind, s) in cases {
            let p = perm(s);
            assert_eq!(krar(&p, kind).unwrap(), expected, "{kind:?}");
            assert_eq!(krar_inverse(&expected, kind).unwrap(), p, "{kind:?}");
        }
    }

    #[test]
    fn krar_round_trips_all_kinds() {
        for kind in [KrarKind::K132, KrarKind::K231, KrarKind::K312, KrarKind::K213] {
            for n in 0..=6 {
                let paths = crate::paths::enumerate_paths(n, PathClass::Dyck);
                let mut images = std::collections::BTreeSet::new();
                for d in &paths {
                    let p = krar_inverse(d, kind).unwrap();
                    assert!(!contains(&p, &kind.avoided()), "{d} {kind:?} -> {p}");
                    assert_eq!(&krar(&p, kind).unwrap(), d, "{kind:?} {d}");
                    images.insert(p);
                }
                assert_eq!(images.len(), paths.len());
            }
        }
    }

    #[test]
    fn krar_inverse_rejects_non_dyck() {
        assert!(krar_inverse(&path("UDD"), KrarKind::K132).is_err());
        assert!(krar_inverse(&path("UHD"), KrarKind::K213).is_err());
    }

    #[test]
    fn phi_golden_example() {
        assert_eq!(
            phi(&perm("7 5 6 8 2 3 4 1")).unwrap(),
            path("UUDUUDDUDDUUDUDD")
        );
        assert_eq!(phi(&Permutation::empty()).unwrap(), LatticePath::empty());
        assert_eq!(phi(&perm("2 1")).unwrap(), path("UUDD"));
        assert!(phi(&perm("1 3 2")).is_err());
        assert!(phi(&perm("3 2 1")).is_err());
    }

    #[test]
    fn phi_inverse_golden_example() {
        assert_eq!(
            phi_inverse(&path("UUDUUDDUDDUUDUDD")).unwrap(),
            perm("7 5 6 8 2 3 4 1")
        );
        assert_eq!(phi_inverse(&LatticePath::empty()).unwrap(), Permutation::empty());
        assert!(phi_inverse(&path("UUUDDD")).is_err());
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(&perm("1")).unwrap(), path("UUUDDD"));
        assert_eq!(theta(&Permutation::empty()).unwrap(), path("UUDD"));
        let t = theta(&perm("7 5 6 8 2 3 4 1")).unwrap();
        assert_eq!(t.semilength(), 10);
        assert!(PathClass::D2.contains(&t));
        assert_eq!(theta_inverse(&t).unwrap(), perm("7 5 6 8 2 3 4 1"));
    }

    #[test]
    fn adm_sequence_validation() {
        assert!(AdmissibleSequence::new(vec![1, 2, 0, 1]).is_ok());
        assert!(AdmissibleSequence::new(vec![2]).is_err());
        assert!(AdmissibleSequence::new(vec![1, 3]).is_err());
        assert!(AdmissibleSequence::new(vec![1, 1]).is_err());
        assert!(AdmissibleSequence::new(vec![]).is_ok());
    }

    #[test]
    fn motzkin_adm_golden_example() {
        let m = path("UHUDHUUDHDDHUHD");
        let a = motzkin_to_adm(&m).unwrap();
        assert_eq!(
            a.values(),
            &[1, 2, 0, 1, 2, 3, 4, 5, 4, 2, 3, 4, 3, 4, 1]
        );
        assert_eq!(adm_to_motzkin(&a).unwrap(), m);

        let h = path("H");
        assert_eq!(motzkin_to_adm(&h).unwrap().values(), &[1]);
        assert_eq!(
            adm_to_motzkin(&AdmissibleSequence::new(vec![1]).unwrap()).unwrap(),
            h
        );
        assert!(motzkin_to_adm(&LatticePath::empty()).unwrap().is_empty());
    }

    #[test]
    fn adm_perm_golden_example() {
        let a = AdmissibleSequence::new(vec![1, 2, 0, 1, 2, 3, 4, 5, 4, 2, 3, 4, 3, 4, 1]).unwrap();
        let p = adm_to_perm213(&a).unwrap();
        assert_eq!(p, perm("3 15 4 10 13 14 11 12 5 6 9 7 8 1 2"));
        assert_eq!(perm213_to_adm(&p).unwrap(), a);

        assert_eq!(
            adm_to_perm213(&AdmissibleSequence::new(vec![1]).unwrap()).unwrap(),
            perm("1")
        );
        assert_eq!(perm213_to_adm(&perm("1")).unwrap().values(), &[1]);
        assert_eq!(
            adm_to_perm213(&AdmissibleSequence::new(vec![1, 2, 3]).unwrap()).unwrap(),
            perm("1 2 3")
        );
        assert!(perm213_to_adm(&perm("2 1 3")).is_err());
    }

    #[test]
    fn adm_count_is_motzkin() {
        use num_traits::ToPrimitive;
        for n in 0..=9 {
            let count = enumerate_adm(n).len();
            let m = crate::sequences::seq(crate::sequences::SequenceId::Motzkin, n)
                .to_usize()
                .unwrap();
            assert_eq!(count, m, "n={n}");
        }
    }

    #[test]
    fn callan_small_cases() {
        assert_eq!(callan(&path("UD")).unwrap(), LatticePath::empty());
        assert_eq!(callan(&path("UUDD")).unwrap(), path("H"));
        assert!(callan(&path("UDUD")).is_err()); // contains DUD
        assert!(callan(&path("UHD")).is_err());
        assert_eq!(callan_inverse(&LatticePath::empty()).unwrap(), path("UD"));
        assert_eq!(callan_inverse(&path("H")).unwrap(), path("UUDD"));
    }

    #[test]
    fn callan_round_trips() {
        for n in 0..=7 {
            // DUD-free Dyck paths of semilength n + 1 ↔ Motzkin paths of length n
            let dud_free: Vec<LatticePath> =
                crate::paths::enumerate_paths(n + 1, PathClass::Dyck)
                    .into_iter()
                    .filter(|d| d.count_factor(&[Step::D, Step::U, Step::D]) == 0)
                    .collect();
            let motzkin = crate::paths::enumerate_paths(n, PathClass::Motzkin);
            assert_eq!(dud_free.len(), motzkin.len(), "n={n}");
            let mut images = std::collections::BTreeSet::new();
            for d in &dud_free {
                let m = callan(d).unwrap();
                assert!(m.is_motzkin());
                assert_eq!(m.len(), n);
                assert_eq!(&callan_inverse(&m).unwrap(), d);
                images.insert(m);
            }
            assert_eq!(images.len(), dud_free.len());
        }
    }

    #[test]
    fn rs213_pipeline_examples() {
        assert_eq!(rs213_to_motzkin(&perm("1")).unwrap(), path("H"));
        assert_eq!(
            rs213_to_motzkin(&Permutation::empty()).unwrap(),
            LatticePath::empty()
        );
        // the 13-entry worked example: a 13-step Motzkin path comes out and
        // the pipeline inverts
        let p = perm("1 13 2 8 11 12 9 10 3 4 5 7 6");
        let m = rs213_to_motzkin(&p).unwrap();
        assert_eq!(m.len(), 13);
        assert!(m.is_motzkin());
        assert_eq!(rs213_from_motzkin(&m).unwrap(), p);
        assert!(rs213_to_motzkin(&perm("2 1 3")).is_err());
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&perm("1")).unwrap(), path("H"));
        assert_eq!(psi(&Permutation::empty()).unwrap(), LatticePath::empty());
        let p = perm("10 1 5 2 4 3 9 6 7 8");
        let by_chunks = psi(&p).unwrap();
        let by_recursion = psi_recursive(&p).unwrap();
        assert_eq!(by_chunks, by_recursion);
        assert_eq!(by_chunks, path("UUUDDUHHDD"));
        assert_eq!(psi_inverse(&by_chunks).unwrap(), p);
        assert!(psi(&perm("2 3 1")).is_err());
    }

    #[test]
    fn psi_inverse_small_cases() {
        assert_eq!(psi_inverse(&path("H")).unwrap(), perm("1"));
        assert_eq!(psi_inverse(&path("UD")).unwrap(), perm("2 1"));
        assert_eq!(psi_inverse(&LatticePath::empty()).unwrap(), Permutation::empty());
    }

    #[test]
    fn motzkin_side_round_trips_at_nine() {
        // one size beyond the exhaustive acceptance sweep
        for m in crate::paths::enumerate_paths(9, PathClass::Motzkin) {
            let a = motzkin_to_adm(&m).unwrap();
            assert_eq!(adm_to_motzkin(&a).unwrap(), m);
            let p = adm_to_perm213(&a).unwrap();
            assert_eq!(perm213_to_adm(&p).unwrap(), a);
            assert_eq!(psi(&psi_inverse(&m).unwrap()).unwrap(), m);
        }
    }

    #[test]
    fn padding_maps_are_inverse_on_peak_form_paths() {
        for n in 0..=7 {
            for d in crate::paths::enumerate_paths(n, PathClass::Dprime) {
                let padded = pad_first_last(&d);
                assert!(PathClass::D2.contains(&padded), "{d} -> {padded}");
                assert_eq!(padded.semilength(), n + 2);
                assert_eq!(unpad_first_last(&padded).unwrap(), d);
            }
            // surjectivity onto the peak-form class
            let count = crate::paths::enumerate_paths(n + 2, PathClass::D2).len();
            assert_eq!(count, crate::paths::enumerate_paths(n, PathClass::Dprime).len());
        }
    }
}
