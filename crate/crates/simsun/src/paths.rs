//! Dyck and Motzkin paths, restricted subclasses, factor statistics, and
//! exhaustive enumeration.
//!
//! Steps: `U = (1,1)`, `D = (1,-1)`, `H = (1,0)`. A path stores an arbitrary
//! step word; class membership is decided by predicates. Text form is the
//! contiguous step string, with `e` for the empty path.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

// declaration order gives the enumeration order U < D < H
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    U,
    D,
    H,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePath {
    steps: Vec<Step>,
}

/// Path families used by the enumeration and the bijections.
///
/// `D1`: Dyck with no `UUU` and no `DDD`. `D2`: Dyck with every peak inside a
/// `UUDD`. `Dprime`: Dyck whose interior peaks (all but possibly the first
/// and last) sit inside a `UUDD`. `DudFreeExceptLastPeak`: Dyck whose `DUD`
/// factors, if any, surround its final peak.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathClass {
    Dyck,
    Motzkin,
    D1,
    D2,
    Dprime,
    DudFreeExceptLastPeak,
}

/// Run-length and factor statistics of a path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathStats {
    pub peaks: usize,
    pub valleys: usize,
    /// Full lattice cells between the path and the axis; `area(UD) = 1`.
    pub area: u64,
    /// Lengths of the maximal ascent runs, left to right.
    pub ascent_runs: Vec<usize>,
    pub final_descent_length: usize,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Self {
        LatticePath { steps }
    }

    pub fn empty() -> Self {
        LatticePath { steps: Vec::new() }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Nonnegative prefix heights returning to the axis, any step alphabet.
    pub fn is_motzkin(&self) -> bool {
        let mut h = 0i64;
        for s in &self.steps {
            h += match s {
                Step::U => 1,
                Step::D => -1,
                Step::H => 0,
            };
            if h < 0 {
                return false;
            }
        }
        h == 0
    }

    /// Motzkin over `{U, D}` only.
    pub fn is_dyck(&self) -> bool {
        self.steps.iter().all(|s| *s != Step::H) && self.is_motzkin()
    }

    /// Semilength of a Dyck path (number of `U` steps).
    pub fn semilength(&self) -> usize {
        self.steps.iter().filter(|s| **s == Step::U).count()
    }

    /// Heights after each step, starting at 0 (length `len() + 1`).
    pub fn heights(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.len() + 1);
        let mut h = 0i64;
        out.push(h);
        for s in &self.steps {
            h += match s {
                Step::U => 1,
                Step::D => -1,
                Step::H => 0,
            };
            out.push(h);
        }
        out
    }

    /// Occurrences of the factor `f`, overlaps allowed.
    pub fn count_factor(&self, f: &[Step]) -> usize {
        if f.is_empty() || f.len() > self.len() {
            return 0;
        }
        self.steps.windows(f.len()).filter(|w| *w == f).count()
    }

    /// Maximal runs as `(step, length)` pairs.
    pub fn runs(&self) -> Vec<(Step, usize)> {
        let mut out: Vec<(Step, usize)> = Vec::new();
        for &s in &self.steps {
            match out.last_mut() {
                Some((t, n)) if *t == s => *n += 1,
                _ => out.push((s, 1)),
            }
        }
        out
    }

    pub fn concat(&self, other: &LatticePath) -> LatticePath {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        LatticePath { steps }
    }
}

pub fn path_stats(path: &LatticePath) -> PathStats {
    let s = path.steps();
    let peaks = path.count_factor(&[Step::U, Step::D]);
    let valleys = path.count_factor(&[Step::D, Step::U]);

    // area in half-cells; negative only for words dipping below the axis
    let mut twice_area = 0i64;
    let mut h = 0i64;
    for step in s {
        let before = h;
        h += match step {
            Step::U => 1,
            Step::D => -1,
            Step::H => 0,
        };
        twice_area += before + h;
    }
    debug_assert!(twice_area % 2 == 0 || h != 0);

    let ascent_runs = path
        .runs()
        .into_iter()
        .filter(|(t, _)| *t == Step::U)
        .map(|(_, n)| n)
        .collect();

    let final_descent_length = s.iter().rev().take_while(|t| **t == Step::D).count();

    PathStats {
        peaks,
        valleys,
        area: (twice_area / 2).max(0) as u64,
        ascent_runs,
        final_descent_length,
    }
}

impl PathClass {
    /// Family membership. `Dyck ⊆ Motzkin` holds here: every Dyck path is a
    /// valid Motzkin path.
    pub fn contains(self, path: &LatticePath) -> bool {
        match self {
            PathClass::Motzkin => path.is_motzkin(),
            PathClass::Dyck => path.is_dyck(),
            PathClass::D1 => {
                path.is_dyck()
                    && path.count_factor(&[Step::U, Step::U, Step::U]) == 0
                    && path.count_factor(&[Step::D, Step::D, Step::D]) == 0
            }
            PathClass::D2 => path.is_dyck() && all_peaks_in_uudd(path, false),
            PathClass::Dprime => path.is_dyck() && all_peaks_in_uudd(path, true),
            PathClass::DudFreeExceptLastPeak => {
                path.is_dyck() && dud_only_at_last_peak(path)
            }
        }
    }

    /// The enumeration size parameter: semilength for Dyck families, length
    /// for Motzkin.
    fn step_budget(self, n: usize) -> usize {
        match self {
            PathClass::Motzkin => n,
            _ => 2 * n,
        }
    }
}

/// Every peak — or every interior peak when `exempt_ends` is set — has its
/// ascent and descent runs of length at least 2.
fn all_peaks_in_uudd(path: &LatticePath, exempt_ends: bool) -> bool {
    let runs = path.runs();
    // Dyck runs alternate U, D, U, D, …; peak i is the junction of run 2i, 2i+1.
    let m = runs.len() / 2;
    for i in 0..m {
        if exempt_ends && (i == 0 || i == m - 1) {
            continue;
        }
        let (_, a) = runs[2 * i];
        let (_, b) = runs[2 * i + 1];
        if a < 2 || b < 2 {
            return false;
        }
    }
    true
}

/// Every `DUD` factor, if any, surrounds the path's final peak.
fn dud_only_at_last_peak(path: &LatticePath) -> bool {
    let s = path.steps();
    let last_peak = s
        .windows(2)
        .rposition(|w| w == [Step::U, Step::D]);
    for i in 0..s.len().saturating_sub(2) {
        if s[i] == Step::D && s[i + 1] == Step::U && s[i + 2] == Step::D {
            // the peak inside this DUD starts at i + 1
            if last_peak != Some(i + 1) {
                return false;
            }
        }
    }
    true
}

/// All class tags that describe the path. The empty path belongs to every
/// class vacuously; a pure `U`/`D` path reports its Dyck family tags, and a
/// path using `H` steps reports `Motzkin`.
pub fn classify(path: &LatticePath) -> Vec<PathClass> {
    use PathClass::*;
    if path.is_empty() {
        return vec![Dyck, Motzkin, D1, D2, Dprime, DudFreeExceptLastPeak];
    }
    if path.is_dyck() {
        let mut tags = vec![Dyck];
        for c in [D1, D2, Dprime, DudFreeExceptLastPeak] {
            if c.contains(path) {
                tags.push(c);
            }
        }
        tags
    } else if path.is_motzkin() {
        vec![Motzkin]
    } else {
        Vec::new()
    }
}

/// Enumerates the class in lexicographic step order `U < D < H`.
pub fn enumerate_paths(n: usize, class: PathClass) -> Vec<LatticePath> {
    let budget = class.step_budget(n);
    let allow_h = class == PathClass::Motzkin;
    let mut out = Vec::new();
    let mut steps = Vec::with_capacity(budget);
    gen_paths(budget, 0, allow_h, &mut steps, &mut |p: &LatticePath| {
        if class.contains(p) {
            out.push(p.clone());
        }
    });
    out
}

fn gen_paths(
    remaining: usize,
    height: usize,
    allow_h: bool,
    steps: &mut Vec<Step>,
    emit: &mut impl FnMut(&LatticePath),
) {
    if remaining == 0 {
        if height == 0 {
            emit(&LatticePath::new(steps.clone()));
        }
        return;
    }
    if height > remaining {
        return; // cannot return to the axis
    }
    if height < remaining {
        steps.push(Step::U);
        gen_paths(remaining - 1, height + 1, allow_h, steps, emit);
        steps.pop();
    }
    if height > 0 {
        steps.push(Step::D);
        gen_paths(remaining - 1, height - 1, allow_h, steps, emit);
        steps.pop();
    }
    if allow_h {
        steps.push(Step::H);
        gen_paths(remaining - 1, height, allow_h, steps, emit);
        steps.pop();
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::U => write!(f, "U"),
            Step::D => write!(f, "D"),
            Step::H => write!(f, "H"),
        }
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "e");
        }
        for s in &self.steps {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for LatticePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(LatticePath::empty());
        }
        let steps = s
            .chars()
            .map(|c| match c {
                'U' | 'u' => Ok(Step::U),
                'D' | 'd' => Ok(Step::D),
                'H' | 'h' => Ok(Step::H),
                _ => Err(Error::ParseError(format!("bad step `{c}`"))),
            })
            .collect::<Result<_>>()?;
        Ok(LatticePath::new(steps))
    }
}

/// Convenience constructor for tests and fixtures.
pub fn path(s: &str) -> LatticePath {
    s.parse().expect("valid path literal")
}
