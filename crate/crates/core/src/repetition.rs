//! Detection of squares `XX`, cubes `XXX`, overlaps `aXaXa` and weak
//! squares `aXXa`.
//!
//! Every detector reports the leftmost occurrence and, among occurrences at
//! that start, the one with the smallest period. For a fixed shift `d` an
//! occurrence is a run of positions `j` with `w[j] == w[j + d]`; runs are
//! located by probing one anchor every `need` positions, where `need` is the
//! minimum run length the pattern requires, so short periods cost `O(n)` and
//! long periods cost `O(n / period)` plus the runs actually touched.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::word::Letter;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepetitionKind {
    Square,
    Cube,
    Overlap,
    WeakSquare,
}

impl RepetitionKind {
    pub const ALL: [RepetitionKind; 4] = [
        RepetitionKind::Square,
        RepetitionKind::Cube,
        RepetitionKind::Overlap,
        RepetitionKind::WeakSquare,
    ];

    /// Smallest admissible `|X|`: squares and cubes need a non-empty `X`.
    pub fn min_period(self) -> usize {
        match self {
            RepetitionKind::Square | RepetitionKind::Cube => 1,
            RepetitionKind::Overlap | RepetitionKind::WeakSquare => 0,
        }
    }

    /// Length of the whole factor for a given `|X|`.
    pub fn total_length(self, period: usize) -> usize {
        match self {
            RepetitionKind::Square => 2 * period,
            RepetitionKind::Cube => 3 * period,
            RepetitionKind::Overlap => 2 * period + 3,
            RepetitionKind::WeakSquare => 2 * period + 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RepetitionKind::Square => "square",
            RepetitionKind::Cube => "cube",
            RepetitionKind::Overlap => "overlap",
            RepetitionKind::WeakSquare => "weak square",
        }
    }

    /// Name of the property "contains no factor of this kind".
    pub fn free_name(self) -> &'static str {
        match self {
            RepetitionKind::Square => "squarefree",
            RepetitionKind::Cube => "cubefree",
            RepetitionKind::Overlap => "overlap-free",
            RepetitionKind::WeakSquare => "weakly squarefree",
        }
    }

    /// Direct check of the pattern at 0-based `start` with `|X| = period`.
    pub fn matches_at(self, w: &[Letter], start: usize, period: usize) -> bool {
        if period < self.min_period() {
            return false;
        }
        let end = match start.checked_add(self.total_length(period)) {
            Some(end) if end <= w.len() => end,
            _ => return false,
        };
        let f = &w[start..end];
        let p = period;
        match self {
            RepetitionKind::Square => f[..p] == f[p..],
            RepetitionKind::Cube => f[..p] == f[p..2 * p] && f[p..2 * p] == f[2 * p..],
            RepetitionKind::Overlap => {
                let a = f[0];
                f[p + 1] == a && f[2 * p + 2] == a && f[1..p + 1] == f[p + 2..2 * p + 2]
            }
            RepetitionKind::WeakSquare => f[0] == f[2 * p + 1] && f[1..p + 1] == f[p + 1..2 * p + 1],
        }
    }

    /// Leftmost-then-shortest occurrence in `w`.
    pub fn find(self, w: &[Letter]) -> Option<RepetitionWitness> {
        let n = w.len();
        let mut best: Option<(usize, usize)> = None;
        let mut p = self.min_period();
        while self.total_length(p) <= n {
            let limit = best.map_or(n, |(s, _)| s);
            if limit == 0 {
                break;
            }
            if let Some(s) = self.leftmost_at_period(w, p, limit) {
                best = Some((s, p));
            }
            p += 1;
        }
        best.map(|(s, p)| RepetitionWitness::new(self, s + 1, p))
    }

    /// Whether `w` contains any occurrence.
    pub fn occurs_in(self, w: &[Letter]) -> bool {
        let n = w.len();
        let mut p = self.min_period();
        while self.total_length(p) <= n {
            if self.leftmost_at_period(w, p, n).is_some() {
                return true;
            }
            p += 1;
        }
        false
    }

    /// Whether an occurrence ends at the last letter of `w`. When `w` minus
    /// its last letter is clean, this decides whether `w` is clean.
    pub fn occurs_as_suffix(self, w: &[Letter]) -> bool {
        let n = w.len();
        let mut p = self.min_period();
        while self.total_length(p) <= n {
            if self.matches_at(w, n - self.total_length(p), p) {
                return true;
            }
            p += 1;
        }
        false
    }

    /// Leftmost 0-based start `< limit` of an occurrence with `|X| = p`.
    fn leftmost_at_period(self, w: &[Letter], p: usize, limit: usize) -> Option<usize> {
        match self {
            RepetitionKind::Square => Runs::new(w, p, p, limit).next().map(|(l, _)| l),
            RepetitionKind::Cube => Runs::new(w, p, 2 * p, limit).next().map(|(l, _)| l),
            RepetitionKind::Overlap => Runs::new(w, p + 1, p + 2, limit).next().map(|(l, _)| l),
            RepetitionKind::WeakSquare if p == 0 => {
                let end = limit.min(w.len().saturating_sub(1));
                (0..end).find(|&j| w[j] == w[j + 1])
            }
            RepetitionKind::WeakSquare => {
                // `XX` starts at s = start + 1.
                let n = w.len();
                for (l, r) in Runs::new(w, p, p, limit + 1) {
                    for s in l.max(1)..=r - p {
                        if s > limit {
                            return None;
                        }
                        if s + 2 * p < n && w[s - 1] == w[s + 2 * p] {
                            return Some(s - 1);
                        }
                    }
                }
                None
            }
        }
    }
}

impl fmt::Display for RepetitionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Maximal runs `[l, r)` of positions with `w[j] == w[j + shift]` whose
/// length is at least `need`, in ascending order, restricted to `l < limit`.
struct Runs<'a> {
    w: &'a [Letter],
    shift: usize,
    need: usize,
    limit: usize,
    span: usize,
    anchor: usize,
    covered: usize,
}

impl<'a> Runs<'a> {
    fn new(w: &'a [Letter], shift: usize, need: usize, limit: usize) -> Self {
        debug_assert!(need >= 1);
        Runs {
            w,
            shift,
            need,
            limit,
            span: w.len().saturating_sub(shift),
            anchor: need - 1,
            covered: 0,
        }
    }

    #[inline]
    fn matches(&self, j: usize) -> bool {
        self.w[j] == self.w[j + self.shift]
    }
}

impl Iterator for Runs<'_> {
    type Item = (usize, usize);

    fn next(&mut self) -> Option<(usize, usize)> {
        // A run first discovered at anchor `a` starts after `a - need`.
        while self.anchor < self.span && self.anchor + 1 < self.limit + self.need {
            let a = self.anchor;
            self.anchor += self.need;
            if a < self.covered || !self.matches(a) {
                continue;
            }
            let mut l = a;
            while l > self.covered && self.matches(l - 1) {
                l -= 1;
            }
            let mut r = a + 1;
            while r < self.span && self.matches(r) {
                r += 1;
            }
            self.covered = r;
            if l >= self.limit {
                return None;
            }
            if r - l >= self.need {
                return Some((l, r));
            }
        }
        None
    }
}

/// Location of a repetition inside a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RepetitionWitness {
    pub kind: RepetitionKind,
    /// 1-based position of the first letter of the factor.
    pub start: usize,
    /// `|X|` in the kind's pattern.
    pub period: usize,
    pub total_length: usize,
}

impl RepetitionWitness {
    pub fn new(kind: RepetitionKind, start: usize, period: usize) -> Self {
        RepetitionWitness {
            kind,
            start,
            period,
            total_length: kind.total_length(period),
        }
    }

    /// 0-based start.
    pub fn offset(&self) -> usize {
        self.start - 1
    }

    /// Re-extracts the factor from `w` and pattern-matches it.
    pub fn validate(&self, w: &[Letter]) -> bool {
        self.start >= 1
            && self.total_length == self.kind.total_length(self.period)
            && self.kind.matches_at(w, self.offset(), self.period)
    }
}

impl fmt::Display for RepetitionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {} period {}", self.kind, self.start, self.period)
    }
}

pub fn find_square(w: &[Letter]) -> Option<RepetitionWitness> {
    RepetitionKind::Square.find(w)
}

pub fn find_cube(w: &[Letter]) -> Option<RepetitionWitness> {
    RepetitionKind::Cube.find(w)
}

pub fn find_overlap(w: &[Letter]) -> Option<RepetitionWitness> {
    RepetitionKind::Overlap.find(w)
}

pub fn find_weak_square(w: &[Letter]) -> Option<RepetitionWitness> {
    RepetitionKind::WeakSquare.find(w)
}

/// A conjunction of "-free" properties. The empty set accepts every word.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct PropertySet(u8);

impl PropertySet {
    pub const ANY: PropertySet = PropertySet(0);
    pub const SQUAREFREE: PropertySet = PropertySet::single(RepetitionKind::Square);
    pub const CUBEFREE: PropertySet = PropertySet::single(RepetitionKind::Cube);
    pub const OVERLAP_FREE: PropertySet = PropertySet::single(RepetitionKind::Overlap);
    pub const WEAKLY_SQUAREFREE: PropertySet = PropertySet::single(RepetitionKind::WeakSquare);

    pub const fn single(kind: RepetitionKind) -> Self {
        PropertySet(1 << kind as u8)
    }

    pub fn of(kinds: &[RepetitionKind]) -> Self {
        kinds.iter().fold(PropertySet::ANY, |s, &k| s.with(k))
    }

    pub const fn with(self, kind: RepetitionKind) -> Self {
        PropertySet(self.0 | (1 << kind as u8))
    }

    pub fn contains(self, kind: RepetitionKind) -> bool {
        self.0 & (1 << kind as u8) != 0
    }

    pub fn is_any(self) -> bool {
        self.0 == 0
    }

    pub fn kinds(self) -> impl Iterator<Item = RepetitionKind> {
        RepetitionKind::ALL
            .into_iter()
            .filter(move |&k| self.contains(k))
    }

    /// First violation in property order, if any.
    pub fn violation(self, w: &[Letter]) -> Option<RepetitionWitness> {
        self.kinds().find_map(|k| k.find(w))
    }

    pub fn is_clean(self, w: &[Letter]) -> bool {
        self.kinds().all(|k| !k.occurs_in(w))
    }

    /// Assuming `w` minus its last letter is clean, whether `w` is clean.
    pub fn extension_is_clean(self, w: &[Letter]) -> bool {
        self.kinds().all(|k| !k.occurs_as_suffix(w))
    }
}

impl fmt::Display for PropertySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_any() {
            return f.write_str("any");
        }
        let names: Vec<_> = self.kinds().map(|k| k.free_name()).collect();
        f.write_str(&names.join(" + "))
    }
}
