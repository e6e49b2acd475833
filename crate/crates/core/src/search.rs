//! Exhaustive searches over uniform morphisms.
//!
//! Work is split over the candidates for `φ(1)`; every worker keeps its own
//! scratch buffers and the merged survivors are sorted by compact
//! serialization, so results do not depend on the thread count.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{
    decide_squarefree, necessary_condition_refutation, Bounds, BoundedChecker,
    NecessaryCondition, Refutation,
};
use crate::enumerate::enumerate_words;
use crate::error::{Error, Result};
use crate::io::{morphism_serde, morphism_vec_serde, serialize_compact};
use crate::morphism::Morphism;
use crate::repetition::{PropertySet, RepetitionKind};
use crate::transform::TransformGroup;
use crate::word::{shift_letters, Alphabet, Letter, Shift};

pub const MIN_RANK: usize = 2;
pub const MAX_RANK: usize = 13;
/// Default cap for the weakly squarefree Thue search, whose pool is every
/// uniform morphism with a fixed point (`3^(3r)` before filtering).
pub const MAX_THUE_RANK: usize = 6;
/// Hard cap behind `allow_high_rank`.
pub const HIGH_RANK_LIMIT: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchKind {
    Squarefree,
    Cyclic,
    WeaklySquarefreeThue,
    TripleProperty,
}

impl SearchKind {
    pub fn name(self) -> &'static str {
        match self {
            SearchKind::Squarefree => "squarefree",
            SearchKind::Cyclic => "cyclic",
            SearchKind::WeaklySquarefreeThue => "weakly-squarefree-thue",
            SearchKind::TripleProperty => "triple",
        }
    }
}

impl fmt::Display for SearchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Skip triples failing the pair test before the full squarefree test.
    pub prune: bool,
    /// Worker threads; 0 uses rayon's default.
    pub threads: usize,
    pub bounds: Bounds,
    /// Keep the refutation of every rejected candidate in the report.
    pub record_refutations: bool,
    pub allow_high_rank: bool,
    /// Stop starting new work after this long and mark the report partial.
    pub time_budget: Option<Duration>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            prune: true,
            threads: 0,
            bounds: Bounds::default(),
            record_refutations: false,
            allow_high_rank: false,
            time_budget: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitClass {
    #[serde(with = "morphism_serde")]
    pub representative: Morphism,
    /// Members of the searched set in this orbit.
    pub size: usize,
    pub full_orbit_size: usize,
    /// Whether the whole orbit lies inside the searched set.
    pub closed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateRefutation {
    #[serde(with = "morphism_serde")]
    pub morphism: Morphism,
    /// The structural condition that produced the witness, if any.
    pub condition: Option<NecessaryCondition>,
    pub refutation: Refutation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub kind: SearchKind,
    pub alphabet: usize,
    pub rank: usize,
    pub property_filter: String,
    pub candidate_pool_size: u64,
    pub count: usize,
    #[serde(with = "morphism_vec_serde")]
    pub survivors: Vec<Morphism>,
    pub orbit_classes: Vec<OrbitClass>,
    pub bounds: Option<Bounds>,
    pub refuted: u64,
    pub refutations: Vec<CandidateRefutation>,
    pub complete: bool,
    pub wall_time_ms: u64,
}

impl SearchReport {
    fn new(kind: SearchKind, alphabet: Alphabet, rank: usize, filter: &str) -> Self {
        SearchReport {
            kind,
            alphabet: alphabet.size(),
            rank,
            property_filter: filter.into(),
            candidate_pool_size: 0,
            count: 0,
            survivors: Vec::new(),
            orbit_classes: Vec::new(),
            bounds: None,
            refuted: 0,
            refutations: Vec::new(),
            complete: true,
            wall_time_ms: 0,
        }
    }

    fn finish(mut self, mut survivors: Vec<Morphism>, started: Instant) -> Self {
        sort_by_compact(&mut survivors);
        self.count = survivors.len();
        if self.alphabet == 3 {
            self.orbit_classes = orbit_reduce(&survivors, &TransformGroup::full_ternary());
        }
        self.survivors = survivors;
        self.refutations
            .sort_by_cached_key(|r| serialize_compact(&r.morphism));
        self.wall_time_ms = started.elapsed().as_millis() as u64;
        self
    }
}

fn sort_by_compact(ms: &mut [Morphism]) {
    ms.sort_by_cached_key(serialize_compact);
}

fn check_rank(rank: usize, max: usize, opts: &SearchOptions) -> Result<()> {
    let max = if opts.allow_high_rank {
        HIGH_RANK_LIMIT
    } else {
        max
    };
    if (MIN_RANK..=max).contains(&rank) {
        Ok(())
    } else {
        Err(Error::RankOutOfRange {
            rank,
            min: MIN_RANK,
            max,
        })
    }
}

fn pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::ThreadPool(e.to_string()))
}

/// Deadline shared by the workers of one search.
struct Budget {
    deadline: Option<Instant>,
    exceeded: AtomicBool,
}

impl Budget {
    fn new(started: Instant, budget: Option<Duration>) -> Self {
        Budget {
            deadline: budget.map(|b| started + b),
            exceeded: AtomicBool::new(false),
        }
    }

    fn exhausted(&self) -> bool {
        if self.exceeded.load(Ordering::Relaxed) {
            return true;
        }
        match self.deadline {
            Some(d) if Instant::now() >= d => {
                self.exceeded.store(true, Ordering::Relaxed);
                true
            }
            _ => false,
        }
    }

    fn complete(&self) -> bool {
        !self.exceeded.load(Ordering::Relaxed)
    }
}

fn squarefree_pool(rank: usize) -> Vec<Vec<Letter>> {
    enumerate_words(Alphabet::TERNARY, rank, PropertySet::SQUAREFREE)
        .into_iter()
        .map(|w| w.into_letters())
        .collect()
}

/// Crochemore's uniform test: images of the twelve squarefree words of
/// length 3 (which contain every squarefree word of length 1 and 2).
struct CrochemoreK3 {
    tests: Vec<[usize; 3]>,
    scratch: Vec<Letter>,
}

impl CrochemoreK3 {
    fn new() -> Self {
        let tests = enumerate_words(Alphabet::TERNARY, 3, PropertySet::SQUAREFREE)
            .iter()
            .map(|w| [w[0] as usize, w[1] as usize, w[2] as usize])
            .collect();
        CrochemoreK3 {
            tests,
            scratch: Vec::new(),
        }
    }

    fn passes(&mut self, images: [&[Letter]; 3]) -> bool {
        for t in &self.tests {
            self.scratch.clear();
            for &a in t {
                self.scratch.extend_from_slice(images[a]);
            }
            if RepetitionKind::Square.occurs_in(&self.scratch) {
                return false;
            }
        }
        true
    }
}

/// Uniform squarefree ternary morphisms of the given rank.
///
/// With `prune`, a triple is only tested when every image is distinct and
/// every product `φ(a)φ(b)`, `a ≠ b`, is squarefree. These products are
/// images of squarefree words, so the filter never drops a survivor; the
/// unpruned mode runs the full test on all `|pool|^3` triples.
pub fn search_uniform_squarefree(rank: usize, opts: &SearchOptions) -> Result<SearchReport> {
    check_rank(rank, MAX_RANK, opts)?;
    let started = Instant::now();
    let budget = Budget::new(started, opts.time_budget);
    let words = squarefree_pool(rank);
    let n = words.len();
    let mut report = SearchReport::new(SearchKind::Squarefree, Alphabet::TERNARY, rank, "squarefree");
    report.candidate_pool_size = (n as u64).pow(3);

    let compat: Vec<Vec<bool>> = if opts.prune {
        let mut buf = Vec::with_capacity(2 * rank);
        words
            .iter()
            .enumerate()
            .map(|(i, u)| {
                words
                    .iter()
                    .enumerate()
                    .map(|(j, v)| {
                        buf.clear();
                        buf.extend_from_slice(u);
                        buf.extend_from_slice(v);
                        i != j && !RepetitionKind::Square.occurs_in(&buf)
                    })
                    .collect()
            })
            .collect()
    } else {
        Vec::new()
    };
    let ok = |i: usize, j: usize| !opts.prune || (compat[i][j] && compat[j][i]);

    let survivors: Vec<Morphism> = pool(opts.threads)?.install(|| {
        (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut found = Vec::new();
                if budget.exhausted() {
                    return found;
                }
                let mut test = CrochemoreK3::new();
                for j in (0..n).filter(|&j| ok(i, j)) {
                    for k in (0..n).filter(|&k| ok(i, k) && ok(j, k)) {
                        if test.passes([&words[i], &words[j], &words[k]]) {
                            found.push(Morphism::from_trusted(
                                Alphabet::TERNARY,
                                vec![words[i].clone(), words[j].clone(), words[k].clone()],
                            ));
                        }
                    }
                }
                found
            })
            .collect()
    });
    report.complete = budget.complete();
    Ok(report.finish(survivors, started))
}

/// Partition of `morphisms` into orbits of `group`, sorted by
/// representative. Representatives are the least compact serialization
/// over the whole orbit, whether or not it lies in the input.
pub fn orbit_reduce(morphisms: &[Morphism], group: &TransformGroup) -> Vec<OrbitClass> {
    let index: HashMap<String, usize> = morphisms
        .iter()
        .enumerate()
        .map(|(i, m)| (serialize_compact(m), i))
        .collect();
    let mut seen = vec![false; morphisms.len()];
    let mut classes = Vec::new();
    for (i, m) in morphisms.iter().enumerate() {
        if seen[i] {
            continue;
        }
        let orbit = group.orbit(m).expect("group acts on ternary morphisms");
        let mut size = 0;
        for key in orbit.keys() {
            if let Some(&j) = index.get(key) {
                if !seen[j] {
                    seen[j] = true;
                    size += 1;
                }
            }
        }
        classes.push(OrbitClass {
            representative: orbit.values().next().cloned().unwrap_or_else(|| m.clone()),
            size,
            full_orbit_size: orbit.len(),
            closed: size == orbit.len(),
        });
    }
    classes.sort_by_cached_key(|c| serialize_compact(&c.representative));
    classes
}

/// Cyclic squarefree morphisms: `φ(1)` ranges over squarefree words and
/// `φ(2)`, `φ(3)` are its rotations.
pub fn search_cyclic_squarefree(rank: usize, opts: &SearchOptions) -> Result<SearchReport> {
    check_rank(rank, MAX_RANK, opts)?;
    let started = Instant::now();
    let words = squarefree_pool(rank);
    let mut report = SearchReport::new(SearchKind::Cyclic, Alphabet::TERNARY, rank, "cyclic + squarefree");
    report.candidate_pool_size = words.len() as u64;
    let survivors: Vec<Morphism> = pool(opts.threads)?.install(|| {
        words
            .par_iter()
            .filter_map(|w| {
                let up = shift_letters(w, Shift::Up);
                let down = shift_letters(w, Shift::Down);
                let m = Morphism::from_trusted(Alphabet::TERNARY, vec![w.clone(), up, down]);
                decide_squarefree(&m, opts.bounds)
                    .verdict
                    .is_proven_true()
                    .then_some(m)
            })
            .collect()
    });
    Ok(report.finish(survivors, started))
}

/// Every word of length `rank` over `alphabet`, lexicographically.
fn all_words(alphabet: Alphabet, rank: usize) -> Vec<Vec<Letter>> {
    enumerate_words(alphabet, rank, PropertySet::ANY)
        .into_iter()
        .map(|w| w.into_letters())
        .collect()
}

struct Outcome {
    survivors: Vec<Morphism>,
    refuted: u64,
    refutations: Vec<CandidateRefutation>,
}

impl Outcome {
    fn merge(mut self, other: Outcome) -> Outcome {
        self.survivors.extend(other.survivors);
        self.refuted += other.refuted;
        self.refutations.extend(other.refutations);
        self
    }

    fn empty() -> Outcome {
        Outcome {
            survivors: Vec::new(),
            refuted: 0,
            refutations: Vec::new(),
        }
    }

    fn record(&mut self, m: Morphism, verdict: Option<(Option<NecessaryCondition>, Refutation)>, keep: bool) {
        match verdict {
            None => self.survivors.push(m),
            Some((condition, refutation)) => {
                self.refuted += 1;
                if keep {
                    self.refutations.push(CandidateRefutation {
                        morphism: m,
                        condition,
                        refutation,
                    });
                }
            }
        }
    }
}

/// Candidates for weakly squarefree Thue morphisms: every uniform morphism
/// of the rank with a fixed-point seed. Ternary candidates first meet the
/// structural necessary conditions; all remaining ones are searched for
/// refutations of cube-, overlap- and weak-square-freeness in that order.
/// Survivors carry no refutation, which is evidence, not proof.
pub fn search_weakly_squarefree_thue(
    alphabet: Alphabet,
    rank: usize,
    opts: &SearchOptions,
) -> Result<SearchReport> {
    check_rank(rank, MAX_THUE_RANK, opts)?;
    if alphabet.size() > 3 {
        return Err(Error::InvalidQuery(
            "weakly squarefree Thue search supports binary and ternary alphabets".into(),
        ));
    }
    let started = Instant::now();
    let budget = Budget::new(started, opts.time_budget);
    let words = all_words(alphabet, rank);
    let k = alphabet.size();
    let mut report = SearchReport::new(
        SearchKind::WeaklySquarefreeThue,
        alphabet,
        rank,
        "cubefree + overlap-free + weakly squarefree + fixed point",
    );
    report.bounds = Some(opts.bounds);
    let checker = BoundedChecker::new(alphabet, opts.bounds);
    let kinds = [
        RepetitionKind::Cube,
        RepetitionKind::Overlap,
        RepetitionKind::WeakSquare,
    ];
    let examine = |m: Morphism, out: &mut Outcome| {
        let mut verdict = None;
        if alphabet.is_ternary() {
            verdict = necessary_condition_refutation(&m)
                .expect("ternary")
                .map(|(c, r)| (Some(c), r));
        }
        if verdict.is_none() {
            verdict = kinds
                .iter()
                .find_map(|&kind| checker.refute(&m, kind))
                .map(|r| (None, r));
        }
        out.record(m, verdict, opts.record_refutations);
    };

    let outcome = pool(opts.threads)?.install(|| {
        (0..words.len())
            .into_par_iter()
            .map(|first| {
                let mut out = Outcome::empty();
                if budget.exhausted() {
                    return out;
                }
                let mut idx = vec![first];
                idx.resize(k, 0);
                loop {
                    let images: Vec<Vec<Letter>> = idx.iter().map(|&i| words[i].clone()).collect();
                    let m = Morphism::from_trusted(alphabet, images);
                    if !m.fixed_point_seeds().is_empty() {
                        examine(m, &mut out);
                    }
                    // odometer over the images of letters 2..k
                    let mut pos = k - 1;
                    loop {
                        if pos == 0 {
                            return out;
                        }
                        idx[pos] += 1;
                        if idx[pos] < words.len() {
                            break;
                        }
                        idx[pos] = 0;
                        pos -= 1;
                    }
                }
            })
            .reduce(Outcome::empty, Outcome::merge)
    });
    report.candidate_pool_size = outcome.survivors.len() as u64 + outcome.refuted;
    report.refuted = outcome.refuted;
    report.refutations = outcome.refutations;
    report.complete = budget.complete();
    Ok(report.finish(outcome.survivors, started))
}

/// Uniform squarefree morphisms that also escape every bounded refutation
/// of cube- and overlap-freeness. Every refutation is recorded.
pub fn search_triple_property(rank: usize, opts: &SearchOptions) -> Result<SearchReport> {
    let started = Instant::now();
    let squarefree = search_uniform_squarefree(rank, opts)?;
    let mut report = SearchReport::new(
        SearchKind::TripleProperty,
        Alphabet::TERNARY,
        rank,
        "squarefree + cubefree + overlap-free",
    );
    report.bounds = Some(opts.bounds);
    report.candidate_pool_size = squarefree.count as u64;
    let checker = BoundedChecker::new(Alphabet::TERNARY, opts.bounds);
    let outcome = pool(opts.threads)?.install(|| {
        squarefree
            .survivors
            .par_iter()
            .map(|m| {
                let mut out = Outcome::empty();
                let r = [RepetitionKind::Cube, RepetitionKind::Overlap]
                    .iter()
                    .find_map(|&kind| checker.refute(m, kind));
                out.record(m.clone(), r.map(|r| (None, r)), true);
                out
            })
            .reduce(Outcome::empty, Outcome::merge)
    });
    report.refuted = outcome.refuted;
    report.refutations = outcome.refutations;
    report.complete = squarefree.complete;
    Ok(report.finish(outcome.survivors, started))
}
