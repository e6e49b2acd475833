//! The published claims as executable checks, each reporting PASS or FAIL
//! with a short explanation.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::avoid::{avoidance_by_morphism, max_avoiding, verify_avoidance, AvoidanceQuery, AvoidanceStatus};
use crate::classify::{classify, decide_squarefree, refute_with, Bounds, ClassifyConfig, Property, Verdict};
use crate::enumerate::{clean_words_by_length, enumerate_words};
use crate::error::{Error, Result};
use crate::fixtures::{fixture_text, load_morphism, load_word, verify_checksum};
use crate::io::{census_table, parse_word, serialize_compact, table_diff, Notation};
use crate::morphism::Morphism;
use crate::repetition::{PropertySet, RepetitionKind};
use crate::search::{
    search_cyclic_squarefree, search_triple_property, search_uniform_squarefree,
    search_weakly_squarefree_thue, SearchOptions,
};
use crate::transform::TransformGroup;
use crate::word::{Alphabet, Letter, Word};

/// Longest squarefree ternary word without the factor `123`, found by
/// exhaustive search and pinned here.
pub const FORBID_123_MAX: usize = 29;

pub const CLAIM_COUNT: usize = 10;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReproduceOptions {
    pub bounds: Bounds,
    pub threads: usize,
    /// Census table to compare against instead of the checked-in fixture.
    pub census_override: Option<String>,
}

impl ReproduceOptions {
    fn search(&self) -> SearchOptions {
        SearchOptions {
            threads: self.threads,
            bounds: self.bounds,
            ..SearchOptions::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub id: usize,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    pub diff: Vec<String>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproduceReport {
    pub claims: Vec<ClaimResult>,
    pub all_passed: bool,
}

impl ReproduceReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            out.push_str(&format!(
                "{:>2}  {}  {:<44} {:>8} ms  {}\n",
                c.id,
                if c.passed { "PASS" } else { "FAIL" },
                c.title,
                c.elapsed_ms,
                c.detail
            ));
            for line in &c.diff {
                out.push_str(&format!("        {line}\n"));
            }
        }
        out.push_str(if self.all_passed {
            "all claims confirmed\n"
        } else {
            "some claims FAILED\n"
        });
        out
    }
}

struct Check {
    passed: bool,
    detail: String,
    diff: Vec<String>,
}

impl Check {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Check {
            passed,
            detail: detail.into(),
            diff: Vec::new(),
        }
    }
}

pub fn claim_title(id: usize) -> &'static str {
    match id {
        1 => "census of uniform squarefree morphisms",
        2 => "orbit structure of rank 11",
        3 => "Crochemore test vs brute force (rank <= 6)",
        4 => "no weakly squarefree Thue morphisms",
        5 => "cyclic squarefree census",
        6 => "squarefree + cubefree + overlap-free sweep",
        7 => "fixture morphism reports",
        8 => "Thue-Morse prefix",
        9 => "avoidance maxima",
        10 => "fixture words and fixed points",
        _ => "unknown claim",
    }
}

pub fn run_claim(id: usize, opts: &ReproduceOptions) -> Result<ClaimResult> {
    let started = Instant::now();
    let check = match id {
        1 => census(opts),
        2 => orbits(opts),
        3 => crochemore_cross_check(opts),
        4 => thue_sweeps(opts),
        5 => cyclic(opts),
        6 => triple(opts),
        7 => fixture_reports(opts),
        8 => thue_morse(),
        9 => avoidance(),
        10 => fixture_words(),
        _ => return Err(Error::InvalidQuery(format!("no claim {id}"))),
    };
    let check = check.unwrap_or_else(|e| Check::new(false, format!("error: {e}")));
    Ok(ClaimResult {
        id,
        title: claim_title(id).into(),
        passed: check.passed,
        detail: check.detail,
        diff: check.diff,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

pub fn run(opts: &ReproduceOptions) -> ReproduceReport {
    let claims: Vec<ClaimResult> = (1..=CLAIM_COUNT)
        .map(|id| run_claim(id, opts).expect("claim ids are in range"))
        .collect();
    let all_passed = claims.iter().all(|c| c.passed);
    ReproduceReport { claims, all_passed }
}

fn census(opts: &ReproduceOptions) -> Result<Check> {
    let mut nonzero = Vec::new();
    for rank in 2..=10 {
        let r = search_uniform_squarefree(rank, &opts.search())?;
        if r.count != 0 {
            nonzero.push(format!("rank {rank}: {}", r.count));
        }
    }
    let r11 = search_uniform_squarefree(11, &opts.search())?;
    let produced = census_table(&r11.survivors);
    let expected = match &opts.census_override {
        Some(text) => text.clone(),
        None => fixture_text("census_rank11")?.to_string(),
    };
    let checksum = verify_checksum("census_rank11", &expected);
    let diff = table_diff(&expected, &produced);
    let passed = nonzero.is_empty() && r11.count == 144 && diff.is_empty() && checksum.is_ok();
    let mut detail = format!(
        "ranks 2-10: {}; rank 11: {} survivors, table {}",
        if nonzero.is_empty() {
            "0 survivors".to_string()
        } else {
            nonzero.join(", ")
        },
        r11.count,
        if diff.is_empty() { "identical" } else { "differs" }
    );
    if let Err(e) = checksum {
        detail.push_str(&format!("; {e}"));
    }
    Ok(Check {
        passed,
        detail,
        diff,
    })
}

fn orbits(opts: &ReproduceOptions) -> Result<Check> {
    let r11 = search_uniform_squarefree(11, &opts.search())?;
    let group = TransformGroup::full_ternary();
    let phis = [load_morphism("rank11_phi1")?, load_morphism("rank11_phi2")?];
    let classes = &r11.orbit_classes;
    let sizes: Vec<usize> = classes.iter().map(|c| c.size).collect();
    let mut hits = [0usize; 2];
    for c in classes {
        let orbit = group.orbit(&c.representative)?;
        for (i, phi) in phis.iter().enumerate() {
            if orbit.contains_key(&serialize_compact(phi)) {
                hits[i] += 1;
            }
        }
    }
    let passed = classes.len() == 2
        && sizes == [72, 72]
        && classes.iter().all(|c| c.closed)
        && hits == [1, 1]
        && !group.orbit(&phis[0])?.contains_key(&serialize_compact(&phis[1]));
    Ok(Check::new(
        passed,
        format!(
            "{} orbits of sizes {:?}; representatives {}",
            classes.len(),
            sizes,
            classes
                .iter()
                .map(|c| serialize_compact(&c.representative))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    ))
}

/// Brute-force squarefreeness over all squarefree words up to `max_len`.
pub fn brute_force_squarefree(m: &Morphism, tests: &[Vec<Letter>]) -> bool {
    let mut image = Vec::new();
    tests.iter().all(|w| {
        image.clear();
        m.apply_into(w, &mut image);
        !RepetitionKind::Square.occurs_in(&image)
    })
}

pub fn squarefree_test_words(max_len: usize) -> Vec<Vec<Letter>> {
    clean_words_by_length(Alphabet::TERNARY, max_len, PropertySet::SQUAREFREE)
        .into_iter()
        .flatten()
        .collect()
}

/// Disagreements between the Crochemore decision and brute force over
/// every uniform morphism with squarefree images of the given rank.
pub fn crochemore_disagreements(rank: usize, brute_len: usize) -> (usize, usize, Vec<Morphism>) {
    let tests = squarefree_test_words(brute_len);
    let images: Vec<Vec<Letter>> = enumerate_words(Alphabet::TERNARY, rank, PropertySet::SQUAREFREE)
        .into_iter()
        .map(Word::into_letters)
        .collect();
    let n = images.len();
    let results: Vec<(bool, Option<Morphism>)> = (0..n * n * n)
        .into_par_iter()
        .map(|idx| {
            let m = Morphism::new(
                Alphabet::TERNARY,
                vec![
                    images[idx / (n * n)].clone(),
                    images[idx / n % n].clone(),
                    images[idx % n].clone(),
                ],
            )
            .expect("valid images");
            let decided = decide_squarefree(&m, Bounds::default()).verdict.is_proven_true();
            let brute = brute_force_squarefree(&m, &tests);
            (decided, (decided != brute).then_some(m))
        })
        .collect();
    let proven = results.iter().filter(|(d, _)| *d).count();
    let bad: Vec<Morphism> = results.into_iter().filter_map(|(_, m)| m).collect();
    (n * n * n, proven, bad)
}

fn crochemore_cross_check(opts: &ReproduceOptions) -> Result<Check> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .map_err(|e| Error::ThreadPool(e.to_string()))?;
    let (mut total, mut proven, mut bad) = (0, 0, Vec::new());
    pool.install(|| {
        for rank in 1..=6 {
            let (t, p, b) = crochemore_disagreements(rank, 10);
            total += t;
            proven += p;
            bad.extend(b);
        }
    });
    Ok(Check {
        passed: bad.is_empty(),
        detail: format!(
            "{total} morphisms, {proven} proven squarefree, {} disagreements",
            bad.len()
        ),
        diff: bad.iter().map(serialize_compact).collect(),
    })
}

fn thue_sweeps(opts: &ReproduceOptions) -> Result<Check> {
    let so = SearchOptions {
        record_refutations: true,
        ..opts.search()
    };
    let mut passed = true;
    let mut parts = Vec::new();
    let mut diff = Vec::new();
    for (alphabet, ranks) in [(Alphabet::TERNARY, 2..=4), (Alphabet::BINARY, 2..=6)] {
        for rank in ranks {
            let r = search_weakly_squarefree_thue(alphabet, rank, &so)?;
            let audited = r
                .refutations
                .iter()
                .filter(|c| c.refutation.audit(&c.morphism))
                .count() as u64;
            let ok = r.count == 0
                && r.complete
                && r.refuted == r.candidate_pool_size
                && audited == r.candidate_pool_size;
            passed &= ok;
            if !ok {
                diff.extend(r.survivors.iter().map(|m| format!("survivor {}", serialize_compact(m))));
            }
            parts.push(format!(
                "{}{rank}: {}/{}",
                if alphabet.size() == 2 { "b" } else { "t" },
                audited,
                r.candidate_pool_size
            ));
        }
    }
    Ok(Check {
        passed,
        detail: format!("refuted with audited witness: {}", parts.join(" ")),
        diff,
    })
}

fn cyclic(opts: &ReproduceOptions) -> Result<Check> {
    let mut nonzero = Vec::new();
    for rank in 2..=12 {
        let r = search_cyclic_squarefree(rank, &opts.search())?;
        if r.count != 0 {
            nonzero.push(format!("rank {rank}: {}", r.count));
        }
    }
    let r13 = search_cyclic_squarefree(13, &opts.search())?;
    let leech = load_morphism("leech")?;
    let has_leech = r13.survivors.contains(&leech);
    Ok(Check::new(
        nonzero.is_empty() && has_leech,
        format!(
            "ranks 2-12: {}; rank 13: {} survivors{}",
            if nonzero.is_empty() {
                "0 survivors".to_string()
            } else {
                nonzero.join(", ")
            },
            r13.count,
            if has_leech { " including Leech" } else { ", Leech MISSING" }
        ),
    ))
}

fn triple(opts: &ReproduceOptions) -> Result<Check> {
    let mut passed = true;
    let mut parts = Vec::new();
    for rank in 2..=12 {
        let r = search_triple_property(rank, &opts.search())?;
        let ok = r.count == 0
            && r.refutations.len() == r.candidate_pool_size as usize
            && r.refutations
                .iter()
                .all(|c| c.refutation.audit(&c.morphism) && c.refutation.preimage.len() <= 8);
        passed &= ok;
        if r.candidate_pool_size > 0 || !ok {
            parts.push(format!("rank {rank}: {} of {} refuted", r.refuted, r.candidate_pool_size));
        }
    }
    let r13 = search_triple_property(13, &opts.search())?;
    let leech = load_morphism("leech")?;
    let report = classify(&leech, &ClassifyConfig { bounds: opts.bounds });
    let bounded = Verdict::VerifiedUpTo {
        test_len: opts.bounds.test_len,
        prefix_len: opts.bounds.prefix_len,
    };
    let leech_ok = r13.survivors.contains(&leech)
        && report.verdict(Property::Squarefree).is_proven_true()
        && report.verdict(Property::Cubefree) == &bounded
        && report.verdict(Property::OverlapFree) == &bounded;
    passed &= leech_ok;
    parts.push(format!(
        "Leech {} ({} rank-13 survivors)",
        if leech_ok { "survives" } else { "FAILS" },
        r13.count
    ));
    Ok(Check::new(passed, parts.join("; ")))
}

fn word(s: &str) -> Word {
    parse_word(s, Notation::OneBased, Some(Alphabet::TERNARY)).expect("literal word")
}

fn fixture_reports(opts: &ReproduceOptions) -> Result<Check> {
    let mut failures = Vec::new();
    let mut expect = |ok: bool, what: &str| {
        if !ok {
            failures.push(what.to_string());
        }
    };

    let rank5 = load_morphism("rank5")?;
    let r = classify(
        &rank5,
        &ClassifyConfig {
            bounds: Bounds::new(opts.bounds.test_len, 15625),
        },
    );
    let bounded = Verdict::VerifiedUpTo {
        test_len: opts.bounds.test_len,
        prefix_len: 15625,
    };
    expect(r.verdict(Property::Cubefree) == &bounded, "rank5 cubefree bounded");
    expect(r.verdict(Property::WeaklySquarefree) == &bounded, "rank5 weakly squarefree bounded");
    expect(r.verdict(Property::HasFixedPoint).is_proven_true(), "rank5 fixed point");
    expect(r.verdict(Property::OverlapFree).is_refuted(), "rank5 overlap refuted");
    expect(
        refute_with(&rank5, RepetitionKind::Overlap, &word("212")).is_some(),
        "rank5 overlap in image of 212",
    );
    expect(
        refute_with(&rank5, RepetitionKind::Square, &word("212")).is_some(),
        "rank5 square in image of 212",
    );
    expect(r.audit(), "rank5 audit");

    let rank4 = load_morphism("rank4")?;
    let r = classify(&rank4, &ClassifyConfig { bounds: opts.bounds });
    expect(r.thue.holds, "rank4 Thue status");
    for p in [Property::Squarefree, Property::WeaklySquarefree] {
        let single = matches!(r.verdict(p), Verdict::RefutedBy { preimage, .. } if preimage.len() == 1);
        expect(single, &format!("rank4 {p} refuted by a letter"));
    }
    for l in ["1", "2", "3"] {
        expect(
            refute_with(&rank4, RepetitionKind::Square, &word(l)).is_some()
                && refute_with(&rank4, RepetitionKind::WeakSquare, &word(l)).is_some(),
            &format!("rank4 image of {l}"),
        );
    }
    expect(r.audit(), "rank4 audit");

    let rank3 = load_morphism("rank3")?;
    let r = classify(&rank3, &ClassifyConfig { bounds: opts.bounds });
    expect(r.verdict(Property::Cubefree).is_verified_up_to(), "rank3 cubefree bounded");
    for p in [Property::Squarefree, Property::WeaklySquarefree, Property::OverlapFree] {
        expect(r.verdict(p).is_refuted(), &format!("rank3 {p} refuted"));
    }
    expect(
        refute_with(&rank3, RepetitionKind::Square, &word("12")).is_some(),
        "rank3 square in image of 12",
    );
    expect(
        refute_with(&rank3, RepetitionKind::WeakSquare, &word("123")).is_some(),
        "rank3 weak square in image of 123",
    );
    expect(
        refute_with(&rank3, RepetitionKind::Overlap, &word("212")).is_some(),
        "rank3 overlap in image of 212",
    );
    expect(r.audit(), "rank3 audit");

    Ok(Check {
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            "rank 3, 4, 5 verdicts as stated".into()
        } else {
            format!("{} mismatches", failures.len())
        },
        diff: failures,
    })
}

fn thue_morse() -> Result<Check> {
    let tm = load_morphism("thue_morse")?;
    let prefix = tm.fixed_point_prefix(1, 1 << 16)?;
    let head = Notation::ZeroBased.render(&prefix[..16]);
    let cube = RepetitionKind::Cube.find(&prefix);
    let overlap = RepetitionKind::Overlap.find(&prefix);
    let passed = prefix.len() == 1 << 16
        && head == "1001011001101001"
        && cube.is_none()
        && overlap.is_none();
    Ok(Check::new(
        passed,
        format!(
            "{} letters, starts {head}, cube: {}, overlap: {}",
            prefix.len(),
            cube.map_or("none".into(), |w| w.to_string()),
            overlap.map_or("none".into(), |w| w.to_string())
        ),
    ))
}

fn avoidance() -> Result<Check> {
    let q = |forbid: &[&str], property, alphabet| {
        AvoidanceQuery::new(alphabet, forbid.iter().map(|f| word(f)).collect(), property, 200)
    };
    let pair = max_avoiding(&q(&["12"], PropertySet::SQUAREFREE, Alphabet::TERNARY)?)?;
    let pair_ok = match &pair.status {
        AvoidanceStatus::ExhaustedAt { max_len, witnesses } => {
            *max_len == 13 && witnesses.contains(&word("2321323132131"))
        }
        _ => false,
    };
    let triple = max_avoiding(&q(&["123"], PropertySet::SQUAREFREE, Alphabet::TERNARY)?)?;
    let m = triple.max_len();
    let binary = max_avoiding(&AvoidanceQuery::new(
        Alphabet::BINARY,
        vec![],
        PropertySet::of(&[RepetitionKind::Cube, RepetitionKind::WeakSquare]),
        200,
    )?)?;
    let passed = pair_ok
        && m.is_some_and(|m| m <= 36 && m == FORBID_123_MAX)
        && binary.max_len() == Some(5);
    Ok(Check::new(
        passed,
        format!(
            "without 12: {:?}; without 123: {:?} (bound 36); binary cubefree + weakly squarefree: {:?}",
            pair.max_len(),
            m,
            binary.max_len()
        ),
    ))
}

fn fixture_words() -> Result<Check> {
    let w718 = load_word("word718")?;
    let thue = load_morphism("thue1912")?;
    let prefix = thue.fixed_point_prefix(0, 100_000)?;
    let count = |w: &[Letter], f: &str| w.windows(3).filter(|x| *x == &word(f)[..]).count();
    let mut failures = Vec::new();
    let w_square = RepetitionKind::Square.find(&w718);
    let t_square = RepetitionKind::Square.find(&prefix);
    if w718.len() != 718 {
        failures.push(format!("word718 has {} letters", w718.len()));
    }
    if let Some(s) = w_square {
        failures.push(format!("word718 contains {s}"));
    }
    for (f, name) in [("121", "aba"), ("212", "bab")] {
        if let Some(pos) = w718.find_factor(&word(f)) {
            failures.push(format!(
                "word718 contains {name} {} times, first at {pos}",
                count(&w718, f)
            ));
        }
    }
    if let Some(s) = t_square {
        failures.push(format!("Thue 1912 prefix contains {s}"));
    }
    if let Some(pos) = prefix.find_factor(&word("323")) {
        failures.push(format!(
            "Thue 1912 prefix contains cbc {} times, first at {pos}; the image of c is acbcacb",
            count(&prefix, "323")
        ));
    }
    let query = AvoidanceQuery::new(
        Alphabet::TERNARY,
        vec![word("121"), word("212")],
        PropertySet::SQUAREFREE,
        w718.len(),
    )?;
    let word_ok = verify_avoidance(&w718, &query).is_none();
    let fixed_ok = avoidance_by_morphism(&thue, 0, &[word("323")], PropertySet::SQUAREFREE, 100_000)?
        .violation
        .is_none();
    Ok(Check {
        passed: failures.is_empty() && word_ok && fixed_ok,
        detail: format!(
            "word718 squarefree: {}; Thue 1912 prefix of {} squarefree: {}; {} violations",
            w_square.is_none(),
            prefix.len(),
            t_square.is_none(),
            failures.len()
        ),
        diff: failures,
    })
}
