//! Per-morphism decisions for the four preservation properties, fixed points
//! and cyclicity.
//!
//! Squarefreeness of a ternary morphism is decided exactly by Crochemore's
//! test sets: the images of all squarefree words of length at most 3
//! (uniform morphisms) or 5 (general ones). No finite test set is used for
//! the other three properties; for those the classifier searches for a
//! counterexample among short clean words and along fixed-point prefixes,
//! and otherwise reports the bounds it checked. A [`Verdict::VerifiedUpTo`]
//! is evidence, never a proof.

use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::clean_words_by_length;
use crate::error::Result;
use crate::io::{morphism_serde, word_serde, Notation};
use crate::morphism::{FixedPointStream, Morphism};
use crate::repetition::{PropertySet, RepetitionKind, RepetitionWitness};
use crate::word::{Alphabet, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Squarefree,
    Cubefree,
    OverlapFree,
    WeaklySquarefree,
    HasFixedPoint,
    Cyclic,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::Squarefree,
        Property::Cubefree,
        Property::OverlapFree,
        Property::WeaklySquarefree,
        Property::HasFixedPoint,
        Property::Cyclic,
    ];

    pub fn free_of(kind: RepetitionKind) -> Property {
        match kind {
            RepetitionKind::Square => Property::Squarefree,
            RepetitionKind::Cube => Property::Cubefree,
            RepetitionKind::Overlap => Property::OverlapFree,
            RepetitionKind::WeakSquare => Property::WeaklySquarefree,
        }
    }

    /// The repetition this property forbids, for the four "-free" ones.
    pub fn forbidden(self) -> Option<RepetitionKind> {
        match self {
            Property::Squarefree => Some(RepetitionKind::Square),
            Property::Cubefree => Some(RepetitionKind::Cube),
            Property::OverlapFree => Some(RepetitionKind::Overlap),
            Property::WeaklySquarefree => Some(RepetitionKind::WeakSquare),
            Property::HasFixedPoint | Property::Cyclic => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Property::HasFixedPoint => "fixed point",
            Property::Cyclic => "cyclic",
            other => other.forbidden().map(RepetitionKind::free_name).unwrap_or(""),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Search bounds for properties without an exact decision procedure:
/// clean test words up to `test_len` letters, fixed-point prefixes of at
/// least `prefix_len` letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bounds {
    pub test_len: usize,
    pub prefix_len: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            test_len: 8,
            prefix_len: 10_000,
        }
    }
}

impl Bounds {
    pub fn new(test_len: usize, prefix_len: usize) -> Self {
        Bounds {
            test_len,
            prefix_len,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    /// Decided by a finite criterion.
    ProvenTrue { criterion: String },
    /// Decided negatively by a finite check that has no repetition witness
    /// (no fixed-point seed, not cyclic).
    ProvenFalse { criterion: String },
    /// `preimage` is clean for the property but its image contains `witness`.
    RefutedBy {
        #[serde(with = "word_serde")]
        preimage: Word,
        witness: RepetitionWitness,
    },
    /// No counterexample within the bounds; `prefix_len` is 0 when the
    /// morphism has no fixed point to scan.
    VerifiedUpTo { test_len: usize, prefix_len: usize },
}

impl Verdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::RefutedBy { .. })
    }

    pub fn is_proven_true(&self) -> bool {
        matches!(self, Verdict::ProvenTrue { .. })
    }

    pub fn is_verified_up_to(&self) -> bool {
        matches!(self, Verdict::VerifiedUpTo { .. })
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Verdict::ProvenTrue { .. } => "proven",
            Verdict::ProvenFalse { .. } => "disproven",
            Verdict::RefutedBy { .. } => "refuted",
            Verdict::VerifiedUpTo { .. } => "verified-up-to",
        }
    }
}

impl Verdict {
    /// Human-readable form with preimages written in `notation`.
    pub fn render(&self, notation: Notation) -> String {
        match self {
            Verdict::ProvenTrue { criterion } => format!("PROVEN ({criterion})"),
            Verdict::ProvenFalse { criterion } => format!("DISPROVEN ({criterion})"),
            Verdict::RefutedBy { preimage, witness } => format!(
                "REFUTED by image of {}: {witness}",
                notation.render(preimage)
            ),
            Verdict::VerifiedUpTo {
                test_len,
                prefix_len,
            } => format!(
                "no counterexample (test words <= {test_len}, fixed-point prefix >= {prefix_len}; not a proof)"
            ),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::OneBased))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyDecision {
    pub property: Property,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl PropertyDecision {
    /// A refutation re-validates against `m`; other verdicts pass trivially.
    pub fn audit(&self, m: &Morphism) -> bool {
        match (&self.verdict, self.property.forbidden()) {
            (Verdict::RefutedBy { preimage, witness }, Some(kind)) => Refutation {
                kind,
                preimage: preimage.clone(),
                witness: *witness,
            }
            .audit(m),
            (Verdict::RefutedBy { .. }, None) => false,
            _ => true,
        }
    }
}

/// A clean word whose image contains a repetition of the same kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refutation {
    pub kind: RepetitionKind,
    #[serde(with = "word_serde")]
    pub preimage: Word,
    pub witness: RepetitionWitness,
}

impl Refutation {
    pub fn property(&self) -> Property {
        Property::free_of(self.kind)
    }

    pub fn audit(&self, m: &Morphism) -> bool {
        self.witness.kind == self.kind
            && m.alphabet().check(&self.preimage).is_ok()
            && PropertySet::single(self.kind).is_clean(&self.preimage)
            && self.witness.validate(&m.apply_letters(&self.preimage))
    }

    pub fn into_decision(self) -> PropertyDecision {
        PropertyDecision {
            property: self.property(),
            verdict: Verdict::RefutedBy {
                preimage: self.preimage,
                witness: self.witness,
            },
        }
    }
}

/// Refutation of `kind`-freeness by the specific `preimage`, if it is clean
/// and its image is not.
pub fn refute_with(m: &Morphism, kind: RepetitionKind, preimage: &Word) -> Option<Refutation> {
    if m.alphabet().check(preimage).is_err() || !PropertySet::single(kind).is_clean(preimage) {
        return None;
    }
    kind.find(&m.apply_letters(preimage))
        .map(|witness| Refutation {
            kind,
            preimage: preimage.clone(),
            witness,
        })
}

/// Crochemore's exact test for ternary morphisms; other alphabets fall back
/// to [`check_bounded`].
pub fn decide_squarefree(m: &Morphism, bounds: Bounds) -> PropertyDecision {
    if !m.alphabet().is_ternary() {
        return check_bounded(m, RepetitionKind::Square, bounds);
    }
    let (max_len, criterion) = match m.uniform_rank() {
        Some(_) => (3, "crochemore-k3"),
        None => (5, "crochemore-k5"),
    };
    let levels = clean_words_by_length(Alphabet::TERNARY, max_len, PropertySet::SQUAREFREE);
    let mut image = Vec::new();
    for w in levels.iter().flatten() {
        image.clear();
        m.apply_into(w, &mut image);
        if let Some(witness) = RepetitionKind::Square.find(&image) {
            return PropertyDecision {
                property: Property::Squarefree,
                verdict: Verdict::RefutedBy {
                    preimage: Word::from_trusted(Alphabet::TERNARY, w.clone()),
                    witness,
                },
            };
        }
    }
    PropertyDecision {
        property: Property::Squarefree,
        verdict: Verdict::ProvenTrue {
            criterion: criterion.into(),
        },
    }
}

/// Sound refutation search with bounded verification. Test words are tried
/// shortest first, lexicographically within a length; then the fixed-point
/// iterates of every seed are scanned until they reach the prefix bound.
pub fn check_bounded(m: &Morphism, kind: RepetitionKind, bounds: Bounds) -> PropertyDecision {
    BoundedChecker::new(m.alphabet(), bounds).check(m, kind)
}

/// [`check_bounded`] with the clean test words cached, for sweeps over
/// many morphisms on one alphabet.
#[derive(Debug)]
pub struct BoundedChecker {
    alphabet: Alphabet,
    bounds: Bounds,
    words: [OnceLock<Vec<Vec<Letter>>>; 4],
}

impl BoundedChecker {
    pub fn new(alphabet: Alphabet, bounds: Bounds) -> Self {
        BoundedChecker {
            alphabet,
            bounds,
            words: Default::default(),
        }
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    fn test_words(&self, kind: RepetitionKind) -> &[Vec<Letter>] {
        self.words[kind as usize].get_or_init(|| {
            clean_words_by_length(
                self.alphabet,
                self.bounds.test_len,
                PropertySet::single(kind),
            )
            .into_iter()
            .flatten()
            .collect()
        })
    }

    pub fn check(&self, m: &Morphism, kind: RepetitionKind) -> PropertyDecision {
        match self.refute(m, kind) {
            Some(r) => r.into_decision(),
            None => PropertyDecision {
                property: Property::free_of(kind),
                verdict: Verdict::VerifiedUpTo {
                    test_len: self.bounds.test_len,
                    prefix_len: if m.fixed_point_seeds().is_empty() {
                        0
                    } else {
                        self.bounds.prefix_len
                    },
                },
            },
        }
    }

    pub fn refute(&self, m: &Morphism, kind: RepetitionKind) -> Option<Refutation> {
        debug_assert_eq!(m.alphabet(), self.alphabet);
        self.refute_by_words(m, kind)
            .or_else(|| self.refute_by_fixed_points(m, kind))
    }

    pub fn refute_by_words(&self, m: &Morphism, kind: RepetitionKind) -> Option<Refutation> {
        let mut image = Vec::new();
        for w in self.test_words(kind) {
            image.clear();
            m.apply_into(w, &mut image);
            if let Some(witness) = kind.find(&image) {
                return Some(Refutation {
                    kind,
                    preimage: Word::from_trusted(self.alphabet, w.clone()),
                    witness,
                });
            }
        }
        None
    }

    /// Finds the first iterate `A_{n+1} = φ(A_n)` containing the pattern;
    /// `A_n` is then clean and serves as the preimage.
    pub fn refute_by_fixed_points(&self, m: &Morphism, kind: RepetitionKind) -> Option<Refutation> {
        for seed in m.fixed_point_seeds() {
            let mut stream = FixedPointStream::new(m.clone(), seed).expect("seed");
            while stream.prefix().len() < self.bounds.prefix_len {
                let preimage = stream.prefix().to_vec();
                if let Some(witness) = kind.find(stream.step()) {
                    return Some(Refutation {
                        kind,
                        preimage: Word::from_trusted(self.alphabet, preimage),
                        witness,
                    });
                }
            }
        }
        None
    }
}

/// Structural conditions every weakly squarefree Thue morphism over the
/// ternary alphabet satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NecessaryCondition {
    /// Images start with pairwise different letters.
    DistinctFirstLetters,
    /// Images end with pairwise different letters.
    DistinctLastLetters,
    /// No image starts or ends with a doubled letter.
    NoDoubledBorderLetters,
    /// Every image starts and ends with the same letter.
    FirstEqualsLast,
}

impl NecessaryCondition {
    pub const ALL: [NecessaryCondition; 4] = [
        NecessaryCondition::DistinctFirstLetters,
        NecessaryCondition::DistinctLastLetters,
        NecessaryCondition::NoDoubledBorderLetters,
        NecessaryCondition::FirstEqualsLast,
    ];

    pub fn holds(self, m: &Morphism) -> bool {
        let ims = m.images();
        let first = |a: usize| ims[a][0];
        let last = |a: usize| *ims[a].last().expect("non-erasing");
        let pairs = || (0..ims.len()).flat_map(|a| (a + 1..ims.len()).map(move |b| (a, b)));
        match self {
            NecessaryCondition::DistinctFirstLetters => pairs().all(|(a, b)| first(a) != first(b)),
            NecessaryCondition::DistinctLastLetters => pairs().all(|(a, b)| last(a) != last(b)),
            NecessaryCondition::NoDoubledBorderLetters => ims
                .iter()
                .all(|im| im.len() < 2 || (im[0] != im[1] && im[im.len() - 1] != im[im.len() - 2])),
            NecessaryCondition::FirstEqualsLast => (0..ims.len()).all(|a| first(a) == last(a)),
        }
    }

    /// A concrete counterexample when the condition fails. The preimages
    /// follow the arguments behind each condition: `aab` or `abb` for
    /// shared border letters (overlap), `ab` or `ba` against a doubled
    /// border letter (cube), `ab` against differing borders (weak square).
    pub fn refutation(self, m: &Morphism) -> Option<Refutation> {
        let ims = m.images();
        let k = ims.len();
        let first = |a: usize| ims[a][0];
        let last = |a: usize| *ims[a].last().expect("non-erasing");
        let starting_with = |x: Letter| (0..k).find(|&b| first(b) == x);
        let ending_with = |x: Letter| (0..k).find(|&b| last(b) == x);
        let candidate: Option<(RepetitionKind, Vec<usize>)> = match self {
            NecessaryCondition::DistinctFirstLetters => (0..k)
                .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
                .find(|&(a, b)| first(a) == first(b))
                .map(|(a, b)| (RepetitionKind::Overlap, vec![a, a, b])),
            NecessaryCondition::DistinctLastLetters => (0..k)
                .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
                .find(|&(a, b)| last(a) == last(b))
                .map(|(a, b)| (RepetitionKind::Overlap, vec![a, b, b])),
            NecessaryCondition::NoDoubledBorderLetters => (0..k).find_map(|a| {
                let im = &ims[a];
                let n = im.len();
                if n >= 2 && im[n - 1] == im[n - 2] {
                    if let Some(b) = starting_with(im[n - 1]) {
                        return Some((RepetitionKind::Cube, vec![a, b]));
                    }
                }
                if n >= 2 && im[0] == im[1] {
                    if let Some(b) = ending_with(im[0]) {
                        return Some((RepetitionKind::Cube, vec![b, a]));
                    }
                }
                None
            }),
            NecessaryCondition::FirstEqualsLast => (0..k).find_map(|a| {
                (first(a) != last(a))
                    .then(|| starting_with(last(a)))
                    .flatten()
                    .map(|b| (RepetitionKind::WeakSquare, vec![a, b]))
            }),
        };
        let (kind, preimage) = candidate?;
        let preimage = Word::from_trusted(
            m.alphabet(),
            preimage.into_iter().map(|l| l as Letter).collect(),
        );
        refute_with(m, kind, &preimage)
    }
}

impl fmt::Display for NecessaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NecessaryCondition::DistinctFirstLetters => "distinct first letters",
            NecessaryCondition::DistinctLastLetters => "distinct last letters",
            NecessaryCondition::NoDoubledBorderLetters => "no doubled border letters",
            NecessaryCondition::FirstEqualsLast => "first letter equals last letter",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub condition: NecessaryCondition,
    pub passed: bool,
}

pub fn thue_necessary_conditions(m: &Morphism) -> Result<Vec<ConditionCheck>> {
    m.alphabet().require_ternary()?;
    Ok(NecessaryCondition::ALL
        .iter()
        .map(|&condition| ConditionCheck {
            condition,
            passed: condition.holds(m),
        })
        .collect())
}

/// First failing condition, in declaration order, that yields a concrete
/// refutation.
pub fn necessary_condition_refutation(
    m: &Morphism,
) -> Result<Option<(NecessaryCondition, Refutation)>> {
    m.alphabet().require_ternary()?;
    Ok(NecessaryCondition::ALL.iter().find_map(|&c| {
        if c.holds(m) {
            None
        } else {
            c.refutation(m).map(|r| (c, r))
        }
    }))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyConfig {
    pub bounds: Bounds,
}

/// Cubefree, overlap-free and with a fixed point. When cube- and
/// overlap-freeness are only verified up to bounds, those bounds are kept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThueStatus {
    pub holds: bool,
    pub verified_up_to: Option<Bounds>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismReport {
    #[serde(with = "morphism_serde")]
    pub morphism: Morphism,
    pub decisions: Vec<PropertyDecision>,
    pub thue: ThueStatus,
}

impl MorphismReport {
    pub fn decision(&self, property: Property) -> &PropertyDecision {
        self.decisions
            .iter()
            .find(|d| d.property == property)
            .expect("every property is decided")
    }

    pub fn verdict(&self, property: Property) -> &Verdict {
        &self.decision(property).verdict
    }

    pub fn audit(&self) -> bool {
        self.decisions.iter().all(|d| d.audit(&self.morphism))
    }
}

pub fn classify(m: &Morphism, config: &ClassifyConfig) -> MorphismReport {
    let checker = BoundedChecker::new(m.alphabet(), config.bounds);
    let mut decisions = vec![decide_squarefree(m, config.bounds)];
    for kind in [
        RepetitionKind::Cube,
        RepetitionKind::Overlap,
        RepetitionKind::WeakSquare,
    ] {
        decisions.push(checker.check(m, kind));
    }
    let seeds = m.fixed_point_seeds();
    decisions.push(PropertyDecision {
        property: Property::HasFixedPoint,
        verdict: if seeds.is_empty() {
            Verdict::ProvenFalse {
                criterion: "no image starts with its own letter".into(),
            }
        } else {
            Verdict::ProvenTrue {
                criterion: "some image starts with its own letter".into(),
            }
        },
    });
    decisions.push(PropertyDecision {
        property: Property::Cyclic,
        verdict: match m.is_cyclic() {
            Ok(true) => Verdict::ProvenTrue {
                criterion: "images rotate with their letters".into(),
            },
            Ok(false) => Verdict::ProvenFalse {
                criterion: "images do not rotate with their letters".into(),
            },
            Err(_) => Verdict::ProvenFalse {
                criterion: "not a ternary morphism".into(),
            },
        },
    });

    let find = |p: Property| &decisions.iter().find(|d| d.property == p).unwrap().verdict;
    let cube = find(Property::Cubefree);
    let overlap = find(Property::OverlapFree);
    let holds =
        !cube.is_refuted() && !overlap.is_refuted() && find(Property::HasFixedPoint).is_proven_true();
    let verified_up_to = (holds && (cube.is_verified_up_to() || overlap.is_verified_up_to()))
        .then_some(config.bounds);
    MorphismReport {
        morphism: m.clone(),
        thue: ThueStatus {
            holds,
            verified_up_to,
        },
        decisions,
    }
}

/// Data-parallel [`classify`]; results come back in input order.
pub fn classify_batch(ms: &[Morphism], config: &ClassifyConfig) -> Vec<MorphismReport> {
    ms.par_iter().map(|m| classify(m, config)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Vec<Letter> {
        s.bytes().map(|b| b - b'1').collect()
    }

    fn tern(images: [&str; 3]) -> Morphism {
        Morphism::new(Alphabet::TERNARY, images.iter().map(|s| t(s)).collect()).unwrap()
    }

    fn word(s: &str) -> Word {
        Word::new(Alphabet::TERNARY, t(s)).unwrap()
    }

    fn preimage(v: &Verdict) -> String {
        match v {
            Verdict::RefutedBy { preimage, .. } => Notation::OneBased.render(preimage),
            other => panic!("expected a refutation, got {other:?}"),
        }
    }

    #[test]
    fn squarefree_decisions() {
        let leech = tern(["1232132312321", "2313213123132", "3121321231213"]);
        assert!(decide_squarefree(&leech, Bounds::default()).verdict.is_proven_true());
        let id = Morphism::identity(Alphabet::TERNARY);
        assert_eq!(
            decide_squarefree(&id, Bounds::default()).verdict,
            Verdict::ProvenTrue {
                criterion: "crochemore-k3".into()
            }
        );
        let thue = tern(["12312", "131232", "1323132"]);
        assert_eq!(
            decide_squarefree(&thue, Bounds::default()).verdict,
            Verdict::ProvenTrue {
                criterion: "crochemore-k5".into()
            }
        );
    }

    #[test]
    fn rank_five_is_not_squarefree() {
        let m = tern(["12321", "23132", "31213"]);
        let d = decide_squarefree(&m, Bounds::default());
        assert!(d.audit(&m));
        // lexicographically first failing test word; "212" is its rotation
        assert_eq!(preimage(&d.verdict), "131");
        assert!(refute_with(&m, RepetitionKind::Square, &word("212")).is_some());
        assert!(refute_with(&m, RepetitionKind::Overlap, &word("212")).is_some());
    }

    #[test]
    fn bounded_refutations() {
        let m = tern(["1221", "2332", "3113"]);
        let d = check_bounded(&m, RepetitionKind::WeakSquare, Bounds::default());
        assert_eq!(preimage(&d.verdict), "1");
        assert!(d.audit(&m));

        let m = tern(["121", "232", "313"]);
        let d = check_bounded(&m, RepetitionKind::Overlap, Bounds::default());
        assert!(d.verdict.is_refuted() && d.audit(&m));
        assert!(refute_with(&m, RepetitionKind::Overlap, &word("212")).is_some());
    }

    #[test]
    fn bounded_verification_is_labelled() {
        let m = tern(["12321", "23132", "31213"]);
        let d = check_bounded(&m, RepetitionKind::Cube, Bounds::new(7, 15625));
        assert_eq!(
            d.verdict,
            Verdict::VerifiedUpTo {
                test_len: 7,
                prefix_len: 15625
            }
        );
        assert!(d.verdict.to_string().contains("not a proof"));
    }

    #[test]
    fn refute_with_rejects_dirty_preimages() {
        let m = tern(["121", "232", "313"]);
        // "11" is not squarefree, so it cannot refute squarefreeness
        assert!(refute_with(&m, RepetitionKind::Square, &word("11")).is_none());
        assert!(refute_with(&m, RepetitionKind::Square, &word("12")).is_some());
    }

    #[test]
    fn fixed_point_refutation_preimage_is_clean() {
        // binary 0 -> 01, 1 -> 10: images of single letters are clean but
        // the fixed point quickly contains "00" (a weak square).
        let tm = Morphism::new(Alphabet::BINARY, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let checker = BoundedChecker::new(Alphabet::BINARY, Bounds::new(0, 100));
        let r = checker
            .refute_by_fixed_points(&tm, RepetitionKind::WeakSquare)
            .unwrap();
        assert!(r.audit(&tm));
    }

    #[test]
    fn necessary_conditions() {
        let leech = tern(["1232132312321", "2313213123132", "3121321231213"]);
        assert!(thue_necessary_conditions(&leech)
            .unwrap()
            .iter()
            .all(|c| c.passed));
        assert_eq!(necessary_condition_refutation(&leech).unwrap(), None);

        let m = tern(["12", "23", "31"]);
        let checks = thue_necessary_conditions(&m).unwrap();
        assert!(checks[0].passed && checks[1].passed && checks[2].passed);
        assert!(!checks[3].passed);
        let (c, r) = necessary_condition_refutation(&m).unwrap().unwrap();
        assert_eq!(c, NecessaryCondition::FirstEqualsLast);
        assert_eq!(r.kind, RepetitionKind::WeakSquare);
        assert!(r.audit(&m));

        let m = tern(["1131", "2312", "3123"]);
        assert!(!NecessaryCondition::NoDoubledBorderLetters.holds(&m));
        let r = NecessaryCondition::NoDoubledBorderLetters.refutation(&m).unwrap();
        assert_eq!(r.kind, RepetitionKind::Cube);
        assert!(r.audit(&m));

        let m = tern(["121", "131", "323"]);
        let (c, r) = necessary_condition_refutation(&m).unwrap().unwrap();
        assert_eq!(c, NecessaryCondition::DistinctFirstLetters);
        assert_eq!(Notation::OneBased.render(&r.preimage), "112");
        assert!(r.audit(&m));

        let bin = Morphism::new(Alphabet::BINARY, vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(thue_necessary_conditions(&bin).is_err());
    }

    #[test]
    fn classify_rank_four() {
        let m = tern(["1221", "2332", "3113"]);
        let r = classify(&m, &ClassifyConfig::default());
        assert!(r.thue.holds);
        assert_eq!(r.thue.verified_up_to, Some(Bounds::default()));
        assert_eq!(preimage(r.verdict(Property::Squarefree)), "1");
        assert_eq!(preimage(r.verdict(Property::WeaklySquarefree)), "1");
        assert!(r.verdict(Property::HasFixedPoint).is_proven_true());
        assert!(r.verdict(Property::Cyclic).is_proven_true());
        assert!(r.audit());
    }

    #[test]
    fn classify_binary_weakly_squarefree() {
        let m = Morphism::new(Alphabet::BINARY, vec![vec![0, 1], vec![0, 1]]).unwrap();
        let r = classify(&m, &ClassifyConfig::default());
        assert!(r.verdict(Property::WeaklySquarefree).is_verified_up_to());
        assert!(r.verdict(Property::Cubefree).is_refuted());
        assert!(!r.thue.holds);
        assert_eq!(
            r.verdict(Property::Cyclic),
            &Verdict::ProvenFalse {
                criterion: "not a ternary morphism".into()
            }
        );
    }

    #[test]
    fn batch_preserves_order() {
        let ms = vec![
            tern(["121", "232", "313"]),
            tern(["1221", "2332", "3113"]),
            Morphism::identity(Alphabet::TERNARY),
        ];
        let reports = classify_batch(&ms, &ClassifyConfig::default());
        for (m, r) in ms.iter().zip(&reports) {
            assert_eq!(&r.morphism, m);
        }
    }
}
