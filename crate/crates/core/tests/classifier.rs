mod common;

use common::{naive_apply, naive_find, naive_matches, naive_squarefree_words};
use nonrep::classify::{
    check_bounded, classify, classify_batch, decide_squarefree, necessary_condition_refutation,
    refute_with, thue_necessary_conditions, Bounds, ClassifyConfig, NecessaryCondition, Property,
    Verdict,
};
use nonrep::io::{parse_compact, parse_word, Notation};
use nonrep::search::{search_uniform_squarefree, SearchOptions};
use nonrep::{Alphabet, Letter, Morphism, RepetitionKind, Word};
use proptest::prelude::*;

fn m(compact: &str) -> Morphism {
    parse_compact(compact).unwrap()
}

fn w(s: &str) -> Word {
    parse_word(s, Notation::OneBased, Some(Alphabet::TERNARY)).unwrap()
}

/// Re-checks a refutation with the brute-force detectors only.
fn naive_audit(m: &Morphism, kind: RepetitionKind, v: &Verdict) -> bool {
    let Verdict::RefutedBy { preimage, witness } = v else {
        return true;
    };
    let image = naive_apply(m.images(), preimage);
    witness.kind == kind
        && naive_find(kind, preimage).is_none()
        && naive_matches(kind, &image, witness.start - 1, witness.period)
}

fn brute_squarefree(m: &Morphism, tests: &[Vec<Letter>]) -> bool {
    tests
        .iter()
        .all(|t| naive_find(RepetitionKind::Square, &naive_apply(m.images(), t)).is_none())
}

#[test]
fn crochemore_positive_cases_survive_brute_force() {
    let tests = naive_squarefree_words(10);
    for rank in 11..=13 {
        for m in search_uniform_squarefree(rank, &SearchOptions::default())
            .unwrap()
            .survivors
        {
            assert!(brute_squarefree(&m, &tests));
        }
    }
    let thue = m("12312|131232|1323132");
    assert!(decide_squarefree(&thue, Bounds::default()).verdict.is_proven_true());
    assert!(brute_squarefree(&thue, &tests));
}

fn ternary_morphism(max_len: usize) -> impl Strategy<Value = Morphism> {
    prop::collection::vec(prop::collection::vec(0u8..3, 1..=max_len), 3)
        .prop_map(|ims| Morphism::new(Alphabet::TERNARY, ims).unwrap())
}

fn binary_morphism(max_len: usize) -> impl Strategy<Value = Morphism> {
    prop::collection::vec(prop::collection::vec(0u8..2, 1..=max_len), 2)
        .prop_map(|ims| Morphism::new(Alphabet::BINARY, ims).unwrap())
}

fn small_bounds() -> Bounds {
    Bounds::new(6, 500)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn squarefree_decisions_agree_with_brute_force(m in ternary_morphism(7)) {
        let tests = naive_squarefree_words(7);
        let d = decide_squarefree(&m, Bounds::default());
        prop_assert!(naive_audit(&m, RepetitionKind::Square, &d.verdict));
        if d.verdict.is_proven_true() {
            prop_assert!(brute_squarefree(&m, &tests));
        }
    }

    #[test]
    fn every_refutation_audits(m in ternary_morphism(6)) {
        let r = classify(&m, &ClassifyConfig { bounds: small_bounds() });
        prop_assert!(r.audit());
        for d in &r.decisions {
            if let Some(kind) = d.property.forbidden() {
                prop_assert!(naive_audit(&m, kind, &d.verdict), "{:?}", d);
            }
        }
    }

    #[test]
    fn binary_refutations_audit(m in binary_morphism(6)) {
        let r = classify(&m, &ClassifyConfig { bounds: small_bounds() });
        for d in &r.decisions {
            if let Some(kind) = d.property.forbidden() {
                prop_assert!(naive_audit(&m, kind, &d.verdict), "{:?}", d);
            }
        }
    }

    #[test]
    fn refutations_survive_larger_bounds(m in ternary_morphism(5), k in 1usize..6, l in 1usize..300) {
        for kind in [RepetitionKind::Cube, RepetitionKind::Overlap, RepetitionKind::WeakSquare] {
            let small = check_bounded(&m, kind, Bounds::new(k, l));
            if small.verdict.is_refuted() {
                let large = check_bounded(&m, kind, Bounds::new(k + 2, l * 3));
                prop_assert!(large.verdict.is_refuted());
            }
        }
    }

    #[test]
    fn thue_status_follows_its_definition(m in ternary_morphism(5)) {
        let r = classify(&m, &ClassifyConfig { bounds: small_bounds() });
        let expected = !r.verdict(Property::Cubefree).is_refuted()
            && !r.verdict(Property::OverlapFree).is_refuted()
            && r.verdict(Property::HasFixedPoint).is_proven_true();
        prop_assert_eq!(r.thue.holds, expected);
        prop_assert_eq!(r.verdict(Property::HasFixedPoint).is_proven_true(), !m.fixed_point_seeds().is_empty());
    }
}

#[test]
fn necessary_conditions_on_all_rank_two_and_three_morphisms() {
    for rank in 2..=3 {
        let words = common::all_words(3, rank);
        for a in &words {
            for b in &words {
                for c in &words {
                    let ims = vec![a.clone(), b.clone(), c.clone()];
                    let m = Morphism::new(Alphabet::TERNARY, ims.clone()).unwrap();
                    let checks = thue_necessary_conditions(&m).unwrap();
                    let firsts = [a[0], b[0], c[0]];
                    let lasts = [a[rank - 1], b[rank - 1], c[rank - 1]];
                    let distinct = |x: [u8; 3]| x[0] != x[1] && x[1] != x[2] && x[0] != x[2];
                    assert_eq!(checks[0].passed, distinct(firsts));
                    assert_eq!(checks[1].passed, distinct(lasts));
                    assert_eq!(
                        checks[2].passed,
                        ims.iter().all(|im| im[0] != im[1] && im[rank - 1] != im[rank - 2])
                    );
                    assert_eq!(checks[3].passed, firsts == lasts);
                    if let Some((cond, r)) = necessary_condition_refutation(&m).unwrap() {
                        assert!(!checks.iter().find(|c| c.condition == cond).unwrap().passed);
                        let image = naive_apply(&ims, &r.preimage);
                        assert!(naive_find(r.kind, &r.preimage).is_none());
                        assert!(naive_matches(r.kind, &image, r.witness.start - 1, r.witness.period));
                    }
                    if checks.iter().any(|c| !c.passed) {
                        assert!(necessary_condition_refutation(&m).unwrap().is_some());
                    }
                }
            }
        }
    }
}

#[test]
fn doubled_first_letter_is_refuted_by_a_cube() {
    let m = m("113|231|312");
    assert!(!NecessaryCondition::NoDoubledBorderLetters.holds(&m));
    let r = NecessaryCondition::NoDoubledBorderLetters.refutation(&m).unwrap();
    assert_eq!(r.kind, RepetitionKind::Cube);
    assert!(r.audit(&m));
}

#[test]
fn rank_five_example() {
    let rank5 = m("12321|23132|31213");
    let r = classify(&rank5, &ClassifyConfig { bounds: Bounds::new(8, 15625) });
    let bounded = Verdict::VerifiedUpTo {
        test_len: 8,
        prefix_len: 15625,
    };
    assert_eq!(r.verdict(Property::Cubefree), &bounded);
    assert_eq!(r.verdict(Property::WeaklySquarefree), &bounded);
    assert!(r.verdict(Property::OverlapFree).is_refuted());
    assert!(r.verdict(Property::HasFixedPoint).is_proven_true());
    let overlap = refute_with(&rank5, RepetitionKind::Overlap, &w("212")).unwrap();
    // φ(212) = 231 3 212 3 212 3 132
    assert_eq!(overlap.witness.start, 4);
    assert_eq!(overlap.witness.period, 3);
}

#[test]
fn rank_three_remarks() {
    let rank3 = m("121|232|313");
    let square = refute_with(&rank3, RepetitionKind::Square, &w("12")).unwrap();
    assert_eq!((square.witness.start, square.witness.period), (1, 2));
    assert!(refute_with(&rank3, RepetitionKind::WeakSquare, &w("123")).is_some());
    assert!(refute_with(&rank3, RepetitionKind::Overlap, &w("212")).is_some());
    let r = classify(&rank3, &ClassifyConfig::default());
    assert!(r.verdict(Property::Cubefree).is_verified_up_to());
    assert!(r.verdict(Property::OverlapFree).is_refuted());
    assert!(!r.thue.holds);
}

#[test]
fn binary_weakly_squarefree_example() {
    let m = Morphism::new(Alphabet::BINARY, vec![vec![0, 1], vec![0, 1]]).unwrap();
    let r = classify(&m, &ClassifyConfig::default());
    assert!(r.verdict(Property::WeaklySquarefree).is_verified_up_to());
}

#[test]
fn leech_report() {
    let leech = m("1232132312321|2313213123132|3121321231213");
    let r = classify(&leech, &ClassifyConfig::default());
    assert_eq!(
        r.verdict(Property::Squarefree),
        &Verdict::ProvenTrue {
            criterion: "crochemore-k3".into()
        }
    );
    for p in [Property::Cubefree, Property::OverlapFree, Property::WeaklySquarefree] {
        assert_eq!(
            r.verdict(p),
            &Verdict::VerifiedUpTo {
                test_len: 8,
                prefix_len: 10_000
            }
        );
    }
    assert!(r.verdict(Property::Cyclic).is_proven_true());
    assert!(r.thue.holds);
    assert!(thue_necessary_conditions(&leech).unwrap().iter().all(|c| c.passed));
}

#[test]
fn batch_matches_single_classification() {
    let ms: Vec<Morphism> = ["121|232|313", "1221|2332|3113", "12321|23132|31213", "12|23|31"]
        .iter()
        .map(|s| m(s))
        .collect();
    let cfg = ClassifyConfig { bounds: small_bounds() };
    let batch = classify_batch(&ms, &cfg);
    for (m, r) in ms.iter().zip(&batch) {
        assert_eq!(r, &classify(m, &cfg));
    }
}
