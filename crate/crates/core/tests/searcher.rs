mod common;

use nonrep::classify::{check_bounded, decide_squarefree, Bounds};
use nonrep::io::{census_table, parse_compact, serialize_compact};
use nonrep::search::{
    orbit_reduce, search_cyclic_squarefree, search_triple_property, search_uniform_squarefree,
    search_weakly_squarefree_thue, SearchOptions,
};
use nonrep::transform::TransformGroup;
use nonrep::{Alphabet, RepetitionKind};

fn opts() -> SearchOptions {
    SearchOptions::default()
}

#[test]
fn pruned_search_equals_unpruned() {
    let unpruned = SearchOptions {
        prune: false,
        ..opts()
    };
    for rank in (2..=8).chain([11]) {
        let a = search_uniform_squarefree(rank, &opts()).unwrap();
        let b = search_uniform_squarefree(rank, &unpruned).unwrap();
        assert_eq!(a.survivors, b.survivors, "rank {rank}");
    }
}

#[test]
fn small_ranks_are_empty_by_brute_force() {
    let tests = common::naive_squarefree_words(5);
    for rank in 2..=6 {
        let pool: Vec<Vec<u8>> = common::naive_squarefree_words(rank)
            .into_iter()
            .filter(|w| w.len() == rank)
            .collect();
        let mut brute = 0;
        for a in &pool {
            for b in &pool {
                for c in &pool {
                    let ims = vec![a.clone(), b.clone(), c.clone()];
                    if tests.iter().all(|w| {
                        common::naive_find(RepetitionKind::Square, &common::naive_apply(&ims, w))
                            .is_none()
                    }) {
                        brute += 1;
                    }
                }
            }
        }
        assert_eq!(brute, 0, "rank {rank}");
        assert_eq!(search_uniform_squarefree(rank, &opts()).unwrap().count, 0);
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let one = SearchOptions {
        threads: 1,
        ..opts()
    };
    let four = SearchOptions {
        threads: 4,
        ..opts()
    };
    for rank in [11, 12] {
        let a = search_uniform_squarefree(rank, &one).unwrap();
        let b = search_uniform_squarefree(rank, &four).unwrap();
        assert_eq!(a.survivors, b.survivors);
        assert_eq!(a.orbit_classes, b.orbit_classes);
        assert_eq!(census_table(&a.survivors), census_table(&b.survivors));
    }
    let a = search_weakly_squarefree_thue(Alphabet::TERNARY, 3, &SearchOptions { record_refutations: true, ..one }).unwrap();
    let b = search_weakly_squarefree_thue(Alphabet::TERNARY, 3, &SearchOptions { record_refutations: true, ..four }).unwrap();
    assert_eq!(a.refutations, b.refutations);
}

#[test]
fn transforms_preserve_squarefreeness() {
    let group = TransformGroup::full_ternary();
    for rank in [11, 13] {
        let r = search_uniform_squarefree(rank, &opts()).unwrap();
        for m in &r.survivors {
            for g in group.elements() {
                let image = g.apply(m).unwrap();
                assert_eq!(image.uniform_rank(), Some(rank));
                assert!(decide_squarefree(&image, Bounds::default()).verdict.is_proven_true());
                assert!(r.survivors.contains(&image));
            }
        }
    }
}

#[test]
fn orbit_bookkeeping() {
    let group = TransformGroup::full_ternary();
    for rank in 11..=13 {
        let r = search_uniform_squarefree(rank, &opts()).unwrap();
        let classes = orbit_reduce(&r.survivors, &group);
        assert_eq!(classes, r.orbit_classes);
        assert_eq!(classes.iter().map(|c| c.size).sum::<usize>(), r.count);
        for c in &classes {
            assert_eq!(72 % c.full_orbit_size, 0);
            assert!(c.closed);
            let orbit = group.orbit(&c.representative).unwrap();
            let least = orbit.keys().next().unwrap();
            assert_eq!(least, &serialize_compact(&c.representative));
        }
    }
}

#[test]
fn survivors_are_sorted_and_distinct() {
    let r = search_uniform_squarefree(12, &opts()).unwrap();
    let keys: Vec<String> = r.survivors.iter().map(serialize_compact).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(keys, sorted);
}

#[test]
fn derived_counts_beyond_the_census() {
    // pinned from the first run; no published value exists for these ranks
    let r12 = search_uniform_squarefree(12, &opts()).unwrap();
    assert_eq!(r12.count, 216);
    assert_eq!(r12.orbit_classes.len(), 3);
    assert!(r12.survivors.iter().all(|m| !m.is_cyclic().unwrap()));
    let r13 = search_uniform_squarefree(13, &opts()).unwrap();
    assert_eq!(r13.count, 12);
    assert_eq!(search_cyclic_squarefree(13, &opts()).unwrap().count, 6);
}

#[test]
fn cyclic_search_agrees_with_full_census() {
    for rank in 2..=13 {
        let cyclic = search_cyclic_squarefree(rank, &opts()).unwrap();
        let full = search_uniform_squarefree(rank, &opts()).unwrap();
        let filtered: Vec<_> = full
            .survivors
            .into_iter()
            .filter(|m| m.is_cyclic().unwrap())
            .collect();
        assert_eq!(cyclic.survivors, filtered, "rank {rank}");
    }
}

#[test]
fn cyclic_squarefree_morphisms_are_never_refuted_on_weak_squares() {
    let bounds = Bounds::new(8, 10_000);
    let mut checked = 0;
    for rank in 2..=13 {
        for m in search_cyclic_squarefree(rank, &opts()).unwrap().survivors {
            let d = check_bounded(&m, RepetitionKind::WeakSquare, bounds);
            assert!(!d.verdict.is_refuted(), "{}", serialize_compact(&m));
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn triple_property_refutations_are_short_and_valid() {
    for rank in [11, 12] {
        let r = search_triple_property(rank, &opts()).unwrap();
        assert_eq!(r.count, 0);
        assert_eq!(r.refutations.len() as u64, r.candidate_pool_size);
        for c in &r.refutations {
            assert!(c.refutation.audit(&c.morphism));
            assert!(c.refutation.preimage.len() <= 8);
        }
    }
    let leech = parse_compact("1232132312321|2313213123132|3121321231213").unwrap();
    let r13 = search_triple_property(13, &opts()).unwrap();
    assert!(r13.survivors.contains(&leech));
}

#[test]
fn time_budget_marks_partial_results() {
    let o = SearchOptions {
        time_budget: Some(std::time::Duration::ZERO),
        ..opts()
    };
    let r = search_uniform_squarefree(11, &o).unwrap();
    assert!(!r.complete);
    let high = SearchOptions {
        allow_high_rank: true,
        time_budget: Some(std::time::Duration::ZERO),
        ..opts()
    };
    assert!(search_uniform_squarefree(20, &high).is_ok());
}
