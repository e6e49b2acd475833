//! Test-only reference implementations. Nothing here calls into the
//! optimized paths of the library it checks.
#![allow(dead_code)]

use nonrep::{Letter, RepetitionKind};

/// Literal pattern test at 0-based `i` with `|X| = p`.
pub fn naive_matches(kind: RepetitionKind, w: &[Letter], i: usize, p: usize) -> bool {
    let n = w.len();
    match kind {
        RepetitionKind::Square => {
            p >= 1 && i + 2 * p <= n && (0..p).all(|k| w[i + k] == w[i + p + k])
        }
        RepetitionKind::Cube => {
            p >= 1
                && i + 3 * p <= n
                && (0..p).all(|k| w[i + k] == w[i + p + k] && w[i + k] == w[i + 2 * p + k])
        }
        RepetitionKind::Overlap => {
            if i + 2 * p + 3 > n {
                return false;
            }
            let a = w[i];
            let x = &w[i + 1..i + 1 + p];
            let mut pattern = vec![a];
            pattern.extend_from_slice(x);
            pattern.push(a);
            pattern.extend_from_slice(x);
            pattern.push(a);
            w[i..i + 2 * p + 3] == pattern[..]
        }
        RepetitionKind::WeakSquare => {
            if i + 2 * p + 2 > n {
                return false;
            }
            let a = w[i];
            let x = &w[i + 1..i + 1 + p];
            let mut pattern = vec![a];
            pattern.extend_from_slice(x);
            pattern.extend_from_slice(x);
            pattern.push(a);
            w[i..i + 2 * p + 2] == pattern[..]
        }
    }
}

/// Leftmost-then-shortest occurrence as (1-based start, period), by
/// trying every start and every period.
pub fn naive_find(kind: RepetitionKind, w: &[Letter]) -> Option<(usize, usize)> {
    for i in 0..w.len() {
        for p in 0..=w.len() {
            if naive_matches(kind, w, i, p) {
                return Some((i + 1, p));
            }
        }
    }
    None
}

/// Every word of length `n` over `k` letters, lexicographic.
pub fn all_words(k: u8, n: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k).map(move |l| {
                    let mut e = w.clone();
                    e.push(l);
                    e
                })
            })
            .collect();
    }
    out
}

pub fn digits(s: &str) -> Vec<Letter> {
    s.bytes().map(|b| b - b'1').collect()
}

/// Whole-word check against every listed kind, by brute force.
pub fn naive_clean(kinds: &[RepetitionKind], w: &[Letter]) -> bool {
    kinds.iter().all(|&k| naive_find(k, w).is_none())
}

pub fn naive_contains(w: &[Letter], f: &[Letter]) -> bool {
    f.is_empty() || (f.len() <= w.len() && (0..=w.len() - f.len()).any(|i| &w[i..i + f.len()] == f))
}

/// Images of letters concatenated by hand.
pub fn naive_apply(images: &[Vec<Letter>], w: &[Letter]) -> Vec<Letter> {
    let mut out = Vec::new();
    for &l in w {
        for &x in &images[l as usize] {
            out.push(x);
        }
    }
    out
}

/// Squarefree ternary words of every length up to `n`, grown level by
/// level with a whole-word brute-force check.
pub fn naive_squarefree_words(n: usize) -> Vec<Vec<Letter>> {
    let mut all = Vec::new();
    let mut level = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &level {
            for l in 0..3 {
                let mut e: Vec<Letter> = w.clone();
                e.push(l);
                if naive_find(RepetitionKind::Square, &e).is_none() {
                    next.push(e);
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}
