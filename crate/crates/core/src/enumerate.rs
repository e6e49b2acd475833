//! Enumeration of words that are free of a set of repetitions.
//!
//! All four repetition kinds are closed under taking factors, so a prefix
//! that already contains a repetition kills its whole subtree and only the
//! suffix ending at the new letter has to be checked.

use crate::repetition::PropertySet;
use crate::word::{Alphabet, Letter, Word};

/// All clean words of length `n` in lexicographic order.
pub fn enumerate_words(alphabet: Alphabet, n: usize, filter: PropertySet) -> Vec<Word> {
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(n);
    dfs(alphabet, n, filter, &mut buf, &mut |w| {
        out.push(Word::from_trusted(alphabet, w.to_vec()))
    });
    out
}

/// Number of clean words of length `n`.
pub fn count_words(alphabet: Alphabet, n: usize, filter: PropertySet) -> u64 {
    let mut count = 0;
    let mut buf = Vec::with_capacity(n);
    dfs(alphabet, n, filter, &mut buf, &mut |_| count += 1);
    count
}

fn dfs(
    alphabet: Alphabet,
    n: usize,
    filter: PropertySet,
    buf: &mut Vec<Letter>,
    visit: &mut impl FnMut(&[Letter]),
) {
    if buf.len() == n {
        visit(buf);
        return;
    }
    for letter in alphabet.letters() {
        buf.push(letter);
        if filter.extension_is_clean(buf) {
            dfs(alphabet, n, filter, buf, visit);
        }
        buf.pop();
    }
}

/// Clean words of every length `1..=max_len`, grouped by length; entry
/// `i` holds the words of length `i + 1` in lexicographic order.
pub fn clean_words_by_length(
    alphabet: Alphabet,
    max_len: usize,
    filter: PropertySet,
) -> Vec<Vec<Vec<Letter>>> {
    let mut levels: Vec<Vec<Vec<Letter>>> = Vec::with_capacity(max_len);
    let mut current: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &current {
            for letter in alphabet.letters() {
                let mut ext = Vec::with_capacity(w.len() + 1);
                ext.extend_from_slice(w);
                ext.push(letter);
                if filter.extension_is_clean(&ext) {
                    next.push(ext);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(next.clone());
        current = next;
    }
    levels
}
