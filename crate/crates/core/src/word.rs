//! Alphabets, words and the cyclic letter arithmetic of the ternary alphabet.
//!
//! Letters are stored as 0-based bytes. Positions exposed through
//! [`Word::get`] and [`RepetitionWitness`](crate::RepetitionWitness) are
//! 1-based; everything operating on raw `&[u8]` slices is 0-based.

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

pub type Letter = u8;

/// A finite alphabet `{0, .., size-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet(u8);

impl Alphabet {
    pub const MAX_SIZE: usize = 9;
    pub const BINARY: Alphabet = Alphabet(2);
    pub const TERNARY: Alphabet = Alphabet(3);

    pub fn new(size: usize) -> Result<Self> {
        if (1..=Self::MAX_SIZE).contains(&size) {
            Ok(Alphabet(size as u8))
        } else {
            Err(Error::AlphabetSize(size))
        }
    }

    pub fn size(self) -> usize {
        self.0 as usize
    }

    pub fn contains(self, letter: Letter) -> bool {
        letter < self.0
    }

    pub fn letters(self) -> impl DoubleEndedIterator<Item = Letter> + Clone {
        0..self.0
    }

    pub fn is_ternary(self) -> bool {
        self.0 == 3
    }

    pub(crate) fn check(self, letters: &[Letter]) -> Result<()> {
        match letters.iter().find(|&&l| !self.contains(l)) {
            Some(&letter) => Err(Error::LetterOutOfRange {
                letter,
                size: self.size(),
            }),
            None => Ok(()),
        }
    }

    pub(crate) fn require_ternary(self) -> Result<()> {
        if self.is_ternary() {
            Ok(())
        } else {
            Err(Error::NotTernary(self.size()))
        }
    }
}

/// A finite word over an [`Alphabet`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(alphabet: Alphabet, letters: Vec<Letter>) -> Result<Self> {
        alphabet.check(&letters)?;
        Ok(Word { alphabet, letters })
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Word {
            alphabet,
            letters: Vec::new(),
        }
    }

    /// Caller guarantees every letter is inside `alphabet`.
    pub(crate) fn from_trusted(alphabet: Alphabet, letters: Vec<Letter>) -> Self {
        debug_assert!(alphabet.check(&letters).is_ok());
        Word { alphabet, letters }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    /// The `i`-th letter, 1-based.
    pub fn get(&self, i: usize) -> Option<Letter> {
        i.checked_sub(1).and_then(|i| self.letters.get(i).copied())
    }

    /// The factor of length `len` starting at 1-based position `start`.
    pub fn factor(&self, start: usize, len: usize) -> Option<Word> {
        let from = start.checked_sub(1)?;
        let to = from.checked_add(len)?;
        self.letters.get(from..to).map(|slice| Word {
            alphabet: self.alphabet,
            letters: slice.to_vec(),
        })
    }

    pub fn concat(&self, other: &Word) -> Word {
        let alphabet = self.alphabet.max(other.alphabet);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { alphabet, letters }
    }

    /// 1-based start of the first occurrence of `factor`, if any.
    pub fn find_factor(&self, factor: &[Letter]) -> Option<usize> {
        find_factor(&self.letters, factor).map(|i| i + 1)
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.letters
    }
}

impl AsRef<[Letter]> for Word {
    fn as_ref(&self) -> &[Letter] {
        &self.letters
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(")?;
        for &l in &self.letters {
            write!(f, "{}", l + 1)?;
        }
        write!(f, "/{})", self.alphabet.size())
    }
}

pub(crate) fn find_factor(haystack: &[Letter], needle: &[Letter]) -> Option<usize> {
    if needle.is_empty() {
        return Some(0);
    }
    haystack.windows(needle.len()).position(|w| w == needle)
}

/// Direction of the letter rotation `1 -> 2 -> 3 -> 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shift {
    Up,
    Down,
}

impl Shift {
    fn offset(self) -> u8 {
        match self {
            Shift::Up => 1,
            Shift::Down => 2,
        }
    }
}

#[inline]
pub(crate) fn shift_letter(letter: Letter, shift: Shift) -> Letter {
    (letter + shift.offset()) % 3
}

pub(crate) fn shift_letters(letters: &[Letter], shift: Shift) -> Vec<Letter> {
    letters.iter().map(|&l| shift_letter(l, shift)).collect()
}

/// Letterwise rotation of a ternary word.
pub fn shift(w: &Word, shift: Shift) -> Result<Word> {
    w.alphabet.require_ternary()?;
    Ok(Word::from_trusted(w.alphabet, shift_letters(&w.letters, shift)))
}

/// Every adjacent pair steps by `+1` (mod 3). Vacuously true for `|w| <= 1`.
pub fn is_increasing(w: &Word) -> Result<bool> {
    w.alphabet.require_ternary()?;
    Ok(w.letters
        .windows(2)
        .all(|p| p[1] == shift_letter(p[0], Shift::Up)))
}

/// Every adjacent pair steps by `-1` (mod 3). Vacuously true for `|w| <= 1`.
pub fn is_decreasing(w: &Word) -> Result<bool> {
    w.alphabet.require_ternary()?;
    Ok(w.letters
        .windows(2)
        .all(|p| p[1] == shift_letter(p[0], Shift::Down)))
}
