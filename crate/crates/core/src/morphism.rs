//! Non-erasing morphisms given by their letter images.

use crate::error::{Error, Result};
use crate::word::{shift_letters, Alphabet, Letter, Shift, Word};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Morphism {
    alphabet: Alphabet,
    images: Vec<Vec<Letter>>,
}

impl Morphism {
    /// `images[a]` is the image of letter `a`; there must be exactly one
    /// non-empty image per letter.
    pub fn new(alphabet: Alphabet, images: Vec<Vec<Letter>>) -> Result<Self> {
        if images.len() != alphabet.size() {
            return Err(Error::ImageCount {
                got: images.len(),
                size: alphabet.size(),
            });
        }
        for (letter, image) in images.iter().enumerate() {
            if image.is_empty() {
                return Err(Error::EmptyImage(letter as Letter));
            }
            alphabet.check(image)?;
        }
        Ok(Morphism { alphabet, images })
    }

    pub fn from_words(images: &[Word]) -> Result<Self> {
        let alphabet = Alphabet::new(images.len())?;
        Morphism::new(alphabet, images.iter().map(|w| w.to_vec()).collect())
    }

    pub(crate) fn from_trusted(alphabet: Alphabet, images: Vec<Vec<Letter>>) -> Self {
        debug_assert!(Morphism::new(alphabet, images.clone()).is_ok());
        Morphism { alphabet, images }
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        Morphism {
            alphabet,
            images: alphabet.letters().map(|l| vec![l]).collect(),
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn image(&self, letter: Letter) -> &[Letter] {
        &self.images[letter as usize]
    }

    pub fn images(&self) -> &[Vec<Letter>] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        self.alphabet.check(w)?;
        Ok(Word::from_trusted(self.alphabet, self.apply_letters(w)))
    }

    /// Unchecked application; panics on a letter outside the alphabet.
    pub fn apply_letters(&self, w: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.image_len(w));
        self.apply_into(w, &mut out);
        out
    }

    pub fn apply_into(&self, w: &[Letter], out: &mut Vec<Letter>) {
        for &l in w {
            out.extend_from_slice(&self.images[l as usize]);
        }
    }

    fn image_len(&self, w: &[Letter]) -> usize {
        w.iter().map(|&l| self.images[l as usize].len()).sum()
    }

    /// Common image length, if all images share one.
    pub fn uniform_rank(&self) -> Option<usize> {
        let first = self.images[0].len();
        self.images
            .iter()
            .all(|im| im.len() == first)
            .then_some(first)
    }

    /// Whether the morphism commutes with the rotation `1 -> 2 -> 3 -> 1`.
    pub fn is_cyclic(&self) -> Result<bool> {
        self.alphabet.require_ternary()?;
        Ok((0..3).all(|l| {
            shift_letters(&self.images[l], Shift::Up) == self.images[(l + 1) % 3]
        }))
    }

    /// Letters `u` with `φ(u) = uV`, `V` non-empty, so that iterating from
    /// `u` converges to an infinite fixed point.
    pub fn fixed_point_seeds(&self) -> Vec<Letter> {
        self.alphabet
            .letters()
            .filter(|&u| self.is_seed(u))
            .collect()
    }

    pub fn is_seed(&self, u: Letter) -> bool {
        self.alphabet.contains(u) && {
            let im = &self.images[u as usize];
            im.len() >= 2 && im[0] == u
        }
    }

    /// Prefix of `φ^∞(seed)` of length at least `min_len`. The returned word
    /// is the whole iterate `φ^n(seed)` that first reaches `min_len`.
    pub fn fixed_point_prefix(&self, seed: Letter, min_len: usize) -> Result<Word> {
        let mut stream = FixedPointStream::new(self.clone(), seed)?;
        stream.extend_to(min_len);
        Ok(Word::from_trusted(self.alphabet, stream.prefix().to_vec()))
    }

    pub fn canonical_fragments(&self, w: &Word) -> Result<FragmentDecomposition> {
        self.alphabet.check(w)?;
        let mut boundaries = Vec::with_capacity(w.len());
        let mut image = Vec::with_capacity(self.image_len(w));
        for &l in w.letters() {
            image.extend_from_slice(&self.images[l as usize]);
            boundaries.push(image.len());
        }
        Ok(FragmentDecomposition {
            source: w.clone(),
            boundaries,
            image: Word::from_trusted(self.alphabet, image),
        })
    }
}

/// Split of `φ(source)` into the images of the letters of `source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FragmentDecomposition {
    pub source: Word,
    /// End offset (exclusive, 0-based) of each fragment inside `image`.
    pub boundaries: Vec<usize>,
    pub image: Word,
}

impl FragmentDecomposition {
    pub fn fragments(&self) -> Vec<&[Letter]> {
        let mut start = 0;
        self.boundaries
            .iter()
            .map(|&end| {
                let f = &self.image.letters()[start..end];
                start = end;
                f
            })
            .collect()
    }

    /// Index of the fragment containing the 0-based image position `pos`.
    pub fn fragment_of(&self, pos: usize) -> Option<usize> {
        if pos >= self.image.len() {
            return None;
        }
        Some(self.boundaries.partition_point(|&end| end <= pos))
    }
}

/// Growing prefix of the fixed point `φ^∞(seed)`.
///
/// Holds the iterates `A_0 = seed, A_{n+1} = φ(A_n)`; each is checked to
/// extend the previous one before it replaces it.
#[derive(Clone, Debug)]
pub struct FixedPointStream {
    morphism: Morphism,
    seed: Letter,
    generated: Vec<Letter>,
    iterations: usize,
}

impl FixedPointStream {
    pub fn new(morphism: Morphism, seed: Letter) -> Result<Self> {
        if !morphism.is_seed(seed) {
            return Err(Error::NotASeed(seed));
        }
        Ok(FixedPointStream {
            morphism,
            seed,
            generated: vec![seed],
            iterations: 0,
        })
    }

    pub fn seed(&self) -> Letter {
        self.seed
    }

    pub fn prefix(&self) -> &[Letter] {
        &self.generated
    }

    /// Number of applications of the morphism so far.
    pub fn iterations(&self) -> usize {
        self.iterations
    }

    /// Applies the morphism once more and returns the new iterate.
    pub fn step(&mut self) -> &[Letter] {
        let next = self.morphism.apply_letters(&self.generated);
        assert!(
            next.starts_with(&self.generated),
            "fixed-point iterate lost prefix stability"
        );
        self.generated = next;
        self.iterations += 1;
        &self.generated
    }

    pub fn extend_to(&mut self, min_len: usize) -> &[Letter] {
        while self.generated.len() < min_len {
            self.step();
        }
        &self.generated
    }
}
