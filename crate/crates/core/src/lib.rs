//! Non-repeating words and the morphisms that preserve them.
//!
//! The crate detects squares, cubes, overlaps and weak squares in words,
//! classifies morphisms by which "-free" properties they preserve, and runs
//! exhaustive, symmetry-reduced searches over uniform ternary morphisms.

pub mod avoid;
pub mod classify;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod morphism;
pub mod repetition;
pub mod reproduce;
pub mod search;
pub mod transform;
pub mod word;

pub use error::{Error, Result};
pub use morphism::{FixedPointStream, FragmentDecomposition, Morphism};
pub use repetition::{
    find_cube, find_overlap, find_square, find_weak_square, PropertySet, RepetitionKind,
    RepetitionWitness,
};
pub use word::{is_decreasing, is_increasing, shift, Alphabet, Letter, Shift, Word};
