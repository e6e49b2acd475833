//! The 72 symmetries of uniform ternary morphisms: a letter permutation
//! after the morphism, one before it, and optional reversal of every image.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::io::serialize_compact;
use crate::morphism::Morphism;
use crate::word::{Alphabet, Letter};

/// A permutation of the ternary alphabet; `Perm([1, 2, 0])` sends
/// letter 0 to 1, 1 to 2 and 2 to 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub [Letter; 3]);

impl Perm {
    pub const IDENTITY: Perm = Perm([0, 1, 2]);

    pub fn all() -> [Perm; 6] {
        [
            Perm([0, 1, 2]),
            Perm([0, 2, 1]),
            Perm([1, 0, 2]),
            Perm([1, 2, 0]),
            Perm([2, 0, 1]),
            Perm([2, 1, 0]),
        ]
    }

    pub fn apply(self, l: Letter) -> Letter {
        self.0[l as usize]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn after(self, other: Perm) -> Perm {
        Perm(other.0.map(|l| self.apply(l)))
    }
}

/// `g(φ)(a) = ρ(σ_out(φ(σ_in(a))))`, where `ρ` reverses a word when
/// `reverse` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transform {
    pub outer: Perm,
    pub inner: Perm,
    pub reverse: bool,
}

impl Transform {
    pub const IDENTITY: Transform = Transform {
        outer: Perm::IDENTITY,
        inner: Perm::IDENTITY,
        reverse: false,
    };

    pub fn apply(&self, m: &Morphism) -> Result<Morphism> {
        m.alphabet().require_ternary()?;
        let images = (0..3)
            .map(|a| {
                let mut im: Vec<Letter> = m
                    .image(self.inner.apply(a))
                    .iter()
                    .map(|&l| self.outer.apply(l))
                    .collect();
                if self.reverse {
                    im.reverse();
                }
                im
            })
            .collect();
        Ok(Morphism::from_trusted(Alphabet::TERNARY, images))
    }

    /// The transform acting as `self` after `other`.
    pub fn compose(&self, other: &Transform) -> Transform {
        Transform {
            outer: self.outer.after(other.outer),
            inner: other.inner.after(self.inner),
            reverse: self.reverse ^ other.reverse,
        }
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = |p: Perm| p.0.iter().map(|l| (b'1' + l) as char).collect::<String>();
        write!(
            f,
            "{}out={} in={}",
            if self.reverse { "rev " } else { "" },
            p(self.outer),
            p(self.inner)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformGroup {
    elements: Vec<Transform>,
}

impl TransformGroup {
    pub fn full_ternary() -> Self {
        let mut elements = Vec::with_capacity(72);
        for reverse in [false, true] {
            for outer in Perm::all() {
                for inner in Perm::all() {
                    elements.push(Transform {
                        outer,
                        inner,
                        reverse,
                    });
                }
            }
        }
        TransformGroup { elements }
    }

    pub fn identity() -> Self {
        TransformGroup {
            elements: vec![Transform::IDENTITY],
        }
    }

    pub fn elements(&self) -> &[Transform] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Distinct images of `m`, keyed and sorted by compact serialization.
    pub fn orbit(&self, m: &Morphism) -> Result<BTreeMap<String, Morphism>> {
        let mut out = BTreeMap::new();
        for g in &self.elements {
            let image = g.apply(m)?;
            out.insert(serialize_compact(&image), image);
        }
        Ok(out)
    }

    /// Lexicographically least compact serialization over the orbit.
    pub fn canonical(&self, m: &Morphism) -> Result<Morphism> {
        Ok(self
            .orbit(m)?
            .into_values()
            .next()
            .unwrap_or_else(|| m.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tern(images: [&str; 3]) -> Morphism {
        Morphism::new(
            Alphabet::TERNARY,
            images
                .iter()
                .map(|s| s.bytes().map(|b| b - b'1').collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn group_has_72_distinct_elements() {
        let g = TransformGroup::full_ternary();
        let mut e = g.elements().to_vec();
        e.sort();
        e.dedup();
        assert_eq!(e.len(), 72);
    }

    #[test]
    fn composition_matches_sequential_application() {
        let m = tern(["12131232123", "13212321323", "13213121323"]);
        let g = TransformGroup::full_ternary();
        for a in g.elements() {
            for b in g.elements() {
                let seq = a.apply(&b.apply(&m).unwrap()).unwrap();
                assert_eq!(a.compose(b).apply(&m).unwrap(), seq);
                assert!(g.elements().contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn orbit_of_leech() {
        let leech = tern(["1232132312321", "2313213123132", "3121321231213"]);
        let orbit = TransformGroup::full_ternary().orbit(&leech).unwrap();
        assert_eq!(72 % orbit.len(), 0);
        assert!(orbit.values().any(|m| m == &leech));
    }

    #[test]
    fn identity_group() {
        let m = tern(["121", "232", "313"]);
        let g = TransformGroup::identity();
        assert_eq!(g.orbit(&m).unwrap().len(), 1);
        assert_eq!(g.canonical(&m).unwrap(), m);
    }
}
