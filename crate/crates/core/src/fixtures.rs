//! Checked-in ground-truth data with pinned SHA-256 checksums.

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::io::{parse_census_table, parse_morphism_text, parse_word, MorphismText, Notation};
use crate::morphism::Morphism;
use crate::word::{Alphabet, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureKind {
    Word,
    Morphism,
    Table,
}

#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub kind: FixtureKind,
    pub citation: &'static str,
    pub sha256: &'static str,
    pub text: &'static str,
}

macro_rules! fixture {
    ($name:literal, $kind:ident, $sha:literal, $citation:literal) => {
        Fixture {
            name: $name,
            kind: FixtureKind::$kind,
            citation: $citation,
            sha256: $sha,
            text: include_str!(concat!("../fixtures/", $name, ".txt")),
        }
    };
}

pub const FIXTURES: &[Fixture] = &[
    fixture!(
        "thue_morse",
        Morphism,
        "ebdfe6506763a164569510969ddd68bf1cf5743ed469134cb5f352560aca17dc",
        "Thue-Morse morphism 1 -> 10, 0 -> 01"
    ),
    fixture!(
        "thue1912",
        Morphism,
        "7bf9fa59268e4be78d421c8ee01cb251817c184d2573dabb5cc580730ec6f6d8",
        "Thue's 1912 squarefree morphism, also written a -> abcab, b -> acabcb, c -> acbcacb"
    ),
    fixture!(
        "leech",
        Morphism,
        "6ea10aa172a3762550c0f9e2a8673e4737c9fe8bb51bb280e5559f2a6cffbfc3",
        "Leech's cyclic squarefree morphism of rank 13"
    ),
    fixture!(
        "rank3",
        Morphism,
        "02984466638d4452f116b1453ffb920f21c4c689ba158882b539cbe9e0a5afe1",
        "uniform rank-3 Thue morphism 1 -> 121, 2 -> 232, 3 -> 313"
    ),
    fixture!(
        "rank4",
        Morphism,
        "1c73b2242e1f30e139f6171ebc26f8ef4e961da7951ed7ebdabbdbca49548e10",
        "uniform rank-4 Thue morphism 1 -> 1221, 2 -> 2332, 3 -> 3113"
    ),
    fixture!(
        "rank5",
        Morphism,
        "9c49d021c89c0350402e680ae95cd2074140d336f8159f92f72c196fc73f9c59",
        "uniform rank-5 cyclic morphism 1 -> 12321, 2 -> 23132, 3 -> 31213"
    ),
    fixture!(
        "rank11_phi1",
        Morphism,
        "44ccefdc17ce018c77412d054cc45f69911b5f942150d54d487c18bf885164cc",
        "first of the two rank-11 squarefree orbit representatives"
    ),
    fixture!(
        "rank11_phi2",
        Morphism,
        "dbe120d80b19ed6ab0671e5d28aa71a4f1035495f2a597e429018ffe451b7a7e",
        "second of the two rank-11 squarefree orbit representatives"
    ),
    fixture!(
        "word718",
        Word,
        "27a46b33dee4f08fbd90f0e453e403e0884c2989e9a69a5ba7c830daa6ed8a65",
        "squarefree word of length 718 avoiding aba and bab"
    ),
    fixture!(
        "census_rank11",
        Table,
        "438f196254fdc477739199f49e61dfe4efa687df2d70be8c7bfe7e7fd3e719ea",
        "the 144 uniform squarefree morphisms of rank 11"
    ),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixtureData {
    Word(Word),
    Morphism(MorphismText),
    Table(Vec<Morphism>),
}

impl FixtureData {
    pub fn into_word(self) -> Option<Word> {
        match self {
            FixtureData::Word(w) => Some(w),
            _ => None,
        }
    }

    pub fn into_morphism(self) -> Option<Morphism> {
        match self {
            FixtureData::Morphism(t) => Some(t.morphism),
            _ => None,
        }
    }

    pub fn into_table(self) -> Option<Vec<Morphism>> {
        match self {
            FixtureData::Table(t) => Some(t),
            _ => None,
        }
    }
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn fixture(name: &str) -> Result<&'static Fixture> {
    FIXTURES
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownFixture(name.into()))
}

/// Checks `text` against the pinned checksum of the named fixture.
pub fn verify_checksum(name: &str, text: &str) -> Result<()> {
    let f = fixture(name)?;
    let actual = sha256_hex(text);
    if actual != f.sha256 {
        return Err(Error::ChecksumMismatch {
            name: name.into(),
            expected: f.sha256.into(),
            actual,
        });
    }
    Ok(())
}

/// Raw text of a fixture after checksum validation.
pub fn fixture_text(name: &str) -> Result<&'static str> {
    let f = fixture(name)?;
    verify_checksum(name, f.text)?;
    Ok(f.text)
}

pub fn load_fixture(name: &str) -> Result<FixtureData> {
    let f = fixture(name)?;
    parse_fixture(f.kind, fixture_text(name)?)
}

pub fn parse_fixture(kind: FixtureKind, text: &str) -> Result<FixtureData> {
    Ok(match kind {
        FixtureKind::Word => FixtureData::Word(parse_word(text, Notation::Letters, Some(Alphabet::TERNARY))?),
        FixtureKind::Morphism => FixtureData::Morphism(parse_morphism_text(text)?),
        FixtureKind::Table => FixtureData::Table(parse_census_table(text)?),
    })
}

pub fn load_morphism(name: &str) -> Result<Morphism> {
    load_fixture(name)?
        .into_morphism()
        .ok_or_else(|| Error::InvalidQuery(format!("fixture `{name}` is not a morphism")))
}

pub fn load_word(name: &str) -> Result<Word> {
    load_fixture(name)?
        .into_word()
        .ok_or_else(|| Error::InvalidQuery(format!("fixture `{name}` is not a word")))
}
