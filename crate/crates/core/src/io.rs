//! Text forms of words, morphisms and census tables, plus the JSON report
//! envelope.
//!
//! Letter index `i` renders as the digit `i + 1` ([`Notation::OneBased`]),
//! the digit `i` ([`Notation::ZeroBased`], used by binary words written
//! over `{0, 1}`) or the letter `'a' + i` ([`Notation::Letters`]). Letters
//! and one-based digits are interchangeable on input (`a` is `1`).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::search::SearchReport;
use crate::word::{Alphabet, Letter, Word};

pub const SCHEMA_VERSION: u32 = 1;

pub const CENSUS_HEADER: &str = "# phi(1) phi(2) phi(3)";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Notation {
    #[default]
    OneBased,
    ZeroBased,
    Letters,
}

impl Notation {
    /// `0` anywhere means zero-based digits; otherwise alphabetic input
    /// means letters, else one-based digits.
    pub fn infer(text: &str) -> Notation {
        if text.contains('0') {
            Notation::ZeroBased
        } else if text.chars().any(|c| c.is_ascii_alphabetic()) {
            Notation::Letters
        } else {
            Notation::OneBased
        }
    }

    pub fn render_letter(self, letter: Letter) -> char {
        let base = match self {
            Notation::OneBased => b'1',
            Notation::ZeroBased => b'0',
            Notation::Letters => b'a',
        };
        (base + letter) as char
    }

    pub fn parse_letter(self, c: char) -> Option<Letter> {
        match c {
            'a'..='i' => Some(c as u8 - b'a'),
            '0' if self == Notation::ZeroBased => Some(0),
            '1'..='9' if self == Notation::ZeroBased => Some(c as u8 - b'0'),
            '1'..='9' => Some(c as u8 - b'1'),
            _ => None,
        }
    }

    pub fn render(self, letters: &[Letter]) -> String {
        letters.iter().map(|&l| self.render_letter(l)).collect()
    }
}

/// Parses a word; whitespace is ignored. Without an explicit alphabet the
/// size is the largest letter plus one, at least 2.
pub fn parse_word(text: &str, notation: Notation, alphabet: Option<Alphabet>) -> Result<Word> {
    let mut letters = Vec::with_capacity(text.len());
    for c in text.chars().filter(|c| !c.is_whitespace()) {
        let l = notation.parse_letter(c).ok_or_else(|| Error::Parse {
            line: 1,
            message: format!("'{c}' is not a letter"),
        })?;
        letters.push(l);
    }
    let alphabet = match alphabet {
        Some(a) => a,
        None => Alphabet::new(letters.iter().map(|&l| l as usize + 1).max().unwrap_or(0).max(2))?,
    };
    Word::new(alphabet, letters)
}

/// Parses with an inferred notation.
pub fn parse_word_auto(text: &str, alphabet: Option<Alphabet>) -> Result<(Word, Notation)> {
    let notation = Notation::infer(text);
    Ok((parse_word(text, notation, alphabet)?, notation))
}

/// A morphism together with the notation it was written in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismText {
    pub morphism: Morphism,
    pub notation: Notation,
}

/// Parses lines of the form `<letter> -> <word>`. Blank lines and lines
/// starting with `#` are skipped. The alphabet is the set of left-hand
/// letters, which must be exactly the first `k` letters.
pub fn parse_morphism_text(text: &str) -> Result<MorphismText> {
    let rules: Vec<(usize, &str, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
        .map(|(n, line)| {
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| Error::Parse {
                line: n,
                message: "expected `<letter> -> <word>`".into(),
            })?;
            Ok((n, lhs.trim(), rhs.trim()))
        })
        .collect::<Result<_>>()?;

    let all: String = rules.iter().map(|(_, l, _)| *l).collect();
    let notation = Notation::infer(&all);

    let mut images: BTreeMap<Letter, (usize, &str)> = BTreeMap::new();
    for &(n, lhs, rhs) in &rules {
        let mut chars = lhs.chars();
        let (c, None) = (chars.next(), chars.next()) else {
            return Err(Error::Parse {
                line: n,
                message: format!("`{lhs}` is not a single letter"),
            });
        };
        let c = c.ok_or_else(|| Error::Parse {
            line: n,
            message: "missing letter".into(),
        })?;
        let letter = notation.parse_letter(c).ok_or_else(|| Error::Parse {
            line: n,
            message: format!("'{c}' is not a letter"),
        })?;
        if images.insert(letter, (n, rhs)).is_some() {
            return Err(Error::DuplicateLetter(c));
        }
    }
    if images.is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "no rules".into(),
        });
    }
    let alphabet = Alphabet::new(images.len())?;
    if let Some((&letter, _)) = images.iter().find(|(&l, _)| !alphabet.contains(l)) {
        return Err(Error::LetterOutOfRange {
            letter,
            size: alphabet.size(),
        });
    }

    let mut out = Vec::with_capacity(alphabet.size());
    for (&letter, &(n, rhs)) in &images {
        let mut image = Vec::with_capacity(rhs.len());
        for c in rhs.chars().filter(|c| !c.is_whitespace()) {
            let l = notation
                .parse_letter(c)
                .filter(|&l| alphabet.contains(l))
                .ok_or_else(|| Error::Parse {
                    line: n,
                    message: format!("'{c}' is outside the alphabet"),
                })?;
            image.push(l);
        }
        if image.is_empty() {
            return Err(Error::EmptyImage(letter));
        }
        out.push(image);
    }
    Ok(MorphismText {
        morphism: Morphism::new(alphabet, out)?,
        notation,
    })
}

pub fn parse_morphism(text: &str) -> Result<Morphism> {
    parse_morphism_text(text).map(|t| t.morphism)
}

pub fn render_morphism(m: &Morphism, notation: Notation) -> String {
    let mut out = String::new();
    for letter in m.alphabet().letters() {
        out.push(notation.render_letter(letter));
        out.push_str(" -> ");
        out.push_str(&notation.render(m.image(letter)));
        out.push('\n');
    }
    out
}

/// `φ(1)|φ(2)|...` in one-based digits; the key used for sorting and for
/// canonical orbit representatives.
pub fn serialize_compact(m: &Morphism) -> String {
    let parts: Vec<String> = m
        .images()
        .iter()
        .map(|im| Notation::OneBased.render(im))
        .collect();
    parts.join("|")
}

pub fn parse_compact(text: &str) -> Result<Morphism> {
    let parts: Vec<&str> = text.trim().split('|').collect();
    let alphabet = Alphabet::new(parts.len())?;
    let images = parts
        .iter()
        .map(|p| parse_word(p, Notation::OneBased, Some(alphabet)).map(Word::into_letters))
        .collect::<Result<Vec<_>>>()?;
    Morphism::new(alphabet, images)
}

/// One morphism per row, images separated by spaces, rows in ascending
/// order of [`serialize_compact`].
pub fn emit_census_table(report: &SearchReport) -> String {
    census_table(&report.survivors)
}

pub fn census_table(morphisms: &[Morphism]) -> String {
    let mut rows: Vec<(String, String)> = morphisms
        .iter()
        .map(|m| {
            let row: Vec<String> = m
                .images()
                .iter()
                .map(|im| Notation::OneBased.render(im))
                .collect();
            (serialize_compact(m), row.join(" "))
        })
        .collect();
    rows.sort();
    let mut out = String::from(CENSUS_HEADER);
    out.push('\n');
    for (_, row) in rows {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

pub fn parse_census_table(text: &str) -> Result<Vec<Morphism>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(i, line)| {
            parse_compact(&line.split_whitespace().collect::<Vec<_>>().join("|")).map_err(|e| {
                Error::Parse {
                    line: i + 1,
                    message: e.to_string(),
                }
            })
        })
        .collect()
}

/// Line-by-line differences between two tables, for mismatch reports.
pub fn table_diff(expected: &str, actual: &str) -> Vec<String> {
    let e: std::collections::BTreeSet<&str> = expected.lines().collect();
    let a: std::collections::BTreeSet<&str> = actual.lines().collect();
    e.difference(&a)
        .map(|l| format!("- {l}"))
        .chain(a.difference(&e).map(|l| format!("+ {l}")))
        .collect()
}

/// Versioned wrapper for every JSON document the crate emits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema_version: u32,
    #[serde(flatten)]
    pub body: T,
}

pub fn to_json<T: Serialize>(body: &T) -> String {
    let env = Envelope {
        schema_version: SCHEMA_VERSION,
        body,
    };
    serde_json::to_string_pretty(&env).expect("report types serialize infallibly")
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    let env: Envelope<T> = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    if env.schema_version != SCHEMA_VERSION {
        return Err(Error::Parse {
            line: 1,
            message: format!("unsupported schema_version {}", env.schema_version),
        });
    }
    Ok(env.body)
}

pub(crate) mod word_serde {
    //! Words in JSON: `{"alphabet": 3, "letters": "1213"}` (one-based).
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Repr {
        alphabet: usize,
        letters: String,
    }

    pub fn serialize<S: Serializer>(w: &Word, s: S) -> std::result::Result<S::Ok, S::Error> {
        Repr {
            alphabet: w.alphabet().size(),
            letters: Notation::OneBased.render(w),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Word, D::Error> {
        let r = Repr::deserialize(d)?;
        let alphabet = Alphabet::new(r.alphabet).map_err(serde::de::Error::custom)?;
        parse_word(&r.letters, Notation::OneBased, Some(alphabet)).map_err(serde::de::Error::custom)
    }
}

pub(crate) mod morphism_serde {
    //! Morphisms in JSON as their compact serialization.
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &Morphism, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&serialize_compact(m))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Morphism, D::Error> {
        let text = String::deserialize(d)?;
        parse_compact(&text).map_err(serde::de::Error::custom)
    }
}

pub(crate) mod morphism_vec_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        ms: &[Morphism],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(ms.iter().map(serialize_compact))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Morphism>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| parse_compact(t).map_err(serde::de::Error::custom))
            .collect()
    }
}
