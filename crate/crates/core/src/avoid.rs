//! Longest words that are free of a set of repetitions and avoid a set of
//! forbidden factors.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::{word_serde, Notation};
use crate::morphism::FixedPointStream;
use crate::morphism::Morphism;
use crate::repetition::{PropertySet, RepetitionWitness};
use crate::word::{find_factor, Alphabet, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvoidanceQuery {
    pub alphabet: Alphabet,
    pub forbidden: Vec<Word>,
    pub property: PropertySet,
    /// Depth at which the search stops and reports an open tree.
    pub budget: usize,
}

impl AvoidanceQuery {
    pub fn new(alphabet: Alphabet, forbidden: Vec<Word>, property: PropertySet, budget: usize) -> Result<Self> {
        let q = AvoidanceQuery {
            alphabet,
            forbidden,
            property,
            budget,
        };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::InvalidQuery("budget must be at least 1".into()));
        }
        for f in &self.forbidden {
            if f.is_empty() {
                return Err(Error::InvalidQuery("forbidden factors must be non-empty".into()));
            }
            self.alphabet.check(f)?;
        }
        Ok(())
    }

    /// Whether appending the last letter of `w` keeps it acceptable, given
    /// that `w` without it was.
    fn extension_ok(&self, w: &[Letter]) -> bool {
        self.forbidden.iter().all(|f| !w.ends_with(f)) && self.property.extension_is_clean(w)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum AvoidanceStatus {
    /// Every acceptable word has length at most `max_len`; `witnesses`
    /// lists all words of that length in lexicographic order.
    ExhaustedAt {
        max_len: usize,
        #[serde(with = "word_vec_serde")]
        witnesses: Vec<Word>,
    },
    /// An acceptable word of length `budget` exists.
    OpenAt {
        budget: usize,
        #[serde(with = "word_serde")]
        witness: Word,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvoidanceOutcome {
    #[serde(flatten)]
    pub status: AvoidanceStatus,
    pub nodes_visited: u64,
}

impl AvoidanceOutcome {
    pub fn max_len(&self) -> Option<usize> {
        match &self.status {
            AvoidanceStatus::ExhaustedAt { max_len, .. } => Some(*max_len),
            AvoidanceStatus::OpenAt { .. } => None,
        }
    }
}

/// Depth-first search of the tree of acceptable words, letters ascending.
pub fn max_avoiding(query: &AvoidanceQuery) -> Result<AvoidanceOutcome> {
    query.validate()?;
    let mut search = Dfs {
        query,
        buf: Vec::with_capacity(query.budget),
        best: 0,
        witnesses: Vec::new(),
        nodes: 1,
        open: false,
    };
    search.run();
    let status = if search.open {
        AvoidanceStatus::OpenAt {
            budget: query.budget,
            witness: Word::from_trusted(query.alphabet, search.buf),
        }
    } else {
        AvoidanceStatus::ExhaustedAt {
            max_len: search.best,
            witnesses: search
                .witnesses
                .into_iter()
                .map(|w| Word::from_trusted(query.alphabet, w))
                .collect(),
        }
    };
    Ok(AvoidanceOutcome {
        status,
        nodes_visited: search.nodes,
    })
}

struct Dfs<'a> {
    query: &'a AvoidanceQuery,
    buf: Vec<Letter>,
    best: usize,
    witnesses: Vec<Vec<Letter>>,
    nodes: u64,
    open: bool,
}

impl Dfs<'_> {
    /// Returns with `open` set and `buf` holding the witness once the budget
    /// depth is reached.
    fn run(&mut self) {
        let depth = self.buf.len();
        if depth > self.best {
            self.best = depth;
            self.witnesses.clear();
        }
        if depth == self.best {
            self.witnesses.push(self.buf.clone());
        }
        if depth == self.query.budget {
            self.open = true;
            return;
        }
        for letter in self.query.alphabet.letters() {
            self.buf.push(letter);
            if self.query.extension_ok(&self.buf) {
                self.nodes += 1;
                self.run();
                if self.open {
                    return;
                }
            }
            self.buf.pop();
        }
    }
}

/// Leaves of the search tree in lexicographic order: acceptable words
/// without an acceptable extension, and words cut off at the budget.
pub fn search_leaves(query: &AvoidanceQuery) -> Result<Vec<Word>> {
    fn walk(q: &AvoidanceQuery, buf: &mut Vec<Letter>, out: &mut Vec<Word>) {
        let mut leaf = true;
        if buf.len() < q.budget {
            for letter in q.alphabet.letters() {
                buf.push(letter);
                if q.extension_ok(buf) {
                    leaf = false;
                    walk(q, buf, out);
                }
                buf.pop();
            }
        }
        if leaf {
            out.push(Word::from_trusted(q.alphabet, buf.clone()));
        }
    }
    query.validate()?;
    let mut out = Vec::new();
    walk(query, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Graphviz rendering of the search tree, stopping after `max_nodes`
/// nodes. Leaves without acceptable extensions are drawn as boxes.
pub fn avoidance_tree_dot(query: &AvoidanceQuery, max_nodes: usize) -> Result<String> {
    query.validate()?;
    let notation = if query.alphabet.size() == 2 {
        Notation::ZeroBased
    } else {
        Notation::OneBased
    };
    let mut out = String::from("digraph avoidance {\n  node [shape=ellipse];\n  n0 [label=\"ε\"];\n");
    let mut count = 1;
    let mut stack: Vec<(usize, Vec<Letter>)> = vec![(0, Vec::new())];
    while let Some((id, w)) = stack.pop() {
        let mut children = Vec::new();
        for letter in query.alphabet.letters() {
            let mut ext = w.clone();
            ext.push(letter);
            if ext.len() <= query.budget && query.extension_ok(&ext) {
                children.push(ext);
            }
        }
        if children.is_empty() && id != 0 {
            let _ = writeln!(out, "  n{id} [shape=box];");
        }
        for child in children.into_iter().rev() {
            if count >= max_nodes {
                break;
            }
            let cid = count;
            count += 1;
            let _ = writeln!(
                out,
                "  n{cid} [label=\"{}\"];\n  n{id} -> n{cid};",
                notation.render(&child)
            );
            stack.push((cid, child));
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "kebab-case")]
pub enum Violation {
    Repetition {
        witness: RepetitionWitness,
    },
    /// `factor` occurs at the 1-based position `start`.
    Forbidden {
        #[serde(with = "word_serde")]
        factor: Word,
        start: usize,
    },
}

impl Violation {
    /// 1-based position of the first letter involved.
    pub fn start(&self) -> usize {
        match self {
            Violation::Repetition { witness } => witness.start,
            Violation::Forbidden { start, .. } => *start,
        }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Repetition { witness } => write!(f, "{witness}"),
            Violation::Forbidden { factor, start } => write!(
                f,
                "forbidden factor {} at {start}",
                Notation::OneBased.render(factor)
            ),
        }
    }
}

/// `None` when `word` is clean and avoids every forbidden factor;
/// otherwise the violation completed by the shortest offending prefix.
pub fn verify_avoidance(word: &[Letter], query: &AvoidanceQuery) -> Option<Violation> {
    let bad = |prefix: &[Letter]| {
        !query.property.is_clean(prefix)
            || query
                .forbidden
                .iter()
                .any(|f| find_factor(prefix, f).is_some())
    };
    if !bad(word) {
        return None;
    }
    // acceptability is closed under prefixes, so the shortest bad prefix
    // can be found by bisection
    let (mut lo, mut hi) = (0, word.len());
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if bad(&word[..mid]) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let prefix = &word[..hi];
    for f in &query.forbidden {
        if prefix.ends_with(f) {
            return Some(Violation::Forbidden {
                factor: f.clone(),
                start: hi - f.len() + 1,
            });
        }
    }
    query
        .property
        .violation(prefix)
        .map(|witness| Violation::Repetition { witness })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismAvoidanceReport {
    pub seed: Letter,
    /// Length of the scanned prefix, the first iterate reaching the bound.
    pub prefix_len: usize,
    pub violation: Option<Violation>,
}

/// Scans the fixed-point prefix of length at least `prefix_len` generated
/// from `seed` against the property and the forbidden factors.
pub fn avoidance_by_morphism(
    m: &Morphism,
    seed: Letter,
    forbidden: &[Word],
    property: PropertySet,
    prefix_len: usize,
) -> Result<MorphismAvoidanceReport> {
    let mut stream = FixedPointStream::new(m.clone(), seed)?;
    let query = AvoidanceQuery::new(m.alphabet(), forbidden.to_vec(), property, prefix_len.max(1))?;
    let prefix = stream.extend_to(prefix_len);
    Ok(MorphismAvoidanceReport {
        seed,
        prefix_len: prefix.len(),
        violation: verify_avoidance(prefix, &query),
    })
}

mod word_vec_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::io::{parse_word, Notation};
    use crate::word::{Alphabet, Word};

    #[derive(Serialize, Deserialize)]
    struct Repr {
        alphabet: usize,
        words: Vec<String>,
    }

    pub fn serialize<S: Serializer>(ws: &[Word], s: S) -> Result<S::Ok, S::Error> {
        Repr {
            alphabet: ws.first().map_or(0, |w| w.alphabet().size()),
            words: ws.iter().map(|w| Notation::OneBased.render(w)).collect(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Word>, D::Error> {
        let r = Repr::deserialize(d)?;
        if r.words.is_empty() {
            return Ok(Vec::new());
        }
        let alphabet = Alphabet::new(r.alphabet).map_err(serde::de::Error::custom)?;
        r.words
            .iter()
            .map(|w| parse_word(w, Notation::OneBased, Some(alphabet)).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repetition::RepetitionKind;

    fn t(s: &str) -> Word {
        crate::io::parse_word(s, Notation::OneBased, Some(Alphabet::TERNARY)).unwrap()
    }

    fn query(forbid: &[&str], budget: usize) -> AvoidanceQuery {
        AvoidanceQuery::new(
            Alphabet::TERNARY,
            forbid.iter().map(|f| t(f)).collect(),
            PropertySet::SQUAREFREE,
            budget,
        )
        .unwrap()
    }

    #[test]
    fn forbidding_a_pair() {
        let out = max_avoiding(&query(&["12"], 100)).unwrap();
        let AvoidanceStatus::ExhaustedAt { max_len, witnesses } = out.status else {
            panic!("tree should be finite");
        };
        assert_eq!(max_len, 13);
        // bcbacbcacbaca
        assert!(witnesses.contains(&t("2321323132131")));
        assert!(witnesses.iter().all(|w| verify_avoidance(w, &query(&["12"], 100)).is_none()));
    }

    #[test]
    fn open_tree_reports_budget_witness() {
        let out = max_avoiding(&query(&[], 40)).unwrap();
        match out.status {
            AvoidanceStatus::OpenAt { budget, witness } => {
                assert_eq!(budget, 40);
                assert_eq!(witness.len(), 40);
                assert!(PropertySet::SQUAREFREE.is_clean(&witness));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn binary_cubefree_weakly_squarefree() {
        let q = AvoidanceQuery::new(
            Alphabet::BINARY,
            vec![],
            PropertySet::of(&[RepetitionKind::Cube, RepetitionKind::WeakSquare]),
            50,
        )
        .unwrap();
        assert_eq!(max_avoiding(&q).unwrap().max_len(), Some(5));
    }

    #[test]
    fn verification() {
        let q = query(&["121"], 10);
        assert_eq!(
            verify_avoidance(&t("121"), &q),
            Some(Violation::Forbidden {
                factor: t("121"),
                start: 1
            })
        );
        assert_eq!(verify_avoidance(&[], &q), None);
        let v = verify_avoidance(&t("2313"), &query(&[], 10));
        assert_eq!(v, None);
        let v = verify_avoidance(&t("231312"), &query(&[], 10)).unwrap();
        assert_eq!(v.start(), 2);
    }

    #[test]
    fn invalid_queries() {
        assert!(AvoidanceQuery::new(Alphabet::TERNARY, vec![], PropertySet::SQUAREFREE, 0).is_err());
        assert!(AvoidanceQuery::new(
            Alphabet::TERNARY,
            vec![Word::empty(Alphabet::TERNARY)],
            PropertySet::SQUAREFREE,
            5
        )
        .is_err());
    }

    #[test]
    fn dot_export() {
        let dot = avoidance_tree_dot(&query(&["12"], 100), 1000).unwrap();
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("n0 -> n1;"));
        assert!(dot.trim_end().ends_with('}'));
    }
}
