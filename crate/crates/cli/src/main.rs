use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use nonrep::avoid::{avoidance_tree_dot, max_avoiding, AvoidanceQuery, AvoidanceStatus};
use nonrep::classify::{classify, Bounds, ClassifyConfig};
use nonrep::fixtures;
use nonrep::io::{
    emit_census_table, parse_compact, parse_morphism_text, parse_word_auto, to_json,
    MorphismText, Notation,
};
use nonrep::reproduce::{self, ReproduceOptions, ReproduceReport};
use nonrep::search::{self, SearchOptions, SearchReport};
use nonrep::{Alphabet, PropertySet, RepetitionKind};

/// Squares, cubes, overlaps and weak squares in words and morphisms.
#[derive(Parser, Debug)]
#[command(name = "nonrep", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Alphabet size (inferred from the input when omitted).
    #[arg(long, global = true)]
    alphabet: Option<usize>,
    /// Longest clean test word for bounded checks.
    #[arg(long = "bound-K", alias = "bound-k", global = true, default_value_t = 8)]
    bound_k: usize,
    /// Minimum fixed-point prefix length for bounded checks.
    #[arg(long = "bound-L", alias = "bound-l", global = true, default_value_t = 10_000)]
    bound_l: usize,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Run the full squarefree test on every triple.
    #[arg(long, global = true)]
    no_prune: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Look for repetitions in a word.
    CheckWord {
        word: String,
        /// Comma-separated: square, cube, overlap, weak-square (default: all).
        #[arg(long, value_delimiter = ',')]
        properties: Vec<String>,
    },
    /// Apply a morphism to a word.
    Apply { morphism: String, word: String },
    /// Prefix of a fixed point.
    FixedPoint {
        morphism: String,
        #[arg(long)]
        seed: String,
        #[arg(long, default_value_t = 100)]
        len: usize,
    },
    /// Report which properties a morphism preserves.
    Classify { morphism: String },
    /// Exhaustive search over uniform morphisms.
    Search {
        #[arg(value_enum)]
        kind: SearchKindArg,
        #[arg(long)]
        rank: usize,
        /// Keep the refutation of every rejected candidate.
        #[arg(long)]
        record_refutations: bool,
        /// Lift the rank cap.
        #[arg(long)]
        allow_high_rank: bool,
        /// Seconds before the search stops and reports partial results.
        #[arg(long)]
        time_budget: Option<u64>,
    },
    /// Longest clean word avoiding the given factors.
    Avoid {
        #[arg(long)]
        forbid: Vec<String>,
        /// Comma-separated repetitions to exclude (default: square).
        #[arg(long, value_delimiter = ',')]
        properties: Vec<String>,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        /// Also write the search tree as Graphviz.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Re-run the published claims.
    Reproduce {
        /// Comma-separated claim numbers (default: all).
        #[arg(long, value_delimiter = ',')]
        claims: Vec<usize>,
        /// Census table to compare against instead of the built-in fixture.
        #[arg(long)]
        census: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SearchKindArg {
    Squarefree,
    Cyclic,
    Thue,
    Triple,
}

/// Bad input, reported with exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Usage(msg.into()).into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((output, code)) => match emit(&cli.common, &output) {
            Ok(()) => ExitCode::from(code),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(common: &Common, output: &str) -> Result<()> {
    match &common.out {
        Some(path) => std::fs::write(path, output)
            .with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{output}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<(String, u8)> {
    let c = &cli.common;
    let alphabet = c
        .alphabet
        .map(Alphabet::new)
        .transpose()
        .map_err(|e| Usage(e.to_string()))?;
    let bounds = Bounds::new(c.bound_k, c.bound_l);
    let json = c.format == Format::Json;
    match &cli.command {
        Command::CheckWord { word, properties } => {
            let (w, _) = parse_word_auto(word, alphabet).map_err(|e| Usage(e.to_string()))?;
            let kinds = parse_kinds(properties, &RepetitionKind::ALL)?;
            let found: Vec<_> = kinds.iter().map(|k| (*k, k.find(&w))).collect();
            if json {
                let results: Vec<_> = found
                    .iter()
                    .map(|(k, wit)| json!({ "kind": k, "witness": wit }))
                    .collect();
                return Ok((
                    to_json(&json!({ "word": word, "length": w.len(), "results": results })) + "\n",
                    0,
                ));
            }
            let mut out = String::new();
            for (k, wit) in found {
                match wit {
                    Some(wit) => out.push_str(&format!("{wit}\n")),
                    None => out.push_str(&format!("{}\n", k.free_name())),
                }
            }
            Ok((out, 0))
        }
        Command::Apply { morphism, word } => {
            let mt = load_morphism(morphism)?;
            let (w, _) = parse_word_auto(word, Some(mt.morphism.alphabet()))
                .map_err(|e| Usage(e.to_string()))?;
            let image = mt.morphism.apply(&w)?;
            let text = mt.notation.render(&image);
            if json {
                return Ok((to_json(&json!({ "word": word, "image": text })) + "\n", 0));
            }
            Ok((text + "\n", 0))
        }
        Command::FixedPoint { morphism, seed, len } => {
            let mt = load_morphism(morphism)?;
            let seed_letter = mt
                .notation
                .parse_letter(seed.chars().next().unwrap_or(' '))
                .filter(|_| seed.chars().count() == 1)
                .ok_or_else(|| Usage(format!("bad seed `{seed}`")))?;
            let prefix = mt
                .morphism
                .fixed_point_prefix(seed_letter, *len)
                .map_err(|e| Usage(e.to_string()))?;
            let text = mt.notation.render(&prefix[..*len]);
            if json {
                return Ok((to_json(&json!({ "seed": seed, "prefix": text })) + "\n", 0));
            }
            Ok((text + "\n", 0))
        }
        Command::Classify { morphism } => {
            let mt = load_morphism(morphism)?;
            let report = classify(&mt.morphism, &ClassifyConfig { bounds });
            if json {
                return Ok((to_json(&report) + "\n", 0));
            }
            let mut out = nonrep::io::render_morphism(&mt.morphism, mt.notation);
            for d in &report.decisions {
                out.push_str(&format!(
                    "{:<18} {}\n",
                    d.property.to_string() + ":",
                    d.verdict.render(mt.notation)
                ));
            }
            let seeds = mt.morphism.fixed_point_seeds();
            if !seeds.is_empty() {
                out.push_str(&format!("{:<18} {}\n", "seeds:", mt.notation.render(&seeds)));
            }
            out.push_str(&format!(
                "{:<18} {}{}\n",
                "Thue morphism:",
                if report.thue.holds { "yes" } else { "no" },
                match report.thue.verified_up_to {
                    Some(b) => format!(
                        " (cube and overlap checks bounded by K={}, L={})",
                        b.test_len, b.prefix_len
                    ),
                    None => String::new(),
                }
            ));
            Ok((out, 0))
        }
        Command::Search {
            kind,
            rank,
            record_refutations,
            allow_high_rank,
            time_budget,
        } => {
            let opts = SearchOptions {
                prune: !c.no_prune,
                threads: c.threads,
                bounds,
                record_refutations: *record_refutations,
                allow_high_rank: *allow_high_rank,
                time_budget: time_budget.map(Duration::from_secs),
            };
            let result = match kind {
                SearchKindArg::Squarefree => search::search_uniform_squarefree(*rank, &opts),
                SearchKindArg::Cyclic => search::search_cyclic_squarefree(*rank, &opts),
                SearchKindArg::Thue => search::search_weakly_squarefree_thue(
                    alphabet.unwrap_or(Alphabet::TERNARY),
                    *rank,
                    &opts,
                ),
                SearchKindArg::Triple => search::search_triple_property(*rank, &opts),
            };
            let report = result.map_err(|e| Usage(e.to_string()))?;
            if json {
                return Ok((to_json(&report) + "\n", 0));
            }
            eprint!("{}", search_summary(&report));
            Ok((emit_census_table(&report), 0))
        }
        Command::Avoid {
            forbid,
            properties,
            budget,
            dot,
        } => {
            let alphabet = alphabet.unwrap_or(Alphabet::TERNARY);
            let forbidden = forbid
                .iter()
                .map(|f| parse_word_auto(f, Some(alphabet)).map(|(w, _)| w))
                .collect::<nonrep::Result<Vec<_>>>()
                .map_err(|e| Usage(e.to_string()))?;
            let kinds = parse_kinds(properties, &[RepetitionKind::Square])?;
            let query = AvoidanceQuery::new(alphabet, forbidden, PropertySet::of(&kinds), *budget)
                .map_err(|e| Usage(e.to_string()))?;
            let outcome = max_avoiding(&query)?;
            if let Some(path) = dot {
                std::fs::write(path, avoidance_tree_dot(&query, 100_000)?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if json {
                return Ok((to_json(&outcome) + "\n", 0));
            }
            let render = |w: &[u8]| {
                if alphabet.size() == 2 {
                    Notation::ZeroBased.render(w)
                } else {
                    Notation::OneBased.render(w)
                }
            };
            let mut out = String::new();
            match &outcome.status {
                AvoidanceStatus::ExhaustedAt { max_len, witnesses } => {
                    out.push_str(&format!("max length {max_len}\n"));
                    out.push_str(&format!("{} longest words:\n", witnesses.len()));
                    for w in witnesses {
                        out.push_str(&format!("  {}\n", render(w)));
                    }
                }
                AvoidanceStatus::OpenAt { budget, witness } => {
                    out.push_str(&format!("open at budget {budget}\n  {}\n", render(witness)));
                }
            }
            out.push_str(&format!("nodes visited: {}\n", outcome.nodes_visited));
            Ok((out, 0))
        }
        Command::Reproduce { claims, census } => {
            let census_override = census
                .as_ref()
                .map(|p| read(p))
                .transpose()?;
            let opts = ReproduceOptions {
                bounds,
                threads: c.threads,
                census_override,
            };
            let ids: Vec<usize> = if claims.is_empty() {
                (1..=reproduce::CLAIM_COUNT).collect()
            } else {
                claims.clone()
            };
            let results = ids
                .iter()
                .map(|&id| reproduce::run_claim(id, &opts))
                .collect::<nonrep::Result<Vec<_>>>()
                .map_err(|e| Usage(e.to_string()))?;
            let all_passed = results.iter().all(|r| r.passed);
            let report = ReproduceReport {
                claims: results,
                all_passed,
            };
            let out = if json {
                to_json(&report) + "\n"
            } else {
                report.render_text()
            };
            Ok((out, if all_passed { 0 } else { 1 }))
        }
    }
}

fn search_summary(r: &SearchReport) -> String {
    let mut s = format!(
        "{} search, rank {}: {} survivors of {} candidates",
        r.kind, r.rank, r.count, r.candidate_pool_size
    );
    if r.refuted > 0 {
        s.push_str(&format!(", {} refuted", r.refuted));
    }
    if !r.orbit_classes.is_empty() {
        s.push_str(&format!(", {} orbits", r.orbit_classes.len()));
    }
    if !r.complete {
        s.push_str(" (PARTIAL: time budget exhausted)");
    }
    s.push('\n');
    s
}

fn parse_kinds(names: &[String], default: &[RepetitionKind]) -> Result<Vec<RepetitionKind>> {
    if names.is_empty() {
        return Ok(default.to_vec());
    }
    names
        .iter()
        .map(|n| match n.trim() {
            "square" | "squarefree" => Ok(RepetitionKind::Square),
            "cube" | "cubefree" => Ok(RepetitionKind::Cube),
            "overlap" | "overlap-free" => Ok(RepetitionKind::Overlap),
            "weak-square" | "weakly-squarefree" => Ok(RepetitionKind::WeakSquare),
            other => usage(format!("unknown property `{other}`")),
        })
        .collect()
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Usage(format!("reading {}: {e}", path.display())).into())
}

/// A morphism file, a fixture name, or a compact `φ(1)|φ(2)|...` string.
fn load_morphism(arg: &str) -> Result<MorphismText> {
    let path = Path::new(arg);
    if path.exists() {
        return parse_morphism_text(&read(path)?)
            .map_err(|e| Usage(format!("{}: {e}", path.display())).into());
    }
    if let Ok(f) = fixtures::load_fixture(arg) {
        if let fixtures::FixtureData::Morphism(mt) = f {
            return Ok(mt);
        }
        bail!(Usage(format!("fixture `{arg}` is not a morphism")));
    }
    if arg.contains('|') {
        let morphism = parse_compact(arg).map_err(|e| Usage(e.to_string()))?;
        return Ok(MorphismText {
            morphism,
            notation: Notation::OneBased,
        });
    }
    usage(format!("`{arg}` is neither a file, a fixture nor a compact morphism"))
}
