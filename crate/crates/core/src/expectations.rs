//! Checked-in expected results and their verification against the engine.
//!
//! An expectations file fixes a model configuration and lists entries, each
//! with a short citation. Plain entries must match the computed output.
//! `discrepancy` entries record a published claim the engine does not
//! reproduce, next to what it computes instead; they are reported, never
//! fatal.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::codon::{expand_pattern, Codon};
use crate::error_model::{ErrorModel, FamilyId, ModelConfig, Scheme};
use crate::multiplet::{Derivation, MultipletPartition};
use crate::Error;

/// A substitution written `SRC>DST`, e.g. `UCG>ACG`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Pair(pub Codon, pub Codon);

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}>{}", self.0, self.1)
    }
}

impl std::str::FromStr for Pair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s.split_once('>').ok_or_else(|| Error::Parse(format!("not a pair: {s:?}")))?;
        Ok(Pair(a.parse()?, b.parse()?))
    }
}

impl Serialize for Pair {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Pair {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Entry {
    /// The family's allowed pairs equal `pairs` (or contain them when
    /// `exact` is false).
    Allowed {
        family: FamilyId,
        pairs: Vec<Pair>,
        #[serde(default = "yes")]
        exact: bool,
        cite: String,
    },
    /// Same for forbidden pairs.
    Forbidden {
        family: FamilyId,
        pairs: Vec<Pair>,
        #[serde(default = "yes")]
        exact: bool,
        cite: String,
    },
    /// Class counts by size at a level; absent sizes are not checked.
    Shape {
        level: u8,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        octets: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sextets: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        quartets: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        doublets: Option<usize>,
        cite: String,
    },
    /// Each pattern (e.g. `CUN+UUR`) is exactly one class at the level.
    Multiplets { level: u8, classes: Vec<String>, cite: String },
    /// The quartet classes at the level are exactly `XZN` for these `XZ`.
    QuartetPrefixes { level: u8, prefixes: Vec<String>, cite: String },
    /// These classes carry a singlet-split annotation at the level.
    Flagged { level: u8, classes: Vec<String>, cite: String },
    /// A published claim that the engine does not reproduce.
    Discrepancy {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        family: Option<FamilyId>,
        published: String,
        computed: String,
        note: String,
        cite: String,
    },
}

fn yes() -> bool {
    true
}

impl Entry {
    pub fn cite(&self) -> &str {
        match self {
            Entry::Allowed { cite, .. }
            | Entry::Forbidden { cite, .. }
            | Entry::Shape { cite, .. }
            | Entry::Multiplets { cite, .. }
            | Entry::QuartetPrefixes { cite, .. }
            | Entry::Flagged { cite, .. }
            | Entry::Discrepancy { cite, .. } => cite,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Entry::Allowed { .. } => "allowed",
            Entry::Forbidden { .. } => "forbidden",
            Entry::Shape { .. } => "shape",
            Entry::Multiplets { .. } => "multiplets",
            Entry::QuartetPrefixes { .. } => "quartet-prefixes",
            Entry::Flagged { .. } => "flagged",
            Entry::Discrepancy { .. } => "discrepancy",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExpectationsFile {
    pub scheme: Scheme,
    #[serde(default = "yes")]
    pub damping: bool,
    pub entries: Vec<Entry>,
}

impl ExpectationsFile {
    pub fn load(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn config(&self) -> ModelConfig {
        let mut config = ModelConfig::new(self.scheme);
        config.damping = self.damping;
        config
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A discrepancy entry; informational.
    Noted,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EntryResult {
    pub kind: String,
    pub cite: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub scheme: Scheme,
    pub results: Vec<EntryResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.results.iter().filter(|r| r.status == status).count()
    }
}

fn pair_list(pairs: &BTreeSet<Pair>) -> String {
    if pairs.is_empty() {
        return "none".to_string();
    }
    pairs.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
}

/// Difference report between an expected and a computed pair set.
fn compare(expected: &BTreeSet<Pair>, computed: &BTreeSet<Pair>, exact: bool) -> (bool, String) {
    let missing: BTreeSet<Pair> = expected.difference(computed).copied().collect();
    let extra: BTreeSet<Pair> = computed.difference(expected).copied().collect();
    let ok = missing.is_empty() && (!exact || extra.is_empty());
    let mut detail = format!("computed: {}", pair_list(computed));
    if !missing.is_empty() {
        detail.push_str(&format!("; missing: {}", pair_list(&missing)));
    }
    if exact && !extra.is_empty() {
        detail.push_str(&format!("; unexpected: {}", pair_list(&extra)));
    }
    (ok, detail)
}

/// Codons of a `+`-joined pattern such as `CGN+AGR`.
pub fn expand_class(pattern: &str) -> Result<Vec<Codon>, Error> {
    let mut out = Vec::new();
    for part in pattern.split('+') {
        out.extend(expand_pattern(part)?);
    }
    Ok(out)
}

fn partition_at(derivation: &Derivation, level: u8) -> Result<&MultipletPartition, Error> {
    derivation.partition(level).ok_or(Error::InvalidLevel(level))
}

pub fn verify(file: &ExpectationsFile) -> Result<VerifyReport, Error> {
    let config = file.config();
    let model = ErrorModel::new(config.clone());
    let derivation = Derivation::derive(&config)?;
    let pairs_of = |family: FamilyId, allowed: bool| -> BTreeSet<Pair> {
        model
            .classify(family)
            .into_iter()
            .filter(|p| p.allowed == allowed)
            .map(|p| Pair(p.source, p.target))
            .collect()
    };
    let mut results = Vec::new();
    for entry in &file.entries {
        let (status, detail) = match entry {
            Entry::Allowed { family, pairs, exact, .. } => {
                let expected: BTreeSet<Pair> = pairs.iter().copied().collect();
                let (ok, detail) = compare(&expected, &pairs_of(*family, true), *exact);
                (ok, format!("{family} {detail}"))
            }
            Entry::Forbidden { family, pairs, exact, .. } => {
                let expected: BTreeSet<Pair> = pairs.iter().copied().collect();
                let (ok, detail) = compare(&expected, &pairs_of(*family, false), *exact);
                (ok, format!("{family} {detail}"))
            }
            Entry::Shape { level, octets, sextets, quartets, doublets, .. } => {
                let p = partition_at(&derivation, *level)?;
                let ok = [(8, octets), (6, sextets), (4, quartets), (2, doublets)]
                    .iter()
                    .all(|(size, want)| want.is_none_or(|n| p.count_of_size(*size) == n));
                (ok, format!("level {level}: {}", p.shape_summary()))
            }
            Entry::Multiplets { level, classes, .. } => {
                let p = partition_at(&derivation, *level)?;
                let mut missing = Vec::new();
                for pattern in classes {
                    if !p.contains_class(&expand_class(pattern)?) {
                        missing.push(pattern.clone());
                    }
                }
                let detail = if missing.is_empty() {
                    format!("level {level}: {} present", classes.join(", "))
                } else {
                    format!("level {level}: missing {}", missing.join(", "))
                };
                (missing.is_empty(), detail)
            }
            Entry::QuartetPrefixes { level, prefixes, .. } => {
                let p = partition_at(&derivation, *level)?;
                let computed: BTreeSet<String> =
                    p.classes_of_size(4).into_iter().map(|c| c[0].dinucleotide().to_string()).collect();
                let expected: BTreeSet<String> = prefixes.iter().cloned().collect();
                let shown = computed.iter().cloned().collect::<Vec<_>>().join(" ");
                (computed == expected, format!("level {level} quartets: {shown}"))
            }
            Entry::Flagged { level, classes, .. } => {
                let p = partition_at(&derivation, *level)?;
                let flagged: BTreeSet<&str> = p.annotations.iter().map(|a| a.class.as_str()).collect();
                let missing: Vec<&String> =
                    classes.iter().filter(|c| !flagged.contains(c.as_str())).collect();
                let shown = flagged.iter().copied().collect::<Vec<_>>().join(" ");
                (missing.is_empty(), format!("level {level} flagged: {shown}"))
            }
            Entry::Discrepancy { family, published, computed, note, .. } => {
                let mut detail = format!("published: {published}; computed: {computed}; {note}");
                if let Some(f) = family {
                    let now = pair_list(&pairs_of(*f, true));
                    if now != *computed {
                        detail.push_str(&format!("; engine now gives {now}"));
                    }
                }
                results.push(EntryResult {
                    kind: entry.kind().to_string(),
                    cite: entry.cite().to_string(),
                    status: Status::Noted,
                    detail,
                });
                continue;
            }
        };
        results.push(EntryResult {
            kind: entry.kind().to_string(),
            cite: entry.cite().to_string(),
            status: if status { Status::Pass } else { Status::Fail },
            detail,
        });
    }
    Ok(VerifyReport { scheme: file.scheme, results })
}
