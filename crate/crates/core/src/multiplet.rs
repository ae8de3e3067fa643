//! Level-by-level derivation of the multiplet partition.
//!
//! Each level starts from the partition frozen by the previous one and may
//! only merge whole classes. Merge decisions are driven by [`MergeRule`]
//! values evaluated against that frozen partition, so the order in which
//! candidate merges are examined never matters. A class that would take part
//! in two merges at the same level is left alone and reported.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::codon::{AminoAcid, Codon, GeneticCodeTable, Nucleotide, NucleotideClass};
use crate::error_model::{families_at, ClassifiedPair, ErrorModel, FamilyId, ModelConfig};
use crate::Error;

/// A synonym class, codons in reference table order.
pub type CodonClass = Vec<Codon>;

/// Compact name of a class, e.g. `CUN+UUR`.
pub fn class_label(class: &[Codon]) -> String {
    let mut groups: Vec<(String, BTreeSet<Nucleotide>)> = Vec::new();
    let mut sorted = class.to_vec();
    sorted.sort();
    for c in sorted {
        let prefix = c.dinucleotide().to_string();
        match groups.iter_mut().find(|(p, _)| *p == prefix) {
            Some((_, thirds)) => {
                thirds.insert(c.third());
            }
            None => groups.push((prefix, BTreeSet::from([c.third()]))),
        }
    }
    groups.sort_by_key(|g| std::cmp::Reverse(g.1.len()));
    let suffix = |thirds: &BTreeSet<Nucleotide>| -> String {
        for (class, ch) in
            [(NucleotideClass::Any, 'N'), (NucleotideClass::Pyrimidine, 'Y'), (NucleotideClass::Purine, 'R')]
        {
            if thirds.iter().copied().eq(class.members().iter().copied().collect::<BTreeSet<_>>()) {
                return ch.to_string();
            }
        }
        if thirds.len() == 1 {
            return thirds.iter().next().expect("non-empty").to_string();
        }
        format!("[{}]", thirds.iter().map(|n| n.as_char()).collect::<String>())
    };
    groups.iter().map(|(p, thirds)| format!("{p}{}", suffix(thirds))).collect::<Vec<_>>().join("+")
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Annotation {
    pub class: String,
    pub note: String,
    pub trigger: Trigger,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MultipletPartition {
    pub level: u8,
    pub classes: Vec<CodonClass>,
    pub annotations: Vec<Annotation>,
}

impl MultipletPartition {
    /// 64 singletons.
    pub fn trivial() -> Self {
        MultipletPartition::from_classes(0, Codon::all().map(|c| vec![c]).collect())
    }

    /// Normalizes class order: codons by table position, classes by their
    /// first codon.
    pub fn from_classes(level: u8, mut classes: Vec<CodonClass>) -> Self {
        for class in &mut classes {
            class.sort_by_key(|c| c.table_position());
        }
        classes.sort_by_key(|c| c[0].table_position());
        MultipletPartition { level, classes, annotations: Vec::new() }
    }

    pub fn is_valid(&self) -> bool {
        let mut seen = BTreeSet::new();
        let all_new = self.classes.iter().flatten().all(|c| seen.insert(*c));
        all_new && seen.len() == 64 && self.classes.iter().all(|c| matches!(c.len(), 1 | 2 | 4 | 6 | 8))
    }

    pub fn class_of(&self, codon: Codon) -> usize {
        self.classes.iter().position(|c| c.contains(&codon)).expect("partition covers every codon")
    }

    pub fn class_index_map(&self) -> [usize; 64] {
        let mut out = [0; 64];
        for (i, class) in self.classes.iter().enumerate() {
            for c in class {
                out[c.index()] = i;
            }
        }
        out
    }

    /// `size → number of classes`.
    pub fn shape(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for c in &self.classes {
            *out.entry(c.len()).or_insert(0) += 1;
        }
        out
    }

    pub fn count_of_size(&self, size: usize) -> usize {
        self.shape().get(&size).copied().unwrap_or(0)
    }

    pub fn labels(&self) -> Vec<String> {
        self.classes.iter().map(|c| class_label(c)).collect()
    }

    pub fn classes_of_size(&self, size: usize) -> Vec<&CodonClass> {
        self.classes.iter().filter(|c| c.len() == size).collect()
    }

    /// Every class of `self` is a union of classes of `finer`.
    pub fn coarsens(&self, finer: &MultipletPartition) -> bool {
        let map = self.class_index_map();
        finer.classes.iter().all(|class| class.iter().all(|c| map[c.index()] == map[class[0].index()]))
    }

    pub fn contains_class(&self, codons: &[Codon]) -> bool {
        let wanted: BTreeSet<Codon> = codons.iter().copied().collect();
        self.classes.iter().any(|c| c.iter().copied().collect::<BTreeSet<_>>() == wanted)
    }

    /// Summary like `3 sextets, 5 quartets, 13 doublets`.
    pub fn shape_summary(&self) -> String {
        let names = [(8, "octet"), (6, "sextet"), (4, "quartet"), (2, "doublet"), (1, "singlet")];
        let shape = self.shape();
        names
            .iter()
            .filter_map(|&(size, name)| {
                shape.get(&size).map(|&n| format!("{n} {name}{}", if n == 1 { "" } else { "s" }))
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for MultipletPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "level {}: {}", self.level, self.shape_summary())?;
        for class in &self.classes {
            let codons: Vec<String> = class.iter().map(|c| c.to_string()).collect();
            writeln!(f, "  {:<10} {}", class_label(class), codons.join(" "))?;
        }
        for a in &self.annotations {
            writeln!(f, "  note: {} {} ({} -> {})", a.class, a.note, a.trigger.source, a.trigger.target)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MergeCriterion {
    /// Every candidate event between the two classes is allowed.
    AllCandidates,
    /// For each weak third nucleotide (C or A) present in both classes, some
    /// allowed event between them starts from a codon ending in it.
    WeakCodons,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MergeRule {
    pub level: u8,
    pub criterion: MergeCriterion,
    /// Families whose candidates are examined.
    pub families: Vec<FamilyId>,
    /// When non-empty, a merge also needs an allowed event of one of these
    /// families linking the same two classes.
    pub corroborate_with: Vec<FamilyId>,
}

impl MergeRule {
    pub fn for_level(level: u8, config: &ModelConfig) -> Result<Self, Error> {
        let rule = match level {
            1 | 2 => MergeRule {
                level,
                criterion: MergeCriterion::AllCandidates,
                families: families_at(level)?,
                corroborate_with: Vec::new(),
            },
            3 => MergeRule {
                level,
                criterion: MergeCriterion::WeakCodons,
                families: families_at(3)?,
                corroborate_with: Vec::new(),
            },
            4 => MergeRule {
                level,
                criterion: MergeCriterion::WeakCodons,
                families: families_at(4)?,
                corroborate_with: if config.damping { families_at(5)? } else { Vec::new() },
            },
            5 => MergeRule {
                level,
                criterion: MergeCriterion::WeakCodons,
                families: config.level5_triggers.iter().map(|&f| FamilyId::Double(f)).collect(),
                corroborate_with: Vec::new(),
            },
            other => return Err(Error::InvalidLevel(other)),
        };
        Ok(rule)
    }
}

/// Sizes that may combine: doublets from singlets, quartets from doublets,
/// sextets and octets from doublets and quartets.
fn sizes_may_merge(a: usize, b: usize) -> bool {
    matches!((a.min(b), a.max(b)), (1, 1) | (2, 2) | (2, 4) | (4, 4))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Trigger {
    pub family: FamilyId,
    pub source: Codon,
    pub target: Codon,
}

impl From<&ClassifiedPair> for Trigger {
    fn from(p: &ClassifiedPair) -> Self {
        Trigger { family: p.family, source: p.source, target: p.target }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MergeEvent {
    pub rule: MergeCriterion,
    pub triggers: Vec<Trigger>,
    pub merged: Vec<String>,
    pub result: String,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WarningKind {
    /// The classes also qualify for another merge at this level.
    Contested,
    /// A level-4 merge with no level-5 connection between the classes.
    Damped,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MergeWarning {
    pub kind: WarningKind,
    pub classes: Vec<String>,
    pub triggers: Vec<Trigger>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LevelTrace {
    pub level: u8,
    pub rule: MergeRule,
    pub merges: Vec<MergeEvent>,
    pub warnings: Vec<MergeWarning>,
    pub partition: MultipletPartition,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Derivation {
    pub config: ModelConfig,
    pub levels: Vec<LevelTrace>,
}

struct Proposal {
    classes: (usize, usize),
    triggers: Vec<Trigger>,
}

fn weak_thirds(class: &[Codon]) -> BTreeSet<Nucleotide> {
    class.iter().map(|c| c.third()).filter(|n| matches!(n, Nucleotide::C | Nucleotide::A)).collect()
}

/// Candidate events grouped by the unordered pair of distinct classes they
/// link.
fn group_by_classes(
    partition: &MultipletPartition,
    events: &[ClassifiedPair],
) -> BTreeMap<(usize, usize), Vec<ClassifiedPair>> {
    let map = partition.class_index_map();
    let mut out: BTreeMap<(usize, usize), Vec<ClassifiedPair>> = BTreeMap::new();
    for e in events {
        let (a, b) = (map[e.source.index()], map[e.target.index()]);
        if a != b {
            out.entry((a.min(b), a.max(b))).or_default().push(e.clone());
        }
    }
    out
}

fn qualifies(
    rule: &MergeRule,
    partition: &MultipletPartition,
    key: (usize, usize),
    events: &[ClassifiedPair],
) -> bool {
    let (p, q) = (&partition.classes[key.0], &partition.classes[key.1]);
    if !sizes_may_merge(p.len(), q.len()) || !events.iter().any(|e| e.allowed) {
        return false;
    }
    match rule.criterion {
        MergeCriterion::AllCandidates => events.iter().all(|e| e.allowed),
        MergeCriterion::WeakCodons => {
            let weak: BTreeSet<Nucleotide> = weak_thirds(p).intersection(&weak_thirds(q)).copied().collect();
            !weak.is_empty()
                && weak.iter().all(|&n| events.iter().any(|e| e.allowed && e.source.third() == n))
        }
    }
}

/// Applies one level's rule to a frozen partition.
pub fn apply_level(
    model: &ErrorModel,
    rule: &MergeRule,
    frozen: &MultipletPartition,
) -> (MultipletPartition, Vec<MergeEvent>, Vec<MergeWarning>) {
    let events: Vec<ClassifiedPair> = rule.families.iter().flat_map(|&f| model.classify(f)).collect();
    let corroborating: Vec<ClassifiedPair> =
        rule.corroborate_with.iter().flat_map(|&f| model.classify(f)).filter(|p| p.allowed).collect();
    let corroborated = group_by_classes(frozen, &corroborating);
    let label = |i: usize| class_label(&frozen.classes[i]);
    let triggers_of = |events: &[ClassifiedPair]| -> Vec<Trigger> {
        events.iter().filter(|e| e.allowed).map(Trigger::from).collect()
    };

    let mut warnings = Vec::new();
    let mut proposals = Vec::new();
    for (key, group) in group_by_classes(frozen, &events) {
        if !qualifies(rule, frozen, key, &group) {
            continue;
        }
        if !rule.corroborate_with.is_empty() && !corroborated.contains_key(&key) {
            warnings.push(MergeWarning {
                kind: WarningKind::Damped,
                classes: vec![label(key.0), label(key.1)],
                triggers: triggers_of(&group),
            });
            continue;
        }
        proposals.push(Proposal { classes: key, triggers: triggers_of(&group) });
    }

    let mut uses: BTreeMap<usize, usize> = BTreeMap::new();
    for p in &proposals {
        *uses.entry(p.classes.0).or_insert(0) += 1;
        *uses.entry(p.classes.1).or_insert(0) += 1;
    }
    let mut merged_into: BTreeMap<usize, usize> = BTreeMap::new();
    let mut merges = Vec::new();
    for p in proposals {
        let (a, b) = p.classes;
        if uses[&a] > 1 || uses[&b] > 1 {
            warnings.push(MergeWarning {
                kind: WarningKind::Contested,
                classes: vec![label(a), label(b)],
                triggers: p.triggers,
            });
            continue;
        }
        merged_into.insert(b, a);
        let mut union = frozen.classes[a].clone();
        union.extend(frozen.classes[b].iter().copied());
        merges.push(MergeEvent {
            rule: rule.criterion,
            triggers: p.triggers,
            merged: vec![label(a), label(b)],
            result: class_label(&union),
        });
    }

    let mut classes: Vec<CodonClass> = Vec::new();
    let mut slot: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, class) in frozen.classes.iter().enumerate() {
        let root = merged_into.get(&i).copied().unwrap_or(i);
        match slot.get(&root) {
            Some(&s) => classes[s].extend(class.iter().copied()),
            None => {
                slot.insert(root, classes.len());
                classes.push(class.clone());
            }
        }
    }
    (MultipletPartition::from_classes(rule.level, classes), merges, warnings)
}

impl Derivation {
    /// Runs levels 1 through `max_level`.
    pub fn run(config: &ModelConfig, max_level: u8) -> Result<Self, Error> {
        if !(1..=5).contains(&max_level) {
            return Err(Error::InvalidLevel(max_level));
        }
        let model = ErrorModel::new(config.clone());
        let mut partition = MultipletPartition::trivial();
        let mut levels = Vec::new();
        for level in 1..=max_level {
            let rule = MergeRule::for_level(level, config)?;
            let (next, merges, warnings) = apply_level(&model, &rule, &partition);
            levels.push(LevelTrace { level, rule, merges, warnings, partition: next.clone() });
            partition = next;
        }
        let mut derivation = Derivation { config: config.clone(), levels };
        for i in 0..derivation.levels.len() {
            let notes = derivation.singlet_candidates(&model, derivation.levels[i].level);
            derivation.levels[i].partition.annotations = notes;
        }
        Ok(derivation)
    }

    pub fn derive(config: &ModelConfig) -> Result<Self, Error> {
        Derivation::run(config, 5)
    }

    pub fn partition(&self, level: u8) -> Option<&MultipletPartition> {
        self.levels.iter().find(|l| l.level == level).map(|l| &l.partition)
    }

    pub fn final_partition(&self) -> &MultipletPartition {
        &self.levels.last().expect("at least one level").partition
    }

    /// Doublets pushed toward a neighbour by only one of their codons: an
    /// allowed event at level 2 or 3 from a weak (C- or A-ending) codon in
    /// another class lands in a class that is still a doublet once that
    /// level is done. Such doublets are candidates for a stop codon or for
    /// a split into singlets.
    fn singlet_candidates(&self, model: &ErrorModel, up_to: u8) -> Vec<Annotation> {
        let mut out: Vec<Annotation> = Vec::new();
        for level in 2..=up_to.min(3) {
            let Some(after) = self.partition(level) else { continue };
            let map = after.class_index_map();
            for pair in model.allowed_set(level).expect("valid level") {
                let (s, t) = (map[pair.source.index()], map[pair.target.index()]);
                let weak = matches!(pair.source.third(), Nucleotide::C | Nucleotide::A);
                if s == t || !weak || after.classes[t].len() != 2 {
                    continue;
                }
                let class = class_label(&after.classes[t]);
                if out.iter().all(|a| a.class != class) {
                    out.push(Annotation {
                        class,
                        note: "singlet-split candidate".to_string(),
                        trigger: Trigger::from(&pair),
                    });
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassStatus {
    Match,
    Mismatch,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ClassDiff {
    pub class: String,
    pub codons: Vec<Codon>,
    pub amino_acids: Vec<AminoAcid>,
    pub status: ClassStatus,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SplitGroup {
    pub amino_acid: AminoAcid,
    pub codons: Vec<Codon>,
    pub classes: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DiffReport {
    pub code: String,
    pub classes: Vec<ClassDiff>,
    pub split_groups: Vec<SplitGroup>,
    pub matches: usize,
    pub mismatches: usize,
    /// `size → (matching classes, mismatching classes)`.
    pub by_size: BTreeMap<usize, (usize, usize)>,
}

/// Compares a partition with the synonym classes of a genetic code.
pub fn diff_against(p: &MultipletPartition, table: &GeneticCodeTable) -> DiffReport {
    let mut classes = Vec::new();
    let mut by_size: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for class in &p.classes {
        let mut amino_acids: Vec<AminoAcid> = Vec::new();
        for &c in class {
            let aa = table.get(c);
            if !amino_acids.contains(&aa) {
                amino_acids.push(aa);
            }
        }
        let status = if amino_acids.len() == 1 { ClassStatus::Match } else { ClassStatus::Mismatch };
        let entry = by_size.entry(class.len()).or_insert((0, 0));
        match status {
            ClassStatus::Match => entry.0 += 1,
            ClassStatus::Mismatch => entry.1 += 1,
        }
        classes.push(ClassDiff { class: class_label(class), codons: class.clone(), amino_acids, status });
    }
    let map = p.class_index_map();
    let mut split_groups = Vec::new();
    for (aa, mut codons) in table.synonym_groups() {
        codons.sort_by_key(|c| c.table_position());
        let mut seen: Vec<usize> = Vec::new();
        for c in &codons {
            if !seen.contains(&map[c.index()]) {
                seen.push(map[c.index()]);
            }
        }
        if seen.len() > 1 {
            split_groups.push(SplitGroup {
                amino_acid: aa,
                codons,
                classes: seen.iter().map(|&i| class_label(&p.classes[i])).collect(),
            });
        }
    }
    let matches = classes.iter().filter(|c| c.status == ClassStatus::Match).count();
    DiffReport {
        code: table.name.to_string(),
        mismatches: classes.len() - matches,
        matches,
        classes,
        split_groups,
        by_size,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codon::expand_pattern;
    use crate::error_model::Scheme;

    fn class(patterns: &str) -> Vec<Codon> {
        patterns.split('+').flat_map(|p| expand_pattern(p).unwrap()).collect()
    }

    fn derive(scheme: Scheme) -> Derivation {
        Derivation::derive(&ModelConfig::new(scheme)).unwrap()
    }

    fn quartet_prefixes(p: &MultipletPartition) -> BTreeSet<String> {
        p.classes_of_size(4).into_iter().map(|c| c[0].dinucleotide().to_string()).collect()
    }

    fn set(list: &str) -> BTreeSet<String> {
        list.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn labels() {
        assert_eq!(class_label(&class("CUN+UUR")), "CUN+UUR");
        assert_eq!(class_label(&class("AGY")), "AGY");
        assert_eq!(class_label(&["CCA".parse().unwrap()]), "CCA");
    }

    #[test]
    fn trivial_partition() {
        let p = MultipletPartition::trivial();
        assert!(p.is_valid());
        assert_eq!(p.count_of_size(1), 64);
        let report = diff_against(&p, &GeneticCodeTable::vmc());
        assert_eq!(report.mismatches, 0);
        assert_eq!(report.split_groups.len(), 21);
    }

    #[test]
    fn level_one_is_32_doublets() {
        let d = derive(Scheme::A);
        let p = d.partition(1).unwrap();
        assert_eq!(p.count_of_size(2), 32);
        assert!(p.contains_class(&class("CCY")));
        assert!(p.contains_class(&class("UGR")));
        assert_eq!(diff_against(p, &GeneticCodeTable::vmc()).mismatches, 0);
    }

    #[test]
    fn level_two_quartets() {
        for scheme in [Scheme::A, Scheme::B] {
            let d = derive(scheme);
            let p = d.partition(2).unwrap();
            assert_eq!(quartet_prefixes(p), set("CC CU CG UC GG GC GU AC"), "{scheme}");
            assert_eq!(p.count_of_size(2), 16);
        }
        let d = derive(Scheme::B0);
        assert_eq!(quartet_prefixes(d.partition(2).unwrap()), set("CC CG GC GG"));
    }

    #[test]
    fn level_three_sextets() {
        let d = derive(Scheme::A);
        let p = d.partition(3).unwrap();
        assert!(p.contains_class(&class("CUN+UUR")));
        assert!(p.contains_class(&class("CGN+AGR")));
        assert_eq!((p.count_of_size(6), p.count_of_size(4), p.count_of_size(2)), (2, 6, 14));
    }

    #[test]
    fn final_scheme_a() {
        let d = derive(Scheme::A);
        let p = d.final_partition();
        assert!(p.contains_class(&class("UCN+AGY")));
        assert_eq!(p.count_of_size(6), 3);
        assert_eq!(p.count_of_size(8), 0);
        assert_eq!(d.partition(4).unwrap().classes, d.partition(3).unwrap().classes);
    }

    #[test]
    fn damping() {
        let d = derive(Scheme::A);
        assert!(d.levels[3].merges.is_empty());
        assert!(d.levels[3].warnings.iter().all(|w| w.kind == WarningKind::Damped));
        let mut config = ModelConfig::new(Scheme::A);
        config.damping = false;
        let undamped = Derivation::derive(&config).unwrap();
        let p = undamped.partition(4).unwrap();
        assert!(p.contains_class(&class("UCN+UGY")));
        assert!(p.contains_class(&class("CCN+CAY")));
    }

    #[test]
    fn partitions_valid_and_monotone() {
        for scheme in [Scheme::A, Scheme::B, Scheme::B0] {
            for damping in [true, false] {
                let mut config = ModelConfig::new(scheme);
                config.damping = damping;
                let d = Derivation::derive(&config).unwrap();
                let mut prev = MultipletPartition::trivial();
                for l in &d.levels {
                    assert!(l.partition.is_valid());
                    assert!(l.partition.coarsens(&prev));
                    prev = l.partition.clone();
                }
            }
        }
    }

    #[test]
    fn singlet_candidates() {
        let d = derive(Scheme::A);
        let flagged: BTreeSet<String> =
            d.final_partition().annotations.iter().map(|a| a.class.clone()).collect();
        assert!(flagged.contains("AGR") && flagged.contains("UGR"));
        assert!(!flagged.contains("CCN"));
    }

    #[test]
    fn diff_against_codes() {
        let d = derive(Scheme::A);
        let suc = diff_against(d.final_partition(), &GeneticCodeTable::suc());
        let sextets: Vec<&ClassDiff> = suc.classes.iter().filter(|c| c.codons.len() == 6).collect();
        assert!(sextets.iter().all(|c| c.status == ClassStatus::Match));
        let vmc = diff_against(d.final_partition(), &GeneticCodeTable::vmc());
        let arg = vmc.classes.iter().find(|c| c.class == "CGN+AGR").unwrap();
        assert_eq!(arg.status, ClassStatus::Mismatch);
        let leu = vmc.classes.iter().find(|c| c.class == "CUN+UUR").unwrap();
        assert_eq!(leu.status, ClassStatus::Match);
    }

    #[test]
    fn derivation_json_round_trip() {
        let d = derive(Scheme::B);
        let text = serde_json::to_string(&d).unwrap();
        let back: Derivation = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn deterministic() {
        let a = serde_json::to_string(&derive(Scheme::A)).unwrap();
        let b = serde_json::to_string(&derive(Scheme::A)).unwrap();
        assert_eq!(a, b);
    }
}
