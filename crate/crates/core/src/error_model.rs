//! Catalog of reading errors and the tensor operator assigned to each.
//!
//! Errors come in five levels of decreasing strength: third-position
//! transitions, third-position transversions, first-position substitutions,
//! second-position substitutions, and simultaneous substitutions of the
//! first two nucleotides. Only the directions C→U, G→A, C→G, U→A and C→A
//! are modelled; U→G is rejected explicitly.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::codon::{Codon, Dinucleotide, Nucleotide};
use crate::wigner_eckart::{connects, connects_sequential, CrystalTensorOp};
use crate::Error;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    /// Rank rules driven by the dinucleotide `b` and irrep-copy `c` conditions.
    A,
    /// Third-position transversions ranked by `α`/`β`, first-position
    /// transitions with a rank-0 vertical part, C→A as a two-step operator.
    B,
    /// Scheme B with plain vector operators for third-position transversions.
    B0,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::A => "a",
            Scheme::B => "b",
            Scheme::B0 => "b0",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a" => Ok(Scheme::A),
            "b" => Ok(Scheme::B),
            "b0" => Ok(Scheme::B0),
            other => Err(Error::Parse(format!("unknown scheme {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Position {
    First,
    Second,
    Third,
}

impl Position {
    pub fn index(self) -> usize {
        match self {
            Position::First => 0,
            Position::Second => 1,
            Position::Third => 2,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Position::First => "first",
            Position::Second => "second",
            Position::Third => "third",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubstitutionKind {
    /// C→U or G→A.
    Transition,
    TransversionCToG,
    TransversionUToA,
    TransversionCToA,
}

impl SubstitutionKind {
    pub const ALL: [SubstitutionKind; 4] = [
        SubstitutionKind::Transition,
        SubstitutionKind::TransversionCToG,
        SubstitutionKind::TransversionUToA,
        SubstitutionKind::TransversionCToA,
    ];

    pub fn classify(from: Nucleotide, to: Nucleotide) -> Result<Self, Error> {
        use Nucleotide::*;
        match (from, to) {
            (C, U) | (G, A) => Ok(SubstitutionKind::Transition),
            (C, G) => Ok(SubstitutionKind::TransversionCToG),
            (U, A) => Ok(SubstitutionKind::TransversionUToA),
            (C, A) => Ok(SubstitutionKind::TransversionCToA),
            _ => Err(Error::UnsupportedSubstitution { from, to }),
        }
    }

    /// The `(from, to)` nucleotide changes of this kind.
    pub fn changes(self) -> &'static [(Nucleotide, Nucleotide)] {
        use Nucleotide::*;
        match self {
            SubstitutionKind::Transition => &[(C, U), (G, A)],
            SubstitutionKind::TransversionCToG => &[(C, G)],
            SubstitutionKind::TransversionUToA => &[(U, A)],
            SubstitutionKind::TransversionCToA => &[(C, A)],
        }
    }

    fn name(self) -> &'static str {
        match self {
            SubstitutionKind::Transition => "transition",
            SubstitutionKind::TransversionCToG => "c-to-g",
            SubstitutionKind::TransversionUToA => "u-to-a",
            SubstitutionKind::TransversionCToA => "c-to-a",
        }
    }
}

/// A single-nucleotide error family: one kind at one position.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Family {
    pub position: Position,
    pub kind: SubstitutionKind,
}

impl Family {
    pub const fn new(position: Position, kind: SubstitutionKind) -> Self {
        Family { position, kind }
    }

    pub fn level(self) -> u8 {
        match (self.position, self.kind) {
            (Position::Third, SubstitutionKind::Transition) => 1,
            (Position::Third, _) => 2,
            (Position::First, _) => 3,
            (Position::Second, _) => 4,
        }
    }

    /// Every well-formed event of this family, sources in canonical order.
    pub fn candidates(self) -> Vec<SubstitutionEvent> {
        let mut out = Vec::new();
        for source in Codon::all() {
            for &(from, to) in self.kind.changes() {
                if source.at(self.position.index()) == from {
                    out.push(SubstitutionEvent {
                        kind: self.kind,
                        position: self.position,
                        source,
                        target: source.with(self.position.index(), to),
                    });
                }
            }
        }
        out
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.position.name(), self.kind.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        for position in [Position::First, Position::Second, Position::Third] {
            for kind in SubstitutionKind::ALL {
                let family = Family::new(position, kind);
                if family.to_string() == s {
                    return Ok(family);
                }
            }
        }
        Err(Error::UnknownFamily(s.to_string()))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SubstitutionEvent {
    pub kind: SubstitutionKind,
    pub position: Position,
    pub source: Codon,
    pub target: Codon,
}

impl SubstitutionEvent {
    /// Validates that `source` and `target` differ exactly at `position`
    /// by a modelled change.
    pub fn new(position: Position, source: Codon, target: Codon) -> Result<Self, Error> {
        let i = position.index();
        let differs_elsewhere = (0..3).any(|k| k != i && source.at(k) != target.at(k));
        if differs_elsewhere || source.at(i) == target.at(i) {
            return Err(Error::PatternMismatch {
                family: format!("{}-position substitution", position.name()),
                codon: format!("{source}->{target}"),
            });
        }
        let kind = SubstitutionKind::classify(source.at(i), target.at(i))?;
        Ok(SubstitutionEvent { kind, position, source, target })
    }

    pub fn family(&self) -> Family {
        Family::new(self.position, self.kind)
    }
}

/// The two-nucleotide error families, acting on the first two positions.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum DoubleFamily {
    TT,
    TTV,
    TTVD,
    TVT,
    TVTD,
    TVTV,
    TVTVD1,
    TVTVD2,
    TVTVDD,
}

impl DoubleFamily {
    pub const ALL: [DoubleFamily; 9] = [
        DoubleFamily::TT,
        DoubleFamily::TTV,
        DoubleFamily::TTVD,
        DoubleFamily::TVT,
        DoubleFamily::TVTD,
        DoubleFamily::TVTV,
        DoubleFamily::TVTVD1,
        DoubleFamily::TVTVD2,
        DoubleFamily::TVTVDD,
    ];

    /// The per-position kinds, first nucleotide then second.
    pub fn kinds(self) -> (SubstitutionKind, SubstitutionKind) {
        use SubstitutionKind::*;
        match self {
            DoubleFamily::TT => (Transition, Transition),
            DoubleFamily::TTV => (Transition, TransversionCToG),
            DoubleFamily::TTVD => (Transition, TransversionCToA),
            DoubleFamily::TVT => (TransversionCToG, Transition),
            DoubleFamily::TVTD => (TransversionCToA, Transition),
            DoubleFamily::TVTV => (TransversionCToG, TransversionCToG),
            DoubleFamily::TVTVD1 => (TransversionCToA, TransversionCToG),
            DoubleFamily::TVTVD2 => (TransversionCToG, TransversionCToA),
            DoubleFamily::TVTVDD => (TransversionCToA, TransversionCToA),
        }
    }

    /// Source and target of the first two nucleotides. A kind of
    /// `TransversionCToG` also covers U→A.
    pub fn patterns(self) -> Vec<(Dinucleotide, Dinucleotide)> {
        let (k1, k2) = self.kinds();
        let expand = |k: SubstitutionKind| -> Vec<(Nucleotide, Nucleotide)> {
            match k {
                SubstitutionKind::TransversionCToG => {
                    vec![(Nucleotide::C, Nucleotide::G), (Nucleotide::U, Nucleotide::A)]
                }
                other => other.changes().to_vec(),
            }
        };
        let mut out = Vec::new();
        for (a, a2) in expand(k1) {
            for &(b, b2) in &expand(k2) {
                out.push((Dinucleotide([a, b]), Dinucleotide([a2, b2])));
            }
        }
        out
    }

    pub fn candidates(self) -> Vec<DoubleSubstitution> {
        let mut out = Vec::new();
        for (from, to) in self.patterns() {
            for n in Nucleotide::ALL {
                out.push(DoubleSubstitution {
                    family: self,
                    source: Codon::new(from.0[0], from.0[1], n),
                    target: Codon::new(to.0[0], to.0[1], n),
                });
            }
        }
        out.sort_by_key(|d| d.source);
        out
    }
}

impl fmt::Display for DoubleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for DoubleFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DoubleFamily::ALL
            .iter()
            .copied()
            .find(|f| f.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownFamily(s.trim().to_string()))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct DoubleSubstitution {
    pub family: DoubleFamily,
    pub source: Codon,
    pub target: Codon,
}

impl DoubleSubstitution {
    pub fn new(family: DoubleFamily, source: Codon, target: Codon) -> Result<Self, Error> {
        let fits = source.third() == target.third()
            && family.patterns().contains(&(source.dinucleotide(), target.dinucleotide()));
        if !fits {
            return Err(Error::PatternMismatch {
                family: family.to_string(),
                codon: format!("{source}->{target}"),
            });
        }
        Ok(DoubleSubstitution { family, source, target })
    }
}

/// Any error family, single or double.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FamilyId {
    Single(Family),
    Double(DoubleFamily),
}

impl FamilyId {
    pub fn level(self) -> u8 {
        match self {
            FamilyId::Single(f) => f.level(),
            FamilyId::Double(_) => 5,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyId::Single(x) => x.fmt(f),
            FamilyId::Double(x) => x.fmt(f),
        }
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse::<Family>()
            .map(FamilyId::Single)
            .or_else(|_| s.parse::<DoubleFamily>().map(FamilyId::Double))
            .map_err(|_| Error::UnknownFamily(s.trim().to_string()))
    }
}

impl Serialize for FamilyId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FamilyId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Alternative operator choices that should leave the derived pattern
/// unchanged.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct OperatorVariants {
    /// Vertical rank of the third-position transition operator (default 0).
    pub third_transition_vertical_rank: Option<i32>,
    /// Common horizontal rank for first-position C→G and U→A.
    pub first_transversion_rank: Option<i32>,
    /// Horizontal rank for second-position C→G (default 1).
    pub second_c_to_g_rank: Option<i32>,
    /// Use the rank-0 vertical pair for the double transition.
    pub alternative_double_transition: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ModelConfig {
    pub scheme: Scheme,
    /// Level-4 merges need a level-5 connection between the same classes.
    pub damping: bool,
    /// Double families whose allowed pairs may trigger level-5 merges.
    pub level5_triggers: Vec<DoubleFamily>,
    pub variants: OperatorVariants,
}

impl ModelConfig {
    pub fn new(scheme: Scheme) -> Self {
        ModelConfig {
            scheme,
            damping: true,
            level5_triggers: vec![DoubleFamily::TVTV],
            variants: OperatorVariants::default(),
        }
    }
}

impl Default for ModelConfig {
    fn default() -> Self {
        ModelConfig::new(Scheme::A)
    }
}

/// One candidate event with its verdict.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ClassifiedPair {
    pub family: FamilyId,
    pub source: Codon,
    pub target: Codon,
    pub allowed: bool,
    pub scheme: Scheme,
}

const OP: fn(i32, i32, i32, i32) -> CrystalTensorOp = CrystalTensorOp::integral;

#[derive(Clone, Debug, Default)]
pub struct ErrorModel {
    pub config: ModelConfig,
}

impl ErrorModel {
    pub fn new(config: ModelConfig) -> Self {
        ErrorModel { config }
    }

    pub fn scheme(&self) -> Scheme {
        self.config.scheme
    }

    /// Rank `b` of the third-position C→G operator in the primary scheme.
    fn third_b(source: Codon) -> i32 {
        if source.dinucleotide().predicates().rank_two() {
            2
        } else {
            1
        }
    }

    /// Rank `c`: 1 when the codon and its C→U image at `position` lie in
    /// the same irrep copy, else 2.
    fn copy_rank(source: Codon, position: Position) -> i32 {
        let partner = source.with(position.index(), Nucleotide::U);
        if source.state().irrep == partner.state().irrep {
            1
        } else {
            2
        }
    }

    pub fn operator_for(&self, event: &SubstitutionEvent) -> Result<CrystalTensorOp, Error> {
        use SubstitutionKind::*;
        let checked = SubstitutionEvent::new(event.position, event.source, event.target)?;
        if checked.kind != event.kind {
            return Err(Error::PatternMismatch {
                family: event.family().to_string(),
                codon: format!("{}->{}", event.source, event.target),
            });
        }
        let scheme = self.config.scheme;
        let v = &self.config.variants;
        let s = event.source;
        let op = match (event.position, event.kind) {
            (Position::Third, Transition) => OP(1, -1, v.third_transition_vertical_rank.unwrap_or(0), 0),
            (Position::Third, TransversionCToG) => match scheme {
                Scheme::A => OP(Self::third_b(s), 0, 1, -1),
                Scheme::B => {
                    let alpha = if s.dinucleotide().predicates().alpha_two() { 2 } else { 1 };
                    OP(alpha, 0, 1, -1)
                }
                Scheme::B0 => OP(1, 0, 1, -1),
            },
            (Position::Third, TransversionUToA) => match scheme {
                Scheme::A => OP(Self::third_b(s) - 1, 0, 1, -1),
                Scheme::B => {
                    let beta =
                        if s.dinucleotide().predicates().unchanged_by_vertical_vector_op { 0 } else { 1 };
                    OP(beta, 0, 1, -1)
                }
                Scheme::B0 => OP(1, 0, 1, -1),
            },
            (Position::Third, TransversionCToA) => OP(Self::third_b(s), -1, 1, -1),
            (Position::First, Transition) => match scheme {
                Scheme::A => OP(1, -1, 1, 0),
                Scheme::B | Scheme::B0 => OP(1, -1, 0, 0),
            },
            (Position::First, TransversionCToG) => OP(v.first_transversion_rank.unwrap_or(1), 0, 1, -1),
            (Position::First, TransversionUToA) => OP(v.first_transversion_rank.unwrap_or(2), 0, 1, -1),
            (Position::First, TransversionCToA) => match scheme {
                Scheme::A => OP(Self::copy_rank(s, Position::First), -1, 1, -1),
                Scheme::B | Scheme::B0 => OP(1, -1, 1, -1),
            },
            (Position::Second, Transition) => OP(1, -1, 2, 0),
            (Position::Second, TransversionCToG) => OP(v.second_c_to_g_rank.unwrap_or(1), 0, 2, -1),
            (Position::Second, TransversionUToA) => OP(2, 0, 2, -1),
            (Position::Second, TransversionCToA) => OP(Self::copy_rank(s, Position::Second), -1, 2, -1),
        };
        Ok(op)
    }

    /// Operator pair `(I, II)` of a two-nucleotide error. A transversion
    /// C→G has `b = 1` and U→A has `b = 2`, read off the nucleotide that
    /// the operator transverts.
    pub fn double_operator_for(&self, d: &DoubleSubstitution) -> (CrystalTensorOp, CrystalTensorOp) {
        let b = |n: Nucleotide| if n == Nucleotide::U { 2 } else { 1 };
        let b1 = b(d.source.at(0));
        let b2 = b(d.source.at(1));
        let tr1 = OP(1, -1, 1, 0);
        let tr2 = OP(1, -1, 2, 0);
        let tv1 = OP(b1, 0, 1, -1);
        let tv2 = OP(b2, 0, 2, -1);
        let ca1 = OP(1, -1, 1, -1);
        let ca2 = OP(2, -1, 2, -1);
        match d.family {
            DoubleFamily::TT if self.config.variants.alternative_double_transition => {
                (OP(1, -1, 0, 0), OP(2, -1, 0, 0))
            }
            DoubleFamily::TT => (tr1, tr2),
            DoubleFamily::TTV => (tr1, tv2),
            DoubleFamily::TTVD => (tr1, ca2),
            DoubleFamily::TVT => (tv1, tr2),
            DoubleFamily::TVTD => (ca1, tr2),
            DoubleFamily::TVTV => (tv1, tv2),
            DoubleFamily::TVTVD1 => (ca1, tv2),
            DoubleFamily::TVTVD2 => (tv1, ca2),
            DoubleFamily::TVTVDD => (ca1, ca2),
        }
    }

    pub fn is_allowed(&self, event: &SubstitutionEvent) -> bool {
        self.operator_for(event).map(|op| connects(event.source, op, event.target)).unwrap_or(false)
    }

    pub fn is_double_allowed(&self, d: &DoubleSubstitution) -> bool {
        let (op_i, op_ii) = self.double_operator_for(d);
        connects_sequential(d.source, op_i, op_ii, d.target)
    }

    /// Every candidate of `family` with its verdict, sources in canonical order.
    pub fn classify(&self, family: FamilyId) -> Vec<ClassifiedPair> {
        let scheme = self.config.scheme;
        match family {
            FamilyId::Single(f) => f
                .candidates()
                .into_iter()
                .map(|e| ClassifiedPair {
                    family,
                    source: e.source,
                    target: e.target,
                    allowed: self.is_allowed(&e),
                    scheme,
                })
                .collect(),
            FamilyId::Double(f) => f
                .candidates()
                .into_iter()
                .map(|d| ClassifiedPair {
                    family,
                    source: d.source,
                    target: d.target,
                    allowed: self.is_double_allowed(&d),
                    scheme,
                })
                .collect(),
        }
    }

    pub fn allowed_pairs(&self, family: FamilyId) -> Vec<(Codon, Codon)> {
        self.classify(family).into_iter().filter(|p| p.allowed).map(|p| (p.source, p.target)).collect()
    }

    pub fn forbidden_pairs(&self, family: FamilyId) -> Vec<(Codon, Codon)> {
        self.classify(family).into_iter().filter(|p| !p.allowed).map(|p| (p.source, p.target)).collect()
    }

    /// Classified candidates of every family at `level`.
    pub fn classify_level(&self, level: u8) -> Result<Vec<ClassifiedPair>, Error> {
        Ok(families_at(level)?.into_iter().flat_map(|f| self.classify(f)).collect())
    }

    pub fn allowed_set(&self, level: u8) -> Result<Vec<ClassifiedPair>, Error> {
        Ok(self.classify_level(level)?.into_iter().filter(|p| p.allowed).collect())
    }

    /// Forbidden candidates at `level`, optionally restricted to one family.
    pub fn forbidden_set(&self, level: u8, family: Option<FamilyId>) -> Result<Vec<ClassifiedPair>, Error> {
        let families = families_at(level)?;
        if let Some(f) = family {
            if !families.contains(&f) {
                return Err(Error::UnknownFamily(format!("{f} at level {level}")));
            }
        }
        Ok(families
            .into_iter()
            .filter(|f| family.is_none_or(|x| x == *f))
            .flat_map(|f| self.classify(f))
            .filter(|p| !p.allowed)
            .collect())
    }
}

/// The error families acting at a level.
pub fn families_at(level: u8) -> Result<Vec<FamilyId>, Error> {
    use SubstitutionKind::*;
    let single = |position, kinds: &[SubstitutionKind]| {
        kinds.iter().map(|&k| FamilyId::Single(Family::new(position, k))).collect::<Vec<_>>()
    };
    let transversions = [TransversionCToG, TransversionUToA, TransversionCToA];
    let all = [Transition, TransversionCToG, TransversionUToA, TransversionCToA];
    Ok(match level {
        1 => single(Position::Third, &[Transition]),
        2 => single(Position::Third, &transversions),
        3 => single(Position::First, &all),
        4 => single(Position::Second, &all),
        5 => DoubleFamily::ALL.iter().map(|&f| FamilyId::Double(f)).collect(),
        other => return Err(Error::InvalidLevel(other)),
    })
}

pub fn all_families() -> Vec<FamilyId> {
    (1..=5).flat_map(|l| families_at(l).expect("valid level")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn codon(s: &str) -> Codon {
        s.parse().unwrap()
    }

    fn fam(s: &str) -> FamilyId {
        s.parse().unwrap()
    }

    fn pairs(list: &str) -> BTreeSet<(Codon, Codon)> {
        list.split_whitespace()
            .map(|p| {
                let (a, b) = p.split_once('>').unwrap();
                (codon(a), codon(b))
            })
            .collect()
    }

    fn allowed(model: &ErrorModel, f: &str) -> BTreeSet<(Codon, Codon)> {
        model.allowed_pairs(fam(f)).into_iter().collect()
    }

    fn sources(model: &ErrorModel, f: &str, forbidden: bool) -> BTreeSet<String> {
        let list = if forbidden { model.forbidden_pairs(fam(f)) } else { model.allowed_pairs(fam(f)) };
        list.into_iter().map(|(s, _)| s.dinucleotide().to_string()).collect()
    }

    fn set(list: &str) -> BTreeSet<String> {
        list.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn family_names_round_trip() {
        for f in all_families() {
            assert_eq!(f.to_string().parse::<FamilyId>().unwrap(), f);
        }
        assert!("fourth-transition".parse::<FamilyId>().is_err());
        assert_eq!(fam("third-c-to-g").level(), 2);
    }

    #[test]
    fn u_to_g_rejected() {
        let err = SubstitutionEvent::new(Position::Third, codon("CCU"), codon("CCG")).unwrap_err();
        assert!(matches!(err, Error::UnsupportedSubstitution { .. }));
        assert!(SubstitutionEvent::new(Position::Third, codon("CCC"), codon("CUU")).is_err());
        assert!(SubstitutionEvent::new(Position::First, codon("CCC"), codon("CCC")).is_err());
    }

    #[test]
    fn operator_examples() {
        let m = ErrorModel::default();
        let e = SubstitutionEvent::new(Position::Third, codon("CCC"), codon("CCU")).unwrap();
        assert_eq!(m.operator_for(&e).unwrap(), OP(1, -1, 0, 0));
        let e = SubstitutionEvent::new(Position::Third, codon("CAC"), codon("CAG")).unwrap();
        assert_eq!(m.operator_for(&e).unwrap().rank_h.twice(), 4);
        let tvb = SubstitutionEvent::new(Position::Third, codon("CAU"), codon("CAA")).unwrap();
        let tva = SubstitutionEvent::new(Position::Third, codon("CAC"), codon("CAG")).unwrap();
        assert_eq!(
            m.operator_for(&tvb).unwrap().rank_h.twice(),
            m.operator_for(&tva).unwrap().rank_h.twice() - 2
        );
    }

    #[test]
    fn candidate_counts() {
        assert_eq!(fam("third-transition").level(), 1);
        let FamilyId::Single(f) = fam("first-transition") else { unreachable!() };
        assert_eq!(f.candidates().len(), 32);
        let FamilyId::Single(f) = fam("second-c-to-a") else { unreachable!() };
        assert_eq!(f.candidates().len(), 16);
        assert_eq!(DoubleFamily::TT.candidates().len(), 16);
        assert_eq!(DoubleFamily::TVTVDD.candidates().len(), 4);
    }

    #[test]
    fn double_patterns() {
        let tt: Vec<String> = DoubleFamily::TT.patterns().iter().map(|(a, b)| format!("{a}>{b}")).collect();
        assert_eq!(tt, vec!["CC>UU", "CG>UA", "GC>AU", "GG>AA"]);
        assert!(DoubleSubstitution::new(DoubleFamily::TTVD, codon("CCU"), codon("UAC")).is_err());
        assert!(DoubleSubstitution::new(DoubleFamily::TTVD, codon("CCC"), codon("UAC")).is_ok());
    }

    #[test]
    fn double_operators() {
        let m = ErrorModel::default();
        let tt = DoubleSubstitution::new(DoubleFamily::TT, codon("CCU"), codon("UUU")).unwrap();
        assert_eq!(m.double_operator_for(&tt), (OP(1, -1, 1, 0), OP(1, -1, 2, 0)));
        let dd = DoubleSubstitution::new(DoubleFamily::TVTVDD, codon("CCG"), codon("AAG")).unwrap();
        assert_eq!(m.double_operator_for(&dd), (OP(1, -1, 1, -1), OP(2, -1, 2, -1)));
        let tvtv = DoubleSubstitution::new(DoubleFamily::TVTV, codon("UCC"), codon("AGC")).unwrap();
        assert_eq!(m.double_operator_for(&tvtv), (OP(2, 0, 1, -1), OP(1, 0, 2, -1)));
    }

    #[test]
    fn level_one_doublets() {
        let m = ErrorModel::default();
        assert_eq!(m.allowed_set(1).unwrap().len(), 32);
        assert!(m.forbidden_set(1, None).unwrap().is_empty());
    }

    #[test]
    fn level_two_forbidden_lists() {
        let m = ErrorModel::default();
        assert_eq!(sources(&m, "third-c-to-g", true), set("CA UU UA GA AU AA"));
        assert_eq!(sources(&m, "third-u-to-a", true), set("CA UU UG UA GA AU AG AA"));
        assert_eq!(sources(&m, "third-c-to-a", true), set("CA UU UG UA GA AU AG AA"));
        let forbidden = m.forbidden_set(2, Some(fam("third-u-to-a"))).unwrap();
        assert!(forbidden.iter().any(|p| (p.source, p.target) == (codon("UUU"), codon("UUA"))));
        assert!(forbidden.iter().any(|p| (p.source, p.target) == (codon("CAU"), codon("CAA"))));
        let forbidden = m.forbidden_set(2, Some(fam("third-c-to-a"))).unwrap();
        assert!(forbidden.iter().any(|p| (p.source, p.target) == (codon("AGC"), codon("AGA"))));
    }

    #[test]
    fn scheme_b_third_position() {
        let m = ErrorModel::new(ModelConfig::new(Scheme::B));
        let c_to_g = sources(&m, "third-c-to-g", false);
        for d in ["AG", "UG", "UA", "CA", "GA"] {
            assert!(c_to_g.contains(d), "{d}");
        }
        let u_to_a = sources(&m, "third-u-to-a", false);
        for d in ["UU", "AU"] {
            assert!(u_to_a.contains(d), "{d}");
        }
        for d in ["AG", "UG"] {
            assert!(!u_to_a.contains(d), "{d}");
        }
    }

    #[test]
    fn level_three_lists() {
        let m = ErrorModel::default();
        assert_eq!(allowed(&m, "first-u-to-a"), pairs("UCG>ACG UGG>AGG"));
        assert_eq!(allowed(&m, "first-c-to-a"), pairs("CCA>ACA CUG>AUG CGA>AGA CAG>AAG"));
        assert_eq!(allowed(&m, "first-transition").len(), 10);
    }

    #[test]
    fn scheme_b_first_position() {
        let m = ErrorModel::new(ModelConfig::new(Scheme::B));
        assert_eq!(allowed(&m, "first-transition").len(), 16);
        let c_to_a = allowed(&m, "first-c-to-a");
        assert!(c_to_a.iter().all(|(s, t)| s.third() == Nucleotide::A && t.at(0) == Nucleotide::A));
        assert_eq!(c_to_a.len(), 4);
    }

    #[test]
    fn second_position_u_to_a_is_empty() {
        let m = ErrorModel::default();
        assert!(allowed(&m, "second-u-to-a").is_empty());
    }

    #[test]
    fn double_families() {
        let m = ErrorModel::default();
        assert_eq!(allowed(&m, "TT"), pairs("CCU>UUU GCU>AUU"));
        assert_eq!(allowed(&m, "TVTD"), pairs("CCU>AUU"));
        assert!(allowed(&m, "TVTVD1").is_empty());
        assert!(allowed(&m, "TVTV").contains(&(codon("UCC"), codon("AGC"))));
        assert!(allowed(&m, "TVTV").contains(&(codon("CCC"), codon("GGC"))));
    }

    #[test]
    fn closure() {
        for scheme in [Scheme::A, Scheme::B, Scheme::B0] {
            let m = ErrorModel::new(ModelConfig::new(scheme));
            for level in 1..=5 {
                let all = m.classify_level(level).unwrap();
                let a = m.allowed_set(level).unwrap().len();
                let f = m.forbidden_set(level, None).unwrap().len();
                assert_eq!(a + f, all.len());
            }
        }
        assert!(matches!(ErrorModel::default().allowed_set(6), Err(Error::InvalidLevel(6))));
    }

    #[test]
    fn catalog_operators_never_vanish() {
        for scheme in [Scheme::A, Scheme::B, Scheme::B0] {
            let m = ErrorModel::new(ModelConfig::new(scheme));
            for f in all_families() {
                match f {
                    FamilyId::Single(f) => {
                        for e in f.candidates() {
                            assert!(!m.operator_for(&e).unwrap().is_vanishing(), "{e:?}");
                        }
                    }
                    FamilyId::Double(f) => {
                        for d in f.candidates() {
                            let (a, b) = m.double_operator_for(&d);
                            assert!(!a.is_vanishing() && !b.is_vanishing());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn classified_pairs_round_trip() {
        let list = ErrorModel::default().classify_level(2).unwrap();
        let text = serde_json::to_string(&list).unwrap();
        let back: Vec<ClassifiedPair> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, list);
    }
}
