//! Nucleotides, codons and their crystal states, plus the two reference
//! genetic codes.
//!
//! The reference tables below are transcribed data. The crystal states are
//! always recomputed from the nucleotide weights; tests require the two to
//! agree row for row.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::crystal::{product_state, tensor_pair, CrystalState, DoubletWeight, HalfInt, Sl2State};
use crate::Error;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Nucleotide {
    C,
    U,
    G,
    A,
}

impl Nucleotide {
    pub const ALL: [Nucleotide; 4] = [Nucleotide::C, Nucleotide::U, Nucleotide::G, Nucleotide::A];

    /// `(J_{3,H}, J_{3,V})` of the nucleotide in the fundamental irrep.
    pub fn weights(self) -> (HalfInt, HalfInt) {
        let (h, v) = match self {
            Nucleotide::C => (1, 1),
            Nucleotide::U => (-1, 1),
            Nucleotide::G => (1, -1),
            Nucleotide::A => (-1, -1),
        };
        (HalfInt::from_twice(h), HalfInt::from_twice(v))
    }

    pub fn weight(self) -> DoubletWeight {
        let (h, v) = self.weights();
        DoubletWeight::fundamental(h, v).expect("fundamental weights")
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_char(c: char) -> Result<Self, Error> {
        match c.to_ascii_uppercase() {
            'C' => Ok(Nucleotide::C),
            'U' | 'T' => Ok(Nucleotide::U),
            'G' => Ok(Nucleotide::G),
            'A' => Ok(Nucleotide::A),
            _ => Err(Error::Parse(format!("not a nucleotide: {c:?}"))),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Nucleotide::C => 'C',
            Nucleotide::U => 'U',
            Nucleotide::G => 'G',
            Nucleotide::A => 'A',
        }
    }

    pub fn class(self) -> NucleotideClass {
        match self {
            Nucleotide::C | Nucleotide::U => NucleotideClass::Pyrimidine,
            Nucleotide::G | Nucleotide::A => NucleotideClass::Purine,
        }
    }
}

impl fmt::Display for Nucleotide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// The classifiers Y (pyrimidines), R (purines) and N (anything).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum NucleotideClass {
    Pyrimidine,
    Purine,
    Any,
}

impl NucleotideClass {
    pub fn members(self) -> &'static [Nucleotide] {
        match self {
            NucleotideClass::Pyrimidine => &[Nucleotide::C, Nucleotide::U],
            NucleotideClass::Purine => &[Nucleotide::G, Nucleotide::A],
            NucleotideClass::Any => &Nucleotide::ALL,
        }
    }

    pub fn contains(self, n: Nucleotide) -> bool {
        self.members().contains(&n)
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'Y' => Some(NucleotideClass::Pyrimidine),
            'R' => Some(NucleotideClass::Purine),
            'N' => Some(NucleotideClass::Any),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Codon(pub [Nucleotide; 3]);

impl Codon {
    pub fn new(n1: Nucleotide, n2: Nucleotide, n3: Nucleotide) -> Self {
        Codon([n1, n2, n3])
    }

    /// All 64 codons, first nucleotide varying slowest, in C, U, G, A order.
    pub fn all() -> impl Iterator<Item = Codon> {
        (0..64).map(Codon::from_index)
    }

    /// All 64 codons in the row order of the reference codon table.
    pub fn table_order() -> impl Iterator<Item = Codon> {
        TABLE1.iter().map(|row| row.codon.parse().expect("valid table codon"))
    }

    /// Row-major position in the reference codon table.
    pub fn table_position(self) -> usize {
        static POSITIONS: OnceLock<[usize; 64]> = OnceLock::new();
        POSITIONS.get_or_init(|| {
            let mut out = [0; 64];
            for (i, c) in Codon::table_order().enumerate() {
                out[c.index()] = i;
            }
            out
        })[self.index()]
    }

    pub fn index(self) -> usize {
        let [a, b, c] = self.0;
        a.index() * 16 + b.index() * 4 + c.index()
    }

    pub fn from_index(i: usize) -> Self {
        let n = |k: usize| Nucleotide::ALL[k % 4];
        Codon([n(i / 16), n(i / 4), n(i)])
    }

    pub fn at(self, position: usize) -> Nucleotide {
        self.0[position]
    }

    pub fn with(self, position: usize, n: Nucleotide) -> Codon {
        let mut out = self.0;
        out[position] = n;
        Codon(out)
    }

    pub fn dinucleotide(self) -> Dinucleotide {
        Dinucleotide([self.0[0], self.0[1]])
    }

    pub fn third(self) -> Nucleotide {
        self.0[2]
    }

    /// The crystal state of the codon in the threefold product.
    pub fn state(self) -> CrystalState {
        static STATES: OnceLock<Vec<CrystalState>> = OnceLock::new();
        STATES.get_or_init(|| Codon::all().map(codon_state).collect())[self.index()]
    }
}

/// Computes the state of a codon from its three nucleotide weights.
pub fn codon_state(c: Codon) -> CrystalState {
    let weights: Vec<DoubletWeight> = c.0.iter().map(|n| n.weight()).collect();
    product_state(&weights).expect("fundamental factors")
}

impl fmt::Display for Codon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in self.0 {
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Codon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Codon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<char> = s.trim().chars().collect();
        if chars.len() != 3 {
            return Err(Error::Parse(format!("not a codon: {s:?}")));
        }
        Ok(Codon([
            Nucleotide::from_char(chars[0])?,
            Nucleotide::from_char(chars[1])?,
            Nucleotide::from_char(chars[2])?,
        ]))
    }
}

impl Serialize for Codon {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Codon {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Expands a pattern such as `CUN`, `AGR` or `UCY` into its codons, in
/// canonical order.
pub fn expand_pattern(pattern: &str) -> Result<Vec<Codon>, Error> {
    let chars: Vec<char> = pattern.trim().chars().collect();
    if chars.len() != 3 {
        return Err(Error::Parse(format!("not a codon pattern: {pattern:?}")));
    }
    let mut slots: Vec<&[Nucleotide]> = Vec::with_capacity(3);
    for &c in &chars {
        if let Some(class) = NucleotideClass::from_char(c) {
            slots.push(class.members());
        } else {
            let n = Nucleotide::from_char(c)?;
            slots.push(&Nucleotide::ALL[n.index()..n.index() + 1]);
        }
    }
    let mut out = Vec::new();
    for &a in slots[0] {
        for &b in slots[1] {
            for &c in slots[2] {
                out.push(Codon([a, b, c]));
            }
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dinucleotide(pub [Nucleotide; 2]);

impl Dinucleotide {
    pub fn all() -> impl Iterator<Item = Dinucleotide> {
        (0..16).map(|i| Dinucleotide([Nucleotide::ALL[i / 4], Nucleotide::ALL[i % 4]]))
    }

    pub fn table_order() -> impl Iterator<Item = Dinucleotide> {
        TABLE2.iter().map(|row| row.dinucleotide.parse().expect("valid table dinucleotide"))
    }

    pub fn state(self) -> CrystalState {
        dinucleotide_state(self)
    }

    pub fn predicates(self) -> DinucleotideFlags {
        dinucleotide_predicates(self)
    }
}

impl fmt::Display for Dinucleotide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0[0], self.0[1])
    }
}

impl fmt::Debug for Dinucleotide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Dinucleotide {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<char> = s.trim().chars().collect();
        if chars.len() != 2 {
            return Err(Error::Parse(format!("not a dinucleotide: {s:?}")));
        }
        Ok(Dinucleotide([Nucleotide::from_char(chars[0])?, Nucleotide::from_char(chars[1])?]))
    }
}

impl Serialize for Dinucleotide {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Dinucleotide {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn dinucleotide_state(d: Dinucleotide) -> CrystalState {
    let weights: Vec<DoubletWeight> = d.0.iter().map(|n| n.weight()).collect();
    product_state(&weights).expect("fundamental factors")
}

/// Properties of the state of the first two nucleotides that select
/// operator ranks for third-position transversions.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DinucleotideFlags {
    pub jv_zero: bool,
    pub lowest_weight_v: bool,
    pub lowest_weight_h_nonzero_jh: bool,
    /// Tensoring the V factor with the rank-1, component-0 vector leaves
    /// `(J_V, M_V)` unchanged.
    pub unchanged_by_vertical_vector_op: bool,
}

impl DinucleotideFlags {
    /// Condition for the rank-2 horizontal operator in the primary scheme.
    pub fn rank_two(&self) -> bool {
        self.jv_zero || self.lowest_weight_v || self.lowest_weight_h_nonzero_jh
    }

    /// Condition for the rank-2 C→G operator in the alternative scheme.
    /// UA is H-lowest with `J_H = 1` but sits in `J_V = 0` and keeps rank 1.
    pub fn alpha_two(&self) -> bool {
        self.lowest_weight_h_nonzero_jh && !self.jv_zero
    }
}

pub fn dinucleotide_predicates(d: Dinucleotide) -> DinucleotideFlags {
    let labels = d.state().labels();
    let vector = Sl2State::new(HalfInt::ONE, HalfInt::ZERO).expect("valid");
    DinucleotideFlags {
        jv_zero: labels.j_v() == HalfInt::ZERO,
        lowest_weight_v: labels.v.is_lowest(),
        lowest_weight_h_nonzero_jh: labels.j_h() != HalfInt::ZERO && labels.h.is_lowest(),
        unchanged_by_vertical_vector_op: tensor_pair(labels.v, vector) == labels.v,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum AminoAcid {
    Ala,
    Arg,
    Asn,
    Asp,
    Cys,
    Gln,
    Glu,
    Gly,
    His,
    Ile,
    Leu,
    Lys,
    Met,
    Phe,
    Pro,
    Ser,
    Thr,
    Trp,
    Tyr,
    Val,
    Ter,
}

impl AminoAcid {
    pub const ALL: [AminoAcid; 21] = [
        AminoAcid::Ala,
        AminoAcid::Arg,
        AminoAcid::Asn,
        AminoAcid::Asp,
        AminoAcid::Cys,
        AminoAcid::Gln,
        AminoAcid::Glu,
        AminoAcid::Gly,
        AminoAcid::His,
        AminoAcid::Ile,
        AminoAcid::Leu,
        AminoAcid::Lys,
        AminoAcid::Met,
        AminoAcid::Phe,
        AminoAcid::Pro,
        AminoAcid::Ser,
        AminoAcid::Thr,
        AminoAcid::Trp,
        AminoAcid::Tyr,
        AminoAcid::Val,
        AminoAcid::Ter,
    ];

    pub fn is_stop(self) -> bool {
        self == AminoAcid::Ter
    }
}

impl fmt::Display for AminoAcid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for AminoAcid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AminoAcid::ALL
            .iter()
            .copied()
            .find(|aa| aa.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("not an amino acid: {s:?}")))
    }
}

impl Serialize for AminoAcid {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AminoAcid {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeName {
    /// Vertebrate mitochondrial code.
    Vmc,
    /// Standard (universal) code.
    Suc,
}

impl fmt::Display for CodeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeName::Vmc => "VMC",
            CodeName::Suc => "SUC",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneticCodeTable {
    pub name: CodeName,
    map: [AminoAcid; 64],
}

/// Codons whose assignment differs between the two codes: (codon, VMC, SUC).
pub const VMC_SUC_DIFFERENCES: [(&str, AminoAcid, AminoAcid); 4] = [
    ("UGA", AminoAcid::Trp, AminoAcid::Ter),
    ("AUA", AminoAcid::Met, AminoAcid::Ile),
    ("AGA", AminoAcid::Ter, AminoAcid::Arg),
    ("AGG", AminoAcid::Ter, AminoAcid::Arg),
];

impl GeneticCodeTable {
    pub fn vmc() -> Self {
        let mut map = [AminoAcid::Ter; 64];
        for row in TABLE1 {
            let codon: Codon = row.codon.parse().expect("valid table codon");
            map[codon.index()] = row.vmc;
        }
        GeneticCodeTable { name: CodeName::Vmc, map }
    }

    pub fn suc() -> Self {
        let mut table = GeneticCodeTable::vmc();
        table.name = CodeName::Suc;
        for (codon, _, suc) in VMC_SUC_DIFFERENCES {
            let codon: Codon = codon.parse().expect("valid codon");
            table.map[codon.index()] = suc;
        }
        table
    }

    pub fn by_name(name: CodeName) -> Self {
        match name {
            CodeName::Vmc => GeneticCodeTable::vmc(),
            CodeName::Suc => GeneticCodeTable::suc(),
        }
    }

    pub fn get(&self, codon: Codon) -> AminoAcid {
        self.map[codon.index()]
    }

    /// Synonym classes (stop codons counted as one class), each in
    /// canonical codon order, ordered by their first codon.
    pub fn synonym_groups(&self) -> Vec<(AminoAcid, Vec<Codon>)> {
        let mut groups: Vec<(AminoAcid, Vec<Codon>)> = Vec::new();
        for codon in Codon::all() {
            let aa = self.get(codon);
            match groups.iter_mut().find(|(a, _)| *a == aa) {
                Some((_, codons)) => codons.push(codon),
                None => groups.push((aa, vec![codon])),
            }
        }
        groups
    }
}

/// One row of the reference codon table. Half-integers are stored doubled.
#[derive(Clone, Copy, Debug)]
pub struct Table1Row {
    pub codon: &'static str,
    pub vmc: AminoAcid,
    pub j_h: i32,
    pub j_v: i32,
    pub mult: u8,
    pub m_h: i32,
    pub m_v: i32,
}

impl Table1Row {
    pub fn state(&self) -> CrystalState {
        CrystalState {
            irrep: crate::crystal::IrrepLabel {
                j_h: HalfInt::from_twice(self.j_h),
                j_v: HalfInt::from_twice(self.j_v),
                mult: self.mult,
            },
            m_h: HalfInt::from_twice(self.m_h),
            m_v: HalfInt::from_twice(self.m_v),
        }
    }
}

/// One row of the reference dinucleotide table, half-integers doubled.
#[derive(Clone, Copy, Debug)]
pub struct Table2Row {
    pub dinucleotide: &'static str,
    pub j_h: i32,
    pub j_v: i32,
    pub m_h: i32,
    pub m_v: i32,
}

impl Table2Row {
    /// Every dinucleotide irrep occurs once, so the copy index is always 1.
    pub fn state(&self) -> CrystalState {
        CrystalState {
            irrep: crate::crystal::IrrepLabel {
                j_h: HalfInt::from_twice(self.j_h),
                j_v: HalfInt::from_twice(self.j_v),
                mult: 1,
            },
            m_h: HalfInt::from_twice(self.m_h),
            m_v: HalfInt::from_twice(self.m_v),
        }
    }
}

/// Reference codon table, rows read left to right then top to bottom.
pub const TABLE1: [Table1Row; 64] = [
    Table1Row { codon: "CCC", vmc: AminoAcid::Pro, j_h: 3, j_v: 3, mult: 1, m_h: 3, m_v: 3 },
    Table1Row { codon: "UCC", vmc: AminoAcid::Ser, j_h: 3, j_v: 3, mult: 1, m_h: 1, m_v: 3 },
    Table1Row { codon: "CCU", vmc: AminoAcid::Pro, j_h: 1, j_v: 3, mult: 1, m_h: 1, m_v: 3 },
    Table1Row { codon: "UCU", vmc: AminoAcid::Ser, j_h: 1, j_v: 3, mult: 1, m_h: -1, m_v: 3 },
    Table1Row { codon: "CCG", vmc: AminoAcid::Pro, j_h: 3, j_v: 1, mult: 1, m_h: 3, m_v: 1 },
    Table1Row { codon: "UCG", vmc: AminoAcid::Ser, j_h: 3, j_v: 1, mult: 1, m_h: 1, m_v: 1 },
    Table1Row { codon: "CCA", vmc: AminoAcid::Pro, j_h: 1, j_v: 1, mult: 1, m_h: 1, m_v: 1 },
    Table1Row { codon: "UCA", vmc: AminoAcid::Ser, j_h: 1, j_v: 1, mult: 1, m_h: -1, m_v: 1 },
    Table1Row { codon: "CUC", vmc: AminoAcid::Leu, j_h: 1, j_v: 3, mult: 2, m_h: 1, m_v: 3 },
    Table1Row { codon: "UUC", vmc: AminoAcid::Phe, j_h: 3, j_v: 3, mult: 1, m_h: -1, m_v: 3 },
    Table1Row { codon: "CUU", vmc: AminoAcid::Leu, j_h: 1, j_v: 3, mult: 2, m_h: -1, m_v: 3 },
    Table1Row { codon: "UUU", vmc: AminoAcid::Phe, j_h: 3, j_v: 3, mult: 1, m_h: -3, m_v: 3 },
    Table1Row { codon: "CUG", vmc: AminoAcid::Leu, j_h: 1, j_v: 1, mult: 3, m_h: 1, m_v: 1 },
    Table1Row { codon: "UUG", vmc: AminoAcid::Leu, j_h: 3, j_v: 1, mult: 1, m_h: -1, m_v: 1 },
    Table1Row { codon: "CUA", vmc: AminoAcid::Leu, j_h: 1, j_v: 1, mult: 3, m_h: -1, m_v: 1 },
    Table1Row { codon: "UUA", vmc: AminoAcid::Leu, j_h: 3, j_v: 1, mult: 1, m_h: -3, m_v: 1 },
    Table1Row { codon: "CGC", vmc: AminoAcid::Arg, j_h: 3, j_v: 1, mult: 2, m_h: 3, m_v: 1 },
    Table1Row { codon: "UGC", vmc: AminoAcid::Cys, j_h: 3, j_v: 1, mult: 2, m_h: 1, m_v: 1 },
    Table1Row { codon: "CGU", vmc: AminoAcid::Arg, j_h: 1, j_v: 1, mult: 2, m_h: 1, m_v: 1 },
    Table1Row { codon: "UGU", vmc: AminoAcid::Cys, j_h: 1, j_v: 1, mult: 2, m_h: -1, m_v: 1 },
    Table1Row { codon: "CGG", vmc: AminoAcid::Arg, j_h: 3, j_v: 1, mult: 2, m_h: 3, m_v: -1 },
    Table1Row { codon: "UGG", vmc: AminoAcid::Trp, j_h: 3, j_v: 1, mult: 2, m_h: 1, m_v: -1 },
    Table1Row { codon: "CGA", vmc: AminoAcid::Arg, j_h: 1, j_v: 1, mult: 2, m_h: 1, m_v: -1 },
    Table1Row { codon: "UGA", vmc: AminoAcid::Trp, j_h: 1, j_v: 1, mult: 2, m_h: -1, m_v: -1 },
    Table1Row { codon: "CAC", vmc: AminoAcid::His, j_h: 1, j_v: 1, mult: 4, m_h: 1, m_v: 1 },
    Table1Row { codon: "UAC", vmc: AminoAcid::Tyr, j_h: 3, j_v: 1, mult: 2, m_h: -1, m_v: 1 },
    Table1Row { codon: "CAU", vmc: AminoAcid::His, j_h: 1, j_v: 1, mult: 4, m_h: -1, m_v: 1 },
    Table1Row { codon: "UAU", vmc: AminoAcid::Tyr, j_h: 3, j_v: 1, mult: 2, m_h: -3, m_v: 1 },
    Table1Row { codon: "CAG", vmc: AminoAcid::Gln, j_h: 1, j_v: 1, mult: 4, m_h: 1, m_v: -1 },
    Table1Row { codon: "UAG", vmc: AminoAcid::Ter, j_h: 3, j_v: 1, mult: 2, m_h: -1, m_v: -1 },
    Table1Row { codon: "CAA", vmc: AminoAcid::Gln, j_h: 1, j_v: 1, mult: 4, m_h: -1, m_v: -1 },
    Table1Row { codon: "UAA", vmc: AminoAcid::Ter, j_h: 3, j_v: 1, mult: 2, m_h: -3, m_v: -1 },
    Table1Row { codon: "GCC", vmc: AminoAcid::Ala, j_h: 3, j_v: 3, mult: 1, m_h: 3, m_v: 1 },
    Table1Row { codon: "ACC", vmc: AminoAcid::Thr, j_h: 3, j_v: 3, mult: 1, m_h: 1, m_v: 1 },
    Table1Row { codon: "GCU", vmc: AminoAcid::Ala, j_h: 1, j_v: 3, mult: 1, m_h: 1, m_v: 1 },
    Table1Row { codon: "ACU", vmc: AminoAcid::Thr, j_h: 1, j_v: 3, mult: 1, m_h: -1, m_v: 1 },
    Table1Row { codon: "GCG", vmc: AminoAcid::Ala, j_h: 3, j_v: 1, mult: 1, m_h: 3, m_v: -1 },
    Table1Row { codon: "ACG", vmc: AminoAcid::Thr, j_h: 3, j_v: 1, mult: 1, m_h: 1, m_v: -1 },
    Table1Row { codon: "GCA", vmc: AminoAcid::Ala, j_h: 1, j_v: 1, mult: 1, m_h: 1, m_v: -1 },
    Table1Row { codon: "ACA", vmc: AminoAcid::Thr, j_h: 1, j_v: 1, mult: 1, m_h: -1, m_v: -1 },
    Table1Row { codon: "GUC", vmc: AminoAcid::Val, j_h: 1, j_v: 3, mult: 2, m_h: 1, m_v: 1 },
    Table1Row { codon: "AUC", vmc: AminoAcid::Ile, j_h: 3, j_v: 3, mult: 1, m_h: -1, m_v: 1 },
    Table1Row { codon: "GUU", vmc: AminoAcid::Val, j_h: 1, j_v: 3, mult: 2, m_h: -1, m_v: 1 },
    Table1Row { codon: "AUU", vmc: AminoAcid::Ile, j_h: 3, j_v: 3, mult: 1, m_h: -3, m_v: 1 },
    Table1Row { codon: "GUG", vmc: AminoAcid::Val, j_h: 1, j_v: 1, mult: 3, m_h: 1, m_v: -1 },
    Table1Row { codon: "AUG", vmc: AminoAcid::Met, j_h: 3, j_v: 1, mult: 1, m_h: -1, m_v: -1 },
    Table1Row { codon: "GUA", vmc: AminoAcid::Val, j_h: 1, j_v: 1, mult: 3, m_h: -1, m_v: -1 },
    Table1Row { codon: "AUA", vmc: AminoAcid::Met, j_h: 3, j_v: 1, mult: 1, m_h: -3, m_v: -1 },
    Table1Row { codon: "GGC", vmc: AminoAcid::Gly, j_h: 3, j_v: 3, mult: 1, m_h: 3, m_v: -1 },
    Table1Row { codon: "AGC", vmc: AminoAcid::Ser, j_h: 3, j_v: 3, mult: 1, m_h: 1, m_v: -1 },
    Table1Row { codon: "GGU", vmc: AminoAcid::Gly, j_h: 1, j_v: 3, mult: 1, m_h: 1, m_v: -1 },
    Table1Row { codon: "AGU", vmc: AminoAcid::Ser, j_h: 1, j_v: 3, mult: 1, m_h: -1, m_v: -1 },
    Table1Row { codon: "GGG", vmc: AminoAcid::Gly, j_h: 3, j_v: 3, mult: 1, m_h: 3, m_v: -3 },
    Table1Row { codon: "AGG", vmc: AminoAcid::Ter, j_h: 3, j_v: 3, mult: 1, m_h: 1, m_v: -3 },
    Table1Row { codon: "GGA", vmc: AminoAcid::Gly, j_h: 1, j_v: 3, mult: 1, m_h: 1, m_v: -3 },
    Table1Row { codon: "AGA", vmc: AminoAcid::Ter, j_h: 1, j_v: 3, mult: 1, m_h: -1, m_v: -3 },
    Table1Row { codon: "GAC", vmc: AminoAcid::Asp, j_h: 1, j_v: 3, mult: 2, m_h: 1, m_v: -1 },
    Table1Row { codon: "AAC", vmc: AminoAcid::Asn, j_h: 3, j_v: 3, mult: 1, m_h: -1, m_v: -1 },
    Table1Row { codon: "GAU", vmc: AminoAcid::Asp, j_h: 1, j_v: 3, mult: 2, m_h: -1, m_v: -1 },
    Table1Row { codon: "AAU", vmc: AminoAcid::Asn, j_h: 3, j_v: 3, mult: 1, m_h: -3, m_v: -1 },
    Table1Row { codon: "GAG", vmc: AminoAcid::Glu, j_h: 1, j_v: 3, mult: 2, m_h: 1, m_v: -3 },
    Table1Row { codon: "AAG", vmc: AminoAcid::Lys, j_h: 3, j_v: 3, mult: 1, m_h: -1, m_v: -3 },
    Table1Row { codon: "GAA", vmc: AminoAcid::Glu, j_h: 1, j_v: 3, mult: 2, m_h: -1, m_v: -3 },
    Table1Row { codon: "AAA", vmc: AminoAcid::Lys, j_h: 3, j_v: 3, mult: 1, m_h: -3, m_v: -3 },
];

/// Reference dinucleotide table, in the same reading order.
pub const TABLE2: [Table2Row; 16] = [
    Table2Row { dinucleotide: "CC", j_h: 2, j_v: 2, m_h: 2, m_v: 2 },
    Table2Row { dinucleotide: "UC", j_h: 2, j_v: 2, m_h: 0, m_v: 2 },
    Table2Row { dinucleotide: "CG", j_h: 2, j_v: 0, m_h: 2, m_v: 0 },
    Table2Row { dinucleotide: "UG", j_h: 2, j_v: 0, m_h: 0, m_v: 0 },
    Table2Row { dinucleotide: "CU", j_h: 0, j_v: 2, m_h: 0, m_v: 2 },
    Table2Row { dinucleotide: "UU", j_h: 2, j_v: 2, m_h: -2, m_v: 2 },
    Table2Row { dinucleotide: "CA", j_h: 0, j_v: 0, m_h: 0, m_v: 0 },
    Table2Row { dinucleotide: "UA", j_h: 2, j_v: 0, m_h: -2, m_v: 0 },
    Table2Row { dinucleotide: "GC", j_h: 2, j_v: 2, m_h: 2, m_v: 0 },
    Table2Row { dinucleotide: "AC", j_h: 2, j_v: 2, m_h: 0, m_v: 0 },
    Table2Row { dinucleotide: "GG", j_h: 2, j_v: 2, m_h: 2, m_v: -2 },
    Table2Row { dinucleotide: "AG", j_h: 2, j_v: 2, m_h: 0, m_v: -2 },
    Table2Row { dinucleotide: "GU", j_h: 0, j_v: 2, m_h: 0, m_v: 0 },
    Table2Row { dinucleotide: "AU", j_h: 2, j_v: 2, m_h: -2, m_v: 0 },
    Table2Row { dinucleotide: "GA", j_h: 0, j_v: 2, m_h: 0, m_v: -2 },
    Table2Row { dinucleotide: "AA", j_h: 2, j_v: 2, m_h: -2, m_v: -2 },
];

/// A row of the exported codon table.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CodonRow {
    pub codon: Codon,
    pub jh: HalfInt,
    pub jv: HalfInt,
    pub mult: u8,
    pub m3h: HalfInt,
    pub m3v: HalfInt,
    pub vmc_aa: AminoAcid,
    pub suc_aa: AminoAcid,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DinucleotideRow {
    pub dinucleotide: Dinucleotide,
    pub jh: HalfInt,
    pub jv: HalfInt,
    pub mult: u8,
    pub m3h: HalfInt,
    pub m3v: HalfInt,
}

/// The computed codon table in reference row order.
pub fn codon_rows() -> Vec<CodonRow> {
    let vmc = GeneticCodeTable::vmc();
    let suc = GeneticCodeTable::suc();
    Codon::table_order()
        .map(|codon| {
            let s = codon.state();
            CodonRow {
                codon,
                jh: s.irrep.j_h,
                jv: s.irrep.j_v,
                mult: s.irrep.mult,
                m3h: s.m_h,
                m3v: s.m_v,
                vmc_aa: vmc.get(codon),
                suc_aa: suc.get(codon),
            }
        })
        .collect()
}

pub fn dinucleotide_rows() -> Vec<DinucleotideRow> {
    Dinucleotide::table_order()
        .map(|dinucleotide| {
            let s = dinucleotide.state();
            DinucleotideRow {
                dinucleotide,
                jh: s.irrep.j_h,
                jv: s.irrep.j_v,
                mult: s.irrep.mult,
                m3h: s.m_h,
                m3v: s.m_v,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::{tensor_pair_with, TensorConvention};
    use std::collections::BTreeSet;

    fn codon(s: &str) -> Codon {
        s.parse().unwrap()
    }

    fn dinucleotides(list: &str) -> BTreeSet<Dinucleotide> {
        list.split_whitespace().map(|d| d.parse().unwrap()).collect()
    }

    #[test]
    fn label_map() {
        let h = HalfInt::HALF;
        assert_eq!(Nucleotide::C.weights(), (h, h));
        assert_eq!(Nucleotide::U.weights(), (-h, h));
        assert_eq!(Nucleotide::G.weights(), (h, -h));
        assert_eq!(Nucleotide::A.weights(), (-h, -h));
    }

    #[test]
    fn classes_partition_the_alphabet() {
        for n in Nucleotide::ALL {
            assert!(NucleotideClass::Any.contains(n));
            assert_ne!(NucleotideClass::Pyrimidine.contains(n), NucleotideClass::Purine.contains(n));
            assert!(n.class().contains(n));
        }
    }

    #[test]
    fn codon_index_round_trip() {
        let all: Vec<Codon> = Codon::all().collect();
        assert_eq!(all.len(), 64);
        assert_eq!(all.iter().collect::<BTreeSet<_>>().len(), 64);
        for (i, c) in all.iter().enumerate() {
            assert_eq!(c.index(), i);
            assert_eq!(c.to_string().parse::<Codon>().unwrap(), *c);
        }
        let table: BTreeSet<Codon> = Codon::table_order().collect();
        assert_eq!(table.len(), 64);
    }

    #[test]
    fn codon_parse_errors() {
        assert!("CC".parse::<Codon>().is_err());
        assert!("CCX".parse::<Codon>().is_err());
        assert_eq!("tta".parse::<Codon>().unwrap(), codon("UUA"));
    }

    #[test]
    fn examples_from_the_table() {
        assert_eq!(codon("CCC").state().to_string(), "(3/2, 3/2)^1; 3/2, 3/2");
        assert_eq!(codon("CUG").state().to_string(), "(1/2, 1/2)^3; 1/2, 1/2");
        assert_eq!(codon("AAA").state().to_string(), "(3/2, 3/2)^1; -3/2, -3/2");
        let ca: Dinucleotide = "CA".parse().unwrap();
        assert_eq!(ca.state().to_string(), "(0, 0)^1; 0, 0");
        let ga: Dinucleotide = "GA".parse().unwrap();
        assert_eq!(ga.state().to_string(), "(0, 1)^1; 0, -1");
        let uu: Dinucleotide = "UU".parse().unwrap();
        assert_eq!(uu.state().to_string(), "(1, 1)^1; -1, 1");
    }

    #[test]
    fn computed_codon_states_match_reference_table() {
        for row in TABLE1 {
            let c = codon(row.codon);
            assert_eq!(c.state(), row.state(), "codon {}", row.codon);
        }
    }

    #[test]
    fn computed_dinucleotide_states_match_reference_table() {
        for row in TABLE2 {
            let d: Dinucleotide = row.dinucleotide.parse().unwrap();
            assert_eq!(d.state(), row.state(), "dinucleotide {}", row.dinucleotide);
        }
    }

    #[test]
    fn anti_convention_does_not_reproduce_dinucleotides() {
        let mismatches = TABLE2
            .iter()
            .filter(|row| {
                let d: Dinucleotide = row.dinucleotide.parse().unwrap();
                let [a, b] = d.0;
                let h = tensor_pair_with(TensorConvention::AntiKashiwara, a.weight().h, b.weight().h);
                h.j().twice() != row.j_h
            })
            .count();
        assert!(mismatches > 0);
    }

    #[test]
    fn weights_add_up() {
        for c in Codon::all() {
            let s = c.state();
            let (h, v) = c.0.iter().fold((HalfInt::ZERO, HalfInt::ZERO), |(h, v), n| {
                let (dh, dv) = n.weights();
                (h + dh, v + dv)
            });
            assert_eq!((s.m_h, s.m_v), (h, v), "{c}");
        }
    }

    #[test]
    fn nine_irreps_of_the_right_dimensions() {
        let mut irreps = std::collections::BTreeMap::new();
        for c in Codon::all() {
            let i = c.state().irrep;
            *irreps.entry((i.j_h, i.j_v, i.mult)).or_insert(0usize) += 1;
        }
        assert_eq!(irreps.len(), 9);
        for ((jh, jv, _), count) in &irreps {
            assert_eq!(*count as i32, (jh.twice() + 1) * (jv.twice() + 1));
        }
        let mut dims: Vec<usize> = irreps.values().copied().collect();
        dims.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(dims, vec![16, 8, 8, 8, 8, 4, 4, 4, 4]);
    }

    #[test]
    fn dinucleotide_dimensions() {
        let mut irreps = BTreeSet::new();
        let mut total = 0;
        for d in Dinucleotide::all() {
            let i = d.state().irrep;
            if irreps.insert((i.j_h, i.j_v, i.mult)) {
                total += (i.j_h.twice() + 1) * (i.j_v.twice() + 1);
            }
        }
        assert_eq!(total, 16);
    }

    #[test]
    fn rank_two_dinucleotides() {
        let rank_two: BTreeSet<Dinucleotide> =
            Dinucleotide::all().filter(|d| d.predicates().rank_two()).collect();
        assert_eq!(rank_two, dinucleotides("CA GA CG UG UA UU AU AA GG AG"));
        let cg: Dinucleotide = "CG".parse().unwrap();
        assert!(cg.predicates().jv_zero);
        let cc: Dinucleotide = "CC".parse().unwrap();
        assert!(!cc.predicates().rank_two());
    }

    #[test]
    fn horizontal_lowest_weight_dinucleotides() {
        let set: BTreeSet<Dinucleotide> =
            Dinucleotide::all().filter(|d| d.predicates().lowest_weight_h_nonzero_jh).collect();
        assert_eq!(set, dinucleotides("UU UA AU AA"));
        let alpha: BTreeSet<Dinucleotide> =
            Dinucleotide::all().filter(|d| d.predicates().alpha_two()).collect();
        assert_eq!(alpha, dinucleotides("UU AU AA"));
    }

    #[test]
    fn dinucleotides_fixed_by_the_vertical_vector() {
        let set: BTreeSet<Dinucleotide> =
            Dinucleotide::all().filter(|d| d.predicates().unchanged_by_vertical_vector_op).collect();
        assert_eq!(set, dinucleotides("CU GU CC UC UU GC AC AU"));
    }

    #[test]
    fn reference_codes() {
        let vmc = GeneticCodeTable::vmc();
        let stops: Vec<Codon> = Codon::all().filter(|c| vmc.get(*c).is_stop()).collect();
        assert_eq!(stops, vec![codon("UAG"), codon("UAA"), codon("AGG"), codon("AGA")]);
        let aas: BTreeSet<AminoAcid> = Codon::all().map(|c| vmc.get(c)).filter(|a| !a.is_stop()).collect();
        assert_eq!(aas.len(), 20);

        let suc = GeneticCodeTable::suc();
        let differing: Vec<Codon> = Codon::all().filter(|c| vmc.get(*c) != suc.get(*c)).collect();
        assert_eq!(differing.len(), 4);
        assert_eq!(suc.get(codon("UGA")), AminoAcid::Ter);
        assert_eq!(suc.get(codon("AUA")), AminoAcid::Ile);
        assert_eq!(suc.get(codon("AGA")), AminoAcid::Arg);
        assert_eq!(suc.get(codon("AGG")), AminoAcid::Arg);
    }

    #[test]
    fn synonym_group_shapes() {
        // Leu and Ser sextets, six quartets, twelve doublets.
        let mut sizes: Vec<usize> = GeneticCodeTable::vmc()
            .synonym_groups()
            .into_iter()
            .filter(|(aa, _)| !aa.is_stop())
            .map(|(_, c)| c.len())
            .collect();
        sizes.sort_unstable();
        let count = |n| sizes.iter().filter(|&&s| s == n).count();
        assert_eq!((count(6), count(4), count(2)), (2, 6, 12));
    }

    #[test]
    fn patterns() {
        assert_eq!(expand_pattern("CUN").unwrap().len(), 4);
        assert_eq!(expand_pattern("AGR").unwrap(), vec![codon("AGG"), codon("AGA")]);
        assert_eq!(expand_pattern("NNN").unwrap().len(), 64);
        assert!(expand_pattern("AG").is_err());
        assert!(expand_pattern("AGX").is_err());
    }

    #[test]
    fn exported_rows_round_trip_through_json() {
        let rows = codon_rows();
        assert_eq!(rows.len(), 64);
        let text = serde_json::to_string(&rows).unwrap();
        let back: Vec<CodonRow> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rows);
        let drows = dinucleotide_rows();
        let back: Vec<DinucleotideRow> =
            serde_json::from_str(&serde_json::to_string(&drows).unwrap()).unwrap();
        assert_eq!(back, drows);
    }
}
