//! Exact sl(2) crystal arithmetic.
//!
//! Every angular-momentum-like quantity is a [`HalfInt`], stored as twice its
//! value. An sl(2) crystal state is a pair `(j, m)`; tensor products are
//! decomposed with the signature rule, so `tensor_pair` tells which connected
//! component of `B(j1) ⊗ B(j2)` a pair of states lands in.
//!
//! The doubled algebra sl_H(2) ⊕ sl_V(2) is handled factor by factor: a
//! [`DoubletWeight`] carries one `(j, m)` per factor and products fold each
//! factor independently.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Error;

/// An exact half-integer, stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);
    pub const THREE_HALVES: HalfInt = HalfInt(3);
    pub const TWO: HalfInt = HalfInt(4);

    pub const fn from_twice(twice: i32) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(value: i32) -> Self {
        HalfInt(2 * value)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub const fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    pub const fn is_negative(self) -> bool {
        self.0 < 0
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Parse(format!("not a half-integer: {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            Some((num, "2")) => {
                let num: i32 = num.parse().map_err(|_| bad())?;
                if num % 2 == 0 {
                    return Err(bad());
                }
                Ok(HalfInt(num))
            }
            Some(_) => Err(bad()),
            None => {
                let v: i32 = s.parse().map_err(|_| bad())?;
                Ok(HalfInt::from_int(v))
            }
        }
    }
}

// Serialized as the exact string form ("3/2", "-1/2", "1") so JSON output
// never goes through floating point.
impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Which factor the signature rule treats as "first" when pairing brackets.
///
/// Under [`TensorConvention::Kashiwara`], an unmatched raising of the left
/// factor pairs with a lowering of the right factor; the anti convention is
/// the same rule applied with the factors swapped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorConvention {
    Kashiwara,
    AntiKashiwara,
}

/// The convention that reproduces the reference codon and dinucleotide
/// tables. Fixed by exhaustive comparison (see the `codon` tests); the
/// anti convention already fails on the dinucleotide CU.
pub const TENSOR_CONVENTION: TensorConvention = TensorConvention::Kashiwara;

/// A state `(j, m)` of the sl(2) crystal `B(j)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Sl2State {
    j: HalfInt,
    m: HalfInt,
}

impl Sl2State {
    pub fn new(j: HalfInt, m: HalfInt) -> Result<Self, Error> {
        if j.is_negative() || m.abs() > j || !(j - m).is_integer() {
            return Err(Error::InvalidState { j, m });
        }
        Ok(Sl2State { j, m })
    }

    /// Highest weight state `(j, j)`.
    pub fn highest(j: HalfInt) -> Result<Self, Error> {
        Sl2State::new(j, j)
    }

    pub fn j(self) -> HalfInt {
        self.j
    }

    pub fn m(self) -> HalfInt {
        self.m
    }

    /// Number of times the raising operator acts before annihilating the state.
    pub fn epsilon(self) -> i32 {
        (self.j - self.m).twice() / 2
    }

    /// Number of times the lowering operator acts before annihilating the state.
    pub fn phi(self) -> i32 {
        (self.j + self.m).twice() / 2
    }

    pub fn is_lowest(self) -> bool {
        self.m == -self.j
    }

    pub fn is_highest(self) -> bool {
        self.m == self.j
    }
}

/// Connected component `J` of `B(j1) ⊗ B(j2)` containing `left ⊗ right`,
/// together with the total weight `M = m1 + m2`.
pub fn tensor_pair(left: Sl2State, right: Sl2State) -> Sl2State {
    tensor_pair_with(TENSOR_CONVENTION, left, right)
}

pub fn tensor_pair_with(convention: TensorConvention, left: Sl2State, right: Sl2State) -> Sl2State {
    let (a, b) = match convention {
        TensorConvention::Kashiwara => (left, right),
        TensorConvention::AntiKashiwara => (right, left),
    };
    let epsilon = a.epsilon().max(a.epsilon() + b.epsilon() - a.phi());
    let phi = b.phi().max(a.phi() + b.phi() - b.epsilon());
    // For a crystal state, epsilon + phi = 2J.
    Sl2State { j: HalfInt::from_twice(epsilon + phi), m: left.m + right.m }
}

/// A weight of the doubled algebra: one sl(2) state per factor.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct DoubletWeight {
    pub h: Sl2State,
    pub v: Sl2State,
}

impl DoubletWeight {
    /// A state of the fundamental irrep (1/2, 1/2) with the given weights.
    pub fn fundamental(m_h: HalfInt, m_v: HalfInt) -> Result<Self, Error> {
        Ok(DoubletWeight { h: Sl2State::new(HalfInt::HALF, m_h)?, v: Sl2State::new(HalfInt::HALF, m_v)? })
    }

    pub fn is_fundamental(&self) -> bool {
        self.h.j == HalfInt::HALF && self.v.j == HalfInt::HALF
    }
}

/// `(J_H, J_V)` plus which copy of that irrep, counted from 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct IrrepLabel {
    pub j_h: HalfInt,
    pub j_v: HalfInt,
    pub mult: u8,
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})^{}", self.j_h, self.j_v, self.mult)
    }
}

/// The quadruple `(J_H, J_V, M_H, M_V)` without any copy index.
///
/// This is what the selection rule compares; a virtual state is nothing
/// more than one of these.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Labels {
    pub h: Sl2State,
    pub v: Sl2State,
}

impl Labels {
    pub fn j_h(&self) -> HalfInt {
        self.h.j
    }
    pub fn j_v(&self) -> HalfInt {
        self.v.j
    }
    pub fn m_h(&self) -> HalfInt {
        self.h.m
    }
    pub fn m_v(&self) -> HalfInt {
        self.v.m
    }
}

impl fmt::Display for Labels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.h.j, self.v.j, self.h.m, self.v.m)
    }
}

/// A state of an iterated product: irrep copy plus weights.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct CrystalState {
    pub irrep: IrrepLabel,
    pub m_h: HalfInt,
    pub m_v: HalfInt,
}

impl CrystalState {
    pub fn labels(&self) -> Labels {
        Labels {
            h: Sl2State { j: self.irrep.j_h, m: self.m_h },
            v: Sl2State { j: self.irrep.j_v, m: self.m_v },
        }
    }
}

impl fmt::Display for CrystalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; {}, {}", self.irrep, self.m_h, self.m_v)
    }
}

/// Sequence of intermediate `J` values of a left-associated fold
/// `((b1 ⊗ b2) ⊗ b3) ⊗ …`. It is constant on a connected component, so it
/// names the component uniquely.
type ComponentPath = Vec<i32>;

fn fold_factor(factors: impl IntoIterator<Item = Sl2State>) -> Option<(Sl2State, ComponentPath)> {
    let mut iter = factors.into_iter();
    let mut acc = iter.next()?;
    let mut path = vec![acc.j.twice()];
    for next in iter {
        acc = tensor_pair(acc, next);
        path.push(acc.j.twice());
    }
    Some((acc, path))
}

/// Component paths of `B(1/2)^{⊗n}` ending in `J = j_twice/2`, in order of
/// first appearance when the product basis is enumerated lexicographically
/// with `+1/2` before `-1/2`.
fn fundamental_copies(n: usize, j_twice: i32) -> Vec<ComponentPath> {
    let mut seen: Vec<ComponentPath> = Vec::new();
    for code in 0u32..(1 << n) {
        let factors = (0..n).map(|i| {
            let minus = code >> (n - 1 - i) & 1 == 1;
            Sl2State { j: HalfInt::HALF, m: if minus { -HalfInt::HALF } else { HalfInt::HALF } }
        });
        let (state, path) = fold_factor(factors).expect("n > 0");
        if state.j.twice() == j_twice && !seen.contains(&path) {
            seen.push(path);
        }
    }
    seen
}

/// Folds an ordered list of fundamental doublet weights into the state of
/// the iterated tensor product.
///
/// The copy index enumerates `(H-copy, V-copy)` lexicographically, each
/// per-factor copy being numbered by first appearance (see
/// `fundamental_copies`).
pub fn product_state(factors: &[DoubletWeight]) -> Result<CrystalState, Error> {
    if factors.is_empty() {
        return Err(Error::EmptyProduct);
    }
    if let Some(bad) = factors.iter().find(|w| !w.is_fundamental()) {
        return Err(Error::InvalidState { j: bad.h.j, m: bad.h.m });
    }
    let (h, h_path) = fold_factor(factors.iter().map(|w| w.h)).expect("non-empty");
    let (v, v_path) = fold_factor(factors.iter().map(|w| w.v)).expect("non-empty");
    let n = factors.len();
    let h_copies = fundamental_copies(n, h.j.twice());
    let v_copies = fundamental_copies(n, v.j.twice());
    let index = |copies: &[ComponentPath], path: &ComponentPath| {
        copies.iter().position(|p| p == path).expect("path enumerated")
    };
    let mult = index(&h_copies, &h_path) * v_copies.len() + index(&v_copies, &v_path) + 1;
    Ok(CrystalState {
        irrep: IrrepLabel { j_h: h.j, j_v: v.j, mult: u8::try_from(mult).map_err(|_| Error::EmptyProduct)? },
        m_h: h.m,
        m_v: v.m,
    })
}

/// Ordering of irrep labels: larger `J_H`, then larger `J_V`, then copy index.
pub fn irrep_order(a: &IrrepLabel, b: &IrrepLabel) -> Ordering {
    b.j_h.cmp(&a.j_h).then(b.j_v.cmp(&a.j_v)).then(a.mult.cmp(&b.mult))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn st(j2: i32, m2: i32) -> Sl2State {
        Sl2State::new(HalfInt::from_twice(j2), HalfInt::from_twice(m2)).unwrap()
    }

    #[test]
    fn half_int_display_and_parse() {
        for (twice, text) in [(3, "3/2"), (-1, "-1/2"), (2, "1"), (0, "0"), (-4, "-2")] {
            let h = HalfInt::from_twice(twice);
            assert_eq!(h.to_string(), text);
            assert_eq!(text.parse::<HalfInt>().unwrap(), h);
        }
        assert!("2/2".parse::<HalfInt>().is_err());
        assert!("1/3".parse::<HalfInt>().is_err());
        assert!("x".parse::<HalfInt>().is_err());
    }

    #[test]
    fn invalid_states_rejected() {
        assert!(Sl2State::new(HalfInt::HALF, HalfInt::THREE_HALVES).is_err());
        assert!(Sl2State::new(HalfInt::ONE, HalfInt::HALF).is_err());
        assert!(Sl2State::new(-HalfInt::ONE, HalfInt::ZERO).is_err());
    }

    #[test]
    fn highest_pair_heads_largest_component() {
        let r = tensor_pair(st(1, 1), st(1, 1));
        assert_eq!((r.j(), r.m()), (HalfInt::ONE, HalfInt::ONE));
    }

    #[test]
    fn order_matters() {
        // H-parts of C ⊗ U and of U ⊗ C.
        let cu = tensor_pair(st(1, 1), st(1, -1));
        let uc = tensor_pair(st(1, -1), st(1, 1));
        assert_eq!((cu.j(), cu.m()), (HalfInt::ZERO, HalfInt::ZERO));
        assert_eq!((uc.j(), uc.m()), (HalfInt::ONE, HalfInt::ZERO));
    }

    #[test]
    fn anti_convention_swaps_the_witness() {
        let cu = tensor_pair_with(TensorConvention::AntiKashiwara, st(1, 1), st(1, -1));
        assert_eq!(cu.j(), HalfInt::ONE);
    }

    #[test]
    fn single_factor_is_fundamental() {
        let c = DoubletWeight::fundamental(HalfInt::HALF, HalfInt::HALF).unwrap();
        let s = product_state(&[c]).unwrap();
        assert_eq!(s.irrep, IrrepLabel { j_h: HalfInt::HALF, j_v: HalfInt::HALF, mult: 1 });
        assert_eq!((s.m_h, s.m_v), (HalfInt::HALF, HalfInt::HALF));
    }

    #[test]
    fn empty_and_non_fundamental_products_rejected() {
        assert!(matches!(product_state(&[]), Err(Error::EmptyProduct)));
        let w = DoubletWeight { h: st(2, 0), v: st(1, 1) };
        assert!(product_state(&[w]).is_err());
    }

    #[test]
    fn fundamental_copy_counts() {
        assert_eq!(fundamental_copies(3, 3).len(), 1);
        assert_eq!(fundamental_copies(3, 1).len(), 2);
        assert_eq!(fundamental_copies(2, 2).len(), 1);
        assert_eq!(fundamental_copies(2, 0).len(), 1);
        assert_eq!(fundamental_copies(4, 0).len(), 2);
        assert_eq!(fundamental_copies(4, 2).len(), 3);
    }

    fn any_state() -> impl Strategy<Value = Sl2State> {
        (0i32..7).prop_flat_map(|j2| (Just(j2), 0..=j2)).prop_map(|(j2, k)| st(j2, j2 - 2 * k))
    }

    proptest! {
        #[test]
        fn weight_is_additive(a in any_state(), b in any_state()) {
            let r = tensor_pair(a, b);
            prop_assert_eq!(r.m(), a.m() + b.m());
            prop_assert!(Sl2State::new(r.j(), r.m()).is_ok());
        }

        /// Each J between |j1 - j2| and j1 + j2 occurs exactly once, so it
        /// collects exactly 2J + 1 of the product states.
        #[test]
        fn clebsch_gordan_series(j1 in 0i32..7, j2 in 0i32..7) {
            let mut counts = std::collections::BTreeMap::new();
            for k1 in 0..=j1 {
                for k2 in 0..=j2 {
                    let r = tensor_pair(st(j1, j1 - 2 * k1), st(j2, j2 - 2 * k2));
                    *counts.entry(r.j().twice()).or_insert(0) += 1;
                }
            }
            let expected: std::collections::BTreeMap<i32, i32> =
                ((j1 - j2).abs()..=j1 + j2).step_by(2).map(|jj| (jj, jj + 1)).collect();
            prop_assert_eq!(counts, expected);
        }

        #[test]
        fn deterministic(a in any_state(), b in any_state()) {
            prop_assert_eq!(tensor_pair(a, b), tensor_pair(a, b));
        }
    }
}
