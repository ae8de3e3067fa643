//! Crystal tensor operators and the q→0 Wigner–Eckart selection rule.
//!
//! An operator component `τ^j_m` transforms like the crystal state `(j, m)`.
//! Acting on a state it lands in the component of `B(J) ⊗ B(j)` given by the
//! tensor product rule, state first and operator second. Two codons are
//! connected when that result carries exactly the target's label quadruple
//! `(J_H, J_V, M_H, M_V)`; the irrep copy index is never consulted.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::codon::Codon;
use crate::crystal::{tensor_pair, HalfInt, Labels, Sl2State};

/// One component of a crystal tensor operator on each sl(2) factor.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct CrystalTensorOp {
    pub rank_h: HalfInt,
    pub comp_h: HalfInt,
    pub rank_v: HalfInt,
    pub comp_v: HalfInt,
}

impl CrystalTensorOp {
    pub const fn new(rank_h: HalfInt, comp_h: HalfInt, rank_v: HalfInt, comp_v: HalfInt) -> Self {
        CrystalTensorOp { rank_h, comp_h, rank_v, comp_v }
    }

    /// Integer ranks and components, the only kind the error catalog uses.
    pub const fn integral(rank_h: i32, comp_h: i32, rank_v: i32, comp_v: i32) -> Self {
        CrystalTensorOp::new(
            HalfInt::from_int(rank_h),
            HalfInt::from_int(comp_h),
            HalfInt::from_int(rank_v),
            HalfInt::from_int(comp_v),
        )
    }

    fn factor(rank: HalfInt, comp: HalfInt) -> Option<Sl2State> {
        Sl2State::new(rank, comp).ok()
    }

    /// The operator vanishes when some component is not a valid weight of
    /// its rank, e.g. `|comp| > rank`.
    pub fn is_vanishing(&self) -> bool {
        self.factors().is_none()
    }

    pub fn factors(&self) -> Option<(Sl2State, Sl2State)> {
        Some((Self::factor(self.rank_h, self.comp_h)?, Self::factor(self.rank_v, self.comp_v)?))
    }
}

impl fmt::Display for CrystalTensorOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "τ^{}_H,{} ⊗ τ^{}_V,{}", self.rank_h, self.comp_h, self.rank_v, self.comp_v)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "outcome", content = "labels", rename_all = "lowercase")]
pub enum ConnectionResult {
    Vanishing,
    Labels(Labels),
}

impl ConnectionResult {
    pub fn labels(self) -> Option<Labels> {
        match self {
            ConnectionResult::Vanishing => None,
            ConnectionResult::Labels(l) => Some(l),
        }
    }
}

/// Acts with `op` on a label quadruple, which may be a virtual state.
pub fn apply_op(source: Labels, op: CrystalTensorOp) -> ConnectionResult {
    match op.factors() {
        None => ConnectionResult::Vanishing,
        Some((h, v)) => {
            ConnectionResult::Labels(Labels { h: tensor_pair(source.h, h), v: tensor_pair(source.v, v) })
        }
    }
}

pub fn connects(source: Codon, op: CrystalTensorOp, target: Codon) -> bool {
    apply_op(source.state().labels(), op).labels() == Some(target.state().labels())
}

/// Two-step action through the virtual state produced by `op_i`.
pub fn connects_sequential(
    source: Codon,
    op_i: CrystalTensorOp,
    op_ii: CrystalTensorOp,
    target: Codon,
) -> bool {
    virtual_path(source, op_i, op_ii).map(|(_, last)| last) == Some(target.state().labels())
}

/// The virtual state and the final labels of a two-step action, or `None`
/// when either step vanishes.
pub fn virtual_path(
    source: Codon,
    op_i: CrystalTensorOp,
    op_ii: CrystalTensorOp,
) -> Option<(Labels, Labels)> {
    let mid = apply_op(source.state().labels(), op_i).labels()?;
    let last = apply_op(mid, op_ii).labels()?;
    Some((mid, last))
}
