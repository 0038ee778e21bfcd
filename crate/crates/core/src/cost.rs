//! Cost vectors and the two dominance relations used throughout the search.
//!
//! Component 0 is the primary cost; components `1..k` are resources. All
//! arithmetic saturates at [`INFINITY`], which is strictly greater than any
//! finite path cost.

use std::fmt;
use std::ops::Index;

use smallvec::SmallVec;

use crate::error::RcspError;

/// Scalar type of every cost component.
pub type Cost = u64;

/// Sentinel for "no bound known" / "unreachable".
pub const INFINITY: Cost = Cost::MAX;

/// A fixed-length vector of non-negative integer costs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CostVector(SmallVec<[Cost; 4]>);

impl CostVector {
    pub fn zero(k: usize) -> Self {
        CostVector(SmallVec::from_elem(0, k))
    }

    pub fn infinite(k: usize) -> Self {
        CostVector(SmallVec::from_elem(INFINITY, k))
    }

    pub fn from_slice(values: &[Cost]) -> Self {
        CostVector(SmallVec::from_slice(values))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn as_slice(&self) -> &[Cost] {
        &self.0
    }

    #[inline]
    pub fn primary(&self) -> Cost {
        self.0[0]
    }

    /// The resource components, i.e. everything but the primary cost.
    #[inline]
    pub fn resources(&self) -> &[Cost] {
        &self.0[1..]
    }

    pub fn set(&mut self, index: usize, value: Cost) {
        self.0[index] = value;
    }

    /// `self ⪯ other`: every component is less than or equal.
    #[inline]
    pub fn dominates(&self, other: &CostVector) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `self ⪯Tr other`: dominance on the resource components only.
    #[inline]
    pub fn truncated_dominates(&self, other: &CostVector) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0[1..]
            .iter()
            .zip(other.0[1..].iter())
            .all(|(a, b)| a <= b)
    }

    /// Checked form of [`CostVector::dominates`] for vectors of unknown provenance.
    pub fn try_dominates(&self, other: &CostVector) -> Result<bool, RcspError> {
        self.check_len(other)?;
        Ok(self.dominates(other))
    }

    pub fn try_truncated_dominates(&self, other: &CostVector) -> Result<bool, RcspError> {
        self.check_len(other)?;
        Ok(self.truncated_dominates(other))
    }

    pub fn try_add(&self, other: &CostVector) -> Result<CostVector, RcspError> {
        self.check_len(other)?;
        Ok(self.add(other))
    }

    /// Component-wise saturating sum.
    #[inline]
    pub fn add(&self, other: &CostVector) -> CostVector {
        self.add_slice(other.as_slice())
    }

    #[inline]
    pub fn add_slice(&self, other: &[Cost]) -> CostVector {
        debug_assert_eq!(self.len(), other.len());
        let mut out = self.clone();
        for (a, b) in out.0.iter_mut().zip(other) {
            *a = a.saturating_add(*b);
        }
        out
    }

    /// Lexicographic comparison of the resource components.
    #[inline]
    pub fn cmp_resources(&self, other: &CostVector) -> std::cmp::Ordering {
        self.0[1..].cmp(&other.0[1..])
    }

    /// The vector with its last component dropped.
    pub fn truncate_last(&self) -> CostVector {
        CostVector(SmallVec::from_slice(&self.0[..self.0.len() - 1]))
    }

    fn check_len(&self, other: &CostVector) -> Result<(), RcspError> {
        if self.len() == other.len() {
            Ok(())
        } else {
            Err(RcspError::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            })
        }
    }
}

impl Index<usize> for CostVector {
    type Output = Cost;

    #[inline]
    fn index(&self, index: usize) -> &Cost {
        &self.0[index]
    }
}

impl From<Vec<Cost>> for CostVector {
    fn from(values: Vec<Cost>) -> Self {
        CostVector(SmallVec::from_vec(values))
    }
}

impl<const N: usize> From<[Cost; N]> for CostVector {
    fn from(values: [Cost; N]) -> Self {
        CostVector::from_slice(&values)
    }
}

impl fmt::Debug for CostVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CostVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if *c == INFINITY {
                write!(f, "inf")?;
            } else {
                write!(f, "{c}")?;
            }
        }
        write!(f, ")")
    }
}
