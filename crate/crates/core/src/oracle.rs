//! Integer-valued submodular set functions with declared supports.
//!
//! A function only reads its support: F(S) = F(S ∩ V_i). Subsets of the
//! support are packed into `u32` masks, bit k = k-th support element in
//! ascending id order.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Maximum support size for truth-table storage (2^20 values).
pub const TABLE_LIMIT: usize = 20;
/// Maximum support size for the exhaustive submodularity check.
pub const SUBMODULARITY_CHECK_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse(
                "ground set must have at least one element".into(),
            ));
        }
        Ok(GroundSet { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, id: usize) -> bool {
        id >= 1 && id <= self.n
    }

    pub fn check(&self, id: usize) -> Result<()> {
        if self.contains(id) {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange { id, n: self.n })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum OracleKind {
    Table {
        values: Vec<i64>,
    },
    /// weight · [∅ ≠ S ∩ V_i ≠ V_i]
    HyperedgeCut {
        weight: i64,
    },
    /// weight · [from ∈ S, to ∉ S]
    DirectedEdge {
        from_pos: usize,
        to_pos: usize,
        weight: i64,
    },
    /// base(S) − shift(S), shift aligned to the support.
    Residual {
        base: Box<SubmodularOracle>,
        shift: Vec<i64>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmodularOracle {
    support: Vec<usize>,
    kind: OracleKind,
}

fn checked_support(support: Vec<usize>) -> Result<Vec<usize>> {
    let mut s = support;
    s.sort_unstable();
    if s.first().is_some_and(|&id| id == 0) {
        return Err(Error::ElementOutOfRange { id: 0, n: 0 });
    }
    if s.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Parse("duplicate element in support".into()));
    }
    Ok(s)
}

impl SubmodularOracle {
    pub fn table(support: Vec<usize>, values: Vec<i64>) -> Result<Self> {
        let support = checked_support(support)?;
        if support.len() > TABLE_LIMIT {
            return Err(Error::SupportTooLarge {
                size: support.len(),
                limit: TABLE_LIMIT,
            });
        }
        if values.len() != 1usize << support.len() {
            return Err(Error::Parse(format!(
                "table needs {} values, got {}",
                1usize << support.len(),
                values.len()
            )));
        }
        Ok(SubmodularOracle {
            support,
            kind: OracleKind::Table { values },
        })
    }

    pub fn hyperedge_cut(support: Vec<usize>, weight: i64) -> Result<Self> {
        let support = checked_support(support)?;
        if weight < 0 {
            return Err(Error::NotSubmodular(
                "hyperedge cut weight must be >= 0".into(),
            ));
        }
        Ok(SubmodularOracle {
            support,
            kind: OracleKind::HyperedgeCut { weight },
        })
    }

    pub fn directed_edge(from: usize, to: usize, weight: i64) -> Result<Self> {
        if from == to {
            return Err(Error::Parse(
                "directed edge needs two distinct endpoints".into(),
            ));
        }
        if weight < 0 {
            return Err(Error::NotSubmodular(
                "directed edge weight must be >= 0".into(),
            ));
        }
        let support = checked_support(vec![from, to])?;
        let from_pos = support.iter().position(|&v| v == from).unwrap();
        let to_pos = support.iter().position(|&v| v == to).unwrap();
        Ok(SubmodularOracle {
            support,
            kind: OracleKind::DirectedEdge {
                from_pos,
                to_pos,
                weight,
            },
        })
    }

    /// F − shift as a set function; flattens nested residuals.
    pub fn residual(base: SubmodularOracle, shift: Vec<i64>) -> Result<Self> {
        if shift.len() != base.support.len() {
            return Err(Error::Parse(
                "residual shift length must match support".into(),
            ));
        }
        match base.kind {
            OracleKind::Residual {
                base: inner,
                shift: inner_shift,
            } => {
                let combined: Vec<i64> =
                    inner_shift.iter().zip(&shift).map(|(a, b)| a + b).collect();
                Ok(SubmodularOracle {
                    support: inner.support.clone(),
                    kind: OracleKind::Residual {
                        base: inner,
                        shift: combined,
                    },
                })
            }
            _ => Ok(SubmodularOracle {
                support: base.support.clone(),
                kind: OracleKind::Residual {
                    base: Box::new(base),
                    shift,
                },
            }),
        }
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn full_mask(&self) -> u32 {
        if self.support.is_empty() {
            0
        } else {
            (1u32 << self.support.len()) - 1
        }
    }

    /// Position of a global id within the support, if present.
    pub fn position(&self, id: usize) -> Option<usize> {
        self.support.binary_search(&id).ok()
    }

    pub fn mask_of(&self, s: &BTreeSet<usize>) -> u32 {
        let mut mask = 0u32;
        for (pos, &id) in self.support.iter().enumerate() {
            if s.contains(&id) {
                mask |= 1 << pos;
            }
        }
        mask
    }

    pub fn set_of(&self, mask: u32) -> BTreeSet<usize> {
        self.support
            .iter()
            .enumerate()
            .filter(|(pos, _)| mask >> pos & 1 == 1)
            .map(|(_, &id)| id)
            .collect()
    }

    pub fn evaluate(&self, s: &BTreeSet<usize>) -> i64 {
        self.evaluate_mask(self.mask_of(s))
    }

    pub fn evaluate_mask(&self, mask: u32) -> i64 {
        let mask = mask & self.full_mask();
        match &self.kind {
            OracleKind::Table { values } => values[mask as usize],
            OracleKind::HyperedgeCut { weight } => {
                if mask != 0 && mask != self.full_mask() {
                    *weight
                } else {
                    0
                }
            }
            OracleKind::DirectedEdge {
                from_pos,
                to_pos,
                weight,
            } => {
                if mask >> from_pos & 1 == 1 && mask >> to_pos & 1 == 0 {
                    *weight
                } else {
                    0
                }
            }
            OracleKind::Residual { base, shift } => {
                let mut v = base.evaluate_mask(mask);
                for (pos, sh) in shift.iter().enumerate() {
                    if mask >> pos & 1 == 1 {
                        v -= sh;
                    }
                }
                v
            }
        }
    }

    /// max_S F(S); the recorded F_max.
    pub fn f_max(&self) -> i64 {
        (0..=self.full_mask())
            .map(|m| self.evaluate_mask(m))
            .max()
            .unwrap_or(0)
    }

    pub fn f_min(&self) -> i64 {
        (0..=self.full_mask())
            .map(|m| self.evaluate_mask(m))
            .min()
            .unwrap_or(0)
    }

    /// Exhaustive marginal-decrease check: F(A∪u)+F(A∪v) ≥ F(A∪u∪v)+F(A)
    /// for all A and u,v ∉ A, equivalent to the pairwise definition.
    pub fn is_submodular_bruteforce(&self) -> Result<bool> {
        let k = self.support.len();
        if k > SUBMODULARITY_CHECK_LIMIT {
            return Err(Error::SupportTooLarge {
                size: k,
                limit: SUBMODULARITY_CHECK_LIMIT,
            });
        }
        for a in 0..=self.full_mask() {
            for u in 0..k {
                if a >> u & 1 == 1 {
                    continue;
                }
                for v in u + 1..k {
                    if a >> v & 1 == 1 {
                        continue;
                    }
                    let fu = self.evaluate_mask(a | 1 << u);
                    let fv = self.evaluate_mask(a | 1 << v);
                    let fuv = self.evaluate_mask(a | 1 << u | 1 << v);
                    let fa = self.evaluate_mask(a);
                    if fu + fv < fuv + fa {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Materialize as a truth table (used by normalization).
    pub fn to_table(&self) -> SubmodularOracle {
        let values: Vec<i64> = (0..=self.full_mask())
            .map(|m| self.evaluate_mask(m))
            .collect();
        SubmodularOracle {
            support: self.support.clone(),
            kind: OracleKind::Table { values },
        }
    }

    /// For serialization: the concrete kind.
    pub fn describe(&self) -> OracleDescription<'_> {
        match &self.kind {
            OracleKind::Table { values } => OracleDescription::Table { values },
            OracleKind::HyperedgeCut { weight } => {
                OracleDescription::HyperedgeCut { weight: *weight }
            }
            OracleKind::DirectedEdge {
                from_pos,
                to_pos,
                weight,
            } => OracleDescription::DirectedEdge {
                from: self.support[*from_pos],
                to: self.support[*to_pos],
                weight: *weight,
            },
            OracleKind::Residual { .. } => OracleDescription::Residual,
        }
    }
}

pub enum OracleDescription<'a> {
    Table { values: &'a [i64] },
    HyperedgeCut { weight: i64 },
    DirectedEdge { from: usize, to: usize, weight: i64 },
    Residual,
}
