//! Normalization: split each summand into a constant, a modular part, and a
//! nonnegative remainder that vanishes on ∅ and on its full support.

use crate::error::{Error, Result};
use crate::oracle::{SubmodularOracle, SUBMODULARITY_CHECK_LIMIT};
use crate::penalty::PenaltyFamily;
use crate::rational::{int, Rat};

/// F(A) = constant_offset + Σ_{u∈A} total_shift_u + Σ_i oracles_i(A), where
/// every oracle is ≥ 0 and zero on ∅ and its full support. Penalty centers are
/// shifted so the modular part is absorbed: minimizing the shifted objective
/// over the residual oracles is equivalent to the original problem.
#[derive(Debug, Clone)]
pub struct NormalizedInstance {
    pub n: usize,
    pub oracles: Vec<SubmodularOracle>,
    /// support-aligned modular part of each summand
    pub shift_vectors: Vec<Vec<i64>>,
    /// dense sum of the shift vectors
    pub total_shift: Vec<i64>,
    pub constant_offset: i64,
    /// original penalties with centers a_u − W_u/c_u
    pub penalties: PenaltyFamily,
}

impl NormalizedInstance {
    /// Σ_i max_S F̄̄_i(S): bounds the range of the combined function.
    pub fn range_bound(&self) -> i64 {
        self.oracles.iter().map(|f| f.f_max()).sum()
    }

    /// Σ_i F̄̄_i(A) for a dense 0/1 mask over the ground set.
    pub fn evaluate_dense_mask(&self, mask: u32) -> i64 {
        self.oracles
            .iter()
            .map(|f| {
                let mut local = 0u32;
                for (pos, &id) in f.support().iter().enumerate() {
                    if mask >> (id - 1) & 1 == 1 {
                        local |= 1 << pos;
                    }
                }
                f.evaluate_mask(local)
            })
            .sum()
    }
}

pub fn normalize_instance(
    n: usize,
    oracles: &[SubmodularOracle],
    penalties: &PenaltyFamily,
) -> Result<NormalizedInstance> {
    if penalties.len() != n {
        return Err(Error::InvalidPenalty(format!(
            "ground set has {n} elements but {} penalties given",
            penalties.len()
        )));
    }
    let mut total_shift = vec![0i64; n];
    let mut constant_offset = 0i64;
    let mut normalized = Vec::with_capacity(oracles.len());
    let mut shift_vectors = Vec::with_capacity(oracles.len());

    for (idx, f) in oracles.iter().enumerate() {
        for &id in f.support() {
            if id > n {
                return Err(Error::ElementOutOfRange { id, n });
            }
        }
        if f.support().len() <= SUBMODULARITY_CHECK_LIMIT && !f.is_submodular_bruteforce()? {
            return Err(Error::NotSubmodular(format!(
                "summand {idx} violates the exchange inequality"
            )));
        }
        let k = f.support().len();
        let at_empty = f.evaluate_mask(0);
        constant_offset += at_empty;
        let values: Vec<i64> = (0..1u64 << k)
            .map(|m| f.evaluate_mask(m as u32) - at_empty)
            .collect();
        let bar = SubmodularOracle::table(f.support().to_vec(), values)?;

        // modular part: marginals along the id-order chain
        let mut w = Vec::with_capacity(k);
        let mut prev = 0i64;
        for pos in 0..k {
            let cur = bar.evaluate_mask((1u32 << (pos + 1)) - 1);
            w.push(cur - prev);
            prev = cur;
        }
        for (pos, &id) in f.support().iter().enumerate() {
            total_shift[id - 1] += w[pos];
        }
        let residual = SubmodularOracle::residual(bar, w.clone())?;
        debug_assert_eq!(residual.evaluate_mask(0), 0);
        debug_assert_eq!(residual.evaluate_mask(residual.full_mask()), 0);
        debug_assert!(
            k > SUBMODULARITY_CHECK_LIMIT || residual.f_min() >= 0,
            "residual must be nonnegative"
        );
        normalized.push(residual);
        shift_vectors.push(w);
    }

    let w_rat: Vec<Rat> = total_shift.iter().map(|&v| int(v)).collect();
    let shifted = penalties.shifted_by_linear(&w_rat);
    Ok(NormalizedInstance {
        n,
        oracles: normalized,
        shift_vectors,
        total_shift,
        constant_offset,
        penalties: shifted,
    })
}
