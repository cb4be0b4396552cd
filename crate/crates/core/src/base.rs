//! Base-polytope primitives: greedy vertices, the Lovász extension, and the
//! brute-force minimizers used as reference oracles.

use std::collections::BTreeSet;

use num::Zero;

use crate::error::{Error, Result};
use crate::oracle::SubmodularOracle;
use crate::penalty::PenaltyFamily;
use crate::rational::{int, Rat};

pub const BRUTE_FORCE_LIMIT: usize = 20;

/// Support positions ordered by x descending, ties by ascending element id.
fn greedy_order(f: &SubmodularOracle, x: &[Rat]) -> Result<Vec<usize>> {
    let n = x.len();
    for &id in f.support() {
        if id > n {
            return Err(Error::ElementOutOfRange { id, n });
        }
    }
    let mut order: Vec<usize> = (0..f.support().len()).collect();
    // support is id-sorted, so a stable sort on x descending gives the id tiebreak
    order.sort_by(|&p, &q| x[f.support()[q] - 1].cmp(&x[f.support()[p] - 1]));
    Ok(order)
}

/// The vertex of B(F) maximizing ⟨x, w⟩, by telescoping along the greedy order.
/// Dense over the ground set (zero off the support); requires F(∅)=0.
pub fn greedy_base_vertex(f: &SubmodularOracle, x: &[Rat]) -> Result<Vec<i64>> {
    debug_assert_eq!(f.evaluate_mask(0), 0, "oracle must be normalized");
    let order = greedy_order(f, x)?;
    let mut w = vec![0i64; x.len()];
    let mut prefix = 0u32;
    let mut prev = 0i64;
    for pos in order {
        prefix |= 1 << pos;
        let cur = f.evaluate_mask(prefix);
        w[f.support()[pos] - 1] = cur - prev;
        prev = cur;
    }
    Ok(w)
}

/// f(x) = ⟨greedy_base_vertex(F, x), x⟩.
pub fn lovasz_extension(f: &SubmodularOracle, x: &[Rat]) -> Result<Rat> {
    let w = greedy_base_vertex(f, x)?;
    Ok(w.iter().zip(x).map(|(wi, xi)| int(*wi) * xi).sum())
}

/// Lovász extension of a sum Σ_i F_i: greedy decomposes across the terms.
pub fn lovasz_extension_sum(fs: &[SubmodularOracle], x: &[Rat]) -> Result<Rat> {
    let mut total = Rat::zero();
    for f in fs {
        total += lovasz_extension(f, x)?;
    }
    Ok(total)
}

/// Exhaustive membership test: y ∈ B(F), with y aligned to F's support order.
/// Checks y(S) ≤ F(S) for every S and y(V_i) = F(V_i).
pub fn in_base_polytope(f: &SubmodularOracle, y: &[i64]) -> bool {
    let k = f.support().len();
    assert_eq!(y.len(), k, "vector must be support-aligned");
    assert!(k <= BRUTE_FORCE_LIMIT);
    for mask in 0..(1u32 << k) {
        let mut sum = 0i64;
        for (pos, &yv) in y.iter().enumerate() {
            if mask & (1 << pos) != 0 {
                sum += yv;
            }
        }
        let fv = f.evaluate_mask(mask);
        if sum > fv || (mask == f.full_mask() && sum != fv) {
            return false;
        }
    }
    true
}

/// Minimize F(A) + w(A) over A ⊆ V_i with optional single-element forcing.
/// Ties: smallest value, then smallest cardinality, then lexicographically
/// smallest id sequence. Returns global element ids and the exact value.
pub fn minimize_with_linear(
    f: &SubmodularOracle,
    w: &[Rat],
    forced_in: Option<usize>,
    forced_out: Option<usize>,
) -> Result<(BTreeSet<usize>, Rat)> {
    if let (Some(a), Some(b)) = (forced_in, forced_out) {
        if a == b {
            return Err(Error::InfeasibleForcing(a));
        }
    }
    let find_pos = |id: Option<usize>| -> Result<Option<usize>> {
        match id {
            None => Ok(None),
            Some(id) => f
                .position(id)
                .map(Some)
                .ok_or(Error::ElementOutOfRange { id, n: w.len() }),
        }
    };
    let in_pos = find_pos(forced_in)?;
    let out_pos = find_pos(forced_out)?;
    for &id in f.support() {
        if id > w.len() {
            return Err(Error::ElementOutOfRange { id, n: w.len() });
        }
    }

    let mut best: Option<(Rat, u32)> = None;
    for mask in 0..=f.full_mask() {
        if in_pos.is_some_and(|p| mask >> p & 1 == 0) {
            continue;
        }
        if out_pos.is_some_and(|p| mask >> p & 1 == 1) {
            continue;
        }
        let mut value = int(f.evaluate_mask(mask));
        for (pos, &id) in f.support().iter().enumerate() {
            if mask >> pos & 1 == 1 {
                value += &w[id - 1];
            }
        }
        let better = match &best {
            None => true,
            Some((bv, bm)) => match value.cmp(bv) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Greater => false,
                std::cmp::Ordering::Equal => {
                    let (c, bc) = (mask.count_ones(), bm.count_ones());
                    c < bc || (c == bc && lex_smaller(f, mask, *bm))
                }
            },
        };
        if better {
            best = Some((value, mask));
        }
    }
    let (value, mask) = best.expect("mask 0 always feasible or forcing caught above");
    Ok((f.set_of(mask), value))
}

/// Is id-sequence of `a` lexicographically smaller than `b`'s (equal cardinality)?
fn lex_smaller(f: &SubmodularOracle, a: u32, b: u32) -> bool {
    let ids = |m: u32| {
        f.support()
            .iter()
            .enumerate()
            .filter_map(move |(p, &id)| (m >> p & 1 == 1).then_some(id))
    };
    ids(a).lt(ids(b))
}

/// Exhaustive minimizer of F_α(A) = Σ_i F_i(A) + Σ_{u∈A} ψ'_u(α) over all of 2^V.
/// With `minimal`, returns the unique inclusion-minimal minimizer (the
/// intersection of all minimizers, which the lattice property keeps optimal).
pub fn bruteforce_parametric_min(
    fs: &[SubmodularOracle],
    penalty: &PenaltyFamily,
    alpha: &Rat,
    minimal: bool,
) -> Result<(BTreeSet<usize>, Rat)> {
    let n = penalty.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::GroundSetTooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    for f in fs {
        for &id in f.support() {
            if id > n {
                return Err(Error::ElementOutOfRange { id, n });
            }
        }
    }
    let deriv: Vec<Rat> = (1..=n).map(|u| penalty.by_id(u).deriv(alpha)).collect();
    // per-function map from global mask bits to support positions
    let positions: Vec<Vec<(usize, usize)>> = fs
        .iter()
        .map(|f| {
            f.support()
                .iter()
                .enumerate()
                .map(|(pos, &id)| (id - 1, pos))
                .collect()
        })
        .collect();

    let value_of = |mask: u32| -> Rat {
        let mut v = Rat::zero();
        for (f, pos) in fs.iter().zip(&positions) {
            let mut local = 0u32;
            for &(bit, p) in pos {
                if mask >> bit & 1 == 1 {
                    local |= 1 << p;
                }
            }
            v += int(f.evaluate_mask(local));
        }
        for (bit, d) in deriv.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                v += d;
            }
        }
        v
    };

    let mut best_value: Option<Rat> = None;
    let mut first_argmin = 0u32;
    let mut intersection = (1u64 << n) as u64 - 1;
    for mask in 0..(1u32 << n) {
        let v = value_of(mask);
        match &best_value {
            Some(bv) if v > *bv => {}
            Some(bv) if v == *bv => intersection &= mask as u64,
            _ => {
                best_value = Some(v);
                first_argmin = mask;
                intersection = mask as u64;
            }
        }
    }
    let best_value = best_value.unwrap();
    let chosen = if minimal {
        let m = intersection as u32;
        debug_assert_eq!(
            value_of(m),
            best_value,
            "minimizer lattice closed under intersection"
        );
        m
    } else {
        first_argmin
    };
    let set: BTreeSet<usize> = (0..n)
        .filter(|b| chosen >> b & 1 == 1)
        .map(|b| b + 1)
        .collect();
    Ok((set, best_value))
}
