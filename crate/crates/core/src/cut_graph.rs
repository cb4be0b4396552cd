//! Directed-cut approximations of nonnegative normalized submodular functions,
//! within a factor |support|²/4, and their arcwise combination.

use std::collections::BTreeSet;

use num::Zero;

use crate::base::minimize_with_linear;
use crate::error::{Error, Result};
use crate::oracle::SubmodularOracle;
use crate::rational::{to_i64, Rat};

/// Arc-capacity matrix over a subset of the ground set. The cut function
/// c⁺(A) = Σ_{u∈A, v∉A} c_uv plays the graph-side stand-in for an oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutGraph {
    vertices: Vec<usize>,
    cap: Vec<i64>,
}

impl CutGraph {
    pub fn zero(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        let k = vertices.len();
        Self {
            vertices,
            cap: vec![0; k * k],
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    fn index(&self, id: usize) -> Option<usize> {
        self.vertices.binary_search(&id).ok()
    }

    pub fn capacity(&self, u: usize, v: usize) -> i64 {
        match (self.index(u), self.index(v)) {
            (Some(i), Some(j)) => self.cap[i * self.vertices.len() + j],
            _ => 0,
        }
    }

    pub fn add_capacity(&mut self, u: usize, v: usize, c: i64) {
        assert!(c >= 0 && u != v);
        let (i, j) = (self.index(u).unwrap(), self.index(v).unwrap());
        self.cap[i * self.vertices.len() + j] += c;
    }

    /// Σ_{u∈A, v∉A} c_uv, with A given by vertex positions.
    pub fn cut_value_mask(&self, mask: u64) -> i64 {
        let k = self.vertices.len();
        let mut total = 0;
        for i in 0..k {
            if mask >> i & 1 == 1 {
                for j in 0..k {
                    if mask >> j & 1 == 0 {
                        total += self.cap[i * k + j];
                    }
                }
            }
        }
        total
    }

    /// Same, with A as global element ids; ids outside the vertex set are inert.
    pub fn cut_value(&self, s: &BTreeSet<usize>) -> i64 {
        let mask = self
            .vertices
            .iter()
            .enumerate()
            .filter(|(_, id)| s.contains(id))
            .fold(0u64, |m, (i, _)| m | 1 << i);
        self.cut_value_mask(mask)
    }

    /// Cut values of all prefixes of a permutation of the vertex set, computed
    /// incrementally: adding v trades its outgoing arcs for the incoming ones
    /// already absorbed by the prefix.
    pub fn prefix_cut_values(&self, order: &[usize]) -> Result<Vec<i64>> {
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != self.vertices {
            return Err(Error::InvalidPermutation);
        }
        let k = self.vertices.len();
        let mut in_prefix = vec![false; k];
        let mut values = Vec::with_capacity(k);
        let mut cur = 0i64;
        for &id in order {
            let i = self.index(id).unwrap();
            for j in 0..k {
                if j != i {
                    if in_prefix[j] {
                        cur -= self.cap[j * k + i];
                    } else {
                        cur += self.cap[i * k + j];
                    }
                }
            }
            in_prefix[i] = true;
            values.push(cur);
            debug_assert_eq!(
                cur,
                self.cut_value_mask((0..k).filter(|&j| in_prefix[j]).fold(0, |m, j| m | 1 << j))
            );
        }
        Ok(values)
    }

    /// Positive-capacity arcs as (from id, to id, capacity).
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        let k = self.vertices.len();
        (0..k).flat_map(move |i| {
            (0..k).filter_map(move |j| {
                let c = self.cap[i * k + j];
                (c > 0).then(|| (self.vertices[i], self.vertices[j], c))
            })
        })
    }

    pub fn arc_count(&self) -> usize {
        self.cap.iter().filter(|&&c| c > 0).count()
    }

    pub fn total_capacity(&self) -> i64 {
        self.cap.iter().sum()
    }
}

/// Capacities c_uv = min{F(A) : u∈A, v∉A} for every ordered pair. Requires a
/// normalized nonnegative oracle; the resulting cut function then satisfies
/// F(A) ≤ c⁺(A) ≤ (k²/4)·F(A).
pub fn graph_approx_shifted(f: &SubmodularOracle) -> Result<CutGraph> {
    debug_assert_eq!(f.evaluate_mask(0), 0);
    debug_assert_eq!(f.evaluate_mask(f.full_mask()), 0);
    let mut graph = CutGraph::zero(f.support().to_vec());
    let max_id = f.support().iter().copied().max().unwrap_or(0);
    let zeros = vec![Rat::zero(); max_id];
    let mut realized: Vec<(BTreeSet<usize>, i64)> = Vec::new();
    for &u in f.support() {
        for &v in f.support() {
            if u == v {
                continue;
            }
            let (set, value) = minimize_with_linear(f, &zeros, Some(u), Some(v))?;
            let c = to_i64(&value)?;
            debug_assert!(c >= 0, "nonnegative oracle gives nonnegative capacities");
            if c > 0 {
                graph.add_capacity(u, v, c);
            }
            realized.push((set, c));
        }
    }
    debug_assert!(subadditive_on_realized(f, &realized));
    debug_assert!(sandwich_holds(f, &graph));
    Ok(graph)
}

/// F(∪ T_uv) ≤ Σ F(T_uv) and F(∩ T_uv) ≤ Σ F(T_uv) over the realized
/// minimizer sets — the subadditivity the approximation factor rests on.
fn subadditive_on_realized(f: &SubmodularOracle, realized: &[(BTreeSet<usize>, i64)]) -> bool {
    if realized.is_empty() {
        return true;
    }
    let total: i64 = realized.iter().map(|(_, c)| c).sum();
    let union: BTreeSet<usize> = realized
        .iter()
        .flat_map(|(s, _)| s.iter().copied())
        .collect();
    let mut inter = realized[0].0.clone();
    for (s, _) in &realized[1..] {
        inter = inter.intersection(s).copied().collect();
    }
    f.evaluate(&union) <= total && f.evaluate(&inter) <= total
}

fn sandwich_holds(f: &SubmodularOracle, graph: &CutGraph) -> bool {
    let k = f.support().len();
    if k > 8 {
        return true;
    }
    for mask in 0..1u64 << k {
        let fv = f.evaluate_mask(mask as u32);
        let cv = graph.cut_value_mask(mask);
        if fv > cv || 4 * cv > (k * k) as i64 * fv {
            return false;
        }
    }
    true
}

/// Arcwise sum over the union of the vertex sets; the empty list gives the
/// zero graph on no vertices.
pub fn combine_graphs(graphs: &[CutGraph]) -> CutGraph {
    let vertices: Vec<usize> = graphs
        .iter()
        .flat_map(|g| g.vertices().iter().copied())
        .collect();
    let mut combined = CutGraph::zero(vertices);
    for g in graphs {
        for (u, v, c) in g.arcs() {
            combined.add_capacity(u, v, c);
        }
    }
    combined
}
