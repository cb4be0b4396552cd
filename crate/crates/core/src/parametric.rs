//! Parametric min s,t-cut: an ε-grid approximate solver working entirely on
//! contracted minors, an exact variant for finite domains, and the sweep
//! oracles used to validate them.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::flow::{Node, ParametricNetwork};
use crate::rational::{format_rat, Rat};

/// When a vertex joins the s-side as λ grows, or never does.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tau {
    At(Rat),
    Infinite,
}

impl Tau {
    pub fn is_finite(&self) -> bool {
        matches!(self, Tau::At(_))
    }
}

/// Breakpoints Λ and per-vertex thresholds τ. S(z) = {v : τ(v) ≤ z} walks
/// through the nested family of minimal min cuts as z sweeps the range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParametricCut {
    /// strictly increasing, within (λ_min, λ_max]
    pub lambdas: Vec<Rat>,
    /// inner vertices only; s maps to λ_min and t to ∞ implicitly
    pub tau: BTreeMap<usize, Tau>,
    pub lambda_min: Rat,
    pub lambda_max: Rat,
    /// grid step when produced by the ε solver or a sweep; None for discrete domains
    pub eps: Option<Rat>,
}

impl ParametricCut {
    pub fn s_side_at(&self, z: &Rat) -> BTreeSet<usize> {
        self.tau
            .iter()
            .filter(|(_, tau)| matches!(tau, Tau::At(l) if l <= z))
            .map(|(id, _)| *id)
            .collect()
    }

    /// The structural contract: τ values drawn from {λ_min, ∞} ∪ Λ, breakpoints
    /// strictly increasing inside the range, each realized by some vertex
    /// (which makes the S(λ_i) strictly nested), and k ≤ n−1.
    pub fn definition_holds(&self) -> bool {
        let increasing = self.lambdas.windows(2).all(|w| w[0] < w[1]);
        let in_range = self
            .lambdas
            .iter()
            .all(|l| *l > self.lambda_min && *l <= self.lambda_max);
        let values_known = self.tau.values().all(|t| match t {
            Tau::Infinite => true,
            Tau::At(l) => *l == self.lambda_min || self.lambdas.contains(l),
        });
        let realized = self
            .lambdas
            .iter()
            .all(|l| self.tau.values().any(|t| matches!(t, Tau::At(v) if v == l)));
        let small = self.lambdas.len() <= self.tau.len();
        increasing && in_range && values_known && realized && small
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LevelStats {
    pub nodes: usize,
    pub flow_calls: usize,
    pub vertex_sum: usize,
    pub edge_sum: usize,
}

/// Work accounting for one solver invocation, bucketed by recursion depth.
#[derive(Debug, Clone, Default)]
pub struct Instrumentation {
    pub per_level: Vec<LevelStats>,
    pub flow_calls: usize,
}

impl Instrumentation {
    fn level_mut(&mut self, d: usize) -> &mut LevelStats {
        if self.per_level.len() <= d {
            self.per_level.resize(d + 1, LevelStats::default());
        }
        &mut self.per_level[d]
    }

    pub fn depth(&self) -> usize {
        self.per_level.len().saturating_sub(1)
    }
}

#[derive(Clone, Copy)]
enum Dom<'a> {
    Grid(&'a Rat),
    /// this subproblem's slice of the domain; first = lo, last = hi
    Discrete(&'a [Rat]),
}

/// ε-approximate parametric min cut over [λ_min, λ_max]: exact minimal min
/// cuts at every grid point, breakpoints reported on the grid.
pub fn apx_parametric_min_cut(
    pnet: &ParametricNetwork,
    lambda_min: &Rat,
    lambda_max: &Rat,
    eps: &Rat,
) -> Result<(ParametricCut, Instrumentation)> {
    check_grid(lambda_min, lambda_max, eps)?;
    let mut root = pnet.clone();
    root.minor_of_input = true;
    let mut instr = Instrumentation::default();
    let (lambdas, tau) = recurse(
        &root,
        lambda_min.clone(),
        lambda_max.clone(),
        Dom::Grid(eps),
        0,
        &mut instr,
    )?;
    let cut = ParametricCut {
        lambdas: lambdas.into_iter().collect(),
        tau,
        lambda_min: lambda_min.clone(),
        lambda_max: lambda_max.clone(),
        eps: Some(eps.clone()),
    };
    debug_assert!(cut.definition_holds());
    debug_assert_eq!(cut.tau.len(), pnet.inner().len());
    Ok((cut, instr))
}

/// Exact parametric min cut when λ only ever takes the given values. Pivots
/// are drawn from the domain, so every flow runs on an evaluable network.
pub fn exact_parametric_min_cut_discrete(
    pnet: &ParametricNetwork,
    domain: &[Rat],
) -> Result<(ParametricCut, Instrumentation)> {
    if domain.is_empty() {
        return Err(Error::EmptyDomain);
    }
    if !domain.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Parse("domain must be strictly increasing".into()));
    }
    let mut root = pnet.clone();
    root.minor_of_input = true;
    let mut instr = Instrumentation::default();
    let (lo, hi) = (domain[0].clone(), domain[domain.len() - 1].clone());
    let (lambdas, tau) = recurse(
        &root,
        lo.clone(),
        hi.clone(),
        Dom::Discrete(domain),
        0,
        &mut instr,
    )?;
    let cut = ParametricCut {
        lambdas: lambdas.into_iter().collect(),
        tau,
        lambda_min: lo,
        lambda_max: hi,
        eps: None,
    };
    debug_assert!(cut.definition_holds());
    Ok((cut, instr))
}

fn check_grid(lo: &Rat, hi: &Rat, eps: &Rat) -> Result<()> {
    let misaligned = || Error::RangeMisaligned {
        lo: format_rat(lo),
        hi: format_rat(hi),
        eps: format_rat(eps),
    };
    if eps <= &Rat::from_integer(0.into()) || hi < lo {
        return Err(misaligned());
    }
    if !((hi - lo) / eps).is_integer() {
        return Err(misaligned());
    }
    Ok(())
}

fn min_cut_at(
    net: &ParametricNetwork,
    lam: &Rat,
    level: usize,
    instr: &mut Instrumentation,
) -> Result<BTreeSet<Node>> {
    debug_assert!(net.minor_of_input, "flows must run on minors of the input");
    instr.level_mut(level).flow_calls += 1;
    instr.flow_calls += 1;
    let scale = net.natural_scale_at(lam);
    net.evaluate_at(lam, &scale)?.minimal_min_cut()
}

fn t_complement(net: &ParametricNetwork, s_side: &BTreeSet<Node>) -> BTreeSet<Node> {
    let mut t_side = BTreeSet::from([Node::T]);
    t_side.extend(
        net.inner()
            .iter()
            .filter(|id| !s_side.contains(&Node::V(**id)))
            .map(|id| Node::V(*id)),
    );
    t_side
}

fn recurse(
    net: &ParametricNetwork,
    lo: Rat,
    hi: Rat,
    dom: Dom<'_>,
    level: usize,
    instr: &mut Instrumentation,
) -> Result<(BTreeSet<Rat>, BTreeMap<usize, Tau>)> {
    if net.inner().is_empty() {
        // trivial minor: no inner vertices, no flow work, so it stays off the books
        return Ok((BTreeSet::new(), BTreeMap::new()));
    }
    let stats = instr.level_mut(level);
    stats.nodes += 1;
    stats.vertex_sum += net.vertex_count();
    stats.edge_sum += net.arc_count();
    let nv = net.vertex_count();
    let s_lo = min_cut_at(net, &lo, level, instr)?;
    let s_hi = min_cut_at(net, &hi, level, instr)?;

    if 2 * s_lo.len() > nv {
        // most of the range's s-side is already fixed at lo; absorb it
        let (minor, _) = net.contract(&s_lo, Some(&lo))?;
        let (lambdas, mut tau) = recurse(&minor, lo.clone(), hi, dom, level + 1, instr)?;
        for n in &s_lo {
            if let Node::V(id) = n {
                tau.insert(*id, Tau::At(lo.clone()));
            }
        }
        return Ok((lambdas, tau));
    }
    if 2 * s_hi.len() < nv {
        // majority never joins the s-side on this range
        let t_side = t_complement(net, &s_hi);
        let (minor, _) = net.contract(&t_side, Some(&hi))?;
        let (lambdas, mut tau) = recurse(&minor, lo, hi.clone(), dom, level + 1, instr)?;
        for n in &t_side {
            if let Node::V(id) = n {
                tau.insert(*id, Tau::Infinite);
            }
        }
        return Ok((lambdas, tau));
    }

    let split = pivot_search(
        net,
        nv,
        lo.clone(),
        s_lo,
        hi.clone(),
        s_hi,
        dom,
        level,
        instr,
    )?;
    let t_side = t_complement(net, &split.s1);
    let (left_minor, _) = net.contract(&t_side, Some(&split.l1))?;
    let (right_minor, _) = net.contract(&split.s2, Some(&split.l2))?;
    let (lam_l, tau_l) = recurse(
        &left_minor,
        lo,
        split.l1.clone(),
        split.left_dom,
        level + 1,
        instr,
    )?;
    let (lam_r, tau_r) = recurse(
        &right_minor,
        split.l2.clone(),
        hi,
        split.right_dom,
        level + 1,
        instr,
    )?;

    let mut lambdas: BTreeSet<Rat> = lam_l;
    lambdas.extend(lam_r);
    if split.s1.len() != split.s2.len() {
        lambdas.insert(split.l2.clone());
    }
    let mut tau = BTreeMap::new();
    for id in net.inner() {
        let node = Node::V(*id);
        let value = if split.s1.contains(&node) {
            tau_l
                .get(id)
                .cloned()
                .expect("left child covers the λ1 s-side")
        } else if !split.s2.contains(&node) {
            tau_r
                .get(id)
                .cloned()
                .expect("right child covers the λ2 t-side")
        } else {
            Tau::At(split.l2.clone())
        };
        tau.insert(*id, value);
    }
    Ok((lambdas, tau))
}

struct Split<'a> {
    l1: Rat,
    s1: BTreeSet<Node>,
    l2: Rat,
    s2: BTreeSet<Node>,
    left_dom: Dom<'a>,
    right_dom: Dom<'a>,
}

/// Narrow [λ1, λ2] to adjacent domain points, keeping |S(λ1)| below half and
/// |S(λ2)| at least half. Ties push λ2 down, matching minimal-side semantics.
#[allow(clippy::too_many_arguments)]
fn pivot_search<'a>(
    net: &ParametricNetwork,
    nv: usize,
    lo: Rat,
    s_lo: BTreeSet<Node>,
    hi: Rat,
    s_hi: BTreeSet<Node>,
    dom: Dom<'a>,
    level: usize,
    instr: &mut Instrumentation,
) -> Result<Split<'a>> {
    match dom {
        Dom::Grid(eps) => {
            let (mut l1, mut s1, mut l2, mut s2) = (lo, s_lo, hi, s_hi);
            loop {
                let gap = &l2 - &l1;
                if gap <= *eps {
                    break;
                }
                let m = gap / eps;
                debug_assert!(m.is_integer());
                let pivot = &l1 + Rat::from_integer(m.to_integer() / 2) * eps;
                let sp = min_cut_at(net, &pivot, level, instr)?;
                if 2 * sp.len() >= nv {
                    l2 = pivot;
                    s2 = sp;
                } else {
                    l1 = pivot;
                    s1 = sp;
                }
            }
            Ok(Split {
                l1,
                s1,
                l2,
                s2,
                left_dom: Dom::Grid(eps),
                right_dom: Dom::Grid(eps),
            })
        }
        Dom::Discrete(points) => {
            let (mut i1, mut i2) = (0, points.len() - 1);
            let (mut s1, mut s2) = (s_lo, s_hi);
            while i2 - i1 >= 2 {
                let mid = i1 + (i2 - i1 + 1) / 2;
                let sp = min_cut_at(net, &points[mid], level, instr)?;
                if 2 * sp.len() >= nv {
                    i2 = mid;
                    s2 = sp;
                } else {
                    i1 = mid;
                    s1 = sp;
                }
            }
            Ok(Split {
                l1: points[i1].clone(),
                s1,
                l2: points[i2].clone(),
                s2,
                left_dom: Dom::Discrete(&points[..=i1]),
                right_dom: Dom::Discrete(&points[i2..]),
            })
        }
    }
}

/// Reference oracle: evaluate the minimal min cut at every grid point and read
/// each vertex's first-entry λ. Independent of the recursive solver.
pub fn grid_sweep_cut(
    pnet: &ParametricNetwork,
    lambda_min: &Rat,
    lambda_max: &Rat,
    step: &Rat,
) -> Result<ParametricCut> {
    check_grid(lambda_min, lambda_max, step)?;
    let count = ((lambda_max - lambda_min) / step).to_integer();
    let mut points = Vec::new();
    let mut k: num::BigInt = 0.into();
    while k <= count {
        points.push(lambda_min + Rat::from_integer(k.clone()) * step);
        k += 1;
    }
    let mut cut = sweep(pnet, &points)?;
    cut.eps = Some(step.clone());
    Ok(cut)
}

/// Same reference over an explicit finite domain.
pub fn sweep(pnet: &ParametricNetwork, points: &[Rat]) -> Result<ParametricCut> {
    if points.is_empty() {
        return Err(Error::EmptyDomain);
    }
    let mut tau: BTreeMap<usize, Tau> =
        pnet.inner().iter().map(|id| (*id, Tau::Infinite)).collect();
    let mut lambdas = BTreeSet::new();
    let mut prev: Option<BTreeSet<Node>> = None;
    for lam in points {
        let scale = pnet.natural_scale_at(lam);
        let side = pnet.evaluate_at(lam, &scale)?.minimal_min_cut()?;
        if let Some(p) = &prev {
            debug_assert!(p.is_subset(&side), "minimal min cuts must be nested in λ");
        }
        for n in &side {
            if let Node::V(id) = n {
                if tau[id] == Tau::Infinite {
                    tau.insert(*id, Tau::At(lam.clone()));
                    if lam > &points[0] {
                        lambdas.insert(lam.clone());
                    }
                }
            }
        }
        prev = Some(side);
    }
    Ok(ParametricCut {
        lambdas: lambdas.into_iter().collect(),
        tau,
        lambda_min: points[0].clone(),
        lambda_max: points[points.len() - 1].clone(),
        eps: None,
    })
}

/// max_v (τ_approx(v) − τ_reference(v)), with ∞−∞ = 0. Errors when one side is
/// finite and the other is not, or the cuts cover different vertices.
pub fn compare_to_exact(approx: &ParametricCut, reference: &ParametricCut) -> Result<Rat> {
    if approx.lambda_min != reference.lambda_min {
        return Err(Error::InvalidNetwork("cuts cover different ranges".into()));
    }
    let mut worst: Option<Rat> = None;
    for (id, ta) in &approx.tau {
        let tr = reference
            .tau
            .get(id)
            .ok_or(Error::BreakpointMismatch(*id))?;
        let dev = match (ta, tr) {
            (Tau::Infinite, Tau::Infinite) => continue,
            (Tau::At(a), Tau::At(r)) => a - r,
            _ => return Err(Error::BreakpointMismatch(*id)),
        };
        worst = Some(match worst {
            None => dev,
            Some(w) => w.max(dev),
        });
    }
    if approx.tau.len() != reference.tau.len() {
        let id = reference
            .tau
            .keys()
            .find(|id| !approx.tau.contains_key(id))
            .unwrap();
        return Err(Error::BreakpointMismatch(*id));
    }
    Ok(worst.unwrap_or_else(|| Rat::from_integer(0.into())))
}

/// Re-derive the minimal min cut at every grid point and check it matches the
/// sets S(λ) the cut encodes — the full strength of the approximation claim.
pub fn verify_cut(pnet: &ParametricNetwork, cut: &ParametricCut) -> Result<bool> {
    let step = cut
        .eps
        .as_ref()
        .ok_or_else(|| Error::Parse("cut records no grid step".into()))?;
    let count = ((&cut.lambda_max - &cut.lambda_min) / step).to_integer();
    let mut k: num::BigInt = 0.into();
    while k <= count {
        let lam = &cut.lambda_min + Rat::from_integer(k.clone()) * step;
        let mut expected = BTreeSet::from([Node::S]);
        expected.extend(cut.s_side_at(&lam).into_iter().map(Node::V));
        let scale = pnet.natural_scale_at(&lam);
        let actual = pnet.evaluate_at(&lam, &scale)?.minimal_min_cut()?;
        if actual != expected {
            return Ok(false);
        }
        k += 1;
    }
    Ok(true)
}
