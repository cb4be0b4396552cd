//! The full minimization loop: cut-graph approximation of the residual
//! functions, one approximate parametric min cut per round, and exact integral
//! dual bookkeeping with a certified error budget at the end.

use std::collections::BTreeSet;

use num::{BigInt, One, Signed, Zero};

use crate::base::{greedy_base_vertex, in_base_polytope, lovasz_extension_sum};
use crate::cut_graph::{combine_graphs, graph_approx_shifted, CutGraph};
use crate::error::{Error, Result};
use crate::flow::ParametricNetwork;
use crate::flow::{FlowNetwork, Node};
use crate::normalize::{normalize_instance, NormalizedInstance};
use crate::oracle::SubmodularOracle;
use crate::parametric::{apx_parametric_min_cut, Instrumentation, ParametricCut, Tau};
use crate::penalty::PenaltyFamily;
use crate::rational::{format_rat, int, rat, round_nearest_i64, to_f64, Rat};

fn rats(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&k| int(k)).collect()
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub epsilon: Rat,
    /// keep the per-iteration dual decompositions (original coordinates)
    pub record_iterates: bool,
}

impl SolveOptions {
    pub fn new(epsilon: Rat) -> Self {
        Self {
            epsilon,
            record_iterates: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    /// minimizer of the regularized relaxation; threshold to get the sets
    pub x: Vec<Rat>,
    /// dual optimum, one entry per ground element
    pub y: Vec<i64>,
    /// per-summand split of y, aligned to each function's support
    pub y_decomposition: Vec<Vec<i64>>,
    /// Σ_i F_i(∅), to be added to any reported set value
    pub constant_offset: i64,
    /// exact dual objectives, one entry per iterate starting at zero
    pub trace: Vec<Rat>,
    /// certified additive slack of the thresholded sets
    pub delta: f64,
    /// dual-gap target derived from ε
    pub zeta: f64,
    pub iterations: usize,
    pub iteration_cap: usize,
    /// breakpoints of the last parametric cut, when at least one ran
    pub breakpoints: Option<ParametricCut>,
    pub instrumentation: Vec<Instrumentation>,
    /// per-iteration decompositions when requested
    pub iterates: Option<Vec<Vec<Vec<i64>>>>,
}

/// δ(ζ) = √ζ·M·n^{3/2}·√(2L)/σ + ζ·(L/σ)²: how far thresholding a
/// ζ-approximate dual point can land from the true minimum.
pub fn error_budget(zeta: f64, range_bound: i64, n: usize, l_max: f64, sigma: f64) -> f64 {
    let a = range_bound as f64 * (n as f64).powf(1.5) * (2.0 * l_max).sqrt() / sigma;
    let b = (l_max / sigma).powi(2);
    zeta.sqrt() * a + zeta * b
}

/// Largest ζ with error_budget(ζ) ≤ ε/2, solved as a quadratic in √ζ.
pub fn zeta_from_epsilon(eps: f64, range_bound: i64, n: usize, l_max: f64, sigma: f64) -> f64 {
    let a = range_bound as f64 * (n as f64).powf(1.5) * (2.0 * l_max).sqrt() / sigma;
    let b = (l_max / sigma).powi(2);
    let u = (-a + (a * a + 2.0 * b * eps).sqrt()) / (2.0 * b);
    u * u
}

/// x = (∇ψ*)(−y), coordinatewise.
pub fn dual_to_primal(y: &[i64], penalties: &PenaltyFamily) -> Vec<Rat> {
    penalties.grad_conj_neg(&rats(y))
}

/// {u : x_u ≥ α}, boundary included.
pub fn threshold_set(x: &[Rat], alpha: &Rat) -> BTreeSet<usize> {
    x.iter()
        .enumerate()
        .filter(|(_, v)| *v >= alpha)
        .map(|(i, _)| i + 1)
        .collect()
}

#[derive(Debug)]
pub struct MinCutsOutcome {
    /// ŵ_u = −φ'_u(x̃_u) read off the breakpoints, x̃_u = −τ(u)
    pub w_hat: Vec<Rat>,
    pub cut: ParametricCut,
    pub instrumentation: Instrumentation,
}

/// Solve min_A c⁺(A) + Σ_{u∈A} φ'_u(−λ) for every λ on an ε_cut-grid wide
/// enough to contain all flips, and recover the fractional dual optimizer.
pub fn find_min_cuts(
    graph: &CutGraph,
    phi: &PenaltyFamily,
    eps_cut: &Rat,
) -> Result<MinCutsOutcome> {
    if *eps_cut <= Rat::zero() {
        return Err(Error::InvalidTolerance(format!(
            "cut tolerance must be positive, got {}",
            format_rat(eps_cut)
        )));
    }
    let n = phi.len();
    let mut pnet = ParametricNetwork::new(1..=n);
    for u in 1..=n {
        let p = phi.by_id(u);
        let c = p.curvature().clone();
        let ca = p.curvature() * p.center();
        // source side carries max{0, c(λ+a)}, sink side the mirror image, so
        // the cut objective at λ is Σ_{u∈A} φ'_u(−λ) plus the graph arcs
        pnet.add_parametric_arc(Node::S, Node::V(u), c.clone(), ca.clone())?;
        pnet.add_parametric_arc(Node::V(u), Node::T, -c, -ca)?;
    }
    for (u, v, cap) in graph.arcs() {
        if u > n || v > n {
            return Err(Error::ElementOutOfRange { id: u.max(v), n });
        }
        pnet.add_const_arc(Node::V(u), Node::V(v), int(cap))?;
    }
    // beyond ±2(ρ+G)/σ the min cut is pinned to ∅ / everything; one extra grid
    // step keeps the range nonempty even when ρ = G = 0
    let bound = int(2) * (phi.rho() + int(graph.total_capacity())) / phi.sigma();
    let steps = (bound / eps_cut).ceil().to_integer() + BigInt::one();
    let lambda_max = Rat::from_integer(steps) * eps_cut;
    let lambda_min = -lambda_max.clone();
    let (cut, instrumentation) = apx_parametric_min_cut(&pnet, &lambda_min, &lambda_max, eps_cut)?;
    let mut w_hat = Vec::with_capacity(n);
    for u in 1..=n {
        match cut.tau.get(&u) {
            Some(Tau::At(l)) => {
                let p = phi.by_id(u);
                w_hat.push(p.curvature() * (l + p.center()));
            }
            _ => return Err(Error::MissingBreakpoint(u)),
        }
    }
    Ok(MinCutsOutcome {
        w_hat,
        cut,
        instrumentation,
    })
}

#[derive(Debug)]
pub struct DualDecomposition {
    /// entrywise nearest integer to ŵ: the optimizer of the graph relaxation
    pub aggregate: Vec<i64>,
    /// integral parts, aligned to each graph's vertex order; sums to aggregate
    pub parts: Vec<Vec<i64>>,
    /// (∇φ*)(−aggregate)
    pub x_star: Vec<Rat>,
}

/// Round the breakpoint values to the integral dual optimizer and split it
/// exactly across the constituent graphs.
pub fn cut_to_dual(
    cut: &ParametricCut,
    phi: &PenaltyFamily,
    graphs: &[CutGraph],
) -> Result<DualDecomposition> {
    let n = phi.len();
    let mut aggregate = Vec::with_capacity(n);
    for u in 1..=n {
        let Some(Tau::At(l)) = cut.tau.get(&u) else {
            return Err(Error::MissingBreakpoint(u));
        };
        let p = phi.by_id(u);
        aggregate.push(round_nearest_i64(&(p.curvature() * (l + p.center())))?);
    }
    let x_star = phi.grad_conj_neg(&rats(&aggregate));
    let parts = split_across_graphs(&aggregate, graphs, n)?;
    Ok(DualDecomposition {
        aggregate,
        parts,
        x_star,
    })
}

/// Write y as a sum of integral base-polytope points of the constituent cut
/// functions. Any such y is the divergence of a flow obeying the combined arc
/// capacities; routing it with the graphs' arcs kept as parallel edges reads
/// off the per-graph parts directly.
fn split_across_graphs(y: &[i64], graphs: &[CutGraph], n: usize) -> Result<Vec<Vec<i64>>> {
    // every base point of a cut function sums to zero; a rounded aggregate
    // that misses this has no split, and saturating the sources alone would
    // not notice (the sinks then cannot all fill)
    if y.iter().sum::<i64>() != 0 {
        return Err(Error::InvalidNetwork(
            "divergence does not sum to zero".into(),
        ));
    }
    let mut net = FlowNetwork::new(1..=n);
    let mut owners = Vec::new();
    for (gi, g) in graphs.iter().enumerate() {
        for (u, v, cap) in g.arcs() {
            net.add_arc(Node::V(u), Node::V(v), cap)?;
            owners.push((gi, u, v));
        }
    }
    let mut demand = 0i64;
    for (u, &yu) in (1..=n).zip(y) {
        if yu > 0 {
            net.add_arc(Node::S, Node::V(u), yu)?;
            demand += yu;
        } else if yu < 0 {
            net.add_arc(Node::V(u), Node::T, -yu)?;
        }
    }
    // graph arcs were inserted first, so flows[..owners.len()] line up
    let (result, flows) = net.max_flow_detailed()?;
    if result.value != demand {
        return Err(Error::InvalidNetwork(format!(
            "divergence of weight {demand} is not routable through the combined graph"
        )));
    }
    let mut parts: Vec<Vec<i64>> = graphs
        .iter()
        .map(|g| vec![0i64; g.vertices().len()])
        .collect();
    for (k, &(gi, u, v)) in owners.iter().enumerate() {
        if flows[k] == 0 {
            continue;
        }
        let g = &graphs[gi];
        parts[gi][g.vertices().binary_search(&u).unwrap()] += flows[k];
        parts[gi][g.vertices().binary_search(&v).unwrap()] -= flows[k];
    }
    #[cfg(debug_assertions)]
    {
        let mut total = vec![0i64; n];
        for (g, part) in graphs.iter().zip(&parts) {
            for (pos, &u) in g.vertices().iter().enumerate() {
                total[u - 1] += part[pos];
            }
            let k = g.vertices().len();
            if k <= 12 {
                for mask in 0..(1u64 << k) {
                    let sum: i64 = (0..k).filter(|p| mask >> p & 1 == 1).map(|p| part[p]).sum();
                    debug_assert!(sum <= g.cut_value_mask(mask), "part left its base polytope");
                }
            }
        }
        debug_assert_eq!(total, y, "parts must sum to the aggregate");
    }
    Ok(parts)
}

/// Prefix-difference parts along the order sorting x_star descending (ties by
/// ascending id): a greedy vertex of each graph's base polytope.
fn prefix_parts(x_star: &[Rat], graphs: &[CutGraph]) -> Result<Vec<Vec<i64>>> {
    let n = x_star.len();
    let mut order: Vec<usize> = (1..=n).collect();
    order.sort_by(|&a, &b| x_star[b - 1].cmp(&x_star[a - 1]).then(a.cmp(&b)));
    let mut parts = Vec::with_capacity(graphs.len());
    for g in graphs {
        let sub: Vec<usize> = order
            .iter()
            .copied()
            .filter(|u| g.vertices().binary_search(u).is_ok())
            .collect();
        let values = g.prefix_cut_values(&sub)?;
        let mut by_vertex = vec![0i64; g.vertices().len()];
        let mut prev = 0i64;
        for (j, &u) in sub.iter().enumerate() {
            by_vertex[g.vertices().binary_search(&u).unwrap()] = values[j] - prev;
            prev = values[j];
        }
        parts.push(by_vertex);
    }
    Ok(parts)
}

#[derive(Debug)]
pub struct StepOutcome {
    /// exact dual objective after the update
    pub objective: Rat,
    /// no candidate improved the objective; the iterate is unchanged
    pub converged: bool,
    pub cut: ParametricCut,
    pub instrumentation: Instrumentation,
}

/// One round: approximate the residual functions by cut graphs, solve the
/// parametric relaxation, and apply the best exactly-feasible candidate step.
/// The dual objective never increases.
pub fn progress_step(
    inst: &NormalizedInstance,
    y_parts: &mut [Vec<i64>],
    y_total: &mut [i64],
    eps_cut: &Rat,
) -> Result<StepOutcome> {
    let r = inst.oracles.len();
    let mut residuals = Vec::with_capacity(r);
    for (f, y_i) in inst.oracles.iter().zip(y_parts.iter()) {
        let res = SubmodularOracle::residual(f.clone(), y_i.clone())?;
        debug_assert!(res.f_min() >= 0, "iterate left the base polytope");
        residuals.push(res);
    }
    let graphs: Vec<CutGraph> = residuals
        .iter()
        .map(graph_approx_shifted)
        .collect::<Result<_>>()?;
    let combined = combine_graphs(&graphs);
    let phi = inst.penalties.shifted_by_linear(&rats(y_total));
    let outcome = find_min_cuts(&combined, &phi, eps_cut)?;

    // candidate steps in preference order: the exact relaxation optimizer, its
    // greedy-vertex counterpart, the per-function greedy vertices, stand still.
    // The relaxation overshoots the true polytopes, so each candidate is
    // admitted only after an exhaustive feasibility check. The rounded
    // relaxation point need not decompose as a flow at all (rounding ties can
    // push it off the polytope); drop it then and order the survivors by the
    // primal estimate read straight off the cut.
    let mut candidates: Vec<Vec<Vec<i64>>> = Vec::with_capacity(4);
    let x_star = match cut_to_dual(&outcome.cut, &phi, &graphs) {
        Ok(dual) => {
            let x = dual.x_star.clone();
            candidates.push(dual.parts);
            x
        }
        Err(Error::InvalidNetwork(_)) => primal_estimate(&outcome.cut, inst.n),
        Err(e) => return Err(e),
    };
    candidates.push(prefix_parts(&x_star, &graphs)?);
    let mut greedy = Vec::with_capacity(r);
    for res in &residuals {
        let dense = greedy_base_vertex(res, &x_star)?;
        greedy.push(res.support().iter().map(|&u| dense[u - 1]).collect());
    }
    candidates.push(greedy);
    candidates.push(y_parts.iter().map(|p| vec![0i64; p.len()]).collect());

    let current = inst.penalties.conj_sum_neg(&rats(y_total));
    let mut best: Option<(Rat, usize)> = None;
    for (ci, cand) in candidates.iter().enumerate() {
        if !residuals
            .iter()
            .zip(cand)
            .all(|(res, step)| in_base_polytope(res, step))
        {
            continue;
        }
        let mut shifted = y_total.to_vec();
        for (f, step) in inst.oracles.iter().zip(cand) {
            for (&u, &s) in f.support().iter().zip(step) {
                shifted[u - 1] += s;
            }
        }
        let objective = inst.penalties.conj_sum_neg(&rats(&shifted));
        if best.as_ref().map_or(true, |(b, _)| objective < *b) {
            best = Some((objective, ci));
        }
    }
    let (best_objective, best_idx) = best.expect("the zero step is always feasible");
    if best_objective >= current {
        return Ok(StepOutcome {
            objective: current,
            converged: true,
            cut: outcome.cut,
            instrumentation: outcome.instrumentation,
        });
    }
    let cand = &candidates[best_idx];
    for i in 0..r {
        for (pos, &u) in inst.oracles[i].support().iter().enumerate() {
            y_parts[i][pos] += cand[i][pos];
            y_total[u - 1] += cand[i][pos];
        }
    }
    Ok(StepOutcome {
        objective: best_objective,
        converged: false,
        cut: outcome.cut,
        instrumentation: outcome.instrumentation,
    })
}

/// x̃_u = −τ(u), dense; the fallback ordering key when the rounded dual is unusable.
fn primal_estimate(cut: &ParametricCut, n: usize) -> Vec<Rat> {
    let mut x = vec![Rat::zero(); n];
    for (&u, t) in &cut.tau {
        x[u - 1] = match t {
            Tau::At(l) => -l,
            Tau::Infinite => -&cut.lambda_max - Rat::one(),
        };
    }
    x
}

fn original_decomposition(inst: &NormalizedInstance, y_parts: &[Vec<i64>]) -> Vec<Vec<i64>> {
    inst.shift_vectors
        .iter()
        .zip(y_parts)
        .map(|(w, y)| w.iter().zip(y).map(|(a, b)| a + b).collect())
        .collect()
}

pub fn solve(
    n: usize,
    oracles: &[SubmodularOracle],
    penalties: &PenaltyFamily,
    opts: &SolveOptions,
) -> Result<SolveResult> {
    if opts.epsilon <= Rat::zero() {
        return Err(Error::InvalidTolerance(format!(
            "epsilon must be positive, got {}",
            format_rat(&opts.epsilon)
        )));
    }
    let inst = normalize_instance(n, oracles, penalties)?;
    let range_bound = inst.range_bound();
    let sigma = inst.penalties.sigma();
    let l_max = inst.penalties.l_max();
    let zeta = zeta_from_epsilon(
        to_f64(&opts.epsilon),
        range_bound,
        n,
        to_f64(&l_max),
        to_f64(&sigma),
    );
    if !(zeta > 0.0) {
        return Err(Error::InvalidTolerance(format!(
            "epsilon {} is too small to invert",
            format_rat(&opts.epsilon)
        )));
    }
    let zeros = vec![Rat::zero(); n];
    // ψ̄*(0) + ψ̄(0) bounds the initial dual gap
    let surrogate = inst.penalties.conj_sum_neg(&zeros) + inst.penalties.value_sum(&zeros);
    let alpha_rate = oracles
        .iter()
        .map(|f| {
            let k = f.support().len() as i64;
            rat(k * k, 4).max(Rat::one())
        })
        .max()
        .unwrap_or_else(Rat::one);
    let surrogate_f = to_f64(&surrogate);
    let iteration_cap = if surrogate_f <= zeta {
        0
    } else {
        (to_f64(&alpha_rate) * (surrogate_f / zeta).ln())
            .ceil()
            .max(0.0) as usize
    };
    let eps_cut = (int(3) * &l_max).recip();

    let r = inst.oracles.len();
    let mut y_parts: Vec<Vec<i64>> = inst
        .oracles
        .iter()
        .map(|f| vec![0i64; f.support().len()])
        .collect();
    let mut y_total = vec![0i64; n];
    let mut trace = vec![inst.penalties.conj_sum_neg(&zeros)];
    let mut instrumentation = Vec::new();
    let mut breakpoints = None;
    let mut iterates = opts.record_iterates.then(Vec::<Vec<Vec<i64>>>::new);
    let mut iterations = 0usize;
    for _ in 0..iteration_cap {
        let step = progress_step(&inst, &mut y_parts, &mut y_total, &eps_cut)?;
        iterations += 1;
        trace.push(step.objective.clone());
        instrumentation.push(step.instrumentation);
        breakpoints = Some(step.cut);
        if let Some(hist) = iterates.as_mut() {
            hist.push(original_decomposition(&inst, &y_parts));
        }
        debug_assert!(
            y_total.iter().map(|v| v.abs()).sum::<i64>() <= 2 * n as i64 * range_bound,
            "dual iterate out of range"
        );
        debug_assert!(
            {
                let g = inst.penalties.grad_conj_neg(&rats(&y_total));
                let g0 = inst.penalties.grad_conj_neg(&zeros);
                let lhs: Rat = g.iter().map(|v| v.abs()).sum();
                lhs <= int(2 * n as i64 * range_bound) / &sigma
                    + g0.iter().map(|v| v.abs()).sum::<Rat>()
            },
            "primal image out of range"
        );
        if step.converged {
            break;
        }
    }
    debug_assert_eq!(r, y_parts.len());

    // certified duality gap at the final iterate; ≥ 0 by Fenchel–Young
    let x = inst.penalties.grad_conj_neg(&rats(&y_total));
    let inner: Rat = x.iter().zip(&y_total).map(|(xv, &yv)| xv * int(yv)).sum();
    let gap = lovasz_extension_sum(&inst.oracles, &x)? - inner;
    debug_assert!(gap >= Rat::zero());
    let delta = error_budget(
        to_f64(&gap).max(0.0),
        range_bound,
        n,
        to_f64(&l_max),
        to_f64(&sigma),
    );

    let y: Vec<i64> = inst
        .total_shift
        .iter()
        .zip(&y_total)
        .map(|(w, v)| w + v)
        .collect();
    debug_assert_eq!(
        penalties.grad_conj_neg(&rats(&y)),
        x,
        "coordinate change must commute"
    );
    let y_decomposition = original_decomposition(&inst, &y_parts);
    Ok(SolveResult {
        x,
        y,
        y_decomposition,
        constant_offset: inst.constant_offset,
        trace,
        delta,
        zeta,
        iterations,
        iteration_cap,
        breakpoints,
        instrumentation,
        iterates,
    })
}
