//! Acceptance gate. One test — one pass/fail line — per end-to-end guarantee,
//! at the stated scale and tolerance. Every reference value here is recomputed
//! from scratch (brute force or closed form), never read back from the solver.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dsfm_core::{
    apx_parametric_min_cut, bruteforce_parametric_min, generate_instance, generate_network,
    graph_approx_shifted, grid_sweep_cut, int, normalize_instance, rat, rational::to_f64,
    threshold_set, GeneratorParams, Instance, Node, Rat, SolveOptions, SubmodularOracle, Tau,
};

fn instance_for_seed(seed: u64) -> Instance {
    let n = 2 + (seed as usize % 7);
    let params = GeneratorParams {
        n,
        functions: 1 + (seed as usize % 3),
        max_support: 4.min(n),
        max_value: 8,
    };
    generate_instance(seed, &params).expect("generator yields an instance")
}

/// y ∈ B(F − F(∅)), exhaustively; y aligned to F's support order.
fn in_base_of_shifted(f: &SubmodularOracle, y: &[i64]) -> bool {
    let empty = f.evaluate_mask(0);
    for mask in 0..=f.full_mask() {
        let sum: i64 = y
            .iter()
            .enumerate()
            .filter(|(pos, _)| mask >> pos & 1 == 1)
            .map(|(_, &v)| v)
            .sum();
        let bound = f.evaluate_mask(mask) - empty;
        if sum > bound || (mask == f.full_mask() && sum != bound) {
            return false;
        }
    }
    true
}

#[test]
fn thresholded_solutions_match_brute_force_along_the_penalty_parameter() {
    let start = Instant::now();
    let epsilon = rat(1, 1000);
    let alphas: Vec<Rat> = (0..41).map(|k| rat(-20 + k, 4)).collect();
    for seed in 0..200u64 {
        let instance = instance_for_seed(seed);
        let result = instance.solve(&SolveOptions::new(epsilon.clone())).unwrap();
        for alpha in &alphas {
            let chosen = threshold_set(&result.x, alpha);
            let derivs = instance.penalties.deriv_at(alpha);
            let mut value: Rat = chosen.iter().map(|&u| derivs[u - 1].clone()).sum();
            for f in &instance.functions {
                value += int(f.evaluate(&chosen));
            }
            let (_, best) =
                bruteforce_parametric_min(&instance.functions, &instance.penalties, alpha, false)
                    .unwrap();
            let excess = &value - &best;
            assert!(
                to_f64(&excess) <= result.delta + 1e-12,
                "seed {seed}, α = {alpha}: threshold value {value} vs optimum {best}, \
                 excess {excess} > δ = {}",
                result.delta
            );
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!("200 instances × 41 α-grid points within δ of brute force in {elapsed:.1}s");
    assert!(
        elapsed < 300.0,
        "criterion budget is five minutes, took {elapsed:.1}s"
    );
}

#[test]
fn parametric_cut_breakpoints_trail_the_fine_sweep_by_at_most_epsilon() {
    let start = Instant::now();
    let eps = rat(1, 4);
    let (lo, hi) = (int(-16), int(16));
    for seed in 0..100u64 {
        let net = generate_network(seed, 20).unwrap();
        let (cut, _) = apx_parametric_min_cut(&net, &lo, &hi, &eps).unwrap();
        assert!(
            cut.definition_holds(),
            "seed {seed}: malformed breakpoint structure"
        );
        let reference = grid_sweep_cut(&net, &lo, &hi, &rat(1, 32)).unwrap();
        for (id, ta) in &cut.tau {
            let tr = &reference.tau[id];
            match (ta, tr) {
                (Tau::Infinite, Tau::Infinite) => {}
                (Tau::At(a), Tau::At(r)) => {
                    let dev = a - r;
                    assert!(
                        dev >= int(0) && dev <= eps,
                        "seed {seed}, vertex {id}: τ deviation {dev} outside [0, {eps}]"
                    );
                }
                _ => panic!("seed {seed}, vertex {id}: finite/infinite mismatch"),
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!("100 networks, every τ within [0, ε] of the ε/8 sweep in {elapsed:.1}s");
    assert!(
        elapsed < 120.0,
        "criterion budget is two minutes, took {elapsed:.1}s"
    );
}

#[test]
fn cut_graphs_sandwich_their_residual_functions() {
    let mut checked = 0usize;
    for seed in 1000..1100u64 {
        let k = 1 + (seed as usize % 8);
        let params = GeneratorParams {
            n: k,
            functions: 1,
            max_support: k,
            max_value: 8,
        };
        let instance = generate_instance(seed, &params).unwrap();
        let ni = normalize_instance(instance.n, &instance.functions, &instance.penalties).unwrap();
        let res = &ni.oracles[0];
        let graph = graph_approx_shifted(res).unwrap();
        let size = res.support().len() as i64;
        for mask in 0..=res.full_mask() {
            let set: BTreeSet<usize> = res
                .support()
                .iter()
                .enumerate()
                .filter(|(pos, _)| mask >> pos & 1 == 1)
                .map(|(_, &id)| id)
                .collect();
            let cut = graph.cut_value(&set);
            let fv = res.evaluate_mask(mask);
            assert!(fv <= cut, "seed {seed}: F(A) = {fv} above the cut {cut}");
            assert!(
                4 * cut <= size * size * fv,
                "seed {seed}: cut {cut} above |V|²/4 · {fv}"
            );
        }
        checked += 1;
    }
    println!("{checked} residual oracles sandwiched exactly");
}

#[test]
fn max_flow_agrees_with_exhaustive_min_cut_and_returns_the_minimal_side() {
    let mut networks = 0usize;
    for seed in 0..60u64 {
        let net = generate_network(seed, 12).unwrap();
        for lam in [int(-2), int(0), int(1), rat(5, 2), int(4)] {
            let scale = net.natural_scale_at(&lam);
            let flow_net = net.evaluate_at(&lam, &scale).unwrap();
            let value = flow_net.max_flow().unwrap().value;
            let (brute_side, brute_value) = flow_net.brute_force_min_cut().unwrap();
            assert_eq!(value, brute_value, "seed {seed}, λ = {lam}: flow ≠ min cut");
            let side = flow_net.minimal_min_cut().unwrap();
            assert_eq!(
                flow_net.cut_capacity(&side),
                value,
                "seed {seed}: returned side not min"
            );
            assert_eq!(
                side, brute_side,
                "seed {seed}, λ = {lam}: s-side not inclusion-minimal"
            );
        }
        networks += 1;
    }
    println!("{networks} networks × 5 λ values, flow = cut and minimal side exact");
}

#[test]
fn contracting_either_side_of_a_cut_preserves_flow_values() {
    let mut pairs = 0usize;
    for seed in 0..100u64 {
        let net = generate_network(seed, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xC0117AC7);
        for _ in 0..10 {
            let lam = int(rng.random_range(-8..=8));
            let spread = rng.random_range(0..=4);
            let scale = net.natural_scale_at(&lam);
            let s_side = net
                .evaluate_at(&lam, &scale)
                .unwrap()
                .minimal_min_cut()
                .unwrap();

            let (minor, log) = net.contract(&s_side, Some(&lam)).unwrap();
            let above = &lam + int(spread);
            let scale2 = net.natural_scale_at(&above);
            let orig = net
                .evaluate_at(&above, &scale2)
                .unwrap()
                .max_flow()
                .unwrap()
                .value;
            let mino = minor
                .evaluate_at(&above, &scale2)
                .unwrap()
                .max_flow()
                .unwrap()
                .value;
            let dropped = log.dropped_value_at(&above) * Rat::from(scale2.clone());
            assert_eq!(
                int(orig),
                int(mino) + dropped,
                "seed {seed}: s-side contraction drifted"
            );

            let mut t_side: BTreeSet<Node> = net
                .inner()
                .iter()
                .map(|&u| Node::V(u))
                .filter(|v| !s_side.contains(v))
                .collect();
            t_side.insert(Node::T);
            let (minor_t, log_t) = net.contract(&t_side, Some(&lam)).unwrap();
            let below = &lam - int(spread);
            let scale3 = net.natural_scale_at(&below);
            let orig = net
                .evaluate_at(&below, &scale3)
                .unwrap()
                .max_flow()
                .unwrap()
                .value;
            let mino = minor_t
                .evaluate_at(&below, &scale3)
                .unwrap()
                .max_flow()
                .unwrap()
                .value;
            let dropped = log_t.dropped_value_at(&below) * Rat::from(scale3.clone());
            assert_eq!(
                int(orig),
                int(mino) + dropped,
                "seed {seed}: t-side contraction drifted"
            );
            pairs += 2;
        }
    }
    println!("{pairs} contraction/λ′ pairs preserved exactly");
}

#[test]
fn dual_traces_decrease_within_the_independent_iteration_budget() {
    let epsilon = rat(1, 1000);
    for seed in 0..200u64 {
        let instance = instance_for_seed(seed);
        let result = instance.solve(&SolveOptions::new(epsilon.clone())).unwrap();
        assert!(
            result.trace.windows(2).all(|w| w[0] >= w[1]),
            "seed {seed}: dual trace increased"
        );

        let ni = normalize_instance(instance.n, &instance.functions, &instance.penalties).unwrap();
        let zeros = vec![int(0); instance.n];
        let surrogate = ni.penalties.conj_sum_neg(&zeros) + ni.penalties.value_sum(&zeros);
        let rate = instance
            .functions
            .iter()
            .map(|f| {
                let k = f.support().len() as i64;
                rat(k * k, 4).max(int(1))
            })
            .max()
            .unwrap();
        let surrogate_f = to_f64(&surrogate);
        let budget = if surrogate_f <= result.zeta {
            0
        } else {
            (to_f64(&rate) * (surrogate_f / result.zeta).ln())
                .ceil()
                .max(0.0) as usize
        };
        assert_eq!(result.iteration_cap, budget, "seed {seed}: budget mismatch");
        assert!(
            result.iterations <= budget.max(0),
            "seed {seed}: {} iterations over the {budget} budget",
            result.iterations
        );
    }
    println!("200 traces nonincreasing, iteration counts within ⌈α·ln(gap₀/ζ)⌉");
}

#[test]
fn every_iterate_is_an_integral_point_of_each_base_polytope() {
    let mut iterates = 0usize;
    for seed in 0..100u64 {
        let instance = instance_for_seed(seed);
        let mut opts = SolveOptions::new(rat(1, 1000));
        opts.record_iterates = true;
        let result = instance.solve(&opts).unwrap();
        for snapshot in result.iterates.as_ref().unwrap() {
            for (f, y) in instance.functions.iter().zip(snapshot) {
                assert!(
                    in_base_of_shifted(f, y),
                    "seed {seed}: iterate {y:?} outside the base polytope of a summand"
                );
            }
            iterates += 1;
        }
    }
    println!("{iterates} recorded iterations, all decompositions integral and feasible");
}

#[test]
fn primal_dual_conversions_are_mutually_inverse() {
    let mut points = 0usize;
    for seed in 0..50u64 {
        let n = 2 + (seed as usize % 5);
        let params = GeneratorParams {
            n,
            functions: 1,
            max_support: n,
            max_value: 8,
        };
        let pen = generate_instance(seed, &params).unwrap().penalties;
        assert_eq!(pen.conjugate_pair_check(20, seed), int(0));
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xD0A1);
        for _ in 0..20 {
            let t: Vec<Rat> = (0..n)
                .map(|_| rat(rng.random_range(-60..=60), rng.random_range(1..=6)))
                .collect();
            let neg_grad: Vec<Rat> = t
                .iter()
                .enumerate()
                .map(|(u, tu)| -pen.by_id(u + 1).deriv(tu))
                .collect();
            let back = pen.grad_conj_neg(&neg_grad);
            assert_eq!(back, t, "conversion roundtrip drifted");
            points += 1;
        }
    }
    println!("{points} conversion roundtrips exact, conjugate identities exact");
}

#[test]
fn recursion_work_stays_linear_per_level_and_logarithmic_in_depth() {
    for seed in 0..100u64 {
        let net = generate_network(seed, 20).unwrap();
        let n = net.inner().len().max(1);
        let (_, instr) = apx_parametric_min_cut(&net, &int(-16), &int(16), &rat(1, 4)).unwrap();
        for (level, stats) in instr.per_level.iter().enumerate() {
            assert!(
                stats.vertex_sum <= 3 * n,
                "seed {seed}: level {level} vertex total {} over 3n = {}",
                stats.vertex_sum,
                3 * n
            );
        }
        let depth_bound = (n as f64).log2() + 1.0;
        assert!(
            instr.depth() as f64 <= depth_bound + 1e-9,
            "seed {seed}: depth {} over log₂({n}) + 1",
            instr.depth()
        );
    }
    println!("100 parametric solves, per-level vertices ≤ 3n and depth ≤ log₂ n + 1");
}
