use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use dsfm_core::{
    apx_parametric_min_cut, bruteforce_parametric_min, error_budget, format_rat, generate_instance,
    generate_network, grid_sweep_cut, int, lovasz_extension_sum, network_from_json,
    normalize_instance, parse_rat, rat, rational::to_f64, threshold_set, verify_cut, Error,
    GeneratorParams, Instance, Rat, Result, ResultJson, SolveOptions, SubmodularOracle, Tau,
};

#[derive(Parser)]
#[command(
    name = "dsfm",
    version,
    about = "minimize a sum of submodular functions under a family of quadratic penalties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file for the whole penalty family at once
    Solve(SolveArgs),
    /// Report approximate parametric min-cut breakpoints of a network
    Parametric(ParametricArgs),
    /// Check a solved instance against brute force over a grid of penalty parameters
    Verify(VerifyArgs),
    /// Generate, solve, and cross-check seeded random inputs
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// instance JSON file
    instance: PathBuf,
    /// additive accuracy target, as p/q or decimal
    #[arg(long, default_value = "1/1000", allow_hyphen_values = true)]
    epsilon: String,
    /// write the result JSON here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// print the dual objective of every iterate to stderr
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct ParametricArgs {
    /// network JSON file (or use --seed)
    network: Option<PathBuf>,
    /// breakpoint spacing ε
    #[arg(long, allow_hyphen_values = true)]
    eps: String,
    #[arg(long, allow_hyphen_values = true)]
    lambda_min: String,
    #[arg(long, allow_hyphen_values = true)]
    lambda_max: String,
    /// generate a random network instead of reading a file
    #[arg(long, conflicts_with = "network")]
    seed: Option<u64>,
    /// cross-check every breakpoint against the ε/8 grid sweep
    #[arg(long)]
    verify: bool,
    /// write the breakpoints as JSON
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// instance JSON file
    instance: PathBuf,
    /// solved result JSON; omit to solve in-process first
    result: Option<PathBuf>,
    /// lo:hi:count, endpoints as rationals
    #[arg(long, default_value = "-5:5:41", allow_hyphen_values = true)]
    alpha_grid: String,
    /// accuracy used when solving in-process
    #[arg(long, default_value = "1/1000", allow_hyphen_values = true)]
    epsilon: String,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Parametric(args) => cmd_parametric(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Selftest(args) => cmd_selftest(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_for(&err))
        }
    }
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::Parse(_) => 2,
        Error::RangeMisaligned { .. } | Error::InvalidTolerance(_) | Error::EmptyDomain => 4,
        Error::GroundSetTooLarge { .. } | Error::SupportTooLarge { .. } => 5,
        _ => 3,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn cmd_solve(args: SolveArgs) -> Result<ExitCode> {
    let instance = Instance::from_json(&read(&args.instance)?)?;
    let epsilon = parse_rat(&args.epsilon)?;
    let result = instance.solve(&SolveOptions::new(epsilon))?;
    if args.trace {
        for (k, v) in result.trace.iter().enumerate() {
            eprintln!("iter {k:>3}: dual objective {}", format_rat(v));
        }
    }
    let json = ResultJson::from_result(&result, &instance).to_json();
    match &args.output {
        Some(path) => {
            write(path, &format!("{json}\n"))?;
            println!(
                "solved {} elements in {} iterations (cap {}), δ = {:.3e}; wrote {}",
                instance.n,
                result.iterations,
                result.iteration_cap,
                result.delta,
                path.display()
            );
        }
        None => println!("{json}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_parametric(args: ParametricArgs) -> Result<ExitCode> {
    let net = match (&args.network, args.seed) {
        (Some(path), None) => network_from_json(&read(path)?)?,
        (None, Some(seed)) => generate_network(seed, 12)?,
        _ => return Err(Error::Parse("pass a network file or --seed".into())),
    };
    let eps = parse_rat(&args.eps)?;
    let lo = parse_rat(&args.lambda_min)?;
    let hi = parse_rat(&args.lambda_max)?;
    let (cut, instr) = apx_parametric_min_cut(&net, &lo, &hi, &eps)?;

    let lambdas: Vec<String> = cut.lambdas.iter().map(format_rat).collect();
    println!("Λ = {{{}}}", lambdas.join(", "));
    for (id, tau) in &cut.tau {
        match tau {
            Tau::At(l) => println!("τ({id}) = {}", format_rat(l)),
            Tau::Infinite => println!("τ({id}) = ∞"),
        }
    }
    println!(
        "{} max-flow calls over {} levels",
        instr.flow_calls,
        instr.per_level.len()
    );

    if args.verify {
        let fine = grid_sweep_cut(&net, &lo, &hi, &(eps.clone() / int(8)))?;
        let mut max_dev = int(0);
        for (id, tau) in &cut.tau {
            match (tau, &fine.tau[id]) {
                (Tau::Infinite, Tau::Infinite) => {}
                (Tau::At(a), Tau::At(r)) => {
                    let dev = a - r;
                    if dev < int(0) || dev > eps {
                        println!(
                            "fail: τ({id}) off by {} vs the fine sweep",
                            format_rat(&dev)
                        );
                        return Ok(ExitCode::FAILURE);
                    }
                    if dev > max_dev {
                        max_dev = dev;
                    }
                }
                _ => {
                    println!("fail: τ({id}) finite/infinite mismatch vs the fine sweep");
                    return Ok(ExitCode::FAILURE);
                }
            }
        }
        println!(
            "verified: max deviation {} ≤ ε = {}",
            format_rat(&max_dev),
            format_rat(&eps)
        );
    }

    if let Some(path) = &args.output {
        let tau: Vec<_> = cut
            .tau
            .iter()
            .map(|(id, t)| {
                let text = match t {
                    Tau::At(l) => format_rat(l),
                    Tau::Infinite => "inf".into(),
                };
                json!({"id": id, "tau": text})
            })
            .collect();
        let doc = json!({"lambdas": lambdas, "tau": tau});
        write(
            path,
            &format!(
                "{}\n",
                serde_json::to_string_pretty(&doc).expect("plain tree")
            ),
        )?;
    }
    Ok(ExitCode::SUCCESS)
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

fn parse_alpha_grid(text: &str) -> Result<Vec<Rat>> {
    let parts: Vec<&str> = text.split(':').collect();
    let [lo, hi, count] = parts[..] else {
        return Err(Error::Parse(format!(
            "alpha grid {text:?} is not lo:hi:count"
        )));
    };
    let lo = parse_rat(lo)?;
    let hi = parse_rat(hi)?;
    let count: usize = count
        .parse()
        .map_err(|_| Error::Parse(format!("bad grid count in {text:?}")))?;
    if count == 0 {
        return Err(Error::Parse("alpha grid needs at least one point".into()));
    }
    if hi < lo {
        return Err(Error::Parse(format!("alpha grid {text:?} runs backwards")));
    }
    if count == 1 {
        return Ok(vec![lo]);
    }
    let step = (&hi - &lo) / int(count as i64 - 1);
    Ok((0..count).map(|k| &lo + &step * int(k as i64)).collect())
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let instance = Instance::from_json(&read(&args.instance)?)?;
    if instance.n > 20 {
        return Err(Error::GroundSetTooLarge {
            n: instance.n,
            limit: 20,
        });
    }
    let grid = parse_alpha_grid(&args.alpha_grid)?;
    let result = match &args.result {
        Some(path) => ResultJson::from_json(&read(path)?)?,
        None => {
            let epsilon = parse_rat(&args.epsilon)?;
            ResultJson::from_result(&instance.solve(&SolveOptions::new(epsilon))?, &instance)
        }
    };

    if result.x.len() != instance.n || result.y.len() != instance.n {
        return Err(Error::Parse(format!(
            "result dimensions {}/{} do not match the instance ground set {}",
            result.x.len(),
            result.y.len(),
            instance.n
        )));
    }
    if result.decomposition.len() != instance.functions.len() {
        return Err(Error::Parse(format!(
            "{} decomposition parts for {} functions",
            result.decomposition.len(),
            instance.functions.len()
        )));
    }

    // the decomposition must be a genuine dual certificate before δ means anything
    let mut scattered = vec![0i64; instance.n];
    for (i, (f, part)) in instance
        .functions
        .iter()
        .zip(&result.decomposition)
        .enumerate()
    {
        if part.support != f.support() {
            return Err(Error::Parse(format!(
                "decomposition {} is not aligned to its support",
                i + 1
            )));
        }
        if !in_base_of_shifted(f, &part.y) {
            println!(
                "fail: decomposition part {} leaves its base polytope",
                i + 1
            );
            return Ok(ExitCode::FAILURE);
        }
        for (&id, &v) in part.support.iter().zip(&part.y) {
            scattered[id - 1] += v;
        }
    }
    if scattered != result.y {
        println!("fail: decomposition parts do not sum to y");
        return Ok(ExitCode::FAILURE);
    }

    // recompute the certificate rather than trusting the stored δ
    let ni = normalize_instance(instance.n, &instance.functions, &instance.penalties)?;
    let x = result.x_values()?;
    let inner: Rat = x
        .iter()
        .zip(result.y.iter().zip(&ni.total_shift))
        .map(|(xi, (y, w))| xi * int(y - w))
        .sum();
    let gap = lovasz_extension_sum(&ni.oracles, &x)? - inner;
    if to_f64(&gap) < -1e-9 {
        println!(
            "fail: negative duality gap {} — y cannot be feasible",
            format_rat(&gap)
        );
        return Ok(ExitCode::FAILURE);
    }
    let delta = error_budget(
        to_f64(&gap).max(0.0),
        ni.range_bound(),
        instance.n,
        to_f64(&ni.penalties.l_max()),
        to_f64(&ni.penalties.sigma()),
    );

    let mut max_excess = 0f64;
    for alpha in &grid {
        let chosen = threshold_set(&x, alpha);
        let derivs = instance.penalties.deriv_at(alpha);
        let mut value: Rat = chosen.iter().map(|&u| derivs[u - 1].clone()).sum();
        for f in &instance.functions {
            value += int(f.evaluate(&chosen));
        }
        let (_, best) =
            bruteforce_parametric_min(&instance.functions, &instance.penalties, alpha, false)?;
        let excess = to_f64(&(&value - &best));
        if excess > delta + 1e-12 {
            println!(
                "fail: α = {}: threshold set value {} is {excess:.6} over the optimum {}, δ = {delta:.6}",
                format_rat(alpha),
                format_rat(&value),
                format_rat(&best)
            );
            return Ok(ExitCode::FAILURE);
        }
        max_excess = max_excess.max(excess);
    }
    println!(
        "pass: {} α values, max excess {max_excess:.3e} ≤ δ = {delta:.3e}",
        grid.len()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_selftest(args: SelftestArgs) -> Result<ExitCode> {
    let base = args.seed;
    let epsilon = rat(1, 100);
    let alphas: Vec<Rat> = (0..11).map(|k| rat(-20 + 4 * k, 5)).collect();

    for s in 0..6u64 {
        let seed = base.wrapping_add(s);
        let n = 2 + (seed % 5) as usize;
        let params = GeneratorParams {
            n,
            functions: 1 + (seed % 2) as usize,
            max_support: 4.min(n),
            max_value: 8,
        };
        let instance = generate_instance(seed, &params)?;
        let result = instance.solve(&SolveOptions::new(epsilon.clone()))?;
        for alpha in &alphas {
            let chosen = threshold_set(&result.x, alpha);
            let derivs = instance.penalties.deriv_at(alpha);
            let mut value: Rat = chosen.iter().map(|&u| derivs[u - 1].clone()).sum();
            for f in &instance.functions {
                value += int(f.evaluate(&chosen));
            }
            let (_, best) =
                bruteforce_parametric_min(&instance.functions, &instance.penalties, alpha, false)?;
            if to_f64(&(&value - &best)) > result.delta + 1e-12 {
                println!(
                    "fail: seed {seed}, α = {}: outside the certificate",
                    format_rat(alpha)
                );
                return Ok(ExitCode::FAILURE);
            }
        }
        if instance.penalties.conjugate_pair_check(10, seed) != int(0) {
            println!("fail: seed {seed}: conjugate identities drifted");
            return Ok(ExitCode::FAILURE);
        }
    }
    println!("6 instances within certificate of brute force, conjugate identities exact");

    let eps = rat(1, 4);
    let (lo, hi) = (int(-8), int(8));
    for s in 0..6u64 {
        let seed = base.wrapping_add(s);
        let net = generate_network(seed, 10)?;
        let (cut, _) = apx_parametric_min_cut(&net, &lo, &hi, &eps)?;
        if !cut.definition_holds() || !verify_cut(&net, &cut)? {
            println!("fail: seed {seed}: breakpoint structure does not verify");
            return Ok(ExitCode::FAILURE);
        }
        let fine = grid_sweep_cut(&net, &lo, &hi, &rat(1, 32))?;
        for (id, tau) in &cut.tau {
            let ok = match (tau, &fine.tau[id]) {
                (Tau::Infinite, Tau::Infinite) => true,
                (Tau::At(a), Tau::At(r)) => {
                    let dev = a - r;
                    dev >= int(0) && dev <= eps
                }
                _ => false,
            };
            if !ok {
                println!("fail: seed {seed}: τ({id}) strays from the fine sweep");
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    println!("6 networks within ε of the fine sweep");
    println!("self-test passed (seed {base})");
    Ok(ExitCode::SUCCESS)
}
