//! Instance, result, and network file formats (JSON with rationals as "p/q"
//! strings) plus the seeded generator of submodular mixtures used in tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{Node, ParametricNetwork};
use crate::oracle::{OracleDescription, SubmodularOracle};
use crate::parametric::Tau;
use crate::penalty::PenaltyFamily;
use crate::rational::{format_rat, int, parse_rat, rat, to_i64, Rat};
use crate::solver::{solve, SolveOptions, SolveResult};

#[derive(Debug, Clone)]
pub struct Instance {
    pub n: usize,
    pub functions: Vec<SubmodularOracle>,
    pub penalties: PenaltyFamily,
}

impl Instance {
    pub fn new(
        n: usize,
        functions: Vec<SubmodularOracle>,
        penalties: PenaltyFamily,
    ) -> Result<Self> {
        let instance = Instance {
            n,
            functions,
            penalties,
        };
        instance.validate()?;
        Ok(instance)
    }

    fn validate(&self) -> Result<()> {
        if self.penalties.len() != self.n {
            return Err(Error::Parse(format!(
                "penalty has {} entries for ground set of size {}",
                self.penalties.len(),
                self.n
            )));
        }
        for f in &self.functions {
            for &id in f.support() {
                if id > self.n {
                    return Err(Error::ElementOutOfRange { id, n: self.n });
                }
            }
        }
        Ok(())
    }

    pub fn solve(&self, opts: &SolveOptions) -> Result<SolveResult> {
        solve(self.n, &self.functions, &self.penalties, opts)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&InstanceJson::encode(self)).expect("instance serializes")
    }

    pub fn from_json(text: &str) -> Result<Instance> {
        let parsed: InstanceJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        parsed.decode()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceJson {
    ground_set: usize,
    functions: Vec<FunctionJson>,
    penalty: PenaltyJson,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum FunctionJson {
    Table {
        support: Vec<usize>,
        values: Vec<i64>,
    },
    HyperedgeCut {
        support: Vec<usize>,
        weight: i64,
    },
    DirectedEdge {
        support: Vec<usize>,
        capacity: i64,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum PenaltyJson {
    Quadratic { a: Vec<String>, c: Vec<String> },
}

impl InstanceJson {
    fn encode(instance: &Instance) -> Self {
        let functions = instance
            .functions
            .iter()
            .map(|f| match f.describe() {
                OracleDescription::Table { values } => FunctionJson::Table {
                    support: f.support().to_vec(),
                    values: values.to_vec(),
                },
                OracleDescription::HyperedgeCut { weight } => FunctionJson::HyperedgeCut {
                    support: f.support().to_vec(),
                    weight,
                },
                OracleDescription::DirectedEdge { from, to, weight } => {
                    FunctionJson::DirectedEdge {
                        support: vec![from, to],
                        capacity: weight,
                    }
                }
                OracleDescription::Residual => {
                    let table = f.to_table();
                    let OracleDescription::Table { values } = table.describe() else {
                        unreachable!()
                    };
                    FunctionJson::Table {
                        support: table.support().to_vec(),
                        values: values.to_vec(),
                    }
                }
            })
            .collect();
        let penalty = PenaltyJson::Quadratic {
            a: instance
                .penalties
                .iter()
                .map(|p| format_rat(p.center()))
                .collect(),
            c: instance
                .penalties
                .iter()
                .map(|p| format_rat(p.curvature()))
                .collect(),
        };
        InstanceJson {
            ground_set: instance.n,
            functions,
            penalty,
        }
    }

    fn decode(&self) -> Result<Instance> {
        let mut functions = Vec::with_capacity(self.functions.len());
        for f in &self.functions {
            functions.push(match f {
                FunctionJson::Table { support, values } => {
                    SubmodularOracle::table(support.clone(), values.clone())?
                }
                FunctionJson::HyperedgeCut { support, weight } => {
                    SubmodularOracle::hyperedge_cut(support.clone(), *weight)?
                }
                FunctionJson::DirectedEdge { support, capacity } => {
                    let [from, to] = support[..] else {
                        return Err(Error::Parse(
                            "directed_edge support must list exactly the two endpoints".into(),
                        ));
                    };
                    SubmodularOracle::directed_edge(from, to, *capacity)?
                }
            });
        }
        let PenaltyJson::Quadratic { a, c } = &self.penalty;
        let a = a.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()?;
        let c = c.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()?;
        Instance::new(
            self.ground_set,
            functions,
            PenaltyFamily::make_quadratic(&a, &c)?,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultJson {
    pub x: Vec<String>,
    pub y: Vec<i64>,
    pub decomposition: Vec<DecompositionJson>,
    pub constant_offset: i64,
    pub trace: Vec<String>,
    pub delta: f64,
    pub zeta: f64,
    pub iterations: usize,
    pub iteration_cap: usize,
    pub breakpoints: Option<BreakpointsJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionJson {
    pub support: Vec<usize>,
    pub y: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BreakpointsJson {
    pub lambdas: Vec<String>,
    pub tau: Vec<TauJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TauJson {
    pub id: usize,
    /// "p/q", or "inf" for a vertex that never enters the source side
    pub tau: String,
}

impl ResultJson {
    pub fn from_result(result: &SolveResult, instance: &Instance) -> Self {
        let decomposition = instance
            .functions
            .iter()
            .zip(&result.y_decomposition)
            .map(|(f, y)| DecompositionJson {
                support: f.support().to_vec(),
                y: y.clone(),
            })
            .collect();
        let breakpoints = result.breakpoints.as_ref().map(|cut| BreakpointsJson {
            lambdas: cut.lambdas.iter().map(format_rat).collect(),
            tau: cut
                .tau
                .iter()
                .map(|(&id, t)| TauJson {
                    id,
                    tau: match t {
                        Tau::At(l) => format_rat(l),
                        Tau::Infinite => "inf".into(),
                    },
                })
                .collect(),
        });
        ResultJson {
            x: result.x.iter().map(format_rat).collect(),
            y: result.y.clone(),
            decomposition,
            constant_offset: result.constant_offset,
            trace: result.trace.iter().map(format_rat).collect(),
            delta: result.delta,
            zeta: result.zeta,
            iterations: result.iterations,
            iteration_cap: result.iteration_cap,
            breakpoints,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn x_values(&self) -> Result<Vec<Rat>> {
        self.x.iter().map(|s| parse_rat(s)).collect()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkJson {
    vertices: Vec<usize>,
    arcs: Vec<ArcJson>,
}

#[derive(Serialize, Deserialize)]
struct ArcJson {
    from: String,
    to: String,
    cap: CapJson,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CapJson {
    Const {
        #[serde(rename = "const")]
        value: i64,
    },
    Parametric {
        slope: String,
        base: String,
        side: SideJson,
    },
}

#[derive(Serialize, Deserialize, PartialEq, Clone, Copy)]
#[serde(rename_all = "snake_case")]
enum SideJson {
    Source,
    Sink,
}

fn node_name(node: Node) -> String {
    match node {
        Node::S => "s".into(),
        Node::T => "t".into(),
        Node::V(id) => id.to_string(),
    }
}

fn parse_node(name: &str) -> Result<Node> {
    match name {
        "s" => Ok(Node::S),
        "t" => Ok(Node::T),
        _ => name
            .parse::<usize>()
            .map(Node::V)
            .map_err(|_| Error::Parse(format!("bad node name {name:?}"))),
    }
}

pub fn network_to_json(net: &ParametricNetwork) -> Result<String> {
    let mut arcs = Vec::new();
    for (&(from, to), cap) in net.arcs() {
        if let Some(lin) = &cap.linear {
            let side = if from == Node::S {
                SideJson::Source
            } else {
                SideJson::Sink
            };
            arcs.push(ArcJson {
                from: node_name(from),
                to: node_name(to),
                cap: CapJson::Parametric {
                    slope: format_rat(&lin.slope),
                    base: format_rat(&lin.base),
                    side,
                },
            });
        }
        if cap.linear.is_none() || !num::Zero::is_zero(&cap.shift) {
            let value = to_i64(&cap.shift)
                .map_err(|_| Error::Parse("constant capacities must be integral".into()))?;
            arcs.push(ArcJson {
                from: node_name(from),
                to: node_name(to),
                cap: CapJson::Const { value },
            });
        }
    }
    let doc = NetworkJson {
        vertices: net.inner().iter().copied().collect(),
        arcs,
    };
    Ok(serde_json::to_string_pretty(&doc).expect("network serializes"))
}

pub fn network_from_json(text: &str) -> Result<ParametricNetwork> {
    let doc: NetworkJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut net = ParametricNetwork::new(doc.vertices);
    for arc in &doc.arcs {
        let from = parse_node(&arc.from)?;
        let to = parse_node(&arc.to)?;
        match &arc.cap {
            CapJson::Const { value } => net.add_const_arc(from, to, int(*value))?,
            CapJson::Parametric { slope, base, side } => {
                let expected = if *side == SideJson::Source {
                    from == Node::S
                } else {
                    to == Node::T
                };
                if !expected {
                    return Err(Error::Parse(format!(
                        "side tag does not match endpoints on {}→{}",
                        arc.from, arc.to
                    )));
                }
                net.add_parametric_arc(from, to, parse_rat(slope)?, parse_rat(base)?)?;
            }
        }
    }
    Ok(net)
}

#[derive(Debug, Clone)]
pub struct GeneratorParams {
    pub n: usize,
    pub functions: usize,
    pub max_support: usize,
    pub max_value: i64,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        GeneratorParams {
            n: 8,
            functions: 3,
            max_support: 4,
            max_value: 8,
        }
    }
}

/// Deterministic mixture generator: directed-pair cuts + an optional hyperedge
/// cut + modular and constant terms, submodular by construction. Penalty
/// curvatures are uniform (1 or 2 by seed parity) and centers have a shared
/// odd denominator, which keeps every rounding comparison away from halves.
pub fn generate_instance(seed: u64, params: &GeneratorParams) -> Result<Instance> {
    assert!(params.n >= 1 && params.max_support >= 1 && params.functions >= 1);
    for attempt in 0u64..64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ attempt.wrapping_mul(0x9e3779b97f4a7c15));
        let Some(functions) = try_functions(&mut rng, params) else {
            continue;
        };
        let denom = [3, 5, 7, 9, 11, 13][rng.random_range(0..6usize)];
        let a: Vec<Rat> = (0..params.n)
            .map(|_| rat(rng.random_range(-4 * denom..=4 * denom), denom))
            .collect();
        let c = vec![int(if seed % 2 == 0 { 1 } else { 2 }); params.n];
        return Instance::new(params.n, functions, PenaltyFamily::make_quadratic(&a, &c)?);
    }
    Err(Error::Parse(format!(
        "no instance within value bound {} for seed {seed}",
        params.max_value
    )))
}

fn try_functions(rng: &mut ChaCha8Rng, params: &GeneratorParams) -> Option<Vec<SubmodularOracle>> {
    let mut functions = Vec::with_capacity(params.functions);
    for _ in 0..params.functions {
        functions.push(random_function(rng, params)?);
    }
    Some(functions)
}

fn random_support(rng: &mut ChaCha8Rng, n: usize, max_support: usize) -> Vec<usize> {
    let k = rng.random_range(1..=max_support.min(n));
    let mut ids: Vec<usize> = (1..=n).collect();
    for i in 0..k {
        let j = rng.random_range(i..ids.len());
        ids.swap(i, j);
    }
    let mut support = ids[..k].to_vec();
    support.sort_unstable();
    support
}

fn random_function(rng: &mut ChaCha8Rng, params: &GeneratorParams) -> Option<SubmodularOracle> {
    let support = random_support(rng, params.n, params.max_support);
    let k = support.len();
    let style = rng.random_range(0..4u32);
    let f = match style {
        0 if k >= 2 => SubmodularOracle::hyperedge_cut(support, rng.random_range(1..=3)).ok()?,
        1 if k >= 2 => {
            let from = support[rng.random_range(0..k)];
            let to = loop {
                let t = support[rng.random_range(0..k)];
                if t != from {
                    break t;
                }
            };
            SubmodularOracle::directed_edge(from, to, rng.random_range(1..=3)).ok()?
        }
        _ => mixture_table(rng, &support)?,
    };
    debug_assert!(f.is_submodular_bruteforce().unwrap_or(true));
    (f.f_max() <= params.max_value && f.f_min() >= -params.max_value).then_some(f)
}

fn mixture_table(rng: &mut ChaCha8Rng, support: &[usize]) -> Option<SubmodularOracle> {
    let k = support.len();
    let mut edges = Vec::new();
    if k >= 2 {
        for _ in 0..rng.random_range(0..=2 * k) {
            let i = rng.random_range(0..k);
            let j = loop {
                let j = rng.random_range(0..k);
                if j != i {
                    break j;
                }
            };
            edges.push((i, j, rng.random_range(1..=2i64)));
        }
    }
    let hyper: i64 = if k >= 2 && rng.random_bool(0.5) {
        rng.random_range(1..=2)
    } else {
        0
    };
    let modular: Vec<i64> = (0..k).map(|_| rng.random_range(-2..=2)).collect();
    let constant: i64 = rng.random_range(-2..=2);
    let mut values = vec![0i64; 1 << k];
    for (mask, slot) in values.iter_mut().enumerate() {
        let mut v = constant;
        for &(i, j, w) in &edges {
            if mask >> i & 1 == 1 && mask >> j & 1 == 0 {
                v += w;
            }
        }
        let picked = (mask as u32).count_ones() as usize;
        if picked > 0 && picked < k {
            v += hyper;
        }
        for (i, m) in modular.iter().enumerate() {
            if mask >> i & 1 == 1 {
                v += m;
            }
        }
        *slot = v;
    }
    SubmodularOracle::table(support.to_vec(), values).ok()
}

/// Deterministic parametric networks for the cross-check harness: quarter-grid
/// bases, slopes up to 2, a sprinkling of constant arcs.
pub fn generate_network(seed: u64, max_vertices: usize) -> Result<ParametricNetwork> {
    assert!(max_vertices >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv = rng.random_range(1..=max_vertices);
    let mut net = ParametricNetwork::new(1..=nv);
    for u in 1..=nv {
        if rng.random_bool(0.7) {
            let slope = int(rng.random_range(0..=2));
            let base = rat(rng.random_range(-32..=32), 4);
            net.add_parametric_arc(Node::S, Node::V(u), slope, base)?;
        }
        if rng.random_bool(0.7) {
            let slope = int(-rng.random_range(0..=2i64));
            let base = rat(rng.random_range(-32..=32), 4);
            net.add_parametric_arc(Node::V(u), Node::T, slope, base)?;
        }
        if rng.random_bool(0.4) {
            net.add_const_arc(Node::S, Node::V(u), int(rng.random_range(0..=3)))?;
        }
        if rng.random_bool(0.4) {
            net.add_const_arc(Node::V(u), Node::T, int(rng.random_range(0..=3)))?;
        }
    }
    if nv >= 2 {
        for _ in 0..rng.random_range(0..=2 * nv) {
            let u = rng.random_range(1..=nv);
            let v = loop {
                let w = rng.random_range(1..=nv);
                if w != u {
                    break w;
                }
            };
            net.add_const_arc(Node::V(u), Node::V(v), int(rng.random_range(1..=4)))?;
        }
    }
    Ok(net)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::to_f64;
    use std::collections::BTreeSet;

    #[test]
    fn instance_json_round_trip() {
        let functions = vec![
            SubmodularOracle::table(vec![1, 2], vec![0, 1, 1, 0]).unwrap(),
            SubmodularOracle::hyperedge_cut(vec![1, 3], 2).unwrap(),
            SubmodularOracle::directed_edge(3, 2, 1).unwrap(),
        ];
        let pen =
            PenaltyFamily::make_quadratic(&[rat(7, 3), int(0), int(-1)], &[int(1), int(2), int(1)])
                .unwrap();
        let instance = Instance::new(3, functions, pen).unwrap();
        let text = instance.to_json();
        let back = Instance::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text);
        for (f, g) in instance.functions.iter().zip(&back.functions) {
            assert_eq!(f.support(), g.support());
            for mask in 0..=f.full_mask() {
                assert_eq!(f.evaluate_mask(mask), g.evaluate_mask(mask));
            }
        }
    }

    #[test]
    fn literal_instance_text_solves() {
        let text = r#"{
            "ground_set": 2,
            "functions": [{"type": "table", "support": [1, 2], "values": [0, 1, 1, 0]}],
            "penalty": {"type": "quadratic", "a": ["2", "0"], "c": ["1", "1"]}
        }"#;
        let instance = Instance::from_json(text).unwrap();
        let result = instance.solve(&SolveOptions::new(rat(1, 1000))).unwrap();
        assert_eq!(result.y, vec![1, -1]);
        assert_eq!(result.x, vec![int(1), int(1)]);
    }

    #[test]
    fn malformed_instances_rejected() {
        assert!(matches!(Instance::from_json("{"), Err(Error::Parse(_))));
        let unknown = r#"{"ground_set": 1, "functions": [{"type": "frob", "support": [1]}],
            "penalty": {"type": "quadratic", "a": ["0"], "c": ["1"]}}"#;
        assert!(matches!(Instance::from_json(unknown), Err(Error::Parse(_))));
        let short_table = r#"{"ground_set": 2,
            "functions": [{"type": "table", "support": [1, 2], "values": [0, 1]}],
            "penalty": {"type": "quadratic", "a": ["0", "0"], "c": ["1", "1"]}}"#;
        assert!(matches!(
            Instance::from_json(short_table),
            Err(Error::Parse(_))
        ));
        let out_of_range = r#"{"ground_set": 1,
            "functions": [{"type": "table", "support": [2], "values": [0, 1]}],
            "penalty": {"type": "quadratic", "a": ["0"], "c": ["1"]}}"#;
        assert!(matches!(
            Instance::from_json(out_of_range),
            Err(Error::ElementOutOfRange { id: 2, n: 1 })
        ));
    }

    #[test]
    fn result_json_round_trip() {
        let instance = Instance::from_json(
            r#"{"ground_set": 2,
                "functions": [{"type": "table", "support": [1, 2], "values": [0, 1, 1, 0]}],
                "penalty": {"type": "quadratic", "a": ["2", "0"], "c": ["1", "1"]}}"#,
        )
        .unwrap();
        let result = instance.solve(&SolveOptions::new(rat(1, 1000))).unwrap();
        let doc = ResultJson::from_result(&result, &instance);
        let text = doc.to_json();
        let back = ResultJson::from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.x_values().unwrap(), result.x);
        assert!(back.delta >= 0.0);
        assert_eq!(back.decomposition.len(), 1);
        assert_eq!(back.decomposition[0].support, vec![1, 2]);
    }

    #[test]
    fn network_json_round_trip() {
        let mut net = ParametricNetwork::new([1, 2]);
        net.add_parametric_arc(Node::S, Node::V(1), int(1), rat(-5, 4))
            .unwrap();
        net.add_parametric_arc(Node::V(2), Node::T, int(-1), rat(3, 2))
            .unwrap();
        net.add_const_arc(Node::V(1), Node::V(2), int(2)).unwrap();
        net.add_const_arc(Node::S, Node::V(2), int(1)).unwrap();
        let text = network_to_json(&net).unwrap();
        let back = network_from_json(&text).unwrap();
        assert_eq!(network_to_json(&back).unwrap(), text);
        for lam in [int(-2), int(0), rat(5, 4), int(3)] {
            let scale = net.natural_scale_at(&lam);
            let a = net.evaluate_at(&lam, &scale).unwrap();
            let b = back.evaluate_at(&lam, &scale).unwrap();
            assert_eq!(a.arc_capacities(), b.arc_capacities());
        }
    }

    #[test]
    fn network_json_rejects_mismatched_side() {
        let bad = r#"{"vertices": [1], "arcs": [
            {"from": "1", "to": "t", "cap": {"slope": "1", "base": "0", "side": "source"}}
        ]}"#;
        assert!(matches!(network_from_json(bad), Err(Error::Parse(_))));
    }

    #[test]
    fn generator_is_deterministic_and_submodular() {
        let params = GeneratorParams {
            n: 6,
            functions: 3,
            max_support: 4,
            max_value: 8,
        };
        let one = generate_instance(11, &params).unwrap();
        let two = generate_instance(11, &params).unwrap();
        assert_eq!(one.to_json(), two.to_json());
        let other = generate_instance(12, &params).unwrap();
        assert_ne!(one.to_json(), other.to_json());
        for f in &one.functions {
            assert!(f.is_submodular_bruteforce().unwrap());
            assert!(f.f_max() <= 8 && f.f_min() >= -8);
            assert!(f.support().len() <= 4);
        }
        let sigma = one.penalties.sigma();
        assert!(sigma == int(1) || sigma == int(2));
        assert_eq!(sigma, one.penalties.l_max());
    }

    #[test]
    fn generated_instances_solve_and_threshold() {
        let params = GeneratorParams {
            n: 4,
            functions: 2,
            max_support: 3,
            max_value: 8,
        };
        for seed in 0..6 {
            let instance = generate_instance(seed, &params).unwrap();
            let result = instance.solve(&SolveOptions::new(rat(1, 100))).unwrap();
            assert!(result.delta >= 0.0);
            assert!(result.trace.windows(2).all(|w| w[0] >= w[1]));
            for alpha in [int(-3), rat(-1, 2), int(0), rat(5, 3), int(4)] {
                let chosen = crate::solver::threshold_set(&result.x, &alpha);
                let derivs = instance.penalties.deriv_at(&alpha);
                let mut value: Rat = chosen.iter().map(|&u| derivs[u - 1].clone()).sum();
                for f in &instance.functions {
                    let inside: BTreeSet<usize> = chosen.clone();
                    value += int(f.evaluate(&inside));
                }
                let (_, brute) = crate::base::bruteforce_parametric_min(
                    &instance.functions,
                    &instance.penalties,
                    &alpha,
                    false,
                )
                .unwrap();
                assert!(
                    to_f64(&(value.clone() - brute.clone())) <= result.delta + 1e-12,
                    "seed {seed} alpha {alpha}: {value} vs {brute} + {}",
                    result.delta
                );
            }
        }
    }

    #[test]
    fn generated_networks_deterministic() {
        let one = generate_network(5, 12).unwrap();
        let two = generate_network(5, 12).unwrap();
        assert_eq!(
            network_to_json(&one).unwrap(),
            network_to_json(&two).unwrap()
        );
        assert!(one.inner().len() <= 12);
        let text = network_to_json(&one).unwrap();
        let back = network_from_json(&text).unwrap();
        assert_eq!(network_to_json(&back).unwrap(), text);
    }
}
