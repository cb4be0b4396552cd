//! Exact integer max-flow with minimal min-cut extraction, plus parametric
//! networks whose capacities are affine in λ (clamped at zero) and which can be
//! contracted to minors.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num::{BigInt, One, Zero};

use crate::error::{Error, Result};
use crate::rational::{lcm_denoms, to_i64, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Node {
    S,
    T,
    V(usize),
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::S => write!(f, "s"),
            Node::T => write!(f, "t"),
            Node::V(id) => write!(f, "v{id}"),
        }
    }
}

#[derive(Debug, Clone)]
struct FlowEdge {
    to: usize,
    cap: i64,
}

/// s,t-network with integer capacities. Arcs s→t and self-loops are dropped at
/// insertion; parallel arcs are allowed.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    nodes: Vec<Node>,
    index: BTreeMap<Node, usize>,
    adj: Vec<Vec<usize>>,
    edges: Vec<FlowEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxFlowResult {
    pub value: i64,
    /// residual-reachable side: the inclusion-minimal min-cut s-side
    pub reachable: BTreeSet<Node>,
}

impl FlowNetwork {
    pub fn new(inner: impl IntoIterator<Item = usize>) -> Self {
        let mut nodes = vec![Node::S, Node::T];
        nodes.extend(inner.into_iter().map(Node::V));
        nodes[2..].sort_unstable();
        let index = nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect();
        let adj = vec![Vec::new(); nodes.len()];
        Self {
            nodes,
            index,
            adj,
            edges: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn add_arc(&mut self, from: Node, to: Node, cap: i64) -> Result<()> {
        if cap < 0 {
            return Err(Error::InvalidNetwork(format!(
                "negative capacity on {from}→{to}"
            )));
        }
        let (Some(&u), Some(&v)) = (self.index.get(&from), self.index.get(&to)) else {
            return Err(Error::InvalidNetwork(format!(
                "unknown endpoint on {from}→{to}"
            )));
        };
        if u == v || (from, to) == (Node::S, Node::T) {
            return Ok(());
        }
        self.edges.push(FlowEdge { to: v, cap });
        self.edges.push(FlowEdge { to: u, cap: 0 });
        self.adj[u].push(self.edges.len() - 2);
        self.adj[v].push(self.edges.len() - 1);
        Ok(())
    }

    /// The arcs as inserted (reverse bookkeeping arcs excluded).
    pub fn arc_capacities(&self) -> Vec<(Node, Node, i64)> {
        (0..self.edges.len() / 2)
            .map(|k| {
                let fwd = &self.edges[2 * k];
                let from = self.edges[2 * k + 1].to;
                (self.nodes[from], self.nodes[fwd.to], fwd.cap)
            })
            .collect()
    }

    /// Σ capacities of arcs leaving `s_side`, using the original capacities.
    pub fn cut_capacity(&self, s_side: &BTreeSet<Node>) -> i64 {
        self.arc_capacities()
            .into_iter()
            .filter(|(u, v, _)| s_side.contains(u) && !s_side.contains(v))
            .map(|(_, _, c)| c)
            .sum()
    }

    pub fn max_flow(&self) -> Result<MaxFlowResult> {
        Ok(self.run_dinic()?.0)
    }

    /// Max flow plus the flow carried by each inserted arc, in insertion order.
    pub fn max_flow_detailed(&self) -> Result<(MaxFlowResult, Vec<i64>)> {
        let (result, cap) = self.run_dinic()?;
        let flows = (0..self.edges.len() / 2)
            .map(|k| self.edges[2 * k].cap - cap[2 * k])
            .collect();
        Ok((result, flows))
    }

    fn run_dinic(&self) -> Result<(MaxFlowResult, Vec<i64>)> {
        let total: i128 = self.edges.iter().map(|e| e.cap as i128).sum();
        if total > i64::MAX as i128 {
            return Err(Error::CapacityOverflow(format!(
                "total capacity {total} exceeds i64"
            )));
        }
        let mut cap: Vec<i64> = self.edges.iter().map(|e| e.cap).collect();
        let n = self.nodes.len();
        let (s, t) = (0usize, 1usize);
        let mut value = 0i64;
        loop {
            let mut level = vec![usize::MAX; n];
            level[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &idx in &self.adj[u] {
                    let v = self.edges[idx].to;
                    if cap[idx] > 0 && level[v] == usize::MAX {
                        level[v] = level[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            if level[t] == usize::MAX {
                break;
            }
            let mut it = vec![0usize; n];
            loop {
                let pushed = self.blocking_dfs(s, t, i64::MAX, &mut cap, &level, &mut it);
                if pushed == 0 {
                    break;
                }
                value += pushed;
            }
        }
        let mut reachable = BTreeSet::from([Node::S]);
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &idx in &self.adj[u] {
                let v = self.edges[idx].to;
                if cap[idx] > 0 && !seen[v] {
                    seen[v] = true;
                    reachable.insert(self.nodes[v]);
                    queue.push_back(v);
                }
            }
        }
        debug_assert!(!reachable.contains(&Node::T), "t reachable after max flow");
        debug_assert_eq!(self.cut_capacity(&reachable), value);
        Ok((MaxFlowResult { value, reachable }, cap))
    }

    fn blocking_dfs(
        &self,
        u: usize,
        t: usize,
        pushed: i64,
        cap: &mut [i64],
        level: &[usize],
        it: &mut [usize],
    ) -> i64 {
        if u == t {
            return pushed;
        }
        while it[u] < self.adj[u].len() {
            let idx = self.adj[u][it[u]];
            let v = self.edges[idx].to;
            if cap[idx] > 0 && level[v] == level[u] + 1 {
                let d = self.blocking_dfs(v, t, pushed.min(cap[idx]), cap, level, it);
                if d > 0 {
                    cap[idx] -= d;
                    cap[idx ^ 1] += d;
                    return d;
                }
            }
            it[u] += 1;
        }
        0
    }

    /// The residual-reachable side: independent of the particular maximum flow.
    pub fn minimal_min_cut(&self) -> Result<BTreeSet<Node>> {
        Ok(self.max_flow()?.reachable)
    }

    /// Exhaustive reference: the minimum cut value and the inclusion-minimal
    /// s-side attaining it (the intersection of all minimizing sides).
    pub fn brute_force_min_cut(&self) -> Result<(BTreeSet<Node>, i64)> {
        let inner: Vec<Node> = self.nodes[2..].to_vec();
        if inner.len() > 24 {
            return Err(Error::GroundSetTooLarge {
                n: inner.len(),
                limit: 24,
            });
        }
        let mut best: Option<(i64, BTreeSet<Node>)> = None;
        for mask in 0..1u64 << inner.len() {
            let mut side = BTreeSet::from([Node::S]);
            side.extend(
                inner
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, n)| *n),
            );
            let value = self.cut_capacity(&side);
            best = match best {
                None => Some((value, side)),
                Some((bv, bs)) => {
                    if value < bv {
                        Some((value, side))
                    } else if value == bv {
                        let inter: BTreeSet<Node> = bs.intersection(&side).copied().collect();
                        Some((bv, inter))
                    } else {
                        Some((bv, bs))
                    }
                }
            };
        }
        let (value, side) = best.unwrap();
        debug_assert_eq!(
            self.cut_capacity(&side),
            value,
            "min cuts close under intersection"
        );
        Ok((side, value))
    }
}

/// λ ↦ max{0, base + slope·λ}
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCap {
    pub slope: Rat,
    pub base: Rat,
}

impl LinearCap {
    pub fn value(&self, lam: &Rat) -> Rat {
        (&self.base + &self.slope * lam).max(Rat::zero())
    }
}

/// One arc's capacity: at most one clamped-affine part plus a constant shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcCap {
    pub linear: Option<LinearCap>,
    pub shift: Rat,
}

impl ArcCap {
    pub fn constant(c: Rat) -> Self {
        Self {
            linear: None,
            shift: c,
        }
    }

    pub fn parametric(slope: Rat, base: Rat) -> Self {
        Self {
            linear: Some(LinearCap { slope, base }),
            shift: Rat::zero(),
        }
    }

    pub fn value(&self, lam: &Rat) -> Rat {
        let lin = self
            .linear
            .as_ref()
            .map(|l| l.value(lam))
            .unwrap_or_else(Rat::zero);
        lin + &self.shift
    }

    fn structurally_zero(&self) -> bool {
        self.linear.is_none() && self.shift.is_zero()
    }

    fn merge(&mut self, other: &ArcCap) -> Result<()> {
        if let Some(lin) = &other.linear {
            if self.linear.is_some() {
                return Err(Error::InvalidNetwork(
                    "two parametric descriptors on one arc".into(),
                ));
            }
            self.linear = Some(lin.clone());
        }
        self.shift += &other.shift;
        Ok(())
    }
}

/// What a contraction folded away: inner vertices absorbed into the terminal,
/// stranded components deleted outright, and dropped s→t descriptors (whose
/// λ-value accounts for the capacity difference to the original network).
#[derive(Debug, Clone, Default)]
pub struct ContractLog {
    pub absorbed: Vec<usize>,
    pub deleted: Vec<usize>,
    pub dropped_st: Vec<ArcCap>,
}

impl ContractLog {
    pub fn dropped_value_at(&self, lam: &Rat) -> Rat {
        self.dropped_st.iter().map(|c| c.value(lam)).sum()
    }
}

/// s,t-network whose arcs carry `ArcCap` descriptors. Parametric parts are
/// restricted to arcs leaving s (nondecreasing in λ) and arcs entering t
/// (nonincreasing), which keeps minimal min cuts nested in λ.
#[derive(Debug, Clone)]
pub struct ParametricNetwork {
    inner: BTreeSet<usize>,
    arcs: BTreeMap<(Node, Node), ArcCap>,
    pub minor_of_input: bool,
}

impl ParametricNetwork {
    pub fn new(inner: impl IntoIterator<Item = usize>) -> Self {
        Self {
            inner: inner.into_iter().collect(),
            arcs: BTreeMap::new(),
            minor_of_input: false,
        }
    }

    pub fn inner(&self) -> &BTreeSet<usize> {
        &self.inner
    }

    pub fn vertex_count(&self) -> usize {
        self.inner.len() + 2
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (&(Node, Node), &ArcCap)> {
        self.arcs.iter()
    }

    fn node_exists(&self, n: Node) -> bool {
        match n {
            Node::S | Node::T => true,
            Node::V(id) => self.inner.contains(&id),
        }
    }

    fn check_endpoints(&self, from: Node, to: Node) -> Result<()> {
        if !self.node_exists(from) || !self.node_exists(to) {
            return Err(Error::InvalidNetwork(format!(
                "unknown endpoint on {from}→{to}"
            )));
        }
        if from == to {
            return Err(Error::InvalidNetwork(format!("self-loop on {from}")));
        }
        if (from, to) == (Node::S, Node::T) {
            return Err(Error::InvalidNetwork("direct s→t arc".into()));
        }
        Ok(())
    }

    pub fn add_const_arc(&mut self, from: Node, to: Node, cap: Rat) -> Result<()> {
        self.check_endpoints(from, to)?;
        if cap < Rat::zero() {
            return Err(Error::InvalidNetwork(format!(
                "negative capacity on {from}→{to}"
            )));
        }
        self.arcs
            .entry((from, to))
            .or_insert_with(|| ArcCap::constant(Rat::zero()))
            .shift += cap;
        Ok(())
    }

    pub fn add_parametric_arc(
        &mut self,
        from: Node,
        to: Node,
        slope: Rat,
        base: Rat,
    ) -> Result<()> {
        self.check_endpoints(from, to)?;
        let ok_side =
            (from == Node::S && slope >= Rat::zero()) || (to == Node::T && slope <= Rat::zero());
        if !ok_side {
            return Err(Error::InvalidNetwork(format!(
                "parametric arc {from}→{to} must leave s nondecreasing or enter t nonincreasing"
            )));
        }
        let entry = self
            .arcs
            .entry((from, to))
            .or_insert_with(|| ArcCap::constant(Rat::zero()));
        if entry.linear.is_some() {
            return Err(Error::InvalidNetwork(format!(
                "second parametric descriptor on {from}→{to}"
            )));
        }
        entry.linear = Some(LinearCap { slope, base });
        Ok(())
    }

    /// Smallest integer scale making every capacity integral at λ.
    pub fn natural_scale_at(&self, lam: &Rat) -> BigInt {
        let values: Vec<Rat> = self.arcs.values().map(|c| c.value(lam)).collect();
        if values.is_empty() {
            BigInt::one()
        } else {
            lcm_denoms(values.iter())
        }
    }

    /// Freeze the network at λ, capacities multiplied by `scale` (which must
    /// clear every denominator).
    pub fn evaluate_at(&self, lam: &Rat, scale: &BigInt) -> Result<FlowNetwork> {
        let mut net = FlowNetwork::new(self.inner.iter().copied());
        let scale_rat = Rat::from_integer(scale.clone());
        for ((from, to), cap) in &self.arcs {
            let v = cap.value(lam) * &scale_rat;
            if !v.is_integer() {
                return Err(Error::InvalidNetwork(format!(
                    "capacity {v} on {from}→{to} not integral at scale {scale}"
                )));
            }
            net.add_arc(*from, *to, to_i64(&v)?)?;
        }
        Ok(net)
    }

    /// Merge X into its terminal. On the t side, weakly-connected pieces of X
    /// (under arcs positive at `at`; structurally-nonzero ones when `at` is
    /// None) that don't reach t and receive no positive inflow from outside X
    /// are deleted instead of merged. Dropped s→t descriptors are logged.
    pub fn contract(&self, x: &BTreeSet<Node>, at: Option<&Rat>) -> Result<(Self, ContractLog)> {
        if x.is_empty() {
            return Err(Error::InvalidNetwork("empty contraction set".into()));
        }
        let has_s = x.contains(&Node::S);
        let has_t = x.contains(&Node::T);
        if has_s == has_t {
            return Err(Error::InvalidNetwork(
                "contraction set needs exactly one terminal".into(),
            ));
        }
        for n in x {
            if !self.node_exists(*n) {
                return Err(Error::InvalidNetwork(format!(
                    "unknown vertex {n} in contraction set"
                )));
            }
        }
        let terminal = if has_s { Node::S } else { Node::T };
        let positive = |cap: &ArcCap| match at {
            Some(lam) => cap.value(lam) > Rat::zero(),
            None => !cap.structurally_zero(),
        };

        let mut deleted: BTreeSet<usize> = BTreeSet::new();
        if has_t {
            // components of X under positive arcs, undirected
            let members: Vec<Node> = x.iter().copied().collect();
            let pos_of = |n: &Node| members.binary_search(n).ok();
            let mut adj = vec![Vec::new(); members.len()];
            for ((u, v), cap) in &self.arcs {
                if let (Some(i), Some(j)) = (pos_of(u), pos_of(v)) {
                    if positive(cap) {
                        adj[i].push(j);
                        adj[j].push(i);
                    }
                }
            }
            let mut comp = vec![usize::MAX; members.len()];
            for start in 0..members.len() {
                if comp[start] != usize::MAX {
                    continue;
                }
                comp[start] = start;
                let mut queue = VecDeque::from([start]);
                while let Some(i) = queue.pop_front() {
                    for &j in &adj[i] {
                        if comp[j] == usize::MAX {
                            comp[j] = start;
                            queue.push_back(j);
                        }
                    }
                }
            }
            let t_comp = comp[pos_of(&Node::T).unwrap()];
            let mut stranded: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for (i, n) in members.iter().enumerate() {
                if comp[i] != t_comp {
                    if let Node::V(id) = n {
                        stranded.entry(comp[i]).or_default().push(*id);
                    }
                }
            }
            for ids in stranded.values() {
                let no_inflow = !self.arcs.iter().any(|((u, v), cap)| {
                    !x.contains(u) && matches!(v, Node::V(id) if ids.contains(id)) && positive(cap)
                });
                if no_inflow {
                    deleted.extend(ids.iter().copied());
                }
            }
        }

        let map = |n: Node| -> Option<Node> {
            if matches!(n, Node::V(id) if deleted.contains(&id)) {
                None
            } else if x.contains(&n) {
                Some(terminal)
            } else {
                Some(n)
            }
        };
        let mut arcs: BTreeMap<(Node, Node), ArcCap> = BTreeMap::new();
        let mut dropped_st = Vec::new();
        for ((u, v), cap) in &self.arcs {
            let (Some(mu), Some(mv)) = (map(*u), map(*v)) else {
                continue;
            };
            if mu == mv {
                continue;
            }
            if (mu, mv) == (Node::S, Node::T) {
                dropped_st.push(cap.clone());
                continue;
            }
            match arcs.entry((mu, mv)) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(cap.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut e) => e.get_mut().merge(cap)?,
            }
        }
        let absorbed: Vec<usize> = x
            .iter()
            .filter_map(|n| match n {
                Node::V(id) if !deleted.contains(id) => Some(*id),
                _ => None,
            })
            .collect();
        let inner: BTreeSet<usize> = self
            .inner
            .iter()
            .copied()
            .filter(|id| !deleted.contains(id) && !x.contains(&Node::V(*id)))
            .collect();
        let minor = Self {
            inner,
            arcs,
            minor_of_input: true,
        };
        let log = ContractLog {
            absorbed,
            deleted: deleted.into_iter().collect(),
            dropped_st,
        };
        Ok((minor, log))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn diamond() -> FlowNetwork {
        let mut net = FlowNetwork::new([1, 2]);
        net.add_arc(Node::S, Node::V(1), 3).unwrap();
        net.add_arc(Node::S, Node::V(2), 2).unwrap();
        net.add_arc(Node::V(1), Node::T, 2).unwrap();
        net.add_arc(Node::V(2), Node::T, 3).unwrap();
        net
    }

    #[test]
    fn chain_value() {
        let mut net = FlowNetwork::new([1]);
        net.add_arc(Node::S, Node::V(1), 5).unwrap();
        net.add_arc(Node::V(1), Node::T, 5).unwrap();
        assert_eq!(net.max_flow().unwrap().value, 5);
    }

    #[test]
    fn diamond_flow_and_cut() {
        let res = diamond().max_flow().unwrap();
        assert_eq!(res.value, 4);
        assert_eq!(res.reachable, BTreeSet::from([Node::S, Node::V(1)]));
        let (bs, bv) = diamond().brute_force_min_cut().unwrap();
        assert_eq!((bs, bv), (res.reachable.clone(), 4));
        // minimality: no strict subset attains 4
        assert_eq!(diamond().cut_capacity(&BTreeSet::from([Node::S])), 5);
    }

    #[test]
    fn zero_bottleneck() {
        let mut net = FlowNetwork::new([1]);
        net.add_arc(Node::S, Node::V(1), 9).unwrap();
        net.add_arc(Node::V(1), Node::T, 0).unwrap();
        let res = net.max_flow().unwrap();
        assert_eq!(res.value, 0);
        assert_eq!(res.reachable, BTreeSet::from([Node::S, Node::V(1)]));
    }

    #[test]
    fn zero_network() {
        let net = FlowNetwork::new([1, 2]);
        let res = net.max_flow().unwrap();
        assert_eq!(res.value, 0);
        assert_eq!(res.reachable, BTreeSet::from([Node::S]));
    }

    #[test]
    fn st_arc_dropped_and_overflow_guarded() {
        let mut net = FlowNetwork::new([1]);
        net.add_arc(Node::S, Node::T, 100).unwrap();
        assert_eq!(net.arc_capacities().len(), 0);
        net.add_arc(Node::S, Node::V(1), i64::MAX).unwrap();
        net.add_arc(Node::V(1), Node::T, i64::MAX).unwrap();
        assert!(matches!(net.max_flow(), Err(Error::CapacityOverflow(_))));
        assert!(net.add_arc(Node::S, Node::V(1), -1).is_err());
        assert!(net.add_arc(Node::S, Node::V(7), 1).is_err());
    }

    #[test]
    fn evaluate_descriptor_examples() {
        let mut pnet = ParametricNetwork::new([1]);
        pnet.add_parametric_arc(Node::S, Node::V(1), int(1), int(0))
            .unwrap();
        let net = pnet.evaluate_at(&rat(3, 2), &BigInt::from(2)).unwrap();
        assert_eq!(net.arc_capacities(), vec![(Node::S, Node::V(1), 3)]);
        // clamped below zero
        let net = pnet.evaluate_at(&int(-5), &BigInt::one()).unwrap();
        assert_eq!(net.arc_capacities(), vec![(Node::S, Node::V(1), 0)]);

        let mut pnet = ParametricNetwork::new([1]);
        pnet.add_const_arc(Node::V(1), Node::T, int(7)).unwrap();
        let net = pnet.evaluate_at(&rat(9, 7), &BigInt::from(3)).unwrap();
        assert_eq!(net.arc_capacities(), vec![(Node::V(1), Node::T, 21)]);

        let mut pnet = ParametricNetwork::new([1]);
        pnet.add_parametric_arc(Node::V(1), Node::T, int(-1), int(0))
            .unwrap();
        pnet.add_const_arc(Node::V(1), Node::T, int(1)).unwrap();
        let net = pnet.evaluate_at(&int(-2), &BigInt::from(4)).unwrap();
        assert_eq!(net.arc_capacities(), vec![(Node::V(1), Node::T, 12)]);

        // fractional value at insufficient scale
        let mut pnet = ParametricNetwork::new([1]);
        pnet.add_const_arc(Node::S, Node::V(1), rat(1, 3)).unwrap();
        assert!(pnet.evaluate_at(&int(0), &BigInt::from(2)).is_err());
        assert_eq!(pnet.natural_scale_at(&int(0)), BigInt::from(3));
    }

    #[test]
    fn parametric_side_validation() {
        let mut pnet = ParametricNetwork::new([1, 2]);
        assert!(pnet
            .add_parametric_arc(Node::S, Node::V(1), int(-1), int(0))
            .is_err());
        assert!(pnet
            .add_parametric_arc(Node::V(1), Node::T, int(1), int(0))
            .is_err());
        assert!(pnet
            .add_parametric_arc(Node::V(1), Node::V(2), int(1), int(0))
            .is_err());
        assert!(pnet.add_const_arc(Node::S, Node::T, int(1)).is_err());
        assert!(pnet.add_const_arc(Node::V(1), Node::V(1), int(1)).is_err());
        assert!(pnet
            .add_parametric_arc(Node::S, Node::V(1), int(1), int(0))
            .is_ok());
        assert!(pnet
            .add_parametric_arc(Node::S, Node::V(1), int(2), int(0))
            .is_err());
    }

    fn diamond_pnet() -> ParametricNetwork {
        let mut pnet = ParametricNetwork::new([1, 2]);
        pnet.add_const_arc(Node::S, Node::V(1), int(3)).unwrap();
        pnet.add_const_arc(Node::S, Node::V(2), int(2)).unwrap();
        pnet.add_const_arc(Node::V(1), Node::T, int(2)).unwrap();
        pnet.add_const_arc(Node::V(2), Node::T, int(3)).unwrap();
        pnet
    }

    #[test]
    fn contract_s_side_diamond() {
        let (minor, log) = diamond_pnet()
            .contract(&BTreeSet::from([Node::S, Node::V(1)]), None)
            .unwrap();
        assert_eq!(minor.inner(), &BTreeSet::from([2]));
        assert!(minor.minor_of_input);
        assert_eq!(log.absorbed, vec![1]);
        assert_eq!(log.dropped_value_at(&int(0)), int(2));
        let net = minor.evaluate_at(&int(0), &BigInt::one()).unwrap();
        assert_eq!(net.max_flow().unwrap().value, 2);
    }

    #[test]
    fn contract_terminal_alone_is_identity() {
        let pnet = diamond_pnet();
        let (minor, log) = pnet.contract(&BTreeSet::from([Node::T]), None).unwrap();
        assert_eq!(minor.inner(), pnet.inner());
        assert_eq!(minor.arc_count(), pnet.arc_count());
        assert!(log.absorbed.is_empty() && log.deleted.is_empty() && log.dropped_st.is_empty());
    }

    #[test]
    fn contract_merges_parallel_descriptors() {
        let mut pnet = ParametricNetwork::new([1, 2]);
        pnet.add_parametric_arc(Node::V(1), Node::T, int(-1), int(5))
            .unwrap();
        pnet.add_const_arc(Node::V(1), Node::T, int(1)).unwrap();
        pnet.add_const_arc(Node::V(1), Node::V(2), int(2)).unwrap();
        pnet.add_const_arc(Node::V(2), Node::T, int(9)).unwrap();
        let (minor, _) = pnet
            .contract(&BTreeSet::from([Node::T, Node::V(2)]), Some(&int(0)))
            .unwrap();
        let merged = minor
            .arcs()
            .find(|((u, v), _)| (*u, *v) == (Node::V(1), Node::T))
            .unwrap()
            .1;
        assert_eq!(
            merged,
            &ArcCap {
                linear: Some(LinearCap {
                    slope: int(-1),
                    base: int(5)
                }),
                shift: int(3)
            }
        );
    }

    #[test]
    fn contract_deletes_stranded_component() {
        let mut pnet = ParametricNetwork::new([1, 2]);
        pnet.add_const_arc(Node::S, Node::V(1), int(3)).unwrap();
        pnet.add_const_arc(Node::V(1), Node::T, int(1)).unwrap();
        // inflow to 2 is max{0, λ−2}: zero at λ=0, positive at λ=5
        pnet.add_parametric_arc(Node::S, Node::V(2), int(1), int(-2))
            .unwrap();

        let x = BTreeSet::from([Node::T, Node::V(2)]);
        let (minor, log) = pnet.contract(&x, Some(&int(0))).unwrap();
        assert_eq!(log.deleted, vec![2]);
        assert_eq!(minor.inner(), &BTreeSet::from([1]));
        assert!(log.dropped_st.is_empty());

        let (minor, log) = pnet.contract(&x, Some(&int(5))).unwrap();
        assert!(log.deleted.is_empty());
        assert_eq!(minor.inner(), &BTreeSet::from([1]));
        assert_eq!(log.dropped_value_at(&int(5)), int(3));
    }

    #[test]
    fn contract_rejects_bad_sets() {
        let pnet = diamond_pnet();
        assert!(pnet.contract(&BTreeSet::new(), None).is_err());
        assert!(pnet.contract(&BTreeSet::from([Node::V(1)]), None).is_err());
        assert!(pnet
            .contract(&BTreeSet::from([Node::S, Node::T]), None)
            .is_err());
        assert!(pnet
            .contract(&BTreeSet::from([Node::S, Node::V(9)]), None)
            .is_err());
    }

    #[test]
    fn contraction_preserves_cut_values() {
        // parametric diamond: s-arcs grow, t-arcs shrink
        let mut pnet = ParametricNetwork::new([1, 2]);
        pnet.add_parametric_arc(Node::S, Node::V(1), int(1), int(1))
            .unwrap();
        pnet.add_parametric_arc(Node::S, Node::V(2), int(2), int(0))
            .unwrap();
        pnet.add_parametric_arc(Node::V(1), Node::T, int(-1), int(4))
            .unwrap();
        pnet.add_const_arc(Node::V(2), Node::T, int(3)).unwrap();
        pnet.add_const_arc(Node::V(1), Node::V(2), int(1)).unwrap();

        let lam = int(1);
        let scale = pnet.natural_scale_at(&lam);
        let s_lam = pnet
            .evaluate_at(&lam, &scale)
            .unwrap()
            .minimal_min_cut()
            .unwrap();
        let (minor, log) = pnet.contract(&s_lam, Some(&lam)).unwrap();
        for k in 1..=4 {
            // λ' ≥ λ keeps the s-side contraction exact
            let lam2 = int(k);
            let scale2 = pnet.natural_scale_at(&lam2);
            let orig = pnet
                .evaluate_at(&lam2, &scale2)
                .unwrap()
                .max_flow()
                .unwrap()
                .value;
            let mino = minor
                .evaluate_at(&lam2, &scale2)
                .unwrap()
                .max_flow()
                .unwrap()
                .value;
            let dropped = log.dropped_value_at(&lam2) * Rat::from_integer(scale2.clone());
            assert_eq!(int(orig), int(mino) + dropped);
        }
    }
}
