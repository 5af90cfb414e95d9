//! Capacity-aware Hungarian method on the expanded graph.
//!
//! Each phase roots an alternating tree at an X vertex with spare capacity
//! and grows it through the equality graph until it reaches a Y vertex with
//! spare capacity, adjusting the dual labels by the minimum slack whenever
//! the tree gets stuck. Every phase adds exactly one expanded edge.
//!
//! Since a vertex may hold several matched edges, a vertex in `S` can be
//! matched to a vertex outside `T`. Lowering its label then pushes that
//! matched edge below its profit, so labels are only guaranteed to satisfy
//! `l(x) + l(y) ≥ p(x, y)` on unmatched edges and `l(x) + l(y) ≤ p(x, y)`
//! on matched ones. A matched edge `(x, y)` with `y ∈ T` lets the tree
//! enter `x` once its backward slack `p − l(x) − l(y)` reaches zero; when
//! every matched edge is tight this is the plain "add all partners of `y`"
//! step.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Infeasibility, MmdcError, Result};
use crate::graph::{build_expanded_graph, ExpandedGraph, VertexId};
use crate::model::{evaluate_cost, Instance, Solution};

/// Slack sentinel for vertices with no edge into the tree.
const INF: i64 = i64::MAX;

/// Full label re-scans after every update are done in debug builds on
/// graphs up to this many vertex pairs.
const DEBUG_SCAN_LIMIT: usize = 2_500;

/// Dual labels over the dense X and Y indices of an [`ExpandedGraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    pub x: Vec<i64>,
    pub y: Vec<i64>,
}

impl Labeling {
    pub fn get(&self, g: &ExpandedGraph, v: VertexId) -> i64 {
        if v.class.is_x() {
            self.x[g.x_index(v)]
        } else {
            self.y[g.y_index(v)]
        }
    }

    /// `l(x) + l(y) ≥ p(x, y)` on every edge, matched or not.
    pub fn is_feasible(&self, g: &ExpandedGraph) -> bool {
        g.edges().all(|(x, y, p)| self.x[x] + self.y[y] >= p)
    }

    /// `l(x) + l(y) ≥ p` on unmatched edges and `≤ p` on matched ones.
    pub fn is_feasible_for(&self, g: &ExpandedGraph, m: &MatchState) -> bool {
        g.edges().all(|(x, y, p)| {
            let sum = self.x[x] + self.y[y];
            if m.contains(x, y) {
                sum <= p
            } else {
                sum >= p
            }
        })
    }

    fn element_count(&self) -> usize {
        self.x.len() + self.y.len()
    }
}

/// Initial labels: every Y vertex (C included) at 0 and every X vertex at
/// the largest profit among its edges.
pub fn initial_labeling(g: &ExpandedGraph) -> Labeling {
    let x = (0..g.nx())
        .map(|xi| {
            g.adjacent(xi)
                .filter_map(|y| g.profit_at(xi, y))
                .max()
                .unwrap_or(0)
        })
        .collect();
    Labeling {
        x,
        y: vec![0; g.ny()],
    }
}

/// The current expanded matching. Each expanded edge appears at most once;
/// the degree of a vertex is its `Num` counter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchState {
    mates_x: Vec<Vec<usize>>,
    mates_y: Vec<Vec<usize>>,
    size: u64,
}

impl MatchState {
    pub fn new(g: &ExpandedGraph) -> Self {
        Self {
            mates_x: vec![Vec::new(); g.nx()],
            mates_y: vec![Vec::new(); g.ny()],
            size: 0,
        }
    }

    /// Builds a matching from explicit edges, rejecting non-edges,
    /// duplicates and capacity overflows.
    pub fn from_edges(g: &ExpandedGraph, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut m = Self::new(g);
        for &(xv, yv) in edges {
            if !xv.class.is_x() || yv.class.is_x() || !g.contains(xv) || !g.contains(yv) {
                return Err(MmdcError::Contract(format!(
                    "({xv}, {yv}) is not an X-Y pair"
                )));
            }
            let (x, y) = (g.x_index(xv), g.y_index(yv));
            if g.profit_at(x, y).is_none() {
                return Err(MmdcError::Contract(format!("({xv}, {yv}) is not an edge")));
            }
            if m.contains(x, y) {
                return Err(MmdcError::Contract(format!("({xv}, {yv}) listed twice")));
            }
            if m.num_x(x) >= g.cap_x()[x] || m.num_y(y) >= g.cap_y()[y] {
                return Err(MmdcError::Contract(format!(
                    "({xv}, {yv}) exceeds a capacity"
                )));
            }
            m.insert(x, y);
        }
        Ok(m)
    }

    pub fn num_x(&self, x: usize) -> u32 {
        self.mates_x[x].len() as u32
    }

    pub fn num_y(&self, y: usize) -> u32 {
        self.mates_y[y].len() as u32
    }

    pub fn num(&self, g: &ExpandedGraph, v: VertexId) -> u32 {
        if v.class.is_x() {
            self.num_x(g.x_index(v))
        } else {
            self.num_y(g.y_index(v))
        }
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.mates_x[x].contains(&y)
    }

    /// Dense Y indices matched to `x`.
    pub fn mates_of_x(&self, x: usize) -> &[usize] {
        &self.mates_x[x]
    }

    /// Dense X indices matched to `y`.
    pub fn mates_of_y(&self, y: usize) -> &[usize] {
        &self.mates_y[y]
    }

    /// Number of matched expanded edges.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// All matched edges as `(x, y)` dense pairs, ordered by x then y.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .mates_x
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y)))
            .collect();
        out.sort_unstable();
        out
    }

    fn insert(&mut self, x: usize, y: usize) {
        self.mates_x[x].push(y);
        self.mates_y[y].push(x);
        self.size += 1;
    }

    fn remove(&mut self, x: usize, y: usize) -> bool {
        let Some(px) = self.mates_x[x].iter().position(|&v| v == y) else {
            return false;
        };
        self.mates_x[x].swap_remove(px);
        let py = self.mates_y[y]
            .iter()
            .position(|&v| v == x)
            .expect("mate lists in sync");
        self.mates_y[y].swap_remove(py);
        self.size -= 1;
        true
    }

    fn element_count(&self) -> usize {
        self.mates_x.len() + self.mates_y.len() + 2 * self.size as usize
    }
}

/// True when `v` has fewer matched edges than its capacity.
pub fn is_free(g: &ExpandedGraph, m: &MatchState, v: VertexId) -> bool {
    m.num(g, v) < g.cap(v)
}

/// The alternating tree of one phase.
#[derive(Debug, Clone)]
pub struct AlternatingTree {
    root: usize,
    in_s: Vec<bool>,
    in_t: Vec<bool>,
    s_list: Vec<usize>,
    t_list: Vec<usize>,
    /// `min_{x ∈ S, (x,y) ∉ M} l(x) + l(y) − p(x, y)` for `y ∉ T`.
    slack_y: Vec<i64>,
    via_y: Vec<usize>,
    /// `min_{y ∈ T, (x,y) ∈ M} p(x, y) − l(x) − l(y)` for `x ∉ S`.
    slack_x: Vec<i64>,
    via_x: Vec<usize>,
    /// scratch marks for the mates of a vertex joining S
    mark: Vec<bool>,
}

impl AlternatingTree {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn in_s(&self, x: usize) -> bool {
        self.in_s[x]
    }

    pub fn in_t(&self, y: usize) -> bool {
        self.in_t[y]
    }

    /// Dense X indices of S in insertion order.
    pub fn s_members(&self) -> &[usize] {
        &self.s_list
    }

    /// Dense Y indices of T in insertion order.
    pub fn t_members(&self) -> &[usize] {
        &self.t_list
    }

    /// Current slack of a vertex outside the tree; `None` if it has no
    /// usable edge into the tree or is already inside it.
    pub fn slack(&self, g: &ExpandedGraph, v: VertexId) -> Option<i64> {
        let (inside, value) = if v.class.is_x() {
            let k = g.x_index(v);
            (self.in_s[k], self.slack_x[k])
        } else {
            let k = g.y_index(v);
            (self.in_t[k], self.slack_y[k])
        };
        (!inside && value != INF).then_some(value)
    }

    fn element_count(&self) -> usize {
        self.in_s.len() * 4
            + self.in_t.len() * 4
            + self.s_list.capacity()
            + self.t_list.capacity()
            + self.mark.len()
    }

    fn add_x(&mut self, g: &ExpandedGraph, l: &Labeling, m: &MatchState, x: usize) {
        debug_assert!(!self.in_s[x]);
        self.in_s[x] = true;
        self.s_list.push(x);
        for &y in m.mates_of_x(x) {
            self.mark[y] = true;
        }
        for y in g.adjacent(x) {
            if self.in_t[y] || self.mark[y] {
                continue;
            }
            let p = g.profit_at(x, y).expect("adjacent");
            let slack = l.x[x] + l.y[y] - p;
            debug_assert!(slack >= 0, "unmatched edge below profit");
            if slack < self.slack_y[y] {
                self.slack_y[y] = slack;
                self.via_y[y] = x;
            }
        }
        for &y in m.mates_of_x(x) {
            self.mark[y] = false;
        }
    }

    /// Puts `y` into T and returns the partners of `y` that can now enter S
    /// through a tight matched edge.
    fn add_y(&mut self, g: &ExpandedGraph, l: &Labeling, m: &MatchState, y: usize) -> Vec<usize> {
        debug_assert!(!self.in_t[y]);
        self.in_t[y] = true;
        self.t_list.push(y);
        let mut tight = Vec::new();
        for &x in m.mates_of_y(y) {
            if self.in_s[x] {
                continue;
            }
            let p = g.profit_at(x, y).expect("matched edge");
            let back = p - l.x[x] - l.y[y];
            debug_assert!(back >= 0, "matched edge above profit");
            if back < self.slack_x[x] {
                self.slack_x[x] = back;
                self.via_x[x] = y;
            }
            if back == 0 {
                tight.push(x);
            }
        }
        tight.sort_unstable();
        tight
    }
}

/// Starts a phase: `S = {root}`, `T = ∅`, slacks from the root's unmatched
/// edges.
pub fn tree_init(
    g: &ExpandedGraph,
    l: &Labeling,
    m: &MatchState,
    root: VertexId,
) -> Result<AlternatingTree> {
    if !root.class.is_x() || !g.contains(root) {
        return Err(MmdcError::Contract(format!(
            "tree root {root} is not an X vertex"
        )));
    }
    if !is_free(g, m, root) {
        return Err(MmdcError::Contract(format!(
            "tree root {root} has no spare capacity"
        )));
    }
    let (nx, ny) = (g.nx(), g.ny());
    let mut tree = AlternatingTree {
        root: g.x_index(root),
        in_s: vec![false; nx],
        in_t: vec![false; ny],
        s_list: Vec::with_capacity(nx),
        t_list: Vec::with_capacity(ny),
        slack_y: vec![INF; ny],
        via_y: vec![usize::MAX; ny],
        slack_x: vec![INF; nx],
        via_x: vec![usize::MAX; nx],
        mark: vec![false; ny],
    };
    tree.add_x(g, l, m, tree.root);
    Ok(tree)
}

/// Minimum slack over vertices outside the tree, with the lowest vertex (in
/// [`VertexId`] order) attaining it.
///
/// When no vertex outside the tree has a usable edge into it, the root can
/// never be saturated; the error carries S as a Hall violator.
pub fn compute_alpha_l(g: &ExpandedGraph, tree: &AlternatingTree) -> Result<(i64, VertexId)> {
    let mut best = INF;
    let mut arg = None;
    // dense X order is A then A′, dense Y order is B, B′, C: the VertexId order
    for x in 0..g.nx() {
        if !tree.in_s[x] && tree.slack_x[x] < best {
            best = tree.slack_x[x];
            arg = Some(g.x_vertex(x));
        }
    }
    for y in 0..g.ny() {
        if !tree.in_t[y] && tree.slack_y[y] < best {
            best = tree.slack_y[y];
            arg = Some(g.y_vertex(y));
        }
    }
    match arg {
        Some(v) => Ok((best, v)),
        None => Err(MmdcError::Infeasible(hall_violation(g, tree))),
    }
}

fn hall_violation(g: &ExpandedGraph, tree: &AlternatingTree) -> Infeasibility {
    let mut hall_set: Vec<VertexId> = tree.s_list.iter().map(|&x| g.x_vertex(x)).collect();
    hall_set.sort_unstable();
    let demand = tree.s_list.iter().map(|&x| u64::from(g.cap_x()[x])).sum();
    let mut deg = vec![0u64; g.ny()];
    for &x in &tree.s_list {
        for y in g.adjacent(x) {
            deg[y] += 1;
        }
    }
    let supply = deg
        .iter()
        .zip(g.cap_y())
        .map(|(&d, &c)| d.min(u64::from(c)))
        .sum();
    Infeasibility {
        root: g.x_vertex(tree.root),
        hall_set,
        demand,
        supply,
        swapped: g.swapped(),
    }
}

/// Lowers S labels and raises T labels by `alpha`, shifting every outside
/// slack down by the same amount. Tree edges keep their sums.
pub fn update_labels(l: &mut Labeling, tree: &mut AlternatingTree, alpha: i64) {
    debug_assert!(alpha >= 0);
    if alpha == 0 {
        return;
    }
    for &x in &tree.s_list {
        l.x[x] -= alpha;
    }
    for &y in &tree.t_list {
        l.y[y] += alpha;
    }
    for (y, slack) in tree.slack_y.iter_mut().enumerate() {
        if !tree.in_t[y] && *slack != INF {
            *slack -= alpha;
        }
    }
    for (x, slack) in tree.slack_x.iter_mut().enumerate() {
        if !tree.in_s[x] && *slack != INF {
            *slack -= alpha;
        }
    }
}

/// A path `x0, y1, x1, y2, …, yk` from the root to a Y vertex with spare
/// capacity; `(x_{i}, y_{i+1})` are unmatched and `(x_i, y_i)` matched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentingPath {
    pub vertices: Vec<VertexId>,
}

impl AugmentingPath {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

impl fmt::Display for AugmentingPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.vertices.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Result of one [`grow_or_augment`] step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// Labels moved by `alpha`; `witness` now has zero slack.
    LabelsUpdated {
        alpha: i64,
        witness: VertexId,
    },
    /// The given vertices joined the tree.
    Extended(Vec<VertexId>),
    Augment(AugmentingPath),
}

/// One step of a phase: a label update if no tight edge leaves the tree,
/// otherwise growth through the lowest zero-slack vertex, or the augmenting
/// path if that vertex is a Y vertex with spare capacity.
pub fn grow_or_augment(
    g: &ExpandedGraph,
    l: &mut Labeling,
    m: &MatchState,
    tree: &mut AlternatingTree,
) -> Result<Step> {
    let (alpha, witness) = compute_alpha_l(g, tree)?;
    if alpha > 0 {
        update_labels(l, tree, alpha);
        return Ok(Step::LabelsUpdated { alpha, witness });
    }
    if witness.class.is_x() {
        let x = g.x_index(witness);
        tree.add_x(g, l, m, x);
        return Ok(Step::Extended(vec![witness]));
    }
    let y = g.y_index(witness);
    if m.num_y(y) < g.cap_y()[y] {
        return Ok(Step::Augment(trace_path(g, tree, y)));
    }
    let mut joined = vec![witness];
    for x in tree.add_y(g, l, m, y) {
        tree.add_x(g, l, m, x);
        joined.push(g.x_vertex(x));
    }
    Ok(Step::Extended(joined))
}

fn trace_path(g: &ExpandedGraph, tree: &AlternatingTree, end: usize) -> AugmentingPath {
    let mut rev = vec![g.y_vertex(end)];
    let mut x = tree.via_y[end];
    rev.push(g.x_vertex(x));
    while x != tree.root {
        let y = tree.via_x[x];
        rev.push(g.y_vertex(y));
        x = tree.via_y[y];
        rev.push(g.x_vertex(x));
    }
    rev.reverse();
    AugmentingPath { vertices: rev }
}

/// Flips an augmenting path: its unmatched edges enter M, its matched edges
/// leave. The matching grows by one edge.
pub fn augment(g: &ExpandedGraph, m: &mut MatchState, path: &AugmentingPath) -> Result<()> {
    let vs = &path.vertices;
    let bad = |why: &str| {
        Err(MmdcError::Contract(format!(
            "malformed augmenting path [{path}]: {why}"
        )))
    };
    if vs.len() < 2 || !vs.len().is_multiple_of(2) {
        return bad("needs an even number of vertices");
    }
    let mut dense = Vec::with_capacity(vs.len());
    for (k, &v) in vs.iter().enumerate() {
        if v.class.is_x() != (k % 2 == 0) || !g.contains(v) {
            return bad("vertices must alternate X, Y");
        }
        dense.push(if k % 2 == 0 {
            g.x_index(v)
        } else {
            g.y_index(v)
        });
    }
    let (first, last) = (dense[0], dense[dense.len() - 1]);
    if m.num_x(first) >= g.cap_x()[first] || m.num_y(last) >= g.cap_y()[last] {
        return bad("endpoints need spare capacity");
    }
    for k in 0..dense.len() - 1 {
        let (x, y) = if k % 2 == 0 {
            (dense[k], dense[k + 1])
        } else {
            (dense[k + 1], dense[k])
        };
        if g.profit_at(x, y).is_none() {
            return bad("uses a non-edge");
        }
        let should_be_matched = k % 2 == 1;
        if m.contains(x, y) != should_be_matched {
            return bad("edges must alternate unmatched, matched");
        }
    }
    for k in (0..dense.len() - 1).rev() {
        if k % 2 == 0 {
            m.insert(dense[k], dense[k + 1]);
        } else {
            m.remove(dense[k + 1], dense[k]);
        }
    }
    Ok(())
}

/// Detail behind [`certificate_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateReport {
    /// `l(x) + l(y) ≥ p` on every unmatched edge.
    pub unmatched_feasible: bool,
    /// `l(x) + l(y) ≤ p` on every matched edge.
    pub matched_within_profit: bool,
    /// Every vertex has as many matched edges as its capacity.
    pub saturated: bool,
    /// Every matched edge tight and every edge feasible: the certificate
    /// without edge duals. Not attainable for every instance.
    pub strictly_tight: bool,
    pub primal_profit: i64,
    /// `Σ_v cap(v)·l(v) + Σ_{e ∈ M} (p_e − l(x) − l(y))`.
    pub dual_bound: i64,
}

impl CertificateReport {
    pub fn holds(&self) -> bool {
        self.unmatched_feasible
            && self.matched_within_profit
            && self.saturated
            && self.primal_profit == self.dual_bound
    }
}

/// Optimality certificate for a saturating matching: with edge duals
/// `z_e = p_e − l(x) − l(y)` on matched edges and 0 elsewhere, the labels are
/// dual feasible and complementary slackness holds, so no saturating
/// matching has larger profit.
pub fn certificate_report(g: &ExpandedGraph, l: &Labeling, m: &MatchState) -> CertificateReport {
    let mut unmatched_feasible = true;
    let mut matched_within_profit = true;
    let mut strictly_tight = true;
    let mut primal = 0i64;
    let mut edge_duals = 0i64;
    for (x, y, p) in g.edges() {
        let sum = l.x[x] + l.y[y];
        if m.contains(x, y) {
            primal += p;
            edge_duals += p - sum;
            matched_within_profit &= sum <= p;
            strictly_tight &= sum == p;
        } else {
            unmatched_feasible &= sum >= p;
        }
    }
    strictly_tight &= unmatched_feasible;
    let saturated = (0..g.nx()).all(|x| m.num_x(x) == g.cap_x()[x])
        && (0..g.ny()).all(|y| m.num_y(y) == g.cap_y()[y]);
    let vertex_duals: i64 = (0..g.nx())
        .map(|x| i64::from(g.cap_x()[x]) * l.x[x])
        .chain((0..g.ny()).map(|y| i64::from(g.cap_y()[y]) * l.y[y]))
        .sum();
    CertificateReport {
        unmatched_feasible,
        matched_within_profit,
        saturated,
        strictly_tight,
        primal_profit: primal,
        dual_bound: vertex_duals + edge_duals,
    }
}

pub fn certificate_check(g: &ExpandedGraph, l: &Labeling, m: &MatchState) -> bool {
    certificate_report(g, l, m).holds()
}

/// Original-pair multiplicities of an expanded matching; A′–C edges are
/// dropped and a side swap is undone.
pub fn extract_original_matching(
    g: &ExpandedGraph,
    m: &MatchState,
) -> BTreeMap<(usize, usize), u32> {
    let mut out = BTreeMap::new();
    for (x, y) in m.edges() {
        if let Some(pair) = g.original_pair(x, y) {
            *out.entry(pair).or_insert(0) += 1;
        }
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub augmentations: u64,
    pub label_updates: u64,
    pub tree_extensions: u64,
    /// Augmenting-path vertex count -> number of phases.
    pub path_lengths: BTreeMap<usize, u64>,
    /// Peak element count of labels, slacks, witnesses, counters and tree
    /// arrays (the cost matrix excluded).
    pub aux_elements: usize,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveOptions {
    /// Shuffle the root scan order with this seed instead of A ascending
    /// then A′ ascending.
    pub root_seed: Option<u64>,
}

/// Phase-level progress for `--trace`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceEvent {
    Phase { phase: u64, root: VertexId },
    LabelUpdate { alpha: i64, witness: VertexId },
    Augment { path: AugmentingPath },
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceEvent::Phase { phase, root } => write!(f, "event=phase phase={phase} root={root}"),
            TraceEvent::LabelUpdate { alpha, witness } => {
                write!(f, "event=label_update alpha={alpha} witness={witness}")
            }
            TraceEvent::Augment { path } => {
                write!(
                    f,
                    "event=augment path_len={} path={}",
                    path.len(),
                    path.vertices
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            }
        }
    }
}

/// Final state of a solve on the expanded graph.
#[derive(Debug, Clone)]
pub struct ExpandedRun {
    pub labeling: Labeling,
    pub matching: MatchState,
    pub stats: SolveStats,
}

/// Runs the Hungarian main loop on an already built graph until every X
/// vertex is saturated.
pub fn solve_expanded(
    g: &ExpandedGraph,
    opts: &SolveOptions,
    trace: &mut dyn FnMut(&TraceEvent),
) -> Result<ExpandedRun> {
    let started = Instant::now();
    let mut l = initial_labeling(g);
    let mut m = MatchState::new(g);
    let mut stats = SolveStats::default();
    let debug_scan = cfg!(debug_assertions) && g.nx() * g.ny() <= DEBUG_SCAN_LIMIT;

    let mut roots: Vec<usize> = (0..g.nx()).collect();
    if let Some(seed) = opts.root_seed {
        roots.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }

    for &root in &roots {
        while m.num_x(root) < g.cap_x()[root] {
            let root_v = g.x_vertex(root);
            trace(&TraceEvent::Phase {
                phase: stats.augmentations + 1,
                root: root_v,
            });
            let mut tree = tree_init(g, &l, &m, root_v)?;
            loop {
                match grow_or_augment(g, &mut l, &m, &mut tree)? {
                    Step::LabelsUpdated { alpha, witness } => {
                        stats.label_updates += 1;
                        trace(&TraceEvent::LabelUpdate { alpha, witness });
                        if debug_scan {
                            debug_assert!(
                                l.is_feasible_for(g, &m),
                                "labels infeasible after update"
                            );
                        }
                    }
                    Step::Extended(_) => stats.tree_extensions += 1,
                    Step::Augment(path) => {
                        augment(g, &mut m, &path)?;
                        stats.augmentations += 1;
                        *stats.path_lengths.entry(path.len()).or_insert(0) += 1;
                        trace(&TraceEvent::Augment { path });
                        break;
                    }
                }
            }
            let aux = l.element_count() + m.element_count() + tree.element_count() + roots.len();
            stats.aux_elements = stats.aux_elements.max(aux);
        }
    }
    stats.elapsed = started.elapsed();
    Ok(ExpandedRun {
        labeling: l,
        matching: m,
        stats,
    })
}

/// Minimum-cost matching of `inst` with default options.
pub fn solve_mmdc(inst: &Instance) -> Result<Solution> {
    solve_mmdc_with(inst, &SolveOptions::default(), &mut |_| {})
}

/// Validates, builds the expanded graph, runs the solver and maps the
/// result back to original pairs.
pub fn solve_mmdc_with(
    inst: &Instance,
    opts: &SolveOptions,
    trace: &mut dyn FnMut(&TraceEvent),
) -> Result<Solution> {
    solve_mmdc_certified(inst, opts, trace).map(|(sol, _)| sol)
}

/// As [`solve_mmdc_with`], also returning the optimality certificate of the
/// final labels and matching.
pub fn solve_mmdc_certified(
    inst: &Instance,
    opts: &SolveOptions,
    trace: &mut dyn FnMut(&TraceEvent),
) -> Result<(Solution, CertificateReport)> {
    let g = build_expanded_graph(inst)?;
    let run = solve_expanded(&g, opts, trace)?;
    let cert = certificate_report(&g, &run.labeling, &run.matching);
    debug_assert!(cert.holds());
    let mut sol = Solution {
        multiplicities: extract_original_matching(&g, &run.matching),
        total_cost: 0,
        stats: run.stats,
    };
    sol.total_cost = evaluate_cost(inst, &sol)?;
    Ok((sol, cert))
}
