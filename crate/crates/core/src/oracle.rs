//! Exhaustive ground-truth solvers for small instances.
//!
//! Nothing here shares code with the Hungarian solver: the expanded oracle
//! reads original costs straight from the instance and the declared oracle
//! never looks at the expanded graph at all.

use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use crate::error::{MmdcError, Result};
use crate::graph::{ExpandedGraph, VertexId};
use crate::model::{Instance, MAX_PAIR_MULTIPLICITY};
use crate::solver::solve_mmdc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    /// Search nodes (choices tried) before refusing.
    pub max_states: u64,
    pub timeout: Option<Duration>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_states: 20_000_000,
            timeout: Some(Duration::from_secs(30)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleSolution {
    pub cost: u64,
    pub multiplicities: BTreeMap<(usize, usize), u32>,
    /// The expanded edges of the witness; empty for the declared oracle.
    pub expanded_edges: Vec<(VertexId, VertexId)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    Optimal(OracleSolution),
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub verdict: OracleVerdict,
    pub explored: u64,
}

impl OracleResult {
    pub fn cost(&self) -> Option<u64> {
        match &self.verdict {
            OracleVerdict::Optimal(s) => Some(s.cost),
            OracleVerdict::Infeasible => None,
        }
    }
}

struct Meter {
    explored: u64,
    budget: OracleBudget,
    started: Instant,
}

impl Meter {
    fn new(budget: OracleBudget) -> Self {
        Self {
            explored: 0,
            budget,
            started: Instant::now(),
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.explored += 1;
        let over_time = self.explored.is_multiple_of(4096)
            && self
                .budget
                .timeout
                .is_some_and(|limit| self.started.elapsed() > limit);
        if self.explored > self.budget.max_states || over_time {
            return Err(MmdcError::BudgetExceeded {
                explored: self.explored,
                limit: self.budget.max_states,
            });
        }
        Ok(())
    }
}

/// Minimum-cost saturating b-matching of the expanded graph by exhaustive
/// search. X vertices are visited in ascending dense order.
pub fn oracle_expanded(g: &ExpandedGraph, budget: OracleBudget) -> Result<OracleResult> {
    let order: Vec<usize> = (0..g.nx()).collect();
    oracle_expanded_with_order(g, budget, &order)
}

/// As [`oracle_expanded`] with an explicit visiting order over dense X
/// indices (must be a permutation of `0..nx`).
pub fn oracle_expanded_with_order(
    g: &ExpandedGraph,
    budget: OracleBudget,
    order: &[usize],
) -> Result<OracleResult> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..g.nx()).collect::<Vec<_>>() {
        return Err(MmdcError::Contract(
            "visiting order must permute the X vertices".into(),
        ));
    }
    let mut search = ExpandedSearch::new(g, order, budget);
    let start = search.start_state();
    let best = search.best(0, &start)?;
    let verdict = match best {
        None => OracleVerdict::Infeasible,
        Some(cost) => OracleVerdict::Optimal(search.witness(start, cost)),
    };
    Ok(OracleResult {
        verdict,
        explored: search.meter.explored,
    })
}

/// Residual capacities of B ∪ B′ (dense, first 2t entries) followed by the
/// number of unused C slots. C vertices are interchangeable (capacity 1,
/// cost 0, adjacent to every A′), so only their count matters.
type ResidualState = Vec<u32>;

struct ExpandedSearch<'g> {
    g: &'g ExpandedGraph,
    order: Vec<usize>,
    memo: HashMap<(usize, ResidualState), Option<u64>>,
    meter: Meter,
}

impl<'g> ExpandedSearch<'g> {
    fn new(g: &'g ExpandedGraph, order: &[usize], budget: OracleBudget) -> Self {
        Self {
            g,
            order: order.to_vec(),
            memo: HashMap::new(),
            meter: Meter::new(budget),
        }
    }

    fn start_state(&self) -> ResidualState {
        let t2 = 2 * self.g.t();
        let mut st: Vec<u32> = self.g.cap_y()[..t2].to_vec();
        st.push(self.g.h() as u32);
        st
    }

    /// Original cost of a non-C expanded edge.
    fn edge_cost(&self, x: usize, y: usize) -> u64 {
        let inst = self.g.instance();
        inst.weight(x % self.g.s(), y % self.g.t())
    }

    /// Non-C Y neighbours of dense X index `x`.
    fn real_neighbours(&self, x: usize) -> Vec<usize> {
        let t = self.g.t();
        if x < self.g.s() {
            (0..2 * t).collect()
        } else {
            (0..t).collect()
        }
    }

    fn touches_c(&self, x: usize) -> bool {
        x >= self.g.s()
    }

    /// Every way for `x` to take exactly cap(x) edges: a subset of its real
    /// neighbours with spare capacity, topped up from the C pool.
    fn choices(&self, x: usize, st: &ResidualState) -> Vec<(Vec<usize>, u32)> {
        let need = self.g.cap_x()[x] as usize;
        let pool = if self.touches_c(x) {
            *st.last().unwrap() as usize
        } else {
            0
        };
        let open: Vec<usize> = self
            .real_neighbours(x)
            .into_iter()
            .filter(|&y| st[y] > 0)
            .collect();
        let mut out = Vec::new();
        let mut pick = Vec::new();
        fn rec(
            open: &[usize],
            from: usize,
            need: usize,
            pool: usize,
            pick: &mut Vec<usize>,
            out: &mut Vec<(Vec<usize>, u32)>,
        ) {
            let from_c = need - pick.len();
            if from_c <= pool {
                out.push((pick.clone(), from_c as u32));
            }
            if pick.len() == need {
                return;
            }
            for k in from..open.len() {
                pick.push(open[k]);
                rec(open, k + 1, need, pool, pick, out);
                pick.pop();
            }
        }
        rec(&open, 0, need, pool, &mut pick, &mut out);
        out
    }

    fn apply(&self, st: &ResidualState, pick: &[usize], from_c: u32) -> ResidualState {
        let mut next = st.clone();
        for &y in pick {
            next[y] -= 1;
        }
        *next.last_mut().unwrap() -= from_c;
        next
    }

    fn pick_cost(&self, x: usize, pick: &[usize]) -> u64 {
        pick.iter().map(|&y| self.edge_cost(x, y)).sum()
    }

    fn best(&mut self, depth: usize, st: &ResidualState) -> Result<Option<u64>> {
        if depth == self.order.len() {
            return Ok(st.iter().all(|&r| r == 0).then_some(0));
        }
        let key = (depth, st.clone());
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        let x = self.order[depth];
        let mut best: Option<u64> = None;
        for (pick, from_c) in self.choices(x, st) {
            self.meter.tick()?;
            let next = self.apply(st, &pick, from_c);
            if let Some(rest) = self.best(depth + 1, &next)? {
                let total = rest + self.pick_cost(x, &pick);
                best = Some(best.map_or(total, |b| b.min(total)));
            }
        }
        self.memo.insert(key, best);
        Ok(best)
    }

    fn witness(&mut self, mut st: ResidualState, mut remaining: u64) -> OracleSolution {
        let g = self.g;
        let mut edges = Vec::new();
        let mut next_c = 0usize;
        for depth in 0..self.order.len() {
            let x = self.order[depth];
            let (pick, from_c) = self
                .choices(x, &st)
                .into_iter()
                .find(|(pick, from_c)| {
                    let next = self.apply(&st, pick, *from_c);
                    let c = self.pick_cost(x, pick);
                    c <= remaining && self.memo_lookup(depth + 1, &next) == Some(remaining - c)
                })
                .expect("memo holds the optimal continuation");
            remaining -= self.pick_cost(x, &pick);
            st = self.apply(&st, &pick, from_c);
            for &y in &pick {
                edges.push((g.x_vertex(x), g.y_vertex(y)));
            }
            for _ in 0..from_c {
                edges.push((g.x_vertex(x), VertexId::c(next_c)));
                next_c += 1;
            }
        }
        let mut multiplicities = BTreeMap::new();
        let mut cost = 0;
        for &(xv, yv) in &edges {
            let (x, y) = (g.x_index(xv), g.y_index(yv));
            if let Some(pair) = g.original_pair(x, y) {
                *multiplicities.entry(pair).or_insert(0) += 1;
                cost += self.edge_cost(x, y);
            }
        }
        edges.sort();
        OracleSolution {
            cost,
            multiplicities,
            expanded_edges: edges,
        }
    }

    fn memo_lookup(&self, depth: usize, st: &ResidualState) -> Option<u64> {
        if depth == self.order.len() {
            return st.iter().all(|&r| r == 0).then_some(0);
        }
        self.memo.get(&(depth, st.clone())).copied().flatten()
    }
}

/// Minimum-cost multiplicity matrix under the declared bounds
/// `α_i ≤ Σ_j m_ij ≤ α′_i`, `β_j ≤ Σ_i m_ij ≤ β′_j`, `0 ≤ m_ij ≤ pair_cap`
/// (`None` leaves pairs unbounded).
pub fn oracle_declared_mmdc(
    inst: &Instance,
    pair_cap: Option<u32>,
    budget: OracleBudget,
) -> Result<OracleResult> {
    let mut search = DeclaredSearch {
        inst,
        pair_cap: pair_cap.unwrap_or(u32::MAX),
        memo: HashMap::new(),
        meter: Meter::new(budget),
    };
    let start = vec![0u32; inst.t()];
    let verdict = match search.best(0, &start)? {
        None => OracleVerdict::Infeasible,
        Some((cost, rows)) => {
            let mut multiplicities = BTreeMap::new();
            for (i, row) in rows.iter().enumerate() {
                for (j, &m) in row.iter().enumerate() {
                    if m > 0 {
                        multiplicities.insert((i, j), m);
                    }
                }
            }
            OracleVerdict::Optimal(OracleSolution {
                cost,
                multiplicities,
                expanded_edges: Vec::new(),
            })
        }
    };
    Ok(OracleResult {
        verdict,
        explored: search.meter.explored,
    })
}

type DeclaredBest = Option<(u64, Vec<Vec<u32>>)>;

struct DeclaredSearch<'a> {
    inst: &'a Instance,
    pair_cap: u32,
    memo: HashMap<(usize, Vec<u32>), DeclaredBest>,
    meter: Meter,
}

impl DeclaredSearch<'_> {
    fn best(&mut self, i: usize, used: &[u32]) -> Result<DeclaredBest> {
        let inst = self.inst;
        if i == inst.s() {
            let ok = (0..inst.t()).all(|j| used[j] >= inst.demand_b()[j]);
            return Ok(ok.then(|| (0, Vec::new())));
        }
        let key = (i, used.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let mut rows = Vec::new();
        let mut row = vec![0u32; inst.t()];
        self.rows(i, 0, 0, used, &mut row, &mut rows);

        let mut best: DeclaredBest = None;
        for row in rows {
            self.meter.tick()?;
            let next: Vec<u32> = used.iter().zip(&row).map(|(u, m)| u + m).collect();
            if let Some((rest, mut tail)) = self.best(i + 1, &next)? {
                let c: u64 = row
                    .iter()
                    .enumerate()
                    .map(|(j, &m)| u64::from(m) * inst.weight(i, j))
                    .sum();
                if best.as_ref().is_none_or(|(b, _)| rest + c < *b) {
                    tail.insert(0, row);
                    best = Some((rest + c, tail));
                }
            }
        }
        self.memo.insert(key, best.clone());
        Ok(best)
    }

    /// All rows for point i whose sum lies in `[α_i, α′_i]` and that respect
    /// the remaining column capacity.
    fn rows(
        &self,
        i: usize,
        j: usize,
        sum: u32,
        used: &[u32],
        row: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        let inst = self.inst;
        if j == inst.t() {
            if sum >= inst.demand_a()[i] {
                out.push(row.clone());
            }
            return;
        }
        let room_col = inst.cap_b()[j].saturating_sub(used[j]);
        let room_row = inst.cap_a()[i].saturating_sub(sum);
        let hi = self.pair_cap.min(room_col).min(room_row);
        for m in 0..=hi {
            row[j] = m;
            self.rows(i, j + 1, sum + m, used, row, out);
        }
        row[j] = 0;
    }
}

/// Side-by-side costs of the Hungarian solver and both oracles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    /// `None` when the solver reported infeasibility.
    pub solver_cost: Option<u64>,
    pub expanded_cost: Option<u64>,
    pub declared_cost: Option<u64>,
    /// Solver and expanded oracle agree (same cost, or both infeasible).
    pub solver_matches_oracle: bool,
    /// `expanded − declared` when both exist; never negative.
    pub saturation_gap: Option<u64>,
    /// Augmenting-path vertex counts from the solve.
    pub path_lengths: BTreeMap<usize, u64>,
}

/// Runs the solver and both oracles (declared oracle with pair cap 3).
pub fn compare_solvers(inst: &Instance, budget: OracleBudget) -> Result<Comparison> {
    let g = crate::graph::build_expanded_graph(inst)?;
    let (solver_cost, path_lengths) = match solve_mmdc(inst) {
        Ok(sol) => (Some(sol.total_cost), sol.stats.path_lengths),
        Err(MmdcError::Infeasible(_)) => (None, BTreeMap::new()),
        Err(e) => return Err(e),
    };
    let expanded_cost = oracle_expanded(&g, budget)?.cost();
    let declared_cost = oracle_declared_mmdc(inst, Some(MAX_PAIR_MULTIPLICITY), budget)?.cost();
    let saturation_gap = match (expanded_cost, declared_cost) {
        (Some(e), Some(d)) => Some(e.saturating_sub(d)),
        _ => None,
    };
    Ok(Comparison {
        solver_cost,
        expanded_cost,
        declared_cost,
        solver_matches_oracle: solver_cost == expanded_cost,
        saturation_gap,
        path_lengths,
    })
}
