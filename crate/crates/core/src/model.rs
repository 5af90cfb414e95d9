//! Problem instances, solutions and the feasibility checks that relate them.
//!
//! Indices are 0-based throughout the library; the text formats and
//! diagnostics print them 1-based.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{MmdcError, Result};
use crate::solver::SolveStats;

/// Largest accepted edge cost. Labels and slacks are kept in `i64`, and
/// label drift over a solve is bounded by a small multiple of the largest
/// cost, so this leaves ample headroom.
pub const MAX_WEIGHT: u64 = 1 << 40;

/// Most parallel expanded edges that can represent one original pair:
/// `a_i–b_j`, `a_i–b'_j` and `a'_i–b_j`.
pub const MAX_PAIR_MULTIPLICITY: u32 = 3;

/// A many-to-many matching problem with demands and capacities.
///
/// Point `a_i` must be matched between `demand_a[i]` and `cap_a[i]` times,
/// point `b_j` between `demand_b[j]` and `cap_b[j]` times; matching `a_i`
/// with `b_j` once costs `weight(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    s: usize,
    t: usize,
    weights: Vec<u64>,
    demand_a: Vec<u32>,
    cap_a: Vec<u32>,
    demand_b: Vec<u32>,
    cap_b: Vec<u32>,
}

impl Instance {
    /// Builds an instance from a row-major cost matrix and the four bound
    /// vectors. Only shape and range are checked here; bound consistency is
    /// the job of [`validate_instance`].
    pub fn new(
        weights: Vec<Vec<u64>>,
        demand_a: Vec<u32>,
        cap_a: Vec<u32>,
        demand_b: Vec<u32>,
        cap_b: Vec<u32>,
    ) -> Result<Self> {
        let s = weights.len();
        let t = weights.first().map_or(0, Vec::len);
        if s == 0 || t == 0 {
            return Err(MmdcError::Contract(
                "instance needs s >= 1 and t >= 1".into(),
            ));
        }
        if let Some(i) = weights.iter().position(|row| row.len() != t) {
            return Err(MmdcError::Contract(format!(
                "weight row {} has {} entries, expected {t}",
                i + 1,
                weights[i].len()
            )));
        }
        let flat: Vec<u64> = weights.into_iter().flatten().collect();
        Self::from_flat(s, t, flat, demand_a, cap_a, demand_b, cap_b)
    }

    /// Like [`Instance::new`] with the matrix given as `s * t` row-major values.
    pub fn from_flat(
        s: usize,
        t: usize,
        weights: Vec<u64>,
        demand_a: Vec<u32>,
        cap_a: Vec<u32>,
        demand_b: Vec<u32>,
        cap_b: Vec<u32>,
    ) -> Result<Self> {
        if s == 0 || t == 0 {
            return Err(MmdcError::Contract(
                "instance needs s >= 1 and t >= 1".into(),
            ));
        }
        if weights.len() != s * t {
            return Err(MmdcError::Contract(format!(
                "weight matrix has {} entries, expected {}",
                weights.len(),
                s * t
            )));
        }
        for (name, v, n) in [
            ("demand_a", &demand_a, s),
            ("cap_a", &cap_a, s),
            ("demand_b", &demand_b, t),
            ("cap_b", &cap_b, t),
        ] {
            if v.len() != n {
                return Err(MmdcError::Contract(format!(
                    "{name} has {} entries, expected {n}",
                    v.len()
                )));
            }
        }
        if let Some(k) = weights.iter().position(|&w| w > MAX_WEIGHT) {
            return Err(MmdcError::Contract(format!(
                "weight ({}, {}) exceeds {MAX_WEIGHT}",
                k / t + 1,
                k % t + 1
            )));
        }
        Ok(Self {
            s,
            t,
            weights,
            demand_a,
            cap_a,
            demand_b,
            cap_b,
        })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// `s + t`.
    pub fn n(&self) -> usize {
        self.s + self.t
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> u64 {
        self.weights[i * self.t + j]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.weights[i * self.t..(i + 1) * self.t]
    }

    pub fn max_weight(&self) -> u64 {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    pub fn demand_a(&self) -> &[u32] {
        &self.demand_a
    }

    pub fn cap_a(&self) -> &[u32] {
        &self.cap_a
    }

    pub fn demand_b(&self) -> &[u32] {
        &self.demand_b
    }

    pub fn cap_b(&self) -> &[u32] {
        &self.cap_b
    }

    pub fn total_demand_a(&self) -> u64 {
        self.demand_a.iter().map(|&x| u64::from(x)).sum()
    }

    pub fn total_cap_a(&self) -> u64 {
        self.cap_a.iter().map(|&x| u64::from(x)).sum()
    }

    pub fn total_demand_b(&self) -> u64 {
        self.demand_b.iter().map(|&x| u64::from(x)).sum()
    }

    pub fn total_cap_b(&self) -> u64 {
        self.cap_b.iter().map(|&x| u64::from(x)).sum()
    }

    /// The same problem with the roles of A and B exchanged.
    pub fn transposed(&self) -> Self {
        let mut weights = Vec::with_capacity(self.weights.len());
        for j in 0..self.t {
            for i in 0..self.s {
                weights.push(self.weight(i, j));
            }
        }
        Self {
            s: self.t,
            t: self.s,
            weights,
            demand_a: self.demand_b.clone(),
            cap_a: self.cap_b.clone(),
            demand_b: self.demand_a.clone(),
            cap_b: self.cap_a.clone(),
        }
    }
}

/// A matching expressed on original pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Solution {
    /// `(i, j) -> m`; absent pairs have multiplicity 0, present ones m >= 1.
    pub multiplicities: BTreeMap<(usize, usize), u32>,
    pub total_cost: u64,
    pub stats: SolveStats,
}

impl Solution {
    /// Builds a solution from raw multiplicities, dropping zero entries and
    /// computing the cost against `inst`.
    pub fn from_multiplicities(
        inst: &Instance,
        multiplicities: impl IntoIterator<Item = ((usize, usize), u32)>,
    ) -> Result<Self> {
        let mut sol = Solution::default();
        for ((i, j), m) in multiplicities {
            if m > 0 {
                *sol.multiplicities.entry((i, j)).or_insert(0) += m;
            }
        }
        sol.total_cost = evaluate_cost(inst, &sol)?;
        Ok(sol)
    }

    /// Total number of matched pairs counted with multiplicity.
    pub fn size(&self) -> u64 {
        self.multiplicities.values().map(|&m| u64::from(m)).sum()
    }
}

/// One named check of a [`FeasibilityReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// 0-based indices of the points (or pair rows) that violate the check.
    pub offending: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub checks: Vec<Check>,
}

impl FeasibilityReport {
    fn push(&mut self, name: &str, offending: Vec<usize>, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed: offending.is_empty(),
            offending,
            detail: detail.into(),
        });
    }

    fn push_flag(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            offending: Vec::new(),
            detail: detail.into(),
        });
    }

    /// Pass iff every individual check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for FeasibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{} {}", if c.passed { "ok  " } else { "FAIL" }, c.name)?;
            if !c.offending.is_empty() {
                let idx: Vec<String> = c.offending.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, " at {}", idx.join(","))?;
            }
            if !c.detail.is_empty() {
                write!(f, " ({})", c.detail)?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "verdict: {}",
            if self.passed() { "pass" } else { "fail" }
        )
    }
}

/// Which reading of the matching constraints [`verify_solution`] enforces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Semantics {
    /// Every point lies within its `[demand, capacity]` interval.
    DeclaredMmdc,
    /// The bounded side as above, and the side with the smaller total
    /// capacity matched exactly to capacity. This is what a completed
    /// solve of the expanded graph produces.
    ExpandedSaturating,
}

fn indices_where(n: usize, mut pred: impl FnMut(usize) -> bool) -> Vec<usize> {
    (0..n).filter(|&k| pred(k)).collect()
}

/// Necessary conditions for solvability. Passing does not guarantee a
/// solution exists; the solver reports the remaining cases as infeasible.
pub fn validate_instance(inst: &Instance) -> FeasibilityReport {
    let (s, t) = (inst.s(), inst.t());
    let (da, ca, db, cb) = (inst.demand_a(), inst.cap_a(), inst.demand_b(), inst.cap_b());
    let sum_da = inst.total_demand_a();
    let sum_ca = inst.total_cap_a();
    let sum_db = inst.total_demand_b();
    let sum_cb = inst.total_cap_b();
    let surplus_a = sum_ca.saturating_sub(sum_cb);
    let surplus_b = sum_cb.saturating_sub(sum_ca);

    let mut r = FeasibilityReport::default();
    r.push("α_i ≤ α′_i", indices_where(s, |i| da[i] > ca[i]), "");
    r.push("β_j ≤ β′_j", indices_where(t, |j| db[j] > cb[j]), "");
    r.push_flag(
        "Σα ≤ Σβ′",
        sum_da <= sum_cb,
        format!("{sum_da} vs {sum_cb}"),
    );
    r.push_flag(
        "Σβ ≤ Σα′",
        sum_db <= sum_ca,
        format!("{sum_db} vs {sum_ca}"),
    );
    // every match uses a demand slot on at least one side: there are no
    // optional-to-optional edges, and saturation makes min(Σα′, Σβ′) matches
    let matches = sum_ca.min(sum_cb);
    r.push_flag(
        "Σα + Σβ ≥ min(Σα′, Σβ′)",
        sum_da + sum_db >= matches,
        format!("{} vs {matches}", sum_da + sum_db),
    );
    r.push(
        "α_i ≤ 2t",
        indices_where(s, |i| u64::from(da[i]) > 2 * t as u64),
        format!("2t = {}", 2 * t),
    );
    r.push(
        "α′_i − α_i ≤ t + surplus",
        indices_where(s, |i| {
            u64::from(ca[i].saturating_sub(da[i])) > t as u64 + surplus_a
        }),
        format!("t + surplus = {}", t as u64 + surplus_a),
    );
    r.push(
        "β_j ≤ 2s",
        indices_where(t, |j| u64::from(db[j]) > 2 * s as u64),
        format!("2s = {}", 2 * s),
    );
    r.push(
        "β′_j − β_j ≤ s + surplus",
        indices_where(t, |j| {
            u64::from(cb[j].saturating_sub(db[j])) > s as u64 + surplus_b
        }),
        format!("s + surplus = {}", s as u64 + surplus_b),
    );
    r
}

/// `Σ m_ij · w_ij` over the solution's pairs.
pub fn evaluate_cost(inst: &Instance, sol: &Solution) -> Result<u64> {
    let mut total = 0u64;
    for (&(i, j), &m) in &sol.multiplicities {
        if i >= inst.s() || j >= inst.t() {
            return Err(MmdcError::MalformedSolution {
                i: i + 1,
                j: j + 1,
                s: inst.s(),
                t: inst.t(),
            });
        }
        total += u64::from(m) * inst.weight(i, j);
    }
    Ok(total)
}

/// Checks a solution against the instance bounds under the chosen semantics.
pub fn verify_solution(inst: &Instance, sol: &Solution, mode: Semantics) -> FeasibilityReport {
    let (s, t) = (inst.s(), inst.t());
    let mut r = FeasibilityReport::default();

    let mut out_of_range = Vec::new();
    let mut row = vec![0u64; s];
    let mut col = vec![0u64; t];
    let mut over_cap = Vec::new();
    for (&(i, j), &m) in &sol.multiplicities {
        if i >= s || j >= t {
            out_of_range.push(if i >= s { i } else { j });
            continue;
        }
        row[i] += u64::from(m);
        col[j] += u64::from(m);
        if m > MAX_PAIR_MULTIPLICITY {
            over_cap.push(i);
        }
    }
    r.push("pair indices in range", out_of_range, "");
    r.push("pair multiplicity ≤ 3", over_cap, "rows of offending pairs");

    let (da, ca, db, cb) = (inst.demand_a(), inst.cap_a(), inst.demand_b(), inst.cap_b());
    let saturate_a = inst.total_cap_a() < inst.total_cap_b();
    let exact = mode == Semantics::ExpandedSaturating;

    if exact && saturate_a {
        r.push(
            "saturation of a_i",
            indices_where(s, |i| row[i] != u64::from(ca[i])),
            "Σ_j m_ij = α′_i",
        );
    } else {
        r.push(
            "demand of a_i",
            indices_where(s, |i| row[i] < u64::from(da[i])),
            "",
        );
        r.push(
            "capacity of a_i",
            indices_where(s, |i| row[i] > u64::from(ca[i])),
            "",
        );
    }
    if exact && !saturate_a {
        r.push(
            "saturation of b_j",
            indices_where(t, |j| col[j] != u64::from(cb[j])),
            "Σ_i m_ij = β′_j",
        );
    } else {
        r.push(
            "demand of b_j",
            indices_where(t, |j| col[j] < u64::from(db[j])),
            "",
        );
        r.push(
            "capacity of b_j",
            indices_where(t, |j| col[j] > u64::from(cb[j])),
            "",
        );
    }

    match evaluate_cost(inst, sol) {
        Ok(c) => r.push_flag(
            "total cost",
            c == sol.total_cost,
            format!("recomputed {c}, reported {}", sol.total_cost),
        ),
        Err(e) => r.push_flag("total cost", false, e.to_string()),
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Instance {
        Instance::new(vec![vec![5]], vec![1], vec![1], vec![1], vec![1]).unwrap()
    }

    fn sol(inst: &Instance, pairs: &[((usize, usize), u32)]) -> Solution {
        Solution::from_multiplicities(inst, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn minimal_instance_validates() {
        let r = validate_instance(&unit());
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn demand_above_capacity_is_reported() {
        let inst = Instance::new(vec![vec![5]], vec![2], vec![1], vec![1], vec![1]).unwrap();
        let r = validate_instance(&inst);
        assert!(!r.passed());
        assert_eq!(r.check("α_i ≤ α′_i").unwrap().offending, vec![0]);
    }

    #[test]
    fn a_demand_exceeding_b_capacity_is_reported() {
        let inst = Instance::new(
            vec![vec![1], vec![1]],
            vec![1, 1],
            vec![1, 1],
            vec![1],
            vec![1],
        )
        .unwrap();
        let r = validate_instance(&inst);
        let c = r.check("Σα ≤ Σβ′").unwrap();
        assert!(!c.passed);
        assert_eq!(c.detail, "2 vs 1");
    }

    #[test]
    fn per_vertex_degree_limits() {
        // a_1 can use at most 2t = 2 demand edges
        let inst = Instance::new(vec![vec![1]], vec![3], vec![3], vec![3], vec![3]).unwrap();
        let r = validate_instance(&inst);
        assert!(!r.check("α_i ≤ 2t").unwrap().passed);
        assert!(!r.check("β_j ≤ 2s").unwrap().passed);
    }

    #[test]
    fn shape_errors() {
        assert!(Instance::new(vec![], vec![], vec![], vec![], vec![]).is_err());
        assert!(Instance::new(
            vec![vec![1, 2], vec![3]],
            vec![0; 2],
            vec![0; 2],
            vec![0; 2],
            vec![0; 2]
        )
        .is_err());
        assert!(Instance::new(vec![vec![1]], vec![0, 0], vec![0], vec![0], vec![0]).is_err());
        assert!(Instance::new(
            vec![vec![MAX_WEIGHT + 1]],
            vec![0],
            vec![0],
            vec![0],
            vec![0]
        )
        .is_err());
    }

    #[test]
    fn cost_examples() {
        let inst = unit();
        assert_eq!(
            evaluate_cost(&inst, &sol(&inst, &[((0, 0), 1)])).unwrap(),
            5
        );

        let inst = Instance::new(
            vec![vec![1, 2], vec![3, 4]],
            vec![0; 2],
            vec![2; 2],
            vec![0; 2],
            vec![2; 2],
        )
        .unwrap();
        assert_eq!(
            evaluate_cost(&inst, &sol(&inst, &[((0, 0), 1), ((1, 1), 1)])).unwrap(),
            5
        );

        let inst = Instance::new(
            vec![vec![2], vec![3]],
            vec![0; 2],
            vec![2; 2],
            vec![0],
            vec![2],
        )
        .unwrap();
        assert_eq!(
            evaluate_cost(&inst, &sol(&inst, &[((0, 0), 2)])).unwrap(),
            4
        );
    }

    #[test]
    fn cost_rejects_out_of_range_pair() {
        let inst = unit();
        let mut bad = Solution::default();
        bad.multiplicities.insert((0, 1), 1);
        assert!(matches!(
            evaluate_cost(&inst, &bad),
            Err(MmdcError::MalformedSolution { i: 1, j: 2, .. })
        ));
    }

    #[test]
    fn verify_examples() {
        let inst = unit();
        let good = sol(&inst, &[((0, 0), 1)]);
        assert!(verify_solution(&inst, &good, Semantics::DeclaredMmdc).passed());
        assert!(verify_solution(&inst, &good, Semantics::ExpandedSaturating).passed());

        let empty = Solution::default();
        let r = verify_solution(&inst, &empty, Semantics::DeclaredMmdc);
        assert!(!r.check("demand of a_i").unwrap().passed);

        let inst = Instance::new(
            vec![vec![1, 2], vec![3, 4]],
            vec![1, 1],
            vec![2, 2],
            vec![1, 1],
            vec![2, 2],
        )
        .unwrap();
        let diag = sol(&inst, &[((0, 0), 1), ((1, 1), 1)]);
        assert!(verify_solution(&inst, &diag, Semantics::DeclaredMmdc).passed());
        let r = verify_solution(&inst, &diag, Semantics::ExpandedSaturating);
        assert!(!r.passed());
        assert_eq!(r.check("saturation of b_j").unwrap().offending, vec![0, 1]);
    }

    #[test]
    fn verify_flags_stale_cost_and_parallel_overflow() {
        let inst = Instance::new(vec![vec![2]], vec![0], vec![4], vec![0], vec![4]).unwrap();
        let mut s = sol(&inst, &[((0, 0), 4)]);
        let r = verify_solution(&inst, &s, Semantics::DeclaredMmdc);
        assert!(!r.check("pair multiplicity ≤ 3").unwrap().passed);
        s.total_cost = 1;
        let r = verify_solution(&inst, &s, Semantics::DeclaredMmdc);
        assert!(!r.check("total cost").unwrap().passed);
    }

    #[test]
    fn transpose_swaps_roles() {
        let inst = Instance::new(
            vec![vec![1, 2, 3]],
            vec![1],
            vec![3],
            vec![0, 1, 0],
            vec![1, 1, 1],
        )
        .unwrap();
        let tr = inst.transposed();
        assert_eq!((tr.s(), tr.t()), (3, 1));
        assert_eq!(tr.weight(2, 0), 3);
        assert_eq!(tr.cap_b(), &[3]);
        assert_eq!(tr.transposed(), inst);
    }
}
