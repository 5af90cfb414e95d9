//! The expanded bipartite graph `X = A ∪ A′`, `Y = B ∪ B′ ∪ C`.
//!
//! `A` and `B` carry the demands, `A′` and `B′` the optional capacity above
//! demand, and the `h` unit vertices of `C` absorb the surplus of X's total
//! capacity over Y's. Edges exist for the class pairs (A,B), (A,B′), (A′,B)
//! and (A′,C). Costs are turned into profits `w_max − w` so that the
//! maximising Hungarian method minimises cost; A′–C edges get `w_max`, i.e.
//! cost 0.
//!
//! Vertices are addressed densely: X index `k < s` is `a_k`, `s + k` is
//! `a′_k`; Y index `k < t` is `b_k`, `t + k` is `b′_k`, `2t + k` is `c_k`.

use std::fmt;
use std::iter;
use std::ops::Range;

use crate::error::{MmdcError, Result};
use crate::model::{validate_instance, Instance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexClass {
    A,
    APrime,
    B,
    BPrime,
    C,
}

impl VertexClass {
    pub fn is_x(self) -> bool {
        matches!(self, VertexClass::A | VertexClass::APrime)
    }
}

/// A vertex of the expanded graph. `index` is 0-based within its class.
///
/// The derived order (class A, A′, B, B′, C, then index) is the
/// deterministic order used for every tie-break in the solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId {
    pub class: VertexClass,
    pub index: usize,
}

impl VertexId {
    pub const fn a(index: usize) -> Self {
        Self {
            class: VertexClass::A,
            index,
        }
    }
    pub const fn a_prime(index: usize) -> Self {
        Self {
            class: VertexClass::APrime,
            index,
        }
    }
    pub const fn b(index: usize) -> Self {
        Self {
            class: VertexClass::B,
            index,
        }
    }
    pub const fn b_prime(index: usize) -> Self {
        Self {
            class: VertexClass::BPrime,
            index,
        }
    }
    pub const fn c(index: usize) -> Self {
        Self {
            class: VertexClass::C,
            index,
        }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.class {
            VertexClass::A => "a",
            VertexClass::APrime => "a'",
            VertexClass::B => "b",
            VertexClass::BPrime => "b'",
            VertexClass::C => "c",
        };
        write!(f, "{tag}{}", self.index + 1)
    }
}

#[derive(Debug, Clone)]
pub struct ExpandedGraph {
    inst: Instance,
    swapped: bool,
    h: usize,
    w_max: i64,
    cap_x: Vec<u32>,
    cap_y: Vec<u32>,
}

/// Validates `inst` and builds its expanded graph, transposing the instance
/// first when `Σα′ < Σβ′` so that `h ≥ 0`.
pub fn build_expanded_graph(inst: &Instance) -> Result<ExpandedGraph> {
    let report = validate_instance(inst);
    if !report.passed() {
        return Err(MmdcError::Rejected(report));
    }
    Ok(ExpandedGraph::build_unchecked(inst))
}

impl ExpandedGraph {
    /// Builds without validation. Demands above capacity are clamped, so the
    /// result is always well-formed, though possibly unsolvable.
    pub fn build_unchecked(inst: &Instance) -> Self {
        let swapped = inst.total_cap_a() < inst.total_cap_b();
        let inst = if swapped {
            inst.transposed()
        } else {
            inst.clone()
        };
        let h = (inst.total_cap_a() - inst.total_cap_b()) as usize;
        let (s, t) = (inst.s(), inst.t());

        let mut cap_x = Vec::with_capacity(2 * s);
        cap_x.extend((0..s).map(|i| inst.demand_a()[i].min(inst.cap_a()[i])));
        cap_x.extend((0..s).map(|i| inst.cap_a()[i].saturating_sub(inst.demand_a()[i])));
        let mut cap_y = Vec::with_capacity(2 * t + h);
        cap_y.extend((0..t).map(|j| inst.demand_b()[j].min(inst.cap_b()[j])));
        cap_y.extend((0..t).map(|j| inst.cap_b()[j].saturating_sub(inst.demand_b()[j])));
        cap_y.extend(iter::repeat_n(1, h));

        let w_max = inst.max_weight() as i64;
        Self {
            inst,
            swapped,
            h,
            w_max,
            cap_x,
            cap_y,
        }
    }

    /// The (possibly transposed) instance the graph was built from.
    pub fn instance(&self) -> &Instance {
        &self.inst
    }

    pub fn swapped(&self) -> bool {
        self.swapped
    }

    pub fn s(&self) -> usize {
        self.inst.s()
    }

    pub fn t(&self) -> usize {
        self.inst.t()
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn w_max(&self) -> i64 {
        self.w_max
    }

    /// `|X| = 2s`.
    pub fn nx(&self) -> usize {
        self.cap_x.len()
    }

    /// `|Y| = 2t + h`.
    pub fn ny(&self) -> usize {
        self.cap_y.len()
    }

    pub fn cap_x(&self) -> &[u32] {
        &self.cap_x
    }

    pub fn cap_y(&self) -> &[u32] {
        &self.cap_y
    }

    pub fn total_cap_x(&self) -> u64 {
        self.cap_x.iter().map(|&c| u64::from(c)).sum()
    }

    pub fn total_cap_y(&self) -> u64 {
        self.cap_y.iter().map(|&c| u64::from(c)).sum()
    }

    pub fn cap(&self, v: VertexId) -> u32 {
        if v.class.is_x() {
            self.cap_x[self.x_index(v)]
        } else {
            self.cap_y[self.y_index(v)]
        }
    }

    pub fn x_index(&self, v: VertexId) -> usize {
        match v.class {
            VertexClass::A => v.index,
            VertexClass::APrime => self.s() + v.index,
            _ => panic!("{v} is not an X vertex"),
        }
    }

    pub fn y_index(&self, v: VertexId) -> usize {
        match v.class {
            VertexClass::B => v.index,
            VertexClass::BPrime => self.t() + v.index,
            VertexClass::C => 2 * self.t() + v.index,
            _ => panic!("{v} is not a Y vertex"),
        }
    }

    pub fn x_vertex(&self, k: usize) -> VertexId {
        let s = self.s();
        if k < s {
            VertexId::a(k)
        } else {
            VertexId::a_prime(k - s)
        }
    }

    pub fn y_vertex(&self, k: usize) -> VertexId {
        let t = self.t();
        if k < t {
            VertexId::b(k)
        } else if k < 2 * t {
            VertexId::b_prime(k - t)
        } else {
            VertexId::c(k - 2 * t)
        }
    }

    /// Whether `v` names an existing vertex of this graph.
    pub fn contains(&self, v: VertexId) -> bool {
        let bound = match v.class {
            VertexClass::A | VertexClass::APrime => self.s(),
            VertexClass::B | VertexClass::BPrime => self.t(),
            VertexClass::C => self.h,
        };
        v.index < bound
    }

    /// Profit of the edge between dense X index `x` and dense Y index `y`,
    /// or `None` when the class pair has no edge.
    #[inline]
    pub fn profit_at(&self, x: usize, y: usize) -> Option<i64> {
        let (s, t) = (self.s(), self.t());
        if x < s {
            // A: B and B′
            (y < 2 * t).then(|| self.w_max - self.inst.weight(x, y % t) as i64)
        } else if y < t {
            Some(self.w_max - self.inst.weight(x - s, y) as i64)
        } else if y >= 2 * t {
            Some(self.w_max)
        } else {
            None
        }
    }

    pub fn profit(&self, x: VertexId, y: VertexId) -> Option<i64> {
        if !x.class.is_x() || y.class.is_x() {
            return None;
        }
        self.profit_at(self.x_index(x), self.y_index(y))
    }

    /// Dense Y indices adjacent to dense X index `x`, ascending
    /// (B, then B′, then C).
    pub fn adjacent(&self, x: usize) -> iter::Chain<Range<usize>, Range<usize>> {
        let t = self.t();
        if x < self.s() {
            (0..2 * t).chain(0..0)
        } else {
            (0..t).chain(2 * t..2 * t + self.h)
        }
    }

    /// Y-vertices adjacent to the X-vertex `x`, in the order B ascending,
    /// B′ ascending, C ascending.
    pub fn neighbors(&self, x: VertexId) -> Result<Vec<VertexId>> {
        if !x.class.is_x() || !self.contains(x) {
            return Err(MmdcError::Contract(format!(
                "neighbors() expects an X vertex of this graph, got {x}"
            )));
        }
        Ok(self
            .adjacent(self.x_index(x))
            .map(|y| self.y_vertex(y))
            .collect())
    }

    /// Every edge as `(x, y, profit)` in dense indices.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        (0..self.nx()).flat_map(move |x| {
            self.adjacent(x).map(move |y| {
                (
                    x,
                    y,
                    self.profit_at(x, y).expect("adjacent pair has an edge"),
                )
            })
        })
    }

    /// Maps an expanded edge back to its original pair `(i, j)` in the
    /// caller's orientation; `None` for A′–C edges.
    pub fn original_pair(&self, x: usize, y: usize) -> Option<(usize, usize)> {
        let (s, t) = (self.s(), self.t());
        if y >= 2 * t {
            return None;
        }
        let (i, j) = (x % s, y % t);
        Some(if self.swapped { (j, i) } else { (i, j) })
    }
}
