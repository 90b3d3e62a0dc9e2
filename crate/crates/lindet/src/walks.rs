//! Closed walks, linear subdigraphs, and the graphical Newton identities.
//!
//! Conventions, fixed once here and relied on everywhere:
//!
//! * `c_r` is the weight sum over closed walks of length r, equivalently
//!   trace(A^r). [`closed_walk_sum`] enumerates within caps and falls back
//!   to the trace route beyond them; the acceptance suite checks the two
//!   routes against each other.
//! * `l_r` is the signed sum over linear subdigraphs with r edges
//!   (vertex-disjoint simple cycles), each weighted by (-1)^(#cycles)
//!   times its edge-weight product. For 1 <= r <= n it equals the
//!   coefficient of x^(n-r) in det(xI - A). `l_0` is left undefined on
//!   purpose: no identity below ever references it.
//! * The residual of the Newton identity at r is
//!   c_r + c_(r-1) l_1 + ... + c_1 l_(r-1) + r l_r          for 1 <= r <= n,
//!   c_r + c_(r-1) l_1 + ... + c_(r-n) l_n                  for r > n,
//!   and both vanish identically.

use std::collections::BTreeSet;

use crate::caps;
use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;
use crate::ring::Weight;

/// Closed walk: a start vertex and a consecutive edge-index sequence that
/// returns to the start. Length is the edge count, always >= 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClosedWalk {
    pub start: usize,
    pub edges: Vec<usize>,
}

impl ClosedWalk {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn validate(&self, g: &WeightedDigraph) -> Result<()> {
        if self.edges.is_empty() {
            return Err(Error::InvalidInput("closed walk has no edges".into()));
        }
        g.check_vertex(self.start)?;
        let mut at = self.start;
        for &ei in &self.edges {
            if ei >= g.edge_count() {
                return Err(Error::InvalidInput(format!("edge index {ei} out of range")));
            }
            let e = g.edge(ei);
            if e.from != at {
                return Err(Error::InvalidInput(format!(
                    "edge {ei} leaves {} but the walk is at {at}",
                    e.from
                )));
            }
            at = e.to;
        }
        if at != self.start {
            return Err(Error::InvalidInput(format!(
                "walk ends at {at}, not at its start {}",
                self.start
            )));
        }
        Ok(())
    }

    /// Arrival vertices x_0, ..., x_(L-1) (the closing return to x_0 is
    /// not repeated).
    pub fn vertices(&self, g: &WeightedDigraph) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.edges.len());
        out.push(self.start);
        for &ei in &self.edges[..self.edges.len() - 1] {
            out.push(g.edge(ei).to);
        }
        out
    }

    /// Arrival vertices including the final return: x_0, ..., x_L with
    /// x_L = x_0. This is the scan sequence of the involution.
    pub fn arrivals(&self, g: &WeightedDigraph) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.edges.len() + 1);
        out.push(self.start);
        for &ei in &self.edges {
            out.push(g.edge(ei).to);
        }
        out
    }

    /// True when the walk meets no vertex twice, i.e. traverses a simple
    /// cycle exactly once.
    pub fn is_simple(&self, g: &WeightedDigraph) -> bool {
        let vs = self.vertices(g);
        let set: BTreeSet<usize> = vs.iter().copied().collect();
        set.len() == vs.len()
    }

    /// Product of edge weights.
    pub fn weight(&self, g: &WeightedDigraph) -> Weight {
        product_of_edges(g, self.edges.iter().copied())
    }
}

/// Linear subdigraph: a set of pairwise vertex-disjoint simple cycles,
/// kept canonical (each cycle starts at its smallest vertex; cycles sorted
/// by that vertex).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LinearSubdigraph {
    cycles: Vec<Vec<usize>>,
}

impl LinearSubdigraph {
    pub fn empty() -> Self {
        LinearSubdigraph::default()
    }

    /// Validates and canonicalizes a set of edge-index cycles.
    pub fn from_cycles(g: &WeightedDigraph, cycles: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let mut canon = Vec::with_capacity(cycles.len());
        for cycle in cycles {
            if cycle.is_empty() {
                return Err(Error::InvalidInput("empty cycle".into()));
            }
            let walk = ClosedWalk {
                start: g
                    .edge(*cycle.first().expect("cycle is nonempty"))
                    .from,
                edges: cycle.clone(),
            };
            walk.validate(g)?;
            if !walk.is_simple(g) {
                return Err(Error::InvalidInput("cycle repeats a vertex".into()));
            }
            for v in walk.vertices(g) {
                if !seen.insert(v) {
                    return Err(Error::InvalidInput(format!(
                        "cycles are not vertex-disjoint at {v}"
                    )));
                }
            }
            canon.push(rotate_to_min(g, cycle));
        }
        canon.sort();
        Ok(LinearSubdigraph { cycles: canon })
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    /// Total number of edges, which equals the number of covered vertices.
    pub fn total_len(&self) -> usize {
        self.cycles.iter().map(Vec::len).sum()
    }

    pub fn vertices(&self, g: &WeightedDigraph) -> BTreeSet<usize> {
        self.cycles
            .iter()
            .flat_map(|c| c.iter().map(|&ei| g.edge(ei).from))
            .collect()
    }

    /// Index (within `cycles`) of the cycle passing through `v`.
    pub fn cycle_through(&self, g: &WeightedDigraph, v: usize) -> Option<usize> {
        self.cycles
            .iter()
            .position(|c| c.iter().any(|&ei| g.edge(ei).from == v))
    }

    /// Unsigned product of edge weights.
    pub fn weight(&self, g: &WeightedDigraph) -> Weight {
        product_of_edges(g, self.cycles.iter().flatten().copied())
    }

    /// (-1)^(#cycles) times the edge-weight product.
    pub fn signed_weight(&self, g: &WeightedDigraph) -> Weight {
        let w = self.weight(g);
        if self.cycles.len() % 2 == 1 {
            w.neg()
        } else {
            w
        }
    }
}

fn product_of_edges<I: Iterator<Item = usize>>(g: &WeightedDigraph, edges: I) -> Weight {
    let mut acc = Weight::one(g.mode());
    for ei in edges {
        acc = acc
            .mul(&g.edge(ei).weight)
            .expect("graph weights share one mode");
    }
    acc
}

/// Rotates a cycle's edge sequence so the first edge leaves the cycle's
/// smallest vertex.
fn rotate_to_min(g: &WeightedDigraph, cycle: Vec<usize>) -> Vec<usize> {
    let pos = cycle
        .iter()
        .enumerate()
        .min_by_key(|(_, &ei)| g.edge(ei).from)
        .map(|(i, _)| i)
        .expect("cycle is nonempty");
    let mut out = Vec::with_capacity(cycle.len());
    out.extend_from_slice(&cycle[pos..]);
    out.extend_from_slice(&cycle[..pos]);
    out
}

/// All closed walks of length exactly `r`, ordered by start vertex, then
/// lexicographically by edge-index sequence.
pub fn enumerate_closed_walks(g: &WeightedDigraph, r: usize) -> Result<Vec<ClosedWalk>> {
    if r == 0 {
        return Err(Error::InvalidInput("closed walks have length >= 1".into()));
    }
    caps::check("vertex count", g.n(), caps::MAX_WALK_VERTICES)?;
    caps::check("walk length", r, caps::MAX_WALK_LENGTH)?;
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(r);
    for start in 0..g.n() {
        walk_dfs(g, start, start, r, &mut path, &mut out);
    }
    Ok(out)
}

fn walk_dfs(
    g: &WeightedDigraph,
    start: usize,
    at: usize,
    remaining: usize,
    path: &mut Vec<usize>,
    out: &mut Vec<ClosedWalk>,
) {
    if remaining == 0 {
        if at == start {
            out.push(ClosedWalk {
                start,
                edges: path.clone(),
            });
        }
        return;
    }
    for &ei in g.out_edges(at) {
        path.push(ei);
        walk_dfs(g, start, g.edge(ei).to, remaining - 1, path, out);
        path.pop();
    }
}

/// c_r: the weight sum over closed walks of length r. Within the
/// enumeration caps this sums the walks explicitly; beyond them it uses
/// trace(A^r), which is the same quantity.
pub fn closed_walk_sum(g: &WeightedDigraph, r: usize) -> Result<Weight> {
    if r == 0 {
        return Err(Error::InvalidInput("c_r needs r >= 1".into()));
    }
    if g.n() <= caps::MAX_WALK_VERTICES && r <= caps::MAX_WALK_LENGTH {
        let mut acc = Weight::zero(g.mode());
        for w in enumerate_closed_walks(g, r)? {
            acc = acc.add(&w.weight(g))?;
        }
        Ok(acc)
    } else {
        g.adjacency_matrix().pow(r)?.trace()
    }
}

/// All simple cycles, each reported once, rooted at its smallest vertex;
/// ordered by root, then lexicographically by edge-index sequence.
pub(crate) fn enumerate_simple_cycles(g: &WeightedDigraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    let mut used = vec![false; g.n()];
    for root in 0..g.n() {
        cycle_dfs(g, root, root, &mut used, &mut path, &mut out);
    }
    out
}

fn cycle_dfs(
    g: &WeightedDigraph,
    root: usize,
    at: usize,
    used: &mut [bool],
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    for &ei in g.out_edges(at) {
        let to = g.edge(ei).to;
        if to == root {
            path.push(ei);
            out.push(path.clone());
            path.pop();
        } else if to > root && !used[to] {
            used[to] = true;
            path.push(ei);
            cycle_dfs(g, root, to, used, path, out);
            path.pop();
            used[to] = false;
        }
    }
}

/// All linear subdigraphs with exactly `r` edges. For r = 0 this is the
/// single empty subdigraph; r > n gives none.
pub fn enumerate_linear_subdigraphs(
    g: &WeightedDigraph,
    r: usize,
) -> Result<Vec<LinearSubdigraph>> {
    caps::check("vertex count", g.n(), caps::MAX_SUBDIGRAPH_VERTICES)?;
    if r == 0 {
        return Ok(vec![LinearSubdigraph::empty()]);
    }
    let cycles = enumerate_simple_cycles(g);
    let vertex_sets: Vec<BTreeSet<usize>> = cycles
        .iter()
        .map(|c| c.iter().map(|&ei| g.edge(ei).from).collect())
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    let mut used: BTreeSet<usize> = BTreeSet::new();
    subdigraph_dfs(
        &cycles,
        &vertex_sets,
        0,
        r,
        &mut chosen,
        &mut used,
        &mut out,
    );
    Ok(out
        .into_iter()
        .map(|idxs| LinearSubdigraph {
            cycles: idxs.iter().map(|&i| cycles[i].clone()).collect(),
        })
        .collect())
}

fn subdigraph_dfs(
    cycles: &[Vec<usize>],
    vertex_sets: &[BTreeSet<usize>],
    from: usize,
    remaining: usize,
    chosen: &mut Vec<usize>,
    used: &mut BTreeSet<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if remaining == 0 {
        out.push(chosen.clone());
        return;
    }
    for i in from..cycles.len() {
        if cycles[i].len() > remaining {
            continue;
        }
        if !used.is_disjoint(&vertex_sets[i]) {
            continue;
        }
        chosen.push(i);
        used.extend(&vertex_sets[i]);
        subdigraph_dfs(cycles, vertex_sets, i + 1, remaining - cycles[i].len(), chosen, used, out);
        for v in &vertex_sets[i] {
            used.remove(v);
        }
        chosen.pop();
    }
}

/// l_r: the signed sum over linear subdigraphs with r edges. Defined for
/// r >= 1 only; nothing in the identities references an l_0.
pub fn linear_sub_signed_sum(g: &WeightedDigraph, r: usize) -> Result<Weight> {
    if r == 0 {
        return Err(Error::InvalidInput("l_0 is not defined".into()));
    }
    let mut acc = Weight::zero(g.mode());
    for s in enumerate_linear_subdigraphs(g, r)? {
        acc = acc.add(&s.signed_weight(g))?;
    }
    Ok(acc)
}

/// Left-hand side of the Newton identity at r; identically zero.
///
/// c_j comes from the trace route and l_k from subdigraph enumeration, so
/// the residual already spans two independent computations.
pub fn newton_residual(g: &WeightedDigraph, r: usize) -> Result<Weight> {
    if r == 0 {
        return Err(Error::InvalidInput("r must be at least 1".into()));
    }
    let n = g.n();
    let a = g.adjacency_matrix();
    // c_1..c_r incrementally: c[j] = trace(A^(j+1)).
    let mut c = Vec::with_capacity(r);
    let mut power = a.clone();
    c.push(power.trace()?);
    for _ in 1..r {
        power = power.mul(&a)?;
        c.push(power.trace()?);
    }
    let c_of = |j: usize| -> &Weight { &c[j - 1] };

    let top = n.min(r);
    let mut l = Vec::with_capacity(top);
    for k in 1..=top {
        l.push(linear_sub_signed_sum(g, k)?);
    }
    let l_of = |k: usize| -> &Weight { &l[k - 1] };

    let mut acc = c_of(r).clone();
    if r > n {
        for k in 1..=n {
            acc = acc.add(&c_of(r - k).mul(l_of(k))?)?;
        }
    } else {
        for k in 1..r {
            acc = acc.add(&c_of(r - k).mul(l_of(k))?)?;
        }
        let r_struct = Weight::from_int(r as i64, g.mode());
        acc = acc.add(&r_struct.mul(l_of(r))?)?;
    }
    Ok(acc)
}

/// One coefficient comparison in [`NewtonCorollaryReport`].
#[derive(Debug, Clone)]
pub struct CoeffCheck {
    pub k: usize,
    pub l_k: Weight,
    pub e_k: Weight,
    pub ok: bool,
}

/// One residual evaluation in [`NewtonCorollaryReport`].
#[derive(Debug, Clone)]
pub struct ResidualCheck {
    pub r: usize,
    pub residual: Weight,
    pub ok: bool,
}

/// Outcome of [`newton_corollary_check`].
#[derive(Debug, Clone)]
pub struct NewtonCorollaryReport {
    pub n: usize,
    pub coeff_checks: Vec<CoeffCheck>,
    pub residual_checks: Vec<ResidualCheck>,
    pub pass: bool,
}

/// Newton's theorem via the companion digraph of
/// x^n + e[0]*x^(n-1) + ... + e[n-1]: checks l_k = e_k for 1 <= k <= n
/// and a zero Newton residual for 1 <= r <= r_max.
pub fn newton_corollary_check(e: &[Weight], r_max: usize) -> Result<NewtonCorollaryReport> {
    let g = crate::graph::companion_digraph(e)?;
    let n = e.len();
    let mut coeff_checks = Vec::with_capacity(n);
    for (k, e_k) in e.iter().enumerate() {
        let l_k = linear_sub_signed_sum(&g, k + 1)?;
        let ok = &l_k == e_k;
        coeff_checks.push(CoeffCheck {
            k: k + 1,
            l_k,
            e_k: e_k.clone(),
            ok,
        });
    }
    let mut residual_checks = Vec::with_capacity(r_max);
    for r in 1..=r_max {
        let residual = newton_residual(&g, r)?;
        let ok = residual.is_zero();
        residual_checks.push(ResidualCheck { r, residual, ok });
    }
    let pass = coeff_checks.iter().all(|c| c.ok) && residual_checks.iter().all(|c| c.ok);
    Ok(NewtonCorollaryReport {
        n,
        coeff_checks,
        residual_checks,
        pass,
    })
}
