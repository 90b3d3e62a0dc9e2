//! Path systems on acyclic digraphs: the path-matrix determinant equals
//! the signed sum over vertex-disjoint path systems, and (because entangled
//! systems cancel in signed pairs) also the signed sum over all systems.
//! The permanent analogue drops signs and disjointness.
//!
//! [`lgv_check`] and [`per_check`] compute the matrix side and the
//! enumeration side independently and compare.

use itertools::Itertools;

use crate::caps;
use crate::error::{Error, Result};
use crate::graph::{parity_odd, Matrix, WeightedDigraph};
use crate::ring::Weight;

/// Directed path as an edge-index sequence; empty when `from == to`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub from: usize,
    pub to: usize,
    pub edges: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn validate(&self, g: &WeightedDigraph) -> Result<()> {
        g.check_vertex(self.from)?;
        g.check_vertex(self.to)?;
        let mut at = self.from;
        for &ei in &self.edges {
            if ei >= g.edge_count() {
                return Err(Error::InvalidInput(format!("edge index {ei} out of range")));
            }
            let e = g.edge(ei);
            if e.from != at {
                return Err(Error::InvalidInput(format!(
                    "edge {ei} leaves {} but the path is at {at}",
                    e.from
                )));
            }
            at = e.to;
        }
        if at != self.to {
            return Err(Error::InvalidInput(format!(
                "path ends at {at}, not at {}",
                self.to
            )));
        }
        Ok(())
    }

    /// Visited vertices including both endpoints; `[from]` for the empty
    /// path.
    pub fn vertices(&self, g: &WeightedDigraph) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.edges.len() + 1);
        out.push(self.from);
        for &ei in &self.edges {
            out.push(g.edge(ei).to);
        }
        out
    }

    /// Product of edge weights; 1 for the empty path.
    pub fn weight(&self, g: &WeightedDigraph) -> Weight {
        let mut acc = Weight::one(g.mode());
        for &ei in &self.edges {
            acc = acc
                .mul(&g.edge(ei).weight)
                .expect("graph weights share one mode");
        }
        acc
    }
}

/// One path per source: `paths[i]` runs from `sources[i]` to
/// `sinks[sigma[i]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSystem {
    pub sigma: Vec<usize>,
    pub paths: Vec<Path>,
}

impl PathSystem {
    /// Sign of the connecting permutation.
    pub fn sign_negative(&self) -> bool {
        parity_odd(&self.sigma)
    }

    /// Product of path weights.
    pub fn weight(&self, g: &WeightedDigraph) -> Weight {
        let mut acc = Weight::one(g.mode());
        for p in &self.paths {
            acc = acc.mul(&p.weight(g)).expect("graph weights share one mode");
        }
        acc
    }

    pub fn signed_weight(&self, g: &WeightedDigraph) -> Weight {
        let w = self.weight(g);
        if self.sign_negative() {
            w.neg()
        } else {
            w
        }
    }

    /// True when no two paths share a vertex (endpoints included; an empty
    /// path occupies its single vertex).
    pub fn is_vertex_disjoint(&self, g: &WeightedDigraph) -> bool {
        let mut seen = vec![false; g.n()];
        for p in &self.paths {
            for v in p.vertices(g) {
                if seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        true
    }
}

/// All paths from `from` to `to`, lexicographic by edge-index sequence.
/// Requires an acyclic graph, so path counts are finite.
pub fn enumerate_paths(g: &WeightedDigraph, from: usize, to: usize) -> Result<Vec<Path>> {
    if !g.is_acyclic() {
        return Err(Error::NotAcyclic);
    }
    g.check_vertex(from)?;
    g.check_vertex(to)?;
    let mut out = Vec::new();
    let mut edges = Vec::new();
    path_dfs(g, from, from, to, &mut edges, &mut out);
    Ok(out)
}

fn path_dfs(
    g: &WeightedDigraph,
    from: usize,
    at: usize,
    to: usize,
    edges: &mut Vec<usize>,
    out: &mut Vec<Path>,
) {
    if at == to {
        out.push(Path {
            from,
            to,
            edges: edges.clone(),
        });
        // No path revisits `to` in an acyclic graph; stop here.
        return;
    }
    for &ei in g.out_edges(at) {
        edges.push(ei);
        path_dfs(g, from, g.edge(ei).to, to, edges, out);
        edges.pop();
    }
}

/// Path matrix: entry (i, j) is the weight sum over paths from
/// `sources[i]` to `sinks[j]`.
pub fn path_matrix(
    g: &WeightedDigraph,
    sources: &[usize],
    sinks: &[usize],
) -> Result<Matrix> {
    if !g.is_acyclic() {
        return Err(Error::NotAcyclic);
    }
    let mut m = Matrix::zero(sources.len(), sinks.len(), g.mode());
    for (i, &a) in sources.iter().enumerate() {
        for (j, &b) in sinks.iter().enumerate() {
            let mut acc = Weight::zero(g.mode());
            for p in enumerate_paths(g, a, b)? {
                acc = acc.add(&p.weight(g))?;
            }
            m.set(i, j, acc)?;
        }
    }
    Ok(m)
}

/// All path systems for the given source/sink lists, optionally restricted
/// to vertex-disjoint ones. Ordered by connecting permutation (lexicographic),
/// then by path choice, earlier sources varying slowest.
pub fn enumerate_path_systems(
    g: &WeightedDigraph,
    sources: &[usize],
    sinks: &[usize],
    vertex_disjoint_only: bool,
) -> Result<Vec<PathSystem>> {
    if sources.len() != sinks.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} sources vs {} sinks",
            sources.len(),
            sinks.len()
        )));
    }
    if !g.is_acyclic() {
        return Err(Error::NotAcyclic);
    }
    let m = sources.len();
    caps::check("path system size", m, caps::MAX_SYSTEM_SIZE)?;
    let mut paths = Vec::with_capacity(m);
    for &a in sources {
        let mut row = Vec::with_capacity(m);
        for &b in sinks {
            row.push(enumerate_paths(g, a, b)?);
        }
        paths.push(row);
    }

    let mut total: u128 = 0;
    for sigma in (0..m).permutations(m) {
        let mut count: u128 = 1;
        for (i, &j) in sigma.iter().enumerate() {
            count = count.saturating_mul(paths[i][j].len() as u128);
        }
        total = total.saturating_add(count);
    }
    if total > caps::MAX_SYSTEMS {
        return Err(Error::CapExceeded {
            what: "path system count",
            actual: usize::MAX,
            limit: caps::MAX_SYSTEMS as usize,
        });
    }

    let mut out = Vec::new();
    for sigma in (0..m).permutations(m) {
        if sigma.iter().enumerate().any(|(i, &j)| paths[i][j].is_empty()) {
            continue;
        }
        // Odometer over path choices, last source fastest.
        let mut choice = vec![0usize; m];
        'systems: loop {
            let system = PathSystem {
                sigma: sigma.clone(),
                paths: (0..m)
                    .map(|i| paths[i][sigma[i]][choice[i]].clone())
                    .collect(),
            };
            if !vertex_disjoint_only || system.is_vertex_disjoint(g) {
                out.push(system);
            }
            let mut pos = m;
            loop {
                if pos == 0 {
                    break 'systems;
                }
                pos -= 1;
                choice[pos] += 1;
                if choice[pos] < paths[pos][sigma[pos]].len() {
                    break;
                }
                choice[pos] = 0;
            }
        }
    }
    Ok(out)
}

/// Outcome of [`lgv_check`].
#[derive(Debug, Clone)]
pub struct LgvReport {
    pub determinant: Weight,
    pub vd_signed_sum: Weight,
    pub all_signed_sum: Weight,
    pub vd_count: usize,
    pub all_count: usize,
    pub pass: bool,
}

/// Determinant route vs both enumeration routes (vertex-disjoint systems,
/// and all systems with entangled ones cancelling).
pub fn lgv_check(
    g: &WeightedDigraph,
    sources: &[usize],
    sinks: &[usize],
) -> Result<LgvReport> {
    let m = path_matrix(g, sources, sinks)?;
    let determinant = m.det()?;
    let all = enumerate_path_systems(g, sources, sinks, false)?;
    let mut all_signed_sum = Weight::zero(g.mode());
    let mut vd_signed_sum = Weight::zero(g.mode());
    let mut vd_count = 0usize;
    for s in &all {
        let w = s.signed_weight(g);
        all_signed_sum = all_signed_sum.add(&w)?;
        if s.is_vertex_disjoint(g) {
            vd_signed_sum = vd_signed_sum.add(&w)?;
            vd_count += 1;
        }
    }
    let pass = determinant == vd_signed_sum && determinant == all_signed_sum;
    Ok(LgvReport {
        determinant,
        vd_signed_sum,
        all_signed_sum,
        vd_count,
        all_count: all.len(),
        pass,
    })
}

/// Outcome of [`per_check`].
#[derive(Debug, Clone)]
pub struct PermanentReport {
    pub permanent: Weight,
    pub all_sum: Weight,
    pub all_count: usize,
    pub pass: bool,
}

/// Permanent route vs the unsigned sum over all path systems.
pub fn per_check(
    g: &WeightedDigraph,
    sources: &[usize],
    sinks: &[usize],
) -> Result<PermanentReport> {
    let m = path_matrix(g, sources, sinks)?;
    let permanent = m.per()?;
    let all = enumerate_path_systems(g, sources, sinks, false)?;
    let mut all_sum = Weight::zero(g.mode());
    for s in &all {
        all_sum = all_sum.add(&s.weight(g))?;
    }
    let pass = permanent == all_sum;
    Ok(PermanentReport {
        permanent,
        all_sum,
        all_count: all.len(),
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Mode;

    fn rw(k: i64) -> Weight {
        Weight::from_int(k, Mode::Rational)
    }

    /// Two sources, two sinks, weights [[2,3],[0,5]].
    fn fixture() -> WeightedDigraph {
        let mut g = WeightedDigraph::new(4, Mode::Rational);
        g.add_edge(0, 2, rw(2)).unwrap();
        g.add_edge(0, 3, rw(3)).unwrap();
        g.add_edge(1, 3, rw(5)).unwrap();
        g
    }

    /// Both sources funnel through one middle vertex: no disjoint systems.
    fn bottleneck() -> WeightedDigraph {
        let mut g = WeightedDigraph::new(5, Mode::Rational);
        g.add_edge(0, 4, rw(1)).unwrap();
        g.add_edge(1, 4, rw(1)).unwrap();
        g.add_edge(4, 2, rw(1)).unwrap();
        g.add_edge(4, 3, rw(1)).unwrap();
        g
    }

    #[test]
    fn path_enumeration_is_lexicographic() {
        let mut g = WeightedDigraph::new(4, Mode::Rational);
        g.add_edge(0, 1, rw(1)).unwrap();
        g.add_edge(0, 2, rw(1)).unwrap();
        g.add_edge(1, 3, rw(1)).unwrap();
        g.add_edge(2, 3, rw(1)).unwrap();
        let ps = enumerate_paths(&g, 0, 3).unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(ps[0].edges, vec![0, 2]);
        assert_eq!(ps[1].edges, vec![1, 3]);
        let empty = enumerate_paths(&g, 2, 2).unwrap();
        assert_eq!(empty, vec![Path { from: 2, to: 2, edges: vec![] }]);
        assert_eq!(empty[0].weight(&g), rw(1));
        assert_eq!(empty[0].vertices(&g), vec![2]);
        assert!(enumerate_paths(&g, 3, 0).unwrap().is_empty());
    }

    #[test]
    fn cyclic_graphs_are_rejected() {
        let mut g = WeightedDigraph::new(2, Mode::Rational);
        g.add_edge(0, 1, rw(1)).unwrap();
        g.add_edge(1, 0, rw(1)).unwrap();
        assert_eq!(enumerate_paths(&g, 0, 1).unwrap_err(), Error::NotAcyclic);
        assert_eq!(
            path_matrix(&g, &[0], &[1]).unwrap_err(),
            Error::NotAcyclic
        );
    }

    #[test]
    fn path_matrix_of_the_fixture() {
        let g = fixture();
        let m = path_matrix(&g, &[0, 1], &[2, 3]).unwrap();
        assert_eq!(m.get(0, 0), &rw(2));
        assert_eq!(m.get(0, 1), &rw(3));
        assert_eq!(m.get(1, 0), &rw(0));
        assert_eq!(m.get(1, 1), &rw(5));
        assert_eq!(m.det().unwrap(), rw(10));
    }

    #[test]
    fn lgv_check_on_the_fixture() {
        let g = fixture();
        let rep = lgv_check(&g, &[0, 1], &[2, 3]).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.determinant, rw(10));
        assert_eq!(rep.vd_signed_sum, rw(10));
        assert_eq!(rep.all_signed_sum, rw(10));
        assert_eq!(rep.vd_count, 1);
        assert_eq!(rep.all_count, 1);
    }

    #[test]
    fn entangled_systems_cancel() {
        let g = bottleneck();
        let rep = lgv_check(&g, &[0, 1], &[2, 3]).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.determinant, rw(0));
        assert_eq!(rep.vd_count, 0);
        assert_eq!(rep.all_count, 2);
        assert_eq!(rep.all_signed_sum, rw(0));

        let per = per_check(&g, &[0, 1], &[2, 3]).unwrap();
        assert!(per.pass, "{per:?}");
        assert_eq!(per.permanent, rw(2));
        assert_eq!(per.all_sum, rw(2));
    }

    #[test]
    fn permanent_on_the_fixture() {
        let g = fixture();
        let rep = per_check(&g, &[0, 1], &[2, 3]).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.permanent, rw(10));
    }

    #[test]
    fn system_enumeration_shape() {
        let g = bottleneck();
        let all = enumerate_path_systems(&g, &[0, 1], &[2, 3], false).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all[0].sigma, vec![0, 1]);
        assert_eq!(all[1].sigma, vec![1, 0]);
        assert!(!all[0].is_vertex_disjoint(&g));
        assert!(!all[0].sign_negative());
        assert!(all[1].sign_negative());
        let vd = enumerate_path_systems(&g, &[0, 1], &[2, 3], true).unwrap();
        assert!(vd.is_empty());
    }

    #[test]
    fn degenerate_source_sink_choices() {
        // Repeated source: both rows equal, determinant zero, and no
        // system can be disjoint.
        let g = fixture();
        let rep = lgv_check(&g, &[0, 0], &[2, 3]).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.determinant, rw(0));
        assert_eq!(rep.vd_count, 0);

        // A sink equal to a source: the empty path occupies it.
        let rep = lgv_check(&g, &[0, 1], &[0, 3]).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.determinant, rw(5));

        // Zero sources: the empty system, weight one.
        let rep = lgv_check(&g, &[], &[]).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.determinant, rw(1));
        assert_eq!(rep.all_count, 1);
    }

    #[test]
    fn dimension_and_cap_errors() {
        let g = fixture();
        assert!(enumerate_path_systems(&g, &[0], &[2, 3], false).is_err());
        // Edgeless graph is acyclic, so only the size cap can fire.
        let big = WeightedDigraph::new(6, Mode::Rational);
        let srcs: Vec<usize> = (0..6).collect();
        assert_eq!(
            enumerate_path_systems(&big, &srcs, &srcs, false)
                .unwrap_err()
                .exit_code(),
            3
        );
    }

    #[test]
    fn symbolic_lgv() {
        let mut g = WeightedDigraph::new(4, Mode::Symbolic);
        g.add_edge(0, 2, Weight::var("p")).unwrap();
        g.add_edge(0, 3, Weight::var("q")).unwrap();
        g.add_edge(1, 2, Weight::var("r")).unwrap();
        g.add_edge(1, 3, Weight::var("s")).unwrap();
        let rep = lgv_check(&g, &[0, 1], &[2, 3]).unwrap();
        assert!(rep.pass);
        assert_eq!(
            rep.determinant,
            Weight::parse_canonical("p*s - q*r", Mode::Symbolic).unwrap()
        );
        let per = per_check(&g, &[0, 1], &[2, 3]).unwrap();
        assert!(per.pass);
        assert_eq!(
            per.permanent,
            Weight::parse_canonical("p*s + q*r", Mode::Symbolic).unwrap()
        );
    }
}
