//! Cramer's rule, numerically and as a polynomial identity certified by a
//! three-layer digraph.
//!
//! The digraph for (n, k) has source vertices A_1..A_n, middle vertices
//! B_1..B_n, and one extra sink X. Every A_i -> B_j edge carries the
//! symbolic entry a_ij and every B_j -> X edge carries x_j. With sinks
//! (B_1, ..., B_(k-1), X, B_(k+1), ..., B_n) the path matrix is A with
//! its k-th column replaced by A*x, so the path-matrix determinant equals
//! x_k * det(A): that is Cramer's rule read off a digraph. The
//! vertex-disjoint systems make the identity visible combinatorially:
//! the other sinks pin every B_j except B_k, forcing the X-path through
//! B_k, which contributes the factor x_k.

use crate::caps;
use crate::error::{Error, Result};
use crate::graph::{Matrix, WeightedDigraph};
use crate::lgv::{enumerate_path_systems, path_matrix};
use crate::ring::{Mode, Weight};

/// Square system A x = b over one mode.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    a: Matrix,
    b: Vec<Weight>,
}

impl LinearSystem {
    pub fn new(a: Matrix, b: Vec<Weight>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        if b.len() != a.rows() {
            return Err(Error::DimensionMismatch(format!(
                "{} equations, {} right-hand sides",
                a.rows(),
                b.len()
            )));
        }
        for w in &b {
            if w.mode() != a.mode() {
                return Err(Error::ModeMismatch {
                    left: a.mode(),
                    right: w.mode(),
                });
            }
        }
        Ok(LinearSystem { a, b })
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &[Weight] {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }
}

/// Solves A x = b by Cramer's rule: x_k = det(A_k) / det(A), where A_k is
/// A with column k replaced by b. Rational mode only (division); a zero
/// determinant is the SINGULAR error. The solution is re-substituted and
/// checked exactly before being returned.
pub fn cramer_solve(sys: &LinearSystem) -> Result<Vec<Weight>> {
    if sys.a.mode() != Mode::Rational {
        return Err(Error::SymbolicDivision);
    }
    let d = sys.a.det()?;
    if d.is_zero() {
        return Err(Error::Singular);
    }
    let n = sys.n();
    let mut xs = Vec::with_capacity(n);
    for k in 0..n {
        let dk = sys.a.replace_col(k, &sys.b)?.det()?;
        xs.push(dk.div(&d)?);
    }
    for i in 0..n {
        let mut acc = Weight::zero(Mode::Rational);
        for (j, x) in xs.iter().enumerate() {
            acc = acc.add(&sys.a.get(i, j).mul(x)?)?;
        }
        if acc != sys.b[i] {
            return Err(Error::Internal(format!(
                "re-substitution failed in row {i}"
            )));
        }
    }
    Ok(xs)
}

/// The Cramer digraph for (n, k) plus its source and sink lists.
#[derive(Debug, Clone)]
pub struct CramerDigraph {
    pub graph: WeightedDigraph,
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
    /// Vertex ids: A_i = i-1, B_j = n + j - 1, X = 2n.
    pub x_vertex: usize,
}

/// Builds the symbolic Cramer digraph; 1 <= k <= n is required.
pub fn build_cramer_digraph(n: usize, k: usize) -> Result<CramerDigraph> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::InvalidInput(format!(
            "need 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    caps::check("cramer dimension", n, caps::MAX_CRAMER_DIM)?;
    let x_vertex = 2 * n;
    let mut graph = WeightedDigraph::new(2 * n + 1, Mode::Symbolic);
    for i in 1..=n {
        for j in 1..=n {
            graph.add_edge(i - 1, n + j - 1, Weight::var(&format!("a{i}{j}")))?;
        }
    }
    for j in 1..=n {
        graph.add_edge(n + j - 1, x_vertex, Weight::var(&format!("x{j}")))?;
    }
    let sources: Vec<usize> = (0..n).collect();
    let mut sinks: Vec<usize> = (n..2 * n).collect();
    sinks[k - 1] = x_vertex;
    Ok(CramerDigraph {
        graph,
        sources,
        sinks,
        x_vertex,
    })
}

/// Outcome of [`verify_cramer_identity`].
#[derive(Debug, Clone)]
pub struct CramerIdentityReport {
    pub n: usize,
    pub k: usize,
    /// det of the Cramer digraph's path matrix.
    pub lhs: Weight,
    /// x_k * det(A), computed without the digraph.
    pub rhs: Weight,
    pub identity_holds: bool,
    pub vd_count: usize,
    pub vd_count_expected: usize,
    /// Every vertex-disjoint system has the forced shape: single-edge
    /// paths to the other sinks and a two-edge path through B_k to X whose
    /// weight is a_(i,k) * x_k.
    pub vd_structure_ok: bool,
    pub vd_signed_sum: Weight,
    pub vd_sum_matches: bool,
    pub pass: bool,
}

/// Certifies Cramer's rule as a polynomial identity for (n, k): the
/// path-matrix determinant must equal x_k * det(A) coefficient by
/// coefficient, and the vertex-disjoint systems must have the forced
/// combinatorial shape that proves it.
pub fn verify_cramer_identity(n: usize, k: usize) -> Result<CramerIdentityReport> {
    let cd = build_cramer_digraph(n, k)?;
    let m = path_matrix(&cd.graph, &cd.sources, &cd.sinks)?;
    let lhs = m.det()?;

    let mut a = Matrix::zero(n, n, Mode::Symbolic);
    for i in 1..=n {
        for j in 1..=n {
            a.set(i - 1, j - 1, Weight::var(&format!("a{i}{j}")))?;
        }
    }
    let rhs = Weight::var(&format!("x{k}")).mul(&a.det()?)?;
    let identity_holds = lhs == rhs;

    let vd = enumerate_path_systems(&cd.graph, &cd.sources, &cd.sinks, true)?;
    let vd_count_expected: usize = (1..=n).product();
    let b_k = n + k - 1;
    let x_k = Weight::var(&format!("x{k}"));
    let mut vd_structure_ok = vd.len() == vd_count_expected;
    let mut vd_signed_sum = Weight::zero(Mode::Symbolic);
    for sys in &vd {
        vd_signed_sum = vd_signed_sum.add(&sys.signed_weight(&cd.graph))?;
        for (i, path) in sys.paths.iter().enumerate() {
            let to_x = cd.sinks[sys.sigma[i]] == cd.x_vertex;
            let shape_ok = if to_x {
                path.len() == 2
                    && cd.graph.edge(path.edges[0]).to == b_k
                    && path.weight(&cd.graph)
                        == cd.graph.edge(path.edges[0]).weight.mul(&x_k)?
            } else {
                path.len() == 1
            };
            if !shape_ok {
                vd_structure_ok = false;
            }
        }
    }
    let vd_sum_matches = vd_signed_sum == lhs && vd_signed_sum == rhs;
    let pass = identity_holds && vd_structure_ok && vd_sum_matches;
    Ok(CramerIdentityReport {
        n,
        k,
        lhs,
        rhs,
        identity_holds,
        vd_count: vd.len(),
        vd_count_expected,
        vd_structure_ok,
        vd_signed_sum,
        vd_sum_matches,
        pass,
    })
}
