//! Weighted digraphs, exact matrices, and the permutation-expansion
//! algebra (determinant, permanent, characteristic polynomial).
//!
//! `det` and `per` are literal signed/unsigned permutation sums; they are
//! the algebraic side of every dual-route check in this crate, so they
//! stay deliberately naive. `charpoly` is division-free. The indeterminate
//! of the characteristic polynomial is called `x`, which is why `x` is not
//! accepted as an input variable name.

use itertools::Itertools;

use crate::caps;
use crate::error::{Error, Result};
use crate::ring::{Mode, Weight};

/// One directed edge. Parallel edges and loops are allowed; edge identity
/// is the insertion index in the owning graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub weight: Weight,
}

/// Directed multigraph on vertices `0..n` with exact edge weights, all in
/// one [`Mode`].
///
/// Edge indices are assigned in insertion order and every enumeration in
/// the crate scans them in ascending order, which pins iteration order and
/// therefore report output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDigraph {
    n: usize,
    mode: Mode,
    edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
}

impl WeightedDigraph {
    pub fn new(n: usize, mode: Mode) -> Self {
        WeightedDigraph {
            n,
            mode,
            edges: Vec::new(),
            out: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, index: usize) -> &Edge {
        &self.edges[index]
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    /// Ascending edge indices leaving `v`.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { index: v, n: self.n })
        }
    }

    /// Appends an edge and returns its index.
    pub fn add_edge(&mut self, from: usize, to: usize, weight: Weight) -> Result<usize> {
        self.check_vertex(from)?;
        self.check_vertex(to)?;
        if weight.mode() != self.mode {
            return Err(Error::ModeMismatch {
                left: self.mode,
                right: weight.mode(),
            });
        }
        let idx = self.edges.len();
        self.edges.push(Edge { from, to, weight });
        self.out[from].push(idx);
        Ok(idx)
    }

    /// Adjacency matrix; parallel edges collapse additively.
    pub fn adjacency_matrix(&self) -> Matrix {
        let mut m = Matrix::zero(self.n, self.n, self.mode);
        for e in &self.edges {
            let cur = m.get(e.from, e.to).clone();
            let sum = cur.add(&e.weight).expect("graph weights share one mode");
            m.set(e.from, e.to, sum).expect("entry mode already checked");
        }
        m
    }

    /// True when the graph has no directed cycle (loops count as cycles).
    pub fn is_acyclic(&self) -> bool {
        // Iterative three-color DFS over vertices.
        #[derive(Clone, Copy, PartialEq)]
        enum Color {
            White,
            Gray,
            Black,
        }
        let mut color = vec![Color::White; self.n];
        for root in 0..self.n {
            if color[root] != Color::White {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            color[root] = Color::Gray;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if *next < self.out[v].len() {
                    let w = self.edges[self.out[v][*next]].to;
                    *next += 1;
                    match color[w] {
                        Color::Gray => return false,
                        Color::White => {
                            color[w] = Color::Gray;
                            stack.push((w, 0));
                        }
                        Color::Black => {}
                    }
                } else {
                    color[v] = Color::Black;
                    stack.pop();
                }
            }
        }
        true
    }
}

/// Dense matrix of [`Weight`]s, all in one [`Mode`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    mode: Mode,
    data: Vec<Weight>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, mode: Mode) -> Self {
        Matrix {
            rows,
            cols,
            mode,
            data: vec![Weight::zero(mode); rows * cols],
        }
    }

    pub fn identity(n: usize, mode: Mode) -> Self {
        let mut m = Matrix::zero(n, n, mode);
        for i in 0..n {
            m.data[i * n + i] = Weight::one(mode);
        }
        m
    }

    /// Builds from rows, which must be rectangular and share one mode.
    /// An empty row list is the 0x0 rational matrix.
    pub fn from_rows(rows: Vec<Vec<Weight>>) -> Result<Matrix> {
        let r = rows.len();
        if r == 0 {
            return Ok(Matrix::zero(0, 0, Mode::Rational));
        }
        let c = rows[0].len();
        let mode = rows[0].first().map_or(Mode::Rational, Weight::mode);
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch(format!(
                    "ragged rows: expected {c} entries, found {}",
                    row.len()
                )));
            }
            for w in row {
                if w.mode() != mode {
                    return Err(Error::ModeMismatch {
                        left: mode,
                        right: w.mode(),
                    });
                }
                data.push(w.clone());
            }
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            mode,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Weight {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, w: Weight) -> Result<()> {
        assert!(i < self.rows && j < self.cols, "index out of range");
        if w.mode() != self.mode {
            return Err(Error::ModeMismatch {
                left: self.mode,
                right: w.mode(),
            });
        }
        self.data[i * self.cols + j] = w;
        Ok(())
    }

    fn check_mode(&self, other: &Matrix) -> Result<()> {
        if self.mode == other.mode {
            Ok(())
        } else {
            Err(Error::ModeMismatch {
                left: self.mode,
                right: other.mode,
            })
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_mode(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = a.add(b)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_mode(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zero(self.rows, other.cols, self.mode);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Weight::zero(self.mode);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j))?)?;
                }
                out.data[i * out.cols + j] = acc;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Result<Matrix> {
        let n = self.require_square()?;
        let mut acc = Matrix::identity(n, self.mode);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.cols, self.rows, self.mode);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn trace(&self) -> Result<Weight> {
        let n = self.require_square()?;
        let mut acc = Weight::zero(self.mode);
        for i in 0..n {
            acc = acc.add(self.get(i, i))?;
        }
        Ok(acc)
    }

    /// Copy with column `k` replaced.
    pub fn replace_col(&self, k: usize, col: &[Weight]) -> Result<Matrix> {
        if k >= self.cols {
            return Err(Error::DimensionMismatch(format!(
                "column {k} out of range for {} columns",
                self.cols
            )));
        }
        if col.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "column of length {} for {} rows",
                col.len(),
                self.rows
            )));
        }
        let mut out = self.clone();
        for (i, w) in col.iter().enumerate() {
            out.set(i, k, w.clone())?;
        }
        Ok(out)
    }

    /// Determinant by the signed permutation expansion.
    pub fn det(&self) -> Result<Weight> {
        self.permutation_expansion(true)
    }

    /// Permanent by the unsigned permutation expansion.
    pub fn per(&self) -> Result<Weight> {
        self.permutation_expansion(false)
    }

    /// Permanent by Ryser's inclusion-exclusion formula, an independent
    /// route used to cross-check [`Matrix::per`].
    pub fn per_ryser(&self) -> Result<Weight> {
        let n = self.require_square()?;
        caps::check("matrix dimension", n, caps::MAX_EXPANSION_DIM)?;
        if n == 0 {
            return Ok(Weight::one(self.mode));
        }
        let mut acc = Weight::zero(self.mode);
        for mask in 1u32..1 << n {
            let mut prod = Weight::one(self.mode);
            for i in 0..n {
                let mut row_sum = Weight::zero(self.mode);
                for j in 0..n {
                    if mask >> j & 1 == 1 {
                        row_sum = row_sum.add(self.get(i, j))?;
                    }
                }
                prod = prod.mul(&row_sum)?;
                if prod.is_zero() {
                    break;
                }
            }
            if (n - mask.count_ones() as usize) % 2 == 1 {
                prod = prod.neg();
            }
            acc = acc.add(&prod)?;
        }
        Ok(acc)
    }

    fn permutation_expansion(&self, signed: bool) -> Result<Weight> {
        let n = self.require_square()?;
        caps::check("matrix dimension", n, caps::MAX_EXPANSION_DIM)?;
        let mut acc = Weight::zero(self.mode);
        for perm in (0..n).permutations(n) {
            let mut term = Weight::one(self.mode);
            for (i, &j) in perm.iter().enumerate() {
                term = term.mul(self.get(i, j))?;
                if term.is_zero() {
                    break;
                }
            }
            if term.is_zero() {
                continue;
            }
            if signed && parity_odd(&perm) {
                term = term.neg();
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Coefficients of det(xI - M) from degree n down to 0 (leading
    /// coefficient is always 1). Division-free: cofactor expansion over
    /// polynomials in x, memoized on the set of unused columns.
    pub fn charpoly(&self) -> Result<Vec<Weight>> {
        let n = self.require_square()?;
        caps::check("matrix dimension", n, caps::MAX_EXPANSION_DIM)?;
        let mode = self.mode;
        if n == 0 {
            return Ok(vec![Weight::one(mode)]);
        }
        // b[i][j] = x*[i == j] - m[i][j], stored as ascending coefficient
        // vectors of length <= 2.
        let entry = |i: usize, j: usize| -> XPoly {
            let lin = if i == j {
                Weight::one(mode)
            } else {
                Weight::zero(mode)
            };
            XPoly::from_coeffs(vec![self.get(i, j).neg(), lin], mode)
        };
        let full: u32 = (1 << n) - 1;
        let mut memo: Vec<Option<XPoly>> = vec![None; 1 << n];
        memo[0] = Some(XPoly::one(mode));
        let p = charpoly_minor(&entry, full, n, mode, &mut memo);
        let mut coeffs = p.into_coeffs(n);
        coeffs.reverse();
        Ok(coeffs)
    }
}

/// det of the minor over the rows `n - |mask|..n` and the column set
/// `mask`, expanded along its first row.
fn charpoly_minor(
    entry: &dyn Fn(usize, usize) -> XPoly,
    mask: u32,
    n: usize,
    mode: Mode,
    memo: &mut Vec<Option<XPoly>>,
) -> XPoly {
    if let Some(p) = &memo[mask as usize] {
        return p.clone();
    }
    let size = mask.count_ones() as usize;
    let row = n - size;
    let mut acc = XPoly::zero(mode);
    let mut sign_neg = false;
    for j in 0..n {
        if mask & (1 << j) == 0 {
            continue;
        }
        let sub = charpoly_minor(entry, mask & !(1 << j), n, mode, memo);
        let mut term = entry(row, j).mul(&sub);
        if sign_neg {
            term = term.neg();
        }
        acc = acc.add(&term);
        sign_neg = !sign_neg;
    }
    memo[mask as usize] = Some(acc.clone());
    acc
}

/// Univariate polynomial in the charpoly indeterminate with Weight
/// coefficients, ascending by degree. Internal to charpoly.
#[derive(Debug, Clone)]
struct XPoly {
    coeffs: Vec<Weight>,
    mode: Mode,
}

impl XPoly {
    fn zero(mode: Mode) -> Self {
        XPoly {
            coeffs: Vec::new(),
            mode,
        }
    }

    fn one(mode: Mode) -> Self {
        XPoly {
            coeffs: vec![Weight::one(mode)],
            mode,
        }
    }

    fn from_coeffs(coeffs: Vec<Weight>, mode: Mode) -> Self {
        let mut p = XPoly { coeffs, mode };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Weight::is_zero) {
            self.coeffs.pop();
        }
    }

    fn add(&self, other: &XPoly) -> XPoly {
        let mut coeffs = vec![Weight::zero(self.mode); self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] = c.clone();
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] = coeffs[i].add(c).expect("xpoly coefficients share mode");
        }
        XPoly::from_coeffs(coeffs, self.mode)
    }

    fn neg(&self) -> XPoly {
        XPoly {
            coeffs: self.coeffs.iter().map(Weight::neg).collect(),
            mode: self.mode,
        }
    }

    fn mul(&self, other: &XPoly) -> XPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return XPoly::zero(self.mode);
        }
        let mut coeffs =
            vec![Weight::zero(self.mode); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let prod = a.mul(b).expect("xpoly coefficients share mode");
                coeffs[i + j] = coeffs[i + j].add(&prod).expect("xpoly coefficients share mode");
            }
        }
        XPoly::from_coeffs(coeffs, self.mode)
    }

    /// Ascending coefficients padded/expected to degree exactly `deg`.
    fn into_coeffs(mut self, deg: usize) -> Vec<Weight> {
        while self.coeffs.len() < deg + 1 {
            self.coeffs.push(Weight::zero(self.mode));
        }
        debug_assert_eq!(self.coeffs.len(), deg + 1, "charpoly degree mismatch");
        self.coeffs
    }
}

pub(crate) fn parity_odd(perm: &[usize]) -> bool {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// Companion digraph of the monic polynomial
/// x^n + e[0]*x^(n-1) + ... + e[n-1]:
/// the adjacency matrix is the Frobenius companion matrix, with
/// subdiagonal ones and last column -e[n-1-i] in row i.
pub fn companion_digraph(e: &[Weight]) -> Result<WeightedDigraph> {
    let n = e.len();
    if n == 0 {
        return Err(Error::InvalidInput(
            "companion digraph needs at least one coefficient".into(),
        ));
    }
    let mode = e[0].mode();
    for w in e {
        if w.mode() != mode {
            return Err(Error::ModeMismatch {
                left: mode,
                right: w.mode(),
            });
        }
    }
    let mut g = WeightedDigraph::new(n, mode);
    for i in 1..n {
        g.add_edge(i, i - 1, Weight::one(mode))?;
    }
    for i in 0..n {
        let w = e[n - 1 - i].neg();
        if !w.is_zero() {
            g.add_edge(i, n - 1, w)?;
        }
    }
    Ok(g)
}
