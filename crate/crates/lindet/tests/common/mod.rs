//! Shared helpers for the integration and acceptance suites: exact
//! elimination oracles that are algorithmically independent of the
//! library's permutation expansions, and seeded generators so every run
//! sees the same instances.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lindet::{Matrix, Mode, Weight, WeightedDigraph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_weight(k: i64) -> Weight {
    Weight::from_int(k, Mode::Rational)
}

pub fn int_matrix(rows: &[Vec<i64>]) -> Matrix {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&k| int_weight(k)).collect())
            .collect(),
    )
    .expect("rectangular integer grid")
}

/// Rational entries of a rational-mode matrix, row-major.
pub fn rational_grid(m: &Matrix) -> Vec<Vec<BigRational>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| match m.get(i, j) {
                    Weight::Rational(r) => r.clone(),
                    Weight::Poly(_) => panic!("rational grid from symbolic matrix"),
                })
                .collect()
        })
        .collect()
}

/// Bareiss fraction-free elimination determinant. Independent of the
/// library's permutation expansion: different algorithm, different code
/// path, same exact value.
pub fn bareiss_det(grid: &[Vec<BigRational>]) -> BigRational {
    let n = grid.len();
    let mut a: Vec<Vec<BigRational>> = grid.to_vec();
    let mut sign = BigRational::one();
    let mut prev = BigRational::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigRational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigRational::zero();
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigRational::one();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Exact elimination solve of A*x = b with partial pivoting; the oracle
/// for the Cramer solver. Returns None on a singular matrix.
pub fn elimination_solve(grid: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = grid.len();
    let mut a: Vec<Vec<BigRational>> = grid
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for k in 0..n {
        let pivot = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(k, pivot);
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / &a[k][k];
            for j in k..=n {
                let sub = &factor * &a[k][j];
                a[i][j] = &a[i][j] - sub;
            }
        }
    }
    let mut x = vec![BigRational::zero(); n];
    for k in (0..n).rev() {
        let mut acc = a[k][n].clone();
        for j in k + 1..n {
            acc -= &a[k][j] * &x[j];
        }
        x[k] = acc / &a[k][k];
    }
    Some(x)
}

/// Random integer matrix with entries in [lo, hi].
pub fn random_int_matrix(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> Matrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.random_range(lo..=hi)).collect())
        .collect();
    int_matrix(&rows)
}

/// Random digraph with nonzero integer weights in [-3, 3]. `mean_degree`
/// bounds the expected out-degree so walk enumeration stays tractable.
pub fn random_digraph(rng: &mut ChaCha8Rng, n: usize, mean_degree: f64) -> WeightedDigraph {
    let mut g = WeightedDigraph::new(n, Mode::Rational);
    let p = (mean_degree / n as f64).min(1.0);
    for from in 0..n {
        for to in 0..n {
            if rng.random_range(0.0..1.0) < p {
                let mut w = 0;
                while w == 0 {
                    w = rng.random_range(-3..=3);
                }
                g.add_edge(from, to, int_weight(w)).expect("vertices in range");
            }
        }
    }
    g
}

/// Random DAG: edges only run forward along a shuffled vertex order.
pub fn random_dag(rng: &mut ChaCha8Rng, n: usize, edge_prob: f64) -> WeightedDigraph {
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        order.swap(i, j);
    }
    let mut g = WeightedDigraph::new(n, Mode::Rational);
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_range(0.0..1.0) < edge_prob {
                let mut w = 0;
                while w == 0 {
                    w = rng.random_range(-3..=3);
                }
                g.add_edge(order[i], order[j], int_weight(w))
                    .expect("vertices in range");
            }
        }
    }
    g
}

/// Random nonsingular rational system (A, b) with small entries.
pub fn random_nonsingular_system(
    rng: &mut ChaCha8Rng,
    n: usize,
) -> (Matrix, Vec<Weight>, Vec<Vec<BigRational>>, Vec<BigRational>) {
    loop {
        let m = random_int_matrix(rng, n, -5, 5);
        let grid = rational_grid(&m);
        if bareiss_det(&grid).is_zero() {
            continue;
        }
        let b_rat: Vec<BigRational> = (0..n)
            .map(|_| rat(rng.random_range(-6..=6), rng.random_range(1..=3)))
            .collect();
        let b: Vec<Weight> = b_rat.iter().map(|r| Weight::Rational(r.clone())).collect();
        return (m, b, grid, b_rat);
    }
}

/// Random tuple of N integer matrices, n x n, entries in [-2, 2].
pub fn random_tuple_matrices(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Vec<Matrix> {
    (0..len).map(|_| random_int_matrix(rng, n, -2, 2)).collect()
}

/// All digraphs on n vertices with loops allowed and no parallel edges,
/// weighted by one symbolic variable per edge (w0, w1, ...). The arc
/// list enumerates (from, to) in row-major order; each subset of arcs is
/// one digraph.
pub fn exhaustive_symbolic_digraphs(n: usize) -> Vec<WeightedDigraph> {
    let arcs: Vec<(usize, usize)> = (0..n)
        .flat_map(|from| (0..n).map(move |to| (from, to)))
        .collect();
    let mut out = Vec::with_capacity(1 << arcs.len());
    for mask in 0u32..1 << arcs.len() {
        let mut g = WeightedDigraph::new(n, Mode::Symbolic);
        for (idx, &(from, to)) in arcs.iter().enumerate() {
            if mask >> idx & 1 == 1 {
                let w = Weight::var(&format!("w{idx}"));
                g.add_edge(from, to, w).expect("vertices in range");
            }
        }
        out.push(g);
    }
    out
}

pub fn weight_is_zero(w: &Weight) -> bool {
    w.is_zero()
}

/// Signed rational value of a rational-mode weight, for oracle math.
pub fn as_rational(w: &Weight) -> BigRational {
    match w {
        Weight::Rational(r) => r.clone(),
        Weight::Poly(_) => panic!("expected rational weight"),
    }
}

/// abs helper for sanity checks on oracle outputs.
pub fn rational_abs(r: &BigRational) -> BigRational {
    r.abs()
}
