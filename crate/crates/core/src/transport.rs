//! Wasserstein-1 distance between finitely supported measures over an
//! injectable ground metric.
//!
//! The solver is an exact transportation simplex on the dense cost matrix
//! with Bland's anti-cycling rule; supports stay small (<= ~200 atoms), so
//! exactness is cheap and the contraction inequalities downstream can be
//! tested at tight tolerances. Equal-size uniform measures short-circuit
//! to the assignment problem (Hungarian method), where the optimum of the
//! transportation problem is attained at a permutation.

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::majorization::OrderedPositiveVector;
use crate::measure::{DiscreteMeasure, HasDim};
use crate::spd::SpdMatrix;

/// Ground metrics on the SPD cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixGround {
    /// Riemannian trace metric `delta`.
    Riemannian,
    /// Thompson metric `d_T`.
    Thompson,
}

/// Ground metrics on the positive orthant (diagonal embeddings of the two
/// cone metrics).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VectorGround {
    /// `||log a - log b||_2`.
    LogL2,
    /// `max_i |log a_i - log b_i|`.
    LogLinf,
}

/// Coupling between two finitely supported measures.
#[derive(Debug, Clone)]
pub struct TransportPlan {
    rows: usize,
    cols: usize,
    mass: Vec<f64>,
}

impl TransportPlan {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mass(&self, i: usize, j: usize) -> f64 {
        self.mass[i * self.cols + j]
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.mass(i, j)).sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<f64> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.mass(i, j)).sum())
            .collect()
    }

    pub fn total_mass(&self) -> f64 {
        self.mass.iter().sum()
    }
}

/// Optimal value together with an optimal plan; serializes as
/// `{"value": x, "mass": [[...]]}`.
#[derive(Debug, Clone)]
pub struct TransportSolution {
    pub value: f64,
    pub plan: TransportPlan,
}

impl Serialize for TransportSolution {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<&[f64]> = (0..self.plan.rows)
            .map(|i| &self.plan.mass[i * self.plan.cols..(i + 1) * self.plan.cols])
            .collect();
        let mut s = serializer.serialize_struct("TransportSolution", 2)?;
        s.serialize_field("value", &self.value)?;
        s.serialize_field("mass", &rows)?;
        s.end()
    }
}

fn cost_matrix<T>(
    mu: &DiscreteMeasure<T>,
    nu: &DiscreteMeasure<T>,
    mut ground: impl FnMut(&T, &T) -> Result<f64>,
) -> Result<Vec<f64>>
where
    T: HasDim,
{
    let (k1, k2) = (mu.len(), nu.len());
    let mut cost = Vec::with_capacity(k1 * k2);
    for a in mu.atoms() {
        for b in nu.atoms() {
            cost.push(ground(a, b)?);
        }
    }
    Ok(cost)
}

fn is_uniform(weights: &[f64]) -> bool {
    let w = 1.0 / weights.len() as f64;
    weights.iter().all(|&x| (x - w).abs() <= 1e-12)
}

/// Wasserstein-1 with an arbitrary ground cost. Dispatches equal-size
/// uniform instances to the assignment solver, everything else to the
/// transportation simplex.
pub fn wasserstein1_with<T: HasDim>(
    mu: &DiscreteMeasure<T>,
    nu: &DiscreteMeasure<T>,
    ground: impl FnMut(&T, &T) -> Result<f64>,
) -> Result<TransportSolution> {
    let cost = cost_matrix(mu, nu, ground)?;
    if mu.len() == nu.len() && is_uniform(mu.weights()) && is_uniform(nu.weights()) {
        return Ok(assignment_solution(mu.len(), &cost));
    }
    transportation_simplex(mu.weights(), nu.weights(), &cost)
}

/// General transportation-simplex path with no assignment short-circuit;
/// exposed so the two paths can be cross-checked against each other.
pub fn wasserstein1_simplex<T: HasDim>(
    mu: &DiscreteMeasure<T>,
    nu: &DiscreteMeasure<T>,
    ground: impl FnMut(&T, &T) -> Result<f64>,
) -> Result<TransportSolution> {
    let cost = cost_matrix(mu, nu, ground)?;
    transportation_simplex(mu.weights(), nu.weights(), &cost)
}

/// Wasserstein-1 between SPD-valued measures.
pub fn wasserstein1_spd(
    mu: &DiscreteMeasure<SpdMatrix>,
    nu: &DiscreteMeasure<SpdMatrix>,
    ground: MatrixGround,
) -> Result<TransportSolution> {
    match ground {
        MatrixGround::Riemannian => wasserstein1_with(mu, nu, |a, b| a.riemannian_distance(b)),
        MatrixGround::Thompson => wasserstein1_with(mu, nu, |a, b| a.thompson_distance(b)),
    }
}

/// Wasserstein-1 between measures on the positive orthant.
pub fn wasserstein1_vectors(
    mu: &DiscreteMeasure<OrderedPositiveVector>,
    nu: &DiscreteMeasure<OrderedPositiveVector>,
    ground: VectorGround,
) -> Result<TransportSolution> {
    match ground {
        VectorGround::LogL2 => wasserstein1_with(mu, nu, |a, b| a.log_l2_distance(b)),
        VectorGround::LogLinf => wasserstein1_with(mu, nu, |a, b| a.log_linf_distance(b)),
    }
}

// ---------------------------------------------------------------------
// Assignment problem (equal-size uniform measures)
// ---------------------------------------------------------------------

/// Hungarian method with potentials, O(k^3); `cost` is k x k row-major.
/// Returns for each column the assigned row.
fn hungarian(k: usize, cost: &[f64]) -> Vec<usize> {
    // 1-based potentials; p[j] = row assigned to column j.
    let inf = f64::INFINITY;
    let mut u = vec![0.0; k + 1];
    let mut v = vec![0.0; k + 1];
    let mut p = vec![0usize; k + 1];
    let mut way = vec![0usize; k + 1];
    for i in 1..=k {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![inf; k + 1];
        let mut used = vec![false; k + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0usize;
            for j in 1..=k {
                if used[j] {
                    continue;
                }
                let cur = cost[(i0 - 1) * k + (j - 1)] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=k {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    (1..=k).map(|j| p[j] - 1).collect()
}

fn assignment_solution(k: usize, cost: &[f64]) -> TransportSolution {
    let row_of_col = hungarian(k, cost);
    let w = 1.0 / k as f64;
    let mut mass = vec![0.0; k * k];
    let mut value = 0.0;
    for (j, &i) in row_of_col.iter().enumerate() {
        mass[i * k + j] = w;
        value += w * cost[i * k + j];
    }
    TransportSolution {
        value,
        plan: TransportPlan {
            rows: k,
            cols: k,
            mass,
        },
    }
}

// ---------------------------------------------------------------------
// Transportation simplex
// ---------------------------------------------------------------------

/// Exact transportation simplex on a dense cost matrix. Basic cells form
/// a spanning tree of the bipartite supply/demand graph; the entering
/// variable is the first cell (row-major) with negative reduced cost and
/// ties for the leaving variable break lexicographically (Bland's rule).
fn transportation_simplex(a: &[f64], b: &[f64], cost: &[f64]) -> Result<TransportSolution> {
    let m = a.len();
    let n = b.len();
    let mut mass = vec![0.0; m * n];
    let mut basic = vec![false; m * n];

    // Northwest-corner start: walks from (0,0) to (m-1,n-1) through
    // exactly m + n - 1 cells, zero allocations included.
    {
        let mut a_rem = a.to_vec();
        let mut b_rem = b.to_vec();
        let (mut i, mut j) = (0usize, 0usize);
        loop {
            let q = a_rem[i].min(b_rem[j]).max(0.0);
            mass[i * n + j] = q;
            basic[i * n + j] = true;
            a_rem[i] -= q;
            b_rem[j] -= q;
            if i == m - 1 && j == n - 1 {
                break;
            }
            if i < m - 1 && (a_rem[i] <= b_rem[j] || j == n - 1) {
                i += 1;
            } else {
                j += 1;
            }
        }
    }

    let entering_eps = 1e-12 * (1.0 + cost.iter().fold(0.0_f64, |acc, c| acc.max(c.abs())));
    let max_pivots = 100 * m * n + 1000;

    for _pivot in 0..max_pivots {
        // Duals from the basis tree (u[0] = 0).
        let (u, v) = solve_duals(m, n, cost, &basic);

        // Bland entering rule: first cell with negative reduced cost.
        let mut entering = None;
        'scan: for i in 0..m {
            for j in 0..n {
                if basic[i * n + j] {
                    continue;
                }
                if cost[i * n + j] - u[i] - v[j] < -entering_eps {
                    entering = Some((i, j));
                    break 'scan;
                }
            }
        }
        let (ei, ej) = match entering {
            None => {
                let value = mass
                    .iter()
                    .zip(cost)
                    .map(|(q, c)| q * c)
                    .sum();
                return Ok(TransportSolution {
                    value,
                    plan: TransportPlan {
                        rows: m,
                        cols: n,
                        mass,
                    },
                });
            }
            Some(e) => e,
        };

        // The unique cycle: tree path from column ej back to row ei.
        // Node ids: rows 0..m, columns m..m+n.
        let path = tree_path(m, n, &basic, m + ej, ei);
        // Cells along the path alternate signs starting with minus
        // (the first path cell shares column ej with the entering cell).
        let mut minus_cells = Vec::new();
        let mut plus_cells = Vec::new();
        for (step, pair) in path.windows(2).enumerate() {
            let (x, y) = (pair[0], pair[1]);
            let (ci, cj) = if x < m { (x, y - m) } else { (y, x - m) };
            if step % 2 == 0 {
                minus_cells.push((ci, cj));
            } else {
                plus_cells.push((ci, cj));
            }
        }

        // Smallest minus-cell mass leaves; ties break lexicographically.
        let theta = minus_cells
            .iter()
            .map(|&(ci, cj)| mass[ci * n + cj])
            .fold(f64::INFINITY, f64::min);
        let leaving = *minus_cells
            .iter()
            .filter(|&&(ci, cj)| mass[ci * n + cj] <= theta)
            .min()
            .expect("at least one minus cell");

        for &(ci, cj) in &minus_cells {
            mass[ci * n + cj] -= theta;
        }
        for &(ci, cj) in &plus_cells {
            mass[ci * n + cj] += theta;
        }
        mass[ei * n + ej] = theta;
        mass[leaving.0 * n + leaving.1] = 0.0;
        basic[leaving.0 * n + leaving.1] = false;
        basic[ei * n + ej] = true;
    }
    Err(Error::TransportStall(max_pivots))
}

/// Solves `u_i + v_j = c_ij` over the basis tree, rooted at row 0.
fn solve_duals(m: usize, n: usize, cost: &[f64], basic: &[bool]) -> (Vec<f64>, Vec<f64>) {
    let mut u = vec![0.0; m];
    let mut v = vec![0.0; n];
    let mut known = vec![false; m + n];
    known[0] = true;
    let mut stack = vec![0usize];
    while let Some(node) = stack.pop() {
        if node < m {
            for j in 0..n {
                if basic[node * n + j] && !known[m + j] {
                    v[j] = cost[node * n + j] - u[node];
                    known[m + j] = true;
                    stack.push(m + j);
                }
            }
        } else {
            let j = node - m;
            for i in 0..m {
                if basic[i * n + j] && !known[i] {
                    u[i] = cost[i * n + j] - v[j];
                    known[i] = true;
                    stack.push(i);
                }
            }
        }
    }
    (u, v)
}

/// Path between two nodes of the basis spanning tree (BFS with parents).
fn tree_path(m: usize, n: usize, basic: &[bool], from: usize, to: usize) -> Vec<usize> {
    let total = m + n;
    let mut parent = vec![usize::MAX; total];
    parent[from] = from;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(node) = queue.pop_front() {
        if node == to {
            break;
        }
        if node < m {
            for j in 0..n {
                if basic[node * n + j] && parent[m + j] == usize::MAX {
                    parent[m + j] = node;
                    queue.push_back(m + j);
                }
            }
        } else {
            let j = node - m;
            for i in 0..m {
                if basic[i * n + j] && parent[i] == usize::MAX {
                    parent[i] = node;
                    queue.push_back(i);
                }
            }
        }
    }
    let mut path = vec![to];
    let mut node = to;
    while node != from {
        node = parent[node];
        debug_assert_ne!(node, usize::MAX, "basis is not a spanning tree");
        path.push(node);
    }
    path.reverse();
    path
}
