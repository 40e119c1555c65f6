//! Exact integer linear algebra on small dense matrices.
//!
//! Everything here works over `i128` internally with fraction-free
//! elimination, so no intermediate value ever leaves the integers. Matrices
//! are row-major `Vec<Vec<_>>`; the sizes involved are the lattice dimension
//! and the ray count of a fan, both small.

use num_integer::Integer;

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Non-negative gcd of all entries; 0 for the zero vector.
pub fn content(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Determinant by Bareiss fraction-free elimination.
pub fn determinant(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            debug_assert_eq!(r.len(), n);
            r.iter().map(|&x| x as i128).collect()
        })
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n.saturating_sub(1) {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn minor(rows: &[Vec<i64>], skip_row: usize, skip_col: usize) -> Vec<Vec<i64>> {
    rows.iter()
        .enumerate()
        .filter(|&(i, _)| i != skip_row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|&(j, _)| j != skip_col)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

/// Adjugate matrix and determinant, so that `rows * adj = det * I`.
pub fn adjugate(rows: &[Vec<i64>]) -> (Vec<Vec<i128>>, i128) {
    let n = rows.len();
    let det = determinant(rows);
    let mut adj = vec![vec![0i128; n]; n];
    if n == 1 {
        adj[0][0] = 1;
        return (adj, det);
    }
    for (i, adj_row) in adj.iter_mut().enumerate() {
        for (j, entry) in adj_row.iter_mut().enumerate() {
            let cofactor = determinant(&minor(rows, j, i));
            *entry = if (i + j) % 2 == 0 {
                cofactor
            } else {
                -cofactor
            };
        }
    }
    (adj, det)
}

/// Inverse of a matrix with determinant ±1, or `None` otherwise.
pub fn inverse_unimodular(rows: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let (adj, det) = adjugate(rows);
    if det.abs() != 1 {
        return None;
    }
    Some(
        adj.into_iter()
            .map(|r| r.into_iter().map(|x| (x * det) as i64).collect())
            .collect(),
    )
}

/// Column-style Hermite reduction `A · V = H`.
///
/// `V` is unimodular (n × n); `H` is in column echelon form: column `k`
/// for `k < rank` has its first nonzero entry at row `pivots[k]` (strictly
/// increasing and positive), entries to the left of each pivot are reduced
/// into `[0, pivot)`, and columns `rank..n` are zero.
#[derive(Debug, Clone)]
pub struct ColumnHermite {
    pub h: Vec<Vec<i128>>,
    pub v: Vec<Vec<i128>>,
    pub pivots: Vec<usize>,
}

impl ColumnHermite {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let e = a.extended_gcd(&b);
    (e.gcd, e.x, e.y)
}

fn col_combine(m: &mut [Vec<i128>], p: usize, q: usize, coeffs: [i128; 4]) {
    // new_p = s·p + t·q, new_q = u·p + w·q
    let [s, t, u, w] = coeffs;
    for row in m.iter_mut() {
        let (x, y) = (row[p], row[q]);
        row[p] = s * x + t * y;
        row[q] = u * x + w * y;
    }
}

pub fn column_hermite(a: &[Vec<i64>], cols: usize) -> ColumnHermite {
    let mut h: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut v: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut pc = 0;
    for i in 0..h.len() {
        if pc == cols {
            break;
        }
        for j in pc + 1..cols {
            let (a_ij, a_ip) = (h[i][j], h[i][pc]);
            if a_ij == 0 {
                continue;
            }
            let (g, s, t) = ext_gcd(a_ip, a_ij);
            let coeffs = [s, t, -a_ij / g, a_ip / g];
            col_combine(&mut h, pc, j, coeffs);
            col_combine(&mut v, pc, j, coeffs);
        }
        if h[i][pc] == 0 {
            continue;
        }
        if h[i][pc] < 0 {
            for row in h.iter_mut().chain(v.iter_mut()) {
                row[pc] = -row[pc];
            }
        }
        let piv = h[i][pc];
        for k in 0..pc {
            let q = Integer::div_floor(&h[i][k], &piv);
            if q != 0 {
                for row in h.iter_mut().chain(v.iter_mut()) {
                    row[k] -= q * row[pc];
                }
            }
        }
        pivots.push(i);
        pc += 1;
    }
    ColumnHermite { h, v, pivots }
}

/// Integer solution `x` of `A x = b` (A is `rows × cols`), if one exists.
///
/// When the columns of `A` are independent the solution is unique.
pub fn solve_integer(a: &[Vec<i64>], cols: usize, b: &[i64]) -> Option<Vec<i64>> {
    debug_assert_eq!(a.len(), b.len());
    let hf = column_hermite(a, cols);
    let mut y = vec![0i128; cols];
    for (k, &p) in hf.pivots.iter().enumerate() {
        let partial: i128 = (0..k).map(|l| hf.h[p][l] * y[l]).sum();
        let rest = b[p] as i128 - partial;
        let piv = hf.h[p][k];
        if rest % piv != 0 {
            return None;
        }
        y[k] = rest / piv;
    }
    for (row, &target) in hf.h.iter().zip(b) {
        let lhs: i128 = row.iter().zip(&y).map(|(h, y)| h * y).sum();
        if lhs != target as i128 {
            return None;
        }
    }
    let x = (0..cols)
        .map(|i| {
            let xi: i128 = hf.v[i].iter().zip(&y).map(|(v, y)| v * y).sum();
            xi as i64
        })
        .collect();
    Some(x)
}
