//! Small dense linear algebra with explicit pivot tolerances.
//!
//! Everything here runs on matrices of a few dozen rows at most, so plain
//! full-pivot Gaussian elimination is the right tool: it gives rank decisions
//! at a stated tolerance and a deterministic solution with free variables
//! pinned to zero, which is exactly what the solver's gauge convention needs.

/// Row-major dense matrix.
#[derive(Debug, Clone)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Mat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            m.data[i * c..(i + 1) * c].copy_from_slice(row);
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * x[j])
                    .sum()
            })
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Outcome of an elimination solve.
#[derive(Debug, Clone)]
pub struct SolveOutcome {
    /// A solution with all free variables set to zero.
    pub solution: Vec<f64>,
    /// Number of pivots above the tolerance.
    pub rank: usize,
    /// `max |A x - b|` of the returned solution.
    pub consistency: f64,
    /// One basis vector of the null space per free column.
    pub null_basis: Vec<Vec<f64>>,
}

/// Rank of a matrix with pivots compared against `tol * max|entry|`.
pub fn rank(m: &Mat, tol: f64) -> usize {
    let scale = m.max_abs();
    if scale == 0.0 {
        return 0;
    }
    eliminate(&mut m.clone(), None, tol * scale).len()
}

/// Solves `A x = b` by full-pivot elimination.
///
/// Pivots smaller than `pivot_tol * max|A|` end the elimination; remaining
/// variables are free and pinned to zero. The caller decides what to make of
/// `consistency`.
pub fn solve_zero_gauge(a: &Mat, b: &[f64], pivot_tol: f64) -> SolveOutcome {
    assert_eq!(a.rows, b.len());
    let scale = a.max_abs().max(1e-300);
    let mut work = a.clone();
    let mut rhs = b.to_vec();
    let pivots = eliminate(&mut work, Some(&mut rhs), pivot_tol * scale);

    // Back-substitution over the pivot staircase. Elimination also clears
    // pivot columns from earlier pivot rows, so each pivot row only couples
    // its own pivot with free columns.
    let mut x = vec![0.0; a.cols];
    for &(pr, pc) in pivots.iter().rev() {
        let mut acc = rhs[pr];
        for j in 0..a.cols {
            if j != pc {
                acc -= work.get(pr, j) * x[j];
            }
        }
        x[pc] = acc / work.get(pr, pc);
    }

    let residual = a
        .mul_vec(&x)
        .iter()
        .zip(b)
        .fold(0.0_f64, |m, (ax, bi)| m.max((ax - bi).abs()));

    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, pc)| pc).collect();
    let mut null_basis = Vec::new();
    for free in 0..a.cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0.0; a.cols];
        v[free] = 1.0;
        for &(pr, pc) in pivots.iter().rev() {
            let mut acc = 0.0;
            for j in 0..a.cols {
                if j != pc {
                    acc -= work.get(pr, j) * v[j];
                }
            }
            v[pc] = acc / work.get(pr, pc);
        }
        null_basis.push(v);
    }

    SolveOutcome {
        solution: x,
        rank: pivots.len(),
        consistency: residual,
        null_basis,
    }
}

/// In-place forward elimination with full pivoting.
///
/// Returns the `(row, col)` pivot positions in elimination order. Rows are
/// physically untouched below threshold; the pivot list records structure.
fn eliminate(m: &mut Mat, mut rhs: Option<&mut Vec<f64>>, abs_tol: f64) -> Vec<(usize, usize)> {
    let mut used_rows = vec![false; m.rows];
    let mut used_cols = vec![false; m.cols];
    let mut pivots = Vec::new();
    loop {
        // Largest entry among unused rows/columns.
        let mut best = (0usize, 0usize, 0.0f64);
        for i in 0..m.rows {
            if used_rows[i] {
                continue;
            }
            for j in 0..m.cols {
                if used_cols[j] {
                    continue;
                }
                let v = m.get(i, j).abs();
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        if best.2 <= abs_tol {
            break;
        }
        let (pr, pc, _) = best;
        used_rows[pr] = true;
        used_cols[pc] = true;
        pivots.push((pr, pc));
        let pv = m.get(pr, pc);
        for i in 0..m.rows {
            if i == pr || used_rows[i] {
                continue;
            }
            let factor = m.get(i, pc) / pv;
            if factor == 0.0 {
                continue;
            }
            for j in 0..m.cols {
                let v = m.get(i, j) - factor * m.get(pr, j);
                m.set(i, j, v);
            }
            m.set(i, pc, 0.0);
            if let Some(r) = rhs.as_deref_mut() {
                r[i] -= factor * r[pr];
            }
        }
        // Also clear already-pivoted rows so back-substitution sees a
        // staircase with exactly one pivot per used row.
        for &(qr, _) in &pivots[..pivots.len() - 1] {
            let factor = m.get(qr, pc) / pv;
            if factor == 0.0 {
                continue;
            }
            for j in 0..m.cols {
                let v = m.get(qr, j) - factor * m.get(pr, j);
                m.set(qr, j, v);
            }
            m.set(qr, pc, 0.0);
            if let Some(r) = rhs.as_deref_mut() {
                r[qr] -= factor * r[pr];
            }
        }
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_full_rank_system() {
        let a = Mat::from_rows(&[vec![2.0, 1.0], vec![1.0, 3.0]]);
        let out = solve_zero_gauge(&a, &[5.0, 10.0], 1e-12);
        assert_eq!(out.rank, 2);
        assert!((out.solution[0] - 1.0).abs() < 1e-12);
        assert!((out.solution[1] - 3.0).abs() < 1e-12);
        assert!(out.consistency < 1e-12);
    }

    #[test]
    fn rank_deficient_consistent_uses_zero_gauge() {
        // x + y = 2 twice: solution should pin the free direction to zero.
        let a = Mat::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]);
        let out = solve_zero_gauge(&a, &[2.0, 2.0], 1e-12);
        assert_eq!(out.rank, 1);
        assert!(out.consistency < 1e-12);
        // Exactly one coordinate carries the solution, the other is 0.
        let nonzero: Vec<f64> = out.solution.iter().copied().filter(|v| *v != 0.0).collect();
        assert_eq!(nonzero.len(), 1);
        assert!((nonzero[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn inconsistent_system_reports_residual() {
        let a = Mat::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]);
        let out = solve_zero_gauge(&a, &[2.0, 3.0], 1e-12);
        assert!(out.consistency > 0.4);
    }

    #[test]
    fn rank_of_wide_matrix() {
        let m = Mat::from_rows(&[
            vec![1.0, 0.0, 2.0, -1.0],
            vec![0.0, 1.0, 1.0, 1.0],
            vec![1.0, 1.0, 3.0, 0.0], // row1 + row2
        ]);
        assert_eq!(rank(&m, 1e-10), 2);
    }

    #[test]
    fn random_square_systems_are_reproduced() {
        // A fixed pseudo-random 8x8 system, checked by residual.
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed as f64 / u64::MAX as f64) * 2.0 - 1.0
        };
        let rows: Vec<Vec<f64>> = (0..8).map(|_| (0..8).map(|_| next()).collect()).collect();
        let a = Mat::from_rows(&rows);
        let b: Vec<f64> = (0..8).map(|_| next()).collect();
        let out = solve_zero_gauge(&a, &b, 1e-12);
        assert_eq!(out.rank, 8);
        assert!(out.consistency < 1e-10);
    }
}
