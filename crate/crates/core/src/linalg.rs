//! Exact dense linear solving over rationals.

use crate::rational::Rational;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix has {rows} rows but right-hand side has {rhs} entries")]
    DimensionMismatch { rows: usize, rhs: usize },
    #[error("matrix rows have inconsistent lengths")]
    RaggedMatrix,
}

/// Solution set of a linear system `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    /// Exactly one solution.
    Unique(Vec<Rational>),
    /// An affine family: `particular + span(null_basis)`.  The particular
    /// solution is canonical (free variables set to zero), so downstream
    /// enumeration is deterministic.
    Parametric {
        particular: Vec<Rational>,
        null_basis: Vec<Vec<Rational>>,
    },
    /// No solution.
    Inconsistent,
}

/// Exact Gaussian elimination of `A x = b`.
///
/// `matrix` is row-major; all rows must have the same length and match `rhs`.
/// An empty system (no rows) over `n` unknowns is fully parametric.
pub fn linear_solve(
    matrix: &[Vec<Rational>],
    rhs: &[Rational],
) -> Result<LinearSolution, LinalgError> {
    if matrix.len() != rhs.len() {
        return Err(LinalgError::DimensionMismatch {
            rows: matrix.len(),
            rhs: rhs.len(),
        });
    }
    let cols = matrix.first().map_or(0, Vec::len);
    if matrix.iter().any(|r| r.len() != cols) {
        return Err(LinalgError::RaggedMatrix);
    }

    // augmented matrix, reduced to RREF
    let mut aug: Vec<Vec<Rational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let rows = aug.len();

    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(rank, pr);
        let pivot = aug[rank][col].clone();
        for x in &mut aug[rank] {
            *x /= &pivot;
        }
        for r in 0..rows {
            if r != rank && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for c in 0..=cols {
                    let delta = &factor * &aug[rank][c];
                    aug[r][c] -= delta;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }

    if aug[rank..].iter().any(|r| !r[cols].is_zero()) {
        return Ok(LinearSolution::Inconsistent);
    }

    let mut particular = vec![Rational::zero(); cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        particular[c] = aug[i][cols].clone();
    }

    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    if free_cols.is_empty() {
        return Ok(LinearSolution::Unique(particular));
    }
    let null_basis = free_cols
        .iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); cols];
            v[fc] = Rational::from_integer(1.into());
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -aug[i][fc].clone();
            }
            v
        })
        .collect();
    Ok(LinearSolution::Parametric {
        particular,
        null_basis,
    })
}
