use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::Value;

/// Whether a matrix splits as `c 1ᵀ + 1 rᵀ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Rank1Outcome {
    Feasible {
        column: Vec<Value>,
        row: Vec<Value>,
    },
    /// The first 2×2 minor (rows `i < k`, columns `j < l`, 0-based) whose
    /// diagonal sum differs from its anti-diagonal sum.
    Infeasible {
        rows: (usize, usize),
        cols: (usize, usize),
        diagonal: (Value, Value),
        anti_diagonal: (Value, Value),
    },
}

/// Decides additivity by the minor criterion `M[i][j] + M[k][l] = M[i][l] + M[k][j]`.
pub fn check_rank1_impossibility(matrix: &[Vec<Value>]) -> Result<Rank1Outcome> {
    let width = matrix.first().map_or(0, Vec::len);
    if matrix.is_empty() || width == 0 || matrix.iter().any(|r| r.len() != width) {
        return Err(Error::Format(
            "matrix must be non-empty and rectangular".into(),
        ));
    }
    let h = matrix.len();
    for i in 0..h {
        for k in i + 1..h {
            for j in 0..width {
                for l in j + 1..width {
                    let d = (matrix[i][j], matrix[k][l]);
                    let a = (matrix[i][l], matrix[k][j]);
                    if d.0 + d.1 != a.0 + a.1 {
                        return Ok(Rank1Outcome::Infeasible {
                            rows: (i, k),
                            cols: (j, l),
                            diagonal: d,
                            anti_diagonal: a,
                        });
                    }
                }
            }
        }
    }
    let column = matrix.iter().map(|r| r[0] - matrix[0][0]).collect();
    let row = matrix[0].clone();
    Ok(Rank1Outcome::Feasible { column, row })
}

/// Rebuilds `c 1ᵀ + 1 rᵀ`.
pub fn rank1_sum(column: &[Value], row: &[Value]) -> Vec<Vec<Value>> {
    column
        .iter()
        .map(|&c| row.iter().map(|&r| c + r).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::tables::P_NONADDITIVE;

    #[test]
    fn nonadditive_matrix() {
        let m: Vec<Vec<Value>> = P_NONADDITIVE.iter().map(|r| r.to_vec()).collect();
        assert_eq!(
            check_rank1_impossibility(&m).unwrap(),
            Rank1Outcome::Infeasible {
                rows: (0, 1),
                cols: (0, 1),
                diagonal: (0, 1),
                anti_diagonal: (1, 2)
            }
        );
    }

    #[test]
    fn zero_and_additive_controls() {
        let zero = vec![vec![0; 3]; 2];
        assert_eq!(
            check_rank1_impossibility(&zero).unwrap(),
            Rank1Outcome::Feasible {
                column: vec![0, 0],
                row: vec![0, 0, 0]
            }
        );
        let m = vec![vec![0, 1], vec![1, 2]];
        let Rank1Outcome::Feasible { column, row } = check_rank1_impossibility(&m).unwrap() else {
            panic!("additive matrix reported infeasible");
        };
        assert_eq!(
            (column.as_slice(), row.as_slice()),
            (&[0, 1][..], &[0, 1][..])
        );
        assert_eq!(rank1_sum(&column, &row), m);
    }

    #[test]
    fn ragged_input_is_an_error() {
        assert!(check_rank1_impossibility(&[vec![1, 2], vec![3]]).is_err());
        assert!(check_rank1_impossibility(&[]).is_err());
    }
}
