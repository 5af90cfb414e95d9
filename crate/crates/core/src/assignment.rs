//! Classical one-to-one Hungarian method on a square matrix.
//!
//! Kept separate from the capacitated solver and used to cross-check it on
//! the unit-capacity special case.

use crate::error::{MmdcError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    /// `permutation[i]` is the column assigned to row `i`.
    pub permutation: Vec<usize>,
    /// Sum of the original matrix entries along the permutation.
    pub value: i64,
}

/// Optimal perfect matching of a square matrix: maximum total weight when
/// `maximize`, otherwise minimum total cost (via `w_max − w`).
pub fn solve_assignment_basic(weights: &[Vec<i64>], maximize: bool) -> Result<Assignment> {
    let n = weights.len();
    if let Some(row) = weights.iter().position(|r| r.len() != n) {
        return Err(MmdcError::Contract(format!(
            "assignment matrix must be square: row {} has {} entries, expected {n}",
            row + 1,
            weights[row].len()
        )));
    }
    if n == 0 {
        return Ok(Assignment {
            permutation: Vec::new(),
            value: 0,
        });
    }
    let profit: Vec<Vec<i64>> = if maximize {
        weights.to_vec()
    } else {
        let w_max = weights.iter().flatten().copied().max().unwrap_or(0);
        weights
            .iter()
            .map(|r| r.iter().map(|&w| w_max - w).collect())
            .collect()
    };

    let permutation = maximize_profit(&profit);
    let value = permutation
        .iter()
        .enumerate()
        .map(|(i, &j)| weights[i][j])
        .sum();
    Ok(Assignment { permutation, value })
}

fn maximize_profit(p: &[Vec<i64>]) -> Vec<usize> {
    let n = p.len();
    let mut lx: Vec<i64> = p.iter().map(|r| *r.iter().max().unwrap()).collect();
    let mut ly = vec![0i64; n];
    let mut mate_x: Vec<Option<usize>> = vec![None; n];
    let mut mate_y: Vec<Option<usize>> = vec![None; n];

    for root in 0..n {
        let mut in_s = vec![false; n];
        let mut in_t = vec![false; n];
        let mut slack = vec![i64::MAX; n];
        let mut slack_from = vec![0usize; n];
        let mut prev = vec![0usize; n];

        in_s[root] = true;
        for y in 0..n {
            slack[y] = lx[root] + ly[y] - p[root][y];
            slack_from[y] = root;
        }

        let free_y = loop {
            let (mut delta, mut pick) = (i64::MAX, 0);
            for y in 0..n {
                if !in_t[y] && slack[y] < delta {
                    delta = slack[y];
                    pick = y;
                }
            }
            if delta > 0 {
                // N_l(S) = T
                for x in 0..n {
                    if in_s[x] {
                        lx[x] -= delta;
                    }
                }
                for y in 0..n {
                    if in_t[y] {
                        ly[y] += delta;
                    } else {
                        slack[y] -= delta;
                    }
                }
            }
            in_t[pick] = true;
            prev[pick] = slack_from[pick];
            match mate_y[pick] {
                None => break pick,
                Some(z) => {
                    in_s[z] = true;
                    for y in 0..n {
                        if !in_t[y] {
                            let s = lx[z] + ly[y] - p[z][y];
                            if s < slack[y] {
                                slack[y] = s;
                                slack_from[y] = z;
                            }
                        }
                    }
                }
            }
        };

        let mut y = free_y;
        loop {
            let x = prev[y];
            let next = mate_x[x];
            mate_x[x] = Some(y);
            mate_y[y] = Some(x);
            match next {
                Some(ny) if x != root => y = ny,
                _ => break,
            }
        }
    }
    mate_x
        .into_iter()
        .map(|m| m.expect("perfect matching"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_entry() {
        let a = solve_assignment_basic(&[vec![1]], true).unwrap();
        assert_eq!(
            a,
            Assignment {
                permutation: vec![0],
                value: 1
            }
        );
    }

    #[test]
    fn two_by_two_max() {
        let a = solve_assignment_basic(&[vec![3, 1], vec![2, 4]], true).unwrap();
        assert_eq!(a.permutation, vec![0, 1]);
        assert_eq!(a.value, 7);
    }

    #[test]
    fn two_by_two_min() {
        let a = solve_assignment_basic(&[vec![1, 2], vec![3, 4]], false).unwrap();
        assert_eq!(a.value, 5);
        let a = solve_assignment_basic(&[vec![3, 1], vec![2, 4]], false).unwrap();
        assert_eq!(a.permutation, vec![1, 0]);
        assert_eq!(a.value, 3);
    }

    #[test]
    fn non_square_is_rejected() {
        assert!(solve_assignment_basic(&[vec![1, 2]], true).is_err());
    }

    #[test]
    fn needs_relabel_and_rematch() {
        // every row prefers column 0
        let w = vec![vec![9, 1, 1], vec![8, 7, 1], vec![7, 6, 5]];
        let a = solve_assignment_basic(&w, true).unwrap();
        assert_eq!(a.value, 9 + 7 + 5);
    }
}
