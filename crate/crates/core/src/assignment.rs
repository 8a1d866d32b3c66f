//! Exact square linear assignment.
//!
//! The solver is the shortest-augmenting-path form of the Hungarian method
//! with row and column potentials, `O(M³)`. Among optimal assignments the
//! lexicographically smallest image array is returned: the final potentials
//! identify the tight edges, and every optimal assignment is a perfect
//! matching on exactly those edges, so a greedy row-by-row pass with a
//! matching-feasibility check selects the smallest one.

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Reduced costs at or below this multiple of the cost scale count as tight.
const TIGHT_TOL: f64 = 1e-10;

/// Permutation maximizing `Σ_i score[i][σ(i)]`, with its value.
pub fn max_assignment(score: &[Vec<f64>]) -> Result<(Permutation, f64)> {
    let n = score.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    for (i, row) in score.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                cols: row.len(),
            });
        }
        if let Some(j) = row.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row: i, col: j });
        }
    }
    let cost: Vec<Vec<f64>> = score.iter().map(|r| r.iter().map(|v| -v).collect()).collect();
    let (_, u, v) = hungarian_min(&cost);

    let scale = cost
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |m, x| m.max(x.abs()))
        .max(1.0);
    let tol = TIGHT_TOL * scale;
    let tight: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| cost[i][j] - u[i] - v[j] <= tol).collect())
        .collect();
    let images = lexicographic_tight_matching(&tight);
    let value = images.iter().enumerate().map(|(i, &j)| score[i][j]).sum();
    Ok((Permutation::new(images)?, value))
}

/// Minimum-cost assignment with potentials; returns `(row -> col, u, v)`
/// with `cost[i][j] - u[i] - v[j] >= 0` and equality on the assignment.
fn hungarian_min(cost: &[Vec<f64>]) -> (Vec<usize>, Vec<f64>, Vec<f64>) {
    let n = cost.len();
    // One-based internal arrays; index 0 is the virtual source column.
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut col_owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        col_owner[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = col_owner[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[col_owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if col_owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            col_owner[j0] = col_owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assign = vec![0; n];
    for j in 1..=n {
        assign[col_owner[j] - 1] = j - 1;
    }
    (assign, u[1..].to_vec(), v[1..].to_vec())
}

/// Lexicographically smallest perfect matching on the tight-edge graph.
fn lexicographic_tight_matching(tight: &[Vec<bool>]) -> Vec<usize> {
    let n = tight.len();
    let mut fixed: Vec<usize> = Vec::with_capacity(n);
    let mut col_used = vec![false; n];
    for i in 0..n {
        let choice = (0..n).find(|&j| {
            if col_used[j] || !tight[i][j] {
                return false;
            }
            col_used[j] = true;
            let ok = has_perfect_matching(tight, i + 1, &col_used);
            col_used[j] = false;
            ok
        });
        // The optimal assignment itself is tight, so some column always works.
        let j = choice.expect("tight graph admits a perfect matching");
        col_used[j] = true;
        fixed.push(j);
    }
    fixed
}

/// Kuhn's augmenting-path check that rows `first_row..n` can be matched into
/// the unused columns along tight edges.
fn has_perfect_matching(tight: &[Vec<bool>], first_row: usize, col_used: &[bool]) -> bool {
    let n = tight.len();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    fn augment(
        row: usize,
        tight: &[Vec<bool>],
        col_used: &[bool],
        owner: &mut [Option<usize>],
        visited: &mut [bool],
    ) -> bool {
        for j in 0..tight.len() {
            if col_used[j] || !tight[row][j] || visited[j] {
                continue;
            }
            visited[j] = true;
            let free = match owner[j] {
                None => true,
                Some(other) => augment(other, tight, col_used, owner, visited),
            };
            if free {
                owner[j] = Some(row);
                return true;
            }
        }
        false
    }
    for row in first_row..n {
        let mut visited = vec![false; n];
        if !augment(row, tight, col_used, &mut owner, &mut visited) {
            return false;
        }
    }
    true
}
