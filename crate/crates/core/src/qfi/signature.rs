use num::{Signed, Zero};
use serde::Serialize;

use super::{is_positive_diagonal, QuadraticCandidate};
use crate::rational::{int, Rational};

/// Classification of the quadratic part `Q` of a candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Signature {
    /// Diagonal `Q` with positive diagonal and no linear part.
    PositiveDiagonal,
    PositiveDefinite,
    NegativeDefinite,
    Indefinite,
    /// Singular `Q`, including the purely linear candidates.
    Degenerate,
}

/// `(positive, negative, zero)` eigenvalue counts of a symmetric matrix, by
/// exact congruence diagonalization.
pub fn inertia(q: &[Vec<Rational>]) -> (usize, usize, usize) {
    let mut a: Vec<Vec<Rational>> = q.to_vec();
    let mut alive: Vec<usize> = (0..a.len()).collect();
    let (mut pos, mut neg) = (0, 0);
    while !alive.is_empty() {
        let pivot = match alive.iter().position(|&i| !a[i][i].is_zero()) {
            Some(p) => p,
            None => {
                let pair = alive
                    .iter()
                    .enumerate()
                    .flat_map(|(pi, &i)| alive.iter().map(move |&j| (pi, i, j)))
                    .find(|&(_, i, j)| i != j && !a[i][j].is_zero());
                let Some((pi, i, j)) = pair else { break };
                // Row/column i += row/column j makes a[i][i] = 2 a[i][j] != 0.
                let n = a.len();
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..n {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                pi
            }
        };
        let i = alive.remove(pivot);
        let d = a[i][i].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for &r in &alive {
            let factor = &a[r][i] / &d;
            if factor.is_zero() {
                continue;
            }
            for &c in &alive {
                let delta = &factor * &a[i][c];
                a[r][c] -= delta;
            }
        }
        for &r in &alive {
            a[r][i] = int(0);
            a[i][r] = int(0);
        }
    }
    (pos, neg, alive.len())
}

pub(super) fn classify(v: &QuadraticCandidate) -> Signature {
    if is_positive_diagonal(v) && v.linear().iter().all(Zero::is_zero) {
        return Signature::PositiveDiagonal;
    }
    match inertia(v.q()) {
        (_, _, z) if z > 0 => Signature::Degenerate,
        (_, 0, _) => Signature::PositiveDefinite,
        (0, _, _) => Signature::NegativeDefinite,
        _ => Signature::Indefinite,
    }
}
