//! Exact rational linear feasibility for convex-hull membership.
//!
//! Decides whether a point is a convex combination of given generators by a
//! phase-one simplex over arbitrary-precision rationals. Bland's pivoting rule
//! guarantees termination and the arithmetic is exact, so hull pruning never
//! depends on a floating-point tolerance.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Is `point` in the convex hull of `generators`?
///
/// Feasibility of  Σ c_y·y = point,  Σ c_y = 1,  c ≥ 0  via phase-one simplex:
/// minimize the sum of artificial variables; the optimum is zero exactly when
/// the system is feasible.
pub(crate) fn in_convex_hull(point: &[u64], generators: &[&[u64]]) -> bool {
    if generators.is_empty() {
        return false;
    }
    let dim = point.len();
    let rows = dim + 1;
    let k = generators.len();
    let cols = k + rows;
    let rat = |v: u64| BigRational::from_integer(BigInt::from(v));

    // Constraint matrix [A | I | rhs]: coordinate rows plus the convexity row.
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(rows);
    for i in 0..rows {
        let mut row: Vec<BigRational> = Vec::with_capacity(cols + 1);
        for g in generators {
            debug_assert_eq!(g.len(), dim);
            row.push(if i < dim { rat(g[i]) } else { BigRational::one() });
        }
        for j in 0..rows {
            row.push(if i == j { BigRational::one() } else { BigRational::zero() });
        }
        row.push(if i < dim { rat(point[i]) } else { BigRational::one() });
        t.push(row);
    }
    let mut basis: Vec<usize> = (k..k + rows).collect();

    // Reduced costs for minimizing the artificial sum: z[j] = c_j - Σ_i T[i][j].
    // The rhs slot lands at -w, the negated artificial objective.
    let mut z: Vec<BigRational> = vec![BigRational::zero(); cols + 1];
    for (j, zj) in z.iter_mut().enumerate() {
        let cost = if j >= k && j < cols { BigRational::one() } else { BigRational::zero() };
        let mut acc = cost;
        for row in &t {
            acc -= &row[j];
        }
        *zj = acc;
    }

    loop {
        // Bland: smallest-index column with negative reduced cost.
        let entering = match (0..cols).find(|&j| z[j].is_negative()) {
            Some(j) => j,
            None => break,
        };
        // Ratio test, ties broken by smallest basis variable (Bland).
        let mut leaving: Option<(usize, BigRational)> = None;
        for i in 0..rows {
            if t[i][entering].is_positive() {
                let ratio = &t[i][cols] / &t[i][entering];
                let better = match &leaving {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && basis[i] < basis[*li])
                    }
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
        }
        let (pivot_row, _) = leaving.expect("phase-one objective is bounded below");
        let pivot = t[pivot_row][entering].clone();
        for v in t[pivot_row].iter_mut() {
            *v /= &pivot;
        }
        for i in 0..rows {
            if i != pivot_row && !t[i][entering].is_zero() {
                let factor = t[i][entering].clone();
                for j in 0..=cols {
                    let delta = &factor * &t[pivot_row][j];
                    t[i][j] -= delta;
                }
            }
        }
        if !z[entering].is_zero() {
            let factor = z[entering].clone();
            for j in 0..=cols {
                let delta = &factor * &t[pivot_row][j];
                z[j] -= delta;
            }
        }
        basis[pivot_row] = entering;
    }
    // w = -z[rhs]; feasible iff the artificial optimum is exactly zero.
    z[cols].is_zero()
}
