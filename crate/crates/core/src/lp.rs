//! Exact rational feasibility of `A mu = b, mu >= 0` (phase one of the
//! simplex method with Bland's rule, so it always terminates).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::vector::IntVector;

/// True iff `target` is a nonnegative rational combination of `gens`.
pub fn in_rational_cone(target: &IntVector, gens: &[IntVector]) -> bool {
    let m = target.dim();
    let n = gens.len();
    if target.is_zero() {
        return true;
    }
    if n == 0 {
        return false;
    }
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    let width = n + m + 1;
    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<BigRational> = gens.iter().map(|g| q(g[i])).collect();
        row.extend((0..m).map(|k| if k == i { BigRational::one() } else { BigRational::zero() }));
        row.push(q(target[i]));
        if row[width - 1].is_negative() {
            for (j, c) in row.iter_mut().enumerate() {
                if j < n || j == width - 1 {
                    *c = -&*c;
                }
            }
        }
        tab.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // reduced costs of phase one: minimise the sum of the artificials
    let mut cost: Vec<BigRational> = vec![BigRational::zero(); width];
    for row in &tab {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[width - 1] -= &row[width - 1];
    }

    loop {
        let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, row) in tab.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[width - 1] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else {
            // unbounded direction cannot occur in phase one; objective is
            // bounded below by zero
            unreachable!("phase one objective is bounded");
        };
        let pivot = tab[pr][enter].clone();
        for c in tab[pr].iter_mut() {
            *c /= &pivot;
        }
        let prow = tab[pr].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i == pr || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (c, p) in row.iter_mut().zip(&prow) {
                *c -= &f * p;
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for (c, p) in cost.iter_mut().zip(&prow) {
                *c -= &f * p;
            }
        }
        basis[pr] = enter;
    }
    // cost[rhs] holds minus the objective value
    cost[width - 1].is_zero()
}
