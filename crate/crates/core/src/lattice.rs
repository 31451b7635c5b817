//! Exact integer linear algebra: Hermite normal form, lattice membership and
//! intersection.
//!
//! Row reduction runs over arbitrary-precision integers so that intermediate
//! entries never overflow; the canonical basis is converted back to machine
//! integers at the end.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::vector::{check_all_dims, IntVector};

/// A finitely generated subgroup of `Z^d`, stored by its row Hermite normal
/// form. Two lattices are equal iff their bases are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Lattice {
    dim: usize,
    basis: Vec<IntVector>,
}

impl Lattice {
    /// Canonical HNF of the integer row span of `rows`.
    pub fn hnf(dim: usize, rows: &[IntVector]) -> Result<Lattice> {
        check_all_dims(rows, dim)?;
        let big: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.coords().iter().map(|&c| BigInt::from(c)).collect())
            .collect();
        let reduced = hnf_big(big, dim);
        let basis = reduced
            .into_iter()
            .map(|row| {
                row.iter()
                    .map(|c| c.to_i64().ok_or(Error::Overflow))
                    .collect::<Result<Vec<_>>>()
                    .map(IntVector::new)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Lattice { dim, basis })
    }

    /// `G(gens)`: the subgroup generated by a nonempty set of vectors.
    pub fn group_of(gens: &[IntVector]) -> Result<Lattice> {
        let first = gens.first().ok_or(Error::Empty("generator list"))?;
        Lattice::hnf(first.dim(), gens)
    }

    pub fn full(dim: usize) -> Lattice {
        Lattice {
            dim,
            basis: (0..dim).map(|i| IntVector::unit(dim, i)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[IntVector] {
        &self.basis
    }

    pub fn is_full(&self) -> bool {
        *self == Lattice::full(self.dim)
    }

    /// Index in `Z^d` for a full-rank lattice (product of the pivots).
    pub fn index(&self) -> Option<i64> {
        if self.rank() != self.dim {
            return None;
        }
        Some(
            self.basis
                .iter()
                .map(|row| row.coords().iter().copied().find(|&c| c != 0).unwrap_or(1))
                .product(),
        )
    }

    /// Back-substitution against the echelon basis.
    pub fn member(&self, v: &IntVector) -> Result<bool> {
        v.check_dim(self.dim)?;
        let mut w: Vec<i128> = v.coords().iter().map(|&c| c as i128).collect();
        for row in &self.basis {
            let (p, &pivot) = row
                .coords()
                .iter()
                .enumerate()
                .find(|(_, &c)| c != 0)
                .expect("basis rows are nonzero");
            let pivot = pivot as i128;
            if w[p] % pivot != 0 {
                return Ok(false);
            }
            let q = w[p] / pivot;
            if q != 0 {
                for (wj, &rj) in w.iter_mut().zip(row.coords()) {
                    *wj -= q * rj as i128;
                }
            }
        }
        Ok(w.iter().all(|&c| c == 0))
    }

    /// `self` contains every basis row of `other`.
    pub fn contains_lattice(&self, other: &Lattice) -> Result<bool> {
        for row in other.basis() {
            if !self.member(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Intersection of two lattices, via the kernel of the stacked system
    /// `[B1 B1; B2 0]`: rows of its HNF whose first block vanishes carry the
    /// common vectors in their second block.
    pub fn intersect(&self, other: &Lattice) -> Result<Lattice> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let d = self.dim;
        let mut stacked: Vec<Vec<BigInt>> = Vec::new();
        for row in &self.basis {
            let mut r: Vec<BigInt> = row.coords().iter().map(|&c| BigInt::from(c)).collect();
            r.extend(row.coords().iter().map(|&c| BigInt::from(c)));
            stacked.push(r);
        }
        for row in &other.basis {
            let mut r: Vec<BigInt> = row.coords().iter().map(|&c| BigInt::from(c)).collect();
            r.extend(std::iter::repeat_with(BigInt::zero).take(d));
            stacked.push(r);
        }
        let reduced = hnf_big(stacked, 2 * d);
        let common: Vec<IntVector> = reduced
            .into_iter()
            .filter(|row| row[..d].iter().all(Zero::is_zero))
            .map(|row| {
                row[d..]
                    .iter()
                    .map(|c| c.to_i64().ok_or(Error::Overflow))
                    .collect::<Result<Vec<_>>>()
                    .map(IntVector::new)
            })
            .collect::<Result<_>>()?;
        Lattice::hnf(d, &common)
    }
}

fn hnf_big(mut rows: Vec<Vec<BigInt>>, dim: usize) -> Vec<Vec<BigInt>> {
    let mut r = 0;
    for col in 0..dim {
        if r == rows.len() {
            break;
        }
        loop {
            let Some(piv) = (r..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()))
            else {
                break;
            };
            rows.swap(r, piv);
            let mut cleared = true;
            for i in r + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[r][col]);
                sub_multiple(&mut rows, i, r, &q);
                if !rows[i][col].is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                if rows[r][col].is_negative() {
                    for c in rows[r].iter_mut() {
                        *c = -&*c;
                    }
                }
                for i in 0..r {
                    let q = rows[i][col].div_floor(&rows[r][col]);
                    if !q.is_zero() {
                        sub_multiple(&mut rows, i, r, &q);
                    }
                }
                r += 1;
                break;
            }
        }
    }
    rows.truncate(r);
    rows
}

fn sub_multiple(rows: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    let src = rows[source].clone();
    for (t, s) in rows[target].iter_mut().zip(src.iter()) {
        *t -= q * s;
    }
}
