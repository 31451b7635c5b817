//! Simplicial integer cones `C = cone(r_1, ..., r_d) ∩ Z^d`.
//!
//! A cone is stored by its primitive rays together with primitive inward
//! facet normals `h_1..h_d` satisfying `h_i(r_j) = 0` for `i != j` and
//! `h_i(r_i) > 0`. Every question about the cone (membership, the order
//! `<=_C`, Apéry polytopes, bounded regions) then reduces to integer
//! comparisons of the values `h_i(x)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::lp::in_rational_cone;
use crate::vector::{check_all_dims, IntVector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialCone {
    dim: usize,
    rays: Vec<IntVector>,
    normals: Vec<IntVector>,
    /// `h_i(r_i)`, cached.
    #[serde(skip)]
    ray_heights: Vec<i64>,
}

impl SimplicialCone {
    /// Builds the cone spanned by `d` linearly independent vectors of `N^d`.
    /// Rays are reduced to primitive vectors and sorted lexicographically.
    pub fn from_rays(rays: &[IntVector]) -> Result<SimplicialCone> {
        let first = rays.first().ok_or(Error::Empty("ray list"))?;
        let dim = first.dim();
        check_all_dims(rays, dim)?;
        if let Some(bad) = rays.iter().find(|r| !r.is_nonnegative()) {
            return Err(Error::NotInNaturals(bad.clone()));
        }
        if rays.iter().any(IntVector::is_zero) {
            return Err(Error::ZeroNotAllowed);
        }
        let mut prim: Vec<IntVector> = rays.iter().map(IntVector::primitive).collect();
        prim.sort();
        prim.dedup();
        if prim.len() != dim {
            return Err(Error::NotSimplicial {
                extremal: prim.len(),
                rank: dim,
            });
        }
        let normals = facet_normals(&prim).ok_or_else(|| {
            let rank = Lattice::hnf(dim, &prim).map(|l| l.rank()).unwrap_or(0);
            Error::NotFullRank { rank, dim }
        })?;
        let ray_heights = normals.iter().zip(&prim).map(|(h, r)| h.dot(r)).collect();
        Ok(SimplicialCone {
            dim,
            rays: prim,
            normals,
            ray_heights,
        })
    }

    /// `C = cone(gens) ∩ Z^d`. A generator direction is extremal iff it is
    /// not in the rational cone of the other directions.
    pub fn from_generators(gens: &[IntVector]) -> Result<SimplicialCone> {
        let first = gens.first().ok_or(Error::Empty("generator list"))?;
        let dim = first.dim();
        check_all_dims(gens, dim)?;
        if let Some(bad) = gens.iter().find(|g| !g.is_nonnegative()) {
            return Err(Error::NotInNaturals(bad.clone()));
        }
        let nonzero: Vec<IntVector> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        if nonzero.is_empty() {
            return Err(Error::Empty("nonzero generators"));
        }
        let rank = Lattice::hnf(dim, &nonzero)?.rank();
        if rank < dim {
            return Err(Error::NotFullRank { rank, dim });
        }
        let directions: BTreeSet<IntVector> = nonzero.iter().map(IntVector::primitive).collect();
        let directions: Vec<IntVector> = directions.into_iter().collect();
        let extremal: Vec<IntVector> = directions
            .iter()
            .enumerate()
            .filter(|(i, p)| {
                let others: Vec<IntVector> = directions
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| j != i)
                    .map(|(_, q)| q.clone())
                    .collect();
                !in_rational_cone(p, &others)
            })
            .map(|(_, p)| p.clone())
            .collect();
        if extremal.len() != rank {
            return Err(Error::NotSimplicial {
                extremal: extremal.len(),
                rank,
            });
        }
        SimplicialCone::from_rays(&extremal)
    }

    /// `N^d`.
    pub fn orthant(dim: usize) -> SimplicialCone {
        let rays: Vec<IntVector> = (0..dim).map(|i| IntVector::unit(dim, i)).collect();
        SimplicialCone::from_rays(&rays).expect("unit vectors span a simplicial cone")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn facet_normals(&self) -> &[IntVector] {
        &self.normals
    }

    /// `h_i(r_i)` for each ray.
    pub fn ray_heights(&self) -> &[i64] {
        &self.ray_heights
    }

    /// The values `h_1(x), ..., h_d(x)`.
    pub fn heights(&self, x: &IntVector) -> Vec<i64> {
        self.normals.iter().map(|h| h.dot(x)).collect()
    }

    pub fn contains(&self, x: &IntVector) -> bool {
        debug_assert_eq!(x.dim(), self.dim);
        self.normals.iter().all(|h| h.dot(x) >= 0)
    }

    /// `x <=_C y`, i.e. `y - x ∈ C`.
    pub fn le(&self, x: &IntVector, y: &IntVector) -> bool {
        self.normals.iter().all(|h| h.dot(y) >= h.dot(x))
    }

    /// If `v = λ r_i` with `λ >= 1`, returns `(i, λ)`.
    pub fn ray_multiple(&self, v: &IntVector) -> Option<(usize, i64)> {
        if v.dim() != self.dim || v.is_zero() {
            return None;
        }
        let g = v.content();
        let p = v.primitive();
        self.rays.iter().position(|r| *r == p).map(|i| (i, g))
    }

    /// The set `{x ∈ C : h_i(x) < bounds_i for all i}` in lexicographic order.
    pub fn enumerate_region(&self, bounds: &[i64]) -> RegionPoints<'_> {
        assert_eq!(bounds.len(), self.dim, "one bound per facet");
        // x = Σ q_i r_i with 0 <= q_i <= (b_i - 1) / h_i(r_i) and rays in N^d
        let upper: Vec<i64> = (0..self.dim)
            .map(|k| {
                let mut s = BigRational::zero();
                for i in 0..self.dim {
                    if bounds[i] <= 0 {
                        continue;
                    }
                    s += BigRational::new(
                        BigInt::from((bounds[i] - 1) * self.rays[i][k]),
                        BigInt::from(self.ray_heights[i]),
                    );
                }
                s.floor().to_integer().to_i64().expect("region bound fits in i64")
            })
            .collect();
        let empty = bounds.iter().any(|&b| b <= 0);
        RegionPoints {
            cone: self,
            bounds: bounds.to_vec(),
            upper,
            current: if empty { None } else { Some(vec![0; self.dim]) },
        }
    }

    /// `{x ∈ C : x <=_C a}` for a single `a ∈ C`.
    pub fn interval_below(&self, a: &IntVector) -> Vec<IntVector> {
        let bounds: Vec<i64> = self.heights(a).iter().map(|h| h + 1).collect();
        self.enumerate_region(&bounds).collect()
    }

    /// `I_C(A)`: all points of the cone below some element of `A`.
    pub fn downset(&self, set: &[IntVector]) -> Result<Vec<IntVector>> {
        check_all_dims(set, self.dim)?;
        let mut out = BTreeSet::new();
        for a in set {
            if !self.contains(a) {
                return Err(Error::NotInCone(a.clone()));
            }
            out.extend(self.interval_below(a));
        }
        Ok(out.into_iter().collect())
    }

    /// First comparable pair of distinct elements, if any.
    pub fn antichain_violation(&self, set: &[IntVector]) -> Option<(IntVector, IntVector)> {
        for (i, a) in set.iter().enumerate() {
            for b in &set[i + 1..] {
                if a == b {
                    continue;
                }
                if self.le(a, b) {
                    return Some((a.clone(), b.clone()));
                }
                if self.le(b, a) {
                    return Some((b.clone(), a.clone()));
                }
            }
        }
        None
    }

    pub fn is_antichain(&self, set: &[IntVector]) -> bool {
        self.antichain_violation(set).is_none()
    }

    /// `Minimals_{<=_C}` of a finite set, sorted and deduplicated.
    pub fn minimals(&self, set: &[IntVector]) -> Vec<IntVector> {
        let uniq: BTreeSet<&IntVector> = set.iter().collect();
        uniq.iter()
            .filter(|x| !uniq.iter().any(|y| y != *x && self.le(y, x)))
            .map(|x| (*x).clone())
            .collect()
    }

    /// `Maximals_{<=_C}` of a finite set, sorted and deduplicated.
    pub fn maximals(&self, set: &[IntVector]) -> Vec<IntVector> {
        let uniq: BTreeSet<&IntVector> = set.iter().collect();
        uniq.iter()
            .filter(|x| !uniq.iter().any(|y| y != *x && self.le(x, y)))
            .map(|x| (*x).clone())
            .collect()
    }

    /// The Hilbert basis: irreducible points of the fundamental
    /// parallelotope `{Σ q_i r_i : 0 <= q_i <= 1}`.
    pub fn hilbert_basis(&self) -> Vec<IntVector> {
        let bounds: Vec<i64> = self.ray_heights.iter().map(|h| h + 1).collect();
        let points: Vec<IntVector> = self
            .enumerate_region(&bounds)
            .filter(|p| !p.is_zero())
            .collect();
        points
            .iter()
            .filter(|p| {
                !points
                    .iter()
                    .any(|u| u != *p && self.contains(&(*p - u)))
            })
            .cloned()
            .collect()
    }

    /// `Ap(C, E)` for one positive multiple `a_i` of each ray.
    pub fn apery(&self, e: &[IntVector]) -> Result<ConeApery> {
        let e = self.order_ray_elements(e)?;
        let bounds: Vec<i64> = self.normals.iter().zip(&e).map(|(h, a)| h.dot(a)).collect();
        let elements = self.enumerate_region(&bounds).collect();
        Ok(ConeApery {
            cone: self.clone(),
            e,
            bounds,
            elements,
        })
    }

    /// Reorders a set of ray elements so that entry `i` lies on ray `i`.
    pub fn order_ray_elements(&self, e: &[IntVector]) -> Result<Vec<IntVector>> {
        check_all_dims(e, self.dim)?;
        let mut slots: Vec<Option<IntVector>> = vec![None; self.dim];
        for a in e {
            match self.ray_multiple(a) {
                Some((i, _)) if slots[i].is_none() => slots[i] = Some(a.clone()),
                _ => return Err(Error::RayMismatch(a.clone())),
            }
        }
        slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| Error::RayMismatch(self.rays[i].clone())))
            .collect()
    }
}

/// Lexicographic scan of a bounding box, filtered by the facet inequalities.
pub struct RegionPoints<'a> {
    cone: &'a SimplicialCone,
    bounds: Vec<i64>,
    upper: Vec<i64>,
    current: Option<Vec<i64>>,
}

impl Iterator for RegionPoints<'_> {
    type Item = IntVector;

    fn next(&mut self) -> Option<IntVector> {
        loop {
            let cur = self.current.as_mut()?;
            let candidate = IntVector::new(cur.clone());
            // advance the odometer (last coordinate fastest)
            let mut k = cur.len();
            loop {
                if k == 0 {
                    self.current = None;
                    break;
                }
                k -= 1;
                if cur[k] < self.upper[k] {
                    cur[k] += 1;
                    for c in cur.iter_mut().skip(k + 1) {
                        *c = 0;
                    }
                    break;
                }
            }
            let inside = self
                .cone
                .normals
                .iter()
                .zip(&self.bounds)
                .all(|(h, &b)| {
                    let v = h.dot(&candidate);
                    v >= 0 && v < b
                });
            if inside {
                return Some(candidate);
            }
        }
    }
}

/// `Ap(C, E) = {x ∈ C : h_i(x) < h_i(a_i) for all i}`, the set of
/// representatives of `C` modulo the group generated by `E`.
#[derive(Clone, Debug, Serialize)]
pub struct ConeApery {
    #[serde(skip)]
    cone: SimplicialCone,
    e: Vec<IntVector>,
    #[serde(skip)]
    bounds: Vec<i64>,
    elements: Vec<IntVector>,
}

impl ConeApery {
    pub fn cone(&self) -> &SimplicialCone {
        &self.cone
    }

    /// Ray elements, ordered by ray index.
    pub fn ray_elements(&self) -> &[IntVector] {
        &self.e
    }

    pub fn elements(&self) -> &[IntVector] {
        &self.elements
    }

    pub fn contains(&self, x: &IntVector) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    /// Writes `x = r + Σ λ_i a_i` with `r ∈ Ap(C, E)`. Since
    /// `h_i(a_j) = 0` for `i != j`, the rational coordinates of `x` in the
    /// basis `E` are `h_i(x) / h_i(a_i)` and `λ_i` is their floor.
    pub fn decompose(&self, x: &IntVector) -> Result<(IntVector, Vec<i64>)> {
        x.check_dim(self.cone.dim)?;
        if !self.cone.contains(x) {
            return Err(Error::NotInCone(x.clone()));
        }
        let hx = self.cone.heights(x);
        let lambda: Vec<i64> = hx.iter().zip(&self.bounds).map(|(h, b)| h.div_floor(b)).collect();
        let mut r = x.clone();
        for (l, a) in lambda.iter().zip(&self.e) {
            r = &r - &a.scale(*l);
        }
        let hr = self.cone.heights(&r);
        if !hr.iter().zip(&self.bounds).all(|(h, b)| *h >= 0 && h < b) {
            return Err(Error::InternalInconsistency(format!(
                "class representative {r} of {x} falls outside Ap(C,E)"
            )));
        }
        Ok((r, lambda))
    }

    /// Representative of the class of `x`.
    pub fn representative(&self, x: &IntVector) -> Result<IntVector> {
        self.decompose(x).map(|(r, _)| r)
    }
}

/// Columns of `R^{-1}` (rows of `R` are the rays), scaled to primitive
/// integer vectors with positive factors. `None` if the rays are dependent.
fn facet_normals(rays: &[IntVector]) -> Option<Vec<IntVector>> {
    let d = rays.len();
    let mut m: Vec<Vec<BigRational>> = rays
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<BigRational> = r
                .coords()
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect();
            row.extend((0..d).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for col in 0..d {
        let piv = (col..d).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col].clone();
        for c in m[col].iter_mut() {
            *c /= &p;
        }
        let prow = m[col].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (c, pv) in row.iter_mut().zip(&prow) {
                    *c -= &f * pv;
                }
            }
        }
    }
    // m = [I | R^{-1}]
    let normals = (0..d)
        .map(|i| {
            let col: Vec<&BigRational> = (0..d).map(|k| &m[k][d + i]).collect();
            let lcm = col.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let ints: Vec<BigInt> = col.iter().map(|c| (c.numer() * &lcm) / c.denom()).collect();
            let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
            let coords = ints
                .iter()
                .map(|c| (c / &g).to_i64().expect("normal fits in i64"))
                .collect();
            IntVector::new(coords)
        })
        .collect::<Vec<_>>();
    debug_assert!(normals.iter().enumerate().all(|(i, h)| {
        rays.iter()
            .enumerate()
            .all(|(j, r)| if i == j { h.dot(r) > 0 } else { h.dot(r) == 0 })
    }));
    Some(normals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iv;
    use proptest::prelude::*;

    fn c31() -> SimplicialCone {
        SimplicialCone::from_rays(&[iv![1, 1], iv![3, 1]]).unwrap()
    }

    #[test]
    fn normals_of_two_ray_cone() {
        let c = c31();
        assert_eq!(c.rays(), &[iv![1, 1], iv![3, 1]]);
        // h_1 vanishes on (3,1), h_2 on (1,1)
        assert_eq!(c.facet_normals(), &[iv![-1, 3], iv![1, -1]]);
    }

    #[test]
    fn rays_from_generators() {
        let g45 = [
            iv![0, 3],
            iv![0, 4],
            iv![0, 5],
            iv![3, 0],
            iv![4, 0],
            iv![5, 0],
            iv![1, 2],
            iv![3, 1],
        ];
        let c = SimplicialCone::from_generators(&g45).unwrap();
        assert_eq!(c, SimplicialCone::orthant(2));

        let g48 = [
            iv![2, 2],
            iv![3, 1],
            iv![3, 2],
            iv![3, 3],
            iv![4, 2],
            iv![4, 3],
            iv![5, 2],
        ];
        let c = SimplicialCone::from_generators(&g48).unwrap();
        assert_eq!(c.rays(), &[iv![1, 1], iv![3, 1]]);

        let c = SimplicialCone::from_generators(&[iv![1, 1], iv![3, 1]]).unwrap();
        assert_eq!(c, c31());
    }

    #[test]
    fn generator_errors() {
        assert!(matches!(
            SimplicialCone::from_generators(&[iv![1, 2], iv![2, 4]]),
            Err(Error::NotFullRank { rank: 1, dim: 2 })
        ));
        // square pyramid: four extremal rays in rank 3
        let sq = [iv![1, 0, 1], iv![0, 1, 1], iv![1, 1, 1], iv![0, 0, 1]];
        assert!(matches!(
            SimplicialCone::from_generators(&sq),
            Err(Error::NotSimplicial { extremal: 4, rank: 3 })
        ));
        assert!(matches!(
            SimplicialCone::from_generators(&[iv![1, -1]]),
            Err(Error::NotInNaturals(_))
        ));
    }

    #[test]
    fn one_dimensional() {
        let c = SimplicialCone::from_generators(&[iv![3], iv![5]]).unwrap();
        assert_eq!(c.rays(), &[iv![1]]);
        assert_eq!(c.facet_normals(), &[iv![1]]);
    }

    #[test]
    fn membership_and_order() {
        let c = c31();
        assert!(c.contains(&iv![2, 1]));
        assert!(!c.contains(&iv![1, 2]));
        assert!(c.contains(&iv![0, 0]));
        assert!(c.le(&iv![1, 1], &iv![2, 2]));
        assert!(!c.le(&iv![3, 1], &iv![2, 2]));
        assert!(c.le(&iv![4, 3], &iv![4, 3]));
    }

    #[test]
    fn hilbert_bases() {
        assert_eq!(c31().hilbert_basis(), vec![iv![1, 1], iv![2, 1], iv![3, 1]]);
        assert_eq!(
            SimplicialCone::orthant(2).hilbert_basis(),
            vec![iv![0, 1], iv![1, 0]]
        );
        let c = SimplicialCone::from_rays(&[iv![1, 0], iv![1, 2]]).unwrap();
        assert_eq!(c.hilbert_basis(), vec![iv![1, 0], iv![1, 1], iv![1, 2]]);
    }

    /// Irreducible points of the cone among all lattice points of a box,
    /// found without the parallelotope argument.
    fn irreducibles_in_box(c: &SimplicialCone, side: i64) -> Vec<IntVector> {
        let pts: Vec<IntVector> = (0..=side)
            .flat_map(|x| (0..=side).map(move |y| iv![x, y]))
            .filter(|p| !p.is_zero() && c.contains(p))
            .collect();
        pts.iter()
            .filter(|p| !pts.iter().any(|u| u != *p && c.contains(&(*p - u)) && !(*p - u).is_zero()))
            .cloned()
            .collect()
    }

    #[test]
    fn hilbert_basis_matches_box_oracle() {
        let c = SimplicialCone::from_rays(&[iv![1, 0], iv![1, 2]]).unwrap();
        let mut hb = irreducibles_in_box(&c, 2);
        hb.sort();
        assert_eq!(hb, c.hilbert_basis());
        let c = SimplicialCone::from_rays(&[iv![1, 3], iv![4, 1]]).unwrap();
        let mut hb = irreducibles_in_box(&c, 8);
        hb.sort();
        assert_eq!(hb, c.hilbert_basis());
    }

    #[test]
    fn cone_apery_sets() {
        let n2 = SimplicialCone::orthant(2);
        let ap = n2.apery(&[iv![0, 3], iv![3, 0]]).unwrap();
        assert_eq!(ap.elements().len(), 9);
        assert!(ap.elements().iter().all(|x| x[0] < 3 && x[1] < 3));
        assert_eq!(ap.ray_elements(), &[iv![0, 3], iv![3, 0]]);

        let ap = n2.apery(&[iv![1, 0], iv![0, 1]]).unwrap();
        assert_eq!(ap.elements(), &[iv![0, 0]]);

        // Ap(C,E) equals {x ∈ C : x - a_i ∉ C for all i}
        let c = c31();
        let e = [iv![2, 2], iv![3, 1]];
        let ap = c.apery(&e).unwrap();
        let oracle: Vec<IntVector> = (0..=12)
            .flat_map(|x| (0..=12).map(move |y| iv![x, y]))
            .filter(|x| c.contains(x) && e.iter().all(|a| !c.contains(&(x - a))))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        assert_eq!(ap.elements(), oracle.as_slice());
        assert_eq!(ap.elements(), &[iv![0, 0], iv![1, 1], iv![2, 1], iv![3, 2]]);

        assert!(matches!(c.apery(&[iv![2, 2], iv![2, 1]]), Err(Error::RayMismatch(_))));
        assert!(matches!(c.apery(&[iv![2, 2], iv![4, 4]]), Err(Error::RayMismatch(_))));
    }

    #[test]
    fn class_decomposition() {
        let n2 = SimplicialCone::orthant(2);
        let ap = n2.apery(&[iv![0, 3], iv![3, 0]]).unwrap();
        // lambda is indexed by ray order: rays are (0,1), (1,0)
        assert_eq!(ap.decompose(&iv![7, 1]).unwrap(), (iv![1, 1], vec![0, 2]));
        assert_eq!(ap.decompose(&iv![4, 4]).unwrap(), (iv![1, 1], vec![1, 1]));
        assert_eq!(ap.decompose(&iv![2, 1]).unwrap(), (iv![2, 1], vec![0, 0]));
        assert!(matches!(
            c31().apery(&[iv![1, 1], iv![3, 1]]).unwrap().decompose(&iv![0, 1]),
            Err(Error::NotInCone(_))
        ));
    }

    #[test]
    fn downsets() {
        let c = c31();
        let a = [iv![5, 4], iv![5, 5], iv![7, 4], iv![8, 4], iv![10, 4], iv![11, 4]];
        assert!(c.is_antichain(&a));
        let expected = vec![
            iv![0, 0], iv![1, 1], iv![2, 1], iv![3, 1], iv![2, 2], iv![3, 2], iv![4, 2],
            iv![5, 2], iv![6, 2], iv![3, 3], iv![4, 3], iv![5, 3], iv![6, 3], iv![7, 3],
            iv![8, 3], iv![9, 3], iv![4, 4], iv![5, 4], iv![5, 5], iv![7, 4], iv![8, 4],
            iv![10, 4], iv![11, 4],
        ];
        let mut expected_sorted = expected.clone();
        expected_sorted.sort();
        assert_eq!(c.downset(&a).unwrap(), expected_sorted);
        assert_eq!(expected.len(), 23);

        assert_eq!(c.downset(&[iv![0, 0]]).unwrap(), vec![iv![0, 0]]);
        assert_eq!(c.downset(&[iv![2, 1]]).unwrap(), vec![iv![0, 0], iv![2, 1]]);
        assert!(matches!(c.downset(&[iv![1, 2]]), Err(Error::NotInCone(_))));
    }

    #[test]
    fn antichains() {
        let c = c31();
        assert!(!c.is_antichain(&[iv![1, 1], iv![2, 2]]));
        assert!(c.is_antichain(&[iv![1, 1]]));
    }

    #[test]
    fn regions() {
        let n2 = SimplicialCone::orthant(2);
        let pts: Vec<_> = n2.enumerate_region(&[2, 2]).collect();
        assert_eq!(pts, vec![iv![0, 0], iv![0, 1], iv![1, 0], iv![1, 1]]);
        let pts: Vec<_> = n2.enumerate_region(&[1, 1]).collect();
        assert_eq!(pts, vec![iv![0, 0]]);

        let c = c31();
        // (3,3) lies on a ray, so its heights include a zero; use the
        // closed interval below (6,4) instead
        let b: Vec<i64> = c.heights(&iv![6, 4]).iter().map(|h| h + 1).collect();
        let pts: Vec<_> = c.enumerate_region(&b).collect();
        // direct scan of a generous box
        let oracle: Vec<IntVector> = (0..=20)
            .flat_map(|x| (0..=20).map(move |y| iv![x, y]))
            .filter(|x| c.heights(x).iter().zip(&b).all(|(h, bb)| *h >= 0 && h < bb))
            .collect();
        assert_eq!(pts, oracle);
        for p in [iv![1, 1], iv![2, 1], iv![3, 1], iv![2, 2]] {
            assert!(pts.contains(&p));
        }
    }

    fn cone2() -> impl Strategy<Value = SimplicialCone> {
        (0i64..=4, 1i64..=4, 1i64..=4, 0i64..=4)
            .prop_filter("independent", |(a, b, c, d)| a * d - b * c != 0)
            .prop_map(|(a, b, c, d)| SimplicialCone::from_rays(&[iv![a, b], iv![c, d]]).unwrap())
    }

    fn cone3() -> impl Strategy<Value = SimplicialCone> {
        prop::collection::vec(prop::collection::vec(0i64..=3, 3), 3)
            .prop_filter_map("independent", |rows| {
                let rays: Vec<IntVector> = rows.into_iter().map(IntVector::new).collect();
                SimplicialCone::from_rays(&rays).ok()
            })
    }

    fn point_in(c: &SimplicialCone, seed: Vec<i64>) -> IntVector {
        // nonnegative integer combination of the rays
        let mut x = IntVector::zero(c.dim());
        for (r, s) in c.rays().iter().zip(seed) {
            x = &x + &r.scale(s);
        }
        x
    }

    proptest! {
        #[test]
        fn order_is_partial(c in cone2(), s in prop::collection::vec(0i64..=3, 6), off in prop::collection::vec(0i64..=2, 6)) {
            let hb = c.hilbert_basis();
            let pick = |k: usize| {
                let mut p = point_in(&c, s[2 * k..2 * k + 2].to_vec());
                p = &p + &hb[(off[k] as usize) % hb.len()];
                p
            };
            let (x, y, z) = (pick(0), pick(1), pick(2));
            prop_assert!(c.le(&x, &x));
            if c.le(&x, &y) && c.le(&y, &x) {
                prop_assert_eq!(&x, &y);
            }
            if c.le(&x, &y) && c.le(&y, &z) {
                prop_assert!(c.le(&x, &z));
            }
        }

        #[test]
        fn generators_route_agrees_with_rays(c in cone2(), extra in prop::collection::vec(0i64..=3, 4)) {
            let mut gens: Vec<IntVector> = c.rays().iter().map(|r| r.scale(2)).collect();
            gens.push(point_in(&c, extra[..2].to_vec()));
            gens.push(point_in(&c, extra[2..].to_vec()));
            prop_assert_eq!(SimplicialCone::from_generators(&gens).unwrap(), c);
        }

        #[test]
        fn outside_points_cannot_reach_two_rays(c in cone3(), x in prop::collection::vec(-6i64..=6, 3), k in 1i64..=4) {
            let x = IntVector::new(x);
            let hits: Vec<usize> = (0..3).filter(|&i| c.contains(&(&x + &c.rays()[i].scale(k)))).collect();
            if hits.len() >= 2 {
                prop_assert!(c.contains(&x));
            }
        }

        #[test]
        fn hilbert_basis_complete_and_minimal(c in cone2()) {
            let hb = c.hilbert_basis();
            for (i, h) in hb.iter().enumerate() {
                let others: Vec<IntVector> = hb.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect();
                prop_assert!(!factors_over(h, &others));
            }
            let bounds: Vec<i64> = c.ray_heights().iter().map(|h| 2 * h + 1).collect();
            for p in c.enumerate_region(&bounds) {
                prop_assert!(factors_over(&p, &hb));
            }
        }

        #[test]
        fn decomposition_reassembles(c in cone3(), mult in prop::collection::vec(1i64..=3, 3), seed in prop::collection::vec(0i64..=4, 3)) {
            let e: Vec<IntVector> = c.rays().iter().zip(&mult).map(|(r, m)| r.scale(*m)).collect();
            let ap = c.apery(&e).unwrap();
            let hb = c.hilbert_basis();
            let x = &point_in(&c, seed) + &hb[0];
            let (r, lambda) = ap.decompose(&x).unwrap();
            let mut back = r.clone();
            for (l, a) in lambda.iter().zip(ap.ray_elements()) {
                back = &back + &a.scale(*l);
            }
            prop_assert_eq!(&back, &x);
            prop_assert!(ap.contains(&r));
            // uniqueness: no other representative in Ap(C,E) differs from x by
            // a nonnegative combination of E with small coefficients
            let mut others = 0;
            for l0 in 0..=lambda[0] { for l1 in 0..=lambda[1] { for l2 in 0..=lambda[2] {
                let y = &(&(&x - &ap.ray_elements()[0].scale(l0)) - &ap.ray_elements()[1].scale(l1)) - &ap.ray_elements()[2].scale(l2);
                if ap.contains(&y) { others += 1; }
            }}}
            prop_assert_eq!(others, 1);
        }

        #[test]
        fn downset_is_down_closed(c in cone2(), seed in prop::collection::vec(0i64..=3, 2)) {
            let a = &point_in(&c, seed) + &c.hilbert_basis()[0];
            let down = c.downset(std::slice::from_ref(&a)).unwrap();
            for x in &down {
                for y in c.interval_below(x) {
                    prop_assert!(down.binary_search(&y).is_ok());
                }
            }
        }
    }

    fn factors_over(p: &IntVector, gens: &[IntVector]) -> bool {
        if p.is_zero() {
            return true;
        }
        gens.iter().any(|g| {
            let rest = p - g;
            rest.is_nonnegative() && factors_over(&rest, gens)
        })
    }
}
