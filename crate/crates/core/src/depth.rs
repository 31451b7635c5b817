//! Multsets and depth regions.
//!
//! For a multset `M` of `C`, `R_{<=k}(M)` is the set of points of the cone
//! that dominate no sum of `k` elements of `M`. A point dominates some sum
//! of `k` elements iff it admits a chain of `k` subtractions of elements of
//! `M` staying inside `C`, so the region index of `x != 0` is one more than
//! the length of its longest such chain. [`DepthIndex`] computes that value
//! directly; [`region_le`] follows the definition and is used as a cross
//! check.

use std::collections::{BTreeSet, HashMap};

use crate::cone::SimplicialCone;
use crate::error::{Error, Result};
use crate::semigroup::CSemigroup;
use crate::vector::IntVector;

/// The ray elements `n_1..n_d` of a multset, ordered by ray index.
pub fn multset_ray_elements(cone: &SimplicialCone, m: &[IntVector]) -> Result<Vec<IntVector>> {
    if m.is_empty() {
        return Err(Error::NotMultset("empty set".into()));
    }
    for x in m {
        x.check_dim(cone.dim())?;
        if x.is_zero() {
            return Err(Error::NotMultset("contains the zero vector".into()));
        }
        if !cone.contains(x) {
            return Err(Error::NotMultset(format!("{x} is outside the cone")));
        }
    }
    if let Some((a, b)) = cone.antichain_violation(m) {
        return Err(Error::NotMultset(format!("{a} <=_C {b}")));
    }
    let mut slots: Vec<Option<IntVector>> = vec![None; cone.dim()];
    for x in m {
        if let Some((i, _)) = cone.ray_multiple(x) {
            slots[i] = Some(x.clone());
        }
    }
    slots
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            s.ok_or_else(|| Error::NotMultset(format!("no element on ray {}", cone.rays()[i])))
        })
        .collect()
}

pub fn is_multset(cone: &SimplicialCone, m: &[IntVector]) -> bool {
    multset_ray_elements(cone, m).is_ok()
}

/// `kM`: all sums of exactly `k` elements, with repetition.
pub fn ksum(m: &[IntVector], k: usize, dim: usize) -> Vec<IntVector> {
    let mut acc: BTreeSet<IntVector> = BTreeSet::from([IntVector::zero(dim)]);
    for _ in 0..k {
        acc = acc
            .iter()
            .flat_map(|a| m.iter().map(move |x| a + x))
            .collect();
    }
    acc.into_iter().collect()
}

/// `R_{<=k}(M)` by definition: points of the bounding polytope
/// `h_i(x) < k h_i(n_i)` that dominate no element of `kM`.
pub fn region_le(cone: &SimplicialCone, m: &[IntVector], k: usize) -> Result<Vec<IntVector>> {
    let rays = multset_ray_elements(cone, m)?;
    if k == 0 {
        return Ok(Vec::new());
    }
    let km = ksum(m, k, cone.dim());
    let bounds: Vec<i64> = cone
        .facet_normals()
        .iter()
        .zip(&rays)
        .map(|(h, n)| k as i64 * h.dot(n))
        .collect();
    let out: Vec<IntVector> = cone
        .enumerate_region(&bounds)
        .filter(|x| !km.iter().any(|a| cone.le(a, x)))
        .collect();
    if cfg!(debug_assertions) {
        // points just past the bounding polytope dominate k n_i
        for (i, n) in rays.iter().enumerate() {
            let kn = n.scale(k as i64);
            debug_assert!(!out.iter().any(|x| cone.le(&kn, x)), "region bound for ray {i}");
        }
    }
    Ok(out)
}

/// `R_k(M)`, with `R_0 = {0}` and `0` excluded from `R_1`.
pub fn region(cone: &SimplicialCone, m: &[IntVector], k: usize) -> Result<Vec<IntVector>> {
    if k == 0 {
        multset_ray_elements(cone, m)?;
        return Ok(vec![IntVector::zero(cone.dim())]);
    }
    let upper = region_le(cone, m, k)?;
    let lower: BTreeSet<IntVector> = region_le(cone, m, k - 1)?.into_iter().collect();
    Ok(upper
        .into_iter()
        .filter(|x| !lower.contains(x) && !x.is_zero())
        .collect())
}

/// Memoized region index for a fixed multset.
pub struct DepthIndex {
    cone: SimplicialCone,
    multset: Vec<IntVector>,
    rays: Vec<IntVector>,
    memo: HashMap<IntVector, usize>,
}

impl DepthIndex {
    pub fn new(cone: &SimplicialCone, m: &[IntVector]) -> Result<DepthIndex> {
        let rays = multset_ray_elements(cone, m)?;
        let mut multset = m.to_vec();
        multset.sort();
        multset.dedup();
        Ok(DepthIndex {
            cone: cone.clone(),
            multset,
            rays,
            memo: HashMap::new(),
        })
    }

    pub fn multset(&self) -> &[IntVector] {
        &self.multset
    }

    /// Length of the longest chain `x - m_1 - ... - m_c` inside `C`.
    pub fn chain_length(&mut self, x: &IntVector) -> usize {
        if let Some(&c) = self.memo.get(x) {
            return c;
        }
        let mut best = 0;
        for i in 0..self.multset.len() {
            let y = x - &self.multset[i];
            if self.cone.contains(&y) {
                best = best.max(1 + self.chain_length(&y));
            }
        }
        self.memo.insert(x.clone(), best);
        best
    }

    /// `k` with `x ∈ R_k(M)`. Requires `x ∈ C`.
    pub fn index(&mut self, x: &IntVector) -> usize {
        debug_assert!(self.cone.contains(x));
        if x.is_zero() {
            0
        } else {
            self.chain_length(x) + 1
        }
    }

    /// Bounds of a polytope containing `R_{<=k}(M)`.
    pub fn bounds(&self, k: usize) -> Vec<i64> {
        self.cone
            .facet_normals()
            .iter()
            .zip(&self.rays)
            .map(|(h, n)| k as i64 * h.dot(n))
            .collect()
    }

    /// `R_k(M)` through the chain index.
    pub fn region(&mut self, k: usize) -> Vec<IntVector> {
        if k == 0 {
            return vec![IntVector::zero(self.cone.dim())];
        }
        let pts: Vec<IntVector> = self.cone.enumerate_region(&self.bounds(k)).collect();
        pts.into_iter().filter(|x| self.index(x) == k).collect()
    }

    /// An element `m` with `x - m ∈ R_{k-1}(M)` for `x ∈ R_k(M)`, `k >= 2`.
    /// For `k = 2` the origin is accepted as well, since it lies in `R_{<=1}`
    /// even though `R_1` is taken without it.
    pub fn descent(&mut self, x: &IntVector) -> Option<IntVector> {
        let k = self.index(x);
        if k < 2 {
            return None;
        }
        let ms = self.multset.clone();
        ms.into_iter().find(|m| {
            let y = x - m;
            self.cone.contains(&y) && (self.index(&y) == k - 1 || (k == 2 && y.is_zero()))
        })
    }
}

/// `Depth(S)`: the least `q` with `R_{q+1}(M(S)) ⊆ S`.
pub fn depth_of(s: &CSemigroup) -> usize {
    let mut idx = DepthIndex::new(s.cone(), &s.minimals())
        .expect("minimal elements of a C-semigroup form a multset");
    let gap_indices: BTreeSet<usize> = s.gaps().iter().map(|h| idx.index(h)).collect();
    (0..).find(|q| !gap_indices.contains(&(q + 1))).unwrap()
}

/// A gap `h` outside `PF(S)` with `h + 2s ∈ S` for every `s ∈ S`, built as
/// `h' - m'` for a gap `h'` of maximal depth.
pub fn non_pf_gap_witness(s: &CSemigroup) -> Result<IntVector> {
    let pf = s.pseudo_frobenius();
    if pf.len() == s.gaps().len() {
        return Err(Error::PfEqualsGaps);
    }
    let q = depth_of(s);
    let mut idx = DepthIndex::new(s.cone(), &s.minimals())?;
    let h_prime = s
        .gaps()
        .iter()
        .find(|h| idx.index(h) == q)
        .cloned()
        .ok_or_else(|| Error::InternalInconsistency(format!("no gap in region {q}")))?;
    let m_prime = idx.descent(&h_prime).ok_or_else(|| {
        Error::InternalInconsistency(format!("{h_prime} has no descent (depth {q})"))
    })?;
    let h = &h_prime - &m_prime;
    if !s.is_gap(&h) || pf.contains(&h) {
        return Err(Error::InternalInconsistency(format!(
            "{h} is not a gap outside PF"
        )));
    }
    for g in s.minimal_generators().iter() {
        for k in [2, 3] {
            if !s.contains(&(&h + &g.scale(k))) {
                return Err(Error::InternalInconsistency(format!(
                    "{h} + {k}*{g} is not in the semigroup"
                )));
            }
        }
    }
    Ok(h)
}
