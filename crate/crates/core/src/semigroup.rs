//! C-semigroups, stored as a cone plus a finite gap set, and plain affine
//! semigroups given by generators.

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use num_integer::Integer;
use serde::Serialize;

use crate::cone::SimplicialCone;
use crate::depth::{multset_ray_elements, DepthIndex};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::vector::{check_all_dims, IntVector};

/// `S = C \ H` with `H` finite.
#[derive(Clone, Debug, Serialize)]
pub struct CSemigroup {
    cone: SimplicialCone,
    gaps: Vec<IntVector>,
    #[serde(skip)]
    msg: OnceLock<Vec<IntVector>>,
    #[serde(skip)]
    pf: OnceLock<Vec<IntVector>>,
}

impl PartialEq for CSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.cone == other.cone && self.gaps == other.gaps
    }
}

impl Eq for CSemigroup {}

impl CSemigroup {
    fn new_unchecked(cone: SimplicialCone, gaps: BTreeSet<IntVector>) -> CSemigroup {
        CSemigroup {
            cone,
            gaps: gaps.into_iter().collect(),
            msg: OnceLock::new(),
            pf: OnceLock::new(),
        }
    }

    /// Validates `H ⊆ C \ {0}` and that `C \ H` is closed under addition.
    pub fn from_cone_and_gaps(cone: SimplicialCone, gaps: Vec<IntVector>) -> Result<CSemigroup> {
        check_all_dims(&gaps, cone.dim())?;
        let set: BTreeSet<IntVector> = gaps.into_iter().collect();
        for h in &set {
            if h.is_zero() {
                return Err(Error::ZeroNotAllowed);
            }
            if !cone.contains(h) {
                return Err(Error::NotInCone(h.clone()));
            }
        }
        for h in &set {
            for x in cone.interval_below(h) {
                if x.is_zero() || x == *h || set.contains(&x) {
                    continue;
                }
                let y = h - &x;
                if !set.contains(&y) {
                    return Err(Error::NotClosed {
                        gap: h.clone(),
                        x,
                        y,
                    });
                }
            }
        }
        Ok(CSemigroup::new_unchecked(cone, set))
    }

    /// `S = (M + C) ∪ {0}` for a multset `M`.
    pub fn from_multset_ideal(cone: SimplicialCone, m: &[IntVector]) -> Result<CSemigroup> {
        let rays = multset_ray_elements(&cone, m)?;
        let bounds: Vec<i64> = cone
            .facet_normals()
            .iter()
            .zip(&rays)
            .map(|(h, n)| h.dot(n))
            .collect();
        let gaps: BTreeSet<IntVector> = cone
            .enumerate_region(&bounds)
            .filter(|x| !x.is_zero() && m.iter().all(|a| !cone.le(a, x)))
            .collect();
        Ok(CSemigroup::new_unchecked(cone, gaps))
    }

    /// `S = (C \ I_C(A)) ∪ {0}` for a finite antichain `A` not containing `0`.
    pub fn from_downset_complement(cone: SimplicialCone, a: &[IntVector]) -> Result<CSemigroup> {
        check_all_dims(a, cone.dim())?;
        if a.iter().any(IntVector::is_zero) {
            return Err(Error::ZeroNotAllowed);
        }
        if let Some((x, y)) = cone.antichain_violation(a) {
            return Err(Error::NotAntichain(x, y));
        }
        let gaps: BTreeSet<IntVector> = cone
            .downset(a)?
            .into_iter()
            .filter(|x| !x.is_zero())
            .collect();
        Ok(CSemigroup::new_unchecked(cone, gaps))
    }

    /// Builds `S = <gens>` and certifies that it is a C-semigroup by finding
    /// a depth region of `M(S)` contained in `S`; every later region is then
    /// contained in `S` as well. Gives up with `NotVerified` after `k_max`
    /// regions.
    pub fn from_generators(gens: &[IntVector], k_max: usize) -> Result<CSemigroup> {
        let cone = SimplicialCone::from_generators(gens)?;
        let gens: Vec<IntVector> = gens
            .iter()
            .filter(|g| !g.is_zero())
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let not_verified = Error::NotVerified { k_max };
        if !Lattice::group_of(&gens)?.is_full() {
            return Err(not_verified);
        }
        for r in cone.rays() {
            let g = gens
                .iter()
                .filter_map(|x| cone.ray_multiple(x).filter(|(i, _)| cone.rays()[*i] == *r))
                .fold(0i64, |acc, (_, l)| acc.gcd(&l));
            if g != 1 {
                return Err(not_verified);
            }
        }
        let m = cone.minimals(&gens);
        let mut idx = DepthIndex::new(&cone, &m)?;
        let mut member = GeneratorMembership::new(&gens);
        let mut gaps = Vec::new();
        for k in 1..=k_max {
            let outside: Vec<IntVector> = idx
                .region(k)
                .into_iter()
                .filter(|x| !member.contains(x))
                .collect();
            if outside.is_empty() {
                return CSemigroup::from_cone_and_gaps(cone, gaps);
            }
            gaps.extend(outside);
        }
        Err(not_verified)
    }

    pub fn cone(&self) -> &SimplicialCone {
        &self.cone
    }

    pub fn dim(&self) -> usize {
        self.cone.dim()
    }

    /// `H(S)`, sorted.
    pub fn gaps(&self) -> &[IntVector] {
        &self.gaps
    }

    pub fn genus(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_gap(&self, x: &IntVector) -> bool {
        self.gaps.binary_search(x).is_ok()
    }

    pub fn contains(&self, x: &IntVector) -> bool {
        x.dim() == self.dim() && self.cone.contains(x) && !self.is_gap(x)
    }

    /// `G(S)`. A C-semigroup always generates `Z^d`; this is recomputed from
    /// the minimal generators rather than assumed.
    pub fn group(&self) -> Lattice {
        Lattice::group_of(self.minimal_generators()).expect("nonempty generator list")
    }

    /// The least element of `S` on each ray, ordered by ray index.
    pub fn minimal_rays(&self) -> Vec<IntVector> {
        self.cone
            .rays()
            .iter()
            .map(|r| {
                (1..)
                    .map(|l| r.scale(l))
                    .find(|x| !self.is_gap(x))
                    .expect("gaps are finite")
            })
            .collect()
    }

    /// `msg(S)`: irreducible elements among `Ap(S, E) ∪ E`, `E` the minimal
    /// rays.
    pub fn minimal_generators(&self) -> &[IntVector] {
        self.msg.get_or_init(|| {
            let e = self.minimal_rays();
            let mut cands: BTreeSet<IntVector> = self
                .apery(&e)
                .expect("minimal rays are ray elements of S")
                .into_iter()
                .filter(|x| !x.is_zero())
                .collect();
            cands.extend(e);
            cands.into_iter().filter(|s| self.is_irreducible(s)).collect()
        })
    }

    /// `s` is not a sum of two nonzero elements of `S`.
    pub fn is_irreducible(&self, s: &IntVector) -> bool {
        if !self.contains(s) || s.is_zero() {
            return false;
        }
        !self
            .cone
            .interval_below(s)
            .iter()
            .any(|u| !u.is_zero() && u != s && self.contains(u) && self.contains(&(s - u)))
    }

    /// `M(S)`: minimal elements of `S \ {0}` under `<=_C`.
    pub fn minimals(&self) -> Vec<IntVector> {
        self.cone.minimals(self.minimal_generators())
    }

    /// Gaps `h` with `h + g ∈ S` for every minimal generator `g`.
    pub fn pseudo_frobenius(&self) -> Vec<IntVector> {
        self.pf
            .get_or_init(|| {
                let msg = self.minimal_generators();
                self.gaps
                    .iter()
                    .filter(|h| msg.iter().all(|g| self.contains(&(*h + g))))
                    .cloned()
                    .collect()
            })
            .clone()
    }

    /// Maximal gaps under `<=_C`.
    pub fn maximal_gaps(&self) -> Vec<IntVector> {
        self.cone.maximals(&self.gaps)
    }

    /// `D(S)` for the ray elements `E`: gaps `h` with `h + 2a_i ∈ S` for at
    /// least two indices. Points outside `C` can never qualify, so only gaps
    /// are scanned.
    pub fn d_set(&self, e: &[IntVector]) -> Result<Vec<IntVector>> {
        let e = self.check_ray_elements(e)?;
        Ok(self
            .gaps
            .iter()
            .filter(|h| {
                e.iter()
                    .filter(|a| self.contains(&(*h + &a.scale(2))))
                    .count()
                    >= 2
            })
            .cloned()
            .collect())
    }

    fn check_ray_elements(&self, e: &[IntVector]) -> Result<Vec<IntVector>> {
        let e = self.cone.order_ray_elements(e)?;
        if let Some(a) = e.iter().find(|a| !self.contains(a)) {
            return Err(Error::RayMismatch(a.clone()));
        }
        Ok(e)
    }

    /// `Ap(S, E) = {s ∈ S : s - a_i ∉ S for all i}`. If `h_i(s) >= h_i(a_i)`
    /// then `s - a_i` is in `C` and must be a gap, which bounds the search.
    pub fn apery(&self, e: &[IntVector]) -> Result<Vec<IntVector>> {
        let e = self.check_ray_elements(e)?;
        let bounds: Vec<i64> = self
            .cone
            .facet_normals()
            .iter()
            .zip(&e)
            .map(|(h, a)| {
                let top = self.gaps.iter().map(|g| h.dot(g)).max().unwrap_or(-1);
                h.dot(a) + top + 1
            })
            .collect();
        Ok(self
            .cone
            .enumerate_region(&bounds)
            .filter(|s| self.contains(s) && e.iter().all(|a| !self.contains(&(s - a))))
            .collect())
    }

    /// `Ap(S, E)` grouped by class representative in `Ap(C, E)`.
    pub fn apery_classes(&self, e: &[IntVector]) -> Result<Vec<(IntVector, Vec<IntVector>)>> {
        let ap_c = self.cone.apery(e)?;
        let mut classes: std::collections::BTreeMap<IntVector, Vec<IntVector>> =
            ap_c.elements().iter().map(|r| (r.clone(), Vec::new())).collect();
        for s in self.apery(e)? {
            let r = ap_c.representative(&s)?;
            classes.get_mut(&r).expect("representative lies in Ap(C,E)").push(s);
        }
        Ok(classes.into_iter().collect())
    }

    /// `S \ {x}`, validated as a C-semigroup.
    pub fn with_gap(&self, x: &IntVector) -> Result<CSemigroup> {
        let mut gaps = self.gaps.clone();
        gaps.push(x.clone());
        CSemigroup::from_cone_and_gaps(self.cone.clone(), gaps)
    }

    pub fn to_affine(&self) -> AffineSemigroup {
        AffineSemigroup::new(self.minimal_generators().to_vec()).expect("valid generators")
    }
}

/// Membership in `<gens>` by memoized search over `x - g`.
pub struct GeneratorMembership {
    gens: Vec<IntVector>,
    memo: HashMap<IntVector, bool>,
}

impl GeneratorMembership {
    pub fn new(gens: &[IntVector]) -> GeneratorMembership {
        GeneratorMembership {
            gens: gens.iter().filter(|g| !g.is_zero()).cloned().collect(),
            memo: HashMap::new(),
        }
    }

    pub fn contains(&mut self, x: &IntVector) -> bool {
        if x.is_zero() {
            return true;
        }
        if !x.is_nonnegative() {
            return false;
        }
        if let Some(&b) = self.memo.get(x) {
            return b;
        }
        let mut found = false;
        for i in 0..self.gens.len() {
            let y = x - &self.gens[i];
            if y.is_nonnegative() && self.contains(&y) {
                found = true;
                break;
            }
        }
        self.memo.insert(x.clone(), found);
        found
    }
}

/// A finitely generated submonoid of `N^d`, not necessarily a C-semigroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineSemigroup {
    gens: Vec<IntVector>,
    group: Lattice,
}

impl AffineSemigroup {
    pub fn new(gens: Vec<IntVector>) -> Result<AffineSemigroup> {
        let first = gens.first().ok_or(Error::Empty("generator list"))?;
        check_all_dims(&gens, first.dim())?;
        if let Some(bad) = gens.iter().find(|g| !g.is_nonnegative()) {
            return Err(Error::NotInNaturals(bad.clone()));
        }
        if gens.iter().any(IntVector::is_zero) {
            return Err(Error::ZeroNotAllowed);
        }
        let group = Lattice::group_of(&gens)?;
        Ok(AffineSemigroup { gens, group })
    }

    pub fn gens(&self) -> &[IntVector] {
        &self.gens
    }

    pub fn dim(&self) -> usize {
        self.group.dim()
    }

    /// `G(S)`.
    pub fn group(&self) -> &Lattice {
        &self.group
    }

    pub fn contains(&self, x: &IntVector) -> bool {
        x.dim() == self.dim() && GeneratorMembership::new(&self.gens).contains(x)
    }

    pub fn membership(&self) -> GeneratorMembership {
        GeneratorMembership::new(&self.gens)
    }

    /// Generators that are not sums of the others, in input order.
    pub fn minimal_generators(&self) -> Vec<IntVector> {
        let uniq: Vec<IntVector> = self
            .gens
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut out = Vec::new();
        for g in &self.gens {
            if out.contains(g) {
                continue;
            }
            let others: Vec<IntVector> = uniq.iter().filter(|h| *h != g).cloned().collect();
            if !GeneratorMembership::new(&others).contains(g) {
                out.push(g.clone());
            }
        }
        out
    }

    /// The least generator on each extremal ray, ordered by ray index. The
    /// points of `S` on a ray are sums of generators on that ray.
    pub fn minimal_rays(&self) -> Result<Vec<IntVector>> {
        let cone = SimplicialCone::from_generators(&self.gens)?;
        Ok(cone
            .rays()
            .iter()
            .enumerate()
            .map(|(i, _)| {
                self.gens
                    .iter()
                    .filter(|g| cone.ray_multiple(g).map(|(j, _)| j) == Some(i))
                    .min_by_key(|g| g.content())
                    .expect("each extremal ray carries a generator")
                    .clone()
            })
            .collect())
    }

    /// Point query for `D(S)`: `x ∈ G(S) \ S` and `x + 2a_i ∈ S` for at least
    /// two of the ray elements.
    pub fn d_set_member(&self, e: &[IntVector], x: &IntVector) -> Result<bool> {
        check_all_dims(e, self.dim())?;
        x.check_dim(self.dim())?;
        let mut mem = self.membership();
        if !self.group.member(x)? || mem.contains(x) {
            return Ok(false);
        }
        let hits = e.iter().filter(|a| mem.contains(&(x + &a.scale(2)))).count();
        Ok(hits >= 2)
    }

    /// `c * S`.
    pub fn scale(&self, c: i64) -> Result<AffineSemigroup> {
        if c < 1 {
            return Err(Error::PreconditionFailed(format!("scale factor {c} < 1")));
        }
        AffineSemigroup::new(self.gens.iter().map(|g| g.scale(c)).collect())
    }
}
