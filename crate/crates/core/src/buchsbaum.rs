//! Buchsbaum and maximal embedding dimension tests.
//!
//! Three independent criteria are evaluated for `d > 1`: `H(S) = PF(S)`,
//! `S \ {0}` being an ideal of `C`, and `D(S) = PF(S)` for several sets of
//! ray elements. They are equivalent for simplicial C-semigroups, so any
//! disagreement is reported as an internal error.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::depth::multset_ray_elements;
use crate::error::{Error, Result};
use crate::presentation;
use crate::semigroup::CSemigroup;
use crate::cone::SimplicialCone;
use crate::vector::IntVector;

/// Extra ray sets sampled for the `D(S)` criterion.
pub const DEFAULT_RAY_SAMPLES: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub criterion: &'static str,
    pub vectors: Vec<IntVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BuchsbaumVerdict {
    pub buchsbaum: bool,
    pub by_gaps_eq_pf: bool,
    pub by_ideal: bool,
    pub by_dset_eq_pf: bool,
    pub ray_sets: Vec<Vec<IntVector>>,
    pub evidence: Vec<Evidence>,
    pub note: Option<String>,
}

/// Ray sets used for the `D(S)` criterion: the minimal rays, then
/// `samples` random sets whose `i`-th entry is a point of `S` on ray `i`
/// between the minimal ray element and three times it.
pub fn sample_ray_sets(s: &CSemigroup, samples: usize, seed: u64) -> Vec<Vec<IntVector>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let minimal = s.minimal_rays();
    let mut out = vec![minimal.clone()];
    for _ in 0..samples {
        let set = minimal
            .iter()
            .zip(s.cone().rays())
            .map(|(n, r)| {
                let base = n.content() / r.content();
                loop {
                    let l = rng.gen_range(base..=3 * base);
                    let x = r.scale(l);
                    if s.contains(&x) {
                        break x;
                    }
                }
            })
            .collect();
        out.push(set);
    }
    out
}

pub fn is_buchsbaum(s: &CSemigroup, seed: u64) -> Result<BuchsbaumVerdict> {
    if s.dim() == 1 {
        return Ok(BuchsbaumVerdict {
            buchsbaum: true,
            by_gaps_eq_pf: true,
            by_ideal: true,
            by_dset_eq_pf: true,
            ray_sets: Vec::new(),
            evidence: Vec::new(),
            note: Some("one-dimensional semigroup rings are always Buchsbaum".into()),
        });
    }
    let pf = s.pseudo_frobenius();
    let mut evidence = Vec::new();

    let outside: Vec<IntVector> = s.gaps().iter().filter(|h| !pf.contains(h)).cloned().collect();
    let by_gaps_eq_pf = outside.is_empty();
    if !by_gaps_eq_pf {
        evidence.push(Evidence {
            criterion: "gaps_eq_pf",
            vectors: vec![outside[0].clone()],
        });
    }

    let hilb = s.cone().hilbert_basis();
    let ideal_failure = s.minimal_generators().iter().find_map(|g| {
        hilb.iter()
            .find(|h| !s.contains(&(g + *h)))
            .map(|h| vec![g.clone(), h.clone()])
    });
    let by_ideal = ideal_failure.is_none();
    if let Some(v) = ideal_failure {
        evidence.push(Evidence {
            criterion: "ideal",
            vectors: v,
        });
    }

    let ray_sets = sample_ray_sets(s, DEFAULT_RAY_SAMPLES, seed);
    let mut by_dset_eq_pf = true;
    for e in &ray_sets {
        let d = s.d_set(e)?;
        if d != pf {
            by_dset_eq_pf = false;
            let diff: Vec<IntVector> = d
                .iter()
                .filter(|x| !pf.contains(x))
                .chain(pf.iter().filter(|x| !d.contains(x)))
                .cloned()
                .collect();
            evidence.push(Evidence {
                criterion: "dset_eq_pf",
                vectors: diff,
            });
            break;
        }
    }

    if by_gaps_eq_pf != by_ideal || by_gaps_eq_pf != by_dset_eq_pf {
        return Err(Error::InternalInconsistency(format!(
            "criteria disagree: gaps=PF {by_gaps_eq_pf}, ideal {by_ideal}, D=PF {by_dset_eq_pf}"
        )));
    }
    Ok(BuchsbaumVerdict {
        buchsbaum: by_gaps_eq_pf,
        by_gaps_eq_pf,
        by_ideal,
        by_dset_eq_pf,
        ray_sets,
        evidence,
        note: None,
    })
}

/// `S \ {x}` for a minimal element `x`.
pub fn remove_minimal(s: &CSemigroup, x: &IntVector) -> Result<CSemigroup> {
    if !s.minimals().contains(x) {
        return Err(Error::NotMinimalElement(x.clone()));
    }
    s.with_gap(x)
}

/// `msg(S) \ E = Ap(S, E) \ {0}`.
pub fn is_med(s: &CSemigroup, e: &[IntVector]) -> Result<bool> {
    let ap: Vec<IntVector> = s.apery(e)?.into_iter().filter(|x| !x.is_zero()).collect();
    let rest: Vec<IntVector> = s
        .minimal_generators()
        .iter()
        .filter(|g| !e.contains(g))
        .cloned()
        .collect();
    Ok(ap == rest)
}

/// MED test on the multset alone: for all `i <= j` among the non-ray
/// elements there are `k` and `m ∈ M` with `m <=_C m_i + m_j - n_k`.
pub fn is_med_multset(cone: &SimplicialCone, m: &[IntVector]) -> Result<bool> {
    let rays = multset_ray_elements(cone, m)?;
    let rest: Vec<&IntVector> = m.iter().filter(|x| !rays.contains(x)).collect();
    for (i, mi) in rest.iter().enumerate() {
        for mj in &rest[i..] {
            let sum = *mi + *mj;
            let ok = rays
                .iter()
                .any(|n| m.iter().any(|x| cone.le(x, &(&sum - n))));
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn med_precondition(s: &CSemigroup) -> Result<()> {
    if !is_buchsbaum(s, 0)?.buchsbaum {
        return Err(Error::PreconditionFailed("not Buchsbaum".into()));
    }
    if !is_med(s, &s.minimal_rays())? {
        return Err(Error::PreconditionFailed("not of maximal embedding dimension".into()));
    }
    Ok(())
}

/// `(m(m+1) + d(d-1) g) / 2` with `m = |msg(S)| - d`.
pub fn mu_formula(s: &CSemigroup) -> Result<usize> {
    med_precondition(s)?;
    let d = s.dim();
    let m = s.minimal_generators().len() - d;
    Ok((m * (m + 1) + d * (d - 1) * s.genus()) / 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiRelation {
    pub n: usize,
    pub d: usize,
    pub mu: usize,
    pub pf: usize,
    pub predicted_pf: usize,
    pub holds: bool,
}

/// `|PF(S)| = (2μ - (n-d)(n-d+1)) / (d(d-1))` with `μ` from a computed
/// minimal presentation.
pub fn betti_relation(s: &CSemigroup) -> Result<BettiRelation> {
    let d = s.dim();
    if d < 2 {
        return Err(Error::PreconditionFailed("needs d >= 2".into()));
    }
    med_precondition(s)?;
    let n = s.minimal_generators().len();
    let mu = presentation::mu(s.minimal_generators())?;
    let num = 2 * mu as i64 - ((n - d) * (n - d + 1)) as i64;
    let den = (d * (d - 1)) as i64;
    if num % den != 0 || num < 0 {
        return Err(Error::NonIntegralRelation {
            numerator: num,
            denominator: den,
        });
    }
    let predicted_pf = (num / den) as usize;
    let pf = s.pseudo_frobenius().len();
    Ok(BettiRelation {
        n,
        d,
        mu,
        pf,
        predicted_pf,
        holds: predicted_pf == pf,
    })
}
