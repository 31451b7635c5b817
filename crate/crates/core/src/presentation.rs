//! Factorizations and minimal presentations.
//!
//! For a degree `b`, let `∇_b` be the graph on the factorizations of `b`
//! with an edge between two factorizations whose supports meet. A minimal
//! presentation needs exactly `components(∇_b) - 1` relations in degree `b`,
//! and the degrees where this is positive appear among the degrees of every
//! presentation.
//!
//! Candidate degrees come from a presentation built on `Ap(S, E)`, where `E`
//! holds one generator per extremal ray. Every factorization can be
//! rewritten, one non-ray generator at a time, into a fixed factorization of
//! some `w ∈ Ap(S, E)` plus ray generators; this uses relations in degrees
//! `w + g`. Two such normal forms of the same element differ by relations in
//! degrees `w + Σ max(δ_i, 0) a_i` where `w' - w = Σ δ_i a_i`. Elimination
//! through [`toric_generators`] is kept as an independent route.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::binomial::{exponent_degree, toric_generators};
use crate::cone::SimplicialCone;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::semigroup::GeneratorMembership;
use crate::vector::{check_all_dims, IntVector};

pub type Factorization = Vec<u32>;

/// All `u ∈ N^n` with `Σ u_i a_i = b`, lexicographically sorted. Generators
/// must be nonzero points of `N^d`.
pub fn factorizations(gens: &[IntVector], b: &IntVector) -> Vec<Factorization> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; gens.len()];
    if b.is_nonnegative() {
        fact_rec(gens, 0, b.clone(), &mut cur, &mut out);
    }
    out.sort();
    out
}

fn fact_rec(
    gens: &[IntVector],
    i: usize,
    rest: IntVector,
    cur: &mut Vec<u32>,
    out: &mut Vec<Factorization>,
) {
    if rest.is_zero() {
        out.push(cur.clone());
        return;
    }
    if i == gens.len() {
        return;
    }
    let g = &gens[i];
    let max = g
        .coords()
        .iter()
        .zip(rest.coords())
        .filter(|(c, _)| **c > 0)
        .map(|(c, r)| r / c)
        .min()
        .unwrap_or(0);
    let mut r = rest;
    for k in 0..=max {
        cur[i] = k as u32;
        fact_rec(gens, i + 1, r.clone(), cur, out);
        if k < max {
            r = &r - g;
        }
    }
    cur[i] = 0;
}

/// Connected components of `∇_b`, each sorted, ordered by least element.
pub fn graph_components(z: &[Factorization]) -> Vec<Vec<Factorization>> {
    let n = z.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if z[i].iter().zip(&z[j]).any(|(a, b)| *a > 0 && *b > 0) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Factorization>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(z[i].clone());
    }
    let mut comps: Vec<Vec<Factorization>> = groups
        .into_values()
        .map(|mut c| {
            c.sort();
            c
        })
        .collect();
    comps.sort();
    comps
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRelations {
    pub degree: IntVector,
    pub pairs: Vec<(Factorization, Factorization)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub gens: Vec<IntVector>,
    pub degrees: Vec<DegreeRelations>,
    pub mu: usize,
}

impl Presentation {
    pub fn betti_degrees(&self) -> Vec<IntVector> {
        self.degrees.iter().map(|d| d.degree.clone()).collect()
    }

    pub fn pairs(&self) -> impl Iterator<Item = &(Factorization, Factorization)> {
        self.degrees.iter().flat_map(|d| d.pairs.iter())
    }
}

/// Relations in one degree: each component's least factorization linked to
/// the least factorization overall.
fn degree_relations(gens: &[IntVector], b: &IntVector) -> DegreeRelations {
    let comps = graph_components(&factorizations(gens, b));
    let pairs = match comps.split_first() {
        Some((first, rest)) => rest
            .iter()
            .map(|c| (first[0].clone(), c[0].clone()))
            .collect(),
        None => Vec::new(),
    };
    DegreeRelations {
        degree: b.clone(),
        pairs,
    }
}

/// Coordinates on which the projection of `span(gens)` is injective.
fn spanning_coordinates(gens: &[IntVector]) -> Result<Vec<usize>> {
    let dim = gens[0].dim();
    let mut cols: Vec<usize> = Vec::new();
    let mut rank = 0;
    for k in 0..dim {
        let mut trial = cols.clone();
        trial.push(k);
        let vecs: Vec<IntVector> = trial
            .iter()
            .map(|&c| IntVector::new(gens.iter().map(|g| g[c]).collect()))
            .collect();
        let r = Lattice::hnf(gens.len(), &vecs)?.rank();
        if r > rank {
            rank = r;
            cols = trial;
        }
    }
    Ok(cols)
}

fn project(gens: &[IntVector], cols: &[usize]) -> Vec<IntVector> {
    gens.iter()
        .map(|g| IntVector::new(cols.iter().map(|&c| g[c]).collect()))
        .collect()
}

/// `Ap(S, E)` for `S = <gens>`, grown from `0` by adding generators outside
/// `E`; removing such a generator from an Apéry element stays in the set.
fn apery_by_search(gens: &[IntVector], e: &[IntVector]) -> Vec<IntVector> {
    let mut member = GeneratorMembership::new(gens);
    let others: Vec<&IntVector> = gens.iter().filter(|g| !e.contains(g)).collect();
    let dim = gens[0].dim();
    let mut seen: BTreeSet<IntVector> = BTreeSet::from([IntVector::zero(dim)]);
    let mut queue = VecDeque::from([IntVector::zero(dim)]);
    while let Some(w) = queue.pop_front() {
        for g in &others {
            let x = &w + *g;
            if seen.contains(&x) {
                continue;
            }
            if e.iter().all(|a| !member.contains(&(&x - a))) {
                seen.insert(x.clone());
                queue.push_back(x);
            }
        }
    }
    seen.into_iter().collect()
}

/// Candidate degrees for the relations of a minimal presentation of
/// `<gens>`. Requires a full-rank simplicial cone.
pub fn candidate_degrees(gens: &[IntVector]) -> Result<Vec<IntVector>> {
    let cone = SimplicialCone::from_generators(gens)?;
    let e: Vec<IntVector> = (0..cone.dim())
        .map(|i| {
            gens.iter()
                .filter(|g| cone.ray_multiple(g).map(|(j, _)| j) == Some(i))
                .min_by_key(|g| g.content())
                .cloned()
                .ok_or_else(|| Error::RayMismatch(cone.rays()[i].clone()))
        })
        .collect::<Result<_>>()?;
    let ap = apery_by_search(gens, &e);
    let heights: Vec<i64> = cone
        .facet_normals()
        .iter()
        .zip(&e)
        .map(|(h, a)| h.dot(a))
        .collect();
    let mut out: BTreeSet<IntVector> = BTreeSet::new();
    for w in &ap {
        for g in gens.iter().filter(|g| !e.contains(g)) {
            out.insert(w + g);
        }
    }
    for (i, w) in ap.iter().enumerate() {
        for v in &ap[i + 1..] {
            let diff = v - w;
            let delta: Option<Vec<i64>> = cone
                .facet_normals()
                .iter()
                .zip(&heights)
                .map(|(h, t)| {
                    let x = h.dot(&diff);
                    (x % t == 0).then_some(x / t)
                })
                .collect();
            if let Some(delta) = delta {
                let mut join = w.clone();
                for (dl, a) in delta.iter().zip(&e) {
                    if *dl > 0 {
                        join = &join + &a.scale(*dl);
                    }
                }
                out.insert(join);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// A minimal presentation of `<gens>`.
pub fn minimal_presentation(gens: &[IntVector]) -> Result<Presentation> {
    let first = gens.first().ok_or(Error::Empty("generator list"))?;
    check_all_dims(gens, first.dim())?;
    if gens.iter().any(IntVector::is_zero) {
        return Err(Error::ZeroNotAllowed);
    }
    if let Some(bad) = gens.iter().find(|g| !g.is_nonnegative()) {
        return Err(Error::NotInNaturals(bad.clone()));
    }
    let cols = spanning_coordinates(gens)?;
    let local = project(gens, &cols);
    let candidates = candidate_degrees(&local)?;
    Ok(assemble(gens, &local, &candidates))
}

/// The same presentation with candidate degrees taken from an elimination
/// Gröbner basis.
pub fn minimal_presentation_by_elimination(gens: &[IntVector], limit: usize) -> Result<Presentation> {
    if gens.iter().any(IntVector::is_zero) {
        return Err(Error::ZeroNotAllowed);
    }
    let candidates: BTreeSet<IntVector> = toric_generators(gens, limit)?
        .iter()
        .map(|b| b.degree(gens))
        .collect();
    let candidates: Vec<IntVector> = candidates.into_iter().collect();
    Ok(assemble(gens, gens, &candidates))
}

fn assemble(gens: &[IntVector], local: &[IntVector], candidates: &[IntVector]) -> Presentation {
    let mut degrees: Vec<DegreeRelations> = candidates
        .par_iter()
        .map(|b| degree_relations(local, b))
        .filter(|r| !r.pairs.is_empty())
        .map(|mut r| {
            r.degree = exponent_degree(&r.pairs[0].0, gens);
            r
        })
        .collect();
    degrees.sort_by(|a, b| a.degree.cmp(&b.degree));
    let mu = degrees.iter().map(|r| r.pairs.len()).sum();
    Presentation {
        gens: gens.to_vec(),
        degrees,
        mu,
    }
}

pub fn mu(gens: &[IntVector]) -> Result<usize> {
    minimal_presentation(gens).map(|p| p.mu)
}

/// `μ` computed without elimination: every `u` with coordinate-sum degree at
/// most `bound` is bucketed by degree and each fiber's graph is examined.
pub fn brute_force_mu(gens: &[IntVector], bound: i64) -> usize {
    let weights: Vec<i64> = gens.iter().map(IntVector::total).collect();
    let mut fibers: HashMap<IntVector, Vec<Factorization>> = HashMap::new();
    let mut cur = vec![0u32; gens.len()];
    fn rec(
        i: usize,
        budget: i64,
        weights: &[i64],
        gens: &[IntVector],
        cur: &mut Vec<u32>,
        fibers: &mut HashMap<IntVector, Vec<Factorization>>,
    ) {
        if i == weights.len() {
            fibers
                .entry(exponent_degree(cur, gens))
                .or_default()
                .push(cur.clone());
            return;
        }
        let mut k = 0;
        while k * weights[i] <= budget {
            cur[i] = k as u32;
            rec(i + 1, budget - k * weights[i], weights, gens, cur, fibers);
            k += 1;
        }
        cur[i] = 0;
    }
    rec(0, bound, &weights, gens, &mut cur, &mut fibers);
    fibers
        .values()
        .map(|z| graph_components(z).len() - 1)
        .sum()
}
