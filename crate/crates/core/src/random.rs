//! Random instances for property tests and experiments. All samplers take a
//! caller-owned RNG so that runs are reproducible from a seed.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::buchsbaum::is_med_multset;
use crate::cone::SimplicialCone;
use crate::semigroup::CSemigroup;
use crate::vector::IntVector;

/// A simplicial cone in `N^d` whose rays have coordinates at most 3 and
/// whose ray matrix has determinant at most `4` in absolute value.
pub fn random_cone<R: Rng>(rng: &mut R, dim: usize) -> SimplicialCone {
    if rng.gen_bool(0.25) {
        return SimplicialCone::orthant(dim);
    }
    loop {
        let rays: Vec<IntVector> = (0..dim)
            .map(|i| {
                let mut v: Vec<i64> = (0..dim).map(|_| rng.gen_range(0..=1)).collect();
                v[i] = rng.gen_range(1..=3);
                IntVector::new(v)
            })
            .collect();
        if let Ok(c) = SimplicialCone::from_rays(&rays) {
            if (1..=4).contains(&abs_det(c.rays())) {
                return c;
            }
        }
    }
}

fn abs_det(rows: &[IntVector]) -> i64 {
    match rows.len() {
        1 => rows[0][0].abs(),
        2 => (rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]).abs(),
        _ => {
            let m = |i: usize, j: usize| rows[i][j];
            (m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)))
                .abs()
        }
    }
}

fn random_point<R: Rng>(rng: &mut R, cone: &SimplicialCone, max_mult: i64) -> IntVector {
    let mut p = IntVector::zero(cone.dim());
    for r in cone.rays() {
        p = &p + &r.scale(rng.gen_range(1..=max_mult));
    }
    p
}

/// `S = (C \ D) ∪ (<G> ∩ D)` where `D` is the interval below a random point
/// and `G` a random subset of `D`; `C \ D` is an ideal of `C`, so `S` is
/// closed. Rejects samples with more than `max_genus` gaps.
pub fn random_c_semigroup<R: Rng>(rng: &mut R, cone: &SimplicialCone, max_genus: usize) -> CSemigroup {
    loop {
        let top = random_point(rng, cone, 3);
        let region: BTreeSet<IntVector> = cone.interval_below(&top).into_iter().collect();
        let density = rng.gen_range(0.1..0.6);
        let gens: Vec<IntVector> = region
            .iter()
            .filter(|x| !x.is_zero() && rng.gen_bool(density))
            .cloned()
            .collect();
        let mut inside: BTreeSet<IntVector> = BTreeSet::from([IntVector::zero(cone.dim())]);
        let mut frontier: Vec<IntVector> = vec![IntVector::zero(cone.dim())];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = &x + g;
                if region.contains(&y) && inside.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        let gaps: Vec<IntVector> = region.difference(&inside).cloned().collect();
        if gaps.len() <= max_genus {
            return CSemigroup::from_cone_and_gaps(cone.clone(), gaps)
                .expect("complement of an ideal plus a closed set is closed");
        }
    }
}

/// A multset of `cone`: a multiple (at most `max_mult`) of each ray plus up
/// to `extra` further points, kept only while the set stays an antichain.
pub fn random_multset<R: Rng>(
    rng: &mut R,
    cone: &SimplicialCone,
    max_mult: i64,
    extra: usize,
) -> Vec<IntVector> {
    let rays: Vec<IntVector> = cone
        .rays()
        .iter()
        .map(|r| r.scale(rng.gen_range(1..=max_mult)))
        .collect();
    let bounds: Vec<i64> = cone
        .facet_normals()
        .iter()
        .zip(&rays)
        .map(|(h, n)| h.dot(n))
        .collect();
    let mut pool: Vec<IntVector> = cone
        .enumerate_region(&bounds)
        .filter(|x| !x.is_zero() && cone.ray_multiple(x).is_none())
        .collect();
    pool.shuffle(rng);
    let mut m = rays;
    for x in pool {
        if m.len() >= cone.dim() + extra {
            break;
        }
        if m.iter().all(|y| !cone.le(y, &x) && !cone.le(&x, y)) {
            m.push(x);
        }
    }
    m.sort();
    m
}

/// A multset whose ideal semigroup has maximal embedding dimension, found by
/// rejection sampling over [`random_multset`].
pub fn random_med_multset<R: Rng>(
    rng: &mut R,
    cone: &SimplicialCone,
    max_mult: i64,
    extra: usize,
) -> Vec<IntVector> {
    loop {
        let k = rng.gen_range(0..=extra);
        let m = random_multset(rng, cone, max_mult, k);
        if is_med_multset(cone, &m).expect("sampled sets are multsets") {
            return m;
        }
    }
}
