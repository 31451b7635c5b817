use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use csg_core::buchsbaum::{is_buchsbaum, is_med};
use csg_core::gluing::{check_gluing, rho, scale};
use csg_core::presentation::{minimal_presentation, mu};
use csg_core::random::{random_c_semigroup, random_cone};
use csg_core::{iv, AffineSemigroup, CSemigroup, Error, IntVector};

fn instance(rng: &mut ChaCha8Rng, max_genus: usize) -> CSemigroup {
    let d = rng.gen_range(2..=3);
    let cone = random_cone(rng, d);
    random_c_semigroup(rng, &cone, max_genus)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

/// Invariants of an affine semigroup `T` whose cone has finitely many holes
/// inside `G(T)`, computed by scanning a box that holds every hole and
/// every Apéry element.
struct Scanned {
    holes: BTreeSet<IntVector>,
    pf: usize,
    med: bool,
}

fn scan(t: &AffineSemigroup, bounds: &[i64]) -> Scanned {
    let cone = csg_core::SimplicialCone::from_generators(t.gens()).unwrap();
    let mut mem = t.membership();
    let group = t.group();
    let box_pts: Vec<IntVector> = cone
        .enumerate_region(bounds)
        .filter(|x| group.member(x).unwrap())
        .collect();
    let holes: BTreeSet<IntVector> = box_pts.iter().filter(|x| !mem.contains(x)).cloned().collect();
    let msg = t.minimal_generators();
    let pf = holes
        .iter()
        .filter(|h| msg.iter().all(|g| mem.contains(&(*h + g))))
        .count();
    let e = t.minimal_rays().unwrap();
    let ap: BTreeSet<IntVector> = box_pts
        .iter()
        .filter(|x| !x.is_zero() && mem.contains(x) && e.iter().all(|a| !mem.contains(&(*x - a))))
        .cloned()
        .collect();
    let rest: BTreeSet<IntVector> = msg.iter().filter(|g| !e.contains(g)).cloned().collect();
    Scanned { holes, pf, med: ap == rest }
}

fn permuted_coords(g: &[IntVector], perm: &[usize]) -> Vec<IntVector> {
    g.iter()
        .map(|v| IntVector::new(perm.iter().map(|&i| v[i]).collect()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn mu_ignores_generator_and_coordinate_order(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = instance(&mut rng, 8);
        let gens = s.minimal_generators().to_vec();
        let base = mu(&gens).unwrap();
        let mut shuffled = gens.clone();
        shuffled.shuffle(&mut rng);
        prop_assert_eq!(mu(&shuffled).unwrap(), base);
        let mut perm: Vec<usize> = (0..s.dim()).collect();
        perm.shuffle(&mut rng);
        prop_assert_eq!(mu(&permuted_coords(&gens, &perm)).unwrap(), base);
    }

    #[test]
    fn relations_hold_and_degrees_are_sorted(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = instance(&mut rng, 8);
        let p = minimal_presentation(s.minimal_generators()).unwrap();
        let degrees = p.betti_degrees();
        prop_assert!(degrees.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(p.mu, p.pairs().count());
        for rel in &p.degrees {
            for (u, v) in &rel.pairs {
                prop_assert!(u != v);
                let deg = |f: &Vec<u32>| {
                    f.iter().zip(&p.gens).fold(IntVector::zero(s.dim()), |acc, (&k, g)| &acc + &g.scale(k as i64))
                };
                prop_assert_eq!(&deg(u), &rel.degree);
                prop_assert_eq!(&deg(v), &rel.degree);
            }
        }
    }
}

#[test]
fn scaling_preserves_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    for _ in 0..50 {
        let s = instance(&mut rng, 6);
        let c = rng.gen_range(2..=4);
        let t = scale(&s.to_affine(), c).unwrap();
        assert_eq!(t.gens().len(), s.minimal_generators().len());
        assert_eq!(mu(t.gens()).unwrap(), mu(s.minimal_generators()).unwrap());

        let bounds: Vec<i64> = s
            .cone()
            .facet_normals()
            .iter()
            .zip(s.minimal_rays())
            .map(|(h, n)| {
                let top = s.gaps().iter().map(|g| h.dot(g)).max().unwrap_or(0);
                c * (top + 2 * h.dot(&n) + 1)
            })
            .collect();
        let scanned = scan(&t, &bounds);
        let expected: BTreeSet<IntVector> = s.gaps().iter().map(|g| g.scale(c)).collect();
        assert_eq!(scanned.holes, expected);
        assert_eq!(scanned.pf, s.pseudo_frobenius().len());
        let buchsbaum = is_buchsbaum(&s, 0).unwrap().buchsbaum;
        assert_eq!(scanned.holes.len() == scanned.pf, buchsbaum);
        assert_eq!(scanned.med, is_med(&s, &s.minimal_rays()).unwrap());
    }
}

#[test]
fn scaling_small_cases() {
    let s3 = AffineSemigroup::new(vec![iv![0, 1], iv![2, 0], iv![3, 0], iv![1, 1]]).unwrap();
    assert_eq!(
        scale(&s3, 7).unwrap().gens(),
        &[iv![0, 7], iv![14, 0], iv![21, 0], iv![7, 7]]
    );
    assert_eq!(scale(&s3, 1).unwrap(), s3);
    let n = AffineSemigroup::new(vec![iv![2], iv![3]]).unwrap();
    let doubled = scale(&n, 2).unwrap();
    assert_eq!(doubled.gens(), &[iv![4], iv![6]]);
    assert_eq!(mu(doubled.gens()).unwrap(), 1);
    assert!(scale(&n, 0).is_err());
}

/// `λ A_1 ∪ μ A_2` for numerical generator sets, glued along `λμ` when `λ`
/// is a non-generator element of `<A_2>`, `μ` one of `<A_1>`, and the two
/// are coprime.
fn numerical_gluing(rng: &mut ChaCha8Rng) -> Option<(Vec<IntVector>, usize, IntVector)> {
    let mut part = || loop {
        let k = rng.gen_range(2..=3);
        let mut a: Vec<i64> = (0..k).map(|_| rng.gen_range(2..=9)).collect();
        a.sort();
        a.dedup();
        if a.len() >= 2 && a.iter().fold(0, |g, &x| gcd(g, x)) == 1 {
            break a;
        }
    };
    let (a1, a2) = (part(), part());
    let lam = a2[0] + a2[1];
    let mu_ = a1[0] + a1[a1.len() - 1];
    if gcd(lam, mu_) != 1 {
        return None;
    }
    let gens: Vec<IntVector> = a1
        .iter()
        .map(|x| iv![lam * x])
        .chain(a2.iter().map(|x| iv![mu_ * x]))
        .collect();
    Some((gens, a1.len(), iv![lam * mu_]))
}

/// `c S_3` glued to `<αv, βv>` along `cv`, with `α + β = c`.
fn planar_gluing(rng: &mut ChaCha8Rng) -> Option<(Vec<IntVector>, usize, IntVector)> {
    let cone = random_cone(rng, 2);
    let s3 = random_c_semigroup(rng, &cone, 4);
    let c = rng.gen_range(3..=7);
    let alpha = rng.gen_range(1..c);
    let beta = c - alpha;
    if gcd(alpha, beta) != 1 || alpha.min(beta) == 1 {
        return None;
    }
    let msg = s3.minimal_generators();
    let v = &msg[rng.gen_range(0..msg.len())] + &msg[rng.gen_range(0..msg.len())];
    if gcd(v.content(), c) != 1 {
        return None;
    }
    let mut gens: Vec<IntVector> = msg.iter().map(|g| g.scale(c)).collect();
    let n1 = gens.len();
    gens.push(v.scale(alpha));
    gens.push(v.scale(beta));
    Some((gens, n1, v.scale(c)))
}

fn check_mu_sum(gens: &[IntVector], n1: usize, d: &IntVector) -> Option<()> {
    let n = gens.len();
    let part1: Vec<usize> = (0..n1).collect();
    let part2: Vec<usize> = (n1..n).collect();
    let w = check_gluing(gens, &part1, &part2, d).ok()?;
    if AffineSemigroup::new(gens.to_vec()).unwrap().minimal_generators().len() != n {
        return None;
    }
    let swapped = check_gluing(gens, &part2, &part1, d).expect("gluing is symmetric");
    assert_eq!(swapped.fact1, w.fact2);
    assert_eq!(swapped.fact2, w.fact1);
    let r = rho(&w);
    assert_eq!(r.degree(gens), *d);
    let m = mu(gens).unwrap();
    let m1 = mu(&gens[..n1]).unwrap();
    let m2 = mu(&gens[n1..]).unwrap();
    assert_eq!(m, m1 + m2 + 1, "gens {gens:?} along {d}");
    Some(())
}

#[test]
fn glued_presentations_add_one_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    let (mut numerical, mut planar) = (0, 0);
    for _ in 0..400 {
        if numerical < 40 {
            if let Some((g, n1, d)) = numerical_gluing(&mut rng) {
                numerical += check_mu_sum(&g, n1, &d).map_or(0, |_| 1);
            }
        }
        if planar < 20 {
            if let Some((g, n1, d)) = planar_gluing(&mut rng) {
                planar += check_mu_sum(&g, n1, &d).map_or(0, |_| 1);
            }
        }
    }
    assert!(numerical >= 40 && planar >= 10, "{numerical} numerical, {planar} planar gluings");
}

#[test]
fn rejected_gluings_report_reasons() {
    let gens = [iv![4], iv![6], iv![9], iv![15]];
    assert!(matches!(
        check_gluing(&gens, &[0, 1], &[2, 3], &iv![1]),
        Err(Error::NotInBoth(_))
    ));
    assert!(matches!(
        check_gluing(&gens, &[0, 1], &[0, 3], &iv![12]),
        Err(Error::InvalidPartition(_))
    ));
}
