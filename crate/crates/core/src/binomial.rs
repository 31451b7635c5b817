//! Pure difference binomials and a Buchberger procedure for toric ideals.
//!
//! `I_S` is obtained by elimination: in `K[x_1..x_n, t_1..t_d]` the ideal
//! `J = (x_i - t^{a_i})` is the kernel of `x_i -> t^{a_i}, t_j -> t_j`, and
//! `I_S = J ∩ K[x]`. With a block order where the `t` block dominates, the
//! basis elements free of `t` generate `I_S`. `J` is prime and contains no
//! monomial, so a common monomial factor of both terms can always be
//! cancelled.

use std::cmp::Ordering;
use std::collections::{BTreeSet, BinaryHeap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::vector::IntVector;

/// Default cap on the number of basis binomials.
pub const DEFAULT_MAX_BINOMIALS: usize = 100_000;

/// Environment variable overriding [`DEFAULT_MAX_BINOMIALS`].
pub const MAX_BINOMIALS_ENV: &str = "CSG_MAX_BINOMIALS";

/// `x^plus - x^minus`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Binomial {
    pub plus: Vec<u32>,
    pub minus: Vec<u32>,
}

impl Binomial {
    pub fn new(plus: Vec<u32>, minus: Vec<u32>) -> Binomial {
        assert_eq!(plus.len(), minus.len());
        Binomial { plus, minus }
    }

    pub fn negate(&self) -> Binomial {
        Binomial {
            plus: self.minus.clone(),
            minus: self.plus.clone(),
        }
    }

    /// Degree `Σ u_i a_i` of a term.
    pub fn degree(&self, gens: &[IntVector]) -> IntVector {
        exponent_degree(&self.plus, gens)
    }

    /// True if `Σ plus_i a_i = Σ minus_i a_i`.
    pub fn is_homogeneous(&self, gens: &[IntVector]) -> bool {
        exponent_degree(&self.plus, gens) == exponent_degree(&self.minus, gens)
    }

    pub fn supports_disjoint(&self) -> bool {
        self.plus.iter().zip(&self.minus).all(|(a, b)| *a == 0 || *b == 0)
    }
}

pub fn exponent_degree(u: &[u32], gens: &[IntVector]) -> IntVector {
    let dim = gens.first().map(IntVector::dim).unwrap_or(0);
    let mut acc = vec![0i64; dim];
    for (e, g) in u.iter().zip(gens) {
        for (a, c) in acc.iter_mut().zip(g.coords()) {
            *a += *e as i64 * c;
        }
    }
    IntVector::new(acc)
}

/// Block order on `x_1..x_n, t_1..t_d`: the `t` block decides first, each
/// block compared by total degree and then lexicographically.
fn cmp_monomials(a: &[u32], b: &[u32], n: usize) -> Ordering {
    let block = |m: &[u32], lo: usize, hi: usize| -> u64 { m[lo..hi].iter().map(|&e| e as u64).sum() };
    let len = a.len();
    block(a, n, len)
        .cmp(&block(b, n, len))
        .then_with(|| a[n..].cmp(&b[n..]))
        .then_with(|| block(a, 0, n).cmp(&block(b, 0, n)))
        .then_with(|| a[..n].cmp(&b[..n]))
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

struct Poly {
    lead: Vec<u32>,
    trail: Vec<u32>,
}

/// Orients `m1 - m2` so the lead is the larger term, after cancelling the
/// common factor. `None` if the terms coincide.
fn make_poly(mut m1: Vec<u32>, mut m2: Vec<u32>, n: usize) -> Option<Poly> {
    for (a, b) in m1.iter_mut().zip(m2.iter_mut()) {
        let g = (*a).min(*b);
        *a -= g;
        *b -= g;
    }
    match cmp_monomials(&m1, &m2, n) {
        Ordering::Equal => None,
        Ordering::Greater => Some(Poly { lead: m1, trail: m2 }),
        Ordering::Less => Some(Poly { lead: m2, trail: m1 }),
    }
}

fn normal_form(mut m: Vec<u32>, basis: &[Poly]) -> Vec<u32> {
    'outer: loop {
        for p in basis {
            if divides(&p.lead, &m) {
                for ((e, l), t) in m.iter_mut().zip(&p.lead).zip(&p.trail) {
                    *e = *e - l + t;
                }
                continue 'outer;
            }
        }
        return m;
    }
}

/// Pending S-pair, ordered so that the smallest lcm comes out first.
#[derive(PartialEq, Eq)]
struct Pair {
    weight: u64,
    i: usize,
    j: usize,
}

impl Ord for Pair {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .weight
            .cmp(&self.weight)
            .then_with(|| other.i.cmp(&self.i))
            .then_with(|| other.j.cmp(&self.j))
    }
}

impl PartialOrd for Pair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Resource cap from the environment, or the default.
pub fn configured_limit() -> usize {
    std::env::var(MAX_BINOMIALS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_BINOMIALS)
}

/// A binomial generating set of `I_S` for `S = <gens>`, each element with
/// disjoint supports and its larger term first. Output is sorted.
pub fn toric_generators(gens: &[IntVector], limit: usize) -> Result<Vec<Binomial>> {
    let n = gens.len();
    if n == 0 {
        return Err(Error::Empty("generator list"));
    }
    let d = gens[0].dim();
    if let Some(bad) = gens.iter().find(|g| !g.is_nonnegative()) {
        return Err(Error::NotInNaturals(bad.clone()));
    }
    let mut basis: Vec<Poly> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let mut x = vec![0u32; n + d];
        x[i] = 1;
        let mut t = vec![0u32; n + d];
        for (k, &c) in g.coords().iter().enumerate() {
            t[n + k] = u32::try_from(c).map_err(|_| Error::Overflow)?;
        }
        if let Some(p) = make_poly(x, t, n) {
            basis.push(p);
        }
    }
    let mut queue = BinaryHeap::new();
    let push_pairs = |queue: &mut BinaryHeap<Pair>, basis: &[Poly], j: usize| {
        for i in 0..j {
            let (a, b) = (&basis[i].lead, &basis[j].lead);
            if a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0) {
                continue;
            }
            let weight = a.iter().zip(b).map(|(x, y)| (*x).max(*y) as u64).sum();
            queue.push(Pair { weight, i, j });
        }
    };
    for j in 0..basis.len() {
        push_pairs(&mut queue, &basis, j);
    }
    while let Some(Pair { i, j, .. }) = queue.pop() {
        let lcm: Vec<u32> = basis[i]
            .lead
            .iter()
            .zip(&basis[j].lead)
            .map(|(a, b)| (*a).max(*b))
            .collect();
        let s1: Vec<u32> = lcm
            .iter()
            .zip(&basis[i].lead)
            .zip(&basis[i].trail)
            .map(|((l, a), t)| l - a + t)
            .collect();
        let s2: Vec<u32> = lcm
            .iter()
            .zip(&basis[j].lead)
            .zip(&basis[j].trail)
            .map(|((l, a), t)| l - a + t)
            .collect();
        let r1 = normal_form(s1, &basis);
        let r2 = normal_form(s2, &basis);
        if let Some(p) = make_poly(r1, r2, n) {
            if basis.len() >= limit {
                return Err(Error::ResourceLimit {
                    limit,
                    basis_size: basis.len(),
                    pending: queue.len(),
                });
            }
            basis.push(p);
            push_pairs(&mut queue, &basis, basis.len() - 1);
        }
    }
    let out: BTreeSet<Binomial> = basis
        .into_iter()
        .filter(|p| p.lead[n..].iter().all(|&e| e == 0))
        .map(|p| Binomial::new(p.lead[..n].to_vec(), p.trail[..n].to_vec()))
        .collect();
    Ok(out.into_iter().collect())
}
