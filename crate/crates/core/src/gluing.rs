//! Gluings of affine semigroups.
//!
//! `S = S_1 + S_2` is glued along `d` when `d ∈ S_1 ∩ S_2` and
//! `G(S_1) ∩ G(S_2) = dZ`; then `I_S` is generated by `I_{S_1}`, `I_{S_2}`
//! and one binomial `ρ` pairing a factorization of `d` in each part.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::binomial::Binomial;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::presentation::{factorizations, mu, Factorization};
use crate::semigroup::{AffineSemigroup, CSemigroup};
use crate::vector::{check_all_dims, IntVector};
use crate::{buchsbaum, iv};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GluingWitness {
    pub n: usize,
    pub part1: Vec<usize>,
    pub part2: Vec<usize>,
    pub d_elem: IntVector,
    pub fact1: Factorization,
    pub fact2: Factorization,
    pub lattice_proof: Lattice,
}

fn check_partition(n: usize, part1: &[usize], part2: &[usize]) -> Result<()> {
    if part1.is_empty() || part2.is_empty() {
        return Err(Error::InvalidPartition("both parts must be nonempty".into()));
    }
    let mut seen = vec![false; n];
    for &i in part1.iter().chain(part2) {
        if i >= n {
            return Err(Error::InvalidPartition(format!("index {i} out of range 0..{n}")));
        }
        if seen[i] {
            return Err(Error::InvalidPartition(format!("index {i} used twice")));
        }
        seen[i] = true;
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(Error::InvalidPartition(format!("index {i} missing")));
    }
    Ok(())
}

/// Verifies that `<gens>` is the gluing of the two parts along `d_elem`.
pub fn check_gluing(
    gens: &[IntVector],
    part1: &[usize],
    part2: &[usize],
    d_elem: &IntVector,
) -> Result<GluingWitness> {
    let first = gens.first().ok_or(Error::Empty("generator list"))?;
    check_all_dims(gens, first.dim())?;
    d_elem.check_dim(first.dim())?;
    check_partition(gens.len(), part1, part2)?;
    let pick = |part: &[usize]| -> Vec<IntVector> { part.iter().map(|&i| gens[i].clone()).collect() };
    let (g1, g2) = (pick(part1), pick(part2));
    let fact1 = factorizations(&g1, d_elem)
        .into_iter()
        .next()
        .ok_or_else(|| Error::NotInBoth(d_elem.clone()))?;
    let fact2 = factorizations(&g2, d_elem)
        .into_iter()
        .next()
        .ok_or_else(|| Error::NotInBoth(d_elem.clone()))?;
    let inter = Lattice::group_of(&g1)?.intersect(&Lattice::group_of(&g2)?)?;
    let line = Lattice::hnf(d_elem.dim(), std::slice::from_ref(d_elem))?;
    if !(inter.contains_lattice(&line)? && line.contains_lattice(&inter)?) {
        return Err(Error::LatticeMismatch {
            actual: inter.basis().to_vec(),
        });
    }
    Ok(GluingWitness {
        n: gens.len(),
        part1: part1.to_vec(),
        part2: part2.to_vec(),
        d_elem: d_elem.clone(),
        fact1,
        fact2,
        lattice_proof: inter,
    })
}

/// `ρ = x^u - y^v` over the original generator indices.
pub fn rho(w: &GluingWitness) -> Binomial {
    let mut plus = vec![0u32; w.n];
    let mut minus = vec![0u32; w.n];
    for (&i, &e) in w.part1.iter().zip(&w.fact1) {
        plus[i] = e;
    }
    for (&i, &e) in w.part2.iter().zip(&w.fact2) {
        minus[i] = e;
    }
    Binomial::new(plus, minus)
}

pub fn scale(s: &AffineSemigroup, c: i64) -> Result<AffineSemigroup> {
    s.scale(c)
}

/// Data for the counterexample run; [`CounterexampleInput::published`] holds the
/// published instance and the other fields exist so that negative controls
/// can perturb it.
#[derive(Clone, Debug)]
pub struct CounterexampleInput {
    pub gens: Vec<IntVector>,
    pub part1: Vec<usize>,
    pub part2: Vec<usize>,
    pub d_elem: IntVector,
    pub s3_gens: Vec<IntVector>,
    pub s3_gaps: Vec<IntVector>,
    pub scale: i64,
    pub d_point: IntVector,
    pub pf_point: IntVector,
}

impl CounterexampleInput {
    pub fn published() -> CounterexampleInput {
        CounterexampleInput {
            gens: vec![iv![0, 7], iv![14, 0], iv![21, 0], iv![7, 7], iv![6, 12], iv![8, 16]],
            part1: vec![0, 1, 2, 3],
            part2: vec![4, 5],
            d_elem: iv![14, 28],
            s3_gens: vec![iv![0, 1], iv![2, 0], iv![3, 0], iv![1, 1]],
            s3_gaps: vec![iv![1, 0]],
            scale: 7,
            d_point: iv![15, 16],
            pf_point: iv![31, 48],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub steps: Vec<Step>,
    pub witness: Option<GluingWitness>,
    pub rho: Option<Binomial>,
    /// `(μ(S), μ(S_1), μ(S_2))`.
    pub mu: Option<(usize, usize, usize)>,
    pub all_passed: bool,
    pub buchsbaum: Option<bool>,
}

impl CounterexampleReport {
    pub fn failed_step(&self) -> Option<&Step> {
        self.steps.iter().find(|s| !s.passed)
    }
}

fn show(vs: &[IntVector]) -> String {
    let parts: Vec<String> = vs.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Runs the seven checks showing that a gluing of two Buchsbaum semigroups
/// need not be Buchsbaum. Stops at the first failing step.
pub fn run_counterexample(input: &CounterexampleInput) -> Result<CounterexampleReport> {
    let mut report = CounterexampleReport {
        steps: Vec::new(),
        witness: None,
        rho: None,
        mu: None,
        all_passed: false,
        buchsbaum: None,
    };
    macro_rules! step {
        ($name:expr, $passed:expr, $detail:expr) => {{
            let passed = $passed;
            report.steps.push(Step {
                name: $name,
                passed,
                detail: $detail,
            });
            if !passed {
                return Ok(report);
            }
        }};
    }
    let pick = |part: &[usize]| -> Vec<IntVector> {
        part.iter().filter_map(|&i| input.gens.get(i).cloned()).collect()
    };
    let (g1, g2) = (pick(&input.part1), pick(&input.part2));

    match check_gluing(&input.gens, &input.part1, &input.part2, &input.d_elem) {
        Ok(w) => {
            let detail = format!(
                "glued along {}; G(S1) ∩ G(S2) = {}Z",
                w.d_elem,
                show(w.lattice_proof.basis())
            );
            report.rho = Some(rho(&w));
            report.witness = Some(w);
            step!("gluing", true, detail);
        }
        Err(e) => step!("gluing", false, e.to_string()),
    }

    let s3 = CSemigroup::from_generators(&input.s3_gens, 32)?;
    let pf3 = s3.pseudo_frobenius();
    let verdict3 = buchsbaum::is_buchsbaum(&s3, 0)?;
    let mut claimed: Vec<IntVector> = input.s3_gaps.clone();
    claimed.sort();
    step!(
        "s3_buchsbaum",
        s3.gaps() == claimed.as_slice() && pf3 == claimed && verdict3.buchsbaum,
        format!("H(S3) = {}, PF(S3) = {}, Buchsbaum {}", show(s3.gaps()), show(&pf3), verdict3.buchsbaum)
    );

    let scaled: BTreeSet<IntVector> = input.s3_gens.iter().map(|g| g.scale(input.scale)).collect();
    let part1: BTreeSet<IntVector> = g1.iter().cloned().collect();
    let (mu1, mu3) = (mu(&g1)?, mu(&input.s3_gens)?);
    step!(
        "s1_scaled",
        scaled == part1 && mu1 == mu3,
        format!("S1 = {}·S3, μ(S1) = μ(S3) = {mu1}", input.scale)
    );

    let rank2 = Lattice::group_of(&g2)?.rank();
    step!(
        "s2_rank_one",
        rank2 == 1,
        format!("G(S2) has rank {rank2}")
    );

    let s = AffineSemigroup::new(input.gens.clone())?;
    let mut member = s.membership();
    let e = s.minimal_rays()?;
    let x = &input.d_point;
    let shifted: Vec<IntVector> = e.iter().map(|a| x + &a.scale(2)).collect();
    let in_d = s.d_set_member(&e, x)?;
    step!(
        "d_set_member",
        in_d,
        format!("{x} ∈ G(S) \\ S with {} ⊆ S", show(&shifted))
    );

    let escape = s.gens().iter().find(|g| !member.contains(&(x + *g))).cloned();
    step!(
        "not_pseudo_frobenius",
        escape.is_some(),
        match &escape {
            Some(g) => format!("{x} + {g} = {} ∉ S", x + g),
            None => format!("{x} + g ∈ S for every generator g"),
        }
    );

    let f = &input.pf_point;
    let f_ok = s.group().member(f)? && !member.contains(f);
    let bad: Vec<IntVector> = s.gens().iter().filter(|g| !member.contains(&(f + *g))).cloned().collect();
    step!(
        "pseudo_frobenius_point",
        f_ok && bad.is_empty(),
        if f_ok {
            format!("{f} ∈ G(S) \\ S and {f} + g ∈ S for {} of {} generators", s.gens().len() - bad.len(), s.gens().len())
        } else {
            format!("{f} is not in G(S) \\ S")
        }
    );

    let mu_s = mu(s.gens())?;
    let mu2 = mu(&g2)?;
    report.mu = Some((mu_s, mu1, mu2));
    report.all_passed = true;
    report.buchsbaum = Some(false);
    Ok(report)
}

pub fn reproduce_counterexample() -> Result<CounterexampleReport> {
    run_counterexample(&CounterexampleInput::published())
}
