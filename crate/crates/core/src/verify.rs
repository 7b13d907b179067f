//! Seeded random corpora of strongly stable ideals and the cross-check
//! harness that runs every identity of the library against them.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::decompose::{
    bpol_decomposition, decompose_oracle, decompose_strongly_stable, grid_components,
    right_shift_check, GeneralComponent, GridComponent, IrreducibleComponent,
};
use crate::duality::{
    alexander_dual, ideal_equiv, is_squarefree_strongly_stable, sigma_decomposition, sigma_ideal,
    star_dual, star_dual_witness,
};
use crate::error::{Error, Result};
use crate::homology::{
    adeg, adeg_top_stratum, betti_oracle, betti_oracle_grid, canonical_generators,
    degree_from_hilbert, ek_betti, euler_consistency, is_cm_via_dual, lc_series_via_components,
    lc_series_via_dual, lc_series_via_gamma,
};
use crate::ideal::{borel_closure, minimalize, MonomialIdeal};
use crate::monomial::Monomial;
use crate::polarize::{bpol_ideal, depolarize, verify_polarization};
use crate::series::hilbert_series_quotient;

/// Attempts per trial before falling back to a principal ideal.
const MAX_RESAMPLES: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub seed: u64,
    pub min_vars: usize,
    pub max_vars: usize,
    pub min_degree: u32,
    pub max_degree: u32,
    pub max_generators: usize,
    pub trials: usize,
}

impl CorpusSpec {
    /// `n ≤ 3`, `d ≤ 3`, at most 6 generators.
    pub fn small(seed: u64, trials: usize) -> Self {
        Self {
            seed,
            min_vars: 1,
            max_vars: 3,
            min_degree: 1,
            max_degree: 3,
            max_generators: 6,
            trials,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.min_vars == 0 || self.min_vars > self.max_vars {
            return Err(Error::InvalidSpec(format!(
                "variable range {}..={} is empty",
                self.min_vars, self.max_vars
            )));
        }
        if self.min_degree == 0 || self.min_degree > self.max_degree {
            return Err(Error::InvalidSpec(format!(
                "degree range {}..={} is empty",
                self.min_degree, self.max_degree
            )));
        }
        if self.max_generators == 0 {
            return Err(Error::InvalidSpec("max_generators is 0".into()));
        }
        Ok(())
    }
}

/// One corpus ideal together with the column count used for its grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    pub ideal: MonomialIdeal,
    pub cols: usize,
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, d: u32) -> Monomial {
    let degree = rng.gen_range(1..=d);
    let mut word: Vec<usize> = (0..degree).map(|_| rng.gen_range(1..=n)).collect();
    word.sort_unstable();
    Monomial::from_word(n, &word).expect("indices in range")
}

/// Borel closures of 1 to 4 random monomials of degree at most `d`.
pub fn random_borel(spec: &CorpusSpec) -> Result<Vec<Sample>> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::with_capacity(spec.trials);
    for _ in 0..spec.trials {
        let n = rng.gen_range(spec.min_vars..=spec.max_vars);
        let d = rng.gen_range(spec.min_degree..=spec.max_degree);
        let mut chosen = None;
        for _ in 0..MAX_RESAMPLES {
            let seeds = rng.gen_range(1..=4);
            let gens: Vec<Monomial> = (0..seeds)
                .map(|_| random_monomial(&mut rng, n, d))
                .collect();
            let ideal = borel_closure(gens, n)?;
            if ideal.len() <= spec.max_generators {
                chosen = Some(ideal);
                break;
            }
        }
        let ideal = match chosen {
            Some(ideal) => ideal,
            None => minimalize([Monomial::var_power(n, 1, d)?], n)?,
        };
        out.push(Sample {
            ideal,
            cols: d as usize,
        });
    }
    Ok(out)
}

/// Hand-checked ideals with known decompositions, plus `(x1)`.
pub fn example_corpus() -> Vec<Sample> {
    let cases: [(usize, &[&[u32]], usize); 5] = [
        (
            3,
            &[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1], &[0, 2, 0], &[0, 1, 1]],
            2,
        ),
        (
            3,
            &[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1], &[0, 2, 0], &[0, 1, 2]],
            3,
        ),
        (
            3,
            &[&[3, 0, 0], &[2, 1, 0], &[1, 2, 0], &[1, 1, 2], &[2, 0, 2]],
            4,
        ),
        (
            3,
            &[&[2, 0, 0], &[1, 1, 0], &[0, 3, 0], &[1, 0, 1], &[0, 2, 1]],
            3,
        ),
        (1, &[&[1]], 1),
    ];
    cases
        .iter()
        .map(|&(n, gens, cols)| Sample {
            ideal: MonomialIdeal::from_exponents(n, gens).expect("valid example"),
            cols,
        })
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyStats {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub not_applicable: usize,
    pub first_counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub spec: Option<CorpusSpec>,
    pub trials: usize,
    pub properties: BTreeMap<String, PropertyStats>,
}

impl VerifyReport {
    pub fn total_failures(&self) -> usize {
        self.properties.values().map(|p| p.failed).sum()
    }

    pub fn all_passed(&self) -> bool {
        self.total_failures() == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Result of one property on one ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skipped,
    NotApplicable,
}

impl From<Result<bool>> for Outcome {
    fn from(r: Result<bool>) -> Self {
        match r {
            Ok(true) => Outcome::Pass,
            Ok(false) => Outcome::Fail("identity does not hold".into()),
            Err(Error::OracleTooLarge { .. }) => Outcome::Skipped,
            Err(e) => Outcome::Fail(e.to_string()),
        }
    }
}

fn flat_component(b: &GridComponent, cols: usize) -> GeneralComponent {
    GeneralComponent::prime(b.cells().map(|(i, c)| (i - 1) * cols + c)).expect("positive indices")
}

fn general(components: &[IrreducibleComponent]) -> Vec<GeneralComponent> {
    let mut out: Vec<GeneralComponent> = components.iter().map(GeneralComponent::from).collect();
    out.sort();
    out
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

fn polarization(s: &Sample) -> Result<bool> {
    let grid = bpol_ideal(&s.ideal, s.cols)?;
    Ok(verify_polarization(&s.ideal, &grid) && depolarize(&grid) == s.ideal)
}

fn borel_vs_oracle(s: &Sample) -> Result<bool> {
    Ok(general(&decompose_strongly_stable(&s.ideal)?) == decompose_oracle(&s.ideal)?)
}

fn psi_vs_oracle(s: &Sample) -> Result<bool> {
    let grid = bpol_ideal(&s.ideal, s.cols)?;
    let via_psi = sorted(
        bpol_decomposition(&decompose_strongly_stable(&s.ideal)?)
            .iter()
            .map(|b| flat_component(b, s.cols))
            .collect(),
    );
    Ok(via_psi == decompose_oracle(grid.flat())?)
}

fn grid_condition(s: &Sample) -> Result<bool> {
    let grid = bpol_ideal(&s.ideal, s.cols)?;
    Ok(grid_components(&grid)? == bpol_decomposition(&decompose_strongly_stable(&s.ideal)?))
}

fn right_shift(s: &Sample) -> Result<bool> {
    let e = decompose_strongly_stable(&s.ideal)?;
    Ok(right_shift_check(&e, s.ideal.num_vars()))
}

fn colon_decomposition(s: &Sample) -> Result<bool> {
    let n = s.ideal.num_vars();
    let expected: Vec<IrreducibleComponent> = sorted(
        decompose_strongly_stable(&s.ideal)?
            .into_iter()
            .filter_map(|a| {
                if a.t() < n {
                    Some(a)
                } else if a.e() >= 2 {
                    let mut v = a.exponents().to_vec();
                    v[n - 1] -= 1;
                    IrreducibleComponent::new(v).ok()
                } else {
                    None
                }
            })
            .collect(),
    );
    let colon = s.ideal.colon_variable(n)?;
    if colon.is_unit() {
        return Ok(expected.is_empty());
    }
    Ok(decompose_strongly_stable(&colon)? == expected)
}

fn star_grid_identity(s: &Sample) -> Result<bool> {
    let dual = star_dual(&s.ideal, s.cols)?;
    let n = s.ideal.num_vars();
    Ok(bpol_ideal(&dual, n)? == star_dual_witness(&s.ideal, s.cols)?)
}

fn star_involution(s: &Sample) -> Result<bool> {
    let dual = star_dual(&s.ideal, s.cols)?;
    Ok(ideal_equiv(
        &star_dual(&dual, s.ideal.num_vars())?,
        &s.ideal,
    ))
}

fn sigma_duality(s: &Sample) -> Result<bool> {
    let sigma = sigma_ideal(&s.ideal, s.cols)?;
    let dual_sigma = sigma_ideal(&star_dual(&s.ideal, s.cols)?, s.ideal.num_vars())?;
    Ok(
        is_squarefree_strongly_stable(&sigma)?
            && ideal_equiv(&alexander_dual(&sigma)?, &dual_sigma),
    )
}

fn sigma_components(s: &Sample) -> Result<bool> {
    let sigma = sigma_ideal(&s.ideal, s.cols)?;
    let predicted = sigma_decomposition(&decompose_strongly_stable(&s.ideal)?);
    Ok(predicted == decompose_oracle(&sigma)?)
}

fn ek_vs_oracle(s: &Sample) -> Result<bool> {
    Ok(ek_betti(&s.ideal)? == betti_oracle(&s.ideal)?)
}

fn betti_preservation(s: &Sample) -> Result<bool> {
    let grid = bpol_ideal(&s.ideal, s.cols)?;
    Ok(ek_betti(&s.ideal)? == betti_oracle_grid(&grid)?)
}

fn lc_three_way(s: &Sample) -> Result<bool> {
    let n = s.ideal.num_vars();
    let e = decompose_strongly_stable(&s.ideal)?;
    let via_dual = lc_series_via_dual(&s.ideal, s.cols)?;
    let via_components = lc_series_via_components(&e, n);
    let via_gamma = lc_series_via_gamma(&bpol_decomposition(&e), n);
    Ok(via_dual == via_components && via_components == via_gamma)
}

fn cm_via_dual(s: &Sample) -> Result<bool> {
    let cm = s.ideal.is_cohen_macaulay()?;
    let e = decompose_strongly_stable(&s.ideal)?;
    let n = s.ideal.num_vars();
    let support = lc_series_via_components(&e, n).support();
    let single = support == [n - s.ideal.height()?];
    Ok(is_cm_via_dual(&s.ideal, s.cols)? == cm && single == cm)
}

fn degree_cross_check(s: &Sample) -> Result<bool> {
    let n = s.ideal.num_vars();
    let e = decompose_strongly_stable(&s.ideal)?;
    let a = adeg(&e, n);
    let hilbert = hilbert_series_quotient(&s.ideal);
    Ok(degree_from_hilbert(&s.ideal) == a.degree.into()
        && hilbert.krull_dimension() as usize == n - s.ideal.height()?)
}

fn adeg_identities(s: &Sample) -> Result<bool> {
    let n = s.ideal.num_vars();
    let e = decompose_strongly_stable(&s.ideal)?;
    let a = adeg(&e, n);
    let (stratum, value) = adeg_top_stratum(&s.ideal)?;
    Ok(a.total as usize == bpol_decomposition(&e).len()
        && a.total as usize == star_dual(&s.ideal, s.cols)?.len()
        && a.strata.get(&stratum).copied().unwrap_or(0) == value)
}

fn canonical_series(s: &Sample) -> Outcome {
    match s.ideal.is_cohen_macaulay() {
        Ok(false) => return Outcome::NotApplicable,
        Err(e) => return Outcome::Fail(e.to_string()),
        Ok(true) => {}
    }
    let check = || -> Result<bool> {
        let ring = bpol_ideal(&s.ideal, s.cols)?.flat().clone();
        let mut with_omega = ring.clone();
        for g in canonical_generators(&s.ideal, s.cols)? {
            with_omega = with_omega.add_generator(g.to_flat())?;
        }
        let h_ring = hilbert_series_quotient(&ring);
        let h_omega = h_ring.sub(&hilbert_series_quotient(&with_omega));
        let mut expected = h_ring.invert_variable();
        if h_ring.krull_dimension() % 2 == 1 {
            expected = expected.neg();
        }
        Ok(h_omega == expected)
    };
    check().into()
}

type Property = fn(&Sample) -> Outcome;

fn properties() -> Vec<(&'static str, Property)> {
    vec![
        ("adeg_identities", |s| adeg_identities(s).into()),
        ("betti_ek_vs_oracle", |s| ek_vs_oracle(s).into()),
        ("betti_preserved_by_bpol", |s| betti_preservation(s).into()),
        ("canonical_module_series", canonical_series),
        ("cm_via_dual", |s| cm_via_dual(s).into()),
        ("colon_decomposition", |s| colon_decomposition(s).into()),
        ("decompose_borel_vs_oracle", |s| borel_vs_oracle(s).into()),
        ("decompose_psi_vs_oracle", |s| psi_vs_oracle(s).into()),
        ("degree_cross_check", |s| degree_cross_check(s).into()),
        ("euler_consistency", |s| euler_consistency(&s.ideal).into()),
        ("grid_condition", |s| grid_condition(s).into()),
        ("lc_three_way", |s| lc_three_way(s).into()),
        ("polarization", |s| polarization(s).into()),
        ("right_shift", |s| right_shift(s).into()),
        ("sigma_components", |s| sigma_components(s).into()),
        ("sigma_duality", |s| sigma_duality(s).into()),
        ("star_dual_grid_identity", |s| star_grid_identity(s).into()),
        ("star_dual_involution", |s| star_involution(s).into()),
    ]
}

/// Names of every property run by the harness.
pub fn property_names() -> Vec<&'static str> {
    properties().into_iter().map(|(name, _)| name).collect()
}

/// Every property on one ideal.
pub fn check_sample(sample: &Sample) -> Vec<(&'static str, Outcome)> {
    properties()
        .into_iter()
        .map(|(name, property)| (name, property(sample)))
        .collect()
}

fn describe(sample: &Sample) -> String {
    format!(
        "n={} d={} I=({})",
        sample.ideal.num_vars(),
        sample.cols,
        sample.ideal
    )
}

/// Runs every property over the given ideals, in order.
pub fn run_samples(samples: &[Sample]) -> VerifyReport {
    let mut report = VerifyReport {
        spec: None,
        trials: samples.len(),
        properties: property_names()
            .into_iter()
            .map(|name| (name.to_string(), PropertyStats::default()))
            .collect(),
    };
    for sample in samples {
        for (name, outcome) in check_sample(sample) {
            let stats = report.properties.get_mut(name).expect("registered");
            match outcome {
                Outcome::Pass => stats.passed += 1,
                Outcome::Skipped => stats.skipped += 1,
                Outcome::NotApplicable => stats.not_applicable += 1,
                Outcome::Fail(reason) => {
                    stats.failed += 1;
                    if stats.first_counterexample.is_none() {
                        stats.first_counterexample =
                            Some(format!("{}: {reason}", describe(sample)));
                    }
                }
            }
        }
    }
    report
}

pub fn run_suite(spec: &CorpusSpec) -> Result<VerifyReport> {
    let samples = random_borel(spec)?;
    let mut report = run_samples(&samples);
    report.spec = Some(spec.clone());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_reproducible_and_strongly_stable() {
        let spec = CorpusSpec::small(7, 50);
        let a = random_borel(&spec).unwrap();
        assert_eq!(a, random_borel(&spec).unwrap());
        for s in &a {
            assert!(s.ideal.is_strongly_stable());
            assert!(s.ideal.len() <= 6);
            assert!(s.ideal.max_degree() as usize <= s.cols);
        }
        assert_ne!(a, random_borel(&CorpusSpec::small(8, 50)).unwrap());
    }

    #[test]
    fn one_variable_gives_principal_ideals() {
        let spec = CorpusSpec {
            max_vars: 1,
            ..CorpusSpec::small(3, 20)
        };
        for s in random_borel(&spec).unwrap() {
            assert_eq!(s.ideal.len(), 1);
        }
    }

    #[test]
    fn empty_ranges_are_rejected() {
        let spec = CorpusSpec {
            min_vars: 4,
            ..CorpusSpec::small(0, 1)
        };
        assert!(random_borel(&spec).is_err());
    }

    #[test]
    fn examples_pass_every_property() {
        let report = run_samples(&example_corpus());
        assert!(report.all_passed(), "{}", report.to_json());
        for stats in report.properties.values() {
            assert_eq!(
                stats.passed + stats.failed + stats.skipped + stats.not_applicable,
                report.trials
            );
        }
    }

    #[test]
    fn failures_are_recorded_with_the_ideal() {
        let bad = Sample {
            ideal: MonomialIdeal::from_exponents(2, &[&[0, 1]]).unwrap(),
            cols: 1,
        };
        let report = run_samples(&[bad]);
        let stats = &report.properties["right_shift"];
        assert_eq!(stats.failed, 1);
        assert!(stats
            .first_counterexample
            .as_deref()
            .unwrap()
            .starts_with("n=2 d=1 I=(x2)"));
    }
}
