//! Invariant suites run by `fermitomo verify`.
//!
//! Each suite draws from its own seeded stream, so selecting a subset of
//! suites does not change the numbers any single suite reports.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::{Meta, RunConfig};
use crate::error::{Error, Result};
use crate::fermi::{antisymmetry_check, vacuum_tomogram, ClosedFormSymbol, FermiOperator};
use crate::fermion::build_algebra;
use crate::linalg::{sigma_minus, sigma_plus, sigma_z};
use crate::random::{
    random_density, random_euler, random_mode_point, random_operator, seeded, SeededRng,
};
use crate::rotation::sphere_quadrature;
use crate::star::{single_mode_kernel_closed_form, star, star_kernel, KernelCoefficients};
use crate::tomography::{
    delta_kernel, dequantizer, projections_of_index, quantizer, reconstruct, tomogram,
    tomogram_via_dequantizer, GridSymbol, ModePoint, OperatorSymbol, Symbol, TomoGrid,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Anticommutation,
    Vacuum,
    Tomogram,
    Reconstruction,
    Kernel,
    Star,
    ClosedForm,
    Antisymmetry,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Anticommutation,
        Suite::Vacuum,
        Suite::Tomogram,
        Suite::Reconstruction,
        Suite::Kernel,
        Suite::Star,
        Suite::ClosedForm,
        Suite::Antisymmetry,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Anticommutation => "anticommutation",
            Suite::Vacuum => "vacuum",
            Suite::Tomogram => "tomogram",
            Suite::Reconstruction => "reconstruction",
            Suite::Kernel => "kernel",
            Suite::Star => "star",
            Suite::ClosedForm => "closed-form",
            Suite::Antisymmetry => "antisymmetry",
        }
    }

    /// Pass threshold for the suite's maximum deviation.
    pub fn threshold(self) -> f64 {
        match self {
            Suite::Anticommutation => 1e-12,
            Suite::Vacuum => 1e-12,
            Suite::Tomogram => 1e-12,
            Suite::Reconstruction => 1e-10,
            Suite::Kernel => 1e-12,
            Suite::Star => 1e-10,
            Suite::ClosedForm => 1e-12,
            Suite::Antisymmetry => 1e-14,
        }
    }

    /// Largest mode count the suite runs at; larger configurations are capped.
    fn mode_cap(self) -> usize {
        match self {
            Suite::Vacuum => crate::fermion::MAX_MODES,
            Suite::Anticommutation | Suite::Tomogram => 6,
            Suite::Reconstruction => 3,
            Suite::Kernel => 1,
            Suite::Star => 2,
            Suite::ClosedForm | Suite::Antisymmetry => 4,
        }
    }

    fn stream(self, seed: u64) -> SeededRng {
        let idx = Suite::ALL.iter().position(|&s| s == self).expect("listed") as u64;
        seeded(seed ^ (idx + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: Suite,
    pub modes: usize,
    pub checks: usize,
    pub max_deviation: f64,
    pub threshold: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub meta: Meta,
    pub passed: bool,
    pub first_failure: Option<Suite>,
    pub suites: Vec<SuiteResult>,
}

struct Tally {
    checks: usize,
    max_deviation: f64,
    note: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checks: 0,
            max_deviation: 0.0,
            note: None,
        }
    }

    fn record(&mut self, deviation: f64) {
        self.checks += 1;
        // NaN must fail the suite
        if deviation.is_nan() || deviation > self.max_deviation {
            self.max_deviation = if deviation.is_nan() {
                f64::INFINITY
            } else {
                deviation
            };
        }
    }

    /// A boolean invariant; failure is reported as an infinite deviation.
    fn require(&mut self, ok: bool, what: &str) {
        self.record(if ok { 0.0 } else { f64::INFINITY });
        if !ok && self.note.is_none() {
            self.note = Some(format!("violated: {what}"));
        }
    }
}

/// Runs `suites` (all of them when empty) with the settings in `config`.
///
/// A suite passes when its maximum deviation is at most
/// `min(suite threshold, config.tolerance)`.
pub fn run(config: &RunConfig, suites: &[Suite]) -> Result<VerifyReport> {
    config.validate()?;
    let selected: Vec<Suite> = if suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        Suite::ALL
            .into_iter()
            .filter(|s| suites.contains(s))
            .collect()
    };
    let mut results = Vec::with_capacity(selected.len());
    for suite in selected {
        let modes = config.modes.min(suite.mode_cap());
        let mut rng = suite.stream(config.seed);
        let tally = match suite {
            Suite::Anticommutation => anticommutation(modes)?,
            Suite::Vacuum => vacuum_suite(modes, config.quadrature_degree)?,
            Suite::Tomogram => tomogram_suite(modes, &mut rng)?,
            Suite::Reconstruction => reconstruction(modes, config.quadrature_degree, &mut rng)?,
            Suite::Kernel => kernel(config.quadrature_degree, &mut rng)?,
            Suite::Star => star_suite(modes, config.quadrature_degree, &mut rng)?,
            Suite::ClosedForm => closed_form(modes, config.quadrature_degree)?,
            Suite::Antisymmetry => antisymmetry(modes, config.quadrature_degree)?,
        };
        let threshold = suite.threshold().min(config.tolerance);
        results.push(SuiteResult {
            suite,
            modes,
            checks: tally.checks,
            max_deviation: tally.max_deviation,
            threshold,
            passed: tally.max_deviation <= threshold,
            note: tally.note,
        });
    }
    let first_failure = results.iter().find(|r| !r.passed).map(|r| r.suite);
    Ok(VerifyReport {
        meta: config.meta(),
        passed: first_failure.is_none(),
        first_failure,
        suites: results,
    })
}

fn anticommutation(modes: usize) -> Result<Tally> {
    let mut t = Tally::new();
    for n in 1..=modes {
        let alg = build_algebra(n)?;
        for e in alg.anticommutation_report().entries {
            t.record(e.max());
        }
        for j in 1..=n {
            let num = alg.number_operator(j)?;
            t.record(num.matmul(&num)?.max_abs_diff(&num)?);
            let a = alg.annihilator(j)?;
            t.record(a.matmul(a)?.max_abs());
            t.record(a.dagger().max_abs_diff(alg.creator(j)?)?);
        }
    }
    Ok(t)
}

fn vacuum_suite(modes: usize, degree: usize) -> Result<Tally> {
    let mut t = Tally::new();
    let alg = build_algebra(modes)?;
    let vac = alg.vacuum();
    for a in alg.annihilators() {
        let image = vac.apply(a)?;
        t.record(
            image
                .amplitudes()
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max),
        );
    }
    // closed-form vacuum tomogram against the rotated density matrix
    let n = modes.min(3);
    let rho = crate::fermion::vacuum(n)?.density();
    let quad = sphere_quadrature(degree)?;
    for angles in crate::fermi::angle_tuples(n, &quad) {
        let tomo = tomogram(&rho, &angles)?;
        for (b, p) in tomo.probabilities.iter().enumerate() {
            let point: Vec<_> = projections_of_index(b, n)
                .into_iter()
                .zip(&angles)
                .map(|(m, a)| ModePoint::new(m, a.direction()))
                .collect();
            t.record((vacuum_tomogram(&point)? - p).abs());
        }
    }
    Ok(t)
}

fn tomogram_suite(modes: usize, rng: &mut SeededRng) -> Result<Tally> {
    let mut t = Tally::new();
    let samples = (40usize >> modes).max(2);
    for _ in 0..samples {
        let rho = random_density(rng, 1 << modes);
        for _ in 0..5 {
            let angles: Vec<_> = (0..modes).map(|_| random_euler(rng)).collect();
            let tomo = tomogram(&rho, &angles)?;
            t.record((tomo.total() - 1.0).abs());
            t.record((-tomo.min()).max(0.0));
            if modes <= 4 {
                let other = tomogram_via_dequantizer(&rho, &angles)?;
                for (a, b) in tomo.probabilities.iter().zip(&other.probabilities) {
                    t.record((a - b).abs());
                }
            }
        }
    }
    Ok(t)
}

fn reconstruction(modes: usize, degree: usize, rng: &mut SeededRng) -> Result<Tally> {
    let mut t = Tally::new();
    let n_samples = [50, 10, 2];
    for (n, &count) in (1..=modes).zip(&n_samples) {
        let grid = TomoGrid::with_degree(n, degree)?;
        for _ in 0..count {
            let a = random_operator(rng, 1 << n);
            let back = reconstruct(&OperatorSymbol::new(a.clone())?, &grid)?;
            t.record(back.max_abs_diff(&a)?);
        }
    }
    Ok(t)
}

fn kernel(degree: usize, rng: &mut SeededRng) -> Result<Tally> {
    let mut t = Tally::new();
    let grid = TomoGrid::with_degree(1, degree)?;
    for _ in 0..20 {
        let f = OperatorSymbol::new(random_operator(rng, 2))?;
        let values = f.values_on(&grid)?;
        for _ in 0..5 {
            let x = random_mode_point(rng);
            let reproduced: Complex64 = (0..grid.len())
                .map(|i| values[i] * (grid.weight(i) * delta_kernel(&grid.point(i)[0], &x)))
                .sum();
            t.record((reproduced - f.eval(&[x])?).norm());
            let y = random_mode_point(rng);
            let trace = quantizer(y.m, &y.dir).trace_of_product(&dequantizer(x.m, &x.dir))?;
            t.record((trace - Complex64::new(delta_kernel(&y, &x), 0.0)).norm());
        }
    }
    Ok(t)
}

fn star_suite(modes: usize, degree: usize, rng: &mut SeededRng) -> Result<Tally> {
    let mut t = Tally::new();
    let pairs = [20, 3];
    for (n, &count) in (1..=modes).zip(&pairs) {
        let grid = TomoGrid::with_degree(n, degree)?;
        for _ in 0..count {
            let a = random_operator(rng, 1 << n);
            let b = random_operator(rng, 1 << n);
            let composed = star(
                &OperatorSymbol::new(a.clone())?,
                &OperatorSymbol::new(b.clone())?,
                &grid,
            )?;
            t.record(composed.max_deviation(&OperatorSymbol::new(a.matmul(&b)?)?)?);
        }
    }
    let grid = TomoGrid::with_degree(1, degree)?;
    let (sp, sm) = (
        OperatorSymbol::new(sigma_plus())?,
        OperatorSymbol::new(sigma_minus())?,
    );
    let forward = star(&sp, &sm, &grid)?;
    let backward = star(&sm, &sp, &grid)?;
    let commutator = GridSymbol::new(
        grid.clone(),
        forward
            .values()
            .iter()
            .zip(backward.values())
            .map(|(a, b)| a - b)
            .collect(),
    )?;
    t.record(commutator.max_deviation(&OperatorSymbol::new(sigma_z())?)?);
    for _ in 0..50 {
        let (y, z, x) = (
            random_mode_point(rng),
            random_mode_point(rng),
            random_mode_point(rng),
        );
        let trace = star_kernel(&[y], &[z], &[x])?;
        let closed = single_mode_kernel_closed_form(&y, &z, &x, KernelCoefficients::TRACE_DERIVED);
        t.record((trace - closed).norm());
    }
    Ok(t)
}

fn closed_form(modes: usize, degree: usize) -> Result<Tally> {
    let mut t = Tally::new();
    for n in 1..=modes {
        let alg = build_algebra(n)?;
        let grid = TomoGrid::with_degree(n, degree)?;
        for j in 1..=n {
            for (op, matrix) in [
                (FermiOperator::Annihilation, alg.annihilator(j)?),
                (FermiOperator::Creation, alg.creator(j)?),
            ] {
                let closed = GridSymbol::sample(&ClosedFormSymbol::fermi(n, j, op)?, &grid)?;
                t.record(closed.max_deviation(&OperatorSymbol::new(matrix.clone())?)?);
            }
            let ann =
                ClosedFormSymbol::fermi(n, j, FermiOperator::Annihilation)?.values_on(&grid)?;
            let cre = ClosedFormSymbol::fermi(n, j, FermiOperator::Creation)?.values_on(&grid)?;
            let conj_dev = ann
                .iter()
                .zip(&cre)
                .map(|(a, c)| (a.conj() - c).norm())
                .fold(0.0, f64::max);
            t.record(conj_dev);
        }
    }
    Ok(t)
}

fn antisymmetry(modes: usize, degree: usize) -> Result<Tally> {
    let mut t = Tally::new();
    let quad = sphere_quadrature(degree)?;
    if modes < 2 {
        let alg = build_algebra(1)?;
        t.require(
            crate::fermi::double_occupation_vanishes(&alg, 1)?,
            "a1+ a1+ |vac> = 0",
        );
        t.note = Some("single mode: only double occupation checked".into());
        return Ok(t);
    }
    let alg = build_algebra(modes)?;
    for i in 1..=modes {
        for j in i + 1..=modes {
            let r = antisymmetry_check(&alg, i, j, &quad)?;
            t.record(r.max_deviation);
            t.require(r.states_antisymmetric, "exchanged states differ by a sign");
            t.require(
                r.double_occupation_vanishes,
                "doubly occupied state is zero",
            );
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
        assert_eq!(
            serde_json::to_string(&Suite::ClosedForm).unwrap(),
            "\"closed-form\""
        );
    }

    #[test]
    fn single_mode_run_passes() {
        let cfg = RunConfig {
            modes: 1,
            ..RunConfig::default()
        };
        let r = run(&cfg, &[]).unwrap();
        assert!(r.passed, "{r:#?}");
        assert_eq!(r.suites.len(), 8);
    }

    #[test]
    fn tiny_tolerance_fails() {
        let cfg = RunConfig {
            modes: 1,
            tolerance: 1e-30,
            ..RunConfig::default()
        };
        let r = run(&cfg, &[Suite::Kernel]).unwrap();
        assert!(!r.passed);
        assert_eq!(r.first_failure, Some(Suite::Kernel));
    }

    #[test]
    fn filter_keeps_only_requested() {
        let cfg = RunConfig {
            modes: 1,
            ..RunConfig::default()
        };
        let r = run(&cfg, &[Suite::Star]).unwrap();
        assert_eq!(r.suites.len(), 1);
        assert_eq!(r.suites[0].suite, Suite::Star);
    }
}
