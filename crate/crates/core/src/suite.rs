//! The verification suite: named numerical checks of the conditioning
//! postulates, run against one algebra and collected into a report.
//!
//! Every check reports the largest residual it saw and passes when that
//! residual is at most its threshold. The exceptions are `counterexample`,
//! which passes when the spin-factor construction succeeds, and
//! `A.uniqueness` on algebras with a spin-like summand, whose residual is the
//! gap between two states that agree on a certain atom.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interference::{max_abs, sweep_i3};
use crate::jordan::{Algebra, AlgebraDescriptor, SimpleFactor};
use crate::logic::{
    idempotency_residual, random_atom, random_frame, random_proposition, random_subproposition, Proposition,
};
use crate::probability::{
    box_product, decompose_state_seeded, random_state, separation_witness, state_independence_check,
    transition_probability, u_map, CONDITIONING_EPS,
};
use crate::sampling::{derive_seed, derive_seed_str, rng_from_seed};
use crate::spectral::{min_eigenvalue, spectral_decomposition};
use crate::spin::{verify_lift, verify_nonuniqueness, CounterexampleConfig};

pub const REPORT_VERSION: u32 = 1;
pub const DEFAULT_SAMPLES: usize = 500;
pub const DEFAULT_SEED: u64 = 42;
/// Smallest `|μ(p) − μ(q)|` a separation witness must achieve.
pub const SEPARATION_GAP: f64 = 1e-3;

/// Check names with their default thresholds.
pub const CHECKS: &[(&str, f64)] = &[
    ("A.conditioning", 1e-9),
    ("A.separation", 1e-12),
    ("A.state_independence", 1e-8),
    ("A.u_map", 1e-10),
    ("A.uniqueness", 1e-8),
    ("B.decomposition", 1e-8),
    ("C.symmetry", 1e-10),
    ("D.interference", 1e-8),
    ("counterexample", 1e-12),
    ("lattice", 1e-8),
    ("spectral.projections", 1e-8),
    ("spectral.reconstruction", 1e-7),
];

/// Category of a check name: the part before the first `.`.
pub fn category(name: &str) -> &str {
    name.split('.').next().unwrap_or(name)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub spec: String,
    pub samples: usize,
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
    /// Check names or categories to run; `None` runs everything.
    pub only: Option<Vec<String>>,
    /// Record wall time per check. Off by default so reports are
    /// byte-for-byte reproducible.
    pub timings: bool,
}

impl SuiteConfig {
    pub fn new(spec: impl Into<String>) -> Self {
        Self {
            spec: spec.into(),
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            tolerances: BTreeMap::new(),
            only: None,
            timings: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidArgument("samples must be at least 1".into()));
        }
        for (name, tol) in &self.tolerances {
            if !CHECKS.iter().any(|(n, _)| n == name) {
                return Err(Error::InvalidArgument(format!("unknown check `{name}` in tolerance override")));
            }
            if !(*tol > 0.0 && tol.is_finite()) {
                return Err(Error::InvalidArgument(format!("tolerance for `{name}` must be positive, got {tol}")));
            }
        }
        if let Some(only) = &self.only {
            for item in only {
                if !CHECKS.iter().any(|(n, _)| n == item || category(n) == item) {
                    return Err(Error::InvalidArgument(format!("unknown check or category `{item}`")));
                }
            }
        }
        Ok(())
    }

    fn enabled(&self, name: &str) -> bool {
        self.only
            .as_ref()
            .is_none_or(|only| only.iter().any(|item| item == name || item == category(name)))
    }

    fn threshold(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// `null` in JSON when the check aborted with an error.
    pub residual: f64,
    pub threshold: f64,
    pub passed: bool,
    pub samples: usize,
    pub millis: u64,
    /// Free-form remark shown in text output.
    #[serde(skip)]
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub version: u32,
    pub spec: String,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// What a check measured before the threshold is applied.
struct Outcome {
    residual: f64,
    samples: usize,
    /// Overrides `residual <= threshold`.
    verdict: Option<bool>,
    detail: String,
}

impl Outcome {
    fn measured(residual: f64, samples: usize) -> Self {
        Self { residual, samples, verdict: None, detail: String::new() }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

pub fn run_postulate_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let descriptor: AlgebraDescriptor = config.spec.parse()?;
    let algebra = Algebra::new(descriptor)?;

    let enabled: Vec<(&str, f64)> = CHECKS
        .iter()
        .filter(|(name, _)| config.enabled(name))
        .map(|&(name, default)| (name, config.threshold(name, default)))
        .collect();

    let mut checks: Vec<CheckResult> = enabled
        .par_iter()
        .map(|&(name, threshold)| {
            let start = Instant::now();
            let seed = derive_seed_str(config.seed, name);
            let outcome = run_check(name, &algebra, config.samples, seed).unwrap_or_else(|e| Outcome {
                residual: f64::INFINITY,
                samples: 0,
                verdict: Some(false),
                detail: e.to_string(),
            });
            let passed = outcome.verdict.unwrap_or(outcome.residual <= threshold);
            CheckResult {
                name: name.to_string(),
                residual: outcome.residual,
                threshold,
                passed,
                samples: outcome.samples,
                millis: if config.timings { start.elapsed().as_millis() as u64 } else { 0 },
                detail: outcome.detail,
            }
        })
        .collect();
    checks.sort_by(|a, b| a.name.cmp(&b.name));

    Ok(SuiteReport {
        version: REPORT_VERSION,
        spec: algebra.descriptor().to_string(),
        seed: config.seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

fn run_check(name: &str, alg: &Arc<Algebra>, samples: usize, seed: u64) -> Result<Outcome> {
    match name {
        "A.conditioning" => check_conditioning(alg, samples, seed),
        "A.separation" => check_separation(alg, samples, seed),
        "A.state_independence" => check_state_independence(alg, samples, seed),
        "A.u_map" => check_u_map(alg, samples, seed),
        "A.uniqueness" => check_uniqueness(alg, samples, seed),
        "B.decomposition" => check_decomposition(alg, samples, seed),
        "C.symmetry" => check_symmetry(alg, samples, seed),
        "D.interference" => check_interference(alg, samples, seed),
        "counterexample" => check_counterexample(alg, samples, seed),
        "lattice" => check_lattice(alg, samples, seed),
        "spectral.projections" => check_spectral(alg, samples, seed, false),
        "spectral.reconstruction" => check_spectral(alg, samples, seed, true),
        _ => Err(Error::InvalidArgument(format!("unknown check `{name}`"))),
    }
}

/// Run `f` on `samples` derived seeds in parallel; `None` results are
/// skipped samples. Returns the maximum and the number of samples used.
fn par_max<F>(samples: usize, seed: u64, f: F) -> Result<(f64, usize)>
where
    F: Fn(u64) -> Result<Option<f64>> + Sync,
{
    let values: Vec<Option<f64>> = (0..samples as u64)
        .into_par_iter()
        .map(|i| f(derive_seed(seed, i)))
        .collect::<Result<_>>()?;
    let used = values.iter().flatten().count();
    let max = values.into_iter().flatten().fold(0.0, f64::max);
    Ok((max, used))
}

fn random_rank(alg: &Arc<Algebra>, seed: u64) -> usize {
    rng_from_seed(seed).random_range(1..=alg.rank())
}

/// Index and spin dimension of a summand whose logic is that of a spin
/// factor, preferring a genuine `spin(n)` over a 2 × 2 matrix factor.
fn spin_like(alg: &Arc<Algebra>) -> Option<(usize, usize)> {
    alg.factors()
        .iter()
        .enumerate()
        .find_map(|(i, f)| match f {
            SimpleFactor::Spin(n) => Some((i, *n)),
            _ => None,
        })
        .or_else(|| alg.descriptor().first_spin_like())
}

fn check_conditioning(alg: &Arc<Algebra>, samples: usize, seed: u64) -> Result<Outcome> {
    let (max, used) = par_max(samples, seed, |s| {
        let mu = random_state(alg, derive_seed(s, 0));
        let p = random_proposition(alg, random_rank(alg, derive_seed(s, 1)), derive_seed(s, 2))?;
        let q = random_subproposition(&p, rng_from_seed(derive_seed(s, 3)).random_range(1..=p.rank()), derive_seed(s, 4))?;
        let mp = mu.evaluate(&p)?;
        if mp <= CONDITIONING_EPS {
            return Ok(None);
        }
        let cond = mu.conditional_probability(&q, &p)?;
        let ratio = (cond - mu.evaluate(&q)? / mp).abs();
        let product = (cond * mp - mu.expectation(&u_map(&p, q.element())?)?).abs();
        Ok(Some(ratio.max(product)))
    })?;
    Ok(Outcome::measured(max, used))
}

fn check_separation(alg: &Arc<Algebra>, samples: usize, seed: u64) -> Result<Outcome> {
    let (max, used) = par_max(samples, seed, |s| {
        let p = random_proposition(alg, random_rank(alg, derive_seed(s, 0)), derive_seed(s, 1))?;
        let q = random_proposition(alg, random_rank(alg, derive_seed(s, 2)), derive_seed(s, 3))?;
        if p.element().distance(q.element()) <= 1e-6 {
            return Ok(None);
        }
        let (_, gap) = separation_witness(&p, &q)?;
        Ok(Some((SEPARATION_GAP - gap).max(0.0)))
    })?;
    Ok(Outcome::measured(max, used).with_detail(format!("residual is the shortfall below a gap of {SEPARATION_GAP}")))
}

fn check_state_independence(alg: &Arc<Algebra>, samples: usize, seed: u64) -> Result<Outcome> {
    const PER_ATOM: usize = 25;
    let atoms = samples.div_ceil(PER_ATOM);
    let (max, _) = par_max(atoms, seed, |s| {
        let e = random_atom(alg, derive_seed(s, 0))?;
        Ok(Some(state_independence_check(&e, PER_ATOM, derive_seed(s, 1))?))
    })?;
    Ok(Outcome::measured(max, atoms * PER_ATOM))
}

fn check_u_map(alg: &Arc<Algebra>, samples: usize, seed: u64) -> Result<Outcome> {
    let (max, used) = par_max(samples, seed, |s| {
        let p = random_proposition(alg, random_rank(alg, derive_seed(s, 0)), derive_seed(s, 1))?;
        let q = random_proposition(alg, random_rank(alg, derive_seed(s, 2)), derive_seed(s, 3))?;
        let x = alg.random_element(&mut rng_from_seed(derive_seed(s, 4)));
        let scale = x.norm().max(1.0);
        let ux = u_map(&p, &x)?;
        let idempotent = u_map(&p, &ux)?.distance(&ux) / scale;
        let boxed = box_product(&p, &q)?.distance(&p.element().jordan(q.element())?);
        let orthogonal = box_product(&p, &p.orthocomplement())?.norm();
        let sq = x.square();
        let positive = (-min_eigenvalue(&u_map(&p, &sq)?)).max(0.0) / sq.norm().max(1.0);
        Ok(Some(idempotent.max(boxed).max(orthogonal).max(positive)))
    })?;
    Ok(Outcome::measured(max, used))
}

fn counterexample_config(n: usize, seed: u64) -> CounterexampleConfig {
    let mut cfg = CounterexampleConfig::new(n);
    cfg.seed = seed;
    cfg
}

fn check_uniqueness(alg: &Arc<Algebra>, samples: usize, seed: u64) -> Result<Outcome> {
    if let Some((_, n)) = spin_like(alg) {
        let report = verify_nonuniqueness(&counterexample_config(n, seed))?;
        return Ok(Outcome {
            residual: report.deviation,
            samples: report.fit_directions,
            verdict: Some(!report.counterexample),
            detail: format!(
                "spin-like summand: two states with value 1 at e differ by {} at f (expected failure)",
                report.deviation
            ),
        });
    }
    let (max, used) = par_max(samples, seed, |s| {
        let mu = random_state(alg, derive_seed(s, 0));
        let e = random_atom(alg, derive_seed(s, 1))?;
        if mu.evaluate(&e)? <= 0.01 {
            return Ok(None);
        }
        Ok(Some(mu.condition(&e)?.density().distance(e.element())))
    })?;
    Ok(Outcome::measured(max, used))
}

fn check_decomposition(alg: &Arc<Algebra>, samples: usize, seed: u64) -> Result<Outcome> {
    const POOL: usize = 64;
    const PER_STATE: usize = 10;
    let pool: Vec<Proposition> = (0..POOL as u64)
        .into_par_iter()
        .map(|i| {
            let s = derive_seed(seed, u64::MAX - i);
            random_proposition(alg, random_rank(alg, derive_seed(s, 0)), derive_seed(s, 1))
        })
        .collect::<Result<_>>()?;
    let n = alg.rank();
    let (max, used) = par_max(samples, seed, |s| {
        let mu = random_state(alg, derive_seed(s, 0));
        let d = decompose_state_seeded(&mu, derive_seed(s, 1))?;
        if d.len() > n {
            return Ok(Some(f64::INFINITY));
        }
        let mut rng = rng_from_seed(derive_seed(s, 2));
        let mut worst = 0.0f64;
        for _ in 0..PER_STATE {
            let p = &pool[rng.random_range(0..POOL)];
            worst = worst.max((mu.evaluate(p)? - d.evaluate(p)?).abs());
        }
        Ok(Some(worst))
    })?;
    Ok(Outcome::measured(max, used))
}

fn check_symmetry(alg: &Arc<Algebra>, samples: usize, seed: u64) -> Result<Outcome> {
    let (max, used) = par_max(samples, seed, |s| {
        let e = random_atom(alg, derive_seed(s, 0))?;
        let f = random_atom(alg, derive_seed(s, 1))?;
        let direct = (transition_probability(&e, &f)? - transition_probability(&f, &e)?).abs();
        // through the quadratic maps: U_e f = P(f|e) e has trace P(f|e)
        let via_u = (u_map(&e, f.element())?.trace() - u_map(&f, e.element())?.trace()).abs();
        Ok(Some(direct.max(via_u)))
    })?;
    Ok(Outcome::measured(max, used))
}

fn check_interference(alg: &Arc<Algebra>, samples: usize, seed: u64) -> Result<Outcome> {
    if alg.rank() < 3 {
        return Ok(Outcome::measured(0.0, 0).with_detail("rank < 3: no three orthogonal nonzero propositions"));
    }
    let reports = sweep_i3(alg, samples, seed)?;
    Ok(Outcome::measured(max_abs(&reports), reports.len()))
}

fn check_counterexample(alg: &Arc<Algebra>, samples: usize, seed: u64) -> Result<Outcome> {
    let Some((index, n)) = spin_like(alg) else {
        return Ok(Outcome::measured(0.0, 0).with_detail("no spin-like summand"));
    };
    let mut cfg = counterexample_config(n, seed);
    cfg.samples = samples.max(cfg.samples);
    let report = verify_nonuniqueness(&cfg)?;
    let mut residual = report.mu_check.max_antipodal_residual.max(report.nu_check.max_antipodal_residual);
    let mut passed = report.passed();
    let mut detail = format!(
        "gap {} at f, density-fit residual {:.3e} over {} directions",
        report.deviation, report.nu_fit_residual, report.fit_directions
    );
    if matches!(alg.factors()[index], SimpleFactor::Spin(_)) {
        let lift = verify_lift(alg, index, &cfg, 10)?;
        residual = residual.max(lift.additivity_residual);
        passed &= lift.passed();
        let _ = write!(detail, "; lifted to {}", lift.spec);
    }
    Ok(Outcome { residual, samples: report.fit_directions, verdict: Some(passed), detail })
}

fn check_lattice(alg: &Arc<Algebra>, samples: usize, seed: u64) -> Result<Outcome> {
    let n = alg.rank();
    let identity = alg.identity();
    let (max, used) = par_max(samples, seed, |s| {
        let p = random_proposition(alg, random_rank(alg, derive_seed(s, 0)), derive_seed(s, 1))?;
        let q = random_subproposition(&p, rng_from_seed(derive_seed(s, 2)).random_range(0..=p.rank()), derive_seed(s, 3))?;
        let pc = p.orthocomplement();
        let qc = q.orthocomplement();
        // (a) q ≤ p ⇒ p′ ≤ q′
        let a = q.order_residual(&p)?.max(pc.order_residual(&qc)?);
        // (b) (p′)′ = p
        let b = pc.orthocomplement().element().distance(p.element());
        // (c), (d) p ⊥ p′ and p + p′ = I
        let d = p.orthogonality_residual(&pc)?.max((p.element() + pc.element()).distance(&identity));
        // (e) orthomodular law: p = q + (p − q) with p − q idempotent and ⊥ q
        let diff = p.element() - q.element();
        let e = idempotency_residual(&diff).max(diff.jordan(q.element())?.norm());
        // ranks add up and a frame has n atoms
        let frame = random_frame(alg, derive_seed(s, 4))?;
        let ranks = if frame.len() == n && pc.rank() + p.rank() == n { 0.0 } else { f64::INFINITY };
        Ok(Some(a.max(b).max(d).max(e).max(ranks)))
    })?;
    Ok(Outcome::measured(max, used))
}

fn check_spectral(alg: &Arc<Algebra>, samples: usize, seed: u64, reconstruction: bool) -> Result<Outcome> {
    let identity = alg.identity();
    let (max, used) = par_max(samples, seed, |s| {
        let x = alg.random_element(&mut rng_from_seed(s));
        let scale = x.norm().max(1.0);
        let sd = spectral_decomposition(&x)?;
        if reconstruction {
            return Ok(Some(sd.reconstruct().distance(&x) / scale));
        }
        let pairs = sd.pairs();
        let mut worst = 0.0f64;
        let mut sum = alg.zero();
        for (i, (_, p)) in pairs.iter().enumerate() {
            worst = worst.max(idempotency_residual(p));
            for (_, r) in &pairs[i + 1..] {
                worst = worst.max(p.jordan(r)?.norm());
            }
            sum = &sum + p;
        }
        Ok(Some(worst.max(sum.distance(&identity))))
    })?;
    Ok(Outcome::measured(max, used))
}

pub fn emit_report(report: &SuiteReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "algebra {}  seed {}", report.spec, report.seed);
            let width = report.checks.iter().map(|c| c.name.len()).max().unwrap_or(5).max(5);
            let _ = writeln!(s, "{:<width$}  {:>11}  {:>9}  {:>7}  {:>6}", "check", "residual", "threshold", "samples", "result");
            for c in &report.checks {
                let _ = writeln!(
                    s,
                    "{:<width$}  {:>11.3e}  {:>9.1e}  {:>7}  {:>6}",
                    c.name,
                    c.residual,
                    c.threshold,
                    c.samples,
                    if c.passed { "pass" } else { "FAIL" }
                );
                if !c.detail.is_empty() {
                    let _ = writeln!(s, "{:<width$}    {}", "", c.detail);
                }
            }
            let _ = writeln!(s, "overall: {}", if report.passed { "pass" } else { "FAIL" });
            s
        }
    }
}
