//! Non-unique conditioning on spin factors.
//!
//! The nonzero propositions of `spin(n)` other than `I` are the atoms
//! `½(1, u)` for unit `u ∈ ℝⁿ`, and the only orthogonal pairs of atoms are
//! antipodal. Any assignment with `ν(u) + ν(−u) = 1` is therefore a state of
//! the logic. Changing a density state at one antipodal pair away from the
//! certain atom `e = ½(1, u₀)` gives a second state with `ν(e) = 1` that no
//! density element represents.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jordan::{dot, Algebra, Block, SimpleFactor};
use crate::logic::{random_frame, Proposition};
use crate::sampling::{derive_seed, rng_from_seed};

pub const DEFAULT_VALUE: f64 = 0.9;
pub const DEFAULT_DIRECTION_SAMPLES: usize = 200;
/// A least-squares residual above this certifies non-representability.
pub const CERTIFICATE_THRESHOLD: f64 = 0.01;

const UNIT_TOL: f64 = 1e-9;
const MATCH_TOL: f64 = 1e-9;

fn norm(u: &[f64]) -> f64 {
    dot(u, u).sqrt()
}

fn require_unit(u: &[f64], what: &str) -> Result<()> {
    let r = norm(u);
    if (r - 1.0).abs() > UNIT_TOL {
        return Err(Error::InvalidArgument(format!("{what} must be a unit vector, has norm {r}")));
    }
    Ok(())
}

fn distance(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}

fn negated(u: &[f64]) -> Vec<f64> {
    u.iter().map(|x| -x).collect()
}

/// `u` lies in the closed "upper" half of the sphere: its first nonzero
/// coordinate is positive.
fn is_upper(u: &[f64]) -> bool {
    u.iter().find(|x| **x != 0.0).is_none_or(|x| *x > 0.0)
}

pub fn unit_vector(n: usize, i: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[i] = 1.0;
    v
}

pub fn normalized(u: &[f64]) -> Result<Vec<f64>> {
    let r = norm(u);
    if r <= UNIT_TOL || !r.is_finite() {
        return Err(Error::InvalidArgument("direction must be nonzero".into()));
    }
    Ok(u.iter().map(|x| x / r).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Override {
    pub direction: Vec<f64>,
    pub value: f64,
}

/// A state on the logic of `spin(n)`, given by the density formula
/// `(1 + ⟨u₀, u⟩)/2` with finitely many antipodal pairs overridden.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpinLogicState {
    n: usize,
    u0: Vec<f64>,
    overrides: Vec<Override>,
}

impl SpinLogicState {
    /// The density state of the atom `½(1, u₀)`.
    pub fn base_state(u0: &[f64]) -> Result<Self> {
        if u0.len() < 2 {
            return Err(Error::InvalidArgument(format!("spin dimension must be at least 2, got {}", u0.len())));
        }
        require_unit(u0, "u0")?;
        Ok(Self { n: u0.len(), u0: u0.to_vec(), overrides: Vec::new() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn u0(&self) -> &[f64] {
        &self.u0
    }

    pub fn overrides(&self) -> &[Override] {
        &self.overrides
    }

    fn upper_value(&self, u: &[f64]) -> f64 {
        // exact at ±u₀, where ⟨u₀, u₀⟩ may round below 1
        if distance(u, &self.u0) <= MATCH_TOL {
            return 1.0;
        }
        if distance(u, &negated(&self.u0)) <= MATCH_TOL {
            return 0.0;
        }
        for o in &self.overrides {
            if distance(u, &o.direction) <= MATCH_TOL {
                return o.value;
            }
            let minus = negated(&o.direction);
            if distance(u, &minus) <= MATCH_TOL {
                return 1.0 - o.value;
            }
        }
        0.5 * (1.0 + dot(&self.u0, u))
    }

    /// Value at the atom `½(1, u)`. Antipodal values are computed as
    /// `v` and `1 − v`, so they add to exactly 1.
    pub fn value(&self, u: &[f64]) -> f64 {
        if is_upper(u) {
            self.upper_value(u)
        } else {
            1.0 - self.upper_value(&negated(u))
        }
    }

    /// `ν` equal to `self` except `ν(u₁) = value`, `ν(−u₁) = 1 − value`.
    pub fn perturb(&self, u1: &[f64], value: f64) -> Result<Self> {
        if u1.len() != self.n {
            return Err(Error::InvalidArgument(format!("u1 has length {}, expected {}", u1.len(), self.n)));
        }
        require_unit(u1, "u1")?;
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::InvalidArgument(format!("value {value} outside [0, 1]")));
        }
        if distance(u1, &self.u0) <= MATCH_TOL || distance(u1, &negated(&self.u0)) <= MATCH_TOL {
            return Err(Error::InvalidArgument("cannot perturb at ±u0".into()));
        }
        let (direction, value) = if is_upper(u1) { (u1.to_vec(), value) } else { (negated(u1), 1.0 - value) };
        let mut next = self.clone();
        next.overrides
            .retain(|o| distance(&o.direction, &direction) > MATCH_TOL);
        next.overrides.push(Override { direction, value });
        Ok(next)
    }

    /// Sampled check of the state axioms: values in `[0, 1]` and
    /// `ν(u) + ν(−u) = 1` on random directions and every override.
    pub fn verify_state(&self, samples: usize, seed: u64) -> StateCheck {
        let mut dirs: Vec<Vec<f64>> = self.overrides.iter().map(|o| o.direction.clone()).collect();
        dirs.push(self.u0.clone());
        let mut rng = rng_from_seed(seed);
        dirs.extend((0..samples).map(|_| random_unit(self.n, &mut rng)));
        let mut antipodal = 0.0f64;
        let mut in_range = true;
        for u in &dirs {
            let (a, b) = (self.value(u), self.value(&negated(u)));
            antipodal = antipodal.max((a + b - 1.0).abs());
            in_range &= (0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&b);
        }
        StateCheck { directions: dirs.len(), max_antipodal_residual: antipodal, values_in_range: in_range }
    }

    /// Residual of the best fit `ν(u) ≈ s + ⟨w, u⟩` over `dirs`. A density
    /// element `(α, a)` of `spin(n)` assigns exactly `α + ⟨a, u⟩` to the atom
    /// `½(1, u)`, so a positive residual rules out every density.
    pub fn density_fit_residual(&self, dirs: &[Vec<f64>]) -> f64 {
        let m = dirs.len();
        let a = DMatrix::from_fn(m, self.n + 1, |i, j| if j == 0 { 1.0 } else { dirs[i][j - 1] });
        let b = DVector::from_iterator(m, dirs.iter().map(|u| self.value(u)));
        let svd = a.clone().svd(true, true);
        let x = svd.solve(&b, 1e-12).expect("SVD computed with U and V");
        (a * x - b).norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StateCheck {
    pub directions: usize,
    pub max_antipodal_residual: f64,
    pub values_in_range: bool,
}

impl StateCheck {
    pub fn passed(&self) -> bool {
        self.values_in_range && self.max_antipodal_residual == 0.0
    }
}

fn random_unit(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        if let Ok(u) = normalized(&v) {
            return u;
        }
    }
}

/// Directions for the least-squares certificate: `±u₀`, `±u₁`,
/// `(u₀ ± u₁)` normalized, then random ones up to `max(samples, n + 2)`.
pub fn certificate_directions(u0: &[f64], u1: &[f64], samples: usize, seed: u64) -> Vec<Vec<f64>> {
    let n = u0.len();
    let mut dirs = vec![u0.to_vec(), negated(u0), u1.to_vec(), negated(u1)];
    for sign in [1.0, -1.0] {
        let v: Vec<f64> = u0.iter().zip(u1).map(|(a, b)| a + sign * b).collect();
        if let Ok(u) = normalized(&v) {
            dirs.push(u);
        }
    }
    let target = samples.max(n + 2);
    let mut rng = rng_from_seed(seed);
    while dirs.len() < target {
        dirs.push(random_unit(n, &mut rng));
    }
    dirs
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonuniquenessReport {
    pub n: usize,
    pub u0: Vec<f64>,
    pub u1: Vec<f64>,
    pub value: f64,
    pub mu_at_e: f64,
    pub nu_at_e: f64,
    pub mu_at_f: f64,
    pub nu_at_f: f64,
    /// `|μ(f) − ν(f)|`
    pub deviation: f64,
    pub mu_check: StateCheck,
    pub nu_check: StateCheck,
    pub fit_directions: usize,
    pub mu_fit_residual: f64,
    pub nu_fit_residual: f64,
    /// `ν` is certified not to come from a density.
    pub certificate: bool,
    pub counterexample: bool,
}

impl NonuniquenessReport {
    pub fn passed(&self) -> bool {
        self.mu_check.passed() && self.nu_check.passed() && self.counterexample
    }
}

/// Parameters of the construction; `None` directions default to `u₀ = e_n`
/// and `u₁ = e_1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleConfig {
    pub n: usize,
    pub u0: Option<Vec<f64>>,
    pub u1: Option<Vec<f64>>,
    pub value: f64,
    pub samples: usize,
    pub seed: u64,
}

impl CounterexampleConfig {
    pub fn new(n: usize) -> Self {
        Self { n, u0: None, u1: None, value: DEFAULT_VALUE, samples: DEFAULT_DIRECTION_SAMPLES, seed: 0 }
    }

    fn directions(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        if self.n < 2 {
            return Err(Error::InvalidArgument(format!("spin dimension must be at least 2, got {}", self.n)));
        }
        let u0 = self.u0.clone().unwrap_or_else(|| unit_vector(self.n, self.n - 1));
        let u1 = self.u1.clone().unwrap_or_else(|| unit_vector(self.n, 0));
        for (name, u) in [("u0", &u0), ("u1", &u1)] {
            if u.len() != self.n {
                return Err(Error::InvalidArgument(format!("{name} has length {}, expected {}", u.len(), self.n)));
            }
        }
        Ok((u0, u1))
    }

    /// The density state `μ` of the atom at `u₀` and its perturbation `ν`.
    pub fn states(&self) -> Result<(SpinLogicState, SpinLogicState)> {
        let (u0, u1) = self.directions()?;
        let mu = SpinLogicState::base_state(&u0)?;
        let nu = mu.perturb(&u1, self.value)?;
        Ok((mu, nu))
    }
}

pub fn verify_nonuniqueness(config: &CounterexampleConfig) -> Result<NonuniquenessReport> {
    let (u0, u1) = config.directions()?;
    let (mu, nu) = config.states()?;
    let mu_check = mu.verify_state(config.samples, derive_seed(config.seed, 0));
    let nu_check = nu.verify_state(config.samples, derive_seed(config.seed, 0));
    let dirs = certificate_directions(&u0, &u1, config.samples, derive_seed(config.seed, 1));
    let mu_fit_residual = mu.density_fit_residual(&dirs);
    let nu_fit_residual = nu.density_fit_residual(&dirs);
    let (mu_at_e, nu_at_e) = (mu.value(&u0), nu.value(&u0));
    let (mu_at_f, nu_at_f) = (mu.value(&u1), nu.value(&u1));
    let deviation = (mu_at_f - nu_at_f).abs();
    let certificate = nu_fit_residual > CERTIFICATE_THRESHOLD;
    Ok(NonuniquenessReport {
        n: config.n,
        u0,
        u1,
        value: config.value,
        mu_at_e,
        nu_at_e,
        mu_at_f,
        nu_at_f,
        deviation,
        mu_check,
        nu_check,
        fit_directions: dirs.len(),
        mu_fit_residual,
        nu_fit_residual,
        certificate,
        counterexample: mu_at_e == 1.0 && nu_at_e == 1.0 && deviation > 0.0 && certificate,
    })
}

/// A spin-factor logic state placed on one summand of a direct sum: the
/// value of a proposition is the value of its component in that summand.
#[derive(Debug, Clone)]
pub struct LiftedState {
    algebra: Arc<Algebra>,
    factor: usize,
    state: SpinLogicState,
}

impl LiftedState {
    pub fn new(algebra: &Arc<Algebra>, factor: usize, state: SpinLogicState) -> Result<Self> {
        match algebra.factors().get(factor) {
            Some(SimpleFactor::Spin(n)) if *n == state.n => {
                Ok(Self { algebra: algebra.clone(), factor, state })
            }
            other => Err(Error::InvalidArgument(format!(
                "factor {factor} is {other:?}, expected spin({})",
                state.n
            ))),
        }
    }

    /// The atom `½(1, u)` of the chosen summand as a proposition of the sum.
    pub fn atom(&self, u: &[f64]) -> Result<Proposition> {
        let block = Block::Spin { scalar: 0.5, vector: u.iter().map(|x| 0.5 * x).collect() };
        Proposition::certify(self.algebra.embed(self.factor, block)?)
    }

    pub fn evaluate(&self, p: &Proposition) -> Result<f64> {
        if !Arc::ptr_eq(p.algebra(), &self.algebra) && p.algebra().descriptor() != self.algebra.descriptor() {
            return Err(Error::AlgebraMismatch {
                left: self.algebra.descriptor().to_string(),
                right: p.algebra().descriptor().to_string(),
            });
        }
        let Block::Spin { scalar, vector } = p.element().block(self.factor) else {
            unreachable!("factor checked at construction")
        };
        match (2.0 * scalar).round() as i64 {
            0 => Ok(0.0),
            2 => Ok(1.0),
            1 => Ok(self.state.value(&normalized(vector)?)),
            _ => Err(Error::NonIntegralRank { trace: 2.0 * scalar }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiftReport {
    pub spec: String,
    pub factor: usize,
    pub mu_at_e: f64,
    pub nu_at_e: f64,
    pub deviation: f64,
    /// Largest `|ν(p + q) − ν(p) − ν(q)|` over orthogonal pairs from the
    /// sampled frames, together with `|ν(I) − 1|`.
    pub additivity_residual: f64,
    pub frames: usize,
}

impl LiftReport {
    pub fn passed(&self) -> bool {
        self.mu_at_e == 1.0 && self.nu_at_e == 1.0 && self.deviation > 0.0 && self.additivity_residual <= 1e-12
    }
}

/// Lift `μ` and `ν` of `config` to the `factor`-th summand of `algebra` and
/// check additivity on orthogonal pairs drawn from random frames plus a
/// frame through `±u₁`.
pub fn verify_lift(
    algebra: &Arc<Algebra>,
    factor: usize,
    config: &CounterexampleConfig,
    frames: usize,
) -> Result<LiftReport> {
    let (u0, u1) = config.directions()?;
    let (mu, nu) = config.states()?;
    let mu_l = LiftedState::new(algebra, factor, mu)?;
    let nu_l = LiftedState::new(algebra, factor, nu)?;

    let e = mu_l.atom(&u0)?;
    let f = mu_l.atom(&u1)?;
    let (mu_at_e, nu_at_e) = (mu_l.evaluate(&e)?, nu_l.evaluate(&e)?);
    let deviation = (mu_l.evaluate(&f)? - nu_l.evaluate(&f)?).abs();

    let mut families: Vec<Vec<Proposition>> = Vec::with_capacity(frames + 1);
    {
        // ±u₁ in the chosen summand, a random frame elsewhere
        let base = random_frame(algebra, derive_seed(config.seed, 2))?;
        let mut family: Vec<Proposition> = base
            .into_iter()
            .filter(|p| match p.element().block(factor) {
                Block::Spin { scalar, .. } => scalar.abs() < 0.25,
                _ => true,
            })
            .collect();
        family.push(f.clone());
        family.push(mu_l.atom(&negated(&u1))?);
        families.push(family);
    }
    for k in 0..frames {
        let mut frame = random_frame(algebra, derive_seed(config.seed, 10 + k as u64))?;
        frame.shuffle(&mut rng_from_seed(derive_seed(config.seed, 1000 + k as u64)));
        families.push(frame);
    }

    let mut residual = 0.0f64;
    for family in &families {
        let mut total = algebra.zero();
        for (i, p) in family.iter().enumerate() {
            total = &total + p.element();
            for q in &family[i + 1..] {
                let pq = p.ortho_sum(q)?;
                residual = residual.max((nu_l.evaluate(&pq)? - nu_l.evaluate(p)? - nu_l.evaluate(q)?).abs());
            }
        }
        let total = Proposition::certify(total)?;
        residual = residual.max((nu_l.evaluate(&total)? - 1.0).abs());
    }

    Ok(LiftReport {
        spec: algebra.descriptor().to_string(),
        factor,
        mu_at_e,
        nu_at_e,
        deviation,
        additivity_residual: residual,
        frames: families.len(),
    })
}
