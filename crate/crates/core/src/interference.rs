//! Second- and third-order interference terms.
//!
//! Each term `μ(q|p)μ(p)` is evaluated as `μ(U_p q)`, which needs no
//! division and is zero when `μ(p)` is.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jordan::{Algebra, Element};
use crate::logic::{random_frame, random_proposition, Proposition, LOGIC_TOL};
use crate::probability::{random_state, u_map, State};
use crate::sampling::{derive_seed, rng_from_seed};

/// `|I3|` at or below this counts as vanishing.
pub const I3_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterferenceReport {
    pub order: u8,
    pub value: f64,
    /// Seed of the configuration; the sweep is reproducible from it.
    pub seed: u64,
    /// Ranks of `p1, p2[, p3]` followed by the rank of `q`.
    pub ranks: Vec<usize>,
    pub vanishes: bool,
}

fn require_orthogonal(ps: &[&Proposition]) -> Result<()> {
    for (i, p) in ps.iter().enumerate() {
        if p.is_zero() {
            return Err(Error::InvalidArgument("interference needs nonzero propositions".into()));
        }
        for r in &ps[i + 1..] {
            let residual = p.orthogonality_residual(r)?;
            if residual > LOGIC_TOL {
                return Err(Error::NotOrthogonal { residual });
            }
        }
    }
    Ok(())
}

fn weight(mu: &State, q: &Element, parts: &[&Proposition]) -> Result<f64> {
    let alg = mu.algebra();
    let sum = parts.iter().fold(alg.zero(), |acc, p| &acc + p.element());
    let p = Proposition::certify(sum)?;
    mu.expectation(&u_map(&p, q)?)
}

/// Seven-term alternating sum for pairwise orthogonal `p1, p2, p3`.
pub fn i3(mu: &State, q: &Proposition, p1: &Proposition, p2: &Proposition, p3: &Proposition) -> Result<f64> {
    require_orthogonal(&[p1, p2, p3])?;
    let q = q.element();
    Ok(weight(mu, q, &[p1, p2, p3])? - weight(mu, q, &[p1, p2])? - weight(mu, q, &[p1, p3])?
        - weight(mu, q, &[p2, p3])?
        + weight(mu, q, &[p1])?
        + weight(mu, q, &[p2])?
        + weight(mu, q, &[p3])?)
}

/// `μ(U_{p1+p2} q) − μ(U_{p1} q) − μ(U_{p2} q)` for orthogonal `p1, p2`.
pub fn i2(mu: &State, q: &Proposition, p1: &Proposition, p2: &Proposition) -> Result<f64> {
    require_orthogonal(&[p1, p2])?;
    let q = q.element();
    Ok(weight(mu, q, &[p1, p2])? - weight(mu, q, &[p1])? - weight(mu, q, &[p2])?)
}

/// Split a random frame into `parts` nonzero orthogonal blocks of random
/// sizes (not necessarily covering `I`).
fn random_blocks(alg: &Arc<Algebra>, parts: usize, seed: u64) -> Result<Vec<Proposition>> {
    let n = alg.rank();
    let mut rng = rng_from_seed(derive_seed(seed, 0));
    let mut atoms = random_frame(alg, derive_seed(seed, 1))?;
    atoms.shuffle(&mut rng);
    let mut sizes = vec![1usize; parts];
    let extra = rng.random_range(0..=n - parts);
    for _ in 0..extra {
        let i = rng.random_range(0..parts);
        sizes[i] += 1;
    }
    let mut blocks = Vec::with_capacity(parts);
    let mut it = atoms.into_iter();
    for size in sizes {
        let sum = it.by_ref().take(size).fold(alg.zero(), |acc, e| &acc + e.element());
        blocks.push(Proposition::certify(sum)?);
    }
    Ok(blocks)
}

fn random_q(alg: &Arc<Algebra>, seed: u64) -> Result<Proposition> {
    let rank = rng_from_seed(seed).random_range(1..=alg.rank());
    random_proposition(alg, rank, derive_seed(seed, 1))
}

/// `|I3|` over `num_configs` random `(μ, q, p1, p2, p3)`, in config order.
pub fn sweep_i3(algebra: &Arc<Algebra>, num_configs: usize, seed: u64) -> Result<Vec<InterferenceReport>> {
    if algebra.rank() < 3 {
        return Err(Error::InvalidArgument(format!(
            "third-order interference needs rank >= 3, got {}",
            algebra.rank()
        )));
    }
    (0..num_configs as u64)
        .into_par_iter()
        .map(|c| {
            let s = derive_seed(seed, c);
            let mu = random_state(algebra, derive_seed(s, 0));
            let blocks = random_blocks(algebra, 3, derive_seed(s, 1))?;
            let q = random_q(algebra, derive_seed(s, 2))?;
            let value = i3(&mu, &q, &blocks[0], &blocks[1], &blocks[2])?;
            Ok(InterferenceReport {
                order: 3,
                value,
                seed: s,
                ranks: vec![blocks[0].rank(), blocks[1].rank(), blocks[2].rank(), q.rank()],
                vanishes: value.abs() <= I3_TOL,
            })
        })
        .collect()
}

fn i2_config(algebra: &Arc<Algebra>, s: u64, pure: bool) -> Result<InterferenceReport> {
    let mu = if pure {
        let e = random_proposition(algebra, 1, derive_seed(s, 0))?;
        State::pure(&e)?
    } else {
        random_state(algebra, derive_seed(s, 0))
    };
    let blocks = random_blocks(algebra, 2, derive_seed(s, 1))?;
    let q = random_q(algebra, derive_seed(s, 2))?;
    let value = i2(&mu, &q, &blocks[0], &blocks[1])?;
    Ok(InterferenceReport {
        order: 2,
        value,
        seed: s,
        ranks: vec![blocks[0].rank(), blocks[1].rank(), q.rank()],
        vanishes: value.abs() <= I3_TOL,
    })
}

fn require_rank2(algebra: &Arc<Algebra>) -> Result<()> {
    if algebra.rank() < 2 {
        return Err(Error::InvalidArgument("second-order interference needs rank >= 2".into()));
    }
    Ok(())
}

/// `I2` over random mixed-state configurations, in config order.
pub fn sweep_i2(algebra: &Arc<Algebra>, num_configs: usize, seed: u64) -> Result<Vec<InterferenceReport>> {
    require_rank2(algebra)?;
    (0..num_configs as u64)
        .into_par_iter()
        .map(|c| i2_config(algebra, derive_seed(seed, c), false))
        .collect()
}

/// Random search over pure-state configurations for the largest `|I2|`.
pub fn search_i2(algebra: &Arc<Algebra>, num_configs: usize, seed: u64) -> Result<InterferenceReport> {
    require_rank2(algebra)?;
    let reports: Vec<InterferenceReport> = (0..num_configs.max(1) as u64)
        .into_par_iter()
        .map(|c| i2_config(algebra, derive_seed(seed, c), true))
        .collect::<Result<_>>()?;
    Ok(reports
        .into_iter()
        .reduce(|best, r| if r.value.abs() > best.value.abs() { r } else { best })
        .expect("at least one configuration"))
}

/// Largest `|value|` in a sweep.
pub fn max_abs(reports: &[InterferenceReport]) -> f64 {
    reports.iter().map(|r| r.value.abs()).fold(0.0, f64::max)
}
