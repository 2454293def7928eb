//! States as positive trace-one density elements, conditioning, transition
//! probabilities and the trace state.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::jordan::{Algebra, Element};
use crate::logic::{decompose_to_atoms_seeded, random_proposition, Proposition, LOGIC_TOL};
use crate::sampling::{derive_seed, rng_from_seed};
use crate::spectral::{is_positive_with, spectral_decomposition};

/// Conditioning on a proposition with probability at most this is refused.
pub const CONDITIONING_EPS: f64 = 1e-9;
/// Tolerance on the trace and on negative eigenvalues of a density.
pub const STATE_TOL: f64 = 1e-9;

/// Weights at or below this are dropped from atomic decompositions.
const WEIGHT_FLOOR: f64 = 1e-13;

#[derive(Debug, Clone)]
pub struct State {
    density: Element,
}

impl State {
    pub fn new(density: Element) -> Result<Self> {
        let trace = density.trace();
        if (trace - 1.0).abs() > STATE_TOL * density.algebra().rank() as f64 {
            return Err(Error::InvalidState(format!("density has trace {trace}")));
        }
        if !is_positive_with(&density, STATE_TOL) {
            return Err(Error::InvalidState("density is not positive".into()));
        }
        Ok(Self { density })
    }

    /// The state with density `e` for an atom `e`.
    pub fn pure(e: &Proposition) -> Result<Self> {
        if !e.is_atom() {
            return Err(Error::NotAtom { rank: e.rank() });
        }
        Ok(Self { density: e.element().clone() })
    }

    pub fn density(&self) -> &Element {
        &self.density
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.density.algebra()
    }

    /// `μ(x) = ⟨a, x⟩` for an arbitrary element.
    pub fn expectation(&self, x: &Element) -> Result<f64> {
        self.density.inner(x)
    }

    /// `μ(p) = ⟨a, p⟩`.
    pub fn evaluate(&self, p: &Proposition) -> Result<f64> {
        self.expectation(p.element())
    }

    /// `μ(q|p) = ⟨a, U_p q⟩ / ⟨a, p⟩`.
    pub fn conditional_probability(&self, q: &Proposition, p: &Proposition) -> Result<f64> {
        let mp = self.nonnull(p)?;
        Ok(self.expectation(&u_map(p, q.element())?)? / mp)
    }

    /// The conditioned state with density `U_p(a) / ⟨a, p⟩`.
    pub fn condition(&self, p: &Proposition) -> Result<State> {
        let mp = self.nonnull(p)?;
        Ok(State { density: u_map(p, &self.density)?.scale(1.0 / mp) })
    }

    fn nonnull(&self, p: &Proposition) -> Result<f64> {
        let mp = self.evaluate(p)?;
        if mp <= CONDITIONING_EPS {
            return Err(Error::ConditioningOnNull { probability: mp });
        }
        Ok(mp)
    }
}

/// `U_p(x) = {p, x, p}`.
pub fn u_map(p: &Proposition, x: &Element) -> Result<Element> {
    p.element().triple(x, p.element())
}

/// `p □ q = (q + U_p q − U_{p′} q) / 2`, which equals `p∘q` in a Jordan
/// algebra.
pub fn box_product(p: &Proposition, q: &Proposition) -> Result<Element> {
    let up = u_map(p, q.element())?;
    let upc = u_map(&p.orthocomplement(), q.element())?;
    Ok((&(q.element() + &up) - &upc).scale(0.5))
}

/// `P(q|e) = ⟨e, q⟩` for an atom `e`.
pub fn transition_probability(e: &Proposition, q: &Proposition) -> Result<f64> {
    if !e.is_atom() {
        return Err(Error::NotAtom { rank: e.rank() });
    }
    e.element().inner(q.element())
}

/// The state `I/n`.
pub fn trace_state(algebra: &Arc<Algebra>) -> State {
    State { density: algebra.identity().scale(1.0 / algebra.rank() as f64) }
}

/// Positive trace-one `x²/tr(x²)` for a seeded random `x`.
pub fn random_state(algebra: &Arc<Algebra>, seed: u64) -> State {
    let x = algebra.random_element(&mut rng_from_seed(seed));
    let sq = x.square();
    State { density: sq.scale(1.0 / sq.trace()) }
}

/// Maximum of `|μ(q|e) − P(q|e)|` over random states with `μ(e) > 0.01`
/// and random propositions `q`.
pub fn state_independence_check(e: &Proposition, samples: usize, seed: u64) -> Result<f64> {
    let alg = e.algebra();
    let n = alg.rank();
    let mut worst = 0.0f64;
    let mut drawn = 0u64;
    let mut taken = 0usize;
    while taken < samples {
        let s = derive_seed(seed, drawn);
        drawn += 1;
        if drawn > 100 * samples as u64 + 100 {
            return Err(Error::Numerical { context: "state independence sampling", residual: taken as f64 });
        }
        let mu = random_state(alg, s);
        if mu.evaluate(e)? <= 0.01 {
            continue;
        }
        let rank = rng_from_seed(derive_seed(s, 1)).random_range(1..=n);
        let q = random_proposition(alg, rank, derive_seed(s, 2))?;
        worst = worst.max((mu.conditional_probability(&q, e)? - transition_probability(e, &q)?).abs());
        taken += 1;
    }
    Ok(worst)
}

/// Residuals of the trace-state conditioning identities for `0 ≠ p ≠ I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceConditionalResiduals {
    /// `|τ(q|p)τ(p) + τ(q|p′)τ(p′) − τ(q)|`
    pub identity: f64,
    /// `|τ(q|p) − (1/m) Σ_{k ≤ m} P(q|e_k)|` over atoms `e_k` of `p`
    pub atom_average: f64,
    /// `|τ(q|p′) − (1/(n−m)) Σ_{k > m} P(q|e_k)|` over atoms of `p′`
    pub complement_average: f64,
}

impl TraceConditionalResiduals {
    pub fn max(&self) -> f64 {
        self.identity.max(self.atom_average).max(self.complement_average)
    }
}

pub fn trace_conditional_identity(p: &Proposition, q: &Proposition, seed: u64) -> Result<TraceConditionalResiduals> {
    if p.is_zero() || p.is_identity() {
        return Err(Error::InvalidArgument("p must be neither 0 nor I".into()));
    }
    let alg = p.algebra();
    let tau = trace_state(alg);
    let pc = p.orthocomplement();
    let lhs = tau.conditional_probability(q, p)? * tau.evaluate(p)?
        + tau.conditional_probability(q, &pc)? * tau.evaluate(&pc)?;
    let identity = (lhs - tau.evaluate(q)?).abs();

    let average = |r: &Proposition, s: u64| -> Result<f64> {
        let atoms = decompose_to_atoms_seeded(r, s)?;
        let mut sum = 0.0;
        for e in &atoms {
            sum += transition_probability(e, q)?;
        }
        Ok(sum / atoms.len() as f64)
    };
    let atom_average = (tau.conditional_probability(q, p)? - average(p, derive_seed(seed, 0))?).abs();
    let complement_average = (tau.conditional_probability(q, &pc)? - average(&pc, derive_seed(seed, 1))?).abs();
    Ok(TraceConditionalResiduals { identity, atom_average, complement_average })
}

/// Weighted orthogonal atoms `(r_k, e_k)` representing `μ = Σ r_k P(·|e_k)`.
#[derive(Debug, Clone)]
pub struct AtomicDecomposition {
    pairs: Vec<(f64, Proposition)>,
}

impl AtomicDecomposition {
    pub fn pairs(&self) -> &[(f64, Proposition)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `Σ r_k P(p|e_k)`.
    pub fn evaluate(&self, p: &Proposition) -> Result<f64> {
        let mut sum = 0.0;
        for (r, e) in &self.pairs {
            sum += r * transition_probability(e, p)?;
        }
        Ok(sum)
    }
}

/// Spectral decomposition of the density refined to atoms. Weights are the
/// values `μ(e_k)`, which coincide with the eigenvalues.
pub fn decompose_state(mu: &State) -> Result<AtomicDecomposition> {
    decompose_state_seeded(mu, 0)
}

pub fn decompose_state_seeded(mu: &State, seed: u64) -> Result<AtomicDecomposition> {
    let sd = spectral_decomposition(&mu.density)?;
    let mut pairs = Vec::new();
    for (i, (value, projection)) in sd.into_pairs().into_iter().enumerate() {
        if value <= WEIGHT_FLOOR {
            continue;
        }
        let p = Proposition::certify(projection)?;
        for e in decompose_to_atoms_seeded(&p, derive_seed(seed, i as u64))? {
            let r = mu.evaluate(&e)?;
            if r > WEIGHT_FLOOR {
                pairs.push((r, e));
            }
        }
    }
    Ok(AtomicDecomposition { pairs })
}

/// The state `Σ r_k e_k` for pairwise orthogonal atoms.
pub fn state_from_atoms(pairs: &[(f64, Proposition)]) -> Result<State> {
    let Some((_, first)) = pairs.first() else {
        return Err(Error::InvalidArgument("no atoms given".into()));
    };
    let alg = first.algebra().clone();
    for (i, (_, e)) in pairs.iter().enumerate() {
        if !e.is_atom() {
            return Err(Error::NotAtom { rank: e.rank() });
        }
        for (_, f) in &pairs[i + 1..] {
            let residual = e.orthogonality_residual(f)?;
            if residual > LOGIC_TOL {
                return Err(Error::NotOrthogonal { residual });
            }
        }
    }
    let density = pairs.iter().fold(alg.zero(), |acc, (r, e)| &acc + &e.element().scale(*r));
    State::new(density)
}

/// A state separating `p ≠ q`: density proportional to `I ± ½(p − q)/‖p − q‖`
/// with the sign giving the larger gap. Returns the state and `|μ(p) − μ(q)|`.
pub fn separation_witness(p: &Proposition, q: &Proposition) -> Result<(State, f64)> {
    let d = p.element() - q.element();
    let norm = d.norm();
    if norm <= LOGIC_TOL {
        return Err(Error::InvalidArgument("propositions coincide".into()));
    }
    let alg = p.algebra();
    let sign = if d.trace() >= 0.0 { 1.0 } else { -1.0 };
    let raw = &alg.identity() + &d.scale(sign * 0.5 / norm);
    let mu = State::new(raw.scale(1.0 / raw.trace()))?;
    let gap = (mu.evaluate(p)? - mu.evaluate(q)?).abs();
    Ok((mu, gap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{AlgebraDescriptor, Block, HermMatrix};
    use crate::logic::{random_atom, random_subproposition};
    use nalgebra::{DMatrix, DVector};
    use num_complex::Complex64;

    fn alg(spec: &str) -> Arc<Algebra> {
        Algebra::new(spec.parse::<AlgebraDescriptor>().unwrap()).unwrap()
    }

    fn c3_atom(v: [Complex64; 3]) -> Proposition {
        let a = alg("C(3)");
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let u = v.map(|z| z / norm);
        Proposition::certify(a.embed(0, Block::Complex(HermMatrix::projection_onto(&u))).unwrap()).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let c3 = alg("C(3)");
        let mu = random_state(&c3, 3);
        assert!((mu.evaluate(&Proposition::identity(&c3)).unwrap() - 1.0).abs() < 1e-12);
        let e = random_atom(&c3, 4).unwrap();
        assert!((State::pure(&e).unwrap().evaluate(&e).unwrap() - 1.0).abs() < 1e-10);
        let tau = trace_state(&c3);
        let p = random_proposition(&c3, 2, 5).unwrap();
        assert!((tau.evaluate(&p).unwrap() - 2.0 / 3.0).abs() < 1e-12);
        assert!((tau.evaluate(&e).unwrap() - 1.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn state_validation() {
        let r2 = alg("R(2)");
        assert!(State::new(r2.identity()).is_err());
        assert!(State::new(r2.diagonal(&[1.5, -0.5]).unwrap()).is_err());
        assert!(State::new(r2.diagonal(&[0.25, 0.75]).unwrap()).is_ok());
        let p = Proposition::identity(&r2);
        assert!(matches!(State::pure(&p), Err(Error::NotAtom { rank: 2 })));
    }

    #[test]
    fn conditioning_examples() {
        let c3 = alg("C(3)");
        for seed in 0..20 {
            let mu = random_state(&c3, seed);
            let p = random_proposition(&c3, 2, seed + 1).unwrap();
            let q = random_subproposition(&p, 1, seed + 2).unwrap();
            let lhs = mu.conditional_probability(&q, &p).unwrap();
            let rhs = mu.evaluate(&q).unwrap() / mu.evaluate(&p).unwrap();
            assert!((lhs - rhs).abs() < 1e-9);
            assert!(mu.conditional_probability(&p.orthocomplement(), &p).unwrap().abs() < 1e-12);
            let cond = mu.condition(&p).unwrap();
            assert!((cond.evaluate(&q).unwrap() - lhs).abs() < 1e-12);
            let twice = cond.condition(&p).unwrap();
            assert!(twice.density().distance(cond.density()) < 1e-12);
        }
        let mu = random_state(&c3, 1);
        assert!(mu.condition(&Proposition::identity(&c3)).unwrap().density().distance(mu.density()) < 1e-12);
        let e = random_atom(&c3, 8).unwrap();
        let pure = State::pure(&e).unwrap();
        assert!(matches!(
            pure.conditional_probability(&e, &e.orthocomplement()),
            Err(Error::ConditioningOnNull { .. })
        ));
        assert!(mu.condition(&e).unwrap().density().distance(e.element()) < 1e-10);
    }

    #[test]
    fn remark_block_example() {
        // Oracle: trace(p a p q)/trace(p a p) with plain complex matrices.
        let c3 = alg("C(3)");
        let p = Proposition::certify(c3.diagonal(&[1.0, 1.0, 0.0]).unwrap()).unwrap();
        let one = Complex64::new(1.0, 0.0);
        let q = c3_atom([one, one, Complex64::new(0.0, 0.0)]);
        let tau = trace_state(&c3);
        let pm = DMatrix::<Complex64>::from_diagonal(&DVector::from_vec(vec![one, one, 0.0 * one]));
        let am = DMatrix::<Complex64>::identity(3, 3) / Complex64::new(3.0, 0.0);
        let v = DVector::from_vec(vec![one, one, 0.0 * one]) / Complex64::new(2f64.sqrt(), 0.0);
        let qm = &v * v.adjoint();
        let pap = &pm * &am * &pm;
        let oracle = (&pap * &qm).trace().re / pap.trace().re;
        let got = tau.conditional_probability(&q, &p).unwrap();
        assert!((got - oracle).abs() < 1e-12);
        assert!((got - 0.5).abs() < 1e-12);
    }

    #[test]
    fn transition_examples() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let e = c3_atom([one, zero, zero]);
        let f = c3_atom([one, one, zero]);
        assert!((transition_probability(&e, &e).unwrap() - 1.0).abs() < 1e-12);
        assert!((transition_probability(&e, &f).unwrap() - 0.5).abs() < 1e-12);
        let c3 = e.algebra().clone();
        let pf = transition_probability(&e, &f).unwrap();
        let residual = u_map(&e, f.element()).unwrap().distance(&e.element().scale(pf));
        assert!(residual < 1e-10);
        assert!(matches!(
            transition_probability(&Proposition::identity(&c3), &e),
            Err(Error::NotAtom { rank: 3 })
        ));
    }

    #[test]
    fn state_independence_on_matrix_factors() {
        for spec in ["R(3)", "C(3)", "H(3)", "O3", "C(2) + R(2)"] {
            let a = alg(spec);
            let e = random_atom(&a, 11).unwrap();
            assert!(state_independence_check(&e, 50, 1).unwrap() <= 1e-8, "{spec}");
        }
        let c3 = alg("C(3)");
        let e = random_atom(&c3, 2).unwrap();
        for seed in 0..10 {
            let mu = random_state(&c3, seed);
            assert!((mu.conditional_probability(&Proposition::identity(&c3), &e).unwrap() - 1.0).abs() < 1e-10);
            assert!(mu.conditional_probability(&e.orthocomplement(), &e).unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn trace_state_identities() {
        let c3 = alg("C(3)");
        let tau = trace_state(&c3);
        assert!((tau.evaluate(&Proposition::identity(&c3)).unwrap() - 1.0).abs() < 1e-15);
        // commuting pair: exact
        let p = Proposition::certify(c3.diagonal(&[1.0, 0.0, 0.0]).unwrap()).unwrap();
        let q = Proposition::certify(c3.diagonal(&[1.0, 1.0, 0.0]).unwrap()).unwrap();
        assert_eq!(trace_conditional_identity(&p, &q, 0).unwrap().identity, 0.0);
        let r4 = alg("R(4)");
        for seed in 0..20 {
            let p = random_proposition(&r4, 2, seed).unwrap();
            let q = random_proposition(&r4, 1 + seed as usize % 3, seed + 99).unwrap();
            let res = trace_conditional_identity(&p, &q, seed).unwrap();
            assert!(res.identity <= 1e-9);
            assert!(res.atom_average <= 1e-8 && res.complement_average <= 1e-8, "{res:?}");
        }
        assert!(trace_conditional_identity(&Proposition::identity(&r4), &p_any(&r4), 0).is_err());
    }

    fn p_any(a: &Arc<Algebra>) -> Proposition {
        random_atom(a, 0).unwrap()
    }

    #[test]
    fn u_map_and_box_product() {
        for spec in ["C(3)", "O3", "spin(3)", "H(2) + R(3)"] {
            let a = alg(spec);
            let x = a.random_element(&mut rng_from_seed(1));
            assert!(u_map(&Proposition::identity(&a), &x).unwrap().distance(&x) < 1e-12);
            for seed in 0..10 {
                let n = a.rank();
                let p = random_proposition(&a, 1 + seed as usize % n, seed).unwrap();
                let q = random_proposition(&a, 1 + (seed as usize + 1) % n, seed + 40).unwrap();
                let b = box_product(&p, &q).unwrap();
                assert!(b.distance(&p.element().jordan(q.element()).unwrap()) <= 1e-10, "{spec}");
                assert!(box_product(&p, &p.orthocomplement()).unwrap().norm() <= 1e-10);
                let ux = u_map(&p, &x).unwrap();
                assert!(u_map(&p, &ux).unwrap().distance(&ux) <= 1e-10);
                let pos = x.square();
                { let m = crate::spectral::min_eigenvalue(&u_map(&p, &pos).unwrap()); assert!(m >= -1e-10, "{spec} {seed} {m}"); }
            }
        }
    }

    #[test]
    fn atomic_round_trip() {
        let c3 = alg("C(3)");
        let tau = decompose_state(&trace_state(&c3)).unwrap();
        assert_eq!(tau.len(), 3);
        assert!(tau.pairs().iter().all(|(r, _)| (r - 1.0 / 3.0).abs() < 1e-12));

        let e = random_atom(&c3, 3).unwrap();
        let pure = decompose_state(&State::pure(&e).unwrap()).unwrap();
        assert_eq!(pure.len(), 1);
        assert!((pure.pairs()[0].0 - 1.0).abs() < 1e-10);

        let h3 = alg("H(3)");
        for seed in 0..10 {
            let mu = random_state(&h3, seed);
            let d = decompose_state(&mu).unwrap();
            assert!(d.len() <= 3);
            let nu = state_from_atoms(d.pairs()).unwrap();
            for k in 0..20 {
                let p = random_proposition(&h3, 1 + k % 3, 1000 + k as u64).unwrap();
                let m = mu.evaluate(&p).unwrap();
                assert!((m - nu.evaluate(&p).unwrap()).abs() <= 1e-8);
                assert!((m - d.evaluate(&p).unwrap()).abs() <= 1e-8);
            }
        }
        let e = random_atom(&h3, 1).unwrap();
        let f = random_atom(&h3, 2).unwrap();
        assert!(matches!(state_from_atoms(&[(0.5, e), (0.5, f)]), Err(Error::NotOrthogonal { .. })));
    }

    #[test]
    fn random_state_contract() {
        let a = alg("O3");
        let mu = random_state(&a, 5);
        assert!((mu.density().trace() - 1.0).abs() < 1e-12);
        assert!(crate::spectral::min_eigenvalue(mu.density()) >= -1e-12);
        assert!(random_state(&a, 6).density().distance(mu.density()) > 1e-3);
        assert!(State::new(mu.density().clone()).is_ok());
    }

    #[test]
    fn separation_witnesses() {
        for spec in ["C(3)", "spin(4)", "R(2) + H(2)"] {
            let a = alg(spec);
            for seed in 0..10 {
                let p = random_proposition(&a, 1, seed).unwrap();
                let q = random_proposition(&a, 1 + seed as usize % a.rank(), seed + 7).unwrap();
                let (_, gap) = separation_witness(&p, &q).unwrap();
                assert!(gap > 1e-3);
            }
        }
    }
}
