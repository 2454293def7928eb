//! The quantum logic of idempotents: order, orthocomplement, orthogonal sums
//! and decomposition into atoms.
//!
//! Only orthogonal sums and differences of comparable propositions are
//! provided; there is no general join or meet.

use std::sync::Arc;

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::jordan::{Algebra, Element};
use crate::sampling::{derive_seed, rng_from_seed};
use crate::spectral::spectral_decomposition;

/// Absolute tolerance (scaled by `max(1, ‖x‖)`) for idempotency, order and
/// orthogonality tests.
pub const LOGIC_TOL: f64 = 1e-8;
/// Maximum distance of a proposition's trace from the nearest integer.
pub const RANK_SNAP: f64 = 0.01;

const MAX_REFINE_DEPTH: usize = 16;

pub fn idempotency_residual(x: &Element) -> f64 {
    x.square().distance(x)
}

pub fn is_idempotent(x: &Element) -> bool {
    idempotency_residual(x) <= LOGIC_TOL * x.norm().max(1.0)
}

/// An idempotent element with its complement `I − p` and integer rank.
///
/// The complement is stored alongside so that `(p′)′` returns the original
/// element bit-for-bit.
#[derive(Debug, Clone)]
pub struct Proposition {
    element: Element,
    complement: Element,
    rank: usize,
}

impl Proposition {
    /// Check idempotency and snap the natural trace to an integer rank.
    pub fn certify(x: Element) -> Result<Self> {
        let residual = idempotency_residual(&x);
        if residual > LOGIC_TOL * x.norm().max(1.0) {
            return Err(Error::NotIdempotent { residual });
        }
        let trace = x.trace();
        let rounded = trace.round();
        if (trace - rounded).abs() > RANK_SNAP || rounded < 0.0 || rounded > x.algebra().rank() as f64 {
            return Err(Error::NonIntegralRank { trace });
        }
        let complement = &x.algebra().identity() - &x;
        Ok(Self { element: x, complement, rank: rounded as usize })
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Self {
        Self { element: algebra.zero(), complement: algebra.identity(), rank: 0 }
    }

    pub fn identity(algebra: &Arc<Algebra>) -> Self {
        Self { element: algebra.identity(), complement: algebra.zero(), rank: algebra.rank() }
    }

    pub fn element(&self) -> &Element {
        &self.element
    }

    pub fn into_element(self) -> Element {
        self.element
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.element.algebra()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0
    }

    pub fn is_identity(&self) -> bool {
        self.rank == self.algebra().rank()
    }

    pub fn is_atom(&self) -> bool {
        self.rank == 1
    }

    /// `‖p∘q − p‖`, zero iff `p ≤ q`.
    pub fn order_residual(&self, q: &Proposition) -> Result<f64> {
        Ok(self.element.jordan(&q.element)?.distance(&self.element))
    }

    /// `p ≤ q`.
    pub fn leq(&self, q: &Proposition) -> bool {
        self.order_residual(q).is_ok_and(|r| r <= LOGIC_TOL * self.element.norm().max(1.0))
    }

    /// `p′ = I − p`.
    pub fn orthocomplement(&self) -> Proposition {
        Proposition {
            element: self.complement.clone(),
            complement: self.element.clone(),
            rank: self.algebra().rank() - self.rank,
        }
    }

    /// `‖p∘q‖`, zero iff `p ⊥ q`.
    pub fn orthogonality_residual(&self, q: &Proposition) -> Result<f64> {
        Ok(self.element.jordan(&q.element)?.norm())
    }

    pub fn is_orthogonal(&self, q: &Proposition) -> bool {
        self.orthogonality_residual(q).is_ok_and(|r| r <= LOGIC_TOL)
    }

    /// `p + q` for orthogonal `p, q`.
    pub fn ortho_sum(&self, q: &Proposition) -> Result<Proposition> {
        let residual = self.orthogonality_residual(q)?;
        if residual > LOGIC_TOL {
            return Err(Error::NotOrthogonal { residual });
        }
        Proposition::certify(&self.element + &q.element)
    }

    /// `p − q` for `q ≤ p`; the orthomodular law makes this `p ∧ q′`.
    pub fn difference(&self, q: &Proposition) -> Result<Proposition> {
        let residual = q.order_residual(self)?;
        if residual > LOGIC_TOL * q.element.norm().max(1.0) {
            return Err(Error::NotBelow { residual });
        }
        Proposition::certify(&self.element - &q.element)
    }
}

/// Split `p` into `rank(p)` pairwise orthogonal atoms summing to `p`.
pub fn decompose_to_atoms(p: &Proposition) -> Result<Vec<Proposition>> {
    decompose_to_atoms_seeded(p, 0)
}

/// [`decompose_to_atoms`] with an explicit seed for the generic element used
/// to split `p`.
pub fn decompose_to_atoms_seeded(p: &Proposition, seed: u64) -> Result<Vec<Proposition>> {
    if p.is_zero() {
        return Err(Error::InvalidArgument("cannot decompose the zero proposition".into()));
    }
    let mut atoms = Vec::with_capacity(p.rank);
    refine(p, seed, 0, &mut atoms)?;
    Ok(atoms)
}

fn refine(p: &Proposition, seed: u64, depth: usize, out: &mut Vec<Proposition>) -> Result<()> {
    if p.rank <= 1 {
        out.push(p.clone());
        return Ok(());
    }
    if depth >= MAX_REFINE_DEPTH {
        return Err(Error::Numerical { context: "atom refinement", residual: p.rank as f64 });
    }
    let alg = p.algebra();
    let mut rng = rng_from_seed(seed);
    let x = alg.random_element(&mut rng);
    // x + cI is positive definite, so U_p(x + cI) has spectrum >= 1 under p
    // and exactly 0 on p′.
    let shifted = &x + &alg.identity().scale(x.norm() + 1.0);
    let y = p.element.triple_unchecked(&shifted, &p.element);
    let sd = spectral_decomposition(&y)?;

    let mut pieces = Vec::new();
    for (value, projection) in sd.into_pairs() {
        if value > 0.5 {
            pieces.push(Proposition::certify(projection)?);
        }
    }
    let total: usize = pieces.iter().map(Proposition::rank).sum();
    if total != p.rank {
        return Err(Error::Numerical { context: "atom refinement", residual: total.abs_diff(p.rank) as f64 });
    }
    for (i, piece) in pieces.iter().enumerate() {
        refine(piece, derive_seed(seed, i as u64 + 1), depth + 1, out)?;
    }
    Ok(())
}

/// `n` pairwise orthogonal atoms summing to `I`.
pub fn random_frame(algebra: &Arc<Algebra>, seed: u64) -> Result<Vec<Proposition>> {
    decompose_to_atoms_seeded(&Proposition::identity(algebra), seed)
}

/// Sum of a random subset of size `rank` drawn from `atoms`.
pub fn sum_of_random_subset(
    algebra: &Arc<Algebra>,
    atoms: &[Proposition],
    rank: usize,
    seed: u64,
) -> Result<Proposition> {
    if rank > atoms.len() {
        return Err(Error::InvalidArgument(format!("rank {rank} exceeds {} atoms", atoms.len())));
    }
    let mut order: Vec<usize> = (0..atoms.len()).collect();
    order.shuffle(&mut rng_from_seed(seed));
    let sum = order[..rank]
        .iter()
        .fold(algebra.zero(), |acc, &i| &acc + &atoms[i].element);
    Proposition::certify(sum)
}

/// Deterministic random proposition of the given rank.
pub fn random_proposition(algebra: &Arc<Algebra>, rank: usize, seed: u64) -> Result<Proposition> {
    let n = algebra.rank();
    if rank > n {
        return Err(Error::InvalidArgument(format!("rank {rank} exceeds algebra rank {n}")));
    }
    if rank == 0 {
        return Ok(Proposition::zero(algebra));
    }
    if rank == n {
        return Ok(Proposition::identity(algebra));
    }
    let frame = random_frame(algebra, seed)?;
    sum_of_random_subset(algebra, &frame, rank, derive_seed(seed, 0x5eb5e7))
}

pub fn random_atom(algebra: &Arc<Algebra>, seed: u64) -> Result<Proposition> {
    random_proposition(algebra, 1, seed)
}

/// Random `q ≤ p` of the given rank, drawn from a random atom frame of `p`.
pub fn random_subproposition(p: &Proposition, rank: usize, seed: u64) -> Result<Proposition> {
    if rank > p.rank {
        return Err(Error::InvalidArgument(format!("rank {rank} exceeds rank {} of p", p.rank)));
    }
    if rank == 0 {
        return Ok(Proposition::zero(p.algebra()));
    }
    if rank == p.rank {
        return Ok(p.clone());
    }
    let atoms = decompose_to_atoms_seeded(p, seed)?;
    sum_of_random_subset(p.algebra(), &atoms, rank, derive_seed(seed, 0x5eb5e7))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{AlgebraDescriptor, Block, HermMatrix};
    use num_complex::Complex64;

    fn alg(spec: &str) -> Arc<Algebra> {
        Algebra::new(spec.parse::<AlgebraDescriptor>().unwrap()).unwrap()
    }

    fn all_specs() -> Vec<Arc<Algebra>> {
        ["R(4)", "C(3)", "H(3)", "O3", "spin(4)", "C(3) + R(4) + H(3)", "spin(3) + R(2)"]
            .iter()
            .map(|s| alg(s))
            .collect()
    }

    #[test]
    fn certify_examples() {
        let r2 = alg("R(2)");
        let i = Proposition::certify(r2.identity()).unwrap();
        assert_eq!(i.rank(), 2);
        assert!(matches!(Proposition::certify(r2.identity().scale(0.5)), Err(Error::NotIdempotent { .. })));

        let c3 = alg("C(3)");
        let v = [Complex64::new(0.3, 0.4), Complex64::new(-0.2, 0.1), Complex64::new(0.5, -0.6)];
        let atom = c3.embed(0, Block::Complex(HermMatrix::projection_onto(&v))).unwrap();
        let p = Proposition::certify(atom).unwrap();
        assert!(p.is_atom());
    }

    #[test]
    fn order_examples() {
        let c3 = alg("C(3)");
        let a = Proposition::certify(c3.diagonal(&[1.0, 0.0, 0.0]).unwrap()).unwrap();
        let b = Proposition::certify(c3.diagonal(&[1.0, 1.0, 0.0]).unwrap()).unwrap();
        assert!(a.leq(&b));
        assert!(!b.leq(&a));
        assert!(a.leq(&a));

        let e = random_atom(&c3, 1).unwrap();
        let f = random_atom(&c3, 2).unwrap();
        assert!(!e.leq(&f) && !f.leq(&e));
    }

    #[test]
    fn complements_and_sums() {
        let c3 = alg("C(3)");
        let i = Proposition::identity(&c3);
        assert!(i.orthocomplement().is_zero());
        assert_eq!(i.orthocomplement().element().norm(), 0.0);
        let a = Proposition::certify(c3.diagonal(&[1.0, 0.0, 0.0]).unwrap()).unwrap();
        let b = Proposition::certify(c3.diagonal(&[0.0, 1.0, 0.0]).unwrap()).unwrap();
        let s = a.ortho_sum(&b).unwrap();
        assert!(s.element().distance(&c3.diagonal(&[1.0, 1.0, 0.0]).unwrap()) == 0.0);
        assert!(matches!(a.ortho_sum(&s), Err(Error::NotOrthogonal { .. })));

        let p = random_proposition(&c3, 2, 9).unwrap();
        let pp = p.orthocomplement().orthocomplement();
        assert_eq!(pp.element().blocks(), p.element().blocks());
    }

    #[test]
    fn orthomodular_difference() {
        for a in all_specs() {
            for seed in 0..5 {
                let n = a.rank();
                let p = random_proposition(&a, (n / 2).max(1), seed).unwrap();
                let q = random_subproposition(&p, 1, seed + 100).unwrap();
                assert!(q.leq(&p));
                let d = p.difference(&q).unwrap();
                assert!(d.is_orthogonal(&q));
                assert!((&q.ortho_sum(&d).unwrap().into_element() - p.element()).norm() < 1e-10);
                let r = random_atom(&a, seed + 7).unwrap();
                if !r.leq(&p) {
                    assert!(matches!(p.difference(&r), Err(Error::NotBelow { .. })));
                }
            }
        }
    }

    #[test]
    fn atoms_of_identity() {
        for a in all_specs() {
            for seed in 0..20 {
                let atoms = random_frame(&a, seed).unwrap();
                assert_eq!(atoms.len(), a.rank());
                let mut sum = a.zero();
                for (i, e) in atoms.iter().enumerate() {
                    assert!((e.element().trace() - 1.0).abs() < 1e-8);
                    for f in &atoms[i + 1..] {
                        assert!(e.element().jordan(f.element()).unwrap().norm() <= 1e-8);
                    }
                    sum = &sum + e.element();
                }
                assert!(sum.distance(&a.identity()) < 1e-8);
            }
        }
    }

    #[test]
    fn spin_identity_splits_into_antipodal_atoms() {
        let s = alg("spin(3)");
        let atoms = decompose_to_atoms(&Proposition::identity(&s)).unwrap();
        assert_eq!(atoms.len(), 2);
        let (Block::Spin { scalar: s0, vector: u }, Block::Spin { scalar: s1, vector: v }) =
            (atoms[0].element().block(0), atoms[1].element().block(0))
        else {
            unreachable!()
        };
        assert!((s0 - 0.5).abs() < 1e-15 && (s1 - 0.5).abs() < 1e-15);
        assert!(u.iter().zip(v).all(|(a, b)| (a + b).abs() < 1e-15));
        assert!((crate::jordan::dot(u, u).sqrt() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn rank_three_in_c4() {
        let c4 = alg("C(4)");
        let p = random_proposition(&c4, 3, 4).unwrap();
        let atoms = decompose_to_atoms(&p).unwrap();
        assert_eq!(atoms.len(), 3);
        for (i, e) in atoms.iter().enumerate() {
            for f in &atoms[i + 1..] {
                assert!(e.element().jordan(f.element()).unwrap().norm() <= 1e-8);
            }
        }
        let sum = atoms.iter().fold(c4.zero(), |acc, e| &acc + e.element());
        assert!(sum.distance(p.element()) < 1e-8);
    }

    #[test]
    fn random_proposition_contract() {
        let h3 = alg("H(3)");
        assert!(random_proposition(&h3, 0, 1).unwrap().is_zero());
        assert!(random_proposition(&h3, 3, 1).unwrap().is_identity());
        let a = random_proposition(&h3, 2, 17).unwrap();
        let b = random_proposition(&h3, 2, 17).unwrap();
        assert_eq!(a.element().blocks(), b.element().blocks());
        assert!(random_proposition(&h3, 4, 1).is_err());
        assert!(decompose_to_atoms(&Proposition::zero(&h3)).is_err());
    }

    #[test]
    fn logic_axioms_on_samples() {
        for a in all_specs() {
            let n = a.rank();
            for seed in 0..10u64 {
                let p = random_proposition(&a, 1 + (seed as usize) % n, seed).unwrap();
                let q = random_subproposition(&p, 1, seed + 50).unwrap();
                // (a) q ≤ p ⇒ p′ ≤ q′
                assert!(p.orthocomplement().leq(&q.orthocomplement()));
                // (d) p + p′ = I
                let s = p.ortho_sum(&p.orthocomplement()).unwrap();
                assert!(s.element().distance(&a.identity()) < 1e-12);
                // Lemma: orthogonal families never exceed the rank
                let frame = random_frame(&a, seed).unwrap();
                assert!(frame.len() <= n && n <= a.dimension());
            }
        }
    }

    #[test]
    fn idempotent_check_is_scale_aware() {
        let r3 = alg("R(3)");
        assert!(is_idempotent(&r3.identity()));
        assert!(!is_idempotent(&r3.identity().scale(2.0)));
        assert!(!is_idempotent(&r3.diagonal(&[1.0, 0.5, 0.0]).unwrap()));
    }
}
