//! Concrete finite-dimensional formally real Jordan algebras.
//!
//! An [`Algebra`] is a direct sum of simple factors. An [`Element`] stores one
//! dense [`Block`] per factor and every operation acts factor-wise.

mod descriptor;
mod matrix;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub use descriptor::{AlgebraDescriptor, SimpleFactor};
pub use matrix::HermMatrix;

use crate::division::{Octonion, Quaternion, Scalar};
use crate::error::{Error, Result};

/// Coordinates of one factor of an element.
#[derive(Debug, Clone, PartialEq)]
pub enum Block {
    Real(HermMatrix<f64>),
    Complex(HermMatrix<Complex64>),
    Quaternion(HermMatrix<Quaternion>),
    Octonion(HermMatrix<Octonion>),
    Spin { scalar: f64, vector: Vec<f64> },
}

macro_rules! zip_blocks {
    ($a:expr, $b:expr, $m:ident => $mat:expr, ($s:ident, $u:ident, $t:ident, $v:ident) => $spin:expr) => {
        match ($a, $b) {
            (Block::Real(x), Block::Real(y)) => Block::Real({
                let $m = (x, y);
                $mat
            }),
            (Block::Complex(x), Block::Complex(y)) => Block::Complex({
                let $m = (x, y);
                $mat
            }),
            (Block::Quaternion(x), Block::Quaternion(y)) => Block::Quaternion({
                let $m = (x, y);
                $mat
            }),
            (Block::Octonion(x), Block::Octonion(y)) => Block::Octonion({
                let $m = (x, y);
                $mat
            }),
            (Block::Spin { scalar: $s, vector: $u }, Block::Spin { scalar: $t, vector: $v }) => $spin,
            _ => panic!("block kind mismatch"),
        }
    };
}

impl Block {
    pub fn zero(factor: SimpleFactor) -> Self {
        match factor {
            SimpleFactor::RealSym(k) => Block::Real(HermMatrix::zeros(k)),
            SimpleFactor::ComplexHerm(k) => Block::Complex(HermMatrix::zeros(k)),
            SimpleFactor::QuatHerm(k) => Block::Quaternion(HermMatrix::zeros(k)),
            SimpleFactor::Albert => Block::Octonion(HermMatrix::zeros(3)),
            SimpleFactor::Spin(n) => Block::Spin { scalar: 0.0, vector: vec![0.0; n] },
        }
    }

    pub fn identity(factor: SimpleFactor) -> Self {
        match factor {
            SimpleFactor::RealSym(k) => Block::Real(HermMatrix::identity(k)),
            SimpleFactor::ComplexHerm(k) => Block::Complex(HermMatrix::identity(k)),
            SimpleFactor::QuatHerm(k) => Block::Quaternion(HermMatrix::identity(k)),
            SimpleFactor::Albert => Block::Octonion(HermMatrix::identity(3)),
            SimpleFactor::Spin(n) => Block::Spin { scalar: 1.0, vector: vec![0.0; n] },
        }
    }

    /// Whether this block has the shape of `factor`.
    pub fn fits(&self, factor: SimpleFactor) -> bool {
        match (self, factor) {
            (Block::Real(m), SimpleFactor::RealSym(k)) => m.size() == k,
            (Block::Complex(m), SimpleFactor::ComplexHerm(k)) => m.size() == k,
            (Block::Quaternion(m), SimpleFactor::QuatHerm(k)) => m.size() == k,
            (Block::Octonion(m), SimpleFactor::Albert) => m.size() == 3,
            (Block::Spin { vector, .. }, SimpleFactor::Spin(n)) => vector.len() == n,
            _ => false,
        }
    }

    fn add(&self, other: &Self) -> Self {
        zip_blocks!(self, other, m => m.0.zip(m.1, |a, b| a + b), (s, u, t, v) => Block::Spin {
            scalar: s + t,
            vector: u.iter().zip(v).map(|(a, b)| a + b).collect(),
        })
    }

    fn sub(&self, other: &Self) -> Self {
        zip_blocks!(self, other, m => m.0.zip(m.1, |a, b| a - b), (s, u, t, v) => Block::Spin {
            scalar: s - t,
            vector: u.iter().zip(v).map(|(a, b)| a - b).collect(),
        })
    }

    fn scale(&self, c: f64) -> Self {
        match self {
            Block::Real(m) => Block::Real(m.map(|a| a * c)),
            Block::Complex(m) => Block::Complex(m.map(|a| a * c)),
            Block::Quaternion(m) => Block::Quaternion(m.map(|a| a.scale(c))),
            Block::Octonion(m) => Block::Octonion(m.map(|a| a.scale(c))),
            Block::Spin { scalar, vector } => Block::Spin {
                scalar: scalar * c,
                vector: vector.iter().map(|a| a * c).collect(),
            },
        }
    }

    fn jordan(&self, other: &Self) -> Self {
        zip_blocks!(self, other, m => m.0.jordan(m.1), (s, u, t, v) => Block::Spin {
            scalar: s * t + dot(u, v),
            vector: u.iter().zip(v).map(|(a, b)| s * b + t * a).collect(),
        })
    }

    pub fn trace(&self) -> f64 {
        match self {
            Block::Real(m) => m.trace(),
            Block::Complex(m) => m.trace(),
            Block::Quaternion(m) => m.trace(),
            Block::Octonion(m) => m.trace(),
            Block::Spin { scalar, .. } => 2.0 * scalar,
        }
    }

    fn inner(&self, other: &Self) -> f64 {
        match (self, other) {
            (Block::Real(x), Block::Real(y)) => x.trace_inner(y),
            (Block::Complex(x), Block::Complex(y)) => x.trace_inner(y),
            (Block::Quaternion(x), Block::Quaternion(y)) => x.trace_inner(y),
            (Block::Octonion(x), Block::Octonion(y)) => x.trace_inner(y),
            (Block::Spin { scalar: s, vector: u }, Block::Spin { scalar: t, vector: v }) => {
                2.0 * (s * t + dot(u, v))
            }
            _ => panic!("block kind mismatch"),
        }
    }

    fn write_coords(&self, out: &mut Vec<f64>) {
        match self {
            Block::Real(m) => m.write_coords(out),
            Block::Complex(m) => m.write_coords(out),
            Block::Quaternion(m) => m.write_coords(out),
            Block::Octonion(m) => m.write_coords(out),
            Block::Spin { scalar, vector } => {
                out.push(*scalar);
                out.extend_from_slice(vector);
            }
        }
    }

    fn from_coords(factor: SimpleFactor, c: &[f64]) -> Self {
        match factor {
            SimpleFactor::RealSym(k) => Block::Real(HermMatrix::from_coords(k, c)),
            SimpleFactor::ComplexHerm(k) => Block::Complex(HermMatrix::from_coords(k, c)),
            SimpleFactor::QuatHerm(k) => Block::Quaternion(HermMatrix::from_coords(k, c)),
            SimpleFactor::Albert => Block::Octonion(HermMatrix::from_coords(3, c)),
            SimpleFactor::Spin(_) => Block::Spin { scalar: c[0], vector: c[1..].to_vec() },
        }
    }
}

pub(crate) fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// A concrete Jordan algebra built from an [`AlgebraDescriptor`].
#[derive(Debug, PartialEq)]
pub struct Algebra {
    descriptor: AlgebraDescriptor,
    dimension: usize,
    rank: usize,
    offsets: Vec<usize>,
}

/// Build the algebra described by `descriptor`.
pub fn build_algebra(descriptor: AlgebraDescriptor) -> Result<Arc<Algebra>> {
    Algebra::new(descriptor)
}

impl Algebra {
    pub fn new(descriptor: AlgebraDescriptor) -> Result<Arc<Self>> {
        descriptor.validate()?;
        let mut offsets = Vec::with_capacity(descriptor.factors.len());
        let mut dimension = 0;
        for f in &descriptor.factors {
            offsets.push(dimension);
            dimension += f.dimension();
        }
        let rank = descriptor.rank();
        Ok(Arc::new(Self { descriptor, dimension, rank, offsets }))
    }

    /// Single-factor shorthand.
    pub fn simple(factor: SimpleFactor) -> Result<Arc<Self>> {
        Self::new(AlgebraDescriptor::single(factor)?)
    }

    pub fn descriptor(&self) -> &AlgebraDescriptor {
        &self.descriptor
    }

    pub fn factors(&self) -> &[SimpleFactor] {
        &self.descriptor.factors
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Natural trace of the identity.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn identity(self: &Arc<Self>) -> Element {
        self.with_blocks(self.factors().iter().map(|&f| Block::identity(f)).collect())
    }

    pub fn zero(self: &Arc<Self>) -> Element {
        self.with_blocks(self.factors().iter().map(|&f| Block::zero(f)).collect())
    }

    fn with_blocks(self: &Arc<Self>, blocks: Vec<Block>) -> Element {
        Element { algebra: Arc::clone(self), blocks }
    }

    /// Element with `block` in factor `index` and zero elsewhere.
    pub fn embed(self: &Arc<Self>, index: usize, block: Block) -> Result<Element> {
        let mut x = self.zero();
        let factor = *self
            .factors()
            .get(index)
            .ok_or_else(|| Error::InvalidArgument(format!("no factor {index}")))?;
        if !block.fits(factor) {
            return Err(Error::InvalidArgument(format!("block does not fit factor {factor}")));
        }
        x.blocks[index] = block;
        Ok(x)
    }

    pub fn from_blocks(self: &Arc<Self>, blocks: Vec<Block>) -> Result<Element> {
        if blocks.len() != self.factors().len()
            || !blocks.iter().zip(self.factors()).all(|(b, &f)| b.fits(f))
        {
            return Err(Error::InvalidArgument(format!(
                "blocks do not match the layout of {}",
                self.descriptor
            )));
        }
        Ok(self.with_blocks(blocks))
    }

    /// Diagonal element for algebras made of matrix factors only; each factor
    /// of size `k` consumes `k` consecutive values.
    pub fn diagonal(self: &Arc<Self>, values: &[f64]) -> Result<Element> {
        if values.len() != self.rank {
            return Err(Error::InvalidArgument(format!(
                "expected {} diagonal values, got {}",
                self.rank,
                values.len()
            )));
        }
        let mut pos = 0;
        let mut blocks = Vec::new();
        for &f in self.factors() {
            let k = f.rank();
            let d = &values[pos..pos + k];
            pos += k;
            blocks.push(match f {
                SimpleFactor::RealSym(_) => Block::Real(HermMatrix::from_diagonal(d)),
                SimpleFactor::ComplexHerm(_) => Block::Complex(HermMatrix::from_diagonal(d)),
                SimpleFactor::QuatHerm(_) => Block::Quaternion(HermMatrix::from_diagonal(d)),
                SimpleFactor::Albert => Block::Octonion(HermMatrix::from_diagonal(d)),
                SimpleFactor::Spin(_) => {
                    return Err(Error::InvalidArgument("spin factors have no matrix diagonal".into()))
                }
            });
        }
        Ok(self.with_blocks(blocks))
    }

    /// Element with the given canonical coordinates.
    pub fn from_coords(self: &Arc<Self>, coords: &[f64]) -> Result<Element> {
        if coords.len() != self.dimension {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates, got {}",
                self.dimension,
                coords.len()
            )));
        }
        let blocks = self
            .factors()
            .iter()
            .zip(&self.offsets)
            .map(|(&f, &off)| Block::from_coords(f, &coords[off..off + f.dimension()]))
            .collect();
        Ok(self.with_blocks(blocks))
    }

    /// The canonical basis: one element per coordinate.
    pub fn basis(self: &Arc<Self>) -> Vec<Element> {
        (0..self.dimension)
            .map(|i| {
                let mut c = vec![0.0; self.dimension];
                c[i] = 1.0;
                self.from_coords(&c).expect("basis coordinates have the right length")
            })
            .collect()
    }

    /// Element with independent standard normal coordinates.
    pub fn random_element<R: Rng + ?Sized>(self: &Arc<Self>, rng: &mut R) -> Element {
        let coords: Vec<f64> = (0..self.dimension).map(|_| rng.sample(StandardNormal)).collect();
        self.from_coords(&coords).expect("coordinate count matches dimension")
    }

    /// Gram matrix of the trace form on the canonical basis, row-major.
    pub fn gram_matrix(self: &Arc<Self>) -> Vec<f64> {
        let basis = self.basis();
        let d = self.dimension;
        let mut g = vec![0.0; d * d];
        for i in 0..d {
            for j in 0..d {
                g[i * d + j] = basis[i].inner_unchecked(&basis[j]);
            }
        }
        g
    }
}

/// Element of an [`Algebra`], stored as one block per factor.
#[derive(Clone)]
pub struct Element {
    algebra: Arc<Algebra>,
    blocks: Vec<Block>,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Element")
            .field("algebra", &self.algebra.descriptor.to_string())
            .field("blocks", &self.blocks)
            .finish()
    }
}

impl Element {
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, index: usize) -> &Block {
        &self.blocks[index]
    }

    pub fn coords(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.algebra.dimension);
        for b in &self.blocks {
            b.write_coords(&mut out);
        }
        out
    }

    pub fn same_algebra(&self, other: &Element) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra.descriptor == other.algebra.descriptor
    }

    fn check_same(&self, other: &Element) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch {
                left: self.algebra.descriptor.to_string(),
                right: other.algebra.descriptor.to_string(),
            })
        }
    }

    fn map_blocks(&self, f: impl Fn(&Block) -> Block) -> Element {
        Element { algebra: Arc::clone(&self.algebra), blocks: self.blocks.iter().map(f).collect() }
    }

    fn zip_blocks(&self, other: &Element, f: impl Fn(&Block, &Block) -> Block) -> Element {
        Element {
            algebra: Arc::clone(&self.algebra),
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// Jordan product `x∘y`.
    pub fn jordan(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        Ok(self.jordan_unchecked(other))
    }

    pub(crate) fn jordan_unchecked(&self, other: &Element) -> Element {
        self.zip_blocks(other, Block::jordan)
    }

    /// Jordan triple product `{x, y, z} = x∘(y∘z) − y∘(z∘x) + z∘(x∘y)`.
    pub fn triple(&self, y: &Element, z: &Element) -> Result<Element> {
        self.check_same(y)?;
        self.check_same(z)?;
        Ok(self.triple_unchecked(y, z))
    }

    pub(crate) fn triple_unchecked(&self, y: &Element, z: &Element) -> Element {
        let x = self;
        let a = x.jordan_unchecked(&y.jordan_unchecked(z));
        let b = y.jordan_unchecked(&z.jordan_unchecked(x));
        let c = z.jordan_unchecked(&x.jordan_unchecked(y));
        &(&a - &b) + &c
    }

    /// Quadratic map `U_x(y) = {x, y, x}`.
    pub fn quadratic(&self, y: &Element) -> Result<Element> {
        self.triple(y, self)
    }

    /// Natural trace: atoms have trace 1.
    pub fn trace(&self) -> f64 {
        self.blocks.iter().map(Block::trace).sum()
    }

    /// Trace form `⟨x|y⟩ = trace(x∘y)`.
    pub fn inner(&self, other: &Element) -> Result<f64> {
        self.check_same(other)?;
        Ok(self.inner_unchecked(other))
    }

    pub(crate) fn inner_unchecked(&self, other: &Element) -> f64 {
        self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.inner(b)).sum()
    }

    /// `sqrt(⟨x|x⟩)`.
    pub fn norm(&self) -> f64 {
        self.inner_unchecked(self).max(0.0).sqrt()
    }

    pub fn distance(&self, other: &Element) -> f64 {
        (self - other).norm()
    }

    pub fn square(&self) -> Element {
        self.jordan_unchecked(self)
    }

    /// `x^0 = I`, `x^(l+1) = x∘x^l`.
    pub fn power(&self, l: u32) -> Element {
        let mut acc = self.algebra.identity();
        for _ in 0..l {
            acc = self.jordan_unchecked(&acc);
        }
        acc
    }

    pub fn scale(&self, c: f64) -> Element {
        self.map_blocks(|b| b.scale(c))
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert!(self.same_algebra(rhs), "algebra mismatch in addition");
        self.zip_blocks(rhs, Block::add)
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        assert!(self.same_algebra(rhs), "algebra mismatch in subtraction");
        self.zip_blocks(rhs, Block::sub)
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &Element {
    type Output = Element;
    fn mul(self, c: f64) -> Element {
        self.scale(c)
    }
}

impl Mul<&Element> for f64 {
    type Output = Element;
    fn mul(self, x: &Element) -> Element {
        x.scale(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn all_kinds() -> Vec<Arc<Algebra>> {
        [
            SimpleFactor::RealSym(4),
            SimpleFactor::ComplexHerm(3),
            SimpleFactor::QuatHerm(3),
            SimpleFactor::Albert,
            SimpleFactor::Spin(4),
        ]
        .into_iter()
        .map(|f| Algebra::simple(f).unwrap())
        .collect()
    }

    #[test]
    fn build_examples() {
        let c3 = Algebra::simple(SimpleFactor::ComplexHerm(3)).unwrap();
        assert_eq!((c3.dimension(), c3.rank()), (9, 3));
        let o = Algebra::simple(SimpleFactor::Albert).unwrap();
        assert_eq!((o.dimension(), o.rank()), (27, 3));
        let sum = Algebra::new(
            AlgebraDescriptor::new(vec![SimpleFactor::Spin(3), SimpleFactor::RealSym(2)]).unwrap(),
        )
        .unwrap();
        assert_eq!((sum.dimension(), sum.rank()), (7, 4));
        assert!((sum.identity().trace() - 4.0).abs() < 1e-15);
    }

    #[test]
    fn identity_is_neutral_and_product_commutes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for alg in all_kinds() {
            for _ in 0..50 {
                let x = alg.random_element(&mut rng);
                let y = alg.random_element(&mut rng);
                assert!(x.jordan(&alg.identity()).unwrap().distance(&x) < 1e-14);
                let xy = x.jordan(&y).unwrap();
                let yx = y.jordan(&x).unwrap();
                assert!(xy.distance(&yx) <= 1e-12 * x.norm() * y.norm());
            }
        }
    }

    #[test]
    fn orthogonal_diagonal_units() {
        let c3 = Algebra::simple(SimpleFactor::ComplexHerm(3)).unwrap();
        let a = c3.diagonal(&[1.0, 0.0, 0.0]).unwrap();
        let b = c3.diagonal(&[0.0, 1.0, 0.0]).unwrap();
        assert_eq!(a.jordan(&b).unwrap().norm(), 0.0);
    }

    #[test]
    fn coordinates_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for alg in all_kinds() {
            let x = alg.random_element(&mut rng);
            let y = alg.from_coords(&x.coords()).unwrap();
            assert_eq!(x.blocks(), y.blocks());
        }
    }

    #[test]
    fn triple_product_basics() {
        let c3 = Algebra::simple(SimpleFactor::ComplexHerm(3)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let y = c3.random_element(&mut rng);
        let i = c3.identity();
        assert!(i.triple(&y, &i).unwrap().distance(&y) < 1e-13);

        let p = c3.diagonal(&[1.0, 1.0, 0.0]).unwrap();
        let q = c3.diagonal(&[1.0, 0.0, 0.0]).unwrap();
        assert!(p.quadratic(&q).unwrap().distance(&q) < 1e-15);

        // {x, y, x} = 2x∘(x∘y) − x²∘y
        let x = c3.random_element(&mut rng);
        let lhs = x.triple(&y, &x).unwrap();
        let rhs = &x.jordan(&x.jordan(&y).unwrap()).unwrap().scale(2.0) - &x.square().jordan(&y).unwrap();
        assert!(lhs.distance(&rhs) < 1e-12 * x.norm().powi(2) * y.norm());
    }

    #[test]
    fn triple_product_matches_operator_product() {
        // {p, q, p} = pqp for complex matrices
        let c3 = Algebra::simple(SimpleFactor::ComplexHerm(3)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let x = c3.random_element(&mut rng);
            let y = c3.random_element(&mut rng);
            let (Block::Complex(a), Block::Complex(b)) = (x.block(0), y.block(0)) else { unreachable!() };
            let ab = a.matmul(b);
            let mut aba = HermMatrix::<Complex64>::zeros(3);
            for i in 0..3 {
                for j in i..3 {
                    let v: Complex64 = (0..3).map(|l| ab[i * 3 + l] * a.get(l, j)).sum();
                    aba.set(i, j, v);
                }
            }
            let expected = c3.from_blocks(vec![Block::Complex(aba)]).unwrap();
            assert!(x.triple(&y, &x).unwrap().distance(&expected) < 1e-12 * x.norm().powi(2) * y.norm());
        }
    }

    #[test]
    fn traces() {
        let r4 = Algebra::simple(SimpleFactor::RealSym(4)).unwrap();
        assert_eq!(r4.identity().trace(), 4.0);
        let s = Algebra::simple(SimpleFactor::Spin(3)).unwrap();
        let u = [0.6, 0.0, 0.8];
        let atom = s
            .embed(0, Block::Spin { scalar: 0.5, vector: u.iter().map(|v| v * 0.5).collect() })
            .unwrap();
        assert!((atom.trace() - 1.0).abs() < 1e-15);
        assert!(atom.square().distance(&atom) < 1e-15);
        let c3 = Algebra::simple(SimpleFactor::ComplexHerm(3)).unwrap();
        assert!((c3.identity().inner(&c3.identity()).unwrap() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn inner_is_trace_of_product_and_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for alg in all_kinds() {
            for _ in 0..50 {
                let x = alg.random_element(&mut rng);
                let y = alg.random_element(&mut rng);
                let z = alg.random_element(&mut rng);
                let scale = x.norm() * y.norm() * z.norm();
                let direct = x.inner(&y).unwrap();
                assert!((direct - x.jordan(&y).unwrap().trace()).abs() < 1e-12 * x.norm() * y.norm());
                let lhs = x.jordan(&y).unwrap().inner(&z).unwrap();
                let rhs = y.inner(&x.jordan(&z).unwrap()).unwrap();
                assert!((lhs - rhs).abs() < 1e-12 * scale);
                assert!(x.inner(&x).unwrap() > 0.0);
            }
        }
    }

    #[test]
    fn powers() {
        let r2 = Algebra::simple(SimpleFactor::RealSym(2)).unwrap();
        let x = r2.diagonal(&[2.0, 3.0]).unwrap();
        assert!(x.power(3).distance(&r2.diagonal(&[8.0, 27.0]).unwrap()) < 1e-13);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for alg in all_kinds() {
            let x = alg.random_element(&mut rng).scale(0.5);
            for a in 1..=3u32 {
                for b in 1..=(6 - a) {
                    let lhs = x.power(a).jordan(&x.power(b)).unwrap();
                    let rhs = x.power(a + b);
                    assert!(lhs.distance(&rhs) <= 1e-10 * x.norm().powi((a + b) as i32).max(1.0));
                }
            }
        }
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = Algebra::simple(SimpleFactor::RealSym(3)).unwrap();
        let b = Algebra::simple(SimpleFactor::ComplexHerm(3)).unwrap();
        assert!(matches!(a.identity().jordan(&b.identity()), Err(Error::AlgebraMismatch { .. })));
        assert!(a.identity().inner(&b.identity()).is_err());
    }
}
