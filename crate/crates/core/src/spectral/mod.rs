//! Spectral decomposition `x = Σ λ_k p_k` into real eigenvalues and
//! pairwise orthogonal idempotents summing to the identity.
//!
//! Matrix factors over ℝ and ℂ use a Hermitian eigensolver; quaternionic
//! factors go through the complex `2k × 2k` representation
//! `a + bj ↦ [[a, b], [−b̄, ā]]`; spin factors use the closed form; the
//! Albert factor uses its characteristic cubic (see [`albert`]).

pub mod albert;

use nalgebra::{ComplexField, DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::division::{Quaternion, Scalar};
use crate::error::{Error, Result};
use crate::jordan::{Block, Element, HermMatrix};

/// Relative gap below which eigenvalues are treated as one cluster.
pub const DEFAULT_MERGE_REL: f64 = 1e-6;
/// Relative reconstruction residual above which a decomposition is rejected.
pub const RECONSTRUCTION_REL: f64 = 1e-5;

#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pairs: Vec<(f64, Element)>,
}

impl SpectralDecomposition {
    /// `(λ_k, p_k)` with distinct λ, descending.
    pub fn pairs(&self) -> &[(f64, Element)] {
        &self.pairs
    }

    pub fn into_pairs(self) -> Vec<(f64, Element)> {
        self.pairs
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.pairs.iter().map(|(l, _)| *l).collect()
    }

    pub fn reconstruct(&self) -> Element {
        let alg = self.pairs[0].1.algebra();
        self.pairs.iter().fold(alg.zero(), |acc, (l, p)| &acc + &p.scale(*l))
    }
}

pub fn spectral_decomposition(x: &Element) -> Result<SpectralDecomposition> {
    spectral_decomposition_with(x, DEFAULT_MERGE_REL)
}

pub fn spectral_decomposition_with(x: &Element, merge_rel: f64) -> Result<SpectralDecomposition> {
    let norm = x.norm();
    let tol = merge_rel * norm;
    let alg = x.algebra();

    let mut items: Vec<(f64, f64, usize, Block)> = Vec::new();
    for (index, block) in x.blocks().iter().enumerate() {
        for (value, rank, projection) in block_clusters(block, tol) {
            items.push((value, rank as f64, index, projection));
        }
    }
    items.sort_by(|a, b| b.0.total_cmp(&a.0));

    let mut pairs: Vec<(f64, Element)> = Vec::new();
    let mut weights: Vec<(f64, f64)> = Vec::new();
    let mut last: Option<f64> = None;
    for (value, rank, index, projection) in items {
        let piece = alg.embed(index, projection)?;
        match last {
            Some(prev) if prev - value <= tol => {
                let (sum, w) = weights.last_mut().expect("cluster exists");
                *sum += value * rank;
                *w += rank;
                let current = pairs.last_mut().expect("cluster exists");
                current.0 = *sum / *w;
                current.1 = &current.1 + &piece;
            }
            _ => {
                weights.push((value * rank, rank));
                pairs.push((value, piece));
            }
        }
        last = Some(value);
    }

    let sd = SpectralDecomposition { pairs };
    let residual = sd.reconstruct().distance(x);
    if residual > RECONSTRUCTION_REL * norm {
        return Err(Error::Numerical { context: "spectral decomposition", residual });
    }
    Ok(sd)
}

/// All eigenvalues with multiplicity (counted by natural trace), descending.
pub fn eigenvalues(x: &Element) -> Vec<f64> {
    let mut out = Vec::new();
    for block in x.blocks() {
        match block {
            Block::Real(m) => out.extend(real_eigen(m).eigenvalues.iter()),
            Block::Complex(m) => out.extend(complex_eigen(&to_complex(m)).eigenvalues.iter()),
            Block::Quaternion(m) => {
                let mut v: Vec<f64> = complex_eigen(&quaternion_embedding(m)).eigenvalues.iter().copied().collect();
                v.sort_by(|a, b| b.total_cmp(a));
                out.extend(v.chunks(2).map(|c| 0.5 * (c[0] + c[1])));
            }
            Block::Octonion(m) => out.extend(albert::eigenvalues(m)),
            Block::Spin { scalar, vector } => {
                let r = crate::jordan::dot(vector, vector).sqrt();
                out.extend([scalar + r, scalar - r]);
            }
        }
    }
    out.sort_by(|a, b| b.total_cmp(a));
    out
}

pub fn min_eigenvalue(x: &Element) -> f64 {
    eigenvalues(x).last().copied().unwrap_or(0.0)
}

/// Positivity with tolerance `1e-9 · max(1, ‖x‖)`.
pub fn is_positive(x: &Element) -> bool {
    is_positive_with(x, 1e-9 * x.norm().max(1.0))
}

pub fn is_positive_with(x: &Element, tol: f64) -> bool {
    min_eigenvalue(x) >= -tol
}

fn real_eigen(m: &HermMatrix<f64>) -> SymmetricEigen<f64, nalgebra::Dyn> {
    let k = m.size();
    SymmetricEigen::new(DMatrix::from_fn(k, k, |i, j| m.get(i, j)))
}

fn to_complex(m: &HermMatrix<Complex64>) -> DMatrix<Complex64> {
    let k = m.size();
    DMatrix::from_fn(k, k, |i, j| m.get(i, j))
}

fn complex_eigen(m: &DMatrix<Complex64>) -> SymmetricEigen<Complex64, nalgebra::Dyn> {
    SymmetricEigen::new(m.clone())
}

fn quaternion_embedding(m: &HermMatrix<Quaternion>) -> DMatrix<Complex64> {
    let k = m.size();
    let mut out = DMatrix::zeros(2 * k, 2 * k);
    for i in 0..k {
        for j in 0..k {
            let (a, b) = m.get(i, j).to_complex_pair();
            out[(2 * i, 2 * j)] = a;
            out[(2 * i, 2 * j + 1)] = b;
            out[(2 * i + 1, 2 * j)] = -b.conj();
            out[(2 * i + 1, 2 * j + 1)] = a.conj();
        }
    }
    out
}

/// Clusters of an eigendecomposition: (mean eigenvalue, multiplicity, projector).
fn eigen_clusters<T>(eig: SymmetricEigen<T, nalgebra::Dyn>, tol: f64) -> Vec<(f64, usize, DMatrix<T>)>
where
    T: ComplexField<RealField = f64>,
{
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let mut out: Vec<(f64, usize, DMatrix<T>)> = Vec::new();
    let mut last: Option<f64> = None;
    for idx in order {
        let value = eig.eigenvalues[idx];
        let v = eig.eigenvectors.column(idx);
        let outer = &v * v.adjoint();
        match (last, out.last_mut()) {
            (Some(prev), Some(cluster)) if prev - value <= tol => {
                cluster.0 = (cluster.0 * cluster.1 as f64 + value) / (cluster.1 + 1) as f64;
                cluster.1 += 1;
                cluster.2 += outer;
            }
            _ => out.push((value, 1, outer)),
        }
        last = Some(value);
    }
    out
}

fn block_clusters(block: &Block, tol: f64) -> Vec<(f64, usize, Block)> {
    match block {
        Block::Real(m) => eigen_clusters(real_eigen(m), tol)
            .into_iter()
            .map(|(v, r, p)| (v, r, Block::Real(hermitian_from(&p, |z| z))))
            .collect(),
        Block::Complex(m) => eigen_clusters(complex_eigen(&to_complex(m)), tol)
            .into_iter()
            .map(|(v, r, p)| (v, r, Block::Complex(hermitian_from(&p, |z| z))))
            .collect(),
        Block::Quaternion(m) => {
            // Eigenvalues come in pairs, so clusters have even multiplicity.
            eigen_clusters(complex_eigen(&quaternion_embedding(m)), tol)
                .into_iter()
                .map(|(v, r, p)| (v, r / 2, Block::Quaternion(quaternion_pullback(&p))))
                .collect()
        }
        Block::Octonion(m) => albert::clusters(m, tol)
            .into_iter()
            .map(|(v, r, p)| (v, r, Block::Octonion(p)))
            .collect(),
        Block::Spin { scalar, vector } => {
            let n = vector.len();
            let r = crate::jordan::dot(vector, vector).sqrt();
            if 2.0 * r <= tol {
                vec![(*scalar, 2, Block::Spin { scalar: 1.0, vector: vec![0.0; n] })]
            } else {
                let half: Vec<f64> = vector.iter().map(|c| 0.5 * c / r).collect();
                vec![
                    (scalar + r, 1, Block::Spin { scalar: 0.5, vector: half.clone() }),
                    (scalar - r, 1, Block::Spin { scalar: 0.5, vector: half.iter().map(|c| -c).collect() }),
                ]
            }
        }
    }
}

fn hermitian_from<T: Copy, S: Scalar>(p: &DMatrix<T>, f: impl Fn(T) -> S) -> HermMatrix<S> {
    let k = p.nrows();
    let mut m = HermMatrix::zeros(k);
    for i in 0..k {
        for j in i..k {
            m.set(i, j, f(p[(i, j)]));
        }
    }
    m
}

fn quaternion_pullback(p: &DMatrix<Complex64>) -> HermMatrix<Quaternion> {
    let k = p.nrows() / 2;
    let mut m = HermMatrix::zeros(k);
    for i in 0..k {
        for j in i..k {
            let a = 0.5 * (p[(2 * i, 2 * j)] + p[(2 * i + 1, 2 * j + 1)].conj());
            let b = 0.5 * (p[(2 * i, 2 * j + 1)] - p[(2 * i + 1, 2 * j)].conj());
            m.set(i, j, Quaternion::from_complex_pair(a, b));
        }
    }
    m
}
