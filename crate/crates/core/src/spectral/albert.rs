//! Cubic spectral theory of the Albert algebra.
//!
//! Every element `X` of the 3 × 3 octonionic Hermitian matrices satisfies its
//! generic minimal polynomial
//!
//! ```text
//! λ³ − tr(X) λ² + σ(X) λ − det(X)
//! ```
//!
//! where `σ(X) = (tr(X)² − tr(X²))/2` and `det` is the Freudenthal cubic norm.
//! Writing `X = [[α₁, c₃, c̄₂], [c̄₃, α₂, c₁], [c₂, c̄₁, α₃]]`,
//!
//! ```text
//! det(X) = α₁α₂α₃ − α₁|c₁|² − α₂|c₂|² − α₃|c₃|² + 2 Re((c₃ c₁) c₂)
//! ```
//!
//! The real part of a triple product of octonions does not depend on the
//! bracketing, so the last term is well defined. With `X[0][1] = c₃`,
//! `X[1][2] = c₁`, `X[2][0] = c₂` the trace term is `Re((X₀₁ X₁₂) X₂₀)`.

use std::f64::consts::PI;

use crate::division::{Octonion, Scalar};
use crate::jordan::HermMatrix;

pub fn albert_trace(x: &HermMatrix<Octonion>) -> f64 {
    x.trace()
}

/// Quadratic trace form `σ(x) = (tr(x)² − tr(x²))/2`.
pub fn albert_sigma(x: &HermMatrix<Octonion>) -> f64 {
    let t = x.trace();
    0.5 * (t * t - x.trace_inner(x))
}

/// Freudenthal cubic norm.
pub fn freudenthal_det(x: &HermMatrix<Octonion>) -> f64 {
    let a1 = x.get(0, 0).re();
    let a2 = x.get(1, 1).re();
    let a3 = x.get(2, 2).re();
    let c1 = x.get(1, 2);
    let c2 = x.get(2, 0);
    let c3 = x.get(0, 1);
    a1 * a2 * a3 - a1 * c1.norm_sqr() - a2 * c2.norm_sqr() - a3 * c3.norm_sqr()
        + 2.0 * ((c3 * c1) * c2).re()
}

/// Roots of `λ³ − aλ² + bλ − c`, assumed real, in descending order.
pub fn real_cubic_roots(a: f64, b: f64, c: f64) -> [f64; 3] {
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = -2.0 * a * a * a / 27.0 + a * b / 3.0 - c;
    let scale = a.abs().max(b.abs().sqrt()).max(c.abs().cbrt()).max(f64::MIN_POSITIVE);

    let mut roots = if -p <= 1e-15 * scale * scale {
        // triple root; a tiny positive p only arises from rounding
        [shift; 3]
    } else {
        let r = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (2.0 * p) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        [
            shift + r * phi.cos(),
            shift + r * (phi - 2.0 * PI / 3.0).cos(),
            shift + r * (phi + 2.0 * PI / 3.0).cos(),
        ]
    };

    // Newton polish, skipped near multiple roots where f' vanishes.
    for root in roots.iter_mut() {
        for _ in 0..2 {
            let x = *root;
            let f = ((x - a) * x + b) * x - c;
            let df = (3.0 * x - 2.0 * a) * x + b;
            if df.abs() <= 1e-8 * scale * scale {
                break;
            }
            *root = x - f / df;
        }
    }
    roots.sort_by(|x, y| y.total_cmp(x));
    roots
}

/// Roots of the characteristic cubic. Near a double root these carry an
/// error of order `sqrt(ε)`; [`eigenvalues`] refines them.
pub fn characteristic_roots(x: &HermMatrix<Octonion>) -> [f64; 3] {
    real_cubic_roots(albert_trace(x), albert_sigma(x), freudenthal_det(x))
}

/// Eigenvalues in descending order. Clustered roots are replaced by the
/// Rayleigh quotient `⟨x, p⟩ / rank(p)` of their eigenprojection.
pub fn eigenvalues(x: &HermMatrix<Octonion>) -> [f64; 3] {
    let scale = x.trace_inner(x).sqrt();
    let mut out = [0.0; 3];
    let mut k = 0;
    for (value, mult, _) in clusters(x, 1e-6 * scale) {
        for _ in 0..mult {
            out[k] = value;
            k += 1;
        }
    }
    out
}

fn shifted(x: &HermMatrix<Octonion>, mu: f64) -> HermMatrix<Octonion> {
    let mut y = x.clone();
    for i in 0..3 {
        y.set(i, i, Octonion::from_real(x.get(i, i).re() - mu));
    }
    y
}

fn purify(p: &HermMatrix<Octonion>) -> HermMatrix<Octonion> {
    // McWeeny step p ↦ 3p² − 2p³
    let p2 = p.jordan(p);
    let p3 = p.jordan(&p2);
    p2.zip(&p3, |a, b| a.scale(3.0) - b.scale(2.0))
}

/// Eigenvalue clusters (merged when closer than `tol`) with their
/// eigenprojections, descending. Each entry carries the cluster size.
pub(crate) fn clusters(x: &HermMatrix<Octonion>, tol: f64) -> Vec<(f64, usize, HermMatrix<Octonion>)> {
    let roots = characteristic_roots(x);
    let mut groups: Vec<Vec<f64>> = Vec::new();
    for r in roots {
        match groups.last_mut() {
            Some(g) if g.last().is_some_and(|&prev| prev - r <= tol) => g.push(r),
            _ => groups.push(vec![r]),
        }
    }
    let mut values: Vec<f64> = groups.iter().map(|g| g.iter().sum::<f64>() / g.len() as f64).collect();

    let identity = HermMatrix::<Octonion>::identity(3);
    let mut projections: Vec<HermMatrix<Octonion>> = match values.len() {
        1 => vec![identity],
        _ => (0..values.len())
            .map(|i| {
                // Lagrange interpolation Π_{j≠i} (x − μ_j)/(μ_i − μ_j)
                let mut acc = identity.clone();
                for (j, &mu) in values.iter().enumerate() {
                    if j != i {
                        let factor = shifted(x, mu).map(|v| v.scale(1.0 / (values[i] - mu)));
                        acc = acc.jordan(&factor);
                    }
                }
                purify(&purify(&acc))
            })
            .collect(),
    };

    if values.len() > 1 {
        for ((v, g), p) in values.iter_mut().zip(&groups).zip(&projections) {
            *v = x.trace_inner(p) / g.len() as f64;
        }
    }

    groups
        .iter()
        .zip(values)
        .zip(projections.drain(..))
        .map(|((g, v), p)| (v, g.len(), p))
        .collect()
}
