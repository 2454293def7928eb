use crate::division::Scalar;

/// Dense Hermitian `k × k` matrix over a division-algebra scalar.
///
/// Every mutator writes `(i, j)` and `(j, i)` together, so
/// `m[i][j] == conj(m[j][i])` holds bit-for-bit and diagonal entries are real.
#[derive(Debug, Clone, PartialEq)]
pub struct HermMatrix<S> {
    k: usize,
    data: Vec<S>,
}

impl<S: Scalar> HermMatrix<S> {
    pub fn zeros(k: usize) -> Self {
        Self { k, data: vec![S::zero(); k * k] }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k);
        for i in 0..k {
            m.data[i * k + i] = S::one();
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, S::from_real(d));
        }
        m
    }

    /// `v v* / |v|²`. Only idempotent when the entries of `v` generate an
    /// associative subring, which is automatic for ℝ, ℂ and ℍ.
    pub fn projection_onto(v: &[S]) -> Self {
        let k = v.len();
        let norm_sqr: f64 = v.iter().map(Scalar::norm_sqr).sum();
        let mut m = Self::zeros(k);
        for i in 0..k {
            for j in i..k {
                m.set(i, j, (v[i] * v[j].conj()).scale(1.0 / norm_sqr));
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        self.data[i * self.k + j]
    }

    /// Set `(i, j)` and its mirror. Diagonal entries keep only their real part.
    pub fn set(&mut self, i: usize, j: usize, v: S) {
        if i == j {
            self.data[i * self.k + i] = S::from_real(v.re());
        } else {
            self.data[i * self.k + j] = v;
            self.data[j * self.k + i] = v.conj();
        }
    }

    pub fn map(&self, f: impl Fn(S) -> S) -> Self {
        Self { k: self.k, data: self.data.iter().map(|&v| f(v)).collect() }
    }

    pub fn zip(&self, other: &Self, f: impl Fn(S, S) -> S) -> Self {
        assert_eq!(self.k, other.k, "matrix size mismatch");
        Self {
            k: self.k,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    /// Full (generally non-Hermitian) matrix product, row-major.
    pub fn matmul(&self, other: &Self) -> Vec<S> {
        let k = self.k;
        let mut out = vec![S::zero(); k * k];
        for i in 0..k {
            for j in 0..k {
                let mut acc = S::zero();
                for l in 0..k {
                    acc = acc + self.get(i, l) * other.get(l, j);
                }
                out[i * k + j] = acc;
            }
        }
        out
    }

    /// `(xy + yx)/2`, using `yx = (xy)*` for Hermitian `x, y`.
    pub fn jordan(&self, other: &Self) -> Self {
        let k = self.k;
        let xy = self.matmul(other);
        let mut out = Self::zeros(k);
        for i in 0..k {
            for j in i..k {
                let v = (xy[i * k + j] + xy[j * k + i].conj()).scale(0.5);
                out.set(i, j, v);
            }
        }
        out
    }

    pub fn trace(&self) -> f64 {
        (0..self.k).map(|i| self.get(i, i).re()).sum()
    }

    /// `Re tr(xy)`, which equals `trace(x∘y)`.
    pub fn trace_inner(&self, other: &Self) -> f64 {
        let k = self.k;
        let mut acc = 0.0;
        for i in 0..k {
            for j in 0..k {
                acc += (self.get(i, j) * other.get(j, i)).re();
            }
        }
        acc
    }

    pub fn coord_len(k: usize) -> usize {
        k + S::DIM * k * (k.saturating_sub(1)) / 2
    }

    /// Diagonal first, then the strict upper triangle row by row, each entry
    /// contributing `S::DIM` real coefficients.
    pub fn write_coords(&self, out: &mut Vec<f64>) {
        let k = self.k;
        out.extend((0..k).map(|i| self.get(i, i).re()));
        for i in 0..k {
            for j in i + 1..k {
                let v = self.get(i, j);
                out.extend((0..S::DIM).map(|c| v.coeff(c)));
            }
        }
    }

    pub fn from_coords(k: usize, coords: &[f64]) -> Self {
        assert_eq!(coords.len(), Self::coord_len(k));
        let mut m = Self::zeros(k);
        for (i, &c) in coords[..k].iter().enumerate() {
            m.set(i, i, S::from_real(c));
        }
        let mut pos = k;
        for i in 0..k {
            for j in i + 1..k {
                m.set(i, j, S::from_coeffs(&coords[pos..pos + S::DIM]));
                pos += S::DIM;
            }
        }
        m
    }
}
