//! Dense complex-matrix kernel: Hermitian eigendecomposition, PSD matrix
//! functions, fidelity, partial trace, and tensor products.
//!
//! Matrices are row-major `Vec<Complex64>` with explicit shape. The
//! eigensolver is a cyclic Jacobi iteration; Jacobi keeps high *relative*
//! accuracy for small PSD eigenvalues, which the pseudo-inverse powers
//! feeding the Petz recovery map depend on.
//!
//! Everything here is base-agnostic (no log-2 anywhere); entropic units are
//! fixed downstream.

use num_complex::Complex64;
use rand::Rng;

use crate::config::Tolerances;
use crate::error::{Error, Result};

pub const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                left_rows: rows,
                left_cols: cols,
                right_rows: entries.len(),
                right_cols: 1,
            });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidPauli("non-finite matrix entry".into()));
        }
        Ok(ComplexMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            entries: vec![C_ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.set(i, i, C_ONE);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, entries }
    }

    /// Real diagonal matrix.
    pub fn diag(values: &[f64]) -> Self {
        Self::from_fn(values.len(), values.len(), |i, j| {
            if i == j {
                Complex64::new(values[i], 0.0)
            } else {
                C_ZERO
            }
        })
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        // (i, k, j) loop order keeps the inner accesses contiguous.
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.entries[i * self.cols + k];
                if aik == C_ZERO {
                    continue;
                }
                let row_out = i * other.cols;
                let row_b = k * other.cols;
                for j in 0..other.cols {
                    out.entries[row_out + j] += aik * other.entries[row_b + j];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn scale(&self, s: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = ComplexMatrix::zeros(rows, cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a == C_ZERO {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        out.set(
                            i1 * other.rows + i2,
                            j1 * other.cols + j2,
                            a * other.get(i2, j2),
                        );
                    }
                }
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max entry deviation from Hermiticity, or an error for non-square input.
    pub fn herm_deviation(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        Ok(dev)
    }

    /// (A + A†)/2.
    pub fn hermitize(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.rows, self.cols, |i, j| {
            0.5 * (self.get(i, j) + self.get(j, i).conj())
        })
    }

    pub fn approx_eq(&self, other: &ComplexMatrix, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.sub(other).max_abs_entry() <= tol
    }
}

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition (cyclic Jacobi)
// ---------------------------------------------------------------------------

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues in ascending order and the unitary of column
/// eigenvectors in matching order, so `m = V diag(λ) V†`.
pub fn hermitian_eig(m: &ComplexMatrix, tol: &Tolerances) -> Result<(Vec<f64>, ComplexMatrix)> {
    let dev = m.herm_deviation()?;
    let scale = m.max_abs_entry().max(1.0);
    if dev > tol.herm * scale.max(1.0) {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let n = m.rows;
    let mut a = m.hermitize();
    let mut v = ComplexMatrix::identity(n);

    // Rotation threshold relative to the local diagonal keeps relative
    // accuracy for graded PSD spectra (Demmel–Veselić).
    let eps = f64::EPSILON;
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let local = (app.abs() * aqq.abs()).sqrt().max(eps * scale);
                if apq.norm() <= eps * local {
                    continue;
                }
                rotated = true;

                // Exact 2x2 Hermitian eigenvectors for the pivot block.
                let mean = 0.5 * (app + aqq);
                let delta = 0.5 * (app - aqq);
                let r = (delta * delta + apq.norm_sqr()).sqrt();
                let lam_plus = mean + r;
                // Better-conditioned eigenvector formula of the two.
                let cand1 = (apq, Complex64::new(lam_plus - app, 0.0));
                let cand2 = (Complex64::new(lam_plus - aqq, 0.0), apq.conj());
                let n1 = cand1.0.norm_sqr() + cand1.1.norm_sqr();
                let n2 = cand2.0.norm_sqr() + cand2.1.norm_sqr();
                let (mut u0, mut u1) = if n1 >= n2 { cand1 } else { cand2 };
                let norm = (u0.norm_sqr() + u1.norm_sqr()).sqrt();
                u0 /= norm;
                u1 /= norm;

                // Right-multiply columns p,q of A and V by the rotation.
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, akp * u0 + akq * u1);
                    a.set(k, q, -akp * u1.conj() + akq * u0.conj());
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, vkp * u0 + vkq * u1);
                    v.set(k, q, -vkp * u1.conj() + vkq * u0.conj());
                }
                // Left-multiply rows p,q of A by the adjoint rotation.
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, u0.conj() * apk + u1.conj() * aqk);
                    a.set(q, k, -u1 * apk + u0 * aqk);
                }
                // Pin the pivot to exact Hermitian form.
                let d_p = a.get(p, p).re;
                let d_q = a.get(q, q).re;
                a.set(p, p, Complex64::new(d_p, 0.0));
                a.set(q, q, Complex64::new(d_q, 0.0));
                a.set(p, q, C_ZERO);
                a.set(q, p, C_ZERO);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v.get(i, order[j]));
    Ok((eigenvalues, vectors))
}

/// `V diag(f(λ)) V†` rebuilt from a spectral decomposition.
fn rebuild(eigenvalues: &[f64], vectors: &ComplexMatrix, f: impl Fn(f64) -> f64) -> ComplexMatrix {
    let n = vectors.rows;
    let mut out = ComplexMatrix::zeros(n, n);
    for (k, &lam) in eigenvalues.iter().enumerate() {
        let w = f(lam);
        if w == 0.0 {
            continue;
        }
        for i in 0..n {
            let vik = vectors.get(i, k);
            if vik == C_ZERO {
                continue;
            }
            for j in 0..n {
                let cur = out.get(i, j);
                out.set(i, j, cur + vik * vectors.get(j, k).conj() * w);
            }
        }
    }
    out
}

/// Matrix power of a PSD matrix on its support.
///
/// Eigenvalues below `cutoff` (default `cutoff_rel · λ_max`) are treated as
/// exactly zero and excluded from negative powers (pseudo-power convention).
pub fn psd_power(
    m: &ComplexMatrix,
    exponent: f64,
    cutoff: Option<f64>,
    tol: &Tolerances,
) -> Result<ComplexMatrix> {
    let (eigenvalues, vectors) = hermitian_eig(m, tol)?;
    let lam_max = eigenvalues.last().copied().unwrap_or(0.0).max(0.0);
    let min = eigenvalues.first().copied().unwrap_or(0.0);
    if min < -tol.psd * lam_max.max(1.0) {
        return Err(Error::NotPsd { min_eigenvalue: min });
    }
    let cut = cutoff.unwrap_or(tol.cutoff_rel * lam_max);
    Ok(rebuild(&eigenvalues, &vectors, |lam| {
        if lam <= cut {
            0.0
        } else {
            lam.powf(exponent)
        }
    }))
}

/// Projector onto the support (eigenvalues above the cutoff) of a PSD matrix.
pub fn support_projector(
    m: &ComplexMatrix,
    cutoff: Option<f64>,
    tol: &Tolerances,
) -> Result<ComplexMatrix> {
    let (eigenvalues, vectors) = hermitian_eig(m, tol)?;
    let lam_max = eigenvalues.last().copied().unwrap_or(0.0).max(0.0);
    let cut = cutoff.unwrap_or(tol.cutoff_rel * lam_max);
    Ok(rebuild(&eigenvalues, &vectors, |lam| {
        if lam <= cut {
            0.0
        } else {
            1.0
        }
    }))
}

// ---------------------------------------------------------------------------
// Density matrices
// ---------------------------------------------------------------------------

/// Hermitian, PSD, unit-trace complex matrix.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    pub dim: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validating constructor: Hermitian within `tol.herm`, eigenvalues
    /// ≥ -`tol.psd`, trace within `tol.trace` of 1.
    pub fn new(matrix: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let dev = matrix.herm_deviation()?;
        if dev > tol.herm {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tol.trace || tr.im.abs() > tol.trace {
            return Err(Error::BadTrace { trace: tr.re });
        }
        let (eigenvalues, _) = hermitian_eig(&matrix, tol)?;
        let min = eigenvalues.first().copied().unwrap_or(0.0);
        if min < -tol.psd {
            return Err(Error::NotPsd { min_eigenvalue: min });
        }
        Ok(DensityMatrix {
            dim: matrix.rows,
            matrix: matrix.hermitize(),
        })
    }

    /// Internal constructor for outputs that are PSD by construction
    /// (channel applications, spectral rebuilds). Symmetrizes and
    /// renormalizes the trace, which may drift at machine level.
    pub(crate) fn from_trusted(matrix: ComplexMatrix) -> Self {
        let m = matrix.hermitize();
        let tr = m.trace().re;
        debug_assert!((tr - 1.0).abs() < 1e-6, "trusted state trace {tr}");
        let m = m.scale(Complex64::new(1.0 / tr, 0.0));
        DensityMatrix {
            dim: m.rows,
            matrix: m,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn pure(amplitudes: &[Complex64]) -> Self {
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let dim = amplitudes.len();
        let m = ComplexMatrix::from_fn(dim, dim, |i, j| {
            amplitudes[i] * amplitudes[j].conj() / (norm * norm)
        });
        DensityMatrix { dim, matrix: m }
    }

    pub fn basis_state(dim: usize, index: usize) -> Self {
        let mut amps = vec![C_ZERO; dim];
        amps[index] = C_ONE;
        Self::pure(&amps)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let m = ComplexMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0));
        DensityMatrix { dim, matrix: m }
    }

    /// Maximally entangled state |ω⟩ = d^{-1/2} Σ_i |ii⟩ on dim².
    pub fn max_entangled(dim: usize) -> Self {
        let amps: Vec<Complex64> = (0..dim * dim)
            .map(|idx| {
                let (i, j) = (idx / dim, idx % dim);
                if i == j {
                    Complex64::new(1.0 / (dim as f64).sqrt(), 0.0)
                } else {
                    C_ZERO
                }
            })
            .collect();
        Self::pure(&amps)
    }

    /// Hilbert-Schmidt-style random full-rank state: GG†/tr(GG†).
    pub fn random(dim: usize, rng: &mut impl Rng) -> Self {
        let g = random_ginibre(dim, dim, rng);
        let gg = g.mul(&g.dagger());
        DensityMatrix::from_trusted(gg.scale(Complex64::new(1.0 / gg.trace().re, 0.0)))
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            dim: self.dim * other.dim,
            matrix: self.matrix.kron(other.matrix()),
        }
    }
}

// ---------------------------------------------------------------------------
// Fidelity and partial trace
// ---------------------------------------------------------------------------

/// Uhlmann fidelity F(a, b) = ‖√a √b‖₁², symmetric, in [0, 1].
pub fn fidelity(a: &DensityMatrix, b: &DensityMatrix, tol: &Tolerances) -> Result<f64> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    let sqrt_b = psd_power(b.matrix(), 0.5, None, tol)?;
    // ‖√a √b‖₁² = (Σ √eig(√b a √b))².
    let inner = sqrt_b.mul(a.matrix()).mul(&sqrt_b).hermitize();
    let (eigenvalues, _) = hermitian_eig(&inner, tol)?;
    let sum: f64 = eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).sum();
    Ok((sum * sum).min(1.0))
}

/// Trace out the subsystems *not* listed in `keep`.
///
/// `dims` are the subsystem dimensions in tensor order (leftmost factor most
/// significant); the result keeps the listed subsystems in their original
/// relative order.
pub fn partial_trace(
    state: &DensityMatrix,
    dims: &[usize],
    keep: &[usize],
) -> Result<DensityMatrix> {
    let total: usize = dims.iter().product();
    if total != state.dim {
        return Err(Error::DimensionMismatch {
            left: total,
            right: state.dim,
        });
    }
    let mut keep_sorted: Vec<usize> = keep.to_vec();
    keep_sorted.sort_unstable();
    keep_sorted.dedup();
    if keep_sorted.iter().any(|&k| k >= dims.len()) {
        return Err(Error::IndexOutOfRange {
            index: *keep_sorted.last().unwrap(),
            n: dims.len(),
        });
    }

    let kept_dim: usize = keep_sorted.iter().map(|&k| dims[k]).product();
    // Decompose each full index into (kept part, traced part).
    let mut kept_part = vec![0usize; total];
    let mut traced_part = vec![0usize; total];
    for idx in 0..total {
        let mut rem = idx;
        let (mut kp, mut tp) = (0usize, 0usize);
        for (s, &d) in dims.iter().enumerate() {
            let stride: usize = dims[s + 1..].iter().product();
            let component = rem / stride;
            rem %= stride;
            if keep_sorted.contains(&s) {
                kp = kp * d + component;
            } else {
                tp = tp * d + component;
            }
        }
        kept_part[idx] = kp;
        traced_part[idx] = tp;
    }

    let mut out = ComplexMatrix::zeros(kept_dim, kept_dim);
    for r in 0..total {
        for c in 0..total {
            if traced_part[r] == traced_part[c] {
                let cur = out.get(kept_part[r], kept_part[c]);
                out.set(kept_part[r], kept_part[c], cur + state.matrix().get(r, c));
            }
        }
    }
    Ok(DensityMatrix {
        dim: kept_dim,
        matrix: out,
    })
}

// ---------------------------------------------------------------------------
// Random matrix helpers (tests, optimizer starts, channel sampling)
// ---------------------------------------------------------------------------

/// Complex matrix with iid standard-normal entries.
pub fn random_ginibre(rows: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
    use rand_distr_normal::sample_standard_normal;
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(sample_standard_normal(rng), sample_standard_normal(rng))
    })
}

/// Random Hermitian matrix (GUE-style scaling).
pub fn random_hermitian(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = random_ginibre(dim, dim, rng);
    g.add(&g.dagger()).scale(Complex64::new(0.5, 0.0))
}

/// Haar-ish random isometry: QR of a Ginibre matrix (rows ≥ cols).
pub fn random_isometry(rows: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
    assert!(rows >= cols);
    let g = random_ginibre(rows, cols, rng);
    gram_schmidt_columns(&g)
}

pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    random_isometry(dim, dim, rng)
}

/// Orthonormalize columns (modified Gram-Schmidt). Columns must be
/// linearly independent.
pub fn gram_schmidt_columns(m: &ComplexMatrix) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = (0..m.cols)
        .map(|j| (0..m.rows).map(|i| m.get(i, j)).collect())
        .collect();
    for j in 0..cols.len() {
        for k in 0..j {
            let proj: Complex64 = cols[k]
                .iter()
                .zip(&cols[j])
                .map(|(a, b)| a.conj() * b)
                .sum();
            for i in 0..m.rows {
                let sub = proj * cols[k][i];
                cols[j][i] -= sub;
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!(norm > 1e-12, "rank-deficient matrix in Gram-Schmidt");
        for z in cols[j].iter_mut() {
            *z /= norm;
        }
    }
    ComplexMatrix::from_fn(m.rows, m.cols, |i, j| cols[j][i])
}

// Box-Muller; avoids pulling rand_distr in for one distribution.
mod rand_distr_normal {
    use rand::Rng;

    pub fn sample_standard_normal(rng: &mut impl Rng) -> f64 {
        let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        let u2: f64 = rng.gen::<f64>();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }
}
