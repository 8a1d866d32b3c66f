//! Dense complex matrices, commutators, and the Hermitian eigen machinery.
//!
//! Everything here is small-and-dense by design of the problem: covariances
//! are at most a few hundred rows and the generalized eigenproblems are
//! `d x d` with `d` the size of a generator basis. The Hermitian eigensolver
//! is a cyclic complex Jacobi iteration, which is slow asymptotically but
//! accurate to working precision on every eigenvalue, including the
//! zero eigenvalues that act as commutation certificates.

use std::fmt;
use std::ops::{Add, Deref, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Relative hermiticity tolerance applied when a matrix is wrapped as
/// [`HermitianMatrix`]: `||H - H*||_F <= HERMITIAN_TOL * max(1, ||H||_F)`.
pub const HERMITIAN_TOL: f64 = 1e-9;

/// Relative indefiniteness allowed in the left-hand side of a GEVP before it
/// is reported as an assembly error.
pub const PSD_TOL: f64 = 1e-10;

const JACOBI_MAX_SWEEPS: usize = 100;

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for v in self.row(i) {
                write!(f, "{:+.4}{:+.4}i ", v.re, v.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Real matrix from row-major data.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_vec(rows, cols, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn diag_real(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map(|v| v * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.map(|v| v * s)
    }

    /// Real parts, row-major.
    pub fn real_part(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.re).collect())
            .collect()
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|v| v.im == 0.0)
    }

    pub fn frobenius_norm_sqr(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.frobenius_norm_sqr().sqrt()
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.shape(), other.shape());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn checked_matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub(crate) fn check_finite(&self) -> Result<()> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self[(i, j)];
                if !v.re.is_finite() || !v.im.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    fn same_shape(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    fn square_pair(&self, other: &Self, op: &'static str) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        self.same_shape(other, op)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.shape(), rhs.shape(), "add: shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.shape(), rhs.shape(), "sub: shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.checked_matmul(rhs).expect("mul: shape mismatch")
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.map(|v| -v)
    }
}

/// A square complex matrix known to be Hermitian.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix(ComplexMatrix);

impl HermitianMatrix {
    /// Validates hermiticity within [`HERMITIAN_TOL`] and symmetrizes as
    /// `(H + H*) / 2`.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if m.rows == 0 || m.cols == 0 {
            return Err(Error::Empty);
        }
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows,
                cols: m.cols,
            });
        }
        m.check_finite()?;
        let n = m.rows;
        let mut deviation = 0.0;
        for i in 0..n {
            for j in 0..n {
                deviation += (m[(i, j)] - m[(j, i)].conj()).norm_sqr();
            }
        }
        let deviation = deviation.sqrt();
        let tolerance = HERMITIAN_TOL * m.frobenius_norm().max(1.0);
        if deviation > tolerance {
            return Err(Error::NotHermitian { deviation, tolerance });
        }
        Ok(Self::symmetrized(m))
    }

    pub(crate) fn symmetrized(m: ComplexMatrix) -> Self {
        let n = m.rows;
        let out = ComplexMatrix::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(m[(i, i)].re, 0.0)
            } else {
                (m[(i, j)] + m[(j, i)].conj()) * 0.5
            }
        });
        Self(out)
    }

    pub fn identity(n: usize) -> Self {
        Self(ComplexMatrix::identity(n))
    }

    pub fn diag(values: &[f64]) -> Self {
        Self(ComplexMatrix::diag_real(values))
    }

    /// Real symmetric matrix from row-major data.
    pub fn from_real(n: usize, data: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real(n, n, data)?)
    }

    pub fn dim(&self) -> usize {
        self.0.rows
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_inner(self) -> ComplexMatrix {
        self.0
    }
}

impl Deref for HermitianMatrix {
    type Target = ComplexMatrix;
    fn deref(&self) -> &ComplexMatrix {
        &self.0
    }
}

impl From<HermitianMatrix> for ComplexMatrix {
    fn from(h: HermitianMatrix) -> Self {
        h.0
    }
}

/// `[A, B] = AB - BA`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.square_pair(b, "commutator")?;
    Ok(&a.checked_matmul(b)? - &b.checked_matmul(a)?)
}

/// `[R, [R, B]] = R^2 B - 2 R B R + B R^2`.
pub fn double_commutator(r: &HermitianMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    r.square_pair(b, "double_commutator")?;
    let r2 = r.checked_matmul(r)?;
    Ok(double_commutator_with_square(r, &r2, b))
}

/// Double commutator given a precomputed `R^2`.
pub(crate) fn double_commutator_with_square(r: &ComplexMatrix, r2: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rb = r * b;
    let rbr = &rb * r;
    let left = r2 * b;
    let right = b * r2;
    ComplexMatrix::from_fn(b.rows, b.cols, |i, j| left[(i, j)] - rbr[(i, j)] * 2.0 + right[(i, j)])
}

/// Frobenius inner product `Tr(a* b)`, conjugating the first argument.
pub fn frobenius_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<C64> {
    a.same_shape(b, "frobenius_inner")?;
    Ok(inner_unchecked(a, b))
}

pub(crate) fn inner_unchecked(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    a.data.iter().zip(&b.data).map(|(x, y)| x.conj() * y).sum()
}

/// Eigenvalues ascending; column `k` of `vectors` pairs with `values[k]`.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// `V f(Λ) V*`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let fv: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        ComplexMatrix::from_fn(n, n, |i, j| (0..n).map(|k| v[(i, k)] * fv[k] * v[(j, k)].conj()).sum())
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|l| l)
    }
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
pub fn hermitian_eig(h: &HermitianMatrix) -> Result<EigenDecomposition> {
    let n = h.dim();
    let mut a = h.as_matrix().clone();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();
    if n == 1 || scale == 0.0 {
        return Ok(sorted_eigen((0..n).map(|i| a[(i, i)].re).collect(), v));
    }

    let off_norm = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_norm(&a) <= f64::EPSILON * 1e-2 * scale {
            converged = true;
            break;
        }
        let mut rotated = false;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                // Negligible relative to both diagonal entries: zero it outright.
                if g <= f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) || g <= f64::MIN_POSITIVE * 1e4 {
                    if g != 0.0 {
                        a[(p, q)] = ZERO;
                        a[(q, p)] = ZERO;
                    }
                    continue;
                }
                rotated = true;
                let phase = apq / g;
                let theta = (aqq - app) / (2.0 * g);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let phase_c = phase.conj();
                // Columns: A <- A U with U = diag(1, e^{-iφ}) * [[c, s], [-s, c]].
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)] * phase_c;
                    a[(k, p)] = akp * c - akq * s;
                    a[(k, q)] = akp * s + akq * c;
                }
                // Rows: A <- U* A.
                for l in 0..n {
                    let apl = a[(p, l)];
                    let aql = a[(q, l)] * phase;
                    a[(p, l)] = apl * c - aql * s;
                    a[(q, l)] = apl * s + aql * c;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)] * phase_c;
                    v[(k, p)] = vkp * c - vkq * s;
                    v[(k, q)] = vkp * s + vkq * c;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
        });
    }
    Ok(sorted_eigen((0..n).map(|i| a[(i, i)].re).collect(), v))
}

fn sorted_eigen(values: Vec<f64>, vectors: ComplexMatrix) -> EigenDecomposition {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let sorted_values = order.iter().map(|&k| values[k]).collect();
    let sorted_vectors = ComplexMatrix::from_fn(n, n, |i, j| vectors[(i, order[j])]);
    EigenDecomposition {
        values: sorted_values,
        vectors: sorted_vectors,
    }
}

/// Lower-triangular Cholesky factor `L` with `L L* = h`.
pub fn cholesky(h: &HermitianMatrix) -> Result<ComplexMatrix> {
    let n = h.dim();
    let max_diag = (0..n).map(|i| h[(i, i)].re.abs()).fold(0.0, f64::max);
    let floor = max_diag * 1e-14;
    let mut l = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = h[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if d.is_nan() || d <= floor || max_diag == 0.0 {
            return Err(Error::NotPositiveDefinite { index: j, pivot: d });
        }
        let d = d.sqrt();
        l[(j, j)] = C64::new(d, 0.0);
        for i in j + 1..n {
            let mut s = h[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / d;
        }
    }
    Ok(l)
}

/// Solves `L x = b` for lower-triangular `L`.
fn forward_substitute(l: &ComplexMatrix, b: &[C64]) -> Vec<C64> {
    let n = b.len();
    let mut x = vec![ZERO; n];
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[(i, k)] * x[k];
        }
        x[i] = s / l[(i, i)];
    }
    x
}

/// Solves `L* x = b` for lower-triangular `L`.
fn backward_substitute_adjoint(l: &ComplexMatrix, b: &[C64]) -> Vec<C64> {
    let n = b.len();
    let mut x = vec![ZERO; n];
    for i in (0..n).rev() {
        let mut s = b[i];
        for k in i + 1..n {
            s -= l[(k, i)].conj() * x[k];
        }
        x[i] = s / l[(i, i)];
    }
    x
}

/// All generalized eigenpairs of `M c = λ G c`, ascending, with
/// `G`-orthonormal eigenvectors in the columns of `vectors`.
#[derive(Clone, Debug)]
pub struct GeneralizedEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl GeneralizedEigen {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.vectors.column(k)
    }
}

/// Solves `M c = λ G c` for Hermitian positive semidefinite `M` and Hermitian
/// positive definite `G` by Cholesky reduction `G = L L*`.
///
/// Negative eigenvalues that survive the semidefiniteness check are roundoff
/// and are clamped to zero.
pub fn gevp(m: &HermitianMatrix, g: &HermitianMatrix) -> Result<GeneralizedEigen> {
    gevp_with_scale(m, g, 0.0)
}

/// [`gevp`] with the semidefiniteness check made relative to
/// `max(||M||_F, scale)`. Callers that know the magnitude `M` was assembled
/// from pass it here, so that a numerically zero `M` is not rejected for
/// roundoff-level negative eigenvalues.
pub fn gevp_with_scale(m: &HermitianMatrix, g: &HermitianMatrix, scale: f64) -> Result<GeneralizedEigen> {
    if m.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            op: "gevp",
            left: m.shape(),
            right: g.shape(),
        });
    }
    let n = m.dim();
    let m_norm = m.frobenius_norm().max(scale);
    let m_eig = hermitian_eig(m)?;
    let allowed = -PSD_TOL * m_norm;
    if m_eig.values[0] < allowed {
        return Err(Error::Indefinite {
            min_eigenvalue: m_eig.values[0],
            allowed,
        });
    }

    let l = cholesky(g)?;
    // C = L^{-1} M L^{-*} = L^{-1} (L^{-1} M)^*.
    let mut x = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let col = forward_substitute(&l, &m.column(j));
        for i in 0..n {
            x[(i, j)] = col[i];
        }
    }
    let xa = x.adjoint();
    let mut c = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let col = forward_substitute(&l, &xa.column(j));
        for i in 0..n {
            c[(i, j)] = col[i];
        }
    }
    let reduced = HermitianMatrix::symmetrized(c);
    let eig = hermitian_eig(&reduced)?;

    let mut vectors = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        let y = eig.vectors.column(k);
        let ck = backward_substitute_adjoint(&l, &y);
        for i in 0..n {
            vectors[(i, k)] = ck[i];
        }
    }
    let values = eig.values.iter().map(|&v| v.max(0.0)).collect();
    Ok(GeneralizedEigen { values, vectors })
}

/// Minimum generalized eigenpair `(λ_min, c, spectrum)` with `c* G c = 1`.
pub fn gevp_min(m: &HermitianMatrix, g: &HermitianMatrix) -> Result<(f64, Vec<C64>, Vec<f64>)> {
    let ge = gevp(m, g)?;
    Ok((ge.values[0], ge.vector(0), ge.values))
}

/// Quadratic form `x* H x` (real part).
pub fn quadratic_form(h: &ComplexMatrix, x: &[C64]) -> f64 {
    let hx = h.mul_vec(x);
    x.iter().zip(&hx).map(|(a, b)| a.conj() * b).sum::<C64>().re
}

/// `exp(-β H)` through the eigendecomposition.
pub fn matrix_exp_neg(h: &HermitianMatrix, beta: f64) -> Result<HermitianMatrix> {
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "beta must be finite and >= 0, got {beta}"
        )));
    }
    let eig = hermitian_eig(h)?;
    Ok(HermitianMatrix::symmetrized(
        eig.reconstruct_with(|l| (-beta * l).exp()),
    ))
}

/// `(I + H)^{-1}` through the eigendecomposition.
pub fn shifted_inverse(h: &HermitianMatrix) -> Result<HermitianMatrix> {
    let eig = hermitian_eig(h)?;
    let scale = eig.values.iter().map(|l| (1.0 + l).abs()).fold(1.0, f64::max);
    for &l in &eig.values {
        let shifted = 1.0 + l;
        if shifted.abs() <= 1e-12 * scale {
            return Err(Error::Singular);
        }
        if shifted < 0.0 {
            return Err(Error::NotPositiveDefinite {
                index: 0,
                pivot: shifted,
            });
        }
    }
    Ok(HermitianMatrix::symmetrized(eig.reconstruct_with(|l| 1.0 / (1.0 + l))))
}

/// Structural capacity `1 + ||R||_*^2 / Tr(R^2)` with `||.||_*` the trace
/// norm (equal to the trace for positive semidefinite `R`).
pub fn structural_capacity(r: &HermitianMatrix) -> Result<f64> {
    let fro2 = r.frobenius_norm_sqr();
    if fro2 == 0.0 {
        return Err(Error::ZeroMatrix);
    }
    let eig = hermitian_eig(r)?;
    let trace_norm: f64 = eig.values.iter().map(|l| l.abs()).sum();
    Ok(1.0 + trace_norm * trace_norm / fro2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn commutator_of_identity_and_self_vanish() {
        let a = ComplexMatrix::from_fn(3, 3, |i, j| C64::new(i as f64 - j as f64, (i * j) as f64));
        let id = ComplexMatrix::identity(3);
        assert_eq!(commutator(&id, &a).unwrap().frobenius_norm(), 0.0);
        assert_eq!(commutator(&a, &a).unwrap().frobenius_norm(), 0.0);
    }

    #[test]
    fn commutator_rejects_mismatched_dims() {
        let a = ComplexMatrix::identity(3);
        let b = ComplexMatrix::identity(4);
        assert!(matches!(commutator(&a, &b), Err(Error::DimensionMismatch { .. })));
        let ns = ComplexMatrix::zeros(2, 3);
        assert!(matches!(commutator(&ns, &ns), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn double_commutator_of_identity_is_zero() {
        let r = HermitianMatrix::from_real(2, &[2.0, 1.0, 1.0, 3.0]).unwrap();
        let dc = double_commutator(&r, &ComplexMatrix::identity(2)).unwrap();
        assert_eq!(dc.frobenius_norm(), 0.0);
    }

    #[test]
    fn inner_of_identities_is_dimension() {
        let i4 = ComplexMatrix::identity(4);
        assert_eq!(frobenius_inner(&i4, &i4).unwrap(), c(4.0));
    }

    #[test]
    fn inner_conjugates_first_argument() {
        let a = ComplexMatrix::from_vec(1, 1, vec![C64::new(0.0, 1.0)]).unwrap();
        let b = ComplexMatrix::from_vec(1, 1, vec![c(1.0)]).unwrap();
        assert_eq!(frobenius_inner(&a, &b).unwrap(), C64::new(0.0, -1.0));
    }

    #[test]
    fn hermitian_construction_symmetrizes_small_noise() {
        let m = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 2.0 + 1e-12, 1.0]).unwrap();
        let h = HermitianMatrix::new(m).unwrap();
        assert_eq!(h[(0, 1)], h[(1, 0)]);
        let bad = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 1.0]).unwrap();
        assert!(matches!(HermitianMatrix::new(bad), Err(Error::NotHermitian { .. })));
        let nan = ComplexMatrix::from_real(1, 1, &[f64::NAN]).unwrap();
        assert!(matches!(HermitianMatrix::new(nan), Err(Error::NonFinite { .. })));
    }

    #[test]
    fn eig_of_diagonal_is_sorted() {
        let e = hermitian_eig(&HermitianMatrix::diag(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn eig_of_swap_is_plus_minus_one() {
        let h = HermitianMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let e = hermitian_eig(&h).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15);
        assert!((e.values[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn eig_handles_complex_entries() {
        let m = ComplexMatrix::from_vec(2, 2, vec![c(1.0), C64::new(0.0, -2.0), C64::new(0.0, 2.0), c(1.0)]).unwrap();
        let h = HermitianMatrix::new(m).unwrap();
        let e = hermitian_eig(&h).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14);
        assert!((e.values[1] - 3.0).abs() < 1e-14);
        assert!(e.reconstruct().max_abs_diff(&h) < 1e-14);
    }

    #[test]
    fn gevp_trivial_cases() {
        let (l, c0, _) = gevp_min(&HermitianMatrix::diag(&[0.0, 0.0]), &HermitianMatrix::identity(2)).unwrap();
        assert_eq!(l, 0.0);
        let norm: f64 = c0.iter().map(|v| v.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-14);

        let (l, c0, spec) = gevp_min(&HermitianMatrix::diag(&[2.0, 5.0]), &HermitianMatrix::identity(2)).unwrap();
        assert!((l - 2.0).abs() < 1e-15);
        assert!((c0[0].norm() - 1.0).abs() < 1e-15 && c0[1].norm() < 1e-15);
        assert_eq!(spec.len(), 2);
    }

    #[test]
    fn gevp_rejects_bad_inputs() {
        let g_bad = HermitianMatrix::diag(&[1.0, 0.0]);
        assert!(matches!(
            gevp(&HermitianMatrix::identity(2), &g_bad),
            Err(Error::NotPositiveDefinite { .. })
        ));
        let m_bad = HermitianMatrix::diag(&[1.0, -1.0]);
        assert!(matches!(
            gevp(&m_bad, &HermitianMatrix::identity(2)),
            Err(Error::Indefinite { .. })
        ));
    }

    #[test]
    fn exp_and_inverse_trivial_cases() {
        let z = HermitianMatrix::diag(&[0.0, 1.0]);
        let e0 = matrix_exp_neg(&z, 0.0).unwrap();
        assert!(e0.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
        let e1 = matrix_exp_neg(&z, 1.0).unwrap();
        assert!((e1[(1, 1)].re - (-1.0f64).exp()).abs() < 1e-15);
        assert!(matrix_exp_neg(&z, -1.0).is_err());

        let inv0 = shifted_inverse(&HermitianMatrix::diag(&[0.0, 0.0])).unwrap();
        assert!(inv0.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
        let inv = shifted_inverse(&HermitianMatrix::diag(&[1.0, 3.0])).unwrap();
        assert!((inv[(0, 0)].re - 0.5).abs() < 1e-15);
        assert!((inv[(1, 1)].re - 0.25).abs() < 1e-15);
        assert_eq!(
            shifted_inverse(&HermitianMatrix::diag(&[-1.0, 0.0])),
            Err(Error::Singular)
        );
    }

    #[test]
    fn capacity_examples() {
        let k = structural_capacity(&HermitianMatrix::identity(5)).unwrap();
        assert!((k - 6.0).abs() < 1e-12);
        let proj = HermitianMatrix::from_real(2, &[0.5, 0.5, 0.5, 0.5]).unwrap();
        assert!((structural_capacity(&proj).unwrap() - 2.0).abs() < 1e-12);
        let d = structural_capacity(&HermitianMatrix::diag(&[2.0, 1.0, 1.0])).unwrap();
        assert!((d - (1.0 + 16.0 / 6.0)).abs() < 1e-12);
        assert_eq!(
            structural_capacity(&HermitianMatrix::diag(&[0.0, 0.0])),
            Err(Error::ZeroMatrix)
        );
    }
}
