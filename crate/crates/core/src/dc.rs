//! Optimal single-generator selection through the double-commutator
//! generalized eigenvalue problem.
//!
//! For `A = Σ c_k B_k`, `||[A, R]||_F² = c* M c` with
//! `M_ij = Tr(B_i* [R, [R, B_j]])`, and `||A||_F² = c* G c` with the Gram
//! matrix `G`. The minimum of `δ²(A, R)` over the span is therefore
//! `λ_min / ||R||_F²` for the smallest eigenvalue of `M c = λ G c`, and a
//! zero `λ_min` certifies an exactly commuting generator in the span.

use std::collections::HashMap;

use crate::basis::{gram, GeneratorBasis};
use crate::error::{Error, Result};
use crate::matrix::{self, double_commutator_with_square, ComplexMatrix, HermitianMatrix, C64, ZERO};
use crate::perm::Permutation;

/// Relative zero-certificate threshold: `λ_min <= ZERO_TOL * ||R||_F²`
/// declares exact commutation. The same constant backs the `τ = 0` mode of
/// the sequential search.
pub const ZERO_TOL: f64 = 1e-10;

/// Eigenvalues closer than this (relative to the largest) are one cluster.
const DEGENERACY_GAP: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct GevpSolution {
    pub lambda_min: f64,
    /// `G`-normalized: `c* G c = 1`, so `||A*||_F = 1`.
    pub coefficients: Vec<C64>,
    pub generator: ComplexMatrix,
    /// `δ(A*, R)`, computed from the commutator itself.
    pub residual: f64,
    pub spectrum: Vec<f64>,
    /// `λ_min / λ_max`, or 1 when the whole spectrum is zero.
    pub condition_ratio: f64,
    /// Dimension of the eigenspace the coefficients were chosen from.
    pub null_dimension: usize,
    /// `λ_min <= ZERO_TOL * ||R||_F²`.
    pub commutes: bool,
}

/// Assembles `(M, G)` for the basis. Uses row/column permutations of `R`
/// when every element is permutation-structured.
pub fn assemble(r: &HermitianMatrix, basis: &GeneratorBasis) -> Result<(HermitianMatrix, HermitianMatrix)> {
    check_dims(r, basis)?;
    let g = gram(basis)?;
    let d = basis.len();
    let m = match basis.all_perm_terms() {
        Some(terms) => {
            let mut cache: HashMap<(Permutation, Permutation), C64> = HashMap::new();
            let mut m = ComplexMatrix::zeros(d, d);
            for i in 0..d {
                for j in i..d {
                    let mut s = ZERO;
                    for (wa, pa) in &terms[i] {
                        for (wb, pb) in &terms[j] {
                            let v = *cache
                                .entry((pa.clone(), pb.clone()))
                                .or_insert_with(|| perm_pair_entry(r, pa, pb));
                            s += v * (wa * wb);
                        }
                    }
                    m[(i, j)] = s;
                    m[(j, i)] = s.conj();
                }
            }
            m
        }
        None => {
            let r2 = r.checked_matmul(r)?;
            let cs: Vec<ComplexMatrix> = basis
                .matrices()
                .map(|b| double_commutator_with_square(r, &r2, b))
                .collect();
            let bs: Vec<&ComplexMatrix> = basis.matrices().collect();
            let mut m = ComplexMatrix::zeros(d, d);
            for i in 0..d {
                for j in i..d {
                    let v = matrix::inner_unchecked(bs[i], &cs[j]);
                    m[(i, j)] = v;
                    m[(j, i)] = v.conj();
                }
            }
            m
        }
    };
    Ok((HermitianMatrix::symmetrized(m), g))
}

fn check_dims(r: &HermitianMatrix, basis: &GeneratorBasis) -> Result<()> {
    if r.dim() != basis.dim() {
        return Err(Error::DimensionMismatch {
            op: "assemble",
            left: r.shape(),
            right: (basis.dim(), basis.dim()),
        });
    }
    Ok(())
}

/// `Tr(P_a^T [R, [R, P_b]])` in `O(M²)`:
/// `Σ_k (R²)_{k, b⁻¹(a(k))} - 2 Σ_{k,m} R_{k,m} R_{b(m), a(k)} + Σ_k (R²)_{b(k), a(k)}`.
fn perm_pair_entry(r: &ComplexMatrix, a: &Permutation, b: &Permutation) -> C64 {
    let n = r.rows();
    let b_inv = b.inverse();
    // (R²)_{p,q} = Σ_m R_{p,m} conj(R_{q,m}) for Hermitian R.
    let r2 = |p: usize, q: usize| -> C64 { r.row(p).iter().zip(r.row(q)).map(|(x, y)| x * y.conj()).sum() };
    let mut left = ZERO;
    let mut right = ZERO;
    let mut middle = ZERO;
    for k in 0..n {
        let ak = a.apply(k);
        left += r2(k, b_inv.apply(ak));
        right += r2(b.apply(k), ak);
        let row = r.row(k);
        for (mm, &rkm) in row.iter().enumerate() {
            middle += rkm * r[(b.apply(mm), ak)];
        }
    }
    left - middle * 2.0 + right
}

/// `δ(A, R) = ||[A, R]||_F / (||A||_F ||R||_F)`.
pub fn residual(a: &ComplexMatrix, r: &HermitianMatrix) -> Result<f64> {
    let na = a.frobenius_norm();
    let nr = r.frobenius_norm();
    if na == 0.0 || nr == 0.0 {
        return Err(Error::ZeroMatrix);
    }
    let c = matrix::commutator(a, r)?;
    Ok(c.frobenius_norm() / (na * nr))
}

/// `[Σ c_k B_k, R]` using the permutation structure of the basis.
fn structured_commutator(terms: &[Vec<(f64, Permutation)>], coefficients: &[C64], r: &ComplexMatrix) -> ComplexMatrix {
    let n = r.rows();
    let mut weights: HashMap<&Permutation, C64> = HashMap::new();
    for (t, &c) in terms.iter().zip(coefficients) {
        for (w, p) in t {
            *weights.entry(p).or_insert(ZERO) += c * *w;
        }
    }
    let mut out = ComplexMatrix::zeros(n, n);
    let mut perms: Vec<(&Permutation, C64)> = weights.into_iter().collect();
    perms.sort_by(|a, b| a.0.cmp(b.0));
    for (p, w) in perms {
        if w == ZERO || p.is_identity() {
            continue;
        }
        let inv = p.inverse();
        for i in 0..n {
            let pi = p.apply(i);
            for j in 0..n {
                // (P R)_{ij} = R_{p(i), j}; (R P)_{ij} = R_{i, p⁻¹(j)}.
                out[(i, j)] += w * (r[(pi, j)] - r[(i, inv.apply(j))]);
            }
        }
    }
    out
}

/// Runs the double-commutator GEVP over `basis` and returns the optimal
/// generator together with its certificate.
pub fn select_generator(r: &HermitianMatrix, basis: &GeneratorBasis) -> Result<GevpSolution> {
    let r_norm2 = r.frobenius_norm_sqr();
    if r_norm2 == 0.0 {
        return Err(Error::ZeroMatrix);
    }
    let (m, g) = assemble(r, basis)?;
    let ge = matrix::gevp_with_scale(&m, &g, r_norm2 * g.frobenius_norm())?;
    let spectrum = ge.values.clone();
    let lambda_min = spectrum[0];
    let lambda_max = *spectrum.last().expect("nonempty spectrum");
    let zero_level = ZERO_TOL * r_norm2;

    let mut gap = DEGENERACY_GAP * lambda_max.abs().max(f64::MIN_POSITIVE);
    if lambda_min <= zero_level {
        gap = gap.max(zero_level);
    }
    let cluster: Vec<usize> = (0..spectrum.len())
        .filter(|&k| spectrum[k] - lambda_min <= gap)
        .collect();
    let coefficients = canonical_vector(&ge.vectors, &cluster);

    let generator = basis.combine(&coefficients);
    let commutator = match basis.all_perm_terms() {
        Some(terms) => structured_commutator(&terms, &coefficients, r),
        None => matrix::commutator(&generator, r)?,
    };
    let a_norm = generator.frobenius_norm();
    let residual = if a_norm == 0.0 {
        0.0
    } else {
        commutator.frobenius_norm() / (a_norm * r_norm2.sqrt())
    };
    let condition_ratio = if lambda_max > 0.0 {
        (lambda_min / lambda_max).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Ok(GevpSolution {
        lambda_min,
        coefficients,
        generator,
        residual,
        spectrum,
        condition_ratio,
        null_dimension: cluster.len(),
        commutes: lambda_min <= zero_level,
    })
}

/// Deterministic unit vector from the eigenspace spanned by `cluster`
/// (columns of the `G`-orthonormal `vectors`): the one with the greatest
/// real leading coefficient, then rotated so its largest-modulus coefficient
/// is real and positive.
fn canonical_vector(vectors: &ComplexMatrix, cluster: &[usize]) -> Vec<C64> {
    let d = vectors.rows();
    let rows: Vec<Vec<C64>> = (0..d)
        .map(|i| cluster.iter().map(|&k| vectors[(i, k)]).collect())
        .collect();
    let row_norm = |r: &[C64]| r.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let max_row = rows.iter().map(|r| row_norm(r)).fold(0.0, f64::max);
    let lead = rows.iter().position(|r| row_norm(r) > 1e-8 * max_row).unwrap_or(0);
    let lead_norm = row_norm(&rows[lead]);
    let y: Vec<C64> = rows[lead].iter().map(|v| v.conj() / lead_norm).collect();
    let mut c: Vec<C64> = rows
        .iter()
        .map(|r| r.iter().zip(&y).map(|(a, b)| a * b).sum())
        .collect();

    let max_mod = c.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if max_mod > 0.0 {
        let k = c
            .iter()
            .position(|v| v.norm() >= max_mod * (1.0 - 1e-12))
            .expect("maximum exists");
        let phase = c[k].conj() / c[k].norm();
        for v in &mut c {
            *v *= phase;
        }
    }
    c
}

/// `c* M c / c* G c`.
pub fn rayleigh_quotient(m: &HermitianMatrix, g: &HermitianMatrix, c: &[C64]) -> f64 {
    matrix::quadratic_form(m, c) / matrix::quadratic_form(g, c)
}
