#![allow(dead_code)]

use dcgevp::matrix::{quadratic_form, ComplexMatrix, HermitianMatrix, C64};
use dcgevp::perm::{for_each_permutation, Permutation};

/// Best assignment by enumerating every permutation; the first maximizer in
/// lexicographic order of image arrays.
pub fn exhaustive_assignment(score: &[Vec<f64>]) -> (Permutation, f64) {
    let n = score.len();
    let mut best: Option<(Permutation, f64)> = None;
    for_each_permutation(n, |p| {
        let v: f64 = (0..n).map(|i| score[i][p.apply(i)]).sum();
        if best.as_ref().is_none_or(|(_, b)| v > *b) {
            best = Some((p.clone(), v));
        }
    });
    best.expect("n >= 1")
}

/// Minimum of `c* M c / c* G c` over `c = (cos θ, e^{iφ} sin θ)` on a grid,
/// refined by shrinking coordinate searches around the best point.
pub fn rayleigh_grid_min_2d(m: &ComplexMatrix, g: &ComplexMatrix, steps: usize) -> f64 {
    let q = |theta: f64, phi: f64| {
        let c = [C64::new(theta.cos(), 0.0), C64::from_polar(theta.sin(), phi)];
        quadratic_form(m, &c) / quadratic_form(g, &c)
    };
    let pi = std::f64::consts::PI;
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for a in 0..=steps {
        let theta = pi * a as f64 / steps as f64;
        for b in 0..2 * steps {
            let phi = pi * b as f64 / steps as f64;
            let v = q(theta, phi);
            if v < best.0 {
                best = (v, theta, phi);
            }
        }
    }
    let mut h = pi / steps as f64;
    while h > 1e-12 {
        let mut improved = false;
        for (dt, dp) in [(h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h)] {
            let v = q(best.1 + dt, best.2 + dp);
            if v < best.0 {
                best = (v, best.1 + dt, best.2 + dp);
                improved = true;
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    best.0
}

/// `exp(-β H)` by a scaled-and-squared Taylor series.
pub fn taylor_exp_neg(h: &HermitianMatrix, beta: f64) -> ComplexMatrix {
    let n = h.dim();
    let mut squarings = 0;
    let mut scaled = h.scale_real(-beta);
    while scaled.frobenius_norm() > 0.5 {
        scaled = scaled.scale_real(0.5);
        squarings += 1;
    }
    let mut term = ComplexMatrix::identity(n);
    let mut sum = ComplexMatrix::identity(n);
    for k in 1..30 {
        term = (&term * &scaled).scale_real(1.0 / k as f64);
        sum = &sum + &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Determinant by partial-pivot LU.
pub fn determinant(a: &ComplexMatrix) -> C64 {
    let n = a.rows();
    let mut m: Vec<Vec<C64>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let mut det = C64::new(1.0, 0.0);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&x, &y| m[x][k].norm().total_cmp(&m[y][k].norm()))
            .unwrap();
        if m[p][k].norm() == 0.0 {
            return C64::new(0.0, 0.0);
        }
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        det *= m[k][k];
        let pivot_row = m[k].clone();
        for row in m.iter_mut().skip(k + 1) {
            let f = row[k] / pivot_row[k];
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(k) {
                *x -= f * p;
            }
        }
    }
    det
}

/// Eigenvalues of a Hermitian matrix with distinct eigenvalues, as roots of
/// `det(H - xI)` located by sign changes on a fine grid and bisection.
pub fn charpoly_roots(h: &HermitianMatrix, samples: usize) -> Vec<f64> {
    let n = h.dim();
    let bound = h.frobenius_norm() + 1.0;
    let f = |x: f64| determinant(&(h.as_matrix() - &ComplexMatrix::identity(n).scale_real(x))).re;
    let mut roots = Vec::new();
    let mut prev_x = -bound;
    let mut prev = f(prev_x);
    for k in 1..=samples {
        let x = -bound + 2.0 * bound * k as f64 / samples as f64;
        let v = f(x);
        if prev == 0.0 {
            roots.push(prev_x);
        } else if prev.signum() != v.signum() && v != 0.0 {
            let (mut lo, mut hi, mut flo) = (prev_x, x, prev);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                let fm = f(mid);
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        prev_x = x;
        prev = v;
    }
    roots
}
