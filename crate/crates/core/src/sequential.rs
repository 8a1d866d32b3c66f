//! Sequential generator discovery with group-theoretic deflation.
//!
//! Each iteration removes `span{P_g : g ∈ G_k}` from the search basis,
//! solves the double-commutator GEVP on what is left, rounds the optimal
//! generator to the permutation of largest Frobenius overlap, and grows the
//! discovered group by that permutation if it commutes with `R`.

use log::{debug, info};

use crate::assignment::max_assignment;
use crate::basis::{check_independent, BasisElement, GeneratorBasis};
use crate::dc::{select_generator, GevpSolution, ZERO_TOL};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, HermitianMatrix, C64};
use crate::perm::{extend, perm_commutator_norm, Permutation, PermutationGroup, DEFAULT_CLOSURE_CAP};

/// Default relative norm below which a deflated element is dropped.
pub const DEFAULT_DROP_TOL: f64 = 1e-8;

/// Overlaps at or below this are treated as non-positive.
pub const MIN_OVERLAP: f64 = 1e-12;

/// Acceptance threshold `τ` on `δ(P_σ, R)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Threshold {
    /// Exact commutation up to the shared zero tolerance:
    /// `||[P_σ, R]||_F <= ZERO_TOL * ||R||_F`.
    Zero,
    Value(f64),
}

impl Threshold {
    fn accepts(&self, sigma: &Permutation, r: &HermitianMatrix) -> bool {
        let comm = perm_commutator_norm(sigma, r);
        let r_norm = r.frobenius_norm();
        match *self {
            Threshold::Zero => comm <= ZERO_TOL * r_norm,
            Threshold::Value(tau) => comm / ((sigma.degree() as f64).sqrt() * r_norm) <= tau,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SequentialOptions {
    pub threshold: Threshold,
    pub k_max: usize,
    pub drop_tol: f64,
    pub closure_cap: usize,
}

impl Default for SequentialOptions {
    fn default() -> Self {
        Self {
            threshold: Threshold::Zero,
            k_max: 16,
            drop_tol: DEFAULT_DROP_TOL,
            closure_cap: DEFAULT_CLOSURE_CAP,
        }
    }
}

#[derive(Clone, Debug)]
pub struct IterationRecord {
    pub index: usize,
    pub deflated_dim: usize,
    pub deflated_labels: Vec<String>,
    pub gevp: GevpSolution,
    pub rounded: Permutation,
    /// `<A*, P_σ>_F` at the rounded permutation.
    pub overlap: f64,
    /// `δ(P_σ, R)`.
    pub rounded_residual: f64,
    pub accepted: bool,
    pub group_order_before: usize,
    pub group_order_after: usize,
    /// Largest `|<E, P_h>_F| / ||E||_F` over the deflated elements and `A*`,
    /// `h` ranging over the group deflated against.
    pub orthogonality_residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    Rejected,
    IterationCap,
    BasisExhausted,
}

impl Termination {
    pub fn as_str(&self) -> &'static str {
        match self {
            Termination::Rejected => "rejected",
            Termination::IterationCap => "iteration-cap",
            Termination::BasisExhausted => "basis-exhausted",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SubgroupTrace {
    pub records: Vec<IterationRecord>,
    pub final_group: PermutationGroup,
    pub termination: Termination,
}

impl SubgroupTrace {
    pub fn accepted(&self) -> impl Iterator<Item = &IterationRecord> {
        self.records.iter().filter(|r| r.accepted)
    }

    pub fn accepted_count(&self) -> usize {
        self.accepted().count()
    }
}

/// Frobenius-orthonormal system for `span{P_g : g ∈ group}`, as flattened
/// real `M²` vectors.
fn group_span_basis(group: &PermutationGroup) -> Vec<Vec<f64>> {
    let n = group.degree();
    // Permutation matrices of S_M span a space of dimension (M-1)² + 1.
    let full_rank = (n.saturating_sub(1)).pow(2) + 1;
    let floor = 1e-10 * (n as f64).sqrt();
    let mut q: Vec<Vec<f64>> = Vec::new();
    for g in group.elements() {
        if q.len() >= full_rank {
            break;
        }
        let mut v = vec![0.0; n * n];
        for i in 0..n {
            v[i * n + g.apply(i)] = 1.0;
        }
        for _ in 0..2 {
            for qk in &q {
                let dot: f64 = qk.iter().zip(&v).map(|(a, b)| a * b).sum();
                for (x, y) in v.iter_mut().zip(qk) {
                    *x -= dot * y;
                }
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > floor {
            v.iter_mut().for_each(|x| *x /= norm);
            q.push(v);
        }
    }
    q
}

fn project_out(q: &[Vec<f64>], b: &ComplexMatrix) -> ComplexMatrix {
    let n = b.rows();
    let mut e: Vec<C64> = b.as_slice().to_vec();
    for _ in 0..2 {
        for qk in q {
            let dot: C64 = qk.iter().zip(&e).map(|(a, x)| x * *a).sum();
            for (x, a) in e.iter_mut().zip(qk) {
                *x -= dot * *a;
            }
        }
    }
    ComplexMatrix::from_vec(n, n, e).expect("shape preserved")
}

/// Largest `|<E, P_h>_F| / ||E||_F` over `h ∈ group`.
pub fn orthogonality_residual(e: &ComplexMatrix, group: &PermutationGroup) -> f64 {
    let norm = e.frobenius_norm();
    if norm == 0.0 {
        return 0.0;
    }
    group
        .elements()
        .iter()
        .map(|h| (0..e.rows()).map(|i| e[(i, h.apply(i))].conj()).sum::<C64>().norm())
        .fold(0.0, f64::max)
        / norm
}

/// Projects every basis element onto the Frobenius-orthogonal complement of
/// `span{P_g : g ∈ group}`.
///
/// Elements whose projected norm falls below `drop_tol` times their original
/// norm are dropped. If the survivors are linearly dependent, the element
/// whose removal best conditions the rest is dropped (first in label order on
/// ties) until they are independent. Fails with [`Error::BasisExhausted`]
/// when nothing survives.
pub fn deflate_basis(basis: &GeneratorBasis, group: &PermutationGroup, drop_tol: f64) -> Result<GeneratorBasis> {
    if group.degree() != basis.dim() {
        return Err(Error::DegreeMismatch {
            expected: basis.dim(),
            found: group.degree(),
        });
    }
    let q = group_span_basis(group);
    let mut survivors: Vec<BasisElement> = Vec::new();
    for e in basis.elements() {
        let projected = project_out(&q, &e.matrix);
        if projected.frobenius_norm() < drop_tol * e.matrix.frobenius_norm() {
            debug!("deflation drops {}", e.label);
            continue;
        }
        survivors.push(BasisElement::dense(e.label.clone(), projected));
    }
    loop {
        if survivors.is_empty() {
            return Err(Error::BasisExhausted);
        }
        let candidate = GeneratorBasis::new(basis.dim(), survivors.clone())?;
        match independence_margin(&candidate) {
            Ok(_) => return Ok(candidate),
            Err(_) => {
                let k = most_collinear(&survivors)?;
                debug!("deflation drops collinear {}", survivors[k].label);
                survivors.remove(k);
            }
        }
    }
}

fn raw_gram(elements: &[BasisElement]) -> HermitianMatrix {
    let d = elements.len();
    HermitianMatrix::symmetrized(ComplexMatrix::from_fn(d, d, |i, j| {
        crate::matrix::inner_unchecked(&elements[i].matrix, &elements[j].matrix)
    }))
}

fn independence_margin(basis: &GeneratorBasis) -> Result<()> {
    check_independent(&raw_gram(basis.elements()))
}

/// Index whose removal leaves the best-conditioned remainder.
fn most_collinear(elements: &[BasisElement]) -> Result<usize> {
    let mut best = (0, f64::NEG_INFINITY);
    for k in 0..elements.len() {
        let rest: Vec<BasisElement> = elements
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, e)| e.clone())
            .collect();
        let score = if rest.is_empty() {
            f64::INFINITY
        } else {
            let g = raw_gram(&rest);
            let d = g.dim();
            let diag: Vec<f64> = (0..d).map(|i| g[(i, i)].re).collect();
            let scaled = HermitianMatrix::symmetrized(ComplexMatrix::from_fn(d, d, |i, j| {
                g[(i, j)] / (diag[i] * diag[j]).sqrt()
            }));
            crate::matrix::hermitian_eig(&scaled)?.values[0]
        };
        if score > best.1 {
            best = (k, score);
        }
    }
    Ok(best.0)
}

/// Nearest permutation by Frobenius overlap `<A, P_σ>_F`, i.e. the maximum
/// assignment on `Re(A)`.
pub fn round_to_permutation(a: &ComplexMatrix) -> Result<(Permutation, f64)> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    max_assignment(&a.real_part())
}

/// Sequential GEVP with the given threshold and iteration cap, other
/// options at their defaults.
pub fn sequential_select(
    r: &HermitianMatrix,
    basis: &GeneratorBasis,
    threshold: Threshold,
    k_max: usize,
) -> Result<SubgroupTrace> {
    sequential_select_with(
        r,
        basis,
        &SequentialOptions {
            threshold,
            k_max,
            ..SequentialOptions::default()
        },
    )
}

pub fn sequential_select_with(
    r: &HermitianMatrix,
    basis: &GeneratorBasis,
    options: &SequentialOptions,
) -> Result<SubgroupTrace> {
    if options.k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    if let Threshold::Value(t) = options.threshold {
        if t.is_nan() || t < 0.0 {
            return Err(Error::InvalidArgument(format!("tau must be >= 0, got {t}")));
        }
    }
    let m = r.dim();
    if basis.dim() != m {
        return Err(Error::DimensionMismatch {
            op: "sequential_select",
            left: r.shape(),
            right: (basis.dim(), basis.dim()),
        });
    }
    let r_norm = r.frobenius_norm();
    let mut group = PermutationGroup::trivial(m);
    let mut records = Vec::new();
    let mut accepted = 0;

    let termination = loop {
        if accepted >= options.k_max {
            break Termination::IterationCap;
        }
        let deflated = match deflate_basis(basis, &group, options.drop_tol) {
            Ok(b) => b,
            Err(Error::BasisExhausted) => break Termination::BasisExhausted,
            Err(e) => return Err(e),
        };
        let sol = select_generator(r, &deflated)?;
        let orthogonality_residual = deflated
            .matrices()
            .chain(std::iter::once(&sol.generator))
            .map(|e| orthogonality_residual(e, &group))
            .fold(0.0, f64::max);
        let (sigma, overlap) = round_to_permutation(&sol.generator)?;
        let rounded_residual = if r_norm == 0.0 {
            0.0
        } else {
            perm_commutator_norm(&sigma, r) / ((m as f64).sqrt() * r_norm)
        };

        let order_before = group.order();
        let accept = if overlap <= MIN_OVERLAP {
            info!(
                "iteration {}: non-positive overlap {overlap:.3e}; rejecting",
                records.len() + 1
            );
            false
        } else if group.contains(&sigma) {
            info!(
                "iteration {}: rounded {} already in the group; rejecting",
                records.len() + 1,
                sigma.cycle_notation()
            );
            false
        } else {
            options.threshold.accepts(&sigma, r)
        };
        if accept {
            group = extend(&group, &sigma, options.closure_cap)?;
            accepted += 1;
        }
        records.push(IterationRecord {
            index: records.len() + 1,
            deflated_dim: deflated.len(),
            deflated_labels: deflated.labels().iter().map(|s| s.to_string()).collect(),
            gevp: sol,
            rounded: sigma,
            overlap,
            rounded_residual,
            accepted: accept,
            group_order_before: order_before,
            group_order_after: group.order(),
            orthogonality_residual,
        });
        if !accept {
            break Termination::Rejected;
        }
    };

    Ok(SubgroupTrace {
        records,
        final_group: group,
        termination,
    })
}
