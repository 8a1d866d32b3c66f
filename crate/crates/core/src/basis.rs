//! Candidate generator bases.

use std::f64::consts::PI;

use log::warn;

use crate::error::{Error, Result};
use crate::matrix::{self, ComplexMatrix, HermitianMatrix, C64};
use crate::perm::{perm_matrix, Permutation};

/// How a basis element is structured. Sparse kinds let the assembly work on
/// row and column permutations of `R` instead of dense products.
#[derive(Clone, Debug, PartialEq)]
pub enum Structure {
    Permutation(Permutation),
    /// `P_σ - I`.
    PermutationDifference(Permutation),
    Dense,
}

impl Structure {
    /// The element as a signed sum of permutation matrices, when sparse.
    pub(crate) fn perm_terms(&self) -> Option<Vec<(f64, Permutation)>> {
        match self {
            Structure::Permutation(p) => Some(vec![(1.0, p.clone())]),
            Structure::PermutationDifference(p) => {
                Some(vec![(1.0, p.clone()), (-1.0, Permutation::identity(p.degree()))])
            }
            Structure::Dense => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Permutation(_) => "permutation",
            Structure::PermutationDifference(_) => "permutation-difference",
            Structure::Dense => "dense",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BasisElement {
    pub label: String,
    pub matrix: ComplexMatrix,
    pub structure: Structure,
}

impl BasisElement {
    pub fn permutation(label: impl Into<String>, p: Permutation) -> Self {
        Self {
            label: label.into(),
            matrix: perm_matrix(&p),
            structure: Structure::Permutation(p),
        }
    }

    pub fn dense(label: impl Into<String>, matrix: ComplexMatrix) -> Self {
        Self {
            label: label.into(),
            matrix,
            structure: Structure::Dense,
        }
    }
}

/// Ordered, labelled list of `d` candidate generators `B_k`.
#[derive(Clone, Debug)]
pub struct GeneratorBasis {
    dim: usize,
    elements: Vec<BasisElement>,
}

impl GeneratorBasis {
    pub fn new(dim: usize, elements: Vec<BasisElement>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyBasis);
        }
        for e in &elements {
            if e.matrix.shape() != (dim, dim) {
                return Err(Error::DimensionMismatch {
                    op: "basis element",
                    left: (dim, dim),
                    right: e.matrix.shape(),
                });
            }
            e.matrix.check_finite()?;
        }
        Ok(Self { dim, elements })
    }

    /// Dense basis from bare matrices, labelled `B0, B1, ...`.
    pub fn from_matrices(matrices: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = matrices.first().ok_or(Error::EmptyBasis)?.rows();
        let elements = matrices
            .into_iter()
            .enumerate()
            .map(|(k, m)| BasisElement::dense(format!("B{k}"), m))
            .collect();
        Self::new(dim, elements)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn matrices(&self) -> impl Iterator<Item = &ComplexMatrix> {
        self.elements.iter().map(|e| &e.matrix)
    }

    pub fn labels(&self) -> Vec<&str> {
        self.elements.iter().map(|e| e.label.as_str()).collect()
    }

    /// Permutation-term expansion of every element, if all are sparse.
    pub(crate) fn all_perm_terms(&self) -> Option<Vec<Vec<(f64, Permutation)>>> {
        self.elements.iter().map(|e| e.structure.perm_terms()).collect()
    }

    /// `Σ c_k B_k`.
    pub fn combine(&self, coefficients: &[C64]) -> ComplexMatrix {
        assert_eq!(coefficients.len(), self.len());
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for (e, &c) in self.elements.iter().zip(coefficients) {
            if c == C64::new(0.0, 0.0) {
                continue;
            }
            match &e.structure {
                Structure::Permutation(p) => {
                    for i in 0..self.dim {
                        out[(i, p.apply(i))] += c;
                    }
                }
                Structure::PermutationDifference(p) => {
                    for i in 0..self.dim {
                        out[(i, p.apply(i))] += c;
                        out[(i, i)] -= c;
                    }
                }
                Structure::Dense => {
                    out = &out + &e.matrix.scale(c);
                }
            }
        }
        out
    }
}

/// Permutation matrix of the `M`-cycle, with ones at `(i, i+1 mod M)`.
pub fn cyclic_shift(m: usize) -> ComplexMatrix {
    perm_matrix(&Permutation::cycle(m))
}

pub fn reflection_perm(m: usize) -> Permutation {
    Permutation::new((0..m).rev().collect()).expect("reversal is a permutation")
}

/// Anti-identity `J`.
pub fn reflection(m: usize) -> ComplexMatrix {
    perm_matrix(&reflection_perm(m))
}

/// Exchanges `{0..M/2-1}` with `{M/2..M-1}` elementwise; `None` for odd `M`.
pub fn block_swap_perm(m: usize) -> Option<Permutation> {
    if m < 2 || !m.is_multiple_of(2) {
        return None;
    }
    let h = m / 2;
    Permutation::new((0..m).map(|i| if i < h { i + h } else { i - h }).collect()).ok()
}

/// Generic five-element permutation catalog: cyclic shift, reflection,
/// transposition `(0 1)`, half-block swap, and 3-cycle `(0 1 2)`.
///
/// Members that do not exist at this `M` (odd `M` for the block swap, `M < 3`
/// for the 3-cycle) or duplicate an earlier member are dropped with a warning.
pub fn standard_catalog(m: usize) -> Result<GeneratorBasis> {
    if m == 0 {
        return Err(Error::Empty);
    }
    let mut candidates: Vec<(&str, Option<Permutation>)> = vec![
        ("cyclic-shift", Some(Permutation::cycle(m))),
        ("reflection", Some(reflection_perm(m))),
        (
            "transposition",
            (m >= 2).then(|| Permutation::from_cycles(m, &[&[0, 1]]).expect("valid")),
        ),
        ("block-swap", block_swap_perm(m)),
        (
            "3-cycle",
            (m >= 3).then(|| Permutation::from_cycles(m, &[&[0, 1, 2]]).expect("valid")),
        ),
    ];
    let mut kept: Vec<BasisElement> = Vec::new();
    for (label, p) in candidates.drain(..) {
        let Some(p) = p else {
            warn!("standard catalog: {label} does not exist at M={m}; dropped");
            continue;
        };
        if p.is_identity() {
            warn!("standard catalog: {label} is the identity at M={m}; dropped");
            continue;
        }
        if kept.iter().any(|e| e.structure == Structure::Permutation(p.clone())) {
            warn!("standard catalog: {label} duplicates an earlier member at M={m}; dropped");
            continue;
        }
        let element = BasisElement::permutation(label, p);
        let mut trial = kept.clone();
        trial.push(element.clone());
        if gram(&GeneratorBasis::new(m, trial)?).is_err() {
            warn!("standard catalog: {label} is linearly dependent on earlier members at M={m}; dropped");
            continue;
        }
        kept.push(element);
    }
    GeneratorBasis::new(m, kept)
}

/// Basis of `P_σ - I`, labelled by cycle notation.
pub fn perm_diff_basis(perms: &[Permutation]) -> Result<GeneratorBasis> {
    let first = perms.first().ok_or(Error::EmptyBasis)?;
    let m = first.degree();
    let mut elements = Vec::with_capacity(perms.len());
    for p in perms {
        if p.degree() != m {
            return Err(Error::DegreeMismatch {
                expected: m,
                found: p.degree(),
            });
        }
        if p.is_identity() {
            return Err(Error::IdentityInBasis);
        }
        let matrix = &perm_matrix(p) - &ComplexMatrix::identity(m);
        elements.push(BasisElement {
            label: format!("P{} - I", p.cycle_notation()),
            matrix,
            structure: Structure::PermutationDifference(p.clone()),
        });
    }
    GeneratorBasis::new(m, elements)
}

/// Dechirp phases `U(ψ) = diag(exp(-iπψn²))`.
pub fn dechirp_diagonal(m: usize, psi: f64) -> Vec<C64> {
    (0..m)
        .map(|n| C64::from_polar(1.0, -PI * psi * (n * n) as f64))
        .collect()
}

/// Chirp-conjugated shift `U(ψ) P U(ψ)*`.
pub fn chirp_generator(m: usize, psi: f64) -> ComplexMatrix {
    let u = dechirp_diagonal(m, psi);
    let mut b = ComplexMatrix::zeros(m, m);
    for n in 0..m {
        let k = (n + 1) % m;
        b[(n, k)] = u[n] * u[k].conj();
    }
    b
}

/// Gram matrix `G_ij = Tr(B_i* B_j)`. Fails with the near-null combination
/// when the basis is (numerically) dependent.
pub fn gram(basis: &GeneratorBasis) -> Result<HermitianMatrix> {
    let d = basis.len();
    let g = if let Some(terms) = basis.all_perm_terms() {
        ComplexMatrix::from_fn(d, d, |i, j| C64::new(perm_terms_inner(&terms[i], &terms[j]), 0.0))
    } else {
        let ms: Vec<&ComplexMatrix> = basis.matrices().collect();
        ComplexMatrix::from_fn(d, d, |i, j| matrix::inner_unchecked(ms[i], ms[j]))
    };
    let g = HermitianMatrix::symmetrized(g);
    check_independent(&g)?;
    Ok(g)
}

/// `<Σ a_k P_k, Σ b_l P_l>_F` for real-weighted permutation sums.
pub(crate) fn perm_terms_inner(a: &[(f64, Permutation)], b: &[(f64, Permutation)]) -> f64 {
    let mut s = 0.0;
    for (wa, pa) in a {
        for (wb, pb) in b {
            let agree = pa.images().iter().zip(pb.images()).filter(|(x, y)| x == y).count();
            s += wa * wb * agree as f64;
        }
    }
    s
}

/// Relative floor on the smallest eigenvalue of the unit-diagonal Gram.
pub const INDEPENDENCE_TOL: f64 = 1e-10;

pub(crate) fn check_independent(g: &HermitianMatrix) -> Result<()> {
    let d = g.dim();
    let diag: Vec<f64> = (0..d).map(|i| g[(i, i)].re).collect();
    if let Some(k) = diag.iter().position(|&x| x.is_nan() || x <= 0.0) {
        let mut null_vector = vec![C64::new(0.0, 0.0); d];
        null_vector[k] = C64::new(1.0, 0.0);
        return Err(Error::DependentBasis { null_vector });
    }
    let scaled = HermitianMatrix::symmetrized(ComplexMatrix::from_fn(d, d, |i, j| {
        g[(i, j)] / (diag[i] * diag[j]).sqrt()
    }));
    let eig = matrix::hermitian_eig(&scaled)?;
    if eig.values[0] <= INDEPENDENCE_TOL {
        let v = eig.vectors.column(0);
        let null_vector = v.iter().zip(&diag).map(|(x, s)| x / s.sqrt()).collect();
        return Err(Error::DependentBasis { null_vector });
    }
    Ok(())
}
