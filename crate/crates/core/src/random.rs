//! Seeded random matrices and permutations.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matrix::{ComplexMatrix, HermitianMatrix, C64};
use crate::perm::Permutation;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for sub-task `index` of a run seeded with `seed`.
pub fn derived_rng(seed: u64, index: u64) -> SeededRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index.wrapping_add(1));
    r
}

/// Distribution of a random Hermitian matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ensemble {
    /// Real symmetric, i.i.d. standard normal on and above the diagonal.
    RealSymmetric,
    /// Real normal diagonal; off-diagonal real and imaginary parts i.i.d.
    /// normal with variance 1/2.
    ComplexHermitian,
}

impl Ensemble {
    pub fn as_str(&self) -> &'static str {
        match self {
            Ensemble::RealSymmetric => "real-symmetric",
            Ensemble::ComplexHermitian => "complex-hermitian",
        }
    }
}

pub fn normal(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn hermitian(m: usize, ensemble: Ensemble, rng: &mut impl Rng) -> HermitianMatrix {
    let mut a = ComplexMatrix::zeros(m, m);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..m {
        a[(i, i)] = C64::new(normal(rng), 0.0);
        for j in i + 1..m {
            let v = match ensemble {
                Ensemble::RealSymmetric => C64::new(normal(rng), 0.0),
                Ensemble::ComplexHermitian => C64::new(s * normal(rng), s * normal(rng)),
            };
            a[(i, j)] = v;
            a[(j, i)] = v.conj();
        }
    }
    HermitianMatrix::new(a).expect("constructed Hermitian")
}

/// Complex Gaussian matrix with i.i.d. unit-variance entries.
pub fn complex_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_fn(rows, cols, |_, _| C64::new(s * normal(rng), s * normal(rng)))
}

pub fn permutation(m: usize, rng: &mut impl Rng) -> Permutation {
    let mut images: Vec<usize> = (0..m).collect();
    images.shuffle(rng);
    Permutation::new(images).expect("shuffle is a permutation")
}
