//! Permutation-symmetry selection for Hermitian covariance matrices.
//!
//! Given a covariance `R` and a basis of candidate generators `B_k`, the
//! generator `A = Σ c_k B_k` closest to commuting with `R` solves the
//! generalized eigenproblem `M c = λ G c` with `M_ij = <B_i, [R,[R,B_j]]>_F`
//! and `G_ij = <B_i, B_j>_F`. The smallest eigenvalue certifies how far the
//! basis span is from an exact symmetry.
//!
//! Modules:
//! - [`matrix`]: dense complex matrices, Hermitian eigensolver, GEVP.
//! - [`perm`]: permutations, groups, the exhaustive automorphism oracle,
//!   Reynolds projection and orbit-pair classification.
//! - [`basis`]: generator bases and standard catalogs.
//! - [`dc`]: assembly and solution of the double-commutator GEVP.
//! - [`assignment`]: exact linear assignment.
//! - [`sequential`]: deflated sequential search for non-Abelian groups.
//! - [`experiments`], [`identifiability`]: reproduction harnesses.
//! - [`io`]: text formats.

pub mod assignment;
pub mod basis;
pub mod dc;
pub mod error;
pub mod experiments;
pub mod identifiability;
pub mod io;
pub mod matrix;
pub mod perm;
pub mod random;
pub mod sequential;

pub use basis::{standard_catalog, BasisElement, GeneratorBasis};
pub use dc::{select_generator, GevpSolution, ZERO_TOL};
pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, HermitianMatrix, C64};
pub use perm::{Permutation, PermutationGroup};
pub use sequential::{sequential_select, SubgroupTrace, Threshold};
