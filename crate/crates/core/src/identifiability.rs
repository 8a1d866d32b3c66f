//! Harnesses for the two identifiability results: insensitivity of
//! commutant-based criteria along a subgroup chain, and the generative
//! dichotomy for Reynolds-projected random covariances.

use log::warn;

use crate::dc::ZERO_TOL;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};
use crate::perm::{
    aut_bruteforce, classify_identifiability, commutant_basis, in_commutant, orbit_pairs, reynolds_project,
    Identifiability, OrbitPairPartition, PairMode, PermutationGroup, MAX_BRUTE_FORCE_DEGREE,
};
use crate::random::{self, Ensemble};

/// Largest degree for which the generative experiment runs the exhaustive
/// oracle once per trial.
pub const MAX_GENERATIVE_DEGREE: usize = 6;

/// Two orbit values closer than this (relative to the largest) count as a
/// collision.
pub const COLLISION_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct LatticeReport {
    /// `||P_{G1}(R) - R||_F / ||R||_F`.
    pub residual_small: f64,
    /// `||P_{G2}(R) - R||_F / ||R||_F`.
    pub residual_large: f64,
    /// `R` commutes with every generator of the smaller group.
    pub in_small_commutant: bool,
    /// Every orbit indicator of the larger group lies in the smaller group's
    /// commutant.
    pub commutant_contained: bool,
}

impl LatticeReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.residual_small <= tol && self.residual_large <= tol && self.in_small_commutant && self.commutant_contained
    }
}

/// Projects a random Hermitian matrix onto the commutant of the larger group
/// and checks that the smaller group's projection leaves it unchanged.
pub fn lattice_insensitivity_check(
    small: &PermutationGroup,
    large: &PermutationGroup,
    seed: u64,
) -> Result<LatticeReport> {
    if small.degree() != large.degree() {
        return Err(Error::DegreeMismatch {
            expected: large.degree(),
            found: small.degree(),
        });
    }
    if large.degree() > MAX_BRUTE_FORCE_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: large.degree(),
            max: MAX_BRUTE_FORCE_DEGREE,
        });
    }
    if !small.is_subgroup_of(large) {
        return Err(Error::NotSubgroup);
    }
    let m = large.degree();
    let w = random::hermitian(m, Ensemble::ComplexHermitian, &mut random::rng(seed));
    let r = reynolds_project(large, &w)?;
    let norm = r.frobenius_norm().max(f64::MIN_POSITIVE);
    let residual_small = (&reynolds_project(small, &r)? - &r).frobenius_norm() / norm;
    let residual_large = (&reynolds_project(large, &r)? - &r).frobenius_norm() / norm;
    let commutant_contained = commutant_basis(&orbit_pairs(large))
        .iter()
        .all(|b| in_commutant(small, b, ZERO_TOL));
    Ok(LatticeReport {
        residual_small,
        residual_large,
        in_small_commutant: in_commutant(small, &r, 1e-12),
        commutant_contained,
    })
}

/// Two distinct orbit blocks whose projected values coincide.
#[derive(Clone, Debug, PartialEq)]
pub struct Collision {
    pub trial: usize,
    pub block_a: usize,
    pub block_b: usize,
    pub gap: f64,
}

#[derive(Clone, Debug)]
pub struct TrialOutcome {
    pub aut_order: usize,
    /// `Aut(R) = G*`.
    pub exact: bool,
    /// `Aut(R) ⊇ H` for the predicted supergroup (always true when
    /// identifiable).
    pub contains_prediction: bool,
}

#[derive(Clone, Debug)]
pub struct GenerativeReport {
    pub ensemble: Ensemble,
    pub mode: PairMode,
    pub prediction: Identifiability,
    pub trials: Vec<TrialOutcome>,
    pub collisions: Vec<Collision>,
}

impl GenerativeReport {
    pub fn exact_count(&self) -> usize {
        self.trials.iter().filter(|t| t.exact).count()
    }

    pub fn containment_count(&self) -> usize {
        self.trials.iter().filter(|t| t.contains_prediction).count()
    }

    pub fn is_identifiable(&self) -> bool {
        self.prediction == Identifiability::Identifiable
    }
}

/// Orbit mode matching the symmetry of the ensemble's samples.
pub fn pair_mode_for(ensemble: Ensemble) -> PairMode {
    match ensemble {
        Ensemble::RealSymmetric => PairMode::TransposeMerged,
        Ensemble::ComplexHermitian => PairMode::Raw,
    }
}

/// Draws `R = P_{G*}(W)` for `trials` independent `W` and compares the
/// exhaustive `Aut(R)` with the classifier's prediction.
pub fn generative_experiment(
    gstar: &PermutationGroup,
    trials: usize,
    seed: u64,
    ensemble: Ensemble,
) -> Result<GenerativeReport> {
    let m = gstar.degree();
    if m > MAX_GENERATIVE_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: m,
            max: MAX_GENERATIVE_DEGREE,
        });
    }
    let mode = pair_mode_for(ensemble);
    let prediction = classify_identifiability(gstar, mode)?;
    let partition = match mode {
        PairMode::Raw => orbit_pairs(gstar),
        PairMode::TransposeMerged => orbit_pairs(gstar).merged_with_transpose(),
    };
    let mut outcomes = Vec::with_capacity(trials);
    let mut collisions = Vec::new();
    for t in 0..trials {
        let w = random::hermitian(m, ensemble, &mut random::derived_rng(seed, t as u64));
        let r = crate::matrix::HermitianMatrix::new(reynolds_project(gstar, &w)?)?;
        for c in orbit_collisions(&r, &partition) {
            warn!("trial {t}: orbit blocks {} and {} collide (gap {:.3e})", c.0, c.1, c.2);
            collisions.push(Collision {
                trial: t,
                block_a: c.0,
                block_b: c.1,
                gap: c.2,
            });
        }
        let aut = aut_bruteforce(&r, ZERO_TOL)?;
        let contains_prediction = match &prediction {
            Identifiability::Identifiable => gstar.is_subgroup_of(&aut),
            Identifiability::Ambiguous(h) => h.is_subgroup_of(&aut),
        };
        if !contains_prediction {
            warn!("trial {t}: Aut(R) of order {} misses the predicted group", aut.order());
        }
        outcomes.push(TrialOutcome {
            aut_order: aut.order(),
            exact: &aut == gstar,
            contains_prediction,
        });
    }
    Ok(GenerativeReport {
        ensemble,
        mode,
        prediction,
        trials: outcomes,
        collisions,
    })
}

/// Pairs of distinct blocks whose mean values agree within
/// `COLLISION_TOL` of the largest value.
fn orbit_collisions(r: &ComplexMatrix, partition: &OrbitPairPartition) -> Vec<(usize, usize, f64)> {
    let n = partition.degree();
    let b = partition.num_blocks();
    let mut sums = vec![C64::new(0.0, 0.0); b];
    let mut counts = vec![0usize; b];
    for i in 0..n {
        for j in 0..n {
            let k = partition.block(i, j);
            sums[k] += r[(i, j)];
            counts[k] += 1;
        }
    }
    let values: Vec<C64> = sums.iter().zip(&counts).map(|(s, &c)| s / c as f64).collect();
    let scale = values
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut out = Vec::new();
    for a in 0..b {
        for c in a + 1..b {
            let gap = (values[a] - values[c]).norm();
            if gap <= COLLISION_TOL * scale {
                out.push((a, c, gap));
            }
        }
    }
    out
}
