//! Reproduction harnesses: graph diffusion covariances and their
//! automorphism tables, the chirp covariance and its rate sweep, and the
//! timing benchmark.

use std::f64::consts::PI;
use std::time::Instant;

use log::{info, warn};
use rand::Rng;

use crate::basis::{chirp_generator, dechirp_diagonal, standard_catalog, BasisElement, GeneratorBasis, Structure};
use crate::dc::{residual, select_generator, GevpSolution, ZERO_TOL};
use crate::error::{Error, Result};
use crate::matrix::{matrix_exp_neg, shifted_inverse, ComplexMatrix, HermitianMatrix, C64};
use crate::perm::{aut_bruteforce, perm_commutator_norm, Permutation, PermutationGroup, MAX_BRUTE_FORCE_DEGREE};
use crate::random::{self, SeededRng};
use crate::sequential::round_to_permutation;

/// Diffusion time used when none is given.
pub const DEFAULT_BETA: f64 = 1.0;

/// Labels accepted by [`make_graph`].
pub const GRAPH_LABELS: [&str; 6] = ["C6", "K4", "P6", "prism", "K3", "S5"];

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    label: String,
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Edges are stored as `(min, max)` pairs in sorted order. Self-loops,
    /// duplicates and out-of-range endpoints are rejected.
    pub fn new(label: impl Into<String>, vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::Empty);
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= vertices || b >= vertices {
                return Err(Error::InvalidArgument(format!(
                    "edge ({a}, {b}) out of range for {vertices} vertices"
                )));
            }
            if a == b {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {a}")));
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        if normalized.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("duplicate edge".into()));
        }
        Ok(Self {
            label: label.into(),
            vertices,
            edges: normalized,
        })
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!(
                "cycle needs at least 3 vertices, got {n}"
            )));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(format!("C{n}"), n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(format!("P{n}"), n, &edges)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Self::new(format!("K{n}"), n, &edges)
    }

    /// Star with `n - 1` leaves around `hub`.
    pub fn star(n: usize, hub: usize) -> Result<Self> {
        let edges: Vec<_> = (0..n).filter(|&v| v != hub).map(|v| (hub, v)).collect();
        Self::new(format!("S{n}"), n, &edges)
    }

    /// Erdős–Rényi graph with edge probability `p`.
    pub fn random(n: usize, p: f64, rng: &mut impl Rng) -> Result<Self> {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.random::<f64>() < p {
                    edges.push((i, j));
                }
            }
        }
        Self::new(format!("G({n},{p})"), n, &edges)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }
}

/// One of the six study graphs.
///
/// The star puts its hub at vertex 2 so that the reversal `i -> 4 - i` and
/// the transposition `(0 1)` of the standard catalog are automorphisms. The
/// prism joins triangles `{0,1,2}` and `{3,4,5}` by `i <-> i+3`.
pub fn make_graph(label: &str) -> Result<Graph> {
    let g = match label {
        "C6" => Graph::cycle(6)?,
        "K4" => Graph::complete(4)?,
        "P6" => Graph::path(6)?,
        "K3" => Graph::complete(3)?,
        "S5" | "S5-star" => Graph::new("S5", 5, &[(2, 0), (2, 1), (2, 3), (2, 4)])?,
        "prism" => Graph::new(
            "prism",
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        )?,
        other => return Err(Error::UnknownGraph(other.to_string())),
    };
    Ok(g)
}

/// Degree matrix minus adjacency.
pub fn laplacian(g: &Graph) -> HermitianMatrix {
    let n = g.vertices();
    let mut l = vec![0.0; n * n];
    for &(a, b) in g.edges() {
        l[a * n + b] -= 1.0;
        l[b * n + a] -= 1.0;
        l[a * n + a] += 1.0;
        l[b * n + b] += 1.0;
    }
    HermitianMatrix::from_real(n, &l).expect("Laplacian is symmetric")
}

/// Heat kernel `exp(-β L)`.
pub fn diffusion_covariance(g: &Graph, beta: f64) -> Result<HermitianMatrix> {
    if beta.is_nan() || beta <= 0.0 {
        return Err(Error::InvalidArgument(format!("beta must be positive, got {beta}")));
    }
    matrix_exp_neg(&laplacian(g), beta)
}

/// Regularized Laplacian inverse `(I + L)^{-1}`.
pub fn resolvent_covariance(g: &Graph) -> Result<HermitianMatrix> {
    shifted_inverse(&laplacian(g))
}

/// One line of the automorphism table.
#[derive(Clone, Debug)]
pub struct GeneratorRow {
    pub label: String,
    pub permutation: Permutation,
    pub residual: f64,
    /// `δ <= ZERO_TOL`.
    pub declared: bool,
    /// Member of the brute-force automorphism group.
    pub oracle: bool,
}

#[derive(Clone, Debug)]
pub struct GraphAutReport {
    pub graph: String,
    pub beta: f64,
    pub aut: PermutationGroup,
    pub rows: Vec<GeneratorRow>,
    /// Index of the smallest-residual row (first on ties).
    pub min_row: usize,
    pub selection: GevpSolution,
    pub selection_rounded: Permutation,
    pub selection_rounded_in_aut: bool,
}

impl GraphAutReport {
    /// Residual classification agrees with the oracle on every row.
    pub fn consistent(&self) -> bool {
        self.rows.iter().all(|r| r.declared == r.oracle)
    }

    /// Smallest residual among non-automorphisms, `+inf` if there are none.
    pub fn separation_margin(&self) -> f64 {
        self.rows
            .iter()
            .filter(|r| !r.oracle)
            .map(|r| r.residual)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn min_row_is_automorphism(&self) -> bool {
        self.rows[self.min_row].oracle
    }
}

/// Residual of each standard-catalog generator against the diffusion
/// covariance, cross-checked with the exhaustive automorphism group, plus
/// the single-generator selection over the whole catalog.
pub fn graph_aut_experiment(g: &Graph, beta: f64) -> Result<GraphAutReport> {
    let m = g.vertices();
    if m > MAX_BRUTE_FORCE_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: m,
            max: MAX_BRUTE_FORCE_DEGREE,
        });
    }
    let r = diffusion_covariance(g, beta)?;
    let aut = aut_bruteforce(&r, ZERO_TOL)?;
    let catalog = standard_catalog(m)?;
    let r_norm = r.frobenius_norm();
    let mut rows = Vec::with_capacity(catalog.len());
    for e in catalog.elements() {
        let Structure::Permutation(p) = &e.structure else {
            unreachable!("standard catalog is permutation-structured")
        };
        let delta = perm_commutator_norm(p, &r) / ((m as f64).sqrt() * r_norm);
        rows.push(GeneratorRow {
            label: e.label.clone(),
            permutation: p.clone(),
            residual: delta,
            declared: delta <= ZERO_TOL,
            oracle: aut.contains(p),
        });
    }
    let min_row = (0..rows.len())
        .min_by(|&a, &b| rows[a].residual.total_cmp(&rows[b].residual))
        .expect("catalog is nonempty");
    let selection = select_generator(&r, &catalog)?;
    let (rounded, _) = round_to_permutation(&selection.generator)?;
    let rounded_in_aut = aut.contains(&rounded);
    info!(
        "{}: |Aut| = {}, min-residual generator {} (δ = {:.3e})",
        g.label(),
        aut.order(),
        rows[min_row].label,
        rows[min_row].residual
    );
    Ok(GraphAutReport {
        graph: g.label().to_string(),
        beta,
        aut,
        rows,
        min_row,
        selection,
        selection_rounded: rounded,
        selection_rounded_in_aut: rounded_in_aut,
    })
}

/// Log-uniform spectrum in `[0.5, 5]`.
pub fn default_chirp_spectrum(m: usize, seed: u64) -> Vec<f64> {
    let mut rng = random::rng(seed);
    let (lo, hi) = (0.5f64.ln(), 5.0f64.ln());
    (0..m).map(|_| (lo + (hi - lo) * rng.random::<f64>()).exp()).collect()
}

/// How the chirp covariance is formed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ChirpMode {
    Population,
    /// Empirical covariance of this many seeded snapshots.
    Sample {
        snapshots: usize,
        seed: u64,
    },
}

/// `U(ψ0) C U(ψ0)* + σ² I` where `C` is the circulant with DFT eigenvalues
/// `spectrum` and `σ² = mean(spectrum) / 10^(snr_db/10)` (no noise term when
/// `snr_db` is `None`). In sample mode the same model is drawn and its
/// empirical covariance returned.
pub fn chirp_covariance(psi0: f64, spectrum: &[f64], snr_db: Option<f64>, mode: ChirpMode) -> Result<HermitianMatrix> {
    let m = spectrum.len();
    if m == 0 {
        return Err(Error::Empty);
    }
    if let Some(k) = spectrum.iter().position(|s| !(s.is_finite() && *s > 0.0)) {
        return Err(Error::InvalidArgument(format!(
            "spectrum entry {k} must be positive and finite"
        )));
    }
    let hi = spectrum.iter().cloned().fold(f64::MIN, f64::max);
    let lo = spectrum.iter().cloned().fold(f64::MAX, f64::min);
    if hi - lo <= 1e-12 * hi {
        return Err(Error::FlatSpectrum);
    }
    if !psi0.is_finite() {
        return Err(Error::InvalidArgument("psi0 must be finite".into()));
    }
    let noise = match snr_db {
        Some(db) if db.is_finite() => spectrum.iter().sum::<f64>() / m as f64 / 10f64.powf(db / 10.0),
        Some(db) => return Err(Error::InvalidArgument(format!("snr_db must be finite, got {db}"))),
        None => 0.0,
    };
    let u = dechirp_diagonal(m, psi0);
    match mode {
        ChirpMode::Population => {
            let c = circulant_first_column(spectrum);
            let r = ComplexMatrix::from_fn(m, m, |j, k| {
                let base = u[j] * c[(j + m - k) % m] * u[k].conj();
                if j == k {
                    base + noise
                } else {
                    base
                }
            });
            HermitianMatrix::new(r)
        }
        ChirpMode::Sample { snapshots, seed } => {
            if snapshots == 0 {
                return Err(Error::InvalidArgument("snapshots must be at least 1".into()));
            }
            let mut rng = random::rng(seed);
            Ok(sample_covariance(&u, spectrum, noise, snapshots, &mut rng))
        }
    }
}

/// `c[d] = (1/M) Σ_k s_k exp(2πi k d / M)`, so `C_{jk} = c[(j - k) mod M]`.
fn circulant_first_column(spectrum: &[f64]) -> Vec<C64> {
    let m = spectrum.len();
    (0..m)
        .map(|d| {
            spectrum
                .iter()
                .enumerate()
                .map(|(k, s)| C64::from_polar(*s, 2.0 * PI * ((k * d) % m) as f64 / m as f64))
                .sum::<C64>()
                / m as f64
        })
        .collect()
}

fn sample_covariance(
    u: &[C64],
    spectrum: &[f64],
    noise: f64,
    snapshots: usize,
    rng: &mut SeededRng,
) -> HermitianMatrix {
    let m = u.len();
    let inv_sqrt_m = 1.0 / (m as f64).sqrt();
    let twiddle: Vec<C64> = (0..m)
        .map(|k| C64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64))
        .collect();
    let amp: Vec<f64> = spectrum.iter().map(|s| s.sqrt()).collect();
    let sigma = noise.sqrt();
    let half = std::f64::consts::FRAC_1_SQRT_2;
    let mut acc = ComplexMatrix::zeros(m, m);
    let mut x = vec![C64::new(0.0, 0.0); m];
    for _ in 0..snapshots {
        let xi: Vec<C64> = (0..m)
            .map(|k| C64::new(half * random::normal(rng), half * random::normal(rng)) * amp[k])
            .collect();
        for (j, xj) in x.iter_mut().enumerate() {
            let s: C64 = xi.iter().enumerate().map(|(k, v)| v * twiddle[(k * j) % m]).sum();
            let w = C64::new(half * random::normal(rng), half * random::normal(rng));
            *xj = u[j] * s * inv_sqrt_m + w * sigma;
        }
        for j in 0..m {
            for k in 0..m {
                acc[(j, k)] += x[j] * x[k].conj();
            }
        }
    }
    HermitianMatrix::new(acc.scale_real(1.0 / snapshots as f64)).expect("outer-product sum is Hermitian")
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub grid: Vec<f64>,
    pub lambda_min: Vec<f64>,
    pub argmin_psi: f64,
}

impl SweepResult {
    pub fn argmin_index(&self) -> usize {
        (0..self.grid.len())
            .min_by(|&a, &b| self.lambda_min[a].total_cmp(&self.lambda_min[b]))
            .expect("grid is nonempty")
    }
}

/// `λ_min(ψ)` of the one-element basis `{B(ψ)}` on `steps` evenly spaced
/// points of `[psi_lo, psi_hi]`. For a single element the pencil is scalar,
/// `λ = ||[B, R]||_F² / ||B||_F²`, evaluated here in `O(M²)` from the
/// weighted-shift structure of `B`.
pub fn chirp_sweep(r: &HermitianMatrix, psi_lo: f64, psi_hi: f64, steps: usize) -> Result<SweepResult> {
    if steps < 2 {
        return Err(Error::InvalidArgument(format!(
            "sweep needs at least 2 steps, got {steps}"
        )));
    }
    if !(psi_lo.is_finite() && psi_hi.is_finite()) {
        return Err(Error::InvalidArgument("sweep bounds must be finite".into()));
    }
    let m = r.dim();
    let grid: Vec<f64> = (0..steps)
        .map(|k| psi_lo + (psi_hi - psi_lo) * k as f64 / (steps - 1) as f64)
        .collect();
    let lambda_min: Vec<f64> = grid
        .iter()
        .map(|&psi| chirp_commutator_sqr(r, psi) / m as f64)
        .collect();
    let mut out = SweepResult {
        grid,
        lambda_min,
        argmin_psi: 0.0,
    };
    out.argmin_psi = out.grid[out.argmin_index()];
    Ok(out)
}

/// `||[B(ψ), R]||_F²` with `B_{n, n+1} = u_n conj(u_{n+1})`.
fn chirp_commutator_sqr(r: &HermitianMatrix, psi: f64) -> f64 {
    let m = r.dim();
    let u = dechirp_diagonal(m, psi);
    let next = |n: usize| (n + 1) % m;
    let prev = |n: usize| (n + m - 1) % m;
    let w: Vec<C64> = (0..m).map(|n| u[n] * u[next(n)].conj()).collect();
    let mut s = 0.0;
    for i in 0..m {
        for j in 0..m {
            let br = w[i] * r[(next(i), j)];
            let rb = r[(i, prev(j))] * w[prev(j)];
            s += (br - rb).norm_sqr();
        }
    }
    s
}

/// Dense single-element check of the sweep value at one `ψ`, through the
/// general selection path.
pub fn chirp_lambda_dense(r: &HermitianMatrix, psi: f64) -> Result<f64> {
    let b = chirp_generator(r.dim(), psi);
    let basis = GeneratorBasis::new(r.dim(), vec![BasisElement::dense(format!("B({psi})"), b)])?;
    Ok(select_generator(r, &basis)?.lambda_min)
}

/// `d`-element permutation catalog: the standard catalog, extended with
/// powers of the cyclic shift or truncated.
pub fn permutation_catalog(m: usize, d: usize) -> Result<GeneratorBasis> {
    if d == 0 {
        return Err(Error::EmptyBasis);
    }
    let mut elements: Vec<BasisElement> = standard_catalog(m)?.elements().to_vec();
    elements.truncate(d);
    let shift = Permutation::cycle(m);
    let mut k = 2;
    while elements.len() < d && k < m {
        let p = shift.pow(k);
        let candidate = BasisElement::permutation(format!("shift^{k}"), p.clone());
        let duplicate = elements
            .iter()
            .any(|e| e.structure == Structure::Permutation(p.clone()));
        if !duplicate {
            let mut trial = elements.clone();
            trial.push(candidate);
            if crate::basis::gram(&GeneratorBasis::new(m, trial.clone())?).is_ok() {
                elements = trial;
            }
        }
        k += 1;
    }
    if elements.len() < d {
        return Err(Error::InvalidArgument(format!(
            "cannot build {d} independent permutation generators at M={m}"
        )));
    }
    GeneratorBasis::new(m, elements)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BenchMethod {
    DcGevp,
    LibrarySearch,
    ExhaustiveOracle,
}

impl BenchMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            BenchMethod::DcGevp => "dc-gevp",
            BenchMethod::LibrarySearch => "library-search",
            BenchMethod::ExhaustiveOracle => "exhaustive-oracle",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub method: BenchMethod,
    pub m: usize,
    pub d: usize,
    pub median_secs: f64,
}

/// Median wall time of one call of `f` over `repeats` runs.
pub fn median_time<T>(repeats: usize, mut f: impl FnMut() -> T) -> f64 {
    let mut times: Vec<f64> = (0..repeats.max(1))
        .map(|_| {
            let start = Instant::now();
            std::hint::black_box(f());
            start.elapsed().as_secs_f64()
        })
        .collect();
    times.sort_by(f64::total_cmp);
    let n = times.len();
    if n % 2 == 1 {
        times[n / 2]
    } else {
        0.5 * (times[n / 2 - 1] + times[n / 2])
    }
}

/// Times the three selection strategies on random real symmetric
/// covariances: the DC-GEVP with a `d`-element permutation catalog, direct
/// dense residuals of each catalog generator, and (within the degree cap)
/// the exhaustive automorphism search.
pub fn benchmark(m_values: &[usize], d: usize, repeats: usize, seed: u64) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for (idx, &m) in m_values.iter().enumerate() {
        let mut rng = random::derived_rng(seed, idx as u64);
        let r = random::hermitian(m, random::Ensemble::RealSymmetric, &mut rng);
        let catalog = permutation_catalog(m, d)?;
        select_generator(&r, &catalog)?;
        let t = median_time(repeats, || select_generator(&r, &catalog));
        rows.push(BenchRow {
            method: BenchMethod::DcGevp,
            m,
            d,
            median_secs: t,
        });
        let dense: Vec<ComplexMatrix> = catalog.matrices().cloned().collect();
        let t = median_time(repeats, || {
            dense.iter().map(|a| residual(a, &r)).collect::<Result<Vec<f64>>>()
        });
        rows.push(BenchRow {
            method: BenchMethod::LibrarySearch,
            m,
            d,
            median_secs: t,
        });
        if m <= MAX_BRUTE_FORCE_DEGREE {
            let t = median_time(repeats, || aut_bruteforce(&r, ZERO_TOL));
            rows.push(BenchRow {
                method: BenchMethod::ExhaustiveOracle,
                m,
                d,
                median_secs: t,
            });
        } else {
            warn!("exhaustive oracle skipped at M={m}");
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::hermitian_eig;

    #[test]
    fn graph_sizes() {
        assert_eq!(make_graph("C6").unwrap().edges().len(), 6);
        assert_eq!(make_graph("K4").unwrap().edges().len(), 6);
        assert_eq!(make_graph("prism").unwrap().edges().len(), 9);
        assert_eq!(make_graph("S5").unwrap().vertices(), 5);
        assert_eq!(make_graph("K7").unwrap_err(), Error::UnknownGraph("K7".into()));
        assert!(Graph::new("loop", 2, &[(1, 1)]).is_err());
        assert!(Graph::new("dup", 2, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn laplacian_examples() {
        let l = laplacian(&Graph::new("e", 2, &[(0, 1)]).unwrap());
        assert_eq!(l.real_part(), vec![vec![1.0, -1.0], vec![-1.0, 1.0]]);
        let vals = hermitian_eig(&laplacian(&Graph::complete(3).unwrap())).unwrap().values;
        for (v, e) in vals.iter().zip([0.0, 3.0, 3.0]) {
            assert!((v - e).abs() < 1e-12);
        }
        let mut vals = hermitian_eig(&laplacian(&Graph::cycle(6).unwrap())).unwrap().values;
        let mut expected: Vec<f64> = (0..6).map(|k| 2.0 - 2.0 * (2.0 * PI * k as f64 / 6.0).cos()).collect();
        vals.sort_by(f64::total_cmp);
        expected.sort_by(f64::total_cmp);
        for (v, e) in vals.iter().zip(expected) {
            assert!((v - e).abs() < 1e-12);
        }
    }

    #[test]
    fn small_beta_is_near_identity() {
        let r = diffusion_covariance(&make_graph("C6").unwrap(), 1e-8).unwrap();
        assert!(r.max_abs_diff(&ComplexMatrix::identity(6)) < 1e-7);
        assert!(diffusion_covariance(&make_graph("C6").unwrap(), 0.0).is_err());
    }

    #[test]
    fn cycle_and_path_tables() {
        let c6 = graph_aut_experiment(&make_graph("C6").unwrap(), 1.0).unwrap();
        assert_eq!(c6.aut.order(), 12);
        assert!(c6.rows[0].residual <= 1e-8 && c6.rows[0].oracle);
        let p6 = graph_aut_experiment(&make_graph("P6").unwrap(), 1.0).unwrap();
        assert_eq!(p6.aut.order(), 2);
        assert!(p6.rows[0].residual > 1e-3 && !p6.rows[0].oracle);
        for report in [&c6, &p6] {
            assert!(report.consistent());
            assert!(report.min_row_is_automorphism());
        }
    }

    #[test]
    fn chirp_population_without_rotation_is_circulant() {
        let spectrum = default_chirp_spectrum(8, 3);
        let r = chirp_covariance(0.0, &spectrum, None, ChirpMode::Population).unwrap();
        for j in 0..8 {
            for k in 0..8 {
                assert!((r[(j, k)] - r[((j + 1) % 8, (k + 1) % 8)]).norm() < 1e-12);
            }
        }
        assert_eq!(
            chirp_covariance(0.1, &[2.0; 4], None, ChirpMode::Population).unwrap_err(),
            Error::FlatSpectrum
        );
    }

    #[test]
    fn chirp_generator_commutes_with_noisy_population() {
        let spectrum = default_chirp_spectrum(12, 5);
        let r = chirp_covariance(0.23, &spectrum, Some(3.0), ChirpMode::Population).unwrap();
        assert!(residual(&chirp_generator(12, 0.23), &r).unwrap() < 1e-10);
    }

    #[test]
    fn sweep_matches_dense_selection() {
        let spectrum = default_chirp_spectrum(10, 9);
        let r = chirp_covariance(0.1, &spectrum, Some(10.0), ChirpMode::Population).unwrap();
        let sweep = chirp_sweep(&r, 0.0, 0.2, 5).unwrap();
        for (psi, lam) in sweep.grid.iter().zip(&sweep.lambda_min) {
            let dense = chirp_lambda_dense(&r, *psi).unwrap();
            assert!((dense - lam).abs() <= 1e-10 * (1.0 + lam));
        }
        assert_eq!(sweep.argmin_index(), 2);
        assert!(chirp_sweep(&r, 0.0, 1.0, 1).is_err());
    }

    #[test]
    fn sample_mode_is_seeded() {
        let spectrum = default_chirp_spectrum(6, 1);
        let mode = ChirpMode::Sample { snapshots: 50, seed: 4 };
        let a = chirp_covariance(0.1, &spectrum, Some(10.0), mode).unwrap();
        let b = chirp_covariance(0.1, &spectrum, Some(10.0), mode).unwrap();
        assert_eq!(a.max_abs_diff(&b), 0.0);
    }

    #[test]
    fn catalog_of_requested_size() {
        assert_eq!(permutation_catalog(16, 7).unwrap().len(), 7);
        assert_eq!(permutation_catalog(16, 3).unwrap().len(), 3);
        assert!(permutation_catalog(16, 0).is_err());
    }
}
