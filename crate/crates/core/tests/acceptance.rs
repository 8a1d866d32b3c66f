//! End-to-end acceptance checks. Runs as a plain binary and prints one
//! PASS/FAIL line per criterion; exits non-zero if any fails.

mod common;

use std::time::Instant;

use dcgevp::assignment::max_assignment;
use dcgevp::basis::{cyclic_shift, perm_diff_basis, standard_catalog, BasisElement, GeneratorBasis};
use dcgevp::dc::{assemble, select_generator, ZERO_TOL};
use dcgevp::experiments::{
    chirp_covariance, chirp_sweep, default_chirp_spectrum, diffusion_covariance, graph_aut_experiment, make_graph,
    median_time, permutation_catalog, resolvent_covariance, ChirpMode, Graph, GRAPH_LABELS,
};
use dcgevp::identifiability::{generative_experiment, lattice_insensitivity_check};
use dcgevp::io::c6_example_permutations;
use dcgevp::matrix::{commutator, double_commutator, frobenius_inner, ComplexMatrix, HermitianMatrix, C64};
use dcgevp::perm::{aut_bruteforce, closure, reynolds_project, Identifiability, Permutation, PermutationGroup};
use dcgevp::random::{self, Ensemble};
use dcgevp::sequential::{sequential_select, Threshold};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn six_graph_study() -> Outcome {
    let start = Instant::now();
    let expected = [12, 24, 2, 12, 6, 24];
    let mut min_margin = f64::INFINITY;
    for (label, order) in GRAPH_LABELS.iter().zip(expected) {
        let report =
            graph_aut_experiment(&make_graph(label).map_err(|e| e.to_string())?, 1.0).map_err(|e| e.to_string())?;
        ensure(report.aut.order() == order, || {
            format!("{label}: |Aut| = {}, expected {order}", report.aut.order())
        })?;
        for row in &report.rows {
            if row.oracle {
                ensure(row.residual <= 1e-8, || {
                    format!("{label}/{}: automorphism δ = {:e}", row.label, row.residual)
                })?;
            } else {
                ensure(row.residual >= 1e-3, || {
                    format!("{label}/{}: non-automorphism δ = {:e}", row.label, row.residual)
                })?;
            }
        }
        ensure(report.min_row_is_automorphism(), || {
            format!("{label}: min-δ generator is not an automorphism")
        })?;
        min_margin = min_margin.min(report.separation_margin());
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs <= 5.0, || format!("took {secs:.2} s"))?;
    Ok(format!(
        "orders 12/24/2/12/6/24, min non-automorphism δ {min_margin:.3e}, {secs:.2} s"
    ))
}

fn chirp_sweep_study() -> Outcome {
    let start = Instant::now();
    let spectrum = default_chirp_spectrum(64, 0);
    let r = chirp_covariance(0.15, &spectrum, Some(10.0), ChirpMode::Population).map_err(|e| e.to_string())?;
    let sweep = chirp_sweep(&r, 0.0, 0.3, 61).map_err(|e| e.to_string())?;
    let r2 = r.frobenius_norm_sqr();
    let k = sweep.argmin_index();
    ensure(k == 30, || format!("argmin at ψ = {}", sweep.grid[k]))?;
    ensure(sweep.lambda_min[30] <= 1e-10 * r2, || {
        format!("λ(0.15) = {:e} vs ||R||² = {r2:e}", sweep.lambda_min[30])
    })?;
    let mut off_min = f64::INFINITY;
    for (psi, lam) in sweep.grid.iter().zip(&sweep.lambda_min) {
        if (psi - 0.15).abs() >= 0.02 - 1e-12 {
            off_min = off_min.min(*lam / r2);
        }
    }
    ensure(off_min > 1e-4, || format!("off-target λ/||R||² min {off_min:e}"))?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs <= 10.0, || format!("took {secs:.2} s"))?;
    Ok(format!(
        "argmin 0.15, λ(0.15)/||R||² = {:.2e}, off-target min {off_min:.3e}, {secs:.2} s",
        sweep.lambda_min[30] / r2
    ))
}

fn c6_milestone() -> Outcome {
    let r = resolvent_covariance(&make_graph("C6").unwrap()).map_err(|e| e.to_string())?;
    let basis = perm_diff_basis(&c6_example_permutations()).map_err(|e| e.to_string())?;
    let trace = sequential_select(&r, &basis, Threshold::Zero, 16).map_err(|e| e.to_string())?;
    let first = trace.records.first().ok_or("no iterations")?;
    let tau = Permutation::cycle(6);
    let rotations = closure(6, &[tau], 100).unwrap();
    ensure(first.accepted && rotations.contains(&first.rounded), || {
        format!(
            "iteration 1 rounded to {:?}, accepted {}",
            first.rounded, first.accepted
        )
    })?;
    ensure(first.group_order_after == 6, || {
        format!("order after iteration 1 is {}", first.group_order_after)
    })?;
    let aut = aut_bruteforce(&r, ZERO_TOL).map_err(|e| e.to_string())?;
    ensure(aut.order() == 12, || format!("|Aut| = {}", aut.order()))?;
    let order = trace.final_group.order();
    ensure(trace.final_group.is_subgroup_of(&aut), || {
        "final group escapes Aut(R)".into()
    })?;
    ensure(order == 6 || order == 12, || format!("final order {order}"))?;
    Ok(format!(
        "iteration 1 accepts {:?} (order 6); final order {order} after {} iterations ({})",
        first.rounded,
        trace.records.len(),
        trace.termination.as_str()
    ))
}

fn lemma_identity() -> Outcome {
    let mut rng = random::rng(4);
    let mut worst_re = 0.0f64;
    let mut worst_im = 0.0f64;
    for _ in 0..200 {
        let m = rng.random_range(2..=10);
        let r = random::hermitian(m, Ensemble::ComplexHermitian, &mut rng);
        let b = random::complex_matrix(m, m, &mut rng);
        let lhs = frobenius_inner(&b, &double_commutator(&r, &b).unwrap()).unwrap();
        let c2 = commutator(&r, &b).unwrap().frobenius_norm_sqr();
        let re = (lhs.re - c2).abs() / (1.0 + c2);
        worst_re = worst_re.max(re);
        worst_im = worst_im.max(lhs.im.abs());
    }
    ensure(worst_re <= 1e-10 && worst_im <= 1e-12, || {
        format!("worst real gap {worst_re:e}, imaginary {worst_im:e}")
    })?;
    Ok(format!(
        "200 pairs, worst real gap {worst_re:.2e}, imaginary {worst_im:.2e}"
    ))
}

fn random_circulant(m: usize, rng: &mut impl Rng) -> HermitianMatrix {
    let mut first = vec![C64::new(0.0, 0.0); m];
    first[0] = C64::new(random::normal(rng) + m as f64, 0.0);
    for d in 1..m {
        if d < m - d {
            first[d] = C64::new(random::normal(rng), random::normal(rng));
            first[m - d] = first[d].conj();
        } else if d == m - d {
            first[d] = C64::new(random::normal(rng), 0.0);
        }
    }
    HermitianMatrix::new(ComplexMatrix::from_fn(m, m, |i, j| first[(j + m - i) % m])).unwrap()
}

fn certificate() -> Outcome {
    let mut rng = random::rng(5);
    let mut worst_a = 0.0f64;
    for _ in 0..50 {
        let m = rng.random_range(4..=10);
        let r = random_circulant(m, &mut rng);
        let mut elements = vec![BasisElement::dense("shift", cyclic_shift(m))];
        for _ in 0..4 {
            elements.push(BasisElement::dense("random", random::complex_matrix(m, m, &mut rng)));
        }
        let basis = GeneratorBasis::new(m, elements).unwrap();
        let sol = select_generator(&r, &basis).map_err(|e| e.to_string())?;
        let rel = sol.lambda_min / r.frobenius_norm_sqr();
        worst_a = worst_a.max(rel);
        ensure(rel <= 1e-10, || format!("planted shift: λ/||R||² = {rel:e}"))?;
    }
    let mut worst_b = 0.0f64;
    for _ in 0..50 {
        let m = rng.random_range(3..=10);
        let r = random::hermitian(m, Ensemble::ComplexHermitian, &mut rng);
        let d = rng.random_range(1..=5);
        let basis =
            GeneratorBasis::from_matrices((0..d).map(|_| random::complex_matrix(m, m, &mut rng)).collect()).unwrap();
        let sol = select_generator(&r, &basis).map_err(|e| e.to_string())?;
        let lhs = sol.residual.powi(2) * r.frobenius_norm_sqr();
        let rel = (lhs - sol.lambda_min).abs() / sol.lambda_min;
        worst_b = worst_b.max(rel);
        ensure(rel <= 1e-8, || {
            format!("δ²||R||² = {lhs:e} vs λ = {:e}", sol.lambda_min)
        })?;
    }
    let mut worst_c = 0.0f64;
    for _ in 0..5 {
        let r = random::hermitian(4, Ensemble::ComplexHermitian, &mut rng);
        let basis = GeneratorBasis::from_matrices(vec![
            random::complex_matrix(4, 4, &mut rng),
            random::complex_matrix(4, 4, &mut rng),
        ])
        .unwrap();
        let sol = select_generator(&r, &basis).map_err(|e| e.to_string())?;
        let (mm, g) = assemble(&r, &basis).unwrap();
        let grid = common::rayleigh_grid_min_2d(&mm, &g, 200);
        let rel = (grid - sol.lambda_min).abs() / grid.abs().max(1.0);
        worst_c = worst_c.max(rel);
        ensure(rel <= 1e-4, || format!("grid {grid:e} vs λ {:e}", sol.lambda_min))?;
    }
    Ok(format!(
        "planted λ/||R||² ≤ {worst_a:.2e}; δ²||R||² vs λ ≤ {worst_b:.2e}; grid gap ≤ {worst_c:.2e}"
    ))
}

fn random_group(m: usize, rng: &mut impl Rng) -> PermutationGroup {
    let gens: Vec<Permutation> = (0..rng.random_range(1..=2))
        .map(|_| random::permutation(m, rng))
        .collect();
    closure(m, &gens, 10080).unwrap()
}

fn sequential_suite() -> Outcome {
    let mut rng = random::rng(6);
    let mut accepted_total = 0;
    let mut worst_orth = 0.0f64;
    for instance in 0..100 {
        let m = rng.random_range(4..=7);
        let r = if instance % 2 == 0 {
            let g = Graph::random(m, 0.5, &mut rng).unwrap();
            diffusion_covariance(&g, 1.0).unwrap()
        } else {
            let group = random_group(m, &mut rng);
            let w = random::hermitian(m, Ensemble::RealSymmetric, &mut rng);
            HermitianMatrix::new(reynolds_project(&group, &w).unwrap()).unwrap()
        };
        let basis = if instance % 4 < 2 {
            standard_catalog(m).unwrap()
        } else {
            let perms: Vec<Permutation> = (0..5)
                .map(|_| random::permutation(m, &mut rng))
                .filter(|p| !p.is_identity())
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            perm_diff_basis(&perms).unwrap()
        };
        let trace =
            sequential_select(&r, &basis, Threshold::Zero, 16).map_err(|e| format!("instance {instance}: {e}"))?;
        let aut = aut_bruteforce(&r, ZERO_TOL).unwrap();
        let mut k = 0;
        for rec in &trace.records {
            worst_orth = worst_orth.max(rec.orthogonality_residual);
            ensure(rec.orthogonality_residual <= 1e-10, || {
                format!(
                    "instance {instance}: orthogonality residual {:e}",
                    rec.orthogonality_residual
                )
            })?;
            if rec.accepted {
                k += 1;
                ensure(aut.contains(&rec.rounded), || {
                    format!("instance {instance}: accepted {:?} ∉ Aut", rec.rounded)
                })?;
                ensure(rec.group_order_after >= 2 * rec.group_order_before, || {
                    format!(
                        "instance {instance}: order {} -> {}",
                        rec.group_order_before, rec.group_order_after
                    )
                })?;
            }
        }
        let order = trace.final_group.order();
        let bound = (order as f64).log2().ceil() as usize;
        ensure(k <= bound, || format!("instance {instance}: K = {k} > ⌈log2 {order}⌉"))?;
        ensure(trace.final_group.is_subgroup_of(&aut), || {
            format!("instance {instance}: final group ⊄ Aut")
        })?;
        accepted_total += k;
    }
    Ok(format!(
        "100 instances, {accepted_total} acceptances, worst orthogonality residual {worst_orth:.2e}"
    ))
}

fn lattice_chains() -> Outcome {
    let mut rng = random::rng(7);
    let mut worst = 0.0f64;
    for chain in 0..20 {
        let gens: Vec<Permutation> = (0..rng.random_range(2..=3))
            .map(|_| random::permutation(6, &mut rng))
            .collect();
        let large = closure(6, &gens, 10080).unwrap();
        let keep: Vec<Permutation> = gens.iter().filter(|_| rng.random_bool(0.5)).cloned().collect();
        let small = closure(6, &keep, 10080).unwrap();
        let report = lattice_insensitivity_check(&small, &large, chain).map_err(|e| e.to_string())?;
        worst = worst.max(report.residual_small).max(report.residual_large);
        ensure(report.holds(1e-12), || format!("chain {chain}: {report:?}"))?;
    }
    Ok(format!("20 chains, worst projection residual {worst:.2e}"))
}

fn alternating(m: usize) -> PermutationGroup {
    let gens: Vec<Permutation> = (2..m)
        .map(|k| Permutation::from_cycles(m, &[&[0, 1, k]]).unwrap())
        .collect();
    closure(m, &gens, 10080).unwrap()
}

fn dichotomy() -> Outcome {
    let mut summary = Vec::new();
    for m in [4usize, 5, 6] {
        let tau = Permutation::cycle(m);
        let rho = Permutation::new((0..m).rev().collect()).unwrap();
        let swap = Permutation::from_cycles(m, &[&[0, 1]]).unwrap();
        let groups = [
            ("trivial", PermutationGroup::trivial(m), Ensemble::RealSymmetric),
            (
                "cyclic",
                closure(m, std::slice::from_ref(&tau), 10080).unwrap(),
                Ensemble::RealSymmetric,
            ),
            (
                "cyclic",
                closure(m, std::slice::from_ref(&tau), 10080).unwrap(),
                Ensemble::ComplexHermitian,
            ),
            (
                "dihedral",
                closure(m, &[tau.clone(), rho], 10080).unwrap(),
                Ensemble::RealSymmetric,
            ),
            (
                "transposition",
                closure(m, std::slice::from_ref(&swap), 10080).unwrap(),
                Ensemble::RealSymmetric,
            ),
            (
                "symmetric",
                PermutationGroup::symmetric(m).unwrap(),
                Ensemble::RealSymmetric,
            ),
            ("alternating", alternating(m), Ensemble::ComplexHermitian),
        ];
        let (mut ident, mut ambig) = (0, 0);
        for (name, g, ensemble) in groups {
            let report = generative_experiment(&g, 20, 100 + m as u64, ensemble).map_err(|e| e.to_string())?;
            match &report.prediction {
                Identifiability::Identifiable => {
                    ident += 1;
                    let exact = report.exact_count();
                    ensure(exact >= 19, || format!("M={m} {name}: exact in {exact}/20"))?;
                    ensure(exact == 20 || !report.collisions.is_empty(), || {
                        format!("M={m} {name}: failure without a logged collision")
                    })?;
                }
                Identifiability::Ambiguous(_) => {
                    ambig += 1;
                    let c = report.containment_count();
                    ensure(c == 20, || format!("M={m} {name}: containment in {c}/20"))?;
                }
            }
        }
        summary.push(format!("M={m}: {ident} identifiable, {ambig} ambiguous"));
    }
    Ok(summary.join("; "))
}

fn hungarian() -> Outcome {
    let mut rng = random::rng(9);
    for trial in 0..200 {
        let n = if trial < 100 { 6 } else { 7 };
        let score: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n).map(|_| random::normal(&mut rng)).collect())
            .collect();
        let (p, v) = max_assignment(&score).map_err(|e| e.to_string())?;
        let (q, w) = common::exhaustive_assignment(&score);
        ensure(p == q && (v - w).abs() <= 1e-12 * (1.0 + w.abs()), || {
            format!("trial {trial}: {p} ({v}) vs {q} ({w})")
        })?;
    }
    Ok("100 matrices each at 6x6 and 7x7 agree with enumeration".into())
}

fn performance() -> Outcome {
    let time_at = |m: usize| {
        let r = random::hermitian(m, Ensemble::RealSymmetric, &mut random::rng(m as u64));
        let basis = permutation_catalog(m, 5).unwrap();
        select_generator(&r, &basis).unwrap();
        median_time(5, || select_generator(&r, &basis).unwrap())
    };
    let t256 = time_at(256);
    let t512 = time_at(512);
    ensure(t256 <= 1.0, || format!("M=256 took {t256:.3} s"))?;
    let ratio = t512 / t256;
    ensure(ratio <= 5.0, || format!("M=512/M=256 ratio {ratio:.2}"))?;
    Ok(format!(
        "M=256 {:.1} ms, M=512 {:.1} ms, ratio {ratio:.2}",
        1e3 * t256,
        1e3 * t512
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("six-graph automorphism study", six_graph_study),
        ("chirp-rate sweep", chirp_sweep_study),
        ("six-cycle sequential milestone", c6_milestone),
        ("double-commutator quadratic form", lemma_identity),
        ("certificate", certificate),
        ("sequential search soundness suite", sequential_suite),
        ("commutant-lattice insensitivity", lattice_chains),
        ("generative dichotomy", dichotomy),
        ("assignment optimality", hungarian),
        ("performance scaling", performance),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
