use std::fmt::{self, Write as _};
use std::fs;
use std::path::Path;

use dcgevp::experiments::{
    benchmark, chirp_covariance, chirp_sweep, default_chirp_spectrum, diffusion_covariance, graph_aut_experiment,
    make_graph, ChirpMode, GRAPH_LABELS,
};
use dcgevp::identifiability::generative_experiment;
use dcgevp::io::{format_group, format_matrix, load_basis, parse_basis_spec, read_group, read_matrix};
use dcgevp::perm::{
    aut_bruteforce, classify_identifiability, reynolds_project, Identifiability, PairMode, DEFAULT_CLOSURE_CAP,
};
use dcgevp::random::Ensemble;
use dcgevp::sequential::{sequential_select, Threshold};
use dcgevp::{select_generator, HermitianMatrix};

use crate::{svg, Cli, Command, CovarianceSource, EnsembleArg, Mode};

#[derive(Debug)]
pub enum CliError {
    Library(dcgevp::Error),
    Io(String),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Library(e) if e.is_numerical() => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Library(e) => write!(f, "{e}"),
            CliError::Io(m) | CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl From<dcgevp::Error> for CliError {
    fn from(e: dcgevp::Error) -> Self {
        CliError::Library(e)
    }
}

type CliResult<T> = Result<T, CliError>;

/// Writes through a sibling temporary file and a rename.
fn write_atomic(path: &Path, contents: &str) -> CliResult<()> {
    let name = path
        .file_name()
        .ok_or_else(|| CliError::Io(format!("{}: not a file path", path.display())))?;
    let tmp = path.with_file_name(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    fs::write(&tmp, contents).map_err(io)?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io(e)
    })
}

fn load_covariance(path: &Path) -> CliResult<HermitianMatrix> {
    Ok(HermitianMatrix::new(read_matrix(path)?)?)
}

pub fn run(cli: Cli) -> CliResult<()> {
    let seed = cli.seed;
    let out = match cli.command {
        Command::Select {
            matrix,
            basis,
            generator,
        } => select(&matrix, &basis, generator.as_deref())?,
        Command::Sequential {
            matrix,
            basis,
            tau,
            kmax,
            group_out,
        } => sequential(&matrix, &basis, tau, kmax, group_out.as_deref())?,
        Command::AutGraph { graph, beta, svg } => aut_graph(&graph, beta, svg.as_deref())?,
        Command::ChirpSweep {
            m,
            psi0,
            snr_db,
            grid,
            snapshots,
            svg,
        } => chirp(m, psi0, snr_db, &grid, snapshots, seed, svg.as_deref())?,
        Command::OracleAut { source, beta, tol } => oracle_aut(&source, beta, tol)?,
        Command::Reynolds { matrix, group, out } => reynolds(&matrix, &group, out.as_deref())?,
        Command::ClassifyGroup { group, mode } => classify(&group, mode)?,
        Command::GenExperiment {
            group,
            trials,
            ensemble,
        } => gen_experiment(&group, trials, ensemble, seed)?,
        Command::Bench { m, d, repeats } => bench(&m, d, repeats, seed)?,
    };
    print!("{out}");
    Ok(())
}

fn select(matrix: &Path, basis: &str, generator: Option<&Path>) -> CliResult<String> {
    let r = load_covariance(matrix)?;
    let basis = load_basis(&parse_basis_spec(basis)?, r.dim())?;
    let sol = select_generator(&r, &basis)?;
    let r2 = r.frobenius_norm_sqr();
    let mut s = String::from("# quantity\tvalue\n");
    let spectrum: Vec<String> = sol.spectrum.iter().map(|v| format!("{v:.6e}")).collect();
    let _ = writeln!(s, "dimension\t{}", r.dim());
    let _ = writeln!(s, "basis_size\t{}", basis.len());
    let _ = writeln!(s, "lambda_min\t{:.6e}", sol.lambda_min);
    let _ = writeln!(s, "lambda_min_relative\t{:.6e}", sol.lambda_min / r2);
    let _ = writeln!(s, "residual\t{:.6e}", sol.residual);
    let _ = writeln!(s, "condition_ratio\t{:.6e}", sol.condition_ratio);
    let _ = writeln!(s, "null_dimension\t{}", sol.null_dimension);
    let _ = writeln!(s, "commutes\t{}", sol.commutes);
    let _ = writeln!(s, "spectrum\t{}", spectrum.join(","));
    s.push_str("# label\tcoefficient_re\tcoefficient_im\n");
    for (label, c) in basis.labels().iter().zip(&sol.coefficients) {
        let _ = writeln!(s, "{label}\t{:.16e}\t{:.16e}", c.re, c.im);
    }
    match generator {
        Some(path) => write_atomic(path, &format_matrix(&sol.generator))?,
        None => {
            s.push_str("# generator\n");
            s.push_str(&format_matrix(&sol.generator));
        }
    }
    Ok(s)
}

fn sequential(matrix: &Path, basis: &str, tau: f64, kmax: usize, group_out: Option<&Path>) -> CliResult<String> {
    if !(tau >= 0.0 && tau.is_finite()) {
        return Err(CliError::Usage(format!("--tau must be finite and >= 0, got {tau}")));
    }
    let r = load_covariance(matrix)?;
    let basis = load_basis(&parse_basis_spec(basis)?, r.dim())?;
    let threshold = if tau == 0.0 {
        Threshold::Zero
    } else {
        Threshold::Value(tau)
    };
    let trace = sequential_select(&r, &basis, threshold, kmax)?;
    let mut s = String::from(
        "# iteration\tdeflated_dim\tlambda_min\tgenerator_residual\trounded\tcycles\toverlap\trounded_residual\taccepted\torder_before\torder_after\torthogonality\n",
    );
    for rec in &trace.records {
        let _ = writeln!(
            s,
            "{}\t{}\t{:.6e}\t{:.6e}\t{}\t{}\t{:.6e}\t{:.6e}\t{}\t{}\t{}\t{:.3e}",
            rec.index,
            rec.deflated_dim,
            rec.gevp.lambda_min,
            rec.gevp.residual,
            rec.rounded,
            rec.rounded.cycle_notation(),
            rec.overlap,
            rec.rounded_residual,
            rec.accepted,
            rec.group_order_before,
            rec.group_order_after,
            rec.orthogonality_residual
        );
    }
    let group_text = format_group(trace.final_group.degree(), trace.final_group.generators());
    let _ = writeln!(s, "# termination\t{}", trace.termination.as_str());
    let _ = writeln!(s, "# final_order\t{}", trace.final_group.order());
    s.push_str("# final group generators\n");
    s.push_str(&group_text);
    if let Some(path) = group_out {
        write_atomic(path, &group_text)?;
    }
    Ok(s)
}

fn aut_graph(graph: &str, beta: f64, svg_path: Option<&Path>) -> CliResult<String> {
    let labels: Vec<&str> = if graph == "all" {
        GRAPH_LABELS.to_vec()
    } else {
        vec![graph]
    };
    let mut s = String::from("# graph\tgenerator\tpermutation\tdelta\tdeclared\toracle\n");
    let mut summary = String::new();
    let mut bars = Vec::new();
    for label in labels {
        let report = graph_aut_experiment(&make_graph(label)?, beta)?;
        for row in &report.rows {
            let _ = writeln!(
                s,
                "{}\t{}\t{}\t{:.6e}\t{}\t{}",
                report.graph, row.label, row.permutation, row.residual, row.declared, row.oracle
            );
            bars.push((format!("{}/{}", report.graph, row.label), row.residual, row.oracle));
        }
        let _ = writeln!(
            summary,
            "# {}: aut_order {}, min_delta {} ({:.3e}), consistent {}, gevp_lambda {:.3e}, gevp_rounded {} (in Aut: {})",
            report.graph,
            report.aut.order(),
            report.rows[report.min_row].label,
            report.rows[report.min_row].residual,
            report.consistent(),
            report.selection.lambda_min,
            report.selection_rounded,
            report.selection_rounded_in_aut
        );
    }
    s.push_str(&summary);
    if let Some(path) = svg_path {
        write_atomic(path, &svg::bar_chart("commutativity residual", &bars))?;
    }
    Ok(s)
}

fn parse_grid(grid: &str) -> CliResult<(f64, f64, usize)> {
    let bad = || CliError::Usage(format!("--grid must be lo:hi:steps, got {grid:?}"));
    let parts: Vec<&str> = grid.split(':').collect();
    let [lo, hi, steps] = parts[..] else {
        return Err(bad());
    };
    Ok((
        lo.trim().parse().map_err(|_| bad())?,
        hi.trim().parse().map_err(|_| bad())?,
        steps.trim().parse().map_err(|_| bad())?,
    ))
}

fn chirp(
    m: usize,
    psi0: f64,
    snr_db: Option<f64>,
    grid: &str,
    snapshots: Option<usize>,
    seed: u64,
    svg_path: Option<&Path>,
) -> CliResult<String> {
    let (lo, hi, steps) = parse_grid(grid)?;
    let spectrum = default_chirp_spectrum(m, seed);
    let mode = match snapshots {
        Some(n) => ChirpMode::Sample { snapshots: n, seed },
        None => ChirpMode::Population,
    };
    let r = chirp_covariance(psi0, &spectrum, snr_db, mode)?;
    let sweep = chirp_sweep(&r, lo, hi, steps)?;
    let mut s = String::from("# psi\tlambda_min\n");
    for (psi, lam) in sweep.grid.iter().zip(&sweep.lambda_min) {
        let _ = writeln!(s, "{psi:.9}\t{lam:.6e}");
    }
    let _ = writeln!(s, "# argmin_psi\t{}", sweep.argmin_psi);
    if let Some(path) = svg_path {
        let points: Vec<(f64, f64)> = sweep
            .grid
            .iter()
            .cloned()
            .zip(sweep.lambda_min.iter().cloned())
            .collect();
        write_atomic(path, &svg::line_chart("minimum eigenvalue against chirp rate", &points))?;
    }
    Ok(s)
}

fn oracle_aut(source: &CovarianceSource, beta: f64, tol: f64) -> CliResult<String> {
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(CliError::Usage(format!("--tol must be finite and >= 0, got {tol}")));
    }
    let r = match (&source.matrix, &source.graph) {
        (Some(path), _) => load_covariance(path)?,
        (None, Some(label)) => diffusion_covariance(&make_graph(label)?, beta)?,
        (None, None) => unreachable!("clap requires one source"),
    };
    let aut = aut_bruteforce(&r, tol)?;
    let mut s = format!("order\t{}\n# generators\n", aut.order());
    s.push_str(&format_group(aut.degree(), aut.generators()));
    Ok(s)
}

fn reynolds(matrix: &Path, group: &Path, out: Option<&Path>) -> CliResult<String> {
    let x = read_matrix(matrix)?;
    let g = read_group(group, DEFAULT_CLOSURE_CAP)?;
    let p = format_matrix(&reynolds_project(&g, &x)?);
    match out {
        Some(path) => {
            write_atomic(path, &p)?;
            Ok(format!("# group_order\t{}\n", g.order()))
        }
        None => Ok(p),
    }
}

fn classify(group: &Path, mode: Mode) -> CliResult<String> {
    let g = read_group(group, DEFAULT_CLOSURE_CAP)?;
    let pair_mode = match mode {
        Mode::Raw => PairMode::Raw,
        Mode::Merged => PairMode::TransposeMerged,
    };
    let mut s = format!(
        "mode\t{}\ngroup_order\t{}\n",
        match mode {
            Mode::Raw => "raw",
            Mode::Merged => "merged",
        },
        g.order()
    );
    match classify_identifiability(&g, pair_mode)? {
        Identifiability::Identifiable => s.push_str("outcome\tidentifiable\n"),
        Identifiability::Ambiguous(h) => {
            let _ = writeln!(s, "outcome\tambiguous\nsupergroup_order\t{}", h.order());
            s.push_str("# supergroup generators\n");
            s.push_str(&format_group(h.degree(), h.generators()));
        }
    }
    Ok(s)
}

fn gen_experiment(group: &Path, trials: usize, ensemble: EnsembleArg, seed: u64) -> CliResult<String> {
    let g = read_group(group, DEFAULT_CLOSURE_CAP)?;
    let ensemble = match ensemble {
        EnsembleArg::Real => Ensemble::RealSymmetric,
        EnsembleArg::Complex => Ensemble::ComplexHermitian,
    };
    let report = generative_experiment(&g, trials, seed, ensemble)?;
    let mut s = String::from("# trial\taut_order\texact\tcontains_prediction\n");
    for (k, t) in report.trials.iter().enumerate() {
        let _ = writeln!(s, "{k}\t{}\t{}\t{}", t.aut_order, t.exact, t.contains_prediction);
    }
    let prediction = match &report.prediction {
        Identifiability::Identifiable => "identifiable".to_string(),
        Identifiability::Ambiguous(h) => format!("ambiguous (supergroup order {})", h.order()),
    };
    let _ = writeln!(s, "# ensemble\t{}", report.ensemble.as_str());
    let _ = writeln!(s, "# prediction\t{prediction}");
    let _ = writeln!(s, "# exact\t{}/{trials}", report.exact_count());
    let _ = writeln!(s, "# containment\t{}/{trials}", report.containment_count());
    for c in &report.collisions {
        let _ = writeln!(
            s,
            "# collision\ttrial {}\tblocks {} {}\tgap {:.3e}",
            c.trial, c.block_a, c.block_b, c.gap
        );
    }
    Ok(s)
}

fn bench(m: &[usize], d: usize, repeats: usize, seed: u64) -> CliResult<String> {
    let rows = benchmark(m, d, repeats, seed)?;
    let mut s = String::from("# method\tm\td\tmedian_seconds\n");
    for r in rows {
        let _ = writeln!(s, "{}\t{}\t{}\t{:.6e}", r.method.as_str(), r.m, r.d, r.median_secs);
    }
    Ok(s)
}
