//! Plain-text formats for matrices, permutations, groups, basis manifests
//! and basis specifications.
//!
//! Matrix file: a header `rows cols real|complex`, then one line per row.
//! Real rows hold `cols` numbers; complex rows hold `2 * cols` numbers, the
//! real and imaginary part of each entry in turn.
//!
//! Group file: the degree on the first line, then one generator per line as
//! an image array (`1 2 0` maps 0 to 1, 1 to 2, 2 to 0).
//!
//! Manifest: one `label path` pair per line; relative paths are resolved
//! against the manifest's directory.
//!
//! In every format blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::basis::{chirp_generator, perm_diff_basis, reflection_perm, standard_catalog, BasisElement, GeneratorBasis};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};
use crate::perm::{closure, Permutation, PermutationGroup};

/// Largest degree accepted in a group file.
pub const MAX_FILE_DEGREE: usize = 1 << 16;

/// Non-comment lines with their one-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_f64(token: &str, line: usize) -> Result<f64> {
    let v: f64 = token
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid number {token:?}")))?;
    if !v.is_finite() {
        return Err(Error::parse(line, format!("non-finite number {token:?}")));
    }
    Ok(v)
}

fn parse_usize(token: &str, line: usize, what: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} {token:?}")))
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [rows, cols, kind] = fields[..] else {
        return Err(Error::parse(hline, "header must be `rows cols real|complex`"));
    };
    let rows = parse_usize(rows, hline, "row count")?;
    let cols = parse_usize(cols, hline, "column count")?;
    let complex = match kind {
        "real" => false,
        "complex" => true,
        other => return Err(Error::parse(hline, format!("unknown element kind {other:?}"))),
    };
    if rows == 0 || cols == 0 {
        return Err(Error::parse(hline, "matrix dimensions must be positive"));
    }
    let per_row = if complex { 2 * cols } else { cols };
    let mut data: Vec<C64> = Vec::new();
    let mut seen = 0;
    for (ln, line) in lines {
        if seen == rows {
            return Err(Error::parse(ln, format!("more than {rows} rows")));
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != per_row {
            return Err(Error::parse(
                ln,
                format!("expected {per_row} numbers, found {}", tokens.len()),
            ));
        }
        if complex {
            for pair in tokens.chunks(2) {
                data.push(C64::new(parse_f64(pair[0], ln)?, parse_f64(pair[1], ln)?));
            }
        } else {
            for t in tokens {
                data.push(C64::new(parse_f64(t, ln)?, 0.0));
            }
        }
        seen += 1;
    }
    if seen != rows {
        return Err(Error::parse(
            text.lines().count().max(1),
            format!("expected {rows} rows, found {seen}"),
        ));
    }
    ComplexMatrix::from_vec(rows, cols, data)
}

/// Writes entries with 17 significant digits; the `real` form is used when
/// every imaginary part is zero.
pub fn format_matrix(a: &ComplexMatrix) -> String {
    let complex = !a.is_real();
    let mut out = format!(
        "{} {} {}\n",
        a.rows(),
        a.cols(),
        if complex { "complex" } else { "real" }
    );
    for i in 0..a.rows() {
        let mut first = true;
        for v in a.row(i) {
            if !first {
                out.push(' ');
            }
            first = false;
            if complex {
                let _ = write!(out, "{:.16e} {:.16e}", v.re, v.im);
            } else {
                let _ = write!(out, "{:.16e}", v.re);
            }
        }
        out.push('\n');
    }
    out
}

/// Image array such as `2 0 1`.
pub fn parse_permutation(text: &str) -> Result<Permutation> {
    parse_permutation_line(text.trim(), 1)
}

fn parse_permutation_line(line: &str, ln: usize) -> Result<Permutation> {
    let images = line
        .split_whitespace()
        .map(|t| parse_usize(t, ln, "image"))
        .collect::<Result<Vec<usize>>>()?;
    if images.is_empty() {
        return Err(Error::parse(ln, "empty permutation"));
    }
    Permutation::new(images).map_err(|e| Error::parse(ln, e.to_string()))
}

/// Degree and generator list of a group file.
pub fn parse_group_file(text: &str) -> Result<(usize, Vec<Permutation>)> {
    let mut lines = content_lines(text);
    let (dline, degree) = lines.next().ok_or_else(|| Error::parse(1, "missing degree"))?;
    let degree = parse_usize(degree, dline, "degree")?;
    if degree == 0 || degree > MAX_FILE_DEGREE {
        return Err(Error::parse(dline, format!("degree must be in 1..={MAX_FILE_DEGREE}")));
    }
    let mut gens = Vec::new();
    for (ln, line) in lines {
        let p = parse_permutation_line(line, ln)?;
        if p.degree() != degree {
            return Err(Error::parse(
                ln,
                format!("permutation has degree {}, expected {degree}", p.degree()),
            ));
        }
        gens.push(p);
    }
    Ok((degree, gens))
}

/// Group generated by the permutations of a group file.
pub fn parse_group(text: &str, cap: usize) -> Result<PermutationGroup> {
    let (degree, gens) = parse_group_file(text)?;
    closure(degree, &gens, cap)
}

pub fn format_group(degree: usize, generators: &[Permutation]) -> String {
    let mut out = format!("{degree}\n");
    for g in generators {
        let _ = writeln!(out, "{g}");
    }
    out
}

/// `(label, path)` entries of a basis manifest, paths as written.
pub fn parse_manifest(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (ln, line) in content_lines(text) {
        let mut parts = line.splitn(2, char::is_whitespace);
        let label = parts.next().unwrap_or_default();
        let path = parts.next().map(str::trim).unwrap_or_default();
        if path.is_empty() {
            return Err(Error::parse(ln, "expected `label path`"));
        }
        if out.iter().any(|(l, _): &(String, String)| l == label) {
            return Err(Error::parse(ln, format!("duplicate label {label:?}")));
        }
        out.push((label.to_string(), path.to_string()));
    }
    if out.is_empty() {
        return Err(Error::EmptyBasis);
    }
    Ok(out)
}

/// Where a generator basis comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum BasisSpec {
    /// Five-element permutation catalog at the covariance's dimension.
    Standard,
    /// `P - I` for `τ, τ², ρ` and `(0 2)` at `M = 6`, with `τ` the 6-cycle and
    /// `ρ` the reversal.
    C6Example,
    /// Single chirp-conjugated shift at the given rate.
    Chirp(f64),
    /// `P - I` for every permutation listed in a group file.
    PermDiff(PathBuf),
    /// Dense elements listed in a manifest.
    Manifest(PathBuf),
}

/// `standard`, `c6-example`, `chirp:<rate>`, `perm-diff:<group file>` or
/// `manifest:<file>`.
pub fn parse_basis_spec(text: &str) -> Result<BasisSpec> {
    let text = text.trim();
    let bad = |msg: String| Error::InvalidArgument(msg);
    match text.split_once(':') {
        None => match text {
            "standard" => Ok(BasisSpec::Standard),
            "c6-example" => Ok(BasisSpec::C6Example),
            other => Err(bad(format!("unknown basis {other:?}"))),
        },
        Some(("chirp", rate)) => {
            let v: f64 = rate
                .trim()
                .parse()
                .map_err(|_| bad(format!("invalid chirp rate {rate:?}")))?;
            if !v.is_finite() {
                return Err(bad(format!("chirp rate must be finite, got {rate:?}")));
            }
            Ok(BasisSpec::Chirp(v))
        }
        Some((kind @ ("perm-diff" | "manifest"), path)) => {
            if path.is_empty() {
                return Err(bad(format!("{kind} needs a file path")));
            }
            let path = PathBuf::from(path);
            Ok(if kind == "perm-diff" {
                BasisSpec::PermDiff(path)
            } else {
                BasisSpec::Manifest(path)
            })
        }
        Some((other, _)) => Err(bad(format!("unknown basis kind {other:?}"))),
    }
}

/// The four permutations of the six-cycle example.
pub fn c6_example_permutations() -> Vec<Permutation> {
    let tau = Permutation::cycle(6);
    vec![
        tau.clone(),
        tau.pow(2),
        reflection_perm(6),
        Permutation::from_cycles(6, &[&[0, 2]]).expect("valid transposition"),
    ]
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix> {
    parse_matrix(&read(path)?).map_err(|e| with_path(path, e))
}

pub fn read_group(path: &Path, cap: usize) -> Result<PermutationGroup> {
    parse_group(&read(path)?, cap).map_err(|e| with_path(path, e))
}

fn with_path(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    }
}

/// Resolves a basis specification at dimension `m`.
pub fn load_basis(spec: &BasisSpec, m: usize) -> Result<GeneratorBasis> {
    let basis = match spec {
        BasisSpec::Standard => standard_catalog(m)?,
        BasisSpec::C6Example => perm_diff_basis(&c6_example_permutations())?,
        BasisSpec::Chirp(psi) => GeneratorBasis::new(
            m,
            vec![BasisElement::dense(format!("chirp({psi})"), chirp_generator(m, *psi))],
        )?,
        BasisSpec::PermDiff(path) => {
            let (_, perms) = parse_group_file(&read(path)?).map_err(|e| with_path(path, e))?;
            perm_diff_basis(&perms)?
        }
        BasisSpec::Manifest(path) => {
            let entries = parse_manifest(&read(path)?).map_err(|e| with_path(path, e))?;
            let dir = path.parent().unwrap_or(Path::new("."));
            let elements = entries
                .into_iter()
                .map(|(label, file)| {
                    let p = dir.join(file);
                    Ok(BasisElement::dense(label, read_matrix(&p)?))
                })
                .collect::<Result<Vec<_>>>()?;
            GeneratorBasis::new(m, elements)?
        }
    };
    if basis.dim() != m {
        return Err(Error::DegreeMismatch {
            expected: m,
            found: basis.dim(),
        });
    }
    Ok(basis)
}
