//! Argument parsing and verb dispatch for the `spin` binary.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use cliffspin_core::any::AnyMatrix;
use cliffspin_core::clifford::DEFAULT_FLOAT_TOL;
use cliffspin_core::covering::{
    cover_algebra, cover_group_rep, psi32_table, AlgebraCoverInverse, CoverResult, Psi32Row,
};
use cliffspin_core::expm::{
    ExpmInput, ExpmMethod, ExpmOutput, ExpmRequest, SpinCoverEngine, DEFAULT_EXPM_TOL,
};
use cliffspin_core::spin_catalog::{
    catalog, real_entry, spin_algebra_membership_tol, spin_membership_tol, AnyEntry,
    MembershipReport, Signature, CATALOG_SIGNATURES,
};
use cliffspin_core::{Error, Matrix, Ring, Scalar, Q};
use serde_json::{json, Value};

use crate::json::{self, FormatError};
use crate::suite::{seed_from_env, verify_signature, SuiteConfig};

#[derive(Debug, Parser)]
#[command(
    name = "spin",
    version,
    about = "Clifford algebras Cl(p,q), Spin+(p,q) and the double cover, exactly"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Render exact entries as floats.
    #[arg(long, global = true)]
    float: bool,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Spin,
    Oracle,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// The eight cataloged signatures.
    CatalogList,
    /// Generators and involution conjugators of one entry.
    CatalogShow {
        #[arg(long)]
        pq: String,
    },
    /// Run every identity group for one signature.
    Verify {
        #[arg(long)]
        pq: String,
        /// PRNG seed; defaults to $SPIN_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Spin+(p,q) membership of a matrix (or spin+(p,q) with --algebra).
    Member {
        #[arg(long)]
        pq: String,
        /// Inline JSON or a path to a JSON matrix file.
        #[arg(long, visible_alias = "input")]
        matrix: String,
        #[arg(long)]
        algebra: bool,
        #[arg(long, default_value_t = DEFAULT_FLOAT_TOL)]
        tol: f64,
    },
    /// Φ(g): the action v ↦ g v gᶜᶜ on 1-vectors.
    Cover {
        #[arg(long)]
        pq: String,
        #[arg(long, visible_alias = "input")]
        matrix: String,
        #[arg(long, default_value_t = DEFAULT_FLOAT_TOL)]
        tol: f64,
    },
    /// Ψ(y): the action v ↦ [y, v]; with --inverse, Ψ⁻¹(x) for x in so(p,q).
    Liealg {
        #[arg(long)]
        pq: String,
        #[arg(long, visible_alias = "input")]
        matrix: String,
        #[arg(long)]
        inverse: bool,
    },
    /// e^X for X in so(p,q).
    Expm {
        #[arg(long)]
        pq: String,
        #[arg(long, visible_alias = "matrix")]
        input: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Spin)]
        method: MethodArg,
        #[arg(long, default_value_t = DEFAULT_EXPM_TOL)]
        tol: f64,
        #[arg(long)]
        compare: bool,
    },
    /// Recomputed tables; only `liealg32` exists.
    Table {
        #[arg(long)]
        name: String,
    },
}

/// Exit code plus the two streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Format(_) => "format",
            CliError::Io(_) => "io",
            CliError::Core(Error::RingMismatch { .. }) => "ring_mismatch",
            CliError::Core(Error::UnsupportedSignature { .. }) => "unsupported_signature",
            CliError::Core(_) => "domain",
        }
    }

    pub fn to_line(&self) -> String {
        json!({"error": {"kind": self.kind(), "message": self.to_string()}}).to_string()
    }
}

/// Successful verbs return their rendered output and whether the check they ran passed.
struct Rendered {
    text: String,
    passed: bool,
}

impl Rendered {
    fn ok(text: String) -> Self {
        Rendered { text, passed: true }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) {
                return Outcome {
                    code: EXIT_OK,
                    stdout: e.to_string(),
                    stderr: String::new(),
                };
            }
            let msg = e
                .to_string()
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ")
                .to_string();
            return invalid(CliError::Usage(msg));
        }
    };
    match dispatch(&cli) {
        Ok(r) => {
            let code = if r.passed { EXIT_OK } else { EXIT_FAILED };
            match &cli.output {
                Some(path) => match std::fs::write(path, &r.text) {
                    Ok(()) => Outcome {
                        code,
                        stdout: String::new(),
                        stderr: String::new(),
                    },
                    Err(e) => invalid(CliError::Io(format!("{}: {e}", path.display()))),
                },
                None => Outcome {
                    code,
                    stdout: r.text,
                    stderr: String::new(),
                },
            }
        }
        Err(e) => invalid(e),
    }
}

fn invalid(e: CliError) -> Outcome {
    Outcome {
        code: EXIT_INVALID,
        stdout: String::new(),
        stderr: format!("{}\n", e.to_line()),
    }
}

fn signature(pq: &str) -> Result<Signature, CliError> {
    let sig = Signature::parse(pq)
        .ok_or_else(|| CliError::Usage(format!("--pq expects \"p,q\", got `{pq}`")))?;
    if !sig.is_cataloged() {
        return Err(Error::UnsupportedSignature { p: sig.p, q: sig.q }.into());
    }
    Ok(sig)
}

fn load_matrix(arg: &str) -> Result<AnyMatrix, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::Io(format!("{arg}: {e}")))?
    };
    Ok(json::parse_matrix(&text)?)
}

fn line(v: &Value) -> String {
    format!("{v}\n")
}

fn dispatch(cli: &Cli) -> Result<Rendered, CliError> {
    let (format, float) = (cli.format, cli.float);
    match &cli.verb {
        Verb::CatalogList => Ok(Rendered::ok(catalog_list(format)?)),
        Verb::CatalogShow { pq } => {
            let entry = catalog(signature(pq)?)?;
            Ok(Rendered::ok(catalog_show(&entry, format, float)))
        }
        Verb::Verify { pq, seed, samples } => {
            let cfg = SuiteConfig {
                seed: seed.unwrap_or_else(seed_from_env),
                involution_samples: *samples,
                ..SuiteConfig::default()
            };
            let report = verify_signature(signature(pq)?, &cfg)?;
            let text = match format {
                Format::Json => line(&report.to_json()),
                Format::Csv => report.to_csv(),
                Format::Pretty => report.to_pretty(),
            };
            Ok(Rendered {
                text,
                passed: report.passed(),
            })
        }
        Verb::Member {
            pq,
            matrix,
            algebra,
            tol,
        } => {
            let entry = catalog(signature(pq)?)?;
            let x = load_matrix(matrix)?;
            let report = membership(&entry, &x, *algebra, *tol)?;
            Ok(Rendered {
                text: membership_text(&report, format),
                passed: report.is_member(),
            })
        }
        Verb::Cover { pq, matrix, tol } => {
            let entry = catalog(signature(pq)?)?;
            let g = load_matrix(matrix)?;
            let out = cover(&entry, &g, *tol)?;
            Ok(Rendered::ok(cover_text(out, format, float)))
        }
        Verb::Liealg {
            pq,
            matrix,
            inverse,
        } => {
            let entry = catalog(signature(pq)?)?;
            let m = load_matrix(matrix)?;
            if *inverse {
                let y = liealg_inverse(&entry, &m)?;
                Ok(Rendered::ok(matrix_text(&y, format, float, "preimage")))
            } else {
                Ok(Rendered::ok(cover_text(liealg(&entry, &m)?, format, float)))
            }
        }
        Verb::Expm {
            pq,
            input,
            method,
            tol,
            compare,
        } => {
            let sig = signature(pq)?;
            if !(*tol > 0.0 && tol.is_finite()) {
                return Err(CliError::Usage("--tol must be positive".into()));
            }
            let x = match load_matrix(input)? {
                AnyMatrix::Float64(m) => ExpmInput::Float(m),
                AnyMatrix::Rational(m) => ExpmInput::Exact(m),
                other => {
                    return Err(Error::RingMismatch {
                        expected: Ring::Float64,
                        found: other.ring(),
                    }
                    .into())
                }
            };
            let method = match method {
                MethodArg::Spin => ExpmMethod::SpinCover,
                MethodArg::Oracle => ExpmMethod::DirectOracle,
            };
            let req = ExpmRequest {
                signature: sig,
                x,
                tolerance: *tol,
                method,
                compare: *compare,
            };
            let out = SpinCoverEngine::new(sig)?.run(&req)?;
            Ok(Rendered::ok(expm_text(&out, format)))
        }
        Verb::Table { name } => {
            if name != "liealg32" {
                return Err(CliError::Usage(format!(
                    "unknown table `{name}`; available: liealg32"
                )));
            }
            let rows = psi32_table(&real_entry(Signature::new(3, 2))?)?;
            Ok(Rendered::ok(table_text(&rows, format, float)))
        }
    }
}

fn catalog_list(format: Format) -> Result<String, CliError> {
    let mut rows = Vec::new();
    for sig in CATALOG_SIGNATURES {
        let e = catalog(sig)?;
        rows.push((
            sig.to_string(),
            e.ring().name(),
            e.size(),
            e.classical_group().name(),
        ));
    }
    Ok(match format {
        Format::Json => line(&Value::Array(
            rows.iter().map(|(s, r, n, g)| json!({"signature": s, "ring": r, "size": n, "classical_group": g})).collect(),
        )),
        Format::Csv => {
            let mut out = String::from("signature,ring,size,classical_group\n");
            for (s, r, n, g) in &rows {
                out.push_str(&format!("\"{s}\",{r},{n},{g}\n"));
            }
            out
        }
        Format::Pretty => rows.iter().map(|(s, r, n, g)| format!("Spin+({s})  {r:<10} {n}x{n}  {g}\n")).collect(),
    })
}

fn catalog_show(entry: &AnyEntry, format: Format, float: bool) -> String {
    let bundle = json::entry_value(entry);
    match format {
        Format::Json if !float => line(&bundle),
        _ => {
            let mats = json::bundle_matrices(&bundle).expect("bundle re-parses");
            let n = mats.len() - 3;
            let names: Vec<String> = (1..=n)
                .map(|i| format!("X{i}"))
                .chain(["reversion", "conjugation", "grade"].map(String::from))
                .collect();
            if format == Format::Json {
                let v: Vec<Value> = names
                    .iter()
                    .zip(&mats)
                    .map(|(k, m)| json!({"name": k, "matrix": json::render_matrix(m, true)}))
                    .collect();
                return line(&json!({"signature": entry.signature().to_string(), "matrices": v}));
            }
            let mut out = format!(
                "Spin+({}) over {}, {}\n",
                entry.signature(),
                entry.ring().name(),
                entry.classical_group().name()
            );
            for (k, m) in names.iter().zip(&mats) {
                out.push_str(&format!("# {k}\n"));
                out.push_str(&if format == Format::Csv {
                    json::matrix_csv(m, float)
                } else {
                    json::matrix_pretty(m, float)
                });
            }
            out
        }
    }
}

fn membership(
    entry: &AnyEntry,
    x: &AnyMatrix,
    algebra: bool,
    tol: f64,
) -> Result<MembershipReport, CliError> {
    if let (AnyMatrix::Float64(m), AnyEntry::Real(e)) = (x, entry) {
        let rep = e.rep.to_float();
        return Ok(if algebra {
            spin_algebra_membership_tol(&rep, m, tol)?
        } else {
            spin_membership_tol(&rep, m, tol)?
        });
    }
    Ok(if algebra {
        entry.spin_algebra_membership(x)?
    } else {
        entry.spin_membership(x)?
    })
}

fn membership_text(r: &MembershipReport, format: Format) -> String {
    let failed: Vec<&str> = r.failed().iter().map(|c| c.name()).collect();
    match format {
        Format::Json => line(&json!({
            "member": r.is_member(),
            "even": r.even,
            "involution": r.involution,
            "preserves_one_vectors": r.preserves_one_vectors,
            "condition_iii_required": r.condition_iii_required,
            "failed": failed,
        })),
        Format::Csv => format!(
            "member,even,involution,preserves_one_vectors,condition_iii_required\n{},{},{},{},{}\n",
            r.is_member(),
            r.even,
            r.involution,
            r.preserves_one_vectors,
            r.condition_iii_required
        ),
        Format::Pretty => {
            let mut s = format!("member: {}\n", r.is_member());
            for c in failed {
                s.push_str(&format!("  fails {c}\n"));
            }
            s
        }
    }
}

/// The cover output, exact when the input was exact.
enum CoverOut {
    Exact(CoverResult<Q>),
    Float(CoverResult<f64>),
}

fn cover(entry: &AnyEntry, g: &AnyMatrix, tol: f64) -> Result<CoverOut, CliError> {
    Ok(match (entry, g) {
        (AnyEntry::Real(e), AnyMatrix::Float64(m)) => {
            CoverOut::Float(cover_group_rep(&e.rep.to_float(), m, tol)?)
        }
        (AnyEntry::Real(e), g) => CoverOut::Exact(cover_group_rep(
            &e.rep,
            g.promote(Ring::Rational)?.as_rational()?,
            tol,
        )?),
        (AnyEntry::Complex(e), g) => {
            CoverOut::Exact(cover_group_rep(&e.rep, &g.as_complex()?, tol)?)
        }
        (AnyEntry::Quaternionic(e), g) => {
            CoverOut::Exact(cover_group_rep(&e.rep, &g.as_quaternion()?, tol)?)
        }
    })
}

fn liealg(entry: &AnyEntry, y: &AnyMatrix) -> Result<CoverOut, CliError> {
    Ok(CoverOut::Exact(match entry {
        AnyEntry::Real(e) => cover_algebra(e, y.promote(Ring::Rational)?.as_rational()?)?,
        AnyEntry::Complex(e) => cover_algebra(e, &y.as_complex()?)?,
        AnyEntry::Quaternionic(e) => cover_algebra(e, &y.as_quaternion()?)?,
    }))
}

fn liealg_inverse(entry: &AnyEntry, x: &AnyMatrix) -> Result<AnyMatrix, CliError> {
    let x = x.promote(Ring::Rational)?;
    let x = x.as_rational()?;
    Ok(match entry {
        AnyEntry::Real(e) => AnyMatrix::Rational(AlgebraCoverInverse::new(&e.rep, 0.0)?.apply(x)?),
        AnyEntry::Complex(e) => {
            AnyMatrix::Complex(AlgebraCoverInverse::new(&e.rep, 0.0)?.apply(x)?)
        }
        AnyEntry::Quaternionic(e) => {
            AnyMatrix::Quaternion(AlgebraCoverInverse::new(&e.rep, 0.0)?.apply(x)?)
        }
    })
}

fn matrix_text(m: &AnyMatrix, format: Format, float: bool, key: &str) -> String {
    match format {
        Format::Json => line(&json!({ key: json::render_matrix(m, float) })),
        Format::Csv => json::matrix_csv(m, float),
        Format::Pretty => json::matrix_pretty(m, float),
    }
}

fn cover_text(out: CoverOut, format: Format, float: bool) -> String {
    let (m, residuals) = match out {
        CoverOut::Exact(r) => (AnyMatrix::Rational(r.matrix), r.residuals),
        CoverOut::Float(r) => (AnyMatrix::Float64(r.matrix), r.residuals),
    };
    match format {
        Format::Json => {
            line(&json!({"matrix": json::render_matrix(&m, float), "residuals": residuals}))
        }
        _ => matrix_text(&m, format, float, "matrix"),
    }
}

fn expm_text(out: &ExpmOutput, format: Format) -> String {
    let d = &out.diagnostics;
    let m = AnyMatrix::Float64(out.result.clone());
    match format {
        Format::Json => line(&json!({
            "result": json::matrix_to_value(&m),
            "diagnostics": {
                "method": d.method.name(),
                "orthogonality_residual": d.orthogonality_residual,
                "det_defect": d.det_defect,
                "residual_flags": d.residual_flags,
                "comparison_max_diff": d.comparison_max_diff,
            },
        })),
        Format::Csv => json::matrix_csv(&m, true),
        Format::Pretty => {
            let mut s = json::matrix_pretty(&m, true);
            s.push_str(&format!(
                "orthogonality residual {:e}, det defect {:e}\n",
                d.orthogonality_residual, d.det_defect
            ));
            if let Some(c) = d.comparison_max_diff {
                s.push_str(&format!("max difference to the other method {c:e}\n"));
            }
            s
        }
    }
}

/// Σ c·e_a e_bᵀ over the nonzero entries, 1-based.
pub fn unit_terms(m: &Matrix<Q>) -> String {
    let mut terms = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m.get(i, j);
            if !v.is_zero() {
                terms.push(format!("{v}*e{}e{}^T", i + 1, j + 1));
            }
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

fn table_text(rows: &[Psi32Row], format: Format, float: bool) -> String {
    match format {
        Format::Json => line(&Value::Array(
            rows.iter()
                .map(|r| {
                    json!({
                        "row": r.index,
                        "W": r.printed.w.label(),
                        "Z": r.printed.z.label(),
                        "lambda_printed": r.printed.lambda_label(),
                        "lambda_matches": r.lambda_matches,
                        "z_matches_w": r.z_matches_w,
                        "M_printed": json::render_matrix(&AnyMatrix::Rational(r.m_printed.clone()), float),
                        "M_computed": json::render_matrix(&AnyMatrix::Rational(r.m_computed.clone()), float),
                        "matches_paper": r.m_matches,
                    })
                })
                .collect(),
        )),
        Format::Csv => {
            let mut out = String::from("row,W,Z,lambda_printed,lambda_matches,z_matches_w,M_printed,M_computed,matches_paper\n");
            for r in rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    r.index,
                    r.printed.w.label(),
                    r.printed.z.label(),
                    r.printed.lambda_label(),
                    r.lambda_matches,
                    r.z_matches_w,
                    unit_terms(&r.m_printed),
                    unit_terms(&r.m_computed),
                    r.m_matches
                ));
            }
            out
        }
        Format::Pretty => {
            let mut out = String::new();
            for r in rows {
                let flag = if r.m_matches { "ok  " } else { "DIFF" };
                out.push_str(&format!(
                    "{flag} row {:>2}  Z = {:<14} M printed {}\n                           M computed {}\n",
                    r.index,
                    r.printed.z.label(),
                    unit_terms(&r.m_printed),
                    unit_terms(&r.m_computed)
                ));
            }
            out
        }
    }
}
