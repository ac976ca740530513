//! The `fdalg` command line: load and emit algebra files, decompose,
//! factorize, resolve and re-verify.
//!
//! Exit codes: 0 when every requested check passes, 1 when a verification
//! fails, 2 for input errors (unreadable or malformed files, invalid
//! algebras, bad parameters, size cap exceeded).

pub mod analysis;
pub mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use fdalg::algebra::{Algebra, SplitPolicy, SplitStatus};
use fdalg::bimodule::{BimoduleError, Factorization, Indecomposability};
use fdalg::complex::{factorization_resolution, ComplexError, ExactnessCertificate, DEFAULT_SIZE_CAP};
use fdalg::format::{
    self, ComplexFile, FormatError, ResolutionFile, ALGEBRA_FORMAT, BIMODULE_FORMAT, COMPLEX_FORMAT, RESOLUTION_FORMAT,
};
use fdalg::zoo::{self, Family, ZooError};
use sha2::{Digest, Sha256};
use thiserror::Error;

use analysis::{AnalysisFile, Check, FactorizationFile, SplitRecord, ANALYSIS_FORMAT, FACTORIZATION_FORMAT};
use report::{BlockRow, FactorizationVerdict, InputInfo, Report, ResolutionRow, ResolutionSummary};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    File { path: String, source: FormatError },
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Zoo(#[from] ZooError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Bimodule(#[from] BimoduleError),
    #[error("{path}: unrecognized file kind {kind:?}")]
    UnknownKind { path: String, kind: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::File { source: e, .. } | Self::Format(e) if e.is_verification_failure() => 1,
            Self::Complex(ComplexError::SizeCap { .. } | ComplexError::Depth { .. }) => 2,
            Self::Complex(_) | Self::Bimodule(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Machine,
}

#[derive(Debug, Parser)]
#[command(
    name = "fdalg",
    version,
    about = "Exact analysis of finite-dimensional algebras over Q"
)]
pub struct Cli {
    /// Seed of the idempotent candidate scan.
    #[arg(long, global = true, default_value_t = SplitPolicy::DEFAULT_SEED)]
    pub seed: u64,
    /// Largest tensor power dimension a bar complex may reach.
    #[arg(long, global = true, default_value_t = DEFAULT_SIZE_CAP)]
    pub cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Blocks, semisimplicity, matrix-algebra splitting, indecomposability
    /// and factorizability.
    Analyze {
        file: PathBuf,
        /// Write the analysis certificate here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Blockwise factorization resolution of the regular bimodule.
    Resolve {
        file: PathBuf,
        /// Number of terms of each truncated complex.
        #[arg(long)]
        depth: usize,
        /// Certify exactness and re-check every certificate.
        #[arg(long)]
        verify: bool,
        /// Write the resolution file here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Factorize the regular bimodule of a semisimple split algebra.
    Factorize {
        file: PathBuf,
        /// Write the factorization certificate here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emit a named algebra in the algebra file format.
    Zoo {
        /// One of: rationals, dual, matrix, upper-triangular, exterior,
        /// triplet, sf.
        family: String,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Apply a seeded random change of basis.
        #[arg(long)]
        scramble: Option<u64>,
        /// Output file; the algebra goes to stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-load and re-check any file written by this tool.
    Verify { file: PathBuf },
}

/// What a run prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            Outcome { code, stdout, stderr }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match execute(cli) {
        Ok(Output::Raw(text)) => Outcome {
            code: 0,
            stdout: text,
            stderr: String::new(),
        },
        Ok(Output::Report(r)) => Outcome {
            code: if r.all_checks_pass() { 0 } else { 1 },
            stdout: match cli.format {
                OutputFormat::Text => r.to_text(),
                OutputFormat::Machine => r.to_machine(),
            },
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

#[allow(clippy::large_enum_variant)]
enum Output {
    Report(Report),
    Raw(String),
}

fn policy(cli: &Cli) -> SplitPolicy {
    SplitPolicy {
        seed: cli.seed,
        ..SplitPolicy::default()
    }
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}

fn read_input(path: &Path) -> Result<(String, InputInfo), CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io {
        path: display(path),
        source,
    })?;
    let info = InputInfo {
        path: display(path),
        digest: digest(&bytes),
    };
    let text = String::from_utf8(bytes).map_err(|e| CliError::Io {
        path: display(path),
        source: std::io::Error::new(std::io::ErrorKind::InvalidData, e),
    })?;
    Ok((text, info))
}

fn write_output(path: &Path, text: &str) -> Result<String, CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: display(path),
        source,
    })?;
    Ok(display(path))
}

fn load_algebra(path: &Path) -> Result<(Algebra, InputInfo), CliError> {
    let (text, info) = read_input(path)?;
    let a = format::parse_algebra(&text).map_err(|source| CliError::File {
        path: display(path),
        source,
    })?;
    Ok((a, info))
}

fn execute(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Analyze { file, output } => cmd_analyze(cli, file, output.as_deref()).map(Output::Report),
        Command::Resolve {
            file,
            depth,
            verify,
            output,
        } => cmd_resolve(cli, file, *depth, *verify, output.as_deref()).map(Output::Report),
        Command::Factorize { file, output } => cmd_factorize(cli, file, output.as_deref()).map(Output::Report),
        Command::Zoo {
            family,
            p,
            d,
            n,
            scramble,
            output,
        } => cmd_zoo(cli, family, (*p, *d, *n), *scramble, output.as_deref()),
        Command::Verify { file } => cmd_verify(cli, file).map(Output::Report),
    }
}

fn split_text(s: &SplitRecord) -> String {
    match s {
        SplitRecord::NotTested => "-".into(),
        SplitRecord::Split { iso } => format!("M_{}", iso.n),
        SplitRecord::NotSplit { report } => format!("not split ({report})"),
    }
}

fn indecomposable_text(v: &Indecomposability) -> String {
    match v {
        Indecomposability::ProvenYes => "yes (End is local)".into(),
        Indecomposability::ProvenNo { .. } => "no (idempotent endomorphism)".into(),
        Indecomposability::Unknown { end_mod_radical_dim } => {
            format!("unknown (End/rad has dim {end_mod_radical_dim})")
        }
    }
}

fn verdict(f: &Factorization) -> FactorizationVerdict {
    match f {
        Factorization::Certificate(c) => FactorizationVerdict {
            factorizable: true,
            reason: format!("{} summand(s) X ⊗ Y, isomorphism verified", c.summands.len()),
            summands: c.summand_dims(),
        },
        Factorization::Refused(r) => FactorizationVerdict {
            factorizable: false,
            reason: r.to_string(),
            summands: Vec::new(),
        },
    }
}

fn cmd_analyze(cli: &Cli, file: &Path, output: Option<&Path>) -> Result<Report, CliError> {
    let (a, info) = load_algebra(file)?;
    let a = Arc::new(a);
    let mut report = Report::new("analyze", cli.seed);
    report.input = Some(info);
    report.dim = Some(a.dim());
    let an = analysis::analyze(a.clone(), policy(cli))?;
    for (i, (b, res)) in an.decomposition.blocks.iter().zip(&an.blocks).enumerate() {
        report.blocks.push(BlockRow {
            index: i,
            dim: b.algebra.dim(),
            semisimple: res.semisimple,
            split: split_text(&res.split),
            indecomposable: indecomposable_text(&res.indecomposable),
        });
        if let SplitStatus::NoSplitFoundUnderPolicy { center_mod_radical_dim } = b.status {
            report.note(format!(
                "block {i}: no central idempotent found by the seeded scan; center modulo radical \
                 has dimension {center_mod_radical_dim}, so a field extension may split it"
            ));
        }
        if let Indecomposability::Unknown { .. } = res.indecomposable {
            report.note(format!("block {i}: indecomposability undecided under the seeded scan"));
        }
    }
    report.semisimple = Some(an.is_semisimple());
    report.factorization = Some(verdict(&an.factorization));
    report.checks.push(match an.decomposition.verify(&a) {
        Ok(()) => Check::pass("block decomposition re-verified"),
        Err(e) => Check::fail("block decomposition re-verified", e.to_string()),
    });
    if let Factorization::Certificate(c) = &an.factorization {
        report.checks.push(match c.verify() {
            Ok(()) => Check::pass("factorization certificate re-verified"),
            Err(e) => Check::fail("factorization certificate re-verified", e.to_string()),
        });
    }
    if let Some(path) = output {
        report
            .outputs
            .push(write_output(path, &AnalysisFile::new(&an).to_json())?);
    }
    Ok(report)
}

fn cmd_factorize(cli: &Cli, file: &Path, output: Option<&Path>) -> Result<Report, CliError> {
    let (a, info) = load_algebra(file)?;
    let a = Arc::new(a);
    let p = policy(cli);
    let mut report = Report::new("factorize", cli.seed);
    report.input = Some(info);
    report.dim = Some(a.dim());
    let dec = a.central_idempotents(&p);
    let f = a.factorize_semisimple(&dec, &p)?;
    report.factorization = Some(verdict(&f));
    if let Factorization::Certificate(c) = &f {
        report.semisimple = Some(true);
        report.checks.push(match c.verify() {
            Ok(()) => Check::pass("factorization certificate re-verified"),
            Err(e) => Check::fail("factorization certificate re-verified", e.to_string()),
        });
    }
    if let Some(path) = output {
        report
            .outputs
            .push(write_output(path, &FactorizationFile::new(&a, p, &f).to_json())?);
    }
    Ok(report)
}

fn exactness_digest(c: &ExactnessCertificate) -> String {
    digest(serde_json::to_string(c).expect("certificates serialize").as_bytes())
}

fn exactness_check(block: Option<usize>, c: &ExactnessCertificate) -> Check {
    let name = match block {
        Some(b) => format!("block {b}: exact at every certified position"),
        None => "exact at every certified position".to_string(),
    };
    let bad = c.inexact_positions();
    if bad.is_empty() {
        Check::pass(name)
    } else {
        Check::fail(name, format!("inexact at positions {bad:?}"))
    }
}

fn cmd_resolve(cli: &Cli, file: &Path, depth: usize, verify: bool, output: Option<&Path>) -> Result<Report, CliError> {
    let (a, info) = load_algebra(file)?;
    let p = policy(cli);
    let mut report = Report::new("resolve", cli.seed);
    report.input = Some(info);
    report.dim = Some(a.dim());
    let dec = a.central_idempotents(&p);
    let r = factorization_resolution(&a, &dec, depth, &p, cli.cap)?;
    let mut rows = Vec::with_capacity(r.blocks.len());
    for b in &r.blocks {
        let mut row = ResolutionRow {
            block: b.block,
            kind: b.kind.to_string(),
            length: b.complex.length(),
            term_dims: b.complex.term_dims(),
            exact: None,
            certificate_digest: None,
        };
        if verify {
            let cert = b.complex.verify_exactness();
            row.exact = Some(cert.all_exact());
            row.certificate_digest = Some(exactness_digest(&cert));
            report.checks.push(exactness_check(Some(b.block), &cert));
            let certs_ok = b.certificates.iter().map(|c| c.verify()).collect::<Result<Vec<_>, _>>();
            let name = format!(
                "block {}: {} factorization certificate(s)",
                b.block,
                b.certificates.len()
            );
            report.checks.push(match certs_ok {
                Ok(_) => Check::pass(name),
                Err(e) => Check::fail(name, e.to_string()),
            });
        }
        for n in b.complex.notes() {
            report.note(n.clone());
        }
        rows.push(row);
    }
    report.resolution = Some(ResolutionSummary { depth, blocks: rows });
    if let Some(path) = output {
        report
            .outputs
            .push(write_output(path, &ResolutionFile::new(&a, &r, depth).to_json())?);
    }
    Ok(report)
}

fn cmd_zoo(
    cli: &Cli,
    family: &str,
    (p, d, n): (Option<usize>, Option<usize>, Option<usize>),
    scramble: Option<u64>,
    output: Option<&Path>,
) -> Result<Output, CliError> {
    let mut a = Family::parse(family, p, d, n)?.build()?;
    if let Some(seed) = scramble {
        a = zoo::scramble(&a, seed);
    }
    let text = format::write_algebra(&a);
    match output {
        None => Ok(Output::Raw(text)),
        Some(path) => {
            let mut report = Report::new("zoo", cli.seed);
            report.dim = Some(a.dim());
            if matches!(family, "sf" | "exterior") {
                report.note("the even exterior algebra is realized with the wedge product; the model fixes only its bimodule type");
            }
            report.outputs.push(write_output(path, &text)?);
            Ok(Output::Report(report))
        }
    }
}

/// Turns a load failure into a failed check when the file was well formed
/// but its content does not verify; other failures stay input errors.
fn load_or_fail<T>(
    path: &Path,
    report: &mut Report,
    name: &str,
    r: Result<T, FormatError>,
) -> Result<Option<T>, CliError> {
    match r {
        Ok(v) => {
            report.checks.push(Check::pass(name));
            Ok(Some(v))
        }
        Err(e) if e.is_verification_failure() => {
            report.checks.push(Check::fail(name, e.to_string()));
            Ok(None)
        }
        Err(source) => Err(CliError::File {
            path: display(path),
            source,
        }),
    }
}

fn cmd_verify(cli: &Cli, file: &Path) -> Result<Report, CliError> {
    let (text, info) = read_input(file)?;
    let mut report = Report::new("verify", cli.seed);
    report.input = Some(info);
    let file_err = |source| CliError::File {
        path: display(file),
        source,
    };
    let Some(kind) = format::sniff_format(&text) else {
        // re-parse as an algebra for a positioned error message
        return Err(file_err(format::parse_algebra(&text).err().unwrap_or(
            FormatError::Syntax {
                line: 1,
                column: 1,
                message: "missing format header".into(),
            },
        )));
    };
    match kind.as_str() {
        ALGEBRA_FORMAT => {
            let a = format::parse_algebra(&text).map_err(file_err)?;
            report.dim = Some(a.dim());
            report.checks.push(Check::pass("associativity and unit law"));
        }
        BIMODULE_FORMAT => {
            let b = format::parse_bimodule(&text);
            if let Some(b) = load_or_fail(file, &mut report, "bimodule axioms", b)? {
                report.dim = Some(b.dim());
            }
        }
        COMPLEX_FORMAT => {
            let f = ComplexFile::parse(&text).map_err(file_err)?;
            let loaded = f.load();
            let name = "complex rebuilt: module axioms, intertwining maps, d∘d = 0, stored certificate";
            if let Some((c, cert)) = load_or_fail(file, &mut report, name, loaded)? {
                report.dim = Some(c.algebra().dim());
                report.checks.push(exactness_check(None, &cert));
                for n in c.notes() {
                    report.note(n.clone());
                }
            }
        }
        RESOLUTION_FORMAT => {
            let f = ResolutionFile::parse(&text).map_err(file_err)?;
            let name = "resolution rebuilt: inclusions, block kinds, complexes, certificates";
            if let Some(l) = load_or_fail(file, &mut report, name, f.load())? {
                report.dim = Some(l.parent.dim());
                let mut rows = Vec::new();
                for (b, cert) in l.resolution.blocks.iter().zip(&l.exactness) {
                    report.checks.push(exactness_check(Some(b.block), cert));
                    rows.push(ResolutionRow {
                        block: b.block,
                        kind: b.kind.to_string(),
                        length: b.complex.length(),
                        term_dims: b.complex.term_dims(),
                        exact: Some(cert.all_exact()),
                        certificate_digest: Some(exactness_digest(cert)),
                    });
                    for n in b.complex.notes() {
                        report.note(n.clone());
                    }
                }
                report.resolution = Some(ResolutionSummary {
                    depth: l.depth,
                    blocks: rows,
                });
            }
        }
        ANALYSIS_FORMAT => {
            let f = AnalysisFile::parse(&text).map_err(file_err)?;
            report.dim = Some(f.algebra.dim);
            report.checks = analysis::verify_analysis(f)?;
        }
        FACTORIZATION_FORMAT => {
            let f = FactorizationFile::parse(&text).map_err(file_err)?;
            report.dim = Some(f.algebra.dim);
            report.checks = analysis::verify_factorization(f)?;
        }
        other => {
            return Err(CliError::UnknownKind {
                path: display(file),
                kind: other.to_string(),
            })
        }
    }
    Ok(report)
}
