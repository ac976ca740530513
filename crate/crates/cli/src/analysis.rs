//! Block analysis and the certificate files backing `analyze` and
//! `factorize` verdicts.

use std::sync::Arc;

use fdalg::algebra::{
    Algebra, Block, BlockDecomposition, MatrixAlgebraIso, NotSplitReport, SplitPolicy, SplitStatus, WedderburnOutcome,
};
use fdalg::bimodule::{Bimodule, Factorization, Indecomposability, Refusal};
use fdalg::format::{AlgebraData, CertificateData, FormatError, FORMAT_VERSION};
use fdalg::linalg::{Matrix, Rational};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const ANALYSIS_FORMAT: &str = "fdalg-analysis";
pub const FACTORIZATION_FORMAT: &str = "fdalg-factorization";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SplitRecord {
    /// Only semisimple blocks are tested.
    NotTested,
    Split {
        iso: MatrixAlgebraIso,
    },
    NotSplit {
        report: NotSplitReport,
    },
}

#[derive(Clone, Debug)]
pub struct BlockAnalysis {
    pub semisimple: bool,
    pub radical_dim: usize,
    pub split: SplitRecord,
    pub indecomposable: Indecomposability,
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub algebra: Arc<Algebra>,
    pub policy: SplitPolicy,
    pub decomposition: BlockDecomposition,
    pub blocks: Vec<BlockAnalysis>,
    pub factorization: Factorization,
}

impl Analysis {
    pub fn is_semisimple(&self) -> bool {
        self.blocks.iter().all(|b| b.semisimple)
    }
}

fn analyze_block(b: &Algebra, policy: &SplitPolicy) -> BlockAnalysis {
    let radical_dim = b.radical().dim();
    let split = if radical_dim == 0 {
        match b.wedderburn_split(policy) {
            Ok(WedderburnOutcome::Split(iso)) => SplitRecord::Split { iso },
            Ok(WedderburnOutcome::NotSplit(report)) => SplitRecord::NotSplit { report },
            // a semisimple block the scan could not separate further
            Err(_) => SplitRecord::NotTested,
        }
    } else {
        SplitRecord::NotTested
    };
    BlockAnalysis {
        semisimple: radical_dim == 0,
        radical_dim,
        split,
        indecomposable: Bimodule::regular(Arc::new(b.clone())).is_indecomposable(policy),
    }
}

/// Blocks, per-block semisimplicity, matrix-algebra splitting and
/// indecomposability, and the factorization of the regular bimodule.
pub fn analyze(a: Arc<Algebra>, policy: SplitPolicy) -> Result<Analysis, CliError> {
    let decomposition = a.central_idempotents(&policy);
    let blocks = decomposition
        .blocks
        .iter()
        .map(|b| analyze_block(&b.algebra, &policy))
        .collect();
    let factorization = a.factorize_semisimple(&decomposition, &policy)?;
    Ok(Analysis {
        algebra: a,
        policy,
        decomposition,
        blocks,
        factorization,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum FactorizationRecord {
    Certificate { certificate: CertificateData },
    Refused { refusal: Refusal },
}

impl FactorizationRecord {
    pub fn from_factorization(f: &Factorization) -> Self {
        match f {
            Factorization::Certificate(c) => Self::Certificate {
                certificate: CertificateData::from_certificate(c),
            },
            Factorization::Refused(r) => Self::Refused { refusal: r.clone() },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockRecord {
    pub algebra: AlgebraData,
    pub inclusion: Matrix,
    pub idempotent: Vec<Rational>,
    pub status: SplitStatus,
    pub semisimple: bool,
    pub radical_dim: usize,
    pub split: SplitRecord,
    pub indecomposable: Indecomposability,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisFile {
    pub format: String,
    pub version: u32,
    pub algebra: AlgebraData,
    pub policy: SplitPolicy,
    pub blocks: Vec<BlockRecord>,
    pub factorization: FactorizationRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorizationFile {
    pub format: String,
    pub version: u32,
    pub algebra: AlgebraData,
    pub policy: SplitPolicy,
    pub factorization: FactorizationRecord,
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn check_header(format: &str, version: u32, expected: &'static str) -> Result<(), FormatError> {
    if format != expected {
        return Err(FormatError::WrongFormat {
            expected,
            found: format.to_string(),
        });
    }
    if version != FORMAT_VERSION {
        return Err(FormatError::Version(version));
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("certificate data serializes");
    s.push('\n');
    s
}

impl AnalysisFile {
    pub fn new(an: &Analysis) -> Self {
        let blocks = an
            .decomposition
            .blocks
            .iter()
            .zip(&an.decomposition.idempotents)
            .zip(&an.blocks)
            .map(|((b, e), res)| BlockRecord {
                algebra: AlgebraData::from_algebra(&b.algebra),
                inclusion: b.inclusion.clone(),
                idempotent: e.coeffs().to_vec(),
                status: b.status.clone(),
                semisimple: res.semisimple,
                radical_dim: res.radical_dim,
                split: res.split.clone(),
                indecomposable: res.indecomposable.clone(),
            })
            .collect();
        Self {
            format: ANALYSIS_FORMAT.into(),
            version: FORMAT_VERSION,
            algebra: AlgebraData::from_algebra(&an.algebra),
            policy: an.policy,
            blocks,
            factorization: FactorizationRecord::from_factorization(&an.factorization),
        }
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let f: Self = parse_json(text)?;
        check_header(&f.format, f.version, ANALYSIS_FORMAT)?;
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

impl FactorizationFile {
    pub fn new(a: &Algebra, policy: SplitPolicy, f: &Factorization) -> Self {
        Self {
            format: FACTORIZATION_FORMAT.into(),
            version: FORMAT_VERSION,
            algebra: AlgebraData::from_algebra(a),
            policy,
            factorization: FactorizationRecord::from_factorization(f),
        }
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let f: Self = parse_json(text)?;
        check_header(&f.format, f.version, FACTORIZATION_FORMAT)?;
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

/// Outcome of one re-check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: true,
            detail: String::new(),
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: false,
            detail: detail.into(),
        }
    }

    fn of(name: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) -> Self {
        if ok {
            Self::pass(name)
        } else {
            Self::fail(name, detail())
        }
    }
}

/// `phi` is a nontrivial idempotent commuting with both regular actions of
/// `b`.
fn is_splitting_endomorphism(b: &Algebra, phi: &Matrix) -> bool {
    let n = b.dim();
    if phi.rows() != n || phi.cols() != n || phi.mul(phi) != *phi {
        return false;
    }
    if phi.is_zero() || *phi == Matrix::identity(n) {
        return false;
    }
    (0..n).all(|k| {
        let x = b.basis_element(k).into_coeffs();
        let l = b.left_mult(&x);
        let r = b.right_mult(&x);
        phi.mul(&l) == l.mul(phi) && phi.mul(&r) == r.mul(phi)
    })
}

/// Checks the factorization record against the regular bimodule of `a`,
/// recomputing refusals.
fn check_factorization(
    a: &Arc<Algebra>,
    dec: &BlockDecomposition,
    policy: &SplitPolicy,
    record: FactorizationRecord,
) -> Result<Check, CliError> {
    Ok(match record {
        FactorizationRecord::Certificate { certificate } => {
            let target = Arc::new(Bimodule::regular(a.clone()));
            match certificate.build(target) {
                Ok(_) => Check::pass("factorization certificate is a bijective bimodule map"),
                Err(e) => Check::fail("factorization certificate is a bijective bimodule map", e.to_string()),
            }
        }
        FactorizationRecord::Refused { refusal } => {
            let again = a.factorize_semisimple(dec, policy)?;
            let ok = matches!(&again, Factorization::Refused(r) if *r == refusal);
            Check::of("factorization refusal reproduced", ok, || {
                "recomputation gave a different outcome".into()
            })
        }
    })
}

/// Re-checks an analysis certificate from scratch. Fails with an input
/// error only when the stored parent algebra itself is invalid.
pub fn verify_analysis(file: AnalysisFile) -> Result<Vec<Check>, CliError> {
    let a = Arc::new(file.algebra.build()?);
    let policy = file.policy;
    let mut checks = Vec::new();
    let mut idempotents = Vec::with_capacity(file.blocks.len());
    let mut blocks = Vec::with_capacity(file.blocks.len());
    let mut records = Vec::with_capacity(file.blocks.len());
    for (i, r) in file.blocks.into_iter().enumerate() {
        let b = match r.algebra.clone().build() {
            Ok(b) => b,
            Err(e) => {
                checks.push(Check::fail(format!("block {i} algebra"), e.to_string()));
                return Ok(checks);
            }
        };
        idempotents.push(r.idempotent.clone());
        blocks.push(Block {
            algebra: b,
            inclusion: r.inclusion.clone(),
            status: r.status.clone(),
        });
        records.push(r);
    }
    let dec = match BlockDecomposition::from_parts(&a, idempotents, blocks) {
        Ok(d) => {
            checks.push(Check::pass("central idempotents and block inclusions"));
            d
        }
        Err(e) => {
            checks.push(Check::fail("central idempotents and block inclusions", e.to_string()));
            return Ok(checks);
        }
    };
    for (i, (blk, r)) in dec.blocks.iter().zip(records).enumerate() {
        let b = &blk.algebra;
        let radical_dim = b.radical().dim();
        checks.push(Check::of(
            format!("block {i}: radical dimension {}", r.radical_dim),
            radical_dim == r.radical_dim && r.semisimple == (radical_dim == 0),
            || format!("recomputed radical dimension {radical_dim}"),
        ));
        let cmr = b.center_mod_radical_dim();
        let status_ok = match r.status {
            SplitStatus::ProvenIndecomposable => cmr == 1,
            SplitStatus::NoSplitFoundUnderPolicy { center_mod_radical_dim } => center_mod_radical_dim == cmr,
        };
        checks.push(Check::of(format!("block {i}: split status"), status_ok, || {
            format!("center modulo radical has dimension {cmr}")
        }));
        let split_ok = match &r.split {
            SplitRecord::Split { iso } => iso.verify(b),
            SplitRecord::NotSplit { report } => {
                matches!(b.wedderburn_split(&policy), Ok(WedderburnOutcome::NotSplit(x)) if x == *report)
            }
            SplitRecord::NotTested => radical_dim != 0 || b.wedderburn_split(&policy).is_err(),
        };
        checks.push(Check::of(
            format!("block {i}: matrix-algebra verdict"),
            split_ok,
            || "stored verdict not reproduced".into(),
        ));
        let indec_ok = match &r.indecomposable {
            Indecomposability::ProvenNo { idempotent } => is_splitting_endomorphism(b, idempotent),
            other => Bimodule::regular(Arc::new(b.clone())).is_indecomposable(&policy) == *other,
        };
        checks.push(Check::of(
            format!("block {i}: indecomposability verdict"),
            indec_ok,
            || "stored verdict not reproduced".into(),
        ));
    }
    checks.push(check_factorization(&a, &dec, &policy, file.factorization)?);
    Ok(checks)
}

pub fn verify_factorization(file: FactorizationFile) -> Result<Vec<Check>, CliError> {
    let a = Arc::new(file.algebra.build()?);
    let dec = a.central_idempotents(&file.policy);
    Ok(vec![check_factorization(&a, &dec, &file.policy, file.factorization)?])
}

#[cfg(test)]
mod tests {
    use super::*;
    use fdalg::zoo;

    fn round_trip(a: Algebra) -> Vec<Check> {
        let an = analyze(Arc::new(a), SplitPolicy::default()).unwrap();
        let text = AnalysisFile::new(&an).to_json();
        verify_analysis(AnalysisFile::parse(&text).unwrap()).unwrap()
    }

    #[test]
    fn certificates_verify() {
        for a in [zoo::triplet_zhu(2), zoo::matrix_algebra(2), zoo::quaternions(-1, -1)] {
            let checks = round_trip(a);
            assert!(checks.iter().all(|c| c.passed), "{checks:?}");
        }
    }

    #[test]
    fn tampered_verdict_is_caught() {
        let an = analyze(Arc::new(zoo::upper_triangular(2)), SplitPolicy::default()).unwrap();
        let mut f = AnalysisFile::new(&an);
        f.blocks[0].radical_dim = 0;
        f.blocks[0].semisimple = true;
        let checks = verify_analysis(f).unwrap();
        assert!(checks.iter().any(|c| !c.passed));
    }

    #[test]
    fn fake_idempotent_is_rejected() {
        let b = zoo::dual_numbers();
        let mut phi = Matrix::zeros(2, 2);
        phi.set(0, 0, Rational::one());
        assert!(!is_splitting_endomorphism(&b, &phi));
        let m = zoo::direct_product(&[zoo::rationals(), zoo::rationals()]);
        assert!(is_splitting_endomorphism(&m, &phi));
    }
}
