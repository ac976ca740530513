//! Versioned JSON files for algebras, bimodules, complexes and blockwise
//! resolutions.
//!
//! Every file starts with `"format"` and `"version"` fields. Loaders re-run
//! the checks of the corresponding constructors, so whatever loads is a
//! valid object; stored exactness certificates are recomputed and compared.
//!
//! The algebra writer emits a fixed layout, one table record per line, and
//! `write_algebra(parse_algebra(s)) == s` holds for every file it wrote.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};
use crate::bimodule::{
    Bimodule, BimoduleData, BimoduleError, FactorizationCertificate, LeftModule, ModuleData, RightModule,
};
use crate::complex::{
    BlockResolution, ChainComplex, ComplexData, ComplexError, ExactnessCertificate, FactorizationResolution,
    ResolutionKind,
};
use crate::linalg::{Matrix, Rational, SparseMatrix, MAX_WIRE_DIM};

pub const FORMAT_VERSION: u32 = 1;
pub const ALGEBRA_FORMAT: &str = "fdalg-algebra";
pub const BIMODULE_FORMAT: &str = "fdalg-bimodule";
pub const COMPLEX_FORMAT: &str = "fdalg-complex";
pub const RESOLUTION_FORMAT: &str = "fdalg-resolution";

/// Largest algebra dimension accepted from a file.
pub const MAX_FILE_DIM: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("expected a {expected:?} file, found {found:?}")]
    WrongFormat { expected: &'static str, found: String },
    #[error("unsupported format version {0} (supported: {FORMAT_VERSION})")]
    Version(u32),
    #[error("{what}: expected {expected}, found {found}")]
    Shape {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("dimension {found} exceeds the limit {limit}")]
    TooLarge { found: usize, limit: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Bimodule(#[from] BimoduleError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("block {block}: {reason}")]
    Block { block: usize, reason: String },
    #[error("stored exactness certificate differs from the recomputed one{}", fmt_block(*.block))]
    ExactnessMismatch { block: Option<usize> },
}

fn fmt_block(block: Option<usize>) -> String {
    block.map(|b| format!(" in block {b}")).unwrap_or_default()
}

impl FormatError {
    /// The file was well formed but re-checking its mathematical content
    /// failed. Malformed input and invalid algebras are not in this class.
    pub fn is_verification_failure(&self) -> bool {
        matches!(
            self,
            Self::Bimodule(_) | Self::Complex(_) | Self::Block { .. } | Self::ExactnessMismatch { .. }
        )
    }
}

fn syntax(e: serde_json::Error) -> FormatError {
    FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

#[derive(Deserialize)]
struct Header {
    format: String,
    version: u32,
}

/// Reads the header first so that a wrong file kind is reported as such
/// rather than as a missing field.
fn read<T: DeserializeOwned>(text: &str, expected: &'static str) -> Result<T, FormatError> {
    let h: Header = serde_json::from_str(text).map_err(syntax)?;
    if h.format != expected {
        return Err(FormatError::WrongFormat {
            expected,
            found: h.format,
        });
    }
    if h.version != FORMAT_VERSION {
        return Err(FormatError::Version(h.version));
    }
    serde_json::from_str(text).map_err(syntax)
}

/// The kind of file named by the `"format"` field, if the text has a header.
pub fn sniff_format(text: &str) -> Option<String> {
    serde_json::from_str::<Header>(text).ok().map(|h| h.format)
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("in-memory values serialize");
    s.push('\n');
    s
}

/// Structure constants without the file header; embedded in the other file
/// kinds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraData {
    pub dim: usize,
    pub labels: Vec<String>,
    pub unit: Vec<Rational>,
    pub table: Vec<(usize, usize, usize, Rational)>,
}

impl AlgebraData {
    pub fn from_algebra(a: &Algebra) -> Self {
        Self {
            dim: a.dim(),
            labels: a.labels().to_vec(),
            unit: a.unit().to_vec(),
            table: a.records(),
        }
    }

    /// Checks the declared dimension and the algebra axioms.
    pub fn build(self) -> Result<Algebra, FormatError> {
        if self.dim > MAX_FILE_DIM {
            return Err(FormatError::TooLarge {
                found: self.dim,
                limit: MAX_FILE_DIM,
            });
        }
        if self.labels.len() != self.dim {
            return Err(FormatError::Shape {
                what: "labels",
                expected: self.dim,
                found: self.labels.len(),
            });
        }
        if self.unit.len() != self.dim {
            return Err(FormatError::Shape {
                what: "unit coefficients",
                expected: self.dim,
                found: self.unit.len(),
            });
        }
        Ok(Algebra::from_records(self.labels, self.unit, self.table)?)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    #[allow(dead_code)]
    format: String,
    #[allow(dead_code)]
    version: u32,
    dim: usize,
    labels: Vec<String>,
    unit: Vec<Rational>,
    table: Vec<(usize, usize, usize, Rational)>,
}

pub fn parse_algebra(text: &str) -> Result<Algebra, FormatError> {
    let f: AlgebraFile = read(text, ALGEBRA_FORMAT)?;
    AlgebraData {
        dim: f.dim,
        labels: f.labels,
        unit: f.unit,
        table: f.table,
    }
    .build()
}

fn quoted<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("strings serialize")
}

fn joined<T: Serialize>(items: &[T]) -> String {
    items.iter().map(|x| quoted(x)).collect::<Vec<_>>().join(", ")
}

pub fn write_algebra(a: &Algebra) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"format\": {},", quoted(ALGEBRA_FORMAT));
    let _ = writeln!(out, "  \"version\": {FORMAT_VERSION},");
    let _ = writeln!(out, "  \"dim\": {},", a.dim());
    let _ = writeln!(out, "  \"labels\": [{}],", joined(a.labels()));
    let _ = writeln!(out, "  \"unit\": [{}],", joined(a.unit()));
    let records = a.records();
    if records.is_empty() {
        out.push_str("  \"table\": []\n");
    } else {
        out.push_str("  \"table\": [\n");
        for (n, (i, j, k, v)) in records.iter().enumerate() {
            let sep = if n + 1 == records.len() { "" } else { "," };
            let _ = writeln!(out, "    [{i}, {j}, {k}, {}]{sep}", quoted(v));
        }
        out.push_str("  ]\n");
    }
    out.push_str("}\n");
    out
}

fn check_bimodule_dim(data: &BimoduleData) -> Result<(), FormatError> {
    if data.dim > MAX_WIRE_DIM {
        return Err(FormatError::TooLarge {
            found: data.dim,
            limit: MAX_WIRE_DIM,
        });
    }
    Ok(())
}

fn check_module_dim(data: &ModuleData) -> Result<(), FormatError> {
    if data.dim > MAX_WIRE_DIM {
        return Err(FormatError::TooLarge {
            found: data.dim,
            limit: MAX_WIRE_DIM,
        });
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BimoduleFile {
    format: String,
    version: u32,
    algebra: AlgebraData,
    dim: usize,
    left: Vec<SparseMatrix>,
    right: Vec<SparseMatrix>,
}

/// A bimodule together with its algebra.
pub fn write_bimodule(b: &Bimodule) -> String {
    json_line(&BimoduleFile {
        format: BIMODULE_FORMAT.into(),
        version: FORMAT_VERSION,
        algebra: AlgebraData::from_algebra(b.parent()),
        dim: b.dim(),
        left: b.left_actions().to_vec(),
        right: b.right_actions().to_vec(),
    })
}

pub fn parse_bimodule(text: &str) -> Result<Bimodule, FormatError> {
    let f: BimoduleFile = read(text, BIMODULE_FORMAT)?;
    let data = BimoduleData {
        dim: f.dim,
        left: f.left,
        right: f.right,
    };
    check_bimodule_dim(&data)?;
    let a = Arc::new(f.algebra.build()?);
    Ok(Bimodule::from_data(a, data)?)
}

fn check_complex_dims(data: &ComplexData) -> Result<(), FormatError> {
    check_bimodule_dim(&data.target)?;
    data.terms.iter().try_for_each(check_bimodule_dim)
}

/// A chain complex over one algebra, optionally with the exactness
/// certificate computed when it was written.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub format: String,
    pub version: u32,
    pub algebra: AlgebraData,
    pub complex: ComplexData,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exactness: Option<ExactnessCertificate>,
}

impl ComplexFile {
    pub fn new(c: &ChainComplex, exactness: Option<ExactnessCertificate>) -> Self {
        Self {
            format: COMPLEX_FORMAT.into(),
            version: FORMAT_VERSION,
            algebra: AlgebraData::from_algebra(c.algebra()),
            complex: c.to_data(),
            exactness,
        }
    }

    /// Syntax and header only; see [`ComplexFile::load`] for the checks.
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        read(text, COMPLEX_FORMAT)
    }

    pub fn to_json(&self) -> String {
        json_line(self)
    }

    /// Rebuilds the complex (module axioms, intertwining, `d d = 0`),
    /// recomputes exactness and compares it with the stored certificate.
    pub fn load(self) -> Result<(ChainComplex, ExactnessCertificate), FormatError> {
        check_complex_dims(&self.complex)?;
        let a = Arc::new(self.algebra.build()?);
        let c = ChainComplex::from_data(a, self.complex)?;
        let cert = c.verify_exactness();
        if self.exactness.is_some_and(|stored| stored != cert) {
            return Err(FormatError::ExactnessMismatch { block: None });
        }
        Ok((c, cert))
    }
}

/// Parses and fully re-checks a complex file.
pub fn parse_complex(text: &str) -> Result<ChainComplex, FormatError> {
    ComplexFile::parse(text)?.load().map(|(c, _)| c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateData {
    pub summands: Vec<(ModuleData, ModuleData)>,
    pub map: SparseMatrix,
}

impl CertificateData {
    pub fn from_certificate(c: &FactorizationCertificate) -> Self {
        Self {
            summands: c.summands.iter().map(|(x, y)| (x.to_data(), y.to_data())).collect(),
            map: c.iso.matrix().clone(),
        }
    }

    /// Rebuilds the certificate as an isomorphism onto `target`.
    pub fn build(self, target: Arc<Bimodule>) -> Result<FactorizationCertificate, FormatError> {
        let a = target.parent().clone();
        let mut summands = Vec::with_capacity(self.summands.len());
        for (x, y) in self.summands {
            check_module_dim(&x)?;
            check_module_dim(&y)?;
            summands.push((
                LeftModule::new(a.clone(), x.dim, x.action)?,
                RightModule::new(a.clone(), y.dim, y.action)?,
            ));
        }
        Ok(FactorizationCertificate::new(summands, target, self.map)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockFile {
    pub block: usize,
    pub kind: ResolutionKind,
    pub algebra: AlgebraData,
    /// Block basis in the parent algebra, as columns.
    pub inclusion: Matrix,
    pub complex: ComplexData,
    /// One per term of the complex.
    pub certificates: Vec<CertificateData>,
    pub exactness: ExactnessCertificate,
}

/// A blockwise resolution: each block's complex lives over the block
/// algebra, embedded in the parent by `inclusion`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionFile {
    pub format: String,
    pub version: u32,
    pub algebra: AlgebraData,
    pub depth: usize,
    pub blocks: Vec<BlockFile>,
}

/// A re-checked resolution file.
#[derive(Clone, Debug)]
pub struct LoadedResolution {
    pub parent: Algebra,
    pub depth: usize,
    pub resolution: FactorizationResolution,
    /// One per block, recomputed.
    pub exactness: Vec<ExactnessCertificate>,
}

impl ResolutionFile {
    pub fn new(parent: &Algebra, r: &FactorizationResolution, depth: usize) -> Self {
        let blocks = r
            .blocks
            .iter()
            .map(|b| BlockFile {
                block: b.block,
                kind: b.kind,
                algebra: AlgebraData::from_algebra(b.complex.algebra()),
                inclusion: b.inclusion.clone(),
                complex: b.complex.to_data(),
                certificates: b.certificates.iter().map(CertificateData::from_certificate).collect(),
                exactness: b.complex.verify_exactness(),
            })
            .collect();
        Self {
            format: RESOLUTION_FORMAT.into(),
            version: FORMAT_VERSION,
            algebra: AlgebraData::from_algebra(parent),
            depth,
            blocks,
        }
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        read(text, RESOLUTION_FORMAT)
    }

    pub fn to_json(&self) -> String {
        json_line(self)
    }

    /// Rebuilds every block complex and certificate, checks that the
    /// inclusions are multiplicative, injective and together span the
    /// parent with central block units, checks each block's kind, and
    /// compares the stored exactness certificates with recomputed ones.
    pub fn load(self) -> Result<LoadedResolution, FormatError> {
        let parent = self.algebra.build()?;
        let mut blocks = Vec::with_capacity(self.blocks.len());
        let mut exactness = Vec::with_capacity(self.blocks.len());
        let mut columns: Vec<Vec<Rational>> = Vec::new();
        for (pos, bf) in self.blocks.into_iter().enumerate() {
            let fail = |reason: String| FormatError::Block { block: pos, reason };
            if bf.block != pos {
                return Err(fail(format!("stored index {} out of order", bf.block)));
            }
            check_complex_dims(&bf.complex)?;
            let b = Arc::new(bf.algebra.build()?);
            check_inclusion(&parent, &b, &bf.inclusion).map_err(fail)?;
            columns.extend((0..b.dim()).map(|j| bf.inclusion.column(j)));
            check_kind(&b, bf.kind, &bf.complex).map_err(fail)?;

            let complex = ChainComplex::from_data(b, bf.complex)?;
            if bf.certificates.len() != complex.terms().len() {
                return Err(fail(format!(
                    "{} certificates for {} terms",
                    bf.certificates.len(),
                    complex.terms().len()
                )));
            }
            let certificates = bf
                .certificates
                .into_iter()
                .zip(complex.terms())
                .map(|(c, t)| c.build(t.clone()))
                .collect::<Result<Vec<_>, _>>()?;
            if let ResolutionKind::Wedderburn { n } = bf.kind {
                if certificates[0].summand_dims() != [(n, n)] {
                    return Err(fail(format!("certificate is not of the form Q^{n} ⊗ Q^{n}")));
                }
            }
            let cert = complex.verify_exactness();
            if cert != bf.exactness {
                return Err(FormatError::ExactnessMismatch { block: Some(pos) });
            }
            exactness.push(cert);
            blocks.push(BlockResolution {
                block: pos,
                kind: bf.kind,
                inclusion: bf.inclusion,
                complex,
                certificates,
            });
        }
        let spanned = Matrix::from_columns(parent.dim(), &columns).rank();
        if columns.len() != parent.dim() || spanned != parent.dim() {
            return Err(FormatError::Shape {
                what: "dimension spanned by the blocks",
                expected: parent.dim(),
                found: spanned,
            });
        }
        Ok(LoadedResolution {
            resolution: FactorizationResolution {
                parent: parent.fingerprint(),
                blocks,
            },
            parent,
            depth: self.depth,
            exactness,
        })
    }
}

pub fn parse_resolution(text: &str) -> Result<LoadedResolution, FormatError> {
    ResolutionFile::parse(text)?.load()
}

/// `inclusion` is an injective multiplicative map `b -> parent` whose image
/// of the unit of `b` is central in `parent`.
fn check_inclusion(parent: &Algebra, b: &Algebra, inclusion: &Matrix) -> Result<(), String> {
    if inclusion.rows() != parent.dim() || inclusion.cols() != b.dim() {
        return Err(format!(
            "inclusion is {}x{}, expected {}x{}",
            inclusion.rows(),
            inclusion.cols(),
            parent.dim(),
            b.dim()
        ));
    }
    if inclusion.rank() != b.dim() {
        return Err("inclusion is not injective".into());
    }
    if let Some((i, j)) = parent.multiplicativity_defect(b, inclusion) {
        return Err(format!("inclusion is not multiplicative on basis pair ({i}, {j})"));
    }
    let e = inclusion.mul_vec(b.unit());
    if parent.left_mult(&e) != parent.right_mult(&e) {
        return Err("image of the block unit is not central".into());
    }
    Ok(())
}

fn check_kind(b: &Algebra, kind: ResolutionKind, complex: &ComplexData) -> Result<(), String> {
    match kind {
        ResolutionKind::Wedderburn { n } => {
            if n.checked_mul(n) != Some(b.dim()) {
                return Err(format!("a block of dimension {} is not M_{n}", b.dim()));
            }
            if !complex.differentials.is_empty() {
                return Err("a Wedderburn block has a single term".into());
            }
        }
        ResolutionKind::Periodic => {
            if crate::complex::dual_number_generator(b).is_none() {
                return Err("block is not the dual numbers".into());
            }
        }
        ResolutionKind::Bar => {}
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SplitPolicy;
    use crate::complex::{dual_numbers_resolution, factorization_resolution, DEFAULT_SIZE_CAP};
    use crate::zoo;

    #[test]
    fn dual_numbers_file_layout() {
        let text = write_algebra(&zoo::dual_numbers());
        let expected = r#"{
  "format": "fdalg-algebra",
  "version": 1,
  "dim": 2,
  "labels": ["1", "eps"],
  "unit": ["1", "0"],
  "table": [
    [0, 0, 0, "1"],
    [0, 1, 1, "1"],
    [1, 0, 1, "1"]
  ]
}
"#;
        assert_eq!(text, expected);
    }

    #[test]
    fn algebra_round_trip_is_bit_exact() {
        for a in [
            zoo::triplet_zhu(2),
            zoo::sf_zhu(1),
            zoo::scramble(&zoo::upper_triangular(2), 3),
        ] {
            let text = write_algebra(&a);
            let back = parse_algebra(&text).unwrap();
            assert_eq!(back, a);
            assert_eq!(write_algebra(&back), text);
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_algebra("{\n  \"format\": \"fdalg-algebra\",\n  \"version\": 1,\n  oops\n}").unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 4, .. }), "{err}");
        let bad_rational = write_algebra(&zoo::dual_numbers()).replace("\"0\"]", "\"0/0\"]");
        assert!(matches!(
            parse_algebra(&bad_rational).unwrap_err(),
            FormatError::Syntax { line: 6, .. }
        ));
    }

    #[test]
    fn header_is_checked() {
        let text = write_algebra(&zoo::rationals());
        assert!(matches!(
            parse_bimodule(&text),
            Err(FormatError::WrongFormat {
                expected: BIMODULE_FORMAT,
                ..
            })
        ));
        let v2 = text.replace("\"version\": 1", "\"version\": 2");
        assert_eq!(parse_algebra(&v2).unwrap_err(), FormatError::Version(2));
        assert_eq!(sniff_format(&text).as_deref(), Some(ALGEBRA_FORMAT));
    }

    #[test]
    fn broken_associativity_names_the_triple() {
        // Q[x]/(x^3) with y = x^2
        let text = r#"{"format": "fdalg-algebra", "version": 1, "dim": 3, "labels": ["1", "x", "y"],
            "unit": ["1", "0", "0"],
            "table": [[0,0,0,"1"],[0,1,1,"1"],[0,2,2,"1"],[1,0,1,"1"],[2,0,2,"1"],[1,1,2,"1"]]}"#;
        assert!(parse_algebra(text).is_ok());
        // x y = 1 but y x = 0: (x x) x = 0 while x (x x) = 1
        let broken = text.replace("[1,1,2,\"1\"]]", "[1,1,2,\"1\"],[1,2,0,\"1\"]]");
        let err = parse_algebra(&broken).unwrap_err();
        assert!(
            matches!(err, FormatError::Algebra(AlgebraError::Associativity(..))),
            "{err}"
        );
        assert!(err.to_string().contains("triple"));
    }

    #[test]
    fn oversized_dimension_is_refused() {
        let text = r#"{"format": "fdalg-algebra", "version": 1, "dim": 100000, "labels": [], "unit": [], "table": []}"#;
        assert!(matches!(parse_algebra(text), Err(FormatError::TooLarge { .. })));
    }

    #[test]
    fn bimodule_round_trip() {
        let b = Bimodule::regular(Arc::new(zoo::upper_triangular(2)));
        let text = write_bimodule(&b);
        let back = parse_bimodule(&text).unwrap();
        assert_eq!(back, b);
        assert_eq!(write_bimodule(&back), text);
    }

    #[test]
    fn complex_round_trip_and_tamper_detection() {
        let c = dual_numbers_resolution(4).unwrap();
        let file = ComplexFile::new(&c, Some(c.verify_exactness()));
        let text = file.to_json();
        let (back, cert) = ComplexFile::parse(&text).unwrap().load().unwrap();
        assert!(cert.all_exact());
        assert_eq!(ComplexFile::new(&back, Some(cert)).to_json(), text);

        // flip the sign of one entry of f: d d = 0 no longer holds
        let mut tampered = file.clone();
        let d = &tampered.complex.differentials[0];
        let (i, j, v) = d.triplets().next().map(|(i, j, v)| (i, j, v.clone())).unwrap();
        let flipped = d.add(&SparseMatrix::from_triplets(
            d.rows(),
            d.cols(),
            [(i, j, -v.clone() - v)],
        ));
        tampered.complex.differentials[0] = flipped;
        let err = tampered.load().unwrap_err();
        assert!(err.is_verification_failure(), "{err}");

        // a stored certificate claiming the wrong thing is caught
        let mut lying = file;
        lying.exactness.as_mut().unwrap().records[1].exact = false;
        assert_eq!(
            lying.load().unwrap_err(),
            FormatError::ExactnessMismatch { block: None }
        );
    }

    #[test]
    fn resolution_round_trip() {
        let a = zoo::triplet_zhu(2);
        let p = SplitPolicy::default();
        let dec = a.central_idempotents(&p);
        let r = factorization_resolution(&a, &dec, 3, &p, DEFAULT_SIZE_CAP).unwrap();
        let text = ResolutionFile::new(&a, &r, 3).to_json();
        let loaded = parse_resolution(&text).unwrap();
        assert_eq!(loaded.resolution.kinds(), r.kinds());
        assert_eq!(loaded.parent, a);
        assert_eq!(
            ResolutionFile::new(&loaded.parent, &loaded.resolution, 3).to_json(),
            text
        );

        let mut wrong_kind = ResolutionFile::parse(&text).unwrap();
        let bar = wrong_kind
            .blocks
            .iter()
            .position(|b| b.kind == ResolutionKind::Periodic)
            .unwrap();
        wrong_kind.blocks[bar].kind = ResolutionKind::Wedderburn { n: 1 };
        assert!(matches!(wrong_kind.load(), Err(FormatError::Block { .. })));

        let mut missing = ResolutionFile::parse(&text).unwrap();
        missing.blocks.pop();
        assert!(matches!(missing.load(), Err(FormatError::Shape { .. })));
    }
}
