//! Machine-readable output documents with lossless JSON and CSV round-tripping.

use std::io::{Read, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("csv output is not available for {0} documents")]
    CsvUnsupported(&'static str),
}

/// `[re, im]` on the wire.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Cx(pub Complex64);

impl From<[f64; 2]> for Cx {
    fn from([re, im]: [f64; 2]) -> Self {
        Cx(Complex64::new(re, im))
    }
}

impl From<Cx> for [f64; 2] {
    fn from(c: Cx) -> Self {
        [c.0.re, c.0.im]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub schema_version: String,
    pub k: usize,
    pub basis: Vec<String>,
    #[serde(flatten)]
    pub body: Body,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "lowercase")]
pub enum Body {
    Smatrix(SmatrixPayload),
    Fusion(FusionPayload),
    Dims(DimsPayload),
    Sectors(SectorsPayload),
    Verify(VerifyPayload),
    Interference(InterferencePayload),
}

impl Body {
    pub fn kind(&self) -> &'static str {
        match self {
            Body::Smatrix(_) => "smatrix",
            Body::Fusion(_) => "fusion",
            Body::Dims(_) => "dims",
            Body::Sectors(_) => "sectors",
            Body::Verify(_) => "verify",
            Body::Interference(_) => "interference",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmatrixPayload {
    pub which: String,
    pub tolerance: f64,
    pub unitarity_residual: f64,
    pub entries: Vec<Vec<Cx>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FusionPayload {
    pub theory: String,
    /// `tensor[a][b][c] = N_ab^c` over `basis`.
    pub tensor: Vec<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimsPayload {
    pub theory: String,
    pub central_charge: String,
    /// Exact conformal dimensions as `p/q` strings.
    pub conformal: Vec<String>,
    pub quantum: Vec<f64>,
    pub total_quantum_dimension: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectorRow {
    pub l: usize,
    pub rho: usize,
    pub coset_weight: String,
    pub dimension: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectorsPayload {
    pub coset_primaries: usize,
    pub sectors: Vec<SectorRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub name: String,
    /// `None` when the check could not be evaluated.
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyPayload {
    pub checks: Vec<CheckRow>,
    pub passed: bool,
}

impl VerifyPayload {
    pub fn failing(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterferencePayload {
    pub theory: String,
    pub probe: String,
    pub bulk: String,
    pub t1: Cx,
    pub t2: Cx,
    pub monodromy: Cx,
    pub visibility: f64,
    pub contrast: f64,
    pub verdict: String,
    pub alpha: Vec<f64>,
    pub sigma_xx: Vec<f64>,
}

impl OutputDocument {
    pub fn new(k: usize, basis: Vec<String>, body: Body) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            k,
            basis,
            body,
        }
    }

    /// Checks that the payload dimensions agree with the basis.
    pub fn validate(&self) -> Result<(), DocumentError> {
        let n = self.basis.len();
        let bad = |what: &str| Err(DocumentError::Malformed(format!("{what} does not match basis length {n}")));
        match &self.body {
            Body::Smatrix(p) => {
                if p.entries.len() != n || p.entries.iter().any(|r| r.len() != n) {
                    return bad("matrix shape");
                }
            }
            Body::Fusion(p) => {
                if p.tensor.len() != n
                    || p.tensor.iter().any(|m| m.len() != n || m.iter().any(|r| r.len() != n))
                {
                    return bad("fusion tensor shape");
                }
            }
            Body::Dims(p) => {
                if p.conformal.len() != n || p.quantum.len() != n {
                    return bad("dimension list");
                }
            }
            Body::Sectors(p) => {
                if p.sectors.len() != n {
                    return bad("sector list");
                }
            }
            Body::Verify(_) => {}
            Body::Interference(p) => {
                if p.alpha.len() != p.sigma_xx.len() {
                    return Err(DocumentError::Malformed("alpha and sigma_xx lengths differ".into()));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String, DocumentError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self, DocumentError> {
        let doc: Self = serde_json::from_str(s)?;
        doc.validate()?;
        Ok(doc)
    }

    /// Matrix and interference documents only.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<(), DocumentError> {
        writeln!(w, "# schema_version={}", self.schema_version)?;
        writeln!(w, "# kind={}", self.body.kind())?;
        writeln!(w, "# k={}", self.k)?;
        match &self.body {
            Body::Smatrix(p) => {
                writeln!(w, "# which={}", p.which)?;
                writeln!(w, "# tolerance={}", p.tolerance)?;
                writeln!(w, "# unitarity_residual={}", p.unitarity_residual)?;
                let mut out = csv::Writer::from_writer(w);
                let mut header = vec!["label".to_string()];
                for b in &self.basis {
                    header.push(format!("{b}.re"));
                    header.push(format!("{b}.im"));
                }
                out.write_record(&header)?;
                for (label, row) in self.basis.iter().zip(&p.entries) {
                    let mut rec = vec![label.clone()];
                    for z in row {
                        rec.push(z.0.re.to_string());
                        rec.push(z.0.im.to_string());
                    }
                    out.write_record(&rec)?;
                }
                out.flush()?;
            }
            Body::Interference(p) => {
                writeln!(w, "# basis={}", self.basis.join(";"))?;
                writeln!(w, "# theory={}", p.theory)?;
                writeln!(w, "# probe={}", p.probe)?;
                writeln!(w, "# bulk={}", p.bulk)?;
                writeln!(w, "# t1={},{}", p.t1.0.re, p.t1.0.im)?;
                writeln!(w, "# t2={},{}", p.t2.0.re, p.t2.0.im)?;
                writeln!(w, "# monodromy={},{}", p.monodromy.0.re, p.monodromy.0.im)?;
                writeln!(w, "# visibility={}", p.visibility)?;
                writeln!(w, "# contrast={}", p.contrast)?;
                writeln!(w, "# verdict={}", p.verdict)?;
                let mut out = csv::Writer::from_writer(w);
                out.write_record(["alpha", "sigma_xx"])?;
                for (a, s) in p.alpha.iter().zip(&p.sigma_xx) {
                    out.write_record([a.to_string(), s.to_string()])?;
                }
                out.flush()?;
            }
            other => return Err(DocumentError::CsvUnsupported(other.kind())),
        }
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String, DocumentError> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        String::from_utf8(buf).map_err(|e| DocumentError::Malformed(e.to_string()))
    }

    pub fn read_csv<R: Read>(mut r: R) -> Result<Self, DocumentError> {
        let mut text = String::new();
        r.read_to_string(&mut text)?;
        let mut meta = std::collections::BTreeMap::new();
        let mut table = String::new();
        for line in text.lines() {
            match line.strip_prefix("# ") {
                Some(m) => {
                    let (key, value) = m
                        .split_once('=')
                        .ok_or_else(|| DocumentError::Malformed(format!("metadata line {line:?}")))?;
                    meta.insert(key.to_string(), value.to_string());
                }
                None => {
                    table.push_str(line);
                    table.push('\n');
                }
            }
        }
        let get = |key: &str| {
            meta.get(key)
                .cloned()
                .ok_or_else(|| DocumentError::Malformed(format!("missing metadata {key}")))
        };
        let num = |key: &str| -> Result<f64, DocumentError> { parse_f64(&get(key)?) };
        let cx = |key: &str| -> Result<Cx, DocumentError> {
            let v = get(key)?;
            let (re, im) = v
                .split_once(',')
                .ok_or_else(|| DocumentError::Malformed(format!("{key} is not re,im")))?;
            Ok(Cx(Complex64::new(parse_f64(re)?, parse_f64(im)?)))
        };
        let k: usize = get("k")?
            .parse()
            .map_err(|_| DocumentError::Malformed("k is not an integer".into()))?;
        let mut reader = csv::Reader::from_reader(table.as_bytes());
        let doc = match get("kind")?.as_str() {
            "smatrix" => {
                let mut basis = Vec::new();
                let mut entries = Vec::new();
                for rec in reader.records() {
                    let rec = rec?;
                    basis.push(rec.get(0).unwrap_or_default().to_string());
                    let vals: Vec<f64> = rec.iter().skip(1).map(parse_f64).collect::<Result<_, _>>()?;
                    if !vals.len().is_multiple_of(2) {
                        return Err(DocumentError::Malformed("odd number of re/im columns".into()));
                    }
                    entries.push(vals.chunks(2).map(|c| Cx(Complex64::new(c[0], c[1]))).collect());
                }
                let body = Body::Smatrix(SmatrixPayload {
                    which: get("which")?,
                    tolerance: num("tolerance")?,
                    unitarity_residual: num("unitarity_residual")?,
                    entries,
                });
                OutputDocument {
                    schema_version: get("schema_version")?,
                    k,
                    basis,
                    body,
                }
            }
            "interference" => {
                let (mut alpha, mut sigma_xx) = (Vec::new(), Vec::new());
                for rec in reader.records() {
                    let rec = rec?;
                    if rec.len() != 2 {
                        return Err(DocumentError::Malformed("expected alpha,sigma_xx rows".into()));
                    }
                    alpha.push(parse_f64(&rec[0])?);
                    sigma_xx.push(parse_f64(&rec[1])?);
                }
                let basis = get("basis")?;
                let basis = if basis.is_empty() {
                    Vec::new()
                } else {
                    basis.split(';').map(str::to_string).collect()
                };
                let body = Body::Interference(InterferencePayload {
                    theory: get("theory")?,
                    probe: get("probe")?,
                    bulk: get("bulk")?,
                    t1: cx("t1")?,
                    t2: cx("t2")?,
                    monodromy: cx("monodromy")?,
                    visibility: num("visibility")?,
                    contrast: num("contrast")?,
                    verdict: get("verdict")?,
                    alpha,
                    sigma_xx,
                });
                OutputDocument {
                    schema_version: get("schema_version")?,
                    k,
                    basis,
                    body,
                }
            }
            other => return Err(DocumentError::Malformed(format!("unsupported csv kind {other:?}"))),
        };
        doc.validate()?;
        Ok(doc)
    }

    pub fn from_csv(s: &str) -> Result<Self, DocumentError> {
        Self::read_csv(s.as_bytes())
    }
}

fn parse_f64(s: &str) -> Result<f64, DocumentError> {
    s.trim()
        .parse()
        .map_err(|_| DocumentError::Malformed(format!("{s:?} is not a number")))
}
