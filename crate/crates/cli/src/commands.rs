//! Document builders behind each subcommand.

use num_complex::Complex64;
use zk_parafermion::affine::{self, s_su2k, s_suk2_compact, s_suk2_weylkac_with_cap};
use zk_parafermion::coset::{self, coset_s_compact, coset_s_phase_form_from, coset_s_via_su2k_u1};
use zk_parafermion::fullcft::{self, enumerate_sectors, full_s_compact, full_s_product, s_u1};
use zk_parafermion::fusion::{
    fusion_coset_closed, quantum_dimensions, verify_modular_relations, verlinde, TData,
};
use zk_parafermion::interferometry::{detection_report, sigma_xx_curve};
use zk_parafermion::{CosetWeight, Error, FullSector, Label, Rational, SMatrix};

use crate::document::*;

/// Failure of a command, mapped onto the exit-code contract.
#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    ResourceCap(String),
    #[error("{0}")]
    Verification(String),
    #[error(transparent)]
    Document(#[from] DocumentError),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Usage(_) | CommandError::Document(DocumentError::CsvUnsupported(_)) => 1,
            CommandError::ResourceCap(_) => 2,
            CommandError::Verification(_) | CommandError::Document(_) => 3,
        }
    }
}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceLimit { k, cap } => CommandError::ResourceCap(format!(
                "Weyl group enumeration for k = {k} exceeds the cap {cap}; raise --weyl-cap to allow it"
            )),
            Error::InvalidRank { .. }
            | Error::InvalidLevel { .. }
            | Error::Label(_)
            | Error::Contract(_)
            | Error::BranchingParity { .. }
            | Error::Sampling(_) => CommandError::Usage(e.to_string()),
            other => CommandError::Verification(other.to_string()),
        }
    }
}

pub type CmdResult<T> = std::result::Result<T, CommandError>;

#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub tolerance: f64,
    pub weyl_cap: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            tolerance: 1e-10,
            weyl_cap: zk_parafermion::lie::DEFAULT_WEYL_CAP,
        }
    }
}

pub const MATRIX_KINDS: [&str; 8] = [
    "su2k",
    "suk2-oracle",
    "suk2-compact",
    "coset",
    "coset-lm",
    "u1",
    "full-product",
    "full-compact",
];

fn labels<L: Label>(s: &SMatrix<f64, L>) -> Vec<String> {
    s.labels().iter().map(ToString::to_string).collect()
}

fn matrix_document<L: Label>(k: usize, which: &str, s: &SMatrix<f64, L>) -> OutputDocument {
    let entries = s
        .entries()
        .rows()
        .into_iter()
        .map(|r| r.iter().map(|z| Cx(*z)).collect())
        .collect();
    OutputDocument::new(
        k,
        labels(s),
        Body::Smatrix(SmatrixPayload {
            which: which.to_string(),
            tolerance: s.tolerance(),
            unitarity_residual: s.unitarity_residual(),
            entries,
        }),
    )
}

pub fn smatrix(k: usize, which: &str, settings: Settings) -> CmdResult<OutputDocument> {
    let tol = settings.tolerance;
    let doc = match which {
        "su2k" => matrix_document(k, which, &s_su2k::<f64>(k)?.with_tolerance(tol)),
        "suk2-oracle" => matrix_document(
            k,
            which,
            &s_suk2_weylkac_with_cap::<f64>(k, settings.weyl_cap)?.with_tolerance(tol),
        ),
        "suk2-compact" => matrix_document(k, which, &s_suk2_compact::<f64>(k)?.with_tolerance(tol)),
        "coset" => matrix_document(k, which, &coset_s_compact::<f64>(k)?.s.with_tolerance(tol)),
        "coset-lm" => matrix_document(k, which, &coset_s_via_su2k_u1::<f64>(k)?.with_tolerance(tol)),
        "u1" => matrix_document(k, which, &s_u1::<f64>(k)?.with_tolerance(tol)),
        "full-product" => matrix_document(k, which, &full_s_product::<f64>(k)?.with_tolerance(tol)),
        "full-compact" => matrix_document(k, which, &full_s_compact::<f64>(k)?.with_tolerance(tol)),
        other => {
            return Err(CommandError::Usage(format!(
                "unknown matrix {other:?}; expected one of {}",
                MATRIX_KINDS.join(", ")
            )))
        }
    };
    Ok(doc)
}

fn theory_error(theory: &str) -> CommandError {
    CommandError::Usage(format!("unknown theory {theory:?}; expected su2k, coset or full"))
}

fn fusion_document<L: Label>(k: usize, theory: &str, s: &SMatrix<f64, L>) -> CmdResult<OutputDocument> {
    let ring = verlinde(s)?;
    let n = ring.dim();
    let tensor = (0..n)
        .map(|a| (0..n).map(|b| (0..n).map(|c| ring.n(a, b, c)).collect()).collect())
        .collect();
    Ok(OutputDocument::new(
        k,
        labels(s),
        Body::Fusion(FusionPayload {
            theory: theory.to_string(),
            tensor,
        }),
    ))
}

pub fn fusion(k: usize, theory: &str, settings: Settings) -> CmdResult<OutputDocument> {
    let tol = settings.tolerance;
    match theory {
        "su2k" => fusion_document(k, theory, &s_su2k::<f64>(k)?.with_tolerance(tol)),
        "coset" => fusion_document(k, theory, &coset_s_compact::<f64>(k)?.s.with_tolerance(tol)),
        "full" => fusion_document(k, theory, &full_s_product::<f64>(k)?.with_tolerance(tol)),
        other => Err(theory_error(other)),
    }
}

fn dims_document<L: Label>(
    k: usize,
    theory: &str,
    s: &SMatrix<f64, L>,
    conformal: Vec<Rational>,
    c: Rational,
) -> CmdResult<OutputDocument> {
    let qd = quantum_dimensions(s)?;
    Ok(OutputDocument::new(
        k,
        labels(s),
        Body::Dims(DimsPayload {
            theory: theory.to_string(),
            central_charge: c.to_string(),
            conformal: conformal.iter().map(ToString::to_string).collect(),
            quantum: qd.dims,
            total_quantum_dimension: qd.total,
        }),
    ))
}

fn su2k_t(k: usize) -> CmdResult<TData> {
    let dims = (0..=k).map(|l| affine::dim_su2k(l, k)).collect::<Result<_, _>>()?;
    Ok(TData::new(dims, Rational::new(3 * k as i64, k as i64 + 2)))
}

fn full_t(k: usize) -> CmdResult<TData> {
    let dims = fullcft::full_dims(k)?.into_iter().map(|(_, d)| d).collect();
    Ok(TData::new(dims, fullcft::full_central_charge(k)))
}

pub fn dims(k: usize, theory: &str, settings: Settings) -> CmdResult<OutputDocument> {
    let tol = settings.tolerance;
    match theory {
        "su2k" => {
            let t = su2k_t(k)?;
            dims_document(k, theory, &s_su2k::<f64>(k)?.with_tolerance(tol), t.dims, t.central_charge)
        }
        "coset" => {
            let data = coset_s_compact::<f64>(k)?;
            dims_document(k, theory, &data.s.with_tolerance(tol), data.dims, data.central_charge)
        }
        "full" => {
            let t = full_t(k)?;
            dims_document(k, theory, &full_s_product::<f64>(k)?.with_tolerance(tol), t.dims, t.central_charge)
        }
        other => Err(theory_error(other)),
    }
}

pub fn sectors(k: usize) -> CmdResult<OutputDocument> {
    let rows: Vec<SectorRow> = fullcft::full_dims(k)?
        .into_iter()
        .map(|(s, d)| SectorRow {
            l: s.l(),
            rho: s.rho(),
            coset_weight: s.coset_weight().to_string(),
            dimension: d.to_string(),
        })
        .collect();
    let basis = enumerate_sectors(k)?.iter().map(ToString::to_string).collect();
    Ok(OutputDocument::new(
        k,
        basis,
        Body::Sectors(SectorsPayload {
            coset_primaries: coset::count_primaries(k)?,
            sectors: rows,
        }),
    ))
}

pub const VERIFY_TARGETS: [&str; 6] = ["oracle", "equivalence", "modular", "fusion", "full", "lattice"];

struct Checks {
    rows: Vec<CheckRow>,
    tolerance: f64,
}

impl Checks {
    fn push(&mut self, name: &str, residual: f64) {
        self.push_with(name, Some(residual), self.tolerance, None);
    }

    fn push_with(&mut self, name: &str, residual: Option<f64>, tolerance: f64, detail: Option<String>) {
        self.rows.push(CheckRow {
            name: name.to_string(),
            residual,
            tolerance,
            passed: residual.is_some_and(|r| r < tolerance),
            detail,
        });
    }

    /// Records a failed check instead of aborting the whole run.
    fn record_error(&mut self, name: &str, e: Error) -> CmdResult<()> {
        match CommandError::from(e) {
            CommandError::Verification(msg) => {
                self.push_with(name, None, self.tolerance, Some(msg));
                Ok(())
            }
            other => Err(other),
        }
    }

    fn modular<L: Label>(&mut self, prefix: &str, s: &SMatrix<f64, L>, t: &TData) -> CmdResult<()> {
        match verify_modular_relations(s, t) {
            Ok(r) => {
                self.push(&format!("{prefix}.unitarity"), r.unitarity);
                let detail = (!r.c_is_permutation).then(|| "S² has signed entries".to_string());
                let s2 = r.c_is_permutation.then_some(r.s2_minus_c);
                self.push_with(&format!("{prefix}.s2"), s2, self.tolerance, detail);
                self.push(&format!("{prefix}.st3"), r.st3_minus_c);
                self.push(&format!("{prefix}.c2"), r.c2_minus_i);
                Ok(())
            }
            Err(e) => self.record_error(&format!("{prefix}.modular"), e),
        }
    }
}

pub fn verify(k: usize, targets: &[String], settings: Settings) -> CmdResult<OutputDocument> {
    for t in targets {
        if !VERIFY_TARGETS.contains(&t.as_str()) {
            return Err(CommandError::Usage(format!(
                "unknown verify target {t:?}; expected one of {}",
                VERIFY_TARGETS.join(", ")
            )));
        }
    }
    if k < 2 {
        return Err(Error::InvalidRank { k, min: 2 }.into());
    }
    let tol = settings.tolerance;
    let wants = |name: &str| targets.iter().any(|t| t == name);
    let mut checks = Checks {
        rows: Vec::new(),
        tolerance: tol,
    };
    let compact = s_suk2_compact::<f64>(k)?.with_tolerance(tol);
    let coset_data = coset_s_compact::<f64>(k)?;
    let coset_s = coset_data.s.clone().with_tolerance(tol);

    if wants("oracle") || wants("equivalence") {
        let oracle = s_suk2_weylkac_with_cap::<f64>(k, settings.weyl_cap)?.with_tolerance(tol);
        if wants("oracle") {
            checks.push("suk2.oracle", oracle.max_abs_diff(&compact)?);
        }
        if wants("equivalence") {
            let phase_form = coset_s_phase_form_from(&oracle)?;
            checks.push("coset.phase-form", phase_form.max_abs_diff(&coset_s)?);
            checks.push("coset.suk2-identity", compact.max_abs_diff(&coset_s)?);
            checks.push("coset.su2k-u1", coset_s_via_su2k_u1::<f64>(k)?.max_abs_diff(&coset_s)?);
            match affine::representative_block::<f64>(k).and_then(|b| affine::simple_current_extend(&b, k)) {
                Ok(s) => checks.push("suk2.level-rank", s.max_abs_diff(&compact)?),
                Err(e) => checks.record_error("suk2.level-rank", e)?,
            }
        }
    }
    if wants("modular") {
        checks.modular("su2k", &s_su2k::<f64>(k)?.with_tolerance(tol), &su2k_t(k)?)?;
        checks.modular("coset", &coset_s, &coset_data.t_data())?;
    }
    if wants("fusion") {
        match verlinde(&coset_s) {
            Ok(ring) => {
                let mut mismatches = 0usize;
                for a in coset_s.labels() {
                    for b in coset_s.labels() {
                        let closed = fusion_coset_closed(a, b)?;
                        for c in coset_s.labels() {
                            if ring.coefficient(a, b, c)? != closed.get(c).copied().unwrap_or(0) {
                                mismatches += 1;
                            }
                        }
                    }
                }
                checks.push_with("coset.fusion-closed-form", Some(mismatches as f64), 0.5, None);
            }
            Err(e) => checks.record_error("coset.fusion-closed-form", e)?,
        }
    }
    if wants("full") {
        match full_s_product::<f64>(k) {
            Ok(product) => {
                let product = product.with_tolerance(tol);
                checks.modular("full", &product, &full_t(k)?)?;
                match verlinde(&product) {
                    Ok(_) => checks.push("full.fusion-integrality", 0.0),
                    Err(e) => checks.record_error("full.fusion-integrality", e)?,
                }
                let closed_form = full_s_compact::<f64>(k)?;
                checks.push("full.dual-construction", product.max_abs_diff(&closed_form)?);
            }
            Err(e) => checks.record_error("full.product", e)?,
        }
    }
    if wants("lattice") {
        match fullcft::gram_matrix(k).and_then(|g| fullcft::filling_factor(&g)) {
            Ok(_) => checks.push_with("lattice.filling-factor", Some(0.0), 0.5, None),
            Err(e) => checks.push_with("lattice.filling-factor", Some(1.0), 0.5, Some(e.to_string())),
        }
    }
    let passed = checks.rows.iter().all(|c| c.passed);
    Ok(OutputDocument::new(
        k,
        labels(&coset_s),
        Body::Verify(VerifyPayload {
            checks: checks.rows,
            passed,
        }),
    ))
}

/// Parses `re`, `re,im` or `re+imi` style amplitudes.
pub fn parse_complex(s: &str) -> CmdResult<Complex64> {
    let bad = || CommandError::Usage(format!("cannot parse {s:?} as a complex amplitude"));
    let s = s.trim();
    if let Some((re, im)) = s.split_once(',') {
        let re = re.trim().parse().map_err(|_| bad())?;
        let im = im.trim().parse().map_err(|_| bad())?;
        return Ok(Complex64::new(re, im));
    }
    s.parse::<Complex64>().map_err(|_| bad())
}

pub struct InterfereArgs<'a> {
    pub k: usize,
    pub theory: &'a str,
    pub bulk: &'a str,
    pub probe: &'a str,
    pub t1: Complex64,
    pub t2: Complex64,
    pub samples: usize,
}

fn interference_document<L: Label>(
    args: &InterfereArgs,
    s: &SMatrix<f64, L>,
    probe: L,
    bulk: L,
) -> CmdResult<OutputDocument> {
    let pattern = sigma_xx_curve(s, &probe, &bulk, args.t1, args.t2, args.samples)?;
    let row = detection_report(s, &probe, std::slice::from_ref(&bulk))?.remove(0);
    Ok(OutputDocument::new(
        args.k,
        labels(s),
        Body::Interference(InterferencePayload {
            theory: args.theory.to_string(),
            probe: probe.to_string(),
            bulk: bulk.to_string(),
            t1: Cx(args.t1),
            t2: Cx(args.t2),
            monodromy: Cx(pattern.monodromy),
            visibility: row.visibility,
            contrast: pattern.contrast(),
            verdict: row.verdict.to_string(),
            alpha: pattern.alpha,
            sigma_xx: pattern.sigma_xx,
        }),
    ))
}

fn label_error<L: Label>(valid: &[L], e: Error) -> CommandError {
    let list: Vec<String> = valid.iter().map(|l| format!("\"{l}\"")).collect();
    CommandError::Usage(format!("{e}; valid labels: {}", list.join(" ")))
}

pub fn interfere(args: &InterfereArgs, settings: Settings) -> CmdResult<OutputDocument> {
    let tol = settings.tolerance;
    let k = args.k;
    match args.theory {
        "coset" => {
            let s = coset_s_compact::<f64>(k)?.s.with_tolerance(tol);
            let parse = |raw: &str| {
                CosetWeight::parse(raw, k).map_err(|e| label_error(s.labels(), e))
            };
            let (probe, bulk) = (parse(args.probe)?, parse(args.bulk)?);
            interference_document(args, &s, probe, bulk)
        }
        "full" => {
            let s = full_s_product::<f64>(k)?.with_tolerance(tol);
            let parse = |raw: &str| {
                FullSector::parse(raw, k).map_err(|e| label_error(s.labels(), e))
            };
            let (probe, bulk) = (parse(args.probe)?, parse(args.bulk)?);
            interference_document(args, &s, probe, bulk)
        }
        other => Err(CommandError::Usage(format!("unknown theory {other:?}; expected coset or full"))),
    }
}
