//! Report rows and their JSON and text renderings. Field order is fixed by
//! declaration order, so serialized reports are byte-stable.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use hopf_core::classifier::{NonsingularVerdict, WitnessChecks};
use hopf_core::{render_form, EigenvalueStructure, Singularity, SingularityVerdict, StructureKind};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub job: JobEcho,
    pub records: Vec<Record>,
    pub oracle: OracleSummary,
    /// Empty unless timings were requested.
    pub timings: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureEcho {
    pub kind: &'static str,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
}

impl From<&EigenvalueStructure> for StructureEcho {
    fn from(s: &EigenvalueStructure) -> Self {
        let (kind, r) = match s.kind() {
            StructureKind::Classical => ("classical", None),
            StructureKind::Generic => ("generic", None),
            StructureKind::Intermediary { r } => ("intermediary", Some(r)),
        };
        Self { kind, n: s.n(), r }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JobEcho {
    pub command: &'static str,
    pub structure: StructureEcho,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
    pub oracle: bool,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    pub count: u64,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct OracleSummary {
    pub enabled: bool,
    pub checked: usize,
    pub mismatches: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "record", rename_all = "kebab-case")]
pub enum Record {
    Dimension {
        b: Vec<i64>,
        dimension: u64,
        #[serde(skip_serializing_if = "Option::is_none")]
        oracle: Option<OracleCheck>,
    },
    Basis {
        b: Vec<i64>,
        dimension: u64,
        terms: Vec<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        oracle: Option<OracleCheck>,
    },
    Classification(Box<ClassificationRow>),
    Check(CheckRow),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationRow {
    pub b: Vec<i64>,
    pub case: String,
    pub in_theorem_range: bool,
    pub dimension: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal_form: Option<NormalFormRow>,
    pub nonsingular_exists: bool,
    pub nonsingular: VerdictRow,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalFormRow {
    pub description: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subcase: Option<String>,
    pub parameters: usize,
    /// One free scalar per term.
    pub terms: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChecksRow {
    pub nonsingular: ZeroLocusRow,
    pub decomposable: bool,
    pub integrable: Option<bool>,
}

impl From<&WitnessChecks> for ChecksRow {
    fn from(c: &WitnessChecks) -> Self {
        Self {
            nonsingular: (&c.nonsingular).into(),
            decomposable: c.decomposable,
            integrable: c.integrable,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictRow {
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub common_zero: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidate: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<ChecksRow>,
}

impl From<&NonsingularVerdict> for VerdictRow {
    fn from(v: &NonsingularVerdict) -> Self {
        let mut row = VerdictRow {
            status: v.label(),
            witness: None,
            reason: None,
            common_zero: None,
            candidate: None,
            checks: None,
        };
        match v {
            NonsingularVerdict::Exists { witness, checks } => {
                row.witness = Some(render_form(witness));
                row.checks = Some(checks.into());
            }
            NonsingularVerdict::Excluded { reason, common_zero } => {
                row.reason = Some(reason.clone());
                row.common_zero = common_zero.as_ref().map(|s| s.zero_coordinates.clone());
            }
            NonsingularVerdict::Undecided { reason, candidate } => {
                row.reason = Some(reason.clone());
                if let Some((form, checks)) = candidate {
                    row.candidate = Some(render_form(form));
                    row.checks = Some(checks.into());
                }
            }
        }
        row
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroLocusRow {
    pub status: &'static str,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero_coordinates: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
}

impl From<&SingularityVerdict> for ZeroLocusRow {
    fn from(v: &SingularityVerdict) -> Self {
        let mut row = ZeroLocusRow {
            status: "",
            exact: v.exact,
            zero_coordinates: None,
            point: None,
            trials: None,
        };
        match &v.status {
            Singularity::Nonsingular => row.status = "nonsingular",
            Singularity::Singular(sub) => {
                row.status = "singular";
                row.zero_coordinates = Some(sub.zero_coordinates.clone());
            }
            Singularity::SingularAt(p) => {
                row.status = "singular-at";
                row.point = Some(p.iter().map(ToString::to_string).collect());
            }
            Singularity::ProbablyNonsingular { trials } => {
                row.status = "probably-nonsingular";
                row.trials = Some(*trials);
            }
        }
        row
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub form: String,
    pub k: usize,
    pub decomposable: bool,
    /// `None` when the form is not decomposable.
    pub integrable: Option<bool>,
    pub nonsingular: ZeroLocusRow,
    /// `dz_I ↦ g_I`.
    pub coefficients: BTreeMap<String, String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let s = &self.job.structure;
        let r = s.r.map(|r| format!(" r={r}")).unwrap_or_default();
        let _ = writeln!(
            out,
            "{} n={}{} k={} command={}",
            s.kind, s.n, r, self.job.k, self.job.command
        );
        for record in &self.records {
            match record {
                Record::Dimension { b, dimension, oracle } => {
                    let _ = writeln!(out, "b={:<14} dim={:<8}{}", vec_text(b), dimension, oracle_text(oracle));
                }
                Record::Basis {
                    b,
                    dimension,
                    terms,
                    oracle,
                } => {
                    let _ = writeln!(out, "b={} dim={}{}", vec_text(b), dimension, oracle_text(oracle));
                    for t in terms {
                        let _ = writeln!(out, "  {t}");
                    }
                }
                Record::Classification(row) => {
                    let _ = writeln!(
                        out,
                        "b={:<14} dim={:<6} {:<28} nonsingular={}{}",
                        vec_text(&row.b),
                        row.dimension,
                        row.case,
                        row.nonsingular.status,
                        oracle_text(&row.oracle)
                    );
                    if let Some(nf) = &row.normal_form {
                        let _ = writeln!(out, "  normal form: {}", nf.description);
                        if let Some(sub) = &nf.subcase {
                            let _ = writeln!(out, "  subcase: {sub}");
                        }
                    }
                    if let Some(w) = &row.nonsingular.witness {
                        let _ = writeln!(out, "  witness: {w}");
                    }
                    if let Some(reason) = &row.nonsingular.reason {
                        let _ = writeln!(out, "  reason: {reason}");
                    }
                }
                Record::Check(row) => {
                    let _ = writeln!(out, "form: {}", row.form);
                    let _ = writeln!(out, "decomposable: {}", row.decomposable);
                    let integrable = row
                        .integrable
                        .map_or("n/a (not a distribution)".to_string(), |b| b.to_string());
                    let _ = writeln!(out, "integrable: {integrable}");
                    let exact = if row.nonsingular.exact { "exact" } else { "sampled" };
                    let _ = writeln!(out, "nonsingular: {} ({exact})", row.nonsingular.status);
                    for (index, g) in &row.coefficients {
                        let _ = writeln!(out, "  {index}: {g}");
                    }
                }
            }
        }
        if self.oracle.enabled {
            let _ = writeln!(
                out,
                "oracle: {} checked, {} mismatches",
                self.oracle.checked, self.oracle.mismatches
            );
        }
        for (name, ms) in &self.timings {
            let _ = writeln!(out, "time {name}: {ms:.3} ms");
        }
        out
    }
}

fn vec_text(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn oracle_text(o: &Option<OracleCheck>) -> String {
    match o {
        None => String::new(),
        Some(c) if c.matches => format!(" oracle={} match", c.count),
        Some(c) => format!(" oracle={} MISMATCH", c.count),
    }
}
