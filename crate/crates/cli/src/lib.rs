//! Job parsing, dispatch and reporting for the `hopf` binary.

pub mod jobspec;
pub mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::Parser;
use hopf_core::analysis::is_nonsingular;
use hopf_core::classifier::{classify, classify_catalogue, ClassificationRecord};
use hopf_core::cohomology::{admissible_weights, oracle_dimension, section_basis, section_dimension_closed_form};
use hopf_core::exterior::{is_decomposable, is_integrable};
use hopf_core::poly::scalar;
use hopf_core::{render_form, EigenvalueStructure, FormIndex, LineBundle, MultiIndex, PolyKForm, Weight};
use thiserror::Error;

pub use jobspec::{parse_jobspec, Command, Format, JobErrors, JobSpec, RawJob, Target};
pub use report::Report;

use report::{CheckRow, ClassificationRow, JobEcho, NormalFormRow, OracleCheck, OracleSummary, Record};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_ORACLE_MISMATCH: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// A library failure, tagged with the module that raised it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{module}: {source}")]
pub struct RunError {
    pub module: &'static str,
    pub source: hopf_core::Error,
}

fn in_module<T>(module: &'static str, r: hopf_core::Result<T>) -> Result<T, RunError> {
    r.map_err(|source| RunError { module, source })
}

pub type ClosedForm = fn(&EigenvalueStructure, usize, &Weight) -> hopf_core::Result<u64>;

/// The dimension formula used for reported dimensions; swappable so the
/// oracle cross-check can be exercised against a wrong formula.
#[derive(Debug, Clone, Copy)]
pub struct Engine {
    pub closed_form: ClosedForm,
}

impl Default for Engine {
    fn default() -> Self {
        Self {
            closed_form: section_dimension_closed_form,
        }
    }
}

struct Runner<'a> {
    job: &'a JobSpec,
    engine: Engine,
    summary: OracleSummary,
}

impl Runner<'_> {
    fn dimension(&mut self, b: &Weight) -> Result<(u64, Option<OracleCheck>), RunError> {
        let dim = in_module(
            "cohomology",
            (self.engine.closed_form)(&self.job.structure, self.job.k, b),
        )?;
        if !self.job.oracle {
            return Ok((dim, None));
        }
        let bound = b.total_degree().max(0) as u32;
        let count = in_module(
            "cohomology",
            oracle_dimension(&self.job.structure, self.job.k, b, bound),
        )?;
        self.summary.checked += 1;
        if count != dim {
            self.summary.mismatches += 1;
        }
        Ok((
            dim,
            Some(OracleCheck {
                count,
                matches: count == dim,
            }),
        ))
    }

    fn classification(&mut self, rec: &ClassificationRecord) -> Result<Record, RunError> {
        let (dimension, oracle) = self.dimension(&rec.b)?;
        Ok(Record::Classification(Box::new(ClassificationRow {
            b: rec.b.exponents().to_vec(),
            case: rec.case_tag.to_string(),
            in_theorem_range: rec.in_theorem_range,
            dimension,
            oracle,
            normal_form: rec.normal_form.as_ref().map(|nf| NormalFormRow {
                description: nf.description.clone(),
                subcase: nf.subcase.clone(),
                parameters: nf.parameter_count(),
                terms: nf.terms.iter().map(|(a, i)| monomial_text(a, i)).collect(),
            }),
            nonsingular_exists: rec.nonsingular_exists(),
            nonsingular: (&rec.nonsingular).into(),
        })))
    }

    fn records(&mut self) -> Result<Vec<Record>, RunError> {
        let job = self.job;
        let s = &job.structure;
        let k = job.k;
        match (&job.command, &job.target) {
            (Command::Dim, Target::Weight(b)) => {
                let (dimension, oracle) = self.dimension(b)?;
                Ok(vec![Record::Dimension {
                    b: b.exponents().to_vec(),
                    dimension,
                    oracle,
                }])
            }
            (Command::Basis, Target::Weight(b)) => {
                let guard = (b.total_degree() - k as i64).max(0) as u32;
                let space = in_module(
                    "cohomology",
                    section_basis(s, k, &LineBundle::Monomial(b.clone()), guard),
                )?;
                let (dimension, oracle) = self.dimension(b)?;
                Ok(vec![Record::Basis {
                    b: b.exponents().to_vec(),
                    dimension,
                    terms: space.basis.iter().map(|(a, i)| monomial_text(a, i)).collect(),
                    oracle,
                }])
            }
            (Command::Admissible, Target::Bound(bound)) => {
                let mut weights = in_module("cohomology", admissible_weights(s, k, *bound))?;
                weights.sort();
                weights
                    .iter()
                    .map(|b| {
                        let (dimension, oracle) = self.dimension(b)?;
                        Ok(Record::Dimension {
                            b: b.exponents().to_vec(),
                            dimension,
                            oracle,
                        })
                    })
                    .collect()
            }
            (Command::Classify, Target::Weight(b)) => {
                let rec = in_module("classifier", classify(s, k, b))?;
                Ok(vec![self.classification(&rec)?])
            }
            (Command::Catalogue, Target::Bound(bound)) => {
                let records = in_module("classifier", classify_catalogue(s, k, *bound))?;
                records.iter().map(|r| self.classification(r)).collect()
            }
            (Command::Check, Target::Form(form)) => Ok(vec![Record::Check(check(form, job)?)]),
            _ => unreachable!("validated job pairs each command with its target"),
        }
    }
}

fn monomial_text(alpha: &MultiIndex, index: &FormIndex) -> String {
    render_form(&PolyKForm::term(alpha.clone(), index.clone(), scalar(1)).expect("basis term"))
}

fn check(form: &PolyKForm, job: &JobSpec) -> Result<CheckRow, RunError> {
    let decomposable = in_module("exterior-algebra", is_decomposable(form))?;
    let integrable = if decomposable {
        Some(in_module("exterior-algebra", is_integrable(form))?)
    } else {
        None
    };
    let nonsingular = in_module("analysis", is_nonsingular(form, job.trials, job.seed))?;
    let coefficients = form
        .coefficients()
        .iter()
        .map(|(i, g)| {
            let f = PolyKForm::from_coefficients(form.n(), 0, [(FormIndex::empty(), g.clone())]).expect("function");
            (monomial_text(&MultiIndex::zero(form.n()), i), render_form(&f))
        })
        .collect();
    Ok(CheckRow {
        form: render_form(form),
        k: form.k(),
        decomposable,
        integrable,
        nonsingular: (&nonsingular).into(),
        coefficients,
    })
}

fn echo(job: &JobSpec) -> JobEcho {
    let (b, bound, form) = match &job.target {
        Target::Weight(w) => (Some(w.exponents().to_vec()), None, None),
        Target::Bound(d) => (None, Some(*d), None),
        Target::Form(f) => (None, None, Some(render_form(f))),
    };
    JobEcho {
        command: job.command.name(),
        structure: (&job.structure).into(),
        k: job.k,
        b,
        bound,
        form,
        oracle: job.oracle,
        trials: job.trials,
        seed: job.seed,
    }
}

pub fn run(job: &JobSpec) -> Result<Report, RunError> {
    run_with(job, Engine::default())
}

pub fn run_with(job: &JobSpec, engine: Engine) -> Result<Report, RunError> {
    let start = Instant::now();
    let mut runner = Runner {
        job,
        engine,
        summary: OracleSummary {
            enabled: job.oracle,
            ..OracleSummary::default()
        },
    };
    let records = runner.records()?;
    let mut timings = BTreeMap::new();
    if job.timings {
        timings.insert("total_ms".to_string(), start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(Report {
        job: echo(job),
        records,
        oracle: runner.summary,
        timings,
    })
}

/// Exit status of a finished report.
pub fn exit_code(report: &Report) -> i32 {
    if report.oracle.mismatches > 0 {
        EXIT_ORACLE_MISMATCH
    } else {
        EXIT_OK
    }
}

/// Computes dimensions, bases, admissible weights and normal forms of twisted
/// k-forms on diagonal Hopf manifolds.
#[derive(Debug, Parser)]
#[command(name = "hopf", version)]
pub struct Cli {
    /// Job file of key=value pairs; flags override its entries.
    #[arg(long)]
    pub job: Option<PathBuf>,
    /// classical, generic or intermediary.
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long)]
    pub n: Option<String>,
    /// Size of the repeated-eigenvalue block (intermediary only).
    #[arg(long)]
    pub r: Option<String>,
    /// Form degree.
    #[arg(long)]
    pub k: Option<String>,
    /// Weight in class order, e.g. [1,0,1].
    #[arg(long)]
    pub b: Option<String>,
    /// Total-degree bound for admissible and catalogue.
    #[arg(long)]
    pub bound: Option<String>,
    /// dim, basis, admissible, classify, catalogue or check.
    #[arg(long)]
    pub command: Option<String>,
    /// Form literal for check, e.g. "z1 dz1^dz2 - dz3^dz4".
    #[arg(long)]
    pub form: Option<String>,
    /// Cross-check every dimension against brute-force enumeration (on/off).
    #[arg(long)]
    pub oracle: Option<String>,
    #[arg(long)]
    pub trials: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
    /// text or json.
    #[arg(long)]
    pub format: Option<String>,
    /// Include wall-clock timings (makes output nondeterministic).
    #[arg(long)]
    pub timings: bool,
}

impl Cli {
    pub fn raw_job(&self) -> std::io::Result<RawJob> {
        let mut raw = match &self.job {
            Some(path) => RawJob::from_text(&std::fs::read_to_string(path)?),
            None => RawJob::default(),
        };
        let flags = [
            ("kind", &self.kind),
            ("n", &self.n),
            ("r", &self.r),
            ("k", &self.k),
            ("b", &self.b),
            ("bound", &self.bound),
            ("command", &self.command),
            ("form", &self.form),
            ("oracle", &self.oracle),
            ("trials", &self.trials),
            ("seed", &self.seed),
            ("format", &self.format),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                raw.set_flag(key, v.clone());
            }
        }
        if self.timings {
            raw.set_flag("timings", "on".into());
        }
        Ok(raw)
    }
}

/// Runs one invocation, writing the report to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn main_with(cli: &Cli, engine: Engine, out: &mut impl std::io::Write, err: &mut impl std::io::Write) -> i32 {
    let raw = match cli.raw_job() {
        Ok(raw) => raw,
        Err(e) => {
            let _ = writeln!(err, "error: cannot read job file: {e}");
            return EXIT_USAGE;
        }
    };
    let job = match raw.validate() {
        Ok(job) => job,
        Err(errors) => {
            for e in &errors.0 {
                let _ = writeln!(err, "error: {e}");
            }
            return EXIT_USAGE;
        }
    };
    let report = match run_with(&job, engine) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INTERNAL;
        }
    };
    let text = match job.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    if out.write_all(text.as_bytes()).is_err() {
        return EXIT_INTERNAL;
    }
    let code = exit_code(&report);
    if code == EXIT_ORACLE_MISMATCH {
        let _ = writeln!(
            err,
            "error: {} of {} dimensions disagree with the oracle",
            report.oracle.mismatches, report.oracle.checked
        );
    }
    code
}
