//! Job files: whitespace-separated `key=value` pairs, any number per line.
//!
//! ```text
//! # 2-forms twisted by an intermediary bundle
//! kind=intermediary n=5 r=3
//! k=2 b=[1,0,1] command=classify oracle=on
//! form="z1 dz1^dz4 - 3/2 dz2^dz3"
//! ```
//!
//! Values may be double-quoted, and bracketed weights may contain spaces.
//! Command-line flags go through the same validator.

use std::collections::BTreeMap;
use std::fmt;

use hopf_core::{parse_form, EigenvalueStructure, PolyKForm, StructureKind, Weight};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Dim,
    Basis,
    Admissible,
    Classify,
    Catalogue,
    Check,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Dim => "dim",
            Command::Basis => "basis",
            Command::Admissible => "admissible",
            Command::Classify => "classify",
            Command::Catalogue => "catalogue",
            Command::Check => "check",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "dim" => Command::Dim,
            "basis" => Command::Basis,
            "admissible" => Command::Admissible,
            "classify" => Command::Classify,
            "catalogue" => Command::Catalogue,
            "check" => Command::Check,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Weight(Weight),
    Bound(u32),
    /// Only for `check`.
    Form(PolyKForm),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    pub structure: EigenvalueStructure,
    pub command: Command,
    pub k: usize,
    pub target: Target,
    pub oracle: bool,
    pub trials: usize,
    pub seed: u64,
    pub format: Format,
    pub timings: bool,
}

pub const DEFAULT_TRIALS: usize = 32;

/// Where a raw entry came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Line(usize),
    Flag,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Line(n) => write!(f, "line {n}"),
            Origin::Flag => f.write_str("command line"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JobErrorKind {
    #[error("unknown structure kind '{0}' (expected classical, generic or intermediary)")]
    UnknownKind(String),
    #[error("r out of range 2..n-1: got r = {r} with n = {n}")]
    ROutOfRange { r: usize, n: usize },
    #[error("malformed weight vector '{value}': {reason}")]
    MalformedWeight { value: String, reason: String },
    #[error("malformed form literal: {0}")]
    MalformedForm(String),
    #[error("missing field '{0}'")]
    MissingField(&'static str),
    #[error("unknown key '{0}'")]
    UnknownKey(String),
    #[error("unknown command '{0}' (expected dim, basis, admissible, classify, catalogue or check)")]
    UnknownCommand(String),
    #[error("invalid value '{value}' for '{key}'")]
    InvalidValue { key: String, value: String },
    #[error("key '{0}' given twice")]
    DuplicateKey(String),
    #[error("{0}")]
    Syntax(String),
    #[error("{0}")]
    Conflict(String),
    #[error("{0}")]
    Structure(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}: {kind}", self.location())]
pub struct JobError {
    pub origin: Option<Origin>,
    pub field: Option<String>,
    pub kind: JobErrorKind,
}

impl JobError {
    fn location(&self) -> String {
        match (&self.origin, &self.field) {
            (Some(o), Some(f)) => format!("{o}, field '{f}'"),
            (Some(o), None) => o.to_string(),
            (None, Some(f)) => format!("field '{f}'"),
            (None, None) => "job".to_string(),
        }
    }
}

/// Parse failures, in input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobErrors(pub Vec<JobError>);

impl fmt::Display for JobErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for JobErrors {}

const KEYS: [&str; 13] = [
    "kind", "n", "r", "k", "b", "bound", "command", "form", "oracle", "trials", "seed", "format", "timings",
];

/// Raw `key=value` entries before validation.
#[derive(Debug, Clone, Default)]
pub struct RawJob {
    entries: BTreeMap<String, (String, Origin)>,
    errors: Vec<JobError>,
}

impl RawJob {
    pub fn from_text(text: &str) -> Self {
        let mut raw = Self::default();
        let mut pending: Option<(String, String, usize)> = None;
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let mut rest = line;
            if let Some((key, mut value, start)) = pending.take() {
                // Continuation of a bracketed weight.
                match rest.find(']') {
                    Some(end) => {
                        value.push_str(&rest[..=end]);
                        rest = &rest[end + 1..];
                        raw.insert(key, value, Origin::Line(start));
                    }
                    None => {
                        value.push_str(rest);
                        pending = Some((key, value, start));
                        continue;
                    }
                }
            }
            if let Err(e) = raw.scan_line(rest, line_no, &mut pending) {
                raw.errors.push(e);
            }
        }
        if let Some((key, _, start)) = pending {
            raw.errors.push(JobError {
                origin: Some(Origin::Line(start)),
                field: Some(key),
                kind: JobErrorKind::Syntax("unterminated '['".into()),
            });
        }
        raw
    }

    fn scan_line(
        &mut self,
        line: &str,
        line_no: usize,
        pending: &mut Option<(String, String, usize)>,
    ) -> Result<(), JobError> {
        let syntax = |msg: String| JobError {
            origin: Some(Origin::Line(line_no)),
            field: None,
            kind: JobErrorKind::Syntax(msg),
        };
        let mut rest = line.trim_start();
        while !rest.is_empty() && !rest.starts_with('#') {
            let eq = rest
                .find('=')
                .ok_or_else(|| syntax(format!("expected key=value, found '{}'", rest.trim_end())))?;
            let key = rest[..eq].trim();
            if key.is_empty() || key.contains(char::is_whitespace) {
                return Err(syntax(format!("bad key '{key}'")));
            }
            let after = &rest[eq + 1..];
            let (value, remainder) = if let Some(body) = after.strip_prefix('"') {
                let close = body
                    .find('"')
                    .ok_or_else(|| syntax(format!("unterminated quote in '{key}'")))?;
                (body[..close].to_string(), &body[close + 1..])
            } else if after.starts_with('[') {
                match after.find(']') {
                    Some(close) => (after[..=close].to_string(), &after[close + 1..]),
                    None => {
                        *pending = Some((key.to_string(), after.to_string(), line_no));
                        return Ok(());
                    }
                }
            } else {
                let end = after.find(char::is_whitespace).unwrap_or(after.len());
                (after[..end].to_string(), &after[end..])
            };
            self.insert(key.to_string(), value, Origin::Line(line_no));
            rest = remainder.trim_start();
        }
        Ok(())
    }

    fn insert(&mut self, key: String, value: String, origin: Origin) {
        if self.entries.contains_key(&key) {
            self.errors.push(JobError {
                origin: Some(origin),
                field: Some(key.clone()),
                kind: JobErrorKind::DuplicateKey(key),
            });
            return;
        }
        self.entries.insert(key, (value, origin));
    }

    /// Sets or overrides an entry from a command-line flag.
    pub fn set_flag(&mut self, key: &str, value: String) {
        self.entries.insert(key.to_string(), (value, Origin::Flag));
    }

    pub fn validate(self) -> Result<JobSpec, JobErrors> {
        Validator {
            raw: &self.entries,
            errors: self.errors.clone(),
        }
        .run()
    }
}

struct Validator<'a> {
    raw: &'a BTreeMap<String, (String, Origin)>,
    errors: Vec<JobError>,
}

impl Validator<'_> {
    fn fail(&mut self, key: &str, kind: JobErrorKind) {
        let origin = self.raw.get(key).map(|(_, o)| *o);
        self.errors.push(JobError {
            origin,
            field: Some(key.to_string()),
            kind,
        });
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.raw.get(key).map(|(v, _)| v.as_str())
    }

    fn number<T: std::str::FromStr>(&mut self, key: &str) -> Option<T> {
        let value = self.get(key)?.to_string();
        match value.trim().parse() {
            Ok(v) => Some(v),
            Err(_) => {
                self.fail(
                    key,
                    JobErrorKind::InvalidValue {
                        key: key.to_string(),
                        value,
                    },
                );
                None
            }
        }
    }

    fn switch(&mut self, key: &str) -> Option<bool> {
        let value = self.get(key)?.to_string();
        match value.as_str() {
            "on" | "true" | "yes" | "1" => Some(true),
            "off" | "false" | "no" | "0" => Some(false),
            _ => {
                self.fail(
                    key,
                    JobErrorKind::InvalidValue {
                        key: key.to_string(),
                        value,
                    },
                );
                None
            }
        }
    }

    fn require<T>(&mut self, key: &'static str, value: Option<T>) -> Option<T> {
        if value.is_none() && self.get(key).is_none() {
            self.errors.push(JobError {
                origin: None,
                field: Some(key.to_string()),
                kind: JobErrorKind::MissingField(key),
            });
        }
        value
    }

    fn structure(&mut self) -> Option<EigenvalueStructure> {
        let n: Option<usize> = self.number("n");
        let n = self.require("n", n);
        let kind = match self.get("kind").map(str::to_string) {
            None => {
                self.require::<()>("kind", None);
                None
            }
            Some(k) => match k.as_str() {
                "classical" => Some(StructureKind::Classical),
                "generic" => Some(StructureKind::Generic),
                "intermediary" => {
                    let r: Option<usize> = self.number("r");
                    self.require("r", r).map(|r| StructureKind::Intermediary { r })
                }
                _ => {
                    self.fail("kind", JobErrorKind::UnknownKind(k));
                    None
                }
            },
        };
        if self.get("r").is_some() && !matches!(kind, Some(StructureKind::Intermediary { .. }) | None) {
            self.fail(
                "r",
                JobErrorKind::Conflict("r is only meaningful for kind=intermediary".into()),
            );
        }
        let (n, kind) = (n?, kind?);
        match EigenvalueStructure::new(n, kind) {
            Ok(s) => Some(s),
            Err(hopf_core::Error::BlockOutOfRange { r, n, .. }) => {
                self.fail("r", JobErrorKind::ROutOfRange { r, n });
                None
            }
            Err(e) => {
                self.fail("n", JobErrorKind::Structure(e.to_string()));
                None
            }
        }
    }

    fn weight(&mut self, structure: Option<&EigenvalueStructure>) -> Option<Weight> {
        let value = self.get("b")?.to_string();
        let malformed = |reason: &str| JobErrorKind::MalformedWeight {
            value: value.clone(),
            reason: reason.to_string(),
        };
        let Some(body) = value.trim().strip_prefix('[').and_then(|v| v.strip_suffix(']')) else {
            self.fail("b", malformed("expected [e1,e2,...]"));
            return None;
        };
        let entries: Result<Vec<i64>, _> = body.split(',').map(|e| e.trim().parse::<i64>()).collect();
        let Ok(entries) = entries else {
            self.fail("b", malformed("entries must be integers"));
            return None;
        };
        if let Some(s) = structure {
            if entries.len() != s.class_count() {
                let reason = format!(
                    "{s} has {} eigenvalue classes, got {} entries",
                    s.class_count(),
                    entries.len()
                );
                self.fail("b", malformed(&reason));
                return None;
            }
        }
        Some(Weight::new(entries))
    }

    fn run(mut self) -> Result<JobSpec, JobErrors> {
        for (key, (_, origin)) in self.raw {
            if !KEYS.contains(&key.as_str()) {
                self.errors.push(JobError {
                    origin: Some(*origin),
                    field: Some(key.clone()),
                    kind: JobErrorKind::UnknownKey(key.clone()),
                });
            }
        }
        let structure = self.structure();
        let command = match self.get("command").map(str::to_string) {
            None => self.require("command", None),
            Some(c) => match Command::parse(&c) {
                Some(c) => Some(c),
                None => {
                    self.fail("command", JobErrorKind::UnknownCommand(c));
                    None
                }
            },
        };
        let k: Option<usize> = self.number("k");
        let weight = self.weight(structure.as_ref());
        let bound: Option<u32> = self.number("bound");
        let oracle = self.switch("oracle").unwrap_or(false);
        let timings = self.switch("timings").unwrap_or(false);
        let trials = self.number("trials").unwrap_or(DEFAULT_TRIALS);
        let seed = self.number("seed").unwrap_or(0);
        let format = match self.get("format").map(str::to_string) {
            None => Format::Text,
            Some(f) if f == "text" => Format::Text,
            Some(f) if f == "json" => Format::Json,
            Some(f) => {
                self.fail(
                    "format",
                    JobErrorKind::InvalidValue {
                        key: "format".into(),
                        value: f,
                    },
                );
                Format::Text
            }
        };

        let target = match command {
            Some(Command::Check) => self.form(structure.as_ref(), k),
            Some(Command::Dim | Command::Basis | Command::Classify) => {
                if self.get("bound").is_some() {
                    self.fail(
                        "bound",
                        JobErrorKind::Conflict("this command takes b, not bound".into()),
                    );
                }
                self.require("b", weight).map(Target::Weight)
            }
            Some(Command::Admissible | Command::Catalogue) => {
                if self.get("b").is_some() {
                    self.fail("b", JobErrorKind::Conflict("this command takes bound, not b".into()));
                }
                self.require("bound", bound).map(Target::Bound)
            }
            None => None,
        };
        let k = match (&target, k) {
            (Some(Target::Form(f)), _) => Some(f.k()),
            (_, k) => self.require("k", k),
        };
        if let (Some(s), Some(k)) = (structure, k) {
            if k > s.n() {
                self.fail("k", JobErrorKind::Conflict(format!("k = {k} exceeds n = {}", s.n())));
            }
        }
        if !self.errors.is_empty() {
            self.errors.sort_by_key(|e| match e.origin {
                Some(Origin::Line(n)) => (0, n),
                Some(Origin::Flag) => (1, 0),
                None => (2, 0),
            });
            return Err(JobErrors(self.errors));
        }
        Ok(JobSpec {
            structure: structure.expect("no errors"),
            command: command.expect("no errors"),
            k: k.expect("no errors"),
            target: target.expect("no errors"),
            oracle,
            trials,
            seed,
            format,
            timings,
        })
    }

    fn form(&mut self, structure: Option<&EigenvalueStructure>, k: Option<usize>) -> Option<Target> {
        let text = self.get("form").map(str::to_string);
        let text = self.require("form", text)?;
        let s = structure?;
        match parse_form(&text, s.n(), k) {
            Ok(f) if f.is_zero() => {
                self.fail(
                    "form",
                    JobErrorKind::MalformedForm("the zero form defines no distribution".into()),
                );
                None
            }
            Ok(f) => Some(Target::Form(f)),
            Err(e) => {
                self.fail("form", JobErrorKind::MalformedForm(e.to_string()));
                None
            }
        }
    }
}

pub fn parse_jobspec(text: &str) -> Result<JobSpec, JobErrors> {
    RawJob::from_text(text).validate()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<JobErrorKind> {
        parse_jobspec(text).unwrap_err().0.into_iter().map(|e| e.kind).collect()
    }

    #[test]
    fn dim_job() {
        let job = parse_jobspec("kind=generic n=4 k=2 command=dim b=[1,0,1,0]").unwrap();
        assert_eq!(job.command, Command::Dim);
        assert_eq!(job.structure, EigenvalueStructure::generic(4).unwrap());
        assert_eq!(job.target, Target::Weight(Weight::new(vec![1, 0, 1, 0])));
        assert!(!job.oracle);
        assert_eq!(job.trials, DEFAULT_TRIALS);
    }

    #[test]
    fn catalogue_job() {
        let job = parse_jobspec("kind=classical n=4 k=2 command=catalogue bound=3").unwrap();
        assert_eq!(job.command, Command::Catalogue);
        assert_eq!(job.target, Target::Bound(3));
    }

    #[test]
    fn r_out_of_range() {
        let errors = parse_jobspec("kind=intermediary r=5 n=4 k=2 command=dim b=[1,0]").unwrap_err();
        assert_eq!(errors.0[0].kind, JobErrorKind::ROutOfRange { r: 5, n: 4 });
        assert!(errors.to_string().contains("r out of range 2..n-1"));
        assert!(errors.to_string().starts_with("line 1, field 'r'"));
    }

    #[test]
    fn multi_line_with_comments_quotes_and_spaced_weights() {
        let text =
            "# header\nkind=intermediary n=5 r=3   # trailing\nk=2 b=[1, 0,\n 1]\ncommand=classify oracle=on seed=9\n";
        let job = parse_jobspec(text).unwrap();
        assert_eq!(job.target, Target::Weight(Weight::new(vec![1, 0, 1])));
        assert!(job.oracle);
        assert_eq!(job.seed, 9);

        let job = parse_jobspec("kind=generic n=4 command=check form=\"dz1^dz2 + dz3^dz4\"").unwrap();
        assert_eq!(job.k, 2);
        assert!(matches!(job.target, Target::Form(_)));
    }

    #[test]
    fn distinct_error_kinds() {
        assert!(matches!(
            kinds("kind=weird n=4 k=2 command=dim b=[1]")[0],
            JobErrorKind::UnknownKind(_)
        ));
        assert!(matches!(
            kinds("kind=generic n=4 k=2 command=dim b=[1,0,x,0]")[0],
            JobErrorKind::MalformedWeight { .. }
        ));
        assert!(matches!(
            kinds("kind=generic n=4 k=2 command=dim b=[1,0,1]")[0],
            JobErrorKind::MalformedWeight { .. }
        ));
        assert!(matches!(
            kinds("kind=generic n=4 command=check form=\"dz1^^dz2\"")[0],
            JobErrorKind::MalformedForm(_)
        ));
        assert!(matches!(
            kinds("kind=generic n=4 command=check form=0 k=2")[0],
            JobErrorKind::MalformedForm(_)
        ));
        assert_eq!(
            kinds("kind=generic n=4 k=2 command=dim"),
            vec![JobErrorKind::MissingField("b")]
        );
        assert!(matches!(
            kinds("kind=generic n=4 k=2 command=dim b=[1,1,0,0] colour=red")[0],
            JobErrorKind::UnknownKey(_)
        ));
        assert!(matches!(
            kinds("kind=generic n=4 k=2 command=plot b=[1,1,0,0]")[0],
            JobErrorKind::UnknownCommand(_)
        ));
        assert!(matches!(
            kinds("kind=generic n=four k=2 command=dim b=[1,1,0,0]")[0],
            JobErrorKind::InvalidValue { .. }
        ));
        assert!(matches!(
            kinds("kind=generic n=4 n=5 k=2 command=dim b=[1,1,0,0]")[0],
            JobErrorKind::DuplicateKey(_)
        ));
        assert!(matches!(
            kinds("kind=generic n=4 k=2 command=dim b=[1,1,0,0] bound=3")[0],
            JobErrorKind::Conflict(_)
        ));
        assert!(matches!(
            kinds("kind=generic n=2 k=1 command=dim b=[1,1]")[0],
            JobErrorKind::Structure(_)
        ));
        assert!(matches!(kinds("kind=generic n 4")[0], JobErrorKind::Syntax(_)));
    }

    #[test]
    fn errors_carry_lines_and_accumulate() {
        let errors = parse_jobspec("kind=generic n=4\nk=x\ncommand=nope b=[1,1,0,0]").unwrap_err();
        assert_eq!(errors.0.len(), 2);
        assert_eq!(errors.0[0].origin, Some(Origin::Line(2)));
        assert_eq!(errors.0[1].origin, Some(Origin::Line(3)));
    }

    #[test]
    fn flags_override_file_entries() {
        let mut raw = RawJob::from_text("kind=generic n=4 k=2 command=dim b=[1,1,0,0]");
        raw.set_flag("b", "[1,0,0,1]".into());
        raw.set_flag("format", "json".into());
        let job = raw.validate().unwrap();
        assert_eq!(job.target, Target::Weight(Weight::new(vec![1, 0, 0, 1])));
        assert_eq!(job.format, Format::Json);
    }
}
