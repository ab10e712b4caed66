//! Drivers behind the `mbig` binary.
//!
//! Every command returns an [`Outcome`] (exit code plus the text for stdout)
//! and writes any requested files itself, so the binary stays a thin shell
//! and the tests can call the commands directly.

pub mod corpus;

use std::fs;
use std::path::{Path, PathBuf};

use mbig_core::bigness::{is_m_big, replay_certificate, BignessConfig, Verdict};
use mbig_core::cohomology::DEFAULT_COCYCLE_BUDGET;
use mbig_core::field::{split_prime_power, Field};
use mbig_core::matgroup::{enumerate, GroupError, GroupSpec, DEFAULT_ELEMENT_CAP};
use mbig_core::modrep::{DEFAULT_CHOP_BUDGET, DEFAULT_SUBMODULE_CAP};
use mbig_core::par::Exec;
use mbig_core::rootdata::{
    audit_bounds, find_m_regular, RootDataError, RootDatum, SearchConfig,
    DEFAULT_SEARCH_CAP,
};
use serde_json::{json, Value};
use thiserror::Error;

pub const EXIT_BIG: i32 = 0;
pub const EXIT_NOT_BIG: i32 = 1;
pub const EXIT_INDETERMINATE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_IO: i32 = 74;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    RootData(#[from] RootDataError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Read { .. } | CliError::Write { .. } => EXIT_IO,
            CliError::Group(GroupError::GroupTooLarge(_)) => EXIT_CAP,
            CliError::Group(_) => EXIT_USAGE,
            CliError::RootData(RootDataError::SearchSpaceTooLarge { .. }) => EXIT_CAP,
            CliError::RootData(_) => EXIT_USAGE,
        }
    }
}

/// Exit code and stdout text of a finished command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

/// Budgets shared by the group commands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub elements: usize,
    pub submodules: usize,
    pub cocycle: usize,
    pub meataxe: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            elements: DEFAULT_ELEMENT_CAP,
            submodules: DEFAULT_SUBMODULE_CAP,
            cocycle: DEFAULT_COCYCLE_BUDGET,
            meataxe: DEFAULT_CHOP_BUDGET,
        }
    }
}

impl Caps {
    pub fn bigness(&self, seed: u64) -> BignessConfig {
        BignessConfig {
            seed,
            meataxe_budget: self.meataxe,
            submodule_cap: self.submodules,
            cocycle_budget: self.cocycle,
            exec: Exec::default(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "elements": self.elements,
            "submodules": self.submodules,
            "cocycle": self.cocycle,
            "meataxe": self.meataxe,
        })
    }
}

pub fn verdict_exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Big => EXIT_BIG,
        Verdict::NotBig => EXIT_NOT_BIG,
        Verdict::Indeterminate => EXIT_INDETERMINATE,
    }
}

pub(crate) fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| CliError::Write {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn field_for_q(q: u64) -> Result<Field, CliError> {
    let (p, e) = split_prime_power(q).ok_or_else(|| CliError::Usage(format!("{q} is not a prime power")))?;
    Field::new(p, e).map_err(|e| CliError::Usage(e.to_string()))
}

/// Options for `check`.
#[derive(Clone, Debug)]
pub struct CheckArgs {
    pub group: PathBuf,
    pub m: u64,
    pub seed: u64,
    pub caps: Caps,
    pub out: Option<PathBuf>,
    pub witnesses: Option<PathBuf>,
}

/// Certifies one group; the exit code is the verdict's.
pub fn cmd_check(args: &CheckArgs) -> Result<Outcome, CliError> {
    if args.m == 0 {
        return Err(CliError::Usage("--m must be at least 1".into()));
    }
    let text = fs::read_to_string(&args.group).map_err(|source| CliError::Read {
        path: args.group.clone(),
        source,
    })?;
    let spec = GroupSpec::from_json(&text)?;
    let g = enumerate(&spec, args.caps.elements)?;
    let cert = is_m_big(&g, args.m, &args.caps.bigness(args.seed));
    if let Err(e) = replay_certificate(&g, &cert) {
        return Err(CliError::Usage(format!("witness replay failed: {e}")));
    }
    let body = pretty(&cert.to_json());
    if let Some(path) = &args.witnesses {
        let w = json!({
            "order": g.order(),
            "submodules": cert.submodules_json(g.n()),
            "certificate": cert.to_json(),
        });
        write_file(path, &pretty(&w))?;
    }
    let stdout = match &args.out {
        Some(path) => {
            write_file(path, &body)?;
            format!("{}\n", cert.verdict)
        }
        None => body,
    };
    Ok(Outcome {
        code: verdict_exit_code(cert.verdict),
        stdout,
    })
}

/// Options for `torus` and `audit`.
#[derive(Clone, Debug)]
pub struct TorusArgs {
    pub datum: String,
    pub q: u64,
    pub m: u64,
    pub norm: u64,
    pub cap: u64,
    pub out: Option<PathBuf>,
}

impl TorusArgs {
    pub fn new(datum: &str, q: u64, m: u64, norm: u64) -> TorusArgs {
        TorusArgs {
            datum: datum.into(),
            q,
            m,
            norm,
            cap: DEFAULT_SEARCH_CAP,
            out: None,
        }
    }
}

fn emit(out: &Option<PathBuf>, v: &Value) -> Result<String, CliError> {
    let body = pretty(v);
    match out {
        Some(path) => {
            write_file(path, &body)?;
            Ok(String::new())
        }
        None => Ok(body),
    }
}

/// First highly m-regular torus point; exit 0 if found, 1 if none exists.
pub fn cmd_torus(args: &TorusArgs) -> Result<Outcome, CliError> {
    if args.m == 0 || args.norm == 0 {
        return Err(CliError::Usage("--m and --norm must be at least 1".into()));
    }
    let d = RootDatum::parse(&args.datum)?;
    let field = field_for_q(args.q)?;
    let cfg = SearchConfig {
        cap: args.cap,
        exec: Exec::default(),
    };
    let found = find_m_regular(&d, &field, args.m, args.norm, cfg)?;
    let element = found
        .as_ref()
        .map(|t| Value::from(t.coords().iter().map(|&c| field.to_json(c)).collect::<Vec<_>>()));
    if let Some(path) = &args.out {
        let report = json!({
            "type": d.label(),
            "q": args.q,
            "m": args.m,
            "norm": args.norm,
            "element": element,
        });
        write_file(path, &pretty(&report))?;
    }
    let (code, stdout) = match element {
        Some(e) => (0, format!("{e}\n")),
        None => (1, "none\n".to_string()),
    };
    Ok(Outcome { code, stdout })
}

/// Exact counting audit as JSON.
pub fn cmd_audit(args: &TorusArgs) -> Result<Outcome, CliError> {
    if args.m == 0 || args.norm == 0 {
        return Err(CliError::Usage("--m and --norm must be at least 1".into()));
    }
    let d = RootDatum::parse(&args.datum)?;
    let field = field_for_q(args.q)?;
    let cfg = SearchConfig {
        cap: args.cap,
        exec: Exec::default(),
    };
    let report = audit_bounds(&d, &field, args.m, args.norm, cfg)?;
    let found = find_m_regular(&d, &field, args.m, args.norm, cfg)?;
    let mut v = serde_json::to_value(&report).expect("serializable");
    v["first_regular_logs"] = match &found {
        Some(t) => {
            let logs: Vec<u64> = t
                .coords()
                .iter()
                .map(|&c| field.discrete_log(c).expect("unit"))
                .collect();
            Value::from(logs)
        }
        None => Value::Null,
    };
    let stdout = emit(&args.out, &v)?;
    Ok(Outcome { code: 0, stdout })
}
