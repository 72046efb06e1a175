use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ectorsion::cwalk::{cw_fraction_at_u64, cw_index_of, cw_next};
use ectorsion::families::{family_kubert_view, family_member, quartic_condition};
use ectorsion::params::{
    param_z10, param_z12, param_z14, param_z16, z14_field, z14_u_double, z14_u_orbit, z16_m_groups,
    Group, Sign,
};
use ectorsion::record::{
    parse_records, point_json, serialize_records, verify_record, CurveRecordFile,
};
use ectorsion::sieve::{default_workers, sweep, ScoreKind, SieveConfig, SweepOptions};
use ectorsion::Rat;

const WORKERS_ENV: &str = "ECTORSION_WORKERS";

#[derive(Parser)]
#[command(
    name = "ectorsion",
    version,
    about = "Build, verify and export elliptic curves with large cyclic torsion"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the curve for one parameter value and print it as a record file.
    Param(ParamArgs),
    /// Report one member of a positive-rank Z/12 family.
    Family(FamilyArgs),
    /// Calkin-Wilf index arithmetic.
    Cw {
        #[command(subcommand)]
        op: CwOp,
    },
    /// Score Z/10 or Z/12 candidates over a range of Calkin-Wilf indices.
    Sweep(SweepArgs),
    /// Re-check every record in a file; exit 1 if any check fails.
    Verify { file: PathBuf },
    /// Re-emit a record file as canonical JSON or as CAS coefficient lists.
    Export {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ExportFormat::Json)]
        format: ExportFormat,
    },
    /// The Z/14 u-orbit, its field and the doubled parameter.
    Orbit {
        #[arg(long, allow_hyphen_values = true)]
        u: Rat,
    },
    /// The Z/16 table of m values sharing a field.
    Mgroups {
        #[arg(long, allow_hyphen_values = true)]
        m: Rat,
    },
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long)]
    group: Group,
    /// Z/10 and Z/14 parameter.
    #[arg(long, allow_hyphen_values = true)]
    u: Option<Rat>,
    /// Z/12 parameter.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<Rat>,
    /// Z/14 square-root sign.
    #[arg(long, allow_hyphen_values = true)]
    sign: Option<Sign>,
    /// Z/16 parameter.
    #[arg(long, allow_hyphen_values = true)]
    m: Option<Rat>,
    /// Z/16 branch (1 or 2).
    #[arg(long, default_value_t = 1)]
    branch: u8,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    index: u8,
    #[arg(long, allow_hyphen_values = true)]
    k: i64,
}

#[derive(Subcommand)]
enum CwOp {
    /// Index of a positive rational.
    Index { value: Rat },
    /// Fraction at a 1-based index.
    Frac { n: u64 },
    /// The term following a positive rational.
    Next { value: Rat },
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    group: Group,
    #[arg(long, default_value_t = 1)]
    start: u64,
    #[arg(long)]
    end: u64,
    #[arg(long = "top", default_value_t = 10)]
    top: usize,
    /// Worker threads; defaults to the environment variable, then to the
    /// available parallelism.
    #[arg(long, env = WORKERS_ENV)]
    workers: Option<String>,
    #[arg(long, default_value_t = 1000)]
    prime_bound: u64,
    #[arg(long, default_value = "nagao_weighted")]
    score_kind: ScoreKind,
    #[arg(long)]
    progress: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Json,
    Cas,
}

/// A failed command: exit code plus a JSON error body.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            kind: "usage",
            message: message.into(),
        }
    }

    fn input(kind: &'static str, e: impl std::fmt::Display) -> Failure {
        Failure {
            code: 2,
            kind,
            message: e.to_string(),
        }
    }
}

enum Outcome {
    Ok(String),
    VerifyFailed(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            return fail(Failure::usage(e.to_string().trim().to_string()));
        }
    };
    match run(cli.command) {
        Ok(Outcome::Ok(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::VerifyFailed(text)) => {
            print!("{text}");
            ExitCode::from(1)
        }
        Err(f) => fail(f),
    }
}

fn fail(f: Failure) -> ExitCode {
    let body = json!({ "error": { "kind": f.kind, "message": f.message } });
    eprintln!("{body}");
    ExitCode::from(f.code)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialise");
    s.push('\n');
    s
}

fn read_records(path: &Path) -> Result<CurveRecordFile, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input("io", format!("{}: {e}", path.display())))?;
    parse_records(&text).map_err(|e| Failure::input("parse", e))
}

fn run(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Param(args) => cmd_param(args),
        Command::Family(args) => cmd_family(args),
        Command::Cw { op } => cmd_cw(op),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Verify { file } => cmd_verify(&file),
        Command::Export { file, format } => cmd_export(&file, format),
        Command::Orbit { u } => cmd_orbit(&u),
        Command::Mgroups { m } => cmd_mgroups(&m),
    }
}

fn required<T>(v: Option<T>, flag: &str, group: Group) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::usage(format!("--{flag} is required for --group {group}")))
}

fn cmd_param(args: ParamArgs) -> Result<Outcome, Failure> {
    let g = args.group;
    let record = match g {
        Group::Z10 => param_z10(&required(args.u, "u", g)?),
        Group::Z12 => param_z12(&required(args.t, "t", g)?),
        Group::Z14 => param_z14(&required(args.u, "u", g)?, required(args.sign, "sign", g)?),
        Group::Z16 => param_z16(&required(args.m, "m", g)?, args.branch),
    }
    .map_err(|e| Failure::input("param", e))?;
    Ok(Outcome::Ok(serialize_records(&CurveRecordFile::new(vec![
        record,
    ]))))
}

fn cmd_family(args: FamilyArgs) -> Result<Outcome, Failure> {
    let member = family_member(args.index, args.k).map_err(|e| Failure::input("family", e))?;
    let (one_minus_c, b) =
        family_kubert_view(args.index, args.k).map_err(|e| Failure::input("family", e))?;
    let v = quartic_condition(args.index, &member.t).map_err(|e| Failure::input("family", e))?;
    let report = json!({
        "index": args.index,
        "k": args.k,
        "t": member.t.to_string(),
        "one_minus_c": one_minus_c.to_string(),
        "b": b.to_string(),
        "quartic_root": v.map(|v| v.to_string()),
        "extra_point": point_json(&member.extra),
        "record": member.record.to_json(),
    });
    Ok(Outcome::Ok(pretty(&report)))
}

fn cmd_cw(op: CwOp) -> Result<Outcome, Failure> {
    let out = match op {
        CwOp::Index { value } => cw_index_of(&value).map(|n| n.to_string()),
        CwOp::Frac { n } => cw_fraction_at_u64(n).map(|r| r.to_string()),
        CwOp::Next { value } => cw_next(&value).map(|r| r.to_string()),
    }
    .map_err(|e| Failure::input("cw", e))?;
    Ok(Outcome::Ok(format!("{out}\n")))
}

fn cmd_sweep(args: SweepArgs) -> Result<Outcome, Failure> {
    let workers = match args.workers.as_deref() {
        Some(w) => w
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| {
                Failure::usage(format!("--workers must be a positive integer, got {w:?}"))
            })?,
        None => default_workers(None),
    };
    let opts = SweepOptions {
        group: args.group,
        start: args.start,
        end: args.end,
        top_k: args.top,
        workers,
        progress: args.progress,
    };
    let cfg = SieveConfig {
        prime_bound: args.prime_bound,
        skip_bad: true,
        score_kind: args.score_kind,
    };
    let result = sweep(&opts, &cfg).map_err(|e| Failure::input("sweep", e))?;
    if args.progress {
        eprintln!(
            "done: swept={} kept={} skipped={}",
            result.swept,
            result.kept.len(),
            result.skipped.len()
        );
    }
    let records = result.kept.into_iter().map(|e| e.record).collect();
    Ok(Outcome::Ok(serialize_records(&CurveRecordFile::new(
        records,
    ))))
}

fn cmd_verify(path: &Path) -> Result<Outcome, Failure> {
    let file = read_records(path)?;
    let reports: Vec<_> = file.records.iter().map(verify_record).collect();
    let all = reports.iter().all(|r| r.passed());
    let body = pretty(&json!({
        "passed": all,
        "records": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
    }));
    Ok(if all {
        Outcome::Ok(body)
    } else {
        Outcome::VerifyFailed(body)
    })
}

fn cmd_export(path: &Path, format: ExportFormat) -> Result<Outcome, Failure> {
    let file = read_records(path)?;
    let text = match format {
        ExportFormat::Json if file.records.is_empty() => String::new(),
        ExportFormat::Json => serialize_records(&file),
        ExportFormat::Cas => file
            .records
            .iter()
            .map(|r| format!("{}\n", r.cas_line()))
            .collect(),
    };
    Ok(Outcome::Ok(text))
}

fn cmd_orbit(u: &Rat) -> Result<Outcome, Failure> {
    let field = z14_field(u).map_err(|e| Failure::input("param", e))?;
    let orbit = z14_u_orbit(u).map_err(|e| Failure::input("param", e))?;
    let double = z14_u_double(u).map_err(|e| Failure::input("param", e))?;
    let report = json!({
        "u": u.to_string(),
        "d": field.d.to_string(),
        "orbit": orbit.iter().map(|x| x.to_compact()).collect::<Vec<_>>(),
        "double": double.to_string(),
    });
    Ok(Outcome::Ok(pretty(&report)))
}

fn cmd_mgroups(m: &Rat) -> Result<Outcome, Failure> {
    let groups = z16_m_groups(m).map_err(|e| Failure::input("param", e))?;
    let rows: Vec<Value> = groups
        .iter()
        .map(|row| {
            Value::Array(
                row.iter()
                    .map(|e| {
                        json!({
                            "label": e.label,
                            "m": e.m.to_string(),
                            "branch": e.branch,
                            "d": e.d.to_string(),
                        })
                    })
                    .collect(),
            )
        })
        .collect();
    Ok(Outcome::Ok(pretty(
        &json!({ "m": m.to_string(), "groups": rows }),
    )))
}
