//! `olc`: exact linearization coefficients, object enumeration, moments and
//! verification suites, with JSON output.
//!
//! Exit status: 0 when everything checked holds, 1 when a verification
//! fails, 2 on usage or input errors.

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use olc_core::combi::{
    enumerate, stat_distribution, statistics, BoxedGroundSet, EnumerationCaps, Filter,
    ObjectKind, Stat, StatRecord,
};
use olc_core::families::{from_birth_death, FAMILY_NAMES};
use olc_core::linearize::{
    combinatorial_value, combinatorial_family, generalized_combinatorial,
    generalized_moment_product, prefactor_adjusted, Linearizer, MultiIndex, Report, XMode,
};
use olc_core::moments::{moment_combinatorial, MomentFunctional, MomentVariant};
use olc_core::scalar::rational_string;
use olc_core::suites::{self, Suite, SuiteConfig};
use olc_core::{BirthDeathSpec, Error, FamilySpec, GaussianRational as Q};

#[derive(Parser)]
#[command(name = "olc", version, about = "Exact linearization coefficients of orthogonal polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print nothing; report through the exit status only.
    #[arg(long, global = true)]
    quiet: bool,
    /// JSON output (the only format).
    #[arg(long, global = true, default_value_t = true)]
    json: bool,
    /// Record the wall-clock time in `elapsed_ms` (otherwise 0, so output
    /// stays byte-identical between runs).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Linearization coefficient I(n) or a generalized moment, checked
    /// against the combinatorial sum when one exists.
    Compute(ComputeArgs),
    /// Enumerate inhomogeneous objects on boxes.
    Enumerate(EnumerateArgs),
    /// Moments of a family.
    Moments(MomentsArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct FamilyArgs {
    /// One of: hermite, charlier, laguerre, meixner, meixner-pollaczek,
    /// q-hermite, q-charlier, q-laguerre, al-salam-chihara, birth-death,
    /// hermite-classical, laguerre-classical.
    #[arg(long)]
    family: String,
    /// Parameter as key=value with value p, p/q or a+bi (repeatable).
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    /// Birth rate coefficients in ascending powers of n (birth-death only).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    birth: Vec<String>,
    /// Death rate coefficients in ascending powers of n (birth-death only).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    death: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliXMode {
    Monomial,
    Falling,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Degrees n_1,…,n_m.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    /// Argument scalings λ_1,…,λ_m.
    #[arg(long = "lambda", value_delimiter = ',')]
    lambdas: Vec<String>,
    /// Extra power n_0 of x.
    #[arg(long)]
    x_power: Option<usize>,
    #[arg(long, value_enum, default_value = "monomial")]
    x_mode: CliXMode,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Matchings,
    Partitions,
    Derangements,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Box sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    boxes: Vec<usize>,
    /// Statistics to report: cr, bl, sg, tr, cyc, exc, wex, drop, fix, ninv, exc_b, drop_b.
    #[arg(long, value_delimiter = ',')]
    stats: Vec<String>,
    /// Only the number of objects (and the statistic distribution if asked).
    #[arg(long)]
    count: bool,
}

#[derive(Args)]
struct MomentsArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Highest moment order.
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// all, linearization, difference-system, boundary, moments,
    /// closed-forms, series, bijections, symmetry or positivity.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 8)]
    max_total: usize,
    #[arg(long, default_value_t = 3)]
    samples: usize,
    /// List every verdict, not only the failing ones.
    #[arg(long)]
    all_verdicts: bool,
}

#[derive(Serialize)]
struct Verdict {
    check: String,
    pass: bool,
    lhs: Value,
    rhs: Value,
    erratum: bool,
}

#[derive(Serialize)]
struct Envelope {
    command: &'static str,
    inputs: Value,
    value: Value,
    table: Value,
    verdicts: Vec<Verdict>,
    elapsed_ms: u64,
}

struct Outcome {
    inputs: Value,
    value: Value,
    table: Value,
    verdicts: Vec<Verdict>,
}

fn scalar(q: &Q) -> Value {
    json!({ "re": rational_string(q.re()), "im": rational_string(q.im()) })
}

fn verdict(r: &Report, erratum: bool) -> Verdict {
    Verdict {
        check: r.label.clone(),
        pass: r.holds,
        lhs: scalar(&r.lhs),
        rhs: scalar(&r.rhs),
        erratum,
    }
}

fn caps() -> Result<EnumerationCaps, String> {
    match std::env::var("OLC_MAX_TOTAL") {
        Ok(v) => v
            .trim()
            .parse()
            .map(EnumerationCaps::uniform)
            .map_err(|_| format!("OLC_MAX_TOTAL must be a nonnegative integer, got `{v}`")),
        Err(_) => Ok(EnumerationCaps::default()),
    }
}

fn parse_q(s: &str) -> Result<Q, Error> {
    Q::parse(s)
}

fn build_family(a: &FamilyArgs) -> Result<(FamilySpec, Value), String> {
    let mut params = BTreeMap::new();
    for p in &a.params {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| format!("--param expects key=value, got `{p}`"))?;
        params.insert(k.trim().to_string(), parse_q(v).map_err(|e| e.to_string())?);
    }
    let echo: BTreeMap<&String, Value> = params.iter().map(|(k, v)| (k, scalar(v))).collect();
    let f = if a.family == "birth-death" {
        let parse_all = |v: &[String]| -> Result<Vec<Q>, String> {
            v.iter().map(|s| parse_q(s).map_err(|e| e.to_string())).collect()
        };
        if a.birth.is_empty() {
            return Err("birth-death needs --birth".into());
        }
        from_birth_death(BirthDeathSpec::new(parse_all(&a.birth)?, parse_all(&a.death)?))
            .map_err(|e| e.to_string())?
    } else if !FAMILY_NAMES.contains(&a.family.as_str()) {
        return Err(Error::UnknownFamily(a.family.clone()).to_string());
    } else {
        FamilySpec::from_name(&a.family, &params).map_err(|e| e.to_string())?
    };
    let inputs = json!({
        "family": a.family,
        "params": echo,
        "birth": a.birth,
        "death": a.death,
    });
    Ok((f, inputs))
}

fn compute(a: &ComputeArgs) -> Result<Outcome, String> {
    let (f, mut inputs) = build_family(&a.family)?;
    let idx = if a.lambdas.is_empty() {
        MultiIndex::new(&a.n)
    } else {
        let lams: Vec<Q> = a
            .lambdas
            .iter()
            .map(|s| parse_q(s).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        MultiIndex::with_scalings(&a.n, &lams).map_err(|e| e.to_string())?
    };
    inputs["n"] = json!(a.n);
    inputs["lambda"] = json!(a.lambdas);
    let caps = caps()?;
    let mut verdicts = Vec::new();
    let value = match a.x_power {
        None => {
            let v = Linearizer::new(f.clone()).value(&idx).map_err(|e| e.to_string())?;
            let lhs = prefactor_adjusted(&f, &idx, v.clone());
            match combinatorial_family(&f).and_then(|cf| combinatorial_value(&cf, &idx, &caps)) {
                Ok(rhs) => verdicts.push(verdict(
                    &Report::new("prefactor-adjusted functional = enumeration", lhs, rhs),
                    false,
                )),
                Err(Error::NotAvailable(_)) => {}
                Err(e) => return Err(e.to_string()),
            }
            v
        }
        Some(n0) => {
            let mode = match a.x_mode {
                CliXMode::Monomial => XMode::Monomial,
                CliXMode::Falling => XMode::Falling,
            };
            inputs["x_power"] = json!(n0);
            inputs["x_mode"] = json!(match a.x_mode {
                CliXMode::Monomial => "monomial",
                CliXMode::Falling => "falling",
            });
            let v = generalized_moment_product(&f, n0, mode, &idx).map_err(|e| e.to_string())?;
            match generalized_combinatorial(&f, n0, mode, &idx, &caps) {
                Ok(rhs) => verdicts.push(verdict(
                    &Report::new("generalized moment = enumeration", v.clone(), rhs),
                    false,
                )),
                Err(Error::NotAvailable(_)) => {}
                Err(e) => return Err(e.to_string()),
            }
            v
        }
    };
    Ok(Outcome {
        inputs,
        value: scalar(&value),
        table: Value::Null,
        verdicts,
    })
}

fn parse_stat(s: &str) -> Result<(Stat, &'static str), String> {
    Ok(match s {
        "cr" => (Stat::Cr, "cr"),
        "bl" => (Stat::Bl, "bl"),
        "sg" => (Stat::Sg, "sg"),
        "tr" => (Stat::Tr, "tr"),
        "cyc" => (Stat::Cyc, "cyc"),
        "exc" => (Stat::Exc, "exc"),
        "wex" => (Stat::Wex, "wex"),
        "drop" => (Stat::Drop, "drop"),
        "fix" => (Stat::Fix, "fix"),
        "ninv" => (Stat::Ninv, "ninv"),
        "exc_b" => (Stat::ExcB, "exc_b"),
        "drop_b" => (Stat::DropB, "drop_b"),
        other => return Err(format!("unknown statistic `{other}`")),
    })
}

fn stat_row(stats: &[(Stat, &'static str)], values: impl Fn(Stat) -> usize) -> Value {
    let m: BTreeMap<&str, usize> = stats.iter().map(|&(s, n)| (n, values(s))).collect();
    json!(m)
}

fn enumerate_cmd(a: &EnumerateArgs) -> Result<Outcome, String> {
    let kind = match a.kind {
        Kind::Matchings => ObjectKind::Matching,
        Kind::Partitions => ObjectKind::Partition,
        Kind::Derangements => ObjectKind::Permutation,
    };
    let stats: Vec<(Stat, &'static str)> =
        a.stats.iter().map(|s| parse_stat(s)).collect::<Result<_, _>>()?;
    let g = BoxedGroundSet::new(&a.boxes);
    let caps = caps()?;
    let inputs = json!({
        "kind": match a.kind {
            Kind::Matchings => "matchings",
            Kind::Partitions => "partitions",
            Kind::Derangements => "derangements",
        },
        "boxes": a.boxes,
        "stats": a.stats,
        "count": a.count,
    });
    let (count, table) = if a.count {
        let only: Vec<Stat> = stats.iter().map(|s| s.0).collect();
        let d = stat_distribution(&g, kind, Filter::Inhomogeneous, &only, None, &caps)
            .map_err(|e| e.to_string())?;
        let table = if stats.is_empty() {
            Value::Null
        } else {
            Value::Array(
                d.counts
                    .iter()
                    .map(|(key, c)| {
                        let mut row = stat_row(&stats, |s| {
                            key[only.iter().position(|t| *t == s).expect("listed")]
                        });
                        row["count"] = json!(c.to_string());
                        row
                    })
                    .collect(),
            )
        };
        (d.total(), table)
    } else {
        let objs = enumerate(&g, kind, Filter::Inhomogeneous, &caps).map_err(|e| e.to_string())?;
        let rows: Vec<Value> = objs
            .iter()
            .map(|o| {
                let r: StatRecord = statistics(o, &g);
                let mut row = stat_row(&stats, |s| s.read(&r));
                row["object"] = json!(o.to_string());
                row
            })
            .collect();
        (objs.len() as u128, Value::Array(rows))
    };
    Ok(Outcome {
        inputs,
        value: scalar(&Q::from_bigint(count.into())),
        table,
        verdicts: Vec::new(),
    })
}

fn moments_cmd(a: &MomentsArgs) -> Result<Outcome, String> {
    let (f, mut inputs) = build_family(&a.family)?;
    inputs["n"] = json!(a.n);
    let lf = MomentFunctional::new(f.clone());
    let mut table = Vec::new();
    let mut verdicts = Vec::new();
    for k in 0..=a.n {
        let mu = lf.moment(k).map_err(|e| e.to_string())?;
        table.push(json!({ "n": k, "moment": scalar(&mu) }));
        for (variant, erratum) in [(MomentVariant::Consistent, false), (MomentVariant::AsPrinted, true)] {
            match moment_combinatorial(&f, k, variant) {
                Ok(c) => {
                    let name = if erratum { "printed formula" } else { "combinatorial formula" };
                    let r = Report::new(format!("μ_{k} = {name}"), mu.clone(), c);
                    // The printed variant coincides with the consistent one
                    // for most families; report it only where it differs.
                    let dup = erratum && verdicts.last().is_some_and(|v: &Verdict| v.rhs == scalar(&r.rhs));
                    if !dup {
                        verdicts.push(verdict(&r, erratum));
                    }
                }
                Err(Error::NotAvailable(_)) | Err(Error::CapExceeded { .. }) => {}
                Err(e) => return Err(e.to_string()),
            }
        }
    }
    let value = lf.moment(a.n).map_err(|e| e.to_string())?;
    Ok(Outcome {
        inputs,
        value: scalar(&value),
        table: Value::Array(table),
        verdicts,
    })
}

fn verify_cmd(a: &VerifyArgs) -> Result<Outcome, String> {
    let selected = Suite::select(&a.suite).ok_or_else(|| format!("unknown suite `{}`", a.suite))?;
    let cfg = SuiteConfig {
        samples: a.samples,
        ..SuiteConfig::with_max_total(a.max_total)
    };
    let mut rows = Vec::new();
    let mut verdicts = Vec::new();
    for s in selected {
        let o = suites::run(s, &cfg);
        rows.push(json!({
            "suite": s.name(),
            "checks": o.reports.len(),
            "failed": o.failures().count(),
            "errata": o.errata.len(),
            "errata_failing": o.errata.iter().filter(|e| !e.report.holds).count(),
            "errors": o.errors,
            "pass": o.passed(),
        }));
        for r in &o.reports {
            if a.all_verdicts || !r.holds {
                verdicts.push(verdict(r, false));
            }
        }
        for e in &o.errata {
            if a.all_verdicts || !e.report.holds {
                verdicts.push(verdict(&e.report, true));
            }
        }
        if !o.errors.is_empty() {
            verdicts.push(Verdict {
                check: format!("{}: no computation errors", s.name()),
                pass: false,
                lhs: json!(o.errors.len()),
                rhs: json!(0),
                erratum: false,
            });
        }
    }
    Ok(Outcome {
        inputs: json!({ "suite": a.suite, "max_total": a.max_total, "samples": a.samples }),
        value: Value::Null,
        table: Value::Array(rows),
        verdicts,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (name, result) = match &cli.command {
        Command::Compute(a) => ("compute", compute(a)),
        Command::Enumerate(a) => ("enumerate", enumerate_cmd(a)),
        Command::Moments(a) => ("moments", moments_cmd(a)),
        Command::Verify(a) => ("verify", verify_cmd(a)),
    };
    let out = match result {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("olc {name}: {msg}");
            return ExitCode::from(2);
        }
    };
    let failed = out.verdicts.iter().any(|v| !v.pass && !v.erratum);
    let env = Envelope {
        command: name,
        inputs: out.inputs,
        value: out.value,
        table: out.table,
        verdicts: out.verdicts,
        elapsed_ms: if cli.timing { start.elapsed().as_millis() as u64 } else { 0 },
    };
    if !cli.quiet {
        // A closed pipe downstream is not an error of ours.
        let text = serde_json::to_string_pretty(&env).expect("serializable");
        let _ = writeln!(std::io::stdout().lock(), "{text}");
    }
    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
