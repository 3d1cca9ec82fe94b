use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use galcoh::cohom::{cohomology_with, Caps};
use galcoh::hyper::{differentials_square_to_zero, hypercohomology_with, verify_les_exactness_with, TwoTermComplex};
use galcoh::picard::{cross_check_with, fundamental_group, picard_group_with, pontryagin_dual_with_pairing};
use galcoh::random::{named_group, random_complex, rng_from_seed};
use galcoh::schema::{self, CohomologyJson, ComplexJson, CrossCheckJson, SpecJson};
use galcoh::{AbGroup, Error};

#[derive(Parser)]
#[command(
    name = "galcoh",
    version,
    about = "Picard groups of reductive groups via Galois hypercohomology"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Largest Galois quotient accepted.
    #[arg(long = "cap-group", default_value_t = 64, global = true)]
    cap_group: usize,
    /// Largest cochain space materialized, in integer coordinates.
    #[arg(long = "cap-dim", default_value_t = 50_000, global = true)]
    cap_dim: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Pic(G) from a group spec.
    Pic { input: PathBuf },
    /// H^n(Γ, M) from a lattice file.
    Cohomology {
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
    /// Hypercohomology of a two-term complex [A -> B].
    Hyper {
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
    /// Check exactness of the long exact sequence of a complex, or of random complexes.
    VerifyLes {
        input: Option<PathBuf>,
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        /// cyclicN or s3
        #[arg(long, default_value = "cyclic2")]
        group: String,
        /// Highest degree checked.
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long = "max-rank", default_value_t = 3)]
        max_rank: usize,
    },
    /// Pontryagin dual of Pic(G), or of a group given as {"invariant_factors", "free_rank"}.
    Dual { input: PathBuf },
    /// Algebraic fundamental group π₁(G).
    Pi1 { input: PathBuf },
    /// Compare Pic(G) with the hypercohomology of a flasque resolution.
    CrossCheck { input: PathBuf },
}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Schema {
        field: path.display().to_string(),
        message: e.to_string(),
    })
}

fn caps(opts: &Opts) -> Caps {
    Caps {
        group_size: opts.cap_group,
        dimension: opts.cap_dim,
        ..Caps::default()
    }
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let caps = caps(&cli.opts);
    let ok = |text: String, json: Value| Ok(Output { text, json, ok: true });
    match &cli.command {
        Command::Pic { input } => {
            let spec = schema::parse::<SpecJson>(&read(input)?)?.build(caps.group_size)?;
            let r = picard_group_with(&spec, &caps)?;
            let pi1 = fundamental_group(&spec)?;
            ok(format!("Pic(G) = {}", r.pic), schema::picard_json(&r, &pi1))
        }
        Command::Cohomology { input, degree } => {
            let lattice = schema::parse::<CohomologyJson>(&read(input)?)?.build(caps.group_size)?;
            let h = cohomology_with(&lattice, *degree, &caps)?;
            ok(
                format!("H^{degree} = {}", h.group()),
                schema::cohomology_json("cohomology", &h),
            )
        }
        Command::Hyper { input, degree } => {
            let map = schema::parse::<ComplexJson>(&read(input)?)?.build(caps.group_size)?;
            let h = hypercohomology_with(&TwoTermComplex::new(map), *degree, &caps)?;
            ok(
                format!("HH^{degree} = {}", h.group()),
                schema::cohomology_json("hyper", &h),
            )
        }
        Command::VerifyLes {
            input,
            random,
            seed,
            cases,
            group,
            degree,
            max_rank,
        } => match (input, random) {
            (Some(path), false) => {
                let map = schema::parse::<ComplexJson>(&read(path)?)?.build(caps.group_size)?;
                let report = verify_les_exactness_with(&TwoTermComplex::new(map), *degree, &caps)?;
                let mut lines: Vec<String> = report
                    .entries
                    .iter()
                    .map(|e| {
                        format!(
                            "{}^{}: {}",
                            e.node,
                            e.degree,
                            if e.pass { "exact" } else { "NOT exact" }
                        )
                    })
                    .collect();
                let good = report.entries.iter().filter(|e| e.pass).count();
                lines.push(format!("{good}/{} exact", report.entries.len()));
                Ok(Output {
                    text: lines.join("\n"),
                    json: schema::les_report_json(&report),
                    ok: report.pass(),
                })
            }
            (None, true) => verify_random(group, *seed, *cases, *degree, *max_rank, &caps),
            _ => Err(Error::Schema {
                field: "input".into(),
                message: "give a complex file or --random, not both".into(),
            }),
        },
        Command::Dual { input } => {
            let text = read(input)?;
            let g = match schema::parse::<AbGroup>(&text) {
                Ok(g) => g,
                Err(_) => picard_group_with(&schema::parse::<SpecJson>(&text)?.build(caps.group_size)?, &caps)?.pic,
            };
            let (dual, pairing) = pontryagin_dual_with_pairing(&g)?;
            let json = schema::envelope(
                "dual",
                json!({
                    "group": schema::group_json(&g),
                    "dual": schema::group_json(&dual),
                    "pairing": { "orders": schema::vec_json(&pairing.orders), "values": schema::matrix_json(&pairing.values) },
                }),
            );
            ok(format!("dual = {dual}"), json)
        }
        Command::Pi1 { input } => {
            let spec = schema::parse::<SpecJson>(&read(input)?)?.build(caps.group_size)?;
            let pi1 = fundamental_group(&spec)?;
            ok(
                format!("pi1(G) = {}", pi1.group),
                schema::envelope("pi1", json!({ "pi1": schema::pi1_json(&pi1) })),
            )
        }
        Command::CrossCheck { input } => {
            let cc = schema::parse::<CrossCheckJson>(&read(input)?)?;
            let spec = cc.spec.build(caps.group_size)?;
            let res = cc.resolution.build(caps.group_size)?;
            let c = cross_check_with(&spec, &res, &caps)?;
            let r = &c.from_resolution;
            let mark = |b: bool| if b { "pass" } else { "FAIL" };
            let text = [
                format!("Pic(G) from spec = {}", c.from_spec),
                format!("HH^1(P* -> S*) = {}", r.hyper_h1),
                format!("H^1(P*) = 0: {}", mark(r.h1_p_star_vanishes())),
                format!(
                    "coker of fixed points = {}: {}",
                    r.fixed_point_cokernel,
                    mark(r.cokernel_matches())
                ),
                (if c.agree() { "agree" } else { "DISAGREE" }).to_string(),
            ]
            .join("\n");
            ok(text, schema::cross_check_json(&c))
        }
    }
}

fn verify_random(
    group: &str,
    seed: u64,
    cases: usize,
    degree: usize,
    max_rank: usize,
    caps: &Caps,
) -> Result<Output, Error> {
    let g = named_group(group).ok_or_else(|| Error::Schema {
        field: "group".into(),
        message: format!("unknown group {group:?}"),
    })?;
    let mut rng = rng_from_seed(seed);
    let mut exact = 0;
    let mut failures = Vec::new();
    for case in 0..cases {
        let cx = random_complex(&g, max_rank, &mut rng)?;
        let report = verify_les_exactness_with(&cx, degree, caps)?;
        if report.pass() && differentials_square_to_zero(&cx, degree) {
            exact += 1;
        } else {
            failures.push(case);
        }
    }
    let json = schema::envelope(
        "verify-les",
        json!({ "group": group, "seed": seed, "cases": cases, "exact": exact, "failures": failures }),
    );
    let mut text = format!("{exact}/{cases} exact");
    if !failures.is_empty() {
        text.push_str(&format!("\nfailing cases: {failures:?}"));
    }
    Ok(Output {
        text,
        json,
        ok: failures.is_empty(),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = match cli.opts.format {
                Format::Text => out.text,
                Format::Json => serde_json::to_string_pretty(&out.json).expect("json output"),
            };
            // a closed pipe downstream is not our failure
            let _ = writeln!(io::stdout(), "{body}");
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("galcoh: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}
