mod args;

use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};

use patfreq::freq::EnumConfig;
use patfreq::layered::OptimalTable;
use patfreq::poset::Poset;
use patfreq::realize::{generate_base_table, Realizer132};
use patfreq::verify::{claim_ids, verify_many, Ledger, VerifyParams};
use patfreq::{
    count_occurrences, frequency_sequence, internal_zeros, inversions_no_132, Error, Parallelism,
    Pattern, Permutation, Realization,
};

use args::{Cli, Command, Format, PosetOp};

/// Process exit codes.
const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_REFUSED: u8 = 3;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BoundExceeded { .. } => EXIT_REFUSED,
        Error::InvalidPermutation(_)
        | Error::InvalidProfile(_)
        | Error::InvalidPoset(_)
        | Error::InvalidArgument(_)
        | Error::OutOfRange(_)
        | Error::UnknownClaim(_) => EXIT_USAGE,
        _ => EXIT_VERIFY_FAILED,
    }
}

fn enum_config(cli: &Cli) -> Result<EnumConfig, Error> {
    let parallelism = match cli.threads {
        Some(t) => Parallelism::threads(t),
        None => Parallelism::available(),
    };
    EnumConfig::default()
        .with_max_n(cli.max_n, cli.override_bound)
        .map(|c| c.with_parallelism(parallelism))
}

fn print_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json output"));
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let config = enum_config(cli)?;
    match &cli.command {
        Command::Count { perm, pattern } => {
            println!("{}", count_occurrences(perm, pattern)?);
        }
        Command::Freq { n, pattern, family } => {
            let q = match (pattern, family) {
                (Some(q), None) => q.clone(),
                (None, Some(f)) => Pattern::two_layer(f.l)?,
                _ => return Err(Error::InvalidArgument("give exactly one of --pattern, --family".into())),
            };
            let seq = frequency_sequence(*n, &q, &config)?;
            match cli.format {
                Format::Json => print_json(&seq.to_json()),
                Format::Csv => print!("{}", seq.to_csv()),
            }
        }
        Command::Table { l, nmax } => {
            let table = OptimalTable::build(*l, *nmax)?;
            match cli.format {
                Format::Json => {
                    let rows: Vec<_> = table.rows().collect();
                    print_json(&json!({ "l": l, "rows": rows }));
                }
                Format::Csv => {
                    println!("n,M,k,l_n");
                    for r in table.rows() {
                        println!("{},{},{},{}", r.n, r.m, r.k, r.valley);
                    }
                }
            }
        }
        Command::Profile { l, n } => {
            let table = OptimalTable::build(*l, (*n).max(l + 1))?;
            let profile = table.optimal_profile(*n)?;
            let perm = patfreq::from_layers(&profile);
            print_json(&json!({
                "l": l,
                "n": n,
                "profile": profile,
                "permutation": perm,
                "count": patfreq::count_q_in_layered(&profile, *l)?,
            }));
        }
        Command::Realize { n, c, pattern } => {
            if pattern.to_string() != "132" {
                return Err(Error::InvalidArgument(format!("realize supports only 132, got {pattern}")));
            }
            match Realizer132::new(*n)?.realize(*n, *c)? {
                Realization::Realized(p) => println!("{p}"),
                Realization::Unrealizable => println!("UNREALIZABLE"),
            }
        }
        Command::InvNo132 { n, c } => println!("{}", inversions_no_132(*n, *c)?),
        Command::Poset { input, profile, op } => {
            let poset = if *profile {
                Poset::from_profile(&input.parse()?)
            } else {
                Poset::from_permutation(&input.parse::<Permutation>()?)
            };
            print_json(&poset_op(&poset, op)?);
        }
        Command::Verify { all, claim, list, dp_nmax, brute_nmax, structure_nmax, poset_nmax, l } => {
            if *list {
                print_json(&json!(claim_ids()));
                return Ok(0);
            }
            if !*all && claim.is_empty() {
                return Err(Error::InvalidArgument("give --all or at least one --claim".into()));
            }
            let defaults = VerifyParams::default();
            let params = VerifyParams {
                ls: l.clone().unwrap_or(defaults.ls),
                dp_n_max: dp_nmax.unwrap_or(defaults.dp_n_max),
                brute_n_max: brute_nmax.unwrap_or(defaults.brute_n_max),
                structure_n_max: structure_nmax.unwrap_or(defaults.structure_n_max),
                poset_n_max: poset_nmax.unwrap_or(defaults.poset_n_max),
                config,
            };
            let ids: Vec<&str> = if *all { Vec::new() } else { claim.iter().map(String::as_str).collect() };
            let ledger = Ledger::new(&params, verify_many(&ids, &params)?);
            print_json(&ledger.to_json());
            if ledger.unexpected_failures > 0 {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
        Command::Conjecture { l, nmax } => {
            let q = Pattern::two_layer(*l)?;
            let mut rows = Vec::new();
            for n in l + 1..=*nmax {
                let report = internal_zeros(&frequency_sequence(n, &q, &config)?);
                rows.push(json!({
                    "n": n,
                    "classification": report.classification,
                    "internal_zeros": report.zero_positions,
                    "max_c": report.max_c,
                }));
            }
            match cli.format {
                Format::Json => print_json(&json!({ "q": q, "rows": rows })),
                Format::Csv => {
                    println!("n,classification,zero_count");
                    for r in &rows {
                        let zeros = r["internal_zeros"].as_array().map_or(0, Vec::len);
                        println!("{},{},{}", r["n"], r["classification"].as_str().unwrap_or(""), zeros);
                    }
                }
            }
        }
        Command::BaseTable { max_n } => {
            print!("{}", generate_base_table(*max_n, &config)?.to_json_string());
        }
    }
    Ok(0)
}

fn element(poset: &Poset, x: Option<usize>, name: &str) -> Result<usize, Error> {
    let x = x.ok_or_else(|| Error::InvalidArgument(format!("this operation needs --{name}")))?;
    if x >= poset.size() {
        return Err(Error::OutOfRange(format!("element {x} outside 0..{}", poset.size())));
    }
    Ok(x)
}

fn poset_op(poset: &Poset, op: &PosetOp) -> Result<Value, Error> {
    Ok(match op {
        PosetOp::Show => poset.to_json(),
        PosetOp::Max => json!(poset.max_elements()),
        PosetOp::DownSet { x } => json!(poset.down_set(element(poset, Some(*x), "x")?)),
        PosetOp::StripMax => poset.strip_max().to_json(),
        PosetOp::IsLot => json!(poset.is_lot()),
        PosetOp::Layered => json!(poset.layered_profile()),
        PosetOp::Mu => json!(poset.mu()),
        PosetOp::Count { l, require, forbid } => json!(poset.count_pattern(*l, require, forbid)?),
        PosetOp::Reassign { x, y } => poset.reassign(*x, *y)?.to_json(),
        PosetOp::Decompose { l } => match poset.find_l_decomposition(*l) {
            Some(d) => json!({
                "split_index": d.split_index,
                "lower": d.lower,
                "upper": d.upper,
                "parts": [d.parts.0.to_json(), d.parts.1.to_json()],
            }),
            None => Value::Null,
        },
    })
}
