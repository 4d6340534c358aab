//! `pavane`: command-line front end for the pattern-avoidance toolkit.
//!
//! Every command emits the same data in json, csv, or aligned text; big
//! integers always cross the boundary as decimal strings.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num::BigInt;
use serde_json::{json, Value};

use pavane::analysis::{
    growth_report, rlmax_profile_compare, sandwich_check, wilf_check, RlMaxConfig,
};
use pavane::bijections::{check_g_exhaustive, check_h_exhaustive, g_inverse, g_map, h_inverse, h_map};
use pavane::containment::avoids_all;
use pavane::enumerate::{count_sequence, enumerate_avoiders};
use pavane::error::Error;
use pavane::perm::Family;
use pavane::series::{gf_a44_counts, hermite_pade_guess};
use pavane::{CountCache, PatternSet, Permutation};

#[derive(Parser)]
#[command(name = "pavane", version, about = "Permutation pattern-avoidance toolkit")]
struct Cli {
    /// Directory for the persistent count cache.
    #[arg(long, global = true, env = "PAVANE_CACHE")]
    cache: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Proceed past the default length ceilings (with a warning).
    #[arg(long, global = true)]
    force_max_n: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Count avoiders of a class for n = 0..=N.
    Count {
        #[arg(long = "class")]
        class: String,
        #[arg(long = "max-n")]
        max_n: usize,
    },
    /// List all avoiders of a class at one length.
    List {
        #[arg(long = "class")]
        class: String,
        #[arg(long)]
        n: usize,
    },
    /// Decide whether a permutation avoids or contains a class.
    Check {
        #[arg(long)]
        perm: String,
        #[arg(long = "class")]
        class: String,
    },
    /// Apply one of the bijections to a permutation.
    Biject {
        #[arg(long, value_enum)]
        map: MapKind,
        /// l for g/g-inv, k for h/h-inv.
        #[arg(long)]
        param: usize,
        #[arg(long)]
        perm: String,
    },
    /// Run a verification and exit 1 on failure.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Exact generating-function data.
    #[command(subcommand)]
    Series(SeriesCommand),
    /// Guess an algebraic relation P(z, F) = 0 from sequence terms.
    Guess {
        /// File of decimal integers (whitespace/comma separated), terms
        /// from n = 0.
        #[arg(long)]
        terms: PathBuf,
        #[arg(long = "deg-f")]
        deg_f: usize,
        #[arg(long = "deg-z")]
        deg_z: usize,
        /// Surplus equations required beyond unknowns.
        #[arg(long, default_value_t = 5)]
        margin: usize,
    },
    /// Diagnostics with no pass/fail semantics.
    #[command(subcommand)]
    Report(ReportCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum MapKind {
    G,
    #[value(name = "g-inv")]
    GInv,
    H,
    #[value(name = "h-inv")]
    HInv,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Compare two count sequences term by term.
    Wilf {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long = "max-n")]
        max_n: usize,
    },
    /// Check the binomial-sum bounds s_n/(k-1) <= count <= s_n.
    Sandwich {
        #[arg(long)]
        k: usize,
        #[arg(long = "max-n")]
        max_n: usize,
    },
    /// Exhaustively check bijectivity of g or h up to a length.
    Bijection {
        #[arg(long, value_enum)]
        map: BijectionKind,
        /// l for g, k for h.
        #[arg(long)]
        param: usize,
        #[arg(long = "max-n")]
        max_n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BijectionKind {
    G,
    H,
}

#[derive(Subcommand)]
enum SeriesCommand {
    /// Coefficients of the closed-form generating function for A:4.
    A44 {
        #[arg(long)]
        order: usize,
    },
}

#[derive(Subcommand)]
enum ReportCommand {
    /// Counts, nth roots, ratios, and fitted window constants for A:k.
    Growth {
        #[arg(long)]
        k: usize,
        #[arg(long = "max-n")]
        max_n: usize,
    },
    /// Compare right-to-left-maxima profiles of two classes at one length.
    Rlmax {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        n: usize,
    },
}

/// One command's worth of output, renderable in all three formats.
struct CmdOutput {
    json: Value,
    csv_header: Vec<String>,
    csv_rows: Vec<Vec<String>>,
    text: String,
    failed: bool,
}

impl CmdOutput {
    fn report(json: Value, header: &[&str], rows: Vec<Vec<String>>, text: String) -> Self {
        CmdOutput {
            json,
            csv_header: header.iter().map(|s| s.to_string()).collect(),
            csv_rows: rows,
            text,
            failed: false,
        }
    }
}

const GENERIC_CEILING: usize = 12;
const A_FAMILY_CEILING: usize = 13;

fn ceiling_for(sets: &[&PatternSet]) -> usize {
    if sets
        .iter()
        .all(|s| matches!(s.family(), Family::A { .. }))
    {
        A_FAMILY_CEILING
    } else {
        GENERIC_CEILING
    }
}

fn check_ceiling(n: usize, ceiling: usize, force: bool) -> Result<(), Error> {
    if n <= ceiling {
        return Ok(());
    }
    if force {
        eprintln!(
            "warning: n = {n} exceeds the default ceiling {ceiling}; continuing under --force-max-n"
        );
        return Ok(());
    }
    Err(Error::CeilingExceeded {
        requested: n,
        ceiling,
    })
}

fn aligned_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let fmt_row = |cells: Vec<&str>| {
        cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{:>w$}", c, w = widths[i]))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let mut out = fmt_row(header.to_vec());
    for row in rows {
        out.push('\n');
        out.push_str(&fmt_row(row.iter().map(|s| s.as_str()).collect()));
    }
    out
}

fn run(cli: &Cli) -> Result<CmdOutput, Error> {
    let cache = match &cli.cache {
        Some(dir) => Some(CountCache::open(dir)?),
        None => None,
    };
    let cache = cache.as_ref();
    let force = cli.force_max_n;

    match &cli.command {
        Command::Count { class, max_n } => {
            let set = PatternSet::parse(class)?;
            check_ceiling(*max_n, ceiling_for(&[&set]), force)?;
            let seq = count_sequence(&set, *max_n, cache)?;
            let counts: Vec<String> = seq.terms.iter().map(|t| t.to_string()).collect();
            let rows: Vec<Vec<String>> = counts
                .iter()
                .enumerate()
                .map(|(n, c)| vec![n.to_string(), c.clone()])
                .collect();
            Ok(CmdOutput::report(
                json!({"class": seq.descriptor, "counts": counts}),
                &["n", "count"],
                rows,
                counts.join(","),
            ))
        }
        Command::List { class, n } => {
            let set = PatternSet::parse(class)?;
            check_ceiling(*n, ceiling_for(&[&set]), force)?;
            let avoiders: Vec<String> = enumerate_avoiders(*n, &set)
                .iter()
                .map(|p| p.to_string())
                .collect();
            let rows: Vec<Vec<String>> = avoiders.iter().map(|p| vec![p.clone()]).collect();
            Ok(CmdOutput::report(
                json!({"class": set.descriptor(), "n": n, "avoiders": avoiders}),
                &["perm"],
                rows,
                avoiders.join("\n"),
            ))
        }
        Command::Check { perm, class } => {
            let p = Permutation::parse(perm)?;
            let set = PatternSet::parse(class)?;
            let verdict = if avoids_all(&p, &set) { "avoids" } else { "contains" };
            Ok(CmdOutput::report(
                json!({"perm": p.to_string(), "class": set.descriptor(), "verdict": verdict}),
                &["perm", "class", "verdict"],
                vec![vec![p.to_string(), set.descriptor(), verdict.to_string()]],
                verdict.to_string(),
            ))
        }
        Command::Biject { map, param, perm } => {
            let p = Permutation::parse(perm)?;
            let (name, image) = match map {
                MapKind::G => ("g", g_map(&p, *param)?),
                MapKind::GInv => ("g-inv", g_inverse(&p, *param)?),
                MapKind::H => ("h", h_map(&p, *param)?),
                MapKind::HInv => ("h-inv", h_inverse(&p, *param)?),
            };
            Ok(CmdOutput::report(
                json!({"map": name, "param": param, "input": p.to_string(), "image": image.to_string()}),
                &["map", "param", "input", "image"],
                vec![vec![
                    name.to_string(),
                    param.to_string(),
                    p.to_string(),
                    image.to_string(),
                ]],
                image.to_string(),
            ))
        }
        Command::Verify(v) => run_verify(v, cache, force),
        Command::Series(SeriesCommand::A44 { order }) => {
            let counts: Vec<String> = gf_a44_counts(*order)
                .iter()
                .map(|c| c.to_string())
                .collect();
            let rows: Vec<Vec<String>> = counts
                .iter()
                .enumerate()
                .map(|(n, c)| vec![n.to_string(), c.clone()])
                .collect();
            Ok(CmdOutput::report(
                json!({"series": "a44", "order": order, "coefficients": counts}),
                &["n", "coefficient"],
                rows,
                counts.join(","),
            ))
        }
        Command::Guess {
            terms,
            deg_f,
            deg_z,
            margin,
        } => {
            let raw = std::fs::read_to_string(terms)?;
            let parsed: Vec<BigInt> = raw
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<BigInt>()
                        .map_err(|_| Error::InvalidParameter(format!("bad term {t:?}")))
                })
                .collect::<Result<_, _>>()?;
            let n_terms = parsed.len();
            match hermite_pade_guess(&parsed, *deg_f, *deg_z, *margin)? {
                Some(cand) => {
                    let mut jo = cand.to_json();
                    jo["found"] = json!(true);
                    jo["display"] = json!(cand.display());
                    let rows = cand
                        .polys
                        .iter()
                        .enumerate()
                        .map(|(i, poly)| {
                            vec![
                                i.to_string(),
                                poly.iter()
                                    .map(|c| c.to_string())
                                    .collect::<Vec<_>>()
                                    .join(" "),
                            ]
                        })
                        .collect();
                    Ok(CmdOutput::report(
                        jo,
                        &["power_of_f", "coefficients"],
                        rows,
                        format!("annihilator found: {} = 0", cand.display()),
                    ))
                }
                None => Ok(CmdOutput::report(
                    json!({"found": false, "deg_f": deg_f, "deg_z": deg_z, "terms": n_terms}),
                    &["found"],
                    vec![vec!["none".to_string()]],
                    format!(
                        "no annihilator with d <= {deg_f}, D <= {deg_z} at {n_terms} terms"
                    ),
                )),
            }
        }
        Command::Report(r) => run_report(r, cache, force),
    }
}

fn run_verify(
    cmd: &VerifyCommand,
    cache: Option<&CountCache>,
    force: bool,
) -> Result<CmdOutput, Error> {
    match cmd {
        VerifyCommand::Wilf { left, right, max_n } => {
            let s = PatternSet::parse(left)?;
            let t = PatternSet::parse(right)?;
            check_ceiling(*max_n, ceiling_for(&[&s, &t]), force)?;
            let report = wilf_check(&s, &t, *max_n, cache)?;
            let rows: Vec<Vec<String>> = report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.left.to_string(),
                        r.right.to_string(),
                        r.equal.to_string(),
                    ]
                })
                .collect();
            let json_rows: Vec<Value> = report
                .rows
                .iter()
                .map(|r| {
                    json!({"n": r.n, "left": r.left.to_string(), "right": r.right.to_string(), "equal": r.equal})
                })
                .collect();
            let mut text = aligned_table(&["n", report.left.as_str(), report.right.as_str(), "equal"], &rows);
            text.push_str(&format!(
                "\noverall: {}",
                if report.equal { "PASS" } else { "FAIL" }
            ));
            Ok(CmdOutput {
                json: json!({"left": report.left, "right": report.right, "rows": json_rows, "equal": report.equal}),
                csv_header: vec!["n".into(), "left".into(), "right".into(), "equal".into()],
                csv_rows: rows,
                text,
                failed: !report.equal,
            })
        }
        VerifyCommand::Sandwich { k, max_n } => {
            // Counts both A:k and the monotone class, so the generic
            // ceiling applies.
            check_ceiling(*max_n, GENERIC_CEILING, force)?;
            let report = sandwich_check(*k, *max_n, cache)?;
            let rows: Vec<Vec<String>> = report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.s_n.to_string(),
                        r.lower.to_string(),
                        r.count.to_string(),
                        r.upper.to_string(),
                        r.pass.to_string(),
                    ]
                })
                .collect();
            let json_rows: Vec<Value> = report
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "s_n": r.s_n.to_string(),
                        "lower": r.lower.to_string(),
                        "count": r.count.to_string(),
                        "upper": r.upper.to_string(),
                        "pass": r.pass,
                    })
                })
                .collect();
            let mut text =
                aligned_table(&["n", "s_n", "lower", "count", "upper", "pass"], &rows);
            text.push_str(&format!(
                "\noverall: {}",
                if report.pass { "PASS" } else { "FAIL" }
            ));
            Ok(CmdOutput {
                json: json!({"k": k, "rows": json_rows, "pass": report.pass}),
                csv_header: vec![
                    "n".into(),
                    "s_n".into(),
                    "lower".into(),
                    "count".into(),
                    "upper".into(),
                    "pass".into(),
                ],
                csv_rows: rows,
                text,
                failed: !report.pass,
            })
        }
        VerifyCommand::Bijection { map, param, max_n } => {
            check_ceiling(*max_n, GENERIC_CEILING, force)?;
            let mut rows = Vec::new();
            let mut json_rows = Vec::new();
            let mut all_pass = true;
            let mut failures: Vec<String> = Vec::new();
            for n in 0..=*max_n {
                let check = match map {
                    BijectionKind::G => check_g_exhaustive(*param, n)?,
                    BijectionKind::H => check_h_exhaustive(*param, n)?,
                };
                all_pass &= check.pass;
                failures.extend(check.failures.iter().cloned());
                rows.push(vec![
                    n.to_string(),
                    check.domain_size.to_string(),
                    check.pass.to_string(),
                ]);
                json_rows.push(json!({
                    "n": n,
                    "domain_size": check.domain_size,
                    "pass": check.pass,
                    "failures": check.failures,
                }));
            }
            let name = match map {
                BijectionKind::G => "g",
                BijectionKind::H => "h",
            };
            let mut text = aligned_table(&["n", "domain_size", "pass"], &rows);
            for f in failures.iter().take(8) {
                text.push_str(&format!("\nfailure: {f}"));
            }
            text.push_str(&format!(
                "\noverall: {}",
                if all_pass { "PASS" } else { "FAIL" }
            ));
            Ok(CmdOutput {
                json: json!({"map": name, "param": param, "rows": json_rows, "pass": all_pass}),
                csv_header: vec!["n".into(), "domain_size".into(), "pass".into()],
                csv_rows: rows,
                text,
                failed: !all_pass,
            })
        }
    }
}

fn run_report(
    cmd: &ReportCommand,
    cache: Option<&CountCache>,
    force: bool,
) -> Result<CmdOutput, Error> {
    match cmd {
        ReportCommand::Growth { k, max_n } => {
            let set = PatternSet::a_family(*k)?;
            check_ceiling(*max_n, ceiling_for(&[&set]), force)?;
            let report = growth_report(*k, *max_n, cache)?;
            let rows: Vec<Vec<String>> = report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.count.to_string(),
                        r.nth_root.clone(),
                        r.ratio.clone(),
                    ]
                })
                .collect();
            let json_rows: Vec<Value> = report
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "count": r.count.to_string(),
                        "nth_root": r.nth_root,
                        "ratio": r.ratio,
                    })
                })
                .collect();
            let mut text = aligned_table(&["n", "count", "nth_root", "ratio"], &rows);
            text.push_str(&format!(
                "\nexponential-order target (k-2)^2+1 = {}\nfitted window constants: c_hat = {}, C_hat = {} (finite-range diagnostics only)",
                report.target, report.c_hat, report.c_hat_upper
            ));
            Ok(CmdOutput::report(
                json!({
                    "k": k,
                    "target": report.target,
                    "rows": json_rows,
                    "c_hat": report.c_hat,
                    "c_hat_upper": report.c_hat_upper,
                }),
                &["n", "count", "nth_root", "ratio"],
                rows,
                text,
            ))
        }
        ReportCommand::Rlmax { left, right, n } => {
            let s = PatternSet::parse(left)?;
            let t = PatternSet::parse(right)?;
            check_ceiling(*n, GENERIC_CEILING, force)?;
            let report = rlmax_profile_compare(&s, &t, *n);
            let configs: BTreeSet<&RlMaxConfig> = report
                .left_profile
                .keys()
                .chain(report.right_profile.keys())
                .collect();
            let config_str = |c: &RlMaxConfig| {
                c.iter()
                    .map(|(pos, val)| format!("({pos},{val})"))
                    .collect::<Vec<_>>()
                    .join(";")
            };
            let rows: Vec<Vec<String>> = configs
                .iter()
                .map(|c| {
                    vec![
                        config_str(c),
                        report.left_profile.get(*c).copied().unwrap_or(0).to_string(),
                        report.right_profile.get(*c).copied().unwrap_or(0).to_string(),
                    ]
                })
                .collect();
            let json_rows: Vec<Value> = rows
                .iter()
                .map(|r| json!({"config": r[0], "left_count": r[1], "right_count": r[2]}))
                .collect();
            let mut text = aligned_table(
                &["config", report.left.as_str(), report.right.as_str()],
                &rows,
            );
            text.push_str(&format!(
                "\nprofiles {} at n = {}",
                if report.equal { "coincide" } else { "differ" },
                n
            ));
            Ok(CmdOutput::report(
                json!({
                    "left": report.left,
                    "right": report.right,
                    "n": n,
                    "rows": json_rows,
                    "equal": report.equal,
                }),
                &["config", "left_count", "right_count"],
                rows,
                text,
            ))
        }
    }
}

fn emit(format: Format, out: &CmdOutput) {
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&out.json).expect("json output serializes")
            );
        }
        Format::Csv => {
            let mut wtr = csv::Writer::from_writer(std::io::stdout());
            wtr.write_record(&out.csv_header).expect("csv header");
            for row in &out.csv_rows {
                wtr.write_record(row).expect("csv row");
            }
            wtr.flush().expect("csv flush");
        }
        Format::Text => println!("{}", out.text),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // Best effort; a second initialization in-process is harmless.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run(&cli) {
        Ok(out) => {
            emit(cli.format, &out);
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e @ Error::CeilingExceeded { .. }) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
