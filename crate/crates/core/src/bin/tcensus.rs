use clap::{Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use tcensus::census::{run_census, slope_report};
use tcensus::torsion::MAZUR_GROUPS;
use tcensus::families::{all_families, enumerate_family, fit_exponent, z3_g_sign};
use tcensus::regions::{c_constant, empirical_constant, equation_count, sieved_count, ConstantsReport};
use tcensus::torsion::TorsionGroup;

/// Counts elliptic curves y^2 = x^3 + Ax + B over Q by naive height
/// max(|A|^3, B^2) and torsion subgroup, by direct census, sieved
/// lattice-point counting, and universal-family specialization.
#[derive(Parser)]
#[command(name = "tcensus", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exhaustive census of minimal curves with exact torsion tallies
    Census {
        /// Height cutoff X (forms: 1000000, 1e6, 10^6)
        #[arg(long, value_parser = parse_height)]
        max_height: u128,
        /// Comma-separated intermediate cutoffs (default: max-height only)
        #[arg(long, value_delimiter = ',', value_parser = parse_height)]
        checkpoints: Vec<u128>,
        /// Worker thread count (default: all cores)
        #[arg(long)]
        threads: Option<usize>,
        /// Write the table as CSV to this path
        #[arg(long, conflicts_with = "json")]
        csv: Option<PathBuf>,
        /// Write the table as JSON to this path
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Lattice counts and Mobius-sieved minimal-equation counts for R_i(X)
    Regions {
        /// Region index: 1 (all curves), 2 (2-torsion), 3 (3-torsion)
        #[arg(long)]
        i: u8,
        #[arg(long, value_parser = parse_height)]
        max_height: u128,
        #[arg(long)]
        json: bool,
    },
    /// Every derived constant: roots, integrals, areas, zetas, c1/c2/c3
    Constants {
        #[arg(long)]
        json: bool,
    },
    /// Family enumeration counts and fitted growth exponent for one group
    Families {
        /// Torsion group label, e.g. Z/5 or Z/2xZ/4
        #[arg(long)]
        group: String,
        #[arg(long, value_parser = parse_height)]
        max_height: u128,
        /// Extra family data file (JSON; defaults to the bundled one)
        #[arg(long)]
        family_file: Option<PathBuf>,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Run the acceptance suite and emit a machine-readable report
    Verify {
        /// Write the JSON report here
        #[arg(long)]
        report: Option<PathBuf>,
        /// Scale cap; criteria needing more are skipped (default: full suite)
        #[arg(long, value_parser = parse_height, default_value = "1e15")]
        max_height: u128,
    },
}

/// Accepts "1000000", "1e6", and "10^6" (integer mantissa/exponent only),
/// parsed exactly in u128.
fn parse_height(s: &str) -> Result<u128, String> {
    let err = || format!("bad height {s:?} (use e.g. 1000000, 1e6, or 10^6)");
    let pow = |base: u128, exp: u32| -> Result<u128, String> {
        base.checked_pow(exp).ok_or_else(err)
    };
    if let Some((m, e)) = s.split_once(['e', 'E']) {
        let m: u128 = m.parse().map_err(|_| err())?;
        let e: u32 = e.parse().map_err(|_| err())?;
        m.checked_mul(pow(10, e)?).ok_or_else(err)
    } else if let Some((b, e)) = s.split_once('^') {
        let b: u128 = b.parse().map_err(|_| err())?;
        let e: u32 = e.parse().map_err(|_| err())?;
        pow(b, e)
    } else {
        s.parse().map_err(|_| err())
    }
}

/// Numbers that can exceed 2^53 go into JSON as decimal strings.
fn json_u128(x: u128) -> serde_json::Value {
    if x < (1u128 << 53) {
        serde_json::json!(x as u64)
    } else {
        serde_json::json!(x.to_string())
    }
}

fn write_or_stdout(path: Option<&PathBuf>, content: &str) -> tcensus::Result<()> {
    match path {
        Some(p) => {
            std::fs::write(p, content)?;
            println!("wrote {}", p.display());
        }
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

fn cmd_census(
    max_height: u128,
    checkpoints: &[u128],
    csv: Option<&PathBuf>,
    json: Option<&PathBuf>,
) -> tcensus::Result<()> {
    let table = run_census(max_height, checkpoints)?;
    if let Some(path) = json {
        let (exact, contains) = (&table.exact, &table.contains);
        let rows: Vec<serde_json::Value> = table
            .checkpoints
            .iter()
            .enumerate()
            .flat_map(|(k, &x)| {
                MAZUR_GROUPS.iter().enumerate().map(move |(gi, g)| {
                    serde_json::json!({
                        "x": json_u128(x),
                        "group": g.to_string(),
                        "exact_count": exact[k][gi],
                        "contains_count": contains[k][gi],
                    })
                })
            })
            .collect();
        let doc = serde_json::json!({
            "rows": rows,
            "exemplars": table.exemplars,
            "slopes": slope_report(&table),
        });
        write_or_stdout(Some(path), &format!("{}\n", serde_json::to_string_pretty(&doc)?))?;
        return Ok(());
    }
    let mut out = String::from("X,group,exact_count,contains_count\n");
    for (k, &x) in table.checkpoints.iter().enumerate() {
        for (gi, g) in MAZUR_GROUPS.iter().enumerate() {
            out.push_str(&format!(
                "{x},{g},{},{}\n",
                table.exact[k][gi], table.contains[k][gi]
            ));
        }
    }
    write_or_stdout(csv, &out)?;
    if csv.is_some() {
        // brief console summary alongside the file
        let last = table.checkpoints.len() - 1;
        println!(
            "total minimal curves below {}: {}",
            table.checkpoints[last],
            table.total(last)
        );
    }
    Ok(())
}

fn cmd_regions(i: u8, max_height: u128, json: bool) -> tcensus::Result<()> {
    if !(1..=3).contains(&i) {
        return Err(tcensus::Error::InvalidInput("region index must be 1, 2, or 3".into()));
    }
    let (lattice, distinct) = equation_count(i, max_height);
    let sieved = sieved_count(i, max_height)?;
    let empirical = empirical_constant(i, max_height)?;
    let formula = c_constant(i);
    if json {
        let doc = serde_json::json!({
            "lattice": json_u128(lattice),
            "distinct": json_u128(distinct),
            "sieved": json_u128(sieved),
            "empirical_constant": empirical,
            "c_formula": formula,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!("region R_{i}(X), X = {max_height}");
        println!("  lattice points:      {lattice}");
        println!("  distinct equations:  {distinct}");
        println!("  sieved (minimal):    {sieved}");
        println!("  empirical constant:  {empirical:.6}");
        println!("  formula constant:    {formula:.6}");
    }
    Ok(())
}

fn cmd_constants(json: bool) -> tcensus::Result<()> {
    let mut rep = ConstantsReport::compute();
    rep.z3_g_sign = z3_g_sign()?;
    if json {
        println!("{}", serde_json::to_string_pretty(&rep)?);
        return Ok(());
    }
    println!("alpha+ = {:.12}   alpha- = {:.12}", rep.alpha_plus, rep.alpha_minus);
    for (i, a) in rep.alpha.iter().enumerate() {
        println!("alpha_{i} = {a:.12}");
    }
    for (i, b) in rep.beta.iter().enumerate() {
        println!("beta_{i}  = {b:.12}");
    }
    println!("I+ = {:.12}   I- = {:.12}", rep.i_plus, rep.i_minus);
    println!(
        "area1 = {:.12}   area2 = {:.12}   area3+ = {:.12}",
        rep.area1, rep.area2, rep.area3_plus
    );
    println!(
        "zeta(4) = {:.12}  zeta(6) = {:.12}  zeta(10) = {:.12}",
        rep.zeta4, rep.zeta6, rep.zeta10
    );
    println!("c1 = {:.10}   (printed {:.4})", rep.c1, rep.c1_printed);
    println!(
        "c2 = {:.10}   (printed {:.4})   [{}]",
        rep.c2_formula, rep.c2_printed, rep.c2_flag
    );
    println!(
        "c3 = {:.10}   (printed {:.4})   [{}]",
        rep.c3_formula, rep.c3_printed, rep.c3_flag
    );
    println!("Z/3 family quadratic: {}", rep.z3_g_sign);
    for n in &rep.notes {
        println!("note: {n}");
    }
    Ok(())
}

fn cmd_families(
    group: &str,
    max_height: u128,
    family_file: Option<&PathBuf>,
    json: bool,
    csv: bool,
) -> tcensus::Result<()> {
    let g: TorsionGroup = group.parse()?;
    let fams = all_families(family_file.map(|p| p.as_path()))?;
    let Some(f) = fams.iter().find(|f| f.group == g) else {
        return Err(tcensus::Error::InvalidInput(format!(
            "no family for group {g} (available: {})",
            fams.iter().map(|f| f.group.to_string()).collect::<Vec<_>>().join(", ")
        )));
    };
    // geometric checkpoints below X for the exponent fit
    let mut xs = vec![max_height];
    while *xs.last().unwrap() > 4096 && xs.len() < 6 {
        xs.push(xs.last().unwrap() >> 12);
    }
    xs.reverse();
    let counts: Vec<(u128, u128)> = xs
        .iter()
        .map(|&x| Ok((x, enumerate_family(f, x)?.len() as u128)))
        .collect::<tcensus::Result<_>>()?;
    let fitted = fit_exponent(&counts).ok();
    let reference = f.exponent();
    if json {
        let doc = serde_json::json!({
            "group": g.to_string(),
            "max_height": json_u128(max_height),
            "counts": counts
                .iter()
                .map(|&(x, n)| serde_json::json!({"x": json_u128(x), "count": json_u128(n)}))
                .collect::<Vec<_>>(),
            "fitted_exponent": fitted,
            "reference_exponent": reference,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else if csv {
        println!("X,count");
        for &(x, n) in &counts {
            println!("{x},{n}");
        }
    } else {
        println!("family {g}: degrees (r, s) = ({}, {}), (n, m) = ({}, {})", f.r, f.s, f.n, f.m);
        for &(x, n) in &counts {
            println!("  X = {x:>20}: {n} curves");
        }
        match fitted {
            Some(s) => println!("fitted exponent {s:.4} vs reference 1/d(G) = {reference:.4}"),
            None => println!("not enough nonzero counts to fit an exponent"),
        }
    }
    Ok(())
}

fn cmd_verify(report: Option<&PathBuf>, max_height: u128) -> tcensus::Result<bool> {
    let rep = tcensus::verify::run(max_height)?;
    for r in &rep.results {
        let status = match r.status {
            tcensus::verify::Status::Pass => "pass",
            tcensus::verify::Status::Fail => "FAIL",
            tcensus::verify::Status::Finding => "finding",
        };
        println!("{:<4} {:<8} {}", r.criterion_id, status, r.detail);
    }
    if let Some(path) = report {
        std::fs::write(path, format!("{}\n", serde_json::to_string_pretty(&rep.results)?))?;
        println!("report written to {}", path.display());
    }
    Ok(rep.ok())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = || -> tcensus::Result<bool> {
        match &cli.cmd {
            Cmd::Census {
                max_height,
                checkpoints,
                threads,
                csv,
                json,
            } => {
                if let Some(k) = threads {
                    rayon::ThreadPoolBuilder::new()
                        .num_threads(*k)
                        .build_global()
                        .map_err(|e| tcensus::Error::InvalidInput(e.to_string()))?;
                }
                cmd_census(*max_height, checkpoints, csv.as_ref(), json.as_ref())?;
                Ok(true)
            }
            Cmd::Regions { i, max_height, json } => {
                cmd_regions(*i, *max_height, *json)?;
                Ok(true)
            }
            Cmd::Constants { json } => {
                cmd_constants(*json)?;
                Ok(true)
            }
            Cmd::Families {
                group,
                max_height,
                family_file,
                json,
                csv,
            } => {
                cmd_families(group, *max_height, family_file.as_ref(), *json, *csv)?;
                Ok(true)
            }
            Cmd::Verify { report, max_height } => cmd_verify(report.as_ref(), *max_height),
        }
    };
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
