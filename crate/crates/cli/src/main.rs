//! groupoidrep: exact computation with finite groupoid representations.
//!
//! Exit codes: 0 when all requested checks pass, 1 on a check failure,
//! 2 on parse or I/O errors. `GROUPOIDREP_THREADS` caps internal
//! parallelism; output order is canonical and deterministic either way.

mod checks;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use checks::{CheckResult, Status};
use groupoidrep::bisections;
use groupoidrep::selfmaps;
use groupoidrep::semilinear::SemiLinearMap;
use groupoidrep::textio::{self, NamedGroupoid};
use groupoidrep::transfer::{
    induce_bis_rep, induce_sg_rep, recover_from_sg_rep, recover_groupoid_rep, GroupoidRep,
};
use groupoidrep::{Error, DEFAULT_SELFMAP_SPACE_BOUND};

#[derive(Parser)]
#[command(name = "groupoidrep")]
#[command(about = "Finite groupoids, their bisection and self-map groups, and exact representation transfer")]
struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Bound on the raw S_G(α) search space before enumeration refuses
    #[arg(long, global = true, default_value_t = DEFAULT_SELFMAP_SPACE_BOUND)]
    max_selfmap_space: u128,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Bis,
    Sg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Check the groupoid axioms (and representation axioms when given)
    Validate {
        groupoid: PathBuf,
        representation: Option<PathBuf>,
    },
    /// Sizes and structure: |M|, |G|, |Bis|, |S_G(α)|, enough-bisections
    Info { groupoid: PathBuf },
    /// Enumerate the bisection group and print its multiplication table
    Bisections { groupoid: PathBuf },
    /// Enumerate the self-map unit group and print its multiplication table
    Selfmaps { groupoid: PathBuf },
    /// Induce the Bis(G)- or S_G(α)-representation table from a groupoid representation
    Induce {
        #[arg(long, value_enum)]
        side: Side,
        groupoid: PathBuf,
        representation: PathBuf,
    },
    /// Induce, recover back, verify equality, and emit the recovered .grep
    Recover {
        #[arg(long, value_enum)]
        side: Side,
        groupoid: PathBuf,
        representation: PathBuf,
        /// Write the recovered representation here instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the transfer-module invariants for a representation
    Roundtrip {
        groupoid: PathBuf,
        representation: PathBuf,
    },
    /// Run the entire verification suite
    Check {
        groupoid: PathBuf,
        representation: Option<PathBuf>,
    },
    /// Export the groupoid (or representation) as JSON or DOT
    Export {
        #[arg(long, value_enum)]
        format: Format,
        groupoid: PathBuf,
        representation: Option<PathBuf>,
    },
}

/// Errors that terminate with exit code 2: unreadable input or text that
/// does not parse. Law violations are handled per subcommand instead.
fn read_file(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

enum Loaded {
    Ok(NamedGroupoid),
    /// Parsed but violates the groupoid laws; carries the report.
    Invalid(groupoidrep::ValidationReport),
}

fn load_groupoid(path: &Path) -> Result<Loaded, String> {
    let text = read_file(path)?;
    match textio::parse_groupoid(&text) {
        Ok(named) => Ok(Loaded::Ok(named)),
        Err(Error::InvalidGroupoid(report)) => Ok(Loaded::Invalid(report)),
        Err(e) => Err(format!("{}: {e}", path.display())),
    }
}

fn load_valid_groupoid(path: &Path) -> Result<NamedGroupoid, String> {
    match load_groupoid(path)? {
        Loaded::Ok(named) => Ok(named),
        Loaded::Invalid(report) => Err(format!(
            "{}: groupoid violates its axioms: {}",
            path.display(),
            report.summary()
        )),
    }
}

enum LoadedRep {
    Ok(GroupoidRep),
    Invalid(groupoidrep::ValidationReport),
}

fn load_rep(path: &Path, named: &NamedGroupoid) -> Result<LoadedRep, String> {
    let text = read_file(path)?;
    match textio::parse_rep(&text, named) {
        Ok(rep) => Ok(LoadedRep::Ok(rep)),
        Err(Error::InvalidRep(report)) => Ok(LoadedRep::Invalid(report)),
        Err(e) => Err(format!("{}: {e}", path.display())),
    }
}

fn load_valid_rep(path: &Path, named: &NamedGroupoid) -> Result<GroupoidRep, String> {
    match load_rep(path, named)? {
        LoadedRep::Ok(rep) => Ok(rep),
        LoadedRep::Invalid(report) => Err(format!(
            "{}: representation violates its axioms: {}",
            path.display(),
            report.summary()
        )),
    }
}

fn print_results(results: &[CheckResult], json: bool, command: &str) -> bool {
    let ok = results.iter().all(|r| r.status != Status::Fail);
    if json {
        let doc = serde_json::json!({
            "command": command,
            "ok": ok,
            "checks": results.iter().map(|r| serde_json::json!({
                "name": r.name,
                "status": match r.status {
                    Status::Pass => "pass",
                    Status::Fail => "fail",
                    Status::Skip => "skip",
                },
                "detail": r.detail,
            })).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        for r in results {
            let tag = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            if r.detail.is_empty() {
                println!("{tag} {}", r.name);
            } else {
                println!("{tag} {} ({})", r.name, r.detail);
            }
        }
        let failed = results.iter().filter(|r| r.status == Status::Fail).count();
        println!(
            "{} checks, {} failed",
            results.len(),
            failed
        );
    }
    ok
}

/// Serialises one semi-linear map as JSON: the base bijection and the
/// per-point matrices of its carrier.
fn semilinear_json(mu: &SemiLinearMap, point_names: &[String]) -> serde_json::Value {
    let carrier = mu.carrier();
    serde_json::json!({
        "base": carrier.base.iter().map(|&x| point_names[x].clone()).collect::<Vec<_>>(),
        "maps": carrier.maps.iter().enumerate().map(|(x, m)| serde_json::json!({
            "point": point_names[x],
            "rows": m.rows(),
            "cols": m.cols(),
            "entries": m.entries().map(ToString::to_string).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let bound = cli.max_selfmap_space;
    match cli.command {
        Command::Validate {
            groupoid,
            representation,
        } => {
            let mut reports = Vec::new();
            let named = match load_groupoid(&groupoid)? {
                Loaded::Ok(named) => {
                    reports.push(("groupoid", groupoidrep::ValidationReport::new()));
                    Some(named)
                }
                Loaded::Invalid(report) => {
                    reports.push(("groupoid", report));
                    None
                }
            };
            if let Some(rep_path) = representation {
                match named {
                    None => return Err("cannot validate a representation against an invalid groupoid".into()),
                    Some(ref named) => match load_rep(&rep_path, named)? {
                        LoadedRep::Ok(_) => reports.push(("representation", groupoidrep::ValidationReport::new())),
                        LoadedRep::Invalid(report) => reports.push(("representation", report)),
                    },
                }
            }
            let ok = reports.iter().all(|(_, r)| r.is_empty());
            if cli.json {
                let doc = serde_json::json!({
                    "command": "validate",
                    "ok": ok,
                    "reports": reports.iter().map(|(what, r)| serde_json::json!({
                        "subject": what,
                        "report": serde_json::from_str::<serde_json::Value>(&textio::export_report_json(r)).unwrap(),
                    })).collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                for (what, report) in &reports {
                    println!("{what}: {report}");
                }
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }

        Command::Info { groupoid } => {
            let named = load_valid_groupoid(&groupoid)?;
            let gpd = &named.groupoid;
            let witnesses = bisections::witnesses(gpd);
            let n_bis = witnesses.bisections.len();
            let space = selfmaps::search_space(gpd);
            let units = selfmaps::enumerate_units(gpd, bound);
            let units_len = units.as_ref().ok().map(|u| u.len());
            if cli.json {
                let doc = serde_json::json!({
                    "command": "info",
                    "objects": gpd.n_objects(),
                    "arrows": gpd.n_arrows(),
                    "bisections": n_bis,
                    "selfmap_units": units_len,
                    "selfmap_search_space": space.to_string(),
                    "enough_bisections": witnesses.has_enough(),
                });
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                println!("objects:            {}", gpd.n_objects());
                println!("arrows:             {}", gpd.n_arrows());
                println!("|Bis(G)|:           {n_bis}");
                match units_len {
                    Some(n) => println!("|S_G(alpha)|:       {n}"),
                    None => println!("|S_G(alpha)|:       intractable (search space {space} > bound {bound})"),
                }
                println!("enough bisections:  {}", witnesses.has_enough());
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Bisections { groupoid } => {
            let named = load_valid_groupoid(&groupoid)?;
            let gpd = &named.groupoid;
            let all = bisections::enumerate(gpd);
            let name_of = |s: &bisections::Bisection| {
                s.table()
                    .iter()
                    .map(|&a| named.arr_names[a.0].clone())
                    .collect::<Vec<_>>()
            };
            let table: Vec<Vec<usize>> = all
                .iter()
                .map(|s1| {
                    all.iter()
                        .map(|s2| {
                            let prod = bisections::multiply(gpd, s1, s2);
                            all.binary_search(&prod).expect("group is closed")
                        })
                        .collect()
                })
                .collect();
            if cli.json {
                let doc = serde_json::json!({
                    "command": "bisections",
                    "elements": all.iter().map(name_of).collect::<Vec<_>>(),
                    "table": table,
                });
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                for (i, s) in all.iter().enumerate() {
                    println!("b{i}: ({})", name_of(s).join(", "));
                }
                println!("multiplication table (row ⋆ column):");
                for row in &table {
                    println!(
                        "  {}",
                        row.iter().map(|i| format!("b{i}")).collect::<Vec<_>>().join(" ")
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Selfmaps { groupoid } => {
            let named = load_valid_groupoid(&groupoid)?;
            let gpd = &named.groupoid;
            let units = match selfmaps::enumerate_units(gpd, bound) {
                Ok(u) => u,
                Err(Error::TooLarge { space, bound }) => {
                    eprintln!("self-map search space {space} exceeds the bound {bound}; raise --max-selfmap-space");
                    return Ok(ExitCode::FAILURE);
                }
                Err(e) => return Err(e.to_string()),
            };
            let elements = units.elements();
            let name_of = |f: &selfmaps::SelfMap| {
                f.table()
                    .iter()
                    .map(|&a| named.arr_names[a.0].clone())
                    .collect::<Vec<_>>()
            };
            let table: Vec<Vec<usize>> = elements
                .iter()
                .map(|f| {
                    elements
                        .iter()
                        .map(|g| units.index_of(&selfmaps::star(gpd, f, g)).expect("group is closed"))
                        .collect()
                })
                .collect();
            if cli.json {
                let doc = serde_json::json!({
                    "command": "selfmaps",
                    "elements": elements.iter().map(name_of).collect::<Vec<_>>(),
                    "table": table,
                });
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                for (i, f) in elements.iter().enumerate() {
                    println!("f{i}: ({})", name_of(f).join(", "));
                }
                println!("multiplication table (row ⋆ column):");
                for row in &table {
                    println!(
                        "  {}",
                        row.iter().map(|i| format!("f{i}")).collect::<Vec<_>>().join(" ")
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Induce {
            side,
            groupoid,
            representation,
        } => {
            let named = load_valid_groupoid(&groupoid)?;
            let rep = load_valid_rep(&representation, &named)?;
            let doc = match side {
                Side::Bis => {
                    let table = induce_bis_rep(&named.groupoid, &rep).map_err(|e| e.to_string())?;
                    serde_json::json!({
                        "command": "induce",
                        "side": "bis",
                        "elements": table.entries().iter().map(|(s, mu)| serde_json::json!({
                            "bisection": s.table().iter().map(|&a| named.arr_names[a.0].clone()).collect::<Vec<_>>(),
                            "map": semilinear_json(mu, &named.obj_names),
                        })).collect::<Vec<_>>(),
                    })
                }
                Side::Sg => {
                    let table = induce_sg_rep(&named.groupoid, &rep, bound).map_err(|e| e.to_string())?;
                    serde_json::json!({
                        "command": "induce",
                        "side": "sg",
                        "elements": table.entries().iter().map(|(f, mu)| serde_json::json!({
                            "selfmap": f.table().iter().map(|&a| named.arr_names[a.0].clone()).collect::<Vec<_>>(),
                            "map": semilinear_json(mu, &named.arr_names),
                        })).collect::<Vec<_>>(),
                    })
                }
            };
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            Ok(ExitCode::SUCCESS)
        }

        Command::Recover {
            side,
            groupoid,
            representation,
            output,
        } => {
            let named = load_valid_groupoid(&groupoid)?;
            let rep = load_valid_rep(&representation, &named)?;
            let gpd = &named.groupoid;
            let recovered = match side {
                Side::Bis => {
                    let table = induce_bis_rep(gpd, &rep).map_err(|e| e.to_string())?;
                    recover_groupoid_rep(gpd, &table).map_err(|e| e.to_string())?
                }
                Side::Sg => {
                    let table = induce_sg_rep(gpd, &rep, bound).map_err(|e| e.to_string())?;
                    recover_from_sg_rep(gpd, &table, &rep.bundle)
                        .map_err(|e| e.to_string())?
                        .rep
                }
            };
            if recovered != rep {
                eprintln!("recovered representation differs from the input");
                return Ok(ExitCode::FAILURE);
            }
            let text = if cli.json {
                textio::export_rep_json(&named, &recovered)
            } else {
                textio::export_rep_grep(&named, &recovered)
            };
            match output {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Roundtrip {
            groupoid,
            representation,
        } => {
            let named = load_valid_groupoid(&groupoid)?;
            let rep = load_valid_rep(&representation, &named)?;
            let results = checks::transfer_checks(&named, &rep, bound);
            let ok = print_results(&results, cli.json, "roundtrip");
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }

        Command::Check {
            groupoid,
            representation,
        } => {
            let mut results = Vec::new();
            let named = match load_groupoid(&groupoid)? {
                Loaded::Ok(named) => named,
                Loaded::Invalid(report) => {
                    results.push(CheckResult {
                        name: "groupoid axioms".to_string(),
                        status: Status::Fail,
                        detail: report.summary(),
                    });
                    let ok = print_results(&results, cli.json, "check");
                    return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE });
                }
            };
            results.extend(checks::groupoid_checks(&named, bound));
            if let Some(rep_path) = representation {
                match load_rep(&rep_path, &named)? {
                    LoadedRep::Ok(rep) => results.extend(checks::transfer_checks(&named, &rep, bound)),
                    LoadedRep::Invalid(report) => results.push(CheckResult {
                        name: "representation axioms".to_string(),
                        status: Status::Fail,
                        detail: report.summary(),
                    }),
                }
            }
            let ok = print_results(&results, cli.json, "check");
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }

        Command::Export {
            format,
            groupoid,
            representation,
        } => {
            let named = load_valid_groupoid(&groupoid)?;
            let rep = match representation {
                Some(path) => Some(load_valid_rep(&path, &named)?),
                None => None,
            };
            let text = match (format, &rep) {
                (Format::Json, None) => textio::export_groupoid_json(&named),
                (Format::Json, Some(rep)) => textio::export_rep_json(&named, rep),
                (Format::Dot, rep) => textio::export_dot(&named, rep.as_ref()),
            };
            println!("{text}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
