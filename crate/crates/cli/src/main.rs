use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::json;

use etalab_core::charops::decompose_product;
use etalab_core::chartab::{character_table, CharTable, TableCache};
use etalab_core::clifford::{
    all_chains, build_chain, classify_chain, ChainContext, CharacterChain,
};
use etalab_core::constructions::{
    cyclic, dihedral, extraspecial_exp_p, prop5_witness, quaternion, wreath_cp,
};
use etalab_core::perm::io::{parse_group_file, write_group_file};
use etalab_core::perm::PermGroup;
use etalab_core::verify::{resolve_catalog, run_check, Check, VerifyOptions, DEFAULT_MAX_ORDER};
use etalab_core::Error;

#[derive(Parser)]
#[command(
    name = "etalab",
    version,
    about = "Character tables and constituent counts of finite p-groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the character table of a group.
    Table {
        file: PathBuf,
        /// Also write the table as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Count the distinct irreducible constituents of χψ (ψ defaults to χ̄).
    Eta {
        file: PathBuf,
        #[arg(long)]
        chi: usize,
        #[arg(long)]
        psi: Option<usize>,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Show the constituent chain of χ along a chief series and its ledger.
    Chain {
        file: PathBuf,
        #[arg(long)]
        chi: usize,
        /// Enumerate every chain (groups of order at most 64).
        #[arg(long)]
        all_chains: bool,
    },
    /// Write a constructed group in group-file format.
    Build {
        #[command(subcommand)]
        what: BuildKind,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Run a verification sweep over a catalog.
    Verify {
        #[arg(value_parser = ["theorem-a", "theorem-b", "corollary-a", "ledger", "prop5"])]
        check: String,
        /// "default", a directory of .grp files, or a single group file.
        #[arg(long, default_value = "default")]
        catalog: String,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Leave elapsed_ms null so reports are reproducible byte for byte.
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Subcommand)]
enum BuildKind {
    Cyclic { m: usize },
    Dihedral { m: usize },
    Quaternion,
    Extraspecial { p: u64 },
    Wreath { file: PathBuf, p: usize },
    Witness { p: u64, n: u32 },
}

enum Failure {
    Violation,
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::InvalidPermutation(_)
            | Error::InvalidArgument(_)
            | Error::Io(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Table {
            file,
            json,
            cache_dir,
        } => cmd_table(&file, json.as_deref(), cache_dir),
        Command::Eta {
            file,
            chi,
            psi,
            cache_dir,
        } => cmd_eta(&file, chi, psi, cache_dir),
        Command::Chain {
            file,
            chi,
            all_chains,
        } => cmd_chain(&file, chi, all_chains),
        Command::Build { what, output } => cmd_build(what, output.as_deref()),
        Command::Verify {
            check,
            catalog,
            max_order,
            json,
            cache_dir,
            no_timing,
        } => cmd_verify(
            &check,
            &catalog,
            max_order,
            json.as_deref(),
            cache_dir,
            no_timing,
        ),
    }
}

fn read_group(path: &Path) -> CliResult<Arc<PermGroup>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_group_file(&text)?.build()?)
}

fn load_table(group: &Arc<PermGroup>, cache_dir: Option<PathBuf>) -> CliResult<CharTable> {
    Ok(match cache_dir {
        Some(dir) => TableCache::new(dir).get_or_compute(group)?,
        None => character_table(group)?,
    })
}

fn check_index(table: &CharTable, i: usize, flag: &str) -> CliResult<()> {
    if i < table.len() {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "--{flag} {i} out of range: the group has {} irreducible characters",
            table.len()
        )))
    }
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn cmd_table(file: &Path, json: Option<&Path>, cache_dir: Option<PathBuf>) -> CliResult<()> {
    let group = read_group(file)?;
    let table = load_table(&group, cache_dir)?;
    let classes = group.classes();
    println!(
        "order {}  classes {}  exponent {}",
        group.order(),
        classes.len(),
        group.exponent()
    );
    for (k, rep) in classes.representatives().iter().enumerate() {
        println!(
            "class {k}: size {} order {} rep {rep}",
            classes.size(k),
            classes.rep_orders()[k]
        );
    }
    for (i, chi) in table.iter().enumerate() {
        let row: Vec<String> = chi.values().iter().map(|v| v.to_string()).collect();
        println!("X.{i}: {}", row.join("  "));
    }
    if let Some(out) = json {
        let doc = json!({
            "order": group.order(),
            "exponent": group.exponent(),
            "classes": {
                "sizes": classes.sizes(),
                "representatives": classes.representatives().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            },
            "degrees": table.degrees(),
            "characters": table
                .iter()
                .map(|chi| chi.values().iter().map(|v| v.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        });
        write_file(out, &serde_json::to_string_pretty(&doc).expect("json"))?;
    }
    Ok(())
}

fn cmd_eta(
    file: &Path,
    chi: usize,
    psi: Option<usize>,
    cache_dir: Option<PathBuf>,
) -> CliResult<()> {
    let group = read_group(file)?;
    let table = load_table(&group, cache_dir)?;
    check_index(&table, chi, "chi")?;
    let psi = match psi {
        Some(j) => {
            check_index(&table, j, "psi")?;
            j
        }
        None => table.conjugate_index(chi),
    };
    let d = decompose_product(&table, chi, psi)?;
    println!("eta(X.{chi}, X.{psi}) = {}", d.eta);
    for c in &d.constituents {
        println!(
            "  X.{}  multiplicity {}  degree {}",
            c.index, c.multiplicity, c.degree
        );
    }
    Ok(())
}

fn print_chain(ctx: &ChainContext, chain: &CharacterChain) -> CliResult<()> {
    let nus: Vec<String> = chain.indices.iter().map(|i| i.to_string()).collect();
    println!("chain (nu_i as table indices of N_i): {}", nus.join(" < "));
    let ledger = classify_chain(ctx, chain)?;
    println!("  i  |N_i|  nu_i(1)  stable  case        m  s  r  |G_nu|");
    for e in &ledger.entries {
        let nu = chain.nu(ctx, e.index);
        println!(
            "  {:<2} {:<6} {:<8} {:<7} {:<11} {:<2} {:<2} {:<2} {}",
            e.index,
            ctx.series()[e.index].order(),
            nu.degree().unwrap_or(0),
            e.stable,
            format!("{:?}", e.case).to_lowercase(),
            e.m,
            e.s,
            e.r,
            e.stabilizer_order
        );
    }
    Ok(())
}

fn cmd_chain(file: &Path, chi: usize, all: bool) -> CliResult<()> {
    let group = read_group(file)?;
    let ctx = ChainContext::new(&group)?;
    check_index(ctx.top_table(), chi, "chi")?;
    let chains = if all {
        all_chains(&ctx, chi)?
    } else {
        vec![build_chain(&ctx, chi)?]
    };
    for chain in &chains {
        print_chain(&ctx, chain)?;
    }
    Ok(())
}

fn cmd_build(what: BuildKind, output: Option<&Path>) -> CliResult<()> {
    let (group, comment, sidecar) = match what {
        BuildKind::Cyclic { m } => (cyclic(m)?, format!("cyclic group of order {m}"), None),
        BuildKind::Dihedral { m } => (
            dihedral(m)?,
            format!("dihedral group of order {}", 2 * m),
            None,
        ),
        BuildKind::Quaternion => (
            quaternion()?,
            "quaternion group of order 8".to_string(),
            None,
        ),
        BuildKind::Extraspecial { p } => {
            let g = extraspecial_exp_p(p, 1)?;
            let desc = format!("extraspecial group of order {}, exponent {p}", g.order());
            (g, desc, None)
        }
        BuildKind::Wreath { file, p } => {
            let a = read_group(&file)?;
            let w = wreath_cp(&a, p)?;
            let desc = format!(
                "wreath product of {} with C{p}, order {}",
                file.display(),
                w.group.order()
            );
            (w.group, desc, None)
        }
        BuildKind::Witness { p, n } => {
            let w = prop5_witness(p, n)?;
            let table = character_table(&w.group)?;
            let index = table
                .index_of(&w.chi)
                .ok_or_else(|| Failure::Compute("witness character missing from table".into()))?;
            let meta = json!({
                "p": p,
                "n": n,
                "order": w.group.order(),
                "chi_index": index,
                "degree": w.chi.degree(),
                "witness_element": w.witness_element.to_string(),
                "base_case": w.base_case,
            });
            let desc = format!(
                "witness group for p = {p}, n = {n}, order {}",
                w.group.order()
            );
            (w.group, desc, Some(meta))
        }
    };
    let text = write_group_file(&group, Some(&comment));
    match output {
        Some(path) => {
            write_file(path, &text)?;
            if let Some(meta) = &sidecar {
                let mut side = path.as_os_str().to_owned();
                side.push(".json");
                write_file(
                    Path::new(&side),
                    &serde_json::to_string_pretty(meta).expect("json"),
                )?;
            }
        }
        None => {
            print!("{text}");
            if let Some(meta) = &sidecar {
                eprintln!("{}", serde_json::to_string_pretty(meta).expect("json"));
            }
        }
    }
    Ok(())
}

fn cmd_verify(
    check: &str,
    catalog: &str,
    max_order: usize,
    json: Option<&Path>,
    cache_dir: Option<PathBuf>,
    no_timing: bool,
) -> CliResult<()> {
    let check: Check = check.parse()?;
    let entries = resolve_catalog(catalog)
        .map_err(|e| Failure::Usage(format!("cannot load catalog {catalog:?}: {e}")))?;
    let opts = VerifyOptions {
        max_order,
        timing: !no_timing,
        cache: cache_dir.map(TableCache::new),
    };
    let report = run_check(check, &entries, &opts)?;
    for g in &report.results {
        let failed = g.records.iter().filter(|r| !r.pass).count();
        println!(
            "{:<10} order {:<5} p {:<2} records {:<5} {}",
            g.group,
            g.order,
            g.p,
            g.records.len(),
            if g.pass {
                "pass".to_string()
            } else {
                format!("FAIL ({failed})")
            }
        );
    }
    println!(
        "{}: {}",
        report.check,
        if report.pass { "pass" } else { "FAIL" }
    );
    if let Some(out) = json {
        write_file(out, &report.to_json_pretty())?;
    }
    if report.pass {
        Ok(())
    } else {
        for (g, r) in report.failures() {
            if let Some(c) = &r.counterexample {
                println!(
                    "counterexample in {}: {}",
                    g.group,
                    serde_json::to_string_pretty(c).expect("json")
                );
            }
        }
        Err(Failure::Violation)
    }
}
