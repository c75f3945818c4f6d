//! fbr: exact fibered Burnside ring computations for finite groups.
//!
//! Subcommands tabulate the standard basis, mark matrix, species table,
//! idempotents and conductors of B^Cn(G) for a catalog group or a group
//! file, and `verify` runs the named identity suites. Exit status: 0 on
//! success, 1 when a verification check fails, 2 on configuration errors.

use clap::{Args, Parser, Subcommand};
use fbr_core::cyclotomic::divisors;
use fbr_core::group::{catalog_names, load_group, GroupSpec, SubgroupLattice, DEFAULT_ORDER_CAP};
use fbr_core::report::{self, Report, Table};
use fbr_core::verify::{run_suite, suite_names, VerifyScope};
use fbr_core::FiberedRing;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "fbr", version, about = "exact fibered Burnside ring computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Catalog name (e.g. S3, Q8, C4xC2) or path to a group JSON file
    #[arg(long)]
    group: String,
    /// Fiber order, or "all" for every divisor of exp(G)
    #[arg(long, default_value = "all")]
    n: String,
    /// Output format
    #[arg(long, default_value = "text", value_parser = ["json", "tsv", "text"])]
    format: String,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Group order cap
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
    cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Standard monomial basis with stabilizer orders
    Basis(CommonArgs),
    /// Mark matrix of the ghost ring embedding
    Marks(CommonArgs),
    /// Species table (rows: points, columns: basis)
    Species(CommonArgs),
    /// Primitive idempotent expansions
    Idempotents(CommonArgs),
    /// Conductor reports with divisor bounds
    Conductors(CommonArgs),
    /// Run a named verification suite
    Verify {
        /// thm51 | splitting | naturality | boltje | lemmas
        suite: String,
        /// Sweep the whole built-in catalog
        #[arg(long, default_value_t = false)]
        catalog_all: bool,
        /// Catalog name or group file (ignored with --catalog-all)
        #[arg(long)]
        group: Option<String>,
        /// Restrict to one fiber order
        #[arg(long)]
        n: Option<u64>,
        /// Fiber map t,n,k; reported as context for naturality runs
        #[arg(long)]
        f: Option<String>,
        #[arg(long, default_value = "text", value_parser = ["json", "tsv", "text"])]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        cap: usize,
    },
}

fn fail(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn parse_group(input: &str, cap: usize) -> Result<Arc<fbr_core::FiniteGroup>, String> {
    let path = PathBuf::from(input);
    let spec = if path.is_file() {
        let text =
            std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        GroupSpec::from_json(&text).map_err(|e| e.to_string())?
    } else if catalog_names()
        .iter()
        .any(|c| c.eq_ignore_ascii_case(&input.replace('\u{d7}', "x")))
    {
        GroupSpec::catalog(input)
    } else {
        return Err(format!(
            "{input} is neither a file nor a catalog name (catalog: {})",
            catalog_names().join(", ")
        ));
    };
    load_group(&spec, cap).map_err(|e| e.to_string())
}

fn fibers(arg: &str, exponent: u64) -> Result<Vec<u64>, String> {
    if arg == "all" {
        return Ok(divisors(exponent));
    }
    let n: u64 = arg.parse().map_err(|_| format!("bad fiber order: {arg}"))?;
    if n == 0 {
        return Err("fiber order must be positive".into());
    }
    let reduced = num::integer::gcd(n, exponent);
    if reduced != n {
        eprintln!("warning: n={n} normalized to gcd(n, exp(G)) = {reduced}");
    }
    Ok(vec![reduced])
}

fn emit(report: &Report, format: &str, out: Option<&PathBuf>) -> Result<(), String> {
    let text = match format {
        "json" => format!("{:#}\n", report.to_json()),
        "tsv" => report.to_tsv(),
        _ => report.to_text(),
    };
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn table_command(name: &str, args: &CommonArgs) -> Result<Report, String> {
    let group = parse_group(&args.group, args.cap)?;
    let lattice = SubgroupLattice::new(Arc::clone(&group));
    let ns = fibers(&args.n, group.exponent())?;
    let mut tables: Vec<Table> = Vec::new();
    for n in ns {
        let ring = FiberedRing::new(Arc::clone(&lattice), n);
        tables.push(match name {
            "basis" => report::basis_table(&ring),
            "marks" => report::marks_table(&ring),
            "species" => report::species_table(&ring),
            "idempotents" => report::idempotents_table(&ring),
            _ => report::conductors_table(&ring),
        });
    }
    Ok(Report { command: name.to_string(), group: group.name().to_string(), tables })
}

/// Deflation defects of one fiber map over a single group: the concrete
/// counterexample display for `verify naturality --f t,n,k`.
fn fiber_defect_table(
    group: &Arc<fbr_core::FiniteGroup>,
    t: u64,
    n: u64,
    k: u64,
) -> Result<Table, String> {
    use fbr_core::report::Cell;
    let f = fbr_core::FiberMap::new(t, n, k).map_err(|e| e.to_string())?;
    let env = fbr_core::GroupEnv::new(Arc::clone(group));
    let lattice = env.lattice();
    let mut rows = Vec::new();
    for n_id in 0..lattice.len() {
        if lattice.normalizer_id(n_id) != lattice.full_id() {
            continue;
        }
        let b = fbr_core::BisetSpec::Def { n: n_id };
        let src = env.biset_source(&b, t);
        let dst = env.biset_target(&b, n);
        let mut found = None;
        for i in 0..src.rank() {
            let x = src.basis_element(i as u32);
            let d = env.naturality_defect(&f, &b, &x);
            if !d.is_zero() {
                found = Some((i, dst.format_element(&d)));
                break;
            }
        }
        let op = b.to_json(lattice).to_string();
        match found {
            Some((i, rendered)) => rows.push(vec![
                Cell::Text(op),
                Cell::Text(format!("defect on basis element {i}")),
                Cell::Text(rendered),
            ]),
            None => rows.push(vec![
                Cell::Text(op),
                Cell::Text("no defect".into()),
                Cell::Text(String::new()),
            ]),
        }
    }
    Ok(Table {
        title: format!("deflation defects of f = {}", f.to_json()),
        columns: vec!["biset".into(), "status".into(), "defect".into()],
        rows,
    })
}

fn run_verify(
    suite: &str,
    catalog_all: bool,
    group: Option<&str>,
    n: Option<u64>,
    f: Option<&str>,
    format: &str,
    out: Option<&PathBuf>,
    cap: usize,
) -> Result<bool, String> {
    if !suite_names().contains(&suite) {
        return Err(format!(
            "unknown suite {suite}; expected one of {}",
            suite_names().join(", ")
        ));
    }
    let fiber_map: Option<(u64, u64, u64)> = match f {
        None => None,
        Some(spec) => {
            let parts: Vec<&str> = spec.split(',').collect();
            if parts.len() != 3 || parts.iter().any(|p| p.parse::<u64>().is_err()) {
                return Err(format!("bad fiber map spec {spec}; expected t,n,k"));
            }
            let tnk = (
                parts[0].parse().unwrap(),
                parts[1].parse().unwrap(),
                parts[2].parse().unwrap(),
            );
            fbr_core::FiberMap::new(tnk.0, tnk.1, tnk.2).map_err(|e| e.to_string())?;
            Some(tnk)
        }
    };
    let scope = if catalog_all {
        VerifyScope::catalog_all()
    } else {
        let name = group.ok_or("verify needs --group or --catalog-all")?;
        VerifyScope::single(parse_group(name, cap)?, n)
    };
    let suite_report = run_suite(suite, &scope).expect("suite name checked above");
    let label = if catalog_all {
        "catalog".to_string()
    } else {
        group.unwrap_or_default().to_string()
    };
    let mut tables = vec![report::verify_table(&suite_report)];
    if let (Some((t, nn, k)), false) = (fiber_map, catalog_all) {
        if suite == "naturality" {
            tables.push(fiber_defect_table(&scope.groups[0], t, nn, k)?);
        }
    }
    let report = Report {
        command: format!("verify {suite}"),
        group: label,
        tables,
    };
    emit(&report, format, out)?;
    for check in &suite_report.checks {
        if !check.pass {
            eprintln!(
                "verification failed: {} ({})",
                check.name,
                check.detail.clone().unwrap_or_default()
            );
        }
    }
    Ok(suite_report.all_passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, args) = match &cli.command {
        Command::Basis(a) => ("basis", a),
        Command::Marks(a) => ("marks", a),
        Command::Species(a) => ("species", a),
        Command::Idempotents(a) => ("idempotents", a),
        Command::Conductors(a) => ("conductors", a),
        Command::Verify { suite, catalog_all, group, n, f, format, out, cap } => {
            return match run_verify(
                suite,
                *catalog_all,
                group.as_deref(),
                *n,
                f.as_deref(),
                format,
                out.as_ref(),
                *cap,
            ) {
                Ok(true) => ExitCode::SUCCESS,
                Ok(false) => ExitCode::from(1),
                Err(msg) => fail(&msg),
            };
        }
    };
    match table_command(name, args).and_then(|r| emit(&r, &args.format, args.out.as_ref())) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => fail(&msg),
    }
}
