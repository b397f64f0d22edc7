//! Command-line front end: build models from catalog expressions or model
//! files, run validations and verdicts, and print human tables or the
//! machine-readable `key = value` report.
//!
//! Exit codes: 0 when a verdict was computed (whatever its outcome), 1 on
//! validation or hypothesis-gate failures, 2 on parse errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sacs_core::error::Error;
use sacs_core::model_file;
use sacs_core::obstruction::{self, Flavor, Verdict};
use sacs_core::ring::model::ManifoldModel;
use sacs_core::steenrod;

#[derive(Parser)]
#[command(
    name = "sacs",
    version,
    about = "Decide stable (almost) complex structure existence from cohomology data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Exactly one model source: a catalog expression or a model file.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Catalog expression, e.g. 'product(cp2, product(sphere(5), sphere(1)))'
    #[arg(long)]
    expr: Option<String>,
    /// Path to a model file
    #[arg(long)]
    file: Option<PathBuf>,
}

impl Source {
    fn load(&self) -> Result<ManifoldModel, Error> {
        match (&self.expr, &self.file) {
            (Some(e), None) => sacs_core::catalog::expr::parse_expr(e)?.build(),
            (None, Some(p)) => model_file::load_model(p),
            _ => unreachable!("clap enforces exactly one source"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print per-degree dimensions and declared data of a model
    Describe {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        machine: bool,
    },
    /// Run the structural validation suite
    Validate {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        machine: bool,
    },
    /// Print the matrix of Sq^i on a degree's basis
    SqTable {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        machine: bool,
        /// Which Steenrod square
        #[arg(long)]
        i: u32,
        /// Source degree; all degrees when omitted
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Check surjectivity of Sq^2 onto the degree just below the top
    CheckStar {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        machine: bool,
    },
    /// Compute the generators of D(M) with their half-classes
    Dman {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        machine: bool,
        /// Cross-check membership against the {-2..2} coefficient box
        #[arg(long)]
        exhaustive_dman: bool,
    },
    /// Decide stable almost complex structure existence for the model
    CheckSacs {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        machine: bool,
        /// Cross-check the verdict against the {-2..2} coefficient box
        #[arg(long)]
        exhaustive_dman: bool,
    },
    /// Decide stable complex structure existence for a bundle over the model
    CheckBundle {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        machine: bool,
        /// Path to the bundle file ([char] w, [integral] p1 and d)
        #[arg(long)]
        bundle: PathBuf,
        /// Cross-check the verdict against the {-2..2} coefficient box
        #[arg(long)]
        exhaustive_dman: bool,
    },
    /// Compute Wu classes and the Stiefel-Whitney class they induce
    Wu {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        machine: bool,
    },
    /// Torsion-based guarantee for extending stable bundles across skeleta
    ExtensionGuarantee {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        machine: bool,
        /// Obstruction parameter q
        #[arg(long)]
        q: u32,
        /// One of: complex, real, symplectic
        #[arg(long)]
        flavor: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn print_lines(lines: &[String]) {
    for line in lines {
        println!("{line}");
    }
}

fn verdict_output(v: &Verdict, m: &ManifoldModel, machine: bool, extra: &[String]) {
    if machine {
        print_lines(&obstruction::verdict_machine_lines(v, m));
        print_lines(extra);
        return;
    }
    println!("model: {}", m.name);
    println!("admits: {}", v.admits);
    if v.w4_zero_shortcut {
        println!("note: w4 = 0, the congruence holds for every generator");
    }
    let lattice = m.integral.as_ref();
    for (i, g) in v.generators.iter().enumerate() {
        let (xs, zs) = match lattice {
            Some(l) => (l.display(&g.x), l.display(&g.z)),
            None => ("?".into(), "?".into()),
        };
        let a = g.a.map(|a| format!(" A = {a},")).unwrap_or_default();
        println!(
            "  generator {i}: x = {xs}, z = {zs},{a} lhs = {}, rhs = {} [{}]",
            u8::from(g.lhs),
            u8::from(g.rhs),
            if g.balances() { "ok" } else { "unbalanced" }
        );
    }
    for gate in &v.gates {
        println!(
            "  gate {}: {} ({})",
            gate.name,
            if gate.passed { "pass" } else { "fail" },
            gate.detail
        );
    }
    print_lines(extra);
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Describe { source, machine } => {
            let m = source.load()?;
            let dims: Vec<usize> = (0..=m.n).map(|d| m.dim(d)).collect();
            let total: usize = dims.iter().sum();
            if machine {
                println!("name = {}", m.name);
                println!("n = {}", m.n);
                for (d, dim) in dims.iter().enumerate() {
                    println!("dim.{d} = {dim}");
                }
                println!("total_dim = {total}");
                println!(
                    "backend = {}",
                    match m.ring {
                        sacs_core::ring::RingBackend::Presented(_) => "presented",
                        sacs_core::ring::RingBackend::Table(_) => "table",
                    }
                );
            } else {
                println!("model: {}  (dimension {})", m.name, m.n);
                let dim_list: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
                println!("mod-2 Betti numbers: {}  (total {total})", dim_list.join(","));
                for d in 0..=m.n {
                    if m.dim(d) > 0 {
                        let labels: Vec<String> =
                            (0..m.dim(d)).map(|i| m.ring.label_string(d, i)).collect();
                        println!("  H^{d}: {}", labels.join(", "));
                    }
                }
                if let Some(w) = &m.char_classes.w {
                    println!("w = {}", m.ring.total_display(w));
                }
                if let (Some(l), Some(c)) = (&m.integral, &m.char_classes.c) {
                    println!("c = {}", l.display(c));
                }
                if let (Some(l), Some(p1)) = (&m.integral, &m.char_classes.p1) {
                    println!("p1 = {}", l.display(p1));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { source, machine } => {
            let m = source.load()?;
            let report = m.validate();
            if machine {
                println!("valid = {}", report.is_ok());
                for (i, v) in report.violations.iter().enumerate() {
                    println!("violation.{i} = {v}");
                }
            } else if report.is_ok() {
                println!("model {} is valid", m.name);
            } else {
                println!("model {} failed validation:", m.name);
                for v in &report.violations {
                    println!("  - {v}");
                }
            }
            if report.is_ok() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::SqTable {
            source,
            machine,
            i,
            degree,
        } => {
            let m = source.load()?;
            let degrees: Vec<u32> = match degree {
                Some(d) => vec![d],
                None => (0..=m.n.saturating_sub(i)).collect(),
            };
            for d in degrees {
                let matrix = m.sq_matrix(i, d);
                if machine {
                    println!("sq.{i}.{d}.source_dim = {}", matrix.cols());
                    println!("sq.{i}.{d}.target_dim = {}", matrix.rows());
                    println!("sq.{i}.{d}.rank = {}", matrix.rank());
                    for r in 0..matrix.rows() {
                        let bits: String = (0..matrix.cols())
                            .map(|c| if matrix.get(r, c) { '1' } else { '0' })
                            .collect();
                        println!("sq.{i}.{d}.row.{r} = {bits}");
                    }
                } else {
                    println!(
                        "Sq^{i}: H^{d} -> H^{} ({} x {}, rank {})",
                        d + i,
                        matrix.rows(),
                        matrix.cols(),
                        matrix.rank()
                    );
                    for r in 0..matrix.rows() {
                        let row: Vec<&str> = (0..matrix.cols())
                            .map(|c| if matrix.get(r, c) { "1" } else { "0" })
                            .collect();
                        println!("  [{}]", row.join(" "));
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckStar { source, machine } => {
            let m = source.load()?;
            let cert = steenrod::condition_star(&m)?;
            if machine {
                println!("condition_star = {}", cert.holds);
                println!("k = {}", cert.k);
                println!("source_degree = {}", cert.source_degree);
                println!("target_degree = {}", cert.target_degree);
                println!("source_dim = {}", cert.source_dim);
                println!("target_dim = {}", cert.target_dim);
                println!("rank = {}", cert.rank);
            } else {
                println!("model: {}", m.name);
                println!(
                    "Sq^2: H^{} -> H^{} has rank {} onto dimension {}",
                    cert.source_degree, cert.target_degree, cert.rank, cert.target_dim
                );
                println!("condition (*): {}", cert.holds);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Dman {
            source,
            machine,
            exhaustive_dman,
        } => {
            let m = source.load()?;
            let d = obstruction::d_subgroup(&m)?;
            let lattice = m.integral.as_ref().expect("d_subgroup requires it");
            let mut extra = Vec::new();
            if exhaustive_dman {
                let ok = obstruction::exhaustive_dman_membership(&m)?;
                extra.push(format!("exhaustive_membership_agrees = {ok}"));
                if !ok {
                    return Err(Error::Validation(
                        "exhaustive D(M) membership disagrees with the kernel description".into(),
                    ));
                }
            }
            if machine {
                println!("kernel_rank = {}", d.kernel_rank);
                for (i, g) in d.generators.iter().enumerate() {
                    println!("generator.{i}.x = {}", lattice.display(&g.x));
                    println!("generator.{i}.z = {}", lattice.display(&g.z));
                    println!("generator.{i}.from_kernel = {}", g.from_kernel);
                }
                print_lines(&extra);
            } else {
                println!("model: {}", m.name);
                println!("mod-2 kernel rank: {}", d.kernel_rank);
                for (i, g) in d.generators.iter().enumerate() {
                    println!(
                        "  generator {i}: x = {}, z_x = {}{}",
                        lattice.display(&g.x),
                        lattice.display(&g.z),
                        if g.from_kernel { "" } else { "  (doubled basis)" }
                    );
                }
                print_lines(&extra);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckSacs {
            source,
            machine,
            exhaustive_dman,
        } => {
            let m = source.load()?;
            let v = obstruction::check_sacs(&m)?;
            let mut extra = Vec::new();
            if exhaustive_dman {
                let ok = obstruction::exhaustive_dman_agrees(&m, None)?;
                extra.push(format!("exhaustive_agrees = {ok}"));
                if !ok {
                    verdict_output(&v, &m, machine, &extra);
                    return Err(Error::Validation(
                        "exhaustive enumeration disagrees with the generator verdict".into(),
                    ));
                }
            }
            verdict_output(&v, &m, machine, &extra);
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckBundle {
            source,
            machine,
            bundle,
            exhaustive_dman,
        } => {
            let m = source.load()?;
            let b = model_file::load_bundle(&bundle, &m)?;
            let v = obstruction::check_bundle_scs(&m, &b)?;
            let mut extra = Vec::new();
            if exhaustive_dman {
                let ok = obstruction::exhaustive_dman_agrees(&m, Some(&b))?;
                extra.push(format!("exhaustive_agrees = {ok}"));
                if !ok {
                    verdict_output(&v, &m, machine, &extra);
                    return Err(Error::Validation(
                        "exhaustive enumeration disagrees with the generator verdict".into(),
                    ));
                }
            }
            verdict_output(&v, &m, machine, &extra);
            Ok(ExitCode::SUCCESS)
        }
        Command::Wu { source, machine } => {
            let m = source.load()?;
            let v = steenrod::wu_classes(&m)?;
            let w = steenrod::sw_from_wu(&m)?;
            let declared = m.char_classes.w.clone();
            if machine {
                for (i, vi) in v.iter().enumerate() {
                    println!("v.{i} = {}", m.ring.class_display(vi));
                }
                println!("w_from_wu = {}", m.ring.total_display(&w));
                match &declared {
                    Some(dw) => println!("w_matches_declared = {}", *dw == w),
                    None => println!("w_matches_declared = none_declared"),
                }
            } else {
                println!("model: {}", m.name);
                for (i, vi) in v.iter().enumerate() {
                    println!("  V_{i} = {}", m.ring.class_display(vi));
                }
                println!("total SW class from Wu: {}", m.ring.total_display(&w));
                match &declared {
                    Some(dw) if *dw == w => println!("matches the declared class"),
                    Some(dw) => println!(
                        "DIFFERS from the declared class {}",
                        m.ring.total_display(dw)
                    ),
                    None => println!("no declared class to compare against"),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ExtensionGuarantee {
            source,
            machine,
            q,
            flavor,
        } => {
            let m = source.load()?;
            let flavor: Flavor = flavor.parse()?;
            let g = obstruction::extension_guarantee(q, flavor, &m.torsion);
            let primes = |ps: &[u64]| {
                if ps.is_empty() {
                    "none".to_string()
                } else {
                    ps.iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                }
            };
            if machine {
                println!("guarantee = {}", g.guaranteed);
                println!("target_degree = {}", g.target_degree);
                println!("required_primes = {}", primes(&g.required_primes));
                println!("missing_primes = {}", primes(&g.missing_primes));
            } else {
                println!("model: {}", m.name);
                println!(
                    "extension guarantee ({:?}, q = {q}) into degree {}: {}",
                    g.flavor, g.target_degree, g.guaranteed
                );
                println!("required torsion-free primes: {}", primes(&g.required_primes));
                if !g.missing_primes.is_empty() {
                    println!("not declared absent: {}", primes(&g.missing_primes));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
