use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use whitcalc::classify::{framed_quotient, twisted_quotient, verify_theorems, Flavor, GradedQuotientReport};
use whitcalc::freelie::TensorElement;
use whitcalc::groupwords::{assemble_longitudes, lie_class};
use whitcalc::milnorlink::{corpus_diagram, milnor_mu, sato_levine, LinkDiagram, SatoLevine};
use whitcalc::treecalc::{eta, TreeSum};

#[derive(Parser)]
#[command(name = "whitcalc", version, about = "Whitney tower and Milnor invariant calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Twisted,
    Framed,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Structure of the graded quotients for every m ≤ M and n ≤ N.
    Ranks {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        flavor: Option<FlavorArg>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Milnor invariant of a link diagram.
    Milnor {
        /// JSON diagram file, or the name of a bundled diagram.
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        order: usize,
        /// Framing per component.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        framings: Option<Vec<i64>>,
    },
    /// Higher-order Sato-Levine invariant SL_{2k-1}.
    SatoLevine {
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        k: usize,
    },
    /// The summation map applied to a tree sum.
    Eta {
        #[arg(long)]
        treesum: PathBuf,
    },
    /// Longitude words assembled from a tree sum, with their Milnor invariant.
    Longitudes {
        #[arg(long)]
        treesum: PathBuf,
    },
    /// Check the classification statements for small parameters.
    Verify {
        #[arg(long, default_value_t = 3)]
        m_max: usize,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn load_diagram(source: &str) -> Result<LinkDiagram> {
    let path = Path::new(source);
    if !path.exists() {
        if let Ok(d) = corpus_diagram(source) {
            return Ok(d);
        }
    }
    let text = fs::read_to_string(path).with_context(|| format!("reading {source}"))?;
    LinkDiagram::parse(&text).with_context(|| format!("parsing {source}"))
}

fn load_treesum(path: &Path) -> Result<TreeSum> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    TreeSum::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn ranks(max_m: usize, max_n: usize, flavor: Option<FlavorArg>, format: Format) -> Result<()> {
    let flavors: Vec<Flavor> = match flavor {
        Some(FlavorArg::Twisted) => vec![Flavor::Twisted],
        Some(FlavorArg::Framed) => vec![Flavor::Framed],
        None => vec![Flavor::Twisted, Flavor::Framed],
    };
    let mut reports: Vec<GradedQuotientReport> = Vec::new();
    for m in 1..=max_m {
        for n in 0..=max_n {
            for &f in &flavors {
                reports.push(match f {
                    Flavor::Twisted => twisted_quotient(m, n)?,
                    Flavor::Framed => framed_quotient(m, n)?,
                });
            }
        }
    }
    match format {
        Format::Json => print_json(&reports.iter().map(|r| r.to_json()).collect::<Vec<_>>())?,
        Format::Csv => {
            println!("m,n,flavor,free_rank,z2_rank,structure,arf_dimension");
            for r in &reports {
                println!(
                    "{},{},{},{},{},{},{}",
                    r.m,
                    r.n,
                    r.flavor,
                    r.structure.free_rank,
                    r.structure.two_rank(),
                    r.structure,
                    r.annihilated_arf_dimension
                );
            }
        }
        Format::Text => {
            println!("{:>2} {:>2} {:<8} {:<16} {:>3}", "m", "n", "flavor", "structure", "arf");
            for r in &reports {
                println!(
                    "{:>2} {:>2} {:<8} {:<16} {:>3}",
                    r.m,
                    r.n,
                    r.flavor.to_string(),
                    r.structure.to_string(),
                    r.annihilated_arf_dimension
                );
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Ranks { m, n, flavor, format } => ranks(m, n, flavor, format)?,
        Command::Milnor {
            diagram,
            order,
            framings,
        } => {
            let mut d = load_diagram(&diagram)?;
            if let Some(f) = framings {
                d = d.with_framings(f)?;
            }
            print_json(&milnor_mu(&d, order)?.to_json(d.name()))?;
        }
        Command::SatoLevine { diagram, k } => {
            let d = load_diagram(&diagram)?;
            let out = match sato_levine(&d, k)? {
                SatoLevine::Value(v) => json!({
                    "name": d.name(),
                    "k": k,
                    "refused": false,
                    "vector": v.iter().map(|&b| u8::from(b)).collect::<Vec<_>>(),
                }),
                SatoLevine::Refused {
                    first_nonvanishing_order,
                } => json!({
                    "name": d.name(),
                    "k": k,
                    "refused": true,
                    "first_nonvanishing_order": first_nonvanishing_order,
                }),
            };
            print_json(&out)?;
        }
        Command::Eta { treesum } => {
            let ts = load_treesum(&treesum)?;
            print_json(&eta(&ts)?.to_json())?;
        }
        Command::Longitudes { treesum } => {
            let ts = load_treesum(&treesum)?;
            let words = assemble_longitudes(&ts)?;
            let classes = words
                .iter()
                .map(|w| lie_class(w, ts.order() + 1))
                .collect::<whitcalc::Result<Vec<_>>>()?;
            let mu = TensorElement::from_parts(ts.m(), ts.order(), &classes)?;
            let expected = eta(&ts)?;
            let equal = mu == expected;
            print_json(&json!({
                "longitudes": words.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                "mu": mu.to_json(),
                "eta": expected.to_json(),
                "equal": equal,
            }))?;
            if !equal {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Verify { m_max, n_max, format } => {
            let report = verify_theorems(m_max, n_max);
            match format {
                Format::Json => print_json(&report)?,
                Format::Csv => {
                    println!("m,n,check,passed,detail");
                    for e in &report.entries {
                        println!("{},{},{},{},\"{}\"", e.m, e.n, e.check, e.passed, e.detail.replace('"', "'"));
                    }
                }
                Format::Text => print!("{report}"),
            }
            if !report.all_passed() {
                bail!("{} check(s) failed", report.failures().count());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
