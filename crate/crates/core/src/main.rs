use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use kneser_codes::code::{certify_s_neighbour_transitive, Code};
use kneser_codes::families::{fixture_group, load_group_file, FamilySpec, GroupFile};
use kneser_codes::io::{analyze, read_code, to_sorted_json, write_code, write_json, AnalyzeDepth, CodeFile};
use kneser_codes::metric::KneserSpace;
use kneser_codes::subset::Ranker;
use kneser_codes::suites::{run_suite, SUITES};
use kneser_codes::{Error, PermGroup, Result};

/// Codes in Kneser graphs: construction, analysis and symmetry checks.
///
/// Machine-readable JSON goes to standard output, summaries to standard
/// error. Exit codes: 0 success, 1 a check failed, 2 usage or I/O error,
/// 3 capacity exceeded, 4 a generator does not preserve the code.
#[derive(Parser)]
#[command(name = "kneser", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code from a family and write it as JSON.
    Construct {
        #[command(subcommand)]
        family: FamilyArgs,
        /// Output file; standard output if omitted.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Minimum distance, intersection sizes and distance partition of a code.
    Analyze {
        #[arg(long)]
        code: PathBuf,
        /// Compute cells C_0..C_s only.
        #[arg(long, conflicts_with = "full")]
        up_to: Option<usize>,
        /// Compute the whole distance partition and the covering radius.
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Certify that a group is transitive on C_0..C_s.
    CheckNt {
        #[arg(long)]
        code: PathBuf,
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 1)]
        s: usize,
    },
    /// Run a verification suite, or all of them with `--suite all`.
    CheckPaper {
        #[arg(long)]
        suite: String,
        /// Include wall-clock times (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Distance between two vertices.
    Distance {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Comma-separated elements.
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        /// Also compute the distance by breadth-first search.
        #[arg(long)]
        bfs: bool,
    },
    /// Compare the closed-form distance with breadth-first search from one
    /// vertex of K(n,k).
    OracleBfs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Write a catalog group as a group file.
    Group {
        /// Catalog name, e.g. `pgl2:5` or `wreath:3,3`.
        #[arg(long)]
        fixture: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FamilyArgs {
    /// Vertices meeting U = {0..u-1} in a points and the rest in b points.
    CInt {
        #[arg(long)]
        u: usize,
        #[arg(long)]
        v: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    /// Vertices whose block intersection sizes form the multiset m.
    CImp {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        /// Comma-separated block intersection sizes.
        #[arg(long)]
        m: String,
    },
    Tetrahedron,
    Pg23,
    Hyperplanes {
        #[arg(long)]
        d: usize,
    },
    Pg32Planes,
    Endecads,
}

#[derive(Args)]
struct GroupArgs {
    /// Group file.
    #[arg(long = "group", conflicts_with = "fixture")]
    path: Option<PathBuf>,
    /// Catalog group name instead of a file.
    #[arg(long)]
    fixture: Option<String>,
}

impl GroupArgs {
    fn load(&self) -> Result<Option<PermGroup>> {
        match (&self.path, &self.fixture) {
            (Some(p), _) => load_group_file(p).map(Some),
            (None, Some(name)) => fixture_group(name).map(Some),
            (None, None) => Ok(None),
        }
    }

    fn require(&self) -> Result<PermGroup> {
        self.load()?
            .ok_or_else(|| Error::Usage("one of --group or --fixture is required".into()))
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Usage(format!("{t:?} is not a nonnegative integer")))
        })
        .collect()
}

fn emit(value: &impl serde::Serialize, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(p) => write_json(p, value),
        None => {
            println!("{}", to_sorted_json(value));
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Construct { family, out } => {
            let spec = match family {
                FamilyArgs::CInt { u, v, a, b } => FamilySpec::CInt { u, v, a, b },
                FamilyArgs::CImp { a, b, m } => FamilySpec::CImp { a, b, m: parse_list(&m)? },
                FamilyArgs::Tetrahedron => FamilySpec::Tetrahedron,
                FamilyArgs::Pg23 => FamilySpec::Pg23,
                FamilyArgs::Hyperplanes { d } => FamilySpec::Hyperplanes { d },
                FamilyArgs::Pg32Planes => FamilySpec::Pg32Planes,
                FamilyArgs::Endecads => FamilySpec::Endecads,
            };
            let code: Code = spec.build()?;
            match &out {
                Some(p) => write_code(p, &code)?,
                None => println!("{}", to_sorted_json(&CodeFile::from_code(&code))),
            }
            eprintln!(
                "{spec}: |C| = {}, n = {}, k = {}",
                code.len(),
                code.space().n(),
                code.space().k()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Analyze { code, up_to, full, group } => {
            let code = read_code(&code)?;
            let depth = match (full, up_to) {
                (true, _) => AnalyzeDepth::Full,
                (false, Some(s)) => AnalyzeDepth::UpTo(s),
                (false, None) => AnalyzeDepth::UpTo(1),
            };
            let group = group.load()?;
            let report = analyze(&code, depth, group.as_ref())?;
            eprintln!(
                "|C| = {}, delta = {}, cells = {:?}",
                report.size,
                report.delta.map_or("undefined".into(), |d| d.to_string()),
                report.cell_sizes
            );
            println!("{}", to_sorted_json(&report));
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckNt { code, group, s } => {
            let code = read_code(&code)?;
            let group = group.require()?;
            let cert = certify_s_neighbour_transitive(&code, &group, s)?;
            println!("{}", to_sorted_json(&cert));
            eprintln!("{s}-neighbour-transitive: {}", if cert.pass { "pass" } else { "FAIL" });
            Ok(if cert.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::CheckPaper { suite, timings } => {
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut results = Vec::new();
            for name in names {
                let res = run_suite(name, timings)?;
                eprintln!(
                    "{name}: {} pass, {} fail, {} discrepancy",
                    res.passed, res.failed, res.discrepancies
                );
                for c in res.claims.iter().filter(|c| c.status != kneser_codes::suites::Status::Pass) {
                    eprintln!("  {:?}: {} ({})", c.status, c.id, c.anchor);
                }
                results.push(res);
            }
            let ok = results.iter().all(|r| r.ok());
            if results.len() == 1 {
                emit(&results[0], None)?;
            } else {
                emit(&results, None)?;
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Distance { n, k, alpha, beta, bfs } => {
            let sp = KneserSpace::new(n, k)?;
            let a = sp.vertex(&parse_list(&alpha)?)?;
            let b = sp.vertex(&parse_list(&beta)?)?;
            let d = sp.distance(a, b)?;
            let mut out = json!({ "distance": d, "intersection": a.intersect_size(b)? });
            if bfs {
                out["bfs_distance"] = json!(sp.bfs_distance(a, b)?);
            }
            println!("{}", to_sorted_json(&out));
            Ok(ExitCode::SUCCESS)
        }
        Command::OracleBfs { n, k } => {
            let sp = KneserSpace::new(n, k)?;
            let src = sp.vertices().next().expect("nonempty");
            let dist = sp.bfs_from(src)?;
            let ranker = Ranker::new(n, k);
            let mut layers = vec![0u64; sp.diameter() + 1];
            let mut mismatches = 0u64;
            for v in sp.vertices() {
                let d = dist[ranker.rank(v.mask()) as usize] as usize;
                if d < layers.len() {
                    layers[d] += 1;
                }
                if d != sp.distance(src, v)? {
                    mismatches += 1;
                }
            }
            println!(
                "{}",
                to_sorted_json(&json!({
                    "n": n, "k": k, "vertices": sp.vertex_count() as u64,
                    "layer_sizes": layers, "mismatches": mismatches
                }))
            );
            Ok(if mismatches == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Group { fixture, out } => {
            let g = fixture_group(&fixture)?;
            emit(&GroupFile::from_group(&g), out.as_ref())?;
            eprintln!("{}: degree {}, order {}", fixture, g.degree(), g.order());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
