use clap::{Args, Parser, Subcommand, ValueEnum};
use qfoam::algebra::{check_gfamily_axioms, linear_gfamily, parse_gfamily, r_tilde, GFamilyTable};
use qfoam::diagrams::{enumerate_colorings, parse_graph_diagram};
use qfoam::foam::movie::{cocycle_invariant, load_movie, trace};
use qfoam::foam::spin::{parse_tangle, twist_spin};
use qfoam::homology::{parse_cocycle, verify_cocycle_conditions, verify_oriented_conditions, CocycleTable};
use qfoam::report::ValidationReport;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Quandle cocycle invariants of knotted foams.
#[derive(Parser)]
#[command(name = "qfoam", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for colouring enumeration (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Directory that `data/...` paths resolve against.
    #[arg(long, env = "QFOAM_DATA", global = true, hide_env_values = true)]
    data_dir: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct FamilyArg {
    /// r-tilde, trivial, linear:<p>:<u,u,...> or a .gfam file.
    #[arg(long, default_value = "r-tilde")]
    family: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the G-family axioms of a table file or a builtin family.
    CheckAxioms {
        path: Option<PathBuf>,
        #[arg(long, conflicts_with = "path")]
        builtin: Option<String>,
    },
    /// Check the cocycle conditions and their oriented specializations.
    VerifyCocycle {
        path: Option<PathBuf>,
        /// mochizuki or zero.
        #[arg(long, conflicts_with = "path")]
        builtin: Option<String>,
        #[command(flatten)]
        family: FamilyArg,
    },
    /// Count (and with --format json, list) the colourings of a graph diagram.
    Colorings {
        graph: PathBuf,
        #[command(flatten)]
        family: FamilyArg,
    },
    /// Cocycle invariant of a movie.
    Invariant {
        movie: PathBuf,
        #[command(flatten)]
        family: FamilyArg,
        /// mochizuki, zero or a cocycle file.
        #[arg(long, default_value = "mochizuki")]
        theta: String,
        /// Write a JSON-lines trace of events and triple points.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Movie of the n-twist spin of a tangle.
    TwistSpin {
        tangle: PathBuf,
        #[arg(short = 'n', default_value_t = 2)]
        n: usize,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
}

/// A failure with its exit code: 1 for a semantic failure, 2 for bad input.
struct Fail(u8, String);

fn structural(e: impl std::fmt::Display) -> Fail {
    Fail(2, e.to_string())
}

struct Ctx {
    format: Format,
    data: Option<PathBuf>,
}

impl Ctx {
    fn resolve(&self, p: &Path) -> PathBuf {
        if p.exists() {
            return p.to_path_buf();
        }
        let rest = p.strip_prefix("data").unwrap_or(p);
        if let Some(d) = &self.data {
            return d.join(rest);
        }
        let bundled = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rest);
        if bundled.exists() {
            bundled
        } else {
            p.to_path_buf()
        }
    }
    fn read(&self, p: &Path) -> Result<String, Fail> {
        let r = self.resolve(p);
        std::fs::read_to_string(&r).map_err(|e| Fail(2, format!("{}: {e}", r.display())))
    }
    fn family(&self, sel: &str) -> Result<GFamilyTable, Fail> {
        match sel {
            "r-tilde" => Ok(r_tilde()),
            "trivial" => Ok(GFamilyTable::trivial()),
            s if s.starts_with("linear:") => {
                let mut it = s[7..].splitn(2, ':');
                let p = it.next().and_then(|x| x.parse().ok()).ok_or_else(|| structural(format!("bad family `{s}`")))?;
                let units: Result<Vec<u32>, _> = it.next().unwrap_or("1").split(',').map(str::parse).collect();
                let units = units.map_err(|_| structural(format!("bad family `{s}`")))?;
                linear_gfamily(p, &units).map_err(structural)
            }
            path => parse_gfamily(&self.read(Path::new(path))?).map_err(structural),
        }
    }
    fn theta(&self, sel: &str, f: &GFamilyTable) -> Result<CocycleTable, Fail> {
        match sel {
            "mochizuki" => {
                let c = CocycleTable::mochizuki();
                if c.theta.size() != f.pair_count() {
                    return Err(structural("the mochizuki table is defined over r-tilde"));
                }
                Ok(c)
            }
            "zero" => Ok(CocycleTable::zero(f, 3)),
            path => parse_cocycle(f, &self.read(Path::new(path))?).map_err(structural),
        }
    }
    fn report(&self, name: &str, reports: &[(&str, &ValidationReport)]) -> Result<(), Fail> {
        let passed = reports.iter().all(|(_, r)| r.passed());
        match self.format {
            Format::Json => {
                let v: serde_json::Map<_, _> =
                    reports.iter().map(|(k, r)| (k.to_string(), serde_json::to_value(r).unwrap())).collect();
                println!("{}", json!({ "command": name, "passed": passed, "reports": v }));
            }
            Format::Text => {
                for (k, r) in reports {
                    print!("{k}: {}", r.render());
                }
            }
        }
        if passed {
            Ok(())
        } else {
            Err(Fail(1, String::new()))
        }
    }
}

fn run(cli: Cli) -> Result<(), Fail> {
    let ctx = Ctx { format: cli.format, data: cli.data_dir };
    match cli.cmd {
        Cmd::CheckAxioms { path, builtin } => {
            let f = match (path, builtin) {
                (Some(p), None) => parse_gfamily(&ctx.read(&p)?).map_err(structural)?,
                (None, Some(b)) => ctx.family(&b)?,
                _ => return Err(structural("give a table file or --builtin")),
            };
            ctx.report("check-axioms", &[("g-family axioms", &check_gfamily_axioms(&f))])
        }
        Cmd::VerifyCocycle { path, builtin, family } => {
            let f = ctx.family(&family.family)?;
            let c = match (path, builtin) {
                (Some(p), None) => parse_cocycle(&f, &ctx.read(&p)?).map_err(structural)?,
                (None, Some(b)) => ctx.theta(&b, &f)?,
                _ => return Err(structural("give a cocycle file or --builtin")),
            };
            let a = verify_cocycle_conditions(&f, &c);
            let b = verify_oriented_conditions(&c.theta);
            ctx.report("verify-cocycle", &[("cocycle conditions", &a), ("oriented conditions", &b)])
        }
        Cmd::Colorings { graph, family } => {
            let f = ctx.family(&family.family)?;
            let d = parse_graph_diagram(&ctx.read(&graph)?).map_err(structural)?;
            let cs = enumerate_colorings(&d, &f);
            match ctx.format {
                Format::Text => println!("{}", cs.len()),
                Format::Json => {
                    let list: Vec<_> = cs
                        .iter()
                        .map(|c| json!({ "arc_colors": c.arc_colors, "orientations": c.orientations }))
                        .collect();
                    println!("{}", json!({ "count": cs.len(), "colorings": list }));
                }
            }
            Ok(())
        }
        Cmd::Invariant { movie, family, theta, trace: trace_path } => {
            let f = ctx.family(&family.family)?;
            let c = ctx.theta(&theta, &f)?;
            let (m, stills) = load_movie(&ctx.resolve(&movie)).map_err(structural)?;
            let r = cocycle_invariant(&m, &stills, &f, &c).map_err(|e| Fail(1, e.to_string()))?;
            if let Some(p) = trace_path {
                let mut out = std::io::BufWriter::new(std::fs::File::create(&p).map_err(structural)?);
                trace(&m, &stills, &f, &c, &mut out).map_err(structural)?;
            }
            match ctx.format {
                Format::Text => println!("{}", r.polynomial),
                Format::Json => println!("{}", serde_json::to_string(&r).unwrap()),
            }
            Ok(())
        }
        Cmd::TwistSpin { tangle, n, out } => {
            let t = parse_tangle(&ctx.read(&tangle)?).map_err(structural)?;
            let text = twist_spin(&t, n).to_string();
            match out {
                Some(p) => std::fs::write(&p, text).map_err(structural)?,
                None => print!("{text}"),
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail(code, msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code)
        }
    }
}
