use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use superserre::cartan::CartanData;
use superserre::dynkin::{DynkinDiagram, Format};
use superserre::rootdata::{Family, RootDatum, SimpleSystem};
use superserre::serre::Presentation;
use superserre::verify::{self, compare_z_grading, height_cap, necessity_all, run_borel, BorelRun};
use superserre::Scalar;

#[derive(Parser)]
#[command(name = "superserre")]
#[command(about = "Serre-type presentations of contragredient Lie superalgebras")]
#[command(version)]
struct Cli {
    /// Height cap for quotient computations (default 2·ht(θ)+2)
    #[arg(long, global = true, env = verify::MAX_HEIGHT_ENV)]
    max_height: Option<u32>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Text,
    Ascii,
    Json,
    Latex,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Text => Format::Text,
            OutFormat::Ascii => Format::Ascii,
            OutFormat::Json => Format::Json,
            OutFormat::Latex => Format::Latex,
        }
    }
}

#[derive(Args, Clone)]
struct Target {
    /// One of A, B, C, D, F4, G3, D21a
    family: String,

    #[arg(long)]
    m: Option<usize>,

    #[arg(long)]
    n: Option<usize>,

    /// Value of α for D21a: a rational such as 2 or -1/2, or "generic"
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
}

#[derive(Args, Clone)]
struct Select {
    #[command(flatten)]
    target: Target,

    /// Index into the enumerated simple systems, "distinguished" or "all"
    #[arg(long, default_value = "distinguished")]
    borel: Borel,
}

#[derive(Clone, Copy, Debug)]
enum Borel {
    All,
    Distinguished,
    Index(usize),
}

impl std::str::FromStr for Borel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all" => Ok(Borel::All),
            "distinguished" => Ok(Borel::Distinguished),
            k => k
                .parse()
                .map(Borel::Index)
                .map_err(|_| format!("expected an index, \"distinguished\" or \"all\", got {k:?}")),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List simple systems with their indices and diagrams
    Borels {
        #[command(flatten)]
        target: Target,
    },
    /// Print the symmetrised and normalised Cartan data
    Cartan(Select),
    /// Print the Dynkin diagram
    Diagram(Select),
    /// Print the presentation: Serre elements with their provenance
    Relations(Select),
    /// Check the presented algebra against the root system
    Verify {
        #[command(flatten)]
        select: Select,

        /// Every Borel class (same as --borel all)
        #[arg(long)]
        all: bool,

        /// Worker threads for --all (default: all cores)
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Dimensions of the grading with deg e_d = 1 and deg e_i = 0 otherwise
    Zgrading {
        #[command(flatten)]
        select: Select,

        /// Node carrying degree one (1-based)
        #[arg(long)]
        d: usize,
    },
    /// Whether each higher-order element is needed within the height cap
    Necessity(Select),
}

/// Parameter errors are reported with exit status 2, like clap's own.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

impl Target {
    fn family(&self) -> anyhow::Result<Family> {
        let need = |x: Option<usize>, flag: &str| {
            x.ok_or_else(|| usage(format!("family {} requires --{flag}", self.family)))
        };
        let name = self.family.to_ascii_uppercase();
        if self.alpha.is_some() && name != "D21A" {
            return Err(usage("--alpha only applies to D21a"));
        }
        let family = match name.as_str() {
            "A" => Family::A {
                m: need(self.m, "m")?,
                n: need(self.n, "n")?,
            },
            "B" => Family::B {
                m: need(self.m, "m")?,
                n: need(self.n, "n")?,
            },
            "C" => Family::C {
                n: need(self.n, "n")?,
            },
            "D" => Family::D {
                m: need(self.m, "m")?,
                n: need(self.n, "n")?,
            },
            "F4" => Family::F4,
            "G3" => Family::G3,
            "D21A" => match self.alpha.as_deref() {
                None | Some("generic") => Family::d21_generic(),
                Some(s) => {
                    let a: Scalar = s.parse().map_err(|e| usage(format!("--alpha: {e}")))?;
                    if !a.is_rational() {
                        return Err(usage("--alpha must be a rational number or \"generic\""));
                    }
                    Family::D21 { alpha: a }
                }
            },
            other => {
                return Err(usage(format!(
                    "unknown family {other:?}; expected one of A, B, C, D, F4, G3, D21a"
                )))
            }
        };
        Ok(family)
    }

    fn datum(&self) -> anyhow::Result<RootDatum> {
        RootDatum::new(self.family()?).map_err(|e| usage(e.to_string()))
    }
}

impl Select {
    fn systems(&self, datum: &RootDatum) -> anyhow::Result<Vec<(usize, SimpleSystem)>> {
        let all = datum.simple_systems();
        let n = all.len();
        match self.borel {
            Borel::All => Ok(all.into_iter().enumerate().collect()),
            // The enumeration starts from the distinguished system.
            Borel::Distinguished => Ok(vec![(0, all.into_iter().next().unwrap())]),
            Borel::Index(k) if k < n => Ok(vec![(k, all.into_iter().nth(k).unwrap())]),
            Borel::Index(k) => Err(usage(format!(
                "--borel {k} out of range: {} has {n} classes (0..{})",
                datum.family(),
                n - 1
            ))),
        }
    }
}

/// Writes a payload line. A closed pipe ends the process quietly.
fn say(text: &str) {
    let mut out = std::io::stdout().lock();
    let res = if text.ends_with('\n') {
        out.write_all(text.as_bytes())
    } else {
        writeln!(out, "{text}")
    };
    if res.is_err() {
        std::process::exit(0);
    }
}

/// Joins per-class outputs: a JSON array, or text blocks separated by headers
/// when there is more than one.
fn emit(blocks: Vec<(usize, String, Value)>, format: OutFormat) {
    if format == OutFormat::Json {
        let v: Vec<Value> = blocks.into_iter().map(|(_, _, j)| j).collect();
        let out = if v.len() == 1 {
            v[0].clone()
        } else {
            Value::Array(v)
        };
        say(&serde_json::to_string_pretty(&out).unwrap());
        return;
    }
    let many = blocks.len() > 1;
    for (k, text, _) in blocks {
        if many {
            say(&format!("# borel {k}"));
        }
        say(&text);
    }
}

fn borels(t: &Target, format: OutFormat) -> anyhow::Result<()> {
    let d = t.datum()?;
    let blocks = d
        .simple_systems()
        .iter()
        .enumerate()
        .map(|(k, pi)| {
            let diagram = DynkinDiagram::new(&CartanData::new(&d, pi));
            let roots: Vec<String> = pi.roots().iter().map(|w| d.format_weight(w)).collect();
            let first = diagram
                .to_ascii()
                .lines()
                .next()
                .unwrap_or_default()
                .to_string();
            let text = format!("{k}  {first}  [{}]\n", roots.join(", "));
            let json = json!({ "index": k, "simpleRoots": roots, "diagram": diagram.to_json() });
            (k, text, json)
        })
        .collect::<Vec<_>>();
    if format == OutFormat::Json {
        let v: Vec<Value> = blocks.into_iter().map(|(_, _, j)| j).collect();
        say(&serde_json::to_string_pretty(&v)?);
    } else {
        for (_, text, _) in blocks {
            say(&text);
        }
    }
    Ok(())
}

fn cartan(s: &Select, format: OutFormat) -> anyhow::Result<()> {
    let d = s.target.datum()?;
    let blocks = s
        .systems(&d)?
        .into_iter()
        .map(|(k, pi)| {
            let cd = CartanData::new(&d, &pi);
            let text = if format == OutFormat::Latex {
                cd.to_latex()
            } else {
                cd.to_text()
            };
            (k, text, cd.to_json())
        })
        .collect();
    emit(blocks, format);
    Ok(())
}

fn diagram(s: &Select, format: OutFormat) -> anyhow::Result<()> {
    let d = s.target.datum()?;
    let blocks = s
        .systems(&d)?
        .into_iter()
        .map(|(k, pi)| {
            let g = DynkinDiagram::new(&CartanData::new(&d, &pi));
            (k, g.serialize(format.into()), g.to_json())
        })
        .collect();
    emit(blocks, format);
    Ok(())
}

fn relations(s: &Select, format: OutFormat) -> anyhow::Result<()> {
    let d = s.target.datum()?;
    let mut blocks = Vec::new();
    for (k, pi) in s.systems(&d)? {
        let p = Presentation::new(&d, &pi)?;
        let text = if format == OutFormat::Latex {
            p.to_latex()
        } else {
            p.to_text()
        };
        blocks.push((k, text, p.to_json()));
    }
    emit(blocks, format);
    Ok(())
}

fn runs(
    d: &RootDatum,
    systems: Vec<(usize, SimpleSystem)>,
    cap: Option<u32>,
) -> anyhow::Result<Vec<BorelRun>> {
    systems
        .into_par_iter()
        .map(|(k, pi)| run_borel(d, &pi, Some(k), cap).with_context(|| format!("borel {k}")))
        .collect()
}

fn verify_cmd(
    s: &Select,
    all: bool,
    jobs: Option<usize>,
    cap: Option<u32>,
    format: OutFormat,
) -> anyhow::Result<bool> {
    let d = s.target.datum()?;
    let sel = if all {
        Select {
            borel: Borel::All,
            ..s.clone()
        }
    } else {
        s.clone()
    };
    let systems = sel.systems(&d)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()?;
    let runs = pool.install(|| runs(&d, systems, cap))?;
    let pass = runs.iter().all(|r| r.report.pass);
    if format == OutFormat::Json {
        let v: Vec<Value> = runs
            .iter()
            .map(|r| r.report.to_json(r.presentation.rank()))
            .collect();
        say(&serde_json::to_string_pretty(&v)?);
    } else {
        for r in &runs {
            say(&r.report.summary());
        }
        // A failing report is followed by its full JSON for diagnosis.
        for r in runs.iter().filter(|r| !r.report.pass) {
            say(&serde_json::to_string(
                &r.report.to_json(r.presentation.rank()),
            )?);
        }
    }
    for r in &runs {
        for note in &r.report.notes {
            eprintln!("borel {}: {note}", r.report.borel.unwrap_or(0));
        }
    }
    Ok(pass)
}

fn zgrading(s: &Select, node: usize, cap: Option<u32>, format: OutFormat) -> anyhow::Result<bool> {
    let d = s.target.datum()?;
    let rank = d.rank();
    if node == 0 || node > rank {
        bail!(usage(format!("--d must lie in 1..={rank}")));
    }
    let mut pass = true;
    let mut blocks = Vec::new();
    for r in runs(&d, s.systems(&d)?, cap)? {
        let rows = compare_z_grading(&r.report.quotient, &r.roots, rank, node - 1);
        pass &= r.report.quotient.closed && rows.iter().all(|x| x.equal());
        let mut text = format!("{:>3} {:>9} {:>9}\n", "k", "dim g_k", "dim L_k");
        for x in &rows {
            text.push_str(&format!(
                "{:>3} {:>9} {:>9}\n",
                x.k, x.presented, x.reference
            ));
        }
        let json = json!({
            "borel": r.report.borel,
            "d": node,
            "closed": r.report.quotient.closed,
            "rows": rows.iter().map(|x| json!({ "k": x.k, "presented": x.presented, "reference": x.reference })).collect::<Vec<_>>(),
        });
        blocks.push((r.report.borel.unwrap_or(0), text, json));
    }
    emit(blocks, format);
    Ok(pass)
}

fn necessity(s: &Select, cap: Option<u32>, format: OutFormat) -> anyhow::Result<bool> {
    let d = s.target.datum()?;
    let mut pass = true;
    let mut blocks = Vec::new();
    for (k, pi) in s.systems(&d)? {
        let p = Presentation::new(&d, &pi)?;
        let roots = d.positive_roots(&pi)?;
        let h = height_cap(&roots, cap);
        let res = necessity_all(&p, &roots, h);
        pass &= res.iter().all(|n| n.necessary);
        let mut text = String::new();
        if res.is_empty() {
            text.push_str("no higher-order elements\n");
        }
        for n in &res {
            let element = p.e_side[n.index].to_text();
            match &n.first_excess {
                Some(m) => text.push_str(&format!(
                    "{} ({}): necessary, first excess at {:?} (dim {} > {})\n",
                    element, n.provenance, m.nu, m.got, m.expected
                )),
                None => text.push_str(&format!(
                    "{} ({}): not shown necessary below height {}\n",
                    element, n.provenance, n.max_height
                )),
            }
        }
        let json =
            json!({ "borel": k, "elements": res.iter().map(|n| n.to_json()).collect::<Vec<_>>() });
        blocks.push((k, text, json));
    }
    emit(blocks, format);
    Ok(pass)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let (cap, format) = (cli.max_height, cli.format);
    match &cli.command {
        Command::Borels { target } => borels(target, format).map(|_| true),
        Command::Cartan(s) => cartan(s, format).map(|_| true),
        Command::Diagram(s) => diagram(s, format).map(|_| true),
        Command::Relations(s) => relations(s, format).map(|_| true),
        Command::Verify { select, all, jobs } => verify_cmd(select, *all, *jobs, cap, format),
        Command::Zgrading { select, d } => zgrading(select, *d, cap, format),
        Command::Necessity(s) => necessity(s, cap, format),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
