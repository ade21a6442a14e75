use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use arccover::bounds::{
    aggregate_all, aggregate_bounds, nested_cycles_lower, AggregateOptions, BoundReport,
    BoundsInput, Quantity,
};
use arccover::geometry::{
    construction, svg_export, verify_drawing, Drawing, SvgOptions, VerificationReport,
};
use arccover::graph::{EmbeddedGraph, Family, Graph, GraphJson};
use arccover::mip::{build_model, solve_mip, Budget, MipStatus, Strictness};
use arccover::rational::Rational;
use arccover::Error;

#[derive(Parser)]
#[command(
    name = "arccover",
    version,
    about = "Cover-number bounds, the angle MIP, and certified arc drawings"
)]
struct Cli {
    /// Absolute tolerance for geometric checks.
    #[arg(
        long,
        global = true,
        env = "ARCCOVER_TOLERANCE",
        default_value_t = 1e-9
    )]
    tolerance: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph as JSON, e.g. `gen platonic icosahedron`.
    Gen {
        /// platonic, complete, bipartite, nested-tri, path or cycle; or a full descriptor
        family: String,
        params: Vec<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Lower and upper bounds with the rule behind each.
    Bounds {
        #[command(flatten)]
        input: InputArgs,
        /// Quantities to report (default: all that apply).
        #[arg(long = "q", value_name = "QUANTITY")]
        quantities: Vec<String>,
        /// Skip the exhaustive small-graph oracles.
        #[arg(long)]
        no_oracles: bool,
        /// Fail when an oracle exceeds its size cap instead of skipping it.
        #[arg(long)]
        strict_caps: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Solve the angle-assignment program exactly.
    Mip {
        #[command(flatten)]
        input: InputArgs,
        /// Use the closed angle domain [0, 2].
        #[arg(long, conflicts_with = "epsilon")]
        closed: bool,
        /// Use [eps, 2 - eps] for a rational eps such as 1/100.
        #[arg(long)]
        epsilon: Option<String>,
        /// Stop after this many search nodes.
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Wall-clock limit in seconds.
        #[arg(long)]
        time_limit: Option<f64>,
        /// Also write the model in LP format.
        #[arg(long)]
        lp: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Build and verify a drawing: ico7, cube4, kpq P Q, book N, nested-tri K.
    Draw {
        construction: String,
        params: Vec<usize>,
        /// Drawing JSON destination (default: stdout).
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Also write an SVG rendering (plane drawings only).
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Dashed full circles behind the arcs in the SVG.
        #[arg(long)]
        guides: bool,
    },
    /// Verify a drawing file; exit status 0 iff it is valid.
    Verify {
        drawing: PathBuf,
        /// Graph the drawing must depict.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Nested cycles, e.g. "0,1,2;3,4,5".
        #[arg(long)]
        cycles: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Family descriptor such as platonic:cube, complete:5, bipartite:3x7.
    #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
    family: Option<String>,
    /// Graph JSON file.
    #[arg(long)]
    graph: Option<PathBuf>,
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Ok,
    Invalid,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Invalid) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::SizeCap { .. } => 3,
                Error::Integrity(_) => 4,
                _ => 2,
            })
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let tol = cli.tolerance;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Validation(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    match cli.command {
        Command::Gen {
            family,
            params,
            out,
        } => cmd_gen(&family, &params, out.as_deref()),
        Command::Bounds {
            input,
            quantities,
            no_oracles,
            strict_caps,
            format,
        } => cmd_bounds(&input, &quantities, no_oracles, strict_caps, format),
        Command::Mip {
            input,
            closed,
            epsilon,
            max_nodes,
            time_limit,
            lp,
            format,
        } => {
            let strictness = match (closed, epsilon) {
                (true, _) => Strictness::Closed,
                (_, Some(e)) => Strictness::Epsilon(e.parse::<Rational>()?),
                _ => Strictness::Open,
            };
            let budget = Budget {
                max_nodes,
                time_limit: time_limit.map(Duration::from_secs_f64),
            };
            cmd_mip(&input, strictness, budget, lp.as_deref(), format)
        }
        Command::Draw {
            construction,
            params,
            out,
            svg,
            guides,
        } => cmd_draw(
            &construction,
            &params,
            out.as_deref(),
            svg.as_deref(),
            guides,
            tol,
        ),
        Command::Verify {
            drawing,
            graph,
            cycles,
            format,
        } => cmd_verify(&drawing, graph.as_deref(), cycles.as_deref(), format, tol),
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => fs::write(p, text)
            .map_err(|e| Error::Validation(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// `gen platonic cube`, `gen bipartite 3 7` or `gen bipartite:3x7`.
fn descriptor(family: &str, params: &[String]) -> Result<Family, Error> {
    if params.is_empty() {
        return family.parse();
    }
    let sep = if family.eq_ignore_ascii_case("bipartite") {
        "x"
    } else {
        ","
    };
    format!("{family}:{}", params.join(sep)).parse()
}

fn cmd_gen(family: &str, params: &[String], out: Option<&Path>) -> Result<Outcome, Error> {
    let fam = descriptor(family, params)?;
    let json = match fam.embedded()? {
        Some(e) => GraphJson::from(&e),
        None => GraphJson::from(&fam.graph()?),
    };
    emit(out, &pretty(&json))?;
    Ok(Outcome::Ok)
}

enum Input {
    Family(Family),
    File(GraphJson),
}

impl Input {
    fn load(args: &InputArgs) -> Result<Self, Error> {
        match (&args.family, &args.graph) {
            (Some(f), _) => Ok(Input::Family(f.parse()?)),
            (None, Some(p)) => Ok(Input::File(GraphJson::parse(&read(p)?)?)),
            (None, None) => Err(Error::Validation("give --family or --graph".into())),
        }
    }

    fn label(&self) -> String {
        match self {
            Input::Family(f) => f.to_string(),
            Input::File(_) => "graph".into(),
        }
    }

    fn bounds_input(&self) -> Result<BoundsInput, Error> {
        match self {
            Input::Family(f) => BoundsInput::from_family(*f),
            Input::File(j) => Ok(BoundsInput::from_graph(j.to_graph()?, j.is_embedded())),
        }
    }

    fn embedded(&self) -> Result<EmbeddedGraph, Error> {
        match self {
            Input::Family(f) => f.embedded()?.ok_or_else(|| {
                Error::Validation(format!(
                    "{f} has no built-in embedding; pass --graph with a rotation"
                ))
            }),
            Input::File(j) => j.to_embedded(),
        }
    }
}

fn show(v: Option<u64>) -> String {
    v.map_or_else(|| "-".into(), |x| x.to_string())
}

fn cmd_bounds(
    args: &InputArgs,
    quantities: &[String],
    no_oracles: bool,
    strict_caps: bool,
    format: Format,
) -> Result<Outcome, Error> {
    let input = Input::load(args)?;
    let bi = input.bounds_input()?;
    let opts = AggregateOptions {
        oracles: !no_oracles,
        strict_caps,
    };
    let reports: Vec<BoundReport> = if quantities.is_empty() {
        aggregate_all(&bi, &opts)?
    } else {
        quantities
            .iter()
            .map(|q| aggregate_bounds(&bi, q.parse::<Quantity>()?, &opts))
            .collect::<Result<_, _>>()?
    };
    match format {
        Format::Json => emit(
            None,
            &pretty(
                &json!({ "input": input.label(), "n": bi.graph.n(), "m": bi.graph.m(), "bounds": reports }),
            ),
        )?,
        Format::Text => {
            let mut s = format!(
                "{}  (n = {}, m = {})\n",
                input.label(),
                bi.graph.n(),
                bi.graph.m()
            );
            s += &format!(
                "{:<9} {:>6} {:>6}  provenance\n",
                "quantity", "lower", "upper"
            );
            for r in &reports {
                let prov: Vec<String> = r
                    .provenance
                    .iter()
                    .map(|p| format!("{}={}", p.rule, p.value))
                    .collect();
                s += &format!(
                    "{:<9} {:>6} {:>6}  {}\n",
                    r.quantity.name(),
                    show(r.lower),
                    show(r.upper),
                    prov.join(", ")
                );
            }
            emit(None, &s)?;
        }
    }
    Ok(Outcome::Ok)
}

fn cmd_mip(
    args: &InputArgs,
    strictness: Strictness,
    budget: Budget,
    lp: Option<&Path>,
    format: Format,
) -> Result<Outcome, Error> {
    let input = Input::load(args)?;
    let emb = input.embedded()?;
    let model = build_model(&emb, strictness.clone())?;
    if let Some(p) = lp {
        emit(Some(p), &model.to_lp_format())?;
    }
    let res = solve_mip(&model, budget)?;
    let status = match res.status {
        MipStatus::Optimal => "optimal",
        MipStatus::BudgetExhausted => "nonoptimal",
        MipStatus::Infeasible => "infeasible",
    };
    match format {
        Format::Json => {
            let mut v = serde_json::to_value(&res).expect("serializable");
            let time = v.as_object_mut().and_then(|o| o.remove("wall_time_secs"));
            let out = json!({
                "input": input.label(),
                "strictness": strictness,
                "nonoptimal": res.nonoptimal(),
                "result": v,
                "metadata": { "wall_time_secs": time.unwrap_or(Value::Null) },
            });
            emit(None, &pretty(&out))?;
        }
        Format::Text => {
            let s = format!(
                "{:<16} {:>5} {:>11} {:>6} {:>6} {:>8} {:>9}  {}\n{:<16} {:>5} {:>11} {:>6} {:>6} {:>8} {:>9.3}  {}\n",
                "graph", "vars", "constraints", "ang_pi", "seg>=", "nodes", "time(s)", "status",
                input.label(),
                res.size.variables,
                res.size.constraints,
                res.ang_pi_upper,
                res.seg_lower,
                res.node_count,
                res.wall_time_secs,
                status
            );
            emit(None, &s)?;
        }
    }
    Ok(Outcome::Ok)
}

#[derive(Serialize)]
struct Verified<'a> {
    #[serde(flatten)]
    drawing: &'a Drawing,
    verification: &'a VerificationReport,
}

fn cmd_draw(
    name: &str,
    params: &[usize],
    out: Option<&Path>,
    svg: Option<&Path>,
    guides: bool,
    tol: f64,
) -> Result<Outcome, Error> {
    let drawing = construction(name, params)?;
    let report = verify_drawing(&drawing, tol);
    if !report.valid {
        return Err(Error::Integrity(format!(
            "built-in construction {name} failed verification: {:?}",
            report.issues.first()
        )));
    }
    if let Some(p) = svg {
        let opts = SvgOptions {
            guides,
            ..SvgOptions::default()
        };
        emit(Some(p), &svg_export(&drawing, &opts)?)?;
    }
    let body = pretty(&Verified {
        drawing: &drawing,
        verification: &report,
    });
    match out {
        Some(p) => {
            emit(Some(p), &body)?;
            eprintln!("{}", report.summary());
        }
        None => emit(None, &body)?,
    }
    Ok(Outcome::Ok)
}

fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>, Error> {
    text.split(';')
        .filter(|c| !c.trim().is_empty())
        .map(|c| {
            c.split(',')
                .map(|v| {
                    v.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Validation(format!("bad vertex `{v}` in cycles")))
                })
                .collect()
        })
        .collect()
}

fn cmd_verify(
    path: &Path,
    graph: Option<&Path>,
    cycles: Option<&str>,
    format: Format,
    tol: f64,
) -> Result<Outcome, Error> {
    let drawing = Drawing::parse(&read(path)?)?;
    let mut report = verify_drawing(&drawing, tol);
    let mut mismatch = None;
    if let Some(g) = graph {
        let expected: Graph = GraphJson::parse(&read(g)?)?.to_graph()?;
        if expected != drawing.graph {
            mismatch = Some("the drawing depicts a different graph than the one given".to_string());
            report.valid = false;
        }
    }
    let nesting = match cycles {
        Some(c) => Some(nested_cycles_lower(&drawing, &parse_cycles(c)?, tol)?),
        None => None,
    };
    match format {
        Format::Json => emit(
            None,
            &pretty(&json!({ "report": report, "graph_mismatch": mismatch, "nesting": nesting })),
        )?,
        Format::Text => {
            let mut s = format!("{}\n", report.summary());
            for i in &report.issues {
                s += &format!("  {:?}", i.kind);
                if !i.arcs.is_empty() {
                    s += &format!(" arcs {:?}", i.arcs);
                }
                if let Some(v) = i.vertex {
                    s += &format!(" vertex {v}");
                }
                if let Some(p) = &i.point {
                    let c: Vec<String> = p.iter().map(|x| format!("{x:.9}")).collect();
                    s += &format!(" at ({})", c.join(", "));
                }
                s += &format!(": {}\n", i.detail);
            }
            if let Some(m) = &mismatch {
                s += &format!("  {m}\n");
            }
            if let Some(n) = &nesting {
                s += &format!(
                    "nested cycles: at least {} circles ({} claimed)\n",
                    n.lower, n.claimed
                );
                if let Some(note) = &n.note {
                    s += &format!("  {note}\n");
                }
            }
            emit(None, &s)?;
        }
    }
    Ok(if report.valid {
        Outcome::Ok
    } else {
        Outcome::Invalid
    })
}
