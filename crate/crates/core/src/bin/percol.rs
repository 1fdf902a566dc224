use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use percol::colouring::{colour_pipeline, ColourSource, PeriodicColouring, PipelineOptions};
use percol::hyp::{colour_budget, riemann_hurwitz_genus, SearchBudget, Signature};
use percol::io::json::{
    canonical, parse_colouring, parse_periodic_graph, parse_periodic_graph_unchecked, serialize_colouring,
    serialize_periodic_graph, to_canonical,
};
use percol::io::svg::{render_svg, RenderMode};
use percol::io::corpus;
use percol::linegraph::{check_edge_colouring, check_orientation, periodic_edge_colouring, periodic_orientation};
use percol::reduction::{reduce_to_3connected, PaletteMode};
use percol::verify::{check_periodic, check_proper};
use percol::voltage::{estimate_ends, GroupKind, PeriodicGraph};
use percol::{Error, Result};

#[derive(Parser)]
#[command(name = "percol", version, about = "Periodic colourings of quasi-transitive planar graphs")]
struct Cli {
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest coset table the hyperbolic subgroup search may build.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Patch radius for checks and rendering.
    #[arg(long, global = true)]
    radius: Option<usize>,
    /// Write the main artifact (graph, colouring, orientation, SVG) here.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Input {
    /// Periodic graph: a JSON file or `examples:NAME`.
    input: String,
}

#[derive(Subcommand)]
enum Command {
    /// Check the invariants of a periodic graph.
    Validate(Input),
    /// Estimate the number of ends.
    Ends(Input),
    /// Reduce to a 3-connected graph, recording the atoms removed.
    Reduce(Input),
    /// Periodic proper vertex colouring.
    Colour {
        #[command(flatten)]
        input: Input,
        /// Palette mode when reattaching atoms.
        #[arg(long, default_value = "reuse")]
        palette_mode: PaletteMode,
    },
    /// Periodic proper edge colouring via the line graph.
    EdgeColour(Input),
    /// Periodic acyclic orientation from a colouring.
    Orient {
        #[command(flatten)]
        input: Input,
        /// Colouring JSON; computed when absent.
        #[arg(long)]
        colouring: Option<PathBuf>,
    },
    /// Check a colouring for properness and periodicity.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Colouring JSON; computed when absent.
        #[arg(long)]
        colouring: Option<PathBuf>,
        /// Sampled vertices for the periodicity check.
        #[arg(long, default_value_t = 64)]
        sample: usize,
    },
    /// Genus of the quotient surface for a signature and index.
    Genus {
        /// `g,m1,m2,...`
        #[arg(long)]
        signature: String,
        #[arg(long)]
        index: u64,
    },
    /// Colour bounds for a surface of the given genus.
    Budget {
        #[arg(long)]
        genus: u64,
    },
    /// SVG of a patch, optionally coloured.
    Render {
        #[command(flatten)]
        input: Input,
        /// euclidean | poincare; follows the group when absent.
        #[arg(long)]
        mode: Option<RenderMode>,
        /// Colour with the pipeline.
        #[arg(long)]
        colour: bool,
        /// Colouring JSON to draw.
        #[arg(long, conflicts_with = "colour")]
        colouring: Option<PathBuf>,
    },
    /// List the bundled examples, or print one as JSON.
    Examples {
        name: Option<String>,
    },
}

/// Exit status plus what to print.
struct Outcome {
    ok: bool,
    report: Value,
    text: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            // a closed pipe is not an error worth panicking over
            let mut stdout = std::io::stdout().lock();
            let _ = match cli.format {
                Format::Json => write!(stdout, "{}", canonical(&out.report)),
                Format::Text => writeln!(stdout, "{}", out.text),
            };
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            match cli.format {
                Format::Json => print!(
                    "{}",
                    canonical(&json!({"error": e.to_string(), "exit": e.exit_code()}))
                ),
                Format::Text => eprintln!("percol: {e}"),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn load_graph(input: &str) -> Result<PeriodicGraph> {
    match input.strip_prefix("examples:") {
        Some(name) => corpus::by_name(name),
        None => parse_periodic_graph(&read(&PathBuf::from(input))?),
    }
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::argument(format!("cannot read {}: {e}", path.display())))
}

fn write_artifact(cli: &Cli, content: &str) -> Result<Option<String>> {
    match &cli.output {
        Some(p) => {
            fs::write(p, content).map_err(|e| Error::resource(format!("cannot write {}: {e}", p.display())))?;
            Ok(Some(p.display().to_string()))
        }
        None => Ok(None),
    }
}

fn options(cli: &Cli) -> PipelineOptions {
    let mut o = PipelineOptions::default();
    if let Some(b) = cli.budget {
        o.search = SearchBudget::with_max_cosets(b);
    }
    o
}

fn default_radius(pg: &PeriodicGraph) -> usize {
    match pg.kind() {
        GroupKind::EuclideanLattice => 16,
        GroupKind::Fuchsian => 3,
    }
}

fn value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serialisable")
}

fn colouring_for(cli: &Cli, pg: &PeriodicGraph, file: &Option<PathBuf>) -> Result<PeriodicColouring> {
    match file {
        Some(p) => parse_colouring(&read(p)?, pg),
        None => Ok(colour_pipeline(pg, &options(cli))?.colouring),
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Validate(i) => {
            let pg = match i.input.strip_prefix("examples:") {
                Some(name) => corpus::by_name(name)?,
                None => parse_periodic_graph_unchecked(&read(&PathBuf::from(&i.input))?)?,
            };
            let rep = pg.validate();
            Ok(Outcome {
                ok: rep.is_pass(),
                text: format!("validate {}: {rep}", i.input),
                report: json!({"input": i.input, "pass": rep.is_pass(), "violations": value(&rep.violations)}),
            })
        }
        Command::Ends(i) => {
            let pg = load_graph(&i.input)?;
            let big = cli.radius.unwrap_or(6).max(2);
            let r = (big / 3).max(1);
            let ends = estimate_ends(&pg, r, big)?;
            Ok(Outcome {
                ok: true,
                text: format!("ends {ends} (balls of radius {r} inside {big})"),
                report: json!({"ends": ends, "r": r, "R": big}),
            })
        }
        Command::Reduce(i) => {
            let pg = load_graph(&i.input)?;
            let (reduced, trace) = reduce_to_3connected(&pg)?;
            let written = write_artifact(cli, &serialize_periodic_graph(&reduced))?;
            let counts = percol::reduction::stage_orbit_counts(&trace);
            let mut text = format!(
                "{} reduction step(s); orbits per stage {:?}; final connectivity {}",
                trace.steps.len(),
                counts,
                trace.final_connectivity
            );
            for (k, s) in trace.steps.iter().enumerate() {
                text.push_str(&format!(
                    "\n  step {k}: {}-cut atoms, {} orbit(s) removed, {} dart(s) inserted",
                    s.connectivity_case,
                    s.removed_orbits.len(),
                    s.inserted.len()
                ));
            }
            if let Some(p) = &written {
                text.push_str(&format!("\nreduced graph written to {p}"));
            }
            Ok(Outcome {
                ok: true,
                text,
                report: json!({"trace": value(&trace), "stage_orbit_counts": counts, "output": written}),
            })
        }
        Command::Colour { input, palette_mode } => {
            let pg = load_graph(&input.input)?;
            let mut opts = options(cli);
            opts.palette_mode = *palette_mode;
            let out = colour_pipeline(&pg, &opts)?;
            let written = write_artifact(cli, &serialize_colouring(&out.colouring))?;
            let r = &out.report;
            let mut text = format!(
                "palette {}, index {}, quotient {} vertices / {} edges, strategy {}",
                r.palette, r.index, r.quotient_vertices, r.quotient_edges, r.strategy
            );
            if r.reduction_steps > 0 {
                text.push_str(&format!("\nreduction steps {}, widened {:?}", r.reduction_steps, r.widened));
            }
            if r.group == GroupKind::Fuchsian {
                text.push_str(&format!("\ngenus {}, Ringel-Youngs bound {}", r.genus, r.ringel_youngs));
            }
            if let Some(p) = &written {
                text.push_str(&format!("\ncolouring written to {p}"));
            }
            Ok(Outcome {
                ok: true,
                text,
                report: json!({"report": value(r), "colouring": serde_json::from_str::<Value>(&serialize_colouring(&out.colouring)).unwrap()}),
            })
        }
        Command::EdgeColour(i) => {
            let pg = load_graph(&i.input)?;
            let ec = periodic_edge_colouring(&pg, &options(cli))?;
            let check = check_edge_colouring(&ec, &pg, cli.radius.unwrap_or(8))?;
            let written = write_artifact(cli, &serialize_colouring(&ec.colouring))?;
            let mut text = format!(
                "{}\nedge palette {}, {} edge orbit(s), incidence check at radius {}: {}",
                ec.check.summary(),
                ec.colouring.palette,
                ec.edge_orbits.len(),
                check.radius,
                if check.pass { "pass" } else { "FAIL" }
            );
            if let Some(p) = &written {
                text.push_str(&format!("\nline-graph colouring written to {p}"));
            }
            Ok(Outcome {
                ok: check.pass,
                text,
                report: json!({
                    "planarity": value(&ec.check),
                    "palette": ec.colouring.palette,
                    "edge_orbits": ec.edge_orbits.len(),
                    "report": value(&ec.report),
                    "incidence": value(&check),
                }),
            })
        }
        Command::Orient { input, colouring } => {
            let pg = load_graph(&input.input)?;
            let pc = colouring_for(cli, &pg, colouring)?;
            let o = periodic_orientation(&pc, &pg)?;
            let rep = check_orientation(&o, &pg, cli.radius.unwrap_or(8))?;
            let written = write_artifact(cli, &to_canonical(&o))?;
            let mut text = format!(
                "orientation over {} quotient vertices; radius {}: {} edges, antisymmetry failures {}, invariance failures {}: {}",
                o.forward.len(),
                rep.radius,
                rep.edges,
                rep.antisymmetry_failures,
                rep.invariance_failures,
                if rep.pass { "pass" } else { "FAIL" }
            );
            if let Some(p) = &written {
                text.push_str(&format!("\norientation written to {p}"));
            }
            Ok(Outcome {
                ok: rep.pass,
                text,
                report: json!({"orientation": value(&o), "check": value(&rep)}),
            })
        }
        Command::Verify {
            input,
            colouring,
            sample,
        } => {
            let pg = load_graph(&input.input)?;
            let pc = colouring_for(cli, &pg, colouring)?;
            let r = cli.radius.unwrap_or_else(|| default_radius(&pg));
            let proper = check_proper(&pc as &dyn ColourSource, &pg, r)?;
            let periodic = check_periodic(&pc, &pg, *sample, cli.seed)?;
            let ok = proper.pass && periodic.pass;
            let mut text = format!(
                "proper at radius {} ({} vertices, {} edges): {}\nperiodic under {} generator(s), {} checks, seed {}: {}",
                r,
                proper.vertices,
                proper.edges,
                if proper.pass { "pass" } else { "FAIL" },
                periodic.generators,
                periodic.checks,
                periodic.seed,
                if periodic.pass { "pass" } else { "FAIL" }
            );
            for (a, b) in proper.monochromatic.iter().take(5) {
                text.push_str(&format!("\n  monochromatic edge {a} -- {b}"));
            }
            Ok(Outcome {
                ok,
                text,
                report: json!({"pass": ok, "proper": value(&proper), "periodic": value(&periodic)}),
            })
        }
        Command::Genus { signature, index } => {
            let sig = parse_signature(signature)?;
            let g = riemann_hurwitz_genus(&sig, *index)?;
            Ok(Outcome {
                ok: true,
                text: g.to_string(),
                report: json!({"signature": value(&sig), "index": index, "genus": g}),
            })
        }
        Command::Budget { genus } => {
            let b = colour_budget(*genus)?;
            Ok(Outcome {
                ok: true,
                text: format!("ringel-youngs {}\nthomassen threshold {}", b.ringel_youngs, b.thomassen_threshold),
                report: json!({"genus": genus, "ringel_youngs": b.ringel_youngs, "thomassen_threshold": b.thomassen_threshold.to_string()}),
            })
        }
        Command::Render {
            input,
            mode,
            colour,
            colouring,
        } => {
            let pg = load_graph(&input.input)?;
            let mode = mode.unwrap_or(match pg.kind() {
                GroupKind::EuclideanLattice => RenderMode::Euclidean,
                GroupKind::Fuchsian => RenderMode::Poincare,
            });
            let pc = if *colour || colouring.is_some() {
                Some(colouring_for(cli, &pg, colouring)?)
            } else {
                None
            };
            let r = cli.radius.unwrap_or(match pg.kind() {
                GroupKind::EuclideanLattice => 6,
                GroupKind::Fuchsian => 3,
            });
            let svg = render_svg(&pg, pc.as_ref().map(|c| c as &dyn ColourSource), r, mode)?;
            match write_artifact(cli, &svg)? {
                Some(p) => Ok(Outcome {
                    ok: true,
                    text: format!("svg written to {p}"),
                    report: json!({"output": p, "radius": r}),
                }),
                None => Ok(Outcome {
                    ok: true,
                    report: json!({"svg": svg, "radius": r}),
                    text: svg.trim_end().to_string(),
                }),
            }
        }
        Command::Examples { name } => match name {
            None => {
                let width = corpus::EXAMPLES.iter().map(|e| e.0.len()).max().unwrap_or(0);
                let text = corpus::EXAMPLES
                    .iter()
                    .map(|(n, d)| format!("{n:width$}  {d}"))
                    .collect::<Vec<_>>()
                    .join("\n");
                let list: Vec<Value> = corpus::EXAMPLES.iter().map(|(n, d)| json!({"name": n, "description": d})).collect();
                Ok(Outcome {
                    ok: true,
                    text,
                    report: Value::Array(list),
                })
            }
            Some(n) => {
                let doc = serialize_periodic_graph(&corpus::by_name(n)?);
                let written = write_artifact(cli, &doc)?;
                Ok(Outcome {
                    ok: true,
                    text: match &written {
                        Some(p) => format!("{n} written to {p}"),
                        None => doc.trim_end().to_string(),
                    },
                    report: serde_json::from_str(&doc).unwrap(),
                })
            }
        },
    }
}

fn parse_signature(s: &str) -> Result<Signature> {
    let nums = s
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::argument(format!("signature {s:?}: {e}")))?;
    match nums.split_first() {
        Some((g, periods)) => Ok(Signature::new(*g, periods.to_vec())),
        None => Err(Error::argument("empty signature")),
    }
}
