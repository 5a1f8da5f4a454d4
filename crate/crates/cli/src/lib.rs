//! Command line front end: argument types, dispatch and exit codes.

pub mod render;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use simpledraw::caratheodory::enclosing_cycle;
use simpledraw::catalog;
use simpledraw::ers::{ers_of, weakly_isomorphic};
use simpledraw::explore::{component, flip_distance, Distance};
use simpledraw::flips::{apply_flip, parity, replay, tricells, FlipSequence};
use simpledraw::graphs::{is_complete_multipartite, Graph, Multipartite};
use simpledraw::transform::transform_with_stats;
use simpledraw::{canonical_key, Drawing, Error, PlanarMap};

pub const EXIT_OK: i32 = 0;
/// A well-formed question answered "no", or an I/O problem.
pub const EXIT_NO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "sdraw",
    version,
    about = "Simple drawings, extended rotation systems and triangle flips"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Seed for commands that sample.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a drawing file; exit 2 if it is not a simple drawing.
    Validate { file: PathBuf },
    /// Print the extended rotation system.
    Ers { file: PathBuf },
    /// Compare two drawings of the same graph; exit 0 iff strongly isomorphic.
    Iso { a: PathBuf, b: PathBuf },
    /// Complete multipartite partition of the underlying graph.
    Partition { file: PathBuf },
    /// List the tricells with their parities.
    Flips { file: PathBuf },
    /// Flip the tricell bounded by three edges.
    Flip {
        file: PathBuf,
        /// Comma separated edge ids.
        #[arg(long, value_delimiter = ',', num_args = 3)]
        edges: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Flip sequence turning the first drawing into the second.
    Transform {
        d1: PathBuf,
        d2: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report per-edge routing and sweep measurements.
        #[arg(long)]
        trace: bool,
    },
    /// Apply a flip sequence.
    Replay {
        file: PathBuf,
        sequence: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exit 0 iff the result is strongly isomorphic to this drawing.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Exact flip distance by bidirectional search.
    Distance {
        d1: PathBuf,
        d2: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Flip graph component of a drawing.
    Component {
        file: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        /// Write the canonical keys, one per line.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A 3- or 4-cycle separating face `p` from `outer`; all pairs if omitted.
    Caratheodory {
        file: PathBuf,
        #[arg(long)]
        outer: Option<String>,
        #[arg(long)]
        p: Option<String>,
    },
    /// Named constructions.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Draw as SVG.
    Render {
        file: PathBuf,
        #[arg(long)]
        outer: Option<String>,
        #[arg(long)]
        shade_tricells: bool,
        #[arg(long)]
        no_labels: bool,
        #[arg(long, default_value_t = 600.0)]
        size: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random straight-line complete multipartite drawing.
    Sample {
        /// Class sizes, e.g. 3,3.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Vertices in convex position.
        #[arg(long)]
        convex: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
    Build {
        name: String,
        params: Vec<usize>,
        /// Directory for the drawings and a metadata file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Result of a command: what to print and the exit code.
pub struct Outcome {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Outcome {
        Outcome {
            code: EXIT_OK,
            text,
            json,
        }
    }

    fn with(code: i32, text: String, json: Value) -> Outcome {
        Outcome { code, text, json }
    }
}

pub enum Failure {
    Engine(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Io(_) => EXIT_NO,
            Failure::Engine(Error::InvalidDrawing(_)) => EXIT_INVALID,
            Failure::Engine(Error::Invariant(_)) => EXIT_NO,
            Failure::Engine(_) => EXIT_PRECONDITION,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Io(s) => s.clone(),
            Failure::Engine(e) => e.to_string(),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Res<()> {
    std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Res<Drawing> {
    let d = Drawing::from_json(&read(path)?)?;
    d.ensure_valid()?;
    Ok(d)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("engine types serialize")
}

fn drawing_value(d: &Drawing) -> Value {
    serde_json::from_str(&d.to_json()).expect("drawing json")
}

/// Write `d` to `out`, or put it in the outcome.
fn emit_drawing(
    d: &Drawing,
    out: &Option<PathBuf>,
    text: &mut String,
    json: &mut Value,
) -> Res<()> {
    match out {
        Some(p) => {
            write(p, &d.to_json())?;
            let _ = writeln!(text, "wrote {}", p.display());
            json["written"] = json!(p.display().to_string());
        }
        None => {
            text.push_str(&d.to_json());
            text.push('\n');
            json["drawing"] = drawing_value(d);
        }
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Res<Outcome> {
    match &cli.command {
        Command::Validate { file } => {
            let d = match Drawing::from_json(&read(file)?) {
                Ok(d) => d,
                Err(e) => {
                    let msg = e.to_string();
                    return Ok(Outcome::with(
                        EXIT_INVALID,
                        format!("invalid\n  {msg}\n"),
                        json!({"valid": false, "violations": [msg]}),
                    ));
                }
            };
            let rep = d.validate();
            let mut text = String::from(if rep.is_valid() {
                "valid\n"
            } else {
                "invalid\n"
            });
            for v in &rep.violations {
                let _ = writeln!(text, "  violation: {v}");
            }
            for w in &rep.warnings {
                let _ = writeln!(text, "  warning: {w}");
            }
            let code = if rep.is_valid() {
                EXIT_OK
            } else {
                EXIT_INVALID
            };
            Ok(Outcome::with(
                code,
                text,
                json!({"valid": rep.is_valid(), "violations": rep.violations, "warnings": rep.warnings}),
            ))
        }
        Command::Ers { file } => {
            let d = load(file)?;
            let e = ers_of(&d);
            let mut text = String::new();
            for (v, r) in &e.vertex_rotations {
                let _ = writeln!(text, "{v}: {}", r.join(" "));
            }
            for (k, r) in &e.crossing_rotations {
                let _ = writeln!(text, "{k}: {}", r.join(" "));
            }
            Ok(Outcome::ok(text, to_value(&e)))
        }
        Command::Iso { a, b } => {
            let (a, b) = (load(a)?, load(b)?);
            let weak = weakly_isomorphic(&a, &b)?;
            let ers = ers_of(&a) == ers_of(&b);
            let strong = simpledraw::ers::strongly_isomorphic(&a, &b)?;
            let text = format!(
                "weakly isomorphic: {weak}\nsame ERS: {ers}\nstrongly isomorphic: {strong}\n"
            );
            let code = if strong { EXIT_OK } else { EXIT_NO };
            Ok(Outcome::with(
                code,
                text,
                json!({"weakly_isomorphic": weak, "ers_equal": ers, "strongly_isomorphic": strong}),
            ))
        }
        Command::Partition { file } => {
            let d = load(file)?;
            match is_complete_multipartite(&Graph::of(&d)) {
                Multipartite::Partition(p) => {
                    let text = p
                        .iter()
                        .map(|c| c.join(" "))
                        .collect::<Vec<_>>()
                        .join(" | ")
                        + "\n";
                    Ok(Outcome::ok(text, json!({"partition": p})))
                }
                Multipartite::Witness { edge, vertex } => Ok(Outcome::with(
                    EXIT_NO,
                    format!("not complete multipartite: {vertex} sees neither end of {edge}\n"),
                    json!({"partition": null, "edge": edge, "vertex": vertex}),
                )),
            }
        }
        Command::Flips { file } => {
            let d = load(file)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for t in tricells(&d)? {
                let p = parity(&d, &t)?;
                let _ = writeln!(
                    text,
                    "{} | {} | {p}",
                    t.edges.join(","),
                    t.crossings.join(",")
                );
                rows.push(json!({"edges": t.edges, "crossings": t.crossings, "face": t.face, "parity": p}));
            }
            Ok(Outcome::ok(text, json!({"tricells": rows})))
        }
        Command::Flip { file, edges, out } => {
            let d = load(file)?;
            let mut want = edges.clone();
            want.sort();
            let t = tricells(&d)?
                .into_iter()
                .find(|t| t.edges.to_vec() == want)
                .ok_or_else(|| Error::NotATricell(edges.join(",")))?;
            let n = apply_flip(&d, &t)?;
            let (mut text, mut json) = (String::new(), json!({}));
            emit_drawing(&n, out, &mut text, &mut json)?;
            Ok(Outcome::ok(text, json))
        }
        Command::Transform { d1, d2, out, trace } => {
            let (a, b) = (load(d1)?, load(d2)?);
            let o = transform_with_stats(&a, &b)?;
            let mut text = String::new();
            let mut json = json!({"flips": o.sequence.len()});
            match out {
                Some(p) => {
                    write(p, &o.sequence.to_text())?;
                    let _ = writeln!(text, "{} flips, wrote {}", o.sequence.len(), p.display());
                }
                None => {
                    text.push_str(&o.sequence.to_text());
                    json["sequence"] = to_value(&o.sequence);
                }
            }
            if *trace {
                for e in &o.stats.edges {
                    let _ = writeln!(
                        text,
                        "# {}: host vertices {}, intersections {:?}, flips {}",
                        e.edge, e.host_vertices, e.intersections, e.flips
                    );
                }
                let _ = writeln!(
                    text,
                    "# sweeps {}, total flips {}",
                    o.stats.sweeps.len(),
                    o.stats.total_flips
                );
                json["stats"] = to_value(&o.stats);
            }
            Ok(Outcome::ok(text, json))
        }
        Command::Replay {
            file,
            sequence,
            out,
            target,
        } => {
            let d = load(file)?;
            let seq = FlipSequence::parse(&read(sequence)?)?;
            let r = replay(&d, &seq)?;
            let (mut text, mut json) = (String::new(), json!({"flips": seq.len()}));
            emit_drawing(&r, out, &mut text, &mut json)?;
            let mut code = EXIT_OK;
            if let Some(t) = target {
                let same = canonical_key(&r) == canonical_key(&load(t)?);
                let _ = writeln!(text, "matches target: {same}");
                json["matches_target"] = json!(same);
                if !same {
                    code = EXIT_NO;
                }
            }
            Ok(Outcome::with(code, text, json))
        }
        Command::Distance { d1, d2, budget } => {
            let (a, b) = (load(d1)?, load(d2)?);
            let r = flip_distance(&a, &b, *budget)?;
            Ok(match r {
                Distance::Steps(k) => Outcome::ok(format!("{k}\n"), json!({"distance": k})),
                Distance::Unreachable => Outcome::with(
                    EXIT_NO,
                    "unreachable\n".into(),
                    json!({"distance": null, "unreachable": true}),
                ),
                Distance::BudgetExceeded => Outcome::with(
                    EXIT_BUDGET,
                    "budget exceeded\n".into(),
                    json!({"distance": null, "budget_exceeded": true}),
                ),
            })
        }
        Command::Component { file, budget, out } => {
            let d = load(file)?;
            let c = component(&d, *budget)?;
            if let Some(p) = out {
                write(p, &(c.keys.join("\n") + "\n"))?;
            }
            let text = format!(
                "{} drawings{}\n",
                c.keys.len(),
                if c.complete { "" } else { " (budget exceeded)" }
            );
            let code = if c.complete { EXIT_OK } else { EXIT_BUDGET };
            Ok(Outcome::with(
                code,
                text,
                json!({"size": c.keys.len(), "complete": c.complete}),
            ))
        }
        Command::Caratheodory { file, outer, p } => {
            caratheodory_cmd(&load(file)?, outer.as_deref(), p.as_deref())
        }
        Command::Catalog { action } => catalog_cmd(action),
        Command::Render {
            file,
            outer,
            shade_tricells,
            no_labels,
            size,
            out,
        } => {
            let d = load(file)?;
            let spec = render::RenderSpec {
                outer: outer.clone(),
                size: *size,
                labels: !no_labels,
                shade_tricells: *shade_tricells,
                ..Default::default()
            };
            let svg = render::render(&d, &spec)?;
            match out {
                Some(p) => {
                    write(p, &svg)?;
                    Ok(Outcome::ok(
                        format!("wrote {}\n", p.display()),
                        json!({"written": p.display().to_string()}),
                    ))
                }
                None => Ok(Outcome::ok(svg.clone(), json!({"svg": svg}))),
            }
        }
        Command::Sample { sizes, convex, out } => {
            let d = if *convex {
                catalog::sample_convex(sizes, cli.seed)?
            } else {
                catalog::sample_geometric(sizes, cli.seed)?
            };
            let (mut text, mut json) = (String::new(), json!({"crossings": d.crossings.len()}));
            emit_drawing(&d, out, &mut text, &mut json)?;
            Ok(Outcome::ok(text, json))
        }
    }
}

fn caratheodory_cmd(d: &Drawing, outer: Option<&str>, p: Option<&str>) -> Res<Outcome> {
    if let (Some(o), Some(p)) = (outer, p) {
        return Ok(match enclosing_cycle(d, o, p)? {
            Some(e) => Outcome::ok(
                format!("{} via {}\n", e.cycle.join("-"), e.edges.join(",")),
                to_value(&e),
            ),
            None => Outcome::with(
                EXIT_NO,
                "no 3- or 4-cycle separates p from outer\n".into(),
                json!({"enclosure": null}),
            ),
        });
    }
    if outer.is_some() || p.is_some() {
        return Err(Error::BadParams("give both --outer and --p, or neither".into()).into());
    }
    let keys = PlanarMap::build(d).keys;
    let mut missing = Vec::new();
    let mut pairs = 0usize;
    for o in &keys {
        for q in &keys {
            if o != q {
                pairs += 1;
                if enclosing_cycle(d, o, q)?.is_none() {
                    missing.push(json!({"outer": o, "p": q}));
                }
            }
        }
    }
    let text = format!(
        "{pairs} face pairs, {} without an enclosing 3- or 4-cycle\n",
        missing.len()
    );
    let code = if missing.is_empty() { EXIT_OK } else { EXIT_NO };
    Ok(Outcome::with(
        code,
        text,
        json!({"pairs": pairs, "unenclosed": missing}),
    ))
}

fn catalog_cmd(action: &CatalogAction) -> Res<Outcome> {
    match action {
        CatalogAction::List => {
            let entries = catalog::list();
            let mut text = String::new();
            for e in &entries {
                let _ = writeln!(text, "{:<24} {:<34} {}", e.name, e.params, e.summary);
            }
            Ok(Outcome::ok(text, to_value(&entries)))
        }
        CatalogAction::Build { name, params, out } => {
            let e = catalog::build(name, params)?;
            let meta = to_value(&e);
            let mut text = String::new();
            let _ = writeln!(
                text,
                "{}{:?}: {} drawing(s)",
                e.name,
                e.params,
                e.drawings.len()
            );
            if let Some(r) = &e.relations {
                let _ = writeln!(
                    text,
                    "ers_equal {} strongly_isomorphic {} transformable {}",
                    r.ers_equal, r.strongly_isomorphic, r.transformable
                );
            }
            if let Some(c) = &e.certificate {
                let _ = writeln!(
                    text,
                    "certificate on {}: {} vs {}",
                    c.edge,
                    c.order1.join(","),
                    c.order2.join(",")
                );
            }
            if let (Some(o), Some(p)) = (&e.outer, &e.p) {
                let _ = writeln!(text, "outer {o}\np {p}");
            }
            if let Some(b) = e.flip_lower_bound {
                let _ = writeln!(text, "at least {b} flips");
            }
            if !e.note.is_empty() {
                let _ = writeln!(text, "{}", e.note);
            }
            let mut json = json!({"entry": meta});
            match out {
                Some(dir) => {
                    std::fs::create_dir_all(dir)
                        .map_err(|x| Failure::Io(format!("{}: {x}", dir.display())))?;
                    let mut files = Vec::new();
                    for d in &e.drawings {
                        let p = dir.join(format!("{}.sdraw", d.name));
                        write(&p, &d.to_json())?;
                        files.push(p.display().to_string());
                    }
                    let p = dir.join(format!("{}.json", e.name));
                    write(&p, &serde_json::to_string_pretty(&meta).expect("json"))?;
                    files.push(p.display().to_string());
                    let _ = writeln!(text, "wrote {}", files.join(", "));
                    json["written"] = json!(files);
                }
                None => {
                    json["drawings"] = Value::Array(e.drawings.iter().map(drawing_value).collect());
                }
            }
            Ok(Outcome::ok(text, json))
        }
    }
}

/// Parse, run, print; returns the process exit code.
pub fn main_with(
    args: impl IntoIterator<Item = String>,
    stdout: &mut dyn std::io::Write,
    stderr: &mut dyn std::io::Write,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(o) => {
            let _ = match cli.format {
                Format::Text => write!(stdout, "{}", o.text),
                Format::Json => writeln!(
                    stdout,
                    "{}",
                    serde_json::to_string_pretty(&o.json).expect("json")
                ),
            };
            o.code
        }
        Err(f) => {
            match cli.format {
                Format::Text => {
                    let _ = writeln!(stderr, "error: {}", f.message());
                }
                Format::Json => {
                    let _ = writeln!(
                        stdout,
                        "{}",
                        json!({"error": f.message(), "exit": f.code()})
                    );
                }
            }
            f.code()
        }
    }
}
