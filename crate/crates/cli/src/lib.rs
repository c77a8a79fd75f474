//! Command-line front end. [`run`] does all the work and returns the exit
//! code plus whatever should go to stdout and stderr, so tests can drive it
//! without spawning a process.
//!
//! Exit codes: 0 for success or a true verdict, 1 for a false verdict, 2 for
//! any error (including usage errors).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use eberhard_core::format::{self, Body, Document};
use eberhard_core::growth::{grow_diamond, grow_square, grow_vertex, MarkerKind};
use eberhard_core::pipeline::{
    check_admissible, expand_polyhedral, realize_family, search_patch, FamilySpec, RealizeOptions, SearchBounds,
    SearchOutcome,
};
use eberhard_core::{catalog, verify, CountSequence, Exec, OrientedMap};

/// Caps the number of search workers. Unset or 1 means a single thread.
pub const SEARCH_WORKERS_VAR: &str = "EBERHARD_SEARCH_WORKERS";

#[derive(Debug, Parser)]
#[command(name = "eberhard", about = "Build and check polyhedral maps with prescribed face counts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate a map or patch file.
    Validate { file: PathBuf },
    /// Print counts and vectors of a map or patch file.
    Summary { file: PathBuf },
    /// Write the dual of a map.
    Dual { input: PathBuf, output: PathBuf },
    /// Check that a map is polyhedral.
    PolyhedralCheck { file: PathBuf },
    /// Check the Euler-type counting conditions for (p, v) on a surface.
    Admissible {
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
        #[arg(long)]
        p: String,
        #[arg(long)]
        v: String,
    },
    /// Replace every face of a seed by a ring of an expansion patch.
    Expand {
        #[arg(long)]
        seed: String,
        #[arg(long)]
        patch: String,
        /// Patch used for the 4-gons of the seed.
        #[arg(long)]
        pf: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Apply a growth operation at a marker of a 4-patch.
    Grow {
        #[arg(long)]
        patch: String,
        #[arg(long)]
        marker: usize,
        #[arg(long)]
        op: MarkerKind,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Realize a face family on a seed map.
    Realize {
        #[arg(long)]
        seed: String,
        #[arg(long)]
        family: eberhard_core::pipeline::Family,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        passes: u32,
        /// 4-gon filler for the 3:7 family.
        #[arg(long)]
        pf: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Search for a patch with a prescribed boundary.
    Search {
        #[arg(long)]
        outer: String,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        gons: String,
        #[arg(long)]
        max_faces: usize,
        #[arg(long, default_value_t = 4)]
        corners: usize,
        #[arg(long, default_value_t = 256)]
        max_vertices: usize,
        #[arg(long, default_value_t = 5_000_000)]
        max_nodes: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// List or print the shipped patches and seeds.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Print the graph as an adjacency list.
    ExportAdj { file: PathBuf },
}

#[derive(Debug, Subcommand)]
enum CatalogAction {
    List,
    Show { name: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: 0, stdout, stderr: String::new() }
    }

    fn verdict(holds: bool, stdout: String) -> Self {
        Self { code: if holds { 0 } else { 1 }, stdout, stderr: String::new() }
    }

    fn error(msg: impl std::fmt::Display) -> Self {
        Self { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

type CmdResult = Result<Outcome, String>;

/// Runs one command line. `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    dispatch(cli.command).unwrap_or_else(Outcome::error)
}

fn dispatch(cmd: Command) -> CmdResult {
    match cmd {
        Command::Validate { file } => validate(&file),
        Command::Summary { file } => summary(&file),
        Command::Dual { input, output } => dual(&input, &output),
        Command::PolyhedralCheck { file } => polyhedral_check(&file),
        Command::Admissible { chi, p, v } => admissible(chi, &p, &v),
        Command::Expand { seed, patch, pf, out } => expand(&seed, &patch, pf.as_deref(), &out),
        Command::Grow { patch, marker, op, k, out } => grow(&patch, marker, op, k, &out),
        Command::Realize { seed, family, k, passes, pf, out, report } => {
            realize(&seed, FamilySpec::new(family, k, passes), pf.as_deref(), out.as_deref(), report.as_deref())
        }
        Command::Search { outer, r, gons, max_faces, corners, max_vertices, max_nodes, out } => {
            let bounds = SearchBounds { max_faces, max_vertices, max_nodes, corners };
            search(&outer, r, &gons, &bounds, &out)
        }
        Command::Catalog { action: CatalogAction::List } => Ok(catalog_list()),
        Command::Catalog { action: CatalogAction::Show { name } } => catalog_show(&name),
        Command::ExportAdj { file } => Ok(Outcome::ok(format::adjacency_list(read_body(&file)?.map()))),
    }
}

fn read_text(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_body(path: &Path) -> Result<Body, String> {
    let text = read_text(path)?;
    format::parse(&text).map(|d| d.body).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_body(path: &Path, body: Body, comments: Vec<String>) -> Result<(), String> {
    let text = format::write(&Document::new(body).with_comments(comments));
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

/// A file if one exists at `arg`, otherwise a catalog patch name.
fn load_patch_arg(arg: &str) -> Result<Body, String> {
    if Path::new(arg).exists() {
        read_body(Path::new(arg))
    } else {
        catalog::get_patch(arg).map_err(|e| e.to_string())
    }
}

/// A file if one exists at `arg`, otherwise a catalog seed name.
fn load_seed_arg(arg: &str) -> Result<OrientedMap, String> {
    if Path::new(arg).exists() {
        Ok(read_body(Path::new(arg))?.map().clone())
    } else {
        catalog::get_seed(arg).map_err(|e| e.to_string())
    }
}

fn validate(file: &Path) -> CmdResult {
    let text = read_text(file)?;
    Ok(match format::parse(&text) {
        Ok(doc) => {
            let mut out = format!("valid {}\n", doc.body.kind());
            out.push_str(&describe(&doc.body));
            Outcome::ok(out)
        }
        Err(e) => Outcome::verdict(false, format!("invalid: {e}\n")),
    })
}

fn describe(body: &Body) -> String {
    let mut out = body.map().summary().to_string();
    if let Some(p) = body.patch() {
        let walk = p.boundary_walk();
        let weights: Vec<String> = walk.weights.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "r {}", p.r());
        let _ = writeln!(out, "inner_p_vector {}", p.p_vector());
        let _ = writeln!(out, "boundary_weights {}", weights.join(","));
        let _ = writeln!(out, "r_patch {}", p.is_r_patch(p.r()));
        let _ = writeln!(out, "markers {}", p.markers().len());
    }
    if let Body::Expansion(e) = body {
        let t: Vec<String> = e.outer_tuple().iter().map(u32::to_string).collect();
        let _ = writeln!(out, "outer_tuple ({})", t.join(","));
    }
    out
}

fn summary(file: &Path) -> CmdResult {
    let body = read_body(file)?;
    Ok(Outcome::ok(format!("kind {}\n{}", body.kind(), describe(&body))))
}

fn dual(input: &Path, output: &Path) -> CmdResult {
    let d = read_body(input)?.map().dual();
    let out = d.summary().to_string();
    write_body(output, Body::Map(d), vec![format!("dual of {}", input.display())])?;
    Ok(Outcome::ok(out))
}

fn polyhedral_check(file: &Path) -> CmdResult {
    let body = read_body(file)?;
    let m = body.map();
    let verdict = verify::polyhedral_verdict(m, Exec::Parallel);
    let mut out = String::new();
    if verdict.is_polyhedral() {
        out.push_str("polyhedral\n");
    } else if let Some((a, b)) = verdict.witness {
        let _ = writeln!(out, "not polyhedral: faces ({a},{b})");
    } else {
        out.push_str("not polyhedral: graph is not simple\n");
    }
    let _ = write!(out, "simplicity {}", verdict.simplicity);
    if !out.ends_with('\n') {
        out.push('\n');
    }
    let _ = writeln!(out, "improper_pair {}", verdict.witness.map_or("none".into(), |(a, b)| format!("{a},{b}")));
    if verdict.is_polyhedral() {
        let _ = writeln!(out, "three_connected {}", verify::is_three_connected(m, Exec::Parallel));
    }
    Ok(Outcome::verdict(verdict.is_polyhedral(), out))
}

fn parse_seq(s: &str) -> Result<CountSequence, String> {
    s.parse::<CountSequence>().map_err(|e| format!("{s:?}: {e}"))
}

fn admissible(chi: i64, p: &str, v: &str) -> CmdResult {
    let report = check_admissible(&parse_seq(p)?, &parse_seq(v)?, chi).map_err(|e| e.to_string())?;
    let head = if report.admissible { "admissible" } else { "not admissible" };
    Ok(Outcome::verdict(report.admissible, format!("{head}\n{report}")))
}

fn expand(seed: &str, patch: &str, pf: Option<&str>, out: &Path) -> CmdResult {
    let m = load_seed_arg(seed)?;
    let e = match load_patch_arg(patch)? {
        Body::Expansion(e) => e,
        other => return Err(format!("{patch}: expected an expansion patch, got a {}", other.kind())),
    };
    let filler = pf.map(load_patch_arg).transpose()?;
    let filler = match &filler {
        Some(b) => Some(b.patch().ok_or_else(|| "--pf must name a patch".to_string())?),
        None => None,
    };
    let ex = expand_polyhedral(&m, &e, filler, Exec::Parallel).map_err(|e| e.to_string())?;
    let mut text = ex.map.summary().to_string();
    let _ = writeln!(text, "d {}", ex.d);
    write_body(out, Body::Map(ex.map), vec![format!("expansion of {seed} with {patch}")])?;
    Ok(Outcome::ok(text))
}

fn grow(patch: &str, marker: usize, op: MarkerKind, k: usize, out: &Path) -> CmdResult {
    let body = load_patch_arg(patch)?;
    let p = body.patch().ok_or_else(|| format!("{patch}: expected a patch, got a map"))?;
    let m = *p.markers().get(marker).ok_or_else(|| format!("{patch} has no marker {marker}"))?;
    let grown = match op {
        MarkerKind::Square => grow_square(p, &m, k),
        MarkerKind::Diamond => grow_diamond(p, &m, k),
        MarkerKind::Vertex => grow_vertex(p, &m, k),
    }
    .map_err(|e| e.to_string())?;
    let new_body = match &body {
        Body::Expansion(e) => Body::Expansion(e.after_growth(&grown).map_err(|e| e.to_string())?),
        _ => Body::Patch(grown.patch),
    };
    let text = describe(&new_body);
    write_body(out, new_body, vec![format!("{patch} grown by {op} at marker {marker}, k = {k}")])?;
    Ok(Outcome::ok(text))
}

fn realize(
    seed: &str,
    spec: FamilySpec,
    pf: Option<&str>,
    out: Option<&Path>,
    report: Option<&Path>,
) -> CmdResult {
    let m = load_seed_arg(seed)?;
    let pf37 = match pf {
        Some(a) => Some(load_patch_arg(a)?.patch().ok_or_else(|| "--pf must name a patch".to_string())?.clone()),
        None => None,
    };
    let opts = RealizeOptions { pf37, check_three_connected: false, exec: Exec::Parallel };
    let rep = realize_family(&m, spec, &opts).map_err(|e| e.to_string())?;
    let text = rep.to_string();
    if let Some(path) = report {
        fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    if let Some(path) = out {
        let note = format!("family {} realized on {seed}, k = {}, passes = {}", spec.family, spec.k, spec.passes);
        write_body(path, Body::Map(rep.map), vec![note])?;
    }
    Ok(Outcome::ok(text))
}

fn parse_list(s: &str) -> Result<Vec<u32>, String> {
    s.trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|e| format!("{s:?}: {e}")))
        .collect()
}

fn search_exec() -> Result<(Exec, Option<usize>), String> {
    match std::env::var(SEARCH_WORKERS_VAR) {
        Err(_) => Ok((Exec::Sequential, None)),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(0) | Err(_) => Err(format!("{SEARCH_WORKERS_VAR} must be a positive integer, got {v:?}")),
            Ok(1) => Ok((Exec::Sequential, None)),
            Ok(n) => Ok((Exec::Parallel, Some(n))),
        },
    }
}

fn search(outer: &str, r: u32, gons: &str, bounds: &SearchBounds, out: &Path) -> CmdResult {
    let outer = parse_list(outer)?;
    let gons = parse_list(gons)?;
    let (exec, workers) = search_exec()?;
    let result = match workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| e.to_string())?
            .install(|| search_patch(&outer, r, &gons, bounds, exec)),
        None => search_patch(&outer, r, &gons, bounds, exec),
    };
    match result.map_err(|e| e.to_string())? {
        SearchOutcome::Found(p) => {
            let body = Body::Patch(p);
            let text = format!("found\n{}", describe(&body));
            write_body(out, body, vec![format!("found by search for boundary {outer:?}, gons {gons:?}")])?;
            Ok(Outcome::ok(text))
        }
        SearchOutcome::NoneWithinBounds => Ok(Outcome::verdict(false, "none within bounds\n".into())),
    }
}

fn catalog_list() -> Outcome {
    let mut out = String::from("patches\n");
    for name in catalog::patch_names() {
        let kind = catalog::get_patch(name).map(|b| b.kind()).unwrap_or("corrupt");
        let _ = writeln!(out, "  {name} {kind}");
    }
    out.push_str("seeds\n");
    for name in catalog::SEEDS {
        let _ = writeln!(out, "  {name}");
    }
    Outcome::ok(out)
}

fn catalog_show(name: &str) -> CmdResult {
    if let Ok(text) = catalog::patch_text(name) {
        return Ok(Outcome::ok(text.to_string()));
    }
    let m = catalog::get_seed(name).map_err(|e| e.to_string())?;
    Ok(Outcome::ok(format::write(&Document::new(Body::Map(m)).with_comments([format!("seed {name}")]))))
}
