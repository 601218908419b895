//! `mapcalc`: command-line front end for the map library.
//!
//! Exit codes: 0 success or theorem holds, 1 theorem violated or validation
//! failed, 2 usage or parse error, 3 not applicable or not found.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mapcalc::codec::{
    embedding_to_map, parse_gem, parse_gem_unchecked, parse_graph, parse_rotation, parse_word,
    write_gem, write_rotation, zigzag_map_from_word,
};
use mapcalc::search::{enumerate_maps, search_embedding};
use mapcalc::theorems::{check_absorption, check_theorem2, check_theorem3, check_theorem4};
use mapcalc::zigzag::{vertex_word, word_operators};
use mapcalc::{
    Budget, CodecError, FlagMap, GonKind, LinearOp, LoopBalance, RolePerm, TheoremReport,
};

#[derive(Parser)]
#[command(
    name = "mapcalc",
    version,
    about = "Graph-encoded maps, dualities and zigzag operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a map file describes a valid connected map
    Validate { file: PathBuf },
    /// Gon counts, Euler characteristic, orientability and loop balances
    Info { file: PathBuf },
    /// Apply a role permutation to all or some edges
    Omega {
        file: PathBuf,
        /// New roles (s, l, d) in terms of old ones: lsd = dual, dls = phial, sdl = antimap
        #[arg(long)]
        perm: RolePerm,
        /// 1-based edge ids to permute (default: all)
        #[arg(long, value_delimiter = ',')]
        rects: Option<Vec<usize>>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the signed word of a gon that crosses every edge twice
    Word {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Z)]
        kind: Kind,
        /// 1-based gon index
        #[arg(long, default_value_t = 1)]
        gon: usize,
    },
    /// Print the c_P, c_P~ and c_D matrices when defined
    Ops { file: PathBuf },
    /// Check the absorption and zigzag-operator theorems
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Which::All)]
        theorem: Which,
        #[arg(long)]
        json: bool,
    },
    /// Build the single-zigzag map of a signed word and write it as .gem
    FromWord {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search for an embedding with one face and one zigzag
    Search {
        /// Edge list (`graph n` / `e u w`) or rotation file
        file: PathBuf,
        /// Maximum number of candidate embeddings
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        /// Maximum total number of subdivision vertices
        #[arg(long, default_value_t = 0)]
        subdiv: usize,
        #[arg(long, env = "MAPCALC_SEED", default_value_t = 0)]
        seed: u64,
        /// Worker threads (default: all cores)
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the found rotation system here
        #[arg(long)]
        rotation: Option<PathBuf>,
    },
    /// Enumerate every connected map with a given number of edges
    Enumerate {
        #[arg(long)]
        size: usize,
        /// Identify maps that differ by relabelling edges
        #[arg(long)]
        dedup: bool,
        /// Check absorption on every map
        #[arg(long)]
        verify_absorption: bool,
        /// Print every map in .gem form
        #[arg(long)]
        print: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    V,
    F,
    Z,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    #[value(name = "4")]
    Four,
    All,
}

/// A non-zero outcome with its one-line diagnostic.
struct Exit {
    code: u8,
    message: String,
}

impl Exit {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn not_applicable(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: format!("not applicable: {}", message.into()),
        }
    }
}

type Outcome = Result<(), Exit>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mapcalc: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { file } => validate(&file),
        Command::Info { file } => info(&file),
        Command::Omega {
            file,
            perm,
            rects,
            output,
        } => omega(&file, perm, rects, output.as_deref()),
        Command::Word { file, kind, gon } => word(&file, kind, gon),
        Command::Ops { file } => ops(&file),
        Command::Verify {
            file,
            theorem,
            json,
        } => verify(&file, theorem, json),
        Command::FromWord { file, output } => from_word(&file, output.as_deref()),
        Command::Search {
            file,
            budget,
            subdiv,
            seed,
            jobs,
            output,
            rotation,
        } => {
            let budget = Budget {
                max_subdivisions: subdiv,
                max_candidates: budget,
                ..Budget::default()
            };
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()
                .map_err(|e| Exit::usage(e.to_string()))?;
            pool.install(|| search(&file, &budget, seed, output.as_deref(), rotation.as_deref()))
        }
        Command::Enumerate {
            size,
            dedup,
            verify_absorption,
            print,
        } => enumerate(size, dedup, verify_absorption, print),
    }
}

fn read(path: &Path) -> Result<String, Exit> {
    fs::read_to_string(path).map_err(|e| Exit::usage(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Exit::usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn codec_error(path: &Path, e: CodecError) -> Exit {
    Exit::usage(format!("{}: {e}", path.display()))
}

#[derive(PartialEq, Eq)]
enum Format {
    Gem,
    Word,
    Rotation,
}

/// By extension, else by the first meaningful token.
fn format_of(path: &Path, text: &str) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some("gem") => return Format::Gem,
        Some("szw") | Some("word") => return Format::Word,
        Some("rot") => return Format::Rotation,
        _ => {}
    }
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.starts_with("gem") {
        Format::Gem
    } else if first.starts_with('v') {
        Format::Rotation
    } else {
        Format::Word
    }
}

/// Reads a `.gem`, a signed word (its single-zigzag map) or a rotation
/// system.
fn parse_map(path: &Path, text: &str) -> Result<FlagMap, CodecError> {
    match format_of(path, text) {
        Format::Gem => parse_gem(text),
        Format::Word => parse_word(text).map(|w| zigzag_map_from_word(&w)),
        Format::Rotation => parse_rotation(text).and_then(|r| embedding_to_map(&r)),
    }
}

fn load_map(path: &Path) -> Result<FlagMap, Exit> {
    parse_map(path, &read(path)?).map_err(|e| codec_error(path, e))
}

fn validate(path: &Path) -> Outcome {
    let text = read(path)?;
    let parsed = match format_of(path, &text) {
        Format::Gem => parse_gem_unchecked(&text),
        _ => parse_map(path, &text),
    };
    let map = match parsed {
        Ok(map) => map,
        Err(e @ CodecError::Invalid { .. }) => {
            return Err(Exit {
                code: 1,
                message: format!("{}: {e}", path.display()),
            })
        }
        Err(e) => return Err(codec_error(path, e)),
    };
    let report = map.validate();
    for c in &report.checks {
        match (&c.detail, c.passed) {
            (_, true) => println!("{}: ok", c.name),
            (Some(d), false) => println!("{}: FAILED ({d})", c.name),
            (None, false) => println!("{}: FAILED", c.name),
        }
    }
    if report.is_valid() {
        println!("valid map with {} edges", map.m());
        Ok(())
    } else {
        let names: Vec<&str> = report.failures().map(|c| c.name).collect();
        Err(Exit {
            code: 1,
            message: format!("invalid map: {}", names.join(", ")),
        })
    }
}

fn info(path: &Path) -> Outcome {
    let map = load_map(path)?;
    let (v, f, z) = map.gon_counts();
    let (chi, xi) = map.euler_connectivity();
    let orientable = if map.orientable() { "yes" } else { "no" };
    println!(
        "m={} v={v} f={f} z={z} chi={chi} xi={xi} orientable={orientable}",
        map.m()
    );
    let loops: Vec<String> = map
        .loop_balances()
        .iter()
        .enumerate()
        .filter(|(_, b)| **b != LoopBalance::NotALoop)
        .map(|(e, b)| format!("{}:{b}", e + 1))
        .collect();
    if loops.is_empty() {
        println!("loops: none");
    } else {
        println!("loops: {}", loops.join(" "));
    }
    Ok(())
}

fn omega(path: &Path, perm: RolePerm, rects: Option<Vec<usize>>, output: Option<&Path>) -> Outcome {
    let map = load_map(path)?;
    let image = match rects {
        None => map.permute_all(perm),
        Some(ids) => {
            if let Some(bad) = ids.iter().find(|&&e| e == 0 || e > map.m()) {
                return Err(Exit::usage(format!(
                    "edge {bad} out of range 1..={}",
                    map.m()
                )));
            }
            let zero: Vec<usize> = ids.iter().map(|e| e - 1).collect();
            map.apply_permutation(&zero, perm)
                .map_err(|e| Exit::usage(e.to_string()))?
        }
    };
    write_out(output, &write_gem(&image))
}

fn word(path: &Path, kind: Kind, gon: usize) -> Outcome {
    let map = load_map(path)?;
    let (source, kind) = match kind {
        Kind::V => (map.clone(), GonKind::V),
        Kind::F => (map.dual(), GonKind::F),
        Kind::Z => (map.phial(), GonKind::Z),
    };
    let count = map.gon_count(kind);
    if gon == 0 || gon > count {
        return Err(Exit::usage(format!(
            "{kind}-gon {gon} out of range 1..={count}"
        )));
    }
    match vertex_word(&source, gon - 1) {
        Ok(w) => {
            println!("{w}");
            Ok(())
        }
        Err(_) => Err(Exit::not_applicable(format!(
            "{kind}-gon {gon} does not cross every edge twice ({count} {kind}-gons)"
        ))),
    }
}

fn matrix(name: &str, op: &LinearOp) -> String {
    let m = op.universe();
    let width = m.to_string().len();
    let mut out = format!("{name}\n{:width$}", "");
    for j in 1..=m {
        write!(out, " {j:>width$}").unwrap();
    }
    out.push('\n');
    for i in 0..m {
        write!(out, "{:>width$}", i + 1).unwrap();
        for j in 0..m {
            write!(out, " {:>width$}", u8::from(op.entry(i, j))).unwrap();
        }
        out.push('\n');
    }
    out
}

fn ops(path: &Path) -> Outcome {
    let map = load_map(path)?;
    let ops = word_operators(&map);
    let zig = format!("{} zigzags", ops.zigzags);
    let face = format!("{} faces", ops.faces);
    let mut any = false;
    for (name, op, why) in [
        ("c_P", &ops.c_p, &zig),
        ("c_P~", &ops.c_ptilde, &zig),
        ("c_D", &ops.c_d, &face),
    ] {
        match op {
            Some(op) => {
                any = true;
                print!("{}", matrix(name, op));
            }
            None => println!("{name}: not applicable ({why})"),
        }
    }
    if any {
        Ok(())
    } else {
        Err(Exit::not_applicable(format!("{face}, {zig}")))
    }
}

fn plain_report(r: &TheoremReport) -> String {
    let mut line = format!("theorem {}: ", r.theorem.label());
    if !r.applicable {
        write!(
            line,
            "not applicable ({})",
            r.reason.as_deref().unwrap_or("")
        )
        .unwrap();
        return line;
    }
    line.push_str(if r.holds { "holds" } else { "VIOLATED" });
    for (k, v) in &r.dims {
        write!(line, "  {k}={v}").unwrap();
    }
    if let Some(c) = &r.counterexample {
        write!(line, "  counterexample={c}").unwrap();
    }
    line
}

fn verify(path: &Path, which: Which, json: bool) -> Outcome {
    let map = load_map(path)?;
    let spaces = |e: mapcalc::SpaceError| Exit::usage(format!("{}: {e}", path.display()));
    let mut reports = Vec::new();
    if matches!(which, Which::One | Which::All) {
        reports.extend(check_absorption(&map).map_err(spaces)?);
    }
    if matches!(which, Which::Two | Which::All) {
        reports.extend(check_theorem2(&map).map_err(spaces)?);
    }
    if matches!(which, Which::Three | Which::All) {
        reports.extend(check_theorem3(&map).map_err(spaces)?);
    }
    if matches!(which, Which::Four | Which::All) {
        reports.push(check_theorem4(&map));
    }
    let applicable = reports.iter().any(|r| r.applicable);
    let violated = reports.iter().any(TheoremReport::violated);
    if json {
        let doc = serde_json::json!({
            "file": path.display().to_string(),
            "applicable": applicable,
            "holds": applicable && !violated,
            "reports": reports,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("reports serialize")
        );
    } else {
        for r in &reports {
            println!("{}", plain_report(r));
        }
    }
    if violated {
        let labels: Vec<&str> = reports
            .iter()
            .filter(|r| r.violated())
            .map(|r| r.theorem.label())
            .collect();
        Err(Exit {
            code: 1,
            message: format!("violated: {}", labels.join(", ")),
        })
    } else if !applicable {
        let mut reasons: Vec<&str> = reports.iter().filter_map(|r| r.reason.as_deref()).collect();
        reasons.dedup();
        Err(Exit::not_applicable(reasons.join("; ")))
    } else {
        Ok(())
    }
}

fn from_word(path: &Path, output: Option<&Path>) -> Outcome {
    let w = parse_word(&read(path)?).map_err(|e| codec_error(path, e))?;
    write_out(output, &write_gem(&zigzag_map_from_word(&w)))
}

fn search(
    path: &Path,
    budget: &Budget,
    seed: u64,
    output: Option<&Path>,
    rotation: Option<&Path>,
) -> Outcome {
    let g = parse_graph(&read(path)?).map_err(|e| codec_error(path, e))?;
    let out = search_embedding(&g, budget, seed)
        .map_err(|e| Exit::usage(format!("{}: {e}", path.display())))?;
    let status = serde_json::to_value(out.status).expect("status serializes");
    let subdivided: usize = out.subdivisions.iter().sum();
    println!(
        "status={} subdivisions={subdivided} candidates={} seed={seed}",
        status.as_str().unwrap_or_default(),
        out.candidates
    );
    let (Some(map), Some(rot)) = (&out.map, &out.rotation) else {
        return Err(Exit {
            code: 3,
            message: format!("not found: {}", status.as_str().unwrap_or_default()),
        });
    };
    if subdivided > 0 {
        let per_edge: Vec<String> = out.subdivisions.iter().map(usize::to_string).collect();
        println!("subdivided edges: {}", per_edge.join(" "));
    }
    if let Some(p) = rotation {
        write_out(Some(p), &write_rotation(rot))?;
    }
    write_out(output, &write_gem(map))
}

fn enumerate(size: usize, dedup: bool, verify_absorption: bool, print: bool) -> Outcome {
    if size == 0 {
        return Err(Exit::usage("--size must be at least 1"));
    }
    let mut count = 0u64;
    let mut profiles = std::collections::BTreeMap::new();
    let mut violations = 0u64;
    for map in enumerate_maps(size, dedup) {
        count += 1;
        *profiles.entry(map.gon_counts()).or_insert(0u64) += 1;
        if verify_absorption {
            let reports = check_absorption(&map).map_err(|e| Exit::usage(e.to_string()))?;
            if reports.iter().any(TheoremReport::violated) {
                violations += 1;
                eprintln!("absorption violated:\n{}", write_gem(&map));
            }
        }
        if print {
            println!("{}", write_gem(&map));
        }
    }
    println!("m={size} maps={count}");
    for ((v, f, z), n) in profiles {
        println!("  v={v} f={f} z={z}: {n}");
    }
    if verify_absorption {
        println!("absorption: {} of {count} maps", count - violations);
    }
    if violations > 0 {
        return Err(Exit {
            code: 1,
            message: format!("absorption violated on {violations} maps"),
        });
    }
    Ok(())
}
