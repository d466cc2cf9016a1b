//! Command-line front end. Exit codes: 0 success, 1 invalid arguments,
//! 2 runtime failure.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::evaluation::{misclustered_count, misclustering_rate};
use crate::experiments::{
    encode_labels, ingest_edge_list, read_label_file, run_scenario, Format, IngestOptions, ScenarioConfig,
};
use crate::generators::{gen_hypergraph_3uniform, gen_sbm, gen_supsbm};
use crate::graph_model::{BlockParams, CommunityAssignment, SuperimposedGraph};
use crate::spectral::{cluster_with, ClusterMethod, ClusterOptions, DEFAULT_RESTARTS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "motifspectra", version, about = "Higher-order spectral clustering experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample a graph from a block model.
    Generate(GenerateArgs),
    /// Cluster a dataset or a generated graph.
    Cluster(ClusterArgs),
    /// Misclustering rate of estimated labels against the truth.
    Evaluate(EvaluateArgs),
    /// Run a scenario config.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Model {
    Sbm,
    Hypergraph,
    Supsbm,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, value_enum, default_value = "supsbm")]
    model: Model,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 0.0)]
    a_e: f64,
    #[arg(long, default_value_t = 0.0)]
    b_e: f64,
    #[arg(long, default_value_t = 0.0)]
    a_t: f64,
    #[arg(long, default_value_t = 0.0)]
    b_t: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Graph file; planted labels go to `<out>.labels`. Stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ClusterArgs {
    /// Graph file written by `generate`.
    #[arg(long, conflicts_with = "edges")]
    graph: Option<PathBuf>,
    /// Edge list of a dataset; needs `--labels`.
    #[arg(long, requires = "labels")]
    edges: Option<PathBuf>,
    /// Ground truth of `--edges`, `vertex label` per line.
    #[arg(long)]
    labels: Option<PathBuf>,
    /// Ground truth of `--graph`, used to report the misclustered count.
    #[arg(long, conflicts_with = "labels")]
    truth: Option<PathBuf>,
    #[arg(long, default_value = "hospA")]
    method: ClusterMethod,
    /// Number of communities; defaults to the number of truth labels.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_RESTARTS)]
    restarts: usize,
    #[arg(long)]
    symmetrize: Option<bool>,
    #[arg(long)]
    largest_component: bool,
    /// Estimated labels; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    #[arg(long)]
    truth: PathBuf,
    #[arg(long)]
    est: PathBuf,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    /// Overrides `output_path`; tables go to stdout when neither is set.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: Format,
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let stdout = std::io::stdout();
    match run(cli.command, &mut stdout.lock()) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_RUNTIME
        }
    }
}

fn run(cmd: Command, out: &mut dyn std::io::Write) -> Result<()> {
    match cmd {
        Command::Generate(a) => generate(a, out),
        Command::Cluster(a) => cluster(a, out),
        Command::Evaluate(a) => evaluate(a, out),
        Command::Experiment(a) => experiment(a, out),
    }
}

fn emit(path: Option<&Path>, bytes: &[u8], out: &mut dyn std::io::Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| Error::io(p, e)),
        None => out.write_all(bytes).map_err(|e| Error::io("<stdout>", e)),
    }
}

/// Text form of a superimposed graph: `n <count>`, then `e i j` and `h i j k` lines.
pub fn format_graph(g: &SuperimposedGraph) -> String {
    let mut s = format!("n {}\n", g.n());
    for &(i, j) in g.dyadic_edges() {
        let _ = writeln!(s, "e {i} {j}");
    }
    for h in g.hyperedges() {
        let _ = writeln!(s, "h {} {} {}", h[0], h[1], h[2]);
    }
    s
}

pub fn parse_graph(text: &str, path: &Path) -> Result<SuperimposedGraph> {
    let err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut n = None;
    let mut edges = Vec::new();
    let mut hyper = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let kind = parts.next().unwrap_or("");
        let nums = parts
            .map(|t| t.parse::<usize>().map_err(|_| err(ln, format!("bad vertex id {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        match (kind, nums.as_slice()) {
            ("n", [v]) if n.is_none() => n = Some(*v),
            ("e", [i, j]) => edges.push((*i, *j)),
            ("h", [i, j, k]) => hyper.push([*i, *j, *k]),
            _ => return Err(err(ln, format!("unrecognised line {line:?}"))),
        }
    }
    let n = n.ok_or_else(|| err(1, "missing `n` header".into()))?;
    SuperimposedGraph::new(n, edges, hyper)
}

fn format_labels(c: &CommunityAssignment) -> String {
    let mut s = String::new();
    for (v, l) in c.labels().iter().enumerate() {
        let _ = writeln!(s, "{v} {l}");
    }
    s
}

/// Reads a `vertex label` file whose vertices must be exactly `0..n`.
fn read_assignment(path: &Path) -> Result<CommunityAssignment> {
    let map = read_label_file(path)?;
    assignment_from_map(&map, path)
}

fn assignment_from_map(map: &BTreeMap<i64, String>, path: &Path) -> Result<CommunityAssignment> {
    if map.keys().enumerate().any(|(i, &v)| v != i as i64) {
        return Err(Error::InvalidInput(format!(
            "{}: vertices must be numbered 0..n without gaps",
            path.display()
        )));
    }
    let (codes, k) = encode_labels(map.values().map(String::as_str))?;
    CommunityAssignment::new(codes, k)
}

fn generate(a: GenerateArgs, out: &mut dyn std::io::Write) -> Result<()> {
    let p = BlockParams::new(a.n, a.k, a.a_e, a.b_e, a.a_t, a.b_t)?;
    let c = CommunityAssignment::balanced(a.n, a.k)?;
    let g = match a.model {
        Model::Sbm => gen_sbm(&p, &c, a.seed)?,
        Model::Hypergraph => gen_hypergraph_3uniform(&p, &c, a.seed)?,
        Model::Supsbm => gen_supsbm(&p, &c, a.seed)?,
    };
    emit(a.out.as_deref(), format_graph(&g).as_bytes(), out)?;
    if let Some(path) = &a.out {
        let lp = labels_sibling(path);
        std::fs::write(&lp, format_labels(&c)).map_err(|e| Error::io(&lp, e))?;
    }
    Ok(())
}

fn labels_sibling(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".labels");
    PathBuf::from(s)
}

fn cluster(a: ClusterArgs, out: &mut dyn std::io::Write) -> Result<()> {
    let (graph, truth) = match (&a.graph, &a.edges, &a.labels) {
        (Some(gp), None, None) => {
            let text = std::fs::read_to_string(gp).map_err(|e| Error::io(gp, e))?;
            let g = parse_graph(&text, gp)?;
            let truth = a.truth.as_deref().map(read_assignment).transpose()?;
            (g, truth)
        }
        (None, Some(ep), Some(lp)) => {
            let opts = IngestOptions {
                symmetrize: a.symmetrize.unwrap_or(true),
                largest_component: a.largest_component,
            };
            let ds = ingest_edge_list("cli", ep, lp, opts)?;
            (ds.graph, Some(ds.labels))
        }
        _ => return Err(Error::InvalidParams("give either --graph or --edges with --labels".into())),
    };
    if let Some(t) = &truth {
        if t.n() != graph.n() {
            return Err(Error::DimensionMismatch {
                expected: graph.n(),
                found: t.n(),
            });
        }
    }
    let k = a
        .k
        .or(truth.as_ref().map(CommunityAssignment::k))
        .ok_or_else(|| Error::InvalidParams("--k is required without ground truth".into()))?;
    let opts = ClusterOptions {
        restarts: a.restarts,
        ..ClusterOptions::default()
    };
    let est = cluster_with(&graph, &a.method, k, a.seed, &opts)?;
    emit(a.out.as_deref(), format_labels(&est).as_bytes(), out)?;
    if let Some(t) = &truth {
        let count = misclustered_count(t, &est)?;
        let line = format!("misclustered={count} n={}\n", graph.n());
        if a.out.is_some() {
            out.write_all(line.as_bytes()).map_err(|e| Error::io("<stdout>", e))?;
        } else {
            eprint!("{line}");
        }
    }
    Ok(())
}

fn evaluate(a: EvaluateArgs, out: &mut dyn std::io::Write) -> Result<()> {
    let truth = read_assignment(&a.truth)?;
    let est = read_assignment(&a.est)?;
    let r = misclustering_rate(&truth, &est)?;
    writeln!(out, "R={r}").map_err(|e| Error::io("<stdout>", e))
}

fn experiment(a: ExperimentArgs, out: &mut dyn std::io::Write) -> Result<()> {
    let mut cfg = ScenarioConfig::load(&a.config)?;
    if let Some(s) = a.seed {
        cfg.master_seed = s;
    }
    if let Some(t) = a.trials {
        cfg.trials = t;
    }
    let base = a.config.parent().unwrap_or(Path::new("."));
    let output = run_scenario(&cfg, base)?;
    // The config's path follows --format; an explicit --out is taken as given.
    let target = a.out.or_else(|| {
        cfg.output_path
            .as_ref()
            .map(|p| base.join(p).with_extension(a.format.extension()))
    });
    match target {
        Some(path) => {
            for p in output.write(&path, a.format)? {
                writeln!(out, "wrote {}", p.display()).map_err(|e| Error::io("<stdout>", e))?;
            }
        }
        None => {
            for t in output.render(a.format)? {
                emit(None, &t.bytes, out)?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_text_roundtrip() {
        let g = SuperimposedGraph::new(5, [(0, 1), (3, 4)], [[0, 2, 3]]).unwrap();
        let text = format_graph(&g);
        assert_eq!(text, "n 5\ne 0 1\ne 3 4\nh 0 2 3\n");
        let back = parse_graph(&text, Path::new("g")).unwrap();
        assert_eq!(back.dyadic_edges(), g.dyadic_edges());
        assert_eq!(back.hyperedges(), g.hyperedges());
    }

    #[test]
    fn graph_parse_errors_carry_lines() {
        let e = parse_graph("n 3\ne 0 x\n", Path::new("g")).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        assert!(parse_graph("e 0 1\n", Path::new("g")).is_err());
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(main_with_args(["motifspectra", "frobnicate"]), EXIT_USAGE);
        assert_eq!(main_with_args(["motifspectra", "evaluate"]), EXIT_USAGE);
        assert_eq!(main_with_args(["motifspectra", "--help"]), EXIT_OK);
    }

    #[test]
    fn label_files_need_dense_ids() {
        let mut m = BTreeMap::new();
        m.insert(0, "a".to_string());
        m.insert(2, "b".to_string());
        assert!(assignment_from_map(&m, Path::new("x")).is_err());
    }
}
