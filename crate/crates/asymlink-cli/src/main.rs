//! Command-line front end: ingest, simulate, predict, analyze, metrics.
//!
//! Exit codes: 0 success, 2 usage/config error, 1 runtime error. Every run
//! writes a `run.json` echo of its resolved parameters into the output
//! directory.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use asymlink::analysis::{
    fit_power_law_exponent, log_binned_distribution, weight_overlap_relation, BinnedSeries,
    OverlapKind, StrengthKind,
};
use asymlink::evaluation::{
    build_balanced_set, default_d, pr_auc, roc_auc, score_labeled, training_graph,
    write_summary_csv, CurveResult, ScoreSummary,
};
use asymlink::graph::{CoauthorGraph, PaperRecord};
use asymlink::ingest::{
    coauthor_size_distribution, filter_max_authors, parse_papers, read_graph, read_pmf,
    write_edges, write_nodes, write_pmf, InputFormat,
};
use asymlink::metrics::observe_all_edges;
use asymlink::model::{dblp_like_size_pmf, simulate, ModelConfig, StopRule};
use asymlink::similarity::{ScoreKind, ALL_SCORE_KINDS};

#[derive(Parser)]
#[command(name = "asymlink", version, about = "Coauthorship network toolkit")]
struct Cli {
    /// Output directory for generated files.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Worker threads (fallback: ASYMLINK_THREADS, then all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse paper records and write graph files.
    Ingest(IngestArgs),
    /// Generate synthetic collaboration networks.
    Simulate(SimulateArgs),
    /// Evaluate similarity scores on balanced link-prediction sets.
    Predict(PredictArgs),
    /// Export distributions, weight-overlap relations and power-law fits.
    Analyze(AnalyzeArgs),
    /// Export per-edge tie metrics.
    Metrics(MetricsArgs),
}

#[derive(Args)]
struct IngestArgs {
    /// Input file of paper records.
    #[arg(long)]
    input: PathBuf,
    /// Input layout.
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Keep only the largest connected component.
    #[arg(long)]
    lcc: bool,
    /// Drop papers with more than this many authors.
    #[arg(long)]
    max_authors: Option<usize>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Publication probability per attempt.
    #[arg(long, default_value_t = 0.4)]
    c: f64,
    /// Maximum inter-group papers per partner pair per step.
    #[arg(long, default_value_t = 3)]
    alpha: u32,
    /// Promotion probability for students leaving the pool.
    #[arg(long, default_value_t = 0.2)]
    f: f64,
    /// Student activity threshold G.
    #[arg(long, default_value_t = 7)]
    g_threshold: u32,
    /// Paper-size PMF file (`l<TAB>probability`); built-in default otherwise.
    #[arg(long)]
    pmf: Option<PathBuf>,
    /// Stop when the node count reaches this value.
    #[arg(long, conflicts_with = "stop_steps")]
    stop_nodes: Option<usize>,
    /// Stop after this many steps.
    #[arg(long)]
    stop_steps: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of independent realizations (seeds seed, seed+1, ...).
    #[arg(long, default_value_t = 1)]
    realizations: u64,
    /// Credit inter-group attempts to each group instead of each pair.
    #[arg(long)]
    intergroup_per_group: bool,
}

#[derive(Args)]
struct PredictArgs {
    /// Node table written by `ingest` or `simulate`.
    #[arg(long)]
    nodes: PathBuf,
    /// Edge list written by `ingest` or `simulate`.
    #[arg(long)]
    edges: PathBuf,
    /// Comma-separated score tokens, or `all`.
    #[arg(long, default_value = "all")]
    scores: String,
    /// Positives/negatives per testing set; default min(10^4, qualifying/2).
    #[arg(long)]
    d: Option<usize>,
    /// Evaluation seeds: `0`, `1,2,3` or inclusive range `1..5`.
    #[arg(long, default_value = "0")]
    seeds: String,
    /// Score the intact graph instead of removing sampled positives.
    #[arg(long)]
    no_holdout: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Bipartite,
}

impl From<Format> for InputFormat {
    fn from(f: Format) -> InputFormat {
        match f {
            Format::Tsv => InputFormat::Tsv,
            Format::Bipartite => InputFormat::Bipartite,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    Distributions,
    QvRelation,
    OwRelation,
    OwstarRelation,
    All,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Node table (paired with --edges); alternative to --papers.
    #[arg(long, requires = "edges")]
    nodes: Option<PathBuf>,
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Paper records; enables the paper-size distribution.
    #[arg(long, conflicts_with = "nodes")]
    papers: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    #[arg(long, value_enum, default_value_t = Which::All)]
    which: Which,
    #[arg(long, default_value_t = 10)]
    bins_per_decade: u32,
}

#[derive(Args)]
struct MetricsArgs {
    #[arg(long, requires = "edges")]
    nodes: Option<PathBuf>,
    #[arg(long)]
    edges: Option<PathBuf>,
    #[arg(long, conflicts_with = "nodes")]
    papers: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
}

enum CliError {
    Usage(String),
    Runtime(String),
}

type CliResult<T> = Result<T, CliError>;

impl From<asymlink::Error> for CliError {
    fn from(e: asymlink::Error) -> CliError {
        match e {
            asymlink::Error::Parse { .. } | asymlink::Error::Config(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Runtime(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let threads = cli.threads.or_else(|| {
        std::env::var("ASYMLINK_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(n) = threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be >= 1".into()));
        }
        // Ignore the error if a pool already exists (repeated in-process use).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    std::fs::create_dir_all(&cli.out)?;
    match &cli.command {
        Command::Ingest(args) => cmd_ingest(&cli, args),
        Command::Simulate(args) => cmd_simulate(&cli, args),
        Command::Predict(args) => cmd_predict(&cli, args),
        Command::Analyze(args) => cmd_analyze(&cli, args),
        Command::Metrics(args) => cmd_metrics(&cli, args),
    }
}

fn open_input(path: &Path) -> CliResult<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn create_output(dir: &Path, name: &str) -> CliResult<BufWriter<File>> {
    Ok(BufWriter::new(File::create(dir.join(name))?))
}

fn write_run_json(dir: &Path, value: serde_json::Value) -> CliResult<()> {
    let mut f = create_output(dir, "run.json")?;
    serde_json::to_writer_pretty(&mut f, &value)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    writeln!(f)?;
    Ok(())
}

fn load_papers(path: &Path, format: Format) -> CliResult<Vec<PaperRecord>> {
    Ok(parse_papers(open_input(path)?, format.into())?)
}

fn load_graph(nodes: &Path, edges: &Path) -> CliResult<CoauthorGraph> {
    Ok(read_graph(open_input(nodes)?, open_input(edges)?)?)
}

fn graph_from_args(
    nodes: &Option<PathBuf>,
    edges: &Option<PathBuf>,
    papers: &Option<PathBuf>,
    format: Format,
) -> CliResult<(CoauthorGraph, Option<Vec<PaperRecord>>)> {
    match (nodes, edges, papers) {
        (Some(n), Some(e), None) => Ok((load_graph(n, e)?, None)),
        (None, None, Some(p)) => {
            let papers = load_papers(p, format)?;
            Ok((CoauthorGraph::build_from_papers(&papers), Some(papers)))
        }
        _ => Err(CliError::Usage(
            "provide either --nodes with --edges, or --papers".into(),
        )),
    }
}

fn cmd_ingest(cli: &Cli, args: &IngestArgs) -> CliResult<()> {
    let mut papers = load_papers(&args.input, args.format)?;
    if let Some(cap) = args.max_authors {
        papers = filter_max_authors(papers, cap);
    }
    let full = CoauthorGraph::build_from_papers(&papers);
    let (g, lcc_fraction) = if args.lcc {
        let lcc = full.largest_component();
        let frac = if full.node_count() == 0 {
            0.0
        } else {
            lcc.node_count() as f64 / full.node_count() as f64
        };
        (lcc, Some(frac))
    } else {
        (full, None)
    };

    write_nodes(&g, create_output(&cli.out, "nodes.tsv")?)?;
    write_edges(&g, create_output(&cli.out, "edges.tsv")?)?;
    if !papers.is_empty() {
        let pmf = coauthor_size_distribution(&papers)?;
        write_pmf(&pmf, create_output(&cli.out, "pmf.tsv")?)?;
    }
    write_run_json(
        &cli.out,
        serde_json::json!({
            "subcommand": "ingest",
            "input": args.input,
            "format": format_token(args.format),
            "lcc": args.lcc,
            "max_authors": args.max_authors,
            "out": cli.out,
        }),
    )?;
    match lcc_fraction {
        Some(frac) => println!(
            "{} nodes, {} edges (largest component, {:.1}% of authors)",
            g.node_count(),
            g.edge_count(),
            100.0 * frac
        ),
        None => println!("{} nodes, {} edges", g.node_count(), g.edge_count()),
    }
    Ok(())
}

fn format_token(f: Format) -> &'static str {
    match f {
        Format::Tsv => "tsv",
        Format::Bipartite => "bipartite",
    }
}

fn cmd_simulate(cli: &Cli, args: &SimulateArgs) -> CliResult<()> {
    let size_pmf = match &args.pmf {
        Some(path) => read_pmf(open_input(path)?)?,
        None => dblp_like_size_pmf(),
    };
    let stop = match (args.stop_nodes, args.stop_steps) {
        (None, Some(t)) => StopRule::Steps(t),
        (Some(n), None) => StopRule::Nodes(n),
        (None, None) => StopRule::Nodes(10_000),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    for r in 0..args.realizations {
        let seed = args.seed + r;
        let config = ModelConfig {
            publish_prob: args.c,
            inter_max: args.alpha,
            promotion_prob: args.f,
            activity_threshold: args.g_threshold,
            size_pmf: size_pmf.clone(),
            stop,
            seed,
            intergroup_per_group: args.intergroup_per_group,
        };
        config.validate()?;
        let out = simulate(&config)?;
        let (nodes_name, edges_name) = if args.realizations == 1 {
            ("nodes.tsv".to_string(), "edges.tsv".to_string())
        } else {
            (format!("nodes_{seed}.tsv"), format!("edges_{seed}.tsv"))
        };
        write_nodes(&out.graph, create_output(&cli.out, &nodes_name)?)?;
        write_edges(&out.graph, create_output(&cli.out, &edges_name)?)?;
        println!(
            "seed {seed}: {} nodes, {} edges, {} papers, {} steps",
            out.graph.node_count(),
            out.graph.edge_count(),
            out.paper_count,
            out.steps
        );
    }
    write_run_json(
        &cli.out,
        serde_json::json!({
            "subcommand": "simulate",
            "c": args.c,
            "alpha": args.alpha,
            "f": args.f,
            "g_threshold": args.g_threshold,
            "pmf": args.pmf,
            "stop_nodes": args.stop_nodes,
            "stop_steps": args.stop_steps,
            "seed": args.seed,
            "realizations": args.realizations,
            "intergroup_per_group": args.intergroup_per_group,
            "out": cli.out,
        }),
    )
}

fn parse_scores(spec: &str) -> CliResult<Vec<ScoreKind>> {
    if spec == "all" {
        return Ok(ALL_SCORE_KINDS.to_vec());
    }
    spec.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<ScoreKind>()
                .map_err(|e| CliError::Usage(e.to_string()))
        })
        .collect()
}

fn parse_seeds(spec: &str) -> CliResult<Vec<u64>> {
    let bad = || CliError::Usage(format!("invalid --seeds value `{spec}`"));
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
        if hi < lo {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    spec.split(',')
        .map(|tok| tok.trim().parse().map_err(|_| bad()))
        .collect()
}

/// Linear interpolation of a threshold curve on a fixed x grid, for
/// pointwise averaging across seeds.
fn resample(curve: &CurveResult, grid: usize) -> Vec<f64> {
    let pts = &curve.points;
    (0..=grid)
        .map(|k| {
            let x = k as f64 / grid as f64;
            let after = pts.partition_point(|p| p.0 < x);
            if after == 0 {
                pts.first().map_or(0.0, |p| p.1)
            } else if after == pts.len() {
                pts.last().map_or(1.0, |p| p.1)
            } else {
                let (x0, y0) = pts[after - 1];
                let (x1, y1) = pts[after];
                if x1 == x0 {
                    y1
                } else {
                    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
                }
            }
        })
        .collect()
}

fn cmd_predict(cli: &Cli, args: &PredictArgs) -> CliResult<()> {
    let kinds = parse_scores(&args.scores)?;
    let seeds = parse_seeds(&args.seeds)?;
    if seeds.is_empty() {
        return Err(CliError::Usage("--seeds selected nothing".into()));
    }
    let g = load_graph(&args.nodes, &args.edges)?;
    let d = args.d.unwrap_or_else(|| default_d(&g));
    if d == 0 {
        return Err(CliError::Usage("--d must be >= 1".into()));
    }

    const GRID: usize = 200;
    let mut auc = vec![Vec::new(); kinds.len()];
    let mut prauc = vec![Vec::new(); kinds.len()];
    let mut roc_sum = vec![vec![0.0f64; GRID + 1]; kinds.len()];
    let mut pr_sum = vec![vec![0.0f64; GRID + 1]; kinds.len()];
    for &seed in &seeds {
        let set = build_balanced_set(&g, d, seed)?;
        let train = if args.no_holdout {
            g.clone()
        } else {
            training_graph(&g, &set)
        };
        for (k, &kind) in kinds.iter().enumerate() {
            let labeled = score_labeled(&train, &set, kind)?;
            let roc = roc_auc(&labeled)?;
            let pr = pr_auc(&labeled)?;
            for (acc, y) in roc_sum[k].iter_mut().zip(resample(&roc, GRID)) {
                *acc += y;
            }
            for (acc, y) in pr_sum[k].iter_mut().zip(resample(&pr, GRID)) {
                *acc += y;
            }
            auc[k].push(roc.area);
            prauc[k].push(pr.area);
        }
    }

    let mean_stderr = |xs: &[f64]| {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        if xs.len() < 2 {
            return (mean, 0.0);
        }
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        (mean, (var / n).sqrt())
    };
    let rows: Vec<ScoreSummary> = kinds
        .iter()
        .enumerate()
        .map(|(k, &kind)| {
            let (auc_mean, auc_stderr) = mean_stderr(&auc[k]);
            let (prauc_mean, prauc_stderr) = mean_stderr(&prauc[k]);
            ScoreSummary {
                kind,
                auc_mean,
                prauc_mean,
                auc_stderr,
                prauc_stderr,
            }
        })
        .collect();
    write_summary_csv(&rows, d, seeds.len(), create_output(&cli.out, "summary.csv")?)?;

    // Seed-averaged curves on a fixed grid, one block per score.
    let mut roc_file = create_output(&cli.out, "roc.csv")?;
    writeln!(roc_file, "kind,fpr,tpr")?;
    let mut pr_file = create_output(&cli.out, "pr.csv")?;
    writeln!(pr_file, "kind,recall,precision")?;
    for (k, &kind) in kinds.iter().enumerate() {
        for i in 0..=GRID {
            let x = i as f64 / GRID as f64;
            writeln!(
                roc_file,
                "{kind},{x:.4},{:.6}",
                roc_sum[k][i] / seeds.len() as f64
            )?;
            writeln!(
                pr_file,
                "{kind},{x:.4},{:.6}",
                pr_sum[k][i] / seeds.len() as f64
            )?;
        }
    }

    write_run_json(
        &cli.out,
        serde_json::json!({
            "subcommand": "predict",
            "nodes": args.nodes,
            "edges": args.edges,
            "scores": kinds.iter().map(|k| k.token()).collect::<Vec<_>>(),
            "d": d,
            "seeds": seeds,
            "holdout": !args.no_holdout,
            "out": cli.out,
        }),
    )?;
    for row in &rows {
        println!(
            "{:>5}  auc {:.4} ± {:.4}  prauc {:.4} ± {:.4}",
            row.kind, row.auc_mean, row.auc_stderr, row.prauc_mean, row.prauc_stderr
        );
    }
    Ok(())
}

fn write_series(mut w: impl Write, header: &str, s: &BinnedSeries) -> CliResult<()> {
    writeln!(w, "{header}")?;
    for b in s.occupied() {
        writeln!(w, "{},{},{}", s.x_rep[b], s.y_mean[b], s.count[b])?;
    }
    Ok(())
}

fn cmd_analyze(cli: &Cli, args: &AnalyzeArgs) -> CliResult<()> {
    let (g, papers) = graph_from_args(&args.nodes, &args.edges, &args.papers, args.format)?;
    let bpd = args.bins_per_decade;
    if bpd == 0 {
        return Err(CliError::Usage("--bins-per-decade must be >= 1".into()));
    }
    let want = |w: Which| args.which == w || args.which == Which::All;

    if want(Which::Distributions) {
        let degrees: Vec<f64> = (0..g.node_count() as u32)
            .map(|i| g.degree(i) as f64)
            .filter(|&k| k > 0.0)
            .collect();
        let strengths: Vec<f64> = (0..g.node_count() as u32)
            .map(|i| g.strength(i) as f64)
            .filter(|&s| s > 0.0)
            .collect();
        let pubs: Vec<f64> = g
            .publication_counts()
            .iter()
            .map(|&p| p as f64)
            .filter(|&p| p > 0.0)
            .collect();
        let weights: Vec<f64> = g.edges().map(|(_, _, d)| d.weight as f64).collect();
        let asym: Vec<f64> = observe_all_edges(&g)
            .iter()
            .map(|o| o.asym_weight)
            .filter(|&v| v > 0.0)
            .collect();
        let series = [
            ("dist_k.csv", degrees),
            ("dist_s.csv", strengths),
            ("dist_p.csv", pubs),
            ("dist_w.csv", weights),
            ("dist_v.csv", asym),
        ];
        for (name, values) in series {
            if values.is_empty() {
                continue;
            }
            let s = log_binned_distribution(&values, bpd)?;
            write_series(create_output(&cli.out, name)?, "x,density,count", &s)?;
        }
        if let Some(papers) = &papers {
            let sizes: Vec<f64> = papers.iter().map(|p| p.authors.len() as f64).collect();
            let s = log_binned_distribution(&sizes, bpd)?;
            write_series(create_output(&cli.out, "dist_l.csv")?, "x,density,count", &s)?;
        }
    }
    if want(Which::QvRelation) {
        let s = weight_overlap_relation(&g, StrengthKind::Asymmetric, OverlapKind::Asymmetric, bpd)?;
        write_series(create_output(&cli.out, "relation_v_q.csv")?, "x,y_mean,count", &s)?;
        let fit = fit_power_law_exponent(&s, 10)?;
        let mut f = create_output(&cli.out, "fit.csv")?;
        writeln!(f, "beta,intercept,r2,n_points")?;
        writeln!(f, "{},{},{},{}", fit.beta, fit.intercept, fit.r2, fit.n_points)?;
    }
    if want(Which::OwRelation) {
        let s = weight_overlap_relation(&g, StrengthKind::Weight, OverlapKind::Symmetric, bpd)?;
        write_series(create_output(&cli.out, "relation_w_o.csv")?, "x,y_mean,count", &s)?;
    }
    if want(Which::OwstarRelation) {
        let s = weight_overlap_relation(&g, StrengthKind::Discounted, OverlapKind::Symmetric, bpd)?;
        write_series(
            create_output(&cli.out, "relation_wstar_o.csv")?,
            "x,y_mean,count",
            &s,
        )?;
    }
    write_run_json(
        &cli.out,
        serde_json::json!({
            "subcommand": "analyze",
            "nodes": args.nodes,
            "edges": args.edges,
            "papers": args.papers,
            "which": format!("{:?}", args.which),
            "bins_per_decade": bpd,
            "out": cli.out,
        }),
    )
}

fn cmd_metrics(cli: &Cli, args: &MetricsArgs) -> CliResult<()> {
    let (g, _) = graph_from_args(&args.nodes, &args.edges, &args.papers, args.format)?;
    let mut f = create_output(&cli.out, "metrics.csv")?;
    writeln!(f, "i,j,k_i,k_j,n,O,Q,w,w_star,v")?;
    for o in observe_all_edges(&g) {
        writeln!(
            f,
            "{},{},{},{},{},{},{},{},{},{}",
            o.i,
            o.j,
            o.degree_i,
            o.degree_j,
            o.common,
            o.overlap,
            o.asym_overlap,
            o.weight,
            o.discounted_weight,
            o.asym_weight
        )?;
    }
    write_run_json(
        &cli.out,
        serde_json::json!({
            "subcommand": "metrics",
            "nodes": args.nodes,
            "edges": args.edges,
            "papers": args.papers,
            "out": cli.out,
        }),
    )?;
    println!("{} directed edge observations", 2 * g.edge_count());
    Ok(())
}
