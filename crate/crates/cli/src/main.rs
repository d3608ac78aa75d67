use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use monotile::constructions::random::{random_complete, random_min_degree};
use monotile::constructions::{build, ConstructionParams, Variant};
use monotile::experiment::{run_sweep, write_sweep_csv, Algorithm, SweepConfig};
use monotile::graph::{read_graph, write_graph, ColouredGraph, GraphJson};
use monotile::proof::{find_mono_clique, phased_tiler, PhasedMode, PHASED_CLIQUE_SIZE};
use monotile::solvers::{max_mixed_tiling, max_single_colour_tiling, SolveOptions};
use monotile::verifiers::{
    audit_grid, audit_tightness, compute_ramsey, compute_special_ramsey, probe_question, verify_bowtie_lemmas,
    verify_claim_k7, verify_fact_k6, verify_k7_blowup, verify_lemma_k8, verify_mono_triangle, verify_second_bowtie,
    verify_bowtie_through_vertex, verify_sharpness_k7, write_probe_csv, AdversarialConfig, LemmaReport, ProbeGrid,
    RamseyResult,
};
use monotile::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "monotile", version, about = "Monochromatic triangle tilings of dense two-coloured graphs")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 0 uses every available core.
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV (probe, audit, experiment).
    #[arg(long, global = true)]
    csv: bool,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a construction or a seeded random host.
    Gen(GenArgs),
    /// Exact maximum monochromatic triangle tiling.
    Solve {
        #[arg(long, value_enum, default_value_t = SolveMode::Mixed)]
        mode: SolveMode,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
    },
    /// Run a constructive tiler and re-verify its output.
    Tile {
        #[arg(long)]
        alg: String,
        #[arg(long = "in")]
        input: PathBuf,
        /// Phased tiler only.
        #[arg(long, value_enum, default_value_t = PhasedArg::Strict)]
        phased_mode: PhasedArg,
    },
    /// Exhaustive or randomized lemma verification.
    Verify(VerifyArgs),
    /// Smallest n forcing a monochromatic K_ell in every colouring of K_n.
    Ramsey(RamseyArgs),
    /// As `ramsey`, over colourings where one vertex misses a colour.
    SpecialRamsey(RamseyArgs),
    /// Search for counterexamples to the single-colour tiling formulas.
    Probe {
        #[arg(long, default_value_t = 25)]
        nmin: usize,
        #[arg(long, default_value_t = 25)]
        nmax: usize,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 2_000_000)]
        budget: u64,
    },
    /// Exact optima of the extremal constructions against their bounds.
    Audit {
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
    },
    /// Minimum-degree sweep over one construction.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveMode {
    Mixed,
    Single,
}

#[derive(Clone, Copy, ValueEnum)]
enum PhasedArg {
    Strict,
    Relaxed,
}

#[derive(Args)]
struct GenArgs {
    /// A construction name, `random-complete` or `random-min-degree`.
    #[arg(long)]
    variant: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    delta: usize,
    /// Extra construction parameters, comma separated.
    #[arg(long, value_delimiter = ',')]
    extra: Vec<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// fact-k6, mono-triangle, claim-k7, lemma-k8, sharpness-k7, bowtie,
    /// bowtie-through-vertex, second-bowtie or k7x2.
    #[arg(long)]
    lemma: Option<String>,
    /// Re-check the witnesses of a stored report instead of scanning.
    #[arg(long, conflicts_with = "lemma")]
    reload: Option<PathBuf>,
    /// Order of the complete graph for mono-triangle (5 or 6).
    #[arg(long, default_value_t = 6)]
    n: usize,
    /// Colourings handed to the pair extractor during the K8 scan.
    #[arg(long, default_value_t = 100_000)]
    extractor_samples: u64,
    /// Uniform samples for k7x2.
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long, default_value_t = 1_000)]
    restarts: u64,
    #[arg(long, default_value_t = 10_000)]
    max_steps: u64,
    #[arg(long, default_value_t = 50)]
    plateau: u64,
}

#[derive(Args)]
struct RamseyArgs {
    #[arg(long, default_value_t = 3)]
    ell: usize,
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[arg(long, default_value_t = 8)]
    n_max: usize,
}

#[derive(Args)]
struct ExperimentArgs {
    /// JSON sweep configuration; overrides the other flags.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    variant: Option<Variant>,
    #[arg(long)]
    n: Option<usize>,
    /// Inclusive range `a..b` or a comma-separated list.
    #[arg(long)]
    deltas: Option<String>,
    #[arg(long, value_delimiter = ',')]
    extra: Vec<usize>,
    #[arg(long, default_value_t = 50_000_000)]
    budget: u64,
}

/// Failure classes, each with its own exit code.
enum Failure {
    Usage(anyhow::Error),
    Violation(String),
    Anomaly(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(Error::Anomaly(_)) => Failure::Anomaly(e),
            _ => Failure::Usage(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.into())
    }
}

type Outcome = Result<(), Failure>;

struct Output<'a> {
    global: &'a Global,
}

impl Output<'_> {
    fn write(&self, text: &str) -> anyhow::Result<()> {
        match &self.global.out {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                std::io::stdout().write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }

    /// JSON with a schema field when `--json` is set, `text` otherwise.
    fn emit(&self, command: &str, body: Value, text: impl FnOnce() -> String) -> anyhow::Result<()> {
        if self.global.json {
            self.write(&(envelope(command, body).to_string() + "\n"))
        } else {
            self.write(&text())
        }
    }
}

fn envelope(command: &str, body: Value) -> Value {
    let mut v = json!({ "schema": SCHEMA, "command": command });
    if let (Value::Object(map), Value::Object(extra)) = (&mut v, body) {
        map.extend(extra);
    }
    v
}

fn to_value<T: Serialize>(t: &T) -> anyhow::Result<Value> {
    Ok(serde_json::to_value(t)?)
}

fn load_graph(path: &Path) -> anyhow::Result<ColouredGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(read_graph(&text)?)
}

fn solver_workers(workers: usize) -> usize {
    if workers > 0 {
        workers
    } else {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("violation: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Anomaly(e)) => {
            eprintln!("anomaly: {e:#}");
            if let Some(Error::Anomaly(a)) = e.downcast_ref::<Error>() {
                let path = cli.global.out.as_ref().map_or_else(
                    || PathBuf::from("monotile-anomaly.json"),
                    |p| p.with_extension("anomaly.json"),
                );
                match serde_json::to_string_pretty(a).map(|s| fs::write(&path, s)) {
                    Ok(Ok(())) => eprintln!("witness written to {}", path.display()),
                    _ => eprintln!("could not write witness to {}", path.display()),
                }
            }
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let out = Output { global: &cli.global };
    let g = &cli.global;
    match &cli.command {
        Command::Gen(args) => gen(args, g, &out),
        Command::Solve { mode, input, budget } => {
            let graph = load_graph(input)?;
            let opts = SolveOptions {
                budget: *budget,
                workers: solver_workers(g.workers),
            };
            let res = match mode {
                SolveMode::Mixed => max_mixed_tiling(&graph, &opts),
                SolveMode::Single => max_single_colour_tiling(&graph, &opts),
            };
            res.tiling.verify_triangles(&graph, matches!(mode, SolveMode::Single))?;
            out.emit("solve", to_value(&res)?, || {
                let status = if res.proved_optimal { "proved" } else { "budget exhausted" };
                format!("optimum {} ({status}, {} nodes)\n", res.optimum, res.nodes_explored)
            })?;
            Ok(())
        }
        Command::Tile {
            alg,
            input,
            phased_mode,
        } => tile(alg, input, *phased_mode, &out),
        Command::Verify(args) => verify(args, g, &out),
        Command::Ramsey(args) => ramsey("ramsey", compute_ramsey(args.ell, args.r, args.n_max)?, &out),
        Command::SpecialRamsey(args) => {
            ramsey("special-ramsey", compute_special_ramsey(args.ell, args.r, args.n_max)?, &out)
        }
        Command::Probe {
            nmin,
            nmax,
            samples,
            budget,
        } => {
            let mut grid = ProbeGrid::new(*nmin, *nmax);
            grid.budget = *budget;
            let recs = probe_question(&grid, *samples, g.seed, g.workers)?;
            if g.json {
                out.write(&(envelope("probe", json!({ "records": recs })).to_string() + "\n"))?;
            } else {
                let mut buf = Vec::new();
                write_probe_csv(&recs, &mut buf)?;
                out.write(&String::from_utf8(buf).context("probe CSV")?)?;
            }
            let below: Vec<_> = recs.iter().filter(|r| r.below_formula).collect();
            if let Some(first) = below.first() {
                return Err(Failure::Violation(format!(
                    "{} record(s) below the formula, first: n={} delta={} source={}",
                    below.len(),
                    first.n,
                    first.delta,
                    first.source
                )));
            }
            Ok(())
        }
        Command::Audit { budget } => {
            let opts = SolveOptions {
                budget: *budget,
                workers: solver_workers(g.workers),
            };
            let rows = audit_tightness(&audit_grid(), &opts)?;
            if g.json {
                out.write(&(envelope("audit", json!({ "rows": rows })).to_string() + "\n"))?;
            } else {
                let mut w = String::from("construction,n,delta,objective,optimum,proved,lemma_bound,theorem_bound,pass\n");
                for r in &rows {
                    w.push_str(&format!(
                        "{},{},{},{},{},{},{},{},{}\n",
                        r.construction,
                        r.n,
                        r.delta,
                        serde_json::to_value(r.objective)?.as_str().unwrap_or_default(),
                        r.optimum,
                        r.proved_optimal,
                        r.lemma_bound,
                        r.theorem_bound.map_or(String::new(), |t| t.to_string()),
                        r.passes()
                    ));
                }
                out.write(&w)?;
            }
            match rows.iter().find(|r| !r.passes()) {
                Some(r) => Err(Failure::Violation(format!("{} on n={} delta={} is not tight", r.construction, r.n, r.delta))),
                None => Ok(()),
            }
        }
        Command::Experiment(args) => experiment(args, g, &out),
    }
}

fn gen(args: &GenArgs, g: &Global, out: &Output) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let (graph, sidecar) = match args.variant.as_str() {
        "random-complete" => (random_complete(args.n, 2, &mut rng)?, None),
        "random-min-degree" => (random_min_degree(args.n, args.delta, 2, &mut rng)?, None),
        name => {
            let variant: Variant = name.parse()?;
            let c = build(&ConstructionParams {
                variant,
                n: args.n,
                delta: args.delta,
                extra: args.extra.clone(),
            })?;
            let sidecar = c.sidecar();
            (c.graph, Some(sidecar))
        }
    };
    if g.json {
        let body = json!({ "graph": GraphJson::from(&graph), "construction": sidecar });
        out.write(&(envelope("gen", body).to_string() + "\n"))?;
    } else {
        out.write(&write_graph(&graph))?;
    }
    if let (Some(path), Some(sidecar)) = (&g.out, &sidecar) {
        let side = path.with_extension("sidecar.json");
        fs::write(&side, serde_json::to_string_pretty(sidecar)?)
            .with_context(|| format!("writing {}", side.display()))?;
    }
    Ok(())
}

fn tile(alg: &str, input: &Path, mode: PhasedArg, out: &Output) -> Outcome {
    let graph = load_graph(input)?;
    if alg == "phased" {
        let k = find_mono_clique(&graph, PHASED_CLIQUE_SIZE)
            .ok_or_else(|| anyhow::anyhow!("no monochromatic K{PHASED_CLIQUE_SIZE} to seed the phased tiler"))?;
        let mode = match mode {
            PhasedArg::Strict => PhasedMode::Strict,
            PhasedArg::Relaxed => PhasedMode::Relaxed,
        };
        let report = phased_tiler(&graph, 2, 3, &k, mode)?;
        report.tiling.verify_triangles(&graph, false)?;
        out.emit("tile", json!({ "algorithm": alg, "report": report }), || {
            format!("{} triangles, phases {:?}\n", report.tiling.size(), report.phase_counts)
        })?;
        return Ok(());
    }
    let alg: Algorithm = alg.parse()?;
    let tiling = alg.run(&graph)?;
    tiling.verify_triangles(&graph, alg.single_colour())?;
    let guarantee = alg.guarantee(graph.n(), graph.min_degree());
    out.emit(
        "tile",
        json!({ "algorithm": alg, "size": tiling.size(), "guarantee": guarantee, "tiling": tiling }),
        || format!("{} triangles (guarantee {guarantee})\n", tiling.size()),
    )?;
    Ok(())
}

fn verify(args: &VerifyArgs, g: &Global, out: &Output) -> Outcome {
    if let Some(path) = &args.reload {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let v: Value = serde_json::from_str(&text)?;
        let reports = v.get("reports").cloned().unwrap_or(v);
        let reports: Vec<LemmaReport> = match reports {
            Value::Array(_) => serde_json::from_value(reports)?,
            single => vec![serde_json::from_value(single)?],
        };
        for r in &reports {
            r.recheck()?;
        }
        let violations: u64 = reports.iter().map(|r| r.violation_count).sum();
        out.emit("verify", json!({ "reloaded": reports.len(), "violations": violations }), || {
            format!("{} report(s) rechecked, {violations} genuine violation(s)\n", reports.len())
        })?;
        return Ok(());
    }
    let Some(lemma) = args.lemma.as_deref() else {
        return Err(Failure::Usage(anyhow::anyhow!("verify needs --lemma or --reload")));
    };
    let w = g.workers;
    let reports = match lemma {
        "fact-k6" => vec![verify_fact_k6(w)?],
        "mono-triangle" => vec![verify_mono_triangle(args.n, w)?],
        "claim-k7" => vec![verify_claim_k7(w)?],
        "lemma-k8" => vec![verify_lemma_k8(w, args.extractor_samples)?],
        "sharpness-k7" => vec![verify_sharpness_k7(w)?],
        "bowtie" => {
            let (a, b) = verify_bowtie_lemmas(w)?;
            vec![a, b]
        }
        "bowtie-through-vertex" => vec![verify_bowtie_through_vertex(w)?],
        "second-bowtie" => vec![verify_second_bowtie(w)?],
        "k7x2" => {
            let cfg = AdversarialConfig {
                restarts: args.restarts,
                max_steps: args.max_steps,
                plateau: args.plateau,
            };
            let (a, b) = verify_k7_blowup(args.samples, cfg, g.seed, w)?;
            vec![a, b]
        }
        other => bail_usage(format!("unknown lemma {other:?}"))?,
    };
    let body = json!({ "reports": reports });
    out.emit("verify", body.clone(), || {
        reports
            .iter()
            .map(|r| {
                format!(
                    "{} {:?}: checked {} (x{}) of {}, qualifying {}, violations {}, extractor failures {}/{}, {} ms\n",
                    r.lemma,
                    r.mode,
                    r.checked,
                    r.reduction_factor,
                    r.universe_size,
                    r.qualifying,
                    r.violation_count,
                    r.extractor_failures,
                    r.extractor_runs,
                    r.elapsed_ms
                )
            })
            .collect()
    })?;
    if reports.iter().all(LemmaReport::holds) {
        return Ok(());
    }
    let path = match (&g.out, g.json) {
        (Some(p), true) => p.clone(),
        _ => {
            let p = PathBuf::from(format!("{lemma}-report.json"));
            fs::write(&p, envelope("verify", body).to_string() + "\n")
                .with_context(|| format!("writing {}", p.display()))?;
            p
        }
    };
    let count: u64 = reports.iter().map(|r| r.violation_count + r.extractor_failures).sum();
    Err(Failure::Violation(format!("{count} violation(s); witnesses in {}", path.display())))
}

fn bail_usage<T>(msg: String) -> Result<T, Failure> {
    Err(Failure::Usage(anyhow::anyhow!(msg)))
}

fn ramsey(command: &str, res: RamseyResult, out: &Output) -> Outcome {
    out.emit(command, to_value(&res)?, || match res.value {
        Some(v) => format!("{v}\n"),
        None => format!("unknown (above {})\n", res.scanned.last().map_or(0, |s| s.0)),
    })?;
    Ok(())
}

fn parse_deltas(s: &str) -> anyhow::Result<Vec<usize>> {
    if let Some((a, b)) = s.split_once("..") {
        let (a, b): (usize, usize) = (a.trim().parse()?, b.trim().parse()?);
        if a > b {
            bail!("empty delta range {s}");
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|x| Ok(x.trim().parse()?)).collect()
}

fn experiment(args: &ExperimentArgs, g: &Global, out: &Output) -> Outcome {
    let cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str(&text)?
        }
        None => {
            let (Some(variant), Some(n), Some(deltas)) = (args.variant, args.n, args.deltas.as_deref()) else {
                return bail_usage("experiment needs --config or --variant, --n and --deltas".into());
            };
            SweepConfig {
                variant,
                n,
                deltas: parse_deltas(deltas)?,
                extra: args.extra.clone(),
                budget: args.budget,
                workers: solver_workers(g.workers),
            }
        }
    };
    let res = run_sweep(&cfg)?;
    if g.json {
        out.write(&(envelope("experiment", to_value(&res)?).to_string() + "\n"))?;
    } else {
        let mut buf = Vec::new();
        write_sweep_csv(&res, &mut buf)?;
        out.write(&String::from_utf8(buf).context("sweep CSV")?)?;
    }
    if res.truncated {
        eprintln!("sweep truncated: a solve exhausted its budget");
    }
    Ok(())
}
