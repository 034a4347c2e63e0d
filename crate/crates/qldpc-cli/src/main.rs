use clap::{Parser, Subcommand};
use qldpc_cli::config::{CodeSource, DecoderEntry, DecoderKindName, ExperimentConfig, OutputFormat};
use qldpc::alist::{read_alist, write_alist};
use qldpc::code::{hypergraph_product, lifted_product, CssCode};
use qldpc::decoder::{DecoderConfig, DecoderKind};
use qldpc::error::Error as LibError;
use qldpc::qc::QcMatrix;
use qldpc::sim::{code_fingerprint, estimate_ler, DecoderSpec, LerPoint, SimOptions};
use qldpc::tanner::TannerGraph;
use qldpc::trapset::{
    build_bias_transfer, classify_ts, enumerate_generator_combos, induced_subgraph,
    ClassificationReport,
};
use serde::Serialize;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Construction, decoding, trapping-set analysis, and Monte Carlo
/// simulation of hypergraph-product and lifted-product CSS codes.
#[derive(Parser)]
#[command(name = "qldpc", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a CSS code and write its parity checks as alist files.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Estimate logical error rates from an experiment config.
    Simulate {
        /// Experiment description (TOML).
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<u64>,
        /// Depolarizing probabilities; overrides the config grid.
        #[arg(long = "p")]
        p: Vec<f64>,
        /// Run only the decoder entries with this name.
        #[arg(long)]
        decoder: Option<String>,
        /// Override every decoder's iteration cap.
        #[arg(long)]
        max_iters: Option<usize>,
        /// Override every min-sum decoder's normalization.
        #[arg(long)]
        w: Option<f64>,
        /// Trial-level parallelism; outputs do not depend on it.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
    /// Enumerate generator combinations and classify each as trapping or
    /// not under a chosen decoder.
    AnalyzeTs {
        /// First factor parity-check matrix (alist).
        #[arg(long)]
        h1: PathBuf,
        /// Second factor parity-check matrix (alist).
        #[arg(long)]
        h2: PathBuf,
        /// Largest generator-combination size |I||J| to enumerate.
        #[arg(long, default_value_t = 1)]
        max_generators: usize,
        #[arg(long, default_value = "bf")]
        decoder: String,
        #[arg(long, default_value_t = 100)]
        max_iters: usize,
        /// Log2 of the pattern-enumeration budget per combination.
        #[arg(long, default_value_t = 20)]
        budget_log2: u32,
        /// Seed for the random tie-break decoder.
        #[arg(long)]
        seed: Option<u64>,
        /// Write the JSON reports here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Directory for DOT renderings of each classified subgraph.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ConstructKind {
    /// Hypergraph product of two classical codes.
    Hp {
        #[arg(long)]
        h1: PathBuf,
        #[arg(long)]
        h2: PathBuf,
        /// Prefix for the emitted `<prefix>.hx.alist` / `<prefix>.hz.alist`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lifted product of two QC weight matrices.
    Lp {
        #[arg(long)]
        w1: PathBuf,
        #[arg(long)]
        w2: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    Usage(String),
    Data(String),
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<LibError> for CliError {
    fn from(e: LibError) -> Self {
        match e {
            LibError::CssViolation => CliError::Internal(e.to_string()),
            LibError::InvalidDecoderConfig(_)
            | LibError::MissingSeed
            | LibError::EmptyEnsemble
            | LibError::NonFiniteMessage => CliError::Usage(e.to_string()),
            other => CliError::Data(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Construct { kind } => cmd_construct(kind),
        Command::Simulate {
            config,
            seed,
            trials,
            p,
            decoder,
            max_iters,
            w,
            jobs,
            output,
            format,
        } => {
            let text = fs::read_to_string(&config)
                .map_err(|e| CliError::Data(format!("{}: {e}", config.display())))?;
            let mut cfg = ExperimentConfig::parse(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", config.display())))?;
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            if let Some(trials) = trials {
                cfg.trials = trials;
            }
            if !p.is_empty() {
                cfg.p = p;
            }
            if let Some(jobs) = jobs {
                cfg.jobs = jobs;
            }
            if let Some(output) = output {
                cfg.output = Some(output);
            }
            if let Some(format) = format {
                cfg.format = format;
            }
            if let Some(name) = decoder {
                cfg.decoders.retain(|d| d.name == name);
                if cfg.decoders.is_empty() {
                    return Err(CliError::Usage(format!("no decoder named {name:?}")));
                }
            }
            if let Some(cap) = max_iters {
                for d in &mut cfg.decoders {
                    override_iters(d, cap);
                }
            }
            if let Some(w) = w {
                for d in &mut cfg.decoders {
                    override_w(d, w);
                }
            }
            cmd_simulate(&cfg)
        }
        Command::AnalyzeTs {
            h1,
            h2,
            max_generators,
            decoder,
            max_iters,
            budget_log2,
            seed,
            output,
            dot,
        } => cmd_analyze_ts(
            &h1,
            &h2,
            max_generators,
            &decoder,
            max_iters,
            budget_log2,
            seed,
            output.as_deref(),
            dot.as_deref(),
        ),
    }
}

fn override_iters(entry: &mut DecoderEntry, cap: usize) {
    entry.max_iters = Some(cap);
    if let Some(members) = &mut entry.members {
        for m in members {
            override_iters(m, cap);
        }
    }
}

fn override_w(entry: &mut DecoderEntry, w: f64) {
    entry.w = Some(w);
    if let Some(members) = &mut entry.members {
        for m in members {
            override_w(m, w);
        }
    }
}

fn load_alist(path: &Path) -> Result<qldpc::BinaryMatrix, CliError> {
    let file = fs::File::open(path)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    read_alist(file).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn load_qc(path: &Path) -> Result<QcMatrix, CliError> {
    let file = fs::File::open(path)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    QcMatrix::read_from(file).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn build_code(source: &CodeSource) -> Result<CssCode, CliError> {
    match source {
        CodeSource::Hp { h1, h2 } => {
            Ok(hypergraph_product(&load_alist(h1)?, &load_alist(h2)?)?)
        }
        CodeSource::Lp { w1, w2 } => Ok(lifted_product(&load_qc(w1)?, &load_qc(w2)?)?),
    }
}

fn cmd_construct(kind: ConstructKind) -> Result<(), CliError> {
    let (code, out) = match kind {
        ConstructKind::Hp { h1, h2, out } => {
            (hypergraph_product(&load_alist(&h1)?, &load_alist(&h2)?)?, out)
        }
        ConstructKind::Lp { w1, w2, out } => {
            (lifted_product(&load_qc(&w1)?, &load_qc(&w2)?)?, out)
        }
    };
    println!(
        "n={} k={} n_vv={} n_cc={} m_x={} m_z={} css=ok",
        code.n(),
        code.k(),
        code.n_vv(),
        code.n_cc(),
        code.h_x().rows(),
        code.h_z().rows()
    );
    if let Some(prefix) = out {
        let write = |suffix: &str, m: &qldpc::BinaryMatrix| -> Result<(), CliError> {
            let mut path = prefix.as_os_str().to_owned();
            path.push(suffix);
            let path = PathBuf::from(path);
            let mut file = fs::File::create(&path)
                .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
            write_alist(m, &mut file)?;
            Ok(())
        };
        write(".hx.alist", code.h_x())?;
        write(".hz.alist", code.h_z())?;
    }
    Ok(())
}

/// Builds the per-point decoder spec: channel-dependent biases are
/// resolved here, including the bias transfer onto factor-graph copies.
fn build_decoder_spec(
    entry: &DecoderEntry,
    code: &CssCode,
    p: f64,
) -> Result<DecoderSpec, CliError> {
    match entry.kind {
        DecoderKindName::Diversity => {
            let members = entry.members.as_deref().unwrap_or(&[]);
            if members.is_empty() {
                return Err(CliError::Usage(format!(
                    "diversity decoder {:?} has no members",
                    entry.name
                )));
            }
            let mut configs = Vec::with_capacity(members.len());
            for m in members {
                match build_decoder_spec(m, code, p)? {
                    DecoderSpec::Single(cfg) => configs.push(cfg),
                    DecoderSpec::Diversity(_) => {
                        return Err(CliError::Usage(
                            "nested diversity decoders are not supported".into(),
                        ))
                    }
                }
            }
            Ok(DecoderSpec::Diversity(configs))
        }
        kind => {
            let lib_kind = match kind {
                DecoderKindName::Bf => DecoderKind::Bf,
                DecoderKindName::Tsbf => DecoderKind::Tsbf,
                DecoderKindName::TsbfRandomTiebreak => DecoderKind::TsbfRandomTiebreak,
                DecoderKindName::Minsum => DecoderKind::Minsum,
                DecoderKindName::MinsumScheduled | DecoderKindName::BiasTransfer => {
                    DecoderKind::MinsumScheduled
                }
                DecoderKindName::Diversity => unreachable!(),
            };
            let mut cfg = DecoderConfig::new(lib_kind, entry.max_iters.unwrap_or(100));
            cfg = cfg.with_channel(p);
            if let Some(w) = entry.w {
                cfg.w = w;
            }
            cfg.rng_seed = entry.seed;
            if kind == DecoderKindName::BiasTransfer {
                let scale = entry.bias_scale.ok_or_else(|| {
                    CliError::Usage(format!(
                        "bias-transfer decoder {:?} needs bias-scale",
                        entry.name
                    ))
                })?;
                let factor_edges = factor_edge_count(code);
                let classical = vec![scale * ((1.0 - p) / p).ln(); factor_edges];
                cfg.edge_bias = Some(build_bias_transfer(code, &classical, p)?);
            }
            Ok(DecoderSpec::Single(cfg))
        }
    }
}

fn factor_edge_count(code: &CssCode) -> usize {
    match code.provenance() {
        qldpc::Provenance::HypergraphProduct { h2, .. } => {
            (0..h2.rows()).map(|r| h2.row_weight(r)).sum()
        }
        qldpc::Provenance::LiftedProduct { w2, .. } => {
            let h2 = w2.lift();
            (0..h2.rows()).map(|r| h2.row_weight(r)).sum()
        }
        qldpc::Provenance::Explicit => 0,
    }
}

#[derive(Serialize)]
struct RunManifest<'a> {
    seed: u64,
    trials: u64,
    p: &'a [f64],
    jobs: usize,
    max_failures: u64,
    code_n: usize,
    code_k: usize,
    code_fingerprint: String,
    decoders: &'a [DecoderEntry],
}

#[derive(Serialize)]
struct JsonPoint<'a> {
    decoder: &'a str,
    #[serde(flatten)]
    point: &'a LerPoint,
}

fn cmd_simulate(cfg: &ExperimentConfig) -> Result<(), CliError> {
    if cfg.trials == 0 {
        return Err(CliError::Usage("trials must be at least 1".into()));
    }
    if cfg.p.is_empty() {
        return Err(CliError::Usage("at least one p value is required".into()));
    }
    if cfg.decoders.is_empty() {
        return Err(CliError::Usage("at least one decoder is required".into()));
    }
    let code = build_code(&cfg.code)?;
    let fingerprint = code_fingerprint(&code);

    let mut opts = SimOptions::new(cfg.trials, cfg.seed);
    opts.parallelism = cfg.jobs;
    opts.max_failures = cfg.max_failures;
    let mut results: Vec<(String, Vec<LerPoint>)> = Vec::new();
    for entry in &cfg.decoders {
        // Resolve channel-dependent biases for every point up front.
        let specs: Vec<DecoderSpec> = cfg
            .p
            .iter()
            .map(|&p| build_decoder_spec(entry, &code, p))
            .collect::<Result<_, CliError>>()?;
        let points = estimate_ler(
            &code,
            |p| {
                let idx = cfg.p.iter().position(|&q| q == p).expect("p from the grid");
                Ok(specs[idx].clone())
            },
            &cfg.p,
            &opts,
        )?;
        results.push((entry.name.clone(), points));
    }

    let rendered = match cfg.format {
        OutputFormat::Csv => {
            let mut out = String::from("p,trials,failures,ler,ci_lo,ci_hi,decoder,code\n");
            for (name, points) in &results {
                for pt in points {
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{},{}\n",
                        pt.p, pt.trials, pt.failures, pt.ler, pt.ci_lo, pt.ci_hi, name, fingerprint
                    ));
                }
            }
            out
        }
        OutputFormat::Json => {
            let flat: Vec<JsonPoint> = results
                .iter()
                .flat_map(|(name, points)| {
                    points.iter().map(move |point| JsonPoint {
                        decoder: name,
                        point,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&flat).expect("points serialize") + "\n"
        }
    };
    match &cfg.output {
        Some(path) => fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }

    let manifest = RunManifest {
        seed: cfg.seed,
        trials: cfg.trials,
        p: &cfg.p,
        jobs: cfg.jobs,
        max_failures: cfg.max_failures,
        code_n: code.n(),
        code_k: code.k(),
        code_fingerprint: fingerprint,
        decoders: &cfg.decoders,
    };
    let manifest_path = cfg.manifest.clone().or_else(|| {
        cfg.output
            .as_ref()
            .map(|p| p.with_extension("manifest.json"))
    });
    if let Some(path) = manifest_path {
        fs::write(
            path,
            serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n",
        )?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_analyze_ts(
    h1: &Path,
    h2: &Path,
    max_generators: usize,
    decoder: &str,
    max_iters: usize,
    budget_log2: u32,
    seed: Option<u64>,
    output: Option<&Path>,
    dot: Option<&Path>,
) -> Result<(), CliError> {
    let code = hypergraph_product(&load_alist(h1)?, &load_alist(h2)?)?;
    let kind = match decoder {
        "bf" => DecoderKind::Bf,
        "tsbf" => DecoderKind::Tsbf,
        "tsbf-random-tiebreak" => DecoderKind::TsbfRandomTiebreak,
        "minsum" => DecoderKind::Minsum,
        "minsum-scheduled" => DecoderKind::MinsumScheduled,
        other => {
            return Err(CliError::Usage(format!("unknown decoder {other:?}")));
        }
    };
    let mut cfg = DecoderConfig::new(kind, max_iters).with_channel(0.05);
    cfg.rng_seed = seed;
    if kind == DecoderKind::TsbfRandomTiebreak && seed.is_none() {
        return Err(CliError::Usage("--seed is required for the tie-break decoder".into()));
    }

    #[derive(Serialize)]
    #[serde(untagged)]
    enum Entry {
        Report(ClassificationReport),
        Skipped {
            generators: Vec<usize>,
            error: String,
        },
    }

    let combos = enumerate_generator_combos(&code, max_generators)?;
    let graph = TannerGraph::z_graph(&code);
    let mut entries = Vec::with_capacity(combos.len());
    for (idx, rows) in combos.iter().enumerate() {
        let sub = induced_subgraph(&code, rows)?;
        if let Some(dir) = dot {
            fs::create_dir_all(dir)?;
            let rendered = graph.to_dot(Some(&sub.qubits()), Some(sub.internal_checks()));
            fs::write(dir.join(format!("subgraph_{idx:04}.dot")), rendered)?;
        }
        match classify_ts(&code, &sub, &cfg, budget_log2) {
            Ok(class) => entries.push(Entry::Report(ClassificationReport::new(&sub, &class))),
            Err(e @ LibError::BudgetExceeded { .. }) => entries.push(Entry::Skipped {
                generators: rows.clone(),
                error: e.to_string(),
            }),
            Err(e) => return Err(e.into()),
        }
    }
    let rendered = serde_json::to_string_pretty(&entries).expect("reports serialize") + "\n";
    match output {
        Some(path) => fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(())
}
