//! Experiment CLI: reduced-PTM dumps, twirl-set generation,
//! measurement-circuit compilation, experiment runs, and bound reports.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use memtwirl::harness::{relative_log_errors, ExperimentId, Method};
use memtwirl::{
    aggregate, compile_mt, error_bound_random, error_bound_subsystem, lambda_to_ptm, ptm_dump,
    random_twirl_set, run_experiment, sbpt_set, write_records_csv, write_summary_csv,
    BoundInputs, ExperimentConfig, MtPlan, NoiseSpec, ResultRecord, ZMask,
};

#[derive(Parser)]
#[command(name = "memtwirl", about = "Measurement error mitigation experiments", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dump the reduced-PTM magnitudes of a noise model as CSV.
    Ptm(PtmArgs),
    /// Generate a twirling set, one Pauli string per line.
    TwirlGen(TwirlGenArgs),
    /// Compile a Pauli-Z observable into a measurement circuit.
    Compile(CompileArgs),
    /// Run a configured experiment and write result records.
    Run(RunArgs),
    /// Report twirl-set error bounds for an observable under a noise model.
    Bounds(BoundsArgs),
}

#[derive(Args)]
struct PtmArgs {
    /// Noise description file (TOML, same schema as the [noise] table).
    #[arg(long)]
    noise: PathBuf,
    /// Output CSV path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TwirlGenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    size: usize,
    /// "random" or "sub" (subsystem-balanced).
    #[arg(long, default_value = "random")]
    kind: String,
    /// Balanced support as an observable string (e.g. ZZIIII) or a
    /// comma-separated qubit list (e.g. 1,2); required for --kind sub.
    #[arg(long)]
    support: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompileArgs {
    /// Observable string over {I, Z}, leftmost character is qubit 1.
    #[arg(long)]
    observable: String,
    /// Desired effective weight.
    #[arg(long)]
    target_weight: Option<usize>,
    /// Explicit target qubits, comma separated.
    #[arg(long)]
    targets: Option<String>,
    /// Emit the layered form with blank lines between layers.
    #[arg(long)]
    layered: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    /// Experiment description (TOML mirroring the config fields).
    #[arg(long)]
    config: PathBuf,
    /// Master seed override.
    #[arg(long)]
    seed: Option<u64>,
    /// Records CSV path; experiments with several observables write one
    /// file per observable with the observable appended to the stem.
    #[arg(long, default_value = "results.csv")]
    out: PathBuf,
    /// Worker threads for replicates (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Also write a per-point summary CSV next to the records.
    #[arg(long)]
    summary: bool,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    noise: PathBuf,
    #[arg(long)]
    observable: String,
    /// Twirl-set size |S|.
    #[arg(long)]
    size: usize,
    #[arg(long, default_value_t = 0.05)]
    delta: f64,
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Ptm(args) => cmd_ptm(args),
        Command::TwirlGen(args) => cmd_twirl_gen(args),
        Command::Compile(args) => cmd_compile(args),
        Command::Run(args) => cmd_run(args),
        Command::Bounds(args) => cmd_bounds(args),
    }
}

fn load_noise(path: &Path) -> Result<NoiseSpec> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading noise file {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("parsing noise file {}", path.display()))
}

fn write_out(out: &Option<PathBuf>, payload: &[u8]) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, payload).with_context(|| format!("writing {}", path.display()))?
        }
        None => std::io::stdout().write_all(payload)?,
    }
    Ok(())
}

fn cmd_ptm(args: PtmArgs) -> Result<()> {
    let spec = load_noise(&args.noise)?;
    let mut buf = Vec::new();
    ptm_dump(&spec, &mut buf)?;
    write_out(&args.out, &buf)
}

fn parse_support(raw: &str, n: usize) -> Result<ZMask> {
    if raw.chars().all(|c| matches!(c.to_ascii_uppercase(), 'I' | 'Z')) {
        let z: ZMask = raw.parse()?;
        if z.n() != n {
            bail!("support string has {} qubits, expected {n}", z.n());
        }
        return Ok(z);
    }
    let mut mask = 0usize;
    for part in raw.split(',') {
        let q: usize = part.trim().parse().context("support qubit index")?;
        if q == 0 || q > n {
            bail!("support qubit {q} out of range 1..={n}");
        }
        mask |= 1 << (q - 1);
    }
    Ok(ZMask::new(n, mask)?)
}

fn cmd_twirl_gen(args: TwirlGenArgs) -> Result<()> {
    let set = match args.kind.as_str() {
        "random" => random_twirl_set(args.n, args.size, args.seed)?,
        "sub" => {
            let raw = args
                .support
                .as_deref()
                .context("--kind sub requires --support")?;
            let support = parse_support(raw, args.n)?;
            sbpt_set(&support, args.n, args.size, args.seed)?
        }
        other => bail!("unknown twirl kind '{other}' (use random|sub)"),
    };
    let mut buf = Vec::new();
    set.export(&mut buf)?;
    write_out(&args.out, &buf)
}

fn cmd_compile(args: CompileArgs) -> Result<()> {
    let z: ZMask = args.observable.parse()?;
    let plan = match (&args.target_weight, &args.targets) {
        (Some(k), None) => MtPlan::to_weight(z, *k)?,
        (None, Some(t)) => {
            let targets: Vec<usize> = t
                .split(',')
                .map(|p| p.trim().parse::<usize>().context("target qubit"))
                .collect::<Result<_>>()?;
            MtPlan::with_targets(z, &targets)?
        }
        _ => bail!("provide exactly one of --target-weight / --targets"),
    };
    let (circuit, effective) = compile_mt(&plan)?;
    let mut buf = Vec::new();
    buf.extend_from_slice(circuit.to_text(args.layered).as_bytes());
    write_out(&args.out, &buf)?;
    eprintln!(
        "effective {} depth {} gates {}",
        effective,
        circuit.depth(),
        circuit.len()
    );
    Ok(())
}

fn records_path(base: &Path, observable: &str, multiple: bool) -> PathBuf {
    if !multiple {
        return base.to_path_buf();
    }
    let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("results");
    let ext = base.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    base.with_file_name(format!("{stem}_{observable}.{ext}"))
}

fn cmd_run(args: RunArgs) -> Result<()> {
    if let Some(threads) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the worker pool")?;
    }
    let text = fs::read_to_string(&args.config)
        .with_context(|| format!("reading config {}", args.config.display()))?;
    let mut cfg: ExperimentConfig =
        toml::from_str(&text).with_context(|| format!("parsing {}", args.config.display()))?;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }

    if cfg.experiment == ExperimentId::PtmDump {
        let mut buf = Vec::new();
        ptm_dump(&cfg.noise, &mut buf)?;
        fs::write(&args.out, &buf)?;
        println!("wrote reduced-PTM dump to {}", args.out.display());
        return Ok(());
    }

    // Depth report for transformation plans before the run.
    if cfg.methods.iter().any(Method::uses_transformation) {
        for template in &cfg.observables {
            let z: ZMask = if template == "global" {
                ZMask::full(cfg.n)
            } else {
                template.parse()?
            };
            for (idx, mt) in cfg.mt.iter().enumerate() {
                let plan = match (&mt.target_weight, &mt.targets) {
                    (Some(k), None) => MtPlan::to_weight(z, *k)?,
                    (None, Some(t)) => MtPlan::with_targets(z, t)?,
                    _ => bail!("mt entry {idx} needs one of target_weight/targets"),
                };
                let (circuit, eff) = compile_mt(&plan)?;
                println!(
                    "compile {template} plan {idx}: effective {eff} depth {} gates {}",
                    circuit.depth(),
                    circuit.len()
                );
            }
        }
    }

    let records = run_experiment(&cfg)?;
    let multiple = cfg.observables.len() > 1;
    for template in &cfg.observables {
        let subset: Vec<ResultRecord> = records
            .iter()
            .filter(|r| &r.observable == template)
            .cloned()
            .collect();
        let path = records_path(&args.out, template, multiple);
        let mut buf = Vec::new();
        write_records_csv(&subset, &mut buf)?;
        fs::write(&path, &buf).with_context(|| format!("writing {}", path.display()))?;
        println!("wrote {} records to {}", subset.len(), path.display());
    }

    let summary = aggregate(&records);
    println!("observable,method,param,mean_abs_error,sem,count");
    for row in &summary {
        println!(
            "{},{},{}={},{:.6e},{:.6e},{}",
            row.observable,
            row.method,
            row.param_name,
            row.param_value,
            row.mean_abs_error,
            row.sem,
            row.count
        );
    }
    if cfg.experiment == ExperimentId::Fig3c {
        println!("relative log errors (vs noisy):");
        for (obs, method, param, value) in relative_log_errors(&summary) {
            println!("{obs},{method},n={param},{value:.4}");
        }
    }
    if args.summary {
        let path = args.out.with_file_name(format!(
            "{}_summary.csv",
            args.out.file_stem().and_then(|s| s.to_str()).unwrap_or("results")
        ));
        let mut buf = Vec::new();
        write_summary_csv(&summary, &mut buf)?;
        fs::write(&path, &buf)?;
        println!("wrote summary to {}", path.display());
    }
    Ok(())
}

fn cmd_bounds(args: BoundsArgs) -> Result<()> {
    let spec = load_noise(&args.noise)?;
    let z: ZMask = args.observable.parse()?;
    let lam = spec.build()?;
    let ptm = lambda_to_ptm(&lam);
    let inputs = BoundInputs { ptm: &ptm, r: z, set_size: args.size, delta: args.delta };
    println!("observable = {z}");
    println!("set_size = {}", args.size);
    println!("delta = {}", args.delta);
    println!("[random-twirl]");
    println!("{}", error_bound_random(&inputs)?);
    println!("[subsystem-balanced]");
    println!("{}", error_bound_subsystem(&inputs)?);
    Ok(())
}
