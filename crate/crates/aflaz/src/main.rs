use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use aflaz::io::{read_sequence_file, write_sequence, write_surface, SeqFormat};
use aflaz::par::theta_report_par;
use aflaz::report::{bounds_csv, bounds_json};
use aflaz::repro::{self, DSetting, Experiment, ExperimentConfig};
use aflaz::verify::{run_verification, DEFAULT_SEED};
use aflaz::{CliError, FftDoppler, Result};
use aflaz_core::bounds::{
    benchmark_ye2022, best_bound, chebyshev_q_opt, corollary_closed_forms, dopt_search,
    theorem1_bounds, theorem2_bounds, weights_a, weights_b, weights_c, BoundParams, BoundReport,
    ClosedForm, DPolicy, Regime, WeightFamily, WeightVector,
};
use aflaz_core::chu::{chu_sequence, order_optimal_laz, theorem3_ratio, ChuAsymptote, ChuSpec};
use aflaz_core::{af_surface_with, LazSpec, SequenceSet};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "aflaz",
    version,
    about = "Ambiguity functions, LAZ lower bounds and Chu sequences"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    A,
    B,
    C,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Iq,
    Phase,
}

#[derive(Subcommand)]
enum Cmd {
    /// |AF|² surface of a sequence (or a pair) over a LAZ.
    Af {
        #[arg(long = "in")]
        input: PathBuf,
        /// Second sequence for a cross-ambiguity surface.
        #[arg(long = "in2")]
        input2: Option<PathBuf>,
        /// LAZ as ZX,ZY.
        #[arg(long, value_parser = parse_laz)]
        laz: (usize, usize),
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lower bounds on the peak sidelobe level over a LAZ.
    Bounds {
        #[arg(long = "N")]
        n: usize,
        #[arg(long = "M")]
        m: usize,
        #[arg(long)]
        zx: usize,
        #[arg(long)]
        zy: usize,
        #[arg(long, value_enum)]
        family: Option<Family>,
        #[arg(long)]
        q: Option<usize>,
        /// `auto` for the exact D sweep, or a fixed integer.
        #[arg(long = "D", default_value = "0")]
        d: String,
        #[arg(long)]
        json: bool,
    },
    /// Chu sequences, their order-optimal LAZ, or an asymptote sweep.
    Chu {
        #[arg(long = "N")]
        n: Option<usize>,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        roots: Vec<i64>,
        /// Lengths for a `N,a,ratio,target` sweep instead of sequence output.
        #[arg(long, value_delimiter = ',')]
        sweep: Option<Vec<usize>>,
        #[arg(long, default_value_t = ChuAsymptote::DEFAULT_BETA)]
        beta: f64,
        #[arg(long, value_enum, default_value = "iq")]
        format: Format,
        /// Output directory for sequences, or file for a sweep.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized oracle checks, one JSON record per line.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce an experiment as CSV.
    Repro {
        #[arg(value_enum)]
        experiment: Experiment,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

fn parse_laz(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected ZX,ZY")?;
    let p = |t: &str| t.trim().parse::<usize>().map_err(|e| e.to_string());
    Ok((p(a)?, p(b)?))
}

fn parse_d(s: &str) -> Result<DPolicy> {
    match s.parse::<usize>() {
        Ok(d) => Ok(DPolicy::Fixed(d)),
        Err(_) => DSetting::Named(s.to_string()).policy(),
    }
}

fn write_or_print(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn weighted(w: &WeightVector, p: &BoundParams, policy: DPolicy) -> Result<BoundReport> {
    let regime = if w.dim() == p.z_x {
        Regime::T1
    } else {
        Regime::T2
    };
    Ok(match policy {
        DPolicy::Optimal => dopt_search(w, p, regime)?.best,
        DPolicy::Zero | DPolicy::Fixed(_) => {
            let d = if let DPolicy::Fixed(d) = policy { d } else { 0 };
            match regime {
                Regime::T1 => theorem1_bounds(w, &p.with_d(d))?,
                Regime::T2 => theorem2_bounds(w, &p.with_d(d))?,
            }
        }
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_bounds(
    n: usize,
    m: usize,
    zx: usize,
    zy: usize,
    family: Option<Family>,
    q: Option<usize>,
    d: &str,
    json: bool,
) -> Result<bool> {
    let p = BoundParams::new(n, m, zx, zy)?;
    let policy = parse_d(d)?;
    let mut reports = Vec::new();
    match (family, q) {
        (Some(Family::A), Some(q)) => reports.push(weighted(&weights_a(q, zx)?, &p, policy)?),
        (Some(Family::B), Some(q)) => {
            reports.push(weighted(&weights_b(q, zx, n, m, zy)?, &p, policy)?)
        }
        (Some(Family::B), None) => {
            let q = chebyshev_q_opt(n, m, zy)?.min(zx);
            reports.push(weighted(&weights_b(q, zx, n, m, zy)?, &p, policy)?);
        }
        (Some(Family::C), _) => reports.push(weighted(&weights_c(n)?, &p, policy)?),
        (Some(Family::A), None) => reports.push(best_bound(&p, &[WeightFamily::A], policy)?),
        (None, _) => {
            if let Ok(b) = best_bound(
                &p,
                &[WeightFamily::A, WeightFamily::B, WeightFamily::C],
                policy,
            ) {
                reports.push(b);
            }
        }
    }
    for kind in ClosedForm::ALL {
        let needs_q = matches!(kind, ClosedForm::UniformQ | ClosedForm::ChebyshevQ);
        if needs_q && q.is_none() {
            continue;
        }
        reports.push(corollary_closed_forms(kind, &p, q)?);
    }
    if zx >= 2 {
        reports.push(benchmark_ye2022(&p)?);
    }
    let text = if json {
        bounds_json(&reports)? + "\n"
    } else {
        bounds_csv(&reports)?
    };
    write_or_print(None, &text)?;
    Ok(true)
}

fn cmd_af(
    input: PathBuf,
    input2: Option<PathBuf>,
    laz: (usize, usize),
    out: Option<PathBuf>,
) -> Result<bool> {
    let x = read_sequence_file(&input)?;
    let y = match &input2 {
        Some(p) => read_sequence_file(p)?,
        None => x.clone(),
    };
    let laz = LazSpec::new(laz.0, laz.1)?;
    let engine = FftDoppler::new(x.len());
    let surface = af_surface_with(&x, &y, laz, &engine)?;
    let mut buf = Vec::new();
    write_surface(&mut buf, &surface)?;
    write_or_print(out.as_ref(), std::str::from_utf8(&buf).expect("ascii"))?;
    if out.is_some() {
        let set = if input2.is_some() {
            SequenceSet::new(vec![x, y])?
        } else {
            SequenceSet::single(x)
        };
        let t = theta_report_par(&set, laz, &engine)?;
        println!("{}", serde_json::to_string(&t)?);
    }
    Ok(true)
}

fn cmd_chu(
    n: Option<usize>,
    roots: Vec<i64>,
    sweep: Option<Vec<usize>>,
    beta: f64,
    format: Format,
    out: Option<PathBuf>,
) -> Result<bool> {
    if let Some(ns) = sweep {
        let c = ChuAsymptote::compute();
        let mut wtr = csv::Writer::from_writer(Vec::new());
        wtr.write_record(["N", "a", "ratio", "target"])?;
        for &n in &ns {
            for &a in &roots {
                let r = theorem3_ratio(n, a, beta)?;
                wtr.write_record([
                    n.to_string(),
                    a.to_string(),
                    r.to_string(),
                    c.target(a).to_string(),
                ])?;
            }
        }
        let text = String::from_utf8(wtr.into_inner().map_err(|e| e.into_error())?).expect("ascii");
        write_or_print(out.as_ref(), &text)?;
        return Ok(true);
    }
    let n = n.ok_or_else(|| CliError::Config("--N is required unless --sweep is given".into()))?;
    let spec = ChuSpec::new(n, roots.clone())?;
    let fmt = match format {
        Format::Iq => SeqFormat::Iq,
        Format::Phase => SeqFormat::Phase,
    };
    match &out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            for &a in spec.roots() {
                let f = fs::File::create(dir.join(format!("chu_N{n}_a{a}.csv")))?;
                write_sequence(std::io::BufWriter::new(f), &chu_sequence(n, a)?, fmt)?;
            }
        }
        None if roots.len() == 1 => {
            write_sequence(std::io::stdout().lock(), &chu_sequence(n, roots[0])?, fmt)?
        }
        None => return Err(CliError::Config("several roots need --out DIR".into())),
    }
    if out.is_some() {
        match order_optimal_laz(&spec) {
            Ok(o) => println!(
                "{}",
                serde_json::json!({"N": n, "roots": spec.roots(), "Zx": o.laz.z_x, "Zy": o.laz.z_y, "roots_close": o.roots_close})
            ),
            Err(e) => println!(
                "{}",
                serde_json::json!({"N": n, "roots": spec.roots(), "order_optimal": e.to_string()})
            ),
        }
    }
    Ok(true)
}

fn cmd_verify(seed: u64, out: Option<PathBuf>) -> Result<bool> {
    let records = run_verification(seed)?;
    let mut text = String::new();
    for r in &records {
        text.push_str(&serde_json::to_string(r)?);
        text.push('\n');
    }
    write_or_print(out.as_ref(), &text)?;
    let failed = records.iter().filter(|r| !r.pass).count();
    eprintln!("{} checks, {} failed (seed {seed})", records.len(), failed);
    Ok(failed == 0)
}

fn cmd_repro(
    experiment: Experiment,
    out: Option<PathBuf>,
    config: Option<PathBuf>,
) -> Result<bool> {
    let cfg = match &config {
        Some(p) => ExperimentConfig::from_json(&fs::read_to_string(p)?)?,
        None => ExperimentConfig::default(),
    };
    let output = repro::run(experiment, &cfg)?;
    let dir = out
        .or_else(|| cfg.out_dir.clone())
        .unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir)?;
    let path = dir.join(output.file_name());
    fs::write(&path, &output.csv)?;
    for c in &output.checks {
        println!(
            "[{}] {}: {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    println!("wrote {}", path.display());
    Ok(output.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Af {
            input,
            input2,
            laz,
            out,
        } => cmd_af(input, input2, laz, out),
        Cmd::Bounds {
            n,
            m,
            zx,
            zy,
            family,
            q,
            d,
            json,
        } => cmd_bounds(n, m, zx, zy, family, q, &d, json),
        Cmd::Chu {
            n,
            roots,
            sweep,
            beta,
            format,
            out,
        } => cmd_chu(n, roots, sweep, beta, format, out),
        Cmd::Verify { seed, out } => cmd_verify(seed, out),
        Cmd::Repro {
            experiment,
            out,
            config,
        } => cmd_repro(experiment, out, config),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
