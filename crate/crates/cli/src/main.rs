//! Command-line interface: model construction, invariant evaluation,
//! summand certificates, plot data and Alexander polynomial reports.
//!
//! Exit codes: 0 on success, 1 on invalid input or an invalid complex,
//! 2 when an exactness cap is exceeded (representative enumeration or
//! stabilization window).

use std::fs;
use std::path::PathBuf;
use std::sync::Mutex;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};

use cfk_core::alexander::{self, Family};
use cfk_core::certificate;
use cfk_core::invariants::{self, UpsilonMode, DEFAULT_ENUMERATION_CAP_LOG2};
use cfk_core::io;
use cfk_core::models::{self, CableModelConfig};
use cfk_core::{Complex, LaurentPoly, Rational};

#[derive(Parser)]
#[command(
    name = "cfk",
    version,
    about = "Exact knot concordance invariants of bifiltered chain complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a model complex and write its JSON document.
    Model(ModelArgs),
    /// tau of a complex.
    Tau { complex: PathBuf },
    /// Upsilon: one exact value (--t), the exact PL function (--exact),
    /// or a sampled reconstruction (--sampled).
    Upsilon(UpsilonArgs),
    /// V_0 of a complex.
    V0 { complex: PathBuf },
    /// nu+ of a complex.
    Nuplus { complex: PathBuf },
    /// Correction term d of +1-surgery: -2 V_0.
    D1 { complex: PathBuf },
    /// Half-grading correction term of 0-surgery: 1/2 + d1.
    Dhalf { complex: PathBuf },
    /// Jump of the Upsilon derivative at --t0.
    Jump {
        complex: PathBuf,
        #[arg(long, value_name = "RATIONAL")]
        t0: String,
    },
    /// nu+-equivalence of two complexes.
    Equiv { a: PathBuf, b: PathBuf },
    /// Jump matrix and summand certificate of a model family.
    Certificate(CertificateArgs),
    /// CSV curve data for Upsilon (one complex or a family).
    Plot(PlotArgs),
    /// Alexander polynomials: satellite pipeline, families, or a complex.
    Alexander(AlexanderArgs),
}

#[derive(Args)]
struct ModelArgs {
    /// unknot | torus | staircase | box | thin | cable
    #[arg(long = "type", value_name = "KIND")]
    kind: String,
    /// Torus parameter p (with --type torus).
    #[arg(long)]
    p: Option<i64>,
    /// Torus parameter q (with --type torus).
    #[arg(long)]
    q: Option<i64>,
    /// Staircase exponents, e.g. 1,0,-1 (with --type staircase).
    #[arg(long, value_name = "LIST")]
    alpha: Option<String>,
    /// Thin-model tau (with --type thin).
    #[arg(long)]
    tau: Option<i64>,
    /// Cable parameter n >= 2 (with --type cable).
    #[arg(long)]
    n: Option<i64>,
    /// Cable a-vector bits, e.g. 0,1,0; all-zero when omitted.
    #[arg(long, value_name = "BITS")]
    a: Option<String>,
    /// Box shifts and top grading (with --type box).
    #[arg(long, default_value_t = 0)]
    shift_i: i64,
    #[arg(long, default_value_t = 0)]
    shift_j: i64,
    #[arg(long, default_value_t = 1)]
    top_maslov: i64,
    /// Override the complex name.
    #[arg(long)]
    name: Option<String>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct UpsilonArgs {
    complex: PathBuf,
    /// Evaluate at one rational parameter in [0,2].
    #[arg(long, value_name = "RATIONAL", conflicts_with_all = ["exact", "sampled"])]
    t: Option<String>,
    /// Emit the exact PL function as JSON.
    #[arg(long, conflicts_with = "sampled")]
    exact: bool,
    /// Emit a sampled PL function (grid denominator) as JSON, verified=false.
    #[arg(long, value_name = "QMAX")]
    sampled: Option<u64>,
    /// Representative-enumeration cap (log2) for --exact.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP_LOG2)]
    cap: u32,
}

#[derive(Args)]
struct CertificateArgs {
    /// Family kind; only `cable` is available.
    #[arg(long, default_value = "cable")]
    family: String,
    /// Inclusive n range, e.g. 2..10.
    #[arg(long, value_name = "LO..HI")]
    n: String,
    /// Largest jump index k.
    #[arg(long)]
    kmax: i64,
    /// Worker threads for family members.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    /// Complex file (omit when plotting a family).
    complex: Option<PathBuf>,
    /// Family kind; only `cable` is available.
    #[arg(long)]
    family: Option<String>,
    /// Inclusive n range for the family, e.g. 2..5.
    #[arg(long, value_name = "LO..HI")]
    n: Option<String>,
    /// Number of grid steps on [0,2].
    #[arg(long, default_value_t = 120)]
    samples: u64,
    /// Worker threads for family members.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AlexanderArgs {
    /// Cable parameters `P Q`: report the (P,Q)-cable of --companion.
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    cable: Option<Vec<i64>>,
    /// Companion for --cable; only `whitehead-double` is available.
    #[arg(long)]
    companion: Option<String>,
    /// Family report: KP | HOM | OSS.
    #[arg(long)]
    family: Option<String>,
    /// Inclusive n range for the family, e.g. 2..10.
    #[arg(long, value_name = "LO..HI")]
    n: Option<String>,
    /// Read the polynomial off a complex file.
    #[arg(long)]
    from_complex: Option<PathBuf>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap would exit with its own code 2; keep 2 reserved for
            // computation caps and use 1 for usage problems
            if e.use_stderr() {
                eprint!("{e}");
                std::process::exit(1);
            }
            print!("{e}");
            std::process::exit(0);
        }
    };
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e:#}");
            let cap = e
                .downcast_ref::<cfk_core::Error>()
                .is_some_and(|err| matches!(err, cfk_core::Error::ComputationCap(_)));
            std::process::exit(if cap { 2 } else { 1 });
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Model(args) => cmd_model(args),
        Command::Tau { complex } => {
            let c = load_complex(&complex)?;
            println!("{}", invariants::tau(&c)?);
            Ok(())
        }
        Command::Upsilon(args) => cmd_upsilon(args),
        Command::V0 { complex } => {
            let c = load_complex(&complex)?;
            println!("{}", invariants::v_k(&c, 0)?);
            Ok(())
        }
        Command::Nuplus { complex } => {
            let c = load_complex(&complex)?;
            println!("{}", invariants::nu_plus(&c)?);
            Ok(())
        }
        Command::D1 { complex } => {
            let c = load_complex(&complex)?;
            println!("{}", invariants::d_surgery_one(&c)?);
            Ok(())
        }
        Command::Dhalf { complex } => {
            let c = load_complex(&complex)?;
            println!(
                "{}",
                io::format_rational(&invariants::d_half_zero_surgery(&c)?)
            );
            Ok(())
        }
        Command::Jump { complex, t0 } => {
            let c = load_complex(&complex)?;
            let t0 = io::parse_rational(&t0)?;
            println!("{}", io::format_rational(&invariants::upsilon_jump(&c, &t0)?));
            Ok(())
        }
        Command::Equiv { a, b } => {
            let ca = load_complex(&a)?;
            let cb = load_complex(&b)?;
            println!("{}", invariants::nu_plus_equivalent(&ca, &cb)?);
            Ok(())
        }
        Command::Certificate(args) => cmd_certificate(args),
        Command::Plot(args) => cmd_plot(args),
        Command::Alexander(args) => cmd_alexander(args),
    }
}

fn load_complex(path: &PathBuf) -> anyhow::Result<Complex> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read complex file {}", path.display()))?;
    let c = io::complex_from_json(&text)?;
    let report = c.validate();
    if !report.is_valid() {
        let mut lines = format!("complex '{}' is invalid:", c.name());
        for v in &report.violations {
            lines.push_str(&format!("\n  [{:?}] {}", v.kind, v.detail));
        }
        bail!(lines);
    }
    Ok(c)
}

fn write_output(out: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn parse_i64_list(s: &str) -> anyhow::Result<Vec<i64>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|e| anyhow!("malformed integer list '{s}': {e}"))
        })
        .collect()
}

fn parse_bit_list(s: &str) -> anyhow::Result<Vec<bool>> {
    parse_i64_list(s)?
        .into_iter()
        .map(|v| match v {
            0 => Ok(false),
            1 => Ok(true),
            other => Err(anyhow!("a-vector entries must be 0 or 1, got {other}")),
        })
        .collect()
}

/// Parses an inclusive range `lo..hi`.
fn parse_range(s: &str) -> anyhow::Result<(i64, i64)> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| anyhow!("malformed range '{s}', expected lo..hi"))?;
    Ok((lo.trim().parse()?, hi.trim().parse()?))
}

fn cmd_model(args: ModelArgs) -> anyhow::Result<()> {
    let complex = match args.kind.as_str() {
        "unknot" => models::unknot(),
        "torus" => {
            let p = args.p.ok_or_else(|| anyhow!("--type torus needs --p"))?;
            let q = args.q.ok_or_else(|| anyhow!("--type torus needs --q"))?;
            models::torus_staircase(p, q)?
        }
        "staircase" => {
            let alpha = args
                .alpha
                .as_deref()
                .ok_or_else(|| anyhow!("--type staircase needs --alpha"))?;
            models::staircase_from_exponents(&parse_i64_list(alpha)?)?
        }
        "box" => models::box_complex(args.shift_i, args.shift_j, args.top_maslov),
        "thin" => {
            let tau = args.tau.ok_or_else(|| anyhow!("--type thin needs --tau"))?;
            models::thin_model(tau)
        }
        "cable" => {
            let n = args.n.ok_or_else(|| anyhow!("--type cable needs --n"))?;
            let cfg = match args.a.as_deref() {
                Some(bits) => CableModelConfig::new(n, parse_bit_list(bits)?)?,
                None => CableModelConfig::zero(n)?,
            };
            models::cable_model(&cfg)?
        }
        other => bail!("unknown model type '{other}'"),
    };
    let complex = match args.name {
        Some(name) => complex.with_name(name),
        None => complex,
    };
    write_output(args.out.as_ref(), &io::complex_to_json(&complex))
}

fn cmd_upsilon(args: UpsilonArgs) -> anyhow::Result<()> {
    let c = load_complex(&args.complex)?;
    if let Some(t) = args.t.as_deref() {
        let t = io::parse_rational(t)?;
        println!("{}", io::format_rational(&invariants::upsilon_at(&c, &t)?));
        return Ok(());
    }
    let mode = if args.exact {
        UpsilonMode::Exact { cap_log2: args.cap }
    } else if let Some(qmax) = args.sampled {
        UpsilonMode::Sampled { qmax }
    } else {
        bail!("upsilon needs one of --t, --exact, --sampled");
    };
    let pl = invariants::upsilon_pl(&c, mode)?;
    print!("{}", io::pl_to_json(&pl));
    Ok(())
}

fn cable_family(lo: i64, hi: i64) -> anyhow::Result<Vec<(String, Complex)>> {
    (lo..=hi)
        .map(|n| {
            Ok((
                format!("cable_n{n}"),
                models::cable_model(&CableModelConfig::zero(n)?)?,
            ))
        })
        .collect()
}

/// Runs `work` over the indexed items on `jobs` threads; results come
/// back in input order regardless of scheduling.
fn indexed_parallel<T: Sync, R: Send>(
    items: Vec<T>,
    jobs: usize,
    work: impl Fn(&T) -> anyhow::Result<R> + Sync,
) -> anyhow::Result<Vec<R>> {
    let jobs = jobs.max(1);
    let results: Mutex<Vec<(usize, anyhow::Result<R>)>> = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for chunk in items
            .iter()
            .enumerate()
            .collect::<Vec<_>>()
            .chunks(items.len().div_ceil(jobs).max(1))
        {
            let results = &results;
            let work = &work;
            let chunk = chunk.to_vec();
            scope.spawn(move || {
                for (i, item) in chunk {
                    let r = work(item);
                    results.lock().unwrap().push((i, r));
                }
            });
        }
    });
    let mut collected = results.into_inner().unwrap();
    collected.sort_by_key(|(i, _)| *i);
    collected.into_iter().map(|(_, r)| r).collect()
}

fn cmd_certificate(args: CertificateArgs) -> anyhow::Result<()> {
    if args.family != "cable" {
        bail!("unknown family '{}', expected cable", args.family);
    }
    let (lo, hi) = parse_range(&args.n)?;
    let family = cable_family(lo, hi)?;
    let phis = indexed_parallel(family, args.jobs, |(_, c)| {
        Ok(certificate::phi_vector(c, args.kmax)?)
    })?;
    let labels: Vec<String> = (lo..=hi).map(|n| format!("cable_n{n}")).collect();
    let matrix = certificate::JumpMatrix {
        labels,
        k_max: args.kmax,
        entries: phis,
    };
    let verdict = certificate::summand_certificate(&matrix);
    if !verdict.integral {
        eprintln!("warning: jump matrix has non-integral entries");
    }
    write_output(args.out.as_ref(), &io::certificate_to_json(&matrix, &verdict))
}

fn plot_grid(samples: u64) -> anyhow::Result<Vec<Rational>> {
    if samples < 2 {
        bail!("--samples must be at least 2");
    }
    Ok((0..=samples)
        .map(|a| Rational::new((2 * a).into(), samples.into()))
        .collect())
}

fn cmd_plot(args: PlotArgs) -> anyhow::Result<()> {
    let grid = plot_grid(args.samples)?;
    let members: Vec<(String, Complex)> = match (&args.complex, &args.family) {
        (Some(path), None) => {
            let c = load_complex(path)?;
            vec![("value".to_string(), c)]
        }
        (None, Some(kind)) => {
            if kind != "cable" {
                bail!("unknown family '{kind}', expected cable");
            }
            let range = args
                .n
                .as_deref()
                .ok_or_else(|| anyhow!("--family needs --n lo..hi"))?;
            let (lo, hi) = parse_range(range)?;
            cable_family(lo, hi)?
        }
        _ => bail!("plot needs either a complex file or --family"),
    };
    let columns = indexed_parallel(members.clone(), args.jobs, |(_, c)| {
        grid.iter()
            .map(|t| Ok(invariants::upsilon_at(c, t)?))
            .collect::<anyhow::Result<Vec<Rational>>>()
    })?;
    let mut csv = String::from("t");
    for (label, _) in &members {
        csv.push(',');
        csv.push_str(label);
    }
    csv.push('\n');
    for (row, t) in grid.iter().enumerate() {
        csv.push_str(&io::decimal10(t));
        for column in &columns {
            csv.push(',');
            csv.push_str(&io::decimal10(&column[row]));
        }
        csv.push('\n');
    }
    write_output(args.out.as_ref(), &csv)
}

fn report_poly(label: &str, delta: &LaurentPoly) -> anyhow::Result<()> {
    let trivial = delta.is_trivial()?;
    println!(
        "{label}: {delta}, trivial: {}",
        if trivial { "yes" } else { "no" }
    );
    Ok(())
}

fn cmd_alexander(args: AlexanderArgs) -> anyhow::Result<()> {
    if let Some(cable) = &args.cable {
        let (p, q) = (cable[0], cable[1]);
        let companion = args
            .companion
            .as_deref()
            .ok_or_else(|| anyhow!("--cable needs --companion"))?;
        let companion_delta = match companion {
            "whitehead-double" => alexander::whitehead_double_delta(),
            other => bail!("unknown companion '{other}', expected whitehead-double"),
        };
        let pattern = if p == 1 || q == 1 {
            LaurentPoly::one()
        } else {
            alexander::torus_delta(p, q)?
        };
        let delta = alexander::satellite_delta(&pattern, &companion_delta, p)?;
        return report_poly(&format!("cable({p},{q}) of {companion}"), &delta);
    }
    if let Some(family) = &args.family {
        let family = Family::parse(family)?;
        let range = args
            .n
            .as_deref()
            .ok_or_else(|| anyhow!("--family needs --n lo..hi"))?;
        let (lo, hi) = parse_range(range)?;
        for row in alexander::family_delta_report(family, lo, hi)? {
            println!(
                "{}: {}, trivial: {}",
                row.label,
                row.delta,
                if row.trivial { "yes" } else { "no" }
            );
        }
        return Ok(());
    }
    if let Some(path) = &args.from_complex {
        let c = load_complex(path)?;
        let delta = c.delta()?;
        return report_poly(c.name(), &delta);
    }
    bail!("alexander needs one of --cable, --family, --from-complex");
}
