//! `ellgen`: compute equivariant elliptic genera, verify the product formula
//! and McKay identities, and work with fan files.
//!
//! Reports go to stdout (or `--out`) as JSON. Exit codes: 0 success,
//! 1 mathematical mismatch or failure, 2 configuration error, 3 resource cap.
//! `ELLGEN_THREADS` sets the worker count.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ellgen_core::fan::{
    star_subdivide, theta_identity_check, toric_suite, Cone, FanFile, Polynomial, ThetaIdentityConfig,
    ToricSuiteConfig,
};
use ellgen_core::identities::{
    verify_dmvv, verify_mckay_ak, verify_orb_hilb, CoefficientTable, DmvvPlan, EllTarget, Fault,
    VerificationReport, VerificationWindow,
};
use ellgen_core::localization::{
    ell_ak_resolution, ell_c2, ell_hilb, ell_orb_cyclic, ell_orb_sym, AkTorus, Normalization,
};
use ellgen_core::{Direction, Error, ErrorClass, Rational, Series};

#[derive(Parser, Debug)]
#[command(name = "ellgen", version, about = "Equivariant elliptic genera by localization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a genus and print its coefficient table.
    Ell(EllArgs),
    /// Run a verification and print its report.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Subdivide, push forward along, or check a fan.
    #[command(subcommand)]
    Fan(FanCommand),
}

#[derive(Args, Debug, Clone, Serialize)]
struct WindowArgs {
    /// Largest q-exponent, e.g. 2 or 1/2.
    #[arg(long, default_value = "1")]
    qmax: String,
    /// Bound on |t1| and |t2| exponents.
    #[arg(long, default_value_t = 4)]
    tspan: u32,
    /// Expansion direction d1 d2 [default: 3 2, or a generic one when
    /// 3 2 pairs a weight of the target to zero].
    #[arg(long, num_args = 2, value_names = ["D1", "D2"])]
    direction: Option<Vec<i64>>,
}

impl WindowArgs {
    fn direction_or(&self, fallback: impl FnOnce() -> Result<Direction, Error>) -> Result<Direction, Error> {
        match &self.direction {
            Some(d) => Direction::new(d[0], d[1]),
            None => fallback(),
        }
    }

    fn direction(&self) -> Result<Direction, Error> {
        self.direction_or(|| Ok(Direction::default()))
    }

    fn q_max(&self) -> Result<Rational, Error> {
        let q: Rational = self.qmax.parse()?;
        if q.is_negative() {
            return Err(Error::InvalidContext(format!("qmax must be non-negative, got {q}")));
        }
        Ok(q)
    }

    fn window(&self) -> Result<VerificationWindow, Error> {
        Ok(VerificationWindow {
            q_max: self.q_max()?,
            p_max: 0,
            t_span: self.tspan as i32,
        })
    }
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
enum TorusArg {
    Full,
    Diagonal,
}

impl From<TorusArg> for AkTorus {
    fn from(t: TorusArg) -> Self {
        match t {
            TorusArg::Full => AkTorus::Full,
            TorusArg::Diagonal => AkTorus::Diagonal,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
enum NormArg {
    YShift,
    Bare,
}

impl From<NormArg> for Normalization {
    fn from(n: NormArg) -> Self {
        match n {
            NormArg::YShift => Normalization::YShift,
            NormArg::Bare => Normalization::Bare,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EllKind {
    /// The affine plane.
    C2,
    /// Hilbert scheme of n points.
    Hilb,
    /// Symmetric-product orbifold of n points.
    OrbSym,
    /// Minimal resolution of C²/Z_k.
    Ak,
    /// Orbifold C²/Z_k.
    AkOrb,
}

#[derive(Args, Debug)]
struct EllArgs {
    #[arg(value_enum)]
    target: EllKind,
    /// Number of points, or k for the A_{k-1} targets.
    index: Option<u32>,
    #[command(flatten)]
    window: WindowArgs,
    /// Specialize y; only 1 is supported.
    #[arg(long)]
    y: Option<u32>,
    #[arg(long, value_enum, default_value = "full")]
    torus: TorusArg,
    #[arg(long, value_enum, default_value = "y-shift")]
    normalization: NormArg,
    /// Print the series JSON instead of the table.
    #[arg(long)]
    json: bool,
    /// Also write the series JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
struct ReportArgs {
    /// Seed for randomized checks, recorded in the report.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Record wall-clock time in the report.
    #[arg(long)]
    #[serde(skip)]
    timing: bool,
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Product formula for the generating series of Hilbert scheme genera.
    Dmvv {
        #[arg(long, default_value_t = 2)]
        pmax: u32,
        #[arg(long, default_value_t = 2)]
        qmax: u32,
        #[arg(long, default_value_t = 4)]
        tspan: u32,
        #[arg(long, num_args = 2, value_names = ["D1", "D2"], default_values_t = [3i64, 2])]
        direction: Vec<i64>,
        /// Corrupt one coefficient of the C² table.
        #[arg(long)]
        fault: bool,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Orbifold C²/Z_k against its minimal resolution.
    MckayAk {
        k: u32,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, value_enum, default_value = "full")]
        torus: TorusArg,
        #[arg(long, value_enum, default_value = "y-shift")]
        normalization: NormArg,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Symmetric-product orbifold against the Hilbert scheme.
    OrbHilb {
        n: u32,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, value_enum, default_value = "y-shift")]
        normalization: NormArg,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Theta-function identity for the blow-up of the origin.
    ThetaId {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 40)]
        l_max: u32,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Randomized pushforward and projection-formula checks.
    Toric {
        #[arg(long, default_value_t = 50)]
        functions: usize,
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
        #[command(flatten)]
        report: ReportArgs,
    },
}

#[derive(Subcommand, Debug)]
enum FanCommand {
    /// Star-subdivide a base cone (`orthantN` or a fan file) at a ray.
    Subdivide {
        base: String,
        /// Comma-separated ray, e.g. 1,1,1.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        ray: Vec<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Push a piecewise polynomial forward to the base cone.
    Push {
        file: PathBuf,
        /// Polynomial used on cones that carry none.
        #[arg(long, default_value = "1")]
        poly: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that the cones tile the base and polynomials agree on faces.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// What a command produced: text for stdout and whether it succeeded.
struct Outcome {
    text: String,
    success: bool,
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    if let Some(p) = path {
        std::fs::write(p, text).map_err(|e| Error::InvalidContext(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn read_fan(path: &PathBuf) -> Result<FanFile, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidContext(format!("cannot read {}: {e}", path.display())))?;
    FanFile::from_json(&text)
}

fn compute_ell(args: &EllArgs) -> Result<Series, Error> {
    let window = args.window.window()?;
    let torus: AkTorus = args.torus.into();
    let index = || {
        args.index
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::InvalidContext(format!("{:?} needs a positive index", args.target)))
    };
    let target = match args.target {
        EllKind::C2 => EllTarget::C2,
        EllKind::Hilb => EllTarget::Hilb(index()?),
        EllKind::OrbSym => EllTarget::OrbSym(index()?),
        EllKind::Ak => EllTarget::Ak(index()?),
        EllKind::AkOrb => EllTarget::AkOrb(index()?),
    };
    let dir = args.window.direction_or(|| target.default_direction(torus))?;
    let ctx = target.context(&window, dir, torus)?;
    match target {
        EllTarget::C2 => ell_c2(&ctx),
        EllTarget::Hilb(n) => ell_hilb(n, &ctx),
        EllTarget::OrbSym(n) => ell_orb_sym(n, &ctx, args.normalization.into()),
        EllTarget::Ak(k) => ell_ak_resolution(k, &ctx, torus),
        EllTarget::AkOrb(k) => ell_orb_cyclic(k, &ctx, torus, args.normalization.into()),
    }
}

fn run_ell(args: &EllArgs) -> Result<Outcome, Error> {
    let mut series = compute_ell(args)?;
    match args.y {
        None => {}
        Some(1) => series = series.specialize_y_one()?,
        Some(v) => return Err(Error::InvalidContext(format!("--y supports only 1, got {v}"))),
    }
    let json = series.to_json()?;
    write_out(&args.out, &json)?;
    let text = if args.json {
        json
    } else if series.terms().keys().all(|e| e.is_zero()) {
        // constant series print as a bare value
        series.coeff(&ellgen_core::Exponent::ZERO).to_string()
    } else {
        CoefficientTable::from_series(&series, |_| true).render()
    };
    Ok(Outcome { text, success: true })
}

#[derive(Serialize)]
struct RunConfig<'a, T: Serialize> {
    command: &'a str,
    #[serde(flatten)]
    options: T,
}

fn finish(mut report: VerificationReport, args: &ReportArgs, config: impl Serialize, started: Instant) -> Result<Outcome, Error> {
    report.seed = args.seed;
    let config = serde_json::to_value(config)?;
    report.details = match report.details.take() {
        serde_json::Value::Object(mut m) => {
            m.insert("config".into(), config);
            serde_json::Value::Object(m)
        }
        serde_json::Value::Null => serde_json::json!({ "config": config }),
        other => serde_json::json!({ "config": config, "result": other }),
    };
    if args.timing {
        report.runtime_seconds = Some(started.elapsed().as_secs_f64());
    }
    let text = report.to_json()?;
    write_out(&args.out, &text)?;
    Ok(Outcome {
        text,
        success: report.success(),
    })
}

fn run_verify(cmd: &VerifyCommand) -> Result<Outcome, Error> {
    let started = Instant::now();
    match cmd {
        VerifyCommand::Dmvv {
            pmax,
            qmax,
            tspan,
            direction,
            fault,
            report,
        } => {
            let dir = Direction::new(direction[0], direction[1])?;
            let plan = DmvvPlan::new(*pmax, *qmax, *tspan, dir)?;
            let rep = verify_dmvv(&plan, fault.then(Fault::default))?;
            let cfg = serde_json::json!({ "pmax": pmax, "qmax": qmax, "tspan": tspan, "direction": dir, "fault": fault });
            finish(rep, report, RunConfig { command: "verify dmvv", options: cfg }, started)
        }
        VerifyCommand::MckayAk {
            k,
            window,
            torus,
            normalization,
            report,
        } => {
            let rep = verify_mckay_ak(
                *k,
                window.q_max()?,
                window.tspan,
                window.direction()?,
                (*torus).into(),
                (*normalization).into(),
            )?;
            let cfg = serde_json::json!({ "k": k, "window": window, "torus": torus, "normalization": normalization });
            finish(rep, report, RunConfig { command: "verify mckay-ak", options: cfg }, started)
        }
        VerifyCommand::OrbHilb {
            n,
            window,
            normalization,
            report,
        } => {
            let rep = verify_orb_hilb(
                *n,
                window.q_max()?,
                window.tspan,
                window.direction()?,
                (*normalization).into(),
            )?;
            let cfg = serde_json::json!({ "n": n, "window": window, "normalization": normalization });
            finish(rep, report, RunConfig { command: "verify orb-hilb", options: cfg }, started)
        }
        VerifyCommand::ThetaId {
            dim,
            samples,
            l_max,
            tolerance,
            report,
        } => {
            if !(2..=6).contains(dim) {
                return Err(Error::InvalidContext(format!("--dim must be between 2 and 6, got {dim}")));
            }
            let base = Cone::orthant(*dim);
            let sub = star_subdivide(&base, &vec![1; *dim])?;
            let cfg = ThetaIdentityConfig {
                samples: *samples,
                l_max: *l_max,
                seed: report.seed,
                ..Default::default()
            };
            let zeros = vec![(Rational::ZERO, Rational::ZERO); *dim];
            let rep = theta_identity_check(&base, &sub, &zeros, &vec![Rational::ZERO; *dim], &cfg)?;
            let failures = if rep.max_residual <= *tolerance {
                vec![]
            } else {
                vec![format!("max residual {:e} above tolerance {tolerance:e}", rep.max_residual)]
            };
            let details = serde_json::json!({
                "max_residual": rep.max_residual,
                "tolerance": tolerance,
                "samples": rep.samples,
                "resamples": rep.resamples,
                "exceptional_coefficient": rep.exceptional_coefficient,
                "tau": [cfg.tau.re, cfg.tau.im],
                "z": [cfg.z.re, cfg.z.im],
            });
            let mut out = VerificationReport::numeric("theta-id", report.seed, details, failures);
            out.compared = rep.samples;
            let cfg = serde_json::json!({ "dim": dim, "samples": samples, "l_max": l_max });
            finish(out, report, RunConfig { command: "verify theta-id", options: cfg }, started)
        }
        VerifyCommand::Toric {
            functions,
            pairs,
            max_degree,
            report,
        } => {
            let cfg = ToricSuiteConfig {
                functions: *functions,
                pairs: *pairs,
                max_degree: *max_degree,
                seed: report.seed,
                ..Default::default()
            };
            let rep = toric_suite(&cfg)?;
            let details = serde_json::json!({ "pushforwards": rep.pushforwards, "projection_pairs": rep.projection_pairs });
            let mut out = VerificationReport::numeric("toric", report.seed, details, rep.failures);
            out.compared = rep.pushforwards + rep.projection_pairs;
            finish(out, report, RunConfig { command: "verify toric", options: cfg }, started)
        }
    }
}

fn parse_base(base: &str) -> Result<Cone, Error> {
    if let Some(n) = base.strip_prefix("orthant") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::InvalidContext(format!("bad orthant dimension in {base:?}")))?;
        if n == 0 {
            return Err(Error::InvalidContext("orthant dimension must be positive".into()));
        }
        return Ok(Cone::orthant(n));
    }
    read_fan(&PathBuf::from(base))?.base_cone()
}

fn run_fan(cmd: &FanCommand) -> Result<Outcome, Error> {
    match cmd {
        FanCommand::Subdivide { base, ray, out } => {
            let cone = parse_base(base)?;
            let sub = star_subdivide(&cone, ray)?;
            let text = FanFile::from_subdivision(&sub).to_json()?;
            write_out(out, &text)?;
            Ok(Outcome { text, success: true })
        }
        FanCommand::Push { file, poly, out } => {
            let fan = read_fan(file)?;
            let sub = fan.subdivision()?;
            let default = Polynomial::parse(poly, sub.dim())?;
            let f = fan.piecewise(&default)?;
            f.check_faces(&sub)?;
            let pushed = ellgen_core::fan::pushforward(&f, &sub, &sub.base)?;
            let text = serde_json::to_string_pretty(&serde_json::json!({
                "schema_version": ellgen_core::fan::FAN_SCHEMA_VERSION,
                "pushforward": pushed.to_string(),
            }))?;
            write_out(out, &text)?;
            Ok(Outcome { text, success: true })
        }
        FanCommand::Check { file, samples, seed } => {
            let fan = read_fan(file)?;
            let sub = fan.subdivision()?;
            sub.validate(*samples, *seed)?;
            fan.piecewise(&Polynomial::zero(sub.dim()))?.check_faces(&sub)?;
            let text = serde_json::to_string_pretty(&serde_json::json!({
                "schema_version": ellgen_core::fan::FAN_SCHEMA_VERSION,
                "cones": sub.cones.len(),
                "valid": true,
            }))?;
            Ok(Outcome { text, success: true })
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e.class() {
        ErrorClass::Config => 2,
        ErrorClass::ResourceCap => 3,
        ErrorClass::Math => 1,
    }
}

fn configure_threads() -> Result<(), Error> {
    let Ok(v) = std::env::var("ELLGEN_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::InvalidContext(format!("ELLGEN_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::InvalidContext(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Ell(a) => run_ell(a),
        Command::Verify(v) => run_verify(v),
        Command::Fan(f) => run_fan(f),
    });
    match result {
        Ok(out) => {
            use std::io::Write;
            // a closed pipe is not an error of the computation
            let _ = writeln!(std::io::stdout().lock(), "{}", out.text.trim_end());
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
