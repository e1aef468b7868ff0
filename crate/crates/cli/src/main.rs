//! `hypgeo`: evaluate, bound and classify w_{a,b,c} from the command line.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hypgeo::asymptotics::{classify_case, tangential_probe, AsymptoticProfile};
use hypgeo::bounds::{bound_tech_depth3, bound_thm_sufficient, classify_thm1, w_minus1_enclosure};
use hypgeo::convexity::{convexity_closed_form, kappa_estimate, w_ratio};
use hypgeo::hyp2f1::{gauss_2f1_derivatives, DEFAULT_TOL};
use hypgeo::scan::{classify_cell, emit_csv, render_pgm, scan_region, Window};
use hypgeo::verify::{run_verify, Suite};
use hypgeo::{Error, Params, C64};

#[derive(Parser)]
#[command(name = "hypgeo", version, about = "Ratios of Gauss hypergeometric functions and their order of convexity")]
struct Cli {
    /// Print a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct ParamArgs {
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, allow_negative_numbers = true)]
    b: f64,
    #[arg(long, allow_negative_numbers = true)]
    c: f64,
    /// Relative tolerance for series evaluation.
    #[arg(long, default_value_t = DEFAULT_TOL, allow_negative_numbers = true)]
    tol: f64,
}

impl ParamArgs {
    fn params(&self) -> Result<Params, Error> {
        Params::new(self.a, self.b, self.c)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    /// 2F1(a+1,b;c;z) / 2F1(a,b;c;z)
    W,
    /// 2F1(a,b;c;z)
    Hyp2f1,
    /// 1 + z w''/w'
    Functional,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Fast,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate w, 2F1 or the convexity functional at a point.
    Eval {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long = "z-re", allow_negative_numbers = true)]
        z_re: f64,
        #[arg(long = "z-im", default_value_t = 0.0, allow_negative_numbers = true)]
        z_im: f64,
        #[arg(long, value_enum, default_value = "w")]
        quantity: Quantity,
    },
    /// Estimate the order of convexity on a polar grid.
    Kappa {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long, default_value_t = 64)]
        rings: usize,
        #[arg(long, default_value_t = 720)]
        angles: usize,
        #[arg(long, default_value_t = 0.9999)]
        rmax: f64,
    },
    /// Closed-form lower bounds and the w(-1) enclosure.
    Bound {
        #[command(flatten)]
        p: ParamArgs,
    },
    /// Region class and boundary asymptotics.
    Classify {
        #[command(flatten)]
        p: ParamArgs,
    },
    /// Re W along the tangential path z = (exp(2 i theta) + 1)/2.
    Probe {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long = "theta-min", default_value_t = 1e-5)]
        theta_min: f64,
    },
    /// Classify a raster of the (a, b) plane at fixed c.
    Scan {
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 200)]
        na: usize,
        #[arg(long, default_value_t = 200)]
        nb: usize,
        #[arg(long, default_value_t = 0.0)]
        amin: f64,
        #[arg(long, default_value_t = 2.0)]
        amax: f64,
        #[arg(long, default_value_t = 0.0)]
        bmin: f64,
        #[arg(long, default_value_t = 2.0)]
        bmax: f64,
        /// Binary PGM output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// CSV output.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run the invariant checks.
    Verify {
        #[arg(long, value_enum, default_value = "fast")]
        suite: SuiteArg,
    },
}

enum Failure {
    Numeric(Error),
    Io(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numeric(e)
    }
}

#[derive(Serialize)]
struct PointOutput {
    value_re: f64,
    value_im: f64,
    path: Option<String>,
}

#[derive(Serialize)]
struct KappaOutput {
    kappa_min: f64,
    argmin_r: f64,
    argmin_theta: f64,
    boundary_divergence: bool,
    samples: usize,
    rmax_used: f64,
}

#[derive(Serialize)]
struct BoundOutput {
    class: &'static str,
    bound: Option<f64>,
    bound_depth3: Option<f64>,
    w_minus1_lo: Option<f64>,
    w_minus1_hi: Option<f64>,
}

#[derive(Serialize)]
struct ClassifyOutput {
    class: &'static str,
    divergent: bool,
    bound: Option<f64>,
    case: Option<&'static str>,
    gamma: Option<f64>,
    lambda: Option<f64>,
    eta: Option<f64>,
}

#[derive(Serialize)]
struct ProbeOutput {
    classification: &'static str,
    case: Option<&'static str>,
    lambda: Option<f64>,
    eta: Option<f64>,
    thetas: Vec<f64>,
    rew_direct: Vec<f64>,
    rew_model: Vec<f64>,
}

#[derive(Serialize)]
struct ScanOutput {
    c: f64,
    na: usize,
    nb: usize,
    black: usize,
    gray: usize,
    white: usize,
}

#[derive(Serialize)]
struct CheckJson {
    name: &'static str,
    passed: bool,
    worst: f64,
    tol: f64,
    samples: usize,
    error: Option<String>,
}

#[derive(Serialize)]
struct VerifyOutput {
    passed: bool,
    checks: Vec<CheckJson>,
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string(value).expect("serializable output"));
    } else {
        println!("{}", text());
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.12}"))
}

fn profile_fields(prof: Option<&AsymptoticProfile>) -> (Option<&'static str>, Option<f64>, Option<f64>) {
    match prof {
        Some(p) => (Some(p.case.label()), p.lambda, p.eta),
        None => (None, None, None),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let json = cli.json;
    match cli.command {
        Command::Eval { p, z_re, z_im, quantity } => {
            let params = p.params()?;
            let z = C64::new(z_re, z_im);
            let (value, path) = match quantity {
                Quantity::W => (w_ratio(&params, z, p.tol)?, None),
                Quantity::Hyp2f1 => {
                    let e = gauss_2f1_derivatives(&params, z, p.tol)?;
                    (e.value, Some(format!("{:?}", e.path)))
                }
                Quantity::Functional => (convexity_closed_form(&params, z, p.tol)?.functional, None),
            };
            let out = PointOutput { value_re: value.re, value_im: value.im, path };
            emit(json, &out, || format!("{:.15e} {:+.15e}i", value.re, value.im));
        }
        Command::Kappa { p, rings, angles, rmax } => {
            let k = kappa_estimate(&p.params()?, rings, angles, rmax)?;
            let out = KappaOutput {
                kappa_min: k.kappa_min,
                argmin_r: k.argmin_r,
                argmin_theta: k.argmin_theta,
                boundary_divergence: k.boundary_divergence,
                samples: k.samples,
                rmax_used: k.rmax_used,
            };
            emit(json, &out, || {
                format!(
                    "kappa_min {:.10}\nargmin r={:.10} theta={:.10}\nboundary_divergence {}\nsamples {}",
                    k.kappa_min, k.argmin_r, k.argmin_theta, k.boundary_divergence, k.samples
                )
            });
        }
        Command::Bound { p } => {
            let params = p.params()?;
            let enclosure = w_minus1_enclosure(&params).ok();
            let out = BoundOutput {
                class: classify_cell(params.a, params.b, params.c).label(),
                bound: bound_thm_sufficient(&params).ok(),
                bound_depth3: bound_tech_depth3(&params).ok(),
                w_minus1_lo: enclosure.map(|e| e.lo),
                w_minus1_hi: enclosure.map(|e| e.hi),
            };
            if out.bound.is_none() && enclosure.is_none() {
                bound_thm_sufficient(&params)?;
            }
            emit(json, &out, || {
                format!(
                    "class {}\nbound {}\nbound_depth3 {}\nw(-1) in [{}, {}]",
                    out.class,
                    opt(out.bound),
                    opt(out.bound_depth3),
                    opt(out.w_minus1_lo),
                    opt(out.w_minus1_hi)
                )
            });
        }
        Command::Classify { p } => {
            let params = p.params()?;
            let prof = classify_case(&params).ok();
            let (case, lambda, eta) = profile_fields(prof.as_ref());
            let out = ClassifyOutput {
                class: classify_cell(params.a, params.b, params.c).label(),
                divergent: classify_thm1(&params),
                bound: bound_thm_sufficient(&params).ok(),
                case,
                gamma: prof.map(|p| p.gamma),
                lambda,
                eta,
            };
            emit(json, &out, || {
                format!(
                    "class {}\ndivergent {}\nbound {}\ncase {}\nlambda {}\neta {}",
                    out.class,
                    out.divergent,
                    opt(out.bound),
                    case.unwrap_or("-"),
                    opt(lambda),
                    opt(eta)
                )
            });
        }
        Command::Probe { p, theta_min } => {
            let params = p.params()?;
            let report = tangential_probe(&params, theta_min)?;
            let prof = classify_case(&params).ok();
            let (case, lambda, eta) = profile_fields(prof.as_ref());
            let out = ProbeOutput {
                classification: report.classification.label(),
                case,
                lambda,
                eta,
                thetas: report.thetas.clone(),
                rew_direct: report.rew_direct.clone(),
                rew_model: report.rew_model.clone(),
            };
            emit(json, &out, || {
                let mut s = String::from("theta          ReW_direct        ReW_model\n");
                for ((t, d), m) in report.thetas.iter().zip(&report.rew_direct).zip(&report.rew_model) {
                    s.push_str(&format!("{t:<14.6e} {d:<17.8} {m:.8}\n"));
                }
                s.push_str(report.classification.label());
                s
            });
        }
        Command::Scan { c, na, nb, amin, amax, bmin, bmax, out, csv } => {
            let window = Window { a_min: amin, a_max: amax, b_min: bmin, b_max: bmax };
            let grid = scan_region(c, window, na, nb)?;
            if let Some(path) = &out {
                fs::write(path, render_pgm(&grid)).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            }
            if let Some(path) = &csv {
                fs::write(path, emit_csv(&grid)).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            }
            use hypgeo::scan::Cell;
            let summary = ScanOutput {
                c,
                na,
                nb,
                black: grid.count(Cell::Black),
                gray: grid.count(Cell::Gray),
                white: grid.count(Cell::White),
            };
            emit(json, &summary, || {
                format!("{na}x{nb} at c={c}: black {} gray {} white {}", summary.black, summary.gray, summary.white)
            });
        }
        Command::Verify { suite } => {
            let report = run_verify(match suite {
                SuiteArg::Fast => Suite::Fast,
                SuiteArg::All => Suite::All,
            });
            let out = VerifyOutput {
                passed: report.all_passed(),
                checks: report
                    .checks
                    .iter()
                    .map(|c| CheckJson {
                        name: c.name,
                        passed: c.passed,
                        worst: c.worst,
                        tol: c.tol,
                        samples: c.samples,
                        error: c.error.clone(),
                    })
                    .collect(),
            };
            emit(json, &out, || report.to_string());
            if !report.all_passed() {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Numeric(e)) => {
            eprintln!("hypgeo: {e}");
            ExitCode::from(if e.is_domain() { 2 } else { 3 })
        }
        Err(Failure::Io(msg)) => {
            eprintln!("hypgeo: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification) => ExitCode::from(4),
    }
}
