use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use serde::Serialize;

use p3rat::asymptotics::{
    convergence_probe, equilibria, equilibria_exact, exact_sqrt, Factorization, Plane,
};
use p3rat::exact::{format_gr, to_pair};
use p3rat::fpoly::to_complex;
use p3rat::halfint::{log2_rel_diff, solve_halfint_with, HalfintRow, Method, Sign};
use p3rat::io::{TableJson, UJson};
use p3rat::map::{build_map, RootCache};
use p3rat::roots::{find_roots_with, Factor, RootOptions};
use p3rat::umemura::{build_u, eval_u};
use p3rat::verify::{check_candidate, run, Report, VerifyConfig};
use p3rat::{parse_gr, BigComplex, BigFloat, Error, GaussianRational, Real};

#[derive(Parser)]
#[command(name = "p3rat", version, about = "Rational solutions of Painleve-III: exact tables, roots and maps")]
struct Cli {
    /// More log output (repeat for debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Out {
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Umemura polynomials s_{-1}..s_N as JSON.
    Polys {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        m: String,
        #[command(flatten)]
        out: Out,
    },
    /// u_n(x; m) as an exact rational function in JSON.
    U {
        #[arg(long)]
        n: i64,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        m: String,
        #[command(flatten)]
        out: Out,
    },
    /// Exact residual, oracle, symmetry, Laurent and residue suites.
    Verify(VerifyArgs),
    /// Certified roots of s_n(x; m).
    Roots {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        m: String,
        #[arg(long, default_value_t = 256)]
        prec: u32,
        #[arg(long, default_value_t = 30)]
        digits: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Pole/zero scatter of u_n in a chosen plane.
    Map {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        m: String,
        #[arg(long, default_value = "y")]
        plane: String,
        /// Centre for the w plane.
        #[arg(long, allow_hyphen_values = true)]
        y0: Option<String>,
        #[arg(long, default_value_t = 256)]
        prec: u32,
        #[arg(long, default_value_t = 30)]
        digits: usize,
        #[arg(long, value_enum, default_value_t = MapFormat::Csv)]
        format: MapFormat,
        /// Also write an SVG scatter here.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// u_n(x; +-(1/2+k)) from the Hankel moment systems.
    Halfint {
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        sign: String,
        /// Evaluation points as Gaussian rationals; repeat or separate by commas.
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        x: Vec<String>,
        #[arg(long, default_value_t = 256)]
        prec: u32,
        #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
        method: MethodArg,
        /// Compare against the exact u_n and fail above this relative error.
        #[arg(long)]
        check: Option<f64>,
        #[arg(long, default_value_t = 30)]
        digits: usize,
        #[command(flatten)]
        out: Out,
    },
    /// |u_n(n y; m) - i p0+(y)| over a list of n.
    Probe {
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        m: String,
        #[arg(long, default_value = "2", allow_hyphen_values = true)]
        y: String,
        #[arg(long, value_delimiter = ',', default_value = "5,10,20")]
        n: Vec<i64>,
        #[arg(long, default_value_t = 256)]
        prec: u32,
        #[arg(long, default_value_t = 20)]
        digits: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Quartic factorization certificate at y0.
    Asympt {
        #[arg(long, allow_hyphen_values = true)]
        y0: String,
        /// Working precision when the discriminant is not a square.
        #[arg(long, default_value_t = 256)]
        prec: u32,
        #[arg(long, default_value_t = 30)]
        digits: usize,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest n.
    #[arg(long, default_value_t = 8)]
    n: usize,
    #[arg(long, value_delimiter = ',', default_values_t = ["0".to_string(), "1".to_string(), "1/2".to_string(), "4/5*i".to_string()], allow_hyphen_values = true)]
    m: Vec<String>,
    /// Exact symbolic residual up to here, sampled above.
    #[arg(long)]
    exact_up_to: Option<usize>,
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Run the residue suite up to this n (0 disables it).
    #[arg(long, default_value_t = 0)]
    residues_up_to: usize,
    #[arg(long, default_value_t = 256)]
    prec: u32,
    /// Check one u_n from a JSON file instead of the built-in grid.
    #[arg(long)]
    u_file: Option<PathBuf>,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    out: Out,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapFormat {
    Csv,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Closed,
    Quadrature,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Closed => Method::Closed,
            MethodArg::Quadrature => Method::Quadrature,
        }
    }
}

enum Outcome {
    Pass,
    Fail,
}

fn emit(out: &Out, text: &str) -> Result<()> {
    match &out.out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut s = std::io::stdout().lock();
            s.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn complex_pair(z: &BigComplex, digits: usize) -> [String; 2] {
    [z.re.to_decimal(digits), z.im.to_decimal(digits)]
}

fn point(s: &str, prec: u32) -> Result<BigComplex> {
    Ok(to_complex::<BigFloat>(&parse_gr(s)?, prec))
}

#[derive(Serialize)]
struct RootRow {
    re: String,
    im: String,
    radius: String,
}

#[derive(Serialize)]
struct RootsJson {
    n: usize,
    m: String,
    degree: usize,
    origin_multiplicity: usize,
    precision_bits: u32,
    certified_simple: bool,
    min_separation: String,
    roots: Vec<RootRow>,
}

#[derive(Serialize)]
struct ProbeJson {
    n: i64,
    m: String,
    y: String,
    value: [String; 2],
    limit: [String; 2],
    err: String,
}

#[derive(Serialize)]
struct FactorJson {
    p0: [String; 2],
    b: [String; 2],
    c: [String; 2],
    #[serde(rename = "C")]
    c_const: [String; 2],
    exact_defect_zero: bool,
    fourth_power: bool,
}

#[derive(Serialize)]
struct AsymptJson {
    y0: String,
    mode: String,
    degenerate: bool,
    quartic: Vec<[String; 2]>,
    factorizations: Vec<FactorJson>,
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome> {
    let ms = a.m.iter().map(|s| parse_gr(s)).collect::<p3rat::Result<Vec<GaussianRational>>>()?;
    let cfg = VerifyConfig {
        n_max: a.n,
        ms,
        exact_up_to: a.exact_up_to.unwrap_or(a.n.min(8)),
        sample_count: a.samples,
        seed: a.seed,
        chain_up_to: a.n.min(10),
        residues_up_to: a.residues_up_to,
        precision_bits: a.prec,
        ..Default::default()
    };
    let report = match &a.u_file {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let j: UJson = serde_json::from_str(&text)?;
            let (n, m, u) = j.parse()?;
            let mut r = Report::default();
            check_candidate(&mut r, &u, n, &m, &cfg);
            let reference = build_u(n, &m)?;
            r.checks.push(p3rat::verify::Check {
                suite: "reference".into(),
                n,
                m: format_gr(&m),
                passed: reference == u,
                mode: "exact".into(),
                detail: "equals the recurrence u_n".into(),
            });
            r
        }
        None => run(&cfg)?,
    };
    let text = if a.json {
        json(&report)?
    } else {
        let mut s: String = report.checks.iter().map(|c| format!("{c}\n")).collect();
        let failed = report.checks.iter().filter(|c| !c.passed).count();
        s.push_str(&format!("{} checks, {} failed\n", report.checks.len(), failed));
        s
    };
    emit(&a.out, &text)?;
    Ok(if report.all_passed() { Outcome::Pass } else { Outcome::Fail })
}

fn cmd_asympt(y0s: &str, prec: u32, digits: usize, out: &Out) -> Result<Outcome> {
    let y0 = parse_gr(y0s)?;
    let d = p3rat::exact::gint(1) / (y0.clone() * y0.clone() * p3rat::exact::gint(4))
        + p3rat::exact::gint(1);
    let cert = if exact_sqrt(&d).is_some() {
        let eq = equilibria_exact(&y0)?;
        let mut fs = Vec::new();
        for p0 in [eq.p_plus(), eq.p_minus()] {
            let f = Factorization::new(&y0, p0)?;
            fs.push(FactorJson {
                p0: to_pair(&f.p0),
                b: to_pair(&f.b),
                c: to_pair(&f.c),
                c_const: to_pair(&f.quartic.c),
                exact_defect_zero: f.defect().is_zero(),
                fourth_power: f.is_fourth_power(),
            });
            if eq.degenerate {
                break;
            }
        }
        let quartic = Factorization::new(&y0, eq.p_plus())?.quartic.coeffs().iter().map(to_pair).collect();
        AsymptJson { y0: format_gr(&y0), mode: "exact".into(), degenerate: eq.degenerate, quartic, factorizations: fs }
    } else {
        let y = to_complex::<BigFloat>(&y0, prec);
        let eq = equilibria(&y, prec)?;
        let mut fs = Vec::new();
        for p0 in [eq.p_plus(), eq.p_minus()] {
            let f = Factorization::new(&y, p0)?;
            let defect = f.defect();
            let scale = f.quartic.coeffs().iter().map(p3rat::scalar::cplx::log2_abs).fold(f64::NEG_INFINITY, f64::max);
            let worst = defect.coeffs().iter().map(p3rat::scalar::cplx::log2_abs).fold(f64::NEG_INFINITY, f64::max);
            fs.push(FactorJson {
                p0: complex_pair(&f.p0, digits),
                b: complex_pair(&f.b, digits),
                c: complex_pair(&f.c, digits),
                c_const: complex_pair(&f.quartic.c, digits),
                exact_defect_zero: worst <= scale - prec as f64 + 16.0,
                fourth_power: false,
            });
            if eq.degenerate {
                break;
            }
        }
        let quartic =
            Factorization::new(&y, eq.p_plus())?.quartic.coeffs().iter().map(|z| complex_pair(z, digits)).collect();
        AsymptJson {
            y0: format_gr(&y0),
            mode: format!("{prec} bits"),
            degenerate: eq.degenerate,
            quartic,
            factorizations: fs,
        }
    };
    emit(out, &json(&cert)?)?;
    Ok(if cert.factorizations.iter().all(|f| f.exact_defect_zero) { Outcome::Pass } else { Outcome::Fail })
}

fn dispatch(cmd: &Cmd) -> Result<Outcome> {
    match cmd {
        Cmd::Polys { n, m, out } => {
            let m = parse_gr(m)?;
            let t = p3rat::umemura_table(&m, *n)?;
            emit(out, &json(&TableJson::from_table(&t))?)?;
        }
        Cmd::U { n, m, out } => {
            let m = parse_gr(m)?;
            let u = build_u(*n, &m)?;
            emit(out, &json(&UJson::new(*n, &m, &u))?)?;
        }
        Cmd::Verify(a) => return cmd_verify(a),
        Cmd::Roots { n, m, prec, digits, out } => {
            let mg = parse_gr(m)?;
            let t = p3rat::umemura_table(&mg, *n)?;
            let opts = RootOptions { precision_bits: *prec, start_bits: 128.min(*prec), presolve: true };
            let rs = find_roots_with::<BigFloat>(t.s(*n as i64), Factor::SnM, &opts)?;
            let j = RootsJson {
                n: *n,
                m: format_gr(&mg),
                degree: rs.degree,
                origin_multiplicity: rs.origin_multiplicity,
                precision_bits: rs.precision_bits,
                certified_simple: rs.certified_simple,
                min_separation: if rs.roots.len() < 2 { "inf".into() } else { rs.min_separation.to_decimal(8) },
                roots: rs
                    .roots
                    .iter()
                    .zip(&rs.radii)
                    .map(|(z, r)| RootRow { re: z.re.to_decimal(*digits), im: z.im.to_decimal(*digits), radius: r.to_decimal(4) })
                    .collect(),
            };
            emit(out, &json(&j)?)?;
            return Ok(if rs.certified_simple { Outcome::Pass } else { Outcome::Fail });
        }
        Cmd::Map { n, m, plane, y0, prec, digits, format, svg, out } => {
            let mg = parse_gr(m)?;
            let plane: Plane = plane.parse()?;
            let y0 = y0.as_deref().map(|s| point(s, *prec)).transpose()?;
            let mut cache = RootCache::new(*prec);
            let map = build_map(&mut cache, *n, &mg, plane, y0.as_ref())?;
            info!("{} points, origin records {}, certified {}", map.points.len(), map.origin.len(), map.certified);
            match format {
                MapFormat::Csv => emit(out, &map.to_csv(*digits))?,
                MapFormat::Svg => emit(out, &map.to_svg())?,
            }
            if let Some(p) = svg {
                fs::write(p, map.to_svg()).with_context(|| format!("writing {}", p.display()))?;
            }
            return Ok(if map.certified { Outcome::Pass } else { Outcome::Fail });
        }
        Cmd::Halfint { n, k, sign, x, prec, method, check, digits, out } => {
            let sign = Sign::parse(sign)?;
            let reference = match check {
                Some(_) => Some(build_u(*n, &sign.m(*k))?),
                None => None,
            };
            let mut rows: Vec<HalfintRow> = Vec::new();
            let mut pass = true;
            for xs in x {
                let xv = point(xs, *prec)?;
                let s = solve_halfint_with(*n, *k, sign, &xv, *prec, (*method).into())?;
                if let (Some(tol), Some(u)) = (check, &reference) {
                    let exact = eval_u(u, &xv, *prec)?;
                    let d = log2_rel_diff(&s.u, &exact);
                    let ok = d <= tol.log2();
                    pass &= ok;
                    eprintln!(
                        "{} n={n} k={k} sign={} x={xs}: relative difference 2^{d:.1} (tolerance {tol:e})",
                        if ok { "PASS" } else { "FAIL" },
                        sign.symbol()
                    );
                }
                rows.push(s.row(*digits));
            }
            emit(out, &json(&rows)?)?;
            return Ok(if pass { Outcome::Pass } else { Outcome::Fail });
        }
        Cmd::Probe { m, y, n, prec, digits, out } => {
            let mg = parse_gr(m)?;
            let yg = parse_gr(y)?;
            let rows = convergence_probe(&mg, &yg, n, *prec)?;
            let decreasing = rows.windows(2).all(|w| w[1].err < w[0].err);
            let j: Vec<ProbeJson> = rows
                .iter()
                .map(|r| ProbeJson {
                    n: r.n,
                    m: format_gr(&mg),
                    y: format_gr(&yg),
                    value: complex_pair(&r.value, *digits),
                    limit: complex_pair(&r.limit, *digits),
                    err: r.err.to_decimal(8),
                })
                .collect();
            emit(out, &json(&j)?)?;
            eprintln!("err strictly decreasing: {decreasing}");
            return Ok(if decreasing { Outcome::Pass } else { Outcome::Fail });
        }
        Cmd::Asympt { y0, prec, digits, out } => return cmd_asympt(y0, *prec, *digits, out),
    }
    Ok(Outcome::Pass)
}

fn is_usage(e: &anyhow::Error) -> bool {
    matches!(
        e.downcast_ref::<Error>(),
        Some(Error::Parse(_) | Error::InvalidArgument(_) | Error::InvalidPlane(_))
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match dispatch(&cli.cmd) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}
