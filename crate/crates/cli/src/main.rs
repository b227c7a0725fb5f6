//! Command-line front-end for the verification workbench.
//!
//! Subcommands expose the library operation by operation: `bound` and
//! `coeffs` evaluate single points, `search` maximizes the determinant
//! modulus over the admissible body, `scan` sweeps a parameter range into
//! CSV, `phi` certifies the one-variable sign facts, and `selftest` runs
//! the reduced invariant suites.
//!
//! Exit codes: 0 success, 1 selftest failure, 2 usage error, 3 inadmissible
//! input, 4 bound violation at in-region parameters. Data goes to stdout,
//! diagnostics to stderr. `HANKEL_LAB_THREADS` caps internal parallelism
//! (0 = automatic).

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use hankel_lab::coeffs::{closed_form_coefficients, solve_coefficients};
use hankel_lab::hankel::{
    bound, certify_phi1, check_ineq_30, h22, ineq_30_margin, phi1, phi1_curvature_reference,
    phi1_prime, proof_intermediates,
};
use hankel_lab::schwarz::validate_coeffs;
use hankel_lab::search::maximize_h22;
use hankel_lab::selftest::{run_selftest, Fault};
use hankel_lab::{
    ClassParams, CoefficientTriple, SchwarzCoeffs, SearchConfig, SearchReport, Series,
    ALPHA_REGION_SUP,
};

const EXIT_OK: u8 = 0;
const EXIT_SELFTEST_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INADMISSIBLE: u8 = 3;
const EXIT_BOUND_VIOLATION: u8 = 4;

/// Gap below which an in-region search result counts as a bound violation.
const VIOLATION_TOL: f64 = 1e-8;

#[derive(Parser)]
#[command(
    name = "hankel-lab",
    version,
    about = "Verification workbench for a sharp second-Hankel-determinant bound"
)]
struct Cli {
    /// Emit a single JSON object instead of the human-readable report.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for randomized refinement; identical seeds and flags reproduce
    /// output byte for byte.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Convergence tolerance for the simplex refinement.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the sharp ceiling and the proof scalars at one point.
    Bound {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        gamma: f64,
    },
    /// Map Schwarz coefficients to Taylor coefficients two independent
    /// ways and report the determinant.
    Coeffs {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        gamma: f64,
        /// Three comma-separated complex literals, each `re`, `imi`, or
        /// `re+imi` (e.g. `0,1,0` or `0.1+0.2i,0.3,-0.1i`).
        #[arg(long, value_name = "C1,C2,C3")]
        c: String,
    },
    /// Maximize |a2 a4 - a3^2| over the admissible body; always emits
    /// JSON.
    Search {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        gamma: f64,
        /// Independent simplex starts (the first is the extremal point).
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        /// Iteration cap per restart.
        #[arg(long, default_value_t = 500)]
        max_iterations: usize,
        /// Nodes per axis for the brute-force cross-check configuration.
        #[arg(long, default_value_t = 21)]
        grid_resolution: usize,
    },
    /// Sweep an alpha range into CSV, one row per grid point.
    Scan {
        /// Alpha range as `LO:HI:STEP` with 0 < STEP <= 0.1.
        #[arg(long, value_name = "LO:HI:STEP")]
        alpha: String,
        /// Fixed gamma value, or `max` for the region ceiling
        /// (alpha^2 - 4 alpha + 2) / 2.
        #[arg(long)]
        gamma: String,
        /// Also run the maximizer at every grid point, filling the
        /// attained and gap columns.
        #[arg(long)]
        search: bool,
    },
    /// Certify the sign and concavity facts of the one-variable witness
    /// on [0, 2].
    Phi {
        /// Grid spacing; at most 1e-2.
        #[arg(long, default_value_t = 1e-4)]
        step: f64,
    },
    /// Run the reduced-count invariant suites; exits 1 on any failure.
    Selftest,
}

fn main() -> std::process::ExitCode {
    reset_sigpipe();
    configure_threads();
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Bound { alpha, gamma } => cmd_bound(alpha, gamma, cli.json),
        Command::Coeffs {
            alpha,
            gamma,
            ref c,
        } => cmd_coeffs(alpha, gamma, c, cli.json),
        Command::Search {
            alpha,
            gamma,
            restarts,
            max_iterations,
            grid_resolution,
        } => {
            let config = SearchConfig {
                restarts,
                max_iterations,
                tolerance: cli.tolerance,
                seed: cli.seed,
                grid_resolution,
            };
            cmd_search(alpha, gamma, &config)
        }
        Command::Scan {
            ref alpha,
            ref gamma,
            search,
        } => {
            let config = SearchConfig {
                tolerance: cli.tolerance,
                seed: cli.seed,
                ..SearchConfig::default()
            };
            cmd_scan(alpha, gamma, search, &config, cli.json)
        }
        Command::Phi { step } => cmd_phi(step, cli.json),
        Command::Selftest => cmd_selftest(cli.json),
    };
    std::process::ExitCode::from(code)
}

/// Restores default SIGPIPE handling so piping into `head` and friends
/// ends the process quietly instead of panicking on a closed stdout.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

/// Applies `HANKEL_LAB_THREADS` to the global thread pool; 0 or unset
/// leaves the automatic sizing.
fn configure_threads() {
    if let Ok(raw) = std::env::var("HANKEL_LAB_THREADS") {
        match raw.trim().parse::<usize>() {
            Ok(0) => {}
            Ok(n) => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
            Err(_) => eprintln!("warning: ignoring invalid HANKEL_LAB_THREADS value {raw:?}"),
        }
    }
}

/// 17-significant-digit scientific notation, locale-independent; the fixed
/// width keeps CSV output diffable.
fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

fn sci_opt(x: Option<f64>) -> String {
    x.map(sci).unwrap_or_default()
}

fn fmt_complex(z: Complex64) -> String {
    if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string(value).expect("reports contain only finite numbers")
    );
}

fn region_note(params: &ClassParams) {
    if !params.in_theorem_region() {
        eprintln!(
            "note: (alpha, gamma) = ({}, {}) lies outside the proved region \
             (alpha < 2 - sqrt(2), gamma <= (alpha^2 - 4 alpha + 2)/2); values are exploratory",
            params.alpha(),
            params.gamma()
        );
    }
}

#[derive(Serialize)]
struct BoundReport {
    alpha: f64,
    gamma: f64,
    in_region: bool,
    bound: f64,
    mu: f64,
    nu: f64,
    mu1: f64,
    nu1: f64,
    #[serde(rename = "A")]
    a: f64,
    #[serde(rename = "B")]
    b: f64,
    f0: f64,
    ineq30: bool,
    ineq30_margin: f64,
}

fn cmd_bound(alpha: f64, gamma: f64, json: bool) -> u8 {
    let params = match ClassParams::new(alpha, gamma) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    region_note(&params);
    let p = proof_intermediates(&params);
    let report = BoundReport {
        alpha,
        gamma,
        in_region: params.in_theorem_region(),
        bound: bound(&params),
        mu: p.mu,
        nu: p.nu,
        mu1: p.mu1,
        nu1: p.nu1,
        a: p.a,
        b: p.b,
        f0: p.f0,
        ineq30: check_ineq_30(&params),
        ineq30_margin: ineq_30_margin(&params),
    };
    if json {
        print_json(&report);
    } else {
        println!("alpha      {}", report.alpha);
        println!("gamma      {}", report.gamma);
        println!("in_region  {}", report.in_region);
        println!("bound      {}", sci(report.bound));
        println!("mu         {}", sci(report.mu));
        println!("nu         {}", sci(report.nu));
        println!("mu1        {}", sci(report.mu1));
        println!("nu1        {}", sci(report.nu1));
        println!("A          {}", sci(report.a));
        println!("B          {}", sci(report.b));
        println!("f0         {}", sci(report.f0));
        println!(
            "ineq30     {} (margin {})",
            report.ineq30,
            sci(report.ineq30_margin)
        );
    }
    EXIT_OK
}

#[derive(Serialize)]
struct CoeffsReport {
    alpha: f64,
    gamma: f64,
    in_region: bool,
    c1: Complex64,
    c2: Complex64,
    c3: Complex64,
    closed_form: CoefficientTriple,
    solver: CoefficientTriple,
    max_discrepancy: f64,
    h22: Complex64,
    h22_abs: f64,
    bound: f64,
}

fn cmd_coeffs(alpha: f64, gamma: f64, c_arg: &str, json: bool) -> u8 {
    let params = match ClassParams::new(alpha, gamma) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let c = match parse_coeff_triple(c_arg) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    if !validate_coeffs(&c) {
        eprintln!(
            "error: ({}, {}, {}) violates the Schwarz coefficient constraints",
            fmt_complex(c.c1),
            fmt_complex(c.c2),
            fmt_complex(c.c3)
        );
        return EXIT_INADMISSIBLE;
    }
    region_note(&params);
    let closed = closed_form_coefficients(&params, &c);
    let omega = Series::from_coeffs(vec![Complex64::ZERO, c.c1, c.c2, c.c3, Complex64::ZERO]);
    let solver = solve_coefficients(&params, &omega)
        .expect("omega vanishes at the origin and carries enough coefficients");
    let determinant = h22(&closed);
    let report = CoeffsReport {
        alpha,
        gamma,
        in_region: params.in_theorem_region(),
        c1: c.c1,
        c2: c.c2,
        c3: c.c3,
        closed_form: closed,
        solver,
        max_discrepancy: solver.max_distance(&closed),
        h22: determinant,
        h22_abs: determinant.norm(),
        bound: bound(&params),
    };
    if json {
        print_json(&report);
    } else {
        println!("alpha            {}", report.alpha);
        println!("gamma            {}", report.gamma);
        println!("in_region        {}", report.in_region);
        println!(
            "c                ({}, {}, {})",
            fmt_complex(report.c1),
            fmt_complex(report.c2),
            fmt_complex(report.c3)
        );
        println!(
            "a2 (closed/solver)  {}  /  {}",
            fmt_complex(report.closed_form.a2),
            fmt_complex(report.solver.a2)
        );
        println!(
            "a3 (closed/solver)  {}  /  {}",
            fmt_complex(report.closed_form.a3),
            fmt_complex(report.solver.a3)
        );
        println!(
            "a4 (closed/solver)  {}  /  {}",
            fmt_complex(report.closed_form.a4),
            fmt_complex(report.solver.a4)
        );
        println!("max_discrepancy  {}", sci(report.max_discrepancy));
        println!("h22              {}", fmt_complex(report.h22));
        println!("|h22|            {}", sci(report.h22_abs));
        println!("bound            {}", sci(report.bound));
    }
    EXIT_OK
}

/// The search report plus the exploratory marker for out-of-region runs.
#[derive(Serialize)]
struct SearchOutput<'a> {
    #[serde(flatten)]
    report: &'a SearchReport,
    exploratory: bool,
}

fn cmd_search(alpha: f64, gamma: f64, config: &SearchConfig) -> u8 {
    let params = match ClassParams::new(alpha, gamma) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let report = match maximize_h22(&params, config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    region_note(&params);
    print_json(&SearchOutput {
        report: &report,
        exploratory: !report.in_region,
    });
    if report.in_region {
        if report.gap < -VIOLATION_TOL {
            eprintln!(
                "BOUND VIOLATION: attained {} exceeds theoretical {} by {} at in-region parameters",
                sci(report.attained),
                sci(report.theoretical),
                sci(-report.gap)
            );
            return EXIT_BOUND_VIOLATION;
        }
        if report.gap > 1e-5 {
            eprintln!(
                "warning: search stopped {} short of the ceiling; consider more restarts",
                sci(report.gap)
            );
        }
    }
    EXIT_OK
}

#[derive(Serialize)]
struct ScanRow {
    alpha: f64,
    gamma: f64,
    in_region: bool,
    bound: f64,
    attained: Option<f64>,
    gap: Option<f64>,
    #[serde(rename = "A")]
    a: f64,
    #[serde(rename = "B")]
    b: f64,
    nu1: f64,
    ineq30: bool,
}

#[derive(Serialize)]
struct ScanOutput {
    rows: Vec<ScanRow>,
}

const SCAN_HEADER: &str = "alpha,gamma,in_region,bound,attained,gap,A,B,nu1,ineq30";

fn cmd_scan(
    alpha_range: &str,
    gamma_mode: &str,
    search: bool,
    config: &SearchConfig,
    json: bool,
) -> u8 {
    let alphas = match parse_alpha_range(alpha_range) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let fixed_gamma = if gamma_mode == "max" {
        if alphas.iter().any(|&a| a >= ALPHA_REGION_SUP) {
            eprintln!(
                "error: --gamma max needs every alpha below 2 - sqrt(2) ~ {ALPHA_REGION_SUP:.6}"
            );
            return EXIT_USAGE;
        }
        None
    } else {
        match gamma_mode.parse::<f64>() {
            Ok(g) if g > 0.0 && g <= 1.0 => Some(g),
            _ => {
                eprintln!("error: --gamma must be `max` or a number in (0, 1]");
                return EXIT_USAGE;
            }
        }
    };

    let mut rows = Vec::with_capacity(alphas.len());
    let mut violation = false;
    for alpha in alphas {
        let gamma = fixed_gamma.unwrap_or_else(|| ClassParams::gamma_region_max(alpha));
        let params = match ClassParams::new(alpha, gamma) {
            Ok(p) => p,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
        };
        let p = proof_intermediates(&params);
        let (attained, gap) = if search {
            let report = maximize_h22(&params, config).expect("scan uses a validated config");
            if report.in_region && report.gap < -VIOLATION_TOL {
                violation = true;
            }
            (Some(report.attained), Some(report.gap))
        } else {
            (None, None)
        };
        rows.push(ScanRow {
            alpha,
            gamma,
            in_region: params.in_theorem_region(),
            bound: bound(&params),
            attained,
            gap,
            a: p.a,
            b: p.b,
            nu1: p.nu1,
            ineq30: check_ineq_30(&params),
        });
    }

    if json {
        print_json(&ScanOutput { rows });
    } else {
        println!("{SCAN_HEADER}");
        for r in &rows {
            println!(
                "{},{},{},{},{},{},{},{},{},{}",
                sci(r.alpha),
                sci(r.gamma),
                r.in_region,
                sci(r.bound),
                sci_opt(r.attained),
                sci_opt(r.gap),
                sci(r.a),
                sci(r.b),
                sci(r.nu1),
                r.ineq30
            );
        }
    }
    if violation {
        eprintln!("BOUND VIOLATION: at least one in-region row exceeded its ceiling");
        return EXIT_BOUND_VIOLATION;
    }
    EXIT_OK
}

#[derive(Serialize)]
struct PhiReport {
    step: f64,
    grid_points: usize,
    min_phi1: f64,
    max_phi1_double_prime: f64,
    prime_sign_changes: usize,
    phi1_at_0: f64,
    phi1_at_2: f64,
    phi1_prime_at_0: f64,
    phi1_prime_at_2: f64,
    curvature_reference: f64,
    pass_nonnegative: bool,
    pass_concave: bool,
    pass_single_crossing: bool,
    pass: bool,
}

fn cmd_phi(step: f64, json: bool) -> u8 {
    if !(step > 0.0 && step <= 1e-2) {
        eprintln!("error: --step must lie in (0, 1e-2]");
        return EXIT_USAGE;
    }
    let cert = certify_phi1(step).expect("step validated above");
    let report = PhiReport {
        step,
        grid_points: cert.grid_points,
        min_phi1: cert.min_phi1,
        max_phi1_double_prime: cert.max_phi1_double_prime,
        prime_sign_changes: cert.prime_sign_changes,
        phi1_at_0: phi1(0.0).expect("0 is in the domain"),
        phi1_at_2: phi1(2.0).expect("2 is in the domain"),
        phi1_prime_at_0: phi1_prime(0.0).expect("0 is in the domain"),
        phi1_prime_at_2: phi1_prime(2.0).expect("2 is in the domain"),
        curvature_reference: phi1_curvature_reference(),
        pass_nonnegative: cert.min_phi1 >= -1e-9,
        pass_concave: cert.max_phi1_double_prime <= -1e-3,
        pass_single_crossing: cert.prime_sign_changes == 1,
        pass: false,
    };
    let report = PhiReport {
        pass: report.pass_nonnegative && report.pass_concave && report.pass_single_crossing,
        ..report
    };
    if json {
        print_json(&report);
    } else {
        let verdict = |ok: bool| if ok { "PASS" } else { "FAIL" };
        println!("grid step            {}", report.step);
        println!("grid points          {}", report.grid_points);
        println!("phi1(0)              {}", sci(report.phi1_at_0));
        println!("phi1(2)              {}", sci(report.phi1_at_2));
        println!("phi1'(0)             {}", sci(report.phi1_prime_at_0));
        println!("phi1'(2)             {}", sci(report.phi1_prime_at_2));
        println!("curvature reference  {}", sci(report.curvature_reference));
        println!(
            "min phi1             {}  [{}] (>= -1e-9)",
            sci(report.min_phi1),
            verdict(report.pass_nonnegative)
        );
        println!(
            "max phi1''           {}  [{}] (<= -1e-3)",
            sci(report.max_phi1_double_prime),
            verdict(report.pass_concave)
        );
        println!(
            "phi1' sign changes   {}  [{}] (exactly 1)",
            report.prime_sign_changes,
            verdict(report.pass_single_crossing)
        );
        println!("overall              {}", verdict(report.pass));
    }
    EXIT_OK
}

#[derive(Serialize)]
struct SelftestReport {
    suites: Vec<hankel_lab::SuiteResult>,
    passed: bool,
}

fn cmd_selftest(json: bool) -> u8 {
    let fault = match std::env::var("HANKEL_LAB_FAULT") {
        Err(_) => Fault::None,
        Ok(v) if v == "perturb-closed-form-a3" => Fault::PerturbClosedFormA3,
        Ok(v) => {
            eprintln!("error: unknown HANKEL_LAB_FAULT value {v:?}");
            return EXIT_USAGE;
        }
    };
    let suites = run_selftest(fault);
    let passed = suites.iter().all(|s| s.passed);
    if json {
        print_json(&SelftestReport { suites, passed });
    } else {
        for s in &suites {
            println!(
                "{:<24} {}  ({})",
                s.name,
                if s.passed { "PASS" } else { "FAIL" },
                s.detail
            );
        }
    }
    if passed {
        EXIT_OK
    } else {
        EXIT_SELFTEST_FAILED
    }
}

/// Parses `LO:HI:STEP` into the inclusive alpha grid it denotes.
fn parse_alpha_range(text: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(':').collect();
    let [lo, hi, step] = parts.as_slice() else {
        return Err(format!(
            "alpha range {text:?} must have the form LO:HI:STEP"
        ));
    };
    let parse = |s: &str, what: &str| {
        s.parse::<f64>()
            .map_err(|_| format!("invalid {what} in alpha range: {s:?}"))
    };
    let lo = parse(lo, "lower end")?;
    let hi = parse(hi, "upper end")?;
    let step = parse(step, "step")?;
    if !(step > 0.0 && step <= 0.1) {
        return Err("alpha step must lie in (0, 0.1]".to_string());
    }
    if !(lo > 0.0 && hi < 1.0) {
        return Err("alpha range must stay inside (0, 1)".to_string());
    }
    if lo > hi {
        return Err("empty alpha range: lower end exceeds upper end".to_string());
    }
    let mut alphas = Vec::new();
    let mut k = 0u32;
    loop {
        let alpha = lo + k as f64 * step;
        if alpha > hi + 0.5 * step {
            break;
        }
        alphas.push(alpha);
        k += 1;
    }
    Ok(alphas)
}

/// Parses one `re`, `imi`, or `re+imi` literal, e.g. `0.5`, `-0.3i`,
/// `0.1+0.2i`, `1e-3-2i`.
fn parse_complex(text: &str) -> Result<Complex64, String> {
    let t = text.trim();
    if t.is_empty() {
        return Err("empty complex literal".to_string());
    }
    // The last sign that is neither leading nor part of an exponent splits
    // the real and imaginary components.
    let bytes = t.as_bytes();
    let mut split = None;
    for i in 1..bytes.len() {
        if matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
            split = Some(i);
        }
    }
    let (re_text, im_text) = match split {
        Some(i) => {
            let (head, tail) = t.split_at(i);
            match tail.strip_suffix('i') {
                Some(im) => (head, Some(im)),
                None => {
                    return Err(format!(
                        "second component of {t:?} must be imaginary (end with 'i')"
                    ))
                }
            }
        }
        None => match t.strip_suffix('i') {
            Some(im) => ("", Some(im)),
            None => (t, None),
        },
    };
    let re = if re_text.is_empty() {
        0.0
    } else {
        re_text
            .parse::<f64>()
            .map_err(|_| format!("invalid real part in {t:?}"))?
    };
    let im = match im_text {
        None => 0.0,
        Some("") | Some("+") => 1.0,
        Some("-") => -1.0,
        Some(s) => s
            .parse::<f64>()
            .map_err(|_| format!("invalid imaginary part in {t:?}"))?,
    };
    Ok(Complex64::new(re, im))
}

fn parse_coeff_triple(text: &str) -> Result<SchwarzCoeffs, String> {
    let parts: Vec<&str> = text.split(',').collect();
    let [c1, c2, c3] = parts.as_slice() else {
        return Err(format!(
            "--c expects three comma-separated complex literals, got {text:?}"
        ));
    };
    Ok(SchwarzCoeffs::new(
        parse_complex(c1)?,
        parse_complex(c2)?,
        parse_complex(c3)?,
    ))
}
