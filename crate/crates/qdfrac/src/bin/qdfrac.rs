//! Command-line driver: tableau dumps, continued-fraction coefficients,
//! determinant tables, convergent comparisons, exact identity sweeps, the
//! three E1 evaluators, the main-term ratio table, and the L-series demo.
//!
//! Exit codes: 0 success, 1 identity failure or runtime error, 2 usage.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qdfrac::convergents::{
    bridge_q_s, closed_form_p, closed_form_q, convergent_pair, fm_denominator_congruence,
    fm_numerator_congruence, rs_polys, s_coefficient_identities, Parity,
};
use qdfrac::hankelmat::{det_a, h1_offset_det, minor_a, row_dot_b};
use qdfrac::lfunction::{load_curve, lprime_with_method, G1Method};
use qdfrac::numeval::{
    e1_cf, e1_cf_fixed_depth, e1_quadrature, e1_series, f_iteration, BigReal, EvalReport,
};
use qdfrac::poly::RatPoly;
use qdfrac::rational::{factorial_rat, int, Rational};
use qdfrac::seriesqd::{cf_coeffs, qd_table, verify_hankel_ratios, CoeffSeq};

#[derive(Parser)]
#[command(name = "qdfrac", version, about = "Exact quotient-difference engine and E1 evaluator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Table,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeqChoice {
    /// c_n = (-1)^n n!
    Factorial,
    /// c_n = (n+1)!
    Shifted,
}

impl SeqChoice {
    fn build(self) -> CoeffSeq {
        match self {
            SeqChoice::Factorial => CoeffSeq::factorial(),
            SeqChoice::Shifted => CoeffSeq::shifted_factorial(),
        }
    }
}

#[derive(Args)]
struct CommonOut {
    /// Output format.
    #[arg(long, value_enum, default_value = "table")]
    output: Output,
}

#[derive(Args)]
struct PrecArg {
    /// Precision in bits (env QDFRAC_PREC_BITS overrides the default).
    #[arg(long, env = "QDFRAC_PREC_BITS", default_value_t = 128)]
    prec: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Dump the quotient-difference tableau of a coefficient sequence.
    Qd {
        /// Tableau depth K (columns k of q up to K-1, of e up to K).
        #[arg(long, default_value_t = 6)]
        kmax: usize,
        /// Tableau width N (superdiagonal index n).
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[arg(long, value_enum, default_value = "factorial")]
        seq: SeqChoice,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Continued-fraction coefficients d_0 ... d_2K of a sequence.
    Cfcoeffs {
        #[arg(long, short)]
        k: usize,
        #[arg(long, value_enum, default_value = "factorial")]
        seq: SeqChoice,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Determinant and minor tables of the factorial matrix.
    Hankel {
        #[arg(long, default_value_t = 8)]
        kmax: usize,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Convergents by recurrence next to their closed forms.
    Convergents {
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Sweep every exact identity family up to a bound; exit 1 on failure.
    Identities {
        #[arg(long, default_value_t = 8)]
        kmax: usize,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Evaluate E1(x) by one or all of the three methods.
    E1 {
        /// Evaluation point (integer, decimal, or p/q).
        #[arg(long, short, allow_hyphen_values = true)]
        x: String,
        #[command(flatten)]
        prec: PrecArg,
        #[arg(long, value_enum, default_value = "all")]
        method: E1Method,
        /// Fixed continued-fraction depth (default: automatic refinement).
        #[arg(long)]
        depth: Option<usize>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Normalized ratios of the main-term iteration F_1, F_2, ...
    Fm {
        #[arg(long, short, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 4)]
        mmax: usize,
        #[command(flatten)]
        prec: PrecArg,
        #[command(flatten)]
        out: CommonOut,
    },
    /// L'(E, 1) demo from a curve file.
    Lprime {
        /// Curve file (key = value lines; see data/curve37a.txt).
        #[arg(long)]
        curve: std::path::PathBuf,
        /// Summation truncation T.
        #[arg(long, default_value_t = 1000)]
        terms: usize,
        #[command(flatten)]
        prec: PrecArg,
        #[arg(long, value_enum, default_value = "auto")]
        method: LMethod,
        #[command(flatten)]
        out: CommonOut,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum E1Method {
    Series,
    Cf,
    Quadrature,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LMethod {
    Auto,
    Series,
    Cf,
    Quadrature,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Command) -> Result<ExitCode, String> {
    match cmd {
        Command::Qd {
            kmax,
            nmax,
            seq,
            out,
        } => cmd_qd(kmax, nmax, seq, out.output),
        Command::Cfcoeffs { k, seq, out } => cmd_cfcoeffs(k, seq, out.output),
        Command::Hankel { kmax, out } => cmd_hankel(kmax, out.output),
        Command::Convergents { nmax, out } => cmd_convergents(nmax, out.output),
        Command::Identities { kmax, out } => cmd_identities(kmax, out.output),
        Command::E1 {
            x,
            prec,
            method,
            depth,
            out,
        } => cmd_e1(&x, prec.prec, method, depth, out.output),
        Command::Fm { x, mmax, prec, out } => cmd_fm(&x, mmax, prec.prec, out.output),
        Command::Lprime {
            curve,
            terms,
            prec,
            method,
            out,
        } => cmd_lprime(&curve, terms, prec.prec, method, out.output),
    }
}

fn sig_digits(prec: usize) -> usize {
    ((prec as f64) * std::f64::consts::LOG10_2).floor().max(1.0) as usize
}

fn cmd_qd(kmax: usize, nmax: usize, seq: SeqChoice, out: Output) -> Result<ExitCode, String> {
    let c = seq.build();
    let t = qd_table(&c, kmax, nmax).map_err(|e| e.to_string())?;
    match out {
        Output::Table => {
            for k in 0..kmax {
                for n in 0..=nmax {
                    print!("q[{k}][{n}]={} ", t.q(k, n));
                }
                println!();
            }
            for k in 0..=kmax {
                for n in 0..=nmax {
                    print!("e[{k}][{n}]={} ", t.e(k, n));
                }
                println!();
            }
        }
        Output::Json => {
            for k in 0..kmax {
                for n in 0..=nmax {
                    println!(
                        "{}",
                        json!({"kind": "q", "k": k, "n": n, "value": t.q(k, n).to_string()})
                    );
                }
            }
            for k in 0..=kmax {
                for n in 0..=nmax {
                    println!(
                        "{}",
                        json!({"kind": "e", "k": k, "n": n, "value": t.e(k, n).to_string()})
                    );
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_cfcoeffs(k: usize, seq: SeqChoice, out: Output) -> Result<ExitCode, String> {
    let c = seq.build();
    let cf = cf_coeffs(&c, k).map_err(|e| e.to_string())?;
    let parts: Vec<String> = cf.d().iter().map(|d| d.to_string()).collect();
    match out {
        Output::Table => println!("d = {}", parts.join(" ")),
        Output::Json => println!("{}", json!({"k": k, "d": parts})),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_hankel(kmax: usize, out: Output) -> Result<ExitCode, String> {
    for k in 1..=kmax {
        let det = det_a(k);
        let h1 = if k >= 2 { Some(h1_offset_det(k)) } else { None };
        let minors: Vec<Rational> = (1..=k)
            .map(|m| minor_a(k, k, m).expect("indices in range"))
            .collect();
        match out {
            Output::Table => {
                let ms: Vec<String> = minors.iter().map(|m| m.to_string()).collect();
                print!("k={k} det={det} ");
                if let Some(h) = &h1 {
                    print!("offset1={h} ");
                }
                println!("last-row-minors: {}", ms.join(" "));
            }
            Output::Json => {
                println!(
                    "{}",
                    json!({
                        "k": k,
                        "det": det.to_string(),
                        "offset1": h1.map(|h| h.to_string()),
                        "last_row_minors": minors.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                    })
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_convergents(nmax: usize, out: Output) -> Result<ExitCode, String> {
    let mut all_match = true;
    for n in 1..=nmax {
        let (p_rec, q_rec) = convergent_pair(n);
        let half = n.div_ceil(2);
        let parity = if n % 2 == 1 { Parity::Odd } else { Parity::Even };
        let p_closed = closed_form_p(half, parity);
        let q_closed = closed_form_q(half, parity);
        let ok = p_rec == p_closed && q_rec == q_closed;
        all_match &= ok;
        match out {
            Output::Table => {
                println!("P_{n}: recurrence {p_rec} | closed {p_closed}");
                println!("Q_{n}: recurrence {q_rec} | closed {q_closed}");
                println!("match: {}", if ok { "yes" } else { "NO" });
            }
            Output::Json => {
                println!(
                    "{}",
                    json!({
                        "n": n,
                        "p_recurrence": p_rec.to_string(),
                        "p_closed": p_closed.to_string(),
                        "q_recurrence": q_rec.to_string(),
                        "q_closed": q_closed.to_string(),
                        "match": ok,
                    })
                );
            }
        }
    }
    Ok(if all_match {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_identities(kmax: usize, out: Output) -> Result<ExitCode, String> {
    let mut failures: Vec<String> = Vec::new();
    let mut emit = |name: &str, detail: String| {
        failures.push(format!("{name}: {detail}"));
    };

    // tableau entries vs Hankel determinant ratios, two sequences
    for (name, c) in [
        ("factorial", CoeffSeq::factorial()),
        ("shifted", CoeffSeq::shifted_factorial()),
    ] {
        match verify_hankel_ratios(&c, kmax, 4) {
            Ok(list) => {
                for f in list {
                    emit("hankel-ratio", format!("[{name}] {f}"));
                }
            }
            Err(e) => emit("hankel-ratio", format!("[{name}] {e}")),
        }
    }

    // determinant closed forms, last-row minors, orthogonality
    for k in 1..=kmax {
        let _ = det_a(k); // asserts its closed form internally
        for m in 1..=k {
            let _ = minor_a(k, k, m).expect("indices in range");
            let dot = row_dot_b(k, m);
            let want = if m == k { int(1) } else { int(0) };
            if dot != want {
                emit("orthogonality", format!("k={k} m={m}: {dot} != {want}"));
            }
        }
        if k >= 2 {
            let _ = h1_offset_det(k);
        }
    }

    // congruences: polynomial parts equal k!
    for k in 1..=kmax {
        let want = RatPoly::constant(factorial_rat(k));
        let den = fm_denominator_congruence(k).polynomial_part();
        if den != want {
            emit("denominator-congruence", format!("k={k}: {den} != {want}"));
        }
        let num = fm_numerator_congruence(k).polynomial_part();
        if num != want {
            emit("numerator-congruence", format!("k={k}: {num} != {want}"));
        }
    }

    // s-coefficient sums and the binomial lemmas
    for k in 2..=kmax {
        for f in s_coefficient_identities(k) {
            emit("s-identities", f.to_string());
        }
    }

    // closed forms vs recurrence, the convergent/rs bridges, degrees
    for n in 1..=kmax {
        let (p_odd, q_odd) = convergent_pair(2 * n - 1);
        let (p_even, q_even) = convergent_pair(2 * n);
        if closed_form_p(n, Parity::Odd) != p_odd
            || closed_form_q(n, Parity::Odd) != q_odd
            || closed_form_p(n, Parity::Even) != p_even
            || closed_form_q(n, Parity::Even) != q_even
        {
            emit("closed-forms", format!("n={n}"));
        }
        for f in bridge_q_s(n) {
            emit("bridge", f.to_string());
        }
        let (r, s) = rs_polys(n);
        if r.degree() != Some(n - 1) || s.degree() != Some(n) {
            emit("rs-degrees", format!("n={n}"));
        }
    }

    if failures.is_empty() {
        match out {
            Output::Table => println!("all identities hold exactly (kmax={kmax})"),
            Output::Json => println!("{}", json!({"ok": true, "kmax": kmax})),
        }
        Ok(ExitCode::SUCCESS)
    } else {
        for f in &failures {
            match out {
                Output::Table => println!("FAIL {f}"),
                Output::Json => println!("{}", json!({"ok": false, "failure": f})),
            }
        }
        Ok(ExitCode::from(1))
    }
}

fn print_report(r: &EvalReport, prec: usize, out: Output) {
    let digits = sig_digits(prec);
    match out {
        Output::Table => {
            println!(
                "x={} value={} method={} terms={} est_err={}",
                r.x.to_decimal(digits),
                r.value.to_decimal(digits),
                r.method,
                r.terms_or_depth,
                r.est_error.to_decimal(6),
            );
        }
        Output::Json => {
            println!(
                "{}",
                json!({
                    "x": r.x.to_decimal(digits),
                    "value": r.value.to_decimal(digits),
                    "method": r.method.to_string(),
                    "terms": r.terms_or_depth,
                    "est_err": r.est_error.to_decimal(6),
                })
            );
        }
    }
}

fn cmd_e1(
    x: &str,
    prec: usize,
    method: E1Method,
    depth: Option<usize>,
    out: Output,
) -> Result<ExitCode, String> {
    let xv = BigReal::parse(x, prec).map_err(|e| e.to_string())?;
    let cf_eval = || -> Result<EvalReport, String> {
        match depth {
            Some(d) => e1_cf_fixed_depth(&xv, d, prec).map_err(|e| e.to_string()),
            None => e1_cf(&xv, 1, prec).map_err(|e| e.to_string()),
        }
    };
    let reports: Vec<EvalReport> = match method {
        E1Method::Series => vec![e1_series(&xv, prec).map_err(|e| e.to_string())?],
        E1Method::Cf => vec![cf_eval()?],
        E1Method::Quadrature => vec![e1_quadrature(&xv, prec).map_err(|e| e.to_string())?],
        E1Method::All => vec![
            e1_series(&xv, prec).map_err(|e| e.to_string())?,
            cf_eval()?,
            e1_quadrature(&xv, prec).map_err(|e| e.to_string())?,
        ],
    };
    for r in &reports {
        print_report(r, prec, out);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_fm(x: &str, mmax: usize, prec: usize, out: Output) -> Result<ExitCode, String> {
    let xv = BigReal::parse(x, prec).map_err(|e| e.to_string())?;
    let rows = f_iteration(&xv, mmax, prec).map_err(|e| e.to_string())?;
    let digits = sig_digits(prec).min(30);
    for row in &rows {
        match out {
            Output::Table => println!(
                "m={} rho_odd={} rho_even={}",
                row.m,
                row.rho_odd.to_decimal(digits),
                row.rho_even.to_decimal(digits),
            ),
            Output::Json => println!(
                "{}",
                json!({
                    "m": row.m,
                    "rho_odd": row.rho_odd.to_decimal(digits),
                    "rho_even": row.rho_even.to_decimal(digits),
                })
            ),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_lprime(
    path: &std::path::Path,
    terms: usize,
    prec: usize,
    method: LMethod,
    out: Output,
) -> Result<ExitCode, String> {
    let curve = load_curve(path).map_err(|e| e.to_string())?;
    let g1 = match method {
        LMethod::Auto => G1Method::Auto,
        LMethod::Series => G1Method::SeriesOnly,
        LMethod::Cf => G1Method::ContinuedFractionOnly,
        LMethod::Quadrature => G1Method::QuadratureOnly,
    };
    let started = Instant::now();
    let r = lprime_with_method(&curve, terms, prec, g1).map_err(|e| e.to_string())?;
    let elapsed = started.elapsed();
    let digits = sig_digits(prec);
    match out {
        Output::Table => println!(
            "curve={} lprime={} T={} tail={} wall_ms={}",
            curve.label,
            r.value.to_decimal(digits),
            r.terms,
            r.tail.to_decimal(6),
            elapsed.as_millis(),
        ),
        Output::Json => println!(
            "{}",
            json!({
                "curve": curve.label,
                "lprime": r.value.to_decimal(digits),
                "T": r.terms,
                "tail": r.tail.to_decimal(6),
                "wall_ms": elapsed.as_millis(),
            })
        ),
    }
    Ok(ExitCode::SUCCESS)
}
