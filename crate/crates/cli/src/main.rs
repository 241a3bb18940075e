//! `repring` — exact tensor-product decomposition of k[x]-modules, Green-ring
//! arithmetic in odd characteristic, cycle-quiver products, and the
//! verification suites, from the command line.
//!
//! Exit codes: 0 on success, 1 when a verification suite reports a mismatch,
//! 2 on usage or input errors. All failures are rendered as messages.

use clap::{Parser, Subcommand};
use repring_cli::expr::{
    error_with_caret, parse_field_flag, parse_module_expr, parse_poly, parse_quiver_expr,
};
use repring_cli::render::{
    factorization_to_json, factorization_to_string, quiver_to_json, quiver_to_string,
    ring_to_json, ring_to_string, rprime_to_json, rprime_to_string, wpoly_to_json,
    wpoly_to_string, SCHEMA_VERSION,
};
use repring_cli::verify::{run as run_suites, SuiteResult};
use repring_core::green::{rprime_mul, v_to_w, RPrimeElement};
use repring_core::poly::{factor, star_product};
use repring_core::quiver::{qring_mul, QuiverShape};
use repring_core::{ring_mul, Field};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "repring",
    version,
    about = "Exact decomposition of tensor products of k[x]-modules and cycle-quiver representations"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Multiply two module expressions and print the decomposition.
    Decompose {
        /// Coefficient field: q, rc, or f<p> with p prime.
        #[arg(long)]
        field: String,
        /// Left factor, e.g. "(x-1)^2" or "x^3 + 2*(x-1)^2".
        #[arg(long)]
        lhs: String,
        /// Right factor.
        #[arg(long)]
        rhs: String,
        /// Output format: text or json.
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Star-multiply two polynomials and print the factored result.
    Star {
        /// Coefficient field: q or f<p> with p prime.
        #[arg(long, default_value = "q")]
        field: String,
        /// First polynomial.
        #[arg(long)]
        f: String,
        /// Second polynomial.
        #[arg(long)]
        g: String,
        /// Output format: text or json.
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Green-ring products (--s/--t) or basis translation (--to-w).
    Green {
        /// The prime characteristic.
        #[arg(long)]
        p: u64,
        /// Left tensor factor index for a product in the v-basis.
        #[arg(long)]
        s: Option<u64>,
        /// Right tensor factor index.
        #[arg(long)]
        t: Option<u64>,
        /// Translate v_<index> into the w-generators instead.
        #[arg(long)]
        to_w: Option<u64>,
        /// Output format: text or json.
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Multiply two expressions over the cyclic quiver with n+1 vertices.
    Quiver {
        /// Number of extra vertices: the cycle has n+1 of them.
        #[arg(long)]
        n: u32,
        /// Coefficient field: q or f<p> with p prime.
        #[arg(long)]
        field: String,
        /// Left factor, e.g. "S(0,2) + B(x^2+1,1)".
        #[arg(long)]
        lhs: String,
        /// Right factor.
        #[arg(long)]
        rhs: String,
        /// Output format: text or json.
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Factor a polynomial over the chosen field.
    Factor {
        /// Coefficient field: q or f<p> with p prime.
        #[arg(long, default_value = "q")]
        field: String,
        /// The polynomial to factor.
        #[arg(long)]
        poly: String,
        /// Output format: text or json.
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Run cross-check suites; exits 1 if any check disagrees.
    Verify {
        /// One of char0, nilpotent, charp, realclosed, quiver, or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Seed for the randomized decomposition steps.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Skip cases whose total dimension exceeds this.
        #[arg(long, default_value_t = 64)]
        max_dim: usize,
        /// Output format: text or json.
        #[arg(long, default_value = "text")]
        format: String,
    },
}

/// A rendered failure plus the exit code it maps to.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: 2, message: message.into() }
    }
}

fn main() {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(code) => std::process::exit(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            std::process::exit(f.code);
        }
    }
}

fn parse_format(format: &str) -> Result<bool, Failure> {
    match format {
        "text" => Ok(false),
        "json" => Ok(true),
        other => Err(Failure::usage(format!("unknown format '{other}' (expected text or json)"))),
    }
}

fn field_for(flag: &str) -> Result<Field, Failure> {
    parse_field_flag(flag).map_err(Failure::usage)
}

/// A field flag for commands that work with polynomials only (no rc).
fn finite_or_rational_field(flag: &str) -> Result<Field, Failure> {
    let k = field_for(flag)?;
    if matches!(k, Field::RealClosed) {
        return Err(Failure::usage(
            "this command works over q or f<p>; the real-closed model has no polynomial arithmetic here",
        ));
    }
    Ok(k)
}

fn dispatch(cmd: Cmd) -> Result<i32, Failure> {
    match cmd {
        Cmd::Decompose { field, lhs, rhs, format } => {
            let as_json = parse_format(&format)?;
            let k = field_for(&field)?;
            let a = parse_module_expr(&lhs, &k)
                .map_err(|e| Failure::usage(format!("--lhs: {}", error_with_caret(&lhs, &e))))?;
            let b = parse_module_expr(&rhs, &k)
                .map_err(|e| Failure::usage(format!("--rhs: {}", error_with_caret(&rhs, &e))))?;
            if !a.is_effective() || !b.is_effective() {
                return Err(Failure::usage(
                    "decompose multiplies actual modules; coefficients must be nonnegative",
                ));
            }
            let prod = ring_mul(&a, &b)
                .map_err(|e| Failure::usage(format!("product failed: {e}")))?;
            if as_json {
                println!("{}", ring_to_json(&prod));
            } else {
                println!("{}", ring_to_string(&prod));
            }
            Ok(0)
        }
        Cmd::Star { field, f, g, format } => {
            let as_json = parse_format(&format)?;
            let k = finite_or_rational_field(&field)?;
            let pf = parse_poly(&f, &k)
                .map_err(|e| Failure::usage(format!("--f: {}", error_with_caret(&f, &e))))?;
            let pg = parse_poly(&g, &k)
                .map_err(|e| Failure::usage(format!("--g: {}", error_with_caret(&g, &e))))?;
            let prod = star_product(&pf, &pg, &k)
                .map_err(|e| Failure::usage(format!("star product failed: {e}")))?;
            let fac = factor(&prod, &k)
                .map_err(|e| Failure::usage(format!("factoring the product failed: {e}")))?;
            if as_json {
                let mut doc = factorization_to_json(&fac, &k);
                doc["f"] = json!(f);
                doc["g"] = json!(g);
                println!("{doc}");
            } else {
                println!("{}", factorization_to_string(&fac, &k));
            }
            Ok(0)
        }
        Cmd::Green { p, s, t, to_w, format } => {
            let as_json = parse_format(&format)?;
            Field::prime(p).map_err(|e| Failure::usage(e.to_string()))?;
            match (s, t, to_w) {
                (Some(s), Some(t), None) => {
                    if s == 0 || t == 0 {
                        return Err(Failure::usage("--s and --t must be positive"));
                    }
                    let v =
                        rprime_mul(&RPrimeElement::basis(p, s), &RPrimeElement::basis(p, t));
                    if as_json {
                        println!("{}", rprime_to_json(&v));
                    } else {
                        println!("{}", rprime_to_string(&v));
                    }
                }
                (None, None, Some(s)) => {
                    if s == 0 {
                        return Err(Failure::usage("--to-w must be positive"));
                    }
                    let w = v_to_w(s, p);
                    if as_json {
                        println!("{}", wpoly_to_json(&w));
                    } else {
                        println!("{}", wpoly_to_string(&w));
                    }
                }
                _ => {
                    return Err(Failure::usage(
                        "green needs either --s and --t (a product) or --to-w (a translation)",
                    ));
                }
            }
            Ok(0)
        }
        Cmd::Quiver { n, field, lhs, rhs, format } => {
            let as_json = parse_format(&format)?;
            let k = finite_or_rational_field(&field)?;
            let shape = QuiverShape::cyclic(n);
            let a = parse_quiver_expr(&lhs, &shape, &k)
                .map_err(|e| Failure::usage(format!("--lhs: {}", error_with_caret(&lhs, &e))))?;
            let b = parse_quiver_expr(&rhs, &shape, &k)
                .map_err(|e| Failure::usage(format!("--rhs: {}", error_with_caret(&rhs, &e))))?;
            if !a.is_effective() || !b.is_effective() {
                return Err(Failure::usage(
                    "quiver products act on actual representations; coefficients must be nonnegative",
                ));
            }
            let prod = qring_mul(&a, &b)
                .map_err(|e| Failure::usage(format!("product failed: {e}")))?;
            if as_json {
                println!("{}", quiver_to_json(&prod));
            } else {
                println!("{}", quiver_to_string(&prod));
            }
            Ok(0)
        }
        Cmd::Factor { field, poly, format } => {
            let as_json = parse_format(&format)?;
            let k = finite_or_rational_field(&field)?;
            let f = parse_poly(&poly, &k)
                .map_err(|e| Failure::usage(format!("--poly: {}", error_with_caret(&poly, &e))))?;
            let fac = factor(&f, &k)
                .map_err(|e| Failure::usage(format!("factoring failed: {e}")))?;
            if as_json {
                println!("{}", factorization_to_json(&fac, &k));
            } else {
                println!("{}", factorization_to_string(&fac, &k));
            }
            Ok(0)
        }
        Cmd::Verify { suite, seed, max_dim, format } => {
            let as_json = parse_format(&format)?;
            let started = std::time::Instant::now();
            let results = run_suites(&suite, seed, max_dim).map_err(Failure::usage)?;
            let total_mismatches: u64 = results.iter().map(|r| r.mismatches).sum();
            if as_json {
                println!("{}", verify_report_json(&suite, seed, max_dim, &results));
            } else {
                print_verify_table(&results);
            }
            eprintln!("verify finished in {:.1?}", started.elapsed());
            Ok(if total_mismatches > 0 { 1 } else { 0 })
        }
    }
}

fn print_verify_table(results: &[SuiteResult]) {
    println!("{:<12} {:>8} {:>11}", "suite", "checks", "mismatches");
    let mut checks = 0u64;
    let mut mismatches = 0u64;
    for r in results {
        println!("{:<12} {:>8} {:>11}", r.name, r.checks, r.mismatches);
        checks += r.checks;
        mismatches += r.mismatches;
    }
    println!("{:<12} {:>8} {:>11}", "total", checks, mismatches);
}

fn verify_report_json(
    suite: &str,
    seed: u64,
    max_dim: usize,
    results: &[SuiteResult],
) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = results
        .iter()
        .map(|r| json!({"name": r.name, "checks": r.checks, "mismatches": r.mismatches}))
        .collect();
    let total: u64 = results.iter().map(|r| r.mismatches).sum();
    json!({
        "schema_version": SCHEMA_VERSION,
        "suite": suite,
        "seed": seed,
        "max_dim": max_dim,
        "suites": rows,
        "ok": total == 0,
    })
}
