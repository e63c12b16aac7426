//! Command definitions and their execution into a `ReportDocument`.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use thiserror::Error;

use weylkit::automorphism::image_pd_subspace_with;
use weylkit::exact::rat;
use weylkit::ideal::{characteristic_pair_with, dual_contains, ideal_contains, SearchConfig};
use weylkit::stafford::{inclusion_report_with, stabilizes_exp, stabilizes_exp_dual, verify_main_proposition};

use crate::golden;
use crate::parse::{parse_d_poly, parse_element, parse_laurent, parse_pd, parse_t_poly, parse_word, ParseError};
use crate::report::{ReportDocument, Value};

#[derive(Debug, Parser)]
#[command(name = "weylkit", version, about = "Exact computations in the first Weyl algebra A1 = k[t, D]")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest D-degree tried by characteristic-element and image searches.
    #[arg(long, global = true, value_name = "INT")]
    pub bound_cap: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal-ordered form of an operator.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Apply an operator to a Laurent polynomial in t.
    Act {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Euler form sum t^i a_i(E) of an operator.
    Euler {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Characteristic elements f, e* and the invariant e*f of a subspace.
    Char { subspace: String },
    /// Membership in D(R, V), or in D(V, R) with --dual.
    Member {
        subspace: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        dual: bool,
    },
    /// Whether exp(ad p(t)) or exp(ad q(D)) fixes the ideal of the subspace.
    Stab {
        subspace: String,
        #[arg(
            long,
            value_name = "POLY",
            allow_hyphen_values = true,
            conflicts_with = "q",
            required_unless_present = "q"
        )]
        p: Option<String>,
        #[arg(long, value_name = "POLY", allow_hyphen_values = true)]
        q: Option<String>,
    },
    /// The subspace V' with sigma(D(R, V)) = D(R, V').
    Image {
        subspace: String,
        #[arg(long, value_name = "WORD")]
        auto: String,
    },
    /// Necessary conditions for H(V) ⊆ H(W).
    Compare { v: String, w: String },
    /// Replay the classification scenarios for n = 2..=nmax.
    VerifyPaper {
        #[arg(long, default_value_t = 8, value_name = "INT")]
        nmax: usize,
    },
    /// Compare the golden fixtures with freshly computed output.
    GoldenCheck {
        /// Fixture directory; defaults to the one shipped with the crate.
        dir: Option<PathBuf>,
        /// Rewrite the fixtures instead of comparing.
        #[arg(long)]
        bless: bool,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{code}: {0}", code = core_code(.0))]
    Core(#[from] weylkit::Error),
    #[error("IO_ERROR: {0}")]
    Io(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse(e) => e.code(),
            CliError::Core(e) => core_code(e),
            CliError::Io(_) => "IO_ERROR",
        }
    }
}

fn core_code(e: &weylkit::Error) -> &'static str {
    use weylkit::Error::*;
    match e {
        NonRegular(_) => "NON_REGULAR",
        Reducible(_) => "REDUCIBLE",
        SearchCapExceeded { .. } => "SEARCH_CAP_EXCEEDED",
        ProductNotInKD(_) => "PRODUCT_NOT_IN_KD",
        ThetaOnLaurent(_) => "THETA_ON_LAURENT",
        ExpAdDOnLaurent(_) => "EXP_AD_D_ON_LAURENT",
        NotTFixing => "NOT_T_FIXING",
        Unstable { .. } => "UNSTABLE",
        CertFailed(_) => "CERT_FAILED",
        ScenarioMismatch { .. } => "SCENARIO_MISMATCH",
        InvalidArgument(_) => "INVALID_ARGUMENT",
    }
}

fn config(cli: &Cli) -> SearchConfig {
    SearchConfig { degree_cap: cli.bound_cap, ..SearchConfig::default() }
}

fn count(n: usize) -> Value {
    Value::scalar(&rat(n as i64))
}

fn status(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

pub fn run(cli: &Cli) -> Result<ReportDocument, CliError> {
    let cfg = config(cli);
    let mut doc;
    match &cli.command {
        Command::Normalize { expr } => {
            doc = ReportDocument::new("normalize");
            doc.input("expr", expr).result("normal_form", Value::element(&parse_element(expr)?));
        }
        Command::Act { expr, poly } => {
            doc = ReportDocument::new("act");
            let d = parse_element(expr)?;
            let h = parse_laurent(poly)?;
            doc.input("expr", expr).input("poly", poly).result("result", Value::laurent(&d.act(&h)));
        }
        Command::Euler { expr } => {
            doc = ReportDocument::new("euler");
            doc.input("expr", expr).result("euler_form", Value::euler(&parse_element(expr)?));
        }
        Command::Char { subspace } => {
            doc = ReportDocument::new("char");
            let v = parse_pd(subspace)?;
            let pair = characteristic_pair_with(&v, &cfg)?;
            doc.input("subspace", subspace)
                .result("f", Value::euler(&pair.f))
                .result("e*", Value::euler(&pair.e_star))
                .result("ef", Value::poly(&pair.ef))
                .result("ef_scalar", Value::scalar(&pair.ef_scalar))
                .bound("degree_cap", cfg.cap_for(&v));
        }
        Command::Member { subspace, expr, dual } => {
            doc = ReportDocument::new("member");
            let v = parse_pd(subspace)?;
            let d = parse_element(expr)?;
            let inside = if *dual { dual_contains(&v, &d) } else { ideal_contains(&v, &d)? };
            doc.input("subspace", subspace)
                .input("expr", expr)
                .input("side", if *dual { "D(V,R)" } else { "D(R,V)" })
                .set_status(status(inside));
        }
        Command::Stab { subspace, p, q } => {
            doc = ReportDocument::new("stab");
            let v = parse_pd(subspace)?;
            doc.input("subspace", subspace);
            let fixed = match (p, q) {
                (Some(p), _) => {
                    doc.input("p", p);
                    stabilizes_exp(&v, &parse_t_poly(p)?)
                }
                (None, Some(q)) => {
                    doc.input("q", q);
                    stabilizes_exp_dual(&v, &parse_d_poly(q)?)
                }
                (None, None) => unreachable!("clap requires --p or --q"),
            };
            doc.set_status(status(fixed));
        }
        Command::Image { subspace, auto } => {
            doc = ReportDocument::new("image");
            let v = parse_pd(subspace)?;
            let word = parse_word(auto)?;
            let res = image_pd_subspace_with(&v, &word, &cfg)?;
            let cert = &res.certificate;
            doc.input("subspace", subspace)
                .input("auto", auto)
                .result("image", Value::subspace(&res.subspace))
                .result("forward_checked", count(cert.forward_checked))
                .result("backward_checked", count(cert.backward_checked))
                .result("source_codim", count(cert.source_codim))
                .result("image_codim", count(cert.image_codim));
            if let Some(ef) = &cert.image_ef {
                doc.result("image_ef", Value::poly(ef));
            }
            doc.bound("t_bound", cert.t_bound)
                .bound("d_bound", cert.d_bound)
                .bound("rounds", cert.rounds)
                .bound("degree_cap", cfg.cap_for(&v));
        }
        Command::Compare { v, w } => {
            doc = ReportDocument::new("compare");
            let (sv, sw) = (parse_pd(v)?, parse_pd(w)?);
            let report = inclusion_report_with(&sv, &sw, &cfg)?;
            doc.input("v", v).input("w", w);
            compare_results(&mut doc, &report);
            doc.bound("degree_cap", cfg.cap_for(&sv).max(cfg.cap_for(&sw)));
        }
        Command::VerifyPaper { nmax } => {
            doc = ReportDocument::new("verify-paper");
            doc.input("nmax", nmax);
            if *nmax < 2 {
                return Err(weylkit::Error::InvalidArgument(format!("--nmax must be at least 2, got {nmax}")).into());
            }
            let mut all_pass = true;
            for n in 2..=*nmax {
                match verify_main_proposition(n) {
                    Ok(trace) => {
                        for step in &trace.steps {
                            doc.result(format!("n={n}/{}", step.name), Value::text(&step.value));
                        }
                        doc.result(format!("n={n}/conclusion"), Value::text(&trace.conclusion));
                    }
                    Err(e @ weylkit::Error::ScenarioMismatch { .. }) => {
                        all_pass = false;
                        doc.result(format!("n={n}/mismatch"), Value::text(e.to_string()));
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            doc.set_status(if all_pass { "pass" } else { "fail" });
        }
        Command::GoldenCheck { dir, bless } => {
            doc = ReportDocument::new("golden-check");
            let dir = dir.clone().unwrap_or_else(golden::default_dir);
            doc.input("dir", dir.display());
            if *bless {
                golden::bless(&dir)?;
                doc.input("bless", true);
            } else {
                let outcome = golden::golden_check(&dir)?;
                for (file, mismatch) in &outcome.files {
                    let text = mismatch.as_ref().map_or_else(|| "match".to_string(), ToString::to_string);
                    doc.result(file.clone(), Value::text(text));
                }
                doc.set_status(if outcome.passed() { "pass" } else { "fail" });
            }
        }
    }
    Ok(doc)
}

fn compare_results(doc: &mut ReportDocument, r: &weylkit::stafford::InclusionReport) {
    doc.result("v", Value::subspace(&r.v)).result("w", Value::subspace(&r.w));
    for (i, (p, in_w)) in r.s_samples.iter().enumerate() {
        doc.result(format!("s_sample.{i}"), Value::poly(p)).result(format!("s_sample.{i}.in_S(W)"), Value::bool(*in_w));
    }
    let counterexample = r.s_counterexample.as_ref().map_or_else(|| Value::text("none"), Value::poly);
    doc.result("s_counterexample", counterexample)
        .result("s_inclusion", Value::bool(r.s_inclusion))
        .result("conductor_v", count(r.conductor_v))
        .result("conductor_w", count(r.conductor_w))
        .result("conductor_inclusion", Value::bool(r.conductor_inclusion))
        .result("ef_v", Value::poly(&r.ef_v))
        .result("ef_w", Value::poly(&r.ef_w))
        .result("ef_divisibility", Value::bool(r.ef_divisibility))
        .set_status(r.verdict.to_string());
}

/// Output text (JSON or plain) and exit code for parsed arguments.
/// Errors yield exit code 2; with `--json` they still produce a report.
pub fn execute(cli: &Cli) -> (String, String, i32) {
    match run(cli) {
        Ok(doc) => {
            let out = if cli.json { doc.to_json() } else { doc.to_text() };
            (out, String::new(), doc.exit_code())
        }
        Err(e) => {
            let diag = format!("error: {e}\n");
            let out = if cli.json {
                let mut doc = ReportDocument::new(command_name(&cli.command));
                doc.result("error_code", Value::text(e.code()))
                    .result("error", Value::text(e.to_string()))
                    .set_status("error");
                doc.to_json()
            } else {
                String::new()
            };
            (out, diag, 2)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Normalize { .. } => "normalize",
        Command::Act { .. } => "act",
        Command::Euler { .. } => "euler",
        Command::Char { .. } => "char",
        Command::Member { .. } => "member",
        Command::Stab { .. } => "stab",
        Command::Image { .. } => "image",
        Command::Compare { .. } => "compare",
        Command::VerifyPaper { .. } => "verify-paper",
        Command::GoldenCheck { .. } => "golden-check",
    }
}
