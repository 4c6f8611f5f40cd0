//! `kshift` — exact calculator for permutation-character certificates,
//! character tables and K-theory formulas of Bernoulli-type crossed
//! products. Every verb re-verifies the invariants behind its result
//! and reports the verdicts alongside the output.

mod expr;

use clap::{Parser, Subcommand, ValueEnum};
use kshift::abgrp::{AbGroup, Saturation};
use kshift::chartab::{
    absorption_certificate, character_table, verify_absorption_dimension,
    verify_absorption_values,
};
use kshift::error::{Error, Result};
use kshift::group::{build_group_with_budget, GroupSpec, PermGroup, DEFAULT_ELEMENT_BUDGET};
use kshift::gset::{build_gset, GSet, GSetSpec};
use kshift::ktheory::{
    bernoulli_k, flip_e, flip_f, kunneth, localize_k, rokhlin_excluded, KPair, ZMode,
};
use kshift::repring::{
    alpha_certificate, annihilating_polynomial, beta_certificate, perm_character,
    perm_character_bruteforce_with_budget, verify_alpha, verify_beta, DEFAULT_ENUM_BUDGET,
};
use kshift::supernat::Supernatural;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "kshift", version, about, max_term_width = 100)]
struct Cli {
    /// Output format: human-readable text or one JSON object
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Exact character table of a finite permutation group
    #[command(name = "char-table")]
    CharTable {
        /// Group spec, e.g. "symmetric 3" or "perm 4 {(0 1 2), (0 1)(2 3)}"
        #[arg(long)]
        group: String,
    },
    /// Character of the action on functions Z -> {1..k}
    #[command(name = "perm-char")]
    PermChar {
        #[arg(long)]
        group: String,
        /// G-set spec, e.g. "regular", "trivial 2", "coset {(0 1)}"
        #[arg(long)]
        gset: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        /// Also run the brute-force enumeration and compare
        #[arg(long)]
        oracle: bool,
    },
    /// Divisibility certificates chi^r = k·p(chi) and chi·q(chi) = k^l
    #[command(name = "certificate")]
    Certificate {
        #[arg(long)]
        group: String,
        #[arg(long)]
        gset: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        #[arg(long)]
        oracle: bool,
    },
    /// Nonnegative decomposition witnessing chi^r = p·chi_W
    #[command(name = "absorption")]
    Absorption {
        #[arg(long)]
        group: String,
        #[arg(long)]
        gset: String,
        /// A prime
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        p: u64,
    },
    /// K-theory of the Bernoulli crossed product
    #[command(name = "bernoulli-k")]
    BernoulliK {
        #[arg(long)]
        group: String,
        /// Supernatural number, e.g. "2^inf", "6^inf", "12"
        #[arg(long)]
        n: String,
        /// Finite G-set; omitted means the infinitely-repeated case
        #[arg(long)]
        gset: Option<String>,
    },
    /// Flip crossed product of the Kirchberg algebra with K = (Q_m/Z, Q_n/Z)
    #[command(name = "flip-F", alias = "flip-f")]
    FlipF {
        #[arg(long)]
        m: String,
        #[arg(long)]
        n: String,
    },
    /// Flip crossed product of the quasidiagonal algebra with K = (Q_n, Q_m/Z)
    #[command(name = "flip-E", alias = "flip-e")]
    FlipE {
        #[arg(long)]
        n: String,
        #[arg(long)]
        m: String,
    },
    /// Rank comparison excluding the Rokhlin property
    #[command(name = "rokhlin")]
    Rokhlin {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: String,
    },
    /// Graded Künneth formula on two K-pairs
    #[command(name = "kunneth")]
    Kunneth {
        #[arg(long, default_value = "0")]
        a0: String,
        #[arg(long, default_value = "0")]
        a1: String,
        #[arg(long, default_value = "0")]
        b0: String,
        #[arg(long, default_value = "0")]
        b1: String,
    },
    /// Componentwise localization of a K-pair
    #[command(name = "localize")]
    Localize {
        #[arg(long, default_value = "0")]
        k0: String,
        #[arg(long, default_value = "0")]
        k1: String,
        #[arg(long)]
        n: String,
        /// Saturate a finite-type n instead of rejecting it
        #[arg(long)]
        saturate: bool,
    },
    /// Evaluate an abelian-group expression: sum/tensor/tor/localize
    #[command(name = "abgrp-eval")]
    AbgrpEval {
        /// e.g. "tensor(Q[2^inf], Q[6^inf]/Z)"
        expr: String,
    },
}

/// Everything a verb reports: echoed inputs, ordered result fields,
/// named verification verdicts, and warnings.
struct Report {
    verb: &'static str,
    inputs: Vec<(&'static str, String)>,
    results: Vec<(&'static str, String)>,
    checks: Vec<(&'static str, bool)>,
    warnings: Vec<String>,
}

impl Report {
    fn new(verb: &'static str) -> Self {
        Report { verb, inputs: vec![], results: vec![], checks: vec![], warnings: vec![] }
    }

    fn input(&mut self, key: &'static str, value: impl ToString) {
        self.inputs.push((key, value.to_string()));
    }

    fn result(&mut self, key: &'static str, value: impl ToString) {
        self.results.push((key, value.to_string()));
    }

    fn check(&mut self, name: &'static str, passed: bool) {
        self.checks.push((name, passed));
    }

    fn all_passed(&self) -> bool {
        self.checks.iter().all(|&(_, ok)| ok)
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut out = String::new();
                for (key, value) in &self.results {
                    out.push_str(&format!("{key} = {value}\n"));
                }
                for warning in &self.warnings {
                    out.push_str(&format!("warning: {warning}\n"));
                }
                for (name, passed) in &self.checks {
                    let verdict = if *passed { "passed" } else { "FAILED" };
                    out.push_str(&format!("check {name}: {verdict}\n"));
                }
                out
            }
            Format::Structured => {
                let inputs: serde_json::Map<String, serde_json::Value> = self
                    .inputs
                    .iter()
                    .map(|(k, v)| (k.to_string(), serde_json::Value::String(v.clone())))
                    .collect();
                let results: serde_json::Map<String, serde_json::Value> = self
                    .results
                    .iter()
                    .map(|(k, v)| (k.to_string(), serde_json::Value::String(v.clone())))
                    .collect();
                let checks: Vec<serde_json::Value> = self
                    .checks
                    .iter()
                    .map(|(name, passed)| {
                        serde_json::json!({ "name": name, "passed": passed })
                    })
                    .collect();
                let obj = serde_json::json!({
                    "verb": self.verb,
                    "inputs_echo": inputs,
                    "result": results,
                    "checks": checks,
                    "warnings": self.warnings,
                });
                format!("{obj}\n")
            }
        }
    }
}

/// Writes to stdout, swallowing broken-pipe errors so that piping into
/// `head` and friends does not panic.
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn env_budget<T: std::str::FromStr>(name: &str, default: T) -> Result<T> {
    match std::env::var(name) {
        Ok(text) => text
            .parse()
            .map_err(|_| Error::Parse(format!("environment variable {name}={text:?}"))),
        Err(_) => Ok(default),
    }
}

fn load_group(spec_text: &str) -> Result<Arc<PermGroup>> {
    let budget = env_budget("KSHIFT_ELEMENT_BUDGET", DEFAULT_ELEMENT_BUDGET)?;
    let spec = GroupSpec::parse(spec_text)?;
    Ok(Arc::new(build_group_with_budget(&spec, budget)?))
}

fn load_gset(group: &Arc<PermGroup>, spec_text: &str) -> Result<GSet> {
    build_gset(group, &GSetSpec::parse(spec_text)?)
}

fn kpair_report(report: &mut Report, pair: &KPair) {
    report.result("K0", &pair.k0);
    report.result("K1", &pair.k1);
    let roundtrip = AbGroup::parse(&pair.k0.to_string()).map(|g| g == pair.k0).unwrap_or(false)
        && AbGroup::parse(&pair.k1.to_string()).map(|g| g == pair.k1).unwrap_or(false);
    report.check("display_roundtrip", roundtrip);
}

fn run(command: Command) -> Result<Report> {
    match command {
        Command::CharTable { group } => {
            let mut report = Report::new("char-table");
            report.input("group", &group);
            let g = load_group(&group)?;
            let table = character_table(&g)?;
            report.result("group_order", g.order());
            report.result(
                "class_sizes",
                format!(
                    "[{}]",
                    g.classes()
                        .iter()
                        .map(|c| c.size().to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            );
            report.result("exponent", table.exponent());
            report.result(
                "degrees",
                format!(
                    "[{}]",
                    table.degrees().iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
                ),
            );
            for (i, row) in table.rows().iter().enumerate() {
                let values: Vec<String> = row.values.iter().map(|v| v.to_string()).collect();
                report.results.push((
                    Box::leak(format!("chi_{i}").into_boxed_str()),
                    format!("({})", values.join(", ")),
                ));
            }
            if table.exponent() > 2 {
                report.warnings.push(format!(
                    "w denotes a primitive root of unity of order {}",
                    table.exponent()
                ));
            }
            report.check("degree_square_sum", table.verify_degree_sum());
            report.check("row_orthogonality", table.verify_row_orthogonality());
            report.check("column_orthogonality", table.verify_column_orthogonality());
            Ok(report)
        }
        Command::PermChar { group, gset, k, oracle } => {
            let mut report = Report::new("perm-char");
            report.input("group", &group);
            report.input("gset", &gset);
            report.input("k", k);
            let g = load_group(&group)?;
            let z = load_gset(&g, &gset)?;
            let chi = perm_character(&z, k);
            report.result("values", &chi);
            report.result("gset_size", z.size());
            let expected = num_bigint::BigInt::from(k).pow(z.size() as u32);
            report.check("identity_dimension", *chi.value_at_identity() == expected);
            if oracle {
                let budget = env_budget("KSHIFT_ENUM_BUDGET", DEFAULT_ENUM_BUDGET)?;
                let slow = perm_character_bruteforce_with_budget(&z, k, budget)?;
                report.check("oracle_agreement", chi == slow);
            }
            Ok(report)
        }
        Command::Certificate { group, gset, k, oracle } => {
            let mut report = Report::new("certificate");
            report.input("group", &group);
            report.input("gset", &gset);
            report.input("k", k);
            let g = load_group(&group)?;
            let z = load_gset(&g, &gset)?;
            let alpha = alpha_certificate(&z, k)?;
            let beta = beta_certificate(&z, k)?;
            report.result("r", alpha.r);
            report.result("p", &alpha.p);
            report.result("q", &beta.q);
            report.result("l", beta.l);
            if alpha.degenerate {
                report.result("degenerate", "true (k = 1)");
            }
            let chi = perm_character(&z, k);
            let annihilator = annihilating_polynomial(&chi);
            report.check("alpha_identity", verify_alpha(&z, &alpha));
            report.check("beta_identity", verify_beta(&z, &beta));
            report.check(
                "annihilation",
                annihilator.eval_class_function(&chi).is_zero(),
            );
            if oracle {
                let budget = env_budget("KSHIFT_ENUM_BUDGET", DEFAULT_ENUM_BUDGET)?;
                let slow = perm_character_bruteforce_with_budget(&z, k, budget)?;
                report.check("oracle_agreement", chi == slow);
            }
            Ok(report)
        }
        Command::Absorption { group, gset, p } => {
            let mut report = Report::new("absorption");
            report.input("group", &group);
            report.input("gset", &gset);
            report.input("p", p);
            let g = load_group(&group)?;
            let z = load_gset(&g, &gset)?;
            let cert = absorption_certificate(&z, p)?;
            report.result("r", cert.r);
            report.result(
                "multiplicities",
                format!(
                    "({})",
                    cert.w_alpha
                        .multiplicities()
                        .iter()
                        .map(|m| m.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            );
            report.result("dimension", cert.w_alpha.dimension());
            report.check("nonnegative_multiplicities", cert.w_alpha.is_genuine());
            report.check("absorption_identity", verify_absorption_values(&z, &cert));
            report.check("dimension_identity", verify_absorption_dimension(&z, &cert));
            Ok(report)
        }
        Command::BernoulliK { group, n, gset } => {
            let mut report = Report::new("bernoulli-k");
            report.input("group", &group);
            report.input("n", &n);
            let g = load_group(&group)?;
            let n = Supernatural::parse(&n)?;
            let pair = match &gset {
                Some(spec) => {
                    report.input("gset", spec);
                    let z = load_gset(&g, spec)?;
                    bernoulli_k(&g, &n, ZMode::Finite(&z))?
                }
                None => bernoulli_k(&g, &n, ZMode::Infinite)?,
            };
            report.result("class_count", g.class_count());
            kpair_report(&mut report, &pair);
            report.check("k1_zero", pair.k1.is_zero());
            report.check(
                "k0_rank_equals_class_count",
                pair.k0.summands().len() == g.class_count(),
            );
            Ok(report)
        }
        Command::FlipF { m, n } => {
            let mut report = Report::new("flip-F");
            report.input("m", &m);
            report.input("n", &n);
            let m = Supernatural::parse(&m)?;
            let n = Supernatural::parse(&n)?;
            let pair = flip_f(&m, &n)?;
            report.result("gcd", m.gcd(&n));
            kpair_report(&mut report, &pair);
            Ok(report)
        }
        Command::FlipE { n, m } => {
            let mut report = Report::new("flip-E");
            report.input("n", &n);
            report.input("m", &m);
            let n = Supernatural::parse(&n)?;
            let m = Supernatural::parse(&m)?;
            let out = flip_e(&n, &m)?;
            report.result("m_divides_n", out.divides_hypothesis);
            if !out.divides_hypothesis {
                report
                    .warnings
                    .push(format!("hypothesis m | n fails for m = {m}, n = {n}"));
            }
            kpair_report(&mut report, &out.pair);
            Ok(report)
        }
        Command::Rokhlin { group, n } => {
            let mut report = Report::new("rokhlin");
            report.input("group", &group);
            report.input("n", &n);
            let g = load_group(&group)?;
            let n = Supernatural::parse(&n)?;
            let rep = rokhlin_excluded(&g, &n)?;
            report.result("excluded", rep.excluded);
            report.result("rokhlin_k0", &rep.lhs);
            report.result("crossed_product_k0", &rep.rhs);
            report.check("rank_comparison_consistent", rep.excluded == (rep.lhs != rep.rhs));
            Ok(report)
        }
        Command::Kunneth { a0, a1, b0, b1 } => {
            let mut report = Report::new("kunneth");
            report.input("a0", &a0);
            report.input("a1", &a1);
            report.input("b0", &b0);
            report.input("b1", &b1);
            let a = KPair::new(AbGroup::parse(&a0)?, AbGroup::parse(&a1)?, "A");
            let b = KPair::new(AbGroup::parse(&b0)?, AbGroup::parse(&b1)?, "B");
            let out = kunneth(&a, &b);
            report.check("commutes", out == kunneth(&b, &a));
            kpair_report(&mut report, &out);
            Ok(report)
        }
        Command::Localize { k0, k1, n, saturate } => {
            let mut report = Report::new("localize");
            report.input("k0", &k0);
            report.input("k1", &k1);
            report.input("n", &n);
            let pair = KPair::new(AbGroup::parse(&k0)?, AbGroup::parse(&k1)?, "input");
            let n = Supernatural::parse(&n)?;
            let mode = if saturate { Saturation::Saturate } else { Saturation::Strict };
            let out = localize_k(&pair, &n, mode)?;
            report.check("idempotent", localize_k(&out, &n, mode)? == out);
            kpair_report(&mut report, &out);
            Ok(report)
        }
        Command::AbgrpEval { expr: text } => {
            let mut report = Report::new("abgrp-eval");
            report.input("expr", &text);
            let value = expr::eval(&text)?;
            report.result("result", &value);
            let roundtrip =
                AbGroup::parse(&value.to_string()).map(|g| g == value).unwrap_or(false);
            report.check("display_roundtrip", roundtrip);
            Ok(report)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            emit(&report.render(cli.format));
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.format == Format::Structured {
                let obj = serde_json::json!({
                    "error": { "name": e.code(), "message": e.to_string() },
                });
                emit(&format!("{obj}\n"));
            }
            eprintln!("error[{}]: {}", e.code(), e);
            ExitCode::from(if e.is_parse() { 2 } else { 1 })
        }
    }
}
