//! Command-line front end: classification, family enumeration, perfect
//! number generation, oracle validation, certificate verification, and
//! kernel benchmarks.
//!
//! Exit codes: 0 = success / verdict produced, 1 = inconclusive verdict or
//! failed re-verification, 2 = input error, 3 = budget exceeded.
//!
//! Stdout is byte-stable for fixed arguments; timings (bench) go to
//! stderr.

use clap::{Parser, Subcommand, ValueEnum};
use gapcert_core::certificate::FILE_EXTENSION;
use gapcert_core::engine::{generate_family, FamilyEntry};
use gapcert_core::factor::FactorBudget;
use gapcert_core::primality::{is_prime_u64, lucas_lehmer, PrimalityStatus};
use gapcert_core::sieve::{
    divisor_sum_segment, render_gap_table, render_summary, validate_paper_claims, SieveBudget,
};
use gapcert_core::{
    classify, ClassifyOptions, Error, ExclusionCertificate, GapVerdict, Natural,
    verify_certificate,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

const EXIT_OK: u8 = 0;
const EXIT_INCONCLUSIVE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "gapcert", version, about = "Exclusion certificates for distances between perfect numbers")]
struct Cli {
    /// Worker threads for the sieve and family enumeration
    /// (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output rendering.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable.
    Table,
    /// Machine-readable key=value records.
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether delta is excluded as a distance between two perfect
    /// numbers.
    Classify {
        /// Candidate distance (decimal, arbitrary size).
        delta: String,
        /// Write the exclusion certificate to this path.
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Enable Realized detection against the sieve oracle up to this
        /// bound.
        #[arg(long)]
        oracle_bound: Option<String>,
    },
    /// Enumerate the triangular family for s = 0..=s_max and certify every
    /// member whose screening prime is prime.
    Family {
        s_max: u64,
        /// Write one certificate per certified member into this directory.
        #[arg(long)]
        certs: Option<PathBuf>,
    },
    /// Run the divisor-sum sieve to the bound and validate every distance
    /// claim against it.
    Oracle {
        bound: String,
        /// Write the gap table to this path.
        #[arg(long)]
        export: Option<PathBuf>,
        /// Raise the sieve bound cap.
        #[arg(long)]
        max_bound: Option<u64>,
        /// Sieve segment length.
        #[arg(long)]
        segment_len: Option<u64>,
    },
    /// List even perfect numbers for Lucas-Lehmer prime exponents
    /// p <= p_max.
    Perfects { p_max: u64 },
    /// Replay a certificate file independently.
    Verify { path: PathBuf },
    /// Measure kernel throughput (timings on stderr).
    Bench {
        #[arg(value_enum)]
        kernel: Kernel,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kernel {
    Sieve,
    LucasLehmer,
}

struct CommandOutcome {
    exit_code: u8,
    payload: String,
}

impl CommandOutcome {
    fn ok(payload: String) -> Self {
        CommandOutcome {
            exit_code: EXIT_OK,
            payload,
        }
    }

    fn with_code(exit_code: u8, payload: String) -> Self {
        CommandOutcome { exit_code, payload }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // ignore failure when a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let outcome = run(&cli);
    print!("{}", outcome.payload);
    ExitCode::from(outcome.exit_code)
}

fn factor_budget_from_env() -> FactorBudget {
    let mut budget = FactorBudget::default();
    if let Ok(value) = std::env::var("GAPCERT_FACTOR_BUDGET") {
        if let Ok(iterations) = value.parse::<u64>() {
            budget.rho_iterations = iterations;
        }
    }
    budget
}

fn run(cli: &Cli) -> CommandOutcome {
    match &cli.command {
        Command::Classify {
            delta,
            cert,
            oracle_bound,
        } => cmd_classify(delta, cert.as_deref(), oracle_bound.as_deref(), cli.format),
        Command::Family { s_max, certs } => cmd_family(*s_max, certs.as_deref(), cli.format),
        Command::Oracle {
            bound,
            export,
            max_bound,
            segment_len,
        } => cmd_oracle(bound, export.as_deref(), *max_bound, *segment_len, cli.format),
        Command::Perfects { p_max } => cmd_perfects(*p_max),
        Command::Verify { path } => cmd_verify(path),
        Command::Bench { kernel } => cmd_bench(*kernel),
    }
}

fn parse_natural(text: &str) -> Result<Natural, CommandOutcome> {
    text.parse::<Natural>().map_err(|_| {
        CommandOutcome::with_code(EXIT_INPUT, format!("error: `{text}` is not a positive integer\n"))
    })
}

fn parse_bound(text: &str, max: u64) -> Result<u64, CommandOutcome> {
    let value = parse_natural(text)?;
    match gapcert_core::arith::to_u64(&value) {
        Some(v) if v <= max => Ok(v),
        _ => Err(CommandOutcome::with_code(
            EXIT_BUDGET,
            format!("error: bound {value} exceeds the budget {max}\n"),
        )),
    }
}

fn cmd_classify(
    delta_text: &str,
    cert_path: Option<&Path>,
    oracle_bound: Option<&str>,
    format: Format,
) -> CommandOutcome {
    let delta = match parse_natural(delta_text) {
        Ok(d) => d,
        Err(e) => return e,
    };
    let mut opts = ClassifyOptions {
        budget: factor_budget_from_env(),
        ..ClassifyOptions::default()
    };
    if let Some(text) = oracle_bound {
        match parse_bound(text, opts.sieve_budget.max_bound) {
            Ok(bound) => opts.oracle_bound = Some(bound),
            Err(e) => return e,
        }
    }

    let verdict = classify(&delta, &opts);
    let mut out = String::new();
    let exit = match &verdict {
        GapVerdict::Excluded(cert) => {
            render_excluded(&mut out, cert, format);
            if let Some(path) = cert_path {
                if let Err(e) = std::fs::write(path, cert.to_text()) {
                    return CommandOutcome::with_code(
                        EXIT_INPUT,
                        format!("error: cannot write certificate: {e}\n"),
                    );
                }
                match format {
                    Format::Table => out.push_str(&format!(
                        "certificate written to {}\n",
                        path.display()
                    )),
                    Format::Records => {
                        out.push_str(&format!("certificate={}\n", path.display()))
                    }
                }
            }
            EXIT_OK
        }
        GapVerdict::Realized { smaller, larger } => {
            match format {
                Format::Table => out.push_str(&format!(
                    "delta {delta}: REALIZED by the pair ({smaller}, {larger})\n"
                )),
                Format::Records => out.push_str(&format!(
                    "delta={delta}\nverdict=realized\nsmaller={smaller}\nlarger={larger}\n"
                )),
            }
            EXIT_OK
        }
        GapVerdict::Inconclusive { reasons } => {
            match format {
                Format::Table => {
                    out.push_str(&format!("delta {delta}: INCONCLUSIVE\n"));
                    for r in reasons {
                        out.push_str(&format!("  {}: {}\n", r.rule, r.reason));
                    }
                }
                Format::Records => {
                    out.push_str(&format!("delta={delta}\nverdict=inconclusive\n"));
                    for r in reasons {
                        out.push_str(&format!("reason rule={} detail={}\n", r.rule, r.reason));
                    }
                }
            }
            EXIT_INCONCLUSIVE
        }
    };
    CommandOutcome::with_code(exit, out)
}

fn render_excluded(out: &mut String, cert: &ExclusionCertificate, format: Format) {
    match format {
        Format::Table => {
            out.push_str(&format!(
                "delta {}: EXCLUDED ({})\n",
                cert.delta,
                cert.rule.label()
            ));
            if cert.extended {
                out.push_str("  extended beyond the worked example\n");
            }
            if let Some(params) = &cert.params {
                out.push_str(&format!(
                    "  family: s={} m={} b={} l={}\n",
                    params.s, params.m, params.b, params.l
                ));
            }
            if let (Some(l), Some(v)) = (&cert.l_value, &cert.l_primality) {
                out.push_str(&format!(
                    "  l = {l} ({})\n",
                    if v.is_prime() { "prime" } else { "composite" }
                ));
            }
            if !cert.candidate_exclusions.is_empty() {
                out.push_str(&format!(
                    "  candidates: {}\n",
                    cert.candidate_exclusions.len()
                ));
                for c in &cert.candidate_exclusions {
                    let evidence = c
                        .evidence
                        .iter()
                        .map(|e| e.to_string())
                        .collect::<Vec<_>>()
                        .join(",");
                    out.push_str(&format!(
                        "    p={}: {}, evidence {}\n",
                        c.p,
                        c.reason.label(),
                        evidence
                    ));
                }
            }
            out.push_str(&format!(
                "  trail: {} statements verified\n",
                cert.check_trail.len()
            ));
        }
        Format::Records => {
            out.push_str(&format!("delta={}\nverdict=excluded\n", cert.delta));
            out.push_str(&format!("rule={}\n", cert.rule.label()));
            out.push_str(&format!("extended={}\n", cert.extended));
            if let Some(params) = &cert.params {
                out.push_str(&format!(
                    "family s={} m={} b={} l={} delta={}\n",
                    params.s, params.m, params.b, params.l, params.delta
                ));
            }
            if let Some(l) = &cert.l_value {
                out.push_str(&format!("l={l}\n"));
            }
            for c in &cert.candidate_exclusions {
                let evidence = c
                    .evidence
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                out.push_str(&format!(
                    "candidate p={} reason={} evidence={}\n",
                    c.p,
                    c.reason.label(),
                    evidence
                ));
            }
            out.push_str(&format!("trail_len={}\n", cert.check_trail.len()));
        }
    }
}

fn cmd_family(s_max: u64, certs_dir: Option<&Path>, format: Format) -> CommandOutcome {
    let budget = factor_budget_from_env();
    let entries = generate_family(s_max, &budget);
    if let Some(dir) = certs_dir {
        if let Err(e) = std::fs::create_dir_all(dir) {
            return CommandOutcome::with_code(
                EXIT_INPUT,
                format!("error: cannot create {}: {e}\n", dir.display()),
            );
        }
        for entry in &entries {
            if let Some(cert) = &entry.certificate {
                let path = dir.join(format!("delta-{}.{}", cert.delta, FILE_EXTENSION));
                if let Err(e) = std::fs::write(&path, cert.to_text()) {
                    return CommandOutcome::with_code(
                        EXIT_INPUT,
                        format!("error: cannot write {}: {e}\n", path.display()),
                    );
                }
            }
        }
    }

    let mut out = String::new();
    let mut by_entry: std::collections::BTreeMap<u64, &FamilyEntry> = Default::default();
    for e in &entries {
        by_entry.insert(
            gapcert_core::arith::to_u64(&e.params.s).expect("s fits u64 for enumerated range"),
            e,
        );
    }
    let header = match format {
        Format::Table => "s      class  l            l-status   delta                certified\n",
        Format::Records => "",
    };
    out.push_str(header);
    let mut certified_a = 0u64;
    let mut certified_b = 0u64;
    for s in 0..=s_max {
        match by_entry.get(&s) {
            Some(e) => {
                let class = e.class.class.letter();
                let status = if e.l_verdict.is_prime() {
                    "prime"
                } else {
                    "composite"
                };
                let certified = e.certified();
                if certified {
                    match class {
                        'A' => certified_a += 1,
                        _ => certified_b += 1,
                    }
                }
                match format {
                    Format::Table => out.push_str(&format!(
                        "{:<6} {:<6} {:<12} {:<10} {:<20} {}\n",
                        s,
                        class,
                        e.params.l,
                        status,
                        e.params.delta,
                        if certified { "yes" } else { "no" }
                    )),
                    Format::Records => out.push_str(&format!(
                        "member s={} class={} l={} l_status={} delta={} certified={}\n",
                        s, class, e.params.l, status, e.params.delta, certified
                    )),
                }
            }
            None => match format {
                Format::Table => out.push_str(&format!(
                    "{:<6} -      -            skipped    -                    -\n",
                    s
                )),
                Format::Records => out.push_str(&format!("member s={s} skipped=true\n")),
            },
        }
    }
    match format {
        Format::Table => out.push_str(&format!(
            "certified: {} (class A: {certified_a}, class B: {certified_b})\n",
            certified_a + certified_b
        )),
        Format::Records => out.push_str(&format!(
            "certified_total={} certified_class_a={certified_a} certified_class_b={certified_b}\n",
            certified_a + certified_b
        )),
    }
    CommandOutcome::ok(out)
}

fn cmd_oracle(
    bound_text: &str,
    export: Option<&Path>,
    max_bound: Option<u64>,
    segment_len: Option<u64>,
    format: Format,
) -> CommandOutcome {
    let mut budget = SieveBudget::default();
    if let Some(max) = max_bound {
        budget.max_bound = max;
    }
    if let Some(seg) = segment_len {
        budget.segment_len = seg.max(1);
    }
    let bound = match parse_bound(bound_text, budget.max_bound) {
        Ok(b) => b,
        Err(e) => return e,
    };
    let report = match validate_paper_claims(bound, &budget) {
        Ok(r) => r,
        Err(Error::BudgetExceeded { bound, max }) => {
            return CommandOutcome::with_code(
                EXIT_BUDGET,
                format!("error: bound {bound} exceeds the budget {max}\n"),
            )
        }
        Err(e) => return CommandOutcome::with_code(EXIT_INPUT, format!("error: {e}\n")),
    };
    if let Some(path) = export {
        if let Err(e) = std::fs::write(path, render_gap_table(&report)) {
            return CommandOutcome::with_code(
                EXIT_INPUT,
                format!("error: cannot write {}: {e}\n", path.display()),
            );
        }
    }
    let all_hold = report.claims.iter().all(|c| c.holds);
    let mut out = render_summary(&report);
    if format == Format::Table {
        out.push_str(if all_hold {
            "all claims hold\n"
        } else {
            "CLAIM FAILURES PRESENT\n"
        });
    }
    CommandOutcome::with_code(if all_hold { EXIT_OK } else { EXIT_INCONCLUSIVE }, out)
}

fn cmd_perfects(p_max: u64) -> CommandOutcome {
    let mut out = String::new();
    for p in 2..=p_max {
        if !is_prime_u64(p).is_prime() {
            continue;
        }
        let verdict = lucas_lehmer(p).expect("prime exponent");
        if verdict.status == PrimalityStatus::Prime {
            let n = gapcert_core::perfect::even_perfect(p).expect("verified exponent");
            out.push_str(&format!("p={p} perfect={n}\n"));
        }
    }
    CommandOutcome::ok(out)
}

fn cmd_verify(path: &Path) -> CommandOutcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            return CommandOutcome::with_code(
                EXIT_INPUT,
                format!("error: cannot read {}: {e}\n", path.display()),
            )
        }
    };
    let cert = match ExclusionCertificate::parse(&text) {
        Ok(c) => c,
        Err(e) => return CommandOutcome::with_code(EXIT_INPUT, format!("error: {e}\n")),
    };
    let report = verify_certificate(&cert);
    match report.failure {
        None => CommandOutcome::ok(format!(
            "ok: delta {} excluded by {} ({} statements re-verified)\n",
            cert.delta,
            cert.rule.label(),
            report.statements_checked
        )),
        Some(failure) => CommandOutcome::with_code(
            EXIT_INCONCLUSIVE,
            format!(
                "FAILED: {}\n  statement: {}\n  reason: {}\n",
                path.display(),
                failure.statement,
                failure.reason
            ),
        ),
    }
}

fn cmd_bench(kernel: Kernel) -> CommandOutcome {
    match kernel {
        Kernel::Sieve => {
            let bound = 20_000_000u64;
            let start = Instant::now();
            let sigma = divisor_sum_segment(1, bound + 1);
            let perfects = (1..=bound)
                .filter(|&n| sigma[(n - 1) as usize] == 2 * n)
                .count();
            let elapsed = start.elapsed();
            eprintln!(
                "sieve: {bound} values in {:.3}s ({:.1} M/s)",
                elapsed.as_secs_f64(),
                bound as f64 / elapsed.as_secs_f64() / 1e6
            );
            CommandOutcome::ok(format!("kernel=sieve bound={bound} perfects={perfects}\n"))
        }
        Kernel::LucasLehmer => {
            let exponents = [521u64, 607, 1279, 2203, 2281];
            let start = Instant::now();
            let mut primes = 0usize;
            for p in exponents {
                if lucas_lehmer(p).expect("prime exponent").status == PrimalityStatus::Prime {
                    primes += 1;
                }
            }
            let elapsed = start.elapsed();
            eprintln!(
                "lucas-lehmer: {} exponents in {:.3}s ({:.1} ms/test)",
                exponents.len(),
                elapsed.as_secs_f64(),
                elapsed.as_secs_f64() * 1e3 / exponents.len() as f64
            );
            CommandOutcome::ok(format!(
                "kernel=lucas-lehmer exponents={} mersenne_primes={primes}\n",
                exponents.len()
            ))
        }
    }
}
