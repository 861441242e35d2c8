//! Command-line surface: spectrum extraction, BCH verification, leakage
//! sweeps, Pauli expansion, and the randomized ontology check suite.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use clap::{Parser, Subcommand, ValueEnum};
use ontospin_core::bch::{
    exchange_exponential_identity_shifted, verify_factorized_form, verify_terminating_bch_with,
    BchReport, TerminatingOptions,
};
use ontospin_core::bitspace::{SpinConfig, MAX_SPINS};
use ontospin_core::emit;
use ontospin_core::ontology::leakage_sweep;
use ontospin_core::pauli::{dense_to_pauli, exchange_as_pauli, PauliSum};
use ontospin_core::permops::{is_ontological, GeneralizedPermutation};
use ontospin_core::registry::{extraction_method, leakage_generator, EXTRACTION_METHOD_NAMES};
use ontospin_core::spectral::{
    closed_form_three_spin_hamiltonian, multiplicities, permutation_spectrum,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::path::PathBuf;
use std::process::ExitCode;

/// Max-norm bound for the internal cross-check between extraction routes.
const CROSS_CHECK_TOL: f64 = 1e-8;

/// Largest dimension for the implicit dual-route cross-check (n = 8 spins).
const CROSS_CHECK_MAX_DIM: usize = 256;

/// A BCH identity counts as verified below this max-norm difference.
const BCH_PASS_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(
    name = "ontospin",
    version,
    about = "Deterministic bit-permutation dynamics and their exact qubit Hamiltonians"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Output format (env: ONTOSPIN_FORMAT)
    #[arg(long, global = true, value_enum, env = "ONTOSPIN_FORMAT", default_value_t = Format::Text)]
    format: Format,

    /// Write the report to a file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Eigenvalues, multiplicities, and cycle type of an exchange chain
    Spectrum {
        /// Exchange chain as operator product, e.g. "12,23" for P12·P23
        /// (rightmost acts first); empty for the identity
        #[arg(long, default_value = "")]
        chain: String,
        /// Number of spins
        #[arg(long)]
        n: usize,
        /// Timescale T
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Extraction method: cycle-dft or dense-log
        #[arg(long, default_value = "cycle-dft")]
        method: String,
    },
    /// Verify the exchange-exponential, terminating, and factorized identities
    BchVerify {
        /// Conjugate the couplings in the terminating exponent (breaks it)
        #[arg(long)]
        corrupt_c: bool,
        /// Add this many full 2π turns to both left-hand exponents
        #[arg(long, default_value_t = 0)]
        shift_2pi: u32,
    },
    /// Leakage of perturbed evolution from basis sources
    Leakage {
        /// Generator: exchange or hamiltonian
        #[arg(long, default_value = "exchange")]
        gen: String,
        /// Comma-separated perturbation strengths, e.g. "1e-3,1e-2"
        #[arg(long)]
        eps: String,
        /// Comma-separated source configurations, e.g. "01" or "↑↓↑,↓↑↑"
        #[arg(long)]
        source: String,
        /// Exchange pair for the exchange generator
        #[arg(long, default_value = "1,2")]
        pair: String,
        /// Timescale T for the hamiltonian generator
        #[arg(long, default_value_t = 1.0)]
        t: f64,
    },
    /// Pauli-string expansion of an operator
    PauliExpand {
        /// Expand the exchange P_ij, e.g. --exchange 1,2
        #[arg(long)]
        exchange: Option<String>,
        /// Expand an exchange chain product, e.g. --chain 12,23
        #[arg(long)]
        chain: Option<String>,
        /// Expand the closed-form three-spin Hamiltonian
        #[arg(long)]
        hamiltonian: bool,
        /// Expand the zero operator (empty sum)
        #[arg(long)]
        zero: bool,
        /// Number of spins (not needed for --hamiltonian)
        #[arg(long)]
        n: Option<usize>,
        /// Timescale T for --hamiltonian
        #[arg(long, default_value_t = 1.0)]
        t: f64,
    },
    /// Randomized checks: exchange products stay basis-preserving and the
    /// two extraction routes agree
    OntologyCheck {
        /// Comma-separated spin counts to sample from
        #[arg(long, default_value = "2,3,4")]
        n: String,
        /// Number of random exchange products
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// RNG seed
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Longest sampled exchange chain
        #[arg(long, default_value_t = 10)]
        max_chain: usize,
    },
}

enum CliError {
    Usage(String),
    Verification(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Verification(_) => 1,
            CliError::Io(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Verification(m) | CliError::Io(m) => m,
        }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ontospin: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let report = match &cli.command {
        Cmd::Spectrum {
            chain,
            n,
            t,
            method,
        } => cmd_spectrum(chain, *n, *t, method, cli.format)?,
        Cmd::BchVerify {
            corrupt_c,
            shift_2pi,
        } => cmd_bch_verify(*corrupt_c, *shift_2pi, cli.format)?,
        Cmd::Leakage {
            gen,
            eps,
            source,
            pair,
            t,
        } => cmd_leakage(gen, eps, source, pair, *t, cli.format)?,
        Cmd::PauliExpand {
            exchange,
            chain,
            hamiltonian,
            zero,
            n,
            t,
        } => cmd_pauli_expand(
            exchange.as_deref(),
            chain.as_deref(),
            *hamiltonian,
            *zero,
            *n,
            *t,
            cli.format,
        )?,
        Cmd::OntologyCheck {
            n,
            samples,
            seed,
            max_chain,
        } => cmd_ontology_check(n, *samples, *seed, *max_chain, cli.format)?,
    };
    write_output(cli.output.as_deref(), &report)
}

fn write_output(path: Option<&std::path::Path>, report: &str) -> Result<(), CliError> {
    let mut body = report.to_string();
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match path {
        Some(p) => std::fs::write(p, body).map_err(|e| CliError::Io(e.to_string())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

/// "12,23" → [(1,2), (2,3)]; accepts "1:2" for spin labels past 9.
fn parse_chain(spec: &str, n_spins: usize) -> Result<Vec<(usize, usize)>, CliError> {
    if spec.is_empty() {
        return Ok(Vec::new());
    }
    let mut pairs = Vec::new();
    for token in spec.split(',') {
        let pair = if let Some((a, b)) = token.split_once(':') {
            let i = a.trim().parse::<usize>().map_err(usage)?;
            let j = b.trim().parse::<usize>().map_err(usage)?;
            (i, j)
        } else {
            let digits: Vec<char> = token.trim().chars().collect();
            if digits.len() != 2 || !digits.iter().all(|c| c.is_ascii_digit()) {
                return Err(usage(format!(
                    "bad exchange token '{token}': use two digits like \"12\" or \"i:j\""
                )));
            }
            (
                digits[0].to_digit(10).unwrap() as usize,
                digits[1].to_digit(10).unwrap() as usize,
            )
        };
        if pair.0 == 0 || pair.1 == 0 || pair.0 > n_spins || pair.1 > n_spins || pair.0 == pair.1 {
            return Err(usage(format!(
                "exchange ({},{}) invalid for {} spins",
                pair.0, pair.1, n_spins
            )));
        }
        pairs.push(pair);
    }
    Ok(pairs)
}

/// Left-to-right tokens form the operator product, so the rightmost
/// exchange acts first.
fn chain_operator(spec: &str, n_spins: usize) -> Result<GeneralizedPermutation, CliError> {
    if n_spins == 0 || n_spins > MAX_SPINS {
        return Err(usage(format!("spin count must be in 1..={MAX_SPINS}")));
    }
    let mut acc = GeneralizedPermutation::identity(1 << n_spins);
    for (i, j) in parse_chain(spec, n_spins)? {
        let p = GeneralizedPermutation::lift_exchange(i, j, n_spins).map_err(usage)?;
        acc = acc.compose(&p).map_err(usage)?;
    }
    Ok(acc)
}

fn cmd_spectrum(
    chain: &str,
    n: usize,
    t: f64,
    method_name: &str,
    format: Format,
) -> Result<String, CliError> {
    if t <= 0.0 {
        return Err(usage("timescale must be positive"));
    }
    let p = chain_operator(chain, n)?;

    // Dense operators are cubic in dimension, so past CROSS_CHECK_MAX_DIM the
    // spectrum comes straight from the cycle data and the dual-route check is
    // skipped; only cycle-dft is available there.
    let cross = if p.dim() <= CROSS_CHECK_MAX_DIM {
        let selected = extraction_method(method_name).map_err(usage)?;
        let h = selected.extract(&p, t).map_err(usage)?;
        let other_name = EXTRACTION_METHOD_NAMES
            .iter()
            .find(|&&m| m != method_name)
            .expect("two methods registered");
        let other = extraction_method(other_name).map_err(usage)?;
        let h_other = other.extract(&p, t).map_err(usage)?;
        let cross = h.matrix.max_abs_diff(&h_other.matrix);
        if cross > CROSS_CHECK_TOL {
            return Err(CliError::Verification(format!(
                "extraction routes disagree: max diff {cross:.3e} exceeds {CROSS_CHECK_TOL:.0e}"
            )));
        }
        Some(cross)
    } else {
        if method_name != "cycle-dft" {
            return Err(usage(format!(
                "method '{method_name}' handles at most {CROSS_CHECK_MAX_DIM} basis states; use cycle-dft"
            )));
        }
        extraction_method(method_name).map_err(usage)?;
        None
    };

    let mut eigenvalues = permutation_spectrum(&p, t).map_err(usage)?;
    eigenvalues.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let report = emit::SpectrumReport {
        timescale: t,
        method: method_name.to_string(),
        multiplicities: multiplicities(&eigenvalues),
        cycle_type: p.cycle_decomposition().cycle_type(),
        eigenvalues,
        cross_check_max_diff: cross,
    };
    Ok(match format {
        Format::Json => emit::spectrum_json(&report),
        Format::Csv => emit::spectrum_csv(&report),
        Format::Text => emit::spectrum_text(&report),
    })
}

fn cmd_bch_verify(corrupt_c: bool, shift_2pi: u32, format: Format) -> Result<String, CliError> {
    let first = exchange_exponential_identity_shifted(1, 2, 3, shift_2pi).map_err(usage)?;
    let second = exchange_exponential_identity_shifted(2, 3, 3, shift_2pi).map_err(usage)?;
    let exchange_report = if first.max_abs_diff >= second.max_abs_diff {
        first
    } else {
        second
    };
    let terminating = verify_terminating_bch_with(TerminatingOptions {
        shift_turns_first: shift_2pi,
        shift_turns_second: shift_2pi,
        swap_coupling: corrupt_c,
    });
    let factorized = verify_factorized_form();
    let reports = [exchange_report, terminating, factorized];

    let failing: Vec<&str> = reports
        .iter()
        .filter(|r| r.max_abs_diff >= BCH_PASS_TOL)
        .map(|r| r.identity.name())
        .collect();

    let body = match format {
        Format::Json => {
            let rows: Vec<String> = reports.iter().map(emit::bch_json).collect();
            format!(
                "{{\"reports\":[{}],\"all_pass\":{}}}",
                rows.join(","),
                failing.is_empty()
            )
        }
        Format::Csv => {
            let mut out = String::from("identity,max_abs_diff,pass\n");
            for r in &reports {
                out.push_str(&format!(
                    "{},{},{}\n",
                    r.identity.name(),
                    emit::json_f64(r.max_abs_diff),
                    r.max_abs_diff < BCH_PASS_TOL
                ));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for r in &reports {
                out.push_str(&bch_text_line(r));
            }
            out
        }
    };
    if failing.is_empty() {
        Ok(body)
    } else {
        // Still show the report, then fail with the identities named.
        write_output(None, &body)?;
        Err(CliError::Verification(format!(
            "identity check failed: {}",
            failing.join(", ")
        )))
    }
}

fn bch_text_line(r: &BchReport) -> String {
    let verdict = if r.max_abs_diff < BCH_PASS_TOL {
        "PASS"
    } else {
        "FAIL"
    };
    format!(
        "{verdict} {:<24} max_abs_diff {}\n",
        r.identity.name(),
        emit::text_f64(r.max_abs_diff)
    )
}

fn parse_sources(spec: &str) -> Result<Vec<SpinConfig>, CliError> {
    let configs: Vec<SpinConfig> = spec
        .split(',')
        .map(|s| SpinConfig::parse(s.trim()).map_err(usage))
        .collect::<Result<_, _>>()?;
    if configs.is_empty() {
        return Err(usage("at least one source configuration required"));
    }
    let n = configs[0].n_spins();
    if configs.iter().any(|c| c.n_spins() != n) {
        return Err(usage("all sources must have the same spin count"));
    }
    Ok(configs)
}

fn cmd_leakage(
    gen_name: &str,
    eps_spec: &str,
    source_spec: &str,
    pair_spec: &str,
    t: f64,
    format: Format,
) -> Result<String, CliError> {
    let epsilons: Vec<f64> = eps_spec
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<f64>().map_err(usage))
        .collect::<Result<_, _>>()?;
    if epsilons.is_empty() {
        return Err(usage("epsilon list must not be empty"));
    }
    let sources = parse_sources(source_spec)?;
    let n_spins = sources[0].n_spins();
    let (pi, pj) = pair_spec
        .split_once(',')
        .ok_or_else(|| usage("pair must look like \"1,2\""))?;
    let pair = (
        pi.trim().parse::<usize>().map_err(usage)?,
        pj.trim().parse::<usize>().map_err(usage)?,
    );
    if gen_name == "hamiltonian" && n_spins != 3 {
        return Err(usage("the hamiltonian generator acts on 3 spins"));
    }
    let generator = leakage_generator(gen_name, pair, n_spins, t).map_err(usage)?;
    let indices: Vec<usize> = sources.iter().map(|c| c.index()).collect();
    let sweep = leakage_sweep(generator.as_ref(), &epsilons, &indices).map_err(usage)?;
    Ok(match format {
        Format::Json => emit::leakage_json(&sweep),
        Format::Csv => emit::leakage_csv(&sweep),
        Format::Text => emit::leakage_text(&sweep),
    })
}

fn cmd_pauli_expand(
    exchange: Option<&str>,
    chain: Option<&str>,
    hamiltonian: bool,
    zero: bool,
    n: Option<usize>,
    t: f64,
    format: Format,
) -> Result<String, CliError> {
    let chosen = exchange.is_some() as usize
        + chain.is_some() as usize
        + hamiltonian as usize
        + zero as usize;
    if chosen != 1 {
        return Err(usage(
            "choose exactly one of --exchange, --chain, --hamiltonian, --zero",
        ));
    }
    let sum: PauliSum = if let Some(pair_spec) = exchange {
        let n = n.ok_or_else(|| usage("--exchange needs --n"))?;
        let (a, b) = pair_spec
            .split_once(',')
            .ok_or_else(|| usage("exchange pair must look like \"1,2\""))?;
        let i = a.trim().parse::<usize>().map_err(usage)?;
        let j = b.trim().parse::<usize>().map_err(usage)?;
        exchange_as_pauli(i, j, n).map_err(usage)?
    } else if let Some(chain_spec) = chain {
        let n = n.ok_or_else(|| usage("--chain needs --n"))?;
        let p = chain_operator(chain_spec, n)?;
        dense_to_pauli(&p.dense(), n).map_err(usage)?
    } else if hamiltonian {
        let h = closed_form_three_spin_hamiltonian(t).map_err(usage)?;
        dense_to_pauli(&h.matrix, 3).map_err(usage)?
    } else {
        let n = n.ok_or_else(|| usage("--zero needs --n"))?;
        if n == 0 || n > MAX_SPINS {
            return Err(usage(format!("spin count must be in 1..={MAX_SPINS}")));
        }
        dense_to_pauli(&ontospin_core::dense::DenseOperator::zeros(1 << n), n).map_err(usage)?
    };
    Ok(match format {
        Format::Json => emit::pauli_sum_json(&sum),
        Format::Csv => emit::pauli_sum_csv(&sum),
        Format::Text => emit::pauli_sum_text(&sum),
    })
}

fn cmd_ontology_check(
    n_spec: &str,
    samples: usize,
    seed: u64,
    max_chain: usize,
    format: Format,
) -> Result<String, CliError> {
    let spin_counts: Vec<usize> = n_spec
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(usage))
        .collect::<Result<_, _>>()?;
    if spin_counts.is_empty() || spin_counts.iter().any(|&n| !(2..=10).contains(&n)) {
        return Err(usage("spin counts must be in 2..=10"));
    }
    if samples == 0 || max_chain == 0 {
        return Err(usage("samples and max-chain must be positive"));
    }

    let mut rng = StdRng::seed_from_u64(seed);
    let cycle_dft = extraction_method("cycle-dft").map_err(usage)?;
    let dense_log = extraction_method("dense-log").map_err(usage)?;
    let mut failures: Vec<String> = Vec::new();
    let mut worst_gap = 0.0f64;
    let mut worst_leak = 0.0f64;

    for sample in 0..samples {
        let n = spin_counts[sample % spin_counts.len()];
        let len = rng.gen_range(1..=max_chain);
        let mut p = GeneralizedPermutation::identity(1 << n);
        for _ in 0..len {
            let i = rng.gen_range(1..=n);
            let mut j = rng.gen_range(1..=n);
            while j == i {
                j = rng.gen_range(1..=n);
            }
            let e = GeneralizedPermutation::lift_exchange(i, j, n).map_err(usage)?;
            p = p.compose(&e).map_err(usage)?;
        }
        let dense = p.dense();

        if !is_ontological(&dense, 1e-10).is_ontological() {
            failures.push(format!("sample {sample}: ontology test failed"));
            continue;
        }
        let mut sample_ok = true;
        for idx in 0..p.dim() {
            let (target, _) = p.apply_index(idx).map_err(usage)?;
            if target.count_ones() != idx.count_ones() {
                failures.push(format!("sample {sample}: weight changed at index {idx}"));
                sample_ok = false;
                break;
            }
            let cell = ontospin_core::ontology::leakage(&dense, idx).map_err(usage)?;
            worst_leak = worst_leak.max(cell.leakage);
            if cell.leakage >= 1e-12 {
                failures.push(format!(
                    "sample {sample}: leakage {} from index {idx}",
                    cell.leakage
                ));
                sample_ok = false;
                break;
            }
        }
        if !sample_ok {
            continue;
        }
        let exact = cycle_dft.extract(&p, 1.0).map_err(usage)?;
        let oracle = dense_log.extract(&p, 1.0).map_err(usage)?;
        let gap = exact.matrix.max_abs_diff(&oracle.matrix);
        worst_gap = worst_gap.max(gap);
        if gap >= 1e-8 {
            failures.push(format!(
                "sample {sample}: extraction routes differ by {gap}"
            ));
        }
    }

    let pass = failures.is_empty();
    let body = match format {
        Format::Json => {
            let fail_rows: Vec<String> = failures
                .iter()
                .map(|f| format!("\"{}\"", f.replace('"', "'")))
                .collect();
            format!(
                "{{\"samples\":{samples},\"seed\":{seed},\"worst_oracle_gap\":{},\"worst_leakage\":{},\"failures\":[{}],\"pass\":{pass}}}",
                emit::json_f64(worst_gap),
                emit::json_f64(worst_leak),
                fail_rows.join(",")
            )
        }
        Format::Csv => {
            let mut out = String::from("metric,value\n");
            out.push_str(&format!("samples,{samples}\n"));
            out.push_str(&format!("seed,{seed}\n"));
            out.push_str(&format!("worst_oracle_gap,{}\n", emit::json_f64(worst_gap)));
            out.push_str(&format!("worst_leakage,{}\n", emit::json_f64(worst_leak)));
            out.push_str(&format!("failures,{}\n", failures.len()));
            out.push_str(&format!("pass,{pass}\n"));
            out
        }
        Format::Text => {
            let mut out = format!(
                "checked {samples} random exchange products (seed {seed}, n ∈ {spin_counts:?})\n"
            );
            out.push_str(&format!(
                "worst extraction-route gap: {}\n",
                emit::text_f64(worst_gap)
            ));
            out.push_str(&format!("worst leakage: {}\n", emit::text_f64(worst_leak)));
            for f in &failures {
                out.push_str(&format!("FAIL {f}\n"));
            }
            out.push_str(if pass {
                "all checks passed\n"
            } else {
                "checks FAILED\n"
            });
            out
        }
    };
    if pass {
        Ok(body)
    } else {
        write_output(None, &body)?;
        Err(CliError::Verification(format!(
            "{} of {samples} samples failed",
            failures.len()
        )))
    }
}
