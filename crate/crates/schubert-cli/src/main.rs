//! Command-line front end for the `schubert-core` engine.
//!
//! One subcommand per question: exact coefficients (`lr`, `invdim`,
//! `stretch`), the recursive non-vanishing criterion (`horn`, `ineq`),
//! slope semistability (`semistable`), sampled complexes over a prime field
//! (`homdim`, `prop11`, `h1check`), dimension bookkeeping (`dims`), and the
//! corpus-wide verification scans (`verify-ktt`, `verify-horn`).
//!
//! Exit status: 0 when the requested computation (and any assertion it
//! carries) succeeds, 1 when a verification fails, 2 on malformed input.
//! `--json` switches every subcommand to a single-line JSON report with a
//! `schema` field; `--cache` persists Littlewood-Richardson coefficients
//! across runs.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use schubert_core::complexes::{
    dimension_check, restriction_transfer_check, sample_flag_tuple, two_step_report, StepProfile,
};
use schubert_core::exec::Threading;
use schubert_core::harness::{
    horn_vs_oracle_random, horn_vs_oracle_scan, ktt_scan, subspace_pair_count,
    subspace_pair_count_formula,
};
use schubert_core::horn::{
    expected_hom_dim, horn_decide, horn_inequality_value, horn_nonzero, subspace_pair_dimension,
};
use schubert_core::linalg::{derive_seed, PrimeField};
use schubert_core::lr::{invariant_dimension, lr_coefficient, stretch_sequence};
use schubert_core::parabolic::{parse_weight_tuple, semistable_decide, ParabolicWeights};
use schubert_core::partitions::{
    format_tuple, parse_index_tuple, parse_partition, parse_partition_tuple, IndexSet,
    SchubertProblem,
};
use schubert_core::{cache, Error, Result};

#[derive(Parser)]
#[command(
    name = "schubert",
    version,
    about = "Exact Schubert calculus, Horn inequalities, and sampled flag complexes",
    arg_required_else_help = true
)]
struct Cli {
    /// Prime modulus for all finite-field sampling.
    #[arg(long, global = true, default_value_t = 1_000_003, value_name = "P")]
    prime: u64,

    /// Base seed for all randomized sampling (64-bit, deterministic).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Random elements drawn when probing a generic member of a space.
    #[arg(long, global = true, default_value_t = 8)]
    trials: u32,

    /// Extra reseeded attempts granted to sampling checks.
    #[arg(long, global = true, default_value_t = 3)]
    retries: u32,

    /// Emit a single-line JSON report instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    /// Coefficient cache file: loaded before the run, extended after it.
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Littlewood-Richardson coefficient of NU in the product LAMBDA * MU.
    Lr {
        /// Comma-separated partition, e.g. `2,1` (use `0` for empty).
        lambda: String,
        mu: String,
        nu: String,
    },

    /// Dimension of the invariant subspace of a tensor product of
    /// irreducible representations with the given highest weights.
    Invdim {
        /// Rank of the special linear group acting.
        #[arg(long)]
        r: u32,
        /// Colon-joined partitions, one per tensor factor, e.g. `1:1:1:1`.
        partitions: String,
    },

    /// Invariant dimensions after scaling every weight by N = 1, ..., max-n.
    Stretch {
        #[arg(long)]
        r: u32,
        /// Colon-joined partitions, one per tensor factor.
        partitions: String,
        /// Largest scaling factor evaluated.
        #[arg(long, default_value_t = 5)]
        max_n: u32,
    },

    /// Decide non-vanishing of a product of Schubert classes by the
    /// recursive inequality criterion; prints `nonzero` or `zero`.
    Horn {
        /// Ambient dimension.
        #[arg(long)]
        n: u32,
        /// Subspace dimension.
        #[arg(long)]
        r: u32,
        /// Colon-joined index sets in [n], e.g. `2,4:2,4:2,4`.
        sets: String,
        /// Report the first violated inequality when the product vanishes.
        #[arg(long)]
        explain: bool,
    },

    /// Evaluate one inequality of the recursive criterion; nonpositive
    /// values mean the inequality holds.
    Ineq {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        /// Colon-joined index sets in [n].
        sets: String,
        /// Colon-joined position sets inside [r], one per factor, all of a
        /// common cardinality.
        #[arg(long)]
        k: String,
    },

    /// Decide slope semistability for generic flags; prints `semistable`
    /// or `unstable`.
    Semistable {
        /// Colon-joined nonincreasing weight sequences (`1,0:1,0:1,0`,
        /// entries may be fractions); with --level, colon-joined index
        /// sets whose associated partitions become the weights.
        weights: String,
        /// Derive integer weights from index sets in an ambient space with
        /// this many extra dimensions.
        #[arg(long, value_name = "Q")]
        level: Option<u32>,
    },

    /// Dimension of the Hom space constrained along one sampled tuple of
    /// flag pairs.
    Homdim {
        /// Codomain dimension; the domain dimension is the common
        /// cardinality of the sets and the ambient is their sum.
        #[arg(long)]
        q: u32,
        /// Colon-joined index sets in [m + q], one per factor.
        sets: String,
    },

    /// Compare sampled against expected constrained Hom dimensions over
    /// freshly drawn flags, with the retry budget of `--retries`.
    Prop11 {
        #[arg(long)]
        q: u32,
        /// Colon-joined index sets in [m + q], one per factor.
        sets: String,
        /// Independently sampled flag tuples to check.
        #[arg(long, default_value_t = 1)]
        instances: u32,
    },

    /// Check that the excess dimension of the sampled complex survives
    /// restriction to the kernel of a generic constrained map.
    H1check {
        #[arg(long)]
        q: u32,
        /// Colon-joined index sets in [m + q], one per factor.
        sets: String,
    },

    /// Relative dimension of the space of subspace pairs with prescribed
    /// intersection, optionally verified against an exact point count.
    Dims {
        /// Ambient dimension.
        #[arg(long)]
        r: u32,
        /// Dimension of each subspace in the pair.
        #[arg(long)]
        f: u32,
        /// Dimension of their intersection.
        #[arg(long)]
        g: u32,
        /// Also enumerate all pairs over the field with this many elements
        /// (a prime; 2 or 3 stay desk-scale) and compare with the counting
        /// polynomial.
        #[arg(long, value_name = "MODULUS")]
        count: Option<u64>,
    },

    /// Scan the full codimension-matched corpus for one Grassmannian:
    /// cross-check both coefficient routes, the stretched values for
    /// intersection numbers 1 and 2, and the semistability bridge.
    VerifyKtt {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u32,
        /// Number of factors.
        #[arg(long, default_value_t = 3)]
        s: usize,
        /// Largest scaling factor checked per problem.
        #[arg(long, default_value_t = 6)]
        max_stretch: u32,
    },

    /// Compare the recursive criterion against the expansion oracle,
    /// exhaustively or on seeded random problems.
    VerifyHorn {
        #[arg(long, default_value_t = 3)]
        r_max: u32,
        #[arg(long, default_value_t = 7)]
        n_max: u32,
        /// Number of factors.
        #[arg(long, default_value_t = 3)]
        s: usize,
        /// Check this many random problems instead of the exhaustive corpus.
        #[arg(long, value_name = "COUNT")]
        random: Option<u32>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(path) = &cli.cache {
        if let Err(err) = cache::load(path) {
            eprintln!("error: {err}");
            return exit_for(&err);
        }
    }
    let outcome = run(&cli);
    // Persist freshly computed coefficients even when a verification failed:
    // the coefficients themselves are valid either way.
    if let Some(path) = &cli.cache {
        if let Err(err) = cache::append_new(path) {
            eprintln!("error: {err}");
            return exit_for(&err);
        }
    }
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            exit_for(&err)
        }
    }
}

/// Malformed input exits 2; everything else that goes wrong exits 1.
fn exit_for(err: &Error) -> ExitCode {
    match err {
        Error::InvalidInput(_)
        | Error::NotASubset { .. }
        | Error::Parse { .. }
        | Error::CacheLine { .. } => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

/// Run one subcommand; `Ok(false)` means the computation finished but its
/// assertion failed.
fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Lr { lambda, mu, nu } => {
            let (lam, mu, nu) = (
                parse_partition(lambda)?,
                parse_partition(mu)?,
                parse_partition(nu)?,
            );
            let value = lr_coefficient(&lam, &mu, &nu)?;
            if cli.json {
                emit(serde_json::json!({
                    "schema": 1,
                    "lambda": lam.to_string(),
                    "mu": mu.to_string(),
                    "nu": nu.to_string(),
                    "value": value,
                }));
            } else {
                println!("{value}");
            }
            Ok(true)
        }

        Command::Invdim { r, partitions } => {
            let lambdas = parse_partition_tuple(partitions)?;
            let value = invariant_dimension(&lambdas, *r)?;
            if cli.json {
                emit(serde_json::json!({
                    "schema": 1,
                    "r": r,
                    "partitions": format_tuple(&lambdas),
                    "value": value,
                }));
            } else {
                println!("{value}");
            }
            Ok(true)
        }

        Command::Stretch {
            r,
            partitions,
            max_n,
        } => {
            let lambdas = parse_partition_tuple(partitions)?;
            let report = stretch_sequence(&lambdas, *r, *max_n)?;
            if cli.json {
                emit(serde_json::json!({
                    "schema": 1,
                    "r": r,
                    "partitions": format_tuple(&lambdas),
                    "max_n": max_n,
                    "values": report.values,
                    "newton": report.newton,
                    "degree": report.degree,
                }));
            } else {
                let words: Vec<String> =
                    report.values.iter().map(ToString::to_string).collect();
                println!("{}", words.join(" "));
            }
            Ok(true)
        }

        Command::Horn {
            n,
            r,
            sets,
            explain,
        } => {
            let problem = SchubertProblem::new(*n, *r, parse_index_tuple(sets, *n)?)?;
            if *explain {
                let decision = horn_decide(&problem)?;
                if cli.json {
                    emit(serde_json::json!({
                        "schema": 1,
                        "problem": problem.to_string(),
                        "nonzero": decision.nonzero,
                        "violation": decision.violation,
                    }));
                } else if let Some(v) = &decision.violation {
                    println!("zero (f={}, K={}, value={})", v.f, v.positions, v.value);
                } else {
                    println!("nonzero");
                }
            } else {
                let nonzero = horn_nonzero(&problem)?;
                if cli.json {
                    emit(serde_json::json!({
                        "schema": 1,
                        "problem": problem.to_string(),
                        "nonzero": nonzero,
                    }));
                } else {
                    println!("{}", if nonzero { "nonzero" } else { "zero" });
                }
            }
            Ok(true)
        }

        Command::Ineq { n, r, sets, k } => {
            let problem = SchubertProblem::new(*n, *r, parse_index_tuple(sets, *n)?)?;
            let k_sets = parse_index_tuple(k, *r)?;
            let value = horn_inequality_value(&problem, &k_sets)?;
            if cli.json {
                emit(serde_json::json!({
                    "schema": 1,
                    "problem": problem.to_string(),
                    "k": format_tuple(&k_sets),
                    "value": value,
                    "holds": value <= 0,
                }));
            } else {
                println!("{value}");
            }
            Ok(true)
        }

        Command::Semistable { weights, level } => {
            let parabolic = match level {
                Some(q) => {
                    let (sets, m, _) = parse_positions(weights, *q)?;
                    let lambdas: Vec<_> = sets.iter().map(IndexSet::to_partition).collect();
                    ParabolicWeights::from_partitions(&lambdas, m as u32)?
                }
                None => ParabolicWeights::new(parse_weight_tuple(weights)?)?,
            };
            let decision = semistable_decide(&parabolic)?;
            if cli.json {
                emit(serde_json::json!({
                    "schema": 1,
                    "input": weights,
                    "level": level,
                    "semistable": decision.semistable,
                    "witness": decision.witness,
                }));
            } else if let Some(w) = &decision.witness {
                println!(
                    "unstable (e={}, E={}, slope {} > {})",
                    w.e, w.positions, w.slope, w.total_slope
                );
            } else {
                println!("semistable");
            }
            Ok(true)
        }

        Command::Homdim { q, sets } => {
            let (h_sets, m, _) = parse_positions(sets, *q)?;
            let field = PrimeField::new(cli.prime)?;
            let flags_m = sample_flag_tuple(field, m, h_sets.len(), cli.seed, 0);
            let flags_q = sample_flag_tuple(field, *q as usize, h_sets.len(), cli.seed, 1);
            let profile = StepProfile::from_index_sets(&h_sets)?;
            let report = two_step_report(&flags_m, &flags_q, &profile)?;
            let expected = expected_hom_dim(&h_sets, m as u32, *q)?;
            if cli.json {
                emit(serde_json::json!({
                    "schema": 1,
                    "positions": format_tuple(&h_sets),
                    "m": m,
                    "q": q,
                    "prime": cli.prime,
                    "seed": cli.seed,
                    "h0": report.h0,
                    "h1": report.h1,
                    "chi": report.chi,
                    "rank": report.rank,
                    "expected": expected,
                }));
            } else {
                println!("{}", report.h0);
            }
            Ok(true)
        }

        Command::Prop11 { q, sets, instances } => {
            let (h_sets, _, _) = parse_positions(sets, *q)?;
            let field = PrimeField::new(cli.prime)?;
            let report = dimension_check(&h_sets, *instances, cli.retries, field, cli.seed)?;
            if cli.json {
                emit(serde_json::to_value(&report).expect("report serializes"));
            } else {
                println!(
                    "{}: {}/{} instances ({} on first seed)",
                    verdict_word(report.verdict),
                    report.passes,
                    report.instances,
                    report.first_seed_passes
                );
            }
            Ok(report.verdict)
        }

        Command::H1check { q, sets } => {
            let (h_sets, m, _) = parse_positions(sets, *q)?;
            let field = PrimeField::new(cli.prime)?;
            let mut attempts = 0;
            let mut last = None;
            for attempt in 0..=cli.retries {
                let flag_seed = derive_seed(cli.seed, u64::from(attempt));
                let flags_m = sample_flag_tuple(field, m, h_sets.len(), flag_seed, 0);
                let flags_q = sample_flag_tuple(field, *q as usize, h_sets.len(), flag_seed, 1);
                let report = restriction_transfer_check(
                    &flags_m,
                    &flags_q,
                    &h_sets,
                    cli.trials,
                    derive_seed(flag_seed, 7),
                )?;
                attempts = attempt + 1;
                let done = report.equal;
                last = Some(report);
                if done {
                    break;
                }
            }
            let report = last.expect("at least one attempt runs");
            if cli.json {
                emit(serde_json::json!({
                    "schema": 1,
                    "positions": format_tuple(&h_sets),
                    "m": m,
                    "q": q,
                    "prime": cli.prime,
                    "seed": cli.seed,
                    "attempts": attempts,
                    "report": report,
                }));
            } else if report.equal {
                println!(
                    "pass: h1 = {} on both the full and the restricted complex",
                    report.h1_full
                );
            } else {
                println!(
                    "fail: h1 = {} but restricted h1 = {} (kernel dim {})",
                    report.h1_full, report.h1_restricted, report.kernel_dim
                );
            }
            Ok(report.equal)
        }

        Command::Dims { r, f, g, count } => {
            let dimension = subspace_pair_dimension(*r, *f, *g)?;
            let mut pass = true;
            let counted = match count {
                Some(modulus) => {
                    let exact = subspace_pair_count(*r, *f, *g, *modulus)?;
                    let formula = subspace_pair_count_formula(*r, *f, *g, *modulus);
                    pass = exact == formula;
                    Some((exact, formula))
                }
                None => None,
            };
            if cli.json {
                emit(serde_json::json!({
                    "schema": 1,
                    "r": r,
                    "f": f,
                    "g": g,
                    "dimension": dimension,
                    "count": counted.map(|(exact, formula)| serde_json::json!({
                        "modulus": count,
                        "exact": exact,
                        "formula": formula,
                        "pass": pass,
                    })),
                }));
            } else {
                println!("{dimension}");
                if let Some((exact, formula)) = counted {
                    println!(
                        "count over F_{}: {} (formula {}): {}",
                        count.unwrap_or_default(),
                        exact,
                        formula,
                        verdict_word(pass)
                    );
                }
            }
            Ok(pass)
        }

        Command::VerifyKtt {
            r,
            n,
            s,
            max_stretch,
        } => {
            let report = ktt_scan(*r, *n, *s, *max_stretch, Threading::default())?;
            if cli.json {
                emit(serde_json::to_value(&report).expect("report serializes"));
            } else {
                let counts: Vec<String> = report
                    .counts_by_intersection
                    .iter()
                    .map(|(value, count)| format!("{value} -> {count}"))
                    .collect();
                println!(
                    "corpus r={} n={} s={}: {} problems",
                    report.r, report.n, report.s, report.problems
                );
                println!("intersection counts: {}", counts.join(", "));
                println!(
                    "stretch checked: {}, semistability checked: {}",
                    report.stretch_checked, report.semistable_checked
                );
                for failure in &report.failures {
                    println!(
                        "failure [{}] {}: N={} expected {} got {}",
                        failure.kind,
                        failure.problem,
                        failure.stretch,
                        failure.expected,
                        failure.actual
                    );
                }
                println!("verdict: {}", verdict_word(report.verdict));
            }
            Ok(report.verdict)
        }

        Command::VerifyHorn {
            r_max,
            n_max,
            s,
            random,
        } => {
            let report = match random {
                Some(count) => {
                    horn_vs_oracle_random(*count, *s, cli.seed, Threading::default())?
                }
                None => horn_vs_oracle_scan(*r_max, *n_max, *s, Threading::default())?,
            };
            if cli.json {
                emit(serde_json::to_value(&report).expect("report serializes"));
            } else {
                println!("{}", report.description);
                println!(
                    "checked {} problems, {} mismatches",
                    report.problems,
                    report.mismatches.len()
                );
                for mismatch in &report.mismatches {
                    println!(
                        "mismatch {}: recursion {} vs expansion {}",
                        mismatch.problem, mismatch.recursion, mismatch.expansion
                    );
                }
                println!("verdict: {}", verdict_word(report.verdict));
            }
            Ok(report.verdict)
        }
    }
}

/// Parse a colon-joined tuple of index sets whose ambient dimension is the
/// common cardinality plus `q`; returns the sets, the cardinality, and the
/// ambient dimension.
fn parse_positions(text: &str, q: u32) -> Result<(Vec<IndexSet>, usize, u32)> {
    let first = text.split(':').next().unwrap_or("");
    let m = first
        .split(',')
        .filter(|piece| !piece.trim().is_empty() && piece.trim() != "-")
        .count();
    if m == 0 {
        return Err(Error::Parse {
            token: text.to_string(),
            reason: "need at least one index per factor".into(),
        });
    }
    let ambient = m as u32 + q;
    let sets = parse_index_tuple(text, ambient)?;
    for set in &sets {
        if set.len() != m {
            return Err(Error::Parse {
                token: text.to_string(),
                reason: "factors must share one cardinality".into(),
            });
        }
    }
    Ok((sets, m, ambient))
}

fn verdict_word(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn emit(value: serde_json::Value) {
    println!("{value}");
}
