//! Experiment orchestration: corpus enumeration, the stretching scan, the
//! recursion-versus-expansion comparison, sampled dimension campaigns, and
//! exact subspace point counts.
//!
//! Every scan is deterministic: corpora are enumerated in a fixed order,
//! random instances are drawn sequentially from seeded generators before
//! any evaluation starts, and parallel evaluation preserves input order,
//! so a report is a pure function of its arguments.

use std::collections::BTreeMap;

use rand_chacha::rand_core::RngCore;
use serde::Serialize;

use crate::complexes::{self, dimension_check, restriction_transfer_check};
use crate::error::{Error, Result};
use crate::exec::{map_instances, Threading};
use crate::horn;
use crate::linalg::{derive_seed, random_index_set, rng_from_seed, PrimeField, PrimeMatrix};
use crate::lr;
use crate::parabolic::{generic_semistable, ParabolicWeights};
use crate::partitions::{format_tuple, IndexSet, Partition, SchubertProblem};

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// All cardinality-`r` index sets in `[n]`, in lexicographic order.
pub fn index_sets(n: u32, r: u32) -> Vec<IndexSet> {
    assert!(r <= n, "cannot choose {r} elements from [{n}]");
    if r == 0 {
        return vec![IndexSet::empty(n)];
    }
    let mut out = Vec::new();
    let mut current: Vec<u32> = Vec::with_capacity(r as usize);
    fn extend(n: u32, r: u32, current: &mut Vec<u32>, out: &mut Vec<IndexSet>) {
        if current.len() == r as usize {
            out.push(IndexSet::new(current.clone(), n).expect("strictly increasing by construction"));
            return;
        }
        let lo = current.last().map_or(1, |&x| x + 1);
        let remaining = r as usize - current.len();
        for x in lo..=(n + 1 - remaining as u32) {
            current.push(x);
            extend(n, r, current, out);
            current.pop();
        }
    }
    extend(n, r, &mut current, &mut out);
    out
}

/// All partitions with at most `rows` rows and largest part at most
/// `width`, ordered lexicographically by row vector.
pub fn partitions_in_box(rows: u32, width: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current: Vec<u32> = Vec::with_capacity(rows as usize);
    fn extend(rows: u32, width: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if current.len() == rows as usize {
            out.push(Partition::new(current.clone()).expect("weakly decreasing by construction"));
            return;
        }
        let cap = current.last().copied().unwrap_or(width);
        for part in 0..=cap {
            current.push(part);
            extend(rows, width, current, out);
            current.pop();
        }
    }
    extend(rows, width, &mut current, &mut out);
    out
}

/// All problems on `Gr(r, n)` with `s` factors, up to permutation of the
/// factors: every nondecreasing `s`-tuple over the lexicographic list of
/// index sets, in lexicographic order.
pub fn enumerate_problems(n: u32, r: u32, s: usize) -> Vec<SchubertProblem> {
    let sets = index_sets(n, r);
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(s);
    fn extend(
        n: u32,
        r: u32,
        s: usize,
        sets: &[IndexSet],
        chosen: &mut Vec<usize>,
        out: &mut Vec<SchubertProblem>,
    ) {
        if chosen.len() == s {
            let tuple: Vec<IndexSet> = chosen.iter().map(|&i| sets[i].clone()).collect();
            out.push(SchubertProblem::new(n, r, tuple).expect("valid by construction"));
            return;
        }
        let start = chosen.last().copied().unwrap_or(0);
        for i in start..sets.len() {
            chosen.push(i);
            extend(n, r, s, sets, chosen, out);
            chosen.pop();
        }
    }
    extend(n, r, s, &sets, &mut chosen, &mut out);
    out
}

/// The subset of [`enumerate_problems`] whose total codimension equals
/// `r(n-r)`, with infeasible branches pruned during generation.
pub fn enumerate_codim_problems(r: u32, n: u32, s: usize) -> Vec<SchubertProblem> {
    let target = u64::from(r) * u64::from(n - r);
    let sets = index_sets(n, r);
    let codims: Vec<u64> = sets.iter().map(IndexSet::codim).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(s);
    #[allow(clippy::too_many_arguments)]
    fn extend(
        n: u32,
        r: u32,
        s: usize,
        target: u64,
        sum: u64,
        sets: &[IndexSet],
        codims: &[u64],
        chosen: &mut Vec<usize>,
        out: &mut Vec<SchubertProblem>,
    ) {
        if chosen.len() == s {
            if sum == target {
                let tuple: Vec<IndexSet> = chosen.iter().map(|&i| sets[i].clone()).collect();
                out.push(SchubertProblem::new(n, r, tuple).expect("valid by construction"));
            }
            return;
        }
        let remaining = (s - chosen.len()) as u64;
        let start = chosen.last().copied().unwrap_or(0);
        for i in start..sets.len() {
            let next = sum + codims[i];
            // Later factors can only add between 0 and target each.
            if next > target || next + (remaining - 1) * target < target {
                continue;
            }
            chosen.push(i);
            extend(n, r, s, target, next, sets, codims, chosen, out);
            chosen.pop();
        }
    }
    extend(n, r, s, target, 0, &sets, &codims, &mut chosen, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Stretching scan
// ---------------------------------------------------------------------------

/// One assertion failure inside a stretching scan, with enough data to
/// replay the instance by hand.
#[derive(Clone, Debug, Serialize)]
pub struct StretchFailure {
    pub problem: String,
    pub intersection: u64,
    pub stretch: u32,
    pub expected: u64,
    pub actual: u64,
    pub kind: String,
}

/// Result of scanning one codimension-matched corpus.
#[derive(Clone, Debug, Serialize)]
pub struct KttReport {
    pub schema: u32,
    pub r: u32,
    pub n: u32,
    pub s: usize,
    pub max_stretch: u32,
    pub problems: usize,
    pub counts_by_intersection: BTreeMap<u64, usize>,
    pub stretch_checked: usize,
    pub semistable_checked: usize,
    pub failures: Vec<StretchFailure>,
    pub verdict: bool,
}

struct KttOutcome {
    intersection: u64,
    stretch_checked: bool,
    semistable_checked: bool,
    failures: Vec<StretchFailure>,
}

fn evaluate_ktt_problem(problem: &SchubertProblem, max_stretch: u32) -> Result<KttOutcome> {
    let r = problem.r();
    let text = problem.to_string();
    let d1 = lr::intersection_number(problem)?;
    let lambdas = problem.partitions();
    let mut failures = Vec::new();

    // The intersection number and the tensor-invariant dimension are the
    // same quantity computed through different normalizations; any
    // disagreement is a bug in one of the two routes.
    let inv1 = lr::invariant_dimension(&lambdas, r)?;
    if inv1 != d1 {
        failures.push(StretchFailure {
            problem: text.clone(),
            intersection: d1,
            stretch: 1,
            expected: d1,
            actual: inv1,
            kind: "level-one cross-check".to_string(),
        });
    }

    let mut stretch_checked = false;
    if d1 == 1 || d1 == 2 {
        let stretch = lr::stretch_sequence(&lambdas, r, max_stretch)?;
        for (idx, &actual) in stretch.values.iter().enumerate() {
            let factor = idx as u32 + 1;
            let expected = if d1 == 1 { 1 } else { u64::from(factor) + 1 };
            if actual != expected {
                failures.push(StretchFailure {
                    problem: text.clone(),
                    intersection: d1,
                    stretch: factor,
                    expected,
                    actual,
                    kind: if d1 == 1 {
                        "constant stretch".to_string()
                    } else {
                        "linear stretch".to_string()
                    },
                });
            }
        }
        stretch_checked = true;
    }

    let mut semistable_checked = false;
    if d1 >= 1 {
        let weights = ParabolicWeights::from_partitions(&lambdas, r)?;
        if !generic_semistable(&weights)? {
            failures.push(StretchFailure {
                problem: text.clone(),
                intersection: d1,
                stretch: 1,
                expected: 1,
                actual: 0,
                kind: "semistability bridge".to_string(),
            });
        }
        semistable_checked = true;
    }

    Ok(KttOutcome {
        intersection: d1,
        stretch_checked,
        semistable_checked,
        failures,
    })
}

/// Scan every codimension-matched problem on `Gr(r, n)` with `s` factors:
/// cross-check the intersection number against the invariant dimension,
/// assert the stretching law for values 1 (constant) and 2 (linear,
/// value `N + 1`), and check that every nonvanishing problem has
/// semistable weights.
pub fn ktt_scan(
    r: u32,
    n: u32,
    s: usize,
    max_stretch: u32,
    threading: Threading,
) -> Result<KttReport> {
    if max_stretch == 0 {
        return Err(Error::invalid("need at least one stretch value"));
    }
    let problems = enumerate_codim_problems(r, n, s);
    let outcomes = map_instances(threading, problems, |p| evaluate_ktt_problem(&p, max_stretch));
    let mut report = KttReport {
        schema: 1,
        r,
        n,
        s,
        max_stretch,
        problems: 0,
        counts_by_intersection: BTreeMap::new(),
        stretch_checked: 0,
        semistable_checked: 0,
        failures: Vec::new(),
        verdict: true,
    };
    for outcome in outcomes {
        let o = outcome?;
        report.problems += 1;
        *report.counts_by_intersection.entry(o.intersection).or_insert(0) += 1;
        if o.stretch_checked {
            report.stretch_checked += 1;
        }
        if o.semistable_checked {
            report.semistable_checked += 1;
        }
        report.failures.extend(o.failures);
    }
    report.verdict = report.failures.is_empty();
    Ok(report)
}

// ---------------------------------------------------------------------------
// Recursion versus expansion
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct OracleMismatch {
    pub problem: String,
    pub n: u32,
    pub r: u32,
    pub recursion: bool,
    pub expansion: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HornOracleReport {
    pub schema: u32,
    pub description: String,
    pub problems: usize,
    pub mismatches: Vec<OracleMismatch>,
    pub verdict: bool,
}

fn compare_routes(problem: &SchubertProblem) -> Result<Option<OracleMismatch>> {
    let recursion = horn::horn_nonzero(problem)?;
    let expansion = lr::product_nonzero_oracle(problem)?;
    if recursion == expansion {
        return Ok(None);
    }
    Ok(Some(OracleMismatch {
        problem: format_tuple(problem.sets()),
        n: problem.n(),
        r: problem.r(),
        recursion,
        expansion,
    }))
}

fn merge_route_comparison(
    description: String,
    problems: Vec<SchubertProblem>,
    threading: Threading,
) -> Result<HornOracleReport> {
    let total = problems.len();
    let outcomes = map_instances(threading, problems, |p| compare_routes(&p));
    let mut mismatches = Vec::new();
    for outcome in outcomes {
        if let Some(m) = outcome? {
            mismatches.push(m);
        }
    }
    let verdict = mismatches.is_empty();
    Ok(HornOracleReport {
        schema: 1,
        description,
        problems: total,
        mismatches,
        verdict,
    })
}

/// Compare the inequality recursion against the expansion oracle on every
/// problem with `1 <= r <= r_max`, `r < n <= n_max`, `s` factors.
pub fn horn_vs_oracle_scan(
    r_max: u32,
    n_max: u32,
    s: usize,
    threading: Threading,
) -> Result<HornOracleReport> {
    let mut problems = Vec::new();
    for r in 1..=r_max {
        for n in (r + 1)..=n_max {
            problems.extend(enumerate_problems(n, r, s));
        }
    }
    merge_route_comparison(
        format!("exhaustive comparison, r <= {r_max}, n <= {n_max}, s = {s}"),
        problems,
        threading,
    )
}

/// Same comparison on `count` seeded random problems with `s` factors,
/// drawn with `r` uniform in `[1, 3]` and `n` uniform in `[r + 1, 7]`.
pub fn horn_vs_oracle_random(
    count: u32,
    s: usize,
    seed: u64,
    threading: Threading,
) -> Result<HornOracleReport> {
    let mut rng = rng_from_seed(seed);
    let mut problems = Vec::with_capacity(count as usize);
    for _ in 0..count {
        let r = 1 + (rng.next_u64() % 3) as u32;
        let n = r + 1 + (rng.next_u64() % u64::from(7 - r)) as u32;
        let sets: Vec<IndexSet> = (0..s).map(|_| random_index_set(n, r, &mut rng)).collect();
        problems.push(SchubertProblem::new(n, r, sets)?);
    }
    merge_route_comparison(
        format!("random comparison, {count} draws, s = {s}, seed {seed}"),
        problems,
        threading,
    )
}

// ---------------------------------------------------------------------------
// Sampled campaigns
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct CampaignFailure {
    pub index: u32,
    pub positions: String,
    pub detail: String,
}

/// Aggregated outcome of a seeded sampling campaign.
#[derive(Clone, Debug, Serialize)]
pub struct CampaignReport {
    pub schema: u32,
    pub description: String,
    pub prime: u64,
    pub base_seed: u64,
    pub instances: u32,
    pub passes: u32,
    pub first_seed_passes: u32,
    /// Number of underlying complex evaluations (each carries the built-in
    /// Euler-characteristic assertion).
    pub evaluations: u32,
    pub failures: Vec<CampaignFailure>,
    pub verdict: bool,
}

fn sample_position_tuple(
    rng: &mut rand_chacha::ChaCha8Rng,
    max_m: u32,
    max_q: u32,
    s: usize,
) -> Vec<IndexSet> {
    let m = 1 + (rng.next_u64() % u64::from(max_m)) as u32;
    let q = 1 + (rng.next_u64() % u64::from(max_q)) as u32;
    (0..s).map(|_| random_index_set(m + q, m, rng)).collect()
}

/// Campaign over random position tuples (`m <= max_m`, `q <= max_q`,
/// three factors): each instance draws fresh flags and compares the
/// measured Hom dimension against its expected value, with up to
/// `retries` resamples.
pub fn dimension_campaign(
    count: u32,
    max_m: u32,
    max_q: u32,
    retries: u32,
    field: PrimeField,
    seed: u64,
    threading: Threading,
) -> Result<CampaignReport> {
    let mut rng = rng_from_seed(seed);
    let configs: Vec<(u32, Vec<IndexSet>)> = (0..count)
        .map(|i| (i, sample_position_tuple(&mut rng, max_m, max_q, 3)))
        .collect();
    let outcomes = map_instances(threading, configs, |(i, h_sets)| {
        let report = dimension_check(&h_sets, 1, retries, field, derive_seed(seed, u64::from(i)))?;
        let failure = (!report.verdict).then(|| {
            let last = report.samples.last().expect("at least one sample");
            CampaignFailure {
                index: i,
                positions: report.positions.clone(),
                detail: format!(
                    "measured {} vs expected {} (nonzero: {}, flag seed {})",
                    last.sampled, last.expected, last.nonzero, last.flag_seed
                ),
            }
        });
        Ok::<_, Error>((report, failure))
    });

    let mut merged = CampaignReport {
        schema: 1,
        description: format!("dimension comparison, m <= {max_m}, q <= {max_q}, s = 3"),
        prime: field.modulus(),
        base_seed: seed,
        instances: count,
        passes: 0,
        first_seed_passes: 0,
        evaluations: 0,
        failures: Vec::new(),
        verdict: true,
    };
    for outcome in outcomes {
        let (report, failure) = outcome?;
        merged.passes += report.passes;
        merged.first_seed_passes += report.first_seed_passes;
        merged.evaluations += report.complexes_checked;
        merged.failures.extend(failure);
    }
    merged.verdict = merged.passes == count;
    Ok(merged)
}

/// Campaign comparing `h1` of full complexes against their restrictions
/// to generic kernels, over random position tuples (`m <= max_m`,
/// `q <= max_q`, three factors) with fresh flags per instance and up to
/// `retries` resamples.
pub fn restriction_campaign(
    count: u32,
    max_m: u32,
    max_q: u32,
    retries: u32,
    field: PrimeField,
    seed: u64,
    threading: Threading,
) -> Result<CampaignReport> {
    let mut rng = rng_from_seed(seed);
    let configs: Vec<(u32, Vec<IndexSet>)> = (0..count)
        .map(|i| (i, sample_position_tuple(&mut rng, max_m, max_q, 3)))
        .collect();
    let outcomes = map_instances(threading, configs, |(i, h_sets)| {
        let m = h_sets[0].len();
        let q = (h_sets[0].ambient() - m as u32) as usize;
        let instance_seed = derive_seed(seed, u64::from(i));
        let mut pass = false;
        let mut first_seed_pass = false;
        let mut evaluations = 0;
        let mut last_detail = String::new();
        for attempt in 0..=retries {
            let flag_seed = derive_seed(instance_seed, u64::from(attempt));
            let flags_m = complexes::sample_flag_tuple(field, m, h_sets.len(), flag_seed, 0);
            let flags_q = complexes::sample_flag_tuple(field, q, h_sets.len(), flag_seed, 1);
            let report =
                restriction_transfer_check(&flags_m, &flags_q, &h_sets, 8, derive_seed(flag_seed, 7))?;
            evaluations += 1;
            if report.equal {
                pass = true;
                first_seed_pass = attempt == 0;
                break;
            }
            last_detail = format!(
                "h1 {} vs restricted {} (kernel dim {}, flagged {}, flag seed {})",
                report.h1_full, report.h1_restricted, report.kernel_dim, report.flagged, flag_seed
            );
        }
        let failure = (!pass).then(|| CampaignFailure {
            index: i,
            positions: format_tuple(&h_sets),
            detail: last_detail,
        });
        Ok::<_, Error>((pass, first_seed_pass, evaluations, failure))
    });

    let mut merged = CampaignReport {
        schema: 1,
        description: format!("restriction transfer, m <= {max_m}, q <= {max_q}, s = 3"),
        prime: field.modulus(),
        base_seed: seed,
        instances: count,
        passes: 0,
        first_seed_passes: 0,
        evaluations: 0,
        failures: Vec::new(),
        verdict: true,
    };
    for outcome in outcomes {
        let (pass, first, evals, failure) = outcome?;
        if pass {
            merged.passes += 1;
        }
        if first {
            merged.first_seed_passes += 1;
        }
        merged.evaluations += evals;
        merged.failures.extend(failure);
    }
    merged.verdict = merged.passes == count;
    Ok(merged)
}

// ---------------------------------------------------------------------------
// Exact subspace counts
// ---------------------------------------------------------------------------

/// Gaussian binomial `[n choose k]_q`: the number of `k`-dimensional
/// subspaces of an `n`-dimensional space over a field with `q` elements,
/// via the Pascal-type recurrence `[n k] = [n-1 k-1] + q^k [n-1 k]`.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u64 {
    if k > n {
        return 0;
    }
    if k == 0 || k == n {
        return 1;
    }
    gaussian_binomial(n - 1, k - 1, q)
        + q.pow(k) * gaussian_binomial(n - 1, k, q)
}

/// Every `f`-dimensional subspace of `k^r`, each as the unique `f x r`
/// reduced-row-echelon basis matrix; enumerated by pivot-column set, then
/// by free entries in row-major draw order.
pub fn subspace_bases(field: PrimeField, r: u32, f: u32) -> Vec<PrimeMatrix> {
    let p = field.modulus();
    let mut out = Vec::new();
    for pivots in index_sets(r, f) {
        let cols: Vec<usize> = pivots.elements().iter().map(|&x| x as usize - 1).collect();
        // Free positions: to the right of each pivot, excluding later
        // pivot columns.
        let mut free: Vec<(usize, usize)> = Vec::new();
        for (i, &pc) in cols.iter().enumerate() {
            for j in (pc + 1)..r as usize {
                if !cols.contains(&j) {
                    free.push((i, j));
                }
            }
        }
        let mut assignment = vec![0u64; free.len()];
        loop {
            let mut mat = PrimeMatrix::zeros(field, f as usize, r as usize);
            for (i, &pc) in cols.iter().enumerate() {
                mat.set(i, pc, 1);
            }
            for (slot, &(i, j)) in free.iter().enumerate() {
                mat.set(i, j, assignment[slot]);
            }
            out.push(mat);
            // Odometer over the free entries.
            let mut k = 0;
            while k < assignment.len() {
                assignment[k] += 1;
                if assignment[k] < p {
                    break;
                }
                assignment[k] = 0;
                k += 1;
            }
            if assignment.is_empty() || k == assignment.len() {
                break;
            }
        }
    }
    out
}

/// Count triples `(S, S', T)` with `dim S = dim S' = f` and
/// `T = S /\ S'` of dimension exactly `g`, by exhaustive enumeration
/// over the field with `modulus` elements.
pub fn subspace_pair_count(r: u32, f: u32, g: u32, modulus: u64) -> Result<u64> {
    if f > r || g > f {
        return Err(Error::invalid("need g <= f <= r"));
    }
    let field = PrimeField::new(modulus)?;
    let bases = subspace_bases(field, r, f);
    let mut count = 0u64;
    for s1 in &bases {
        for s2 in &bases {
            // dim(S + S') via the rank of the stacked bases.
            let stacked = s1.transpose().hstack(&s2.transpose())?;
            let meet = 2 * f as usize - stacked.rank();
            if meet == g as usize {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Closed form for [`subspace_pair_count`]: choose `T`, then two
/// complementary extensions to dimension `f` in the quotient by `T`.
pub fn subspace_pair_count_formula(r: u32, f: u32, g: u32, q: u64) -> u64 {
    let shells = gaussian_binomial(r, g, q)
        * gaussian_binomial(r - g, f - g, q)
        * gaussian_binomial(r - f, f - g, q);
    if shells == 0 {
        // Infeasible shapes short-circuit before the power, which can
        // overflow for extensions that do not exist anyway.
        return 0;
    }
    shells * q.pow((f - g) * (f - g))
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_sets_are_lexicographic_and_complete() {
        let sets = index_sets(4, 2);
        let rendered: Vec<String> = sets.iter().map(|s| s.to_string()).collect();
        assert_eq!(rendered, vec!["1,2", "1,3", "1,4", "2,3", "2,4", "3,4"]);
        assert_eq!(index_sets(6, 3).len(), 20);
        assert_eq!(index_sets(3, 0).len(), 1);
        assert_eq!(index_sets(3, 3).len(), 1);
    }

    #[test]
    fn box_partitions_are_complete() {
        let all = partitions_in_box(2, 2);
        assert_eq!(all.len(), 6);
        assert_eq!(all.first().unwrap(), &Partition::empty());
        assert_eq!(all.last().unwrap(), &Partition::new(vec![2, 2]).unwrap());
        // The count of partitions in an r x w box is C(r + w, r).
        assert_eq!(partitions_in_box(3, 4).len(), 35);
        assert_eq!(partitions_in_box(0, 5).len(), 1);
    }

    #[test]
    fn problem_enumeration_counts() {
        // Two index sets, multisets of size three: 4 of them.
        assert_eq!(enumerate_problems(2, 1, 3).len(), 4);
        // Deduplication up to permutation: C(6 + 2, 3) multisets.
        assert_eq!(enumerate_problems(4, 2, 3).len(), 56);
    }

    #[test]
    fn codim_corpus_projective_line() {
        let corpus = enumerate_codim_problems(1, 2, 3);
        assert_eq!(corpus.len(), 1);
        assert_eq!(format_tuple(corpus[0].sets()), "1:2:2");
    }

    #[test]
    fn codim_corpus_matches_filtering() {
        for (r, n, s) in [(2, 4, 3), (2, 4, 4), (1, 3, 3)] {
            let direct = enumerate_codim_problems(r, n, s);
            let filtered: Vec<SchubertProblem> = enumerate_problems(n, r, s)
                .into_iter()
                .filter(SchubertProblem::codim_condition_holds)
                .collect();
            assert_eq!(direct, filtered, "r={r} n={n} s={s}");
        }
    }

    #[test]
    fn codim_corpus_degenerate_box() {
        let corpus = enumerate_codim_problems(2, 2, 3);
        assert_eq!(corpus.len(), 1);
        assert_eq!(format_tuple(corpus[0].sets()), "1,2:1,2:1,2");
    }

    #[test]
    fn ktt_scan_on_the_four_factor_corpus() {
        let report = ktt_scan(2, 4, 4, 4, Threading::Sequential).unwrap();
        assert!(report.verdict, "failures: {:?}", report.failures);
        assert!(report.problems > 0);
        // The corpus contains value-2 problems (four generic lines).
        assert!(report.counts_by_intersection.get(&2).copied().unwrap_or(0) >= 1);
        assert!(report.semistable_checked > 0);
    }

    #[test]
    fn ktt_scan_is_threading_invariant() {
        let seq = ktt_scan(2, 4, 3, 3, Threading::Sequential).unwrap();
        let par = ktt_scan(2, 4, 3, 3, Threading::Parallel).unwrap();
        assert_eq!(
            serde_json::to_string(&seq).unwrap(),
            serde_json::to_string(&par).unwrap()
        );
    }

    #[test]
    fn recursion_matches_expansion_on_small_corpora() {
        let report = horn_vs_oracle_scan(2, 5, 3, Threading::Parallel).unwrap();
        assert!(report.verdict, "mismatches: {:?}", report.mismatches);
        assert!(report.problems > 100);
    }

    #[test]
    fn random_comparison_is_deterministic() {
        let a = horn_vs_oracle_random(40, 4, 123, Threading::Sequential).unwrap();
        let b = horn_vs_oracle_random(40, 4, 123, Threading::Parallel).unwrap();
        assert!(a.verdict);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn dimension_campaign_small() {
        let report = dimension_campaign(
            12,
            3,
            3,
            3,
            PrimeField::default_field(),
            2024,
            Threading::Parallel,
        )
        .unwrap();
        assert!(report.verdict, "failures: {:?}", report.failures);
        assert!(report.first_seed_passes >= report.instances - 1);
        assert!(report.evaluations >= report.instances);
    }

    #[test]
    fn restriction_campaign_small() {
        let report = restriction_campaign(
            12,
            3,
            3,
            3,
            PrimeField::default_field(),
            77,
            Threading::Parallel,
        )
        .unwrap();
        assert!(report.verdict, "failures: {:?}", report.failures);
        assert!(report.first_seed_passes >= report.instances - 1);
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(3, 1, 2), 7);
        assert_eq!(gaussian_binomial(3, 2, 3), 13);
        assert_eq!(gaussian_binomial(5, 0, 7), 1);
        assert_eq!(gaussian_binomial(2, 3, 2), 0);
    }

    #[test]
    fn subspace_enumeration_matches_the_count() {
        let f2 = PrimeField::new(2).unwrap();
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(subspace_bases(f2, 4, 2).len(), 35);
        assert_eq!(subspace_bases(f3, 3, 1).len(), 13);
        assert_eq!(subspace_bases(f2, 3, 3).len(), 1);
        assert_eq!(subspace_bases(f2, 3, 0).len(), 1);
    }

    #[test]
    fn pair_count_planes_in_three_space() {
        // Two distinct planes of k^3 meet in a line: 7 * 6 = 42 pairs
        // over the 2-element field.
        assert_eq!(subspace_pair_count(3, 2, 1, 2).unwrap(), 42);
        assert_eq!(subspace_pair_count_formula(3, 2, 1, 2), 42);
        // Coincident planes: one per plane.
        assert_eq!(subspace_pair_count(3, 2, 2, 2).unwrap(), 7);
        assert_eq!(subspace_pair_count_formula(3, 2, 2, 2), 7);
        // Planes never meet in a point there.
        assert_eq!(subspace_pair_count(3, 2, 0, 2).unwrap(), 0);
        assert_eq!(subspace_pair_count_formula(3, 2, 0, 2), 0);
    }

    #[test]
    fn pair_counts_match_the_closed_form_at_small_rank() {
        for q in [2u64, 3] {
            for r in 2..=3u32 {
                for f in 1..r {
                    for g in 0..=f {
                        assert_eq!(
                            subspace_pair_count(r, f, g, q).unwrap(),
                            subspace_pair_count_formula(r, f, g, q),
                            "r={r} f={f} g={g} q={q}"
                        );
                    }
                }
            }
        }
    }
}
