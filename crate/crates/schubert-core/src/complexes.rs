//! Two-step complexes over a prime field.
//!
//! A map `phi: M -> Q` (with `dim M = m`, `dim Q = q`) is constrained, for
//! each of `s` pairs of flags `(F^p, G^p)`, by step bounds
//! `phi(F^p_a) <= G^p_{theta^p_a}`.  Stacking the violated-coordinate
//! functionals for all factors gives one explicit matrix `gamma` from
//! `Hom(M, Q)` to the sum of the constraint quotients; its kernel dimension
//! `h0` is the constrained Hom space, `h1` measures the failure of the
//! constraints to be independent, and `chi = h0 - h1` is determined by the
//! step bounds alone.  Everything is exact Gaussian elimination — no
//! genericity is assumed, only measured.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::horn;
use crate::linalg::{
    derive_seed, random_matrix, rng_from_seed, PrimeField, PrimeFlag, PrimeMatrix,
};
use crate::partitions::{format_tuple, IndexSet, SchubertProblem};

/// Step bounds for all `s` factors: sequence `p` has length `m` with
/// entries nondecreasing in `[0, q]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepProfile {
    m: usize,
    q: u32,
    seqs: Vec<Vec<u32>>,
}

impl StepProfile {
    pub fn new(m: usize, q: u32, seqs: Vec<Vec<u32>>) -> Result<Self> {
        for seq in &seqs {
            if seq.len() != m {
                return Err(Error::invalid("step sequence has the wrong length"));
            }
            for a in 0..seq.len() {
                if seq[a] > q || (a > 0 && seq[a] < seq[a - 1]) {
                    return Err(Error::invalid(format!(
                        "step sequence {seq:?} is not nondecreasing within [0, {q}]"
                    )));
                }
            }
        }
        Ok(StepProfile { m, q, seqs })
    }

    /// Bounds read off an index-set tuple: sequence entry `a` is `H_a - a`.
    /// Each `H^p` must be an `m`-subset of `[q + m]` for common `m`, `q`.
    pub fn from_index_sets(h_sets: &[IndexSet]) -> Result<Self> {
        let first = h_sets
            .first()
            .ok_or_else(|| Error::invalid("empty index-set tuple"))?;
        let m = first.len();
        let ambient = first.ambient();
        if ambient < m as u32 {
            return Err(Error::invalid("index set larger than its ambient"));
        }
        let q = ambient - m as u32;
        let mut seqs = Vec::with_capacity(h_sets.len());
        for h in h_sets {
            if h.len() != m || h.ambient() != ambient {
                return Err(Error::invalid("mismatched index sets in tuple"));
            }
            let seq: Vec<u32> = (1..=m).map(|a| h.at(a) - a as u32).collect();
            seqs.push(seq);
        }
        StepProfile::new(m, q, seqs)
    }

    pub fn domain_dim(&self) -> usize {
        self.m
    }

    pub fn codomain_dim(&self) -> u32 {
        self.q
    }

    pub fn factors(&self) -> usize {
        self.seqs.len()
    }

    pub fn sequences(&self) -> &[Vec<u32>] {
        &self.seqs
    }
}

/// Dimension of the constraint subspace cut out by one step sequence:
/// the sum of its entries.
pub fn step_space_dim(seq: &[u32]) -> u64 {
    seq.iter().map(|&x| u64::from(x)).sum()
}

/// Exact cohomology of the two-step complex: `h0` constrained maps,
/// `h1` excess, `chi = h0 - h1`, and the rank of the assembled matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TwoStepReport {
    pub h0: usize,
    pub h1: usize,
    pub chi: i64,
    pub rank: usize,
}

/// Assemble the constraint matrix and eliminate.
///
/// Coordinates: `phi` is a `q x m` matrix, vectorized row-major.  For
/// factor `p` with domain basis `A = F^p` and codomain inverse basis
/// `Binv = (G^p)^{-1}`, the entry `(Binv phi A)[i, a]` must vanish for
/// every `i > theta^p_a` (1-based); each such pair contributes one row
/// with coefficient `Binv[i, j] * A[k, a]` on the variable `phi[j, k]`.
pub fn two_step_report(
    flags_m: &[PrimeFlag],
    flags_q: &[PrimeFlag],
    profile: &StepProfile,
) -> Result<TwoStepReport> {
    let s = profile.factors();
    if flags_m.len() != s || flags_q.len() != s {
        return Err(Error::invalid("flag tuples do not match the step profile"));
    }
    let m = profile.domain_dim();
    let q = profile.codomain_dim() as usize;
    let field = flags_m
        .first()
        .map(PrimeFlag::field)
        .unwrap_or_else(PrimeField::default_field);
    for flag in flags_m {
        if flag.dim() != m || flag.field() != field {
            return Err(Error::invalid("domain flag has the wrong shape"));
        }
    }
    for flag in flags_q {
        if flag.dim() != q || flag.field() != field {
            return Err(Error::invalid("codomain flag has the wrong shape"));
        }
    }

    let vars = m * q;
    let gamma = constraint_matrix(flags_m, flags_q, profile)?;
    let cod = gamma.rows();
    let rank = gamma.rank();
    let h0 = vars - rank;
    let h1 = cod - rank;
    let chi = h0 as i64 - h1 as i64;
    // The Euler characteristic must equal the value forced by the step
    // bounds alone; this pins down the rank bookkeeping.
    let chi_formula = (vars as i64)
        - profile
            .seqs
            .iter()
            .flatten()
            .map(|&t| q as i64 - i64::from(t))
            .sum::<i64>();
    assert_eq!(chi, chi_formula, "Euler characteristic mismatch");
    Ok(TwoStepReport { h0, h1, chi, rank })
}

/// Dimension of the Hom space constrained by an index-set tuple:
/// `h0` of the complex with bounds `theta^p_a = H^p_a - a`.
pub fn hom_space_dim(
    flags_m: &[PrimeFlag],
    flags_q: &[PrimeFlag],
    h_sets: &[IndexSet],
) -> Result<usize> {
    let profile = StepProfile::from_index_sets(h_sets)?;
    Ok(two_step_report(flags_m, flags_q, &profile)?.h0)
}

/// Whether any nonzero constrained map exists for the given flags.
pub fn theta_section_vanishes(
    flags_m: &[PrimeFlag],
    flags_q: &[PrimeFlag],
    i_sets: &[IndexSet],
) -> Result<bool> {
    Ok(hom_space_dim(flags_m, flags_q, i_sets)? > 0)
}

/// The generic shape of the constrained Hom space: its dimension `d`, the
/// kernel dimension `e` of a generic element, and the kernel's position
/// against each domain flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomData {
    pub d: usize,
    pub e: usize,
    pub positions: Vec<IndexSet>,
}

impl HomData {
    pub fn positions_string(&self) -> String {
        format_tuple(&self.positions)
    }
}

/// As [`hom_data`], additionally returning the sampled maximal-rank
/// element (the zero matrix when the space is zero).
pub(crate) fn hom_data_with_representative(
    flags_m: &[PrimeFlag],
    flags_q: &[PrimeFlag],
    h_sets: &[IndexSet],
    trials: u32,
    seed: u64,
) -> Result<(HomData, PrimeMatrix)> {
    if trials == 0 {
        return Err(Error::invalid("at least one sampling trial is required"));
    }
    let profile = StepProfile::from_index_sets(h_sets)?;
    let m = profile.domain_dim();
    let q = profile.codomain_dim() as usize;
    let field = flags_m
        .first()
        .map(PrimeFlag::field)
        .unwrap_or_else(PrimeField::default_field);

    let report = two_step_report(flags_m, flags_q, &profile)?;
    let d = report.h0;
    if d == 0 {
        // Only the zero map: its kernel is all of the domain.
        let data = HomData {
            d: 0,
            e: m,
            positions: flags_m.iter().map(|_| IndexSet::full(m as u32)).collect(),
        };
        return Ok((data, PrimeMatrix::zeros(field, q, m)));
    }
    // A basis of the constrained Hom space in vectorized coordinates
    // (two_step_report only reports ranks).
    let kernel = constraint_matrix(flags_m, flags_q, &profile)?.kernel_basis();
    debug_assert_eq!(kernel.cols(), d);

    let mut rng = rng_from_seed(seed);
    let mut best_rank = 0;
    let mut best: Option<PrimeMatrix> = None;
    for _ in 0..trials {
        let coeffs = random_matrix(field, d, 1, &mut rng);
        let vectorized = kernel.mul(&coeffs)?;
        let mut phi = PrimeMatrix::zeros(field, q, m);
        for j in 0..q {
            for k in 0..m {
                phi.set(j, k, vectorized.get(j * m + k, 0));
            }
        }
        let rank = phi.rank();
        if best.is_none() || rank > best_rank {
            best_rank = rank;
            best = Some(phi);
        }
    }
    let phi = best.expect("trials >= 1");
    let e = m - best_rank;
    let r_mat = phi.kernel_basis();
    debug_assert_eq!(r_mat.cols(), e);
    let positions = flags_m
        .iter()
        .map(|flag| flag.subspace_position(&r_mat))
        .collect::<Result<Vec<_>>>()?;
    Ok((HomData { d, e, positions }, phi))
}

fn constraint_matrix(
    flags_m: &[PrimeFlag],
    flags_q: &[PrimeFlag],
    profile: &StepProfile,
) -> Result<PrimeMatrix> {
    let s = profile.factors();
    let m = profile.domain_dim();
    let q = profile.codomain_dim() as usize;
    let field = flags_m
        .first()
        .map(PrimeFlag::field)
        .unwrap_or_else(PrimeField::default_field);
    let cod: usize = profile
        .seqs
        .iter()
        .map(|seq| seq.iter().map(|&t| q - t as usize).sum::<usize>())
        .sum();
    let mut gamma = PrimeMatrix::zeros(field, cod, m * q);
    let mut row = 0;
    for p in 0..s {
        let a_mat = flags_m[p].basis();
        let b_inv = flags_q[p].inverse_basis();
        for a in 0..m {
            for i in profile.seqs[p][a] as usize..q {
                for j in 0..q {
                    let bij = b_inv.get(i, j);
                    if bij == 0 {
                        continue;
                    }
                    for k in 0..m {
                        let coeff = field.mul(bij, a_mat.get(k, a));
                        gamma.set(row, j * m + k, field.add(gamma.get(row, j * m + k), coeff));
                    }
                }
                row += 1;
            }
        }
    }
    Ok(gamma)
}

/// Sample the generic shape of the constrained Hom space: dimension,
/// generic kernel dimension (maximal rank over `trials` random elements,
/// deterministic in `seed`), and the kernel's flag positions.
pub fn hom_data(
    flags_m: &[PrimeFlag],
    flags_q: &[PrimeFlag],
    h_sets: &[IndexSet],
    trials: u32,
    seed: u64,
) -> Result<HomData> {
    hom_data_with_representative(flags_m, flags_q, h_sets, trials, seed).map(|(data, _)| data)
}

/// Diagnostic for a pair of constrained Hom spaces on the same flags: the
/// two generic shapes plus the dimension and positions of the intersection
/// of the two generic kernels.  No structural claim is made about this
/// data; it is exposed for inspection only.
#[derive(Clone, Debug)]
pub struct HomPairData {
    pub first: HomData,
    pub second: HomData,
    pub g: usize,
    pub intersection_positions: Vec<IndexSet>,
}

pub fn hom_pair_data(
    flags_m: &[PrimeFlag],
    flags_q: &[PrimeFlag],
    h_sets: &[IndexSet],
    h2_sets: &[IndexSet],
    trials: u32,
    seed: u64,
) -> Result<HomPairData> {
    let (first, phi) =
        hom_data_with_representative(flags_m, flags_q, h_sets, trials, derive_seed(seed, 1))?;
    let (second, psi) =
        hom_data_with_representative(flags_m, flags_q, h2_sets, trials, derive_seed(seed, 2))?;
    // Common kernel: stack the two maps vertically.
    let stacked = phi
        .transpose()
        .hstack(&psi.transpose())?
        .transpose();
    let t_mat = stacked.kernel_basis();
    let g = t_mat.cols();
    let intersection_positions = flags_m
        .iter()
        .map(|flag| flag.subspace_position(&t_mat))
        .collect::<Result<Vec<_>>>()?;
    Ok(HomPairData {
        first,
        second,
        g,
        intersection_positions,
    })
}

/// One sampled comparison of measured against expected Hom dimension.
#[derive(Clone, Debug, Serialize)]
pub struct DimensionSample {
    pub flag_seed: u64,
    pub attempts: u32,
    pub sampled: usize,
    pub expected: i64,
    pub nonzero: bool,
    pub pass: bool,
    pub first_seed_pass: bool,
}

/// Outcome of a sampling campaign for one index-set tuple.
#[derive(Clone, Debug, Serialize)]
pub struct DimensionCheckReport {
    pub schema: u32,
    pub positions: String,
    pub m: usize,
    pub q: u32,
    pub prime: u64,
    pub base_seed: u64,
    pub instances: u32,
    pub passes: u32,
    pub first_seed_passes: u32,
    pub complexes_checked: u32,
    pub samples: Vec<DimensionSample>,
    pub verdict: bool,
}

/// Compare the measured dimension of the constrained Hom space against its
/// expected value, over `instances` independently sampled flag tuples.
///
/// When the position product is nonzero, the measured dimension must equal
/// the expected value exactly.  When it is zero, consistency means the
/// measured dimension differs from the expected value (a nonnegative
/// measurement never matches a negative expectation, and at a vanishing
/// product the measured value on special flags exceeds the generic one).
/// Each failed instance is resampled up to `retries` extra times with
/// derived seeds; `first_seed_pass` records whether the first draw already
/// passed.
pub fn dimension_check(
    h_sets: &[IndexSet],
    instances: u32,
    retries: u32,
    field: PrimeField,
    base_seed: u64,
) -> Result<DimensionCheckReport> {
    let first = h_sets
        .first()
        .ok_or_else(|| Error::invalid("empty index-set tuple"))?;
    let m = first.len();
    let q = first.ambient() - m as u32;
    let expected = horn::expected_hom_dim(h_sets, m as u32, q)?;
    let problem = SchubertProblem::new(first.ambient(), m as u32, h_sets.to_vec())?;
    let nonzero = horn::horn_nonzero(&problem)?;

    let mut samples = Vec::with_capacity(instances as usize);
    let mut passes = 0;
    let mut first_seed_passes = 0;
    let mut complexes_checked = 0;
    for i in 0..instances {
        let instance_seed = derive_seed(base_seed, u64::from(i));
        let mut chosen: Option<DimensionSample> = None;
        for attempt in 0..=retries {
            let flag_seed = derive_seed(instance_seed, u64::from(attempt));
            let flags_m = sample_flag_tuple(field, m, h_sets.len(), flag_seed, 0);
            let flags_q = sample_flag_tuple(field, q as usize, h_sets.len(), flag_seed, 1);
            let sampled = hom_space_dim(&flags_m, &flags_q, h_sets)?;
            complexes_checked += 1;
            let pass = if nonzero {
                sampled as i64 == expected
            } else {
                expected < 0 || sampled as i64 != expected
            };
            let record = DimensionSample {
                flag_seed,
                attempts: attempt + 1,
                sampled,
                expected,
                nonzero,
                pass,
                first_seed_pass: pass && attempt == 0,
            };
            if pass {
                chosen = Some(record);
                break;
            }
            chosen = Some(record);
        }
        let record = chosen.expect("at least one attempt runs");
        if record.pass {
            passes += 1;
        }
        if record.first_seed_pass {
            first_seed_passes += 1;
        }
        samples.push(record);
    }
    let verdict = passes == instances;
    Ok(DimensionCheckReport {
        schema: 1,
        positions: format_tuple(h_sets),
        m,
        q,
        prime: field.modulus(),
        base_seed,
        instances,
        passes,
        first_seed_passes,
        complexes_checked,
        samples,
        verdict,
    })
}

/// The stable seed-to-flags map used by every sampling entry point: factor
/// `p` on side `side` (0 = domain, 1 = codomain) draws its flag from
/// `derive_seed(seed, side * 1000 + p)`.
pub fn sample_flag_tuple(
    field: PrimeField,
    dim: usize,
    count: usize,
    seed: u64,
    side: u64,
) -> Vec<PrimeFlag> {
    (0..count)
        .map(|p| PrimeFlag::random(field, dim, derive_seed(seed, side * 1000 + p as u64)))
        .collect()
}

/// Outcome of one restriction-transfer comparison: `h1` of the full
/// complex against `h1` of the complex restricted to a generic kernel.
#[derive(Clone, Debug, Serialize)]
pub struct RestrictionTransferReport {
    pub h1_full: usize,
    pub h1_restricted: usize,
    pub kernel_dim: usize,
    pub kernel_positions: String,
    pub shifted_positions: String,
    /// Set when the generic kernel is zero but the full complex has
    /// nonzero `h1`, so the comparison is vacuous rather than confirmed.
    pub flagged: bool,
    pub equal: bool,
}

/// Compare `h1` of the complex for `h_sets` with `h1` of the complex
/// restricted to the kernel `R` of a generic constrained map: the domain
/// becomes `R` with its induced flags and the positions shift to
/// `Y_a = H_{E_a} - E_a + a` where `E` is the position of `R`.
///
/// When `R = 0` the restricted `h1` is defined as 0; the report is flagged
/// unless the full `h1` is also 0.  When the Hom space is zero, `R` is the
/// whole domain and the restricted complex is the full one.
pub fn restriction_transfer_check(
    flags_m: &[PrimeFlag],
    flags_q: &[PrimeFlag],
    h_sets: &[IndexSet],
    trials: u32,
    seed: u64,
) -> Result<RestrictionTransferReport> {
    let profile = StepProfile::from_index_sets(h_sets)?;
    let full = two_step_report(flags_m, flags_q, &profile)?;
    let (data, phi) = hom_data_with_representative(flags_m, flags_q, h_sets, trials, seed)?;
    let r_mat = phi.kernel_basis();
    let e = r_mat.cols();
    debug_assert_eq!(e, data.e);

    if e == 0 {
        let flagged = full.h1 != 0;
        return Ok(RestrictionTransferReport {
            h1_full: full.h1,
            h1_restricted: 0,
            kernel_dim: 0,
            kernel_positions: data.positions_string(),
            shifted_positions: String::from("-"),
            flagged,
            equal: !flagged,
        });
    }

    let induced: Vec<PrimeFlag> = flags_m
        .iter()
        .map(|flag| flag.induced_on_subspace(&r_mat))
        .collect::<Result<Vec<_>>>()?;
    let shifted: Vec<IndexSet> = h_sets
        .iter()
        .zip(&data.positions)
        .map(|(h, e_set)| h.kernel_position_shift(e_set))
        .collect::<Result<Vec<_>>>()?;
    let restricted_profile = StepProfile::from_index_sets(&shifted)?;
    let restricted = two_step_report(&induced, flags_q, &restricted_profile)?;
    Ok(RestrictionTransferReport {
        h1_full: full.h1,
        h1_restricted: restricted.h1,
        kernel_dim: e,
        kernel_positions: data.positions_string(),
        shifted_positions: format_tuple(&shifted),
        flagged: false,
        equal: full.h1 == restricted.h1,
    })
}

// ---------------------------------------------------------------------------
