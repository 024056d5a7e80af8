//! The recursive Horn criterion for non-vanishing of Schubert products,
//! and the dimension bookkeeping that accompanies it.
//!
//! A product of Schubert classes on `Gr(r, n)` survives if and only if its
//! index sets satisfy one linear inequality for every "essential position":
//! every cardinality `0 < f <= r` and every `s`-tuple `K` of `f`-subsets of
//! `[r]` whose own Schubert product survives on `Gr(f, r)`.  The inequality
//! bound by `(K, f)` is
//!
//! ```text
//! sum_p sum_a ((n - r) + K^p_a - I^p_{K^p_a})  <=  f (n - r),
//! ```
//!
//! and the recursion bottoms out in projective spaces (`r = 1`), where the
//! product survives exactly when the total codimension is at most `n - 1`,
//! and in `Gr(r, r)`, a point.  Decisions are memoized per problem in a
//! process-wide concurrent map.
//!
//! The same module hosts [`expected_hom_dim`] (the Euler-characteristic
//! count for flagged `Hom` spaces), [`dimension_ledger`] (relative dimensions
//! of the incidence loci used to compare those `Hom` spaces over varying
//! flags and subspace pairs), and [`filtration_codim_identity`] (an index
//! rearrangement that converts step sums into partition weights).

use dashmap::DashMap;
use once_cell::sync::Lazy;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::harness::index_sets;
use crate::partitions::{format_tuple, IndexSet, SchubertProblem};

/// Essential position tuples for one (r, f, s) signature.
type PositionLists = Vec<Vec<IndexSet>>;

static MEMO: Lazy<DashMap<SchubertProblem, bool>> = Lazy::new(DashMap::new);
static POSITIONS: Lazy<DashMap<(u32, u32, usize), PositionLists>> = Lazy::new(DashMap::new);

/// Forget memoized Horn decisions and essential-position lists.
pub fn clear_memo() {
    MEMO.clear();
    POSITIONS.clear();
}

// ---------------------------------------------------------------------------
// The criterion
// ---------------------------------------------------------------------------

/// Value of the Horn inequality bound by the position tuple `k_sets`
/// (common cardinality `f`, subsets of `[r]`):
///
/// ```text
/// sum_p sum_a ((n - r) + K^p_a - I^p_{K^p_a})  -  f (n - r).
/// ```
///
/// Non-positive values mean the inequality holds.
pub fn horn_inequality_value(problem: &SchubertProblem, k_sets: &[IndexSet]) -> Result<i64> {
    let r = problem.r();
    if k_sets.len() != problem.s() {
        return Err(Error::invalid(format!(
            "position tuple has {} entries but the problem has {} factors",
            k_sets.len(),
            problem.s()
        )));
    }
    let f = k_sets
        .first()
        .map(IndexSet::len)
        .unwrap_or(0);
    if f == 0 {
        return Err(Error::invalid("position sets must be non-empty"));
    }
    for k in k_sets {
        if k.ambient() != r || k.len() != f {
            return Err(Error::invalid(format!(
                "position set {k} is not an {f}-subset of [{r}]"
            )));
        }
    }
    Ok(inequality_value(problem, k_sets))
}

/// Same as [`horn_inequality_value`] but with the preconditions already
/// guaranteed by the enumeration.
fn inequality_value(problem: &SchubertProblem, k_sets: &[IndexSet]) -> i64 {
    let q = i64::from(problem.n() - problem.r());
    let f = k_sets[0].len() as i64;
    let mut total: i64 = -f * q;
    for (i_set, k_set) in problem.sets().iter().zip(k_sets) {
        for &ka in k_set.elements() {
            total += q + i64::from(ka) - i64::from(i_set.at(ka as usize));
        }
    }
    total
}

/// Outcome of [`horn_decide`]: the decision plus, for vanishing products,
/// the first violated inequality in enumeration order.
#[derive(Clone, Debug, Serialize)]
pub struct HornDecision {
    pub nonzero: bool,
    pub violation: Option<HornViolation>,
}

/// A witness that the product vanishes.
#[derive(Clone, Debug, Serialize)]
pub struct HornViolation {
    /// Cardinality of the position sets.
    pub f: u32,
    /// The position tuple, in the `:`-joined text encoding.
    pub positions: String,
    /// Positive value of the violated inequality.
    pub value: i64,
}

/// Does the product of the problem's Schubert classes survive in
/// `H*(Gr(r, n))`, by the recursive inequality criterion?
///
/// Memoized on the problem (the key includes `n`: the same index sets in a
/// larger ambient space pose a different question).
pub fn horn_nonzero(problem: &SchubertProblem) -> Result<bool> {
    if let Some(hit) = MEMO.get(problem) {
        return Ok(*hit);
    }
    // Fast bases; `decide` would reach the same answers through the f = r
    // inequality and the Gr(1, 1) recursion floor.
    let nonzero = if problem.n() == problem.r() {
        true
    } else if problem.r() == 1 {
        problem.total_codim() <= u64::from(problem.n() - 1)
    } else {
        decide(problem)?.nonzero
    };
    MEMO.insert(problem.clone(), nonzero);
    Ok(nonzero)
}

/// Like [`horn_nonzero`], but scans the inequalities in deterministic order
/// (cardinality `f` ascending, position tuples lexicographic) and reports
/// the first violated one when the product vanishes.
pub fn horn_decide(problem: &SchubertProblem) -> Result<HornDecision> {
    if problem.n() == problem.r() {
        return Ok(HornDecision {
            nonzero: true,
            violation: None,
        });
    }
    let decision = decide(problem)?;
    MEMO.insert(problem.clone(), decision.nonzero);
    Ok(decision)
}

fn decide(problem: &SchubertProblem) -> Result<HornDecision> {
    let r = problem.r();
    let s = problem.s();
    for f in 1..=r {
        for k_tuple in enumerate_essential_positions(r, f, s)? {
            let value = inequality_value(problem, &k_tuple);
            if value > 0 {
                return Ok(HornDecision {
                    nonzero: false,
                    violation: Some(HornViolation {
                        f,
                        positions: format_tuple(&k_tuple),
                        value,
                    }),
                });
            }
        }
    }
    Ok(HornDecision {
        nonzero: true,
        violation: None,
    })
}

/// All `s`-tuples of `f`-subsets of `[r]` whose own Schubert product
/// survives on `Gr(f, r)` — the positions an `f`-dimensional subspace can
/// occupy relative to a generic tuple of full flags.  Lexicographic order;
/// memoized per `(r, f, s)`.
pub fn enumerate_essential_positions(r: u32, f: u32, s: usize) -> Result<Vec<Vec<IndexSet>>> {
    if f == 0 || f > r {
        return Err(Error::invalid(format!("need 0 < f <= r, got f = {f}, r = {r}")));
    }
    if s < 3 {
        return Err(Error::invalid(format!("need at least 3 factors, got {s}")));
    }
    let key = (r, f, s);
    if let Some(hit) = POSITIONS.get(&key) {
        return Ok(hit.clone());
    }
    let singles = index_sets(r, f);
    let mut out = Vec::new();
    let mut odometer = vec![0usize; s];
    loop {
        let tuple: Vec<IndexSet> = odometer.iter().map(|&i| singles[i].clone()).collect();
        let sub = SchubertProblem::new(r, f, tuple.clone())?;
        if horn_nonzero(&sub)? {
            out.push(tuple);
        }
        // Advance the odometer (least significant position last, so the
        // emitted order is lexicographic).
        let mut pos = s;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            odometer[pos] += 1;
            if odometer[pos] < singles.len() {
                break;
            }
            odometer[pos] = 0;
        }
        if odometer.iter().all(|&i| i == 0) {
            break;
        }
    }
    POSITIONS.insert(key, out.clone());
    Ok(out)
}

// ---------------------------------------------------------------------------
// Expected Hom dimension
// ---------------------------------------------------------------------------

/// Euler-characteristic count for the space of maps `M -> Q` (`dim M = m`,
/// `dim Q = q`) respecting an `s`-tuple of flagged profiles `H^p` (subsets
/// of `[q + m]` of cardinality `m`):
///
/// ```text
/// m q - sum_p sum_a (q + a - H^p_a).
/// ```
///
/// May be negative; callers compare it against sampled kernel dimensions.
pub fn expected_hom_dim(h_sets: &[IndexSet], m: u32, q: u32) -> Result<i64> {
    if h_sets.len() < 3 {
        return Err(Error::invalid(format!(
            "need at least 3 profiles, got {}",
            h_sets.len()
        )));
    }
    let mut total = i64::from(m) * i64::from(q);
    for h in h_sets {
        if h.ambient() != q + m || h.len() as u32 != m {
            return Err(Error::invalid(format!(
                "profile {h} is not an {m}-subset of [{}]",
                q + m
            )));
        }
        total -= i64::try_from(h.codim()).map_err(|_| Error::Overflow("expected dim"))?;
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Dimension ledger
// ---------------------------------------------------------------------------

/// Inputs for [`dimension_ledger`].  The tuples must share a common length
/// `s >= 3`:
///
/// * `sets_e`: `e`-subsets of `[m]` (kernel positions in the source);
/// * `sets_h`: `m`-subsets of `[q + m]`, `q = n - r` (Hom profiles);
/// * `sets_i`: `r`-subsets of `[n]` (the Schubert problem);
/// * `sets_k`: `f`-subsets of `[r]` (positions of a subspace pair member);
/// * `sets_j`: `g`-subsets of `[r]` with `J^p` contained in `K^p`
///   elementwise (positions of the pair intersection).
#[derive(Clone, Debug)]
pub struct LedgerInput {
    pub m: u32,
    pub e: u32,
    pub n: u32,
    pub r: u32,
    pub f: u32,
    pub g: u32,
    pub sets_e: Vec<IndexSet>,
    pub sets_h: Vec<IndexSet>,
    pub sets_i: Vec<IndexSet>,
    pub sets_k: Vec<IndexSet>,
    pub sets_j: Vec<IndexSet>,
}

/// Relative dimensions of the incidence loci relating flagged `Hom` spaces,
/// subspace pairs, and the flag varieties over them.  All values are exact
/// signed integers; negative values flag an impossible (empty) locus.
#[derive(Clone, Debug, Serialize)]
pub struct DimensionLedger {
    /// Flag `s`-tuples through a fixed subspace of prescribed positions
    /// `E`, relative to the Grassmannian `Gr(e, m)` of such subspaces:
    /// `s * dim Fl(m) - sum_p |lambda(E^p)|`.
    pub flags_through_subspace: i64,
    /// Graph of flagged `Hom` elements with kernel positions `E` and
    /// profiles `H`, relative to the locus above:
    /// `(m - e) q + s * dim Fl(q) + sum_p sum_{a<=e} (q + E^p_a -
    /// H^p_{E^p_a}) - sum_p |lambda(H^p)|`.
    pub hom_graph: i64,
    /// Family of subspace pairs `(S, S')` of dimension `f` in an
    /// `r`-dimensional space meeting in dimension `g` (absolute):
    /// `2 (f - g)(r - f) + g (r - g)`.
    pub subspace_pairs: i64,
    /// Flag `s`-tuples with the pair in positions `(K, K')` and the
    /// intersection in positions `J`, relative to the pair family:
    /// `s * dim Fl(r) + sum_p (|lambda(J^p)| - 2 |lambda(K^p)| -
    /// 2 |lambda(N^p)|)` with `N^p` the positions of `J^p` inside `K^p`.
    pub flags_through_pair: i64,
    /// Graph of `Hom` pairs with kernels `(S, S')`, relative to the locus
    /// above: `2 (r - f)(n - r) + 2 s * dim Fl(n - r) + 2 sum_p
    /// (|lambda(L^p)| - |lambda(I^p)| - |lambda(K^p)|)` with
    /// `L^p_a = I^p_{K^p_a}`.
    pub hom_pair_graph: i64,
    /// Derived composite positions `L^p = I^p o K^p` (text encoding).
    pub composed_positions: String,
    /// Derived intersection positions `N^p` of `J^p` inside `K^p`.
    pub factored_positions: String,
}

fn dim_full_flag(d: u32) -> i64 {
    i64::from(d) * i64::from(d.saturating_sub(1)) / 2
}

/// Dimension of the family of pairs of `f`-dimensional subspaces of an
/// `r`-dimensional space meeting in dimension exactly `g`:
/// `2 (f - g)(r - f) + g (r - g)`.  Degenerate `g = f` (equal subspaces)
/// is allowed here, unlike in the full ledger.
pub fn subspace_pair_dimension(r: u32, f: u32, g: u32) -> Result<i64> {
    if g > f || f > r {
        return Err(Error::invalid(format!(
            "need g <= f <= r, got g = {g}, f = {f}, r = {r}"
        )));
    }
    Ok(2 * i64::from(f - g) * i64::from(r - f) + i64::from(g) * i64::from(r - g))
}

/// Compute every entry of the dimension ledger.  Requires `0 <= g < f < r`,
/// `1 <= e <= m`, and the tuple shapes documented on [`LedgerInput`].
pub fn dimension_ledger(input: &LedgerInput) -> Result<DimensionLedger> {
    let LedgerInput {
        m,
        e,
        n,
        r,
        f,
        g,
        ..
    } = *input;
    if g >= f || f >= r {
        return Err(Error::invalid(format!(
            "need 0 <= g < f < r, got g = {g}, f = {f}, r = {r}"
        )));
    }
    if e == 0 || e > m {
        return Err(Error::invalid(format!("need 0 < e <= m, got e = {e}, m = {m}")));
    }
    if r > n {
        return Err(Error::invalid(format!("need r <= n, got r = {r}, n = {n}")));
    }
    let s = input.sets_e.len();
    if s < 3 {
        return Err(Error::invalid(format!("need at least 3 factors, got {s}")));
    }
    for (tuple, ambient, card, name) in [
        (&input.sets_e, m, e, "E"),
        (&input.sets_h, (n - r) + m, m, "H"),
        (&input.sets_i, n, r, "I"),
        (&input.sets_k, r, f, "K"),
        (&input.sets_j, r, g, "J"),
    ] {
        if tuple.len() != s {
            return Err(Error::invalid(format!(
                "tuple {name} has {} entries, expected {s}",
                tuple.len()
            )));
        }
        for set in tuple.iter() {
            if set.ambient() != ambient || set.len() as u32 != card {
                return Err(Error::invalid(format!(
                    "{name} entry {set} is not a {card}-subset of [{ambient}]"
                )));
            }
        }
    }
    let q = n - r;
    let s_i64 = s as i64;

    let weight_sum = |sets: &[IndexSet]| -> i64 {
        sets.iter().map(|x| x.codim() as i64).sum()
    };

    let flags_through_subspace = s_i64 * dim_full_flag(m) - weight_sum(&input.sets_e);

    let mut kernel_profile_sum: i64 = 0;
    for (e_set, h_set) in input.sets_e.iter().zip(&input.sets_h) {
        for &ea in e_set.elements() {
            kernel_profile_sum +=
                i64::from(q) + i64::from(ea) - i64::from(h_set.at(ea as usize));
        }
    }
    let hom_graph = i64::from(m - e) * i64::from(q) + s_i64 * dim_full_flag(q)
        + kernel_profile_sum
        - weight_sum(&input.sets_h);

    let subspace_pairs = subspace_pair_dimension(r, f, g)?;

    let n_sets = input
        .sets_k
        .iter()
        .zip(&input.sets_j)
        .map(|(k, j)| k.factor(j))
        .collect::<Result<Vec<_>>>()?;
    let flags_through_pair = s_i64 * dim_full_flag(r) + weight_sum(&input.sets_j)
        - 2 * weight_sum(&input.sets_k)
        - 2 * weight_sum(&n_sets);

    let l_sets = input
        .sets_i
        .iter()
        .zip(&input.sets_k)
        .map(|(i, k)| i.compose(k))
        .collect::<Result<Vec<_>>>()?;
    let hom_pair_graph = 2 * i64::from(r - f) * i64::from(q)
        + 2 * s_i64 * dim_full_flag(q)
        + 2 * (weight_sum(&l_sets) - weight_sum(&input.sets_i) - weight_sum(&input.sets_k));

    Ok(DimensionLedger {
        flags_through_subspace,
        hom_graph,
        subspace_pairs,
        flags_through_pair,
        hom_pair_graph,
        composed_positions: format_tuple(&l_sets),
        factored_positions: format_tuple(&n_sets),
    })
}

// ---------------------------------------------------------------------------
// Filtration codimension identity
// ---------------------------------------------------------------------------

/// Check the rearrangement `k rho - sum_a L_a = |lambda(L)| + k (k - 1) / 2`
/// for a `k`-subset `L` of `[rho]`, computing both sides independently.
pub fn filtration_codim_identity(rho: u32, l_set: &IndexSet) -> Result<bool> {
    if l_set.ambient() != rho {
        return Err(Error::invalid(format!(
            "index set {l_set} does not live in [{rho}]"
        )));
    }
    let k = l_set.len() as i64;
    let element_sum: i64 = l_set.elements().iter().map(|&x| i64::from(x)).sum();
    let lhs = k * i64::from(rho) - element_sum;
    let rhs = l_set.codim() as i64 + k * (k - 1) / 2;
    Ok(lhs == rhs)
}

// ---------------------------------------------------------------------------
