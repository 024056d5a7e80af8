//! Littlewood-Richardson numbers and the ring H*(Gr(r, n)).
//!
//! The primitive here is [`lr_coefficient`]: `c^nu_{lambda,mu}` counted
//! directly as the number of column-strict skew tableaux of shape `nu/lambda`
//! and content `mu` whose reverse reading word is a lattice word.  Everything
//! else is layered on top of that count:
//!
//! * [`SchubertExpansion`] multiplies Schubert classes in the cohomology of a
//!   fixed Grassmannian, discarding partitions that leave the `r x (n-r)`
//!   box;
//! * [`intersection_number`] reads off the coefficient of the point class in
//!   an `s`-fold product;
//! * [`invariant_dimension`] computes `dim (V_{lambda^1} (x) ... (x)
//!   V_{lambda^s})^{SL_r}` by normalizing the weights and translating to an
//!   intersection number on the Grassmannian the tuple cuts out;
//! * [`stretch_sequence`] evaluates that dimension on the `N`-fold stretched
//!   tuple for `N = 1, ..., N_max` and fits the exact interpolating
//!   polynomial by finite differences.
//!
//! Computed coefficients are memoized in a process-wide concurrent map; the
//! map is write-once per key (re-deriving a key always produces the same
//! value), so concurrent scans may share it freely.  [`crate::cache`] can
//! seed the same map from disk.

use std::collections::BTreeMap;

use dashmap::DashMap;
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::partitions::{IndexSet, Partition, SchubertProblem};

pub(crate) type LrKey = (Partition, Partition, Partition);

static MEMO: Lazy<DashMap<LrKey, u64>> = Lazy::new(DashMap::new);

/// Forget every memoized coefficient (results are unaffected; used by
/// benchmarks and cache tests to measure cold starts).
pub fn clear_memo() {
    MEMO.clear();
}

/// Number of memoized coefficients.
pub fn memo_len() -> usize {
    MEMO.len()
}

/// Snapshot of the memo table in sorted key order.
pub(crate) fn memo_snapshot() -> Vec<(LrKey, u64)> {
    let mut entries: Vec<(LrKey, u64)> = MEMO
        .iter()
        .map(|e| (e.key().clone(), *e.value()))
        .collect();
    entries.sort();
    entries
}

/// Insert an externally computed coefficient (cache load).  Fails if it
/// disagrees with a value already present.
pub(crate) fn memo_seed(key: LrKey, value: u64) -> Result<()> {
    if let Some(existing) = MEMO.get(&key) {
        if *existing != value {
            return Err(Error::CacheConflict {
                key: format!("{}|{}|{}", key.0, key.1, key.2),
                existing: *existing,
                incoming: value,
            });
        }
        return Ok(());
    }
    MEMO.insert(key, value);
    Ok(())
}

// ---------------------------------------------------------------------------
// The coefficient itself
// ---------------------------------------------------------------------------

/// The Littlewood-Richardson coefficient `c^nu_{lambda,mu}`.
///
/// Counts column-strict skew tableaux of shape `nu/lambda` with content `mu`
/// (rows weakly increase left to right, columns strictly increase top to
/// bottom) whose reverse reading word — rows read right to left, top to
/// bottom — is a lattice word: every prefix contains at least as many `i`s
/// as `(i+1)`s.
///
/// Returns `0` whenever `|lambda| + |mu| != |nu|` or `lambda` is not
/// contained in `nu`.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
    if lambda.weight() + mu.weight() != nu.weight() || !nu.contains(lambda) {
        return Ok(0);
    }
    if mu.is_empty() {
        // The skew shape is empty, and the unique empty filling counts.
        return Ok(1);
    }
    let key = (lambda.clone(), mu.clone(), nu.clone());
    if let Some(v) = MEMO.get(&key) {
        return Ok(*v);
    }
    let count = count_lattice_tableaux(lambda, mu, nu)?;
    // Concurrent insertion of the same key always carries the same value.
    MEMO.insert(key, count);
    Ok(count)
}

/// One unfilled box of the skew shape, in reverse reading order.
struct Cell {
    row: usize,
    col: usize,
    /// The box directly above belongs to the skew shape (already filled).
    has_above: bool,
    /// The box directly to the right belongs to the skew shape.
    has_right: bool,
}

struct Counter {
    cells: Vec<Cell>,
    /// `grid[i][j]` is the entry at row `i`, column `j` (0 when unfilled;
    /// columns `< lambda_i` stay 0 and are never read).
    grid: Vec<Vec<u32>>,
    /// `placed[v-1]` = number of `v`s placed so far along the reverse
    /// reading word.
    placed: Vec<u64>,
    /// `target[v-1] = mu_v`.
    target: Vec<u64>,
    total: u64,
}

impl Counter {
    fn run(&mut self, idx: usize) -> Result<()> {
        if idx == self.cells.len() {
            self.total = self
                .total
                .checked_add(1)
                .ok_or(Error::Overflow("tableau count"))?;
            return Ok(());
        }
        let (row, col, lo, hi) = {
            let cell = &self.cells[idx];
            let lo = if cell.has_above {
                self.grid[cell.row - 1][cell.col] + 1
            } else {
                1
            };
            let hi = if cell.has_right {
                self.grid[cell.row][cell.col + 1]
            } else {
                self.target.len() as u32
            };
            (cell.row, cell.col, lo, hi)
        };
        for v in lo..=hi {
            let vi = (v - 1) as usize;
            if self.placed[vi] >= self.target[vi] {
                continue;
            }
            // Lattice condition: after placing this `v`, the prefix must
            // still hold at least as many `v-1`s.
            if v > 1 && self.placed[vi] >= self.placed[vi - 1] {
                continue;
            }
            self.placed[vi] += 1;
            self.grid[row][col] = v;
            self.run(idx + 1)?;
            self.grid[row][col] = 0;
            self.placed[vi] -= 1;
        }
        Ok(())
    }
}

fn count_lattice_tableaux(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
    let rows = nu.len();
    let mut cells = Vec::with_capacity((nu.weight() - lambda.weight()) as usize);
    for i in 0..rows {
        let lo = lambda.row(i) as usize;
        let hi = nu.row(i) as usize;
        for j in (lo..hi).rev() {
            let has_above = i > 0 && j >= lambda.row(i - 1) as usize;
            let has_right = j + 1 < hi;
            cells.push(Cell {
                row: i,
                col: j,
                has_above,
                has_right,
            });
        }
    }
    let mut counter = Counter {
        cells,
        grid: (0..rows).map(|i| vec![0; nu.row(i) as usize]).collect(),
        placed: vec![0; mu.len()],
        target: mu.rows().iter().map(|&x| u64::from(x)).collect(),
        total: 0,
    };
    counter.run(0)?;
    Ok(counter.total)
}

// ---------------------------------------------------------------------------
// Products of Schubert classes
// ---------------------------------------------------------------------------

/// A non-negative integer combination of Schubert classes on a fixed
/// Grassmannian, indexed by partitions inside the `rows x width` box.
///
/// Terms with zero coefficient are never stored, and multiplication
/// truncates to the box (classes outside it vanish in cohomology).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchubertExpansion {
    rows: u32,
    width: u32,
    terms: BTreeMap<Partition, u64>,
}

impl SchubertExpansion {
    /// The class of the identity (empty partition) with coefficient 1.
    pub fn identity(rows: u32, width: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Partition::empty(), 1);
        SchubertExpansion { rows, width, terms }
    }

    /// A single Schubert class with coefficient 1.  Fails if the partition
    /// does not fit in the box.
    pub fn single(lambda: &Partition, rows: u32, width: u32) -> Result<Self> {
        if !lambda.fits_in_box(rows, width) {
            return Err(Error::invalid(format!(
                "partition {lambda} does not fit in a {rows} x {width} box"
            )));
        }
        let mut terms = BTreeMap::new();
        terms.insert(lambda.clone(), 1);
        Ok(SchubertExpansion { rows, width, terms })
    }

    pub fn rows(&self) -> u32 {
        self.rows
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// Coefficient of `lambda` (0 when absent).
    pub fn coefficient(&self, lambda: &Partition) -> u64 {
        self.terms.get(lambda).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing partition order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, u64)> {
        self.terms.iter().map(|(p, &c)| (p, c))
    }

    /// Number of distinct classes present.
    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    /// Product in H*(Gr), truncated to the box.  Both factors must live in
    /// the same box.
    pub fn multiply(&self, other: &SchubertExpansion) -> Result<SchubertExpansion> {
        if self.rows != other.rows || self.width != other.width {
            return Err(Error::invalid(format!(
                "box mismatch: {} x {} vs {} x {}",
                self.rows, self.width, other.rows, other.width
            )));
        }
        let mut terms: BTreeMap<Partition, u64> = BTreeMap::new();
        for (lam, ca) in self.terms.iter() {
            for (mu, cb) in other.terms.iter() {
                let weight = lam.weight() + mu.weight();
                if weight > u64::from(self.rows) * u64::from(self.width) {
                    continue;
                }
                for nu in box_partitions_over(self.rows, self.width, weight, lam, mu) {
                    let c = lr_coefficient(lam, mu, &nu)?;
                    if c == 0 {
                        continue;
                    }
                    let add = (*ca as u128) * (*cb as u128) * (c as u128);
                    let slot = terms.entry(nu).or_insert(0);
                    let sum = (*slot as u128) + add;
                    *slot = u64::try_from(sum)
                        .map_err(|_| Error::Overflow("Schubert product coefficient"))?;
                }
            }
        }
        Ok(SchubertExpansion {
            rows: self.rows,
            width: self.width,
            terms,
        })
    }
}

/// Partitions of `weight` inside the `rows x width` box containing both
/// `lower` bounds — the candidate shapes for `c^nu_{lower1,lower2}`.
fn box_partitions_over(
    rows: u32,
    width: u32,
    weight: u64,
    lower1: &Partition,
    lower2: &Partition,
) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(rows as usize);
    gen_rows(rows as usize, width, weight, lower1, lower2, &mut current, &mut out);
    out
}

fn gen_rows(
    rows_left: usize,
    max_row: u32,
    weight_left: u64,
    lower1: &Partition,
    lower2: &Partition,
    current: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if rows_left == 0 {
        if weight_left == 0 {
            out.push(Partition::new(current.clone()).expect("rows generated decreasing"));
        }
        return;
    }
    let i = current.len();
    let lo = lower1.row(i).max(lower2.row(i));
    let hi = max_row.min(u32::try_from(weight_left).unwrap_or(u32::MAX));
    // Even taking every remaining row at `hi` must be able to spend the
    // remaining weight.
    for v in lo..=hi {
        if u64::from(v) * rows_left as u64 >= weight_left {
            current.push(v);
            gen_rows(rows_left - 1, v, weight_left - u64::from(v), lower1, lower2, current, out);
            current.pop();
        }
    }
}

// ---------------------------------------------------------------------------
// Intersection numbers and invariant dimensions
// ---------------------------------------------------------------------------

/// Coefficient of the class of a point in the `s`-fold product of the
/// problem's Schubert classes.  Requires the codimensions to balance
/// (`total codim = r (n - r)`), so the answer counts a finite intersection.
pub fn intersection_number(problem: &SchubertProblem) -> Result<u64> {
    if !problem.codim_condition_holds() {
        return Err(Error::invalid(format!(
            "total codimension {} differs from dim Gr({}, {}) = {}",
            problem.total_codim(),
            problem.r(),
            problem.n(),
            u64::from(problem.r()) * u64::from(problem.n() - problem.r())
        )));
    }
    let r = problem.r();
    let width = problem.n() - r;
    let parts = problem.partitions();
    let s = parts.len();
    // Fold all factors but the last two, then contract:
    // <sigma_nu sigma_mu sigma_last> = c^{last^dual}_{nu,mu}.
    let mut acc = SchubertExpansion::identity(r, width);
    for lam in &parts[..s - 2] {
        acc = acc.multiply(&SchubertExpansion::single(lam, r, width)?)?;
    }
    let mu = &parts[s - 2];
    let dual_last = parts[s - 1].dual_in_box(r, width)?;
    let mut total: u128 = 0;
    for (nu, c) in acc.terms() {
        let lr = lr_coefficient(nu, mu, &dual_last)?;
        total += (c as u128) * (lr as u128);
    }
    u64::try_from(total).map_err(|_| Error::Overflow("intersection number"))
}

/// Does the product of the problem's Schubert classes survive in
/// `H*(Gr(r, n))`?  No balance condition is required; this is the direct
/// ring computation, used as the reference against the Horn recursion.
pub fn product_nonzero_oracle(problem: &SchubertProblem) -> Result<bool> {
    let r = problem.r();
    let width = problem.n() - r;
    let mut acc = SchubertExpansion::identity(r, width);
    for lam in problem.partitions() {
        acc = acc.multiply(&SchubertExpansion::single(&lam, r, width)?)?;
        if acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(!acc.is_zero())
}

/// `dim (V_{lambda^1} (x) ... (x) V_{lambda^s})^{SL_r}` for an `s`-tuple
/// (`s >= 3`) of partitions with at most `r` rows.
///
/// Full columns are stripped from each factor (they only twist by the
/// determinant), after which an invariant can exist only if the total weight
/// is a multiple of `r` — the center of `SL_r` acts on the product by that
/// weight — and only if every factor fits in the `r x (total/r)` box, since
/// a power of the determinant appearing in the product must contain every
/// factor's diagram.  When both hold the dimension equals the intersection
/// number of the corresponding Schubert problem on `Gr(r, r + total/r)`,
/// whose codimension condition holds by construction.
pub fn invariant_dimension(lambdas: &[Partition], r: u32) -> Result<u64> {
    if r == 0 {
        return Err(Error::invalid("r must be positive"));
    }
    if lambdas.len() < 3 {
        return Err(Error::invalid(format!(
            "need at least 3 tensor factors, got {}",
            lambdas.len()
        )));
    }
    let mut normalized = Vec::with_capacity(lambdas.len());
    for lam in lambdas {
        let (norm, _) = lam.sl_normalized(r)?;
        normalized.push(norm);
    }
    let total: u64 = normalized.iter().map(Partition::weight).sum();
    if !total.is_multiple_of(u64::from(r)) {
        return Ok(0);
    }
    let q64 = total / u64::from(r);
    let q = u32::try_from(q64).map_err(|_| Error::Overflow("box width"))?;
    if normalized.iter().any(|lam| lam.width() > q) {
        return Ok(0);
    }
    let n = r + q;
    let sets = normalized
        .iter()
        .map(|lam| IndexSet::from_partition(lam, n, r))
        .collect::<Result<Vec<_>>>()?;
    let problem = SchubertProblem::new(n, r, sets)?;
    debug_assert!(problem.codim_condition_holds());
    intersection_number(&problem)
}

/// Translate a triple `(lambda, mu, nu)` with `|lambda| + |mu| = |nu|` into
/// a balanced Schubert problem: on `Gr(r, n)` with
/// `n = r + max(lambda_1, mu_1, nu_1)`, take the classes of `lambda`, `mu`,
/// and the box dual of `nu`.  Its intersection number is `c^nu_{lambda,mu}`.
pub fn embed_as_codim_problem(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    r: u32,
) -> Result<SchubertProblem> {
    if lambda.weight() + mu.weight() != nu.weight() {
        return Err(Error::invalid(format!(
            "|{lambda}| + |{mu}| = {} does not match |{nu}| = {}",
            lambda.weight() + mu.weight(),
            nu.weight()
        )));
    }
    for lam in [lambda, mu, nu] {
        if lam.len() as u32 > r {
            return Err(Error::invalid(format!(
                "partition {lam} has more than r = {r} rows"
            )));
        }
    }
    let width = lambda.width().max(mu.width()).max(nu.width());
    let n = r + width;
    let dual = nu.dual_in_box(r, width)?;
    let sets = vec![
        IndexSet::from_partition(lambda, n, r)?,
        IndexSet::from_partition(mu, n, r)?,
        IndexSet::from_partition(&dual, n, r)?,
    ];
    let problem = SchubertProblem::new(n, r, sets)?;
    debug_assert!(problem.codim_condition_holds());
    Ok(problem)
}

// ---------------------------------------------------------------------------
// Stretched sequences
// ---------------------------------------------------------------------------

/// Values of the stretched invariant dimension `N |-> dim (V_{N lambda^1}
/// (x) ... )^{SL_r}` for `N = 1, ..., N_max`, together with the exact
/// interpolating polynomial in Newton form.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct StretchReport {
    /// `values[N - 1]` is the dimension at stretch factor `N`.
    pub values: Vec<u64>,
    /// Forward differences at `N = 1`: the interpolating polynomial is
    /// `P(N) = sum_k newton[k] * C(N - 1, k)`.
    pub newton: Vec<i64>,
    /// Degree of the interpolating polynomial (0 for constant sequences).
    pub degree: usize,
}

impl StretchReport {
    /// Evaluate the fitted polynomial at stretch factor `n` (1-based, exact
    /// integer arithmetic).
    pub fn eval(&self, n: u64) -> i64 {
        let mut total: i128 = 0;
        for (k, &d) in self.newton.iter().enumerate() {
            total += i128::from(d) * binomial(n - 1, k as u64);
        }
        i64::try_from(total).expect("polynomial value exceeds i64")
    }
}

fn binomial(n: u64, k: u64) -> i128 {
    if k > n {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * i128::from(n - i) / i128::from(i + 1);
    }
    acc
}

/// Evaluate the stretched dimensions for `N = 1, ..., n_max` and fit the
/// exact interpolating polynomial by finite differences.
pub fn stretch_sequence(lambdas: &[Partition], r: u32, n_max: u32) -> Result<StretchReport> {
    if n_max == 0 {
        return Err(Error::invalid("need at least one stretch value"));
    }
    let mut values = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let scaled = lambdas
            .iter()
            .map(|lam| lam.scaled(n))
            .collect::<Result<Vec<_>>>()?;
        values.push(invariant_dimension(&scaled, r)?);
    }
    let mut diffs: Vec<i128> = values.iter().map(|&v| i128::from(v)).collect();
    let mut newton = Vec::with_capacity(values.len());
    while !diffs.is_empty() {
        newton.push(
            i64::try_from(diffs[0]).map_err(|_| Error::Overflow("finite difference"))?,
        );
        diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
    }
    let degree = newton
        .iter()
        .rposition(|&d| d != 0)
        .unwrap_or(0);
    Ok(StretchReport {
        values,
        newton,
        degree,
    })
}

// ---------------------------------------------------------------------------
