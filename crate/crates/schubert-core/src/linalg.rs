//! Dense exact linear algebra over a prime field, full flags, and the
//! deterministic samplers used by the finite-field experiments.
//!
//! Everything here is elementary Gaussian elimination on small matrices; the
//! point is exactness (no floating point anywhere) and reproducibility.
//! Random objects are deterministic functions of a 64-bit seed: the
//! generator is ChaCha8 keyed via `seed_from_u64`, field elements are drawn
//! as `next_u64() % p` (the modulo bias at the default 21-bit prime is
//! far below any failure probability considered here), matrices are filled
//! row-major, and rejection sampling retries in draw order.  Changing any of
//! this would change downstream samples, so treat it as part of the
//! interface.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::partitions::IndexSet;

/// Default field of scalars: the prime 1,000,003.
pub const DEFAULT_PRIME: u64 = 1_000_003;

// ---------------------------------------------------------------------------
// Field
// ---------------------------------------------------------------------------

/// Arithmetic modulo a prime `p < 2^31` (so products fit in `u64`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..(1 << 31)).contains(&p) {
            return Err(Error::invalid(format!("modulus {p} out of range [2, 2^31)")));
        }
        let mut d = 2;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return Err(Error::invalid(format!("modulus {p} is not prime")));
            }
            d += 1;
        }
        Ok(PrimeField { p })
    }

    pub fn default_field() -> Self {
        PrimeField::new(DEFAULT_PRIME).expect("default modulus is prime")
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    /// Panics on zero, which indicates a logic error upstream.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        let (mut old_r, mut r) = (i128::from(self.p), i128::from(a % self.p));
        let (mut old_t, mut t) = (0i128, 1i128);
        while r != 0 {
            let quot = old_r / r;
            (old_r, r) = (r, old_r - quot * r);
            (old_t, t) = (t, old_t - quot * t);
        }
        debug_assert_eq!(old_r, 1, "modulus is prime");
        let p = i128::from(self.p);
        (((old_t % p) + p) % p) as u64
    }

    /// A uniform element, drawn as `next_u64() % p`.
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> u64 {
        rng.next_u64() % self.p
    }
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

/// A dense matrix over a prime field, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl PrimeMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        PrimeMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = PrimeMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from explicit rows; entries are reduced modulo `p`.
    pub fn from_rows(field: PrimeField, rows: Vec<Vec<u64>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map(Vec::len).unwrap_or(0);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in &rows {
            if row.len() != ncols {
                return Err(Error::invalid("ragged rows"));
            }
            data.extend(row.iter().map(|&x| x % field.modulus()));
        }
        Ok(PrimeMatrix {
            field,
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.field.modulus();
    }

    pub fn mul(&self, other: &PrimeMatrix) -> Result<PrimeMatrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::invalid("matrix product shape mismatch"));
        }
        let mut out = PrimeMatrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: u128 = 0;
                for k in 0..self.cols {
                    acc += u128::from(self.get(i, k)) * u128::from(other.get(k, j));
                }
                out.set(i, j, (acc % u128::from(self.field.modulus())) as u64);
            }
        }
        Ok(out)
    }

    /// Columns `lo..hi` as a new matrix.
    pub fn column_range(&self, lo: usize, hi: usize) -> PrimeMatrix {
        assert!(lo <= hi && hi <= self.cols);
        let mut out = PrimeMatrix::zeros(self.field, self.rows, hi - lo);
        for i in 0..self.rows {
            for j in lo..hi {
                out.set(i, j - lo, self.get(i, j));
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &PrimeMatrix) -> Result<PrimeMatrix> {
        if self.rows != other.rows || self.field != other.field {
            return Err(Error::invalid("hstack shape mismatch"));
        }
        let mut out = PrimeMatrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        Ok(out)
    }

    /// Rows `lo..` as a new matrix.
    pub fn row_tail(&self, lo: usize) -> PrimeMatrix {
        assert!(lo <= self.rows);
        PrimeMatrix {
            field: self.field,
            rows: self.rows - lo,
            cols: self.cols,
            data: self.data[lo * self.cols..].to_vec(),
        }
    }

    pub fn transpose(&self) -> PrimeMatrix {
        let mut out = PrimeMatrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// In-place reduction to row echelon form; returns the pivot columns.
    fn echelon(&mut self, reduced: bool) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(pivot_row) = (row..self.rows).find(|&i| self.get(i, col) != 0) else {
                continue;
            };
            if pivot_row != row {
                for j in 0..self.cols {
                    let a = self.get(row, j);
                    let b = self.get(pivot_row, j);
                    self.set(row, j, b);
                    self.set(pivot_row, j, a);
                }
            }
            let inv = f.inv(self.get(row, col));
            for j in 0..self.cols {
                self.set(row, j, f.mul(self.get(row, j), inv));
            }
            let targets: Vec<usize> = if reduced {
                (0..self.rows).filter(|&i| i != row).collect()
            } else {
                (row + 1..self.rows).collect()
            };
            for i in targets {
                let factor = self.get(i, col);
                if factor == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(row, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.echelon(false).len()
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (PrimeMatrix, Vec<usize>) {
        let mut work = self.clone();
        let pivots = work.echelon(true);
        (work, pivots)
    }

    /// A basis of the null space, as the columns of the returned matrix
    /// (`cols x nullity`, possibly with zero columns).
    pub fn kernel_basis(&self) -> PrimeMatrix {
        let f = self.field;
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        let mut out = PrimeMatrix::zeros(f, self.cols, free.len());
        for (k, &j) in free.iter().enumerate() {
            out.set(j, k, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, f.neg(rref.get(i, j)));
            }
        }
        out
    }

    /// Inverse of a square matrix, by Gauss-Jordan on `[self | I]`.
    pub fn inverse(&self) -> Result<PrimeMatrix> {
        if self.rows != self.cols {
            return Err(Error::invalid("inverse of a non-square matrix"));
        }
        let n = self.rows;
        let mut work = self.hstack(&PrimeMatrix::identity(self.field, n))?;
        let pivots = work.echelon(true);
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return Err(Error::invalid("matrix is singular"));
        }
        Ok(work.column_range(n, 2 * n))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

// ---------------------------------------------------------------------------
// Seeds and sampling
// ---------------------------------------------------------------------------

/// Mix a base seed with a salt (SplitMix64 finalizer); used to derive
/// independent per-instance and per-retry seeds from one campaign seed.
pub fn derive_seed(base: u64, salt: u64) -> u64 {
    let mut z = base ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The deterministic generator behind every sampler in this crate.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A matrix with independent uniform entries, filled row-major.
pub fn random_matrix(
    field: PrimeField,
    rows: usize,
    cols: usize,
    rng: &mut ChaCha8Rng,
) -> PrimeMatrix {
    let mut out = PrimeMatrix::zeros(field, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            out.set(i, j, field.sample(rng));
        }
    }
    out
}

/// A uniform invertible matrix, by rejection (at any usable modulus the
/// singular locus has negligible mass, so this terminates immediately in
/// practice).
pub fn random_invertible(field: PrimeField, n: usize, rng: &mut ChaCha8Rng) -> PrimeMatrix {
    loop {
        let m = random_matrix(field, n, n, rng);
        if m.rank() == n {
            return m;
        }
    }
}

/// A uniform `card`-subset of `[ambient]` (1-based), by partial
/// Fisher-Yates on the index pool.
pub fn random_index_set(ambient: u32, card: u32, rng: &mut ChaCha8Rng) -> IndexSet {
    assert!(card <= ambient);
    let mut pool: Vec<u32> = (1..=ambient).collect();
    let mut chosen = Vec::with_capacity(card as usize);
    for i in 0..card as usize {
        let j = i + (rng.next_u64() as usize) % (pool.len() - i);
        pool.swap(i, j);
        chosen.push(pool[i]);
    }
    chosen.sort_unstable();
    IndexSet::new(chosen, ambient).expect("sampled elements are distinct and in range")
}

// ---------------------------------------------------------------------------
// Flags
// ---------------------------------------------------------------------------

/// A full flag on `k^m`: step `a` is the span of the first `a` basis
/// columns.  The inverse basis is precomputed since every position
/// computation needs flag coordinates.
#[derive(Clone, Debug)]
pub struct PrimeFlag {
    basis: PrimeMatrix,
    inv: PrimeMatrix,
}

impl PrimeFlag {
    /// Wrap an invertible square matrix as a flag.
    pub fn new(basis: PrimeMatrix) -> Result<Self> {
        let inv = basis
            .inverse()
            .map_err(|_| Error::invalid("flag basis must be invertible"))?;
        Ok(PrimeFlag { basis, inv })
    }

    /// A uniformly random flag, deterministic in the seed.
    pub fn random(field: PrimeField, m: usize, seed: u64) -> Self {
        let mut rng = rng_from_seed(seed);
        let basis = random_invertible(field, m, &mut rng);
        PrimeFlag::new(basis).expect("sampled basis is invertible")
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn basis(&self) -> &PrimeMatrix {
        &self.basis
    }

    pub fn inverse_basis(&self) -> &PrimeMatrix {
        &self.inv
    }

    /// The first `a` basis columns (a basis of step `a`).
    pub fn step(&self, a: usize) -> PrimeMatrix {
        self.basis.column_range(0, a)
    }

    /// Position of the subspace spanned by the columns of `r_mat` (which
    /// must be independent): the set `H` with
    /// `H_b = min { a : dim(R /\ F_a) >= b }`.
    ///
    /// A zero-column `r_mat` yields the empty position set.
    pub fn subspace_position(&self, r_mat: &PrimeMatrix) -> Result<IndexSet> {
        let m = self.dim();
        if r_mat.rows() != m {
            return Err(Error::invalid("subspace lives in the wrong ambient space"));
        }
        let e = r_mat.cols();
        if r_mat.rank() != e {
            return Err(Error::invalid("subspace basis has dependent columns"));
        }
        // In flag coordinates, R /\ F_a is the kernel of the rows below a.
        let coords = self.inv.mul(r_mat)?;
        let mut position = Vec::with_capacity(e);
        let mut prev_dim = 0;
        for a in 1..=m {
            let dim_a = e - coords.row_tail(a).rank();
            debug_assert!(dim_a == prev_dim || dim_a == prev_dim + 1);
            if dim_a > prev_dim {
                position.push(a as u32);
                prev_dim = dim_a;
            }
        }
        debug_assert_eq!(prev_dim, e);
        IndexSet::new(position, m as u32)
    }

    /// The full flag induced on the subspace spanned by `r_mat`, expressed
    /// in the coordinates of `r_mat`'s columns: step `b` is `R /\ F_{H_b}`
    /// for the position `H` of `R`.
    pub fn induced_on_subspace(&self, r_mat: &PrimeMatrix) -> Result<PrimeFlag> {
        let position = self.subspace_position(r_mat)?;
        let e = r_mat.cols();
        let coords = self.inv.mul(r_mat)?;
        let field = self.field();
        let mut chosen = PrimeMatrix::zeros(field, e, 0);
        for (b, &h_b) in position.elements().iter().enumerate() {
            // Kernel of the coordinate rows below step H_b: a basis of
            // R /\ F_{H_b} in R-coordinates, dimension b + 1.
            let kern = coords.row_tail(h_b as usize).kernel_basis();
            debug_assert_eq!(kern.cols(), b + 1);
            let mut extended = false;
            for j in 0..kern.cols() {
                let cand = kern.column_range(j, j + 1);
                let stacked = chosen.hstack(&cand)?;
                if stacked.rank() == chosen.cols() + 1 {
                    chosen = stacked;
                    extended = true;
                    break;
                }
            }
            debug_assert!(extended, "each step strictly enlarges the span");
        }
        PrimeFlag::new(chosen)
    }

    /// The full flag induced on the quotient by the span of `s_mat`, in the
    /// quotient model of [`QuotientMap`]: repeated images of the flag steps
    /// are collapsed.
    pub fn induced_on_quotient(&self, s_mat: &PrimeMatrix) -> Result<(PrimeFlag, QuotientMap)> {
        let map = QuotientMap::new(s_mat)?;
        let m = self.dim();
        if s_mat.rows() != m {
            return Err(Error::invalid("subspace lives in the wrong ambient space"));
        }
        let field = self.field();
        let qdim = map.quotient_dim();
        let images = map.apply(&self.basis)?;
        let mut chosen = PrimeMatrix::zeros(field, qdim, 0);
        for a in 0..m {
            if chosen.cols() == qdim {
                break;
            }
            let cand = images.column_range(a, a + 1);
            let stacked = chosen.hstack(&cand)?;
            if stacked.rank() == chosen.cols() + 1 {
                chosen = stacked;
            }
        }
        debug_assert_eq!(chosen.cols(), qdim);
        Ok((PrimeFlag::new(chosen)?, map))
    }
}

/// Coordinates for a quotient `k^m / S`: column-reduce `S`, take the
/// complement of its pivot coordinates.  The projection subtracts the
/// `S`-component and keeps the complementary coordinates.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    /// RREF of `S^T`: one row per basis vector of `S`.
    reducer: PrimeMatrix,
    pivots: Vec<usize>,
    complement: Vec<usize>,
}

impl QuotientMap {
    pub fn new(s_mat: &PrimeMatrix) -> Result<Self> {
        let (reducer, pivots) = s_mat.transpose().rref();
        if pivots.len() != s_mat.cols() {
            return Err(Error::invalid("subspace basis has dependent columns"));
        }
        let complement: Vec<usize> = (0..s_mat.rows())
            .filter(|j| !pivots.contains(j))
            .collect();
        Ok(QuotientMap {
            reducer,
            pivots,
            complement,
        })
    }

    pub fn quotient_dim(&self) -> usize {
        self.complement.len()
    }

    /// Coordinate indices of the ambient space retained by the model.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    /// Project the columns of `mat` to the quotient model.
    pub fn apply(&self, mat: &PrimeMatrix) -> Result<PrimeMatrix> {
        let field = mat.field();
        let m = self.pivots.len() + self.complement.len();
        if mat.rows() != m {
            return Err(Error::invalid("projection shape mismatch"));
        }
        let mut out = PrimeMatrix::zeros(field, self.quotient_dim(), mat.cols());
        for c in 0..mat.cols() {
            // Subtract the S-component: the reducer rows have unit pivots.
            let mut column: Vec<u64> = (0..m).map(|i| mat.get(i, c)).collect();
            for (row, &pc) in self.pivots.iter().enumerate() {
                let factor = column[pc];
                if factor == 0 {
                    continue;
                }
                for (j, entry) in column.iter_mut().enumerate() {
                    *entry = field.sub(*entry, field.mul(factor, self.reducer.get(row, j)));
                }
            }
            for (k, &j) in self.complement.iter().enumerate() {
                out.set(k, c, column[j]);
            }
        }
        Ok(out)
    }
}

/// Sample a flag on `k^f` with the span of `t_mat` (columns independent,
/// `g` of them) in prescribed position `n_set`: the `T`-basis columns are
/// placed at the slots named by `n_set`, the remaining slots are filled at
/// random, and the result is pushed around by a random `T`-preserving
/// change of basis.  Resamples until the position check passes (atypical
/// draws at any usable modulus are vanishingly rare; a hard cap guards
/// against misuse).
pub fn sample_flag_with_position(
    t_mat: &PrimeMatrix,
    n_set: &IndexSet,
    seed: u64,
) -> Result<PrimeFlag> {
    let field = t_mat.field();
    let f = t_mat.rows();
    let g = t_mat.cols();
    if n_set.ambient() as usize != f || n_set.len() != g {
        return Err(Error::invalid(format!(
            "position {n_set} does not match a {g}-dim subspace of k^{f}"
        )));
    }
    if t_mat.rank() != g {
        return Err(Error::invalid("subspace basis has dependent columns"));
    }
    let mut rng = rng_from_seed(seed);
    for _attempt in 0..32 {
        let mut basis = PrimeMatrix::zeros(field, f, f);
        let slots: Vec<usize> = n_set.elements().iter().map(|&x| x as usize - 1).collect();
        for (b, &slot) in slots.iter().enumerate() {
            for i in 0..f {
                basis.set(i, slot, t_mat.get(i, b));
            }
        }
        for j in 0..f {
            if slots.contains(&j) {
                continue;
            }
            for i in 0..f {
                basis.set(i, j, field.sample(&mut rng));
            }
        }
        if basis.rank() != f {
            continue;
        }
        let basis = stabilizer_action(t_mat, &basis, &mut rng)?;
        let flag = match PrimeFlag::new(basis) {
            Ok(flag) => flag,
            Err(_) => continue,
        };
        if g == 0 || flag.subspace_position(t_mat)? == *n_set {
            return Ok(flag);
        }
    }
    Err(Error::invalid(
        "could not sample a flag with the requested position; \
         the modulus may be too small for this configuration",
    ))
}

/// Multiply the flag basis by a random invertible map preserving the span
/// of `t_mat`: block upper-triangular in a basis adapted to `T`.
fn stabilizer_action(
    t_mat: &PrimeMatrix,
    basis: &PrimeMatrix,
    rng: &mut ChaCha8Rng,
) -> Result<PrimeMatrix> {
    let field = t_mat.field();
    let f = t_mat.rows();
    let g = t_mat.cols();
    if g == 0 {
        return Ok(basis.clone());
    }
    // Complete T to a basis A = [T | standard vectors].
    let mut adapted = t_mat.clone();
    for j in 0..f {
        if adapted.cols() == f {
            break;
        }
        let mut unit = PrimeMatrix::zeros(field, f, 1);
        unit.set(j, 0, 1);
        let stacked = adapted.hstack(&unit)?;
        if stacked.rank() == adapted.cols() + 1 {
            adapted = stacked;
        }
    }
    // Block upper-triangular with invertible diagonal blocks.
    let x = random_invertible(field, g, rng);
    let z = random_invertible(field, f - g, rng);
    let y = random_matrix(field, g, f - g, rng);
    let mut block = PrimeMatrix::zeros(field, f, f);
    for i in 0..g {
        for j in 0..g {
            block.set(i, j, x.get(i, j));
        }
        for j in 0..f - g {
            block.set(i, g + j, y.get(i, j));
        }
    }
    for i in 0..f - g {
        for j in 0..f - g {
            block.set(g + i, g + j, z.get(i, j));
        }
    }
    let action = adapted.mul(&block)?.mul(&adapted.inverse()?)?;
    action.mul(basis)
}

// ---------------------------------------------------------------------------
