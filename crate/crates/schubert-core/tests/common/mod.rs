//! Independent oracles for the integration suites.
//!
//! Everything here recomputes quantities of the main crate through a
//! different algorithm, so agreement is evidence rather than tautology:
//!
//! * Littlewood-Richardson coefficients via symmetric-polynomial
//!   determinants (complete homogeneous generators and alternants) instead
//!   of tableau enumeration;
//! * invariant dimensions of rank-2 tensor products via the classical
//!   highest-weight recombination rule instead of Schubert products;
//! * invariant dimensions for general rank by iterated expansion in the
//!   polynomial model, reading every coefficient from a single alternant
//!   product.

#![allow(dead_code)] // each integration test target uses a subset

use std::collections::BTreeMap;

use schubert_core::partitions::Partition;

/// Sparse polynomial in a fixed number of variables: exponent vector to
/// coefficient.
pub type Poly = BTreeMap<Vec<u32>, i64>;

fn constant_one(vars: usize) -> Poly {
    let mut p = Poly::new();
    p.insert(vec![0; vars], 1);
    p
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let exp: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let entry = out.entry(exp).or_insert(0);
            *entry += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn add_scaled(target: &mut Poly, source: &Poly, scale: i64) {
    for (e, c) in source {
        let entry = target.entry(e.clone()).or_insert(0);
        *entry += scale * c;
    }
    target.retain(|_, c| *c != 0);
}

/// Sum of every monomial of total degree `d` in `vars` variables — the
/// complete homogeneous symmetric polynomial.
fn complete_homogeneous(d: u32, vars: usize) -> Poly {
    let mut out = Poly::new();
    let mut exp = vec![0u32; vars];
    fill_compositions(&mut out, &mut exp, 0, d);
    out
}

fn fill_compositions(out: &mut Poly, exp: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos + 1 == exp.len() {
        exp[pos] = remaining;
        out.insert(exp.clone(), 1);
        exp[pos] = 0;
        return;
    }
    for take in 0..=remaining {
        exp[pos] = take;
        fill_compositions(out, exp, pos + 1, remaining - take);
    }
    exp[pos] = 0;
}

/// Determinant of a small matrix of polynomials by first-row expansion.
fn determinant(matrix: &[Vec<Poly>]) -> Poly {
    let n = matrix.len();
    if n == 0 {
        return constant_one(0);
    }
    if n == 1 {
        return matrix[0][0].clone();
    }
    let mut out = Poly::new();
    for (j, entry) in matrix[0].iter().enumerate() {
        if entry.is_empty() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = matrix[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(col, _)| *col != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        add_scaled(&mut out, &mul(entry, &determinant(&minor)), sign);
    }
    out
}

/// Schur polynomial in `vars` variables as a determinant in the complete
/// homogeneous generators.
pub fn schur_polynomial(lambda: &Partition, vars: usize) -> Poly {
    let rows: Vec<u32> = lambda.rows().to_vec();
    let ell = rows.len();
    if ell == 0 {
        return constant_one(vars);
    }
    let mut matrix = Vec::with_capacity(ell);
    for (i, &part) in rows.iter().enumerate() {
        let mut row = Vec::with_capacity(ell);
        for j in 0..ell {
            let degree = i64::from(part) - i as i64 + j as i64;
            row.push(if degree < 0 {
                Poly::new()
            } else {
                complete_homogeneous(degree as u32, vars)
            });
        }
        matrix.push(row);
    }
    determinant(&matrix)
}

fn permutations_signed(k: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    let mut used = vec![false; k];
    build_permutations(k, &mut current, &mut used, &mut out);
    out
}

fn build_permutations(
    k: usize,
    current: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<(Vec<usize>, i64)>,
) {
    if current.len() == k {
        let mut inversions = 0;
        for i in 0..k {
            for j in (i + 1)..k {
                if current[i] > current[j] {
                    inversions += 1;
                }
            }
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        out.push((current.clone(), sign));
        return;
    }
    for v in 0..k {
        if !used[v] {
            used[v] = true;
            current.push(v);
            build_permutations(k, current, used, out);
            current.pop();
            used[v] = false;
        }
    }
}

/// The alternating sum over permutations of the staircase-shifted exponent
/// vector of `mu`: multiplying a Schur polynomial by this and reading the
/// strictly decreasing exponents yields the whole product expansion.
pub fn shifted_alternant(mu: &Partition, vars: usize) -> Poly {
    let mut shape = vec![0u32; vars];
    for (i, &row) in mu.rows().iter().enumerate() {
        shape[i] = row;
    }
    for (i, entry) in shape.iter_mut().enumerate() {
        *entry += (vars - 1 - i) as u32;
    }
    let mut out = Poly::new();
    for (perm, sign) in permutations_signed(vars) {
        let exp: Vec<u32> = perm.iter().map(|&src| shape[src]).collect();
        let entry = out.entry(exp).or_insert(0);
        *entry += sign;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Decompose a product of two Schur polynomials: map from partition to
/// multiplicity, for every partition with at most `vars` rows.
pub fn schur_product_expansion(a: &Partition, b: &Partition, vars: usize) -> BTreeMap<Vec<u32>, u64> {
    let product = mul(&schur_polynomial(a, vars), &shifted_alternant(b, vars));
    let mut out = BTreeMap::new();
    for (exp, coeff) in &product {
        if exp.windows(2).all(|w| w[0] > w[1]) {
            let shape: Vec<u32> = exp
                .iter()
                .enumerate()
                .map(|(i, &e)| e - (vars - 1 - i) as u32)
                .collect();
            assert!(*coeff > 0, "expansion produced a negative multiplicity");
            out.insert(shape, *coeff as u64);
        }
    }
    out
}

/// Littlewood-Richardson coefficient through the determinant route.
pub fn lr_by_determinants(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.weight() + mu.weight() != nu.weight() {
        return 0;
    }
    let vars = nu.len().max(1);
    if lambda.len() > vars || mu.len() > vars {
        return 0;
    }
    let expansion = schur_product_expansion(lambda, mu, vars);
    let mut target: Vec<u32> = nu.rows().to_vec();
    target.resize(vars, 0);
    expansion.get(&target).copied().unwrap_or(0)
}

/// Invariant dimension of a tensor product of rank-2 irreducible
/// representations, by folding the classical recombination rule over the
/// highest-weight labels (the label is the dimension minus one).
pub fn rank_two_invariants(labels: &[u32]) -> u64 {
    let mut dist: BTreeMap<u32, u64> = BTreeMap::new();
    dist.insert(0, 1);
    for &label in labels {
        let mut next: BTreeMap<u32, u64> = BTreeMap::new();
        for (&h, &mult) in &dist {
            let lo = h.abs_diff(label);
            let hi = h + label;
            let mut c = lo;
            while c <= hi {
                *next.entry(c).or_insert(0) += mult;
                c += 2;
            }
        }
        dist = next;
    }
    dist.get(&0).copied().unwrap_or(0)
}

/// Invariant dimension for arbitrary rank by iterated expansion: fold the
/// factors into a full decomposition, then read off the multiplicity of the
/// rectangular shapes (the representations that restrict trivially).
pub fn invariants_by_expansion(lambdas: &[Partition], rank: u32) -> u64 {
    let vars = rank as usize;
    assert!(vars >= 1, "rank must be positive");
    for lam in lambdas {
        assert!(lam.len() <= vars, "a weight has more rows than the rank");
    }
    let mut dist: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    let first = lambdas.first().cloned().unwrap_or_else(Partition::empty);
    let mut start: Vec<u32> = first.rows().to_vec();
    start.resize(vars, 0);
    dist.insert(start, 1);
    for lam in lambdas.iter().skip(1) {
        let mut next: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        for (shape, mult) in &dist {
            let pi = Partition::new(
                shape.iter().copied().filter(|&x| x > 0).collect::<Vec<_>>(),
            )
            .expect("shapes stay sorted");
            for (out_shape, coeff) in schur_product_expansion(&pi, lam, vars) {
                *next.entry(out_shape).or_insert(0) += mult * coeff;
            }
        }
        dist = next;
    }
    dist.iter()
        .filter(|(shape, _)| shape.iter().all(|&x| x == shape[0]))
        .map(|(_, &mult)| mult)
        .sum()
}

/// Convenience constructor for test fixtures.
pub fn part(rows: &[u32]) -> Partition {
    Partition::new(rows.to_vec()).expect("test fixture rows are nonincreasing")
}
