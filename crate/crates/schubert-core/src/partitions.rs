//! Partitions, index sets, and the dictionary between them.
//!
//! A Schubert class on the Grassmannian `Gr(r, n)` can be recorded either as
//! a partition fitting in an `r x (n-r)` box or as an `r`-element subset of
//! `{1, ..., n}`.  With `I = {I_1 < ... < I_r}` the two are related by
//!
//! ```text
//! lambda_a = (n - r) + a - I_a        for a = 1, ..., r,
//! ```
//!
//! so small index entries mean large rows.  Everything downstream (products
//! of Schubert classes, the Horn recursion, positions of subspaces relative
//! to flags) is phrased in terms of these two encodings, and this module owns
//! the conversions plus the handful of index-set recombinations that show up
//! when flags are restricted to subspaces and quotients.
//!
//! Text encodings: a partition prints as comma-separated row lengths
//! (`3,2,1`, with `0` for the empty partition); tuples of partitions or index
//! sets are joined by `:` (`2,4:2,4:2,4`).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// Partition
// ---------------------------------------------------------------------------

/// An integer partition: weakly decreasing non-negative row lengths.
///
/// Stored in trimmed form (no trailing zero rows), so equality, ordering and
/// hashing all ignore trailing zeros.  Use [`Partition::row`] to read past
/// the stored length; it returns `0` there.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    rows: Vec<u32>,
}

impl Partition {
    /// Build a partition from row lengths, which must be weakly decreasing
    /// once trailing zeros are dropped.
    pub fn new(rows: impl Into<Vec<u32>>) -> Result<Self> {
        let mut rows = rows.into();
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!(
                "rows {rows:?} are not weakly decreasing"
            )));
        }
        while rows.last() == Some(&0) {
            rows.pop();
        }
        Ok(Partition { rows })
    }

    /// The empty partition.
    pub fn empty() -> Self {
        Partition { rows: Vec::new() }
    }

    /// Trimmed row lengths (no trailing zeros).
    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Row length at 0-based index `i`, reading `0` past the last row.
    pub fn row(&self, i: usize) -> u32 {
        self.rows.get(i).copied().unwrap_or(0)
    }

    /// Number of non-zero rows.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Sum of the rows.
    pub fn weight(&self) -> u64 {
        self.rows.iter().map(|&x| u64::from(x)).sum()
    }

    /// Length of the first row (`0` for the empty partition).
    pub fn width(&self) -> u32 {
        self.row(0)
    }

    /// Row lengths padded with zeros to exactly `len` entries.
    ///
    /// Fails if the partition has more than `len` non-zero rows.
    pub fn rows_padded(&self, len: usize) -> Result<Vec<u32>> {
        if self.rows.len() > len {
            return Err(Error::invalid(format!(
                "partition {self} has more than {len} rows"
            )));
        }
        let mut out = self.rows.clone();
        out.resize(len, 0);
        Ok(out)
    }

    /// Every row multiplied by `factor` (the `N`-fold stretch of the diagram).
    pub fn scaled(&self, factor: u32) -> Result<Self> {
        let rows = self
            .rows
            .iter()
            .map(|&x| {
                x.checked_mul(factor)
                    .ok_or(Error::Overflow("partition stretch"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Partition { rows })
    }

    /// Containment of Young diagrams: `other_a <= self_a` for every row.
    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.len()).all(|i| other.row(i) <= self.row(i))
    }

    /// Does the diagram fit in a `rows x width` box?
    pub fn fits_in_box(&self, rows: u32, width: u32) -> bool {
        self.len() as u32 <= rows && self.width() <= width
    }

    /// Complement in an `rows x width` box, reversed:
    /// `dual_a = width - self_{rows + 1 - a}`.
    ///
    /// This is the partition of the dual Schubert class, the one pairing with
    /// `self` to the class of a point.
    pub fn dual_in_box(&self, rows: u32, width: u32) -> Result<Self> {
        if !self.fits_in_box(rows, width) {
            return Err(Error::invalid(format!(
                "partition {self} does not fit in a {rows} x {width} box"
            )));
        }
        let rows_usize = rows as usize;
        let dual: Vec<u32> = (0..rows_usize)
            .map(|a| width - self.row(rows_usize - 1 - a))
            .collect();
        Partition::new(dual)
    }

    /// Subtract the `r`-th row from every row, the normalization that fixes
    /// the underlying `SL_r` representation while removing full columns.
    ///
    /// Returns the normalized partition and the number of columns removed.
    /// Fails if the partition has more than `r` rows.
    pub fn sl_normalized(&self, r: u32) -> Result<(Self, u32)> {
        if self.len() as u32 > r {
            return Err(Error::invalid(format!(
                "partition {self} has more than r = {r} rows"
            )));
        }
        let last = if self.len() as u32 == r {
            self.row(r as usize - 1)
        } else {
            0
        };
        let rows: Vec<u32> = self.rows.iter().map(|&x| x - last).collect();
        Ok((Partition { rows }.trimmed(), last))
    }

    fn trimmed(mut self) -> Self {
        while self.rows.last() == Some(&0) {
            self.rows.pop();
        }
        self
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "0");
        }
        let body: Vec<String> = self.rows.iter().map(u32::to_string).collect();
        write!(f, "{}", body.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows = parse_u32_list(s)?;
        Partition::new(rows).map_err(|_| Error::Parse {
            token: s.to_string(),
            reason: "rows must be weakly decreasing".into(),
        })
    }
}

// ---------------------------------------------------------------------------
// IndexSet
// ---------------------------------------------------------------------------

/// A subset of `{1, ..., ambient}` with its elements in increasing order.
///
/// Elements are 1-based throughout, matching the Schubert-cell conventions;
/// the ambient bound is part of the data because the associated partition
/// depends on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet {
    elements: Vec<u32>,
    ambient: u32,
}

impl IndexSet {
    /// Build an index set; elements must be strictly increasing and lie in
    /// `1..=ambient`.
    pub fn new(elements: impl Into<Vec<u32>>, ambient: u32) -> Result<Self> {
        let elements = elements.into();
        if let Some(&first) = elements.first() {
            if first == 0 {
                return Err(Error::invalid("index sets are 1-based; found 0"));
            }
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid(format!(
                "elements {elements:?} are not strictly increasing"
            )));
        }
        if let Some(&last) = elements.last() {
            if last > ambient {
                return Err(Error::invalid(format!(
                    "element {last} exceeds the ambient bound {ambient}"
                )));
            }
        }
        Ok(IndexSet { elements, ambient })
    }

    /// The full set `{1, ..., m}` inside `[m]`.
    pub fn full(m: u32) -> Self {
        IndexSet {
            elements: (1..=m).collect(),
            ambient: m,
        }
    }

    /// The empty subset of `[ambient]`.
    pub fn empty(ambient: u32) -> Self {
        IndexSet {
            elements: Vec::new(),
            ambient,
        }
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    /// 1-based access: `at(a)` is `I_a`.
    ///
    /// Panics if `a` is out of range; formula code always iterates within
    /// the cardinality.
    pub fn at(&self, a: usize) -> u32 {
        self.elements[a - 1]
    }

    pub fn ambient(&self) -> u32 {
        self.ambient
    }

    /// Cardinality.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The partition `lambda(I)` with `lambda_a = (ambient - r) + a - I_a`,
    /// where `r` is the cardinality.  Fits in an `r x (ambient - r)` box.
    pub fn to_partition(&self) -> Partition {
        let r = self.elements.len() as u32;
        let q = self.ambient - r;
        let rows: Vec<u32> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, &ia)| q + (i as u32 + 1) - ia)
            .collect();
        // Strictly increasing elements make the rows weakly decreasing and
        // non-negative, so this cannot fail.
        Partition::new(rows).expect("lambda(I) is always a partition")
    }

    /// Inverse of [`IndexSet::to_partition`]: the index set in `[n]` of the
    /// Schubert class of `lambda` on `Gr(r, n)`.
    ///
    /// Fails when the diagram does not fit in the `r x (n - r)` box.
    pub fn from_partition(lambda: &Partition, n: u32, r: u32) -> Result<Self> {
        if r > n {
            return Err(Error::invalid(format!("r = {r} exceeds n = {n}")));
        }
        if !lambda.fits_in_box(r, n - r) {
            return Err(Error::invalid(format!(
                "partition {lambda} does not fit in a {r} x {} box",
                n - r
            )));
        }
        let q = n - r;
        let elements: Vec<u32> = (0..r as usize)
            .map(|i| q + (i as u32 + 1) - lambda.row(i))
            .collect();
        IndexSet::new(elements, n)
    }

    /// Weight `|lambda(I)|`, i.e. the codimension of the Schubert cell.
    pub fn codim(&self) -> u64 {
        self.to_partition().weight()
    }

    /// Select elements of `self` at the positions given by `inner`:
    /// `J_a = self_{inner_a}`.  Requires `inner` to be a subset of
    /// `[cardinality of self]`.
    pub fn compose(&self, inner: &IndexSet) -> Result<IndexSet> {
        if inner.ambient as usize != self.len() {
            return Err(Error::invalid(format!(
                "position set has ambient {} but the outer set has cardinality {}",
                inner.ambient,
                self.len()
            )));
        }
        let elements: Vec<u32> = inner
            .elements
            .iter()
            .map(|&a| self.at(a as usize))
            .collect();
        IndexSet::new(elements, self.ambient)
    }

    /// Inverse of [`IndexSet::compose`]: the positions of `sub` inside
    /// `self`.  Fails with [`Error::NotASubset`] when some element of `sub`
    /// is missing from `self`.
    pub fn factor(&self, sub: &IndexSet) -> Result<IndexSet> {
        let positions: Vec<u32> = sub
            .elements
            .iter()
            .map(|&x| {
                self.elements
                    .iter()
                    .position(|&y| y == x)
                    .map(|i| i as u32 + 1)
                    .ok_or(Error::NotASubset { element: x })
            })
            .collect::<Result<Vec<_>>>()?;
        IndexSet::new(positions, self.len() as u32)
    }

    /// Position bookkeeping for restricting a flagged `Hom` problem to a
    /// kernel: with `self = H` in `[q + m]` of cardinality `m` and
    /// `E` in `[m]` of cardinality `e`, returns `Y` in `[q + e]` with
    ///
    /// ```text
    /// Y_a = H_{E_a} - E_a + a.
    /// ```
    pub fn kernel_position_shift(&self, e_set: &IndexSet) -> Result<IndexSet> {
        let m = self.len() as u32;
        if e_set.ambient != m {
            return Err(Error::invalid(format!(
                "kernel position set has ambient {} but expected {m}",
                e_set.ambient
            )));
        }
        let q = self.ambient - m;
        let elements: Vec<u32> = e_set
            .elements
            .iter()
            .enumerate()
            .map(|(i, &ea)| self.at(ea as usize) - ea + (i as u32 + 1))
            .collect();
        IndexSet::new(elements, q + e_set.len() as u32)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elements.is_empty() {
            return write!(f, "-");
        }
        let body: Vec<String> = self.elements.iter().map(u32::to_string).collect();
        write!(f, "{}", body.join(","))
    }
}

// ---------------------------------------------------------------------------
// SchubertProblem
// ---------------------------------------------------------------------------

/// An `s`-tuple (`s >= 3`) of Schubert classes on `Gr(r, n)`, each recorded
/// by its index set in `[n]` of cardinality `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SchubertProblem {
    n: u32,
    r: u32,
    sets: Vec<IndexSet>,
}

impl SchubertProblem {
    pub fn new(n: u32, r: u32, sets: Vec<IndexSet>) -> Result<Self> {
        if r == 0 || r > n {
            return Err(Error::invalid(format!(
                "need 1 <= r <= n, got r = {r}, n = {n}"
            )));
        }
        if sets.len() < 3 {
            return Err(Error::invalid(format!(
                "need at least 3 factors, got {}",
                sets.len()
            )));
        }
        for set in &sets {
            if set.ambient() != n {
                return Err(Error::invalid(format!(
                    "index set {set} has ambient {} but the problem lives in [{n}]",
                    set.ambient()
                )));
            }
            if set.len() as u32 != r {
                return Err(Error::invalid(format!(
                    "index set {set} has cardinality {} but the problem needs {r}",
                    set.len()
                )));
            }
        }
        Ok(SchubertProblem { n, r, sets })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Number of factors.
    pub fn s(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[IndexSet] {
        &self.sets
    }

    /// The partitions `lambda(I^p)`.
    pub fn partitions(&self) -> Vec<Partition> {
        self.sets.iter().map(IndexSet::to_partition).collect()
    }

    /// Total codimension of the `s` Schubert cells.
    pub fn total_codim(&self) -> u64 {
        self.sets.iter().map(IndexSet::codim).sum()
    }

    /// Does the total codimension equal `dim Gr(r, n) = r (n - r)`?
    ///
    /// This is the balance condition for an intersection number to count a
    /// finite set of points.
    pub fn codim_condition_holds(&self) -> bool {
        self.total_codim() == u64::from(self.r) * u64::from(self.n - self.r)
    }
}

impl fmt::Display for SchubertProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_tuple(&self.sets))
    }
}

// ---------------------------------------------------------------------------
// Text encodings
// ---------------------------------------------------------------------------

fn parse_u32_list(s: &str) -> Result<Vec<u32>> {
    if s.is_empty() {
        return Err(Error::Parse {
            token: s.to_string(),
            reason: "empty token".into(),
        });
    }
    s.split(',')
        .map(|piece| {
            piece.trim().parse::<u32>().map_err(|_| Error::Parse {
                token: piece.to_string(),
                reason: "expected a non-negative integer".into(),
            })
        })
        .collect()
}

/// Parse a partition in the `3,2,1` encoding (`0` for the empty partition).
pub fn parse_partition(s: &str) -> Result<Partition> {
    s.parse()
}

/// Parse a `:`-joined tuple of partitions, e.g. `2,1:2,1:3,2,1`.
pub fn parse_partition_tuple(s: &str) -> Result<Vec<Partition>> {
    s.split(':').map(parse_partition).collect()
}

/// Parse an index set in the `2,4` encoding relative to an ambient bound.
pub fn parse_index_set(s: &str, ambient: u32) -> Result<IndexSet> {
    let elements = parse_u32_list(s)?;
    IndexSet::new(elements, ambient).map_err(|e| Error::Parse {
        token: s.to_string(),
        reason: e.to_string(),
    })
}

/// Parse a `:`-joined tuple of index sets, e.g. `2,4:2,4:2,4`.
pub fn parse_index_tuple(s: &str, ambient: u32) -> Result<Vec<IndexSet>> {
    s.split(':').map(|piece| parse_index_set(piece, ambient)).collect()
}

/// Join displayable items with `:`, the tuple encoding used by the CLI and
/// the verification reports.
pub fn format_tuple<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(T::to_string)
        .collect::<Vec<_>>()
        .join(":")
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn iset(elements: &[u32], ambient: u32) -> IndexSet {
        IndexSet::new(elements.to_vec(), ambient).unwrap()
    }

    fn part(rows: &[u32]) -> Partition {
        Partition::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn partition_basics() {
        let p = part(&[3, 2, 1]);
        assert_eq!(p.weight(), 6);
        assert_eq!(p.width(), 3);
        assert_eq!(p.len(), 3);
        assert_eq!(p.row(5), 0);
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn equality_ignores_trailing_zeros() {
        assert_eq!(part(&[2, 1, 0, 0]), part(&[2, 1]));
        assert_eq!(part(&[0, 0]), Partition::empty());
    }

    #[test]
    fn index_set_validation() {
        assert!(IndexSet::new(vec![0, 1], 3).is_err());
        assert!(IndexSet::new(vec![1, 1], 3).is_err());
        assert!(IndexSet::new(vec![2, 4], 3).is_err());
        assert!(IndexSet::new(vec![2, 4], 4).is_ok());
    }

    #[test]
    fn index_set_to_partition() {
        // On Gr(2, 6): I = {2, 4} has lambda_a = 4 + a - I_a = (3, 2).
        assert_eq!(iset(&[2, 4], 6).to_partition(), part(&[3, 2]));
        // Extremes: the identity class and the point class.
        assert_eq!(iset(&[5, 6], 6).to_partition(), Partition::empty());
        assert_eq!(iset(&[1, 2], 6).to_partition(), part(&[4, 4]));
    }

    #[test]
    fn partition_to_index_set_round_trip() {
        let lam = part(&[3, 2]);
        let i = IndexSet::from_partition(&lam, 6, 2).unwrap();
        assert_eq!(i, iset(&[2, 4], 6));
        assert_eq!(i.to_partition(), lam);

        // Too wide for the box.
        assert!(IndexSet::from_partition(&part(&[5]), 6, 2).is_err());
        // Too many rows.
        assert!(IndexSet::from_partition(&part(&[1, 1, 1]), 6, 2).is_err());
    }

    #[test]
    fn round_trip_all_sets_in_small_grassmannians() {
        for n in 1..=7u32 {
            for r in 1..=n {
                for set in crate::harness::index_sets(n, r) {
                    let back =
                        IndexSet::from_partition(&set.to_partition(), n, r).unwrap();
                    assert_eq!(back, set);
                }
            }
        }
    }

    #[test]
    fn dual_partition() {
        // nu = (2, 1, 0) in a 3 x 3 box complements to (3, 2, 1).
        assert_eq!(
            part(&[2, 1]).dual_in_box(3, 3).unwrap(),
            part(&[3, 2, 1])
        );
        // Self-dual example in 2 x 2.
        assert_eq!(part(&[1, 1]).dual_in_box(2, 2).unwrap(), part(&[1, 1]));
        assert_eq!(part(&[2]).dual_in_box(2, 2).unwrap(), part(&[2]));
        // Dual of the empty partition is the full box.
        assert_eq!(
            Partition::empty().dual_in_box(2, 3).unwrap(),
            part(&[3, 3])
        );
        assert!(part(&[4]).dual_in_box(2, 3).is_err());
    }

    #[test]
    fn dual_is_an_involution() {
        for rows in 1..=3u32 {
            for width in 0..=4u32 {
                for lam in crate::harness::partitions_in_box(rows, width) {
                    let dd = lam
                        .dual_in_box(rows, width)
                        .unwrap()
                        .dual_in_box(rows, width)
                        .unwrap();
                    assert_eq!(dd, lam);
                }
            }
        }
    }

    #[test]
    fn sl_normalization() {
        let (norm, cols) = part(&[4, 3, 2]).sl_normalized(3).unwrap();
        assert_eq!(norm, part(&[2, 1]));
        assert_eq!(cols, 2);
        // Fewer than r rows: nothing to subtract.
        let (norm, cols) = part(&[4, 3]).sl_normalized(3).unwrap();
        assert_eq!(norm, part(&[4, 3]));
        assert_eq!(cols, 0);
        assert!(part(&[1, 1, 1]).sl_normalized(2).is_err());
    }

    #[test]
    fn compose_and_factor() {
        let k = iset(&[2, 4, 5], 6);
        let n_set = iset(&[1, 3], 3);
        let j = k.compose(&n_set).unwrap();
        assert_eq!(j, iset(&[2, 5], 6));
        assert_eq!(k.factor(&j).unwrap(), n_set);

        // 3 is not an element of k.
        let bad = iset(&[3], 6);
        match k.factor(&bad) {
            Err(Error::NotASubset { element: 3 }) => {}
            other => panic!("expected NotASubset, got {other:?}"),
        }
    }

    #[test]
    fn compose_factor_round_trip_exhaustive() {
        let k = iset(&[1, 3, 4, 6], 7);
        for n_set in crate::harness::index_sets(4, 2) {
            let j = k.compose(&n_set).unwrap();
            assert_eq!(k.factor(&j).unwrap(), n_set);
        }
    }

    #[test]
    fn kernel_position_shift() {
        // H = {2, 4} in [4] (m = 2, q = 2).
        let h = iset(&[2, 4], 4);
        assert_eq!(
            h.kernel_position_shift(&iset(&[1], 2)).unwrap(),
            iset(&[2], 3)
        );
        assert_eq!(
            h.kernel_position_shift(&iset(&[2], 2)).unwrap(),
            iset(&[3], 3)
        );
        // E = [m] recovers H itself.
        assert_eq!(
            h.kernel_position_shift(&IndexSet::full(2)).unwrap(),
            h
        );
    }

    #[test]
    fn schubert_problem_codim_condition() {
        let p = SchubertProblem::new(
            4,
            2,
            vec![iset(&[2, 4], 4), iset(&[2, 4], 4), iset(&[2, 4], 4), iset(&[2, 4], 4)],
        )
        .unwrap();
        // Four copies of lambda = (1): total codim 4 = 2 * 2.
        assert!(p.codim_condition_holds());

        let q = SchubertProblem::new(
            4,
            2,
            vec![iset(&[2, 4], 4), iset(&[2, 4], 4), iset(&[3, 4], 4)],
        )
        .unwrap();
        // Codims 1 + 1 + 0 = 2, which is not r * (n - r) = 4.
        assert_eq!(q.total_codim(), 2);
        assert!(!q.codim_condition_holds());
    }

    #[test]
    fn text_encodings() {
        assert_eq!(parse_partition("3,2,1").unwrap(), part(&[3, 2, 1]));
        assert_eq!(parse_partition("0").unwrap(), Partition::empty());
        assert_eq!(part(&[3, 2, 1]).to_string(), "3,2,1");
        assert_eq!(Partition::empty().to_string(), "0");
        assert!(parse_partition("2,x").is_err());
        assert!(parse_partition("1,2").is_err());

        let tuple = parse_index_tuple("2,4:2,4:2,4", 4).unwrap();
        assert_eq!(tuple.len(), 3);
        assert_eq!(tuple[0], iset(&[2, 4], 4));
        assert_eq!(format_tuple(&tuple), "2,4:2,4:2,4");

        assert!(parse_index_set("2,4", 3).is_err());
        assert_eq!(
            parse_partition_tuple("1:1:1:1").unwrap(),
            vec![part(&[1]); 4]
        );
    }

    #[test]
    fn display_round_trip_partition() {
        for rows in 0..=3u32 {
            for lam in crate::harness::partitions_in_box(rows, 4) {
                let back: Partition = lam.to_string().parse().unwrap();
                assert_eq!(back, lam);
            }
        }
    }
}
