//! Parabolic weights, slopes, and generic semistability.
//!
//! A tuple of weakly decreasing weight sequences on an `m`-dimensional
//! space assigns to every subspace a slope: the average, over the subspace's
//! dimension, of the weights it picks up at its position relative to each
//! flag.  For a *generic* tuple of flags the achievable positions of an
//! `e`-dimensional subspace are exactly the essential position tuples of
//! [`crate::horn::enumerate_essential_positions`], so semistability of the
//! generic flagged space reduces to finitely many slope comparisons.

// Re-exported so callers can build weight sequences without tracking the
// numerics crate themselves.
pub use num_rational::Rational64;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::horn::enumerate_essential_positions;
use crate::partitions::{format_tuple, IndexSet, Partition};

/// An `s`-tuple (`s >= 3`) of weakly decreasing rational weight sequences,
/// all of length `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicWeights {
    dim: u32,
    weights: Vec<Vec<Rational64>>,
}

impl ParabolicWeights {
    /// Build from explicit sequences; every sequence must have the same
    /// positive length and be weakly decreasing.
    pub fn new(weights: Vec<Vec<Rational64>>) -> Result<Self> {
        if weights.len() < 3 {
            return Err(Error::invalid(format!(
                "need at least 3 weight sequences, got {}",
                weights.len()
            )));
        }
        let dim = weights[0].len();
        if dim == 0 {
            return Err(Error::invalid("weight sequences must be non-empty"));
        }
        for seq in &weights {
            if seq.len() != dim {
                return Err(Error::invalid(format!(
                    "weight sequences of unequal length: {} vs {dim}",
                    seq.len()
                )));
            }
            if seq.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::invalid(format!(
                    "weight sequence {seq:?} is not weakly decreasing"
                )));
            }
        }
        Ok(ParabolicWeights {
            dim: dim as u32,
            weights,
        })
    }

    /// Weight sequences read off partitions, padded with zeros to `m` rows.
    pub fn from_partitions(lambdas: &[Partition], m: u32) -> Result<Self> {
        let weights = lambdas
            .iter()
            .map(|lam| {
                Ok(lam
                    .rows_padded(m as usize)?
                    .into_iter()
                    .map(|x| Rational64::from(i64::from(x)))
                    .collect())
            })
            .collect::<Result<Vec<_>>>()?;
        ParabolicWeights::new(weights)
    }

    /// Dimension `m` of the underlying space.
    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Number of weight sequences.
    pub fn factors(&self) -> usize {
        self.weights.len()
    }

    pub fn sequences(&self) -> &[Vec<Rational64>] {
        &self.weights
    }

    /// Slope of a subspace sitting at positions `E^p` relative to the `p`-th
    /// flag: `(1/e) sum_p sum_{a in E^p} w^p_a`.  The position sets must be
    /// non-empty subsets of `[m]` of a common cardinality.
    pub fn slope(&self, e_sets: &[IndexSet]) -> Result<Rational64> {
        if e_sets.len() != self.factors() {
            return Err(Error::invalid(format!(
                "position tuple has {} entries but there are {} weight sequences",
                e_sets.len(),
                self.factors()
            )));
        }
        let e = e_sets[0].len();
        if e == 0 {
            return Err(Error::invalid("slope of the zero subspace is undefined"));
        }
        let mut total = Rational64::zero();
        for (seq, e_set) in self.weights.iter().zip(e_sets) {
            if e_set.ambient() != self.dim || e_set.len() != e {
                return Err(Error::invalid(format!(
                    "position set {e_set} is not an {e}-subset of [{}]",
                    self.dim
                )));
            }
            for &a in e_set.elements() {
                total += seq[(a - 1) as usize];
            }
        }
        Ok(total / Rational64::from(e as i64))
    }

    /// Slope of the whole space (positions `[m]` everywhere).
    pub fn total_slope(&self) -> Rational64 {
        let full = vec![IndexSet::full(self.dim); self.factors()];
        self.slope(&full).expect("full positions are always valid")
    }
}

/// Outcome of [`semistable_decide`]: the verdict plus, when unstable, the
/// first destabilizing position tuple in enumeration order.
#[derive(Clone, Debug, Serialize)]
pub struct SemistabilityDecision {
    pub semistable: bool,
    pub witness: Option<DestabilizingWitness>,
}

/// A subspace position whose slope exceeds the total slope.
#[derive(Clone, Debug, Serialize)]
pub struct DestabilizingWitness {
    /// Subspace dimension.
    pub e: u32,
    /// Position tuple in the `:`-joined text encoding.
    pub positions: String,
    /// Its slope, as `numerator/denominator`.
    pub slope: String,
    /// Slope of the whole space.
    pub total_slope: String,
}

/// Is the generically flagged space semistable?  Checks, for every proper
/// subspace dimension `0 < e < m` and every achievable position tuple, that
/// the subspace slope does not exceed the total slope.  `m = 1` is vacuously
/// semistable.
pub fn generic_semistable(weights: &ParabolicWeights) -> Result<bool> {
    Ok(semistable_decide(weights)?.semistable)
}

/// Like [`generic_semistable`], with a witness for unstable inputs.
pub fn semistable_decide(weights: &ParabolicWeights) -> Result<SemistabilityDecision> {
    let m = weights.dim();
    let total = weights.total_slope();
    for e in 1..m {
        for tuple in enumerate_essential_positions(m, e, weights.factors())? {
            let slope = weights.slope(&tuple)?;
            if slope > total {
                return Ok(SemistabilityDecision {
                    semistable: false,
                    witness: Some(DestabilizingWitness {
                        e,
                        positions: format_tuple(&tuple),
                        slope: slope.to_string(),
                        total_slope: total.to_string(),
                    }),
                });
            }
        }
    }
    Ok(SemistabilityDecision {
        semistable: true,
        witness: None,
    })
}

/// Parse a `,`-separated weight sequence whose entries are integers or
/// fractions (`3/2`).
pub fn parse_weight_sequence(s: &str) -> Result<Vec<Rational64>> {
    s.split(',')
        .map(|piece| {
            piece.trim().parse::<Rational64>().map_err(|_| Error::Parse {
                token: piece.to_string(),
                reason: "expected an integer or fraction".into(),
            })
        })
        .collect()
}

/// Parse a `:`-joined tuple of weight sequences, e.g. `1,0:1,0:1,0`.
pub fn parse_weight_tuple(s: &str) -> Result<Vec<Vec<Rational64>>> {
    s.split(':').map(parse_weight_sequence).collect()
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::parse_index_tuple;

    fn rat(n: i64) -> Rational64 {
        Rational64::from(n)
    }

    fn weights(rows: &[&[i64]]) -> ParabolicWeights {
        ParabolicWeights::new(
            rows.iter()
                .map(|seq| seq.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn slopes() {
        let w = weights(&[&[1, 0], &[1, 0], &[1, 0]]);
        let top = parse_index_tuple("1:1:1", 2).unwrap();
        assert_eq!(w.slope(&top).unwrap(), rat(3));
        assert_eq!(w.total_slope(), Rational64::new(3, 2));

        let empties = vec![IndexSet::empty(2); 3];
        assert!(w.slope(&empties).is_err());
    }

    #[test]
    fn balanced_weights_are_semistable() {
        let w = weights(&[&[1, 0], &[1, 0], &[1, 0]]);
        assert!(generic_semistable(&w).unwrap());
    }

    #[test]
    fn lopsided_weights_are_not() {
        let w = weights(&[&[2, 0], &[0, 0], &[0, 0]]);
        let d = semistable_decide(&w).unwrap();
        assert!(!d.semistable);
        let witness = d.witness.unwrap();
        assert_eq!(witness.e, 1);
        // The witness line really does destabilize: slope 2 against 1.
        assert_eq!(witness.slope, "2");
        assert_eq!(witness.total_slope, "1");
    }

    #[test]
    fn witness_position_is_achievable() {
        let w = weights(&[&[3, 0, 0], &[1, 0, 0], &[1, 1, 0]]);
        let d = semistable_decide(&w).unwrap();
        if let Some(witness) = &d.witness {
            let tuple =
                parse_index_tuple(&witness.positions, w.dim()).unwrap();
            let achievable =
                enumerate_essential_positions(w.dim(), witness.e, w.factors())
                    .unwrap();
            assert!(achievable.contains(&tuple));
        }
    }

    #[test]
    fn one_dimensional_spaces_are_vacuously_semistable() {
        let w = weights(&[&[5], &[0], &[-3]]);
        assert!(generic_semistable(&w).unwrap());
    }

    #[test]
    fn from_partitions_pads_rows() {
        let lams = vec![
            crate::partitions::parse_partition("2,1").unwrap(),
            crate::partitions::parse_partition("1").unwrap(),
            crate::partitions::parse_partition("0").unwrap(),
        ];
        let w = ParabolicWeights::from_partitions(&lams, 3).unwrap();
        assert_eq!(w.dim(), 3);
        assert_eq!(w.sequences()[1], vec![rat(1), rat(0), rat(0)]);
    }

    #[test]
    fn fraction_parsing() {
        let seqs = parse_weight_tuple("3/2,0:1,1:1,0").unwrap();
        assert_eq!(seqs[0][0], Rational64::new(3, 2));
        assert!(parse_weight_sequence("1,x").is_err());
    }

    #[test]
    fn shifting_all_weights_preserves_the_verdict() {
        let base = weights(&[&[2, 1, 0], &[1, 1, 0], &[2, 0, 0]]);
        let shifted = weights(&[&[5, 4, 3], &[4, 4, 3], &[5, 3, 3]]);
        assert_eq!(
            generic_semistable(&base).unwrap(),
            generic_semistable(&shifted).unwrap()
        );
        // Slopes shift by s * c: every factor contributes c per chosen index.
        let tuple = parse_index_tuple("1:1:1", 3).unwrap();
        assert_eq!(
            shifted.slope(&tuple).unwrap() - base.slope(&tuple).unwrap(),
            rat(9)
        );
    }
}
