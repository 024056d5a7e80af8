//! Execution strategy for instance scans.
//!
//! Scans over independent problem instances can run sequentially or on the
//! rayon thread pool.  The parallel path exists only when the `parallel`
//! feature is enabled (the default); without it, [`Threading::Parallel`]
//! silently degrades to the sequential path so callers never need to care.
//! Both paths preserve input order, so scan reports are identical
//! regardless of strategy.

use std::str::FromStr;

use crate::error::Error;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Threading {
    Sequential,
    #[default]
    Parallel,
}

impl FromStr for Threading {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "sequential" => Ok(Threading::Sequential),
            "parallel" => Ok(Threading::Parallel),
            other => Err(Error::Parse {
                token: other.to_string(),
                reason: "expected `sequential` or `parallel`".to_string(),
            }),
        }
    }
}

/// Apply `f` to every item, in order, with the chosen strategy.
pub fn map_instances<T, U, F>(threading: Threading, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    match threading {
        Threading::Sequential => items.into_iter().map(f).collect(),
        Threading::Parallel => {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                items.into_par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                items.into_iter().map(f).collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_strategies_agree_and_preserve_order() {
        let items: Vec<u64> = (0..100).collect();
        let seq = map_instances(Threading::Sequential, items.clone(), |x| x * x + 1);
        let par = map_instances(Threading::Parallel, items, |x| x * x + 1);
        assert_eq!(seq, par);
        assert_eq!(seq[3], 10);
        assert!(seq.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn threading_parses() {
        assert_eq!("sequential".parse::<Threading>().unwrap(), Threading::Sequential);
        assert_eq!("parallel".parse::<Threading>().unwrap(), Threading::Parallel);
        assert!("both".parse::<Threading>().is_err());
        assert_eq!(Threading::default(), Threading::Parallel);
    }
}
