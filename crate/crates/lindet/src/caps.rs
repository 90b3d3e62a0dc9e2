//! Size caps for the exhaustive algorithms.
//!
//! Everything in this crate enumerates combinatorial objects or expands
//! permutation sums, so runtimes are factorial or exponential by design.
//! Each cap keeps the corresponding operation comfortably inside desk
//! scale; exceeding one is reported as a distinct error (CLI exit code 3),
//! never as silent truncation.

use crate::error::{Error, Result};

/// Largest dimension for `det`, `per`, and `charpoly` (n! expansion).
pub const MAX_EXPANSION_DIM: usize = 10;

/// Largest vertex count for closed-walk enumeration.
pub const MAX_WALK_VERTICES: usize = 8;

/// Longest closed walk that is enumerated rather than traced.
pub const MAX_WALK_LENGTH: usize = 12;

/// Largest vertex count for linear-subdigraph enumeration.
pub const MAX_SUBDIGRAPH_VERTICES: usize = 10;

/// Largest vertex count for the involution certificate.
pub const MAX_PROOF_VERTICES: usize = 4;

/// Largest total length r for the involution certificate.
pub const MAX_PROOF_LENGTH: usize = 6;

/// Largest path-system size (number of sources).
pub const MAX_SYSTEM_SIZE: usize = 5;

/// Largest number of path systems a single enumeration may produce.
pub const MAX_SYSTEMS: u128 = 1_000_000;

/// Largest dimension for the symbolic Cramer identity certificate.
pub const MAX_CRAMER_DIM: usize = 4;

/// Largest matrix dimension for alternating determinant/permanent sums.
pub const MAX_TUPLE_DIM: usize = 6;

/// Largest tuple length for alternating determinant/permanent sums.
pub const MAX_TUPLE_LEN: usize = 8;

/// Largest matrix dimension for the boxes-digraph decomposition.
pub const MAX_PIE_DIM: usize = 4;

/// Largest tuple length for the boxes-digraph decomposition.
pub const MAX_PIE_LEN: usize = 6;

pub(crate) fn check(what: &'static str, actual: usize, limit: usize) -> Result<()> {
    if actual > limit {
        Err(Error::CapExceeded {
            what,
            actual,
            limit,
        })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_is_inclusive() {
        assert!(check("n", MAX_EXPANSION_DIM, MAX_EXPANSION_DIM).is_ok());
        assert_eq!(
            check("n", 11, MAX_EXPANSION_DIM).unwrap_err(),
            Error::CapExceeded {
                what: "n",
                actual: 11,
                limit: 10
            }
        );
    }
}
