//! Graded-lexicographic layout of velocity multi-indices.
//!
//! Coefficient arrays are stored degree-blocked: all multi-indices of
//! degree `d` precede those of degree `d + 1`, and within a degree the
//! order is `a1` descending, then `a2` descending. The degree-blocked
//! layout keeps the couplings of the moment equations (which only reach
//! one or two degrees away) contiguous.

/// A velocity-space multi-index `alpha = (a1, a2, a3)`.
pub type MultiIndex = [usize; 3];

/// Number of multi-indices with degree exactly `d`.
pub fn count_of_degree(d: usize) -> usize {
    (d + 1) * (d + 2) / 2
}

/// Number of multi-indices with degree `< d` (tetrahedral number).
pub fn count_below_degree(d: usize) -> usize {
    d * (d + 1) * (d + 2) / 6
}

/// Total storage length for all `|alpha| <= max_degree`.
pub fn storage_len(max_degree: usize) -> usize {
    count_below_degree(max_degree + 1)
}

/// Flat position of `alpha` in the graded-lexicographic layout.
pub fn position(alpha: MultiIndex) -> usize {
    let d = alpha[0] + alpha[1] + alpha[2];
    let tail = d - alpha[0];
    count_below_degree(d) + tail * (tail + 1) / 2 + (tail - alpha[1])
}

/// All multi-indices with `|alpha| <= max_degree` in layout order.
pub fn enumerate(max_degree: usize) -> Vec<MultiIndex> {
    let mut out = Vec::with_capacity(storage_len(max_degree));
    for d in 0..=max_degree {
        for a1 in (0..=d).rev() {
            for a2 in (0..=d - a1).rev() {
                out.push([a1, a2, d - a1 - a2]);
            }
        }
    }
    out
}

/// Unit multi-index along axis `j` (0-based).
pub fn unit(j: usize) -> MultiIndex {
    let mut e = [0usize; 3];
    e[j] = 1;
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_matches_position() {
        let all = enumerate(9);
        assert_eq!(all.len(), storage_len(9));
        for (i, &a) in all.iter().enumerate() {
            assert_eq!(position(a), i, "index {a:?}");
        }
    }

    #[test]
    fn degree_counts() {
        assert_eq!(storage_len(3), 20);
        assert_eq!(storage_len(1), 4);
        assert_eq!(count_of_degree(2), 6);
    }

    #[test]
    fn first_entries() {
        let all = enumerate(2);
        assert_eq!(all[0], [0, 0, 0]);
        assert_eq!(all[1], [1, 0, 0]);
        assert_eq!(all[2], [0, 1, 0]);
        assert_eq!(all[3], [0, 0, 1]);
        assert_eq!(all[4], [2, 0, 0]);
    }
}
