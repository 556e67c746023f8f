//! Ground-truth partition counting: exhaustive enumeration and the classical
//! two-term recurrence.
//!
//! Everything else in this crate is ultimately checked against this module.
//! [`count_set_partitions`] literally walks every set partition of
//! `{1, ..., n}` encoded as a restricted growth string and counts the ones
//! with exactly `d` blocks, so it cannot share a bug with any closed-form
//! route.  [`stirling_recurrence`] provides the standard dynamic-programming
//! count, fast enough to serve as the reference for sizes the enumeration
//! cannot reach.

use crate::error::{Error, Result};
use crate::exact::Int;

/// Largest `n` the exhaustive partition enumeration accepts.  The number of
/// set partitions of a 13-element set is 27 644 437; one step beyond is
/// 190 899 322, past the point where "walk them all" stays interactive.
pub const ENUM_MAX_N: u32 = 13;

/// Visit every restricted growth string `a[0..n]` for `n >= 2`, in
/// lexicographic order.  A restricted growth string satisfies `a[0] = 0` and
/// `a[k] <= 1 + max(a[0..k])`; these encode set partitions of `{1, ..., n}`
/// (element `k` lies in block `a[k]`).  The visitor receives the number of
/// blocks of the current string rather than the string itself, which is all
/// the counting here needs.
fn for_each_rgs_block_count(n: usize, mut visit: impl FnMut(u32)) {
    debug_assert!(n >= 2);
    let mut a = vec![0u8; n];
    // b[k] = 1 + max(a[0..k]) for k >= 1: the largest value position k may
    // take.  b[0] is unused.
    let mut b = vec![1u8; n];
    loop {
        // The last position ranges over 0..=b[n-1] with everything before it
        // fixed; the block count is max(b[n-1], a[n-1] + 1).
        let cap = b[n - 1];
        loop {
            let blocks = cap.max(a[n - 1] + 1);
            visit(u32::from(blocks));
            if a[n - 1] == cap {
                break;
            }
            a[n - 1] += 1;
        }
        // Advance the rightmost position (excluding the last) that can still
        // grow, then reset everything after it.
        let mut j = n - 2;
        while j >= 1 && a[j] == b[j] {
            j -= 1;
        }
        if j == 0 {
            return;
        }
        a[j] += 1;
        let grown = if a[j] == b[j] { b[j] + 1 } else { b[j] };
        for k in (j + 1)..n {
            a[k] = 0;
            b[k] = grown;
        }
    }
}

/// Count set partitions of `{1, ..., n}` by number of blocks, via exhaustive
/// enumeration.  Returns a vector `c` of length `n + 1` where `c[d]` is the
/// number of partitions into exactly `d` blocks; `c[0]` is 1 for `n = 0`
/// (the empty partition) and 0 otherwise.
///
/// # Errors
///
/// `BoundExceeded` if `n > ENUM_MAX_N`.
pub fn partition_census(n: u32) -> Result<Vec<Int>> {
    if n > ENUM_MAX_N {
        return Err(Error::BoundExceeded {
            name: "set-partition-enumeration (n)",
            required: Int::from(n),
            cap: u64::from(ENUM_MAX_N),
        });
    }
    let mut counts = vec![0u64; n as usize + 1];
    match n {
        0 => counts[0] = 1,
        1 => counts[1] = 1,
        _ => for_each_rgs_block_count(n as usize, |blocks| {
            counts[blocks as usize] += 1;
        }),
    }
    Ok(counts.into_iter().map(Int::from).collect())
}

/// Number of set partitions of `{1, ..., n}` into exactly `d` blocks, by
/// exhaustive enumeration.  This is the crate's ground truth: no formula, no
/// recurrence, just a walk over every partition.
///
/// # Errors
///
/// `BoundExceeded` if `n > ENUM_MAX_N`.
pub fn count_set_partitions(n: u32, d: u32) -> Result<Int> {
    let mut census = partition_census(n)?;
    if d as usize >= census.len() {
        return Ok(Int::from(0));
    }
    Ok(census.swap_remove(d as usize))
}

/// Number of set partitions of `{1, ..., n}` into exactly `d` blocks, by the
/// classical recurrence `S(n, d) = d * S(n-1, d) + S(n-1, d-1)` with
/// `S(0, 0) = 1`.  Exact at any size; time and memory are `O(n * d)` big
/// integer operations.
pub fn stirling_recurrence(n: u32, d: u32) -> Int {
    if d > n {
        return Int::from(0);
    }
    if d == 0 {
        return Int::from(u8::from(n == 0));
    }
    // row[k] = S(i, k) for the current i, tracked for k = 0..=d.
    let mut row = vec![Int::from(0); d as usize + 1];
    row[0] = Int::from(1); // S(0, 0)
    for i in 1..=n {
        // Walk right-to-left so row[k-1] still holds the previous row's
        // value when it is read.
        let hi = i.min(d) as usize;
        for k in (1..=hi).rev() {
            let carried = std::mem::take(&mut row[k]);
            row[k] = Int::from(k as u32) * carried + &row[k - 1];
        }
        row[0] = Int::from(0); // S(i, 0) = 0 once i >= 1
    }
    row.pop().expect("row has d + 1 entries by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Bell numbers via the Bell triangle, an independent construction used
    /// only to cross-check the census row sums.
    fn bell_numbers(n_max: usize) -> Vec<Int> {
        let mut bells = vec![Int::from(1)];
        let mut row = vec![Int::from(1)];
        for _ in 1..=n_max {
            let mut next = Vec::with_capacity(row.len() + 1);
            next.push(row.last().unwrap().clone());
            for prev in &row {
                let last: Int = next.last().unwrap().clone();
                next.push(last + prev);
            }
            bells.push(next[0].clone());
            row = next;
        }
        bells
    }

    #[test]
    fn census_row_sums_are_bell_numbers() {
        let bells = bell_numbers(ENUM_MAX_N as usize);
        for n in 0..=10u32 {
            let census = partition_census(n).unwrap();
            let total: Int = census.iter().sum();
            assert_eq!(total, bells[n as usize], "n = {n}");
        }
    }

    #[test]
    fn census_largest_allowed_n_matches_bell() {
        let census = partition_census(ENUM_MAX_N).unwrap();
        let total: Int = census.iter().sum();
        assert_eq!(total, Int::from(27_644_437u64));
    }

    #[test]
    fn census_rejects_n_beyond_cap() {
        let err = partition_census(ENUM_MAX_N + 1).unwrap_err();
        assert!(matches!(err, Error::BoundExceeded { .. }), "{err}");
    }

    #[test]
    fn enumeration_matches_recurrence_everywhere_it_runs() {
        for n in 0..=11u32 {
            let census = partition_census(n).unwrap();
            for d in 0..=n {
                assert_eq!(census[d as usize], stirling_recurrence(n, d), "S({n},{d})");
            }
        }
    }

    #[test]
    fn count_six_into_four_blocks() {
        assert_eq!(count_set_partitions(6, 4).unwrap(), Int::from(65));
    }

    #[test]
    fn recurrence_edge_cases() {
        assert_eq!(stirling_recurrence(0, 0), Int::from(1));
        assert_eq!(stirling_recurrence(5, 0), Int::from(0));
        assert_eq!(stirling_recurrence(3, 5), Int::from(0));
        assert_eq!(stirling_recurrence(7, 1), Int::from(1));
        assert_eq!(stirling_recurrence(7, 7), Int::from(1));
        // S(n, n-1) = C(n, 2)
        assert_eq!(stirling_recurrence(9, 8), Int::from(36));
        // S(n, 2) = 2^(n-1) - 1
        assert_eq!(stirling_recurrence(10, 2), Int::from(511));
    }

    #[test]
    fn recurrence_handles_moderately_large_input() {
        // S(40, 20), checked against an independently computed value.
        assert_eq!(
            stirling_recurrence(40, 20).to_string(),
            "162188909527975750487887236507181"
        );
    }
}
