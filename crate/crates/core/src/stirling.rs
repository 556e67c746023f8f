//! Stirling partition counts along several independent computational routes.
//!
//! The whole point of this module is redundancy: the same number `S(n, d)` —
//! the number of partitions of an `n`-set into `d` nonempty blocks — is
//! computed by structurally unrelated algorithms so each can certify the
//! others.
//!
//! * [`stirling_euler`] — the classical alternating binomial sum.
//! * [`stirling_record_sum`] — a weighted sum over strictly increasing index
//!   tuples (the positions where a running maximum jumps, i.e. record
//!   times); every tuple is enumerated and its weight is a product of
//!   integer powers.  The weighted sum is divisible by `d!` and the quotient
//!   is `S(n, d)`.
//! * [`stirling_record_dp`] — the same weighted sum folded into a dynamic
//!   program, one multiplication per table cell instead of one product per
//!   tuple.
//! * [`stirling_via_duality`] — `S(n, d)` read off as a complete homogeneous
//!   monomial sum [`s2_nested`] with swapped, shifted arguments.
//!
//! The record-route evaluators are instrumented: they report how many
//! big-integer multiplications they performed, which is what the benchmark
//! command compares.  Alternating reciprocal sums ([`harmonic_alt_sum`],
//! [`dilcher_multiple_sum`]) live here too since they are checked by the same
//! machinery.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, exact_div, factorial, int_pow, neg_one_pow, Int, Rat};

/// Default cap on the number of strictly increasing index tuples the naive
/// record-route evaluator will enumerate.
pub const RECORD_TUPLE_CAP: u64 = 10_000_000;

/// Default cap on the number of weakly increasing tuples enumerated by
/// [`s2_enumerated`].
pub const S2_TUPLE_CAP: u64 = 10_000_000;

/// Default cap on the number of weakly increasing tuples enumerated by
/// [`dilcher_multiple_sum`].
pub const DILCHER_TUPLE_CAP: u64 = 10_000_000;

/// Result of evaluating a record-route formula, with its intermediate sum
/// (before the `d!` division) and a count of big-integer multiplications.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordEvaluation {
    /// The weighted sum over index tuples, before division by `d!`.
    pub weight_sum: Int,
    /// The partition count `weight_sum / d!` (the division is exact).
    pub value: Int,
    /// Number of big-integer multiplications performed, counting power-table
    /// construction and per-tuple (or per-cell) products, but not additions
    /// and not the final division by `d!`.
    pub big_mults: u64,
}

/// `S(n, d)` by the classical alternating sum
/// `(-1)^d / d! * sum_{r=0}^{d} (-1)^r C(d, r) r^n`, with `0^0 = 1`.
/// Defined for all `n, d >= 0`; gives 0 when `d > n`.
///
/// # Errors
///
/// `Internal` if the alternating sum fails to be divisible by `d!`, which
/// would mean this implementation is wrong.
pub fn stirling_euler(n: u32, d: u32) -> Result<Int> {
    let mut sum = Int::zero();
    for r in 0..=d {
        let term = binomial(d, i64::from(r)) * int_pow(&Int::from(r), n);
        if r % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum *= neg_one_pow(d);
    exact_div(&sum, &factorial(d))
}

fn check_record_domain(n: u32, d: u32) -> Result<()> {
    if d == 0 || d > n {
        return Err(Error::domain(format!(
            "record-route formulas require 1 <= d <= n, got n = {n}, d = {d}"
        )));
    }
    Ok(())
}

/// Visit every strictly increasing `k`-tuple from `{1, ..., limit}` in
/// lexicographic order.  `k = 0` visits the empty tuple once.
pub(crate) fn for_each_increasing_tuple(limit: u32, k: u32, mut visit: impl FnMut(&[u32])) {
    let k = k as usize;
    if k == 0 {
        visit(&[]);
        return;
    }
    debug_assert!(limit as usize >= k);
    let mut j: Vec<u32> = (1..=k as u32).collect();
    loop {
        visit(&j);
        // Rightmost position that can still grow; position i may reach
        // limit - (k - 1 - i).
        let mut i = k - 1;
        loop {
            if j[i] < limit - (k - 1 - i) as u32 {
                break;
            }
            if i == 0 {
                return;
            }
            i -= 1;
        }
        j[i] += 1;
        for t in (i + 1)..k {
            j[t] = j[t - 1] + 1;
        }
    }
}

/// Evaluate the record-route weighted sum by enumerating every strictly
/// increasing `(d-1)`-tuple `1 <= j_1 < ... < j_{d-1} < n`.  Each tuple
/// carries the weight `prod_{m=1}^{d} (d - m + 1)^(j_m - j_{m-1})` with
/// `j_0 = 0` and `j_d = n` (the final factor has base 1 and is inert).
/// The weighted sum equals `d! * S(n, d)`.
///
/// # Errors
///
/// `Domain` unless `1 <= d <= n`; `BoundExceeded` if the number of tuples
/// `C(n-1, d-1)` exceeds `cap`.
pub fn record_sum_details(n: u32, d: u32, cap: u64) -> Result<RecordEvaluation> {
    check_record_domain(n, d)?;
    let tuples = binomial(n - 1, i64::from(d) - 1);
    if tuples > Int::from(cap) {
        return Err(Error::BoundExceeded {
            name: "record-tuples",
            required: tuples,
            cap,
        });
    }

    let mut mults = 0u64;
    // pows[c][e] = c^e for the bases that appear as gap factors.  Only rows
    // c >= 2 cost multiplications; rows 0 and 1 are trivial.
    let max_e = n as usize;
    let mut pows: Vec<Vec<Int>> = Vec::with_capacity(d as usize + 1);
    for c in 0..=d {
        let mut row = Vec::with_capacity(max_e + 1);
        row.push(Int::one());
        for _ in 1..=max_e {
            let next = row.last().unwrap() * c;
            if c >= 2 {
                mults += 1;
            }
            row.push(next);
        }
        pows.push(row);
    }

    let mut weight_sum = Int::zero();
    for_each_increasing_tuple(n - 1, d - 1, |j| {
        // Gap factors for m = 1..=d-1; the m = d factor has base 1.
        let mut prev = 0u32;
        let mut weight: Option<Int> = None;
        for (m, &jm) in j.iter().enumerate() {
            let base = (d - m as u32) as usize; // d - (m+1) + 1
            let gap = (jm - prev) as usize;
            let factor = &pows[base][gap];
            weight = Some(match weight {
                None => factor.clone(),
                Some(acc) => {
                    mults += 1;
                    acc * factor
                }
            });
            prev = jm;
        }
        weight_sum += weight.unwrap_or_else(Int::one);
    });

    let value = exact_div(&weight_sum, &factorial(d))?;
    Ok(RecordEvaluation {
        weight_sum,
        value,
        big_mults: mults,
    })
}

/// `S(n, d)` via [`record_sum_details`] with the default tuple cap.
pub fn stirling_record_sum(n: u32, d: u32) -> Result<Int> {
    Ok(record_sum_details(n, d, RECORD_TUPLE_CAP)?.value)
}

/// Evaluate the record-route weighted sum by dynamic programming instead of
/// tuple enumeration.  `W[t][m]` is the weighted sum over strictly
/// increasing `m`-tuples ending exactly at `t`; it satisfies
/// `W[t][m] = (d - m + 1) * (W[t-1][m] + W[t-1][m-1])` with `W[0][0] = 1`,
/// and the total weighted sum is `sum_t W[t][d-1]`.  One big-integer
/// multiplication per table cell.
///
/// # Errors
///
/// `Domain` unless `1 <= d <= n`.
pub fn record_dp_details(n: u32, d: u32) -> Result<RecordEvaluation> {
    check_record_domain(n, d)?;
    let width = d as usize; // columns m = 0..=d-1
    let mut mults = 0u64;

    // Row t = 0: W[0][0] = 1, everything else 0.  The accumulator picks up
    // column d-1 of every row; at t = 0 that is 1 exactly when d = 1.
    let mut row = vec![Int::zero(); width];
    row[0] = Int::one();
    let mut weight_sum = row[width - 1].clone();

    for _t in 1..n {
        let mut next = vec![Int::zero(); width];
        for m in 1..width {
            let combined = &row[m] + &row[m - 1];
            next[m] = combined * (d - m as u32 + 1);
            mults += 1;
        }
        // W[t][0] = 0 for t >= 1, which `next` already holds.
        weight_sum += &next[width - 1];
        row = next;
    }

    let value = exact_div(&weight_sum, &factorial(d))?;
    Ok(RecordEvaluation {
        weight_sum,
        value,
        big_mults: mults,
    })
}

/// `S(n, d)` via [`record_dp_details`].
pub fn stirling_record_dp(n: u32, d: u32) -> Result<Int> {
    Ok(record_dp_details(n, d)?.value)
}

/// Visit every weakly increasing `k`-tuple with entries in `{1, ..., limit}`
/// in lexicographic order.  `k = 0` visits the empty tuple once; a positive
/// `k` with `limit = 0` visits nothing.
fn for_each_weakly_increasing_tuple(limit: u32, k: u32, mut visit: impl FnMut(&[u32])) {
    let k = k as usize;
    if k == 0 {
        visit(&[]);
        return;
    }
    if limit == 0 {
        return;
    }
    let mut j = vec![1u32; k];
    loop {
        visit(&j);
        let mut i = k - 1;
        loop {
            if j[i] < limit {
                break;
            }
            if i == 0 {
                return;
            }
            i -= 1;
        }
        j[i] += 1;
        for t in (i + 1)..k {
            j[t] = j[i];
        }
    }
}

/// Number of weakly increasing `k`-tuples from `{1, ..., limit}`:
/// `C(limit + k - 1, k)`.
fn weakly_increasing_tuple_count(limit: u32, k: u32) -> Int {
    if k == 0 {
        return Int::one();
    }
    binomial(limit + k - 1, i64::from(k))
}

/// The complete homogeneous monomial sum
/// `sum_{1 <= j_1 <= ... <= j_d <= n} j_1 * j_2 * ... * j_d`, evaluated by
/// enumerating every tuple.  `d = 0` gives 1 (empty product); `n = 0` with
/// `d >= 1` gives 0 (no tuples).
///
/// # Errors
///
/// `BoundExceeded` if the number of tuples `C(n + d - 1, d)` exceeds `cap`.
pub fn s2_enumerated(n: u32, d: u32, cap: u64) -> Result<Int> {
    let tuples = weakly_increasing_tuple_count(n, d);
    if tuples > Int::from(cap) {
        return Err(Error::BoundExceeded {
            name: "monomial-tuples",
            required: tuples,
            cap,
        });
    }
    let mut sum = Int::zero();
    for_each_weakly_increasing_tuple(n, d, |j| {
        let mut prod = Int::one();
        for &v in j {
            prod *= v;
        }
        sum += prod;
    });
    Ok(sum)
}

/// The same complete homogeneous monomial sum as [`s2_enumerated`], computed
/// by iterated suffix summation: `P_k[t] = sum_{j=t}^{n} j * P_{k-1}[j]`
/// with `P_0 = 1`, and the result is `P_d[1]`.  Exact at any size, with
/// `O(n * d)` arithmetic operations.
pub fn s2_nested(n: u32, d: u32) -> Int {
    if d == 0 {
        return Int::one();
    }
    if n == 0 {
        return Int::zero();
    }
    // prev[t - 1] = P_{k-1}[t] for t = 1..=n.
    let mut prev = vec![Int::one(); n as usize];
    for _k in 1..=d {
        let mut next = vec![Int::zero(); n as usize];
        let mut suffix = Int::zero();
        for t in (1..=n).rev() {
            suffix += &prev[t as usize - 1] * t;
            next[t as usize - 1] = suffix.clone();
        }
        prev = next;
    }
    prev.into_iter().next().expect("n >= 1 so P_d[1] exists")
}

/// `S(n, d)` read off from the monomial sum with swapped, shifted arguments:
/// `S(n, d) = s2(d, n - d)` — range bound `d`, tuple length `n - d`.
///
/// # Errors
///
/// `Domain` if `d > n` (the tuple length would be negative).
pub fn stirling_via_duality(n: u32, d: u32) -> Result<Int> {
    if d > n {
        return Err(Error::domain(format!(
            "duality route requires d <= n, got n = {n}, d = {d}"
        )));
    }
    Ok(s2_nested(d, n - d))
}

/// The alternating binomial reciprocal sum
/// `sum_{r=1}^{d} C(d, r) (-1)^(r-1) / r^n`.  For `n = 1` this is the
/// harmonic number `H_d`.
pub fn harmonic_alt_sum(n: u32, d: u32) -> Rat {
    let mut sum = Rat::zero();
    for r in 1..=d {
        let term = Rat::new(binomial(d, i64::from(r)), int_pow(&Int::from(r), n));
        if r % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// The multiple reciprocal sum
/// `sum_{1 <= j_1 <= ... <= j_n <= d} 1 / (j_1 * j_2 * ... * j_n)`,
/// evaluated by enumerating every weakly increasing `n`-tuple from
/// `{1, ..., d}`.  Equals [`harmonic_alt_sum`] `(n, d)` for `n >= 1`.
///
/// # Errors
///
/// `Domain` if `n = 0`; `BoundExceeded` if the number of tuples
/// `C(d + n - 1, n)` exceeds `cap`.
pub fn dilcher_multiple_sum(n: u32, d: u32, cap: u64) -> Result<Rat> {
    if n == 0 {
        return Err(Error::domain(
            "the multiple reciprocal sum requires n >= 1".to_string(),
        ));
    }
    let tuples = weakly_increasing_tuple_count(d, n);
    if tuples > Int::from(cap) {
        return Err(Error::BoundExceeded {
            name: "reciprocal-tuples",
            required: tuples,
            cap,
        });
    }
    let mut sum = Rat::zero();
    for_each_weakly_increasing_tuple(d, n, |j| {
        let mut prod = Int::one();
        for &v in j {
            prod *= v;
        }
        sum += Rat::new(Int::one(), prod);
    });
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::partitions::stirling_recurrence;
    use proptest::prelude::*;

    #[test]
    fn euler_matches_recurrence_including_degenerate_corners() {
        for n in 0..=20u32 {
            for d in 0..=n + 2 {
                assert_eq!(
                    stirling_euler(n, d).unwrap(),
                    stirling_recurrence(n, d),
                    "S({n},{d})"
                );
            }
        }
    }

    #[test]
    fn record_routes_match_recurrence() {
        for n in 1..=12u32 {
            for d in 1..=n {
                let sum = record_sum_details(n, d, RECORD_TUPLE_CAP).unwrap();
                let dp = record_dp_details(n, d).unwrap();
                let want = stirling_recurrence(n, d);
                assert_eq!(sum.value, want, "naive S({n},{d})");
                assert_eq!(dp.value, want, "dp S({n},{d})");
                assert_eq!(sum.weight_sum, dp.weight_sum, "weighted sums ({n},{d})");
            }
        }
    }

    #[test]
    fn worked_example_six_four() {
        let naive = record_sum_details(6, 4, RECORD_TUPLE_CAP).unwrap();
        assert_eq!(naive.weight_sum, Int::from(1560));
        assert_eq!(naive.value, Int::from(65));
        let dp = record_dp_details(6, 4).unwrap();
        assert_eq!(dp.weight_sum, Int::from(1560));
        assert_eq!(dp.value, Int::from(65));
    }

    #[test]
    fn record_routes_reject_bad_domain() {
        assert!(stirling_record_sum(5, 0).is_err());
        assert!(stirling_record_sum(4, 5).is_err());
        assert!(stirling_record_dp(5, 0).is_err());
        assert!(stirling_record_dp(4, 5).is_err());
    }

    #[test]
    fn record_sum_respects_tuple_cap() {
        // C(19, 10) = 92378 tuples; a cap of 1000 must refuse.
        let err = record_sum_details(20, 11, 1000).unwrap_err();
        match err {
            Error::BoundExceeded {
                name,
                required,
                cap,
            } => {
                assert_eq!(name, "record-tuples");
                assert_eq!(required, Int::from(92378));
                assert_eq!(cap, 1000);
            }
            other => panic!("expected BoundExceeded, got {other}"),
        }
    }

    #[test]
    fn dp_uses_strictly_fewer_multiplications_on_the_benchmark_size() {
        let naive = record_sum_details(14, 7, RECORD_TUPLE_CAP).unwrap();
        let dp = record_dp_details(14, 7).unwrap();
        assert_eq!(naive.value, dp.value);
        assert!(
            dp.big_mults < naive.big_mults,
            "dp {} should be below naive {}",
            dp.big_mults,
            naive.big_mults
        );
    }

    #[test]
    fn monomial_sum_forms_agree_and_match_frozen_value() {
        assert_eq!(s2_nested(3, 2), Int::from(25));
        assert_eq!(s2_enumerated(3, 2, S2_TUPLE_CAP).unwrap(), Int::from(25));
        for n in 0..=8u32 {
            for d in 0..=6u32 {
                assert_eq!(
                    s2_enumerated(n, d, S2_TUPLE_CAP).unwrap(),
                    s2_nested(n, d),
                    "s2({n},{d})"
                );
            }
        }
    }

    #[test]
    fn monomial_sum_edge_conventions() {
        assert_eq!(s2_nested(0, 0), Int::one());
        assert_eq!(s2_nested(5, 0), Int::one());
        assert_eq!(s2_nested(0, 3), Int::zero());
        assert_eq!(s2_enumerated(0, 0, 10).unwrap(), Int::one());
        assert_eq!(s2_enumerated(0, 3, 10).unwrap(), Int::zero());
    }

    #[test]
    fn duality_reads_partition_counts_off_the_monomial_sum() {
        for n in 0..=14u32 {
            for d in 0..=n {
                assert_eq!(
                    stirling_via_duality(n, d).unwrap(),
                    stirling_recurrence(n, d),
                    "S({n},{d})"
                );
            }
        }
        assert!(stirling_via_duality(3, 4).is_err());
    }

    #[test]
    fn harmonic_alt_sum_gives_harmonic_numbers_at_n_one() {
        assert_eq!(harmonic_alt_sum(1, 1), rat(1, 1));
        assert_eq!(harmonic_alt_sum(1, 3), rat(11, 6));
        assert_eq!(harmonic_alt_sum(1, 5), rat(137, 60));
        assert_eq!(harmonic_alt_sum(0, 4), rat(1, 1));
        assert_eq!(harmonic_alt_sum(3, 0), rat(0, 1));
    }

    #[test]
    fn reciprocal_sums_agree_on_a_small_grid() {
        for n in 1..=6u32 {
            for d in 1..=6u32 {
                assert_eq!(
                    dilcher_multiple_sum(n, d, DILCHER_TUPLE_CAP).unwrap(),
                    harmonic_alt_sum(n, d),
                    "({n},{d})"
                );
            }
        }
    }

    #[test]
    fn reciprocal_sum_edge_cases() {
        assert!(dilcher_multiple_sum(0, 3, 10).is_err());
        // No tuples when d = 0, so the sum is empty.
        assert_eq!(dilcher_multiple_sum(4, 0, 10).unwrap(), rat(0, 1));
        let err = dilcher_multiple_sum(10, 10, 100).unwrap_err();
        assert!(matches!(err, Error::BoundExceeded { .. }), "{err}");
    }

    proptest! {
        #[test]
        fn prop_euler_equals_recurrence(n in 0u32..36, d in 0u32..36) {
            prop_assert_eq!(stirling_euler(n, d).unwrap(), stirling_recurrence(n, d));
        }

        #[test]
        fn prop_record_dp_equals_naive(n in 1u32..14, delta in 0u32..14) {
            let d = 1 + delta % n.max(1);
            prop_assume!(d <= n);
            let naive = record_sum_details(n, d, RECORD_TUPLE_CAP).unwrap();
            let dp = record_dp_details(n, d).unwrap();
            prop_assert_eq!(naive.weight_sum, dp.weight_sum);
            prop_assert_eq!(naive.value, dp.value);
        }

        #[test]
        fn prop_duality_equals_euler(n in 0u32..30, d in 0u32..30) {
            prop_assume!(d <= n);
            prop_assert_eq!(
                stirling_via_duality(n, d).unwrap(),
                stirling_euler(n, d).unwrap()
            );
        }
    }
}
