//! Exact arbitrary-precision arithmetic: integers, rationals, and the small
//! combinatorial helpers everything else is built on.
//!
//! All arithmetic in this crate is exact.  Floating point appears only in
//! Monte Carlo estimates and timing figures, never in any identity check.
//!
//! The integer and rational types are re-exported from `num-bigint` /
//! `num-rational` under the local names [`Int`] and [`Rat`]; the helpers here
//! add the pieces those crates do not provide in the exact form we need:
//! binomial coefficients via the multiplicative formula with exact stepwise
//! division, factorials, integer powers of rationals with negative exponents,
//! and a strict `p/q` parser for CLI input.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type Int = BigInt;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator (the underlying type normalizes on construction).
pub type Rat = BigRational;

/// Convenience constructor for an [`Int`] from a machine integer.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Convenience constructor for a [`Rat`] from a machine integer.
pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

/// Convenience constructor for the [`Rat`] `num / den`.
///
/// # Panics
///
/// Panics if `den == 0`; use [`parse_rational`] for untrusted input.
pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "rational denominator must be nonzero");
    Rat::new(Int::from(num), Int::from(den))
}

/// `n!` as an exact integer (`0! = 1`).
pub fn factorial(n: u32) -> Int {
    let mut acc = Int::one();
    for i in 2..=u64::from(n) {
        acc *= i;
    }
    acc
}

/// Binomial coefficient `C(n, k)` as an exact integer.
///
/// Out-of-range `k` (negative or greater than `n`) gives 0, which lets
/// alternating-sum formulas run over their natural index ranges without
/// special-casing the ends.
///
/// Computed by the multiplicative formula with division performed at every
/// step; each intermediate quotient `C(n, i)` is itself an integer, so the
/// divisions are exact (debug-asserted) and intermediates never exceed the
/// final result times `n`.
pub fn binomial(n: u32, k: i64) -> Int {
    if k < 0 || k > i64::from(n) {
        return Int::zero();
    }
    let k = k as u32;
    // Symmetry keeps the loop short for k near n.
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 1..=u64::from(k) {
        acc *= u64::from(n) - i + 1;
        let (q, r) = acc.div_rem(&Int::from(i));
        debug_assert!(r.is_zero(), "binomial intermediate division must be exact");
        acc = q;
    }
    acc
}

/// `(-1)^k` as an exact integer, for alternating sums indexed by `u32`.
pub fn neg_one_pow(k: u32) -> Int {
    if k.is_multiple_of(2) {
        Int::one()
    } else {
        -Int::one()
    }
}

/// `base^exp` for an integer base and nonnegative exponent, with the usual
/// combinatorial convention `0^0 = 1`.
pub fn int_pow(base: &Int, exp: u32) -> Int {
    num_traits::pow::pow(base.clone(), exp as usize)
}

/// `base^exp` for a rational base and a signed exponent.
///
/// # Errors
///
/// `Domain` if `base == 0` and `exp < 0`.
pub fn rat_pow(base: &Rat, exp: i64) -> Result<Rat> {
    if exp >= 0 {
        Ok(num_traits::pow::pow(base.clone(), exp as usize))
    } else if base.is_zero() {
        Err(Error::domain("zero cannot be raised to a negative power"))
    } else {
        let pos = num_traits::pow::pow(base.clone(), (-exp) as usize);
        Ok(pos.recip())
    }
}

/// Exact quotient `num / den` of two integers.
///
/// # Errors
///
/// `Internal` if the division leaves a remainder.  This is used where a
/// formula guarantees divisibility (e.g. a weighted sum divisible by `d!`),
/// so a remainder means the formula was implemented wrongly.
pub fn exact_div(num: &Int, den: &Int) -> Result<Int> {
    if den.is_zero() {
        return Err(Error::internal("exact division by zero".to_string()));
    }
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::internal(format!(
            "expected {num} to be divisible by {den}"
        )))
    }
}

/// Parse an exact rational from the wire form used throughout the CLI:
/// an optional sign, a decimal integer, and optionally `/` followed by a
/// positive decimal integer (`"7"`, `"-3"`, `"7/2"`, `"-13/6"`).
///
/// # Errors
///
/// `Domain` on empty input, malformed digits, or a zero denominator.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::domain("empty rational literal"));
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num: Int = num_str
        .parse()
        .map_err(|_| Error::domain(format!("invalid integer {num_str:?} in rational literal")))?;
    let den: Int = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| Error::domain(format!("invalid denominator {d:?} in rational literal")))?,
        None => Int::one(),
    };
    if den.is_zero() {
        return Err(Error::domain("rational denominator must be nonzero"));
    }
    Ok(Rat::new(num, den))
}

/// Render a rational in the same wire form accepted by [`parse_rational`]:
/// `"p/q"` in lowest terms, or just `"p"` when the denominator is 1.
pub fn format_rational(r: &Rat) -> String {
    r.to_string()
}

/// Best-effort `f64` value of an exact rational (used only for Monte Carlo
/// comparisons and display, never inside an identity check).
pub fn rat_to_f64(r: &Rat) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or_else(|| {
        // Fall back to a quotient of rounded parts for extreme magnitudes.
        let num = num_traits::ToPrimitive::to_f64(r.numer()).unwrap_or(f64::MAX);
        let den = num_traits::ToPrimitive::to_f64(r.denom()).unwrap_or(f64::MAX);
        num / den
    })
}

/// True when the rational is an integer (denominator 1 after normalization).
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Absolute value of a rational.
pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn factorial_small_values() {
        let expected = [1u64, 1, 2, 6, 24, 120, 720, 5040, 40320, 362880, 3628800];
        for (n, want) in expected.iter().enumerate() {
            assert_eq!(factorial(n as u32), Int::from(*want), "n = {n}");
        }
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        // Build Pascal's triangle independently and compare every entry.
        let rows = 30usize;
        let mut triangle: Vec<Vec<Int>> = vec![vec![Int::one()]];
        for n in 1..=rows {
            let prev = &triangle[n - 1];
            let mut row = vec![Int::one()];
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(Int::one());
            triangle.push(row);
        }
        for (n, row) in triangle.iter().enumerate() {
            for (k, want) in row.iter().enumerate() {
                assert_eq!(binomial(n as u32, k as i64), *want, "C({n},{k})");
            }
        }
    }

    #[test]
    fn binomial_out_of_range_is_zero() {
        assert_eq!(binomial(5, -1), Int::zero());
        assert_eq!(binomial(5, 6), Int::zero());
        assert_eq!(binomial(0, 0), Int::one());
    }

    #[test]
    fn binomial_large_value_is_exact() {
        // C(60, 30) = 118264581564861424, large enough to overflow u32 math.
        assert_eq!(
            binomial(60, 30),
            "118264581564861424".parse::<Int>().unwrap()
        );
    }

    #[test]
    fn int_pow_zero_to_the_zero_is_one() {
        assert_eq!(int_pow(&Int::zero(), 0), Int::one());
        assert_eq!(int_pow(&Int::zero(), 3), Int::zero());
        assert_eq!(int_pow(&int(-2), 3), int(-8));
    }

    #[test]
    fn rat_pow_handles_negative_exponents() {
        let x = rat(3, 2);
        assert_eq!(rat_pow(&x, 2).unwrap(), rat(9, 4));
        assert_eq!(rat_pow(&x, -2).unwrap(), rat(4, 9));
        assert_eq!(rat_pow(&x, 0).unwrap(), rat_int(1));
        assert!(rat_pow(&rat_int(0), -1).is_err());
    }

    #[test]
    fn exact_div_rejects_inexact() {
        assert_eq!(exact_div(&int(24), &int(4)).unwrap(), int(6));
        assert!(exact_div(&int(25), &int(4)).is_err());
        assert!(exact_div(&int(1), &int(0)).is_err());
    }

    #[test]
    fn parse_rational_accepts_wire_forms() {
        assert_eq!(parse_rational("7").unwrap(), rat_int(7));
        assert_eq!(parse_rational("-3").unwrap(), rat_int(-3));
        assert_eq!(parse_rational("7/2").unwrap(), rat(7, 2));
        assert_eq!(parse_rational("-13/6").unwrap(), rat(-13, 6));
        assert_eq!(parse_rational(" 9/3 ").unwrap(), rat_int(3));
        // Normalization: sign moves to the numerator, fraction is reduced.
        assert_eq!(parse_rational("4/-6").unwrap(), rat(-2, 3));
    }

    #[test]
    fn parse_rational_rejects_garbage() {
        for bad in ["", "  ", "1/0", "0/0", "a", "1/b", "1//2", "1.5", "--2"] {
            assert!(parse_rational(bad).is_err(), "should reject {bad:?}");
        }
    }

    #[test]
    fn format_round_trips_through_parse() {
        for s in ["0", "7", "-3", "7/2", "-13/6"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
    }

    proptest! {
        #[test]
        fn prop_binomial_symmetry(n in 0u32..64, k in 0i64..64) {
            prop_assume!(k <= i64::from(n));
            prop_assert_eq!(binomial(n, k), binomial(n, i64::from(n) - k));
        }

        #[test]
        fn prop_binomial_row_sums_to_power_of_two(n in 0u32..40) {
            let mut sum = Int::zero();
            for k in 0..=i64::from(n) {
                sum += binomial(n, k);
            }
            prop_assert_eq!(sum, int_pow(&int(2), n));
        }

        #[test]
        fn prop_parse_format_round_trip(num in -10_000i64..10_000, den in 1i64..10_000) {
            let r = rat(num, den);
            let s = format_rational(&r);
            prop_assert_eq!(parse_rational(&s).unwrap(), r);
        }

        #[test]
        fn prop_rat_pow_multiplies_exponents(num in -20i64..20, den in 1i64..20, e in 0i64..6) {
            prop_assume!(num != 0);
            let x = rat(num, den);
            let forward = rat_pow(&x, e).unwrap();
            let backward = rat_pow(&x, -e).unwrap();
            prop_assert_eq!(forward * backward, rat_int(1));
        }
    }
}
