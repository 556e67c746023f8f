//! Dense exact-coefficient polynomials and the two polynomial families whose
//! coefficientwise equality drives most of the verification suite.
//!
//! The two families are built along completely different routes:
//!
//! * [`poly_f`] expands a `d!`-weighted sum over strictly increasing index
//!   tuples, each contributing a product of shifted linear factors — the
//!   generating-function form of the record-route weighted sum.
//! * [`poly_g`] expands the alternating binomial sum
//!   `sum_r (-1)^r C(d, r) (x - r)^n`, the `d`-th finite difference of
//!   `x^n` up to sign.
//!
//! Their equality as polynomials is the central identity everything else in
//! the crate leans on; [`poly_g_stirling`] rebuilds the same polynomial a
//! third way from partition counts.  Evaluation forms ([`kappa`], [`rho`],
//! [`signed_g`]) and the two inversion formulas (the corrected
//! [`stirling_from_f_inversion`] and the deliberately kept, known-wrong
//! [`printed_inversion_value`]) live here too.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, int_pow, is_integer, rat_pow, Int, Rat};
use crate::stirling::{for_each_increasing_tuple, stirling_euler};

/// Default cap on the number of index tuples [`poly_f`] and [`rho`] will
/// enumerate.
pub const POLY_TUPLE_CAP: u64 = 1_000_000;

/// A univariate polynomial with exact rational coefficients, stored densely
/// in ascending order with no trailing zero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rat>,
}

impl Polynomial {
    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// The zero polynomial (empty coefficient list, no degree).
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Polynomial::constant(Rat::one())
    }

    /// A constant polynomial.
    pub fn constant(c: Rat) -> Self {
        Polynomial::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Polynomial::new(coeffs)
    }

    /// Build from small integer coefficients, ascending.
    pub fn from_integers(coeffs: &[i64]) -> Self {
        Polynomial::new(
            coeffs
                .iter()
                .map(|&c| Rat::from_integer(Int::from(c)))
                .collect(),
        )
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    /// Ascending coefficient slice (empty for the zero polynomial).
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Leading coefficient, or `None` for the zero polynomial.
    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `self * x^k`.
    pub fn shifted_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Index of the first coefficient where the two polynomials differ, or
    /// `None` when they are equal.
    pub fn first_mismatch(&self, other: &Polynomial) -> Option<usize> {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).find(|&i| self.coeff(i) != other.coeff(i))
    }
}

impl std::ops::Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Polynomial::new(coeffs)
    }
}

impl std::ops::Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Polynomial::new(coeffs)
    }
}

impl std::ops::Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }
}

impl std::ops::AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        *self = &*self + rhs;
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    /// Conventional descending form, e.g. `x^2 - 4*x + 3` or `1/2*x - 7/3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match (i, unit) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

fn check_poly_domain(d: u32, n: u32) -> Result<()> {
    if d == 0 || d > n {
        return Err(Error::domain(format!(
            "the tuple-sum polynomial requires 1 <= d <= n, got d = {d}, n = {n}"
        )));
    }
    Ok(())
}

/// Expanded powers `(x - c)^e` for `e = 0..=max_e`, as exact polynomials.
fn shifted_linear_powers(c: u32, max_e: usize) -> Vec<Polynomial> {
    let base = Polynomial::new(vec![Rat::from_integer(-Int::from(c)), Rat::one()]);
    let mut table = Vec::with_capacity(max_e + 1);
    table.push(Polynomial::one());
    for e in 1..=max_e {
        let next = &table[e - 1] * &base;
        table.push(next);
    }
    table
}

/// The tuple-sum polynomial: `d!` times the sum over all strictly increasing
/// tuples `1 <= j_1 < ... < j_d <= n` of
/// `x^(n - j_d) * prod_{r=0}^{d-1} (x - (d - r))^(j_{r+1} - j_r - 1)`
/// with `j_0 = 0`.  Its degree is `n - d`, its leading coefficient is
/// `d! * C(n, d) = n! / (n-d)!`, and its constant term is
/// `(-1)^(n-d) * d! * S(n, d)`.
///
/// # Errors
///
/// `Domain` unless `1 <= d <= n`; `BoundExceeded` if the number of tuples
/// `C(n, d)` exceeds `cap`; `Internal` if the expansion violates its own
/// degree or leading-coefficient postconditions.
pub fn poly_f(d: u32, n: u32, cap: u64) -> Result<Polynomial> {
    check_poly_domain(d, n)?;
    let tuples = binomial(n, i64::from(d));
    if tuples > Int::from(cap) {
        return Err(Error::BoundExceeded {
            name: "poly-tuples",
            required: tuples,
            cap,
        });
    }

    // Gap exponents never exceed n - d (the gaps over one tuple sum to
    // j_d - d <= n - d), and so does the trailing power of x.
    let max_gap = (n - d) as usize;
    let tables: Vec<Vec<Polynomial>> = (0..=d).map(|c| shifted_linear_powers(c, max_gap)).collect();

    let mut sum = Polynomial::zero();
    for_each_increasing_tuple(n, d, |j| {
        let mut prod = Polynomial::one();
        let mut prev = 0u32;
        for (r, &jr) in j.iter().enumerate() {
            let c = d - r as u32;
            let gap = (jr - prev - 1) as usize;
            if gap > 0 {
                prod = &prod * &tables[c as usize][gap];
            }
            prev = jr;
        }
        let shift = (n - prev) as usize;
        sum += &prod.shifted_up(shift);
    });

    let result = sum.scale(&Rat::from_integer(factorial(d)));

    // Every tuple contributes exact degree n - d with a unit leading
    // coefficient, so the total must have degree n - d and leading
    // coefficient d! * C(n, d).
    let want_lead = Rat::from_integer(factorial(d) * binomial(n, i64::from(d)));
    if result.degree() != Some((n - d) as usize) || result.leading_coeff() != Some(&want_lead) {
        return Err(Error::internal(format!(
            "tuple-sum polynomial postcondition failed for d = {d}, n = {n}"
        )));
    }
    Ok(result)
}

/// The alternating-difference polynomial
/// `sum_{r=0}^{d} (-1)^r C(d, r) (x - r)^n` — the `d`-th finite difference
/// of `x^n` up to sign.  For `n >= d` its degree is exactly `n - d` (the top
/// `d` coefficients cancel, and this cancellation is verified internally);
/// for `n < d` it is the zero polynomial.
///
/// # Errors
///
/// `Internal` if the expected cancellation or degree fails, which would mean
/// the expansion is implemented wrongly.
pub fn poly_g(d: u32, n: u32) -> Result<Polynomial> {
    let width = n as usize + 1;
    let mut coeffs = vec![Rat::zero(); width];
    for r in 0..=d {
        let outer = {
            let c = binomial(d, i64::from(r));
            if r % 2 == 0 {
                c
            } else {
                -c
            }
        };
        // (x - r)^n has coefficient C(n, i) * (-r)^(n-i) at x^i.
        for i in 0..=n {
            let e = n - i;
            let mag = binomial(n, i64::from(i)) * int_pow(&Int::from(r), e);
            let signed = if e.is_multiple_of(2) { mag } else { -mag };
            coeffs[i as usize] += Rat::from_integer(&outer * signed);
        }
    }

    // Cancellation check happens on the raw, untrimmed coefficients.
    if n >= d {
        let lo = (n - d) as usize;
        for (i, c) in coeffs.iter().enumerate().skip(lo + 1) {
            if !c.is_zero() {
                return Err(Error::internal(format!(
                    "alternating-difference polynomial kept x^{i} for d = {d}, n = {n}"
                )));
            }
        }
        if coeffs[lo].is_zero() {
            return Err(Error::internal(format!(
                "alternating-difference polynomial lost its leading term for d = {d}, n = {n}"
            )));
        }
    } else if coeffs.iter().any(|c| !c.is_zero()) {
        return Err(Error::internal(format!(
            "alternating-difference polynomial should vanish for d = {d} > n = {n}"
        )));
    }
    Ok(Polynomial::new(coeffs))
}

/// The same polynomial as [`poly_g`], rebuilt from partition counts:
/// `d! * sum_{k=d}^{n} (-1)^(k-d) C(n, k) S(k, d) x^(n-k)`.
pub fn poly_g_stirling(d: u32, n: u32) -> Result<Polynomial> {
    let mut coeffs = vec![Rat::zero(); n as usize + 1];
    let dfact = factorial(d);
    for k in d..=n {
        let mut term = binomial(n, i64::from(k)) * stirling_euler(k, d)? * &dfact;
        if (k - d) % 2 == 1 {
            term = -term;
        }
        coeffs[(n - k) as usize] = Rat::from_integer(term);
    }
    Ok(Polynomial::new(coeffs))
}

/// Point evaluation of the alternating-difference form,
/// `sum_{r=0}^{d} (-1)^r C(d, r) (x - r)^n`, without building the
/// polynomial.  Defined for every rational `x`.
pub fn g_eval(d: u32, n: u32, x: &Rat) -> Rat {
    let mut sum = Rat::zero();
    for r in 0..=d {
        let base = x - Rat::from_integer(Int::from(r));
        let term = rat_pow(&base, i64::from(n)).expect("nonnegative exponent")
            * Rat::from_integer(binomial(d, i64::from(r)));
        if r % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// The sign-adjusted evaluation `(-1)^(n * [n > d]) * g_eval(d, n, x)`.
/// For `n > d` its value at `x = 0` is `(-1)^d * d! * S(n, d)`; for `n = d`
/// it is identically `d!` and the sign adjustment is inert.
pub fn signed_g(d: u32, n: u32, x: &Rat) -> Rat {
    let g = g_eval(d, n, x);
    if n > d && n % 2 == 1 {
        -g
    } else {
        g
    }
}

/// The normalized evaluation `g_eval(d, n, x) / x^n`.
///
/// # Errors
///
/// `Domain` if `x = 0`.
pub fn kappa(d: u32, n: u32, x: &Rat) -> Result<Rat> {
    if x.is_zero() {
        return Err(Error::domain("kappa is undefined at x = 0"));
    }
    Ok(g_eval(d, n, x) * rat_pow(x, -i64::from(n))?)
}

/// The tuple-sum evaluation
/// `(d! / x^d) * sum prod_{r=0}^{d-1} (1 - (d - r)/x)^(j_{r+1} - j_r - 1)`
/// over strictly increasing tuples `1 <= j_1 < ... < j_d <= n`, `j_0 = 0`.
/// Equals [`poly_f`] evaluated at `x` divided by `x^n`, but is computed by
/// direct enumeration in rational arithmetic.
///
/// # Errors
///
/// `Domain` unless `1 <= d <= n` and `x != 0`; `BoundExceeded` if `C(n, d)`
/// exceeds `cap`.
pub fn rho(d: u32, n: u32, x: &Rat, cap: u64) -> Result<Rat> {
    check_poly_domain(d, n)?;
    if x.is_zero() {
        return Err(Error::domain("rho is undefined at x = 0"));
    }
    let tuples = binomial(n, i64::from(d));
    if tuples > Int::from(cap) {
        return Err(Error::BoundExceeded {
            name: "poly-tuples",
            required: tuples,
            cap,
        });
    }

    let max_gap = (n - d) as usize;
    // tables[c][e] = (1 - c/x)^e
    let tables: Vec<Vec<Rat>> = (0..=d)
        .map(|c| {
            let base = Rat::one() - Rat::from_integer(Int::from(c)) / x;
            let mut row = Vec::with_capacity(max_gap + 1);
            row.push(Rat::one());
            for e in 1..=max_gap {
                let next = &row[e - 1] * &base;
                row.push(next);
            }
            row
        })
        .collect();

    let mut sum = Rat::zero();
    for_each_increasing_tuple(n, d, |j| {
        let mut prod = Rat::one();
        let mut prev = 0u32;
        for (r, &jr) in j.iter().enumerate() {
            let c = (d - r as u32) as usize;
            let gap = (jr - prev - 1) as usize;
            if gap > 0 {
                prod *= &tables[c][gap];
            }
            prev = jr;
        }
        sum += prod;
    });

    Ok(sum * Rat::from_integer(factorial(d)) * rat_pow(x, -i64::from(d))?)
}

/// Recover the partition count from point values of the tuple-sum
/// polynomial: `S(n, d) = (1/d!) * sum_{k=d}^{n} C(n, k) (-1)^(k-d)
/// x^(n-k) f_{d,k}(x)`.  The result is independent of `x` — any rational,
/// including 0, gives the same integer, which is what the verification
/// suite exercises.
///
/// # Errors
///
/// `Domain` unless `1 <= d <= n`; `BoundExceeded` if any needed tuple count
/// `C(k, d)` exceeds `cap`; `Internal` if the sum fails to normalize to an
/// integer.
pub fn stirling_from_f_inversion(n: u32, d: u32, x: &Rat, cap: u64) -> Result<Int> {
    check_poly_domain(d, n)?;
    let mut sum = Rat::zero();
    for k in d..=n {
        let f_at_x = poly_f(d, k, cap)?.eval(x);
        let mut term = f_at_x
            * Rat::from_integer(binomial(n, i64::from(k)))
            * rat_pow(x, i64::from(n - k)).expect("nonnegative exponent");
        if (k - d) % 2 == 1 {
            term = -term;
        }
        sum += term;
    }
    let normalized = sum / Rat::from_integer(factorial(d));
    if !is_integer(&normalized) {
        return Err(Error::internal(format!(
            "inversion sum is not an integer for n = {n}, d = {d}, x = {x}"
        )));
    }
    Ok(normalized.to_integer())
}

/// The inversion formula as it is usually (mis)stated:
/// `sum_{k=0}^{n} C(n, k) (-1)^(n-k) f_{k,n}(x) / k!` with the convention
/// `f_{0,n}(x) = x^n`.  This is **not** `S(n, d)` — the value depends on
/// `x` and not on `d` at all (for `n = 2` it expands to `x^2 - 4x + 3`).
/// It is kept callable so the verification suite can document the failure
/// instead of silently dropping the claim.
///
/// # Errors
///
/// `BoundExceeded` if any needed tuple count exceeds `cap`.
pub fn printed_inversion_value(n: u32, x: &Rat, cap: u64) -> Result<Rat> {
    let mut sum = Rat::zero();
    for k in 0..=n {
        let f_at_x = if k == 0 {
            rat_pow(x, i64::from(n))?
        } else {
            poly_f(k, n, cap)?.eval(x)
        };
        let mut term = f_at_x * Rat::new(binomial(n, i64::from(k)), factorial(k));
        if (n - k) % 2 == 1 {
            term = -term;
        }
        sum += term;
    }
    Ok(sum)
}
