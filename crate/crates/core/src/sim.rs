//! The covering-probability model and its Monte Carlo check.
//!
//! The model: `n` balls are thrown independently.  Each ball lands in box
//! `i` (for `i = 1..=d`) with probability `1/x` and misses every box with
//! probability `1 - d/x`, where `x` is an exact rational with `x >= d`.
//! The event of interest is *coverage*: every one of the `d` boxes receives
//! at least one ball.
//!
//! Three exact routes compute the coverage probability:
//!
//! * [`exact_prob_incl_excl`] — inclusion–exclusion over the set of missed
//!   boxes, `sum_{r=0}^{d} (-1)^r C(d, r) (1 - r/x)^n`.
//! * [`exact_prob_record_times`] — the tuple sum over the times at which a
//!   new box is covered for the first time (delegates to [`poly::rho`],
//!   which is that sum).
//! * [`brute_force_prob`] — literal enumeration of all `(d+1)^n` outcome
//!   sequences, summing the probability of every covering sequence.
//!
//! [`simulate`] estimates the same probability by sampling.  Sampling is
//! split into fixed blocks of [`TRIAL_BLOCK`] trials; each block draws from
//! its own counter-derived random stream, so the result is a pure function
//! of `(seed, trials)` no matter how many worker threads the enclosing
//! thread pool uses.

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{binomial, rat_pow, rat_to_f64, Int, Rat};
use crate::poly;

/// Default cap on the number of outcome sequences [`brute_force_prob`] will
/// enumerate.
pub const BRUTE_FORCE_CAP: u64 = 10_000_000;

/// Number of trials per deterministic sampling block.
pub const TRIAL_BLOCK: u64 = 1 << 16;

/// Largest `d` the sampler supports (coverage is tracked in a 64-bit mask).
pub const SIM_MAX_BOXES: u32 = 64;

/// Parameters of one simulation run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    /// Number of balls thrown per trial.
    pub n: u32,
    /// Number of boxes that must all be covered.
    pub d: u32,
    /// Model parameter: each box is hit with probability `1/x`.
    pub x: Rat,
    /// Number of independent trials.
    pub trials: u64,
    /// Seed for the deterministic random stream.
    pub seed: u64,
}

impl SimConfig {
    /// Check the model constraints: `d >= 1`, `x >= d`, `trials >= 1`, and
    /// `d` small enough for the mask-based sampler.
    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::domain("the model needs at least one box (d >= 1)"));
        }
        if self.d > SIM_MAX_BOXES {
            return Err(Error::domain(format!(
                "the sampler tracks at most {SIM_MAX_BOXES} boxes, got d = {}",
                self.d
            )));
        }
        if self.x < Rat::from_integer(Int::from(self.d)) {
            return Err(Error::domain(format!(
                "the model requires x >= d so probabilities are valid, got x = {}, d = {}",
                self.x, self.d
            )));
        }
        if self.trials == 0 {
            return Err(Error::domain("at least one trial is required"));
        }
        Ok(())
    }
}

/// Outcome of a simulation run, with the exact probability alongside the
/// estimate for immediate comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    /// Trials in which every box was covered.
    pub hits: u64,
    /// Total trials run.
    pub trials: u64,
    /// `hits / trials`.
    pub estimate: f64,
    /// The exact coverage probability, by inclusion–exclusion.
    pub exact: Rat,
    /// `|estimate - exact| / sqrt(exact * (1 - exact) / trials)`, or `None`
    /// when the exact probability is 0 or 1 (zero variance).
    pub z_score: Option<f64>,
}

fn check_prob_domain(d: u32, x: &Rat) -> Result<()> {
    if d == 0 {
        return Err(Error::domain("the model needs at least one box (d >= 1)"));
    }
    if *x < Rat::from_integer(Int::from(d)) {
        return Err(Error::domain(format!(
            "the model requires x >= d so probabilities are valid, got x = {x}, d = {d}"
        )));
    }
    Ok(())
}

/// Exact coverage probability by inclusion–exclusion over missed boxes:
/// `sum_{r=0}^{d} (-1)^r C(d, r) (1 - r/x)^n`.
///
/// # Errors
///
/// `Domain` unless `d >= 1` and `x >= d`.
pub fn exact_prob_incl_excl(n: u32, d: u32, x: &Rat) -> Result<Rat> {
    check_prob_domain(d, x)?;
    let mut sum = Rat::zero();
    for r in 0..=d {
        let base = Rat::one() - Rat::from_integer(Int::from(r)) / x;
        let term = rat_pow(&base, i64::from(n)).expect("nonnegative exponent")
            * Rat::from_integer(binomial(d, i64::from(r)));
        if r % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum)
}

/// Exact coverage probability as a sum over the first-coverage times of the
/// `d` boxes (the record positions of the coverage process).  Identical in
/// value to [`exact_prob_incl_excl`]; computed by a structurally different
/// enumeration.
///
/// # Errors
///
/// `Domain` unless `d >= 1` and `x >= d`; `BoundExceeded` if the tuple count
/// `C(n, d)` exceeds `cap`.
pub fn exact_prob_record_times(n: u32, d: u32, x: &Rat, cap: u64) -> Result<Rat> {
    check_prob_domain(d, x)?;
    if n < d {
        // Fewer balls than boxes: coverage is impossible and the tuple sum
        // is empty.
        return Ok(Rat::zero());
    }
    poly::rho(d, n, x, cap)
}

/// Exact coverage probability by brute force: enumerate every outcome
/// sequence in `{miss, box 1, ..., box d}^n` and add up the probability of
/// each sequence that covers all boxes.
///
/// # Errors
///
/// `Domain` unless `1 <= d <= 64` and `x >= d`; `BoundExceeded` if
/// `(d+1)^n` exceeds `cap`.
pub fn brute_force_prob(n: u32, d: u32, x: &Rat, cap: u64) -> Result<Rat> {
    check_prob_domain(d, x)?;
    if d > SIM_MAX_BOXES {
        return Err(Error::domain(format!(
            "brute force tracks at most {SIM_MAX_BOXES} boxes, got d = {d}"
        )));
    }
    let sequences = Int::from(d + 1).pow(n);
    if sequences > Int::from(cap) {
        return Err(Error::BoundExceeded {
            name: "outcome-sequences",
            required: sequences,
            cap,
        });
    }
    if n < d {
        return Ok(Rat::zero());
    }

    // The probability of a sequence depends only on its number of misses:
    // (1 - d/x)^misses * (1/x)^(n - misses).
    let miss_p = Rat::one() - Rat::from_integer(Int::from(d)) / x;
    let hit_p = rat_pow(x, -1).expect("x >= d >= 1 is nonzero");
    let mut weight_by_misses = Vec::with_capacity(n as usize + 1);
    for m in 0..=i64::from(n) {
        let w = rat_pow(&miss_p, m).expect("nonnegative exponent")
            * rat_pow(&hit_p, i64::from(n) - m).expect("nonnegative exponent");
        weight_by_misses.push(w);
    }

    let full: u64 = if d == 64 { u64::MAX } else { (1u64 << d) - 1 };
    let mut sum = Rat::zero();
    // Odometer over digit strings; digit 0 is a miss, digit k >= 1 is box k.
    let mut digits = vec![0u32; n as usize];
    loop {
        let mut mask = 0u64;
        let mut misses = 0usize;
        for &digit in &digits {
            if digit == 0 {
                misses += 1;
            } else {
                mask |= 1 << (digit - 1);
            }
        }
        if mask == full {
            sum += &weight_by_misses[misses];
        }
        // Advance.
        let mut i = n as usize;
        loop {
            if i == 0 {
                return Ok(sum);
            }
            i -= 1;
            if digits[i] < d {
                digits[i] += 1;
                for dd in digits.iter_mut().skip(i + 1) {
                    *dd = 0;
                }
                break;
            }
        }
    }
}

/// One step of the splitmix64 sequence, used to derive per-block seeds.
pub(crate) fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent random stream for one sampling block, derived from the run
/// seed and the block index only.
fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut state = seed ^ block.wrapping_mul(0xa076_1d64_78bd_642f);
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// Count covering trials in one block.
fn run_block(cfg: &SimConfig, block: u64, x_f64: f64, full: u64) -> u64 {
    let lo = block * TRIAL_BLOCK;
    let hi = (lo + TRIAL_BLOCK).min(cfg.trials);
    let mut rng = block_rng(cfg.seed, block);
    let d = u64::from(cfg.d);
    let mut hits = 0u64;
    for _ in lo..hi {
        let mut mask = 0u64;
        for _ in 0..cfg.n {
            // u * x < k  <=>  u < k/x: scaled uniform picks box
            // floor(u * x) when that is below d, otherwise the ball missed.
            let u: f64 = rng.gen();
            let scaled = (u * x_f64) as u64;
            if scaled < d {
                mask |= 1 << scaled;
            }
        }
        if mask == full {
            hits += 1;
        }
    }
    hits
}

/// Monte Carlo estimate of the coverage probability, with the exact value
/// and a z-score for the deviation.
///
/// The run is split into fixed blocks of [`TRIAL_BLOCK`] trials, each with
/// its own counter-derived random stream, and the per-block hit counts are
/// summed.  The result is a pure function of the configuration: worker
/// thread count, scheduling order, and the enclosing thread pool cannot
/// change a single bit of it.
///
/// # Errors
///
/// `Domain` if the configuration violates [`SimConfig::validate`].
pub fn simulate(cfg: &SimConfig) -> Result<SimResult> {
    cfg.validate()?;
    let exact = exact_prob_incl_excl(cfg.n, cfg.d, &cfg.x)?;
    let x_f64 = rat_to_f64(&cfg.x);
    let full: u64 = if cfg.d == 64 {
        u64::MAX
    } else {
        (1u64 << cfg.d) - 1
    };

    let blocks = cfg.trials.div_ceil(TRIAL_BLOCK);
    let hits: u64 = (0..blocks)
        .into_par_iter()
        .map(|b| run_block(cfg, b, x_f64, full))
        .sum();

    let estimate = hits as f64 / cfg.trials as f64;
    let z_score = z_score(estimate, &exact, cfg.trials);
    Ok(SimResult {
        hits,
        trials: cfg.trials,
        estimate,
        exact,
        z_score,
    })
}

/// `|estimate - exact| / sqrt(exact * (1 - exact) / trials)`, or `None`
/// when the exact probability is 0 or 1 and the deviation has zero standard
/// error.
pub fn z_score(estimate: f64, exact: &Rat, trials: u64) -> Option<f64> {
    if exact.is_zero() || exact.is_one() {
        return None;
    }
    let p = rat_to_f64(exact);
    let se = (p * (1.0 - p) / trials as f64).sqrt();
    Some((estimate - p).abs() / se)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_rational, rat, rat_int};

    #[test]
    fn inclusion_exclusion_frozen_values() {
        // d = 2, x = 4, n = 3: 1 - 2*(3/4)^3 + (1/2)^3 = 9/32.
        assert_eq!(exact_prob_incl_excl(3, 2, &rat_int(4)).unwrap(), rat(9, 32));
        // d = 2, x = 2, n = 3: misses impossible; 1 - 2*(1/2)^3 = 3/4.
        assert_eq!(exact_prob_incl_excl(3, 2, &rat_int(2)).unwrap(), rat(3, 4));
        // d = 2, x = 2, n = 2: both balls must pick different boxes.
        assert_eq!(exact_prob_incl_excl(2, 2, &rat_int(2)).unwrap(), rat(1, 2));
        // Fewer balls than boxes: impossible.
        assert_eq!(exact_prob_incl_excl(1, 2, &rat_int(4)).unwrap(), rat(0, 1));
    }

    #[test]
    fn three_exact_routes_agree_on_a_grid() {
        for d in 1..=3u32 {
            for n in 1..=6u32 {
                let xs = [
                    rat_int(i64::from(d)),
                    rat_int(i64::from(d)) + rat(1, 2),
                    rat_int(2 * i64::from(d)),
                    rat(7 * i64::from(d), 3),
                ];
                for x in &xs {
                    let a = exact_prob_incl_excl(n, d, x).unwrap();
                    let b = exact_prob_record_times(n, d, x, 1_000_000).unwrap();
                    let c = brute_force_prob(n, d, x, BRUTE_FORCE_CAP).unwrap();
                    assert_eq!(a, b, "incl-excl vs record times n={n} d={d} x={x}");
                    assert_eq!(a, c, "incl-excl vs brute force n={n} d={d} x={x}");
                }
            }
        }
    }

    #[test]
    fn probabilities_are_proper_and_monotone_in_x_inverse() {
        // For fixed n, d, shrinking 1/x (growing x) can only hurt coverage.
        let mut last = rat_int(1);
        for x_num in 2..=8i64 {
            let p = exact_prob_incl_excl(5, 2, &rat_int(x_num)).unwrap();
            assert!(p >= rat_int(0) && p <= rat_int(1), "x = {x_num}");
            assert!(p <= last, "coverage should not improve as x grows");
            last = p;
        }
    }

    #[test]
    fn domain_violations_are_rejected() {
        assert!(exact_prob_incl_excl(3, 0, &rat_int(1)).is_err());
        assert!(exact_prob_incl_excl(3, 2, &rat(3, 2)).is_err()); // x < d
        assert!(exact_prob_record_times(3, 2, &rat_int(1), 100).is_err());
        assert!(brute_force_prob(3, 2, &rat_int(1), 100).is_err());
    }

    #[test]
    fn brute_force_respects_its_cap() {
        // (3+1)^10 = 1048576 sequences.
        let err = brute_force_prob(10, 3, &rat_int(6), 1000).unwrap_err();
        match err {
            Error::BoundExceeded {
                name,
                required,
                cap,
            } => {
                assert_eq!(name, "outcome-sequences");
                assert_eq!(required, Int::from(1_048_576u64));
                assert_eq!(cap, 1000);
            }
            other => panic!("expected BoundExceeded, got {other}"),
        }
    }

    #[test]
    fn simulation_is_deterministic_for_a_fixed_seed() {
        let cfg = SimConfig {
            n: 3,
            d: 2,
            x: rat_int(4),
            trials: 200_000,
            seed: 7,
        };
        let first = simulate(&cfg).unwrap();
        let second = simulate(&cfg).unwrap();
        assert_eq!(first.hits, second.hits);
        assert_eq!(first.estimate.to_bits(), second.estimate.to_bits());
    }

    #[test]
    fn simulation_is_independent_of_thread_count() {
        let cfg = SimConfig {
            n: 4,
            d: 3,
            x: parse_rational("7/2").unwrap(),
            trials: 150_000,
            seed: 99,
        };
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| simulate(&cfg).unwrap());
        let several = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| simulate(&cfg).unwrap());
        assert_eq!(single.hits, several.hits);
        assert_eq!(single.estimate.to_bits(), several.estimate.to_bits());
    }

    #[test]
    fn simulation_tracks_the_exact_probability() {
        let cfg = SimConfig {
            n: 3,
            d: 2,
            x: rat_int(4),
            trials: 400_000,
            seed: 1,
        };
        let result = simulate(&cfg).unwrap();
        assert_eq!(result.exact, rat(9, 32));
        // A seeded run is a fixed number; 6 sigma leaves huge slack while
        // still catching a broken sampler.
        assert!(result.z_score.unwrap() < 6.0, "z = {:?}", result.z_score);
    }

    #[test]
    fn degenerate_probabilities_have_no_z_score() {
        // d = 1, x = 1: every ball lands in the single box, P = 1.
        let sure = SimConfig {
            n: 2,
            d: 1,
            x: rat_int(1),
            trials: 1000,
            seed: 0,
        };
        let result = simulate(&sure).unwrap();
        assert_eq!(result.exact, rat_int(1));
        assert_eq!(result.hits, 1000);
        assert!(result.z_score.is_none());

        // n < d: coverage impossible, P = 0.
        let hopeless = SimConfig {
            n: 1,
            d: 2,
            x: rat_int(4),
            trials: 1000,
            seed: 0,
        };
        let result = simulate(&hopeless).unwrap();
        assert_eq!(result.exact, rat_int(0));
        assert_eq!(result.hits, 0);
        assert!(result.z_score.is_none());
    }

    #[test]
    fn config_validation_rejects_bad_parameters() {
        let base = SimConfig {
            n: 3,
            d: 2,
            x: rat_int(4),
            trials: 10,
            seed: 0,
        };
        assert!(base.validate().is_ok());
        assert!(SimConfig {
            d: 0,
            ..base.clone()
        }
        .validate()
        .is_err());
        assert!(SimConfig {
            trials: 0,
            ..base.clone()
        }
        .validate()
        .is_err());
        assert!(SimConfig {
            x: rat_int(1),
            ..base.clone()
        }
        .validate()
        .is_err());
        assert!(SimConfig {
            d: 65,
            x: rat_int(70),
            ..base
        }
        .validate()
        .is_err());
    }
}
