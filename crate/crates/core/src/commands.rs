//! Typed entry points for the command-line interface (and the C ABI): each
//! command takes a plain argument struct and returns an [`OutputEnvelope`]
//! plus a process exit code.
//!
//! Exit code conventions:
//!
//! * `0` — success (including a verify run whose only failure is a
//!   diagnostic entry, which is expected).
//! * `1` — a genuine failure: an identity check failed, computed routes
//!   disagreed, or an internal invariant broke.
//! * `2` — usage: arguments outside an operation's domain, or a request
//!   exceeding a declared enumeration cap (raise it with `--max-enum`).

use std::time::Instant;

use crate::error::{Error, Result};
use crate::exact::{format_rational, Int, Rat};
use crate::partitions;
use crate::poly::{self, Polynomial, POLY_TUPLE_CAP};
use crate::report::{v_bool, v_f64, v_int, v_null, v_rat, v_str, v_u64, OutputEnvelope};
use crate::sim::{self, SimConfig};
use crate::stirling::{self, RECORD_TUPLE_CAP};
use crate::suite::{self, GridSpec};

/// Process exit code for success.
pub const EXIT_OK: i32 = 0;
/// Process exit code for failed checks or broken invariants.
pub const EXIT_FAILURE: i32 = 1;
/// Process exit code for usage errors.
pub const EXIT_USAGE: i32 = 2;

/// Map an error to the exit code its class carries.
pub fn error_exit_code(err: &Error) -> i32 {
    match err {
        Error::Domain(_) | Error::BoundExceeded { .. } => EXIT_USAGE,
        Error::Internal(_) => EXIT_FAILURE,
    }
}

/// Envelope plus the exit code the process should end with.
#[derive(Debug, Clone)]
pub struct CommandOutcome {
    pub envelope: OutputEnvelope,
    pub exit_code: i32,
}

/// A route for computing the partition count `S(n, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StirlingMethod {
    /// Exhaustive set-partition enumeration (`n <= 13`).
    Oracle,
    /// Classical two-term recurrence.
    Recurrence,
    /// Alternating binomial sum.
    Euler,
    /// Record-route weighted tuple sum (naive enumeration).
    Record,
    /// Record-route weighted sum as a dynamic program.
    RecordDp,
    /// Swapped-argument monomial sum.
    Duality,
}

impl StirlingMethod {
    /// All methods, in reporting order.
    pub const ALL: [StirlingMethod; 6] = [
        StirlingMethod::Oracle,
        StirlingMethod::Recurrence,
        StirlingMethod::Euler,
        StirlingMethod::Record,
        StirlingMethod::RecordDp,
        StirlingMethod::Duality,
    ];

    /// Wire name (also the CLI spelling).
    pub fn name(&self) -> &'static str {
        match self {
            StirlingMethod::Oracle => "oracle",
            StirlingMethod::Recurrence => "recurrence",
            StirlingMethod::Euler => "euler",
            StirlingMethod::Record => "record",
            StirlingMethod::RecordDp => "record-dp",
            StirlingMethod::Duality => "duality",
        }
    }

    /// Compute `S(n, d)` by this route; record routes also return the
    /// pre-division weighted sum and their multiplication count.
    fn compute(&self, n: u32, d: u32, cap: u64) -> Result<MethodValue> {
        Ok(match self {
            StirlingMethod::Oracle => MethodValue::plain(partitions::count_set_partitions(n, d)?),
            StirlingMethod::Recurrence => MethodValue::plain(partitions::stirling_recurrence(n, d)),
            StirlingMethod::Euler => MethodValue::plain(stirling::stirling_euler(n, d)?),
            StirlingMethod::Record => {
                let eval = stirling::record_sum_details(n, d, cap)?;
                MethodValue {
                    value: eval.value,
                    weight_sum: Some(eval.weight_sum),
                    big_mults: Some(eval.big_mults),
                }
            }
            StirlingMethod::RecordDp => {
                let eval = stirling::record_dp_details(n, d)?;
                MethodValue {
                    value: eval.value,
                    weight_sum: Some(eval.weight_sum),
                    big_mults: Some(eval.big_mults),
                }
            }
            StirlingMethod::Duality => MethodValue::plain(stirling::stirling_via_duality(n, d)?),
        })
    }
}

impl std::fmt::Display for StirlingMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for StirlingMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        StirlingMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = StirlingMethod::ALL.iter().map(|m| m.name()).collect();
                format!("unknown method {s:?}; expected one of {}", names.join(", "))
            })
    }
}

struct MethodValue {
    value: Int,
    weight_sum: Option<Int>,
    big_mults: Option<u64>,
}

impl MethodValue {
    fn plain(value: Int) -> Self {
        MethodValue {
            value,
            weight_sum: None,
            big_mults: None,
        }
    }
}

/// Arguments of the `stirling` command.
#[derive(Debug, Clone)]
pub struct StirlingArgs {
    pub n: u32,
    pub d: u32,
    /// `None` runs every applicable method and checks agreement.
    pub method: Option<StirlingMethod>,
    pub max_enum: Option<u64>,
}

/// Compute `S(n, d)` by one route, or by all applicable routes with an
/// agreement check (`exit 1` on disagreement).
pub fn run_stirling(args: &StirlingArgs) -> Result<CommandOutcome> {
    let start = Instant::now();
    let cap = args.max_enum.unwrap_or(RECORD_TUPLE_CAP);

    let mut envelope =
        OutputEnvelope::new("stirling", &["method", "n", "d", "value", "weight_sum"]);
    envelope.set_param("n", v_u64(u64::from(args.n)));
    envelope.set_param("d", v_u64(u64::from(args.d)));
    envelope.set_param("method", v_str(args.method.map_or("all", |m| m.name())));
    envelope.set_param("max_enum", args.max_enum.map_or_else(v_null, v_u64));

    let mut values: Vec<Int> = Vec::new();
    let mut not_run: Vec<String> = Vec::new();
    match args.method {
        Some(method) => {
            let computed = method.compute(args.n, args.d, cap)?;
            envelope.push_row(vec![
                v_str(method.name()),
                v_u64(u64::from(args.n)),
                v_u64(u64::from(args.d)),
                v_int(&computed.value),
                computed.weight_sum.as_ref().map_or_else(v_null, v_int),
            ]);
            values.push(computed.value);
        }
        None => {
            for method in StirlingMethod::ALL {
                match method.compute(args.n, args.d, cap) {
                    Ok(computed) => {
                        envelope.push_row(vec![
                            v_str(method.name()),
                            v_u64(u64::from(args.n)),
                            v_u64(u64::from(args.d)),
                            v_int(&computed.value),
                            computed.weight_sum.as_ref().map_or_else(v_null, v_int),
                        ]);
                        values.push(computed.value);
                    }
                    // A route that cannot handle these arguments is noted
                    // and skipped; a broken invariant is a real error.
                    Err(err @ (Error::Domain(_) | Error::BoundExceeded { .. })) => {
                        not_run.push(format!("{}: {err}", method.name()));
                    }
                    Err(other) => return Err(other),
                }
            }
            if values.is_empty() {
                return Err(Error::domain(format!(
                    "no method can handle n = {}, d = {}: {}",
                    args.n,
                    args.d,
                    not_run.join("; ")
                )));
            }
        }
    }

    let agreement = values.windows(2).all(|w| w[0] == w[1]);
    envelope.set_summary("agreement", v_bool(agreement));
    envelope.set_summary(
        "methods_not_run",
        serde_json::Value::Array(not_run.into_iter().map(v_str).collect()),
    );
    envelope.set_timing_ms(start.elapsed().as_millis() as u64);
    Ok(CommandOutcome {
        envelope,
        exit_code: if agreement { EXIT_OK } else { EXIT_FAILURE },
    })
}

/// Which polynomial family `poly` expands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyFamily {
    /// The record-route tuple sum (`f`).
    TupleSum,
    /// The alternating difference (`g`).
    AltDifference,
    /// The alternating difference rebuilt from partition counts.
    FromCounts,
}

impl PolyFamily {
    pub fn name(&self) -> &'static str {
        match self {
            PolyFamily::TupleSum => "f",
            PolyFamily::AltDifference => "g",
            PolyFamily::FromCounts => "g-stirling",
        }
    }
}

impl std::str::FromStr for PolyFamily {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "f" => Ok(PolyFamily::TupleSum),
            "g" => Ok(PolyFamily::AltDifference),
            "g-stirling" => Ok(PolyFamily::FromCounts),
            other => Err(format!(
                "unknown family {other:?}; expected one of f, g, g-stirling"
            )),
        }
    }
}

/// Arguments of the `poly` command.
#[derive(Debug, Clone)]
pub struct PolyArgs {
    pub which: PolyFamily,
    pub d: u32,
    pub n: u32,
    pub max_enum: Option<u64>,
}

/// Expand one polynomial family member; rows list the coefficients in
/// ascending order as exact strings.
pub fn run_poly(args: &PolyArgs) -> Result<CommandOutcome> {
    let start = Instant::now();
    let cap = args.max_enum.unwrap_or(POLY_TUPLE_CAP);
    let polynomial: Polynomial = match args.which {
        PolyFamily::TupleSum => poly::poly_f(args.d, args.n, cap)?,
        PolyFamily::AltDifference => poly::poly_g(args.d, args.n)?,
        PolyFamily::FromCounts => poly::poly_g_stirling(args.d, args.n)?,
    };

    let mut envelope = OutputEnvelope::new(
        "poly",
        &["family", "d", "n", "degree", "index", "coefficient"],
    );
    envelope.set_param("which", v_str(args.which.name()));
    envelope.set_param("d", v_u64(u64::from(args.d)));
    envelope.set_param("n", v_u64(u64::from(args.n)));
    envelope.set_param("max_enum", args.max_enum.map_or_else(v_null, v_u64));

    let degree_value = polynomial
        .degree()
        .map_or_else(v_null, |deg| v_u64(deg as u64));
    for (index, coefficient) in polynomial.coeffs().iter().enumerate() {
        envelope.push_row(vec![
            v_str(args.which.name()),
            v_u64(u64::from(args.d)),
            v_u64(u64::from(args.n)),
            degree_value.clone(),
            v_u64(index as u64),
            v_rat(coefficient),
        ]);
    }

    envelope.set_summary("degree", degree_value);
    envelope.set_summary(
        "leading_coefficient",
        polynomial.leading_coeff().map_or_else(v_null, v_rat),
    );
    envelope.set_summary(
        "constant_term",
        if polynomial.is_zero() {
            v_null()
        } else {
            v_rat(&polynomial.coeff(0))
        },
    );
    envelope.set_timing_ms(start.elapsed().as_millis() as u64);
    Ok(CommandOutcome {
        envelope,
        exit_code: EXIT_OK,
    })
}

/// Arguments of the `simulate` command.
#[derive(Debug, Clone)]
pub struct SimulateArgs {
    pub n: u32,
    pub d: u32,
    pub x: Rat,
    pub trials: u64,
    pub seed: u64,
}

/// Run the Monte Carlo estimator and report it against the exact value.
pub fn run_simulate(args: &SimulateArgs) -> Result<CommandOutcome> {
    let start = Instant::now();
    let cfg = SimConfig {
        n: args.n,
        d: args.d,
        x: args.x.clone(),
        trials: args.trials,
        seed: args.seed,
    };
    let result = sim::simulate(&cfg)?;

    let mut envelope = OutputEnvelope::new(
        "simulate",
        &[
            "n", "d", "x", "trials", "seed", "hits", "estimate", "exact", "z_score",
        ],
    );
    envelope.set_param("n", v_u64(u64::from(args.n)));
    envelope.set_param("d", v_u64(u64::from(args.d)));
    envelope.set_param("x", v_rat(&args.x));
    envelope.set_param("trials", v_u64(args.trials));
    envelope.set_param("seed", v_u64(args.seed));

    envelope.push_row(vec![
        v_u64(u64::from(args.n)),
        v_u64(u64::from(args.d)),
        v_rat(&args.x),
        v_u64(result.trials),
        v_u64(args.seed),
        v_u64(result.hits),
        v_f64(result.estimate),
        v_rat(&result.exact),
        result.z_score.map_or_else(v_null, v_f64),
    ]);
    envelope.set_timing_ms(start.elapsed().as_millis() as u64);
    Ok(CommandOutcome {
        envelope,
        exit_code: EXIT_OK,
    })
}

/// Arguments of the `verify` command.
#[derive(Debug, Clone)]
pub struct VerifyArgs {
    pub grid: GridSpec,
    /// Restrict the run to these identity ids.
    pub only: Option<Vec<String>>,
}

/// Run the identity suite; exit 1 when any non-diagnostic identity fails.
pub fn run_verify(args: &VerifyArgs) -> Result<CommandOutcome> {
    let start = Instant::now();
    let reports = suite::run_suite(&args.grid, args.only.as_deref())?;

    let mut envelope = OutputEnvelope::new(
        "verify",
        &[
            "identity_id",
            "status",
            "diagnostic",
            "cells_checked",
            "cells_skipped",
            "skip_bound",
            "worst_deviation",
            "ce_n",
            "ce_d",
            "ce_x",
            "ce_lhs",
            "ce_rhs",
            "ce_detail",
        ],
    );
    envelope.set_param("n_max", v_u64(u64::from(args.grid.n_max)));
    envelope.set_param("trials", v_u64(args.grid.trials));
    envelope.set_param("seed", v_u64(args.grid.seed));
    envelope.set_param("max_enum", args.grid.max_enum.map_or_else(v_null, v_u64));
    envelope.set_param(
        "x_samples",
        match &args.grid.x_samples {
            None => v_null(),
            Some(xs) => {
                serde_json::Value::Array(xs.iter().map(|x| v_str(format_rational(x))).collect())
            }
        },
    );
    envelope.set_param(
        "only",
        match &args.only {
            None => v_null(),
            Some(ids) => serde_json::Value::Array(ids.iter().map(|s| v_str(s.clone())).collect()),
        },
    );

    let mut blocking = 0u64;
    for report in &reports {
        if report.is_blocking_failure() {
            blocking += 1;
        }
        let ce = report.counterexample.as_ref();
        envelope.push_row(vec![
            v_str(report.identity_id),
            v_str(report.status.as_str()),
            v_bool(report.diagnostic),
            v_u64(report.cells_checked),
            v_u64(report.cells_skipped),
            report.skip_bound.map_or_else(v_null, v_str),
            v_str(report.worst_deviation.clone()),
            ce.map_or_else(v_null, |c| v_u64(u64::from(c.n))),
            ce.map_or_else(v_null, |c| v_u64(u64::from(c.d))),
            ce.and_then(|c| c.x.clone()).map_or_else(v_null, v_str),
            ce.map_or_else(v_null, |c| v_str(c.lhs.clone())),
            ce.map_or_else(v_null, |c| v_str(c.rhs.clone())),
            ce.map_or_else(v_null, |c| v_str(c.detail.clone())),
        ]);
    }

    envelope.set_summary("identities", v_u64(reports.len() as u64));
    envelope.set_summary("blocking_failures", v_u64(blocking));
    envelope.set_summary("all_pass", v_bool(blocking == 0));
    envelope.set_timing_ms(start.elapsed().as_millis() as u64);
    Ok(CommandOutcome {
        envelope,
        exit_code: if blocking == 0 { EXIT_OK } else { EXIT_FAILURE },
    })
}

/// Arguments of the `bench` command.
#[derive(Debug, Clone)]
pub struct BenchArgs {
    pub ns: Vec<u32>,
    pub ds: Vec<u32>,
    pub methods: Vec<StirlingMethod>,
    pub reps: u32,
    pub max_enum: Option<u64>,
}

/// Time the selected methods over the `(n, d)` grid (cells with `d > n` are
/// dropped), reporting per-method values, big-integer multiplication counts
/// where instrumented, and best/mean wall times.  Methods must agree on
/// every cell (`exit 1` otherwise).
pub fn run_bench(args: &BenchArgs) -> Result<CommandOutcome> {
    let start = Instant::now();
    if args.reps == 0 {
        return Err(Error::domain("bench needs reps >= 1"));
    }
    if args.methods.is_empty() {
        return Err(Error::domain("bench needs at least one method"));
    }
    let cells: Vec<(u32, u32)> = args
        .ns
        .iter()
        .flat_map(|&n| {
            args.ds
                .iter()
                .filter(move |&&d| d <= n)
                .map(move |&d| (n, d))
        })
        .collect();
    if cells.is_empty() {
        return Err(Error::domain(
            "no valid (n, d) cells: every requested d exceeds every requested n",
        ));
    }
    let cap = args.max_enum.unwrap_or(RECORD_TUPLE_CAP);

    let mut envelope = OutputEnvelope::new(
        "bench",
        &[
            "method",
            "n",
            "d",
            "reps",
            "value",
            "big_mults",
            "best_ms",
            "mean_ms",
        ],
    );
    envelope.set_param(
        "n",
        serde_json::Value::Array(args.ns.iter().map(|&n| v_u64(u64::from(n))).collect()),
    );
    envelope.set_param(
        "d",
        serde_json::Value::Array(args.ds.iter().map(|&d| v_u64(u64::from(d))).collect()),
    );
    envelope.set_param(
        "methods",
        serde_json::Value::Array(args.methods.iter().map(|m| v_str(m.name())).collect()),
    );
    envelope.set_param("reps", v_u64(u64::from(args.reps)));
    envelope.set_param("max_enum", args.max_enum.map_or_else(v_null, v_u64));

    let mut agreement = true;
    for &(n, d) in &cells {
        let mut cell_value: Option<Int> = None;
        for method in &args.methods {
            let mut best = f64::INFINITY;
            let mut total = 0.0f64;
            let mut computed: Option<MethodValue> = None;
            for _ in 0..args.reps {
                let rep_start = Instant::now();
                let value = method.compute(n, d, cap)?;
                let elapsed = rep_start.elapsed().as_secs_f64() * 1e3;
                best = best.min(elapsed);
                total += elapsed;
                computed.get_or_insert(value);
            }
            let computed = computed.expect("reps >= 1");
            match &cell_value {
                None => cell_value = Some(computed.value.clone()),
                Some(existing) => {
                    if *existing != computed.value {
                        agreement = false;
                    }
                }
            }
            envelope.push_row(vec![
                v_str(method.name()),
                v_u64(u64::from(n)),
                v_u64(u64::from(d)),
                v_u64(u64::from(args.reps)),
                v_int(&computed.value),
                computed.big_mults.map_or_else(v_null, v_u64),
                v_f64(best),
                v_f64(total / f64::from(args.reps)),
            ]);
        }
    }

    envelope.set_summary("agreement", v_bool(agreement));
    envelope.set_timing_ms(start.elapsed().as_millis() as u64);
    Ok(CommandOutcome {
        envelope,
        exit_code: if agreement { EXIT_OK } else { EXIT_FAILURE },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;
    use serde_json::Value;

    fn json_of(envelope: &OutputEnvelope) -> Value {
        serde_json::from_str(&envelope.to_json()).unwrap()
    }

    #[test]
    fn stirling_all_methods_agree_on_the_worked_example() {
        let outcome = run_stirling(&StirlingArgs {
            n: 6,
            d: 4,
            method: None,
            max_enum: None,
        })
        .unwrap();
        assert_eq!(outcome.exit_code, EXIT_OK);
        let doc = json_of(&outcome.envelope);
        let rows = doc["results"]["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 6, "all six methods apply at (6, 4)");
        for row in rows {
            assert_eq!(row["value"], Value::String("65".into()), "{row}");
        }
        // Record routes expose the pre-division weighted sum.
        let record_row = rows
            .iter()
            .find(|r| r["method"] == Value::String("record".into()))
            .unwrap();
        assert_eq!(record_row["weight_sum"], Value::String("1560".into()));
        assert_eq!(doc["results"]["agreement"], Value::Bool(true));
    }

    #[test]
    fn stirling_all_skips_inapplicable_methods() {
        // n = 16 is beyond the enumeration oracle's bound; d = 0 is outside
        // the record routes' domain.
        let outcome = run_stirling(&StirlingArgs {
            n: 16,
            d: 0,
            method: None,
            max_enum: None,
        })
        .unwrap();
        assert_eq!(outcome.exit_code, EXIT_OK);
        let doc = json_of(&outcome.envelope);
        let rows = doc["results"]["rows"].as_array().unwrap();
        let methods: Vec<_> = rows.iter().map(|r| r["method"].as_str().unwrap()).collect();
        assert_eq!(methods, vec!["recurrence", "euler", "duality"]);
        for row in rows {
            assert_eq!(row["value"], Value::String("0".into()));
        }
        let skipped = doc["results"]["methods_not_run"].as_array().unwrap();
        assert_eq!(skipped.len(), 3);
    }

    #[test]
    fn stirling_single_method_propagates_domain_errors() {
        let err = run_stirling(&StirlingArgs {
            n: 4,
            d: 6,
            method: Some(StirlingMethod::Record),
            max_enum: None,
        })
        .unwrap_err();
        assert_eq!(error_exit_code(&err), EXIT_USAGE);
    }

    #[test]
    fn poly_lists_coefficients_ascending() {
        let outcome = run_poly(&PolyArgs {
            which: PolyFamily::AltDifference,
            d: 2,
            n: 4,
            max_enum: None,
        })
        .unwrap();
        let doc = json_of(&outcome.envelope);
        let rows = doc["results"]["rows"].as_array().unwrap();
        let coeffs: Vec<_> = rows
            .iter()
            .map(|r| r["coefficient"].as_str().unwrap())
            .collect();
        assert_eq!(coeffs, vec!["14", "-24", "12"]);
        assert_eq!(doc["results"]["degree"], Value::from(2u64));
        assert_eq!(
            doc["results"]["leading_coefficient"],
            Value::String("12".into())
        );
    }

    #[test]
    fn simulate_reports_exact_value_and_z() {
        let outcome = run_simulate(&SimulateArgs {
            n: 3,
            d: 2,
            x: rat_int(4),
            trials: 20_000,
            seed: 5,
        })
        .unwrap();
        assert_eq!(outcome.exit_code, EXIT_OK);
        let doc = json_of(&outcome.envelope);
        let row = &doc["results"]["rows"][0];
        assert_eq!(row["exact"], Value::String("9/32".into()));
        assert!(row["estimate"].is_f64());
        assert!(row["z_score"].is_f64());
    }

    #[test]
    fn verify_small_grid_passes_and_reports_diagnostic() {
        let outcome = run_verify(&VerifyArgs {
            grid: GridSpec {
                n_max: 4,
                trials: 20_000,
                ..GridSpec::default()
            },
            only: None,
        })
        .unwrap();
        assert_eq!(
            outcome.exit_code, EXIT_OK,
            "diagnostic failures do not block"
        );
        let doc = json_of(&outcome.envelope);
        assert_eq!(doc["results"]["all_pass"], Value::Bool(true));
        let rows = doc["results"]["rows"].as_array().unwrap();
        let d1 = rows
            .iter()
            .find(|r| r["identity_id"] == Value::String("D1".into()))
            .unwrap();
        assert_eq!(d1["status"], Value::String("fail".into()));
        assert_eq!(d1["diagnostic"], Value::Bool(true));
        assert!(d1["ce_detail"].as_str().unwrap().contains("expected"));
    }

    #[test]
    fn bench_reports_multiplication_counts_for_record_routes() {
        let outcome = run_bench(&BenchArgs {
            ns: vec![14],
            ds: vec![7],
            methods: vec![StirlingMethod::Record, StirlingMethod::RecordDp],
            reps: 2,
            max_enum: None,
        })
        .unwrap();
        assert_eq!(outcome.exit_code, EXIT_OK);
        let doc = json_of(&outcome.envelope);
        let rows = doc["results"]["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 2);
        let naive = rows[0]["big_mults"].as_u64().unwrap();
        let dp = rows[1]["big_mults"].as_u64().unwrap();
        assert!(dp < naive, "dp = {dp}, naive = {naive}");
        assert_eq!(doc["results"]["agreement"], Value::Bool(true));
    }

    #[test]
    fn bench_rejects_empty_grids() {
        let err = run_bench(&BenchArgs {
            ns: vec![3],
            ds: vec![5],
            methods: vec![StirlingMethod::Euler],
            reps: 1,
            max_enum: None,
        })
        .unwrap_err();
        assert_eq!(error_exit_code(&err), EXIT_USAGE);
    }

    #[test]
    fn method_names_round_trip_through_from_str() {
        for method in StirlingMethod::ALL {
            let parsed: StirlingMethod = method.name().parse().unwrap();
            assert_eq!(parsed, method);
        }
        assert!("bogus".parse::<StirlingMethod>().is_err());
    }
}
