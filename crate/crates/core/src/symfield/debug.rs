//! Optional numeric cross-check of symbolic zero/equality verdicts.
//!
//! When enabled, every `is_zero` / `eq_checked` verdict is compared against
//! exact evaluation at random rational points. Generators are treated as the
//! independent indeterminates they are declared to be, so each one receives an
//! independent random value. Disagreements are counted, not raised.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::element::FieldElement;
use crate::error::Error;

static ENABLED: AtomicBool = AtomicBool::new(false);
static DISAGREEMENTS: AtomicUsize = AtomicUsize::new(0);
static CHECKS: AtomicUsize = AtomicUsize::new(0);

const POINTS: usize = 3;
const MAX_ATTEMPTS: usize = 50;

fn rng() -> &'static Mutex<StdRng> {
    static RNG: std::sync::OnceLock<Mutex<StdRng>> = std::sync::OnceLock::new();
    RNG.get_or_init(|| Mutex::new(StdRng::seed_from_u64(0x5eed)))
}

pub fn enable() {
    ENABLED.store(true, Ordering::SeqCst);
}

pub fn disable() {
    ENABLED.store(false, Ordering::SeqCst);
}

pub fn is_enabled() -> bool {
    ENABLED.load(Ordering::Relaxed)
}

/// Number of verdicts contradicted by sampling since start-up.
pub fn disagreements() -> usize {
    DISAGREEMENTS.load(Ordering::SeqCst)
}

/// Number of verdicts that were sampled.
pub fn checks() -> usize {
    CHECKS.load(Ordering::SeqCst)
}

fn random_point(nvars: usize) -> Vec<BigRational> {
    let mut rng = rng().lock().unwrap();
    (0..nvars)
        .map(|_| {
            let n: i64 = rng.gen_range(-97..=97);
            let d: i64 = rng.gen_range(1..=31);
            BigRational::new(BigInt::from(n), BigInt::from(d))
        })
        .collect()
}

/// Values of `values` at `POINTS` random points avoiding poles.
pub fn sample(values: &[&FieldElement]) -> Vec<Vec<BigRational>> {
    let nvars = values.iter().map(|v| v.nvars()).max().unwrap_or(0);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < POINTS && attempts < MAX_ATTEMPTS {
        attempts += 1;
        let p = random_point(nvars);
        let row: Result<Vec<_>, Error> = values.iter().map(|v| v.eval(&p)).collect();
        match row {
            Ok(r) => out.push(r),
            Err(Error::EvaluationSingular) => continue,
            Err(e) => panic!("unexpected evaluation error: {e}"),
        }
    }
    out
}

pub(crate) fn check_zero_verdict(a: &FieldElement, verdict: bool) {
    CHECKS.fetch_add(1, Ordering::Relaxed);
    let rows = sample(&[a]);
    let numeric = rows.iter().all(|r| r[0] == BigRational::from_integer(0.into()));
    if numeric != verdict {
        DISAGREEMENTS.fetch_add(1, Ordering::SeqCst);
    }
}

pub(crate) fn check_eq_verdict(a: &FieldElement, b: &FieldElement, verdict: bool) {
    CHECKS.fetch_add(1, Ordering::Relaxed);
    let rows = sample(&[a, b]);
    let numeric = rows.iter().all(|r| r[0] == r[1]);
    if numeric != verdict {
        DISAGREEMENTS.fetch_add(1, Ordering::SeqCst);
    }
}
