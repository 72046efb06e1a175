//! Point counts over F_p and a Nagao-style ranking score.
//!
//! The score is a heuristic for ordering candidates before handing them to
//! a computer-algebra system. Two conventions are supported:
//!
//! * `nagao_weighted`: `sum over good 5 <= p <= bound of (2 - a_p) * ln(p) / p`
//! * `ap_sum`: `sum over the same primes of -a_p`
//!
//! Primes 2 and 3 are never used; they divide the discriminant of most
//! parametrised curves and would only add noise.

use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use num_bigint::BigUint;
use thiserror::Error;

use crate::curve::{Curve, CurveError, IntegralModel, ReducedCurve};
use crate::cwalk::cw_fraction_at;
use crate::params::{param_z10, param_z12, Group, ParamError};
use crate::record::CurveRecord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SieveError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("invalid sieve configuration: {0}")]
    InvalidConfig(String),
    #[error("no good primes in [5, {bound}]")]
    NoGoodPrimes { bound: u64 },
    #[error("sweep over {0} is not supported; use z10 or z12")]
    UnsupportedGroup(Group),
    #[error("could not build worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScoreKind {
    NagaoWeighted,
    ApSum,
}

impl ScoreKind {
    pub fn name(self) -> &'static str {
        match self {
            ScoreKind::NagaoWeighted => "nagao_weighted",
            ScoreKind::ApSum => "ap_sum",
        }
    }

    /// The score as a formula over good primes `5 <= p <= B`. This is a
    /// convention of this crate, not a reconstruction of any published sieve.
    pub fn formula(self) -> &'static str {
        match self {
            ScoreKind::NagaoWeighted => "sum over good 5 <= p <= B of (2 - a_p) log(p) / p",
            ScoreKind::ApSum => "sum over good 5 <= p <= B of -a_p",
        }
    }
}

impl std::str::FromStr for ScoreKind {
    type Err = SieveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nagao_weighted" => Ok(ScoreKind::NagaoWeighted),
            "ap_sum" => Ok(ScoreKind::ApSum),
            other => Err(SieveError::InvalidConfig(format!(
                "unknown score kind {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveConfig {
    pub prime_bound: u64,
    /// Skip primes of bad reduction. When false, a bad prime is an error.
    pub skip_bad: bool,
    pub score_kind: ScoreKind,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            prime_bound: 1000,
            skip_bad: true,
            score_kind: ScoreKind::NagaoWeighted,
        }
    }
}

impl SieveConfig {
    pub fn validate(&self) -> Result<(), SieveError> {
        if self.prime_bound < 5 {
            return Err(SieveError::InvalidConfig(format!(
                "prime_bound must be at least 5, got {}",
                self.prime_bound
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SieveScore {
    pub score: f64,
    pub primes_used: usize,
    pub bad_primes: Vec<u64>,
    pub kind: ScoreKind,
}

/// Primes up to `bound` by a plain sieve of Eratosthenes.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn disc_mod_p(c: &ReducedCurve) -> u64 {
    let p = c.p as u128;
    let [a1, a2, a3, a4, a6] = c.a.map(|v| v as u128 % p);
    let m = |x: u128| x % p;
    let neg = |x: u128| (p - x % p) % p;
    let b2 = m(a1 * a1 + 4 * a2);
    let b4 = m(2 * a4 + a1 * a3);
    let b6 = m(a3 * a3 + 4 * a6);
    let b8 = m(m(a1 * a1 % p * a6)
        + m(4 * a2 % p * a6)
        + neg(m(a1 * a3 % p * a4))
        + m(a2 * a3 % p * a3)
        + neg(a4 * a4 % p));
    let t1 = neg(m(b2 * b2 % p * b8));
    let t2 = neg(m(8 * m(b4 * b4 % p * b4)));
    let t3 = neg(m(27 * m(b6 * b6)));
    let t4 = m(9 * m(b2 * b4 % p * b6));
    m(t1 + t2 + t3 + t4) as u64
}

/// `#E(F_p)` including the point at infinity.
///
/// For odd `p` the equation is rewritten as `(2y + a1 x + a3)^2 = D(x)` and
/// each `x` contributes `1 + (D(x) / p)`, read from a table of squares.
pub fn count_points_mod_p(c: &ReducedCurve) -> Result<u64, CurveError> {
    let p = c.p;
    if disc_mod_p(c) == 0 {
        return Err(CurveError::BadReduction(p));
    }
    if p == 2 {
        let mut n = 1;
        for x in 0..2 {
            for y in 0..2 {
                if c.contains(x, y) {
                    n += 1;
                }
            }
        }
        return Ok(n);
    }
    let pu = p as usize;
    // chi[r] = 1 for nonzero squares, 0 for zero, -1 otherwise
    let mut chi = vec![-1i8; pu];
    chi[0] = 0;
    for y in 1..=pu / 2 {
        chi[y * y % pu] = 1;
    }
    let pp = p as u128;
    let [a1, a2, a3, a4, a6] = c.a.map(|v| v as u128 % pp);
    let mut total: i64 = p as i64 + 1;
    for x in 0..pp {
        let f = (((x + a2) * x % pp + a4) * x % pp + a6) % pp;
        let h = (a1 * x + a3) % pp;
        let d = (h * h + 4 * f) % pp;
        total += chi[d as usize] as i64;
    }
    Ok(total as u64)
}

/// `a_p = p + 1 - #E(F_p)` for a curve over Q with good reduction at `p`.
pub fn ap(c: &Curve, p: u64) -> Result<i64, CurveError> {
    let reduced = IntegralModel::new(c)?.reduce(p)?;
    let n = count_points_mod_p(&reduced)?;
    Ok(p as i64 + 1 - n as i64)
}

fn ap_reduced(model: &IntegralModel, p: u64) -> Result<i64, CurveError> {
    let n = count_points_mod_p(&model.reduce(p)?)?;
    Ok(p as i64 + 1 - n as i64)
}

/// Scores a curve over Q; the fold runs over primes in increasing order so
/// the result does not depend on scheduling.
pub fn nagao_score(c: &Curve, cfg: &SieveConfig) -> Result<SieveScore, SieveError> {
    cfg.validate()?;
    let model = IntegralModel::new(c)?;
    let mut score = 0.0f64;
    let mut used = 0usize;
    let mut bad = Vec::new();
    for p in primes_up_to(cfg.prime_bound)
        .into_iter()
        .filter(|&p| p >= 5)
    {
        if !model.is_good(p) {
            if !cfg.skip_bad {
                return Err(CurveError::BadReduction(p).into());
            }
            bad.push(p);
            continue;
        }
        let a = ap_reduced(&model, p)?;
        score += match cfg.score_kind {
            ScoreKind::NagaoWeighted => (2 - a) as f64 * (p as f64).ln() / p as f64,
            ScoreKind::ApSum => -a as f64,
        };
        used += 1;
    }
    if used == 0 {
        return Err(SieveError::NoGoodPrimes {
            bound: cfg.prime_bound,
        });
    }
    Ok(SieveScore {
        score,
        primes_used: used,
        bad_primes: bad,
        kind: cfg.score_kind,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOptions {
    pub group: Group,
    /// Inclusive range of Calkin–Wilf indices; the parameter is the fraction
    /// at each index.
    pub start: u64,
    pub end: u64,
    pub top_k: usize,
    pub workers: usize,
    pub progress: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepEntry {
    pub index: u64,
    pub record: CurveRecord,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub swept: usize,
    pub kept: Vec<SweepEntry>,
    pub skipped: Vec<(u64, String)>,
}

fn sweep_candidate(group: Group, index: u64, cfg: &SieveConfig) -> Result<CurveRecord, String> {
    let param = cw_fraction_at(&BigUint::from(index)).map_err(|e| e.to_string())?;
    let mut record = match group {
        Group::Z10 => param_z10(&param),
        Group::Z12 => param_z12(&param),
        other => Err(ParamError::Unsupported(other.to_string())),
    }
    .map_err(|e| e.to_string())?;
    let score = nagao_score(&record.curve, cfg).map_err(|e| e.to_string())?;
    record
        .annotations
        .push(format!("score: {}", cfg.score_kind.formula()));
    record.score = Some(score);
    record.label = format!("{}-cw{}", group.name(), index);
    record
        .provenance
        .params
        .insert("cw_index".into(), index.to_string());
    Ok(record)
}

/// Builds, verifies and scores every candidate in the index range on a
/// dedicated pool, then keeps the `top_k` best by score (ties broken by the
/// smaller index). Failing candidates are collected, never fatal.
pub fn sweep(opts: &SweepOptions, cfg: &SieveConfig) -> Result<SweepResult, SieveError> {
    use rayon::prelude::*;

    cfg.validate()?;
    if !matches!(opts.group, Group::Z10 | Group::Z12) {
        return Err(SieveError::UnsupportedGroup(opts.group));
    }
    if opts.start == 0 || opts.end < opts.start {
        return Err(SieveError::InvalidConfig(format!(
            "index range [{}, {}] is empty or starts below 1",
            opts.start, opts.end
        )));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| SieveError::Pool(e.to_string()))?;

    let swept = AtomicUsize::new(0);
    let kept = AtomicUsize::new(0);
    let skipped = AtomicUsize::new(0);
    let results: Vec<(u64, Result<CurveRecord, String>)> = pool.install(|| {
        (opts.start..=opts.end)
            .into_par_iter()
            .map(|i| {
                let r = sweep_candidate(opts.group, i, cfg);
                match r {
                    Ok(_) => kept.fetch_add(1, AtomicOrdering::Relaxed),
                    Err(_) => skipped.fetch_add(1, AtomicOrdering::Relaxed),
                };
                let n = swept.fetch_add(1, AtomicOrdering::Relaxed) + 1;
                if opts.progress && n.is_multiple_of(1000) {
                    eprintln!(
                        "swept={} kept={} skipped={}",
                        n,
                        kept.load(AtomicOrdering::Relaxed),
                        skipped.load(AtomicOrdering::Relaxed)
                    );
                }
                (i, r)
            })
            .collect()
    });

    let mut ok = Vec::new();
    let mut bad = Vec::new();
    for (i, r) in results {
        match r {
            Ok(record) => ok.push(SweepEntry { index: i, record }),
            Err(e) => bad.push((i, e)),
        }
    }
    let score = |e: &SweepEntry| {
        e.record
            .score
            .as_ref()
            .map(|s| s.score)
            .unwrap_or(f64::NEG_INFINITY)
    };
    ok.sort_by(|x, y| {
        score(y)
            .total_cmp(&score(x))
            .then_with(|| x.index.cmp(&y.index))
    });
    ok.truncate(opts.top_k);
    bad.sort_by_key(|(i, _)| *i);
    Ok(SweepResult {
        swept: swept.into_inner(),
        kept: ok,
        skipped: bad,
    })
}

/// Worker count from the environment, falling back to available parallelism.
pub fn default_workers(env_value: Option<&str>) -> usize {
    env_value
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}
