//! Exact arithmetic over Q and over quadratic extensions Q(sqrt(d)).
//!
//! [`Rat`] is a thin canonical wrapper over [`BigRational`]; [`QFElem`] holds
//! `a + b*sqrt(d)` together with the field it lives in.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use regex::Regex;
use thiserror::Error;

/// Default prime bound for trial division in [`squarefree_part`].
pub const DEFAULT_PRIME_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no squarefree decomposition")]
    ZeroInput,
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldDesc, right: FieldDesc },
    #[error("squarefree decomposition incomplete: unfactored cofactor {residual}")]
    NormalizationIncomplete { residual: BigInt },
    #[error("invalid quadratic field: d = {0} must be squarefree and not 0 or 1")]
    InvalidField(BigInt),
    #[error("rational element carries a nonzero sqrt coefficient")]
    NotRational,
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

// ---------------------------------------------------------------------------
// Rat

/// Arbitrary-precision rational in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Rat, FieldError> {
        let d = denom.into();
        if d.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Rat(BigRational::new(numer.into(), d)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Rat {
        Rat(BigRational::from_integer(n.into()))
    }

    /// Panicking shorthand for literals in code and tests.
    pub fn frac(n: i64, d: i64) -> Rat {
        Rat::new(n, d).expect("nonzero denominator")
    }

    pub fn from_big(r: BigRational) -> Rat {
        Rat(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn inv(&self) -> Result<Rat, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Rat(self.0.recip()))
    }

    pub fn checked_div(&self, other: &Rat) -> Result<Rat, FieldError> {
        if other.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Rat(&self.0 / &other.0))
    }

    pub fn pow(&self, e: i32) -> Rat {
        if e < 0 {
            assert!(!self.is_zero(), "negative power of zero");
        }
        Rat(num_traits::Pow::pow(&self.0, e))
    }

    /// The non-negative rational square root, if one exists.
    pub fn sqrt(&self) -> Option<Rat> {
        if self.is_negative() {
            return None;
        }
        let n = exact_isqrt(self.numer())?;
        let d = exact_isqrt(self.denom())?;
        Some(Rat(BigRational::new(n, d)))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

impl Zero for Rat {
    fn zero() -> Self {
        Rat(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rat {
    fn one() -> Self {
        Rat(BigRational::one())
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat::from_int(n)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || FieldError::Parse {
            what: "rational",
            input: s.to_string(),
        };
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        if d.starts_with(['+', '-']) {
            return Err(err());
        }
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        Rat::new(n, d).map_err(|_| err())
    }
}

macro_rules! rat_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, o: &Rat) -> Rat {
                Rat((&self.0).$m(&o.0))
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: Rat) -> Rat {
                Rat(self.0.$m(o.0))
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: &Rat) -> Rat {
                Rat(self.0.$m(&o.0))
            }
        }
        impl $tr<Rat> for &Rat {
            type Output = Rat;
            fn $m(self, o: Rat) -> Rat {
                Rat((&self.0).$m(o.0))
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);
rat_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

/// Checked arithmetic entry point; only division can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rat_arith(x: &Rat, y: &Rat, op: ArithOp) -> Result<Rat, FieldError> {
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Div => x.checked_div(y)?,
    })
}

// ---------------------------------------------------------------------------
// Squarefree decomposition

fn primes_up_to(bound: u64) -> Vec<u64> {
    let n = bound as usize;
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

fn default_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(DEFAULT_PRIME_BOUND))
}

/// Writes `n = c^2 * d` with `d` a squarefree integer, using trial division
/// by primes up to [`DEFAULT_PRIME_BOUND`].
pub fn squarefree_part(n: &Rat) -> Result<(BigInt, Rat), FieldError> {
    squarefree_part_with_bound(n, DEFAULT_PRIME_BOUND)
}

pub fn squarefree_part_with_bound(n: &Rat, bound: u64) -> Result<(BigInt, Rat), FieldError> {
    if n.is_zero() {
        return Err(FieldError::ZeroInput);
    }
    // n = N/D = (N*D) / D^2, so the squarefree part of N*D is the answer.
    let (sign, m) = (n.numer() * n.denom()).into_parts();
    let (d, c) = squarefree_uint(m, bound)?;
    let d = BigInt::from_biguint(
        if sign == Sign::Minus {
            Sign::Minus
        } else {
            Sign::Plus
        },
        d,
    );
    let c = Rat::new(BigInt::from(c), n.denom().clone())?;
    Ok((d, c))
}

fn squarefree_uint(mut m: BigUint, bound: u64) -> Result<(BigUint, BigUint), FieldError> {
    let owned;
    let primes: &[u64] = if bound <= DEFAULT_PRIME_BOUND {
        let all = default_primes();
        let end = all.partition_point(|&p| p <= bound);
        &all[..end]
    } else {
        owned = primes_up_to(bound);
        &owned
    };
    let mut d = BigUint::one();
    let mut c = BigUint::one();
    for &p in primes {
        let pb = BigUint::from(p);
        if &pb * &pb > m {
            break;
        }
        let mut e = 0u32;
        loop {
            let (q, r) = m.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            c *= pb.pow(e / 2);
            if e % 2 == 1 {
                d *= &pb;
            }
        }
    }
    if m.is_one() {
        return Ok((d, c));
    }
    let b = BigUint::from(bound);
    if &b * &b >= m {
        // every prime factor of m exceeds the largest prime tried, so m is prime
        d *= m;
        return Ok((d, c));
    }
    let r = m.sqrt();
    if &r * &r == m {
        c *= r;
        return Ok((d, c));
    }
    if m < b.pow(3) {
        // at most two prime factors above the bound, and m is not a square
        d *= m;
        return Ok((d, c));
    }
    Err(FieldError::NormalizationIncomplete {
        residual: BigInt::from(m),
    })
}

// ---------------------------------------------------------------------------
// FieldDesc

/// Either Q or Q(sqrt(d)) with `d` squarefree and not in {0, 1}.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FieldDesc {
    Rationals,
    Quadratic(BigInt),
}

impl FieldDesc {
    /// Builds Q(sqrt(d)); `d` must already be squarefree.
    pub fn quadratic(d: impl Into<BigInt>) -> Result<FieldDesc, FieldError> {
        let d = d.into();
        if d.is_zero() || d.is_one() {
            return Err(FieldError::InvalidField(d));
        }
        let (s, _) = squarefree_part(&Rat::from_int(d.clone()))?;
        if s != d {
            return Err(FieldError::InvalidField(d));
        }
        Ok(FieldDesc::Quadratic(d))
    }

    /// Field generated by sqrt(n) for an arbitrary nonzero rational `n`;
    /// collapses to Q when `n` is a square.
    pub fn for_radicand(n: &Rat) -> Result<FieldDesc, FieldError> {
        let (d, _) = squarefree_part(n)?;
        Ok(if d.is_one() {
            FieldDesc::Rationals
        } else {
            FieldDesc::Quadratic(d)
        })
    }

    pub fn d(&self) -> Option<&BigInt> {
        match self {
            FieldDesc::Rationals => None,
            FieldDesc::Quadratic(d) => Some(d),
        }
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self, FieldDesc::Rationals)
    }

    /// The common field of two descriptors, where Q embeds into everything.
    pub fn join(&self, other: &FieldDesc) -> Result<FieldDesc, FieldError> {
        match (self, other) {
            (FieldDesc::Rationals, f) | (f, FieldDesc::Rationals) => Ok(f.clone()),
            (FieldDesc::Quadratic(a), FieldDesc::Quadratic(b)) if a == b => Ok(self.clone()),
            _ => Err(FieldError::FieldMismatch {
                left: self.clone(),
                right: other.clone(),
            }),
        }
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Rationals => write!(f, "Q"),
            FieldDesc::Quadratic(d) => write!(f, "Q(sqrt({d}))"),
        }
    }
}

impl FromStr for FieldDesc {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "Q" {
            return Ok(FieldDesc::Rationals);
        }
        let inner = t
            .strip_prefix("Q(sqrt(")
            .and_then(|r| r.strip_suffix("))"))
            .ok_or_else(|| FieldError::Parse {
                what: "field",
                input: s.to_string(),
            })?;
        let d: BigInt = inner.parse().map_err(|_| FieldError::Parse {
            what: "field",
            input: s.to_string(),
        })?;
        FieldDesc::quadratic(d)
    }
}

// ---------------------------------------------------------------------------
// QFElem

/// `a + b*sqrt(d)` in the field `field`; `b = 0` whenever the field is Q.
#[derive(Clone)]
pub struct QFElem {
    a: Rat,
    b: Rat,
    field: FieldDesc,
}

impl QFElem {
    pub fn new(a: Rat, b: Rat, field: FieldDesc) -> Result<QFElem, FieldError> {
        if field.is_rationals() && !b.is_zero() {
            return Err(FieldError::NotRational);
        }
        Ok(QFElem { a, b, field })
    }

    pub fn rational(a: Rat) -> QFElem {
        QFElem {
            a,
            b: Rat::zero(),
            field: FieldDesc::Rationals,
        }
    }

    pub fn from_int(n: i64) -> QFElem {
        QFElem::rational(Rat::from_int(n))
    }

    pub fn zero() -> QFElem {
        QFElem::rational(Rat::zero())
    }

    pub fn one() -> QFElem {
        QFElem::rational(Rat::one())
    }

    /// `a + b*sqrt(n)` for any nonzero rational radicand `n`; the square
    /// factor of `n` is folded into `b` so that the stored `d` is squarefree.
    pub fn with_radicand(a: Rat, b: Rat, n: &Rat) -> Result<QFElem, FieldError> {
        let (d, c) = squarefree_part(n)?;
        if d.is_one() {
            return Ok(QFElem::rational(a + b * c));
        }
        Ok(QFElem {
            a,
            b: b * c,
            field: FieldDesc::Quadratic(d),
        })
    }

    /// The generator sqrt(d) of Q(sqrt(d)).
    pub fn sqrt_d(field: &FieldDesc) -> Option<QFElem> {
        field.d().map(|_| QFElem {
            a: Rat::zero(),
            b: Rat::one(),
            field: field.clone(),
        })
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Re-labels the element as living in `field`, which must contain it.
    pub fn promote(&self, field: &FieldDesc) -> Result<QFElem, FieldError> {
        if self.b.is_zero() {
            return Ok(QFElem {
                a: self.a.clone(),
                b: Rat::zero(),
                field: field.clone(),
            });
        }
        if &self.field == field {
            Ok(self.clone())
        } else {
            Err(FieldError::FieldMismatch {
                left: self.field.clone(),
                right: field.clone(),
            })
        }
    }

    fn d_rat(&self) -> Rat {
        match &self.field {
            FieldDesc::Rationals => Rat::zero(),
            FieldDesc::Quadratic(d) => Rat::from_int(d.clone()),
        }
    }

    pub fn conj(&self) -> QFElem {
        QFElem {
            a: self.a.clone(),
            b: -&self.b,
            field: self.field.clone(),
        }
    }

    /// Field norm `a^2 - d*b^2`.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - self.d_rat() * &self.b * &self.b
    }

    pub fn try_add(&self, o: &QFElem) -> Result<QFElem, FieldError> {
        let field = self.field.join(&o.field)?;
        Ok(QFElem {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            field,
        })
    }

    pub fn try_sub(&self, o: &QFElem) -> Result<QFElem, FieldError> {
        let field = self.field.join(&o.field)?;
        Ok(QFElem {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
            field,
        })
    }

    pub fn try_mul(&self, o: &QFElem) -> Result<QFElem, FieldError> {
        let field = self.field.join(&o.field)?;
        if self.b.is_zero() {
            return Ok(QFElem {
                a: &self.a * &o.a,
                b: &self.a * &o.b,
                field,
            });
        }
        if o.b.is_zero() {
            return Ok(QFElem {
                a: &self.a * &o.a,
                b: &self.b * &o.a,
                field,
            });
        }
        let d = self.d_rat();
        Ok(QFElem {
            a: &self.a * &o.a + &self.b * &o.b * d,
            b: &self.a * &o.b + &self.b * &o.a,
            field,
        })
    }

    /// Inverse via the conjugate: (a + b√d)^-1 = (a - b√d) / (a^2 - d b^2).
    pub fn inv(&self) -> Result<QFElem, FieldError> {
        if self.b.is_zero() {
            return Ok(QFElem {
                a: self.a.inv()?,
                b: Rat::zero(),
                field: self.field.clone(),
            });
        }
        let n = self.norm().inv()?;
        Ok(QFElem {
            a: &self.a * &n,
            b: -(&self.b * &n),
            field: self.field.clone(),
        })
    }

    pub fn try_div(&self, o: &QFElem) -> Result<QFElem, FieldError> {
        self.field.join(&o.field)?;
        self.try_mul(&o.inv()?)
    }

    pub fn square(&self) -> QFElem {
        self * self
    }

    pub fn pow(&self, e: u32) -> QFElem {
        let mut result = QFElem::one().promote(&self.field).expect("Q embeds");
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        result
    }

    pub fn scale(&self, r: &Rat) -> QFElem {
        QFElem {
            a: &self.a * r,
            b: &self.b * r,
            field: self.field.clone(),
        }
    }

    /// Compact form without spaces, e.g. `3-2*sqrt(2)`.
    pub fn to_compact(&self) -> String {
        self.render(false)
    }

    fn render(&self, spaced: bool) -> String {
        let d = match (&self.field, self.b.is_zero()) {
            (FieldDesc::Quadratic(d), false) => d,
            _ => return self.a.to_string(),
        };
        let (sep_p, sep_m) = if spaced { (" + ", " - ") } else { ("+", "-") };
        let sep = if self.b.is_negative() { sep_m } else { sep_p };
        let babs = self.b.abs();
        let coeff = if babs.is_one() {
            String::new()
        } else {
            format!("{babs}*")
        };
        format!("{}{sep}{coeff}sqrt({d})", self.a)
    }
}

/// Checked arithmetic over a common field.
pub fn qf_arith(x: &QFElem, y: &QFElem, op: ArithOp) -> Result<QFElem, FieldError> {
    match op {
        ArithOp::Add => x.try_add(y),
        ArithOp::Sub => x.try_sub(y),
        ArithOp::Mul => x.try_mul(y),
        ArithOp::Div => x.try_div(y),
    }
}

/// Square root inside the element's own field, if one exists.
///
/// For `x = a` rational inside Q(sqrt(d)) both `a` and `a/d` are tested for
/// being rational squares. For `b != 0` the norm must be a square `n^2` and
/// then `p^2 = (a +- n)/2`, `q = b/(2p)`.
pub fn qf_sqrt(x: &QFElem) -> Option<QFElem> {
    let field = x.field.clone();
    if x.b.is_zero() {
        if let Some(r) = x.a.sqrt() {
            return Some(QFElem {
                a: r,
                b: Rat::zero(),
                field,
            });
        }
        if let FieldDesc::Quadratic(d) = &field {
            let q = &x.a / Rat::from_int(d.clone());
            if let Some(r) = q.sqrt() {
                return Some(QFElem {
                    a: Rat::zero(),
                    b: r,
                    field,
                });
            }
        }
        return None;
    }
    let n = x.norm().sqrt()?;
    let two = Rat::from_int(2);
    for p2 in [(&x.a + &n) / &two, (&x.a - &n) / &two] {
        if let Some(p) = p2.sqrt() {
            if p.is_zero() {
                continue;
            }
            let q = &x.b / (&two * &p);
            return Some(QFElem { a: p, b: q, field });
        }
    }
    None
}

impl PartialEq for QFElem {
    fn eq(&self, o: &QFElem) -> bool {
        self.a == o.a && self.b == o.b && (self.b.is_zero() || self.field == o.field)
    }
}

impl Eq for QFElem {}

impl Hash for QFElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
    }
}

impl PartialOrd for QFElem {
    fn partial_cmp(&self, o: &QFElem) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Lexicographic on (a, b); only meant for deterministic sorting.
impl Ord for QFElem {
    fn cmp(&self, o: &QFElem) -> Ordering {
        self.a.cmp(&o.a).then_with(|| self.b.cmp(&o.b))
    }
}

impl fmt::Display for QFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(true))
    }
}

impl fmt::Debug for QFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(true))
    }
}

fn qf_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(
            r"^(?:(?P<a>[+-]?\d+(?:/\d+)?)(?:(?P<sign>[+-])(?:(?P<b>[+-]?\d+(?:/\d+)?)\*)?sqrt\((?P<d>[+-]?\d+)\))?|(?P<lsign>[+-]?)(?:(?P<lb>\d+(?:/\d+)?)\*)?sqrt\((?P<ld>[+-]?\d+)\))$",
        )
        .expect("static regex")
    })
}

/// Accepts `a`, `a + b*sqrt(n)`, `a - b*sqrt(n)`, `b*sqrt(n)` and `sqrt(n)`;
/// `n` need not be squarefree.
impl FromStr for QFElem {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || FieldError::Parse {
            what: "quadratic field element",
            input: s.to_string(),
        };
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        let caps = qf_regex().captures(&t).ok_or_else(err)?;
        let (a, sign, b, dm) = match caps.name("a") {
            Some(a) => (
                a.as_str().parse::<Rat>()?,
                caps.name("sign"),
                caps.name("b"),
                caps.name("d"),
            ),
            None => (
                Rat::zero(),
                caps.name("lsign"),
                caps.name("lb"),
                caps.name("ld"),
            ),
        };
        let Some(dm) = dm else {
            return Ok(QFElem::rational(a));
        };
        let mut b = match b {
            Some(m) => m.as_str().parse::<Rat>()?,
            None => Rat::one(),
        };
        if sign.map(|m| m.as_str()) == Some("-") {
            b = -b;
        }
        let n: BigInt = dm.as_str().parse().map_err(|_| err())?;
        if n.is_zero() {
            return Err(err());
        }
        QFElem::with_radicand(a, b, &Rat::from_int(n))
    }
}

macro_rules! qf_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&QFElem> for &QFElem {
            type Output = QFElem;
            fn $m(self, o: &QFElem) -> QFElem {
                match self.$try(o) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $tr<QFElem> for QFElem {
            type Output = QFElem;
            fn $m(self, o: QFElem) -> QFElem {
                (&self).$m(&o)
            }
        }
        impl $tr<&QFElem> for QFElem {
            type Output = QFElem;
            fn $m(self, o: &QFElem) -> QFElem {
                (&self).$m(o)
            }
        }
        impl $tr<QFElem> for &QFElem {
            type Output = QFElem;
            fn $m(self, o: QFElem) -> QFElem {
                self.$m(&o)
            }
        }
    };
}

qf_binop!(Add, add, try_add);
qf_binop!(Sub, sub, try_sub);
qf_binop!(Mul, mul, try_mul);
qf_binop!(Div, div, try_div);

impl Neg for QFElem {
    type Output = QFElem;
    fn neg(self) -> QFElem {
        QFElem {
            a: -self.a,
            b: -self.b,
            field: self.field,
        }
    }
}

impl Neg for &QFElem {
    type Output = QFElem;
    fn neg(self) -> QFElem {
        QFElem {
            a: -&self.a,
            b: -&self.b,
            field: self.field.clone(),
        }
    }
}

impl From<Rat> for QFElem {
    fn from(r: Rat) -> Self {
        QFElem::rational(r)
    }
}

impl From<i64> for QFElem {
    fn from(n: i64) -> Self {
        QFElem::from_int(n)
    }
}
