use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{Curve, CurveError, IntegralModel, Point, PointOrder};
use crate::field::{QFElem, Rat};
use crate::sieve::count_points_mod_p;

/// Order bound used to certify non-torsion points. Cyclic torsion over a
/// quadratic field never exceeds 18, so order > 24 together with a verified
/// torsion claim means infinite order.
pub const DEFAULT_ORDER_BOUND: u32 = 24;

/// Coefficient bound for [`small_relation_search`].
pub const DEFAULT_RELATION_BOUND: i64 = 3;

/// Number of good primes used for the mod-p consistency check.
const REDUCTION_PRIMES: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionClaim {
    pub order: u32,
    pub generator: Point,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionCheck {
    /// `order` divides every listed `#E(F_p)`.
    Consistent {
        counts: Vec<(u64, u64)>,
    },
    Inconsistent {
        p: u64,
        count: u64,
    },
    SkippedQuadraticField,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionReport {
    pub order: u32,
    pub reduction: ReductionCheck,
}

impl TorsionReport {
    pub fn is_confirmed(&self) -> bool {
        !matches!(self.reduction, ReductionCheck::Inconsistent { .. })
    }
}

/// Confirms that the generator has exactly the claimed order and, for curves
/// over Q, that the order divides `#E(F_p)` at a few good odd primes.
pub fn verify_torsion_claim(c: &Curve, claim: &TorsionClaim) -> Result<TorsionReport, CurveError> {
    let found = c.point_order(&claim.generator, claim.order.max(DEFAULT_ORDER_BOUND))?;
    if found != PointOrder::Finite(claim.order) {
        return Err(CurveError::OrderMismatch {
            expected: claim.order,
            found,
        });
    }
    if !c.field().is_rationals() {
        return Ok(TorsionReport {
            order: claim.order,
            reduction: ReductionCheck::SkippedQuadraticField,
        });
    }
    let model = IntegralModel::new(c)?;
    let mut counts = Vec::new();
    let mut p = 3u64;
    while counts.len() < REDUCTION_PRIMES {
        if is_small_prime(p) && model.is_good(p) {
            let n = count_points_mod_p(&model.reduce(p)?)?;
            if n % claim.order as u64 != 0 {
                return Ok(TorsionReport {
                    order: claim.order,
                    reduction: ReductionCheck::Inconsistent { p, count: n },
                });
            }
            counts.push((p, n));
        }
        p += 2;
    }
    Ok(TorsionReport {
        order: claim.order,
        reduction: ReductionCheck::Consistent { counts },
    })
}

pub(crate) fn is_small_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationResult {
    /// No combination with coefficients bounded by `bound` lands in the
    /// torsion subgroup. This is heuristic evidence of independence only.
    NoRelationFound {
        bound: i64,
    },
    Relation(Vec<i64>),
}

/// Searches for `n` with `0 < max|n_i| <= bound` and `sum n_i P_i` in the
/// cyclic group generated by the claim. Vectors are tried by increasing
/// `max|n_i|`, lexicographically, with the first nonzero entry positive.
pub fn small_relation_search(
    c: &Curve,
    pts: &[Point],
    bound: i64,
    torsion: &TorsionClaim,
) -> Result<RelationResult, CurveError> {
    for p in pts {
        c.check(p)?;
    }
    c.check(&torsion.generator)?;
    let mut subgroup = Vec::with_capacity(torsion.order as usize);
    let mut acc = Point::Infinity;
    for _ in 0..torsion.order {
        subgroup.push(acc.clone());
        acc = c.add(&acc, &torsion.generator);
    }
    let k = pts.len();
    if k == 0 {
        return Ok(RelationResult::NoRelationFound { bound });
    }
    // multiples[i][n + bound] = n * P_i
    let multiples: Vec<Vec<Point>> = pts
        .iter()
        .map(|p| (-bound..=bound).map(|n| c.mul(n, p)).collect())
        .collect();
    let idx = |n: i64| (n + bound) as usize;
    for m in 1..=bound {
        let mut v = vec![-m; k];
        loop {
            let max = v.iter().map(|x| x.abs()).max().unwrap_or(0);
            let first_nonzero = v.iter().find(|x| **x != 0).copied().unwrap_or(0);
            if max == m && first_nonzero > 0 {
                let mut sum = Point::Infinity;
                for (i, &n) in v.iter().enumerate() {
                    sum = c.add(&sum, &multiples[i][idx(n)]);
                }
                if subgroup.contains(&sum) {
                    return Ok(RelationResult::Relation(v));
                }
            }
            // odometer over [-m, m]^k, last coordinate fastest
            let mut i = k;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if v[i] < m {
                    v[i] += 1;
                    for w in v.iter_mut().skip(i + 1) {
                        *w = -m;
                    }
                    break;
                }
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if i == usize::MAX {
                break;
            }
        }
    }
    Ok(RelationResult::NoRelationFound { bound })
}

/// All rational torsion points of `y^2 = x^3 + a2 x^2 + a4 x + a6` with
/// integer coefficients, by the Nagell–Lutz criterion. Intended for small
/// discriminants; larger ones are rejected rather than factored.
pub fn nagell_lutz_torsion(c: &Curve) -> Result<Vec<Point>, CurveError> {
    let unsupported = |m: &str| CurveError::Unsupported(format!("Nagell-Lutz search: {m}"));
    if !c.field().is_rationals() || !c.a1().is_zero() || !c.a3().is_zero() {
        return Err(unsupported("needs y^2 = cubic over Q"));
    }
    let int = |e: &QFElem| -> Result<BigInt, CurveError> {
        match e.as_rat() {
            Some(r) if r.is_integer() => Ok(r.numer().clone()),
            _ => Err(unsupported("coefficients must be integers")),
        }
    };
    let (a2, a4, a6) = (int(c.a2())?, int(c.a4())?, int(c.a6())?);
    let disc = -BigInt::from(4) * a2.pow(3) * &a6
        + a2.pow(2) * a4.pow(2)
        + BigInt::from(18) * &a2 * &a4 * &a6
        - BigInt::from(4) * a4.pow(3)
        - BigInt::from(27) * a6.pow(2);
    let dabs = disc.abs();
    if dabs > BigInt::from(10u64.pow(14)) {
        return Err(unsupported("discriminant too large"));
    }
    let ymax = dabs.sqrt().to_u64().expect("bounded");
    let mut out = vec![Point::Infinity];
    for y in 0..=ymax {
        let yb = BigInt::from(y);
        if y != 0 && !(&dabs % (&yb * &yb)).is_zero() {
            continue;
        }
        for x in integer_roots(&a2, &a4, &(&a6 - &yb * &yb)) {
            for sy in [yb.clone(), -yb.clone()] {
                let p = Point::affine(
                    QFElem::rational(Rat::from_int(x.clone())),
                    QFElem::rational(Rat::from_int(sy.clone())),
                );
                if out.contains(&p) {
                    continue;
                }
                if let PointOrder::Finite(_) = c.point_order(&p, 12)? {
                    out.push(p);
                }
            }
        }
    }
    out.sort_by(|p, q| match (p, q) {
        (Point::Infinity, Point::Infinity) => std::cmp::Ordering::Equal,
        (Point::Infinity, _) => std::cmp::Ordering::Less,
        (_, Point::Infinity) => std::cmp::Ordering::Greater,
        (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => {
            x1.cmp(x2).then_with(|| y1.cmp(y2))
        }
    });
    Ok(out)
}

/// Integer roots of `x^3 + a x^2 + b x + c`.
fn integer_roots(a: &BigInt, b: &BigInt, c: &BigInt) -> Vec<BigInt> {
    let f = |x: &BigInt| ((x + a) * x + b) * x + c;
    let mut roots = Vec::new();
    if c.is_zero() {
        roots.push(BigInt::zero());
        // remaining factor x^2 + a x + b
        let disc = a * a - BigInt::from(4) * b;
        if !disc.is_negative() {
            let s = disc.sqrt();
            if &s * &s == disc {
                for r in [(-a + &s), (-a - &s)] {
                    if r.is_even() {
                        let r = r / 2;
                        if !roots.contains(&r) {
                            roots.push(r);
                        }
                    }
                }
            }
        }
        return roots;
    }
    let cabs = c.abs();
    let mut d = BigInt::from(1);
    while &d * &d <= cabs {
        if (&cabs % &d).is_zero() {
            for e in [d.clone(), &cabs / &d] {
                for x in [e.clone(), -e] {
                    if f(&x).is_zero() && !roots.contains(&x) {
                        roots.push(x);
                    }
                }
            }
        }
        d += 1;
    }
    roots
}
