//! Long Weierstrass curves over Q or Q(sqrt(d)) and their group law.

mod isomorphism;
mod reduction;
mod torsion;

use std::fmt;

use thiserror::Error;

use crate::field::{FieldDesc, FieldError, QFElem, Rat};

pub use isomorphism::{find_isomorphism, transform_model, Iso};
pub use reduction::{reduce_mod_p, IntegralModel, ReducedCurve};
pub use torsion::{
    nagell_lutz_torsion, small_relation_search, verify_torsion_claim, ReductionCheck,
    RelationResult, TorsionClaim, TorsionReport, DEFAULT_ORDER_BOUND, DEFAULT_RELATION_BOUND,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("singular model: discriminant vanishes")]
    Singular,
    #[error("point {0} is not on the curve")]
    PointNotOnCurve(String),
    #[error("torsion claim of order {expected} failed: generator has order {found}")]
    OrderMismatch { expected: u32, found: PointOrder },
    #[error("model change needs u != 0")]
    ZeroScale,
    #[error("bad reduction at p = {0}")]
    BadReduction(u64),
    #[error("no integral model over Q: coefficients are not rational")]
    NonIntegralModel,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Exact order of a point, or the statement that it exceeds the search bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointOrder {
    Finite(u32),
    ExceedsBound,
}

impl fmt::Display for PointOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointOrder::Finite(n) => write!(f, "{n}"),
            PointOrder::ExceedsBound => write!(f, "> bound"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
#[allow(clippy::large_enum_variant)]
pub enum Point {
    Infinity,
    Affine { x: QFElem, y: QFElem },
}

impl Point {
    pub fn affine(x: QFElem, y: QFElem) -> Point {
        Point::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&QFElem> {
        match self {
            Point::Infinity => None,
            Point::Affine { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&QFElem> {
        match self {
            Point::Infinity => None,
            Point::Affine { y, .. } => Some(y),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "O"),
            Point::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` over `field`.
#[derive(Clone, PartialEq, Eq)]
pub struct Curve {
    a: [QFElem; 5],
    field: FieldDesc,
}

/// The b- and c-invariants together with the discriminant.
#[derive(Debug, Clone)]
pub struct Invariants {
    pub b2: QFElem,
    pub b4: QFElem,
    pub b6: QFElem,
    pub b8: QFElem,
    pub c4: QFElem,
    pub c6: QFElem,
    pub disc: QFElem,
}

impl Curve {
    /// Curve over the smallest field containing all coefficients.
    pub fn new(a: [QFElem; 5]) -> Result<Curve, CurveError> {
        let mut field = FieldDesc::Rationals;
        for c in &a {
            field = field.join(c.field())?;
        }
        Curve::over(field, a)
    }

    /// Curve whose points are taken over `field`, even if the coefficients
    /// happen to be rational.
    pub fn over(field: FieldDesc, a: [QFElem; 5]) -> Result<Curve, CurveError> {
        let mut coeffs = Vec::with_capacity(5);
        for c in &a {
            coeffs.push(c.promote(&field)?);
        }
        let a: [QFElem; 5] = coeffs.try_into().expect("five coefficients");
        let curve = Curve { a, field };
        if curve.invariants().disc.is_zero() {
            return Err(CurveError::Singular);
        }
        Ok(curve)
    }

    pub fn from_rats(a: [Rat; 5]) -> Result<Curve, CurveError> {
        Curve::new(a.map(QFElem::rational))
    }

    /// `y^2 = x^3 + a x^2 + b x`.
    pub fn short(a: QFElem, b: QFElem) -> Result<Curve, CurveError> {
        let z = QFElem::zero();
        Curve::new([z.clone(), a, z.clone(), b, z])
    }

    pub fn short_over(field: FieldDesc, a: QFElem, b: QFElem) -> Result<Curve, CurveError> {
        let z = QFElem::zero();
        Curve::over(field, [z.clone(), a, z.clone(), b, z])
    }

    pub fn coeffs(&self) -> &[QFElem; 5] {
        &self.a
    }

    pub fn a1(&self) -> &QFElem {
        &self.a[0]
    }
    pub fn a2(&self) -> &QFElem {
        &self.a[1]
    }
    pub fn a3(&self) -> &QFElem {
        &self.a[2]
    }
    pub fn a4(&self) -> &QFElem {
        &self.a[3]
    }
    pub fn a6(&self) -> &QFElem {
        &self.a[4]
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    /// Whether the model is `y^2 = x^3 + a x^2 + b x`.
    pub fn is_short_ab(&self) -> bool {
        self.a[0].is_zero() && self.a[2].is_zero() && self.a[4].is_zero()
    }

    pub fn invariants(&self) -> Invariants {
        let [a1, a2, a3, a4, a6] = &self.a;
        let k = |n: i64| QFElem::from_int(n);
        let b2 = a1 * a1 + k(4) * a2;
        let b4 = k(2) * a4 + a1 * a3;
        let b6 = a3 * a3 + k(4) * a6;
        let b8 = a1 * a1 * a6 + k(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        let c4 = &b2 * &b2 - k(24) * &b4;
        let c6 = -(&b2 * &b2 * &b2) + k(36) * &b2 * &b4 - k(216) * &b6;
        let disc = -(&b2 * &b2 * &b8) - k(8) * &b4 * &b4 * &b4 - k(27) * &b6 * &b6
            + k(9) * &b2 * &b4 * &b6;
        Invariants {
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            disc,
        }
    }

    pub fn discriminant(&self) -> QFElem {
        self.invariants().disc
    }

    pub fn j_invariant(&self) -> QFElem {
        let inv = self.invariants();
        &inv.c4 * &inv.c4 * &inv.c4 / &inv.disc
    }

    /// Brings an element into the curve's field.
    pub fn elem(&self, v: &QFElem) -> Result<QFElem, CurveError> {
        Ok(v.promote(&self.field)?)
    }

    /// Builds an affine point, checking that it lies on the curve.
    pub fn point(&self, x: QFElem, y: QFElem) -> Result<Point, CurveError> {
        let p = Point::Affine {
            x: self.elem(&x)?,
            y: self.elem(&y)?,
        };
        self.check(&p)?;
        Ok(p)
    }

    pub fn point_rat(&self, x: Rat, y: Rat) -> Result<Point, CurveError> {
        self.point(QFElem::rational(x), QFElem::rational(y))
    }

    pub fn contains(&self, p: &Point) -> bool {
        let (x, y) = match p {
            Point::Infinity => return true,
            Point::Affine { x, y } => (x, y),
        };
        if x.field().join(&self.field).is_err() || y.field().join(&self.field).is_err() {
            return false;
        }
        let [a1, a2, a3, a4, a6] = &self.a;
        let lhs = y * y + a1 * x * y + a3 * y;
        let rhs = ((x + a2) * x + a4) * x + a6;
        lhs == rhs
    }

    pub fn check(&self, p: &Point) -> Result<(), CurveError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(CurveError::PointNotOnCurve(p.to_string()))
        }
    }

    pub fn neg(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::Affine {
                x: x.clone(),
                y: -y - &self.a[0] * x - &self.a[2],
            },
        }
    }

    /// Chord-and-tangent addition; both points are assumed to be on the curve.
    pub fn add(&self, p: &Point, q: &Point) -> Point {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let [a1, a2, a3, a4, _] = &self.a;
        let lambda = if x1 == x2 {
            let denom = y1 + y2 + a1 * x2 + a3;
            if denom.is_zero() {
                return Point::Infinity;
            }
            let three = QFElem::from_int(3);
            let two = QFElem::from_int(2);
            (three * x1 * x1 + two * a2 * x1 + a4 - a1 * y1) / denom
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let nu = y1 - &lambda * x1;
        let x3 = &lambda * &lambda + a1 * &lambda - a2 - x1 - x2;
        let y3 = -((&lambda + a1) * &x3) - nu - a3;
        Point::Affine { x: x3, y: y3 }
    }

    pub fn sub(&self, p: &Point, q: &Point) -> Point {
        self.add(p, &self.neg(q))
    }

    pub fn double(&self, p: &Point) -> Point {
        self.add(p, p)
    }

    /// `k * P` by double-and-add; `P` is assumed to be on the curve.
    pub fn mul(&self, k: i64, p: &Point) -> Point {
        let mut base = if k < 0 { self.neg(p) } else { p.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = Point::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.double(&base);
            }
        }
        acc
    }

    /// Exact order of `p` if it is at most `bound`.
    ///
    /// Only the multiples up to `ceil(bound/2)` are formed: `nP = O` holds
    /// exactly when `ceil(n/2) P = -(floor(n/2) P)`, which keeps coordinate
    /// growth to a quarter of the naive walk.
    pub fn point_order(&self, p: &Point, bound: u32) -> Result<PointOrder, CurveError> {
        self.check(p)?;
        let mut multiples = vec![Point::Infinity, p.clone()];
        for n in 1..=bound {
            let k = n.div_ceil(2) as usize;
            let j = (n / 2) as usize;
            while multiples.len() <= k {
                let next = self.add(multiples.last().expect("nonempty"), p);
                multiples.push(next);
            }
            if multiples[k] == self.neg(&multiples[j]) {
                return Ok(PointOrder::Finite(n));
            }
        }
        Ok(PointOrder::ExceedsBound)
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.a.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}] over {}", a.join(", "), self.field)
    }
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Checked `P + Q`.
pub fn group_add(c: &Curve, p: &Point, q: &Point) -> Result<Point, CurveError> {
    c.check(p)?;
    c.check(q)?;
    Ok(c.add(p, q))
}

/// Checked `k * P`.
pub fn scalar_mul(c: &Curve, k: i64, p: &Point) -> Result<Point, CurveError> {
    c.check(p)?;
    Ok(c.mul(k, p))
}

/// Checked order computation with an explicit bound.
pub fn point_order(c: &Curve, p: &Point, bound: u32) -> Result<PointOrder, CurveError> {
    c.point_order(p, bound)
}
