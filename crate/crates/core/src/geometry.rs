//! The cubic `y^2 (x - delta) = alpha + beta x + gamma x^2` and its relation
//! to `y^2 = x^3 + a x^2 + b x`.
//!
//! Writing `s = x - delta`, the right-hand side becomes `P0 + P1 s + P2 s^2`
//! with `P0 = alpha + beta delta + gamma delta^2`, `P1 = beta + 2 gamma delta`
//! and `P2 = gamma`. The substitution `X = P0 / s`, `Y = P0 y / s` then gives
//! `Y^2 = X^3 + P1 X^2 + P0 P2 X`. In homogeneous coordinates the two points
//! at infinity of the cubic are `(0:1:0)`, the neutral element, and `(1:0:0)`,
//! which corresponds to `T = (0, 0)`.

use thiserror::Error;

use crate::curve::{Curve, CurveError, Point};
use crate::field::{FieldError, QFElem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    #[error("point has x = delta; its conjugate is not affine")]
    VerticalAsymptote,
    #[error("the (a, b) image is singular")]
    SingularImage,
    #[error("points are not collinear")]
    NotCollinear,
    #[error("point {0} is not on the cubic")]
    NotOnCurve(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

fn k(n: i64) -> QFElem {
    QFElem::from_int(n)
}

/// `y^2 (x - delta) = alpha + beta x + gamma x^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveABGD {
    pub alpha: QFElem,
    pub beta: QFElem,
    pub gamma: QFElem,
    pub delta: QFElem,
}

impl CurveABGD {
    pub fn new(
        alpha: QFElem,
        beta: QFElem,
        gamma: QFElem,
        delta: QFElem,
    ) -> Result<CurveABGD, GeometryError> {
        if gamma.is_zero() {
            return Err(GeometryError::DegenerateParameters("gamma = 0".into()));
        }
        let c = CurveABGD {
            alpha,
            beta,
            gamma,
            delta,
        };
        let (p0, p1, p2) = c.p_coeffs();
        let b = &p0 * &p2;
        if (&b * &b * (&p1 * &p1 - k(4) * &b)).is_zero() {
            return Err(GeometryError::DegenerateParameters(
                "short-form image is singular".into(),
            ));
        }
        Ok(c)
    }

    /// `(P0, P1, P2)` as in the module documentation.
    pub fn p_coeffs(&self) -> (QFElem, QFElem, QFElem) {
        let (a, b, g, d) = (&self.alpha, &self.beta, &self.gamma, &self.delta);
        let p0 = a + b * d + g * d * d;
        let p1 = b + k(2) * g * d;
        (p0, p1, g.clone())
    }

    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine { x, y } => {
                y * y * (x - &self.delta) == &self.alpha + &self.beta * x + &self.gamma * x * x
            }
        }
    }

    fn check(&self, p: &Point) -> Result<(), GeometryError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(GeometryError::NotOnCurve(p.to_string()))
        }
    }

    /// `Y^2 = X^3 + P1 X^2 + P0 P2 X`.
    pub fn short_model(&self) -> Result<Curve, GeometryError> {
        let (p0, p1, p2) = self.p_coeffs();
        Ok(Curve::short(p1, p0 * p2)?)
    }

    /// Image of a point in the short model. `Point::Infinity` is `(0:1:0)`.
    pub fn to_short(&self, p: &Point) -> Result<Point, GeometryError> {
        self.check(p)?;
        match p {
            Point::Infinity => Ok(Point::Infinity),
            Point::Affine { x, y } => {
                let s = x - &self.delta;
                if s.is_zero() {
                    return Err(GeometryError::VerticalAsymptote);
                }
                let (p0, _, _) = self.p_coeffs();
                Ok(Point::affine(&p0 / &s, &p0 * y / s))
            }
        }
    }

    /// Inverse of [`CurveABGD::to_short`]. The 2-torsion point `(0, 0)` has
    /// no affine preimage and yields `None`.
    pub fn from_short(&self, p: &Point) -> Option<Point> {
        match p {
            Point::Infinity => Some(Point::Infinity),
            Point::Affine { x, y } => {
                if x.is_zero() {
                    return None;
                }
                let (p0, _, _) = self.p_coeffs();
                Some(Point::affine(&self.delta + p0 / x, y / x))
            }
        }
    }
}

/// The conjugate `T + P` of an affine point, computed on the cubic itself.
pub fn conjugate_point(c: &CurveABGD, p: &Point) -> Result<Point, GeometryError> {
    let (x, y) = match p {
        Point::Infinity => {
            return Err(GeometryError::DegenerateParameters(
                "the conjugate of the neutral element is the point (1:0:0)".into(),
            ))
        }
        Point::Affine { x, y } => (x, y),
    };
    let s = x - &c.delta;
    if s.is_zero() {
        return Err(GeometryError::VerticalAsymptote);
    }
    c.check(p)?;
    let xbar = (&c.alpha + &c.delta * (x * &c.gamma + &c.beta)) / (&c.gamma * s);
    Ok(Point::affine(xbar, -y))
}

/// Checks the tangent identity: if `A`, its conjugate and `B` lie on a line,
/// then `-2A` equals the conjugate of `B`. Both sides are compared in the
/// short model, where conjugation is translation by `(0, 0)`.
pub fn tangent_identity_check(c: &CurveABGD, a: &Point, b: &Point) -> Result<bool, GeometryError> {
    c.check(a)?;
    c.check(b)?;
    let abar = conjugate_point(c, a)?;
    let (xa, ya) = (a.x().expect("affine"), a.y().expect("affine"));
    let (xr, yr) = (abar.x().expect("affine"), abar.y().expect("affine"));
    let collinear = match b {
        Point::Infinity => xa == xr,
        Point::Affine { x: xb, y: yb } => {
            let det = (xr - xa) * (yb - ya) - (yr - ya) * (xb - xa);
            det.is_zero()
        }
    };
    if !collinear {
        return Err(GeometryError::NotCollinear);
    }
    let e = c.short_model()?;
    let a_s = c.to_short(a)?;
    let b_s = c.to_short(b)?;
    let t = Point::affine(QFElem::zero(), QFElem::zero());
    let lhs = e.mul(-2, &a_s);
    let rhs = e.add(&t, &b_s);
    Ok(lhs == rhs)
}

// ---------------------------------------------------------------------------
// The projective map onto the cubic

/// A 3x3 matrix acting on homogeneous coordinates `(X : Y : Z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat3(pub [[QFElem; 3]; 3]);

impl Mat3 {
    pub fn identity() -> Mat3 {
        let o = QFElem::one;
        let z = QFElem::zero;
        Mat3([[o(), z(), z()], [z(), o(), z()], [z(), z(), o()]])
    }

    pub fn apply(&self, v: &[QFElem; 3]) -> [QFElem; 3] {
        let m = &self.0;
        std::array::from_fn(|i| &m[i][0] * &v[0] + &m[i][1] * &v[1] + &m[i][2] * &v[2])
    }

    pub fn mul(&self, o: &Mat3) -> Mat3 {
        let (a, b) = (&self.0, &o.0);
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j] + &a[i][2] * &b[2][j])
        }))
    }

    pub fn det(&self) -> QFElem {
        let m = &self.0;
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    /// Inverse by the adjugate formula.
    pub fn inverse(&self) -> Option<Mat3> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        let m = &self.0;
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| {
            &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
        };
        let adj = [
            [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
            [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
            [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
        ];
        Some(Mat3(adj.map(|row| row.map(|e| e / &det))))
    }
}

/// A point of the projective plane.
#[derive(Debug, Clone)]
pub struct ProjPoint(pub [QFElem; 3]);

impl ProjPoint {
    pub fn from_point(p: &Point) -> ProjPoint {
        match p {
            Point::Infinity => ProjPoint([QFElem::zero(), QFElem::one(), QFElem::zero()]),
            Point::Affine { x, y } => ProjPoint([x.clone(), y.clone(), QFElem::one()]),
        }
    }

    /// Dehomogenises; `(0:1:0)` becomes `Point::Infinity` and the other points
    /// at infinity give `None`.
    pub fn to_point(&self) -> Option<Point> {
        let [x, y, z] = &self.0;
        if z.is_zero() {
            if x.is_zero() && !y.is_zero() {
                return Some(Point::Infinity);
            }
            return None;
        }
        Some(Point::affine(x / z, y / z))
    }

    pub fn same_as(&self, o: &ProjPoint) -> bool {
        let (a, b) = (&self.0, &o.0);
        (0..3).all(|i| (0..3).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
    }
}

/// The projective map carrying `y^2 = x^3 + a x^2 + b x` with a chosen point
/// `A0 = (x0, y0)` onto a cubic `y^2 (x - delta) = ...` with `A0 -> (1, 1)`
/// and its conjugate `-> (-1, -1)`.
///
/// It swaps `X` and `Z`, rescales `Y` by `x0 / y0`, then shifts and stretches
/// the new `x` axis with `lambda = 2 / (1 - x0^2 / b)`, `mu = 1 - lambda`:
///
/// ```text
/// [ mu   0        lambda*x0 ]
/// [ 0    x0/y0    0         ]
/// [ 1    0        0         ]
/// ```
#[derive(Debug, Clone)]
pub struct PhiMap {
    pub matrix: Mat3,
    pub inverse: Mat3,
    pub source: Curve,
    pub target: CurveABGD,
}

impl PhiMap {
    pub fn new(a: &QFElem, b: &QFElem, x0: &QFElem, y0: &QFElem) -> Result<PhiMap, GeometryError> {
        let source = Curve::short(a.clone(), b.clone())?;
        source.point(x0.clone(), y0.clone())?;
        if y0.is_zero() {
            return Err(GeometryError::DegenerateParameters("y0 = 0".into()));
        }
        let denom = b - x0 * x0;
        if denom.is_zero() {
            return Err(GeometryError::DegenerateParameters(
                "x0^2 = b: the point and its conjugate share the line through T".into(),
            ));
        }
        let lambda = k(2) * b / denom;
        let mu = k(1) - &lambda;
        let z = QFElem::zero;
        let matrix = Mat3([
            [mu.clone(), z(), &lambda * x0],
            [z(), x0 / y0, z()],
            [k(1), z(), z()],
        ]);
        let inverse = matrix.inverse().expect("determinant is -lambda x0^2 / y0");
        let y02 = y0 * y0;
        let at = x0 * x0 * x0 / &y02;
        let bt = a * x0 * x0 / &y02;
        let gt = b * x0 / &y02;
        let target = CurveABGD::new(
            &lambda * &at - &bt * &mu + &gt * &mu * &mu / &lambda,
            &bt - k(2) * &mu * &gt / &lambda,
            gt / &lambda,
            mu,
        )?;
        Ok(PhiMap {
            matrix,
            inverse,
            source,
            target,
        })
    }

    pub fn forward(&self, p: &Point) -> ProjPoint {
        ProjPoint(self.matrix.apply(&ProjPoint::from_point(p).0))
    }

    pub fn backward(&self, p: &ProjPoint) -> Option<Point> {
        ProjPoint(self.inverse.apply(&p.0)).to_point()
    }
}

// ---------------------------------------------------------------------------
// The (u, v) normal form

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UVParams {
    pub u: QFElem,
    pub v: QFElem,
}

impl UVParams {
    pub fn new(u: QFElem, v: QFElem) -> Result<UVParams, GeometryError> {
        if u.is_zero() || u.is_one() || (&u + k(1)).is_zero() {
            return Err(GeometryError::DegenerateParameters(format!(
                "u = {u} is excluded"
            )));
        }
        if (&u + &v).is_zero() {
            return Err(GeometryError::DegenerateParameters("u + v = 0".into()));
        }
        Ok(UVParams { u, v })
    }

    pub fn gamma(&self) -> QFElem {
        (&self.u * &self.u - k(1)) / (&self.u + &self.v)
    }
}

/// `alpha = -u`, `beta = 1`, `gamma = (u^2 - 1)/(u + v)`, `delta = u - gamma`,
/// so that `(1, 1)`, `(-1, -1)`, `(v, u)` and `(u, u)` lie on the cubic.
pub fn abgd_from_uv(p: &UVParams) -> Result<CurveABGD, GeometryError> {
    let gamma = p.gamma();
    let delta = &p.u - &gamma;
    CurveABGD::new(-&p.u, k(1), gamma, delta)
}

/// `a = -2 + 3u^2 + 2u^3 v + v^2`, `b = (u^2 - 1)^3 (v^2 - 1)`.
pub fn ab_from_uv(p: &UVParams) -> Result<(QFElem, QFElem), GeometryError> {
    let (u, v) = (&p.u, &p.v);
    let u2 = u * u;
    let a = k(-2) + k(3) * &u2 + k(2) * &u2 * u * v + v * v;
    let w = &u2 - k(1);
    let b = &w * &w * &w * (v * v - k(1));
    if (&b * &b * (&a * &a - k(4) * &b)).is_zero() {
        return Err(GeometryError::SingularImage);
    }
    Ok((a, b))
}

/// Maps a point of the `(u, v)` cubic to `y^2 = x^3 + a x^2 + b x` with
/// `(a, b)` from [`ab_from_uv`]. This is the short model of
/// [`abgd_from_uv`] rescaled by `u + v`.
pub fn uv_point_to_ab(p: &UVParams, pt: &Point) -> Result<Point, GeometryError> {
    let c = abgd_from_uv(p)?;
    let lam = &p.u + &p.v;
    Ok(match c.to_short(pt)? {
        Point::Infinity => Point::Infinity,
        Point::Affine { x, y } => Point::affine(x * &lam * &lam, y * &lam * &lam * &lam),
    })
}

/// One row of the torsion table of the `Z/14` normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalFormRow {
    pub order: u32,
    pub x: QFElem,
    pub y: QFElem,
}

/// The curve `y^2 = a/x + b + c x` with `a = (u^2-1)^2 (v^2-1)`,
/// `b = 3u^2 + 2u^3 v + v^2 - 2`, `c = u^2 - 1`, and its Weierstrass image
/// `y^2 = x^3 + b x^2 + a c x` under `(x, y) -> (a/x, a y/x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalFormZ14 {
    pub a: QFElem,
    pub b: QFElem,
    pub c: QFElem,
    pub weierstrass: Curve,
    pub rows: Vec<NormalFormRow>,
}

impl NormalFormZ14 {
    pub fn contains(&self, x: &QFElem, y: &QFElem) -> bool {
        !x.is_zero() && y * y * x == &self.a + &self.b * x + &self.c * x * x
    }

    /// `(x, y) -> (a/x, a y/x)`.
    pub fn to_weierstrass(&self, x: &QFElem, y: &QFElem) -> Result<Point, GeometryError> {
        if x.is_zero() {
            return Err(GeometryError::VerticalAsymptote);
        }
        let p = Point::affine(&self.a / x, &self.a * y / x);
        self.weierstrass.check(&p)?;
        Ok(p)
    }

    /// Both points `(x, y)` and `(x, -y)` of every row, paired with the
    /// expected order.
    pub fn torsion_points(&self) -> Result<Vec<(u32, Point)>, GeometryError> {
        let mut out = Vec::with_capacity(2 * self.rows.len());
        for row in &self.rows {
            for y in [row.y.clone(), -&row.y] {
                out.push((row.order, self.to_weierstrass(&row.x, &y)?));
            }
        }
        Ok(out)
    }
}

pub fn normal_form_z14(p: &UVParams) -> Result<NormalFormZ14, GeometryError> {
    let (u, v) = (&p.u, &p.v);
    let one = k(1);
    let c = u * u - &one;
    let a = &c * &c * (v * v - &one);
    let b = k(3) * u * u + k(2) * u * u * u * v + v * v - k(2);
    if a.is_zero() {
        return Err(GeometryError::DegenerateParameters("v = +-1".into()));
    }
    if (u - &one).is_zero() || (u + &one).is_zero() {
        return Err(GeometryError::DegenerateParameters("u = +-1".into()));
    }
    let weierstrass = Curve::short(b.clone(), &a * &c).map_err(|e| match e {
        CurveError::Singular => GeometryError::SingularImage,
        other => other.into(),
    })?;
    let upv = u + v;
    let row = |order, x: QFElem, y: QFElem| NormalFormRow { order, x, y };
    let rows = vec![
        row(14, c.clone(), u * &upv),
        row(7, v * v - &one, u * &upv),
        row(14, -((u - &one) * (v - &one)), upv.clone()),
        row(7, -((u + &one) * (v + &one)), upv.clone()),
        row(
            14,
            -((u + &one) * (u + &one) * (v - &one)) / (u - &one),
            k(3) * u - v,
        ),
        row(
            7,
            -((u - &one) * (u - &one) * (v + &one)) / (u + &one),
            k(3) * u - v,
        ),
    ];
    let nf = NormalFormZ14 {
        a,
        b,
        c,
        weierstrass,
        rows,
    };
    for r in &nf.rows {
        if !nf.contains(&r.x, &r.y) {
            return Err(GeometryError::NotOnCurve(format!("({}, {})", r.x, r.y)));
        }
    }
    Ok(nf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::PointOrder;
    use crate::field::Rat;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> QFElem {
        QFElem::rational(Rat::frac(p, d))
    }

    fn pt(x: QFElem, y: QFElem) -> Point {
        Point::affine(x, y)
    }

    #[test]
    fn abgd_for_u2_v3() {
        let p = UVParams::new(q(2, 1), q(3, 1)).unwrap();
        let c = abgd_from_uv(&p).unwrap();
        assert_eq!(c.alpha, q(-2, 1));
        assert_eq!(c.beta, q(1, 1));
        assert_eq!(c.gamma, q(3, 5));
        assert_eq!(c.delta, q(7, 5));
        for p in [
            pt(q(1, 1), q(1, 1)),
            pt(q(-1, 1), q(-1, 1)),
            pt(q(3, 1), q(2, 1)),
            pt(q(2, 1), q(2, 1)),
        ] {
            assert!(c.contains(&p), "{p}");
        }
    }

    #[test]
    fn excluded_u() {
        for u in [-1, 0, 1] {
            assert!(matches!(
                UVParams::new(q(u, 1), q(3, 1)),
                Err(GeometryError::DegenerateParameters(_))
            ));
        }
        assert!(UVParams::new(q(2, 1), q(-2, 1)).is_err());
    }

    #[test]
    fn conjugate_of_a_is_minus_one_minus_one() {
        let p = UVParams::new(q(5, 3), q(-7, 2)).unwrap();
        let c = abgd_from_uv(&p).unwrap();
        let a = pt(q(1, 1), q(1, 1));
        let abar = conjugate_point(&c, &a).unwrap();
        assert_eq!(abar, pt(q(-1, 1), q(-1, 1)));
        assert_eq!(conjugate_point(&c, &abar).unwrap(), a);
    }

    #[test]
    fn singular_image_when_v_equals_one() {
        let p = UVParams::new(q(3, 1), q(1, 1)).unwrap();
        assert_eq!(ab_from_uv(&p), Err(GeometryError::SingularImage));
    }

    #[test]
    fn short_model_scaled_by_u_plus_v_is_ab() {
        let p = UVParams::new(q(2, 1), q(3, 1)).unwrap();
        let c = abgd_from_uv(&p).unwrap();
        let (p0, p1, p2) = c.p_coeffs();
        let (a, b) = ab_from_uv(&p).unwrap();
        let l = q(5, 1);
        assert_eq!(&p1 * &l * &l, a);
        assert_eq!(p0 * p2 * l.pow(4), b);
    }

    #[test]
    fn tangent_identity_two_torsion_edge() {
        // y^2 x = 4 + 5x + x^2 with A = (2, 3): conj(A) = (2, -3) = -A.
        let c = CurveABGD::new(q(4, 1), q(5, 1), q(1, 1), q(0, 1)).unwrap();
        let a = pt(q(2, 1), q(3, 1));
        assert_eq!(conjugate_point(&c, &a).unwrap(), pt(q(2, 1), q(-3, 1)));
        assert!(tangent_identity_check(&c, &a, &Point::Infinity).unwrap());
    }

    #[test]
    fn tangent_identity_rejects_non_collinear() {
        let p = UVParams::new(q(2, 1), q(3, 1)).unwrap();
        let c = abgd_from_uv(&p).unwrap();
        let a = pt(q(1, 1), q(1, 1));
        assert!(tangent_identity_check(&c, &a, &pt(q(2, 1), q(2, 1))).unwrap());
        assert_eq!(
            tangent_identity_check(&c, &a, &pt(q(3, 1), q(2, 1))),
            Err(GeometryError::NotCollinear)
        );
    }

    #[test]
    fn vertical_asymptote() {
        let p = UVParams::new(q(2, 1), q(3, 1)).unwrap();
        let c = abgd_from_uv(&p).unwrap();
        let bad = pt(c.delta.clone(), q(1, 1));
        assert_eq!(
            conjugate_point(&c, &bad),
            Err(GeometryError::VerticalAsymptote)
        );
    }

    #[test]
    fn phi_sends_a0_to_one_one() {
        // y^2 = x^3 + 3x^2 - 6x has (-2, 4)
        let (a, b) = (q(3, 1), q(-6, 1));
        let phi = PhiMap::new(&a, &b, &q(-2, 1), &q(4, 1)).unwrap();
        assert!(phi.matrix.mul(&phi.inverse) == Mat3::identity());
        let img = phi.forward(&pt(q(-2, 1), q(4, 1))).to_point().unwrap();
        assert_eq!(img, pt(q(1, 1), q(1, 1)));
        // the conjugate T + A0 = (b/x0, -b y0 / x0^2)
        let conj = pt(q(3, 1), q(6, 1));
        assert!(phi.source.contains(&conj));
        assert_eq!(
            phi.forward(&conj).to_point().unwrap(),
            pt(q(-1, 1), q(-1, 1))
        );
        assert_eq!(phi.target.beta, q(1, 1));
        let t = phi.forward(&pt(q(0, 1), q(0, 1)));
        assert!(t.same_as(&ProjPoint([q(1, 1), q(0, 1), q(0, 1)])));
        assert_eq!(
            phi.forward(&Point::Infinity).to_point(),
            Some(Point::Infinity)
        );
    }

    #[test]
    fn normal_form_rows_need_the_z14_relation() {
        // every (u, v) carries the six table points, but only the roots v of
        // the Z/14 quadratic give them orders 14 and 7
        let p = UVParams::new(q(2, 1), q(3, 1)).unwrap();
        let nf = normal_form_z14(&p).unwrap();
        let (_, g) = &nf.torsion_points().unwrap()[0];
        assert_ne!(
            nf.weierstrass.point_order(g, 24).unwrap(),
            PointOrder::Finite(14)
        );
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-40i64..40, 1i64..20).prop_map(|(p, q)| Rat::frac(p, q))
    }

    proptest! {
        #[test]
        fn uv_points_map_onto_ab_curve(u in small_rat(), v in small_rat()) {
            let params = UVParams::new(QFElem::rational(u.clone()), QFElem::rational(v.clone()));
            prop_assume!(params.is_ok());
            let params = params.unwrap();
            let ab = ab_from_uv(&params);
            prop_assume!(ab.is_ok());
            let (a, b) = ab.unwrap();
            let c = abgd_from_uv(&params);
            prop_assume!(c.is_ok());
            let c = c.unwrap();
            let e = Curve::short(a, b).unwrap();
            let (uq, vq) = (params.u.clone(), params.v.clone());
            let pts = [
                pt(q(1, 1), q(1, 1)),
                pt(q(-1, 1), q(-1, 1)),
                pt(vq.clone(), uq.clone()),
                pt(uq.clone(), uq.clone()),
            ];
            for p in &pts {
                prop_assert!(c.contains(p));
                let img = uv_point_to_ab(&params, p).unwrap();
                prop_assert!(e.contains(&img));
            }
            // conjugation on the cubic is translation by T on the image
            let t = pt(q(0, 1), q(0, 1));
            let abar = conjugate_point(&c, &pts[0]).unwrap();
            prop_assert_eq!(
                uv_point_to_ab(&params, &abar).unwrap(),
                e.add(&t, &uv_point_to_ab(&params, &pts[0]).unwrap())
            );
        }

        #[test]
        fn conjugation_is_an_involution(u in small_rat(), v in small_rat()) {
            let params = UVParams::new(QFElem::rational(u), QFElem::rational(v));
            prop_assume!(params.is_ok());
            let c = abgd_from_uv(&params.unwrap());
            prop_assume!(c.is_ok());
            let c = c.unwrap();
            for p in [pt(q(1, 1), q(1, 1)), pt(q(-1, 1), q(-1, 1))] {
                let pb = conjugate_point(&c, &p).unwrap();
                prop_assert_eq!(pb.y().unwrap(), &-p.y().unwrap());
                prop_assert_eq!(conjugate_point(&c, &pb).unwrap(), p);
            }
        }

        #[test]
        fn tangent_identity_on_random_uv(u in small_rat(), v in small_rat()) {
            let params = UVParams::new(QFElem::rational(u), QFElem::rational(v));
            prop_assume!(params.is_ok());
            let params = params.unwrap();
            let c = abgd_from_uv(&params);
            prop_assume!(c.is_ok());
            let c = c.unwrap();
            let b = pt(params.u.clone(), params.u.clone());
            prop_assert!(tangent_identity_check(&c, &pt(q(1, 1), q(1, 1)), &b).unwrap());
        }
    }
}
