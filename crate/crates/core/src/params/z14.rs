use num_bigint::BigInt;
use num_traits::One;

use crate::curve::{nagell_lutz_torsion, Curve, Point, PointOrder};
use crate::field::{squarefree_part, FieldDesc, QFElem, Rat};
use crate::geometry::{normal_form_z14, UVParams};
use crate::record::CurveRecord;

use super::{excluded_unit, geometry_err, make_record, nonsingular, Group, ParamError, Sign};

fn q(n: i64) -> QFElem {
    QFElem::from(n)
}

fn qr(n: i64) -> Rat {
    Rat::from(n)
}

/// `1 - 2u + u^2 + 4u^3`.
pub fn z14_radicand(u: &Rat) -> Rat {
    qr(1) - qr(2) * u + u * u + qr(4) * u.pow(3)
}

/// The field `Q(sqrt(d))` attached to `u`, with `z = sqrt(1 - 2u + u^2 + 4u^3)`
/// written in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Z14Field {
    pub d: BigInt,
    pub field: FieldDesc,
    pub z: QFElem,
    /// The radicand is a rational square, so everything lives over Q. No
    /// curve over Q has a point of order 14, so such parameters cannot give
    /// a genuine Z/14 curve.
    pub degenerate: bool,
}

pub fn z14_field(u: &Rat) -> Result<Z14Field, ParamError> {
    excluded_unit("u", u)?;
    let rad = z14_radicand(u);
    if rad.is_zero() {
        return Err(ParamError::DegenerateField(rad.to_string()));
    }
    let (d, _) = squarefree_part(&rad)?;
    let z = QFElem::with_radicand(qr(0), qr(1), &rad)?;
    let degenerate = d.is_one();
    Ok(Z14Field {
        field: z.field().clone(),
        d,
        z,
        degenerate,
    })
}

/// `v = u(1 - 4u - u^2 +- 2z)/(u - 1)^2`.
pub fn z14_v(u: &Rat, sign: Sign) -> Result<QFElem, ParamError> {
    let f = z14_field(u)?;
    Ok(v_from_z(u, &f.z.scale(&qr(sign.value()))))
}

fn v_from_z(u: &Rat, z: &QFElem) -> QFElem {
    let uq = QFElem::from(u.clone());
    let num = &uq * (q(1) - q(4) * &uq - &uq * &uq + q(2) * z);
    num.scale(&(u - qr(1)).pow(-2))
}

/// The simplified coefficients
/// `a = -2(1 - 4u + 2u^2 + 10u^3 - 18u^4 - 10u^6 + 2u^7 + u^8) + 4u^2(1 - 4u - 2u^3 + u^4) z`,
/// `b = (1-u)^7 (1+u)^3 ((1+u)(1 - 5u + 6u^2 + 6u^3 - 23u^4 - u^5) - 4u^2(1 - 4u - u^2) z)`,
/// where `z` already carries the chosen sign.
///
/// They equal `(a, b)` of the `(u, v)` normal form rescaled by `(u - 1)^2`,
/// that is `a_uv (u-1)^4` and `b_uv (u-1)^8`.
pub fn z14_closed_ab(u: &Rat, z: &QFElem) -> (QFElem, QFElem) {
    let p = |e: i32| u.pow(e);
    let a0 = qr(-2)
        * (qr(1) - qr(4) * u + qr(2) * p(2) + qr(10) * p(3) - qr(18) * p(4) - qr(10) * p(6)
            + qr(2) * p(7)
            + p(8));
    let a1 = qr(4) * p(2) * (qr(1) - qr(4) * u - qr(2) * p(3) + p(4));
    let a = QFElem::from(a0) + z.scale(&a1);
    let pre = (qr(1) - u).pow(7) * (qr(1) + u).pow(3);
    let b0 = (qr(1) + u) * (qr(1) - qr(5) * u + qr(6) * p(2) + qr(6) * p(3) - qr(23) * p(4) - p(5));
    let b1 = qr(-4) * p(2) * (qr(1) - qr(4) * u - p(2));
    let b = (QFElem::from(b0) + z.scale(&b1)).scale(&pre);
    (a, b)
}

/// The Z/14 curve `y^2 = x^3 + a x^2 + b x` over `Q(sqrt(d))` with `(a, b)`
/// from [`z14_closed_ab`]. The generator is the order-14 point
/// `(u^2 - 1, u(u + v))` of the normal form.
pub fn param_z14(u: &Rat, sign: Sign) -> Result<CurveRecord, ParamError> {
    let f = z14_field(u)?;
    let z = f.z.scale(&qr(sign.value()));
    let v = v_from_z(u, &z);
    let (a, b) = z14_closed_ab(u, &z);
    let curve = nonsingular(Curve::short_over(f.field.clone(), a.clone(), b.clone()))?;

    let uv = UVParams::new(u.clone().into(), v).map_err(geometry_err)?;
    let nf = normal_form_z14(&uv).map_err(geometry_err)?;
    let lam = QFElem::from((u - qr(1)).pow(2));
    let l2 = &lam * &lam;
    if &nf.b * &l2 != a || &nf.a * &nf.c * &l2 * &l2 != b {
        return Err(ParamError::GeneratorNotFound(format!(
            "normal form does not rescale to the closed form at u = {u}"
        )));
    }
    let row = &nf.rows[0];
    let gen = match nf.to_weierstrass(&row.x, &row.y).map_err(geometry_err)? {
        Point::Affine { x, y } => Point::affine(x * &l2, y * &l2 * &lam),
        Point::Infinity => unreachable!("to_weierstrass returns affine points"),
    };
    let mut params = vec![("u", u.to_string()), ("sign", sign.to_string())];
    params.push(("d", f.d.to_string()));
    let mut rec = make_record(format!("z14-u{u}-{sign}"), curve, Group::Z14, gen, &params)?;
    if f.degenerate {
        rec.annotations
            .push("radicand is a rational square; the curve is defined over Q".into());
    }
    Ok(rec)
}

/// The six parameters `u_1, ..., u_6` giving essentially the same curve:
/// `u_1 = u_0`, `u_2 = (1 - u_0)/(1 + u_0)`,
/// `u_{3,4} = (u_0(u_0 + 1) +- z)/(u_0 - 1)^2`,
/// `u_{5,6} = ((1 - u_0) +- z)/(2u_0^2)`.
///
/// For `d = -7` the curve `Γ0` has more torsion over `Q(sqrt(d))` and the
/// orbit is larger, so that field is rejected.
pub fn z14_u_orbit(u0: &Rat) -> Result<[QFElem; 6], ParamError> {
    let f = z14_field(u0)?;
    if f.d == BigInt::from(-7) {
        return Err(ParamError::ExcludedParameter(format!(
            "u = {u0} lies over Q(sqrt(-7)), where the orbit is not six points"
        )));
    }
    let z = &f.z;
    let u = QFElem::from(u0.clone());
    let u2 = (q(1) - &u) / (q(1) + &u);
    let k34 = (u0 - qr(1)).pow(-2);
    let base34 = &u * (&u + q(1));
    let k56 = (qr(2) * u0 * u0).pow(-1);
    let base56 = q(1) - &u;
    Ok([
        u.clone(),
        u2,
        (&base34 + z).scale(&k34),
        (&base34 - z).scale(&k34),
        (&base56 + z).scale(&k56),
        (&base56 - z).scale(&k56),
    ])
}

/// `u_0(u_0 - 1)(u_0^2 + u_0 + 2)/((u_0 + 1)(4u_0^2 - 3u_0 + 1))`.
pub fn z14_u_double(u0: &Rat) -> Result<Rat, ParamError> {
    excluded_unit("u", u0)?;
    let num = u0 * (u0 - qr(1)) * (u0 * u0 + u0 + qr(2));
    let den = (u0 + qr(1)) * (qr(4) * u0 * u0 - qr(3) * u0 + qr(1));
    num.checked_div(&den)
        .map_err(|_| ParamError::ExcludedParameter(format!("u = {u0}: zero denominator")))
}

/// `Γ0: y^2 = 4x^3 + x^2 - 2x + 1`, carried as `Y^2 = X^3 + X^2 - 8X + 16`
/// with `X = 4x`, `Y = 4y`.
#[derive(Debug, Clone)]
pub struct Gamma0 {
    pub model: Curve,
    /// The rational torsion points of the model, starting with `O`.
    pub torsion: Vec<Point>,
}

impl Gamma0 {
    pub fn to_model(&self, x: &QFElem, y: &QFElem) -> Point {
        Point::affine(x * q(4), y * q(4))
    }

    /// `(X, Y) -> (X/4, Y/4)`; `None` at infinity.
    pub fn from_model(&self, p: &Point) -> Option<(QFElem, QFElem)> {
        match p {
            Point::Infinity => None,
            Point::Affine { x, y } => {
                let k = Rat::frac(1, 4);
                Some((x.scale(&k), y.scale(&k)))
            }
        }
    }

    /// `x`-coordinates of `(u_0, z) + T` for each torsion point `T`, in the
    /// original coordinates of `Γ0`.
    pub fn translates(&self, u0: &Rat) -> Result<Vec<QFElem>, ParamError> {
        let f = z14_field(u0)?;
        let p = self.to_model(&u0.clone().into(), &f.z);
        self.model.check(&p)?;
        Ok(self
            .torsion
            .iter()
            .filter_map(|t| self.from_model(&self.model.add(&p, t)).map(|(x, _)| x))
            .collect())
    }
}

pub fn gamma0_curve() -> Gamma0 {
    let model = Curve::from_rats([qr(0), qr(1), qr(0), qr(-8), qr(16)]).expect("Γ0 is nonsingular");
    let torsion = nagell_lutz_torsion(&model).expect("small discriminant");
    Gamma0 { model, torsion }
}

/// `w = (-(u + 1) +- z)/2`, a root of `w^2 + wu + w = u^3 - u`.
pub fn rabarison_w(u: &Rat, sign: Sign) -> Result<QFElem, ParamError> {
    let f = z14_field(u)?;
    let z = f.z.scale(&qr(sign.value()));
    Ok((z - QFElem::from(u + qr(1))).scale(&Rat::frac(1, 2)))
}

/// `v = -u(u^2 + 2u - 3 - 4w)/(u - 1)^2`.
pub fn rabarison_v_from_w(u: &Rat, w: &QFElem) -> QFElem {
    let uq = QFElem::from(u.clone());
    let inner = &uq * &uq + q(2) * &uq - q(3) - q(4) * w;
    (-(uq * inner)).scale(&(u - qr(1)).pow(-2))
}

/// `w = (u(u^2 + 2u - 3) + v(u - 1)^2)/(4u)`.
pub fn rabarison_w_from_v(u: &Rat, v: &QFElem) -> QFElem {
    let c = u * (u * u + qr(2) * u - qr(3));
    (QFElem::from(c) + v.scale(&(u - qr(1)).pow(2))).scale(&(qr(4) * u).pow(-1))
}

/// Rabarison's curve `y^2 + a~ xy + b~ y = x^3 + b~ x^2` on which `(0, 0)`
/// has order 14. It is 2-isogenous, not isomorphic, to the curve of
/// [`param_z14`] at the same `u`.
#[derive(Debug, Clone)]
pub struct RabarisonZ14 {
    pub u: Rat,
    pub w: QFElem,
    pub a_tilde: QFElem,
    pub b_tilde: QFElem,
    pub curve: Curve,
}

impl RabarisonZ14 {
    pub fn generator(&self) -> Point {
        Point::affine(QFElem::zero(), QFElem::zero())
    }
}

pub fn rabarison_z14(u: &Rat, w_sign: Sign) -> Result<RabarisonZ14, ParamError> {
    let f = z14_field(u)?;
    let den = (u + qr(1)) * (u.pow(3) - qr(2) * u * u - u + qr(1));
    if den.is_zero() {
        return Err(ParamError::DegenerateChain(format!(
            "(u+1)(u^3 - 2u^2 - u + 1) = 0 at u = {u}"
        )));
    }
    let w = rabarison_w(u, w_sign)?;
    let uq = QFElem::from(u.clone());
    let p = |e: u32| uq.pow(e);
    let inv = den.pow(-1);
    let a_tilde = (p(4) - p(3) * &w + p(2) * (q(2) * &w - q(4)) - &uq * &w + q(1)).scale(&inv);
    let b_tilde = (p(5) - p(4) - q(2) * p(3) * &w + p(2) + &uq * (q(2) * &w - q(1)) - &w)
        .scale(&(u * (qr(1) - u) * inv.pow(2)));
    let zero = QFElem::zero();
    let curve = Curve::over(
        f.field.clone(),
        [
            a_tilde.clone(),
            b_tilde.clone(),
            b_tilde.clone(),
            zero.clone(),
            zero,
        ],
    )
    .map_err(|e| match e {
        crate::curve::CurveError::Singular => {
            ParamError::DegenerateChain("Rabarison's curve is singular".into())
        }
        other => other.into(),
    })?;
    let out = RabarisonZ14 {
        u: u.clone(),
        w,
        a_tilde,
        b_tilde,
        curve,
    };
    match out.curve.point_order(&out.generator(), 24)? {
        PointOrder::Finite(14) => Ok(out),
        other => Err(ParamError::GeneratorNotFound(format!(
            "(0, 0) has order {other} on Rabarison's curve at u = {u}"
        ))),
    }
}
