use crate::curve::{Curve, Point};
use crate::field::{QFElem, Rat};
use crate::geometry::{ab_from_uv, uv_point_to_ab, UVParams};
use crate::record::CurveRecord;

use super::{excluded_unit, geometry_err, make_record, nonsingular, Group, ParamError};

fn q(n: i64) -> Rat {
    Rat::from(n)
}

/// `a1 = -2(1 + 2u - 5u^2 - 5u^4 - 2u^5 + u^6)`, `b1 = (u^2 - 1)^5 (u^2 - 4u - 1)`.
pub fn z10_coeffs(u: &Rat) -> (Rat, Rat) {
    let p = |e: i32| u.pow(e);
    let a1 = q(-2) * (q(1) + q(2) * u - q(5) * p(2) - q(5) * p(4) - q(2) * p(5) + p(6));
    let b1 = (p(2) - q(1)).pow(5) * (p(2) - q(4) * u - q(1));
    (a1, b1)
}

/// The curve `y^2 = x^3 + a1 x^2 + b1 x` with a point of order 10.
///
/// The generator is the image of `(1, 1)` on the `(u, v)` cubic with
/// `v = (3u - u^2)/(u + 1)`, rescaled by `u + 1`.
pub fn param_z10(u: &Rat) -> Result<CurveRecord, ParamError> {
    excluded_unit("u", u)?;
    let (a1, b1) = z10_coeffs(u);
    let curve = nonsingular(Curve::short(a1.clone().into(), b1.clone().into()))?;

    let v = (q(3) * u - u * u) / (u + q(1));
    let uv = UVParams::new(u.clone().into(), v.into()).map_err(geometry_err)?;
    let (a, b) = ab_from_uv(&uv).map_err(geometry_err)?;
    let lam: QFElem = (u + q(1)).into();
    let l2 = &lam * &lam;
    if a * &l2 != QFElem::from(a1) || b * &l2 * &l2 != QFElem::from(b1) {
        return Err(ParamError::GeneratorNotFound(format!(
            "the (u, v) model does not rescale to the Z/10 curve at u = {u}"
        )));
    }
    let one = QFElem::one();
    let gen = match uv_point_to_ab(&uv, &Point::affine(one.clone(), one)).map_err(geometry_err)? {
        Point::Affine { x, y } => Point::affine(x * &l2, y * &l2 * &lam),
        Point::Infinity => {
            return Err(ParamError::GeneratorNotFound(format!("u = {u}")));
        }
    };
    make_record(
        format!("z10-u{u}"),
        curve,
        Group::Z10,
        gen,
        &[("u", u.to_string())],
    )
}

/// Kubert's form `y^2 + (1-c)xy - by = x^3 - bx^2` and the short model
/// obtained from it by completing the square and moving a 2-torsion point to
/// the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KubertForm {
    pub tau: Rat,
    pub b: Rat,
    pub c: Rat,
    pub long: Curve,
    pub a_tilde: Rat,
    pub b_tilde: Rat,
}

impl KubertForm {
    pub fn one_minus_c(&self) -> Rat {
        Rat::from(1) - &self.c
    }

    pub fn short(&self) -> Result<Curve, ParamError> {
        nonsingular(Curve::short(
            self.a_tilde.clone().into(),
            self.b_tilde.clone().into(),
        ))
    }
}

pub(crate) fn kubert_long(b: &Rat, c: &Rat) -> Result<Curve, ParamError> {
    let zero = Rat::from(0);
    Curve::from_rats([Rat::from(1) - c, -b, -b, zero.clone(), zero]).map_err(|e| match e {
        crate::curve::CurveError::Singular => {
            ParamError::DegenerateChain("the Kubert curve is singular".into())
        }
        other => other.into(),
    })
}

/// `a~ = -(2p^2 - 2pq + q^2)(4p^4 - 12p^3 q + 6p^2 q^2 + 2pq^3 - q^4)`,
/// `b~ = 16 p^5 (p - q)^5 (p^2 - 3pq + q^2)`.
pub fn kubert_z10_polys(p: &Rat, qq: &Rat) -> (Rat, Rat) {
    let a = -((q(2) * p * p - q(2) * p * qq + qq * qq)
        * (q(4) * p.pow(4) - q(12) * p.pow(3) * qq
            + q(6) * p * p * qq * qq
            + q(2) * p * qq.pow(3)
            - qq.pow(4)));
    let b = q(16) * p.pow(5) * (p - qq).pow(5) * (p * p - q(3) * p * qq + qq * qq);
    (a, b)
}

/// The Z/10 Kubert chain `tau = p/q`, `d = tau^2/(tau - (tau-1)^2)`,
/// `c = tau(d - 1)`, `b = cd`.
pub fn kubert_z10(p: &Rat, qq: &Rat) -> Result<KubertForm, ParamError> {
    let tau = p
        .checked_div(qq)
        .map_err(|_| ParamError::DegenerateChain("q = 0".into()))?;
    let den = &tau - (&tau - q(1)).pow(2);
    let d = (&tau * &tau)
        .checked_div(&den)
        .map_err(|_| ParamError::DegenerateChain(format!("tau - (tau-1)^2 = 0 at tau = {tau}")))?;
    let c = &tau * (&d - q(1));
    let b = &c * &d;
    let long = kubert_long(&b, &c)?;
    let (a_tilde, b_tilde) = kubert_z10_polys(p, qq);
    Ok(KubertForm {
        tau,
        b,
        c,
        long,
        a_tilde,
        b_tilde,
    })
}
