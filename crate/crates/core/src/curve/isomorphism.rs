//! Changes of Weierstrass model `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + t`.

use num_bigint::BigInt;
use num_traits::Signed;

use super::{Curve, CurveError, Point};
use crate::field::{qf_sqrt, QFElem, Rat};

/// The substitution data `(u, r, s, t)` with `u != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Iso {
    pub u: QFElem,
    pub r: QFElem,
    pub s: QFElem,
    pub t: QFElem,
}

impl Iso {
    pub fn new(u: QFElem, r: QFElem, s: QFElem, t: QFElem) -> Result<Iso, CurveError> {
        if u.is_zero() {
            return Err(CurveError::ZeroScale);
        }
        Ok(Iso { u, r, s, t })
    }

    pub fn identity() -> Iso {
        Iso::scaling(QFElem::one())
    }

    /// `(u, 0, 0, 0)`; coefficients scale as `a_i -> a_i / u^i`.
    pub fn scaling(u: QFElem) -> Iso {
        assert!(!u.is_zero(), "scaling by zero");
        Iso {
            u,
            r: QFElem::zero(),
            s: QFElem::zero(),
            t: QFElem::zero(),
        }
    }

    /// The transformed model.
    pub fn apply(&self, c: &Curve) -> Result<Curve, CurveError> {
        let [a1, a2, a3, a4, a6] = c.coeffs();
        let (u, r, s, t) = (&self.u, &self.r, &self.s, &self.t);
        let k = |n: i64| QFElem::from_int(n);
        let u2 = u * u;
        let u3 = &u2 * u;
        let u4 = &u2 * &u2;
        let u6 = &u3 * &u3;
        let n1 = (a1 + k(2) * s) / u;
        let n2 = (a2 - s * a1 + k(3) * r - s * s) / &u2;
        let n3 = (a3 + r * a1 + k(2) * t) / &u3;
        let n4 =
            (a4 - s * a3 + k(2) * r * a2 - (t + r * s) * a1 + k(3) * r * r - k(2) * s * t) / &u4;
        let n6 = (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / &u6;
        Curve::over(c.field().clone(), [n1, n2, n3, n4, n6])
    }

    /// Image of a point of the source model in the target model.
    pub fn map_point(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => {
                let u2 = &self.u * &self.u;
                let u3 = &u2 * &self.u;
                let xr = x - &self.r;
                let y2 = (y - &self.s * &xr - &self.t) / u3;
                Point::Affine { x: xr / u2, y: y2 }
            }
        }
    }

    pub fn inverse(&self) -> Iso {
        let (u, r, s, t) = (&self.u, &self.r, &self.s, &self.t);
        let u2 = u * u;
        let u3 = &u2 * u;
        Iso {
            u: QFElem::one() / u,
            r: -(r / &u2),
            s: -(s / u),
            t: (r * s - t) / u3,
        }
    }

    /// The substitution that applies `self` first and then `then`.
    pub fn compose(&self, then: &Iso) -> Iso {
        let (u1, r1, s1, t1) = (&self.u, &self.r, &self.s, &self.t);
        let (u2, r2, s2, t2) = (&then.u, &then.r, &then.s, &then.t);
        let u1sq = u1 * u1;
        Iso {
            u: u1 * u2,
            r: &u1sq * r2 + r1,
            s: s1 + u1 * s2,
            t: t1 + &u1sq * u1 * t2 + s1 * &u1sq * r2,
        }
    }
}

/// Applies `(u, r, s, t)` to `c` and returns the new model with the point map.
pub fn transform_model(
    c: &Curve,
    u: QFElem,
    r: QFElem,
    s: QFElem,
    t: QFElem,
) -> Result<(Curve, Iso), CurveError> {
    let iso = Iso::new(u, r, s, t)?;
    Ok((iso.apply(c)?, iso))
}

/// Substitution to `y^2 = x^3 + A x + B`, returned with `(A, B)`.
fn to_short(c: &Curve) -> (Iso, QFElem, QFElem) {
    let inv = c.invariants();
    let r = -(&inv.b2 / QFElem::from_int(12));
    let s = -(c.a1() / QFElem::from_int(2));
    let t = -((c.a3() + &r * c.a1()) / QFElem::from_int(2));
    let big_a = -(&inv.c4 / QFElem::from_int(48));
    let big_b = -(&inv.c6 / QFElem::from_int(864));
    (
        Iso {
            u: QFElem::one(),
            r,
            s,
            t,
        },
        big_a,
        big_b,
    )
}

fn rational_cbrt(q: &Rat) -> Option<Rat> {
    let root = |n: &BigInt| -> Option<BigInt> {
        let r = n.abs().cbrt();
        if &r * &r * &r == n.abs() {
            Some(if n.is_negative() { -r } else { r })
        } else {
            None
        }
    };
    Some(Rat::new(root(q.numer())?, root(q.denom())?).expect("nonzero"))
}

/// An explicit isomorphism from `e1` to `e2` defined over their common
/// field, if one exists.
///
/// For `j = 0` only scalings whose `u^2` is rational are found.
pub fn find_isomorphism(e1: &Curve, e2: &Curve) -> Result<Option<Iso>, CurveError> {
    let field = e1.field().join(e2.field())?;
    let (i1, a1, b1) = to_short(e1);
    let (i2, a2, b2) = to_short(e2);
    if a1.is_zero() != a2.is_zero() || b1.is_zero() != b2.is_zero() {
        return Ok(None);
    }
    let mut u_candidates: Vec<QFElem> = Vec::new();
    if !a1.is_zero() && !b1.is_zero() {
        let u2 = (&b1 * &a2) / (&b2 * &a1);
        let u2 = u2.promote(&field)?;
        if a1 == &a2 * &u2 * &u2 && b1 == &b2 * &u2 * &u2 * &u2 {
            u_candidates.extend(qf_sqrt(&u2));
        }
    } else if b1.is_zero() {
        let u4 = (&a1 / &a2).promote(&field)?;
        if let Some(w) = qf_sqrt(&u4) {
            for w in [w.clone(), -w] {
                u_candidates.extend(qf_sqrt(&w));
            }
        }
    } else {
        let u6 = (&b1 / &b2).promote(&field)?;
        if let Some(q) = u6.as_rat() {
            if let Some(u2) = rational_cbrt(q) {
                u_candidates.extend(qf_sqrt(&QFElem::rational(u2).promote(&field)?));
            }
        }
    }
    for u in u_candidates {
        let iso = i1.compose(&Iso::scaling(u)).compose(&i2.inverse());
        if &iso.apply(e1)? == e2 {
            return Ok(Some(iso));
        }
    }
    Ok(None)
}
