use num_bigint::BigInt;
use num_traits::One;

use crate::curve::{find_isomorphism, Curve, Point, PointOrder};
use crate::field::{qf_sqrt, squarefree_part, FieldDesc, QFElem, Rat};
use crate::geometry::CurveABGD;
use crate::record::CurveRecord;

use super::z10::kubert_long;
use super::{excluded_unit, geometry_err, make_record, nonsingular, Group, ParamError};

fn qr(n: i64) -> Rat {
    Rat::from(n)
}

fn check_branch(branch: u8) -> Result<(), ParamError> {
    if branch == 1 || branch == 2 {
        Ok(())
    } else {
        Err(ParamError::Unsupported(format!(
            "branch {branch} (expected 1 or 2)"
        )))
    }
}

/// `alpha_1 = (m^2 - 1)/(m^2 + 1)` or `alpha_2 = 2m/(m^2 + 1)`; in both cases
/// `1 - alpha^2` is a rational square.
pub fn z16_alpha(m: &Rat, branch: u8) -> Result<Rat, ParamError> {
    excluded_unit("m", m)?;
    check_branch(branch)?;
    let m2 = m * m;
    Ok(if branch == 1 {
        (&m2 - qr(1)) / (&m2 + qr(1))
    } else {
        qr(2) * m / (&m2 + qr(1))
    })
}

/// `d_1 = (m^4 - 1)(m^2 - 2m - 1)` or `d_2 = m(m^2 + 1)(m^2 + 2m - 1)`.
pub fn z16_d_raw(m: &Rat, branch: u8) -> Result<Rat, ParamError> {
    excluded_unit("m", m)?;
    check_branch(branch)?;
    Ok(if branch == 1 {
        (m.pow(4) - qr(1)) * (m * m - qr(2) * m - qr(1))
    } else {
        m * (m * m + qr(1)) * (m * m + qr(2) * m - qr(1))
    })
}

/// Squarefree part of [`z16_d_raw`].
pub fn z16_field(m: &Rat, branch: u8) -> Result<BigInt, ParamError> {
    let raw = z16_d_raw(m, branch)?;
    if raw.is_zero() {
        return Err(ParamError::DegenerateField(raw.to_string()));
    }
    Ok(squarefree_part(&raw)?.0)
}

/// One cell of the m-group table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MGroupEntry {
    /// `m1`, `m-2`, ... as in the table.
    pub label: String,
    pub m: Rat,
    pub branch: u8,
    pub d: BigInt,
}

/// The four groups of parameters that give isomorphic curves over a common
/// field, with `m2 = 1/m1`, `m3 = (m1 - 1)/(m1 + 1)`, `m4 = 1/m3` and
/// `m-j = -mj`.
pub fn z16_m_groups(m1: &Rat) -> Result<Vec<Vec<MGroupEntry>>, ParamError> {
    excluded_unit("m", m1)?;
    let m2 = m1.inv()?;
    let m3 = (m1 - qr(1)) / (m1 + qr(1));
    let m4 = m3.inv()?;
    let ms = [m1.clone(), m2, m3, m4];
    let pick = |j: i32| -> (String, Rat) {
        let base = &ms[(j.unsigned_abs() - 1) as usize];
        if j > 0 {
            (format!("m{j}"), base.clone())
        } else {
            (format!("m{j}"), -base)
        }
    };
    let layout: [[(i32, u8); 4]; 4] = [
        [(1, 1), (-2, 1), (3, 2), (-4, 2)],
        [(1, 2), (-2, 2), (3, 1), (-4, 1)],
        [(-1, 1), (2, 1), (-3, 2), (4, 2)],
        [(-1, 2), (2, 2), (-3, 1), (4, 1)],
    ];
    layout
        .iter()
        .map(|group| {
            group
                .iter()
                .map(|&(j, branch)| {
                    let (label, m) = pick(j);
                    let d = z16_field(&m, branch)?;
                    Ok(MGroupEntry {
                        label,
                        m,
                        branch,
                        d,
                    })
                })
                .collect()
        })
        .collect()
}

/// `z = alpha r +- sqrt(alpha(alpha^2 - 1)(1 +- r - alpha(1 + alpha +- r)))`
/// with `r = sqrt(1 - alpha^2)`. Variants 1 and 3 take `+r` inside the root
/// and variants 2 and 4 take `-r`; variants 1 and 2 take the outer `+`.
pub fn z16_theorem_z(alpha: &Rat, variant: u8) -> Result<QFElem, ParamError> {
    excluded_unit("alpha", alpha)?;
    if !(1..=4).contains(&variant) {
        return Err(ParamError::Unsupported(format!("variant {variant}")));
    }
    let r = (qr(1) - alpha * alpha)
        .sqrt()
        .ok_or_else(|| ParamError::NonPythagoreanAlpha(alpha.clone()))?;
    let sr = if variant % 2 == 1 { r.clone() } else { -&r };
    let outer = if variant <= 2 { qr(1) } else { qr(-1) };
    let inner = z16_inner(alpha, &sr);
    let base = alpha * &r;
    if inner.is_zero() {
        return Ok(base.into());
    }
    Ok(QFElem::with_radicand(base, outer, &inner)?)
}

/// `alpha(alpha^2 - 1)(1 + sr - alpha(1 + alpha + sr))` for a chosen sign of
/// `sr = +-sqrt(1 - alpha^2)`.
fn z16_inner(alpha: &Rat, sr: &Rat) -> Rat {
    alpha * (alpha * alpha - qr(1)) * (qr(1) + sr - alpha * (qr(1) + alpha + sr))
}

/// `y^2 = x^3 + ((m^4 - 1)^2 - 4m^2(m^4 + 1)) x^2 + 16 m^8 x`.
pub fn z16_eq2_curve(m: &Rat) -> Result<Curve, ParamError> {
    let a = (m.pow(4) - qr(1)).pow(2) - qr(4) * m * m * (m.pow(4) + qr(1));
    let b = qr(16) * m.pow(8);
    nonsingular(Curve::short(a.into(), b.into()))
}

/// `y^2 + ((m^4 + 2m^2 - 1)/m^2) xy + (m^4 - 1) y = x^3 + (m^2 - 1) x^2`.
pub fn z16_eq3_curve(m: &Rat) -> Result<Curve, ParamError> {
    excluded_unit("m", m)?;
    let a1 = (m.pow(4) + qr(2) * m * m - qr(1)) / (m * m);
    nonsingular(Curve::from_rats([
        a1,
        m * m - qr(1),
        m.pow(4) - qr(1),
        qr(0),
        qr(0),
    ]))
}

/// Kubert's form with `b = -m(m-1)^2/(m^2+1)^2`,
/// `c = -2m(m-1)^2/((m^2+1)(m+1)^2)`.
pub fn z16_kubert_curve(m: &Rat) -> Result<Curve, ParamError> {
    excluded_unit("m", m)?;
    let m2p = m * m + qr(1);
    let w = (m - qr(1)).pow(2);
    let b = -(m * &w) / m2p.pow(2);
    let c = -(qr(2) * m * &w) / (&m2p * (m + qr(1)).pow(2));
    kubert_long(&b, &c)
}

/// A point of order 16 on the short model of the cubic
/// `y^2 (x - delta) = alpha + x + gamma x^2` with `gamma = (1 - alpha^2)/(2 alpha)`
/// and `delta = -(alpha + gamma)`, over `field`.
fn z16_geometric_point(alpha: &Rat, field: &FieldDesc) -> Result<(Curve, Point), ParamError> {
    let r = (qr(1) - alpha * alpha)
        .sqrt()
        .ok_or_else(|| ParamError::NonPythagoreanAlpha(alpha.clone()))?;
    let lift = |x: Rat| QFElem::from(x).promote(field);
    let gamma = (qr(1) - alpha * alpha) / (qr(2) * alpha);
    let delta = -(alpha + &gamma);
    let abgd = CurveABGD::new(
        lift(alpha.clone())?,
        lift(qr(1))?,
        lift(gamma)?,
        lift(delta)?,
    )
    .map_err(geometry_err)?;
    let short = abgd.short_model().map_err(geometry_err)?;
    let al = lift(alpha.clone())?;
    let one = QFElem::one();
    for sr in [r.clone(), -&r] {
        let inner = lift(z16_inner(alpha, &sr))?;
        let Some(sq) = qf_sqrt(&inner) else { continue };
        if sq.field() != field && !sq.is_rational() {
            continue;
        }
        for sg in [1i64, -1] {
            let x1 = -&one - QFElem::from(&sr / (qr(1) + alpha))
                + sq.scale(&(Rat::from(sg) / (alpha * (qr(1) + alpha))));
            let x1 = x1.promote(field)?;
            let t = &one + QFElem::from(2) * &x1 * &al + &al * &al;
            let den = &t + &al * (&x1 * &x1 - &one);
            if den.is_zero() {
                continue;
            }
            let l0 = &t / &den;
            let y1 = &l0 * &x1 + &l0 - &one;
            let p = Point::affine(x1, y1);
            if !abgd.contains(&p) {
                continue;
            }
            let Ok(ps) = abgd.to_short(&p) else { continue };
            if short.point_order(&ps, 24)? == PointOrder::Finite(16) {
                return Ok((short, ps));
            }
        }
    }
    Err(ParamError::GeneratorNotFound(format!(
        "no point of order 16 from alpha = {alpha} over {field}"
    )))
}

/// The Z/16 curve of branch 1 (the short form with `16 m^8`) or branch 2
/// (Kubert's form) over `Q(sqrt(d_i))`, with a verified generator.
pub fn param_z16(m: &Rat, branch: u8) -> Result<CurveRecord, ParamError> {
    let alpha = z16_alpha(m, branch)?;
    let d = z16_field(m, branch)?;
    if d.is_one() {
        return Err(ParamError::DegenerateField(
            z16_d_raw(m, branch)?.to_string(),
        ));
    }
    let field = FieldDesc::quadratic(d.clone())?;
    let (short, gen) = z16_geometric_point(&alpha, &field)?;
    let target = if branch == 1 {
        z16_eq2_curve(m)?
    } else {
        z16_kubert_curve(m)?
    };
    let target = Curve::over(field.clone(), target.coeffs().clone())?;
    let iso = find_isomorphism(&short, &target)?.ok_or_else(|| {
        ParamError::GeneratorNotFound(format!(
            "geometric model is not isomorphic to the branch-{branch} form at m = {m}"
        ))
    })?;
    let gen = iso.map_point(&gen);
    make_record(
        format!("z16-m{m}-b{branch}"),
        target,
        Group::Z16,
        gen,
        &[
            ("m", m.to_string()),
            ("branch", branch.to_string()),
            ("d", d.to_string()),
        ],
    )
}
