//! Three infinite families of Z/12 curves of positive rank.
//!
//! Each family comes from a rank-one curve `E_i` with generator `G_i`. The
//! multiples `[k]G_i` give parameters `t_k` for which `C_t` carries an extra
//! rational point, whose `x`-coordinate is a fixed polynomial in `t`.

use thiserror::Error;

use crate::curve::{Curve, CurveError, Point, PointOrder, DEFAULT_ORDER_BOUND};
use crate::field::{QFElem, Rat};
use crate::params::{kubert_chain_z12, z12_member, ParamError};
use crate::record::CurveRecord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("there is no family {0} (expected 1, 2 or 3)")]
    UnknownFamily(u8),
    #[error("family {index}, k = {k}: {reason}")]
    DegenerateK { index: u8, k: i64, reason: String },
    #[error("family {index}, k = {k}: t = {t} gives a singular curve")]
    SingularMember { index: u8, k: i64, t: Rat },
    #[error("family {index}, k = {k}: the extra point at t = {t} is not rational")]
    ExtraPointNotRational { index: u8, k: i64, t: Rat },
    #[error("family {index}, k = {k}: the extra point has finite order {order}")]
    ExtraPointTorsion { index: u8, k: i64, order: u32 },
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// Static description of one family.
#[derive(Debug, Clone)]
pub struct FamilySpec {
    pub index: u8,
    pub generator_curve: Curve,
    pub generator_point: Point,
    /// Label of the generator curve in Cremona's tables, as stated in the
    /// literature; not checked here.
    pub cremona_label: &'static str,
}

fn q(n: i64) -> Rat {
    Rat::from(n)
}

pub fn family_spec(index: u8) -> Result<FamilySpec, FamilyError> {
    let (coeffs, g, label): ([i64; 5], (i64, i64), &'static str) = match index {
        1 => ([0, 1, 0, 0, -1], (1, 1), "368d1"),
        2 => ([1, 0, 0, -5, 1], (0, 1), "226a1"),
        3 => ([0, 0, 0, -147, -286], (-5, -18), "720e2"),
        other => return Err(FamilyError::UnknownFamily(other)),
    };
    let curve = Curve::from_rats(coeffs.map(q))?;
    let point = curve.point_rat(q(g.0), q(g.1))?;
    Ok(FamilySpec {
        index,
        generator_curve: curve,
        generator_point: point,
        cremona_label: label,
    })
}

impl FamilySpec {
    /// `t` as a function of `(x_k, y_k) = [k]G`; `None` when the denominator
    /// vanishes.
    pub fn t_map(&self, x: &Rat, y: &Rat) -> Option<Rat> {
        let (num, den) = match self.index {
            1 => (y - q(1), q(2) * x - y - q(1)),
            2 => (q(2) * (x + q(2)), y + q(1)),
            _ => (y - q(3) * x + q(3), y + q(9) * x + q(63)),
        };
        num.checked_div(&den).ok()
    }

    /// The `x`-coordinate of the extra point on `C_t`.
    pub fn extra_x(&self, t: &Rat) -> Rat {
        match self.index {
            1 => -((t + q(1)).pow(2) * (t - q(1)).pow(6)),
            2 => (t + q(1)).pow(8),
            _ => Rat::frac(3, 4) * (t + q(1)).pow(4) * (t - q(1)).pow(4),
        }
    }

    /// The quartic whose square values certify the extra point.
    pub fn quartic(&self, t: &Rat) -> Rat {
        match self.index {
            1 => -(t.pow(4) + q(8) * t.pow(3) + q(2) * t * t + q(1)),
            2 => t.pow(4) - q(2) * t.pow(3) + q(13) * t * t + q(4) * t + q(4),
            _ => q(75) * t.pow(4) + q(66) * t * t + q(3),
        }
    }

    pub fn multiple(&self, k: i64) -> Point {
        self.generator_curve.mul(k, &self.generator_point)
    }
}

/// `t_k` for `[k]G_index`.
pub fn family_t(index: u8, k: i64) -> Result<Rat, FamilyError> {
    let spec = family_spec(index)?;
    let degenerate = |reason: &str| FamilyError::DegenerateK {
        index,
        k,
        reason: reason.to_string(),
    };
    let (x, y) = match spec.multiple(k) {
        Point::Infinity => return Err(degenerate("[k]G is the point at infinity")),
        Point::Affine { x, y } => (x, y),
    };
    let (x, y) = (
        x.as_rat().expect("rational point").clone(),
        y.as_rat().expect("rational point").clone(),
    );
    let t = spec
        .t_map(&x, &y)
        .ok_or_else(|| degenerate("the t-map has a zero denominator"))?;
    if t.is_zero() || t.is_one() || (&t + q(1)).is_zero() {
        return Err(FamilyError::SingularMember { index, k, t });
    }
    Ok(t)
}

/// `v >= 0` with `v^2 = q(t)`, if it exists.
pub fn quartic_condition(index: u8, t: &Rat) -> Result<Option<Rat>, FamilyError> {
    Ok(family_spec(index)?.quartic(t).sqrt())
}

/// A family member: the Z/12 record for `C_{t_k}` with the extra point
/// appended to its point list.
#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub index: u8,
    pub k: i64,
    pub t: Rat,
    pub record: CurveRecord,
    pub extra: Point,
}

pub fn family_member(index: u8, k: i64) -> Result<FamilyMember, FamilyError> {
    let spec = family_spec(index)?;
    let t = family_t(index, k)?;
    let mut record = z12_member(&t).map_err(|e| match e {
        ParamError::SingularImage => FamilyError::SingularMember {
            index,
            k,
            t: t.clone(),
        },
        other => other.into(),
    })?;
    let x = spec.extra_x(&t);
    let a = record.curve.a2().as_rat().expect("curve over Q").clone();
    let b = record.curve.a4().as_rat().expect("curve over Q").clone();
    let y = (x.pow(3) + &a * x.pow(2) + &b * &x).sqrt().ok_or_else(|| {
        FamilyError::ExtraPointNotRational {
            index,
            k,
            t: t.clone(),
        }
    })?;
    let extra = Point::affine(QFElem::from(x), QFElem::from(y));
    match record.curve.point_order(&extra, DEFAULT_ORDER_BOUND)? {
        PointOrder::Finite(order) => {
            return Err(FamilyError::ExtraPointTorsion { index, k, order });
        }
        PointOrder::ExceedsBound => {}
    }
    record.label = format!("family{index}-k{k}");
    record.points.push(extra.clone());
    record
        .provenance
        .params
        .insert("family".into(), index.to_string());
    record.provenance.params.insert("k".into(), k.to_string());
    record.annotations.push(format!(
        "generator curve is Cremona {} (label not verified)",
        spec.cremona_label
    ));
    Ok(FamilyMember {
        index,
        k,
        t,
        record,
        extra,
    })
}

/// `(1 - c, b)` of Kubert's form at `tau = (r + s)/(2s)` where `t_k = r/s`.
pub fn family_kubert_view(index: u8, k: i64) -> Result<(Rat, Rat), FamilyError> {
    let t = family_t(index, k)?;
    let tau = (&t + q(1)) / q(2);
    let (b, c) = kubert_chain_z12(&tau)?;
    Ok((q(1) - c, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    #[test]
    fn generators_have_infinite_order() {
        for i in 1..=3 {
            let s = family_spec(i).unwrap();
            assert_eq!(
                s.generator_curve
                    .point_order(&s.generator_point, 24)
                    .unwrap(),
                PointOrder::ExceedsBound
            );
        }
        assert!(matches!(family_spec(4), Err(FamilyError::UnknownFamily(4))));
    }

    #[test]
    fn t_values() {
        assert_eq!(family_t(1, 2).unwrap(), r("-61/97"));
        assert_eq!(family_t(1, -2).unwrap(), r("-5"));
        assert_eq!(family_t(2, 1).unwrap(), r("2"));
        assert_eq!(family_t(3, -2).unwrap(), r("-1/11"));
        assert!(matches!(
            family_t(1, -1),
            Err(FamilyError::SingularMember { .. })
        ));
        assert!(matches!(
            family_t(1, 0),
            Err(FamilyError::DegenerateK { .. })
        ));
    }

    #[test]
    fn quartic_examples() {
        assert_eq!(quartic_condition(1, &r("-1")).unwrap(), Some(r("2")));
        assert_eq!(quartic_condition(2, &r("0")).unwrap(), Some(r("2")));
        assert_eq!(quartic_condition(3, &r("1")).unwrap(), Some(r("12")));
        assert_eq!(quartic_condition(3, &r("2")).unwrap(), None);
    }

    #[test]
    fn member_coefficients() {
        let m = family_member(1, 2).unwrap();
        assert_eq!(
            m.record.curve.a2(),
            &QFElem::from(r("23452774585480768/7837433594376961"))
        );
        assert_eq!(
            m.record.curve.a4(),
            &QFElem::from(r(
                "14332124021409323029654935699456/61425365346268570446197767595521"
            ))
        );
        assert_eq!(m.record.points, vec![m.extra.clone()]);
    }

    #[test]
    fn kubert_views() {
        assert_eq!(
            family_kubert_view(1, 2).unwrap(),
            (r("53471797/47824783"), r("-37072646910/366481312129"))
        );
        assert_eq!(
            family_kubert_view(1, -2).unwrap(),
            (r("-163/27"), r("2470/81"))
        );
        assert_eq!(family_kubert_view(2, 1).unwrap(), (r("79"), r("390")));
        assert_eq!(
            family_kubert_view(2, 3).unwrap(),
            (r("7261/18634"), r("2331465/2869636"))
        );
        assert_eq!(
            family_kubert_view(3, 2).unwrap(),
            (r("282022931/250380936"), r("-506936401895/4823839112976"))
        );
    }

    #[test]
    fn quartic_holds_along_the_families() {
        for i in 1..=3u8 {
            for k in [-3i64, -2, 2, 3, 4] {
                match family_t(i, k) {
                    Ok(t) => assert!(quartic_condition(i, &t).unwrap().is_some(), "{i} {k}"),
                    Err(FamilyError::SingularMember { .. }) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
}
