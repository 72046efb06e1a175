use crate::curve::{Curve, Point};
use crate::field::Rat;
use crate::record::CurveRecord;

use super::z10::{kubert_long, KubertForm};
use super::{make_record, nonsingular, Group, ParamError, TorsionRow};

fn q(n: i64) -> Rat {
    Rat::from(n)
}

/// `a1 = 2(3t^8 + 24t^6 + 6t^4 - 1)`, `b1 = (t^2 - 1)^6 (1 + 3t^2)^2`.
pub fn z12_coeffs(t: &Rat) -> (Rat, Rat) {
    let a1 = q(2) * (q(3) * t.pow(8) + q(24) * t.pow(6) + q(6) * t.pow(4) - q(1));
    let b1 = (t * t - q(1)).pow(6) * (q(1) + q(3) * t * t).pow(2);
    (a1, b1)
}

/// The same pair written homogeneously in `t = r/s`:
/// `(6r^8 + 48r^6 s^2 + 12r^4 s^4 - 2s^8, (r^2 - s^2)^6 (3r^2 + s^2)^2)`.
pub fn z12_homogeneous(r: &Rat, s: &Rat) -> (Rat, Rat) {
    let a = q(6) * r.pow(8) + q(48) * r.pow(6) * s.pow(2) + q(12) * r.pow(4) * s.pow(4)
        - q(2) * s.pow(8);
    let b = (r * r - s * s).pow(6) * (q(3) * r * r + s * s).pow(2);
    (a, b)
}

fn check_t(t: &Rat) -> Result<(), ParamError> {
    if t.is_zero() || t.is_one() || (t + q(1)).is_zero() {
        return Err(ParamError::ExcludedParameter(format!(
            "t = {t} (must avoid 0, 1, -1)"
        )));
    }
    Ok(())
}

/// `C_t` for any `t` outside `{0, 1, -1}`.
pub fn z12_curve(t: &Rat) -> Result<Curve, ParamError> {
    check_t(t)?;
    let (a, b) = z12_coeffs(t);
    nonsingular(Curve::short(a.into(), b.into()))
}

fn row(order: u32, x: Rat, y: Rat) -> TorsionRow {
    TorsionRow {
        order,
        point: Point::affine(x.into(), y.into()),
    }
}

/// The nontrivial torsion points of `C_t` with positive `y`-sign choice, one
/// row per table line. The two order-12 rows are
/// `(-(t^2-1)(t+1)^4(1+3t^2), 4t(t^2-1)(t+1)^4(1+t^2)(1+3t^2))` and the same
/// with `t+1` replaced by `t-1`; they generate the whole group.
pub fn z12_torsion_table(t: &Rat) -> Vec<TorsionRow> {
    let w = t * t - q(1);
    let s = q(1) + q(3) * t * t;
    let p = t * t + q(1);
    let tp4 = (t + q(1)).pow(4);
    let tm4 = (t - q(1)).pow(4);
    vec![
        row(2, q(0), q(0)),
        row(3, w.pow(4), q(4) * t * t * w.pow(4) * &p),
        row(4, -(w.pow(3) * &s), q(8) * t.pow(3) * w.pow(3) * &s),
        row(
            6,
            w.pow(2) * s.pow(2),
            q(4) * t * t * w.pow(2) * &p * s.pow(2),
        ),
        row(12, -(&w * &tp4 * &s), q(4) * t * &w * &tp4 * &p * &s),
        row(12, -(&w * &tm4 * &s), q(4) * t * &w * &tm4 * &p * &s),
    ]
}

/// The two order-12 lines exactly as they are usually printed, with the
/// factor `(1+3t^2)^2` in `x`. These points do not lie on `C_t`; they are
/// kept so the discrepancy can be demonstrated.
pub fn z12_printed_order12_rows(t: &Rat) -> Vec<TorsionRow> {
    let w = t * t - q(1);
    let s = q(1) + q(3) * t * t;
    let p = t * t + q(1);
    let tp4 = (t + q(1)).pow(4);
    let tm4 = (t - q(1)).pow(4);
    vec![
        row(12, &w * &tp4 * s.pow(2), q(4) * t * &w * &tp4 * &p * &s),
        row(12, -(&w * &tp4 * s.pow(2)), q(4) * t * &w * &tm4 * &p * &s),
    ]
}

/// `C_t` as a verified record for any admissible `t`, including the
/// negative values produced by the rank families.
pub fn z12_member(t: &Rat) -> Result<CurveRecord, ParamError> {
    let curve = z12_curve(t)?;
    let gen = z12_generator(t);
    make_record(
        format!("z12-t{t}"),
        curve,
        Group::Z12,
        gen,
        &[("t", t.to_string())],
    )
}

pub fn param_z12(t: &Rat) -> Result<CurveRecord, ParamError> {
    check_t(t)?;
    if !t.is_positive() {
        return Err(ParamError::ExcludedParameter(format!(
            "t = {t} (must be positive)"
        )));
    }
    z12_member(t)
}

/// Kubert's Z/12 chain: `m = (3tau - 3tau^2 - 1)/(tau - 1)`,
/// `f = m/(1 - tau)`, `d = m + tau`, `c = f(d - 1)`, `b = cd`.
/// Returns `(b, c)`.
pub fn kubert_chain_z12(tau: &Rat) -> Result<(Rat, Rat), ParamError> {
    if tau.is_one() {
        return Err(ParamError::DegenerateChain("tau = 1".into()));
    }
    let m = (q(3) * tau - q(3) * tau * tau - q(1)) / (tau - q(1));
    let f = &m / (q(1) - tau);
    let d = &m + tau;
    let c = f * (&d - q(1));
    let b = &c * &d;
    Ok((b, c))
}

/// `a~ = s^8 + 12r(r-s)(s^6 + 2r(r-s)(r^2-rs+s^2)(r^2-rs+2s^2))`,
/// `b~ = 16 r^6 (r-s)^6 (3r(r-s) + s^2)^2`.
pub fn kubert_z12_polys(r: &Rat, s: &Rat) -> (Rat, Rat) {
    let rs = r * (r - s);
    let a = s.pow(8)
        + q(12)
            * &rs
            * (s.pow(6) + q(2) * &rs * (r * r - r * s + s * s) * (r * r - r * s + q(2) * s * s));
    let b = q(16) * r.pow(6) * (r - s).pow(6) * (q(3) * &rs + s * s).pow(2);
    (a, b)
}

pub fn kubert_z12(r: &Rat, s: &Rat) -> Result<KubertForm, ParamError> {
    let tau = r
        .checked_div(s)
        .map_err(|_| ParamError::DegenerateChain("s = 0".into()))?;
    let (b, c) = kubert_chain_z12(&tau)?;
    let long = kubert_long(&b, &c)?;
    let (a_tilde, b_tilde) = kubert_z12_polys(r, s);
    Ok(KubertForm {
        tau,
        b,
        c,
        long,
        a_tilde,
        b_tilde,
    })
}

/// Generator of `C_t` in the coordinates of [`z12_curve`], for callers that
/// only need the point.
pub fn z12_generator(t: &Rat) -> Point {
    z12_torsion_table(t)
        .into_iter()
        .find(|r| r.order == 12)
        .map(|r| r.point)
        .expect("table has an order-12 row")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{find_isomorphism, PointOrder};
    use crate::field::QFElem;
    use proptest::prelude::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    #[test]
    fn corrected_rows_have_stated_orders() {
        for t in ["2", "3", "1/2", "-5", "-61/97"] {
            let t = r(t);
            let c = z12_curve(&t).unwrap();
            for row in z12_torsion_table(&t) {
                for p in [row.point.clone(), c.neg(&row.point)] {
                    assert!(c.contains(&p), "t = {t}, order {}", row.order);
                    assert_eq!(
                        c.point_order(&p, 24).unwrap(),
                        PointOrder::Finite(row.order)
                    );
                }
            }
        }
    }

    #[test]
    fn printed_order12_rows_are_off_the_curve() {
        let t = r("2");
        let c = z12_curve(&t).unwrap();
        for row in z12_printed_order12_rows(&t) {
            assert!(!c.contains(&row.point));
        }
    }

    #[test]
    fn param_at_two() {
        let rec = param_z12(&r("2")).unwrap();
        let (a, b) = z12_coeffs(&r("2"));
        assert_eq!(a, r("2") * (r("768") + r("1536") + r("96") - r("1")));
        assert_eq!(b, r("729") * r("169"));
        assert_eq!(rec.curve.a2(), &QFElem::from(a));
        assert_eq!(rec.torsion.order, 12);
    }

    #[test]
    fn excluded_values() {
        for t in ["1", "0", "-2"] {
            assert!(matches!(
                param_z12(&r(t)),
                Err(ParamError::ExcludedParameter(_))
            ));
        }
        assert!(z12_member(&r("-2")).is_ok());
    }

    #[test]
    fn kubert_degenerate() {
        assert!(matches!(
            kubert_z12(&r("5"), &r("5")),
            Err(ParamError::DegenerateChain(_))
        ));
    }

    #[test]
    fn kubert_substitution_at_two_one() {
        let (at, bt) = kubert_z12_polys(&r("3"), &r("2"));
        let (a1, b1) = z12_coeffs(&r("2"));
        assert_eq!(at, r("4") * a1);
        assert_eq!(bt, r("16") * b1);
    }

    #[test]
    fn kubert_forms_agree_at_record_fraction() {
        let k = kubert_z12(&r("726"), &r("133")).unwrap();
        let iso = find_isomorphism(&k.long, &k.short().unwrap()).unwrap();
        assert!(iso.is_some());
        let o = Point::affine(QFElem::zero(), QFElem::zero());
        assert_eq!(k.long.point_order(&o, 24).unwrap(), PointOrder::Finite(12));
    }

    #[test]
    fn generator_helper_matches_table() {
        let t = r("3");
        assert_eq!(z12_generator(&t), z12_member(&t).unwrap().torsion.generator);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn generator_order(p in -30i64..30, s in 1i64..30) {
            let t = Rat::frac(p, s);
            prop_assume!(check_t(&t).is_ok());
            let rec = z12_member(&t).unwrap();
            prop_assert_eq!(
                rec.curve.point_order(&rec.torsion.generator, 24).unwrap(),
                PointOrder::Finite(12)
            );
        }

        #[test]
        fn kubert_identity(a in -300i64..300, b in 1i64..300) {
            let (rr, s) = (Rat::from(a), Rat::from(b));
            let (h1, h2) = z12_homogeneous(&rr, &s);
            let (at, bt) = kubert_z12_polys(&(&rr + &s), &(&s * Rat::from(2)));
            prop_assert_eq!(at, Rat::from(4) * h1);
            prop_assert_eq!(bt, Rat::from(16) * h2);
        }
    }
}
