//! Parametrisations of curves `y^2 = x^3 + a x^2 + b x` with a point of order
//! 10, 12, 14 or 16, together with the classical Kubert and Rabarison forms
//! they are compared against.

mod z10;
mod z12;
mod z14;
mod z16;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::curve::{verify_torsion_claim, Curve, CurveError, Point, TorsionClaim};
use crate::field::{FieldError, Rat};
use crate::geometry::GeometryError;
use crate::record::{CurveRecord, Provenance};

pub use z10::{kubert_z10, kubert_z10_polys, param_z10, z10_coeffs, KubertForm};
pub use z12::{
    kubert_chain_z12, kubert_z12, kubert_z12_polys, param_z12, z12_coeffs, z12_curve,
    z12_generator, z12_homogeneous, z12_member, z12_printed_order12_rows, z12_torsion_table,
};
pub use z14::{
    gamma0_curve, param_z14, rabarison_v_from_w, rabarison_w, rabarison_w_from_v, rabarison_z14,
    z14_closed_ab, z14_field, z14_radicand, z14_u_double, z14_u_orbit, z14_v, Gamma0, RabarisonZ14,
    Z14Field,
};
pub use z16::{
    param_z16, z16_alpha, z16_d_raw, z16_eq2_curve, z16_eq3_curve, z16_field, z16_kubert_curve,
    z16_m_groups, z16_theorem_z, MGroupEntry,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("excluded parameter: {0}")]
    ExcludedParameter(String),
    #[error("the parametrised curve is singular")]
    SingularImage,
    #[error("degenerate Kubert/Rabarison chain: {0}")]
    DegenerateChain(String),
    #[error("degenerate field: the radicand is {0}")]
    DegenerateField(String),
    #[error("sqrt(1 - alpha^2) is irrational for alpha = {0}")]
    NonPythagoreanAlpha(Rat),
    #[error("no torsion generator found: {0}")]
    GeneratorNotFound(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Builds `y^2 = x^3 + a x^2 + b x`, reporting a vanishing discriminant as
/// [`ParamError::SingularImage`].
pub(crate) fn nonsingular(c: Result<Curve, CurveError>) -> Result<Curve, ParamError> {
    c.map_err(|e| match e {
        CurveError::Singular => ParamError::SingularImage,
        other => ParamError::Curve(other),
    })
}

pub(crate) fn geometry_err(e: GeometryError) -> ParamError {
    match e {
        GeometryError::SingularImage => ParamError::SingularImage,
        GeometryError::Curve(CurveError::Singular) => ParamError::SingularImage,
        other => ParamError::Geometry(other),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    Z10,
    Z12,
    Z14,
    Z16,
}

impl Group {
    pub fn order(self) -> u32 {
        match self {
            Group::Z10 => 10,
            Group::Z12 => 12,
            Group::Z14 => 14,
            Group::Z16 => 16,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Group::Z10 => "z10",
            Group::Z12 => "z12",
            Group::Z14 => "z14",
            Group::Z16 => "z16",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Group {
    type Err = ParamError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "z10" | "10" => Ok(Group::Z10),
            "z12" | "12" => Ok(Group::Z12),
            "z14" | "14" => Ok(Group::Z14),
            "z16" | "16" => Ok(Group::Z16),
            other => Err(ParamError::Unsupported(format!("group {other:?}"))),
        }
    }
}

/// Choice of square root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Sign {
    type Err = ParamError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plus" | "+" | "+1" | "1" => Ok(Sign::Plus),
            "minus" | "-" | "-1" => Ok(Sign::Minus),
            other => Err(ParamError::Unsupported(format!("sign {other:?}"))),
        }
    }
}

/// A point of a torsion table together with its expected order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionRow {
    pub order: u32,
    pub point: Point,
}

/// Verifies the claim and packages the record.
pub(crate) fn make_record(
    label: String,
    curve: Curve,
    group: Group,
    generator: Point,
    params: &[(&str, String)],
) -> Result<CurveRecord, ParamError> {
    let claim = TorsionClaim {
        order: group.order(),
        generator,
    };
    let report = verify_torsion_claim(&curve, &claim)?;
    if !report.is_confirmed() {
        return Err(ParamError::GeneratorNotFound(format!(
            "reduction check failed: {:?}",
            report.reduction
        )));
    }
    let mut prov = Provenance::new(group);
    for (k, v) in params {
        prov.params.insert((*k).to_string(), v.clone());
    }
    Ok(CurveRecord::new(label, curve, claim, prov))
}

pub(crate) fn excluded_unit(name: &str, x: &Rat) -> Result<(), ParamError> {
    if x.is_zero() || x.is_one() || (x + Rat::from(1)).is_zero() {
        return Err(ParamError::ExcludedParameter(format!(
            "{name} = {x} (must avoid 0, 1, -1)"
        )));
    }
    Ok(())
}
