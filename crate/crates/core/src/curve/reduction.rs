use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{Curve, CurveError};
use crate::field::Rat;

/// An integral model of a curve over Q, obtained by the scaling
/// `a_i -> a_i * lambda^i` with `lambda` the lcm of the coefficient
/// denominators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralModel {
    pub coeffs: [BigInt; 5],
    pub disc: BigInt,
    pub lambda: BigInt,
}

/// Coefficients reduced into `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReducedCurve {
    pub p: u64,
    pub a: [u64; 5],
}

const WEIGHTS: [u32; 5] = [1, 2, 3, 4, 6];

impl IntegralModel {
    pub fn new(c: &Curve) -> Result<IntegralModel, CurveError> {
        let mut rats: Vec<Rat> = Vec::with_capacity(5);
        for a in c.coeffs() {
            rats.push(a.as_rat().ok_or(CurveError::NonIntegralModel)?.clone());
        }
        let lambda = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let lam = Rat::from_int(lambda.clone());
        let mut coeffs: Vec<BigInt> = Vec::with_capacity(5);
        for (r, w) in rats.iter().zip(WEIGHTS) {
            let scaled = r * lam.pow(w as i32);
            debug_assert!(scaled.is_integer());
            coeffs.push(scaled.numer().clone());
        }
        let disc = c.discriminant();
        let disc = disc.as_rat().expect("rational coefficients") * lam.pow(12);
        debug_assert!(disc.is_integer());
        Ok(IntegralModel {
            coeffs: coeffs.try_into().expect("five coefficients"),
            disc: disc.numer().clone(),
            lambda,
        })
    }

    pub fn is_good(&self, p: u64) -> bool {
        !(&self.disc % p).is_zero()
    }

    pub fn reduce(&self, p: u64) -> Result<ReducedCurve, CurveError> {
        if !self.is_good(p) {
            return Err(CurveError::BadReduction(p));
        }
        let pb = BigInt::from(p);
        let a = self
            .coeffs
            .clone()
            .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits in u64"));
        Ok(ReducedCurve { p, a })
    }
}

/// Reduction of a curve over Q modulo a prime of good reduction.
pub fn reduce_mod_p(c: &Curve, p: u64) -> Result<ReducedCurve, CurveError> {
    IntegralModel::new(c)?.reduce(p)
}

impl ReducedCurve {
    pub fn contains(&self, x: u64, y: u64) -> bool {
        let p = self.p as u128;
        let [a1, a2, a3, a4, a6] = self.a.map(|v| v as u128);
        let (x, y) = (x as u128 % p, y as u128 % p);
        let lhs = (y * y + a1 * x % p * y + a3 * y) % p;
        let rhs = ((x * x % p * x) + a2 * x % p * x + a4 * x + a6) % p;
        lhs == rhs
    }
}
