//! The Calkin–Wilf enumeration of the positive rationals.
//!
//! Index `n` is read in binary: after the leading 1, each bit moves from the
//! root `1/1` of the Calkin–Wilf tree to a child, `0` giving `a/(a+b)` and
//! `1` giving `(a+b)/b`. Breadth-first order of the tree is the sequence
//! `s_1 = 1, s_{n+1} = 1/(2 floor(s_n) - s_n + 1)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::field::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CwError {
    #[error("Calkin-Wilf terms are positive, got {0}")]
    NonPositive(Rat),
    #[error("Calkin-Wilf indices start at 1")]
    ZeroIndex,
}

/// The term following `s`.
pub fn cw_next(s: &Rat) -> Result<Rat, CwError> {
    if !s.is_positive() {
        return Err(CwError::NonPositive(s.clone()));
    }
    let two_floor = Rat::from_int(s.floor() * 2);
    Ok((two_floor - s + Rat::one())
        .inv()
        .expect("denominator is at least 1"))
}

/// The `n`-th term, `n >= 1`.
pub fn cw_fraction_at(n: &BigUint) -> Result<Rat, CwError> {
    if n.is_zero() {
        return Err(CwError::ZeroIndex);
    }
    let mut a = BigInt::one();
    let mut b = BigInt::one();
    let bits = n.bits();
    for i in (0..bits - 1).rev() {
        if n.bit(i) {
            a += &b;
        } else {
            b += &a;
        }
    }
    Ok(Rat::new(a, b).expect("b >= 1"))
}

/// The index of a positive rational. Runs of equal steps are peeled off by
/// division, so the cost is governed by the continued fraction of `p`.
pub fn cw_index_of(p: &Rat) -> Result<BigUint, CwError> {
    if !p.is_positive() {
        return Err(CwError::NonPositive(p.clone()));
    }
    let mut a = p.numer().magnitude().clone();
    let mut b = p.denom().magnitude().clone();
    // (bit, run length), collected from the leaf upwards
    let mut runs: Vec<(bool, BigUint)> = Vec::new();
    while !(a.is_one() && b.is_one()) {
        if a > b {
            let (q, r) = a.div_rem(&b);
            let steps = if r.is_zero() { q - 1u32 } else { q };
            a -= &steps * &b;
            runs.push((true, steps));
        } else {
            let (q, r) = b.div_rem(&a);
            let steps = if r.is_zero() { q - 1u32 } else { q };
            b -= &steps * &a;
            runs.push((false, steps));
        }
    }
    let mut idx = BigUint::one();
    for (bit, len) in runs.into_iter().rev() {
        let len = usize::try_from(&len).expect("run length fits in memory");
        idx <<= len;
        if bit {
            idx |= (BigUint::one() << len) - 1u32;
        }
    }
    Ok(idx)
}

/// Convenience wrapper for indices that fit in a machine word.
pub fn cw_fraction_at_u64(n: u64) -> Result<Rat, CwError> {
    cw_fraction_at(&BigUint::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn r(p: i64, q: i64) -> Rat {
        Rat::frac(p, q)
    }

    #[test]
    fn first_terms() {
        assert_eq!(cw_next(&r(1, 1)).unwrap(), r(1, 2));
        assert_eq!(cw_next(&r(1, 2)).unwrap(), r(2, 1));
        let expected = [
            r(1, 1),
            r(1, 2),
            r(2, 1),
            r(1, 3),
            r(3, 2),
            r(2, 3),
            r(3, 1),
        ];
        for (i, e) in expected.iter().enumerate() {
            assert_eq!(&cw_fraction_at_u64(i as u64 + 1).unwrap(), e);
        }
    }

    #[test]
    fn non_positive_inputs() {
        assert!(matches!(cw_next(&r(0, 1)), Err(CwError::NonPositive(_))));
        assert!(matches!(
            cw_index_of(&r(-3, 4)),
            Err(CwError::NonPositive(_))
        ));
        assert_eq!(cw_fraction_at_u64(0), Err(CwError::ZeroIndex));
    }

    #[test]
    fn recurrence_has_no_repeats_and_matches_closed_form() {
        let mut seen = HashSet::new();
        let mut s = Rat::one();
        for n in 1..=100_000u64 {
            if n <= 10_000 {
                assert_eq!(cw_fraction_at_u64(n).unwrap(), s, "n = {n}");
            }
            assert!(seen.insert(s.clone()), "repeat at n = {n}");
            s = cw_next(&s).unwrap();
        }
    }

    #[test]
    fn table_indices() {
        let cases: [(i64, i64, u64); 8] = [
            (2244, 1271, 307485),
            (3051, 2164, 623897),
            (4777, 7725, 1629610),
            (1333, 475, 3137659),
            (2407, 308, 67161983),
            (1564, 1991, 532575944622),
            (726, 133, 274335),
            (13360, 9499, 15352857),
        ];
        for (p, q, n) in cases {
            assert_eq!(cw_index_of(&r(p, q)).unwrap(), BigUint::from(n), "{p}/{q}");
            assert_eq!(cw_fraction_at_u64(n).unwrap(), r(p, q));
        }
    }

    #[test]
    fn integers_and_unit_fractions() {
        assert_eq!(cw_index_of(&r(1, 1)).unwrap(), BigUint::from(1u32));
        assert_eq!(cw_index_of(&r(5, 1)).unwrap(), BigUint::from(31u32));
        assert_eq!(cw_index_of(&r(1, 5)).unwrap(), BigUint::from(16u32));
    }

    proptest! {
        #[test]
        fn round_trip(n in 1u64..u64::MAX) {
            let f = cw_fraction_at_u64(n).unwrap();
            prop_assert_eq!(cw_index_of(&f).unwrap(), BigUint::from(n));
        }

        #[test]
        fn index_then_fraction(p in 1i64..100_000, q in 1i64..100_000) {
            let x = r(p, q);
            prop_assert_eq!(cw_fraction_at(&cw_index_of(&x).unwrap()).unwrap(), x);
        }
    }
}
