//! Closed-form block-count bounds.
//!
//! `M(n, k, t) = C(n + k - 1, k - 1) * n * k^(t (k-1)^3 n^4 / (2 k^3))`, with
//! the exponent rounded up so the bound stays an integer upper bound.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::Rational;

/// Exponents above this are refused rather than materialized.
pub const MAX_EXPONENT: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub formula_name: String,
    #[serde(serialize_with = "ser_rational")]
    pub exact_exponent: Rational,
    #[serde(serialize_with = "ser_biguint")]
    pub integer_upper_bound: BigUint,
}

fn ser_rational<S: serde::Serializer>(v: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::geometry::format_rational(v))
}

fn ser_biguint<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `t (k-1)^3 n^4 / (2 k^3)`, the exponent of `k` in `M(n, k, t)`.
pub fn exponent(n: u64, k: u64, t: u64) -> Rational {
    let km1 = BigInt::from(k - 1);
    let num = BigInt::from(t) * &km1 * &km1 * &km1 * num_traits::pow(BigInt::from(n), 4);
    let den = BigInt::from(2) * num_traits::pow(BigInt::from(k), 3);
    Rational::new(num, den)
}

fn require_positive(pairs: &[(&str, u64)]) -> Result<()> {
    for (name, v) in pairs {
        if *v == 0 {
            return Err(Error::InvalidParameters(format!("{name} must be at least 1")));
        }
    }
    Ok(())
}

pub fn bound_m(n: u64, k: u64, t: u64) -> Result<BoundReport> {
    require_positive(&[("n", n), ("k", k), ("t", t)])?;
    Ok(BoundReport {
        formula_name: "M(n,k,t)".into(),
        ..evaluate(n, k, t)?
    })
}

pub fn bound_n(n: u64, k: u64) -> Result<BoundReport> {
    require_positive(&[("n", n), ("k", k)])?;
    Ok(BoundReport {
        formula_name: "N(n,k)".into(),
        ..evaluate(n, k, 1)?
    })
}

fn evaluate(n: u64, k: u64, t: u64) -> Result<BoundReport> {
    let exact = exponent(n, k, t);
    let ceiled = exact.ceil().to_integer();
    let e = ceiled
        .to_u64()
        .filter(|&e| e <= MAX_EXPONENT)
        .ok_or_else(|| Error::InvalidParameters(format!("exponent {ceiled} too large to evaluate")))?;
    let power = num_traits::pow(BigUint::from(k), e as usize);
    Ok(BoundReport {
        formula_name: String::new(),
        exact_exponent: exact,
        integer_upper_bound: binomial(n + k - 1, k - 1) * BigUint::from(n) * power,
    })
}

/// `m (n - m) + 1`: lines that force an SDR of size `n` from `n + m - 1`
/// blocks of `m` horizontal segments.
pub fn few_lines_threshold(n: u64, m: u64) -> Result<u64> {
    if m == 0 || m >= n {
        return Err(Error::InvalidParameters(format!("need 1 <= m < n, got n = {n}, m = {m}")));
    }
    Ok(m * (n - m) + 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionCount {
    /// `t * sum_{i<j} n_i (n - n_i) n_j (n - n_j)`
    pub exact: BigUint,
    /// `t (k-1)^3 n^4 / (2 k^3)`
    pub jensen: Rational,
}

pub fn intersection_count_bound(composition: &[u64], t: u64) -> Result<IntersectionCount> {
    if composition.is_empty() {
        return Err(Error::InvalidParameters("composition must have at least one part".into()));
    }
    let n: u64 = composition.iter().sum();
    let weights: Vec<BigUint> = composition
        .iter()
        .map(|&ni| BigUint::from(ni) * BigUint::from(n - ni))
        .collect();
    let mut exact = BigUint::zero();
    for i in 0..weights.len() {
        for j in i + 1..weights.len() {
            exact += &weights[i] * &weights[j];
        }
    }
    exact *= BigUint::from(t);
    let k = composition.len() as u64;
    Ok(IntersectionCount {
        exact,
        jensen: exponent(n, k, t),
    })
}

/// Whether `value <= bound` for an integer and a rational.
pub fn fits_under(value: &BigUint, bound: &Rational) -> bool {
    let v = Rational::from_integer(BigInt::from(value.clone()));
    &v <= bound
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ratio;

    #[test]
    fn m_small_values() {
        let r = bound_m(2, 2, 1).unwrap();
        assert_eq!(r.exact_exponent, ratio(1, 1));
        assert_eq!(r.integer_upper_bound, BigUint::from(12u32));
        let r = bound_m(2, 2, 2).unwrap();
        assert_eq!(r.exact_exponent, ratio(2, 1));
        assert_eq!(r.integer_upper_bound, BigUint::from(24u32));
    }

    #[test]
    fn single_direction_collapses_to_n() {
        for n in 1..10 {
            for t in 1..4 {
                let r = bound_m(n, 1, t).unwrap();
                assert_eq!(r.exact_exponent, ratio(0, 1));
                assert_eq!(r.integer_upper_bound, BigUint::from(n));
            }
            assert_eq!(bound_n(n, 1).unwrap().integer_upper_bound, BigUint::from(n));
        }
    }

    #[test]
    fn n_rounds_fractional_exponent_up() {
        let r = bound_n(1, 2).unwrap();
        assert_eq!(r.exact_exponent, ratio(1, 16));
        assert_eq!(r.integer_upper_bound, BigUint::from(4u32));
        assert_eq!(bound_n(2, 2).unwrap().integer_upper_bound, BigUint::from(12u32));
    }

    #[test]
    fn zero_arguments_rejected() {
        assert!(bound_m(0, 2, 1).is_err());
        assert!(bound_n(2, 0).is_err());
    }

    #[test]
    fn thresholds() {
        assert_eq!(few_lines_threshold(5, 2).unwrap(), 7);
        assert_eq!(few_lines_threshold(4, 2).unwrap(), 5);
        for n in 2..10 {
            assert_eq!(few_lines_threshold(n, 1).unwrap(), n);
        }
        assert!(few_lines_threshold(3, 3).is_err());
        assert!(few_lines_threshold(3, 0).is_err());
    }

    #[test]
    fn intersection_counts() {
        let r = intersection_count_bound(&[2, 2], 1).unwrap();
        assert_eq!(r.exact, BigUint::from(16u32));
        assert_eq!(r.jensen, ratio(16, 1));
        let r = intersection_count_bound(&[1, 3], 1).unwrap();
        assert_eq!(r.exact, BigUint::from(9u32));
        assert!(fits_under(&r.exact, &r.jensen));
        let r = intersection_count_bound(&[5, 0, 0], 3).unwrap();
        assert_eq!(r.exact, BigUint::zero());
    }
}
