//! Exact rational scalars and their `"p/q"` string encoding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational over arbitrary-precision integers.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Formats as `"p/q"`, always with an explicit denominator.
pub fn to_string(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Human-facing form: integers without the `/1`.
pub fn display(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Accepts `"p/q"` or a bare integer `"p"`.
pub fn parse(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Q::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Q::from_integer(n))
        }
    }
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Exact integer square root of a non-negative rational, when it exists.
pub fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = int_sqrt(x.numer())?;
    let d = int_sqrt(x.denom())?;
    Some(Q::new(n, d))
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact integer j-th root of a rational; `None` when irrational.
pub fn rational_root(x: &Q, j: u32) -> Option<Q> {
    if j == 1 {
        return Some(x.clone());
    }
    let neg = x.is_negative();
    if neg && j.is_multiple_of(2) {
        return None;
    }
    let a = x.abs();
    let n = a.numer().nth_root(j);
    let d = a.denom().nth_root(j);
    if num_traits::pow(n.clone(), j as usize) != *a.numer()
        || num_traits::pow(d.clone(), j as usize) != *a.denom()
    {
        return None;
    }
    let r = Q::new(n, d);
    Some(if neg { -r } else { r })
}

/// Splits `n = s^2 * f` with `f` squarefree; returns `(s, f)`. Requires `n > 0`.
pub fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut outside = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let p2 = &p * &p;
        while rest.is_multiple_of(&p2) {
            rest /= &p2;
            outside *= &p;
        }
        p += 1;
    }
    (outside, rest)
}

pub fn lcm_of_denominators<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_roundtrip() {
        for s in ["3/4", "-7/2", "0/1", "12/1"] {
            assert_eq!(to_string(&parse(s).unwrap()), s);
        }
        assert_eq!(parse("6/8").unwrap(), qf(3, 4));
        assert_eq!(parse("-5").unwrap(), q(-5));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn binomials_and_roots() {
        assert_eq!(binomial(8, 4), 70);
        assert_eq!(binomial(10, 5), 252);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(rational_sqrt(&qf(9, 4)), Some(qf(3, 2)));
        assert_eq!(rational_sqrt(&q(2)), None);
        assert_eq!(rational_root(&qf(-1, 8), 3), Some(qf(-1, 2)));
        assert_eq!(
            squarefree_split(&BigInt::from(72)),
            (BigInt::from(6), BigInt::from(2))
        );
    }
}
