//! Univariate polynomials over Q, constant term first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::scalar::{self, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPolynomial {
    coeffs: Vec<Q>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::new(vec![Q::zero(), Q::one()])
    }

    /// `t - r`.
    pub fn linear(r: Q) -> Self {
        Self::new(vec![-r, Q::one()])
    }

    /// `t^2 + c`.
    pub fn t2_plus(c: Q) -> Self {
        Self::new(vec![c, Q::zero(), Q::one()])
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Q>) -> Self {
        roots
            .into_iter()
            .fold(Self::one(), |acc, r| &acc * &Self::linear(r.clone()))
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a Self>) -> Self {
        factors.into_iter().fold(Self::one(), |acc, f| &acc * f)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Q::one() / self.leading()))
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + c)
    }

    /// Whether only even powers occur.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    /// `g(u)` with `self(t) = g(t^2)`; requires an even polynomial.
    pub fn even_part_in_square(&self) -> Option<Self> {
        self.is_even()
            .then(|| Self::new(self.coeffs.iter().step_by(2).cloned().collect()))
    }

    /// `self(t^2)`.
    pub fn substitute_square(&self) -> Self {
        let mut c = vec![Q::zero(); 2 * self.coeffs.len()];
        for (i, x) in self.coeffs.iter().enumerate() {
            c[2 * i] = x.clone();
        }
        Self::new(c)
    }

    /// `self(s * t)`.
    pub fn rescale_argument(&self, s: &Q) -> Self {
        let mut pow = Q::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pow);
            pow *= s;
        }
        Self::new(out)
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return domain("polynomial division by zero");
        }
        let dd = d.coeffs.len() - 1;
        let lead_inv = Q::one() / d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Q::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient; errors when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Contract(format!("{d} does not divide {self}")));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_rem(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Monic least common multiple.
    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(other);
        (self * &other.div_exact(&g).expect("gcd divides")).monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Integer polynomial with content 1 and positive leading coefficient,
    /// proportional to `self`.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let den = scalar::lcm_of_denominators(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Q::from_integer(den.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        let sign = if ints.last().unwrap().is_negative() { -1 } else { 1 };
        ints.into_iter().map(|x| x / &content * sign).collect()
    }

    /// Rational roots with their multiplicities, ascending.
    pub fn rational_roots(&self) -> Vec<(Q, usize)> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut p = self.clone();
        let mut roots = Vec::new();
        let mut zero_mult = 0;
        while p.coeffs.first().is_some_and(Zero::is_zero) {
            p = Self::new(p.coeffs[1..].to_vec());
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push((Q::zero(), zero_mult));
        }
        if p.degree().unwrap_or(0) == 0 {
            return roots;
        }
        let ints = p.primitive_integer();
        let c0 = ints[0].abs();
        let cn = ints.last().unwrap().abs();
        let nums = divisors(&c0);
        let dens = divisors(&cn);
        let mut cands: Vec<Q> = Vec::new();
        for n in &nums {
            for d in &dens {
                let r = Q::new(n.clone(), d.clone());
                cands.push(r.clone());
                cands.push(-r);
            }
        }
        cands.sort();
        cands.dedup();
        for r in cands {
            let lin = Self::linear(r.clone());
            let mut mult = 0;
            while let Ok((q, rem)) = p.div_rem(&lin) {
                if !rem.is_zero() {
                    break;
                }
                p = q;
                mult += 1;
            }
            if mult > 0 {
                roots.push((r, mult));
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        roots
    }

    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson { coeffs: self.coeffs.iter().map(scalar::to_string).collect() }
    }

    pub fn from_json(json: &PolynomialJson) -> Result<Self> {
        Ok(Self::new(json.coeffs.iter().map(|s| scalar::parse(s)).collect::<Result<_>>()?))
    }
}

/// Positive divisors of `|n|` by trial division (`n = 0` yields `[1]`).
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut rest = n;
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0;
        while rest.is_multiple_of(&p) {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += 1;
    }
    if !rest.is_one() {
        primes.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut x = d.clone();
            for _ in 0..=e {
                next.push(x.clone());
                x *= &p;
            }
        }
        divs = next;
    }
    divs
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, rhs: Self) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: Self) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, rhs: Self) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut c = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        RationalPolynomial::new(c)
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn neg(self) -> RationalPolynomial {
        self.scale(&-Q::one())
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{}", scalar::display(&mag))?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}t", if show_coeff { " " } else { "" })?,
                _ => write!(f, "{}t^{i}", if show_coeff { " " } else { "" })?,
            }
        }
        Ok(())
    }
}

/// Wire format `{"coeffs": ["p/q", ...]}`, constant term first.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolynomialJson {
    pub coeffs: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qf};

    fn p(c: &[Q]) -> RationalPolynomial {
        RationalPolynomial::new(c.to_vec())
    }

    #[test]
    fn ring_operations() {
        let a = RationalPolynomial::linear(q(1));
        let b = RationalPolynomial::linear(q(-1));
        assert_eq!(&a * &b, p(&[q(-1), q(0), q(1)]));
        assert_eq!((&a * &b).gcd(&a), a);
        assert_eq!(a.lcm(&b), &a * &b);
        let prod = RationalPolynomial::from_roots(&[q(0), q(-2), q(-4), qf(2, 3)]);
        assert_eq!(prod, p(&[q(0), qf(-16, 3), q(4), qf(16, 3), q(1)]));
        assert!(prod.div_rem(&RationalPolynomial::zero()).is_err());
        let (qq, r) = prod.div_rem(&RationalPolynomial::linear(q(-2))).unwrap();
        assert!(r.is_zero());
        assert_eq!(&qq * &RationalPolynomial::linear(q(-2)), prod);
    }

    #[test]
    fn roots_by_divisors() {
        let f = RationalPolynomial::from_roots(&[q(0), q(-4), q(-3), q(-2), qf(2, 3)]);
        let roots: Vec<Q> = f.rational_roots().into_iter().map(|(r, _)| r).collect();
        assert_eq!(roots, vec![q(-4), q(-3), q(-2), q(0), qf(2, 3)]);
        assert!(RationalPolynomial::t2_plus(q(1)).rational_roots().is_empty());
        let g = &f * &RationalPolynomial::linear(q(-4));
        assert!(g.rational_roots().contains(&(q(-4), 2)));
    }

    #[test]
    fn display_and_json() {
        let f = p(&[qf(-8, 3), qf(10, 3), q(1)]);
        assert_eq!(f.to_string(), "t^2 + 10/3 t - 8/3");
        let j = f.to_json();
        assert_eq!(j.coeffs, vec!["-8/3", "10/3", "1/1"]);
        assert_eq!(RationalPolynomial::from_json(&j).unwrap(), f);
    }

    #[test]
    fn even_substitution() {
        let f = p(&[q(16), q(0), q(-14), q(0), q(1)]);
        let g = f.even_part_in_square().unwrap();
        assert_eq!(g, p(&[q(16), q(-14), q(1)]));
        assert_eq!(g.substitute_square(), f);
        assert_eq!(
            RationalPolynomial::t().rescale_argument(&q(3)),
            p(&[q(0), q(3)])
        );
    }
}
