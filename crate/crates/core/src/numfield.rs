//! Simple algebraic extensions `Q[x]/(f)` for checking eigenvectors whose
//! coefficients involve surds.

use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::exterior::{normalize_component, BasisIndex};
use crate::linalg::RationalMatrix;
use crate::polynomial::RationalPolynomial;
use crate::scalar::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    modulus: RationalPolynomial,
}

/// Element of a number field as a reduced polynomial in the generator.
pub type Elem = RationalPolynomial;

impl NumberField {
    /// `modulus` should be irreducible; inverses fail otherwise.
    pub fn new(modulus: RationalPolynomial) -> Result<Self> {
        if modulus.degree().unwrap_or(0) == 0 {
            return domain("number field modulus must have positive degree");
        }
        Ok(Self { modulus: modulus.monic() })
    }

    /// `Q(sqrt d)`.
    pub fn quadratic(d: i64) -> Self {
        Self::new(RationalPolynomial::t2_plus(Q::from_integer((-d).into()))).expect("degree two")
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("positive degree")
    }

    pub fn reduce(&self, a: &Elem) -> Elem {
        a.div_rem(&self.modulus).expect("nonzero modulus").1
    }

    pub fn rational(&self, q: Q) -> Elem {
        RationalPolynomial::constant(q)
    }

    /// The class of `x`.
    pub fn generator(&self) -> Elem {
        self.reduce(&RationalPolynomial::t())
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a + b
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        a - b
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.reduce(&(a * b))
    }

    pub fn scale(&self, a: &Elem, q: &Q) -> Elem {
        a.scale(q)
    }

    /// Inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        let a = self.reduce(a);
        if a.is_zero() {
            return domain("inverse of zero");
        }
        // invariant: r_i = s_i * a (mod f)
        let (mut r0, mut r1) = (self.modulus.clone(), a);
        let (mut s0, mut s1) = (RationalPolynomial::zero(), RationalPolynomial::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = &s0 - &(&q * &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.degree() != Some(0) {
            return Err(Error::Contract("modulus is reducible".into()));
        }
        Ok(self.reduce(&s0.scale(&(Q::one() / r0.leading()))))
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}

/// A k-form with coefficients in a number field, as a dense vector on the
/// lexicographic basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldForm {
    pub dim: usize,
    pub degree: usize,
    pub coeffs: Vec<Elem>,
}

impl FieldForm {
    /// Sums components given with arbitrary index order.
    pub fn from_terms(field: &NumberField, dim: usize, degree: usize, terms: &[(Vec<usize>, Elem)]) -> Result<Self> {
        let basis = BasisIndex::new(dim, degree)?;
        let mut coeffs = vec![Elem::zero(); basis.len()];
        for (idx, c) in terms {
            if idx.len() != degree {
                return domain(format!("component {idx:?} in a {degree}-form"));
            }
            if let Some((mi, sign)) = normalize_component(dim, idx, Q::one())? {
                let pos = basis.position(&mi).expect("basis element");
                coeffs[pos] = field.reduce(&(&coeffs[pos] + &c.scale(&sign)));
            }
        }
        Ok(Self { dim, degree, coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RationalPolynomial::is_zero)
    }

    pub fn apply(&self, m: &RationalMatrix) -> Result<Self> {
        if m.cols() != self.coeffs.len() || m.rows() != self.coeffs.len() {
            return domain("field form: operator shape mismatch");
        }
        let coeffs = (0..m.rows())
            .map(|i| {
                let mut acc = Elem::zero();
                for (a, c) in m.row(i).iter().zip(&self.coeffs) {
                    if !a.is_zero() && !c.is_zero() {
                        acc = &acc + &c.scale(a);
                    }
                }
                acc
            })
            .collect();
        Ok(Self { coeffs, ..self.clone() })
    }

    pub fn scale(&self, field: &NumberField, s: &Elem) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| field.mul(c, s)).collect(), ..self.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(), ..self.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(), ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qf};

    #[test]
    fn sqrt2_arithmetic() {
        let k = NumberField::quadratic(2);
        let r = k.generator();
        assert_eq!(k.mul(&r, &r), k.rational(q(2)));
        let inv = k.inv(&r).unwrap();
        assert_eq!(inv, r.scale(&qf(1, 2)));
        let one_plus = &k.rational(q(1)) + &r;
        assert_eq!(k.mul(&one_plus, &k.inv(&one_plus).unwrap()), k.rational(q(1)));
        assert!(k.inv(&Elem::zero()).is_err());
    }

    #[test]
    fn quartic_inverse() {
        let f = RationalPolynomial::new(vec![q(16), q(0), q(-14), q(0), q(1)]);
        let k = NumberField::new(f).unwrap();
        let b = k.generator();
        let two_over_b = k.div(&k.rational(q(2)), &b).unwrap();
        assert_eq!(k.mul(&two_over_b, &b), k.rational(q(2)));
    }

    #[test]
    fn field_forms() {
        let k = NumberField::quadratic(2);
        let v = FieldForm::from_terms(&k, 3, 1, &[(vec![1], k.generator()), (vec![2], k.rational(q(1)))]).unwrap();
        let swap = RationalMatrix::from_triplets(3, 3, [(0, 1, q(1)), (1, 0, q(1))]).unwrap();
        let w = v.apply(&swap).unwrap();
        assert_eq!(w.coeffs[0], k.rational(q(1)));
        assert!(w.sub(&w).is_zero());
    }
}
