//! Linear maps between exterior powers, as matrices in the lexicographic basis.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exterior::{merge_sign, BasisIndex, KForm};
use crate::linalg::{MatrixJson, RationalMatrix};
use crate::scalar::{self, binomial, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearOperator {
    pub dim: usize,
    pub k_in: usize,
    pub k_out: usize,
    pub name: String,
    pub kappa: Q,
    pub matrix: RationalMatrix,
}

impl LinearOperator {
    pub fn new(dim: usize, k_in: usize, k_out: usize, name: impl Into<String>, matrix: RationalMatrix) -> Result<Self> {
        let (r, c) = (binomial(dim, k_out) as usize, binomial(dim, k_in) as usize);
        if k_in > dim || k_out > dim || matrix.rows() != r || matrix.cols() != c {
            return domain(format!(
                "{}x{} matrix cannot map Lambda^{k_in} to Lambda^{k_out} on R^{dim}",
                matrix.rows(),
                matrix.cols()
            ));
        }
        Ok(Self { dim, k_in, k_out, name: name.into(), kappa: Q::one(), matrix })
    }

    pub fn identity(dim: usize, k: usize) -> Result<Self> {
        Self::new(dim, k, k, "id", RationalMatrix::identity(binomial(dim, k) as usize))
    }

    pub fn zero(dim: usize, k_in: usize, k_out: usize) -> Result<Self> {
        let m = RationalMatrix::zeros(binomial(dim, k_out) as usize, binomial(dim, k_in) as usize);
        Self::new(dim, k_in, k_out, "0", m)
    }

    /// Hodge star `Lambda^k -> Lambda^{D-k}`.
    pub fn hodge(dim: usize, k: usize) -> Result<Self> {
        let src = BasisIndex::new(dim, k)?;
        let dst = BasisIndex::new(dim, dim - k)?;
        let full = (1u64 << dim) as u32 - 1;
        let triplets = src.masks().iter().enumerate().map(|(j, &m)| {
            let c = full & !m;
            let s = merge_sign(m, c);
            (dst.position_of_mask(c).expect("complement"), j, scalar::q(s as i64))
        });
        let m = RationalMatrix::from_triplets(dst.len(), src.len(), triplets)?;
        Self::new(dim, k, dim - k, "*", m)
    }

    pub fn is_square(&self) -> bool {
        self.k_in == self.k_out
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn apply(&self, f: &KForm) -> Result<KForm> {
        if f.dim() != self.dim || f.degree() != self.k_in {
            return domain(format!(
                "{} expects a {}-form on R^{}, got a {}-form on R^{}",
                self.name,
                self.k_in,
                self.dim,
                f.degree(),
                f.dim()
            ));
        }
        let out = self.matrix.mul_vec(&f.to_vector())?;
        KForm::from_vector(self.dim, self.k_out, &out)
    }

    /// `self o other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim || self.k_in != other.k_out {
            return domain(format!("cannot compose {} after {}", self.name, other.name));
        }
        Ok(Self {
            dim: self.dim,
            k_in: other.k_in,
            k_out: self.k_out,
            name: format!("{}.{}", self.name, other.name),
            kappa: self.kappa.clone(),
            matrix: self.matrix.mul(&other.matrix)?,
        })
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim || self.k_in != other.k_in || self.k_out != other.k_out {
            return domain(format!("{} and {} act between different spaces", self.name, other.name));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self { matrix: self.matrix.add(&other.matrix)?, name: format!("{}+{}", self.name, other.name), ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self { matrix: self.matrix.sub(&other.matrix)?, name: format!("{}-{}", self.name, other.name), ..self.clone() })
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self { matrix: self.matrix.scale(s), name: format!("{}*{}", scalar::display(s), self.name), ..self.clone() }
    }

    pub fn trace(&self) -> Result<Q> {
        if !self.is_square() {
            return domain("trace of a non-square operator");
        }
        Ok(self.matrix.trace())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn to_json(&self) -> OperatorJson {
        OperatorJson {
            dim: self.dim,
            k_in: self.k_in,
            k_out: self.k_out,
            omega_name: self.name.clone(),
            kappa: scalar::to_string(&self.kappa),
            matrix: self.matrix.to_json(),
        }
    }

    pub fn from_json(json: &OperatorJson) -> Result<Self> {
        let mut op = Self::new(
            json.dim,
            json.k_in,
            json.k_out,
            json.omega_name.clone(),
            RationalMatrix::from_json(&json.matrix)?,
        )?;
        op.kappa = scalar::parse(&json.kappa)?;
        Ok(op)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: OperatorJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&j)
    }

    /// Whether `self = s * other` for some scalar `s`; returns `s` (zero if both vanish).
    pub fn proportionality(&self, other: &Self) -> Option<Q> {
        proportionality(&self.matrix, &other.matrix)
    }
}

/// The unique `s` with `a = s * b`, if it exists; `Some(0)` when `a = 0`.
pub fn proportionality(a: &RationalMatrix, b: &RationalMatrix) -> Option<Q> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return None;
    }
    let mut s: Option<Q> = None;
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let (x, y) = (a.get(i, j), b.get(i, j));
            if y.is_zero() {
                if !x.is_zero() {
                    return None;
                }
                continue;
            }
            match &s {
                None => s = Some(x / y),
                Some(s) => {
                    if &(s * y) != x {
                        return None;
                    }
                }
            }
        }
    }
    Some(s.unwrap_or_else(Q::zero))
}

/// Header plus sparse matrix, flattened into one JSON object.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OperatorJson {
    #[serde(rename = "D")]
    pub dim: usize,
    pub k_in: usize,
    pub k_out: usize,
    pub omega_name: String,
    pub kappa: String,
    #[serde(flatten)]
    pub matrix: MatrixJson,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn hodge_squares() {
        for d in 1..=6 {
            for k in 0..=d {
                let s = LinearOperator::hodge(d, k).unwrap();
                let back = LinearOperator::hodge(d, d - k).unwrap();
                let sq = back.compose(&s).unwrap();
                let sign = if (k * (d - k)) % 2 == 0 { 1 } else { -1 };
                assert_eq!(sq.matrix, RationalMatrix::scalar(sq.matrix.rows(), &q(sign)));
            }
        }
    }

    #[test]
    fn shapes_and_json() {
        assert!(LinearOperator::new(4, 1, 2, "x", RationalMatrix::zeros(4, 4)).is_err());
        let h = LinearOperator::hodge(4, 1).unwrap();
        let back = LinearOperator::from_json_str(&h.to_json_string()).unwrap();
        assert_eq!(back, h);
        let s = h.to_json_string();
        assert!(s.starts_with(r#"{"D":4,"k_in":1,"k_out":3,"omega_name":"*","kappa":"1/1","rows":4"#));
        let e1 = KForm::basis_form(4, &[1]).unwrap();
        assert!(h.apply(&e1.wedge(&e1).unwrap()).is_err());
        assert_eq!(h.scale(&q(2)).proportionality(&h), Some(q(2)));
    }
}
