//! Dense exact matrices over Q with zero-skipping kernels.
//!
//! The operators handled here are at most a few hundred rows and very
//! sparse, so products and eliminations iterate over nonzero entries only.

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::polynomial::RationalPolynomial;
use crate::scalar::{self, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Q::one();
        }
        m
    }

    pub fn scalar(n: usize, s: &Q) -> Self {
        Self::identity(n).scale(s)
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return domain("ragged rows");
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, cols: &[Vec<Q>]) -> Result<Self> {
        if cols.iter().any(|c| c.len() != n) {
            return domain("column length mismatch");
        }
        let mut m = Self::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    m.data[i * m.cols + j] = x.clone();
                }
            }
        }
        Ok(m)
    }

    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, Q)>) -> Result<Self> {
        let mut m = Self::zeros(rows, cols);
        for (i, j, v) in triplets {
            if i >= rows || j >= cols {
                return domain(format!("entry ({i}, {j}) outside {rows}x{cols}"));
            }
            m.data[i * cols + j] += v;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if !v.is_zero() {
                    t.data[j * self.rows + i] = v.clone();
                }
            }
        }
        t
    }

    pub fn scale(&self, s: &Q) -> Self {
        let data = if s.is_zero() {
            vec![Q::zero(); self.data.len()]
        } else {
            self.data.iter().map(|x| if x.is_zero() { Q::zero() } else { x * s }).collect()
        };
        Self { rows: self.rows, cols: self.cols, data }
    }

    fn same_shape(&self, other: &Self, what: &str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return domain(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "add")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "sub")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    /// `self + s * id`.
    pub fn add_scalar(&self, s: &Q) -> Result<Self> {
        if !self.is_square() {
            return domain("add_scalar on a non-square matrix");
        }
        let mut m = self.clone();
        for i in 0..self.rows {
            m.data[i * self.cols + i] += s;
        }
        Ok(m)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return domain(format!(
                "mul: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        let b_rows = other.sparse_rows();
        let n = other.cols;
        let data: Vec<Q> = (0..self.rows)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut acc = vec![Q::zero(); n];
                for (k, a) in self.row(i).iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in &b_rows[k] {
                        acc[*j] += a * b;
                    }
                }
                acc
            })
            .collect();
        Ok(Self { rows: self.rows, cols: n, data })
    }

    pub fn mul_vec(&self, v: &[Q]) -> Result<Vec<Q>> {
        if v.len() != self.cols {
            return domain(format!("mul_vec: {} columns, vector of {}", self.cols, v.len()));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    pub(crate) fn sparse_rows(&self) -> Vec<Vec<(usize, Q)>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone()))
                    .collect()
            })
            .collect()
    }

    /// Reduced row echelon form, rank and pivot columns.
    pub fn rref(&self) -> (Self, usize, Vec<usize>) {
        let mut rows: Vec<Vec<Q>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let pivots = rref_in_place(&mut rows, self.cols);
        let rank = pivots.len();
        let m = Self { rows: self.rows, cols: self.cols, data: rows.into_iter().flatten().collect() };
        (m, rank, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Basis of the null space; vector `i` has a 1 in the `i`-th free column
    /// and zeros in all other free columns.
    pub fn kernel_basis(&self) -> Vec<Vec<Q>> {
        let (r, rank, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (row, &p) in pivots.iter().enumerate().take(rank) {
                    let x = r.get(row, f);
                    if !x.is_zero() {
                        v[p] = -x.clone();
                    }
                }
                v
            })
            .collect()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Minimal polynomial: least common multiple of the minimal polynomials
    /// of the standard basis vectors, which span the space.
    pub fn minimal_polynomial(&self) -> Result<RationalPolynomial> {
        if !self.is_square() {
            return domain("minimal polynomial of a non-square matrix");
        }
        if self.rows == 0 {
            return Ok(RationalPolynomial::one());
        }
        let sparse = self.sparse_rows();
        let polys: Vec<RationalPolynomial> = (0..self.cols)
            .into_par_iter()
            .map(|j| {
                let mut e = vec![Q::zero(); self.cols];
                e[j] = Q::one();
                krylov_minimal_polynomial(&sparse, e)
            })
            .collect();
        // identical per-vector polynomials are common; dedup before the LCM
        let mut uniq: Vec<RationalPolynomial> = Vec::new();
        for p in polys {
            if !uniq.contains(&p) {
                uniq.push(p);
            }
        }
        Ok(uniq.iter().fold(RationalPolynomial::one(), |acc, p| acc.lcm(p)))
    }

    /// Minimal polynomial of a single vector under this matrix.
    pub fn vector_minimal_polynomial(&self, v: &[Q]) -> Result<RationalPolynomial> {
        if !self.is_square() || v.len() != self.cols {
            return domain("vector minimal polynomial: shape mismatch");
        }
        Ok(krylov_minimal_polynomial(&self.sparse_rows(), v.to_vec()))
    }

    pub fn to_json(&self) -> MatrixJson {
        let mut triplets = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if !v.is_zero() {
                    triplets.push((i, j, scalar::to_string(v)));
                }
            }
        }
        MatrixJson { rows: self.rows, cols: self.cols, triplets }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self> {
        let t = json
            .triplets
            .iter()
            .map(|(i, j, s)| Ok((*i, *j, scalar::parse(s)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_triplets(json.rows, json.cols, t)
    }

    /// First entry where `self` and `other` differ, for failure reports.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize, Q, Q)> {
        if self.rows != other.rows || self.cols != other.cols {
            return None;
        }
        (0..self.rows * self.cols)
            .find(|&n| self.data[n] != other.data[n])
            .map(|n| (n / self.cols, n % self.cols, self.data[n].clone(), other.data[n].clone()))
    }
}

fn rref_in_place(rows: &mut [Vec<Q>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Q::one() / &rows[r][c];
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let support: Vec<(usize, Q)> = rows[r]
            .iter()
            .enumerate()
            .skip(c)
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x.clone()))
            .collect();
        let (head, tail) = rows.split_at_mut(r);
        let (_, tail) = tail.split_first_mut().expect("pivot row");
        let eliminate = |row: &mut Vec<Q>| {
            if row[c].is_zero() {
                return;
            }
            let f = row[c].clone();
            for (j, x) in &support {
                row[*j] -= &f * x;
            }
        };
        if head.len() + tail.len() > 64 {
            head.par_iter_mut().for_each(eliminate);
            tail.par_iter_mut().for_each(eliminate);
        } else {
            head.iter_mut().for_each(eliminate);
            tail.iter_mut().for_each(eliminate);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn sparse_mul_vec(rows: &[Vec<(usize, Q)>], v: &[Q]) -> Vec<Q> {
    rows.iter()
        .map(|row| {
            row.iter()
                .filter(|(j, _)| !v[*j].is_zero())
                .map(|(j, a)| a * &v[*j])
                .sum()
        })
        .collect()
}

/// Minimal polynomial of `v` by Krylov iteration with incremental elimination.
fn krylov_minimal_polynomial(rows: &[Vec<(usize, Q)>], v: Vec<Q>) -> RationalPolynomial {
    if v.iter().all(Zero::is_zero) {
        return RationalPolynomial::one();
    }
    // each entry: reduced vector w, its pivot, and p with w = p(M) v
    let mut basis: Vec<(Vec<Q>, usize, RationalPolynomial)> = Vec::new();
    let mut power = v;
    let mut degree = 0usize;
    loop {
        let mut w = power.clone();
        let mut coeffs = vec![Q::zero(); degree + 1];
        coeffs[degree] = Q::one();
        let mut p = RationalPolynomial::new(coeffs);
        for (b, piv, bp) in &basis {
            if w[*piv].is_zero() {
                continue;
            }
            let f = &w[*piv] / &b[*piv];
            for (x, y) in w.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            p = &p - &bp.scale(&f);
        }
        match w.iter().position(|x| !x.is_zero()) {
            None => return p.monic(),
            Some(piv) => basis.push((w, piv, p)),
        }
        power = sparse_mul_vec(rows, &power);
        degree += 1;
    }
}

/// Horner evaluation `p(M)`.
pub fn poly_eval_matrix(p: &RationalPolynomial, m: &RationalMatrix) -> Result<RationalMatrix> {
    if !m.is_square() {
        return domain("polynomial evaluation at a non-square matrix");
    }
    let n = m.rows();
    let mut acc = RationalMatrix::zeros(n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(m)?.add_scalar(c)?;
    }
    Ok(acc)
}

/// A subspace of Q^n held in reduced echelon form, for coordinates and
/// restrictions of operators.
#[derive(Clone, Debug)]
pub struct Subspace {
    n: usize,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(n: usize, vectors: &[Vec<Q>]) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != n) {
            return domain("subspace: vector length mismatch");
        }
        let mut rows = vectors.to_vec();
        let pivots = rref_in_place(&mut rows, n);
        rows.truncate(pivots.len());
        Ok(Self { n, rows, pivots })
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.rows
    }

    /// Coordinates in the echelon basis, or `None` if `v` is not in the span.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        let coords: Vec<Q> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut r = v.to_vec();
        for (c, row) in coords.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= c * y;
                }
            }
        }
        r.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Matrix of `m` restricted to this subspace; errors if not invariant.
    pub fn restrict(&self, m: &RationalMatrix) -> Result<RationalMatrix> {
        let cols = self
            .rows
            .iter()
            .map(|b| {
                let img = m.mul_vec(b)?;
                self.coordinates(&img)
                    .ok_or_else(|| Error::Contract("subspace is not invariant".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        RationalMatrix::from_columns(self.dim(), &cols)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return domain("subspace intersection: ambient mismatch");
        }
        // solve sum a_i r_i = sum b_j s_j
        let mut cols: Vec<Vec<Q>> = self.rows.clone();
        cols.extend(other.rows.iter().map(|s| s.iter().map(|x| -x.clone()).collect()));
        let m = RationalMatrix::from_columns(self.n, &cols)?;
        let vecs = m
            .kernel_basis()
            .into_iter()
            .map(|k| {
                let mut v = vec![Q::zero(); self.n];
                for (a, r) in k.iter().zip(&self.rows) {
                    if a.is_zero() {
                        continue;
                    }
                    for (x, y) in v.iter_mut().zip(r) {
                        *x += a * y;
                    }
                }
                v
            })
            .collect::<Vec<_>>();
        Self::span(self.n, &vecs)
    }
}

/// Wire format `{"rows": r, "cols": c, "triplets": [[i, j, "p/q"], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub triplets: Vec<(usize, usize, String)>,
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(scalar::display).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qf};

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn rref_rank_kernel() {
        assert_eq!(RationalMatrix::identity(3).rank(), 3);
        assert_eq!(RationalMatrix::zeros(3, 4).rank(), 0);
        assert!(RationalMatrix::identity(3).kernel_basis().is_empty());
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let (r, rank, piv) = a.rref();
        assert_eq!((rank, piv), (2, vec![0, 1]));
        assert_eq!(r.rref().0, r);
        let ker = a.kernel_basis();
        assert_eq!(ker.len(), 1);
        assert!(a.mul_vec(&ker[0]).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn minimal_polynomials() {
        let id = RationalMatrix::identity(3);
        assert_eq!(id.minimal_polynomial().unwrap(), RationalPolynomial::linear(q(1)));
        // rotation by 90 degrees: t^2 + 1
        let j = m(&[&[0, -1], &[1, 0]]);
        assert_eq!(j.minimal_polynomial().unwrap(), RationalPolynomial::t2_plus(q(1)));
        // Jordan block: (t - 2)^2
        let jb = m(&[&[2, 1], &[0, 2]]);
        let p = jb.minimal_polynomial().unwrap();
        assert_eq!(p, RationalPolynomial::from_roots(&[q(2), q(2)]));
        assert!(poly_eval_matrix(&p, &jb).unwrap().is_zero());
        let d = RationalMatrix::from_triplets(3, 3, [(0, 0, q(1)), (1, 1, qf(-1, 2)), (2, 2, q(1))]).unwrap();
        assert_eq!(d.minimal_polynomial().unwrap(), RationalPolynomial::from_roots(&[q(1), qf(-1, 2)]));
        assert_eq!(poly_eval_matrix(&RationalPolynomial::t(), &d).unwrap(), d);
    }

    #[test]
    fn subspace_restriction() {
        let a = m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 5]]);
        let s = Subspace::span(3, &[vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]]).unwrap();
        let r = s.restrict(&a).unwrap();
        assert_eq!(r.minimal_polynomial().unwrap(), RationalPolynomial::t2_plus(q(-1)));
        let bad = Subspace::span(3, &[vec![q(1), q(0), q(0)]]).unwrap();
        assert!(bad.restrict(&a).is_err());
        let t = Subspace::span(3, &[vec![q(1), q(1), q(0)], vec![q(0), q(0), q(1)]]).unwrap();
        assert_eq!(s.intersect(&t).unwrap().dim(), 1);
    }

    #[test]
    fn json_roundtrip() {
        let a = RationalMatrix::from_triplets(2, 3, [(0, 2, qf(3, 4)), (1, 0, q(-1))]).unwrap();
        let j = a.to_json();
        assert_eq!(
            serde_json::to_string(&j).unwrap(),
            r#"{"rows":2,"cols":3,"triplets":[[0,2,"3/4"],[1,0,"-1/1"]]}"#
        );
        assert_eq!(RationalMatrix::from_json(&j).unwrap(), a);
    }
}
