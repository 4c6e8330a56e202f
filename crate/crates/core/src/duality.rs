//! The duality operator `b_Omega` and the related index contractions.
//!
//! Every map here has the shape
//! `F -> Alt[ sum_{j_1..j_n} Omega_{j_1..j_n a..} F_{j_1..j_n b..} ]`
//! with contracted indices first in both factors and a weight-one
//! antisymmetrizer over the free indices. With `n` contractions this equals
//! `n!/C(k_out, l-n) * sum_{|J|=n} (i_J Omega) ^ (i_J F)`, which is what is
//! assembled (a column per basis form, over the sparse support of `Omega`).

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::exterior::{merge_sign, BasisIndex, KForm};
use crate::linalg::{poly_eval_matrix, RationalMatrix};
use crate::operator::LinearOperator;
use crate::polynomial::RationalPolynomial;
use crate::scalar::{self, binomial, factorial, Q};

/// Global normalization of the assembly, fixed by the `Lambda^3 R^8` anchor.
pub fn kappa() -> Q {
    Q::one()
}

/// Subsets of `mask` with exactly `n` bits.
pub(crate) fn subsets_of_size(mask: u32, n: usize) -> Vec<u32> {
    let bits: Vec<u32> = (0..32).filter(|b| mask >> b & 1 == 1).map(|b| 1u32 << b).collect();
    let mut out = Vec::new();
    fn rec(bits: &[u32], n: usize, acc: u32, out: &mut Vec<u32>) {
        if n == 0 {
            out.push(acc);
            return;
        }
        if bits.len() < n {
            return;
        }
        rec(&bits[1..], n - 1, acc | bits[0], out);
        rec(&bits[1..], n, acc, out);
    }
    rec(&bits, n, 0, &mut out);
    out
}

/// Matrix of `F -> Alt[Omega_{J a} F^J_b]` with `n` contracted indices,
/// from `Lambda^{k_in}` to `Lambda^{l + k_in - 2n}`.
pub fn contraction_matrix(omega: &KForm, n: usize, k_in: usize) -> Result<(usize, RationalMatrix)> {
    let dim = omega.dim();
    let l = omega.degree();
    if n > l || n > k_in {
        return domain(format!("cannot contract {n} indices of a {l}-form with a {k_in}-form"));
    }
    let k_out = l + k_in - 2 * n;
    if k_out > dim {
        return domain(format!("contraction lands in Lambda^{k_out} R^{dim}"));
    }
    let src = BasisIndex::new(dim, k_in)?;
    let dst = BasisIndex::new(dim, k_out)?;
    let weight = Q::new(
        factorial(n).into(),
        binomial(k_out, l - n).into(),
    ) * kappa();
    let terms: Vec<(u32, Q)> = omega
        .mask_terms()
        .into_iter()
        .map(|(m, c)| (m, c * &weight))
        .collect();
    let columns: Vec<Vec<(usize, Q)>> = src
        .masks()
        .par_iter()
        .map(|&fi| {
            let mut col: Vec<(usize, Q)> = Vec::new();
            for (w, c) in &terms {
                for j in subsets_of_size(w & fi, n) {
                    let a = w & !j;
                    let b = fi & !j;
                    if a & b != 0 {
                        continue;
                    }
                    let s = merge_sign(j, a) * merge_sign(j, b) * merge_sign(a, b);
                    let row = dst.position_of_mask(a | b).expect("basis element");
                    let v = if s < 0 { -c.clone() } else { c.clone() };
                    match col.iter_mut().find(|(r, _)| *r == row) {
                        Some((_, x)) => *x += v,
                        None => col.push((row, v)),
                    }
                }
            }
            col
        })
        .collect();
    let triplets = columns
        .into_iter()
        .enumerate()
        .flat_map(|(j, col)| col.into_iter().map(move |(i, v)| (i, j, v)));
    Ok((k_out, RationalMatrix::from_triplets(dst.len(), src.len(), triplets)?))
}

/// `b_Omega` restricted to one exterior power.
#[derive(Clone, Debug)]
pub struct DualityOperator {
    pub omega: KForm,
    pub k: usize,
    /// Half the degree of `Omega` (rounded down for odd degree).
    pub m: usize,
    pub op: LinearOperator,
    /// Set when the operator vanishes for degree reasons (odd degree or `k < m`).
    pub degenerate: bool,
}

pub fn build_duality_operator(omega: &KForm, name: &str, k: usize) -> Result<DualityOperator> {
    let dim = omega.dim();
    let l = omega.degree();
    if k > dim {
        return domain(format!("degree {k} exceeds dimension {dim}"));
    }
    let m = l / 2;
    let mut op = if l % 2 == 1 || k < m {
        LinearOperator::zero(dim, k, k)?
    } else {
        let (_, mat) = contraction_matrix(omega, m, k)?;
        LinearOperator::new(dim, k, k, name, mat)?
    };
    op.name = name.to_string();
    op.kappa = kappa();
    Ok(DualityOperator {
        omega: omega.clone(),
        k,
        m,
        degenerate: l % 2 == 1 || k < m,
        op,
    })
}

impl DualityOperator {
    pub fn apply(&self, f: &KForm) -> Result<KForm> {
        self.op.apply(f)
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.op.matrix
    }

    pub fn dim(&self) -> usize {
        self.op.dim
    }

    /// `transpose = (-1)^m * self`.
    pub fn has_expected_symmetry(&self) -> bool {
        let t = self.op.matrix.transpose();
        if self.m.is_multiple_of(2) {
            t == self.op.matrix
        } else {
            t == self.op.matrix.scale(&-Q::one())
        }
    }
}

/// The six contractions of a 4-form on R^8 with forms of degree 1 to 5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Contraction {
    /// `Lambda^5 -> Lambda^3`, three indices contracted.
    D,
    /// `Lambda^3 -> Lambda^5`, one index contracted.
    DTilde,
    /// `Lambda^4 -> Lambda^2`.
    C,
    /// `Lambda^2 -> Lambda^4`.
    CTilde,
    /// `Lambda^3 -> Lambda^1`.
    E,
    /// `Lambda^1 -> Lambda^3`.
    ETilde,
}

impl Contraction {
    pub const ALL: [Contraction; 6] = [Self::D, Self::DTilde, Self::C, Self::CTilde, Self::E, Self::ETilde];

    /// `(contracted indices, input degree)`.
    pub fn shape(self) -> (usize, usize) {
        match self {
            Self::D => (3, 5),
            Self::DTilde => (1, 3),
            Self::C => (3, 4),
            Self::CTilde => (1, 2),
            Self::E => (3, 3),
            Self::ETilde => (1, 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::D => "d",
            Self::DTilde => "d~",
            Self::C => "c",
            Self::CTilde => "c~",
            Self::E => "e",
            Self::ETilde => "e~",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown contraction {s:?}")))
    }
}

pub fn contraction_map(theta: &KForm, which: Contraction) -> Result<LinearOperator> {
    if theta.degree() != 4 || theta.dim() != 8 {
        return domain("contraction maps need a 4-form on R^8");
    }
    let (n, k_in) = which.shape();
    let (k_out, m) = contraction_matrix(theta, n, k_in)?;
    LinearOperator::new(8, k_in, k_out, which.name(), m)
}

/// Spectral projections of an order-two operator.
pub fn order2_projections(
    b: &LinearOperator,
    beta1: &Q,
    beta2: &Q,
) -> Result<(LinearOperator, LinearOperator)> {
    if beta1 == beta2 {
        return Err(Error::Contract("order-two projections need distinct roots".into()));
    }
    if !b.is_square() {
        return domain("projections of a non-square operator");
    }
    let rel = RationalPolynomial::from_roots([beta1, beta2]);
    if !poly_eval_matrix(&rel, &b.matrix)?.is_zero() {
        return Err(Error::Contract(format!(
            "{} does not satisfy (t - {})(t - {}) = 0",
            b.name,
            scalar::display(beta1),
            scalar::display(beta2)
        )));
    }
    let n = b.matrix.rows();
    // pi_1 = (b - beta2) / (beta1 - beta2), pi_2 = (b - beta1) / (beta2 - beta1)
    let p1 = b.matrix.add_scalar(&-beta2.clone())?.scale(&(Q::one() / (beta1 - beta2)));
    let p2 = RationalMatrix::identity(n).sub(&p1)?;
    Ok((
        LinearOperator::new(b.dim, b.k_in, b.k_in, format!("pi[{}]", scalar::display(beta1)), p1)?,
        LinearOperator::new(b.dim, b.k_in, b.k_in, format!("pi[{}]", scalar::display(beta2)), p2)?,
    ))
}

/// Outcome of an exact identity check with the first offending entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl IdentityCheck {
    pub fn compare(name: impl Into<String>, lhs: &RationalMatrix, rhs: &RationalMatrix) -> Self {
        let name = name.into();
        match lhs.first_difference(rhs) {
            None if lhs.rows() == rhs.rows() && lhs.cols() == rhs.cols() => {
                Self { name, holds: true, detail: "exact".into() }
            }
            None => Self { name, holds: false, detail: "shape mismatch".into() },
            Some((i, j, a, b)) => Self {
                name,
                holds: false,
                detail: format!("entry ({i}, {j}): {} vs {}", scalar::display(&a), scalar::display(&b)),
            },
        }
    }
}

/// Hodge compatibility of `b_Omega` between `Lambda^k` and `Lambda^{D-k}`,
/// plus, in the middle degree `D = 4m, k = 2m`, commutation with `*`.
pub fn hodge_compat_check(omega: &KForm, k: usize) -> Result<Vec<IdentityCheck>> {
    let dim = omega.dim();
    let l = omega.degree();
    if k > dim {
        return domain(format!("degree {k} exceeds dimension {dim}"));
    }
    let m = l / 2;
    if l % 2 == 1 || k < m || dim - k < m {
        return domain("b_Omega is not defined on both Lambda^k and Lambda^{D-k}");
    }
    let b_k = build_duality_operator(omega, "b", k)?.op;
    let b_c = build_duality_operator(omega, "b", dim - k)?.op;
    let star = LinearOperator::hodge(dim, k)?;
    let star_back = LinearOperator::hodge(dim, dim - k)?;
    let lhs = star_back
        .compose(&b_c)?
        .compose(&star)?
        .scale(&scalar::q(binomial(dim - k, m) as i64));
    let sign = if (k * (dim - k)).is_multiple_of(2) { 1 } else { -1 };
    let rhs = b_k.scale(&scalar::q(sign * binomial(k, m) as i64));
    let mut out = vec![IdentityCheck::compare(
        format!("C({},{m}) * b * = (-1)^{} C({k},{m}) b on Lambda^{k}", dim - k, k * (dim - k)),
        &lhs.matrix,
        &rhs.matrix,
    )];
    if dim == 4 * m && k == 2 * m && m > 0 {
        let b_dual = build_duality_operator(&omega.hodge_star(), "b*", k)?.op;
        let star_b = star.compose(&b_k)?;
        let b_star = b_k.compose(&star)?;
        out.push(IdentityCheck::compare("* b = b_{*Omega}", &star_b.matrix, &b_dual.matrix));
        out.push(IdentityCheck::compare("* b = b *", &star_b.matrix, &b_star.matrix));
    }
    Ok(out)
}

/// `F -> F` restricted to kernels: whether `b(v) = 0` for every anti-self-dual `v`
/// in the middle degree (`*v = -v`).
pub fn anti_self_dual_in_kernel(b: &LinearOperator) -> Result<bool> {
    let dim = b.dim;
    if !b.is_square() || 2 * b.k_in != dim {
        return domain("middle-degree operator required");
    }
    let star = LinearOperator::hodge(dim, b.k_in)?;
    let asd = star.matrix.add_scalar(&Q::one())?.kernel_basis();
    for v in asd {
        if !b.matrix.mul_vec(&v)?.iter().all(Zero::is_zero) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn volume(dim: usize) -> KForm {
        KForm::basis_form(dim, &(1..=dim).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn subsets() {
        assert_eq!(subsets_of_size(0b1011, 2).len(), 3);
        assert_eq!(subsets_of_size(0b1011, 0), vec![0]);
        assert!(subsets_of_size(0b1, 2).is_empty());
    }

    #[test]
    fn two_form_on_vectors() {
        // b_{e12}(e1) = e2, b_{e12}(e2) = -e1
        let b = build_duality_operator(&KForm::basis_form(2, &[1, 2]).unwrap(), "J", 1).unwrap();
        assert_eq!(b.apply(&KForm::basis_form(2, &[1]).unwrap()).unwrap(), KForm::basis_form(2, &[2]).unwrap());
        assert_eq!(b.matrix().minimal_polynomial().unwrap(), RationalPolynomial::t2_plus(q(1)));
        assert!(b.has_expected_symmetry());
    }

    #[test]
    fn odd_and_oversized_forms_vanish() {
        let odd = KForm::basis_form(5, &[1, 2, 3]).unwrap();
        let b = build_duality_operator(&odd, "x", 3).unwrap();
        assert!(b.degenerate && b.op.is_zero());
        let big = volume(4);
        let b = build_duality_operator(&big, "vol", 1).unwrap();
        assert!(b.degenerate && b.op.is_zero());
    }

    #[test]
    fn volume_form_is_hodge_star_in_middle_degree() {
        // on R^4, b_vol on Lambda^2 is proportional to *
        let b = build_duality_operator(&volume(4), "vol", 2).unwrap();
        let star = LinearOperator::hodge(4, 2).unwrap();
        assert_eq!(b.op.proportionality(&star), Some(q(2)));
    }

    #[test]
    fn projections() {
        let b = build_duality_operator(&volume(4), "vol", 2).unwrap();
        let (p1, p2) = order2_projections(&b.op, &q(2), &q(-2)).unwrap();
        assert_eq!(p1.matrix.rank(), 3);
        assert_eq!(p2.matrix.rank(), 3);
        assert_eq!(p1.compose(&p1).unwrap().matrix, p1.matrix);
        assert!(order2_projections(&b.op, &q(2), &q(2)).is_err());
        assert!(order2_projections(&b.op, &q(2), &q(-1)).is_err());
    }

    #[test]
    fn zero_form_compat() {
        let z = KForm::zero(6, 2).unwrap();
        assert!(hodge_compat_check(&z, 2).unwrap().iter().all(|c| c.holds));
    }
}
