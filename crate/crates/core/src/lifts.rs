//! Lifting forms from R^n to R^{n+2} and the three-block splitting
//! `Lambda^k R^{n+2} = Lambda^k R^n + Lambda^{k-1} R^n (x) R^2 + Lambda^{k-2} R^n (x) Lambda^2 R^2`.

use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::exterior::{BasisIndex, KForm};
use crate::linalg::RationalMatrix;
use crate::operator::LinearOperator;
use crate::scalar::Q;

/// The same components, read in a larger ambient space.
pub fn trivial_lift(f: &KForm, dim: usize) -> Result<KForm> {
    if dim < f.dim() {
        return domain(format!("cannot lift from R^{} to R^{dim}", f.dim()));
    }
    KForm::from_terms(dim, f.degree(), f.terms().map(|(i, c)| (i.indices(), c.clone())))
}

/// `*_{dim}` of the trivial lift.
pub fn hodge_dual_lift(f: &KForm, dim: usize) -> Result<KForm> {
    Ok(trivial_lift(f, dim)?.hodge_star())
}

/// Positions of the three blocks inside the lexicographic basis of
/// `Lambda^k R^{base+2}`. Block 2 is ordered `(A, e_{base+1}), (A, e_{base+2})`
/// with `A` running over `Lambda^{k-1} R^base`; every identification
/// `e_A (x) e_t -> e_{A t}` is sign-free because `t` exceeds all of `A`.
#[derive(Clone, Debug)]
pub struct SplitBasis {
    pub dim_total: usize,
    pub dim_base: usize,
    pub k: usize,
    pub blocks: [Vec<usize>; 3],
}

impl SplitBasis {
    pub fn new(dim_base: usize, k: usize) -> Result<Self> {
        let dim_total = dim_base + 2;
        let total = BasisIndex::new(dim_total, k)?;
        let a = 1u32 << dim_base;
        let b = 1u32 << (dim_base + 1);
        let lift = |deg: usize, extra: &[u32]| -> Vec<usize> {
            if deg > dim_base {
                return Vec::new();
            }
            let base = BasisIndex::new(dim_base, deg).expect("degree checked");
            base.masks()
                .iter()
                .flat_map(|&m| extra.iter().map(move |&e| m | e))
                .map(|m| total.position_of_mask(m).expect("basis element"))
                .collect()
        };
        let b1 = lift(k, &[0]);
        let b2 = if k >= 1 { lift(k - 1, &[a, b]) } else { Vec::new() };
        let b3 = if k >= 2 { lift(k - 2, &[a | b]) } else { Vec::new() };
        debug_assert_eq!(b1.len() + b2.len() + b3.len(), total.len());
        Ok(Self { dim_total, dim_base, k, blocks: [b1, b2, b3] })
    }

    pub fn sizes(&self) -> [usize; 3] {
        [self.blocks[0].len(), self.blocks[1].len(), self.blocks[2].len()]
    }
}

/// `3 x 3` grid of blocks of a square operator; `blocks[r][c]` maps block `c` to block `r`.
#[derive(Clone, Debug)]
pub struct BlockGrid {
    pub blocks: Vec<Vec<RationalMatrix>>,
}

impl BlockGrid {
    pub fn block(&self, r: usize, c: usize) -> &RationalMatrix {
        &self.blocks[r][c]
    }

    /// `(row, col)` of the nonzero blocks, 1-based.
    pub fn nonzero_pattern(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..3 {
            for c in 0..3 {
                if !self.blocks[r][c].is_zero() {
                    out.push((r + 1, c + 1));
                }
            }
        }
        out
    }
}

pub fn block_decompose(op: &LinearOperator, split: &SplitBasis) -> Result<BlockGrid> {
    if !op.is_square() || op.dim != split.dim_total || op.k_in != split.k {
        return domain("operator does not act on the split space");
    }
    let blocks = (0..3)
        .map(|r| {
            (0..3)
                .map(|c| {
                    let rows = &split.blocks[r];
                    let cols = &split.blocks[c];
                    let mut m = RationalMatrix::zeros(rows.len(), cols.len());
                    for (i, &gi) in rows.iter().enumerate() {
                        for (j, &gj) in cols.iter().enumerate() {
                            let v = op.matrix.get(gi, gj);
                            if !v.is_zero() {
                                m.set(i, j, v.clone());
                            }
                        }
                    }
                    m
                })
                .collect()
        })
        .collect();
    Ok(BlockGrid { blocks })
}

/// Kronecker product `a (x) b` with `a`-major ordering.
pub fn kron(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            for p in 0..b.rows() {
                for q in 0..b.cols() {
                    let y = b.get(p, q);
                    if !y.is_zero() {
                        m.set(i * b.rows() + p, j * b.cols() + q, x * y);
                    }
                }
            }
        }
    }
    m
}

/// Hodge star on the extra plane in the basis `(e_{n+1}, e_{n+2})`.
pub fn plane_star() -> RationalMatrix {
    let mut s = RationalMatrix::zeros(2, 2);
    s.set(1, 0, Q::one());
    s.set(0, 1, -Q::one());
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::spin7_four_form;
    use crate::scalar::binomial;

    #[test]
    fn lifts_of_spin7_form() {
        let th = spin7_four_form();
        let lifted = trivial_lift(&th, 10).unwrap();
        assert_eq!(lifted.len(), 14);
        let dual = hodge_dual_lift(&th, 10).unwrap();
        let eps = KForm::basis_form(10, &[9, 10]).unwrap();
        assert_eq!(dual, lifted.wedge(&eps).unwrap());
        assert_eq!(dual.inner_product(&dual).unwrap(), th.inner_product(&th).unwrap());
        assert!(trivial_lift(&th, 7).is_err());
        let twice = trivial_lift(&trivial_lift(&th, 9).unwrap(), 10).unwrap();
        assert_eq!(twice, lifted);
        let one = KForm::one(3).unwrap();
        assert_eq!(hodge_dual_lift(&one, 3).unwrap(), KForm::basis_form(3, &[1, 2, 3]).unwrap());
    }

    #[test]
    fn split_sizes() {
        for k in 0..=10 {
            let s = SplitBasis::new(8, k).unwrap();
            let [a, b, c] = s.sizes();
            assert_eq!(a + b + c, binomial(10, k) as usize);
            let mut all: Vec<usize> = s.blocks.concat();
            all.sort();
            all.dedup();
            assert_eq!(all.len(), binomial(10, k) as usize);
        }
        assert_eq!(SplitBasis::new(8, 5).unwrap().sizes(), [56, 140, 56]);
    }

    #[test]
    fn plane_star_squares_to_minus_one() {
        let s = plane_star();
        assert_eq!(s.mul(&s).unwrap(), RationalMatrix::identity(2).scale(&-Q::one()));
    }
}
