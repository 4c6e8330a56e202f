//! Direct contractions on fully expanded index tuples.
//!
//! This path never touches bitmasks or interior products: forms are expanded
//! to every ordering of their indices, contracted slot by slot, and the result
//! is antisymmetrized by sorting. It exists to cross-check the assembled
//! operator matrices.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{domain, Result};
use crate::exterior::{sort_with_sign, KForm};
use crate::scalar::{binomial, factorial, Q};

/// All orderings of a sorted index tuple with their permutation signs.
pub fn orderings(idx: &[usize]) -> Vec<(Vec<usize>, i32)> {
    let mut out = Vec::new();
    let mut cur = idx.to_vec();
    permute(&mut cur, 0, 1, &mut out);
    out
}

fn permute(v: &mut Vec<usize>, start: usize, sign: i32, out: &mut Vec<(Vec<usize>, i32)>) {
    if start + 1 >= v.len() {
        out.push((v.clone(), sign));
        return;
    }
    for i in start..v.len() {
        v.swap(start, i);
        permute(v, start + 1, if i == start { sign } else { -sign }, out);
        v.swap(start, i);
    }
}

/// Expanded components `(ordered indices, value)` of a form.
pub fn expand(f: &KForm) -> Vec<(Vec<usize>, Q)> {
    let mut out = Vec::new();
    for (idx, c) in f.terms() {
        for (ord, s) in orderings(&idx.indices()) {
            out.push((ord, if s < 0 { -c.clone() } else { c.clone() }));
        }
    }
    out
}

/// `Alt[ sum_{j_1..j_n} Omega_{j a} F_{j b} ]`, summing `j` over all ordered
/// tuples and antisymmetrizing the free indices with weight one.
pub fn direct_contraction(omega: &KForm, f: &KForm, n: usize) -> Result<KForm> {
    if omega.dim() != f.dim() {
        return domain("direct contraction: dimension mismatch");
    }
    let (l, k) = (omega.degree(), f.degree());
    if n > l || n > k {
        return domain("direct contraction: too many contracted indices");
    }
    let k_out = l + k - 2 * n;
    let mut by_prefix: HashMap<Vec<usize>, Vec<(Vec<usize>, Q)>> = HashMap::new();
    for (ord, c) in expand(f) {
        by_prefix.entry(ord[..n].to_vec()).or_default().push((ord[n..].to_vec(), c));
    }
    let mut acc: HashMap<Vec<usize>, Q> = HashMap::new();
    for (ord, w) in expand(omega) {
        let Some(matches) = by_prefix.get(&ord[..n]) else { continue };
        for (rest, c) in matches {
            let mut full = ord[n..].to_vec();
            full.extend_from_slice(rest);
            if let Some((sorted, s)) = sort_with_sign(&full) {
                let v = &w * c;
                *acc.entry(sorted).or_insert_with(Q::zero) += if s < 0 { -v } else { v };
            }
        }
    }
    // every sorted output collects each of its k_out! orderings once
    let norm = Q::from_integer(factorial(k_out).into());
    KForm::from_terms(
        omega.dim(),
        k_out,
        acc.into_iter().map(|(idx, v)| (idx, v / &norm)),
    )
}

/// `b_Omega(F)` by direct contraction (zero for odd degree or `k < m`).
pub fn direct_duality_apply(omega: &KForm, f: &KForm) -> Result<KForm> {
    let l = omega.degree();
    let m = l / 2;
    if l % 2 == 1 || f.degree() < m {
        return KForm::zero(f.dim(), f.degree());
    }
    direct_contraction(omega, f, m)
}

/// The weight-one generalized Kronecker delta `delta^{upper}_{lower}`.
pub fn kronecker(upper: &[usize], lower: &[usize]) -> Q {
    if upper.len() != lower.len() {
        return Q::zero();
    }
    match (sort_with_sign(upper), sort_with_sign(lower)) {
        (Some((a, s)), Some((b, t))) if a == b => {
            Q::new((s * t).into(), factorial(upper.len()).into())
        }
        _ => Q::zero(),
    }
}

/// Number of sorted basis elements of `Lambda^k R^dim` (convenience re-export).
pub fn dim_lambda(dim: usize, k: usize) -> usize {
    binomial(dim, k) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qf};

    #[test]
    fn orderings_signs() {
        let o = orderings(&[1, 2, 3]);
        assert_eq!(o.len(), 6);
        for (v, s) in o {
            assert_eq!(sort_with_sign(&v).unwrap().1, s);
        }
    }

    #[test]
    fn delta() {
        assert_eq!(kronecker(&[1, 2], &[1, 2]), qf(1, 2));
        assert_eq!(kronecker(&[1, 2], &[2, 1]), qf(-1, 2));
        assert_eq!(kronecker(&[1, 1], &[1, 1]), q(0));
        assert_eq!(kronecker(&[3], &[3]), q(1));
    }

    #[test]
    fn contraction_of_vector_with_two_form() {
        let j = KForm::basis_form(2, &[1, 2]).unwrap();
        let e1 = KForm::basis_form(2, &[1]).unwrap();
        assert_eq!(direct_duality_apply(&j, &e1).unwrap(), KForm::basis_form(2, &[2]).unwrap());
    }
}
