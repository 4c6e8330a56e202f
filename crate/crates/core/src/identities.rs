//! Quadratic identities of a 4-form: trace identities of `Theta (x) Theta`,
//! the recursion for powers of `b_Theta` on `Lambda^4`, and the three-term
//! decomposition of `Theta (x) Theta`.
//!
//! Tensors here live on full index slots (every ordering stored), so these
//! checks share no code with the bitmask assembly of the duality operator.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rayon::prelude::*;

use crate::duality::{build_duality_operator, IdentityCheck};
use crate::error::Result;
use crate::exterior::{sort_with_sign, BasisIndex, KForm};
use crate::linalg::{poly_eval_matrix, RationalMatrix};
use crate::polynomial::RationalPolynomial;
use crate::scalar::{self, factorial, q, qf, Q};
use crate::tensor::expand;

type Tensor = HashMap<Vec<u8>, Q>;

fn full_tensor(f: &KForm) -> Tensor {
    expand(f).into_iter().map(|(i, c)| (i.into_iter().map(|x| x as u8).collect(), c)).collect()
}

/// `out = sum a[la] b[lb]` over repeated labels, Einstein style.
fn einsum(a: &Tensor, la: &str, b: &Tensor, lb: &str, out: &str) -> Tensor {
    let la: Vec<char> = la.chars().collect();
    let lb: Vec<char> = lb.chars().collect();
    let shared: Vec<char> = la.iter().copied().filter(|c| lb.contains(c)).collect();
    let pos = |labels: &[char], c: char| labels.iter().position(|&x| x == c).expect("label");
    let mut by_key: HashMap<Vec<u8>, Vec<(&Vec<u8>, &Q)>> = HashMap::new();
    for (idx, v) in b {
        let key = shared.iter().map(|&c| idx[pos(&lb, c)]).collect();
        by_key.entry(key).or_default().push((idx, v));
    }
    let source: Vec<(bool, usize)> = out
        .chars()
        .map(|c| match la.iter().position(|&x| x == c) {
            Some(p) => (true, p),
            None => (false, pos(&lb, c)),
        })
        .collect();
    let mut acc = Tensor::new();
    for (ia, va) in a {
        let key: Vec<u8> = shared.iter().map(|&c| ia[pos(&la, c)]).collect();
        let Some(matches) = by_key.get(&key) else { continue };
        for (ib, vb) in matches {
            let idx = source.iter().map(|&(from_a, p)| if from_a { ia[p] } else { ib[p] }).collect();
            *acc.entry(idx).or_insert_with(Q::zero) += va * *vb;
        }
    }
    acc.retain(|_, v| !v.is_zero());
    acc
}

/// Weight-one antisymmetrization over consecutive index groups, returned on
/// sorted representatives (each group strictly increasing).
fn alt_sorted(t: &Tensor, groups: &[usize]) -> Tensor {
    let norm: Q = groups.iter().map(|&g| Q::from_integer(factorial(g).into())).product();
    let mut acc = Tensor::new();
    'entries: for (idx, v) in t {
        let mut key = Vec::with_capacity(idx.len());
        let mut sign = 1;
        let mut start = 0;
        for &g in groups {
            let part: Vec<usize> = idx[start..start + g].iter().map(|&x| x as usize).collect();
            let Some((sorted, s)) = sort_with_sign(&part) else { continue 'entries };
            key.extend(sorted.into_iter().map(|x| x as u8));
            sign *= s;
            start += g;
        }
        let c = if sign < 0 { -v } else { v.clone() };
        *acc.entry(key).or_insert_with(Q::zero) += c;
    }
    acc.retain(|_, v| !v.is_zero());
    acc.values_mut().for_each(|v| *v /= &norm);
    acc
}

/// Sorted-representative part of a tensor antisymmetric in each group.
fn sorted_part(t: &Tensor, groups: &[usize]) -> Tensor {
    t.iter()
        .filter(|(idx, _)| {
            let mut start = 0;
            groups.iter().all(|&g| {
                let ok = idx[start..start + g].windows(2).all(|w| w[0] < w[1]);
                start += g;
                ok
            })
        })
        .map(|(i, v)| (i.clone(), v.clone()))
        .collect()
}

fn add_scaled(a: &mut Tensor, b: &Tensor, s: &Q) {
    for (i, v) in b {
        *a.entry(i.clone()).or_insert_with(Q::zero) += v * s;
    }
    a.retain(|_, v| !v.is_zero());
}

fn compare_tensors(name: &str, lhs: &Tensor, rhs: &Tensor) -> IdentityCheck {
    let mut keys: Vec<&Vec<u8>> = lhs.keys().chain(rhs.keys()).collect();
    keys.sort();
    keys.dedup();
    let zero = Q::zero();
    for k in keys {
        let (a, b) = (lhs.get(k).unwrap_or(&zero), rhs.get(k).unwrap_or(&zero));
        if a != b {
            return IdentityCheck {
                name: name.into(),
                holds: false,
                detail: format!("slot {k:?}: {} vs {}", scalar::display(a), scalar::display(b)),
            };
        }
    }
    IdentityCheck { name: name.into(), holds: true, detail: format!("exact on {} slots", lhs.len()) }
}

/// Sorted-representative tensor `c * delta^{upper}_{lower}` (weight one) on
/// `p + p` slots.
fn delta_sorted(dim: usize, p: usize, c: &Q) -> Tensor {
    let w = c / Q::from_integer(factorial(p).into());
    BasisIndex::new(dim, p)
        .map(|b| {
            (0..b.len())
                .map(|j| {
                    let idx: Vec<u8> = b.multi_index(j).indices().iter().map(|&x| x as u8).collect();
                    ([idx.clone(), idx].concat(), w.clone())
                })
                .collect()
        })
        .unwrap_or_default()
}

/// The four contractions of `Theta (x) Theta` over 1, 2, 3, 4 index pairs,
/// against
///
/// * `Theta_ijko Theta^lmno = 6 delta^lmn_ijk - 9 Theta_[ij^[lm delta^n]_k]`
/// * `Theta_ijmn Theta^klmn = 12 delta^kl_ij - 4 Theta_ij^kl`
/// * `Theta_iklm Theta^jklm = 42 delta_i^j`
/// * `Theta_ijkl Theta^ijkl = 336`
///
/// Both sides are antisymmetric in each free index group, so comparing sorted
/// representatives is an entrywise comparison.
pub fn theta_trace_identities(theta: &KForm) -> Vec<IdentityCheck> {
    let names = [
        "1-fold: 6 delta3 - 9 Alt(Theta delta)",
        "2-fold: 12 delta2 - 4 Theta",
        "3-fold: 42 delta",
        "4-fold: 336",
    ];
    if theta.degree() != 4 {
        return names
            .iter()
            .map(|n| IdentityCheck { name: n.to_string(), holds: false, detail: "not a 4-form".into() })
            .collect();
    }
    let dim = theta.dim();
    let t = full_tensor(theta);

    let lhs1 = sorted_part(&einsum(&t, "ijko", &t, "lmno", "ijklmn"), &[3, 3]);
    let mut base = Tensor::new();
    for (idx, v) in &t {
        for n in 1..=dim as u8 {
            // Theta_{ij lm} delta^n_k, slots (i j k | l m n)
            base.insert(vec![idx[0], idx[1], n, idx[2], idx[3], n], v.clone());
        }
    }
    let mut rhs1 = delta_sorted(dim, 3, &q(6));
    add_scaled(&mut rhs1, &alt_sorted(&base, &[3, 3]), &q(-9));

    let lhs2 = sorted_part(&einsum(&t, "ijmn", &t, "klmn", "ijkl"), &[2, 2]);
    let mut rhs2 = delta_sorted(dim, 2, &q(12));
    add_scaled(&mut rhs2, &sorted_part(&t, &[2, 2]), &q(-4));

    let lhs3 = einsum(&t, "iklm", &t, "jklm", "ij");
    let rhs3: Tensor = (1..=dim as u8).map(|i| (vec![i, i], q(42))).collect();

    let full: Q = t.values().map(|v| v * v).sum();
    let check4 = IdentityCheck {
        name: names[3].into(),
        holds: full == q(336),
        detail: format!("full contraction = {}", scalar::display(&full)),
    };
    vec![
        compare_tensors(names[0], &lhs1, &rhs1),
        compare_tensors(names[1], &lhs2, &rhs2),
        compare_tensors(names[2], &lhs3, &rhs3),
        check4,
    ]
}

/// The three quadratic operators on `Lambda^4` built from two copies of `Theta`:
/// `A(F) = Alt Theta^mn_ij Theta^op_kl F_mnop`,
/// `B(F) = Alt Theta_ijk^p Theta^rsn_l F_pnrs`,
/// `C(F) = Theta_ijkl Theta^prsn F_prsn`.
pub fn quadratic_operators(theta: &KForm) -> Result<[RationalMatrix; 3]> {
    let basis = BasisIndex::new(theta.dim(), 4)?;
    let t = full_tensor(theta);
    let n = basis.len();
    let columns: Vec<[Vec<Q>; 3]> = (0..n)
        .into_par_iter()
        .map(|j| {
            let f = full_tensor(&KForm::basis_form(theta.dim(), &basis.multi_index(j).indices()).expect("basis"));
            let x = einsum(&t, "mnij", &f, "mnop", "ijop");
            let a = alt_sorted(&einsum(&x, "ijop", &t, "opkl", "ijkl"), &[4]);
            let y = einsum(&t, "rsnl", &f, "pnrs", "lp");
            let b = alt_sorted(&einsum(&t, "ijkp", &y, "lp", "ijkl"), &[4]);
            let s: Q = f.iter().map(|(i, v)| t.get(i).map_or_else(Q::zero, |w| w * v)).sum();
            let c: Tensor = sorted_part(&t, &[4]).into_iter().map(|(i, v)| (i, v * &s)).collect();
            [a, b, c].map(|m| to_vector(&basis, &m))
        })
        .collect();
    let pick = |r: usize| -> Result<RationalMatrix> {
        let cols: Vec<Vec<Q>> = columns.iter().map(|c| c[r].clone()).collect();
        RationalMatrix::from_columns(n, &cols)
    };
    Ok([pick(0)?, pick(1)?, pick(2)?])
}

fn to_vector(basis: &BasisIndex, t: &Tensor) -> Vec<Q> {
    let mut v = vec![Q::zero(); basis.len()];
    for (idx, c) in t {
        let mask = idx.iter().fold(0u32, |m, &i| m | 1 << (i - 1));
        v[basis.position_of_mask(mask).expect("sorted basis element")] = c.clone();
    }
    v
}

/// The quintic annihilating `b_Theta` on `Lambda^4`.
pub fn lambda4_quintic() -> RationalPolynomial {
    RationalPolynomial::new(vec![q(0), q(-16), qf(20, 3), q(20), qf(25, 3), q(1)])
}

/// Powers of `b_Theta` on `Lambda^4` expressed through `id`, lower powers and
/// the quadratic operators, each as an exact matrix identity (all 70 basis
/// forms at once), and the quintic annihilating `b_Theta`.
pub fn power_recursion_checks(theta: &KForm) -> Result<Vec<IdentityCheck>> {
    let b = build_duality_operator(theta, "b", 4)?.op.matrix;
    let [a, bq, c] = quadratic_operators(theta)?;
    let n = b.rows();
    let id = RationalMatrix::identity(n);
    let b2 = b.mul(&b)?;
    let b3 = b2.mul(&b)?;
    let b4 = b3.mul(&b)?;
    let b5 = b4.mul(&b)?;
    let comb = |terms: &[(&RationalMatrix, Q)]| -> Result<RationalMatrix> {
        terms.iter().try_fold(RationalMatrix::zeros(n, n), |acc, (m, s)| acc.add(&m.scale(s)))
    };
    let mut out = vec![
        IdentityCheck::compare(
            "b^2 = A/6 + 2/3 id - 8/3 b",
            &b2,
            &comb(&[(&a, qf(1, 6)), (&id, qf(2, 3)), (&b, qf(-8, 3))])?,
        ),
        IdentityCheck::compare(
            "b^3 = 4/3 id + 2/3 b - 10/3 b^2 + 2/9 B",
            &b3,
            &comb(&[(&id, qf(4, 3)), (&b, qf(2, 3)), (&b2, qf(-10, 3)), (&bq, qf(2, 9))])?,
        ),
        IdentityCheck::compare(
            "b^4 = 4 b - 8/3 b^2 - 13/3 b^3 + C/9",
            &b4,
            &comb(&[(&b, q(4)), (&b2, qf(-8, 3)), (&b3, qf(-13, 3)), (&c, qf(1, 9))])?,
        ),
        IdentityCheck::compare(
            "b^5 = -25/3 b^4 - 20 b^3 - 20/3 b^2 + 16 b",
            &b5,
            &comb(&[(&b4, qf(-25, 3)), (&b3, q(-20)), (&b2, qf(-20, 3)), (&b, q(16))])?,
        ),
    ];
    let p = lambda4_quintic();
    let pb = poly_eval_matrix(&p, &b)?;
    out.push(IdentityCheck {
        name: format!("({p})(b) = 0"),
        holds: pb.is_zero(),
        detail: if pb.is_zero() { "exact".into() } else { format!("{} nonzero entries", pb.nnz()) },
    });
    Ok(out)
}

/// Result of fitting `Theta_ijkl Theta^mnop = a T1 + b T2 + c T3` with
/// `T1 = Alt Theta_ij^mn delta^op_kl`, `T2 = Alt Theta_ijk^m Theta_l^nop`,
/// `T3 = Alt Theta_ij^mn Theta_kl^op` (antisymmetrized within `ijkl` and `mnop`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquaredDecomposition {
    /// A solution when the system is consistent (free coefficients set to 0).
    pub coefficients: Option<[Q; 3]>,
    pub residual_zero: bool,
    /// Rank of the three-term ansatz.
    pub rank: usize,
    pub equations: usize,
}

/// Exact fit over all `D^8` slots, reduced to sorted representatives of the
/// two antisymmetric groups (every term is antisymmetric in both).
pub fn theta_squared_decomposition(theta: &KForm) -> Result<SquaredDecomposition> {
    let dim = theta.dim();
    let t = full_tensor(theta);
    let mut t1 = Tensor::new();
    for (idx, v) in &t {
        for o in 1..=dim as u8 {
            for p in 1..=dim as u8 {
                // Theta_{ij mn} delta_{ko} delta_{lp}, slots (i j k l | m n o p)
                t1.insert(vec![idx[0], idx[1], o, p, idx[2], idx[3], o, p], v.clone());
            }
        }
    }
    let product = |f: fn(&[u8], &[u8]) -> Vec<u8>| -> Tensor {
        let mut acc = Tensor::new();
        for (x, v) in &t {
            for (y, w) in &t {
                *acc.entry(f(x, y)).or_insert_with(Q::zero) += v * w;
            }
        }
        acc
    };
    // Theta_{ijkm} Theta_{lnop}
    let t2 = product(|x, y| vec![x[0], x[1], x[2], y[0], x[3], y[1], y[2], y[3]]);
    // Theta_{ijmn} Theta_{klop}
    let t3 = product(|x, y| vec![x[0], x[1], y[0], y[1], x[2], x[3], y[2], y[3]]);
    let lhs = sorted_part(&product(|x, y| [x, y].concat()), &[4, 4]);
    let terms = [alt_sorted(&t1, &[4, 4]), alt_sorted(&t2, &[4, 4]), alt_sorted(&t3, &[4, 4])];

    let mut keys: Vec<&Vec<u8>> = lhs.keys().chain(terms.iter().flat_map(|m| m.keys())).collect();
    keys.sort();
    keys.dedup();
    let zero = Q::zero();
    let rows: Vec<Vec<Q>> = keys
        .iter()
        .map(|k| {
            let mut r: Vec<Q> = terms.iter().map(|m| m.get(*k).unwrap_or(&zero).clone()).collect();
            r.push(lhs.get(*k).unwrap_or(&zero).clone());
            r
        })
        .collect();
    let equations = rows.len();
    if rows.is_empty() {
        return Ok(SquaredDecomposition {
            coefficients: Some([Q::zero(), Q::zero(), Q::zero()]),
            residual_zero: true,
            rank: 0,
            equations,
        });
    }
    let aug = RationalMatrix::from_rows(rows)?;
    let (r, rank_aug, pivots) = aug.rref();
    let rank = pivots.iter().filter(|&&p| p < 3).count();
    if rank_aug > rank {
        return Ok(SquaredDecomposition { coefficients: None, residual_zero: false, rank, equations });
    }
    let mut coef = [Q::zero(), Q::zero(), Q::zero()];
    for (row, &p) in pivots.iter().enumerate() {
        coef[p] = r.get(row, 3).clone();
    }
    Ok(SquaredDecomposition { coefficients: Some(coef), residual_zero: true, rank, equations })
}

/// `(b + 3)` has trivial kernel on `Lambda^4`, although `-3` is a root of the
/// annihilating quintic.
pub fn quintic_root_absent(theta: &KForm) -> Result<(BTreeMap<String, usize>, usize)> {
    let b = build_duality_operator(theta, "b", 4)?.op.matrix;
    let roots: BTreeMap<String, usize> =
        lambda4_quintic().rational_roots().into_iter().map(|(r, m)| (scalar::display(&r), m)).collect();
    let k = b.add_scalar(&q(3))?.nullity();
    Ok((roots, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{g2_four_form, spin7_four_form};
    use num_traits::One;

    #[test]
    fn einsum_matches_dense_rule() {
        let mut a = Tensor::new();
        a.insert(vec![1, 2], q(3));
        a.insert(vec![2, 1], q(-3));
        let mut b = Tensor::new();
        b.insert(vec![2], q(5));
        let c = einsum(&a, "ij", &b, "j", "i");
        assert_eq!(c.get(&vec![1u8]), Some(&q(15)));
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn alt_of_symmetric_vanishes() {
        let mut s = Tensor::new();
        s.insert(vec![1, 2], q(1));
        s.insert(vec![2, 1], q(1));
        assert!(alt_sorted(&s, &[2]).is_empty());
        let mut a = Tensor::new();
        a.insert(vec![2, 1], q(1));
        assert_eq!(alt_sorted(&a, &[2]).get(&vec![1u8, 2]), Some(&qf(-1, 2)));
    }

    #[test]
    fn spin7_trace_identities() {
        for c in theta_trace_identities(&spin7_four_form()) {
            assert!(c.holds, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn other_forms_fail_some_identity() {
        let checks = theta_trace_identities(&crate::catalog::z8_four_form());
        assert!(checks.iter().any(|c| !c.holds));
        let g = theta_trace_identities(&g2_four_form());
        assert!(!g[3].holds);
        let three = theta_trace_identities(&crate::catalog::g2_three_form());
        assert!(three.iter().all(|c| !c.holds));
    }

    #[test]
    fn zero_form_decomposes_trivially() {
        let z = KForm::zero(8, 4).unwrap();
        let d = theta_squared_decomposition(&z).unwrap();
        assert_eq!(d.coefficients, Some([q(0), q(0), q(0)]));
        assert!(d.residual_zero);
    }

    #[test]
    fn quintic_roots() {
        let (roots, k) = quintic_root_absent(&spin7_four_form()).unwrap();
        assert_eq!(roots.keys().cloned().collect::<Vec<_>>(), ["-2", "-3", "-4", "0", "2/3"]);
        assert_eq!(k, 0);
        assert!(lambda4_quintic().is_monic());
        assert_eq!(Q::one(), lambda4_quintic().leading());
    }
}
