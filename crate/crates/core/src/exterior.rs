//! Multi-indices and sparse exterior forms over R^D with the Euclidean metric.
//!
//! A k-form is stored on the basis `e_{i1...ik}` with `i1 < ... < ik`, ordered
//! lexicographically. Coefficients are exact rationals and zero coefficients
//! are never stored. Components of the underlying antisymmetric tensor are
//! `F_{i1...ik} = coefficient of e_{i1...ik}`, so `<a, b>` on the basis is the
//! full index contraction divided by `k!`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::scalar::{self, Q};

/// Largest ambient dimension supported by the bitmask kernels.
pub const MAX_DIM: usize = 31;

/// Strictly increasing index tuple with entries in `1..=dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    indices: Vec<u8>,
    dim: u8,
}

impl MultiIndex {
    pub fn new(dim: usize, indices: &[usize]) -> Result<Self> {
        if dim > MAX_DIM {
            return domain(format!("dimension {dim} exceeds {MAX_DIM}"));
        }
        if indices.len() > dim {
            return domain(format!("{} indices in dimension {dim}", indices.len()));
        }
        for w in indices.windows(2) {
            if w[0] >= w[1] {
                return domain(format!("indices {indices:?} not strictly increasing"));
            }
        }
        if let Some(&i) = indices.iter().find(|&&i| i == 0 || i > dim) {
            return domain(format!("index {i} outside 1..={dim}"));
        }
        Ok(Self {
            indices: indices.iter().map(|&i| i as u8).collect(),
            dim: dim as u8,
        })
    }

    pub(crate) fn from_mask(dim: usize, mask: u32) -> Self {
        let indices = (0..dim as u8).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
        Self { indices, dim: dim as u8 }
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.indices.iter().map(|&i| i as usize).collect()
    }

    pub(crate) fn mask(&self) -> u32 {
        self.indices.iter().fold(0, |m, &i| m | 1 << (i - 1))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e")?;
        if self.indices.is_empty() {
            return write!(f, "()");
        }
        let sep = if self.dim > 9 { "," } else { "" };
        let parts: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join(sep))
    }
}

/// Sign of the permutation sorting the concatenation of two disjoint sorted
/// index sets given as bitmasks: `(-1)^{#{(x, y) : x in a, y in b, x > y}}`.
#[inline]
pub(crate) fn merge_sign(a: u32, b: u32) -> i32 {
    debug_assert_eq!(a & b, 0);
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let y = rest.trailing_zeros();
        rest &= rest - 1;
        let above = if y >= 31 { 0 } else { a >> (y + 1) };
        inversions += above.count_ones();
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sorts `indices`, returning the sorted tuple and the permutation sign, or
/// `None` if an index repeats.
pub fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = indices.to_vec();
    let mut sign = 1;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// Brings a component `coeff * e_{indices}` to the sorted basis. Returns
/// `Ok(None)` when an index repeats (the component vanishes).
pub fn normalize_component(
    dim: usize,
    indices: &[usize],
    coeff: Q,
) -> Result<Option<(MultiIndex, Q)>> {
    if let Some(&i) = indices.iter().find(|&&i| i == 0 || i > dim) {
        return domain(format!("index {i} outside 1..={dim}"));
    }
    Ok(sort_with_sign(indices).map(|(sorted, sign)| {
        let idx = MultiIndex::new(dim, &sorted).expect("sorted and in range");
        (idx, if sign < 0 { -coeff } else { coeff })
    }))
}

fn check_degree(dim: usize, k: usize) -> Result<()> {
    if dim > MAX_DIM {
        return domain(format!("dimension {dim} exceeds {MAX_DIM}"));
    }
    if k > dim {
        return domain(format!("degree {k} exceeds dimension {dim}"));
    }
    Ok(())
}

/// All `C(dim, k)` basis multi-indices in lexicographic order.
pub fn basis(dim: usize, k: usize) -> Result<Vec<MultiIndex>> {
    check_degree(dim, k)?;
    Ok(basis_masks(dim, k)
        .into_iter()
        .map(|m| MultiIndex::from_mask(dim, m))
        .collect())
}

pub(crate) fn basis_masks(dim: usize, k: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(scalar::binomial(dim, k) as usize);
    let mut cur: Vec<usize> = (0..k).collect();
    if k > dim {
        return out;
    }
    loop {
        out.push(cur.iter().fold(0u32, |m, &b| m | 1 << b));
        // advance to the next combination in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + dim - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Position lookup for the lexicographic basis of one `Lambda^k R^dim`.
#[derive(Clone, Debug)]
pub struct BasisIndex {
    pub dim: usize,
    pub degree: usize,
    masks: Vec<u32>,
    position: HashMap<u32, usize>,
}

impl BasisIndex {
    pub fn new(dim: usize, degree: usize) -> Result<Self> {
        check_degree(dim, degree)?;
        let masks = basis_masks(dim, degree);
        let position = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        Ok(Self { dim, degree, masks, position })
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub(crate) fn masks(&self) -> &[u32] {
        &self.masks
    }

    pub(crate) fn position_of_mask(&self, mask: u32) -> Option<usize> {
        self.position.get(&mask).copied()
    }

    pub fn position(&self, idx: &MultiIndex) -> Option<usize> {
        self.position_of_mask(idx.mask())
    }

    pub fn multi_index(&self, pos: usize) -> MultiIndex {
        MultiIndex::from_mask(self.dim, self.masks[pos])
    }
}

/// Sparse exterior form of fixed degree on R^dim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KForm {
    dim: usize,
    degree: usize,
    terms: BTreeMap<MultiIndex, Q>,
}

impl KForm {
    pub fn zero(dim: usize, degree: usize) -> Result<Self> {
        check_degree(dim, degree)?;
        Ok(Self { dim, degree, terms: BTreeMap::new() })
    }

    /// The unit scalar `1 in Lambda^0`.
    pub fn one(dim: usize) -> Result<Self> {
        Self::basis_form(dim, &[])
    }

    /// `e_{indices}`; unsorted indices are normalized with their sign.
    pub fn basis_form(dim: usize, indices: &[usize]) -> Result<Self> {
        Self::from_terms(dim, indices.len(), [(indices.to_vec(), Q::one())])
    }

    /// Sums arbitrary (possibly unsorted or repeated) components.
    pub fn from_terms<I>(dim: usize, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Q)>,
    {
        let mut form = Self::zero(dim, degree)?;
        for (idx, c) in terms {
            if idx.len() != degree {
                return domain(format!(
                    "component {idx:?} has length {} but the form has degree {degree}",
                    idx.len()
                ));
            }
            if let Some((mi, c)) = normalize_component(dim, &idx, c)? {
                form.add_term(mi, c);
            }
        }
        Ok(form)
    }

    pub(crate) fn from_mask_terms(dim: usize, degree: usize, terms: impl IntoIterator<Item = (u32, Q)>) -> Self {
        let mut form = Self { dim, degree, terms: BTreeMap::new() };
        for (m, c) in terms {
            form.add_term(MultiIndex::from_mask(dim, m), c);
        }
        form
    }

    fn add_term(&mut self, idx: MultiIndex, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(idx).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            // keep the map canonical: no stored zeros
            let key = self.terms.iter().find(|(_, v)| v.is_zero()).map(|(k, _)| k.clone());
            if let Some(key) = key {
                self.terms.remove(&key);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Q)> {
        self.terms.iter()
    }

    pub(crate) fn mask_terms(&self) -> Vec<(u32, Q)> {
        self.terms.iter().map(|(k, v)| (k.mask(), v.clone())).collect()
    }

    /// Coefficient of `e_{indices}` for any ordering of `indices`.
    pub fn component(&self, indices: &[usize]) -> Q {
        match sort_with_sign(indices) {
            None => Q::zero(),
            Some((sorted, sign)) => {
                let Ok(idx) = MultiIndex::new(self.dim, &sorted) else {
                    return Q::zero();
                };
                let c = self.terms.get(&idx).cloned().unwrap_or_else(Q::zero);
                if sign < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    fn same_space(&self, other: &Self, what: &str) -> Result<()> {
        if self.dim != other.dim || self.degree != other.degree {
            return domain(format!(
                "{what}: Lambda^{} R^{} vs Lambda^{} R^{}",
                self.degree, self.dim, other.degree, other.dim
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_space(other, "add")?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self { dim: self.dim, degree: self.degree, terms: BTreeMap::new() };
        }
        let terms = self.terms.iter().map(|(k, v)| (k.clone(), v * s)).collect();
        Self { dim: self.dim, degree: self.degree, terms }
    }

    /// Exterior product; the zero form of degree `p + q` when `p + q > dim`.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return domain(format!("wedge: dimensions {} and {}", self.dim, other.dim));
        }
        let degree = self.degree + other.degree;
        if degree > self.dim {
            return Ok(Self { dim: self.dim, degree, terms: BTreeMap::new() });
        }
        let mut acc: BTreeMap<u32, Q> = BTreeMap::new();
        for (a, x) in &self.terms {
            let ma = a.mask();
            for (b, y) in &other.terms {
                let mb = b.mask();
                if ma & mb != 0 {
                    continue;
                }
                let v = x * y;
                let v = if merge_sign(ma, mb) < 0 { -v } else { v };
                *acc.entry(ma | mb).or_insert_with(Q::zero) += v;
            }
        }
        Ok(Self::from_mask_terms(self.dim, degree, acc))
    }

    /// Hodge star with `*(e_I) = sgn(I, I^c) e_{I^c}`, so `*1 = e_{1...D}`.
    pub fn hodge_star(&self) -> Self {
        let full = if self.dim == 32 { u32::MAX } else { (1u32 << self.dim) - 1 };
        let terms = self.terms.iter().map(|(k, v)| {
            let m = k.mask();
            let c = full & !m;
            let v = if merge_sign(m, c) < 0 { -v.clone() } else { v.clone() };
            (c, v)
        });
        Self::from_mask_terms(self.dim, self.dim - self.degree, terms)
    }

    /// Orthonormal-basis inner product; the full contraction is `k!` times this.
    pub fn inner_product(&self, other: &Self) -> Result<Q> {
        self.same_space(other, "inner_product")?;
        Ok(self
            .terms
            .iter()
            .filter_map(|(k, v)| other.terms.get(k).map(|w| v * w))
            .sum())
    }

    /// Interior product with `e_J`: `i_J e_I = sgn(J, I \ J) e_{I \ J}` for `J` in `I`.
    pub fn interior(&self, j: &MultiIndex) -> Result<Self> {
        if j.dim() != self.dim || j.len() > self.degree {
            return domain("interior product: incompatible multi-index");
        }
        let mj = j.mask();
        let terms = self.terms.iter().filter_map(|(k, v)| {
            let m = k.mask();
            (m & mj == mj).then(|| {
                let rest = m & !mj;
                let v = if merge_sign(mj, rest) < 0 { -v.clone() } else { v.clone() };
                (rest, v)
            })
        });
        Ok(Self::from_mask_terms(self.dim, self.degree - j.len(), terms))
    }

    /// Coefficient vector on the lexicographic basis.
    pub fn to_vector(&self) -> Vec<Q> {
        let basis = BasisIndex::new(self.dim, self.degree).expect("valid degree");
        let mut v = vec![Q::zero(); basis.len()];
        for (k, c) in &self.terms {
            v[basis.position(k).expect("basis element")] = c.clone();
        }
        v
    }

    pub fn from_vector(dim: usize, degree: usize, v: &[Q]) -> Result<Self> {
        let basis = BasisIndex::new(dim, degree)?;
        if v.len() != basis.len() {
            return domain(format!(
                "vector of length {} for Lambda^{degree} R^{dim} (dim {})",
                v.len(),
                basis.len()
            ));
        }
        Ok(Self::from_mask_terms(
            dim,
            degree,
            basis.masks().iter().zip(v).map(|(&m, c)| (m, c.clone())),
        ))
    }

    /// Largest absolute coefficient; used for quick reporting only.
    pub fn max_abs(&self) -> Q {
        self.terms.values().map(|v| v.abs()).max().unwrap_or_else(Q::zero)
    }

    pub fn to_json(&self) -> KFormJson {
        KFormJson {
            dim: self.dim,
            k: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(idx, c)| TermJson { idx: idx.indices(), c: scalar::to_string(c) })
                .collect(),
        }
    }

    pub fn from_json(json: &KFormJson) -> Result<Self> {
        let terms = json
            .terms
            .iter()
            .map(|t| Ok((t.idx.clone(), scalar::parse(&t.c)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(json.dim, json.k, terms)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: KFormJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&json)
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, v) in &self.terms {
            let neg = v.is_negative();
            let mag = v.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            if !mag.is_one() {
                write!(f, "{}*", scalar::display(&mag))?;
            }
            write!(f, "{k}")?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub idx: Vec<usize>,
    pub c: String,
}

/// Wire format `{"D": int, "k": int, "terms": [{"idx": [...], "c": "p/q"}]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct KFormJson {
    #[serde(rename = "D")]
    pub dim: usize,
    pub k: usize,
    pub terms: Vec<TermJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn e(dim: usize, idx: &[usize]) -> KForm {
        KForm::basis_form(dim, idx).unwrap()
    }

    #[test]
    fn basis_enumeration() {
        let b = basis(3, 2).unwrap();
        let got: Vec<Vec<usize>> = b.iter().map(|m| m.indices()).collect();
        assert_eq!(got, vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(basis(8, 0).unwrap(), vec![MultiIndex::new(8, &[]).unwrap()]);
        assert_eq!(basis(8, 4).unwrap().len(), 70);
        assert_eq!(basis(10, 5).unwrap().len(), 252);
        assert!(basis(3, 4).is_err());
        let b = basis(6, 3).unwrap();
        assert!(b.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn normalize_examples() {
        let (i, c) = normalize_component(8, &[2, 1], q(1)).unwrap().unwrap();
        assert_eq!((i.indices(), c), (vec![1, 2], q(-1)));
        assert!(normalize_component(8, &[1, 1], q(5)).unwrap().is_none());
        let (i, c) = normalize_component(8, &[4, 3, 5], q(2)).unwrap().unwrap();
        assert_eq!((i.indices(), c), (vec![3, 4, 5], q(-2)));
        assert!(normalize_component(4, &[5], q(1)).is_err());
        // idempotent on sorted input
        let (i, c) = normalize_component(8, &[3, 4, 5], q(2)).unwrap().unwrap();
        assert_eq!((i.indices(), c), (vec![3, 4, 5], q(2)));
    }

    #[test]
    fn multi_index_validation() {
        assert!(MultiIndex::new(4, &[2, 1]).is_err());
        assert!(MultiIndex::new(4, &[0]).is_err());
        assert!(MultiIndex::new(4, &[1, 1]).is_err());
        assert_eq!(MultiIndex::new(10, &[1, 10]).unwrap().to_string(), "e1,10");
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(e(4, &[1]).wedge(&e(4, &[2])).unwrap(), e(4, &[1, 2]));
        assert!(e(4, &[1, 2]).wedge(&e(4, &[1, 3])).unwrap().is_zero());
        assert_eq!(e(4, &[2]).wedge(&e(4, &[1])).unwrap(), e(4, &[1, 2]).scale(&q(-1)));
        assert_eq!(e(4, &[1, 2]).wedge(&e(4, &[1, 2, 3])).unwrap().degree(), 5);
        assert!(e(4, &[1]).wedge(&e(5, &[2])).is_err());
    }

    #[test]
    fn hodge_examples() {
        assert_eq!(e(8, &[1, 2, 3, 4]).hodge_star(), e(8, &[5, 6, 7, 8]));
        assert_eq!(KForm::one(4).unwrap().hodge_star(), e(4, &[1, 2, 3, 4]));
        assert_eq!(e(4, &[1, 3]).hodge_star(), e(4, &[2, 4]).scale(&q(-1)));
        for k in 0..=5 {
            for idx in basis(5, k).unwrap() {
                let f = KForm::basis_form(5, &idx.indices()).unwrap();
                let sign = if (k * (5 - k)) % 2 == 0 { 1 } else { -1 };
                assert_eq!(f.hodge_star().hodge_star(), f.scale(&q(sign)));
            }
        }
    }

    #[test]
    fn inner_and_interior() {
        assert_eq!(e(4, &[1, 2]).inner_product(&e(4, &[1, 2])).unwrap(), q(1));
        assert!(e(4, &[1, 2]).inner_product(&e(4, &[1])).is_err());
        let j = MultiIndex::new(5, &[2]).unwrap();
        // i_{e2} e_{123} = -e_{13}
        assert_eq!(e(5, &[1, 2, 3]).interior(&j).unwrap(), e(5, &[1, 3]).scale(&q(-1)));
    }

    #[test]
    fn canonical_sparsity_and_json() {
        let f = KForm::from_terms(4, 2, [(vec![1, 2], q(1)), (vec![2, 1], q(1))]).unwrap();
        assert!(f.is_zero());
        let g = KForm::from_terms(5, 2, [(vec![3, 1], qf(-3, 2)), (vec![2, 5], q(4))]).unwrap();
        let s = g.to_json_string();
        assert_eq!(s, r#"{"D":5,"k":2,"terms":[{"idx":[1,3],"c":"3/2"},{"idx":[2,5],"c":"4/1"}]}"#);
        assert_eq!(KForm::from_json_str(&s).unwrap(), g);
        assert_eq!(KForm::from_vector(5, 2, &g.to_vector()).unwrap(), g);
    }

    use crate::scalar::qf;
}
