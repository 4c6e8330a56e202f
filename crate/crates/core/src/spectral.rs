//! Exact spectral reports: minimal polynomial, factor kernels, eigenvalue
//! descriptors and the trace balance, all without leaving Q.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{domain, Error, Result};
use crate::linalg::{poly_eval_matrix, RationalMatrix, Subspace};
use crate::operator::LinearOperator;
use crate::polynomial::RationalPolynomial;
use crate::scalar::{self, rational_root, rational_sqrt, squarefree_split, Q};

/// One eigenvalue, or a conjugate family sharing a Q-irreducible factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EigenvalueDescriptor {
    Rational(Q),
    /// `a + b sqrt(d)` with `b != 0` and `d > 1` squarefree.
    Surd { a: Q, b: Q, d: BigInt },
    /// `+- i mu` with `mu = r sqrt(d)`, `r > 0`, `d >= 1` squarefree.
    ImaginaryPair { r: Q, d: BigInt },
    /// All roots of an irreducible factor no other variant can express.
    Family(RationalPolynomial),
}

impl EigenvalueDescriptor {
    /// Number of distinct complex eigenvalues this entry stands for.
    pub fn count(&self) -> usize {
        match self {
            Self::Rational(_) | Self::Surd { .. } => 1,
            Self::ImaginaryPair { .. } => 2,
            Self::Family(p) => p.degree().unwrap_or(0),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Rational(_) => "rational",
            Self::Surd { .. } => "surd",
            Self::ImaginaryPair { .. } => "imaginary",
            Self::Family(_) => "family",
        }
    }

    /// `mu^2` of an imaginary pair.
    pub fn mu_squared(&self) -> Option<Q> {
        match self {
            Self::ImaginaryPair { r, d } => Some(r * r * Q::from_integer(d.clone())),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&Q> {
        match self {
            Self::Rational(q) => Some(q),
            _ => None,
        }
    }

    fn value_json(&self) -> Value {
        match self {
            Self::Rational(q) => json!({ "q": scalar::to_string(q) }),
            Self::Surd { a, b, d } => {
                json!({ "a": scalar::to_string(a), "b": scalar::to_string(b), "d": d.to_string() })
            }
            Self::ImaginaryPair { r, d } => {
                json!({ "mu": { "r": scalar::to_string(r), "d": d.to_string() } })
            }
            Self::Family(p) => json!({ "poly": p.to_json().coeffs }),
        }
    }
}

fn surd_string(r: &Q, d: &BigInt) -> String {
    if d.is_one() {
        scalar::display(r)
    } else if r.is_one() {
        format!("sqrt{d}")
    } else {
        format!("{}*sqrt{d}", scalar::display(r))
    }
}

impl fmt::Display for EigenvalueDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Rational(q) => write!(f, "{}", scalar::display(q)),
            Self::Surd { a, b, d } => {
                let sign = if b.is_negative() { "-" } else { "+" };
                let tail = surd_string(&b.abs(), d);
                if a.is_zero() {
                    write!(f, "{}{tail}", if b.is_negative() { "-" } else { "" })
                } else {
                    write!(f, "{}{sign}{tail}", scalar::display(a))
                }
            }
            Self::ImaginaryPair { r, d } => write!(f, "+-i*{}", surd_string(r, d)),
            Self::Family(p) => write!(f, "roots of {p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenEntry {
    pub value: EigenvalueDescriptor,
    /// Real dimension of the invariant subspace.
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorKernel {
    pub factor: RationalPolynomial,
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub struct SpectrumReport {
    pub operator: String,
    pub ambient: usize,
    pub min_poly: RationalPolynomial,
    pub factors: Vec<FactorKernel>,
    pub eigen: Vec<EigenEntry>,
    pub trace_zero: bool,
    /// `sum beta * dim`, exact (conjugate irrational parts cancel).
    pub balance: Q,
    pub order: usize,
    pub perfect: Option<bool>,
}

impl SpectrumReport {
    pub fn dims_sum(&self) -> usize {
        self.eigen.iter().map(|e| e.dim).sum()
    }

    pub fn dims_complete(&self) -> bool {
        self.dims_sum() == self.ambient
    }

    /// Dimension of the entry with this rational eigenvalue (0 if absent).
    pub fn rational_dim(&self, beta: &Q) -> usize {
        self.eigen
            .iter()
            .filter(|e| e.value.as_rational() == Some(beta))
            .map(|e| e.dim)
            .sum()
    }

    /// Real dimension for `+- i mu` with the given `mu^2`.
    pub fn imaginary_dim(&self, mu2: &Q) -> usize {
        self.eigen
            .iter()
            .filter(|e| e.value.mu_squared().as_ref() == Some(mu2))
            .map(|e| e.dim)
            .sum()
    }

    /// Rational eigenvalues with dimensions, ascending.
    pub fn rational_spectrum(&self) -> Vec<(Q, usize)> {
        let mut v: Vec<(Q, usize)> = self
            .eigen
            .iter()
            .filter_map(|e| e.value.as_rational().map(|q| (q.clone(), e.dim)))
            .collect();
        v.sort();
        v
    }

    pub fn to_json(&self) -> Value {
        json!({
            "operator": self.operator,
            "min_poly": self.min_poly.to_json().coeffs,
            "eigen": self.eigen.iter().map(|e| json!({
                "type": e.value.kind(),
                "value": e.value.value_json(),
                "dim": e.dim,
            })).collect::<Vec<_>>(),
            "trace_zero": self.trace_zero,
            "order": self.order,
            "perfect": self.perfect,
        })
    }

    pub fn summary(&self) -> String {
        let parts: Vec<String> = self.eigen.iter().map(|e| format!("{}:{}", e.value, e.dim)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// Splits `p` as far as possible without general factorization: rational
/// roots, then roots in `u = t^2`, then even quartics into two quadratics.
pub fn split_factors(p: &RationalPolynomial) -> Vec<RationalPolynomial> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut rest = p.monic();
    for (r, mult) in rest.rational_roots() {
        let lin = RationalPolynomial::linear(r);
        let f = (0..mult).fold(RationalPolynomial::one(), |acc, _| &acc * &lin);
        rest = rest.div_exact(&f).expect("root divides");
        out.push(f);
    }
    if let Some(g) = rest.even_part_in_square().filter(|_| rest.degree().unwrap_or(0) > 2) {
        for (u, mult) in g.rational_roots() {
            for _ in 0..mult {
                let q = RationalPolynomial::t2_plus(-u.clone());
                rest = rest.div_exact(&q).expect("square root divides");
                out.push(q);
            }
        }
    }
    if rest.degree() == Some(4) && rest.is_even() {
        if let Some((f1, f2)) = split_even_quartic(&rest) {
            out.push(f1);
            out.push(f2);
            rest = RationalPolynomial::one();
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        out.push(rest);
    }
    out
}

/// `t^4 + a t^2 + b = (t^2 + p t + q)(t^2 - p t + q)` with rational `p, q`.
fn split_even_quartic(f: &RationalPolynomial) -> Option<(RationalPolynomial, RationalPolynomial)> {
    let a = f.coeff(2);
    let b = f.coeff(0);
    let q0 = rational_sqrt(&b)?;
    for q in [q0.clone(), -q0] {
        let p2 = &q * scalar::q(2) - &a;
        if let Some(p) = rational_sqrt(&p2) {
            if p.is_zero() {
                continue;
            }
            let f1 = RationalPolynomial::new(vec![q.clone(), p.clone(), Q::one()]);
            let f2 = RationalPolynomial::new(vec![q.clone(), -p, Q::one()]);
            return Some((f1, f2));
        }
    }
    None
}

/// `sqrt(x)` for positive rational `x` as `r sqrt(d)` with `d` squarefree.
pub fn surd_sqrt(x: &Q) -> (Q, BigInt) {
    // sqrt(n/m) = sqrt(n m) / m
    let nm = x.numer() * x.denom();
    let (s, d) = squarefree_split(&nm);
    (Q::new(s, x.denom().clone()), d)
}

fn factor_kernel(m: &RationalMatrix, f: &RationalPolynomial) -> Result<Vec<Vec<Q>>> {
    Ok(poly_eval_matrix(f, m)?.kernel_basis())
}

/// Descriptor entries and the exact `sum beta * dim` contribution of one
/// refined factor with the given kernel.
fn describe(m: &RationalMatrix, f: &RationalPolynomial, kernel: &[Vec<Q>]) -> Result<(Vec<EigenEntry>, Q)> {
    let n = kernel.len();
    let nq = scalar::q(n as i64);
    let deg = f.degree().unwrap_or(0);
    if deg == 0 || n == 0 {
        return Ok((Vec::new(), Q::zero()));
    }
    // repeated linear factor (t - r)^j
    let roots = f.rational_roots();
    if roots.len() == 1 && roots[0].1 == deg {
        let r = roots[0].0.clone();
        return Ok((vec![EigenEntry { value: EigenvalueDescriptor::Rational(r.clone()), dim: n }], r * nq));
    }
    if deg == 2 {
        let p = f.coeff(1) / f.coeff(2);
        let q = f.coeff(0) / f.coeff(2);
        let a = -&p / scalar::q(2);
        let disc = &p * &p - &q * scalar::q(4);
        if disc.is_positive() {
            let (r, d) = surd_sqrt(&disc);
            let b = r / scalar::q(2);
            // trace on the family is n a + (m+ - m-) b sqrt d; rational => balanced
            let sub = Subspace::span(m.rows(), kernel)?;
            let tr = sub.restrict(m)?.trace();
            if tr != &a * &nq || n % 2 == 1 {
                return Err(Error::Contract(format!(
                    "restricted trace {} is incompatible with conjugate roots of {f}",
                    scalar::display(&tr)
                )));
            }
            let half = n / 2;
            let plus = EigenvalueDescriptor::Surd { a: a.clone(), b: b.clone(), d: d.clone() };
            let minus = EigenvalueDescriptor::Surd { a: a.clone(), b: -b, d };
            let entries = [plus, minus]
                .into_iter()
                .filter(|_| half > 0)
                .map(|value| EigenEntry { value, dim: half })
                .collect();
            return Ok((entries, a * nq));
        }
        if disc.is_negative() && p.is_zero() {
            let (r, d) = surd_sqrt(&q);
            return Ok((vec![EigenEntry { value: EigenvalueDescriptor::ImaginaryPair { r, d }, dim: n }], Q::zero()));
        }
    }
    // each root of a real irreducible factor has multiplicity n / deg
    let sum_roots = -f.coeff(deg - 1) / f.coeff(deg);
    let contribution = sum_roots * nq / scalar::q(deg as i64);
    Ok((vec![EigenEntry { value: EigenvalueDescriptor::Family(f.monic()), dim: n }], contribution))
}

/// Full spectral report. With `expected`, their product must equal the
/// minimal polynomial.
pub fn spectrum(op: &LinearOperator, expected: Option<&[RationalPolynomial]>) -> Result<SpectrumReport> {
    if !op.is_square() {
        return domain("spectrum of a non-square operator");
    }
    let m = &op.matrix;
    let min_poly = m.minimal_polynomial()?;
    let top: Vec<RationalPolynomial> = match expected {
        Some(fs) => {
            let prod = RationalPolynomial::product(fs.iter()).monic();
            if prod != min_poly {
                return Err(Error::Verification(format!(
                    "{}: expected minimal polynomial {prod}, computed {min_poly}",
                    op.name
                )));
            }
            fs.iter().map(RationalPolynomial::monic).collect()
        }
        None => split_factors(&min_poly),
    };
    let refined: Vec<(usize, RationalPolynomial)> = top
        .iter()
        .enumerate()
        .flat_map(|(i, f)| split_factors(f).into_iter().map(move |g| (i, g)))
        .collect();
    let described: Vec<(usize, Vec<EigenEntry>, Q, usize)> = refined
        .par_iter()
        .map(|(i, f)| {
            let kernel = factor_kernel(m, f)?;
            let (entries, contrib) = describe(m, f, &kernel)?;
            Ok((*i, entries, contrib, kernel.len()))
        })
        .collect::<Result<_>>()?;
    let mut factors: Vec<FactorKernel> = top.iter().map(|f| FactorKernel { factor: f.clone(), dim: 0 }).collect();
    let mut eigen = Vec::new();
    let mut balance = Q::zero();
    for (i, entries, contrib, dim) in described {
        factors[i].dim += dim;
        eigen.extend(entries);
        balance += contrib;
    }
    let order = eigen.iter().map(|e| e.value.count()).sum();
    Ok(SpectrumReport {
        operator: op.name.clone(),
        ambient: m.rows(),
        min_poly,
        factors,
        eigen,
        trace_zero: m.trace().is_zero(),
        balance,
        order,
        perfect: None,
    })
}

/// Whether the order equals the number of irreducible submodules; records it.
pub fn perfectness(report: &mut SpectrumReport, irreducible_count: usize) -> bool {
    let p = report.order == irreducible_count;
    report.perfect = Some(p);
    p
}

pub fn rational_root_check(p: &RationalPolynomial) -> Vec<(Q, usize)> {
    p.rational_roots()
}

/// The scalar `s` with `minpoly(s M) = target`, given `minpoly(M) = p`:
/// solves `target(t) = s^n p(t / s)` coefficientwise.
pub fn fit_argument_scale(p: &RationalPolynomial, target: &RationalPolynomial) -> Option<Q> {
    let n = p.degree()?;
    if target.degree()? != n || !p.is_monic() || !target.is_monic() {
        return None;
    }
    let candidates: Vec<Q> = (0..n)
        .filter(|&i| !p.coeff(i).is_zero() && !target.coeff(i).is_zero())
        .filter_map(|i| rational_root(&(target.coeff(i) / p.coeff(i)).abs(), (n - i) as u32))
        .flat_map(|s| [s.clone(), -s])
        .collect();
    let matches = |s: &Q| -> bool {
        let mut pow = Q::one();
        for i in (0..=n).rev() {
            if p.coeff(i) * &pow != target.coeff(i) {
                return false;
            }
            pow *= s;
        }
        true
    };
    if candidates.is_empty() {
        // only t^n on both sides
        return (p == target).then(Q::one);
    }
    candidates.into_iter().find(|s| !s.is_zero() && matches(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qf};

    fn diag(v: &[Q]) -> LinearOperator {
        let n = v.len();
        let m = RationalMatrix::from_triplets(n, n, v.iter().cloned().enumerate().map(|(i, x)| (i, i, x))).unwrap();
        // n = C(n, 1)
        LinearOperator::new(n, 1, 1, "diag", m).unwrap()
    }

    #[test]
    fn zero_operator() {
        let op = LinearOperator::zero(5, 2, 2).unwrap();
        let r = spectrum(&op, None).unwrap();
        assert_eq!(r.min_poly, RationalPolynomial::t());
        assert_eq!(r.rational_spectrum(), vec![(q(0), 10)]);
        assert!(r.trace_zero && r.dims_complete());
    }

    #[test]
    fn rational_and_expected() {
        let op = diag(&[q(1), q(1), qf(-2, 1), q(0)]);
        let r = spectrum(&op, None).unwrap();
        assert_eq!(r.rational_spectrum(), vec![(q(-2), 1), (q(0), 1), (q(1), 2)]);
        assert_eq!(r.order, 3);
        assert_eq!(r.balance, q(0));
        let bad = [RationalPolynomial::t()];
        assert!(matches!(spectrum(&op, Some(&bad)), Err(Error::Verification(_))));
    }

    #[test]
    fn surd_and_imaginary() {
        // companion of t^2 - 2 and a rotation scaled by 3
        let m = RationalMatrix::from_rows(vec![
            vec![q(0), q(2), q(0), q(0)],
            vec![q(1), q(0), q(0), q(0)],
            vec![q(0), q(0), q(0), q(-3)],
            vec![q(0), q(0), q(3), q(0)],
        ])
        .unwrap();
        let op = LinearOperator::new(4, 1, 1, "m", m).unwrap();
        let r = spectrum(&op, None).unwrap();
        assert_eq!(r.order, 4);
        assert!(r.eigen.contains(&EigenEntry { value: EigenvalueDescriptor::Surd { a: q(0), b: q(1), d: 2.into() }, dim: 1 }));
        assert_eq!(r.imaginary_dim(&q(9)), 2);
        assert_eq!(r.summary(), "{+-i*3:2, sqrt2:1, -sqrt2:1}");
    }

    #[test]
    fn factor_splitting() {
        let f = RationalPolynomial::new(vec![q(1), q(0), q(-6), q(0), q(1)]);
        let parts = split_factors(&f);
        assert_eq!(parts.len(), 2);
        let g = RationalPolynomial::new(vec![q(16), q(0), q(-14), q(0), q(1)]);
        assert_eq!(split_factors(&g), vec![g.clone()]);
        let h = &(&RationalPolynomial::t() * &RationalPolynomial::t2_plus(q(-4))) * &g;
        let parts = split_factors(&h);
        assert_eq!(parts.len(), 4);
        assert_eq!(surd_sqrt(&q(72)), (q(6), 2.into()));
        assert_eq!(surd_sqrt(&qf(1, 2)), (qf(1, 2), 2.into()));
    }

    #[test]
    fn argument_scale() {
        let p = RationalPolynomial::from_roots(&[q(0), q(2), q(-2)]);
        let t = RationalPolynomial::from_roots(&[q(0), q(1), q(-1)]);
        let s = fit_argument_scale(&p, &t).unwrap();
        assert_eq!(s.abs(), qf(1, 2));
        assert!(fit_argument_scale(&p, &RationalPolynomial::from_roots(&[q(0), q(1), q(2)])).is_none());
    }
}
