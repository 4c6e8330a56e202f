//! The cyclic index shift on `Lambda^k R^8`, its interplay with the
//! Z_8-invariant duality operator, and hand-transcribed eigenvector fixtures.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::catalog::{z8_four_form, z8_omega_partner};
use crate::duality::build_duality_operator;
use crate::error::{domain, Error, Result};
use crate::exterior::{sort_with_sign, BasisIndex, KForm};
use crate::linalg::{poly_eval_matrix, RationalMatrix, Subspace};
use crate::numfield::{Elem, FieldForm, NumberField};
use crate::operator::LinearOperator;
use crate::polynomial::RationalPolynomial;
use crate::scalar::{self, q, qf, rational_sqrt, Q};
use crate::spectral::{fit_argument_scale, spectrum, split_factors, SpectrumReport};

/// `sigma_a(e_{i_1..i_k}) = e_{i_1+a..i_k+a}` with indices taken mod 8 in `1..=8`.
pub fn sigma_operator(a: usize, k: usize) -> Result<LinearOperator> {
    if k > 8 {
        return domain(format!("degree {k} exceeds 8"));
    }
    let basis = BasisIndex::new(8, k)?;
    let triplets = (0..basis.len()).map(|j| {
        let idx = basis.multi_index(j).indices();
        let shifted: Vec<usize> = idx.iter().map(|&i| (i + a - 1) % 8 + 1).collect();
        let (sorted, sign) = sort_with_sign(&shifted).expect("shift is a bijection");
        let mask = sorted.iter().fold(0u32, |m, &i| m | 1 << (i - 1));
        (basis.position_of_mask(mask).expect("basis element"), j, q(sign as i64))
    });
    let m = RationalMatrix::from_triplets(basis.len(), basis.len(), triplets)?;
    LinearOperator::new(8, k, k, format!("sigma{a}"), m)
}

/// Cyclotomic factors of `t^8 - 1` over Q with their labels.
fn cyclotomic_factors() -> [(&'static str, RationalPolynomial); 4] {
    [
        ("1", RationalPolynomial::linear(q(1))),
        ("-1", RationalPolynomial::linear(q(-1))),
        ("+-i", RationalPolynomial::t2_plus(q(1))),
        ("primitive 8th", RationalPolynomial::new(vec![q(1), q(0), q(0), q(0), q(1)])),
    ]
}

/// Multiplicity of each eighth root of unity as an eigenvalue of `sigma`
/// on a subspace; Galois-conjugate roots share a multiplicity, reported once
/// per label (`"+-i"` is the multiplicity of `i` and of `-i` each).
pub fn sigma_multiplicities_on(sigma: &RationalMatrix, subspace: Option<&Subspace>) -> Result<BTreeMap<String, usize>> {
    let m = match subspace {
        Some(s) => s.restrict(sigma)?,
        None => sigma.clone(),
    };
    cyclotomic_factors()
        .iter()
        .map(|(label, f)| {
            let dim = poly_eval_matrix(f, &m)?.nullity();
            Ok((label.to_string(), dim / f.degree().expect("nonconstant")))
        })
        .collect()
}

pub fn sigma_multiplicities(k: usize) -> Result<BTreeMap<String, usize>> {
    if !(2..=4).contains(&k) {
        return domain("shift multiplicities are tabulated for k = 2, 3, 4");
    }
    sigma_multiplicities_on(&sigma_operator(1, k)?.matrix, None)
}

/// Minimal polynomial of `sigma` restricted to the span of `basis`.
pub fn restricted_minimal_equation(sigma: &LinearOperator, basis: &[Vec<Q>]) -> Result<RationalPolynomial> {
    let s = Subspace::span(sigma.matrix.rows(), basis)?;
    s.restrict(&sigma.matrix)?.minimal_polynomial()
}

/// `trace((sigma b)|W)` on `W = ker(b^2 - s)`. When `b = +-sqrt s` splits `W`,
/// this equals `sqrt(s) * (tr sigma|V+ - tr sigma|V-)`, a rational number.
pub fn surd_split_trace(sigma: &RationalMatrix, b: &RationalMatrix, s: &Q) -> Result<Q> {
    let w = poly_eval_matrix(&RationalPolynomial::t2_plus(-s.clone()), b)?.kernel_basis();
    let sub = Subspace::span(b.rows(), &w)?;
    sub.restrict(&sigma.mul(b)?).map(|m| m.trace())
}

/// Scale `c_k` in front of the operator whose polynomial is tabulated.
pub fn z8_prefactor(k: usize) -> Result<Q> {
    match k {
        2 => Ok(q(1)),
        3 => Ok(q(3)),
        4 => Ok(q(6)),
        _ => domain("the Z_8 form is analysed on k = 2, 3, 4"),
    }
}

/// Tabulated minimal polynomial of `c_k b` for the Z_8 form.
pub fn z8_target_polynomial(k: usize) -> Result<Vec<RationalPolynomial>> {
    let t = RationalPolynomial::t();
    let sq = |c: i64| RationalPolynomial::t2_plus(q(-c));
    Ok(match k {
        // (t^2 - (1 + sqrt2)^2)(t^2 - (1 - sqrt2)^2) = t^4 - 6t^2 + 1
        2 => vec![t, sq(1), sq(4), sq(2), RationalPolynomial::new(vec![q(1), q(0), q(-6), q(0), q(1)])],
        3 => vec![t, sq(4), sq(2), RationalPolynomial::new(vec![q(16), q(0), q(-14), q(0), q(1)])],
        4 => vec![t, sq(4), sq(16), sq(8)],
        _ => return domain("the Z_8 form is analysed on k = 2, 3, 4"),
    })
}

/// `c_k s b_Omega` for the Z_8 form, where `s` is fitted so that the
/// minimal polynomial matches the tabulated one; returns the operator, the
/// bare operator and `s`.
pub fn z8_scaled_operator(k: usize) -> Result<(LinearOperator, LinearOperator, Q)> {
    let b = build_duality_operator(&z8_four_form(), "b_z8", k)?.op;
    let c = z8_prefactor(k)?;
    let target = RationalPolynomial::product(&z8_target_polynomial(k)?);
    let p = b.scale(&c).matrix.minimal_polynomial()?;
    let s = fit_argument_scale(&p, &target).ok_or_else(|| {
        Error::Verification(format!("no scalar maps {p} to {target}"))
    })?;
    let scaled = b.scale(&(c * &s)).with_name(format!("z8 k={k} scaled"));
    Ok((scaled, b, s))
}

/// The shift restricted to one Q-rational eigenspace of the scaled operator.
#[derive(Clone, Debug)]
pub struct SigmaOnEigenspace {
    /// Q-irreducible (or split) factor whose kernel is the eigenspace.
    pub factor: RationalPolynomial,
    pub dim: usize,
    pub sigma_min_poly: RationalPolynomial,
    pub multiplicities: BTreeMap<String, usize>,
    /// `tr((sigma b)|ker)` for factors `t^2 - s` with irrational roots.
    pub surd_trace: Option<Q>,
}

#[derive(Clone, Debug)]
pub struct Z8Analysis {
    pub k: usize,
    /// Residual scalar in front of `c_k b`.
    pub scale: Q,
    pub report: SpectrumReport,
    pub spaces: Vec<SigmaOnEigenspace>,
}

impl Z8Analysis {
    pub fn space(&self, factor: &RationalPolynomial) -> Option<&SigmaOnEigenspace> {
        self.spaces.iter().find(|s| s.factor == *factor)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "scale": scalar::to_string(&self.scale),
            "spectrum": self.report.to_json(),
            "sigma": self.spaces.iter().map(|s| json!({
                "eigenspace": s.factor.to_string(),
                "dim": s.dim,
                "sigma_min_poly": s.factor_json(),
                "multiplicities": s.multiplicities,
                "surd_trace": s.surd_trace.as_ref().map(scalar::to_string),
            })).collect::<Vec<_>>(),
        })
    }
}

impl SigmaOnEigenspace {
    fn factor_json(&self) -> Value {
        json!({"poly": self.sigma_min_poly.to_string(), "coeffs": self.sigma_min_poly.to_json().coeffs})
    }
}

/// Spectrum of the scaled operator on `Lambda^k R^8` and the restricted shift
/// on each eigenspace.
pub fn z8_analysis(k: usize) -> Result<Z8Analysis> {
    let (op, _, scale) = z8_scaled_operator(k)?;
    let report = spectrum(&op, Some(&z8_target_polynomial(k)?))?;
    let sigma = sigma_operator(1, k)?.matrix;
    let b = &op.matrix;
    let factors: Vec<RationalPolynomial> = report.factors.iter().flat_map(|f| split_factors(&f.factor)).collect();
    let spaces = factors
        .par_iter()
        .map(|f| {
            let sub = Subspace::span(b.rows(), &eigenspace(b, f)?)?;
            let restricted = sub.restrict(&sigma)?;
            let surd_trace = match f.degree() {
                Some(2) if f.coeff(1).is_zero() && rational_sqrt(&-f.coeff(0)).is_none() && (-f.coeff(0)).is_positive() => {
                    Some(surd_split_trace(&sigma, b, &-f.coeff(0))?)
                }
                _ => None,
            };
            Ok(SigmaOnEigenspace {
                factor: f.clone(),
                dim: sub.dim(),
                sigma_min_poly: restricted.minimal_polynomial()?,
                multiplicities: sigma_multiplicities_on(&restricted, None)?,
                surd_trace,
            })
        })
        .collect::<Result<_>>()?;
    Ok(Z8Analysis { k, scale, report, spaces })
}

/// Basis `e_{digits}` on R^8, e.g. `ix(1234) = [1, 2, 3, 4]`.
fn ix(n: u32) -> Vec<usize> {
    n.to_string().bytes().map(|b| (b - b'0') as usize).collect()
}

struct Fixtures<'a> {
    field: &'a NumberField,
    k: usize,
}

impl Fixtures<'_> {
    fn c(&self, x: i64) -> Elem {
        self.field.rational(q(x))
    }

    /// Sum of `coef * (sum_j sign_j e_{idx_j})` groups.
    fn form(&self, groups: &[(Elem, &[(i64, u32)])]) -> FieldForm {
        let terms: Vec<(Vec<usize>, Elem)> = groups
            .iter()
            .flat_map(|(c, list)| list.iter().map(move |(s, i)| (ix(*i), c.scale(&q(*s)))))
            .collect();
        FieldForm::from_terms(self.field, 8, self.k, &terms).expect("fixture indices")
    }
}

/// One fixture relation and whether it holds exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureCheck {
    pub name: String,
    pub holds: bool,
}

fn eigen_check(name: &str, field: &NumberField, b: &RationalMatrix, v: &FieldForm, lambda: &Elem) -> FixtureCheck {
    let lhs = v.apply(b).expect("shape");
    let rhs = v.scale(field, lambda);
    FixtureCheck { name: format!("{name} eigenvector"), holds: !v.is_zero() && lhs == rhs }
}

fn shift_check(name: &str, sigma: &RationalMatrix, v: &FieldForm, image: &FieldForm) -> FixtureCheck {
    FixtureCheck { name: format!("{name} shift image"), holds: v.apply(sigma).expect("shape") == *image }
}

fn neg(v: &FieldForm) -> FieldForm {
    FieldForm { coeffs: v.coeffs.iter().map(|c| -c).collect(), ..v.clone() }
}

/// Signed basis terms `(sign, digits)`, e.g. `(-1, 125)` for `-e125`.
type Terms<const N: usize> = [(i64, u32); N];
type Pair<const N: usize> = (Terms<N>, Terms<N>);

/// Checks the transcribed eigenvectors of the scaled Z_8 operator on `Lambda^k`:
/// membership in the claimed eigenspace and the claimed shift images.
pub fn verify_transcribed_vectors(k: usize) -> Result<Vec<FixtureCheck>> {
    let (op, _, _) = z8_scaled_operator(k)?;
    let b = &op.matrix;
    let sigma = sigma_operator(1, k)?.matrix;
    let mut out = Vec::new();
    let r2 = NumberField::quadratic(2);
    let f = Fixtures { field: &r2, k };
    let root2 = r2.generator();
    match k {
        2 => {
            for s in [1i64, -1] {
                let sc = f.c(s);
                let v1 = f.form(&[(f.c(1), &[(1, 56), (-1, 12)]), (sc.clone(), &[(1, 38), (1, 47)])]);
                let v2 = f.form(&[(f.c(1), &[(1, 67), (-1, 23)]), (sc.clone(), &[(1, 58), (-1, 14)])]);
                let v3 = f.form(&[(f.c(1), &[(1, 78), (-1, 34)]), (f.c(-s), &[(1, 16), (1, 25)])]);
                let v4 = f.form(&[(f.c(-1), &[(1, 18), (1, 45)]), (f.c(-s), &[(1, 27), (1, 36)])]);
                let tag = format!("V[{s}]");
                for (i, v) in [&v1, &v2, &v3, &v4].iter().enumerate() {
                    out.push(eigen_check(&format!("{tag} v{}", i + 1), &r2, b, v, &sc));
                }
                out.push(shift_check(&format!("{tag} v1"), &sigma, &v1, &v2));
                out.push(shift_check(&format!("{tag} v2"), &sigma, &v2, &v3));
                out.push(shift_check(&format!("{tag} v3"), &sigma, &v3, &v4));
                out.push(shift_check(&format!("{tag} v4"), &sigma, &v4, &neg(&v1)));

                let v = f.form(&[
                    (f.c(1), &[(1, 13), (-1, 17), (1, 35), (1, 57)]),
                    (f.c(-s), &[(1, 24), (-1, 28), (1, 46), (1, 68)]),
                ]);
                let tag = format!("V[{}]", 2 * s);
                out.push(eigen_check(&tag, &r2, b, &v, &f.c(2 * s)));
                out.push(shift_check(&tag, &sigma, &v, &v.scale(&r2, &f.c(-s))));

                let sr = root2.scale(&q(s));
                let w1 = f.form(&[
                    (f.c(1), &[(-1, 13), (1, 17), (1, 35), (1, 57)]),
                    (-&sr, &[(1, 28), (1, 46)]),
                ]);
                let w2 = f.form(&[(f.c(1), &[(-1, 24), (-1, 28), (-1, 46), (1, 68)]), (sr.clone(), &[(1, 17), (1, 35)])]);
                let tag = format!("V[{}sqrt2]", if s > 0 { "" } else { "-" });
                out.push(eigen_check(&format!("{tag} v1"), &r2, b, &w1, &sr));
                out.push(eigen_check(&format!("{tag} v2"), &r2, b, &w2, &sr));
                out.push(shift_check(&format!("{tag} v1"), &sigma, &w1, &w1.scale(&r2, &-&sr).add(&w2)));
                out.push(shift_check(&format!("{tag} v2"), &sigma, &w2, &neg(&w1)));

                for eta in [1i64, -1] {
                    let (e, lam) = (s, &f.c(s) + &root2.scale(&q(eta)));
                    let v = f.form(&[
                        (f.c(1), &[(1, 14), (-e, 27), (e, 36), (1, 58)]),
                        (lam.clone(), &[(1, 23), (-e, 18), (e, 45), (1, 67)]),
                    ]);
                    let w = f.form(&[
                        (f.c(1), &[(e, 25), (-e, 16), (-1, 38), (1, 47)]),
                        (lam.clone(), &[(1, 12), (e, 34), (1, 56), (e, 78)]),
                    ]);
                    let tag = format!("V[{e}{}sqrt2]", if eta > 0 { "+" } else { "-" });
                    out.push(eigen_check(&format!("{tag} v"), &r2, b, &v, &lam));
                    out.push(eigen_check(&format!("{tag} w"), &r2, b, &w, &lam));
                    out.push(shift_check(&format!("{tag} v"), &sigma, &v, &w.scale(&r2, &f.c(e))));
                    out.push(shift_check(&format!("{tag} w"), &sigma, &w, &v));
                }
            }
            let w1 = f.form(&[(f.c(1), &[(1, 24), (1, 28), (-1, 46), (1, 68)])]);
            let w2 = f.form(&[(f.c(1), &[(1, 13), (1, 17), (-1, 35), (1, 57)])]);
            let es: Vec<FieldForm> = [15, 26, 37, 48].iter().map(|&i| f.form(&[(f.c(1), &[(1, i)])])).collect();
            for (name, v) in [("w1", &w1), ("w2", &w2), ("e15", &es[0]), ("e26", &es[1]), ("e37", &es[2]), ("e48", &es[3])] {
                out.push(eigen_check(&format!("V[0] {name}"), &r2, b, v, &f.c(0)));
            }
            out.push(shift_check("V[0] w1", &sigma, &w1, &neg(&w2)));
            out.push(shift_check("V[0] w2", &sigma, &w2, &w1));
            for i in 0..3 {
                out.push(shift_check(&format!("V[0] e orbit {i}"), &sigma, &es[i], &es[i + 1]));
            }
            out.push(shift_check("V[0] e orbit 3", &sigma, &es[3], &neg(&es[0])));
        }
        3 => {
            for s in [1i64, -1] {
                let sc = f.c(s);
                let w_lists: [Pair<4>; 4] = [
                    ([(1, 237), (-1, 125), (-1, 156), (1, 367)], [(1, 138), (-1, 134), (1, 457), (-1, 578)]),
                    ([(1, 348), (-1, 236), (-1, 267), (1, 478)], [(1, 124), (-1, 168), (-1, 245), (1, 568)]),
                    ([(1, 145), (1, 158), (-1, 347), (-1, 378)], [(1, 167), (-1, 127), (1, 235), (-1, 356)]),
                    ([(1, 126), (-1, 148), (1, 256), (-1, 458)], [(1, 278), (-1, 238), (1, 346), (-1, 467)]),
                ];
                let u_lists: [Pair<4>; 4] = [
                    ([(1, 257), (-1, 123), (-1, 136), (1, 567)], [(1, 158), (-1, 145), (1, 347), (-1, 378)]),
                    ([(1, 368), (-1, 234), (-1, 247), (1, 678)], [(1, 126), (-1, 148), (-1, 256), (1, 458)]),
                    ([(1, 147), (1, 178), (-1, 345), (-1, 358)], [(1, 156), (-1, 125), (1, 237), (-1, 367)]),
                    ([(1, 128), (-1, 146), (1, 258), (-1, 456)], [(1, 267), (-1, 236), (1, 348), (-1, 478)]),
                ];
                for (label, lists, wrap) in [("w", &w_lists, 1i64), ("u", &u_lists, -1)] {
                    let vs: Vec<FieldForm> = lists.iter().map(|(a, c)| f.form(&[(f.c(1), a), (sc.clone(), c)])).collect();
                    let tag = format!("V[{}]", 2 * s);
                    for (i, v) in vs.iter().enumerate() {
                        out.push(eigen_check(&format!("{tag} {label}{}", i + 1), &r2, b, v, &f.c(2 * s)));
                        let next = if i == 3 { vs[0].scale(&r2, &f.c(wrap)) } else { vs[i + 1].clone() };
                        out.push(shift_check(&format!("{tag} {label}{}", i + 1), &sigma, v, &next));
                    }
                }
                let sr = root2.scale(&q(s));
                let v_lists: [(Terms<4>, Terms<2>); 4] = [
                    ([(1, 168), (-1, 124), (-1, 245), (1, 568)], [(1, 135), (-1, 157)]),
                    ([(1, 127), (1, 167), (-1, 235), (-1, 356)], [(1, 246), (-1, 268)]),
                    ([(1, 238), (1, 278), (-1, 346), (-1, 467)], [(1, 357), (-1, 137)]),
                    ([(1, 134), (1, 138), (-1, 457), (-1, 578)], [(1, 468), (-1, 248)]),
                ];
                let vs: Vec<FieldForm> = v_lists.iter().map(|(a, c)| f.form(&[(f.c(1), a), (sr.clone(), c)])).collect();
                let tag = format!("V[{}sqrt2]", if s > 0 { "" } else { "-" });
                for (i, v) in vs.iter().enumerate() {
                    out.push(eigen_check(&format!("{tag} v{}", i + 1), &r2, b, v, &sr));
                    let next = if i == 3 { neg(&vs[0]) } else { vs[i + 1].clone() };
                    out.push(shift_check(&format!("{tag} v{}", i + 1), &sigma, v, &next));
                }
            }
            let xs: Vec<FieldForm> = [
                [(1, 236), (-1, 267), (1, 348), (-1, 478)],
                [(1, 145), (-1, 158), (1, 347), (-1, 378)],
                [(1, 256), (-1, 126), (-1, 148), (1, 458)],
                [(1, 156), (-1, 125), (-1, 237), (1, 367)],
            ]
            .iter()
            .map(|l| f.form(&[(f.c(1), l)]))
            .collect();
            for (i, x) in xs.iter().enumerate() {
                out.push(eigen_check(&format!("V[0] x{}", i + 1), &r2, b, x, &f.c(0)));
                let next = if i == 3 { neg(&xs[0]) } else { xs[i + 1].clone() };
                out.push(shift_check(&format!("V[0] x{}", i + 1), &sigma, x, &next));
            }
            // quartic family, coefficients in Q(beta) with beta^4 - 14 beta^2 + 16 = 0
            let kb = NumberField::new(RationalPolynomial::new(vec![q(16), q(0), q(-14), q(0), q(1)]))?;
            let fb = Fixtures { field: &kb, k };
            let beta = kb.generator();
            let b2 = kb.mul(&beta, &beta);
            let c1 = beta.scale(&qf(1, 4));
            let c2 = (&kb.rational(q(8)) - &b2).scale(&qf(1, 4));
            let c3 = kb.div(&kb.rational(q(2)), &beta)?;
            let c4 = kb.div(&(&b2 - &kb.rational(q(4))), &beta.scale(&q(2)))?;
            let groups: [[[u32; 4]; 5]; 4] = [
                [[126, 148, 256, 458], [238, 278, 346, 467], [137, 357, 0, 0], [234, 678, 0, 0], [247, 368, 0, 0]],
                [[125, 156, 237, 367], [134, 138, 457, 578], [248, 468, 0, 0], [178, 345, 0, 0], [147, 358, 0, 0]],
                [[236, 267, 348, 478], [124, 168, 245, 568], [135, 157, 0, 0], [128, 456, 0, 0], [146, 258, 0, 0]],
                [[145, 158, 347, 378], [127, 167, 235, 356], [246, 268, 0, 0], [123, 567, 0, 0], [136, 257, 0, 0]],
            ];
            let coefs = [kb.rational(q(1)), c1, c2, c3, c4];
            let vs: Vec<FieldForm> = groups
                .iter()
                .map(|g| {
                    let lists: Vec<Vec<(i64, u32)>> = g
                        .iter()
                        .map(|row| row.iter().filter(|&&i| i != 0).map(|&i| (1, i)).collect())
                        .collect();
                    let parts: Vec<(Elem, &[(i64, u32)])> =
                        coefs.iter().cloned().zip(lists.iter().map(Vec::as_slice)).collect();
                    fb.form(&parts)
                })
                .collect();
            for (i, v) in vs.iter().enumerate() {
                out.push(eigen_check(&format!("V[beta] v{}", i + 1), &kb, b, v, &beta));
                // the cycle closes with a plus sign: sigma^4 = 1 on this span
                let next = if i == 3 { vs[0].clone() } else { vs[i + 1].clone() };
                out.push(shift_check(&format!("V[beta] v{}", i + 1), &sigma, v, &next));
            }
        }
        4 => {
            for s in [1i64, -1] {
                let sc = f.c(s);
                let msc = f.c(-s);
                let v1 = f.form(&[
                    (f.c(1), &[(1, 1257), (1, 1356), (1, 2478), (1, 3468)]),
                    (sc.clone(), &[(1, 1347), (-1, 1246), (1, 2568), (-1, 3578)]),
                ]);
                let v2 = f.form(&[
                    (f.c(1), &[(1, 2368), (1, 2467), (-1, 1358), (-1, 1457)]),
                    (msc.clone(), &[(1, 1367), (-1, 1468), (1, 2357), (-1, 2458)]),
                ]);
                let w1 = f.form(&[
                    (f.c(1), &[(1, 1357), (-1, 1458), (-1, 2367), (1, 2468)]),
                    (msc.clone(), &[(1, 1368), (1, 1467), (1, 2358), (1, 2457)]),
                ]);
                let w2 = f.form(&[
                    (f.c(1), &[(1, 1256), (-1, 1357), (1, 2468), (-1, 3478)]),
                    (sc.clone(), &[(1, 1247), (1, 1346), (-1, 2578), (-1, 3568)]),
                ]);
                let tag = format!("V[{}]", 4 * s);
                let lam = f.c(4 * s);
                for (name, v) in [("v1", &v1), ("v2", &v2), ("w1", &w1), ("w2", &w2)] {
                    out.push(eigen_check(&format!("{tag} {name}"), &r2, b, v, &lam));
                }
                out.push(shift_check(&format!("{tag} v1"), &sigma, &v1, &v2));
                out.push(shift_check(&format!("{tag} v2"), &sigma, &v2, &v1.scale(&r2, &msc)));
                // w1 -> w2 -> -w1
                out.push(shift_check(&format!("{tag} w1"), &sigma, &w1, &w2));
                out.push(shift_check(&format!("{tag} w2"), &sigma, &w2, &neg(&w1)));

                let sr = root2.scale(&q(s));
                let u1 = f.form(&[(f.c(1), &[(1, 2345), (-1, 1238), (-1, 1678), (1, 4567)]), (sr.clone(), &[(1, 2367), (-1, 1458)])]);
                // the relative sign inside the surd part makes this an eigenvector
                let u2 = f.form(&[(f.c(1), &[(1, 1234), (1, 1278), (1, 3456), (1, 5678)]), (sr.clone(), &[(1, 1256), (1, 3478)])]);
                let tag = format!("V[{}2sqrt2]", if s > 0 { "" } else { "-" });
                let lam = root2.scale(&q(2 * s));
                out.push(eigen_check(&format!("{tag} u1"), &r2, b, &u1, &lam));
                out.push(eigen_check(&format!("{tag} u2"), &r2, b, &u2, &lam));
                out.push(shift_check(&format!("{tag} u1"), &sigma, &u1, &u2));
                out.push(shift_check(&format!("{tag} u2"), &sigma, &u2, &u1));
            }
            // the shift-invariant plane spanned by the form and its partner
            let (_, bare, s) = z8_scaled_operator(4)?;
            let half_b = bare.scale(&s).matrix;
            let omega = z8_four_form();
            let partner = z8_omega_partner();
            let apply = |m: &RationalMatrix, f: &KForm| KForm::from_vector(8, 4, &m.mul_vec(&f.to_vector()).expect("shape"));
            out.push(FixtureCheck {
                name: "b(Omega) = 2/3 partner".into(),
                holds: apply(&half_b, &omega)? == partner.scale(&qf(2, 3)),
            });
            out.push(FixtureCheck {
                name: "b(partner) = 1/3 Omega".into(),
                holds: apply(&half_b, &partner)? == omega.scale(&qf(1, 3)),
            });
            out.push(FixtureCheck {
                name: "shift fixes partner".into(),
                holds: apply(&sigma, &partner)? == partner,
            });
        }
        _ => return domain("fixtures exist for k = 2, 3, 4"),
    }
    Ok(out)
}

/// `[b, sigma_a] = 0` for every shift `a`.
pub fn commutes_with_all_shifts(b: &RationalMatrix, k: usize) -> Result<bool> {
    for a in 0..8 {
        let s = sigma_operator(a, k)?.matrix;
        if b.mul(&s)? != s.mul(b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Kernel basis of `f(b)`.
pub fn eigenspace(b: &RationalMatrix, f: &RationalPolynomial) -> Result<Vec<Vec<Q>>> {
    Ok(poly_eval_matrix(f, b)?.kernel_basis())
}

pub fn is_identity(m: &RationalMatrix) -> bool {
    m.is_square() && *m == RationalMatrix::identity(m.rows())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_examples() {
        let s = sigma_operator(1, 2).unwrap();
        let e15 = KForm::basis_form(8, &[1, 5]).unwrap();
        assert_eq!(s.apply(&e15).unwrap(), KForm::basis_form(8, &[2, 6]).unwrap());
        let e48 = KForm::basis_form(8, &[4, 8]).unwrap();
        assert_eq!(s.apply(&e48).unwrap(), e15.scale(&q(-1)));
        for k in 0..=8 {
            let s = sigma_operator(1, k).unwrap().matrix;
            let mut p = RationalMatrix::identity(s.rows());
            for _ in 0..8 {
                p = p.mul(&s).unwrap();
            }
            assert!(is_identity(&p));
            assert!(is_identity(&sigma_operator(0, k).unwrap().matrix));
        }
        let s2 = sigma_operator(2, 3).unwrap().matrix;
        let s1 = sigma_operator(1, 3).unwrap().matrix;
        assert_eq!(s1.mul(&s1).unwrap(), s2);
    }

    #[test]
    fn invariant_form() {
        let s = sigma_operator(1, 4).unwrap();
        assert_eq!(s.apply(&z8_four_form()).unwrap(), z8_four_form());
    }

    #[test]
    fn digits() {
        assert_eq!(ix(1238), vec![1, 2, 3, 8]);
    }
}
