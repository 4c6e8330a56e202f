use formdual::catalog::{self, complex_structure_form};
use formdual::duality::hodge_compat_check;
use formdual::exterior::{basis, normalize_component, sort_with_sign};
use formdual::linalg::Subspace;
use formdual::scalar::{binomial, q, qf};
use formdual::spectral::split_factors;
use formdual::symmetry::sigma_operator;
use formdual::tensor::direct_duality_apply;
use formdual::{build_duality_operator, poly_eval_matrix, spectrum, KForm, LinearOperator, RationalMatrix, RationalPolynomial, Q};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| qf(n, d))
}

fn form(dim: usize, k: usize, max_terms: usize) -> impl Strategy<Value = KForm> {
    let n = binomial(dim, k) as usize;
    prop::collection::vec((0..n, rational()), 0..=max_terms).prop_map(move |terms| {
        let b = basis(dim, k).unwrap();
        KForm::from_terms(dim, k, terms.into_iter().map(|(i, c)| (b[i].indices(), c))).unwrap()
    })
}

/// `(dim, k, form)` with `k <= dim`.
fn any_form(max_dim: usize) -> impl Strategy<Value = KForm> {
    (1..=max_dim).prop_flat_map(|d| (0..=d).prop_flat_map(move |k| form(d, k, 8)))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(prop_oneof![3 => Just(Q::zero()), 2 => rational()], rows * cols).prop_map(move |v| {
        RationalMatrix::from_rows(v.chunks(cols).map(<[Q]>::to_vec).collect()).unwrap()
    })
}

/// `Lambda^k g` for a matrix `g` acting on `R^dim`, built from wedges of images.
fn induced(g: &RationalMatrix, k: usize) -> RationalMatrix {
    let dim = g.rows();
    let cols: Vec<Vec<Q>> = basis(dim, k)
        .unwrap()
        .iter()
        .map(|idx| {
            let mut acc = KForm::one(dim).unwrap();
            for i in idx.indices() {
                let image = KForm::from_terms(dim, 1, (1..=dim).map(|a| (vec![a], g.get(a - 1, i - 1).clone()))).unwrap();
                acc = acc.wedge(&image).unwrap();
            }
            acc.to_vector()
        })
        .collect();
    RationalMatrix::from_columns(binomial(dim, k) as usize, &cols).unwrap()
}

/// Rotation by the Pythagorean angle `(a, b, c)` in the plane `(2p-1, 2p)`.
fn plane_rotation(dim: usize, p: usize, a: i64, b: i64, c: i64) -> RationalMatrix {
    let mut g = RationalMatrix::identity(dim);
    let (i, j) = (2 * p - 2, 2 * p - 1);
    g.set(i, i, qf(a, c));
    g.set(j, j, qf(a, c));
    g.set(i, j, qf(-b, c));
    g.set(j, i, qf(b, c));
    g
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn wedge_sign_law(a in (1usize..=7).prop_flat_map(|d| (0..=d, 0..=d).prop_flat_map(move |(p, r)| (form(d, p, 6), form(d, r, 6))))) {
        let (x, y) = a;
        let sign = if (x.degree() * y.degree()) % 2 == 0 { q(1) } else { q(-1) };
        if x.degree() + y.degree() <= x.dim() {
            prop_assert_eq!(x.wedge(&y).unwrap(), y.wedge(&x).unwrap().scale(&sign));
        }
    }

    #[test]
    fn wedge_is_associative(d in 3usize..=6, seed in any::<u64>()) {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let x = formdual::verify::random_form(&mut rng, d, 1, 3);
        let y = formdual::verify::random_form(&mut rng, d, 1, 3);
        let z = formdual::verify::random_form(&mut rng, d, 1, 3);
        prop_assert_eq!(x.wedge(&y).unwrap().wedge(&z).unwrap(), x.wedge(&y.wedge(&z).unwrap()).unwrap());
    }

    #[test]
    fn double_star_sign(f in any_form(8)) {
        let (d, k) = (f.dim(), f.degree());
        let sign = if (k * (d - k)) % 2 == 0 { q(1) } else { q(-1) };
        prop_assert_eq!(f.hodge_star().hodge_star(), f.scale(&sign));
    }

    #[test]
    fn normalize_is_idempotent(d in 1usize..=10, raw in prop::collection::vec(1usize..=10, 0..6), c in rational()) {
        let idx: Vec<usize> = raw.into_iter().map(|i| (i - 1) % d + 1).collect();
        if let Some((m, c1)) = normalize_component(d, &idx, c.clone()).unwrap() {
            let again = normalize_component(d, &m.indices(), c1.clone()).unwrap().unwrap();
            prop_assert_eq!(again, (m.clone(), c1.clone()));
            let sign = sort_with_sign(&idx).unwrap().1;
            prop_assert_eq!(c1, if sign < 0 { -c } else { c });
        } else {
            let mut s = idx.clone();
            s.sort_unstable();
            s.dedup();
            prop_assert!(s.len() < idx.len());
        }
    }

    #[test]
    fn inner_product_is_symmetric_positive(pair in (1usize..=7).prop_flat_map(|d| (0..=d).prop_flat_map(move |k| (form(d, k, 6), form(d, k, 6))))) {
        let (x, y) = pair;
        prop_assert_eq!(x.inner_product(&y).unwrap(), y.inner_product(&x).unwrap());
        let n = x.inner_product(&x).unwrap();
        prop_assert_eq!(n.is_zero(), x.is_zero());
        prop_assert!(!n.is_negative());
    }

    #[test]
    fn vector_round_trip(f in any_form(8)) {
        let v = f.to_vector();
        prop_assert_eq!(KForm::from_vector(f.dim(), f.degree(), &v).unwrap(), f.clone());
        prop_assert_eq!(KForm::from_json_str(&f.to_json_string()).unwrap(), f);
    }

    #[test]
    fn rref_is_idempotent(m in (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| matrix(r, c))) {
        let (r, rank, _) = m.rref();
        let (r2, rank2, _) = r.rref();
        prop_assert_eq!(&r, &r2);
        prop_assert_eq!(rank, rank2);
        prop_assert_eq!(rank + m.nullity(), m.cols());
        for v in m.kernel_basis() {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn minimal_polynomial_is_minimal(m in (1usize..=6).prop_flat_map(|n| matrix(n, n))) {
        let p = m.minimal_polynomial().unwrap();
        prop_assert!(p.is_monic());
        prop_assert!(poly_eval_matrix(&p, &m).unwrap().is_zero());
        for f in split_factors(&p) {
            let smaller = p.div_exact(&f).unwrap();
            prop_assert!(!poly_eval_matrix(&smaller, &m).unwrap().is_zero(), "{} / {}", p, f);
        }
    }

    #[test]
    fn duality_matches_oracle(omega in (4usize..=7).prop_flat_map(|d| (Just(d), prop_oneof![Just(2usize), Just(4)])).prop_flat_map(|(d, l)| form(d, l, 6)),
                              seed in any::<u64>()) {
        let d = omega.dim();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        for k in omega.degree() / 2..=d - omega.degree() / 2 {
            let b = build_duality_operator(&omega, "b", k).unwrap();
            prop_assert!(b.op.trace().unwrap().is_zero());
            prop_assert!(b.has_expected_symmetry());
            let f = formdual::verify::random_form(&mut rng, d, k, 5);
            prop_assert_eq!(b.apply(&f).unwrap(), direct_duality_apply(&omega, &f).unwrap());
        }
    }

    #[test]
    fn hodge_scaling_for_random_forms(omega in (4usize..=7).prop_flat_map(|d| form(d, 2, 5)), k in 1usize..=6) {
        if k < omega.dim() {
            for c in hodge_compat_check(&omega, k).unwrap() {
                prop_assert!(c.holds, "{}: {}", c.name, c.detail);
            }
        }
    }

    #[test]
    fn odd_forms_give_zero(omega in (3usize..=7).prop_flat_map(|d| (Just(d), 0..=(d - 1) / 2)).prop_flat_map(|(d, h)| form(d, 2 * h + 1, 5)),
                           k in 0usize..=7) {
        if k <= omega.dim() {
            prop_assert!(build_duality_operator(&omega, "b", k).unwrap().op.is_zero());
        }
    }

    #[test]
    fn commutes_with_rotations_fixing_j(n in 1usize..=3, p in 1usize..=3, t in 0usize..3) {
        let p = (p - 1) % n + 1;
        let (a, b, c) = [(3, 4, 5), (5, 12, 13), (8, 15, 17)][t];
        let g = plane_rotation(2 * n, p, a, b, c);
        let j = complex_structure_form(n).unwrap();
        for k in 1..=n {
            let bj = build_duality_operator(&j, "b", k).unwrap().op.matrix;
            let gk = induced(&g, k);
            prop_assert_eq!(gk.mul(&bj).unwrap(), bj.mul(&gk).unwrap());
        }
    }
}

#[test]
fn double_star_matrix_on_catalog_degrees() {
    for (dim, k) in [(4, 2), (6, 3), (7, 3), (7, 4), (8, 2), (8, 3), (8, 4), (10, 3), (10, 4), (10, 5)] {
        let s = LinearOperator::hodge(dim, k).unwrap();
        let back = LinearOperator::hodge(dim, dim - k).unwrap();
        let sign = if (k * (dim - k)) % 2 == 0 { q(1) } else { q(-1) };
        assert_eq!(back.compose(&s).unwrap().matrix, RationalMatrix::scalar(s.matrix.cols(), &sign), "D={dim} k={k}");
    }
}

#[test]
fn shifts_preserve_z8_form_and_commute() {
    let omega = catalog::z8_four_form();
    let s4 = sigma_operator(1, 4).unwrap();
    assert_eq!(s4.apply(&omega).unwrap(), omega);
    for k in 2..=4 {
        let b = build_duality_operator(&omega, "b", k).unwrap().op.matrix;
        let s = sigma_operator(1, k).unwrap().matrix;
        assert_eq!(s.mul(&b).unwrap(), b.mul(&s).unwrap());
    }
}

#[test]
fn expected_factors_do_not_change_the_minimal_polynomial() {
    let th = catalog::spin7_four_form();
    for (k, factors) in [
        (3, vec![RationalPolynomial::linear(q(-4)), RationalPolynomial::linear(qf(2, 3))]),
        (
            4,
            vec![
                RationalPolynomial::t(),
                RationalPolynomial::linear(q(-4)),
                RationalPolynomial::linear(q(-2)),
                RationalPolynomial::linear(qf(2, 3)),
            ],
        ),
    ] {
        let b = build_duality_operator(&th, "b", k).unwrap().op;
        let plain = spectrum(&b, None).unwrap();
        let hinted = spectrum(&b, Some(&factors)).unwrap();
        assert_eq!(plain.min_poly, hinted.min_poly);
        assert_eq!(plain.rational_spectrum(), hinted.rational_spectrum());
        assert!(plain.dims_complete() && hinted.dims_complete());
    }
}

#[test]
fn catalog_minimal_polynomials_have_no_proper_annihilating_divisor() {
    let th = catalog::spin7_four_form();
    for k in 2..=4 {
        let b = build_duality_operator(&th, "b", k).unwrap().op.matrix;
        let p = b.minimal_polynomial().unwrap();
        for f in split_factors(&p) {
            assert!(!poly_eval_matrix(&p.div_exact(&f).unwrap(), &b).unwrap().is_zero());
        }
    }
}

#[test]
fn eigenspaces_are_invariant_subspaces() {
    let th = catalog::spin7_four_form();
    let b = build_duality_operator(&th, "b", 4).unwrap().op.matrix;
    for r in [q(0), q(-4), q(-2), qf(2, 3)] {
        let ker = b.add_scalar(&-r.clone()).unwrap().kernel_basis();
        let s = Subspace::span(70, &ker).unwrap();
        assert_eq!(s.restrict(&b).unwrap(), RationalMatrix::scalar(s.dim(), &r));
    }
}
