//! Named invariant forms, built from their index lists.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exterior::KForm;
use crate::lifts::{hodge_dual_lift, trivial_lift};
use crate::scalar::{q, Q};

const G2_THREE: [[usize; 3]; 7] = [[1, 2, 3], [4, 3, 5], [4, 7, 1], [5, 1, 6], [5, 7, 2], [6, 2, 4], [6, 7, 3]];

const G2_FOUR: [[usize; 4]; 7] = [
    [1, 2, 4, 5],
    [1, 2, 7, 6],
    [1, 3, 4, 6],
    [1, 3, 5, 7],
    [2, 3, 5, 6],
    [2, 4, 3, 7],
    [4, 5, 6, 7],
];

const SPIN7_EXTRA: [[usize; 4]; 7] = [
    [1, 2, 3, 8],
    [4, 3, 5, 8],
    [4, 7, 1, 8],
    [5, 1, 6, 8],
    [5, 7, 2, 8],
    [6, 2, 4, 8],
    [6, 7, 3, 8],
];

const Z8_CYCLE: [[usize; 4]; 8] = [
    [1, 2, 3, 4],
    [2, 3, 4, 5],
    [3, 4, 5, 6],
    [4, 5, 6, 7],
    [5, 6, 7, 8],
    [6, 7, 8, 1],
    [7, 8, 1, 2],
    [8, 1, 2, 3],
];

fn unit_form<const K: usize>(dim: usize, list: &[[usize; K]]) -> KForm {
    KForm::from_terms(dim, K, list.iter().map(|i| (i.to_vec(), Q::one()))).expect("valid index list")
}

/// The G2-invariant 3-form on R^7.
pub fn g2_three_form() -> KForm {
    unit_form(7, &G2_THREE)
}

/// Its Hodge dual, the G2-invariant 4-form on R^7.
pub fn g2_four_form() -> KForm {
    unit_form(7, &G2_FOUR)
}

/// The self-dual Spin(7)-invariant 4-form on R^8.
pub fn spin7_four_form() -> KForm {
    let mut list = G2_FOUR.to_vec();
    list.extend_from_slice(&SPIN7_EXTRA);
    unit_form(8, &list)
}

/// `J = sum_a e_{2a-1} ^ e_{2a}` on R^{2n}.
pub fn complex_structure_form(n: usize) -> Result<KForm> {
    if n == 0 {
        return Err(Error::Domain("complex structure needs n >= 1".into()));
    }
    KForm::from_terms(2 * n, 2, (1..=n).map(|a| (vec![2 * a - 1, 2 * a], Q::one())))
}

/// The three Kaehler forms of the standard hypercomplex structure on R^{4m}.
pub fn kaehler_triple(m: usize) -> Result<[KForm; 3]> {
    if m == 0 {
        return Err(Error::Domain("quaternionic structure needs m >= 1".into()));
    }
    let dim = 4 * m;
    let block = |pattern: [(usize, usize, i64); 2]| {
        KForm::from_terms(
            dim,
            2,
            (0..m).flat_map(|a| {
                let b = 4 * a;
                pattern.map(|(i, j, s)| (vec![b + i, b + j], q(s)))
            }),
        )
    };
    Ok([
        block([(1, 2, 1), (3, 4, 1)])?,
        block([(1, 3, 1), (2, 4, -1)])?,
        block([(1, 4, 1), (2, 3, 1)])?,
    ])
}

/// `omega_1^2 + omega_2^2 + omega_3^2` on R^{4m}.
pub fn quaternionic_four_form(m: usize) -> Result<KForm> {
    let [a, b, c] = kaehler_triple(m)?;
    a.wedge(&a)?.add(&b.wedge(&b)?)?.add(&c.wedge(&c)?)
}

/// The Z_8-invariant 4-form on R^8 (sum of eight cyclic shifts of `e_1234`).
pub fn z8_four_form() -> KForm {
    unit_form(8, &Z8_CYCLE)
}

/// Rational partner of the Z_8 form inside the `+1`-eigenspace of the shift:
/// the surd-free part `e1256 + e2367 - e1458 + e3478` (the partner scaled by `1/sqrt 2`).
pub fn z8_omega_partner() -> KForm {
    KForm::from_terms(
        8,
        4,
        [
            (vec![1, 2, 5, 6], q(1)),
            (vec![2, 3, 6, 7], q(1)),
            (vec![1, 4, 5, 8], q(-1)),
            (vec![3, 4, 7, 8], q(1)),
        ],
    )
    .expect("valid")
}

/// The area form `e_9 ^ e_10` of the extra plane in R^10.
pub fn lift_plane_area_form() -> KForm {
    KForm::basis_form(10, &[9, 10]).expect("valid")
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub dim: usize,
    pub form: KForm,
    pub note: &'static str,
}

pub const NAMES: [&str; 16] = [
    "theta7", "theta7bar", "theta8", "theta10", "theta8lift10", "eps", "j1", "j2", "j3", "j4", "quat1",
    "quat2", "quat3", "z8", "z8omega", "vol8",
];

/// Looks up a catalog form by name.
pub fn lookup(name: &str) -> Result<CatalogEntry> {
    let (form, note) = match name {
        "theta7" => (g2_three_form(), "G2-invariant 3-form on R^7"),
        "theta7bar" => (g2_four_form(), "G2-invariant 4-form, Hodge dual of theta7"),
        "theta8" => (spin7_four_form(), "Spin(7)-invariant self-dual 4-form on R^8"),
        "theta10" => (hodge_dual_lift(&spin7_four_form(), 10)?, "Hodge-dual lift of theta8: theta8 ^ e9 ^ e10"),
        "theta8lift10" => (trivial_lift(&spin7_four_form(), 10)?, "trivial lift of theta8 to R^10"),
        "eps" => (lift_plane_area_form(), "area form of the extra plane in R^10"),
        "j1" | "j2" | "j3" | "j4" => {
            let n = name[1..].parse().expect("digit");
            (complex_structure_form(n)?, "standard complex structure, J^2 = -1")
        }
        "quat1" | "quat2" | "quat3" => {
            let m = name[4..].parse().expect("digit");
            (quaternionic_four_form(m)?, "Sp(m)Sp(1)-invariant 4-form from the Kaehler triple")
        }
        "z8" => (z8_four_form(), "Z_8-invariant 4-form, cyclic shifts of e1234"),
        "z8omega" => (z8_omega_partner(), "partner form of z8 in the shift-invariant plane"),
        "vol8" => (KForm::basis_form(8, &[1, 2, 3, 4, 5, 6, 7, 8])?, "volume form on R^8"),
        _ => return Err(Error::Domain(format!("unknown form {name:?}"))),
    };
    let name = NAMES.iter().find(|n| **n == name).expect("listed");
    Ok(CatalogEntry { name, dim: form.dim(), form, note })
}

pub fn catalog() -> Vec<CatalogEntry> {
    NAMES.iter().map(|n| lookup(n).expect("catalog entry")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn g2_forms() {
        let t = g2_three_form();
        assert_eq!(t.len(), 7);
        assert_eq!(t.component(&[1, 2, 3]), q(1));
        assert_eq!(t.component(&[3, 4, 5]), q(-1));
        assert_eq!(t.inner_product(&t).unwrap(), q(7));
        assert_eq!(t.hodge_star(), g2_four_form());
    }

    #[test]
    fn spin7_form() {
        let th = spin7_four_form();
        assert_eq!(th.len(), 14);
        assert_eq!(th.inner_product(&th).unwrap(), q(14));
        assert_eq!(th.hodge_star(), th);
        let e8 = KForm::basis_form(8, &[8]).unwrap();
        let split = trivial_lift(&g2_four_form(), 8)
            .unwrap()
            .add(&trivial_lift(&g2_three_form(), 8).unwrap().wedge(&e8).unwrap())
            .unwrap();
        assert_eq!(split, th);
    }

    #[test]
    fn z8_form() {
        let z = z8_four_form();
        assert_eq!(z.len(), 8);
        assert_eq!(z.component(&[1, 6, 7, 8]), q(-1));
        assert_eq!(z.component(&[1, 2, 7, 8]), q(1));
        assert_eq!(z.component(&[1, 2, 3, 8]), q(-1));
        assert_eq!(z.inner_product(&z).unwrap(), q(8));
    }

    #[test]
    fn quaternionic_m1_is_volume_multiple() {
        let o = quaternionic_four_form(1).unwrap();
        assert_eq!(o, KForm::basis_form(4, &[1, 2, 3, 4]).unwrap().scale(&q(6)));
        for w in kaehler_triple(1).unwrap() {
            assert_eq!(w.wedge(&w).unwrap(), KForm::basis_form(4, &[1, 2, 3, 4]).unwrap().scale(&q(2)));
        }
        assert_eq!(quaternionic_four_form(2).unwrap().len(), 14);
    }

    #[test]
    fn every_entry_builds() {
        for e in catalog() {
            assert!(!e.form.is_zero(), "{}", e.name);
        }
        assert!(lookup("nope").is_err());
    }
}
