//! Named example structures and pointwise checks on spheres.

mod sphere;
mod unitary;

pub use sphere::{
    moment_check_euclid, moment_check_sphere, rational_sphere_points, rational_unit_vector,
    sphere_data, zero_level_points, MomentReport, PointwiseAcm, SpherePoint,
};
pub use unitary::{u_n_algebra, u_n_canonical_sst};

use crate::acm::{complete_phi, AcmStructure};
use crate::error::{Error, Result};
use crate::form::KForm;
use crate::lie::LieAlgebra;
use crate::linalg::{Matrix, Metric, Vector};
use crate::rational::int;

/// Names accepted by [`by_name`].
pub const NAMES: &[&str] = &[
    "abelian",
    "ex_r_times_g4",
    "ex_5d_quasi_sasaki",
    "ex_7d_nilpotent",
    "su2_sasaki",
    "u1_canonical",
    "u3_canonical",
];

pub fn by_name(name: &str) -> Result<AcmStructure> {
    match name {
        "abelian" => abelian_st(5),
        "ex_r_times_g4" => Ok(ex_r_times_g4()),
        "ex_5d_quasi_sasaki" => Ok(ex_5d_quasi_sasaki()),
        "ex_7d_nilpotent" => Ok(ex_7d_nilpotent()),
        "su2_sasaki" => Ok(su2_sasaki()),
        "u1_canonical" => u_n_canonical_sst(1),
        "u3_canonical" => u_n_canonical_sst(3),
        other => Err(Error::Unsupported(format!("unknown example `{other}`"))),
    }
}

/// Every named example, in the order of [`NAMES`].
pub fn all() -> Vec<(&'static str, AcmStructure)> {
    NAMES
        .iter()
        .map(|&n| (n, by_name(n).expect("gallery builders are valid")))
        .collect()
}

/// 1-form `Σ c e^i` from 1-based `(c, i)` pairs.
fn lin(n: usize, terms: &[(i64, usize)]) -> KForm {
    let mut f = KForm::zero(n, 1);
    for &(c, i) in terms {
        f = &f + &KForm::monomial(n, &[i - 1], int(c));
    }
    f
}

/// Orthonormal structure with the partial table `e^i∘φ = c e^j` (1-based).
fn orthonormal(l: LieAlgebra, xi: usize, table: &[(usize, i64, usize)]) -> AcmStructure {
    let n = l.dim();
    let g = Metric::identity(n);
    let xi = Vector::basis(n, xi - 1);
    let table: Vec<_> = table.iter().map(|&(i, c, j)| (i - 1, int(c), j - 1)).collect();
    let phi = complete_phi(&g, &xi, &table).expect("consistent table");
    AcmStructure::new(l, g, xi, phi).expect("valid example")
}

/// Abelian `ℝⁿ` (odd `n`) with `ξ = E_n` and `φE_{2k−1} = E_{2k}`.
pub fn abelian_st(n: usize) -> Result<AcmStructure> {
    if n.is_multiple_of(2) {
        return Err(Error::Unsupported(format!("abelian structure needs odd dimension, got {n}")));
    }
    let table: Vec<(usize, i64, usize)> = (0..n / 2).map(|k| (2 * k + 1, -1, 2 * k + 2)).collect();
    Ok(orthonormal(LieAlgebra::abelian(n), n, &table))
}

/// `ℝ × G` with `G` four-dimensional and `e^5 = dt`.
pub fn ex_r_times_g4() -> AcmStructure {
    let n = 5;
    let l = LieAlgebra::new(vec![
        KForm::zero(n, 2),
        KForm::zero(n, 2),
        KForm::from_terms(n, 2, &[(1, &[3, 1]), (1, &[4, 2])]),
        KForm::from_terms(n, 2, &[(1, &[4, 1]), (1, &[2, 3])]),
        KForm::zero(n, 2),
    ])
    .expect("well formed");
    orthonormal(l, 5, &[(1, 1, 2), (3, 1, 4), (5, 0, 5)])
}

/// Five-dimensional quasi-Sasaki algebra with decomposable `dη`.
pub fn ex_5d_quasi_sasaki() -> AcmStructure {
    let n = 5;
    let e = |i: usize| KForm::basis(n, i - 1);
    let de1 = &lin(n, &[(1, 1), (1, 2), (1, 4), (-1, 5)]).wedge(&e(3)) + &e(2).wedge(&e(5));
    let de2 = &lin(n, &[(-2, 2), (2, 3), (-1, 4), (1, 5)]).wedge(&e(1))
        + &e(4).wedge(&lin(n, &[(1, 2), (-1, 3), (1, 5)]));
    let de3 = &lin(n, &[(1, 2), (-1, 3), (-1, 4), (1, 5)]).wedge(&e(1))
        + &e(4).wedge(&lin(n, &[(-2, 2), (2, 3), (1, 5)]));
    let de4 = &lin(n, &[(-1, 1), (1, 3), (-1, 4), (1, 5)]).wedge(&e(2)) - &e(3).wedge(&e(5));
    // the sign of e4 matters: (e1 − e4)∧(e2 − e3) breaks d² = 0
    let de5 = lin(n, &[(1, 1), (1, 4)]).wedge(&lin(n, &[(1, 2), (-1, 3)]));
    let l = LieAlgebra::new(vec![de1, de2, de3, de4, de5]).expect("well formed");
    orthonormal(l, 5, &[(1, -1, 2), (3, -1, 4)])
}

/// Seven-dimensional 2-step nilpotent algebra with `η = e^5`.
pub fn ex_7d_nilpotent() -> AcmStructure {
    orthonormal(
        nilpotent7(),
        5,
        &[(1, -1, 2), (3, -1, 4), (6, -1, 7), (5, 0, 5)],
    )
}

/// The algebra underlying [`ex_7d_nilpotent`].
pub fn nilpotent7() -> LieAlgebra {
    let n = 7;
    let z = KForm::zero(n, 2);
    LieAlgebra::new(vec![
        z.clone(),
        z.clone(),
        z.clone(),
        z,
        KForm::from_terms(n, 2, &[(-1, &[1, 2]), (1, &[3, 4])]),
        KForm::from_terms(n, 2, &[(-1, &[1, 3]), (-1, &[2, 4])]),
        KForm::from_terms(n, 2, &[(-1, &[1, 4]), (1, &[2, 3])]),
    ])
    .expect("well formed")
}

/// `su(2)` with `de^1 = −2e^2∧e^3` (cyclically), `ξ = E_1`, `φE_2 = −E_3`,
/// `φE_3 = E_2`; here `dη = 2F`.
pub fn su2_sasaki() -> AcmStructure {
    let n = 3;
    let l = LieAlgebra::new(vec![
        KForm::from_terms(n, 2, &[(-2, &[2, 3])]),
        KForm::from_terms(n, 2, &[(-2, &[3, 1])]),
        KForm::from_terms(n, 2, &[(-2, &[1, 2])]),
    ])
    .expect("well formed");
    let phi = Matrix::from_int_rows(&[&[0, 0, 0], &[0, 0, 1], &[0, -1, 0]]);
    AcmStructure::new(l, Metric::identity(n), Vector::basis(n, 0), phi).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acm::{self, validate, PrimaryClass};

    #[test]
    fn every_builder_is_st() {
        for (name, s) in all() {
            assert!(validate(&s).passed(), "{name}");
            assert!(s.algebra().jacobi_check(), "{name}");
            assert!(acm::is_normal(&s).unwrap(), "{name} normal");
            assert!(acm::is_killing(&s), "{name} killing");
        }
    }

    #[test]
    fn seven_dim_with_wrong_reeb_fails_phi_xi() {
        let s = ex_7d_nilpotent();
        let bad = AcmStructure::unchecked(
            s.algebra().clone(),
            s.metric().clone(),
            Vector::basis(7, 6),
            s.phi().clone(),
        )
        .unwrap();
        let report = validate(&bad);
        assert_eq!(report.first_failure().unwrap().name, acm::CHECK_PHI_XI);
    }

    #[test]
    fn fundamental_forms() {
        assert_eq!(
            *ex_7d_nilpotent().fundamental(),
            KForm::from_terms(7, 2, &[(1, &[1, 2]), (1, &[3, 4]), (1, &[6, 7])])
        );
        assert_eq!(
            *ex_r_times_g4().fundamental(),
            KForm::from_terms(5, 2, &[(-1, &[1, 2]), (-1, &[3, 4])])
        );
        let s = su2_sasaki();
        assert_eq!(*s.fundamental(), KForm::from_terms(3, 2, &[(-1, &[2, 3])]));
        assert_eq!(s.d_eta(), s.fundamental().scale(&int(2)));
    }

    #[test]
    fn headline_classes() {
        let q = acm::classify(&ex_5d_quasi_sasaki()).unwrap();
        assert_eq!(q.primary, PrimaryClass::QuasiSasaki);
        assert!(q.deta_decomposable && q.is_sst);
        let s = acm::classify(&su2_sasaki()).unwrap();
        assert_eq!(s.primary, PrimaryClass::AlphaSasaki(int(2)));
        let n = acm::classify(&ex_7d_nilpotent()).unwrap();
        assert_eq!(n.primary, PrimaryClass::GenericSt);
        assert!(n.is_balanced);
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(by_name("nope"), Err(Error::Unsupported(_))));
    }
}
