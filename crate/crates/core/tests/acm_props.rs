mod common;

use proptest::prelude::*;

use common::st_battery;
use stgeom::acm::{
    check_parallel, classify, conformal_const, d_phi, dim5_lee_identity, hol_span, homothety,
    is_killing, is_normal, is_st, is_st_by_derivatives, lee_form, lee_forms, st_connection,
    torsion, type_check_11, type_check_21_12, validate,
};
use stgeom::gallery;
use stgeom::rational::int;
use stgeom::{Connection, Rational};

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=12, 1i64..=6).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

#[test]
fn st_connection_torsion_is_characteristic_form() {
    for (name, s) in st_battery() {
        let conn = st_connection(&s).unwrap();
        let c = torsion(&s).unwrap();
        assert_eq!(conn.torsion_form(s.algebra(), s.metric()), Some(c), "{name}");
        assert!(check_parallel(&s, &conn).passed(), "{name}");
    }
}

#[test]
fn killing_iff_xi_contracts_df_to_zero() {
    for (name, s) in st_battery() {
        assert!(is_normal(&s).unwrap(), "{name}");
        let contracted = s.d_fundamental().interior(s.xi()).unwrap().is_zero();
        assert_eq!(is_killing(&s), contracted, "{name}");
        assert!(is_st_by_derivatives(&s).unwrap(), "{name}");
    }
}

#[test]
fn type_identities() {
    for (name, s) in st_battery() {
        assert!(type_check_21_12(&s, &torsion(&s).unwrap()).unwrap(), "{name}");
        assert!(type_check_11(&s, &s.d_eta()).unwrap(), "{name}");
        assert_eq!(d_phi(&s, &s.d_eta()), s.algebra().d(&s.d_eta()), "{name}");
    }
}

#[test]
fn lee_formulas_agree() {
    for (name, s) in st_battery() {
        let [a, b, c] = lee_forms(&s).unwrap();
        assert_eq!(a, b, "{name}");
        assert_eq!(b, c, "{name}");
        if s.dim() == 5 {
            assert!(dim5_lee_identity(&s).unwrap(), "{name}");
            let cl = classify(&s).unwrap();
            assert_eq!(cl.is_balanced, cl.is_quasi_sasaki, "{name}");
        }
    }
}

#[test]
fn holonomy_preserves_structure() {
    for (name, s) in st_battery() {
        let conn = st_connection(&s).unwrap();
        if !check_parallel(&s, &conn).passed() {
            continue;
        }
        let h = hol_span(&s).unwrap();
        assert!(h.kills_xi && h.commutes_with_phi && h.skew, "{name}");
    }
}

#[test]
fn wrong_reeb_field_is_not_st() {
    let s = gallery::su2_sasaki();
    let bad = stgeom::AcmStructure::unchecked(
        s.algebra().clone(),
        s.metric().clone(),
        stgeom::Vector::basis(3, 1),
        s.phi().clone(),
    )
    .unwrap();
    assert!(!validate(&bad).passed());
    assert!(torsion(&bad).is_err());
}

#[test]
fn zero_connection_fails_parallel_check_on_nilpotent() {
    let s = gallery::ex_7d_nilpotent();
    let report = check_parallel(&s, &Connection::zero(7));
    assert!(!report.torsion_matches);
    assert!(!report.passed());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn homothety_laws(a in positive_rational(), which in 0usize..gallery::NAMES.len()) {
        let s = gallery::by_name(gallery::NAMES[which]).unwrap();
        let t = homothety(&s, &a).unwrap();
        prop_assert!(is_st(&t).unwrap());
        prop_assert_eq!(t.fundamental().clone(), s.fundamental().scale(&a));
        prop_assert_eq!(lee_form(&t).unwrap(), lee_form(&s).unwrap());
        let c = torsion(&s).unwrap();
        let expected = (&s.eta().wedge(&s.d_eta()).scale(&(&a - int(1))) + &c).scale(&a);
        prop_assert_eq!(torsion(&t).unwrap(), expected);
        let (cs, ct) = (classify(&s).unwrap(), classify(&t).unwrap());
        prop_assert_eq!(cs.is_balanced, ct.is_balanced);
        prop_assert_eq!(cs.primary, ct.primary);
    }

    #[test]
    fn conformal_composition(p in positive_rational(), q in positive_rational(), which in 0usize..gallery::NAMES.len()) {
        let s = gallery::by_name(gallery::NAMES[which]).unwrap();
        let twice = conformal_const(&conformal_const(&s, &p).unwrap(), &q).unwrap();
        prop_assert_eq!(twice, conformal_const(&s, &(&p * &q)).unwrap());
    }
}
