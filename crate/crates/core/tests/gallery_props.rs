mod common;

use proptest::prelude::*;

use stgeom::acm::{field_eq_report, hol_span, is_killing, is_normal, torsion, validate};
use stgeom::gallery::{
    self, moment_check_euclid, moment_check_sphere, rational_sphere_points, sphere_data,
    u_n_canonical_sst, zero_level_points,
};
use stgeom::rational::{frac, int};
use stgeom::{KForm, Rational, Vector};

#[test]
fn builders_are_st() {
    for (name, s) in gallery::all() {
        assert!(validate(&s).passed(), "{name}");
        assert!(is_normal(&s).unwrap(), "{name}");
        assert!(is_killing(&s), "{name}");
    }
}

/// `(X, Y, Z) ↦ g([X, Y], Z)`.
fn bracket_form(s: &stgeom::AcmStructure) -> KForm {
    let n = s.dim();
    let mut out = KForm::zero(n, 3);
    for m in common::monomials(n, 3) {
        let ids: Vec<usize> = m.indices().collect();
        let br = s.algebra().bracket_basis(ids[0], ids[1]);
        let v = s.metric().inner(br, &Vector::basis(n, ids[2]));
        out.add_term(m, v);
    }
    out
}

#[test]
fn compact_group_torsion_is_bracket_form() {
    for n in [1, 3] {
        let s = u_n_canonical_sst(n).unwrap();
        let c = torsion(&s).unwrap();
        assert_eq!(c, -&bracket_form(&s), "u({n})");
        let fe = field_eq_report(&s).unwrap();
        assert!(fe.closed() && fe.coclosed() && fe.flat && fe.ricci_flat(), "u({n})");
        assert!(hol_span(&s).unwrap().basis.is_empty(), "u({n})");
    }
}

#[test]
fn sphere_points_carry_acm_data() {
    for k in 1..=3 {
        for p in rational_sphere_points(k, 40, k as u64) {
            assert!(sphere_data(&p).invariants_hold());
        }
    }
}

#[test]
fn sphere_moment_map() {
    for k in 1..=3 {
        let lambda: Vec<Rational> = (1..=k as i64 + 1).map(int).collect();
        for p in rational_sphere_points(k, 40, 11) {
            let r = moment_check_sphere(k, &p, &lambda).unwrap();
            assert_eq!(r.dmu_xi, int(0));
            assert!(r.mu_invariant && r.f_invariant);
        }
        for p in zero_level_points(k, 40, 5) {
            let r = moment_check_sphere(k, &p, &lambda).unwrap();
            assert_eq!(r.mu, int(0));
            assert_ne!(r.dmu_phi_x, int(0));
        }
    }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(p, q)| frac(p, q))
}

proptest! {
    #[test]
    fn euclidean_moment_identity(k in 1usize..=3, coords in prop::collection::vec(rational(), 9)) {
        let p = &coords[..2 * k + 3];
        let lambda: Vec<Rational> = coords[..k + 1].to_vec();
        let r = moment_check_euclid(k, p, &lambda).unwrap();
        prop_assert_eq!(r.dmu_xi, int(0));
        prop_assert_eq!(r.dmu_phi_x, &r.norm * int(2));
        prop_assert!(r.mu_invariant && r.f_invariant);
    }
}
