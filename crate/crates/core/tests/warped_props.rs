mod common;

use proptest::prelude::*;
use rand::Rng;

use common::{monomials, random_algebra, rng};
use stgeom::form::Form;
use stgeom::gallery;
use stgeom::rational::int;
use stgeom::warped::{warped_torsion_direct, warped_torsion_formula, wd, Poly, RFun, WForm};

fn random_rfun(r: &mut impl Rng) -> RFun {
    let num = Poly::from_ints(&[r.gen_range(-3..=3), r.gen_range(-3..=3), r.gen_range(-2..=2)]);
    if r.gen_bool(0.3) {
        RFun::new(num, Poly::from_ints(&[r.gen_range(1..=3), 1])).unwrap()
    } else {
        RFun::poly(num)
    }
}

fn random_rfun_form(r: &mut impl Rng, n: usize, k: usize) -> Form<RFun> {
    let mut f = Form::zero(n, k);
    for m in monomials(n, k) {
        if r.gen_bool(0.35) {
            f.add_term(m, random_rfun(r));
        }
    }
    f
}

/// `a + dr∧b` with random coefficients.
fn random_wform(r: &mut impl Rng, n: usize, k: usize) -> WForm {
    let a = random_rfun_form(r, n, k);
    if k == 0 {
        return WForm::lift_rfun(&a);
    }
    let b = random_rfun_form(r, n, k - 1);
    WForm::from_parts(&a, &b).unwrap()
}

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-3i64..=3, 1..=4)
        .prop_map(|c| Poly::from_ints(&c))
        .prop_filter("nonzero", |p| p.degree().is_some())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn wd_squared_vanishes(seed in any::<u64>(), n in 2usize..=5, k in 0usize..=2) {
        let mut r = rng(seed);
        let l = random_algebra(&mut r, n);
        let w = random_wform(&mut r, n, k);
        prop_assert!(wd(&l, &wd(&l, &w)).is_zero());
    }

    #[test]
    fn direct_equals_formula(f in small_poly(), which in 0usize..gallery::NAMES.len()) {
        let s = gallery::by_name(gallery::NAMES[which]).unwrap();
        let f = RFun::poly(f);
        let direct = warped_torsion_direct(&s, &f).unwrap();
        prop_assert!(direct.is_polynomial());
        prop_assert_eq!(direct, warped_torsion_formula(&s, &f).unwrap());
    }
}

#[test]
fn evaluation_at_a_point() {
    let s = gallery::su2_sasaki();
    let f = RFun::poly("r^2".parse().unwrap());
    let t = warped_torsion_formula(&s, &f).unwrap();
    // r^4 (c − 4r F∧η) at r = 1 is c − 4F∧η
    let c = stgeom::acm::torsion(&s).unwrap();
    let expected = &c - &s.fundamental().wedge(s.eta()).scale(&int(4));
    assert_eq!(t.eval_at(&int(1)).unwrap(), expected.shift(4, 1));
}
