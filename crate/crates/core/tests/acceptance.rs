//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p stgeom --test acceptance`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use stgeom::acm::{
    check_parallel, classify, conformal_const, dim5_lee_identity, field_eq_report, homothety,
    houri_torsion, is_killing, is_normal, lee_form, lee_forms, phi_trace, st_connection, torsion,
    type_check_21_12, PrimaryClass,
};
use stgeom::gallery::{
    self, moment_check_euclid, moment_check_sphere, rational_sphere_points, u_n_canonical_sst,
};
use stgeom::hermitian::{cylinder, cylinder_lee, is_skt};
use stgeom::rational::{frac, int};
use stgeom::warped::{cone_report, warped_torsion_direct, warped_torsion_formula, RFun};
use stgeom::{KForm, Rational, Vector};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn connection_table() -> Outcome {
    let s = gallery::ex_7d_nilpotent();
    let conn = st_connection(&s).map_err(|e| e.to_string())?;
    // (along, applied to, sign, result), 1-based
    let table: [(usize, usize, i64, usize); 12] = [
        (5, 1, -1, 2), (6, 1, -1, 3), (7, 1, -1, 4),
        (5, 2, 1, 1), (6, 2, -1, 4), (7, 2, 1, 3),
        (5, 3, 1, 4), (6, 3, 1, 1), (7, 3, -1, 2),
        (5, 4, -1, 3), (6, 4, 1, 2), (7, 4, 1, 1),
    ];
    let mut nonzero = 0;
    for i in 0..7 {
        for j in 0..7 {
            let expected = table
                .iter()
                .find(|t| t.0 == i + 1 && t.1 == j + 1)
                .map_or_else(|| Vector::zero(7), |t| Vector::basis(7, t.3 - 1).scale(&int(t.2)));
            let got = conn.nabla(i, j);
            ensure!(*got == expected, "nabla_E{} E{} = {got}, expected {expected}", i + 1, j + 1);
            nonzero += usize::from(!got.is_zero());
        }
    }
    Ok(format!("{nonzero} nonzero entries, all others 0"))
}

fn torsion_forms() -> Outcome {
    let s = gallery::ex_7d_nilpotent();
    let expected = KForm::from_terms(
        7,
        3,
        &[
            (-1, &[1, 2, 5]), (-1, &[1, 3, 6]), (-1, &[1, 4, 7]),
            (-1, &[2, 4, 6]), (1, &[2, 3, 7]), (1, &[3, 4, 5]),
        ],
    );
    let c = torsion(&s).map_err(|e| e.to_string())?;
    ensure!(c == expected, "7-dim torsion {c}");
    let r = gallery::ex_r_times_g4();
    let c = torsion(&r).map_err(|e| e.to_string())?;
    let e234 = KForm::from_terms(5, 3, &[(1, &[2, 3, 4])]);
    let q = c.coeff_of(&[1, 2, 3]);
    ensure!(!c.is_zero() && c == e234.scale(&q), "R x G torsion {c}");
    ensure!(r.eta().wedge(&r.d_eta()).is_zero(), "eta^deta != 0");
    ensure!(!r.algebra().d(&c).is_zero(), "dc = 0 on R x G");
    Ok(format!("7-dim c exact; R x G c = {}*e2^e3^e4, not SST", stgeom::rational::to_string(&q)))
}

fn classification() -> Outcome {
    let q = classify(&gallery::ex_5d_quasi_sasaki()).map_err(|e| e.to_string())?;
    ensure!(
        q.primary == PrimaryClass::QuasiSasaki && q.deta_decomposable && q.is_sst,
        "5-dim: {q:?}"
    );
    let s = classify(&gallery::su2_sasaki()).map_err(|e| e.to_string())?;
    ensure!(s.primary == PrimaryClass::AlphaSasaki(int(2)), "su2: {}", s.primary);
    let n = classify(&gallery::ex_7d_nilpotent()).map_err(|e| e.to_string())?;
    ensure!(n.is_balanced && !n.is_quasi_sasaki, "7-dim: {n:?}");
    Ok("quasi-Sasaki/SST, Sasaki, balanced non-quasi-Sasaki".into())
}

fn compact_group() -> Outcome {
    let s = u_n_canonical_sst(3).map_err(|e| e.to_string())?;
    ensure!(is_normal(&s).map_err(|e| e.to_string())?, "S != 0");
    ensure!(is_killing(&s), "xi not Killing");
    let fe = field_eq_report(&s).map_err(|e| e.to_string())?;
    ensure!(fe.closed(), "dc != 0");
    ensure!(fe.coclosed(), "d*c != 0");
    ensure!(fe.flat, "curvature != 0");
    ensure!(fe.ricci_flat(), "Ric != 0");
    Ok("u(3): S = 0, Killing, dc = 0, d*c = 0, R = 0, Ric = 0".into())
}

fn cylinder_bridge() -> Outcome {
    let mut full_balanced = 0;
    for (name, s) in gallery::all() {
        let cl = classify(&s).map_err(|e| e.to_string())?;
        let h = cylinder(&s).map_err(|e| e.to_string())?;
        ensure!(is_skt(&h).map_err(|e| e.to_string())? == cl.is_sst, "{name}: SKT vs SST");
        let (horizontal, ds_part) = cylinder_lee(&s).map_err(|e| e.to_string())?;
        ensure!(horizontal == lee_form(&s).map_err(|e| e.to_string())?, "{name}: Lee lift");
        ensure!(horizontal.is_zero() == cl.is_balanced, "{name}: balanced");
        ensure!(
            ds_part == -phi_trace(&s, &s.d_eta()) * frac(1, 2),
            "{name}: ds component of the KT Lee form"
        );
        full_balanced += usize::from(cl.is_balanced && ds_part == int(0));
    }
    Ok(format!(
        "SKT iff SST; horizontal KT Lee = lift of Lee form; {full_balanced} cylinders fully balanced"
    ))
}

fn cone_warped() -> Outcome {
    let fs = ["1", "r", "r^2", "1 + r"];
    for (name, s) in gallery::all() {
        for f in fs {
            let f = RFun::poly(f.parse().map_err(|e: stgeom::Error| e.to_string())?);
            let direct = warped_torsion_direct(&s, &f).map_err(|e| e.to_string())?;
            let formula = warped_torsion_formula(&s, &f).map_err(|e| e.to_string())?;
            ensure!(direct == formula, "{name}, f = {f}");
        }
    }
    let su2 = cone_report(&gallery::su2_sasaki()).map_err(|e| e.to_string())?;
    ensure!(su2.closed, "su2 cone torsion not closed");
    let nil = cone_report(&gallery::ex_7d_nilpotent()).map_err(|e| e.to_string())?;
    ensure!(!nil.closed, "7-dim cone torsion closed");
    Ok("direct = formula for f in {1, r, r^2, 1+r}; su2 cone closed, 7-dim cone not closed".into())
}

fn lee() -> Outcome {
    let mut five = 0;
    for (name, s) in gallery::all() {
        let [a, b, c] = lee_forms(&s).map_err(|e| e.to_string())?;
        ensure!(a == b && b == c, "{name}: {a} / {b} / {c}");
        if s.dim() == 5 {
            ensure!(dim5_lee_identity(&s).map_err(|e| e.to_string())?, "{name}: dF != theta^F");
            five += 1;
        }
    }
    Ok(format!("three formulas agree; dF = theta^F on {five} five-dimensional structures"))
}

fn transformations() -> Outcome {
    for (name, s) in gallery::all() {
        let c = torsion(&s).map_err(|e| e.to_string())?;
        let theta = lee_form(&s).map_err(|e| e.to_string())?;
        for a in [int(2), int(3), frac(5, 2)] {
            let t = homothety(&s, &a).map_err(|e| e.to_string())?;
            ensure!(*t.fundamental() == s.fundamental().scale(&a), "{name}: F~ at a = {a}");
            ensure!(lee_form(&t).map_err(|e| e.to_string())? == theta, "{name}: Lee at a = {a}");
            let expected = (&s.eta().wedge(&s.d_eta()).scale(&(&a - int(1))) + &c).scale(&a);
            ensure!(torsion(&t).map_err(|e| e.to_string())? == expected, "{name}: c~ at a = {a}");
        }
        for (p, q) in [(int(2), frac(1, 3)), (frac(5, 2), int(4))] {
            let twice = conformal_const(&conformal_const(&s, &p).map_err(|e| e.to_string())?, &q)
                .map_err(|e| e.to_string())?;
            let once = conformal_const(&s, &(&p * &q)).map_err(|e| e.to_string())?;
            ensure!(twice == once, "{name}: conformal composition");
        }
    }
    Ok("homothety laws for a in {2, 3, 5/2}; conformal composition".into())
}

fn houri() -> Outcome {
    for (name, s) in gallery::all() {
        let t = houri_torsion(&s).map_err(|e| e.to_string())?;
        let lhs = &s.d_eta() - &t.interior(s.xi()).map_err(|e| e.to_string())?;
        ensure!(lhs == s.fundamental().scale(&int(2)), "{name}: {lhs}");
    }
    Ok("deta - xi _| T = 2F on the gallery".into())
}

fn moment_maps() -> Outcome {
    let k = 2;
    let lambda: Vec<Rational> = vec![int(1), int(2), int(5)];
    for p in rational_sphere_points(k, 100, 2024) {
        let r = moment_check_sphere(k, &p, &lambda).map_err(|e| e.to_string())?;
        ensure!(r.dmu_xi == int(0), "sphere: dmu(xi) = {}", r.dmu_xi);
    }
    let mut rng = common::rng(99);
    for _ in 0..100 {
        let p: Vec<Rational> = (0..2 * k + 3)
            .map(|_| frac(rand::Rng::gen_range(&mut rng, -9..=9), rand::Rng::gen_range(&mut rng, 1..=7)))
            .collect();
        let r = moment_check_euclid(k, &p, &lambda).map_err(|e| e.to_string())?;
        ensure!(r.dmu_xi == int(0), "euclid: dmu(xi) = {}", r.dmu_xi);
        ensure!(r.dmu_phi_x == &r.norm * int(2), "euclid: dmu(phi X) = {}", r.dmu_phi_x);
    }
    Ok("100 sphere points and 100 Euclidean points, exact".into())
}

fn batteries() -> Outcome {
    let mut rng = common::rng(7);
    for t in 0..200 {
        let n = 1 + t % 7;
        let l = common::random_algebra(&mut rng, n);
        ensure!(l.jacobi_check(), "random algebra {t} fails Jacobi");
        for k in 0..=n.min(4) {
            let a = common::random_form(&mut rng, n, k);
            ensure!(l.d(&l.d(&a)).is_zero(), "d^2 != 0 on algebra {t}, degree {k}");
        }
    }
    for (name, s) in gallery::all() {
        let conn = st_connection(&s).map_err(|e| e.to_string())?;
        let c = torsion(&s).map_err(|e| e.to_string())?;
        ensure!(conn.torsion_form(s.algebra(), s.metric()) == Some(c.clone()), "{name}: torsion");
        ensure!(check_parallel(&s, &conn).passed(), "{name}: parallel");
        ensure!(type_check_21_12(&s, &c).map_err(|e| e.to_string())?, "{name}: type");
    }
    Ok("d^2 = 0 on 200 random algebras; torsion tensor and type identities on the gallery".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("connection table", connection_table),
        ("torsion forms", torsion_forms),
        ("classification", classification),
        ("compact group", compact_group),
        ("cylinder bridge", cylinder_bridge),
        ("cone and warped products", cone_warped),
        ("Lee form", lee),
        ("transformations", transformations),
        ("Houri bridge", houri),
        ("moment maps", moment_maps),
        ("property batteries", batteries),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {title}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {title}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
