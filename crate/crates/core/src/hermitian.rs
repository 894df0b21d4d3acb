//! Hermitian structures on even-dimensional Lie algebras and the
//! constructions linking them to almost contact metric structures.

use num_traits::{One, Zero};

use crate::acm::{self, is_normal, AcmStructure};
use crate::error::{Error, Result};
use crate::form::KForm;
use crate::lie::LieAlgebra;
use crate::linalg::{block_sum, Endo, Matrix, Metric, Vector};
use crate::rational::{frac, Rational};
use crate::tensor::VectorTwoForm;

/// `(g, J)` on a Lie algebra, with `ω = g(J·, ·)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianStructure {
    algebra: LieAlgebra,
    metric: Metric,
    j: Endo,
    omega: KForm,
}

fn two_form_of(w: &Matrix) -> KForm {
    let n = w.dim();
    let mut out = KForm::zero(n, 2);
    for a in 0..n {
        for b in a + 1..n {
            out = &out + &KForm::monomial(n, &[a, b], w.get(a, b).clone());
        }
    }
    out
}

impl HermitianStructure {
    /// Checks `J² = −1` and `g(JX, JY) = g(X, Y)`.
    pub fn new(algebra: LieAlgebra, metric: Metric, j: Endo) -> Result<Self> {
        let n = algebra.dim();
        for m in [metric.dim(), j.dim()] {
            if m != n {
                return Err(Error::DimensionMismatch(n, m));
            }
        }
        if n % 2 == 1 {
            return Err(Error::InvalidHermitian(format!("odd dimension {n}")));
        }
        if &j * &j != -&Matrix::identity(n) {
            return Err(Error::InvalidHermitian("J^2 != -1".into()));
        }
        let g = metric.gram();
        if &(&j.transpose() * g) * &j != *g {
            return Err(Error::InvalidHermitian("g is not J-invariant".into()));
        }
        let omega = two_form_of(&(&j.transpose() * g));
        Ok(HermitianStructure {
            algebra,
            metric,
            j,
            omega,
        })
    }

    /// Recovers `J` from `g(J·, ·) = ω`, i.e. `J = −g⁻¹W` with
    /// `W_ab = ω(E_a, E_b)`.
    pub fn from_omega(algebra: LieAlgebra, metric: Metric, omega: &KForm) -> Result<Self> {
        let n = algebra.dim();
        omega.degree_check(2)?;
        let mut w = Matrix::zero(n);
        for a in 0..n {
            for b in 0..n {
                w.set(a, b, omega.eval_basis(&[a, b]));
            }
        }
        let j = -&(metric.inverse() * &w);
        Self::new(algebra, metric, j)
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn j(&self) -> &Endo {
        &self.j
    }

    pub fn omega(&self) -> &KForm {
        &self.omega
    }
}

/// `N(X,Y) = [JX,JY] − [X,Y] − J[JX,Y] − J[X,JY]` on basis pairs.
pub fn nijenhuis(h: &HermitianStructure) -> VectorTwoForm {
    let n = h.dim();
    let l = &h.algebra;
    let j = &h.j;
    VectorTwoForm::from_fn(n, |a, b| {
        let x = Vector::basis(n, a);
        let y = Vector::basis(n, b);
        let (jx, jy) = (j.apply(&x), j.apply(&y));
        let mut out = &l.bracket(&jx, &jy) - l.bracket_basis(a, b);
        out = &out - &j.apply(&l.bracket(&jx, &y));
        &out - &j.apply(&l.bracket(&x, &jy))
    })
}

pub fn is_integrable(h: &HermitianStructure) -> bool {
    nijenhuis(h).is_zero()
}

fn require_integrable(h: &HermitianStructure) -> Result<()> {
    if is_integrable(h) {
        Ok(())
    } else {
        Err(Error::NotIntegrable)
    }
}

/// Bismut torsion `dω(J·, J·, J·)`.
pub fn kt_torsion(h: &HermitianStructure) -> Result<KForm> {
    require_integrable(h)?;
    Ok(h.algebra.d(&h.omega).pullback_endo(&h.j))
}

pub fn is_skt(h: &HermitianStructure) -> Result<bool> {
    Ok(h.algebra.d(&kt_torsion(h)?).is_zero())
}

/// `θ(X) = ½ Σ g^{ij} dω(X, E_i, JE_j)`.
pub fn kt_lee(h: &HermitianStructure) -> Result<KForm> {
    require_integrable(h)?;
    let n = h.dim();
    let domega = h.algebra.d(&h.omega);
    let half = frac(1, 2);
    let mut theta = Vector::zero(n);
    for x in 0..n {
        let b = domega.interior_basis(x)?;
        let mut total = Rational::zero();
        for i in 0..n {
            for jj in 0..n {
                let gij = h.metric.g_inv(i, jj);
                if gij.is_zero() {
                    continue;
                }
                total += gij * b.eval(&[Vector::basis(n, i), h.j.column(jj)]);
            }
        }
        theta.0[x] = total * &half;
    }
    Ok(KForm::from_covector(&theta))
}

/// Cylinder `ℝT ⊕ L`: `T` is `E_0`, the base indices move up by one, and
/// `ω_K = ds∧η + F` with `ds = e^0`, so `JT = ξ` and `Jξ = −T`.
pub fn cylinder(s: &AcmStructure) -> Result<HermitianStructure> {
    s.require_st()?;
    let n = s.dim();
    let algebra = LieAlgebra::abelian(1).direct_sum(s.algebra());
    let metric = Metric::identity(1).direct_sum(s.metric());
    let ds = KForm::basis(n + 1, 0);
    let omega = &ds.wedge(&s.eta().shift(n + 1, 1)) + &s.fundamental().shift(n + 1, 1);
    HermitianStructure::from_omega(algebra, metric, &omega)
}

/// Lee form of [`cylinder`] split as `θ = θ_N + θ_s ds`. The horizontal
/// part is the lift of the ST Lee form; `θ_s = −½ Σ g^{ij} dη(E_i, φE_j)`
/// is nonzero on Sasaki bases, where the cylinder is only locally
/// conformally Kähler.
pub fn cylinder_lee(s: &AcmStructure) -> Result<(KForm, Rational)> {
    let theta = kt_lee(&cylinder(s)?)?.to_covector();
    let n = s.dim();
    let horizontal = KForm::from_covector(&Vector(theta.0[1..=n].to_vec()));
    Ok((horizontal, theta.0[0].clone()))
}

/// Morimoto product on `L₊ ⊕ L₋` with `ω_P = η₋∧η₊ + F₋ + F₊`.
pub fn product(plus: &AcmStructure, minus: &AcmStructure) -> Result<HermitianStructure> {
    for (name, s) in [("first", plus), ("second", minus)] {
        if !is_normal(s)? {
            return Err(Error::Precondition(format!("{name} factor is not normal")));
        }
    }
    let (p, m) = (plus.dim(), minus.dim());
    let total = p + m;
    let algebra = plus.algebra().direct_sum(minus.algebra());
    let metric = plus.metric().direct_sum(minus.metric());
    let eta_p = plus.eta().shift(total, 0);
    let eta_m = minus.eta().shift(total, p);
    let omega = &(&eta_m.wedge(&eta_p) + &minus.fundamental().shift(total, p))
        + &plus.fundamental().shift(total, 0);
    HermitianStructure::from_omega(algebra, metric, &omega)
}

/// Extension `L ⊕ ℝξ` with `dη = σ`, metric `g ⊕ 1` and `φ = J ⊕ 0`.
pub fn central_extension_st(h: &HermitianStructure, sigma: &KForm) -> Result<AcmStructure> {
    require_integrable(h)?;
    let n = h.dim();
    if sigma.dim() != n {
        return Err(Error::DimensionMismatch(n, sigma.dim()));
    }
    if !sigma.is_zero() {
        sigma.degree_check(2)?;
    }
    if !h.algebra.d(sigma).is_zero() {
        return Err(Error::Precondition("sigma is not closed".into()));
    }
    if sigma.pullback_endo(&h.j) != *sigma {
        return Err(Error::Precondition("sigma is not of type (1,1)".into()));
    }
    let algebra = h.algebra.extend(std::slice::from_ref(sigma))?;
    let metric = h.metric.direct_sum(&Metric::identity(1));
    let phi = block_sum(&h.j, &Matrix::zero(1));
    AcmStructure::new(algebra, metric, Vector::basis(n + 1, n), phi)
}

/// Torus extension `L ⊕ ℝX₁ ⊕ ℝX₂` with `dω_i = σ_i`,
/// `ξ̂ = tX₁ + sX₂` and `φ̂ = φ + η̂⊥⊗ξ − η⊗ξ̂⊥`, where
/// `η̂⊥ = −sω₁ + tω₂` and `ξ̂⊥ = −sX₁ + tX₂`.
pub fn torus_extension_st(
    s: &AcmStructure,
    sigma1: &KForm,
    sigma2: &KForm,
    st: (&Rational, &Rational),
) -> Result<AcmStructure> {
    let (sv, tv) = st;
    if sv * sv + tv * tv != Rational::one() {
        return Err(Error::Precondition("s^2 + t^2 != 1".into()));
    }
    s.require_st()?;
    let n = s.dim();
    for (k, sigma) in [sigma1, sigma2].into_iter().enumerate() {
        if sigma.dim() != n {
            return Err(Error::DimensionMismatch(n, sigma.dim()));
        }
        let sigma = if sigma.is_zero() { KForm::zero(n, 2) } else { sigma.clone() };
        if !s.algebra().d(&sigma).is_zero() {
            return Err(Error::Precondition(format!("sigma{} is not closed", k + 1)));
        }
        if !acm::type_check_11(s, &sigma)? {
            return Err(Error::Precondition(format!(
                "sigma{} is not phi-invariant",
                k + 1
            )));
        }
    }
    let total = n + 2;
    let algebra = s.algebra().extend(&[sigma1.clone(), sigma2.clone()])?;
    let metric = s.metric().direct_sum(&Metric::identity(2));
    let (x1, x2) = (Vector::basis(total, n), Vector::basis(total, n + 1));
    let xi_hat = &x1.scale(tv) + &x2.scale(sv);
    let xi_perp = &x2.scale(tv) - &x1.scale(sv);
    let eta_perp = xi_perp.clone();
    let xi = lift(s.xi(), total);
    let eta = lift(&s.eta().to_covector(), total);
    let phi = block_sum(s.phi(), &Matrix::zero(2));
    let phi_hat = &(&phi + &Matrix::outer(&xi, &eta_perp)) - &Matrix::outer(&xi_perp, &eta);
    AcmStructure::new(algebra, metric, xi_hat, phi_hat)
}

fn lift(v: &Vector, total: usize) -> Vector {
    let mut out = v.0.clone();
    out.resize(total, Rational::zero());
    Vector(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn kahler4() -> HermitianStructure {
        let j = Matrix::from_int_rows(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
        HermitianStructure::new(LieAlgebra::abelian(4), Metric::identity(4), j).unwrap()
    }

    #[test]
    fn abelian_kahler() {
        let h = kahler4();
        assert!(is_integrable(&h));
        assert!(kt_torsion(&h).unwrap().is_zero());
        assert!(kt_lee(&h).unwrap().is_zero());
        assert_eq!(*h.omega(), KForm::from_terms(4, 2, &[(1, &[1, 2]), (1, &[3, 4])]));
        let again = HermitianStructure::from_omega(h.algebra().clone(), Metric::identity(4), h.omega()).unwrap();
        assert_eq!(again, h);
    }

    #[test]
    fn non_integrable_detected() {
        let l = LieAlgebra::new(vec![
            KForm::from_terms(4, 2, &[(1, &[1, 3])]),
            KForm::zero(4, 2),
            KForm::zero(4, 2),
            KForm::zero(4, 2),
        ])
        .unwrap();
        // J pairs E1 with E2 and E3 with E4; the bracket [E1,E3] breaks it
        let j = Matrix::from_int_rows(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
        let h = HermitianStructure::new(l, Metric::identity(4), j).unwrap();
        assert!(!is_integrable(&h));
        assert_eq!(kt_torsion(&h), Err(Error::NotIntegrable));
    }

    #[test]
    fn rejects_bad_j() {
        let j = Matrix::from_int_rows(&[&[0, -2], &[1, 0]]);
        let r = HermitianStructure::new(LieAlgebra::abelian(2), Metric::identity(2), j);
        assert!(matches!(r, Err(Error::InvalidHermitian(_))));
    }

    #[test]
    fn central_extension_of_flat_kahler() {
        let h = kahler4();
        let sigma = KForm::from_terms(4, 2, &[(1, &[1, 2])]);
        let s = central_extension_st(&h, &sigma).unwrap();
        let c = acm::torsion(&s).unwrap();
        let eta_sigma = s.eta().wedge(&sigma.shift(5, 0));
        assert_eq!(c, eta_sigma);
        assert_eq!(acm::classify(&s).unwrap().primary, acm::PrimaryClass::QuasiSasaki);
        let bad = KForm::from_terms(4, 2, &[(1, &[1, 3])]);
        assert!(matches!(central_extension_st(&h, &bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn central_extension_by_kahler_form_is_alpha_sasaki() {
        let h = kahler4();
        let sigma = h.omega().scale(&int(-1));
        let s = central_extension_st(&h, &sigma).unwrap();
        assert!(matches!(
            acm::classify(&s).unwrap().primary,
            acm::PrimaryClass::AlphaSasaki(_)
        ));
    }

    #[test]
    fn torus_extension_of_abelian() {
        let base = AcmStructure::new(
            LieAlgebra::abelian(3),
            Metric::identity(3),
            Vector::basis(3, 2),
            Matrix::from_int_rows(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]]),
        )
        .unwrap();
        let sigma1 = KForm::from_terms(3, 2, &[(1, &[1, 2])]);
        let sigma2 = KForm::zero(3, 2);
        let s = torus_extension_st(&base, &sigma1, &sigma2, (&int(0), &int(1))).unwrap();
        assert_eq!(*s.xi(), Vector::basis(5, 3));
        assert!(acm::is_st(&s).unwrap());
        let err = torus_extension_st(&base, &sigma1, &sigma2, (&int(1), &int(1)));
        assert!(matches!(err, Err(Error::Precondition(_))));
    }
}
