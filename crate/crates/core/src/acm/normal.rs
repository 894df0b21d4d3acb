use num_traits::Zero;

use super::AcmStructure;
use crate::connection::derivation;
use crate::error::Result;
use crate::form::KForm;
use crate::linalg::Vector;
use crate::tensor::VectorTwoForm;

/// `S(X,Y) = [φX,φY] + φ²[X,Y] − φ[φX,Y] − φ[X,φY] + dη(X,Y)ξ` on basis pairs.
pub fn sasaki_hatakeyama(s: &AcmStructure) -> Result<VectorTwoForm> {
    s.require_valid()?;
    let n = s.dim();
    let l = s.algebra();
    let phi = s.phi();
    let phi2 = phi * phi;
    let deta = s.d_eta();
    Ok(VectorTwoForm::from_fn(n, |i, j| {
        let x = Vector::basis(n, i);
        let y = Vector::basis(n, j);
        let px = phi.apply(&x);
        let py = phi.apply(&y);
        let mut out = l.bracket(&px, &py);
        out = &out + &phi2.apply(l.bracket_basis(i, j));
        out = &out - &phi.apply(&l.bracket(&px, &y));
        out = &out - &phi.apply(&l.bracket(&x, &py));
        out.axpy(&deta.eval_basis(&[i, j]), s.xi());
        out
    }))
}

pub fn is_normal(s: &AcmStructure) -> Result<bool> {
    Ok(sasaki_hatakeyama(s)?.is_zero())
}

/// First basis pair where `g([ξ,X],Y) + g(X,[ξ,Y])` is nonzero.
pub fn killing_failure(s: &AcmStructure) -> Option<(usize, usize)> {
    let ad = s.algebra().ad(s.xi());
    let g = s.metric().gram();
    let ga = g * &ad;
    let n = s.dim();
    for i in 0..n {
        for j in i..n {
            if !(ga.get(j, i) + ga.get(i, j)).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn is_killing(s: &AcmStructure) -> bool {
    killing_failure(s).is_none()
}

/// Normal and Killing.
pub fn is_st(s: &AcmStructure) -> Result<bool> {
    Ok(is_normal(s)? && is_killing(s))
}

/// Lie derivative `L_X a` of a left-invariant form:
/// `(L_X a)(Y_1, …) = −Σ_r a(…, [X, Y_r], …)`.
pub fn lie_derivative(s: &AcmStructure, x: &Vector, a: &KForm) -> KForm {
    let ad = s.algebra().ad(x);
    let images: Vec<KForm> = (0..s.dim())
        .map(|m| KForm::from_covector(&-&ad.row(m)))
        .collect();
    derivation(a, &images)
}

/// Derivative characterization: normal with `ξ⌟dF = 0`, where `L_ξF`
/// computed from the bracket must agree with `ξ⌟dF`.
pub fn is_st_by_derivatives(s: &AcmStructure) -> Result<bool> {
    if !is_normal(s)? {
        return Ok(false);
    }
    let xi_df = s.d_fundamental().interior(s.xi())?;
    let lie = lie_derivative(s, s.xi(), s.fundamental());
    if xi_df != lie {
        return Err(crate::error::Error::Internal(
            "L_xi F differs from xi ⌟ dF".into(),
        ));
    }
    Ok(xi_df.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acm::complete_phi;
    use crate::lie::LieAlgebra;
    use crate::linalg::{Matrix, Metric};
    use crate::rational::int;

    fn su2_sasaki() -> AcmStructure {
        let l = LieAlgebra::new(vec![
            KForm::from_terms(3, 2, &[(-2, &[2, 3])]),
            KForm::from_terms(3, 2, &[(-2, &[3, 1])]),
            KForm::from_terms(3, 2, &[(-2, &[1, 2])]),
        ])
        .unwrap();
        let phi = Matrix::from_int_rows(&[&[0, 0, 0], &[0, 0, 1], &[0, -1, 0]]);
        AcmStructure::new(l, Metric::identity(3), Vector::basis(3, 0), phi).unwrap()
    }

    #[test]
    fn su2_is_normal_and_killing() {
        let s = su2_sasaki();
        assert!(sasaki_hatakeyama(&s).unwrap().is_zero());
        assert!(is_killing(&s));
        assert!(is_st(&s).unwrap());
        assert!(is_st_by_derivatives(&s).unwrap());
    }

    #[test]
    fn abelian_block_is_st() {
        let s = crate::acm::tests::abelian5();
        assert!(is_st(&s).unwrap());
    }

    #[test]
    fn solvable_routes_agree() {
        let l = LieAlgebra::new(vec![
            KForm::from_terms(3, 2, &[(1, &[1, 3])]),
            KForm::zero(3, 2),
            KForm::zero(3, 2),
        ])
        .unwrap();
        let g = Metric::identity(3);
        let xi = Vector::basis(3, 2);
        // φE1 = E2 means e2∘φ = e1
        let phi = complete_phi(&g, &xi, &[(1, int(1), 0)]).unwrap();
        let s = AcmStructure::new(l, g, xi, phi).unwrap();
        assert!(!is_killing(&s));
        let normal = is_normal(&s).unwrap();
        assert_eq!(is_st(&s).unwrap(), is_st_by_derivatives(&s).unwrap());
        assert_eq!(is_st(&s).unwrap(), normal && is_killing(&s));
    }
}
