use num_traits::Zero;

use super::{characteristic_form, AcmStructure};
use crate::connection::codifferential;
use crate::error::{Error, Result};
use crate::form::KForm;
use crate::linalg::Vector;
use crate::rational::{frac, Rational};

/// `Σ_{i,j} g^{ij} b(E_i, φE_j)` for a 2-form `b`.
pub fn phi_trace(s: &AcmStructure, b: &KForm) -> Rational {
    let n = s.dim();
    let g = s.metric();
    let phi = s.phi();
    let mut total = Rational::zero();
    for (idx, x) in b.terms() {
        let mut it = idx.indices();
        let (p, q) = (it.next().unwrap(), it.next().unwrap());
        // b = x e^p∧e^q contributes x (g^{pj} φ_qj − g^{qj} φ_pj)
        for j in 0..n {
            let t = g.g_inv(p, j) * phi.get(q, j) - g.g_inv(q, j) * phi.get(p, j);
            total += x * t;
        }
    }
    total
}

/// The Lee form computed as
/// `−½ Σ g^{ij} c(φX, E_i, φE_j)`, `½ Σ g^{ij} dF(X, E_i, φE_j)` and
/// `−(d*F)(φX)`, in that order.
pub fn lee_forms(s: &AcmStructure) -> Result<[KForm; 3]> {
    s.require_st()?;
    let n = s.dim();
    let c = characteristic_form(s);
    let df = s.d_fundamental();
    let codiff = codifferential(s.algebra(), s.metric(), s.fundamental())?.to_covector();
    let half = frac(1, 2);
    let mut first = Vector::zero(n);
    let mut second = Vector::zero(n);
    let mut third = Vector::zero(n);
    for a in 0..n {
        let phi_a = s.phi().column(a);
        first.0[a] = -phi_trace(s, &c.interior(&phi_a)?) * &half;
        second.0[a] = phi_trace(s, &df.interior_basis(a)?) * &half;
        third.0[a] = -codiff.dot(&phi_a);
    }
    Ok([first, second, third].map(|v| KForm::from_covector(&v)))
}

/// Lee form `ϑ`; errors if the three formulas disagree.
pub fn lee_form(s: &AcmStructure) -> Result<KForm> {
    let [a, b, c] = lee_forms(s)?;
    if a != b || a != c {
        return Err(Error::LeeInconsistency(format!(
            "torsion trace {a}, dF trace {b}, codifferential {c}"
        )));
    }
    Ok(a)
}

/// `dF = ϑ∧F` in dimension 5.
pub fn dim5_lee_identity(s: &AcmStructure) -> Result<bool> {
    if s.dim() != 5 {
        return Err(Error::DimensionMismatch(5, s.dim()));
    }
    let theta = lee_form(s)?;
    Ok(s.d_fundamental() == theta.wedge(s.fundamental()))
}

/// `b(φX, φY) = b(X, Y)` for a 2-form with `ξ⌟b = 0`.
pub fn type_check_11(s: &AcmStructure, b: &KForm) -> Result<bool> {
    b.degree_check(2)?;
    if !b.interior(s.xi())?.is_zero() {
        return Err(Error::Precondition("xi ⌟ b is nonzero".into()));
    }
    Ok(b.pullback_endo(s.phi()) == *b)
}

/// `c(X,Y,Z) = c(φX,φY,Z) + c(φX,Y,φZ) + c(X,φY,φZ)` on all basis triples.
pub fn type_check_21_12(s: &AcmStructure, c: &KForm) -> Result<bool> {
    c.degree_check(3)?;
    let n = s.dim();
    let phi = s.phi();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (x, y, z) = (Vector::basis(n, i), Vector::basis(n, j), Vector::basis(n, k));
                let (px, py, pz) = (phi.column(i), phi.column(j), phi.column(k));
                let rhs = c.eval(&[px.clone(), py.clone(), z.clone()])
                    + c.eval(&[px, y.clone(), pz.clone()])
                    + c.eval(&[x.clone(), py, pz]);
                if c.eval(&[x, y, z]) != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acm::tests::abelian5;

    #[test]
    fn abelian_lee_vanishes() {
        let s = abelian5();
        assert!(lee_form(&s).unwrap().is_zero());
        assert!(dim5_lee_identity(&s).unwrap());
    }

    #[test]
    fn type_checks_on_abelian() {
        let s = abelian5();
        assert!(type_check_11(&s, s.fundamental()).unwrap());
        let b = s.eta().wedge(&KForm::basis(5, 0));
        assert!(matches!(type_check_11(&s, &b), Err(Error::Precondition(_))));
        // e1^e3^e5 has a (2,0)+(0,2) horizontal part and fails
        let bad = KForm::from_terms(5, 3, &[(1, &[1, 3, 5])]);
        assert!(!type_check_21_12(&s, &bad).unwrap());
        let good = s.eta().wedge(s.fundamental());
        assert!(type_check_21_12(&s, &good).unwrap());
    }
}
