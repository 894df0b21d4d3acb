use num_traits::{One, Signed};

use super::{d_phi, AcmStructure};
use crate::error::{Error, Result};
use crate::form::KForm;
use crate::linalg::{Matrix, Metric};
use crate::rational::{int, Rational};

fn eta_squared(s: &AcmStructure) -> Matrix {
    let eta = s.eta().to_covector();
    Matrix::outer(&eta, &eta)
}

/// Transversal homothety: `g̃ = ag + a(a−1)η⊗η`, `ξ̃ = ξ/a`, `φ̃ = φ`.
pub fn homothety(s: &AcmStructure, a: &Rational) -> Result<AcmStructure> {
    s.require_st()?;
    if !a.is_positive() {
        return Err(Error::Precondition(format!(
            "homothety factor must be positive, got {}",
            crate::rational::to_string(a)
        )));
    }
    let gram = &s.metric().gram().scale(a) + &eta_squared(s).scale(&(a * (a - int(1))));
    let metric = Metric::new(gram)?;
    let xi = s.xi().scale(&a.recip());
    AcmStructure::new(s.algebra().clone(), metric, xi, s.phi().clone())
}

/// Transversal conformal change by a constant factor `λ² = lam2`:
/// `g̃ = λ²g + (1 − λ²)η⊗η`, with `ξ`, `η`, `φ` unchanged.
pub fn conformal_const(s: &AcmStructure, lam2: &Rational) -> Result<AcmStructure> {
    s.require_st()?;
    if !lam2.is_positive() {
        return Err(Error::Precondition(format!(
            "conformal factor must be positive, got {}",
            crate::rational::to_string(lam2)
        )));
    }
    let gram =
        &s.metric().gram().scale(lam2) + &eta_squared(s).scale(&(Rational::one() - lam2));
    let metric = Metric::new(gram)?;
    AcmStructure::new(s.algebra().clone(), metric, s.xi().clone(), s.phi().clone())
}

/// `T = d^φF + dη∧η − 2F∧η`.
pub fn houri_torsion(s: &AcmStructure) -> Result<KForm> {
    s.require_st()?;
    let eta = s.eta();
    let f_eta = s.fundamental().wedge(eta).scale(&int(2));
    Ok(&(&d_phi(s, s.fundamental()) + &s.d_eta().wedge(eta)) - &f_eta)
}
