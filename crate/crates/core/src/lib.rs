//! Exact left-invariant geometry of almost contact metric structures on Lie
//! algebras: Chevalley–Eilenberg calculus, characteristic connections with
//! skew torsion, Hermitian bridges and warped products.

pub mod acm;
pub mod connection;
pub mod error;
pub mod form;
pub mod gallery;
pub mod hermitian;
pub mod lie;
pub mod linalg;
pub mod rational;
pub mod tensor;
pub mod warped;

pub use acm::{AcmStructure, Classification, PrimaryClass};
pub use connection::{codifferential, lc_connection, phi_inverse_connection, Connection};
pub use error::{Error, Result};
pub use hermitian::HermitianStructure;
pub use form::{Form, KForm, MultiIndex};
pub use lie::LieAlgebra;
pub use linalg::{Endo, Matrix, Metric, Vector};
pub use rational::Rational;
pub use warped::{Poly, RFun, WForm};
