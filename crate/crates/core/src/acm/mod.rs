//! Almost contact metric structures `(g, ξ, η, φ)` on Lie algebras.

mod lee;
mod normal;
mod torsion;
mod transform;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

pub use lee::{dim5_lee_identity, lee_form, lee_forms, phi_trace, type_check_11, type_check_21_12};
pub use normal::{is_killing, is_normal, is_st, is_st_by_derivatives, killing_failure, lie_derivative, sasaki_hatakeyama};
pub use torsion::{
    characteristic_form, check_parallel, classify, d_phi, field_eq_report, hol_span, st_connection,
    torsion, Classification, FieldEqReport, HolonomyReport, ParallelReport, PrimaryClass,
};
pub use transform::{conformal_const, homothety, houri_torsion};

use crate::error::{Error, Result};
use crate::form::KForm;
use crate::lie::LieAlgebra;
use crate::linalg::{Endo, Matrix, Metric, Vector};
use crate::rational::Rational;

/// Lie algebra with metric, Reeb vector and `φ`. `η = g(ξ, ·)` and
/// `F = g(φ·, ·)` are computed once at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct AcmStructure {
    algebra: LieAlgebra,
    metric: Metric,
    xi: Vector,
    phi: Endo,
    eta: KForm,
    fundamental: KForm,
}

impl AcmStructure {
    /// Assembles the data after checking only that dimensions agree. Use
    /// [`validate`] or [`AcmStructure::new`] to check the structure equations.
    pub fn unchecked(algebra: LieAlgebra, metric: Metric, xi: Vector, phi: Endo) -> Result<Self> {
        let n = algebra.dim();
        for m in [metric.dim(), xi.dim(), phi.dim()] {
            if m != n {
                return Err(Error::DimensionMismatch(n, m));
            }
        }
        let eta = KForm::from_covector(&metric.flat(&xi));
        let w = &phi.transpose() * metric.gram();
        let mut fundamental = KForm::zero(n, 2);
        for i in 0..n {
            for j in i + 1..n {
                fundamental = &fundamental + &KForm::monomial(n, &[i, j], w.get(i, j).clone());
            }
        }
        Ok(AcmStructure {
            algebra,
            metric,
            xi,
            phi,
            eta,
            fundamental,
        })
    }

    /// Assembles and validates.
    pub fn new(algebra: LieAlgebra, metric: Metric, xi: Vector, phi: Endo) -> Result<Self> {
        let s = Self::unchecked(algebra, metric, xi, phi)?;
        validate(&s).into_result()?;
        Ok(s)
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

    pub fn xi(&self) -> &Vector {
        &self.xi
    }

    pub fn phi(&self) -> &Endo {
        &self.phi
    }

    pub fn eta(&self) -> &KForm {
        &self.eta
    }

    /// `F = g(φ·, ·)`.
    pub fn fundamental(&self) -> &KForm {
        &self.fundamental
    }

    /// `dη`.
    pub fn d_eta(&self) -> KForm {
        self.algebra.d(&self.eta)
    }

    /// `dF`.
    pub fn d_fundamental(&self) -> KForm {
        self.algebra.d(&self.fundamental)
    }

    /// The same structure with its Lie algebra replaced (dimensions must agree).
    pub fn with_algebra(&self, algebra: LieAlgebra) -> Result<Self> {
        Self::unchecked(algebra, self.metric.clone(), self.xi.clone(), self.phi.clone())
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        validate(self).into_result()
    }

    pub(crate) fn require_st(&self) -> Result<()> {
        self.require_valid()?;
        if !is_normal(self)? {
            return Err(Error::NotSt("Sasaki-Hatakeyama tensor does not vanish".into()));
        }
        if let Some((i, j)) = killing_failure(self) {
            return Err(Error::NotSt(format!(
                "xi is not Killing at (E{}, E{})",
                i + 1,
                j + 1
            )));
        }
        Ok(())
    }
}

/// One structure equation with the basis indices where it first fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub failure: Option<Vec<usize>>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed())
    }

    pub fn into_result(self) -> Result<()> {
        match self.first_failure() {
            None => Ok(()),
            Some(c) => {
                let at: Vec<String> = c
                    .failure
                    .iter()
                    .flatten()
                    .map(|i| format!("E{}", i + 1))
                    .collect();
                let msg = if at.is_empty() {
                    format!("{} fails", c.name)
                } else {
                    format!("{} fails at ({})", c.name, at.join(", "))
                };
                Err(Error::InvalidStructure(msg))
            }
        }
    }
}

pub const CHECK_ODD: &str = "odd dimension";
pub const CHECK_UNIT: &str = "g(xi, xi) = 1";
pub const CHECK_PHI_XI: &str = "phi(xi) = 0";
pub const CHECK_PHI_SQUARED: &str = "phi^2 = -1 + eta (x) xi";
pub const CHECK_COMPATIBLE: &str = "g(phi X, phi Y) = g(X, Y) - eta(X) eta(Y)";
pub const CHECK_F_SKEW: &str = "F antisymmetric";

/// Exact check of every almost contact metric equation.
pub fn validate(s: &AcmStructure) -> ValidationReport {
    let n = s.dim();
    let g = s.metric.gram();
    let phi = &s.phi;
    let eta = s.metric.flat(&s.xi);
    let mut checks = Vec::new();

    checks.push(Check {
        name: CHECK_ODD,
        failure: n.is_multiple_of(2).then(std::vec::Vec::new),
    });
    checks.push(Check {
        name: CHECK_UNIT,
        failure: (!s.metric.inner(&s.xi, &s.xi).is_one()).then(std::vec::Vec::new),
    });
    let phi_xi = phi.apply(&s.xi);
    checks.push(Check {
        name: CHECK_PHI_XI,
        failure: phi_xi.support().next().map(|(i, _)| vec![i]),
    });

    let target = &(-&Matrix::identity(n)) + &Matrix::outer(&s.xi, &eta);
    let sq = phi * phi;
    checks.push(Check {
        name: CHECK_PHI_SQUARED,
        failure: first_entry_mismatch(&sq, &target),
    });

    let lhs = &(&phi.transpose() * g) * phi;
    let rhs = g - &Matrix::outer(&eta, &eta);
    checks.push(Check {
        name: CHECK_COMPATIBLE,
        failure: first_entry_mismatch(&lhs, &rhs),
    });

    let w = &phi.transpose() * g;
    checks.push(Check {
        name: CHECK_F_SKEW,
        failure: first_entry_mismatch(&w, &(-&w.transpose())),
    });
    ValidationReport { checks }
}

fn first_entry_mismatch(a: &Matrix, b: &Matrix) -> Option<Vec<usize>> {
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            if a.get(i, j) != b.get(i, j) {
                return Some(vec![i, j]);
            }
        }
    }
    None
}

/// Completes a partial table `e^i∘φ = c e^j` to the full matrix of `φ`
/// using `φ² = −1 + η⊗ξ` and `η∘φ = 0`.
///
/// Entries are `(i, c, j)` with 0-based indices; entries sharing `i` add
/// up, and `c = 0` alone declares the row zero. Contradictory or
/// underdetermined tables are rejected.
pub fn complete_phi(metric: &Metric, xi: &Vector, table: &[(usize, Rational, usize)]) -> Result<Endo> {
    let n = metric.dim();
    let eta = metric.flat(xi);
    let mut rows: Vec<Option<Vector>> = vec![None; n];

    fn put(rows: &mut [Option<Vector>], i: usize, v: Vector) -> Result<bool> {
        match &rows[i] {
            Some(old) if *old == v => Ok(false),
            Some(old) => Err(Error::InconsistentPhi(format!(
                "e{}∘phi is both {} and {}",
                i + 1,
                display_covector(old),
                display_covector(&v)
            ))),
            None => {
                rows[i] = Some(v);
                Ok(true)
            }
        }
    }

    let mut given: Vec<Option<Vector>> = vec![None; n];
    let mut seen: BTreeMap<(usize, usize), &Rational> = BTreeMap::new();
    for (i, c, j) in table {
        if *i >= n || *j >= n {
            return Err(Error::IndexOutOfRange {
                index: (*i).max(*j) + 1,
                dim: n,
            });
        }
        if let Some(old) = seen.insert((*i, *j), c) {
            if old != c {
                return Err(Error::InconsistentPhi(format!(
                    "coefficient of e{} in e{}∘phi given twice",
                    j + 1,
                    i + 1
                )));
            }
            continue;
        }
        given[*i]
            .get_or_insert_with(|| Vector::zero(n))
            .axpy(c, &Vector::basis(n, *j));
    }
    for (i, row) in given.into_iter().enumerate() {
        if let Some(row) = row {
            put(&mut rows, i, row)?;
        }
    }

    // e^i∘φ = c e^j  ⇒  e^j∘φ = (−e^i + ξ^i η)/c
    loop {
        let mut changed = false;
        for i in 0..n {
            let Some(row) = rows[i].clone() else { continue };
            let mut support = row.support();
            let (Some((j, c)), None) = (support.next(), support.next()) else {
                continue;
            };
            let c = c.clone();
            let mut derived = Vector::basis(n, i).scale(&-Rational::one());
            derived.axpy(&xi.0[i], &eta);
            changed |= put(&mut rows, j, derived.scale(&c.recip()))?;
        }
        if !changed {
            break;
        }
    }

    let missing: Vec<usize> = (0..n).filter(|&i| rows[i].is_none()).collect();
    if let [k] = missing[..] {
        if !eta.0[k].is_zero() {
            let mut acc = Vector::zero(n);
            for i in (0..n).filter(|&i| i != k) {
                acc.axpy(&eta.0[i], rows[i].as_ref().expect("known row"));
            }
            rows[k] = Some(acc.scale(&-eta.0[k].recip()));
        }
    }
    if let Some(k) = rows.iter().position(Option::is_none) {
        return Err(Error::InconsistentPhi(format!("e{}∘phi is undetermined", k + 1)));
    }
    let rows: Vec<Vec<Rational>> = rows.into_iter().map(|r| r.expect("complete").0).collect();
    Matrix::from_rows(rows)
}

fn display_covector(v: &Vector) -> String {
    KForm::from_covector(v).to_string()
}
