use std::fmt;

use num_traits::Zero;

use super::{lee_form, AcmStructure};
use crate::connection::{codifferential, lc_connection, phi_inverse_connection, Connection};
use crate::error::{Error, Result};
use crate::form::KForm;
use crate::linalg::{rank, Endo, Matrix};
use crate::rational::{int, Rational};

/// `d^φa = da(φ·, …, φ·)`.
pub fn d_phi(s: &AcmStructure, a: &KForm) -> KForm {
    s.algebra().d(a).pullback_endo(s.phi())
}

/// `η∧dη + d^φF`, without checking that the structure is ST.
pub fn characteristic_form(s: &AcmStructure) -> KForm {
    &s.eta().wedge(&s.d_eta()) + &d_phi(s, s.fundamental())
}

/// Torsion 3-form `c = η∧dη + d^φF` of an ST structure.
pub fn torsion(s: &AcmStructure) -> Result<KForm> {
    s.require_st()?;
    Ok(characteristic_form(s))
}

/// `∇ = ∇^LC + c/2`. For orthonormal bases the result is recomputed from
/// `Φ⁻¹(d) + c/2` and the two must agree.
pub fn st_connection(s: &AcmStructure) -> Result<Connection> {
    let c = torsion(s)?;
    let g = s.metric();
    let conn = lc_connection(s.algebra(), g)?.add_half_torsion(g, &c);
    if g.is_identity() {
        let other = phi_inverse_connection(s.algebra(), g)?.add_half_torsion(g, &c);
        if other != conn {
            return Err(Error::Internal(
                "Koszul and Phi^-1 reconstructions of the ST connection differ".into(),
            ));
        }
    }
    Ok(conn)
}

/// Where a connection fails to preserve `g`, `ξ` or `φ`, and whether its
/// torsion is the characteristic 3-form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelReport {
    /// `(i, j, k)` with `g(∇_{E_i}E_j, E_k) + g(E_j, ∇_{E_i}E_k) ≠ 0`.
    pub metric: Option<(usize, usize, usize)>,
    /// `i` with `∇_{E_i}ξ ≠ 0`.
    pub xi: Option<usize>,
    /// `(i, j)` with `(∇_{E_i}φ)E_j ≠ 0`.
    pub phi: Option<(usize, usize)>,
    pub torsion_matches: bool,
}

impl ParallelReport {
    pub fn passed(&self) -> bool {
        self.metric.is_none() && self.xi.is_none() && self.phi.is_none() && self.torsion_matches
    }
}

pub fn check_parallel(s: &AcmStructure, conn: &Connection) -> ParallelReport {
    let n = s.dim();
    let mut xi = None;
    let mut phi = None;
    for i in 0..n {
        let a = conn.matrix(i);
        if xi.is_none() && !a.apply(s.xi()).is_zero() {
            xi = Some(i);
        }
        if phi.is_none() {
            let dphi = a.commutator(s.phi());
            if let Some(j) = (0..n).find(|&j| !dphi.column(j).is_zero()) {
                phi = Some((i, j));
            }
        }
    }
    let torsion_matches =
        conn.torsion_form(s.algebra(), s.metric()) == Some(characteristic_form(s));
    ParallelReport {
        metric: conn.metric_failure(s.metric()),
        xi,
        phi,
        torsion_matches,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimaryClass {
    /// `c = 0` (cosymplectic, co-Kähler, α-Kenmotsu within ST).
    Cosymplectic,
    /// `c = η∧dη`.
    QuasiSasaki,
    /// `c = αη∧F`, `α ≠ 0`; Sasaki when `α = 2`.
    AlphaSasaki(Rational),
    GenericSt,
}

impl PrimaryClass {
    pub fn is_sasaki(&self) -> bool {
        matches!(self, PrimaryClass::AlphaSasaki(a) if *a == int(2))
    }
}

impl fmt::Display for PrimaryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimaryClass::Cosymplectic => write!(f, "cosymplectic"),
            PrimaryClass::QuasiSasaki => write!(f, "quasi-Sasaki"),
            PrimaryClass::AlphaSasaki(a) if *a == int(2) => write!(f, "Sasaki"),
            PrimaryClass::AlphaSasaki(a) => {
                write!(f, "alpha-Sasaki (alpha = {})", crate::rational::to_string(a))
            }
            PrimaryClass::GenericSt => write!(f, "generic ST"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub primary: PrimaryClass,
    /// `dc = 0`.
    pub is_sst: bool,
    /// Lee form vanishes.
    pub is_balanced: bool,
    /// `dη∧dη = 0`.
    pub deta_decomposable: bool,
    pub is_normal: bool,
    pub is_killing: bool,
    /// `c = η∧dη`, which also holds in the cosymplectic and α-Sasaki classes.
    pub is_quasi_sasaki: bool,
}

/// Rational `α ≠ 0` with `c = αη∧F`, if any.
fn alpha_of(c: &KForm, eta_f: &KForm) -> Option<Rational> {
    let (idx, x) = eta_f.terms().next()?;
    let alpha = c.coeff(*idx) / x;
    (!alpha.is_zero() && *c == eta_f.scale(&alpha)).then_some(alpha)
}

pub fn classify(s: &AcmStructure) -> Result<Classification> {
    let c = torsion(s)?;
    let l = s.algebra();
    let deta = s.d_eta();
    let eta_deta = s.eta().wedge(&deta);
    let eta_f = s.eta().wedge(s.fundamental());
    let is_quasi_sasaki = c == eta_deta;
    let primary = if c.is_zero() {
        PrimaryClass::Cosymplectic
    } else if let Some(alpha) = alpha_of(&c, &eta_f) {
        PrimaryClass::AlphaSasaki(alpha)
    } else if is_quasi_sasaki {
        PrimaryClass::QuasiSasaki
    } else {
        PrimaryClass::GenericSt
    };
    Ok(Classification {
        primary,
        is_sst: l.d(&c).is_zero(),
        is_balanced: lee_form(s)?.is_zero(),
        deta_decomposable: deta.wedge(&deta).is_zero(),
        is_normal: true,
        is_killing: true,
        is_quasi_sasaki,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FieldEqReport {
    pub ricci: Matrix,
    /// `d*c`.
    pub codifferential: KForm,
    pub dc: KForm,
    pub flat: bool,
}

impl FieldEqReport {
    pub fn ricci_flat(&self) -> bool {
        self.ricci.is_zero()
    }

    pub fn coclosed(&self) -> bool {
        self.codifferential.is_zero()
    }

    pub fn closed(&self) -> bool {
        self.dc.is_zero()
    }
}

/// `Ric^∇`, `d*c`, `dc` and flatness of the ST connection.
pub fn field_eq_report(s: &AcmStructure) -> Result<FieldEqReport> {
    let conn = st_connection(s)?;
    let c = characteristic_form(s);
    let l = s.algebra();
    Ok(FieldEqReport {
        ricci: conn.ricci(l),
        codifferential: codifferential(l, s.metric(), &c)?,
        dc: l.d(&c),
        flat: conn.is_flat(l),
    })
}

/// Lie algebra generated by the curvature of the ST connection, closed under
/// commutators and under `[∇_X, ·]`, with `u(k)`/`su(k)` containment flags.
#[derive(Clone, Debug, PartialEq)]
pub struct HolonomyReport {
    pub basis: Vec<Endo>,
    pub kills_xi: bool,
    pub skew: bool,
    pub commutes_with_phi: bool,
    /// `tr(φA) = 0` for every element.
    pub phi_traceless: bool,
}

fn flatten(m: &Endo) -> Vec<Rational> {
    m.entries().to_vec()
}

pub fn hol_span(s: &AcmStructure) -> Result<HolonomyReport> {
    let conn = st_connection(s)?;
    let n = s.dim();
    let a: Vec<Endo> = (0..n).map(|i| conn.matrix(i)).collect();
    let mut basis: Vec<Endo> = Vec::new();
    let mut flat: Vec<Vec<Rational>> = Vec::new();
    let push = |m: Endo, basis: &mut Vec<Endo>, flat: &mut Vec<Vec<Rational>>| {
        if m.is_zero() {
            return false;
        }
        flat.push(flatten(&m));
        if rank(flat) == flat.len() {
            basis.push(m);
            true
        } else {
            flat.pop();
            false
        }
    };
    for (_, r) in conn.curvature(s.algebra()) {
        push(r, &mut basis, &mut flat);
    }
    let mut done = 0;
    while done < basis.len() {
        let b = basis[done].clone();
        for ax in &a {
            push(ax.commutator(&b), &mut basis, &mut flat);
        }
        for k in 0..done {
            let c = b.commutator(&basis[k]);
            push(c, &mut basis, &mut flat);
        }
        done += 1;
    }
    let g = s.metric();
    let phi = s.phi();
    Ok(HolonomyReport {
        kills_xi: basis.iter().all(|m| m.apply(s.xi()).is_zero()),
        skew: basis.iter().all(|m| g.is_skew(m)),
        commutes_with_phi: basis.iter().all(|m| m.commutator(phi).is_zero()),
        phi_traceless: basis.iter().all(|m| (phi * m).trace().is_zero()),
        basis,
    })
}
