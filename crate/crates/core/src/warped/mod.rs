//! Forms on `I × N` with coefficients in ℚ(r), and the KT torsion of the
//! warped product `dr² + f(r)²g` over an ST structure.
//!
//! A [`WForm`] lives on a space of dimension `n + 1`: index 0 is `dr`, index
//! `i + 1` is `e^{i+1}` of `N`.

mod poly;

use std::fmt;

use num_traits::{One, Zero};

pub use poly::{Poly, RFun};

use crate::acm::{characteristic_form, AcmStructure};
use crate::error::{Error, Result};
use crate::form::{Coeff, Form, KForm, MultiIndex};
use crate::lie::LieAlgebra;
use crate::rational::int;

/// `a + dr∧b` with `a`, `b` forms on `N` over ℚ(r).
#[derive(Clone, PartialEq)]
pub struct WForm(Form<RFun>);

impl WForm {
    pub fn zero(base_dim: usize, degree: usize) -> Self {
        WForm(Form::zero(base_dim + 1, degree))
    }

    /// `dr`.
    pub fn dr(base_dim: usize) -> Self {
        WForm(Form::basis(base_dim + 1, 0))
    }

    /// A form on `N` with constant coefficients.
    pub fn lift(a: &KForm) -> Self {
        WForm(a.map_coeffs(RFun::from_rational).shift(a.dim() + 1, 1))
    }

    pub fn lift_rfun(a: &Form<RFun>) -> Self {
        WForm(a.shift(a.dim() + 1, 1))
    }

    /// `a + dr∧b`; `b` must have degree one less than `a`.
    pub fn from_parts(a: &Form<RFun>, b: &Form<RFun>) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch(a.dim(), b.dim()));
        }
        if b.degree() + 1 != a.degree() {
            return Err(Error::DegreeMismatch {
                expected: a.degree().saturating_sub(1),
                got: b.degree(),
            });
        }
        let dr = WForm::dr(a.dim());
        Ok(&WForm::lift_rfun(a) + &dr.wedge(&WForm::lift_rfun(b)))
    }

    /// The pair `(a, b)` with `self = a + dr∧b`.
    pub fn parts(&self) -> (Form<RFun>, Form<RFun>) {
        let n = self.base_dim();
        let k = self.degree();
        let mut a = Form::zero(n, k);
        let mut b = Form::zero(n, k.saturating_sub(1));
        for (idx, c) in self.0.terms() {
            let ids: Vec<usize> = idx.indices().filter(|&i| i > 0).map(|i| i - 1).collect();
            let m = MultiIndex::from_sorted(&ids).expect("sorted");
            if idx.contains(0) {
                b.add_term(m, c.clone());
            } else {
                a.add_term(m, c.clone());
            }
        }
        (a, b)
    }

    pub fn base_dim(&self) -> usize {
        self.0.dim() - 1
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn form(&self) -> &Form<RFun> {
        &self.0
    }

    pub fn scale(&self, f: &RFun) -> Self {
        WForm(self.0.scale(f))
    }

    pub fn wedge(&self, o: &WForm) -> Self {
        WForm(self.0.wedge(&o.0))
    }

    /// Every coefficient is a polynomial in `r`.
    pub fn is_polynomial(&self) -> bool {
        self.0.terms().all(|(_, c)| c.is_polynomial())
    }

    /// Substitutes `r = x`; `None` at a pole.
    pub fn eval_at(&self, x: &crate::Rational) -> Option<KForm> {
        let mut out = KForm::zero(self.0.dim(), self.degree());
        for (idx, c) in self.0.terms() {
            out.add_term(*idx, c.eval(x)?);
        }
        Some(out)
    }
}

impl std::ops::Add for &WForm {
    type Output = WForm;
    fn add(self, o: &WForm) -> WForm {
        WForm(&self.0 + &o.0)
    }
}

impl std::ops::Sub for &WForm {
    type Output = WForm;
    fn sub(self, o: &WForm) -> WForm {
        WForm(&self.0 - &o.0)
    }
}

impl std::ops::Neg for &WForm {
    type Output = WForm;
    fn neg(self) -> WForm {
        WForm(-&self.0)
    }
}

fn monomial_name(idx: MultiIndex) -> String {
    idx.indices()
        .map(|i| if i == 0 { "dr".to_string() } else { format!("e{i}") })
        .collect::<Vec<_>>()
        .join("^")
}

impl fmt::Display for WForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (idx, c)) in self.0.terms().enumerate() {
            let coeff = c.to_string();
            let compound = c.numer().coeffs().iter().filter(|x| !x.is_zero()).count() > 1
                || !c.is_polynomial();
            let (neg, abs) = match coeff.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ => (false, coeff),
            };
            match (n == 0, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            let name = monomial_name(*idx);
            if idx.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == "1" {
                write!(f, "{name}")?;
            } else if compound {
                write!(f, "({abs})*{name}")?;
            } else {
                write!(f, "{abs}*{name}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for WForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WForm({self})")
    }
}

/// `d(a + dr∧b) = d_N a + dr∧(∂_r a − d_N b)`.
pub fn wd(l: &LieAlgebra, w: &WForm) -> WForm {
    assert_eq!(l.dim(), w.base_dim(), "form does not live on this algebra");
    let total = LieAlgebra::abelian(1).direct_sum(l);
    let mut out = total.d_generic(&w.0);
    for (idx, c) in w.0.terms() {
        if idx.contains(0) {
            continue;
        }
        let dc = c.derivative();
        if !dc.is_zero() {
            // dr has index 0, so dr∧e^I needs no reordering
            let (m, _) = MultiIndex::single(0).wedge(*idx).expect("no dr in idx");
            out.add_term(m, dc);
        }
    }
    WForm(out)
}

fn require_nonzero(f: &RFun) -> Result<()> {
    if f.is_zero() {
        return Err(Error::Precondition("warping function is zero".into()));
    }
    Ok(())
}

/// `ω_W = f dr∧η + f²F`.
pub fn warped_fundamental(s: &AcmStructure, f: &RFun) -> WForm {
    let n = s.dim();
    let eta = WForm::lift(s.eta());
    let big_f = WForm::lift(s.fundamental());
    &WForm::dr(n).wedge(&eta).scale(f) + &big_f.scale(&(f * f))
}

/// `dω_W(J·, J·, J·)` with `J*dr = −fη`, `J*η = dr/f` and `J*α = α∘φ` on
/// horizontal forms.
pub fn warped_torsion_direct(s: &AcmStructure, f: &RFun) -> Result<WForm> {
    s.require_st()?;
    require_nonzero(f)?;
    let n = s.dim();
    let domega = wd(s.algebra(), &warped_fundamental(s, f));
    let inv_f = f.recip().expect("nonzero");
    let dr = WForm::dr(n);
    let mut images = vec![WForm::lift(s.eta()).scale(&-f).0];
    for i in 0..n {
        let row = WForm::lift(&KForm::from_covector(&s.phi().row(i)));
        let vertical = dr.scale(&(&inv_f * &RFun::constant(s.xi().0[i].clone())));
        images.push((&row + &vertical).0);
    }
    let out = WForm(domega.0.pullback(&images));
    if !out.is_polynomial() {
        return Err(Error::Internal(format!(
            "warped torsion has non-polynomial coefficients: {out}"
        )));
    }
    Ok(out)
}

/// `f²(c − 2f′F∧η)`.
pub fn warped_torsion_formula(s: &AcmStructure, f: &RFun) -> Result<WForm> {
    s.require_st()?;
    require_nonzero(f)?;
    let c = WForm::lift(&characteristic_form(s));
    let f_eta = WForm::lift(&s.fundamental().wedge(s.eta()));
    let two_df = &RFun::constant(int(2)) * &f.derivative();
    Ok((&c - &f_eta.scale(&two_df)).scale(&(f * f)))
}

/// Which case of the SKT dichotomy a closed warped torsion falls under.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SktBranch {
    /// `f` constant and `dc = 0`.
    Constant,
    /// `f′ = slope` constant and nonzero, with `dη = 2·slope·F`.
    Linear { slope: crate::Rational },
}

impl fmt::Display for SktBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SktBranch::Constant => write!(f, "constant f, closed c"),
            SktBranch::Linear { slope } => write!(
                f,
                "linear f with f' = {}, deta = 2f'F",
                crate::rational::to_string(slope)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WarpedSktReport {
    pub torsion: WForm,
    /// `d` of the torsion.
    pub dtorsion: WForm,
    pub closed: bool,
    /// Set only when the torsion is closed and one of the branches matches.
    pub branch: Option<SktBranch>,
}

pub fn warped_skt_report(s: &AcmStructure, f: &RFun) -> Result<WarpedSktReport> {
    let torsion = warped_torsion_direct(s, f)?;
    let dtorsion = wd(s.algebra(), &torsion);
    let closed = dtorsion.is_zero();
    let df = f.derivative();
    let branch = if !closed {
        None
    } else if df.is_zero() {
        s.algebra()
            .d(&characteristic_form(s))
            .is_zero()
            .then_some(SktBranch::Constant)
    } else {
        df.as_constant().and_then(|slope| {
            (s.d_eta() == s.fundamental().scale(&(int(2) * &slope)))
                .then_some(SktBranch::Linear { slope })
        })
    };
    Ok(WarpedSktReport {
        torsion,
        dtorsion,
        closed,
        branch,
    })
}

/// The Riemannian cone, `f = r`.
pub fn cone_report(s: &AcmStructure) -> Result<WarpedSktReport> {
    warped_skt_report(s, &RFun::r())
}

/// The cylinder, `f = 1`.
pub fn cylinder_report(s: &AcmStructure) -> Result<WarpedSktReport> {
    warped_skt_report(s, &RFun::one())
}
