//! Lie algebras given by the differentials of a coframe.
//!
//! The bracket is tied to the differential by
//! `de^i(X, Y) = −e^i([X, Y])`, i.e. `[E_j, E_k] = −Σ_i de^i(E_j, E_k) E_i`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::form::{Coeff, Form, KForm};
use crate::linalg::{Endo, Matrix, Vector};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    d: Vec<KForm>,
    brackets: Vec<Vector>,
}

impl LieAlgebra {
    /// Builds the algebra from `de^i`. The Jacobi identity is not enforced
    /// here; see [`LieAlgebra::jacobi_check`] and [`LieAlgebra::checked`].
    pub fn new(d: Vec<KForm>) -> Result<Self> {
        let n = d.len();
        for de in &d {
            if de.dim() != n {
                return Err(Error::DimensionMismatch(n, de.dim()));
            }
            if !de.is_zero() {
                de.degree_check(2)?;
            }
        }
        let d: Vec<KForm> = d
            .into_iter()
            .map(|de| if de.is_zero() { KForm::zero(n, 2) } else { de })
            .collect();
        let mut brackets = vec![Vector::zero(n); n * n];
        for (i, de) in d.iter().enumerate() {
            for (idx, c) in de.terms() {
                let mut it = idx.indices();
                let (j, k) = (it.next().unwrap(), it.next().unwrap());
                brackets[j * n + k].0[i] -= c;
                brackets[k * n + j].0[i] += c;
            }
        }
        Ok(LieAlgebra { d, brackets })
    }

    /// Like [`LieAlgebra::new`] but rejects data violating Jacobi.
    pub fn checked(d: Vec<KForm>) -> Result<Self> {
        let l = Self::new(d)?;
        match l.jacobi_failure() {
            Some(i) => Err(Error::Jacobi(i)),
            None => Ok(l),
        }
    }

    pub fn abelian(n: usize) -> Self {
        Self::new(vec![KForm::zero(n, 2); n]).expect("abelian data is well formed")
    }

    /// Algebra with prescribed brackets `[E_j, E_k]` for `j < k`.
    pub fn from_brackets(n: usize, bracket: impl Fn(usize, usize) -> Vector) -> Result<Self> {
        let mut d = vec![KForm::zero(n, 2); n];
        for j in 0..n {
            for k in j + 1..n {
                let v = bracket(j, k);
                if v.dim() != n {
                    return Err(Error::DimensionMismatch(n, v.dim()));
                }
                for (i, c) in v.support() {
                    d[i] = &d[i] + &KForm::monomial(n, &[j, k], -c.clone());
                }
            }
        }
        Self::new(d)
    }

    pub fn dim(&self) -> usize {
        self.d.len()
    }

    /// `de^i` (0-based).
    pub fn de(&self, i: usize) -> &KForm {
        &self.d[i]
    }

    pub fn differentials(&self) -> &[KForm] {
        &self.d
    }

    pub fn is_abelian(&self) -> bool {
        self.d.iter().all(KForm::is_zero)
    }

    /// Chevalley–Eilenberg differential.
    pub fn d(&self, a: &KForm) -> KForm {
        self.d_generic(a)
    }

    /// Chevalley–Eilenberg differential applied coefficient-wise to a form
    /// with coefficients in any ℚ-algebra.
    pub fn d_generic<S: Coeff>(&self, a: &Form<S>) -> Form<S> {
        let n = self.dim();
        assert_eq!(a.dim(), n, "form does not live on this algebra");
        let de: Vec<Form<S>> = self.d.iter().map(|f| f.map_coeffs(S::from_rational)).collect();
        let mut out = Form::zero(n, a.degree() + 1);
        for (idx, c) in a.terms() {
            let ids: Vec<usize> = idx.indices().collect();
            for (r, &i) in ids.iter().enumerate() {
                if de[i].is_zero() {
                    continue;
                }
                let left = Form::monomial(n, &ids[..r], S::one());
                let right = Form::monomial(n, &ids[r + 1..], S::one());
                let mut term = left.wedge(&de[i]).wedge(&right).scale(c);
                if r % 2 == 1 {
                    term = -&term;
                }
                out = &out + &term;
            }
        }
        out
    }

    /// First index `i` with `d(de^i) ≠ 0`.
    pub fn jacobi_failure(&self) -> Option<usize> {
        (0..self.dim()).find(|&i| !self.d(&self.d[i]).is_zero())
    }

    pub fn jacobi_check(&self) -> bool {
        self.jacobi_failure().is_none()
    }

    /// `[E_j, E_k]`.
    pub fn bracket_basis(&self, j: usize, k: usize) -> &Vector {
        &self.brackets[j * self.dim() + k]
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        let n = self.dim();
        let mut out = Vector::zero(n);
        for (j, a) in x.support() {
            for (k, b) in y.support() {
                let ab = a * b;
                out.axpy(&ab, self.bracket_basis(j, k));
            }
        }
        out
    }

    /// `ad_X = [X, ·]` as a matrix.
    pub fn ad(&self, x: &Vector) -> Endo {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n)
            .map(|k| self.bracket(x, &Vector::basis(n, k)))
            .collect();
        Matrix::from_columns(&cols)
    }

    /// Direct sum `self ⊕ other`, with `other`'s indices shifted past ours.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let (n, m) = (self.dim(), other.dim());
        let mut d: Vec<KForm> = self.d.iter().map(|f| f.shift(n + m, 0)).collect();
        d.extend(other.d.iter().map(|f| f.shift(n + m, n)));
        LieAlgebra::new(d).expect("direct sum of valid algebras")
    }

    /// Appends new coframe elements whose differentials are the given 2-forms
    /// on this algebra (so the new vectors are central).
    pub fn extend(&self, new_d: &[KForm]) -> Result<LieAlgebra> {
        let n = self.dim();
        let total = n + new_d.len();
        let mut d: Vec<KForm> = self.d.iter().map(|f| f.shift(total, 0)).collect();
        for s in new_d {
            if s.dim() != n {
                return Err(Error::DimensionMismatch(n, s.dim()));
            }
            if !s.is_zero() {
                s.degree_check(2)?;
            }
            d.push(s.shift(total, 0));
        }
        LieAlgebra::new(d)
    }

    /// Same algebra written in the basis `E'_a = Σ_i P_ia E_i`.
    pub fn change_basis(&self, p: &Matrix) -> Result<LieAlgebra> {
        let n = self.dim();
        if p.dim() != n {
            return Err(Error::DimensionMismatch(n, p.dim()));
        }
        let inv = p
            .inverse()
            .ok_or_else(|| Error::Precondition("change of basis is singular".into()))?;
        LieAlgebra::from_brackets(n, |a, b| {
            inv.apply(&self.bracket(&p.column(a), &p.column(b)))
        })
    }

    /// Structure constant `e^i([E_j, E_k])`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.bracket_basis(j, k).0[i].clone()
    }

    /// Trace of `ad_{E_j}` vanishes for every `j`.
    pub fn is_unimodular(&self) -> bool {
        let n = self.dim();
        (0..n).all(|j| self.ad(&Vector::basis(n, j)).trace().is_zero())
    }
}
