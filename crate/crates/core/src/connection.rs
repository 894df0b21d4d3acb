//! Left-invariant linear connections, curvature and the codifferential.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::form::KForm;
use crate::lie::LieAlgebra;
use crate::linalg::{Endo, Matrix, Metric, Vector};
use crate::rational::{frac, Rational};

/// `∇_{E_i} E_j = Σ_k Γ^k_ij E_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection {
    n: usize,
    gamma: Vec<Vector>,
}

impl Connection {
    pub fn zero(n: usize) -> Self {
        Connection {
            n,
            gamma: vec![Vector::zero(n); n * n],
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Vector) -> Self {
        let gamma = (0..n * n).map(|ij| f(ij / n, ij % n)).collect();
        Connection { n, gamma }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `∇_{E_i} E_j`.
    pub fn nabla(&self, i: usize, j: usize) -> &Vector {
        &self.gamma[i * self.n + j]
    }

    /// `Γ^k_ij`.
    pub fn gamma(&self, k: usize, i: usize, j: usize) -> &Rational {
        &self.nabla(i, j).0[k]
    }

    /// Matrix of `∇_{E_i}`: column `j` is `∇_{E_i} E_j`.
    pub fn matrix(&self, i: usize) -> Endo {
        let cols: Vec<Vector> = (0..self.n).map(|j| self.nabla(i, j).clone()).collect();
        Matrix::from_columns(&cols)
    }

    /// Matrix of `∇_X`.
    pub fn matrix_along(&self, x: &Vector) -> Endo {
        let mut out = Matrix::zero(self.n);
        for (i, c) in x.support() {
            out = &out + &self.matrix(i).scale(c);
        }
        out
    }

    pub fn covariant(&self, x: &Vector, y: &Vector) -> Vector {
        self.matrix_along(x).apply(y)
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.iter().all(Vector::is_zero)
    }

    /// Torsion `T(E_i, E_j) = ∇_{E_i}E_j − ∇_{E_j}E_i − [E_i, E_j]`.
    pub fn torsion_vector(&self, l: &LieAlgebra, i: usize, j: usize) -> Vector {
        &(self.nabla(i, j) - self.nabla(j, i)) - l.bracket_basis(i, j)
    }

    /// `g(T(E_i, E_j), E_k)` as a 3-form, or `None` if it is not totally
    /// skew.
    pub fn torsion_form(&self, l: &LieAlgebra, g: &Metric) -> Option<KForm> {
        let n = self.n;
        let t: Vec<Vector> = (0..n * n)
            .map(|ij| g.flat(&self.torsion_vector(l, ij / n, ij % n)))
            .collect();
        let at = |i: usize, j: usize, k: usize| &t[i * n + j].0[k];
        let mut out = KForm::zero(n, 3);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if at(i, j, k) != &-at(i, k, j).clone() {
                        return None;
                    }
                    if i < j && j < k {
                        out = &out + &KForm::monomial(n, &[i, j, k], at(i, j, k).clone());
                    }
                }
            }
        }
        Some(out)
    }

    /// First pair where `∇` fails to preserve `g`.
    pub fn metric_failure(&self, g: &Metric) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let lj = g.flat(self.nabla(i, j));
                for k in 0..n {
                    let lk = g.flat(self.nabla(i, k));
                    if !(&lj.0[k] + &lk.0[j]).is_zero() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Curvature endomorphisms `R(E_i, E_j)` for `i < j`.
    pub fn curvature(&self, l: &LieAlgebra) -> Vec<((usize, usize), Endo)> {
        let n = self.n;
        let a: Vec<Endo> = (0..n).map(|i| self.matrix(i)).collect();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut r = &(&a[i] * &a[j]) - &(&a[j] * &a[i]);
                for (m, c) in l.bracket_basis(i, j).support() {
                    r = &r - &a[m].scale(c);
                }
                out.push(((i, j), r));
            }
        }
        out
    }

    pub fn is_flat(&self, l: &LieAlgebra) -> bool {
        self.curvature(l).iter().all(|(_, r)| r.is_zero())
    }

    /// `Ric(X, Y) = tr(Z ↦ R(Z, X)Y)` as a matrix.
    pub fn ricci(&self, l: &LieAlgebra) -> Matrix {
        let n = self.n;
        let mut full = vec![Matrix::zero(n); n * n];
        for ((i, j), r) in self.curvature(l) {
            full[j * n + i] = -&r;
            full[i * n + j] = r;
        }
        let mut ric = Matrix::zero(n);
        for a in 0..n {
            for b in 0..n {
                let mut s = Rational::zero();
                for k in 0..n {
                    s += full[k * n + a].get(k, b);
                }
                ric.set(a, b, s);
            }
        }
        ric
    }

    /// Covariant derivative `∇_{E_i} a` of a constant-coefficient form,
    /// using `∇_X e^m = −Σ_j Γ^m_{Xj} e^j`.
    pub fn form_derivative(&self, i: usize, a: &KForm) -> KForm {
        let n = self.n;
        let images: Vec<KForm> = (0..n)
            .map(|m| {
                let mut f = KForm::zero(n, 1);
                for j in 0..n {
                    let c = self.gamma(m, i, j);
                    if !c.is_zero() {
                        f = &f + &KForm::monomial(n, &[j], -c.clone());
                    }
                }
                f
            })
            .collect();
        derivation(a, &images)
    }

    /// Adds `½ g⁻¹ c`, i.e. the connection with `g(∇'_X Y, Z) = g(∇_X Y, Z) + c(X, Y, Z)/2`.
    pub fn add_half_torsion(&self, g: &Metric, c: &KForm) -> Connection {
        let n = self.n;
        let half = frac(1, 2);
        Connection::from_fn(n, |i, j| {
            let lowered = Vector((0..n).map(|k| c.eval_basis(&[i, j, k]) * &half).collect());
            self.nabla(i, j) + &g.sharp(&lowered)
        })
    }
}

/// Extends `e^m ↦ images[m]` (1-forms) as a derivation of degree 0.
pub fn derivation(a: &KForm, images: &[KForm]) -> KForm {
    let n = a.dim();
    let mut out = KForm::zero(n, a.degree());
    for (idx, c) in a.terms() {
        let ids: Vec<usize> = idx.indices().collect();
        for (r, &m) in ids.iter().enumerate() {
            if images[m].is_zero() {
                continue;
            }
            let left = KForm::monomial(n, &ids[..r], crate::rational::one());
            let right = KForm::monomial(n, &ids[r + 1..], crate::rational::one());
            out = &out + &left.wedge(&images[m]).wedge(&right).scale(c);
        }
    }
    out
}

/// Levi-Civita connection via the Koszul formula
/// `2g(∇_X Y, Z) = g([X,Y],Z) − g([Y,Z],X) + g([Z,X],Y)`.
pub fn lc_connection(l: &LieAlgebra, g: &Metric) -> Result<Connection> {
    let n = l.dim();
    if g.dim() != n {
        return Err(Error::DimensionMismatch(n, g.dim()));
    }
    let lowered: Vec<Vector> = (0..n * n)
        .map(|ij| g.flat(l.bracket_basis(ij / n, ij % n)))
        .collect();
    let c = |i: usize, j: usize, k: usize| &lowered[i * n + j].0[k];
    let half = frac(1, 2);
    Ok(Connection::from_fn(n, |i, j| {
        let low = Vector(
            (0..n)
                .map(|k| (c(i, j, k) - c(j, k, i) + c(k, i, j)) * &half)
                .collect(),
        );
        g.sharp(&low)
    }))
}

/// `Φ⁻¹(d)` for an orthonormal basis: each term `(e^j∧e^k)⊗e^i` of the
/// differential contributes
/// `½(−e^i⊗(e^j∧e^k) + e^k⊗(e^i∧e^j) + e^j⊗(e^k∧e^i))`, read as
/// `Σ_a e^a ⊗ ω_a` with `g(∇_{E_a}E_j, E_k) = −ω_a(E_j, E_k)`.
pub fn phi_inverse_connection(l: &LieAlgebra, g: &Metric) -> Result<Connection> {
    let n = l.dim();
    if g.dim() != n {
        return Err(Error::DimensionMismatch(n, g.dim()));
    }
    if !g.is_identity() {
        return Err(Error::NotOrthonormal);
    }
    let mut omega = vec![KForm::zero(n, 2); n];
    let half = frac(1, 2);
    for i in 0..n {
        for (idx, c) in l.de(i).terms() {
            let mut it = idx.indices();
            let (j, k) = (it.next().unwrap(), it.next().unwrap());
            let h = c * &half;
            omega[i] = &omega[i] + &KForm::monomial(n, &[j, k], -h.clone());
            omega[k] = &omega[k] + &KForm::monomial(n, &[i, j], h.clone());
            omega[j] = &omega[j] + &KForm::monomial(n, &[k, i], h);
        }
    }
    Ok(Connection::from_fn(n, |a, j| {
        Vector((0..n).map(|k| -omega[a].eval_basis(&[j, k])).collect())
    }))
}

/// `d*a = −Σ_{i,j} g^{ij} E_j ⌟ ∇^LC_{E_i} a`.
pub fn codifferential(l: &LieAlgebra, g: &Metric, a: &KForm) -> Result<KForm> {
    if a.degree() == 0 {
        return Err(Error::DegreeZero("codifferential"));
    }
    let n = l.dim();
    let lc = lc_connection(l, g)?;
    let mut out = KForm::zero(n, a.degree() - 1);
    for i in 0..n {
        let nabla = lc.form_derivative(i, a);
        if nabla.is_zero() {
            continue;
        }
        for j in 0..n {
            let gij = g.g_inv(i, j);
            if gij.is_zero() {
                continue;
            }
            out = &out - &nabla.interior_basis(j)?.scale(gij);
        }
    }
    Ok(out)
}
