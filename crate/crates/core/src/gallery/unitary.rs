//! `u(n)` in the matrix basis `{iE_jj, E_jk − E_kj, i(E_jk + E_kj)}` with the
//! bi-invariant metric `g(X, Y) = −tr(XY)`.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::acm::AcmStructure;
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{Matrix, Metric, Vector};
use crate::rational::{int, Rational};

type C = Complex<Rational>;

#[derive(Clone, Debug, PartialEq)]
struct CMat {
    n: usize,
    a: Vec<C>,
}

impl CMat {
    fn zero(n: usize) -> Self {
        CMat {
            n,
            a: vec![C::zero(); n * n],
        }
    }

    fn add_entry(&mut self, i: usize, j: usize, z: C) {
        self.a[i * self.n + j] = &self.a[i * self.n + j] + z;
    }

    fn mul(&self, o: &CMat) -> CMat {
        let n = self.n;
        let mut out = CMat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let x = &self.a[i * n + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.a[i * n + j] = &out.a[i * n + j] + x * &o.a[k * n + j];
                }
            }
        }
        out
    }

    fn sub(&self, o: &CMat) -> CMat {
        CMat {
            n: self.n,
            a: self.a.iter().zip(&o.a).map(|(x, y)| x - y).collect(),
        }
    }

    fn trace(&self) -> C {
        (0..self.n).fold(C::zero(), |acc, i| acc + &self.a[i * self.n + i])
    }
}

/// Basis matrices in the order `iE_jj`, then `E_jk − E_kj`, then
/// `i(E_jk + E_kj)` for `j < k` (lexicographic).
fn basis(n: usize) -> Vec<CMat> {
    let i_unit = C::new(Rational::zero(), Rational::one());
    let one = C::new(Rational::one(), Rational::zero());
    let mut out = Vec::new();
    for j in 0..n {
        let mut m = CMat::zero(n);
        m.add_entry(j, j, i_unit.clone());
        out.push(m);
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (j + 1..n).map(move |k| (j, k))).collect();
    for &(j, k) in &pairs {
        let mut m = CMat::zero(n);
        m.add_entry(j, k, one.clone());
        m.add_entry(k, j, -one.clone());
        out.push(m);
    }
    for &(j, k) in &pairs {
        let mut m = CMat::zero(n);
        m.add_entry(j, k, i_unit.clone());
        m.add_entry(k, j, i_unit.clone());
        out.push(m);
    }
    out
}

fn inner(x: &CMat, y: &CMat) -> Rational {
    -x.mul(y).trace().re
}

/// `u(n)` with its bi-invariant metric `−tr(XY)`.
pub fn u_n_algebra(n: usize) -> Result<(LieAlgebra, Metric)> {
    if n == 0 {
        return Err(Error::Unsupported("u(0)".into()));
    }
    let b = basis(n);
    let norms: Vec<Rational> = b.iter().map(|x| inner(x, x)).collect();
    let dim = b.len();
    let l = LieAlgebra::from_brackets(dim, |p, q| {
        let br = b[p].mul(&b[q]).sub(&b[q].mul(&b[p]));
        Vector((0..dim).map(|k| inner(&br, &b[k]) / &norms[k]).collect())
    })?;
    Ok((l, Metric::diagonal(&norms)?))
}

/// Canonical ST structure on `u(n)`, `n` odd: `ξ = iE_11`,
/// `φ(iE_{2m,2m}) = iE_{2m+1,2m+1}`, `φ(E_jk − E_kj) = i(E_jk + E_kj)`.
pub fn u_n_canonical_sst(n: usize) -> Result<AcmStructure> {
    if n.is_multiple_of(2) {
        return Err(Error::Unsupported(format!(
            "u({n}) has even dimension; only odd n is supported"
        )));
    }
    let (l, g) = u_n_algebra(n)?;
    let dim = l.dim();
    let pairs = n * (n - 1) / 2;
    let mut phi = Matrix::zero(dim);
    // torus: pair iE_{2m,2m} with iE_{2m+1,2m+1} (1-based)
    for m in (1..n).step_by(2) {
        phi.set(m + 1, m, int(1));
        phi.set(m, m + 1, int(-1));
    }
    for p in 0..pairs {
        let (real, imag) = (n + p, n + pairs + p);
        phi.set(imag, real, int(1));
        phi.set(real, imag, int(-1));
    }
    AcmStructure::new(l, g, Vector::basis(dim, 0), phi)
}
