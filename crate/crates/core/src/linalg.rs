//! Dense exact linear algebra: vectors, endomorphisms and metrics.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A vector in the Lie algebra, written in the basis `E_1, …, E_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector(pub Vec<Rational>);

impl Vector {
    pub fn zero(n: usize) -> Self {
        Vector(vec![Rational::zero(); n])
    }

    /// The basis vector `E_i` (0-based).
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Vector(xs.iter().map(|&x| crate::rational::int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Vector(self.0.iter().map(|x| x * c).collect())
    }

    pub fn dot(&self, other: &Vector) -> Rational {
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: &Rational, other: &Vector) {
        if c.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += c * b;
        }
    }

    /// Nonzero entries as `(index, value)`.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.0.iter().enumerate().filter(|(_, x)| !x.is_zero())
    }
}

impl std::ops::Index<usize> for Vector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.support() {
            write_term(f, c, &format!("E{}", i + 1), &mut first)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    c: &Rational,
    name: &str,
    first: &mut bool,
) -> fmt::Result {
    let neg = c < &Rational::zero();
    let abs = if neg { -c } else { c.clone() };
    match (*first, neg) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    *first = false;
    if abs.is_one() {
        write!(f, "{name}")
    } else {
        write!(f, "{}*{name}", crate::rational::to_string(&abs))
    }
}

/// Square rational matrix. Used for endomorphisms (column `j` is the image
/// of `E_j`), Gram matrices and bilinear forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    data: Vec<Rational>,
}

/// Endomorphism of the Lie algebra; entry `(i, j)` is `e^i(A E_j)`.
pub type Endo = Matrix;

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Matrix {
            n,
            data: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch(n, row.len()));
            }
            data.extend(row);
        }
        Ok(Matrix { n, data })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| crate::rational::int(x)).collect())
                .collect(),
        )
        .expect("square integer matrix")
    }

    /// Matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(cols: &[Vector]) -> Self {
        let n = cols.len();
        let mut m = Self::zero(n);
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.dim(), n, "column length");
            for i in 0..n {
                m.data[i * n + j] = c.0[i].clone();
            }
        }
        m
    }

    /// Rank-one map `X ↦ form(X) · v`, with `form` given by its coefficients.
    pub fn outer(v: &Vector, form: &Vector) -> Self {
        let n = v.dim();
        let mut m = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = &v.0[i] * &form.0[j];
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.n + j] = value;
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector((0..self.n).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn row(&self, i: usize) -> Vector {
        Vector(self.data[i * self.n..(i + 1) * self.n].to_vec())
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        debug_assert_eq!(v.dim(), self.n);
        Vector(
            (0..self.n)
                .map(|i| {
                    v.support()
                        .fold(Rational::zero(), |acc, (j, x)| acc + self.get(i, j) * x)
                })
                .collect(),
        )
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut m = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.data[j * n + i] = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Rational {
        (0..self.n).fold(Rational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }

    pub fn is_symmetric(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.get(i, j) != self.get(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Determinant by fraction-exact Gaussian elimination.
    pub fn det(&self) -> Rational {
        let n = self.n;
        let mut a: Vec<Vec<Rational>> = (0..n).map(|i| self.row(i).0).collect();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det *= &pivot;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] / &pivot;
                for c in col..n {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
        det
    }

    /// Leading principal minor of order `k` (the top-left `k × k` block).
    pub fn leading_minor(&self, k: usize) -> Rational {
        let block = Matrix::from_rows(
            (0..k)
                .map(|i| (0..k).map(|j| self.get(i, j).clone()).collect())
                .collect(),
        )
        .expect("square block");
        block.det()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.n;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).0;
                row.extend(Matrix::identity(n).row(i).0);
                row
            })
            .collect();
        let (rank, _) = row_reduce(&mut a, n);
        if rank < n {
            return None;
        }
        Matrix::from_rows(a.into_iter().map(|r| r[n..].to_vec()).collect()).ok()
    }

    /// Flattened entries, row-major.
    pub fn entries(&self) -> &[Rational] {
        &self.data
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        let n = self.n;
        assert_eq!(n, rhs.n, "matrix dimensions");
        let mut m = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        m.data[i * n + j] += a * b;
                    }
                }
            }
        }
        m
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| crate::rational::to_string(self.get(i, j)))
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form in place, pivoting only on the first `cols`
/// columns. Returns the rank and the pivot columns.
pub fn row_reduce(a: &mut [Vec<Rational>], cols: usize) -> (usize, Vec<usize>) {
    let rows = a.len();
    let mut rank = 0;
    let mut pivots = Vec::new();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        let inv = a[rank][col].recip();
        for x in a[rank].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows {
            if r != rank && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                let pivot_row = a[rank].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &factor * y;
                    }
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    (rank, pivots)
}

/// Basis of the null space of the `rows × cols` matrix `a`.
pub fn kernel(a: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut m = a.to_vec();
    let (_, pivots) = row_reduce(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Rank of a list of vectors of equal length.
pub fn rank(vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let cols = vectors[0].len();
    let mut m = vectors.to_vec();
    row_reduce(&mut m, cols).0
}

/// Riemannian metric on the Lie algebra: a positive definite symmetric Gram
/// matrix together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    gram: Matrix,
    inverse: Matrix,
}

impl Metric {
    /// Checks symmetry and positive definiteness (all leading principal
    /// minors positive).
    pub fn new(gram: Matrix) -> Result<Self> {
        if let Some((i, j)) = gram.is_symmetric() {
            return Err(Error::NotSymmetric(i, j));
        }
        for k in 1..=gram.dim() {
            let minor = gram.leading_minor(k);
            if minor <= Rational::zero() {
                return Err(Error::NotPositiveDefinite {
                    order: k,
                    value: minor,
                });
            }
        }
        let inverse = gram.inverse().expect("positive definite matrices are invertible");
        Ok(Metric { gram, inverse })
    }

    pub fn identity(n: usize) -> Self {
        Metric {
            gram: Matrix::identity(n),
            inverse: Matrix::identity(n),
        }
    }

    pub fn diagonal(entries: &[Rational]) -> Result<Self> {
        let mut m = Matrix::zero(entries.len());
        for (i, x) in entries.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        Self::new(m)
    }

    pub fn dim(&self) -> usize {
        self.gram.dim()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn inverse(&self) -> &Matrix {
        &self.inverse
    }

    pub fn g(&self, i: usize, j: usize) -> &Rational {
        self.gram.get(i, j)
    }

    pub fn g_inv(&self, i: usize, j: usize) -> &Rational {
        self.inverse.get(i, j)
    }

    pub fn inner(&self, u: &Vector, v: &Vector) -> Rational {
        u.dot(&self.gram.apply(v))
    }

    /// Coefficients of the 1-form `g(v, ·)`.
    pub fn flat(&self, v: &Vector) -> Vector {
        self.gram.apply(v)
    }

    /// Vector dual to the 1-form with coefficients `a`.
    pub fn sharp(&self, a: &Vector) -> Vector {
        self.inverse.apply(a)
    }

    pub fn is_identity(&self) -> bool {
        self.gram == Matrix::identity(self.dim())
    }

    /// Whether `A` is skew with respect to this metric.
    pub fn is_skew(&self, a: &Endo) -> bool {
        let ga = &self.gram * a;
        (&ga + &ga.transpose()).is_zero()
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Metric) -> Metric {
        Metric {
            gram: block_sum(&self.gram, &other.gram),
            inverse: block_sum(&self.inverse, &other.inverse),
        }
    }
}

pub fn block_sum(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, m) = (a.dim(), b.dim());
    let mut out = Matrix::zero(n + m);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, a.get(i, j).clone());
        }
    }
    for i in 0..m {
        for j in 0..m {
            out.set(n + i, n + j, b.get(i, j).clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn determinant_and_inverse() {
        let m = Matrix::from_int_rows(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det(), int(18));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(3));
        assert_eq!(inv.get(0, 0), &frac(11, 18));
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = Matrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.det(), int(0));
        assert!(m.inverse().is_none());
    }

    #[test]
    fn sylvester_rejects_indefinite() {
        let m = Matrix::from_int_rows(&[&[1, 2], &[2, 1]]);
        assert_eq!(
            Metric::new(m),
            Err(Error::NotPositiveDefinite {
                order: 2,
                value: int(-3)
            })
        );
        let m = Matrix::from_int_rows(&[&[1, 2], &[3, 1]]);
        assert_eq!(Metric::new(m), Err(Error::NotSymmetric(0, 1)));
    }

    #[test]
    fn metric_inverse_is_cached() {
        let g = Metric::new(Matrix::from_int_rows(&[&[2, 1], &[1, 1]])).unwrap();
        assert_eq!(g.gram() * g.inverse(), Matrix::identity(2));
        let v = Vector::from_ints(&[1, 2]);
        assert_eq!(g.sharp(&g.flat(&v)), v);
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = vec![vec![int(1), int(2), int(3)]];
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in k {
            assert_eq!(&v[0] + int(2) * &v[1] + int(3) * &v[2], int(0));
        }
    }
}
