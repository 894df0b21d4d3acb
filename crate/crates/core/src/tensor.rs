//! Vector-valued 2-forms such as the Sasaki–Hatakeyama and Nijenhuis tensors.

use crate::linalg::Vector;

/// Antisymmetric map `(E_i, E_j) ↦ Vector`, stored for `i < j`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorTwoForm {
    n: usize,
    upper: Vec<Vector>,
}

impl VectorTwoForm {
    /// Evaluates `f` on every pair `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Vector) -> Self {
        let mut upper = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                upper.push(f(i, j));
            }
        }
        VectorTwoForm { n, upper }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        // pairs (i, j), i < j, in row-major order
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    pub fn get(&self, i: usize, j: usize) -> Vector {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper[self.slot(i, j)].clone(),
            std::cmp::Ordering::Greater => -&self.upper[self.slot(j, i)],
            std::cmp::Ordering::Equal => Vector::zero(self.n),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.upper.iter().all(Vector::is_zero)
    }

    /// Nonzero values `((i, j), v)` with `i < j`.
    pub fn nonzero(&self) -> Vec<((usize, usize), Vector)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let v = &self.upper[self.slot(i, j)];
                if !v.is_zero() {
                    out.push(((i, j), v.clone()));
                }
            }
        }
        out
    }

    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.nonzero().first().map(|(p, _)| *p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antisymmetric_access() {
        let t = VectorTwoForm::from_fn(4, |i, j| Vector::from_ints(&[i as i64, j as i64, 0, 0]));
        assert_eq!(t.get(1, 3), Vector::from_ints(&[1, 3, 0, 0]));
        assert_eq!(t.get(3, 1), Vector::from_ints(&[-1, -3, 0, 0]));
        assert!(t.get(2, 2).is_zero());
        assert_eq!(t.first_nonzero(), Some((0, 1)));
    }
}
