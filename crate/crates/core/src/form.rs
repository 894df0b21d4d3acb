//! Sparse alternating forms on a fixed `n`-dimensional space.
//!
//! A form is stored as a map from basis monomials `e^{i1}∧…∧e^{ik}` to
//! coefficients. Monomials are bitsets, so canonical ordering of indices is
//! automatic. Evaluation follows the determinant convention
//! `(e^a∧e^b)(X,Y) = e^a(X)e^b(Y) − e^a(Y)e^b(X)`: the coefficient of
//! `e^I` is the value of the form on `(E_{i1}, …, E_{ik})`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Endo, Vector};
use crate::rational::Rational;

/// Maximum ambient dimension supported by the bitset representation.
pub const MAX_DIM: usize = 64;

/// Strictly increasing set of basis indices (0-based), stored as a bitset.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(u64);

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);

    pub fn single(i: usize) -> Self {
        assert!(i < MAX_DIM, "index {i} exceeds {MAX_DIM}");
        MultiIndex(1 << i)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn from_bits(bits: u64) -> Self {
        MultiIndex(bits)
    }

    /// Sorted, duplicate-free index list; `None` on repeats.
    pub fn from_sorted(indices: &[usize]) -> Option<Self> {
        let (idx, sign) = Self::from_unsorted(indices)?;
        (sign == 1).then_some(idx)
    }

    /// Canonical monomial and the sign of the sorting permutation, or `None`
    /// when an index repeats (the wedge product vanishes).
    pub fn from_unsorted(indices: &[usize]) -> Option<(Self, i32)> {
        let mut bits = 0u64;
        let mut inversions = 0u32;
        for &i in indices {
            assert!(i < MAX_DIM, "index {i} exceeds {MAX_DIM}");
            let b = 1u64 << i;
            if bits & b != 0 {
                return None;
            }
            inversions += (bits >> i).count_ones();
            bits |= b;
        }
        Some((MultiIndex(bits), if inversions.is_multiple_of(2) { 1 } else { -1 }))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_DIM && self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    pub fn max_index(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Product of two monomials: the union with its sign, or `None` when
    /// they share an index.
    pub fn wedge(self, other: MultiIndex) -> Option<(MultiIndex, i32)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inversions = 0u32;
        for j in other.indices() {
            inversions += (self.0 >> j).count_ones();
        }
        Some((
            MultiIndex(self.0 | other.0),
            if inversions.is_multiple_of(2) { 1 } else { -1 },
        ))
    }

    /// `ι_{E_i}` on the monomial: the remaining monomial with its sign.
    pub fn remove(self, i: usize) -> Option<(MultiIndex, i32)> {
        if !self.contains(i) {
            return None;
        }
        let below = (self.0 & ((1u64 << i) - 1)).count_ones();
        Some((
            MultiIndex(self.0 & !(1 << i)),
            if below.is_multiple_of(2) { 1 } else { -1 },
        ))
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.indices().map(|i| i + 1)).finish()
    }
}

/// Coefficient ring of a form: ℚ itself, or a ℚ-algebra such as ℚ(r).
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn from_rational(q: &Rational) -> Self;
}

impl Coeff for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

/// Alternating `k`-form on an `n`-dimensional space with coefficients in `S`.
#[derive(Clone, PartialEq)]
pub struct Form<S> {
    dim: usize,
    degree: usize,
    terms: BTreeMap<MultiIndex, S>,
}

/// Form with rational coefficients.
pub type KForm = Form<Rational>;

impl<S: Coeff> Form<S> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        Form {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: S) -> Self {
        let mut f = Self::zero(dim, 0);
        f.add_term(MultiIndex::EMPTY, c);
        f
    }

    /// The coframe element `e^i` (0-based).
    pub fn basis(dim: usize, i: usize) -> Self {
        assert!(i < dim, "index {i} out of range for dimension {dim}");
        let mut f = Self::zero(dim, 1);
        f.add_term(MultiIndex::single(i), S::one());
        f
    }

    /// `c · e^{i1}∧…∧e^{ik}` for arbitrary (possibly unsorted) 0-based indices.
    pub fn monomial(dim: usize, indices: &[usize], c: S) -> Self {
        let mut f = Self::zero(dim, indices.len());
        assert!(
            indices.iter().all(|&i| i < dim),
            "monomial index out of range for dimension {dim}"
        );
        if let Some((idx, sign)) = MultiIndex::from_unsorted(indices) {
            f.add_term(idx, signed(c, sign));
        }
        f
    }

    /// 1-form `Σ a_i e^i`.
    pub fn from_covector(a: &Vector) -> Self
    where
        S: Coeff,
    {
        let mut f = Self::zero(a.dim(), 1);
        for (i, c) in a.support() {
            f.add_term(MultiIndex::single(i), S::from_rational(c));
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: MultiIndex) -> S {
        self.terms.get(&idx).cloned().unwrap_or_else(S::zero)
    }

    /// Coefficient on the sorted 0-based index list.
    pub fn coeff_of(&self, indices: &[usize]) -> S {
        match MultiIndex::from_unsorted(indices) {
            Some((idx, sign)) => signed(self.coeff(idx), sign),
            None => S::zero(),
        }
    }

    /// Adds `c · e^idx`, dropping the entry if it cancels.
    pub fn add_term(&mut self, idx: MultiIndex, c: S) {
        debug_assert_eq!(idx.len(), self.degree, "monomial degree");
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&idx) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(idx, sum);
                }
            }
            None => {
                self.terms.insert(idx, c);
            }
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        if c.is_zero() {
            return out;
        }
        for (idx, x) in &self.terms {
            out.add_term(*idx, x.clone() * c.clone());
        }
        out
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&S::from_rational(q))
    }

    pub fn map_coeffs<T: Coeff>(&self, f: impl Fn(&S) -> T) -> Form<T> {
        let mut out = Form::zero(self.dim, self.degree);
        for (idx, x) in &self.terms {
            out.add_term(*idx, f(x));
        }
        out
    }

    fn check_same_space(&self, other: &Self) {
        assert_eq!(self.dim, other.dim, "forms live on different spaces");
    }

    /// Sum of two forms of the same degree.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: other.degree,
            });
        }
        Ok(self + other)
    }

    pub fn checked_wedge(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(self.wedge(other))
    }

    /// Exterior product. Panics if the ambient dimensions differ; use
    /// [`Form::checked_wedge`] for untrusted inputs.
    pub fn wedge(&self, other: &Self) -> Self {
        self.check_same_space(other);
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some((idx, sign)) = a.wedge(*b) {
                    out.add_term(idx, signed(x.clone() * y.clone(), sign));
                }
            }
        }
        out
    }

    /// Interior product with the basis vector `E_i`.
    pub fn interior_basis(&self, i: usize) -> Result<Self> {
        if self.degree == 0 {
            return Err(Error::DegreeZero("interior product"));
        }
        let mut out = Self::zero(self.dim, self.degree - 1);
        for (idx, x) in &self.terms {
            if let Some((rest, sign)) = idx.remove(i) {
                out.add_term(rest, signed(x.clone(), sign));
            }
        }
        Ok(out)
    }

    /// Interior product `v ⌟ a`, so that `(v⌟a)(X, …) = a(v, X, …)`.
    pub fn interior(&self, v: &Vector) -> Result<Self> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, v.dim()));
        }
        self.interior_with(|i| {
            let c = &v.0[i];
            (!c.is_zero()).then(|| S::from_rational(c))
        })
    }

    /// Interior product with a vector whose components lie in `S`.
    pub fn interior_coeffs(&self, v: &[S]) -> Result<Self> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, v.len()));
        }
        self.interior_with(|i| (!v[i].is_zero()).then(|| v[i].clone()))
    }

    fn interior_with(&self, component: impl Fn(usize) -> Option<S>) -> Result<Self> {
        if self.degree == 0 {
            return Err(Error::DegreeZero("interior product"));
        }
        let mut out = Self::zero(self.dim, self.degree - 1);
        for (idx, x) in &self.terms {
            for i in idx.indices() {
                if let Some(c) = component(i) {
                    let (rest, sign) = idx.remove(i).expect("index present");
                    out.add_term(rest, signed(x.clone() * c, sign));
                }
            }
        }
        Ok(out)
    }

    /// Value on `k` vectors.
    pub fn eval(&self, vectors: &[Vector]) -> S {
        assert_eq!(vectors.len(), self.degree, "wrong number of arguments");
        let mut current = self.clone();
        for v in vectors {
            current = current.interior(v).expect("degree matches");
        }
        current.coeff(MultiIndex::EMPTY)
    }

    /// Value on basis vectors `E_{i1}, …, E_{ik}` (any order, repeats allowed).
    pub fn eval_basis(&self, indices: &[usize]) -> S {
        assert_eq!(indices.len(), self.degree, "wrong number of arguments");
        self.coeff_of(indices)
    }

    /// Pullback along the linear map whose transpose sends `e^i` to
    /// `images[i]`: the algebra homomorphism extending `e^i ↦ images[i]`.
    pub fn pullback(&self, images: &[Form<S>]) -> Form<S> {
        assert_eq!(images.len(), self.dim, "one image per coframe element");
        let target = images.first().map_or(self.dim, |f| f.dim);
        let mut out = Form::zero(target, self.degree);
        let unit = Form::constant(target, S::one());
        for (idx, x) in &self.terms {
            let mut prod = unit.clone();
            for i in idx.indices() {
                prod = prod.wedge(&images[i]);
                if prod.is_zero() {
                    break;
                }
            }
            for (m, y) in prod.terms {
                out.add_term(m, y * x.clone());
            }
        }
        out
    }

    /// `a(A·, …, A·)` for an endomorphism `A`.
    pub fn pullback_endo(&self, a: &Endo) -> Form<S> {
        let images: Vec<Form<S>> = (0..self.dim)
            .map(|i| Form::from_covector(&a.row(i)))
            .collect();
        self.pullback(&images)
    }

    /// Relabels basis index `i` as `map[i]` inside a space of dimension
    /// `dim`, fixing signs when the relabelling is not monotone.
    pub fn relabel(&self, dim: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.dim, "one target per index");
        let mut out = Self::zero(dim, self.degree);
        for (idx, x) in &self.terms {
            let targets: Vec<usize> = idx.indices().map(|i| map[i]).collect();
            let (m, sign) = MultiIndex::from_unsorted(&targets).expect("injective relabelling");
            out.add_term(m, signed(x.clone(), sign));
        }
        out
    }

    /// Includes the form into a larger space, shifting every index by
    /// `offset`.
    pub fn shift(&self, dim: usize, offset: usize) -> Self {
        let map: Vec<usize> = (0..self.dim).map(|i| i + offset).collect();
        self.relabel(dim, &map)
    }

    /// Covector coefficients of a 1-form (only for rational-coefficient use).
    pub fn degree_check(&self, expected: usize) -> Result<()> {
        if self.degree != expected {
            return Err(Error::DegreeMismatch {
                expected,
                got: self.degree,
            });
        }
        Ok(())
    }
}

impl KForm {
    /// Coefficients `a(E_i)` of a 1-form.
    pub fn to_covector(&self) -> Vector {
        assert_eq!(self.degree, 1, "not a 1-form");
        let mut v = Vector::zero(self.dim);
        for (idx, x) in &self.terms {
            let i = idx.indices().next().expect("degree one");
            v.0[i] = x.clone();
        }
        v
    }

    /// Monomials with integer coefficients, e.g. `&[(-1, &[1, 2])]` with
    /// 1-based indices as printed in the literature.
    pub fn from_terms(dim: usize, degree: usize, terms: &[(i64, &[usize])]) -> Self {
        let mut f = Self::zero(dim, degree);
        for &(c, idx) in terms {
            assert_eq!(idx.len(), degree, "term degree");
            let zero_based: Vec<usize> = idx.iter().map(|&i| i - 1).collect();
            f = &f + &Self::monomial(dim, &zero_based, crate::rational::int(c));
        }
        f
    }
}

fn signed<S: Coeff>(x: S, sign: i32) -> S {
    if sign < 0 {
        -x
    } else {
        x
    }
}

impl<S: Coeff> Add for &Form<S> {
    type Output = Form<S>;
    fn add(self, rhs: &Form<S>) -> Form<S> {
        self.check_same_space(rhs);
        let degree = if self.is_zero() { rhs.degree } else { self.degree };
        let mut out = Form {
            dim: self.dim,
            degree,
            terms: self.terms.clone(),
        };
        for (idx, x) in &rhs.terms {
            out.add_term(*idx, x.clone());
        }
        out
    }
}

impl<S: Coeff> Sub for &Form<S> {
    type Output = Form<S>;
    fn sub(self, rhs: &Form<S>) -> Form<S> {
        self + &(-rhs)
    }
}

impl<S: Coeff> Neg for &Form<S> {
    type Output = Form<S>;
    fn neg(self) -> Form<S> {
        Form {
            dim: self.dim,
            degree: self.degree,
            terms: self.terms.iter().map(|(k, v)| (*k, -v.clone())).collect(),
        }
    }
}

impl<S: Coeff + fmt::Display> fmt::Display for Form<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (idx, x)) in self.terms.iter().enumerate() {
            let name = monomial_name(*idx);
            let coeff = x.to_string();
            let (neg, abs) = match coeff.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
                _ => (false, coeff),
            };
            match (n == 0, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            if idx.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == "1" {
                write!(f, "{name}")?;
            } else if abs.contains(['+', '-', ' ']) {
                write!(f, "({abs})*{name}")?;
            } else {
                write!(f, "{abs}*{name}")?;
            }
        }
        Ok(())
    }
}

impl<S: Coeff> fmt::Debug for Form<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form(dim={}, deg={}) {{", self.dim, self.degree)?;
        for (idx, x) in &self.terms {
            write!(f, " {:?}: {:?};", idx, x)?;
        }
        write!(f, " }}")
    }
}

/// `e1^e2^e5` style name for a monomial.
pub fn monomial_name(idx: MultiIndex) -> String {
    idx.indices()
        .map(|i| format!("e{}", i + 1))
        .collect::<Vec<_>>()
        .join("^")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn e(n: usize, i: usize) -> KForm {
        KForm::basis(n, i - 1)
    }

    #[test]
    fn self_wedge_vanishes() {
        assert!(e(3, 1).wedge(&e(3, 1)).is_zero());
    }

    #[test]
    fn sign_bookkeeping() {
        let n = 7;
        let b = KForm::from_terms(n, 2, &[(-1, &[1, 2]), (1, &[3, 4])]);
        let expect = KForm::from_terms(n, 3, &[(-1, &[1, 2, 7]), (1, &[3, 4, 7])]);
        assert_eq!(e(n, 7).wedge(&b), expect);
    }

    #[test]
    fn even_degree_commutes() {
        let n = 5;
        let f = KForm::from_terms(n, 2, &[(1, &[1, 2]), (3, &[3, 4])]);
        assert_eq!(f.wedge(&e(n, 5)), e(n, 5).wedge(&f));
        assert_eq!(e(n, 1).wedge(&e(n, 2)), -&e(n, 2).wedge(&e(n, 1)));
    }

    #[test]
    fn interior_examples() {
        let v1 = Vector::basis(2, 0);
        assert_eq!(e(2, 1).wedge(&e(2, 2)).interior(&v1).unwrap(), e(2, 2));
        let a = KForm::from_terms(7, 3, &[(1, &[1, 4, 7])]);
        assert_eq!(
            a.interior(&Vector::basis(7, 6)).unwrap(),
            KForm::from_terms(7, 2, &[(1, &[1, 4])])
        );
        assert_eq!(
            KForm::constant(3, int(1)).interior(&v1.clone()),
            Err(Error::DimensionMismatch(3, 2))
        );
        assert_eq!(
            KForm::constant(2, int(1)).interior(&v1),
            Err(Error::DegreeZero("interior product"))
        );
    }

    #[test]
    fn wedge_rejects_mismatched_dimensions() {
        assert_eq!(
            e(3, 1).checked_wedge(&e(4, 1)),
            Err(Error::DimensionMismatch(3, 4))
        );
    }

    #[test]
    fn evaluation_convention() {
        let f = e(2, 1).wedge(&e(2, 2));
        let x = Vector::from_ints(&[1, 2]);
        let y = Vector::from_ints(&[3, 5]);
        // e1(X)e2(Y) - e1(Y)e2(X) = 5 - 6
        assert_eq!(f.eval(&[x, y]), int(-1));
        assert_eq!(f.eval_basis(&[1, 0]), int(-1));
    }

    #[test]
    fn pullback_is_determinantal() {
        let a = crate::linalg::Matrix::from_int_rows(&[&[1, 2], &[3, 4]]);
        let vol = e(2, 1).wedge(&e(2, 2));
        assert_eq!(vol.pullback_endo(&a), vol.scale(&a.det()));
    }

    #[test]
    fn relabel_tracks_sign() {
        let f = e(3, 1).wedge(&e(3, 2));
        assert_eq!(
            f.relabel(3, &[1, 0, 2]),
            KForm::from_terms(3, 2, &[(-1, &[1, 2])])
        );
        assert_eq!(f.shift(5, 2), KForm::from_terms(5, 2, &[(1, &[3, 4])]));
    }

    #[test]
    fn multiindex_order_is_lexicographic() {
        let a = MultiIndex::from_sorted(&[0, 5]).unwrap();
        let b = MultiIndex::from_sorted(&[1, 2]).unwrap();
        assert!(a < b);
        assert_eq!(MultiIndex::from_unsorted(&[2, 0, 1]), Some((MultiIndex(7), 1)));
        assert_eq!(MultiIndex::from_unsorted(&[1, 0]).unwrap().1, -1);
        assert!(MultiIndex::from_unsorted(&[1, 1]).is_none());
    }
}
