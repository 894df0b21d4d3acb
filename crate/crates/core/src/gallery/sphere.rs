//! Exact pointwise data for the round sphere `S^{2k+1} ⊂ ℂ^{k+1}` and for
//! `ℝ × ℂ^{k+1}`, with the circle-action moment map checks.
//!
//! Ambient coordinates are ordered `(x_1, y_1, …, x_{k+1}, y_{k+1})`; the
//! complex structure is `J∂x_j = ∂y_j`, `J∂y_j = −∂x_j`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::rational::{frac, int, Rational};

/// Exact point with `Σ (x_j² + y_j²) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SpherePoint {
    k: usize,
    coords: Vec<Rational>,
}

impl SpherePoint {
    pub fn new(k: usize, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != 2 * k + 2 {
            return Err(Error::DimensionMismatch(2 * k + 2, coords.len()));
        }
        let norm: Rational = coords.iter().map(|c| c * c).sum();
        if !norm.is_one() {
            return Err(Error::Precondition(format!(
                "point is not on the unit sphere (|z|^2 = {})",
                crate::rational::to_string(&norm)
            )));
        }
        Ok(SpherePoint { k, coords })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn position(&self) -> Vector {
        Vector(self.coords.clone())
    }
}

/// Standard complex structure on `ℝ^{2m}`.
fn complex_structure(m: usize) -> Matrix {
    let mut j = Matrix::zero(2 * m);
    for a in 0..m {
        j.set(2 * a + 1, 2 * a, int(1));
        j.set(2 * a, 2 * a + 1, int(-1));
    }
    j
}

/// `(g, ξ, η, φ)` of the standard Sasaki sphere at a point, as ambient
/// tensors: `ξ = JN`, `η = g(ξ, ·)`, `φ = J + N⊗η`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointwiseAcm {
    pub normal: Vector,
    pub xi: Vector,
    pub eta: Vector,
    pub phi: Matrix,
}

impl PointwiseAcm {
    /// Tangent vectors `v − ⟨v, N⟩N` for each ambient basis vector.
    pub fn tangent_frame(&self) -> Vec<Vector> {
        let n = self.normal.dim();
        (0..n)
            .map(|i| {
                let mut v = Vector::basis(n, i);
                v.axpy(&-self.normal.0[i].clone(), &self.normal);
                v
            })
            .collect()
    }

    /// `η(ξ) = 1`, `φξ = 0`, `φ²v = −v + η(v)ξ` and `|φv|² = |v|² − η(v)²`
    /// on tangent vectors.
    pub fn invariants_hold(&self) -> bool {
        if !self.eta.dot(&self.xi).is_one() || !self.phi.apply(&self.xi).is_zero() {
            return false;
        }
        self.tangent_frame().iter().all(|v| {
            let pv = self.phi.apply(v);
            let ev = self.eta.dot(v);
            let mut expect = -v;
            expect.axpy(&ev, &self.xi);
            self.phi.apply(&pv) == expect && pv.dot(&pv) == v.dot(v) - &ev * &ev
        })
    }
}

pub fn sphere_data(p: &SpherePoint) -> PointwiseAcm {
    let normal = p.position();
    let j = complex_structure(p.k + 1);
    let xi = j.apply(&normal);
    let eta = xi.clone();
    let phi = &j + &Matrix::outer(&normal, &eta);
    PointwiseAcm {
        normal,
        xi,
        eta,
        phi,
    }
}

/// Stereographic images `(2v, |v|² − 1)/(|v|² + 1)` of pseudorandom rational
/// `v ∈ ℚ^{2k+1}`; the first point is always the south pole (`v = 0`).
pub fn rational_sphere_points(k: usize, count: usize, seed: u64) -> Vec<SpherePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    let mut first = true;
    while out.len() < count {
        let v: Vec<Rational> = if first {
            vec![Rational::zero(); 2 * k + 1]
        } else {
            (0..2 * k + 1).map(|_| small_rational(&mut rng)).collect()
        };
        first = false;
        let p = stereographic(&v);
        if seen.insert(p.clone()) {
            out.push(SpherePoint::new(k, p).expect("stereographic images lie on the sphere"));
        }
    }
    out
}

fn small_rational(rng: &mut impl Rng) -> Rational {
    frac(rng.gen_range(-9..=9), rng.gen_range(1..=7))
}

fn stereographic(v: &[Rational]) -> Vec<Rational> {
    let norm: Rational = v.iter().map(|c| c * c).sum();
    let denom = &norm + int(1);
    let mut p: Vec<Rational> = v.iter().map(|c| c * int(2) / &denom).collect();
    p.push((&norm - int(1)) / &denom);
    p
}

/// Pseudorandom exact unit vector in `ℚ^dim` (`dim ≥ 1`).
pub fn rational_unit_vector(dim: usize, rng: &mut impl Rng) -> Vec<Rational> {
    if dim == 1 {
        return vec![if rng.gen_bool(0.5) { int(1) } else { int(-1) }];
    }
    let v: Vec<Rational> = (0..dim - 1).map(|_| small_rational(rng)).collect();
    stereographic(&v)
}

/// `(a, b) ↦ ((a + b)/2, (a − b)/2)` on consecutive pairs: halves `|u|²`.
fn half_rotation(u: &[Rational]) -> Vec<Rational> {
    let half = frac(1, 2);
    u.chunks(2)
        .flat_map(|pair| {
            let (a, b) = (&pair[0], &pair[1]);
            [(a + b) * &half, (a - b) * &half]
        })
        .collect()
}

/// Exact points of `μ⁻¹(0)` for `μ = Σ (−1)^j |z_j|²`: the odd- and
/// even-indexed blocks each get norm `1/2`.
pub fn zero_level_points(k: usize, count: usize, seed: u64) -> Vec<SpherePoint> {
    assert!(k >= 1, "need k >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let odd: Vec<usize> = (1..=k + 1).filter(|j| j % 2 == 1).collect();
    let even: Vec<usize> = (1..=k + 1).filter(|j| j % 2 == 0).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let u = half_rotation(&rational_unit_vector(2 * odd.len(), &mut rng));
        let w = half_rotation(&rational_unit_vector(2 * even.len(), &mut rng));
        let mut coords = vec![Rational::zero(); 2 * k + 2];
        for (block, vals) in [(&odd, &u), (&even, &w)] {
            for (slot, &j) in block.iter().enumerate() {
                coords[2 * (j - 1)] = vals[2 * slot].clone();
                coords[2 * (j - 1) + 1] = vals[2 * slot + 1].clone();
            }
        }
        if seen.insert(coords.clone()) {
            out.push(SpherePoint::new(k, coords).expect("norms add to one"));
        }
    }
    out
}

/// Values of a candidate moment map at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentReport {
    pub mu: Rational,
    /// `dμ(ξ)`, which must vanish.
    pub dmu_xi: Rational,
    /// `dμ(φX)` for the fundamental field `X` of the action.
    pub dmu_phi_x: Rational,
    /// `Σ |z_j|²` at the point.
    pub norm: Rational,
    /// `μ` is unchanged by a rational rotation of the action.
    pub mu_invariant: bool,
    /// `f = Σ λ_j |z_j|²` is unchanged by the same rotation.
    pub f_invariant: bool,
}

/// Rotation by `(c, s) = (3/5, 4/5)` on `z_j`, with direction `sign_j`.
fn rotate(z: &[Rational], signs: &[i64]) -> Vec<Rational> {
    let (c, s) = (frac(3, 5), frac(4, 5));
    let mut out = z.to_vec();
    for (j, &sg) in signs.iter().enumerate() {
        let (x, y) = (&z[2 * j], &z[2 * j + 1]);
        let s = &s * int(sg);
        out[2 * j] = &c * x - &s * y;
        out[2 * j + 1] = &s * x + &c * y;
    }
    out
}

fn weighted(z: &[Rational], weights: &[Rational]) -> Rational {
    weights
        .iter()
        .enumerate()
        .map(|(j, w)| w * (&z[2 * j] * &z[2 * j] + &z[2 * j + 1] * &z[2 * j + 1]))
        .sum()
}

fn check_lambda(k: usize, lambda: &[Rational]) -> Result<()> {
    if lambda.len() != k + 1 {
        return Err(Error::DimensionMismatch(k + 1, lambda.len()));
    }
    Ok(())
}

/// `N = ℝ × ℂ^{k+1}` with `ξ = ∂_s`, `φ = J`, the diagonal circle action
/// and `μ = −Σ|z_j|² + 1`. The point is `(s, x_1, y_1, …)`.
pub fn moment_check_euclid(k: usize, p: &[Rational], lambda: &[Rational]) -> Result<MomentReport> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    if p.len() != 2 * k + 3 {
        return Err(Error::DimensionMismatch(2 * k + 3, p.len()));
    }
    check_lambda(k, lambda)?;
    let z = &p[1..];
    let m = 2 * k + 2;
    let zv = Vector(z.to_vec());
    let ones = vec![int(1); k + 1];
    let norm = weighted(z, &ones);
    let mu = -&norm + int(1);
    // dμ = −2 Σ (x dx + y dy), no ds component
    let dmu = Vector(std::iter::once(int(0)).chain(z.iter().map(|c| c * int(-2))).collect());
    let j = complex_structure(k + 1);
    let x_field = j.apply(&zv);
    let phi_x = Vector(std::iter::once(int(0)).chain(j.apply(&x_field).0).collect());
    let xi = Vector::basis(m + 1, 0);
    let rotated = rotate(z, &vec![1; k + 1]);
    Ok(MomentReport {
        dmu_xi: dmu.dot(&xi),
        dmu_phi_x: dmu.dot(&phi_x),
        mu_invariant: -weighted(&rotated, &ones) + int(1) == mu,
        f_invariant: weighted(&rotated, lambda) == weighted(z, lambda),
        mu,
        norm,
    })
}

/// Sasaki sphere with the action `(e^{−is}z_1, e^{is}z_2, …)`,
/// `X = Σ (−1)^j (x_j∂y_j − y_j∂x_j)` and `μ = η(X) = Σ (−1)^j |z_j|²`.
pub fn moment_check_sphere(k: usize, p: &SpherePoint, lambda: &[Rational]) -> Result<MomentReport> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    if p.k != k {
        return Err(Error::DimensionMismatch(k, p.k));
    }
    check_lambda(k, lambda)?;
    let data = sphere_data(p);
    let z = p.coords();
    let signs: Vec<i64> = (1..=k + 1).map(|j| if j % 2 == 0 { 1 } else { -1 }).collect();
    let weights: Vec<Rational> = signs.iter().map(|&s| int(s)).collect();
    let mu = weighted(z, &weights);
    let mut dmu = Vector::zero(2 * k + 2);
    let mut x_field = Vector::zero(2 * k + 2);
    for (j, &s) in signs.iter().enumerate() {
        dmu.0[2 * j] = &z[2 * j] * int(2 * s);
        dmu.0[2 * j + 1] = &z[2 * j + 1] * int(2 * s);
        x_field.0[2 * j] = &z[2 * j + 1] * int(-s);
        x_field.0[2 * j + 1] = &z[2 * j] * int(s);
    }
    if data.eta.dot(&x_field) != mu {
        return Err(Error::Internal("mu differs from eta(X)".into()));
    }
    let rotated = rotate(z, &signs);
    Ok(MomentReport {
        dmu_xi: dmu.dot(&data.xi),
        dmu_phi_x: dmu.dot(&data.phi.apply(&x_field)),
        mu_invariant: weighted(&rotated, &weights) == mu,
        f_invariant: weighted(&rotated, lambda) == weighted(z, lambda),
        norm: weighted(z, &vec![int(1); k + 1]),
        mu,
    })
}
