#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stgeom::form::MultiIndex;
use stgeom::linalg::kernel;
use stgeom::rational::int;
use stgeom::{KForm, LieAlgebra, Matrix, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All `k`-subsets of `0..n` as monomials.
pub fn monomials(n: usize, k: usize) -> Vec<MultiIndex> {
    (0u64..1 << n)
        .filter(|b| b.count_ones() as usize == k)
        .map(MultiIndex::from_bits)
        .collect()
}

/// Nilpotent algebra: `de^k` is a random element of the kernel of `d` on
/// `Λ²⟨e^1, …, e^{k−1}⟩`, so `d² = 0` holds by construction.
pub fn random_nilpotent(rng: &mut impl Rng, n: usize) -> LieAlgebra {
    let mut d = vec![KForm::zero(n, 2); n];
    for k in 1..n {
        let l = LieAlgebra::new(d.clone()).expect("well formed");
        let cols = monomials(k, 2);
        if cols.is_empty() {
            continue;
        }
        let images: Vec<KForm> = cols
            .iter()
            .map(|m| l.d(&KForm::monomial(n, &m.indices().collect::<Vec<_>>(), int(1))))
            .collect();
        let rows: Vec<Vec<Rational>> = monomials(n, 3)
            .into_iter()
            .map(|r| images.iter().map(|f| f.coeff(r)).collect())
            .collect();
        let ker = kernel(&rows, cols.len());
        if ker.is_empty() || rng.gen_bool(0.25) {
            continue;
        }
        let mut form = KForm::zero(n, 2);
        for v in &ker {
            let c = int(rng.gen_range(-2..=2));
            for (m, x) in cols.iter().zip(v) {
                let idx: Vec<usize> = m.indices().collect();
                form = &form + &KForm::monomial(n, &idx, x * &c);
            }
        }
        d[k] = form;
    }
    LieAlgebra::new(d).expect("well formed")
}

/// Random invertible integer matrix (unit lower times unit upper, permuted).
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> Matrix {
    let mut lower = Matrix::identity(n);
    let mut upper = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            lower.set(i, j, int(rng.gen_range(-1..=1)));
            upper.set(j, i, int(rng.gen_range(-1..=1)));
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let p = Matrix::from_columns(&perm.iter().map(|&i| stgeom::Vector::basis(n, i)).collect::<Vec<_>>());
    &(&p * &lower) * &upper
}

/// Jacobi-valid algebra: a random nilpotent one, sometimes summed with
/// `aff(1)`, sometimes rewritten in a random basis so the differentials are
/// not triangular.
pub fn random_algebra(rng: &mut impl Rng, n: usize) -> LieAlgebra {
    let l = if n >= 2 && rng.gen_bool(0.3) {
        // aff(1): de^1 = e^1∧e^2, which is not unimodular
        let aff = LieAlgebra::new(vec![
            KForm::monomial(2, &[0, 1], int(1)),
            KForm::zero(2, 2),
        ])
        .expect("well formed");
        aff.direct_sum(&random_nilpotent(rng, n - 2))
    } else {
        random_nilpotent(rng, n)
    };
    if rng.gen_bool(0.5) {
        l.change_basis(&random_invertible(rng, n)).expect("invertible")
    } else {
        l
    }
}

pub fn random_form(rng: &mut impl Rng, n: usize, k: usize) -> KForm {
    let mut f = KForm::zero(n, k);
    for m in monomials(n, k) {
        if rng.gen_bool(0.4) {
            let c = Rational::new(rng.gen_range(-5..=5).into(), rng.gen_range(1..=3).into());
            f.add_term(m, c);
        }
    }
    f
}

pub fn random_vector(rng: &mut impl Rng, n: usize) -> stgeom::Vector {
    stgeom::Vector((0..n).map(|_| int(rng.gen_range(-3..=3))).collect())
}

/// Hodge star for the identity metric: `e^I ↦ ε e^{I^c}` with
/// `e^I ∧ ε e^{I^c} = e^1∧…∧e^n`.
pub fn hodge(a: &KForm) -> KForm {
    let n = a.dim();
    let full = (1u64 << n) - 1;
    let mut out = KForm::zero(n, n - a.degree());
    for (idx, x) in a.terms() {
        let comp = MultiIndex::from_bits(full & !idx.bits());
        let (_, sign) = idx.wedge(comp).expect("disjoint");
        out.add_term(comp, x * int(sign as i64));
    }
    out
}

/// Gallery structures together with some homothetic and conformal images.
pub fn st_battery() -> Vec<(String, stgeom::AcmStructure)> {
    use stgeom::acm::{conformal_const, homothety};
    use stgeom::rational::frac;
    let mut out = Vec::new();
    for (name, s) in stgeom::gallery::all() {
        out.push((format!("{name}, homothety 3"), homothety(&s, &int(3)).unwrap()));
        out.push((format!("{name}, conformal 1/2"), conformal_const(&s, &frac(1, 2)).unwrap()));
        out.push((name.to_string(), s));
    }
    out
}
