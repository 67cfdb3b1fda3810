#![allow(dead_code)]
pub mod displays;

use hom3lie::linalg::{frac, int, unit, zeros};
use hom3lie::{
    twist_algebra, DenseCochain, GeneralizedRep, HomAlgebra, Matrix, Scalar, SkewTensor2, SkewTensor3,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x3_11e;

pub fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ (stream << 16))
}

pub fn small(rng: &mut ChaCha8Rng) -> Scalar {
    int(rng.gen_range(-2..=2))
}

pub fn mat2(a: i64, b: i64, c: i64, d: i64) -> Matrix {
    Matrix::from_i64(&[&[a, b], &[c, d]])
}

pub fn fix_a_bracket() -> SkewTensor3 {
    let mut t = SkewTensor3::zero(3, 3);
    t.set(0, 1, 2, unit(3, 0)).unwrap();
    t
}

pub fn fix_a_alpha(lambda: i64) -> Matrix {
    Matrix::diagonal(&[int(lambda), int(1), int(1)])
}

/// FIX-A bracket twisted by its own diagonal map.
pub fn fix_a_twisted(lambda: i64) -> HomAlgebra {
    twist_algebra(&fix_a_bracket(), &fix_a_alpha(lambda)).unwrap()
}

/// Twisted FIX-A generalized representation with `r₂ = 0`:
/// `ρ̃ = A∘ρ`, `ν̃ = A∘ν`, `A = diag(λ, 1)`.
pub fn fix_a_genrep(lambda: i64, r1: i64, s: i64) -> GeneralizedRep {
    let a = mat2(lambda, 0, 0, 1);
    let rho = vec![mat2(0, 1, 0, 0), mat2(0, r1, 0, 0), mat2(1, 0, 0, 0)];
    let rho = rho.iter().map(|r| a.mul(r)).collect();
    let mut nu = vec![SkewTensor2::zero(2, 2); 3];
    nu[1].set(0, 1, vec![int(lambda * s), int(0)]).unwrap();
    nu[2].set(0, 1, vec![int(lambda * s * r1), int(0)]).unwrap();
    GeneralizedRep::new(3, 2, rho, nu, a).unwrap()
}

/// FIX-C data at the given parameters.
pub fn fix_c(a1: Scalar, a2: Scalar, a3: Scalar, r1: Scalar, r2: Scalar, s: Scalar) -> (HomAlgebra, GeneralizedRep) {
    let mut t = SkewTensor3::zero(3, 3);
    t.set(0, 1, 2, vec![a1.clone(), int(0), int(0)]).unwrap();
    let alpha = Matrix::diagonal(&[a1.clone(), a2.clone(), int(1) / a2.clone()]);
    let alg = HomAlgebra::new(t, alpha).unwrap();
    let z = int(0);
    let m = |a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar| {
        Matrix::from_rows(vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]]).unwrap()
    };
    let rho = vec![
        m(&z, &z, &z, &z),
        m(&z, &(r2 * a1.clone()), &z, &z),
        m(&a1, &z, &z, &(r1 * a2.clone() * a3.clone() / a1.clone())),
    ];
    let mut nu = vec![SkewTensor2::zero(2, 2); 3];
    nu[2].set(0, 1, vec![s * a1.clone(), int(0)]).unwrap();
    let endo = Matrix::diagonal(&[a1.clone(), a2 * a3 / a1]);
    (alg, GeneralizedRep::new(3, 2, rho, nu, endo).unwrap())
}

pub fn fix_c_valid(a: i64, a2: i64, r2: i64, s: i64) -> (HomAlgebra, GeneralizedRep) {
    fix_c(int(a), int(a2), int(a), int(0), int(r2), int(s))
}

/// Random invertible 2×2 matrix with small entries.
pub fn random_invertible2(rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = Matrix::from_rows(vec![vec![small(rng), small(rng)], vec![small(rng), small(rng)]]).unwrap();
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// Random dense cochain with entries in `{-2..2}`, each nonzero with the
/// given probability.
pub fn random_cochain(rng: &mut ChaCha8Rng, source: usize, target: usize, degree: usize, density: f64) -> DenseCochain {
    let mut c = DenseCochain::zero(source, target, degree);
    for k in 0..c.key_count() {
        let (ps, u) = c.decode_key(k);
        let v: Vec<Scalar> = (0..target)
            .map(|_| if rng.gen_bool(density) { small(rng) } else { int(0) })
            .collect();
        c.set(&ps, u, &v);
    }
    c
}

/// Keeps the entries of `c` compatible with diagonal twists: the weight of
/// the target coordinate must equal the product of the argument weights.
pub fn weight_project(c: &DenseCochain, source_w: &[Scalar], target_w: &[Scalar]) -> DenseCochain {
    let prs = hom3lie::linalg::pairs(c.source_dim());
    let mut out = c.clone();
    for k in 0..c.key_count() {
        let (ps, u) = c.decode_key(k);
        let mut w = source_w[u].clone();
        for &p in &ps {
            w = w * source_w[prs[p].0].clone() * source_w[prs[p].1].clone();
        }
        let v: Vec<Scalar> = c
            .value(&ps, u)
            .iter()
            .enumerate()
            .map(|(t, x)| if target_w[t] == w { x.clone() } else { int(0) })
            .collect();
        out.set(&ps, u, &v);
    }
    out
}

/// Random linear combination of the given cochains.
pub fn random_combination(rng: &mut ChaCha8Rng, basis: &[DenseCochain]) -> DenseCochain {
    let mut out = basis[0].scaled(&int(0));
    for b in basis {
        out = out.add(&b.scaled(&small(rng))).unwrap();
    }
    out
}

pub fn half() -> Scalar {
    frac(1, 2)
}

pub fn zero_vec(n: usize) -> Vec<Scalar> {
    zeros(n)
}
