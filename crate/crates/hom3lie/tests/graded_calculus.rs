mod common;

use common::*;
use hom3lie::linalg::{int, pairs, unit};
use hom3lie::{
    adjoint_rep, cochain_of_bracket, cochain_space_basis, cocycle_space, cohomology_dims, compatible_subspace,
    conjugate_genrep, delta_rho, differential_d, graded_bracket, graded_compose, is_canonical, lift_structure,
    validate_generalized_rep, validate_hom_algebra, CompatibilityConstraint, ComponentCochain2, DenseCochain,
    Flavor, GeneralizedRep, HomAlgebra, Matrix, Scalar,
};
use proptest::prelude::*;
use rand::Rng;

fn sign(e: usize) -> Scalar {
    if e % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

fn host_dim(total: usize) -> usize {
    match total {
        0..=3 => 4,
        4 => 3,
        _ => 2,
    }
}

fn weights(n: usize) -> Vec<Scalar> {
    [int(1), int(-1), int(2), int(-1)][..n].to_vec()
}

fn compatible_random(rng: &mut rand_chacha::ChaCha8Rng, n: usize, degree: usize) -> DenseCochain {
    let w = weights(n);
    weight_project(&random_cochain(rng, n, n, degree, 0.6), &w, &w)
}

fn jacobi_sum(a: &DenseCochain, b: &DenseCochain, c: &DenseCochain, alpha: &Matrix) -> DenseCochain {
    let (q, p, r) = (a.degree(), b.degree(), c.degree());
    let t1 = graded_bracket(a, &graded_bracket(b, c, alpha).unwrap(), alpha).unwrap();
    let t2 = graded_bracket(b, &graded_bracket(c, a, alpha).unwrap(), alpha).unwrap();
    let t3 = graded_bracket(c, &graded_bracket(a, b, alpha).unwrap(), alpha).unwrap();
    t1.scaled(&sign(q * r))
        .add(&t2.scaled(&sign(p * q)))
        .unwrap()
        .add(&t3.scaled(&sign(r * p)))
        .unwrap()
}

const DEGREE_TRIPLES: [(usize, usize, usize); 10] = [
    (0, 0, 1),
    (0, 1, 1),
    (1, 1, 1),
    (0, 1, 2),
    (1, 0, 2),
    (2, 1, 0),
    (1, 1, 2),
    (0, 2, 2),
    (1, 2, 2),
    (2, 2, 2),
];

#[test]
fn graded_jacobi_on_compatible_cochains() {
    let mut rng = rng(1);
    for trial in 0..50 {
        let (q, p, r) = DEGREE_TRIPLES[trial % DEGREE_TRIPLES.len()];
        let n = host_dim(q + p + r);
        let alpha = Matrix::diagonal(&weights(n));
        let a = compatible_random(&mut rng, n, q);
        let b = compatible_random(&mut rng, n, p);
        let c = compatible_random(&mut rng, n, r);
        assert!(jacobi_sum(&a, &b, &c, &alpha).is_zero(), "degrees {q},{p},{r}");
    }
}

#[test]
fn graded_jacobi_untwisted_arbitrary_cochains() {
    let mut rng = rng(2);
    for trial in 0..10 {
        let (q, p, r) = DEGREE_TRIPLES[trial % 6];
        let n = host_dim(q + p + r).min(3);
        let id = Matrix::identity(n);
        let a = random_cochain(&mut rng, n, n, q, 0.4);
        let b = random_cochain(&mut rng, n, n, p, 0.4);
        let c = random_cochain(&mut rng, n, n, r, 0.4);
        assert!(jacobi_sum(&a, &b, &c, &id).is_zero());
    }
}

#[test]
fn composition_operator_identity() {
    // ξ∘[φ,ψ] = −((ξ∘ψ)∘φ − (−1)^{pq} (ξ∘φ)∘ψ)
    let mut rng = rng(3);
    for trial in 0..50 {
        let (q, p, r) = DEGREE_TRIPLES[trial % DEGREE_TRIPLES.len()];
        let n = host_dim(q + p + r);
        let alpha = Matrix::diagonal(&weights(n));
        let phi = compatible_random(&mut rng, n, q);
        let psi = compatible_random(&mut rng, n, p);
        let xi = compatible_random(&mut rng, n, r);
        let left = graded_compose(&xi, &graded_bracket(&phi, &psi, &alpha).unwrap(), &alpha).unwrap();
        let a = graded_compose(&graded_compose(&xi, &psi, &alpha).unwrap(), &phi, &alpha).unwrap();
        let b = graded_compose(&graded_compose(&xi, &phi, &alpha).unwrap(), &psi, &alpha).unwrap();
        let right = a.sub(&b.scaled(&sign(p * q))).unwrap().scaled(&int(-1));
        assert_eq!(left, right, "degrees {q},{p},{r}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn graded_skew_symmetry(
        q in 0usize..=2,
        p in 0usize..=2,
        seed in any::<u64>(),
        diag in proptest::collection::vec(-2i64..=2, 3),
    ) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let n = 3;
        let alpha = Matrix::diagonal(&diag.iter().map(|&x| int(x)).collect::<Vec<_>>());
        let a = random_cochain(&mut rng, n, n, q, 0.5);
        let b = random_cochain(&mut rng, n, n, p, 0.5);
        let ab = graded_bracket(&a, &b, &alpha).unwrap();
        let ba = graded_bracket(&b, &a, &alpha).unwrap();
        prop_assert!(ab.add(&ba.scaled(&sign(p * q))).unwrap().is_zero());
    }

    #[test]
    fn component_form_round_trips(seed in any::<u64>()) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let basis = cochain_space_basis(5, 3, 2, 1);
        let c = random_combination(&mut rng, &basis);
        let comp = ComponentCochain2::from_dense(&c, 3).unwrap();
        prop_assert_eq!(comp.to_dense(), c);
    }
}

use rand::SeedableRng;

/// Random algebra on a 3-dim space: a conjugate of a twisted FIX-A algebra,
/// optionally perturbed in one bracket or twist entry.
fn candidate(rng: &mut rand_chacha::ChaCha8Rng, perturb: bool) -> HomAlgebra {
    let lambda = [2, 3, -1][rng.gen_range(0..3)];
    let base = fix_a_twisted(lambda);
    let p = loop {
        let rows = (0..3).map(|_| (0..3).map(|_| small(rng)).collect()).collect();
        let m = Matrix::from_rows(rows).unwrap();
        if m.inverse().is_some() {
            break m;
        }
    };
    let inv = p.inverse().unwrap();
    let mut bracket = base.bracket().pull_back(&inv).map_values(&p);
    let mut alpha = p.mul(base.alpha()).mul(&inv);
    if perturb {
        if rng.gen_bool(0.5) {
            let mut v = bracket.get(0, 1, 2);
            let i = rng.gen_range(0..3);
            v[i] += int(1);
            bracket.set(0, 1, 2, v).unwrap();
        } else {
            let (i, j) = (rng.gen_range(0..3), rng.gen_range(0..3));
            let x = alpha.get(i, j) + int(1);
            alpha.set(i, j, x);
        }
    }
    HomAlgebra::new(bracket, alpha).unwrap()
}

#[test]
fn canonical_structure_agrees_with_validation() {
    let mut rng = rng(4);
    let mut seen = [0usize; 2];
    for trial in 0..24 {
        let a = candidate(&mut rng, trial % 2 == 1);
        let pi = cochain_of_bracket(a.bracket());
        let canonical = is_canonical(&pi, a.alpha()).passed();
        let valid = validate_hom_algebra(&a).passed();
        assert_eq!(canonical, valid, "trial {trial}");
        seen[valid as usize] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}

#[test]
fn canonical_square_is_twice_the_defect() {
    let mut rng = rng(5);
    for _ in 0..6 {
        let a = candidate(&mut rng, true);
        let pi = cochain_of_bracket(a.bracket());
        let sq = graded_bracket(&pi, &pi, a.alpha()).unwrap();
        // [π,π](X, Y, z) = −2 π∘π; compare with the Hom-Filippov defect
        let n = 3;
        let prs = pairs(n);
        for (i, &(x1, x2)) in prs.iter().enumerate() {
            for (j, &(y1, y2)) in prs.iter().enumerate() {
                for z in 0..n {
                    let e = |k: usize| unit(n, k);
                    let ax = |k: usize| a.twist(&e(k));
                    let lhs = a.br(&ax(x1), &ax(x2), &a.br(&e(y1), &e(y2), &e(z)));
                    let mut rhs = a.br(&a.br(&e(x1), &e(x2), &e(y1)), &ax(y2), &ax(z));
                    rhs = hom3lie::linalg::add(&rhs, &a.br(&ax(y1), &a.br(&e(x1), &e(x2), &e(y2)), &ax(z)));
                    rhs = hom3lie::linalg::add(&rhs, &a.br(&ax(y1), &ax(y2), &a.br(&e(x1), &e(x2), &e(z))));
                    let defect = hom3lie::linalg::sub(&rhs, &lhs);
                    let got = sq.value(&[i, j], z).to_vec();
                    assert_eq!(got, hom3lie::linalg::scale(&int(2), &defect));
                }
            }
        }
    }
}

fn valid_genreps() -> Vec<(HomAlgebra, GeneralizedRep)> {
    let mut rng = rng(6);
    let mut out = Vec::new();
    for &(lambda, r1, s) in &[(3, 1, 1), (2, -1, 2), (3, 0, 1)] {
        let a = fix_a_twisted(lambda);
        let g = fix_a_genrep(lambda, r1, s);
        out.push((a.clone(), g.clone()));
        let t = random_invertible2(&mut rng);
        out.push((a, conjugate_genrep(&g, &t).unwrap()));
    }
    out.push(fix_c_valid(2, 3, 1, 1));
    out
}

fn random_admissible(rng: &mut rand_chacha::ChaCha8Rng, a: &HomAlgebra, g: &GeneralizedRep, degree: usize) -> DenseCochain {
    let (n, m) = (a.dim(), g.carrier_dim());
    let constraint = CompatibilityConstraint::new(a.alpha().block_diag(g.endo()), g.endo().clone()).unwrap();
    let basis = compatible_subspace(&cochain_space_basis(n + m, n, m, degree), &constraint).unwrap();
    if basis.is_empty() {
        return DenseCochain::zero(n + m, m, degree).with_split(n);
    }
    random_combination(rng, &basis)
}

fn skew_in_last_three(c: &DenseCochain) -> bool {
    let n = c.source_dim();
    let k = c.degree();
    for key in 0..c.key_count() {
        let (ps, u) = c.decode_key(key);
        let (s, t) = pairs(n)[ps[k - 1]];
        let mut args: Vec<(usize, usize)> = ps.iter().map(|&p| pairs(n)[p]).collect();
        args[k - 1] = (s, u);
        let swapped = c.eval_basis(&args, t);
        let v = c.value(&ps, u);
        if swapped.iter().zip(v).any(|(a, b)| a != &-b.clone()) {
            return false;
        }
    }
    true
}

#[test]
fn d_squares_to_zero() {
    let mut rng = rng(7);
    let cases = valid_genreps();
    let mut trials = 0;
    for (a, g) in &cases {
        assert!(validate_generalized_rep(a, g).passed());
        for degree in 0..=1 {
            for _ in 0..2 {
                let phi = random_admissible(&mut rng, a, g, degree);
                let d1 = differential_d(a, g, &phi).unwrap();
                assert!(skew_in_last_three(&d1));
                let d2 = differential_d(a, g, &d1).unwrap();
                assert!(d2.is_zero());
                trials += 1;
            }
        }
    }
    assert!(trials >= 20);
}

#[test]
fn d_restricted_to_base_is_the_ordinary_coboundary() {
    let mut rng = rng(8);
    for (a, g) in valid_genreps() {
        let (n, m) = (a.dim(), g.carrier_dim());
        let r = g.ordinary();
        let constraint = CompatibilityConstraint::new(a.alpha().clone(), g.endo().clone()).unwrap();
        for degree in 0..=1 {
            let basis = compatible_subspace(&cochain_space_basis(n, n, m, degree), &constraint).unwrap();
            if basis.is_empty() {
                continue;
            }
            let phi = random_combination(&mut rng, &basis);
            let full = differential_d(&a, &g, &phi.extend_source(n + m)).unwrap();
            let ordinary = delta_rho(&a, &r, &phi).unwrap();
            assert_eq!(full.restrict_source(n), ordinary.with_split(n));
        }
    }
}

#[test]
fn adjoint_coboundary_is_bracket_with_structure() {
    let mut rng = rng(9);
    for lambda in [1, 3, -2] {
        let a = fix_a_twisted(lambda);
        let adj = adjoint_rep(&a).unwrap();
        let pi = cochain_of_bracket(a.bracket());
        let constraint = CompatibilityConstraint::new(a.alpha().clone(), a.alpha().clone()).unwrap();
        for degree in 0..=2 {
            let basis = compatible_subspace(&cochain_space_basis(3, 3, 3, degree), &constraint).unwrap();
            let phi = random_combination(&mut rng, &basis);
            let bracket = graded_bracket(&pi, &phi, a.alpha()).unwrap();
            assert_eq!(bracket, delta_rho(&a, &adj, &phi).unwrap());
        }
    }
    // and for a full (not skew-parametrized) degree-1 cochain
    let a = fix_a_twisted(3);
    let w = [int(3), int(1), int(1)];
    let phi = weight_project(&random_cochain(&mut rng, 3, 3, 1, 0.7), &w, &w);
    let pi = cochain_of_bracket(a.bracket());
    assert_eq!(
        graded_bracket(&pi, &phi, a.alpha()).unwrap(),
        delta_rho(&a, &adjoint_rep(&a).unwrap(), &phi).unwrap()
    );
}

#[test]
fn one_cocycle_expansion_untwisted() {
    let mut rng = rng(10);
    let a = HomAlgebra::untwisted(fix_a_bracket()).unwrap();
    let g = {
        let rho = vec![mat2(0, 1, 0, 0), mat2(0, 2, 0, 0), mat2(1, -1, 0, 0)];
        let mut nu = vec![hom3lie::SkewTensor2::zero(2, 2); 3];
        nu[1].set(0, 1, vec![int(3), int(0)]).unwrap();
        nu[2].set(0, 1, vec![int(6), int(0)]).unwrap();
        GeneralizedRep::new(3, 2, rho, nu, Matrix::identity(2)).unwrap()
    };
    assert!(validate_generalized_rep(&a, &g).passed());
    let phi = random_cochain(&mut rng, 5, 2, 0, 0.8).restrict_source(3).extend_source(5);
    let d = differential_d(&a, &g, &phi).unwrap();
    let f = |x: usize| phi.value(&[], x).to_vec();
    for x1 in 0..3 {
        for x2 in 0..3 {
            for v in 0..2 {
                let expect = hom3lie::linalg::sub(
                    &g.nu_apply(&unit(3, x1), &f(x2), &unit(2, v)),
                    &g.nu_apply(&unit(3, x2), &f(x1), &unit(2, v)),
                );
                assert_eq!(d.eval_basis(&[(x1, x2)], 3 + v), expect);
            }
        }
    }
    for (x1, x2) in pairs(3) {
        for x3 in 0..3 {
            let mut expect = g.act(x1, x2).apply(&f(x3));
            expect = hom3lie::linalg::add(&expect, &g.act(x2, x3).apply(&f(x1)));
            expect = hom3lie::linalg::add(&expect, &g.act(x3, x1).apply(&f(x2)));
            let br = a.br_basis(x1, x2, x3);
            let fb = phi.restrict_source(3).eval(&[], &br);
            expect = hom3lie::linalg::sub(&expect, &fb);
            assert_eq!(d.eval_basis(&[(x1, x2)], x3), expect);
        }
    }
}

#[test]
fn cocycles_are_closed_and_contain_coboundaries() {
    let mut rng = rng(11);
    for (a, g) in valid_genreps().into_iter().take(3) {
        for degree in 0..=1 {
            let z = cocycle_space(&a, &g, degree).unwrap();
            for c in &z {
                assert!(differential_d(&a, &g, c).unwrap().is_zero());
            }
            if degree == 1 {
                let f = random_admissible(&mut rng, &a, &g, 0);
                let df = differential_d(&a, &g, &f).unwrap();
                let before = hom3lie::linalg::span_rank(&z.iter().map(|c| c.values().to_vec()).collect::<Vec<_>>());
                let mut with = z.iter().map(|c| c.values().to_vec()).collect::<Vec<_>>();
                with.push(df.values().to_vec());
                assert_eq!(hom3lie::linalg::span_rank(&with), before);
            }
        }
        for p in 1..=2 {
            let dims = cohomology_dims(&a, &g, p, Flavor::Generalized).unwrap();
            assert_eq!(dims.cohomology + dims.coboundaries, dims.cocycles);
            let ordinary = cohomology_dims(&a, &g, p, Flavor::Ordinary).unwrap();
            assert!(ordinary.coboundaries <= ordinary.cocycles);
        }
    }
}

#[test]
fn lift_is_canonical_exactly_for_generalized_reps() {
    for (a, g) in valid_genreps() {
        let s = lift_structure(&a, &g).unwrap();
        assert!(is_canonical(&s, &a.alpha().block_diag(g.endo())).passed());
    }
    let (a, g) = fix_c(int(2), int(3), int(5), int(1), int(1), int(1));
    let s = lift_structure(&a, &g).unwrap();
    assert_eq!(
        is_canonical(&s, &a.alpha().block_diag(g.endo())).passed(),
        validate_generalized_rep(&a, &g).passed()
    );
    assert!(!validate_generalized_rep(&a, &g).passed());
}
