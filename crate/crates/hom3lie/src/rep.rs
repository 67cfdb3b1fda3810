//! Ordinary and generalized representations.

use crate::algebra::{check_alpha_morphism, require, validate_hom_algebra, HomAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{
    add, axpy, pair_count, pairs, signed_pair, unit, zeros, Matrix, Scalar, SkewTensor2,
    SkewTensor3, Vector,
};
use crate::report::{label_g, label_v, Report};

fn check_square(m: &Matrix, dim: usize, what: &str) -> Result<()> {
    if m.rows() != dim || m.cols() != dim {
        return Err(Error::Dimension(format!(
            "{what} is {}x{}, expected {dim}x{dim}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

fn check_rho(base_dim: usize, carrier_dim: usize, rho: &[Matrix]) -> Result<()> {
    if rho.len() != pair_count(base_dim) {
        return Err(Error::Dimension(format!(
            "{} action matrices for {} pairs",
            rho.len(),
            pair_count(base_dim)
        )));
    }
    for m in rho {
        check_square(m, carrier_dim, "action matrix")?;
    }
    Ok(())
}

/// `Σ_{s<t} (x_s y_t − x_t y_s) ρ_{st}`
fn act_on(base_dim: usize, rho: &[Matrix], x: &[Scalar], y: &[Scalar]) -> Matrix {
    let m = rho.first().map_or(0, Matrix::rows);
    let mut out = Matrix::zeros(m, m);
    for (k, (s, t)) in pairs(base_dim).into_iter().enumerate() {
        let c = &x[s] * &y[t] - &x[t] * &y[s];
        if !num::Zero::is_zero(&c) {
            out = out.add(&rho[k].scaled(&c));
        }
    }
    out
}

fn act_basis(base_dim: usize, carrier_dim: usize, rho: &[Matrix], i: usize, j: usize) -> Matrix {
    match signed_pair(base_dim, i, j) {
        None => Matrix::zeros(carrier_dim, carrier_dim),
        Some((k, false)) => rho[k].clone(),
        Some((k, true)) => rho[k].scaled(&crate::linalg::int(-1)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    base_dim: usize,
    carrier_dim: usize,
    rho: Vec<Matrix>,
    endo: Matrix,
}

impl Representation {
    /// `rho` lists the action of `e_s ∧ e_t` for the pairs `s < t` in
    /// lexicographic order.
    pub fn new(base_dim: usize, carrier_dim: usize, rho: Vec<Matrix>, endo: Matrix) -> Result<Self> {
        check_rho(base_dim, carrier_dim, &rho)?;
        check_square(&endo, carrier_dim, "endomorphism")?;
        Ok(Representation {
            base_dim,
            carrier_dim,
            rho,
            endo,
        })
    }

    pub fn zero(base_dim: usize, carrier_dim: usize, endo: Matrix) -> Result<Self> {
        let rho = vec![Matrix::zeros(carrier_dim, carrier_dim); pair_count(base_dim)];
        Self::new(base_dim, carrier_dim, rho, endo)
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn carrier_dim(&self) -> usize {
        self.carrier_dim
    }

    pub fn endo(&self) -> &Matrix {
        &self.endo
    }

    pub fn rho(&self) -> &[Matrix] {
        &self.rho
    }

    /// `ρ(e_i, e_j)`, sign-extended.
    pub fn act(&self, i: usize, j: usize) -> Matrix {
        act_basis(self.base_dim, self.carrier_dim, &self.rho, i, j)
    }

    pub fn act_at(&self, x: &[Scalar], y: &[Scalar]) -> Matrix {
        act_on(self.base_dim, &self.rho, x, y)
    }

    pub fn generalized(&self) -> GeneralizedRep {
        GeneralizedRep {
            base_dim: self.base_dim,
            carrier_dim: self.carrier_dim,
            rho: self.rho.clone(),
            nu: vec![SkewTensor2::zero(self.carrier_dim, self.carrier_dim); self.base_dim],
            endo: self.endo.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedRep {
    base_dim: usize,
    carrier_dim: usize,
    rho: Vec<Matrix>,
    nu: Vec<SkewTensor2>,
    endo: Matrix,
}

impl GeneralizedRep {
    pub fn new(
        base_dim: usize,
        carrier_dim: usize,
        rho: Vec<Matrix>,
        nu: Vec<SkewTensor2>,
        endo: Matrix,
    ) -> Result<Self> {
        check_rho(base_dim, carrier_dim, &rho)?;
        check_square(&endo, carrier_dim, "endomorphism")?;
        if nu.len() != base_dim {
            return Err(Error::Dimension(format!(
                "{} skew maps for {} generators",
                nu.len(),
                base_dim
            )));
        }
        for t in &nu {
            if t.dim() != carrier_dim || t.target_dim() != carrier_dim {
                return Err(Error::Dimension("skew map does not act on the carrier".into()));
            }
        }
        Ok(GeneralizedRep {
            base_dim,
            carrier_dim,
            rho,
            nu,
            endo,
        })
    }

    pub fn zero(base_dim: usize, carrier_dim: usize, endo: Matrix) -> Result<Self> {
        Ok(Representation::zero(base_dim, carrier_dim, endo)?.generalized())
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn carrier_dim(&self) -> usize {
        self.carrier_dim
    }

    pub fn endo(&self) -> &Matrix {
        &self.endo
    }

    pub fn rho(&self) -> &[Matrix] {
        &self.rho
    }

    pub fn nu(&self) -> &[SkewTensor2] {
        &self.nu
    }

    pub fn act(&self, i: usize, j: usize) -> Matrix {
        act_basis(self.base_dim, self.carrier_dim, &self.rho, i, j)
    }

    pub fn act_at(&self, x: &[Scalar], y: &[Scalar]) -> Matrix {
        act_on(self.base_dim, &self.rho, x, y)
    }

    /// `ν(x) = Σ x_i ν(e_i)`
    pub fn nu_at(&self, x: &[Scalar]) -> SkewTensor2 {
        let mut out = SkewTensor2::zero(self.carrier_dim, self.carrier_dim);
        for (i, c) in x.iter().enumerate() {
            if !num::Zero::is_zero(c) {
                out = out.add(&self.nu[i].scaled(c));
            }
        }
        out
    }

    pub fn nu_apply(&self, x: &[Scalar], u: &[Scalar], v: &[Scalar]) -> Vector {
        let mut out = zeros(self.carrier_dim);
        for (i, c) in x.iter().enumerate() {
            if !num::Zero::is_zero(c) {
                axpy(&mut out, c, &self.nu[i].eval(u, v));
            }
        }
        out
    }

    /// Drops `ν`.
    pub fn ordinary(&self) -> Representation {
        Representation {
            base_dim: self.base_dim,
            carrier_dim: self.carrier_dim,
            rho: self.rho.clone(),
            endo: self.endo.clone(),
        }
    }

    pub fn has_trivial_nu(&self) -> bool {
        self.nu.iter().all(SkewTensor2::is_zero)
    }

    pub fn with_endo(&self, endo: Matrix) -> Result<Self> {
        Self::new(self.base_dim, self.carrier_dim, self.rho.clone(), self.nu.clone(), endo)
    }
}

fn flat(m: &Matrix) -> Vec<Scalar> {
    m.entries().to_vec()
}

fn gw(idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| label_g(i)).collect()
}

fn mixed(xs: &[usize], vs: &[usize]) -> Vec<String> {
    xs.iter().map(|&i| label_g(i)).chain(vs.iter().map(|&i| label_v(i))).collect()
}

struct Ctx<'a> {
    a: &'a HomAlgebra,
    n: usize,
    m: usize,
    rho: &'a [Matrix],
    endo: &'a Matrix,
    ae: Vec<Vector>,
}

impl<'a> Ctx<'a> {
    fn new(a: &'a HomAlgebra, rho: &'a [Matrix], endo: &'a Matrix, m: usize) -> Self {
        let n = a.dim();
        let e: Vec<Vector> = (0..n).map(|i| unit(n, i)).collect();
        let ae = e.iter().map(|v| a.twist(v)).collect();
        Ctx {
            a,
            n,
            m,
            rho,
            endo,
            ae,
        }
    }

    fn r(&self, x: &[Scalar], y: &[Scalar]) -> Matrix {
        if self.m == 0 {
            return Matrix::zeros(0, 0);
        }
        act_on(self.n, self.rho, x, y)
    }

    fn rb(&self, i: usize, j: usize) -> Matrix {
        act_basis(self.n, self.m, self.rho, i, j)
    }

    fn br(&self, i: usize, j: usize, k: usize) -> Vector {
        self.a.br_basis(i, j, k)
    }

    /// Compatibility `A∘ρ(x,y) = ρ(αx,αy)∘A` under the given label.
    fn compat_rho(&self, label: &str, report: &mut Report) {
        for i in 0..self.n {
            for j in i + 1..self.n {
                let left = self.endo.mul(&self.rb(i, j));
                let right = self.r(&self.ae[i], &self.ae[j]).mul(self.endo);
                report.check(label, gw(&[i, j]), flat(&left), flat(&right));
            }
        }
    }

    /// `ρ(αx₁,αx₂)ρ(x₃,x₄) = (ρ([x₁,x₂,x₃],αx₄) − ρ([x₁,x₂,x₄],αx₃))A + ρ(αx₃,αx₄)ρ(x₁,x₂)`
    fn rho_pair_commutator(&self, label: &str, report: &mut Report) {
        let n = self.n;
        for x1 in 0..n {
            for x2 in x1 + 1..n {
                for x3 in 0..n {
                    for x4 in x3 + 1..n {
                        let left = self.r(&self.ae[x1], &self.ae[x2]).mul(&self.rb(x3, x4));
                        let right = self
                            .r(&self.br(x1, x2, x3), &self.ae[x4])
                            .sub(&self.r(&self.br(x1, x2, x4), &self.ae[x3]))
                            .mul(self.endo)
                            .add(&self.r(&self.ae[x3], &self.ae[x4]).mul(&self.rb(x1, x2)));
                        report.check(label, gw(&[x1, x2, x3, x4]), flat(&left), flat(&right));
                    }
                }
            }
        }
    }

    /// `ρ([x₁,x₂,x₃],αx₄)A = ρ(αx₂,αx₃)ρ(x₁,x₄) + ρ(αx₃,αx₁)ρ(x₂,x₄) + ρ(αx₁,αx₂)ρ(x₃,x₄)`
    fn rho_cyclic(&self, label: &str, report: &mut Report) {
        let n = self.n;
        for x1 in 0..n {
            for x2 in x1 + 1..n {
                for x3 in x2 + 1..n {
                    for x4 in 0..n {
                        let left = self.r(&self.br(x1, x2, x3), &self.ae[x4]).mul(self.endo);
                        let right = self
                            .r(&self.ae[x2], &self.ae[x3])
                            .mul(&self.rb(x1, x4))
                            .add(&self.r(&self.ae[x3], &self.ae[x1]).mul(&self.rb(x2, x4)))
                            .add(&self.r(&self.ae[x1], &self.ae[x2]).mul(&self.rb(x3, x4)));
                        report.check(label, gw(&[x1, x2, x3, x4]), flat(&left), flat(&right));
                    }
                }
            }
        }
    }
}

fn base_checks(a: &HomAlgebra) -> Report {
    let mut out = Report::new();
    for mut v in validate_hom_algebra(a).violations {
        v.identity = format!("base-{}", v.identity);
        out.violations.push(v);
    }
    out
}

fn check_dims(a: &HomAlgebra, base_dim: usize) -> Result<()> {
    if a.dim() != base_dim {
        return Err(Error::Dimension(format!(
            "representation of a {}-dim algebra used with a {}-dim algebra",
            base_dim,
            a.dim()
        )));
    }
    Ok(())
}

/// Conditions (5)–(7) of a representation, plus validity of the algebra
/// itself (reported under `base-*` labels).
pub fn validate_representation(a: &HomAlgebra, r: &Representation) -> Report {
    if let Err(e) = check_dims(a, r.base_dim) {
        let mut report = Report::new();
        report.check("dimension", vec![e.to_string()], vec![], vec![Scalar::from_integer(1.into())]);
        return report;
    }
    let mut report = base_checks(a);
    let c = Ctx::new(a, &r.rho, &r.endo, r.carrier_dim);
    c.compat_rho("Def2.2-Eq(5)", &mut report);
    c.rho_pair_commutator("Def2.2-Eq(6)", &mut report);
    c.rho_cyclic("Def2.2-Eq(7)", &mut report);
    report
}

/// Preconditions of [`twist_representation`] as a full report.
pub fn twist_representation_preconditions(
    bracket: &SkewTensor3,
    r: &Representation,
    alpha: &Matrix,
) -> Result<Report> {
    let lie = HomAlgebra::untwisted(bracket.clone())?;
    check_dims(&lie, r.base_dim)?;
    check_square(alpha, lie.dim(), "twist map")?;
    let plain = Representation::new(
        r.base_dim,
        r.carrier_dim,
        r.rho.clone(),
        Matrix::identity(r.carrier_dim),
    )?;
    let mut report = Report::new();
    for mut v in validate_representation(&lie, &plain).violations {
        v.identity = format!("untwisted-{}", v.identity);
        report.violations.push(v);
    }
    report.merge(check_alpha_morphism(bracket, alpha, "alpha-morphism"));
    let twisted = HomAlgebra::new(bracket.clone(), alpha.clone())?;
    let c = Ctx::new(&twisted, &r.rho, &r.endo, r.carrier_dim);
    c.compat_rho("intertwining", &mut report);
    Ok(report)
}

/// `(V, A∘ρ, A)` as a representation of `(g, α∘[·,·,·], α)`.
pub fn twist_representation(bracket: &SkewTensor3, r: &Representation, alpha: &Matrix) -> Result<Representation> {
    let pre = twist_representation_preconditions(bracket, r, alpha)?;
    require(pre, "twist preconditions")?;
    let rho = r.rho.iter().map(|m| r.endo.mul(m)).collect();
    Representation::new(r.base_dim, r.carrier_dim, rho, r.endo.clone())
}

fn check_carrier(a: &HomAlgebra, base_dim: usize, carrier_dim: usize) -> Result<()> {
    check_dims(a, base_dim)?;
    let _ = carrier_dim;
    Ok(())
}

/// Bracket on `g ⊕ V` built from the algebra, `ρ` and (optionally) `ν`.
fn semidirect_bracket(a: &HomAlgebra, rho: &[Matrix], nu: Option<&[SkewTensor2]>, m: usize) -> SkewTensor3 {
    let n = a.dim();
    let total = n + m;
    let mut t = SkewTensor3::zero(total, total);
    let embed_g = |v: &[Scalar]| -> Vector {
        let mut out = zeros(total);
        out[..n].clone_from_slice(v);
        out
    };
    let embed_v = |v: &[Scalar]| -> Vector {
        let mut out = zeros(total);
        out[n..].clone_from_slice(v);
        out
    };
    for (key, v) in a.bracket().cells() {
        t.set(key[0], key[1], key[2], embed_g(v)).expect("in range");
    }
    for (k, (s, u)) in pairs(n).into_iter().enumerate() {
        for w in 0..m {
            let col = rho[k].column(w);
            if !crate::linalg::is_zero_vec(&col) {
                t.set(s, u, n + w, embed_v(&col)).expect("in range");
            }
        }
    }
    if let Some(nu) = nu {
        for (i, ni) in nu.iter().enumerate() {
            for ((p, q), v) in ni.cells() {
                t.set(i, n + p, n + q, embed_v(v)).expect("in range");
            }
        }
    }
    t
}

/// `g ⊕ V` with `[x+u, y+v, z+w] = [x,y,z] + ρ(x,y)w + ρ(y,z)u + ρ(z,x)v`
/// and twist `α ⊕ A`.
pub fn semidirect(a: &HomAlgebra, r: &Representation) -> Result<HomAlgebra> {
    check_carrier(a, r.base_dim, r.carrier_dim)?;
    let t = semidirect_bracket(a, &r.rho, None, r.carrier_dim);
    HomAlgebra::new(t, a.alpha().block_diag(&r.endo))
}

/// Adds the terms `ν(x)(v,w) + ν(y)(w,u) + ν(z)(u,v)` to the semidirect bracket.
pub fn generalized_semidirect(a: &HomAlgebra, g: &GeneralizedRep) -> Result<HomAlgebra> {
    check_carrier(a, g.base_dim, g.carrier_dim)?;
    let t = semidirect_bracket(a, &g.rho, Some(&g.nu), g.carrier_dim);
    HomAlgebra::new(t, a.alpha().block_diag(&g.endo))
}

/// The defining identities of a generalized representation.
///
/// Labels: `GenRep-compat-rho` (`A∘ρ(x,y) = ρ(αx,αy)∘A`), `GenRep-compat-nu`
/// (`A∘ν(x) = ν(αx)∘(A⊗A)`), `GenRep-eq1` … `GenRep-eq6`, and `base-*` for
/// validity of the algebra. `GenRep-eq3` is checked in the form
/// `ρ(αx₁,αx₂)ν(x₃)(v₁,v₂) = ν([x₁,x₂,x₃])(Av₁,Av₂) + ν(αx₃)(ρ(x₁,x₂)v₁,Av₂)
/// + ν(αx₃)(Av₁,ρ(x₁,x₂)v₂)`.
pub fn validate_generalized_rep(a: &HomAlgebra, g: &GeneralizedRep) -> Report {
    if let Err(e) = check_dims(a, g.base_dim) {
        let mut report = Report::new();
        report.check("dimension", vec![e.to_string()], vec![], vec![Scalar::from_integer(1.into())]);
        return report;
    }
    let mut report = base_checks(a);
    let c = Ctx::new(a, &g.rho, &g.endo, g.carrier_dim);
    let (n, m) = (c.n, c.m);
    c.compat_rho("GenRep-compat-rho", &mut report);
    c.rho_pair_commutator("GenRep-eq1", &mut report);
    c.rho_cyclic("GenRep-eq2", &mut report);

    let v: Vec<Vector> = (0..m).map(|i| unit(m, i)).collect();
    let av: Vec<Vector> = v.iter().map(|x| g.endo.apply(x)).collect();
    let nu = |x: &[Scalar], p: &[Scalar], q: &[Scalar]| g.nu_apply(x, p, q);
    let nub = |i: usize, p: &[Scalar], q: &[Scalar]| g.nu[i].eval(p, q);

    for x in 0..n {
        for p in 0..m {
            for q in p + 1..m {
                let left = g.endo.apply(&g.nu[x].get(p, q));
                let right = nu(&c.ae[x], &av[p], &av[q]);
                report.check("GenRep-compat-nu", mixed(&[x], &[p, q]), left, right);
            }
        }
    }

    for x1 in 0..n {
        for x2 in x1 + 1..n {
            let r12 = c.rb(x1, x2);
            let ra12 = c.r(&c.ae[x1], &c.ae[x2]);
            for x3 in 0..n {
                let b123 = c.br(x1, x2, x3);
                for p in 0..m {
                    for q in p + 1..m {
                        let left = ra12.apply(&g.nu[x3].get(p, q));
                        let mut right = nu(&b123, &av[p], &av[q]);
                        right = add(&right, &nu(&c.ae[x3], &r12.apply(&v[p]), &av[q]));
                        right = add(&right, &nu(&c.ae[x3], &av[p], &r12.apply(&v[q])));
                        report.check("GenRep-eq3", mixed(&[x1, x2, x3], &[p, q]), left, right);
                    }
                }
            }
        }
    }

    for x1 in 0..n {
        for x2 in 0..n {
            for x3 in x2 + 1..n {
                let r23 = c.rb(x2, x3);
                let r21 = c.rb(x2, x1);
                let r31 = c.rb(x3, x1);
                let ra23 = c.r(&c.ae[x2], &c.ae[x3]);
                for p in 0..m {
                    for q in 0..m {
                        let left = nu(&c.ae[x1], &av[p], &r23.apply(&v[q]));
                        let mut right = nu(&c.ae[x3], &av[q], &r21.apply(&v[p]));
                        right = add(&right, &nu(&c.ae[x2], &r31.apply(&v[p]), &av[q]));
                        right = add(&right, &ra23.apply(&nub(x1, &v[p], &v[q])));
                        report.check("GenRep-eq4", mixed(&[x1, x2, x3], &[p, q]), left, right);
                    }
                }
            }
        }
    }

    for x1 in 0..n {
        for x2 in 0..n {
            for p in 0..m {
                for q in 0..m {
                    for w in q + 1..m {
                        let left = nu(&c.ae[x1], &av[p], &nub(x2, &v[q], &v[w]));
                        let right = add(
                            &nu(&c.ae[x2], &nub(x1, &v[p], &v[q]), &av[w]),
                            &nu(&c.ae[x2], &av[q], &nub(x1, &v[p], &v[w])),
                        );
                        report.check("GenRep-eq5", mixed(&[x1, x2], &[p, q, w]), left, right);
                    }
                }
            }
        }
    }

    for x1 in 0..n {
        for x2 in x1 + 1..n {
            for p in 0..m {
                for q in p + 1..m {
                    for w in 0..m {
                        let left = nu(&c.ae[x1], &nub(x2, &v[p], &v[q]), &av[w]);
                        let right = nu(&c.ae[x2], &nub(x1, &v[p], &v[q]), &av[w]);
                        report.check("GenRep-eq6", mixed(&[x1, x2], &[p, q, w]), left, right);
                    }
                }
            }
        }
    }
    report
}

/// Preconditions of [`twist_generalized_rep`] as a full report.
pub fn twist_generalized_rep_preconditions(
    a: &HomAlgebra,
    g: &GeneralizedRep,
    beta: &Matrix,
    b: &Matrix,
) -> Result<Report> {
    check_dims(a, g.base_dim)?;
    check_square(beta, a.dim(), "algebra morphism")?;
    check_square(b, g.carrier_dim, "carrier map")?;
    let mut report = Report::new();
    for mut v in validate_generalized_rep(a, g).violations {
        v.identity = format!("input-{}", v.identity);
        report.violations.push(v);
    }
    report.merge(check_alpha_morphism(a.bracket(), beta, "beta-morphism"));
    let (n, m) = (a.dim(), g.carrier_dim);
    let e: Vec<Vector> = (0..n).map(|i| unit(n, i)).collect();
    let be: Vec<Vector> = e.iter().map(|x| beta.apply(x)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let left = b.mul(&g.act(i, j));
            let right = g.act_at(&be[i], &be[j]).mul(b);
            report.check("intertwining-rho", gw(&[i, j]), flat(&left), flat(&right));
        }
    }
    let v: Vec<Vector> = (0..m).map(|i| unit(m, i)).collect();
    let bv: Vec<Vector> = v.iter().map(|x| b.apply(x)).collect();
    for x in 0..n {
        for p in 0..m {
            for q in p + 1..m {
                let left = b.apply(&g.nu[x].get(p, q));
                let right = g.nu_apply(&be[x], &bv[p], &bv[q]);
                report.check("intertwining-nu", mixed(&[x], &[p, q]), left, right);
            }
        }
    }
    report.check("intertwining-A", vec![], flat(&b.mul(&g.endo)), flat(&g.endo.mul(b)));
    report.check(
        "beta-alpha-commute",
        vec![],
        flat(&beta.mul(a.alpha())),
        flat(&a.alpha().mul(beta)),
    );
    Ok(report)
}

/// Twist of a generalized representation along `(β, B)`: returns the algebra
/// `([·,·,·]∘β^{⊗3}, β∘α)` and `(B∘ρ, B∘ν, B∘A)`.
pub fn twist_generalized_rep(
    a: &HomAlgebra,
    g: &GeneralizedRep,
    beta: &Matrix,
    b: &Matrix,
) -> Result<(HomAlgebra, GeneralizedRep)> {
    require(twist_generalized_rep_preconditions(a, g, beta, b)?, "twist preconditions")?;
    let algebra = HomAlgebra::new(a.bracket().pull_back(beta), beta.mul(a.alpha()))?;
    let rho = g.rho.iter().map(|r| b.mul(r)).collect();
    let nu = g.nu.iter().map(|t| t.map_values(b)).collect();
    let rep = GeneralizedRep::new(g.base_dim, g.carrier_dim, rho, nu, b.mul(&g.endo))?;
    Ok((algebra, rep))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub t: Matrix,
}

/// `Tρ₁(x,y) = ρ₂(x,y)T`, `Tν₁(x) = ν₂(x)(T⊗T)`, `TA₁ = A₂T`.
pub fn equivalent_genreps(g1: &GeneralizedRep, g2: &GeneralizedRep, w: &EquivalenceWitness) -> Result<Report> {
    if g1.base_dim != g2.base_dim {
        return Err(Error::Dimension("representations of different algebras".into()));
    }
    if w.t.rows() != g2.carrier_dim || w.t.cols() != g1.carrier_dim {
        return Err(Error::Dimension(format!(
            "witness is {}x{}, expected {}x{}",
            w.t.rows(),
            w.t.cols(),
            g2.carrier_dim,
            g1.carrier_dim
        )));
    }
    if w.t.inverse().is_none() {
        return Err(Error::Singular("equivalence witness is not invertible".into()));
    }
    let t = &w.t;
    let (n, m) = (g1.base_dim, g1.carrier_dim);
    let mut report = Report::new();
    for i in 0..n {
        for j in i + 1..n {
            report.check(
                "equivalence-rho",
                gw(&[i, j]),
                flat(&t.mul(&g1.act(i, j))),
                flat(&g2.act(i, j).mul(t)),
            );
        }
    }
    let tv: Vec<Vector> = (0..m).map(|i| t.column(i)).collect();
    for x in 0..n {
        for p in 0..m {
            for q in p + 1..m {
                let left = t.apply(&g1.nu[x].get(p, q));
                let right = g2.nu[x].eval(&tv[p], &tv[q]);
                report.check("equivalence-nu", mixed(&[x], &[p, q]), left, right);
            }
        }
    }
    report.check("equivalence-A", vec![], flat(&t.mul(&g1.endo)), flat(&g2.endo.mul(t)));
    Ok(report)
}

/// `(T ρ T⁻¹, T ν (T⁻¹ ⊗ T⁻¹), T A T⁻¹)`
pub fn conjugate_genrep(g: &GeneralizedRep, t: &Matrix) -> Result<GeneralizedRep> {
    let inv = t
        .inverse()
        .ok_or_else(|| Error::Singular("conjugating matrix is not invertible".into()))?;
    let rho = g.rho.iter().map(|r| t.mul(r).mul(&inv)).collect();
    let nu = g.nu.iter().map(|x| x.pull_back(&inv).map_values(t)).collect();
    GeneralizedRep::new(g.base_dim, g.carrier_dim, rho, nu, t.mul(&g.endo).mul(&inv))
}
