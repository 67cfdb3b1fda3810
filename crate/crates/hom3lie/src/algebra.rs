//! 3-Hom-Lie algebras: validation, twisting, the fundamental-object bracket.

use num::Zero;

use crate::error::{Error, Result};
use crate::linalg::{
    axpy, fmt_vector, is_zero_vec, pair_count, pairs, unit, wedge, zeros, Matrix, Scalar,
    SkewTensor3, Vector,
};
use crate::rep::Representation;
use crate::report::{label_g, Report};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomAlgebra {
    bracket: SkewTensor3,
    alpha: Matrix,
}

impl HomAlgebra {
    pub fn new(bracket: SkewTensor3, alpha: Matrix) -> Result<Self> {
        let n = bracket.dim();
        if bracket.target_dim() != n {
            return Err(Error::Dimension(format!(
                "bracket on a {}-dim space takes values of length {}",
                n,
                bracket.target_dim()
            )));
        }
        if alpha.rows() != n || alpha.cols() != n {
            return Err(Error::Dimension(format!(
                "twist map is {}x{}, algebra has dimension {}",
                alpha.rows(),
                alpha.cols(),
                n
            )));
        }
        Ok(HomAlgebra { bracket, alpha })
    }

    /// A 3-Lie algebra viewed as a Hom algebra with identity twist.
    pub fn untwisted(bracket: SkewTensor3) -> Result<Self> {
        let n = bracket.dim();
        Self::new(bracket, Matrix::identity(n))
    }

    pub fn abelian(n: usize, alpha: Matrix) -> Result<Self> {
        Self::new(SkewTensor3::zero(n, n), alpha)
    }

    pub fn dim(&self) -> usize {
        self.bracket.dim()
    }

    pub fn bracket(&self) -> &SkewTensor3 {
        &self.bracket
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    pub fn br(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        self.bracket.eval(x, y, z)
    }

    pub fn br_basis(&self, i: usize, j: usize, k: usize) -> Vector {
        self.bracket.get(i, j, k)
    }

    pub fn twist(&self, x: &[Scalar]) -> Vector {
        self.alpha.apply(x)
    }
}

fn basis(n: usize) -> Vec<Vector> {
    (0..n).map(|i| unit(n, i)).collect()
}

/// `[u, v, [x, y, z]] - ([[u,v,x],y,z] + [x,[u,v,y],z] + [x,y,[u,v,z]])`,
/// with the outer arguments decorated by `tw` (identity or the twist map).
fn jacobi_sides(
    t: &SkewTensor3,
    tw: &Matrix,
    e: &[Vector],
    (u, v, x, y, z): (usize, usize, usize, usize, usize),
) -> (Vector, Vector) {
    let au = tw.apply(&e[u]);
    let av = tw.apply(&e[v]);
    let ax = tw.apply(&e[x]);
    let ay = tw.apply(&e[y]);
    let az = tw.apply(&e[z]);
    let left = t.eval(&au, &av, &t.get(x, y, z));
    let mut right = t.eval(&t.get(u, v, x), &ay, &az);
    let r2 = t.eval(&ax, &t.get(u, v, y), &az);
    let r3 = t.eval(&ax, &ay, &t.get(u, v, z));
    for i in 0..right.len() {
        right[i] += &r2[i] + &r3[i];
    }
    (left, right)
}

fn five_tuples(n: usize) -> impl Iterator<Item = (usize, usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            for x in 0..n {
                for y in x + 1..n {
                    for z in y + 1..n {
                        out.push((u, v, x, y, z));
                    }
                }
            }
        }
    }
    out.into_iter()
}

fn witness(idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| label_g(i)).collect()
}

/// Filippov-Jacobi identity on all canonical basis 5-tuples.
pub fn validate_filippov(bracket: &SkewTensor3) -> Report {
    let n = bracket.dim();
    let e = basis(n);
    let id = Matrix::identity(n);
    let mut report = Report::new();
    for tup in five_tuples(n) {
        let (l, r) = jacobi_sides(bracket, &id, &e, tup);
        let (u, v, x, y, z) = tup;
        report.check("Filippov-Jacobi", witness(&[u, v, x, y, z]), l, r);
    }
    report
}

/// `α[x,y,z] = [αx,αy,αz]` on all basis triples `i < j < k`.
pub fn check_alpha_morphism(bracket: &SkewTensor3, alpha: &Matrix, label: &str) -> Report {
    let n = bracket.dim();
    let e = basis(n);
    let cols: Vec<Vector> = e.iter().map(|v| alpha.apply(v)).collect();
    let mut report = Report::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let left = alpha.apply(&bracket.get(i, j, k));
                let right = bracket.eval(&cols[i], &cols[j], &cols[k]);
                report.check(label, witness(&[i, j, k]), left, right);
            }
        }
    }
    report
}

/// Multiplicativity of the twist and the Hom-Filippov-Jacobi identity.
pub fn validate_hom_algebra(a: &HomAlgebra) -> Report {
    let mut report = check_alpha_morphism(&a.bracket, &a.alpha, "alpha-morphism");
    let e = basis(a.dim());
    for tup in five_tuples(a.dim()) {
        let (l, r) = jacobi_sides(&a.bracket, &a.alpha, &e, tup);
        let (u, v, x, y, z) = tup;
        report.check("Hom-Filippov-Jacobi", witness(&[u, v, x, y, z]), l, r);
    }
    report
}

fn precondition_from(report: &Report, condition: &str) -> Result<()> {
    match report.first() {
        None => Ok(()),
        Some(v) => Err(Error::Precondition {
            condition: condition.to_string(),
            witness: format!("({})", v.witness.join(", ")),
            detail: format!(
                "{}: left {} vs right {}",
                v.identity,
                fmt_vector(&v.left),
                fmt_vector(&v.right)
            ),
        }),
    }
}

pub(crate) fn require(report: Report, condition: &str) -> Result<()> {
    precondition_from(&report, condition)
}

/// The twisted algebra `(g, α∘[·,·,·], α)` of a 3-Lie algebra along a morphism.
pub fn twist_algebra(bracket: &SkewTensor3, alpha: &Matrix) -> Result<HomAlgebra> {
    let n = bracket.dim();
    if alpha.rows() != n || alpha.cols() != n {
        return Err(Error::Dimension(format!(
            "twist map is {}x{}, algebra has dimension {}",
            alpha.rows(),
            alpha.cols(),
            n
        )));
    }
    require(validate_filippov(bracket), "Filippov-Jacobi")?;
    require(check_alpha_morphism(bracket, alpha, "alpha-morphism"), "alpha-morphism")?;
    HomAlgebra::new(bracket.map_values(alpha), alpha.clone())
}

// ---------------------------------------------------------------------------

/// An element of `∧²g` in the canonical pair basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalObject {
    dim: usize,
    components: Vector,
}

impl FundamentalObject {
    pub fn zero(dim: usize) -> Self {
        FundamentalObject {
            dim,
            components: zeros(pair_count(dim)),
        }
    }

    pub fn from_components(dim: usize, components: Vector) -> Result<Self> {
        if components.len() != pair_count(dim) {
            return Err(Error::Dimension(format!(
                "{} components for a {}-dim space",
                components.len(),
                dim
            )));
        }
        Ok(FundamentalObject { dim, components })
    }

    /// `x ∧ y`
    pub fn wedge(x: &[Scalar], y: &[Scalar]) -> Self {
        FundamentalObject {
            dim: x.len(),
            components: wedge(x, y),
        }
    }

    /// `e_i ∧ e_j`
    pub fn basis(dim: usize, i: usize, j: usize) -> Result<Self> {
        if i >= dim || j >= dim {
            return Err(Error::IndexOutOfRange { index: i.max(j), dim });
        }
        Ok(Self::wedge(&unit(dim, i), &unit(dim, j)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[Scalar] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.components)
    }

    /// `ᾱ(x ∧ y) = αx ∧ αy`
    pub fn twisted(&self, alpha: &Matrix) -> Self {
        FundamentalObject {
            dim: self.dim,
            components: alpha.wedge_square().apply(&self.components),
        }
    }
}

/// `[X, Y]_L = [x₁,x₂,y₁] ∧ αy₂ + αy₁ ∧ [x₁,x₂,y₂]`, extended bilinearly.
pub fn fundamental_bracket(
    a: &HomAlgebra,
    x: &FundamentalObject,
    y: &FundamentalObject,
) -> Result<FundamentalObject> {
    let n = a.dim();
    if x.dim != n || y.dim != n {
        return Err(Error::Dimension(format!(
            "fundamental objects of dimension {} and {} for an algebra of dimension {}",
            x.dim, y.dim, n
        )));
    }
    let ps = pairs(n);
    let mut out = zeros(pair_count(n));
    for (p, (s, t)) in ps.iter().enumerate() {
        if x.components[p].is_zero() {
            continue;
        }
        for (q, (u, v)) in ps.iter().enumerate() {
            let c = &x.components[p] * &y.components[q];
            if c.is_zero() {
                continue;
            }
            let mut term = wedge(&a.br_basis(*s, *t, *u), &a.alpha.column(*v));
            let t2 = wedge(&a.alpha.column(*u), &a.br_basis(*s, *t, *v));
            for i in 0..term.len() {
                term[i] += &t2[i];
            }
            axpy(&mut out, &c, &term);
        }
    }
    Ok(FundamentalObject {
        dim: n,
        components: out,
    })
}

/// Hom-Leibniz structure on `∧²g` over all basis fundamental objects.
pub fn validate_hom_leibniz(a: &HomAlgebra) -> Report {
    let n = a.dim();
    let ps = pairs(n);
    let basis: Vec<FundamentalObject> = ps
        .iter()
        .map(|&(s, t)| FundamentalObject::basis(n, s, t).expect("in range"))
        .collect();
    let tw: Vec<FundamentalObject> = basis.iter().map(|x| x.twisted(&a.alpha)).collect();
    let br = |x: &FundamentalObject, y: &FundamentalObject| fundamental_bracket(a, x, y).expect("same dim");
    let label = |p: &[usize]| -> Vec<String> {
        p.iter()
            .map(|&k| format!("{}^{}", label_g(ps[k].0), label_g(ps[k].1)))
            .collect()
    };
    let mut report = Report::new();
    for i in 0..ps.len() {
        for j in 0..ps.len() {
            let xy = br(&basis[i], &basis[j]);
            report.check(
                "alpha-bar-morphism",
                label(&[i, j]),
                xy.twisted(&a.alpha).components,
                br(&tw[i], &tw[j]).components,
            );
            for k in 0..ps.len() {
                let left = br(&tw[i], &br(&basis[j], &basis[k]));
                let r1 = br(&xy, &tw[k]);
                let r2 = br(&tw[j], &br(&basis[i], &basis[k]));
                let right: Vector = r1.components.iter().zip(&r2.components).map(|(p, q)| p + q).collect();
                report.check("Hom-Leibniz", label(&[i, j, k]), left.components, right);
            }
        }
    }
    report
}

/// `ρ(x₁,x₂)(y) = [x₁,x₂,y]` on the carrier `g` with endomorphism `α`.
pub fn adjoint_rep(a: &HomAlgebra) -> Result<Representation> {
    require(validate_hom_algebra(a), "valid 3-Hom-Lie algebra")?;
    Ok(adjoint_rep_unchecked(a))
}

pub(crate) fn adjoint_rep_unchecked(a: &HomAlgebra) -> Representation {
    let n = a.dim();
    let rho = pairs(n)
        .into_iter()
        .map(|(s, t)| {
            let cols: Vec<Vector> = (0..n).map(|u| a.br_basis(s, t, u)).collect();
            Matrix::from_columns(n, &cols).expect("square")
        })
        .collect();
    Representation::new(n, n, rho, a.alpha.clone()).expect("consistent dimensions")
}
