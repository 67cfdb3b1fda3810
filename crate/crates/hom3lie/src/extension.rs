//! Abelian extensions `0 → V → ĝ → g → 0` in coordinates `ĝ = g ⊕ V`.

use num::One;

use crate::algebra::{validate_hom_algebra, HomAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{add, is_zero_vec, rank, sub, unit, zeros, Matrix, Scalar, SkewTensor2, SkewTensor3, Vector};
use crate::rep::{generalized_semidirect, validate_generalized_rep, GeneralizedRep};
use crate::report::{label_g, label_h, label_v, Report};

/// `(g, ρ, ν, A, ω)` with `ω: ∧³g → V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionData {
    pub base: HomAlgebra,
    pub genrep: GeneralizedRep,
    pub omega: SkewTensor3,
}

impl ExtensionData {
    pub fn new(base: HomAlgebra, genrep: GeneralizedRep, omega: SkewTensor3) -> Result<Self> {
        if genrep.base_dim() != base.dim() {
            return Err(Error::Dimension(format!(
                "representation of a {}-dim algebra used with a {}-dim algebra",
                genrep.base_dim(),
                base.dim()
            )));
        }
        if omega.dim() != base.dim() || omega.target_dim() != genrep.carrier_dim() {
            return Err(Error::Dimension(format!(
                "cocycle maps ∧³ of a {}-dim space to a {}-dim space, expected {} and {}",
                omega.dim(),
                omega.target_dim(),
                base.dim(),
                genrep.carrier_dim()
            )));
        }
        Ok(ExtensionData { base, genrep, omega })
    }

    /// The split case `ω = 0`.
    pub fn split(base: HomAlgebra, genrep: GeneralizedRep) -> Result<Self> {
        let omega = SkewTensor3::zero(base.dim(), genrep.carrier_dim());
        ExtensionData::new(base, genrep, omega)
    }

    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    pub fn fiber_dim(&self) -> usize {
        self.genrep.carrier_dim()
    }
}

/// The identities making the extension bracket a multiplicative Hom algebra.
///
/// Labels: `base-*`, `GenRep-compat-rho`, `GenRep-compat-nu`,
/// `GenRep-eq3` … `GenRep-eq6`, `compat-omega` (`A∘ω = ω∘α^{⊗3}`) and
/// `ext-t1`, `ext-t2`, `ext-t3` (the identities on `g⁵`, `g ∧ V ∧ g³` and
/// `g² ∧ V ∧ g²`, which replace the two `ρ`-only identities when `ω ≠ 0`).
pub fn validate_extension_triple(e: &ExtensionData) -> Report {
    let mut report = Report::new();
    for v in validate_generalized_rep(&e.base, &e.genrep).violations {
        if v.identity != "GenRep-eq1" && v.identity != "GenRep-eq2" {
            report.violations.push(v);
        }
    }
    let (a, g, w) = (&e.base, &e.genrep, &e.omega);
    let (n, m) = (a.dim(), g.carrier_dim());
    let endo = g.endo();
    let ae: Vec<Vector> = (0..n).map(|i| a.alpha().column(i)).collect();
    let av: Vec<Vector> = (0..m).map(|i| endo.column(i)).collect();
    let om = |x: &[Scalar], y: &[Scalar], z: &[Scalar]| w.eval(x, y, z);
    let ob = |i: usize, j: usize, k: usize| w.get(i, j, k);
    let rho = |x: &[Scalar], y: &[Scalar]| g.act_at(x, y);
    let rb = |i: usize, j: usize| g.act(i, j);
    let br = |i: usize, j: usize, k: usize| a.br_basis(i, j, k);

    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let left = endo.apply(&ob(x, y, z));
                let right = om(&ae[x], &ae[y], &ae[z]);
                report.check("compat-omega", vec![label_g(x), label_g(y), label_g(z)], left, right);
            }
        }
    }

    // [αx1,αx2,[x3,x4,x5]] = Σ [.., [x1,x2,x_k], ..] on g⁵, V-part
    for x1 in 0..n {
        for x2 in x1 + 1..n {
            let ra12 = rho(&ae[x1], &ae[x2]);
            for x3 in 0..n {
                for x4 in x3 + 1..n {
                    for x5 in x4 + 1..n {
                        let left = add(
                            &ra12.apply(&ob(x3, x4, x5)),
                            &om(&ae[x1], &ae[x2], &br(x3, x4, x5)),
                        );
                        let mut right = rho(&ae[x4], &ae[x5]).apply(&ob(x1, x2, x3));
                        right = add(&right, &om(&br(x1, x2, x3), &ae[x4], &ae[x5]));
                        right = add(&right, &rho(&ae[x5], &ae[x3]).apply(&ob(x1, x2, x4)));
                        right = add(&right, &om(&ae[x3], &br(x1, x2, x4), &ae[x5]));
                        right = add(&right, &rho(&ae[x3], &ae[x4]).apply(&ob(x1, x2, x5)));
                        right = add(&right, &om(&ae[x3], &ae[x4], &br(x1, x2, x5)));
                        let wit = [x1, x2, x3, x4, x5].iter().map(|&i| label_g(i)).collect();
                        report.check("ext-t1", wit, left, right);
                    }
                }
            }
        }
    }

    // ν(αx1)(Av, ω(x2,x3,x4)) + ρ([x2,x3,x4],αx1)Av
    //   = −ρ(αx3,αx4)ρ(x1,x2)v + ρ(αx2,αx4)ρ(x1,x3)v − ρ(αx2,αx3)ρ(x1,x4)v
    for x1 in 0..n {
        for x2 in 0..n {
            for x3 in x2 + 1..n {
                for x4 in x3 + 1..n {
                    let b = br(x2, x3, x4);
                    let o = ob(x2, x3, x4);
                    let rb234 = rho(&b, &ae[x1]);
                    for v in 0..m {
                        let left = add(&g.nu_apply(&ae[x1], &av[v], &o), &rb234.apply(&av[v]));
                        let vv = unit(m, v);
                        let mut right = rho(&ae[x2], &ae[x4]).apply(&rb(x1, x3).apply(&vv));
                        right = sub(&right, &rho(&ae[x3], &ae[x4]).apply(&rb(x1, x2).apply(&vv)));
                        right = sub(&right, &rho(&ae[x2], &ae[x3]).apply(&rb(x1, x4).apply(&vv)));
                        let wit = vec![label_g(x1), label_v(v), label_g(x2), label_g(x3), label_g(x4)];
                        report.check("ext-t2", wit, left, right);
                    }
                }
            }
        }
    }

    // ρ(αx1,αx2)ρ(x3,x4)v = ρ(αx3,αx4)ρ(x1,x2)v + ρ([x1,x2,x3],αx4)Av
    //   + ν(αx4)(Av, ω(x1,x2,x3)) + ρ(αx3,[x1,x2,x4])Av − ν(αx3)(Av, ω(x1,x2,x4))
    for x1 in 0..n {
        for x2 in x1 + 1..n {
            let ra12 = rho(&ae[x1], &ae[x2]);
            let r12 = rb(x1, x2);
            for x3 in 0..n {
                for x4 in x3 + 1..n {
                    let ra34 = rho(&ae[x3], &ae[x4]);
                    let r34 = rb(x3, x4);
                    let b3 = rho(&br(x1, x2, x3), &ae[x4]);
                    let b4 = rho(&ae[x3], &br(x1, x2, x4));
                    let (o3, o4) = (ob(x1, x2, x3), ob(x1, x2, x4));
                    for v in 0..m {
                        let vv = unit(m, v);
                        let left = ra12.apply(&r34.apply(&vv));
                        let mut right = ra34.apply(&r12.apply(&vv));
                        right = add(&right, &b3.apply(&av[v]));
                        right = add(&right, &g.nu_apply(&ae[x4], &av[v], &o3));
                        right = add(&right, &b4.apply(&av[v]));
                        right = sub(&right, &g.nu_apply(&ae[x3], &av[v], &o4));
                        let wit = vec![label_g(x1), label_g(x2), label_v(v), label_g(x3), label_g(x4)];
                        report.check("ext-t3", wit, left, right);
                    }
                }
            }
        }
    }
    report
}

/// `[x₁+v₁, x₂+v₂, x₃+v₃] = [x₁,x₂,x₃] + ρ(x₁,x₂)v₃ + ρ(x₃,x₁)v₂ + ρ(x₂,x₃)v₁
/// + ν(x₁)(v₂,v₃) + ν(x₂)(v₃,v₁) + ν(x₃)(v₁,v₂) + ω(x₁,x₂,x₃)` with twist `α ⊕ A`.
pub fn build_extension_bracket(e: &ExtensionData) -> Result<HomAlgebra> {
    let semi = generalized_semidirect(&e.base, &e.genrep)?;
    let n = e.base_dim();
    let total = n + e.fiber_dim();
    let mut t = semi.bracket().clone();
    for (key, v) in e.omega.cells() {
        let mut cell = t.get(key[0], key[1], key[2]);
        for (i, x) in v.iter().enumerate() {
            cell[n + i] += x;
        }
        t.set(key[0], key[1], key[2], cell)?;
    }
    debug_assert_eq!(t.dim(), total);
    HomAlgebra::new(t, semi.alpha().clone())
}

/// Linear data of a short exact sequence `V → ĝ → g` with a chosen section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionWitness {
    /// `g → ĝ`
    pub sigma: Matrix,
    /// `ĝ → g`
    pub projection: Matrix,
    /// `V → ĝ`
    pub inclusion: Matrix,
}

impl SectionWitness {
    /// The coordinate section `x ↦ (x, 0)` of `g ⊕ V`.
    pub fn standard(base_dim: usize, fiber_dim: usize) -> Self {
        let total = base_dim + fiber_dim;
        let mut sigma = Matrix::zeros(total, base_dim);
        let mut projection = Matrix::zeros(base_dim, total);
        for i in 0..base_dim {
            sigma.set(i, i, Scalar::one());
            projection.set(i, i, Scalar::one());
        }
        let mut inclusion = Matrix::zeros(total, fiber_dim);
        for i in 0..fiber_dim {
            inclusion.set(base_dim + i, i, Scalar::one());
        }
        SectionWitness {
            sigma,
            projection,
            inclusion,
        }
    }
}

fn diagram_error(condition: &str, witness: String, left: &[Scalar], right: &[Scalar]) -> Error {
    Error::Precondition {
        condition: condition.into(),
        witness,
        detail: format!(
            "left {} vs right {}",
            crate::linalg::fmt_vector(left),
            crate::linalg::fmt_vector(right)
        ),
    }
}

fn expect_equal(condition: &str, witness: String, left: Vector, right: Vector) -> Result<()> {
    if left != right {
        return Err(diagram_error(condition, witness, &left, &right));
    }
    Ok(())
}

/// Reads `(g, ρ, ν, A, ω)` off an extension through a section:
/// `ρ(x,y)u = [σx,σy,u]`, `ν(x)(u,v) = [σx,u,v]`,
/// `ω(x,y,z) = [σx,σy,σz] − σ[x,y,z]`, with `g` carrying
/// `[x,y,z] = p[σx,σy,σz]` and `α = p∘α̂∘σ`.
pub fn split_extension_data(ext: &HomAlgebra, w: &SectionWitness) -> Result<ExtensionData> {
    let total = ext.dim();
    let n = w.sigma.cols();
    let m = w.inclusion.cols();
    if w.sigma.rows() != total
        || w.inclusion.rows() != total
        || w.projection.rows() != n
        || w.projection.cols() != total
        || n + m != total
    {
        return Err(Error::Dimension(format!(
            "section data ({}x{}, {}x{}, {}x{}) does not fit a {}-dim extension",
            w.sigma.rows(),
            w.sigma.cols(),
            w.projection.rows(),
            w.projection.cols(),
            w.inclusion.rows(),
            w.inclusion.cols(),
            total
        )));
    }
    let p_sigma = w.projection.mul(&w.sigma);
    for j in 0..n {
        expect_equal("p∘σ = id", label_g(j), p_sigma.column(j), unit(n, j))?;
    }
    let p_i = w.projection.mul(&w.inclusion);
    for j in 0..m {
        expect_equal("p∘i = 0", label_v(j), p_i.column(j), zeros(n))?;
    }
    let mut cols: Vec<Vector> = (0..n).map(|j| w.sigma.column(j)).collect();
    cols.extend((0..m).map(|j| w.inclusion.column(j)));
    let s = Matrix::from_columns(total, &cols)?;
    if rank(&s) != total {
        return Err(Error::Precondition {
            condition: "i injective with image ker p".into(),
            witness: format!("rank {} of [σ | i]", rank(&s)),
            detail: format!("expected rank {total}"),
        });
    }
    let s_inv = s.inverse().expect("full rank");
    let twist = s_inv.mul(ext.alpha()).mul(&s);
    // σ∘α = α̂∘σ and α̂(iV) ⊂ iV: the transported twist is block diagonal
    for j in 0..n {
        let col = twist.column(j);
        expect_equal("σ∘α = α̂∘σ", label_g(j), col[n..].to_vec(), zeros(m))?;
    }
    for j in 0..m {
        let col = twist.column(n + j);
        expect_equal("α̂(V) ⊂ V", label_v(j), col[..n].to_vec(), zeros(n))?;
    }
    let t = ext.bracket().pull_back(&s).map_values(&s_inv);
    let lab = |i: usize| label_h(i, n);
    for u in n..total {
        for v in u + 1..total {
            for x in 0..total {
                let val = t.get(u, v, x);
                if x >= n {
                    expect_equal("abelian fiber", format!("({}, {}, {})", lab(u), lab(v), lab(x)), val, zeros(total))?;
                } else {
                    expect_equal(
                        "fiber is an ideal",
                        format!("({}, {}, {})", lab(u), lab(v), lab(x)),
                        val[..n].to_vec(),
                        zeros(n),
                    )?;
                }
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                let val = t.get(x, y, u);
                expect_equal(
                    "fiber is an ideal",
                    format!("({}, {}, {})", lab(x), lab(y), lab(u)),
                    val[..n].to_vec(),
                    zeros(n),
                )?;
            }
        }
    }

    let mut base_bracket = SkewTensor3::zero(n, n);
    let mut omega = SkewTensor3::zero(n, m);
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let val = t.get(x, y, z);
                if !is_zero_vec(&val[..n]) {
                    base_bracket.set(x, y, z, val[..n].to_vec())?;
                }
                if !is_zero_vec(&val[n..]) {
                    omega.set(x, y, z, val[n..].to_vec())?;
                }
            }
        }
    }
    let mut alpha = Matrix::zeros(n, n);
    let mut endo = Matrix::zeros(m, m);
    for i in 0..n {
        for j in 0..n {
            alpha.set(i, j, twist.get(i, j).clone());
        }
    }
    for i in 0..m {
        for j in 0..m {
            endo.set(i, j, twist.get(n + i, n + j).clone());
        }
    }
    let mut rho = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let cols: Vec<Vector> = (0..m).map(|u| t.get(x, y, n + u)[n..].to_vec()).collect();
            rho.push(Matrix::from_columns(m, &cols)?);
        }
    }
    let mut nu = vec![SkewTensor2::zero(m, m); n];
    for (x, nx) in nu.iter_mut().enumerate() {
        for u in 0..m {
            for v in u + 1..m {
                let val = t.get(x, n + u, n + v)[n..].to_vec();
                if !is_zero_vec(&val) {
                    nx.set(u, v, val)?;
                }
            }
        }
    }
    let base = HomAlgebra::new(base_bracket, alpha)?;
    let genrep = GeneralizedRep::new(n, m, rho, nu, endo)?;
    ExtensionData::new(base, genrep, omega)
}

/// A candidate equivalence `ĝ₁ → ĝ₂` of extensions of `g` by `V`, both in
/// coordinates `g ⊕ V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionMorphism {
    pub phi: Matrix,
}

/// Checks that `φ` is a morphism (`morphism-bracket`, `morphism-twist`) and
/// that both squares commute (`inclusion-square`: `φ∘i = i`,
/// `projection-square`: `p∘φ = p`) for the coordinate inclusion and
/// projection of `g ⊕ V` with `dim g = base_dim`.
pub fn check_extension_equivalence(
    e1: &HomAlgebra,
    e2: &HomAlgebra,
    base_dim: usize,
    m: &ExtensionMorphism,
) -> Result<Report> {
    let total = e1.dim();
    if e2.dim() != total || m.phi.rows() != total || m.phi.cols() != total || base_dim > total {
        return Err(Error::Dimension(format!(
            "morphism {}x{} between extensions of dimension {} and {} over a {}-dim base",
            m.phi.rows(),
            m.phi.cols(),
            total,
            e2.dim(),
            base_dim
        )));
    }
    let phi = &m.phi;
    let lab = |i: usize| label_h(i, base_dim);
    let mut report = Report::new();
    let cols: Vec<Vector> = (0..total).map(|i| phi.column(i)).collect();
    for x in 0..total {
        for y in x + 1..total {
            for z in y + 1..total {
                let left = phi.apply(&e1.br_basis(x, y, z));
                let right = e2.br(&cols[x], &cols[y], &cols[z]);
                report.check("morphism-bracket", vec![lab(x), lab(y), lab(z)], left, right);
            }
        }
    }
    let l = phi.mul(e1.alpha());
    let r = e2.alpha().mul(phi);
    for j in 0..total {
        report.check("morphism-twist", vec![lab(j)], l.column(j), r.column(j));
    }
    for j in base_dim..total {
        report.check("inclusion-square", vec![lab(j)], phi.column(j), unit(total, j));
    }
    for j in 0..total {
        let left = phi.column(j)[..base_dim].to_vec();
        let right = if j < base_dim { unit(base_dim, j) } else { zeros(base_dim) };
        report.check("projection-square", vec![lab(j)], left, right);
    }
    Ok(report)
}

/// Convenience: `validate_hom_algebra(build_extension_bracket(e))`.
pub fn validate_extension_algebra(e: &ExtensionData) -> Result<Report> {
    Ok(validate_hom_algebra(&build_extension_bracket(e)?))
}
