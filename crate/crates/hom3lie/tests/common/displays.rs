//! Hand-written component formulas for `d` on `φ₁ + φ₂ + φ₃`, one function
//! per displayed identity, evaluated on basis arguments. Independent of the
//! dense graded bracket.

use hom3lie::linalg::{add, int, scale, sub, unit, zeros, Vector};
use hom3lie::{ComponentCochain2, GeneralizedRep, HomAlgebra, Matrix, Scalar};

/// Where each argument of a display lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    G,
    V,
}

use Slot::{G, V};

pub struct Display {
    pub name: &'static str,
    /// Which component it differentiates: 1, 2 or 3.
    pub component: usize,
    pub slots: [Slot; 5],
    pub formula: fn(&Ctx, &[usize; 5]) -> Vector,
}

pub struct Ctx<'a> {
    pub a: &'a HomAlgebra,
    pub g: &'a GeneralizedRep,
    pub phi: &'a ComponentCochain2,
    n: usize,
    m: usize,
}

impl<'a> Ctx<'a> {
    pub fn new(a: &'a HomAlgebra, g: &'a GeneralizedRep, phi: &'a ComponentCochain2) -> Self {
        Ctx { a, g, phi, n: a.dim(), m: g.carrier_dim() }
    }

    fn e(&self, i: usize) -> Vector {
        unit(self.n, i)
    }

    fn v(&self, i: usize) -> Vector {
        unit(self.m, i)
    }

    fn ax(&self, i: usize) -> Vector {
        self.a.alpha().column(i)
    }

    fn av(&self, i: usize) -> Vector {
        self.g.endo().column(i)
    }

    fn br(&self, i: usize, j: usize, k: usize) -> Vector {
        self.a.br_basis(i, j, k)
    }

    fn rho(&self, x: &[Scalar], y: &[Scalar]) -> Matrix {
        self.g.act_at(x, y)
    }

    fn nu(&self, x: &[Scalar], u: &[Scalar], w: &[Scalar]) -> Vector {
        self.g.nu_apply(x, u, w)
    }

    fn phi3(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        let mut out = zeros(self.m);
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    let c = &x[i] * &y[j] * &z[k];
                    if c != int(0) {
                        out = add(&out, &scale(&c, &self.phi.phi3_at(i, j, k)));
                    }
                }
            }
        }
        out
    }

    fn phi2(&self, x: &[Scalar], y: &[Scalar], w: &[Scalar]) -> Vector {
        let mut out = zeros(self.m);
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.m {
                    let c = &x[i] * &y[j] * &w[k];
                    if c != int(0) {
                        out = add(&out, &scale(&c, &self.phi.phi2_at(i, j, k)));
                    }
                }
            }
        }
        out
    }

    fn phi1(&self, u: &[Scalar], w: &[Scalar], x: &[Scalar]) -> Vector {
        let mut out = zeros(self.m);
        for i in 0..self.m {
            for j in 0..self.m {
                for k in 0..self.n {
                    let c = &u[i] * &w[j] * &x[k];
                    if c != int(0) {
                        out = add(&out, &scale(&c, &self.phi.phi1_at(i, j, k)));
                    }
                }
            }
        }
        out
    }
}

fn sum(terms: &[Vector]) -> Vector {
    let mut out = terms[0].clone();
    for t in &terms[1..] {
        out = add(&out, t);
    }
    out
}

fn neg(v: Vector) -> Vector {
    v.iter().map(|x| -x).collect()
}

fn d3_ggggg(c: &Ctx, k: &[usize; 5]) -> Vector {
    let [x1, x2, x3, x4, x5] = *k;
    let e = |i| c.e(i);
    let ax = |i| c.ax(i);
    sum(&[
        c.rho(&ax(x1), &ax(x2)).apply(&c.phi3(&e(x3), &e(x4), &e(x5))),
        c.phi3(&ax(x1), &ax(x2), &c.br(x3, x4, x5)),
        neg(c.rho(&ax(x4), &ax(x5)).apply(&c.phi3(&e(x1), &e(x2), &e(x3)))),
        neg(c.phi3(&c.br(x1, x2, x3), &ax(x4), &ax(x5))),
        neg(c.rho(&ax(x5), &ax(x3)).apply(&c.phi3(&e(x1), &e(x2), &e(x4)))),
        neg(c.phi3(&ax(x3), &c.br(x1, x2, x4), &ax(x5))),
        neg(c.rho(&ax(x3), &ax(x4)).apply(&c.phi3(&e(x1), &e(x2), &e(x5)))),
        neg(c.phi3(&ax(x3), &ax(x4), &c.br(x1, x2, x5))),
    ])
}

fn d3_ggggv(c: &Ctx, k: &[usize; 5]) -> Vector {
    let [x1, x2, x3, x4, v] = *k;
    let e = |i| c.e(i);
    add(
        &c.nu(&c.ax(x4), &c.phi3(&e(x1), &e(x2), &e(x3)), &c.av(v)),
        &c.nu(&c.ax(x3), &c.av(v), &c.phi3(&e(x1), &e(x2), &e(x4))),
    )
}

fn d3_gvggg(c: &Ctx, k: &[usize; 5]) -> Vector {
    let [x1, v, x2, x3, x4] = *k;
    c.nu(&c.ax(x1), &c.av(v), &c.phi3(&c.e(x2), &c.e(x3), &c.e(x4)))
}

fn d2_ggggv_printed(c: &Ctx, k: &[usize; 5]) -> Vector {
    let [x1, x2, x3, x4, v] = *k;
    let e = |i| c.e(i);
    let ax = |i| c.ax(i);
    sum(&[
        c.rho(&ax(x1), &ax(x2)).apply(&c.phi2(&e(x3), &e(x4), &c.v(v))),
        neg(c.rho(&ax(x3), &ax(x4)).apply(&c.phi2(&e(x1), &e(x2), &c.v(v)))),
        neg(c.phi2(&c.br(x1, x2, x3), &ax(x4), &c.av(v))),
        neg(c.phi2(&ax(x3), &c.br(x1, x2, x4), &c.av(v))),
    ])
}

/// The printed formula plus `φ₂(αx₁,αx₂,ρ(x₃,x₄)v) − φ₂(αx₃,αx₄,ρ(x₁,x₂)v)`.
pub fn d2_ggggv_completed(c: &Ctx, k: &[usize; 5]) -> Vector {
    let [x1, x2, x3, x4, v] = *k;
    let e = |i| c.e(i);
    let ax = |i| c.ax(i);
    let extra = sub(
        &c.phi2(&ax(x1), &ax(x2), &c.rho(&e(x3), &e(x4)).apply(&c.v(v))),
        &c.phi2(&ax(x3), &ax(x4), &c.rho(&e(x1), &e(x2)).apply(&c.v(v))),
    );
    add(&d2_ggggv_printed(c, k), &extra)
}

fn d2_gvggg(c: &Ctx, k: &[usize; 5]) -> Vector {
    let [x1, v, x2, x3, x4] = *k;
    let e = |i| c.e(i);
    let ax = |i| c.ax(i);
    let vv = c.v(v);
    sum(&[
        c.rho(&ax(x3), &ax(x4)).apply(&c.phi2(&e(x1), &e(x2), &vv)),
        neg(c.rho(&ax(x2), &ax(x4)).apply(&c.phi2(&e(x1), &e(x3), &vv))),
        c.rho(&ax(x2), &ax(x3)).apply(&c.phi2(&e(x1), &e(x4), &vv)),
        c.phi2(&ax(x3), &ax(x4), &c.rho(&e(x1), &e(x2)).apply(&vv)),
        neg(c.phi2(&ax(x2), &ax(x4), &c.rho(&e(x1), &e(x3)).apply(&vv))),
        c.phi2(&ax(x2), &ax(x3), &c.rho(&e(x1), &e(x4)).apply(&vv)),
        neg(c.phi2(&ax(x1), &c.br(x2, x3, x4), &c.av(v))),
    ])
}

fn d2_ggvvg(c: &Ctx, k: &[usize; 5]) -> Vector {
    let [x1, x2, v1, v2, x3] = *k;
    let e = |i| c.e(i);
    sum(&[
        c.nu(&c.ax(x3), &c.av(v2), &c.phi2(&e(x1), &e(x2), &c.v(v1))),
        c.nu(&c.ax(x3), &c.phi2(&e(x1), &e(x2), &c.v(v2)), &c.av(v1)),
        c.phi2(&c.ax(x1), &c.ax(x2), &c.nu(&e(x3), &c.v(v1), &c.v(v2))),
    ])
}

fn d2_gvgvg(c: &Ctx, k: &[usize; 5]) -> Vector {
    let [x1, v1, x2, v2, x3] = *k;
    let e = |i| c.e(i);
    sum(&[
        c.nu(&c.ax(x3), &c.av(v2), &c.phi2(&e(x2), &e(x1), &c.v(v1))),
        c.nu(&c.ax(x2), &c.phi2(&e(x3), &e(x1), &c.v(v1)), &c.av(v2)),
        neg(c.nu(&c.ax(x1), &c.av(v1), &c.phi2(&e(x2), &e(x3), &c.v(v2)))),
        c.phi2(&c.ax(x2), &c.ax(x3), &c.nu(&e(x1), &c.v(v1), &c.v(v2))),
    ])
}

fn d2_vvggg(c: &Ctx, k: &[usize; 5]) -> Vector {
    let [v1, v2, x1, x2, x3] = *k;
    let e = |i| c.e(i);
    let (u, w) = (c.v(v1), c.v(v2));
    sum(&[
        c.phi2(&c.ax(x1), &c.ax(x3), &c.nu(&e(x2), &u, &w)),
        neg(c.phi2(&c.ax(x2), &c.ax(x3), &c.nu(&e(x1), &u, &w))),
        neg(c.phi2(&c.ax(x1), &c.ax(x2), &c.nu(&e(x3), &u, &w))),
    ])
}

fn d1_ggvvg(c: &Ctx, k: &[usize; 5]) -> Vector {
    let [x1, x2, v1, v2, x3] = *k;
    let e = |i| c.e(i);
    let r = c.rho(&e(x1), &e(x2));
    sum(&[
        c.rho(&c.ax(x1), &c.ax(x2)).apply(&c.phi1(&c.v(v1), &c.v(v2), &e(x3))),
        neg(c.phi1(&r.apply(&c.v(v1)), &c.av(v2), &c.ax(x3))),
        neg(c.phi1(&c.av(v1), &r.apply(&c.v(v2)), &c.ax(x3))),
        neg(c.phi1(&c.av(v1), &c.av(v2), &c.br(x1, x2, x3))),
    ])
}

fn d1_gvgvg(c: &Ctx, k: &[usize; 5]) -> Vector {
    let [x1, v1, x2, v2, x3] = *k;
    let e = |i| c.e(i);
    sum(&[
        c.rho(&c.ax(x2), &c.ax(x3)).apply(&c.phi1(&c.v(v1), &c.v(v2), &e(x1))),
        c.phi1(&c.rho(&e(x1), &e(x2)).apply(&c.v(v1)), &c.av(v2), &c.ax(x3)),
        neg(c.phi1(&c.av(v1), &c.rho(&e(x2), &e(x3)).apply(&c.v(v2)), &c.ax(x1))),
        c.phi1(&c.av(v2), &c.rho(&e(x1), &e(x3)).apply(&c.v(v1)), &c.ax(x2)),
    ])
}

fn d1_vvggg(c: &Ctx, k: &[usize; 5]) -> Vector {
    let [v1, v2, x1, x2, x3] = *k;
    let e = |i| c.e(i);
    let (u, w) = (c.v(v1), c.v(v2));
    sum(&[
        c.rho(&c.ax(x1), &c.ax(x3)).apply(&c.phi1(&u, &w, &e(x2))),
        neg(c.rho(&c.ax(x1), &c.ax(x2)).apply(&c.phi1(&u, &w, &e(x3)))),
        neg(c.rho(&c.ax(x2), &c.ax(x3)).apply(&c.phi1(&u, &w, &e(x1)))),
        c.phi1(&c.av(v1), &c.av(v2), &c.br(x1, x2, x3)),
    ])
}

fn d1_gvvvg(c: &Ctx, k: &[usize; 5]) -> Vector {
    let [x1, v1, v2, v3, x2] = *k;
    let e = |i| c.e(i);
    let v = |i| c.v(i);
    sum(&[
        neg(c.nu(&c.ax(x2), &c.phi1(&v(v1), &v(v2), &e(x1)), &c.av(v3))),
        neg(c.nu(&c.ax(x2), &c.av(v2), &c.phi1(&v(v1), &v(v3), &e(x1)))),
        c.nu(&c.ax(x1), &c.av(v1), &c.phi1(&v(v2), &v(v3), &e(x2))),
        neg(c.phi1(&c.nu(&e(x1), &v(v1), &v(v2)), &c.av(v3), &c.ax(x2))),
        neg(c.phi1(&c.av(v2), &c.nu(&e(x1), &v(v1), &v(v3)), &c.ax(x2))),
        c.phi1(&c.av(v1), &c.nu(&e(x2), &v(v2), &v(v3)), &c.ax(x1)),
    ])
}

fn d1_vvggv(c: &Ctx, k: &[usize; 5]) -> Vector {
    let [v1, v2, x1, x2, v3] = *k;
    let e = |i| c.e(i);
    let v = |i| c.v(i);
    sum(&[
        c.nu(&c.ax(x2), &c.phi1(&v(v1), &v(v2), &e(x1)), &c.av(v3)),
        neg(c.nu(&c.ax(x1), &c.av(v3), &c.phi1(&v(v1), &v(v2), &e(x2)))),
        c.phi1(&c.nu(&e(x1), &v(v1), &v(v2)), &c.av(v3), &c.ax(x2)),
        neg(c.phi1(&c.nu(&e(x2), &v(v1), &v(v2)), &c.av(v3), &c.ax(x1))),
    ])
}

/// The thirteen displays in print order.
pub fn displays() -> Vec<Display> {
    vec![
        Display { name: "d(phi3)(x1,x2,x3,x4,x5)", component: 3, slots: [G, G, G, G, G], formula: d3_ggggg },
        Display { name: "d(phi3)(x1,x2,x3,x4,v)", component: 3, slots: [G, G, G, G, V], formula: d3_ggggv },
        Display { name: "d(phi3)(x1,v,x2,x3,x4)", component: 3, slots: [G, V, G, G, G], formula: d3_gvggg },
        Display { name: "d(phi2)(x1,x2,x3,x4,v)", component: 2, slots: [G, G, G, G, V], formula: d2_ggggv_printed },
        Display { name: "d(phi2)(x1,v,x2,x3,x4)", component: 2, slots: [G, V, G, G, G], formula: d2_gvggg },
        Display { name: "d(phi2)(x1,x2,v1,v2,x3)", component: 2, slots: [G, G, V, V, G], formula: d2_ggvvg },
        Display { name: "d(phi2)(x1,v1,x2,v2,x3)", component: 2, slots: [G, V, G, V, G], formula: d2_gvgvg },
        Display { name: "d(phi2)(v1,v2,x1,x2,x3)", component: 2, slots: [V, V, G, G, G], formula: d2_vvggg },
        Display { name: "d(phi1)(x1,x2,v1,v2,x3)", component: 1, slots: [G, G, V, V, G], formula: d1_ggvvg },
        Display { name: "d(phi1)(x1,v1,x2,v2,x3)", component: 1, slots: [G, V, G, V, G], formula: d1_gvgvg },
        Display { name: "d(phi1)(v1,v2,x1,x2,x3)", component: 1, slots: [V, V, G, G, G], formula: d1_vvggg },
        Display { name: "d(phi1)(x1,v1,v2,v3,x2)", component: 1, slots: [G, V, V, V, G], formula: d1_gvvvg },
        Display { name: "d(phi1)(v1,v2,x1,x2,v3)", component: 1, slots: [V, V, G, G, V], formula: d1_vvggv },
    ]
}

/// All basis argument tuples for the given slot pattern.
pub fn argument_tuples(slots: &[Slot; 5], n: usize, m: usize) -> Vec<[usize; 5]> {
    let mut out = vec![[0usize; 5]];
    for (i, s) in slots.iter().enumerate() {
        let size = if *s == G { n } else { m };
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..size).map(move |x| {
                    let mut t = t;
                    t[i] = x;
                    t
                })
            })
            .collect();
    }
    out
}

/// Keeps only one component of a component cochain.
pub fn only(phi: &ComponentCochain2, component: usize) -> ComponentCochain2 {
    let mut out = ComponentCochain2::zero(phi.base_dim(), phi.carrier_dim());
    match component {
        1 => out.phi1 = phi.phi1.clone(),
        2 => out.phi2 = phi.phi2.clone(),
        _ => out.phi3 = phi.phi3.clone(),
    }
    out
}

/// First argument tuple where `formula` differs from the dense `d`, given as
/// `(args, formula value, dense value)`.
pub fn first_mismatch(
    a: &HomAlgebra,
    g: &GeneralizedRep,
    phi: &ComponentCochain2,
    display: &Display,
    formula: fn(&Ctx, &[usize; 5]) -> Vector,
) -> Option<([usize; 5], Vector, Vector)> {
    let (n, m) = (a.dim(), g.carrier_dim());
    let part = only(phi, display.component);
    let dense = hom3lie::differential_d(a, g, &part.to_dense()).expect("admissible cochain");
    let ctx = Ctx::new(a, g, &part);
    let h = |i: usize, k: &[usize; 5]| if display.slots[i] == G { k[i] } else { n + k[i] };
    for k in argument_tuples(&display.slots, n, m) {
        let expect = formula(&ctx, &k);
        let got = dense.eval_basis(&[(h(0, &k), h(1, &k)), (h(2, &k), h(3, &k))], h(4, &k));
        if expect != got {
            return Some((k, expect, got));
        }
    }
    None
}

/// The printed formula with the sign of `ν(αx₁)(Av₃, φ₁(v₁,v₂,x₂))` flipped,
/// which makes it skew in `(x₁, x₂)`.
pub fn d1_vvggv_sign_fixed(c: &Ctx, k: &[usize; 5]) -> Vector {
    let [v1, v2, x1, x2, v3] = *k;
    let e = |i| c.e(i);
    let v = |i| c.v(i);
    let term = c.nu(&c.ax(x1), &c.av(v3), &c.phi1(&v(v1), &v(v2), &e(x2)));
    add(&d1_vvggv(c, k), &scale(&int(2), &term))
}
