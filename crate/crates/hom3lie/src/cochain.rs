//! Cochains, the graded bracket, canonical structures, the coboundary
//! operators and cocycle/coboundary dimensions.
//!
//! A dense cochain of degree `p` is a table on `(∧²h)^{⊗p} ⊗ h` indexed by
//! `p` canonical pairs `s < t` and one final basis index. Degree counts the
//! `∧²` slots, so the bracket of an algebra is a degree-1 cochain.

use num::{One, Zero};

use crate::algebra::{fundamental_bracket, FundamentalObject, HomAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{
    axpy, is_zero_vec, pair_count, pairs, signed_pair, unit, wedge, zeros, Matrix, RowEchelon,
    Scalar, SkewTensor3, Vector,
};
use crate::rep::{generalized_semidirect, validate_generalized_rep, validate_representation, GeneralizedRep, Representation};
use crate::report::{label_h, Report};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseCochain {
    source_dim: usize,
    target_dim: usize,
    degree: usize,
    /// Basis indices below `split` are labelled `e`, the rest `v`.
    split: usize,
    values: Vec<Scalar>,
}

impl DenseCochain {
    pub fn zero(source_dim: usize, target_dim: usize, degree: usize) -> Self {
        let keys = pair_count(source_dim).pow(degree as u32) * source_dim;
        DenseCochain {
            source_dim,
            target_dim,
            degree,
            split: source_dim,
            values: vec![Scalar::zero(); keys * target_dim],
        }
    }

    /// Marks the first `split` basis vectors as belonging to `g` (for labels).
    pub fn with_split(mut self, split: usize) -> Self {
        self.split = split;
        self
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn split(&self) -> usize {
        self.split
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    fn np(&self) -> usize {
        pair_count(self.source_dim)
    }

    pub fn key_count(&self) -> usize {
        self.np().pow(self.degree as u32) * self.source_dim
    }

    fn key_offset(&self, pair_idx: &[usize], u: usize) -> usize {
        let np = self.np();
        let mut k = 0;
        for &p in pair_idx {
            k = k * np + p;
        }
        (k * self.source_dim + u) * self.target_dim
    }

    /// Splits a key number into pair indices and the final index.
    pub fn decode_key(&self, mut key: usize) -> (Vec<usize>, usize) {
        let np = self.np();
        let u = key % self.source_dim;
        key /= self.source_dim;
        let mut ps = vec![0; self.degree];
        for slot in (0..self.degree).rev() {
            ps[slot] = key % np;
            key /= np;
        }
        (ps, u)
    }

    /// Value at canonical pair indices and final index.
    pub fn value(&self, pair_idx: &[usize], u: usize) -> &[Scalar] {
        let o = self.key_offset(pair_idx, u);
        &self.values[o..o + self.target_dim]
    }

    pub fn set(&mut self, pair_idx: &[usize], u: usize, v: &[Scalar]) {
        assert_eq!(pair_idx.len(), self.degree);
        assert_eq!(v.len(), self.target_dim);
        let o = self.key_offset(pair_idx, u);
        self.values[o..o + self.target_dim].clone_from_slice(v);
    }

    /// Value at basis arguments `(s₁,t₁), …, (s_p,t_p), u`, sign-extended in
    /// each pair.
    pub fn eval_basis(&self, args: &[(usize, usize)], u: usize) -> Vector {
        assert_eq!(args.len(), self.degree);
        let mut idx = Vec::with_capacity(args.len());
        let mut neg = false;
        for &(s, t) in args {
            match signed_pair(self.source_dim, s, t) {
                None => return zeros(self.target_dim),
                Some((k, flip)) => {
                    idx.push(k);
                    neg ^= flip;
                }
            }
        }
        let v = self.value(&idx, u);
        if neg {
            v.iter().map(|x| -x).collect()
        } else {
            v.to_vec()
        }
    }

    /// Sets the value at basis arguments, sign-adjusted.
    pub fn set_basis(&mut self, args: &[(usize, usize)], u: usize, v: &[Scalar]) {
        let mut idx = Vec::with_capacity(args.len());
        let mut neg = false;
        for &(s, t) in args {
            let (k, flip) = signed_pair(self.source_dim, s, t).expect("distinct pair entries");
            idx.push(k);
            neg ^= flip;
        }
        if neg {
            let w: Vector = v.iter().map(|x| -x).collect();
            self.set(&idx, u, &w);
        } else {
            self.set(&idx, u, v);
        }
    }

    /// Multilinear evaluation: `pair_args` are coordinates in `∧²h`, `last`
    /// in `h`.
    pub fn eval(&self, pair_args: &[Vector], last: &[Scalar]) -> Vector {
        assert_eq!(pair_args.len(), self.degree);
        let np = self.np();
        let mut terms: Vec<(usize, Scalar)> = vec![(0, Scalar::one())];
        for arg in pair_args {
            let mut next = Vec::new();
            for (prefix, c) in &terms {
                for (k, x) in arg.iter().enumerate() {
                    if !x.is_zero() {
                        next.push((prefix * np + k, c * x));
                    }
                }
            }
            terms = next;
            if terms.is_empty() {
                return zeros(self.target_dim);
            }
        }
        let mut out = zeros(self.target_dim);
        for (prefix, c) in &terms {
            for (u, x) in last.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let o = (prefix * self.source_dim + u) * self.target_dim;
                axpy(&mut out, &(c * x), &self.values[o..o + self.target_dim]);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.values)
    }

    fn same_shape(&self, other: &DenseCochain) -> bool {
        self.source_dim == other.source_dim && self.target_dim == other.target_dim && self.degree == other.degree
    }

    pub fn add(&self, other: &DenseCochain) -> Result<DenseCochain> {
        if !self.same_shape(other) {
            return Err(Error::Dimension("adding cochains of different shapes".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.values.iter_mut().zip(&other.values) {
            if !b.is_zero() {
                *a += b;
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DenseCochain) -> Result<DenseCochain> {
        self.add(&other.scaled(&-Scalar::one()))
    }

    pub fn scaled(&self, c: &Scalar) -> DenseCochain {
        let mut out = self.clone();
        for x in out.values.iter_mut() {
            if !x.is_zero() {
                *x *= c;
            }
        }
        out
    }

    /// Canonical keys with a nonzero value.
    pub fn support(&self) -> Vec<(Vec<usize>, usize)> {
        (0..self.key_count())
            .filter(|&k| !is_zero_vec(&self.values[k * self.target_dim..(k + 1) * self.target_dim]))
            .map(|k| self.decode_key(k))
            .collect()
    }

    /// Basis labels of a canonical key, e.g. `["e1^v2", "e3"]`.
    pub fn key_labels(&self, pair_idx: &[usize], u: usize) -> Vec<String> {
        let ps = pairs(self.source_dim);
        let mut out: Vec<String> = pair_idx
            .iter()
            .map(|&k| {
                let (s, t) = ps[k];
                format!("{}^{}", label_h(s, self.split), label_h(t, self.split))
            })
            .collect();
        out.push(label_h(u, self.split));
        out
    }

    /// `m ∘ φ`
    pub fn map_target(&self, m: &Matrix) -> DenseCochain {
        assert_eq!(m.cols(), self.target_dim);
        let t = self.target_dim;
        let mut out = DenseCochain {
            source_dim: self.source_dim,
            target_dim: m.rows(),
            degree: self.degree,
            split: self.split,
            values: Vec::with_capacity(self.key_count() * m.rows()),
        };
        for k in 0..self.key_count() {
            out.values.extend(m.apply(&self.values[k * t..(k + 1) * t]));
        }
        out
    }

    fn slot_sizes(&self) -> Vec<usize> {
        let mut s = vec![self.np(); self.degree];
        s.push(self.source_dim);
        s
    }

    /// Precomposes one slot with `m` (`∧²h → ∧²h` for a pair slot, `h → h`
    /// for the final slot `slot == degree`).
    pub fn transform_slot(&self, slot: usize, m: &Matrix) -> DenseCochain {
        let sizes = self.slot_sizes();
        let size = sizes[slot];
        assert!(m.rows() == size && m.cols() == size);
        if m.is_identity() {
            return self.clone();
        }
        let inner: usize = sizes[slot + 1..].iter().product::<usize>() * self.target_dim;
        let outer: usize = sizes[..slot].iter().product();
        let cols: Vec<Vec<(usize, Scalar)>> = (0..size)
            .map(|b| {
                (0..size)
                    .filter(|&a| !m.get(a, b).is_zero())
                    .map(|a| (a, m.get(a, b).clone()))
                    .collect()
            })
            .collect();
        let mut out = self.clone();
        for x in out.values.iter_mut() {
            *x = Scalar::zero();
        }
        for o in 0..outer {
            for (b, col) in cols.iter().enumerate() {
                let dst = (o * size + b) * inner;
                for (a, c) in col {
                    let src = (o * size + a) * inner;
                    for i in 0..inner {
                        let x = &self.values[src + i];
                        if !x.is_zero() {
                            out.values[dst + i] += c * x;
                        }
                    }
                }
            }
        }
        out
    }

    /// `φ ∘ (m^{⊗})`: every pair slot by `∧²m`, the final slot by `m`.
    pub fn pull_back(&self, m: &Matrix) -> DenseCochain {
        let wm = m.wedge_square();
        let mut out = self.transform_slot(self.degree, m);
        for slot in 0..self.degree {
            out = out.transform_slot(slot, &wm);
        }
        out
    }

    /// Embeds target values into a larger space at coordinate `offset`.
    pub fn embed_target(&self, total: usize, offset: usize) -> DenseCochain {
        let mut m = Matrix::zeros(total, self.target_dim);
        for i in 0..self.target_dim {
            m.set(offset + i, i, Scalar::one());
        }
        self.map_target(&m)
    }

    /// Keeps target coordinates `offset .. offset + len`.
    pub fn project_target(&self, offset: usize, len: usize) -> DenseCochain {
        let mut m = Matrix::zeros(len, self.target_dim);
        for i in 0..len {
            m.set(i, offset + i, Scalar::one());
        }
        self.map_target(&m)
    }

    /// Restriction to arguments among the first `n` basis vectors.
    pub fn restrict_source(&self, n: usize) -> DenseCochain {
        let mut out = DenseCochain::zero(n, self.target_dim, self.degree);
        let small = pairs(n);
        let big_n = self.source_dim;
        for k in 0..out.key_count() {
            let (ps, u) = out.decode_key(k);
            let big: Vec<usize> = ps
                .iter()
                .map(|&p| signed_pair(big_n, small[p].0, small[p].1).expect("s < t").0)
                .collect();
            let v = self.value(&big, u).to_vec();
            out.set(&ps, u, &v);
        }
        out
    }

    /// Extension by zero from the first `self.source_dim` basis vectors of a
    /// `total`-dimensional space.
    pub fn extend_source(&self, total: usize) -> DenseCochain {
        let mut out = DenseCochain::zero(total, self.target_dim, self.degree).with_split(self.source_dim);
        let small = pairs(self.source_dim);
        for k in 0..self.key_count() {
            let (ps, u) = self.decode_key(k);
            let big: Vec<usize> = ps
                .iter()
                .map(|&p| signed_pair(total, small[p].0, small[p].1).expect("s < t").0)
                .collect();
            out.set(&big, u, self.value(&ps, u));
        }
        out
    }

    /// True when every argument index of the key is at least `split`.
    fn all_in_fiber(&self, pair_idx: &[usize], u: usize) -> bool {
        let ps = pairs(self.source_dim);
        u >= self.split && pair_idx.iter().all(|&p| ps[p].0 >= self.split)
    }
}

/// The degree-1 cochain of a skew trilinear bracket.
pub fn cochain_of_bracket(t: &SkewTensor3) -> DenseCochain {
    let n = t.dim();
    let mut c = DenseCochain::zero(n, t.target_dim(), 1);
    for (k, (s, u)) in pairs(n).into_iter().enumerate() {
        for w in 0..n {
            let v = t.get(s, u, w);
            if !is_zero_vec(&v) {
                c.set(&[k], w, &v);
            }
        }
    }
    c
}

/// `π + ρ̄ + ν̄` on `h = g ⊕ V`, valued in `h`.
pub fn lift_structure(a: &HomAlgebra, g: &GeneralizedRep) -> Result<DenseCochain> {
    let s = generalized_semidirect(a, g)?;
    Ok(cochain_of_bracket(s.bracket()).with_split(a.dim()))
}

fn check_host(c: &DenseCochain, n: usize, what: &str) -> Result<()> {
    if c.source_dim != n || c.target_dim != n {
        return Err(Error::Dimension(format!(
            "{what} maps a {}-dim space to a {}-dim space, expected {n} -> {n}",
            c.source_dim, c.target_dim
        )));
    }
    Ok(())
}

/// Subsets `J ⊂ {0..d}` of size `p` with their complements and the sign of
/// the shuffle `(J, I)`.
fn shuffles(d: usize, p: usize) -> Vec<(Vec<usize>, Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut j: Vec<usize> = (0..p).collect();
    loop {
        let i: Vec<usize> = (0..d).filter(|x| !j.contains(x)).collect();
        let inversions: usize = j.iter().map(|&a| i.iter().filter(|&&b| b < a).count()).sum();
        out.push((j.clone(), i, inversions % 2 == 1));
        // next combination
        let mut k = p;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if j[k] < d - p + k {
                j[k] += 1;
                for l in k + 1..p {
                    j[l] = j[l - 1] + 1;
                }
                break;
            }
        }
        if p == 0 {
            return out;
        }
    }
}

/// `φ ∘_α ψ` for `φ` of degree `q` and `ψ` of degree `p`, a cochain of
/// degree `p + q`:
///
/// ```text
/// Σ_{J, m ∈ I, m > max J} ±φ(α^p X_I…, ψ(X_J, ·) • X_m, …, α^p x)
///   + Σ_J ±φ(α^p X_I, ψ(X_J, x))
/// ```
///
/// with `ψ(X_J, ·) • (x∧y) = ψ(X_J, x) ∧ α^p y + α^p x ∧ ψ(X_J, y)` and the
/// sign of the shuffle `(J, I)`. The bullet term is inserted at every slot of
/// `I` beyond the last slot of `J` (every slot when `J` is empty).
pub fn graded_compose(phi: &DenseCochain, psi: &DenseCochain, alpha_h: &Matrix) -> Result<DenseCochain> {
    let n = alpha_h.rows();
    if !alpha_h.is_square() {
        return Err(Error::Dimension("twist map is not square".into()));
    }
    check_host(phi, n, "outer cochain")?;
    check_host(psi, n, "inner cochain")?;
    let (q, p) = (phi.degree, psi.degree);
    let d = p + q;
    let np = pair_count(n);
    let ap = alpha_h.pow(p);
    let lap = ap.wedge_square();
    let apc: Vec<Vector> = (0..n).map(|i| ap.column(i)).collect();
    let prs = pairs(n);

    let mut phi_last = phi.clone();
    for s in 0..q {
        phi_last = phi_last.transform_slot(s, &lap);
    }
    let phi_final = phi.transform_slot(q, &ap);
    let phi_pos: Vec<DenseCochain> = (0..q)
        .map(|pos| {
            let mut c = phi_final.clone();
            for s in (0..q).filter(|&s| s != pos) {
                c = c.transform_slot(s, &lap);
            }
            c
        })
        .collect();

    // ψ block (all final indices) for each pair tuple of ψ
    let psi_blocks = np.pow(p as u32);
    let psi_zero: Vec<bool> = (0..psi_blocks)
        .map(|b| is_zero_vec(&psi.values[b * n * n..(b + 1) * n * n]))
        .collect();

    let mut out = DenseCochain::zero(n, n, d).with_split(phi.split);
    let subsets = shuffles(d, p);
    let out_blocks = np.pow(d as u32);
    let mut acc = zeros(n * n); // accumulated values for all u at one pair tuple
    let stride = |len: usize, slot: usize| np.pow((len - 1 - slot) as u32);

    for block in 0..out_blocks {
        let (key, _) = out.decode_key(block * n);
        for x in acc.iter_mut() {
            *x = Scalar::zero();
        }
        let mut touched = false;
        for (jset, iset, neg) in &subsets {
            let mut jb = 0;
            for &j in jset {
                jb = jb * np + key[j];
            }
            if psi_zero[jb] {
                continue;
            }
            let psi_at = |w: usize| -> &[Scalar] { &psi.values[(jb * n + w) * n..(jb * n + w + 1) * n] };
            let sign = if *neg { -Scalar::one() } else { Scalar::one() };
            let mut ib = 0;
            for &i in iset {
                ib = ib * np + key[i];
            }
            // second sum: φ(α^p X_I, ψ(X_J, u))
            for u in 0..n {
                let pv = psi_at(u);
                for (w, c) in pv.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let o = (ib * n + w) * n;
                    let src = &phi_last.values[o..o + n];
                    if is_zero_vec(src) {
                        continue;
                    }
                    let c = &sign * c;
                    axpy(&mut acc[u * n..(u + 1) * n], &c, src);
                    touched = true;
                }
            }
            // first sum: bullet insertion at slots of I beyond max J
            let max_j = jset.last().copied();
            for (pos, &m) in iset.iter().enumerate() {
                if let Some(mj) = max_j {
                    if m < mj {
                        continue;
                    }
                }
                let (s, t) = prs[key[m]];
                let mut bullet = wedge(psi_at(s), &apc[t]);
                let b2 = wedge(&apc[s], psi_at(t));
                for (x, y) in bullet.iter_mut().zip(&b2) {
                    *x += y;
                }
                if is_zero_vec(&bullet) {
                    continue;
                }
                let st = stride(q, pos);
                let base = ib - key[m] * st;
                let table = &phi_pos[pos].values;
                for (b, c) in bullet.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let c = &sign * c;
                    let kb = base + b * st;
                    for u in 0..n {
                        let o = (kb * n + u) * n;
                        let src = &table[o..o + n];
                        if !is_zero_vec(src) {
                            axpy(&mut acc[u * n..(u + 1) * n], &c, src);
                            touched = true;
                        }
                    }
                }
            }
        }
        if touched {
            out.values[block * n * n..(block + 1) * n * n].clone_from_slice(&acc);
        }
    }
    Ok(out)
}

/// `[φ, ψ] = (−1)^{pq} φ ∘_α ψ − ψ ∘_α φ` for `φ` of degree `q`, `ψ` of degree `p`.
pub fn graded_bracket(phi: &DenseCochain, psi: &DenseCochain, alpha_h: &Matrix) -> Result<DenseCochain> {
    let a = graded_compose(phi, psi, alpha_h)?;
    let b = graded_compose(psi, phi, alpha_h)?;
    let a = if (phi.degree * psi.degree) % 2 == 1 { a.scaled(&-Scalar::one()) } else { a };
    a.sub(&b)
}

/// `A ∘ φ = φ ∘ (α^{⊗})` with `α` acting on the source and `A` on the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibilityConstraint {
    pub twist_on_source: Matrix,
    pub twist_on_target: Matrix,
}

impl CompatibilityConstraint {
    pub fn new(twist_on_source: Matrix, twist_on_target: Matrix) -> Result<Self> {
        if !twist_on_source.is_square() || !twist_on_target.is_square() {
            return Err(Error::Dimension("compatibility maps must be square".into()));
        }
        Ok(CompatibilityConstraint {
            twist_on_source,
            twist_on_target,
        })
    }

    fn fits(&self, phi: &DenseCochain) -> Result<()> {
        if self.twist_on_source.rows() != phi.source_dim || self.twist_on_target.rows() != phi.target_dim {
            return Err(Error::Dimension(format!(
                "constraint for {} -> {} applied to a cochain {} -> {}",
                self.twist_on_source.rows(),
                self.twist_on_target.rows(),
                phi.source_dim,
                phi.target_dim
            )));
        }
        Ok(())
    }

    /// `A∘φ − φ∘α^{⊗}`
    pub fn defect(&self, phi: &DenseCochain) -> Result<DenseCochain> {
        self.fits(phi)?;
        phi.map_target(&self.twist_on_target).sub(&phi.pull_back(&self.twist_on_source))
    }

    pub fn check(&self, phi: &DenseCochain) -> Result<Report> {
        self.fits(phi)?;
        let left = phi.map_target(&self.twist_on_target);
        let right = phi.pull_back(&self.twist_on_source);
        let mut report = Report::new();
        let t = phi.target_dim;
        for k in 0..phi.key_count() {
            let l = &left.values[k * t..(k + 1) * t];
            let r = &right.values[k * t..(k + 1) * t];
            report.checked += 1;
            if l != r {
                let (ps, u) = phi.decode_key(k);
                report.violations.push(crate::report::Violation {
                    identity: "compatibility".into(),
                    witness: phi.key_labels(&ps, u),
                    left: l.to_vec(),
                    right: r.to_vec(),
                });
            }
        }
        Ok(report)
    }
}

fn nonzero_report(c: &DenseCochain, identity: &str) -> Report {
    let mut report = Report::new();
    let t = c.target_dim;
    for k in 0..c.key_count() {
        let v = &c.values[k * t..(k + 1) * t];
        report.checked += 1;
        if !is_zero_vec(v) {
            let (ps, u) = c.decode_key(k);
            report.violations.push(crate::report::Violation {
                identity: identity.into(),
                witness: c.key_labels(&ps, u),
                left: v.to_vec(),
                right: zeros(t),
            });
        }
    }
    report
}

/// `[s, s] = 0` together with compatibility of `s` with the twist map.
pub fn is_canonical(s: &DenseCochain, alpha_h: &Matrix) -> Report {
    let n = alpha_h.rows();
    if s.degree != 1 || check_host(s, n, "structure").is_err() {
        let mut report = Report::new();
        report.check("shape", vec![format!("degree {}", s.degree)], vec![], vec![Scalar::one()]);
        return report;
    }
    let constraint = CompatibilityConstraint::new(alpha_h.clone(), alpha_h.clone()).expect("square");
    let mut report = constraint.check(s).expect("shape checked");
    let sq = graded_bracket(s, s, alpha_h).expect("shape checked");
    report.merge(nonzero_report(&sq, "graded-square"));
    report
}

fn require_report(report: Report, condition: &str) -> Result<()> {
    match report.first() {
        None => Ok(()),
        Some(v) => Err(Error::Precondition {
            condition: condition.into(),
            witness: format!("({})", v.witness.join(", ")),
            detail: format!(
                "{}: left {} vs right {}",
                v.identity,
                crate::linalg::fmt_vector(&v.left),
                crate::linalg::fmt_vector(&v.right)
            ),
        }),
    }
}

/// The coboundary of a cochain on `g` valued in the carrier of `r`. For `φ`
/// with `k` pair slots and output arguments `X₁ … X_p, z` (`p = k + 1`):
///
/// ```text
///   Σ_{j<l} (−1)^j φ(αX₁, …, X̂_j, …, [X_j, X_l]_L, …, αX_p, αz)
/// + Σ_j (−1)^j φ(αX₁, …, X̂_j, …, αX_p, [X_j, z])
/// + Σ_j (−1)^{j+1} ρ(α^k x_j, α^k y_j) φ(X₁, …, X̂_j, …, X_p, z)
/// + (−1)^{p+1} (ρ(α^k y_p, α^k z) φ(X₁, …, X_{p−1}, x_p)
///               + ρ(α^k z, α^k x_p) φ(X₁, …, X_{p−1}, y_p))
/// ```
pub fn delta_rho(a: &HomAlgebra, r: &Representation, phi: &DenseCochain) -> Result<DenseCochain> {
    let (n, m) = (a.dim(), r.carrier_dim());
    if phi.source_dim != n || phi.target_dim != m || r.base_dim() != n {
        return Err(Error::Dimension(format!(
            "cochain {} -> {} for an algebra of dimension {} and carrier {}",
            phi.source_dim, phi.target_dim, n, m
        )));
    }
    let constraint = CompatibilityConstraint::new(a.alpha().clone(), r.endo().clone())?;
    require_report(constraint.check(phi)?, "compatibility")?;
    Ok(delta_rho_unchecked(a, r, phi))
}

fn delta_rho_unchecked(a: &HomAlgebra, r: &Representation, phi: &DenseCochain) -> DenseCochain {
    let n = a.dim();
    let k = phi.degree;
    let p = k + 1;
    let prs = pairs(n);
    let np = prs.len();
    let alpha = a.alpha();
    let ak = alpha.pow(k);
    let lam = alpha.wedge_square();
    let tw_pair: Vec<Vector> = (0..np).map(|i| lam.column(i)).collect();
    let tw: Vec<Vector> = (0..n).map(|i| alpha.column(i)).collect();
    let akc: Vec<Vector> = (0..n).map(|i| ak.column(i)).collect();
    let pair_unit: Vec<Vector> = (0..np).map(|i| unit(np, i)).collect();
    let fb: Vec<Vec<Vector>> = prs
        .iter()
        .map(|&(s, t)| {
            prs.iter()
                .map(|&(u, v)| {
                    let x = FundamentalObject::basis(n, s, t).expect("in range");
                    let y = FundamentalObject::basis(n, u, v).expect("in range");
                    fundamental_bracket(a, &x, &y).expect("same dim").components().to_vec()
                })
                .collect()
        })
        .collect();
    let rho_pair: Vec<Matrix> = prs.iter().map(|&(s, t)| r.act_at(&akc[s], &akc[t])).collect();
    let rho_aa: Vec<Vec<Matrix>> = (0..n)
        .map(|i| (0..n).map(|j| r.act_at(&akc[i], &akc[j])).collect())
        .collect();

    let mut out = DenseCochain::zero(n, r.carrier_dim(), p);
    let sgn = |e: usize| if e % 2 == 0 { Scalar::one() } else { -Scalar::one() };
    for key in 0..out.key_count() {
        let (xs, z) = out.decode_key(key);
        let mut total = zeros(r.carrier_dim());
        for j in 0..p {
            for l in j + 1..p {
                let args: Vec<Vector> = (0..p)
                    .filter(|&i| i != j)
                    .map(|i| if i == l { fb[xs[j]][xs[l]].clone() } else { tw_pair[xs[i]].clone() })
                    .collect();
                axpy(&mut total, &sgn(j + 1), &phi.eval(&args, &tw[z]));
            }
        }
        for j in 0..p {
            let args: Vec<Vector> = (0..p).filter(|&i| i != j).map(|i| tw_pair[xs[i]].clone()).collect();
            let (s, t) = prs[xs[j]];
            axpy(&mut total, &sgn(j + 1), &phi.eval(&args, &a.br_basis(s, t, z)));
        }
        for j in 0..p {
            let rest: Vec<usize> = (0..p).filter(|&i| i != j).map(|i| xs[i]).collect();
            let w = rho_pair[xs[j]].apply(phi.value(&rest, z));
            axpy(&mut total, &sgn(j), &w);
        }
        let (xp, yp) = prs[xs[p - 1]];
        let head: Vec<Vector> = xs[..p - 1].iter().map(|&i| pair_unit[i].clone()).collect();
        let w1 = rho_aa[yp][z].apply(&phi.eval(&head, &unit(n, xp)));
        let w2 = rho_aa[z][xp].apply(&phi.eval(&head, &unit(n, yp)));
        axpy(&mut total, &sgn(p + 1), &w1);
        axpy(&mut total, &sgn(p + 1), &w2);
        out.set(&xs, z, &total);
    }
    out
}

fn check_c_tilde(phi: &DenseCochain, n: usize) -> Report {
    let mut report = Report::new();
    let t = phi.target_dim;
    let probe = phi.clone().with_split(n);
    for k in 0..phi.key_count() {
        let (ps, u) = phi.decode_key(k);
        if !probe.all_in_fiber(&ps, u) {
            continue;
        }
        let v = &phi.values[k * t..(k + 1) * t];
        report.check("C-tilde", probe.key_labels(&ps, u), v.to_vec(), zeros(t));
    }
    report
}

/// `d(φ) = [π + ρ̄ + ν̄, φ]` for `φ` on `g ⊕ V` valued in `V`.
pub fn differential_d(a: &HomAlgebra, g: &GeneralizedRep, phi: &DenseCochain) -> Result<DenseCochain> {
    let (n, m) = (a.dim(), g.carrier_dim());
    if phi.source_dim != n + m || phi.target_dim != m || g.base_dim() != n {
        return Err(Error::Dimension(format!(
            "cochain {} -> {} for an algebra of dimension {} and carrier {}",
            phi.source_dim, phi.target_dim, n, m
        )));
    }
    require_report(check_c_tilde(phi, n), "C-tilde membership")?;
    let constraint = CompatibilityConstraint::new(a.alpha().block_diag(g.endo()), g.endo().clone())?;
    require_report(constraint.check(phi)?, "compatibility")?;
    let ctx = DContext::new(a, g)?;
    Ok(ctx.apply(phi))
}

/// Lifted structure and twist for repeated applications of `d`.
struct DContext {
    n: usize,
    m: usize,
    lift: DenseCochain,
    alpha_h: Matrix,
}

impl DContext {
    fn new(a: &HomAlgebra, g: &GeneralizedRep) -> Result<Self> {
        Ok(DContext {
            n: a.dim(),
            m: g.carrier_dim(),
            lift: lift_structure(a, g)?,
            alpha_h: a.alpha().block_diag(g.endo()),
        })
    }

    fn apply(&self, phi: &DenseCochain) -> DenseCochain {
        let total = self.n + self.m;
        let lifted = phi.embed_target(total, self.n).with_split(self.n);
        let b = graded_bracket(&self.lift, &lifted, &self.alpha_h).expect("matching shapes");
        b.project_target(self.n, self.m).with_split(self.n)
    }
}

// ---------------------------------------------------------------------------
// Cochain spaces and the linear solver.

/// Which coboundary operator a cohomology computation uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// `δ_ρ` on cochains of `g` (the `ν` part of the representation is ignored).
    Ordinary,
    /// `d` on cochains of `g ⊕ V` vanishing on arguments all in `V`.
    Generalized,
}

/// Spanning set of cochains used as coordinates: degree 0 is `Hom(g, V)`;
/// degree `k ≥ 1` is skew in the last pair and the final slot together (so
/// degree 1 is `∧³ → V`), with every argument-all-in-`V` block removed.
pub fn cochain_space_basis(source_dim: usize, split: usize, target_dim: usize, degree: usize) -> Vec<DenseCochain> {
    let mut out = Vec::new();
    if degree == 0 {
        for u in 0..split {
            for t in 0..target_dim {
                let mut c = DenseCochain::zero(source_dim, target_dim, 0).with_split(split);
                c.set(&[], u, &unit(target_dim, t));
                out.push(c);
            }
        }
        return out;
    }
    let prs = pairs(source_dim);
    let np = prs.len();
    let heads = np.pow((degree - 1) as u32);
    for head in 0..heads {
        let mut hp = vec![0; degree - 1];
        let mut h = head;
        for slot in (0..degree - 1).rev() {
            hp[slot] = h % np;
            h /= np;
        }
        let head_in_fiber = hp.iter().all(|&p| prs[p].0 >= split);
        for a in 0..source_dim {
            for b in a + 1..source_dim {
                for c in b + 1..source_dim {
                    if head_in_fiber && a >= split {
                        continue;
                    }
                    for t in 0..target_dim {
                        let mut x = DenseCochain::zero(source_dim, target_dim, degree).with_split(split);
                        let e = unit(target_dim, t);
                        let ne: Vector = e.iter().map(|v| -v).collect();
                        let mut put = |s: usize, u: usize, last: usize, v: &Vector| {
                            let mut key = hp.clone();
                            key.push(crate::linalg::pair_index(source_dim, s, u));
                            x.set(&key, last, v);
                        };
                        put(a, b, c, &e);
                        put(a, c, b, &ne);
                        put(b, c, a, &e);
                        out.push(x);
                    }
                }
            }
        }
    }
    out
}

/// Kernel of a family of linear maps on the span of `basis`, returned as
/// cochains. `maps` evaluates each constraint on one basis element.
fn solve_kernel<F>(basis: &[DenseCochain], maps: F) -> Vec<DenseCochain>
where
    F: Fn(&DenseCochain) -> Vec<Vector>,
{
    if basis.is_empty() {
        return Vec::new();
    }
    let images: Vec<Vec<Vector>> = basis.iter().map(&maps).collect();
    let cols = basis.len();
    let mut ech = RowEchelon::new(cols);
    for (block, first) in images[0].iter().enumerate() {
        for r in 0..first.len() {
            let row: Vector = images.iter().map(|img| img[block][r].clone()).collect();
            if !is_zero_vec(&row) {
                ech.push(row);
            }
        }
    }
    ech.nullspace()
        .into_iter()
        .map(|coeffs| combine(basis, &coeffs))
        .collect()
}

fn combine(basis: &[DenseCochain], coeffs: &[Scalar]) -> DenseCochain {
    let mut out = DenseCochain {
        values: vec![Scalar::zero(); basis[0].values.len()],
        ..basis[0].clone()
    };
    for (b, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.values.iter_mut().zip(&b.values) {
            if !x.is_zero() {
                *o += c * x;
            }
        }
    }
    out
}

/// Compatible cochains within the span of `basis`.
pub fn compatible_subspace(basis: &[DenseCochain], constraint: &CompatibilityConstraint) -> Result<Vec<DenseCochain>> {
    if let Some(b) = basis.first() {
        constraint.fits(b)?;
    }
    Ok(solve_kernel(basis, |c| vec![constraint.defect(c).expect("fits").values]))
}

fn check_supported(degree: usize, max: usize) -> Result<()> {
    if degree > max {
        return Err(Error::UnsupportedDegree {
            degree,
            reason: format!("supported cochain degrees are 0..={max}"),
        });
    }
    Ok(())
}

/// Basis of the `d`-cocycles of the given cochain degree (number of `∧²`
/// slots: 0 is `Hom(g, V)`, 1 is `∧³(g ⊕ V) → V`), subject to compatibility
/// and vanishing on all-`V` arguments.
pub fn cocycle_space(a: &HomAlgebra, g: &GeneralizedRep, degree: usize) -> Result<Vec<DenseCochain>> {
    check_supported(degree, 2)?;
    let (n, m) = (a.dim(), g.carrier_dim());
    let ctx = DContext::new(a, g)?;
    let constraint = CompatibilityConstraint::new(ctx.alpha_h.clone(), g.endo().clone())?;
    let basis = cochain_space_basis(n + m, n, m, degree);
    Ok(solve_kernel(&basis, |c| {
        vec![constraint.defect(c).expect("fits").values, ctx.apply(c).values]
    }))
}

/// `δ_ρ`-cocycles on `g` of the given cochain degree, subject to compatibility.
pub fn ordinary_cocycle_space(a: &HomAlgebra, r: &Representation, degree: usize) -> Result<Vec<DenseCochain>> {
    check_supported(degree, 2)?;
    let (n, m) = (a.dim(), r.carrier_dim());
    let constraint = CompatibilityConstraint::new(a.alpha().clone(), r.endo().clone())?;
    let basis = cochain_space_basis(n, n, m, degree);
    Ok(solve_kernel(&basis, |c| {
        vec![constraint.defect(c).expect("fits").values, delta_rho_unchecked(a, r, c).values]
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CohomologyDims {
    pub cocycles: usize,
    pub coboundaries: usize,
    pub cohomology: usize,
}

/// `(dim Z^p, dim B^p, dim H^p)` for `p ∈ {1, 2, 3}`: `p`-cocycles are
/// cochains with `p − 1` pair slots and `p`-coboundaries are images of
/// compatible cochains with `p − 2` pair slots.
pub fn cohomology_dims(a: &HomAlgebra, g: &GeneralizedRep, p: usize, flavor: Flavor) -> Result<CohomologyDims> {
    if p == 0 || p > 3 {
        return Err(Error::UnsupportedDegree {
            degree: p,
            reason: "cohomology is computed for p in 1..=3".into(),
        });
    }
    let (n, m) = (a.dim(), g.carrier_dim());
    let (z, b) = match flavor {
        Flavor::Generalized => {
            require_report(validate_generalized_rep(a, g), "valid generalized representation")?;
            let z = cocycle_space(a, g, p - 1)?.len();
            let b = if p == 1 {
                0
            } else {
                let ctx = DContext::new(a, g)?;
                let constraint = CompatibilityConstraint::new(ctx.alpha_h.clone(), g.endo().clone())?;
                let lower = compatible_subspace(&cochain_space_basis(n + m, n, m, p - 2), &constraint)?;
                image_rank(lower.iter().map(|c| ctx.apply(c)))
            };
            (z, b)
        }
        Flavor::Ordinary => {
            let r = g.ordinary();
            require_report(validate_representation(a, &r), "valid representation")?;
            let z = ordinary_cocycle_space(a, &r, p - 1)?.len();
            let b = if p == 1 {
                0
            } else {
                let constraint = CompatibilityConstraint::new(a.alpha().clone(), r.endo().clone())?;
                let lower = compatible_subspace(&cochain_space_basis(n, n, m, p - 2), &constraint)?;
                image_rank(lower.iter().map(|c| delta_rho_unchecked(a, &r, c)))
            };
            (z, b)
        }
    };
    if b > z {
        return Err(Error::Precondition {
            condition: "coboundaries inside cocycles".into(),
            witness: format!("p = {p}"),
            detail: format!("dim B = {b} exceeds dim Z = {z}"),
        });
    }
    Ok(CohomologyDims {
        cocycles: z,
        coboundaries: b,
        cohomology: z - b,
    })
}

fn image_rank(images: impl Iterator<Item = DenseCochain>) -> usize {
    let mut ech: Option<RowEchelon> = None;
    for c in images {
        let e = ech.get_or_insert_with(|| RowEchelon::new(c.values.len()));
        e.push(c.values);
    }
    ech.map_or(0, |e| e.rank())
}

// ---------------------------------------------------------------------------

/// A degree-1 cochain on `g ⊕ V` valued in `V` in the form
/// `φ₁ + φ₂ + φ₃` with `φ₁ ∈ Hom(∧²V ∧ g, V)`, `φ₂ ∈ Hom(∧²g ∧ V, V)` and
/// `φ₃ ∈ Hom(∧³g, V)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentCochain2 {
    base_dim: usize,
    carrier_dim: usize,
    /// `φ₁(v_a, v_b, x)` keyed by `(a, b, x)` with `a < b`.
    pub phi1: std::collections::BTreeMap<(usize, usize, usize), Vector>,
    /// `φ₂(x, y, v)` keyed by `(x, y, v)` with `x < y`.
    pub phi2: std::collections::BTreeMap<(usize, usize, usize), Vector>,
    /// `φ₃(x, y, z)` keyed by `(x, y, z)` with `x < y < z`.
    pub phi3: std::collections::BTreeMap<(usize, usize, usize), Vector>,
}

impl ComponentCochain2 {
    pub fn zero(base_dim: usize, carrier_dim: usize) -> Self {
        ComponentCochain2 {
            base_dim,
            carrier_dim,
            phi1: Default::default(),
            phi2: Default::default(),
            phi3: Default::default(),
        }
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn carrier_dim(&self) -> usize {
        self.carrier_dim
    }

    fn get(map: &std::collections::BTreeMap<(usize, usize, usize), Vector>, key: (usize, usize, usize), m: usize) -> Vector {
        map.get(&key).cloned().unwrap_or_else(|| zeros(m))
    }

    /// `φ₁(v_a, v_b, x)`, skew in `(a, b)`.
    pub fn phi1_at(&self, a: usize, b: usize, x: usize) -> Vector {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Self::get(&self.phi1, (a, b, x), self.carrier_dim),
            std::cmp::Ordering::Greater => Self::get(&self.phi1, (b, a, x), self.carrier_dim).iter().map(|v| -v).collect(),
            std::cmp::Ordering::Equal => zeros(self.carrier_dim),
        }
    }

    /// `φ₂(x, y, v)`, skew in `(x, y)`.
    pub fn phi2_at(&self, x: usize, y: usize, v: usize) -> Vector {
        match x.cmp(&y) {
            std::cmp::Ordering::Less => Self::get(&self.phi2, (x, y, v), self.carrier_dim),
            std::cmp::Ordering::Greater => Self::get(&self.phi2, (y, x, v), self.carrier_dim).iter().map(|w| -w).collect(),
            std::cmp::Ordering::Equal => zeros(self.carrier_dim),
        }
    }

    /// `φ₃(x, y, z)`, fully skew.
    pub fn phi3_at(&self, x: usize, y: usize, z: usize) -> Vector {
        let mut k = [x, y, z];
        match crate::linalg::sort_sign(&mut k) {
            None => zeros(self.carrier_dim),
            Some(neg) => {
                let v = Self::get(&self.phi3, (k[0], k[1], k[2]), self.carrier_dim);
                if neg {
                    v.iter().map(|w| -w).collect()
                } else {
                    v
                }
            }
        }
    }

    /// Fully skew dense cochain on `g ⊕ V`.
    pub fn to_dense(&self) -> DenseCochain {
        let (n, m) = (self.base_dim, self.carrier_dim);
        let mut t = SkewTensor3::zero(n + m, m);
        for (&(a, b, x), v) in &self.phi1 {
            t.set(n + a, n + b, x, v.clone()).expect("distinct");
        }
        for (&(x, y, v), w) in &self.phi2 {
            t.set(x, y, n + v, w.clone()).expect("distinct");
        }
        for (&(x, y, z), w) in &self.phi3 {
            t.set(x, y, z, w.clone()).expect("distinct");
        }
        cochain_of_bracket(&t).with_split(n)
    }

    /// Reads the three components off a degree-1 dense cochain.
    pub fn from_dense(c: &DenseCochain, base_dim: usize) -> Result<Self> {
        if c.degree != 1 || c.source_dim < base_dim {
            return Err(Error::Dimension("expected a degree-1 cochain on g ⊕ V".into()));
        }
        let n = base_dim;
        let m = c.source_dim - n;
        if c.target_dim != m {
            return Err(Error::Dimension("cochain is not valued in the carrier".into()));
        }
        let mut out = ComponentCochain2::zero(n, m);
        let put = |map: &mut std::collections::BTreeMap<(usize, usize, usize), Vector>, key, v: Vector| {
            if !is_zero_vec(&v) {
                map.insert(key, v);
            }
        };
        for a in 0..m {
            for b in a + 1..m {
                for x in 0..n {
                    put(&mut out.phi1, (a, b, x), c.eval_basis(&[(n + a, n + b)], x));
                }
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                for v in 0..m {
                    put(&mut out.phi2, (x, y, v), c.eval_basis(&[(x, y)], n + v));
                }
                for z in y + 1..n {
                    put(&mut out.phi3, (x, y, z), c.eval_basis(&[(x, y)], z));
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{adjoint_rep, twist_algebra, validate_hom_algebra};
    use crate::linalg::{int, pair_index};

    fn fix_a(lambda: i64) -> HomAlgebra {
        let mut t = SkewTensor3::zero(3, 3);
        t.set(0, 1, 2, unit(3, 0)).unwrap();
        twist_algebra(&t, &Matrix::diagonal(&[int(lambda), int(1), int(1)])).unwrap()
    }

    #[test]
    fn shuffle_signs() {
        let s = shuffles(3, 1);
        assert_eq!(s.len(), 3);
        assert_eq!(s[0], (vec![0], vec![1, 2], false));
        assert_eq!(s[1], (vec![1], vec![0, 2], true));
        assert_eq!(s[2], (vec![2], vec![0, 1], false));
        assert_eq!(shuffles(2, 0), vec![(vec![], vec![0, 1], false)]);
        assert_eq!(shuffles(2, 2), vec![(vec![0, 1], vec![], false)]);
    }

    #[test]
    fn degree_zero_composition_is_derivation_like() {
        // n = 2, φ degree 1, ψ = identity map of degree 0, α = id:
        // φ∘ψ(x∧y, z) = φ(ψx∧y + x∧ψy, z) + φ(x∧y, ψz) = 3 φ(x∧y, z)
        let mut phi = DenseCochain::zero(2, 2, 1);
        phi.set(&[0], 0, &[int(1), int(2)]);
        phi.set(&[0], 1, &[int(-1), int(5)]);
        let mut psi = DenseCochain::zero(2, 2, 0);
        psi.set(&[], 0, &unit(2, 0));
        psi.set(&[], 1, &unit(2, 1));
        let c = graded_compose(&phi, &psi, &Matrix::identity(2)).unwrap();
        assert_eq!(c, phi.scaled(&int(3)));
        // ψ∘φ = ψ(φ(X, x)) = φ
        assert_eq!(graded_compose(&psi, &phi, &Matrix::identity(2)).unwrap(), phi);
    }

    #[test]
    fn zero_composition() {
        let a = fix_a(3);
        let pi = cochain_of_bracket(a.bracket());
        let z = DenseCochain::zero(3, 3, 1);
        assert!(graded_compose(&z, &pi, a.alpha()).unwrap().is_zero());
        assert!(graded_bracket(&pi, &DenseCochain::zero(3, 3, 2), a.alpha()).unwrap().is_zero());
    }

    #[test]
    fn square_of_structure_is_minus_twice_composition() {
        let a = fix_a(3);
        let pi = cochain_of_bracket(a.bracket());
        let sq = graded_bracket(&pi, &pi, a.alpha()).unwrap();
        let c = graded_compose(&pi, &pi, a.alpha()).unwrap();
        assert_eq!(sq, c.scaled(&int(-2)));
        assert!(sq.is_zero());
        assert!(is_canonical(&pi, a.alpha()).passed());
    }

    #[test]
    fn canonical_matches_validation_on_perturbation() {
        let a = fix_a(3);
        let mut t = a.bracket().clone();
        t.set(0, 1, 2, vec![int(3), int(1), int(0)]).unwrap();
        let bad = HomAlgebra::new(t, a.alpha().clone()).unwrap();
        let pi = cochain_of_bracket(bad.bracket());
        assert_eq!(is_canonical(&pi, bad.alpha()).passed(), validate_hom_algebra(&bad).passed());
        assert!(!is_canonical(&pi, bad.alpha()).passed());
    }

    #[test]
    fn lift_values() {
        let a = fix_a(3);
        let r = adjoint_rep(&a).unwrap().generalized();
        let s = lift_structure(&a, &r).unwrap();
        for w in 0..3 {
            let mut expect = zeros(6);
            expect[3..].clone_from_slice(&r.act(0, 1).column(w));
            assert_eq!(s.eval_basis(&[(0, 1)], 3 + w), expect);
        }
        assert!(is_zero_vec(&s.eval_basis(&[(3, 4)], 5)));
        assert!(is_canonical(&s, &a.alpha().block_diag(r.endo())).passed());
    }

    #[test]
    fn delta_degree_zero_matches_expansion_for_identity_twist() {
        let mut t = SkewTensor3::zero(3, 3);
        t.set(0, 1, 2, unit(3, 0)).unwrap();
        let a = HomAlgebra::untwisted(t).unwrap();
        let r = adjoint_rep(&a).unwrap();
        let mut phi = DenseCochain::zero(3, 3, 0);
        phi.set(&[], 0, &[int(1), int(2), int(0)]);
        phi.set(&[], 2, &[int(0), int(-1), int(4)]);
        let d = delta_rho(&a, &r, &phi).unwrap();
        let e: Vec<Vector> = (0..3).map(|i| unit(3, i)).collect();
        for (x1, x2) in pairs(3) {
            for x3 in 0..3 {
                let f = |i: usize| phi.value(&[], i).to_vec();
                let mut expect = r.act(x1, x2).apply(&f(x3));
                expect = crate::linalg::add(&expect, &r.act(x2, x3).apply(&f(x1)));
                expect = crate::linalg::add(&expect, &r.act(x3, x1).apply(&f(x2)));
                expect = crate::linalg::sub(&expect, &phi.eval(&[], &a.br(&e[x1], &e[x2], &e[x3])));
                assert_eq!(d.value(&[pair_index(3, x1, x2)], x3), expect.as_slice());
            }
        }
        assert!(delta_rho(&a, &r, &DenseCochain::zero(3, 3, 1)).unwrap().is_zero());
    }

    #[test]
    fn delta_rejects_incompatible_cochain() {
        let a = fix_a(3);
        let r = adjoint_rep(&a).unwrap();
        let mut phi = DenseCochain::zero(3, 3, 0);
        phi.set(&[], 1, &unit(3, 0));
        assert!(matches!(delta_rho(&a, &r, &phi), Err(Error::Precondition { .. })));
    }

    #[test]
    fn component_roundtrip() {
        let mut c = ComponentCochain2::zero(3, 2);
        c.phi1.insert((0, 1, 2), vec![int(1), int(-1)]);
        c.phi2.insert((0, 2, 1), vec![int(3), int(0)]);
        c.phi3.insert((0, 1, 2), vec![int(0), int(7)]);
        let d = c.to_dense();
        assert_eq!(ComponentCochain2::from_dense(&d, 3).unwrap(), c);
        assert_eq!(d.eval_basis(&[(2, 0)], 4), vec![int(-3), int(0)]);
        assert_eq!(d.eval_basis(&[(4, 0)], 2), vec![int(3), int(0)]);
    }

    #[test]
    fn space_basis_sizes() {
        // ∧³ of a 5-dim space minus ∧³ of the 2-dim fiber, times 2 targets
        assert_eq!(cochain_space_basis(5, 3, 2, 1).len(), 20);
        assert_eq!(cochain_space_basis(5, 3, 2, 0).len(), 6);
        // fiber of dim 3: ∧³V is removed
        assert_eq!(cochain_space_basis(4, 1, 1, 1).len(), 3);
    }

    #[test]
    fn abelian_degree_zero_is_everything() {
        let a = HomAlgebra::abelian(2, Matrix::zeros(2, 2)).unwrap();
        let g = GeneralizedRep::zero(2, 3, Matrix::zeros(3, 3)).unwrap();
        assert_eq!(cocycle_space(&a, &g, 0).unwrap().len(), 6);
        assert!(matches!(cocycle_space(&a, &g, 3), Err(Error::UnsupportedDegree { .. })));
    }

    #[test]
    fn zero_algebra_cohomology() {
        let a = HomAlgebra::abelian(2, Matrix::identity(2)).unwrap();
        let g = GeneralizedRep::zero(2, 1, Matrix::identity(1)).unwrap();
        let dims = cohomology_dims(&a, &g, 2, Flavor::Generalized).unwrap();
        assert_eq!(dims.coboundaries, 0);
        assert_eq!(dims.cocycles, cochain_space_basis(3, 2, 1, 1).len());
        assert_eq!(dims.cohomology, dims.cocycles);
    }
}
