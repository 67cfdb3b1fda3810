//! Exact rational scalars, dense matrices and skew tensors.
//!
//! Matrices follow the column convention everywhere: column `j` holds the
//! image of basis vector `j`.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;
pub type Vector = Vec<Scalar>;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `n/d` reduced. Panics when `d == 0`.
pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn zeros(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += c * b;
        }
    }
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

pub fn fmt_scalar(s: &Scalar) -> String {
    if s.is_integer() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

pub fn fmt_vector(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_scalar).collect();
    format!("({})", parts.join(", "))
}

// ---------------------------------------------------------------------------
// Pair indexing for the canonical basis of the exterior square.

/// Number of canonical pairs `s < t` below `n`.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of the pair `(s, t)`, `s < t < n`, in lexicographic order.
pub fn pair_index(n: usize, s: usize, t: usize) -> usize {
    debug_assert!(s < t && t < n);
    s * (2 * n - s - 1) / 2 + (t - s - 1)
}

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(pair_count(n));
    for s in 0..n {
        for t in s + 1..n {
            out.push((s, t));
        }
    }
    out
}

/// Canonical index and sign of the (possibly unordered) pair `(i, j)`;
/// `None` when `i == j`.
pub fn signed_pair(n: usize, i: usize, j: usize) -> Option<(usize, bool)> {
    match i.cmp(&j) {
        std::cmp::Ordering::Less => Some((pair_index(n, i, j), false)),
        std::cmp::Ordering::Greater => Some((pair_index(n, j, i), true)),
        std::cmp::Ordering::Equal => None,
    }
}

/// Coordinates of `x ∧ y` in the canonical pair basis.
pub fn wedge(x: &[Scalar], y: &[Scalar]) -> Vector {
    let n = x.len();
    let mut out = zeros(pair_count(n));
    let mut k = 0;
    for s in 0..n {
        for t in s + 1..n {
            let c = &x[s] * &y[t] - &x[t] * &y[s];
            out[k] = c;
            k += 1;
        }
    }
    out
}

/// Sign of the permutation sorting `idx` (all entries distinct), or `None`
/// on a repeated entry.
pub fn sort_sign(idx: &mut [usize]) -> Option<bool> {
    let mut neg = false;
    for i in 0..idx.len() {
        for j in 0..idx.len() - 1 - i {
            if idx[j] == idx[j + 1] {
                return None;
            }
            if idx[j] > idx[j + 1] {
                idx.swap(j, j + 1);
                neg = !neg;
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(neg)
}

// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn diagonal(d: &[Scalar]) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in d.iter().enumerate() {
            m.data[i * n + i] = x.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a `rows × cols.len()` matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vector]) -> Result<Self> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::Dimension(format!(
                    "column {} has length {}, expected {}",
                    j,
                    c.len(),
                    rows
                )));
            }
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    /// Matrix-vector product; panics on a length mismatch (use [`mat_apply`]
    /// for the checked form).
    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        let mut out = zeros(self.rows);
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = &self.data[i * self.cols + j];
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: add(&self.data, &other.data),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: sub(&self.data, &other.data),
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: scale(c, &self.data),
        }
    }

    pub fn pow(&self, k: usize) -> Matrix {
        assert!(self.is_square());
        let mut out = Matrix::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows)
    }

    /// `[[self, 0], [0, other]]`
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Induced map on the exterior square: `x ∧ y ↦ Mx ∧ My`.
    pub fn wedge_square(&self) -> Matrix {
        assert!(self.is_square());
        let n = self.rows;
        let cols: Vec<Vector> = pairs(n)
            .into_iter()
            .map(|(s, t)| wedge(&self.column(s), &self.column(t)))
            .collect();
        Matrix::from_columns(pair_count(n), &cols).expect("square input")
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one());
        }
        let pivots = rref(&mut aug);
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(out)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows).map(|i| fmt_vector(self.row(i))).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Checked matrix-vector product.
pub fn mat_apply(m: &Matrix, v: &[Scalar]) -> Result<Vector> {
    if v.len() != m.cols {
        return Err(Error::Dimension(format!(
            "vector of length {} applied to a {}x{} matrix",
            v.len(),
            m.rows,
            m.cols
        )));
    }
    Ok(m.apply(v))
}

/// Reduces `m` in place to reduced row echelon form; returns pivot columns.
fn rref(m: &mut Matrix) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = m.get(r, c).recip();
        for j in c..cols {
            let x = &m.data[r * cols + j] * &inv;
            m.data[r * cols + j] = x;
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                let rv = &m.data[r * cols + j];
                if rv.is_zero() {
                    continue;
                }
                let x = &f * rv;
                m.data[i * cols + j] -= x;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut w = m.clone();
    rref(&mut w).len()
}

/// Basis of `{v : m v = 0}`. Each basis vector sets one free column to 1 and
/// the other free columns to 0, in increasing order of the free column.
pub fn nullspace(m: &Matrix) -> Vec<Vector> {
    let mut w = m.clone();
    let pivots = rref(&mut w);
    let cols = m.cols;
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = zeros(cols);
        v[free] = Scalar::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -w.get(r, free).clone();
        }
        basis.push(v);
    }
    basis
}

/// Incrementally built row echelon form; rows are fed one at a time so large
/// sparse constraint systems never need to be materialized.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    cols: usize,
    rows: BTreeMap<usize, Vector>,
}

impl RowEchelon {
    pub fn new(cols: usize) -> Self {
        RowEchelon {
            cols,
            rows: BTreeMap::new(),
        }
    }

    /// Adds a row; returns `true` when it was independent of earlier rows.
    pub fn push(&mut self, mut row: Vector) -> bool {
        assert_eq!(row.len(), self.cols);
        let mut start = 0;
        loop {
            let Some(c) = (start..self.cols).find(|&c| !row[c].is_zero()) else {
                return false;
            };
            match self.rows.get(&c) {
                Some(pivot_row) => {
                    let f = row[c].clone();
                    for j in c..self.cols {
                        if !pivot_row[j].is_zero() {
                            let x = &f * &pivot_row[j];
                            row[j] -= x;
                        }
                    }
                    start = c + 1;
                }
                None => {
                    let inv = row[c].recip();
                    for x in row.iter_mut().skip(c) {
                        if !x.is_zero() {
                            *x *= &inv;
                        }
                    }
                    self.rows.insert(c, row);
                    return true;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Same canonical kernel basis as [`nullspace`].
    pub fn nullspace(&self) -> Vec<Vector> {
        let rows: Vec<Vector> = self.rows.values().cloned().collect();
        if rows.is_empty() {
            return (0..self.cols).map(|i| unit(self.cols, i)).collect();
        }
        nullspace(&Matrix::from_rows(rows).expect("equal-length rows"))
    }
}

/// Rank of the span of a list of vectors of equal length.
pub fn span_rank(vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let m = Matrix::from_rows(vectors.to_vec()).expect("equal-length vectors");
    rank(&m)
}

// ---------------------------------------------------------------------------

/// Skew-symmetric trilinear map `K^dim × K^dim × K^dim → K^target_dim`
/// stored on strictly increasing index triples.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkewTensor3 {
    dim: usize,
    target_dim: usize,
    cells: BTreeMap<[usize; 3], Vector>,
}

impl SkewTensor3 {
    pub fn zero(dim: usize, target_dim: usize) -> Self {
        SkewTensor3 {
            dim,
            target_dim,
            cells: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    fn check(&self, idx: &[usize]) -> Result<()> {
        for &i in idx {
            if i >= self.dim {
                return Err(Error::IndexOutOfRange { index: i, dim: self.dim });
            }
        }
        Ok(())
    }

    /// Stores `value` at `(i, j, k)`, sign-adjusted to the canonical order.
    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Vector) -> Result<()> {
        self.check(&[i, j, k])?;
        if value.len() != self.target_dim {
            return Err(Error::Dimension(format!(
                "cell value of length {}, expected {}",
                value.len(),
                self.target_dim
            )));
        }
        let mut key = [i, j, k];
        let neg = sort_sign(&mut key)
            .ok_or_else(|| Error::Input(format!("repeated index in ({i}, {j}, {k})")))?;
        let value = if neg { value.iter().map(|x| -x).collect() } else { value };
        if is_zero_vec(&value) {
            self.cells.remove(&key);
        } else {
            self.cells.insert(key, value);
        }
        Ok(())
    }

    /// Sign-extended lookup at basis indices.
    pub fn get(&self, i: usize, j: usize, k: usize) -> Vector {
        let mut key = [i, j, k];
        match sort_sign(&mut key) {
            None => zeros(self.target_dim),
            Some(neg) => match self.cells.get(&key) {
                None => zeros(self.target_dim),
                Some(v) if neg => v.iter().map(|x| -x).collect(),
                Some(v) => v.clone(),
            },
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = (&[usize; 3], &Vector)> {
        self.cells.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.cells.is_empty()
    }

    /// Trilinear evaluation on arbitrary coordinate vectors.
    pub fn eval(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        let mut out = zeros(self.target_dim);
        for ([i, j, k], v) in &self.cells {
            let (i, j, k) = (*i, *j, *k);
            let c = &x[i] * (&y[j] * &z[k] - &y[k] * &z[j])
                - &x[j] * (&y[i] * &z[k] - &y[k] * &z[i])
                + &x[k] * (&y[i] * &z[j] - &y[j] * &z[i]);
            axpy(&mut out, &c, v);
        }
        out
    }

    /// `m ∘ t`
    pub fn map_values(&self, m: &Matrix) -> SkewTensor3 {
        assert_eq!(m.cols(), self.target_dim);
        let mut out = SkewTensor3::zero(self.dim, m.rows());
        for (key, v) in &self.cells {
            let w = m.apply(v);
            if !is_zero_vec(&w) {
                out.cells.insert(*key, w);
            }
        }
        out
    }

    /// `t ∘ m^{⊗3}`
    pub fn pull_back(&self, m: &Matrix) -> SkewTensor3 {
        assert_eq!(m.rows(), self.dim);
        assert!(m.is_square());
        let cols: Vec<Vector> = (0..self.dim).map(|j| m.column(j)).collect();
        let mut out = SkewTensor3::zero(self.dim, self.target_dim);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let v = self.eval(&cols[i], &cols[j], &cols[k]);
                    if !is_zero_vec(&v) {
                        out.cells.insert([i, j, k], v);
                    }
                }
            }
        }
        out
    }
}

/// Checked sign-extended lookup.
pub fn skew_lookup(t: &SkewTensor3, i: usize, j: usize, k: usize) -> Result<Vector> {
    t.check(&[i, j, k])?;
    Ok(t.get(i, j, k))
}

/// Skew-symmetric bilinear map `K^dim × K^dim → K^target_dim` stored on
/// pairs `a < b`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkewTensor2 {
    dim: usize,
    target_dim: usize,
    cells: BTreeMap<(usize, usize), Vector>,
}

impl SkewTensor2 {
    pub fn zero(dim: usize, target_dim: usize) -> Self {
        SkewTensor2 {
            dim,
            target_dim,
            cells: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn set(&mut self, a: usize, b: usize, value: Vector) -> Result<()> {
        if a >= self.dim || b >= self.dim {
            return Err(Error::IndexOutOfRange { index: a.max(b), dim: self.dim });
        }
        if value.len() != self.target_dim {
            return Err(Error::Dimension(format!(
                "cell value of length {}, expected {}",
                value.len(),
                self.target_dim
            )));
        }
        if a == b {
            return Err(Error::Input(format!("repeated index in ({a}, {b})")));
        }
        let (key, value) = if a < b {
            ((a, b), value)
        } else {
            ((b, a), value.iter().map(|x| -x).collect())
        };
        if is_zero_vec(&value) {
            self.cells.remove(&key);
        } else {
            self.cells.insert(key, value);
        }
        Ok(())
    }

    pub fn get(&self, a: usize, b: usize) -> Vector {
        if a == b {
            return zeros(self.target_dim);
        }
        let (key, neg) = if a < b { ((a, b), false) } else { ((b, a), true) };
        match self.cells.get(&key) {
            None => zeros(self.target_dim),
            Some(v) if neg => v.iter().map(|x| -x).collect(),
            Some(v) => v.clone(),
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = (&(usize, usize), &Vector)> {
        self.cells.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn eval(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        let mut out = zeros(self.target_dim);
        for ((a, b), w) in &self.cells {
            let c = &u[*a] * &v[*b] - &u[*b] * &v[*a];
            axpy(&mut out, &c, w);
        }
        out
    }

    /// `m ∘ t`
    pub fn map_values(&self, m: &Matrix) -> SkewTensor2 {
        let mut out = SkewTensor2::zero(self.dim, m.rows());
        for (key, v) in &self.cells {
            let w = m.apply(v);
            if !is_zero_vec(&w) {
                out.cells.insert(*key, w);
            }
        }
        out
    }

    /// `t ∘ m^{⊗2}`
    pub fn pull_back(&self, m: &Matrix) -> SkewTensor2 {
        let cols: Vec<Vector> = (0..self.dim).map(|j| m.column(j)).collect();
        let mut out = SkewTensor2::zero(self.dim, self.target_dim);
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                let v = self.eval(&cols[a], &cols[b]);
                if !is_zero_vec(&v) {
                    out.cells.insert((a, b), v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &SkewTensor2) -> SkewTensor2 {
        let mut out = self.clone();
        for (key, v) in &other.cells {
            let w = match out.cells.get(key) {
                Some(x) => add(x, v),
                None => v.clone(),
            };
            if is_zero_vec(&w) {
                out.cells.remove(key);
            } else {
                out.cells.insert(*key, w);
            }
        }
        out
    }

    pub fn scaled(&self, c: &Scalar) -> SkewTensor2 {
        let mut out = SkewTensor2::zero(self.dim, self.target_dim);
        if c.is_zero() {
            return out;
        }
        for (key, v) in &self.cells {
            out.cells.insert(*key, scale(c, v));
        }
        out
    }
}

pub fn abs_max(v: &[Scalar]) -> Scalar {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Scalar::zero)
}
