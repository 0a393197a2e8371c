//! Dense matrices and subspaces over a small prime field.
//!
//! Entries are stored as reduced residues in row-major order. Subspaces are
//! kept as reduced row-echelon bases so that equality of subspaces is a plain
//! comparison of bytes.

use std::fmt;

use crate::error::{Error, Result};

/// The prime field GF(p), p ∈ {2, 3}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field(u8);

impl Field {
    pub const GF2: Field = Field(2);
    pub const GF3: Field = Field(3);

    pub fn new(p: u32) -> Result<Self> {
        match p {
            2 => Ok(Self::GF2),
            3 => Ok(Self::GF3),
            other => Err(Error::UnsupportedField(other)),
        }
    }

    #[inline]
    pub fn p(self) -> u8 {
        self.0
    }

    /// Reduces an arbitrary integer into `0..p`.
    #[inline]
    pub fn reduce(self, x: i64) -> u8 {
        x.rem_euclid(self.0 as i64) as u8
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        (a * b) % self.0
    }

    /// Multiplicative inverse. Both supported fields are self-inverse on units.
    #[inline]
    pub fn inv(self, a: u8) -> u8 {
        debug_assert!(a != 0, "inverse of zero");
        a
    }

    /// All elements of the field, `0..p`.
    pub fn elements(self) -> impl Iterator<Item = u8> {
        0..self.0
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ";")?;
            }
            for c in 0..self.cols {
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    pub fn from_rows(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Self {
            field,
            rows,
            cols,
            data: entries.iter().map(|&x| field.reduce(x)).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b != 0 {
                        let cur = out.get(i, j);
                        out.set(i, j, f.add(cur, f.mul(a, b)));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in sum");
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Matrix {
        self.scale(self.field.neg(1))
    }

    pub fn scale(&self, s: u8) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, s)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows);
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..rhs.cols {
                out.set(r, self.cols + c, rhs.get(r, c));
            }
        }
        out
    }

    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Matrix {
            field: self.field,
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    /// Rows `start..end`.
    pub fn row_block(&self, start: usize, end: usize) -> Matrix {
        Matrix {
            field: self.field,
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    /// Columns `start..end`.
    pub fn col_block(&self, start: usize, end: usize) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, end - start);
        for r in 0..self.rows {
            for c in start..end {
                out.set(r, c - start, self.get(r, c));
            }
        }
        out
    }

    /// Selects the given columns in order.
    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    /// Reduced row-echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(pr) = (lead..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            if pr != lead {
                for k in 0..self.cols {
                    self.data.swap(pr * self.cols + k, lead * self.cols + k);
                }
            }
            let inv = f.inv(self.get(lead, c));
            if inv != 1 {
                for k in 0..self.cols {
                    let v = self.get(lead, k);
                    self.set(lead, k, f.mul(v, inv));
                }
            }
            for r in 0..self.rows {
                if r == lead {
                    continue;
                }
                let factor = self.get(r, c);
                if factor == 0 {
                    continue;
                }
                for k in c..self.cols {
                    let v = f.sub(self.get(r, k), f.mul(factor, self.get(lead, k)));
                    self.set(r, k, v);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, returned as the columns of a matrix.
    pub fn kernel(&self) -> Matrix {
        let f = self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            out.set(fc, j, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                out.set(pc, j, f.neg(r.get(i, fc)));
            }
        }
        out
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&Matrix::identity(self.field, n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.col_block(n, 2 * n))
    }

    /// Basis of the column space as a canonical subspace of `F^rows`.
    pub fn column_space(&self) -> Subspace {
        Subspace::from_rows(self.transpose())
    }
}

/// A subspace of `F^d`, stored as a reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    dim: usize,
    /// `dim × ambient` entries of the reduced basis, row-major.
    basis: Vec<u8>,
    pivots: Vec<usize>,
    field: Field,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Self {
            ambient,
            dim: 0,
            basis: Vec::new(),
            pivots: Vec::new(),
            field,
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Self::from_rows(Matrix::identity(field, ambient))
    }

    /// Span of the rows of `m`.
    pub fn from_rows(m: Matrix) -> Self {
        let field = m.field();
        let ambient = m.cols();
        let (r, pivots) = m.rref();
        let dim = pivots.len();
        Self {
            ambient,
            dim,
            basis: r.data[..dim * ambient].to_vec(),
            pivots,
            field,
        }
    }

    /// Span of the columns of `m`.
    pub fn from_cols(m: &Matrix) -> Self {
        Self::from_rows(m.transpose())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The reduced basis as rows.
    pub fn basis_rows(&self) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.dim,
            cols: self.ambient,
            data: self.basis.clone(),
        }
    }

    /// The reduced basis as columns (`ambient × dim`).
    pub fn basis_cols(&self) -> Matrix {
        self.basis_rows().transpose()
    }

    /// Standard unit vectors at the non-pivot positions, as columns; together
    /// with the basis they span the ambient space.
    pub fn complement_cols(&self) -> Matrix {
        let free: Vec<usize> = (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect();
        let mut m = Matrix::zeros(self.field, self.ambient, free.len());
        for (j, &c) in free.iter().enumerate() {
            m.set(c, j, 1);
        }
        m
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &mut [u8]) {
        let f = self.field;
        for (i, &pc) in self.pivots.iter().enumerate() {
            let factor = v[pc];
            if factor == 0 {
                continue;
            }
            let row = &self.basis[i * self.ambient..(i + 1) * self.ambient];
            for k in 0..self.ambient {
                v[k] = f.sub(v[k], f.mul(factor, row[k]));
            }
        }
    }

    pub fn contains_vec(&self, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        if other.dim > self.dim {
            return false;
        }
        (0..other.dim).all(|i| self.contains_vec(&other.basis[i * other.ambient..(i + 1) * other.ambient]))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::from_rows(self.basis_rows().vstack(&other.basis_rows()))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.dim == 0 || other.dim == 0 {
            return Subspace::zero(self.field, self.ambient);
        }
        // x·A = y·B  ⇔  [x, -y]·[A; B] = 0
        let stacked = self.basis_rows().vstack(&other.basis_rows().neg());
        let k = stacked.transpose().kernel();
        let coeffs = k.row_block(0, self.dim).transpose();
        Subspace::from_rows(coeffs.mul(&self.basis_rows()))
    }

    /// Image of the subspace under `m` (acting on column vectors).
    pub fn image(&self, m: &Matrix) -> Subspace {
        Subspace::from_cols(&m.mul(&self.basis_cols()))
    }
}

/// All subspaces of `F^d`, ordered by dimension and then by basis bytes.
pub fn all_subspaces(field: Field, d: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    for k in 0..=d {
        for pivots in combinations(d, k) {
            // free entries: for each row i, columns c > pivots[i] that are not pivots
            let slots: Vec<(usize, usize)> = (0..k)
                .flat_map(|i| {
                    let pv = pivots.clone();
                    ((pivots[i] + 1)..d)
                        .filter(move |c| !pv.contains(c))
                        .map(move |c| (i, c))
                })
                .collect();
            let p = field.p() as usize;
            let total = p.pow(slots.len() as u32);
            for code in 0..total {
                let mut m = Matrix::zeros(field, k, d);
                for (i, &pc) in pivots.iter().enumerate() {
                    m.set(i, pc, 1);
                }
                let mut x = code;
                for &(i, c) in &slots {
                    m.set(i, c, (x % p) as u8);
                    x /= p;
                }
                out.push(Subspace {
                    ambient: d,
                    dim: k,
                    basis: m.data.clone(),
                    pivots: pivots.clone(),
                    field,
                });
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
