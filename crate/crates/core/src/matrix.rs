//! Dense row-major matrices over a [`Ring`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::ring::Ring;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}; {}x{}](", self.ring, self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "[{}x{} empty]", self.rows, self.cols);
        }
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "[{} ]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Matrix {
        Matrix { ring, rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(ring: Ring, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = ring.from_i64(1);
        }
        m
    }

    /// Builds a matrix from row-major entries, reducing them into the ring.
    pub fn from_vec(ring: Ring, rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Matrix> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let entries = entries.into_iter().map(|x| ring.reduce(x)).collect();
        Ok(Matrix { ring, rows, cols, entries })
    }

    /// Convenience constructor from small integers; panics on ragged input.
    pub fn from_rows(ring: Ring, rows: &[Vec<i64>]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        let entries = rows.iter().flatten().map(|&x| ring.from_i64(x)).collect();
        Matrix { ring, rows: r, cols: c, entries }
    }

    pub fn from_columns(ring: Ring, rows: usize, columns: &[Vec<BigInt>]) -> Matrix {
        let mut m = Matrix::zeros(ring, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn column_vector(ring: Ring, v: &[BigInt]) -> Matrix {
        Matrix::from_columns(ring, v.len(), &[v.to_vec()])
    }

    pub fn ring(&self) -> Ring {
        self.ring
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

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.entries[i * self.cols + j] = self.ring.reduce(x);
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_ring(&self, other: &Matrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        Ok(())
    }

    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_ring(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = vec![BigInt::zero(); self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.entries[k * rhs.cols + j];
                    if !b.is_zero() {
                        out[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        let ring = self.ring;
        Ok(Matrix {
            ring,
            rows: self.rows,
            cols: rhs.cols,
            entries: out.into_iter().map(|x| ring.reduce(x)).collect(),
        })
    }

    /// Product; panics on shape or ring mismatch. Used where shapes are
    /// guaranteed by construction.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix product shape")
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                let s: BigInt = self.row(i).iter().zip(v).map(|(a, b)| a * b).sum();
                self.ring.reduce(s)
            })
            .collect()
    }

    fn zip_with(&self, rhs: &Matrix, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<Matrix> {
        self.check_ring(rhs)?;
        if self.shape() != rhs.shape() {
            return Err(Error::Shape(format!(
                "elementwise op on {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { ring: self.ring, rows: self.rows, cols: self.cols, entries })
    }

    pub fn try_add(&self, rhs: &Matrix) -> Result<Matrix> {
        let r = self.ring;
        self.zip_with(rhs, |a, b| r.add(a, b))
    }

    pub fn try_sub(&self, rhs: &Matrix) -> Result<Matrix> {
        let r = self.ring;
        self.zip_with(rhs, |a, b| r.sub(a, b))
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        self.try_add(rhs).expect("matrix sum shape")
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.try_sub(rhs).expect("matrix difference shape")
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, c: &BigInt) -> Matrix {
        let r = self.ring;
        Matrix {
            ring: r,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| r.mul(x, c)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.ring, rhs.ring);
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        let cols = self.cols + rhs.cols;
        let mut m = Matrix::zeros(self.ring, self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.entries[i * cols + j] = self.get(i, j).clone();
            }
            for j in 0..rhs.cols {
                m.entries[i * cols + self.cols + j] = rhs.get(i, j).clone();
            }
        }
        m
    }

    /// `[self ; rhs]`.
    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.ring, rhs.ring);
        assert_eq!(self.cols, rhs.cols, "vstack column mismatch");
        let mut entries = self.entries.clone();
        entries.extend(rhs.entries.iter().cloned());
        Matrix { ring: self.ring, rows: self.rows + rhs.rows, cols: self.cols, entries }
    }

    pub fn block_diag(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.ring, rhs.ring);
        let mut m = Matrix::zeros(self.ring, self.rows + rhs.rows, self.cols + rhs.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, self.cols, rhs);
        m
    }

    /// Overwrites the block starting at `(r0, c0)` with `block`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.entries[(r0 + i) * self.cols + c0 + j] = block.get(i, j).clone();
            }
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut entries = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            entries.extend(self.row(i).iter().cloned());
        }
        Matrix { ring: self.ring, rows: idx.len(), cols: self.cols, entries }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.ring, self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                m.entries[i * idx.len() + jj] = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn row_range(&self, start: usize, end: usize) -> Matrix {
        self.select_rows(&(start..end).collect::<Vec<_>>())
    }

    pub fn col_range(&self, start: usize, end: usize) -> Matrix {
        self.select_cols(&(start..end).collect::<Vec<_>>())
    }

    /// Drops columns that are entirely zero.
    pub fn without_zero_columns(&self) -> Matrix {
        let keep: Vec<usize> =
            (0..self.cols).filter(|&j| (0..self.rows).any(|i| !self.get(i, j).is_zero())).collect();
        self.select_cols(&keep)
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.ring, rhs.ring);
        let mut m = Matrix::zeros(self.ring, self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                m.paste(i * rhs.rows, j * rhs.cols, &rhs.scale(a));
            }
        }
        m
    }

    // In-place elementary operations used by the Smith normal form.

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += c * row[src]`.
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.entries[src * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let v = self.ring.add(&self.entries[dst * self.cols + j], &(c * s));
            self.entries[dst * self.cols + j] = v;
        }
    }

    /// `col[dst] += c * col[src]`.
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.entries[i * self.cols + src];
            if s.is_zero() {
                continue;
            }
            let v = self.ring.add(&self.entries[i * self.cols + dst], &(c * s));
            self.entries[i * self.cols + dst] = v;
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = self.ring.mul(&self.entries[i * self.cols + j], c);
            self.entries[i * self.cols + j] = v;
        }
    }

    pub(crate) fn scale_col(&mut self, j: usize, c: &BigInt) {
        for i in 0..self.rows {
            let v = self.ring.mul(&self.entries[i * self.cols + j], c);
            self.entries[i * self.cols + j] = v;
        }
    }

    /// Rows `(a, b) <- ([[s, t], [u, v]]) (a, b)`.
    pub(crate) fn mix_rows(&mut self, a: usize, b: usize, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) {
        let r = self.ring;
        for j in 0..self.cols {
            let x = self.entries[a * self.cols + j].clone();
            let y = self.entries[b * self.cols + j].clone();
            self.entries[a * self.cols + j] = r.reduce(s * &x + t * &y);
            self.entries[b * self.cols + j] = r.reduce(u * &x + v * &y);
        }
    }

    /// Columns `(a, b) <- (a, b) ([[s, u], [t, v]])`, i.e. `a' = s a + t b`, `b' = u a + v b`.
    pub(crate) fn mix_cols(&mut self, a: usize, b: usize, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) {
        let r = self.ring;
        for i in 0..self.rows {
            let x = self.entries[i * self.cols + a].clone();
            let y = self.entries[i * self.cols + b].clone();
            self.entries[i * self.cols + a] = r.reduce(s * &x + t * &y);
            self.entries[i * self.cols + b] = r.reduce(u * &x + v * &y);
        }
    }
}

/// A JSON matrix entry: a number or a decimal string (for big integers).
#[derive(Clone, Debug)]
pub(crate) struct Entry(pub BigInt);

impl Serialize for Entry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) => s.serialize_i64(x),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(x) => Ok(Entry(BigInt::from(x))),
            Raw::Str(s) => s
                .trim()
                .parse::<BigInt>()
                .map(Entry)
                .map_err(|_| serde::de::Error::custom(format!("invalid integer entry `{s}`"))),
        }
    }
}

/// Serializes integers as JSON numbers when they fit in 64 bits, else as decimal strings.
pub(crate) fn serialize_integers<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().cloned().map(Entry))
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Entry>>,
}

impl Matrix {
    pub(crate) fn rows_as_entries(&self) -> Vec<Vec<Entry>> {
        (0..self.rows).map(|i| self.row(i).iter().cloned().map(Entry).collect()).collect()
    }

    pub(crate) fn from_entry_rows(ring: Ring, rows: usize, cols: usize, data: Vec<Vec<Entry>>) -> Result<Matrix> {
        if data.len() != rows || data.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape(format!("entries do not form a {rows}x{cols} array")));
        }
        Matrix::from_vec(ring, rows, cols, data.into_iter().flatten().map(|e| e.0).collect())
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr { ring: self.ring, rows: self.rows, cols: self.cols, entries: self.rows_as_entries() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = MatrixRepr::deserialize(d)?;
        Matrix::from_entry_rows(r.ring, r.rows, r.cols, r.entries).map_err(serde::de::Error::custom)
    }
}
