//! Smith normal form with tracked, invertible change-of-basis matrices.
//!
//! Everything downstream (kernels, cokernels, isomorphism tests, linear
//! solving) goes through [`smith_normal_form`].

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::matrix::Matrix;
use crate::{Error, Result};

/// `u * a * v = s`, with `s` diagonal and its diagonal a divisibility chain.
#[derive(Clone, Debug, Serialize)]
pub struct SmithDecomposition {
    pub u: Matrix,
    pub s: Matrix,
    pub v: Matrix,
    pub u_inv: Matrix,
    pub v_inv: Matrix,
    #[serde(serialize_with = "crate::matrix::serialize_integers")]
    pub diagonal: Vec<BigInt>,
}

struct SnfCalc {
    a: Matrix,
    u: Matrix,
    u_inv: Matrix,
    v: Matrix,
    v_inv: Matrix,
}

impl SnfCalc {
    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// `row[dst] += c * row[src]`
    fn row_add(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
        self.u_inv.add_col_multiple(src, dst, &-c);
    }

    /// `col[dst] += c * col[src]`
    fn col_add(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
        self.v_inv.add_row_multiple(src, dst, &-c);
    }

    fn row_mix(&mut self, p: usize, q: usize, t: &crate::ring::Bezout) {
        self.a.mix_rows(p, q, &t.s, &t.t, &t.u, &t.v);
        self.u.mix_rows(p, q, &t.s, &t.t, &t.u, &t.v);
        self.u_inv.mix_cols(p, q, &t.v, &-&t.u, &-&t.t, &t.s);
    }

    fn col_mix(&mut self, p: usize, q: usize, t: &crate::ring::Bezout) {
        self.a.mix_cols(p, q, &t.s, &t.t, &t.u, &t.v);
        self.v.mix_cols(p, q, &t.s, &t.t, &t.u, &t.v);
        self.v_inv.mix_rows(p, q, &t.v, &-&t.u, &-&t.t, &t.s);
    }

    fn row_scale(&mut self, i: usize, w: &BigInt, w_inv: &BigInt) {
        self.a.scale_row(i, w);
        self.u.scale_row(i, w);
        self.u_inv.scale_col(i, w_inv);
    }

    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let ring = self.a.ring();
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let size = ring.size(x);
                if best.as_ref().is_none_or(|(b, _, _)| size < *b) {
                    best = Some((size, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn clear_column(&mut self, t: usize) {
        let ring = self.a.ring();
        for i in t + 1..self.a.rows() {
            let x = self.a.get(i, t).clone();
            if x.is_zero() {
                continue;
            }
            let p = self.a.get(t, t).clone();
            match ring.divide(&p, &x) {
                Some(q) => self.row_add(i, t, &-q),
                None => {
                    let b = ring.bezout(&p, &x);
                    self.row_mix(t, i, &b);
                }
            }
        }
    }

    fn clear_row(&mut self, t: usize) {
        let ring = self.a.ring();
        for j in t + 1..self.a.cols() {
            let x = self.a.get(t, j).clone();
            if x.is_zero() {
                continue;
            }
            let p = self.a.get(t, t).clone();
            match ring.divide(&p, &x) {
                Some(q) => self.col_add(j, t, &-q),
                None => {
                    let b = ring.bezout(&p, &x);
                    self.col_mix(t, j, &b);
                }
            }
        }
    }

    fn is_clean(&self, t: usize) -> bool {
        (t + 1..self.a.rows()).all(|i| self.a.get(i, t).is_zero())
            && (t + 1..self.a.cols()).all(|j| self.a.get(t, j).is_zero())
    }

    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let ring = self.a.ring();
        let p = self.a.get(t, t);
        for i in t + 1..self.a.rows() {
            for j in t + 1..self.a.cols() {
                if !ring.divides(p, self.a.get(i, j)) {
                    return Some(i);
                }
            }
        }
        None
    }

    fn process(&mut self) {
        let k = self.a.rows().min(self.a.cols());
        for t in 0..k {
            let Some((i, j)) = self.find_pivot(t) else { break };
            self.row_swap(t, i);
            self.col_swap(t, j);
            loop {
                self.clear_column(t);
                self.clear_row(t);
                if !self.is_clean(t) {
                    continue;
                }
                match self.non_divisible_row(t) {
                    Some(i) => self.row_add(t, i, &BigInt::from(1)),
                    None => break,
                }
            }
        }
        let ring = self.a.ring();
        for t in 0..k {
            let (_, w) = ring.normalize(self.a.get(t, t));
            if !ring.is_zero(&ring.sub(&w, &BigInt::from(1))) {
                let w_inv = ring.unit_inverse(&w);
                self.row_scale(t, &w, &w_inv);
            }
        }
    }
}

/// Deterministic Smith normal form of any matrix over either ring.
///
/// Pivots are chosen by smallest size (absolute value over `Z`, canonical
/// residue over `Z/m`) with row-major tie-break.
pub fn smith_normal_form(a: &Matrix) -> SmithDecomposition {
    let ring = a.ring();
    let (r, c) = a.shape();
    let mut calc = SnfCalc {
        a: a.clone(),
        u: Matrix::identity(ring, r),
        u_inv: Matrix::identity(ring, r),
        v: Matrix::identity(ring, c),
        v_inv: Matrix::identity(ring, c),
    };
    calc.process();
    let diagonal = (0..r.min(c)).map(|t| calc.a.get(t, t).clone()).collect();
    SmithDecomposition { u: calc.u, s: calc.a, v: calc.v, u_inv: calc.u_inv, v_inv: calc.v_inv, diagonal }
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// Solves `a * x = b` for a single right-hand side column.
    pub fn solve_vec(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let ring = self.s.ring();
        let (r, c) = self.s.shape();
        assert_eq!(b.len(), r, "right-hand side length");
        let ub = self.u.mul_vec(b);
        let k = self.diagonal.len();
        let mut y = vec![BigInt::zero(); c];
        for (i, rhs) in ub.iter().enumerate() {
            if i < k {
                y[i] = ring.divide(&self.diagonal[i], rhs)?;
            } else if !rhs.is_zero() {
                return None;
            }
        }
        Some(self.v.mul_vec(&y))
    }

    /// Solves `a * x = b` column by column.
    pub fn solve(&self, b: &Matrix) -> Option<Matrix> {
        let cols: Option<Vec<Vec<BigInt>>> = b.columns().iter().map(|col| self.solve_vec(col)).collect();
        Some(Matrix::from_columns(self.s.ring(), self.s.cols(), &cols?))
    }

    /// Generators of `{x : a x = 0}` as columns.
    pub fn nullspace(&self) -> Matrix {
        let ring = self.s.ring();
        let c = self.s.cols();
        let mut gens = Vec::new();
        for j in 0..c {
            let scale = match self.diagonal.get(j) {
                Some(d) => ring.annihilator(d),
                None => BigInt::from(1),
            };
            if ring.is_zero(&scale) {
                continue;
            }
            let col: Vec<BigInt> = self.v.column(j).iter().map(|x| ring.mul(x, &scale)).collect();
            if col.iter().any(|x| !x.is_zero()) {
                gens.push(col);
            }
        }
        Matrix::from_columns(ring, c, &gens)
    }
}

/// Returns `x` with `a * x = b` if one exists.
pub fn solve_lift(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch(a.ring(), b.ring()));
    }
    if a.rows() != b.rows() {
        return Err(Error::Shape(format!(
            "solve_lift: lhs has {} rows, rhs has {}",
            a.rows(),
            b.rows()
        )));
    }
    Ok(smith_normal_form(a).solve(b))
}

/// Generators of the kernel of `a` (as a map of free modules) as columns.
pub fn nullspace(a: &Matrix) -> Matrix {
    smith_normal_form(a).nullspace()
}
