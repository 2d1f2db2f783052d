//! Dense matrices over the p-local integers and their Smith normal form.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// A dense row-major matrix of [`Scalar`]s.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn scalar_identity(n: usize, c: &Scalar) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn from_data(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(rows: &[Vec<Scalar>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Shape(format!("row of length {} in a {cols}-column matrix", r.len())));
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix { rows: rows.len(), cols, data })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Scalar>> =
            rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect();
        Matrix::from_rows(&rows, cols).expect("ragged integer rows")
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(cols: &[Vec<Scalar>], rows: usize) -> Self {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
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

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn all_plocal(&self, p: u64) -> bool {
        self.data.iter().all(|x| x.is_plocal(p))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix difference shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn pow(&self, e: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn block_diag(blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Block matrix from a grid of blocks; `None` entries are zero.
    pub fn from_blocks(row_sizes: &[usize], col_sizes: &[usize], blocks: &[Vec<Option<&Matrix>>]) -> Matrix {
        let mut out = Matrix::zeros(row_sizes.iter().sum(), col_sizes.iter().sum());
        let mut r0 = 0;
        for (bi, &rs) in row_sizes.iter().enumerate() {
            let mut c0 = 0;
            for (bj, &cs) in col_sizes.iter().enumerate() {
                if let Some(b) = blocks[bi][bj] {
                    assert_eq!((b.rows, b.cols), (rs, cs), "block ({bi},{bj}) has the wrong shape");
                    out.set_block(r0, c0, b);
                }
                c0 += cs;
            }
            r0 += rs;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(rows.len(), cols.len());
        for (oi, i) in rows.clone().enumerate() {
            for (oj, j) in cols.clone().enumerate() {
                out.set(oi, oj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(idx.len(), self.cols);
        for (oi, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                out.set(oi, j, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (oj, &j) in idx.iter().enumerate() {
                out.set(i, oj, self.get(i, j).clone());
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Scalar) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            if !self.data[idx].is_zero() {
                self.data[idx] = &self.data[idx] * c;
            }
        }
    }

    fn scale_col(&mut self, col: usize, c: &Scalar) {
        for i in 0..self.rows {
            let idx = i * self.cols + col;
            if !self.data[idx].is_zero() {
                self.data[idx] = &self.data[idx] * c;
            }
        }
    }

    /// row[dst] += f * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, f: &Scalar) {
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let v = s * f;
            let idx = dst * self.cols + j;
            self.data[idx] = &self.data[idx] + &v;
        }
    }

    /// col[dst] += f * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, f: &Scalar) {
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if s.is_zero() {
                continue;
            }
            let v = s * f;
            let idx = i * self.cols + dst;
            self.data[idx] = &self.data[idx] + &v;
        }
    }

    /// p-adic valuation of the determinant; `None` if singular. Square matrices only.
    pub fn det_valuation(&self, p: u64) -> Option<u32> {
        assert!(self.is_square());
        let s = Snf::compute(self, p);
        if s.rank < self.rows {
            None
        } else {
            Some(s.exponents.iter().sum())
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

/// Serialized as `{"rows", "cols", "entries"}` with row-major entries.
#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Scalar>>,
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr { rows: self.rows, cols: self.cols, entries: self.to_rows() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = MatrixRepr::deserialize(d)?;
        if r.entries.len() != r.rows {
            return Err(serde::de::Error::custom("row count does not match entries"));
        }
        Matrix::from_rows(&r.entries, r.cols).map_err(serde::de::Error::custom)
    }
}

/// Smith normal form `U * m * V = D` over the p-local integers.
///
/// The diagonal of `D` is `p^{e_1}, ..., p^{e_r}, 0, ...` with `e_1 <= e_2 <= ...`.
/// `u_inv` is tracked alongside `u` so callers can move between coordinate systems
/// without a second inversion.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: Matrix,
    pub u_inv: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    pub rank: usize,
    /// Valuations of the nonzero diagonal entries, nondecreasing.
    pub exponents: Vec<u32>,
    p: u64,
}

impl Snf {
    pub fn compute(m: &Matrix, p: u64) -> Snf {
        debug_assert!(m.all_plocal(p), "matrix is not {p}-local");
        let (rows, cols) = (m.rows, m.cols);
        let mut a = m.clone();
        let mut u = Matrix::identity(rows);
        let mut u_inv = Matrix::identity(rows);
        let mut v = Matrix::identity(cols);
        let mut exponents = Vec::new();
        let mut rank = 0;

        for k in 0..rows.min(cols) {
            // minimal valuation, ties to the smallest (row, col)
            let mut best: Option<(u32, usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if let Some(val) = a.get(i, j).valuation(p) {
                        if best.is_none_or(|(bv, _, _)| val < bv) {
                            best = Some((val, i, j));
                        }
                    }
                }
                if best.is_some_and(|(bv, _, _)| bv == 0) {
                    break;
                }
            }
            let Some((val, pi, pj)) = best else { break };

            a.swap_rows(k, pi);
            u.swap_rows(k, pi);
            u_inv.swap_cols(k, pi);
            a.swap_cols(k, pj);
            v.swap_cols(k, pj);

            let unit = a.get(k, k).unit_part(p);
            let unit_inv = unit.inverse_unit(p).expect("unit part must be invertible");
            a.scale_row(k, &unit_inv);
            u.scale_row(k, &unit_inv);
            u_inv.scale_col(k, &unit);

            for i in k + 1..rows {
                let x = a.get(i, k);
                if x.is_zero() {
                    continue;
                }
                let f = x.div_p_pow(p, val);
                let neg = -&f;
                a.add_row_multiple(i, k, &neg);
                u.add_row_multiple(i, k, &neg);
                u_inv.add_col_multiple(k, i, &f);
            }
            for j in k + 1..cols {
                let x = a.get(k, j);
                if x.is_zero() {
                    continue;
                }
                let f = -x.div_p_pow(p, val);
                a.add_col_multiple(j, k, &f);
                v.add_col_multiple(j, k, &f);
            }
            exponents.push(val);
            rank += 1;
        }

        Snf { u, u_inv, d: a, v, rank, exponents, p }
    }

    /// Basis of the kernel `{x : m x = 0}` as columns.
    pub fn kernel_basis(&self) -> Matrix {
        self.v.submatrix(0..self.v.rows, self.rank..self.v.cols)
    }

    /// A solution of `m x = b`, if one exists over the p-local integers.
    ///
    /// Free coordinates are set to zero, so the answer is deterministic.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let y = self.u.mul_vec(b);
        let mut z = vec![Scalar::zero(); self.v.rows];
        for (i, yi) in y.iter().enumerate() {
            if i < self.rank {
                if !yi.divisible_by_p_pow(self.p, self.exponents[i]) {
                    return None;
                }
                z[i] = yi.div_p_pow(self.p, self.exponents[i]);
            } else if !yi.is_zero() {
                return None;
            }
        }
        Some(self.v.mul_vec(&z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(m: &Matrix, p: u64) -> Snf {
        let s = Snf::compute(m, p);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d, "U m V must equal D");
        assert_eq!(s.u.mul(&s.u_inv), Matrix::identity(m.rows()));
        assert_eq!(s.u.det_valuation_raw(p), Some(0));
        assert_eq!(s.v.det_valuation_raw(p), Some(0));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        for (i, e) in s.exponents.iter().enumerate() {
            assert_eq!(*s.d.get(i, i), Scalar::p_pow(p, *e));
        }
        assert!(s.exponents.windows(2).all(|w| w[0] <= w[1]));
        s
    }

    impl Matrix {
        // Determinant valuation via naive expansion-free elimination over Q, for tests only.
        fn det_valuation_raw(&self, p: u64) -> Option<u32> {
            let n = self.rows;
            let mut a = self.clone();
            let mut det = Scalar::one();
            for k in 0..n {
                let piv = (k..n).find(|&i| !a.get(i, k).is_zero())?;
                if piv != k {
                    a.swap_rows(piv, k);
                    det = -det;
                }
                let pv = a.get(k, k).clone();
                det = det * &pv;
                for i in k + 1..n {
                    let f = Scalar::from_rational(a.get(i, k).as_rational() / pv.as_rational());
                    a.add_row_multiple(i, k, &-f);
                }
            }
            det.valuation(p)
        }
    }

    #[test]
    fn zero_one_by_one() {
        let s = check_snf(&Matrix::zeros(1, 1), 3);
        assert_eq!(s.d, Matrix::zeros(1, 1));
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn units_at_three() {
        let m = Matrix::from_int_rows(&[&[2, 4], &[6, 8]]);
        let s = check_snf(&m, 3);
        assert_eq!(s.d, Matrix::identity(2));
    }

    #[test]
    fn already_diagonal() {
        let m = Matrix::from_int_rows(&[&[3, 0], &[0, 9]]);
        let s = check_snf(&m, 3);
        assert_eq!(s.d, Matrix::from_int_rows(&[&[3, 0], &[0, 9]]));
    }

    #[test]
    fn rectangular_and_solve() {
        let m = Matrix::from_int_rows(&[&[3, 6, 9], &[2, 4, 5]]);
        let s = check_snf(&m, 3);
        let b = vec![Scalar::from_int(3), Scalar::from_int(1)];
        let x = s.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        let k = s.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
        // (1, 0) is not in the column span over Z_(3)? columns are (3,2),(6,4),(9,5): span contains (3,2),(9,5) -> det -3
        assert!(s.solve(&[Scalar::from_int(1), Scalar::zero()]).is_none());
    }
}
