use std::fmt;

use super::poly::Poly;
use super::ring::Q;
use super::{AlgError, Ring};


/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

pub type QMatrix = Mat<Q>;
pub type PolyMatrix = Mat<Poly>;

impl<R: Ring> fmt::Debug for Mat<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

impl<R: Ring> Mat<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<R>) -> Result<Self, AlgError> {
        if data.len() != rows * cols {
            return Err(AlgError::Dimension(format!("{} entries for {rows}x{cols}", data.len())));
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self, AlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgError::Dimension("ragged rows".into()));
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let c = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, R::from_i64(v));
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

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &R {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: R) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &R) {
        self.data[r * self.cols + c].accumulate(v);
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[R] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<R> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(R::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..self.cols).all(|c| {
                let v = self.get(r, c);
                if r == c { v.is_one() } else { v.is_zero() }
            }))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Mat<S> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat<R>) -> Result<Mat<R>, AlgError> {
        if self.cols != other.rows {
            return Err(AlgError::Dimension(format!(
                "product {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        let support: Vec<Vec<(usize, &R)>> =
            (0..other.rows).map(|k| other.row(k).iter().enumerate().filter(|(_, b)| !b.is_zero()).collect()).collect();
        for r in 0..self.rows {
            for (k, a) in self.row(r).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for &(c, b) in &support[k] {
                    out.data[r * other.cols + c].accumulate(&a.times(b));
                }
            }
        }
        Ok(out)
    }

    /// Product with dimensions already known to agree.
    pub fn dot(&self, other: &Mat<R>) -> Mat<R> {
        self.mul(other).expect("matrix dimensions agree")
    }

    pub fn add(&self, other: &Mat<R>) -> Result<Mat<R>, AlgError> {
        if self.dims() != other.dims() {
            return Err(AlgError::Dimension(format!("sum {:?} + {:?}", self.dims(), other.dims())));
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.plus(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Mat<R>) -> Result<Mat<R>, AlgError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Mat<R> {
        self.map(R::negate)
    }

    pub fn scale(&self, s: &R) -> Mat<R> {
        self.map(|x| x.times(s))
    }

    pub fn scale_int(&self, n: i64) -> Mat<R> {
        self.map(|x| x.scale_int(n))
    }

    /// Rows and columns selected by index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Mat<R> {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> Mat<R> {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, cols)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Mat<R> {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.select(rows, &cols)
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat<R> {
        let rs: Vec<usize> = (r0..r0 + rows).collect();
        let cs: Vec<usize> = (c0..c0 + cols).collect();
        self.select(&rs, &cs)
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat<R>) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.set(r0 + r, c0 + c, b.get(r, c).clone());
            }
        }
    }

    pub fn block_diag(blocks: &[Mat<R>]) -> Mat<R> {
        let rows = blocks.iter().map(Mat::rows).sum();
        let cols = blocks.iter().map(Mat::cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn hstack(blocks: &[Mat<R>]) -> Result<Mat<R>, AlgError> {
        let rows = blocks.first().map_or(0, Mat::rows);
        if blocks.iter().any(|b| b.rows != rows) {
            return Err(AlgError::Dimension("hstack row mismatch".into()));
        }
        let cols = blocks.iter().map(Mat::cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut c0 = 0;
        for b in blocks {
            out.set_block(0, c0, b);
            c0 += b.cols;
        }
        Ok(out)
    }

    pub fn vstack(blocks: &[Mat<R>]) -> Result<Mat<R>, AlgError> {
        let cols = blocks.first().map_or(0, Mat::cols);
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(AlgError::Dimension("vstack column mismatch".into()));
        }
        let rows = blocks.iter().map(Mat::rows).sum();
        let mut out = Self::zeros(rows, cols);
        let mut r0 = 0;
        for b in blocks {
            out.set_block(r0, 0, b);
            r0 += b.rows;
        }
        Ok(out)
    }

    /// Kronecker product, first factor most significant.
    pub fn kron(&self, other: &Mat<R>) -> Mat<R> {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let b = other.get(r2, c2);
                        if !b.is_zero() {
                            out.set(r1 * other.rows + r2, c1 * other.cols + c2, a.times(b));
                        }
                    }
                }
            }
        }
        out
    }

    /// Signed permutation matrix sending basis vector `j` to `sign_j * e_{image_j}`.
    pub fn signed_permutation(images: &[(i8, usize)], target_dim: usize) -> Mat<R> {
        let mut out = Self::zeros(target_dim, images.len());
        for (j, &(s, i)) in images.iter().enumerate() {
            out.set(i, j, R::from_i64(i64::from(s)));
        }
        out
    }

    /// Rows/columns permuted: `out[rp[i]][cp[j]] = self[i][j]`.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Mat<R> {
        let mut out = Self::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(row_perm[r], col_perm[c], self.get(r, c).clone());
            }
        }
        out
    }

    pub fn var_count(&self) -> usize {
        self.data.iter().map(Ring::var_count).max().unwrap_or(0)
    }

    /// Row-major strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|x| x.to_string()).collect()).collect()
    }

    pub fn from_strings(rows: usize, cols: usize, s: &[Vec<String>]) -> Result<Self, AlgError> {
        if s.len() != rows || s.iter().any(|row| row.len() != cols) {
            return Err(AlgError::Dimension(format!("expected {rows}x{cols} string matrix")));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for row in s {
            for e in row {
                data.push(R::parse_str(e)?);
            }
        }
        Ok(Mat { rows, cols, data })
    }

    /// Stable textual form used inside canonical keys.
    pub fn key_string(&self) -> String {
        let mut s = String::new();
        self.write_key(&mut s).expect("writing to a string");
        s
    }

    pub fn write_key(&self, w: &mut dyn std::fmt::Write) -> std::fmt::Result {
        write!(w, "{}x{}:", self.rows, self.cols)?;
        for (i, x) in self.data.iter().enumerate() {
            if i > 0 {
                w.write_char(',')?;
            }
            if !x.is_zero() {
                x.write_key(w)?;
            }
        }
        Ok(())
    }
}

impl Mat<Poly> {
    /// Substitutes `value` for `t_var` in every entry.
    pub fn evaluate(&self, var: usize, value: &Q) -> Result<Mat<Poly>, AlgError> {
        if var == 0 {
            return Err(AlgError::Variable(var));
        }
        Ok(self.map(|p| p.evaluate(var, value)))
    }

    pub fn eval_point(&self, point: &[Q]) -> Mat<Q> {
        self.map(|p| p.eval_point(point))
    }

    pub fn constant_part(&self) -> Option<Mat<Q>> {
        if self.entries().iter().all(Poly::is_constant) {
            Some(self.map(Poly::constant_term))
        } else {
            None
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.entries().iter().map(Poly::degree).max().unwrap_or(0)
    }

    pub fn insert_vars(&self, at: usize, count: usize) -> Mat<Poly> {
        self.map(|p| p.insert_vars(at, count))
    }
}

impl Mat<Q> {
    pub fn to_poly(&self) -> Mat<Poly> {
        self.map(|c| Poly::constant(c.clone()))
    }
}
