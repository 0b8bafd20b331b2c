//! Dense exact matrices.
//!
//! Storage is row-major. Vectors are rows: `nullspace` is the left nullspace
//! {v : v·A = 0}, and spinning multiplies row vectors on the right. The one
//! exception is [`Matrix::solve_linear`], which solves the column system A·x = b.

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldDescriptor,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl Matrix {
    pub fn from_entries(
        field: FieldDescriptor,
        rows: usize,
        cols: usize,
        entries: Vec<FieldElement>,
    ) -> Result<Matrix> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(
                "matrices have at least one row and column".into(),
            ));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|x| !field.contains(x)) {
            return Err(Error::InvalidRepresentation(format!(
                "entry {bad:?} does not belong to {}",
                field.name()
            )));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(field: FieldDescriptor, rows: Vec<Vec<FieldElement>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::from_entries(field, r, c, rows.into_iter().flatten().collect())
    }

    /// Integer entries mapped through ℤ → K.
    pub fn from_ints(field: &FieldDescriptor, rows: &[&[i64]]) -> Result<Matrix> {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|&v| field.int_scalar(v)).collect())
            .collect();
        Matrix::from_rows(field.clone(), rows)
    }

    fn raw(field: FieldDescriptor, rows: usize, cols: usize, entries: Vec<FieldElement>) -> Matrix {
        debug_assert_eq!(entries.len(), rows * cols);
        Matrix {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn zero(field: &FieldDescriptor, rows: usize, cols: usize) -> Matrix {
        assert!(rows > 0 && cols > 0, "empty matrix");
        Matrix::raw(field.clone(), rows, cols, vec![field.zero(); rows * cols])
    }

    pub fn identity(field: &FieldDescriptor, d: usize) -> Matrix {
        Matrix::scalar_element(field, d, &field.one())
    }

    /// μ·I for an integer μ.
    pub fn scalar(field: &FieldDescriptor, d: usize, mu: i64) -> Matrix {
        Matrix::scalar_element(field, d, &field.int_scalar(mu))
    }

    pub fn scalar_element(field: &FieldDescriptor, d: usize, x: &FieldElement) -> Matrix {
        let mut m = Matrix::zero(field, d, d);
        for i in 0..d {
            m.entries[i * d + i] = x.clone();
        }
        m
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
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

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        assert!(self.field.contains(&x), "entry outside the matrix field");
        self.entries[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldElement::is_zero)
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        self.same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let f = &self.field;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| f.add(a, b))
            .collect();
        Ok(Matrix::raw(f.clone(), self.rows, self.cols, entries))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let f = &self.field;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| f.sub(a, b))
            .collect();
        Ok(Matrix::raw(f.clone(), self.rows, self.cols, entries))
    }

    pub fn neg(&self) -> Matrix {
        let f = &self.field;
        Matrix::raw(
            f.clone(),
            self.rows,
            self.cols,
            self.entries.iter().map(|a| f.neg(a)).collect(),
        )
    }

    pub fn scale(&self, x: &FieldElement) -> Matrix {
        let f = &self.field;
        Matrix::raw(
            f.clone(),
            self.rows,
            self.cols,
            self.entries.iter().map(|a| f.mul(a, x)).collect(),
        )
    }

    pub fn scale_int(&self, mu: i64) -> Matrix {
        self.scale(&self.field.int_scalar(mu))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let (n, m) = (self.rows, other.cols);
        let mut out = vec![f.zero(); n * m];
        for i in 0..n {
            let acc = &mut out[i * m..(i + 1) * m];
            for k in 0..self.cols {
                let a = &self.entries[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let brow = &other.entries[k * m..(k + 1) * m];
                for (slot, b) in acc.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        *slot = f.add(slot, &f.mul(a, b));
                    }
                }
            }
        }
        Ok(Matrix::raw(f.clone(), n, m, out))
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.rows, "vector length");
        let f = &self.field;
        let mut out = vec![f.zero(); self.cols];
        for (k, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (slot, b) in out.iter_mut().zip(self.row(k)) {
                if !b.is_zero() {
                    *slot = f.add(slot, &f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn pow(&self, mut exp: u32) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut acc = Matrix::identity(&self.field, self.rows);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Matrix::raw(self.field.clone(), self.cols, self.rows, entries)
    }

    /// Assemble `[a b; c d]`.
    pub fn block2x2(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Result<Matrix> {
        for m in [b, c, d] {
            a.same_field(m)?;
        }
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::DimensionMismatch("incompatible block shapes".into()));
        }
        let rows = a.rows + c.rows;
        let cols = a.cols + b.cols;
        let mut entries = Vec::with_capacity(rows * cols);
        for (left, right) in [(a, b), (c, d)] {
            for i in 0..left.rows {
                entries.extend_from_slice(left.row(i));
                entries.extend_from_slice(right.row(i));
            }
        }
        Ok(Matrix::raw(a.field.clone(), rows, cols, entries))
    }

    /// Horizontal concatenation `[a b]`.
    pub fn hstack(a: &Matrix, b: &Matrix) -> Result<Matrix> {
        a.same_field(b)?;
        if a.rows != b.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let mut entries = Vec::with_capacity(a.rows * (a.cols + b.cols));
        for i in 0..a.rows {
            entries.extend_from_slice(a.row(i));
            entries.extend_from_slice(b.row(i));
        }
        Ok(Matrix::raw(a.field.clone(), a.rows, a.cols + b.cols, entries))
    }

    /// Vertical concatenation.
    pub fn vstack(a: &Matrix, b: &Matrix) -> Result<Matrix> {
        a.same_field(b)?;
        if a.cols != b.cols {
            return Err(Error::DimensionMismatch("vstack column counts differ".into()));
        }
        let mut entries = a.entries.clone();
        entries.extend_from_slice(&b.entries);
        Ok(Matrix::raw(a.field.clone(), a.rows + b.rows, a.cols, entries))
    }

    /// The `rows x cols` block whose top-left corner is `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        assert!(
            r0 + rows <= self.rows && c0 + cols <= self.cols,
            "block out of range"
        );
        let mut entries = Vec::with_capacity(rows * cols);
        for i in r0..r0 + rows {
            entries.extend_from_slice(&self.row(i)[c0..c0 + cols]);
        }
        Matrix::raw(self.field.clone(), rows, cols, entries)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows = self.to_rows();
        let pivots = rref_in_place(&self.field, &mut rows);
        (
            Matrix::raw(
                self.field.clone(),
                self.rows,
                self.cols,
                rows.into_iter().flatten().collect(),
            ),
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the left nullspace {v : v·A = 0}, as 1×rows matrices.
    pub fn nullspace(&self) -> Vec<Matrix> {
        self.left_nullspace_rows()
            .into_iter()
            .map(|v| Matrix::raw(self.field.clone(), 1, self.rows, v))
            .collect()
    }

    pub fn left_nullspace_rows(&self) -> Vec<Vec<FieldElement>> {
        self.transpose().right_nullspace_rows()
    }

    /// Basis of {x : A·x = 0}, each returned as a plain vector.
    pub fn right_nullspace_rows(&self) -> Vec<Vec<FieldElement>> {
        let f = &self.field;
        let mut rows = self.to_rows();
        let pivots = rref_in_place(f, &mut rows);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(&rows[r][free]);
            }
            basis.push(v);
        }
        basis
    }

    /// Solve A·x = b exactly.
    pub fn solve_linear(&self, b: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch("right-hand side length".into()));
        }
        let f = &self.field;
        let mut rows: Vec<Vec<FieldElement>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let pivots = rref_in_place(f, &mut rows);
        if pivots.last() == Some(&self.cols) {
            return Err(Error::NoSolution);
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = rows[r][self.cols].clone();
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let d = self.rows;
        let aug = Matrix::hstack(self, &Matrix::identity(&self.field, d))?;
        let (r, pivots) = aug.rref();
        if pivots.len() < d || pivots[d - 1] != d - 1 {
            return Err(Error::DivisionByZero);
        }
        Ok(r.submatrix(0, d, d, d))
    }

    /// The same matrix over a field that contains this one.
    pub fn base_change(&self, target: &FieldDescriptor) -> Result<Matrix> {
        if &self.field == target {
            return Ok(self.clone());
        }
        let entries = self
            .entries
            .iter()
            .map(|x| self.field.embed(x, target))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::raw(target.clone(), self.rows, self.cols, entries))
    }

    /// Human-readable rendering with the field's element grammar.
    pub fn display(&self) -> String {
        let cells: Vec<String> = self
            .entries
            .iter()
            .map(|x| self.field.format_element(x))
            .collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// In-place reduced row echelon form with first-nonzero pivoting.
///
/// Nonzero rows end up first, in pivot order; returns the pivot columns.
pub(crate) fn rref_in_place(f: &FieldDescriptor, rows: &mut [Vec<FieldElement>]) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(&rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut().skip(c) {
            *x = f.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !pv.is_zero() {
                    *x = f.sub(x, &f.mul(&factor, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A subspace of K^dim held as a reduced echelon basis.
///
/// Rows are normalized (pivot entry 1) and every row is zero in every other
/// row's pivot column, so membership and coordinates are read off directly.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    field: FieldDescriptor,
    dim: usize,
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(field: &FieldDescriptor, dim: usize) -> EchelonBasis {
        EchelonBasis {
            field: field.clone(),
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after clearing every pivot column.
    pub fn reduce(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.reduce(v).iter().all(FieldElement::is_zero)
    }

    /// Coordinates of a member vector with respect to the basis rows.
    pub fn coordinates(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// Add `v` to the span. Returns the new normalized basis row if `v` was new.
    pub fn insert(&mut self, v: &[FieldElement]) -> Option<Vec<FieldElement>> {
        let f = self.field.clone();
        let mut r = self.reduce(v);
        let p = r.iter().position(|x| !x.is_zero())?;
        let inv = f.inv(&r[p]).expect("nonzero");
        for x in r.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r.clone());
        Some(r)
    }

    pub fn to_matrix(&self) -> Option<Matrix> {
        if self.rows.is_empty() {
            return None;
        }
        Some(Matrix::raw(
            self.field.clone(),
            self.rows.len(),
            self.dim,
            self.rows.iter().flatten().cloned().collect(),
        ))
    }
}
