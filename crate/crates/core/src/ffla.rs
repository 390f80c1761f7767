//! Exact linear algebra over prime fields `F_p`.
//!
//! Every Hom and Ext computation in the crate ends up here. Elimination is
//! plain Gauss-Jordan with first-nonzero pivoting, so reduced forms (and
//! everything built from them) are reproducible.

use std::fmt;

use crate::error::{HallError, Result};

/// Residue type. All stored values lie in `[0, p)`.
pub type Elem = u32;

/// A prime field `F_p` with `2 <= p <= 97`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    p: u32,
}

impl Field {
    pub const MAX_PRIME: u32 = 97;

    pub fn new(p: u32) -> Result<Self> {
        if !(2..=Self::MAX_PRIME).contains(&p) {
            return Err(HallError::InvalidConfig(format!(
                "field size {p} outside the supported range 2..={}",
                Self::MAX_PRIME
            )));
        }
        if !is_prime(p) {
            return Err(HallError::InvalidConfig(format!(
                "field size {p} is not prime; only prime fields are supported"
            )));
        }
        Ok(Field { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: Elem, b: Elem) -> Elem {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: Elem, b: Elem) -> Elem {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: Elem) -> Elem {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: Elem, b: Elem) -> Elem {
        (a * b) % self.p
    }

    pub fn inv(self, a: Elem) -> Elem {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        // a^(p-2) by square and multiply
        let mut base = a;
        let mut exp = self.p - 2;
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Reduce a signed integer into `[0, p)`.
    pub fn from_i64(self, v: i64) -> Elem {
        v.rem_euclid(self.p as i64) as Elem
    }

    /// `p^k` as a `u128`, or `None` on overflow.
    pub fn card(self, k: usize) -> Option<u128> {
        (self.p as u128).checked_pow(u32::try_from(k).ok()?)
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Dense row-major matrix over a prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]({}x{})", self.rows, self.cols)
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Matrix { rows, cols, data }
    }

    /// Build from nested rows, reducing every entry mod `p`.
    pub fn from_rows(field: Field, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row.iter().map(|&v| field.from_i64(v)));
        }
        Matrix {
            rows: r,
            cols: c,
            data,
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, field: Field, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "matrix product shape mismatch {:?} * {:?}",
            self.shape(),
            other.shape()
        );
        let p = field.p() as u64;
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = 0u64;
                for k in 0..self.cols {
                    acc += self.get(r, k) as u64 * other.get(k, c) as u64;
                }
                out.set(r, c, (acc % p) as Elem);
            }
        }
        out
    }

    pub fn add(&self, field: Field, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| field.add(a, b))
            .collect();
        Matrix::from_vec(self.rows, self.cols, data)
    }

    pub fn sub(&self, field: Field, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix difference shape mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| field.sub(a, b))
            .collect();
        Matrix::from_vec(self.rows, self.cols, data)
    }

    pub fn scale(&self, field: Field, s: Elem) -> Matrix {
        let data = self.data.iter().map(|&a| field.mul(a, s)).collect();
        Matrix::from_vec(self.rows, self.cols, data)
    }

    pub fn neg(&self, field: Field) -> Matrix {
        let data = self.data.iter().map(|&a| field.neg(a)).collect();
        Matrix::from_vec(self.rows, self.cols, data)
    }

    pub fn mul_vec(&self, field: Field, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let p = field.p() as u64;
        (0..self.rows)
            .map(|r| {
                let acc: u64 = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum();
                (acc % p) as Elem
            })
            .collect()
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let rows = a.rows + c.rows;
        let cols = a.cols + b.cols;
        let mut m = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for col in 0..cols {
                let v = match (r < a.rows, col < a.cols) {
                    (true, true) => a.get(r, col),
                    (true, false) => b.get(r, col - a.cols),
                    (false, true) => c.get(r - a.rows, col),
                    (false, false) => d.get(r - a.rows, col - a.cols),
                };
                m.set(r, col, v);
            }
        }
        m
    }

    pub fn block_diag(a: &Matrix, d: &Matrix) -> Matrix {
        Matrix::block(
            a,
            &Matrix::zeros(a.rows, d.cols),
            &Matrix::zeros(d.rows, a.cols),
            d,
        )
    }

    /// Columns `start..start+len` as a new matrix.
    pub fn column_slice(&self, start: usize, len: usize) -> Matrix {
        let mut m = Matrix::zeros(self.rows, len);
        for r in 0..self.rows {
            for c in 0..len {
                m.set(r, c, self.get(r, start + c));
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Elem>]) -> Matrix {
        let mut m = Matrix::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, &v) in col.iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    pub fn rank(&self, field: Field) -> usize {
        rref(field, self).1.len()
    }

    pub fn is_invertible(&self, field: Field) -> bool {
        self.is_square() && self.rank(field) == self.rows
    }

    pub fn pow(&self, field: Field, mut exp: usize) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(field, &base);
            }
            base = base.mul(field, &base);
            exp >>= 1;
        }
        acc
    }
}

/// Reduced row-echelon form and pivot columns. Rank is the pivot count.
pub fn rref(field: Field, m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(pr) = (row..a.rows).find(|&r| a.get(r, col) != 0) else {
            continue;
        };
        if pr != row {
            for c in 0..a.cols {
                a.data.swap(pr * a.cols + c, row * a.cols + c);
            }
        }
        let inv = field.inv(a.get(row, col));
        for c in col..a.cols {
            let v = a.get(row, c);
            a.set(row, c, field.mul(v, inv));
        }
        for r in 0..a.rows {
            if r == row {
                continue;
            }
            let factor = a.get(r, col);
            if factor == 0 {
                continue;
            }
            for c in col..a.cols {
                let v = field.sub(a.get(r, c), field.mul(factor, a.get(row, c)));
                a.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

/// Basis of the right null space `{v : m v = 0}`; length is `cols - rank`.
pub fn kernel_basis(field: Field, m: &Matrix) -> Vec<Vec<Elem>> {
    let (r, pivots) = rref(field, m);
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; m.cols];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(r.get(i, free));
        }
        basis.push(v);
    }
    basis
}

/// One solution of `a x = b`, or `None` if the system is inconsistent.
///
/// Panics if `b.len() != a.rows()`.
pub fn solve_linear(field: Field, a: &Matrix, b: &[Elem]) -> Option<Vec<Elem>> {
    assert_eq!(a.rows, b.len(), "solve_linear: right-hand side length mismatch");
    let mut aug = Matrix::zeros(a.rows, a.cols + 1);
    for r in 0..a.rows {
        for c in 0..a.cols {
            aug.set(r, c, a.get(r, c));
        }
        aug.set(r, a.cols, b[r]);
    }
    let (red, pivots) = rref(field, &aug);
    if pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut x = vec![0; a.cols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = red.get(i, a.cols);
    }
    Some(x)
}

/// Solve `a X = b` for a matrix `X`, column by column.
pub fn solve_matrix(field: Field, a: &Matrix, b: &Matrix) -> Option<Matrix> {
    assert_eq!(a.rows, b.rows);
    let mut cols = Vec::with_capacity(b.cols);
    for c in 0..b.cols {
        let rhs: Vec<Elem> = (0..b.rows).map(|r| b.get(r, c)).collect();
        cols.push(solve_linear(field, a, &rhs)?);
    }
    Some(Matrix::from_columns(a.cols, &cols))
}

/// Incremental echelon basis of a subspace of `F_p^n`, used for spans,
/// membership and quotient complements.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    dim: usize,
    // rows kept reduced against each other; pivot[i] is the pivot column of rows[i]
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: Field, dim: usize) -> Self {
        Echelon {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Reduce `v` against the current rows.
    pub fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let f = self.field;
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = w[pc];
            if c != 0 {
                for (x, &y) in w.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Insert `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, v: &[Elem]) -> bool {
        assert_eq!(v.len(), self.dim);
        let f = self.field;
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[pc]);
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                for (x, &y) in row.iter_mut().zip(&w) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }
}

/// Given a spanning set of a subspace `sub` contained in the span of
/// `ambient`, return vectors from `ambient` whose classes form a basis of
/// `span(ambient) / span(sub)`.
pub fn quotient_complement(
    field: Field,
    dim: usize,
    sub: &[Vec<Elem>],
    ambient: &[Vec<Elem>],
) -> Vec<Vec<Elem>> {
    let mut ech = Echelon::new(field, dim);
    for v in sub {
        ech.insert(v);
    }
    ambient
        .iter()
        .filter(|v| ech.insert(v))
        .cloned()
        .collect()
}

/// Rank of a family of vectors.
pub fn span_rank(field: Field, dim: usize, vectors: &[Vec<Elem>]) -> usize {
    let mut ech = Echelon::new(field, dim);
    vectors.iter().filter(|v| ech.insert(v)).count()
}

/// All `p^k` coefficient vectors of length `k` in lexicographic order,
/// streamed to `visit`. Stops early when `visit` returns `false`.
pub fn for_each_coeffs(field: Field, k: usize, mut visit: impl FnMut(&[Elem]) -> bool) {
    let p = field.p();
    let mut coeffs = vec![0; k];
    loop {
        if !visit(&coeffs) {
            return;
        }
        // increment as a base-p counter, last position fastest
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
        }
    }
}

/// Linear combination `sum coeffs[i] * vectors[i]`.
pub fn combine(field: Field, dim: usize, coeffs: &[Elem], vectors: &[Vec<Elem>]) -> Vec<Elem> {
    let mut out = vec![0; dim];
    for (&c, v) in coeffs.iter().zip(vectors) {
        if c == 0 {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(v) {
            *o = field.add(*o, field.mul(c, x));
        }
    }
    out
}
