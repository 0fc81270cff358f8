//! Exact integer matrices: Smith normal form, linear solving and kernels over
//! `Z`, and over `Z/n` by lifting to `[A | n·I]` over `Z`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::RingSpec;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &BigInt::one())
    }

    pub fn scalar(n: usize, c: &BigInt) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn diagonal(rows: usize, entries: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    /// Build from row vectors. All rows must have `cols` entries.
    pub fn from_rows<T: Into<BigInt> + Clone>(cols: usize, rows: &[Vec<T>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().cloned().map(Into::into));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(cols, &rows).expect("rectangular")
    }

    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
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

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
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
        assert_eq!(self.cols, other.rows, "matrix product dimensions");
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

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| !v[j].is_zero())
                    .map(|j| self.get(i, j) * &v[j])
                    .sum()
            })
            .collect()
    }

    pub fn scale(&self, c: &BigInt) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&BigInt::from(-1))
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hcat row count");
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
            data.extend_from_slice(&other.data[i * other.cols..(i + 1) * other.cols]);
        }
        Matrix {
            rows: self.rows,
            cols,
            data,
        }
    }

    /// Vertical concatenation.
    pub fn vcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vcat column count");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diag(blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            m.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        m
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, idx.len());
        for (jj, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                m.set(i, jj, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(idx.len(), self.cols);
        for (ii, &i) in idx.iter().enumerate() {
            m.data[ii * self.cols..(ii + 1) * self.cols]
                .clone_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
        }
        m
    }

    pub fn top_rows(&self, k: usize) -> Matrix {
        self.select_rows(&(0..k).collect::<Vec<_>>())
    }

    /// Entries reduced into the ring's canonical representatives.
    pub fn reduced(&self, ring: RingSpec) -> Matrix {
        match ring {
            RingSpec::Integers => self.clone(),
            _ => Matrix {
                rows: self.rows,
                cols: self.cols,
                data: self.data.iter().map(|x| ring.reduce(x)).collect(),
            },
        }
    }

    /// Drop columns that are identically zero.
    pub fn without_zero_columns(&self) -> Matrix {
        let keep: Vec<usize> = (0..self.cols)
            .filter(|&j| (0..self.rows).any(|i| !self.get(i, j).is_zero()))
            .collect();
        self.select_columns(&keep)
    }

    /// Over `Z/n`, the `Z`-matrix `[self | n·I]` whose integer column span is the
    /// preimage of this matrix's span over the ring. Over `Z` a copy.
    pub fn lifted(&self, ring: RingSpec) -> Matrix {
        match ring.modulus() {
            None => self.clone(),
            Some(n) => self.hcat(&Matrix::scalar(self.rows, &n)),
        }
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

    /// row[dst] += q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let c = self.cols;
        for j in 0..c {
            let s = &self.data[src * c + j];
            if !s.is_zero() {
                let add = s * q;
                self.data[dst * c + j] += add;
            }
        }
    }

    /// col[dst] += q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let c = self.cols;
        for i in 0..self.rows {
            let s = &self.data[i * c + src];
            if !s.is_zero() {
                let add = s * q;
                self.data[i * c + dst] += add;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = &mut self.data[i * self.cols + j];
            *x = -std::mem::take(x);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let x = &mut self.data[i * self.cols + j];
            *x = -std::mem::take(x);
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal with `d_1 | d_2 | ...`,
/// nonnegative, zeros last. `u_inverse` is `U^{-1}`, tracked alongside.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub u: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    pub u_inverse: Matrix,
    pub rank: usize,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }
}

struct SmithState {
    d: Matrix,
    u: Matrix,
    u_inv: Matrix,
    v: Matrix,
}

impl SmithState {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
    }

    /// row[dst] += q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.d.row_axpy(dst, src, q);
        self.u.row_axpy(dst, src, q);
        // U' = E U with E = I + q e_dst e_src^T, so U'^{-1} = U^{-1} (I - q e_dst e_src^T).
        self.u_inv.col_axpy(src, dst, &-q);
    }

    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.d.col_axpy(dst, src, q);
        self.v.col_axpy(dst, src, q);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Position of the smallest nonzero |entry| in the trailing block from `t`,
    /// scanning row-major.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.d.rows {
            for j in t..self.d.cols {
                let x = self.d.get(i, j);
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.d.get(bi, bj).abs() <= x.abs() => {}
                    _ => {
                        if x.is_one() || *x == BigInt::from(-1) {
                            return Some((i, j));
                        }
                        best = Some((i, j));
                    }
                }
            }
        }
        best
    }

    /// Smallest nonzero |entry| in row `t` and column `t` beyond the pivot.
    fn min_in_cross(&self, t: usize) -> Option<(usize, usize)> {
        let mut best = (t, t);
        let mut best_abs = self.d.get(t, t).abs();
        for i in t + 1..self.d.rows {
            let x = self.d.get(i, t);
            if !x.is_zero() && (best_abs.is_zero() || x.abs() < best_abs) {
                best = (i, t);
                best_abs = x.abs();
            }
        }
        for j in t + 1..self.d.cols {
            let x = self.d.get(t, j);
            if !x.is_zero() && (best_abs.is_zero() || x.abs() < best_abs) {
                best = (t, j);
                best_abs = x.abs();
            }
        }
        if best == (t, t) {
            None
        } else {
            Some(best)
        }
    }

    fn normalize_pivot_sign(&mut self, t: usize) {
        if self.d.get(t, t).is_negative() {
            self.negate_row(t);
        }
    }
}

/// Smith normal form over `Z` with transforms. Pivots are chosen as the
/// smallest nonzero absolute value, scanning row-major.
pub fn smith_normal_form(a: &Matrix) -> SmithDecomposition {
    let (m, n) = (a.rows, a.cols);
    let mut st = SmithState {
        d: a.clone(),
        u: Matrix::identity(m),
        u_inv: Matrix::identity(m),
        v: Matrix::identity(n),
    };
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = st.min_pivot(t) else {
            break;
        };
        st.swap_rows(t, pi);
        st.swap_cols(t, pj);
        st.normalize_pivot_sign(t);
        loop {
            let p = st.d.get(t, t).clone();
            let mut residue = false;
            for i in t + 1..m {
                let x = st.d.get(i, t);
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                st.row_axpy(i, t, &-q);
                residue |= !st.d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let x = st.d.get(t, j);
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                st.col_axpy(j, t, &-q);
                residue |= !st.d.get(t, j).is_zero();
            }
            if residue {
                if let Some((i, j)) = st.min_in_cross(t) {
                    st.swap_rows(t, i);
                    st.swap_cols(t, j);
                    st.normalize_pivot_sign(t);
                }
                continue;
            }
            // Divisibility of the trailing block by the pivot.
            let offender =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !st.d.get(i, j).is_multiple_of(&p)));
            match offender {
                Some(i) => st.row_axpy(t, i, &BigInt::one()),
                None => break,
            }
        }
        t += 1;
    }
    let rank = t;
    SmithDecomposition {
        u: st.u,
        d: st.d,
        v: st.v,
        u_inverse: st.u_inv,
        rank,
    }
}

/// Reusable solver for `A·x = b` over `Z` (many right-hand sides, one factorization).
pub struct IntegerSolver {
    snf: SmithDecomposition,
    cols: usize,
}

impl IntegerSolver {
    pub fn new(a: &Matrix) -> Self {
        IntegerSolver {
            snf: smith_normal_form(a),
            cols: a.cols,
        }
    }

    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let c = self.snf.u.mul_vec(b);
        let r = self.snf.rank;
        if c[r..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut y = vec![BigInt::zero(); self.cols];
        for i in 0..r {
            let d = self.snf.d.get(i, i);
            let (q, rem) = c[i].div_rem(d);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        }
        Some(self.snf.v.mul_vec(&y))
    }

    pub fn contains(&self, b: &[BigInt]) -> bool {
        self.solve(b).is_some()
    }
}

/// Solver for `A·x = b` over a ring. Over `Z/n` it solves `[A | n·I]·y = b` over
/// `Z` and projects.
pub struct RingSolver {
    ring: RingSpec,
    inner: IntegerSolver,
    cols: usize,
}

impl RingSolver {
    pub fn new(ring: RingSpec, a: &Matrix) -> Self {
        RingSolver {
            ring,
            inner: IntegerSolver::new(&a.lifted(ring)),
            cols: a.cols,
        }
    }

    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let b: Vec<BigInt> = b.iter().map(|x| self.ring.reduce(x)).collect();
        let y = self.inner.solve(&b)?;
        Some(y[..self.cols].iter().map(|x| self.ring.reduce(x)).collect())
    }
}

/// A solution of `A·x = b` over the ring, if any.
pub fn solve_linear(ring: RingSpec, a: &Matrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch {
            expected: a.rows,
            found: b.len(),
        });
    }
    Ok(RingSolver::new(ring, a).solve(b))
}

/// Basis of `{x ∈ Z^n : A·x = 0}`, as the columns of the returned matrix.
pub fn integer_kernel(a: &Matrix) -> Matrix {
    let snf = smith_normal_form(a);
    let idx: Vec<usize> = (snf.rank..a.cols).collect();
    snf.v.select_columns(&idx)
}

/// A basis of the integer column span of `g` (at most `rows` columns).
pub fn column_span_basis(g: &Matrix) -> Matrix {
    if g.cols == 0 {
        return g.clone();
    }
    let snf = smith_normal_form(g);
    let idx: Vec<usize> = (0..snf.rank).collect();
    g.mul(&snf.v.select_columns(&idx))
}

/// Generating set of `{x ∈ Z^n : A·x = 0}` over `Z` or of `{x ∈ (Z/n)^c : A·x = 0}`
/// over `Z/n`. Over `Z/n` at most `c` generators are returned, none zero.
pub fn kernel_generators(ring: RingSpec, a: &Matrix) -> Matrix {
    match ring.modulus() {
        None => integer_kernel(a),
        Some(n) => {
            let k = integer_kernel(&a.lifted(ring)).top_rows(a.cols);
            reduce_span_mod(ring, &k, &n)
        }
    }
}

/// A generating set (no zero columns, at most `rows` of them) for the
/// `Z/n`-span of the columns of `g`.
pub(crate) fn reduce_span_mod(ring: RingSpec, g: &Matrix, n: &BigInt) -> Matrix {
    let lifted = g.hcat(&Matrix::scalar(g.rows, n));
    column_span_basis(&lifted)
        .reduced(ring)
        .without_zero_columns()
}
