//! Dense exact matrices over GF(q).

use std::fmt;

use thiserror::Error;

use crate::field::{Embedding, Fe, Field};
use crate::poly::{self, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("{0} is not an eigenvalue")]
    NotAnEigenvalue(String),
    #[error("expected {expected} entries, got {got}")]
    BadShape { expected: usize, got: usize },
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.field.show(self.get(i, j)))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Fe>) -> Result<Mat, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::BadShape {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Mat {
        Mat::scalar(field, n, Fe::ONE)
    }

    pub fn scalar(field: &Field, n: usize, c: Fe) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn diag(field: &Field, entries: &[Fe]) -> Mat {
        let mut m = Mat::zeros(field, entries.len(), entries.len());
        for (i, &c) in entries.iter().enumerate() {
            m.set(i, i, c);
        }
        m
    }

    /// From integer rows, reduced into the prime subfield.
    pub fn from_ints(field: &Field, rows: &[Vec<i64>]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| field.from_int(v)))
            .collect();
        Mat::new(field, r, c, data).expect("ragged rows")
    }

    /// `n x n` matrix whose columns are the given vectors.
    pub fn from_columns(field: &Field, n: usize, cols: &[Vec<Fe>]) -> Mat {
        let mut m = Mat::zeros(field, n, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Companion matrix of a monic polynomial (ones on the subdiagonal, last column `-c_i`).
    pub fn companion(f: &Poly) -> Mat {
        let field = f.field();
        let n = f.deg();
        let mut m = Mat::zeros(field, n, n);
        for i in 1..n {
            m.set(i, i - 1, Fe::ONE);
        }
        for i in 0..n {
            m.set(i, n - 1, field.neg(f.coeff(i)));
        }
        m
    }

    pub fn field(&self) -> &Field {
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

    pub fn data(&self) -> &[Fe] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Fe> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                f.axpy(dst, a, &other.data[k * other.cols..(k + 1) * other.cols]);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| self.field.dot(self.row(i), v)).collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        Mat {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        Mat {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: Fe) -> Mat {
        let f = &self.field;
        Mat {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        let mut acc = Mat::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn trace(&self) -> Fe {
        (0..self.rows.min(self.cols)).fold(Fe::ZERO, |acc, i| self.field.add(acc, self.get(i, i)))
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Mat) -> Mat {
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, f.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        out
    }

    /// Entries pushed through a field embedding.
    pub fn embed(&self, emb: &Embedding) -> Mat {
        Mat {
            field: emb.dst().clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| emb.apply(a)).collect(),
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let pivots = rref_in_place(&self.field, &mut m.data, m.rows, m.cols);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Mat::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Fe::ONE);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Mat::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn determinant(&self) -> Result<Fe, LinalgError> {
        let h = self.charpoly()?;
        let c0 = h.coeff(0);
        Ok(if self.rows.is_multiple_of(2) { c0 } else { self.field.neg(c0) })
    }

    /// Null space `{v : A v = 0}` as a canonical subspace.
    pub fn kernel(&self) -> Subspace {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Fe::ZERO; self.cols];
            v[free] = Fe::ONE;
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(row, free));
            }
            basis.push(v);
        }
        Subspace::from_spanning(f, self.cols, basis)
    }

    /// Span of the columns.
    pub fn column_space(&self) -> Subspace {
        Subspace::from_spanning(&self.field, self.rows, (0..self.cols).map(|j| self.col(j)).collect())
    }

    /// Characteristic polynomial `det(xI - A)`, division-free (Berkowitz).
    pub fn charpoly(&self) -> Result<Poly, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let f = &self.field;
        let n = self.rows;
        // Coefficient vector, highest degree first, built from the trailing
        // principal submatrices outward.
        let mut vect: Vec<Fe> = vec![Fe::ONE];
        for k in (0..n).rev() {
            // submatrix on indices k..n, split as [[a, R], [C, A]]
            let size = n - k;
            let a = self.get(k, k);
            let r: Vec<Fe> = (k + 1..n).map(|j| self.get(k, j)).collect();
            let c: Vec<Fe> = (k + 1..n).map(|i| self.get(i, k)).collect();
            // diags: 1, -a, -R C, -R A C, -R A^2 C, ...
            let mut diags = vec![Fe::ONE, f.neg(a)];
            let mut cur = c.clone();
            for _ in 0..size.saturating_sub(1) {
                diags.push(f.neg(f.dot(&r, &cur)));
                let next: Vec<Fe> = (k + 1..n)
                    .map(|i| {
                        let row: Vec<Fe> = (k + 1..n).map(|j| self.get(i, j)).collect();
                        f.dot(&row, &cur)
                    })
                    .collect();
                cur = next;
            }
            // Toeplitz (size+1) x size times vect (length size)
            let mut next = vec![Fe::ZERO; size + 1];
            for (i, slot) in next.iter_mut().enumerate() {
                let mut acc = Fe::ZERO;
                for (j, &v) in vect.iter().enumerate() {
                    if j <= i {
                        acc = f.add(acc, f.mul(diags[i - j], v));
                    }
                }
                *slot = acc;
            }
            vect = next;
        }
        vect.reverse();
        Ok(Poly::new(f, vect))
    }

    /// Characteristic polynomial via similarity reduction to upper Hessenberg
    /// form followed by the standard three-term expansion. Uses division, so it
    /// shares no code with [`Mat::charpoly`].
    pub fn charpoly_hessenberg(&self) -> Result<Poly, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let f = &self.field;
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(piv) = (j + 1..n).find(|&i| !h.get(i, j).is_zero()) else {
                continue;
            };
            if piv != j + 1 {
                for c in 0..n {
                    h.data.swap(piv * n + c, (j + 1) * n + c);
                }
                for r in 0..n {
                    h.data.swap(r * n + piv, r * n + j + 1);
                }
            }
            let inv = f.inv(h.get(j + 1, j));
            for r in j + 2..n {
                let u = f.mul(h.get(r, j), inv);
                if u.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = f.sub(h.get(r, c), f.mul(u, h.get(j + 1, c)));
                    h.set(r, c, v);
                }
                for row in 0..n {
                    let v = f.add(h.get(row, j + 1), f.mul(u, h.get(row, r)));
                    h.set(row, j + 1, v);
                }
            }
        }
        let mut p: Vec<Poly> = vec![Poly::one(f)];
        for i in 0..n {
            let mut next = Poly::linear(f, h.get(i, i)).mul(&p[i]);
            let mut t = Fe::ONE;
            for a in (0..i).rev() {
                t = f.mul(t, h.get(a + 1, a));
                let c = f.mul(t, h.get(a, i));
                if !c.is_zero() {
                    next = next.sub(&p[a].scale(c));
                }
            }
            p.push(next);
        }
        Ok(p.pop().expect("nonempty"))
    }

    /// `p(A)` by Horner's rule.
    pub fn eval_poly(&self, p: &Poly) -> Mat {
        let f = &self.field;
        let mut acc = Mat::zeros(f, self.rows, self.cols);
        for &c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Mat::scalar(f, self.rows, c));
        }
        acc
    }
}

/// In-place Gauss–Jordan; returns pivot columns.
pub(crate) fn rref_in_place(f: &Field, data: &mut [Fe], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !data[i * cols + c].is_zero()) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                data.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(data[r * cols + c]);
        for j in c..cols {
            data[r * cols + j] = f.mul(data[r * cols + j], inv);
        }
        let pivot_row: Vec<Fe> = data[r * cols..(r + 1) * cols].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = data[i * cols + c];
            if factor.is_zero() {
                continue;
            }
            f.axpy(&mut data[i * cols..(i + 1) * cols], f.neg(factor), &pivot_row);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A subspace of `k^n` with its basis in reduced row echelon form.
///
/// The representation is unique per subspace, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Fe>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}: {:?})", self.dim(), self.ambient, self.basis)
    }
}

impl Subspace {
    pub fn from_spanning(field: &Field, ambient: usize, vectors: Vec<Vec<Fe>>) -> Subspace {
        let rows = vectors.len();
        let mut data: Vec<Fe> = Vec::with_capacity(rows * ambient);
        for v in &vectors {
            assert_eq!(v.len(), ambient, "vector length mismatch");
            data.extend_from_slice(v);
        }
        let pivots = rref_in_place(field, &mut data, rows, ambient);
        let basis = (0..pivots.len())
            .map(|i| data[i * ambient..(i + 1) * ambient].to_vec())
            .collect();
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Subspace {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![Fe::ZERO; ambient];
                v[i] = Fe::ONE;
                v
            })
            .collect();
        Subspace {
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Fe>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coords(&self, field: &Field, v: &[Fe]) -> Option<Vec<Fe>> {
        let c: Vec<Fe> = self.pivots.iter().map(|&p| v[p]).collect();
        let mut r = v.to_vec();
        for (b, &ci) in self.basis.iter().zip(&c) {
            field.axpy(&mut r, field.neg(ci), b);
        }
        r.iter().all(|x| x.is_zero()).then_some(c)
    }

    pub fn contains(&self, field: &Field, v: &[Fe]) -> bool {
        self.coords(field, v).is_some()
    }

    /// `v` minus its component along this subspace, in the pivot sense.
    pub fn reduce(&self, field: &Field, v: &[Fe]) -> Vec<Fe> {
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = r[p];
            if !c.is_zero() {
                field.axpy(&mut r, field.neg(c), b);
            }
        }
        r
    }

    pub fn is_subspace_of(&self, field: &Field, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(field, b))
    }

    /// Matrix with the basis vectors as columns.
    pub fn basis_matrix(&self, field: &Field) -> Mat {
        Mat::from_columns(field, self.ambient, &self.basis)
    }

    pub fn embed(&self, emb: &Embedding) -> Subspace {
        Subspace::from_spanning(
            emb.dst(),
            self.ambient,
            self.basis.iter().map(|b| b.iter().map(|&c| emb.apply(c)).collect()).collect(),
        )
    }
}

/// `ker (g - αI)^n`.
pub fn generalized_eigenspace(g: &Mat, alpha: Fe) -> Subspace {
    let f = g.field();
    let n = g.rows();
    g.sub(&Mat::scalar(f, n, alpha)).pow(n as u64).kernel()
}

/// Idempotent onto `V_{g,α}` along the other generalized eigenspaces.
///
/// Computed as `p(g)` with `p ≡ 1 mod (x-α)^μ` and `p ≡ 0` modulo the
/// complementary factor of the characteristic polynomial.
pub fn spectral_projector(g: &Mat, alpha: Fe) -> Result<Mat, LinalgError> {
    let h = g.charpoly()?;
    spectral_projector_with(g, &h, alpha)
}

/// Same as [`spectral_projector`] with a precomputed characteristic polynomial.
pub fn spectral_projector_with(g: &Mat, h: &Poly, alpha: Fe) -> Result<Mat, LinalgError> {
    let f = g.field();
    let mult = poly::root_multiplicity(h, alpha);
    if mult == 0 {
        return Err(LinalgError::NotAnEigenvalue(f.show(alpha)));
    }
    let a = Poly::linear(f, alpha).pow(mult as u64);
    let b = h.div_exact(&a).expect("multiplicity divides");
    // s·a + t·b = 1, so t·b ≡ 1 mod a and ≡ 0 mod b
    let (gcd, _s, t) = a.ext_gcd(&b);
    debug_assert!(gcd.is_one());
    Ok(g.eval_poly(&t.mul(&b).rem(h)))
}

/// Incremental semi-echelon basis.
pub(crate) struct Echelon {
    field: Field,
    width: usize,
    rows: Vec<Vec<Fe>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub(crate) fn new(field: &Field, width: usize) -> Echelon {
        Echelon {
            field: field.clone(),
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows; stores it if independent.
    pub(crate) fn insert(&mut self, mut v: Vec<Fe>) -> bool {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if !c.is_zero() {
                f.axpy(&mut v, f.neg(c), row);
            }
        }
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = f.inv(v[p]);
        for c in v.iter_mut() {
            *c = f.mul(*c, inv);
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub(crate) fn into_subspace(self) -> Subspace {
        Subspace::from_spanning(&self.field, self.width, self.rows)
    }
}
