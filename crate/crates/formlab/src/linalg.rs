//! Exact dense linear algebra over [`Scalar`].
//!
//! Everything reduces to Gauss-Jordan elimination with the first nonzero
//! pivot in canonical order; exact arithmetic makes pivoting heuristics
//! unnecessary and determinism is the priority.

use crate::scalar::Scalar;
use num_rational::BigRational;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: Vec<Scalar>) {
        assert_eq!(row.len(), self.cols);
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    /// In-place Gauss-Jordan to reduced row echelon form; returns pivot
    /// column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for k in 0..self.cols {
                    self.data.swap(r * self.cols + k, pr * self.cols + k);
                }
            }
            let inv = self.at(r, c).inv();
            for k in 0..self.cols {
                let v = self.at(r, k) * &inv;
                *self.at_mut(r, k) = v;
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let f = self.at(i, c).clone();
                    for k in 0..self.cols {
                        let v = self.at(i, k) - &(self.at(r, k) * &f);
                        *self.at_mut(i, k) = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Matrix-vector product (rows × vector).
    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for c in 0..self.cols {
                    if !self.at(r, c).is_zero() && !v[c].is_zero() {
                        acc += &(self.at(r, c) * &v[c]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Basis of the null space `{x : A·x = 0}` (columns as unknowns).
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut out = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![Scalar::zero(); self.cols];
            v[fc] = Scalar::one();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.at(ri, fc);
            }
            out.push(v);
        }
        out
    }

    /// One solution of `A·x = b`, if consistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, self.cols) = b[r].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (ri, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.at(ri, self.cols).clone();
        }
        Some(x)
    }
}

/// Hermitian inner product of coordinate vectors with positive rational
/// weights: `⟨x, y⟩ = Σ w_k x_k conj(y_k)`.
pub fn weighted_inner(x: &[Scalar], y: &[Scalar], w: &[BigRational]) -> Scalar {
    let mut acc = Scalar::zero();
    for ((xv, yv), wk) in x.iter().zip(y).zip(w) {
        if !xv.is_zero() && !yv.is_zero() {
            let p = xv * &yv.conj();
            acc += &(&p * &Scalar::from_rational(wk.clone()));
        }
    }
    acc
}

/// Minimum-norm solution of `A·x = b` with respect to the weighted inner
/// product: the particular solution minus its projection onto `ker A`.
pub fn min_norm_solve(a: &Mat, b: &[Scalar], w: &[BigRational]) -> Option<Vec<Scalar>> {
    let x0 = a.solve(b)?;
    let kernel = a.kernel();
    if kernel.is_empty() {
        return Some(x0);
    }
    // Solve the normal equations G·c = r with G the kernel Gram matrix,
    // r_k = ⟨x0, k_k⟩; then x = x0 − Σ c_k k_k.
    let n = kernel.len();
    let mut gram = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            *gram.at_mut(i, j) = weighted_inner(&kernel[j], &kernel[i], w);
        }
    }
    let rhs: Vec<Scalar> = kernel.iter().map(|k| weighted_inner(&x0, k, w)).collect();
    let coeffs = gram.solve(&rhs).expect("Gram matrix of independent vectors is invertible");
    let mut x = x0;
    for (c, k) in coeffs.iter().zip(&kernel) {
        for (xi, ki) in x.iter_mut().zip(k) {
            *xi -= &(c * ki);
        }
    }
    Some(x)
}

/// A linear subspace of a fixed coordinate space, stored as the unique
/// reduced row echelon basis. Two subspaces are equal iff the matrices are.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    pub dim_ambient: usize,
    /// RREF basis vectors, each of length `dim_ambient`.
    pub basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(dim_ambient: usize) -> Self {
        Subspace { dim_ambient, basis: Vec::new() }
    }

    pub fn full(dim_ambient: usize) -> Self {
        Subspace::from_spanning(
            dim_ambient,
            (0..dim_ambient)
                .map(|i| {
                    let mut v = vec![Scalar::zero(); dim_ambient];
                    v[i] = Scalar::one();
                    v
                })
                .collect(),
        )
    }

    pub fn from_spanning(dim_ambient: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(dim_ambient);
        }
        assert!(vectors.iter().all(|v| v.len() == dim_ambient));
        let mut m = Mat::from_rows(vectors);
        let pivots = m.rref();
        let basis = (0..pivots.len()).map(|r| m.row(r).to_vec()).collect();
        Subspace { dim_ambient, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim_ambient);
        if v.iter().all(Scalar::is_zero) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        let mut m = Mat::from_rows(rows);
        m.rref().len() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.dim_ambient, other.dim_ambient);
        let mut vecs = self.basis.clone();
        vecs.extend(other.basis.clone());
        Subspace::from_spanning(self.dim_ambient, vecs)
    }

    /// Intersection via the kernel of the stacked coefficient system.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.dim_ambient, other.dim_ambient);
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.dim_ambient);
        }
        // Unknowns: coefficients (c, d) with Σ c_i a_i = Σ d_j b_j.
        let rows = self.dim_ambient;
        let cols = self.dim() + other.dim();
        let mut m = Mat::zeros(rows, cols);
        for (i, a) in self.basis.iter().enumerate() {
            for r in 0..rows {
                *m.at_mut(r, i) = a[r].clone();
            }
        }
        for (j, b) in other.basis.iter().enumerate() {
            for r in 0..rows {
                *m.at_mut(r, self.dim() + j) = -&b[r];
            }
        }
        let vectors = m
            .kernel()
            .into_iter()
            .map(|k| {
                let mut v = vec![Scalar::zero(); self.dim_ambient];
                for (i, a) in self.basis.iter().enumerate() {
                    for r in 0..self.dim_ambient {
                        v[r] += &(&k[i] * &a[r]);
                    }
                }
                v
            })
            .collect();
        Subspace::from_spanning(self.dim_ambient, vectors)
    }

    /// Representatives of `self` completing `sub` to `self`: a maximal set of
    /// basis vectors of `self` independent modulo `sub`.
    pub fn quotient_basis(&self, sub: &Subspace) -> Vec<Vec<Scalar>> {
        assert_eq!(self.dim_ambient, sub.dim_ambient);
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for v in &self.basis {
            if !acc.contains(v) {
                out.push(v.clone());
                acc = acc.sum(&Subspace::from_spanning(self.dim_ambient, vec![v.clone()]));
            }
        }
        out
    }
}
