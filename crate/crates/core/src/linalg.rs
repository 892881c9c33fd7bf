//! Self-contained dense complex linear algebra.
//!
//! Everything operates on square, row-major [`ComplexMatrix`] values at
//! double precision. The eigensolver is a cyclic Jacobi iteration for
//! Hermitian input; the matrix exponential uses scaling-and-squaring with a
//! truncated Taylor series and is intended for oracle-scale problems only.

use num_complex::Complex64;
use thiserror::Error;

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Largest dimension accepted by [`matrix_exp`].
pub const MATRIX_EXP_MAX_DIM: usize = 4096;

/// Errors from the eigensolver and the matrix exponential.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum LinalgError {
    #[error("matrix is not Hermitian: max |a - a†| entry {defect:.3e} exceeds tolerance {tol:.3e}")]
    NotHermitian { defect: f64, tol: f64 },
    #[error("dimension {dim} exceeds supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },
}

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<C64>,
}

impl ComplexMatrix {
    /// Zero matrix of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![ZERO; dim * dim] }
    }

    /// Identity matrix of the given dimension.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = ONE;
        }
        m
    }

    /// Build from an entry-generating function `f(row, col)`.
    pub fn from_fn<F: FnMut(usize, usize) -> C64>(dim: usize, mut f: F) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self { dim, entries }
    }

    /// Diagonal matrix from real entries.
    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * diag.len() + i] = C64::new(d, 0.0);
        }
        m
    }

    /// Matrix with a single unit entry at `(row, col)`.
    pub fn basis_matrix(dim: usize, row: usize, col: usize) -> Self {
        let mut m = Self::zeros(dim);
        m.entries[row * dim + col] = ONE;
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        self.entries[row * self.dim + col] = value;
    }

    /// Row `i` as a slice.
    pub fn row(&self, i: usize) -> &[C64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    /// Matrix product `self * other`.
    ///
    /// Zero entries of the left factor are skipped, so multiplying by a
    /// sparsely populated operator costs O(nnz * dim) instead of O(dim^3).
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix product dimension mismatch");
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            let a_row = &self.entries[i * n..(i + 1) * n];
            let out_row = &mut out[i * n..(i + 1) * n];
            for (k, &aik) in a_row.iter().enumerate() {
                if aik.re == 0.0 && aik.im == 0.0 {
                    continue;
                }
                let b_row = &other.entries[k * n..(k + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += aik * b;
                }
            }
        }
        Self { dim: n, entries: out }
    }

    /// Matrix product `self * other`, skipping zero entries of the *right*
    /// factor. Equivalent to [`Self::mul`]; preferable when the right factor
    /// is the sparsely populated one.
    pub(crate) fn mul_rhs_sparse(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix product dimension mismatch");
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for k in 0..n {
            let b_row = &other.entries[k * n..(k + 1) * n];
            for (j, &bkj) in b_row.iter().enumerate() {
                if bkj.re == 0.0 && bkj.im == 0.0 {
                    continue;
                }
                let mut ai = k;
                let mut oi = j;
                for _ in 0..n {
                    out[oi] += self.entries[ai] * bkj;
                    ai += n;
                    oi += n;
                }
            }
        }
        Self { dim: n, entries: out }
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.dim, v.len(), "matrix-vector dimension mismatch");
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (na, nb) = (self.dim, other.dim);
        let n = na * nb;
        let mut out = vec![ZERO; n * n];
        for i in 0..na {
            for j in 0..na {
                let aij = self.entries[i * na + j];
                if aij.re == 0.0 && aij.im == 0.0 {
                    continue;
                }
                for k in 0..nb {
                    for l in 0..nb {
                        out[(i * nb + k) * n + (j * nb + l)] = aij * other.entries[k * nb + l];
                    }
                }
            }
        }
        Self { dim: n, entries: out }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let n = self.dim;
        Self::from_fn(n, |i, j| self.entries[j * n + i].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.entries[i * self.dim + i]).sum()
    }

    /// Frobenius norm.
    pub fn fro_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry modulus of `self - self†`.
    pub fn herm_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let d = (self.entries[i * n + j] - self.entries[j * n + i].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// `self += c * other`, in place.
    pub fn add_scaled(&mut self, c: C64, other: &Self) {
        assert_eq!(self.dim, other.dim, "matrix sum dimension mismatch");
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += c * b;
        }
    }

    /// Replace `self` by `(self + self†) / 2`, in place.
    pub fn hermitize(&mut self) {
        let n = self.dim;
        for i in 0..n {
            for j in i..n {
                let upper = self.entries[i * n + j];
                let lower = self.entries[j * n + i];
                let avg = (upper + lower.conj()) * 0.5;
                self.entries[i * n + j] = avg;
                self.entries[j * n + i] = avg.conj();
            }
        }
    }

    /// True when no entry is NaN or infinite.
    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.entries[i * self.dim + j]
    }
}

impl std::ops::Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix sum dimension mismatch");
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect();
        ComplexMatrix { dim: self.dim, entries }
    }
}

impl std::ops::Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix difference dimension mismatch");
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect();
        ComplexMatrix { dim: self.dim, entries }
    }
}

impl std::ops::Mul<C64> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: C64) -> ComplexMatrix {
        let entries = self.entries.iter().map(|a| a * rhs).collect();
        ComplexMatrix { dim: self.dim, entries }
    }
}

impl std::ops::Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        let entries = self.entries.iter().map(|a| -a).collect();
        ComplexMatrix { dim: self.dim, entries }
    }
}

/// All eigenvalues of a Hermitian matrix, ascending.
///
/// `tol` bounds the accepted deviation from exact Hermiticity.
pub fn hermitian_eigenvalues(a: &ComplexMatrix, tol: f64) -> Result<Vec<f64>, LinalgError> {
    let (mut vals, _) = hermitian_eigen_impl(a, tol, false)?;
    vals.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(vals)
}

/// Eigenvalues (ascending) and matching eigenvector columns of a Hermitian
/// matrix.
pub fn hermitian_eigen(a: &ComplexMatrix, tol: f64) -> Result<(Vec<f64>, ComplexMatrix), LinalgError> {
    let (vals, vecs) = hermitian_eigen_impl(a, tol, true)?;
    let vecs = vecs.expect("eigenvectors requested");
    let n = a.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| vals[x].partial_cmp(&vals[y]).unwrap());
    let sorted_vals: Vec<f64> = order.iter().map(|&k| vals[k]).collect();
    let mut sorted_vecs = ComplexMatrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            sorted_vecs.set(row, new_col, vecs.get(row, old_col));
        }
    }
    Ok((sorted_vals, sorted_vecs))
}

fn hermitian_eigen_impl(
    a: &ComplexMatrix,
    tol: f64,
    want_vectors: bool,
) -> Result<(Vec<f64>, Option<ComplexMatrix>), LinalgError> {
    let defect = a.herm_defect();
    if defect > tol {
        return Err(LinalgError::NotHermitian { defect, tol });
    }
    let n = a.dim();
    let mut vals = vec![0.0f64; n];
    let mut vecs = want_vectors.then(|| ComplexMatrix::zeros(n));

    // Rows connected through exactly-zero entries never mix, so the problem
    // splits into independent diagonal blocks. States confined to an
    // invariant sector keep their complementary blocks at exact zero, which
    // makes this split a large win for evolved density matrices.
    for comp in zero_pattern_components(a) {
        if comp.len() == 1 {
            let i = comp[0];
            vals[i] = a.get(i, i).re;
            if let Some(v) = vecs.as_mut() {
                v.set(i, i, ONE);
            }
            continue;
        }
        let k = comp.len();
        let mut sub = vec![ZERO; k * k];
        for (bi, &gi) in comp.iter().enumerate() {
            for (bj, &gj) in comp.iter().enumerate() {
                sub[bi * k + bj] = a.get(gi, gj);
            }
        }
        let sub_vecs = jacobi_diagonalize(&mut sub, k, want_vectors);
        for (bi, &gi) in comp.iter().enumerate() {
            vals[gi] = sub[bi * k + bi].re;
        }
        if let (Some(v), Some(sv)) = (vecs.as_mut(), sub_vecs) {
            for (bi, &gi) in comp.iter().enumerate() {
                for (bj, &gj) in comp.iter().enumerate() {
                    v.set(gi, gj, sv[bi * k + bj]);
                }
            }
        }
    }
    Ok((vals, vecs))
}

/// Connected components of the nonzero pattern, each sorted ascending.
#[allow(clippy::needless_range_loop)] // `seen` is mutated inside the scan
fn zero_pattern_components(a: &ComplexMatrix) -> Vec<Vec<usize>> {
    let n = a.dim();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut comp = Vec::new();
        while let Some(i) = stack.pop() {
            comp.push(i);
            for j in 0..n {
                if seen[j] {
                    continue;
                }
                let up = a.get(i, j);
                let lo = a.get(j, i);
                if up.re != 0.0 || up.im != 0.0 || lo.re != 0.0 || lo.im != 0.0 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Cyclic Jacobi sweeps on a k-by-k Hermitian block, in place.
///
/// Stops when the off-diagonal Frobenius norm drops below 1e-12 times the
/// Frobenius norm of the input, or after 100 sweeps. Returns the accumulated
/// rotation matrix (eigenvector columns) when requested.
fn jacobi_diagonalize(a: &mut [C64], k: usize, want_vectors: bool) -> Option<Vec<C64>> {
    let mut vecs = want_vectors.then(|| {
        let mut v = vec![ZERO; k * k];
        for i in 0..k {
            v[i * k + i] = ONE;
        }
        v
    });
    let fro: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if fro == 0.0 {
        return vecs;
    }
    let conv = 1e-12 * fro;
    // Pivots below this leave the final off-diagonal norm under `conv` even
    // if every one of them is skipped.
    let skip = conv / k as f64;

    for _sweep in 0..100 {
        let mut off_sq = 0.0f64;
        for p in 0..k {
            for q in (p + 1)..k {
                off_sq += 2.0 * a[p * k + q].norm_sqr();
            }
        }
        if off_sq.sqrt() <= conv {
            break;
        }
        for p in 0..k - 1 {
            for q in (p + 1)..k {
                let apq = a[p * k + q];
                let r = apq.norm();
                if r <= skip {
                    continue;
                }
                let w = apq / r;
                let alpha = a[p * k + p].re;
                let beta = a[q * k + q].re;
                let theta = (beta - alpha) / (2.0 * r);
                let t = if theta.abs() > 1e12 {
                    -1.0 / (2.0 * theta)
                } else {
                    let sg = if theta >= 0.0 { 1.0 } else { -1.0 };
                    -sg / (theta.abs() + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                for j in 0..k {
                    if j == p || j == q {
                        continue;
                    }
                    let apj = a[p * k + j];
                    let aqj = a[q * k + j];
                    let npj = apj * c + w * aqj * s;
                    let nqj = aqj * c - w.conj() * apj * s;
                    a[p * k + j] = npj;
                    a[j * k + p] = npj.conj();
                    a[q * k + j] = nqj;
                    a[j * k + q] = nqj.conj();
                }
                a[p * k + p] = C64::new(alpha + t * r, 0.0);
                a[q * k + q] = C64::new(beta - t * r, 0.0);
                a[p * k + q] = ZERO;
                a[q * k + p] = ZERO;

                if let Some(v) = vecs.as_mut() {
                    for j in 0..k {
                        let vjp = v[j * k + p];
                        let vjq = v[j * k + q];
                        v[j * k + p] = vjp * c + w.conj() * vjq * s;
                        v[j * k + q] = vjq * c - w * vjp * s;
                    }
                }
            }
        }
    }
    vecs
}

/// Matrix exponential by scaling-and-squaring with an order-18 Taylor series.
///
/// Intended as a validation oracle; the dimension is capped at
/// [`MATRIX_EXP_MAX_DIM`].
pub fn matrix_exp(a: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    let n = a.dim();
    if n > MATRIX_EXP_MAX_DIM {
        return Err(LinalgError::DimensionTooLarge { dim: n, max: MATRIX_EXP_MAX_DIM });
    }
    let norm = a.max_abs();
    let s = if norm <= 0.5 { 0 } else { (2.0 * norm).log2().ceil() as i32 };
    let b = a * C64::new(0.5f64.powi(s), 0.0);

    let mut sum = ComplexMatrix::identity(n);
    sum.add_scaled(ONE, &b);
    let mut term = b.clone();
    for j in 2..=18u32 {
        term = term.mul(&b);
        term = &term * C64::new(1.0 / j as f64, 0.0);
        sum.add_scaled(ONE, &term);
    }
    let mut result = sum;
    for _ in 0..s {
        result = result.mul(&result);
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_matrix(rng: &mut StdRng, dim: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(dim, |_, _| {
            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
    }

    fn random_hermitian(rng: &mut StdRng, dim: usize) -> ComplexMatrix {
        let m = random_matrix(rng, dim);
        let mut h = &m + &m.dagger();
        h.hermitize();
        h
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = ComplexMatrix::identity(2);
        let i3 = ComplexMatrix::identity(3);
        assert_eq!(i2.kron(&i3), ComplexMatrix::identity(6));
    }

    #[test]
    fn kron_diagonal_case() {
        let a = ComplexMatrix::from_diag(&[1.0, -1.0]);
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(a.kron(&i2), ComplexMatrix::from_diag(&[1.0, 1.0, -1.0, -1.0]));
    }

    #[test]
    fn kron_mixed_product_property() {
        // kron(a,b) * kron(c,d) = kron(a*c, b*d), checked by dense products.
        let mut rng = StdRng::seed_from_u64(7);
        let a = random_matrix(&mut rng, 2);
        let c = random_matrix(&mut rng, 2);
        let b = random_matrix(&mut rng, 3);
        let d = random_matrix(&mut rng, 3);
        let lhs = a.kron(&b).mul(&c.kron(&d));
        let rhs = a.mul(&c).kron(&b.mul(&d));
        assert!((&lhs - &rhs).max_abs() < 1e-13);
    }

    #[test]
    fn kron_associative_on_integer_entries() {
        let a = ComplexMatrix::from_fn(2, |i, j| C64::new((i * 2 + j) as f64, 0.0));
        let b = ComplexMatrix::from_fn(2, |i, j| C64::new((j as f64) - (i as f64), 1.0));
        let c = ComplexMatrix::from_diag(&[2.0, -3.0]);
        assert_eq!(a.kron(&b).kron(&c), a.kron(&b.kron(&c)));
    }

    #[test]
    fn dagger_identity_and_ladder() {
        let i3 = ComplexMatrix::identity(3);
        assert_eq!(i3.dagger(), i3);
        let mut lower = ComplexMatrix::zeros(2);
        lower.set(0, 1, ONE);
        let mut raise = ComplexMatrix::zeros(2);
        raise.set(1, 0, ONE);
        assert_eq!(lower.dagger(), raise);
    }

    #[test]
    fn dagger_matches_elementwise_definition() {
        let mut rng = StdRng::seed_from_u64(11);
        let a = random_matrix(&mut rng, 3);
        let d = a.dagger();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d.get(i, j), a.get(j, i).conj());
            }
        }
    }

    #[test]
    fn dagger_is_involution_exactly() {
        let mut rng = StdRng::seed_from_u64(13);
        let a = random_matrix(&mut rng, 5);
        assert_eq!(a.dagger().dagger(), a);
    }

    #[test]
    fn eigenvalues_of_diagonal_matrix() {
        let a = ComplexMatrix::from_diag(&[3.0, 1.0, 2.0]);
        let vals = hermitian_eigenvalues(&a, 1e-12).unwrap();
        assert_eq!(vals, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn eigenvalues_of_pauli_x() {
        let mut a = ComplexMatrix::zeros(2);
        a.set(0, 1, ONE);
        a.set(1, 0, ONE);
        let vals = hermitian_eigenvalues(&a, 1e-12).unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-14);
        assert!((vals[1] - 1.0).abs() < 1e-14);
    }

    /// Roots of the characteristic cubic of a 3x3 Hermitian matrix, by the
    /// trigonometric method. Independent of the Jacobi path.
    fn cubic_eigen_oracle(a: &ComplexMatrix) -> Vec<f64> {
        assert_eq!(a.dim(), 3);
        // det(a - x I) = -x^3 + c2 x^2 + c1 x + c0
        let tr = a.trace().re;
        let a2 = a.mul(a);
        let tr2 = a2.trace().re;
        let det = {
            let m = |i: usize, j: usize| a.get(i, j);
            (m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)))
                .re
        };
        // x^3 - tr x^2 + q x - det = 0, q = (tr^2 - tr2) / 2
        let q = (tr * tr - tr2) / 2.0;
        // depressed: y^3 + p y + r with x = y + tr/3
        let p = q - tr * tr / 3.0;
        let r = -2.0 * tr * tr * tr / 27.0 + tr * q / 3.0 - det;
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * r / (p * m)).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        let mut roots: Vec<f64> = (0..3)
            .map(|k| m * (phi - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() + tr / 3.0)
            .collect();
        roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
        roots
    }

    #[test]
    fn eigenvalues_match_cubic_oracle() {
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..20 {
            let a = random_hermitian(&mut rng, 3);
            let vals = hermitian_eigenvalues(&a, 1e-12).unwrap();
            let oracle = cubic_eigen_oracle(&a);
            for (v, o) in vals.iter().zip(&oracle) {
                assert!((v - o).abs() < 1e-10, "jacobi {v} vs cubic {o}");
            }
        }
    }

    #[test]
    fn eigen_reconstruction_residual() {
        let mut rng = StdRng::seed_from_u64(19);
        for dim in [4usize, 16, 40] {
            let a = random_hermitian(&mut rng, dim);
            let (vals, vecs) = hermitian_eigen(&a, 1e-12).unwrap();
            let lambda = ComplexMatrix::from_diag(&vals);
            let recon = vecs.mul(&lambda).mul(&vecs.dagger());
            let resid = (&recon - &a).fro_norm();
            assert!(resid <= 1e-10 * a.fro_norm(), "dim {dim}: residual {resid:.3e}");
        }
    }

    #[test]
    fn eigenvalue_sum_equals_trace() {
        let mut rng = StdRng::seed_from_u64(23);
        for dim in [3usize, 8, 20] {
            let a = random_hermitian(&mut rng, dim);
            let vals = hermitian_eigenvalues(&a, 1e-12).unwrap();
            let sum: f64 = vals.iter().sum();
            assert!((sum - a.trace().re).abs() <= 1e-10 * dim as f64);
        }
    }

    #[test]
    fn eigen_splits_disconnected_blocks() {
        // Block-diagonal by zero pattern: a 2x2 coupled pair plus a singleton.
        let mut a = ComplexMatrix::zeros(3);
        a.set(0, 0, C64::new(1.0, 0.0));
        a.set(0, 2, C64::new(0.0, 0.5));
        a.set(2, 0, C64::new(0.0, -0.5));
        a.set(2, 2, C64::new(1.0, 0.0));
        a.set(1, 1, C64::new(-4.0, 0.0));
        let vals = hermitian_eigenvalues(&a, 1e-12).unwrap();
        assert!((vals[0] + 4.0).abs() < 1e-14);
        assert!((vals[1] - 0.5).abs() < 1e-14);
        assert!((vals[2] - 1.5).abs() < 1e-14);
    }

    #[test]
    fn non_hermitian_input_rejected() {
        let mut a = ComplexMatrix::zeros(2);
        a.set(0, 1, ONE);
        match hermitian_eigenvalues(&a, 1e-12) {
            Err(LinalgError::NotHermitian { .. }) => {}
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let z = ComplexMatrix::zeros(4);
        assert_eq!(matrix_exp(&z).unwrap(), ComplexMatrix::identity(4));
    }

    #[test]
    fn exp_of_diagonal() {
        let a = ComplexMatrix::from_diag(&[0.3, -1.2]);
        let e = matrix_exp(&a).unwrap();
        assert!((e.get(0, 0).re - 0.3f64.exp()).abs() < 1e-12);
        assert!((e.get(1, 1).re - (-1.2f64).exp()).abs() < 1e-12);
        assert_eq!(e.get(0, 1), ZERO);
        assert_eq!(e.get(1, 0), ZERO);
    }

    #[test]
    fn exp_of_nilpotent_truncates() {
        let mut n = ComplexMatrix::zeros(2);
        n.set(0, 1, ONE);
        let e = matrix_exp(&n).unwrap();
        let expected = &ComplexMatrix::identity(2) + &n;
        assert!((&e - &expected).max_abs() < 1e-15);
    }

    #[test]
    fn exp_inverse_property() {
        let mut rng = StdRng::seed_from_u64(29);
        for dim in [2usize, 5, 9] {
            let mut a = random_matrix(&mut rng, dim);
            a = &a * C64::new(10.0 / (dim as f64), 0.0); // keep norms around O(1..10)
            let e = matrix_exp(&a).unwrap();
            let einv = matrix_exp(&(-&a)).unwrap();
            let prod = e.mul(&einv);
            let defect = (&prod - &ComplexMatrix::identity(dim)).max_abs();
            assert!(defect <= 1e-9, "dim {dim}: defect {defect:.3e}");
        }
    }

    #[test]
    fn exp_rejects_oversized_input() {
        let a = ComplexMatrix::zeros(MATRIX_EXP_MAX_DIM + 1);
        match matrix_exp(&a) {
            Err(LinalgError::DimensionTooLarge { dim, max }) => {
                assert_eq!(dim, MATRIX_EXP_MAX_DIM + 1);
                assert_eq!(max, MATRIX_EXP_MAX_DIM);
            }
            other => panic!("expected DimensionTooLarge, got {other:?}"),
        }
    }

    #[test]
    fn rhs_sparse_product_agrees_with_mul() {
        let mut rng = StdRng::seed_from_u64(31);
        let a = random_matrix(&mut rng, 6);
        let b = random_matrix(&mut rng, 6);
        let lhs = a.mul(&b);
        let rhs = a.mul_rhs_sparse(&b);
        assert!((&lhs - &rhs).max_abs() < 1e-13);
    }
}
