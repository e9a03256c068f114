//! Small dense complex matrices and Jacobi-type decompositions.
//!
//! Everything here is sized for desk-scale problems (d up to a few dozen).
//! Matrices are square and stored row-major.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

/// Off-diagonal threshold (relative to the Frobenius norm) at which a Jacobi
/// sweep is considered converged.
pub const JACOBI_THRESHOLD: f64 = 1e-14;
/// Hard cap on cyclic sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

#[derive(Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{})", self.n, self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &z) in diag.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let d: Vec<Complex64> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_diag(&d)
    }

    /// Builds a matrix from row-major entries. Panics if `entries.len()` is not `n*n`.
    pub fn from_row_major(n: usize, entries: Vec<Complex64>) -> Self {
        assert_eq!(entries.len(), n * n, "expected {} entries", n * n);
        CMatrix { n, data: entries }
    }

    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "matrix must be square");
            data.extend_from_slice(r);
        }
        CMatrix { n, data }
    }

    /// Interprets `coords` as interleaved (re, im) pairs in row-major order.
    pub fn from_real_coords(n: usize, coords: &[f64]) -> Self {
        assert_eq!(coords.len(), 2 * n * n, "expected {} real coordinates", 2 * n * n);
        let data = coords.chunks_exact(2).map(|p| Complex64::new(p[0], p[1])).collect();
        CMatrix { n, data }
    }

    pub fn to_real_coords(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(2 * self.data.len());
        self.write_real_coords(&mut out);
        out
    }

    pub fn write_real_coords(&self, out: &mut Vec<f64>) {
        for z in &self.data {
            out.push(z.re);
            out.push(z.im);
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        CMatrix { n: self.n, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        CMatrix { n: self.n, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Hermitian part `(A + A*)/2`.
    pub fn hermitian_part(&self) -> Self {
        (self + &self.adjoint()).scale_real(0.5)
    }

    /// Anti-Hermitian part divided by `i`: `(A - A*)/(2i)`, again Hermitian.
    pub fn skew_part(&self) -> Self {
        (self - &self.adjoint()).scale(Complex64::new(0.0, -0.5))
    }

    /// Sum of singular values.
    pub fn trace_norm(&self) -> f64 {
        singular_values(self).iter().sum()
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> f64 {
        singular_values(self).first().copied().unwrap_or(0.0)
    }

    /// `max |(U U* - I)_{ij}|`.
    pub fn unitarity_defect(&self) -> f64 {
        (&(self * &self.adjoint()) - &Self::identity(self.n)).max_abs()
    }

    fn col_dot(&self, p: usize, q: usize) -> Complex64 {
        (0..self.n).map(|i| self[(i, p)].conj() * self[(i, q)]).sum()
    }

    fn col_norm_sqr(&self, p: usize) -> f64 {
        (0..self.n).map(|i| self[(i, p)].norm_sqr()).sum()
    }

    fn rotate_cols(&mut self, p: usize, q: usize, rot: &Rotation) {
        for i in 0..self.n {
            let xp = self[(i, p)];
            let xq = self[(i, q)];
            self[(i, p)] = xp * rot.pp + xq * rot.qp;
            self[(i, q)] = xp * rot.pq + xq * rot.qq;
        }
    }

    fn rotate_rows_adjoint(&mut self, p: usize, q: usize, rot: &Rotation) {
        for j in 0..self.n {
            let xp = self[(p, j)];
            let xq = self[(q, j)];
            self[(p, j)] = rot.pp.conj() * xp + rot.qp.conj() * xq;
            self[(q, j)] = rot.pq.conj() * xp + rot.qq.conj() * xq;
        }
    }

    fn column(&self, k: usize) -> Vec<Complex64> {
        (0..self.n).map(|i| self[(i, k)]).collect()
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        CMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        CMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

/// A 2x2 unitary acting on coordinates (p, q), stored entrywise.
struct Rotation {
    pp: Complex64,
    pq: Complex64,
    qp: Complex64,
    qq: Complex64,
}

impl Rotation {
    /// Unitary `J` with `J* [[alpha, gamma], [conj(gamma), beta]] J` diagonal.
    ///
    /// A diagonal phase makes the off-diagonal entry real, after which the
    /// classical real Jacobi rotation applies.
    fn diagonalizing(alpha: f64, beta: f64, gamma: Complex64) -> Self {
        let mag = gamma.norm();
        let phase = if mag > 0.0 { (gamma / mag).conj() } else { Complex64::new(1.0, 0.0) };
        let zeta = (beta - alpha) / (2.0 * mag);
        let t = if zeta >= 0.0 {
            1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
        } else {
            -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
        };
        let c = 1.0 / (1.0 + t * t).sqrt();
        let s = t * c;
        Rotation {
            pp: Complex64::new(c, 0.0),
            pq: Complex64::new(s, 0.0),
            qp: phase * (-s),
            qq: phase * c,
        }
    }
}

/// Eigendecomposition of a Hermitian matrix: `h = vectors * diag(values) * vectors*`.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Eigenvalues in non-increasing order.
    pub values: Vec<f64>,
    /// Unitary whose columns are the matching eigenvectors.
    pub vectors: CMatrix,
}

impl HermitianEigen {
    /// Applies a real function to the spectrum: `V diag(f(λ)) V*`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> Complex64) -> CMatrix {
        let diag: Vec<Complex64> = self.values.iter().map(|&x| f(x)).collect();
        let inner = &self.vectors * &CMatrix::from_diag(&diag);
        &inner * &self.vectors.adjoint()
    }
}

/// Cyclic two-sided Jacobi on a Hermitian matrix. Only the Hermitian part of
/// `h` is used.
pub fn hermitian_eigen(h: &CMatrix) -> HermitianEigen {
    let n = h.dim();
    let mut a = h.hermitian_part();
    let mut v = CMatrix::identity(n);
    let scale = a.frobenius_norm();
    if scale > 0.0 {
        for _ in 0..JACOBI_MAX_SWEEPS {
            let off: f64 = (0..n)
                .flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q)))
                .map(|(p, q)| a[(p, q)].norm_sqr())
                .sum::<f64>()
                .sqrt();
            if off <= JACOBI_THRESHOLD * scale {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let gamma = a[(p, q)];
                    if gamma.norm() <= f64::MIN_POSITIVE {
                        continue;
                    }
                    let rot = Rotation::diagonalizing(a[(p, p)].re, a[(q, q)].re, gamma);
                    a.rotate_cols(p, q, &rot);
                    a.rotate_rows_adjoint(p, q, &rot);
                    a[(p, q)] = Complex64::new(0.0, 0.0);
                    a[(q, p)] = Complex64::new(0.0, 0.0);
                    a[(p, p)].im = 0.0;
                    a[(q, q)].im = 0.0;
                    v.rotate_cols(p, q, &rot);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = CMatrix::zeros(n);
    for (k, &i) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, k)] = v[(r, i)];
        }
    }
    HermitianEigen { values, vectors }
}

/// Singular value decomposition `m = u * diag(s) * v*`.
///
/// Columns of `u` belonging to zero singular values are left at zero; only
/// the leading `rank` columns are meaningful.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: CMatrix,
    pub s: Vec<f64>,
    pub v: CMatrix,
    pub rank: usize,
}

impl Svd {
    /// `Σ_{k < rank} u_k v_k*`: the minimal-norm subgradient of the trace
    /// norm at the decomposed matrix.
    pub fn polar_factor(&self) -> CMatrix {
        let n = self.u.dim();
        let mut out = CMatrix::zeros(n);
        for k in 0..self.rank {
            for i in 0..n {
                let uik = self.u[(i, k)];
                for j in 0..n {
                    out[(i, j)] += uik * self.v[(j, k)].conj();
                }
            }
        }
        out
    }
}

/// One-sided (Hestenes) cyclic Jacobi: rotates the columns of `m` until
/// `m* m` is diagonal. Singular values are the final column norms.
pub fn svd(m: &CMatrix) -> Svd {
    let n = m.dim();
    let mut work = m.clone();
    let mut v = CMatrix::identity(n);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = work.col_norm_sqr(p);
                let beta = work.col_norm_sqr(q);
                let gamma = work.col_dot(p, q);
                let mag = gamma.norm();
                if mag <= f64::MIN_POSITIVE || mag <= JACOBI_THRESHOLD * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let rot = Rotation::diagonalizing(alpha, beta, gamma);
                work.rotate_cols(p, q, &rot);
                v.rotate_cols(p, q, &rot);
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<f64> = (0..n).map(|k| work.col_norm_sqr(k).sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let s: Vec<f64> = order.iter().map(|&i| norms[i]).collect();
    let cutoff = s.first().copied().unwrap_or(0.0) * 1e-13;
    let rank = s.iter().take_while(|&&x| x > cutoff && x > 0.0).count();
    let mut u = CMatrix::zeros(n);
    let mut vs = CMatrix::zeros(n);
    for (k, &i) in order.iter().enumerate() {
        let col = work.column(i);
        for r in 0..n {
            vs[(r, k)] = v[(r, i)];
            if k < rank {
                u[(r, k)] = col[r] / s[k];
            }
        }
    }
    Svd { u, s, v: vs, rank }
}

/// Singular values in non-increasing order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    svd(m).s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_and_shift() {
        assert_eq!(singular_values(&CMatrix::identity(2)), vec![1.0, 1.0]);
        let shift = CMatrix::from_rows(&[&[c(0., 0.), c(1., 0.)], &[c(0., 0.), c(0., 0.)]]);
        assert_eq!(singular_values(&shift), vec![1.0, 0.0]);
    }

    #[test]
    fn hermitian_eigen_reconstructs() {
        let h = CMatrix::from_rows(&[
            &[c(2., 0.), c(1., -1.), c(0., 0.5)],
            &[c(1., 1.), c(-1., 0.), c(0.3, 0.)],
            &[c(0., -0.5), c(0.3, 0.), c(0.5, 0.)],
        ]);
        let eig = hermitian_eigen(&h);
        let back = eig.map_spectrum(|x| c(x, 0.0));
        assert!((&back - &h).max_abs() < 1e-12);
        assert!(eig.vectors.unitarity_defect() < 1e-12);
        assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn svd_reconstructs_complex() {
        let m = CMatrix::from_rows(&[
            &[c(1., 2.), c(0., -1.), c(3., 0.)],
            &[c(0.5, 0.), c(2., 2.), c(-1., 1.)],
            &[c(0., 0.), c(1., 0.), c(0., 0.25)],
        ]);
        let d = svd(&m);
        let sig = CMatrix::from_real_diag(&d.s);
        let back = &(&d.u * &sig) * &d.v.adjoint();
        assert!((&back - &m).max_abs() < 1e-12);
        assert!(d.v.unitarity_defect() < 1e-12);
        assert_eq!(d.rank, 3);
    }

    #[test]
    fn trace_norm_of_diagonal() {
        let m = CMatrix::from_real_diag(&[3.0, -4.0]);
        assert!((m.trace_norm() - 7.0).abs() < 1e-14);
        assert!((m.operator_norm() - 4.0).abs() < 1e-14);
    }

    #[test]
    fn polar_factor_is_subgradient_of_rank_one() {
        // m = 2 e1 e2*: polar factor e1 e2*, and <G, m> = ||m||_tr.
        let mut m = CMatrix::zeros(2);
        m[(0, 1)] = c(2.0, 0.0);
        let g = svd(&m).polar_factor();
        assert!((g[(0, 1)] - c(1.0, 0.0)).norm() < 1e-14);
        assert!(g[(1, 0)].norm() < 1e-14 && g[(0, 0)].norm() < 1e-14);
    }
}
