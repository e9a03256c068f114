//! Independent reference computations and random instance generators for
//! the test suites. Nothing here shares code paths with the solvers it is
//! used to check.

use num_complex::Complex64;
use rand::Rng;

use crate::linalg::CMatrix;
use crate::spaces::PointSet;

/// Upper bound on the circumradius by nested grid refinement.
///
/// Starts from the bounding box of `A` (which contains a centre for
/// ℓ¹-type norms: clamping coordinates never increases a distance) and
/// repeatedly re-centres a `per_dim`-point grid on the best node while
/// shrinking the half-width to three grid spacings.
pub fn grid_refinement_radius(points: &PointSet, per_dim: usize, levels: usize) -> (f64, Vec<f64>) {
    assert!(per_dim >= 9 && per_dim % 2 == 1, "need an odd grid of at least 9 nodes");
    let n = points.space().dim();
    let mut lo = vec![f64::INFINITY; n];
    let mut hi = vec![f64::NEG_INFINITY; n];
    for a in points.points() {
        for i in 0..n {
            lo[i] = lo[i].min(a[i]);
            hi[i] = hi[i].max(a[i]);
        }
    }
    let mut centre: Vec<f64> = lo.iter().zip(&hi).map(|(l, h)| 0.5 * (l + h)).collect();
    let mut half: Vec<f64> = lo.iter().zip(&hi).map(|(l, h)| 0.5 * (h - l) + 1e-12).collect();
    let f = |x: &[f64]| points.points().iter().map(|a| points.space().distance(x, a)).fold(0.0, f64::max);
    let mut best_val = f(&centre);
    let mut node = vec![0usize; n];
    let mut x = vec![0.0; n];
    for _ in 0..levels {
        let mut best_here = centre.clone();
        node.iter_mut().for_each(|k| *k = 0);
        loop {
            for i in 0..n {
                let t = 2.0 * node[i] as f64 / (per_dim - 1) as f64 - 1.0;
                x[i] = centre[i] + half[i] * t;
            }
            let v = f(&x);
            if v < best_val {
                best_val = v;
                best_here.copy_from_slice(&x);
            }
            let mut i = 0;
            while i < n {
                node[i] += 1;
                if node[i] < per_dim {
                    break;
                }
                node[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        centre = best_here;
        for h in &mut half {
            *h *= 6.0 / (per_dim - 1) as f64;
        }
    }
    (best_val, centre)
}

/// Eigenvalues (non-increasing) of a Hermitian matrix of size ≤ 3 from the
/// roots of its characteristic polynomial.
pub fn hermitian_eigenvalues_charpoly(h: &CMatrix) -> Vec<f64> {
    let d = h.dim();
    let e = |i: usize, j: usize| h[(i, j)];
    let mut out = match d {
        1 => vec![e(0, 0).re],
        2 => {
            let tr = e(0, 0).re + e(1, 1).re;
            let det = e(0, 0).re * e(1, 1).re - e(0, 1).norm_sqr();
            let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
            vec![0.5 * (tr + disc), 0.5 * (tr - disc)]
        }
        3 => {
            let c2 = (0..3).map(|i| e(i, i).re).sum::<f64>();
            let minor = |i: usize, j: usize| e(i, i).re * e(j, j).re - e(i, j).norm_sqr();
            let c1 = minor(0, 1) + minor(0, 2) + minor(1, 2);
            let c0 = (e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1))
                - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
                + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0)))
            .re;
            // λ = t + s turns λ³ − c2λ² + c1λ − c0 into t³ + pt + q.
            let s = c2 / 3.0;
            let p = c1 - 3.0 * s * s;
            let q = -2.0 * s * s * s + c1 * s - c0;
            if p.abs() < 1e-300 {
                let t = (-q).cbrt();
                vec![s + t; 3]
            } else {
                let m = 2.0 * (-p / 3.0).max(0.0).sqrt();
                let arg = (3.0 * q / (2.0 * p) * (-3.0 / p).max(0.0).sqrt()).clamp(-1.0, 1.0);
                let theta = arg.acos() / 3.0;
                (0..3).map(|k| s + m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos()).collect()
            }
        }
        _ => panic!("characteristic polynomial oracle only covers d <= 3"),
    };
    out.sort_by(|a, b| b.total_cmp(a));
    out
}

pub fn random_matrix<R: Rng>(rng: &mut R, d: usize, scale: f64) -> CMatrix {
    let entries = (0..d * d)
        .map(|_| Complex64::new(rng.gen_range(-scale..=scale), rng.gen_range(-scale..=scale)))
        .collect();
    CMatrix::from_row_major(d, entries)
}

/// A unitary from Gram–Schmidt on a random complex matrix.
pub fn random_unitary<R: Rng>(rng: &mut R, d: usize) -> CMatrix {
    loop {
        let m = random_matrix(rng, d, 1.0);
        let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(d);
        let mut ok = true;
        for j in 0..d {
            let mut v: Vec<Complex64> = (0..d).map(|i| m[(i, j)]).collect();
            for _ in 0..2 {
                for c in &cols {
                    let dot: Complex64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                    for (vi, ci) in v.iter_mut().zip(c) {
                        *vi -= dot * ci;
                    }
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-6 {
                ok = false;
                break;
            }
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
        if ok {
            let mut u = CMatrix::zeros(d);
            for (j, c) in cols.iter().enumerate() {
                for (i, z) in c.iter().enumerate() {
                    u[(i, j)] = *z;
                }
            }
            return u;
        }
    }
}
