//! Least-distance programming by non-negative least squares.
//!
//! `min ‖x‖₂ s.t. Gx ≥ h` is solved through the NNLS problem
//! `min ‖Eu − f‖, u ≥ 0` with `E = [Gᵀ; hᵀ]` and `f = e_{n+1}`; the residual
//! `r = Eu − f` gives `x = −r[..n] / r[n]`.

use nalgebra::{DMatrix, DVector};

/// Lawson–Hanson active-set NNLS.
pub(crate) fn nnls(e: &DMatrix<f64>, f: &DVector<f64>) -> DVector<f64> {
    let k = e.ncols();
    let scale = e.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let tol = 1e-12 * scale * scale;
    let mut u = DVector::<f64>::zeros(k);
    let mut passive = vec![false; k];
    let mut blocked = vec![false; k];

    for _ in 0..(3 * k + 30) {
        let w = e.transpose() * (f - e * &u);
        let candidate = (0..k)
            .filter(|&j| !passive[j] && !blocked[j] && w[j] > tol)
            .max_by(|&a, &b| w[a].total_cmp(&w[b]).then(b.cmp(&a)));
        let Some(t) = candidate else { break };
        passive[t] = true;

        let mut first = true;
        loop {
            let z = passive_least_squares(e, f, &passive);
            let bad: Vec<usize> = (0..k).filter(|&j| passive[j] && z[j] <= 0.0).collect();
            if bad.is_empty() {
                u = z;
                blocked.iter_mut().for_each(|b| *b = false);
                break;
            }
            if first && bad == [t] {
                // Roundoff made the entering column useless; skip it this round.
                passive[t] = false;
                blocked[t] = true;
                break;
            }
            first = false;
            let alpha = bad.iter().map(|&j| u[j] / (u[j] - z[j])).fold(f64::INFINITY, f64::min);
            u = &u + (&z - &u) * alpha;
            for j in 0..k {
                if passive[j] && u[j] <= 1e-15 * scale {
                    passive[j] = false;
                    u[j] = 0.0;
                }
            }
            if !passive.iter().any(|&p| p) {
                break;
            }
        }
    }
    u
}

fn passive_least_squares(e: &DMatrix<f64>, f: &DVector<f64>, passive: &[bool]) -> DVector<f64> {
    let cols: Vec<usize> = (0..passive.len()).filter(|&j| passive[j]).collect();
    let mut out = DVector::zeros(passive.len());
    if cols.is_empty() {
        return out;
    }
    let sub = e.select_columns(&cols);
    let sol = sub.svd(true, true).solve(f, 1e-13).expect("svd computed with u and v");
    for (k, &j) in cols.iter().enumerate() {
        out[j] = sol[k];
    }
    out
}

/// Solves `min ‖x‖₂ s.t. gᵢ·x ≥ hᵢ`. Returns `None` if the system looks infeasible.
pub(crate) fn least_distance(g_rows: &[Vec<f64>], h: &[f64], n: usize) -> Option<Vec<f64>> {
    let k = g_rows.len();
    if k == 0 {
        return Some(vec![0.0; n]);
    }
    let mut e = DMatrix::<f64>::zeros(n + 1, k);
    for (j, (g, &hj)) in g_rows.iter().zip(h).enumerate() {
        for i in 0..n {
            e[(i, j)] = g[i];
        }
        e[(n, j)] = hj;
    }
    let mut f = DVector::<f64>::zeros(n + 1);
    f[n] = 1.0;
    let u = nnls(&e, &f);
    let r = &e * &u - &f;
    if r.norm() < 1e-12 || r[n].abs() < 1e-14 {
        return None;
    }
    Some((0..n).map(|i| -r[i] / r[n]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nnls_matches_unconstrained_when_positive() {
        let e = DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
        let f = DVector::from_vec(vec![1.0, 2.0, 3.0]);
        let u = nnls(&e, &f);
        assert!((u[0] - 1.0).abs() < 1e-12 && (u[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn nnls_clamps_negative_components() {
        let e = DMatrix::identity(2, 2);
        let f = DVector::from_vec(vec![-1.0, 2.0]);
        let u = nnls(&e, &f);
        assert_eq!(u[0], 0.0);
        assert!((u[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn ldp_projects_origin_onto_halfspace() {
        // x + y ≥ 2  →  closest point (1, 1).
        let x = least_distance(&[vec![1.0, 1.0]], &[2.0], 2).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12 && (x[1] - 1.0).abs() < 1e-12);
        // x ≥ 1 and −x ≥ 0 cannot both hold.
        assert!(least_distance(&[vec![1.0], vec![-1.0]], &[1.0, 0.0], 1).is_none());
        // Inactive constraint leaves the origin.
        assert_eq!(least_distance(&[vec![1.0]], &[-1.0], 1).unwrap(), vec![0.0]);
    }
}
