//! Small dense least-squares solver used by the polynomial rate estimator.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::{abs, sqrt};

/// Solves `min ||A x - y||` for a tall, column-major `rows x cols` matrix
/// using Householder QR. Returns `None` when `A` is rank deficient.
pub(crate) fn least_squares(mut a: Vec<f64>, rows: usize, cols: usize, mut y: Vec<f64>) -> Option<Vec<f64>> {
    debug_assert_eq!(a.len(), rows * cols);
    debug_assert!(rows >= cols);
    let at = |c: usize, r: usize| c * rows + r;

    for k in 0..cols {
        let mut norm = 0.0;
        for r in k..rows {
            norm += a[at(k, r)] * a[at(k, r)];
        }
        let norm = sqrt(norm);
        if norm == 0.0 {
            return None;
        }
        let alpha = if a[at(k, k)] > 0.0 { -norm } else { norm };
        let mut v = vec![0.0; rows];
        v[k] = a[at(k, k)] - alpha;
        for r in k + 1..rows {
            v[r] = a[at(k, r)];
        }
        let vnorm2: f64 = v[k..].iter().map(|x| x * x).sum();
        if vnorm2 > 0.0 {
            for c in k..cols {
                let dot: f64 = (k..rows).map(|r| v[r] * a[at(c, r)]).sum();
                let scale = 2.0 * dot / vnorm2;
                for r in k..rows {
                    a[at(c, r)] -= scale * v[r];
                }
            }
            let dot: f64 = (k..rows).map(|r| v[r] * y[r]).sum();
            let scale = 2.0 * dot / vnorm2;
            for r in k..rows {
                y[r] -= scale * v[r];
            }
        }
    }

    let scale = (0..cols).map(|k| abs(a[at(k, k)])).fold(0.0, f64::max);
    let mut x = vec![0.0; cols];
    for k in (0..cols).rev() {
        let diag = a[at(k, k)];
        if abs(diag) <= scale * 1e-13 {
            return None;
        }
        let mut s = y[k];
        for c in k + 1..cols {
            s -= a[at(c, k)] * x[c];
        }
        x[k] = s / diag;
    }
    Some(x)
}
