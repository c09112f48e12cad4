//! Derivative-free minimizers: golden-section search on an interval and a
//! Nelder–Mead simplex for the few-parameter polish.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::abs;

/// `(3 - sqrt 5) / 2`, the golden-section interior fraction.
const GOLDEN: f64 = 0.381_966_011_250_105_1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum1d {
    pub x: f64,
    pub value: f64,
    pub evaluations: usize,
}

/// Golden-section search for a minimum of `f` on `[lo, hi]`, stopping when
/// the bracket is narrower than `tol`.
///
/// Ties go to the smaller abscissa, so the result does not depend on the
/// order in which equal values are met.
pub fn golden_section<F>(mut f: F, lo: f64, hi: f64, tol: f64, max_iter: usize) -> Minimum1d
where
    F: FnMut(f64) -> f64,
{
    let (mut lo, mut hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut x1 = lo + GOLDEN * (hi - lo);
    let mut x2 = hi - GOLDEN * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut evaluations = 2;

    for _ in 0..max_iter {
        if hi - lo <= tol {
            break;
        }
        if le(f1, f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = lo + GOLDEN * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = hi - GOLDEN * (hi - lo);
            f2 = f(x2);
        }
        evaluations += 1;
    }
    let (x, value) = if le(f1, f2) { (x1, f1) } else { (x2, f2) };
    Minimum1d { x, value, evaluations }
}

/// `a <= b` with NaN treated as +inf.
fn le(a: f64, b: f64) -> bool {
    let a = if a.is_nan() { f64::INFINITY } else { a };
    let b = if b.is_nan() { f64::INFINITY } else { b };
    a <= b
}

#[derive(Debug, Clone, PartialEq)]
pub struct NelderMeadOptions {
    /// Maximum number of objective evaluations.
    pub max_evaluations: usize,
    /// Convergence when `f_worst - f_best <= rel_tol * |f_best| + abs_tol`.
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            max_evaluations: 10_000,
            rel_tol: 1e-12,
            abs_tol: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Minimizes `f` starting from `x0` with an initial simplex of per-axis
/// offsets `steps`. Standard coefficients: reflection 1, expansion 2,
/// contraction 1/2, shrink 1/2.
///
/// The returned point is never worse than `x0`.
pub fn nelder_mead<F>(mut f: F, x0: &[f64], steps: &[f64], opts: &NelderMeadOptions) -> NelderMeadResult
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    assert_eq!(steps.len(), n, "one step per coordinate");
    let mut eval = |x: &[f64], count: &mut usize| {
        *count += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut evaluations = 0;

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += steps[i];
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| eval(v, &mut evaluations)).collect();
    let mut converged = false;

    while evaluations < opts.max_evaluations {
        order(&mut simplex, &mut values);
        let best = values[0];
        let worst = values[n];
        if worst - best <= opts.rel_tol * abs(best) + opts.abs_tol {
            converged = true;
            break;
        }
        if simplex_collapsed(&simplex) {
            converged = true;
            break;
        }

        let mut centroid = vec![0.0; n];
        for v in &simplex[..n] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / n as f64;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = along(1.0);
        let f_r = eval(&reflected, &mut evaluations);
        if f_r < values[0] {
            let expanded = along(2.0);
            let f_e = eval(&expanded, &mut evaluations);
            if f_e < f_r {
                simplex[n] = expanded;
                values[n] = f_e;
            } else {
                simplex[n] = reflected;
                values[n] = f_r;
            }
            continue;
        }
        if f_r < values[n - 1] {
            simplex[n] = reflected;
            values[n] = f_r;
            continue;
        }
        let (contracted, f_c) = if f_r < values[n] {
            let c = along(0.5);
            let fc = eval(&c, &mut evaluations);
            (c, fc)
        } else {
            let c = along(-0.5);
            let fc = eval(&c, &mut evaluations);
            (c, fc)
        };
        if f_c < values[n].min(f_r) {
            simplex[n] = contracted;
            values[n] = f_c;
            continue;
        }
        let best_point = simplex[0].clone();
        for i in 1..=n {
            for (x, b) in simplex[i].iter_mut().zip(&best_point) {
                *x = b + 0.5 * (*x - b);
            }
            values[i] = eval(&simplex[i], &mut evaluations);
        }
    }
    order(&mut simplex, &mut values);
    NelderMeadResult {
        x: simplex.swap_remove(0),
        value: values[0],
        evaluations,
        converged,
    }
}

/// Sorts vertices by value; stable so earlier vertices win ties.
fn order(simplex: &mut [Vec<f64>], values: &mut [f64]) {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let sorted_s: Vec<Vec<f64>> = idx.iter().map(|&i| simplex[i].clone()).collect();
    let sorted_v: Vec<f64> = idx.iter().map(|&i| values[i]).collect();
    simplex.clone_from_slice(&sorted_s);
    values.copy_from_slice(&sorted_v);
}

fn simplex_collapsed(simplex: &[Vec<f64>]) -> bool {
    let best = &simplex[0];
    simplex[1..].iter().all(|v| {
        v.iter().zip(best).all(|(x, b)| {
            let scale = abs(*b).max(1e-300);
            abs(x - b) <= 1e-15 * scale
        })
    })
}
