//! Independent reference implementations used for verification.
//!
//! Everything here recomputes a quantity by a deliberately different route
//! than the production code (direct objective minimization, dense grid scans,
//! from-scratch factorizations) so the two can be checked against each other
//! in tests and in the CLI self-check. Nothing in this module calls the solver
//! paths it is used to validate.

use crate::linalg::SymMatrix;
use crate::stats::normal_sf;

/// `log det` via an LDLᵀ factorization written independently of the
/// production Cholesky; returns `None` when the matrix is not positive
/// definite.
fn ldl_log_det(a: &SymMatrix) -> Option<f64> {
    let n = a.dim();
    let mut d = vec![0.0f64; n];
    let mut l = vec![vec![0.0f64; n]; n];
    for j in 0..n {
        let mut dj = a.get(j, j);
        for k in 0..j {
            dj -= l[j][k] * l[j][k] * d[k];
        }
        if dj <= 0.0 {
            return None;
        }
        d[j] = dj;
        l[j][j] = 1.0;
        for i in (j + 1)..n {
            let mut v = a.get(i, j);
            for k in 0..j {
                v -= l[i][k] * l[j][k] * d[k];
            }
            l[i][j] = v / dj;
        }
    }
    Some(d.iter().map(|x| x.ln()).sum())
}

/// Objective of the penalized likelihood, `+∞` outside the PD cone.
pub fn glasso_objective_direct(s: &SymMatrix, omega: &SymMatrix, lambda: f64) -> f64 {
    let Some(log_det) = ldl_log_det(omega) else {
        return f64::INFINITY;
    };
    let mut tr = 0.0;
    let mut off = 0.0;
    let n = s.dim();
    for i in 0..n {
        for j in 0..n {
            tr += s.get(i, j) * omega.get(j, i);
            if i != j {
                off += omega.get(i, j).abs();
            }
        }
    }
    tr - log_det + lambda * off
}

/// Minimizes the penalized likelihood by cyclic one-dimensional golden-section
/// searches over the free entries (diagonal plus upper triangle). The
/// objective is jointly convex and convex along every coordinate, including
/// through the ℓ1 kink, so the cyclic scheme converges to the global optimum.
/// Intended for small dimensions (the oracle side of solver checks).
pub fn minimize_glasso_objective(s: &SymMatrix, lambda: f64) -> SymMatrix {
    let n = s.dim();
    let mut omega = SymMatrix::zeros(n);
    for i in 0..n {
        omega.set_sym(i, i, 1.0 / s.get(i, i));
    }
    let mut coords = Vec::new();
    for i in 0..n {
        for j in i..n {
            coords.push((i, j));
        }
    }
    let mut step = 1.0;
    for _round in 0..400 {
        let mut moved = 0.0f64;
        for &(i, j) in &coords {
            let current = omega.get(i, j);
            let eval = |x: f64, om: &mut SymMatrix| {
                om.set_sym(i, j, x);
                glasso_objective_direct(s, om, lambda)
            };
            let best = golden_section_line(current, step, |x| {
                let mut trial = omega.clone();
                eval(x, &mut trial)
            });
            moved = moved.max((best - current).abs());
            omega.set_sym(i, j, best);
        }
        step = (step * 0.7).max(1e-7);
        if moved < 1e-9 {
            break;
        }
    }
    omega
}

/// Golden-section minimization of a 1-D convex function (possibly `+∞` outside
/// an interval) starting from `x0` with an expanding bracket of width `step`.
fn golden_section_line(x0: f64, step: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
    // Expand until the bracket contains a finite minimum strictly inside.
    let mut half = step.max(1e-8);
    let (mut lo, mut hi) = (x0 - half, x0 + half);
    let f0 = f(x0);
    for _ in 0..60 {
        if f(lo) > f0 && f(hi) > f0 {
            break;
        }
        half *= 2.0;
        lo = x0 - half;
        hi = x0 + half;
        if half > 1e8 {
            break;
        }
    }
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut a = lo;
    let mut b = hi;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..120 {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        if (b - a).abs() < 1e-10 * (1.0 + x0.abs()) {
            break;
        }
    }
    let mid = 0.5 * (a + b);
    // The kink at zero is a candidate the bracket arithmetic can straddle.
    if f(0.0) < f(mid).min(f0) {
        0.0
    } else if f(mid) <= f0 {
        mid
    } else {
        x0
    }
}

/// Dense-grid scan for the FDR threshold: the smallest grid point in
/// `[0, hi]` (step `step`) where `2(1−Φ(ς))·w / (#{|τ̃| ≥ ς} ∨ 1) ≤ v`, falling
/// back to `sqrt(2 log w)` when no grid point qualifies.
pub fn fdr_threshold_grid(tau_std: &[f64], v: f64, hi: f64, step: f64) -> f64 {
    let w = tau_std.len();
    let mut zeta = step;
    while zeta <= hi {
        let rejected = tau_std.iter().filter(|t| t.abs() >= zeta).count();
        let criterion = 2.0 * normal_sf(zeta) * w as f64 / rejected.max(1) as f64;
        if criterion <= v * (1.0 + 1e-12) {
            return zeta;
        }
        zeta += step;
    }
    (2.0 * (w as f64).ln()).sqrt()
}
