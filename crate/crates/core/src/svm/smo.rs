//! Sequential minimal optimization over the soft-margin dual.
//!
//! The solver keeps `F_i = sum_j a_j y_j K_ij - y_i` for every point (the
//! error cache, without bias). With
//!
//! ```text
//! I_up  = { y = +1, a < C } u { y = -1, a > 0 }
//! I_low = { y = +1, a > 0 } u { y = -1, a < C }
//! b_up  = min over I_up of F,   b_low = max over I_low of F
//! ```
//!
//! the current point is optimal once `b_low - b_up <= kkt_tol`. Sweeps
//! alternate between a full pass that checks every point against the
//! extremes and an inner loop that repeatedly steps on the maximal
//! violating pair. Selection is fully deterministic.

use super::gram::GramRows;

pub(crate) struct SmoParams {
    pub c: f64,
    pub tol: f64,
    pub eps: f64,
    pub max_passes: usize,
    pub max_iter: usize,
}

pub(crate) struct Solution {
    pub alpha: Vec<f64>,
    pub bias: f64,
    pub iterations: usize,
    pub objective: f64,
    pub converged: bool,
    pub gap: f64,
}

struct Smo<'g, 'a> {
    gram: &'g mut GramRows<'a>,
    y: Vec<f64>,
    alpha: Vec<f64>,
    f: Vec<f64>,
    c: f64,
    tol: f64,
    eps: f64,
}

impl Smo<'_, '_> {
    fn in_up(&self, i: usize) -> bool {
        (self.y[i] > 0.0 && self.alpha[i] < self.c) || (self.y[i] < 0.0 && self.alpha[i] > 0.0)
    }

    fn in_low(&self, i: usize) -> bool {
        (self.y[i] > 0.0 && self.alpha[i] > 0.0) || (self.y[i] < 0.0 && self.alpha[i] < self.c)
    }

    /// `(i_up, b_up, i_low, b_low)`; ties go to the lowest index.
    fn extremes(&self) -> (usize, f64, usize, f64) {
        let (mut i_up, mut b_up) = (usize::MAX, f64::INFINITY);
        let (mut i_low, mut b_low) = (usize::MAX, f64::NEG_INFINITY);
        for i in 0..self.y.len() {
            let fi = self.f[i];
            if self.in_up(i) && fi < b_up {
                i_up = i;
                b_up = fi;
            }
            if self.in_low(i) && fi > b_low {
                i_low = i;
                b_low = fi;
            }
        }
        (i_up, b_up, i_low, b_low)
    }

    fn objective(&self) -> f64 {
        // W = sum a - 1/2 sum_i a_i y_i (F_i + y_i)
        self.alpha
            .iter()
            .zip(&self.y)
            .zip(&self.f)
            .map(|((&a, &y), &f)| a - 0.5 * a * y * (f + y))
            .sum()
    }

    fn take_step(&mut self, i1: usize, i2: usize) -> bool {
        if i1 == i2 || i1 == usize::MAX || i2 == usize::MAX {
            return false;
        }
        let c = self.c;
        let (a1, a2) = (self.alpha[i1], self.alpha[i2]);
        let (y1, y2) = (self.y[i1], self.y[i2]);
        let (f1, f2) = (self.f[i1], self.f[i2]);
        let s = y1 * y2;
        let (lo, hi) = if s < 0.0 {
            ((a2 - a1).max(0.0), (c + a2 - a1).min(c))
        } else {
            ((a1 + a2 - c).max(0.0), (a1 + a2).min(c))
        };
        if hi - lo <= 0.0 {
            return false;
        }
        let k11 = self.gram.diag(i1);
        let k22 = self.gram.diag(i2);
        let k12 = self.gram.with_rows(i1, i2, |r1, _| r1[i2]);
        let eta = k11 + k22 - 2.0 * k12;

        let mut a2_new = if eta > 0.0 {
            (a2 + y2 * (f1 - f2) / eta).clamp(lo, hi)
        } else {
            // Non-positive curvature: take the better end of the segment.
            let g1 = y1 * f1 - a1 * k11 - s * a2 * k12;
            let g2 = y2 * f2 - s * a1 * k12 - a2 * k22;
            let endpoint = |a2e: f64| {
                let a1e = a1 + s * (a2 - a2e);
                a1e * g1 + a2e * g2 + 0.5 * a1e * a1e * k11 + 0.5 * a2e * a2e * k22 + s * a1e * a2e * k12
            };
            let (lo_obj, hi_obj) = (endpoint(lo), endpoint(hi));
            if lo_obj < hi_obj - self.eps {
                lo
            } else if lo_obj > hi_obj + self.eps {
                hi
            } else {
                a2
            }
        };
        // Snap to the box ends so membership in I_up / I_low is exact.
        let snap = 1e-12 * c;
        if a2_new < snap {
            a2_new = 0.0;
        } else if a2_new > c - snap {
            a2_new = c;
        }
        if (a2_new - a2).abs() < self.eps * (a2_new + a2 + self.eps) {
            return false;
        }
        let mut a1_new = a1 + s * (a2 - a2_new);
        if a1_new < snap {
            a1_new = 0.0;
        } else if a1_new > c - snap {
            a1_new = c;
        }

        let d1 = y1 * (a1_new - a1);
        let d2 = y2 * (a2_new - a2);
        let f = &mut self.f;
        self.gram.with_rows(i1, i2, |r1, r2| {
            for (k, fk) in f.iter_mut().enumerate() {
                *fk += d1 * r1[k] + d2 * r2[k];
            }
        });
        self.alpha[i1] = a1_new;
        self.alpha[i2] = a2_new;
        true
    }

    fn examine(&mut self, i2: usize) -> bool {
        let (i_up, b_up, i_low, b_low) = self.extremes();
        let f2 = self.f[i2];
        let mut partner = None;
        if self.in_low(i2) && f2 > b_up + self.tol {
            partner = Some(i_up);
        }
        if self.in_up(i2) && f2 < b_low - self.tol {
            partner = match partner {
                Some(up) if (f2 - b_up).abs() >= (b_low - f2).abs() => Some(up),
                _ => Some(i_low),
            };
        }
        match partner {
            Some(i1) => self.take_step(i1, i2),
            None => false,
        }
    }

    fn bias(&self) -> f64 {
        let mut sum = 0.0;
        let mut count = 0usize;
        for i in 0..self.y.len() {
            if self.alpha[i] > 0.0 && self.alpha[i] < self.c {
                sum += self.f[i];
                count += 1;
            }
        }
        if count > 0 {
            -sum / count as f64
        } else {
            let (_, b_up, _, b_low) = self.extremes();
            match (b_up.is_finite(), b_low.is_finite()) {
                (true, true) => -(b_up + b_low) / 2.0,
                (true, false) => -b_up,
                (false, true) => -b_low,
                (false, false) => 0.0,
            }
        }
    }
}

pub(crate) fn solve(gram: &mut GramRows<'_>, labels: &[f64], p: &SmoParams) -> Solution {
    let n = labels.len();
    debug_assert_eq!(gram.n(), n);
    let mut smo = Smo {
        gram,
        y: labels.to_vec(),
        alpha: vec![0.0; n],
        f: labels.iter().map(|y| -y).collect(),
        c: p.c,
        tol: p.tol,
        eps: p.eps,
    };

    let mut iterations = 0usize;
    let mut examine_all = true;
    let mut stalled = 0usize;
    let mut last_obj = smo.objective();
    loop {
        let mut changed = 0usize;
        if examine_all {
            for i in 0..n {
                if iterations >= p.max_iter {
                    break;
                }
                if smo.examine(i) {
                    changed += 1;
                    iterations += 1;
                }
            }
        } else {
            while iterations < p.max_iter {
                let (i_up, b_up, i_low, b_low) = smo.extremes();
                if b_low - b_up <= p.tol || !smo.take_step(i_up, i_low) {
                    break;
                }
                changed += 1;
                iterations += 1;
            }
        }
        if iterations >= p.max_iter {
            break;
        }

        let obj = smo.objective();
        if obj - last_obj <= p.eps * (obj.abs() + 1.0) {
            stalled += 1;
        } else {
            stalled = 0;
        }
        last_obj = obj;

        if examine_all {
            if changed == 0 || stalled >= p.max_passes {
                break;
            }
            examine_all = false;
        } else {
            examine_all = true;
        }
    }

    let (_, b_up, _, b_low) = smo.extremes();
    let gap = if b_up.is_finite() && b_low.is_finite() {
        (b_low - b_up).max(0.0)
    } else {
        0.0
    };
    Solution {
        bias: smo.bias(),
        objective: smo.objective(),
        converged: gap <= p.tol,
        gap,
        iterations,
        alpha: smo.alpha,
    }
}
