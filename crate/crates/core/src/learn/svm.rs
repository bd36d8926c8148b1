//! Soft-margin binary SVM trained with pairwise working-set updates
//! over the dual problem.
//!
//! The solver keeps an error cache and alternates full passes with
//! passes over the non-bound multipliers until a full pass makes no
//! progress, which leaves every training-set KKT violation within the
//! tolerance. Working-set selection uses the largest error difference
//! first, then seeded random restarts, so training is deterministic
//! given the seed.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::textproc::SparseFeatureVector;

/// Kernel function over sparse feature vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum KernelKind {
    Linear,
    /// `K(x,y) / sqrt(K(x,x) K(y,y))` with `K(x,y) = (x·y [+ 1])^degree`.
    NormalizedPoly { degree: f64, lower_order: bool },
    /// Pearson VII universal kernel.
    Puk { sigma: f64, omega: f64 },
}

impl KernelKind {
    pub fn eval(&self, a: &SparseFeatureVector, b: &SparseFeatureVector) -> f64 {
        match *self {
            KernelKind::Linear => a.dot(b),
            KernelKind::NormalizedPoly { degree, lower_order } => {
                let offset = if lower_order { 1.0 } else { 0.0 };
                let raw = |x: f64| (x + offset).powf(degree);
                let denom = (raw(a.norm_sq()) * raw(b.norm_sq())).sqrt();
                if denom == 0.0 {
                    0.0
                } else {
                    raw(a.dot(b)) / denom
                }
            }
            KernelKind::Puk { sigma, omega } => {
                let dist_sq = (a.norm_sq() + b.norm_sq() - 2.0 * a.dot(b)).max(0.0);
                let scale = 2.0 * dist_sq.sqrt() * (2.0f64.powf(1.0 / omega) - 1.0).sqrt() / sigma;
                1.0 / (1.0 + scale * scale).powf(omega)
            }
        }
    }

    pub fn is_linear(&self) -> bool {
        matches!(self, KernelKind::Linear)
    }
}

impl fmt::Display for KernelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelKind::Linear => write!(f, "linear"),
            KernelKind::NormalizedPoly { degree, lower_order } => {
                write!(f, "normpoly:{degree}:{lower_order}")
            }
            KernelKind::Puk { sigma, omega } => write!(f, "puk:{sigma}:{omega}"),
        }
    }
}

impl FromStr for KernelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["linear"] => Ok(KernelKind::Linear),
            ["normpoly", degree, lower] => Ok(KernelKind::NormalizedPoly {
                degree: degree
                    .parse()
                    .map_err(|_| Error::Config(format!("bad kernel degree: {degree}")))?,
                lower_order: lower
                    .parse()
                    .map_err(|_| Error::Config(format!("bad lower-order flag: {lower}")))?,
            }),
            ["puk", sigma, omega] => Ok(KernelKind::Puk {
                sigma: sigma
                    .parse()
                    .map_err(|_| Error::Config(format!("bad puk sigma: {sigma}")))?,
                omega: omega
                    .parse()
                    .map_err(|_| Error::Config(format!("bad puk omega: {omega}")))?,
            }),
            _ => Err(Error::Config(format!("unknown kernel spec: {s:?}"))),
        }
    }
}

/// Gram matrix access; precomputed for the training sizes this pipeline
/// sees, computed on demand beyond that.
pub struct Gram<'a> {
    xs: &'a [SparseFeatureVector],
    kernel: &'a KernelKind,
    dense: Option<Vec<f64>>,
}

const DENSE_GRAM_LIMIT: usize = 4096;

impl<'a> Gram<'a> {
    pub fn new(xs: &'a [SparseFeatureVector], kernel: &'a KernelKind) -> Self {
        let n = xs.len();
        let dense = if n <= DENSE_GRAM_LIMIT {
            let mut m = vec![0.0; n * n];
            for i in 0..n {
                for j in i..n {
                    let v = kernel.eval(&xs[i], &xs[j]);
                    m[i * n + j] = v;
                    m[j * n + i] = v;
                }
            }
            Some(m)
        } else {
            None
        };
        Gram { xs, kernel, dense }
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        match &self.dense {
            Some(m) => m[i * self.xs.len() + j],
            None => self.kernel.eval(&self.xs[i], &self.xs[j]),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SmoConfig {
    pub c: f64,
    /// KKT tolerance for the stopping criterion.
    pub tol: f64,
    pub seed: u64,
    /// Hard cap on successful multiplier updates.
    pub max_steps: usize,
}

impl Default for SmoConfig {
    fn default() -> Self {
        SmoConfig {
            c: 1.0,
            tol: 1e-3,
            seed: 0,
            max_steps: 0, // 0 = derive from problem size
        }
    }
}

#[derive(Debug, Clone)]
pub struct SmoResult {
    pub alpha: Vec<f64>,
    pub bias: f64,
    pub steps: usize,
}

/// Trains the dual on labels in {-1, +1}. The decision function is
/// `f(x) = sum_i alpha_i y_i K(x_i, x) + bias`.
pub fn train_smo(gram: &Gram<'_>, y: &[f64], cfg: &SmoConfig) -> SmoResult {
    let n = gram.len();
    assert_eq!(y.len(), n, "label count must match sample count");
    let max_steps = if cfg.max_steps > 0 {
        cfg.max_steps
    } else {
        200 * n + 10_000
    };
    let mut solver = Solver {
        gram,
        y,
        c: cfg.c,
        tol: cfg.tol,
        alpha: vec![0.0; n],
        b: 0.0,
        err: y.iter().map(|&yi| -yi).collect(),
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        steps: 0,
        max_steps,
    };
    solver.run();
    SmoResult {
        alpha: solver.alpha,
        bias: solver.b,
        steps: solver.steps,
    }
}

/// Largest KKT violation of a solution against the training set.
pub fn max_kkt_violation(gram: &Gram<'_>, y: &[f64], alpha: &[f64], bias: f64, c: f64) -> f64 {
    let n = gram.len();
    let mut worst = 0.0f64;
    for i in 0..n {
        let f: f64 = (0..n).map(|j| alpha[j] * y[j] * gram.get(j, i)).sum::<f64>() + bias;
        let u = y[i] * f;
        let v = if alpha[i] <= 1e-9 {
            (1.0 - u).max(0.0)
        } else if alpha[i] >= c - 1e-9 {
            (u - 1.0).max(0.0)
        } else {
            (u - 1.0).abs()
        };
        worst = worst.max(v);
    }
    worst
}

struct Solver<'a> {
    gram: &'a Gram<'a>,
    y: &'a [f64],
    c: f64,
    tol: f64,
    alpha: Vec<f64>,
    b: f64,
    /// err[i] = f(x_i) - y_i, maintained incrementally.
    err: Vec<f64>,
    rng: ChaCha8Rng,
    steps: usize,
    max_steps: usize,
}

const STEP_EPS: f64 = 1e-12;

impl Solver<'_> {
    fn run(&mut self) {
        let n = self.gram.len();
        let mut examine_all = true;
        let mut num_changed = 1;
        while (num_changed > 0 || examine_all) && self.steps < self.max_steps {
            num_changed = 0;
            if examine_all {
                for i in 0..n {
                    num_changed += self.examine(i);
                }
            } else {
                for i in 0..n {
                    if self.is_non_bound(i) {
                        num_changed += self.examine(i);
                    }
                }
            }
            if examine_all {
                examine_all = false;
            } else if num_changed == 0 {
                examine_all = true;
            }
        }
    }

    #[inline]
    fn is_non_bound(&self, i: usize) -> bool {
        self.alpha[i] > 1e-12 && self.alpha[i] < self.c - 1e-12
    }

    fn examine(&mut self, i2: usize) -> usize {
        let n = self.gram.len();
        let y2 = self.y[i2];
        let a2 = self.alpha[i2];
        let e2 = self.err[i2];
        let r2 = e2 * y2;
        let violates = (r2 < -self.tol && a2 < self.c) || (r2 > self.tol && a2 > 0.0);
        if !violates {
            return 0;
        }

        // Second-choice heuristic: largest |E1 - E2| over non-bound.
        let mut best: Option<(usize, f64)> = None;
        for i in 0..n {
            if i != i2 && self.is_non_bound(i) {
                let gap = (self.err[i] - e2).abs();
                if best.map_or(true, |(_, g)| gap > g) {
                    best = Some((i, gap));
                }
            }
        }
        if let Some((i1, _)) = best {
            if self.take_step(i1, i2) {
                return 1;
            }
        }

        let start = self.rng.gen_range(0..n);
        for k in 0..n {
            let i1 = (start + k) % n;
            if i1 != i2 && self.is_non_bound(i1) && self.take_step(i1, i2) {
                return 1;
            }
        }
        let start = self.rng.gen_range(0..n);
        for k in 0..n {
            let i1 = (start + k) % n;
            if i1 != i2 && self.take_step(i1, i2) {
                return 1;
            }
        }
        0
    }

    fn take_step(&mut self, i1: usize, i2: usize) -> bool {
        if i1 == i2 || self.steps >= self.max_steps {
            return false;
        }
        let (y1, y2) = (self.y[i1], self.y[i2]);
        let (a1, a2) = (self.alpha[i1], self.alpha[i2]);
        let (e1, e2) = (self.err[i1], self.err[i2]);
        let s = y1 * y2;

        let (low, high) = if (y1 - y2).abs() > f64::EPSILON {
            ((a2 - a1).max(0.0), (self.c + a2 - a1).min(self.c))
        } else {
            ((a2 + a1 - self.c).max(0.0), (a2 + a1).min(self.c))
        };
        if low >= high {
            return false;
        }

        let k11 = self.gram.get(i1, i1);
        let k12 = self.gram.get(i1, i2);
        let k22 = self.gram.get(i2, i2);
        let eta = k11 + k22 - 2.0 * k12;

        let mut a2_new = if eta > 0.0 {
            (a2 + y2 * (e1 - e2) / eta).clamp(low, high)
        } else {
            // Degenerate curvature: evaluate the objective at both ends.
            let f1 = y1 * (e1 + self.b) - a1 * k11 - s * a2 * k12;
            let f2 = y2 * (e2 + self.b) - s * a1 * k12 - a2 * k22;
            let l1 = a1 + s * (a2 - low);
            let h1 = a1 + s * (a2 - high);
            let low_obj =
                l1 * f1 + low * f2 + 0.5 * l1 * l1 * k11 + 0.5 * low * low * k22 + s * low * l1 * k12;
            let high_obj = h1 * f1
                + high * f2
                + 0.5 * h1 * h1 * k11
                + 0.5 * high * high * k22
                + s * high * h1 * k12;
            if low_obj < high_obj - STEP_EPS {
                low
            } else if low_obj > high_obj + STEP_EPS {
                high
            } else {
                return false;
            }
        };
        if a2_new < 1e-12 {
            a2_new = 0.0;
        } else if a2_new > self.c - 1e-12 {
            a2_new = self.c;
        }
        if (a2_new - a2).abs() < STEP_EPS * (a2_new + a2 + STEP_EPS) {
            return false;
        }
        let a1_new = a1 + s * (a2 - a2_new);

        let d1 = a1_new - a1;
        let d2 = a2_new - a2;
        let b1 = self.b - e1 - y1 * d1 * k11 - y2 * d2 * k12;
        let b2 = self.b - e2 - y1 * d1 * k12 - y2 * d2 * k22;
        let b_new = if a1_new > 1e-12 && a1_new < self.c - 1e-12 {
            b1
        } else if a2_new > 1e-12 && a2_new < self.c - 1e-12 {
            b2
        } else {
            (b1 + b2) / 2.0
        };

        let db = b_new - self.b;
        for i in 0..self.gram.len() {
            self.err[i] += y1 * d1 * self.gram.get(i1, i) + y2 * d2 * self.gram.get(i2, i) + db;
        }
        self.alpha[i1] = a1_new;
        self.alpha[i2] = a2_new;
        self.b = b_new;
        self.steps += 1;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(entries: &[(usize, f64)]) -> SparseFeatureVector {
        SparseFeatureVector::from_entries(entries.to_vec())
    }

    /// Exact small-instance dual oracle: enumerates active-set patterns
    /// (each multiplier at 0, at C, or free), solves the stationarity
    /// system for the free set, and keeps the feasible solution with
    /// the best dual objective. Exponential in n; fine for n <= 8.
    fn dual_oracle(gram: &Gram<'_>, y: &[f64], c: f64) -> (Vec<f64>, f64) {
        let n = gram.len();
        let q = |i: usize, j: usize| y[i] * y[j] * gram.get(i, j);
        let tol = 1e-9;
        let mut best: Option<(f64, Vec<f64>, f64)> = None;

        for mask in 0..3usize.pow(n as u32) {
            let mut state = Vec::with_capacity(n);
            let mut m = mask;
            for _ in 0..n {
                state.push(m % 3); // 0 = at zero, 1 = at C, 2 = free
                m /= 3;
            }
            let free: Vec<usize> = (0..n).filter(|&i| state[i] == 2).collect();
            let mut alpha: Vec<f64> = state
                .iter()
                .map(|&s| if s == 1 { c } else { 0.0 })
                .collect();

            let bias;
            if free.is_empty() {
                let balance: f64 = (0..n).map(|i| alpha[i] * y[i]).sum();
                if balance.abs() > tol {
                    continue;
                }
                // Choose a bias satisfying every bound's sign condition.
                let mut lo = f64::NEG_INFINITY;
                let mut hi = f64::INFINITY;
                let mut ok = true;
                for i in 0..n {
                    let g = 1.0 - (0..n).map(|j| q(i, j) * alpha[j]).sum::<f64>();
                    // Condition: g - mu*y_i <= 0 at zero, >= 0 at C.
                    let bound = g / y[i];
                    let at_zero = state[i] == 0;
                    if (at_zero && y[i] > 0.0) || (!at_zero && y[i] < 0.0) {
                        lo = lo.max(bound);
                    } else {
                        hi = hi.min(bound);
                    }
                    if lo > hi + tol {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    continue;
                }
                let mu = if lo.is_finite() && hi.is_finite() {
                    (lo + hi) / 2.0
                } else if lo.is_finite() {
                    lo
                } else if hi.is_finite() {
                    hi
                } else {
                    0.0
                };
                bias = mu;
            } else {
                // Stationarity for free i: sum_j Q_ij a_j + mu y_i = 1.
                let k = free.len();
                let mut a = vec![vec![0.0; k + 1]; k + 1];
                let mut rhs = vec![0.0; k + 1];
                for (r, &i) in free.iter().enumerate() {
                    for (cidx, &j) in free.iter().enumerate() {
                        a[r][cidx] = q(i, j);
                    }
                    a[r][k] = y[i];
                    let bound_sum: f64 = (0..n)
                        .filter(|&j| state[j] == 1)
                        .map(|j| q(i, j) * c)
                        .sum();
                    rhs[r] = 1.0 - bound_sum;
                }
                for (cidx, &j) in free.iter().enumerate() {
                    a[k][cidx] = y[j];
                }
                let bound_balance: f64 = (0..n)
                    .filter(|&j| state[j] == 1)
                    .map(|j| y[j] * c)
                    .sum();
                rhs[k] = -bound_balance;

                let solution = match solve_dense(a, rhs) {
                    Some(s) => s,
                    None => continue,
                };
                for (idx, &i) in free.iter().enumerate() {
                    alpha[i] = solution[idx];
                }
                bias = solution[k];
                if free.iter().any(|&i| alpha[i] < -tol || alpha[i] > c + tol) {
                    continue;
                }
                // Gradient sign conditions at the bounds.
                let mut ok = true;
                for i in 0..n {
                    if state[i] == 2 {
                        continue;
                    }
                    let g = 1.0 - (0..n).map(|j| q(i, j) * alpha[j]).sum::<f64>() - bias * y[i];
                    if state[i] == 0 && g > tol {
                        ok = false;
                        break;
                    }
                    if state[i] == 1 && g < -tol {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    continue;
                }
            }

            let objective: f64 = alpha.iter().sum::<f64>()
                - 0.5
                    * (0..n)
                        .map(|i| {
                            (0..n)
                                .map(|j| alpha[i] * alpha[j] * q(i, j))
                                .sum::<f64>()
                        })
                        .sum::<f64>();
            if best.as_ref().map_or(true, |(o, _, _)| objective > *o) {
                best = Some((objective, alpha, bias));
            }
        }
        let (_, alpha, mu) = best.expect("a feasible active set always exists");
        (alpha, mu)
    }

    fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
        let n = b.len();
        for col in 0..n {
            let pivot = (col..n).max_by(|&i, &j| {
                a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap()
            })?;
            if a[pivot][col].abs() < 1e-12 {
                return None;
            }
            a.swap(col, pivot);
            b.swap(col, pivot);
            for row in 0..n {
                if row != col {
                    let factor = a[row][col] / a[col][col];
                    for k in col..n {
                        a[row][k] -= factor * a[col][k];
                    }
                    b[row] -= factor * b[col];
                }
            }
        }
        Some((0..n).map(|i| b[i] / a[i][i]).collect())
    }

    fn decision(gram: &Gram<'_>, y: &[f64], alpha: &[f64], bias: f64, i: usize) -> f64 {
        (0..gram.len())
            .map(|j| alpha[j] * y[j] * gram.get(j, i))
            .sum::<f64>()
            + bias
    }

    #[test]
    fn separable_pair_has_analytic_solution() {
        // x1 = e0 (+1), x2 = e1 (-1): the optimum is alpha = (1, 1),
        // bias 0, decisions (+1, -1).
        let xs = vec![sv(&[(0, 1.0)]), sv(&[(1, 1.0)])];
        let y = vec![1.0, -1.0];
        let kernel = KernelKind::Linear;
        let gram = Gram::new(&xs, &kernel);
        let cfg = SmoConfig {
            c: 10.0,
            tol: 1e-6,
            ..Default::default()
        };
        let result = train_smo(&gram, &y, &cfg);
        assert!((result.alpha[0] - 1.0).abs() < 1e-4);
        assert!((result.alpha[1] - 1.0).abs() < 1e-4);
        assert!(result.bias.abs() < 1e-4);
        assert!((decision(&gram, &y, &result.alpha, result.bias, 0) - 1.0).abs() < 1e-4);
        assert!((decision(&gram, &y, &result.alpha, result.bias, 1) + 1.0).abs() < 1e-4);
    }

    #[test]
    fn four_point_solution_matches_enumeration_oracle() {
        let xs = vec![
            sv(&[(0, 2.0), (1, 1.0)]),
            sv(&[(0, 1.0), (2, 2.0)]),
            sv(&[(3, 1.0), (4, 1.0)]),
            sv(&[(0, 1.0), (4, 2.0)]),
        ];
        let y = vec![1.0, 1.0, -1.0, -1.0];
        let kernel = KernelKind::Linear;
        let gram = Gram::new(&xs, &kernel);
        let cfg = SmoConfig {
            c: 1.0,
            tol: 1e-6,
            ..Default::default()
        };
        let result = train_smo(&gram, &y, &cfg);
        let (oracle_alpha, oracle_bias) = dual_oracle(&gram, &y, cfg.c);
        for i in 0..4 {
            let got = decision(&gram, &y, &result.alpha, result.bias, i);
            let expected = decision(&gram, &y, &oracle_alpha, oracle_bias, i);
            assert!(
                (got - expected).abs() < 1e-4,
                "decision {i}: smo {got} vs oracle {expected}"
            );
        }
    }

    #[test]
    fn overlapping_points_match_oracle_at_the_box_bound() {
        // Non-separable line: positives to the left of a negative.
        let xs = vec![
            sv(&[(0, 1.0)]),
            sv(&[(0, 2.0)]),
            sv(&[(0, 1.5)]),
            sv(&[(0, 3.0)]),
        ];
        let y = vec![1.0, -1.0, -1.0, 1.0];
        let kernel = KernelKind::Linear;
        let gram = Gram::new(&xs, &kernel);
        let cfg = SmoConfig {
            c: 1.0,
            tol: 1e-6,
            ..Default::default()
        };
        let result = train_smo(&gram, &y, &cfg);
        let (oracle_alpha, oracle_bias) = dual_oracle(&gram, &y, cfg.c);
        for i in 0..4 {
            let got = decision(&gram, &y, &result.alpha, result.bias, i);
            let expected = decision(&gram, &y, &oracle_alpha, oracle_bias, i);
            assert!(
                (got - expected).abs() < 1e-4,
                "decision {i}: smo {got} vs oracle {expected}"
            );
        }
    }

    #[test]
    fn kkt_violations_within_tolerance_after_convergence() {
        // Deterministic pseudo-random blob of 40 points in 6 dims.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let mut xs = Vec::new();
        let mut y = Vec::new();
        for i in 0..40 {
            let label = if i % 2 == 0 { 1.0 } else { -1.0 };
            let mut entries = Vec::new();
            for d in 0..6 {
                let v = next() + if label > 0.0 && d < 3 { 0.8 } else { 0.1 };
                entries.push((d, v));
            }
            xs.push(sv(&entries));
            y.push(label);
        }
        let kernel = KernelKind::Linear;
        let gram = Gram::new(&xs, &kernel);
        let cfg = SmoConfig {
            c: 1.0,
            tol: 1e-3,
            seed: 5,
            ..Default::default()
        };
        let result = train_smo(&gram, &y, &cfg);
        let violation = max_kkt_violation(&gram, &y, &result.alpha, result.bias, cfg.c);
        assert!(violation <= cfg.tol + 1e-9, "violation {violation}");
        let balance: f64 = (0..40).map(|i| result.alpha[i] * y[i]).sum();
        assert!(balance.abs() < 1e-9);
    }

    #[test]
    fn training_is_deterministic_given_seed() {
        let xs = vec![
            sv(&[(0, 1.0), (1, 2.0)]),
            sv(&[(0, 2.0)]),
            sv(&[(1, 1.0)]),
            sv(&[(0, 1.0), (1, 1.0)]),
        ];
        let y = vec![1.0, 1.0, -1.0, -1.0];
        let kernel = KernelKind::Linear;
        let gram = Gram::new(&xs, &kernel);
        let cfg = SmoConfig {
            seed: 42,
            ..Default::default()
        };
        let a = train_smo(&gram, &y, &cfg);
        let b = train_smo(&gram, &y, &cfg);
        assert_eq!(a.alpha, b.alpha);
        assert_eq!(a.bias, b.bias);
    }

    #[test]
    fn normalized_poly_kernel_is_self_normalizing() {
        let a = sv(&[(0, 3.0), (2, 4.0)]);
        let b = sv(&[(0, 1.0), (1, 2.0)]);
        let kernel = KernelKind::NormalizedPoly {
            degree: 2.0,
            lower_order: false,
        };
        assert!((kernel.eval(&a, &a) - 1.0).abs() < 1e-12);
        let v = kernel.eval(&a, &b);
        assert!((0.0..=1.0).contains(&v));
        // (a.b)^2 / (|a|^2 |b|^2) with a.b = 3, |a|^2 = 25, |b|^2 = 5.
        assert!((v - 9.0 / 125.0).abs() < 1e-12);
    }

    #[test]
    fn puk_kernel_peaks_at_identity() {
        let a = sv(&[(0, 1.0), (1, 2.0)]);
        let b = sv(&[(0, 2.0), (1, 1.0)]);
        let kernel = KernelKind::Puk {
            sigma: 1.0,
            omega: 1.0,
        };
        assert!((kernel.eval(&a, &a) - 1.0).abs() < 1e-12);
        assert!(kernel.eval(&a, &b) < 1.0);
        // dist^2 = 2, omega = 1: K = 1 / (1 + (2*sqrt(2)*1)^2 / 1) = 1/9.
        assert!((kernel.eval(&a, &b) - 1.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn kernel_spec_round_trip() {
        for spec in ["linear", "normpoly:1.61:true", "puk:9.02:0.99"] {
            let k: KernelKind = spec.parse().unwrap();
            let back: KernelKind = k.to_string().parse().unwrap();
            assert_eq!(k, back);
        }
        assert!("rbf:1.0".parse::<KernelKind>().is_err());
    }
}
