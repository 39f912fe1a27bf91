//! Limited-memory BFGS with a monotone Armijo backtracking line search.

use std::collections::VecDeque;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LbfgsConfig {
    pub max_iter: usize,
    /// Stop once `scale·‖∇f‖_∞` drops below this.
    pub grad_tol: f64,
    pub grad_scale: f64,
    pub memory: usize,
    pub armijo: f64,
    /// Largest coordinate change of the first trial step.
    pub max_first_step: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    /// Scaled gradient infinity-norm at `x`.
    pub grad_inf: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Objective after every accepted iteration, starting with the initial value.
    pub history: Vec<f64>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn inf_norm(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Minimizes `f`, which returns the value and writes the gradient.
pub fn minimize<F>(mut f: F, x0: Vec<f64>, cfg: &LbfgsConfig) -> Minimum
where
    F: FnMut(&[f64], &mut [f64]) -> f64,
{
    let n = x0.len();
    let mut x = x0;
    let mut g = vec![0.0; n];
    let mut fx = f(&x, &mut g);
    let mut history = vec![fx];
    let mut pairs: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::with_capacity(cfg.memory);

    let mut trial = vec![0.0; n];
    let mut g_trial = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut iterations = 0;

    loop {
        let grad_inf = cfg.grad_scale * inf_norm(&g);
        if n == 0 || grad_inf < cfg.grad_tol {
            return Minimum { x, value: fx, grad_inf, iterations, converged: true, history };
        }
        if iterations >= cfg.max_iter {
            return Minimum { x, value: fx, grad_inf, iterations, converged: false, history };
        }

        two_loop(&g, &pairs, &mut d);
        let mut slope = dot(&g, &d);
        if !(slope < 0.0) {
            pairs.clear();
            two_loop(&g, &pairs, &mut d);
            slope = dot(&g, &d);
        }
        let mut alpha = if pairs.is_empty() { (cfg.max_first_step / inf_norm(&d)).min(1.0) } else { 1.0 };

        let mut accepted = false;
        for _ in 0..60 {
            for i in 0..n {
                trial[i] = x[i] + alpha * d[i];
            }
            let ft = f(&trial, &mut g_trial);
            if ft.is_finite() && ft <= fx + cfg.armijo * alpha * slope {
                let s: Vec<f64> = (0..n).map(|i| trial[i] - x[i]).collect();
                let y: Vec<f64> = (0..n).map(|i| g_trial[i] - g[i]).collect();
                let sy = dot(&s, &y);
                if sy > 1e-12 * dot(&s, &s).sqrt() * dot(&y, &y).sqrt() {
                    if pairs.len() == cfg.memory {
                        pairs.pop_front();
                    }
                    pairs.push_back((s, y, 1.0 / sy));
                }
                std::mem::swap(&mut x, &mut trial);
                std::mem::swap(&mut g, &mut g_trial);
                fx = ft;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }

        if !accepted {
            if pairs.is_empty() {
                // no descent along −∇f at any resolvable step: stalled
                let grad_inf = cfg.grad_scale * inf_norm(&g);
                return Minimum { x, value: fx, grad_inf, iterations, converged: false, history };
            }
            pairs.clear();
            continue;
        }
        iterations += 1;
        history.push(fx);
    }
}

/// `d = −H·g` with the standard two-loop recursion.
fn two_loop(g: &[f64], pairs: &VecDeque<(Vec<f64>, Vec<f64>, f64)>, d: &mut [f64]) {
    let mut q: Vec<f64> = g.to_vec();
    let mut alphas = Vec::with_capacity(pairs.len());
    for (s, y, rho) in pairs.iter().rev() {
        let a = rho * dot(s, &q);
        for (qi, yi) in q.iter_mut().zip(y) {
            *qi -= a * yi;
        }
        alphas.push(a);
    }
    let gamma = pairs.back().map_or(1.0, |(_, y, rho)| 1.0 / (rho * dot(y, y)));
    for qi in q.iter_mut() {
        *qi *= gamma;
    }
    for ((s, y, rho), a) in pairs.iter().zip(alphas.iter().rev()) {
        let b = rho * dot(y, &q);
        for (qi, si) in q.iter_mut().zip(s) {
            *qi += (a - b) * si;
        }
    }
    for (di, qi) in d.iter_mut().zip(q) {
        *di = -qi;
    }
}
