//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! The bound integrands contain absolute values, so callers pre-split the
//! interval at the kinks (see [`sign_changes`]) and each initial panel is
//! smooth. Panels are bisected in order of decreasing error estimate.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Tolerances for the adaptive rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self { abs_tol: 1e-10, rel_tol: 1e-10, max_subdivisions: 20_000 }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<(), QuadError> {
        let ok = |v: f64| v > 0.0 && v <= 1e-2;
        if !ok(self.abs_tol) || !ok(self.rel_tol) || self.max_subdivisions == 0 {
            return Err(QuadError::InvalidConfig(*self));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuadError {
    #[error("quadrature did not converge: estimate {estimate}, error {error} after {panels} panels")]
    NotConverged { estimate: f64, error: f64, panels: usize },
    #[error("integrand is not finite at t = {0}")]
    NonFinite(f64),
    #[error("invalid quadrature configuration {0:?}")]
    InvalidConfig(QuadConfig),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub panels: usize,
    pub evaluations: usize,
}

// Kronrod abscissae on [-1, 1] (non-negative half), weights, and the
// embedded 7-point Gauss weights for the odd-indexed abscissae.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Single 15-point Kronrod panel with its 7-point Gauss error estimate.
pub fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64), QuadError> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    if !fc.is_finite() {
        return Err(QuadError::NonFinite(center));
    }
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let (x1, x2) = (center - dx, center + dx);
        let (f1, f2) = (f(x1), f(x2));
        if !f1.is_finite() {
            return Err(QuadError::NonFinite(x1));
        }
        if !f2.is_finite() {
            return Err(QuadError::NonFinite(x2));
        }
        kronrod += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    Ok((kronrod * half, ((kronrod - gauss) * half).abs()))
}

/// Integrates `f` over `[a, b]`, starting from panels split at `breaks`
/// (points outside `(a, b)` are ignored).
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    cfg: &QuadConfig,
) -> Result<Quadrature, QuadError> {
    if a == b {
        return Ok(Quadrature { value: 0.0, error: 0.0, panels: 0, evaluations: 0 });
    }
    let mut edges: Vec<f64> = Vec::with_capacity(breaks.len() + 2);
    edges.push(a);
    edges.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
    edges.push(b);
    edges.sort_by(f64::total_cmp);
    edges.dedup_by(|x, y| (*x - *y).abs() <= 1e-14 * (b - a));

    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    let mut total_err = 0.0;
    let mut evaluations = 0;
    for w in edges.windows(2) {
        let (value, error) = gauss_kronrod_15(&f, w[0], w[1])?;
        evaluations += 15;
        total += value;
        total_err += error;
        heap.push(Panel { a: w[0], b: w[1], value, error });
    }

    loop {
        let tol = cfg.abs_tol.max(cfg.rel_tol * total.abs());
        if total_err <= tol {
            break;
        }
        if heap.len() >= cfg.max_subdivisions {
            return Err(QuadError::NotConverged { estimate: total, error: total_err, panels: heap.len() });
        }
        let worst = heap.pop().expect("at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // cannot bisect further in floating point
            return Err(QuadError::NotConverged { estimate: total, error: total_err, panels: heap.len() + 1 });
        }
        let (v1, e1) = gauss_kronrod_15(&f, worst.a, mid)?;
        let (v2, e2) = gauss_kronrod_15(&f, mid, worst.b)?;
        evaluations += 30;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Panel { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, error: e2 });
    }

    // re-sum to shed the drift of the running updates
    let panels = heap.len();
    let (value, error) = heap.into_iter().fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
    Ok(Quadrature { value, error, panels, evaluations })
}

/// Roots of `g` on `[a, b]`: sign changes on a uniform scan of `samples`
/// intervals, each refined by bisection to `1e-12` relative width. Exact
/// zeros on the scan grid are reported as is, unless `g` was already zero
/// at the previous sample.
pub fn sign_changes<G: Fn(f64) -> f64>(g: G, a: f64, b: f64, samples: usize) -> Vec<f64> {
    let n = samples.max(1);
    let h = (b - a) / n as f64;
    let mut roots = Vec::new();
    let mut prev_t = a;
    let mut prev = g(a);
    for i in 1..=n {
        let t = if i == n { b } else { a + h * i as f64 };
        let v = g(t);
        if v == 0.0 {
            // report entry into a zero only; identically-zero stretches are not kinks
            if i < n && prev != 0.0 {
                roots.push(t);
            }
        } else if prev != 0.0 && prev.is_finite() && v.is_finite() && (prev < 0.0) != (v < 0.0) {
            roots.push(bisect(&g, prev_t, t, prev, 1e-12 * (b - a).abs()));
        }
        prev_t = t;
        prev = v;
    }
    roots
}

fn bisect<G: Fn(f64) -> f64>(g: &G, mut lo: f64, mut hi: f64, mut glo: f64, width: f64) -> f64 {
    for _ in 0..200 {
        if hi - lo <= width {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let gm = g(mid);
        if gm == 0.0 {
            return mid;
        }
        if (gm < 0.0) == (glo < 0.0) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        let k: f64 = WGK[7] + 2.0 * WGK[..7].iter().sum::<f64>();
        let g: f64 = WG[3] + 2.0 * WG[..3].iter().sum::<f64>();
        assert!((k - 2.0).abs() < 1e-15);
        assert!((g - 2.0).abs() < 1e-15);
    }

    #[test]
    fn gauss_nodes_are_legendre_roots() {
        // P7 via the three-term recurrence
        let p7 = |x: f64| {
            let (mut p0, mut p1) = (1.0, x);
            for n in 1..7 {
                let p2 = ((2 * n + 1) as f64 * x * p1 - n as f64 * p0) / (n + 1) as f64;
                p0 = p1;
                p1 = p2;
            }
            p1
        };
        for j in [1, 3, 5, 7] {
            assert!(p7(XGK[j]).abs() < 1e-14);
        }
    }

    #[test]
    fn kronrod_exact_through_degree_22() {
        for deg in 0..=22 {
            let (v, _) = gauss_kronrod_15(&|x: f64| x.powi(deg), 0.0, 1.0).unwrap();
            let exact = 1.0 / (deg + 1) as f64;
            assert!((v - exact).abs() < 1e-14, "degree {deg}: {v} vs {exact}");
        }
        // Gauss-7 is exact through degree 13, so the estimate vanishes there
        let (_, e) = gauss_kronrod_15(&|x: f64| x.powi(13), -1.0, 2.0).unwrap();
        assert!(e < 1e-12);
    }

    #[test]
    fn adaptive_kinked_integrand() {
        let cfg = QuadConfig::default();
        let f = |t: f64| (t - 0.3).abs();
        let plain = integrate(f, -1.0, 1.0, &[], &cfg).unwrap();
        let split = integrate(f, -1.0, 1.0, &[0.3], &cfg).unwrap();
        let exact = 0.5 * 1.3 * 1.3 + 0.5 * 0.7 * 0.7;
        assert!((plain.value - exact).abs() < 1e-9);
        assert!((split.value - exact).abs() < 1e-14);
        assert!(split.evaluations < plain.evaluations);
    }

    #[test]
    fn gaussian_integral() {
        let q = integrate(|t: f64| (-t * t).exp(), -8.0, 8.0, &[], &QuadConfig::default()).unwrap();
        assert!((q.value - std::f64::consts::PI.sqrt()).abs() < 1e-12);
        assert!(q.error <= 1e-10 * q.value);
    }

    #[test]
    fn reports_non_convergence() {
        let cfg = QuadConfig { abs_tol: 1e-12, rel_tol: 1e-12, max_subdivisions: 3 };
        let r = integrate(|t: f64| (1.0 / t.abs().sqrt()).min(1e8), -1.0, 1.0, &[], &cfg);
        assert!(matches!(r, Err(QuadError::NotConverged { .. })));
    }

    #[test]
    fn finds_roots() {
        let roots = sign_changes(|t: f64| t.sin(), 0.5, 10.0, 1000);
        assert_eq!(roots.len(), 3);
        for (r, k) in roots.iter().zip(1..) {
            assert!((r - k as f64 * std::f64::consts::PI).abs() < 1e-10);
        }
        // exact grid hit
        let roots = sign_changes(|t: f64| t, -1.0, 1.0, 10);
        assert_eq!(roots, vec![0.0]);
        assert!(sign_changes(|_| 0.0, -1.0, 1.0, 10).is_empty());
    }
}
