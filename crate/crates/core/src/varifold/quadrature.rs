//! Gauss-Legendre rules and the polar chart quadrature shared by every
//! surface integral.
//!
//! Chart points are parametrised as `(rho cos theta, rho sin theta)` with
//! `theta` in `(-pi/2, pi/2)`. Angular cells are split at caller-supplied
//! breakpoints so no node falls on a kink of the integrand; radial cells are
//! dyadic toward the origin because `g` is 1-homogeneous and its Hessian
//! blows up like `1/rho`.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Number of dyadic annuli used when a radial range reaches the origin.
/// The innermost omitted disc has radius `2^-40` of the outer radius.
pub const DYADIC_DEPTH: usize = 40;

#[derive(Clone, Debug)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Gauss-Legendre rule on `[-1, 1]` with `n` nodes (Newton on `P_n`).
pub fn gauss_legendre(n: usize) -> GaussRule {
    assert!(n >= 1, "Gauss rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p, mut prev) = (1.0, 0.0);
            for k in 1..=n {
                let next = ((2 * k - 1) as f64 * x * p - (k - 1) as f64 * prev) / k as f64;
                prev = p;
                p = next;
            }
            dp = n as f64 * (x * p - prev) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    GaussRule { nodes, weights }
}

impl GaussRule {
    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (mid + half * x, half * w))
    }
}

/// Composite rule: `cells` equal cells on `[a, b]`.
pub fn integrate_interval(rule: &GaussRule, a: f64, b: f64, cells: usize, f: impl Fn(f64) -> f64) -> f64 {
    let h = (b - a) / cells as f64;
    let mut sum = 0.0;
    for c in 0..cells {
        let lo = a + c as f64 * h;
        for (x, w) in rule.mapped(lo, lo + h) {
            sum += w * f(x);
        }
    }
    sum
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureGrid {
    /// Refinement level (>= 1); each level halves every cell.
    pub level: u32,
    /// Gauss nodes per cell and direction.
    pub order: usize,
    pub execution: Execution,
}

impl QuadratureGrid {
    pub fn new(level: u32) -> Self {
        Self {
            level: level.max(1),
            order: 8,
            execution: Execution::default(),
        }
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn refined(&self) -> Self {
        Self {
            level: self.level + 1,
            ..*self
        }
    }

    /// Cells per angular segment and per radial annulus.
    pub fn cells(&self) -> usize {
        1 << (self.level - 1)
    }

    pub fn rule(&self) -> GaussRule {
        gauss_legendre(self.order)
    }

    /// Angular nodes `(theta, weight)` over `[lo, hi]`, split at every cut
    /// strictly inside the interval.
    pub fn angular_nodes(&self, lo: f64, hi: f64, cuts: &[f64]) -> Vec<(f64, f64)> {
        let mut edges = vec![lo];
        edges.extend(cuts.iter().copied().filter(|&c| c > lo && c < hi));
        edges.push(hi);
        let rule = self.rule();
        let cells = self.cells();
        let mut out = Vec::with_capacity((edges.len() - 1) * cells * self.order);
        for seg in edges.windows(2) {
            let h = (seg[1] - seg[0]) / cells as f64;
            for c in 0..cells {
                let a = seg[0] + c as f64 * h;
                out.extend(rule.mapped(a, a + h));
            }
        }
        out
    }

    /// Radial cell boundaries for `[r0, r1]`: geometric annuli of ratio at
    /// most two, dyadic toward zero when `r0 == 0`, each split uniformly.
    pub fn radial_cells(&self, r0: f64, r1: f64) -> Vec<(f64, f64)> {
        if r1 <= r0 {
            return Vec::new();
        }
        let mut annuli = Vec::new();
        if r0 <= 0.0 {
            let mut outer = r1;
            for _ in 0..DYADIC_DEPTH {
                annuli.push((0.5 * outer, outer));
                outer *= 0.5;
            }
            annuli.reverse();
        } else {
            let n = (r1 / r0).log2().ceil().max(1.0) as usize;
            let ratio = (r1 / r0).powf(1.0 / n as f64);
            let mut lo = r0;
            for k in 0..n {
                let hi = if k + 1 == n { r1 } else { lo * ratio };
                annuli.push((lo, hi));
                lo = hi;
            }
        }
        let cells = self.cells();
        let mut out = Vec::with_capacity(annuli.len() * cells);
        for (lo, hi) in annuli {
            let h = (hi - lo) / cells as f64;
            for c in 0..cells {
                let a = lo + c as f64 * h;
                let b = if c + 1 == cells { hi } else { a + h };
                out.push((a, b));
            }
        }
        out
    }

    /// `sum w * f(rho)` over `[r0, r1]` (no polar Jacobian applied).
    pub fn radial_sum<const N: usize>(&self, rule: &GaussRule, r0: f64, r1: f64, mut f: impl FnMut(f64, f64) -> Option<[f64; N]>) -> [f64; N] {
        let mut acc = [0.0; N];
        for (a, b) in self.radial_cells(r0, r1) {
            for (r, w) in rule.mapped(a, b) {
                if let Some(v) = f(r, w) {
                    for k in 0..N {
                        acc[k] += w * v[k];
                    }
                }
            }
        }
        acc
    }

    /// Evaluates `f` on every angular node and sums the weighted results in
    /// node order, so the total is independent of the thread count.
    pub fn angular_sum<const N: usize, F>(&self, nodes: &[(f64, f64)], f: F) -> [f64; N]
    where
        F: Fn(f64) -> [f64; N] + Sync + Send,
    {
        let partials = map_nodes(self.execution, nodes, |&(theta, w)| {
            let v = f(theta);
            let mut out = [0.0; N];
            for k in 0..N {
                out[k] = w * v[k];
            }
            out
        });
        let mut acc = [0.0; N];
        for p in partials {
            for k in 0..N {
                acc[k] += p[k];
            }
        }
        acc
    }
}

impl Default for QuadratureGrid {
    fn default() -> Self {
        Self::new(4)
    }
}

#[cfg(feature = "parallel")]
fn map_nodes<T, F>(execution: Execution, nodes: &[(f64, f64)], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&(f64, f64)) -> T + Sync + Send,
{
    use rayon::prelude::*;
    match execution {
        Execution::Parallel => nodes.par_iter().map(f).collect(),
        Execution::Sequential => nodes.iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn map_nodes<T, F>(_execution: Execution, nodes: &[(f64, f64)], f: F) -> Vec<T>
where
    F: Fn(&(f64, f64)) -> T,
{
    nodes.iter().map(f).collect()
}

/// A polar window of the chart half-plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartWindow {
    pub r_in: f64,
    pub r_out: f64,
    pub theta_min: f64,
    pub theta_max: f64,
}

impl ChartWindow {
    pub fn disc(r: f64) -> Self {
        Self::annulus(0.0, r)
    }

    pub fn annulus(r_in: f64, r_out: f64) -> Self {
        let q = std::f64::consts::FRAC_PI_2;
        Self::sector(r_in, r_out, -q, q)
    }

    pub fn sector(r_in: f64, r_out: f64, theta_min: f64, theta_max: f64) -> Self {
        Self {
            r_in,
            r_out,
            theta_min,
            theta_max,
        }
    }

    fn validate(&self) -> Result<()> {
        let q = std::f64::consts::FRAC_PI_2;
        if !self.r_out.is_finite() {
            return Err(Error::Unbounded);
        }
        if self.r_in < 0.0 || self.r_out <= self.r_in || self.theta_min < -q || self.theta_max > q || self.theta_max <= self.theta_min {
            return Err(Error::Config(format!("invalid chart window {self:?}")));
        }
        Ok(())
    }
}

/// `integral f(x1, x2) dx1 dx2` over a chart window.
pub fn integrate_chart<F>(window: &ChartWindow, cuts: &[f64], grid: &QuadratureGrid, f: F) -> Result<f64>
where
    F: Fn(f64, f64) -> f64 + Sync + Send,
{
    window.validate()?;
    let rule = grid.rule();
    let nodes = grid.angular_nodes(window.theta_min, window.theta_max, cuts);
    let [v] = grid.angular_sum(&nodes, |theta| {
        let (s, c) = theta.sin_cos();
        grid.radial_sum(&rule, window.r_in, window.r_out, |r, _| Some([r * f(r * c, r * s)]))
    });
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_rule_is_exact_for_polynomials() {
        for n in 1..=12 {
            let rule = gauss_legendre(n);
            assert!((rule.weights.iter().sum::<f64>() - 2.0).abs() < 1e-13);
            for deg in 0..(2 * n) {
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg + 1) as f64 };
                let approx: f64 = rule
                    .nodes
                    .iter()
                    .zip(&rule.weights)
                    .map(|(x, w)| w * x.powi(deg as i32))
                    .sum();
                assert!((approx - exact).abs() < 1e-13, "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn disc_area() {
        let grid = QuadratureGrid::new(2);
        let a = integrate_chart(&ChartWindow::disc(2.0), &[], &grid, |_, _| 1.0).unwrap();
        // Half-disc of radius 2, minus the omitted innermost dyadic disc.
        assert!((a - 2.0 * std::f64::consts::PI).abs() < 1e-10);
    }

    #[test]
    fn radial_cells_nest_under_refinement() {
        let g = QuadratureGrid::new(2);
        let coarse = g.radial_cells(0.7, 3.1);
        let fine = g.refined().radial_cells(0.7, 3.1);
        assert_eq!(fine.len(), 2 * coarse.len());
        for (k, c) in coarse.iter().enumerate() {
            assert!((fine[2 * k].0 - c.0).abs() < 1e-14);
            assert!((fine[2 * k + 1].1 - c.1).abs() < 1e-14);
        }
    }

    #[test]
    fn no_angular_node_on_cuts_or_axis() {
        let g = QuadratureGrid::new(3);
        let q = std::f64::consts::FRAC_PI_2;
        let cuts = [-0.5, 0.0, 0.5];
        for (t, _) in g.angular_nodes(-q, q, &cuts) {
            assert!(t.cos() > 0.0);
            assert!(cuts.iter().all(|c| (t - c).abs() > 1e-6));
        }
    }

    #[test]
    fn unbounded_window_rejected() {
        let w = ChartWindow::annulus(0.0, f64::INFINITY);
        assert!(matches!(
            integrate_chart(&w, &[], &QuadratureGrid::new(1), |_, _| 1.0),
            Err(Error::Unbounded)
        ));
    }

    #[test]
    fn sequential_and_parallel_agree_bitwise() {
        let f = |x1: f64, x2: f64| (x1 * 3.0).sin() * (x2 - 0.2).cos();
        let w = ChartWindow::annulus(0.3, 2.5);
        let g = QuadratureGrid::new(3);
        let a = integrate_chart(&w, &[0.1], &g.with_execution(Execution::Sequential), f).unwrap();
        let b = integrate_chart(&w, &[0.1], &g.with_execution(Execution::Parallel), f).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
