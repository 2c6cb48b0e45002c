//! Grid-seeded Nelder–Mead search over a box.
//!
//! Grid evaluations may run in parallel; results are reduced in grid-index
//! order so the outcome does not depend on scheduling.

use rayon::prelude::*;

use crate::config::SearchSettings;

/// Best point found and its objective value.
#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub point: Vec<f64>,
    pub value: f64,
}

/// Axis-aligned search box.
#[derive(Debug, Clone)]
pub struct SearchBox {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl SearchBox {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Self {
        assert_eq!(lower.len(), upper.len());
        assert!(lower.iter().zip(&upper).all(|(l, u)| l < u));
        Self { lower, upper }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    fn project(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(&v, (&l, &u))| v.clamp(l, u))
            .collect()
    }

    fn cell_width(&self, grid: usize) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(l, u)| (u - l) / grid as f64)
            .collect()
    }

    fn grid_point(&self, grid: usize, mut index: usize) -> Vec<f64> {
        let width = self.cell_width(grid);
        let mut p = vec![0.0; self.dim()];
        for d in (0..self.dim()).rev() {
            let k = index % grid;
            index /= grid;
            p[d] = self.lower[d] + (k as f64 + 0.5) * width[d];
        }
        p
    }
}

/// Minimizes `f` over `bounds`: evaluate a cell-centred grid, then refine the
/// best `settings.starts` cells (plus any `extra_starts`) with Nelder–Mead.
pub fn minimize<F>(f: F, bounds: &SearchBox, settings: &SearchSettings, extra_starts: &[Vec<f64>]) -> Minimum
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let grid = settings.grid.max(1);
    let total = grid.pow(bounds.dim() as u32);
    let values: Vec<f64> = (0..total)
        .into_par_iter()
        .map(|i| f(&bounds.grid_point(grid, i)))
        .collect();

    let mut order: Vec<usize> = (0..total).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));

    let step = bounds.cell_width(grid);
    let mut starts: Vec<Vec<f64>> = order
        .iter()
        .take(settings.starts)
        .map(|&i| bounds.grid_point(grid, i))
        .collect();
    starts.extend(extra_starts.iter().map(|p| bounds.project(p)));

    let objective = |x: &[f64]| f(&bounds.project(x));
    let mut best: Option<Minimum> = None;
    for start in starts {
        let first = nelder_mead(&objective, &start, &step, settings);
        // one restart from the converged point guards against a collapsed simplex
        let small: Vec<f64> = step.iter().map(|s| s * 1e-3).collect();
        let refined = nelder_mead(&objective, &first.point, &small, settings);
        let candidate = if refined.value <= first.value { refined } else { first };
        if best.as_ref().is_none_or(|b| candidate.value < b.value) {
            best = Some(candidate);
        }
    }
    let best = best.expect("at least one start");
    let point = bounds.project(&best.point);
    let value = f(&point);
    Minimum { point, value }
}

/// Maximizes `f`; see [`minimize`].
pub fn maximize<F>(f: F, bounds: &SearchBox, settings: &SearchSettings, extra_starts: &[Vec<f64>]) -> Minimum
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let m = minimize(|x| -f(x), bounds, settings, extra_starts);
    Minimum {
        value: -m.value,
        point: m.point,
    }
}

/// Plain Nelder–Mead with an axis-aligned initial simplex.
pub fn nelder_mead<F>(f: &F, start: &[f64], step: &[f64], settings: &SearchSettings) -> Minimum
where
    F: Fn(&[f64]) -> f64,
{
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;

    let n = start.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((start.to_vec(), f(start)));
    for d in 0..n {
        let mut p = start.to_vec();
        p[d] += step[d];
        let v = f(&p);
        simplex.push((p, v));
    }

    let blend = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> { a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect() };

    for _ in 0..settings.max_iterations {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let diameter = simplex[1..]
            .iter()
            .map(|(p, _)| {
                p.iter()
                    .zip(&simplex[0].0)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if diameter < settings.diameter_tol {
            break;
        }

        let mut centroid = vec![0.0; n];
        for (p, _) in &simplex[..n] {
            for (c, x) in centroid.iter_mut().zip(p) {
                *c += x / n as f64;
            }
        }
        let (worst, worst_val) = simplex[n].clone();
        let reflected = blend(&centroid, &worst, -REFLECT);
        let fr = f(&reflected);

        if fr < simplex[0].1 {
            let expanded = blend(&centroid, &worst, -EXPAND);
            let fe = f(&expanded);
            simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
        } else {
            let (target, ft) = if fr < worst_val {
                (reflected, fr)
            } else {
                (worst, worst_val)
            };
            let contracted = blend(&centroid, &target, CONTRACT);
            let fc = f(&contracted);
            if fc < ft {
                simplex[n] = (contracted, fc);
            } else {
                let best = simplex[0].0.clone();
                for vertex in simplex.iter_mut().skip(1) {
                    let p = blend(&best, &vertex.0, SHRINK);
                    let v = f(&p);
                    *vertex = (p, v);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (point, value) = simplex.swap_remove(0);
    Minimum { point, value }
}

/// Bisection for a sign change of `f` on [lo, hi].
///
/// Returns `Err((f(lo), f(hi)))` when the endpoints share a sign.
pub fn bisect<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64, (f64, f64)>
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err((fa, fb));
    }
    while b - a > tol {
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}
