//! Scalar minimisation of a positive parameter on a logarithmic axis.
//!
//! A coarse log-spaced scan locates the best grid point (guarding against a
//! second, shallower local minimum), the scan window slides outward while the
//! best point sits on a window edge, and golden-section search refines the
//! bracket around it.

use crate::error::{Error, Result};
use crate::exec::Execution;

#[derive(Debug, Clone, Copy)]
pub(crate) struct LogSearch {
    /// Initial scan window.
    pub lo: f64,
    pub hi: f64,
    /// Hard limits the search never leaves.
    pub min: f64,
    pub max: f64,
    pub grid_points: usize,
    /// Stop when the bracket's relative width falls below this.
    pub rel_width: f64,
    pub max_shifts: usize,
}

impl LogSearch {
    pub fn new(lo: f64, hi: f64) -> Self {
        LogSearch {
            lo,
            hi,
            min: 0.0,
            max: f64::INFINITY,
            grid_points: 17,
            rel_width: 1e-6,
            max_shifts: 12,
        }
    }

    pub fn bounded(mut self, min: f64, max: f64) -> Self {
        self.min = min;
        self.max = max;
        self.lo = self.lo.max(min);
        self.hi = self.hi.min(max);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Minimum {
    pub arg: f64,
    pub value: f64,
    /// The minimiser lies on a hard limit of the search.
    pub at_limit: bool,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Minimises `f` over `x > 0`. Points where `f` fails are treated as `+inf`
/// during the scan; the search fails only if every scanned point fails or the
/// refined minimiser itself cannot be evaluated.
pub(crate) fn minimize_log<F>(f: F, search: LogSearch, exec: Execution) -> Result<Minimum>
where
    F: Fn(f64) -> Result<f64> + Sync + Send,
{
    let n = search.grid_points.max(3);
    let (mut lo, mut hi) = (search.lo.ln(), search.hi.ln());
    let (lmin, lmax) = (search.min.ln(), search.max.ln());
    let eval = |u: f64| f(u.exp());

    let mut shifts = 0;
    let (grid, values, best) = loop {
        let grid: Vec<f64> = (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect();
        let results = exec.map(&grid, |&u| eval(u));
        let values: Vec<f64> = results
            .iter()
            .map(|r| match r {
                Ok(v) if v.is_finite() => *v,
                _ => f64::INFINITY,
            })
            .collect();
        let best = (0..n).min_by(|&i, &j| values[i].total_cmp(&values[j])).unwrap();
        if values[best].is_infinite() {
            let first_err = results.into_iter().find_map(|r| r.err());
            return Err(first_err.unwrap_or_else(|| {
                Error::Range("objective is not finite anywhere in the scan window".into())
            }));
        }
        let span = hi - lo;
        let step = 0.5 * span;
        if best == 0 && lo > lmin && shifts < search.max_shifts {
            lo = (lo - step).max(lmin);
            hi = lo + span;
        } else if best == n - 1 && hi < lmax && shifts < search.max_shifts {
            hi = (hi + step).min(lmax);
            lo = hi - span;
        } else {
            break (grid, values, best);
        }
        shifts += 1;
    };

    let at_limit = (best == 0 && grid[0] <= lmin) || (best == n - 1 && grid[n - 1] >= lmax);
    let mut a = grid[best.saturating_sub(1)];
    let mut b = grid[(best + 1).min(n - 1)];
    let mut best_u = grid[best];
    let mut best_v = values[best];
    if at_limit {
        return Ok(Minimum { arg: best_u.exp(), value: best_v, at_limit });
    }

    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let probe = |u: f64| eval(u).ok().filter(|v| v.is_finite()).unwrap_or(f64::INFINITY);
    let mut fc = probe(c);
    let mut fd = probe(d);
    // ln-width equals relative width for small brackets.
    while (b - a) > search.rel_width {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = probe(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = probe(d);
        }
    }
    for (u, v) in [(c, fc), (d, fd)] {
        if v < best_v {
            best_u = u;
            best_v = v;
        }
    }
    Ok(Minimum { arg: best_u.exp(), value: best_v, at_limit: false })
}
