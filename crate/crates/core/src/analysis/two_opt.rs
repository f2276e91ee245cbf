use crate::constructors::nearest_neighbor;
use crate::error::{Error, Result};
use crate::instance::Tour;
use crate::metric::Metric;
use crate::scalar::Cost;

/// Relative improvement below which a move is treated as noise.
const EPS: f64 = 1e-12;

/// First-improvement 2-opt until no segment reversal shortens the tour.
pub fn two_opt<M: Metric>(metric: &M, order: &mut [usize]) {
    let n = order.len();
    if n < 4 {
        return;
    }
    let scale = order
        .iter()
        .zip(order.iter().cycle().skip(1))
        .map(|(&a, &b)| metric.cost(a, b).as_f64())
        .fold(0.0, |acc, c| acc + c.abs())
        .max(1.0);
    let mut improved = true;
    while improved {
        improved = false;
        for a in 0..n - 1 {
            let (p, q) = (order[a], order[a + 1]);
            let d_pq = metric.cost(p, q).as_f64();
            for b in (a + 2)..n {
                let (r, s) = (order[b], order[(b + 1) % n]);
                if s == p {
                    continue;
                }
                let delta = metric.cost(p, r).as_f64() + metric.cost(q, s).as_f64() - d_pq - metric.cost(r, s).as_f64();
                if delta < -EPS * scale {
                    order[a + 1..=b].reverse();
                    improved = true;
                    break;
                }
            }
        }
    }
}

/// Best tour over `starts` nearest-neighbor starts, each refined by 2-opt.
/// Starts are spread evenly over the vertex indices.
pub fn reference_tour<M: Metric>(metric: &M, starts: usize) -> Result<Tour<M::Cost>> {
    let n = metric.len();
    if starts == 0 {
        return Err(Error::InvalidParameter("at least one start is needed".into()));
    }
    let mut best: Option<Tour<M::Cost>> = None;
    for s in 0..starts.min(n) {
        let start = s * n / starts.min(n);
        let mut order = nearest_neighbor(metric, start)?.order().to_vec();
        two_opt(metric, &mut order);
        let tour = Tour::new(metric, order)?;
        if best.as_ref().map_or(true, |b| tour.length() < b.length()) {
            best = Some(tour);
        }
    }
    Ok(best.expect("at least one start"))
}
