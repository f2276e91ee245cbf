use num_traits::Zero;

use crate::error::{Error, Result};
use crate::instance::Tour;
use crate::metric::Metric;

/// Largest instance the exact solver accepts.
pub const HELD_KARP_MAX_N: usize = 18;

/// Exact optimum by dynamic programming over subsets, `O(2^n n^2)` time.
///
/// Vertex 0 is the fixed start; `dp[S][v]` is the cheapest path from 0
/// through exactly the vertices of `S` (a subset of `1..n`) ending at `v`.
pub fn held_karp<M: Metric>(metric: &M) -> Result<Tour<M::Cost>> {
    let n = metric.len();
    if n > HELD_KARP_MAX_N {
        return Err(Error::InstanceTooLarge { n, max: HELD_KARP_MAX_N });
    }
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    let m = n - 1;
    let full = (1usize << m) - 1;
    let mut dp: Vec<Option<M::Cost>> = vec![None; (full + 1) * m];
    let mut parent = vec![u8::MAX; (full + 1) * m];
    for v in 0..m {
        dp[(1 << v) * m + v] = Some(metric.cost(0, v + 1));
    }
    for set in 1..=full {
        for last in 0..m {
            if set & (1 << last) == 0 {
                continue;
            }
            let Some(base) = dp[set * m + last] else { continue };
            for next in 0..m {
                if set & (1 << next) != 0 {
                    continue;
                }
                let grown = set | (1 << next);
                let cand = base + metric.cost(last + 1, next + 1);
                let slot = &mut dp[grown * m + next];
                if slot.map_or(true, |cur| cand < cur) {
                    *slot = Some(cand);
                    parent[grown * m + next] = last as u8;
                }
            }
        }
    }
    let mut best: Option<(M::Cost, usize)> = None;
    for last in 0..m {
        if let Some(c) = dp[full * m + last] {
            let total = c + metric.cost(last + 1, 0);
            if best.map_or(true, |(b, _)| total < b) {
                best = Some((total, last));
            }
        }
    }
    let (_, mut last) = best.expect("a complete path exists");
    let mut set = full;
    let mut rev = Vec::with_capacity(n);
    loop {
        rev.push(last + 1);
        let p = parent[set * m + last];
        set &= !(1 << last);
        if set == 0 {
            break;
        }
        last = p as usize;
    }
    rev.push(0);
    rev.reverse();
    Tour::new(metric, rev)
}

/// Exhaustive search over all tours starting at 0; for cross-checking only.
pub fn brute_force_optimum<M: Metric>(metric: &M) -> M::Cost {
    fn go<M: Metric>(m: &M, path: &mut Vec<usize>, used: &mut [bool], acc: M::Cost, best: &mut Option<M::Cost>) {
        let n = m.len();
        let last = *path.last().expect("non-empty path");
        if path.len() == n {
            let total = acc + m.cost(last, path[0]);
            if best.map_or(true, |b| total < b) {
                *best = Some(total);
            }
            return;
        }
        for v in 1..n {
            if !used[v] {
                used[v] = true;
                path.push(v);
                go(m, path, used, acc + m.cost(last, v), best);
                path.pop();
                used[v] = false;
            }
        }
    }
    let mut best = None;
    let mut used = vec![false; metric.len()];
    used[0] = true;
    go(metric, &mut vec![0], &mut used, M::Cost::zero(), &mut best);
    best.expect("at least one tour")
}
