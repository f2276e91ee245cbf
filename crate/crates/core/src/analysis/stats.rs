use std::io::Write;

use serde::Serialize;

use crate::candidates::CandidateLists;
use crate::error::Result;
use crate::instance::EdgeSet;
use crate::scalar::Cost;

/// Positions 1..=5 are tracked individually; everything beyond shares one bucket.
pub const TRACKED_POSITIONS: usize = 5;
const BUCKETS: usize = TRACKED_POSITIONS + 1;

/// Confusion counts for one candidate-list position.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct PositionCounts {
    /// Entries whose edge is optimal.
    pub p: u64,
    /// Entries whose edge is not optimal.
    pub n: u64,
    /// Optimal and predicted.
    pub tp: u64,
    /// Not optimal but predicted.
    pub fp: u64,
}

impl PositionCounts {
    pub fn fn_(&self) -> u64 {
        self.p - self.tp
    }

    pub fn tn(&self) -> u64 {
        self.n - self.fp
    }
}

/// Running confusion counts by position, over any number of tours.
#[derive(Debug, Clone, Default)]
pub struct PositionTally {
    counts: [PositionCounts; BUCKETS],
}

impl PositionTally {
    pub fn new() -> Self {
        Self::default()
    }

    fn bucket(position: usize) -> usize {
        position.min(BUCKETS) - 1
    }

    /// Visits every candidate-list entry `(i, CL[i][p])`. An entry is
    /// positive when its edge is in `optimal`, predicted when it is in
    /// `predicted`.
    pub fn add<C: Cost>(&mut self, cls: &CandidateLists<C>, optimal: &EdgeSet, predicted: &EdgeSet) {
        for list in cls.iter() {
            let i = list.owner();
            for (p, &(j, _)) in list.neighbors().iter().enumerate() {
                let c = &mut self.counts[Self::bucket(p + 1)];
                let pos = optimal.contains(i, j);
                let pred = predicted.contains(i, j);
                c.p += pos as u64;
                c.n += !pos as u64;
                c.tp += (pos && pred) as u64;
                c.fp += (!pos && pred) as u64;
            }
        }
    }

    /// Counts optimal-edge occurrences only; predictions are left empty.
    pub fn add_optimal<C: Cost>(&mut self, cls: &CandidateLists<C>, optimal: &EdgeSet) {
        self.add(cls, optimal, &EdgeSet::new());
    }

    pub fn merge(&mut self, other: &PositionTally) {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            a.p += b.p;
            a.n += b.n;
            a.tp += b.tp;
            a.fp += b.fp;
        }
    }

    pub fn finish(&self) -> PositionStats {
        let total_p: u64 = self.counts.iter().map(|c| c.p).sum();
        let rows = self
            .counts
            .iter()
            .enumerate()
            .map(|(b, c)| PositionRow::new(b, *c, total_p))
            .collect();
        PositionStats { rows }
    }
}

fn ratio(a: u64, b: u64) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositionRow {
    /// "1".."5" or ">5".
    pub label: String,
    pub counts: PositionCounts,
    pub tpr: f64,
    pub fpr: f64,
    /// `tpr / fpr`; infinite when `fpr` is zero and `tpr` is not.
    pub plr: f64,
    pub accuracy: f64,
    /// Share of all optimal entries that sit at this position.
    pub pdf: f64,
    /// Fraction of entries at this position whose edge is optimal.
    pub rate: f64,
}

impl PositionRow {
    fn new(bucket: usize, c: PositionCounts, total_p: u64) -> Self {
        let tpr = ratio(c.tp, c.p);
        let fpr = ratio(c.fp, c.n);
        let plr = if fpr > 0.0 {
            tpr / fpr
        } else if tpr > 0.0 {
            f64::INFINITY
        } else {
            0.0
        };
        Self {
            label: if bucket < TRACKED_POSITIONS {
                (bucket + 1).to_string()
            } else {
                format!(">{TRACKED_POSITIONS}")
            },
            counts: c,
            tpr,
            fpr,
            plr,
            accuracy: ratio(c.tp + c.tn(), c.p + c.n),
            pdf: ratio(c.p, total_p),
            rate: ratio(c.p, c.p + c.n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositionStats {
    pub rows: Vec<PositionRow>,
}

impl PositionStats {
    /// Row of 1-based `position`; positions past 5 map to the shared bucket.
    pub fn row(&self, position: usize) -> &PositionRow {
        &self.rows[PositionTally::bucket(position)]
    }

    pub fn pdf(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.pdf).collect()
    }

    pub fn write_csv(&self, method: &str, mut w: impl Write) -> Result<()> {
        for r in &self.rows {
            writeln!(
                w,
                "{method},{},{},{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
                r.label, r.counts.p, r.counts.n, r.counts.tp, r.counts.fp, r.tpr, r.fpr, r.plr, r.accuracy, r.pdf, r.rate
            )?;
        }
        Ok(())
    }

    pub const CSV_HEADER: &'static str = "method,position,P,N,TP,FP,TPR,FPR,PLR,Acc,PDF,rate";
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::candidates::build_candidate_lists;
    use crate::instance::{EdgeWeightType, Instance};

    #[test]
    fn triangle_rates() {
        let tri = Instance::new("tri", EdgeWeightType::Euc2d, vec![[0.0, 0.0], [0.0, 3.0], [4.0, 0.0]]).unwrap();
        let cls = build_candidate_lists(&tri, 2).unwrap();
        let opt: EdgeSet = [(0, 1), (1, 2), (2, 0)].into_iter().collect();
        let mut t = PositionTally::new();
        t.add(&cls, &opt, &opt);
        let s = t.finish();
        assert_eq!(s.row(1).rate, 1.0);
        assert_eq!(s.row(2).rate, 1.0);
        assert_eq!(s.row(1).tpr, 1.0);
        assert!((s.pdf().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert_eq!(s.row(9).label, ">5");
    }
}
