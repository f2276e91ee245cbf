//! TSP instances, TSPLIB distance conventions, tours and gap reporting.

mod gap;
mod tour;
mod tsplib;

pub use gap::{percentage_error, read_optima_table, write_optima_table, GapReport, OptimumRecord};
pub use tour::{edge_key, tour_length, EdgeSet, Tour};
pub use tsplib::{parse_tour, parse_tsplib, write_tour, write_tsplib};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::metric::Metric;

/// TSPLIB's value of pi for GEO decoding.
const GEO_PI: f64 = 3.141592;
/// Earth radius used by TSPLIB GEO distances.
const GEO_RADIUS: f64 = 6378.388;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeWeightType {
    /// Euclidean distance rounded to the nearest integer.
    Euc2d,
    /// Exact euclidean distance. Used for generated unit-square data.
    Euc2dReal,
    /// Great-circle distance on TSPLIB degree.minute coordinates.
    Geo,
    /// Pseudo-euclidean distance.
    Att,
    /// Costs read from an EDGE_WEIGHT_SECTION.
    Explicit,
}

impl EdgeWeightType {
    pub fn keyword(self) -> &'static str {
        match self {
            Self::Euc2d => "EUC_2D",
            Self::Euc2dReal => "EUC_2D_REAL",
            Self::Geo => "GEO",
            Self::Att => "ATT",
            Self::Explicit => "EXPLICIT",
        }
    }

    /// Whether costs are integral (TSPLIB rounding applies).
    pub fn is_integral(self) -> bool {
        !matches!(self, Self::Euc2dReal)
    }
}

impl fmt::Display for EdgeWeightType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

impl FromStr for EdgeWeightType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "EUC_2D" => Ok(Self::Euc2d),
            "EUC_2D_REAL" => Ok(Self::Euc2dReal),
            "GEO" => Ok(Self::Geo),
            "ATT" => Ok(Self::Att),
            "EXPLICIT" => Ok(Self::Explicit),
            other => Err(Error::UnsupportedEdgeWeightType(other.to_string())),
        }
    }
}

/// Symmetric TSP instance. Immutable once built.
#[derive(Debug, Clone)]
pub struct Instance {
    name: String,
    kind: EdgeWeightType,
    coords: Vec<[f64; 2]>,
    /// Latitude/longitude in radians, only for GEO.
    geo: Vec<[f64; 2]>,
    /// Full row-major matrix, only for EXPLICIT.
    matrix: Vec<f64>,
    n: usize,
}

impl Instance {
    /// Coordinate-based instance.
    pub fn new(name: impl Into<String>, kind: EdgeWeightType, coords: Vec<[f64; 2]>) -> Result<Self> {
        if kind == EdgeWeightType::Explicit {
            return Err(Error::InvalidParameter(
                "EXPLICIT instances are built with Instance::explicit".into(),
            ));
        }
        let n = coords.len();
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        let geo = if kind == EdgeWeightType::Geo {
            coords.iter().map(|&[x, y]| [geo_radians(x), geo_radians(y)]).collect()
        } else {
            Vec::new()
        };
        Ok(Self {
            name: name.into(),
            kind,
            coords,
            geo,
            matrix: Vec::new(),
            n,
        })
    }

    /// Instance backed by a full symmetric cost matrix. Optional display
    /// coordinates are only used for rendering.
    pub fn explicit(name: impl Into<String>, n: usize, matrix: Vec<f64>, display: Option<Vec<[f64; 2]>>) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        if matrix.len() != n * n {
            return Err(Error::CoordinateCountMismatch {
                expected: n * n,
                found: matrix.len(),
            });
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if matrix[i * n + j] != matrix[j * n + i] {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!("asymmetric weights between {i} and {j}"),
                    });
                }
            }
        }
        let coords = display.unwrap_or_default();
        if !coords.is_empty() && coords.len() != n {
            return Err(Error::CoordinateCountMismatch {
                expected: n,
                found: coords.len(),
            });
        }
        Ok(Self {
            name: name.into(),
            kind: EdgeWeightType::Explicit,
            coords,
            geo: Vec::new(),
            matrix,
            n,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn edge_weight_type(&self) -> EdgeWeightType {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Planar coordinates; empty for EXPLICIT instances without display data.
    pub fn coords(&self) -> &[[f64; 2]] {
        &self.coords
    }

    /// Cost with contract checks: rejects self-loops and out-of-range vertices.
    pub fn checked_cost(&self, i: usize, j: usize) -> Result<f64> {
        for v in [i, j] {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        if i == j {
            return Err(Error::SelfLoop(i));
        }
        Ok(self.raw_cost(i, j))
    }

    #[inline]
    fn raw_cost(&self, i: usize, j: usize) -> f64 {
        match self.kind {
            EdgeWeightType::Euc2d => euc_2d(self.coords[i], self.coords[j]),
            EdgeWeightType::Euc2dReal => euclidean(self.coords[i], self.coords[j]),
            EdgeWeightType::Att => att(self.coords[i], self.coords[j]),
            EdgeWeightType::Geo => geo(self.geo[i], self.geo[j]),
            EdgeWeightType::Explicit => self.matrix[i * self.n + j],
        }
    }

    /// Checks the triangle inequality `c_jh <= c_ji + c_ih + slack` on one triple.
    pub fn triangle_holds(&self, i: usize, j: usize, h: usize, slack: f64) -> bool {
        if i == j || j == h || i == h {
            return true;
        }
        self.raw_cost(j, h) <= self.raw_cost(j, i) + self.raw_cost(i, h) + slack
    }
}

impl Metric for Instance {
    type Cost = f64;

    fn len(&self) -> usize {
        self.n
    }

    #[inline]
    fn cost(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        self.raw_cost(i, j)
    }
}

fn nint(x: f64) -> f64 {
    (x + 0.5).floor()
}

fn euclidean(a: [f64; 2], b: [f64; 2]) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    (dx * dx + dy * dy).sqrt()
}

fn euc_2d(a: [f64; 2], b: [f64; 2]) -> f64 {
    nint(euclidean(a, b))
}

fn att(a: [f64; 2], b: [f64; 2]) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    let r = ((dx * dx + dy * dy) / 10.0).sqrt();
    let t = nint(r);
    if t < r {
        t + 1.0
    } else {
        t
    }
}

/// DDD.MM encoded degrees to radians.
fn geo_radians(x: f64) -> f64 {
    let deg = x.trunc();
    let min = x - deg;
    GEO_PI * (deg + 5.0 * min / 3.0) / 180.0
}

fn geo(a: [f64; 2], b: [f64; 2]) -> f64 {
    let q1 = (a[1] - b[1]).cos();
    let q2 = (a[0] - b[0]).cos();
    let q3 = (a[0] + b[0]).cos();
    (GEO_RADIUS * (0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)).acos() + 1.0).trunc()
}
