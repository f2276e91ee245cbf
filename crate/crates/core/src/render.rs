//! Local-context images for a candidate edge.
//!
//! The view around edge `(i, j)` is `CL[i] ∪ CL[j] ∪ {i, j}`. Coordinates are
//! centred on the midpoint of the edge and scaled so the farthest view vertex
//! lands just inside the inscribed circle. Three binary channels are drawn:
//! red marks the view vertices, green the candidate edge with its endpoints,
//! blue the already linked edges whose endpoints are both in view.

use std::io::Write;

use crate::candidates::{CandidateLists, PromisingList};
use crate::error::{Error, Result};
use crate::fragments::FragmentView;
use crate::instance::EdgeSet;
use crate::scalar::Cost;

pub const IMAGE_SIZE: usize = 96;
pub const CHANNELS: usize = 3;
/// Number of floats in a default-size image.
pub const IMAGE_LEN: usize = IMAGE_SIZE * IMAGE_SIZE * CHANNELS;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    Red = 0,
    Green = 1,
    Blue = 2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderConfig {
    /// Side length in pixels.
    pub size: usize,
    /// Vertex marks are `(2r + 1)` pixels wide.
    pub mark_radius: usize,
    /// Fraction of the half-width kept free at the border.
    pub margin: f64,
}

impl Default for RenderConfig {
    fn default() -> Self {
        Self {
            size: IMAGE_SIZE,
            mark_radius: 1,
            margin: 1.0 / 48.0,
        }
    }
}

/// Binary image stored row-major with interleaved channels (HWC).
#[derive(Debug, Clone, PartialEq)]
pub struct ContextImage {
    size: usize,
    data: Vec<f32>,
}

impl ContextImage {
    pub fn blank(size: usize) -> Self {
        Self {
            size,
            data: vec![0.0; size * size * CHANNELS],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn as_slice(&self) -> &[f32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize, ch: Channel) -> f32 {
        self.data[(row * self.size + col) * CHANNELS + ch as usize]
    }

    #[inline]
    fn set(&mut self, row: usize, col: usize, ch: Channel) {
        self.data[(row * self.size + col) * CHANNELS + ch as usize] = 1.0;
    }

    /// Number of non-zero pixels in one channel.
    pub fn count_lit(&self, ch: Channel) -> usize {
        self.data.iter().skip(ch as usize).step_by(CHANNELS).filter(|&&v| v != 0.0).count()
    }

    /// Lit `(row, col)` pixels of one channel in raster order.
    pub fn lit_pixels(&self, ch: Channel) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..self.size {
            for c in 0..self.size {
                if self.get(r, c, ch) != 0.0 {
                    out.push((r, c));
                }
            }
        }
        out
    }

    /// Raw little-endian float32 blob in HWC order.
    pub fn to_blob(&self) -> Vec<u8> {
        self.data.iter().flat_map(|v| v.to_le_bytes()).collect()
    }

    pub fn from_blob(bytes: &[u8], size: usize) -> Result<Self> {
        let want = size * size * CHANNELS * 4;
        if bytes.len() != want {
            return Err(Error::DimensionMismatch {
                expected: vec![want],
                found: vec![bytes.len()],
            });
        }
        let data = bytes
            .chunks_exact(4)
            .map(|b| f32::from_le_bytes([b[0], b[1], b[2], b[3]]))
            .collect();
        Ok(Self { size, data })
    }

    /// Binary PPM (P6) with each channel scaled to 0..=255.
    pub fn write_ppm(&self, mut w: impl Write) -> Result<()> {
        write!(w, "P6\n{} {}\n255\n", self.size, self.size)?;
        let bytes: Vec<u8> = self.data.iter().map(|&v| (v.clamp(0.0, 1.0) * 255.0).round() as u8).collect();
        w.write_all(&bytes)?;
        Ok(())
    }

    fn mark(&mut self, (row, col): (usize, usize), radius: usize, ch: Channel) {
        let last = self.size - 1;
        for r in row.saturating_sub(radius)..=(row + radius).min(last) {
            for c in col.saturating_sub(radius)..=(col + radius).min(last) {
                self.set(r, c, ch);
            }
        }
    }

    fn line(&mut self, a: (usize, usize), b: (usize, usize), ch: Channel) {
        for p in bresenham(a, b) {
            self.set(p.0, p.1, ch);
        }
    }
}

/// Integer line from `a` to `b`, both ends included.
pub fn bresenham(a: (usize, usize), b: (usize, usize)) -> Vec<(usize, usize)> {
    let (mut r, mut c) = (a.0 as i64, a.1 as i64);
    let (r1, c1) = (b.0 as i64, b.1 as i64);
    let dr = (r1 - r).abs();
    let dc = -(c1 - c).abs();
    let sr = if r < r1 { 1 } else { -1 };
    let sc = if c < c1 { 1 } else { -1 };
    let mut err = dr + dc;
    let mut out = Vec::with_capacity((dr - dc + 1) as usize);
    loop {
        out.push((r as usize, c as usize));
        if r == r1 && c == c1 {
            return out;
        }
        let e2 = 2 * err;
        if e2 >= dc {
            err += dc;
            r += sr;
        }
        if e2 <= dr {
            err += dr;
            c += sc;
        }
    }
}

/// Maps world coordinates of one view onto pixel rows and columns.
#[derive(Debug, Clone, Copy)]
pub struct Projection {
    center: [f64; 2],
    extent: f64,
    half: f64,
    radius: f64,
    size: usize,
}

impl Projection {
    /// Centres on the midpoint of `a` and `b`; `extent` is the largest distance
    /// from that midpoint over `points`.
    pub fn new(a: [f64; 2], b: [f64; 2], points: impl IntoIterator<Item = [f64; 2]>, cfg: &RenderConfig) -> Self {
        let center = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
        let extent = points
            .into_iter()
            .map(|p| ((p[0] - center[0]).powi(2) + (p[1] - center[1]).powi(2)).sqrt())
            .fold(0.0, f64::max);
        let half = cfg.size as f64 / 2.0;
        Self {
            center,
            extent,
            half,
            radius: half * (1.0 - cfg.margin),
            size: cfg.size,
        }
    }

    /// `(row, col)` of a world point. The y axis points up.
    pub fn pixel(&self, p: [f64; 2]) -> (usize, usize) {
        let (u, v) = if self.extent > 0.0 {
            ((p[0] - self.center[0]) / self.extent, (p[1] - self.center[1]) / self.extent)
        } else {
            (0.0, 0.0)
        };
        let last = (self.size - 1) as f64;
        let col = (self.half + self.radius * u).floor().clamp(0.0, last);
        let row = (self.half - self.radius * v).floor().clamp(0.0, last);
        (row as usize, col as usize)
    }
}

/// Sorted, deduplicated `CL[i] ∪ CL[j] ∪ {i, j}`.
pub fn local_view<C: Cost>(cls: &CandidateLists<C>, i: usize, j: usize) -> Vec<usize> {
    let mut view: Vec<usize> = [i, j]
        .into_iter()
        .chain(cls[i].neighbors().iter().map(|&(v, _)| v))
        .chain(cls[j].neighbors().iter().map(|&(v, _)| v))
        .collect();
    view.sort_unstable();
    view.dedup();
    view
}

/// Renders the context image of candidate edge `(i, j)`.
pub fn render_context<C: Cost, F: FragmentView + ?Sized>(
    coords: &[[f64; 2]],
    cls: &CandidateLists<C>,
    fragments: &F,
    i: usize,
    j: usize,
    cfg: &RenderConfig,
) -> Result<ContextImage> {
    if coords.is_empty() {
        return Err(Error::NoCoordinates);
    }
    let n = coords.len();
    if cls.n() != n {
        return Err(Error::DimensionMismatch {
            expected: vec![n],
            found: vec![cls.n()],
        });
    }
    for v in [i, j] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    if i == j {
        return Err(Error::SelfLoop(i));
    }
    if cfg.size == 0 || !(0.0..1.0).contains(&cfg.margin) {
        return Err(Error::InvalidParameter("render size must be positive and margin in [0, 1)".into()));
    }
    let view = local_view(cls, i, j);
    let proj = Projection::new(coords[i], coords[j], view.iter().map(|&v| coords[v]), cfg);
    let px: Vec<(usize, usize)> = view.iter().map(|&v| proj.pixel(coords[v])).collect();
    let mut img = ContextImage::blank(cfg.size);

    for &p in &px {
        img.mark(p, cfg.mark_radius, Channel::Red);
    }
    let (pi, pj) = (proj.pixel(coords[i]), proj.pixel(coords[j]));
    img.line(pi, pj, Channel::Green);
    img.mark(pi, cfg.mark_radius, Channel::Green);
    img.mark(pj, cfg.mark_radius, Channel::Green);
    for a in 0..view.len() {
        for b in (a + 1)..view.len() {
            if fragments.linked(view[a], view[b]) {
                img.line(px[a], px[b], Channel::Blue);
            }
        }
    }
    Ok(img)
}

/// Blue-channel source for training-time replay: optimal edges among the
/// `L_P` entries that precede a given index.
#[derive(Debug, Clone, Default)]
pub struct OfflineReplay {
    edges: EdgeSet,
}

impl OfflineReplay {
    pub fn new<C: Cost>(lp: &PromisingList<C>, optimal: &EdgeSet, index: usize) -> Self {
        let edges = lp.entries()[..index.min(lp.len())]
            .iter()
            .filter(|e| optimal.contains(e.i, e.j))
            .map(|e| (e.i, e.j))
            .collect();
        Self { edges }
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }
}

impl FragmentView for OfflineReplay {
    fn linked(&self, u: usize, v: usize) -> bool {
        self.edges.contains(u, v)
    }
}

impl FragmentView for EdgeSet {
    fn linked(&self, u: usize, v: usize) -> bool {
        self.contains(u, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::candidates::build_candidate_lists;
    use crate::fragments::PartialSolution;
    use crate::instance::{EdgeWeightType, Instance};

    #[test]
    fn bresenham_endpoints_and_length() {
        let l = bresenham((0, 0), (3, 6));
        assert_eq!(l.first(), Some(&(0, 0)));
        assert_eq!(l.last(), Some(&(3, 6)));
        assert_eq!(l.len(), 7);
        assert_eq!(bresenham((5, 5), (5, 5)), vec![(5, 5)]);
        assert_eq!(bresenham((4, 2), (0, 2)).len(), 5);
    }

    #[test]
    fn extreme_points_stay_inside() {
        let cfg = RenderConfig::default();
        let p = Projection::new([-1.0, 0.0], [1.0, 0.0], [[-1.0, 0.0], [1.0, 0.0], [0.0, 1.0], [0.0, -1.0]], &cfg);
        assert_eq!(p.pixel([1.0, 0.0]), (48, 95));
        assert_eq!(p.pixel([-1.0, 0.0]), (48, 1));
        assert_eq!(p.pixel([0.0, 1.0]), (1, 48));
        assert_eq!(p.pixel([0.0, -1.0]), (95, 48));
    }

    #[test]
    fn coincident_points_render_at_center() {
        let inst = Instance::new("c", EdgeWeightType::Euc2dReal, vec![[2.0, 2.0]; 4]).unwrap();
        let cls = build_candidate_lists(&inst, 3).unwrap();
        let img = render_context(inst.coords(), &cls, &PartialSolution::new(4), 0, 1, &RenderConfig::default()).unwrap();
        assert_eq!(img.lit_pixels(Channel::Green), img.lit_pixels(Channel::Red));
        assert_eq!(img.count_lit(Channel::Red), 9);
        assert_eq!(img.get(48, 48, Channel::Red), 1.0);
    }

    #[test]
    fn blob_round_trip() {
        let mut img = ContextImage::blank(IMAGE_SIZE);
        img.mark((10, 20), 1, Channel::Blue);
        let blob = img.to_blob();
        assert_eq!(blob.len(), IMAGE_LEN * 4);
        assert_eq!(ContextImage::from_blob(&blob, IMAGE_SIZE).unwrap(), img);
        assert!(ContextImage::from_blob(&blob[1..], IMAGE_SIZE).is_err());
        let mut ppm = Vec::new();
        img.write_ppm(&mut ppm).unwrap();
        assert_eq!(ppm.len(), "P6\n96 96\n255\n".len() + IMAGE_SIZE * IMAGE_SIZE * 3);
    }
}
