use std::f64::consts::PI;

use num_complex::Complex64;

use super::{boundary, RegionError, RegionSpec, EDGE_EPS, MIN_BOUNDARY_SAMPLES};

/// Default relative chord deviation below which a boundary segment is not
/// split; well inside the indeterminate band.
const REFINE_TOL: f64 = EDGE_EPS / 4.0;
const MAX_REFINE_DEPTH: u32 = 12;
/// Points on the closing arc of an unbounded boundary.
const CLOSURE_SAMPLES: usize = 256;
/// Target number of polyline vertices per horizontal strip.
const VERTICES_PER_STRIP: usize = 8;

/// Closed boundary polyline of a region with a horizontal-strip index.
///
/// Bounded regions are sampled at `θ = 2πk/n`; consecutive samples whose
/// chord deviates from the curve are subdivided. Unbounded regions skip the
/// point at infinity (θ = 0) and are closed by an arc about `w = 1` sweeping
/// through the right half-plane, which keeps the orientation positive.
#[derive(Debug, Clone)]
pub struct BoundaryIndex {
    points: Vec<Complex64>,
    /// Interior strip boundaries, ascending.
    breaks: Vec<f64>,
    /// Edge indices per strip; strip `j` covers `[breaks[j-1], breaks[j])`.
    strips: Vec<Vec<u32>>,
    bbox: (Complex64, Complex64),
}

impl BoundaryIndex {
    pub fn new(region: &RegionSpec, n_samples: usize) -> Result<Self, RegionError> {
        Self::with_chord_tol(region, n_samples, REFINE_TOL)
    }

    /// Like [`BoundaryIndex::new`] with a custom relative chord tolerance,
    /// for use with a classification band narrower than [`EDGE_EPS`].
    pub fn with_chord_tol(region: &RegionSpec, n_samples: usize, chord_tol: f64) -> Result<Self, RegionError> {
        if !(chord_tol > 0.0) {
            return Err(RegionError::InvalidParameter(format!(
                "chord tolerance {chord_tol} must be positive"
            )));
        }
        if n_samples < MIN_BOUNDARY_SAMPLES {
            return Err(RegionError::InvalidParameter(format!(
                "n_samples = {n_samples} is below {MIN_BOUNDARY_SAMPLES}"
            )));
        }
        let region = region.validated()?;
        let theta = |k: usize| 2.0 * PI * k as f64 / n_samples as f64;
        let ks: Vec<usize> = if region.is_unbounded() {
            (1..n_samples).collect()
        } else {
            (0..=n_samples).collect()
        };

        let mut points = Vec::with_capacity(ks.len() * 2);
        for pair in ks.windows(2) {
            let (t0, t1) = (theta(pair[0]), theta(pair[1]));
            let (p0, p1) = (boundary(&region, t0), boundary(&region, t1));
            points.push(p0);
            refine(&region, t0, p0, t1, p1, chord_tol, 0, &mut points);
        }
        if region.is_unbounded() {
            points.push(boundary(&region, theta(n_samples - 1)));
            close_with_arc(&mut points);
        }
        // bounded: last sample (θ = 2π) duplicates the first and is implied

        Ok(Self::from_polyline(points))
    }

    fn from_polyline(points: Vec<Complex64>) -> Self {
        let mut ys: Vec<f64> = points.iter().map(|p| p.im).collect();
        ys.sort_by(f64::total_cmp);
        ys.dedup();
        let breaks: Vec<f64> = ys.iter().copied().step_by(VERTICES_PER_STRIP).skip(1).collect();
        let strip_of = |y: f64| breaks.partition_point(|&b| b <= y);

        let mut strips = vec![Vec::new(); breaks.len() + 1];
        let n = points.len();
        for i in 0..n {
            let (p, q) = (points[i], points[(i + 1) % n]);
            let lo = strip_of(p.im.min(q.im) - EDGE_EPS);
            let hi = strip_of(p.im.max(q.im) + EDGE_EPS);
            for strip in &mut strips[lo..=hi] {
                strip.push(i as u32);
            }
        }
        let mut min = Complex64::new(f64::INFINITY, f64::INFINITY);
        let mut max = Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &points {
            min = Complex64::new(min.re.min(p.re), min.im.min(p.im));
            max = Complex64::new(max.re.max(p.re), max.im.max(p.im));
        }
        BoundaryIndex {
            points,
            breaks,
            strips,
            bbox: (min, max),
        }
    }

    /// Vertices of the closed polyline (the closing edge is implied).
    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    fn strip_of(&self, y: f64) -> usize {
        self.breaks.partition_point(|&b| b <= y)
    }

    fn edge(&self, i: u32) -> (Complex64, Complex64) {
        let i = i as usize;
        (self.points[i], self.points[(i + 1) % self.points.len()])
    }

    /// Distance from `w` to the polyline, if it is below `eps`.
    fn near_edge(&self, w: Complex64, eps: f64) -> Option<f64> {
        let lo = self.strip_of(w.im - eps);
        let hi = self.strip_of(w.im + eps);
        self.strips[lo..=hi]
            .iter()
            .flatten()
            .map(|&i| {
                let (p, q) = self.edge(i);
                segment_distance(w, p, q)
            })
            .filter(|&d| d < eps)
            .reduce(f64::min)
    }

    /// Signed winding number of the polyline about `w`.
    pub fn winding_number(&self, w: Complex64) -> i64 {
        let strip = &self.strips[self.strip_of(w.im)];
        let mut wn = 0i64;
        for &i in strip {
            let (p, q) = self.edge(i);
            if p.im <= w.im {
                if q.im > w.im && is_left(p, q, w) > 0.0 {
                    wn += 1;
                }
            } else if q.im <= w.im && is_left(p, q, w) < 0.0 {
                wn -= 1;
            }
        }
        wn
    }

    /// Membership by winding number; `Err` when `w` is within
    /// [`EDGE_EPS`] of the polyline.
    pub fn classify(&self, w: Complex64) -> Result<bool, RegionError> {
        self.classify_with(w, EDGE_EPS)
    }

    pub fn classify_with(&self, w: Complex64, eps: f64) -> Result<bool, RegionError> {
        if !(w.re.is_finite() && w.im.is_finite()) {
            return Err(RegionError::NonFinite(w));
        }
        let (min, max) = self.bbox;
        if w.re < min.re - eps || w.re > max.re + eps || w.im < min.im - eps || w.im > max.im + eps {
            return Ok(false);
        }
        if let Some(distance) = self.near_edge(w, eps) {
            return Err(RegionError::BoundaryIndeterminate { w, distance });
        }
        Ok(self.winding_number(w) == 1)
    }
}

#[allow(clippy::too_many_arguments)]
fn refine(
    region: &RegionSpec,
    t0: f64,
    p0: Complex64,
    t1: f64,
    p1: Complex64,
    tol: f64,
    depth: u32,
    out: &mut Vec<Complex64>,
) {
    if depth >= MAX_REFINE_DEPTH {
        return;
    }
    let tm = 0.5 * (t0 + t1);
    let pm = boundary(region, tm);
    let scale = 1f64.max(pm.norm());
    if segment_distance(pm, p0, p1) <= tol * scale {
        return;
    }
    refine(region, t0, p0, tm, pm, tol, depth + 1, out);
    out.push(pm);
    refine(region, tm, pm, t1, p1, tol, depth + 1, out);
}

/// Appends an arc about `w = 1` from the last point back to the first,
/// sweeping counterclockwise through the positive real direction.
fn close_with_arc(points: &mut Vec<Complex64>) {
    let center = Complex64::new(1.0, 0.0);
    let first = points[0] - center;
    let last = *points.last().expect("non-empty polyline") - center;
    let (r0, a0) = last.to_polar();
    let (r1, mut a1) = first.to_polar();
    if a1 <= a0 {
        a1 += 2.0 * PI;
    }
    for k in 1..CLOSURE_SAMPLES {
        let s = k as f64 / CLOSURE_SAMPLES as f64;
        let r = r0 + (r1 - r0) * s;
        let a = a0 + (a1 - a0) * s;
        points.push(center + Complex64::from_polar(r, a));
    }
}

fn is_left(p: Complex64, q: Complex64, w: Complex64) -> f64 {
    (q.re - p.re) * (w.im - p.im) - (w.re - p.re) * (q.im - p.im)
}

fn segment_distance(w: Complex64, p: Complex64, q: Complex64) -> f64 {
    let d = q - p;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (w - p).norm();
    }
    let t = (((w - p) * d.conj()).re / len2).clamp(0.0, 1.0);
    (w - (p + d * t)).norm()
}
