//! Planar regions on one slice and axially symmetric domains of `H`.
//!
//! An axially symmetric set is determined by its shadow in the `(x, y)`
//! plane: `x + y I` belongs to it for every `I` as soon as `(x, |y|)` does.
//! Connectivity questions are answered on a rasterized copy of the shadow.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::quaternion::Quaternion;

pub const DEFAULT_GRID_STEP: f64 = 1e-2;

/// Extent used for the real trace of unbounded regions.
const UNBOUNDED_TRACE: (f64, f64) = (-2.0, 2.0);

/// Grids larger than this are coarsened rather than allocated.
const MAX_GRID_CELLS: usize = 16_000_000;

/// An open region of the slice plane, in signed coordinates `(x, y)` for the
/// point `x + y J`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Plane,
    Disc { cx: f64, cy: f64, r: f64 },
    Rect { x0: f64, x1: f64, y0: f64, y1: f64 },
    Union(Vec<Region>),
}

impl Region {
    pub fn disc(cx: f64, cy: f64, r: f64) -> Self {
        Region::Disc { cx, cy, r }
    }

    pub fn rect(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        Region::Rect { x0, x1, y0, y1 }
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        match self {
            Region::Plane => x.is_finite() && y.is_finite(),
            Region::Disc { cx, cy, r } => (x - cx).powi(2) + (y - cy).powi(2) < r * r,
            Region::Rect { x0, x1, y0, y1 } => *x0 < x && x < *x1 && *y0 < y && y < *y1,
            Region::Union(parts) => parts.iter().any(|p| p.contains(x, y)),
        }
    }

    /// `(xmin, xmax, ymin, ymax)`, or `None` when unbounded.
    pub fn bounds(&self) -> Option<(f64, f64, f64, f64)> {
        match self {
            Region::Plane => None,
            Region::Disc { cx, cy, r } => Some((cx - r, cx + r, cy - r, cy + r)),
            Region::Rect { x0, x1, y0, y1 } => Some((*x0, *x1, *y0, *y1)),
            Region::Union(parts) => {
                let mut acc: Option<(f64, f64, f64, f64)> = None;
                for p in parts {
                    let b = p.bounds()?;
                    acc = Some(match acc {
                        None => b,
                        Some(a) => (a.0.min(b.0), a.1.max(b.1), a.2.min(b.2), a.3.max(b.3)),
                    });
                }
                acc
            }
        }
    }

    pub fn is_unbounded(&self) -> bool {
        self.bounds().is_none()
    }

    /// Checks `contains(x, y) == contains(x, -y)` on a grid covering the
    /// region.
    pub fn is_conjugation_symmetric(&self, grid_step: f64) -> bool {
        let Some((x0, x1, y0, y1)) = self.bounds() else {
            return self.symmetric_unbounded();
        };
        let ymax = y0.abs().max(y1.abs());
        let grid = Grid::new(x0, x1, ymax, grid_step);
        (0..grid.nx).all(|i| {
            let x = grid.x(i);
            (0..=grid.half).all(|k| {
                let y = grid.y_abs(k);
                self.contains(x, y) == self.contains(x, -y)
            })
        })
    }

    fn symmetric_unbounded(&self) -> bool {
        match self {
            Region::Plane => true,
            // a union with an unbounded part is symmetric when every bounded
            // part is mirrored inside the union
            Region::Union(parts) => parts.iter().all(|p| match p.bounds() {
                None => p.symmetric_unbounded(),
                Some(_) => {
                    let mirror = p.mirrored();
                    Region::Union(parts.clone()).covers(&mirror)
                }
            }),
            _ => false,
        }
    }

    fn mirrored(&self) -> Region {
        match self {
            Region::Plane => Region::Plane,
            Region::Disc { cx, cy, r } => Region::Disc { cx: *cx, cy: -cy, r: *r },
            Region::Rect { x0, x1, y0, y1 } => Region::Rect { x0: *x0, x1: *x1, y0: -y1, y1: -y0 },
            Region::Union(parts) => Region::Union(parts.iter().map(Region::mirrored).collect()),
        }
    }

    fn covers(&self, other: &Region) -> bool {
        let Some((x0, x1, y0, y1)) = other.bounds() else {
            return matches!(self, Region::Plane);
        };
        let grid = Grid::new(x0, x1, y0.abs().max(y1.abs()), DEFAULT_GRID_STEP);
        (0..grid.nx).all(|i| {
            let x = grid.x(i);
            grid.signed_ys().all(|y| !other.contains(x, y) || self.contains(x, y))
        })
    }

    /// Sample points of `region ∩ R`: `n` evenly spaced points spanning the
    /// real trace, keeping those inside the region.
    pub fn real_trace_samples(&self, n: usize, grid_step: f64) -> Vec<f64> {
        let (lo, hi) = match self.real_trace_extent(grid_step) {
            Some(e) => e,
            None => return Vec::new(),
        };
        if n <= 1 || hi <= lo {
            return vec![0.5 * (lo + hi)].into_iter().filter(|&x| self.contains(x, 0.0)).collect();
        }
        (0..n)
            .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
            .filter(|&x| self.contains(x, 0.0))
            .collect()
    }

    /// Smallest and largest grid abscissae of the real trace.
    pub fn real_trace_extent(&self, grid_step: f64) -> Option<(f64, f64)> {
        let (x0, x1) = match self.bounds() {
            Some((x0, x1, _, _)) => (x0, x1),
            None => UNBOUNDED_TRACE,
        };
        let n = (((x1 - x0) / grid_step).ceil() as usize).max(1);
        let step = (x1 - x0) / n as f64;
        let inside: Vec<f64> = (0..=n)
            .map(|i| x0 + step * i as f64)
            .filter(|&x| self.contains(x, 0.0))
            .collect();
        Some((*inside.first()?, *inside.last()?))
    }
}

/// Raster of the symmetric window `[x0, x1] x [-ymax, ymax]` whose rows
/// include `y = 0` exactly.
struct Grid {
    x0: f64,
    dx: f64,
    nx: usize,
    dy: f64,
    half: usize,
}

impl Grid {
    fn new(x0: f64, x1: f64, ymax: f64, step: f64) -> Self {
        let mut step = step.max(1e-9);
        let mut nx;
        let mut half;
        loop {
            nx = (((x1 - x0) / step).ceil() as usize).max(1) + 1;
            half = ((ymax / step).ceil() as usize).max(1);
            if nx * (2 * half + 1) <= MAX_GRID_CELLS {
                break;
            }
            step *= 2.0;
        }
        let dx = (x1 - x0) / (nx - 1).max(1) as f64;
        Grid { x0, dx, nx, dy: ymax / half as f64, half }
    }

    fn x(&self, i: usize) -> f64 {
        self.x0 + self.dx * i as f64
    }

    fn y_abs(&self, k: usize) -> f64 {
        self.dy * k as f64
    }

    fn ny(&self) -> usize {
        2 * self.half + 1
    }

    fn y_row(&self, row: usize) -> f64 {
        self.dy * (row as f64 - self.half as f64)
    }

    fn signed_ys(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.ny()).map(|r| self.y_row(r))
    }
}

/// An axially symmetric subset of `H`, stored as its `(x, y)` shadow.
#[derive(Clone, Debug, PartialEq)]
pub struct AxialDomain {
    shadow: Region,
    grid_step: f64,
    contains_real: bool,
    is_s_domain: bool,
}

impl AxialDomain {
    /// All of `H`.
    pub fn whole() -> Self {
        AxialDomain {
            shadow: Region::Plane,
            grid_step: DEFAULT_GRID_STEP,
            contains_real: true,
            is_s_domain: true,
        }
    }

    /// Union of half-plane boxes `{x in (a, b), 0 <= y < c}`.
    pub fn from_boxes(boxes: &[AxialBox], grid_step: f64) -> Self {
        let parts = boxes.iter().map(|b| Region::rect(b.x0, b.x1, -b.y1, b.y1)).collect();
        symmetric_completion(&Region::Union(parts), grid_step)
    }

    pub fn shadow(&self) -> &Region {
        &self.shadow
    }

    pub fn grid_step(&self) -> f64 {
        self.grid_step
    }

    pub fn contains_real(&self) -> bool {
        self.contains_real
    }

    pub fn is_axially_symmetric(&self) -> bool {
        true
    }

    pub fn is_s_domain(&self) -> bool {
        self.is_s_domain
    }

    /// Membership of the sphere through `(x, |y|)`.
    pub fn contains_xy(&self, x: f64, y: f64) -> bool {
        let y = y.abs();
        self.shadow.contains(x, y) || self.shadow.contains(x, -y)
    }

    pub fn contains(&self, q: Quaternion) -> bool {
        self.contains_xy(q.re(), q.im_norm())
    }
}

/// Half-plane box of the domain JSON encoding.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxialBox {
    pub x0: f64,
    pub x1: f64,
    pub y1: f64,
}

/// Axially symmetric completion of a region given on one slice: the union of
/// the spheres `x + y S` over its points.
pub fn symmetric_completion(region: &Region, grid_step: f64) -> AxialDomain {
    let shadow = region.clone();
    let Some((x0, x1, y0, y1)) = region.bounds() else {
        // unbounded regions are only produced from the whole plane or from
        // unions containing it
        return AxialDomain { shadow, grid_step, contains_real: true, is_s_domain: true };
    };
    let ymax = y0.abs().max(y1.abs());
    let grid = Grid::new(x0, x1, ymax, grid_step);
    let (nx, ny) = (grid.nx, grid.ny());
    let member = |i: usize, row: usize| {
        let (x, y) = (grid.x(i), grid.y_row(row).abs());
        region.contains(x, y) || region.contains(x, -y)
    };

    let mut inside = vec![false; nx * ny];
    let mut total = 0usize;
    for row in 0..ny {
        for i in 0..nx {
            if member(i, row) {
                inside[row * nx + i] = true;
                total += 1;
            }
        }
    }
    let real_row = grid.half;
    let start = (0..nx).find(|&i| inside[real_row * nx + i]);
    let contains_real = start.is_some();

    let is_s_domain = match start {
        None => false,
        Some(i0) => flood_fill_count(&inside, nx, ny, real_row * nx + i0) == total,
    };
    AxialDomain { shadow, grid_step, contains_real, is_s_domain }
}

fn flood_fill_count(inside: &[bool], nx: usize, ny: usize, start: usize) -> usize {
    let mut seen = vec![false; inside.len()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    let mut count = 0;
    while let Some(c) = queue.pop_front() {
        count += 1;
        let (i, row) = (c % nx, c / nx);
        let mut push = |n: usize| {
            if inside[n] && !seen[n] {
                seen[n] = true;
                queue.push_back(n);
            }
        };
        if i > 0 {
            push(c - 1);
        }
        if i + 1 < nx {
            push(c + 1);
        }
        if row > 0 {
            push(c - nx);
        }
        if row + 1 < ny {
            push(c + nx);
        }
    }
    count
}
