//! Sampled motions of `n` points in the plane.
//!
//! Positions between samples are interpolated linearly. A trajectory
//! realizing a pure braid starts and ends at the basepoints
//! `scale · exp(2πik/n)`, `k = 1..n`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use crate::error::DomainError;
use crate::generator::StrandCount;
use crate::geometry::Point;

/// Minimum distance between any two strands at any sample.
pub const MIN_SEPARATION: f64 = 1e-9;

/// Samples per stage of the standard generator motion.
pub const SAMPLES_PER_STAGE: usize = 2048;

/// Basepoint scale of the collinearity model.
pub const COLLINEAR_SCALE: f64 = 1.0;

/// Basepoint scale of the disc model; keeps every point strictly inside
/// the unit circle.
pub const DISC_SCALE: f64 = 0.9;

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    n: StrandCount,
    scale: f64,
    times: Vec<f64>,
    /// Row-major: `positions[s * n + k]` is strand `k+1` at sample `s`.
    positions: Vec<Point>,
}

/// `scale · (cos 2πk/n, sin 2πk/n)` for `k = 1..=n`.
pub fn basepoints(n: StrandCount, scale: f64) -> Vec<Point> {
    let nn = n.get();
    (1..=nn)
        .map(|k| Point::polar(scale, TAU * k as f64 / nn as f64))
        .collect()
}

impl Trajectory {
    /// Validates sample layout, strictly increasing times starting at 0
    /// and ending at 1, and pairwise separation of the strands.
    pub fn new(
        n: StrandCount,
        scale: f64,
        times: Vec<f64>,
        positions: Vec<Point>,
    ) -> Result<Self, DomainError> {
        let nn = n.get();
        if times.len() < 2 {
            return Err(DomainError::BadTrajectory("need at least two samples"));
        }
        if positions.len() != times.len() * nn {
            return Err(DomainError::BadTrajectory("sample width does not match n"));
        }
        if times[0] != 0.0 || *times.last().unwrap() != 1.0 {
            return Err(DomainError::BadTrajectory("times must run from 0 to 1"));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(DomainError::BadTrajectory("times must increase strictly"));
        }
        if positions
            .iter()
            .any(|p| !p.x.is_finite() || !p.y.is_finite())
        {
            return Err(DomainError::BadTrajectory("non-finite coordinate"));
        }
        for row in positions.chunks(nn) {
            for a in 0..nn {
                for b in a + 1..nn {
                    if (row[a] - row[b]).norm() <= MIN_SEPARATION {
                        return Err(DomainError::BadTrajectory("two strands collide"));
                    }
                }
            }
        }
        Ok(Trajectory {
            n,
            scale,
            times,
            positions,
        })
    }

    /// All strands resting at the basepoints.
    pub fn constant(n: StrandCount, scale: f64) -> Self {
        let base = basepoints(n, scale);
        let mut positions = base.clone();
        positions.extend_from_slice(&base);
        Trajectory {
            n,
            scale,
            times: vec![0.0, 1.0],
            positions,
        }
    }

    /// Build from per-strand position functions of `t ∈ [0,1]`, sampled
    /// uniformly.
    pub fn from_fn(
        n: StrandCount,
        scale: f64,
        samples: usize,
        mut f: impl FnMut(usize, f64) -> Point,
    ) -> Result<Self, DomainError> {
        let samples = samples.max(2);
        let nn = n.get();
        let times: Vec<f64> = (0..samples)
            .map(|s| s as f64 / (samples - 1) as f64)
            .collect();
        let mut positions = Vec::with_capacity(samples * nn);
        for &t in &times {
            for k in 0..nn {
                positions.push(f(k + 1, t));
            }
        }
        Trajectory::new(n, scale, times, positions)
    }

    pub fn strands(&self) -> StrandCount {
        self.n
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn sample_count(&self) -> usize {
        self.times.len()
    }

    /// Positions of all strands at sample `s`.
    pub fn sample(&self, s: usize) -> &[Point] {
        let nn = self.n.get();
        &self.positions[s * nn..(s + 1) * nn]
    }

    pub fn start(&self) -> &[Point] {
        self.sample(0)
    }

    pub fn end(&self) -> &[Point] {
        self.sample(self.sample_count() - 1)
    }

    /// Position of strand `k` (1-based) inside segment `seg` at local
    /// parameter `s ∈ [0,1]`.
    pub fn at_segment(&self, seg: usize, s: f64, k: usize) -> Point {
        let nn = self.n.get();
        let a = self.positions[seg * nn + k - 1];
        let b = self.positions[(seg + 1) * nn + k - 1];
        a.lerp(b, s)
    }

    /// Index of the segment containing `t` and the local parameter.
    pub fn locate(&self, t: f64) -> (usize, f64) {
        let t = t.clamp(0.0, 1.0);
        let seg = match self.times.binary_search_by(|x| x.total_cmp(&t)) {
            Ok(i) => i.min(self.times.len() - 2),
            Err(i) => i.saturating_sub(1).min(self.times.len() - 2),
        };
        let (t0, t1) = (self.times[seg], self.times[seg + 1]);
        (seg, (t - t0) / (t1 - t0))
    }

    /// Interpolated position of strand `k` (1-based) at time `t`.
    pub fn position(&self, k: usize, t: f64) -> Point {
        let (seg, s) = self.locate(t);
        self.at_segment(seg, s, k)
    }

    /// Each strand ends where it started.
    pub fn is_pure(&self) -> bool {
        self.start()
            .iter()
            .zip(self.end())
            .all(|(a, b)| (*a - *b).norm() <= 1e-12)
    }

    /// Whether the start positions are the basepoints for `self.scale()`.
    pub fn starts_at_basepoints(&self) -> bool {
        basepoints(self.n, self.scale)
            .iter()
            .zip(self.start())
            .all(|(a, b)| (*a - *b).norm() <= 1e-12)
    }

    /// `self` on `[0, 1/2]` followed by `other` on `[1/2, 1]`. The end of
    /// `self` must match the start of `other`.
    pub fn concatenate(&self, other: &Trajectory) -> Result<Trajectory, DomainError> {
        if self.n != other.n || self.scale != other.scale {
            return Err(DomainError::BasepointMismatch);
        }
        let matches = self
            .end()
            .iter()
            .zip(other.start())
            .all(|(a, b)| (*a - *b).norm() <= 1e-12);
        if !matches {
            return Err(DomainError::BasepointMismatch);
        }
        let nn = self.n.get();
        let mut times: Vec<f64> = self.times.iter().map(|t| 0.5 * t).collect();
        times.extend(other.times[1..].iter().map(|t| 0.5 + 0.5 * t));
        *times.last_mut().unwrap() = 1.0;
        let mut positions = self.positions.clone();
        positions.extend_from_slice(&other.positions[nn..]);
        Ok(Trajectory {
            n: self.n,
            scale: self.scale,
            times,
            positions,
        })
    }

    /// Concatenate several pieces, each getting an equal share of `[0,1]`.
    pub fn chain(pieces: &[Trajectory]) -> Result<Trajectory, DomainError> {
        let (first, rest) = pieces
            .split_first()
            .ok_or(DomainError::BadTrajectory("nothing to chain"))?;
        for p in rest {
            if p.n != first.n || p.scale != first.scale {
                return Err(DomainError::BasepointMismatch);
            }
        }
        let nn = first.n.get();
        let m = pieces.len() as f64;
        let mut times = Vec::new();
        let mut positions = Vec::new();
        for (idx, piece) in pieces.iter().enumerate() {
            let skip = usize::from(idx > 0);
            if idx > 0 {
                let prev_end = &positions[positions.len() - nn..];
                let ok = prev_end
                    .iter()
                    .zip(piece.start())
                    .all(|(a, b): (&Point, &Point)| (*a - *b).norm() <= 1e-12);
                if !ok {
                    return Err(DomainError::BasepointMismatch);
                }
            }
            times.extend(piece.times[skip..].iter().map(|t| (idx as f64 + t) / m));
            positions.extend_from_slice(&piece.positions[skip * nn..]);
        }
        *times.last_mut().unwrap() = 1.0;
        Ok(Trajectory {
            n: first.n,
            scale: first.scale,
            times,
            positions,
        })
    }

    /// Time reversal, which realizes the inverse braid.
    pub fn inverse(&self) -> Trajectory {
        let nn = self.n.get();
        let m = self.sample_count();
        let times = self.times.iter().rev().map(|t| 1.0 - t).collect();
        let mut positions = Vec::with_capacity(self.positions.len());
        for s in (0..m).rev() {
            positions.extend_from_slice(&self.positions[s * nn..(s + 1) * nn]);
        }
        Trajectory {
            n: self.n,
            scale: self.scale,
            times,
            positions,
        }
    }

    /// Same samples at times `phi(t)`. `phi` must fix 0 and 1 and be
    /// strictly increasing.
    pub fn reparametrize(&self, phi: impl Fn(f64) -> f64) -> Result<Trajectory, DomainError> {
        let times = self.times.iter().map(|&t| phi(t)).collect();
        Trajectory::new(self.n, self.scale, times, self.positions.clone())
    }

    /// Apply `f(sample, strand, point)` to every sample, e.g. to add noise.
    pub fn map_samples(
        &self,
        mut f: impl FnMut(usize, usize, Point) -> Point,
    ) -> Result<Trajectory, DomainError> {
        let nn = self.n.get();
        let positions = self
            .positions
            .iter()
            .enumerate()
            .map(|(idx, &p)| f(idx / nn, idx % nn + 1, p))
            .collect();
        Trajectory::new(self.n, self.scale, self.times.clone(), positions)
    }

    /// Winding numbers of `z_i - z_j` around the origin, as an upper
    /// triangular matrix indexed `[i-1][j-1]` for `i < j`.
    pub fn linking_numbers(&self) -> Result<LinkingMatrix, DomainError> {
        if !self.is_pure() {
            return Err(DomainError::BadTrajectory("strands do not return home"));
        }
        let nn = self.n.get();
        let mut out = vec![vec![0i64; nn]; nn];
        for i in 1..=nn {
            for j in i + 1..=nn {
                let mut total = 0.0;
                for s in 0..self.sample_count() - 1 {
                    let d0 = self.sample(s)[i - 1] - self.sample(s)[j - 1];
                    let d1 = self.sample(s + 1)[i - 1] - self.sample(s + 1)[j - 1];
                    total += libm::atan2(d0.cross(d1), d0.dot(d1));
                }
                let turns = total / TAU;
                let rounded = libm::round(turns);
                if (turns - rounded).abs() > 0.1 {
                    return Err(DomainError::NonIntegralWinding { i, j, value: turns });
                }
                out[i - 1][j - 1] = rounded as i64;
            }
        }
        Ok(LinkingMatrix(out))
    }
}

/// Pairwise winding numbers; only entries `[i][j]` with `i < j` are used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingMatrix(pub Vec<Vec<i64>>);

impl LinkingMatrix {
    pub fn zero(n: usize) -> Self {
        LinkingMatrix(vec![vec![0; n]; n])
    }

    /// 1-based accessor for `i < j`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0[i - 1][j - 1]
    }

    pub fn elementary(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n);
        m.0[i - 1][j - 1] = 1;
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        LinkingMatrix(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        )
    }

    pub fn negate(&self) -> Self {
        LinkingMatrix(
            self.0
                .iter()
                .map(|r| r.iter().map(|x| -x).collect())
                .collect(),
        )
    }
}

/// Radius of the inner track, relative to the basepoint radius.
const TRACK: f64 = 0.85;
/// Angle by which the moving strand parks short of its partner.
const PARK_OFFSET: f64 = 0.1;
/// Slant of the first leg off the radial direction, as a fraction of the
/// spacing between neighbours. Breaks the mirror symmetry of the
/// basepoints so that events do not coincide.
const SLANT: f64 = 0.07;

/// Piecewise-linear path through `knots`, resampled by arc length.
fn polyline_sampler(knots: Vec<Point>) -> impl Fn(f64) -> Point {
    let mut cum = vec![0.0];
    for w in knots.windows(2) {
        let last = *cum.last().unwrap();
        cum.push(last + (w[1] - w[0]).norm());
    }
    move |s: f64| {
        let total = *cum.last().unwrap();
        let target = s.clamp(0.0, 1.0) * total;
        let seg = match cum.iter().position(|&c| c >= target) {
            Some(0) | None => 0,
            Some(i) => i - 1,
        }
        .min(knots.len() - 2);
        let len = cum[seg + 1] - cum[seg];
        let local = if len > 0.0 {
            (target - cum[seg]) / len
        } else {
            0.0
        };
        knots[seg].lerp(knots[seg + 1], local)
    }
}

/// Stages of the standard motion realizing `b_{ij}`:
///
/// 1. strand `i` leaves its basepoint for the inner track, follows it
///    counterclockwise past `i+1, …, j-1` and parks just short of `j`;
/// 2. strand `j` makes the first half of a counterclockwise loop around
///    the parked strand;
/// 3. strand `j` completes the loop and is home again;
/// 4. strand `i` returns along its outbound path.
///
/// Every other strand is stationary.
pub fn standard_generator_stages(
    n: StrandCount,
    i: usize,
    j: usize,
    scale: f64,
    samples_per_stage: usize,
) -> Result<[Trajectory; 4], DomainError> {
    n.check(i)?;
    n.check(j)?;
    if i >= j {
        return Err(DomainError::NotIncreasing { i, j });
    }
    let nn = n.get();
    let base = basepoints(n, scale);
    let theta = |k: usize| TAU * k as f64 / nn as f64;
    let spacing = TAU / nn as f64;

    let start_angle = theta(i) + SLANT * spacing;
    let park_angle = theta(j) - PARK_OFFSET;
    let mut knots = vec![base[i - 1]];
    let arc_steps = 512usize;
    for s in 0..=arc_steps {
        let a = start_angle + (park_angle - start_angle) * s as f64 / arc_steps as f64;
        knots.push(Point::polar(TRACK * scale, a));
    }
    let park = *knots.last().unwrap();
    let outbound = polyline_sampler(knots);

    let loop_start = base[j - 1] - park;
    let radius = loop_start.norm();
    let phase = loop_start.angle();
    let around = move |frac: f64| park + Point::polar(radius, phase + TAU * frac);

    let samples = samples_per_stage + 1;
    let stage = |f: &dyn Fn(usize, f64) -> Point| Trajectory::from_fn(n, scale, samples, f);
    let still = |k: usize| base[k - 1];
    let s1 = stage(&|k, t| if k == i { outbound(t) } else { still(k) })?;
    let s2 = stage(&|k, t| match k {
        _ if k == i => park,
        _ if k == j => around(0.5 * t),
        _ => still(k),
    })?;
    let s3 = stage(&|k, t| match k {
        _ if k == i => park,
        _ if k == j => {
            if t >= 1.0 {
                still(j)
            } else {
                around(0.5 + 0.5 * t)
            }
        }
        _ => still(k),
    })?;
    let s4 = stage(&|k, t| if k == i { outbound(1.0 - t) } else { still(k) })?;
    Ok([s1, s2, s3, s4])
}

/// The four stages of [`standard_generator_stages`] chained on quarters of
/// `[0,1]`.
pub fn standard_generator_trajectory(
    n: StrandCount,
    i: usize,
    j: usize,
    scale: f64,
) -> Result<Trajectory, DomainError> {
    let stages = standard_generator_stages(n, i, j, scale, SAMPLES_PER_STAGE)?;
    Trajectory::chain(&stages)
}
