//! Event detection on trajectories.
//!
//! Two kinds of codimension-one incidents are traced:
//!
//! * three strands collinear, emitting `a'_{ijk}` with `j` the middle point;
//! * three strands on a circle internally tangent to the unit circle,
//!   emitting `a''_{ijk}` with the points listed counterclockwise from the
//!   tangency point.
//!
//! Roots are bracketed by sign changes of a residual along the
//! piecewise-linear interpolant and refined by bisection.

use alloc::vec::Vec;
use core::fmt;

use crate::error::DomainError;
use crate::generator::{BraidLetter, DoublePrimeGenerator, PrimeGenerator, StrandCount};
use crate::geometry::{circumcircle, orientation, tangency_polynomial, Point};
use crate::trajectory::{standard_generator_trajectory, Trajectory, COLLINEAR_SCALE, DISC_SCALE};
use crate::word::{BraidWord, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceParams {
    /// Bisection stops once the bracket is shorter than this, in time.
    pub tol: f64,
    /// Events closer than this in time are reported as simultaneous.
    pub delta: f64,
    /// Smallest accepted `|d residual / dt|` at a root.
    pub min_slope: f64,
    /// A fourth strand this close to the event line or circle is reported.
    pub quad_eps: f64,
}

impl Default for TraceParams {
    fn default() -> Self {
        TraceParams {
            tol: 1e-12,
            delta: 1e-9,
            min_slope: 1e-8,
            quad_eps: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EventKind {
    Collinear,
    Tangent,
}

impl EventKind {
    pub fn label(self) -> &'static str {
        match self {
            EventKind::Collinear => "collinear",
            EventKind::Tangent => "tangent",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub time: f64,
    pub kind: EventKind,
    /// Collinear: middle strand second. Tangent: counterclockwise from the
    /// tangency point. Sorted strand indices when no circle exists.
    pub order: [usize; 3],
    /// Time derivative of the residual at the root.
    pub slope: f64,
}

impl Event {
    pub fn prime(&self) -> PrimeGenerator {
        let [i, j, k] = self.order;
        PrimeGenerator::canonical(i as u8, j as u8, k as u8)
    }

    pub fn double_prime(&self) -> DoublePrimeGenerator {
        let [i, j, k] = self.order;
        DoublePrimeGenerator::raw(i as u8, j as u8, k as u8)
    }

    fn strand_set(&self) -> [usize; 3] {
        let mut s = self.order;
        s.sort_unstable();
        s
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [i, j, k] = self.order;
        write!(
            f,
            "t={:.15} {} ({i},{j},{k}) slope={:e}",
            self.time,
            self.kind.label(),
            self.slope
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// Two events closer than `delta` in time.
    Simultaneous {
        first: f64,
        second: f64,
        triples: [[usize; 3]; 2],
    },
    /// The residual crosses zero too slowly.
    NonTransversal {
        time: f64,
        triple: [usize; 3],
        slope: f64,
    },
    /// A fourth strand lies on the event line or circle.
    NearQuadruple {
        time: f64,
        triple: [usize; 3],
        fourth: usize,
        distance: f64,
    },
    /// At a tangency candidate the three points are collinear.
    CollinearAtTangent { time: f64, triple: [usize; 3] },
}

impl Violation {
    pub fn time(&self) -> f64 {
        match *self {
            Violation::Simultaneous { first, .. } => first,
            Violation::NonTransversal { time, .. }
            | Violation::NearQuadruple { time, .. }
            | Violation::CollinearAtTangent { time, .. } => time,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Simultaneous {
                first,
                second,
                triples,
            } => write!(
                f,
                "simultaneous events at t={first:.15} {:?} and t={second:.15} {:?}",
                triples[0], triples[1]
            ),
            Violation::NonTransversal {
                time,
                triple,
                slope,
            } => write!(
                f,
                "non-transversal crossing at t={time:.15} {triple:?}, slope {slope:e}"
            ),
            Violation::NearQuadruple {
                time,
                triple,
                fourth,
                distance,
            } => write!(
                f,
                "strand {fourth} within {distance:e} of event {triple:?} at t={time:.15}"
            ),
            Violation::CollinearAtTangent { time, triple } => {
                write!(
                    f,
                    "collinear triple {triple:?} at tangency candidate t={time:.15}"
                )
            }
        }
    }
}

/// Outcome of the genericity checks.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GenericityReport {
    pub violations: Vec<Violation>,
}

impl GenericityReport {
    /// Good and stable: no violations.
    pub fn is_good(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for GenericityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_good() {
            return writeln!(f, "verdict: good-and-stable");
        }
        writeln!(f, "verdict: violations ({})", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Events in time order, the word they spell and the genericity verdict.
/// The word is only meaningful when `report.is_good()`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace<G> {
    pub events: Vec<Event>,
    pub word: Word<G>,
    pub report: GenericityReport,
}

/// Either the input is invalid or the dynamics is not generic.
#[derive(Debug, Clone, PartialEq)]
pub enum TraceError {
    Domain(DomainError),
    NotGeneric(GenericityReport),
}

impl From<DomainError> for TraceError {
    fn from(e: DomainError) -> Self {
        TraceError::Domain(e)
    }
}

impl fmt::Display for TraceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceError::Domain(e) => e.fmt(f),
            TraceError::NotGeneric(r) => write!(f, "dynamics is not generic: {r}"),
        }
    }
}

impl core::error::Error for TraceError {}

fn triples(n: usize) -> impl Iterator<Item = [usize; 3]> {
    (1..=n).flat_map(move |a| (a + 1..=n).flat_map(move |b| (b + 1..=n).map(move |c| [a, b, c])))
}

struct Segment<'a> {
    traj: &'a Trajectory,
    seg: usize,
}

impl Segment<'_> {
    fn at(&self, u: f64, k: usize) -> Point {
        self.traj.at_segment(self.seg, u, k)
    }

    fn time(&self, u: f64) -> f64 {
        let t = self.traj.times();
        t[self.seg] + u * (t[self.seg + 1] - t[self.seg])
    }

    fn dt(&self) -> f64 {
        let t = self.traj.times();
        t[self.seg + 1] - t[self.seg]
    }
}

fn positive(x: f64) -> bool {
    x >= 0.0
}

/// Bisect `[lo, hi]` (local segment parameters) for a sign change of `f`.
fn bisect(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, dt: f64, tol: f64) -> f64 {
    let side = positive(f(lo));
    for _ in 0..200 {
        if (hi - lo) * dt <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if positive(f(mid)) == side {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Roots of `f` on `[0,1)`, bracketed between consecutive `knots`.
fn segment_roots(f: &dyn Fn(f64) -> f64, knots: &[f64], dt: f64, tol: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut prev = (knots[0], f(knots[0]));
    for &u in &knots[1..] {
        let fu = f(u);
        if positive(prev.1) != positive(fu) {
            out.push(bisect(f, prev.0, u, dt, tol));
        }
        prev = (u, fu);
    }
    out
}

fn slope_at(f: &dyn Fn(f64) -> f64, u: f64, dt: f64) -> f64 {
    let h = 1e-3;
    (f(u + h) - f(u - h)) / (2.0 * h * dt)
}

/// Collinear-triple events of `traj`.
pub fn collinear_events(traj: &Trajectory, params: &TraceParams) -> Trace<PrimeGenerator> {
    let n = traj.strands().get();
    let mut events = Vec::new();
    let mut report = GenericityReport::default();
    for seg in 0..traj.sample_count() - 1 {
        let s = Segment { traj, seg };
        for tri in triples(n) {
            let [a, b, c] = tri;
            let f = |u: f64| orientation(s.at(u, a), s.at(u, b), s.at(u, c));
            // quadratic in u: split at the vertex so double roots are seen
            let (f0, fm, f1) = (f(0.0), f(0.5), f(1.0));
            let qa = 2.0 * (f0 - 2.0 * fm + f1);
            let qb = f1 - f0 - qa;
            let mut knots = alloc::vec![0.0, 1.0];
            if qa != 0.0 {
                let v = -qb / (2.0 * qa);
                if v > 0.0 && v < 1.0 {
                    knots.insert(1, v);
                }
            }
            for u in segment_roots(&f, &knots, s.dt(), params.tol) {
                let pts = [s.at(u, a), s.at(u, b), s.at(u, c)];
                let order = collinear_order(tri, pts);
                let slope = slope_at(&f, u, s.dt());
                let time = s.time(u);
                let ev = Event {
                    time,
                    kind: EventKind::Collinear,
                    order,
                    slope,
                };
                check_transversal(&ev, params, &mut report);
                let (p, q) = (s.at(u, order[0]), s.at(u, order[2]));
                let dir = q - p;
                let len = dir.norm();
                for d in (1..=n).filter(|d| !tri.contains(d)) {
                    let dist = (dir.cross(s.at(u, d) - p) / len).abs();
                    if dist < params.quad_eps {
                        report.violations.push(Violation::NearQuadruple {
                            time,
                            triple: order,
                            fourth: d,
                            distance: dist,
                        });
                    }
                }
                events.push(ev);
            }
        }
    }
    finish(events, report, params, Event::prime)
}

/// The middle point of three collinear points is the one opposite the
/// longest side.
fn collinear_order(tri: [usize; 3], pts: [Point; 3]) -> [usize; 3] {
    let d = |x: usize, y: usize| (pts[x] - pts[y]).norm_sq();
    let sides = [d(1, 2), d(0, 2), d(0, 1)];
    let mid = (0..3)
        .max_by(|&x, &y| sides[x].total_cmp(&sides[y]).then(y.cmp(&x)))
        .unwrap();
    let others: Vec<usize> = (0..3).filter(|&x| x != mid).collect();
    [tri[others[0]], tri[mid], tri[others[1]]]
}

/// Tangent-circle events of `traj`. All positions must lie strictly inside
/// the unit disc.
pub fn tangent_events(
    traj: &Trajectory,
    params: &TraceParams,
) -> Result<Trace<DoublePrimeGenerator>, DomainError> {
    let n = traj.strands().get();
    for s in 0..traj.sample_count() {
        for (k, p) in traj.sample(s).iter().enumerate() {
            if !(p.norm() < 1.0) {
                return Err(DomainError::OutsideDisc {
                    time: traj.times()[s],
                    strand: k + 1,
                });
            }
        }
    }
    let mut events = Vec::new();
    let mut report = GenericityReport::default();
    for seg in 0..traj.sample_count() - 1 {
        let s = Segment { traj, seg };
        for tri in triples(n) {
            let [a, b, c] = tri;
            let f = |u: f64| tangency_polynomial(s.at(u, a), s.at(u, b), s.at(u, c));
            for u in segment_roots(&f, &[0.0, 1.0], s.dt(), params.tol) {
                let time = s.time(u);
                let slope = slope_at(&f, u, s.dt());
                let pts = [s.at(u, a), s.at(u, b), s.at(u, c)];
                let Ok(circle) = circumcircle(pts[0], pts[1], pts[2]) else {
                    report
                        .violations
                        .push(Violation::CollinearAtTangent { time, triple: tri });
                    events.push(Event {
                        time,
                        kind: EventKind::Tangent,
                        order: tri,
                        slope,
                    });
                    continue;
                };
                let mut idx = [0usize, 1, 2];
                idx.sort_by(|&x, &y| {
                    circle
                        .angle_from_tangency(pts[x])
                        .total_cmp(&circle.angle_from_tangency(pts[y]))
                });
                let ev = Event {
                    time,
                    kind: EventKind::Tangent,
                    order: idx.map(|x| tri[x]),
                    slope,
                };
                check_transversal(&ev, params, &mut report);
                for d in (1..=n).filter(|d| !tri.contains(d)) {
                    let dist = circle.distance(s.at(u, d));
                    if dist < params.quad_eps {
                        report.violations.push(Violation::NearQuadruple {
                            time,
                            triple: ev.order,
                            fourth: d,
                            distance: dist,
                        });
                    }
                }
                events.push(ev);
            }
        }
    }
    Ok(finish(events, report, params, Event::double_prime))
}

fn check_transversal(ev: &Event, params: &TraceParams, report: &mut GenericityReport) {
    if !(ev.slope.abs() >= params.min_slope) {
        report.violations.push(Violation::NonTransversal {
            time: ev.time,
            triple: ev.order,
            slope: ev.slope,
        });
    }
}

fn finish<G: Letter>(
    mut events: Vec<Event>,
    mut report: GenericityReport,
    params: &TraceParams,
    letter: fn(&Event) -> G,
) -> Trace<G> {
    events.sort_by(|x, y| {
        x.time
            .total_cmp(&y.time)
            .then_with(|| x.strand_set().cmp(&y.strand_set()))
    });
    report
        .violations
        .extend(validate_genericity(&events, params.delta).violations);
    report
        .violations
        .sort_by(|x, y| x.time().total_cmp(&y.time()));
    let word = events.iter().map(letter).collect();
    Trace {
        events,
        word,
        report,
    }
}

/// Flags events (of any triples) closer than `delta` in time. `events` must
/// be sorted by time.
pub fn validate_genericity(events: &[Event], delta: f64) -> GenericityReport {
    let violations = events
        .windows(2)
        .filter(|w| w[1].time - w[0].time < delta)
        .map(|w| Violation::Simultaneous {
            first: w[0].time,
            second: w[1].time,
            triples: [w[0].order, w[1].order],
        })
        .collect();
    GenericityReport { violations }
}

/// Trajectory of a braid word: standard generator motions, time reversed
/// for negative exponents, chained on equal time slices.
pub fn braid_trajectory(
    word: &BraidWord,
    n: StrandCount,
    scale: f64,
) -> Result<Trajectory, DomainError> {
    word.check_strands(n)?;
    if word.is_empty() {
        return Ok(Trajectory::constant(n, scale));
    }
    let pieces = word
        .letters()
        .iter()
        .map(|b| letter_trajectory(*b, n, scale))
        .collect::<Result<Vec<_>, _>>()?;
    Trajectory::chain(&pieces)
}

fn letter_trajectory(
    b: BraidLetter,
    n: StrandCount,
    scale: f64,
) -> Result<Trajectory, DomainError> {
    let (i, j) = b.strands();
    let t = standard_generator_trajectory(n, i, j, scale)?;
    Ok(if b.is_inverse() { t.inverse() } else { t })
}

/// `f(b)` for one braid letter, read off the collinear events of its
/// standard trajectory.
pub fn f_letter(
    b: BraidLetter,
    n: StrandCount,
    params: &TraceParams,
) -> Result<Word<PrimeGenerator>, TraceError> {
    let t = letter_trajectory(b, n, COLLINEAR_SCALE)?;
    let trace = collinear_events(&t, params);
    if !trace.report.is_good() {
        return Err(TraceError::NotGeneric(trace.report));
    }
    Ok(trace.word)
}

/// `g(b)` for one braid letter, read off the tangent-circle events of its
/// standard trajectory in the disc.
pub fn g_letter(
    b: BraidLetter,
    n: StrandCount,
    params: &TraceParams,
) -> Result<Word<DoublePrimeGenerator>, TraceError> {
    let t = letter_trajectory(b, n, DISC_SCALE)?;
    let trace = tangent_events(&t, params)?;
    if !trace.report.is_good() {
        return Err(TraceError::NotGeneric(trace.report));
    }
    Ok(trace.word)
}

/// `f(β)` as the product of the traced generator words.
pub fn f_geometric(
    word: &BraidWord,
    n: StrandCount,
    params: &TraceParams,
) -> Result<Word<PrimeGenerator>, TraceError> {
    word.check_strands(n)?;
    let mut out = Word::empty();
    for &b in word.letters() {
        out = out.concat(&f_letter(b, n, params)?);
    }
    Ok(out)
}

/// `g(β)` as the product of the traced generator words.
pub fn g_geometric(
    word: &BraidWord,
    n: StrandCount,
    params: &TraceParams,
) -> Result<Word<DoublePrimeGenerator>, TraceError> {
    word.check_strands(n)?;
    let mut out = Word::empty();
    for &b in word.letters() {
        out = out.concat(&g_letter(b, n, params)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Circle;
    use crate::trajectory::Trajectory;
    use alloc::vec;

    fn n(k: usize) -> StrandCount {
        StrandCount::new(k).unwrap()
    }

    fn ev(time: f64, order: [usize; 3]) -> Event {
        Event {
            time,
            kind: EventKind::Collinear,
            order,
            slope: 1.0,
        }
    }

    #[test]
    fn generic_event_times_pass() {
        let r = validate_genericity(&[ev(0.2, [1, 2, 3]), ev(0.7, [1, 3, 2])], 1e-6);
        assert!(r.is_good());
    }

    #[test]
    fn simultaneous_events_are_flagged() {
        let r = validate_genericity(&[ev(0.5, [1, 2, 3]), ev(0.5, [1, 2, 4])], 1e-9);
        assert!(!r.is_good());
        assert!(matches!(r.violations[0], Violation::Simultaneous { .. }));
    }

    #[test]
    fn constant_trajectories_have_no_events() {
        for k in 3..=6 {
            let t = Trajectory::constant(n(k), 1.0);
            let tr = collinear_events(&t, &TraceParams::default());
            assert!(tr.word.is_empty() && tr.report.is_good());
            let t = Trajectory::constant(n(k), DISC_SCALE);
            let tr = tangent_events(&t, &TraceParams::default()).unwrap();
            assert!(tr.word.is_empty() && tr.report.is_good());
        }
    }

    #[test]
    fn planted_quadruple_collinearity_is_flagged() {
        // strand 4 sits on the x axis; strand 2 crosses it between 1 and 3
        let t = Trajectory::from_fn(n(4), 1.0, 2, |k, t| match k {
            1 => Point::new(-1.0, 0.0),
            2 => Point::new(0.2, -0.5 + t),
            3 => Point::new(1.0, 0.0),
            _ => Point::new(0.6, 0.0),
        })
        .unwrap();
        let tr = collinear_events(&t, &TraceParams::default());
        assert!(tr
            .report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NearQuadruple { fourth: 4, .. })));
    }

    #[test]
    fn middle_point_is_second() {
        let t = Trajectory::from_fn(n(3), 1.0, 2, |k, t| match k {
            1 => Point::new(0.0, 0.0),
            2 => Point::new(1.0, 0.0),
            _ => Point::new(0.5 + 0.1 * t, -0.3 + t),
        })
        .unwrap();
        let tr = collinear_events(&t, &TraceParams::default());
        assert_eq!(tr.events.len(), 1);
        assert_eq!(tr.events[0].order, [1, 3, 2]);
        assert!((tr.events[0].time - 0.3).abs() < 1e-12);
    }

    #[test]
    fn grazing_crossing_is_seen_twice() {
        // strand 3 dips below the line through 1 and 2 inside one segment
        let t = Trajectory::from_fn(n(3), 1.0, 2, |k, t| match k {
            1 => Point::new(-1.0, 0.0 + 0.2 * t),
            2 => Point::new(1.0, 0.0 - 0.2 * t),
            _ => Point::new(-0.5 + t, 0.005),
        })
        .unwrap();
        let tr = collinear_events(&t, &TraceParams::default());
        assert_eq!(tr.events.len(), 2);
        let expected = [(0.5 - 0.15f64.sqrt()) / 2.0, (0.5 + 0.15f64.sqrt()) / 2.0];
        for (e, x) in tr.events.iter().zip(expected) {
            assert!((e.time - x).abs() < 1e-12);
        }
    }

    #[test]
    fn tangent_event_order_follows_tangency_point() {
        let c = Circle {
            center: Point::new(0.0, 0.5),
            radius: 0.5,
        };
        // tangency point at (0,1); angles measured from straight up
        let ang = [2.0, 0.5, 4.0];
        let p: Vec<Point> = ang
            .iter()
            .map(|&a| c.center + Point::polar(0.5, core::f64::consts::FRAC_PI_2 + a))
            .collect();
        let t = Trajectory::from_fn(n(3), 0.9, 2, |k, t| p[k - 1] * (0.99 + 0.02 * t)).unwrap();
        let tr = tangent_events(&t, &TraceParams::default()).unwrap();
        assert_eq!(tr.events.len(), 1);
        assert_eq!(tr.events[0].order, [2, 1, 3]);
        assert!((tr.events[0].time - 0.5).abs() < 1e-9);
        assert_eq!(tr.word.letters(), &[DoublePrimeGenerator::raw(2, 1, 3)]);
    }

    #[test]
    fn outside_disc_is_rejected() {
        let t = Trajectory::constant(n(3), 1.0);
        assert!(matches!(
            tangent_events(&t, &TraceParams::default()),
            Err(DomainError::OutsideDisc { .. })
        ));
    }

    #[test]
    fn b23_has_two_collinear_events() {
        let t = standard_generator_trajectory(n(3), 2, 3, 1.0).unwrap();
        let tr = collinear_events(&t, &TraceParams::default());
        assert!(tr.report.is_good(), "{}", tr.report);
        assert_eq!(tr.events.len(), 2);
        assert_ne!(tr.events[0].order[1], tr.events[1].order[1]);
    }

    #[test]
    fn standard_trajectories_are_generic() {
        let p = TraceParams::default();
        for k in 3..=5 {
            for i in 1..=k {
                for j in i + 1..=k {
                    let t = standard_generator_trajectory(n(k), i, j, 1.0).unwrap();
                    let tr = collinear_events(&t, &p);
                    assert!(tr.report.is_good(), "n={k} b{i}{j}: {}", tr.report);
                    let t = standard_generator_trajectory(n(k), i, j, DISC_SCALE).unwrap();
                    let tr = tangent_events(&t, &p).unwrap();
                    assert!(tr.report.is_good(), "n={k} b{i}{j} disc: {}", tr.report);
                }
            }
        }
    }

    #[test]
    fn braid_trajectory_of_empty_word_is_constant() {
        let t = braid_trajectory(&BraidWord::new(vec![]), n(3), 1.0).unwrap();
        assert_eq!(t.sample_count(), 2);
    }
}
