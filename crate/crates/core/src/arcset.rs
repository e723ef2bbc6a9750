//! Finite unions of arcs on the unit circle.
//!
//! An [`ArcSet`] stores the sets of ellipticity directions of a field. Angles
//! are understood modulo 2π; the presentation range is `[-π, π]`, and an arc
//! crossing the ±π seam is one arc internally that only gets split in two
//! when it is serialized.
//!
//! Internally a set is a cyclic list of breakpoints. Each breakpoint records
//! whether the point itself belongs to the set and whether the open segment
//! that follows it (counterclockwise, up to the next breakpoint) belongs to
//! the set. This makes union, intersection and complement exact with respect
//! to the openness of endpoints. Endpoint *positions* are compared with
//! [`ANGLE_TOL`].

use std::f64::consts::{PI, TAU};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Result};

/// Two endpoints closer than this (in radians) are the same endpoint.
pub const ANGLE_TOL: f64 = 1e-9;

/// An angle in the canonical range `[-π, π]`.
///
/// Values congruent to π canonicalize to `+π`, never `-π`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Angle(f64);

impl Angle {
    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn degrees(self) -> f64 {
        self.0.to_degrees()
    }
}

impl From<Angle> for f64 {
    fn from(a: Angle) -> f64 {
        a.0
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Reduces `v` modulo 2π into `[-π, π]`.
pub fn canonicalize(v: f64) -> Result<Angle> {
    if !v.is_finite() {
        return Err(domain(format!("angle {v} is not finite")));
    }
    let r = v.rem_euclid(TAU);
    // rem_euclid may round up to exactly TAU for tiny negative inputs.
    let r = if r >= TAU { 0.0 } else { r };
    Ok(Angle(if r > PI { r - TAU } else { r }))
}

/// Position of an angle on the half-open fundamental domain `[-π, π)`.
fn wrap(v: f64) -> f64 {
    let r = (v + PI).rem_euclid(TAU);
    // positions within rounding noise of +π belong to the seam at -π
    let r = if r >= TAU - 1e-12 { 0.0 } else { r };
    r - PI
}

/// Counterclockwise distance from `from` to `to`, in `[0, 2π)`.
fn ccw_distance(from: f64, to: f64) -> f64 {
    let d = (to - from).rem_euclid(TAU);
    if d >= TAU {
        0.0
    } else {
        d
    }
}

/// Shortest distance between two positions on the circle.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = ccw_distance(a, b);
    d.min(TAU - d)
}

/// A single arc, traversed counterclockwise from `start` over `width`.
///
/// Ordinary arcs have `0 < width < 2π`. The set algebra is closed, so three
/// degenerate shapes can also come out of [`ArcSet::arcs`]: an isolated point
/// (`width == 0`, both ends closed), the circle minus one point
/// (`width == 2π`, both ends open) and the full circle (`width == 2π`, both
/// ends closed).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub start: f64,
    pub width: f64,
    pub start_closed: bool,
    pub end_closed: bool,
}

impl Arc {
    pub fn end(&self) -> f64 {
        wrap(self.start + self.width)
    }
}

/// One endpoint in the internal representation.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Mark {
    at: f64,
    on: bool,
    after: bool,
}

/// A finite union of arcs of the unit circle.
#[derive(Debug, Clone)]
pub struct ArcSet {
    marks: Vec<Mark>,
    /// Membership of every angle when `marks` is empty.
    full: bool,
}

impl Default for ArcSet {
    fn default() -> Self {
        Self::empty()
    }
}

impl PartialEq for ArcSet {
    fn eq(&self, other: &Self) -> bool {
        self.approx_eq(other, ANGLE_TOL)
    }
}

impl ArcSet {
    pub fn empty() -> Self {
        ArcSet {
            marks: Vec::new(),
            full: false,
        }
    }

    /// The whole circle. Never a valid Θ-set, but unions can produce it.
    pub fn full() -> Self {
        ArcSet {
            marks: Vec::new(),
            full: true,
        }
    }

    /// The set `{lo < θ < hi}` (endpoints per flags), read on the real line
    /// and then wrapped onto the circle. `hi - lo >= 2π` covers the circle.
    pub fn interval(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(domain(format!("interval bounds [{lo}, {hi}] not finite")));
        }
        if hi < lo - ANGLE_TOL {
            return Err(domain(format!("interval bounds reversed: {lo} > {hi}")));
        }
        let width = hi - lo;
        if width <= ANGLE_TOL {
            return Ok(if lo_closed && hi_closed {
                Self::point(lo)
            } else {
                Self::empty()
            });
        }
        if width > TAU + ANGLE_TOL {
            return Ok(Self::full());
        }
        if width >= TAU - ANGLE_TOL {
            // lo and hi are the same point of the circle
            return Ok(if lo_closed || hi_closed {
                Self::full()
            } else {
                Self::punctured(lo)
            });
        }
        let mut marks = vec![
            Mark {
                at: wrap(lo),
                on: lo_closed,
                after: true,
            },
            Mark {
                at: wrap(hi),
                on: hi_closed,
                after: false,
            },
        ];
        marks.sort_by(|a, b| a.at.total_cmp(&b.at));
        Ok(ArcSet { marks, full: false })
    }

    /// Open interval `]lo, hi[` on the real line, wrapped onto the circle.
    pub fn open(lo: f64, hi: f64) -> Result<Self> {
        Self::interval(lo, hi, false, false)
    }

    pub fn point(at: f64) -> Self {
        ArcSet {
            marks: vec![Mark {
                at: wrap(at),
                on: true,
                after: false,
            }],
            full: false,
        }
    }

    /// The circle without the single point `at`.
    pub fn punctured(at: f64) -> Self {
        ArcSet {
            marks: vec![Mark {
                at: wrap(at),
                on: false,
                after: true,
            }],
            full: false,
        }
    }

    pub fn from_arcs<I: IntoIterator<Item = Arc>>(arcs: I) -> Result<Self> {
        let mut acc = Self::empty();
        for a in arcs {
            let piece = if a.width >= TAU - ANGLE_TOL && a.start_closed && a.end_closed {
                Self::full()
            } else {
                Self::interval(a.start, a.start + a.width, a.start_closed, a.end_closed)?
            };
            acc = acc.union(&piece);
        }
        Ok(acc)
    }

    pub fn is_empty(&self) -> bool {
        self.marks.is_empty() && !self.full
    }

    pub fn is_full(&self) -> bool {
        self.marks.is_empty() && self.full
    }

    fn before(&self, i: usize) -> bool {
        let k = self.marks.len();
        self.marks[(i + k - 1) % k].after
    }

    /// Index of the mark within tolerance of `x`, if any.
    fn mark_near(&self, x: f64) -> Option<usize> {
        if self.marks.is_empty() {
            return None;
        }
        let idx = self.marks.partition_point(|m| m.at < x);
        let k = self.marks.len();
        [idx % k, (idx + k - 1) % k]
            .into_iter()
            .find(|&i| circular_distance(self.marks[i].at, x) <= ANGLE_TOL)
    }

    /// Membership of the open segment containing `x`, assuming no mark at `x`.
    fn segment_at(&self, x: f64) -> bool {
        if self.marks.is_empty() {
            return self.full;
        }
        let idx = self.marks.partition_point(|m| m.at <= x);
        let k = self.marks.len();
        self.marks[(idx + k - 1) % k].after
    }

    pub fn contains(&self, theta: f64) -> bool {
        if !theta.is_finite() {
            return false;
        }
        let x = wrap(theta);
        match self.mark_near(x) {
            Some(i) => self.marks[i].on,
            None => self.segment_at(x),
        }
    }

    fn combine(&self, other: &ArcSet, op: impl Fn(bool, bool) -> bool) -> ArcSet {
        #[derive(Clone, Copy)]
        struct Tagged {
            at: f64,
            src: u8,
            idx: usize,
        }
        let mut all: Vec<Tagged> = self
            .marks
            .iter()
            .enumerate()
            .map(|(idx, m)| Tagged {
                at: m.at,
                src: 0,
                idx,
            })
            .chain(other.marks.iter().enumerate().map(|(idx, m)| Tagged {
                at: m.at,
                src: 1,
                idx,
            }))
            .collect();
        if all.is_empty() {
            return ArcSet {
                marks: Vec::new(),
                full: op(self.full, other.full),
            };
        }
        all.sort_by(|a, b| a.at.total_cmp(&b.at));

        // Cluster positions that coincide within tolerance, including across the seam.
        let mut clusters: Vec<Vec<Tagged>> = Vec::new();
        for t in all {
            match clusters.last_mut() {
                Some(c) if t.at - c[0].at <= ANGLE_TOL => c.push(t),
                _ => clusters.push(vec![t]),
            }
        }
        if clusters.len() > 1 {
            let first_at = clusters[0][0].at;
            let last = clusters.last().unwrap();
            if first_at + TAU - last.last().unwrap().at <= ANGLE_TOL {
                let mut tail = clusters.pop().unwrap();
                tail.append(&mut clusters[0]);
                clusters[0] = tail;
            }
        }

        let sets = [self, other];
        let mut marks = Vec::with_capacity(clusters.len());
        for c in &clusters {
            // The representative position is the earliest element that lies on
            // the main branch of the domain.
            let at = c
                .iter()
                .map(|t| t.at)
                .min_by(|a, b| a.total_cmp(b))
                .unwrap();
            let at = if c.first().unwrap().at > c.last().unwrap().at {
                // wrapped cluster: tail elements near +π, head elements near -π
                c.last().unwrap().at
            } else {
                at
            };
            let mut on = [false; 2];
            let mut after = [false; 2];
            for s in 0..2 {
                let mine: Vec<&Tagged> = c.iter().filter(|t| t.src as usize == s).collect();
                if mine.is_empty() {
                    let v = sets[s].segment_at(at);
                    on[s] = v;
                    after[s] = v;
                } else {
                    on[s] = sets[s].marks[mine[0].idx].on;
                    after[s] = sets[s].marks[mine[mine.len() - 1].idx].after;
                }
            }
            marks.push(Mark {
                at,
                on: op(on[0], on[1]),
                after: op(after[0], after[1]),
            });
        }
        marks.sort_by(|a, b| a.at.total_cmp(&b.at));
        Self::normalized(marks)
    }

    /// Drops breakpoints that change nothing.
    fn normalized(mut marks: Vec<Mark>) -> ArcSet {
        loop {
            let k = marks.len();
            if k == 0 {
                return ArcSet::empty();
            }
            let redundant = (0..k).find(|&i| {
                let before = marks[(i + k - 1) % k].after;
                before == marks[i].on && marks[i].on == marks[i].after
            });
            match redundant {
                Some(i) => {
                    let value = marks[i].on;
                    marks.remove(i);
                    if marks.is_empty() {
                        return ArcSet { marks, full: value };
                    }
                }
                None => return ArcSet { marks, full: false },
            }
        }
    }

    pub fn union(&self, other: &ArcSet) -> ArcSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &ArcSet) -> ArcSet {
        self.combine(other, |a, b| a && b)
    }

    /// Complement on the circle; open endpoints become closed and vice versa.
    pub fn complement(&self) -> ArcSet {
        ArcSet {
            marks: self
                .marks
                .iter()
                .map(|m| Mark {
                    at: m.at,
                    on: !m.on,
                    after: !m.after,
                })
                .collect(),
            full: !self.full,
        }
    }

    /// `{θ : -θ ∈ self}`.
    pub fn negate(&self) -> ArcSet {
        if self.marks.is_empty() {
            return self.clone();
        }
        let mut marks: Vec<Mark> = (0..self.marks.len())
            .map(|i| Mark {
                at: wrap(-self.marks[i].at),
                on: self.marks[i].on,
                after: self.before(i),
            })
            .collect();
        marks.sort_by(|a, b| a.at.total_cmp(&b.at));
        ArcSet { marks, full: false }
    }

    /// `{θ : θ + beta ∈ self}`, i.e. every arc moves by `-beta`.
    pub fn shift(&self, beta: f64) -> ArcSet {
        if self.marks.is_empty() || !beta.is_finite() {
            return self.clone();
        }
        let mut marks: Vec<Mark> = self
            .marks
            .iter()
            .map(|m| Mark {
                at: wrap(m.at - beta),
                ..*m
            })
            .collect();
        marks.sort_by(|a, b| a.at.total_cmp(&b.at));
        ArcSet { marks, full: false }
    }

    /// Total angular measure, in `[0, 2π]`.
    pub fn measure(&self) -> f64 {
        self.arcs().iter().map(|a| a.width).sum()
    }

    /// The maximal arcs of the set, ordered by start position.
    pub fn arcs(&self) -> Vec<Arc> {
        let k = self.marks.len();
        if k == 0 {
            return if self.full {
                vec![Arc {
                    start: -PI,
                    width: TAU,
                    start_closed: true,
                    end_closed: true,
                }]
            } else {
                Vec::new()
            };
        }
        let mut out = Vec::new();
        for i in 0..k {
            let m = self.marks[i];
            let before = self.before(i);
            if m.after {
                let j = (i + 1) % k;
                let end = self.marks[j];
                let width = if j == i {
                    TAU
                } else {
                    ccw_distance(m.at, end.at)
                };
                out.push(Arc {
                    start: m.at,
                    width,
                    start_closed: m.on,
                    end_closed: end.on,
                });
            } else if m.on && !before {
                out.push(Arc {
                    start: m.at,
                    width: 0.0,
                    start_closed: true,
                    end_closed: true,
                });
            }
        }
        out
    }

    /// Intervals of `[-π, π]` presenting the set, split at the seam and sorted
    /// by start.
    pub fn presented(&self) -> Vec<PresentedInterval> {
        let mut out = Vec::new();
        for a in self.arcs() {
            let end = a.start + a.width;
            if end <= PI + ANGLE_TOL {
                out.push(PresentedInterval {
                    start: a.start,
                    end: end.min(PI),
                    start_closed: a.start_closed,
                    end_closed: a.end_closed,
                });
            } else {
                out.push(PresentedInterval {
                    start: a.start,
                    end: PI,
                    start_closed: a.start_closed,
                    end_closed: true,
                });
                out.push(PresentedInterval {
                    start: -PI,
                    end: end - TAU,
                    start_closed: true,
                    end_closed: a.end_closed,
                });
            }
        }
        out.sort_by(|a, b| a.start.total_cmp(&b.start));
        out
    }

    pub fn from_presented(intervals: &[PresentedInterval]) -> Result<Self> {
        let mut acc = Self::empty();
        for iv in intervals {
            if iv.start < -PI - ANGLE_TOL || iv.end > PI + ANGLE_TOL {
                return Err(domain(format!(
                    "interval [{}, {}] leaves the range [-π, π]",
                    iv.start, iv.end
                )));
            }
            acc = acc.union(&Self::interval(
                iv.start,
                iv.end,
                iv.start_closed,
                iv.end_closed,
            )?);
        }
        Ok(acc)
    }

    /// Equality of the normalized breakpoint lists up to `tol` in position.
    pub fn approx_eq(&self, other: &ArcSet, tol: f64) -> bool {
        if self.marks.len() != other.marks.len() {
            return false;
        }
        if self.marks.is_empty() {
            return self.full == other.full;
        }
        self.marks.iter().all(|m| {
            other
                .marks
                .iter()
                .any(|o| o.on == m.on && o.after == m.after && circular_distance(o.at, m.at) <= tol)
        })
    }

    /// Largest displacement between matching endpoints of two sets with the
    /// same arc structure, ignoring openness. `None` when the structures
    /// differ (different number of arcs, or one empty and one not).
    pub fn max_endpoint_deviation(&self, other: &ArcSet) -> Option<f64> {
        let (a, b) = (&self.marks, &other.marks);
        if a.len() != b.len() {
            return None;
        }
        if a.is_empty() {
            return (self.full == other.full).then_some(0.0);
        }
        let k = a.len();
        (0..k)
            .filter(|&r| (0..k).all(|i| a[i].after == b[(i + r) % k].after))
            .map(|r| {
                (0..k)
                    .map(|i| circular_distance(a[i].at, b[(i + r) % k].at))
                    .fold(0.0, f64::max)
            })
            .min_by(|x, y| x.total_cmp(y))
    }

    /// Breakpoint positions in `[-π, π)`, sorted.
    pub fn endpoints(&self) -> Vec<f64> {
        self.marks.iter().map(|m| m.at).collect()
    }
}

impl fmt::Display for ArcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.presented();
        if parts.is_empty() {
            return write!(f, "∅");
        }
        for (i, p) in parts.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// One interval of the `[-π, π]` presentation of an [`ArcSet`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PresentedInterval {
    pub start: f64,
    pub end: f64,
    pub start_closed: bool,
    pub end_closed: bool,
}

impl fmt::Display for PresentedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.start_closed { '[' } else { ']' };
        let r = if self.end_closed { ']' } else { '[' };
        write!(f, "{l}{:.6}, {:.6}{r}", self.start, self.end)
    }
}

impl Serialize for ArcSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.presented().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ArcSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<PresentedInterval>::deserialize(d)?;
        ArcSet::from_presented(&parts).map_err(serde::de::Error::custom)
    }
}
