//! Exact piecewise-linear functions on [0,2] with rational breakpoints.
//!
//! Upsilon computations reduce to upper envelopes of finitely many lines
//! (one per grading-0 monomial) and lower envelopes over cycle
//! representatives; both are computed here with exact rational
//! arithmetic. Breakpoint lists are normalized so that every interior
//! breakpoint is a genuine slope change, which makes equality of
//! functions equality of representations.

use num_traits::{Signed, Zero};

use crate::Rational;

/// A line `t -> intercept + slope * t`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line {
    pub slope: Rational,
    pub intercept: Rational,
}

impl Line {
    pub fn eval(&self, t: &Rational) -> Rational {
        &self.intercept + &self.slope * t
    }

    /// Crossing parameter of two lines of distinct slope.
    fn crossing(&self, other: &Line) -> Rational {
        (&self.intercept - &other.intercept) / (&other.slope - &self.slope)
    }
}

/// A continuous piecewise-linear function given by its breakpoints.
///
/// Invariants: breakpoint parameters strictly ascend, the first and last
/// breakpoints delimit the domain, and no interior breakpoint is
/// collinear with its neighbours.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlFunction {
    pub breakpoints: Vec<(Rational, Rational)>,
    /// True when the segments were certified exact (envelope
    /// enumeration), false for sampled reconstructions.
    pub verified: bool,
}

impl PlFunction {
    /// Builds a function from sample points, dropping duplicates and
    /// collinear interior points.
    ///
    /// # Panics
    /// Panics on unsorted input or on duplicate parameters with
    /// conflicting values.
    pub fn from_points(points: Vec<(Rational, Rational)>, verified: bool) -> Self {
        assert!(!points.is_empty(), "a PL function needs at least one point");
        let mut cleaned: Vec<(Rational, Rational)> = Vec::with_capacity(points.len());
        for (t, v) in points {
            if let Some((pt, pv)) = cleaned.last() {
                assert!(*pt <= t, "breakpoints must be sorted");
                if *pt == t {
                    assert!(*pv == v, "conflicting values at t = {t}");
                    continue;
                }
            }
            cleaned.push((t, v));
        }
        let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(cleaned.len());
        for point in cleaned {
            while out.len() >= 2 {
                let (t0, v0) = &out[out.len() - 2];
                let (t1, v1) = &out[out.len() - 1];
                // middle point collinear with its neighbours
                let lhs = (v1 - v0) * (&point.0 - t1);
                let rhs = (&point.1 - v1) * (t1 - t0);
                if lhs == rhs {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(point);
        }
        Self {
            breakpoints: out,
            verified,
        }
    }

    /// Constant-zero function on [0,2].
    pub fn zero() -> Self {
        Self::from_points(
            vec![
                (Rational::zero(), Rational::zero()),
                (Rational::from_integer(2.into()), Rational::zero()),
            ],
            true,
        )
    }

    pub fn domain(&self) -> (&Rational, &Rational) {
        (
            &self.breakpoints.first().expect("nonempty").0,
            &self.breakpoints.last().expect("nonempty").0,
        )
    }

    /// Evaluates by linear interpolation.
    ///
    /// # Panics
    /// Panics if `t` lies outside the domain.
    pub fn eval(&self, t: &Rational) -> Rational {
        let (lo, hi) = self.domain();
        assert!(t >= lo && t <= hi, "parameter {t} outside domain");
        let pos = self.breakpoints.partition_point(|(bt, _)| bt <= t);
        if pos > 0 && &self.breakpoints[pos - 1].0 == t {
            return self.breakpoints[pos - 1].1.clone();
        }
        let (t0, v0) = &self.breakpoints[pos - 1];
        let (t1, v1) = &self.breakpoints[pos];
        v0 + (v1 - v0) * (t - t0) / (t1 - t0)
    }

    /// Maps every value through `f` (breakpoints keep their parameters).
    pub fn map_values(&self, f: impl Fn(&Rational) -> Rational) -> Self {
        Self {
            breakpoints: self
                .breakpoints
                .iter()
                .map(|(t, v)| (t.clone(), f(v)))
                .collect(),
            verified: self.verified,
        }
    }

    /// Pointwise minimum of two functions on their common domain.
    pub fn min_with(&self, other: &Self) -> Self {
        let mut ts: Vec<Rational> = self
            .breakpoints
            .iter()
            .chain(&other.breakpoints)
            .map(|(t, _)| t.clone())
            .collect();
        ts.sort();
        ts.dedup();
        let mut points: Vec<(Rational, Rational)> = Vec::new();
        for (idx, t) in ts.iter().enumerate() {
            let a = self.eval(t);
            let b = other.eval(t);
            if idx + 1 < ts.len() {
                // insert the crossing inside this segment when the order flips
                let tn = &ts[idx + 1];
                let an = self.eval(tn);
                let bn = other.eval(tn);
                let d0 = &a - &b;
                let d1 = &an - &bn;
                points.push((t.clone(), a.clone().min(b.clone())));
                if d0.is_positive() && d1.is_negative() || d0.is_negative() && d1.is_positive() {
                    let cross = t + (tn - t) * &d0 / (&d0 - &d1);
                    let value = self.eval(&cross);
                    points.push((cross, value));
                }
            } else {
                points.push((t.clone(), a.min(b)));
            }
        }
        Self::from_points(points, self.verified && other.verified)
    }

    /// Restriction to `[a, b]`.
    pub fn restrict(&self, a: &Rational, b: &Rational) -> Self {
        assert!(a < b, "empty restriction");
        let mut points = vec![(a.clone(), self.eval(a))];
        for (t, v) in &self.breakpoints {
            if t > a && t < b {
                points.push((t.clone(), v.clone()));
            }
        }
        points.push((b.clone(), self.eval(b)));
        Self::from_points(points, self.verified)
    }

    /// Slope of the segment immediately left of `t`.
    pub fn slope_left_at(&self, t: &Rational) -> Rational {
        let (lo, hi) = self.domain();
        assert!(t > lo && t <= hi, "no segment left of {t}");
        let pos = self.breakpoints.partition_point(|(bt, _)| bt < t);
        let (t0, v0) = &self.breakpoints[pos - 1];
        let (t1, v1) = &self.breakpoints[pos];
        (v1 - v0) / (t1 - t0)
    }

    /// Slope of the segment immediately right of `t`.
    pub fn slope_right_at(&self, t: &Rational) -> Rational {
        let (lo, hi) = self.domain();
        assert!(t >= lo && t < hi, "no segment right of {t}");
        let pos = self.breakpoints.partition_point(|(bt, _)| bt <= t);
        let (t0, v0) = &self.breakpoints[pos - 1];
        let (t1, v1) = &self.breakpoints[pos];
        (v1 - v0) / (t1 - t0)
    }

    /// Right slope minus left slope at an interior parameter; zero when
    /// `t` lies inside a segment.
    pub fn slope_jump_at(&self, t: &Rational) -> Rational {
        self.slope_right_at(t) - self.slope_left_at(t)
    }

    /// First interior breakpoint (every interior breakpoint is a slope
    /// change after normalization); `None` for a single segment.
    pub fn first_interior_breakpoint(&self) -> Option<Rational> {
        if self.breakpoints.len() <= 2 {
            return None;
        }
        Some(self.breakpoints[1].0.clone())
    }
}

/// Upper envelope (pointwise maximum) of a nonempty set of lines over
/// `[lo, hi]`. Lines are deduplicated by slope keeping the largest
/// intercept; the hull is built in slope order.
pub fn upper_envelope(lines: &[Line], lo: &Rational, hi: &Rational) -> PlFunction {
    assert!(!lines.is_empty(), "envelope of an empty line set");
    let mut sorted = lines.to_vec();
    sorted.sort();
    sorted.dedup();
    // for equal slopes only the largest intercept can appear in the max
    let mut candidates: Vec<Line> = Vec::with_capacity(sorted.len());
    for line in sorted {
        match candidates.last() {
            Some(last) if last.slope == line.slope => {
                *candidates.last_mut().unwrap() = line;
            }
            _ => candidates.push(line),
        }
    }
    let mut hull: Vec<Line> = Vec::with_capacity(candidates.len());
    for line in candidates {
        while hull.len() >= 2 {
            let a = &hull[hull.len() - 2];
            let b = &hull[hull.len() - 1];
            if a.crossing(&line) <= a.crossing(b) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(line);
    }
    let crossings: Vec<Rational> = hull.windows(2).map(|w| w[0].crossing(&w[1])).collect();
    let mut points = Vec::new();
    let mut active = crossings.partition_point(|x| x <= lo);
    points.push((lo.clone(), hull[active].eval(lo)));
    while active < crossings.len() && &crossings[active] < hi {
        let x = crossings[active].clone();
        if &x > lo {
            let v = hull[active].eval(&x);
            points.push((x, v));
        }
        active += 1;
    }
    points.push((hi.clone(), hull[active].eval(hi)));
    PlFunction::from_points(points, true)
}

#[cfg(test)]
pub(crate) fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(slope: (i64, i64), intercept: (i64, i64)) -> Line {
        Line {
            slope: rat(slope.0, slope.1),
            intercept: rat(intercept.0, intercept.1),
        }
    }

    #[test]
    fn envelope_of_single_line() {
        let f = upper_envelope(&[line((1, 2), (0, 1))], &rat(0, 1), &rat(2, 1));
        assert_eq!(f.breakpoints.len(), 2);
        assert_eq!(f.eval(&rat(1, 1)), rat(1, 2));
    }

    #[test]
    fn envelope_of_crossing_lines() {
        // t and 2 - t cross at t = 1
        let f = upper_envelope(
            &[line((1, 1), (0, 1)), line((-1, 1), (2, 1))],
            &rat(0, 1),
            &rat(2, 1),
        );
        assert_eq!(f.breakpoints.len(), 3);
        assert_eq!(f.breakpoints[1], (rat(1, 1), rat(1, 1)));
        assert_eq!(f.eval(&rat(0, 1)), rat(2, 1));
        assert_eq!(f.eval(&rat(3, 2)), rat(3, 2));
    }

    #[test]
    fn envelope_drops_dominated_line() {
        // middle line always below the other two on [0,2]
        let f = upper_envelope(
            &[
                line((1, 1), (0, 1)),
                line((0, 1), (-5, 1)),
                line((-1, 1), (2, 1)),
            ],
            &rat(0, 1),
            &rat(2, 1),
        );
        assert_eq!(f.breakpoints.len(), 3);
    }

    #[test]
    fn envelope_parallel_lines_keep_highest() {
        let f = upper_envelope(
            &[line((1, 1), (0, 1)), line((1, 1), (1, 1))],
            &rat(0, 1),
            &rat(2, 1),
        );
        assert_eq!(f.breakpoints.len(), 2);
        assert_eq!(f.eval(&rat(0, 1)), rat(1, 1));
    }

    #[test]
    fn min_of_crossing_functions() {
        let f = upper_envelope(&[line((1, 1), (0, 1))], &rat(0, 1), &rat(2, 1));
        let g = upper_envelope(&[line((-1, 1), (2, 1))], &rat(0, 1), &rat(2, 1));
        let m = f.min_with(&g);
        assert_eq!(
            m.breakpoints,
            vec![
                (rat(0, 1), rat(0, 1)),
                (rat(1, 1), rat(1, 1)),
                (rat(2, 1), rat(0, 1)),
            ]
        );
    }

    #[test]
    fn min_when_one_dominates() {
        let f = upper_envelope(&[line((0, 1), (0, 1))], &rat(0, 1), &rat(2, 1));
        let g = upper_envelope(&[line((0, 1), (1, 1))], &rat(0, 1), &rat(2, 1));
        assert_eq!(f.min_with(&g), f);
    }

    #[test]
    fn from_points_collapses_collinear() {
        let f = PlFunction::from_points(
            vec![
                (rat(0, 1), rat(0, 1)),
                (rat(1, 1), rat(1, 1)),
                (rat(2, 1), rat(2, 1)),
            ],
            true,
        );
        assert_eq!(f.breakpoints.len(), 2);
    }

    #[test]
    fn slopes_and_jumps() {
        let v = PlFunction::from_points(
            vec![
                (rat(0, 1), rat(0, 1)),
                (rat(1, 1), rat(-1, 1)),
                (rat(2, 1), rat(0, 1)),
            ],
            true,
        );
        assert_eq!(v.slope_left_at(&rat(1, 1)), rat(-1, 1));
        assert_eq!(v.slope_right_at(&rat(1, 1)), rat(1, 1));
        assert_eq!(v.slope_jump_at(&rat(1, 1)), rat(2, 1));
        assert_eq!(v.slope_jump_at(&rat(1, 2)), rat(0, 1));
        assert_eq!(v.first_interior_breakpoint(), Some(rat(1, 1)));
        assert_eq!(PlFunction::zero().first_interior_breakpoint(), None);
    }

    #[test]
    fn restriction() {
        let v = PlFunction::from_points(
            vec![
                (rat(0, 1), rat(0, 1)),
                (rat(1, 1), rat(-1, 1)),
                (rat(2, 1), rat(0, 1)),
            ],
            true,
        );
        let r = v.restrict(&rat(1, 2), &rat(3, 2));
        assert_eq!(
            r.breakpoints,
            vec![
                (rat(1, 2), rat(-1, 2)),
                (rat(1, 1), rat(-1, 1)),
                (rat(3, 2), rat(-1, 2)),
            ]
        );
    }
}
