//! Intervals with explicit endpoint closedness, and normalized unions of them.
//!
//! Estimated parameter regions are unions of intervals whose boundary
//! membership matters (satisficing cells are half-open), so endpoints carry
//! their own closed/open flags. Serialized form is the 4-tuple
//! `[lo, hi, lo_closed, hi_closed]`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A real interval with independently closed or open endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn new(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Self {
        Self { lo, hi, lo_closed, hi_closed }
    }

    /// `[lo, hi]`
    pub fn closed(lo: f64, hi: f64) -> Self {
        Self::new(lo, hi, true, true)
    }

    /// `[lo, hi)`
    pub fn half_open(lo: f64, hi: f64) -> Self {
        Self::new(lo, hi, true, false)
    }

    /// The degenerate interval `[x, x]`.
    pub fn point(x: f64) -> Self {
        Self::closed(x, x)
    }

    /// True when no real number satisfies the endpoint constraints.
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_closed { x >= self.lo } else { x > self.lo };
        let below = if self.hi_closed { x <= self.hi } else { x < self.hi };
        above && below
    }

    pub fn width(&self) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            self.hi - self.lo
        }
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// A point guaranteed to lie inside the interval: the midpoint, or `lo`
    /// when rounding pushes the midpoint onto an excluded endpoint (possible
    /// for cells only a few ulps wide).
    pub(crate) fn sample_point(&self) -> f64 {
        debug_assert!(!self.is_empty());
        let mid = self.midpoint();
        if self.contains(mid) {
            mid
        } else {
            self.lo
        }
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        (self.lo, self.hi, self.lo_closed, self.hi_closed).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let (lo, hi, lo_closed, hi_closed) = <(f64, f64, bool, bool)>::deserialize(deserializer)?;
        if lo.is_nan() || hi.is_nan() {
            return Err(D::Error::custom("interval endpoints must not be NaN"));
        }
        Ok(Self { lo, hi, lo_closed, hi_closed })
    }
}

/// A normalized union of intervals: sorted, pairwise disjoint, never touching.
///
/// Construction merges overlapping or adjoining inputs, so two `IntervalSet`s
/// describing the same point set compare equal.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a normalized set from arbitrary intervals (empties are dropped).
    pub fn from_intervals<I: IntoIterator<Item = Interval>>(intervals: I) -> Self {
        let mut v: Vec<Interval> = intervals.into_iter().filter(|i| !i.is_empty()).collect();
        v.sort_by(|a, b| {
            a.lo.total_cmp(&b.lo)
                .then_with(|| b.lo_closed.cmp(&a.lo_closed))
                .then_with(|| a.hi.total_cmp(&b.hi))
        });
        let mut merged: Vec<Interval> = Vec::with_capacity(v.len());
        for cur in v {
            if let Some(last) = merged.last_mut() {
                let connects = cur.lo < last.hi
                    || (cur.lo == last.hi && (last.hi_closed || cur.lo_closed));
                if connects {
                    if cur.hi > last.hi {
                        last.hi = cur.hi;
                        last.hi_closed = cur.hi_closed;
                    } else if cur.hi == last.hi {
                        last.hi_closed = last.hi_closed || cur.hi_closed;
                    }
                    continue;
                }
            }
            merged.push(cur);
        }
        Self { intervals: merged }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|i| i.contains(x))
    }

    /// Total length of the union.
    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(Interval::width).sum()
    }

    /// Center of the widest member interval (leftmost on ties); `None` when empty.
    pub fn representative(&self) -> Option<f64> {
        let mut best: Option<&Interval> = None;
        for iv in &self.intervals {
            match best {
                Some(b) if iv.width() <= b.width() => {}
                _ => best = Some(iv),
            }
        }
        best.map(Interval::midpoint)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contains_respects_closedness() {
        let iv = Interval::half_open(-0.9, 0.2);
        assert!(iv.contains(-0.9));
        assert!(iv.contains(0.0));
        assert!(!iv.contains(0.2));
        assert!(!iv.contains(-1.0));

        let open_lo = Interval::new(0.0, 1.0, false, true);
        assert!(!open_lo.contains(0.0));
        assert!(open_lo.contains(1.0));
    }

    #[test]
    fn emptiness() {
        assert!(Interval::closed(0.5, 0.2).is_empty());
        assert!(Interval::half_open(0.3, 0.3).is_empty());
        assert!(!Interval::point(0.3).is_empty());
    }

    #[test]
    fn merges_overlapping_and_adjacent() {
        let set = IntervalSet::from_intervals([
            Interval::half_open(-0.9, 0.2),
            Interval::half_open(0.2, 0.5),
            Interval::closed(0.7, 1.0),
        ]);
        assert_eq!(
            set.intervals(),
            &[Interval::half_open(-0.9, 0.5), Interval::closed(0.7, 1.0)]
        );
    }

    #[test]
    fn does_not_merge_across_open_gap() {
        // [0, 0.2) and (0.2, 1] leave the point 0.2 uncovered.
        let set = IntervalSet::from_intervals([
            Interval::half_open(0.0, 0.2),
            Interval::new(0.2, 1.0, false, true),
        ]);
        assert_eq!(set.intervals().len(), 2);
        assert!(!set.contains(0.2));

        // Adding the point closes the gap.
        let set = IntervalSet::from_intervals([
            Interval::half_open(0.0, 0.2),
            Interval::point(0.2),
            Interval::new(0.2, 1.0, false, true),
        ]);
        assert_eq!(set.intervals(), &[Interval::closed(0.0, 1.0)]);
    }

    #[test]
    fn normalization_is_order_independent() {
        let a = IntervalSet::from_intervals([
            Interval::closed(0.4, 1.0),
            Interval::half_open(-1.0, -0.5),
        ]);
        let b = IntervalSet::from_intervals([
            Interval::half_open(-1.0, -0.5),
            Interval::closed(0.4, 0.6),
            Interval::closed(0.5, 1.0),
        ]);
        assert_eq!(a, b);
    }

    #[test]
    fn representative_picks_widest_then_leftmost() {
        let set = IntervalSet::from_intervals([
            Interval::closed(-0.9, 1.0),
        ]);
        assert!((set.representative().unwrap() - 0.05).abs() < 1e-12);

        let ties = IntervalSet::from_intervals([
            Interval::half_open(-1.0, -0.5),
            Interval::half_open(0.0, 0.5),
        ]);
        assert!((ties.representative().unwrap() - (-0.75)).abs() < 1e-12);

        assert_eq!(IntervalSet::empty().representative(), None);
    }

    #[test]
    fn serializes_as_tuples() {
        let set = IntervalSet::from_intervals([Interval::half_open(-0.9, 0.2)]);
        let json = serde_json::to_string(&set).unwrap();
        assert_eq!(json, "[[-0.9,0.2,true,false]]");
        let back: IntervalSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, set);
    }
}
