//! Ground truth for every formula module: exhaustive path enumeration and a
//! height-layered dynamic-programming counter. Neither uses any series or
//! closed-form machinery.

use std::fmt;

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::series::{ExactInt, K};
use crate::shape::PathClassQuery;

/// Enumeration refuses classes larger than this unless told otherwise.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    U,
    D,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub k: K,
    pub start_height: usize,
    pub steps: Vec<Step>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathStats {
    pub min_height: usize,
    pub max_height: usize,
    pub returns: usize,
}

impl Path {
    /// Running heights including the start and end points, or `None` if the
    /// path dips below zero.
    pub fn heights(&self) -> Option<Vec<usize>> {
        let drop = self.k.drop();
        let mut h = self.start_height;
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(h);
        for s in &self.steps {
            h = match s {
                Step::U => h + 1,
                Step::D => h.checked_sub(drop)?,
            };
            out.push(h);
        }
        Some(out)
    }

    pub fn end_height(&self) -> Option<usize> {
        self.heights().map(|h| *h.last().unwrap())
    }

    pub fn down_steps(&self) -> usize {
        self.steps.iter().filter(|s| **s == Step::D).count()
    }

    pub fn is_valid(&self) -> bool {
        self.heights().is_some()
    }

    /// Minimum and maximum height over every point, and the number of down
    /// steps that land on zero. Panics on an invalid path.
    pub fn stats(&self) -> PathStats {
        let heights = self.heights().expect("path dips below zero");
        let returns = self
            .steps
            .iter()
            .zip(&heights[1..])
            .filter(|(s, h)| **s == Step::D && **h == 0)
            .count();
        PathStats {
            min_height: *heights.iter().min().unwrap(),
            max_height: *heights.iter().max().unwrap(),
            returns,
        }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::U => "U",
                Step::D => "D",
            })?;
        }
        Ok(())
    }
}

pub fn path_stats(p: &Path) -> PathStats {
    p.stats()
}

/// Statistic constraints on an enumeration or count. Unset fields do not
/// constrain; set fields intersect.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct PathFilter {
    pub returns: Option<usize>,
    pub exact_min_height: Option<usize>,
    pub ceiling: Option<usize>,
    pub exact_max_height: Option<usize>,
}

impl PathFilter {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn returns(rho: usize) -> Self {
        PathFilter {
            returns: Some(rho),
            ..Self::default()
        }
    }

    pub fn min_height(m: usize) -> Self {
        PathFilter {
            exact_min_height: Some(m),
            ..Self::default()
        }
    }

    pub fn ceiling(c: usize) -> Self {
        PathFilter {
            ceiling: Some(c),
            ..Self::default()
        }
    }

    pub fn max_height(m: usize) -> Self {
        PathFilter {
            exact_max_height: Some(m),
            ..Self::default()
        }
    }

    pub fn accepts(&self, p: &Path) -> bool {
        let st = p.stats();
        self.returns.is_none_or(|r| st.returns == r)
            && self.exact_min_height.is_none_or(|m| st.min_height == m)
            && self.ceiling.is_none_or(|c| st.max_height <= c)
            && self.exact_max_height.is_none_or(|m| st.max_height == m)
    }
}

/// Lazy lexicographic (U before D) stream over a path class.
pub struct Paths {
    k: K,
    start: usize,
    drop: usize,
    ups_total: usize,
    downs_total: usize,
    filter: PathFilter,
    steps: Vec<Step>,
    // heights[i] is the height before steps[i]; one longer than steps.
    heights: Vec<usize>,
    ups_used: usize,
    downs_used: usize,
    state: StreamState,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum StreamState {
    Fresh,
    Running,
    Done,
}

impl Paths {
    fn empty(k: K, filter: PathFilter) -> Self {
        Paths {
            k,
            start: 0,
            drop: k.drop(),
            ups_total: 0,
            downs_total: 0,
            filter,
            steps: Vec::new(),
            heights: vec![0],
            ups_used: 0,
            downs_used: 0,
            state: StreamState::Done,
        }
    }

    fn push(&mut self, s: Step) {
        let h = *self.heights.last().unwrap();
        let next = match s {
            Step::U => {
                self.ups_used += 1;
                h + 1
            }
            Step::D => {
                self.downs_used += 1;
                h - self.drop
            }
        };
        self.steps.push(s);
        self.heights.push(next);
    }

    fn pop(&mut self) -> Option<Step> {
        let s = self.steps.pop()?;
        self.heights.pop();
        match s {
            Step::U => self.ups_used -= 1,
            Step::D => self.downs_used -= 1,
        }
        Some(s)
    }

    /// Smallest completion: remaining ups, then remaining downs. It never
    /// dips below the end height, so it is always valid.
    fn fill(&mut self) {
        while self.ups_used < self.ups_total {
            self.push(Step::U);
        }
        while self.downs_used < self.downs_total {
            self.push(Step::D);
        }
    }

    /// Moves to the lexicographically next valid path.
    fn advance(&mut self) -> bool {
        while let Some(s) = self.pop() {
            if s == Step::U
                && self.downs_used < self.downs_total
                && *self.heights.last().unwrap() >= self.drop
            {
                self.push(Step::D);
                self.fill();
                return true;
            }
        }
        false
    }

    fn current(&self) -> Path {
        Path {
            k: self.k,
            start_height: self.start,
            steps: self.steps.clone(),
        }
    }
}

impl Iterator for Paths {
    type Item = Path;

    fn next(&mut self) -> Option<Path> {
        loop {
            match self.state {
                StreamState::Done => return None,
                StreamState::Fresh => {
                    self.state = StreamState::Running;
                    self.fill();
                }
                StreamState::Running => {
                    if !self.advance() {
                        self.state = StreamState::Done;
                        return None;
                    }
                }
            }
            let p = self.current();
            if self.filter.accepts(&p) {
                return Some(p);
            }
        }
    }
}

/// Every path of the class satisfying `f`, with the default size limit.
pub fn enumerate(q: &PathClassQuery, f: &PathFilter) -> Result<Paths> {
    enumerate_with_limit(q, f, DEFAULT_ENUMERATION_LIMIT)
}

/// Like [`enumerate`], refusing with [`Error::ResourceLimit`] when the
/// unfiltered class has more than `limit` paths.
pub fn enumerate_with_limit(q: &PathClassQuery, f: &PathFilter, limit: u64) -> Result<Paths> {
    if q.is_empty_class() {
        return Ok(Paths::empty(q.k, *f));
    }
    let total = oracle_count(q, &PathFilter::none());
    if total.to_u64().is_none_or(|t| t > limit) {
        return Err(Error::ResourceLimit {
            count: total.to_string(),
            limit,
        });
    }
    let mut paths = Paths::empty(q.k, *f);
    paths.start = q.shape.alpha;
    paths.heights = vec![q.shape.alpha];
    paths.ups_total = q.up_steps() as usize;
    paths.downs_total = q.n;
    paths.state = StreamState::Fresh;
    Ok(paths)
}

/// Paths from `alpha` to `beta` inside the band `[floor, ceil]`, optionally
/// with exactly `returns` down steps landing on zero.
fn band_count(q: &PathClassQuery, floor: usize, ceil: usize, returns: Option<usize>) -> ExactInt {
    let (alpha, beta) = (q.shape.alpha, q.shape.beta);
    if q.is_empty_class()
        || floor > ceil
        || alpha < floor
        || alpha > ceil
        || beta < floor
        || beta > ceil
    {
        return ExactInt::zero();
    }
    let drop = q.k.drop();
    let len = q.length() as usize;
    let layers = returns.map_or(1, |r| r + 1);
    let width = ceil + 1;
    // dp[h * layers + r]
    let mut dp = vec![ExactInt::zero(); width * layers];
    dp[alpha * layers] = ExactInt::one();
    for _ in 0..len {
        let mut next = vec![ExactInt::zero(); width * layers];
        for h in floor..=ceil {
            for r in 0..layers {
                let v = &dp[h * layers + r];
                if v.is_zero() {
                    continue;
                }
                if h < ceil {
                    next[(h + 1) * layers + r] += v;
                }
                if h >= floor + drop {
                    let to = h - drop;
                    let r2 = if returns.is_some() && to == 0 {
                        r + 1
                    } else {
                        r
                    };
                    if r2 < layers {
                        next[to * layers + r2] += v;
                    }
                }
            }
        }
        dp = next;
    }
    let r = returns.unwrap_or(0);
    dp[beta * layers + r].clone()
}

/// Exact count of the paths [`enumerate`] would yield, by dynamic
/// programming over (position, height). Exact-statistic filters are
/// reduced to band counts by inclusion-exclusion.
pub fn oracle_count(q: &PathClassQuery, f: &PathFilter) -> ExactInt {
    if q.is_empty_class() {
        return ExactInt::zero();
    }
    // Highest reachable point: every up step taken first.
    let cap = q.k.drop() * q.n + q.shape.beta;
    let ceil = f.ceiling.map_or(cap, |c| c.min(cap));

    let floors: Vec<(usize, bool)> = match f.exact_min_height {
        None => vec![(0, true)],
        Some(m) => vec![(m, true), (m + 1, false)],
    };
    let ceils: Vec<(i64, bool)> = match f.exact_max_height {
        None => vec![(ceil as i64, true)],
        Some(m) if f.ceiling.is_some_and(|c| m > c) => return ExactInt::zero(),
        Some(m) => vec![(m as i64, true), (m as i64 - 1, false)],
    };

    let mut total = ExactInt::zero();
    for &(lo, lo_pos) in &floors {
        for &(hi, hi_pos) in &ceils {
            if hi < 0 {
                continue;
            }
            let v = band_count(q, lo, hi as usize, f.returns);
            if lo_pos == hi_pos {
                total += v;
            } else {
                total -= v;
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::Shape;

    fn k(v: u32) -> K {
        K::new(v).unwrap()
    }

    fn q(kv: u32, n: usize, a: usize, b: usize) -> PathClassQuery {
        PathClassQuery::new(k(kv), n, Shape::new(a, b))
    }

    fn words(q: &PathClassQuery, f: &PathFilter) -> Vec<String> {
        enumerate(q, f).unwrap().map(|p| p.to_string()).collect()
    }

    fn path(kv: u32, start: usize, w: &str) -> Path {
        Path {
            k: k(kv),
            start_height: start,
            steps: w
                .chars()
                .map(|c| if c == 'U' { Step::U } else { Step::D })
                .collect(),
        }
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(words(&q(2, 1, 1, 1), &PathFilter::none()), ["UD", "DU"]);
        assert_eq!(words(&q(3, 1, 0, 0), &PathFilter::none()), ["UUD"]);
        assert!(words(&q(2, 0, 2, 0), &PathFilter::none()).is_empty());
        assert_eq!(words(&q(2, 0, 1, 1), &PathFilter::none()), [""]);
        assert_eq!(
            words(&q(2, 3, 0, 0), &PathFilter::none()),
            ["UUUDDD", "UUDUDD", "UUDDUD", "UDUUDD", "UDUDUD"]
        );
    }

    #[test]
    fn enumerated_paths_are_in_class() {
        for kv in 2..=4 {
            for a in 0..4 {
                for b in 0..4 {
                    for n in 0..4 {
                        let cls = q(kv, n, a, b);
                        let mut last: Option<Vec<Step>> = None;
                        for p in enumerate(&cls, &PathFilter::none()).unwrap() {
                            assert!(p.is_valid());
                            assert_eq!(p.start_height, a);
                            assert_eq!(p.end_height(), Some(b));
                            assert_eq!(p.down_steps(), n);
                            if let Some(prev) = &last {
                                assert!(prev < &p.steps, "not strictly increasing");
                            }
                            last = Some(p.steps);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn oracle_count_examples() {
        assert_eq!(
            oracle_count(&q(2, 6, 0, 0), &PathFilter::none()),
            ExactInt::from(132)
        );
        assert_eq!(
            oracle_count(&q(2, 3, 0, 0), &PathFilter::ceiling(2)),
            ExactInt::from(4)
        );
        assert_eq!(
            oracle_count(&q(3, 2, 0, 0), &PathFilter::returns(2)),
            ExactInt::from(1)
        );
        assert_eq!(words(&q(3, 2, 0, 0), &PathFilter::returns(2)), ["UUDUUD"]);
    }

    #[test]
    fn stats_examples() {
        let st = path(2, 1, "UD").stats();
        assert_eq!((st.min_height, st.max_height, st.returns), (1, 2, 0));
        let st = path(2, 1, "DU").stats();
        assert_eq!((st.min_height, st.max_height, st.returns), (0, 1, 1));
        let st = path(3, 0, "UUD").stats();
        assert_eq!((st.min_height, st.max_height, st.returns), (0, 2, 1));
        let st = path(2, 0, "").stats();
        assert_eq!(st.returns, 0);
        assert!(!path(2, 0, "D").is_valid());
    }

    #[test]
    fn dp_matches_enumeration_under_filters() {
        for kv in 2..=4 {
            for a in 0..4 {
                for b in 0..4 {
                    for n in 0..5 {
                        let cls = q(kv, n, a, b);
                        let all: Vec<Path> =
                            enumerate(&cls, &PathFilter::none()).unwrap().collect();
                        let count = |f: PathFilter| all.iter().filter(|p| f.accepts(p)).count();
                        assert_eq!(
                            oracle_count(&cls, &PathFilter::none()),
                            ExactInt::from(all.len())
                        );
                        for v in 0..8 {
                            for f in [
                                PathFilter::returns(v),
                                PathFilter::min_height(v),
                                PathFilter::ceiling(v),
                                PathFilter::max_height(v),
                                PathFilter {
                                    returns: Some(v % 3),
                                    ceiling: Some(v),
                                    ..PathFilter::none()
                                },
                                PathFilter {
                                    exact_min_height: Some(v % 2),
                                    exact_max_height: Some(v),
                                    ..PathFilter::none()
                                },
                            ] {
                                assert_eq!(
                                    oracle_count(&cls, &f),
                                    ExactInt::from(count(f)),
                                    "{cls} {f:?}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_limit() {
        let err = enumerate_with_limit(&q(2, 10, 0, 0), &PathFilter::none(), 1000)
            .err()
            .unwrap();
        assert!(matches!(err, Error::ResourceLimit { limit: 1000, .. }));
        assert!(enumerate_with_limit(&q(2, 5, 0, 0), &PathFilter::none(), 42).is_ok());
    }

    #[test]
    fn filtered_stream_is_lazy() {
        let mut it = enumerate(&q(2, 12, 0, 0), &PathFilter::none()).unwrap();
        assert_eq!(
            it.next().unwrap().to_string(),
            "U".repeat(12) + &"D".repeat(12)
        );
    }
}
