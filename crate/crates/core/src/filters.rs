//! Counts filtered by exact minimum height and by number of returns to
//! ground.
//!
//! The minimum height of a path of shape `(alpha, beta)` always lies in
//! `0..=min(alpha, beta)`, and a path has at most `n` returns. Queries
//! outside those ranges count zero rather than failing, so partition sums
//! can iterate over rectangular ranges.
//!
//! A return is a down step landing on `y = 0`; the starting point never
//! counts, so the trivial path has no returns and minimum height `alpha`.

use num_traits::Zero;

use crate::series::{binom_guarded, catalan_series, raney, raney_at, ExactInt, TruncatedSeries, K};
use crate::shape::{
    count_closed, k2_count, shape_series, shape_series_signed, PathClassQuery, Shape,
};

fn min_height_in_range(s: Shape, m: usize) -> bool {
    m <= s.alpha.min(s.beta)
}

/// Paths of shape `s` whose lowest point is exactly `m`:
/// `C_{k,(alpha-m,0)}(t) * C_k(t)^(beta-m)`.
pub fn minheight_series(k: K, s: Shape, m: usize, order: usize) -> TruncatedSeries {
    if !min_height_in_range(s, m) {
        return TruncatedSeries::zero(order);
    }
    let head = shape_series(k, Shape::new(s.alpha - m, 0), order);
    let tail = catalan_series(k, order).pow((s.beta - m) as u64);
    &head * &tail
}

/// Route taken by [`minheight_count_with_route`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinHeightRoute {
    /// `alpha - m <= k - 1`: at most two Raney numbers.
    SmallExcess,
    /// `k = 2`: a single Raney number.
    K2,
    /// Double alternating convolution, valid for every query.
    General,
}

impl MinHeightRoute {
    pub fn name(self) -> &'static str {
        match self {
            MinHeightRoute::SmallExcess => "min-height:small-excess",
            MinHeightRoute::K2 => "min-height:k2",
            MinHeightRoute::General => "min-height:general",
        }
    }
}

/// Double alternating convolution for the exact-minimum count, read off
/// from the product form of [`minheight_series`]:
///
/// `sum_i (-1)^i R_{k,beta-m+1}(n-i) C(alpha-m-(k-1)i, i)
///  - sum_i (-1)^i R_{k,beta-m}(n-i) C(alpha-m-1-(k-1)i, i)`.
pub fn minheight_count_general(k: K, n: usize, s: Shape, m: usize) -> ExactInt {
    if !min_height_in_range(s, m) {
        return ExactInt::zero();
    }
    let drop = k.drop() as i64;
    let lift = (s.alpha - m) as i64;
    let low = (s.beta - m) as u64;
    let mut total = ExactInt::zero();
    for i in 0..=n as i64 {
        if lift - drop * i < i {
            break;
        }
        let rest = (n as i64 - i) as u64;
        let a = binom_guarded(lift - drop * i, i);
        let b = binom_guarded(lift - 1 - drop * i, i);
        let term = raney(k, low + 1, rest) * a - raney(k, low, rest) * b;
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Short form for `m <= alpha <= k - 1 + m`.
pub fn minheight_count_small_excess(k: K, n: usize, s: Shape, m: usize) -> Option<ExactInt> {
    if !min_height_in_range(s, m) || s.alpha - m > k.drop() {
        return None;
    }
    let low = (s.beta - m) as u64;
    let first = raney(k, low + 1, n as u64);
    Some(if s.alpha == m {
        first
    } else {
        first - raney(k, low, n as u64)
    })
}

/// Dyck-path (k = 2) form: `R_{2, alpha+beta+1-2m}(n - alpha + m)`.
pub fn minheight_count_k2(n: usize, s: Shape, m: usize) -> ExactInt {
    if !min_height_in_range(s, m) {
        return ExactInt::zero();
    }
    let r = (s.alpha + s.beta + 1 - 2 * m) as u64;
    raney_at(K::TWO, r, n as i64 - s.alpha as i64 + m as i64)
}

/// Exact-minimum-height count through the cheapest applicable route.
pub fn minheight_count_with_route(
    k: K,
    n: usize,
    s: Shape,
    m: usize,
) -> (ExactInt, MinHeightRoute) {
    if let Some(v) = minheight_count_small_excess(k, n, s, m) {
        return (v, MinHeightRoute::SmallExcess);
    }
    if k == K::TWO {
        return (minheight_count_k2(n, s, m), MinHeightRoute::K2);
    }
    (minheight_count_general(k, n, s, m), MinHeightRoute::General)
}

pub fn minheight_count(k: K, n: usize, s: Shape, m: usize) -> ExactInt {
    minheight_count_with_route(k, n, s, m).0
}

/// Paths bounded below by `m` minus paths bounded below by `m + 1`, each
/// counted as an unfiltered class shifted down.
pub fn minheight_count_via_difference(k: K, n: usize, s: Shape, m: usize) -> ExactInt {
    if !min_height_in_range(s, m) {
        return ExactInt::zero();
    }
    let at = |d: usize| match s.lowered(d) {
        Some(shape) => count_closed(&PathClassQuery::new(k, n, shape)),
        None => ExactInt::zero(),
    };
    at(m) - at(m + 1)
}

/// The shape series rebuilt as a sum over minimum heights.
pub fn shape_series_by_minheight(k: K, s: Shape, order: usize) -> TruncatedSeries {
    let c = catalan_series(k, order);
    let mut total = TruncatedSeries::zero(order);
    for i in 0..=s.alpha.min(s.beta) {
        let term =
            &shape_series(k, Shape::new(s.alpha - i, 0), order) * &c.pow((s.beta - i) as u64);
        total = &total + &term;
    }
    total
}

/// Paths of shape `s` with exactly `rho` returns to ground.
pub fn returns_series(k: K, s: Shape, rho: usize, order: usize) -> TruncatedSeries {
    let c = catalan_series(k, order);
    let drop = k.drop();
    if s.alpha == 0 {
        return c.pow((s.beta + rho * drop) as u64).shift(rho);
    }
    if rho == 0 {
        return shape_series_signed(k, s.alpha as i64 - 1, s.beta as i64 - 1, order);
    }
    let first = shape_series(k, Shape::new(s.alpha - 1, drop - 1), order);
    let rest = c.pow((s.beta + (rho - 1) * drop) as u64);
    (&first * &rest).shift(rho)
}

/// Route taken by [`returns_count_with_route`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReturnsRoute {
    /// Start on the ground: one Raney number.
    Grounded,
    /// Raised start with no returns: an unfiltered count one level down.
    NoReturns,
    /// `0 < alpha <= k` with at least one return.
    SmallAlpha,
    /// `k = 2` with at least one return.
    K2,
    /// Convolution of shape counts with Raney numbers.
    General,
}

impl ReturnsRoute {
    pub fn name(self) -> &'static str {
        match self {
            ReturnsRoute::Grounded => "returns:grounded",
            ReturnsRoute::NoReturns => "returns:none",
            ReturnsRoute::SmallAlpha => "returns:small-alpha",
            ReturnsRoute::K2 => "returns:k2",
            ReturnsRoute::General => "returns:general",
        }
    }
}

/// Start on the ground: `R_{k, beta + rho(k-1)}(n - rho)`.
pub fn returns_count_grounded(k: K, n: usize, beta: usize, rho: usize) -> ExactInt {
    raney_at(k, (beta + rho * k.drop()) as u64, n as i64 - rho as i64)
}

/// Raised start, `rho == 0`: the path never touches ground, so it is a
/// shape `(alpha-1, beta-1)` path lifted by one.
pub fn returns_count_none(k: K, n: usize, s: Shape) -> ExactInt {
    match s.lowered(1) {
        Some(shape) => count_closed(&PathClassQuery::new(k, n, shape)),
        None => ExactInt::zero(),
    }
}

/// Raised start, `rho >= 1`: the segment before the first return is a
/// shape `(alpha-1, k-2)` path, convolved with the Raney tail for the
/// remaining returns.
pub fn returns_count_general(k: K, n: usize, s: Shape, rho: usize) -> ExactInt {
    debug_assert!(s.alpha > 0 && rho > 0);
    if rho > n {
        return ExactInt::zero();
    }
    let drop = k.drop();
    let head_shape = Shape::new(s.alpha - 1, drop - 1);
    let r = (s.beta + (rho - 1) * drop) as u64;
    let span = n - rho;
    let mut total = ExactInt::zero();
    for i in 0..=span {
        let head = count_closed(&PathClassQuery::new(k, i, head_shape));
        if !head.is_zero() {
            total += head * raney(k, r, (span - i) as u64);
        }
    }
    total
}

/// Short forms for `0 < alpha <= k` and `rho >= 1`.
pub fn returns_count_small_alpha(k: K, n: usize, s: Shape, rho: usize) -> Option<ExactInt> {
    let kk = k.get() as usize;
    if s.alpha == 0 || s.alpha > kk || rho == 0 {
        return None;
    }
    let drop = k.drop();
    let span = n as i64 - rho as i64;
    let full = raney_at(k, (s.beta + rho * drop) as u64, span);
    Some(if s.alpha < kk {
        full
    } else {
        full - raney_at(k, (s.beta + (rho - 1) * drop) as u64, span)
    })
}

/// Dyck-path (k = 2) form with `alpha > 0`, `rho >= 1`:
/// `R_{2, alpha+beta+rho-1}(n - alpha - rho + 1)`.
pub fn returns_count_k2(n: usize, s: Shape, rho: usize) -> Option<ExactInt> {
    if s.alpha == 0 || rho == 0 {
        return None;
    }
    let r = (s.alpha + s.beta + rho - 1) as u64;
    Some(raney_at(
        K::TWO,
        r,
        n as i64 - s.alpha as i64 - rho as i64 + 1,
    ))
}

/// Dyck-path (k = 2) form with `alpha > 0`, `rho = 0`, a sum over the
/// lowest point of the lifted path.
pub fn returns_count_k2_none(n: usize, s: Shape) -> ExactInt {
    match s.lowered(1) {
        Some(shape) => k2_count(n, shape),
        None => ExactInt::zero(),
    }
}

pub fn returns_count_with_route(k: K, n: usize, s: Shape, rho: usize) -> (ExactInt, ReturnsRoute) {
    if rho > n {
        let route = if s.alpha == 0 {
            ReturnsRoute::Grounded
        } else {
            ReturnsRoute::General
        };
        return (ExactInt::zero(), route);
    }
    if s.alpha == 0 {
        return (
            returns_count_grounded(k, n, s.beta, rho),
            ReturnsRoute::Grounded,
        );
    }
    if rho == 0 {
        return (returns_count_none(k, n, s), ReturnsRoute::NoReturns);
    }
    if let Some(v) = returns_count_small_alpha(k, n, s, rho) {
        return (v, ReturnsRoute::SmallAlpha);
    }
    if k == K::TWO {
        if let Some(v) = returns_count_k2(n, s, rho) {
            return (v, ReturnsRoute::K2);
        }
    }
    (returns_count_general(k, n, s, rho), ReturnsRoute::General)
}

pub fn returns_count(k: K, n: usize, s: Shape, rho: usize) -> ExactInt {
    returns_count_with_route(k, n, s, rho).0
}
