//! Paths bounded above by a ceiling `M`, and paths whose maximum height is
//! exactly `M`.
//!
//! Every quotient is evaluated inside the truncated series ring. The
//! denominators are all of the form `1 + C_{k,(M+1,M)}(t)`, and since a
//! shape `(M+1, M)` path needs at least one down step the constant term is
//! exactly 1.

use crate::series::{ExactInt, TruncatedSeries, K};
use crate::shape::{shape_series, PathClassQuery, Shape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoundedQuery {
    pub base: PathClassQuery,
    /// Ceiling (for bounded counts) or exact maximum (for max-height counts).
    pub height: usize,
}

impl BoundedQuery {
    pub fn new(base: PathClassQuery, height: usize) -> Self {
        BoundedQuery { base, height }
    }
}

fn denominator_inverse(k: K, ceiling: usize, order: usize) -> TruncatedSeries {
    let over = shape_series(k, Shape::new(ceiling + 1, ceiling), order);
    (&TruncatedSeries::one(order) + &over)
        .recip()
        .expect("1 + C_(M+1,M) has unit constant term")
}

/// Paths from `alpha` to `ceiling` staying weakly below `ceiling`.
pub fn bounded_top_series(k: K, alpha: usize, ceiling: usize, order: usize) -> TruncatedSeries {
    if alpha > ceiling {
        return TruncatedSeries::zero(order);
    }
    let full = shape_series(k, Shape::new(alpha, ceiling), order);
    &full * &denominator_inverse(k, ceiling, order)
}

/// Paths of shape `s` staying weakly below `ceiling`.
pub fn bounded_series(k: K, s: Shape, ceiling: usize, order: usize) -> TruncatedSeries {
    if s.alpha > ceiling || s.beta > ceiling {
        return TruncatedSeries::zero(order);
    }
    let full = shape_series(k, s, order);
    let to_top = shape_series(k, Shape::new(s.alpha, ceiling), order);
    let from_above = shape_series(k, Shape::new(ceiling + 1, s.beta), order);
    let escaped = &(&to_top * &from_above) * &denominator_inverse(k, ceiling, order);
    &full - &escaped
}

/// [`bounded_series`] with a ceiling that may be negative (zero series).
fn bounded_series_signed(k: K, s: Shape, ceiling: i64, order: usize) -> TruncatedSeries {
    if ceiling < 0 {
        TruncatedSeries::zero(order)
    } else {
        bounded_series(k, s, ceiling as usize, order)
    }
}

/// Paths of shape `s` whose maximum height is exactly `max_height`.
pub fn max_height_series(k: K, s: Shape, max_height: usize, order: usize) -> TruncatedSeries {
    let upto = bounded_series(k, s, max_height, order);
    let below = bounded_series_signed(k, s, max_height as i64 - 1, order);
    &upto - &below
}

pub fn bounded_count(q: &BoundedQuery) -> ExactInt {
    let b = q.base;
    bounded_series(b.k, b.shape, q.height, b.n)
        .coeff(b.n)
        .clone()
}

pub fn max_height_count(q: &BoundedQuery) -> ExactInt {
    let b = q.base;
    max_height_series(b.k, b.shape, q.height, b.n)
        .coeff(b.n)
        .clone()
}
