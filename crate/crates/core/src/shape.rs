//! Counting raised k-Dyck paths of a fixed shape.
//!
//! A path of shape `(alpha, beta)` starts at height `alpha`, ends at height
//! `beta`, never goes below zero, and uses `n` down steps. It therefore has
//! `(k-1)n + beta - alpha` up steps and length `kn + beta - alpha`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::{binom_guarded, catalan_series, raney, raney_at, ExactInt, TruncatedSeries, K};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    pub alpha: usize,
    pub beta: usize,
}

impl Shape {
    pub const fn new(alpha: usize, beta: usize) -> Self {
        Shape { alpha, beta }
    }

    /// Shape with both heights lowered by `d`, or `None` if either would go
    /// negative.
    pub fn lowered(self, d: usize) -> Option<Shape> {
        Some(Shape::new(
            self.alpha.checked_sub(d)?,
            self.beta.checked_sub(d)?,
        ))
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.alpha, self.beta)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PathClassQuery {
    pub k: K,
    /// Number of down steps.
    pub n: usize,
    pub shape: Shape,
}

impl PathClassQuery {
    pub fn new(k: K, n: usize, shape: Shape) -> Self {
        PathClassQuery { k, n, shape }
    }

    /// Path length `kn + beta - alpha`; negative means the class is empty.
    pub fn length(&self) -> i64 {
        self.k.get() as i64 * self.n as i64 + self.shape.beta as i64 - self.shape.alpha as i64
    }

    /// Number of up steps `(k-1)n + beta - alpha`.
    pub fn up_steps(&self) -> i64 {
        self.k.drop() as i64 * self.n as i64 + self.shape.beta as i64 - self.shape.alpha as i64
    }

    pub fn is_empty_class(&self) -> bool {
        self.up_steps() < 0
    }
}

impl fmt::Display for PathClassQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} n={} shape={}", self.k, self.n, self.shape)
    }
}

/// Counts by the first-step recurrence
/// `C(n, a) = C(n, a+1) + C(n-1, a-k+1)`, tabulated bottom-up in `n`.
///
/// For a fixed number of down steps the table only needs heights up to
/// `kn + beta`, above which the class is empty; this keeps the upward
/// recursion in `alpha` finite.
pub fn count_recurrence(q: &PathClassQuery) -> ExactInt {
    let beta = q.shape.beta;
    let drop = q.k.drop();
    if q.is_empty_class() {
        return ExactInt::zero();
    }
    let kk = q.k.get() as usize;
    // prev[a] = C(m-1, a) for a in 0..=k(m-1)+beta. With no down steps the
    // only path from a <= beta is the run of up steps.
    let mut prev: Vec<ExactInt> = vec![ExactInt::one(); beta + 1];
    for m in 1..=q.n {
        let top = kk * m + beta;
        let mut cur = vec![ExactInt::zero(); top + 1];
        for a in (0..=top).rev() {
            let mut v = if a < top {
                cur[a + 1].clone()
            } else {
                ExactInt::zero()
            };
            if a >= drop {
                if let Some(p) = prev.get(a - drop) {
                    v += p;
                }
            }
            cur[a] = v;
        }
        prev = cur;
    }
    prev.get(q.shape.alpha)
        .cloned()
        .unwrap_or_else(ExactInt::zero)
}

/// `sum_i (-1)^i C(a - (k-1)i, i) t^i`, the polynomial part of the fixed
/// shape generating function.
fn alternating_poly(k: K, a: i64, order: usize) -> TruncatedSeries {
    let drop = k.drop() as i64;
    let mut coeffs = vec![ExactInt::zero(); order + 1];
    for (i, c) in coeffs.iter_mut().enumerate() {
        let i = i as i64;
        let top = a - drop * i;
        if top < i {
            break;
        }
        let b = binom_guarded(top, i);
        *c = if i % 2 == 0 { b } else { -b };
    }
    TruncatedSeries::from_coeffs(coeffs, order)
}

/// Generating function `C_{k,(alpha,beta)}(t)` modulo `t^(order+1)`:
/// `C_k(t)^(beta+1) * P_alpha(t) - P_(alpha-beta-1)(t)`.
pub fn shape_series(k: K, s: Shape, order: usize) -> TruncatedSeries {
    let c = catalan_series(k, order).pow(s.beta as u64 + 1);
    let head = alternating_poly(k, s.alpha as i64, order);
    let tail = alternating_poly(k, s.alpha as i64 - s.beta as i64 - 1, order);
    &(&c * &head) - &tail
}

/// Shape series when `s` may have a negative component; such shapes are
/// empty and give the zero series.
pub(crate) fn shape_series_signed(k: K, alpha: i64, beta: i64, order: usize) -> TruncatedSeries {
    if alpha < 0 || beta < 0 {
        TruncatedSeries::zero(order)
    } else {
        shape_series(k, Shape::new(alpha as usize, beta as usize), order)
    }
}

/// Closed form for `C^k_{n,(alpha,beta)}`: an alternating convolution of
/// Raney numbers with guarded binomials, minus a single correction term.
pub fn count_closed(q: &PathClassQuery) -> ExactInt {
    let k = q.k;
    let drop = k.drop() as i64;
    let (alpha, beta, n) = (q.shape.alpha as i64, q.shape.beta as i64, q.n as i64);
    let mut total = ExactInt::zero();
    for i in 0..=n {
        let top = alpha - drop * i;
        if top < i {
            break;
        }
        let term = raney(k, beta as u64 + 1, (n - i) as u64) * binom_guarded(top, i);
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    let corr = binom_guarded(alpha - beta - 1 - drop * n, n);
    if n % 2 == 0 {
        total - corr
    } else {
        total + corr
    }
}

/// Single-term count valid when `alpha <= k - 1`.
pub fn count_small_alpha(q: &PathClassQuery) -> Result<ExactInt> {
    let Shape { alpha, beta } = q.shape;
    if alpha > q.k.drop() {
        return Err(Error::Precondition(format!(
            "alpha = {alpha} exceeds k - 1 = {}",
            q.k.drop()
        )));
    }
    Ok(if q.n > 0 {
        raney(q.k, beta as u64 + 1, q.n as u64)
    } else if alpha <= beta {
        ExactInt::one()
    } else {
        ExactInt::zero()
    })
}

/// `C_k(t)^(beta+1)`, minus one when `alpha > beta`; valid for
/// `alpha <= k - 1`.
pub fn shape_series_small_alpha(k: K, s: Shape, order: usize) -> Result<TruncatedSeries> {
    if s.alpha > k.drop() {
        return Err(Error::Precondition(format!(
            "alpha = {} exceeds k - 1 = {}",
            s.alpha,
            k.drop()
        )));
    }
    let c = catalan_series(k, order).pow(s.beta as u64 + 1);
    Ok(if s.alpha > s.beta {
        &c - &TruncatedSeries::one(order)
    } else {
        c
    })
}

/// Dyck-path (k = 2) series grouped by the height of the lowest point:
/// `sum_{i <= min(alpha,beta)} t^(alpha-i) C_2(t)^(alpha+beta+1-2i)`.
pub fn k2_shape_series(s: Shape, order: usize) -> TruncatedSeries {
    let c = catalan_series(K::TWO, order);
    let mut total = TruncatedSeries::zero(order);
    for i in 0..=s.alpha.min(s.beta) {
        let term = c
            .pow((s.alpha + s.beta + 1 - 2 * i) as u64)
            .shift(s.alpha - i);
        total = &total + &term;
    }
    total
}

/// Coefficient extraction from [`k2_shape_series`] term by term.
pub fn k2_count(n: usize, s: Shape) -> ExactInt {
    let mut total = ExactInt::zero();
    for i in 0..=s.alpha.min(s.beta) {
        let r = (s.alpha + s.beta + 1 - 2 * i) as u64;
        total += raney_at(K::TWO, r, n as i64 - s.alpha as i64 + i as i64);
    }
    total
}

/// Which computation route a dispatcher took or should take.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Cheapest exact route for the query.
    Auto,
    Closed,
    SmallAlpha,
    K2,
    Recurrence,
    Series,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Closed => "closed",
            Method::SmallAlpha => "small-alpha",
            Method::K2 => "k2",
            Method::Recurrence => "recurrence",
            Method::Series => "series",
        }
    }
}

/// Resolves [`Method::Auto`] to a concrete route.
pub fn resolve_method(q: &PathClassQuery, method: Method) -> Method {
    match method {
        Method::Auto if q.shape.alpha <= q.k.drop() => Method::SmallAlpha,
        Method::Auto => Method::Closed,
        m => m,
    }
}

/// Counts `C^k_{n,(alpha,beta)}` with the requested route. Returns the
/// count together with the route actually used.
pub fn count(q: &PathClassQuery, method: Method) -> Result<(ExactInt, Method)> {
    let m = resolve_method(q, method);
    let v = match m {
        Method::Auto => unreachable!(),
        Method::Closed => count_closed(q),
        Method::SmallAlpha => count_small_alpha(q)?,
        Method::K2 => {
            if q.k != K::TWO {
                return Err(Error::Precondition("the k2 route requires k = 2".into()));
            }
            k2_count(q.n, q.shape)
        }
        Method::Recurrence => count_recurrence(q),
        Method::Series => shape_series(q.k, q.shape, q.n).coeff(q.n).clone(),
    };
    Ok((v, m))
}
