use num_traits::Zero;

use crate::series::ExactInt;

use super::OeisSequence;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatchConfig {
    /// Largest index offset tried in either direction.
    pub max_shift: usize,
    /// Fewest overlapping terms accepted. Capped by the length of the
    /// shorter (zero-trimmed) sequence, so short inputs can still match.
    pub min_overlap: usize,
}

impl Default for MatchConfig {
    fn default() -> Self {
        MatchConfig {
            max_shift: 5,
            min_overlap: 8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatchReport {
    pub matched: bool,
    /// After dropping leading zeros from both sides, `generated[i]` is
    /// compared with `target[i + shift]`.
    pub shift: i64,
    /// Initial terms missing from one side, `|shift|`.
    pub dropped_prefix: usize,
    pub overlap_length: usize,
    /// Same alignment in raw indices: `generated[j] == target[j + index_offset]`.
    pub index_offset: i64,
}

impl MatchReport {
    pub fn unmatched() -> Self {
        MatchReport {
            matched: false,
            shift: 0,
            dropped_prefix: 0,
            overlap_length: 0,
            index_offset: 0,
        }
    }
}

fn leading_zeros(v: &[ExactInt]) -> usize {
    v.iter().take_while(|x| x.is_zero()).count()
}

/// Shift-tolerant comparison: leading zeros are ignored on both sides and
/// offsets are tried smallest first (0, -1, +1, -2, ...). Every
/// overlapping term must agree.
pub fn match_terms(
    generated: &[ExactInt],
    target: &[ExactInt],
    config: &MatchConfig,
) -> MatchReport {
    let gz = leading_zeros(generated);
    let tz = leading_zeros(target);
    let g = &generated[gz..];
    let t = &target[tz..];
    if g.is_empty() || t.is_empty() {
        return MatchReport::unmatched();
    }
    let required = config.min_overlap.min(g.len().min(t.len())).max(1);
    let max = config.max_shift as i64;
    let shifts = (0..=max).flat_map(|d| if d == 0 { vec![0] } else { vec![-d, d] });
    for s in shifts {
        let (gs, ts) = if s >= 0 {
            (0, s as usize)
        } else {
            ((-s) as usize, 0)
        };
        if gs >= g.len() || ts >= t.len() {
            continue;
        }
        let overlap = (g.len() - gs).min(t.len() - ts);
        if overlap < required {
            continue;
        }
        if g[gs..gs + overlap] == t[ts..ts + overlap] {
            return MatchReport {
                matched: true,
                shift: s,
                dropped_prefix: s.unsigned_abs() as usize,
                overlap_length: overlap,
                index_offset: s + tz as i64 - gz as i64,
            };
        }
    }
    MatchReport::unmatched()
}

pub fn match_sequence(
    generated: &[ExactInt],
    target: &OeisSequence,
    config: &MatchConfig,
) -> MatchReport {
    match_terms(generated, &target.terms, config)
}
