use crate::error::{Error, Result};
use crate::series::ExactInt;

use super::{OeisId, OeisSequence, Source};

fn parse_term(tok: &str, line: usize) -> Result<ExactInt> {
    tok.trim().parse::<ExactInt>().map_err(|_| Error::Parse {
        line,
        message: format!("bad term {tok:?}"),
    })
}

/// Parses OEIS stripped-format text: one `Annnnnn ,t0,t1,...,` line per
/// sequence. Blank lines and `#` comments are skipped.
pub fn parse_snapshot(payload: &str) -> Result<Vec<OeisSequence>> {
    let mut out = Vec::new();
    for (idx, raw) in payload.lines().enumerate() {
        let line = idx + 1;
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let (id, rest) = text
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::Parse {
                line,
                message: "expected `Annnnnn ,terms,`".into(),
            })?;
        let id = OeisId::parse(id).map_err(|_| Error::Parse {
            line,
            message: format!("bad identifier {id:?}"),
        })?;
        let body = rest.trim();
        let body = body.strip_prefix(',').ok_or_else(|| Error::Parse {
            line,
            message: "terms must start with ','".into(),
        })?;
        let body = body.strip_suffix(',').unwrap_or(body);
        let terms = body
            .split(',')
            .map(|t| parse_term(t, line))
            .collect::<Result<Vec<_>>>()?;
        if terms.is_empty() {
            return Err(Error::Parse {
                line,
                message: "no terms".into(),
            });
        }
        out.push(OeisSequence {
            id,
            terms,
            source: Source::Snapshot,
        });
    }
    Ok(out)
}

/// Parses an OEIS b-file (`n a(n)` per line, `#` comments). Indices must be
/// consecutive.
pub fn parse_bfile(id: &OeisId, payload: &str) -> Result<OeisSequence> {
    let mut terms = Vec::new();
    let mut expected: Option<i64> = None;
    for (idx, raw) in payload.lines().enumerate() {
        let line = idx + 1;
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let mut parts = text.split_whitespace();
        let (Some(n), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Parse {
                line,
                message: "expected `n a(n)`".into(),
            });
        };
        let n: i64 = n.parse().map_err(|_| Error::Parse {
            line,
            message: format!("bad index {n:?}"),
        })?;
        if let Some(e) = expected {
            if n != e {
                return Err(Error::Parse {
                    line,
                    message: format!("index {n} out of sequence, expected {e}"),
                });
            }
        }
        expected = Some(n + 1);
        terms.push(parse_term(v, line)?);
    }
    if terms.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "b-file has no terms".into(),
        });
    }
    Ok(OeisSequence {
        id: id.clone(),
        terms,
        source: Source::Snapshot,
    })
}
