//! OEIS data: snapshot parsing, shift-tolerant matching, a caching b-file
//! client, and regeneration of the catalogue comparison tables.

mod fetch;
mod matcher;
mod parse;
pub mod tables;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::series::ExactInt;

pub use fetch::{default_cache_dir, OeisClient, CACHE_ENV, DEFAULT_BASE_URL, DEFAULT_IN_FLIGHT};
pub use matcher::{match_sequence, match_terms, MatchConfig, MatchReport};
pub use parse::{parse_bfile, parse_snapshot};

/// The snapshot shipped with the crate.
pub const BUNDLED_SNAPSHOT: &str = include_str!("../../../../data/oeis_snapshot.txt");

/// An OEIS A-number such as `A000108`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OeisId(String);

impl OeisId {
    pub fn parse(s: &str) -> Result<Self> {
        let b = s.as_bytes();
        if b.len() == 7 && b[0] == b'A' && b[1..].iter().all(u8::is_ascii_digit) {
            Ok(OeisId(s.to_string()))
        } else {
            Err(Error::InvalidId(s.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Numeric part, e.g. `000108`.
    pub fn digits(&self) -> &str {
        &self.0[1..]
    }
}

impl FromStr for OeisId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        OeisId::parse(s)
    }
}

impl fmt::Display for OeisId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Where a sequence's terms came from. Anything read from local storage
/// (bundled snapshot or cache) counts as a snapshot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Snapshot,
    Fetched,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OeisSequence {
    pub id: OeisId,
    pub terms: Vec<ExactInt>,
    pub source: Source,
}

/// Anything that can answer "what are the terms of this A-number".
pub trait SequenceSource: Sync {
    fn lookup(&self, id: &OeisId) -> Option<OeisSequence>;
}

#[derive(Clone, Debug, Default)]
pub struct Snapshot {
    entries: BTreeMap<OeisId, OeisSequence>,
}

impl Snapshot {
    pub fn from_text(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for seq in parse_snapshot(text)? {
            entries.insert(seq.id.clone(), seq);
        }
        Ok(Snapshot { entries })
    }

    /// Later entries replace earlier ones with the same id.
    pub fn from_sequences(seqs: impl IntoIterator<Item = OeisSequence>) -> Self {
        Snapshot {
            entries: seqs.into_iter().map(|s| (s.id.clone(), s)).collect(),
        }
    }

    pub fn bundled() -> Self {
        Self::from_text(BUNDLED_SNAPSHOT).expect("bundled snapshot parses")
    }

    pub fn get(&self, id: &OeisId) -> Option<&OeisSequence> {
        self.entries.get(id)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = &OeisId> {
        self.entries.keys()
    }
}

impl SequenceSource for Snapshot {
    fn lookup(&self, id: &OeisId) -> Option<OeisSequence> {
        self.get(id).cloned()
    }
}
