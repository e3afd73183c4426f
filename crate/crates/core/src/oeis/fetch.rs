use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use crate::error::{Error, Result};

use super::{parse_bfile, OeisId, OeisSequence, SequenceSource, Snapshot, Source};

pub const CACHE_ENV: &str = "KDYCK_OEIS_CACHE";
pub const DEFAULT_BASE_URL: &str = "https://oeis.org";
pub const DEFAULT_IN_FLIGHT: usize = 2;

/// `$KDYCK_OEIS_CACHE`, else `<platform cache dir>/kdyck/oeis`.
pub fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()) {
        return PathBuf::from(dir);
    }
    dirs::cache_dir()
        .unwrap_or_else(std::env::temp_dir)
        .join("kdyck")
        .join("oeis")
}

/// b-file client with a write-through disk cache and the bundled snapshot
/// as the last offline fallback.
#[derive(Clone, Debug)]
pub struct OeisClient {
    pub cache_dir: PathBuf,
    pub base_url: String,
    pub offline: bool,
    pub in_flight: usize,
    pub timeout: Duration,
    snapshot: Snapshot,
}

impl OeisClient {
    pub fn new(offline: bool) -> Self {
        OeisClient {
            cache_dir: default_cache_dir(),
            base_url: DEFAULT_BASE_URL.to_string(),
            offline,
            in_flight: DEFAULT_IN_FLIGHT,
            timeout: Duration::from_secs(30),
            snapshot: Snapshot::bundled(),
        }
    }

    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache_dir = dir.into();
        self
    }

    pub fn with_base_url(mut self, url: impl Into<String>) -> Self {
        self.base_url = url.into().trim_end_matches('/').to_string();
        self
    }

    pub fn with_snapshot(mut self, snapshot: Snapshot) -> Self {
        self.snapshot = snapshot;
        self
    }

    pub fn bfile_url(&self, id: &OeisId) -> String {
        format!("{}/{}/b{}.txt", self.base_url, id, id.digits())
    }

    pub fn cache_path(&self, id: &OeisId) -> PathBuf {
        self.cache_dir.join(format!("b{}.txt", id.digits()))
    }

    /// Reads the cache, then the snapshot. Never touches the network.
    pub fn local(&self, id: &OeisId) -> Result<OeisSequence> {
        let path = self.cache_path(id);
        if path.is_file() {
            return parse_bfile(id, &fs::read_to_string(&path)?);
        }
        self.snapshot
            .get(id)
            .cloned()
            .ok_or_else(|| Error::Unavailable(id.to_string()))
    }

    /// Online: downloads the b-file, refreshes the cache and returns it as
    /// `Source::Fetched`. Offline: [`OeisClient::local`].
    pub fn fetch(&self, id: &OeisId) -> Result<OeisSequence> {
        if self.offline {
            return self.local(id);
        }
        let body = self.download(id)?;
        let mut seq = parse_bfile(id, &body).map_err(|e| Error::Fetch {
            id: id.to_string(),
            message: format!("unparseable b-file: {e}"),
        })?;
        write_atomic(&self.cache_path(id), &body)?;
        seq.source = Source::Fetched;
        Ok(seq)
    }

    pub fn fetch_str(&self, id: &str) -> Result<OeisSequence> {
        self.fetch(&OeisId::parse(id)?)
    }

    /// Fetches several ids with at most `in_flight` requests running at once.
    /// Results come back in input order.
    pub fn fetch_many(&self, ids: &[OeisId]) -> Vec<Result<OeisSequence>> {
        let next = AtomicUsize::new(0);
        let slots: Vec<Mutex<Option<Result<OeisSequence>>>> =
            ids.iter().map(|_| Mutex::new(None)).collect();
        let workers = self.in_flight.max(1).min(ids.len().max(1));
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= ids.len() {
                        break;
                    }
                    let r = self.fetch(&ids[i]);
                    *slots[i].lock().unwrap() = Some(r);
                });
            }
        });
        slots
            .into_iter()
            .map(|m| m.into_inner().unwrap().expect("every slot filled"))
            .collect()
    }

    /// Resolves `ids` up front (downloads bounded by `in_flight` when online,
    /// local fallback on failure) into a snapshot usable as a table source.
    pub fn prefetch(&self, ids: &[OeisId]) -> Snapshot {
        let found = self
            .fetch_many(ids)
            .into_iter()
            .zip(ids)
            .filter_map(|(r, id)| r.or_else(|_| self.local(id)).ok());
        Snapshot::from_sequences(found)
    }

    fn download(&self, id: &OeisId) -> Result<String> {
        let fail = |message: String| Error::Fetch {
            id: id.to_string(),
            message,
        };
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(self.timeout))
            .build()
            .into();
        let mut resp = agent
            .get(&self.bfile_url(id))
            .call()
            .map_err(|e| fail(e.to_string()))?;
        resp.body_mut()
            .read_to_string()
            .map_err(|e| fail(e.to_string()))
    }
}

impl SequenceSource for OeisClient {
    /// Offline clients read local data only; online clients fall back to
    /// local data when the download fails.
    fn lookup(&self, id: &OeisId) -> Option<OeisSequence> {
        self.fetch(id).or_else(|_| self.local(id)).ok()
    }
}

fn write_atomic(path: &Path, body: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, body)?;
    fs::rename(&tmp, path)?;
    Ok(())
}
