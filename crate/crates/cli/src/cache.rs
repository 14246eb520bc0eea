//! On-disk cache of generating-function columns.
//!
//! One file per key. The first line is a JSON header (format, tool version,
//! key, engine, creation time); the second is the serialized series. Entries
//! whose header does not match the request exactly, or that fail to parse,
//! are deleted and recomputed. Writes go through a temporary file in the
//! same directory followed by a rename, so readers never see partial files.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use partineq_core::delta::{ColumnSource, SeriesEngine};
use partineq_core::{Error, QVariant, ResiduePartSpec, Result, TruncatedSeries};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

const FORMAT: u32 = 1;
const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    /// `gap` or `residue`.
    pub kind: String,
    pub variant: Option<QVariant>,
    pub d: u64,
    /// `a` for gap columns, `b` for residue columns.
    pub param: u64,
    /// Exclusion set of the residue family, empty for gap columns.
    pub exclusions: String,
    pub n: usize,
}

impl CacheKey {
    pub fn gap(d: u64, a: u64, n: usize) -> Self {
        Self {
            kind: "gap".into(),
            variant: None,
            d,
            param: a,
            exclusions: String::new(),
            n,
        }
    }

    pub fn residue(variant: QVariant, d: u64, b: u64, n: usize) -> Result<Self> {
        Ok(Self {
            kind: "residue".into(),
            variant: Some(variant),
            d,
            param: b,
            exclusions: ResiduePartSpec::q(variant, d, b)?.fingerprint(),
            n,
        })
    }

    fn file_name(&self) -> String {
        let text = serde_json::to_string(self).expect("key serializes");
        let digest = Sha256::digest(text.as_bytes());
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        format!("{}-{}.json", self.kind, &hex[..32])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Header {
    format: u32,
    tool_version: String,
    key: CacheKey,
    engine: String,
    created_unix: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: usize,
    pub misses: usize,
    pub evictions: usize,
}

/// A [`ColumnSource`] that serves columns from disk when it can.
pub struct CachedSource {
    dir: PathBuf,
    /// Recompute every hit and fail on any difference.
    verify: bool,
    stats: Mutex<CacheStats>,
    io_error: Mutex<Option<String>>,
}

impl CachedSource {
    pub fn open(dir: &Path, verify: bool) -> std::io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Self {
            dir: dir.to_path_buf(),
            verify,
            stats: Mutex::new(CacheStats::default()),
            io_error: Mutex::new(None),
        })
    }

    pub fn stats(&self) -> CacheStats {
        self.stats.lock().expect("stats lock").clone()
    }

    /// First write failure, if any; reads that fail are treated as misses.
    pub fn io_error(&self) -> Option<String> {
        self.io_error.lock().expect("io lock").clone()
    }

    fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(key.file_name())
    }

    fn bump(&self, f: impl FnOnce(&mut CacheStats)) {
        f(&mut self.stats.lock().expect("stats lock"));
    }

    /// The entry for `key`, or `None` after evicting anything unusable.
    pub fn load(&self, key: &CacheKey) -> Option<TruncatedSeries> {
        let path = self.path(key);
        let file = fs::File::open(&path).ok()?;
        let mut lines = BufReader::new(file).lines();
        let parsed = (|| {
            let header: Header = serde_json::from_str(&lines.next()?.ok()?).ok()?;
            if header.format != FORMAT || header.tool_version != TOOL_VERSION || &header.key != key
            {
                return None;
            }
            let series: TruncatedSeries = serde_json::from_str(&lines.next()?.ok()?).ok()?;
            (series.degree_bound() == key.n).then_some(series)
        })();
        if parsed.is_none() {
            // Best effort: a failed eviction only costs a recomputation.
            let _ = fs::remove_file(&path);
            self.bump(|s| s.evictions += 1);
        }
        parsed
    }

    pub fn store(&self, key: &CacheKey, series: &TruncatedSeries) -> std::io::Result<()> {
        let header = Header {
            format: FORMAT,
            tool_version: TOOL_VERSION.into(),
            key: key.clone(),
            engine: "series".into(),
            created_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, &header)?;
        tmp.write_all(b"\n")?;
        serde_json::to_writer(&mut tmp, series)?;
        tmp.write_all(b"\n")?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }

    fn fetch(
        &self,
        key: CacheKey,
        compute: impl Fn() -> Result<TruncatedSeries>,
    ) -> Result<TruncatedSeries> {
        if let Some(hit) = self.load(&key) {
            self.bump(|s| s.hits += 1);
            if self.verify {
                let fresh = compute()?;
                if fresh != hit {
                    return Err(Error::Invariant(format!(
                        "cached {} column d={} param={} differs from recomputation",
                        key.kind, key.d, key.param
                    )));
                }
            }
            return Ok(hit);
        }
        self.bump(|s| s.misses += 1);
        let series = compute()?;
        if let Err(e) = self.store(&key, &series) {
            self.io_error
                .lock()
                .expect("io lock")
                .get_or_insert_with(|| format!("cache write in {}: {e}", self.dir.display()));
        }
        Ok(series)
    }
}

impl ColumnSource for CachedSource {
    fn gap_column(&self, d: u64, a: u64, n_max: usize) -> Result<TruncatedSeries> {
        self.fetch(CacheKey::gap(d, a, n_max), || {
            SeriesEngine.gap_column(d, a, n_max)
        })
    }

    fn residue_column(
        &self,
        variant: QVariant,
        d: u64,
        b: u64,
        n_max: usize,
    ) -> Result<TruncatedSeries> {
        self.fetch(CacheKey::residue(variant, d, b, n_max)?, || {
            SeriesEngine.residue_column(variant, d, b, n_max)
        })
    }
}
