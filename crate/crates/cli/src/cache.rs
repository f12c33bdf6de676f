//! Optional on-disk memo of ₃F₂(1) evaluations.
//!
//! Keys are the exact rational parameters together with every setting that
//! can change the result (tolerance bits, budgets, strategy), so a cached
//! value is bit-identical to a fresh one. Values are stored as `f64` bit
//! patterns. A file with a different format version is ignored; deleting the
//! file is always safe.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use anyhow::Context as _;
use fermat_core::special::{
    hyp3f2_unit, EvalConfig, EvalResult, Hyp3F2Params, Hyp3F2Source, Strategy,
};
use serde::{Deserialize, Serialize};

/// Bumped whenever keys or evaluator numerics change.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
struct Entry {
    value: u64,
    err: u64,
    effort: u64,
    strategy: u8,
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    entries: BTreeMap<String, Entry>,
}

fn strategy_code(s: Strategy) -> u8 {
    match s {
        Strategy::KernelQuadrature => 0,
        Strategy::AcceleratedSeries => 1,
        Strategy::BothCrossCheck => 2,
    }
}

fn strategy_from(code: u8) -> Option<Strategy> {
    match code {
        0 => Some(Strategy::KernelQuadrature),
        1 => Some(Strategy::AcceleratedSeries),
        2 => Some(Strategy::BothCrossCheck),
        _ => None,
    }
}

fn key(p: &Hyp3F2Params, cfg: &EvalConfig) -> String {
    let [a1, a2, a3] = p.a();
    let [b1, b2] = p.b();
    format!(
        "{a1},{a2},{a3};{b1},{b2}|{:016x}|{}|{}|{}",
        cfg.tol.to_bits(),
        cfg.max_terms,
        cfg.quad_depth,
        cfg.strategy.name()
    )
}

/// [`Hyp3F2Source`] that memoises evaluations, optionally backed by a file.
#[derive(Debug)]
pub struct CachedSource {
    cfg: EvalConfig,
    path: Option<PathBuf>,
    entries: Mutex<BTreeMap<String, Entry>>,
    hits: Mutex<u64>,
}

impl CachedSource {
    /// In-memory memo only.
    pub fn new(cfg: EvalConfig) -> Self {
        CachedSource {
            cfg,
            path: None,
            entries: Mutex::new(BTreeMap::new()),
            hits: Mutex::new(0),
        }
    }

    /// Loads `path` if it exists and has the current version; unreadable or
    /// stale files start an empty memo.
    pub fn with_file(cfg: EvalConfig, path: &Path) -> Self {
        let entries = fs::read(path)
            .ok()
            .and_then(|bytes| serde_json::from_slice::<CacheFile>(&bytes).ok())
            .filter(|f| f.version == FORMAT_VERSION)
            .map(|f| f.entries)
            .unwrap_or_default();
        CachedSource {
            cfg,
            path: Some(path.to_owned()),
            entries: Mutex::new(entries),
            hits: Mutex::new(0),
        }
    }

    /// Number of stored evaluations.
    pub fn len(&self) -> usize {
        self.entries.lock().unwrap().len()
    }

    /// True when nothing is stored.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Lookups answered from the memo.
    pub fn hits(&self) -> u64 {
        *self.hits.lock().unwrap()
    }

    /// Writes the memo back to its file, if any, via a temporary file and
    /// rename.
    pub fn save(&self) -> anyhow::Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let file = CacheFile {
            version: FORMAT_VERSION,
            entries: self.entries.lock().unwrap().clone(),
        };
        let tmp = path.with_extension("tmp");
        let mut out =
            fs::File::create(&tmp).with_context(|| format!("creating {}", tmp.display()))?;
        serde_json::to_writer(&mut out, &file)?;
        out.write_all(b"\n")?;
        drop(out);
        fs::rename(&tmp, path).with_context(|| format!("writing {}", path.display()))?;
        Ok(())
    }
}

impl Hyp3F2Source for CachedSource {
    fn config(&self) -> &EvalConfig {
        &self.cfg
    }

    fn hyp3f2(&self, params: &Hyp3F2Params, tol: f64) -> fermat_core::Result<EvalResult> {
        let cfg = EvalConfig { tol, ..self.cfg };
        let k = key(params, &cfg);
        if let Some(e) = self.entries.lock().unwrap().get(&k).copied() {
            if let Some(strategy) = strategy_from(e.strategy) {
                *self.hits.lock().unwrap() += 1;
                return Ok(EvalResult {
                    value: f64::from_bits(e.value),
                    err: f64::from_bits(e.err),
                    effort: e.effort,
                    strategy,
                });
            }
        }
        // Evaluated outside the lock; a racing duplicate stores the same bits.
        let r = hyp3f2_unit(params, &cfg)?;
        self.entries.lock().unwrap().insert(
            k,
            Entry {
                value: r.value.to_bits(),
                err: r.err.to_bits(),
                effort: r.effort,
                strategy: strategy_code(r.strategy),
            },
        );
        Ok(r)
    }
}
