//! Scan result cache keyed by (field descriptor hash, bound). Re-running
//! with a larger bound extends the cached rows instead of recomputing the
//! whole range; smaller bounds are served by truncation.

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use reduction_core::density::{scan, ScanOptions, ScanRow, ScanTarget};

use crate::config::ScanField;
use crate::output::{rows_from_csv, rows_to_csv};
use crate::CliError;

pub const CACHE_ENV: &str = "REDUCTION_SCOPE_CACHE";
const DEFAULT_DIR: &str = ".reduction-scope-cache";

pub fn cache_dir(config_dir: Option<&Path>) -> PathBuf {
    if let Ok(dir) = std::env::var(CACHE_ENV) {
        return PathBuf::from(dir);
    }
    config_dir
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_DIR))
}

/// Hash of everything that affects scan output for a field.
pub fn field_key(field: &ScanField) -> String {
    let mut hasher = Sha256::new();
    hasher.update(b"poly:");
    for c in field.field.defining_poly() {
        hasher.update(c.to_le_bytes());
    }
    hasher.update(b";k0:");
    if let Some(k0) = &field.k0 {
        for c in k0.defining_poly() {
            hasher.update(c.to_le_bytes());
        }
    }
    hasher.update([
        b';',
        field.galois as u8,
        field.galois_non_hodge_witt_rule as u8,
    ]);
    let digest = hasher.finalize();
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(serde::Serialize, serde::Deserialize)]
struct CacheMeta {
    bound: u64,
    label: String,
}

/// Rows for all primes <= bound, reusing and extending the cache when a
/// cache directory is given.
pub fn scan_with_cache(
    field: &ScanField,
    bound: u64,
    workers: usize,
    dir: Option<&Path>,
) -> Result<Vec<ScanRow>, CliError> {
    let target = ScanTarget {
        field: &field.field,
        k0: field.k0.as_ref(),
        galois: field.galois,
        galois_non_hodge_witt_rule: field.galois_non_hodge_witt_rule,
    };
    let fresh = |lo: u64| -> Result<Vec<ScanRow>, CliError> {
        let opts = ScanOptions::range(lo, bound).with_workers(workers);
        Ok(scan(&target, &opts).map_err(CliError::Core)?.rows)
    };
    let Some(dir) = dir else {
        return fresh(2);
    };
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Config(format!("cannot create cache dir {}: {e}", dir.display())))?;
    let key = field_key(field);
    let csv_path = dir.join(format!("{key}.csv"));
    let meta_path = dir.join(format!("{key}.meta.json"));

    let cached: Option<(CacheMeta, Vec<ScanRow>)> = match (
        std::fs::read_to_string(&meta_path),
        std::fs::read_to_string(&csv_path),
    ) {
        (Ok(meta), Ok(csv)) => {
            let meta: CacheMeta = serde_json::from_str(&meta)
                .map_err(|e| CliError::Config(format!("corrupt cache meta: {e}")))?;
            Some((meta, rows_from_csv(&csv)?))
        }
        _ => None,
    };

    let rows = match cached {
        Some((meta, rows)) if meta.bound >= bound => {
            return Ok(rows.into_iter().filter(|r| r.p <= bound).collect());
        }
        Some((meta, mut rows)) => {
            let extension = {
                let opts = ScanOptions::range(meta.bound + 1, bound).with_workers(workers);
                scan(&target, &opts).map_err(CliError::Core)?.rows
            };
            rows.extend(extension);
            rows
        }
        None => fresh(2)?,
    };

    std::fs::write(&csv_path, rows_to_csv(&rows))
        .map_err(|e| CliError::Config(format!("cannot write cache: {e}")))?;
    let meta = CacheMeta {
        bound,
        label: field.label.clone(),
    };
    std::fs::write(&meta_path, serde_json::to_string(&meta).unwrap())
        .map_err(|e| CliError::Config(format!("cannot write cache meta: {e}")))?;
    Ok(rows)
}
