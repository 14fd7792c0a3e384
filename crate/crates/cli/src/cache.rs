//! On-disk cache of character tables keyed by group descriptor.
//!
//! Entries are never trusted: loading rebuilds the conjugacy classes of the
//! live group and re-runs the orthogonality checks. A rejected entry is
//! recomputed and overwritten.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use gelfand_core::{character_table_with, CharacterTable, ChartabOptions, FiniteGroup};

pub const CACHE_ENV: &str = "GELFAND_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheStatus {
    Disabled,
    Hit,
    Miss,
    /// The stored entry failed validation and was replaced.
    Rejected(String),
}

#[derive(Debug, Clone, Default)]
pub struct TableCache {
    dir: Option<PathBuf>,
}

/// Platform default: `$XDG_CACHE_HOME/gelfand`, else `$HOME/.cache/gelfand`.
pub fn default_cache_dir(xdg_cache_home: Option<&str>, home: Option<&str>) -> Option<PathBuf> {
    match (xdg_cache_home, home) {
        (Some(xdg), _) if !xdg.is_empty() => Some(Path::new(xdg).join("gelfand")),
        (_, Some(home)) if !home.is_empty() => Some(Path::new(home).join(".cache").join("gelfand")),
        _ => None,
    }
}

/// `wr(Z2xZ2,2)` becomes `wr_LZ2xZ2_C2_R.chartab`.
pub fn file_name(descriptor: &str) -> String {
    let mut out = String::with_capacity(descriptor.len() + 8);
    for c in descriptor.chars() {
        match c {
            '(' => out.push_str("_L"),
            ')' => out.push_str("_R"),
            ',' => out.push_str("_C"),
            c if c.is_ascii_alphanumeric() => out.push(c),
            c => out.push_str(&format!("_u{:x}", c as u32)),
        }
    }
    out.push_str(".chartab");
    out
}

impl TableCache {
    pub fn disabled() -> Self {
        TableCache { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        TableCache {
            dir: Some(dir.into()),
        }
    }

    /// Flag first, then the environment variable, then the platform default.
    /// Clap already folds the variable into `flag`; `env` covers library use.
    pub fn resolve(flag: Option<PathBuf>) -> Self {
        let dir = flag
            .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
            .or_else(|| {
                default_cache_dir(
                    std::env::var("XDG_CACHE_HOME").ok().as_deref(),
                    std::env::var("HOME").ok().as_deref(),
                )
            });
        TableCache { dir }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn path_for(&self, descriptor: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(file_name(descriptor)))
    }

    /// Loads or computes the table of `group`, storing fresh results.
    pub fn character_table(
        &self,
        group: &FiniteGroup,
        opts: &ChartabOptions,
    ) -> gelfand_core::Result<(CharacterTable, CacheStatus)> {
        let Some(path) = self.path_for(group.descriptor()) else {
            return Ok((character_table_with(group, opts)?, CacheStatus::Disabled));
        };
        let mut status = CacheStatus::Miss;
        if opts.limits.chartab_order_limit < group.order() {
            // let the solver report the limit rather than loading past it
            return Ok((character_table_with(group, opts)?, status));
        }
        match fs::read_to_string(&path) {
            Ok(text) => match CharacterTable::from_cache_text(group, &text) {
                Ok(table) => {
                    log::debug!("cache hit {}", path.display());
                    return Ok((table, CacheStatus::Hit));
                }
                Err(e) => {
                    log::warn!("discarding cache entry {}: {e}", path.display());
                    status = CacheStatus::Rejected(e.to_string());
                }
            },
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => log::warn!("cannot read {}: {e}", path.display()),
        }
        let table = character_table_with(group, opts)?;
        if let Err(e) = write_atomically(&path, &table.to_cache_text()) {
            log::warn!("cannot write {}: {e}", path.display());
        }
        Ok((table, status))
    }
}

fn write_atomically(path: &Path, text: &str) -> io::Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)
}
