//! On-disk cache of command outputs, enabled by `SUSYMS_CACHE_DIR`.

use std::path::PathBuf;

pub const CACHE_ENV: &str = "SUSYMS_CACHE_DIR";

/// Cache directory for the current schema version, if configured.
pub fn cache_dir() -> Option<PathBuf> {
    let d = std::env::var_os(CACHE_ENV)?;
    if d.is_empty() {
        return None;
    }
    Some(PathBuf::from(d).join(format!("v{}", crate::report::SCHEMA)))
}

fn key_path(key: &str) -> Option<PathBuf> {
    let name: String = key.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect();
    Some(cache_dir()?.join(format!("{name}.out")))
}

/// Stored `(exit code, stdout)` for a key.
pub fn load(key: &str) -> Option<(i32, String)> {
    let text = std::fs::read_to_string(key_path(key)?).ok()?;
    let (code, body) = text.split_once('\n')?;
    Some((code.trim().parse().ok()?, body.to_string()))
}

/// Best-effort store; cache failures never affect the command.
pub fn store(key: &str, code: i32, out: &str) {
    if let Some(p) = key_path(key) {
        if let Some(parent) = p.parent() {
            let _ = std::fs::create_dir_all(parent);
        }
        let _ = std::fs::write(p, format!("{code}\n{out}"));
    }
}
