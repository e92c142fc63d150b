use std::fmt;
use std::path::{Path, PathBuf};

use crate::args::ConfigFile;

/// Bad keys, unreadable files or missing required values.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

pub fn config_error(msg: impl Into<String>) -> anyhow::Error {
    ConfigError(msg.into()).into()
}

pub struct Loaded {
    pub file: ConfigFile,
    /// Directory that relative paths in the file resolve against.
    pub base: PathBuf,
}

pub fn load(path: Option<&Path>) -> anyhow::Result<Loaded> {
    let Some(path) = path else {
        return Ok(Loaded {
            file: ConfigFile::default(),
            base: PathBuf::from("."),
        });
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| config_error(format!("cannot read config {}: {e}", path.display())))?;
    let file: ConfigFile = toml::from_str(&text)
        .map_err(|e| config_error(format!("bad config {}: {e}", path.display())))?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok(Loaded { file, base })
}

/// Fills unset flags from the config table. Paths from the file are
/// resolved against its directory.
macro_rules! merge {
    ($flags:expr, $table:expr, $base:expr; [$($f:ident),*]; [$($p:ident),*]) => {{
        let table = $table.unwrap_or_default();
        $( $flags.$f = $flags.$f.take().or(table.$f); )*
        $( $flags.$p = $flags.$p.take().or(table.$p.map(|p| $base.join(p))); )*
    }};
}
pub(crate) use merge;

pub fn required<T>(value: Option<T>, name: &str) -> anyhow::Result<T> {
    value.ok_or_else(|| config_error(format!("missing required value `{name}`")))
}
