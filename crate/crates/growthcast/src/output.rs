use std::io::Write;
use std::path::Path;

use crate::CliError;

/// Writes `contents` to `target`, or to standard output for `-`. Files are
/// written to a temporary sibling and renamed into place, so a failed run
/// never leaves a partial file.
pub fn write_output(target: &str, contents: &[u8]) -> Result<(), CliError> {
    if target == "-" {
        let mut out = std::io::stdout().lock();
        return out.write_all(contents).and_then(|()| out.flush()).map_err(|source| CliError::Write {
            path: "<stdout>".into(),
            source,
        });
    }
    write_atomically(Path::new(target), contents)
}

pub fn write_atomically(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let err = |source| CliError::Write { path: path.to_owned(), source };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(err)?;
    tmp.write_all(contents).map_err(err)?;
    tmp.as_file().sync_all().map_err(err)?;
    tmp.persist(path).map_err(|e| err(e.error))?;
    Ok(())
}
