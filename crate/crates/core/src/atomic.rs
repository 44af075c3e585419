//! Write-to-temp-then-rename file output, so a failed write never leaves a
//! partial file at the destination.

use std::io::Write;
use std::path::Path;

use crate::error::{QuizError, Result};

pub fn write(path: &Path, bytes: &[u8]) -> Result<()> {
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::Builder::new()
        .prefix(".quizgen-")
        .suffix(".tmp")
        .tempfile_in(parent)
        .map_err(|e| QuizError::io(path, e))?;
    tmp.write_all(bytes).map_err(|e| QuizError::io(path, e))?;
    tmp.flush().map_err(|e| QuizError::io(path, e))?;
    tmp.persist(path).map_err(|e| QuizError::io(path, e.error))?;
    Ok(())
}
