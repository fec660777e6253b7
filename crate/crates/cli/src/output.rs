//! Artifact writing: every file appears complete or not at all.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use tempfile::NamedTempFile;

use crate::{internal, CliError};

type Render<'a> = Box<dyn FnOnce(&mut dyn Write) -> io::Result<()> + 'a>;

/// Files written to temporaries next to their targets and renamed into
/// place only after all of them rendered successfully.
#[derive(Default)]
pub struct Artifacts<'a> {
    items: Vec<(Option<PathBuf>, Render<'a>)>,
}

impl<'a> Artifacts<'a> {
    /// Queues an artifact; `None` means stdout.
    pub fn add(&mut self, path: Option<&Path>, render: impl FnOnce(&mut dyn Write) -> io::Result<()> + 'a) -> &mut Self {
        self.items.push((path.map(Path::to_path_buf), Box::new(render)));
        self
    }

    pub fn commit(self) -> Result<(), CliError> {
        let mut staged = Vec::new();
        for (path, render) in self.items {
            match path {
                None => {
                    let stdout = io::stdout();
                    let mut w = BufWriter::new(stdout.lock());
                    render(&mut w).and_then(|_| w.flush()).map_err(internal)?;
                }
                Some(path) => {
                    let dir = parent_dir(&path);
                    let tmp = NamedTempFile::new_in(&dir)
                        .map_err(|e| internal(anyhow::anyhow!("cannot create a file in {}: {e}", dir.display())))?;
                    let mut w = BufWriter::new(tmp);
                    render(&mut w).and_then(|_| w.flush()).map_err(internal)?;
                    let tmp = w.into_inner().map_err(|e| internal(e.into_error()))?;
                    staged.push((tmp, path));
                }
            }
        }
        for (tmp, path) in staged {
            tmp.persist(&path).map_err(|e| internal(anyhow::anyhow!("cannot write {}: {}", path.display(), e.error)))?;
        }
        Ok(())
    }
}

pub fn parent_dir(path: &Path) -> PathBuf {
    match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    }
}

/// Writes a directory of files through a staging directory beside `out`.
pub fn write_dir(out: &Path, fill: impl FnOnce(&Path) -> Result<(), CliError>) -> Result<(), CliError> {
    let parent = parent_dir(out);
    fs::create_dir_all(&parent).map_err(internal)?;
    let staging = tempfile::Builder::new().prefix(".provkernel-").tempdir_in(&parent).map_err(internal)?;
    fill(staging.path())?;
    fs::create_dir_all(out).map_err(internal)?;
    for entry in fs::read_dir(staging.path()).map_err(internal)? {
        let entry = entry.map_err(internal)?;
        fs::rename(entry.path(), out.join(entry.file_name())).map_err(internal)?;
    }
    Ok(())
}

pub fn json_line<T: serde::Serialize>(w: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *w, value)?;
    writeln!(w)
}

pub fn json_pretty<T: serde::Serialize>(w: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, value)?;
    writeln!(w)
}
