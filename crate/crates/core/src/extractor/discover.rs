use std::fs;
use std::path::Path;

use walkdir::{DirEntry, WalkDir};

use crate::error::{Error, Result};
use crate::path::ModulePath;

/// Directory names never descended into, besides anything starting with `.`.
pub const EXCLUDED_DIRS: &[&str] = &["venv", "node_modules", "__pycache__", "build", "dist"];

fn excluded(entry: &DirEntry) -> bool {
    if entry.depth() == 0 || !entry.file_type().is_dir() {
        return false;
    }
    let name = entry.file_name().to_string_lossy();
    name.starts_with('.') || EXCLUDED_DIRS.contains(&name.as_ref())
}

/// Sorted list of non-empty `.py` files under `root`.
///
/// Files whose content is only whitespace are skipped: they carry no facts,
/// no chunks, and would otherwise inflate the node count with empty package
/// markers.
pub fn discover_files(root: &Path) -> Result<Vec<ModulePath>> {
    fs::read_dir(root).map_err(|e| Error::io(root, e))?;

    let mut out = Vec::new();
    for entry in WalkDir::new(root)
        .follow_links(false)
        .into_iter()
        .filter_entry(|e| !excluded(e))
    {
        let entry = entry.map_err(|e| {
            let path = e.path().unwrap_or(root).to_path_buf();
            let io = e
                .into_io_error()
                .unwrap_or_else(|| std::io::Error::other("directory walk failed"));
            Error::io(path, io)
        })?;
        if !entry.file_type().is_file() {
            continue;
        }
        let path = entry.path();
        if path.extension().and_then(|e| e.to_str()) != Some("py") {
            continue;
        }
        let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
        if bytes.iter().all(u8::is_ascii_whitespace) {
            continue;
        }
        let rel = path.strip_prefix(root).expect("walkdir yields paths under root");
        let rel: Vec<_> = rel.components().map(|c| c.as_os_str().to_string_lossy()).collect();
        out.push(ModulePath::new(rel.join("/"))?);
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(root: &Path, rel: &str, body: &str) {
        let p = root.join(rel);
        fs::create_dir_all(p.parent().unwrap()).unwrap();
        fs::write(p, body).unwrap();
    }

    #[test]
    fn lists_sorted_and_skips_excluded() {
        let tmp = tempfile::tempdir().unwrap();
        let root = tmp.path();
        write(root, "tests/conftest.py", "x = 1\n");
        write(root, "app/main.py", "x = 1\n");
        write(root, ".venv/lib/x.py", "x = 1\n");
        write(root, "venv/y.py", "x = 1\n");
        write(root, "app/__pycache__/z.py", "x = 1\n");
        write(root, "app/.hidden/z.py", "x = 1\n");
        write(root, "app/__init__.py", "\n  \n");
        write(root, "app/notes.txt", "x");

        let files = discover_files(root).unwrap();
        let names: Vec<_> = files.iter().map(|p| p.as_str()).collect();
        assert_eq!(names, ["app/main.py", "tests/conftest.py"]);
    }

    #[test]
    fn missing_root_is_io_error() {
        let err = discover_files(Path::new("/definitely/not/here")).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }
}
