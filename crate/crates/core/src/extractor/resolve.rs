use std::collections::HashSet;

use crate::extractor::syntax::{ImportKind, ImportSpec};
use crate::path::ModulePath;

pub type FileSet = HashSet<ModulePath>;

/// Directory segments a dotted module name starts from. `None` when a
/// relative import climbs above the repo root.
fn anchor<'a>(dotted: &'a str, level: u32, importer: &'a ModulePath) -> Option<Vec<&'a str>> {
    let mut segs: Vec<&str> = Vec::new();
    if level > 0 {
        let dir = importer.dir();
        if !dir.is_empty() {
            segs.extend(dir.split('/'));
        }
        for _ in 1..level {
            segs.pop()?;
        }
    }
    segs.extend(dotted.split('.').filter(|s| !s.is_empty()));
    Some(segs)
}

/// Module file for `dotted` (with `level` leading dots) seen from `importer`:
/// `a/b/c.py`, then `a/b/c/__init__.py`.
pub fn resolve_module(dotted: &str, level: u32, importer: &ModulePath, files: &FileSet) -> Option<ModulePath> {
    let segs = anchor(dotted, level, importer)?;
    let base = segs.join("/");
    let candidates = if base.is_empty() {
        vec!["__init__.py".to_string()]
    } else {
        vec![format!("{base}.py"), format!("{base}/__init__.py")]
    };
    candidates
        .into_iter()
        .filter_map(|c| ModulePath::new(c).ok())
        .find(|p| files.contains(p))
}

fn join_dotted(base: &str, name: &str) -> String {
    if base.is_empty() {
        name.to_string()
    } else {
        format!("{base}.{name}")
    }
}

/// Every repo file an import statement refers to. A from-import may name
/// several submodules, so more than one target is possible; each name is
/// tried as a submodule before falling back to the base module.
pub fn resolve_import(spec: &ImportSpec, importer: &ModulePath, files: &FileSet) -> Vec<ModulePath> {
    let level = spec.relative_level;
    let mut out = Vec::new();
    match spec.kind {
        ImportKind::PlainImport => {
            out.extend(resolve_module(&spec.dotted_target, level, importer, files));
        }
        ImportKind::FromImport => {
            let mut need_base = spec.is_star();
            for name in spec.imported_names.iter().filter(|n| *n != "*") {
                let sub = join_dotted(&spec.dotted_target, name);
                match resolve_module(&sub, level, importer, files) {
                    Some(p) => out.push(p),
                    None => need_base = true,
                }
            }
            if need_base {
                out.extend(resolve_module(&spec.dotted_target, level, importer, files));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}
