use std::collections::{BTreeSet, HashMap, HashSet};

use crate::extractor::resolve::{resolve_import, resolve_module, FileSet};
use crate::extractor::syntax::{Binding, ModuleSyntax};
use crate::graph::{DependencyEdge, EdgeKind};
use crate::path::ModulePath;

const MAX_REEXPORT_DEPTH: usize = 8;

/// Classes per file plus the name bindings needed to follow dotted
/// references and re-exports across files.
pub struct ClassRegistry<'a> {
    files: FileSet,
    modules: HashMap<&'a ModulePath, &'a ModuleSyntax>,
    classes: HashMap<&'a ModulePath, HashSet<&'a str>>,
    follow_reexports: bool,
}

impl<'a> ClassRegistry<'a> {
    pub fn build(files: &[ModulePath], syntaxes: &'a [ModuleSyntax]) -> Self {
        let mut modules = HashMap::new();
        let mut classes: HashMap<&ModulePath, HashSet<&str>> = HashMap::new();
        for s in syntaxes {
            modules.insert(&s.path, s);
            let set = classes.entry(&s.path).or_default();
            set.extend(s.class_defs.iter().filter_map(|c| c.qualname.as_deref()));
        }
        ClassRegistry {
            files: files.iter().cloned().collect(),
            modules,
            classes,
            follow_reexports: true,
        }
    }

    /// Only accept classes defined in the module a name is imported from.
    pub fn without_reexports(mut self) -> Self {
        self.follow_reexports = false;
        self
    }

    pub fn files(&self) -> &FileSet {
        &self.files
    }

    pub fn is_class(&self, file: &ModulePath, qualname: &str) -> bool {
        self.classes.get(file).is_some_and(|s| s.contains(qualname))
    }

    /// File defining the class that `dotted` names when written in `file`.
    pub fn resolve_class(&self, file: &ModulePath, dotted: &str) -> Option<ModulePath> {
        self.resolve_in(file, dotted, 0, true)
    }

    fn resolve_in(&self, file: &ModulePath, dotted: &str, depth: usize, origin: bool) -> Option<ModulePath> {
        if depth > MAX_REEXPORT_DEPTH || !is_dotted_name(dotted) {
            return None;
        }
        if self.is_class(file, dotted) {
            return Some(file.clone());
        }
        if !origin && !self.follow_reexports {
            return None;
        }
        let module = self.modules.get(file)?;
        let mut parts = dotted.split('.');
        let head = parts.next()?;
        let rest: Vec<&str> = parts.collect();
        let (full, level, min_prefix) = match module.name_bindings.get(head)? {
            Binding::Local(_) => return None,
            Binding::Module { dotted, level } => {
                let base = split_dotted(dotted);
                let n = base.len();
                (concat(base, &rest), *level, n)
            }
            Binding::Symbol { dotted, level, name } => {
                let mut base = split_dotted(dotted);
                let n = base.len();
                base.push(name.as_str());
                (concat(base, &rest), *level, n)
            }
        };
        for k in (min_prefix..full.len()).rev() {
            if let Some(target) = resolve_module(&full[..k].join("."), level, file, &self.files) {
                return self.resolve_in(&target, &full[k..].join("."), depth + 1, false);
            }
        }
        None
    }
}

fn split_dotted(dotted: &str) -> Vec<&str> {
    dotted.split('.').filter(|s| !s.is_empty()).collect()
}

fn concat<'s>(mut base: Vec<&'s str>, rest: &[&'s str]) -> Vec<&'s str> {
    base.extend_from_slice(rest);
    base
}

fn is_dotted_name(s: &str) -> bool {
    !s.is_empty()
        && s.split('.').all(|part| {
            let mut chars = part.chars();
            matches!(chars.next(), Some(c) if c == '_' || c.is_alphabetic())
                && chars.all(|c| c == '_' || c.is_alphanumeric())
        })
}

/// `Generic[T]` -> `Generic`.
fn base_reference(base: &str) -> &str {
    base.split('[').next().unwrap_or(base).trim()
}

/// Typed edges out of one file, sorted and deduplicated.
pub fn extract_edges(syntax: &ModuleSyntax, registry: &ClassRegistry<'_>) -> Vec<DependencyEdge> {
    let src = &syntax.path;
    let mut out = BTreeSet::new();
    let mut push = |target: ModulePath, kind: EdgeKind| {
        if &target != src {
            out.insert(DependencyEdge {
                source: src.clone(),
                target,
                kind,
            });
        }
    };

    for spec in &syntax.imports {
        for target in resolve_import(spec, src, registry.files()) {
            push(target, EdgeKind::Imports);
        }
    }
    for class in &syntax.class_defs {
        for base in &class.bases {
            if let Some(target) = registry.resolve_class(src, base_reference(base)) {
                push(target, EdgeKind::Inherits);
            }
        }
    }
    for call in &syntax.call_sites {
        let reference = call.class_ref.as_deref().unwrap_or(&call.callee);
        if let Some(target) = registry.resolve_class(src, reference) {
            push(target, EdgeKind::Instantiates);
        }
    }
    out.into_iter().collect()
}
