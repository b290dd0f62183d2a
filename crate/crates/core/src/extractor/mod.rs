//! Python source facts and typed dependency edges.

mod discover;
mod edges;
mod resolve;
mod syntax;

pub use discover::{discover_files, EXCLUDED_DIRS};
pub use edges::{extract_edges, ClassRegistry};
pub use resolve::{resolve_import, resolve_module, FileSet};
pub use syntax::{
    parse_source, Binding, CallSite, ClassDef, DefKind, ImportKind, ImportSpec, ModuleSyntax, SymbolKind, TopLevelDef,
};
