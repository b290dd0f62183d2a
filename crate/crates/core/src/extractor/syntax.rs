use std::collections::{BTreeMap, HashMap};

use rustpython_parser::ast::{self, Expr, Ranged, Stmt};
use rustpython_parser::{parse, Mode};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::path::ModulePath;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ImportKind {
    PlainImport,
    FromImport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImportSpec {
    pub kind: ImportKind,
    /// Dotted module text after the leading dots; empty for `from . import x`.
    pub dotted_target: String,
    pub relative_level: u32,
    /// Names after `import` in a from-import; `*` for star imports.
    pub imported_names: Vec<String>,
    pub line: usize,
}

impl ImportSpec {
    pub fn is_star(&self) -> bool {
        self.kind == ImportKind::FromImport && self.imported_names.iter().any(|n| n == "*")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDef {
    pub name: String,
    /// Base expressions verbatim, keywords such as `metaclass=` excluded.
    pub bases: Vec<String>,
    /// Attribute path from module scope (`Outer.Inner`); absent for classes
    /// defined inside a function body.
    pub qualname: Option<String>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CallSite {
    pub callee: String,
    /// Set when the callee is a name annotated `Type[X]` in an enclosing
    /// scope; holds `X` verbatim.
    pub class_ref: Option<String>,
    pub line: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymbolKind {
    Class,
    Function,
    Other,
}

/// Where a local name comes from. Import origins stay unresolved here; the
/// resolver maps them to files once the full file set is known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Binding {
    Local(SymbolKind),
    Module { dotted: String, level: u32 },
    Symbol { dotted: String, level: u32, name: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DefKind {
    Function,
    Class,
}

/// A top-level `def` / `class`, byte span starting at the line of its first
/// decorator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopLevelDef {
    pub name: String,
    pub kind: DefKind,
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSyntax {
    pub path: ModulePath,
    pub imports: Vec<ImportSpec>,
    pub class_defs: Vec<ClassDef>,
    pub call_sites: Vec<CallSite>,
    pub name_bindings: BTreeMap<String, Binding>,
    pub definitions: Vec<TopLevelDef>,
}

impl ModuleSyntax {
    pub fn empty(path: ModulePath) -> Self {
        ModuleSyntax {
            path,
            imports: Vec::new(),
            class_defs: Vec::new(),
            call_sites: Vec::new(),
            name_bindings: BTreeMap::new(),
            definitions: Vec::new(),
        }
    }
}

pub(crate) struct LineIndex {
    starts: Vec<usize>,
}

impl LineIndex {
    pub(crate) fn new(src: &str) -> Self {
        let mut starts = vec![0];
        starts.extend(src.match_indices('\n').map(|(i, _)| i + 1));
        LineIndex { starts }
    }

    /// 1-based line of a byte offset.
    pub(crate) fn line(&self, offset: usize) -> usize {
        self.starts.partition_point(|&s| s <= offset)
    }

    pub(crate) fn line_start(&self, offset: usize) -> usize {
        self.starts[self.line(offset) - 1]
    }
}

pub fn parse_source(source_text: &str, path: &ModulePath) -> Result<ModuleSyntax> {
    let module = parse(source_text, Mode::Module, path.as_str()).map_err(|e| {
        let offset = usize::from(e.offset).min(source_text.len());
        Error::Parse {
            path: path.to_string(),
            line: LineIndex::new(source_text).line(offset),
            message: e.error.to_string(),
        }
    })?;
    let body = match module {
        ast::Mod::Module(m) => m.body,
        _ => Vec::new(),
    };

    let mut w = Walker {
        src: source_text,
        lines: LineIndex::new(source_text),
        out: ModuleSyntax::empty(path.clone()),
        scopes: vec![Scope::new(ScopeKind::Module)],
        class_path: Some(Vec::new()),
    };
    for stmt in &body {
        w.record_top_level(stmt);
    }
    w.stmts(&body);
    Ok(w.out)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ScopeKind {
    Module,
    Function,
    Class,
}

struct Scope {
    kind: ScopeKind,
    /// name -> `Some(X)` when annotated `Type[X]`, `None` when bound otherwise.
    typed: HashMap<String, Option<String>>,
}

impl Scope {
    fn new(kind: ScopeKind) -> Self {
        Scope {
            kind,
            typed: HashMap::new(),
        }
    }
}

struct Walker<'a> {
    src: &'a str,
    lines: LineIndex,
    out: ModuleSyntax,
    scopes: Vec<Scope>,
    /// Enclosing class names while every enclosing scope is a class;
    /// `None` inside functions.
    class_path: Option<Vec<String>>,
}

impl Walker<'_> {
    fn text<T: Ranged>(&self, node: &T) -> String {
        let r = node.range();
        self.src[usize::from(r.start())..usize::from(r.end())].to_string()
    }

    fn line_of<T: Ranged>(&self, node: &T) -> usize {
        self.lines.line(usize::from(node.range().start()))
    }

    fn record_top_level(&mut self, stmt: &Stmt) {
        let (name, kind, decorators) = match stmt {
            Stmt::FunctionDef(f) => (f.name.to_string(), DefKind::Function, &f.decorator_list),
            Stmt::AsyncFunctionDef(f) => (f.name.to_string(), DefKind::Function, &f.decorator_list),
            Stmt::ClassDef(c) => (c.name.to_string(), DefKind::Class, &c.decorator_list),
            _ => return,
        };
        let first = decorators
            .iter()
            .map(|d| usize::from(d.range().start()))
            .chain(std::iter::once(usize::from(stmt.range().start())))
            .min()
            .unwrap_or(0);
        self.out.definitions.push(TopLevelDef {
            name,
            kind,
            start: self.lines.line_start(first),
            end: usize::from(stmt.range().end()),
        });
    }

    fn bind(&mut self, name: &str, binding: Binding) {
        self.out.name_bindings.insert(name.to_string(), binding);
    }

    fn at_module_scope(&self) -> bool {
        self.scopes.len() == 1
    }

    fn set_typed(&mut self, name: &str, annotation: Option<&Expr>) {
        let class_ref = annotation.and_then(type_of_class);
        let class_ref = class_ref.map(|e| self.text(e));
        let scope = self.scopes.last_mut().expect("module scope always present");
        match class_ref {
            Some(x) => {
                scope.typed.insert(name.to_string(), Some(x));
            }
            None => {
                scope.typed.entry(name.to_string()).or_insert(None);
            }
        }
    }

    fn lookup_typed(&self, name: &str) -> Option<String> {
        let innermost = self.scopes.len() - 1;
        for (i, scope) in self.scopes.iter().enumerate().rev() {
            if scope.kind == ScopeKind::Class && i != innermost {
                continue;
            }
            if let Some(v) = scope.typed.get(name) {
                return v.clone();
            }
        }
        None
    }

    fn stmts(&mut self, body: &[Stmt]) {
        for s in body {
            self.stmt(s);
        }
    }

    fn stmt(&mut self, stmt: &Stmt) {
        match stmt {
            Stmt::FunctionDef(f) => self.function(&f.name, &f.args, &f.body, &f.decorator_list, f.returns.as_deref()),
            Stmt::AsyncFunctionDef(f) => {
                self.function(&f.name, &f.args, &f.body, &f.decorator_list, f.returns.as_deref())
            }
            Stmt::ClassDef(c) => self.class(c),
            Stmt::Return(s) => self.opt_expr(s.value.as_deref()),
            Stmt::Delete(s) => self.exprs(&s.targets),
            Stmt::Assign(s) => {
                for t in &s.targets {
                    if let Expr::Name(n) = t {
                        self.set_typed(&n.id, None);
                    }
                }
                self.exprs(&s.targets);
                self.expr(&s.value);
            }
            Stmt::TypeAlias(s) => {
                self.expr(&s.name);
                self.expr(&s.value);
            }
            Stmt::AugAssign(s) => {
                self.expr(&s.target);
                self.expr(&s.value);
            }
            Stmt::AnnAssign(s) => {
                if let Expr::Name(n) = s.target.as_ref() {
                    self.set_typed(&n.id, Some(&s.annotation));
                }
                self.expr(&s.target);
                self.expr(&s.annotation);
                self.opt_expr(s.value.as_deref());
            }
            Stmt::For(s) => {
                self.expr(&s.target);
                self.expr(&s.iter);
                self.stmts(&s.body);
                self.stmts(&s.orelse);
            }
            Stmt::AsyncFor(s) => {
                self.expr(&s.target);
                self.expr(&s.iter);
                self.stmts(&s.body);
                self.stmts(&s.orelse);
            }
            Stmt::While(s) => {
                self.expr(&s.test);
                self.stmts(&s.body);
                self.stmts(&s.orelse);
            }
            Stmt::If(s) => {
                self.expr(&s.test);
                self.stmts(&s.body);
                self.stmts(&s.orelse);
            }
            Stmt::With(s) => {
                for item in &s.items {
                    self.expr(&item.context_expr);
                    self.opt_expr(item.optional_vars.as_deref());
                }
                self.stmts(&s.body);
            }
            Stmt::AsyncWith(s) => {
                for item in &s.items {
                    self.expr(&item.context_expr);
                    self.opt_expr(item.optional_vars.as_deref());
                }
                self.stmts(&s.body);
            }
            Stmt::Match(s) => {
                self.expr(&s.subject);
                for case in &s.cases {
                    self.pattern(&case.pattern);
                    self.opt_expr(case.guard.as_deref());
                    self.stmts(&case.body);
                }
            }
            Stmt::Raise(s) => {
                self.opt_expr(s.exc.as_deref());
                self.opt_expr(s.cause.as_deref());
            }
            Stmt::Try(s) => {
                self.stmts(&s.body);
                self.handlers(&s.handlers);
                self.stmts(&s.orelse);
                self.stmts(&s.finalbody);
            }
            Stmt::TryStar(s) => {
                self.stmts(&s.body);
                self.handlers(&s.handlers);
                self.stmts(&s.orelse);
                self.stmts(&s.finalbody);
            }
            Stmt::Assert(s) => {
                self.expr(&s.test);
                self.opt_expr(s.msg.as_deref());
            }
            Stmt::Import(s) => self.import(s),
            Stmt::ImportFrom(s) => self.import_from(s),
            Stmt::Expr(s) => self.expr(&s.value),
            Stmt::Global(_) | Stmt::Nonlocal(_) | Stmt::Pass(_) | Stmt::Break(_) | Stmt::Continue(_) => {}
        }
    }

    fn handlers(&mut self, handlers: &[ast::ExceptHandler]) {
        for h in handlers {
            let ast::ExceptHandler::ExceptHandler(h) = h;
            self.opt_expr(h.type_.as_deref());
            self.stmts(&h.body);
        }
    }

    fn import(&mut self, s: &ast::StmtImport) {
        let line = self.line_of(s);
        for alias in &s.names {
            let dotted = alias.name.to_string();
            self.out.imports.push(ImportSpec {
                kind: ImportKind::PlainImport,
                dotted_target: dotted.clone(),
                relative_level: 0,
                imported_names: Vec::new(),
                line,
            });
            match &alias.asname {
                Some(as_name) => self.bind(as_name, Binding::Module { dotted, level: 0 }),
                None => {
                    let head = dotted.split('.').next().unwrap_or(&dotted).to_string();
                    self.bind(&head.clone(), Binding::Module { dotted: head, level: 0 });
                }
            }
        }
    }

    fn import_from(&mut self, s: &ast::StmtImportFrom) {
        let dotted = s.module.as_ref().map(|m| m.to_string()).unwrap_or_default();
        let level = s.level.map(|l| l.to_u32()).unwrap_or(0);
        let names: Vec<String> = s.names.iter().map(|a| a.name.to_string()).collect();
        self.out.imports.push(ImportSpec {
            kind: ImportKind::FromImport,
            dotted_target: dotted.clone(),
            relative_level: level,
            imported_names: names,
            line: self.line_of(s),
        });
        for alias in &s.names {
            if alias.name.as_str() == "*" {
                continue;
            }
            let local = alias.asname.as_ref().unwrap_or(&alias.name).to_string();
            self.bind(
                &local,
                Binding::Symbol {
                    dotted: dotted.clone(),
                    level,
                    name: alias.name.to_string(),
                },
            );
        }
    }

    fn function(
        &mut self,
        name: &ast::Identifier,
        args: &ast::Arguments,
        body: &[Stmt],
        decorators: &[Expr],
        returns: Option<&Expr>,
    ) {
        self.exprs(decorators);
        self.arguments_outer(args);
        self.opt_expr(returns);
        if self.at_module_scope() {
            self.bind(name, Binding::Local(SymbolKind::Function));
        }
        self.set_typed(name, None);

        self.scopes.push(Scope::new(ScopeKind::Function));
        for arg in all_args(args) {
            self.set_typed(&arg.arg, arg.annotation.as_deref());
        }
        let saved = self.class_path.take();
        self.stmts(body);
        self.class_path = saved;
        self.scopes.pop();
    }

    /// Defaults and annotations are evaluated in the enclosing scope.
    fn arguments_outer(&mut self, args: &ast::Arguments) {
        for a in args.posonlyargs.iter().chain(&args.args).chain(&args.kwonlyargs) {
            self.opt_expr(a.def.annotation.as_deref());
            self.opt_expr(a.default.as_deref());
        }
        for a in args.vararg.iter().chain(args.kwarg.iter()) {
            self.opt_expr(a.annotation.as_deref());
        }
    }

    fn class(&mut self, c: &ast::StmtClassDef) {
        self.exprs(&c.decorator_list);
        self.exprs(&c.bases);
        for kw in &c.keywords {
            self.expr(&kw.value);
        }
        let bases = c.bases.iter().map(|b| self.text(b)).collect();
        let qualname = self.class_path.as_ref().map(|path| {
            let mut q = path.join(".");
            if !q.is_empty() {
                q.push('.');
            }
            q.push_str(&c.name);
            q
        });
        self.out.class_defs.push(ClassDef {
            name: c.name.to_string(),
            bases,
            qualname,
            line: self.line_of(c),
        });
        if self.at_module_scope() {
            self.bind(&c.name, Binding::Local(SymbolKind::Class));
        }
        self.set_typed(&c.name, None);

        self.scopes.push(Scope::new(ScopeKind::Class));
        if let Some(path) = self.class_path.as_mut() {
            path.push(c.name.to_string());
        }
        self.stmts(&c.body);
        if let Some(path) = self.class_path.as_mut() {
            path.pop();
        }
        self.scopes.pop();
    }

    fn opt_expr(&mut self, e: Option<&Expr>) {
        if let Some(e) = e {
            self.expr(e);
        }
    }

    fn exprs(&mut self, es: &[Expr]) {
        for e in es {
            self.expr(e);
        }
    }

    fn comprehensions(&mut self, gens: &[ast::Comprehension]) {
        for g in gens {
            self.expr(&g.target);
            self.expr(&g.iter);
            self.exprs(&g.ifs);
        }
    }

    fn expr(&mut self, expr: &Expr) {
        match expr {
            Expr::BoolOp(e) => self.exprs(&e.values),
            Expr::NamedExpr(e) => {
                self.expr(&e.target);
                self.expr(&e.value);
            }
            Expr::BinOp(e) => {
                self.expr(&e.left);
                self.expr(&e.right);
            }
            Expr::UnaryOp(e) => self.expr(&e.operand),
            Expr::Lambda(e) => {
                self.arguments_outer(&e.args);
                self.scopes.push(Scope::new(ScopeKind::Function));
                for arg in all_args(&e.args) {
                    self.set_typed(&arg.arg, None);
                }
                self.expr(&e.body);
                self.scopes.pop();
            }
            Expr::IfExp(e) => {
                self.expr(&e.test);
                self.expr(&e.body);
                self.expr(&e.orelse);
            }
            Expr::Dict(e) => {
                for k in e.keys.iter().flatten() {
                    self.expr(k);
                }
                self.exprs(&e.values);
            }
            Expr::Set(e) => self.exprs(&e.elts),
            Expr::ListComp(e) => {
                self.comprehensions(&e.generators);
                self.expr(&e.elt);
            }
            Expr::SetComp(e) => {
                self.comprehensions(&e.generators);
                self.expr(&e.elt);
            }
            Expr::DictComp(e) => {
                self.comprehensions(&e.generators);
                self.expr(&e.key);
                self.expr(&e.value);
            }
            Expr::GeneratorExp(e) => {
                self.comprehensions(&e.generators);
                self.expr(&e.elt);
            }
            Expr::Await(e) => self.expr(&e.value),
            Expr::Yield(e) => self.opt_expr(e.value.as_deref()),
            Expr::YieldFrom(e) => self.expr(&e.value),
            Expr::Compare(e) => {
                self.expr(&e.left);
                self.exprs(&e.comparators);
            }
            Expr::Call(e) => {
                let class_ref = match e.func.as_ref() {
                    Expr::Name(n) => self.lookup_typed(&n.id),
                    _ => None,
                };
                self.out.call_sites.push(CallSite {
                    callee: self.text(e.func.as_ref()),
                    class_ref,
                    line: self.line_of(e),
                });
                self.expr(&e.func);
                self.exprs(&e.args);
                for kw in &e.keywords {
                    self.expr(&kw.value);
                }
            }
            Expr::FormattedValue(e) => {
                self.expr(&e.value);
                self.opt_expr(e.format_spec.as_deref());
            }
            Expr::JoinedStr(e) => self.exprs(&e.values),
            Expr::Constant(_) | Expr::Name(_) => {}
            Expr::Attribute(e) => self.expr(&e.value),
            Expr::Subscript(e) => {
                self.expr(&e.value);
                self.expr(&e.slice);
            }
            Expr::Starred(e) => self.expr(&e.value),
            Expr::List(e) => self.exprs(&e.elts),
            Expr::Tuple(e) => self.exprs(&e.elts),
            Expr::Slice(e) => {
                self.opt_expr(e.lower.as_deref());
                self.opt_expr(e.upper.as_deref());
                self.opt_expr(e.step.as_deref());
            }
        }
    }

    fn pattern(&mut self, p: &ast::Pattern) {
        use ast::Pattern as P;
        match p {
            P::MatchValue(v) => self.expr(&v.value),
            P::MatchSingleton(_) | P::MatchStar(_) => {}
            P::MatchSequence(s) => s.patterns.iter().for_each(|p| self.pattern(p)),
            P::MatchMapping(m) => {
                self.exprs(&m.keys);
                m.patterns.iter().for_each(|p| self.pattern(p));
            }
            P::MatchClass(c) => {
                self.expr(&c.cls);
                c.patterns.iter().for_each(|p| self.pattern(p));
                c.kwd_patterns.iter().for_each(|p| self.pattern(p));
            }
            P::MatchAs(a) => {
                if let Some(p) = &a.pattern {
                    self.pattern(p);
                }
            }
            P::MatchOr(o) => o.patterns.iter().for_each(|p| self.pattern(p)),
        }
    }
}

fn all_args(args: &ast::Arguments) -> impl Iterator<Item = &ast::Arg> {
    args.posonlyargs
        .iter()
        .chain(&args.args)
        .chain(&args.kwonlyargs)
        .map(|a| &a.def)
        .chain(args.vararg.as_deref())
        .chain(args.kwarg.as_deref())
}

/// `X` out of `Type[X]`, `type[X]` or `typing.Type[X]`.
fn type_of_class(annotation: &Expr) -> Option<&Expr> {
    let Expr::Subscript(sub) = annotation else {
        return None;
    };
    let is_type = match sub.value.as_ref() {
        Expr::Name(n) => n.id.as_str() == "Type" || n.id.as_str() == "type",
        Expr::Attribute(a) => a.attr.as_str() == "Type",
        _ => false,
    };
    match sub.slice.as_ref() {
        x @ (Expr::Name(_) | Expr::Attribute(_)) if is_type => Some(x),
        _ => None,
    }
}
