//! Lambda terms, SK combinator trees and simple-type inference by
//! unification with occurs check over a backtrackable binding store.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::formula::{Atom, Formula};

/// Lambda terms with de Bruijn indices (0 = innermost binder).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum LambdaTerm {
    Var(u32),
    Lam(Box<LambdaTerm>),
    App(Box<LambdaTerm>, Box<LambdaTerm>),
}

impl LambdaTerm {
    pub fn lam(body: LambdaTerm) -> LambdaTerm {
        LambdaTerm::Lam(Box::new(body))
    }

    pub fn app(f: LambdaTerm, x: LambdaTerm) -> LambdaTerm {
        LambdaTerm::App(Box::new(f), Box::new(x))
    }

    /// 0 per variable, 1 per abstraction, 2 per application.
    pub fn size(&self) -> usize {
        match self {
            LambdaTerm::Var(_) => 0,
            LambdaTerm::Lam(b) => 1 + b.size(),
            LambdaTerm::App(f, x) => 2 + f.size() + x.size(),
        }
    }

    pub fn is_closed(&self) -> bool {
        fn go(t: &LambdaTerm, depth: u32) -> bool {
            match t {
                LambdaTerm::Var(i) => *i < depth,
                LambdaTerm::Lam(b) => go(b, depth + 1),
                LambdaTerm::App(f, x) => go(f, depth) && go(x, depth),
            }
        }
        go(self, 0)
    }

    /// No redex anywhere.
    pub fn is_normal(&self) -> bool {
        match self {
            LambdaTerm::Var(_) => true,
            LambdaTerm::Lam(b) => b.is_normal(),
            LambdaTerm::App(f, x) => {
                !matches!(**f, LambdaTerm::Lam(_)) && f.is_normal() && x.is_normal()
            }
        }
    }
}

fn binder_name(depth: usize) -> String {
    let letter = (b'a' + (depth % 26) as u8) as char;
    if depth < 26 {
        letter.to_string()
    } else {
        format!("{letter}{}", depth / 26)
    }
}

impl fmt::Display for LambdaTerm {
    /// `\a.\b.a` style, binders named by depth, application by juxtaposition.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &LambdaTerm, depth: usize, out: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t {
                LambdaTerm::Var(i) => {
                    let i = *i as usize;
                    if i < depth {
                        out.write_str(&binder_name(depth - 1 - i))
                    } else {
                        write!(out, "#{}", i - depth)
                    }
                }
                LambdaTerm::Lam(b) => {
                    write!(out, "\\{}.", binder_name(depth))?;
                    go(b, depth + 1, out)
                }
                LambdaTerm::App(f, x) => {
                    if matches!(**f, LambdaTerm::Lam(_)) {
                        out.write_str("(")?;
                        go(f, depth, out)?;
                        out.write_str(")")?;
                    } else {
                        go(f, depth, out)?;
                    }
                    out.write_str(" ")?;
                    if matches!(**x, LambdaTerm::Var(_)) {
                        go(x, depth, out)
                    } else {
                        out.write_str("(")?;
                        go(x, depth, out)?;
                        out.write_str(")")
                    }
                }
            }
        }
        go(self, 0, out)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LambdaParseError {
    #[error("syntax error at byte {0}")]
    Syntax(usize),
    #[error("unbound variable '{0}'")]
    Unbound(String),
}

/// Parses `\x.body` terms with application by juxtaposition.
pub fn parse_lambda(text: &str) -> Result<LambdaTerm, LambdaParseError> {
    struct P<'a> {
        s: &'a [u8],
        i: usize,
        scope: Vec<String>,
    }
    impl P<'_> {
        fn ws(&mut self) {
            while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
                self.i += 1;
            }
        }
        fn ident(&mut self) -> Option<String> {
            self.ws();
            let start = self.i;
            while self.i < self.s.len()
                && (self.s[self.i].is_ascii_alphanumeric() || self.s[self.i] == b'_')
            {
                self.i += 1;
            }
            (self.i > start).then(|| String::from_utf8_lossy(&self.s[start..self.i]).into_owned())
        }
        fn term(&mut self) -> Result<LambdaTerm, LambdaParseError> {
            let mut acc: Option<LambdaTerm> = None;
            loop {
                self.ws();
                let item = match self.s.get(self.i) {
                    Some(b'\\') => {
                        self.i += 1;
                        let name = self.ident().ok_or(LambdaParseError::Syntax(self.i))?;
                        self.ws();
                        if self.s.get(self.i) != Some(&b'.') {
                            return Err(LambdaParseError::Syntax(self.i));
                        }
                        self.i += 1;
                        self.scope.push(name);
                        let body = self.term()?;
                        self.scope.pop();
                        LambdaTerm::lam(body)
                    }
                    Some(b'(') => {
                        self.i += 1;
                        let t = self.term()?;
                        self.ws();
                        if self.s.get(self.i) != Some(&b')') {
                            return Err(LambdaParseError::Syntax(self.i));
                        }
                        self.i += 1;
                        t
                    }
                    Some(c) if c.is_ascii_alphanumeric() || *c == b'_' => {
                        let name = self.ident().unwrap();
                        let pos = self
                            .scope
                            .iter()
                            .rposition(|n| *n == name)
                            .ok_or_else(|| LambdaParseError::Unbound(name.clone()))?;
                        LambdaTerm::Var((self.scope.len() - 1 - pos) as u32)
                    }
                    _ => break,
                };
                acc = Some(match acc {
                    None => item,
                    Some(f) => LambdaTerm::app(f, item),
                });
            }
            acc.ok_or(LambdaParseError::Syntax(self.i))
        }
    }
    let mut p = P {
        s: text.as_bytes(),
        i: 0,
        scope: Vec::new(),
    };
    let t = p.term()?;
    p.ws();
    if p.i != text.len() {
        return Err(LambdaParseError::Syntax(p.i));
    }
    Ok(t)
}

/// Combinator trees over `S` and `K`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum SkTree {
    S,
    K,
    Apply(Box<SkTree>, Box<SkTree>),
}

impl SkTree {
    pub fn apply(f: SkTree, x: SkTree) -> SkTree {
        SkTree::Apply(Box::new(f), Box::new(x))
    }

    pub fn internal_nodes(&self) -> usize {
        match self {
            SkTree::S | SkTree::K => 0,
            SkTree::Apply(f, x) => 1 + f.internal_nodes() + x.internal_nodes(),
        }
    }
}

impl fmt::Display for SkTree {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkTree::S => out.write_str("s"),
            SkTree::K => out.write_str("k"),
            SkTree::Apply(f, x) => write!(out, "({f}*{x})"),
        }
    }
}

/// Handle to a node of a [`BindingStore`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct TypeId(u32);

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Node {
    Var(Option<TypeId>),
    Arrow(TypeId, TypeId),
}

/// Saved store position; undoing restores bindings and frees later nodes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Mark {
    nodes: usize,
    trail: usize,
}

/// Type terms (metavariables and arrows) with their bindings and an undo trail.
///
/// Bindings are never compressed, so every state reached since a [`Mark`]
/// can be rolled back exactly.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BindingStore {
    nodes: Vec<Node>,
    trail: Vec<TypeId>,
    /// Scratch stacks for unification and the occurs check, empty between calls.
    pairs: Vec<(TypeId, TypeId)>,
    visit: Vec<TypeId>,
}

pub enum TypeTerm {
    MetaVar(TypeId),
    Arrow(TypeId, TypeId),
}

impl BindingStore {
    pub fn new() -> BindingStore {
        BindingStore::default()
    }

    pub fn fresh(&mut self) -> TypeId {
        self.nodes.push(Node::Var(None));
        TypeId(self.nodes.len() as u32 - 1)
    }

    pub fn arrow(&mut self, from: TypeId, to: TypeId) -> TypeId {
        self.nodes.push(Node::Arrow(from, to));
        TypeId(self.nodes.len() as u32 - 1)
    }

    pub fn mark(&self) -> Mark {
        Mark {
            nodes: self.nodes.len(),
            trail: self.trail.len(),
        }
    }

    pub fn undo(&mut self, mark: Mark) {
        for v in self.trail.drain(mark.trail..) {
            self.nodes[v.0 as usize] = Node::Var(None);
        }
        self.nodes.truncate(mark.nodes);
    }

    /// Follows variable bindings to a representative.
    pub fn deref(&self, mut t: TypeId) -> TypeId {
        while let Node::Var(Some(next)) = self.nodes[t.0 as usize] {
            t = next;
        }
        t
    }

    pub fn view(&self, t: TypeId) -> TypeTerm {
        let t = self.deref(t);
        match self.nodes[t.0 as usize] {
            Node::Var(_) => TypeTerm::MetaVar(t),
            Node::Arrow(a, b) => TypeTerm::Arrow(a, b),
        }
    }

    fn occurs(&mut self, var: TypeId, t: TypeId) -> bool {
        let mut stack = std::mem::take(&mut self.visit);
        stack.push(t);
        let mut found = false;
        while let Some(t) = stack.pop() {
            let t = self.deref(t);
            if t == var {
                found = true;
                break;
            }
            if let Node::Arrow(a, b) = self.nodes[t.0 as usize] {
                stack.push(a);
                stack.push(b);
            }
        }
        stack.clear();
        self.visit = stack;
        found
    }

    fn bind(&mut self, var: TypeId, to: TypeId) {
        self.nodes[var.0 as usize] = Node::Var(Some(to));
        self.trail.push(var);
    }

    /// Unifies with occurs check; on failure the store is left unchanged.
    pub fn unify(&mut self, a: TypeId, b: TypeId) -> bool {
        let mark = self.mark();
        let mut work = std::mem::take(&mut self.pairs);
        work.push((a, b));
        let mut ok = true;
        while let Some((a, b)) = work.pop() {
            let (a, b) = (self.deref(a), self.deref(b));
            if a == b {
                continue;
            }
            match (self.nodes[a.0 as usize], self.nodes[b.0 as usize]) {
                (Node::Var(_), _) | (_, Node::Var(_)) => {
                    let (var, to) = if matches!(self.nodes[a.0 as usize], Node::Var(_)) {
                        (a, b)
                    } else {
                        (b, a)
                    };
                    if self.occurs(var, to) {
                        ok = false;
                        break;
                    }
                    self.bind(var, to);
                }
                (Node::Arrow(a1, a2), Node::Arrow(b1, b2)) => {
                    work.push((a2, b2));
                    work.push((a1, b1));
                }
            }
        }
        work.clear();
        self.pairs = work;
        if !ok {
            self.undo(mark);
        }
        ok
    }

    /// The resolved type as a formula, metavariables numbered by first occurrence.
    pub fn resolve(&self, t: TypeId) -> Formula {
        let mut names = HashMap::new();
        self.resolve_with(t, &mut names)
    }

    fn resolve_with(&self, t: TypeId, names: &mut HashMap<TypeId, u32>) -> Formula {
        let t = self.deref(t);
        match self.nodes[t.0 as usize] {
            Node::Var(_) => {
                let next = names.len() as u32;
                Formula::atom(*names.entry(t).or_insert(next))
            }
            Node::Arrow(a, b) => {
                let a = self.resolve_with(a, names);
                let b = self.resolve_with(b, names);
                Formula::imp(a, b)
            }
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Size (arrow count) of a resolved type, without building it.
    pub fn resolved_size(&self, t: TypeId) -> usize {
        let mut n = 0;
        let mut stack = vec![t];
        while let Some(t) = stack.pop() {
            if let TypeTerm::Arrow(a, b) = self.view(t) {
                n += 1;
                stack.push(a);
                stack.push(b);
            }
        }
        n
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InferError {
    #[error("term is not closed")]
    Open,
    #[error("term has no simple type")]
    Untypable,
}

/// Principal type of a closed lambda term.
pub fn infer_type(t: &LambdaTerm) -> Result<Formula, InferError> {
    if !t.is_closed() {
        return Err(InferError::Open);
    }
    let mut store = BindingStore::new();
    let mut ctx = Vec::new();
    let ty = infer_in(t, &mut store, &mut ctx).ok_or(InferError::Untypable)?;
    Ok(store.resolve(ty))
}

fn infer_in(t: &LambdaTerm, store: &mut BindingStore, ctx: &mut Vec<TypeId>) -> Option<TypeId> {
    match t {
        LambdaTerm::Var(i) => Some(ctx[ctx.len() - 1 - *i as usize]),
        LambdaTerm::Lam(body) => {
            let param = store.fresh();
            ctx.push(param);
            let result = infer_in(body, store, ctx);
            ctx.pop();
            Some(store.arrow(param, result?))
        }
        LambdaTerm::App(f, x) => {
            let tf = infer_in(f, store, ctx)?;
            let tx = infer_in(x, store, ctx)?;
            let target = store.fresh();
            let want = store.arrow(tx, target);
            store.unify(tf, want).then_some(target)
        }
    }
}

/// `(A->B->C)->(A->B)->A->C`
pub fn s_type(store: &mut BindingStore) -> TypeId {
    let (a, b, c) = (store.fresh(), store.fresh(), store.fresh());
    let bc = store.arrow(b, c);
    let abc = store.arrow(a, bc);
    let ab = store.arrow(a, b);
    let ac = store.arrow(a, c);
    let rest = store.arrow(ab, ac);
    store.arrow(abc, rest)
}

/// `A->B->A`
pub fn k_type(store: &mut BindingStore) -> TypeId {
    let (a, b) = (store.fresh(), store.fresh());
    let ba = store.arrow(b, a);
    store.arrow(a, ba)
}

/// Infers into an existing store; `None` when untypable.
pub fn sk_type_in(t: &SkTree, store: &mut BindingStore) -> Option<TypeId> {
    match t {
        SkTree::S => Some(s_type(store)),
        SkTree::K => Some(k_type(store)),
        SkTree::Apply(f, x) => {
            let tf = sk_type_in(f, store)?;
            let tx = sk_type_in(x, store)?;
            let target = store.fresh();
            let want = store.arrow(tx, target);
            store.unify(tf, want).then_some(target)
        }
    }
}

/// Principal type of an SK expression, canonically numbered.
pub fn type_of_sk(t: &SkTree) -> Option<Formula> {
    let mut store = BindingStore::new();
    let ty = sk_type_in(t, &mut store)?;
    Some(store.resolve(ty))
}

/// True when `target` is a substitution instance of `pattern`, with the
/// atoms of `pattern` acting as variables.
pub fn is_instance(pattern: &Formula, target: &Formula) -> bool {
    fn go<'a>(p: &Formula, t: &'a Formula, subst: &mut HashMap<Atom, &'a Formula>) -> bool {
        match (p, t) {
            (Formula::Atom(a), _) => match subst.get(a) {
                Some(bound) => *bound == t,
                None => {
                    subst.insert(*a, t);
                    true
                }
            },
            (Formula::Imp(p1, p2), Formula::Imp(t1, t2)) => go(p1, t1, subst) && go(p2, t2, subst),
            _ => false,
        }
    }
    go(pattern, target, &mut HashMap::new())
}

/// True when `t` is closed and `f` is an instance of its principal type.
pub fn type_check(t: &LambdaTerm, f: &Formula) -> bool {
    match infer_type(t) {
        Ok(principal) => is_instance(&principal, f),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn unify_binds_variable() {
        let mut st = BindingStore::new();
        let (x, y, z) = (st.fresh(), st.fresh(), st.fresh());
        let yz = st.arrow(y, z);
        assert!(st.unify(x, yz));
        assert_eq!(st.deref(x), yz);
    }

    #[test]
    fn occurs_check_rejects_cycles_and_rolls_back() {
        let mut st = BindingStore::new();
        let (x, y) = (st.fresh(), st.fresh());
        let xy = st.arrow(x, y);
        let before = st.clone();
        assert!(!st.unify(x, xy));
        assert_eq!(st, before);
    }

    #[test]
    fn sk_unification_step_binds_c_to_a() {
        // a->(b->c) against a'->(b'->a'): c ends up equal to a
        let mut st = BindingStore::new();
        let (a, b, c) = (st.fresh(), st.fresh(), st.fresh());
        let (a2, b2) = (st.fresh(), st.fresh());
        let bc = st.arrow(b, c);
        let lhs = st.arrow(a, bc);
        let ba2 = st.arrow(b2, a2);
        let rhs = st.arrow(a2, ba2);
        assert!(st.unify(lhs, rhs));
        assert_eq!(st.deref(c), st.deref(a));
        assert_ne!(st.deref(b), st.deref(a));
    }

    #[test]
    fn failed_unification_after_partial_binding_restores_store() {
        let mut st = BindingStore::new();
        let (x, y) = (st.fresh(), st.fresh());
        let yy = st.arrow(y, y);
        let left = st.arrow(x, x);
        let right = st.arrow(y, yy);
        let before = st.clone();
        // binds x := y first, then y := y->y fails the occurs check
        assert!(!st.unify(left, right));
        assert_eq!(st, before);
    }

    #[test]
    fn combinator_types() {
        assert_eq!(type_of_sk(&SkTree::S), Some(f("(0->1->2)->(0->1)->0->2")));
        assert_eq!(type_of_sk(&SkTree::K), Some(f("0->1->0")));
        let skk = SkTree::apply(SkTree::apply(SkTree::S, SkTree::K), SkTree::K);
        assert_eq!(type_of_sk(&skk), Some(f("0->0")));
    }

    #[test]
    fn lambda_inference() {
        let s = parse_lambda(r"\x.\y.\z.x z (y z)").unwrap();
        assert_eq!(infer_type(&s), Ok(f("(0->1->2)->(0->1)->0->2")));
        let k = parse_lambda(r"\x.\y.x").unwrap();
        assert_eq!(infer_type(&k), Ok(f("0->1->0")));
        let omega = parse_lambda(r"\x.x x").unwrap();
        assert_eq!(infer_type(&omega), Err(InferError::Untypable));
        assert_eq!(infer_type(&LambdaTerm::Var(0)), Err(InferError::Open));
    }

    #[test]
    fn checking_against_instances() {
        let k = parse_lambda(r"\a.\b.a").unwrap();
        assert!(type_check(&k, &f("0->1->0")));
        assert!(type_check(&k, &f("(3->3)->1->3->3")));
        let i = parse_lambda(r"\a.a").unwrap();
        assert!(type_check(&i, &f("0->0")));
        assert!(!type_check(&i, &f("0->1")));
    }

    #[test]
    fn display_and_parse_agree() {
        for s in [r"\a.\b.\c.a c (b c)", r"\a.a", r"\a.\b.a", r"\a.a (\b.b)"] {
            let t = parse_lambda(s).unwrap();
            assert_eq!(t.to_string(), s);
        }
        let t = parse_lambda(r"\a.\b.\c.a c (b c)").unwrap();
        assert_eq!(t.size(), 9);
    }
}
