//! Equiprovability-preserving rewrites between formula representations.

use std::fmt;

use thiserror::Error;

use crate::formula::{Atom, Formula, NestedHorn, Symbols};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TransformError {
    #[error("formula is not implicational: {0}")]
    NotImplicational(String),
    #[error("formula contains a disjunction: {0}")]
    ContainsOr(String),
}

/// Hands out atoms above every atom of the input.
#[derive(Clone, Copy, Debug)]
pub struct FreshAtomAllocator {
    next: u32,
}

impl FreshAtomAllocator {
    pub fn above(f: &Formula) -> FreshAtomAllocator {
        FreshAtomAllocator {
            next: f.max_atom().map_or(0, |a| a.index() + 1),
        }
    }

    pub fn first(&self) -> Atom {
        Atom(self.next)
    }

    pub fn fresh(&mut self) -> Atom {
        self.next += 1;
        Atom(self.next - 1)
    }
}

/// Clause form of an implicational formula: the head is the last atom of the
/// implication spine, the body its antecedents.
pub fn to_horn(f: &Formula) -> Result<NestedHorn, TransformError> {
    if !f.is_implicational() {
        return Err(TransformError::NotImplicational(f.to_string()));
    }
    Ok(horn_of(f))
}

fn horn_of(f: &Formula) -> NestedHorn {
    let n = spine_len(f);
    if n == 0 {
        return NestedHorn::Atom(spine_head(f));
    }
    // a counted range lets the body be collected in a single allocation
    let mut cur = f;
    let body = (0..n)
        .map(|_| {
            let Formula::Imp(a, b) = cur else {
                unreachable!("spine has n arrows")
            };
            cur = b;
            horn_of(a)
        })
        .collect();
    NestedHorn::Rule(spine_head(cur), body)
}

fn spine_head(f: &Formula) -> Atom {
    match f {
        Formula::Atom(h) => *h,
        _ => unreachable!("implicational spine ends in an atom"),
    }
}

/// Head and body of the clause form of an implicational formula.
pub(crate) fn horn_parts(f: &Formula) -> (Atom, Vec<NestedHorn>) {
    let mut body = Vec::with_capacity(spine_len(f));
    let mut cur = f;
    while let Formula::Imp(a, b) = cur {
        body.push(horn_of(a));
        cur = b;
    }
    match cur {
        Formula::Atom(h) => (*h, body),
        _ => unreachable!("implicational spine ends in an atom"),
    }
}

fn spine_len(mut f: &Formula) -> usize {
    let mut n = 0;
    while let Formula::Imp(_, b) = f {
        n += 1;
        f = b;
    }
    n
}

pub fn from_horn(h: &NestedHorn) -> Formula {
    match h {
        NestedHorn::Atom(a) => Formula::Atom(*a),
        NestedHorn::Rule(h, body) => {
            Formula::imp_chain(body.iter().map(from_horn), Formula::Atom(*h))
        }
    }
}

/// Clauses whose conjunction is equiprovable with the input formula.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HornList {
    pub clauses: Vec<NestedHorn>,
    /// Atom standing in for `false`, when the input mentions it.
    pub falsum: Option<Atom>,
}

impl HornList {
    pub fn display_with<'a>(&'a self, symbols: &'a Symbols) -> impl fmt::Display + 'a {
        struct D<'a>(&'a HornList, &'a Symbols);
        impl fmt::Display for D<'_> {
            fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
                out.write_str("[")?;
                for (i, c) in self.0.clauses.iter().enumerate() {
                    if i > 0 {
                        out.write_str(",")?;
                    }
                    write!(out, "{}", c.display_with(self.1))?;
                }
                out.write_str("]")
            }
        }
        D(self, symbols)
    }
}

fn expand_iff(f: &Formula) -> Formula {
    match f {
        Formula::Iff(a, b) => {
            let (a, b) = (expand_iff(a), expand_iff(b));
            Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
        }
        Formula::Imp(a, b) => Formula::imp(expand_iff(a), expand_iff(b)),
        Formula::And(a, b) => Formula::and(expand_iff(a), expand_iff(b)),
        Formula::Or(a, b) => Formula::or(expand_iff(a), expand_iff(b)),
        Formula::Not(a) => Formula::not(expand_iff(a)),
        Formula::Atom(_) | Formula::False => f.clone(),
    }
}

/// Clauses with atomic heads for `f` under the extra hypotheses `body`.
fn clauses(f: &Formula, body: &[NestedHorn], out: &mut Vec<NestedHorn>) {
    match f {
        Formula::Atom(a) => out.push(NestedHorn::rule(*a, body.to_vec())),
        Formula::And(a, b) => {
            clauses(a, body, out);
            clauses(b, body, out);
        }
        Formula::Imp(c, d) => {
            let mut extended = body_elements(c);
            extended.extend_from_slice(body);
            clauses(d, &extended, out);
        }
        _ => unreachable!("only atoms, conjunctions and implications remain"),
    }
}

/// Body elements equivalent to assuming `f`.
fn body_elements(f: &Formula) -> Vec<NestedHorn> {
    match f {
        Formula::Atom(a) => vec![NestedHorn::Atom(*a)],
        Formula::And(a, b) => {
            let mut v = body_elements(a);
            v.extend(body_elements(b));
            v
        }
        Formula::Imp(x, y) => {
            let mut v = Vec::new();
            clauses(y, &body_elements(x), &mut v);
            v
        }
        _ => unreachable!("only atoms, conjunctions and implications remain"),
    }
}

/// Converts a disjunction-free formula to nested Horn clauses.
///
/// Biconditionals expand to two implications and compound heads are pushed
/// into bodies until every head is atomic. `false` becomes a fresh atom F,
/// and each clause gains the elements `p:-[F]` for every atom p so that
/// absurdity keeps its elimination rule.
pub fn to_nested_horn_list(f: &Formula) -> Result<HornList, TransformError> {
    if f.contains_or() {
        return Err(TransformError::ContainsOr(f.to_string()));
    }
    let g = expand_iff(&f.negation_normalize());
    let mut fresh = FreshAtomAllocator::above(&g);
    let mut falsum = None;
    let g = replace_false(&g, &mut || *falsum.get_or_insert_with(|| fresh.fresh()));
    let mut body = Vec::new();
    if let Some(fa) = falsum {
        let mut atoms: Vec<Atom> = g.leaves().into_iter().filter(|a| *a != fa).collect();
        atoms.sort();
        atoms.dedup();
        body = atoms
            .into_iter()
            .map(|p| NestedHorn::rule(p, vec![NestedHorn::Atom(fa)]))
            .collect();
    }
    let mut out = Vec::new();
    clauses(&g, &body, &mut out);
    Ok(HornList {
        clauses: out,
        falsum,
    })
}

fn replace_false(f: &Formula, falsum: &mut dyn FnMut() -> Atom) -> Formula {
    match f {
        Formula::False => Formula::Atom(falsum()),
        Formula::Imp(a, b) => Formula::imp(replace_false(a, falsum), replace_false(b, falsum)),
        Formula::And(a, b) => Formula::and(replace_false(a, falsum), replace_false(b, falsum)),
        _ => f.clone(),
    }
}

/// Flat clause shapes produced by [`mints`]; `p`, `q`, `r` are atoms or `false`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MintsShape {
    Atom,
    Imp,
    ImpAntecedent,
    ImpConsequent,
    OrConsequent,
}

fn flat(f: &Formula) -> bool {
    matches!(f, Formula::Atom(_) | Formula::False)
}

/// Shape of a flat clause, or `None` when it is not one of `p`, `p->q`,
/// `(p->q)->r`, `p->(q->r)`, `p->(q v r)`.
pub fn mints_clause_shape(f: &Formula) -> Option<MintsShape> {
    match f {
        _ if flat(f) => Some(MintsShape::Atom),
        Formula::Imp(a, b) => match (&**a, &**b) {
            (p, q) if flat(p) && flat(q) => Some(MintsShape::Imp),
            (Formula::Imp(p, q), r) if flat(p) && flat(q) && flat(r) => {
                Some(MintsShape::ImpAntecedent)
            }
            (p, Formula::Imp(q, r)) if flat(p) && flat(q) && flat(r) => {
                Some(MintsShape::ImpConsequent)
            }
            (p, Formula::Or(q, r)) if flat(p) && flat(q) && flat(r) => {
                Some(MintsShape::OrConsequent)
            }
            _ => None,
        },
        _ => None,
    }
}

/// Premises and final goal of a right-nested implication chain.
pub fn imp_chain_parts(f: &Formula) -> (Vec<&Formula>, &Formula) {
    let mut premises = Vec::new();
    let mut cur = f;
    while let Formula::Imp(a, b) = cur {
        premises.push(&**a);
        cur = b;
    }
    (premises, cur)
}

struct Namer {
    fresh: FreshAtomAllocator,
    forward: Vec<Formula>,
    backward: Vec<Formula>,
}

impl Namer {
    /// Returns the atom standing for `f`, emitting its defining clauses.
    fn name(&mut self, f: &Formula) -> Formula {
        if flat(f) {
            return f.clone();
        }
        let n = Formula::Atom(self.fresh.fresh());
        match f {
            Formula::Imp(a, b) => {
                let slot = self.reserve();
                let (a, b) = (self.name(a), self.name(b));
                self.define_imp(slot, &n, a, b);
            }
            Formula::And(a, b) => {
                let slot = self.reserve();
                let (a, b) = (self.name(a), self.name(b));
                self.define_and(slot, &n, a, b);
            }
            Formula::Or(a, b) => {
                let slot = self.reserve();
                let (a, b) = (self.name(a), self.name(b));
                self.fill(
                    slot,
                    vec![Formula::imp(n.clone(), Formula::or(a.clone(), b.clone()))],
                    vec![Formula::imp(a, n.clone()), Formula::imp(b, n.clone())],
                );
            }
            Formula::Iff(a, b) => {
                let slot = self.reserve();
                let m1 = Formula::Atom(self.fresh.fresh());
                let m2 = Formula::Atom(self.fresh.fresh());
                let s1 = self.reserve();
                let s2 = self.reserve();
                let (a, b) = (self.name(a), self.name(b));
                self.define_and(slot, &n, m1.clone(), m2.clone());
                self.define_imp(s1, &m1, a.clone(), b.clone());
                self.define_imp(s2, &m2, b, a);
            }
            Formula::Atom(_) | Formula::False | Formula::Not(_) => {
                unreachable!("negation is normalized first")
            }
        }
        n
    }

    fn reserve(&mut self) -> (usize, usize) {
        self.forward.push(Formula::False);
        self.backward.push(Formula::False);
        (self.forward.len() - 1, self.backward.len() - 1)
    }

    /// Replaces the placeholders at `slot` so clauses stay in preorder.
    fn fill(&mut self, slot: (usize, usize), fwd: Vec<Formula>, bwd: Vec<Formula>) {
        self.forward.splice(slot.0..=slot.0, fwd);
        self.backward.splice(slot.1..=slot.1, bwd);
    }

    fn define_imp(&mut self, slot: (usize, usize), n: &Formula, a: Formula, b: Formula) {
        let ab = Formula::imp(a, b);
        self.fill(
            slot,
            vec![Formula::imp(n.clone(), ab.clone())],
            vec![Formula::imp(ab, n.clone())],
        );
    }

    fn define_and(&mut self, slot: (usize, usize), n: &Formula, a: Formula, b: Formula) {
        self.fill(
            slot,
            vec![
                Formula::imp(n.clone(), a.clone()),
                Formula::imp(n.clone(), b.clone()),
            ],
            vec![Formula::imp(a, Formula::imp(b, n.clone()))],
        );
    }
}

/// Mints-style flattening: every compound subformula gets a fresh atom
/// defined in both directions by flat clauses; the result is the curried
/// chain of all defining clauses ending in the atom naming the input.
///
/// Negation is first rewritten to `A->false`. Atoms are returned unchanged.
pub fn mints(f: &Formula) -> Formula {
    mints_with_first_fresh(f).0
}

/// [`mints`] plus the first fresh atom it allocated.
pub fn mints_with_first_fresh(f: &Formula) -> (Formula, Atom) {
    let g = f.negation_normalize();
    let fresh = FreshAtomAllocator::above(&g);
    let first = fresh.first();
    let mut namer = Namer {
        fresh,
        forward: Vec::new(),
        backward: Vec::new(),
    };
    let goal = namer.name(&g);
    let premises = namer.forward.into_iter().chain(namer.backward);
    (Formula::imp_chain(premises, goal), first)
}

/// Symbols that print the fresh atoms of [`mints`] as `nv1`, `nv2`, ...
pub fn mints_symbols(base: Symbols, first_fresh: Atom) -> Symbols {
    base.with_fresh(first_fresh, "nv")
}

/// Rewrites `->` and `&` into disjunction and biconditional:
/// `A->B` becomes `(A v B)<->B` and `A&B` becomes `(A v B)<->(A<->B)`.
pub fn to_disj_bicond(f: &Formula) -> Formula {
    match f {
        Formula::Imp(a, b) => {
            let (x, y) = (to_disj_bicond(a), to_disj_bicond(b));
            Formula::iff(Formula::or(x, y.clone()), y)
        }
        Formula::And(a, b) => {
            let (x, y) = (to_disj_bicond(a), to_disj_bicond(b));
            Formula::iff(Formula::or(x.clone(), y.clone()), Formula::iff(x, y))
        }
        Formula::Or(a, b) => Formula::or(to_disj_bicond(a), to_disj_bicond(b)),
        Formula::Iff(a, b) => Formula::iff(to_disj_bicond(a), to_disj_bicond(b)),
        Formula::Not(a) => Formula::not(to_disj_bicond(a)),
        Formula::Atom(_) | Formula::False => f.clone(),
    }
}

/// Undoes [`to_disj_bicond`] by recognising its two patterns anywhere.
pub fn from_disj_bicond(f: &Formula) -> Formula {
    match f {
        Formula::Iff(l, r) => {
            if let Formula::Or(x, y) = &**l {
                if y == r {
                    return Formula::imp(from_disj_bicond(x), from_disj_bicond(y));
                }
                if let Formula::Iff(x2, y2) = &**r {
                    if x == x2 && y == y2 {
                        return Formula::and(from_disj_bicond(x), from_disj_bicond(y));
                    }
                }
            }
            Formula::iff(from_disj_bicond(l), from_disj_bicond(r))
        }
        Formula::Or(a, b) => Formula::or(from_disj_bicond(a), from_disj_bicond(b)),
        Formula::Imp(a, b) => Formula::imp(from_disj_bicond(a), from_disj_bicond(b)),
        Formula::And(a, b) => Formula::and(from_disj_bicond(a), from_disj_bicond(b)),
        Formula::Not(a) => Formula::not(from_disj_bicond(a)),
        Formula::Atom(_) | Formula::False => f.clone(),
    }
}
