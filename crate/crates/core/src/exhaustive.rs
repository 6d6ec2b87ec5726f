//! Exhaustive generators: binary-tree skeletons, set partitions, formulas,
//! nested Horn clause trees, typed normal forms and their types.
//!
//! Order contract: depth-first, smallest constructor first. Implicational
//! skeletons put smaller left subtrees first; Horn bodies put smaller first
//! elements first; partitions come in lexicographic restricted-growth order.

use std::collections::HashMap;
use std::fmt;

use crate::formula::{Atom, Formula, NestedHorn};
use crate::lambda::{BindingStore, LambdaTerm, TypeId};

/// A set partition encoded as a restricted-growth string.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SetPartition {
    pub rgs: Vec<u32>,
}

impl SetPartition {
    pub fn new(rgs: Vec<u32>) -> Option<SetPartition> {
        let p = SetPartition { rgs };
        p.is_valid().then_some(p)
    }

    pub fn is_valid(&self) -> bool {
        let mut next = 0;
        for &x in &self.rgs {
            if x > next {
                return false;
            }
            if x == next {
                next += 1;
            }
        }
        true
    }

    pub fn len(&self) -> usize {
        self.rgs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rgs.is_empty()
    }

    pub fn blocks(&self) -> usize {
        self.rgs.iter().max().map_or(0, |m| *m as usize + 1)
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rgs.iter().all(|&x| x < 10) {
            for x in &self.rgs {
                write!(out, "{x}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.rgs.iter().map(u32::to_string).collect();
            out.write_str(&parts.join(","))
        }
    }
}

/// Lexicographic iterator over the restricted-growth strings of length `n`.
pub struct SetPartitions {
    current: Option<Vec<u32>>,
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        let out = self.current.clone()?;
        let rgs = self.current.as_mut().unwrap();
        let mut prefix_max = Vec::with_capacity(rgs.len());
        let mut m = 0;
        for &x in rgs.iter() {
            m = m.max(x);
            prefix_max.push(m);
        }
        let mut advanced = false;
        for i in (1..rgs.len()).rev() {
            if rgs[i] <= prefix_max[i - 1] {
                rgs[i] += 1;
                for x in &mut rgs[i + 1..] {
                    *x = 0;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            self.current = None;
        }
        Some(SetPartition { rgs: out })
    }
}

/// All set partitions of `n` elements (one empty partition when `n` = 0).
pub fn gen_set_partitions(n: usize) -> SetPartitions {
    SetPartitions {
        current: Some(vec![0; n]),
    }
}

fn number_leaves(f: &Formula) -> Formula {
    let mut next = 0;
    f.map_atoms(&mut |_| {
        next += 1;
        Formula::atom(next - 1)
    })
}

fn relabel(f: &Formula, labels: &[u32]) -> Formula {
    f.map_atoms(&mut |a| Formula::atom(labels[a.index() as usize]))
}

fn impl_shapes(n: usize, memo: &mut HashMap<usize, Vec<Formula>>) -> Vec<Formula> {
    if let Some(v) = memo.get(&n) {
        return v.clone();
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Formula::atom(0));
    } else {
        for left in 0..n {
            let ls = impl_shapes(left, memo);
            let rs = impl_shapes(n - 1 - left, memo);
            for l in &ls {
                for r in &rs {
                    out.push(Formula::imp(l.clone(), r.clone()));
                }
            }
        }
    }
    memo.insert(n, out.clone());
    out
}

/// Implicational skeletons with `n` arrows; leaves numbered 0..=n left to right.
pub fn gen_impl_skeletons(n: usize) -> std::vec::IntoIter<Formula> {
    let shapes = impl_shapes(n, &mut HashMap::new());
    shapes
        .iter()
        .map(number_leaves)
        .collect::<Vec<_>>()
        .into_iter()
}

/// Labels each skeleton with each partition of its leaves.
fn labelled(
    skeletons: Vec<Formula>,
    leaves: impl Fn(&Formula) -> usize,
) -> impl Iterator<Item = Formula> {
    skeletons.into_iter().flat_map(move |s| {
        let k = leaves(&s);
        gen_set_partitions(k).map(move |p| relabel(&s, &p.rgs))
    })
}

/// Every implicational formula with `n` arrows, up to canonical numbering.
pub fn gen_impl_formulas(n: usize) -> impl Iterator<Item = Formula> {
    labelled(gen_impl_skeletons(n).collect(), move |_| n + 1)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum BinOp {
    Imp,
    And,
    Or,
    Iff,
}

const BIN_OPS: [BinOp; 4] = [BinOp::Imp, BinOp::And, BinOp::Or, BinOp::Iff];

fn bin(op: BinOp, a: Formula, b: Formula) -> Formula {
    match op {
        BinOp::Imp => Formula::imp(a, b),
        BinOp::And => Formula::and(a, b),
        BinOp::Or => Formula::or(a, b),
        BinOp::Iff => Formula::iff(a, b),
    }
}

fn full_shapes(n: usize, canonical: bool, memo: &mut HashMap<usize, Vec<Formula>>) -> Vec<Formula> {
    if let Some(v) = memo.get(&n) {
        return v.clone();
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Formula::atom(0));
    } else {
        for a in full_shapes(n - 1, canonical, memo) {
            let f = Formula::not(a);
            if !canonical || not_depth(&f) <= 3 {
                out.push(f);
            }
        }
        for op in BIN_OPS {
            for left in 0..n {
                let ls = full_shapes(left, canonical, memo);
                let rs = full_shapes(n - 1 - left, canonical, memo);
                for l in &ls {
                    // chains nest to the right
                    if canonical
                        && matches!(
                            (op, l),
                            (BinOp::And, Formula::And(..)) | (BinOp::Or, Formula::Or(..))
                        )
                    {
                        continue;
                    }
                    for r in &rs {
                        out.push(bin(op, l.clone(), r.clone()));
                    }
                }
            }
        }
    }
    memo.insert(n, out.clone());
    out
}

fn not_depth(f: &Formula) -> usize {
    match f {
        Formula::Not(a) => 1 + not_depth(a),
        _ => 0,
    }
}

fn chain_operands<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
    match f {
        Formula::And(a, b) => {
            out.push(a);
            if matches!(**b, Formula::And(..)) {
                chain_operands(b, out);
            } else {
                out.push(b);
            }
        }
        Formula::Or(a, b) => {
            out.push(a);
            if matches!(**b, Formula::Or(..)) {
                chain_operands(b, out);
            } else {
                out.push(b);
            }
        }
        _ => out.push(f),
    }
}

/// Canonical under associativity, commutativity and idempotence of `&` and
/// `v`, with at most three stacked negations.
pub fn is_canonical_full(f: &Formula) -> bool {
    match f {
        Formula::Atom(_) | Formula::False => true,
        Formula::Not(a) => not_depth(f) <= 3 && is_canonical_full(a),
        Formula::Imp(a, b) | Formula::Iff(a, b) => is_canonical_full(a) && is_canonical_full(b),
        Formula::And(a, _) | Formula::Or(a, _) => {
            let same = std::mem::discriminant(f) == std::mem::discriminant(&**a);
            if same {
                return false;
            }
            let mut ops = Vec::new();
            chain_operands(f, &mut ops);
            ops.windows(2).all(|w| w[0] < w[1]) && ops.iter().all(|o| is_canonical_full(o))
        }
    }
}

/// Full formulas with `n` connectives (`~` counts one), leaves labelled by
/// every partition; with `canonical` only the normal forms described by
/// [`is_canonical_full`] are kept.
pub fn gen_full_formulas(n: usize, canonical: bool) -> impl Iterator<Item = Formula> {
    let shapes: Vec<Formula> = full_shapes(n, canonical, &mut HashMap::new())
        .iter()
        .map(number_leaves)
        .collect();
    labelled(shapes, |s| s.leaves().len()).filter(move |f| !canonical || is_canonical_full(f))
}

fn horn_placeholder() -> NestedHorn {
    NestedHorn::Atom(Atom(0))
}

#[derive(Default)]
struct HornShapes {
    trees: HashMap<usize, Vec<NestedHorn>>,
    bodies: HashMap<usize, Vec<Vec<NestedHorn>>>,
}

impl HornShapes {
    /// Trees of horn size `n`.
    fn trees(&mut self, n: usize) -> Vec<NestedHorn> {
        if let Some(v) = self.trees.get(&n) {
            return v.clone();
        }
        let out = if n == 0 {
            vec![horn_placeholder()]
        } else {
            self.bodies(n)
                .into_iter()
                .map(|body| NestedHorn::Rule(Atom(0), body.into()))
                .collect()
        };
        self.trees.insert(n, out.clone());
        out
    }

    /// Non-empty bodies whose elements sum to `n` (one per position plus sizes).
    fn bodies(&mut self, n: usize) -> Vec<Vec<NestedHorn>> {
        if let Some(v) = self.bodies.get(&n) {
            return v.clone();
        }
        let mut out = Vec::new();
        for first in 0..n {
            let rest_total = n - 1 - first;
            let firsts = self.trees(first);
            let rests = if rest_total == 0 {
                vec![Vec::new()]
            } else {
                self.bodies(rest_total)
            };
            for f in &firsts {
                for r in &rests {
                    let mut body = Vec::with_capacity(r.len() + 1);
                    body.push(f.clone());
                    body.extend(r.iter().cloned());
                    out.push(body);
                }
            }
        }
        self.bodies.insert(n, out.clone());
        out
    }
}

fn number_horn_leaves(h: &NestedHorn) -> NestedHorn {
    let labels: Vec<u32> = (0..=h.size() as u32).collect();
    h.label_leaves(&labels)
}

/// Nested Horn trees of horn size `n`, leaves numbered 0..=n in leaf order.
pub fn gen_horn_skeletons(n: usize) -> std::vec::IntoIter<NestedHorn> {
    let shapes = HornShapes::default().trees(n);
    shapes
        .iter()
        .map(number_horn_leaves)
        .collect::<Vec<_>>()
        .into_iter()
}

/// Sorted nested Horn trees of horn size `n`.
///
/// Skeleton mode keeps the positional skeletons whose bodies are strictly
/// increasing. Labelled mode walks every partition of the n+1 leaves and
/// builds the trees left to right over the labels, checking each new body
/// element against its left sibling as soon as it is complete.
pub fn gen_sorted_horn(n: usize, labeled: bool) -> Box<dyn Iterator<Item = NestedHorn>> {
    if labeled {
        Box::new(gen_set_partitions(n + 1).flat_map(move |p| sorted_horn_over(&p.rgs)))
    } else {
        Box::new(gen_horn_skeletons(n).filter(NestedHorn::is_sorted))
    }
}

/// Sorted trees whose leaves, in order, are exactly `labels`.
pub fn sorted_horn_over(labels: &[u32]) -> Vec<NestedHorn> {
    let mut memo = HashMap::new();
    sorted_from(labels, 0, &mut memo)
        .into_iter()
        .filter(|(_, end)| *end == labels.len())
        .map(|(t, _)| t)
        .collect()
}

type SortedMemo = HashMap<usize, Vec<(NestedHorn, usize)>>;

/// Every sorted tree starting at label `pos`, paired with its end position.
fn sorted_from(labels: &[u32], pos: usize, memo: &mut SortedMemo) -> Vec<(NestedHorn, usize)> {
    if let Some(v) = memo.get(&pos) {
        return v.clone();
    }
    let mut out = Vec::new();
    if pos < labels.len() {
        let head = Atom(labels[pos]);
        out.push((NestedHorn::Atom(head), pos + 1));
        for (first, after) in sorted_from(labels, pos + 1, memo) {
            let mut stack = vec![(vec![first], after)];
            while let Some((body, end)) = stack.pop() {
                out.push((NestedHorn::Rule(head, body.as_slice().into()), end));
                for (next, after) in sorted_from(labels, end, memo) {
                    if *body.last().unwrap() < next {
                        let mut longer = body.clone();
                        longer.push(next);
                        stack.push((longer, after));
                    }
                }
            }
        }
    }
    memo.insert(pos, out.clone());
    out
}

/// Horn trees of horn size `n` and clause nesting depth at most 3.
pub fn gen_horn3(n: usize) -> impl Iterator<Item = NestedHorn> {
    gen_horn_skeletons(n).filter(|h| h.depth() <= 3)
}

/// Sorted Horn skeletons of horn size `n` and nesting depth at most 3.
pub fn gen_sorted_horn3(n: usize) -> impl Iterator<Item = NestedHorn> {
    gen_sorted_horn(n, false).filter(|h| h.depth() <= 3)
}

/// Provability test for labelled Horn trees, supplied by the caller.
pub type HornDecider<'a> = &'a (dyn Fn(&NestedHorn) -> bool + Sync);

/// Sorted skeletons of horn size `n` that no leaf labelling makes provable.
pub fn gen_uninhabitable_trees(n: usize, provable: HornDecider<'_>) -> Vec<NestedHorn> {
    use rayon::prelude::*;
    let skeletons: Vec<NestedHorn> = gen_sorted_horn(n, false).collect();
    skeletons
        .into_par_iter()
        .filter(|t| !gen_set_partitions(n + 1).any(|p| provable(&t.label_leaves(&p.rgs))))
        .collect()
}

/// Labellings of `n` leaves under which no sorted tree of horn size n-1 is
/// provable.
pub fn gen_uninhabitable_labelings(n: usize, provable: HornDecider<'_>) -> Vec<SetPartition> {
    use rayon::prelude::*;
    if n == 0 {
        return Vec::new();
    }
    let labelings: Vec<SetPartition> = gen_set_partitions(n).collect();
    labelings
        .into_par_iter()
        .filter(|p| !sorted_horn_over(&p.rgs).iter().any(provable))
        .collect()
}

/// Depth-first enumeration of closed beta-normal forms with their types.
///
/// Goals are type metavariables in a shared [`BindingStore`]; every choice
/// point saves a mark and undoes to it on the way back, and sizes are
/// threaded through continuations the way a grammar threads its input.
struct NfSearch<'s> {
    store: BindingStore,
    tokens: Vec<NfToken>,
    record_terms: bool,
    sink: &'s mut dyn FnMut(&BindingStore, TypeId, &[NfToken]),
}

#[derive(Clone, Copy, Debug)]
enum NfToken {
    Lam,
    App,
    Var(u32),
}

type Cont<'k, 's> = &'k mut dyn FnMut(&mut NfSearch<'s>, usize);

impl<'s> NfSearch<'s> {
    fn push(&mut self, t: NfToken) {
        if self.record_terms {
            self.tokens.push(t);
        }
    }

    fn pop(&mut self) {
        if self.record_terms {
            self.tokens.pop();
        }
    }

    /// A normal form of type `ty`: an abstraction, or a neutral term.
    fn nf(&mut self, ty: TypeId, ctx: &[TypeId], rem: usize, k: Cont<'_, 's>) {
        if rem >= 1 {
            let mark = self.store.mark();
            let p = self.store.fresh();
            let q = self.store.fresh();
            let pq = self.store.arrow(p, q);
            if self.store.unify(ty, pq) {
                let mut inner = Vec::with_capacity(ctx.len() + 1);
                inner.push(p);
                inner.extend_from_slice(ctx);
                self.push(NfToken::Lam);
                self.nf(q, &inner, rem - 1, k);
                self.pop();
            }
            self.store.undo(mark);
        }
        self.neutral(ty, ctx, rem, k);
    }

    /// A variable, or an application whose function part is neutral.
    fn neutral(&mut self, ty: TypeId, ctx: &[TypeId], rem: usize, k: Cont<'_, 's>) {
        for (i, &v) in ctx.iter().enumerate() {
            let mark = self.store.mark();
            if self.store.unify(ty, v) {
                self.push(NfToken::Var(i as u32));
                k(self, rem);
                self.pop();
            }
            self.store.undo(mark);
        }
        if rem >= 2 {
            let mark = self.store.mark();
            let p = self.store.fresh();
            let pq = self.store.arrow(p, ty);
            self.push(NfToken::App);
            self.neutral(pq, ctx, rem - 2, &mut |s: &mut NfSearch<'s>, r| {
                s.nf(p, ctx, r, k)
            });
            self.pop();
            self.store.undo(mark);
        }
    }

    fn run(&mut self, n: usize) {
        let top = self.store.fresh();
        self.nf(top, &[], n, &mut |s: &mut NfSearch<'s>, r| {
            if r == 0 {
                (s.sink)(&s.store, top, &s.tokens);
            }
        });
    }
}

fn term_from_tokens(tokens: &[NfToken]) -> LambdaTerm {
    fn go(tokens: &[NfToken], i: &mut usize) -> LambdaTerm {
        let t = tokens[*i];
        *i += 1;
        match t {
            NfToken::Var(v) => LambdaTerm::Var(v),
            NfToken::Lam => LambdaTerm::lam(go(tokens, i)),
            NfToken::App => {
                let f = go(tokens, i);
                let x = go(tokens, i);
                LambdaTerm::app(f, x)
            }
        }
    }
    go(tokens, &mut 0)
}

/// Calls `f` with every closed typable normal form of size `n` and its
/// principal type.
pub fn for_each_typed_nf(n: usize, mut f: impl FnMut(LambdaTerm, Formula)) {
    let mut sink = |store: &BindingStore, top: TypeId, tokens: &[NfToken]| {
        f(term_from_tokens(tokens), store.resolve(top));
    };
    NfSearch {
        store: BindingStore::new(),
        tokens: Vec::new(),
        record_terms: true,
        sink: &mut sink,
    }
    .run(n);
}

/// Calls `f` with the principal type of every closed typable normal form of
/// size `n`, without building the terms.
pub fn for_each_impl_tautology(n: usize, mut f: impl FnMut(Formula)) {
    let mut sink = |store: &BindingStore, top: TypeId, _: &[NfToken]| f(store.resolve(top));
    NfSearch {
        store: BindingStore::new(),
        tokens: Vec::new(),
        record_terms: false,
        sink: &mut sink,
    }
    .run(n);
}

pub fn gen_typed_nf(n: usize) -> Vec<(LambdaTerm, Formula)> {
    let mut out = Vec::new();
    for_each_typed_nf(n, |t, f| out.push((t, f)));
    out
}

pub fn gen_impl_tautologies(n: usize) -> Vec<Formula> {
    let mut out = Vec::new();
    for_each_impl_tautology(n, |f| out.push(f));
    out
}

pub fn count_impl_tautologies(n: usize) -> u64 {
    let mut c = 0;
    for_each_impl_tautology(n, |_| c += 1);
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_formula, parse_horn};
    use std::collections::HashSet;

    fn strs<T: ToString>(xs: impl Iterator<Item = T>) -> Vec<String> {
        xs.map(|x| x.to_string()).collect()
    }

    #[test]
    fn skeletons_of_three_in_order() {
        assert_eq!(
            strs(gen_impl_skeletons(3)),
            [
                "0->1->2->3",
                "0->(1->2)->3",
                "(0->1)->2->3",
                "(0->1->2)->3",
                "((0->1)->2)->3"
            ]
        );
        assert_eq!(gen_impl_skeletons(0).count(), 1);
        assert_eq!(gen_impl_skeletons(6).count(), 132);
    }

    #[test]
    fn partitions_of_three() {
        let got: HashSet<String> = strs(gen_set_partitions(3)).into_iter().collect();
        let want: HashSet<String> = ["000", "010", "001", "011", "012"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(got, want);
        assert_eq!(strs(gen_set_partitions(1)), ["0"]);
        assert_eq!(gen_set_partitions(5).count(), 52);
        assert!(gen_set_partitions(6).all(|p| p.is_valid()));
    }

    #[test]
    fn formulas_of_size_two() {
        let got: HashSet<Formula> = gen_impl_formulas(2).collect();
        let want: HashSet<Formula> = [
            "0->0->0",
            "0->1->0",
            "0->0->1",
            "0->1->1",
            "0->1->2",
            "(0->0)->0",
            "(0->1)->0",
            "(0->0)->1",
            "(0->1)->1",
            "(0->1)->2",
        ]
        .iter()
        .map(|s| parse_formula(s).unwrap())
        .collect();
        assert_eq!(got, want);
        assert_eq!(strs(gen_impl_formulas(0)), ["0"]);
    }

    #[test]
    fn full_formulas_of_size_one() {
        let got: HashSet<String> = strs(gen_full_formulas(1, false)).into_iter().collect();
        for s in ["0->0", "0&0", "0 v 0", "0<->0", "~0", "0->1", "0&1"] {
            assert!(got.contains(s), "{s}");
        }
        assert_eq!(got.len(), 9);
        let canon: HashSet<String> = strs(gen_full_formulas(1, true)).into_iter().collect();
        assert!(canon.contains("0&1") && !canon.contains("0&0") && canon.contains("0->0"));
    }

    #[test]
    fn canonical_rejects_unsorted_and_left_nested_chains() {
        let yes = |s: &str| is_canonical_full(&parse_formula(s).unwrap());
        assert!(yes("0&1&2"));
        assert!(!yes("(0&1)&2"));
        assert!(!yes("1&0"));
        assert!(!yes("(0->1)&0"));
        assert!(yes("0&(0->1)"));
        assert!(yes("~~~0"));
        assert!(!yes("~~~~0"));
    }

    #[test]
    fn horn_skeletons_of_three_in_order() {
        assert_eq!(
            strs(gen_horn_skeletons(3)),
            [
                "(0:-[1,2,3])",
                "(0:-[1,(2:-[3])])",
                "(0:-[(1:-[2]),3])",
                "(0:-[(1:-[2,3])])",
                "(0:-[(1:-[(2:-[3])])])"
            ]
        );
        assert_eq!(gen_horn_skeletons(5).count(), 42);
        assert!(gen_horn_skeletons(5).all(|h| h.leaves().len() == 6));
    }

    #[test]
    fn sorted_skeleton_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| gen_sorted_horn(n, false).count()).collect();
        assert_eq!(counts, [1, 2, 4, 9, 22]);
        assert_eq!(gen_sorted_horn(0, false).count(), 1);
    }

    #[test]
    fn labelled_sorted_matches_filter_oracle() {
        for n in 0..=5 {
            let direct: Vec<NestedHorn> = gen_sorted_horn(n, true).collect();
            let oracle: HashSet<NestedHorn> = gen_horn_skeletons(n)
                .flat_map(|s| gen_set_partitions(n + 1).map(move |p| s.label_leaves(&p.rgs)))
                .filter(NestedHorn::is_sorted)
                .collect();
            let set: HashSet<NestedHorn> = direct.iter().cloned().collect();
            assert_eq!(set.len(), direct.len(), "duplicates at {n}");
            assert_eq!(set, oracle, "size {n}");
        }
    }

    #[test]
    fn sorted_over_fixed_labels() {
        let trees = sorted_horn_over(&[0, 1, 0]);
        let want: HashSet<NestedHorn> = ["(0:-[(1:-[0])])"]
            .iter()
            .map(|s| parse_horn(s).unwrap())
            .collect();
        // (0:-[1,0]) is unsorted since 1 > 0
        assert_eq!(trees.into_iter().collect::<HashSet<_>>(), want);
    }

    #[test]
    fn typed_nf_smallest() {
        let got = gen_typed_nf(1);
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].0.to_string(), r"\a.a");
        assert_eq!(got[0].1, parse_formula("0->0").unwrap());
        assert_eq!(gen_typed_nf(0).len(), 0);
    }

    #[test]
    fn tautologies_of_size_four_in_order() {
        assert_eq!(
            strs(gen_impl_tautologies(4).into_iter()),
            [
                "0->1->2->3->3",
                "0->1->2->3->2",
                "0->1->2->3->1",
                "0->1->2->3->0",
                "0->(0->1)->1",
                "(0->1)->0->1",
                "((0->0)->1)->1"
            ]
        );
    }

    #[test]
    fn typed_nf_terms_are_normal_closed_and_sized() {
        for n in 1..=7 {
            for (t, ty) in gen_typed_nf(n) {
                assert!(t.is_closed() && t.is_normal());
                assert_eq!(t.size(), n);
                assert_eq!(crate::lambda::infer_type(&t), Ok(ty));
            }
        }
    }
}
