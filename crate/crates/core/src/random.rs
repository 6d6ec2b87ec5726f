//! Uniform random generation: binary trees, set partitions, implicational
//! formulas, SK tautologies and typed normal forms.
//!
//! Every sampler takes an explicit RNG. [`seeded`] builds the documented
//! generator (ChaCha8 seeded through `seed_from_u64`), so a seed and the
//! parameters fix the output on every platform.

use std::collections::HashMap;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exhaustive::SetPartition;
use crate::formula::Formula;
use crate::lambda::{k_type, s_type, BindingStore, LambdaTerm, SkTree, TypeId};

pub const DEFAULT_RETRIES: u64 = 1_000_000;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RandomError {
    #[error("no acceptable sample after {attempts} attempts")]
    RetriesExhausted { attempts: u64 },
    #[error("no closed normal form has a size in {lo}..={hi}")]
    EmptyWindow { lo: usize, hi: usize },
}

/// Memoized Stirling numbers of the second kind and Bell numbers.
#[derive(Default)]
pub struct BigCountTable {
    /// `rows[n][k]` = S(n, k) for k in 0..=n.
    rows: Vec<Vec<BigUint>>,
}

impl BigCountTable {
    pub fn new() -> BigCountTable {
        BigCountTable::default()
    }

    fn fill(&mut self, n: usize) {
        while self.rows.len() <= n {
            let m = self.rows.len();
            let row = if m == 0 {
                vec![BigUint::one()]
            } else {
                let prev = &self.rows[m - 1];
                (0..=m)
                    .map(|k| {
                        let carry = if k >= 1 {
                            prev[k - 1].clone()
                        } else {
                            BigUint::zero()
                        };
                        let stay = prev.get(k).map_or_else(BigUint::zero, |s| s * k);
                        carry + stay
                    })
                    .collect()
            };
            self.rows.push(row);
        }
    }

    pub fn stirling2(&mut self, n: usize, k: usize) -> BigUint {
        if k > n {
            return BigUint::zero();
        }
        self.fill(n);
        self.rows[n][k].clone()
    }

    pub fn bell(&mut self, n: usize) -> BigUint {
        self.fill(n);
        self.rows[n].iter().sum()
    }
}

/// Number of ways to finish a restricted growth string with `r` more
/// entries when `m` blocks are already open:
/// `D(0,m) = 1`, `D(r,m) = m*D(r-1,m) + D(r-1,m+1)`, and `D(n,0)` is Bell(n).
///
/// Only every `stride`-th row is kept; the rows in between are recomputed
/// per block, so memory stays near `n^1.5` numbers instead of `n^2`.
pub struct PartitionSampler {
    n: usize,
    stride: usize,
    checkpoints: Vec<Vec<BigUint>>,
}

impl PartitionSampler {
    pub fn new(n: usize) -> PartitionSampler {
        let stride = ((n as f64).sqrt().ceil() as usize).max(1);
        let mut checkpoints = Vec::new();
        let mut row = vec![BigUint::one(); n + 1];
        for r in 0..=n {
            if r > 0 {
                row = Self::next_row(&row, n, r);
            }
            if r % stride == 0 {
                checkpoints.push(row.clone());
            }
        }
        PartitionSampler {
            n,
            stride,
            checkpoints,
        }
    }

    fn next_row(prev: &[BigUint], n: usize, r: usize) -> Vec<BigUint> {
        (0..=n - r).map(|m| &prev[m] * m + &prev[m + 1]).collect()
    }

    pub fn count(&self) -> BigUint {
        let top = self.n;
        let c = top / self.stride;
        let mut row = self.checkpoints[c].clone();
        for r in c * self.stride + 1..=top {
            row = Self::next_row(&row, self.n, r);
        }
        row[0].clone()
    }

    /// Calls `visit(r, row_r)` for r = top, top-1, ..., 0.
    fn rows_descending(&self, top: usize, mut visit: impl FnMut(usize, &[BigUint])) {
        let mut block_start = top / self.stride * self.stride;
        let mut block_end = top;
        loop {
            let mut rows = vec![self.checkpoints[block_start / self.stride].clone()];
            for r in block_start + 1..=block_end {
                let next = Self::next_row(rows.last().unwrap(), self.n, r);
                rows.push(next);
            }
            for (offset, row) in rows.iter().enumerate().rev() {
                visit(block_start + offset, row);
            }
            if block_start == 0 {
                return;
            }
            block_end = block_start - 1;
            block_start -= self.stride;
        }
    }

    /// Exactly uniform over the Bell(n) partitions.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> SetPartition {
        let n = self.n;
        if n == 0 {
            return SetPartition { rgs: Vec::new() };
        }
        let mut rgs = vec![0u32];
        let mut blocks = 1usize;
        if n >= 2 {
            // after placing element i, n-1-i elements remain
            self.rows_descending(n - 2, |remaining, row| {
                let each = &row[blocks];
                let total = each * blocks + &row[blocks + 1];
                let u = rng.gen_biguint_below(&total);
                let j = &u / each;
                if j < BigUint::from(blocks) {
                    rgs.push(u32::try_from(&j).expect("block index fits"));
                } else {
                    rgs.push(blocks as u32);
                    blocks += 1;
                }
                debug_assert_eq!(rgs.len() + remaining, n);
            });
        }
        SetPartition { rgs }
    }
}

pub fn random_set_partition<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SetPartition {
    PartitionSampler::new(n).sample(rng)
}

/// Binary tree shape in arena form; node 0 .. are leaves or internal nodes.
struct Shape {
    root: usize,
    children: Vec<Option<(usize, usize)>>,
}

/// Rémy's algorithm (Knuth's Algorithm R): each step picks one of the
/// existing nodes and a side and splices in a new internal node and leaf.
fn remy_shape<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Shape {
    let mut shape = Shape {
        root: 0,
        children: Vec::new(),
    };
    remy_into(n, rng, &mut shape, &mut Vec::new());
    shape
}

/// [`remy_shape`] reusing the caller's buffers.
fn remy_into<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
    shape: &mut Shape,
    parent: &mut Vec<Option<usize>>,
) {
    let children = &mut shape.children;
    children.clear();
    parent.clear();
    children.push(None);
    parent.push(None);
    shape.root = 0;
    for k in 0..n {
        let x = rng.gen_range(0..2 * k + 1);
        let (y, z) = (children.len(), children.len() + 1);
        let pair = if rng.gen::<bool>() { (x, z) } else { (z, x) };
        children.push(Some(pair));
        children.push(None);
        parent.push(parent[x]);
        parent.push(Some(y));
        match parent[x] {
            None => shape.root = y,
            Some(p) => {
                let (l, r) = children[p].unwrap();
                children[p] = Some(if l == x { (y, r) } else { (l, y) });
            }
        }
        parent[x] = Some(y);
    }
}

impl Shape {
    fn build<T>(&self, node: usize, leaf: &mut impl FnMut() -> T, join: &impl Fn(T, T) -> T) -> T {
        match self.children[node] {
            None => leaf(),
            Some((l, r)) => {
                let a = self.build(l, leaf, join);
                let b = self.build(r, leaf, join);
                join(a, b)
            }
        }
    }
}

/// Uniform implicational skeleton with `n` arrows, leaves numbered 0..=n
/// left to right.
pub fn remy_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Formula {
    let shape = remy_shape(n, rng);
    let mut next = 0;
    shape.build(
        shape.root,
        &mut || {
            next += 1;
            Formula::atom(next - 1)
        },
        &Formula::imp,
    )
}

/// Uniform over (shape, partition of the leaves) pairs.
pub fn random_impl_formula<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Formula {
    let skeleton = remy_tree(n, rng);
    let p = random_set_partition(n + 1, rng);
    skeleton.map_atoms(&mut |a| Formula::atom(p.rgs[a.index() as usize]))
}

pub fn random_sk_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SkTree {
    let shape = remy_shape(n, rng);
    let coins = sk_coins(n, rng);
    sk_from_shape(&shape, &coins)
}

fn sk_coins<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<bool> {
    (0..=n).map(|_| rng.gen::<bool>()).collect()
}

fn sk_from_shape(shape: &Shape, coins: &[bool]) -> SkTree {
    let mut leaves = coins.iter();
    shape.build(
        shape.root,
        &mut || {
            if *leaves.next().unwrap() {
                SkTree::S
            } else {
                SkTree::K
            }
        },
        &SkTree::apply,
    )
}

/// Types the tree straight from the arena so failed draws never allocate a tree.
fn type_shape(
    shape: &Shape,
    node: usize,
    coins: &mut std::slice::Iter<'_, bool>,
    store: &mut BindingStore,
) -> Option<TypeId> {
    match shape.children[node] {
        None if *coins.next().unwrap() => Some(s_type(store)),
        None => Some(k_type(store)),
        Some((l, r)) => {
            let tf = type_shape(shape, l, coins, store)?;
            let tx = type_shape(shape, r, coins, store)?;
            let target = store.fresh();
            let want = store.arrow(tx, target);
            store.unify(tf, want).then_some(target)
        }
    }
}

/// Draws SK trees with `n` applications until one is typable with a type of
/// size at least `min_size`; returns the tree and its canonical type.
pub fn random_sk_typed<R: Rng + ?Sized>(
    n: usize,
    min_size: usize,
    retries: u64,
    rng: &mut R,
) -> Result<(SkTree, Formula), RandomError> {
    let mut store = BindingStore::new();
    let empty = store.mark();
    let mut shape = Shape {
        root: 0,
        children: Vec::new(),
    };
    let mut parent = Vec::new();
    let mut coins = Vec::new();
    for _ in 0..retries {
        remy_into(n, rng, &mut shape, &mut parent);
        coins.clear();
        coins.extend((0..=n).map(|_| rng.gen::<bool>()));
        store.undo(empty);
        if let Some(t) = type_shape(&shape, shape.root, &mut coins.iter(), &mut store) {
            if store.resolved_size(t) >= min_size {
                return Ok((sk_from_shape(&shape, &coins), store.resolve(t)));
            }
        }
    }
    Err(RandomError::RetriesExhausted { attempts: retries })
}

/// The type of a random typable SK expression, hence a tautology.
pub fn random_sk_tautology<R: Rng + ?Sized>(
    n: usize,
    min_size: usize,
    retries: u64,
    rng: &mut R,
) -> Result<Formula, RandomError> {
    random_sk_typed(n, min_size, retries, rng).map(|(_, f)| f)
}

/// Counts of β-normal forms by size and number of variables in scope.
struct NfCounts {
    nf: HashMap<(usize, usize), BigUint>,
    ne: HashMap<(usize, usize), BigUint>,
}

impl NfCounts {
    fn nf(&mut self, n: usize, k: usize) -> BigUint {
        if let Some(c) = self.nf.get(&(n, k)) {
            return c.clone();
        }
        let mut c = self.ne(n, k);
        if n >= 1 {
            c += self.nf(n - 1, k + 1);
        }
        self.nf.insert((n, k), c.clone());
        c
    }

    /// Neutral terms: a variable applied to normal forms.
    fn ne(&mut self, n: usize, k: usize) -> BigUint {
        if let Some(c) = self.ne.get(&(n, k)) {
            return c.clone();
        }
        let mut c = if n == 0 {
            BigUint::from(k)
        } else {
            BigUint::zero()
        };
        for i in 0..n.saturating_sub(1) {
            c += self.ne(i, k) * self.nf(n - 2 - i, k);
        }
        self.ne.insert((n, k), c.clone());
        c
    }
}

/// Uniform draw of a normal form of size `n`, typed as it is built; `None`
/// as soon as unification fails.
struct NfSampler<'r, R: ?Sized> {
    counts: NfCounts,
    store: BindingStore,
    ctx: Vec<TypeId>,
    rng: &'r mut R,
}

impl<R: Rng + ?Sized> NfSampler<'_, R> {
    fn nf(&mut self, n: usize) -> Option<(LambdaTerm, TypeId)> {
        let k = self.ctx.len();
        let total = self.counts.nf(n, k);
        let u = self.rng.gen_biguint_below(&total);
        if n >= 1 && u < self.counts.nf(n - 1, k + 1) {
            let param = self.store.fresh();
            self.ctx.push(param);
            let body = self.nf(n - 1);
            self.ctx.pop();
            let (b, tb) = body?;
            return Some((LambdaTerm::lam(b), self.store.arrow(param, tb)));
        }
        self.ne(n)
    }

    fn ne(&mut self, n: usize) -> Option<(LambdaTerm, TypeId)> {
        let k = self.ctx.len();
        if n == 0 {
            let i = self.rng.gen_range(0..k);
            return Some((LambdaTerm::Var(i as u32), self.ctx[k - 1 - i]));
        }
        let mut u = self.rng.gen_biguint_below(&self.counts.ne(n, k));
        for i in 0..n - 1 {
            let w = self.counts.ne(i, k) * self.counts.nf(n - 2 - i, k);
            if u < w {
                let (f, tf) = self.ne(i)?;
                let (x, tx) = self.nf(n - 2 - i)?;
                let target = self.store.fresh();
                let want = self.store.arrow(tx, target);
                return self
                    .store
                    .unify(tf, want)
                    .then(|| (LambdaTerm::app(f, x), target));
            }
            u -= w;
        }
        unreachable!("split weights sum to the neutral count")
    }
}

/// Size window accepted for a requested lambda size: within 10% either way.
pub fn typed_nf_window(target: usize) -> (usize, usize) {
    ((9 * target).div_ceil(10), 11 * target / 10)
}

/// A closed simply typable normal form with size in [`typed_nf_window`],
/// uniform over all such terms, paired with its principal type.
///
/// The size is drawn in proportion to the number of closed normal forms of
/// that size, the term uniformly among them, and untypable draws are
/// rejected (typing runs during construction, so they abort early).
pub fn random_typed_nf<R: Rng + ?Sized>(
    target: usize,
    retries: u64,
    rng: &mut R,
) -> Result<(LambdaTerm, Formula), RandomError> {
    let (lo, hi) = typed_nf_window(target);
    let mut counts = NfCounts {
        nf: HashMap::new(),
        ne: HashMap::new(),
    };
    let weights: Vec<BigUint> = (lo..=hi).map(|s| counts.nf(s, 0)).collect();
    let total: BigUint = weights.iter().sum();
    if total.is_zero() {
        return Err(RandomError::EmptyWindow { lo, hi });
    }
    let mut sampler = NfSampler {
        counts,
        store: BindingStore::new(),
        ctx: Vec::new(),
        rng,
    };
    for _ in 0..retries {
        let mut u = sampler.rng.gen_biguint_below(&total);
        let mut size = lo;
        for (s, w) in (lo..).zip(&weights) {
            if u < *w {
                size = s;
                break;
            }
            u -= w;
        }
        sampler.store = BindingStore::new();
        if let Some((term, ty)) = sampler.nf(size) {
            return Ok((term, sampler.store.resolve(ty)));
        }
    }
    Err(RandomError::RetriesExhausted { attempts: retries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exhaustive::gen_set_partitions;
    use crate::lambda::type_check;

    #[test]
    fn exact_counts() {
        let mut t = BigCountTable::new();
        let bells: Vec<BigUint> = (1..=5).map(|n| t.bell(n)).collect();
        assert_eq!(bells, [1u32, 2, 5, 15, 52].map(BigUint::from));
        assert_eq!(t.stirling2(4, 2), BigUint::from(7u32));
        for n in [0, 1, 7, 20, 41] {
            assert_eq!(PartitionSampler::new(n).count(), t.bell(n), "n={n}");
        }
    }

    #[test]
    fn partitions_are_valid_across_checkpoint_blocks() {
        let mut rng = seeded(3);
        for n in [1, 2, 3, 5, 10, 17, 50] {
            let s = PartitionSampler::new(n);
            for _ in 0..20 {
                let p = s.sample(&mut rng);
                assert_eq!(p.len(), n);
                assert!(p.is_valid(), "{p}");
            }
        }
        assert_eq!(random_set_partition(1, &mut rng).rgs, vec![0]);
    }

    #[test]
    fn partitions_uniform_at_four() {
        let mut rng = seeded(11);
        let s = PartitionSampler::new(4);
        let draws = 150_000;
        let mut freq: HashMap<Vec<u32>, usize> = HashMap::new();
        for _ in 0..draws {
            *freq.entry(s.sample(&mut rng).rgs).or_default() += 1;
        }
        assert_eq!(freq.len(), 15);
        for p in gen_set_partitions(4) {
            let f = freq[&p.rgs] as f64 / draws as f64;
            assert!((f - 1.0 / 15.0).abs() < 0.005, "{p}: {f}");
        }
    }

    #[test]
    fn remy_small_cases() {
        let mut rng = seeded(0);
        assert_eq!(remy_tree(0, &mut rng), Formula::atom(0));
        let draws = 100_000;
        let mut freq: HashMap<Formula, usize> = HashMap::new();
        for _ in 0..draws {
            *freq.entry(remy_tree(3, &mut rng)).or_default() += 1;
        }
        assert_eq!(freq.len(), 5);
        for (shape, c) in freq {
            let f = c as f64 / draws as f64;
            assert!((f - 0.2).abs() < 0.01, "{shape}: {f}");
        }
    }

    #[test]
    fn large_formula_is_well_formed() {
        let mut rng = seeded(5);
        let f = random_impl_formula(1000, &mut rng);
        assert_eq!(f.size(), 1000);
        assert!(f.is_implicational());
        assert_eq!(f.leaves().len(), 1001);
        assert_eq!(random_impl_formula(0, &mut rng), Formula::atom(0));
    }

    #[test]
    fn same_seed_same_output() {
        let a = random_impl_formula(40, &mut seeded(9));
        let b = random_impl_formula(40, &mut seeded(9));
        assert_eq!(a, b);
    }

    #[test]
    fn sk_samples_are_inhabited() {
        let mut rng = seeded(1);
        for _ in 0..10 {
            let (tree, ty) = random_sk_typed(8, 3, DEFAULT_RETRIES, &mut rng).unwrap();
            assert_eq!(tree.internal_nodes(), 8);
            assert!(ty.size() >= 3);
        }
        let err = random_sk_tautology(8, 10_000, 5, &mut rng).unwrap_err();
        assert_eq!(err, RandomError::RetriesExhausted { attempts: 5 });
    }

    #[test]
    fn typed_nf_window_and_type() {
        let mut rng = seeded(2);
        let (t, f) = random_typed_nf(1, 10, &mut rng).unwrap();
        assert_eq!(t.to_string(), r"\a.a");
        assert_eq!(f.to_string(), "0->0");
        for target in [10, 25] {
            let (t, f) = random_typed_nf(target, DEFAULT_RETRIES, &mut rng).unwrap();
            let (lo, hi) = typed_nf_window(target);
            assert!((lo..=hi).contains(&t.size()));
            assert!(t.is_closed() && t.is_normal());
            assert!(type_check(&t, &f), "{t} : {f}");
        }
    }
}
