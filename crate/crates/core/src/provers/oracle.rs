//! Reference prover: Gentzen-style sequent search with contraction kept,
//! made terminating by a loop check on the current branch.
//!
//! Contexts are sets of interned subformulas and only grow along a branch,
//! so a repeated sequent on the branch is a loop and can be failed. Invertible
//! rules (conjunction, biconditional, falsum, disjunction on the left,
//! modus ponens, and every right rule except disjunction) are applied
//! eagerly; the remaining choices are the two disjuncts of a goal and the
//! left implication rule on each assumption whose antecedent is missing.

use std::collections::HashMap;

use crate::formula::Formula;

use super::{Limits, Meter, ProveError, Verdict};

#[derive(Clone, Copy, Debug)]
enum Node {
    Atom,
    False,
    Imp(usize, usize),
    And(usize, usize),
    Or(usize, usize),
    Iff(usize, usize),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Set(Vec<u64>);

impl Set {
    fn empty(n: usize) -> Set {
        Set(vec![0; n.div_ceil(64).max(1)])
    }

    fn has(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    /// Returns true when `i` was not yet present.
    fn add(&mut self, i: usize) -> bool {
        let fresh = !self.has(i);
        self.0[i / 64] |= 1 << (i % 64);
        fresh
    }

    fn with(&self, i: usize) -> Set {
        let mut s = self.clone();
        s.add(i);
        s
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64)
                .filter(move |b| bits >> b & 1 == 1)
                .map(move |b| w * 64 + b)
        })
    }
}

struct Interner {
    nodes: Vec<Node>,
    ids: HashMap<Formula, usize>,
    imp_ids: HashMap<(usize, usize), usize>,
}

impl Interner {
    fn intern(&mut self, f: &Formula) -> usize {
        if let Some(&i) = self.ids.get(f) {
            return i;
        }
        let node = match f {
            Formula::Atom(_) => Node::Atom,
            Formula::False => Node::False,
            Formula::Not(_) => unreachable!("negation is normalized first"),
            Formula::Imp(a, b) => Node::Imp(self.intern(a), self.intern(b)),
            Formula::And(a, b) => Node::And(self.intern(a), self.intern(b)),
            Formula::Or(a, b) => Node::Or(self.intern(a), self.intern(b)),
            Formula::Iff(a, b) => {
                let (x, y) = (self.intern(a), self.intern(b));
                // both directions are needed as assumptions
                self.intern(&Formula::imp((**a).clone(), (**b).clone()));
                self.intern(&Formula::imp((**b).clone(), (**a).clone()));
                Node::Iff(x, y)
            }
        };
        let i = self.nodes.len();
        self.nodes.push(node);
        self.ids.insert(f.clone(), i);
        if let Node::Imp(a, b) = node {
            self.imp_ids.insert((a, b), i);
        }
        i
    }
}

struct Oracle {
    nodes: Vec<Node>,
    imp_ids: HashMap<(usize, usize), usize>,
    false_id: Option<usize>,
    meter: Meter,
    /// Sequents on the current branch, with their depth.
    branch: HashMap<(Set, usize), usize>,
    proved: HashMap<(Set, usize), bool>,
    refuted: HashMap<(Set, usize), bool>,
}

const NO_LOOP: usize = usize::MAX;

enum Saturated {
    Closed,
    Open(Set),
}

impl Oracle {
    /// Closes the context under the invertible left rules except disjunction.
    fn saturate(&self, mut ctx: Set) -> Saturated {
        loop {
            let mut changed = false;
            let members: Vec<usize> = ctx.iter().collect();
            for i in members {
                match self.nodes[i] {
                    Node::False => return Saturated::Closed,
                    Node::And(a, b) => {
                        changed |= ctx.add(a);
                        changed |= ctx.add(b);
                    }
                    Node::Iff(a, b) => {
                        changed |= ctx.add(self.imp_ids[&(a, b)]);
                        changed |= ctx.add(self.imp_ids[&(b, a)]);
                    }
                    Node::Imp(a, b) if ctx.has(a) => changed |= ctx.add(b),
                    _ => {}
                }
            }
            if !changed {
                return Saturated::Open(ctx);
            }
        }
    }

    /// Proves `ctx |- goal`; the second value is the shallowest branch depth
    /// a loop check referred to, which decides whether a failure may be cached.
    fn prove(&mut self, ctx: Set, goal: usize, depth: usize) -> Result<(bool, usize), ProveError> {
        self.meter.tick()?;
        let ctx = match self.saturate(ctx) {
            Saturated::Closed => return Ok((true, NO_LOOP)),
            Saturated::Open(c) => c,
        };
        if ctx.has(goal) || self.false_id.is_some_and(|f| ctx.has(f)) {
            return Ok((true, NO_LOOP));
        }
        match self.nodes[goal] {
            Node::Imp(a, b) => return self.prove(ctx.with(a), b, depth),
            Node::And(a, b) => return self.both((ctx.clone(), a), (ctx, b), depth),
            Node::Iff(a, b) => return self.both((ctx.with(a), b), (ctx.with(b), a), depth),
            _ => {}
        }
        let key = (ctx, goal);
        if self.proved.contains_key(&key) {
            return Ok((true, NO_LOOP));
        }
        if self.refuted.contains_key(&key) {
            return Ok((false, NO_LOOP));
        }
        if let Some(&d) = self.branch.get(&key) {
            return Ok((false, d));
        }
        self.branch.insert(key.clone(), depth);
        let result = self.choose(&key.0, goal, depth + 1);
        self.branch.remove(&key);
        let (ok, loop_at) = result?;
        if ok {
            self.proved.insert(key, true);
        } else if loop_at >= depth {
            self.refuted.insert(key, true);
        }
        Ok((ok, loop_at))
    }

    fn both(
        &mut self,
        (c1, g1): (Set, usize),
        (c2, g2): (Set, usize),
        depth: usize,
    ) -> Result<(bool, usize), ProveError> {
        let (ok1, l1) = self.prove(c1, g1, depth)?;
        if !ok1 {
            return Ok((false, l1));
        }
        let (ok2, l2) = self.prove(c2, g2, depth)?;
        Ok((ok2, if ok2 { NO_LOOP } else { l2 }))
    }

    fn choose(
        &mut self,
        ctx: &Set,
        goal: usize,
        depth: usize,
    ) -> Result<(bool, usize), ProveError> {
        let mut loop_at = NO_LOOP;
        // disjunction on the left is invertible: split on the first unused one
        let split = ctx.iter().find_map(|i| match self.nodes[i] {
            Node::Or(a, b) if !ctx.has(a) && !ctx.has(b) => Some((a, b)),
            _ => None,
        });
        if let Some((a, b)) = split {
            return self.both((ctx.with(a), goal), (ctx.with(b), goal), depth);
        }
        if let Node::Or(a, b) = self.nodes[goal] {
            for side in [a, b] {
                let (ok, l) = self.prove(ctx.clone(), side, depth)?;
                if ok {
                    return Ok((true, NO_LOOP));
                }
                loop_at = loop_at.min(l);
            }
        }
        let imps: Vec<(usize, usize)> = ctx
            .iter()
            .filter_map(|i| match self.nodes[i] {
                Node::Imp(a, b) if !ctx.has(a) && !ctx.has(b) => Some((a, b)),
                _ => None,
            })
            .collect();
        for (a, b) in imps {
            let (ok, l) = self.both((ctx.clone(), a), (ctx.with(b), goal), depth)?;
            if ok {
                return Ok((true, NO_LOOP));
            }
            loop_at = loop_at.min(l);
        }
        Ok((false, loop_at))
    }
}

/// Sound and complete for full propositional intuitionistic logic; slow on
/// large inputs, intended as the reference in differential tests.
pub fn prove_oracle(f: &Formula, limits: Limits) -> Result<Verdict, ProveError> {
    let f = f.negation_normalize();
    let mut interner = Interner {
        nodes: Vec::new(),
        ids: HashMap::new(),
        imp_ids: HashMap::new(),
    };
    let goal = interner.intern(&f);
    let false_id = interner.ids.get(&Formula::False).copied();
    let n = interner.nodes.len();
    let mut o = Oracle {
        nodes: interner.nodes,
        imp_ids: interner.imp_ids,
        false_id,
        meter: Meter::new(limits),
        branch: HashMap::new(),
        proved: HashMap::new(),
        refuted: HashMap::new(),
    };
    let (proved, _) = o.prove(Set::empty(n), goal, 0)?;
    Ok(o.meter.verdict(proved))
}
