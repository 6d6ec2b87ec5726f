//! Implicational provers over formula contexts: the contraction-free
//! calculus, its single-scan variant, the head-first variant and the
//! fresh-atom variant that avoids duplicating nested antecedents.

use crate::formula::{Atom, Formula};

use super::{
    contains_except, replaced, require_implicational, with, without, Limits, Meter, ProveError,
    Verdict,
};

type Ctx = Vec<Formula>;

fn imp_parts(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Imp(a, b) => Some((a, b)),
        _ => None,
    }
}

/// Indices from newest to oldest.
fn newest_first(ctx: &[Formula]) -> impl Iterator<Item = usize> {
    (0..ctx.len()).rev()
}

pub fn prove_ljt(f: &Formula, limits: Limits) -> Result<Verdict, ProveError> {
    require_implicational(f)?;
    let mut m = Meter::new(limits);
    let proved = ljt(f, &[], &mut m)?;
    Ok(m.verdict(proved))
}

fn ljt(goal: &Formula, ctx: &[Formula], m: &mut Meter) -> Result<bool, ProveError> {
    m.tick()?;
    if ctx.contains(goal) {
        return Ok(true);
    }
    if let Some((a, b)) = imp_parts(goal) {
        return ljt(b, &with(ctx, a.clone()), m);
    }
    // modus ponens on an implication whose antecedent is present
    for i in newest_first(ctx) {
        if let Some((a, b)) = imp_parts(&ctx[i]) {
            if contains_except(ctx, i, a) {
                return ljt(goal, &replaced(ctx, i, b.clone()), m);
            }
        }
    }
    // nested implication on the left
    for i in newest_first(ctx) {
        if let Some((cd, b)) = imp_parts(&ctx[i]) {
            if let Some((_, d)) = imp_parts(cd) {
                let rest = without(ctx, i);
                let db = Formula::imp(d.clone(), b.clone());
                if ljt(cd, &with(&rest, db), m)? {
                    return ljt(goal, &with(&rest, b.clone()), m);
                }
            }
        }
    }
    Ok(false)
}

pub fn prove_merged(f: &Formula, limits: Limits) -> Result<Verdict, ProveError> {
    require_implicational(f)?;
    let mut m = Meter::new(limits);
    let proved = ljb(f, &[], &mut m)?;
    Ok(m.verdict(proved))
}

fn ljb(goal: &Formula, ctx: &[Formula], m: &mut Meter) -> Result<bool, ProveError> {
    m.tick()?;
    if ctx.contains(goal) {
        return Ok(true);
    }
    if let Some((a, b)) = imp_parts(goal) {
        return ljb(b, &with(ctx, a.clone()), m);
    }
    for i in newest_first(ctx) {
        if let Some((a, b)) = imp_parts(&ctx[i]) {
            if ljb_imp(a, b, ctx, i, m)? {
                return ljb(goal, &replaced(ctx, i, b.clone()), m);
            }
        }
    }
    Ok(false)
}

/// Antecedent dispatch for the assumption `a->b` at index `used`: a nested
/// implication is proved with `D->B` assumed, an atom must be present.
fn ljb_imp(
    a: &Formula,
    b: &Formula,
    ctx: &[Formula],
    used: usize,
    m: &mut Meter,
) -> Result<bool, ProveError> {
    match imp_parts(a) {
        Some((_, d)) => ljb(
            a,
            &replaced(ctx, used, Formula::imp(d.clone(), b.clone())),
            m,
        ),
        None => Ok(contains_except(ctx, used, a)),
    }
}

pub fn prove_headfirst(f: &Formula, limits: Limits) -> Result<Verdict, ProveError> {
    require_implicational(f)?;
    let mut m = Meter::new(limits);
    let proved = lje(f, &[], &mut m)?;
    Ok(m.verdict(proved))
}

fn lje(goal: &Formula, ctx: &[Formula], m: &mut Meter) -> Result<bool, ProveError> {
    m.tick()?;
    if ctx.contains(goal) {
        return Ok(true);
    }
    if let Some((a, b)) = imp_parts(goal) {
        return lje(b, &with(ctx, a.clone()), m);
    }
    // some assumption must end in the goal; it is moved to the front
    let Some(t) = newest_first(ctx).find(|&i| ctx[i].head() == goal) else {
        return Ok(false);
    };
    let mut reordered = without(ctx, t);
    reordered.push(ctx[t].clone());
    for i in newest_first(&reordered) {
        if let Some((a, b)) = imp_parts(&reordered[i]) {
            if lje_imp(a, b, &reordered, i, m)? {
                return lje(goal, &replaced(&reordered, i, b.clone()), m);
            }
        }
    }
    Ok(false)
}

fn lje_imp(
    a: &Formula,
    b: &Formula,
    ctx: &[Formula],
    used: usize,
    m: &mut Meter,
) -> Result<bool, ProveError> {
    match imp_parts(a) {
        Some((_, d)) => lje(
            a,
            &replaced(ctx, used, Formula::imp(d.clone(), b.clone())),
            m,
        ),
        None => Ok(contains_except(ctx, used, a)),
    }
}

/// Largest antecedent of any implication inside `f`.
pub(crate) fn max_antecedent_size(f: &Formula) -> usize {
    match f {
        Formula::Imp(a, b) => a
            .size()
            .max(max_antecedent_size(a))
            .max(max_antecedent_size(b)),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Iff(a, b) => {
            max_antecedent_size(a).max(max_antecedent_size(b))
        }
        Formula::Not(a) => max_antecedent_size(a),
        Formula::Atom(_) | Formula::False => 0,
    }
}

struct Hudelmaier {
    meter: Meter,
    next_fresh: u32,
    size_bound: usize,
}

impl Hudelmaier {
    fn push(&mut self, ctx: &mut Ctx, f: Formula) {
        if self.meter.instrument {
            let s = f.size();
            self.meter.observe_size(s);
            self.meter.check(s <= self.size_bound);
        }
        ctx.push(f);
    }

    fn prove(&mut self, goal: &Formula, ctx: &[Formula]) -> Result<bool, ProveError> {
        self.meter.tick()?;
        if ctx.contains(goal) {
            return Ok(true);
        }
        if let Some((a, b)) = imp_parts(goal) {
            let mut next = ctx.to_vec();
            self.push(&mut next, a.clone());
            return self.prove(b, &next);
        }
        for i in newest_first(ctx) {
            if let Some((a, b)) = imp_parts(&ctx[i]) {
                if self.reduce(a, b, ctx, i)? {
                    let mut next = without(ctx, i);
                    self.push(&mut next, b.clone());
                    return self.prove(goal, &next);
                }
            }
        }
        Ok(false)
    }

    /// `(C->D)->B` becomes a proof of a fresh `P` from `C`, `D->P`, `P->B`.
    fn reduce(
        &mut self,
        a: &Formula,
        b: &Formula,
        ctx: &[Formula],
        used: usize,
    ) -> Result<bool, ProveError> {
        match imp_parts(a) {
            Some((c, d)) => {
                let p = Formula::Atom(Atom(self.next_fresh));
                self.next_fresh += 1;
                let mut next = without(ctx, used);
                self.push(&mut next, Formula::imp(p.clone(), b.clone()));
                self.push(&mut next, Formula::imp(d.clone(), p.clone()));
                self.push(&mut next, c.clone());
                self.prove(&p, &next)
            }
            None => Ok(contains_except(ctx, used, a)),
        }
    }
}

/// Fresh atoms are allocated above every atom of `f`. With instrumentation,
/// each context element is checked against the largest antecedent of `f`
/// plus two.
pub fn prove_hudelmaier(f: &Formula, limits: Limits) -> Result<Verdict, ProveError> {
    require_implicational(f)?;
    let mut h = Hudelmaier {
        meter: Meter::new(limits),
        next_fresh: f.max_atom().map_or(0, |a| a.index() + 1),
        size_bound: max_antecedent_size(f) + 2,
    };
    let proved = h.prove(f, &[])?;
    Ok(h.meter.verdict(proved))
}
