//! Backward chaining over nested Horn clauses.

use std::sync::Arc;

use crate::formula::{Atom, Formula, NestedHorn};
use crate::transforms::horn_parts;

use super::{contains_except, replaced, Limits, Meter, ProveError, Verdict};

/// Converts an implicational formula to clause form and proves it.
pub fn prove_horn(f: &Formula, limits: Limits) -> Result<Verdict, ProveError> {
    if !f.is_implicational() {
        return Err(ProveError::NotImplicational(f.to_string()));
    }
    // the outer clause would only be unpacked into the context again, so
    // its body goes there directly; the step is still counted
    let (head, body) = horn_parts(f);
    let mut m = Meter::new(limits);
    let proved = if body.is_empty() {
        ljh(&NestedHorn::Atom(head), &[], &mut m)?
    } else {
        m.tick()?;
        let ctx: Vec<NestedHorn> = body.into_iter().rev().collect();
        ljh(&NestedHorn::Atom(head), &ctx, &mut m)?
    };
    Ok(m.verdict(proved))
}

/// With instrumentation, every clause `B:-[D]` introduced for a nested body
/// element is checked to have an atomic duplicated part `D`.
pub fn prove_horn_clause(h: &NestedHorn, limits: Limits) -> Result<Verdict, ProveError> {
    let mut m = Meter::new(limits);
    let proved = ljh(h, &[], &mut m)?;
    Ok(m.verdict(proved))
}

fn ljh(goal: &NestedHorn, ctx: &[NestedHorn], m: &mut Meter) -> Result<bool, ProveError> {
    m.tick()?;
    if ctx.contains(goal) {
        return Ok(true);
    }
    let g = match goal {
        NestedHorn::Rule(h, body) => {
            // body elements become assumptions, first element newest
            let mut next = Vec::with_capacity(ctx.len() + body.len());
            next.extend_from_slice(ctx);
            next.extend(body.iter().rev().cloned());
            return ljh(&NestedHorn::Atom(*h), &next, m);
        }
        NestedHorn::Atom(g) => *g,
    };
    let has_head = ctx
        .iter()
        .any(|c| matches!(c, NestedHorn::Rule(h, _) if *h == g));
    if !has_head {
        return Ok(false);
    }
    for i in (0..ctx.len()).rev() {
        let NestedHorn::Rule(head, body) = &ctx[i] else {
            continue;
        };
        for j in 0..body.len() {
            if ljh_imp(&body[j], *head, ctx, i, m)? {
                let reduced = if body.len() == 1 {
                    NestedHorn::Atom(*head)
                } else {
                    // counted range, so the slice is allocated once
                    let rest = (0..body.len() - 1).map(|k| body[k + usize::from(k >= j)].clone());
                    NestedHorn::Rule(*head, rest.collect())
                };
                return ljh(goal, &replaced(ctx, i, reduced), m);
            }
        }
    }
    Ok(false)
}

/// Body element `a` of the rule with head `b` at index `used` of `ctx`.
fn ljh_imp(
    a: &NestedHorn,
    b: Atom,
    ctx: &[NestedHorn],
    used: usize,
    m: &mut Meter,
) -> Result<bool, ProveError> {
    match a {
        NestedHorn::Rule(h, _) => {
            let d = NestedHorn::Atom(*h);
            m.check(matches!(d, NestedHorn::Atom(_)));
            m.observe_size(1);
            let added = NestedHorn::Rule(b, Arc::new([d]));
            ljh(a, &replaced(ctx, used, added), m)
        }
        NestedHorn::Atom(_) => Ok(contains_except(ctx, used, a)),
    }
}
