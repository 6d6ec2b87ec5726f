//! Contraction-free sequent prover for full intuitionistic propositional
//! logic, with rules for the biconditional. Negation is read as `A->false`.

use crate::formula::Formula;

use super::{with, without, Limits, Meter, ProveError, Verdict};

pub fn prove_full_ipc(f: &Formula, limits: Limits) -> Result<Verdict, ProveError> {
    let f = f.negation_normalize();
    let mut m = Meter::new(limits);
    let proved = ljfa(&f, &[], &mut m)?;
    Ok(m.verdict(proved))
}

fn ljfa(goal: &Formula, ctx: &[Formula], m: &mut Meter) -> Result<bool, ProveError> {
    m.tick()?;
    if ctx.contains(goal) || ctx.contains(&Formula::False) {
        return Ok(true);
    }
    match goal {
        Formula::Iff(a, b) => {
            return Ok(
                ljfa(b, &with(ctx, (**a).clone()), m)? && ljfa(a, &with(ctx, (**b).clone()), m)?
            );
        }
        Formula::Imp(a, b) => return ljfa(b, &with(ctx, (**a).clone()), m),
        Formula::And(a, b) => return Ok(ljfa(a, ctx, m)? && ljfa(b, ctx, m)?),
        _ => {}
    }
    for i in (0..ctx.len()).rev() {
        let rest = without(ctx, i);
        if let Some(next) = reduce(&ctx[i], goal, rest, m)? {
            return ljfa(goal, &next, m);
        }
    }
    if let Formula::Or(a, b) = goal {
        return Ok(ljfa(a, ctx, m)? || ljfa(b, ctx, m)?);
    }
    Ok(false)
}

/// Rewrites the selected assumption; `None` when it does not apply.
fn reduce(
    red: &Formula,
    goal: &Formula,
    mut ctx: Vec<Formula>,
    m: &mut Meter,
) -> Result<Option<Vec<Formula>>, ProveError> {
    match red {
        Formula::Imp(a, b) => reduce_imp(a, b, ctx, m),
        Formula::And(a, b) => {
            ctx.push((**b).clone());
            ctx.push((**a).clone());
            Ok(Some(ctx))
        }
        Formula::Iff(a, b) => {
            ctx.push(Formula::imp((**b).clone(), (**a).clone()));
            ctx.push(Formula::imp((**a).clone(), (**b).clone()));
            Ok(Some(ctx))
        }
        Formula::Or(a, b) => {
            if ljfa(goal, &with(&ctx, (**a).clone()), m)? {
                ctx.push((**b).clone());
                Ok(Some(ctx))
            } else {
                Ok(None)
            }
        }
        Formula::Atom(_) | Formula::False | Formula::Not(_) => Ok(None),
    }
}

/// Left rules for `A->B`, dispatched on the antecedent.
fn reduce_imp(
    a: &Formula,
    b: &Formula,
    mut ctx: Vec<Formula>,
    m: &mut Meter,
) -> Result<Option<Vec<Formula>>, ProveError> {
    let b = b.clone();
    match a {
        Formula::Imp(_, d) => {
            let db = Formula::imp((**d).clone(), b.clone());
            if ljfa(a, &with(&ctx, db), m)? {
                ctx.push(b);
                Ok(Some(ctx))
            } else {
                Ok(None)
            }
        }
        Formula::And(c, d) => {
            ctx.push(Formula::imp((**c).clone(), Formula::imp((**d).clone(), b)));
            Ok(Some(ctx))
        }
        Formula::Or(c, d) => {
            ctx.push(Formula::imp((**d).clone(), b.clone()));
            ctx.push(Formula::imp((**c).clone(), b));
            Ok(Some(ctx))
        }
        Formula::Iff(c, d) => {
            let cd = Formula::imp((**c).clone(), (**d).clone());
            let dc = Formula::imp((**d).clone(), (**c).clone());
            ctx.push(Formula::imp(cd, Formula::imp(dc, b)));
            Ok(Some(ctx))
        }
        _ => {
            if ctx.contains(a) {
                ctx.push(b);
                Ok(Some(ctx))
            } else {
                Ok(None)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_formula;

    fn proves(s: &str) -> bool {
        prove_full_ipc(&parse_formula(s).unwrap(), Limits::default())
            .unwrap()
            .proved
    }

    #[test]
    fn samples() {
        assert!(!proves("0 v (0->false)"));
        assert!(proves("((0 v 1)->2) <-> ((0->2)&(1->2))"));
        assert!(proves("(0&1)->0"));
        assert!(proves("~~(0 v ~0)"));
        assert!(!proves("~~0->0"));
        assert!(proves("false->0"));
        assert!(proves("(0<->1)->(1<->0)"));
    }
}
