//! Deliberately wrong provers used to test the differential harness.

use crate::formula::Formula;

use super::{require_implicational, with, without, Limits, Meter, ProveError, Verdict};

/// A coin flip keyed on the formula text and `seed`: reproducible, but
/// unrelated to provability.
pub fn bad_prover_random(f: &Formula, seed: u64) -> Result<Verdict, ProveError> {
    // FNV-1a over the seed bytes and the printed formula
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in seed.to_le_bytes().iter().chain(f.to_string().as_bytes()) {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^= h >> 33;
    let mut m = Meter::new(Limits::default());
    m.tick()?;
    Ok(m.verdict(h & 1 == 0))
}

/// Naive premise discharging: any goal may fall back to discharging the
/// whole context, which trivially succeeds on an empty one. Never misses a
/// tautology but accepts non-theorems, in fact every implication.
pub fn bad_prover_fp(f: &Formula, limits: Limits) -> Result<Verdict, ProveError> {
    require_implicational(f)?;
    let mut m = Meter::new(limits);
    let proved = bad_solve(f, &[], &mut m)?;
    Ok(m.verdict(proved))
}

fn bad_solve(goal: &Formula, ctx: &[Formula], m: &mut Meter) -> Result<bool, ProveError> {
    m.tick()?;
    match goal {
        Formula::Imp(a, b) => {
            Ok(bad_solve(b, &with(ctx, (**a).clone()), m)? || bad_reduce(ctx, m)?)
        }
        _ => Ok(ctx.contains(goal)),
    }
}

fn bad_reduce(ctx: &[Formula], m: &mut Meter) -> Result<bool, ProveError> {
    if ctx.is_empty() {
        return Ok(true);
    }
    for i in (0..ctx.len()).rev() {
        let rest = without(ctx, i);
        if bad_solve(&ctx[i], &rest, m)? && bad_reduce(&rest, m)? {
            return Ok(true);
        }
    }
    Ok(false)
}
