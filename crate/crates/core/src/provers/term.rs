//! Head-guarded implicational prover that builds a lambda term for each
//! proof: abstractions for implication introduction, applications for each
//! modus-ponens reduction.

use std::collections::HashMap;
use std::rc::Rc;

use crate::formula::Formula;
use crate::lambda::LambdaTerm;

use super::{replaced, require_implicational, with, Limits, Meter, ProveError, Verdict};

/// Terms with globally unique binder ids, converted to de Bruijn form at the end.
#[derive(Debug)]
enum Named {
    Var(u32),
    Lam(u32, Rc<Named>),
    App(Rc<Named>, Rc<Named>),
}

type Memo = HashMap<*const Named, Rc<Named>>;

/// Replaces `var` by `by`, visiting each shared node once; subterms without
/// `var` are returned as they are. Each visit costs one step, since
/// repeated substitution can grow the term faster than the search does.
fn substitute(
    t: &Rc<Named>,
    var: u32,
    by: &Rc<Named>,
    memo: &mut Memo,
    meter: &mut Meter,
) -> Result<Rc<Named>, ProveError> {
    if let Some(done) = memo.get(&Rc::as_ptr(t)) {
        return Ok(done.clone());
    }
    meter.tick()?;
    let out = match &**t {
        Named::Var(v) if *v == var => by.clone(),
        Named::Var(_) => t.clone(),
        Named::Lam(x, body) => {
            let b = substitute(body, var, by, memo, meter)?;
            if Rc::ptr_eq(&b, body) {
                t.clone()
            } else {
                Rc::new(Named::Lam(*x, b))
            }
        }
        Named::App(f, a) => {
            let (f2, a2) = (
                substitute(f, var, by, memo, meter)?,
                substitute(a, var, by, memo, meter)?,
            );
            if Rc::ptr_eq(&f2, f) && Rc::ptr_eq(&a2, a) {
                t.clone()
            } else {
                Rc::new(Named::App(f2, a2))
            }
        }
    };
    memo.insert(Rc::as_ptr(t), out.clone());
    Ok(out)
}

fn to_de_bruijn(t: &Named, scope: &mut Vec<u32>) -> LambdaTerm {
    match t {
        Named::Var(v) => {
            let pos = scope
                .iter()
                .rposition(|x| x == v)
                .expect("proof term variable is bound");
            LambdaTerm::Var((scope.len() - 1 - pos) as u32)
        }
        Named::Lam(x, body) => {
            scope.push(*x);
            let b = to_de_bruijn(body, scope);
            scope.pop();
            LambdaTerm::lam(b)
        }
        Named::App(f, a) => LambdaTerm::app(to_de_bruijn(f, scope), to_de_bruijn(a, scope)),
    }
}

/// Size of `t` once sharing is expanded, saturating at `u64::MAX`.
fn expanded_size(t: &Rc<Named>, memo: &mut HashMap<*const Named, u64>) -> u64 {
    if let Some(&n) = memo.get(&Rc::as_ptr(t)) {
        return n;
    }
    let n = match &**t {
        Named::Var(_) => 1,
        Named::Lam(_, b) => expanded_size(b, memo).saturating_add(1),
        Named::App(f, a) => expanded_size(f, memo)
            .saturating_add(expanded_size(a, memo))
            .saturating_add(1),
    };
    memo.insert(Rc::as_ptr(t), n);
    n
}

/// Proof terms share subterms; expanded past this many nodes they are not
/// materialized and the verdict carries no term.
pub const MAX_TERM_NODES: u64 = 1 << 20;

struct TermSearch {
    meter: Meter,
    next_var: u32,
}

impl TermSearch {
    fn fresh(&mut self) -> u32 {
        self.next_var += 1;
        self.next_var
    }

    fn lookup(ctx: &[(Rc<Named>, Formula)], ty: &Formula) -> Option<Rc<Named>> {
        ctx.iter()
            .rev()
            .find(|(_, t)| t == ty)
            .map(|(x, _)| x.clone())
    }

    fn prove(
        &mut self,
        goal: &Formula,
        ctx: &[(Rc<Named>, Formula)],
    ) -> Result<Option<Rc<Named>>, ProveError> {
        self.meter.tick()?;
        if let Some(x) = Self::lookup(ctx, goal) {
            return Ok(Some(x));
        }
        if let Formula::Imp(a, b) = goal {
            let x = self.fresh();
            let inner = with(ctx, (Rc::new(Named::Var(x)), (**a).clone()));
            return Ok(self.prove(b, &inner)?.map(|e| Rc::new(Named::Lam(x, e))));
        }
        if !ctx.iter().any(|(_, t)| t.head() == goal) {
            return Ok(None);
        }
        for i in (0..ctx.len()).rev() {
            let (s, ty) = &ctx[i];
            let Formula::Imp(a, b) = ty else { continue };
            if let Some(t) = self.reduce(s, a, b, ctx, i)? {
                let applied = Rc::new(Named::App(s.clone(), t));
                return self.prove(goal, &replaced(ctx, i, (applied, (**b).clone())));
            }
        }
        Ok(None)
    }

    /// A term of type `a` for the selected assumption `s : a -> b`, found at
    /// index `used` of `ctx` and unavailable to its own antecedent.
    ///
    /// For `a = C->D` the search proves `C->D` with `y : D->B` assumed; `y`
    /// is then replaced by `\d. s (\c. d)`, which has type `D->B`.
    fn reduce(
        &mut self,
        s: &Rc<Named>,
        a: &Formula,
        b: &Formula,
        ctx: &[(Rc<Named>, Formula)],
        used: usize,
    ) -> Result<Option<Rc<Named>>, ProveError> {
        match a {
            Formula::Imp(_, d) => {
                let y = self.fresh();
                let assumed = (
                    Rc::new(Named::Var(y)),
                    Formula::imp((**d).clone(), b.clone()),
                );
                let Some(e) = self.prove(a, &replaced(ctx, used, assumed))? else {
                    return Ok(None);
                };
                let (c, dv) = (self.fresh(), self.fresh());
                let const_d = Rc::new(Named::Lam(c, Rc::new(Named::Var(dv))));
                let witness = Rc::new(Named::Lam(dv, Rc::new(Named::App(s.clone(), const_d))));
                Ok(Some(substitute(
                    &e,
                    y,
                    &witness,
                    &mut HashMap::new(),
                    &mut self.meter,
                )?))
            }
            _ => Ok(ctx
                .iter()
                .enumerate()
                .rev()
                .find(|(j, (_, t))| *j != used && t == a)
                .map(|(_, (x, _))| x.clone())),
        }
    }
}

pub fn prove_with_term(f: &Formula, limits: Limits) -> Result<Verdict, ProveError> {
    require_implicational(f)?;
    let mut search = TermSearch {
        meter: Meter::new(limits),
        next_var: 0,
    };
    let term = search.prove(f, &[])?;
    let mut v = search.meter.verdict(term.is_some());
    v.proof_term = term
        .filter(|t| expanded_size(t, &mut HashMap::new()) <= MAX_TERM_NODES)
        .map(|t| to_de_bruijn(&t, &mut Vec::new()));
    Ok(v)
}
