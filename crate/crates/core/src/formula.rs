//! Propositional formulas, nested Horn clauses, sizes and the canonical
//! variable numbering shared by every generator and prover.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// A propositional variable, identified by a non-negative index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Atom(pub u32);

impl Atom {
    pub fn index(self) -> u32 {
        self.0
    }
}

/// Formulas of full intuitionistic propositional logic.
///
/// Variant order doubles as the constructor rank of the total term order
/// (atoms, then `false`, then unary, then binary connectives), so the
/// derived `Ord` is the order used by the canonical generators.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Formula {
    Atom(Atom),
    False,
    Not(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
    Iff(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
}

impl Formula {
    pub fn atom(i: u32) -> Formula {
        Formula::Atom(Atom(i))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Arc::new(a), Arc::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Arc::new(a), Arc::new(b))
    }

    pub fn not(a: Formula) -> Formula {
        Formula::Not(Arc::new(a))
    }

    /// Right-nested implication chain `p1 -> p2 -> ... -> goal`.
    pub fn imp_chain<I>(premises: I, goal: Formula) -> Formula
    where
        I: IntoIterator<Item = Formula>,
        I::IntoIter: DoubleEndedIterator,
    {
        premises
            .into_iter()
            .rev()
            .fold(goal, |acc, p| Formula::imp(p, acc))
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Atom(_) | Formula::False)
    }

    /// Number of internal connective nodes (`~` counts as one).
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::False => 0,
            Formula::Not(a) => 1 + a.size(),
            Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) | Formula::Iff(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    /// True when built only from atoms and `->`.
    pub fn is_implicational(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Imp(a, b) => a.is_implicational() && b.is_implicational(),
            _ => false,
        }
    }

    pub fn contains_or(&self) -> bool {
        match self {
            Formula::Or(..) => true,
            Formula::Atom(_) | Formula::False => false,
            Formula::Not(a) => a.contains_or(),
            Formula::Imp(a, b) | Formula::And(a, b) | Formula::Iff(a, b) => {
                a.contains_or() || b.contains_or()
            }
        }
    }

    pub fn contains_not(&self) -> bool {
        match self {
            Formula::Not(_) => true,
            Formula::Atom(_) | Formula::False => false,
            Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) | Formula::Iff(a, b) => {
                a.contains_not() || b.contains_not()
            }
        }
    }

    /// Final atom of the implication spine (`head_of` in the provers).
    pub fn head(&self) -> &Formula {
        let mut f = self;
        while let Formula::Imp(_, b) = f {
            f = b;
        }
        f
    }

    /// Atoms in left-to-right depth-first order, with repetitions.
    pub fn leaves(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Atom>) {
        match self {
            Formula::Atom(a) => out.push(*a),
            Formula::False => {}
            Formula::Not(a) => a.collect_leaves(out),
            Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) | Formula::Iff(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    pub fn max_atom(&self) -> Option<Atom> {
        self.leaves().into_iter().max()
    }

    /// Rebuilds the formula with every atom passed through `f`.
    pub fn map_atoms(&self, f: &mut impl FnMut(Atom) -> Formula) -> Formula {
        match self {
            Formula::Atom(a) => f(*a),
            Formula::False => Formula::False,
            Formula::Not(a) => Formula::not(a.map_atoms(f)),
            Formula::Imp(a, b) => Formula::imp(a.map_atoms(f), b.map_atoms(f)),
            Formula::And(a, b) => Formula::and(a.map_atoms(f), b.map_atoms(f)),
            Formula::Or(a, b) => Formula::or(a.map_atoms(f), b.map_atoms(f)),
            Formula::Iff(a, b) => Formula::iff(a.map_atoms(f), b.map_atoms(f)),
        }
    }

    /// Renames atoms to 0,1,2,… by first occurrence.
    pub fn canonical(&self) -> Formula {
        let mut table: HashMap<Atom, u32> = HashMap::new();
        self.map_atoms(&mut |a| {
            let next = table.len() as u32;
            Formula::atom(*table.entry(a).or_insert(next))
        })
    }

    /// Replaces `~a` by `a -> false`, recursively.
    pub fn negation_normalize(&self) -> Formula {
        match self {
            Formula::Atom(_) | Formula::False => self.clone(),
            Formula::Not(a) => Formula::imp(a.negation_normalize(), Formula::False),
            Formula::Imp(a, b) => Formula::imp(a.negation_normalize(), b.negation_normalize()),
            Formula::And(a, b) => Formula::and(a.negation_normalize(), b.negation_normalize()),
            Formula::Or(a, b) => Formula::or(a.negation_normalize(), b.negation_normalize()),
            Formula::Iff(a, b) => Formula::iff(a.negation_normalize(), b.negation_normalize()),
        }
    }

    /// Every distinct subformula, including `self`.
    pub fn subformulas(&self) -> Vec<Formula> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            if !seen.insert(f) {
                continue;
            }
            out.push(f.clone());
            match f {
                Formula::Atom(_) | Formula::False => {}
                Formula::Not(a) => stack.push(a),
                Formula::Imp(a, b)
                | Formula::And(a, b)
                | Formula::Or(a, b)
                | Formula::Iff(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
            }
        }
        out
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Atom(_) | Formula::False => 0,
            Formula::Not(_) => 1,
            Formula::And(..) => 2,
            Formula::Or(..) => 3,
            Formula::Imp(..) => 4,
            Formula::Iff(..) => 5,
        }
    }

    /// Displays atoms through a symbol table.
    pub fn display_with<'a>(&'a self, symbols: &'a Symbols) -> impl fmt::Display + 'a {
        FormulaDisplay {
            formula: self,
            symbols,
        }
    }
}

impl From<Atom> for Formula {
    fn from(a: Atom) -> Formula {
        Formula::Atom(a)
    }
}

/// Names for atoms when printing; unnamed atoms print as decimals.
#[derive(Clone, Debug, Default)]
pub struct Symbols {
    names: HashMap<Atom, String>,
    fresh: Option<(u32, String)>,
}

impl Symbols {
    pub fn new() -> Symbols {
        Symbols::default()
    }

    pub fn insert(&mut self, atom: Atom, name: impl Into<String>) {
        self.names.insert(atom, name.into());
    }

    /// Atoms at or above `first` print as `prefix1`, `prefix2`, ...
    pub fn with_fresh(mut self, first: Atom, prefix: &str) -> Symbols {
        self.fresh = Some((first.0, prefix.to_string()));
        self
    }

    pub fn lookup(&self, atom: Atom) -> Option<&str> {
        self.names.get(&atom).map(String::as_str)
    }

    fn write_atom(&self, atom: Atom, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = self.names.get(&atom) {
            return out.write_str(name);
        }
        match &self.fresh {
            Some((first, prefix)) if atom.0 >= *first => {
                write!(out, "{}{}", prefix, atom.0 - first + 1)
            }
            _ => write!(out, "{}", atom.0),
        }
    }
}

struct FormulaDisplay<'a> {
    formula: &'a Formula,
    symbols: &'a Symbols,
}

impl FormulaDisplay<'_> {
    fn write(&self, f: &Formula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f {
            Formula::Atom(a) => self.symbols.write_atom(*a, out),
            Formula::False => out.write_str("false"),
            Formula::Not(a) => {
                out.write_str("~")?;
                self.child(a, a.precedence() > 1, out)
            }
            Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) | Formula::Iff(a, b) => {
                let p = f.precedence();
                let op = match f {
                    Formula::Imp(..) => "->",
                    Formula::And(..) => "&",
                    Formula::Or(..) => " v ",
                    _ => "<->",
                };
                // every binary operator is right-associative
                self.child(a, a.precedence() >= p, out)?;
                out.write_str(op)?;
                self.child(b, b.precedence() > p, out)
            }
        }
    }

    fn child(&self, f: &Formula, parens: bool, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if parens {
            out.write_str("(")?;
            self.write(f, out)?;
            out.write_str(")")
        } else {
            self.write(f, out)
        }
    }
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(self.formula, out)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        FormulaDisplay {
            formula: self,
            symbols: &Symbols::default(),
        }
        .write(self, out)
    }
}

/// A nested Horn clause: an atom, or an atomic head with a non-empty body.
///
/// The derived `Ord` is the standard term order: atoms before rules, atoms by
/// index, rules by head and then lexicographically by body.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum NestedHorn {
    Atom(Atom),
    /// Head and body. The body is never empty and is shared between clones.
    Rule(Atom, Arc<[NestedHorn]>),
}

impl NestedHorn {
    /// Builds `head :- body`, trimming an empty body to the bare head.
    pub fn rule(head: Atom, body: impl Into<Arc<[NestedHorn]>>) -> NestedHorn {
        let body = body.into();
        if body.is_empty() {
            NestedHorn::Atom(head)
        } else {
            NestedHorn::Rule(head, body)
        }
    }

    pub fn atom(i: u32) -> NestedHorn {
        NestedHorn::Atom(Atom(i))
    }

    pub fn head(&self) -> Atom {
        match self {
            NestedHorn::Atom(a) => *a,
            NestedHorn::Rule(h, _) => *h,
        }
    }

    /// Total number of body positions over all rules.
    pub fn size(&self) -> usize {
        match self {
            NestedHorn::Atom(_) => 0,
            NestedHorn::Rule(_, body) => {
                body.len() + body.iter().map(NestedHorn::size).sum::<usize>()
            }
        }
    }

    /// Clause nesting depth: 0 for an atom, 1 + deepest body element otherwise.
    pub fn depth(&self) -> usize {
        match self {
            NestedHorn::Atom(_) => 0,
            NestedHorn::Rule(_, body) => 1 + body.iter().map(NestedHorn::depth).max().unwrap_or(0),
        }
    }

    /// Leaves in order: head before body, body left to right.
    pub fn leaves(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Atom>) {
        match self {
            NestedHorn::Atom(a) => out.push(*a),
            NestedHorn::Rule(h, body) => {
                out.push(*h);
                for b in body.iter() {
                    b.collect_leaves(out);
                }
            }
        }
    }

    pub fn map_atoms(&self, f: &mut impl FnMut(Atom) -> Atom) -> NestedHorn {
        match self {
            NestedHorn::Atom(a) => NestedHorn::Atom(f(*a)),
            NestedHorn::Rule(h, body) => {
                let head = f(*h);
                NestedHorn::Rule(head, body.iter().map(|b| b.map_atoms(f)).collect())
            }
        }
    }

    /// Relabels leaf `i` (in leaf order) with `labels[i]`.
    pub fn label_leaves(&self, labels: &[u32]) -> NestedHorn {
        let mut next = 0;
        self.map_atoms(&mut |_| {
            let a = Atom(labels[next]);
            next += 1;
            a
        })
    }

    pub fn canonical(&self) -> NestedHorn {
        let mut table: HashMap<Atom, u32> = HashMap::new();
        self.map_atoms(&mut |a| {
            let next = table.len() as u32;
            Atom(*table.entry(a).or_insert(next))
        })
    }

    /// True when every body is strictly increasing under the term order.
    pub fn is_sorted(&self) -> bool {
        match self {
            NestedHorn::Atom(_) => true,
            NestedHorn::Rule(_, body) => {
                body.windows(2).all(|w| w[0] < w[1]) && body.iter().all(NestedHorn::is_sorted)
            }
        }
    }

    pub fn display_with<'a>(&'a self, symbols: &'a Symbols) -> impl fmt::Display + 'a {
        HornDisplay {
            horn: self,
            symbols,
        }
    }
}

/// The standard order on nested Horn clauses.
pub fn term_order(a: &NestedHorn, b: &NestedHorn) -> std::cmp::Ordering {
    a.cmp(b)
}

struct HornDisplay<'a> {
    horn: &'a NestedHorn,
    symbols: &'a Symbols,
}

impl HornDisplay<'_> {
    fn write(&self, h: &NestedHorn, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match h {
            NestedHorn::Atom(a) => self.symbols.write_atom(*a, out),
            NestedHorn::Rule(h, body) => {
                out.write_str("(")?;
                self.symbols.write_atom(*h, out)?;
                out.write_str(":-[")?;
                for (i, b) in body.iter().enumerate() {
                    if i > 0 {
                        out.write_str(",")?;
                    }
                    self.write(b, out)?;
                }
                out.write_str("])")
            }
        }
    }
}

impl fmt::Display for HornDisplay<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(self.horn, out)
    }
}

impl fmt::Display for NestedHorn {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        HornDisplay {
            horn: self,
            symbols: &Symbols::default(),
        }
        .write(self, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_formula;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn canonical_numbering_by_first_occurrence() {
        assert_eq!(p("5->7->5").canonical(), p("0->1->0"));
        assert_eq!(p("9->3->9->3").canonical(), p("0->1->0->1"));
        let f = p("(4->2)->(2->4)");
        assert_eq!(f.canonical().canonical(), f.canonical());
    }

    #[test]
    fn negation_elimination() {
        assert_eq!(p("~p").negation_normalize(), p("p->false"));
        assert_eq!(p("~~p").negation_normalize(), p("(p->false)->false"));
        assert_eq!(p("p->q").negation_normalize(), p("p->q"));
        assert!(!p("~(a & ~b) v ~~c").negation_normalize().contains_not());
    }

    #[test]
    fn sizes() {
        assert_eq!(p("0").size(), 0);
        assert_eq!(p("~0").size(), 1);
        assert_eq!(p("(0->1->2)->(0->1)->0->2").size(), 6);
        assert_eq!(p("false").size(), 0);
    }

    #[test]
    fn term_order_atoms_before_rules() {
        use std::cmp::Ordering;
        let rule = NestedHorn::rule(Atom(0), vec![NestedHorn::atom(0)]);
        assert_eq!(
            term_order(&NestedHorn::atom(0), &NestedHorn::atom(1)),
            Ordering::Less
        );
        assert_eq!(term_order(&NestedHorn::atom(5), &rule), Ordering::Less);
        assert_eq!(term_order(&rule, &rule), Ordering::Equal);
        let longer = NestedHorn::rule(Atom(0), vec![NestedHorn::atom(0), NestedHorn::atom(0)]);
        assert_eq!(term_order(&rule, &longer), Ordering::Less);
    }

    #[test]
    fn display_minimal_parentheses() {
        for s in [
            "0->1->0",
            "(0->1)->0",
            "a&b v c",
            "a&(b v c)",
            "~(a->b)",
            "~~a",
            "(a<->b)<->c",
            "a<->b<->c",
            "false->a",
        ] {
            let f = p(s);
            assert_eq!(p(&f.to_string()), f, "{s}");
        }
        assert_eq!(p("0->(1->(2->3))").to_string(), "0->1->2->3");
        assert_eq!(p("((0->1)->2)->3").to_string(), "((0->1)->2)->3");
    }

    #[test]
    fn horn_leaves_and_size() {
        let h = NestedHorn::rule(
            Atom(0),
            vec![
                NestedHorn::rule(Atom(1), vec![NestedHorn::atom(2)]),
                NestedHorn::atom(3),
            ],
        );
        assert_eq!(h.size(), 3);
        assert_eq!(h.leaves(), vec![Atom(0), Atom(1), Atom(2), Atom(3)]);
        assert_eq!(h.to_string(), "(0:-[(1:-[2]),3])");
        assert_eq!(h.depth(), 2);
    }
}
