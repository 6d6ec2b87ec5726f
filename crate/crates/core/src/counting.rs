//! Named enumerable families, their counts by size, and the reference
//! sequences those counts are checked against.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::exhaustive::*;
use crate::formula::NestedHorn;
use crate::provers::{prove_horn_clause, prove_oracle, Limits};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Family {
    ImplSkeletons,
    Partitions,
    ImplAll,
    ImplProvable,
    ImplTaut,
    Horn,
    SortedHorn,
    Horn3,
    SortedHorn3,
    UninhabTree,
    UninhabVars,
    FullAll,
    FullCanonical,
}

impl Family {
    pub const ALL: [Family; 13] = [
        Family::ImplSkeletons,
        Family::Partitions,
        Family::ImplAll,
        Family::ImplProvable,
        Family::ImplTaut,
        Family::Horn,
        Family::SortedHorn,
        Family::Horn3,
        Family::SortedHorn3,
        Family::UninhabTree,
        Family::UninhabVars,
        Family::FullAll,
        Family::FullCanonical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::ImplSkeletons => "impl-skeletons",
            Family::Partitions => "partitions",
            Family::ImplAll => "impl-all",
            Family::ImplProvable => "impl-provable",
            Family::ImplTaut => "impl-taut",
            Family::Horn => "horn",
            Family::SortedHorn => "sorted-horn",
            Family::Horn3 => "horn3",
            Family::SortedHorn3 => "sorted-horn3",
            Family::UninhabTree => "uninhab-tree",
            Family::UninhabVars => "uninhab-vars",
            Family::FullAll => "full-all",
            Family::FullCanonical => "full-canonical",
        }
    }

    /// Families whose members are formulas a prover can take.
    pub fn is_formula_family(self) -> bool {
        matches!(
            self,
            Family::ImplSkeletons
                | Family::ImplAll
                | Family::ImplProvable
                | Family::ImplTaut
                | Family::FullAll
                | Family::FullCanonical
        )
    }

    /// Published counts and the size of their first entry, when known.
    pub fn reference(self) -> Option<(usize, &'static [u64])> {
        match self {
            Family::ImplSkeletons | Family::Horn => Some((0, &CATALAN)),
            Family::Partitions => Some((0, &BELL)),
            Family::ImplAll => Some((0, &[1, 2, 10, 75, 728, 8526, 115764, 1776060, 30240210])),
            Family::ImplProvable => Some((0, &[0, 1, 3, 24, 201, 2201, 27406, 391379, 6215192])),
            Family::ImplTaut => Some((
                1,
                &[
                    1, 2, 3, 7, 17, 43, 129, 389, 1245, 4274, 14991, 55289, 210743, 826136, 3354509,
                ],
            )),
            Family::SortedHorn => Some((
                1,
                &[
                    1, 2, 4, 9, 22, 57, 154, 429, 1223, 3550, 10455, 31160, 93802, 284789,
                ],
            )),
            Family::Horn3 => Some((
                0,
                &[
                    1, 1, 2, 5, 13, 37, 109, 331, 1027, 3241, 10367, 33531, 109463,
                ],
            )),
            Family::SortedHorn3 => Some((
                1,
                &[
                    1, 2, 4, 8, 20, 47, 122, 316, 845, 2284, 6264, 17337, 48424, 136196, 385548,
                ],
            )),
            Family::UninhabTree => Some((0, &[1, 0, 1, 1, 4, 7, 23, 53, 163, 432, 1306])),
            Family::UninhabVars => Some((0, &[0, 1, 1, 4, 9, 30, 122, 528, 2517, 12951, 71455])),
            Family::FullAll | Family::FullCanonical => None,
        }
    }

    pub fn reference_at(self, n: usize) -> Option<u64> {
        let (start, seq) = self.reference()?;
        n.checked_sub(start).and_then(|i| seq.get(i).copied())
    }
}

const CATALAN: [u64; 10] = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
const BELL: [u64; 10] = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147];

impl fmt::Display for Family {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Family, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
                format!(
                    "unknown family `{s}` (expected one of: {})",
                    names.join(", ")
                )
            })
    }
}

/// Decides labelled Horn trees for the uninhabitability families.
pub fn horn_provable(h: &NestedHorn) -> bool {
    prove_horn_clause(h, Limits::default())
        .map(|v| v.proved)
        .unwrap_or(false)
}

fn oracle_proves(f: &crate::Formula) -> bool {
    prove_oracle(f, Limits::default())
        .map(|v| v.proved)
        .unwrap_or(false)
}

/// Members of a family at size `n`, one text line each.
pub fn family_lines(family: Family, n: usize) -> Box<dyn Iterator<Item = String>> {
    fn show<T: ToString>(
        it: impl Iterator<Item = T> + 'static,
    ) -> Box<dyn Iterator<Item = String>> {
        Box::new(it.map(|x| x.to_string()))
    }
    match family {
        Family::ImplSkeletons => show(gen_impl_skeletons(n)),
        Family::Partitions => show(gen_set_partitions(n)),
        Family::ImplAll => show(gen_impl_formulas(n)),
        Family::ImplProvable => show(gen_impl_formulas(n).filter(oracle_proves)),
        Family::ImplTaut => show(gen_impl_tautologies(n).into_iter()),
        Family::Horn => show(gen_horn_skeletons(n)),
        Family::SortedHorn => show(gen_sorted_horn(n, false)),
        Family::Horn3 => show(gen_horn3(n)),
        Family::SortedHorn3 => show(gen_sorted_horn3(n)),
        Family::UninhabTree => show(gen_uninhabitable_trees(n, &horn_provable).into_iter()),
        Family::UninhabVars => show(gen_uninhabitable_labelings(n, &horn_provable).into_iter()),
        Family::FullAll => show(gen_full_formulas(n, false)),
        Family::FullCanonical => show(gen_full_formulas(n, true)),
    }
}

/// Formulas of a formula family at size `n`; `None` for the other families.
pub fn family_formulas(
    family: Family,
    n: usize,
) -> Option<Box<dyn Iterator<Item = crate::Formula>>> {
    Some(match family {
        Family::ImplSkeletons => Box::new(gen_impl_skeletons(n)),
        Family::ImplAll => Box::new(gen_impl_formulas(n)),
        Family::ImplProvable => Box::new(gen_impl_formulas(n).filter(oracle_proves)),
        Family::ImplTaut => Box::new(gen_impl_tautologies(n).into_iter()),
        Family::FullAll => Box::new(gen_full_formulas(n, false)),
        Family::FullCanonical => Box::new(gen_full_formulas(n, true)),
        _ => return None,
    })
}

pub fn count_at(family: Family, n: usize) -> u64 {
    match family {
        Family::ImplTaut => count_impl_tautologies(n),
        Family::UninhabTree => gen_uninhabitable_trees(n, &horn_provable).len() as u64,
        Family::UninhabVars => gen_uninhabitable_labelings(n, &horn_provable).len() as u64,
        Family::ImplProvable => {
            use rayon::prelude::*;
            let all: Vec<_> = gen_impl_formulas(n).collect();
            all.par_iter().filter(|f| oracle_proves(f)).count() as u64
        }
        _ => family_lines(family, n).count() as u64,
    }
}

/// Counts for sizes `0..=max_n`, in order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CountSequence {
    pub family: Family,
    pub counts: Vec<(usize, u64)>,
    /// First size not attempted because the time budget ran out.
    pub truncated_at: Option<usize>,
}

impl CountSequence {
    /// `size<TAB>count` lines, then `# truncated at size N` if the budget ran out.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (n, c) in &self.counts {
            out.push_str(&format!("{n}\t{c}\n"));
        }
        if let Some(n) = self.truncated_at {
            out.push_str(&format!("# truncated at size {n}\n"));
        }
        out
    }
}

/// Drains each size in turn. A size that starts before the budget expires
/// is always finished, so the budget bounds when work stops being started.
pub fn count_family(family: Family, max_n: usize, budget: Option<Duration>) -> CountSequence {
    let start = Instant::now();
    let mut counts = Vec::new();
    for n in 0..=max_n {
        if budget.is_some_and(|b| start.elapsed() >= b) {
            return CountSequence {
                family,
                counts,
                truncated_at: Some(n),
            };
        }
        counts.push((n, count_at(family, n)));
    }
    CountSequence {
        family,
        counts,
        truncated_at: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>(), Ok(f));
        }
        assert!("horn4".parse::<Family>().is_err());
    }

    #[test]
    fn small_counts_match_references() {
        for (family, max) in [
            (Family::ImplSkeletons, 6),
            (Family::Partitions, 6),
            (Family::ImplAll, 4),
            (Family::ImplProvable, 4),
            (Family::ImplTaut, 7),
            (Family::Horn, 6),
            (Family::SortedHorn, 6),
            (Family::UninhabTree, 5),
            (Family::UninhabVars, 5),
        ] {
            for (n, c) in count_family(family, max, None).counts {
                if let Some(want) = family.reference_at(n) {
                    assert_eq!(c, want, "{family} at {n}");
                }
            }
        }
    }

    #[test]
    fn tsv_and_truncation() {
        let s = count_family(Family::ImplSkeletons, 6, None);
        assert!(s.to_tsv().ends_with("6\t132\n"));
        let t = count_family(Family::ImplAll, 30, Some(Duration::ZERO));
        assert_eq!(t.counts.len(), 0);
        assert_eq!(t.truncated_at, Some(0));
        assert!(t.to_tsv().contains("# truncated"));
    }
}
