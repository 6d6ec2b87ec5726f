//! Generators, transformers and provers for intuitionistic propositional
//! logic, plus a differential-testing harness.

pub mod counting;
pub mod exhaustive;
pub mod formula;
pub mod harness;
pub mod lambda;
pub mod parse;
pub mod provers;
pub mod random;
pub mod transforms;

pub use formula::{Atom, Formula, NestedHorn, Symbols};
pub use parse::{parse_formula, parse_horn, ParseError};
