//! Arrow terms in three flavors: the free category on formulae, its strictification
//! and the unit-free commutative strict category.

mod axioms;
mod gens;
mod heads;
mod sort;
mod term;

pub use axioms::{axiom_arity, axiom_legs, AXIOMS};
pub use gens::{Dir, MGen, MTerm, SaiGen, SaiTerm, StGen, StTerm};
pub use heads::{bare_generators, m_single_heads, splits, st_single_heads};
pub use sort::{in_context, sort_iso, to_sorted, to_sorted_steps};
pub use term::{Generator, Object, Term, Typing};
