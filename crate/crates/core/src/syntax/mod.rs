//! Objects: formulae, their strict normal forms and form multisets.

mod form;
mod formula;
mod strict;

pub use form::{CkIndex, FormMultiset};
pub use formula::{Formula, Letter, Purity, Unit};
pub use strict::{Op, StrictObject};

/// Output alphabet for objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Notation {
    #[default]
    Ascii,
    Unicode,
}

impl Notation {
    pub(crate) fn or(self) -> &'static str {
        match self {
            Notation::Ascii => "\\/",
            Notation::Unicode => "∨",
        }
    }

    pub(crate) fn and(self) -> &'static str {
        match self {
            Notation::Ascii => "/\\",
            Notation::Unicode => "∧",
        }
    }
}
